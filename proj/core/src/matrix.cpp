#include "specseq/matrix.hpp"

#include <algorithm>

namespace specseq {

Matrix::Matrix(Field f, int rows, int cols) : fld_(f), rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0)
        throw invariant_error("negative matrix dimension");
    a_.resize(static_cast<size_t>(rows) * cols); // mpq_class default-initializes to 0
}

Matrix Matrix::identity(Field f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i)
        m.a_[m.idx(i, i)] = 1;
    return m;
}

void Matrix::reduce_entry(mpq_class& v) const {
    if (fld_.is_rationals()) {
        v.canonicalize();
        return;
    }
    // F_p entries stay integral; divisions go through Scalar::inverse
    mpz_class num = v.get_num() % fld_.prime_modulus();
    if (num < 0)
        num += fld_.prime_modulus();
    v = mpq_class(num);
}

void Matrix::set(int i, int j, const Scalar& s) {
    require_same_field(fld_, s.field(), "matrix set");
    a_[idx(i, j)] = s.value();
}

void Matrix::set(int i, int j, long v) { set(i, j, Scalar(fld_, v)); }
void Matrix::set(int i, int j, const std::string& literal) { set(i, j, Scalar::parse(fld_, literal)); }

bool Matrix::is_zero() const {
    for (const auto& v : a_)
        if (v != 0)
            return false;
    return true;
}

bool Matrix::operator==(const Matrix& o) const {
    return fld_ == o.fld_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Matrix Matrix::operator+(const Matrix& o) const {
    require_same_field(fld_, o.fld_, "matrix add");
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw invariant_error("matrix add: shape mismatch");
    Matrix r(fld_, rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) {
        r.a_[k] = a_[k] + o.a_[k];
        reduce_entry(r.a_[k]);
    }
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + (-o); }

Matrix Matrix::operator-() const {
    Matrix r(fld_, rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) {
        r.a_[k] = -a_[k];
        reduce_entry(r.a_[k]);
    }
    return r;
}

Matrix Matrix::scaled(const Scalar& s) const {
    require_same_field(fld_, s.field(), "matrix scale");
    Matrix r(fld_, rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) {
        r.a_[k] = a_[k] * s.value();
        reduce_entry(r.a_[k]);
    }
    return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
    require_same_field(fld_, o.fld_, "matrix mul");
    if (cols_ != o.rows_)
        throw invariant_error("matrix mul: inner dimension mismatch");
    Matrix r(fld_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const mpq_class& aik = a_[idx(i, k)];
            if (aik == 0)
                continue;
            for (int j = 0; j < o.cols_; ++j) {
                const mpq_class& bkj = o.a_[o.idx(k, j)];
                if (bkj == 0)
                    continue;
                r.a_[r.idx(i, j)] += aik * bkj;
            }
        }
    for (auto& v : r.a_)
        reduce_entry(v);
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(fld_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            r.a_[r.idx(j, i)] = a_[idx(i, j)];
    return r;
}

Matrix Matrix::vstack(const Matrix& below) const {
    require_same_field(fld_, below.fld_, "vstack");
    if (cols_ != below.cols_)
        throw invariant_error("vstack: column count mismatch");
    Matrix r(fld_, rows_ + below.rows_, cols_);
    std::copy(a_.begin(), a_.end(), r.a_.begin());
    std::copy(below.a_.begin(), below.a_.end(), r.a_.begin() + a_.size());
    return r;
}

Matrix Matrix::hstack(const Matrix& right) const {
    require_same_field(fld_, right.fld_, "hstack");
    if (rows_ != right.rows_)
        throw invariant_error("hstack: row count mismatch");
    Matrix r(fld_, rows_, cols_ + right.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j)
            r.a_[r.idx(i, j)] = a_[idx(i, j)];
        for (int j = 0; j < right.cols_; ++j)
            r.a_[r.idx(i, cols_ + j)] = right.a_[right.idx(i, j)];
    }
    return r;
}

Matrix Matrix::block_diag(const Matrix& a, const Matrix& b) {
    require_same_field(a.fld_, b.fld_, "block_diag");
    Matrix r(a.fld_, a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < a.cols_; ++j)
            r.a_[r.idx(i, j)] = a.a_[a.idx(i, j)];
    for (int i = 0; i < b.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j)
            r.a_[r.idx(a.rows_ + i, a.cols_ + j)] = b.a_[b.idx(i, j)];
    return r;
}

/* Basis convention: (A kron B)(e_j1 kron e_j2) with composite index
 * j1*cols(B)+j2; all tensor-product bases in the library use this order. */
Matrix Matrix::kronecker(const Matrix& o) const {
    require_same_field(fld_, o.fld_, "kronecker");
    Matrix r(fld_, rows_ * o.rows_, cols_ * o.cols_);
    for (int i1 = 0; i1 < rows_; ++i1)
        for (int j1 = 0; j1 < cols_; ++j1) {
            const mpq_class& v = a_[idx(i1, j1)];
            if (v == 0)
                continue;
            for (int i2 = 0; i2 < o.rows_; ++i2)
                for (int j2 = 0; j2 < o.cols_; ++j2) {
                    const mpq_class& w = o.a_[o.idx(i2, j2)];
                    if (w == 0)
                        continue;
                    mpq_class& t = r.a_[r.idx(i1 * o.rows_ + i2, j1 * o.cols_ + j2)];
                    t = v * w;
                    reduce_entry(t);
                }
        }
    return r;
}

Matrix Matrix::select_rows(const std::vector<int>& which) const {
    Matrix r(fld_, static_cast<int>(which.size()), cols_);
    for (size_t k = 0; k < which.size(); ++k)
        for (int j = 0; j < cols_; ++j)
            r.a_[r.idx(static_cast<int>(k), j)] = a_[idx(which[k], j)];
    return r;
}

Matrix Matrix::select_cols(const std::vector<int>& which) const {
    Matrix r(fld_, rows_, static_cast<int>(which.size()));
    for (int i = 0; i < rows_; ++i)
        for (size_t k = 0; k < which.size(); ++k)
            r.a_[r.idx(i, static_cast<int>(k))] = a_[idx(i, which[k])];
    return r;
}

/* Gauss-Jordan with pivots restricted to the first keep_cols columns.
 * Pivot search prefers entries equal to +-1 to limit coefficient growth
 * over Q; inner loops skip zeros, which matters on the very sparse
 * matrices produced by face maps. */
Echelon Matrix::rref_impl(int keep_cols) const {
    std::vector<std::vector<mpq_class>> f(rows_);
    for (int i = 0; i < rows_; ++i) {
        f[i].resize(cols_);
        for (int j = 0; j < cols_; ++j)
            f[i][j] = a_[idx(i, j)];
    }
    std::vector<int> pivots;
    int r = 0;
    for (int col = 0; col < keep_cols && r < rows_; ++col) {
        int best = -1;
        for (int i = r; i < rows_; ++i) {
            if (f[i][col] == 0)
                continue;
            if (best < 0)
                best = i;
            if (f[i][col] == 1 || f[i][col] == -1) {
                best = i;
                break;
            }
        }
        if (best < 0)
            continue;
        std::swap(f[r], f[best]);
        if (f[r][col] != 1) {
            Scalar inv = Scalar(fld_, f[r][col]).inverse();
            for (int j = col; j < cols_; ++j)
                if (f[r][j] != 0) {
                    f[r][j] *= inv.value();
                    reduce_entry(f[r][j]);
                }
        }
        for (int i = 0; i < rows_; ++i) {
            if (i == r || f[i][col] == 0)
                continue;
            mpq_class c = f[i][col];
            for (int j = col; j < cols_; ++j)
                if (f[r][j] != 0) {
                    f[i][j] -= c * f[r][j];
                    reduce_entry(f[i][j]);
                }
        }
        pivots.push_back(col);
        ++r;
    }
    Matrix out(fld_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            out.a_[out.idx(i, j)] = f[i][j];
    return {std::move(out), std::move(pivots)};
}

Echelon Matrix::rref() const {
    Echelon e = rref_impl(cols_);
    int r = static_cast<int>(e.pivots.size());
    std::vector<int> keep(r);
    for (int i = 0; i < r; ++i)
        keep[i] = i;
    return {e.mat.select_rows(keep), e.pivots};
}

Matrix Matrix::kernel() const {
    Echelon e = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (int p : e.pivots)
        is_pivot[p] = true;
    std::vector<int> free_cols;
    for (int j = 0; j < cols_; ++j)
        if (!is_pivot[j])
            free_cols.push_back(j);
    Matrix basis(fld_, static_cast<int>(free_cols.size()), cols_);
    for (size_t k = 0; k < free_cols.size(); ++k) {
        int j = free_cols[k];
        basis.a_[basis.idx(static_cast<int>(k), j)] = 1;
        for (size_t pi = 0; pi < e.pivots.size(); ++pi) {
            mpq_class v = -e.mat.a_[e.mat.idx(static_cast<int>(pi), j)];
            basis.reduce_entry(v);
            basis.a_[basis.idx(static_cast<int>(k), e.pivots[pi])] = v;
        }
    }
    return basis.rref().mat; // canonical form
}

bool Matrix::solvable(const Matrix& B) const {
    require_same_field(fld_, B.fld_, "solve");
    if (B.rows_ != rows_)
        throw invariant_error("solve: right-hand side row count mismatch");
    Echelon e = hstack(B).rref_impl(cols_);
    int r = static_cast<int>(e.pivots.size());
    for (int i = r; i < rows_; ++i)
        for (int j = 0; j < B.cols_; ++j)
            if (e.mat.a_[e.mat.idx(i, cols_ + j)] != 0)
                return false;
    return true;
}

Matrix Matrix::solve(const Matrix& B) const {
    require_same_field(fld_, B.fld_, "solve");
    if (B.rows_ != rows_)
        throw invariant_error("solve: right-hand side row count mismatch");
    Echelon e = hstack(B).rref_impl(cols_);
    int r = static_cast<int>(e.pivots.size());
    for (int i = r; i < rows_; ++i)
        for (int j = 0; j < B.cols_; ++j)
            if (e.mat.a_[e.mat.idx(i, cols_ + j)] != 0)
                throw invariant_error("solve: inconsistent system");
    Matrix X(fld_, cols_, B.cols_);
    for (int k = 0; k < r; ++k)
        for (int j = 0; j < B.cols_; ++j)
            X.a_[X.idx(e.pivots[k], j)] = e.mat.a_[e.mat.idx(k, cols_ + j)];
    return X;
}

Scalar Matrix::det() const {
    if (rows_ != cols_)
        throw invariant_error("det of non-square matrix");
    if (rows_ == 0)
        return Scalar::one(fld_);
    if (rows_ > 8)
        throw invariant_error("det: expansion limited to order 8");
    if (rows_ == 1)
        return at(0, 0);
    Scalar acc = Scalar::zero(fld_);
    std::vector<int> rest;
    for (int i = 1; i < rows_; ++i)
        rest.push_back(i);
    std::vector<int> cols_rest;
    for (int k = 0; k < cols_; ++k) {
        if (entry_is_zero(0, k))
            continue;
        cols_rest.clear();
        for (int j = 0; j < cols_; ++j)
            if (j != k)
                cols_rest.push_back(j);
        Scalar term = at(0, k) * select_rows(rest).select_cols(cols_rest).det();
        acc = (k % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

} // namespace specseq

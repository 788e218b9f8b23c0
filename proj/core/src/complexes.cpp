#include "specseq/complexes.hpp"

#include <algorithm>

namespace specseq {

ChainComplex::ChainComplex(Field f, int lo, std::vector<int> dims, std::vector<Matrix> diffs)
    : fld_(f), lo_(lo), dims_(std::move(dims)), diffs_(std::move(diffs)) {
    if (dims_.size() != diffs_.size())
        throw invariant_error("chain complex: one differential required per degree");
    for (size_t k = 0; k < dims_.size(); ++k) {
        if (dims_[k] < 0)
            throw invariant_error("chain complex: negative dimension");
        int below = (k == 0) ? 0 : dims_[k - 1];
        if (diffs_[k].rows() != below || diffs_[k].cols() != dims_[k])
            throw invariant_error("chain complex: differential shape mismatch in degree " +
                                  std::to_string(lo_ + static_cast<int>(k)));
        require_same_field(fld_, diffs_[k].field(), "chain complex");
        if (k > 0 && !(diffs_[k - 1] * diffs_[k]).is_zero())
            throw invariant_error("chain complex: d∘d != 0 out of degree " +
                                  std::to_string(lo_ + static_cast<int>(k)));
    }
}

ChainComplex ChainComplex::zero(Field f) { return ChainComplex(f, 0, {}, {}); }

ChainComplex ChainComplex::concentrated(Field f, int degree, int dim) {
    return ChainComplex(f, degree, {dim}, {Matrix(f, 0, dim)});
}

int ChainComplex::dim(int n) const {
    if (n < lo_ || n > hi())
        return 0;
    return dims_[n - lo_];
}

Matrix ChainComplex::diff(int n) const {
    if (n < lo_ || n > hi())
        return Matrix(fld_, dim(n - 1), dim(n));
    return diffs_[n - lo_];
}

bool ChainComplex::operator==(const ChainComplex& o) const {
    if (fld_ != o.fld_)
        return false;
    int a = std::min(lo_, o.lo_), b = std::max(hi(), o.hi());
    for (int n = a; n <= b; ++n)
        if (dim(n) != o.dim(n) || diff(n) != o.diff(n))
            return false;
    return true;
}

Subspace ChainComplex::cycles(int n) const { return Subspace::span(diff(n).kernel()); }

Subspace ChainComplex::boundaries(int n) const { return Subspace::from_columns(diff(n + 1)); }

Subquotient ChainComplex::homology(int n) const { return Subquotient(cycles(n), boundaries(n)); }

bool ChainComplex::is_exact() const {
    for (int n = lo_; n <= hi(); ++n)
        if (betti(n) != 0)
            return false;
    return true;
}

ChainComplex ChainComplex::shift(int k) const {
    std::vector<Matrix> d = diffs_;
    if (k % 2 != 0)
        for (auto& m : d)
            m = -m;
    return ChainComplex(fld_, lo_ + k, dims_, std::move(d));
}

ChainComplex ChainComplex::direct_sum(const ChainComplex& o) const {
    require_same_field(fld_, o.fld_, "direct sum");
    int a = std::min(lo_, o.lo_), b = std::max(hi(), o.hi());
    if (dim(a) == 0 && o.dim(a) == 0 && a == b)
        return zero(fld_);
    std::vector<int> dims;
    std::vector<Matrix> diffs;
    for (int n = a; n <= b; ++n) {
        dims.push_back(dim(n) + o.dim(n));
        Matrix d = Matrix::block_diag(diff(n), o.diff(n));
        diffs.push_back(n == a ? Matrix(fld_, 0, d.cols()) : d);
    }
    return ChainComplex(fld_, a, std::move(dims), std::move(diffs));
}

ChainComplex ChainComplex::tensor(const ChainComplex& o) const {
    require_same_field(fld_, o.fld_, "tensor");
    int a = lo_ + o.lo_, b = hi() + o.hi();
    if (dims_.empty() || o.dims_.empty())
        return zero(fld_);

    // offset of the block X_i (x) Y_{n-i} inside degree n, keyed by (n, i)
    auto block_offset = [&](int n, int i) {
        int off = 0;
        for (int k = lo_; k < i; ++k)
            off += dim(k) * o.dim(n - k);
        return off;
    };
    std::vector<int> dims;
    std::vector<Matrix> diffs;
    for (int n = a; n <= b; ++n) {
        int total = 0;
        for (int i = lo_; i <= hi(); ++i)
            total += dim(i) * o.dim(n - i);
        dims.push_back(total);
        int below = (n == a) ? 0 : dims[dims.size() - 2];
        Matrix d(fld_, below, total);
        if (n > a) {
            for (int i = lo_; i <= hi(); ++i) {
                int bs = dim(i) * o.dim(n - i);
                if (bs == 0)
                    continue;
                int src = block_offset(n, i);
                // d_X (x) 1 : block (i, n-i) -> (i-1, n-i)
                Matrix left = diff(i).kronecker(Matrix::identity(fld_, o.dim(n - i)));
                // (-1)^i 1 (x) d_Y : block (i, n-i) -> (i, n-i-1)
                Matrix right = Matrix::identity(fld_, dim(i)).kronecker(o.diff(n - i));
                if (i % 2 != 0)
                    right = -right;
                int dst_l = block_offset(n - 1, i - 1);
                int dst_r = block_offset(n - 1, i);
                for (int c = 0; c < bs; ++c) {
                    for (int r = 0; r < left.rows(); ++r)
                        if (!left.entry_is_zero(r, c))
                            d.set(dst_l + r, src + c, left.at(r, c));
                    for (int r = 0; r < right.rows(); ++r)
                        if (!right.entry_is_zero(r, c))
                            d.set(dst_r + r, src + c, right.at(r, c));
                }
            }
        }
        diffs.push_back(std::move(d));
    }
    return ChainComplex(fld_, a, std::move(dims), std::move(diffs));
}

ChainComplex ChainComplex::hom_into(int coeff_dim) const {
    if (coeff_dim < 0)
        throw invariant_error("hom_into: negative coefficient dimension");
    if (dims_.empty())
        return zero(fld_);
    int a = -hi(), b = -lo_;
    std::vector<int> dims;
    std::vector<Matrix> diffs;
    for (int n = a; n <= b; ++n) {
        dims.push_back(coeff_dim * dim(-n));
        // degree n holds Hom(X_{-n}, M); the differential precomposes with
        // d_{-n+1} : X_{-n+1} -> X_{-n}, giving I_M (x) d^T on row-major
        // coordinates, with the pinned sign (-1)^{n+1}.
        Matrix d = Matrix::identity(fld_, coeff_dim).kronecker(diff(-n + 1).transpose());
        if ((n + 1) % 2 != 0)
            d = -d;
        diffs.push_back(n == a ? Matrix(fld_, 0, d.cols()) : std::move(d));
    }
    return ChainComplex(fld_, a, std::move(dims), std::move(diffs));
}

ChainMap::ChainMap(ChainComplex domain, ChainComplex codomain, std::map<int, Matrix> components)
    : dom_(std::move(domain)), cod_(std::move(codomain)), comp_(std::move(components)) {
    require_same_field(dom_.field(), cod_.field(), "chain map");
    for (const auto& [n, m] : comp_) {
        if (m.rows() != cod_.dim(n) || m.cols() != dom_.dim(n))
            throw invariant_error("chain map: component shape mismatch in degree " + std::to_string(n));
        require_same_field(dom_.field(), m.field(), "chain map");
    }
    int a = std::min(dom_.lo(), cod_.lo()), b = std::max(dom_.hi(), cod_.hi());
    for (int n = a; n <= b; ++n)
        if (cod_.diff(n) * component(n) != component(n - 1) * dom_.diff(n))
            throw invariant_error("chain map does not commute with differentials in degree " +
                                  std::to_string(n));
}

ChainMap ChainMap::identity(const ChainComplex& x) {
    std::map<int, Matrix> comp;
    for (int n = x.lo(); n <= x.hi(); ++n)
        comp.emplace(n, Matrix::identity(x.field(), x.dim(n)));
    return ChainMap(x, x, std::move(comp));
}

Matrix ChainMap::component(int n) const {
    auto it = comp_.find(n);
    if (it != comp_.end())
        return it->second;
    return Matrix(dom_.field(), cod_.dim(n), dom_.dim(n));
}

Matrix ChainMap::homology_map(int n) const {
    return induced_map(component(n), dom_.homology(n), cod_.homology(n));
}

bool ChainMap::is_quasi_iso() const {
    int a = std::min(dom_.lo(), cod_.lo()), b = std::max(dom_.hi(), cod_.hi());
    for (int n = a; n <= b; ++n) {
        Matrix h = homology_map(n);
        if (h.rows() != h.cols() || h.rank() != h.rows())
            return false;
    }
    return true;
}

ChainComplex cone(const ChainMap& f) {
    const ChainComplex& x = f.domain();
    const ChainComplex& y = f.codomain();
    Field fld = x.field();
    int a = std::min(x.lo() + 1, y.lo()), b = std::max(x.hi() + 1, y.hi());
    std::vector<int> dims;
    std::vector<Matrix> diffs;
    for (int n = a; n <= b; ++n) {
        int dx = x.dim(n - 1), dy = y.dim(n);
        dims.push_back(dx + dy);
        int below_x = x.dim(n - 2), below_y = y.dim(n - 1);
        Matrix d(fld, below_x + below_y, dx + dy);
        Matrix dX = -x.diff(n - 1);
        Matrix fc = -f.component(n - 1);
        Matrix dY = y.diff(n);
        for (int r = 0; r < below_x; ++r)
            for (int c = 0; c < dx; ++c)
                if (!dX.entry_is_zero(r, c))
                    d.set(r, c, dX.at(r, c));
        for (int r = 0; r < below_y; ++r) {
            for (int c = 0; c < dx; ++c)
                if (!fc.entry_is_zero(r, c))
                    d.set(below_x + r, c, fc.at(r, c));
            for (int c = 0; c < dy; ++c)
                if (!dY.entry_is_zero(r, c))
                    d.set(below_x + r, dx + c, dY.at(r, c));
        }
        diffs.push_back(n == a ? Matrix(fld, 0, d.cols()) : std::move(d));
    }
    return ChainComplex(fld, a, std::move(dims), std::move(diffs));
}

} // namespace specseq

#pragma once

#include <string>
#include <vector>

#include "specseq/field.hpp"

namespace specseq {

struct Echelon;

/* Dense exact matrix over Q or F_p.  Row-major; entries are canonical
 * (reduced fractions, residues in [0,p)), so operator== is semantic
 * equality.  Linear maps V -> W are stored as dim(W) x dim(V) matrices
 * acting on column vectors; subspace bases are stored as rows.
 * Zero-row and zero-column matrices are legal everywhere. */
class Matrix {
public:
    Matrix(Field f, int rows, int cols);
    static Matrix identity(Field f, int n);
    static Matrix zero(Field f, int rows, int cols) { return Matrix(f, rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Field& field() const { return fld_; }

    Scalar at(int i, int j) const { return Scalar(fld_, a_[idx(i, j)]); }
    bool entry_is_zero(int i, int j) const { return a_[idx(i, j)] == 0; }
    void set(int i, int j, const Scalar& s);
    void set(int i, int j, long v);
    void set(int i, int j, const std::string& literal);

    bool is_zero() const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator-() const;
    Matrix scaled(const Scalar& s) const;
    Matrix transpose() const;

    Matrix vstack(const Matrix& below) const;
    Matrix hstack(const Matrix& right) const;
    static Matrix block_diag(const Matrix& a, const Matrix& b);
    Matrix kronecker(const Matrix& o) const;

    Matrix select_rows(const std::vector<int>& which) const;
    Matrix select_cols(const std::vector<int>& which) const;
    Matrix row(int i) const { return select_rows({i}); }
    Matrix col(int j) const { return select_cols({j}); }

    /* Reduced row echelon form with zero rows dropped. */
    Echelon rref() const;
    int rank() const;

    /* Canonical (RREF) basis, as rows, of {x : A x = 0}. */
    Matrix kernel() const;
    /* Canonical basis of the row space. */
    Matrix row_space() const;

    /* Solve A X = B columnwise; any solution (free coordinates zero).
     * Throws invariant_error when some column is unsolvable. */
    Matrix solve(const Matrix& B) const;
    bool solvable(const Matrix& B) const;

    Scalar det() const;

private:
    size_t idx(int i, int j) const { return static_cast<size_t>(i) * cols_ + j; }
    void reduce_entry(mpq_class& v) const;
    Echelon rref_impl(int keep_cols) const;

    Field fld_;
    int rows_, cols_;
    std::vector<mpq_class> a_;
};

/* Result of row reduction; pivots[k] is the column of row k's leading 1. */
struct Echelon {
    Matrix mat;
    std::vector<int> pivots;
};

inline int Matrix::rank() const { return static_cast<int>(rref().pivots.size()); }
inline Matrix Matrix::row_space() const { return rref().mat; }

} // namespace specseq

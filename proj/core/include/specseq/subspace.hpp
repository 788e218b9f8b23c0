#pragma once

#include "specseq/matrix.hpp"

namespace specseq {

/* Subspace of k^n, held as a canonical RREF row basis, so two subspaces
 * are equal iff their representations are equal.  All the lattice
 * operations (sum, intersection, preimage) land back in canonical form. */
class Subspace {
public:
    /* The zero subspace of k^n. */
    Subspace(Field f, int ambient_dim);
    static Subspace full(Field f, int ambient_dim);
    /* Span of the rows of gens (rows need not be independent). */
    static Subspace span(const Matrix& gens);
    /* Span of the columns of gens; convenience for images of maps. */
    static Subspace from_columns(const Matrix& gens) { return span(gens.transpose()); }

    int ambient() const { return ambient_; }
    int dim() const { return basis_.rows(); }
    const Field& field() const { return basis_.field(); }
    /* dim() x ambient() matrix in RREF; rows are the canonical basis. */
    const Matrix& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return pivots_; }

    bool operator==(const Subspace& o) const;
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    bool contains(const Subspace& o) const;
    /* v is an ambient() x 1 column vector. */
    bool contains_vector(const Matrix& v) const;

    Subspace sum(const Subspace& o) const;
    Subspace intersect(const Subspace& o) const;
    /* {x : f x in this}; f maps k^m into our ambient space, so f has
     * ambient() rows.  The result lives in k^m. */
    Subspace preimage_under(const Matrix& f) const;
    /* Image of this under f (f has ambient() columns). */
    Subspace image_under(const Matrix& f) const;

    /* Coordinates of column vectors in the canonical basis: solves
     * basis()^T X = vectors, throwing invariant_error if some column
     * is not in the subspace. */
    Matrix coords(const Matrix& vectors) const;

private:
    Subspace(Matrix basis, std::vector<int> pivots, int ambient)
        : ambient_(ambient), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

    int ambient_;
    Matrix basis_;
    std::vector<int> pivots_;
};

/* Quotient top/bottom of two nested subspaces of the same ambient space.
 * The canonical coset basis consists of the rows of top whose pivot
 * column is not a pivot column of bottom; those rows span a canonical
 * complement of bottom inside top. */
class Subquotient {
public:
    /* Validates bottom <= top (invariant_error otherwise). */
    Subquotient(Subspace top, Subspace bottom);

    int dim() const { return coset_basis_.rows(); }
    int ambient() const { return top_.ambient(); }
    const Field& field() const { return top_.field(); }
    const Subspace& top() const { return top_; }
    const Subspace& bottom() const { return bottom_; }
    /* dim() x ambient() matrix of coset representatives. */
    const Matrix& coset_basis() const { return coset_basis_; }

    /* Coordinates of the classes of ambient column vectors in the coset
     * basis.  Throws invariant_error if a vector is not in top. */
    Matrix coords(const Matrix& vectors) const;
    /* Do two ambient column vectors represent the same class? */
    bool same_class(const Matrix& v, const Matrix& w) const;

private:
    Subspace top_, bottom_;
    Matrix coset_basis_;
};

/* Matrix of the map Q_from -> Q_to induced by the ambient linear map f,
 * with respect to the canonical coset bases.  Checks that f maps top to
 * top and bottom to bottom, and throws invariant_error when it does not
 * (an induced map that is not well defined is always a caller bug). */
Matrix induced_map(const Matrix& f, const Subquotient& from, const Subquotient& to);

/* The isomorphism (N+K)/(N+L) = K/((K cap N)+L) induced by the inclusion
 * of K into N+K, for subspaces of a common ambient space with L <= K.
 * Returns both quotients and the invertible matrix of the induced map
 * from the right-hand quotient to the left-hand one; throws
 * invariant_error if the induced matrix fails to be invertible. */
struct ModularIso {
    Subquotient left;  // (N+K)/(N+L)
    Subquotient right; // K/((K cap N)+L)
    Matrix iso;        // right -> left, invertible
};
ModularIso modular_iso(const Subspace& N, const Subspace& K, const Subspace& L);

} // namespace specseq

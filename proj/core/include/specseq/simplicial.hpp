#pragma once

#include <string>
#include <vector>

#include "specseq/complexes.hpp"

namespace specseq {

/* A simplicial vector space truncated at level `trunc`: levels 0..trunc
 * with faces d_{n,i}: level n -> n-1 (0 <= i <= n, n >= 1) and
 * degeneracies s_{n,i}: level n -> n+1 (0 <= i <= n, n+1 <= trunc).
 * Data above the truncation is absent, not zero; consumers must not
 * report anything that depends on it.
 *
 * Construction checks shapes only.  The simplicial identities are
 * checked by validate(), report-style, so a deliberately broken module
 * can be inspected; builders in this library produce valid modules by
 * construction. */
class SimplicialModule {
public:
    /* faces[n][i] = d_{n+1,i} (that is, faces[0] lists the faces out of
     * level 1); degeneracies[n][i] = s_{n,i}. */
    SimplicialModule(Field f, std::vector<int> dims, std::vector<std::vector<Matrix>> faces,
                     std::vector<std::vector<Matrix>> degeneracies);

    static SimplicialModule constant(Field f, int dim, int trunc);

    const Field& field() const { return field_; }
    int trunc() const { return static_cast<int>(dims_.size()) - 1; }
    int dim(int n) const;
    const Matrix& face(int n, int i) const;       // d_{n,i}, 1 <= n <= trunc
    const Matrix& degeneracy(int n, int i) const; // s_{n,i}, n < trunc

    /* Every violated simplicial identity, as human-readable lines;
     * empty means the module is valid. */
    std::vector<std::string> violations() const;

private:
    Field field_;
    std::vector<int> dims_;
    std::vector<std::vector<Matrix>> faces_;
    std::vector<std::vector<Matrix>> degeneracies_;
};

/* Levelwise linear maps commuting with all faces and degeneracies;
 * construction verifies commutation. */
class SimplicialMorphism {
public:
    SimplicialMorphism(SimplicialModule from, SimplicialModule to, std::vector<Matrix> levels);

    const SimplicialModule& from() const { return from_; }
    const SimplicialModule& to() const { return to_; }
    const Matrix& level(int n) const { return levels_.at(static_cast<size_t>(n)); }

private:
    SimplicialModule from_, to_;
    std::vector<Matrix> levels_;
};

/* Alternating-sum complex: degree n space is level n, differential
 * sum_i (-1)^i d_{n,i}. */
ChainComplex moore_complex(const SimplicialModule& M);

/* Normalized complex: degree n space is the intersection of ker d_{n,i}
 * for i < n, with differential (-1)^n d_{n,n}.  `levels[n]` records that
 * subspace of level n; `complex` is written in its canonical basis. */
struct Normalization {
    ChainComplex complex;
    std::vector<Subspace> levels;
};
Normalization normalize_full(const SimplicialModule& M);
ChainComplex normalize(const SimplicialModule& M);
/* The inclusion of the normalized complex into the Moore complex (a
 * quasi-isomorphism away from the truncation edge). */
ChainMap normalization_inclusion(const SimplicialModule& M);

/* Homotopy in degree n, as homology of the normalized complex;
 * cross-checked against the Moore complex.  Degrees touching the
 * truncation edge (n >= trunc) are refused with window_error, since the
 * absent levels above could change the answer. */
Subquotient homotopy_group(const SimplicialModule& M, int n);
/* The map induced on degree-n homotopy by a simplicial morphism. */
Matrix homotopy_group_map(const SimplicialMorphism& tau, int n);

/* Inverse to normalization: level n is the direct sum of one copy of
 * C_k for each order-preserving surjection [n] ->> [k], enumerated in
 * lexicographic order of their value tuples.  Faces and degeneracies
 * act by precomposition followed by epi-mono factorization; the
 * face component landing one degree down carries the sign that makes
 * normalization return C with its own differential on the nose. */
SimplicialModule dold_kan(const ChainComplex& C, int trunc);
/* Functorial action on chain maps (blockwise over the summands). */
SimplicialMorphism dold_kan(const ChainMap& f, int trunc);

/* (M tensor N)_n = M_n tensor N_n with diagonal faces and degeneracies;
 * fields and truncations must agree. */
SimplicialModule levelwise_tensor(const SimplicialModule& M, const SimplicialModule& N);

/* Finite-dimensional associative unital algebra given by its
 * multiplication matrix dim x dim^2 (acting on Kronecker-ordered pairs
 * of basis vectors) and the coordinates of its unit.  Associativity and
 * the unit laws are checked on construction. */
class Algebra {
public:
    Algebra(Field f, Matrix mult, Matrix unit);

    /* k[t]/(t^power) with basis 1, t, ..., t^{power-1}. */
    static Algebra truncated_polynomial(Field f, int power);

    const Field& field() const { return field_; }
    int dim() const { return mult_.rows(); }
    const Matrix& mult() const { return mult_; }
    const Matrix& unit() const { return unit_; }

private:
    Field field_;
    Matrix mult_;
    Matrix unit_;
};

/* Two-sided bar construction Bar(M, A, N): level n is
 * M tensor A^{tensor n} tensor N; faces multiply adjacent factors (the
 * outer ones through the module actions), degeneracies insert the unit.
 * right_action: M tensor A -> M as a dim(M) x dim(M)dim(A) matrix;
 * left_action: A tensor N -> N likewise.  Module axioms are checked. */
SimplicialModule bar_construction(const Matrix& right_action, const Algebra& A,
                                  const Matrix& left_action, int trunc);

} // namespace specseq

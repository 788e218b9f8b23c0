#pragma once

#include <map>

#include "specseq/subspace.hpp"

namespace specseq {

/* Chain complex of finite-dimensional vector spaces on a finite support
 * interval [lo, hi]; everything outside is zero.  Homological (lower)
 * indexing: the differential in degree n maps X_n -> X_{n-1}.  d∘d = 0 is
 * enforced at construction and is a hard error, never a warning.
 *
 * Cohomological objects are handled by placing them in negative degrees,
 * so one engine serves both variances. */
class ChainComplex {
public:
    /* dims[k] is the dimension in degree lo+k; diffs[k] is the
     * differential out of degree lo+k (a dims[k-1] x dims[k] matrix;
     * diffs[0] must have 0 rows since degree lo-1 vanishes). */
    ChainComplex(Field f, int lo, std::vector<int> dims, std::vector<Matrix> diffs);
    static ChainComplex zero(Field f);
    static ChainComplex concentrated(Field f, int degree, int dim);

    const Field& field() const { return fld_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
    int dim(int n) const;
    /* The differential X_n -> X_{n-1}; correctly-shaped zero matrix
     * outside the support. */
    Matrix diff(int n) const;

    /* Semantic equality: same dims and differentials on the union of
     * supports (padding with zero degrees does not matter). */
    bool operator==(const ChainComplex& o) const;
    bool operator!=(const ChainComplex& o) const { return !(*this == o); }

    Subspace cycles(int n) const;     // ker d_n
    Subspace boundaries(int n) const; // im d_{n+1}
    Subquotient homology(int n) const;
    int betti(int n) const { return homology(n).dim(); }
    bool is_exact() const;

    /* Degree shift: (shift(k) X)_n = X_{n-k}, differential scaled by
     * (-1)^k. */
    ChainComplex shift(int k) const;
    ChainComplex direct_sum(const ChainComplex& o) const;

    /* Tensor product with the usual sign: d(x@y) = dx@y + (-1)^|x| x@dy.
     * Degree-n basis is grouped by ascending X-degree, each group ordered
     * by the kronecker composite-index convention. */
    ChainComplex tensor(const ChainComplex& o) const;

    /* Hom(X, M) for M = field^coeff_dim, placed so that degree n holds
     * Hom(X_{-n}, M); the differential sends f to (-1)^{n+1} f∘d_{-n+1}.
     * The sign is load-bearing for the five-term checks downstream and is
     * deliberately not configurable.  Hom(V, M) is coordinatized by maps
     * E_{a,i} : basis vector i |-> coefficient vector a, ordered with a
     * outermost. */
    ChainComplex hom_into(int coeff_dim) const;

private:
    Field fld_;
    int lo_;
    std::vector<int> dims_;
    std::vector<Matrix> diffs_;
};

/* Chain map between complexes; commutation with the differentials is
 * validated at construction. */
class ChainMap {
public:
    /* components[n] is the degree-n matrix; missing degrees are zero. */
    ChainMap(ChainComplex domain, ChainComplex codomain, std::map<int, Matrix> components);
    static ChainMap identity(const ChainComplex& x);

    const ChainComplex& domain() const { return dom_; }
    const ChainComplex& codomain() const { return cod_; }
    Matrix component(int n) const;

    Matrix homology_map(int n) const; // H_n(f) on canonical coset bases
    bool is_quasi_iso() const;

private:
    ChainComplex dom_, cod_;
    std::map<int, Matrix> comp_;
};

/* Mapping cone: cone(f)_n = X_{n-1} (+) Y_n with differential
 * (x, y) |-> (-dx, dy - f x); the X-block comes first in the basis.
 * cone(identity) is exact. */
ChainComplex cone(const ChainMap& f);

} // namespace specseq

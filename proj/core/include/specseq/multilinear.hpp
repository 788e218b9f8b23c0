#pragma once

#include <map>
#include <string>
#include <vector>

#include "specseq/complexes.hpp"

namespace specseq {

/* Free module with a labeled, weighted basis.  Weights are non-negative
 * internal degrees; labels are only required to be distinct. */
class GradedFreeModule {
public:
    GradedFreeModule(Field f, std::vector<std::string> labels, std::vector<int> weights);
    /* rank standard generators e1..e_rank, all of the given weight */
    static GradedFreeModule standard(Field f, int rank, int weight = 1);

    const Field& field() const { return fld_; }
    int rank() const { return static_cast<int>(labels_.size()); }
    const std::string& label(int i) const { return labels_.at(static_cast<size_t>(i)); }
    int weight(int i) const { return weights_.at(static_cast<size_t>(i)); }
    int rank_of_weight(int w) const;

private:
    Field fld_;
    std::vector<std::string> labels_;
    std::vector<int> weights_;
};

/* Non-decreasing (multisets) and strictly increasing (subsets) q-tuples
 * drawn from {0,..,n-1}, in ascending lexicographic order.  These fix the
 * basis order of every symmetric and exterior power. */
std::vector<std::vector<int>> multisets(int n, int q);
std::vector<std::vector<int>> subsets(int n, int q);

/* Symmetric and exterior powers of modules and of matrices.  Power zero is
 * the rank-one module of weight zero; negative q gives the zero module. */
GradedFreeModule sym_power(const GradedFreeModule& L, int q);
Matrix sym_power_map(const Matrix& f, int q);
GradedFreeModule ext_power(const GradedFreeModule& L, int q);
Matrix ext_power_map(const Matrix& f, int q);

/* Exponent vectors e with sum e_i * weights_i = d, ascending lexicographic.
 * This is the monomial basis of weight d in a weighted polynomial ring. */
std::vector<std::vector<int>> weighted_monomials(const std::vector<int>& weights, int d);

/* A homogeneous polynomial in a weighted polynomial ring, kept in sparse
 * exponent form.  Arithmetic stays within one ring and one degree. */
class HomogeneousPoly {
public:
    HomogeneousPoly(Field f, std::vector<int> weights, int degree);
    static HomogeneousPoly variable(Field f, const std::vector<int>& weights, int i);

    void add_term(const std::vector<int>& exponents, const Scalar& c);
    HomogeneousPoly operator*(const HomogeneousPoly& o) const;
    HomogeneousPoly operator+(const HomogeneousPoly& o) const;

    const Field& field() const { return fld_; }
    const std::vector<int>& weights() const { return weights_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, Scalar>& terms() const { return terms_; }

    /* column vector in the weighted_monomials basis of its degree */
    Matrix coordinates() const;

private:
    Field fld_;
    std::vector<int> weights_;
    int degree_;
    std::map<std::vector<int>, Scalar> terms_;
};

/* Multiplication by f as a matrix from the degree-d monomial basis to the
 * degree d + deg(f) monomial basis. */
Matrix multiplication_matrix(const HomogeneousPoly& f, int d);

/* The span of { m * g : g a product of s generators, m a monomial } inside
 * the degree-d monomial coordinates; s = 0 gives the full space. */
Subspace power_ideal_piece(Field f, const std::vector<int>& weights,
                           const std::vector<HomogeneousPoly>& gens, int s, int d);

/* Comparison of the s-th symmetric power of a/a^2 with a^s/a^{s+1} for an
 * ideal a generated by a homogeneous regular sequence, one internal degree
 * at a time up to degree_bound.
 *
 * zeta multiplies representatives out; xi is built independently by solving
 * the membership problem against the generator products, so xi*zeta = id is
 * a genuine check rather than an inversion identity.  Throws invariant_error
 * if the generators fail the Hilbert-series regular-sequence count. */
struct PowerQuotientIso {
    struct Degree {
        int d;
        int sym_dim;      // free side: sum of quotient-ring dims over monomials in the generators
        int quotient_dim; // dim a^s_d - dim a^{s+1}_d
        Matrix zeta;      // sym side -> quotient side, on canonical bases
        Matrix xi;        // quotient side -> sym side
        bool ok;          // dims equal and both composites are identities
    };
    std::vector<Degree> degrees;
    bool all_ok;
};
PowerQuotientIso regseq_power_iso(Field f, const std::vector<int>& weights,
                                  const std::vector<HomogeneousPoly>& gens, int s,
                                  int degree_bound);

/* Graded module over the symmetric algebra on L, stored as degreewise data:
 * dims[j] = dim M_j and action[j] : L (x) M_j -> M_{j+1} in Kronecker order.
 * The constructor checks that the two-step actions commute (the module
 * axiom visible inside the stored window).  exact_top records whether the
 * module is genuinely zero above the stored top grade or merely truncated
 * there; strand homology near the top is only trusted in the former case. */
class SymGradedModule {
public:
    SymGradedModule(const GradedFreeModule& L, std::vector<int> dims, std::vector<Matrix> action,
                    bool exact_top);
    /* M_j = Sym^j(L) for j <= top, with the multiplication action */
    static SymGradedModule sym_algebra(const GradedFreeModule& L, int top);
    /* zero out grades >= keep; the result is exact at its top */
    SymGradedModule truncate_above(int keep) const;

    const Field& field() const { return fld_; }
    int ell() const { return ell_; }
    int top() const { return static_cast<int>(dims_.size()) - 1; }
    bool exact_top() const { return exact_top_; }
    int dim(int j) const;
    const Matrix& action(int j) const;

private:
    Field fld_;
    int ell_;
    std::vector<int> dims_;
    std::vector<Matrix> action_;
    bool exact_top_;
};

/* The contraction complex K_i = Ext^i L (x) M with
 *   d((x_1 ^ ... ^ x_i) (x) y) = sum_k (-1)^{k+1} (x_1 ^ .. x_k dropped .. ^ x_i) (x) x_k y.
 * The differential moves the M-grade up by one, so each grade strand
 * (i, j) -> (i-1, j+1) is a complex of its own.  grade_window is the last
 * strand index whose homology is free of truncation artifacts. */
struct KoszulComplex {
    ChainComplex complex;
    std::vector<std::vector<int>> grades; // per degree i, the M-grade of each basis element
    int grade_window;
};

KoszulComplex koszul(const GradedFreeModule& L, const SymGradedModule& M);

/* Homology of the (i, j) strand; window_error beyond grade_window. */
Subquotient koszul_strand_homology(const KoszulComplex& K, int i, int j);

} // namespace specseq

#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "specseq/resolution.hpp"
#include "specseq/spectral.hpp"

namespace specseq {

/* The tower of powers of the augmentation ideal of a simplicial polynomial
 * resolution, after evaluating coefficients in the target algebra A.
 *
 * At level n the evaluated object is A tensored with the polynomial ring on
 * the level-n variables, and the augmentation ideal K_n is spanned, degree
 * by degree, by the strand basis elements that contain at least one
 * variable.  Its s-th power is the span of the elements with variable
 * exponent total at least s, so every power in every internal degree is a
 * coordinate subspace of the corresponding target strand.  Powers vanish in
 * internal degree d once s > d, which makes the induced filtrations finite
 * on the nose.
 *
 * Construction verifies, for 1 <= s <= power_bound and all levels and
 * degrees in the window:
 *   - K^1 is the degreewise kernel of the evaluation onto A;
 *   - faces and degeneracies restrict to every K^s (simplicial submodule);
 *   - the layer K^s/K^{s+1} has, level by level and degree by degree, the
 *     dimension of the s-th symmetric power of the free module on that
 *     level's variables, counted by an independent multiset enumeration.
 * power_piece itself accepts any s >= 0, whether or not it was verified. */
class AugmentationTower {
public:
    AugmentationTower(SimplicialPolyAlgebra res, int power_bound);

    const SimplicialPolyAlgebra& resolution() const { return res_; }
    int power_bound() const { return power_bound_; }
    int degree_bound() const { return res_.degree_bound(); }
    int trunc() const { return res_.trunc(); }
    const Field& field() const;

    /* K^s at level n in internal degree d, as a coordinate subspace of the
     * degree-d target strand; s = 0 gives the full strand. */
    Subspace power_piece(int s, int n, int d) const;
    /* the strand basis indices spanning power_piece(s, n, d) */
    std::vector<int> power_support(int s, int n, int d) const;
    /* K^s in internal degree d as a simplicial module, with the faces and
     * degeneracies of the target strand restricted to the power supports */
    SimplicialModule power_module(int s, int d) const;

    /* dim K^s/K^{s+1} per level in degree d, from the strand supports */
    std::vector<int> layer_dims(int s, int d) const;
    /* the same dimensions predicted by symmetric-power counting on the
     * level's variable weights */
    std::vector<int> layer_dims_sym(int s, int d) const;

private:
    void verify() const;

    SimplicialPolyAlgebra res_;
    int power_bound_;
};

/* Degreewise homotopy vanishing of one power of the augmentation ideal.
 * K^s should have no homotopy below degree s; the check covers homotopy
 * degrees k <= min(s - 1, trunc - 1) and every internal degree in the
 * window, and lists the (k, degree, dimension) triples that fail.
 * `complete` records whether the truncation level was high enough to see
 * the whole range k <= s - 1. */
struct ConnectivityReport {
    int power;
    int k_checked; // homotopy degrees 0..k_checked were examined
    bool complete;
    struct Offender {
        int k;
        int degree;
        int dim;
    };
    std::vector<Offender> offenders;
    bool ok() const { return offenders.empty(); }
};
ConnectivityReport connectivity_check(const AugmentationTower& tower, int s);

/* The cotangent complex data of the resolution: levelwise the free module
 * on that level's variables, with faces acting through the linear part of
 * the polynomial faces (coefficients evaluated in the target field).  The
 * module splits by variable weight; piece(w) is the weight-w summand and
 * full() the direct sum over weights 1..degree_bound, with basis grouped
 * by level in variable order.
 *
 * Requires the target to be the residue field (one-dimensional in degree
 * zero, zero in positive degrees up to the window).  Construction verifies
 * that each level of each piece matches the first layer K/K^2 of the tower
 * dimension for dimension, and that the built modules satisfy the
 * simplicial identities. */
class CotangentData {
public:
    explicit CotangentData(const AugmentationTower& tower);

    int trunc() const { return trunc_; }
    int weight_bound() const { return static_cast<int>(pieces_.size()); }
    const Field& field() const;

    const SimplicialModule& piece(int w) const; // 1 <= w <= weight_bound
    const SimplicialModule& full() const { return full_store_.front(); }
    /* weights of the level-n basis of full(), in basis order */
    const std::vector<int>& level_weights(int n) const;

private:
    int trunc_;
    std::vector<SimplicialModule> pieces_;     // index w-1
    std::vector<SimplicialModule> full_store_; // singleton
    std::vector<std::vector<int>> level_weights_;
};

/* Homotopy of the normalized cotangent complex in homotopy degree i, as
 * dimensions per variable weight, for coefficients in a free module of the
 * given rank over the residue field.  Computed directly from the cotangent
 * pieces, with no reference to any spectral sequence.  Cohomology applies
 * Hom(-, coefficients) to the normalized pieces and reports weights
 * negated, matching the Ext degree convention.  Homotopy degrees at or
 * above the truncation level are refused with window_error. */
GradedDims aq_homology(const CotangentData& cot, int i, int coeff_rank = 1);
GradedDims aq_cohomology(const CotangentData& cot, int i, int coeff_rank = 1);

/* One internal degree of a fundamental spectral sequence: the reindexed
 * second page of the filtration of the normalized degree-d strand (or its
 * degreewise dual) by the powers of the augmentation ideal, restricted to
 * the total degrees the truncation level certifies, together with the
 * homology of the strand in those degrees. */
struct StrandPage {
    int degree;
    SpectralPage page;                 // r = 2, in the shifted frame
    std::map<int, Subquotient> homology; // abutment per total degree
};

/* A fundamental spectral sequence of the resolution with coefficients in a
 * free module over the residue field.
 *
 * Homological: filter the normalized target strand in internal degree d by
 * F^{-s} = image of K^s, for each d up to the degree bound; first-page
 * entries regrade to a first-quadrant page whose row q is the homology of
 * the normalized s-th layer, abutting to the derived tensor functors of A
 * over the base.  Cohomological: filter the dual complex by the functionals
 * vanishing on the image of K^s; the regraded page is third-quadrant and
 * abuts to the derived Hom functors.
 *
 * Entries are certified for total degrees |n| <= level_window only; the
 * pages and all verdicts below are restricted to that window.  quadrant_ok
 * reports the vanishing of every certified entry outside the expected
 * quadrant, converged the engine's comparison of stabilized terms with the
 * filtration of strand homology, and abutment the degreewise comparison of
 * total homology against the resolution-free derived-functor tables. */
struct FundamentalSS {
    bool homological;
    int coeff_rank;
    int level_window;  // certified total degrees: |n| <= level_window
    int degree_bound;
    std::vector<StrandPage> strands; // one per internal degree 0..degree_bound

    std::map<std::pair<int, int>, int> entry_dims; // summed over strands
    bool quadrant_ok;
    bool converged;

    struct AbutmentRow {
        int n;            // total degree (negative on the cohomological side)
        int homology_dim; // summed over internal degrees
        int oracle_dim;
        bool ok;          // equality held in every internal degree separately
    };
    std::vector<AbutmentRow> abutment;
    bool abutment_ok;

    int dim(int p, int q) const;
    bool ok() const { return quadrant_ok && converged && abutment_ok; }
};
FundamentalSS fundamental_ss_homology(const AugmentationTower& tower, int coeff_rank = 1);
FundamentalSS fundamental_ss_cohomology(const AugmentationTower& tower, int coeff_rank = 1);

/* The low-degree five-term exact sequences of both fundamental spectral
 * sequences, with every term computed by an independent route.
 *
 * Homological:   T_3 -> H_3 -> W -> T_2 -> H_2 -> 0
 * Cohomological: 0 -> H^2 -> T^2 -> W* -> H^3 -> T^3
 * where T is the derived tensor/Hom table over the base, H the cotangent
 * homotopy, and W the second exterior power of T_1 tensored with the
 * coefficients.  engine dims come from the spectral pages and total
 * homology; reference dims from the resolution-free oracles and the
 * cotangent complex.  Exactness is verified joint by joint on each internal
 * degree's page and holds overall iff it holds degreewise. */
struct FiveTermVerdict {
    bool homological;
    std::array<std::string, 5> labels;
    std::array<int, 5> engine_dims;    // summed over internal degrees
    std::array<int, 5> reference_dims;
    bool dims_ok;
    bool exact;
    bool abutment_ok;
    std::vector<FiveTermReport> strand_reports; // one per internal degree
    bool ok() const { return dims_ok && exact && abutment_ok; }
};
struct FiveTermPair {
    FiveTermVerdict homological;
    FiveTermVerdict cohomological;
    bool ok() const { return homological.ok() && cohomological.ok(); }
};
FiveTermPair five_term_54(const AugmentationTower& tower, int coeff_rank = 1);

/* Identification of the low-total-degree second-page entries with the
 * cotangent homotopy groups and the exterior-power term, in both frames:
 * (1,1) and (2,1) against cotangent homotopy 2 and 3, (0,2) against the
 * exterior square of T_1; mirrored at (-1,-1), (-2,-1), (0,-2) on the
 * cohomological side. */
struct E2Identifications {
    struct Row {
        std::string label;
        int p, q;
        int page_dim;
        int reference_dim;
        bool ok;
    };
    std::vector<Row> rows;
    bool ok;
};
E2Identifications e2_term_identifications(const AugmentationTower& tower,
                                          const FundamentalSS& homological,
                                          const FundamentalSS& cohomological,
                                          const CotangentData& cot,
                                          int coeff_rank = 1);

/* Acyclicity of the normalized symmetric square of the simplicial module
 * attached to the cone of the identity of a desuspended connective complex
 * P.  P must be concentrated in degrees >= 1; the cone is levelwise
 * contractible, and the check computes the homotopy of the symmetric
 * square through degree trunc - 1 and reports the dimensions found.  The
 * zero complex passes trivially. */
struct SymSquareConeReport {
    std::vector<int> homotopy_dims; // degrees 0..trunc-1
    bool exact;
};
SymSquareConeReport sym_square_cone_check(const ChainComplex& P, int trunc);

/* Copy of a page keeping only the entries (and their outgoing
 * differentials) whose total degree lies in [n_lo, n_hi].  Used to cut a
 * page arising from a truncated construction down to the band where its
 * dimensions are certified; entries outside the band may be artifacts of
 * the truncation and must not be displayed or compared. */
SpectralPage restrict_total_degrees(const SpectralPage& page, int n_lo, int n_hi);

} // namespace specseq

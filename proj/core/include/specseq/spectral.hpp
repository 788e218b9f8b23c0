#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <utility>

#include "specseq/complexes.hpp"

namespace specseq {

/* Chain complex with a finite increasing filtration by subcomplexes,
 * indexed p_min..p_max.  Outside that window the filtration saturates:
 * F^p = 0 for p < p_min and F^p = X for p > p_max.  Construction checks
 * nesting and that each layer is a subcomplex (d F^p_n <= F^p_{n-1}).
 *
 * All term spaces of the associated spectral sequence are computed from
 * the two families
 *     I^r_{p,q} = d^{-1}(F^{p-r}_{n-1}) cap F^p_n     (n = p+q)
 *     J^r_{p,q} = d(F^{p+r-1}_{n+1}) cap F^p_n
 * with E^r_{p,q} = I^r / (J^r + I^{r-1}_{p-1,q+1}) and d^r induced by
 * the total differential. */
class FilteredComplex {
public:
    /* layers[p - p_min][n - total.lo()] is F^p in degree n. */
    FilteredComplex(ChainComplex total, int p_min, std::vector<std::vector<Subspace>> layers);

    const ChainComplex& total() const { return total_; }
    const Field& field() const { return total_.field(); }
    int p_min() const { return p_min_; }
    int p_max() const { return p_min_ + static_cast<int>(layers_.size()) - 1; }
    /* F^p in degree n, with saturated tails in both p and n. */
    Subspace layer(int p, int n) const;

    Subspace iterm(int r, int p, int q) const;
    Subspace jterm(int r, int p, int q) const;
    /* E^r_{p,q} for r >= 1, as a subquotient of X_{p+q}. */
    Subquotient entry(int r, int p, int q) const;
    /* d^r_{p,q} : E^r_{p,q} -> E^r_{p-r,q+r-1} on canonical coset bases. */
    Matrix differential(int r, int p, int q) const;

    /* Least r such that both I^r and J^r have saturated (r is past both
     * filtration edges), whence E^r = E^infinity on the nose. */
    int stabilization_bound(int p) const;

    /* E^infinity by the closed form
     *   (ker d cap F^p + F^{p-1}) / (im d cap F^p + F^{p-1}),
     * cross-checked against the stabilized page (equal dimension and an
     * explicit invertible comparison); disagreement is a hard error. */
    Subquotient einfty(int p, int q) const;

    /* U^p_n: the image of H_n(F^p) -> H_n(X), as a subquotient
     * (ker d cap F^p + im d)/(im d) of X_n. */
    Subquotient homology_filtration_piece(int p, int n) const;

    /* Explicit isomorphism (ker d^r / im d^r) -> E^{r+1} at (p,q): the
     * page-turning comparison, built by transporting coset
     * representatives.  Rows/cols are indexed by the canonical bases of
     * E^{r+1} and of ker(d^r)/im(d^r) inside E^r coordinates.  Throws
     * invariant_error if the transport fails or the map is not
     * invertible. */
    Matrix page_turn_iso(int r, int p, int q) const;

private:
    ChainComplex total_;
    int p_min_;
    std::vector<std::vector<Subspace>> layers_;
};

/* How a page's (p,q) coordinates relate to the filtration's own indexing.
 * The shifted frames implement the substitution p' = 2p+q, q' = -p (and
 * its companion shifted by (-1,+1) for the dual filtration), under which
 * the engine's page r behaves like page r+1. */
enum class PageFrame { plain, shifted_homological, shifted_cohomological };

class SpectralPage {
public:
    SpectralPage(std::shared_ptr<const FilteredComplex> parent, int r, PageFrame frame,
                 std::map<std::pair<int, int>, Subquotient> entries,
                 std::map<std::pair<int, int>, Matrix> differentials);

    int r() const { return r_; }
    PageFrame frame() const { return frame_; }
    const FilteredComplex& parent() const { return *parent_; }
    std::shared_ptr<const FilteredComplex> parent_ptr() const { return parent_; }

    /* Page index in the engine's plain numbering (one less in shifted
     * frames). */
    int engine_r() const { return frame_ == PageFrame::plain ? r_ : r_ - 1; }
    /* Translate frame coordinates to the filtration's plain (p,q). */
    std::pair<int, int> to_plain(int p, int q) const;

    const std::map<std::pair<int, int>, Subquotient>& entries() const { return entries_; }
    int dim(int p, int q) const;
    const Subquotient* find(int p, int q) const;
    /* d^r out of (p,q); zero-shaped when either end is absent. */
    Matrix d(int p, int q) const;

private:
    std::shared_ptr<const FilteredComplex> parent_;
    int r_;
    PageFrame frame_;
    std::map<std::pair<int, int>, Subquotient> entries_;
    std::map<std::pair<int, int>, Matrix> differentials_;
};

/* Build page r (plain frame).  The shared_ptr overload avoids copying
 * the filtered complex on hot paths. */
SpectralPage make_page(std::shared_ptr<const FilteredComplex> F, int r);
SpectralPage make_page(const FilteredComplex& F, int r);

/* Substitution (p,q) -> (2p+q, -p), page r -> r+1: turns the engine's E^1
 * of the powers-of-the-augmentation-ideal filtration into the E^2 page in
 * standard homological position. */
SpectralPage reindex_E1_to_E2(const SpectralPage& plain_page);
/* Companion for the dual filtration: (p,q) -> (2p+q-1, -p+1), r -> r+1. */
SpectralPage reindex_E1_to_E2_cohomological(const SpectralPage& plain_page);

/* Convergence in the sense of a finite filtration: per degree, the graded
 * pieces U^p/U^{p-1} of the induced filtration on homology match
 * E^infinity dimensions. */
struct ConvergenceReport {
    struct Degree {
        int n;
        int h_dim;
        std::vector<int> u_dims;      // U^p for p = p_min..p_max
        std::vector<int> graded_dims; // U^p/U^{p-1}
        std::vector<int> einfty_dims; // E^inf_{p,n-p}
        bool ok;
    };
    std::vector<Degree> degrees;
    bool ok;
};
ConvergenceReport check_convergence(const FilteredComplex& F);

/* Per-degree vanishing thresholds licensing convergence: alpha(n) is the
 * largest a in the window with H_n(F^p) = 0 for all p <= a, and beta(n)
 * the smallest b with H_n(F^p) -> H_n(X) an isomorphism for all p >= b.
 * Saturated tails make both exist for finite filtrations. */
struct ConvergenceBounds {
    struct Degree {
        int n;
        std::optional<int> alpha;
        std::optional<int> beta;
    };
    std::vector<Degree> degrees;
    bool all_found;
};
ConvergenceBounds convergence_bounds(const FilteredComplex& F);

/* A five-term exact sequence extracted from an E^2 page with the
 * appropriate vanishing region, together with explicit matrices for the
 * four maps and per-joint exactness verdicts.
 *
 * Homological shape (terms, left to right):
 *   H_{n+1} -> E2_{2,n-1} -> E2_{0,n} -> H_n -> E2_{1,n-1} -> 0
 * Cohomological shape:
 *   0 -> E2_{-1,1-n} -> H_{-n} -> E2_{0,-n} -> E2_{-2,1-n} -> H_{-n-1}
 * maps[k] sends term k to term k+1 on canonical bases.  exact[k] is the
 * exactness verdict at the k-th joint read left to right: homologically
 * that is im = ker at terms 1,2,3 and then surjectivity of the last map;
 * cohomologically injectivity of the first map and then im = ker at
 * terms 1,2,3. */
struct FiveTermReport {
    int n;
    bool homological;
    std::array<int, 5> dims;
    std::vector<Matrix> maps;
    std::array<bool, 4> exact;
    bool abutment_consistent;
    bool all_exact() const;
};

/* abutment maps a total degree to the subquotient the caller believes is
 * H of the total complex there (cross-checked by dimension).  The page
 * must have r() == 2 in its own frame.  Violated vanishing hypotheses
 * throw invariant_error naming the offending entry. */
FiveTermReport five_term_homological(const SpectralPage& E2,
                                     const std::map<int, Subquotient>& abutment, int n);
FiveTermReport five_term_cohomological(const SpectralPage& E2,
                                       const std::map<int, Subquotient>& abutment, int n);

} // namespace specseq

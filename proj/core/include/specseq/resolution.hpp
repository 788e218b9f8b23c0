#pragma once

#include "specseq/graded_algebra.hpp"
#include "specseq/simplicial.hpp"

namespace specseq {

/* One step F_i -> F_{i-1} of a graded free resolution: generator weights
 * of F_i and a matrix of homogeneous polynomial entries over the base.
 * entries[row][col] is the coefficient of the row-th generator of F_{i-1}
 * in the image of the col-th generator of F_i. */
struct FreeResolutionStep {
    std::vector<int> shifts;
    std::vector<std::vector<HomogeneousPoly>> entries;
};

/* Minimal graded free resolution of module (a cyclic quotient of R) over
 * R, computed by iterated degreewise kernels up to the given homological
 * step and internal degree.  steps[0] holds only the shifts of F_0. */
std::vector<FreeResolutionStep> graded_free_resolution(const GradedAlgebraPresentation& R,
                                                       const GradedAlgebraPresentation& module,
                                                       int steps, int degree_bound);

struct GradedDims {
    std::map<int, int> by_degree;
    int total() const;
    int at(int d) const;
};

/* Derived functors of cyclic modules over R, by the free resolution above;
 * entirely independent of the simplicial machinery.  Both return one table
 * entry per homological index 0..imax, each a dimension count per internal
 * degree (Ext degrees may be negative). */
std::vector<GradedDims> tor_table(const GradedAlgebraPresentation& R,
                                  const GradedAlgebraPresentation& amod,
                                  const GradedAlgebraPresentation& mmod, int imax,
                                  int degree_bound);
std::vector<GradedDims> ext_table(const GradedAlgebraPresentation& R,
                                  const GradedAlgebraPresentation& amod,
                                  const GradedAlgebraPresentation& mmod, int imax,
                                  int degree_bound);
GradedDims tor_oracle(const GradedAlgebraPresentation& R, const GradedAlgebraPresentation& amod,
                      const GradedAlgebraPresentation& mmod, int i, int degree_bound);
GradedDims ext_oracle(const GradedAlgebraPresentation& R, const GradedAlgebraPresentation& amod,
                      const GradedAlgebraPresentation& mmod, int i, int degree_bound);

/* A truncated simplicial polynomial extension of R resolving A = R/I.
 *
 * Level n is the polynomial ring over R on a finite variable set: fresh
 * variables adjoined at level n to kill homotopy below, plus degeneracy
 * images of variables born earlier.  A variable is indexed by its birth
 * level, its index among that level's fresh variables, and the monotone
 * surjection that degenerated it down.  Faces and degeneracies are algebra
 * maps determined on variables; a fresh variable has all faces zero except
 * the last, which is its attached cycle.
 *
 * All homogeneous pieces of internal degree <= degree_bound are exact;
 * anything beyond raises window_error. */
class SimplicialPolyAlgebra {
public:
    enum class Coefficients { base, target };

    struct LevelVariable {
        int birth;
        int fresh_index;
        std::vector<int> eta; // values of the surjection [level] ->> [birth]
        int weight;
        std::string name;
    };

    /* basis of level n in degree d: one block of coefficient-algebra
     * classes per variable monomial */
    struct StrandBasis {
        std::vector<std::vector<int>> xmons; // variable exponent vectors
        std::vector<int> offsets;            // block starts, one per monomial
        std::vector<int> coeff_degree;       // d - weight(monomial)
        std::vector<int> xdegree;            // per basis element: total variable exponent
        int dim;
    };

    const GradedAlgebraPresentation& base() const { return base_; }
    const GradedAlgebraPresentation& target() const { return target_; }
    int trunc() const { return trunc_; }
    int degree_bound() const { return degree_bound_; }

    int fresh_count(int n) const;
    int fresh_weight(int n, int k) const;
    /* the cycle attached to fresh variable k of level n, as a polynomial
     * in the combined ring of level n-1 */
    const HomogeneousPoly& fresh_cycle(int n, int k) const;

    const std::vector<LevelVariable>& variables(int n) const;
    /* ring variables followed by level-n variables */
    std::vector<std::string> combined_vars(int n) const;
    std::vector<int> combined_weights(int n) const;

    /* image of variable v of level n under the i-th face, in the combined
     * ring of level n-1; degeneracies send variables to variables */
    HomogeneousPoly face_image(int n, int i, int v) const;
    int degeneracy_image(int n, int i, int v) const;

    StrandBasis strand_basis(int n, int d, Coefficients c) const;
    /* coordinates of a combined-ring polynomial in the strand basis */
    Matrix strand_coords(int n, Coefficients c, const HomogeneousPoly& p) const;
    /* a combined-ring representative of a strand coordinate column */
    HomogeneousPoly strand_rep(int n, int d, Coefficients c, const Matrix& column) const;

    /* the degree-d strand of the whole simplicial object as a simplicial
     * vector space over R (base) or over A (target) */
    const SimplicialModule& strand(int d, Coefficients c) const;

private:
    friend SimplicialPolyAlgebra build_resolution(const GradedAlgebraPresentation&,
                                                  const GradedAlgebraPresentation&, int, int);

    SimplicialPolyAlgebra(GradedAlgebraPresentation base, GradedAlgebraPresentation target,
                          int trunc, int degree_bound);

    struct FreshVar {
        int weight;
        HomogeneousPoly cycle;
    };

    const GradedAlgebraPresentation& coeffs(Coefficients c) const {
        return c == Coefficients::base ? base_ : target_;
    }
    SimplicialModule build_strand(int d, Coefficients c, int top) const;
    void check_level(int n) const;
    void check_degree(int d) const;

    GradedAlgebraPresentation base_;
    GradedAlgebraPresentation target_;
    int trunc_;
    int degree_bound_;
    std::vector<std::vector<FreshVar>> fresh_; // fresh_[n], n = 0..trunc (level 0 empty)

    struct LevelData {
        std::vector<LevelVariable> list;
        std::map<std::tuple<int, int, std::vector<int>>, int> index; // (birth, k, eta)
    };
    struct StrandData {
        StrandBasis basis;
        std::map<std::vector<int>, int> block_of; // variable monomial -> block
    };
    const LevelData& level_data(int n) const;
    const StrandData& strand_data(int n, int d, Coefficients c) const;
    void drop_caches() const;

    mutable std::map<int, LevelData> vars_cache_;
    mutable std::map<std::tuple<int, int, int>, HomogeneousPoly> face_cache_; // (n, i, v)
    mutable std::map<std::tuple<int, int, int>, StrandData> basis_cache_;     // (n, d, which)
    mutable std::map<int, std::map<std::vector<int>, int>> ring_mon_cache_;
    mutable std::map<std::pair<int, int>, Matrix> class_cache_; // (which, d): monomial -> class
    mutable std::map<std::pair<int, int>, SimplicialModule> strand_cache_; // (d, which)
};

/* Build the resolution: at each level kill a minimal homogeneous set of
 * module generators of the homotopy left over from the previous levels,
 * degree by degree up to degree_bound, then verify that the result has
 * the homotopy of A concentrated in level zero.  Throws invariant_error
 * naming the first homotopy group and degree that survive. */
SimplicialPolyAlgebra build_resolution(const GradedAlgebraPresentation& R,
                                       const GradedAlgebraPresentation& A, int trunc,
                                       int degree_bound);

} // namespace specseq

#include "specseq/resolution.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace specseq {

int GradedDims::total() const {
    int t = 0;
    for (const auto& [d, n] : by_degree)
        t += n;
    return t;
}

int GradedDims::at(int d) const {
    auto it = by_degree.find(d);
    return it == by_degree.end() ? 0 : it->second;
}

namespace {

/* Block matrix of a free-module map at internal degree d:
 *   (+)_b C_{d - col_shifts[b]}  ->  (+)_a C_{d - row_shifts[a]},
 * block (a, b) being multiplication by entries[a][b]. */
Matrix step_matrix(const GradedAlgebraPresentation& C, const std::vector<int>& row_shifts,
                   const std::vector<int>& col_shifts,
                   const std::vector<std::vector<HomogeneousPoly>>& entries, int d) {
    std::vector<int> roff(row_shifts.size() + 1, 0), coff(col_shifts.size() + 1, 0);
    for (size_t a = 0; a < row_shifts.size(); ++a)
        roff[a + 1] = roff[a] + C.dim(d - row_shifts[a]);
    for (size_t b = 0; b < col_shifts.size(); ++b)
        coff[b + 1] = coff[b] + C.dim(d - col_shifts[b]);
    Matrix out = Matrix::zero(C.field(), roff.back(), coff.back());
    for (size_t a = 0; a < row_shifts.size(); ++a)
        for (size_t b = 0; b < col_shifts.size(); ++b) {
            const HomogeneousPoly& p = entries.at(a).at(b);
            if (p.is_zero())
                continue;
            Matrix blk = C.multiplication(p, d - col_shifts[b]);
            for (int i = 0; i < blk.rows(); ++i)
                for (int j = 0; j < blk.cols(); ++j)
                    if (!blk.entry_is_zero(i, j))
                        out.set(roff[a] + i, coff[b] + j, blk.at(i, j));
        }
    return out;
}

/* Dual block matrix at internal degree e: applying a free-module map
 * F_{i+1} -> F_i (given by entries over from/to shifts) to a functional
 * turns (+)_a M_{e + from[a]} into (+)_b M_{e + to[b]}. */
Matrix hom_matrix(const GradedAlgebraPresentation& M, const std::vector<int>& from_shifts,
                  const std::vector<int>& to_shifts,
                  const std::vector<std::vector<HomogeneousPoly>>& entries, int e) {
    std::vector<int> roff(to_shifts.size() + 1, 0), coff(from_shifts.size() + 1, 0);
    for (size_t b = 0; b < to_shifts.size(); ++b)
        roff[b + 1] = roff[b] + M.dim(e + to_shifts[b]);
    for (size_t a = 0; a < from_shifts.size(); ++a)
        coff[a + 1] = coff[a] + M.dim(e + from_shifts[a]);
    Matrix out = Matrix::zero(M.field(), roff.back(), coff.back());
    for (size_t b = 0; b < to_shifts.size(); ++b)
        for (size_t a = 0; a < from_shifts.size(); ++a) {
            const HomogeneousPoly& p = entries.at(a).at(b);
            if (p.is_zero())
                continue;
            Matrix blk = M.multiplication(p, e + from_shifts[a]);
            for (int i = 0; i < blk.rows(); ++i)
                for (int j = 0; j < blk.cols(); ++j)
                    if (!blk.entry_is_zero(i, j))
                        out.set(roff[b] + i, coff[a] + j, blk.at(i, j));
        }
    return out;
}

/* Polynomial representative of a coset-coordinate row slice. */
HomogeneousPoly poly_of_coords(const GradedAlgebraPresentation& C, int d, const Matrix& row,
                               int from, int len) {
    HomogeneousPoly p(C.field(), C.weights(), d);
    for (int j = 0; j < len; ++j) {
        if (row.entry_is_zero(0, from + j))
            continue;
        Scalar c = row.at(0, from + j);
        HomogeneousPoly rep = C.representative(d, j);
        for (const auto& [exps, coeff] : rep.terms())
            p.add_term(exps, c * coeff);
    }
    return p;
}

void check_module_over(const GradedAlgebraPresentation& R, const GradedAlgebraPresentation& mod,
                       int degree_bound, const char* what) {
    require_same_field(R.field(), mod.field(), "derived functor tables");
    if (!mod.same_ring_as(R))
        throw invariant_error(std::string(what) + " is not presented over the same ring");
    if (!mod.quotient_of(R, degree_bound))
        throw invariant_error(std::string(what) +
                              " is not a quotient of the base ring in the degree window");
}

} // namespace

std::vector<FreeResolutionStep> graded_free_resolution(const GradedAlgebraPresentation& R,
                                                       const GradedAlgebraPresentation& module,
                                                       int steps, int degree_bound) {
    check_module_over(R, module, degree_bound, "resolved module");
    if (steps < 0)
        throw invariant_error("graded_free_resolution: negative step count");

    std::vector<FreeResolutionStep> out;
    out.push_back(FreeResolutionStep{{0}, {}});

    for (int s = 1; s <= steps; ++s) {
        const FreeResolutionStep& prev = out.back();
        FreeResolutionStep st;
        st.entries.resize(prev.shifts.size());
        for (int d = 0; d <= degree_bound; ++d) {
            Subspace ker = [&] {
                if (s == 1)
                    return Subspace::from_columns(
                        R.piece(d).coords(module.ideal_piece(d).basis().transpose()));
                const FreeResolutionStep& prev2 = out[out.size() - 2];
                return Subspace::span(
                    step_matrix(R, prev2.shifts, prev.shifts, prev.entries, d).kernel());
            }();
            Subspace spanned =
                Subspace::from_columns(step_matrix(R, prev.shifts, st.shifts, st.entries, d));
            Subquotient gap(ker, spanned);
            for (int g = 0; g < gap.dim(); ++g) {
                Matrix row = gap.coset_basis().row(g);
                st.shifts.push_back(d);
                int off = 0;
                for (size_t a = 0; a < prev.shifts.size(); ++a) {
                    int len = R.dim(d - prev.shifts[a]);
                    st.entries[a].push_back(poly_of_coords(R, d - prev.shifts[a], row, off, len));
                    off += len;
                }
            }
        }
        out.push_back(std::move(st));
    }
    return out;
}

std::vector<GradedDims> tor_table(const GradedAlgebraPresentation& R,
                                  const GradedAlgebraPresentation& amod,
                                  const GradedAlgebraPresentation& mmod, int imax,
                                  int degree_bound) {
    check_module_over(R, mmod, degree_bound, "coefficient module");
    if (imax < 0)
        throw invariant_error("tor_table: negative homological bound");
    auto res = graded_free_resolution(R, amod, imax + 1, degree_bound);
    const Field f = R.field();

    std::vector<GradedDims> out(static_cast<size_t>(imax) + 1);
    for (int d = 0; d <= degree_bound; ++d) {
        std::vector<int> dims;
        std::vector<Matrix> diffs;
        for (int i = 0; i <= imax + 1; ++i) {
            int dim = 0;
            for (int w : res[static_cast<size_t>(i)].shifts)
                dim += mmod.dim(d - w);
            dims.push_back(dim);
            if (i == 0)
                diffs.push_back(Matrix::zero(f, 0, dim));
            else
                diffs.push_back(step_matrix(mmod, res[static_cast<size_t>(i) - 1].shifts,
                                            res[static_cast<size_t>(i)].shifts,
                                            res[static_cast<size_t>(i)].entries, d));
        }
        ChainComplex X(f, 0, dims, diffs);
        for (int i = 0; i <= imax; ++i) {
            int b = X.betti(i);
            if (b != 0)
                out[static_cast<size_t>(i)].by_degree[d] += b;
        }
    }
    return out;
}

/* The cochain groups Hom(F_i, M)_e are repackaged as a chain complex in
 * degrees -(imax+1)..0 so the homology machinery applies unchanged; the
 * i-th cohomology sits in chain degree -i.  Internal degrees e run from
 * -(largest shift) to degree_bound - (largest shift): above that the
 * truncation of the resolution could leak into the answer. */
std::vector<GradedDims> ext_table(const GradedAlgebraPresentation& R,
                                  const GradedAlgebraPresentation& amod,
                                  const GradedAlgebraPresentation& mmod, int imax,
                                  int degree_bound) {
    check_module_over(R, mmod, degree_bound, "coefficient module");
    if (imax < 0)
        throw invariant_error("ext_table: negative homological bound");
    auto res = graded_free_resolution(R, amod, imax + 1, degree_bound);
    const Field f = R.field();

    int wmax = 0;
    for (const auto& st : res)
        for (int w : st.shifts)
            wmax = std::max(wmax, w);

    std::vector<GradedDims> out(static_cast<size_t>(imax) + 1);
    for (int e = -wmax; e <= degree_bound - wmax; ++e) {
        std::vector<int> dims;
        std::vector<Matrix> diffs;
        for (int j = 0; j <= imax + 1; ++j) {
            int i = imax + 1 - j; // chain degree -i holds Hom(F_i, M)_e
            int dim = 0;
            for (int w : res[static_cast<size_t>(i)].shifts)
                dim += mmod.dim(e + w);
            dims.push_back(dim);
            if (j == 0)
                diffs.push_back(Matrix::zero(f, 0, dim));
            else
                diffs.push_back(hom_matrix(mmod, res[static_cast<size_t>(i)].shifts,
                                           res[static_cast<size_t>(i) + 1].shifts,
                                           res[static_cast<size_t>(i) + 1].entries, e));
        }
        ChainComplex X(f, -(imax + 1), dims, diffs);
        for (int i = 0; i <= imax; ++i) {
            int b = X.betti(-i);
            if (b != 0)
                out[static_cast<size_t>(i)].by_degree[e] += b;
        }
    }
    return out;
}

GradedDims tor_oracle(const GradedAlgebraPresentation& R, const GradedAlgebraPresentation& amod,
                      const GradedAlgebraPresentation& mmod, int i, int degree_bound) {
    return tor_table(R, amod, mmod, i, degree_bound).back();
}

GradedDims ext_oracle(const GradedAlgebraPresentation& R, const GradedAlgebraPresentation& amod,
                      const GradedAlgebraPresentation& mmod, int i, int degree_bound) {
    return ext_table(R, amod, mmod, i, degree_bound).back();
}

/* ------------------------------------------------------------------ */

namespace {

/* Value tuples of all order-preserving surjections [n] ->> [b], in
 * ascending lexicographic order of the sets of ascent positions. */
std::vector<std::vector<int>> surjection_tuples(int n, int b) {
    std::vector<std::vector<int>> out;
    for (const auto& jumps : subsets(n, b)) {
        std::vector<int> eta(static_cast<size_t>(n) + 1, 0);
        size_t next = 0;
        for (int j = 0; j < n; ++j) {
            int v = eta[static_cast<size_t>(j)];
            if (next < jumps.size() && jumps[next] == j) {
                ++v;
                ++next;
            }
            eta[static_cast<size_t>(j) + 1] = v;
        }
        out.push_back(std::move(eta));
    }
    return out;
}

std::string surjection_suffix(const std::vector<int>& eta) {
    // identity gets no suffix; otherwise list the ascent positions
    if (eta.back() == static_cast<int>(eta.size()) - 1)
        return "";
    std::ostringstream os;
    os << "@";
    for (size_t j = 0; j + 1 < eta.size(); ++j)
        if (eta[j + 1] > eta[j])
            os << j;
    return os.str();
}

} // namespace

SimplicialPolyAlgebra::SimplicialPolyAlgebra(GradedAlgebraPresentation base,
                                             GradedAlgebraPresentation target, int trunc,
                                             int degree_bound)
    : base_(std::move(base)), target_(std::move(target)), trunc_(trunc),
      degree_bound_(degree_bound) {
    fresh_.resize(static_cast<size_t>(trunc_) + 1);
}

void SimplicialPolyAlgebra::check_level(int n) const {
    if (n < 0 || n > trunc_)
        throw window_error("simplicial level " + std::to_string(n) +
                           " outside truncation 0.." + std::to_string(trunc_));
}

void SimplicialPolyAlgebra::check_degree(int d) const {
    if (d < 0 || d > degree_bound_)
        throw window_error("internal degree " + std::to_string(d) + " outside window 0.." +
                           std::to_string(degree_bound_));
}

int SimplicialPolyAlgebra::fresh_count(int n) const {
    check_level(n);
    return static_cast<int>(fresh_[static_cast<size_t>(n)].size());
}

int SimplicialPolyAlgebra::fresh_weight(int n, int k) const {
    check_level(n);
    const auto& lv = fresh_[static_cast<size_t>(n)];
    if (k < 0 || k >= static_cast<int>(lv.size()))
        throw invariant_error("no fresh variable " + std::to_string(k) + " at level " +
                              std::to_string(n));
    return lv[static_cast<size_t>(k)].weight;
}

const HomogeneousPoly& SimplicialPolyAlgebra::fresh_cycle(int n, int k) const {
    check_level(n);
    const auto& lv = fresh_[static_cast<size_t>(n)];
    if (k < 0 || k >= static_cast<int>(lv.size()))
        throw invariant_error("no fresh variable " + std::to_string(k) + " at level " +
                              std::to_string(n));
    return lv[static_cast<size_t>(k)].cycle;
}

const SimplicialPolyAlgebra::LevelData& SimplicialPolyAlgebra::level_data(int n) const {
    check_level(n);
    auto it = vars_cache_.find(n);
    if (it != vars_cache_.end())
        return it->second;
    LevelData data;
    for (int b = 1; b <= n; ++b) {
        const auto& lv = fresh_[static_cast<size_t>(b)];
        for (int k = 0; k < static_cast<int>(lv.size()); ++k) {
            std::string stem = "x" + std::to_string(b) + "_" + std::to_string(k);
            for (auto& eta : surjection_tuples(n, b)) {
                LevelVariable var;
                var.birth = b;
                var.fresh_index = k;
                var.weight = lv[static_cast<size_t>(k)].weight;
                var.name = stem + surjection_suffix(eta);
                var.eta = eta;
                data.index[{b, k, eta}] = static_cast<int>(data.list.size());
                data.list.push_back(std::move(var));
            }
        }
    }
    return vars_cache_.emplace(n, std::move(data)).first->second;
}

const std::vector<SimplicialPolyAlgebra::LevelVariable>&
SimplicialPolyAlgebra::variables(int n) const {
    return level_data(n).list;
}

std::vector<std::string> SimplicialPolyAlgebra::combined_vars(int n) const {
    std::vector<std::string> out = base_.vars();
    for (const auto& v : variables(n))
        out.push_back(v.name);
    return out;
}

std::vector<int> SimplicialPolyAlgebra::combined_weights(int n) const {
    std::vector<int> out = base_.weights();
    for (const auto& v : variables(n))
        out.push_back(v.weight);
    return out;
}

HomogeneousPoly SimplicialPolyAlgebra::face_image(int n, int i, int v) const {
    check_level(n);
    if (n < 1)
        throw window_error("faces start at level 1");
    if (i < 0 || i > n)
        throw invariant_error("face index " + std::to_string(i) + " out of range at level " +
                              std::to_string(n));
    const auto& vars = variables(n);
    if (v < 0 || v >= static_cast<int>(vars.size()))
        throw invariant_error("no variable " + std::to_string(v) + " at level " +
                              std::to_string(n));
    auto key = std::make_tuple(n, i, v);
    auto it = face_cache_.find(key);
    if (it != face_cache_.end())
        return it->second;

    const LevelVariable& var = vars[static_cast<size_t>(v)];
    const int b = var.birth;
    // alpha = eta o delta_i : [n-1] -> [b]
    std::vector<int> alpha(static_cast<size_t>(n), 0);
    for (int j = 0; j < n; ++j)
        alpha[static_cast<size_t>(j)] = var.eta[static_cast<size_t>(j < i ? j : j + 1)];
    // at most one value of [b] can go missing when one input is dropped
    int missing = -1;
    {
        std::vector<char> seen(static_cast<size_t>(b) + 1, 0);
        for (int a : alpha)
            seen[static_cast<size_t>(a)] = 1;
        for (int m = 0; m <= b; ++m)
            if (!seen[static_cast<size_t>(m)]) {
                missing = m;
                break;
            }
    }
    const Field f = base_.field();
    HomogeneousPoly result(f, combined_weights(n - 1), var.weight);
    const size_t m = base_.vars().size();
    if (missing == -1) {
        // still surjective: the image is again a variable
        int idx = level_data(n - 1).index.at({b, var.fresh_index, alpha});
        result = HomogeneousPoly::variable(f, combined_weights(n - 1),
                                           static_cast<int>(m) + idx);
    } else if (missing == b) {
        // alpha = delta_b o sigma: the last face of the fresh variable is its
        // attached cycle, pushed forward along sigma by relabeling variables
        const HomogeneousPoly& z = fresh_[static_cast<size_t>(b)][static_cast<size_t>(var.fresh_index)].cycle;
        const auto& low = variables(b - 1);
        const auto& dst = level_data(n - 1);
        std::vector<int> relabel(low.size());
        for (size_t w = 0; w < low.size(); ++w) {
            std::vector<int> composed(static_cast<size_t>(n), 0);
            for (int j = 0; j < n; ++j)
                composed[static_cast<size_t>(j)] =
                    low[w].eta[static_cast<size_t>(alpha[static_cast<size_t>(j)])];
            relabel[w] = dst.index.at({low[w].birth, low[w].fresh_index, composed});
        }
        for (const auto& [exps, coeff] : z.terms()) {
            std::vector<int> mapped(m + dst.list.size(), 0);
            for (size_t j = 0; j < m; ++j)
                mapped[j] = exps[j];
            for (size_t w = 0; w < low.size(); ++w)
                mapped[m + static_cast<size_t>(relabel[w])] += exps[m + w];
            result.add_term(mapped, coeff);
        }
    }
    // missing < b: a non-final face of the fresh variable, which is zero
    return face_cache_.emplace(key, std::move(result)).first->second;
}

int SimplicialPolyAlgebra::degeneracy_image(int n, int i, int v) const {
    check_level(n + 1);
    if (i < 0 || i > n)
        throw invariant_error("degeneracy index " + std::to_string(i) +
                              " out of range at level " + std::to_string(n));
    const auto& vars = variables(n);
    if (v < 0 || v >= static_cast<int>(vars.size()))
        throw invariant_error("no variable " + std::to_string(v) + " at level " +
                              std::to_string(n));
    const LevelVariable& var = vars[static_cast<size_t>(v)];
    std::vector<int> beta(static_cast<size_t>(n) + 2, 0);
    for (int j = 0; j <= n + 1; ++j)
        beta[static_cast<size_t>(j)] = var.eta[static_cast<size_t>(j <= i ? j : j - 1)];
    return level_data(n + 1).index.at({var.birth, var.fresh_index, beta});
}

const SimplicialPolyAlgebra::StrandData&
SimplicialPolyAlgebra::strand_data(int n, int d, Coefficients c) const {
    check_level(n);
    check_degree(d);
    auto key = std::make_tuple(n, d, static_cast<int>(c));
    auto it = basis_cache_.find(key);
    if (it != basis_cache_.end())
        return it->second;

    const GradedAlgebraPresentation& C = coeffs(c);
    std::vector<int> varw;
    for (const auto& v : variables(n))
        varw.push_back(v.weight);

    StrandData data;
    data.basis.dim = 0;
    for (int w = 0; w <= d; ++w)
        for (auto& mon : weighted_monomials(varw, w)) {
            int xdeg = 0;
            for (int e : mon)
                xdeg += e;
            data.block_of[mon] = static_cast<int>(data.basis.xmons.size());
            data.basis.offsets.push_back(data.basis.dim);
            data.basis.coeff_degree.push_back(d - w);
            data.basis.dim += C.dim(d - w);
            for (int r = 0; r < C.dim(d - w); ++r)
                data.basis.xdegree.push_back(xdeg);
            data.basis.xmons.push_back(std::move(mon));
        }
    return basis_cache_.emplace(key, std::move(data)).first->second;
}

SimplicialPolyAlgebra::StrandBasis SimplicialPolyAlgebra::strand_basis(int n, int d,
                                                                       Coefficients c) const {
    return strand_data(n, d, c).basis;
}

Matrix SimplicialPolyAlgebra::strand_coords(int n, Coefficients c,
                                            const HomogeneousPoly& p) const {
    const int d = p.degree();
    const StrandData& data = strand_data(n, d, c);
    const GradedAlgebraPresentation& C = coeffs(c);
    if (p.weights() != combined_weights(n))
        throw invariant_error("polynomial is not in the level-" + std::to_string(n) +
                              " combined ring");
    const size_t m = base_.vars().size();
    Matrix out = Matrix::zero(C.field(), data.basis.dim, 1);

    for (const auto& [exps, coeff] : p.terms()) {
        std::vector<int> ringmon(exps.begin(), exps.begin() + static_cast<long>(m));
        std::vector<int> xmon(exps.begin() + static_cast<long>(m), exps.end());
        int block = data.block_of.at(xmon);
        int cd = data.basis.coeff_degree[static_cast<size_t>(block)];
        if (C.dim(cd) == 0)
            continue; // the coefficient class is zero

        auto ckey = std::make_pair(static_cast<int>(c), cd);
        auto cit = class_cache_.find(ckey);
        if (cit == class_cache_.end()) {
            const Subquotient& piece = C.piece(cd);
            Matrix classes = piece.coords(Matrix::identity(C.field(), piece.ambient()));
            cit = class_cache_.emplace(ckey, std::move(classes)).first;
        }
        const auto& ridx = [&]() -> const std::map<std::vector<int>, int>& {
            auto rit = ring_mon_cache_.find(cd);
            if (rit != ring_mon_cache_.end())
                return rit->second;
            std::map<std::vector<int>, int> idx;
            auto mons = weighted_monomials(base_.weights(), cd);
            for (size_t j = 0; j < mons.size(); ++j)
                idx[mons[j]] = static_cast<int>(j);
            return ring_mon_cache_.emplace(cd, std::move(idx)).first->second;
        }();
        int col = ridx.at(ringmon);
        int off = data.basis.offsets[static_cast<size_t>(block)];
        for (int r = 0; r < C.dim(cd); ++r) {
            if (cit->second.entry_is_zero(r, col))
                continue;
            Scalar cur = out.at(off + r, 0) + coeff * cit->second.at(r, col);
            out.set(off + r, 0, cur);
        }
    }
    return out;
}

HomogeneousPoly SimplicialPolyAlgebra::strand_rep(int n, int d, Coefficients c,
                                                  const Matrix& column) const {
    const StrandData& data = strand_data(n, d, c);
    const GradedAlgebraPresentation& C = coeffs(c);
    if (column.rows() != data.basis.dim || column.cols() != 1)
        throw invariant_error("strand coordinate column has the wrong shape");
    HomogeneousPoly p(C.field(), combined_weights(n), d);
    for (size_t block = 0; block < data.basis.xmons.size(); ++block) {
        int cd = data.basis.coeff_degree[block];
        int off = data.basis.offsets[block];
        for (int r = 0; r < C.dim(cd); ++r) {
            if (column.entry_is_zero(off + r, 0))
                continue;
            Scalar coeff = column.at(off + r, 0);
            HomogeneousPoly rep = C.representative(cd, r);
            for (const auto& [exps, c2] : rep.terms()) {
                std::vector<int> full = exps;
                full.insert(full.end(), data.basis.xmons[block].begin(),
                            data.basis.xmons[block].end());
                p.add_term(full, coeff * c2);
            }
        }
    }
    return p;
}

SimplicialModule SimplicialPolyAlgebra::build_strand(int d, Coefficients c, int top) const {
    const GradedAlgebraPresentation& C = coeffs(c);
    const Field f = C.field();

    std::vector<int> dims;
    for (int n = 0; n <= top; ++n)
        dims.push_back(strand_data(n, d, c).basis.dim);

    std::vector<std::vector<Matrix>> faces;
    for (int n = 1; n <= top; ++n) {
        const StrandData& src = strand_data(n, d, c);
        std::vector<Matrix> level;
        for (int i = 0; i <= n; ++i) {
            Matrix mat = Matrix::zero(f, dims[static_cast<size_t>(n) - 1],
                                      dims[static_cast<size_t>(n)]);
            for (size_t block = 0; block < src.basis.xmons.size(); ++block) {
                int cd = src.basis.coeff_degree[block];
                if (C.dim(cd) == 0)
                    continue;
                const std::vector<int>& mon = src.basis.xmons[block];
                // image of the variable monomial under d_{n,i}
                HomogeneousPoly img(f, combined_weights(n - 1), 0);
                img.add_term(std::vector<int>(combined_weights(n - 1).size(), 0),
                             Scalar(f, 1));
                bool zero = false;
                for (size_t v = 0; v < mon.size() && !zero; ++v)
                    for (int e = 0; e < mon[v] && !zero; ++e) {
                        HomogeneousPoly fv = face_image(n, i, static_cast<int>(v));
                        if (fv.is_zero())
                            zero = true;
                        else
                            img = img * fv;
                    }
                if (zero)
                    continue;
                for (int r = 0; r < C.dim(cd); ++r) {
                    // multiply in a representative of the coefficient class
                    HomogeneousPoly rep(f, combined_weights(n - 1), cd);
                    HomogeneousPoly ring_rep = C.representative(cd, r);
                    for (const auto& [exps, c2] : ring_rep.terms()) {
                        std::vector<int> full = exps;
                        full.resize(combined_weights(n - 1).size(), 0);
                        rep.add_term(full, c2);
                    }
                    Matrix col = strand_coords(n - 1, c, rep * img);
                    int row0 = src.basis.offsets[block];
                    for (int rr = 0; rr < col.rows(); ++rr)
                        if (!col.entry_is_zero(rr, 0))
                            mat.set(rr, row0 + r, col.at(rr, 0));
                }
            }
            level.push_back(std::move(mat));
        }
        faces.push_back(std::move(level));
    }

    std::vector<std::vector<Matrix>> degens;
    for (int n = 0; n + 1 <= top; ++n) {
        const StrandData& src = strand_data(n, d, c);
        const StrandData& dst = strand_data(n + 1, d, c);
        std::vector<Matrix> level;
        for (int i = 0; i <= n; ++i) {
            Matrix mat = Matrix::zero(f, dims[static_cast<size_t>(n) + 1],
                                      dims[static_cast<size_t>(n)]);
            for (size_t block = 0; block < src.basis.xmons.size(); ++block) {
                int cd = src.basis.coeff_degree[block];
                if (C.dim(cd) == 0)
                    continue;
                const std::vector<int>& mon = src.basis.xmons[block];
                std::vector<int> image(variables(n + 1).size(), 0);
                for (size_t v = 0; v < mon.size(); ++v)
                    if (mon[v] > 0)
                        image[static_cast<size_t>(
                            degeneracy_image(n, i, static_cast<int>(v)))] += mon[v];
                int tblock = dst.block_of.at(image);
                int roff = dst.basis.offsets[static_cast<size_t>(tblock)];
                int coff = src.basis.offsets[block];
                for (int r = 0; r < C.dim(cd); ++r)
                    mat.set(roff + r, coff + r, 1);
            }
            level.push_back(std::move(mat));
        }
        degens.push_back(std::move(level));
    }
    return SimplicialModule(f, dims, faces, degens);
}

const SimplicialModule& SimplicialPolyAlgebra::strand(int d, Coefficients c) const {
    check_degree(d);
    auto key = std::make_pair(d, static_cast<int>(c));
    auto it = strand_cache_.find(key);
    if (it != strand_cache_.end())
        return it->second;
    return strand_cache_.emplace(key, build_strand(d, c, trunc_)).first->second;
}

void SimplicialPolyAlgebra::drop_caches() const {
    vars_cache_.clear();
    face_cache_.clear();
    basis_cache_.clear();
    class_cache_.clear();
    strand_cache_.clear();
}

SimplicialPolyAlgebra build_resolution(const GradedAlgebraPresentation& R,
                                       const GradedAlgebraPresentation& A, int trunc,
                                       int degree_bound) {
    require_same_field(R.field(), A.field(), "build_resolution");
    if (!A.same_ring_as(R))
        throw invariant_error("build_resolution: target is not presented over the base ring");
    if (!A.quotient_of(R, degree_bound))
        throw invariant_error(
            "build_resolution: target is not a quotient of the base in the degree window");
    if (trunc < 1)
        throw invariant_error("build_resolution: need at least one level above the base");
    if (degree_bound < 0)
        throw invariant_error("build_resolution: negative degree bound");

    SimplicialPolyAlgebra X(R, A, trunc, degree_bound);
    using C = SimplicialPolyAlgebra::Coefficients;

    for (int n = 1; n <= trunc; ++n) {
        for (int d = 0; d <= degree_bound; ++d) {
            SimplicialModule partial = X.build_strand(d, C::base, n);
            Normalization norm = normalize_full(partial);
            Subspace bdry = norm.complex.boundaries(n - 1);
            Subspace cyc = [&] {
                if (n > 1)
                    return norm.complex.cycles(n - 1);
                // level 0: everything that must die is the image of the
                // target's defining ideal
                return Subspace::from_columns(
                    R.piece(d).coords(A.ideal_piece(d).basis().transpose()));
            }();
            Subquotient gap(cyc, bdry);
            if (gap.dim() == 0)
                continue;
            for (int g = 0; g < gap.dim(); ++g) {
                Matrix in_strand =
                    (gap.coset_basis().row(g) * norm.levels[static_cast<size_t>(n) - 1].basis())
                        .transpose();
                HomogeneousPoly z = X.strand_rep(n - 1, d, C::base, in_strand);
                X.fresh_[static_cast<size_t>(n)].push_back({d, std::move(z)});
            }
            X.drop_caches();
        }
    }

    for (int d = 0; d <= degree_bound; ++d) {
        const SimplicialModule& S = X.strand(d, C::base);
        int h0 = homotopy_group(S, 0).dim();
        if (h0 != A.dim(d))
            throw invariant_error("resolution contract: pi_0 has dimension " +
                                  std::to_string(h0) + " in internal degree " +
                                  std::to_string(d) + ", expected " +
                                  std::to_string(A.dim(d)));
        for (int i = 1; i < trunc; ++i) {
            int hi = homotopy_group(S, i).dim();
            if (hi != 0)
                throw invariant_error("resolution contract: pi_" + std::to_string(i) +
                                      " is nonzero (dimension " + std::to_string(hi) +
                                      ") in internal degree " + std::to_string(d));
        }
    }
    return X;
}

} // namespace specseq

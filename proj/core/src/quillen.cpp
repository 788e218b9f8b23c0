#include "specseq/quillen.hpp"

#include <algorithm>
#include <memory>
#include <utility>

#include "specseq/multilinear.hpp"

namespace specseq {

namespace {

using Coeff = SimplicialPolyAlgebra::Coefficients;

std::vector<int> weights_of_level(const SimplicialPolyAlgebra& res, int n) {
    std::vector<int> w;
    for (const auto& v : res.variables(n))
        w.push_back(v.weight);
    return w;
}

Matrix unit_rows(const Field& f, const std::vector<int>& idx, int ambient) {
    Matrix m(f, static_cast<int>(idx.size()), ambient);
    for (size_t i = 0; i < idx.size(); ++i)
        m.set(static_cast<int>(i), idx[i], 1);
    return m;
}

void require_residue_field(const SimplicialPolyAlgebra& res, const std::string& who) {
    const GradedAlgebraPresentation& A = res.target();
    bool ok = A.dim(0) == 1;
    for (int d = 1; ok && d <= res.degree_bound(); ++d)
        ok = A.dim(d) == 0;
    if (!ok)
        throw invariant_error(who + ": the target must be the residue field of the base "
                              "(one-dimensional in degree 0, zero above)");
}

/* dim of the second exterior power of the first derived tensor functor,
 * tensored with a rank-m free module, counted within the degree window */
int t1_exterior_square_dim(const SimplicialPolyAlgebra& res, int coeff_rank) {
    GradedDims t1 = tor_oracle(res.base(), res.target(), res.target(), 1, res.degree_bound());
    std::vector<int> w;
    for (const auto& [deg, c] : t1.by_degree)
        for (int j = 0; j < c; ++j)
            w.push_back(deg);
    int count = 0;
    for (size_t i = 0; i < w.size(); ++i)
        for (size_t j = i + 1; j < w.size(); ++j)
            if (w[i] + w[j] <= res.degree_bound())
                ++count;
    return count * coeff_rank;
}

/* Copy of a page keeping only the entries in a band of total degrees;
 * the parent complex, grading frame, and stored differentials carry over. */
} // namespace

SpectralPage restrict_total_degrees(const SpectralPage& page, int n_lo, int n_hi) {
    std::map<std::pair<int, int>, Subquotient> entries;
    std::map<std::pair<int, int>, Matrix> diffs;
    for (const auto& [pq, e] : page.entries()) {
        int n = pq.first + pq.second;
        if (n < n_lo || n > n_hi)
            continue;
        entries.emplace(pq, e);
        diffs.emplace(pq, page.d(pq.first, pq.second));
    }
    return SpectralPage(page.parent_ptr(), page.r(), page.frame(), std::move(entries),
                        std::move(diffs));
}

AugmentationTower::AugmentationTower(SimplicialPolyAlgebra res, int power_bound)
    : res_(std::move(res)), power_bound_(power_bound) {
    if (power_bound_ < 0)
        throw invariant_error("augmentation tower: power bound must be non-negative");
    verify();
}

const Field& AugmentationTower::field() const { return res_.base().field(); }

std::vector<int> AugmentationTower::power_support(int s, int n, int d) const {
    SimplicialPolyAlgebra::StrandBasis sb = res_.strand_basis(n, d, Coeff::target);
    std::vector<int> idx;
    for (int j = 0; j < sb.dim; ++j)
        if (sb.xdegree[static_cast<size_t>(j)] >= s)
            idx.push_back(j);
    return idx;
}

Subspace AugmentationTower::power_piece(int s, int n, int d) const {
    SimplicialPolyAlgebra::StrandBasis sb = res_.strand_basis(n, d, Coeff::target);
    std::vector<int> idx;
    for (int j = 0; j < sb.dim; ++j)
        if (sb.xdegree[static_cast<size_t>(j)] >= s)
            idx.push_back(j);
    return Subspace::span(unit_rows(field(), idx, sb.dim));
}

SimplicialModule AugmentationTower::power_module(int s, int d) const {
    const SimplicialModule& S = res_.strand(d, Coeff::target);
    int T = trunc();
    std::vector<std::vector<int>> supp;
    std::vector<int> dims;
    for (int n = 0; n <= T; ++n) {
        supp.push_back(power_support(s, n, d));
        dims.push_back(static_cast<int>(supp.back().size()));
    }
    std::vector<std::vector<Matrix>> faces, degs;
    for (int n = 1; n <= T; ++n) {
        std::vector<Matrix> row;
        for (int i = 0; i <= n; ++i)
            row.push_back(S.face(n, i).select_rows(supp[n - 1]).select_cols(supp[n]));
        faces.push_back(std::move(row));
    }
    for (int n = 0; n < T; ++n) {
        std::vector<Matrix> row;
        for (int i = 0; i <= n; ++i)
            row.push_back(S.degeneracy(n, i).select_rows(supp[n + 1]).select_cols(supp[n]));
        degs.push_back(std::move(row));
    }
    return SimplicialModule(field(), std::move(dims), std::move(faces), std::move(degs));
}

std::vector<int> AugmentationTower::layer_dims(int s, int d) const {
    std::vector<int> out;
    for (int n = 0; n <= trunc(); ++n) {
        SimplicialPolyAlgebra::StrandBasis sb = res_.strand_basis(n, d, Coeff::target);
        int c = 0;
        for (int j = 0; j < sb.dim; ++j)
            if (sb.xdegree[static_cast<size_t>(j)] == s)
                ++c;
        out.push_back(c);
    }
    return out;
}

std::vector<int> AugmentationTower::layer_dims_sym(int s, int d) const {
    std::vector<int> out;
    for (int n = 0; n <= trunc(); ++n) {
        std::vector<int> w = weights_of_level(res_, n);
        int c = 0;
        for (const std::vector<int>& mset : multisets(static_cast<int>(w.size()), s)) {
            int wt = 0;
            for (int i : mset)
                wt += w[static_cast<size_t>(i)];
            if (wt <= d)
                c += res_.target().dim(d - wt);
        }
        out.push_back(c);
    }
    return out;
}

void AugmentationTower::verify() const {
    int T = trunc(), D = degree_bound();
    for (int d = 0; d <= D; ++d) {
        const SimplicialModule& S = res_.strand(d, Coeff::target);

        std::vector<std::vector<int>> xdeg;
        for (int n = 0; n <= T; ++n) {
            SimplicialPolyAlgebra::StrandBasis sb = res_.strand_basis(n, d, Coeff::target);
            xdeg.push_back(sb.xdegree);
            // the variable-free block is a copy of the target, so K^1 is
            // exactly the kernel of the evaluation onto it
            int plain = 0;
            for (int x : xdeg.back())
                if (x == 0)
                    ++plain;
            if (plain != res_.target().dim(d))
                throw invariant_error("augmentation tower: evaluation complement at level " +
                                      std::to_string(n) + " degree " + std::to_string(d) +
                                      " has dimension " + std::to_string(plain) + ", expected " +
                                      std::to_string(res_.target().dim(d)));
        }

        // faces and degeneracies never lower the variable exponent, which
        // makes every power a simplicial submodule at once
        for (int n = 1; n <= T; ++n)
            for (int i = 0; i <= n; ++i) {
                const Matrix& fm = S.face(n, i);
                for (int c = 0; c < fm.cols(); ++c)
                    for (int r = 0; r < fm.rows(); ++r)
                        if (xdeg[n - 1][static_cast<size_t>(r)] <
                                xdeg[n][static_cast<size_t>(c)] &&
                            !fm.entry_is_zero(r, c))
                            throw invariant_error(
                                "augmentation tower: face " + std::to_string(i) + " out of level " +
                                std::to_string(n) + " lowers the variable exponent in degree " +
                                std::to_string(d));
            }
        for (int n = 0; n < T; ++n)
            for (int i = 0; i <= n; ++i) {
                const Matrix& sm = S.degeneracy(n, i);
                for (int c = 0; c < sm.cols(); ++c)
                    for (int r = 0; r < sm.rows(); ++r)
                        if (xdeg[n + 1][static_cast<size_t>(r)] <
                                xdeg[n][static_cast<size_t>(c)] &&
                            !sm.entry_is_zero(r, c))
                            throw invariant_error("augmentation tower: degeneracy " +
                                                  std::to_string(i) + " out of level " +
                                                  std::to_string(n) +
                                                  " lowers the variable exponent in degree " +
                                                  std::to_string(d));
            }

        // layer dimensions against the symmetric-power count
        for (int s = 1; s <= power_bound_; ++s) {
            std::vector<int> got = layer_dims(s, d);
            std::vector<int> want = layer_dims_sym(s, d);
            for (int n = 0; n <= T; ++n)
                if (got[static_cast<size_t>(n)] != want[static_cast<size_t>(n)])
                    throw invariant_error(
                        "augmentation tower: layer " + std::to_string(s) + " at level " +
                        std::to_string(n) + " degree " + std::to_string(d) + " has dimension " +
                        std::to_string(got[static_cast<size_t>(n)]) +
                        " but the symmetric power has " +
                        std::to_string(want[static_cast<size_t>(n)]));
        }
    }
}

ConnectivityReport connectivity_check(const AugmentationTower& tower, int s) {
    if (s < 0)
        throw invariant_error("connectivity check: power must be non-negative");
    ConnectivityReport rep;
    rep.power = s;
    rep.k_checked = std::min(s - 1, tower.trunc() - 1);
    rep.complete = rep.k_checked == s - 1;
    if (rep.k_checked < 0)
        return rep;
    for (int d = 0; d <= tower.degree_bound(); ++d) {
        ChainComplex C = normalize(tower.power_module(s, d));
        for (int k = 0; k <= rep.k_checked; ++k) {
            int h = C.betti(k);
            if (h != 0)
                rep.offenders.push_back({k, d, h});
        }
    }
    return rep;
}

CotangentData::CotangentData(const AugmentationTower& tower) : trunc_(tower.trunc()) {
    const SimplicialPolyAlgebra& res = tower.resolution();
    require_residue_field(res, "cotangent data");
    const Field& f = tower.field();
    int T = trunc_, D = tower.degree_bound();
    int nring = static_cast<int>(res.base().vars().size());

    for (int n = 0; n <= T; ++n)
        level_weights_.push_back(weights_of_level(res, n));

    // w = 0 builds the whole module; w >= 1 the weight-w summand
    auto build = [&](int w) -> SimplicialModule {
        std::vector<std::vector<int>> pick(static_cast<size_t>(T) + 1);
        std::vector<std::map<int, int>> local(static_cast<size_t>(T) + 1);
        std::vector<int> dims;
        for (int n = 0; n <= T; ++n) {
            const std::vector<int>& wt = level_weights_[static_cast<size_t>(n)];
            for (int v = 0; v < static_cast<int>(wt.size()); ++v)
                if (w == 0 || wt[static_cast<size_t>(v)] == w) {
                    local[static_cast<size_t>(n)][v] =
                        static_cast<int>(pick[static_cast<size_t>(n)].size());
                    pick[static_cast<size_t>(n)].push_back(v);
                }
            dims.push_back(static_cast<int>(pick[static_cast<size_t>(n)].size()));
        }
        std::vector<std::vector<Matrix>> faces, degs;
        for (int n = 1; n <= T; ++n) {
            std::vector<Matrix> row;
            for (int i = 0; i <= n; ++i) {
                Matrix m(f, dims[static_cast<size_t>(n) - 1], dims[static_cast<size_t>(n)]);
                for (int c = 0; c < dims[static_cast<size_t>(n)]; ++c) {
                    int v = pick[static_cast<size_t>(n)][static_cast<size_t>(c)];
                    HomogeneousPoly img = res.face_image(n, i, v);
                    for (const auto& [exps, coef] : img.terms()) {
                        // keep the terms that are a bare variable: the ring
                        // part evaluates to a unit only when it is absent
                        int ring = 0, varsum = 0, where = -1;
                        for (int j = 0; j < nring; ++j)
                            ring += exps[static_cast<size_t>(j)];
                        for (int j = nring; j < static_cast<int>(exps.size()); ++j)
                            if (exps[static_cast<size_t>(j)] != 0) {
                                varsum += exps[static_cast<size_t>(j)];
                                where = j - nring;
                            }
                        if (ring != 0 || varsum != 1)
                            continue;
                        auto it = local[static_cast<size_t>(n) - 1].find(where);
                        if (it == local[static_cast<size_t>(n) - 1].end())
                            throw invariant_error("cotangent data: face image mixes weights");
                        m.set(it->second, c, coef);
                    }
                }
                row.push_back(std::move(m));
            }
            faces.push_back(std::move(row));
        }
        for (int n = 0; n < T; ++n) {
            std::vector<Matrix> row;
            for (int i = 0; i <= n; ++i) {
                Matrix m(f, dims[static_cast<size_t>(n) + 1], dims[static_cast<size_t>(n)]);
                for (int c = 0; c < dims[static_cast<size_t>(n)]; ++c) {
                    int v = pick[static_cast<size_t>(n)][static_cast<size_t>(c)];
                    int u = res.degeneracy_image(n, i, v);
                    m.set(local[static_cast<size_t>(n) + 1].at(u), c, 1);
                }
                row.push_back(std::move(m));
            }
            degs.push_back(std::move(row));
        }
        SimplicialModule M(f, std::move(dims), std::move(faces), std::move(degs));
        std::vector<std::string> bad = M.violations();
        if (!bad.empty())
            throw invariant_error("cotangent data: " + bad.front());
        return M;
    };

    for (int w = 1; w <= D; ++w)
        pieces_.push_back(build(w));
    full_store_.push_back(build(0));

    // each piece must match the first layer of the tower level by level
    for (int w = 1; w <= D; ++w) {
        std::vector<int> layer = tower.layer_dims(1, w);
        for (int n = 0; n <= T; ++n)
            if (pieces_[static_cast<size_t>(w) - 1].dim(n) != layer[static_cast<size_t>(n)])
                throw invariant_error("cotangent data: weight " + std::to_string(w) +
                                      " piece at level " + std::to_string(n) +
                                      " does not match the first ideal layer");
    }
}

const Field& CotangentData::field() const { return full().field(); }

const SimplicialModule& CotangentData::piece(int w) const {
    if (w < 1 || w > weight_bound())
        throw invariant_error("cotangent data: no weight-" + std::to_string(w) + " piece");
    return pieces_[static_cast<size_t>(w) - 1];
}

const std::vector<int>& CotangentData::level_weights(int n) const {
    if (n < 0 || n > trunc_)
        throw invariant_error("cotangent data: level " + std::to_string(n) + " out of range");
    return level_weights_[static_cast<size_t>(n)];
}

GradedDims aq_homology(const CotangentData& cot, int i, int coeff_rank) {
    if (coeff_rank < 1)
        throw invariant_error("cotangent homology: coefficient rank must be positive");
    if (i >= cot.trunc())
        throw window_error("cotangent homology: degree " + std::to_string(i) +
                           " is not certified at truncation level " + std::to_string(cot.trunc()));
    GradedDims out;
    if (i < 0)
        return out;
    for (int w = 1; w <= cot.weight_bound(); ++w) {
        int h = homotopy_group(cot.piece(w), i).dim() * coeff_rank;
        if (h != 0)
            out.by_degree[w] = h;
    }
    return out;
}

GradedDims aq_cohomology(const CotangentData& cot, int i, int coeff_rank) {
    if (coeff_rank < 1)
        throw invariant_error("cotangent cohomology: coefficient rank must be positive");
    if (i >= cot.trunc())
        throw window_error("cotangent cohomology: degree " + std::to_string(i) +
                           " is not certified at truncation level " + std::to_string(cot.trunc()));
    GradedDims out;
    if (i < 0)
        return out;
    for (int w = 1; w <= cot.weight_bound(); ++w) {
        int h = normalize(cot.piece(w)).hom_into(coeff_rank).betti(-i);
        if (h != 0)
            out.by_degree[-w] = h;
    }
    return out;
}

int FundamentalSS::dim(int p, int q) const {
    auto it = entry_dims.find({p, q});
    return it == entry_dims.end() ? 0 : it->second;
}

namespace {

FundamentalSS build_fundamental_ss(const AugmentationTower& tower, int m, bool homological) {
    if (m < 1)
        throw invariant_error("fundamental spectral sequence: coefficient rank must be positive");
    const SimplicialPolyAlgebra& res = tower.resolution();
    require_residue_field(res, "fundamental spectral sequence");
    const Field& f = tower.field();
    int T = tower.trunc(), D = tower.degree_bound();

    FundamentalSS out;
    out.homological = homological;
    out.coeff_rank = m;
    out.level_window = T - 1;
    out.degree_bound = D;
    out.quadrant_ok = true;
    out.converged = true;
    out.abutment_ok = true;

    std::vector<GradedDims> oracle =
        homological ? tor_table(res.base(), res.target(), res.target(), T - 1, D)
                    : ext_table(res.base(), res.target(), res.target(), T - 1, D);

    std::vector<int> hom_dim(static_cast<size_t>(T), 0), orc_dim(static_cast<size_t>(T), 0);
    std::vector<bool> row_ok(static_cast<size_t>(T), true);
    Matrix im = Matrix::identity(f, m);

    for (int d = 0; d <= D; ++d) {
        Normalization norm = normalize_full(res.strand(d, Coeff::target));
        const ChainComplex& N = norm.complex;

        // spans of the images of the ideal powers inside the normalized
        // levels, in normalized coordinates; power d+1 is already zero, so
        // the filtration saturates exactly
        std::vector<std::vector<Matrix>> pow_basis(static_cast<size_t>(d) + 2);
        for (int n = 0; n <= T; ++n) {
            SimplicialPolyAlgebra::StrandBasis sb = res.strand_basis(n, d, Coeff::target);
            Matrix B = norm.levels[static_cast<size_t>(n)].basis();
            for (int s = 0; s <= d + 1; ++s) {
                std::vector<int> low;
                for (int j = 0; j < sb.dim; ++j)
                    if (sb.xdegree[static_cast<size_t>(j)] < s)
                        low.push_back(j);
                pow_basis[static_cast<size_t>(s)].push_back(
                    B.select_cols(low).transpose().kernel());
            }
        }

        // the total complex, with coefficients inflated to rank m
        std::vector<int> dims;
        std::vector<Matrix> diffs;
        for (int n = 0; n <= T; ++n) {
            dims.push_back(N.dim(n) * m);
            diffs.push_back(m > 1 ? N.diff(n).kronecker(im) : N.diff(n));
        }
        ChainComplex X(f, 0, std::move(dims), std::move(diffs));

        std::shared_ptr<const FilteredComplex> F;
        if (homological) {
            std::vector<std::vector<Subspace>> layers;
            for (int p = -(d + 1); p <= 0; ++p) {
                std::vector<Subspace> row;
                for (int n = 0; n <= T; ++n) {
                    Matrix b = pow_basis[static_cast<size_t>(-p)][static_cast<size_t>(n)];
                    row.push_back(Subspace::span(m > 1 ? b.kronecker(im) : b));
                }
                layers.push_back(std::move(row));
            }
            F = std::make_shared<const FilteredComplex>(std::move(X), -(d + 1), std::move(layers));
        } else {
            ChainComplex C = N.hom_into(m);
            std::vector<std::vector<Subspace>> layers;
            for (int p = 0; p <= d + 1; ++p) {
                std::vector<Subspace> row;
                for (int n = -T; n <= 0; ++n) {
                    // functionals killing the image of the p-th power
                    Matrix ann = pow_basis[static_cast<size_t>(p)][static_cast<size_t>(-n)]
                                     .kernel();
                    row.push_back(Subspace::span(m > 1 ? im.kronecker(ann) : ann));
                }
                layers.push_back(std::move(row));
            }
            F = std::make_shared<const FilteredComplex>(std::move(C), 0, std::move(layers));
        }

        // the truncation level certifies total degrees |n| <= T-1 only;
        // everything at the edge is dropped before any verdict is formed
        SpectralPage p1 = make_page(F, 1);
        SpectralPage p1w = homological ? restrict_total_degrees(p1, 0, T - 1)
                                       : restrict_total_degrees(p1, -(T - 1), 0);
        SpectralPage E2 =
            homological ? reindex_E1_to_E2(p1w) : reindex_E1_to_E2_cohomological(p1w);

        for (const auto& [pq, e] : E2.entries()) {
            if (e.dim() == 0)
                continue;
            auto [p, q] = pq;
            if (homological ? (p < 0 || q < 0) : (p > 0 || q > 0))
                out.quadrant_ok = false;
            out.entry_dims[pq] += e.dim();
        }

        out.converged = out.converged && check_convergence(*F).ok;

        std::map<int, Subquotient> homology;
        for (int k = 0; k < T; ++k) {
            int n = homological ? k : -k;
            Subquotient h = F->total().homology(n);
            int want = homological ? oracle[static_cast<size_t>(k)].at(d) * m
                                   : oracle[static_cast<size_t>(k)].at(-d) * m;
            hom_dim[static_cast<size_t>(k)] += h.dim();
            orc_dim[static_cast<size_t>(k)] += want;
            if (h.dim() != want)
                row_ok[static_cast<size_t>(k)] = false;
            homology.emplace(n, std::move(h));
        }

        out.strands.push_back(StrandPage{d, std::move(E2), std::move(homology)});
    }

    for (int k = homological ? 0 : T - 1; homological ? k < T : k >= 0; homological ? ++k : --k) {
        FundamentalSS::AbutmentRow row;
        row.n = homological ? k : -k;
        row.homology_dim = hom_dim[static_cast<size_t>(k)];
        row.oracle_dim = orc_dim[static_cast<size_t>(k)];
        row.ok = row_ok[static_cast<size_t>(k)];
        out.abutment_ok = out.abutment_ok && row.ok;
        out.abutment.push_back(row);
    }
    return out;
}

} // namespace

FundamentalSS fundamental_ss_homology(const AugmentationTower& tower, int coeff_rank) {
    return build_fundamental_ss(tower, coeff_rank, true);
}

FundamentalSS fundamental_ss_cohomology(const AugmentationTower& tower, int coeff_rank) {
    return build_fundamental_ss(tower, coeff_rank, false);
}

FiveTermPair five_term_54(const AugmentationTower& tower, int coeff_rank) {
    if (tower.trunc() < 4)
        throw window_error("five-term comparison: total degrees through 3 are needed, so the "
                           "truncation level must be at least 4");
    const SimplicialPolyAlgebra& res = tower.resolution();
    int m = coeff_rank, D = tower.degree_bound();

    FundamentalSS hss = fundamental_ss_homology(tower, m);
    FundamentalSS css = fundamental_ss_cohomology(tower, m);
    CotangentData cot(tower);

    std::vector<GradedDims> tor = tor_table(res.base(), res.target(), res.target(), 3, D);
    std::vector<GradedDims> ext = ext_table(res.base(), res.target(), res.target(), 3, D);
    int wedge = t1_exterior_square_dim(res, m);

    FiveTermPair pair{FiveTermVerdict{}, FiveTermVerdict{}};

    FiveTermVerdict& H = pair.homological;
    H.homological = true;
    H.labels = {"derived tensor 3", "cotangent homotopy 3", "exterior square of T1",
                "derived tensor 2", "cotangent homotopy 2"};
    H.reference_dims = {tor[3].total() * m, aq_homology(cot, 3, m).total(), wedge,
                        tor[2].total() * m, aq_homology(cot, 2, m).total()};
    H.engine_dims = {0, 0, 0, 0, 0};
    H.exact = true;
    H.abutment_ok = true;
    for (const StrandPage& sp : hss.strands) {
        FiveTermReport rep = five_term_homological(sp.page, sp.homology, 2);
        for (int k = 0; k < 5; ++k)
            H.engine_dims[static_cast<size_t>(k)] += rep.dims[static_cast<size_t>(k)];
        H.exact = H.exact && rep.exact[0] && rep.exact[1] && rep.exact[2] && rep.exact[3];
        H.abutment_ok = H.abutment_ok && rep.abutment_consistent;
        H.strand_reports.push_back(std::move(rep));
    }
    H.dims_ok = H.engine_dims == H.reference_dims;

    FiveTermVerdict& C = pair.cohomological;
    C.homological = false;
    C.labels = {"cotangent cohomology 2", "derived Hom 2", "dual exterior square of T1",
                "cotangent cohomology 3", "derived Hom 3"};
    C.reference_dims = {aq_cohomology(cot, 2, m).total(), ext[2].total() * m, wedge,
                        aq_cohomology(cot, 3, m).total(), ext[3].total() * m};
    C.engine_dims = {0, 0, 0, 0, 0};
    C.exact = true;
    C.abutment_ok = true;
    for (const StrandPage& sp : css.strands) {
        FiveTermReport rep = five_term_cohomological(sp.page, sp.homology, 2);
        for (int k = 0; k < 5; ++k)
            C.engine_dims[static_cast<size_t>(k)] += rep.dims[static_cast<size_t>(k)];
        C.exact = C.exact && rep.exact[0] && rep.exact[1] && rep.exact[2] && rep.exact[3];
        C.abutment_ok = C.abutment_ok && rep.abutment_consistent;
        C.strand_reports.push_back(std::move(rep));
    }
    C.dims_ok = C.engine_dims == C.reference_dims;

    return pair;
}

E2Identifications e2_term_identifications(const AugmentationTower& tower,
                                          const FundamentalSS& homological,
                                          const FundamentalSS& cohomological,
                                          const CotangentData& cot, int coeff_rank) {
    if (homological.coeff_rank != coeff_rank || cohomological.coeff_rank != coeff_rank)
        throw invariant_error("second-page identifications: coefficient ranks disagree");
    int wedge = t1_exterior_square_dim(tower.resolution(), coeff_rank);
    int aq2 = aq_homology(cot, 2, coeff_rank).total();
    int aq3 = aq_homology(cot, 3, coeff_rank).total();
    int aq2c = aq_cohomology(cot, 2, coeff_rank).total();
    int aq3c = aq_cohomology(cot, 3, coeff_rank).total();

    E2Identifications out;
    auto add = [&](const std::string& label, const FundamentalSS& ss, int p, int q, int ref) {
        out.rows.push_back({label, p, q, ss.dim(p, q), ref, ss.dim(p, q) == ref});
    };
    add("(1,1) vs cotangent homotopy 2", homological, 1, 1, aq2);
    add("(2,1) vs cotangent homotopy 3", homological, 2, 1, aq3);
    add("(0,2) vs exterior square of T1", homological, 0, 2, wedge);
    add("(-1,-1) vs cotangent cohomology 2", cohomological, -1, -1, aq2c);
    add("(-2,-1) vs cotangent cohomology 3", cohomological, -2, -1, aq3c);
    add("(0,-2) vs dual exterior square of T1", cohomological, 0, -2, wedge);
    out.ok = true;
    for (const auto& r : out.rows)
        out.ok = out.ok && r.ok;
    return out;
}

SymSquareConeReport sym_square_cone_check(const ChainComplex& P, int trunc) {
    if (trunc < 1)
        throw invariant_error("symmetric square cone check: truncation level must be positive");
    for (int n = P.lo(); n <= P.hi(); ++n)
        if (n < 1 && P.dim(n) != 0)
            throw invariant_error("symmetric square cone check: the input must vanish in "
                                  "degrees below 1");

    ChainComplex desus = P.shift(-1);
    ChainComplex cn = cone(ChainMap::identity(desus));
    SimplicialModule V = dold_kan(cn, trunc);

    std::vector<int> dims;
    for (int n = 0; n <= trunc; ++n)
        dims.push_back(V.dim(n) * (V.dim(n) + 1) / 2);
    std::vector<std::vector<Matrix>> faces, degs;
    for (int n = 1; n <= trunc; ++n) {
        std::vector<Matrix> row;
        for (int i = 0; i <= n; ++i)
            row.push_back(sym_power_map(V.face(n, i), 2));
        faces.push_back(std::move(row));
    }
    for (int n = 0; n < trunc; ++n) {
        std::vector<Matrix> row;
        for (int i = 0; i <= n; ++i)
            row.push_back(sym_power_map(V.degeneracy(n, i), 2));
        degs.push_back(std::move(row));
    }
    SimplicialModule S2(P.field(), std::move(dims), std::move(faces), std::move(degs));
    std::vector<std::string> bad = S2.violations();
    if (!bad.empty())
        throw invariant_error("symmetric square cone check: " + bad.front());

    SymSquareConeReport rep;
    rep.exact = true;
    for (int k = 0; k < trunc; ++k) {
        int h = homotopy_group(S2, k).dim();
        rep.homotopy_dims.push_back(h);
        rep.exact = rep.exact && h == 0;
    }
    return rep;
}

} // namespace specseq

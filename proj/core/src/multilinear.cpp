#include "specseq/multilinear.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace specseq {

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::ostringstream out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out << sep;
        out << parts[i];
    }
    return out.str();
}

void tuples_rec(int n, int q, int lowest, bool strict, std::vector<int>& cur,
                std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == q) {
        out.push_back(cur);
        return;
    }
    for (int i = lowest; i < n; ++i) {
        cur.push_back(i);
        tuples_rec(n, q, strict ? i + 1 : i, strict, cur, out);
        cur.pop_back();
    }
}

std::map<std::vector<int>, int> index_of(const std::vector<std::vector<int>>& basis) {
    std::map<std::vector<int>, int> m;
    for (size_t i = 0; i < basis.size(); ++i)
        m.emplace(basis[i], static_cast<int>(i));
    return m;
}

Matrix column_block(const Matrix& m, int from, int count) {
    std::vector<int> which;
    for (int j = 0; j < count; ++j)
        which.push_back(from + j);
    return m.select_cols(which);
}

} // namespace

GradedFreeModule::GradedFreeModule(Field f, std::vector<std::string> labels,
                                   std::vector<int> weights)
    : fld_(f), labels_(std::move(labels)), weights_(std::move(weights)) {
    if (labels_.size() != weights_.size())
        throw invariant_error("graded module: label and weight counts differ");
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size())
        throw invariant_error("graded module: basis labels are not distinct");
    for (int w : weights_)
        if (w < 0)
            throw invariant_error("graded module: negative weight");
}

GradedFreeModule GradedFreeModule::standard(Field f, int rank, int weight) {
    std::vector<std::string> labels;
    std::vector<int> weights;
    for (int i = 1; i <= rank; ++i) {
        labels.push_back("e" + std::to_string(i));
        weights.push_back(weight);
    }
    return GradedFreeModule(f, std::move(labels), std::move(weights));
}

int GradedFreeModule::rank_of_weight(int w) const {
    int n = 0;
    for (int x : weights_)
        if (x == w)
            ++n;
    return n;
}

std::vector<std::vector<int>> multisets(int n, int q) {
    std::vector<std::vector<int>> out;
    if (q < 0)
        return out;
    std::vector<int> cur;
    tuples_rec(n, q, 0, false, cur, out);
    return out;
}

std::vector<std::vector<int>> subsets(int n, int q) {
    std::vector<std::vector<int>> out;
    if (q < 0)
        return out;
    std::vector<int> cur;
    tuples_rec(n, q, 0, true, cur, out);
    return out;
}

GradedFreeModule sym_power(const GradedFreeModule& L, int q) {
    if (q < 0)
        return GradedFreeModule(L.field(), {}, {});
    if (q == 0)
        return GradedFreeModule(L.field(), {"1"}, {0});
    std::vector<std::string> labels;
    std::vector<int> weights;
    for (const auto& t : multisets(L.rank(), q)) {
        std::vector<std::string> parts;
        int w = 0;
        for (int i : t) {
            parts.push_back(L.label(i));
            w += L.weight(i);
        }
        labels.push_back(join(parts, "*"));
        weights.push_back(w);
    }
    return GradedFreeModule(L.field(), std::move(labels), std::move(weights));
}

GradedFreeModule ext_power(const GradedFreeModule& L, int q) {
    if (q < 0)
        return GradedFreeModule(L.field(), {}, {});
    if (q == 0)
        return GradedFreeModule(L.field(), {"1"}, {0});
    std::vector<std::string> labels;
    std::vector<int> weights;
    for (const auto& t : subsets(L.rank(), q)) {
        std::vector<std::string> parts;
        int w = 0;
        for (int i : t) {
            parts.push_back(L.label(i));
            w += L.weight(i);
        }
        labels.push_back(join(parts, "^"));
        weights.push_back(w);
    }
    return GradedFreeModule(L.field(), std::move(labels), std::move(weights));
}

Matrix sym_power_map(const Matrix& f, int q) {
    Field fld = f.field();
    if (q < 0)
        return Matrix(fld, 0, 0);
    if (q == 0)
        return Matrix::identity(fld, 1);
    auto dom = multisets(f.cols(), q);
    auto cod = multisets(f.rows(), q);
    auto cod_idx = index_of(cod);
    Matrix out(fld, static_cast<int>(cod.size()), static_cast<int>(dom.size()));
    for (size_t j = 0; j < dom.size(); ++j) {
        // expand the product of the images of the chosen factors
        std::map<std::vector<int>, Scalar> poly;
        poly.emplace(std::vector<int>{}, Scalar::one(fld));
        for (int t : dom[j]) {
            std::map<std::vector<int>, Scalar> next;
            for (const auto& [ms, c] : poly)
                for (int i = 0; i < f.rows(); ++i) {
                    Scalar fv = f.at(i, t);
                    if (fv.is_zero())
                        continue;
                    std::vector<int> key = ms;
                    key.insert(std::upper_bound(key.begin(), key.end(), i), i);
                    Scalar add = c * fv;
                    auto [it, fresh] = next.try_emplace(key, add);
                    if (!fresh)
                        it->second = it->second + add;
                }
            poly = std::move(next);
        }
        for (const auto& [ms, c] : poly)
            out.set(cod_idx.at(ms), static_cast<int>(j), c);
    }
    return out;
}

Matrix ext_power_map(const Matrix& f, int q) {
    Field fld = f.field();
    if (q < 0)
        return Matrix(fld, 0, 0);
    if (q == 0)
        return Matrix::identity(fld, 1);
    auto dom = subsets(f.cols(), q);
    auto cod = subsets(f.rows(), q);
    Matrix out(fld, static_cast<int>(cod.size()), static_cast<int>(dom.size()));
    for (size_t i = 0; i < cod.size(); ++i)
        for (size_t j = 0; j < dom.size(); ++j)
            out.set(static_cast<int>(i), static_cast<int>(j),
                    f.select_rows(cod[i]).select_cols(dom[j]).det());
    return out;
}

namespace {

void monomials_rec(const std::vector<int>& weights, size_t v, int left, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
    if (v == weights.size()) {
        if (left == 0)
            out.push_back(cur);
        return;
    }
    for (int e = 0; e * weights[v] <= left; ++e) {
        cur.push_back(e);
        monomials_rec(weights, v + 1, left - e * weights[v], cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<std::vector<int>> weighted_monomials(const std::vector<int>& weights, int d) {
    for (int w : weights)
        if (w <= 0)
            throw invariant_error("weighted monomials: weights must be positive");
    std::vector<std::vector<int>> out;
    if (d < 0)
        return out;
    std::vector<int> cur;
    monomials_rec(weights, 0, d, cur, out);
    return out;
}

HomogeneousPoly::HomogeneousPoly(Field f, std::vector<int> weights, int degree)
    : fld_(f), weights_(std::move(weights)), degree_(degree) {}

HomogeneousPoly HomogeneousPoly::variable(Field f, const std::vector<int>& weights, int i) {
    HomogeneousPoly p(f, weights, weights.at(static_cast<size_t>(i)));
    std::vector<int> e(weights.size(), 0);
    e[static_cast<size_t>(i)] = 1;
    p.add_term(e, Scalar::one(f));
    return p;
}

void HomogeneousPoly::add_term(const std::vector<int>& exponents, const Scalar& c) {
    if (exponents.size() != weights_.size())
        throw invariant_error("polynomial term: exponent length mismatch");
    int w = 0;
    for (size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] < 0)
            throw invariant_error("polynomial term: negative exponent");
        w += exponents[i] * weights_[i];
    }
    if (w != degree_)
        throw invariant_error("polynomial term: weight " + std::to_string(w) +
                              " does not match degree " + std::to_string(degree_));
    auto [it, fresh] = terms_.try_emplace(exponents, Scalar(fld_, c.value()));
    if (!fresh)
        it->second = it->second + c;
    if (it->second.is_zero())
        terms_.erase(it);
}

HomogeneousPoly HomogeneousPoly::operator*(const HomogeneousPoly& o) const {
    require_same_field(fld_, o.fld_, "polynomial product");
    if (weights_ != o.weights_)
        throw invariant_error("polynomial product: different rings");
    HomogeneousPoly out(fld_, weights_, degree_ + o.degree_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            std::vector<int> e = e1;
            for (size_t i = 0; i < e.size(); ++i)
                e[i] += e2[i];
            out.add_term(e, c1 * c2);
        }
    return out;
}

HomogeneousPoly HomogeneousPoly::operator+(const HomogeneousPoly& o) const {
    require_same_field(fld_, o.fld_, "polynomial sum");
    if (weights_ != o.weights_ || degree_ != o.degree_)
        throw invariant_error("polynomial sum: mixed degrees or rings");
    HomogeneousPoly out = *this;
    for (const auto& [e, c] : o.terms_)
        out.add_term(e, c);
    return out;
}

Matrix HomogeneousPoly::coordinates() const {
    auto basis = weighted_monomials(weights_, degree_);
    auto idx = index_of(basis);
    Matrix out(fld_, static_cast<int>(basis.size()), 1);
    for (const auto& [e, c] : terms_)
        out.set(idx.at(e), 0, c);
    return out;
}

Matrix multiplication_matrix(const HomogeneousPoly& f, int d) {
    auto dom = weighted_monomials(f.weights(), d);
    auto cod = weighted_monomials(f.weights(), d + f.degree());
    auto cod_idx = index_of(cod);
    Matrix out(f.field(), static_cast<int>(cod.size()), static_cast<int>(dom.size()));
    for (size_t j = 0; j < dom.size(); ++j)
        for (const auto& [u, c] : f.terms()) {
            std::vector<int> e = dom[j];
            for (size_t i = 0; i < e.size(); ++i)
                e[i] += u[i];
            out.set(cod_idx.at(e), static_cast<int>(j), c);
        }
    return out;
}

namespace {

HomogeneousPoly product_of(const std::vector<HomogeneousPoly>& gens, const std::vector<int>& mu) {
    Field f = gens.front().field();
    HomogeneousPoly p(f, gens.front().weights(), 0);
    p.add_term(std::vector<int>(gens.front().weights().size(), 0), Scalar::one(f));
    for (int t : mu)
        p = p * gens[static_cast<size_t>(t)];
    return p;
}

} // namespace

Subspace power_ideal_piece(Field f, const std::vector<int>& weights,
                           const std::vector<HomogeneousPoly>& gens, int s, int d) {
    int ambient = static_cast<int>(weighted_monomials(weights, d).size());
    if (s == 0)
        return Subspace::full(f, ambient);
    Subspace out(f, ambient);
    for (const auto& mu : multisets(static_cast<int>(gens.size()), s)) {
        HomogeneousPoly p = product_of(gens, mu);
        int e = d - p.degree();
        if (p.is_zero() || e < 0)
            continue;
        int src = static_cast<int>(weighted_monomials(weights, e).size());
        out = out.sum(Subspace::full(f, src).image_under(multiplication_matrix(p, e)));
    }
    return out;
}

PowerQuotientIso regseq_power_iso(Field f, const std::vector<int>& weights,
                                  const std::vector<HomogeneousPoly>& gens, int s,
                                  int degree_bound) {
    if (gens.empty())
        throw invariant_error("power quotient: no generators");
    for (const auto& g : gens) {
        require_same_field(f, g.field(), "power quotient");
        if (g.weights() != weights)
            throw invariant_error("power quotient: generator from a different ring");
        if (g.is_zero())
            throw invariant_error("power quotient: zero generator");
    }
    if (s < 1)
        throw invariant_error("power quotient: power must be at least 1");

    // Hilbert-series regular-sequence count: the quotient by a homogeneous
    // regular sequence has series prod(1-t^deg) / prod(1-t^weight).
    std::vector<long long> series(static_cast<size_t>(degree_bound) + 1, 0);
    series[0] = 1;
    for (const auto& g : gens)
        for (int d = degree_bound; d >= g.degree(); --d)
            series[static_cast<size_t>(d)] -= series[static_cast<size_t>(d - g.degree())];
    for (int w : weights)
        for (int d = w; d <= degree_bound; ++d)
            series[static_cast<size_t>(d)] += series[static_cast<size_t>(d - w)];
    for (int d = 0; d <= degree_bound; ++d) {
        long long actual = static_cast<long long>(weighted_monomials(weights, d).size()) -
                           power_ideal_piece(f, weights, gens, 1, d).dim();
        if (actual != series[static_cast<size_t>(d)])
            throw invariant_error(
                "power quotient: generators fail the regular-sequence dimension count at "
                "internal degree " +
                std::to_string(d));
    }

    // coset coordinates for the quotient ring, one degree at a time
    std::map<int, Subquotient> ring_piece;
    auto ring_at = [&](int e) -> const Subquotient& {
        auto it = ring_piece.find(e);
        if (it == ring_piece.end()) {
            int amb = static_cast<int>(weighted_monomials(weights, e).size());
            it = ring_piece
                     .emplace(e, Subquotient(Subspace::full(f, amb),
                                             power_ideal_piece(f, weights, gens, 1, e)))
                     .first;
        }
        return it->second;
    };

    std::vector<std::pair<HomogeneousPoly, std::vector<int>>> prods;
    for (const auto& mu : multisets(static_cast<int>(gens.size()), s))
        prods.emplace_back(product_of(gens, mu), mu);

    PowerQuotientIso report;
    report.all_ok = true;
    for (int d = 0; d <= degree_bound; ++d) {
        Subquotient target(power_ideal_piece(f, weights, gens, s, d),
                           power_ideal_piece(f, weights, gens, s + 1, d));

        // zeta: multiply coset representatives out, one generator monomial
        // at a time; also collect the multiplication blocks for xi's solve
        std::vector<Matrix> zeta_cols;
        std::vector<Matrix> blocks;
        std::vector<int> block_src; // source degree of each block
        int sym_dim = 0;
        for (const auto& [p, mu] : prods) {
            int e = d - p.degree();
            if (e < 0 || p.is_zero())
                continue;
            const Subquotient& ring = ring_at(e);
            Matrix mult = multiplication_matrix(p, e);
            blocks.push_back(mult);
            block_src.push_back(e);
            sym_dim += ring.dim();
            if (ring.dim() > 0)
                zeta_cols.push_back(target.coords(mult * ring.coset_basis().transpose()));
        }
        Matrix zeta(f, target.dim(), 0);
        for (const auto& c : zeta_cols)
            zeta = zeta.hstack(c);
        if (zeta.cols() == 0)
            zeta = Matrix(f, target.dim(), sym_dim);

        // xi: solve the membership problem against all generator products,
        // then pass each block to quotient-ring coordinates
        Matrix xi(f, sym_dim, target.dim());
        if (target.dim() > 0) {
            Matrix stacked(f, static_cast<int>(weighted_monomials(weights, d).size()), 0);
            for (const auto& b : blocks)
                stacked = stacked.hstack(b);
            Matrix sol = stacked.solve(target.coset_basis().transpose());
            int row0 = 0, out_row = 0;
            for (size_t bi = 0; bi < blocks.size(); ++bi) {
                int src = blocks[bi].cols();
                const Subquotient& ring = ring_at(block_src[bi]);
                Matrix piece(f, src, target.dim());
                for (int i = 0; i < src; ++i)
                    for (int j = 0; j < target.dim(); ++j)
                        piece.set(i, j, sol.at(row0 + i, j));
                Matrix reduced = ring.coords(piece);
                for (int i = 0; i < reduced.rows(); ++i)
                    for (int j = 0; j < target.dim(); ++j)
                        xi.set(out_row + i, j, reduced.at(i, j));
                row0 += src;
                out_row += ring.dim();
            }
        }

        bool ok = sym_dim == target.dim() && xi * zeta == Matrix::identity(f, sym_dim) &&
                  zeta * xi == Matrix::identity(f, target.dim());
        report.all_ok = report.all_ok && ok;
        report.degrees.push_back({d, sym_dim, target.dim(), std::move(zeta), std::move(xi), ok});
    }
    return report;
}

SymGradedModule::SymGradedModule(const GradedFreeModule& L, std::vector<int> dims,
                                 std::vector<Matrix> action, bool exact_top)
    : fld_(L.field()), ell_(L.rank()), dims_(std::move(dims)), action_(std::move(action)),
      exact_top_(exact_top) {
    if (dims_.empty())
        throw invariant_error("graded action module: no grades");
    if (action_.size() + 1 != dims_.size())
        throw invariant_error("graded action module: need one action map per grade step");
    for (size_t j = 0; j < action_.size(); ++j) {
        const Matrix& a = action_[j];
        require_same_field(fld_, a.field(), "graded action module");
        if (a.rows() != dims_[j + 1] || a.cols() != ell_ * dims_[j])
            throw invariant_error("graded action module: action shape mismatch at grade " +
                                  std::to_string(j));
    }
    // the actions of two module generators must commute
    for (size_t j = 0; j + 1 < action_.size(); ++j)
        for (int i = 0; i < ell_; ++i)
            for (int k = i + 1; k < ell_; ++k) {
                Matrix a = column_block(action_[j + 1], i * dims_[j + 1], dims_[j + 1]) *
                           column_block(action_[j], k * dims_[j], dims_[j]);
                Matrix b = column_block(action_[j + 1], k * dims_[j + 1], dims_[j + 1]) *
                           column_block(action_[j], i * dims_[j], dims_[j]);
                if (!(a == b))
                    throw invariant_error(
                        "graded action module: action fails to commute at grade " +
                        std::to_string(j));
            }
}

SymGradedModule SymGradedModule::sym_algebra(const GradedFreeModule& L, int top) {
    if (top < 0)
        throw invariant_error("symmetric algebra: negative top grade");
    Field f = L.field();
    int m = L.rank();
    std::vector<int> dims;
    std::vector<Matrix> action;
    for (int j = 0; j <= top; ++j)
        dims.push_back(static_cast<int>(multisets(m, j).size()));
    for (int j = 0; j + 1 <= top; ++j) {
        auto dom = multisets(m, j);
        auto cod_idx = index_of(multisets(m, j + 1));
        Matrix a(f, dims[static_cast<size_t>(j + 1)], m * dims[static_cast<size_t>(j)]);
        for (int i = 0; i < m; ++i)
            for (size_t b = 0; b < dom.size(); ++b) {
                std::vector<int> key = dom[b];
                key.insert(std::upper_bound(key.begin(), key.end(), i), i);
                a.set(cod_idx.at(key), i * static_cast<int>(dom.size()) + static_cast<int>(b), 1);
            }
        action.push_back(std::move(a));
    }
    return SymGradedModule(L, std::move(dims), std::move(action), false);
}

SymGradedModule SymGradedModule::truncate_above(int keep) const {
    if (keep < 1)
        throw invariant_error("graded action module: truncation keeps nothing");
    if (keep > top()) {
        SymGradedModule out = *this;
        return out;
    }
    std::vector<int> dims(dims_.begin(), dims_.begin() + keep);
    std::vector<Matrix> action(action_.begin(), action_.begin() + (keep - 1));
    SymGradedModule out = *this;
    out.dims_ = std::move(dims);
    out.action_ = std::move(action);
    out.exact_top_ = true;
    return out;
}

int SymGradedModule::dim(int j) const {
    if (j < 0 || j > top())
        return 0;
    return dims_[static_cast<size_t>(j)];
}

const Matrix& SymGradedModule::action(int j) const {
    if (j < 0 || j >= top())
        throw window_error("graded action module: no action out of grade " + std::to_string(j));
    return action_[static_cast<size_t>(j)];
}

KoszulComplex koszul(const GradedFreeModule& L, const SymGradedModule& M) {
    require_same_field(L.field(), M.field(), "contraction complex");
    if (L.rank() != M.ell())
        throw invariant_error("contraction complex: module is over a different free module");
    Field f = L.field();
    int m = L.rank();
    int J = M.top();
    std::vector<int> moff(static_cast<size_t>(J) + 2, 0);
    for (int j = 0; j <= J; ++j)
        moff[static_cast<size_t>(j + 1)] = moff[static_cast<size_t>(j)] + M.dim(j);
    int mtotal = moff[static_cast<size_t>(J) + 1];

    std::vector<std::vector<std::vector<int>>> wedge;
    std::vector<std::map<std::vector<int>, int>> wedge_idx;
    for (int i = 0; i <= m; ++i) {
        wedge.push_back(subsets(m, i));
        wedge_idx.push_back(index_of(wedge.back()));
    }

    std::vector<int> dims;
    std::vector<std::vector<int>> grades;
    for (int i = 0; i <= m; ++i) {
        dims.push_back(static_cast<int>(wedge[static_cast<size_t>(i)].size()) * mtotal);
        std::vector<int> g;
        for (size_t S = 0; S < wedge[static_cast<size_t>(i)].size(); ++S)
            for (int j = 0; j <= J; ++j)
                for (int b = 0; b < M.dim(j); ++b)
                    g.push_back(j);
        grades.push_back(std::move(g));
    }

    std::vector<Matrix> diffs;
    diffs.emplace_back(f, 0, dims[0]);
    for (int i = 1; i <= m; ++i) {
        Matrix d(f, dims[static_cast<size_t>(i - 1)], dims[static_cast<size_t>(i)]);
        const auto& srcs = wedge[static_cast<size_t>(i)];
        for (size_t S = 0; S < srcs.size(); ++S)
            for (int j = 0; j <= J; ++j) {
                if (j == J)
                    continue; // the action lands beyond the stored grades
                const Matrix& act = M.action(j);
                for (int b = 0; b < M.dim(j); ++b) {
                    int col = static_cast<int>(S) * mtotal + moff[static_cast<size_t>(j)] + b;
                    for (size_t k = 0; k < srcs[S].size(); ++k) {
                        std::vector<int> rest = srcs[S];
                        int x = rest[k];
                        rest.erase(rest.begin() + static_cast<long>(k));
                        int Sp = wedge_idx[static_cast<size_t>(i - 1)].at(rest);
                        long sign = (k % 2 == 0) ? 1 : -1;
                        for (int bp = 0; bp < M.dim(j + 1); ++bp) {
                            Scalar v = act.at(bp, x * M.dim(j) + b);
                            if (v.is_zero())
                                continue;
                            int row = Sp * mtotal + moff[static_cast<size_t>(j + 1)] + bp;
                            Scalar prev = d.at(row, col);
                            d.set(row, col, prev + Scalar(f, sign) * v);
                        }
                    }
                }
            }
        diffs.push_back(std::move(d));
    }

    KoszulComplex out{ChainComplex(f, 0, dims, diffs), std::move(grades),
                      M.exact_top() ? std::numeric_limits<int>::max() : J - 1};
    return out;
}

Subquotient koszul_strand_homology(const KoszulComplex& K, int i, int j) {
    Field f = K.complex.field();
    if (j > K.grade_window)
        throw window_error("strand homology: grade " + std::to_string(j) +
                           " is beyond the stored window");
    int m = static_cast<int>(K.grades.size()) - 1;
    if (i < 0 || i > m || j < 0)
        return Subquotient(Subspace(f, 0), Subspace(f, 0));

    auto strand = [&](int deg, int grade) {
        std::vector<int> sel;
        if (deg < 0 || deg > m)
            return sel;
        const auto& g = K.grades[static_cast<size_t>(deg)];
        for (size_t b = 0; b < g.size(); ++b)
            if (g[b] == grade)
                sel.push_back(static_cast<int>(b));
        return sel;
    };

    std::vector<int> here = strand(i, j);
    std::vector<int> above = strand(i + 1, j - 1);
    std::vector<int> below = strand(i - 1, j + 1);

    // the differential must not leave the strand
    Matrix dout_full = K.complex.diff(i);
    for (int c : here)
        for (int r = 0; r < dout_full.rows(); ++r)
            if (!dout_full.entry_is_zero(r, c) && K.grades[static_cast<size_t>(i - 1)][static_cast<size_t>(r)] != j + 1)
                throw invariant_error("strand homology: differential leaves the grade strand");

    Matrix dout = dout_full.select_rows(below).select_cols(here);
    Matrix din = i + 1 <= m ? K.complex.diff(i + 1).select_rows(here).select_cols(above)
                            : Matrix(f, static_cast<int>(here.size()), 0);
    return Subquotient(Subspace::span(dout.kernel()), Subspace::from_columns(din));
}

} // namespace specseq

#include "specseq/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"

#include "specseq/complexes.hpp"
#include "specseq/multilinear.hpp"
#include "specseq/quillen.hpp"
#include "specseq/resolution.hpp"
#include "specseq/simplicial.hpp"
#include "specseq/spectral.hpp"

namespace specseq {

namespace {

using ojson = nlohmann::ordered_json;

/* ---------------------------------------------------------------- input */

Field parse_field_tag(const ojson& v) {
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "Q")
            return Field::rationals();
        if (s.size() > 1 && s[0] == 'F' &&
            std::all_of(s.begin() + 1, s.end(), [](char c) { return c >= '0' && c <= '9'; }))
            return Field::prime(std::stol(s.substr(1)));
        throw parse_error("field tag '" + s + "' is not \"Q\" or \"F<p>\"");
    }
    if (v.is_object() && v.contains("prime") && v["prime"].is_number_integer())
        return Field::prime(v["prime"].get<long>());
    throw parse_error("field must be \"Q\", \"F<p>\" or {\"prime\": p}");
}

ojson load_reference(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("referenced file does not exist: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return ojson::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(path + ": malformed JSON at byte " + std::to_string(e.byte));
    }
}

GradedAlgebraPresentation parse_algebra(const ojson& given, Field f, const std::string& slot) {
    ojson v = given;
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (!s.empty() && s[0] == '@')
            v = load_reference(s.substr(1));
        else
            throw parse_error(slot + ": expected an object or an \"@file\" reference");
    }
    if (!v.is_object())
        throw parse_error(slot + ": expected an object or an \"@file\" reference");
    for (const auto& item : v.items())
        if (item.key() != "field" && item.key() != "vars" && item.key() != "relations")
            throw parse_error(slot + ": unknown key '" + item.key() + "'");
    if (v.contains("field")) {
        Field own = parse_field_tag(v["field"]);
        if (own != f)
            throw parse_error(slot + ": field tag " + own.describe() +
                              " disagrees with the job field " + f.describe());
    }
    if (!v.contains("vars") || !v["vars"].is_array())
        throw parse_error(slot + ": 'vars' must be an array");
    std::vector<std::pair<std::string, int>> vars;
    for (const ojson& e : v["vars"]) {
        if (e.is_string())
            vars.emplace_back(e.get<std::string>(), 1);
        else if (e.is_array() && e.size() == 2 && e[0].is_string() && e[1].is_number_integer())
            vars.emplace_back(e[0].get<std::string>(), e[1].get<int>());
        else
            throw parse_error(slot + ": each variable is \"name\" or [\"name\", weight]");
    }
    std::vector<std::string> rels;
    if (v.contains("relations")) {
        if (!v["relations"].is_array())
            throw parse_error(slot + ": 'relations' must be an array of strings");
        for (const ojson& e : v["relations"]) {
            if (!e.is_string())
                throw parse_error(slot + ": 'relations' must be an array of strings");
            rels.push_back(e.get<std::string>());
        }
    }
    return GradedAlgebraPresentation::parse(f, vars, rels);
}

int positive_int(const ojson& j, const std::string& key, int fallback) {
    if (!j.contains(key))
        return fallback;
    if (!j[key].is_number_integer())
        throw parse_error("parameter '" + key + "' must be an integer");
    int v = j[key].get<int>();
    if (v < 1)
        throw parse_error("parameter '" + key + "' must be positive");
    return v;
}

RandomFiltrationSpec parse_filtration_spec(const ojson& v) {
    if (!v.is_object())
        throw parse_error("'filtration' must be an object");
    for (const auto& item : v.items()) {
        const std::string& k = item.key();
        if (k != "degree_lo" && k != "degree_hi" && k != "max_dim" && k != "length")
            throw parse_error("filtration: unknown key '" + k + "'");
        if (!item.value().is_number_integer())
            throw parse_error("filtration: '" + k + "' must be an integer");
    }
    RandomFiltrationSpec fs;
    fs.degree_lo = v.value("degree_lo", fs.degree_lo);
    fs.degree_hi = v.value("degree_hi", fs.degree_hi);
    fs.max_dim = v.value("max_dim", fs.max_dim);
    fs.length = v.value("length", fs.length);
    if (fs.degree_lo > fs.degree_hi)
        throw parse_error("filtration: degree_lo exceeds degree_hi");
    if (fs.max_dim < 0)
        throw parse_error("filtration: max_dim must be non-negative");
    if (fs.length < 1)
        throw parse_error("filtration: length must be positive");
    return fs;
}

/* The residue field of R: same ring, with every variable added to the
 * relation ideal. */
GradedAlgebraPresentation residue_field_of(const GradedAlgebraPresentation& R) {
    std::vector<HomogeneousPoly> rels = R.relations();
    for (const std::string& x : R.vars())
        rels.push_back(parse_polynomial(R.field(), R.vars(), R.weights(), x));
    return GradedAlgebraPresentation(R.field(), R.vars(), R.weights(), std::move(rels));
}

/* --------------------------------------------------------- random corpus */

Matrix random_matrix(Field f, int rows, int cols, std::mt19937& rng, long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    Matrix m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m.set(i, j, dist(rng));
    return m;
}

/* Differentials are built top-down as random combinations of the kernel
 * one degree below, so d after d vanishes by construction. */
ChainComplex random_complex(Field f, int lo, int hi, int maxdim, std::mt19937& rng) {
    std::uniform_int_distribution<int> dd(0, maxdim);
    std::vector<int> dims;
    for (int n = lo; n <= hi; ++n)
        dims.push_back(dd(rng));
    std::vector<Matrix> diffs;
    diffs.emplace_back(f, 0, dims[0]);
    for (size_t k = 1; k < dims.size(); ++k) {
        Matrix kb = diffs[k - 1].kernel();
        diffs.push_back(kb.transpose() * random_matrix(f, kb.rows(), dims[k], rng, -2, 2));
    }
    return ChainComplex(f, lo, std::move(dims), std::move(diffs));
}

/* Each step adds a random subcomplex S + d(S') to the previous layer; the
 * top layer is forced to be everything. */
FilteredComplex random_filtration(const ChainComplex& X, int p_min, int length,
                                  std::mt19937& rng) {
    std::uniform_int_distribution<int> gens(0, 2);
    std::vector<std::vector<Subspace>> layers;
    std::vector<Subspace> prev;
    for (int n = X.lo(); n <= X.hi(); ++n)
        prev.emplace_back(X.field(), X.dim(n));
    for (int step = 0; step + 1 < length; ++step) {
        std::vector<Subspace> spans;
        for (int n = X.lo(); n <= X.hi() + 1; ++n)
            spans.push_back(
                Subspace::span(random_matrix(X.field(), gens(rng), X.dim(n), rng, 0, 100)));
        std::vector<Subspace> cur;
        for (int n = X.lo(); n <= X.hi(); ++n) {
            size_t k = static_cast<size_t>(n - X.lo());
            Subspace g = spans[k].sum(spans[k + 1].image_under(X.diff(n + 1)));
            cur.push_back(g.sum(prev[k]));
        }
        layers.push_back(cur);
        prev = std::move(cur);
    }
    std::vector<Subspace> top;
    for (int n = X.lo(); n <= X.hi(); ++n)
        top.push_back(Subspace::full(X.field(), X.dim(n)));
    layers.push_back(std::move(top));
    return FilteredComplex(X, p_min, std::move(layers));
}

/* ------------------------------------------------------------- reporting */

ojson matrix_json(const Matrix& m) {
    ojson rows = ojson::array();
    for (int i = 0; i < m.rows(); ++i) {
        ojson row = ojson::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push_back(m.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

ojson complex_json(const ChainComplex& X) {
    ojson dims = ojson::array(), diffs = ojson::array();
    for (int n = X.lo(); n <= X.hi(); ++n) {
        dims.push_back(X.dim(n));
        diffs.push_back(matrix_json(X.diff(n)));
    }
    return ojson{{"field", X.field().describe()},
                 {"lo", X.lo()},
                 {"dims", std::move(dims)},
                 {"differentials", std::move(diffs)}};
}

ojson filtration_json(const FilteredComplex& F) {
    ojson layers = ojson::array();
    for (int p = F.p_min(); p <= F.p_max(); ++p) {
        ojson per_degree = ojson::array();
        for (int n = F.total().lo(); n <= F.total().hi(); ++n)
            per_degree.push_back(matrix_json(F.layer(p, n).basis()));
        layers.push_back(std::move(per_degree));
    }
    return ojson{{"p_min", F.p_min()}, {"layer_bases", std::move(layers)}};
}

ojson dims_to_json(const GradedDims& g) {
    ojson by = ojson::object();
    for (const auto& [d, v] : g.by_degree)
        if (v != 0)
            by[std::to_string(d)] = v;
    return by;
}

ojson entry_table(const std::map<std::pair<int, int>, int>& dims, const ojson& window) {
    ojson arr = ojson::array();
    for (const auto& [pq, d] : dims)
        if (d != 0)
            arr.push_back(
                ojson{{"p", pq.first}, {"q", pq.second}, {"dim", d}, {"window", window}});
    return arr;
}

/* The frame substitution used for display pages of the fundamental
 * filtrations, matching the reindexing built into the engine. */
std::pair<int, int> display_key(bool cohomological, int p, int q) {
    if (cohomological)
        return {2 * p + q - 1, -p + 1};
    return {2 * p + q, -p};
}

/* ------------------------------------------------------ command: pages */

ojson cmd_pages_fundamental(const JobSpec& job, const GradedAlgebraPresentation& A) {
    AugmentationTower tower(
        build_resolution(*job.base, A, job.trunc_level, job.degree_bound), job.powers);
    const bool coh = job.cohomological;
    FundamentalSS ss = coh ? fundamental_ss_cohomology(tower, job.coeff_rank)
                           : fundamental_ss_homology(tower, job.coeff_rank);
    const int T = tower.trunc();
    ojson window = coh ? ojson{{"total_degree_min", -(T - 1)},
                               {"internal_degree_max", job.degree_bound}}
                       : ojson{{"total_degree_max", T - 1},
                               {"internal_degree_max", job.degree_bound}};

    ojson pages = ojson::array();
    pages.push_back(ojson{{"r", 2}, {"entries", entry_table(ss.entry_dims, window)}});
    for (int rd = 3; rd <= job.pages; ++rd) {
        std::map<std::pair<int, int>, int> agg;
        for (const StrandPage& sp : ss.strands) {
            auto F = sp.page.parent_ptr();
            SpectralPage plain = make_page(F, rd - 1);
            SpectralPage cut = coh ? restrict_total_degrees(plain, -(T - 1), 0)
                                   : restrict_total_degrees(plain, 0, T - 1);
            for (const auto& [pq, e] : cut.entries())
                if (e.dim() != 0)
                    agg[display_key(coh, pq.first, pq.second)] += e.dim();
        }
        pages.push_back(ojson{{"r", rd}, {"entries", entry_table(agg, window)}});
    }
    std::map<std::pair<int, int>, int> inf;
    for (const StrandPage& sp : ss.strands) {
        auto F = sp.page.parent_ptr();
        const int n_lo = coh ? -(T - 1) : 0, n_hi = coh ? 0 : T - 1;
        for (int n = n_lo; n <= n_hi; ++n)
            for (int p = F->p_min(); p <= F->p_max(); ++p) {
                int d = F->einfty(p, n - p).dim();
                if (d != 0)
                    inf[display_key(coh, p, n - p)] += d;
            }
    }
    pages.push_back(ojson{{"r", "infinity"}, {"entries", entry_table(inf, window)}});

    ojson abutment = ojson::array();
    for (const auto& row : ss.abutment)
        abutment.push_back(ojson{{"n", row.n},
                                 {"einfty_column_sum", row.homology_dim},
                                 {"homology_dim", row.oracle_dim},
                                 {"ok", row.ok}});

    ojson out;
    out["schema"] = "1";
    out["command"] = "pages";
    out["mode"] = "fundamental";
    out["variance"] = coh ? "cohomological" : "homological";
    out["field"] = job.field.describe();
    out["parameters"] = ojson{{"trunc_level", job.trunc_level},
                              {"degree_bound", job.degree_bound},
                              {"powers", job.powers},
                              {"coeff_rank", job.coeff_rank},
                              {"pages", job.pages}};
    out["window"] = window;
    out[coh ? "third_quadrant_ok" : "first_quadrant_ok"] = ss.quadrant_ok;
    out["pages"] = std::move(pages);
    out["convergence"] = ojson{{"stabilized_matches_closed_form", ss.converged},
                               {"abutment", std::move(abutment)},
                               {"ok", ss.converged && ss.abutment_ok}};
    out["ok"] = ss.ok();
    return out;
}

ojson cmd_pages_filtration(const JobSpec& job) {
    const RandomFiltrationSpec fs = *job.filtration;
    std::mt19937 rng(static_cast<std::uint32_t>(job.seed));
    ChainComplex X = random_complex(job.field, fs.degree_lo, fs.degree_hi, fs.max_dim, rng);
    auto F = std::make_shared<const FilteredComplex>(
        random_filtration(X, 0, fs.length, rng));
    // Nothing here is truncated, so every dimension is exact as printed.
    ojson window = ojson{{"exact", true}};

    ojson pages = ojson::array();
    for (int r = 1; r <= job.pages; ++r) {
        SpectralPage page = make_page(F, r);
        std::map<std::pair<int, int>, int> dims;
        for (const auto& [pq, e] : page.entries())
            if (e.dim() != 0)
                dims[pq] = e.dim();
        pages.push_back(ojson{{"r", r}, {"entries", entry_table(dims, window)}});
    }
    std::map<std::pair<int, int>, int> inf;
    for (int p = F->p_min(); p <= F->p_max(); ++p)
        for (int n = X.lo(); n <= X.hi(); ++n) {
            int d = F->einfty(p, n - p).dim();
            if (d != 0)
                inf[{p, n - p}] = d;
        }
    pages.push_back(ojson{{"r", "infinity"}, {"entries", entry_table(inf, window)}});

    ConvergenceReport conv = check_convergence(*F);
    ojson degrees = ojson::array();
    for (const auto& deg : conv.degrees) {
        ojson einf = ojson::array();
        for (int d : deg.einfty_dims)
            einf.push_back(d);
        degrees.push_back(ojson{{"n", deg.n},
                                {"homology_dim", deg.h_dim},
                                {"einfty_dims", std::move(einf)},
                                {"ok", deg.ok}});
    }

    ojson out;
    out["schema"] = "1";
    out["command"] = "pages";
    out["mode"] = "random-filtration";
    out["field"] = job.field.describe();
    out["input"] = ojson{{"seed", job.seed},
                         {"degree_lo", fs.degree_lo},
                         {"degree_hi", fs.degree_hi},
                         {"max_dim", fs.max_dim},
                         {"length", fs.length}};
    out["parameters"] = ojson{{"pages", job.pages}};
    out["window"] = window;
    out["pages"] = std::move(pages);
    out["convergence"] = ojson{{"degrees", std::move(degrees)}, {"ok", conv.ok}};
    out["ok"] = conv.ok;
    return out;
}

/* -------------------------------------------------- command: tor / ext */

ojson cmd_derived(const JobSpec& job, bool want_ext, const GradedAlgebraPresentation& A) {
    const GradedAlgebraPresentation& M = job.module ? *job.module : A;
    const int imax = job.trunc_level;
    std::vector<GradedDims> table =
        want_ext ? ext_table(*job.base, A, M, imax, job.degree_bound)
                 : tor_table(*job.base, A, M, imax, job.degree_bound);
    ojson window = ojson{{"homological_index_max", imax},
                         {"internal_degree_bound", job.degree_bound}};
    ojson rows = ojson::array();
    for (int i = 0; i <= imax; ++i)
        rows.push_back(ojson{{"i", i},
                             {"total", table[static_cast<size_t>(i)].total()},
                             {"by_degree", dims_to_json(table[static_cast<size_t>(i)])},
                             {"window", window}});
    ojson out;
    out["schema"] = "1";
    out["command"] = want_ext ? "ext" : "tor";
    out["field"] = job.field.describe();
    out["parameters"] = ojson{{"trunc_level", imax}, {"degree_bound", job.degree_bound}};
    out["window"] = window;
    out["table"] = std::move(rows);
    out["ok"] = true;
    return out;
}

/* ---------------------------------------------------------- command: aq */

ojson cmd_aq(const JobSpec& job, const GradedAlgebraPresentation& A) {
    AugmentationTower tower(
        build_resolution(*job.base, A, job.trunc_level, job.degree_bound), job.powers);
    CotangentData cot(tower);
    const int T = tower.trunc();
    ojson window = ojson{{"homotopy_index_max", T - 1},
                         {"weight_bound", cot.weight_bound()}};
    ojson hom = ojson::array(), coh = ojson::array();
    for (int i = 0; i < T; ++i) {
        GradedDims h = aq_homology(cot, i, job.coeff_rank);
        GradedDims c = aq_cohomology(cot, i, job.coeff_rank);
        hom.push_back(ojson{{"i", i},
                            {"total", h.total()},
                            {"by_weight", dims_to_json(h)},
                            {"window", window}});
        coh.push_back(ojson{{"i", i},
                            {"total", c.total()},
                            {"by_weight", dims_to_json(c)},
                            {"window", window}});
    }
    ojson out;
    out["schema"] = "1";
    out["command"] = "aq";
    out["field"] = job.field.describe();
    out["parameters"] = ojson{{"trunc_level", job.trunc_level},
                              {"degree_bound", job.degree_bound},
                              {"powers", job.powers},
                              {"coeff_rank", job.coeff_rank}};
    out["window"] = window;
    out["homology"] = std::move(hom);
    out["cohomology"] = std::move(coh);
    out["ok"] = true;
    return out;
}

/* --------------------------------------------------- command: five-term */

ojson five_term_side(const FiveTermVerdict& v, const ojson& window) {
    ojson terms = ojson::array();
    for (int k = 0; k < 5; ++k)
        terms.push_back(ojson{{"label", v.labels[static_cast<size_t>(k)]},
                              {"dim", v.engine_dims[static_cast<size_t>(k)]},
                              {"reference_dim", v.reference_dims[static_cast<size_t>(k)]},
                              {"ok", v.engine_dims[static_cast<size_t>(k)] ==
                                         v.reference_dims[static_cast<size_t>(k)]},
                              {"window", window}});
    // Map ranks add up over internal degrees: the maps are block diagonal
    // across the strands of the resolution.
    ojson ranks = ojson::array();
    for (int k = 0; k < 4; ++k) {
        int rk = 0;
        for (const FiveTermReport& rep : v.strand_reports)
            rk += rep.maps[static_cast<size_t>(k)].rank();
        ranks.push_back(rk);
    }
    ojson joints = ojson::array();
    for (int k = 0; k < 4; ++k) {
        bool ok = true;
        for (const FiveTermReport& rep : v.strand_reports)
            ok = ok && rep.exact[static_cast<size_t>(k)];
        joints.push_back(ok);
    }
    return ojson{{"terms", std::move(terms)},
                 {"map_ranks", std::move(ranks)},
                 {"joints_exact", std::move(joints)},
                 {"dims_match_references", v.dims_ok},
                 {"abutment_ok", v.abutment_ok},
                 {"exact", v.exact}};
}

ojson cmd_five_term(const JobSpec& job, const GradedAlgebraPresentation& A) {
    AugmentationTower tower(
        build_resolution(*job.base, A, job.trunc_level, job.degree_bound), job.powers);
    FiveTermPair pair = five_term_54(tower, job.coeff_rank);
    const int T = tower.trunc();
    ojson hwin = ojson{{"total_degree_max", T - 1}, {"internal_degree_max", job.degree_bound}};
    ojson cwin = ojson{{"total_degree_min", -(T - 1)},
                       {"internal_degree_max", job.degree_bound}};
    ojson out;
    out["schema"] = "1";
    out["command"] = "five-term";
    out["field"] = job.field.describe();
    out["parameters"] = ojson{{"trunc_level", job.trunc_level},
                              {"degree_bound", job.degree_bound},
                              {"powers", job.powers},
                              {"coeff_rank", job.coeff_rank}};
    out["homological"] = five_term_side(pair.homological, hwin);
    out["cohomological"] = five_term_side(pair.cohomological, cwin);
    out["ok"] = pair.ok();
    return out;
}

/* ------------------------------------------------------- command: check */

ChainComplex negate_differentials(const ChainComplex& C) {
    Scalar minus_one(C.field(), -1);
    std::vector<int> dims;
    std::vector<Matrix> diffs;
    for (int n = C.lo(); n <= C.hi(); ++n) {
        dims.push_back(C.dim(n));
        diffs.push_back(C.diff(n).scaled(minus_one));
    }
    return ChainComplex(C.field(), C.lo(), std::move(dims), std::move(diffs));
}

/* Dualization with the alternating sign dropped: still a complex, but the
 * wrong convention.  Used only by the deliberate "hom-sign" injection. */
ChainComplex unsigned_dual(const ChainComplex& C) {
    std::vector<int> dims;
    std::vector<Matrix> diffs;
    for (int n = -C.hi(); n <= -C.lo(); ++n) {
        dims.push_back(C.dim(-n));
        diffs.push_back(C.diff(-n + 1).transpose());
    }
    return ChainComplex(C.field(), -C.hi(), std::move(dims), std::move(diffs));
}

struct PropertyOutcome {
    std::string name;
    int cases = 0;
    bool ok = true;
    int fail_case = -1;
    ojson repro;
    std::string detail;
};

/* Applying dualization twice returns the complex with every differential
 * negated; the identity pins the alternating sign in the Hom convention.
 * The injection replaces the second pass by the unsigned transpose, which
 * breaks the identity at every even-degree differential. */
PropertyOutcome check_hom_roundtrip(std::uint64_t seed, int corpus, bool inject) {
    PropertyOutcome out;
    out.name = "hom-duality-roundtrip";
    std::mt19937 rng(static_cast<std::uint32_t>(seed) + 101u);
    Field f = Field::prime(101);
    std::vector<ChainComplex> cases;
    // one pinned complex with a nonzero even-degree differential, so the
    // injected failure does not depend on the seed
    cases.push_back(ChainComplex(f, 1, {1, 1}, {Matrix(f, 0, 1), Matrix::identity(f, 1)}));
    for (int t = 0; t < corpus; ++t)
        cases.push_back(random_complex(f, -2, 4, 4, rng));
    for (size_t k = 0; k < cases.size(); ++k) {
        const ChainComplex& C = cases[k];
        ChainComplex D = C.hom_into(1);
        ChainComplex E = inject ? unsigned_dual(D) : D.hom_into(1);
        ++out.cases;
        if (!(E == negate_differentials(C))) {
            out.ok = false;
            out.fail_case = static_cast<int>(k);
            out.repro = ojson{{"complex", complex_json(C)}};
            out.detail = "double dual differs from the sign-negated complex";
            return out;
        }
    }
    return out;
}

PropertyOutcome check_page_turning(std::uint64_t seed, int corpus) {
    PropertyOutcome out;
    out.name = "page-turning";
    std::mt19937 rng(static_cast<std::uint32_t>(seed) + 211u);
    Field f = Field::prime(101);
    std::uniform_int_distribution<int> len(1, 4);
    for (int t = 0; t < corpus; ++t) {
        ChainComplex X = random_complex(f, -2, 5, 5, rng);
        FilteredComplex F = random_filtration(X, -2, len(rng), rng);
        ++out.cases;
        for (int r = 1; r <= 3; ++r)
            for (int p = F.p_min(); p <= F.p_max(); ++p)
                for (int n = X.lo(); n <= X.hi(); ++n) {
                    int q = n - p;
                    int ker = F.differential(r, p, q).kernel().rows();
                    int im = F.differential(r, p + r, q - r + 1).rank();
                    int next = F.entry(r + 1, p, q).dim();
                    bool good = (next == ker - im);
                    if (good && next > 0)
                        good = F.page_turn_iso(r, p, q).rank() == next;
                    if (!good) {
                        out.ok = false;
                        out.fail_case = t;
                        out.repro = ojson{{"complex", complex_json(X)},
                                          {"filtration", filtration_json(F)},
                                          {"r", r},
                                          {"p", p},
                                          {"q", q}};
                        out.detail = "dim E^{r+1} != dim ker - dim im at the cited spot";
                        return out;
                    }
                }
    }
    return out;
}

PropertyOutcome check_containment(std::uint64_t seed, int corpus) {
    PropertyOutcome out;
    out.name = "containment-chain";
    std::mt19937 rng(static_cast<std::uint32_t>(seed) + 307u);
    Field f = Field::prime(101);
    std::uniform_int_distribution<int> len(1, 4);
    for (int t = 0; t < corpus; ++t) {
        ChainComplex X = random_complex(f, -2, 5, 5, rng);
        FilteredComplex F = random_filtration(X, -2, len(rng), rng);
        ++out.cases;
        for (int p = F.p_min(); p <= F.p_max(); ++p)
            for (int n = X.lo(); n <= X.hi(); ++n) {
                int q = n - p;
                Subspace fp = F.layer(p, n);
                Subspace zf = X.cycles(n).intersect(fp);
                Subspace bf = X.boundaries(n).intersect(fp);
                int r0 = F.stabilization_bound(p);
                bool good = F.iterm(0, p, q) == fp && zf.contains(bf) &&
                            F.iterm(r0, p, q) == zf && F.jterm(r0, p, q) == bf;
                for (int r = 0; good && r <= r0; ++r)
                    good = F.jterm(r + 1, p, q).contains(F.jterm(r, p, q)) &&
                           F.iterm(r, p, q).contains(F.iterm(r + 1, p, q)) &&
                           F.iterm(r, p, q).contains(zf) && bf.contains(F.jterm(r, p, q));
                if (!good) {
                    out.ok = false;
                    out.fail_case = t;
                    out.repro = ojson{{"complex", complex_json(X)},
                                      {"filtration", filtration_json(F)},
                                      {"p", p},
                                      {"q", q}};
                    out.detail = "boundary/cycle sandwich violated at the cited spot";
                    return out;
                }
            }
    }
    return out;
}

PropertyOutcome check_convergence_corpus(std::uint64_t seed, int corpus) {
    PropertyOutcome out;
    out.name = "convergence";
    std::mt19937 rng(static_cast<std::uint32_t>(seed) + 401u);
    Field f = Field::prime(101);
    std::uniform_int_distribution<int> len(1, 4);
    for (int t = 0; t < corpus; ++t) {
        ChainComplex X = random_complex(f, -2, 5, 5, rng);
        FilteredComplex F = random_filtration(X, -2, len(rng), rng);
        ++out.cases;
        if (!check_convergence(F).ok) {
            out.ok = false;
            out.fail_case = t;
            out.repro = ojson{{"complex", complex_json(X)}, {"filtration", filtration_json(F)}};
            out.detail = "graded homology does not match the stable page";
            return out;
        }
    }
    return out;
}

PropertyOutcome check_koszul() {
    PropertyOutcome out;
    out.name = "koszul-acyclicity";
    Field f = Field::prime(101);
    for (int m : {1, 2}) {
        GradedFreeModule L = GradedFreeModule::standard(f, m);
        KoszulComplex K = koszul(L, SymGradedModule::sym_algebra(L, 3));
        ++out.cases;
        bool good = koszul_strand_homology(K, 0, 0).dim() == 1;
        for (int j = 1; good && j <= K.grade_window; ++j)
            good = koszul_strand_homology(K, 0, j).dim() == 0;
        for (int i = 1; good && i <= m; ++i)
            for (int j = 0; good && j <= K.grade_window; ++j)
                good = koszul_strand_homology(K, i, j).dim() == 0;
        if (!good) {
            out.ok = false;
            out.fail_case = m;
            out.repro = ojson{{"rank", m}};
            out.detail = "contraction complex of a free module is not acyclic";
            return out;
        }
    }
    return out;
}

PropertyOutcome check_power_quotient() {
    PropertyOutcome out;
    out.name = "power-quotient";
    Field f = Field::rationals();
    std::vector<int> w{1, 1};
    std::vector<std::string> vars{"x", "y"};
    std::vector<HomogeneousPoly> gens{parse_polynomial(f, vars, w, "x^2"),
                                      parse_polynomial(f, vars, w, "y^2")};
    for (int s = 1; s <= 2; ++s) {
        ++out.cases;
        if (!regseq_power_iso(f, w, gens, s, 4).all_ok) {
            out.ok = false;
            out.fail_case = s;
            out.repro = ojson{{"power", s}};
            out.detail = "symmetric power does not match the ideal power layer";
            return out;
        }
    }
    return out;
}

PropertyOutcome check_connectivity() {
    PropertyOutcome out;
    out.name = "connectivity";
    Field f = Field::rationals();
    auto R = GradedAlgebraPresentation::parse(f, {{"x", 1}}, {});
    AugmentationTower tower(build_resolution(R, residue_field_of(R), 3, 3), 3);
    for (int s = 1; s <= 2; ++s) {
        ++out.cases;
        ConnectivityReport rep = connectivity_check(tower, s);
        if (!rep.ok()) {
            out.ok = false;
            out.fail_case = s;
            out.repro = ojson{{"power", s}};
            out.detail = "an ideal power has homotopy below its power";
            return out;
        }
    }
    return out;
}

PropertyOutcome check_five_term() {
    PropertyOutcome out;
    out.name = "five-term-exactness";
    Field f = Field::rationals();
    auto R = GradedAlgebraPresentation::parse(f, {{"t", 1}}, {"t^2"});
    AugmentationTower tower(build_resolution(R, residue_field_of(R), 4, 3), 3);
    ++out.cases;
    FiveTermPair pair = five_term_54(tower);
    if (!pair.ok()) {
        out.ok = false;
        out.fail_case = 0;
        out.repro = ojson{{"base", "k[t]/(t^2)"}};
        out.detail = "a five-term joint is not exact on the pinned example";
        return out;
    }
    return out;
}

ojson cmd_check(const JobSpec& job) {
    if (!job.inject.empty() && job.inject != "hom-sign")
        throw parse_error("unknown injection '" + job.inject + "' (supported: hom-sign)");
    const int corpus = job.quick ? 2 : 10;
    std::vector<PropertyOutcome> results;
    results.push_back(check_hom_roundtrip(job.seed, corpus, job.inject == "hom-sign"));
    results.push_back(check_page_turning(job.seed, corpus));
    results.push_back(check_containment(job.seed, corpus));
    results.push_back(check_convergence_corpus(job.seed, corpus));
    results.push_back(check_koszul());
    results.push_back(check_power_quotient());
    results.push_back(check_connectivity());
    results.push_back(check_five_term());

    ojson props = ojson::array();
    bool all_ok = true;
    const PropertyOutcome* first_fail = nullptr;
    for (const PropertyOutcome& r : results) {
        props.push_back(ojson{{"name", r.name}, {"cases", r.cases}, {"ok", r.ok}});
        if (!r.ok) {
            all_ok = false;
            if (!first_fail)
                first_fail = &r;
        }
    }
    ojson out;
    out["schema"] = "1";
    out["command"] = "check";
    out["seed"] = job.seed;
    out["quick"] = job.quick;
    out["inject"] = job.inject;
    out["properties"] = std::move(props);
    out["ok"] = all_ok;
    if (first_fail)
        out["failure"] = ojson{{"property", first_fail->name},
                               {"seed", job.seed},
                               {"case", first_fail->fail_case},
                               {"detail", first_fail->detail},
                               {"repro", first_fail->repro}};
    return out;
}

/* --------------------------------------------------------------- verdict */

std::string first_failure(const ojson& report) {
    const std::string cmd = report.value("command", "");
    if (cmd == "check" && report.contains("failure"))
        return report["failure"].value("property", "unknown property");
    if (cmd == "pages") {
        for (const char* key : {"first_quadrant_ok", "third_quadrant_ok"})
            if (report.contains(key) && !report[key].get<bool>())
                return key;
        if (report.contains("convergence") && !report["convergence"]["ok"].get<bool>())
            return "convergence";
        return "page structure";
    }
    if (cmd == "five-term") {
        for (const char* side : {"homological", "cohomological"}) {
            const ojson& s = report[side];
            if (!s["exact"].get<bool>())
                return std::string(side) + " five-term exactness";
            if (!s["dims_match_references"].get<bool>())
                return std::string(side) + " five-term term identification";
            if (!s["abutment_ok"].get<bool>())
                return std::string(side) + " five-term abutment";
        }
    }
    return "report not ok";
}

} // namespace

/* ------------------------------------------------------------ public API */

JobSpec parse_job(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error("malformed JSON at byte " + std::to_string(e.byte));
    }
    if (!j.is_object())
        throw parse_error("job must be a JSON object");
    static const std::set<std::string> known{
        "schema",      "command",      "field",  "base",       "target",
        "module",      "filtration",   "trunc_level", "degree_bound",
        "powers",      "pages",        "coeff_rank",  "cohomological",
        "format",      "seed",         "quick",  "inject"};
    for (const auto& item : j.items())
        if (!known.count(item.key()))
            throw parse_error("unknown job key '" + item.key() + "'");
    if (j.contains("schema") && j["schema"] != "1")
        throw parse_error("unsupported schema (expected \"1\")");

    JobSpec job;
    if (j.contains("command")) {
        if (!j["command"].is_string())
            throw parse_error("'command' must be a string");
        job.command = j["command"].get<std::string>();
    }
    if (j.contains("field"))
        job.field = parse_field_tag(j["field"]);
    if (j.contains("base"))
        job.base = parse_algebra(j["base"], job.field, "base");
    if (j.contains("target") && !(j["target"].is_string() &&
                                  j["target"].get<std::string>() == "residue-field"))
        job.target = parse_algebra(j["target"], job.field, "target");
    if (j.contains("module"))
        job.module = parse_algebra(j["module"], job.field, "module");
    if (j.contains("filtration"))
        job.filtration = parse_filtration_spec(j["filtration"]);

    job.trunc_level = positive_int(j, "trunc_level", job.trunc_level);
    job.degree_bound = positive_int(j, "degree_bound", job.degree_bound);
    job.powers = positive_int(j, "powers", job.powers);
    job.pages = positive_int(j, "pages", job.pages);
    job.coeff_rank = positive_int(j, "coeff_rank", job.coeff_rank);

    if (j.contains("cohomological")) {
        if (!j["cohomological"].is_boolean())
            throw parse_error("'cohomological' must be a boolean");
        job.cohomological = j["cohomological"].get<bool>();
    }
    if (j.contains("format")) {
        if (!j["format"].is_string())
            throw parse_error("'format' must be \"text\" or \"json\"");
        job.format = j["format"].get<std::string>();
    }
    if (job.format != "text" && job.format != "json")
        throw parse_error("'format' must be \"text\" or \"json\"");
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
            throw parse_error("'seed' must be a non-negative integer");
        if (j["seed"].is_number_integer() && j["seed"].get<long long>() < 0)
            throw parse_error("'seed' must be a non-negative integer");
        job.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("quick")) {
        if (!j["quick"].is_boolean())
            throw parse_error("'quick' must be a boolean");
        job.quick = j["quick"].get<bool>();
    }
    if (j.contains("inject")) {
        if (!j["inject"].is_string())
            throw parse_error("'inject' must be a string");
        job.inject = j["inject"].get<std::string>();
    }
    return job;
}

namespace {

/* ------------------------------------------------------- text rendering */

std::string pad(const std::string& s, size_t w) {
    return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
}

std::string window_text(const ojson& w) {
    if (w.contains("exact"))
        return "exact (no truncation)";
    std::string out;
    for (const auto& item : w.items()) {
        if (!out.empty())
            out += ", ";
        std::string key = item.key();
        std::replace(key.begin(), key.end(), '_', ' ');
        out += key + " " + item.value().dump();
    }
    return out;
}

std::string grid_text(const ojson& entries) {
    if (entries.empty())
        return "  (all entries vanish)\n";
    int pmin = 0, pmax = 0, qmin = 0, qmax = 0;
    bool first = true;
    for (const ojson& e : entries) {
        int p = e["p"].get<int>(), q = e["q"].get<int>();
        if (first) {
            pmin = pmax = p;
            qmin = qmax = q;
            first = false;
        }
        pmin = std::min(pmin, p);
        pmax = std::max(pmax, p);
        qmin = std::min(qmin, q);
        qmax = std::max(qmax, q);
    }
    std::map<std::pair<int, int>, int> dims;
    for (const ojson& e : entries)
        dims[{e["p"].get<int>(), e["q"].get<int>()}] = e["dim"].get<int>();
    std::string out = "  q\\p |";
    for (int p = pmin; p <= pmax; ++p)
        out += pad(std::to_string(p), 5);
    out += "\n  ----+" + std::string(static_cast<size_t>(pmax - pmin + 1) * 5, '-') + "\n";
    for (int q = qmax; q >= qmin; --q) {
        out += pad(std::to_string(q), 5) + " |";
        for (int p = pmin; p <= pmax; ++p) {
            auto it = dims.find({p, q});
            out += pad(it == dims.end() ? "." : std::to_string(it->second), 5);
        }
        out += "\n";
    }
    return out;
}

std::string render_pages_text(const ojson& r) {
    std::string out = "spectral sequence pages (" + r["mode"].get<std::string>() + ") over " +
                      r["field"].get<std::string>() + "\n";
    if (r.contains("variance"))
        out += "variance: " + r["variance"].get<std::string>() + "\n";
    out += "window: " + window_text(r["window"]) + "\n";
    for (const ojson& page : r["pages"]) {
        out += "\npage E^" +
               (page["r"].is_string() ? page["r"].get<std::string>()
                                      : std::to_string(page["r"].get<int>())) +
               "\n";
        out += grid_text(page["entries"]);
    }
    const ojson& conv = r["convergence"];
    out += "\nconvergence: " + std::string(conv["ok"].get<bool>() ? "ok" : "FAILED") + "\n";
    if (conv.contains("abutment"))
        for (const ojson& row : conv["abutment"])
            out += "  n=" + std::to_string(row["n"].get<int>()) + ": E^infinity column sum " +
                   std::to_string(row["einfty_column_sum"].get<int>()) + ", homology " +
                   std::to_string(row["homology_dim"].get<int>()) +
                   (row["ok"].get<bool>() ? "  [ok]" : "  [MISMATCH]") + "\n";
    if (conv.contains("degrees"))
        for (const ojson& row : conv["degrees"])
            out += "  n=" + std::to_string(row["n"].get<int>()) + ": homology " +
                   std::to_string(row["homology_dim"].get<int>()) +
                   (row["ok"].get<bool>() ? "  [ok]" : "  [MISMATCH]") + "\n";
    if (r.contains("first_quadrant_ok"))
        out += std::string("first quadrant: ") +
               (r["first_quadrant_ok"].get<bool>() ? "ok" : "VIOLATED") + "\n";
    if (r.contains("third_quadrant_ok"))
        out += std::string("third quadrant: ") +
               (r["third_quadrant_ok"].get<bool>() ? "ok" : "VIOLATED") + "\n";
    return out;
}

std::string render_table_text(const ojson& r, const std::string& what,
                              const std::string& index_name) {
    std::string out = what + " over " + r["field"].get<std::string>() + "\n";
    out += "window: " + window_text(r["window"]) + "\n";
    auto row_text = [&](const ojson& row, const char* degree_key) {
        std::string line = "  " + index_name + "=" + std::to_string(row["i"].get<int>()) +
                           ": total " + std::to_string(row["total"].get<int>());
        if (!row[degree_key].empty()) {
            line += "   (";
            bool first = true;
            for (const auto& item : row[degree_key].items()) {
                if (!first)
                    line += ", ";
                first = false;
                line += item.key() + ": " + std::to_string(item.value().get<int>());
            }
            line += ")";
        }
        return line + "\n";
    };
    if (r.contains("table"))
        for (const ojson& row : r["table"])
            out += row_text(row, "by_degree");
    if (r.contains("homology")) {
        out += "homology (by weight):\n";
        for (const ojson& row : r["homology"])
            out += row_text(row, "by_weight");
        out += "cohomology (by weight):\n";
        for (const ojson& row : r["cohomology"])
            out += row_text(row, "by_weight");
    }
    return out;
}

std::string render_five_term_side(const char* title, const ojson& s) {
    std::string out = std::string(title) + ":\n";
    const ojson& terms = s["terms"];
    const ojson& ranks = s["map_ranks"];
    for (size_t k = 0; k < terms.size(); ++k) {
        const ojson& t = terms[k];
        out += "  [" + std::to_string(k) + "] " + t["label"].get<std::string>() + ": dim " +
               std::to_string(t["dim"].get<int>()) + " (reference " +
               std::to_string(t["reference_dim"].get<int>()) + ")" +
               (t["ok"].get<bool>() ? "  [ok]" : "  [MISMATCH]") + "\n";
        if (k + 1 < terms.size())
            out += "        | rank " + std::to_string(ranks[k].get<int>()) + "\n";
    }
    out += "  joints exact:";
    for (const ojson& b : s["joints_exact"])
        out += b.get<bool>() ? " yes" : " NO";
    out += std::string("\n  abutment: ") + (s["abutment_ok"].get<bool>() ? "ok" : "MISMATCH") +
           "\n  sequence exact: " + (s["exact"].get<bool>() ? "yes" : "NO") + "\n";
    return out;
}

std::string render_check_text(const ojson& r) {
    std::string out = "invariant check, seed " + r["seed"].dump() +
                      (r["quick"].get<bool>() ? " (quick)" : "") + "\n";
    if (!r["inject"].get<std::string>().empty())
        out += "deliberate injection: " + r["inject"].get<std::string>() + "\n";
    for (const ojson& p : r["properties"])
        out += std::string(p["ok"].get<bool>() ? "  [ ok ] " : "  [FAIL] ") +
               p["name"].get<std::string>() + " (" + std::to_string(p["cases"].get<int>()) +
               " cases)\n";
    if (r.contains("failure")) {
        const ojson& f = r["failure"];
        out += "failure: property '" + f["property"].get<std::string>() + "', seed " +
               f["seed"].dump() + ", case " + std::to_string(f["case"].get<int>()) + "\n  " +
               f["detail"].get<std::string>() + "\n  repro: " + f["repro"].dump() + "\n";
    }
    out += std::string("overall: ") + (r["ok"].get<bool>() ? "ok" : "FAILED") + "\n";
    return out;
}

} // namespace

std::string render_text(const std::string& json_report) {
    ojson r;
    try {
        r = ojson::parse(json_report);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error("report is not valid JSON (byte " + std::to_string(e.byte) + ")");
    }
    const std::string cmd = r.value("command", "");
    if (cmd == "pages")
        return render_pages_text(r);
    if (cmd == "tor")
        return render_table_text(r, "derived tensor table", "i");
    if (cmd == "ext")
        return render_table_text(r, "derived hom table", "i");
    if (cmd == "aq")
        return render_table_text(r, "cotangent homotopy", "i");
    if (cmd == "five-term") {
        std::string out = "five-term exact sequences over " + r["field"].get<std::string>() +
                          "\n";
        out += render_five_term_side("homological", r["homological"]);
        out += render_five_term_side("cohomological", r["cohomological"]);
        out += std::string("overall: ") + (r["ok"].get<bool>() ? "ok" : "FAILED") + "\n";
        return out;
    }
    if (cmd == "check")
        return render_check_text(r);
    throw parse_error("report carries no recognized command");
}

JobResult run_job(const JobSpec& job) {
    static const std::set<std::string> commands{"pages", "tor", "ext",
                                                "aq",    "five-term", "check"};
    if (!commands.count(job.command))
        throw parse_error(job.command.empty()
                              ? std::string("no command given")
                              : "unknown command '" + job.command + "'");
    const bool needs_base = job.command != "check" &&
                            !(job.command == "pages" && job.filtration.has_value());
    if (needs_base && !job.base)
        throw parse_error("command '" + job.command + "' needs a base algebra");

    ojson report;
    if (job.command == "check") {
        report = cmd_check(job);
    } else if (job.command == "pages" && job.filtration) {
        report = cmd_pages_filtration(job);
    } else {
        GradedAlgebraPresentation A =
            job.target ? *job.target : residue_field_of(*job.base);
        if (job.command == "pages")
            report = cmd_pages_fundamental(job, A);
        else if (job.command == "tor")
            report = cmd_derived(job, false, A);
        else if (job.command == "ext")
            report = cmd_derived(job, true, A);
        else if (job.command == "aq")
            report = cmd_aq(job, A);
        else
            report = cmd_five_term(job, A);
    }

    JobResult res;
    res.ok = report.value("ok", true);
    if (!res.ok)
        res.failure = first_failure(report);
    res.json = report.dump(2) + "\n";
    return res;
}

} // namespace specseq

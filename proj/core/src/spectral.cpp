#include "specseq/spectral.hpp"

#include <algorithm>

namespace specseq {

FilteredComplex::FilteredComplex(ChainComplex total, int p_min,
                                 std::vector<std::vector<Subspace>> layers)
    : total_(std::move(total)), p_min_(p_min), layers_(std::move(layers)) {
    if (layers_.empty())
        throw invariant_error("filtered complex: at least one layer required");
    size_t degrees = static_cast<size_t>(total_.hi() - total_.lo() + 1);
    for (size_t i = 0; i < layers_.size(); ++i) {
        if (layers_[i].size() != degrees)
            throw invariant_error("filtered complex: layer " + std::to_string(p_min_ + (int)i) +
                                  " must cover every degree of the support");
        for (size_t k = 0; k < degrees; ++k) {
            int n = total_.lo() + static_cast<int>(k);
            const Subspace& s = layers_[i][k];
            require_same_field(field(), s.field(), "filtered complex");
            if (s.ambient() != total_.dim(n))
                throw invariant_error("filtered complex: layer ambient mismatch in degree " +
                                      std::to_string(n));
            if (i > 0 && !s.contains(layers_[i - 1][k]))
                throw invariant_error("filtered complex: layers not nested in degree " +
                                      std::to_string(n));
            if (!layer(p_min_ + static_cast<int>(i), n - 1).contains(s.image_under(total_.diff(n))))
                throw invariant_error("filtered complex: layer " +
                                      std::to_string(p_min_ + (int)i) +
                                      " is not a subcomplex in degree " + std::to_string(n));
        }
    }
    // the top layer must be everything, so that page support is exactly
    // [p_min, p_max]; append the total space as a final layer if needed
    for (size_t k = 0; k < degrees; ++k) {
        int n = total_.lo() + static_cast<int>(k);
        if (layers_.back()[k].dim() != total_.dim(n))
            throw invariant_error("filtered complex: top layer must equal the whole complex "
                                  "(degree " + std::to_string(n) + ")");
    }
}

Subspace FilteredComplex::layer(int p, int n) const {
    int amb = total_.dim(n);
    if (n < total_.lo() || n > total_.hi() || p < p_min_)
        return Subspace(field(), amb);
    if (p > p_max())
        return Subspace::full(field(), amb);
    return layers_[p - p_min_][n - total_.lo()];
}

Subspace FilteredComplex::iterm(int r, int p, int q) const {
    int n = p + q;
    return layer(p - r, n - 1).preimage_under(total_.diff(n)).intersect(layer(p, n));
}

Subspace FilteredComplex::jterm(int r, int p, int q) const {
    int n = p + q;
    return layer(p + r - 1, n + 1).image_under(total_.diff(n + 1)).intersect(layer(p, n));
}

Subquotient FilteredComplex::entry(int r, int p, int q) const {
    if (r < 1)
        throw invariant_error("page entries start at r = 1");
    return Subquotient(iterm(r, p, q), jterm(r, p, q).sum(iterm(r - 1, p - 1, q + 1)));
}

Matrix FilteredComplex::differential(int r, int p, int q) const {
    int n = p + q;
    return induced_map(total_.diff(n), entry(r, p, q), entry(r, p - r, q + r - 1));
}

int FilteredComplex::stabilization_bound(int p) const {
    return std::max(p - p_min_ + 1, p_max() - p + 2);
}

Subquotient FilteredComplex::einfty(int p, int q) const {
    int n = p + q;
    Subspace Z = total_.cycles(n);
    Subspace B = total_.boundaries(n);
    Subspace Fp = layer(p, n), below = layer(p - 1, n);
    Subquotient closed(Z.intersect(Fp).sum(below), B.intersect(Fp).sum(below));

    int r0 = stabilization_bound(p);
    Subquotient stab = entry(r0, p, q);
    Subquotient stab_next = entry(r0 + 1, p, q);
    if (stab.dim() != stab_next.dim() || stab.dim() != closed.dim())
        throw invariant_error("einfty: stabilized page disagrees with closed form at (" +
                              std::to_string(p) + "," + std::to_string(q) + ")");
    Matrix cmp = induced_map(Matrix::identity(field(), total_.dim(n)), stab, closed);
    if (cmp.rank() != closed.dim())
        throw invariant_error("einfty: comparison with stabilized page not invertible at (" +
                              std::to_string(p) + "," + std::to_string(q) + ")");
    return closed;
}

Subquotient FilteredComplex::homology_filtration_piece(int p, int n) const {
    Subspace Z = total_.cycles(n);
    Subspace B = total_.boundaries(n);
    return Subquotient(Z.intersect(layer(p, n)).sum(B), B);
}

Matrix FilteredComplex::page_turn_iso(int r, int p, int q) const {
    Subquotient er = entry(r, p, q);
    Subquotient er1 = entry(r + 1, p, q);
    Matrix dout = differential(r, p, q);
    Matrix din = differential(r, p + r, q - r + 1);

    // homology of (E^r, d^r) at (p,q), taken inside E^r coordinates
    Subquotient homr(Subspace::span(dout.kernel()), Subspace::from_columns(din));

    // transport: lift a class to the total complex, split off the part in
    // the deeper I-term, and read coordinates on the next page
    Matrix deep = iterm(r - 1, p - 1, q + 1).basis();
    Matrix stacked = er1.top().basis().vstack(deep).transpose();
    auto transport = [&](const Matrix& coords_in_er) {
        Matrix ambient = er.coset_basis().transpose() * coords_in_er;
        Matrix split = stacked.solve(ambient);
        std::vector<int> head(er1.top().dim());
        for (size_t i = 0; i < head.size(); ++i)
            head[i] = static_cast<int>(i);
        return er1.coords(er1.top().basis().transpose() * split.select_rows(head));
    };

    if (!transport(homr.bottom().basis().transpose()).is_zero())
        throw invariant_error("page turn: boundary classes do not die on the next page");
    Matrix iso = transport(homr.coset_basis().transpose());
    if (iso.rows() != iso.cols() || iso.rank() != iso.rows())
        throw invariant_error("page turn: comparison to the next page is not invertible at (" +
                              std::to_string(p) + "," + std::to_string(q) + ")");
    return iso;
}

SpectralPage::SpectralPage(std::shared_ptr<const FilteredComplex> parent, int r, PageFrame frame,
                           std::map<std::pair<int, int>, Subquotient> entries,
                           std::map<std::pair<int, int>, Matrix> differentials)
    : parent_(std::move(parent)), r_(r), frame_(frame), entries_(std::move(entries)),
      differentials_(std::move(differentials)) {
    if (!parent_)
        throw invariant_error("spectral page without a parent complex");
}

std::pair<int, int> SpectralPage::to_plain(int p, int q) const {
    switch (frame_) {
    case PageFrame::plain:
        return {p, q};
    case PageFrame::shifted_homological:
        return {-q, p + 2 * q};
    case PageFrame::shifted_cohomological:
        return {1 - q, p + 2 * q - 1};
    }
    return {p, q};
}

int SpectralPage::dim(int p, int q) const {
    const Subquotient* e = find(p, q);
    return e ? e->dim() : 0;
}

const Subquotient* SpectralPage::find(int p, int q) const {
    auto it = entries_.find({p, q});
    return it == entries_.end() ? nullptr : &it->second;
}

Matrix SpectralPage::d(int p, int q) const {
    auto it = differentials_.find({p, q});
    if (it != differentials_.end())
        return it->second;
    return Matrix(parent_->field(), dim(p - r_, q + r_ - 1), dim(p, q));
}

SpectralPage make_page(std::shared_ptr<const FilteredComplex> F, int r) {
    if (r < 1)
        throw invariant_error("pages start at r = 1");
    std::map<std::pair<int, int>, Subquotient> entries;
    std::map<std::pair<int, int>, Matrix> diffs;
    const ChainComplex& X = F->total();
    for (int p = F->p_min(); p <= F->p_max(); ++p)
        for (int n = X.lo(); n <= X.hi(); ++n) {
            int q = n - p;
            Subquotient e = F->entry(r, p, q);
            if (e.dim() > 0)
                entries.emplace(std::make_pair(p, q), std::move(e));
        }
    for (const auto& [pq, e] : entries)
        diffs.emplace(pq, F->differential(r, pq.first, pq.second));
    return SpectralPage(std::move(F), r, PageFrame::plain, std::move(entries), std::move(diffs));
}

SpectralPage make_page(const FilteredComplex& F, int r) {
    return make_page(std::make_shared<const FilteredComplex>(F), r);
}

namespace {

SpectralPage reindex(const SpectralPage& page, PageFrame frame) {
    if (page.frame() != PageFrame::plain)
        throw invariant_error("reindexing expects a plain-frame page");
    auto move_key = [&](std::pair<int, int> pq) -> std::pair<int, int> {
        auto [p, q] = pq;
        if (frame == PageFrame::shifted_homological)
            return {2 * p + q, -p};
        return {2 * p + q - 1, -p + 1};
    };
    std::map<std::pair<int, int>, Subquotient> entries;
    std::map<std::pair<int, int>, Matrix> diffs;
    for (const auto& [pq, e] : page.entries())
        entries.emplace(move_key(pq), e);
    for (const auto& [pq, e] : page.entries())
        diffs.emplace(move_key(pq), page.d(pq.first, pq.second));
    return SpectralPage(page.parent_ptr(), page.r() + 1, frame, std::move(entries),
                        std::move(diffs));
}

} // namespace

SpectralPage reindex_E1_to_E2(const SpectralPage& page) {
    return reindex(page, PageFrame::shifted_homological);
}

SpectralPage reindex_E1_to_E2_cohomological(const SpectralPage& page) {
    return reindex(page, PageFrame::shifted_cohomological);
}

ConvergenceReport check_convergence(const FilteredComplex& F) {
    ConvergenceReport rep;
    rep.ok = true;
    const ChainComplex& X = F.total();
    for (int n = X.lo(); n <= X.hi(); ++n) {
        ConvergenceReport::Degree deg;
        deg.n = n;
        deg.h_dim = X.betti(n);
        int prev = 0;
        int total_graded = 0;
        deg.ok = true;
        for (int p = F.p_min(); p <= F.p_max(); ++p) {
            int u = F.homology_filtration_piece(p, n).dim();
            int einf = F.einfty(p, n - p).dim();
            deg.u_dims.push_back(u);
            deg.graded_dims.push_back(u - prev);
            deg.einfty_dims.push_back(einf);
            if (u - prev != einf)
                deg.ok = false;
            total_graded += u - prev;
            prev = u;
        }
        if (total_graded != deg.h_dim || prev != deg.h_dim)
            deg.ok = false;
        rep.ok = rep.ok && deg.ok;
        rep.degrees.push_back(std::move(deg));
    }
    return rep;
}

ConvergenceBounds convergence_bounds(const FilteredComplex& F) {
    ConvergenceBounds rep;
    rep.all_found = true;
    const ChainComplex& X = F.total();
    for (int n = X.lo(); n <= X.hi(); ++n) {
        ConvergenceBounds::Degree deg;
        deg.n = n;
        Subquotient h = X.homology(n);
        auto sub_homology = [&](int p) {
            Subspace zc = X.cycles(n).intersect(F.layer(p, n));
            Subspace bd = Subspace::from_columns(
                X.diff(n + 1) * F.layer(p, n + 1).basis().transpose());
            return Subquotient(zc, bd);
        };
        // alpha: longest prefix of vanishing sub-homology, starting below
        // the window where F^p = 0 vanishes trivially
        int a = F.p_min() - 1;
        while (a < F.p_max() && sub_homology(a + 1).dim() == 0)
            ++a;
        deg.alpha = a;
        // beta: smallest p from which the comparison to H_n(X) is an
        // isomorphism all the way up; above the window it trivially is
        int b = F.p_max() + 1;
        while (b > F.p_min()) {
            Subquotient sh = sub_homology(b - 1);
            if (sh.dim() != h.dim())
                break;
            Matrix cmp = induced_map(Matrix::identity(F.field(), X.dim(n)), sh, h);
            if (cmp.rank() != h.dim())
                break;
            --b;
        }
        deg.beta = b;
        rep.degrees.push_back(deg);
    }
    return rep;
}

bool FiveTermReport::all_exact() const {
    return exact[0] && exact[1] && exact[2] && exact[3] && abutment_consistent;
}

namespace {

Matrix invert(const Matrix& m, const char* where) {
    if (m.rows() != m.cols())
        throw invariant_error(std::string(where) + ": comparison map is not square");
    return m.solve(Matrix::identity(m.field(), m.rows()));
}

/* The subquotient ladder shared by the four outer maps of a five-term
 * sequence, at frame position (pp,qq) with total degree n = pp+qq and
 * engine page sigma:
 *   H     = (Z, B)                                    homology of X_n
 *   C1    = (Z, Z cap F^{p-1} + B)                    H modulo deeper pieces
 *   C2    = (Z cap F^p, Z cap F^{p-1} + B cap F^p)    a stable-page model
 *   C2I   = (Z cap F^p + I', B cap F^p + I')          I' = I^{sigma-1}_{p-1,q+1}
 *   E     = (I^sigma, J^sigma + I')                   the page entry itself
 * C2 -> C1 and C2 -> C2I are isomorphisms whenever the vanishing
 * hypotheses hold; every containment is verified by induced_map, so a
 * violated hypothesis surfaces as invariant_error rather than silence. */
struct EdgeLadder {
    Subquotient H, C1, C2, C2I, E;
    Matrix id;
};

EdgeLadder make_ladder(const SpectralPage& page, int pp, int qq) {
    const FilteredComplex& F = page.parent();
    auto [po, qo] = page.to_plain(pp, qq);
    int n = po + qo;
    int sigma = page.engine_r();
    const ChainComplex& X = F.total();
    Subspace Z = X.cycles(n), B = X.boundaries(n);
    Subspace Fp = F.layer(po, n), Fbelow = F.layer(po - 1, n);
    Subspace ZFp = Z.intersect(Fp), ZFb = Z.intersect(Fbelow), BFp = B.intersect(Fp);
    Subspace deep = F.iterm(sigma - 1, po - 1, qo + 1);
    return EdgeLadder{Subquotient(Z, B),
                      Subquotient(Z, ZFb.sum(B)),
                      Subquotient(ZFp, ZFb.sum(BFp)),
                      Subquotient(ZFp.sum(deep), BFp.sum(deep)),
                      F.entry(sigma, po, qo),
                      Matrix::identity(F.field(), X.dim(n))};
}

/* H_n -> E at frame position (pp,qq); an edge projection composed with
 * the inclusion of the stable classes into the page entry. */
Matrix homology_to_edge(const SpectralPage& page, int pp, int qq) {
    EdgeLadder L = make_ladder(page, pp, qq);
    Matrix h_to_c1 = induced_map(L.id, L.H, L.C1);
    Matrix c2_to_c1 = induced_map(L.id, L.C2, L.C1);
    Matrix c2_to_c2i = induced_map(L.id, L.C2, L.C2I);
    Matrix c2i_to_e = induced_map(L.id, L.C2I, L.E);
    return c2i_to_e * c2_to_c2i * invert(c2_to_c1, "five-term edge") * h_to_c1;
}

/* E -> H_n at frame position (pp,qq); the page entry collapses onto its
 * stable part, which includes into homology. */
Matrix edge_to_homology(const SpectralPage& page, int pp, int qq) {
    EdgeLadder L = make_ladder(page, pp, qq);
    Matrix e_to_c2i = induced_map(L.id, L.E, L.C2I);
    Matrix c2_to_c2i = induced_map(L.id, L.C2, L.C2I);
    Matrix c2_to_h = induced_map(L.id, L.C2, L.H);
    return c2_to_h * invert(c2_to_c2i, "five-term edge") * e_to_c2i;
}

bool exact_at(const Matrix& incoming, const Matrix& outgoing) {
    return Subspace::from_columns(incoming) == Subspace::span(outgoing.kernel());
}

bool dims_match_abutment(const std::map<int, Subquotient>& abutment, int degree, int expected) {
    auto it = abutment.find(degree);
    return it != abutment.end() && it->second.dim() == expected;
}

} // namespace

FiveTermReport five_term_homological(const SpectralPage& E2,
                                     const std::map<int, Subquotient>& abutment, int n) {
    if (E2.r() != 2)
        throw invariant_error("five-term extraction expects an E^2 page");
    for (const auto& [pq, e] : E2.entries()) {
        if (e.dim() == 0)
            continue;
        auto [p, q] = pq;
        if (p < 0 || q < 0)
            throw invariant_error("five-term: page is not first quadrant, nonzero entry at (" +
                                  std::to_string(p) + "," + std::to_string(q) + ")");
        if (p >= 2 && q <= n - 2)
            throw invariant_error("five-term: vanishing hypothesis fails at (" +
                                  std::to_string(p) + "," + std::to_string(q) + ")");
    }
    const FilteredComplex& F = E2.parent();
    FiveTermReport rep;
    rep.n = n;
    rep.homological = true;
    rep.maps = {homology_to_edge(E2, 2, n - 1), E2.d(2, n - 1), edge_to_homology(E2, 0, n),
                homology_to_edge(E2, 1, n - 1)};
    rep.dims = {F.total().betti(n + 1), E2.dim(2, n - 1), E2.dim(0, n), F.total().betti(n),
                E2.dim(1, n - 1)};
    rep.exact = {exact_at(rep.maps[0], rep.maps[1]), exact_at(rep.maps[1], rep.maps[2]),
                 exact_at(rep.maps[2], rep.maps[3]), rep.maps[3].rank() == rep.dims[4]};
    rep.abutment_consistent = dims_match_abutment(abutment, n + 1, rep.dims[0]) &&
                              dims_match_abutment(abutment, n, rep.dims[3]);
    return rep;
}

FiveTermReport five_term_cohomological(const SpectralPage& E2,
                                       const std::map<int, Subquotient>& abutment, int n) {
    if (E2.r() != 2)
        throw invariant_error("five-term extraction expects an E^2 page");
    for (const auto& [pq, e] : E2.entries()) {
        if (e.dim() == 0)
            continue;
        auto [p, q] = pq;
        if (p > 0 || q > 0)
            throw invariant_error("five-term: page is not third quadrant, nonzero entry at (" +
                                  std::to_string(p) + "," + std::to_string(q) + ")");
        if (p <= -2 && q >= 2 - n)
            throw invariant_error("five-term: vanishing hypothesis fails at (" +
                                  std::to_string(p) + "," + std::to_string(q) + ")");
    }
    const FilteredComplex& F = E2.parent();
    FiveTermReport rep;
    rep.n = n;
    rep.homological = false;
    rep.maps = {edge_to_homology(E2, -1, 1 - n), homology_to_edge(E2, 0, -n), E2.d(0, -n),
                edge_to_homology(E2, -2, 1 - n)};
    rep.dims = {E2.dim(-1, 1 - n), F.total().betti(-n), E2.dim(0, -n), E2.dim(-2, 1 - n),
                F.total().betti(-n - 1)};
    rep.exact = {rep.maps[0].kernel().rows() == 0, exact_at(rep.maps[0], rep.maps[1]),
                 exact_at(rep.maps[1], rep.maps[2]), exact_at(rep.maps[2], rep.maps[3])};
    rep.abutment_consistent = dims_match_abutment(abutment, -n, rep.dims[1]) &&
                              dims_match_abutment(abutment, -n - 1, rep.dims[4]);
    return rep;
}

} // namespace specseq

#include "specseq/subspace.hpp"

#include <algorithm>

namespace specseq {

Subspace::Subspace(Field f, int ambient_dim) : ambient_(ambient_dim), basis_(f, 0, ambient_dim) {
    if (ambient_dim < 0)
        throw invariant_error("negative ambient dimension");
}

Subspace Subspace::full(Field f, int ambient_dim) {
    return span(Matrix::identity(f, ambient_dim));
}

Subspace Subspace::span(const Matrix& gens) {
    Echelon e = gens.rref();
    return Subspace(std::move(e.mat), std::move(e.pivots), gens.cols());
}

bool Subspace::operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
}

bool Subspace::contains(const Subspace& o) const {
    require_same_field(field(), o.field(), "subspace contains");
    if (ambient_ != o.ambient_)
        throw invariant_error("subspace contains: ambient dimension mismatch");
    if (o.dim() == 0)
        return true;
    return basis_.transpose().solvable(o.basis_.transpose());
}

bool Subspace::contains_vector(const Matrix& v) const {
    if (v.rows() != ambient_ || v.cols() != 1)
        throw invariant_error("contains_vector: expected a single ambient column");
    return basis_.transpose().solvable(v);
}

Subspace Subspace::sum(const Subspace& o) const {
    require_same_field(field(), o.field(), "subspace sum");
    if (ambient_ != o.ambient_)
        throw invariant_error("subspace sum: ambient dimension mismatch");
    return span(basis_.vstack(o.basis_));
}

/* Both spaces are cut out by the kernels of their bases (rows of
 * basis.kernel() are the linear functionals vanishing on the space), so
 * the intersection is the common kernel. */
Subspace Subspace::intersect(const Subspace& o) const {
    require_same_field(field(), o.field(), "subspace intersect");
    if (ambient_ != o.ambient_)
        throw invariant_error("subspace intersect: ambient dimension mismatch");
    Matrix cut = basis_.kernel().vstack(o.basis_.kernel());
    return span(cut.kernel());
}

Subspace Subspace::preimage_under(const Matrix& f) const {
    require_same_field(field(), f.field(), "subspace preimage");
    if (f.rows() != ambient_)
        throw invariant_error("subspace preimage: map does not land in ambient space");
    // f x in span(basis) iff (cutting functionals of the span) . f x = 0
    return span((basis_.kernel() * f).kernel());
}

Subspace Subspace::image_under(const Matrix& f) const {
    require_same_field(field(), f.field(), "subspace image");
    if (f.cols() != ambient_)
        throw invariant_error("subspace image: map not defined on ambient space");
    return from_columns(f * basis_.transpose());
}

Matrix Subspace::coords(const Matrix& vectors) const {
    if (vectors.rows() != ambient_)
        throw invariant_error("subspace coords: wrong ambient dimension");
    return basis_.transpose().solve(vectors);
}

Subquotient::Subquotient(Subspace top, Subspace bottom)
    : top_(std::move(top)), bottom_(std::move(bottom)), coset_basis_(top_.field(), 0, 0) {
    require_same_field(top_.field(), bottom_.field(), "subquotient");
    if (top_.ambient() != bottom_.ambient())
        throw invariant_error("subquotient: ambient dimension mismatch");
    if (!top_.contains(bottom_))
        throw invariant_error("subquotient: bottom is not contained in top");
    /* Pivot columns of bottom form a subset of the pivot columns of top
     * (the leading column of any element of top is a top pivot).  The top
     * basis rows at the remaining pivots already vanish on every top
     * pivot column but their own, so they are reduced against bottom and
     * span a complement of it. */
    std::vector<int> keep;
    const auto& tp = top_.pivots();
    const auto& bp = bottom_.pivots();
    for (size_t i = 0; i < tp.size(); ++i)
        if (std::find(bp.begin(), bp.end(), tp[i]) == bp.end())
            keep.push_back(static_cast<int>(i));
    coset_basis_ = top_.basis().select_rows(keep);
}

Matrix Subquotient::coords(const Matrix& vectors) const {
    if (vectors.rows() != ambient())
        throw invariant_error("subquotient coords: wrong ambient dimension");
    // v = coset_basis^T c + bottom-part uniquely, since the two stacks are
    // independent and together span top; unsolvable => v not in top.
    Matrix stacked = coset_basis_.vstack(bottom_.basis()).transpose();
    Matrix sol = stacked.solve(vectors);
    std::vector<int> first(dim());
    for (int i = 0; i < dim(); ++i)
        first[i] = i;
    return sol.select_rows(first);
}

bool Subquotient::same_class(const Matrix& v, const Matrix& w) const {
    if (!top_.contains_vector(v) || !top_.contains_vector(w))
        throw invariant_error("same_class: vector outside the quotient's top space");
    return bottom_.contains_vector(v - w);
}

Matrix induced_map(const Matrix& f, const Subquotient& from, const Subquotient& to) {
    require_same_field(f.field(), from.field(), "induced map");
    if (f.cols() != from.ambient() || f.rows() != to.ambient())
        throw invariant_error("induced map: ambient shape mismatch");
    if (!to.top().contains(from.top().image_under(f)))
        throw invariant_error("induced map: image of top escapes target top");
    if (!to.bottom().contains(from.bottom().image_under(f)))
        throw invariant_error("induced map: image of bottom escapes target bottom");
    if (from.dim() == 0)
        return Matrix(f.field(), to.dim(), 0);
    return to.coords(f * from.coset_basis().transpose());
}

ModularIso modular_iso(const Subspace& N, const Subspace& K, const Subspace& L) {
    require_same_field(N.field(), K.field(), "modular iso");
    require_same_field(N.field(), L.field(), "modular iso");
    if (!K.contains(L))
        throw invariant_error("modular iso: L is not contained in K");
    Subquotient left(N.sum(K), N.sum(L));
    Subquotient right(K, K.intersect(N).sum(L));
    Matrix id = Matrix::identity(N.field(), N.ambient());
    Matrix iso = induced_map(id, right, left);
    if (iso.rows() != iso.cols() || iso.rank() != iso.rows())
        throw invariant_error("modular iso: induced map is not invertible");
    return {std::move(left), std::move(right), std::move(iso)};
}

} // namespace specseq

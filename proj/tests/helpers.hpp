#pragma once

#include <random>
#include <string>
#include <vector>

#include "specseq/complexes.hpp"
#include "specseq/matrix.hpp"
#include "specseq/spectral.hpp"
#include "specseq/subspace.hpp"

namespace specseq::testing {

/* Build a matrix from integer rows; an empty list gives a 0 x 0 matrix. */
inline Matrix mat(Field f, const std::vector<std::vector<long>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    Matrix m(f, r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            m.set(i, j, rows[i][j]);
    return m;
}

/* Build a matrix from string entries ("3/4" etc.). */
inline Matrix mats(Field f, const std::vector<std::vector<std::string>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    Matrix m(f, r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            m.set(i, j, rows[i][j]);
    return m;
}

/* Column vector from integers. */
inline Matrix colv(Field f, const std::vector<long>& entries) {
    Matrix m(f, static_cast<int>(entries.size()), 1);
    for (size_t i = 0; i < entries.size(); ++i)
        m.set(static_cast<int>(i), 0, entries[i]);
    return m;
}

inline Matrix random_matrix(Field f, int rows, int cols, std::mt19937& rng, long lo = -4, long hi = 4) {
    std::uniform_int_distribution<long> dist(lo, hi);
    Matrix m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m.set(i, j, dist(rng));
    return m;
}

inline Subspace random_subspace(Field f, int ambient, int gens, std::mt19937& rng) {
    return Subspace::span(random_matrix(f, gens, ambient, rng, 0, 100));
}

/* Random chain complex: differentials are built top-down as random
 * combinations of the kernel below, so d∘d = 0 holds by construction. */
inline ChainComplex random_complex(Field f, int lo, int hi, int maxdim, std::mt19937& rng) {
    std::uniform_int_distribution<int> dd(0, maxdim);
    std::vector<int> dims;
    for (int n = lo; n <= hi; ++n)
        dims.push_back(dd(rng));
    std::vector<Matrix> diffs;
    diffs.emplace_back(f, 0, dims[0]);
    for (size_t k = 1; k < dims.size(); ++k) {
        Matrix kb = diffs[k - 1].kernel(); // rows span ker d_{n-1}
        Matrix coeff = random_matrix(f, kb.rows(), dims[k], rng, -2, 2);
        diffs.push_back(kb.transpose() * coeff);
    }
    return ChainComplex(f, lo, std::move(dims), std::move(diffs));
}

/* Random filtration of an existing complex.  Each step adds a randomly
 * generated subcomplex G with G_n = S_n + d(S_{n+1}) for random S (the
 * boundary closure makes G a subcomplex); layers accumulate and the top
 * layer is forced to be everything. */
inline FilteredComplex random_filtration(const ChainComplex& X, int p_min, int length,
                                         std::mt19937& rng) {
    std::uniform_int_distribution<int> gens(0, 2);
    std::vector<std::vector<Subspace>> layers;
    std::vector<Subspace> prev;
    for (int n = X.lo(); n <= X.hi(); ++n)
        prev.emplace_back(X.field(), X.dim(n));
    for (int step = 0; step + 1 < length; ++step) {
        std::vector<Subspace> spans;
        for (int n = X.lo(); n <= X.hi() + 1; ++n)
            spans.push_back(random_subspace(X.field(), X.dim(n), gens(rng), rng));
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

} // namespace specseq::testing

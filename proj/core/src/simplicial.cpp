#include "specseq/simplicial.hpp"

#include <map>

namespace specseq {

SimplicialModule::SimplicialModule(Field f, std::vector<int> dims,
                                   std::vector<std::vector<Matrix>> faces,
                                   std::vector<std::vector<Matrix>> degeneracies)
    : field_(std::move(f)), dims_(std::move(dims)), faces_(std::move(faces)),
      degeneracies_(std::move(degeneracies)) {
    if (dims_.empty())
        throw invariant_error("simplicial module: need at least level 0");
    size_t n_levels = dims_.size();
    if (faces_.size() != n_levels - 1 || degeneracies_.size() != n_levels - 1)
        throw invariant_error("simplicial module: face/degeneracy family count must match "
                              "the truncation level");
    for (size_t n = 1; n < n_levels; ++n) {
        if (faces_[n - 1].size() != n + 1)
            throw invariant_error("simplicial module: level " + std::to_string(n) + " needs " +
                                  std::to_string(n + 1) + " faces");
        for (const Matrix& m : faces_[n - 1]) {
            require_same_field(field_, m.field(), "simplicial module");
            if (m.rows() != dims_[n - 1] || m.cols() != dims_[n])
                throw invariant_error("simplicial module: face shape mismatch at level " +
                                      std::to_string(n));
        }
    }
    for (size_t n = 0; n + 1 < n_levels; ++n) {
        if (degeneracies_[n].size() != n + 1)
            throw invariant_error("simplicial module: level " + std::to_string(n) + " needs " +
                                  std::to_string(n + 1) + " degeneracies");
        for (const Matrix& m : degeneracies_[n]) {
            require_same_field(field_, m.field(), "simplicial module");
            if (m.rows() != dims_[n + 1] || m.cols() != dims_[n])
                throw invariant_error("simplicial module: degeneracy shape mismatch at level " +
                                      std::to_string(n));
        }
    }
}

SimplicialModule SimplicialModule::constant(Field f, int dim, int trunc) {
    std::vector<int> dims(static_cast<size_t>(trunc) + 1, dim);
    std::vector<std::vector<Matrix>> faces, degens;
    for (int n = 1; n <= trunc; ++n)
        faces.emplace_back(static_cast<size_t>(n) + 1, Matrix::identity(f, dim));
    for (int n = 0; n < trunc; ++n)
        degens.emplace_back(static_cast<size_t>(n) + 1, Matrix::identity(f, dim));
    return SimplicialModule(std::move(f), std::move(dims), std::move(faces), std::move(degens));
}

int SimplicialModule::dim(int n) const {
    if (n < 0 || n > trunc())
        throw window_error("simplicial level " + std::to_string(n) +
                           " is outside the truncation window");
    return dims_[static_cast<size_t>(n)];
}

const Matrix& SimplicialModule::face(int n, int i) const {
    if (n < 1 || n > trunc() || i < 0 || i > n)
        throw invariant_error("no face d_{" + std::to_string(n) + "," + std::to_string(i) + "}");
    return faces_[static_cast<size_t>(n) - 1][static_cast<size_t>(i)];
}

const Matrix& SimplicialModule::degeneracy(int n, int i) const {
    if (n < 0 || n >= trunc() || i < 0 || i > n)
        throw invariant_error("no degeneracy s_{" + std::to_string(n) + "," + std::to_string(i) +
                              "}");
    return degeneracies_[static_cast<size_t>(n)][static_cast<size_t>(i)];
}

std::vector<std::string> SimplicialModule::violations() const {
    std::vector<std::string> out;
    auto spot = [](int n, int i, int j) {
        return " at n=" + std::to_string(n) + ", i=" + std::to_string(i) +
               ", j=" + std::to_string(j);
    };
    int N = trunc();
    // d_{n,i} d_{n+1,j} = d_{n,j-1} d_{n+1,i} for i < j
    for (int n = 1; n + 1 <= N; ++n)
        for (int j = 1; j <= n + 1; ++j)
            for (int i = 0; i < j; ++i)
                if (face(n, i) * face(n + 1, j) != face(n, j - 1) * face(n + 1, i))
                    out.push_back("face-face identity fails" + spot(n + 1, i, j));
    // s_{n,i} s_{n-1,j} = s_{n,j+1} s_{n-1,i} for i <= j
    for (int n = 1; n + 1 <= N; ++n)
        for (int j = 0; j <= n - 1; ++j)
            for (int i = 0; i <= j; ++i)
                if (degeneracy(n, i) * degeneracy(n - 1, j) !=
                    degeneracy(n, j + 1) * degeneracy(n - 1, i))
                    out.push_back("degeneracy-degeneracy identity fails" + spot(n - 1, i, j));
    // d_{n,i} s_{n-1,j}: shifts below, identity on the diagonal pair, shifts above
    for (int n = 1; n <= N; ++n)
        for (int j = 0; j <= n - 1; ++j)
            for (int i = 0; i <= n; ++i) {
                Matrix got = face(n, i) * degeneracy(n - 1, j);
                bool ok;
                if (i == j || i == j + 1)
                    ok = got == Matrix::identity(field_, dims_[static_cast<size_t>(n) - 1]);
                else if (i < j)
                    ok = got == degeneracy(n - 2, j - 1) * face(n - 1, i);
                else
                    ok = got == degeneracy(n - 2, j) * face(n - 1, i - 1);
                if (!ok)
                    out.push_back("face-degeneracy identity fails" + spot(n, i, j));
            }
    return out;
}

SimplicialMorphism::SimplicialMorphism(SimplicialModule from, SimplicialModule to,
                                       std::vector<Matrix> levels)
    : from_(std::move(from)), to_(std::move(to)), levels_(std::move(levels)) {
    require_same_field(from_.field(), to_.field(), "simplicial morphism");
    if (from_.trunc() != to_.trunc())
        throw invariant_error("simplicial morphism: truncation mismatch");
    if (static_cast<int>(levels_.size()) != from_.trunc() + 1)
        throw invariant_error("simplicial morphism: need one matrix per level");
    for (int n = 0; n <= from_.trunc(); ++n) {
        const Matrix& t = levels_[static_cast<size_t>(n)];
        if (t.rows() != to_.dim(n) || t.cols() != from_.dim(n))
            throw invariant_error("simplicial morphism: shape mismatch at level " +
                                  std::to_string(n));
    }
    for (int n = 1; n <= from_.trunc(); ++n)
        for (int i = 0; i <= n; ++i) {
            if (levels_[static_cast<size_t>(n) - 1] * from_.face(n, i) !=
                to_.face(n, i) * levels_[static_cast<size_t>(n)])
                throw invariant_error("simplicial morphism does not commute with d_{" +
                                      std::to_string(n) + "," + std::to_string(i) + "}");
            if (i <= n - 1) {
                if (levels_[static_cast<size_t>(n)] * from_.degeneracy(n - 1, i) !=
                    to_.degeneracy(n - 1, i) * levels_[static_cast<size_t>(n) - 1])
                    throw invariant_error("simplicial morphism does not commute with s_{" +
                                          std::to_string(n - 1) + "," + std::to_string(i) + "}");
            }
        }
}

ChainComplex moore_complex(const SimplicialModule& M) {
    const Field& f = M.field();
    std::vector<int> dims;
    std::vector<Matrix> diffs;
    dims.push_back(M.dim(0));
    diffs.emplace_back(f, 0, M.dim(0));
    for (int n = 1; n <= M.trunc(); ++n) {
        dims.push_back(M.dim(n));
        Matrix d = M.face(n, 0);
        for (int i = 1; i <= n; ++i)
            d = i % 2 ? d - M.face(n, i) : d + M.face(n, i);
        diffs.push_back(std::move(d));
    }
    return ChainComplex(f, 0, std::move(dims), std::move(diffs));
}

Normalization normalize_full(const SimplicialModule& M) {
    const Field& f = M.field();
    std::vector<Subspace> levels;
    levels.push_back(Subspace::full(f, M.dim(0)));
    for (int n = 1; n <= M.trunc(); ++n) {
        Matrix stacked = M.face(n, 0);
        for (int i = 1; i < n; ++i)
            stacked = stacked.vstack(M.face(n, i));
        levels.push_back(Subspace::span(stacked.kernel()));
    }
    std::vector<int> dims;
    std::vector<Matrix> diffs;
    dims.push_back(levels[0].dim());
    diffs.emplace_back(f, 0, levels[0].dim());
    for (int n = 1; n <= M.trunc(); ++n) {
        size_t k = static_cast<size_t>(n);
        dims.push_back(levels[k].dim());
        Matrix d = M.face(n, n) * levels[k].basis().transpose();
        if (n % 2)
            d = -d;
        diffs.push_back(levels[k - 1].coords(d));
    }
    return Normalization{ChainComplex(f, 0, std::move(dims), std::move(diffs)),
                         std::move(levels)};
}

ChainComplex normalize(const SimplicialModule& M) {
    return normalize_full(M).complex;
}

ChainMap normalization_inclusion(const SimplicialModule& M) {
    Normalization nor = normalize_full(M);
    std::map<int, Matrix> comps;
    for (int n = 0; n <= M.trunc(); ++n)
        comps.emplace(n, nor.levels[static_cast<size_t>(n)].basis().transpose());
    return ChainMap(std::move(nor.complex), moore_complex(M), std::move(comps));
}

Subquotient homotopy_group(const SimplicialModule& M, int n) {
    if (n < 0 || n >= M.trunc())
        throw window_error("homotopy in degree " + std::to_string(n) +
                           " is not certified at truncation " + std::to_string(M.trunc()));
    Subquotient pi = normalize(M).homology(n);
    if (pi.dim() != moore_complex(M).betti(n))
        throw invariant_error("normalized and alternating-sum homology disagree in degree " +
                              std::to_string(n));
    return pi;
}

Matrix homotopy_group_map(const SimplicialMorphism& tau, int n) {
    if (n < 0 || n >= tau.from().trunc())
        throw window_error("homotopy in degree " + std::to_string(n) +
                           " is not certified at truncation " + std::to_string(tau.from().trunc()));
    Normalization nf = normalize_full(tau.from());
    Normalization nt = normalize_full(tau.to());
    std::map<int, Matrix> comps;
    for (int k = 0; k <= tau.from().trunc(); ++k) {
        size_t ks = static_cast<size_t>(k);
        comps.emplace(k, nt.levels[ks].coords(tau.level(k) * nf.levels[ks].basis().transpose()));
    }
    return ChainMap(nf.complex, nt.complex, std::move(comps)).homology_map(n);
}

namespace {

/* Order-preserving surjections out of [n], encoded by their value
 * tuples.  Listing the jump patterns as binary numbers in increasing
 * order enumerates the tuples lexicographically. */
std::vector<std::vector<int>> surjection_tuples(int n) {
    std::vector<std::vector<int>> out;
    for (long b = 0; b < (1L << n); ++b) {
        std::vector<int> eta(static_cast<size_t>(n) + 1, 0);
        for (int i = 1; i <= n; ++i)
            eta[static_cast<size_t>(i)] =
                eta[static_cast<size_t>(i) - 1] + ((b >> (n - i)) & 1L);
        out.push_back(std::move(eta));
    }
    return out;
}

struct DKLevel {
    std::vector<std::vector<int>> tuples;
    std::vector<int> offsets; // running offsets of the summands
    std::map<std::vector<int>, int> index;
    int dim = 0;
};

DKLevel dk_level(const ChainComplex& C, int n) {
    DKLevel lvl;
    lvl.tuples = surjection_tuples(n);
    for (size_t s = 0; s < lvl.tuples.size(); ++s) {
        lvl.offsets.push_back(lvl.dim);
        lvl.index.emplace(lvl.tuples[s], static_cast<int>(s));
        lvl.dim += C.dim(lvl.tuples[s].back());
    }
    return lvl;
}

void place_block(Matrix& dst, int row0, int col0, const Matrix& block) {
    for (int i = 0; i < block.rows(); ++i)
        for (int j = 0; j < block.cols(); ++j)
            if (!block.entry_is_zero(i, j))
                dst.set(row0 + i, col0 + j, block.at(i, j));
}

} // namespace

SimplicialModule dold_kan(const ChainComplex& C, int trunc) {
    for (int n = C.lo(); n < 0; ++n)
        if (C.dim(n) != 0)
            throw invariant_error("inverse normalization requires a connective complex");
    const Field& f = C.field();
    std::vector<DKLevel> levels;
    for (int n = 0; n <= trunc; ++n)
        levels.push_back(dk_level(C, n));
    std::vector<int> dims;
    for (const DKLevel& lvl : levels)
        dims.push_back(lvl.dim);

    std::vector<std::vector<Matrix>> faces, degens;
    for (int n = 1; n <= trunc; ++n) {
        const DKLevel& src = levels[static_cast<size_t>(n)];
        const DKLevel& dst = levels[static_cast<size_t>(n) - 1];
        std::vector<Matrix> row;
        for (int i = 0; i <= n; ++i) {
            Matrix m(f, dst.dim, src.dim);
            for (size_t s = 0; s < src.tuples.size(); ++s) {
                const std::vector<int>& eta = src.tuples[s];
                int k = eta.back();
                std::vector<int> dropped;
                for (int t = 0; t <= n; ++t)
                    if (t != i)
                        dropped.push_back(eta[static_cast<size_t>(t)]);
                // count distinct values to classify the monic part
                int distinct = 1;
                for (size_t t = 1; t < dropped.size(); ++t)
                    if (dropped[t] != dropped[t - 1])
                        ++distinct;
                if (distinct == k + 1) {
                    // still surjective: identity block
                    place_block(m, dst.offsets[static_cast<size_t>(dst.index.at(dropped))],
                                src.offsets[s], Matrix::identity(f, C.dim(k)));
                } else if (dropped.back() == k - 1 && dropped.front() == 0) {
                    // exactly the top value is missed: differential block,
                    // signed so that normalization returns the original
                    // differential unchanged
                    Matrix block = C.diff(k);
                    if (k % 2)
                        block = -block;
                    place_block(m, dst.offsets[static_cast<size_t>(dst.index.at(dropped))],
                                src.offsets[s], block);
                }
                // any other missed value: zero block
            }
            row.push_back(std::move(m));
        }
        faces.push_back(std::move(row));
    }
    for (int n = 0; n < trunc; ++n) {
        const DKLevel& src = levels[static_cast<size_t>(n)];
        const DKLevel& dst = levels[static_cast<size_t>(n) + 1];
        std::vector<Matrix> row;
        for (int i = 0; i <= n; ++i) {
            Matrix m(f, dst.dim, src.dim);
            for (size_t s = 0; s < src.tuples.size(); ++s) {
                const std::vector<int>& eta = src.tuples[s];
                std::vector<int> doubled;
                for (int t = 0; t <= n; ++t) {
                    doubled.push_back(eta[static_cast<size_t>(t)]);
                    if (t == i)
                        doubled.push_back(eta[static_cast<size_t>(t)]);
                }
                place_block(m, dst.offsets[static_cast<size_t>(dst.index.at(doubled))],
                            src.offsets[s], Matrix::identity(f, C.dim(eta.back())));
            }
            row.push_back(std::move(m));
        }
        degens.push_back(std::move(row));
    }
    return SimplicialModule(f, std::move(dims), std::move(faces), std::move(degens));
}

SimplicialMorphism dold_kan(const ChainMap& g, int trunc) {
    const Field& f = g.domain().field();
    std::vector<Matrix> levels;
    for (int n = 0; n <= trunc; ++n) {
        DKLevel src = dk_level(g.domain(), n);
        DKLevel dst = dk_level(g.codomain(), n);
        Matrix m(f, dst.dim, src.dim);
        for (size_t s = 0; s < src.tuples.size(); ++s)
            place_block(m, dst.offsets[s], src.offsets[s],
                        g.component(src.tuples[s].back()));
        levels.push_back(std::move(m));
    }
    return SimplicialMorphism(dold_kan(g.domain(), trunc), dold_kan(g.codomain(), trunc),
                              std::move(levels));
}

SimplicialModule levelwise_tensor(const SimplicialModule& M, const SimplicialModule& N) {
    require_same_field(M.field(), N.field(), "levelwise tensor");
    if (M.trunc() != N.trunc())
        throw invariant_error("levelwise tensor: truncation mismatch");
    std::vector<int> dims;
    for (int n = 0; n <= M.trunc(); ++n)
        dims.push_back(M.dim(n) * N.dim(n));
    std::vector<std::vector<Matrix>> faces, degens;
    for (int n = 1; n <= M.trunc(); ++n) {
        std::vector<Matrix> row;
        for (int i = 0; i <= n; ++i)
            row.push_back(M.face(n, i).kronecker(N.face(n, i)));
        faces.push_back(std::move(row));
    }
    for (int n = 0; n < M.trunc(); ++n) {
        std::vector<Matrix> row;
        for (int i = 0; i <= n; ++i)
            row.push_back(M.degeneracy(n, i).kronecker(N.degeneracy(n, i)));
        degens.push_back(std::move(row));
    }
    return SimplicialModule(M.field(), std::move(dims), std::move(faces), std::move(degens));
}

Algebra::Algebra(Field f, Matrix mult, Matrix unit)
    : field_(std::move(f)), mult_(std::move(mult)), unit_(std::move(unit)) {
    require_same_field(field_, mult_.field(), "algebra");
    int d = mult_.rows();
    if (mult_.cols() != d * d || unit_.rows() != d || unit_.cols() != 1)
        throw invariant_error("algebra: multiplication must be dim x dim^2 and the unit a column");
    Matrix id = Matrix::identity(field_, d);
    if (mult_ * mult_.kronecker(id) != mult_ * id.kronecker(mult_))
        throw invariant_error("algebra: multiplication is not associative");
    if (mult_ * unit_.kronecker(id) != id || mult_ * id.kronecker(unit_) != id)
        throw invariant_error("algebra: unit laws fail");
}

Algebra Algebra::truncated_polynomial(Field f, int power) {
    if (power < 1)
        throw invariant_error("truncated polynomial algebra needs power >= 1");
    Matrix mult(f, power, power * power);
    for (int i = 0; i < power; ++i)
        for (int j = 0; j < power; ++j)
            if (i + j < power)
                mult.set(i + j, i * power + j, 1);
    Matrix unit(f, power, 1);
    unit.set(0, 0, 1);
    return Algebra(std::move(f), std::move(mult), std::move(unit));
}

SimplicialModule bar_construction(const Matrix& right_action, const Algebra& A,
                                  const Matrix& left_action, int trunc) {
    const Field& f = A.field();
    require_same_field(f, right_action.field(), "bar construction");
    require_same_field(f, left_action.field(), "bar construction");
    int dm = right_action.rows(), da = A.dim(), dn = left_action.rows();
    if (right_action.cols() != dm * da || left_action.cols() != da * dn)
        throw invariant_error("bar construction: action shapes do not match the algebra");
    Matrix im = Matrix::identity(f, dm), ia = Matrix::identity(f, da),
           in = Matrix::identity(f, dn);
    if (right_action * right_action.kronecker(ia) != right_action * im.kronecker(A.mult()))
        throw invariant_error("bar construction: right action is not associative");
    if (right_action * im.kronecker(A.unit()) != im)
        throw invariant_error("bar construction: right action is not unital");
    if (left_action * A.mult().kronecker(in) != left_action * ia.kronecker(left_action))
        throw invariant_error("bar construction: left action is not associative");
    if (left_action * A.unit().kronecker(in) != in)
        throw invariant_error("bar construction: left action is not unital");

    auto apow = [&](int e) {
        int d = 1;
        for (int t = 0; t < e; ++t)
            d *= da;
        return d;
    };
    std::vector<int> dims;
    for (int n = 0; n <= trunc; ++n)
        dims.push_back(dm * apow(n) * dn);
    std::vector<std::vector<Matrix>> faces, degens;
    for (int n = 1; n <= trunc; ++n) {
        std::vector<Matrix> row;
        for (int i = 0; i <= n; ++i) {
            if (i == 0)
                row.push_back(right_action.kronecker(Matrix::identity(f, apow(n - 1) * dn)));
            else if (i == n)
                row.push_back(Matrix::identity(f, dm * apow(n - 1)).kronecker(left_action));
            else
                row.push_back(Matrix::identity(f, dm * apow(i - 1))
                                  .kronecker(A.mult().kronecker(
                                      Matrix::identity(f, apow(n - 1 - i) * dn))));
        }
        faces.push_back(std::move(row));
    }
    for (int n = 0; n < trunc; ++n) {
        std::vector<Matrix> row;
        for (int i = 0; i <= n; ++i)
            row.push_back(Matrix::identity(f, dm * apow(i))
                              .kronecker(A.unit().kronecker(Matrix::identity(f, apow(n - i) * dn))));
        degens.push_back(std::move(row));
    }
    return SimplicialModule(f, std::move(dims), std::move(faces), std::move(degens));
}

} // namespace specseq

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "specseq/simplicial.hpp"

using namespace specseq;
using namespace specseq::testing;

namespace {

Matrix scalar_row(Field f) { return Matrix::identity(f, 1); }

/* Bar(k, k[t]/(t^2), k) with both actions through evaluation at t = 0. */
SimplicialModule dual_numbers_bar(Field f, int trunc) {
    Algebra A = Algebra::truncated_polynomial(f, 2);
    Matrix eps = mat(f, {{1, 0}});
    return bar_construction(eps, A, eps, trunc);
}

struct SES {
    ChainComplex sub, total, quot;
    ChainMap incl, proj;
};

/* Random subcomplex (spans closed up by boundaries), its inclusion, and
 * the projection onto the quotient complex in coset coordinates. */
SES random_ses(Field f, std::mt19937& rng) {
    ChainComplex X = random_complex(f, 0, 3, 4, rng);
    std::vector<Subspace> gen;
    for (int n = 0; n <= 4; ++n)
        gen.push_back(random_subspace(f, X.dim(n), 2, rng));
    std::vector<Subspace> sub;
    for (int n = 0; n <= 3; ++n)
        sub.push_back(gen[n].sum(gen[n + 1].image_under(X.diff(n + 1))));

    std::vector<int> sdims;
    std::vector<Matrix> sdiffs;
    for (int n = 0; n <= 3; ++n)
        sdims.push_back(sub[n].dim());
    sdiffs.emplace_back(f, 0, sdims[0]);
    for (int n = 1; n <= 3; ++n)
        sdiffs.push_back(sub[n - 1].coords(X.diff(n) * sub[n].basis().transpose()));
    ChainComplex Csub(f, 0, sdims, sdiffs);
    std::map<int, Matrix> icomp;
    for (int n = 0; n <= 3; ++n)
        icomp.emplace(n, sub[n].basis().transpose());
    ChainMap incl(Csub, X, std::move(icomp));

    std::vector<Subquotient> q;
    for (int n = 0; n <= 3; ++n)
        q.emplace_back(Subspace::full(f, X.dim(n)), sub[n]);
    std::vector<int> qdims;
    std::vector<Matrix> qdiffs;
    for (const auto& qq : q)
        qdims.push_back(qq.dim());
    qdiffs.emplace_back(f, 0, qdims[0]);
    for (int n = 1; n <= 3; ++n)
        qdiffs.push_back(induced_map(X.diff(n), q[n], q[n - 1]));
    ChainComplex Cq(f, 0, qdims, qdiffs);
    std::map<int, Matrix> pcomp;
    for (int n = 0; n <= 3; ++n)
        pcomp.emplace(n, q[n].coords(Matrix::identity(f, X.dim(n))));
    ChainMap proj(X, Cq, std::move(pcomp));
    return {std::move(Csub), std::move(X), std::move(Cq), std::move(incl), std::move(proj)};
}

} // namespace

TEST_CASE("constant module: identities, alternating Moore complex, homotopy") {
    Field f = Field::rationals();
    SimplicialModule K = SimplicialModule::constant(f, 2, 4);
    CHECK(K.violations().empty());

    ChainComplex moore = moore_complex(K);
    CHECK(moore.diff(1).is_zero());
    CHECK(moore.diff(2) == Matrix::identity(f, 2));
    CHECK(moore.diff(3).is_zero());
    CHECK(moore.diff(4) == Matrix::identity(f, 2));

    ChainComplex nor = normalize(K);
    CHECK(nor.dim(0) == 2);
    for (int n = 1; n <= 4; ++n)
        CHECK(nor.dim(n) == 0);

    CHECK(homotopy_group(K, 0).dim() == 2);
    for (int n = 1; n <= 3; ++n)
        CHECK(homotopy_group(K, n).dim() == 0);
    CHECK_THROWS_AS(homotopy_group(K, 4), window_error);
    CHECK_THROWS_AS(homotopy_group(K, -1), window_error);
    CHECK_THROWS_AS(K.dim(5), window_error);
}

TEST_CASE("a deliberately broken module is reported, not rejected") {
    Field f = Field::rationals();
    SimplicialModule K = SimplicialModule::constant(f, 1, 3);
    std::vector<std::vector<Matrix>> faces, degens;
    for (int n = 1; n <= 3; ++n) {
        std::vector<Matrix> row;
        for (int i = 0; i <= n; ++i)
            row.push_back(K.face(n, i));
        faces.push_back(std::move(row));
    }
    for (int n = 0; n < 3; ++n) {
        std::vector<Matrix> row;
        for (int i = 0; i <= n; ++i)
            row.push_back(K.degeneracy(n, i));
        degens.push_back(std::move(row));
    }
    faces[1][1] = -faces[1][1]; // negate d_{2,1}
    SimplicialModule broken(f, {1, 1, 1, 1}, std::move(faces), std::move(degens));
    std::vector<std::string> report = broken.violations();
    CHECK_FALSE(report.empty());
    bool mentions_fd = false;
    for (const std::string& line : report)
        if (line.find("face-degeneracy") != std::string::npos)
            mentions_fd = true;
    CHECK(mentions_fd);
}

TEST_CASE("bar construction of the dual numbers") {
    Field f = Field::rationals();
    SimplicialModule B = dual_numbers_bar(f, 5);
    CHECK(B.violations().empty());
    for (int n = 0; n <= 5; ++n)
        CHECK(B.dim(n) == (1 << n));

    // one non-degenerate word in every level
    ChainComplex nor = normalize(B);
    for (int n = 0; n <= 5; ++n)
        CHECK(nor.dim(n) == 1);

    // k[t]/(t^2) resolves k by multiplication-by-t in every degree, so
    // the derived tensor square of k is one-dimensional throughout
    for (int i = 0; i <= 4; ++i)
        CHECK(homotopy_group(B, i).dim() == 1);

    // the normalized part includes quasi-isomorphically below the edge
    ChainMap incl = normalization_inclusion(B);
    for (int n = 0; n <= 4; ++n) {
        Matrix h = incl.homology_map(n);
        CHECK(h.rows() == h.cols());
        CHECK(h.rank() == h.rows());
    }

    SimplicialModule point = bar_construction(scalar_row(f), Algebra::truncated_polynomial(f, 1),
                                              scalar_row(f), 4);
    for (int n = 0; n <= 4; ++n)
        CHECK(point.dim(n) == 1);
    CHECK(homotopy_group(point, 0).dim() == 1);
    for (int i = 1; i <= 3; ++i)
        CHECK(homotopy_group(point, i).dim() == 0);
}

TEST_CASE("algebra and action validation") {
    Field f = Field::rationals();
    // e1*e1 = e2, e1*e2 = 1, e2*e1 = 0: then (e1 e1) e1 = 0 but e1 (e1 e1) = 1
    Matrix bad = mat(f, {{1, 0, 0, 0, 0, 1, 0, 0, 0},
                         {0, 1, 0, 1, 0, 0, 0, 0, 0},
                         {0, 0, 1, 0, 1, 0, 1, 0, 0}});
    Matrix unit(f, 3, 1);
    unit.set(0, 0, 1);
    CHECK_THROWS_AS(Algebra(f, bad, unit), invariant_error);

    Algebra A = Algebra::truncated_polynomial(f, 3);
    CHECK(A.dim() == 3);
    // the evaluation t = 1 is not an algebra map for truncated polynomials
    Matrix wrong = mat(f, {{1, 1, 1}});
    CHECK_THROWS_AS(bar_construction(wrong, A, mat(f, {{1, 0, 0}}), 2), invariant_error);
}

TEST_CASE("inverse normalization: dimensions, identities, roundtrip") {
    Field f = Field::rationals();

    SimplicialModule pt = dold_kan(ChainComplex::concentrated(f, 0, 1), 4);
    for (int n = 0; n <= 4; ++n)
        CHECK(pt.dim(n) == 1);
    CHECK(pt.violations().empty());

    SimplicialModule circle = dold_kan(ChainComplex::concentrated(f, 1, 1), 5);
    for (int n = 0; n <= 5; ++n)
        CHECK(circle.dim(n) == n);
    CHECK(circle.violations().empty());

    std::mt19937 rng(20260823);
    for (int trial = 0; trial < 4; ++trial) {
        Field ff = trial % 2 ? Field::rationals() : Field::prime(101);
        ChainComplex C = random_complex(ff, 0, trial % 2 ? 4 : 3, 3, rng);
        SimplicialModule D = dold_kan(C, 4);
        CHECK(D.violations().empty());
        CHECK(normalize(D) == C); // exact roundtrip, including signs
        for (int n = 0; n <= 3; ++n)
            CHECK(homotopy_group(D, n).dim() == C.betti(n));
    }

    ChainComplex below(Field::rationals(), -1, {1, 1}, {Matrix(f, 0, 1), Matrix(f, 1, 1)});
    CHECK_THROWS_AS(dold_kan(below, 3), invariant_error);
}

TEST_CASE("normalized level is a direct summand, complement spanned by degeneracies") {
    Field f = Field::rationals();
    std::mt19937 rng(31);
    ChainComplex C = random_complex(f, 0, 3, 3, rng);
    for (const SimplicialModule& M : {dual_numbers_bar(f, 4), dold_kan(C, 4)}) {
        Normalization nor = normalize_full(M);
        for (int n = 1; n <= M.trunc(); ++n) {
            Subspace degen(f, M.dim(n));
            for (int i = 0; i <= n - 1; ++i)
                degen = degen.sum(Subspace::full(f, M.dim(n - 1))
                                      .image_under(M.degeneracy(n - 1, i)));
            CHECK(nor.levels[static_cast<size_t>(n)].intersect(degen).dim() == 0);
            CHECK(nor.levels[static_cast<size_t>(n)].sum(degen).dim() == M.dim(n));
        }
    }
}

TEST_CASE("levelwise tensor: unit, homotopy via tensored normalizations") {
    Field f = Field::prime(101);
    std::mt19937 rng(77);
    SimplicialModule unit = SimplicialModule::constant(f, 1, 4);

    ChainComplex C = random_complex(f, 0, 3, 3, rng);
    SimplicialModule M = dold_kan(C, 4);
    SimplicialModule MU = levelwise_tensor(M, unit);
    for (int n = 0; n <= 4; ++n)
        CHECK(MU.dim(n) == M.dim(n));
    for (int n = 1; n <= 4; ++n)
        for (int i = 0; i <= n; ++i)
            CHECK(MU.face(n, i) == M.face(n, i));

    // homotopy of the tensor equals homology of the tensored normalizations
    ChainComplex C2 = random_complex(f, 0, 3, 3, rng);
    SimplicialModule N = dold_kan(C2, 4);
    SimplicialModule T = levelwise_tensor(M, N);
    CHECK(T.violations().empty());
    ChainComplex side = normalize(M).tensor(normalize(N));
    for (int i = 0; i <= 3; ++i)
        CHECK(homotopy_group(T, i).dim() == side.betti(i));

    // and the degree-0 homotopy is the tensor product of the factors'
    for (int trial = 0; trial < 3; ++trial) {
        SimplicialModule P = dold_kan(random_complex(f, 0, 2, 3, rng), 3);
        SimplicialModule Q = dold_kan(random_complex(f, 0, 2, 3, rng), 3);
        CHECK(homotopy_group(levelwise_tensor(P, Q), 0).dim() ==
              homotopy_group(P, 0).dim() * homotopy_group(Q, 0).dim());
    }

    CHECK_THROWS_AS(levelwise_tensor(M, SimplicialModule::constant(f, 1, 3)), invariant_error);
}

TEST_CASE("vanishing ranges add under levelwise tensor") {
    std::mt19937 rng(88);
    Field f = Field::prime(101);
    // both factors connected (no homotopy in degree 0): product vanishes
    // through degree 1
    ChainComplex CM = random_complex(f, 1, 2, 2, rng);
    ChainComplex CN = random_complex(f, 1, 2, 2, rng);
    SimplicialModule T3 = levelwise_tensor(dold_kan(CM, 3), dold_kan(CN, 3));
    for (int i = 0; i <= 1; ++i)
        CHECK(homotopy_group(T3, i).dim() == 0);

    // one factor 1-connected: product vanishes through degree 2
    ChainComplex CM2 = random_complex(f, 2, 3, 2, rng);
    SimplicialModule T4 = levelwise_tensor(dold_kan(CM2, 4), dold_kan(CN, 4));
    for (int i = 0; i <= 2; ++i)
        CHECK(homotopy_group(T4, i).dim() == 0);
}

TEST_CASE("levelwise short exact sequences induce a long exact homotopy sequence") {
    std::mt19937 rng(20260824);
    for (int trial = 0; trial < 3; ++trial) {
        Field f = trial == 1 ? Field::rationals() : Field::prime(101);
        SES ses = random_ses(f, rng);
        SimplicialMorphism ti = dold_kan(ses.incl, 4);
        SimplicialMorphism tp = dold_kan(ses.proj, 4);

        std::vector<int> hs, ht, hq, ra, rb;
        for (int i = 0; i <= 3; ++i) {
            Matrix a = homotopy_group_map(ti, i);
            Matrix b = homotopy_group_map(tp, i);
            CHECK((b * a).is_zero());
            CHECK(Subspace::from_columns(a) == Subspace::span(b.kernel()));
            hs.push_back(ses.sub.betti(i));
            ht.push_back(ses.total.betti(i));
            hq.push_back(ses.quot.betti(i));
            ra.push_back(a.rank());
            rb.push_back(b.rank());
        }
        CHECK(rb[0] == hq[0]); // ends surjectively
        for (int i = 1; i <= 3; ++i)
            CHECK(hq[i] - rb[i] == hs[i - 1] - ra[i - 1]); // connecting ranks agree
    }
}

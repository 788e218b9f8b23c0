#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "specseq/resolution.hpp"

using namespace specseq;
using namespace specseq::testing;

namespace {

GradedAlgebraPresentation dual_numbers(Field f) {
    return GradedAlgebraPresentation::parse(f, {{"t", 1}}, {"t^2"});
}

GradedAlgebraPresentation point_over(const GradedAlgebraPresentation& R) {
    std::vector<HomogeneousPoly> rels = R.relations();
    for (size_t i = 0; i < R.vars().size(); ++i)
        rels.push_back(HomogeneousPoly::variable(R.field(), R.weights(), static_cast<int>(i)));
    return GradedAlgebraPresentation(R.field(), R.vars(), R.weights(), rels);
}

} // namespace

TEST_CASE("free resolutions and Tor of the residue field") {
    Field f = Field::rationals();

    // dual numbers: the resolution is periodic with one generator per step
    GradedAlgebraPresentation R = dual_numbers(f);
    GradedAlgebraPresentation A = point_over(R);
    auto res = graded_free_resolution(R, A, 5, 8);
    REQUIRE(res.size() == 6);
    for (int s = 0; s <= 5; ++s) {
        REQUIRE(res[static_cast<size_t>(s)].shifts.size() == 1);
        CHECK(res[static_cast<size_t>(s)].shifts[0] == s);
    }
    auto tor = tor_table(R, A, A, 4, 8);
    for (int i = 0; i <= 4; ++i) {
        CHECK(tor[static_cast<size_t>(i)].total() == 1);
        CHECK(tor[static_cast<size_t>(i)].at(i) == 1);
    }

    // a polynomial ring resolves its residue field in one step
    GradedAlgebraPresentation P = GradedAlgebraPresentation::parse(f, {{"x", 1}}, {});
    GradedAlgebraPresentation k = point_over(P);
    auto ptor = tor_table(P, k, k, 3, 5);
    CHECK(ptor[0].total() == 1);
    CHECK(ptor[0].at(0) == 1);
    CHECK(ptor[1].total() == 1);
    CHECK(ptor[1].at(1) == 1);
    CHECK(ptor[2].total() == 0);
    CHECK(ptor[3].total() == 0);

    // two variables: the Koszul pattern 1, 2, 1, 0
    GradedAlgebraPresentation P2 =
        GradedAlgebraPresentation::parse(f, {{"x", 1}, {"y", 1}}, {});
    GradedAlgebraPresentation k2 = point_over(P2);
    auto ktor = tor_table(P2, k2, k2, 3, 5);
    CHECK(ktor[0].total() == 1);
    CHECK(ktor[1].total() == 2);
    CHECK(ktor[1].at(1) == 2);
    CHECK(ktor[2].total() == 1);
    CHECK(ktor[2].at(2) == 1);
    CHECK(ktor[3].total() == 0);

    // complete intersection of two quadrics: dim Tor_i = i + 1, all in degree i
    GradedAlgebraPresentation CI =
        GradedAlgebraPresentation::parse(f, {{"x", 1}, {"y", 1}}, {"x^2", "y^2"});
    GradedAlgebraPresentation kCI = point_over(CI);
    auto ctor = tor_table(CI, kCI, kCI, 4, 6);
    for (int i = 0; i <= 4; ++i) {
        CHECK(ctor[static_cast<size_t>(i)].total() == i + 1);
        CHECK(ctor[static_cast<size_t>(i)].at(i) == i + 1);
    }
}

TEST_CASE("Tor is symmetric in its two module arguments") {
    Field f = Field::rationals();
    GradedAlgebraPresentation R = GradedAlgebraPresentation::parse(f, {{"x", 1}}, {"x^3"});
    GradedAlgebraPresentation A = GradedAlgebraPresentation::parse(f, {{"x", 1}}, {"x"});
    GradedAlgebraPresentation M = GradedAlgebraPresentation::parse(f, {{"x", 1}}, {"x^2"});

    auto left = tor_table(R, A, M, 4, 8);
    auto right = tor_table(R, M, A, 4, 8);
    REQUIRE(left.size() == right.size());
    for (size_t i = 0; i < left.size(); ++i)
        CHECK(left[i].by_degree == right[i].by_degree);
    // Tor_0 is the tensor product: here R/(x) (x) R/(x^2) = R/(x)
    CHECK(left[0].total() == 1);
    CHECK(left[0].at(0) == 1);
}

TEST_CASE("Ext tables mirror Tor dimensions over the residue field") {
    Field f = Field::rationals();

    GradedAlgebraPresentation R = dual_numbers(f);
    GradedAlgebraPresentation A = point_over(R);
    for (int i = 0; i <= 4; ++i) {
        GradedDims e = ext_oracle(R, A, A, i, 8);
        CHECK(e.total() == 1);
        CHECK(e.at(-i) == 1); // dual internal degree
        CHECK(e.total() == tor_oracle(R, A, A, i, 8).total());
    }

    GradedAlgebraPresentation CI =
        GradedAlgebraPresentation::parse(f, {{"x", 1}, {"y", 1}}, {"x^2", "y^2"});
    GradedAlgebraPresentation kCI = point_over(CI);
    auto tor = tor_table(CI, kCI, kCI, 3, 6);
    auto ext = ext_table(CI, kCI, kCI, 3, 6);
    for (int i = 0; i <= 3; ++i) {
        CHECK(ext[static_cast<size_t>(i)].total() == tor[static_cast<size_t>(i)].total());
        CHECK(ext[static_cast<size_t>(i)].at(-i) == i + 1);
    }
}

TEST_CASE("derived functor tables validate their inputs") {
    Field f = Field::rationals();
    GradedAlgebraPresentation R = GradedAlgebraPresentation::parse(f, {{"x", 1}}, {"x^3"});
    GradedAlgebraPresentation A = GradedAlgebraPresentation::parse(f, {{"x", 1}}, {"x"});
    GradedAlgebraPresentation freering = GradedAlgebraPresentation::parse(f, {{"x", 1}}, {});
    GradedAlgebraPresentation other = GradedAlgebraPresentation::parse(f, {{"y", 1}}, {"y^2"});

    // the free ring is not a quotient of R, and a different ring is not comparable
    CHECK_THROWS_AS(tor_table(R, A, freering, 2, 4), invariant_error);
    CHECK_THROWS_AS(tor_table(R, freering, A, 2, 4), invariant_error);
    CHECK_THROWS_AS(tor_table(R, A, other, 2, 4), invariant_error);
    CHECK_THROWS_AS(graded_free_resolution(R, A, -1, 4), invariant_error);
}

TEST_CASE("builder: a single regular relation needs one variable and stops") {
    Field f = Field::rationals();
    GradedAlgebraPresentation R = GradedAlgebraPresentation::parse(f, {{"x", 1}}, {});
    GradedAlgebraPresentation A = point_over(R);

    SimplicialPolyAlgebra X = build_resolution(R, A, 3, 4);
    CHECK(X.fresh_count(1) == 1);
    CHECK(X.fresh_weight(1, 0) == 1);
    CHECK(X.fresh_count(2) == 0);
    CHECK(X.fresh_count(3) == 0);

    // the one variable's faces: all but the last vanish, the last is x
    CHECK(X.face_image(1, 0, 0).is_zero());
    HomogeneousPoly last = X.face_image(1, 1, 0);
    REQUIRE(!last.is_zero());
    CHECK(last.terms().size() == 1);
    CHECK(last.terms().begin()->first == std::vector<int>{1});

    // degeneracy bookkeeping at level 1: s_0 and s_1 give the two
    // degenerate copies, in ascent-set order
    REQUIRE(X.variables(2).size() == 2);
    CHECK(X.variables(2)[0].eta == std::vector<int>{0, 1, 1});
    CHECK(X.variables(2)[1].eta == std::vector<int>{0, 0, 1});
    CHECK(X.degeneracy_image(1, 0, 0) == 1);
    CHECK(X.degeneracy_image(1, 1, 0) == 0);

    for (int d = 0; d <= 4; ++d)
        CHECK(X.strand(d, SimplicialPolyAlgebra::Coefficients::base).violations().empty());
}

TEST_CASE("builder: resolving the base over itself adjoins nothing") {
    Field f = Field::rationals();
    GradedAlgebraPresentation R = GradedAlgebraPresentation::parse(f, {{"x", 1}}, {"x^2"});
    SimplicialPolyAlgebra X = build_resolution(R, R, 2, 3);
    CHECK(X.fresh_count(1) == 0);
    CHECK(X.fresh_count(2) == 0);
    for (int d = 0; d <= 3; ++d) {
        const SimplicialModule& S = X.strand(d, SimplicialPolyAlgebra::Coefficients::base);
        CHECK(S.dim(0) == R.dim(d));
        CHECK(S.dim(2) == R.dim(d));
    }
}

TEST_CASE("builder: a regular sequence is resolved by level one alone") {
    Field f = Field::rationals();
    GradedAlgebraPresentation R =
        GradedAlgebraPresentation::parse(f, {{"x", 1}, {"y", 1}}, {});
    GradedAlgebraPresentation A = point_over(R);

    SimplicialPolyAlgebra X = build_resolution(R, A, 3, 3);
    CHECK(X.fresh_count(1) == 2);
    CHECK(X.fresh_weight(1, 0) == 1);
    CHECK(X.fresh_weight(1, 1) == 1);
    // the syzygy x*T_y - y*T_x dies against a product of degenerate
    // variables, so no level-2 variable is needed
    CHECK(X.fresh_count(2) == 0);
    CHECK(X.fresh_count(3) == 0);

    using C = SimplicialPolyAlgebra::Coefficients;
    for (int d = 0; d <= 3; ++d) {
        for (int i = 0; i <= 2; ++i) {
            int expect = 0;
            if (i == 0 && d == 0)
                expect = 1; // pi_0 = Q
            if (i == 1 && d == 1)
                expect = 2; // Tor_1 in degree 1
            if (i == 2 && d == 2)
                expect = 1; // Tor_2 in degree 2
            CHECK(homotopy_group(X.strand(d, C::target), i).dim() == expect);
        }
    }
}

TEST_CASE("builder: dual numbers stop after two variables") {
    Field f = Field::rationals();
    GradedAlgebraPresentation R = dual_numbers(f);
    GradedAlgebraPresentation A = point_over(R);
    using C = SimplicialPolyAlgebra::Coefficients;

    // a hypersurface is resolved by one variable killing the relation and
    // one more killing the syzygy cycle; nothing survives above level two
    SimplicialPolyAlgebra X = build_resolution(R, A, 4, 6);
    REQUIRE(X.fresh_count(1) == 1);
    CHECK(X.fresh_weight(1, 0) == 1);
    REQUIRE(X.fresh_count(2) == 1);
    CHECK(X.fresh_weight(2, 0) == 2);
    CHECK(X.fresh_count(3) == 0);
    CHECK(X.fresh_count(4) == 0);

    // one weight-1 variable per degeneracy, one weight-2 per ascent pair
    CHECK(X.variables(1).size() == 1);
    CHECK(X.variables(2).size() == 3);
    CHECK(X.variables(3).size() == 6);
    CHECK(X.variables(4).size() == 10);

    // frozen strand dimensions at top internal degree, target coefficients
    SimplicialPolyAlgebra::StrandBasis b4 = X.strand_basis(4, 6, C::target);
    CHECK(b4.dim == 560);
    const SimplicialModule& S6 = X.strand(6, C::target);
    CHECK(S6.dim(0) == 0);
    CHECK(S6.dim(1) == 1);
    CHECK(S6.dim(2) == 16);
    CHECK(S6.dim(3) == 119);
    CHECK(S6.dim(4) == 560);
    CHECK(S6.violations().empty());

    // normalized dimensions match the binomial-transform inversion of the
    // level dimensions
    Normalization norm = normalize_full(S6);
    CHECK(norm.complex.dim(0) == 0);
    CHECK(norm.complex.dim(1) == 1);
    CHECK(norm.complex.dim(2) == 14);
    CHECK(norm.complex.dim(3) == 74);
    CHECK(norm.complex.dim(4) == 176);

    // the augmentation to A coequalizes the two bottom faces
    for (int d = 0; d <= 6; ++d) {
        const SimplicialModule& S = X.strand(d, C::target);
        CHECK(S.face(1, 0) == S.face(1, 1));
    }

    // homotopy of the target strands recovers Tor degreewise
    auto tor = tor_table(R, A, A, 3, 4);
    for (int d = 0; d <= 4; ++d)
        for (int i = 0; i <= 3; ++i)
            CHECK(homotopy_group(X.strand(d, C::target), i).dim() ==
                  tor[static_cast<size_t>(i)].at(d));
}

TEST_CASE("builder: complete intersection strand homotopy matches Tor") {
    Field f = Field::rationals();
    GradedAlgebraPresentation R =
        GradedAlgebraPresentation::parse(f, {{"x", 1}, {"y", 1}}, {"x^2", "y^2"});
    GradedAlgebraPresentation A = point_over(R);
    using C = SimplicialPolyAlgebra::Coefficients;

    SimplicialPolyAlgebra X = build_resolution(R, A, 3, 4);
    CHECK(X.fresh_count(1) == 2);

    auto tor = tor_table(R, A, A, 2, 4);
    for (int d = 0; d <= 4; ++d)
        for (int i = 0; i <= 2; ++i)
            CHECK(homotopy_group(X.strand(d, C::target), i).dim() ==
                  tor[static_cast<size_t>(i)].at(d));
}

TEST_CASE("bar construction homotopy agrees with resolution-based Tor") {
    Field f = Field::rationals();
    GradedAlgebraPresentation R = dual_numbers(f);
    GradedAlgebraPresentation A = point_over(R);

    Algebra D = Algebra::truncated_polynomial(f, 2);
    Matrix point = mat(f, {{1, 0}});
    SimplicialModule bar = bar_construction(point, D, point, 6);
    for (int i = 0; i <= 5; ++i)
        CHECK(homotopy_group(bar, i).dim() == tor_oracle(R, A, A, i, 8).total());
}

TEST_CASE("builder validation and window errors") {
    Field f = Field::rationals();
    GradedAlgebraPresentation R = dual_numbers(f);
    GradedAlgebraPresentation A = point_over(R);
    GradedAlgebraPresentation freering = GradedAlgebraPresentation::parse(f, {{"t", 1}}, {});
    GradedAlgebraPresentation other = GradedAlgebraPresentation::parse(f, {{"u", 1}}, {"u"});

    CHECK_THROWS_AS(build_resolution(R, freering, 2, 3), invariant_error);
    CHECK_THROWS_AS(build_resolution(R, other, 2, 3), invariant_error);
    CHECK_THROWS_AS(build_resolution(R, A, 0, 3), invariant_error);
    CHECK_THROWS_AS(build_resolution(R, A, 2, -1), invariant_error);

    SimplicialPolyAlgebra X = build_resolution(R, A, 2, 3);
    using C = SimplicialPolyAlgebra::Coefficients;
    CHECK_THROWS_AS(X.strand(4, C::base), window_error);
    CHECK_THROWS_AS(X.strand(-1, C::base), window_error);
    CHECK_THROWS_AS(X.variables(3), window_error);
    CHECK_THROWS_AS(X.strand_basis(3, 2, C::base), window_error);
    CHECK_THROWS_AS(X.strand_basis(1, 4, C::base), window_error);
    CHECK_THROWS_AS(X.face_image(0, 0, 0), window_error);
    CHECK_THROWS_AS(X.fresh_weight(1, 5), invariant_error);
}

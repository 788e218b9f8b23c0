#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "specseq/quillen.hpp"

using namespace specseq;

namespace {

GradedAlgebraPresentation point_over(const GradedAlgebraPresentation& R) {
    std::vector<HomogeneousPoly> rels = R.relations();
    for (size_t i = 0; i < R.vars().size(); ++i)
        rels.push_back(HomogeneousPoly::variable(R.field(), R.weights(), static_cast<int>(i)));
    return GradedAlgebraPresentation(R.field(), R.vars(), R.weights(), rels);
}

AugmentationTower dual_numbers_tower(Field f, int trunc, int degree_bound, int powers) {
    auto R = GradedAlgebraPresentation::parse(f, {{"t", 1}}, {"t^2"});
    return AugmentationTower(build_resolution(R, point_over(R), trunc, degree_bound), powers);
}

AugmentationTower plane_tower(Field f, int trunc, int degree_bound, int powers) {
    auto R = GradedAlgebraPresentation::parse(f, {{"x", 1}, {"y", 1}}, {});
    return AugmentationTower(build_resolution(R, point_over(R), trunc, degree_bound), powers);
}

AugmentationTower line_tower(Field f, int trunc, int degree_bound, int powers) {
    auto R = GradedAlgebraPresentation::parse(f, {{"x", 1}}, {});
    return AugmentationTower(build_resolution(R, point_over(R), trunc, degree_bound), powers);
}

} // namespace

TEST_CASE("ideal powers of the line: coordinate layers and nesting") {
    Field f = Field::rationals();
    AugmentationTower tw = line_tower(f, 3, 3, 3);

    // level 2 in degree d is spanned by the d+1 monomials in the two
    // degenerate copies of the level-1 variable, all of variable exponent d
    for (int d = 0; d <= 3; ++d) {
        CHECK(tw.layer_dims(d, d)[2] == d + 1);
        for (int s = d + 1; s <= 4; ++s)
            CHECK(tw.power_piece(s, 2, d).dim() == 0);
    }
    // power zero is the whole strand, and the powers are nested
    for (int n = 0; n <= 3; ++n)
        for (int d = 0; d <= 3; ++d) {
            Subspace all = tw.power_piece(0, n, d);
            Subspace prev = all;
            for (int s = 1; s <= d + 1; ++s) {
                Subspace cur = tw.power_piece(s, n, d);
                CHECK(prev.contains(cur));
                prev = cur;
            }
            // in positive degree the residue field leaves nothing outside K^1
            if (d > 0)
                CHECK(tw.power_piece(1, n, d) == all);
        }
    // layer counts agree with the symmetric-power enumeration at every power
    for (int s = 0; s <= 4; ++s)
        for (int d = 0; d <= 3; ++d)
            CHECK(tw.layer_dims(s, d) == tw.layer_dims_sym(s, d));

    // the restricted simplicial structure is genuinely simplicial
    for (int d = 0; d <= 3; ++d)
        CHECK(tw.power_module(1, d).violations().empty());
}

TEST_CASE("tower accepts a general quotient target, cotangent data does not") {
    Field f = Field::rationals();
    auto R = GradedAlgebraPresentation::parse(f, {{"x", 1}}, {"x^3"});
    auto A = GradedAlgebraPresentation::parse(f, {{"x", 1}}, {"x^2"});
    AugmentationTower tw(build_resolution(R, A, 2, 3), 2);

    // in degree 1 the target still has a ring part, so K^1 is a proper piece
    CHECK(tw.power_piece(0, 1, 1).dim() - tw.power_piece(1, 1, 1).dim() == 1);
    CHECK(connectivity_check(tw, 2).ok());

    CHECK_THROWS_AS(CotangentData{tw}, invariant_error);
    CHECK_THROWS_AS(fundamental_ss_homology(tw), invariant_error);

    CHECK_THROWS_AS(AugmentationTower(build_resolution(R, A, 2, 3), -1), invariant_error);
    CHECK_THROWS_AS(connectivity_check(tw, -1), invariant_error);
}

TEST_CASE("powers of the augmentation ideal have no low homotopy") {
    Field f = Field::rationals();

    AugmentationTower hyper = dual_numbers_tower(f, 4, 4, 3);
    for (int s = 0; s <= 3; ++s) {
        ConnectivityReport rep = connectivity_check(hyper, s);
        CHECK(rep.ok());
        CHECK(rep.complete);
        CHECK(rep.k_checked == std::min(s - 1, 3));
    }

    AugmentationTower line = line_tower(f, 4, 5, 3);
    for (int s = 1; s <= 3; ++s)
        CHECK(connectivity_check(line, s).ok());

    // a power too deep for the truncation level is reported as incomplete
    ConnectivityReport deep = connectivity_check(line, 6);
    CHECK(deep.k_checked == 3);
    CHECK_FALSE(deep.complete);
}

TEST_CASE("cotangent pieces linearize the variables and match the first layer") {
    Field f = Field::rationals();
    AugmentationTower tw = dual_numbers_tower(f, 4, 4, 4);
    CotangentData cot(tw);

    CHECK(cot.weight_bound() == 4);
    // one fresh variable of weight 1 at level 1 and one of weight 2 at level
    // 2; levels count their degeneracy images
    for (int n = 0; n <= 4; ++n) {
        CHECK(cot.piece(1).dim(n) == n);
        CHECK(cot.piece(2).dim(n) == n * (n - 1) / 2);
        CHECK(cot.piece(3).dim(n) == 0);
        CHECK(cot.full().dim(n) == n + n * (n - 1) / 2);
        CHECK(static_cast<int>(cot.level_weights(n).size()) == cot.full().dim(n));
    }
    CHECK_THROWS_AS(cot.piece(5), invariant_error);
    CHECK_THROWS_AS(cot.level_weights(5), invariant_error);

    // homotopy: one class of weight 1 in degree 1, one of weight 2 in
    // degree 2, nothing else below the window edge
    CHECK(aq_homology(cot, 0).total() == 0);
    GradedDims h1 = aq_homology(cot, 1);
    CHECK(h1.total() == 1);
    CHECK(h1.at(1) == 1);
    GradedDims h2 = aq_homology(cot, 2);
    CHECK(h2.total() == 1);
    CHECK(h2.at(2) == 1);
    CHECK(aq_homology(cot, 3).total() == 0);

    // cohomology mirrors with negated weights
    CHECK(aq_cohomology(cot, 0).total() == 0);
    CHECK(aq_cohomology(cot, 1).at(-1) == 1);
    CHECK(aq_cohomology(cot, 2).at(-2) == 1);
    CHECK(aq_cohomology(cot, 3).total() == 0);

    // rank-two coefficients double every dimension
    CHECK(aq_homology(cot, 2, 2).at(2) == 2);
    CHECK(aq_cohomology(cot, 2, 2).at(-2) == 2);

    // the truncation edge is refused, not guessed
    CHECK_THROWS_AS(aq_homology(cot, 4), window_error);
    CHECK_THROWS_AS(aq_cohomology(cot, 4), window_error);
    CHECK_THROWS_AS(aq_homology(cot, 2, 0), invariant_error);
}

TEST_CASE("fundamental homological sequence of the dual numbers") {
    Field f = Field::rationals();
    AugmentationTower tw = dual_numbers_tower(f, 4, 4, 4);
    FundamentalSS ss = fundamental_ss_homology(tw);

    CHECK(ss.homological);
    CHECK(ss.level_window == 3);
    CHECK(ss.quadrant_ok);
    CHECK(ss.converged);
    CHECK(ss.abutment_ok);
    CHECK(ss.ok());

    // the certified second page, entry by entry
    std::map<std::pair<int, int>, int> expected{
        {{0, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}, {{1, 2}, 1}};
    CHECK(ss.entry_dims == expected);
    // the bottom row is the constant part: nothing above the corner
    for (int p = 1; p <= 4; ++p)
        CHECK(ss.dim(p, 0) == 0);
    CHECK(ss.dim(0, 0) == 1);

    // abutment rows: one class in each total degree 0..3
    REQUIRE(ss.abutment.size() == 4);
    for (int n = 0; n <= 3; ++n) {
        CHECK(ss.abutment[static_cast<size_t>(n)].n == n);
        CHECK(ss.abutment[static_cast<size_t>(n)].homology_dim == 1);
        CHECK(ss.abutment[static_cast<size_t>(n)].oracle_dim == 1);
        CHECK(ss.abutment[static_cast<size_t>(n)].ok);
    }

    // image filtration of total homology: trivial below the connective
    // range, everything once the power is deep enough
    REQUIRE(ss.strands.size() == 5);
    const FilteredComplex& F = ss.strands[2].page.parent();
    for (int n = 0; n <= 3; ++n) {
        int hn = F.total().betti(n);
        for (int p = -3; p <= 0; ++p) {
            int im = F.homology_filtration_piece(p, n).dim();
            if (p <= -n - 1)
                CHECK(im == 0);
            if (p >= -n + 1)
                CHECK(im == hn);
        }
    }
}

TEST_CASE("fundamental cohomological sequence mirrors in the third quadrant") {
    Field f = Field::rationals();
    AugmentationTower tw = dual_numbers_tower(f, 4, 4, 4);
    FundamentalSS ss = fundamental_ss_cohomology(tw);

    CHECK_FALSE(ss.homological);
    CHECK(ss.ok());
    std::map<std::pair<int, int>, int> expected{
        {{0, 0}, 1}, {{0, -1}, 1}, {{-1, -1}, 1}, {{-1, -2}, 1}};
    CHECK(ss.entry_dims == expected);

    REQUIRE(ss.abutment.size() == 4);
    for (size_t k = 0; k < 4; ++k) {
        CHECK(ss.abutment[k].n == static_cast<int>(k) - 3);
        CHECK(ss.abutment[k].homology_dim == 1);
        CHECK(ss.abutment[k].ok);
    }
}

TEST_CASE("five-term sequences of the dual numbers are exact at every joint") {
    Field f = Field::rationals();
    AugmentationTower tw = dual_numbers_tower(f, 4, 4, 4);
    FiveTermPair ft = five_term_54(tw);

    CHECK(ft.homological.engine_dims == std::array<int, 5>{1, 0, 0, 1, 1});
    CHECK(ft.homological.reference_dims == std::array<int, 5>{1, 0, 0, 1, 1});
    CHECK(ft.homological.ok());
    CHECK(ft.cohomological.engine_dims == std::array<int, 5>{1, 1, 0, 0, 1});
    CHECK(ft.cohomological.reference_dims == std::array<int, 5>{1, 1, 0, 0, 1});
    CHECK(ft.cohomological.ok());
    CHECK(ft.ok());

    REQUIRE(ft.homological.strand_reports.size() == 5);
    for (const FiveTermReport& rep : ft.homological.strand_reports)
        CHECK(rep.all_exact());
    for (const FiveTermReport& rep : ft.cohomological.strand_reports)
        CHECK(rep.all_exact());

    // the identifications of the low-degree entries, both frames
    FundamentalSS hss = fundamental_ss_homology(tw);
    FundamentalSS css = fundamental_ss_cohomology(tw);
    CotangentData cot(tw);
    E2Identifications ids = e2_term_identifications(tw, hss, css, cot);
    CHECK(ids.ok);
    REQUIRE(ids.rows.size() == 6);
    CHECK(ids.rows[0].page_dim == 1); // (1,1) carries the weight-2 class
    CHECK(ids.rows[1].page_dim == 0);
    CHECK(ids.rows[2].page_dim == 0);
}

TEST_CASE("five-term middle map is invertible over the polynomial plane") {
    Field f = Field::rationals();
    AugmentationTower tw = plane_tower(f, 4, 3, 3);
    FiveTermPair ft = five_term_54(tw);

    // regular sequence: both outer derived terms vanish and the exterior
    // square accounts for all of T_2
    CHECK(ft.homological.engine_dims == std::array<int, 5>{0, 0, 1, 1, 0});
    CHECK(ft.homological.ok());
    CHECK(ft.cohomological.engine_dims == std::array<int, 5>{0, 1, 1, 0, 0});
    CHECK(ft.cohomological.ok());

    // the surviving map sits in the degree-2 strand and is 1 x 1 invertible
    const FiveTermReport& rep = ft.homological.strand_reports[2];
    CHECK(rep.dims == std::array<int, 5>{0, 0, 1, 1, 0});
    CHECK(rep.maps[2].rows() == 1);
    CHECK(rep.maps[2].cols() == 1);
    CHECK(rep.maps[2].rank() == 1);

    // doubling the coefficient rank doubles every dimension
    FiveTermPair ft2 = five_term_54(tw, 2);
    CHECK(ft2.homological.engine_dims == std::array<int, 5>{0, 0, 2, 2, 0});
    CHECK(ft2.homological.ok());
    CHECK(ft2.cohomological.engine_dims == std::array<int, 5>{0, 2, 2, 0, 0});
    CHECK(ft2.cohomological.ok());

    // second-page rows of the plane: exterior powers of the two classes
    FundamentalSS ss = fundamental_ss_homology(tw);
    CHECK(ss.dim(0, 0) == 1);
    CHECK(ss.dim(0, 1) == 2);
    CHECK(ss.dim(0, 2) == 1);
    CHECK(ss.dim(0, 3) == 0);
    CHECK(ss.ok());
}

TEST_CASE("window discipline: edge entries dropped, shallow towers refused") {
    Field f = Field::rationals();

    // the (2,2) entry of the dual numbers lives at the truncation edge and
    // must not appear among certified entries even though its layer does
    AugmentationTower tw = dual_numbers_tower(f, 4, 4, 2);
    FundamentalSS ss = fundamental_ss_homology(tw);
    CHECK(ss.dim(2, 2) == 0);
    CHECK(ss.level_window == 3);
    for (const auto& [pq, dim] : ss.entry_dims)
        CHECK(pq.first + pq.second <= ss.level_window);

    AugmentationTower shallow = line_tower(f, 2, 3, 2);
    CHECK_THROWS_AS(five_term_54(shallow), window_error);
    CHECK_THROWS_AS(fundamental_ss_homology(shallow, 0), invariant_error);
}

TEST_CASE("symmetric square of a contractible cone is exact") {
    Field f = Field::rationals();

    SymSquareConeReport a = sym_square_cone_check(ChainComplex::concentrated(f, 1, 1), 4);
    CHECK(a.exact);
    CHECK(a.homotopy_dims == std::vector<int>{0, 0, 0, 0});

    // two-term complex in degrees 2, 1 with identity differential
    ChainComplex two(f, 1, {1, 1}, {Matrix::zero(f, 0, 1), Matrix::identity(f, 1)});
    SymSquareConeReport b = sym_square_cone_check(two, 4);
    CHECK(b.exact);

    SymSquareConeReport z = sym_square_cone_check(ChainComplex::zero(f), 3);
    CHECK(z.exact);
    CHECK(z.homotopy_dims.size() == 3);

    CHECK_THROWS_AS(sym_square_cone_check(ChainComplex::concentrated(f, 0, 1), 3),
                    invariant_error);
    CHECK_THROWS_AS(sym_square_cone_check(ChainComplex::concentrated(f, 1, 1), 0),
                    invariant_error);
}

#include <doctest.h>

#include <algorithm>

#include "saw/errors.hpp"
#include "saw/grammar_build.hpp"
#include "saw/pipeline.hpp"
#include "saw/series.hpp"
#include "test_support.hpp"

using namespace saw;

namespace {

std::vector<long> ints(const PowerSeriesQ& s) {
    std::vector<long> out;
    for (const auto& q : s.coeff) {
        REQUIRE(q.get_den() == 1);
        out.push_back(static_cast<long>(q.get_num().get_si()));
    }
    return out;
}

bool same_up_to_sign(const BiPoly& a, const BiPoly& b) {
    if (a.c == b.c) return true;
    BiPoly neg = a;
    for (auto& layer : neg.c)
        for (auto& coeff : layer) coeff = -coeff;
    return neg.c == b.c;
}

BiPoly make_bipoly(std::vector<std::vector<long>> layers) {
    BiPoly p;
    for (auto& l : layers) {
        ZPoly z;
        for (long v : l) z.push_back(v);
        p.c.push_back(z);
    }
    p.normalize();
    return p;
}

} // namespace

TEST_CASE("grammar_to_system translations") {
    SUBCASE("geometric") {
        Grammar g = parse_grammar_text("start S\nS -> ;\nS -> a S ;\n");
        auto sys = grammar_to_system(g);
        REQUIRE(sys.size() == 1);
        REQUIRE(sys.rhs[0].size() == 2); // 1 and t*F
        auto series = solve_series(sys, 5);
        CHECK(ints(series[0]) == std::vector<long>{1, 1, 1, 1, 1, 1});
    }
    SUBCASE("Catalan in t^2") {
        Grammar g = parse_grammar_text("start S\nS -> ;\nS -> a S b S ;\n");
        auto sys = grammar_to_system(g);
        auto series = solve_series(sys, 8);
        CHECK(ints(series[0]) == std::vector<long>{1, 0, 1, 0, 2, 0, 5, 0, 14});
    }
    SUBCASE("the amalgam grammar has 13 unknowns") {
        auto q = quotient_from_cayley(test::load_data("example62.json").spec, 10);
        REQUIRE(q.level3.has_value());
        Grammar g = build_saw_grammar(q);
        auto sys = grammar_to_system(g);
        CHECK(sys.size() == 13); // S + 8 V + 4 U
    }
}

TEST_CASE("solve_series flags improper systems") {
    PolynomialSystem sys;
    sys.names = {"S", "A"};
    sys.rhs.resize(2);
    sys.rhs[0].push_back({1, 0, {1}}); // S = A
    sys.rhs[1].push_back({1, 0, {0}}); // A = S  (unit cycle)
    CHECK_THROWS_AS(sys.validate_proper(), PropernessError);
}

TEST_CASE("eliminate on textbook systems") {
    SUBCASE("geometric: (1 - t) y - 1") {
        Grammar g = parse_grammar_text("start S\nS -> ;\nS -> a S ;\n");
        auto sys = grammar_to_system(g);
        auto series = solve_series(sys, 16);
        BiPoly p = eliminate(sys, 0, series);
        CHECK(same_up_to_sign(p, make_bipoly({{-1}, {1, -1}})));
    }
    SUBCASE("Catalan: t^2 y^2 - y + 1") {
        Grammar g = parse_grammar_text("start S\nS -> ;\nS -> a S b S ;\n");
        auto sys = grammar_to_system(g);
        auto series = solve_series(sys, 24);
        BiPoly p = eliminate(sys, 0, series);
        CHECK(same_up_to_sign(p, make_bipoly({{1}, {-1}, {0, 0, 1}})));
        // verified annihilation at higher order
        auto f = solve_series(sys, 64)[0];
        CHECK(annihilates(p, f));
    }
}

TEST_CASE("eliminate is stable under unknown relabelling") {
    // the same system presented in two different unknown orders must yield
    // the same annihilating polynomial for the same component
    PolynomialSystem sys1;
    sys1.names = {"S", "X", "Y"};
    sys1.rhs.resize(3);
    // S = 1 + t X Y ; X = t + t^2 X^2 ; Y = t + t X + t^2 Y^2
    sys1.rhs[0].push_back({1, 0, {}});
    sys1.rhs[0].push_back({1, 1, {1, 2}});
    sys1.rhs[1].push_back({1, 1, {}});
    sys1.rhs[1].push_back({1, 2, {1, 1}});
    sys1.rhs[2].push_back({1, 1, {}});
    sys1.rhs[2].push_back({1, 1, {1}});
    sys1.rhs[2].push_back({1, 2, {2, 2}});

    PolynomialSystem sys2;
    sys2.names = {"S", "Y", "X"}; // swapped unknown ids 1 <-> 2
    sys2.rhs.resize(3);
    sys2.rhs[0].push_back({1, 0, {}});
    sys2.rhs[0].push_back({1, 1, {1, 2}});
    sys2.rhs[2].push_back({1, 1, {}});
    sys2.rhs[2].push_back({1, 2, {2, 2}});
    sys2.rhs[1].push_back({1, 1, {}});
    sys2.rhs[1].push_back({1, 1, {2}});
    sys2.rhs[1].push_back({1, 2, {1, 1}});

    auto s1 = solve_series(sys1, 32);
    auto s2 = solve_series(sys2, 32);
    CHECK(s1[0].coeff == s2[0].coeff);
    BiPoly p1 = eliminate(sys1, 0, s1);
    BiPoly p2 = eliminate(sys2, 0, s2);
    CHECK(same_up_to_sign(p1, p2));
    CHECK(annihilates(p1, solve_series(sys1, 80)[0]));
}

TEST_CASE("solve_series output for grammar systems is integral with c0 = 1") {
    for (const char* file : {"ladder.json", "z3z2.json", "tree222.json"}) {
        CAPTURE(file);
        auto q = pipeline_quotient(test::load_data(file), 9);
        Grammar g = build_saw_grammar(q);
        auto sys = grammar_to_system(g);
        auto series = solve_series(sys, 8);
        auto v = ints(series[0]);
        CHECK(v[0] == 1);
        for (long x : v) CHECK(x >= 0);
    }
}

TEST_CASE("squarefree and discriminant helpers") {
    // P = (y - 1)^2 (y + t): squarefree part (y-1)(y+t)
    MPoly y = MPoly::variable(2, 1), t = MPoly::variable(2, 0);
    MPoly one = MPoly::constant(2, 1);
    MPoly P = (y - one) * (y - one) * (y + t);
    BiPoly bp = bipoly_from_mpoly(P, 0, 1);
    BiPoly sf = squarefree_y(bp);
    BiPoly expected = bipoly_from_mpoly((y - one) * (y + t), 0, 1);
    CHECK(same_up_to_sign(sf, expected));

    // disc_y(t^2 y^2 - y + 1) = 1 - 4 t^2
    BiPoly cat = make_bipoly({{1}, {-1}, {0, 0, 1}});
    ZPoly disc = discriminant_y(cat);
    ZPoly want{1, 0, -4};
    CHECK(disc == want);
}

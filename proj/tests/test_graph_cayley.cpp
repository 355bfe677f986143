#include <doctest.h>

#include <set>

#include "saw/cayley.hpp"
#include "saw/errors.hpp"
#include "test_support.hpp"

using namespace saw;

namespace {

LabelledGraph single_edge() {
    LabelledGraph g;
    g.alphabet.add("s");
    g.alphabet.add("S");
    g.alphabet.set_inverse(0, 1);
    g.vertex_names = {"u", "v"};
    g.darts = {{0, 1, 0}, {1, 0, 1}};
    g.twin = {1, 0};
    g.rebuild_index();
    return g;
}

} // namespace

TEST_CASE("validate: minimal graph and violations") {
    SUBCASE("single undirected edge is valid") {
        CHECK(validate(single_edge()).ok());
    }
    SUBCASE("determinism violation: equal labels at one tail") {
        LabelledGraph g;
        g.alphabet.add("s");
        g.alphabet.set_inverse(0, 0);
        g.vertex_names = {"u", "v", "w"};
        g.darts = {{0, 1, 0}, {1, 0, 0}, {0, 2, 0}, {2, 0, 0}};
        g.twin = {1, 0, 3, 2};
        auto rep = validate(g);
        CHECK(!rep.ok());
        bool det = false;
        for (const auto& i : rep.issues)
            if (i.kind == "determinism") det = true;
        CHECK(det);
    }
    SUBCASE("involution pairing two darts with equal tails") {
        LabelledGraph g;
        g.alphabet.add("s");
        g.alphabet.set_inverse(0, 0);
        g.vertex_names = {"u", "v", "w"};
        g.darts = {{0, 1, 0}, {0, 2, 0}};
        g.twin = {1, 0};
        auto rep = validate(g);
        CHECK(!rep.ok());
        bool inv = false;
        for (const auto& i : rep.issues)
            if (i.kind == "involution") inv = true;
        CHECK(inv);
    }
}

TEST_CASE("expand_ball on Z") {
    auto doc = test::load_data("z_line.json");
    auto view = expand_ball(doc.spec, 2);
    REQUIRE(view.graph.num_vertices() == 5); // path on 5 vertices
    CHECK(view.depth[view.root] == 0);
    // root is the centre: exactly two vertices at each depth 1, 2
    int d1 = 0, d2 = 0;
    for (int v = 0; v < 5; ++v) {
        if (view.depth[v] == 1) ++d1;
        if (view.depth[v] == 2) ++d2;
    }
    CHECK(d1 == 2);
    CHECK(d2 == 2);
    CHECK(validate(view.graph).ok());
    CHECK(!view.complete);
}

TEST_CASE("expand_ball on the ladder, radius 1") {
    auto doc = test::load_data("ladder.json");
    auto view = expand_ball(doc.spec, 1);
    CHECK(view.graph.num_vertices() == 4); // root, a-step, A-step, c-step
    CHECK(validate(view.graph).ok());
}

TEST_CASE("expand_ball regression: amalgam ball has 9 vertices at radius 2") {
    auto doc = test::load_data("example62.json");
    auto view = expand_ball(doc.spec, 2);
    CHECK(view.graph.num_vertices() == 9);
    CHECK(validate(view.graph).ok());
}

TEST_CASE("expand_ball monotone consistency") {
    for (const char* file : {"ladder.json", "example62.json", "z3z2.json"}) {
        CAPTURE(file);
        auto doc = test::load_data(file);
        auto small = expand_ball(doc.spec, 3);
        auto big = expand_ball(doc.spec, 4);
        // vertices of radius <= 3 coincide (as normal-form words)
        std::set<std::string> sv, bv;
        for (int v = 0; v < small.graph.num_vertices(); ++v)
            sv.insert(small.graph.vertex_names[v]);
        for (int v = 0; v < big.graph.num_vertices(); ++v)
            if (big.depth[v] <= 3) bv.insert(big.graph.vertex_names[v]);
        CHECK(sv == bv);
        CHECK(validate(big.graph).ok());
    }
}

TEST_CASE("expand_ball rejects bad specs") {
    SUBCASE("generator equal to identity") {
        RewritingSystem rs;
        rs.alphabet.add("e");
        rs.alphabet.set_inverse(0, 0);
        rs.rules.push_back({{0}, {}});
        CHECK_THROWS_AS(expand_ball({rs}, 2), InvalidSpecError);
    }
    SUBCASE("order-two generator not declared self-inverse") {
        RewritingSystem rs;
        rs.alphabet.add("c");
        rs.alphabet.add("C");
        rs.alphabet.set_inverse(0, 1);
        rs.rules.push_back({rs.alphabet.parse("c c"), {}});
        rs.rules.push_back({rs.alphabet.parse("C C"), {}});
        rs.rules.push_back({rs.alphabet.parse("c C"), {}});
        rs.rules.push_back({rs.alphabet.parse("C c"), {}});
        CHECK_THROWS_AS(expand_ball({rs}, 2), InvalidSpecError);
    }
}

TEST_CASE("full_view wraps finite graphs") {
    auto doc = test::load_data("square.json");
    auto view = full_view(doc.graph, 0);
    CHECK(view.complete);
    CHECK(view.radius == 2);
    CHECK(view.guard() > 1000);
}

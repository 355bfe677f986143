#include <doctest.h>

#include <set>

#include "saw/errors.hpp"
#include "saw/tutte.hpp"
#include "test_support.hpp"

using namespace saw;

namespace {

LabelledGraph path3() {
    LabelledGraph g;
    g.alphabet.add("a");
    g.alphabet.add("A");
    g.alphabet.set_inverse(0, 1);
    g.vertex_names = {"u", "v", "w"};
    g.darts = {{0, 1, 0}, {1, 0, 1}, {1, 2, 0}, {2, 1, 1}};
    g.twin = {1, 0, 3, 2};
    g.rebuild_index();
    return g;
}

LabelledGraph bowtie() {
    LabelledGraph g;
    g.alphabet.add("a");
    g.alphabet.add("A");
    g.alphabet.add("b");
    g.alphabet.add("B");
    g.alphabet.set_inverse(0, 1);
    g.alphabet.set_inverse(2, 3);
    g.vertex_names = {"c", "x", "y", "p", "q"};
    auto add_edge = [&](int u, int v, Token t) {
        g.darts.push_back({u, v, t});
        g.darts.push_back({v, u, g.alphabet.inverse(t)});
        g.twin.push_back(static_cast<int>(g.darts.size()) - 1);
        g.twin.push_back(static_cast<int>(g.darts.size()) - 2);
    };
    // triangle c-x-y with labels a, and triangle c-p-q with labels b
    add_edge(0, 1, 0);
    add_edge(1, 2, 0);
    add_edge(2, 0, 0);
    add_edge(0, 3, 2);
    add_edge(3, 4, 2);
    add_edge(4, 0, 2);
    g.rebuild_index();
    return g;
}

MultiGraph k4() {
    MultiGraph m;
    m.n = 4;
    int id = 0;
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) m.edges.push_back({u, v, id++, false, -1, -1});
    return m;
}

MultiGraph cycle_graph(int n) {
    MultiGraph m;
    m.n = n;
    for (int i = 0; i < n; ++i)
        m.edges.push_back({i, (i + 1) % n, i, false, -1, -1});
    return m;
}

// random 2-connected multigraph by ear additions
MultiGraph random_two_connected(test::Rng& rng, int max_vertices) {
    int c = 3 + rng.below(3);
    MultiGraph m = cycle_graph(c);
    int next_id = c;
    int ears = rng.below(6);
    for (int e = 0; e < ears; ++e) {
        int u = rng.below(m.n);
        int v = rng.below(m.n);
        if (u == v) continue;
        int len = rng.below(3); // inner vertices of the ear
        if (m.n + len > max_vertices) continue;
        int prev = u;
        for (int i = 0; i < len; ++i) {
            int w = m.n++;
            m.edges.push_back({prev, w, next_id++, false, -1, -1});
            prev = w;
        }
        m.edges.push_back({prev, v, next_id++, false, -1, -1});
    }
    return m;
}

} // namespace

TEST_CASE("block_cut_tree") {
    SUBCASE("path on 3 vertices") {
        auto t = block_cut_tree(path3());
        CHECK(t.blocks.size() == 2);
        CHECK(t.cutvertices == std::vector<int>{1});
    }
    SUBCASE("4-cycle") {
        auto t = block_cut_tree(test::load_data("square.json").graph);
        CHECK(t.blocks.size() == 1);
        CHECK(t.cutvertices.empty());
    }
    SUBCASE("bowtie") {
        auto t = block_cut_tree(bowtie());
        CHECK(t.blocks.size() == 2);
        CHECK(t.cutvertices == std::vector<int>{0});
        CHECK(t.incidence.size() == 2);
    }
}

TEST_CASE("tutte_decomposition base cases") {
    SUBCASE("K4 is a single 3-connected node") {
        auto t = tutte_decomposition(k4());
        REQUIRE(t.nodes.size() == 1);
        CHECK(t.nodes[0].kind == BlockKind::ThreeConnected);
        CHECK(t.edges.empty());
    }
    SUBCASE("5-cycle is a single cycle node") {
        auto t = tutte_decomposition(cycle_graph(5));
        REQUIRE(t.nodes.size() == 1);
        CHECK(t.nodes[0].kind == BlockKind::Cycle);
    }
    SUBCASE("errors") {
        MultiGraph two;
        two.n = 2;
        two.edges = {{0, 1, 0, false, -1, -1}, {0, 1, 1, false, -1, -1}};
        CHECK_THROWS_AS(tutte_decomposition(two), InvalidSpecError);
        MultiGraph disc = cycle_graph(3);
        disc.n = 5;
        disc.edges.push_back({3, 4, 9, false, -1, -1});
        CHECK_THROWS_AS(tutte_decomposition(disc), InvalidSpecError);
    }
}

TEST_CASE("K4 minus an edge: cycle - multilink - cycle") {
    MultiGraph m = k4();
    // drop edge {2,3}
    m.edges.erase(std::remove_if(m.edges.begin(), m.edges.end(),
                                 [](const MEdge& e) { return e.u == 2 && e.v == 3; }),
                  m.edges.end());
    auto t = tutte_decomposition(m);
    REQUIRE(t.nodes.size() == 3);
    std::multiset<BlockKind> kinds;
    for (const auto& n : t.nodes) kinds.insert(n.kind);
    CHECK(kinds == std::multiset<BlockKind>{BlockKind::Cycle, BlockKind::Cycle,
                                            BlockKind::Multilink});
    // the multilink has 3 edges: 1 real + 2 virtual
    for (const auto& n : t.nodes) {
        if (n.kind != BlockKind::Multilink) continue;
        CHECK(n.graph.edges.size() == 3);
        int virt = 0;
        for (const auto& e : n.graph.edges) virt += e.virt;
        CHECK(virt == 2);
    }
    CHECK(t.edges.size() == 2);
}

TEST_CASE("theta graph: bond with three cycles") {
    // three internally disjoint paths between 0 and 1
    MultiGraph m;
    m.n = 5;
    m.edges = {{0, 1, 0, false, -1, -1},           // direct edge
               {0, 2, 1, false, -1, -1}, {2, 1, 2, false, -1, -1},
               {0, 3, 3, false, -1, -1}, {3, 4, 4, false, -1, -1},
               {4, 1, 5, false, -1, -1}};
    auto t = tutte_decomposition(m);
    REQUIRE(t.nodes.size() == 3);
    std::multiset<BlockKind> kinds;
    for (const auto& n : t.nodes) kinds.insert(n.kind);
    CHECK(kinds == std::multiset<BlockKind>{BlockKind::Multilink, BlockKind::Cycle,
                                            BlockKind::Cycle});
}

TEST_CASE("no tree edge joins equal mergeable kinds") {
    test::Rng rng(0xabcdULL);
    for (int iter = 0; iter < 100; ++iter) {
        auto m = random_two_connected(rng, 12);
        if (m.edges.size() < 3 || !m.two_connected()) continue;
        auto t = tutte_decomposition(m);
        for (const auto& e : t.edges) {
            auto k1 = t.nodes[e.n1].kind, k2 = t.nodes[e.n2].kind;
            bool both_ml = k1 == BlockKind::Multilink && k2 == BlockKind::Multilink;
            bool both_cy = k1 == BlockKind::Cycle && k2 == BlockKind::Cycle;
            CHECK(!both_ml);
            CHECK(!both_cy);
        }
        for (const auto& n : t.nodes) CHECK(n.graph.edges.size() >= 3);
    }
}

TEST_CASE("re-amalgamation reproduces the input (round trip)") {
    test::Rng rng(0x5eedULL);
    int tested = 0;
    for (int iter = 0; iter < 400 && tested < 200; ++iter) {
        auto m = random_two_connected(rng, 12);
        if (m.edges.size() < 3 || !m.two_connected()) continue;
        ++tested;
        auto t = tutte_decomposition(m);
        auto back = amalgamate(t);
        CHECK(canonical_edges(back) == canonical_edges(m));
    }
    CHECK(tested >= 200);
}

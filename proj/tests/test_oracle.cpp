#include <doctest.h>

#include <set>

#include "saw/errors.hpp"
#include "saw/oracle.hpp"
#include "test_support.hpp"

using namespace saw;

namespace {

BallView single_edge_view() {
    LabelledGraph g;
    g.alphabet.add("s");
    g.alphabet.add("S");
    g.alphabet.set_inverse(0, 1);
    g.vertex_names = {"u", "v"};
    g.darts = {{0, 1, 0}, {1, 0, 1}};
    g.twin = {1, 0};
    g.rebuild_index();
    return full_view(g, 0);
}

// 3-cycle labelled a clockwise, A anticlockwise
BallView triangle_view() {
    LabelledGraph g;
    g.alphabet.add("a");
    g.alphabet.add("A");
    g.alphabet.set_inverse(0, 1);
    g.vertex_names = {"u", "v", "w"};
    g.darts = {{0, 1, 0}, {1, 0, 1}, {1, 2, 0}, {2, 1, 1}, {2, 0, 0}, {0, 2, 1}};
    g.twin = {1, 0, 3, 2, 5, 4};
    g.rebuild_index();
    return full_view(g, 0);
}

std::vector<long> longs(const SawCounts& c) {
    std::vector<long> out;
    for (const auto& z : c.counts) out.push_back(z.get_si());
    return out;
}

} // namespace

TEST_CASE("count_saws small cases") {
    CHECK(longs(count_saws(single_edge_view(), 1)) == std::vector<long>{1, 1});
    auto sq = full_view(test::load_data("square.json").graph, 0);
    CHECK(longs(count_saws(sq, 3)) == std::vector<long>{1, 2, 2, 2});
    auto ladder = expand_ball(test::load_data("ladder.json").spec, 4);
    CHECK(longs(count_saws(ladder, 3)) == std::vector<long>{1, 3, 6, 12});
}

TEST_CASE("count_saws guard") {
    auto ladder = expand_ball(test::load_data("ladder.json").spec, 4);
    CHECK_THROWS_AS(count_saws(ladder, 5), GuardError);
}

TEST_CASE("parallel counting merges deterministically") {
    auto view = expand_ball(test::load_data("example62.json").spec, 7);
    auto serial = count_saws(view, 7, 1);
    auto parallel = count_saws(view, 7, 4);
    CHECK(serial.counts == parallel.counts);
}

TEST_CASE("saw_words") {
    SUBCASE("single edge") {
        auto words = saw_words(single_edge_view(), 1);
        REQUIRE(words.size() == 2);
        CHECK(words[0] == Word{});
        CHECK(words[1] == Word{0});
    }
    SUBCASE("3-cycle") {
        auto words = saw_words(triangle_view(), 2);
        std::set<std::string> got;
        for (const auto& w : words) got.insert(triangle_view().graph.alphabet.format(w));
        CHECK(got == std::set<std::string>{"", "a", "A", "a a", "A A"});
    }
    SUBCASE("ladder words match counts") {
        auto ladder = expand_ball(test::load_data("ladder.json").spec, 4);
        auto words = saw_words(ladder, 2);
        CHECK(words.size() == 10); // 1 + 3 + 6
        auto counts = count_saws(ladder, 2);
        std::vector<int> per_len(3, 0);
        for (const auto& w : words) per_len[w.size()]++;
        for (int n = 0; n <= 2; ++n) CHECK(counts.counts[n] == per_len[n]);
        // shortlex sorted
        for (size_t i = 1; i < words.size(); ++i)
            CHECK(shortlex_less(words[i - 1], words[i]));
    }
}

TEST_CASE("every enumerated word traces as a SAW, every other traces as not") {
    auto ladder = expand_ball(test::load_data("ladder.json").spec, 5);
    auto words = saw_words(ladder, 3);
    std::set<Word> in_list(words.begin(), words.end());
    for (const auto& w : words)
        CHECK(walk_of_word(ladder, w).verdict == WalkResult::Verdict::saw);
    // exhaustive complement up to length 3
    const int k = ladder.graph.alphabet.size();
    std::vector<Word> all{{}};
    for (int len = 0; len < 3; ++len) {
        std::vector<Word> next;
        for (const auto& w : all)
            if (static_cast<int>(w.size()) == len)
                for (Token t = 0; t < k; ++t) {
                    Word x = w;
                    x.push_back(t);
                    next.push_back(x);
                }
        for (auto& w : next) all.push_back(w);
    }
    for (const auto& w : all) {
        auto res = walk_of_word(ladder, w);
        bool is_saw = res.verdict == WalkResult::Verdict::saw;
        CHECK(is_saw == in_list.count(w));
    }
}

TEST_CASE("walk_of_word verdicts") {
    auto ladder = expand_ball(test::load_data("ladder.json").spec, 5);
    const auto& sigma = ladder.graph.alphabet;
    CHECK(walk_of_word(ladder, sigma.parse("a")).verdict == WalkResult::Verdict::saw);
    auto back = walk_of_word(ladder, sigma.parse("a A"));
    CHECK(back.verdict == WalkResult::Verdict::not_saw);
    CHECK(back.position == 2);
    auto square = walk_of_word(ladder, sigma.parse("c a c A"));
    CHECK(square.verdict == WalkResult::Verdict::not_saw);
    CHECK(square.position == 4);
    // frontier guard
    CHECK_THROWS_AS(walk_of_word(ladder, sigma.parse("a a a a a a")), GuardError);
}

TEST_CASE("submultiplicativity and degree bound on the amalgam ball") {
    auto view = expand_ball(test::load_data("example62.json").spec, 8);
    auto c = count_saws(view, 8);
    for (int m = 0; m <= 8; ++m)
        for (int n = 0; m + n <= 8; ++n)
            CHECK(c.counts[m + n] <= c.counts[m] * c.counts[n]);
    // c_n <= d (d-1)^(n-1), d = 3
    mpz_class bound = 3;
    for (int n = 1; n <= 8; ++n) {
        CHECK(c.counts[n] <= bound);
        bound *= 2;
    }
}

TEST_CASE("probe_family on the ladder: member iff k > l") {
    auto ladder = expand_ball(test::load_data("ladder.json").spec, 12);
    const auto& sigma = ladder.graph.alphabet;
    WordTemplate t;
    t.pieces = {{sigma.parse("a"), -1},
                {sigma.parse("c"), -1},
                {sigma.parse("a"), 0},
                {sigma.parse("c"), -1},
                {sigma.parse("A"), 1}};
    auto table = probe_family(ladder, t, {{1, 4}, {1, 4}});
    REQUIRE(table.size() == 16);
    for (const auto& e : table)
        CHECK(e.member == (e.exponents[0] > e.exponents[1]));
}

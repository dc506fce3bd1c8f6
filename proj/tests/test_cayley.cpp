#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ggt/cayley.hpp"
#include "ggt/presets.hpp"
#include "ggt/rng.hpp"

using namespace ggt;

namespace {

// Independent oracle: word length of every element reachable by words of
// length <= n is the first level at which its normal form appears.
std::map<Word, int> brute_lengths(const GroupBackend& b, int n) {
    std::map<Word, int> first_seen;
    std::vector<Word> level{Word{}};
    first_seen[b.reduce(Word{})] = 0;
    for (int len = 1; len <= n; ++len) {
        std::vector<Word> next;
        for (const Word& w : level)
            for (char c : b.alphabet().letters()) {
                Word x = w + c;
                next.push_back(x);
                Word nf = b.reduce(x);
                auto it = first_seen.find(nf);
                if (it == first_seen.end()) first_seen[nf] = len;
            }
        level = std::move(next);
    }
    return first_seen;
}

std::vector<std::uint64_t> brute_sphere_counts(const GroupBackend& b, int n) {
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& [nf, len] : brute_lengths(b, n))
        counts[static_cast<std::size_t>(len)] += 1;
    return counts;
}

}  // namespace

TEST_CASE("sphere counts match the brute-force oracle up to radius 6") {
    for (const char* name : {"f2", "f3", "z", "z2", "z2z3"}) {
        GroupBackend b = preset_backend(name);
        SphereTable t = enumerate_ball(b, 6);
        auto oracle = brute_sphere_counts(b, 6);
        for (int n = 0; n <= 6; ++n) {
            INFO(name << " sphere " << n);
            CHECK(t.b[static_cast<std::size_t>(n)] == oracle[static_cast<std::size_t>(n)]);
        }
    }
}

TEST_CASE("frozen sphere counts") {
    SphereTable f2 = enumerate_ball(preset_backend("f2"), 3);
    CHECK(f2.b == std::vector<std::uint64_t>{1, 4, 12, 36});
    CHECK(f2.cum[3] == 53);

    SphereTable z2 = enumerate_ball(preset_backend("z2"), 3);
    CHECK(z2.b == std::vector<std::uint64_t>{1, 4, 8, 12});
    CHECK(z2.cum[3] == 25);

    SphereTable zero = enumerate_ball(preset_backend("z2"), 0);
    CHECK(zero.b == std::vector<std::uint64_t>{1});
}

TEST_CASE("spheres are sorted, disjoint and duplicate-free") {
    GroupBackend b = preset_backend("z2z3");
    SphereTable t = enumerate_ball(b, 7);
    std::set<Word> all;
    for (const auto& sphere : t.spheres) {
        CHECK(std::is_sorted(sphere.begin(), sphere.end(),
                             [&](const Word& u, const Word& v) {
                                 return b.shortlex_less(u, v);
                             }));
        for (const Word& w : sphere) {
            CHECK(b.is_normal(w));
            CHECK(all.insert(w).second);  // across-sphere disjointness
        }
    }
}

TEST_CASE("worker count does not change the table") {
    GroupBackend b = preset_backend("f2");
    SphereTable t1 = enumerate_ball(b, 6, {8'000'000, 1});
    SphereTable t4 = enumerate_ball(b, 6, {8'000'000, 4});
    CHECK(t1.spheres == t4.spheres);
    CHECK(sphere_csv(t1) == sphere_csv(t4));
}

TEST_CASE("element budget reports the last completed radius") {
    try {
        enumerate_ball(preset_backend("f2"), 12, {1000, 1});
        FAIL("expected budget_error");
    } catch (const budget_error& e) {
        CHECK(e.completed_radius == 5);  // ball of radius 5 holds 485 elements
    }
}

TEST_CASE("word length") {
    GroupBackend f2 = preset_backend("f2");
    CHECK(word_length(f2, f2.reduce("abAB")) == 4);
    CHECK(word_length(f2, Word{}) == 0);
    GroupBackend z2 = preset_backend("z2");
    CHECK(word_length(z2, z2.reduce("aaaBB")) == 5);
}

TEST_CASE("geodesic words are shortlex-least among all geodesics") {
    GroupBackend z2 = preset_backend("z2");
    GeodesicOracle oracle(z2);
    Word g = z2.reduce("aba");
    CHECK(g == "aab");
    CHECK(oracle.geodesic_word(g) == "aab");

    // oracle: all length-3 words evaluating to g
    std::vector<Word> geodesics;
    std::vector<Word> level{Word{}};
    for (int len = 0; len < 3; ++len) {
        std::vector<Word> next;
        for (const Word& w : level)
            for (char c : z2.alphabet().letters()) next.push_back(w + c);
        level = std::move(next);
    }
    for (const Word& w : level)
        if (z2.reduce(w) == g) geodesics.push_back(w);
    CHECK(std::count(geodesics.begin(), geodesics.end(), "aab") == 1);
    for (const Word& w : geodesics)
        CHECK_FALSE(z2.alphabet().shortlex_less(w, Word("aab")));
}

TEST_CASE("geodesic words on the rewriting backend match brute force") {
    GroupBackend g = preset_backend("z2z3");
    GeodesicOracle oracle(g);
    auto lengths = brute_lengths(g, 5);
    // collect, per element of length <= 4, the shortlex-least word over all
    // words of that exact length
    std::map<Word, Word> best;
    std::vector<Word> level{Word{}};
    for (int len = 0; len <= 4; ++len) {
        for (const Word& w : level) {
            Word nf = g.reduce(w);
            auto it = lengths.find(nf);
            if (it != lengths.end() && it->second == len) {
                auto b = best.find(nf);
                if (b == best.end() || g.alphabet().lex_less(w, b->second)) best[nf] = w;
            }
        }
        std::vector<Word> next;
        for (const Word& w : level)
            for (char c : g.alphabet().letters()) next.push_back(w + c);
        level = std::move(next);
    }
    for (const auto& [nf, expect] : best) CHECK(oracle.geodesic_word(nf) == expect);
}

TEST_CASE("tree geodesics and path vertices") {
    GroupBackend f2 = preset_backend("f2");
    GeodesicOracle oracle(f2);
    CHECK(oracle.geodesic_word(f2.reduce("aB")) == "aB");
    CHECK(oracle.path_vertices(Word{}, "aB") ==
          std::vector<Word>{"", "a", "aB"});
    CHECK(oracle.path_vertices(Word{}, Word{}) == std::vector<Word>{""});
}

TEST_CASE("triangle inequality on random ball pairs") {
    for (const char* name : {"f2", "z2z3"}) {
        GroupBackend b = preset_backend(name);
        SphereTable t = enumerate_ball(b, 5);
        BallIndex index(t, b);
        Rng rng(17);
        for (int i = 0; i < 200; ++i) {
            const Word& g = index.word(static_cast<std::uint32_t>(rng.below(index.size())));
            const Word& h = index.word(static_cast<std::uint32_t>(rng.below(index.size())));
            int dg = word_length(b, g), dh = word_length(b, h);
            int dgh = word_length(b, b.multiply(b.invert(g), h));
            CHECK(std::abs(dg - dh) <= dgh);
        }
    }
}

TEST_CASE("ball index adjacency") {
    GroupBackend b = preset_backend("z2");
    SphereTable t = enumerate_ball(b, 4);
    BallIndex index(t, b);
    CHECK(index.size() == t.total());
    auto id = index.find(b.reduce("ab"));
    REQUIRE(id.has_value());
    CHECK(index.length(*id) == 2);
    auto nb = index.neighbor(*id, 'a');
    REQUIRE(nb.has_value());
    CHECK(index.word(*nb) == "aab");
    // stepping outside the ball from the boundary
    auto corner = index.find(b.reduce("aaaa"));
    REQUIRE(corner.has_value());
    CHECK_FALSE(index.neighbor(*corner, 'a').has_value());
}

TEST_CASE("search-certified word length without geodesic normal forms") {
    // free cancellation rules, but the geodesic flag withheld: distances must
    // come from breadth-first search and agree with the normal-form lengths
    GroupBackend free2 = preset_backend("f2");
    GroupBackend blind = GroupBackend::rewriting(
        "blind", free2.alphabet(),
        {{"aA", ""}, {"Aa", ""}, {"bB", ""}, {"Bb", ""}},
        BackendFlags{.geodesic_normal_forms = false, .tree_like = false});
    CHECK(word_length(blind, blind.reduce("abAB")) == 4);
    CHECK(word_length(blind, blind.reduce("aAb")) == 1);
    CHECK(word_length(blind, Word{}) == 0);
    CHECK_THROWS_AS(word_length(blind, blind.reduce("aaaa"), 20), budget_error);
    GeodesicOracle oracle(blind);
    CHECK_THROWS_AS(oracle.geodesic_word(Word("ab")), precondition_error);

    SphereTable t = enumerate_ball(blind, 4);
    SphereTable ref = enumerate_ball(free2, 4);
    CHECK(t.b == ref.b);  // layering never depended on the flag
}

TEST_CASE("element dump is stratified and complete") {
    // shortlex uses the declared letter order a < A < b < B, not char codes
    GroupBackend b = preset_backend("f2");
    SphereTable t = enumerate_ball(b, 2);
    std::string dump = element_dump(t);
    CHECK(dump ==
          "\na\nA\nb\nB\naa\nab\naB\nAA\nAb\nAB\nba\nbA\nbb\nBa\nBA\nBB\n");
}

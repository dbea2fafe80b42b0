#include <catch2/catch.hpp>

#include "oracles.hpp"
#include "urykit/cantor.hpp"
#include "urykit/metric_space.hpp"
#include "urykit/partial_map.hpp"
#include "urykit/weighted_graph.hpp"

using namespace urykit;

namespace {

FiniteMetricSpace triangle(Rat d01, Rat d02, Rat d12) {
    return make_space({{Rat(0), d01, d02}, {d01, Rat(0), d12}, {d02, d12, Rat(0)}});
}

} // namespace

TEST_CASE("validate_metric on the singleton") {
    FiniteMetricSpace s = make_space({{Rat(0)}});
    CHECK(validate_metric(s).ok());
}

TEST_CASE("validate_metric reports the violated triangle with its witness") {
    FiniteMetricSpace s = triangle(Rat(1), Rat(3), Rat(1));
    ValidationReport rep = validate_metric(s);
    REQUIRE_FALSE(rep.ok());
    REQUIRE(rep.violations.size() == 1);
    const MetricViolation& v = rep.violations.front();
    CHECK(v.axiom == MetricAxiom::Triangle);
    CHECK(v.i == 0);
    CHECK(v.j == 1);
    CHECK(v.k == 2);
    CHECK(v.lhs == 3);
    CHECK(v.rhs == 2);
}

TEST_CASE("validate_metric rejects malformed matrices as input errors") {
    FiniteMetricSpace bad;
    bad.labels = {"a", "b"};
    bad.d = {{Rat(0), Rat(1)}};
    CHECK_THROWS_AS(validate_metric(bad), input_error);

    FiniteMetricSpace neg = triangle(Rat(-1), Rat(1), Rat(1));
    CHECK_THROWS_AS(validate_metric(neg), input_error);
}

TEST_CASE("validate_metric agrees with the triple-loop oracle on random matrices") {
    SplitMix64 rng(7001);
    for (int t = 0; t < 100; ++t) {
        FiniteMetricSpace s = oracles::random_symmetric_matrix(rng, 6);
        CHECK(validate_metric(s).ok() == oracles::metric_axioms_hold(s));
    }
    // and on genuinely valid spaces
    for (int t = 0; t < 50; ++t) {
        FiniteMetricSpace s = oracles::random_space(rng, 7);
        CHECK(validate_metric(s).ok());
        CHECK(oracles::metric_axioms_hold(s));
    }
}

TEST_CASE("path_completion of a single edge") {
    WeightedGraph g;
    g.vertices = {"a", "b"};
    g.edges = {{0, 1, Rat(1)}};
    FiniteMetricSpace s = path_completion(g);
    CHECK(s.d[0][1] == 1);
}

TEST_CASE("path_completion shortcuts a long edge") {
    WeightedGraph g;
    g.vertices = default_labels(3, "v");
    g.edges = {{0, 1, Rat(1)}, {1, 2, Rat(1)}, {0, 2, Rat(5)}};
    FiniteMetricSpace s = path_completion(g);
    CHECK(s.d[0][2] == 2);
    auto oracle = oracles::all_simple_paths_metric(g);
    REQUIRE(oracle);
    CHECK(spaces_equal(s, *oracle));
}

TEST_CASE("path_completion extends weights when every edge is shortest") {
    WeightedGraph g;
    g.vertices = default_labels(3, "v");
    g.edges = {{0, 1, Rat(2)}, {1, 2, Rat(3)}, {0, 2, Rat(4)}};
    FiniteMetricSpace s = path_completion(g);
    CHECK(s.d[0][1] == 2);
    CHECK(s.d[1][2] == 3);
    CHECK(s.d[0][2] == 4);
    auto oracle = oracles::all_simple_paths_metric(g);
    REQUIRE(oracle);
    CHECK(spaces_equal(s, *oracle));
}

TEST_CASE("path_completion errors on disconnected graphs") {
    WeightedGraph g;
    g.vertices = default_labels(3, "v");
    g.edges = {{0, 1, Rat(1)}};
    CHECK_THROWS_AS(path_completion(g), input_error);
}

TEST_CASE("path_completion rejects bad edges") {
    WeightedGraph g;
    g.vertices = default_labels(2, "v");
    g.edges = {{0, 0, Rat(1)}};
    CHECK_THROWS_AS(path_completion(g), input_error);
    g.edges = {{0, 1, Rat(0)}};
    CHECK_THROWS_AS(path_completion(g), input_error);
    g.edges = {{0, 1, Rat(1)}, {1, 0, Rat(2)}};
    CHECK_THROWS_AS(path_completion(g), input_error);
}

TEST_CASE("path_completion equals the all-simple-paths oracle on seeded graphs") {
    SplitMix64 rng(90210);
    for (int t = 0; t < 60; ++t) {
        WeightedGraph g = oracles::random_connected_graph(rng, 8);
        FiniteMetricSpace fast = path_completion(g);
        auto slow = oracles::all_simple_paths_metric(g);
        REQUIRE(slow);
        CHECK(spaces_equal(fast, *slow));
        CHECK(validate_metric(fast).ok());
    }
}

TEST_CASE("path_completion is idempotent on valid metrics") {
    SplitMix64 rng(555);
    for (int t = 0; t < 30; ++t) {
        FiniteMetricSpace s = oracles::random_space(rng, 8);
        FiniteMetricSpace again = path_completion(complete_graph(s));
        CHECK(spaces_equal(s, again));
    }
}

TEST_CASE("distortion of the identity is 1") {
    SplitMix64 rng(11);
    FiniteMetricSpace s = oracles::random_space(rng, 6);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < s.size(); ++i)
        pairs.emplace_back(i, i);
    PartialMap m = make_partial_map(s, s, pairs);
    Distortion d = distortion(m);
    CHECK_FALSE(d.infinite);
    CHECK(d.value == 1);
}

TEST_CASE("distortion of a single stretched pair") {
    FiniteMetricSpace x = make_space({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
    FiniteMetricSpace y = make_space({{Rat(0), Rat(Int(3), Int(2))}, {Rat(Int(3), Int(2)), Rat(0)}});
    PartialMap m = make_partial_map(x, y, {{0, 0}, {1, 1}});
    CHECK(distortion(m).value == Rat(Int(3), Int(2)));
}

TEST_CASE("distortion with fewer than two pairs is 1") {
    FiniteMetricSpace x = make_space({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
    PartialMap m = make_partial_map(x, x, {{0, 1}});
    CHECK(distortion(m).value == 1);
    PartialMap empty = make_partial_map(x, x, {});
    CHECK(distortion(empty).value == 1);
}

TEST_CASE("distortion matches the pairwise-loop oracle on random injections") {
    SplitMix64 rng(2024);
    for (int t = 0; t < 40; ++t) {
        FiniteMetricSpace x = oracles::random_space(rng, 6);
        FiniteMetricSpace y = oracles::random_space(rng, 6);
        std::size_t k = std::min(x.size(), y.size());
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        // random injection: shuffle target indices
        std::vector<std::size_t> perm(y.size());
        for (std::size_t i = 0; i < y.size(); ++i)
            perm[i] = i;
        for (std::size_t i = y.size(); i > 1; --i)
            std::swap(perm[i - 1], perm[rng.below(i)]);
        for (std::size_t i = 0; i < k; ++i)
            pairs.emplace_back(i, perm[i]);
        PartialMap m = make_partial_map(x, y, pairs);
        Distortion d = distortion(m);
        auto oracle = oracles::pairwise_distortion(m);
        REQUIRE(oracle);
        CHECK_FALSE(d.infinite);
        CHECK(d.value == *oracle);
    }
}

TEST_CASE("distortion is INFINITE only on collapsed pseudo-metric pairs") {
    // pseudo-metric: two distinct points at distance 0
    FiniteMetricSpace pseudo = make_space({{Rat(0), Rat(0)}, {Rat(0), Rat(0)}});
    FiniteMetricSpace line = make_space({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
    PartialMap collapse = make_partial_map(line, pseudo, {{0, 0}, {1, 1}});
    Distortion d = distortion(collapse);
    CHECK(d.infinite);
    CHECK_FALSE(d.less_than(Rat(1000000)));

    // collapsed on both sides: no constraint, stays finite
    PartialMap both = make_partial_map(pseudo, pseudo, {{0, 0}, {1, 1}});
    Distortion d2 = distortion(both);
    CHECK_FALSE(d2.infinite);
    CHECK(d2.value == 1);
}

TEST_CASE("distortion is monotone under restriction") {
    SplitMix64 rng(33);
    FiniteMetricSpace x = oracles::random_space(rng, 8);
    FiniteMetricSpace y = oracles::random_space(rng, 8);
    std::size_t k = std::min(x.size(), y.size());
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < k; ++i)
        pairs.emplace_back(i, i);
    PartialMap m = make_partial_map(x, y, pairs);
    Rat full = distortion(m).value;
    for (std::size_t drop = 0; drop < k; ++drop) {
        PartialMap sub = m;
        sub.pairs.erase(sub.pairs.begin() + (long)drop);
        CHECK(distortion(sub).value <= full);
    }
}

TEST_CASE("maps must be injections") {
    FiniteMetricSpace x = make_space({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
    CHECK_THROWS_AS(make_partial_map(x, x, {{0, 0}, {0, 1}}), input_error);
    CHECK_THROWS_AS(make_partial_map(x, x, {{0, 0}, {1, 0}}), input_error);
    CHECK_THROWS_AS(make_partial_map(x, x, {{0, 5}}), input_error);
}

TEST_CASE("spectrum basics") {
    CHECK(spectrum(make_space({{Rat(0)}})).empty());
    FiniteMetricSpace eq = triangle(Rat(2), Rat(2), Rat(2));
    std::vector<Rat> s = spectrum(eq);
    REQUIRE(s.size() == 1);
    CHECK(s[0] == 2);
}

TEST_CASE("spectrum of a truncated branch space matches the stated set") {
    BranchSpace bs = branch_space({1, 3}, 5, 2);
    std::vector<Rat> s = spectrum(bs.space);
    REQUIRE(s.size() == 2);
    CHECK(s[0] == Rat(Int(1), Int(8)));
    CHECK(s[1] == Rat(Int(1), Int(2)));
}

TEST_CASE("spectrum band-stability under an almost-isometric bijection") {
    // if a bijection has distortion < lambda, every spectrum value of X has
    // a Y-value within the open lambda band, and symmetrically
    SplitMix64 rng(606);
    for (int t = 0; t < 20; ++t) {
        FiniteMetricSpace x = oracles::random_space(rng, 7);
        Rat factor = Rat(Int(9 + rng.below(3)), Int(10)); // 9/10 .. 11/10
        FiniteMetricSpace y = scale_space(x, factor);
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < x.size(); ++i)
            pairs.emplace_back(i, i);
        PartialMap m = make_partial_map(x, y, pairs);
        Rat lam = distortion(m).value + Rat(Int(1), Int(100));
        for (const Rat& s : spectrum(x)) {
            bool banded = false;
            for (const Rat& s2 : spectrum(y))
                banded = banded || (s / lam < s2 && s2 < lam * s);
            CHECK(banded);
        }
        for (const Rat& s2 : spectrum(y)) {
            bool banded = false;
            for (const Rat& s : spectrum(x))
                banded = banded || (s2 / lam < s && s < lam * s2);
            CHECK(banded);
        }
    }
}

TEST_CASE("is_ultrametric basics") {
    FiniteMetricSpace two = make_space({{Rat(0), Rat(5)}, {Rat(5), Rat(0)}});
    CHECK(is_ultrametric(two));
    CHECK_FALSE(is_ultrametric(triangle(Rat(3), Rat(5), Rat(4))));
    BranchSpace bs = branch_space({0, 2, 3}, 6, 2);
    CHECK(is_ultrametric(bs.space));
}

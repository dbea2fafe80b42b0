#include <catch2/catch.hpp>

#include <cstdio>
#include <string>

#include "oracles.hpp"
#include "urykit/cantor.hpp"
#include "urykit/chain.hpp"
#include "urykit/io.hpp"

using namespace urykit;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/urykit_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("space files roundtrip bit-exactly") {
    SplitMix64 rng(12);
    for (int t = 0; t < 10; ++t) {
        FiniteMetricSpace s = oracles::random_space(rng, 7);
        TempFile f("space.json");
        write_space(s, f.path);
        FiniteMetricSpace back = read_space(f.path);
        CHECK(spaces_equal(s, back));
        // byte-identical re-serialization
        write_space(back, f.path + ".2");
        CHECK(read_text_file(f.path) == read_text_file(f.path + ".2"));
        std::remove((f.path + ".2").c_str());
    }
}

TEST_CASE("non-canonical rationals in space files are rejected") {
    CHECK_THROWS_AS(
        space_from_json(Json::parse(R"({"labels":["a","b"],"d":[["0/1","2/4"],["2/4","0/1"]]})")),
        input_error);
    CHECK_THROWS_AS(
        space_from_json(Json::parse(R"({"labels":["a","b"],"d":[["0/1","1"],["1","0/1"]]})")),
        input_error);
    CHECK_NOTHROW(
        space_from_json(Json::parse(R"({"labels":["a","b"],"d":[["0/1","1/1"],["1/1","0/1"]]})")));
}

TEST_CASE("missing keys are named in the error") {
    Json doc;
    doc["labels"] = {"a"};
    try {
        space_from_json(doc, "input");
        FAIL("expected input_error");
    } catch (const input_error& e) {
        CHECK(std::string(e.what()).find("\"d\"") != std::string::npos);
    }
}

TEST_CASE("asymmetric matrices are rejected at read time") {
    CHECK_THROWS_AS(
        space_from_json(Json::parse(R"({"labels":["a","b"],"d":[["0/1","1/1"],["2/1","0/1"]]})")),
        input_error);
}

TEST_CASE("shape errors are rejected at read time") {
    CHECK_THROWS_AS(space_from_json(Json::parse(R"({"labels":["a","b"],"d":[["0/1","1/1"]]})")),
                    input_error);
    CHECK_THROWS_AS(
        space_from_json(Json::parse(R"({"labels":["a","b"],"d":[["0/1","-1/1"],["-1/1","0/1"]]})")),
        input_error);
}

TEST_CASE("type vectors roundtrip") {
    MetricType p = {Rat(Int(1), Int(2)), Rat(Int(3), Int(2))};
    Json doc = type_to_json(p);
    CHECK(type_from_json(doc) == p);
}

TEST_CASE("graph documents parse with label endpoints") {
    Json doc;
    doc["vertices"] = {"a", "b", "c"};
    doc["edges"] = {{"a", "b", "1/1"}, {"b", "c", "1/2"}};
    WeightedGraph g = graph_from_json(doc);
    REQUIRE(g.edges.size() == 2);
    CHECK(g.edges[1].a == 1);
    CHECK(g.edges[1].b == 2);
    CHECK(g.edges[1].w == Rat(Int(1), Int(2)));

    doc["edges"] = {{"a", "z", "1/1"}};
    CHECK_THROWS_AS(graph_from_json(doc), input_error);
}

TEST_CASE("chained spaces roundtrip with their chain and beta") {
    ChainedSpace cs = encode_set({0, 2}, 4, 1, Rat(16));
    Json doc = chained_to_json(cs);
    ChainedSpace back = chained_from_json(doc);
    CHECK(spaces_equal(cs.space, back.space));
    CHECK(back.chain == cs.chain);
    CHECK(back.beta == cs.beta);

    doc.erase("beta");
    CHECK_THROWS_AS(chained_from_json(doc), input_error);
}

TEST_CASE("pairs arrays roundtrip") {
    std::vector<std::pair<std::size_t, std::size_t>> pairs = {{0, 2}, {1, 0}};
    Json arr = pairs_to_json(pairs);
    CHECK(pairs_from_json(arr) == pairs);
    Json bad = Json::array({Json::array({1})});
    CHECK_THROWS_AS(pairs_from_json(bad), input_error);
}

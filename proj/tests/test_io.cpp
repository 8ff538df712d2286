#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "fracsob/experiments.hpp"
#include "fracsob/generators.hpp"
#include "fracsob/io.hpp"

using namespace fracsob;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/fracsob_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("graph JSON round trip preserves structure and markers") {
    const VicsekModel m = vicsek(2, 2);
    TempFile f("graph.json");
    writeGraph(m.graph, f.path);
    const WeightedGraph g = loadGraph(f.path);
    CHECK(graphHash(g) == graphHash(m.graph));
    CHECK(g.info().family == "vicsek");
    CHECK(*g.info().center == m.center);
    CHECK(g.info().corners == m.corners);
    // frontier reconstructed from the markers
    CHECK(frontierDistance(g, m.center) == 3);
    CHECK(g.info().parameter("generation") == 2);
}

TEST_CASE("loader accepts the hybrid header + edge-lines form") {
    const WeightedGraph expected = buildGraph({{0, 1, 1.0}, {1, 2, 0.5}});
    std::istringstream hybrid(
        "{\"version\":1,\"vertexCount\":3,\"family\":\"custom\",\"parameters\":{},"
        "\"markers\":{\"center\":null,\"corners\":[]}}\n"
        "0 1 1.0\n"
        "1 2 0.5\n");
    const WeightedGraph g = loadGraph(hybrid, "hybrid");
    CHECK(graphHash(g) == graphHash(expected));
}

TEST_CASE("lattice frontier is rebuilt from parameters") {
    TempFile f("lattice.json");
    writeGraph(latticeBox(2, 5), f.path);
    const WeightedGraph g = loadGraph(f.path);
    CHECK(frontierDistance(g, 12) == 2);  // median vertex of the 5x5 box
    CHECK(frontierDistance(g, 0) == 0);
}

TEST_CASE("loader diagnostics") {
    {
        TempFile f("bad.json");
        std::ofstream(f.path) << "{this is not json";
        CHECK_THROWS_AS(loadGraph(f.path), ValidationError);
    }
    {
        TempFile f("mismatch.json");
        std::ofstream(f.path) << "{\"version\":1,\"vertexCount\":7,\"family\":\"custom\","
                                 "\"parameters\":{},\"markers\":{},\"edges\":[[0,1,1.0]]}";
        CHECK_THROWS_AS(loadGraph(f.path), ValidationError);
    }
    CHECK_THROWS_AS(loadGraph("/nonexistent/file.json"), ValidationError);
}

TEST_CASE("field files round trip and verify the graph hash") {
    const VicsekModel m = vicsek(2, 2);
    const ScalarField f = extremalField(m, 2);
    TempFile file("field.json");
    writeField(m.graph, f, file.path);
    const ScalarField back = loadField(m.graph, file.path);
    CHECK(back.values == f.values);
    REQUIRE(back.support.has_value());
    CHECK(*back.support == *f.support);

    const VicsekModel other = vicsek(2, 3);
    CHECK_THROWS_AS(loadField(other.graph, file.path), ValidationError);
}

TEST_CASE("non-integer weights survive the JSON round trip bit-exactly") {
    const WeightedGraph g =
        buildGraph({{0, 1, 1.0 / 3.0}, {1, 2, 0.1}, {2, 3, 7.25e-3}, {0, 3, 1e17}});
    TempFile f("weights.json");
    writeGraph(g, f.path);
    CHECK(graphHash(loadGraph(f.path)) == graphHash(g));
}

TEST_CASE("hashes are stable and sensitive") {
    const WeightedGraph a = buildGraph({{0, 1, 1.0}, {1, 2, 1.0}});
    const WeightedGraph b = buildGraph({{0, 1, 1.0}, {1, 2, 1.0}});
    const WeightedGraph c = buildGraph({{0, 1, 1.0}, {1, 2, 2.0}});
    CHECK(graphHash(a) == graphHash(b));
    CHECK(graphHash(a) != graphHash(c));
    CHECK(fieldHash(std::vector<double>{1.0, 2.0}) != fieldHash(std::vector<double>{2.0, 1.0}));
}

TEST_CASE("every emitted CSV row round-trips through the sample reader") {
    std::vector<SampleRow> rows{
        {"volume", "vicsek", 2, 6, 0.0, 3.0, 44.0, ""},
        {"volume", "vicsek", 2, 6, 0.0, 9.0, 204.125, ""},
    };
    TempFile sweep("sweep.csv");
    writeSamplesCsv(rows, sweep.path, false);
    auto samples = readSamplesCsv(sweep.path);
    REQUIRE(samples.size() == 2);
    CHECK(samples[0].scale == 3.0);
    CHECK(samples[1].value == 204.125);  // %.17g exact round trip

    std::vector<SampleRow> qrows{
        {"", "vicsek", 2, 6, 2.0, 9.0, 1.25, "deadbeefdeadbeef"},
    };
    TempFile quot("quot.csv");
    writeSamplesCsv(qrows, quot.path, true);
    samples = readSamplesCsv(quot.path);
    REQUIRE(samples.size() == 1);
    CHECK(samples[0].scale == 9.0);
    CHECK(samples[0].value == 1.25);
}

TEST_CASE("sample reader rejects unusable input") {
    {
        TempFile f("empty.csv");
        std::ofstream(f.path) << "";
        CHECK_THROWS_AS(readSamplesCsv(f.path), TooFewSamples);
    }
    {
        TempFile f("headeronly.csv");
        std::ofstream(f.path) << "experiment,family,d,k_or_gen,p,scale,value\n";
        CHECK_THROWS_AS(fitExponent(readSamplesCsv(f.path), 0), TooFewSamples);
    }
    {
        TempFile f("noschema.csv");
        std::ofstream(f.path) << "a,b,c\n1,2,3\n";
        CHECK_THROWS_AS(readSamplesCsv(f.path), ValidationError);
    }
    {
        TempFile f("garbagerow.csv");
        std::ofstream(f.path) << "experiment,family,d,k_or_gen,p,scale,value\nx,y,0,0,0,abc,1\n";
        CHECK_THROWS_AS(readSamplesCsv(f.path), ValidationError);
    }
}

TEST_CASE("formatDouble survives the round trip") {
    for (double v : {1.0 / 3.0, 204.125, 1e-17, 12345678.9012345678}) {
        CHECK(std::stod(formatDouble(v)) == v);
    }
}

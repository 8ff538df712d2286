#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "fracsob/generators.hpp"
#include "fracsob/graph.hpp"
#include "fracsob/rng.hpp"

using namespace fracsob;

namespace {

// all-pairs distances via repeated single-source BFS (distance() calls)
std::vector<std::vector<int>> allPairs(const WeightedGraph& g) {
    std::vector<std::vector<int>> d(g.vertexCount(), std::vector<int>(g.vertexCount()));
    for (VertexId x = 0; x < g.vertexCount(); ++x)
        for (VertexId y = 0; y < g.vertexCount(); ++y) d[x][y] = distance(g, x, y);
    return d;
}

WeightedGraph randomWeightedGraph(int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<EdgeSpec> edges;
    for (int v = 1; v < n; ++v)  // random spanning tree keeps it connected
        edges.push_back({static_cast<VertexId>(rng.next() % v), static_cast<VertexId>(v),
                         0.25 + rng.uniform01()});
    for (int extra = 0; extra < n / 2; ++extra) {
        auto u = static_cast<VertexId>(rng.next() % n);
        auto v = static_cast<VertexId>(rng.next() % n);
        if (u == v) continue;
        bool dup = false;
        for (const auto& e : edges)
            dup |= (e.u == std::min(u, v) && e.v == std::max(u, v)) ||
                   (e.v == std::min(u, v) && e.u == std::max(u, v));
        if (!dup) edges.push_back({u, v, 0.25 + rng.uniform01()});
    }
    return buildGraph(edges);
}

}  // namespace

TEST_CASE("buildGraph basic examples") {
    SUBCASE("single edge") {
        const WeightedGraph g = buildGraph({{0, 1, 1.0}});
        CHECK(g.vertexCount() == 2);
        CHECK(g.vertexMeasure(0) == 1.0);
        CHECK(g.vertexMeasure(1) == 1.0);
        CHECK(g.transition(0, g.neighbors(0)[0]) == 1.0);
        CHECK(g.controlledWeightConstant() == 1.0);
    }
    SUBCASE("path 0-1-2") {
        const WeightedGraph g = buildGraph({{0, 1, 1.0}, {1, 2, 1.0}});
        CHECK(g.vertexMeasure(1) == 2.0);
        for (const auto& e : g.neighbors(1)) CHECK(g.transition(1, e) == 0.5);
        CHECK(g.maxDegree() == 2);
        CHECK(g.controlledWeightConstant() == 0.5);
    }
}

TEST_CASE("buildGraph rejects invalid input") {
    CHECK_THROWS_AS(buildGraph({{0, 1, 1.0}, {1, 0, 1.0}}), DuplicateEdge);
    CHECK_THROWS_AS(buildGraph({{2, 2, 1.0}}), SelfLoop);
    CHECK_THROWS_AS(buildGraph({{0, 1, 0.0}}), NonPositiveWeight);
    CHECK_THROWS_AS(buildGraph({{0, 1, -2.0}}), NonPositiveWeight);
    CHECK_THROWS_AS(buildGraph({{0, 1, 1.0}, {2, 3, 1.0}}), DisconnectedGraph);
    CHECK_THROWS_AS(buildGraph({{0, 2, 1.0}}), DisconnectedGraph);  // vertex 1 isolated
    CHECK_THROWS_AS(buildGraph({}), ValidationError);
}

TEST_CASE("kernel is stochastic and weights symmetric on generated graphs") {
    for (const WeightedGraph& g :
         {vicsek(2, 3).graph, latticeBox(2, 7), randomWeightedGraph(60, 7)}) {
        for (VertexId x = 0; x < g.vertexCount(); ++x) {
            double rowSum = 0.0;
            for (const auto& e : g.neighbors(x)) {
                rowSum += g.transition(x, e);
                // the reverse copy stores the identical weight
                bool found = false;
                for (const auto& back : g.neighbors(e.to))
                    if (back.to == x) {
                        CHECK(back.weight == e.weight);
                        found = true;
                    }
                CHECK(found);
            }
            CHECK(rowSum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("distance examples") {
    const WeightedGraph path = buildGraph({{0, 1, 1.0}, {1, 2, 1.0}});
    CHECK(distance(path, 1, 1) == 0);
    CHECK(distance(path, 0, 2) == 2);

    const VicsekModel m = vicsek(2, 2);
    for (VertexId c : m.corners) CHECK(distance(m.graph, m.center, c) == 3);

    CHECK_THROWS_AS(distance(path, 0, 9), ValidationError);
}

TEST_CASE("distance is a metric (exhaustive on small graphs)") {
    for (const WeightedGraph& g : {vicsek(2, 3).graph, randomWeightedGraph(50, 11)}) {
        REQUIRE(g.vertexCount() <= 200);
        const auto d = allPairs(g);
        const int n = static_cast<int>(g.vertexCount());
        for (int x = 0; x < n; ++x) {
            CHECK(d[x][x] == 0);
            for (int y = 0; y < n; ++y) {
                CHECK(d[x][y] == d[y][x]);
                CHECK((d[x][y] == 0) == (x == y));
            }
        }
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) REQUIRE(d[x][z] <= d[x][y] + d[y][z]);
    }
}

TEST_CASE("ball examples and growth") {
    const VicsekModel m1 = vicsek(2, 1);
    const Ball b = ball(m1.graph, m1.center, 1);
    CHECK(b.members.size() == 5);
    double mu = 0.0;
    for (VertexId v : b.members) mu += m1.graph.vertexMeasure(v);
    CHECK(mu == 8.0);

    const WeightedGraph path =
        buildGraph({{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}});
    const Ball b0 = ball(path, 2, 0);
    CHECK(b0.members == std::vector<VertexId>{2});
    Ball b1 = ball(path, 2, 1);
    std::sort(b1.members.begin(), b1.members.end());
    CHECK(b1.members == std::vector<VertexId>{1, 2, 3});

    // monotone growth, and radius >= diameter captures everything
    const WeightedGraph g = vicsek(2, 2).graph;
    std::size_t prev = 0;
    for (int n = 0; n <= 7; ++n) {
        const std::size_t size = ball(g, 0, n).members.size();
        CHECK(size >= prev);
        prev = size;
    }
    CHECK(ball(g, 0, 6).members.size() == g.vertexCount());  // diameter = 2 L_2 = 6

    // distances recorded inside the ball are exact BFS distances
    const Ball bv = ball(g, vicsek(2, 2).center, 3);
    for (std::size_t i = 0; i < bv.members.size(); ++i)
        CHECK(bv.distanceFromCenter[i] == distance(g, bv.center, bv.members[i]));
}

TEST_CASE("makeDomain examples") {
    // one interior vertex of a path truncation
    const WeightedGraph path = latticeBox(1, 9);
    const Domain single = makeDomain(path, {4});
    CHECK(single.measure == 2.0);
    CHECK(single.inradius == 0);
    CHECK(single.boundaryMeasure == 2.0);

    // three consecutive interior vertices: two crossing edges
    const Domain triple = makeDomain(path, {3, 4, 5});
    CHECK(triple.boundaryMeasure == 2.0);
    CHECK(triple.measure == 6.0);
    CHECK(triple.inradius == 1);

    // generation-1 block inside the generation-3 Vicsek graph
    const VicsekModel m = vicsek(2, 3);
    const Domain block = makeDomain(m.graph, centeredBlock(m, 1));
    CHECK(block.members.size() == 5);
    CHECK(block.measure == 12.0);  // center degree 4 + four merge corners of degree 2
    CHECK(block.inradius == 1);
    CHECK(block.boundaryMeasure == 4.0);

    CHECK_THROWS_AS(makeDomain(path, {}), EmptyDomain);
    CHECK(makeDomain(path, {0, 0, 1}).members.size() == 2);  // duplicates collapse
}

TEST_CASE("domain inradius matches the brute-force oracle") {
    auto bruteInradius = [](const WeightedGraph& g, const Domain& dom) {
        int best = -1;
        for (VertexId x : dom.members) {
            int r = 0;
            while (true) {
                bool inside = true;
                for (VertexId v : ball(g, x, r).members) inside &= dom.contains(v);
                if (!inside) break;
                best = std::max(best, r);
                if (static_cast<std::size_t>(r) > g.vertexCount()) break;
                ++r;
            }
        }
        return best;
    };

    for (const WeightedGraph& g : {vicsek(2, 2).graph, latticeBox(2, 7)}) {
        SplitMix64 rng(99);
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<VertexId> members;
            for (VertexId v = 0; v < g.vertexCount(); ++v)
                if (rng.uniform01() < 0.45) members.push_back(v);
            if (members.empty() || members.size() == g.vertexCount()) continue;
            const Domain dom = makeDomain(g, members);
            REQUIRE(dom.inradius == bruteInradius(g, dom));
        }
    }
}

TEST_CASE("whole-graph domain has unbounded inradius") {
    const WeightedGraph path = latticeBox(1, 5);
    std::vector<VertexId> all{0, 1, 2, 3, 4};
    CHECK(makeDomain(path, all).inradius == std::numeric_limits<int>::max());
}

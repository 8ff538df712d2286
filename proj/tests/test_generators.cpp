#include <doctest.h>

#include <cmath>
#include <vector>

#include "fracsob/experiments.hpp"
#include "fracsob/generators.hpp"
#include "fracsob/io.hpp"

using namespace fracsob;

TEST_CASE("vicsek counts follow the recurrences for d in {1,2,3}, k <= 6") {
    for (int d : {1, 2, 3}) {
        const std::size_t q = (std::size_t{1} << d) + 1;
        std::size_t expectV = q;
        std::size_t expectL = 1;
        for (int k = 1; k <= 6; ++k) {
            if (vicsekVertexCount(d, k) > vertexCap()) break;
            const VicsekModel m = vicsek(d, k);
            CHECK(m.graph.vertexCount() == expectV);
            CHECK(m.graph.edgeCount() == expectV - 1);  // tree
            CHECK(m.corners.size() == (std::size_t{1} << d));
            CHECK(m.diagonalLength == static_cast<int>(expectL));
            for (VertexId c : m.corners) {
                CHECK(distance(m.graph, m.center, c) == m.diagonalLength);
                CHECK(m.graph.neighbors(c).size() == 1);
            }
            CHECK(m.graph.neighbors(m.center).size() == (std::size_t{1} << d));
            CHECK(m.dimensionD ==
                  doctest::Approx(std::log(double(q)) / std::log(3.0)).epsilon(1e-15));
            expectV = q * expectV - (q - 1);
            expectL *= 3;
        }
    }
}

TEST_CASE("vicsek fixed examples") {
    const VicsekModel a = vicsek(2, 1);
    CHECK(a.graph.vertexCount() == 5);
    CHECK(a.graph.edgeCount() == 4);

    const VicsekModel b = vicsek(2, 2);
    CHECK(b.graph.vertexCount() == 21);
    CHECK(b.graph.edgeCount() == 20);
    CHECK(distance(b.graph, b.center, b.corners[0]) == 3);

    const VicsekModel c = vicsek(1, 2);  // collapses to a path
    CHECK(c.graph.vertexCount() == 7);
    CHECK(c.graph.edgeCount() == 6);
    CHECK(c.graph.maxDegree() == 2);
    CHECK(c.dimensionD == doctest::Approx(1.0));
}

TEST_CASE("vicsek generation is deterministic") {
    const VicsekModel a = vicsek(2, 3);
    const VicsekModel b = vicsek(2, 3);
    CHECK(graphHash(a.graph) == graphHash(b.graph));
    CHECK(a.center == b.center);
    CHECK(a.corners == b.corners);
}

TEST_CASE("size caps") {
    CHECK_THROWS_AS(vicsek(6, 4), SizeCapExceeded);     // ~17.6M vertices
    CHECK_THROWS_AS(latticeBox(6, 40), SizeCapExceeded);  // 40^6
    CHECK_THROWS_AS(vicsek(0, 1), ValidationError);
    CHECK_THROWS_AS(vicsek(2, 0), ValidationError);
    CHECK_THROWS_AS(latticeBox(2, 1), ValidationError);
}

TEST_CASE("latticeBox examples") {
    const WeightedGraph p = latticeBox(1, 5);
    CHECK(p.vertexCount() == 5);
    CHECK(p.edgeCount() == 4);
    CHECK(p.info().family == "path");

    const WeightedGraph g = latticeBox(2, 3);
    CHECK(g.vertexCount() == 9);
    CHECK(g.edgeCount() == 12);
    CHECK(g.vertexMeasure(4) == 4.0);  // middle vertex of the 3x3 box
    CHECK(*g.info().center == 4);
}

TEST_CASE("lattice interior ball volumes fit exponent near 2") {
    const WeightedGraph g = latticeBox(2, 100);
    const VertexId center = *g.info().center;  // coordinate median (49,49)
    const std::vector<int> radii{8, 16, 32, 48};
    const auto samples = volumeSweep(g, center, radii);
    // closed-form oracle: interior l1 balls have 2r^2+2r+1 vertices of degree 4
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double r = radii[i];
        CHECK(samples[i].value == 4.0 * (2.0 * r * r + 2.0 * r + 1.0));
    }
    const FitResult fit = fitExponent(samples, 0);
    CHECK(std::abs(fit.slope - 2.0) <= 0.10);
}

TEST_CASE("vicsek volume law at desk scale") {
    const VicsekModel m = vicsek(2, 5);
    const auto samples = volumeSweep(m.graph, m.center, {3, 9, 27, 81});
    const FitResult fit = fitExponent(samples);  // default skip of the smallest radius
    CHECK(std::abs(fit.slope - m.dimensionD) <= 0.10);
    CHECK(fit.rSquared >= 0.99);
}

TEST_CASE("frontierDistance") {
    const VicsekModel m = vicsek(2, 2);
    CHECK(frontierDistance(m, m.center) == 3);
    for (VertexId c : m.corners) CHECK(frontierDistance(m.graph, c) == 0);

    const WeightedGraph p = latticeBox(1, 5);
    CHECK(frontierDistance(p, 2) == 2);
    CHECK(frontierDistance(p, 0) == 0);
    CHECK(frontierDistance(p, 4) == 0);

    const WeightedGraph raw = buildGraph({{0, 1, 1.0}});
    CHECK(frontierDistance(raw, 0) == std::numeric_limits<int>::max());
}

TEST_CASE("centeredBlock identifies the generation-n block around z0") {
    const VicsekModel m = vicsek(2, 3);
    CHECK(centeredBlock(m, 1).size() == 5);
    CHECK(centeredBlock(m, 2).size() == 21);
    CHECK(centeredBlock(m, 3).size() == m.graph.vertexCount());
    CHECK(centeredBlockCorners(m, 2).size() == 4);
    for (VertexId c : centeredBlockCorners(m, 2))
        CHECK(distance(m.graph, m.center, c) == 3);
    CHECK_THROWS_AS(centeredBlock(m, 4), GenerationTooSmall);
    CHECK_THROWS_AS(centeredBlock(m, 0), GenerationTooSmall);
}

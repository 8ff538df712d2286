#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "fracsob/experiments.hpp"
#include "fracsob/generators.hpp"
#include "fracsob/inequalities.hpp"
#include "fracsob/rng.hpp"

using namespace fracsob;

namespace {

// dense oracle: smallest eigenvalue of the mu-symmetrized Dirichlet
// restriction of I - P to the domain
double denseLambda1(const WeightedGraph& g, const Domain& omega) {
    const std::size_t k = omega.members.size();
    std::map<VertexId, int> local;
    for (std::size_t i = 0; i < k; ++i) local[omega.members[i]] = static_cast<int>(i);
    Eigen::MatrixXd S = Eigen::MatrixXd::Identity(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        const VertexId x = omega.members[i];
        for (const auto& e : g.neighbors(x)) {
            const auto it = local.find(e.to);
            if (it != local.end())
                S(static_cast<int>(i), it->second) -=
                    e.weight / std::sqrt(g.vertexMeasure(x) * g.vertexMeasure(e.to));
        }
    }
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(S).eigenvalues()(0);
}

}  // namespace

TEST_CASE("poincareQuotient on the path: linear field, n=1, p=2") {
    const WeightedGraph path = latticeBox(1, 31);
    std::vector<double> linear(path.vertexCount());
    for (std::size_t i = 0; i < linear.size(); ++i) linear[i] = static_cast<double>(i);
    const ScalarField f = makeField(path, linear);
    const double q = poincareQuotient(path, f, 15, 1, 2.0);
    CHECK(q == doctest::Approx(std::sqrt(4.0 / 5.0)).epsilon(1e-12));
}

TEST_CASE("poincareQuotient guards") {
    const WeightedGraph path = latticeBox(1, 31);
    CHECK_THROWS_AS(
        poincareQuotient(path, makeField(path, std::vector<double>(31, 1.0)), 15, 1, 2.0),
        ZeroGradient);
    CHECK_THROWS_AS(
        poincareQuotient(path, makeField(path, std::vector<double>(31, 0.0)), 15, 8, 2.0),
        InsufficientRoom);  // frontier distance 15 <= 2n = 16
}

TEST_CASE("poincareQuotient matches a brute-force evaluation on the tent witness") {
    const VicsekModel m = vicsek(2, 4);
    const int n = 9;
    const double p = 2.0;
    const ScalarField f = poincareCandidate(m, n);
    const double q = poincareQuotient(m.graph, f, m.center, n, p);
    CHECK(q > 0.0);
    CHECK(std::isfinite(q));

    // independent re-evaluation with raw loops
    const Ball inner = ball(m.graph, m.center, n);
    const Ball outer = ball(m.graph, m.center, 2 * n);
    double msum = 0.0, mu = 0.0;
    for (VertexId v : inner.members) {
        msum += f.values[v] * m.graph.vertexMeasure(v);
        mu += m.graph.vertexMeasure(v);
    }
    const double mean = msum / mu;
    double num = 0.0;
    for (VertexId v : inner.members)
        num += std::pow(std::abs(f.values[v] - mean), p) * m.graph.vertexMeasure(v);
    double den = 0.0;
    for (VertexId v : outer.members) {
        double qx = 0.0;
        for (const auto& e : m.graph.neighbors(v)) {
            const double d = f.values[v] - f.values[e.to];
            qx += (e.weight / m.graph.vertexMeasure(v)) * d * d;
        }
        den += std::pow(std::sqrt(0.5 * qx), p) * m.graph.vertexMeasure(v);
    }
    CHECK(q == doctest::Approx(std::pow(num, 1 / p) / std::pow(den, 1 / p)).epsilon(1e-12));
}

TEST_CASE("pseudoPoincareQuotient examples") {
    const WeightedGraph path = latticeBox(1, 41);
    const ScalarField ind = sparseField(path, {{20, 1.0}});

    CHECK(pseudoPoincareQuotient(path, ind, 0, 1.0, 5) == 0.0);

    // hand-evaluated indicator quotient at n=1, p=1: (8/3) / (2 + sqrt 2)
    const double q = pseudoPoincareQuotient(path, ind, 1, 1.0, frontierDistance(path, 20));
    CHECK(q == doctest::Approx((8.0 / 3.0) / (2.0 + std::sqrt(2.0))).epsilon(1e-12));

    CHECK_THROWS_AS(
        pseudoPoincareQuotient(path, makeField(path, std::vector<double>(41, 0.0)), 1, 1.0, 10),
        ZeroGradient);
}

TEST_CASE("pseudoPoincareQuotient on the embedded extremal field") {
    const VicsekModel m = vicsek(2, 5);
    const ScalarField f3 = extremalField(m, 3);
    const int room = frontierDistance(m, m.center) - distance(m.graph, m.center, m.corners[0]) / 3;
    // every vertex within distance 9 of the block has ample room in gen 5
    const double q = pseudoPoincareQuotient(m.graph, f3, 9, 2.0, room);
    CHECK(q > 0.0);
    CHECK(std::isfinite(q));
    // bounded by C * 9^(D/2 + 1/2) = 15 C, with C of the same order as the
    // candidate-sweep constant (~0.34); measured 4.28
    CHECK(q <= 0.5 * 15.0);
    // homogeneity of the quotient
    ScalarField scaled = f3;
    for (double& v : scaled.values) v *= -7.25;
    CHECK(pseudoPoincareQuotient(m.graph, scaled, 9, 2.0, room) ==
          doctest::Approx(q).epsilon(1e-12));
}

TEST_CASE("sobolevQuotient examples") {
    // indicator of an interior lattice vertex, d=2, p=1: ratio sqrt(2)/3
    const WeightedGraph g = latticeBox(2, 5);
    const ScalarField ind = sparseField(g, {{*g.info().center, 1.0}});
    CHECK(sobolevQuotient(g, ind, 1.0) == doctest::Approx(std::sqrt(2.0) / 3.0).epsilon(1e-12));

    // F_1 on the generation-1 block embedded in vicsek(2,3)
    const VicsekModel m = vicsek(2, 3);
    const ScalarField f1 = extremalField(m, 1);
    CHECK(sobolevQuotient(m.graph, f1, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sobolevQuotient(m.graph, f1, 1.0) ==
          doctest::Approx(4.0 / (4.0 + 2.0 * std::sqrt(2.0))).epsilon(1e-12));

    // homogeneity
    ScalarField scaled = f1;
    for (double& v : scaled.values) v *= 2.0;
    CHECK(sobolevQuotient(m.graph, scaled, 3.0) ==
          doctest::Approx(sobolevQuotient(m.graph, f1, 3.0)).epsilon(1e-12));

    CHECK_THROWS_AS(sobolevQuotient(g, makeField(g, std::vector<double>(25, 0.0)), 2.0),
                    ZeroField);
}

TEST_CASE("faberKrahnLambda1 closed-form cases") {
    // single interior vertex: Pf vanishes on Omega, so lambda1 = 1
    const WeightedGraph path = latticeBox(1, 9);
    const FaberKrahnResult one = faberKrahnLambda1(path, makeDomain(path, {4}));
    CHECK(one.lambda1 == doctest::Approx(1.0).epsilon(1e-12));

    // two adjacent interior vertices: [[1,-1/2],[-1/2,1]] has lambda1 = 1/2
    const FaberKrahnResult two = faberKrahnLambda1(path, makeDomain(path, {4, 5}));
    CHECK(two.lambda1 == doctest::Approx(0.5).epsilon(1e-10));

    CHECK_THROWS_AS(faberKrahnLambda1(path, makeDomain(path, {0, 1, 2, 3, 4, 5, 6, 7, 8})),
                    ValidationError);
}

TEST_CASE("faberKrahnLambda1 agrees with the dense eigensolver oracle") {
    const VicsekModel m = vicsek(2, 3);
    const Domain block = makeDomain(m.graph, centeredBlock(m, 2));
    const FaberKrahnResult fk = faberKrahnLambda1(m.graph, block, 1e-10);
    const double dense = denseLambda1(m.graph, block);
    CHECK(std::abs(fk.lambda1 - dense) <= 1e-8 * dense);

    // random interior domains (the guard rejects frontier vertices)
    const WeightedGraph lat = latticeBox(2, 7);
    SplitMix64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<VertexId> members;
        for (VertexId v = 0; v < lat.vertexCount(); ++v)
            if (lat.frontierDistance(v) >= 1 && rng.uniform01() < 0.6) members.push_back(v);
        if (members.empty()) continue;
        const Domain dom = makeDomain(lat, members);
        const double dense2 = denseLambda1(lat, dom);
        const double iter = faberKrahnLambda1(lat, dom, 1e-10).lambda1;
        REQUIRE(std::abs(iter - dense2) <= 1e-8 * dense2);
    }
    // domains touching the truncation frontier are rejected
    CHECK_THROWS_AS(faberKrahnLambda1(lat, makeDomain(lat, {0, 1})), InsufficientRoom);
}

TEST_CASE("faber-krahn product lambda1 * r * mu is bounded below on blocks") {
    const VicsekModel m = vicsek(2, 4);
    const Domain omega = makeDomain(m.graph, centeredBlock(m, 3));
    const FaberKrahnResult fk = faberKrahnLambda1(m.graph, omega);
    const double product = fk.lambda1 * omega.inradius * omega.measure;
    CHECK(product >= 5.0);  // measured 9.02; the bound only needs c > 0
    CHECK(std::isfinite(product));
}

TEST_CASE("maximizeSobolevQuotient: p = 2 agrees with the eigenvalue route") {
    // two-vertex domain: value^2 = 1/lambda1 = 2
    const WeightedGraph path = latticeBox(1, 9);
    const Domain two = makeDomain(path, {4, 5});
    const std::vector<ScalarField> seeds{sparseField(path, {{4, 1.0}, {5, 0.5}})};
    const QuotientReport r = maximizeSobolevQuotient(path, two, 2.0, seeds);
    CHECK(r.value * r.value == doctest::Approx(2.0).epsilon(1e-6));

    // vicsek block, 21 vertices
    const VicsekModel m = vicsek(2, 3);
    const Domain block = makeDomain(m.graph, centeredBlock(m, 2));
    const std::vector<ScalarField> seeds2{extremalField(m, 2)};
    const QuotientReport r2 = maximizeSobolevQuotient(m.graph, block, 2.0, seeds2, 20000);
    const double lam = faberKrahnLambda1(m.graph, block).lambda1;
    CHECK(r2.value == doctest::Approx(1.0 / std::sqrt(lam)).epsilon(1e-6));
    CHECK(r2.converged);

    // witness reproduces the reported value through the defining quotient
    CHECK(sobolevQuotient(m.graph, r2.witness, 2.0) == doctest::Approx(r2.value).epsilon(1e-8));

    // a larger block (101 vertices) with a tiny spectral gap
    const VicsekModel m4 = vicsek(2, 4);
    const Domain big = makeDomain(m4.graph, centeredBlock(m4, 3));
    const QuotientReport r3 =
        maximizeSobolevQuotient(m4.graph, big, 2.0, {extremalField(m4, 3)}, 100000);
    const double lam3 = faberKrahnLambda1(m4.graph, big).lambda1;
    CHECK(r3.value == doctest::Approx(1.0 / std::sqrt(lam3)).epsilon(1e-6));
}

TEST_CASE("maximizeSobolevQuotient: ascent only improves on seeds") {
    const VicsekModel m = vicsek(2, 4);
    const Domain block = makeDomain(m.graph, centeredBlock(m, 3));
    const ScalarField f3 = extremalField(m, 3);
    const double seedValue = sobolevQuotient(m.graph, f3, 3.0);
    const QuotientReport r = maximizeSobolevQuotient(m.graph, block, 3.0, {f3}, 800);
    CHECK(r.value >= seedValue * (1 - 1e-12));

    // p = 1 evaluates seeds only
    const QuotientReport r1 = maximizeSobolevQuotient(m.graph, block, 1.0, {f3});
    CHECK(r1.value == doctest::Approx(sobolevQuotient(m.graph, f3, 1.0)).epsilon(1e-12));

    // an exhausted iteration budget reports best-so-far with the flag down
    const QuotientReport starved = maximizeSobolevQuotient(m.graph, block, 3.0, {f3}, 2);
    CHECK(starved.value >= seedValue * (1 - 1e-12));
    CHECK(!starved.converged);

    // seeds that vanish on the domain are rejected
    const ScalarField outside = sparseField(m.graph, {{m.corners[0], 1.0}});
    CHECK_THROWS_AS(maximizeSobolevQuotient(m.graph, block, 2.0, {outside}), ZeroField);
}

TEST_CASE("pathKernelK examples and bound") {
    const WeightedGraph path = latticeBox(1, 31);
    const VertexId mid = 15;
    // interior radius-1 ball, mu = 2 everywhere: K(p=2) = 32, K(p=1) = mu(B)^2 = 36
    CHECK(pathKernelK(path, mid, 1, 2.0) == doctest::Approx(32.0).epsilon(1e-14));
    CHECK(pathKernelK(path, mid, 1, 1.0) == doctest::Approx(36.0).epsilon(1e-14));
    CHECK(pathKernelK(path, mid, 1, 2.0) <= 2.0 * 36.0);  // (2n)^(p-1) V^2 = 72

    CHECK_THROWS_AS(pathKernelK(path, 1, 3, 2.0), InsufficientRoom);
    CHECK_THROWS_AS(pathKernelK(path, mid, 2, 2.0, 3), BallTooLarge);
}

TEST_CASE("pathKernelK matches exhaustive pair enumeration") {
    const VicsekModel m = vicsek(2, 3);
    const WeightedGraph lat = latticeBox(2, 17);
    SplitMix64 rng(23);
    for (int trial = 0; trial < 12; ++trial) {
        const WeightedGraph& g = trial % 2 == 0 ? m.graph : lat;
        const int n = 1 + static_cast<int>(rng.next() % 3);
        std::vector<VertexId> admissible;
        for (VertexId v = 0; v < g.vertexCount(); ++v)
            if (g.frontierDistance(v) > 2 * n) admissible.push_back(v);
        REQUIRE(!admissible.empty());
        const VertexId x = admissible[rng.next() % admissible.size()];
        const Ball b = ball(g, x, n);
        REQUIRE(b.members.size() <= 60);
        for (double p : {1.0, 2.0, 3.0}) {
            double brute = 0.0;
            for (VertexId y : b.members)
                for (VertexId z : b.members)
                    brute += std::pow(static_cast<double>(distance(g, y, z)), p - 1.0) *
                             g.vertexMeasure(y) * g.vertexMeasure(z);
            const double k = pathKernelK(g, x, n, p);
            REQUIRE(k == doctest::Approx(brute).epsilon(1e-12));
        }
    }
}

TEST_CASE("quotients are homogeneous under field scaling") {
    const VicsekModel m = vicsek(2, 4);
    const ScalarField cand = poincareCandidate(m, 9);
    ScalarField scaled = cand;
    for (double& v : scaled.values) v *= 13.0;
    for (double p : {1.0, 2.0, 3.0})
        CHECK(poincareQuotient(m.graph, scaled, m.center, 9, p) ==
              doctest::Approx(poincareQuotient(m.graph, cand, m.center, 9, p)).epsilon(1e-12));
}

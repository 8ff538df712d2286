#pragma once

#include <string>
#include <vector>

#include "fracsob/calculus.hpp"
#include "fracsob/generators.hpp"
#include "fracsob/graph.hpp"

namespace fracsob {

// One (scale, value) observation of a scaling law; both strictly positive so
// the log-log fit is defined.
struct ScalingSample {
    double scale = 0.0;
    double value = 0.0;
    std::string label;
};

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double rSquared = 0.0;
    int count = 0;
};

// Harmonic extremal field on the generation-n block containing z0: 1 at the
// block center, 0 at its corners, linear along the diagonals (value
// d(z_i, z) / L_n), constant on the branches hanging off them. Supported on
// the block, zero elsewhere.
ScalarField extremalField(const VicsekModel& m, int n);

// For each generation n builds vicsek(d,n) and emits
// (mu(Omega_n), ||grad F_n||_p / ||F_n||_p). Generations are independent pure
// tasks; parallelism fans them out, results gathered in scale order.
std::vector<ScalingSample> sobolevOptimalitySweep(int d, const std::vector<int>& generations,
                                                  double p, int parallelism = 1);

// Ball-scale analogue of the extremal field: max(0, 1 - t/r) where t is the
// diagonal coordinate of the vertex's attachment point. Gradient lives on the
// diagonal edges within distance r of z0.
ScalarField poincareCandidate(const VicsekModel& m, int r);

// Emits (r, poincareQuotient(candidate(r), z0, r, p)) for each radius.
std::vector<ScalingSample> poincareOptimalitySweep(int d, int generation,
                                                   const std::vector<int>& radii, double p,
                                                   int parallelism = 1);

// Exact p_k(x,x) for k = 0..kmax via repeated kernel application. Requires
// frontierDistance(x) > kmax so the walk cannot feel the truncation.
std::vector<double> heatKernelDiagonal(const WeightedGraph& g, VertexId x, int kmax);

// Emits (2k, p_2k(x,x)) for even steps only (odd-step returns vanish on
// bipartite graphs such as trees).
std::vector<ScalingSample> returnProbability(const WeightedGraph& g, VertexId x, int kmax);

// Mean exit time T(x,r) of the walk from B(x,r): solves u = P_Omega u + 1 by
// monotone fixed-point iteration. tol is relative on the estimated limit.
double escapeTime(const WeightedGraph& g, VertexId x, int r, double tol = 1e-9);

// Emits (r, mu(B(x,r))) for the given increasing radii.
std::vector<ScalingSample> volumeSweep(const WeightedGraph& g, VertexId x,
                                       const std::vector<int>& radii);

// Ordinary least squares on (log scale, log value) after dropping the
// skipSmallest smallest scales (default 1: the smallest scale is
// boundary-dominated).
FitResult fitExponent(std::vector<ScalingSample> samples, int skipSmallest = 1);

}  // namespace fracsob

#pragma once

#include <string>
#include <vector>

#include "fracsob/calculus.hpp"
#include "fracsob/graph.hpp"

namespace fracsob {

// One evaluated quotient together with the witness field that produced it.
// `value` is reproducible from the witness via the defining quotient.
struct QuotientReport {
    double p = 0.0;
    double scale = 0.0;  // radius n or mu(Omega)
    double value = 0.0;
    ScalarField witness;
    std::string kind;  // poincare | pseudoPoincare | sobolev | faberKrahn
    bool converged = true;
};

// || f - f_{B(x,n)} ||_{L^p(B(x,n))} / || |grad f| ||_{L^p(B(x,2n))}.
// Requires frontierDistance(x) > 2n.
double poincareQuotient(const WeightedGraph& g, const ScalarField& f, VertexId x, int n, double p);

// || f - f_n ||_p / || |grad f| ||_p with f_n from pseudoAverageField.
double pseudoPoincareQuotient(const WeightedGraph& g, const ScalarField& f, int n, double p,
                              int room);

// || f ||_p / || |grad f| ||_p for f supported in Omega; the gradient is taken
// over the whole graph, so differences across the boundary count.
double sobolevQuotient(const WeightedGraph& g, const ScalarField& f, double p);

struct FaberKrahnResult {
    double lambda1 = 0.0;
    int iterations = 0;
    ScalarField eigenvector;
};

// Smallest Dirichlet eigenvalue of I - P restricted to Omega, by inverse
// power iteration with a diagonally preconditioned conjugate-gradient inner
// solve. Start vector is all ones on Omega; convergence is relative
// eigenvalue change < tol.
FaberKrahnResult faberKrahnLambda1(const WeightedGraph& g, const Domain& omega,
                                   double tol = 1e-10);

// Maximizes || f ||_p / || |grad f| ||_p over fields supported in Omega by
// normalized gradient ascent from each seed (p > 1); for p = 1 the seeds are
// evaluated only. The returned value is a certified lower bound on the
// optimal constant. For p = 2 it agrees with faberKrahnLambda1^(-1/2).
QuotientReport maximizeSobolevQuotient(const WeightedGraph& g, const Domain& omega, double p,
                                       const std::vector<ScalarField>& seeds, int iters = 5000,
                                       double tol = 1e-9);

// K(x,n) = sum over ordered pairs y,z in B(x,n) of d(y,z)^(p-1) mu(y) mu(z).
// Only shortest-path lengths enter, so the choice of path family is
// irrelevant to the value. Requires frontierDistance(x) > 2n; balls larger
// than ballCap members are rejected.
double pathKernelK(const WeightedGraph& g, VertexId x, int n, double p,
                   std::size_t ballCap = 20000);

}  // namespace fracsob

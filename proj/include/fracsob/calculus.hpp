#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fracsob/graph.hpp"

namespace fracsob {

// Real-valued function on the vertices of a host graph. When a support is
// declared the values vanish exactly outside it (enforced by makeField).
struct ScalarField {
    std::vector<double> values;
    std::optional<std::vector<VertexId>> support;  // sorted, unique
};

ScalarField makeField(const WeightedGraph& g, std::vector<double> values,
                      std::optional<std::vector<VertexId>> support = std::nullopt);

// Indicator-style helper: zero everywhere except the given (vertex, value)
// assignments; support is declared as those vertices.
ScalarField sparseField(const WeightedGraph& g,
                        const std::vector<std::pair<VertexId, double>>& assignments);

// Markov operator Pf(x) = sum_y p(x,y) f(y). Preserves constants and is a
// sup-norm contraction.
ScalarField applyP(const WeightedGraph& g, const ScalarField& f);

// Discrete gradient |grad f(x)| = ( 1/2 sum_y p(x,y) |f(x)-f(y)|^2 )^(1/2).
std::vector<double> gradientField(const WeightedGraph& g, const ScalarField& f);

// mu-weighted L^p norm over the restriction (whole graph when empty);
// p = infinity gives the sup of |f| over the restriction.
double lpNorm(const WeightedGraph& g, std::span<const double> values, double p,
              std::span<const VertexId> restrictTo = {});

// ( sum over ordered adjacent pairs |f(x)-f(y)|^p mu_xy )^(1/p); each
// undirected edge is counted twice.
double edgeSeminormP(const WeightedGraph& g, const ScalarField& f, double p);

// mu-weighted mean of f over B(x,n).
double ballAverage(const WeightedGraph& g, const ScalarField& f, VertexId x, int n);

// Evaluates the pseudo average f_n at every vertex within distance n of
// supp(f) (f_n vanishes identically elsewhere, since the ball misses the
// support). `room` is the caller's frontier-distance budget over that region
// and must exceed n; when the graph carries frontier metadata the guard is
// additionally verified per vertex, naming the worst offender.
ScalarField pseudoAverageField(const WeightedGraph& g, const ScalarField& f, int n, int room);

// <(I-P)f, f> on L^2(V,mu), computed from the kernel. Agrees with
// lpNorm(gradientField(f),2)^2 to 1e-10 relative.
double dirichletEnergy(const WeightedGraph& g, const ScalarField& f);

}  // namespace fracsob

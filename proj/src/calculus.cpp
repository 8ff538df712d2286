#include "fracsob/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "fracsob/summation.hpp"

namespace fracsob {

ScalarField makeField(const WeightedGraph& g, std::vector<double> values,
                      std::optional<std::vector<VertexId>> support) {
    if (values.size() != g.vertexCount())
        throw ValidationError("field has " + std::to_string(values.size()) +
                              " values, graph has " + std::to_string(g.vertexCount()) +
                              " vertices");
    if (support) {
        std::sort(support->begin(), support->end());
        support->erase(std::unique(support->begin(), support->end()), support->end());
        std::vector<std::uint8_t> in(g.vertexCount(), 0);
        for (VertexId v : *support) {
            g.requireVertex(v);
            in[v] = 1;
        }
        for (VertexId v = 0; v < g.vertexCount(); ++v)
            if (!in[v] && values[v] != 0.0)
                throw ValidationError("field value at vertex " + std::to_string(v) +
                                      " is nonzero outside the declared support");
    }
    return {std::move(values), std::move(support)};
}

ScalarField sparseField(const WeightedGraph& g,
                        const std::vector<std::pair<VertexId, double>>& assignments) {
    std::vector<double> values(g.vertexCount(), 0.0);
    std::vector<VertexId> support;
    for (const auto& [v, val] : assignments) {
        g.requireVertex(v);
        values[v] = val;
        support.push_back(v);
    }
    return makeField(g, std::move(values), std::move(support));
}

ScalarField applyP(const WeightedGraph& g, const ScalarField& f) {
    if (f.values.size() != g.vertexCount()) throw ValidationError("field/graph size mismatch");
    std::vector<double> out(g.vertexCount(), 0.0);
    for (VertexId x = 0; x < g.vertexCount(); ++x) {
        double s = 0.0;
        for (const auto& e : g.neighbors(x)) s += e.weight * f.values[e.to];
        out[x] = s / g.vertexMeasure(x);
    }
    return {std::move(out), std::nullopt};
}

std::vector<double> gradientField(const WeightedGraph& g, const ScalarField& f) {
    if (f.values.size() != g.vertexCount()) throw ValidationError("field/graph size mismatch");
    std::vector<double> out(g.vertexCount(), 0.0);
    for (VertexId x = 0; x < g.vertexCount(); ++x) {
        const double fx = f.values[x];
        double s = 0.0;
        for (const auto& e : g.neighbors(x)) {
            const double d = fx - f.values[e.to];
            s += e.weight * d * d;
        }
        out[x] = std::sqrt(0.5 * s / g.vertexMeasure(x));
    }
    return out;
}

double lpNorm(const WeightedGraph& g, std::span<const double> values, double p,
              std::span<const VertexId> restrictTo) {
    if (values.size() != g.vertexCount()) throw ValidationError("field/graph size mismatch");
    if (!(p >= 1.0)) throw ValidationError("lpNorm requires p >= 1");
    if (std::isinf(p)) {
        double best = 0.0;
        if (restrictTo.empty()) {
            for (double v : values) best = std::max(best, std::abs(v));
        } else {
            for (VertexId x : restrictTo) best = std::max(best, std::abs(values[x]));
        }
        return best;
    }
    KahanSum acc;
    auto term = [&](VertexId x) { acc.add(std::pow(std::abs(values[x]), p) * g.vertexMeasure(x)); };
    if (restrictTo.empty()) {
        for (VertexId x = 0; x < g.vertexCount(); ++x) term(x);
    } else {
        for (VertexId x : restrictTo) term(x);
    }
    return std::pow(acc.value(), 1.0 / p);
}

double edgeSeminormP(const WeightedGraph& g, const ScalarField& f, double p) {
    if (f.values.size() != g.vertexCount()) throw ValidationError("field/graph size mismatch");
    if (!(p >= 1.0) || std::isinf(p)) throw ValidationError("edgeSeminormP requires finite p >= 1");
    KahanSum acc;
    for (VertexId x = 0; x < g.vertexCount(); ++x)
        for (const auto& e : g.neighbors(x))
            acc.add(std::pow(std::abs(f.values[x] - f.values[e.to]), p) * e.weight);
    return std::pow(acc.value(), 1.0 / p);
}

double ballAverage(const WeightedGraph& g, const ScalarField& f, VertexId x, int n) {
    if (f.values.size() != g.vertexCount()) throw ValidationError("field/graph size mismatch");
    Ball b = ball(g, x, n);
    KahanSum num, den;
    for (VertexId y : b.members) {
        num.add(f.values[y] * g.vertexMeasure(y));
        den.add(g.vertexMeasure(y));
    }
    return num.value() / den.value();
}

ScalarField pseudoAverageField(const WeightedGraph& g, const ScalarField& f, int n, int room) {
    if (f.values.size() != g.vertexCount()) throw ValidationError("field/graph size mismatch");
    if (n < 0) throw ValidationError("pseudo average radius must be >= 0");
    if (room <= n)
        throw InsufficientRoom("room budget " + std::to_string(room) +
                               " does not exceed the averaging radius " + std::to_string(n));

    // Evaluation region: vertices within distance n of supp(f).
    std::vector<int> dist(g.vertexCount(), -1);
    std::deque<VertexId> q;
    if (f.support) {
        for (VertexId v : *f.support) {
            dist[v] = 0;
            q.push_back(v);
        }
    } else {
        for (VertexId v = 0; v < g.vertexCount(); ++v)
            if (f.values[v] != 0.0) {
                dist[v] = 0;
                q.push_back(v);
            }
    }
    std::vector<VertexId> region;
    while (!q.empty()) {
        VertexId v = q.front();
        q.pop_front();
        region.push_back(v);
        if (dist[v] >= n) continue;
        for (const auto& e : g.neighbors(v))
            if (dist[e.to] < 0) {
                dist[e.to] = dist[v] + 1;
                q.push_back(e.to);
            }
    }
    std::sort(region.begin(), region.end());

    if (g.hasFrontier()) {
        VertexId worst = g.vertexCount();
        int worstDist = std::numeric_limits<int>::max();
        for (VertexId v : region)
            if (g.frontierDistance(v) < worstDist) {
                worstDist = g.frontierDistance(v);
                worst = v;
            }
        if (worst != g.vertexCount() && worstDist <= n)
            throw InsufficientRoom("vertex " + std::to_string(worst) + " has frontier distance " +
                                   std::to_string(worstDist) + " <= averaging radius " +
                                   std::to_string(n));
    }

    std::vector<double> values(g.vertexCount(), 0.0);
    for (VertexId v : region) values[v] = ballAverage(g, f, v, n);
    return makeField(g, std::move(values), region);
}

double dirichletEnergy(const WeightedGraph& g, const ScalarField& f) {
    if (f.values.size() != g.vertexCount()) throw ValidationError("field/graph size mismatch");
    KahanSum acc;
    for (VertexId x = 0; x < g.vertexCount(); ++x) {
        double pf = 0.0;
        for (const auto& e : g.neighbors(x)) pf += e.weight * f.values[e.to];
        pf /= g.vertexMeasure(x);
        acc.add((f.values[x] - pf) * f.values[x] * g.vertexMeasure(x));
    }
    return acc.value();
}

}  // namespace fracsob

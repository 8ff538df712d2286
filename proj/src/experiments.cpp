#include "fracsob/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "fracsob/inequalities.hpp"
#include "fracsob/parallel.hpp"
#include "fracsob/summation.hpp"

namespace fracsob {

namespace {

// BFS from z0 assigning each vertex its diagonal attachment coordinate t:
// vertices whose coordinate offsets from z0 all share one absolute value are
// on a diagonal (t = that value); every other vertex inherits t from its BFS
// parent, i.e. from the point where its branch leaves the diagonal. Restrict
// to `allowed` when non-null.
std::vector<int> attachmentCoordinates(const WeightedGraph& g, VertexId z0,
                                       const std::vector<std::uint8_t>* allowed) {
    const auto zc = g.coordinates(z0);
    const int d = g.coordinateDim();
    std::vector<int> t(g.vertexCount(), -1);
    std::deque<VertexId> q{z0};
    t[z0] = 0;
    while (!q.empty()) {
        VertexId x = q.front();
        q.pop_front();
        for (const auto& e : g.neighbors(x)) {
            if (t[e.to] >= 0) continue;
            if (allowed && !(*allowed)[e.to]) continue;
            const auto c = g.coordinates(e.to);
            long long off = std::llabs(c[0] - zc[0]);
            bool diagonal = true;
            for (int i = 1; i < d && diagonal; ++i) diagonal = std::llabs(c[i] - zc[i]) == off;
            t[e.to] = diagonal ? static_cast<int>(off) : t[x];
            q.push_back(e.to);
        }
    }
    return t;
}

}  // namespace

ScalarField extremalField(const VicsekModel& m, int n) {
    if (n < 1 || n > m.generation)
        throw GenerationTooSmall("extremal field needs 1 <= n <= generation, got n = " +
                                 std::to_string(n) + " on generation " +
                                 std::to_string(m.generation));
    const WeightedGraph& g = m.graph;
    std::vector<VertexId> members = centeredBlock(m, n);
    long long half = m.diagonalLength;
    for (int i = n; i < m.generation; ++i) half /= 3;
    const double Ln = static_cast<double>(half);

    std::vector<std::uint8_t> allowed(g.vertexCount(), 0);
    for (VertexId v : members) allowed[v] = 1;
    const std::vector<int> t = attachmentCoordinates(g, m.center, &allowed);

    std::vector<double> values(g.vertexCount(), 0.0);
    for (VertexId v : members) values[v] = 1.0 - static_cast<double>(t[v]) / Ln;
    return makeField(g, std::move(values), std::move(members));
}

std::vector<ScalingSample> sobolevOptimalitySweep(int d, const std::vector<int>& generations,
                                                  double p, int parallelism) {
    if (generations.empty()) throw ValidationError("generation list is empty");
    for (int n : generations)
        if (n < 2) throw ValidationError("sweep generations must be >= 2");
    std::vector<ScalingSample> out(generations.size());
    parallelFor(generations.size(), parallelism, [&](std::size_t i) {
        const VicsekModel m = vicsek(d, generations[i]);
        const ScalarField F = extremalField(m, generations[i]);
        const std::vector<double> grad = gradientField(m.graph, F);
        const double value = lpNorm(m.graph, grad, p) / lpNorm(m.graph, F.values, p);
        out[i] = {m.graph.totalMeasure(), value, "sobolev-extremal"};
    });
    return out;
}

ScalarField poincareCandidate(const VicsekModel& m, int r) {
    if (r < 1) throw ValidationError("candidate radius must be >= 1");
    if (r > frontierDistance(m, m.center))
        throw InsufficientRoom("radius " + std::to_string(r) + " exceeds frontier distance " +
                               std::to_string(frontierDistance(m, m.center)));
    const WeightedGraph& g = m.graph;
    const std::vector<int> t = attachmentCoordinates(g, m.center, nullptr);
    std::vector<double> values(g.vertexCount(), 0.0);
    std::vector<VertexId> support;
    for (VertexId v = 0; v < g.vertexCount(); ++v) {
        const double val = 1.0 - static_cast<double>(t[v]) / r;
        if (val > 0.0) {
            values[v] = val;
            support.push_back(v);
        }
    }
    return makeField(g, std::move(values), std::move(support));
}

std::vector<ScalingSample> poincareOptimalitySweep(int d, int generation,
                                                   const std::vector<int>& radii, double p,
                                                   int parallelism) {
    if (radii.empty()) throw ValidationError("radius list is empty");
    const VicsekModel m = vicsek(d, generation);
    const int room = frontierDistance(m, m.center);
    const int rmax = *std::max_element(radii.begin(), radii.end());
    if (2 * rmax >= room)
        throw InsufficientRoom("2 * max radius = " + std::to_string(2 * rmax) +
                               " must stay below the frontier distance " + std::to_string(room));
    std::vector<ScalingSample> out(radii.size());
    parallelFor(radii.size(), parallelism, [&](std::size_t i) {
        const ScalarField f = poincareCandidate(m, radii[i]);
        out[i] = {static_cast<double>(radii[i]),
                  poincareQuotient(m.graph, f, m.center, radii[i], p), "poincare-candidate"};
    });
    return out;
}

std::vector<double> heatKernelDiagonal(const WeightedGraph& g, VertexId x, int kmax) {
    g.requireVertex(x);
    if (kmax < 0) throw ValidationError("kmax must be >= 0");
    if (g.frontierDistance(x) <= kmax)
        throw InsufficientRoom("vertex " + std::to_string(x) + " has frontier distance " +
                               std::to_string(g.frontierDistance(x)) + " <= kmax = " +
                               std::to_string(kmax));
    std::vector<double> f(g.vertexCount(), 0.0), next(g.vertexCount(), 0.0);
    f[x] = 1.0;
    std::vector<double> diag{1.0};
    diag.reserve(kmax + 1);
    for (int k = 1; k <= kmax; ++k) {
        for (VertexId v = 0; v < g.vertexCount(); ++v) {
            double s = 0.0;
            for (const auto& e : g.neighbors(v)) s += e.weight * f[e.to];
            next[v] = s / g.vertexMeasure(v);
        }
        f.swap(next);
        diag.push_back(f[x]);
    }
    return diag;
}

std::vector<ScalingSample> returnProbability(const WeightedGraph& g, VertexId x, int kmax) {
    const std::vector<double> diag = heatKernelDiagonal(g, x, kmax);
    std::vector<ScalingSample> out;
    for (int k = 2; k <= kmax; k += 2)
        out.push_back({static_cast<double>(k), diag[k], "return-probability"});
    return out;
}

double escapeTime(const WeightedGraph& g, VertexId x, int r, double tol) {
    g.requireVertex(x);
    if (r < 0) throw ValidationError("escape radius must be >= 0");
    if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
    if (g.frontierDistance(x) <= r + 1)
        throw InsufficientRoom("vertex " + std::to_string(x) + " has frontier distance " +
                               std::to_string(g.frontierDistance(x)) + " <= r+1 = " +
                               std::to_string(r + 1));

    // Local CSR of B(x,r) with transition probabilities into the ball only;
    // mass leaving the ball is absorbed.
    const Ball b = ball(g, x, r);
    const std::size_t k = b.members.size();
    std::vector<std::uint32_t> local(g.vertexCount(), UINT32_MAX);
    for (std::size_t i = 0; i < k; ++i) local[b.members[i]] = static_cast<std::uint32_t>(i);
    std::vector<std::size_t> offsets(k + 1, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (const auto& e : g.neighbors(b.members[i]))
            if (local[e.to] != UINT32_MAX) ++offsets[i + 1];
    for (std::size_t i = 0; i < k; ++i) offsets[i + 1] += offsets[i];
    std::vector<std::uint32_t> nbr(offsets[k]);
    std::vector<double> prob(offsets[k]);
    {
        std::vector<std::size_t> cur(offsets.begin(), offsets.end() - 1);
        for (std::size_t i = 0; i < k; ++i) {
            const VertexId v = b.members[i];
            for (const auto& e : g.neighbors(v))
                if (local[e.to] != UINT32_MAX) {
                    nbr[cur[i]] = local[e.to];
                    prob[cur[i]] = e.weight / g.vertexMeasure(v);
                    ++cur[i];
                }
        }
    }

    // Monotone fixed point u <- P_Omega u + 1 from u = 0. Successive
    // differences contract geometrically; the remaining gap is estimated by
    // the geometric tail delta * rho / (1 - rho) with a 10x safety factor.
    std::vector<double> u(k, 0.0), nextU(k, 0.0);
    const std::uint32_t xl = local[x];
    double prevDelta = -1.0;
    constexpr long kMaxIters = 100'000'000;
    for (long it = 0; it < kMaxIters; ++it) {
        double delta = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            double s = 1.0;
            for (std::size_t j = offsets[i]; j < offsets[i + 1]; ++j) s += prob[j] * u[nbr[j]];
            nextU[i] = s;
            delta = std::max(delta, s - u[i]);
        }
        u.swap(nextU);
        if (delta == 0.0) return u[xl];
        if (prevDelta > 0.0) {
            const double rho = std::min(delta / prevDelta, 1.0 - 1e-16);
            const double gap = delta * rho / (1.0 - rho);
            if (10.0 * gap <= tol * std::max(1.0, u[xl])) return u[xl] + gap;
        }
        prevDelta = delta;
    }
    throw NoConvergence("escape-time fixed point hit the iteration cap");
}

std::vector<ScalingSample> volumeSweep(const WeightedGraph& g, VertexId x,
                                       const std::vector<int>& radii) {
    g.requireVertex(x);
    if (radii.empty()) throw ValidationError("radius list is empty");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        // samples must have strictly positive scale for the log-log fit
        if (radii[i] < 1) throw ValidationError("sweep radii must be >= 1");
        if (i > 0 && radii[i] <= radii[i - 1])
            throw ValidationError("radii must be strictly increasing");
    }
    const int rmax = radii.back();
    // single BFS, then prefix sums of measure per distance
    std::vector<int> dist(g.vertexCount(), -1);
    std::deque<VertexId> q{x};
    dist[x] = 0;
    std::vector<KahanSum> perDist(rmax + 1);
    perDist[0].add(g.vertexMeasure(x));
    while (!q.empty()) {
        VertexId v = q.front();
        q.pop_front();
        if (dist[v] >= rmax) continue;
        for (const auto& e : g.neighbors(v))
            if (dist[e.to] < 0) {
                dist[e.to] = dist[v] + 1;
                perDist[dist[e.to]].add(g.vertexMeasure(e.to));
                q.push_back(e.to);
            }
    }
    std::vector<ScalingSample> out;
    KahanSum acc;
    int next = 0;
    for (int r = 0; r <= rmax; ++r) {
        acc.add(perDist[r].value());
        while (next < static_cast<int>(radii.size()) && radii[next] == r) {
            out.push_back({static_cast<double>(r), acc.value(), "volume"});
            ++next;
        }
    }
    return out;
}

FitResult fitExponent(std::vector<ScalingSample> samples, int skipSmallest) {
    if (skipSmallest < 0) throw ValidationError("skipSmallest must be >= 0");
    std::sort(samples.begin(), samples.end(),
              [](const ScalingSample& a, const ScalingSample& b) { return a.scale < b.scale; });
    if (samples.size() < static_cast<std::size_t>(skipSmallest) + 2)
        throw TooFewSamples("need at least " + std::to_string(skipSmallest + 2) +
                            " samples, got " + std::to_string(samples.size()));
    samples.erase(samples.begin(), samples.begin() + skipSmallest);
    for (const auto& s : samples)
        if (!(s.scale > 0.0) || !(s.value > 0.0))
            throw ValidationError("samples must have positive scale and value for a log-log fit");

    const std::size_t n = samples.size();
    KahanSum sx, sy;
    for (const auto& s : samples) {
        sx.add(std::log(s.scale));
        sy.add(std::log(s.value));
    }
    const double mx = sx.value() / n, my = sy.value() / n;
    KahanSum sxx, sxy;
    for (const auto& s : samples) {
        const double dx = std::log(s.scale) - mx;
        const double dy = std::log(s.value) - my;
        sxx.add(dx * dx);
        sxy.add(dx * dy);
    }
    if (sxx.value() == 0.0) throw ValidationError("all scales coincide; slope is undefined");
    FitResult fit;
    fit.slope = sxy.value() / sxx.value();
    fit.intercept = my - fit.slope * mx;
    KahanSum ssr, sst;
    for (const auto& s : samples) {
        const double y = std::log(s.value);
        const double e = y - (fit.intercept + fit.slope * std::log(s.scale));
        ssr.add(e * e);
        sst.add((y - my) * (y - my));
    }
    fit.rSquared = sst.value() > 0.0 ? 1.0 - ssr.value() / sst.value() : 1.0;
    fit.rSquared = std::clamp(fit.rSquared, 0.0, 1.0);
    fit.count = static_cast<int>(n);
    return fit;
}

}  // namespace fracsob

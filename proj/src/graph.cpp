#include "fracsob/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "fracsob/summation.hpp"

namespace fracsob {

long long GraphInfo::parameter(const std::string& key, long long fallback) const {
    for (const auto& [k, v] : parameters)
        if (k == key) return v;
    return fallback;
}

WeightedGraph buildGraph(const std::vector<EdgeSpec>& edges) {
    return buildGraph(edges, GraphInfo{});
}

WeightedGraph buildGraph(const std::vector<EdgeSpec>& edges, GraphInfo info,
                         std::vector<long long> coords, int coordDim,
                         const std::vector<VertexId>& frontierSeeds) {
    if (edges.empty()) throw ValidationError("edge list is empty");

    VertexId maxId = 0;
    for (const auto& e : edges) {
        if (e.u == e.v)
            throw SelfLoop("self-loop at vertex " + std::to_string(e.u));
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            throw NonPositiveWeight("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                    ") has non-positive weight " + std::to_string(e.weight));
        maxId = std::max({maxId, e.u, e.v});
    }

    // Duplicate detection on normalized (min,max) pairs.
    std::vector<std::pair<VertexId, VertexId>> keys;
    keys.reserve(edges.size());
    for (const auto& e : edges) keys.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    std::sort(keys.begin(), keys.end());
    for (std::size_t i = 1; i < keys.size(); ++i)
        if (keys[i] == keys[i - 1])
            throw DuplicateEdge("duplicate edge (" + std::to_string(keys[i].first) + "," +
                                std::to_string(keys[i].second) + ")");

    WeightedGraph g;
    g.n_ = maxId + 1;
    g.edgeCount_ = edges.size();
    g.adj_.assign(g.n_, {});
    for (const auto& e : edges) {
        g.adj_[e.u].push_back({e.v, e.weight});
        g.adj_[e.v].push_back({e.u, e.weight});
    }
    for (auto& nb : g.adj_)
        std::sort(nb.begin(), nb.end(),
                  [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });

    g.measure_.assign(g.n_, 0.0);
    g.maxDegree_ = 0;
    KahanSum total;
    for (VertexId x = 0; x < g.n_; ++x) {
        if (g.adj_[x].empty())
            throw DisconnectedGraph("vertex " + std::to_string(x) + " has no incident edges");
        KahanSum mu;
        for (const auto& e : g.adj_[x]) mu.add(e.weight);
        g.measure_[x] = mu.value();
        total.add(mu.value());
        g.maxDegree_ = std::max(g.maxDegree_, static_cast<int>(g.adj_[x].size()));
    }
    g.totalMeasure_ = total.value();

    g.c2_ = 1.0;
    for (VertexId x = 0; x < g.n_; ++x)
        for (const auto& e : g.adj_[x]) g.c2_ = std::min(g.c2_, e.weight / g.measure_[x]);

    // Connectivity.
    {
        std::vector<std::uint8_t> seen(g.n_, 0);
        std::deque<VertexId> q{0};
        seen[0] = 1;
        std::size_t reached = 1;
        while (!q.empty()) {
            VertexId x = q.front();
            q.pop_front();
            for (const auto& e : g.adj_[x])
                if (!seen[e.to]) {
                    seen[e.to] = 1;
                    ++reached;
                    q.push_back(e.to);
                }
        }
        if (reached != g.n_)
            for (VertexId x = 0; x < g.n_; ++x)
                if (!seen[x])
                    throw DisconnectedGraph("vertex " + std::to_string(x) +
                                            " is not reachable from vertex 0");
    }

    if (coordDim > 0 && coords.size() != static_cast<std::size_t>(g.n_) * coordDim)
        throw ValidationError("coordinate array size does not match vertex count");
    g.coordDim_ = coordDim;
    g.coords_ = std::move(coords);
    g.info_ = std::move(info);
    if (g.info_.center) g.requireVertex(*g.info_.center);
    for (VertexId c : g.info_.corners) g.requireVertex(c);

    if (!frontierSeeds.empty()) {
        g.frontierDist_.assign(g.n_, -1);
        std::deque<VertexId> q;
        for (VertexId s : frontierSeeds) {
            g.requireVertex(s);
            if (g.frontierDist_[s] != 0) {
                g.frontierDist_[s] = 0;
                q.push_back(s);
            }
        }
        while (!q.empty()) {
            VertexId x = q.front();
            q.pop_front();
            for (const auto& e : g.adj_[x])
                if (g.frontierDist_[e.to] < 0) {
                    g.frontierDist_[e.to] = g.frontierDist_[x] + 1;
                    q.push_back(e.to);
                }
        }
    }
    return g;
}

int distance(const WeightedGraph& g, VertexId x, VertexId y) {
    g.requireVertex(x);
    g.requireVertex(y);
    if (x == y) return 0;
    std::vector<int> dist(g.vertexCount(), -1);
    dist[x] = 0;
    std::deque<VertexId> q{x};
    while (!q.empty()) {
        VertexId v = q.front();
        q.pop_front();
        for (const auto& e : g.neighbors(v)) {
            if (dist[e.to] < 0) {
                dist[e.to] = dist[v] + 1;
                if (e.to == y) return dist[e.to];
                q.push_back(e.to);
            }
        }
    }
    // unreachable: graphs are connected by construction
    throw DisconnectedGraph("no path between " + std::to_string(x) + " and " + std::to_string(y));
}

Ball ball(const WeightedGraph& g, VertexId x, int n) {
    g.requireVertex(x);
    if (n < 0) throw ValidationError("ball radius must be >= 0, got " + std::to_string(n));
    Ball b;
    b.center = x;
    b.radius = n;
    std::vector<int> dist(g.vertexCount(), -1);
    dist[x] = 0;
    std::deque<VertexId> q{x};
    b.members.push_back(x);
    b.distanceFromCenter.push_back(0);
    while (!q.empty()) {
        VertexId v = q.front();
        q.pop_front();
        if (dist[v] >= n) continue;
        for (const auto& e : g.neighbors(v)) {
            if (dist[e.to] < 0) {
                dist[e.to] = dist[v] + 1;
                b.members.push_back(e.to);
                b.distanceFromCenter.push_back(dist[e.to]);
                q.push_back(e.to);
            }
        }
    }
    return b;
}

Domain makeDomain(const WeightedGraph& g, const std::vector<VertexId>& members) {
    if (members.empty()) throw EmptyDomain("domain member set is empty");
    Domain d;
    d.members = members;
    std::sort(d.members.begin(), d.members.end());
    d.members.erase(std::unique(d.members.begin(), d.members.end()), d.members.end());
    for (VertexId x : d.members) g.requireVertex(x);

    d.mask.assign(g.vertexCount(), 0);
    for (VertexId x : d.members) d.mask[x] = 1;

    KahanSum mu, boundary;
    for (VertexId x : d.members) {
        mu.add(g.vertexMeasure(x));
        for (const auto& e : g.neighbors(x))
            if (!d.mask[e.to]) boundary.add(e.weight);
    }
    d.measure = mu.value();
    d.boundaryMeasure = boundary.value();

    // Multi-source BFS from the complement; r(Omega) = max d(x, complement) - 1.
    if (d.members.size() == g.vertexCount()) {
        d.inradius = std::numeric_limits<int>::max();  // every ball is contained
        return d;
    }
    std::vector<int> dist(g.vertexCount(), -1);
    std::deque<VertexId> q;
    for (VertexId x = 0; x < g.vertexCount(); ++x)
        if (!d.mask[x]) {
            dist[x] = 0;
            q.push_back(x);
        }
    while (!q.empty()) {
        VertexId v = q.front();
        q.pop_front();
        for (const auto& e : g.neighbors(v))
            if (dist[e.to] < 0) {
                dist[e.to] = dist[v] + 1;
                q.push_back(e.to);
            }
    }
    int best = 0;
    for (VertexId x : d.members) best = std::max(best, dist[x]);
    d.inradius = best - 1;
    return d;
}

}  // namespace fracsob

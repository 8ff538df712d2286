#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fracsob/errors.hpp"

namespace fracsob {

using VertexId = std::uint32_t;

struct Neighbor {
    VertexId to;
    double weight;  // edge weight mu_xy > 0
};

struct EdgeSpec {
    VertexId u;
    VertexId v;
    double weight;
};

// Generator metadata carried alongside a graph: family name, the integer
// parameters it was built from, and the distinguished vertices (z0 and the
// outer corners). buildGraph leaves this at its defaults; the generators and
// the file loader fill it in.
struct GraphInfo {
    std::string family = "custom";  // vicsek | lattice | path | custom
    std::vector<std::pair<std::string, long long>> parameters;
    std::optional<VertexId> center;
    std::vector<VertexId> corners;

    long long parameter(const std::string& key, long long fallback = -1) const;
};

// Immutable symmetric weighted graph with vertex measure mu(x) = sum of the
// incident edge weights and transition kernel p(x,y) = mu_xy / mu(x).
// Construction validates every invariant (symmetry, positivity, no self
// loops or duplicates, connectivity); afterwards all access is read-only and
// safe to share across threads.
class WeightedGraph {
public:
    std::uint32_t vertexCount() const { return n_; }
    std::size_t edgeCount() const { return edgeCount_; }

    const std::vector<Neighbor>& neighbors(VertexId x) const { return adj_[x]; }
    double vertexMeasure(VertexId x) const { return measure_[x]; }
    std::span<const double> vertexMeasures() const { return measure_; }
    double totalMeasure() const { return totalMeasure_; }

    int maxDegree() const { return maxDegree_; }               // N
    double controlledWeightConstant() const { return c2_; }    // c2 = min p(x,y)
    double transition(VertexId x, const Neighbor& e) const { return e.weight / measure_[x]; }

    const GraphInfo& info() const { return info_; }

    // Integer generator coordinates, lexicographic id order. Metadata only:
    // never used for metric computations.
    bool hasCoordinates() const { return coordDim_ > 0; }
    int coordinateDim() const { return coordDim_; }
    std::span<const long long> coordinates(VertexId x) const {
        return {coords_.data() + static_cast<std::size_t>(x) * coordDim_,
                static_cast<std::size_t>(coordDim_)};
    }

    // Truncation frontier of generated families (Vicsek outer corners,
    // lattice facets). Graphs built from raw edge lists have none; their
    // frontier distance is reported as "infinite".
    bool hasFrontier() const { return !frontierDist_.empty(); }
    int frontierDistance(VertexId x) const {
        return hasFrontier() ? frontierDist_[x] : std::numeric_limits<int>::max();
    }

    void requireVertex(VertexId x) const {
        if (x >= n_)
            throw ValidationError("vertex id " + std::to_string(x) + " out of range [0," +
                                  std::to_string(n_) + ")");
    }

    friend WeightedGraph buildGraph(const std::vector<EdgeSpec>& edges, GraphInfo info,
                                    std::vector<long long> coords, int coordDim,
                                    const std::vector<VertexId>& frontierSeeds);

private:
    WeightedGraph() = default;

    std::uint32_t n_ = 0;
    std::size_t edgeCount_ = 0;
    std::vector<std::vector<Neighbor>> adj_;
    std::vector<double> measure_;
    double totalMeasure_ = 0.0;
    int maxDegree_ = 0;
    double c2_ = 0.0;
    GraphInfo info_;
    int coordDim_ = 0;
    std::vector<long long> coords_;
    std::vector<int> frontierDist_;
};

// Metric ball B(x,n) = { y : d(x,y) <= n }. Members are listed in BFS
// discovery order with their exact distances from the center.
struct Ball {
    VertexId center;
    int radius;
    std::vector<VertexId> members;
    std::vector<int> distanceFromCenter;  // aligned with members
};

// Finite vertex subset with its measure, inradius and edge-boundary measure.
// The boundary is the set of crossing edges (exactly one endpoint inside),
// measured by the sum of their weights.
struct Domain {
    std::vector<VertexId> members;      // sorted, unique
    std::vector<std::uint8_t> mask;     // size vertexCount
    double measure = 0.0;               // mu(Omega)
    int inradius = 0;                   // r(Omega); INT_MAX when Omega = V
    double boundaryMeasure = 0.0;       // mu(dOmega)

    bool contains(VertexId x) const { return mask[x] != 0; }
    std::size_t size() const { return members.size(); }
};

WeightedGraph buildGraph(const std::vector<EdgeSpec>& edges);
WeightedGraph buildGraph(const std::vector<EdgeSpec>& edges, GraphInfo info,
                         std::vector<long long> coords = {}, int coordDim = 0,
                         const std::vector<VertexId>& frontierSeeds = {});

// Exact BFS edge-count distance.
int distance(const WeightedGraph& g, VertexId x, VertexId y);

// Exact metric ball via BFS truncated at depth n.
Ball ball(const WeightedGraph& g, VertexId x, int n);

// Builds a Domain from a member set. The inradius is computed from per-vertex
// BFS distance to the complement: r(Omega) = max over x in Omega of
// d(x, V \ Omega) - 1.
Domain makeDomain(const WeightedGraph& g, const std::vector<VertexId>& members);

}  // namespace fracsob

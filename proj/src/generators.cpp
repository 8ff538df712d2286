#include "fracsob/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <string>

namespace fracsob {

namespace {

constexpr int kMaxDim = 6;
using Coord = std::array<long long, kMaxDim>;  // unused dims stay 0

struct CoordEdge {
    Coord a, b;
};

Coord translated(const Coord& c, const Coord& off, int d) {
    Coord r{};
    for (int i = 0; i < d; ++i) r[i] = c[i] + off[i];
    return r;
}

}  // namespace

std::size_t vertexCap() {
    static const std::size_t cap = [] {
        if (const char* env = std::getenv("FRACSOB_MAX_VERTICES")) {
            char* end = nullptr;
            long long v = std::strtoll(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        }
        return static_cast<std::size_t>(2'000'000);
    }();
    return cap;
}

std::size_t vicsekVertexCount(int d, int k) {
    const std::size_t q = (std::size_t{1} << d) + 1;
    std::size_t v = q;
    for (int i = 1; i < k; ++i) {
        std::size_t next = q * v - (q - 1);
        if (next / q < v - 1) return SIZE_MAX;  // overflow
        v = next;
    }
    return v;
}

VicsekModel vicsek(int d, int k) {
    if (d < 1 || d > kMaxDim)
        throw ValidationError("vicsek dimension d must be in [1," + std::to_string(kMaxDim) +
                              "], got " + std::to_string(d));
    if (k < 1) throw ValidationError("vicsek generation k must be >= 1, got " + std::to_string(k));
    const std::size_t count = vicsekVertexCount(d, k);
    if (count > vertexCap())
        throw SizeCapExceeded("vicsek(" + std::to_string(d) + "," + std::to_string(k) + ") needs " +
                              std::to_string(count) + " vertices, cap is " +
                              std::to_string(vertexCap()));

    const int ncorners = 1 << d;

    // Generation 1 in the cube [0,2]^d: corners plus center (1,...,1).
    std::vector<CoordEdge> edges;
    Coord center1{};
    for (int i = 0; i < d; ++i) center1[i] = 1;
    for (int m = 0; m < ncorners; ++m) {
        Coord c{};
        for (int i = 0; i < d; ++i) c[i] = ((m >> i) & 1) ? 2 : 0;
        edges.push_back({center1, c});
    }

    long long side = 2;  // current cube is [0,side]^d
    for (int gen = 2; gen <= k; ++gen) {
        std::vector<CoordEdge> next;
        next.reserve(edges.size() * (ncorners + 1));
        // corner copies at offsets {0, 2*side}^d, center copy at (side,...,side)
        for (int m = 0; m <= ncorners; ++m) {
            Coord off{};
            if (m == ncorners) {
                for (int i = 0; i < d; ++i) off[i] = side;
            } else {
                for (int i = 0; i < d; ++i) off[i] = ((m >> i) & 1) ? 2 * side : 0;
            }
            for (const auto& e : edges)
                next.push_back({translated(e.a, off, d), translated(e.b, off, d)});
        }
        edges = std::move(next);
        side *= 3;
    }

    // Merge coincident corners by exact coordinate deduplication; number
    // vertices lexicographically.
    std::vector<Coord> verts;
    verts.reserve(edges.size() * 2);
    for (const auto& e : edges) {
        verts.push_back(e.a);
        verts.push_back(e.b);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

    auto idOf = [&](const Coord& c) -> VertexId {
        auto it = std::lower_bound(verts.begin(), verts.end(), c);
        return static_cast<VertexId>(it - verts.begin());
    };

    std::vector<EdgeSpec> specs;
    specs.reserve(edges.size());
    for (const auto& e : edges) specs.push_back({idOf(e.a), idOf(e.b), 1.0});

    std::vector<long long> coords(verts.size() * d);
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (int j = 0; j < d; ++j) coords[i * d + j] = verts[i][j];

    Coord centerC{};
    for (int i = 0; i < d; ++i) centerC[i] = side / 2;
    std::vector<VertexId> corners;
    for (int m = 0; m < ncorners; ++m) {
        Coord c{};
        for (int i = 0; i < d; ++i) c[i] = ((m >> i) & 1) ? side : 0;
        corners.push_back(idOf(c));
    }

    GraphInfo info;
    info.family = "vicsek";
    info.parameters = {{"d", d}, {"generation", k}};
    info.center = idOf(centerC);
    info.corners = corners;

    VicsekModel model{buildGraph(specs, info, std::move(coords), d, corners),
                      d,
                      k,
                      *info.center,
                      corners,
                      std::log(static_cast<double>(ncorners + 1)) / std::log(3.0),
                      0};
    model.diagonalLength = distance(model.graph, model.center, model.corners.front());

    // construction invariants: count recurrence, tree shape, equal diagonals
    if (model.graph.vertexCount() != count)
        throw Error("vicsek: vertex count " + std::to_string(model.graph.vertexCount()) +
                    " does not match the recurrence value " + std::to_string(count));
    if (model.graph.edgeCount() != count - 1)
        throw Error("vicsek: graph is not a tree");
    if (model.graph.neighbors(model.center).size() != static_cast<std::size_t>(ncorners))
        throw Error("vicsek: center degree is not 2^d");
    for (VertexId c : model.corners)
        if (distance(model.graph, model.center, c) != model.diagonalLength)
            throw Error("vicsek: corner " + std::to_string(c) + " breaks diagonal symmetry");
    return model;
}

WeightedGraph latticeBox(int d, int side) {
    if (d < 1 || d > kMaxDim)
        throw ValidationError("lattice dimension d must be in [1," + std::to_string(kMaxDim) +
                              "], got " + std::to_string(d));
    if (side < 2) throw ValidationError("lattice side must be >= 2, got " + std::to_string(side));
    std::size_t count = 1;
    for (int i = 0; i < d; ++i) {
        if (count > vertexCap() / static_cast<std::size_t>(side) + 1) {
            count = SIZE_MAX;
            break;
        }
        count *= static_cast<std::size_t>(side);
    }
    if (count > vertexCap())
        throw SizeCapExceeded("latticeBox(" + std::to_string(d) + "," + std::to_string(side) +
                              ") exceeds the vertex cap " + std::to_string(vertexCap()));

    // Row-major ids == lexicographic coordinate order.
    std::vector<long long> strides(d, 1);
    for (int i = d - 2; i >= 0; --i) strides[i] = strides[i + 1] * side;

    std::vector<EdgeSpec> specs;
    std::vector<long long> coords(count * d);
    std::vector<VertexId> frontier;
    std::vector<int> c(d, 0);
    for (std::size_t id = 0; id < count; ++id) {
        bool facet = false;
        for (int i = 0; i < d; ++i) {
            coords[id * d + i] = c[i];
            if (c[i] == 0 || c[i] == side - 1) facet = true;
            if (c[i] + 1 < side)
                specs.push_back({static_cast<VertexId>(id),
                                 static_cast<VertexId>(id + static_cast<std::size_t>(strides[i])),
                                 1.0});
        }
        if (facet) frontier.push_back(static_cast<VertexId>(id));
        for (int i = d - 1; i >= 0; --i) {
            if (++c[i] < side) break;
            c[i] = 0;
        }
    }

    GraphInfo info;
    info.family = d == 1 ? "path" : "lattice";
    info.parameters = {{"d", d}, {"side", side}};
    // median vertex, the canonical center for lattice runs
    std::size_t mid = 0;
    for (int i = 0; i < d; ++i) mid += static_cast<std::size_t>((side - 1) / 2) * strides[i];
    info.center = static_cast<VertexId>(mid);
    for (int m = 0; m < (1 << d); ++m) {
        std::size_t corner = 0;
        for (int i = 0; i < d; ++i)
            if ((m >> i) & 1) corner += static_cast<std::size_t>(side - 1) * strides[i];
        info.corners.push_back(static_cast<VertexId>(corner));
    }

    return buildGraph(specs, info, std::move(coords), d, frontier);
}

int frontierDistance(const WeightedGraph& g, VertexId x) {
    g.requireVertex(x);
    return g.frontierDistance(x);
}

int frontierDistance(const VicsekModel& m, VertexId x) { return frontierDistance(m.graph, x); }

std::vector<VertexId> centeredBlock(const VicsekModel& m, int n) {
    if (n < 1 || n > m.generation)
        throw GenerationTooSmall("block generation " + std::to_string(n) +
                                 " outside [1," + std::to_string(m.generation) + "]");
    long long half = m.diagonalLength;
    for (int i = n; i < m.generation; ++i) half /= 3;
    const auto& g = m.graph;
    const auto zc = g.coordinates(m.center);
    std::vector<VertexId> members;
    for (VertexId v = 0; v < g.vertexCount(); ++v) {
        const auto c = g.coordinates(v);
        bool inside = true;
        for (int i = 0; i < g.coordinateDim() && inside; ++i)
            inside = std::llabs(c[i] - zc[i]) <= half;
        if (inside) members.push_back(v);
    }
    return members;
}

std::vector<VertexId> centeredBlockCorners(const VicsekModel& m, int n) {
    if (n < 1 || n > m.generation)
        throw GenerationTooSmall("block generation " + std::to_string(n) +
                                 " outside [1," + std::to_string(m.generation) + "]");
    long long half = m.diagonalLength;
    for (int i = n; i < m.generation; ++i) half /= 3;
    const auto& g = m.graph;
    const auto zc = g.coordinates(m.center);
    const int d = g.coordinateDim();
    std::vector<VertexId> out;
    for (VertexId v = 0; v < g.vertexCount(); ++v) {
        const auto c = g.coordinates(v);
        bool corner = true;
        for (int i = 0; i < d && corner; ++i) corner = std::llabs(c[i] - zc[i]) == half;
        if (corner) out.push_back(v);
    }
    return out;
}

}  // namespace fracsob

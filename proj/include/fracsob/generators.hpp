#pragma once

#include <cstddef>
#include <vector>

#include "fracsob/graph.hpp"

namespace fracsob {

// A generated Vicsek graph together with its distinguished vertices and the
// theoretical volume-growth dimension D = log3(2^d + 1). diagonalLength is
// the measured center-to-corner distance L_k (= 3^(k-1) for unit edges).
struct VicsekModel {
    WeightedGraph graph;
    int dimension;                  // d
    int generation;                 // k
    VertexId center;                // z0
    std::vector<VertexId> corners;  // the 2^d outer corners z_i
    double dimensionD;
    int diagonalLength;             // L_k = d(z0, z_i)
};

// Generator size cap in vertices; FRACSOB_MAX_VERTICES overrides the default.
std::size_t vertexCap();

// Closed-form V_k for the cap check: V_1 = 2^d+1, V_{k+1} = (2^d+1) V_k - 2^d.
std::size_t vicsekVertexCount(int d, int k);

// Builds generation k of the d-dimensional Vicsek graph with standard weights
// (mu_xy = 1) by recursive placement on an integer grid: generation 1 is the
// star on the cube corners plus its center; each step places 2^d+1 scaled
// copies (corner cubes plus the center cube) and merges coincident corners by
// exact integer-coordinate deduplication. Vertex ids are the lexicographic
// order of the final coordinates, so identical (d,k) always produce identical
// numbering.
VicsekModel vicsek(int d, int k);

// Nearest-neighbor grid {0..side-1}^d with unit weights. Ids are row-major
// (lexicographic in coordinates). Frontier = facet vertices.
WeightedGraph latticeBox(int d, int side);

// BFS distance from x to the truncation frontier: the corner set of the
// outermost block for Vicsek graphs, the facet vertices for boxes. Graphs
// without frontier metadata report "infinite" (INT_MAX).
int frontierDistance(const WeightedGraph& g, VertexId x);
int frontierDistance(const VicsekModel& m, VertexId x);

// Members of the generation-n block containing z0, identified from the
// construction coordinates (the box of half-width L_k / 3^(k-n) around z0).
std::vector<VertexId> centeredBlock(const VicsekModel& m, int n);

// The 2^d corners of that block.
std::vector<VertexId> centeredBlockCorners(const VicsekModel& m, int n);

}  // namespace fracsob

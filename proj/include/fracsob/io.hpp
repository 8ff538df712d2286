#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fracsob/calculus.hpp"
#include "fracsob/experiments.hpp"
#include "fracsob/graph.hpp"

namespace fracsob {

// Graph files. The writer emits a single JSON document
//   {version, vertexCount, family, parameters, markers:{center,corners},
//    edges:[[u,v,w],...]}
// with a stable key order. The loader additionally accepts the hybrid form:
// the same JSON header without "edges", followed by one edge per line as
// "u v weight". The truncation frontier is reconstructed from family
// metadata (Vicsek: marker corners; lattice/path: facet vertices recomputed
// from the parameters).
void writeGraph(const WeightedGraph& g, const std::string& path);
void writeGraph(const WeightedGraph& g, std::ostream& os);
WeightedGraph loadGraph(const std::string& path);
WeightedGraph loadGraph(std::istream& is, const std::string& name);

// FNV-1a over the canonical adjacency serialization (vertex count, then per
// vertex its degree and sorted (neighbor, weight-bits) pairs); 16 hex digits.
std::string graphHash(const WeightedGraph& g);

// FNV-1a over the value bit patterns.
std::string fieldHash(std::span<const double> values);

// Field files: JSON {graphHash, values:[...]}. Loading verifies the hash
// against the host graph.
void writeField(const WeightedGraph& g, const ScalarField& f, const std::string& path);
ScalarField loadField(const WeightedGraph& g, const std::string& path);

// CSV rows. Sweep artifacts use the schema
//   experiment,family,d,k_or_gen,p,scale,value
// and quotient artifacts use
//   family,d,k,p,scale,value,witnessHash
// The sample reader accepts both (it locates the scale/value columns by
// header name), so every emitted row round-trips through `fit`.
struct SampleRow {
    std::string experiment;
    std::string family;
    int d = 0;
    int k = 0;
    double p = 0.0;
    double scale = 0.0;
    double value = 0.0;
    std::string witnessHash;  // empty for sweep rows
};

void writeSamplesCsv(const std::vector<SampleRow>& rows, const std::string& path,
                     bool quotientSchema);
std::vector<ScalingSample> readSamplesCsv(const std::string& path);

// 17-significant-digit formatting; identical runs produce byte-identical
// artifacts.
std::string formatDouble(double v);

}  // namespace fracsob

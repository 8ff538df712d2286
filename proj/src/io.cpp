#include "fracsob/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fracsob {

namespace {

using ordered_json = nlohmann::ordered_json;

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

constexpr std::uint64_t kFnvOffset = 0xCBF29CE484222325ULL;

std::vector<VertexId> latticeFrontier(int d, int side) {
    std::vector<long long> strides(d, 1);
    for (int i = d - 2; i >= 0; --i) strides[i] = strides[i + 1] * side;
    std::size_t count = 1;
    for (int i = 0; i < d; ++i) count *= static_cast<std::size_t>(side);
    std::vector<VertexId> frontier;
    std::vector<int> c(d, 0);
    for (std::size_t id = 0; id < count; ++id) {
        for (int i = 0; i < d; ++i)
            if (c[i] == 0 || c[i] == side - 1) {
                frontier.push_back(static_cast<VertexId>(id));
                break;
            }
        for (int i = d - 1; i >= 0; --i) {
            if (++c[i] < side) break;
            c[i] = 0;
        }
    }
    return frontier;
}

}  // namespace

std::string formatDouble(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void writeGraph(const WeightedGraph& g, std::ostream& os) {
    ordered_json doc;
    doc["version"] = 1;
    doc["vertexCount"] = g.vertexCount();
    doc["family"] = g.info().family;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : g.info().parameters) params[k] = v;
    doc["parameters"] = params;
    ordered_json markers = ordered_json::object();
    if (g.info().center)
        markers["center"] = *g.info().center;
    else
        markers["center"] = nullptr;
    markers["corners"] = g.info().corners;
    doc["markers"] = markers;
    ordered_json edges = ordered_json::array();
    for (VertexId x = 0; x < g.vertexCount(); ++x)
        for (const auto& e : g.neighbors(x))
            if (x < e.to) edges.push_back({x, e.to, e.weight});
    doc["edges"] = std::move(edges);
    os << doc.dump() << "\n";
}

void writeGraph(const WeightedGraph& g, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw ValidationError("cannot open " + path + " for writing");
    writeGraph(g, os);
}

WeightedGraph loadGraph(std::istream& is, const std::string& name) {
    ordered_json doc;
    try {
        is >> doc;  // parses exactly one JSON value; edge lines may follow
    } catch (const std::exception& e) {
        throw ValidationError(name + ": invalid JSON header: " + e.what());
    }
    if (!doc.is_object()) throw ValidationError(name + ": header is not a JSON object");
    if (doc.value("version", 0) != 1)
        throw ValidationError(name + ": unsupported version " +
                              std::to_string(doc.value("version", 0)));
    const auto vertexCount = doc.value("vertexCount", 0u);

    std::vector<EdgeSpec> edges;
    if (doc.contains("edges")) {
        for (const auto& e : doc["edges"]) {
            if (!e.is_array() || e.size() != 3)
                throw ValidationError(name + ": edge entries must be [u, v, weight]");
            edges.push_back({e[0].get<VertexId>(), e[1].get<VertexId>(), e[2].get<double>()});
        }
    } else {
        std::string line;
        while (std::getline(is, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            EdgeSpec e{};
            if (!(ls >> e.u >> e.v >> e.weight))
                throw ValidationError(name + ": bad edge line: \"" + line + "\"");
            edges.push_back(e);
        }
    }
    if (edges.empty()) throw ValidationError(name + ": no edges");

    GraphInfo info;
    info.family = doc.value("family", std::string("custom"));
    if (doc.contains("parameters"))
        for (const auto& [k, v] : doc["parameters"].items())
            info.parameters.emplace_back(k, v.get<long long>());
    if (doc.contains("markers")) {
        const auto& m = doc["markers"];
        if (m.contains("center") && !m["center"].is_null()) info.center = m["center"].get<VertexId>();
        if (m.contains("corners"))
            for (const auto& c : m["corners"]) info.corners.push_back(c.get<VertexId>());
    }

    std::vector<VertexId> frontier;
    if (info.family == "vicsek") {
        frontier = info.corners;
    } else if (info.family == "lattice" || info.family == "path") {
        const int d = static_cast<int>(info.parameter("d", 1));
        const int side = static_cast<int>(info.parameter("side", 0));
        if (side >= 2) frontier = latticeFrontier(d, side);
    }

    WeightedGraph g = buildGraph(edges, std::move(info), {}, 0, frontier);
    if (vertexCount != 0 && g.vertexCount() != vertexCount)
        throw ValidationError(name + ": header declares " + std::to_string(vertexCount) +
                              " vertices but the edges span " + std::to_string(g.vertexCount()));
    return g;
}

WeightedGraph loadGraph(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ValidationError("cannot open " + path);
    return loadGraph(is, path);
}

std::string graphHash(const WeightedGraph& g) {
    std::uint64_t h = kFnvOffset;
    const std::uint64_t n = g.vertexCount();
    h = fnv1a(h, &n, sizeof n);
    for (VertexId x = 0; x < g.vertexCount(); ++x) {
        const std::uint64_t deg = g.neighbors(x).size();
        h = fnv1a(h, &deg, sizeof deg);
        for (const auto& e : g.neighbors(x)) {
            const std::uint64_t to = e.to;
            h = fnv1a(h, &to, sizeof to);
            std::uint64_t bits;
            std::memcpy(&bits, &e.weight, sizeof bits);
            h = fnv1a(h, &bits, sizeof bits);
        }
    }
    return hex64(h);
}

std::string fieldHash(std::span<const double> values) {
    std::uint64_t h = kFnvOffset;
    for (double v : values) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        h = fnv1a(h, &bits, sizeof bits);
    }
    return hex64(h);
}

void writeField(const WeightedGraph& g, const ScalarField& f, const std::string& path) {
    if (f.values.size() != g.vertexCount()) throw ValidationError("field/graph size mismatch");
    ordered_json doc;
    doc["graphHash"] = graphHash(g);
    doc["values"] = f.values;
    if (f.support) doc["support"] = *f.support;
    std::ofstream os(path);
    if (!os) throw ValidationError("cannot open " + path + " for writing");
    os << doc.dump() << "\n";
}

ScalarField loadField(const WeightedGraph& g, const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ValidationError("cannot open " + path);
    ordered_json doc;
    try {
        is >> doc;
    } catch (const std::exception& e) {
        throw ValidationError(path + ": invalid JSON: " + std::string(e.what()));
    }
    if (doc.value("graphHash", std::string{}) != graphHash(g))
        throw ValidationError(path + ": graphHash does not match the loaded graph");
    std::vector<double> values = doc.value("values", std::vector<double>{});
    std::optional<std::vector<VertexId>> support;
    if (doc.contains("support")) support = doc["support"].get<std::vector<VertexId>>();
    return makeField(g, std::move(values), std::move(support));
}

void writeSamplesCsv(const std::vector<SampleRow>& rows, const std::string& path,
                     bool quotientSchema) {
    std::ofstream os(path);
    if (!os) throw ValidationError("cannot open " + path + " for writing");
    if (quotientSchema) {
        os << "family,d,k,p,scale,value,witnessHash\n";
        for (const auto& r : rows)
            os << r.family << ',' << r.d << ',' << r.k << ',' << formatDouble(r.p) << ','
               << formatDouble(r.scale) << ',' << formatDouble(r.value) << ',' << r.witnessHash
               << '\n';
    } else {
        os << "experiment,family,d,k_or_gen,p,scale,value\n";
        for (const auto& r : rows)
            os << r.experiment << ',' << r.family << ',' << r.d << ',' << r.k << ','
               << formatDouble(r.p) << ',' << formatDouble(r.scale) << ',' << formatDouble(r.value)
               << '\n';
    }
}

std::vector<ScalingSample> readSamplesCsv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ValidationError("cannot open " + path);
    std::string header;
    if (!std::getline(is, header)) throw TooFewSamples(path + ": empty file");

    std::vector<std::string> cols;
    {
        std::istringstream hs(header);
        std::string c;
        while (std::getline(hs, c, ',')) cols.push_back(c);
    }
    int scaleCol = -1, valueCol = -1, labelCol = 0;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i] == "scale") scaleCol = static_cast<int>(i);
        if (cols[i] == "value") valueCol = static_cast<int>(i);
    }
    if (scaleCol < 0 || valueCol < 0)
        throw ValidationError(path + ": header lacks scale/value columns: \"" + header + "\"");

    std::vector<ScalingSample> out;
    std::string line;
    std::size_t lineNo = 1;
    while (std::getline(is, line)) {
        ++lineNo;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(f);
        if (fields.size() < cols.size() && fields.size() <= static_cast<std::size_t>(
                                               std::max(scaleCol, valueCol)))
            throw ValidationError(path + ":" + std::to_string(lineNo) + ": short row");
        try {
            out.push_back({std::stod(fields[scaleCol]), std::stod(fields[valueCol]),
                           fields[labelCol]});
        } catch (const std::exception&) {
            throw ValidationError(path + ":" + std::to_string(lineNo) + ": non-numeric row");
        }
    }
    return out;
}

}  // namespace fracsob

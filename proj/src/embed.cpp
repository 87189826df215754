#include "skelgraph/embed.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "skelgraph/image_io.hpp"

namespace skelgraph {

GcnWeights init_weights(std::uint64_t seed) {
    GcnWeights w;
    w.seed = seed;
    std::mt19937_64 rng(seed);
    const double a1 = std::sqrt(6.0 / (1.0 + kEmbedDim));
    for (auto& v : w.w1) v = a1 * (2.0 * unit_uniform(rng) - 1.0);
    const double a2 = std::sqrt(6.0 / (kEmbedDim + kEmbedDim));
    for (auto& v : w.w2) v = a2 * (2.0 * unit_uniform(rng) - 1.0);
    return w;
}

std::string weights_to_json(const GcnWeights& w) {
    nlohmann::json j;
    j["seed"] = w.seed;
    j["W1"] = w.w1;
    j["W2"] = nlohmann::json::array();
    for (int r = 0; r < kEmbedDim; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < kEmbedDim; ++c) row.push_back(w.w2[static_cast<std::size_t>(r) * kEmbedDim + c]);
        j["W2"].push_back(row);
    }
    return j.dump();
}

GcnWeights weights_from_json(const std::string& text) {
    GcnWeights w;
    try {
        nlohmann::json j = nlohmann::json::parse(text);
        w.seed = j.at("seed").get<std::uint64_t>();
        auto w1 = j.at("W1");
        if (w1.size() != kEmbedDim) throw FormatError("weights JSON: W1 must have 32 entries");
        for (int i = 0; i < kEmbedDim; ++i) w.w1[i] = w1.at(i).get<double>();
        auto w2 = j.at("W2");
        if (w2.size() != kEmbedDim) throw FormatError("weights JSON: W2 must be 32x32");
        for (int r = 0; r < kEmbedDim; ++r) {
            if (w2.at(r).size() != kEmbedDim) throw FormatError("weights JSON: W2 must be 32x32");
            for (int c = 0; c < kEmbedDim; ++c)
                w.w2[static_cast<std::size_t>(r) * kEmbedDim + c] = w2.at(r).at(c).get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("weights JSON parse failed: ") + e.what());
    }
    return w;
}

SparseSym normalized_adjacency(const SkeletonGraph& g) {
    const int n = static_cast<int>(g.nodes.size());
    if (n == 0) throw GraphError("normalized adjacency of an empty graph is undefined");

    std::vector<std::vector<int>> nb(n);
    std::vector<int> deg(n, 0);
    for (auto [u, v] : g.edges) {
        nb[u].push_back(v);
        nb[v].push_back(u);
        ++deg[u];
        ++deg[v];
    }
    for (int i = 0; i < n; ++i) {
        nb[i].push_back(i); // self-loop
        std::sort(nb[i].begin(), nb[i].end());
    }

    SparseSym m;
    m.n = n;
    m.row_ptr.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) m.row_ptr[i + 1] = m.row_ptr[i] + static_cast<int>(nb[i].size());
    m.col.reserve(m.row_ptr[n]);
    m.val.reserve(m.row_ptr[n]);
    for (int i = 0; i < n; ++i) {
        double di = std::sqrt(static_cast<double>(deg[i] + 1));
        for (int j : nb[i]) {
            m.col.push_back(j);
            m.val.push_back(1.0 / (di * std::sqrt(static_cast<double>(deg[j] + 1))));
        }
    }
    return m;
}

namespace {

// y = A * x for CSR A and n x kEmbedDim row-major x.
void spmm(const SparseSym& a, const std::vector<double>& x, std::vector<double>& y) {
    y.assign(x.size(), 0.0);
    for (int i = 0; i < a.n; ++i) {
        double* yi = &y[static_cast<std::size_t>(i) * kEmbedDim];
        for (int p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
            const double w = a.val[p];
            const double* xr = &x[static_cast<std::size_t>(a.col[p]) * kEmbedDim];
            for (int j = 0; j < kEmbedDim; ++j) yi[j] += w * xr[j];
        }
    }
}

} // namespace

std::array<double, kEmbedDim> embed(const SkeletonGraph& g, const GcnWeights& w) {
    SparseSym a = normalized_adjacency(g);
    const int n = a.n;

    // layer 1: H1 = relu(A * ones * W1); A*ones is the vector of row sums
    std::vector<double> rowsum(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) rowsum[i] += a.val[p];

    std::vector<double> h1(static_cast<std::size_t>(n) * kEmbedDim);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < kEmbedDim; ++j)
            h1[static_cast<std::size_t>(i) * kEmbedDim + j] = std::max(0.0, rowsum[i] * w.w1[j]);

    // layer 2: H2 = relu((A * H1) * W2)
    std::vector<double> t;
    spmm(a, h1, t);
    std::array<double, kEmbedDim> pooled{};
    std::vector<double> h2row(kEmbedDim);
    for (int i = 0; i < n; ++i) {
        const double* ti = &t[static_cast<std::size_t>(i) * kEmbedDim];
        for (int j = 0; j < kEmbedDim; ++j) {
            double acc = 0.0;
            for (int m = 0; m < kEmbedDim; ++m) acc += ti[m] * w.w2[static_cast<std::size_t>(m) * kEmbedDim + j];
            h2row[j] = std::max(0.0, acc);
        }
        for (int j = 0; j < kEmbedDim; ++j) pooled[j] += h2row[j];
    }
    for (int j = 0; j < kEmbedDim; ++j) pooled[j] /= static_cast<double>(n);
    return pooled;
}

void write_embeddings_csv(std::vector<Embedding> rows, const std::string& path) {
    std::sort(rows.begin(), rows.end(),
              [](const Embedding& a, const Embedding& b) { return a.graph_id < b.graph_id; });
    std::ostringstream out;
    out << "graph_id";
    for (int j = 0; j < kEmbedDim; ++j) {
        char h[8];
        std::snprintf(h, sizeof h, ",e%02d", j);
        out << h;
    }
    out << "\n";
    char buf[40];
    for (const Embedding& e : rows) {
        out << e.graph_id;
        for (double v : e.values) {
            std::snprintf(buf, sizeof buf, ",%.17g", v);
            out << buf;
        }
        out << "\n";
    }
    write_file_atomic(path, out.str());
}

std::vector<Embedding> read_embeddings_csv(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line)) throw FormatError(path + ": empty embeddings CSV");
    if (line.rfind("graph_id,e00", 0) != 0)
        throw FormatError(path + ": unexpected embeddings CSV header");
    std::vector<Embedding> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        Embedding e;
        std::size_t pos = line.find(',');
        if (pos == std::string::npos)
            throw FormatError(path + ":" + std::to_string(lineno) + ": malformed row");
        e.graph_id = line.substr(0, pos);
        const char* s = line.c_str() + pos;
        for (int j = 0; j < kEmbedDim; ++j) {
            if (*s != ',')
                throw FormatError(path + ":" + std::to_string(lineno) + ": expected 32 values");
            char* end = nullptr;
            e.values[j] = std::strtod(s + 1, &end);
            if (end == s + 1)
                throw FormatError(path + ":" + std::to_string(lineno) + ": bad number");
            s = end;
        }
        if (*s != '\0')
            throw FormatError(path + ":" + std::to_string(lineno) + ": trailing characters");
        rows.push_back(std::move(e));
    }
    return rows;
}

} // namespace skelgraph

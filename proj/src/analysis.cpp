#include "skelgraph/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

#include "skelgraph/digest.hpp"
#include "skelgraph/image_io.hpp"

namespace skelgraph {

std::string to_string(Grouping g) {
    switch (g) {
    case Grouping::Fluence: return "fluence";
    case Grouping::Angle: return "angle";
    case Grouping::Structure: return "structure";
    }
    return "?";
}

std::string to_string(Subset s) {
    switch (s) {
    case Subset::Walls: return "walls";
    case Subset::Holes: return "holes";
    case Subset::Both: return "both";
    }
    return "?";
}

Grouping grouping_from_string(const std::string& s) {
    if (s == "fluence") return Grouping::Fluence;
    if (s == "angle") return Grouping::Angle;
    if (s == "structure") return Grouping::Structure;
    throw ParamError("unknown grouping '" + s + "' (want fluence|angle|structure)");
}

Subset subset_from_string(const std::string& s) {
    if (s == "walls") return Subset::Walls;
    if (s == "holes") return Subset::Holes;
    if (s == "both") return Subset::Both;
    throw ParamError("unknown subset '" + s + "' (want walls|holes|both)");
}

namespace {

struct ResolvedLabels {
    const ManifestEntry* entry = nullptr;
    std::string structure;
};

// "<image_id>_wall"/"<image_id>_hole" map to the manifest row for image_id
// with the structure taken from the suffix; bare ids use the row's structure.
ResolvedLabels resolve_id(const std::string& graph_id,
                          const std::map<std::string, const ManifestEntry*>& byId) {
    ResolvedLabels out;
    for (const char* suffix : {"_wall", "_hole"}) {
        std::string suf(suffix);
        if (graph_id.size() > suf.size() &&
            graph_id.compare(graph_id.size() - suf.size(), suf.size(), suf) == 0) {
            auto it = byId.find(graph_id.substr(0, graph_id.size() - suf.size()));
            if (it != byId.end()) {
                out.entry = it->second;
                out.structure = suf.substr(1);
                return out;
            }
        }
    }
    auto it = byId.find(graph_id);
    if (it != byId.end()) {
        out.entry = it->second;
        out.structure = it->second->structure;
    }
    return out;
}

} // namespace

GroupingResult run_grouping_analysis(const std::vector<Embedding>& embeddings,
                                     const std::vector<ManifestEntry>& manifest, Grouping grouping,
                                     Subset subset, const AnalysisOptions& opt) {
    std::map<std::string, const ManifestEntry*> byId;
    for (const ManifestEntry& e : manifest) byId[e.image_id] = &e;

    GroupingResult res;
    res.grouping = grouping;
    res.subset = subset;

    std::vector<const Embedding*> selected;
    std::vector<std::string> unmatched;
    for (const Embedding& emb : embeddings) {
        ResolvedLabels rl = resolve_id(emb.graph_id, byId);
        if (!rl.entry) {
            unmatched.push_back(emb.graph_id);
            continue;
        }
        if (subset == Subset::Walls && rl.structure != "wall") continue;
        if (subset == Subset::Holes && rl.structure != "hole") continue;
        selected.push_back(&emb);
        switch (grouping) {
        case Grouping::Fluence: res.labels.push_back(std::to_string(rl.entry->fluence_class)); break;
        case Grouping::Angle: res.labels.push_back(std::to_string(rl.entry->angle_class)); break;
        case Grouping::Structure: res.labels.push_back(rl.structure); break;
        }
        res.ids.push_back(emb.graph_id);
    }
    if (!unmatched.empty()) {
        std::string msg = "manifest has no row for:";
        for (const std::string& id : unmatched) msg += " " + id;
        throw ManifestError(msg);
    }
    if (selected.empty())
        throw AnalysisError("no embeddings in subset '" + to_string(subset) + "'");

    DataMatrix x;
    x.rows = static_cast<int>(selected.size());
    x.cols = kEmbedDim;
    x.values.reserve(static_cast<std::size_t>(x.rows) * kEmbedDim);
    for (const Embedding* e : selected)
        x.values.insert(x.values.end(), e->values.begin(), e->values.end());

    res.pca = pca_fit(x, opt.pca_components);
    res.projected = pca_project(res.pca, x);

    LabeledPoints pts;
    pts.labels = res.labels;
    pts.points = opt.dbi_on_embedding ? x : res.projected;
    res.report = davies_bouldin(pts, to_string(grouping));
    return res;
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string components_digest(const PcaModel& m) {
    std::string text;
    for (const auto& comp : m.components) {
        for (double v : comp) {
            text += fmt17(v);
            text += ',';
        }
        text += ';';
    }
    return digest_hex(text);
}

} // namespace

std::string report_to_json(const GroupingResult& r) {
    nlohmann::json j;
    j["grouping"] = to_string(r.grouping);
    j["subset"] = to_string(r.subset);
    j["K"] = r.report.k;
    j["dbi"] = r.report.dbi;
    j["clusters"] = nlohmann::json::array();
    for (int i = 0; i < r.report.k; ++i) {
        nlohmann::json c;
        c["label"] = r.report.labels[i];
        c["size"] = r.report.sizes[i];
        c["centroid"] = r.report.centroids[i];
        c["scatter"] = r.report.scatters[i];
        j["clusters"].push_back(c);
    }
    j["pca"]["explained_variance"] = r.pca.explained_variance;
    j["pca"]["components_digest"] = components_digest(r.pca);
    return j.dump();
}

void write_scatter_csv(const GroupingResult& r, const std::string& path) {
    std::ostringstream out;
    out << "graph_id,label";
    for (int p = 0; p < r.projected.cols; ++p) out << ",pc" << (p + 1);
    out << "\n";
    for (int i = 0; i < r.projected.rows; ++i) {
        out << r.ids[i] << "," << r.labels[i];
        for (int p = 0; p < r.projected.cols; ++p) out << "," << fmt17(r.projected.at(i, p));
        out << "\n";
    }
    write_file_atomic(path, out.str());
}

void write_scatter_svg(const GroupingResult& r, const std::string& path) {
    if (r.projected.cols < 2) throw AnalysisError("scatter SVG needs at least 2 components");
    const int w = 640, h = 480, margin = 48;

    double xmin = r.projected.at(0, 0), xmax = xmin;
    double ymin = r.projected.at(0, 1), ymax = ymin;
    for (int i = 0; i < r.projected.rows; ++i) {
        xmin = std::min(xmin, r.projected.at(i, 0));
        xmax = std::max(xmax, r.projected.at(i, 0));
        ymin = std::min(ymin, r.projected.at(i, 1));
        ymax = std::max(ymax, r.projected.at(i, 1));
    }
    double xspan = xmax > xmin ? xmax - xmin : 1.0;
    double yspan = ymax > ymin ? ymax - ymin : 1.0;
    auto sx = [&](double x) { return margin + (x - xmin) / xspan * (w - 2 * margin); };
    auto sy = [&](double y) { return h - margin - (y - ymin) / yspan * (h - 2 * margin); };

    static const char* kPalette[] = {"#d62728", "#2ca02c", "#1f77b4", "#ff7f0e",
                                     "#9467bd", "#8c564b", "#17becf"};
    std::map<std::string, std::string> color;
    {
        std::vector<std::string> labels = r.labels;
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
        for (std::size_t i = 0; i < labels.size(); ++i)
            color[labels[i]] = kPalette[i % (sizeof kPalette / sizeof *kPalette)];
    }

    char buf[256];
    std::ostringstream out;
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                  "viewBox=\"0 0 %d %d\">\n",
                  w, h, w, h);
    out << buf;
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"none\" "
                  "stroke=\"#444\"/>\n",
                  margin, margin, w - 2 * margin, h - 2 * margin);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"%d\" font-size=\"13\" fill=\"#222\">%s / %s  dbi=%.6g</text>\n",
                  margin, margin - 10, to_string(r.grouping).c_str(), to_string(r.subset).c_str(),
                  r.report.dbi);
    out << buf;

    LabeledPoints pts;
    pts.points = r.projected;
    // hulls use only the first two components
    if (r.projected.cols > 2) {
        pts.points.cols = 2;
        pts.points.values.clear();
        for (int i = 0; i < r.projected.rows; ++i) {
            pts.points.values.push_back(r.projected.at(i, 0));
            pts.points.values.push_back(r.projected.at(i, 1));
        }
    }
    pts.labels = r.labels;
    for (const auto& [label, hull] : convex_hulls(pts)) {
        if (hull.size() < 2) continue;
        out << "<polygon points=\"";
        for (const Point2& p : hull) {
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", sx(p.x), sy(p.y));
            out << buf;
        }
        std::snprintf(buf, sizeof buf,
                      "\" fill=\"%s\" fill-opacity=\"0.12\" stroke=\"%s\" stroke-width=\"1\"/>\n",
                      color[label].c_str(), color[label].c_str());
        out << buf;
    }
    for (int i = 0; i < r.projected.rows; ++i) {
        std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3.5\" fill=\"%s\"/>\n",
                      sx(r.projected.at(i, 0)), sy(r.projected.at(i, 1)),
                      color[r.labels[i]].c_str());
        out << buf;
    }
    int ly = margin + 16;
    for (const auto& [label, col] : color) {
        std::snprintf(buf, sizeof buf,
                      "<circle cx=\"%d\" cy=\"%d\" r=\"4\" fill=\"%s\"/>"
                      "<text x=\"%d\" y=\"%d\" font-size=\"12\" fill=\"#222\">%s</text>\n",
                      w - margin - 70, ly, col.c_str(), w - margin - 60, ly + 4, label.c_str());
        out << buf;
        ly += 18;
    }
    out << "</svg>\n";
    write_file_atomic(path, out.str());
}

} // namespace skelgraph

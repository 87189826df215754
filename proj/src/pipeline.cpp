#include "skelgraph/pipeline.hpp"

#include <atomic>
#include <filesystem>
#include <thread>

#include <json.hpp>

#include "skelgraph/digest.hpp"
#include "skelgraph/image_io.hpp"
#include "skelgraph/imaging.hpp"
#include "skelgraph/skeletonize.hpp"

namespace skelgraph {

namespace fs = std::filesystem;

void PipelineConfig::validate() const {
    if (threshold < 0 || threshold > 255) throw ParamError("threshold must be in [0,255]");
    if (pca_components < 1 || pca_components > kEmbedDim)
        throw ParamError("pca_components must be in [1,32]");
    if (!(blur_sigma > 0.0)) throw ParamError("blur_sigma must be > 0");
    if (blur_radius < 1) throw ParamError("blur_radius must be >= 1");
    if (workers < 0) throw ParamError("workers must be >= 0");
}

BinaryImage stage_preprocess(const GrayImage& img, const PipelineConfig& cfg, bool invert_output) {
    BinaryImage bin = threshold_binarize(gaussian_blur(img, cfg.blur_sigma, cfg.blur_radius),
                                         cfg.threshold);
    return invert_output ? invert(bin) : bin;
}

SkeletonImage stage_skeletonize(const BinaryImage& bin) { return skeletonize(bin); }

SkeletonGraph stage_graph(const SkeletonImage& skel) { return build_pixel_graph(skel); }

std::array<double, kEmbedDim> stage_embed(const SkeletonGraph& pixel_graph, const GcnWeights& w,
                                          bool condensed) {
    if (!condensed) return embed(pixel_graph, w);
    SkeletonGraph simple = condensed_to_simple_graph(pixel_graph, condense_graph(pixel_graph));
    return embed(simple, w);
}

std::vector<std::pair<Grouping, Subset>> standard_analyses(bool analyze_holes) {
    std::vector<std::pair<Grouping, Subset>> out;
    if (analyze_holes) {
        out.emplace_back(Grouping::Structure, Subset::Both);
        for (Grouping g : {Grouping::Fluence, Grouping::Angle})
            for (Subset s : {Subset::Both, Subset::Walls, Subset::Holes}) out.emplace_back(g, s);
    } else {
        out.emplace_back(Grouping::Fluence, Subset::Walls);
        out.emplace_back(Grouping::Angle, Subset::Walls);
    }
    return out;
}

namespace {

struct Task {
    const ManifestEntry* entry = nullptr;
    bool hole = false;
    std::string graph_id;
};

nlohmann::json config_json(const PipelineConfig& cfg) {
    nlohmann::json j;
    j["blur_sigma"] = cfg.blur_sigma;
    j["blur_radius"] = cfg.blur_radius;
    j["threshold"] = cfg.threshold;
    j["gcn_seed"] = cfg.gcn_seed;
    j["pca_components"] = cfg.pca_components;
    j["dbi_space"] = cfg.dbi_on_embedding ? "embedding" : "projected";
    j["graph_variant"] = cfg.embed_condensed ? "condensed" : "pixel";
    j["analyze_holes"] = cfg.analyze_holes;
    return j;
}

} // namespace

PipelineOutcome run_pipeline(const std::string& manifest_path, const PipelineConfig& cfg,
                             const std::string& out_dir) {
    cfg.validate();
    std::vector<ManifestEntry> entries = read_manifest(manifest_path);
    if (entries.empty()) throw ManifestError(manifest_path + ": no inputs");

    for (const char* sub : {"preprocessed", "skeletons", "graphs", "overlays", "reports"}) {
        std::error_code ec;
        fs::create_directories(fs::path(out_dir) / sub, ec);
        if (ec) throw IoError("cannot create output directory: " + ec.message());
    }

    GcnWeights weights = init_weights(cfg.gcn_seed);
    write_file_atomic((fs::path(out_dir) / "weights.json").string(), weights_to_json(weights));
    std::vector<std::string> written{"weights.json"};

    std::vector<Task> tasks;
    for (const ManifestEntry& e : entries) {
        tasks.push_back({&e, false, e.image_id + "_wall"});
        if (cfg.analyze_holes) tasks.push_back({&e, true, e.image_id + "_hole"});
    }

    std::vector<Embedding> slot(tasks.size());
    std::vector<ImageStats> stats(tasks.size());
    std::vector<std::string> errors(tasks.size());
    std::vector<char> done(tasks.size(), 0);

    auto process = [&](std::size_t i) {
        const Task& t = tasks[i];
        const std::string& gid = t.graph_id;
        try {
            GrayImage gray = load_grayscale(resolve_path(manifest_path, t.entry->path));
            BinaryImage bin = stage_preprocess(gray, cfg, t.hole);
            write_pgm(bin, (fs::path(out_dir) / "preprocessed" / (gid + ".pgm")).string());

            SkeletonImage skel = stage_skeletonize(bin);
            write_pgm(skel, (fs::path(out_dir) / "skeletons" / (gid + ".pgm")).string());

            SkeletonGraph g = stage_graph(skel);
            write_file_atomic((fs::path(out_dir) / "graphs" / (gid + ".json")).string(),
                              graph_to_json(g));
            write_ppm(render_overlay(bin, g, classify_nodes(g)),
                      (fs::path(out_dir) / "overlays" / (gid + ".ppm")).string());

            slot[i] = {gid, stage_embed(g, weights, cfg.embed_condensed)};
            int strictEndpoints = 0;
            for (const GraphNode& n : g.nodes) strictEndpoints += n.degree == 1;
            stats[i] = {gid, static_cast<int>(g.nodes.size()), static_cast<int>(g.edges.size()),
                        g.isolated_pixels, strictEndpoints};
            done[i] = 1;
        } catch (const std::exception& e) {
            errors[i] = gid + ": " + e.what();
        }
    };

    unsigned nworkers = cfg.workers > 0 ? static_cast<unsigned>(cfg.workers)
                                        : std::max(1u, std::thread::hardware_concurrency());
    nworkers = std::min<unsigned>(nworkers, static_cast<unsigned>(tasks.size()));
    if (nworkers <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) process(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nworkers; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= tasks.size()) return;
                    process(i);
                }
            });
        for (std::thread& th : pool) th.join();
    }

    PipelineOutcome outcome;
    std::vector<Embedding> embeddings;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (done[i]) {
            embeddings.push_back(slot[i]);
            outcome.images.push_back(stats[i]);
            for (const char* sub : {"preprocessed/", "skeletons/"})
                written.push_back(std::string(sub) + tasks[i].graph_id + ".pgm");
            written.push_back("graphs/" + tasks[i].graph_id + ".json");
            written.push_back("overlays/" + tasks[i].graph_id + ".ppm");
        } else {
            outcome.failures.push_back(errors[i]);
        }
    }
    std::sort(outcome.images.begin(), outcome.images.end(),
              [](const ImageStats& a, const ImageStats& b) { return a.graph_id < b.graph_id; });

    // analyses must see the same row order a staged run reads back from the
    // CSV, or PCA summation order (and hence low bits) would differ
    std::sort(embeddings.begin(), embeddings.end(),
              [](const Embedding& a, const Embedding& b) { return a.graph_id < b.graph_id; });
    if (!embeddings.empty()) {
        write_embeddings_csv(embeddings, (fs::path(out_dir) / "embeddings.csv").string());
        written.push_back("embeddings.csv");
    }

    AnalysisOptions opt{cfg.pca_components, cfg.dbi_on_embedding};
    for (auto [grouping, subset] : standard_analyses(cfg.analyze_holes)) {
        std::string stem = to_string(grouping) + "_" + to_string(subset);
        try {
            GroupingResult res = run_grouping_analysis(embeddings, entries, grouping, subset, opt);
            write_file_atomic((fs::path(out_dir) / "reports" / (stem + ".json")).string(),
                              report_to_json(res));
            write_scatter_csv(res, (fs::path(out_dir) / "reports" / ("scatter_" + stem + ".csv")).string());
            write_scatter_svg(res, (fs::path(out_dir) / "reports" / ("scatter_" + stem + ".svg")).string());
            written.push_back("reports/" + stem + ".json");
            written.push_back("reports/scatter_" + stem + ".csv");
            written.push_back("reports/scatter_" + stem + ".svg");
        } catch (const std::exception& e) {
            outcome.failures.push_back("analysis " + stem + ": " + e.what());
        }
    }

    for (const std::string& rel : written)
        outcome.output_digests[rel] = digest_file((fs::path(out_dir) / rel).string());

    std::sort(outcome.failures.begin(), outcome.failures.end());
    nlohmann::json summary;
    summary["config"] = config_json(cfg);
    summary["manifest_entries"] = entries.size();
    summary["failures"] = outcome.failures;
    summary["images"] = nlohmann::json::array();
    for (const ImageStats& s : outcome.images) {
        nlohmann::json js;
        js["graph_id"] = s.graph_id;
        js["nodes"] = s.nodes;
        js["edges"] = s.edges;
        js["isolated_pixels"] = s.isolated_pixels;
        js["degree1_nodes"] = s.degree1_nodes;
        summary["images"].push_back(js);
    }
    summary["outputs"] = outcome.output_digests;
    write_file_atomic((fs::path(out_dir) / "run_summary.json").string(), summary.dump(2) + "\n");

    outcome.exit_code = outcome.failures.empty() ? 0 : 1;
    return outcome;
}

} // namespace skelgraph

#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "skelgraph/analysis.hpp"
#include "skelgraph/image_io.hpp"
#include "skelgraph/imaging.hpp"
#include "skelgraph/pipeline.hpp"
#include "skelgraph/skeletonize.hpp"
#include "skelgraph/synth.hpp"

namespace fs = std::filesystem;
using namespace skelgraph;

namespace {

void add_config_flags(CLI::App* cmd, PipelineConfig& cfg) {
    cmd->add_option("--blur-sigma", cfg.blur_sigma, "Gaussian blur sigma (> 0)");
    cmd->add_option("--blur-radius", cfg.blur_radius, "Gaussian kernel radius (>= 1)");
    cmd->add_option("--threshold", cfg.threshold, "binarization threshold, strict > (0..255)");
}

// --out options fall back to $SKELGRAPH_OUT_ROOT via CLI11's envname binding
std::string require_out(const std::string& out) {
    if (out.empty()) throw ParamError("--out is required (or set SKELGRAPH_OUT_ROOT)");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"topological micrograph analysis: skeleton graphs, GCN embeddings, PCA/DBI"};
    app.require_subcommand(1);

    PipelineConfig cfg;
    std::string manifest, out, in_path, out_path;
    std::string grouping = "fluence", subset = "both";
    std::string dbi_space = "projected", graph_variant = "pixel";
    std::string overlay, background, trace_dir, weights_in, weights_out, embeddings_csv;
    std::vector<std::string> graph_inputs;
    bool do_invert = false;

    // pipeline
    auto* cmd_pipeline = app.add_subcommand("pipeline", "run the full pipeline over a manifest");
    cmd_pipeline->add_option("--manifest", manifest, "corpus manifest CSV")->required();
    cmd_pipeline->add_option("--out", out, "output directory")->envname("SKELGRAPH_OUT_ROOT");
    add_config_flags(cmd_pipeline, cfg);
    cmd_pipeline->add_option("--gcn-seed", cfg.gcn_seed, "seed for the frozen GCN weights");
    cmd_pipeline->add_option("--pca-components", cfg.pca_components, "PCA components (1..32)");
    cmd_pipeline->add_option("--dbi-space", dbi_space, "projected|embedding")
        ->check(CLI::IsMember({"projected", "embedding"}));
    cmd_pipeline->add_option("--graph-variant", graph_variant, "pixel|condensed")
        ->check(CLI::IsMember({"pixel", "condensed"}));
    cmd_pipeline->add_flag("--no-holes{false}", cfg.analyze_holes,
                           "skip the inverted-image hole pass");
    cmd_pipeline->add_option("--workers", cfg.workers, "worker threads (0 = auto)");

    // preprocess
    auto* cmd_pre = app.add_subcommand("preprocess", "blur + binarize (+ optional inversion)");
    cmd_pre->add_option("--in", in_path, "input raster (PGM/PPM)")->required();
    cmd_pre->add_option("--out", out_path, "output binary PGM")->required();
    add_config_flags(cmd_pre, cfg);
    cmd_pre->add_flag("--invert", do_invert, "flip the binarized image (hole pass)");

    // skeletonize
    auto* cmd_skel = app.add_subcommand("skeletonize", "thin a binary PGM to its skeleton");
    cmd_skel->add_option("--in", in_path, "binary PGM (nonzero = foreground)")->required();
    cmd_skel->add_option("--out", out_path, "skeleton PGM")->required();
    cmd_skel->add_option("--trace-dir", trace_dir, "dump one PGM per thinning sub-pass");

    // graph
    auto* cmd_graph = app.add_subcommand("graph", "build the skeleton pixel graph");
    cmd_graph->add_option("--in", in_path, "skeleton PGM")->required();
    cmd_graph->add_option("--out", out_path, "graph JSON")->required();
    cmd_graph->add_option("--overlay", overlay, "write an annotated PPM overlay");
    cmd_graph->add_option("--background", background, "binary PGM drawn behind the overlay");

    // embed
    auto* cmd_embed = app.add_subcommand("embed", "GCN-embed graph JSON files");
    cmd_embed->add_option("graphs", graph_inputs, "graph JSON files or directories")->required();
    cmd_embed->add_option("--out", out_path, "embeddings CSV")->required();
    cmd_embed->add_option("--gcn-seed", cfg.gcn_seed, "seed for the frozen GCN weights");
    cmd_embed->add_option("--graph-variant", graph_variant, "pixel|condensed")
        ->check(CLI::IsMember({"pixel", "condensed"}));
    cmd_embed->add_option("--weights-in", weights_in, "load weights JSON instead of seeding");
    cmd_embed->add_option("--weights-out", weights_out, "export the weights as JSON");

    // analyze
    auto* cmd_analyze = app.add_subcommand("analyze", "PCA + Davies-Bouldin for one grouping");
    cmd_analyze->add_option("--embeddings", embeddings_csv, "embeddings CSV")->required();
    cmd_analyze->add_option("--manifest", manifest, "corpus manifest CSV")->required();
    cmd_analyze->add_option("--grouping", grouping, "fluence|angle|structure")->required();
    cmd_analyze->add_option("--subset", subset, "walls|holes|both");
    cmd_analyze->add_option("--out", out, "output directory")->envname("SKELGRAPH_OUT_ROOT");
    cmd_analyze->add_option("--pca-components", cfg.pca_components, "PCA components (1..32)");
    cmd_analyze->add_option("--dbi-space", dbi_space, "projected|embedding")
        ->check(CLI::IsMember({"projected", "embedding"}));

    // synth
    CorpusGrid grid;
    std::string kind = "ripples";
    std::vector<double> coarseness, angles;
    auto* cmd_synth = app.add_subcommand("synth", "generate a labeled synthetic corpus");
    cmd_synth->add_option("--out", out, "output directory")->envname("SKELGRAPH_OUT_ROOT");
    cmd_synth->add_option("--kind", kind, "ripples|holes")
        ->check(CLI::IsMember({"ripples", "holes"}));
    cmd_synth->add_option("--height", grid.height, "image height (>= 64)");
    cmd_synth->add_option("--width", grid.width, "image width (>= 64)");
    cmd_synth->add_option("--noise-sigma", grid.noise_sigma, "additive noise sigma");
    cmd_synth->add_option("--seed", grid.base_seed, "base seed");
    cmd_synth->add_option("--replicates", grid.replicates, "images per grid cell");
    cmd_synth->add_option("--coarseness", coarseness, "three coarseness levels")->expected(3);
    cmd_synth->add_option("--angles", angles, "three angle levels in degrees")->expected(3);

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.dbi_on_embedding = dbi_space == "embedding";
        cfg.embed_condensed = graph_variant == "condensed";

        if (cmd_pipeline->parsed()) {
            PipelineOutcome res = run_pipeline(manifest, cfg, require_out(out));
            for (const std::string& f : res.failures) std::cerr << "error: " << f << "\n";
            std::cout << res.images.size() << " graphs embedded, " << res.failures.size()
                      << " failures\n";
            return res.exit_code;
        }
        if (cmd_pre->parsed()) {
            cfg.validate();
            write_pgm(stage_preprocess(load_grayscale(in_path), cfg, do_invert), out_path);
            return 0;
        }
        if (cmd_skel->parsed()) {
            ThinningTrace trace;
            if (!trace_dir.empty()) {
                fs::create_directories(trace_dir);
                trace = [&](int iter, int sub, const BinaryImage& img, int) {
                    char name[48];
                    std::snprintf(name, sizeof name, "trace_iter%03d_sub%d.pgm", iter, sub);
                    write_pgm(img, (fs::path(trace_dir) / name).string());
                };
            }
            write_pgm(skeletonize(load_binary(in_path), trace), out_path);
            return 0;
        }
        if (cmd_graph->parsed()) {
            SkeletonImage skel = load_binary(in_path);
            SkeletonGraph g = build_pixel_graph(skel);
            if (g.isolated_pixels > 0)
                std::cerr << "note: " << g.isolated_pixels << " isolated skeleton pixels excluded\n";
            int strictEndpoints = 0;
            for (const GraphNode& n : g.nodes) strictEndpoints += n.degree == 1;
            std::cerr << g.nodes.size() << " nodes, " << g.edges.size() << " edges, "
                      << strictEndpoints << " degree-1 endpoints\n";
            write_file_atomic(out_path, graph_to_json(g));
            if (!overlay.empty()) {
                BinaryImage bg = background.empty() ? skel : load_binary(background);
                write_ppm(render_overlay(bg, g, classify_nodes(g)), overlay);
            }
            return 0;
        }
        if (cmd_embed->parsed()) {
            GcnWeights w = weights_in.empty() ? init_weights(cfg.gcn_seed)
                                              : weights_from_json(read_file(weights_in));
            if (!weights_out.empty()) write_file_atomic(weights_out, weights_to_json(w));
            std::vector<std::string> files;
            for (const std::string& input : graph_inputs) {
                if (fs::is_directory(input)) {
                    for (const auto& e : fs::directory_iterator(input))
                        if (e.path().extension() == ".json") files.push_back(e.path().string());
                } else {
                    files.push_back(input);
                }
            }
            std::vector<Embedding> rows;
            for (const std::string& f : files) {
                SkeletonGraph g = graph_from_json(read_file(f));
                rows.push_back({fs::path(f).stem().string(),
                                stage_embed(g, w, cfg.embed_condensed)});
            }
            write_embeddings_csv(std::move(rows), out_path);
            return 0;
        }
        if (cmd_analyze->parsed()) {
            std::string dir = require_out(out);
            fs::create_directories(dir);
            AnalysisOptions opt{cfg.pca_components, cfg.dbi_on_embedding};
            GroupingResult res =
                run_grouping_analysis(read_embeddings_csv(embeddings_csv), read_manifest(manifest),
                                      grouping_from_string(grouping), subset_from_string(subset), opt);
            std::string stem = grouping + "_" + subset;
            write_file_atomic((fs::path(dir) / (stem + ".json")).string(), report_to_json(res));
            write_scatter_csv(res, (fs::path(dir) / ("scatter_" + stem + ".csv")).string());
            write_scatter_svg(res, (fs::path(dir) / ("scatter_" + stem + ".svg")).string());
            std::cout << "dbi " << res.report.dbi << " (" << stem << ", K=" << res.report.k << ")\n";
            return 0;
        }
        if (cmd_synth->parsed()) {
            grid.kind = kind == "holes" ? SynthKind::Holes : SynthKind::Ripples;
            if (!coarseness.empty()) std::copy_n(coarseness.begin(), 3, grid.coarseness_levels.begin());
            if (!angles.empty()) std::copy_n(angles.begin(), 3, grid.angle_levels.begin());
            auto entries = generate_corpus(grid, require_out(out));
            std::cout << entries.size() << " images generated\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

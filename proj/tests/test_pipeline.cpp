#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "skelgraph/digest.hpp"
#include "skelgraph/image_io.hpp"
#include "skelgraph/pipeline.hpp"
#include "skelgraph/skeletonize.hpp"
#include "skelgraph/synth.hpp"

using namespace skelgraph;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

// small corpus shared by the pipeline tests, generated once
const fs::path& small_corpus() {
    static fs::path manifest = [] {
        static TempDir dir("sg_pipe_corpus");
        CorpusGrid grid;
        grid.height = grid.width = 96;
        grid.replicates = 1;
        grid.noise_sigma = 5.0;
        generate_corpus(grid, dir.path.string());
        return dir.path / "manifest.csv";
    }();
    return manifest;
}

PipelineConfig test_config() {
    PipelineConfig cfg;
    cfg.workers = 2;
    return cfg;
}

} // namespace

TEST_CASE("pipeline produces the full artifact tree and seven reports") {
    TempDir out("sg_pipe_run");
    PipelineOutcome res = run_pipeline(small_corpus().string(), test_config(), out.path.string());
    CHECK(res.exit_code == 0);
    CHECK(res.failures.empty());
    CHECK(res.images.size() == 18); // 9 images x wall/hole

    int reports = 0;
    for (auto [grouping, subset] : standard_analyses(true)) {
        std::string stem = to_string(grouping) + "_" + to_string(subset);
        CHECK(fs::exists(out.path / "reports" / (stem + ".json")));
        CHECK(fs::exists(out.path / "reports" / ("scatter_" + stem + ".csv")));
        CHECK(fs::exists(out.path / "reports" / ("scatter_" + stem + ".svg")));
        ++reports;
    }
    CHECK(reports == 7);
    CHECK(fs::exists(out.path / "embeddings.csv"));
    CHECK(fs::exists(out.path / "weights.json"));
    CHECK(fs::exists(out.path / "run_summary.json"));

    auto rows = read_embeddings_csv((out.path / "embeddings.csv").string());
    REQUIRE(rows.size() == 18);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i - 1].graph_id < rows[i].graph_id);

    // run-summary digests verify against the emitted files
    for (const auto& [rel, digest] : res.output_digests)
        CHECK(digest_file((out.path / rel).string()) == digest);

    // structure grouping sees both variants of every image
    GroupingResult structure = run_grouping_analysis(
        rows, read_manifest(small_corpus().string()), Grouping::Structure, Subset::Both, {});
    CHECK(structure.report.k == 2);
}

TEST_CASE("two identical runs produce identical content digests") {
    TempDir a("sg_pipe_det_a");
    TempDir b("sg_pipe_det_b");
    PipelineConfig cfg = test_config();
    PipelineOutcome ra = run_pipeline(small_corpus().string(), cfg, a.path.string());
    cfg.workers = 4; // parallelism must not change any output byte
    PipelineOutcome rb = run_pipeline(small_corpus().string(), cfg, b.path.string());
    REQUIRE(ra.output_digests.size() == rb.output_digests.size());
    CHECK(ra.output_digests == rb.output_digests);
}

TEST_CASE("staged commands reproduce the pipeline byte for byte") {
    TempDir out("sg_pipe_stage");
    TempDir staged("sg_pipe_stage_redo");
    PipelineConfig cfg = test_config();
    run_pipeline(small_corpus().string(), cfg, out.path.string());

    auto entries = read_manifest(small_corpus().string());
    const ManifestEntry& e0 = entries[0];

    // stage 1: preprocess (wall and hole passes)
    GrayImage gray = load_grayscale(resolve_path(small_corpus().string(), e0.path));
    for (bool hole : {false, true}) {
        std::string gid = e0.image_id + (hole ? "_hole" : "_wall");
        BinaryImage bin = stage_preprocess(gray, cfg, hole);
        write_pgm(bin, (staged.path / (gid + ".pre.pgm")).string());
        CHECK(digest_file((staged.path / (gid + ".pre.pgm")).string()) ==
              digest_file((out.path / "preprocessed" / (gid + ".pgm")).string()));

        // stage 2: skeletonize from the serialized intermediate
        SkeletonImage skel = stage_skeletonize(load_binary((staged.path / (gid + ".pre.pgm")).string()));
        write_pgm(skel, (staged.path / (gid + ".skel.pgm")).string());
        CHECK(digest_file((staged.path / (gid + ".skel.pgm")).string()) ==
              digest_file((out.path / "skeletons" / (gid + ".pgm")).string()));

        // stage 3: graph from the serialized skeleton
        SkeletonGraph g = stage_graph(load_binary((staged.path / (gid + ".skel.pgm")).string()));
        write_file_atomic((staged.path / (gid + ".json")).string(), graph_to_json(g));
        CHECK(digest_file((staged.path / (gid + ".json")).string()) ==
              digest_file((out.path / "graphs" / (gid + ".json")).string()));
    }

    // stage 4: embed every pipeline graph from its JSON
    GcnWeights w = init_weights(cfg.gcn_seed);
    std::vector<Embedding> rows;
    for (const auto& entry : fs::directory_iterator(out.path / "graphs")) {
        SkeletonGraph g = graph_from_json(read_file(entry.path().string()));
        rows.push_back({entry.path().stem().string(), stage_embed(g, w, cfg.embed_condensed)});
    }
    write_embeddings_csv(rows, (staged.path / "embeddings.csv").string());
    CHECK(digest_file((staged.path / "embeddings.csv").string()) ==
          digest_file((out.path / "embeddings.csv").string()));

    // stage 5: one grouping analysis from the serialized embeddings
    AnalysisOptions opt{cfg.pca_components, cfg.dbi_on_embedding};
    GroupingResult res =
        run_grouping_analysis(read_embeddings_csv((staged.path / "embeddings.csv").string()),
                              entries, Grouping::Angle, Subset::Walls, opt);
    write_file_atomic((staged.path / "angle_walls.json").string(), report_to_json(res));
    CHECK(digest_file((staged.path / "angle_walls.json").string()) ==
          digest_file((out.path / "reports" / "angle_walls.json").string()));
}

TEST_CASE("empty manifest is a fatal no-inputs error") {
    TempDir dir("sg_pipe_empty");
    std::string manifest = (dir.path / "manifest.csv").string();
    write_manifest({}, manifest);
    CHECK_THROWS_AS(run_pipeline(manifest, test_config(), (dir.path / "out").string()),
                    ManifestError);
}

TEST_CASE("missing manifest rows are reported with the unmatched ids") {
    auto rows = std::vector<Embedding>{{"mystery_wall", {}}, {"img_f1_a1_r00_wall", {}}};
    rows[1].values[0] = 1.0;
    auto entries = read_manifest(small_corpus().string());
    CHECK_THROWS_WITH_AS(
        run_grouping_analysis(rows, entries, Grouping::Fluence, Subset::Both, {}),
        "manifest has no row for: mystery_wall", ManifestError);
}

TEST_CASE("single-class subsets fail with a K<2 error") {
    TempDir dir("sg_pipe_oneclass");
    CorpusGrid grid;
    grid.height = grid.width = 64;
    grid.replicates = 1;
    auto entries = generate_corpus(grid, dir.path.string());

    std::vector<Embedding> rows;
    std::mt19937_64 rng(12);
    for (const auto& e : entries) {
        Embedding emb{e.image_id + "_wall", {}};
        for (double& v : emb.values) v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        rows.push_back(emb);
    }
    // structure grouping over wall-only embeddings has one class
    CHECK_THROWS_AS(run_grouping_analysis(rows, entries, Grouping::Structure, Subset::Both, {}),
                    AnalysisError);
}

TEST_CASE("per-image failures are skipped and flagged in the exit status") {
    TempDir dir("sg_pipe_partial");
    CorpusGrid grid;
    grid.height = grid.width = 64;
    grid.replicates = 1;
    grid.noise_sigma = 5.0;
    auto entries = generate_corpus(grid, dir.path.string());
    entries[0].path = "missing_file.pgm"; // break one input
    write_manifest(entries, (dir.path / "manifest.csv").string());

    PipelineOutcome res = run_pipeline((dir.path / "manifest.csv").string(), test_config(),
                                       (dir.path / "out").string());
    CHECK(res.exit_code == 1);
    CHECK(res.failures.size() == 2); // wall and hole pass of the broken image
    CHECK(res.images.size() == 16);
}

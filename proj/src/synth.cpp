#include "skelgraph/synth.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include "skelgraph/embed.hpp" // unit_uniform
#include "skelgraph/image_io.hpp"

namespace skelgraph {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Portable Box-Muller normal deviates (std::normal_distribution is
// implementation-defined, so streams would not be reproducible).
class NormalSource {
public:
    explicit NormalSource(std::mt19937_64& rng) : rng_(rng) {}
    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = unit_uniform(rng_);
        double u2 = unit_uniform(rng_);
        double mag = std::sqrt(-2.0 * std::log(1.0 - u1));
        spare_ = mag * std::sin(2.0 * kPi * u2);
        have_spare_ = true;
        return mag * std::cos(2.0 * kPi * u2);
    }

private:
    std::mt19937_64& rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

void validate(const SynthSpec& spec) {
    if (spec.height < 64 || spec.width < 64)
        throw ParamError("synth: dimensions must be at least 64x64");
    if (!(spec.coarseness > 0.0)) throw ParamError("synth: coarseness must be > 0");
    if (spec.noise_sigma < 0.0) throw ParamError("synth: noise_sigma must be >= 0");
}

GrayImage generate_ripples(const SynthSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    const int h = spec.height, w = spec.width;
    const double theta = spec.angle_deg * kPi / 180.0;
    const double lam = spec.coarseness;
    const double ct = std::cos(theta), st = std::sin(theta);

    // Two oblique rung systems whose coverage grows with the angle: bright
    // rungs link adjacent walls (junctions in the wall graph, cuts in the
    // hole graph) and dark rungs cut them (the symmetric roles for the hole
    // graph). Placing them at theta +/- 45 deg makes their structure-tensor
    // contributions cancel, so the dominant orientation stays on the primary
    // stripes; dimmed gray levels keep their gradient energy small while
    // still binarizing on the intended side of the threshold.
    const double mix = std::min(1.0, std::max(0.0, spec.angle_deg / 45.0));
    const double rung_gate = 1.0 - 0.8 * mix * mix; // sin never exceeds the gate at mix 0
    const double thA = theta + 0.25 * kPi, thB = theta - 0.25 * kPi;
    const double ctA = std::cos(thA), stA = std::sin(thA);
    const double ctB = std::cos(thB), stB = std::sin(thB);
    const double lamA = 1.35 * lam, lamB = 1.35 * lam;

    const double phase1 = 2.0 * kPi * unit_uniform(rng);
    const double phaseA = 2.0 * kPi * unit_uniform(rng);
    const double phase3 = 2.0 * kPi * unit_uniform(rng);
    const double phaseB = 2.0 * kPi * unit_uniform(rng);
    const double wobble_lam = 5.5 * lam;
    const double wobble_amp = 0.45 * lam;

    GrayImage img(w, h);
    NormalSource noise(rng);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            double u = c * ct + r * st;
            double v = -c * st + r * ct;
            double wob = wobble_amp * std::sin(2.0 * kPi * v / wobble_lam + phase3);
            double s1 = std::sin(2.0 * kPi * (u + wob) / lam + phase1);
            double sA = std::sin(2.0 * kPi * (c * ctA + r * stA) / lamA + phaseA);
            double sB = std::sin(2.0 * kPi * (c * ctB + r * stB) / lamB + phaseB);
            double val = s1 > 0.0 ? 205.0 : 45.0;
            // link/cut gray levels mirror each other around the stripe
            // levels (190-45 = 205-60) and overlaps go to the locally
            // stronger field, so the two rung systems carry equal boundary
            // energy and their orientation bias cancels
            bool link = sA > rung_gate, cut = sB > rung_gate;
            if (link && cut) (sA >= sB ? cut : link) = false;
            if (link) val = std::max(val, 190.0);
            if (cut) val = std::min(val, 60.0);
            if (spec.noise_sigma > 0.0) val += spec.noise_sigma * noise.next();
            img.at(r, c) = clamp_round_u8(val);
        }
    }
    return img;
}

GrayImage generate_holes(const SynthSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    const int h = spec.height, w = spec.width;
    const double r0 = spec.coarseness;
    const double mix = std::min(1.0, std::max(0.0, spec.angle_deg / 45.0));
    const double theta = spec.angle_deg * kPi / 180.0;
    const double ct = std::cos(theta), st = std::sin(theta);
    // the angle elongates pores into oriented ellipses
    const double ax = r0 * (1.0 + 0.8 * mix);
    const double ay = r0 * (1.0 - 0.35 * mix);

    struct Disk {
        double x, y, jitter;
    };
    const int target = static_cast<int>(0.32 * h * w / (kPi * ax * ay));
    std::vector<Disk> disks;
    int attempts = 0;
    while (static_cast<int>(disks.size()) < target && attempts < 60 * target) {
        ++attempts;
        Disk d{unit_uniform(rng) * w, unit_uniform(rng) * h, 0.8 + 0.4 * unit_uniform(rng)};
        bool ok = true;
        for (const Disk& o : disks) {
            double dx = d.x - o.x, dy = d.y - o.y;
            double minsep = (d.jitter + o.jitter) * 0.5 * (ax + ay) + 2.0;
            if (dx * dx + dy * dy < minsep * minsep) {
                ok = false;
                break;
            }
        }
        if (ok) disks.push_back(d);
    }

    GrayImage img(w, h);
    NormalSource noise(rng);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            bool inside = false;
            for (const Disk& d : disks) {
                double dx = c - d.x, dy = r - d.y;
                double ex = (dx * ct + dy * st) / (ax * d.jitter);
                double ey = (-dx * st + dy * ct) / (ay * d.jitter);
                if (ex * ex + ey * ey <= 1.0) {
                    inside = true;
                    break;
                }
            }
            double val = inside ? 45.0 : 205.0;
            if (spec.noise_sigma > 0.0) val += spec.noise_sigma * noise.next();
            img.at(r, c) = clamp_round_u8(val);
        }
    }
    return img;
}

} // namespace

GrayImage generate(const SynthSpec& spec) {
    validate(spec);
    return spec.kind == SynthKind::Ripples ? generate_ripples(spec) : generate_holes(spec);
}

std::vector<ManifestEntry> generate_corpus(const CorpusGrid& grid, const std::string& out_dir) {
    std::vector<ManifestEntry> entries;
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());

    int index = 0;
    for (int f = 1; f <= 3; ++f) {
        for (int a = 1; a <= 3; ++a) {
            for (int rep = 0; rep < grid.replicates; ++rep, ++index) {
                SynthSpec spec;
                spec.kind = grid.kind;
                spec.height = grid.height;
                spec.width = grid.width;
                spec.noise_sigma = grid.noise_sigma;
                spec.coarseness = grid.coarseness_levels[f - 1];
                spec.angle_deg = grid.angle_levels[a - 1];
                spec.seed = grid.base_seed + 1 + static_cast<std::uint64_t>(index);

                char name[64];
                std::snprintf(name, sizeof name, "img_f%d_a%d_r%02d", f, a, rep);
                std::string file = std::string(name) + ".pgm";
                GrayImage img = generate(spec);
                write_pgm(img, (std::filesystem::path(out_dir) / file).string());

                ManifestEntry e;
                e.image_id = name;
                e.path = file;
                e.fluence_class = f;
                e.angle_class = a;
                e.structure = grid.kind == SynthKind::Ripples ? "wall" : "hole";
                entries.push_back(std::move(e));
            }
        }
    }
    write_manifest(entries, (std::filesystem::path(out_dir) / "manifest.csv").string());
    return entries;
}

} // namespace skelgraph

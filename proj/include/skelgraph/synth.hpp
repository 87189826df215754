#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "skelgraph/image.hpp"
#include "skelgraph/manifest.hpp"

namespace skelgraph {

enum class SynthKind { Ripples, Holes };

// Parameters for one synthetic micrograph. angle_deg emulates the irradiation
// angle (it reorients the pattern and, for ripples, raises cross-link density
// so the angle axis dominates skeleton topology); coarseness emulates
// fluence-driven coarsening (feature wavelength / pore radius in pixels).
struct SynthSpec {
    SynthKind kind = SynthKind::Ripples;
    double angle_deg = 0.0;
    double coarseness = 12.0;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
    int height = 160;
    int width = 160;
};

// Deterministic per (spec, seed); 8-bit grayscale output.
GrayImage generate(const SynthSpec& spec);

// A 3 fluence x 3 angle condition grid with a fixed number of replicates per
// cell. Per-image seeds derive from base_seed and the grid position.
struct CorpusGrid {
    SynthKind kind = SynthKind::Ripples;
    int height = 160;
    int width = 160;
    double noise_sigma = 6.0;
    std::uint64_t base_seed = 7;
    std::array<double, 3> coarseness_levels{10.0, 14.0, 20.0};
    std::array<double, 3> angle_levels{0.0, 30.0, 45.0};
    int replicates = 5;
};

// Writes one PGM per grid cell and replicate plus manifest.csv into out_dir;
// returns the manifest. Classes come from the grid position; structure is
// "wall" for ripple images and "hole" for hole images.
std::vector<ManifestEntry> generate_corpus(const CorpusGrid& grid, const std::string& out_dir);

} // namespace skelgraph

#pragma once

#include <vector>

#include "skelgraph/image.hpp"

namespace skelgraph {

// Discretized Gaussian sampled at integer offsets -radius..radius,
// normalized to sum 1.
std::vector<double> gaussian_kernel(double sigma, int radius);

// Separable Gaussian convolution with edge replication at the borders.
// Intermediate arithmetic is double; the result is rounded half-up to 8 bits.
GrayImage gaussian_blur(const GrayImage& img, double sigma, int radius);

// out(p) = 1 iff img(p) > threshold (strict).
BinaryImage threshold_binarize(const GrayImage& img, int threshold);

// Flips every bit; an involution.
BinaryImage invert(const BinaryImage& bin);

} // namespace skelgraph

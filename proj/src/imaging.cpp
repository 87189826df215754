#include "skelgraph/imaging.hpp"

#include <algorithm>
#include <cmath>

namespace skelgraph {

std::vector<double> gaussian_kernel(double sigma, int radius) {
    if (!(sigma > 0.0)) throw ParamError("gaussian kernel: sigma must be > 0");
    if (radius < 1) throw ParamError("gaussian kernel: radius must be >= 1");
    std::vector<double> k(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        double v = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        k[i + radius] = v;
        sum += v;
    }
    for (double& v : k) v /= sum;
    return k;
}

GrayImage gaussian_blur(const GrayImage& img, double sigma, int radius) {
    std::vector<double> k = gaussian_kernel(sigma, radius);
    const int w = img.width, h = img.height;

    std::vector<double> tmp(static_cast<std::size_t>(w) * h);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            double acc = 0.0;
            for (int j = -radius; j <= radius; ++j) {
                int cc = std::clamp(c + j, 0, w - 1);
                acc += k[j + radius] * img.at(r, cc);
            }
            tmp[static_cast<std::size_t>(r) * w + c] = acc;
        }
    }

    GrayImage out(w, h);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i) {
                int rr = std::clamp(r + i, 0, h - 1);
                acc += k[i + radius] * tmp[static_cast<std::size_t>(rr) * w + c];
            }
            out.at(r, c) = clamp_round_u8(acc);
        }
    }
    return out;
}

BinaryImage threshold_binarize(const GrayImage& img, int threshold) {
    if (threshold < 0 || threshold > 255) throw ParamError("threshold must be in [0,255]");
    BinaryImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.data.size(); ++i) out.data[i] = img.data[i] > threshold ? 1 : 0;
    return out;
}

BinaryImage invert(const BinaryImage& bin) {
    BinaryImage out = bin;
    for (auto& v : out.data) v = v ? 0 : 1;
    return out;
}

} // namespace skelgraph

#include "skelgraph/skeletonize.hpp"

#include <array>

namespace skelgraph {

namespace {
// P2..P9 clockwise from north: N, NE, E, SE, S, SW, W, NW
constexpr int kOffR[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
constexpr int kOffC[8] = {0, 1, 1, 1, 0, -1, -1, -1};
} // namespace

std::pair<BinaryImage, int> thinning_pass(const BinaryImage& bin, int sub_pass) {
    if (sub_pass != 1 && sub_pass != 2) throw ParamError("thinning sub_pass must be 1 or 2");
    const int h = bin.height, w = bin.width;
    BinaryImage out = bin;
    int deleted = 0;
    std::array<int, 8> p{};
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (!bin.at(r, c)) continue;
            for (int i = 0; i < 8; ++i) {
                int rr = r + kOffR[i], cc = c + kOffC[i];
                p[i] = bin.in_bounds(rr, cc) ? bin.at(rr, cc) : 0;
            }
            int b = 0;
            for (int v : p) b += v;
            if (b < 2 || b > 6) continue;
            int a = 0; // 0->1 transitions in the circular sequence P2..P9,P2
            for (int i = 0; i < 8; ++i) a += (p[i] == 0 && p[(i + 1) % 8] == 1);
            if (a != 1) continue;
            // p[0]=P2 p[2]=P4 p[4]=P6 p[6]=P8
            bool del = sub_pass == 1 ? (p[0] * p[2] * p[4] == 0 && p[2] * p[4] * p[6] == 0)
                                     : (p[0] * p[2] * p[6] == 0 && p[0] * p[4] * p[6] == 0);
            if (del) {
                out.at(r, c) = 0;
                ++deleted;
            }
        }
    }
    return {out, deleted};
}

SkeletonImage skeletonize(const BinaryImage& bin, const ThinningTrace& trace) {
    BinaryImage img = bin;
    int iteration = 0;
    for (;;) {
        auto [after1, d1] = thinning_pass(img, 1);
        img = std::move(after1);
        if (trace) trace(iteration, 1, img, d1);
        auto [after2, d2] = thinning_pass(img, 2);
        img = std::move(after2);
        if (trace) trace(iteration, 2, img, d2);
        if (d1 + d2 == 0) break;
        ++iteration;
    }
    return img;
}

} // namespace skelgraph

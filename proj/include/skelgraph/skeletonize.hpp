#pragma once

#include <functional>
#include <utility>

#include "skelgraph/image.hpp"

namespace skelgraph {

// One simultaneous-deletion Zhang-Suen sub-pass (sub_pass 1 or 2) against the
// frozen input image. Returns the updated image and the number of deleted
// pixels. Out-of-bounds neighbors read as 0.
std::pair<BinaryImage, int> thinning_pass(const BinaryImage& bin, int sub_pass);

// Called after each sub-pass when tracing a thinning run.
using ThinningTrace =
    std::function<void(int iteration, int sub_pass, const BinaryImage& img, int deleted)>;

// Iterates sub-pass 1 then sub-pass 2 until a full iteration deletes nothing.
// The result is a fixed point: re-applying changes nothing.
SkeletonImage skeletonize(const BinaryImage& bin, const ThinningTrace& trace = nullptr);

} // namespace skelgraph

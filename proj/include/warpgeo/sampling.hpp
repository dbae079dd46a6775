#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "warpgeo/metric_field.hpp"
#include "warpgeo/tensor.hpp"

namespace warpgeo {

struct SampleRegion {
  ChartBox box;
  std::function<bool(const ChartPoint&)> accept;  // may be empty
};

// Uniform in the box, rejection-sampled against accept. Same seed, same
// points, bit for bit.
std::vector<ChartPoint> sample_points(const SampleRegion& region, int count, std::uint64_t seed);

}  // namespace warpgeo

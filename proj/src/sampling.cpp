#include "warpgeo/sampling.hpp"

#include <random>

#include "warpgeo/errors.hpp"

namespace warpgeo {

std::vector<ChartPoint> sample_points(const SampleRegion& region, int count, std::uint64_t seed) {
  if (count < 1) throw InvalidArgument("sample count must be at least 1");
  const std::size_t dim = region.box.lo.size();
  std::mt19937_64 rng(seed);
  std::vector<ChartPoint> pts;
  pts.reserve(static_cast<std::size_t>(count));
  long attempts = 0;
  while (static_cast<int>(pts.size()) < count) {
    if (++attempts > 1000L * count) throw InvalidArgument("sampling region rejects almost every point");
    std::vector<double> c(dim);
    // Explicit 53-bit draw keeps the stream independent of library
    // distribution internals.
    for (std::size_t i = 0; i < dim; ++i) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      c[i] = region.box.lo[i] + u * (region.box.hi[i] - region.box.lo[i]);
    }
    ChartPoint p(std::move(c));
    if (!region.accept || region.accept(p)) pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace warpgeo

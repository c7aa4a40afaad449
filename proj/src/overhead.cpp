#include "taskalloc/overhead.hpp"

#include <cmath>

namespace taskalloc {

std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

DrawStream::DrawStream(std::uint64_t seed, std::uint64_t stream) : base_(mix64(mix64(seed) ^ stream)) {}

double DrawStream::uniform(std::uint64_t slot) const {
  const std::uint64_t bits = mix64(base_ ^ mix64(slot));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

double resolve_overhead(const TriangularOverhead& tri, const EvaluationMode& mode, double draw) {
  if (!mode.is_sampled() || tri.degenerate()) return tri.likely_pct / 100.0;
  const double lo = tri.min_pct / 100.0;
  const double mode_value = tri.likely_pct / 100.0;
  const double hi = tri.max_pct / 100.0;
  const double width = hi - lo;
  const double split = (mode_value - lo) / width;
  if (draw < split) return lo + std::sqrt(draw * width * (mode_value - lo));
  return hi - std::sqrt((1.0 - draw) * width * (hi - mode_value));
}

}  // namespace taskalloc

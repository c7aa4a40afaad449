#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace taskalloc {

using Id = std::string;

// Expert-elicited effort overhead for one factor level, in percent.
struct TriangularOverhead {
  double min_pct = 0.0;
  double likely_pct = 0.0;
  double max_pct = 0.0;

  bool valid() const { return 0.0 <= min_pct && min_pct <= likely_pct && likely_pct <= max_pct; }
  bool degenerate() const { return min_pct == max_pct; }
  double mean_fraction() const { return (min_pct + likely_pct + max_pct) / 300.0; }

  bool operator==(const TriangularOverhead&) const = default;
};

// The quantified causal model: (factor, level) -> overhead triangle.
struct ImpactModel {
  std::map<std::pair<Id, Id>, TriangularOverhead> overheads;
  double pair_scale = 1.0;

  const TriangularOverhead* find(const Id& factor, const Id& level) const;

  bool operator==(const ImpactModel&) const = default;
};

struct EvaluationMode {
  enum class Kind { deterministic, sampled };
  Kind kind = Kind::deterministic;
  std::uint64_t sample_seed = 0;

  static EvaluationMode deterministic() { return {}; }
  static EvaluationMode sampled(std::uint64_t seed) { return {Kind::sampled, seed}; }
  bool is_sampled() const { return kind == Kind::sampled; }
};

// Counter-based source of uniform draws. Each (seed, stream) pair names an
// independent substream; uniform(slot) is a pure function of (seed, stream,
// slot), so draws never depend on call order or thread schedule.
class DrawStream {
 public:
  DrawStream() = default;
  DrawStream(std::uint64_t seed, std::uint64_t stream);

  // Uniform in [0, 1).
  double uniform(std::uint64_t slot) const;

 private:
  std::uint64_t base_ = 0;
};

std::uint64_t mix64(std::uint64_t x);

// deterministic -> likely/100; sampled -> inverse-CDF triangular draw.
double resolve_overhead(const TriangularOverhead& tri, const EvaluationMode& mode, double draw);

}  // namespace taskalloc

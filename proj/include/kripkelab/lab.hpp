#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kripkelab/class_id.hpp"
#include "kripkelab/combinatorics.hpp"
#include "kripkelab/formula.hpp"
#include "kripkelab/frame.hpp"

namespace kripkelab {

struct Interval {
  double low;
  double high;
};

/// Wilson score interval for successes/trials; trials > 0.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.96);

struct EstimateRecord {
  ClassId class_id;
  ClassScope scope;
  std::string formula;
  std::size_t n;
  std::size_t trials;
  std::uint64_t seed;
  std::size_t valid_count;
  double p_hat;
  double ci_low;
  double ci_high;
};

/// Frame i is drawn from the structured sampler on RngStream::substream(seed, i)
/// and checked for validity. The result does not depend on `threads`.
EstimateRecord estimate_validity(ClassId c, ClassScope s, const Formula& phi, std::size_t n, std::size_t trials,
                                 std::uint64_t seed, std::size_t threads = 1);

struct StatisticName {
  enum class Kind { MaxComponentSize, ClusterCoreSize, TreeHeight, IrreflexiveSingletonCount, OutdegSpreadHolds };
  Kind kind;
  std::size_t r = 0;  // OutdegSpreadHolds only
  friend bool operator==(const StatisticName&, const StatisticName&) = default;
};

/// max_component_size, cluster_core_size, tree_height,
/// irreflexive_singleton_count, outdeg_spread_holds(r).
std::string to_string(const StatisticName& s);
std::optional<StatisticName> parse_statistic(std::string_view text);

using StatisticValue = std::variant<std::size_t, bool>;
double as_number(const StatisticValue& v);

/// cluster_core_size and outdeg_spread_holds need a Euclidean frame;
/// tree_height a connected GL.3 frame (irreflexive) or Grz.3 frame (reflexive).
StatisticValue frame_statistic(const Frame& f, const StatisticName& stat);

struct SweepRow {
  ClassId class_id;
  ClassScope scope;
  StatisticName stat;
  std::size_t n;
  std::size_t trials;
  std::uint64_t seed;
  double mean;
  double variance;  // unbiased sample variance; 0 for a single trial
  double threshold;
  double freq_exceed;  // fraction of trials with value > threshold
};

/// One row per n. Trial i of every n uses RngStream::substream(seed, i).
std::vector<SweepRow> stat_sweep(ClassId c, ClassScope s, const StatisticName& stat, const std::vector<std::size_t>& ns,
                                 std::size_t trials, std::uint64_t seed, double threshold = 0.0,
                                 std::size_t threads = 1);

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};

/// Pearson goodness of fit of the counts against the uniform distribution
/// over their cells.
ChiSquareResult chi_square_uniform(const std::vector<std::size_t>& counts);

/// Draws `draws` frames (draw i on substream(seed, i)) from the structured
/// sampler, or from the rejection oracle, and tests them against the uniform
/// distribution on the brute-force census. n <= 4 (3 with rejection is the
/// practical size). Throws Error if a draw falls outside the census.
ChiSquareResult sampler_uniformity(ClassId c, ClassScope s, std::size_t n, std::size_t draws, std::uint64_t seed,
                                   bool rejection = false, std::size_t threads = 1);

struct ExactRatio {
  Count numerator;
  Count denominator;
  double value() const;
};

/// |census ∩ {pred}| / |census| over the enumerated class members on [n].
ExactRatio exact_frequency(ClassId c, ClassScope s, std::size_t n, const FramePredicate& pred);
/// The exact fraction of class members on [n] that validate phi.
ExactRatio exact_validity_ratio(ClassId c, ClassScope s, const Formula& phi, std::size_t n);

struct StratumReport {
  std::size_t component_size;
  std::size_t samples;
  std::size_t support;  // |F_m ∩ Con Fr c|
  ChiSquareResult chi;
  bool included;  // at least kMinStratumSamples samples
};

struct UniformityReport {
  ClassId class_id;
  std::size_t n;
  std::size_t trials;
  std::uint64_t seed;
  double significance;
  std::vector<StratumReport> strata;  // ascending component size
  bool passed;                        // every included stratum has p >= significance
};

inline constexpr std::size_t kMinStratumSamples = 50;

/// Samples scope=all frames, takes the largest connected component (the one
/// with the smallest label on ties), relabels it monotonically, and tests
/// each size stratum against the uniform distribution on the connected
/// census of that size. n <= 5.
UniformityReport conditional_uniformity_test(ClassId c, std::size_t n, std::size_t trials, std::uint64_t seed,
                                             std::size_t threads = 1, double significance = 1e-3);

// ---- CSV ----------------------------------------------------------------------

std::string estimate_csv_header();
std::string to_csv(const EstimateRecord& r);
std::string sweep_csv_header();
std::string to_csv(const SweepRow& r);
std::string uniformity_csv_header();
/// One line per stratum.
std::string to_csv(const UniformityReport& r);

/// Fixed six-decimal rendering used for every probability and moment.
std::string format_fixed(double x, int decimals = 6);

}  // namespace kripkelab

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "kripkelab/class_id.hpp"
#include "kripkelab/frame.hpp"

namespace kripkelab {

/// Exact non-negative integer.
using Count = boost::multiprecision::cpp_int;
/// Binary float with a 50-decimal-digit mantissa; used for logs and ratios
/// of counts far beyond double range.
using HighPrecision = boost::multiprecision::cpp_bin_float_50;

/// B_0 .. B_upto from the Bell triangle.
std::vector<Count> bell(std::size_t upto);

Count binomial(std::size_t n, std::size_t k);

/// e^-1 * sum_{k < terms} k^n / k!, evaluated in high precision. Terms stop
/// early once they fall below 1e-30 of the running sum.
double dobinski_estimate(std::size_t n, std::size_t terms);

/// G_{n,r}: partitions of [n] with every block of size at most r.
Count bounded_partitions(std::size_t n, std::size_t r);
/// G_{0,r} .. G_{upto,r}.
std::vector<Count> bounded_partitions_sequence(std::size_t upto, std::size_t r);

/// |F_n ∩ Con Fr c| in closed form.
Count count_connected(ClassId c, std::size_t n);

/// Counts a class closed under disjoint sums from its connected counts:
/// a_0 = 1, a_m = sum_{j=1..m} C(m-1, j-1) c_j a_{m-j}. Input c_1..c_n,
/// output a_1..a_n.
std::vector<Count> exp_formula(std::span<const Count> connected);

/// |F_n ∩ Fr c|; closed forms for K5B (B_{n+1}) and S5 (B_n), the
/// exponential formula otherwise.
Count count_all(ClassId c, std::size_t n);

/// count_connected / count_all by scope.
Count count_class(ClassId c, ClassScope s, std::size_t n);

using FramePredicate = std::function<bool(const Frame&)>;
using FrameConsumer = std::function<void(const Frame&)>;

inline constexpr std::size_t kMaxCensusStates = 5;

/// Counts frames on [n] satisfying the predicate by visiting all 2^(n^2)
/// relations. n <= 5, otherwise BudgetExceeded. The predicate must be safe
/// to call concurrently when threads > 1.
Count brute_census(std::size_t n, const FramePredicate& predicate, std::size_t threads = 1);

/// Sequential census that also hands every matching frame, in increasing
/// adjacency-bit order, to the consumer.
Count brute_census(std::size_t n, const FramePredicate& predicate, const FrameConsumer& consumer);

/// All frames of the class on [n] (n <= 5), in increasing adjacency-bit order.
std::vector<Frame> census_frames(ClassId c, ClassScope s, std::size_t n);

struct AsymptoticClaim {
  enum class Kind {
    BellLog,          // ln(B_n)/n - (ln n - ln ln n - 1), rows from n = 2
    BellRatio,        // B_n / B_{n+1}
    GnrVsBell,        // ln(G_{n,r} 2^{kn} / B_n)
    CentralBinomial,  // C(n, floor(n/2)) sqrt(pi n / 2) / 2^n
  };
  Kind kind;
  std::size_t r = 0;
  std::size_t k = 0;
};

struct AsymptoticRow {
  std::size_t n;
  HighPrecision value;
};

struct AsymptoticReport {
  std::string claim;
  std::vector<AsymptoticRow> rows;  // strictly increasing n
};

inline constexpr std::size_t kMaxAsymptoticN = 400;

/// Trend data for an asymptotic statement, one row per n up to `upto`
/// (<= 400, otherwise BudgetExceeded), computed from exact integers.
AsymptoticReport asymptotic_report(const AsymptoticClaim& claim, std::size_t upto);

}  // namespace kripkelab

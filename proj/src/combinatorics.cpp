#include "kripkelab/combinatorics.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/number.hpp>

#include "kripkelab/classes.hpp"
#include "kripkelab/error.hpp"
#include "kripkelab/parallel.hpp"

namespace kripkelab {

namespace {

HighPrecision to_float(const Count& c) { return HighPrecision(c); }

HighPrecision ln(const Count& c) { return boost::multiprecision::log(to_float(c)); }

Count pow2(std::size_t k) {
  Count one = 1;
  return one << k;
}

}  // namespace

std::vector<Count> bell(std::size_t upto) {
  std::vector<Count> out;
  out.reserve(upto + 1);
  out.push_back(1);
  // Row i of the triangle starts with the last entry of row i-1; its first
  // entry is B_i.
  std::vector<Count> row{1};
  for (std::size_t i = 1; i <= upto; ++i) {
    std::vector<Count> next;
    next.reserve(row.size() + 1);
    next.push_back(row.back());
    for (const Count& x : row) next.push_back(next.back() + x);
    out.push_back(next.front());
    row = std::move(next);
  }
  return out;
}

Count binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  Count c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;
  }
  return c;
}

double dobinski_estimate(std::size_t n, std::size_t terms) {
  if (terms == 0) throw InvalidInput("dobinski_estimate: terms must be at least 1");
  // term_k = k^n / k!
  HighPrecision sum = (n == 0) ? HighPrecision(1) : HighPrecision(0);
  HighPrecision term = 1;  // term_1
  const HighPrecision cutoff("1e-30");
  for (std::size_t k = 1; k < terms; ++k) {
    if (k > 1) {
      const HighPrecision ratio = HighPrecision(k) / HighPrecision(k - 1);
      term *= boost::multiprecision::pow(ratio, static_cast<int>(n));
      term /= HighPrecision(k);
    }
    sum += term;
    if (k > n && term < cutoff * sum) break;
  }
  return static_cast<double>(sum / boost::multiprecision::exp(HighPrecision(1)));
}

std::vector<Count> bounded_partitions_sequence(std::size_t upto, std::size_t r) {
  if (r == 0) throw InvalidInput("bounded_partitions: r must be at least 1");
  std::vector<Count> g(upto + 1);
  g[0] = 1;
  for (std::size_t n = 1; n <= upto; ++n) {
    // Pascal row C(n-1, .) built incrementally.
    Count c = 1;
    Count total = 0;
    for (std::size_t j = 1; j <= std::min(r, n); ++j) {
      if (j > 1) {
        c *= n - j + 1;
        c /= j - 1;
      }
      total += c * g[n - j];
    }
    g[n] = std::move(total);
  }
  return g;
}

Count bounded_partitions(std::size_t n, std::size_t r) { return bounded_partitions_sequence(n, r)[n]; }

Count count_connected(ClassId c, std::size_t n) {
  if (n == 0) throw InvalidInput("count_connected: n must be at least 1");
  switch (c) {
    case ClassId::KD5: {
      Count total = 0;
      for (std::size_t m = 1; m <= n; ++m)
        total += binomial(n, m) * boost::multiprecision::pow(pow2(m) - 1, static_cast<unsigned>(n - m));
      return total;
    }
    case ClassId::KD45:
      return pow2(n) - 1;
    case ClassId::S5:
      return 1;
    case ClassId::K5B:
      return n == 1 ? 2 : 1;
    case ClassId::GL3:
    case ClassId::GRZ3:
      return boost::multiprecision::pow(Count(n), static_cast<unsigned>(n - 1));
  }
  throw InvalidInput("count_connected: unknown class");
}

std::vector<Count> exp_formula(std::span<const Count> connected) {
  const std::size_t n = connected.size();
  std::vector<Count> a(n + 1);
  a[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    Count c = 1;  // C(m-1, j-1)
    Count total = 0;
    for (std::size_t j = 1; j <= m; ++j) {
      if (j > 1) {
        c *= m - j + 1;
        c /= j - 1;
      }
      total += c * connected[j - 1] * a[m - j];
    }
    a[m] = std::move(total);
  }
  return {a.begin() + 1, a.end()};
}

Count count_all(ClassId c, std::size_t n) {
  if (n == 0) throw InvalidInput("count_all: n must be at least 1");
  if (c == ClassId::K5B) return bell(n + 1)[n + 1];
  if (c == ClassId::S5) return bell(n)[n];
  std::vector<Count> conn;
  conn.reserve(n);
  for (std::size_t j = 1; j <= n; ++j) conn.push_back(count_connected(c, j));
  return exp_formula(conn).back();
}

Count count_class(ClassId c, ClassScope s, std::size_t n) {
  return s == ClassScope::Connected ? count_connected(c, n) : count_all(c, n);
}

namespace {

void check_census_size(std::size_t n) {
  if (n == 0) throw InvalidInput("brute_census: n must be at least 1");
  if (n > kMaxCensusStates)
    throw BudgetExceeded("brute_census: n = " + std::to_string(n) + " exceeds the enumeration limit of " +
                         std::to_string(kMaxCensusStates));
}

}  // namespace

Count brute_census(std::size_t n, const FramePredicate& predicate, std::size_t threads) {
  check_census_size(n);
  const std::uint64_t total = std::uint64_t{1} << (n * n);
  constexpr std::uint64_t kChunk = 1 << 12;
  const std::size_t chunks = static_cast<std::size_t>((total + kChunk - 1) / kChunk);
  std::vector<std::uint64_t> counts(chunks, 0);
  parallel_for(
      chunks, threads,
      [&](std::size_t i) {
        const std::uint64_t begin = i * kChunk;
        const std::uint64_t end = std::min(total, begin + kChunk);
        std::uint64_t local = 0;
        for (std::uint64_t bits = begin; bits < end; ++bits)
          if (predicate(Frame::from_bits(n, bits))) ++local;
        counts[i] = local;
      },
      1);
  Count sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

Count brute_census(std::size_t n, const FramePredicate& predicate, const FrameConsumer& consumer) {
  check_census_size(n);
  const std::uint64_t total = std::uint64_t{1} << (n * n);
  Count sum = 0;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    Frame f = Frame::from_bits(n, bits);
    if (predicate(f)) {
      ++sum;
      if (consumer) consumer(f);
    }
  }
  return sum;
}

std::vector<Frame> census_frames(ClassId c, ClassScope s, std::size_t n) {
  std::vector<Frame> out;
  brute_census(
      n, [&](const Frame& f) { return in_class(c, s, f); }, [&](const Frame& f) { out.push_back(f); });
  return out;
}

AsymptoticReport asymptotic_report(const AsymptoticClaim& claim, std::size_t upto) {
  if (upto > kMaxAsymptoticN)
    throw BudgetExceeded("asymptotic_report: n = " + std::to_string(upto) + " exceeds the exact-computation limit of " +
                         std::to_string(kMaxAsymptoticN));
  AsymptoticReport report;
  using K = AsymptoticClaim::Kind;
  switch (claim.kind) {
    case K::BellLog: {
      report.claim = "bell_log";
      const auto b = bell(upto);
      for (std::size_t n = 2; n <= upto; ++n) {
        const HighPrecision x(n);
        const HighPrecision lx = boost::multiprecision::log(x);
        report.rows.push_back({n, ln(b[n]) / x - (lx - boost::multiprecision::log(lx) - 1)});
      }
      break;
    }
    case K::BellRatio: {
      report.claim = "bell_ratio";
      const auto b = bell(upto + 1);
      for (std::size_t n = 1; n <= upto; ++n) report.rows.push_back({n, to_float(b[n]) / to_float(b[n + 1])});
      break;
    }
    case K::GnrVsBell: {
      if (claim.r == 0) throw InvalidInput("gnr_vs_bell: r must be at least 1");
      report.claim = "gnr_vs_bell(" + std::to_string(claim.r) + "," + std::to_string(claim.k) + ")";
      const auto b = bell(upto);
      const auto g = bounded_partitions_sequence(upto, claim.r);
      const HighPrecision ln2 = boost::multiprecision::log(HighPrecision(2));
      for (std::size_t n = 1; n <= upto; ++n)
        report.rows.push_back({n, ln(g[n]) + HighPrecision(claim.k * n) * ln2 - ln(b[n])});
      break;
    }
    case K::CentralBinomial: {
      report.claim = "central_binomial";
      const HighPrecision pi = boost::math::constants::pi<HighPrecision>();
      for (std::size_t n = 1; n <= upto; ++n) {
        const HighPrecision num = to_float(binomial(n, n / 2)) * boost::multiprecision::sqrt(pi * n / 2);
        report.rows.push_back({n, num / to_float(pow2(n))});
      }
      break;
    }
  }
  return report;
}

}  // namespace kripkelab

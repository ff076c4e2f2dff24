#include "kripkelab/lab.hpp"

#include <cmath>
#include <cstdio>
#include <unordered_map>

#include <boost/math/special_functions/gamma.hpp>

#include "kripkelab/checker.hpp"
#include "kripkelab/classes.hpp"
#include "kripkelab/error.hpp"
#include "kripkelab/parallel.hpp"
#include "kripkelab/samplers.hpp"

namespace kripkelab {

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) throw InvalidInput("wilson_interval: trials must be positive");
  if (successes > trials) throw InvalidInput("wilson_interval: successes exceed trials");
  const double n = static_cast<double>(trials);
  const double p = successes / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  return {std::clamp(std::min(center - half, p), 0.0, 1.0), std::clamp(std::max(center + half, p), 0.0, 1.0)};
}

EstimateRecord estimate_validity(ClassId c, ClassScope s, const Formula& phi, std::size_t n, std::size_t trials,
                                 std::uint64_t seed, std::size_t threads) {
  if (trials == 0) throw InvalidInput("estimate_validity: trials must be positive");
  const FrameSampler sampler(c, n);
  std::vector<std::uint8_t> valid(trials, 0);
  parallel_for(trials, threads, [&](std::size_t i) {
    RngStream rng = RngStream::substream(seed, i);
    valid[i] = is_valid(sampler.sample(s, rng), phi).valid;
  });
  std::size_t count = 0;
  for (auto v : valid) count += v;
  const Interval ci = wilson_interval(count, trials);
  return {c, s, render(phi), n, trials, seed, count, static_cast<double>(count) / trials, ci.low, ci.high};
}

// ---- statistics ---------------------------------------------------------------

namespace {

constexpr std::pair<StatisticName::Kind, std::string_view> kStatNames[] = {
    {StatisticName::Kind::MaxComponentSize, "max_component_size"},
    {StatisticName::Kind::ClusterCoreSize, "cluster_core_size"},
    {StatisticName::Kind::TreeHeight, "tree_height"},
    {StatisticName::Kind::IrreflexiveSingletonCount, "irreflexive_singleton_count"},
    {StatisticName::Kind::OutdegSpreadHolds, "outdeg_spread_holds"},
};

}  // namespace

std::string to_string(const StatisticName& s) {
  for (auto [kind, name] : kStatNames) {
    if (kind != s.kind) continue;
    if (kind == StatisticName::Kind::OutdegSpreadHolds) return std::string(name) + "(" + std::to_string(s.r) + ")";
    return std::string(name);
  }
  return "?";
}

std::optional<StatisticName> parse_statistic(std::string_view text) {
  for (auto [kind, name] : kStatNames) {
    if (kind != StatisticName::Kind::OutdegSpreadHolds) {
      if (text == name) return StatisticName{kind, 0};
      continue;
    }
    if (!text.starts_with(name)) continue;
    std::string_view rest = text.substr(name.size());
    if (rest.size() < 3 || rest.front() != '(' || rest.back() != ')') return std::nullopt;
    rest = rest.substr(1, rest.size() - 2);
    std::size_t r = 0;
    for (char ch : rest) {
      if (ch < '0' || ch > '9') return std::nullopt;
      r = r * 10 + static_cast<std::size_t>(ch - '0');
      if (r > 1'000'000) return std::nullopt;
    }
    return StatisticName{kind, r};
  }
  return std::nullopt;
}

double as_number(const StatisticValue& v) {
  if (const auto* b = std::get_if<bool>(&v)) return *b ? 1.0 : 0.0;
  return static_cast<double>(std::get<std::size_t>(v));
}

StatisticValue frame_statistic(const Frame& f, const StatisticName& stat) {
  using K = StatisticName::Kind;
  switch (stat.kind) {
    case K::MaxComponentSize: {
      std::size_t best = 0;
      const Partition components = connected_components(f);
      for (const auto& b : components.blocks()) best = std::max(best, b.size());
      return best;
    }
    case K::ClusterCoreSize:
      if (!check_property(f, PropertyName::Euclidean))
        throw InvalidInput("cluster_core_size: frame is not euclidean");
      return cluster_core(f).count();
    case K::TreeHeight:
      return reduction_height(f, check_property(f, PropertyName::Reflexive) ? ClassId::GRZ3 : ClassId::GL3);
    case K::IrreflexiveSingletonCount: {
      std::size_t count = 0;
      const Partition components = connected_components(f);
      for (const auto& b : components.blocks())
        if (b.size() == 1 && !f.has_edge(b[0], b[0])) ++count;
      return count;
    }
    case K::OutdegSpreadHolds: {
      if (!check_property(f, PropertyName::Euclidean))
        throw InvalidInput("outdeg_spread_holds: frame is not euclidean");
      const StateSet u = cluster_core(f);
      const std::size_t core = u.count();
      for (State a = 0; a < f.size(); ++a) {
        if (u.test(a)) continue;
        const std::size_t d = f.out(a).count();
        if (stat.r < d && d + stat.r < core) return true;
      }
      return false;
    }
  }
  throw InvalidInput("frame_statistic: unknown statistic");
}

std::vector<SweepRow> stat_sweep(ClassId c, ClassScope s, const StatisticName& stat, const std::vector<std::size_t>& ns,
                                 std::size_t trials, std::uint64_t seed, double threshold, std::size_t threads) {
  if (trials == 0) throw InvalidInput("stat_sweep: trials must be positive");
  std::vector<SweepRow> rows;
  for (std::size_t n : ns) {
    const FrameSampler sampler(c, n);
    std::vector<double> values(trials);
    parallel_for(trials, threads, [&](std::size_t i) {
      RngStream rng = RngStream::substream(seed, i);
      values[i] = as_number(frame_statistic(sampler.sample(s, rng), stat));
    });
    double sum = 0;
    std::size_t exceed = 0;
    for (double v : values) {
      sum += v;
      if (v > threshold) ++exceed;
    }
    const double mean = sum / trials;
    double ss = 0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double variance = trials > 1 ? ss / (trials - 1) : 0.0;
    rows.push_back({c, s, stat, n, trials, seed, mean, variance, threshold, static_cast<double>(exceed) / trials});
  }
  return rows;
}

// ---- uniformity -----------------------------------------------------------------

ChiSquareResult chi_square_uniform(const std::vector<std::size_t>& counts) {
  ChiSquareResult r;
  if (counts.size() < 2) return r;
  double total = 0;
  for (auto c : counts) total += static_cast<double>(c);
  if (total == 0) return r;
  const double expected = total / counts.size();
  for (auto c : counts) {
    const double d = c - expected;
    r.statistic += d * d / expected;
  }
  r.dof = counts.size() - 1;
  r.p_value = boost::math::gamma_q(r.dof / 2.0, r.statistic / 2.0);
  return r;
}

namespace {

std::unordered_map<std::uint64_t, std::size_t> census_index(ClassId c, ClassScope s, std::size_t n) {
  std::unordered_map<std::uint64_t, std::size_t> index;
  for (const Frame& f : census_frames(c, s, n)) index.emplace(f.bits(), index.size());
  return index;
}

}  // namespace

ChiSquareResult sampler_uniformity(ClassId c, ClassScope s, std::size_t n, std::size_t draws, std::uint64_t seed,
                                   bool rejection, std::size_t threads) {
  if (n > kMaxRejectionStates) throw BudgetExceeded("sampler_uniformity: n exceeds the census limit of 4");
  const auto index = census_index(c, s, n);
  const FrameSampler sampler(c, n);
  std::vector<std::uint64_t> drawn(draws);
  parallel_for(draws, threads, [&](std::size_t i) {
    RngStream rng = RngStream::substream(seed, i);
    drawn[i] = (rejection ? sample_rejection(c, s, n, rng) : sampler.sample(s, rng)).bits();
  });
  std::vector<std::size_t> counts(index.size(), 0);
  for (auto bits : drawn) {
    auto it = index.find(bits);
    if (it == index.end()) throw Error("sampler_uniformity: sampled frame is not a class member");
    ++counts[it->second];
  }
  return chi_square_uniform(counts);
}

double ExactRatio::value() const {
  if (denominator == 0) return 0.0;
  return static_cast<double>(HighPrecision(numerator) / HighPrecision(denominator));
}

ExactRatio exact_frequency(ClassId c, ClassScope s, std::size_t n, const FramePredicate& pred) {
  ExactRatio r{0, 0};
  for (const Frame& f : census_frames(c, s, n)) {
    ++r.denominator;
    if (pred(f)) ++r.numerator;
  }
  return r;
}

ExactRatio exact_validity_ratio(ClassId c, ClassScope s, const Formula& phi, std::size_t n) {
  return exact_frequency(c, s, n, [&](const Frame& f) { return is_valid(f, phi).valid; });
}

UniformityReport conditional_uniformity_test(ClassId c, std::size_t n, std::size_t trials, std::uint64_t seed,
                                             std::size_t threads, double significance) {
  if (n > kMaxCensusStates) throw BudgetExceeded("conditional_uniformity_test: n exceeds the census limit of 5");
  const FrameSampler sampler(c, n);
  // (component size, bits of the relabeled component)
  std::vector<std::pair<std::size_t, std::uint64_t>> drawn(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    RngStream rng = RngStream::substream(seed, i);
    const Frame f = sampler.all(rng);
    const Partition components = connected_components(f);
    const auto& blocks = components.blocks();
    // Blocks are ordered by minimum, so the first largest one holds the
    // smallest label among the largest.
    const std::vector<State>* best = &blocks.front();
    for (const auto& b : blocks)
      if (b.size() > best->size()) best = &b;
    StateSet u(n);
    for (State x : *best) u.set(x);
    drawn[i] = {best->size(), monotone_relabel(u, f).bits()};
  });

  UniformityReport report{c, n, trials, seed, significance, {}, true};
  for (std::size_t m = 1; m <= n; ++m) {
    const auto index = census_index(c, ClassScope::Connected, m);
    std::vector<std::size_t> counts(index.size(), 0);
    std::size_t samples = 0;
    for (auto [size, bits] : drawn) {
      if (size != m) continue;
      auto it = index.find(bits);
      if (it == index.end()) throw Error("conditional_uniformity_test: component is not a connected class member");
      ++counts[it->second];
      ++samples;
    }
    if (samples == 0) continue;
    StratumReport stratum{m, samples, index.size(), chi_square_uniform(counts), samples >= kMinStratumSamples};
    if (stratum.included && stratum.chi.p_value < significance) report.passed = false;
    report.strata.push_back(stratum);
  }
  return report;
}

// ---- CSV ---------------------------------------------------------------------------

std::string format_fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  std::string s = buf;
  if (s.starts_with("-") && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string estimate_csv_header() { return "class,scope,formula,n,trials,seed,valid_count,p_hat,ci_low,ci_high"; }

std::string to_csv(const EstimateRecord& r) {
  return std::string(to_string(r.class_id)) + "," + std::string(to_string(r.scope)) + "," + csv_field(r.formula) +
         "," + std::to_string(r.n) + "," + std::to_string(r.trials) + "," + std::to_string(r.seed) + "," +
         std::to_string(r.valid_count) + "," + format_fixed(r.p_hat) + "," + format_fixed(r.ci_low) + "," +
         format_fixed(r.ci_high);
}

std::string sweep_csv_header() { return "class,scope,stat,n,trials,seed,mean,variance,threshold,freq_exceed"; }

std::string to_csv(const SweepRow& r) {
  return std::string(to_string(r.class_id)) + "," + std::string(to_string(r.scope)) + "," +
         csv_field(to_string(r.stat)) + "," + std::to_string(r.n) + "," + std::to_string(r.trials) + "," +
         std::to_string(r.seed) + "," + format_fixed(r.mean) + "," + format_fixed(r.variance) + "," +
         format_fixed(r.threshold) + "," + format_fixed(r.freq_exceed);
}

std::string uniformity_csv_header() { return "class,n,trials,seed,m,samples,support,chi2,dof,p_value,included"; }

std::string to_csv(const UniformityReport& r) {
  std::string out;
  for (const auto& s : r.strata) {
    out += std::string(to_string(r.class_id)) + "," + std::to_string(r.n) + "," + std::to_string(r.trials) + "," +
           std::to_string(r.seed) + "," + std::to_string(s.component_size) + "," + std::to_string(s.samples) + "," +
           std::to_string(s.support) + "," + format_fixed(s.chi.statistic) + "," + std::to_string(s.chi.dof) + "," +
           format_fixed(s.chi.p_value) + "," + (s.included ? "true" : "false") + "\n";
  }
  return out;
}

}  // namespace kripkelab

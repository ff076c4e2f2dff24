#include "doctest.h"
#include "kripkelab/checker.hpp"
#include "kripkelab/classes.hpp"
#include "kripkelab/error.hpp"
#include "kripkelab/lab.hpp"
#include "kripkelab/samplers.hpp"

using namespace kripkelab;

TEST_CASE("Wilson interval") {
  const Interval all = wilson_interval(100, 100);
  CHECK(all.high == 1.0);
  CHECK(all.low < 1.0);
  CHECK(all.low > 0.95);
  const Interval half = wilson_interval(50, 100);
  CHECK(half.low == doctest::Approx(0.4038).epsilon(1e-3));
  CHECK(half.high == doctest::Approx(0.5962).epsilon(1e-3));
  for (std::size_t n : {1, 7, 100})
    for (std::size_t k = 0; k <= n; ++k) {
      const Interval ci = wilson_interval(k, n);
      const double p = double(k) / n;
      CHECK(ci.low <= p);
      CHECK(p <= ci.high);
      CHECK(ci.low >= 0.0);
      CHECK(ci.high <= 1.0);
    }
  CHECK_THROWS_AS(wilson_interval(0, 0), InvalidInput);
}

TEST_CASE("estimate examples") {
  const auto t = estimate_validity(ClassId::S5, ClassScope::All, parse_formula("box p0 -> p0"), 5, 1000, 42);
  CHECK(t.valid_count == 1000);
  CHECK(t.p_hat == 1.0);
  CHECK(t.formula == "box p0 -> p0");
  const auto gl = estimate_validity(ClassId::GL3, ClassScope::Connected,
                                    parse_formula("box (box p0 -> p0) -> box p0"), 8, 1000, 43);
  CHECK(gl.p_hat == 1.0);
}

TEST_CASE("estimates do not depend on the thread count") {
  const Formula phi = parse_formula("box p0 -> p0");
  const auto a = estimate_validity(ClassId::KD5, ClassScope::All, phi, 6, 500, 9, 1);
  const auto b = estimate_validity(ClassId::KD5, ClassScope::All, phi, 6, 500, 9, 4);
  CHECK(to_csv(a) == to_csv(b));
  CHECK(a.valid_count < 500);
  CHECK(a.ci_low <= a.p_hat);
  CHECK(a.p_hat <= a.ci_high);
}

TEST_CASE("exact census ratio for T on connected KD5 frames") {
  // The T axiom holds exactly when every state is reflexive, i.e. R is the cluster on U_F = [n].
  const Formula t = parse_formula("box p0 -> p0");
  for (std::size_t n = 1; n <= 4; ++n) {
    const ExactRatio r = exact_validity_ratio(ClassId::KD5, ClassScope::Connected, t, n);
    CHECK(r.numerator == 1);
    CHECK(r.denominator == count_connected(ClassId::KD5, n));
  }
}

TEST_CASE("sampled estimates match the exhaustive ratio at 3 states") {
  // The exhaustive census value equals the exact ratio by construction; the
  // sampled frequency must be consistent with it.
  const std::vector<std::string> formulas = {"box p0 -> p0", "dia p0 -> box dia p0", "p0 -> box dia p0",
                                             "box p0 -> box box p0"};
  for (ClassId c : kAllClasses) {
    for (const auto& text : formulas) {
      const Formula phi = parse_formula(text);
      const ExactRatio exact = exact_validity_ratio(c, ClassScope::All, phi, 3);
      std::size_t hits = 0;
      for (const Frame& f : census_frames(c, ClassScope::All, 3)) hits += is_valid(f, phi).valid;
      CHECK(Count(hits) == exact.numerator);
      const auto est = estimate_validity(c, ClassScope::All, phi, 3, 4000, 5);
      const double p = exact.value();
      const double sigma = std::sqrt(std::max(p * (1 - p), 1e-12) / 4000);
      CHECK_MESSAGE(std::abs(est.p_hat - p) <= 4.5 * sigma + 1e-12, to_string(c), " ", text);
    }
  }
}

TEST_CASE("statistic names") {
  CHECK(parse_statistic("tree_height") == StatisticName{StatisticName::Kind::TreeHeight, 0});
  CHECK(parse_statistic("outdeg_spread_holds(3)") == StatisticName{StatisticName::Kind::OutdegSpreadHolds, 3});
  CHECK_FALSE(parse_statistic("outdeg_spread_holds").has_value());
  CHECK_FALSE(parse_statistic("outdeg_spread_holds(x)").has_value());
  CHECK_FALSE(parse_statistic("height").has_value());
  CHECK(to_string(StatisticName{StatisticName::Kind::OutdegSpreadHolds, 12}) == "outdeg_spread_holds(12)");
}

TEST_CASE("frame statistics") {
  using K = StatisticName::Kind;
  CHECK(std::get<std::size_t>(frame_statistic(Frame::cluster(5), {K::MaxComponentSize})) == 5);
  CHECK(std::get<std::size_t>(frame_statistic(Frame(2, {{0, 0}, {1, 0}}), {K::ClusterCoreSize})) == 1);
  CHECK(std::get<std::size_t>(frame_statistic(Frame(3), {K::IrreflexiveSingletonCount})) == 3);
  CHECK(std::get<std::size_t>(frame_statistic(Frame(3, {{0, 0}}), {K::IrreflexiveSingletonCount})) == 2);
  CHECK(std::get<std::size_t>(frame_statistic(Frame(3, {{1, 0}, {2, 1}, {2, 0}}), {K::TreeHeight})) == 2);
  CHECK_THROWS_AS(frame_statistic(Frame(2, {{0, 1}, {1, 0}}), {K::ClusterCoreSize}), InvalidInput);
  CHECK_THROWS_AS(frame_statistic(Frame(2), {K::TreeHeight}), InvalidInput);

  // U = {0..5} cluster, 6 sees {0,1,2}: spread holds for r = 2 (2 < 3 < 4), not r = 3.
  std::vector<Edge> e;
  for (State a = 0; a < 6; ++a)
    for (State b = 0; b < 6; ++b) e.emplace_back(a, b);
  for (State b : {0, 1, 2}) e.emplace_back(6, b);
  const Frame f(7, e);
  CHECK(std::get<bool>(frame_statistic(f, {K::OutdegSpreadHolds, 2})));
  CHECK_FALSE(std::get<bool>(frame_statistic(f, {K::OutdegSpreadHolds, 3})));
}

TEST_CASE("K5B irreflexive singleton law on the exhaustive census") {
  const auto b = bell(6);
  for (std::size_t n = 1; n <= 4; ++n) {
    const ExactRatio r = exact_frequency(ClassId::K5B, ClassScope::All, n, [](const Frame& f) {
      return std::get<std::size_t>(frame_statistic(f, {StatisticName::Kind::IrreflexiveSingletonCount})) == 0;
    });
    CHECK(r.numerator == b[n]);
    CHECK(r.denominator == b[n + 1]);
  }
}

TEST_CASE("KD45 small cluster core frequency") {
  const auto rows = stat_sweep(ClassId::KD45, ClassScope::Connected, {StatisticName::Kind::ClusterCoreSize}, {10},
                               10000, 3, 2.0);
  REQUIRE(rows.size() == 1);
  const double p_small = 55.0 / 1023.0;
  const double sigma = std::sqrt(p_small * (1 - p_small) / 10000);
  CHECK(std::abs((1 - rows[0].freq_exceed) - p_small) < 4 * sigma);
  // Binomial(10, 1/2) conditioned on >= 1 has mean 5 * 1024 / 1023.
  CHECK(rows[0].mean == doctest::Approx(5.0 * 1024 / 1023).epsilon(0.02));
}

TEST_CASE("stat sweep determinism and moments") {
  const StatisticName s{StatisticName::Kind::MaxComponentSize};
  const auto a = stat_sweep(ClassId::KD5, ClassScope::All, s, {4, 6, 8, 10}, 4000, 77, 3, 1);
  const auto b = stat_sweep(ClassId::KD5, ClassScope::All, s, {4, 6, 8, 10}, 4000, 77, 3, 3);
  REQUIRE(a.size() == 4);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(to_csv(a[i]) == to_csv(b[i]));
  for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i].freq_exceed >= a[i - 1].freq_exceed);
  const auto one = stat_sweep(ClassId::S5, ClassScope::Connected, s, {3}, 1, 1);
  CHECK(one[0].variance == 0.0);
}

TEST_CASE("chi-square") {
  CHECK(chi_square_uniform({10, 10, 10}).statistic == 0.0);
  CHECK(chi_square_uniform({10, 10, 10}).p_value == doctest::Approx(1.0));
  CHECK(chi_square_uniform({5}).dof == 0);
  const auto r = chi_square_uniform({30, 10});  // statistic 10, 1 dof
  CHECK(r.statistic == doctest::Approx(10.0));
  CHECK(r.p_value == doctest::Approx(0.001565).epsilon(1e-3));
}

TEST_CASE("conditional uniformity") {
  const auto k5b = conditional_uniformity_test(ClassId::K5B, 4, 20000, 11);
  CHECK(k5b.passed);
  for (const auto& s : k5b.strata) {
    if (s.support == 1) CHECK(s.chi.p_value == 1.0);
  }
  const auto kd5 = conditional_uniformity_test(ClassId::KD5, 4, 20000, 12);
  CHECK(kd5.passed);
  CHECK(to_csv(kd5) == to_csv(conditional_uniformity_test(ClassId::KD5, 4, 20000, 12, 3)));
  CHECK_THROWS_AS(conditional_uniformity_test(ClassId::KD5, 6, 10, 1), BudgetExceeded);
}

TEST_CASE("csv formatting") {
  CHECK(format_fixed(0.5) == "0.500000");
  CHECK(format_fixed(-0.0000001) == "0.000000");
  CHECK(estimate_csv_header() == "class,scope,formula,n,trials,seed,valid_count,p_hat,ci_low,ci_high");
  CHECK(sweep_csv_header() == "class,scope,stat,n,trials,seed,mean,variance,threshold,freq_exceed");
  const EstimateRecord r{ClassId::GL3, ClassScope::Connected, "p0", 3, 10, 7, 10, 1.0, 0.72, 1.0};
  CHECK(to_csv(r) == "gl3,connected,p0,3,10,7,10,1.000000,0.720000,1.000000");
}

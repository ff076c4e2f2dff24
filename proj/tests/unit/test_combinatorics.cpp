#include <cmath>
#include <functional>

#include "doctest.h"
#include "kripkelab/classes.hpp"
#include "kripkelab/combinatorics.hpp"
#include "kripkelab/error.hpp"

using namespace kripkelab;

namespace {

// Partitions of [n] as restricted growth strings; calls fn with block sizes.
void for_each_partition(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> label(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t blocks) {
    if (i == n) {
      std::vector<std::size_t> sizes(blocks, 0);
      for (auto l : label) ++sizes[l];
      fn(sizes);
      return;
    }
    for (std::size_t l = 0; l <= blocks; ++l) {
      label[i] = l;
      rec(i + 1, std::max(blocks, l + 1));
    }
  };
  if (n == 0) {
    fn({});
    return;
  }
  label[0] = 0;
  rec(1, 1);
}

std::size_t brute_partitions(std::size_t n, std::size_t max_block) {
  std::size_t count = 0;
  for_each_partition(n, [&](const std::vector<std::size_t>& sizes) {
    if (std::all_of(sizes.begin(), sizes.end(), [&](std::size_t s) { return s <= max_block; })) ++count;
  });
  return count;
}

}  // namespace

TEST_CASE("Bell numbers") {
  const auto b = bell(20);
  for (std::size_t n = 0; n <= 7; ++n) CHECK(b[n] == brute_partitions(n, n == 0 ? 1 : n));
  CHECK(b[1] == 1);
  CHECK(b[10] == 115975);
  for (std::size_t n = 0; n < 20; ++n) {
    Count sum = 0;
    for (std::size_t k = 0; k <= n; ++k) sum += binomial(n, k) * b[k];
    CHECK(sum == b[n + 1]);
  }
  CHECK(bell(0) == std::vector<Count>{1});
}

TEST_CASE("binomial") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(5, 7) == 0);
  CHECK(binomial(0, 0) == 1);
  for (std::size_t n = 1; n <= 30; ++n)
    for (std::size_t k = 1; k < n; ++k) CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST_CASE("Dobinski partial sums") {
  const auto b = bell(20);
  auto rel = [](double est, const Count& exact) {
    const double e = static_cast<double>(exact);
    return std::abs(est - e) / e;
  };
  CHECK(rel(dobinski_estimate(5, 50), b[5]) < 1e-9);
  CHECK(rel(dobinski_estimate(0, 50), b[0]) < 1e-9);
  CHECK(rel(dobinski_estimate(10, 100), b[10]) < 1e-9);
  for (std::size_t n = 0; n <= 20; ++n) {
    CHECK(rel(dobinski_estimate(n, 200), b[n]) < 1e-9);
    double prev = -1;
    for (std::size_t t : {1, 2, 5, 10, 20, 40, 80, 200}) {
      const double e = dobinski_estimate(n, t);
      CHECK(e >= prev);
      prev = e;
    }
  }
  CHECK_THROWS_AS(dobinski_estimate(3, 0), InvalidInput);
}

TEST_CASE("bounded partitions") {
  CHECK(bounded_partitions(4, 2) == 10);
  CHECK(brute_partitions(4, 2) == 10);
  const auto b = bell(12);
  for (std::size_t n = 1; n <= 9; ++n) {
    CHECK(bounded_partitions(n, 1) == 1);
    CHECK(bounded_partitions(n, n) == b[n]);
    for (std::size_t r = 1; r <= n + 1; ++r) {
      const Count g = bounded_partitions(n, r);
      CHECK(g == brute_partitions(n, r));
      CHECK(g <= b[n]);
      CHECK((g == b[n]) == (r >= n));
    }
  }
  CHECK_THROWS_AS(bounded_partitions(3, 0), InvalidInput);
}

TEST_CASE("connected counts") {
  CHECK(count_connected(ClassId::KD5, 2) == 3);
  CHECK(count_connected(ClassId::KD45, 3) == 7);
  CHECK(count_connected(ClassId::GL3, 3) == 9);
  CHECK(count_connected(ClassId::K5B, 1) == 2);
  CHECK(count_connected(ClassId::K5B, 5) == 1);
  CHECK_THROWS_AS(count_connected(ClassId::S5, 0), InvalidInput);
}

TEST_CASE("exponential formula") {
  const std::vector<Count> ones(8, 1);
  const auto a = exp_formula(ones);
  const auto b = bell(9);
  for (std::size_t n = 1; n <= 8; ++n) CHECK(a[n - 1] == b[n]);

  std::vector<Count> k5b{2, 1, 1, 1, 1, 1};
  const auto ak = exp_formula(k5b);
  for (std::size_t n = 1; n <= 6; ++n) CHECK(ak[n - 1] == b[n + 1]);

  std::vector<Count> trees;
  for (std::size_t n = 1; n <= 8; ++n) trees.push_back(boost::multiprecision::pow(Count(n), unsigned(n - 1)));
  const auto forests = exp_formula(trees);
  for (std::size_t n = 1; n <= 8; ++n)
    CHECK(forests[n - 1] == boost::multiprecision::pow(Count(n + 1), unsigned(n - 1)));
}

TEST_CASE("count_all examples") {
  CHECK(count_all(ClassId::K5B, 2) == 5);
  CHECK(count_all(ClassId::S5, 3) == 5);
  CHECK(count_all(ClassId::GL3, 2) == 3);
}

TEST_CASE("closed forms match the exponential formula up to 8 states") {
  for (ClassId c : kAllClasses) {
    std::vector<Count> conn;
    for (std::size_t n = 1; n <= 8; ++n) conn.push_back(count_connected(c, n));
    const auto a = exp_formula(conn);
    for (std::size_t n = 1; n <= 8; ++n) CHECK(a[n - 1] == count_all(c, n));
  }
}

TEST_CASE("closed forms match brute-force census up to 4 states") {
  for (ClassId c : kAllClasses)
    for (ClassScope s : kAllScopes)
      for (std::size_t n = 1; n <= 4; ++n)
        CHECK_MESSAGE(count_class(c, s, n) == brute_census(n, [&](const Frame& f) { return in_class(c, s, f); }),
                      to_string(c), " ", to_string(s), " ", n);
}

TEST_CASE("brute census") {
  CHECK(brute_census(2, [](const Frame& f) { return in_class(ClassId::KD5, ClassScope::Connected, f); }) == 3);
  CHECK(brute_census(2, [](const Frame&) { return true; }) == 16);
  CHECK(brute_census(3, [](const Frame& f) { return in_class(ClassId::S5, ClassScope::All, f); }) == 5);
  CHECK_THROWS_AS(brute_census(6, [](const Frame&) { return true; }), BudgetExceeded);

  // Splitting the range over workers does not change the count.
  auto pred = [](const Frame& f) { return f.edge_count() % 3 == 1; };
  CHECK(brute_census(4, pred, 1) == brute_census(4, pred, 3));

  std::vector<std::uint64_t> seen;
  const Count n = brute_census(
      2, [](const Frame& f) { return in_class(ClassId::GL3, ClassScope::All, f); },
      [&](const Frame& f) { seen.push_back(f.bits()); });
  CHECK(n == 3);
  CHECK(seen == std::vector<std::uint64_t>{0, 2, 4});
}

TEST_CASE("asymptotic reports") {
  using K = AsymptoticClaim::Kind;
  const auto ratio = asymptotic_report({K::BellRatio}, 10);
  CHECK(ratio.rows.front().n == 1);
  CHECK(std::abs(static_cast<double>(ratio.rows[3].value) - 15.0 / 52.0) < 1e-12);
  for (std::size_t i = 1; i < ratio.rows.size(); ++i) CHECK(ratio.rows[i].n > ratio.rows[i - 1].n);

  const auto cb = asymptotic_report({K::CentralBinomial}, 400);
  CHECK(std::abs(static_cast<double>(cb.rows.back().value) - 1.0) < 0.01);
  // C(4,2) sqrt(2 pi) / 16
  CHECK(std::abs(static_cast<double>(cb.rows[3].value) - 6 * std::sqrt(2 * M_PI) / 16) < 1e-12);

  const auto bl = asymptotic_report({K::BellLog}, 50);
  CHECK(bl.rows.front().n == 2);
  // ln(B_2)/2 - (ln 2 - ln ln 2 - 1)
  const double expect = std::log(2.0) / 2 - (std::log(2.0) - std::log(std::log(2.0)) - 1);
  CHECK(std::abs(static_cast<double>(bl.rows.front().value) - expect) < 1e-12);

  const auto g = asymptotic_report({K::GnrVsBell, 3, 9}, 20);
  CHECK(g.claim == "gnr_vs_bell(3,9)");
  // n = 4: G_{4,3} = 14, B_4 = 15
  CHECK(std::abs(static_cast<double>(g.rows[3].value) - (std::log(14.0) + 36 * std::log(2.0) - std::log(15.0))) <
        1e-9);

  CHECK_THROWS_AS(asymptotic_report({K::BellRatio}, 401), BudgetExceeded);
}

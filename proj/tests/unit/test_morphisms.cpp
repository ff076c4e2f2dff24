#include <functional>

#include "doctest.h"
#include "kripkelab/checker.hpp"
#include "kripkelab/classes.hpp"
#include "kripkelab/error.hpp"
#include "kripkelab/morphisms.hpp"
#include "oracles.hpp"

using namespace kripkelab;

namespace {

// Every map [|F|] -> [|G|] checked directly against the definition.
bool exists_by_enumeration(const Frame& f, const Frame& g) {
  const auto fm = oracle::matrix(f), gm = oracle::matrix(g);
  StateMap m(f.size(), 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == f.size()) {
      std::vector<bool> hit(g.size());
      for (auto x : m) hit[x] = true;
      for (bool h : hit)
        if (!h) return false;
      for (std::size_t a = 0; a < f.size(); ++a) {
        std::vector<bool> img(g.size());
        for (std::size_t b = 0; b < f.size(); ++b)
          if (fm[a][b]) img[m[b]] = true;
        if (img != gm[m[a]]) return false;
      }
      return true;
    }
    for (State t = 0; t < g.size(); ++t) {
      m[i] = t;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

}  // namespace

TEST_CASE("is_p_morphism examples") {
  const Frame f(3, {{0, 1}, {1, 2}, {2, 2}});
  CHECK(is_p_morphism(f, f, {0, 1, 2}));
  CHECK(is_p_morphism(Frame::cluster(3), Frame::cluster(2), {0, 0, 1}));
  CHECK_FALSE(is_p_morphism(Frame(2, {{0, 1}}), Frame(1, {{0, 0}}), {0, 0}));
  CHECK_FALSE(is_p_morphism(Frame::cluster(2), Frame::cluster(2), {0, 0}));
  CHECK_FALSE(is_p_morphism(Frame::cluster(2), Frame::cluster(2), {0}));
  CHECK_FALSE(is_p_morphism(Frame::cluster(2), Frame::cluster(2), {0, 2}));
}

TEST_CASE("find_p_morphism examples") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t m = 1; m <= 4; ++m)
      CHECK(find_p_morphism(Frame::cluster(n), Frame::cluster(m)).has_value() == (n >= m));
  CHECK_FALSE(find_p_morphism(Frame(1), Frame(1, {{0, 0}})).has_value());
  CHECK(find_p_morphism(Frame(2), Frame(1)) == StateMap{0, 0});
}

TEST_CASE("find_p_morphism is sound and complete on small frames") {
  std::mt19937_64 gen(31);
  for (int i = 0; i < 1500; ++i) {
    const std::size_t n = 1 + gen() % 5, m = 1 + gen() % 3;
    const Frame f = oracle::random_frame(gen, n, 0.5);
    const Frame g = oracle::random_frame(gen, m, 0.5);
    const auto found = find_p_morphism(f, g);
    CHECK(found.has_value() == exists_by_enumeration(f, g));
    if (found) CHECK(is_p_morphism(f, g, *found));
  }
}

TEST_CASE("find_p_morphism budget is reported") {
  CHECK_THROWS_AS(find_p_morphism(Frame(8), Frame(3, {{0, 0}}), SearchBudget{10}), BudgetExceeded);
}

TEST_CASE("refutations transfer backwards along p-morphisms") {
  std::vector<Formula> pool;
  for (ClassId c : kAllClasses)
    for (const auto& f : fixtures(c)) pool.push_back(f.formula);
  std::mt19937_64 gen(32);
  int transfers = 0;
  for (int i = 0; i < 600; ++i) {
    const Frame f = oracle::random_frame(gen, 1 + gen() % 5, 0.5);
    const Frame g = oracle::random_frame(gen, 1 + gen() % 3, 0.5);
    const auto m = find_p_morphism(f, g);
    if (!m) continue;
    for (const Formula& phi : pool) {
      if (phi.variables().size() * f.size() > 16) continue;
      if (!is_valid(g, phi).valid) {
        CHECK_FALSE(is_valid(f, phi).valid);
        ++transfers;
      }
    }
  }
  CHECK(transfers > 0);
}

TEST_CASE("point generated subframes") {
  const Frame chain(3, {{0, 1}, {1, 2}});
  const auto pg = point_generated(chain);
  REQUIRE(pg.size() == 3);
  CHECK(pg[1].sub.frame == Frame(2, {{0, 1}}));
  for (const auto& x : point_generated(Frame::cluster(4))) CHECK(x.sub.frame == Frame::cluster(4));
  CHECK(point_generated(Frame::cluster(4), true).size() == 1);
  CHECK(point_generated(Frame(3), true).size() == 1);

  // Connected KD5 frame, a outside U_F: domain U_F and a.
  const Frame f(5, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 1}, {3, 0}, {4, 0}, {4, 1}});
  const StateSet u = cluster_core(f);
  for (const auto& x : point_generated(f)) {
    StateSet expect = u;
    expect.set(x.point);
    std::vector<State> ex = expect.elements();
    CHECK(x.sub.states == ex);
  }
}

TEST_CASE("KD5 refutation map worked example") {
  // U_F = {0..5} cluster; state 6 sees {0,1,2}.
  std::vector<Edge> e;
  for (State a = 0; a < 6; ++a)
    for (State b = 0; b < 6; ++b) e.emplace_back(a, b);
  for (State b : {0, 1, 2}) e.emplace_back(6, b);
  const Frame f(7, e);
  const Frame g(2, {{0, 1}, {1, 1}});  // c = 0, u = 1
  const RefutationMap r = build_kd5_refutation_map(f, 6, g, 0, 2);
  CHECK(r.source.frame == f);
  CHECK(r.map == StateMap{1, 1, 1, 1, 1, 1, 0});
  CHECK(is_p_morphism(r.source.frame, g, r.map));
}

TEST_CASE("KD5 refutation map preconditions are named") {
  std::vector<Edge> e;
  for (State a = 0; a < 6; ++a)
    for (State b = 0; b < 6; ++b) e.emplace_back(a, b);
  for (State b : {0, 1}) e.emplace_back(6, b);
  const Frame f(7, e);
  const Frame g(2, {{0, 1}, {1, 1}});
  CHECK_THROWS_WITH_AS(build_kd5_refutation_map(f, 6, g, 0, 2), doctest::Contains("spread condition"), InvalidInput);
  CHECK_THROWS_WITH_AS(build_kd5_refutation_map(f, 0, g, 0, 2), doctest::Contains("a lies in U_F"), InvalidInput);
  CHECK_THROWS_WITH_AS(build_kd5_refutation_map(f, 6, g, 1, 1), doctest::Contains("not generated by c"),
                       InvalidInput);
  CHECK_THROWS_WITH_AS(build_kd5_refutation_map(f, 6, g, 0, 1), doctest::Contains("|dom G| exceeds r"), InvalidInput);
  CHECK_THROWS_WITH_AS(build_kd5_refutation_map(Frame(2, {{0, 1}, {1, 0}}), 0, g, 0, 2),
                       doctest::Contains("F is not a connected KD5"), InvalidInput);
  CHECK_THROWS_WITH_AS(build_kd5_refutation_map(f, 6, Frame(1), 0, 2), doctest::Contains("G is not a KD5"),
                       InvalidInput);
  CHECK_THROWS_WITH_AS(build_kd5_refutation_map(f, 6, g, 0, 6), doctest::Contains("|U_F| must exceed r"),
                       InvalidInput);
}

TEST_CASE("KD5 refutation map onto a single cluster") {
  std::vector<Edge> e;
  for (State a = 0; a < 7; ++a)
    for (State b = 0; b < 7; ++b) e.emplace_back(a, b);
  for (State b : {0, 1, 2}) e.emplace_back(7, b);
  const Frame f(8, e);
  const RefutationMap r = build_kd5_refutation_map(f, 7, Frame::cluster(2), 0, 2);
  CHECK(is_p_morphism(r.source.frame, Frame::cluster(2), r.map));
}

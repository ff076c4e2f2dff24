#include <numeric>

#include "doctest.h"
#include "kripkelab/checker.hpp"
#include "kripkelab/error.hpp"
#include "kripkelab/formula.hpp"
#include "oracles.hpp"

using namespace kripkelab;

namespace {

Formula p(std::size_t i) { return Formula::var(i); }

}  // namespace

TEST_CASE("parse examples") {
  CHECK(parse_formula("box p0 -> p0") == Formula::implies(Formula::box(p(0)), p(0)));
  CHECK(parse_formula("<> true") == Formula::diamond(Formula::top()));
  CHECK(parse_formula("<> true") ==
        Formula::implies(Formula::box(Formula::implies(Formula::implies(Formula::bottom(), Formula::bottom()),
                                                       Formula::bottom())),
                         Formula::bottom()));
  CHECK(parse_formula("[] p1") == Formula::box(p(1)));
  CHECK(parse_formula("p0 -> p1 -> p2") == Formula::implies(p(0), Formula::implies(p(1), p(2))));
  CHECK(parse_formula("p0 & p1 | p2") == Formula::disjunction(Formula::conjunction(p(0), p(1)), p(2)));
  CHECK(parse_formula("~box p0") == Formula::negation(Formula::box(p(0))));
  CHECK(parse_formula("p0 | p1 | p2") == Formula::disjunction(Formula::disjunction(p(0), p(1)), p(2)));
}

TEST_CASE("parse errors carry positions") {
  auto where = [](std::string_view text) {
    try {
      parse_formula(text);
    } catch (const ParseError& e) {
      return std::pair{e.line(), e.column()};
    }
    return std::pair<std::size_t, std::size_t>{0, 0};
  };
  CHECK(where("p0 ->") == std::pair<std::size_t, std::size_t>{1, 6});
  CHECK(where("p0 $ p1") == std::pair<std::size_t, std::size_t>{1, 4});
  CHECK(where("(p0") == std::pair<std::size_t, std::size_t>{1, 4});
  CHECK(where("p0\n-> )") == std::pair<std::size_t, std::size_t>{2, 4});
  CHECK(where("") == std::pair<std::size_t, std::size_t>{1, 1});
  CHECK(where("p") == std::pair<std::size_t, std::size_t>{1, 1});
  CHECK(where("p0 p1") == std::pair<std::size_t, std::size_t>{1, 4});
}

TEST_CASE("render examples") {
  CHECK(render(Formula::implies(Formula::box(p(0)), p(0))) == "box p0 -> p0");
  CHECK(render(Formula::box(Formula::implies(p(0), p(1)))) == "box (p0 -> p1)");
  CHECK(render(Formula::bottom()) == "false");
  CHECK(render(Formula::top()) == "true");
  CHECK(render(Formula::diamond(p(0))) == "dia p0");
  CHECK(render(parse_formula("(p0 -> p1) -> p2")) == "(p0 -> p1) -> p2");
}

TEST_CASE("parse inverts render on random formulas") {
  std::mt19937_64 gen(2024);
  for (int i = 0; i < 1000; ++i) {
    const Formula f = oracle::random_formula(gen, 1 + i % 5, 3);
    const std::string text = render(f);
    CHECK_MESSAGE(parse_formula(text) == f, text);
  }
}

TEST_CASE("substitute") {
  const Formula t = parse_formula("box p0 -> p0");
  CHECK(substitute(t, 0, parse_formula("dia p1")) == parse_formula("box dia p1 -> dia p1"));
  CHECK(substitute(t, 3, Formula::bottom()) == t);
  CHECK(substitute(p(0), 0, Formula::bottom()) == Formula::bottom());
}

TEST_CASE("truth sets") {
  const Frame f(2, {{0, 1}});
  const Valuation val{{0, StateSet(2, {1})}};
  CHECK(truth_set(f, val, parse_formula("box p0")) == StateSet(2, {0, 1}));
  CHECK(truth_set(f, val, parse_formula("dia p0")) == StateSet(2, {0}));
  CHECK(truth_set(f, val, Formula::bottom()).empty());
  CHECK_THROWS_AS(truth_set(f, val, p(1)), InvalidInput);
}

TEST_CASE("validity examples") {
  CHECK(is_valid(Frame::cluster(3), parse_formula("box p0 -> p0")).valid);
  const auto r = is_valid(Frame(1), parse_formula("dia true"));
  CHECK_FALSE(r.valid);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->state == 0);

  const Frame g(2, {{0, 0}, {1, 0}});
  const Formula t = parse_formula("box p0 -> p0");
  const auto w = is_valid(g, t);
  CHECK_FALSE(w.valid);
  REQUIRE(w.witness);
  CHECK(w.witness->state == 1);
  CHECK(w.witness->valuation.at(0) == StateSet(2, {0}));
  CHECK_FALSE(truth_set(g, w.witness->valuation, t).test(1));
}

TEST_CASE("validity budget") {
  const Formula f = parse_formula("p0 & p1 & p2 -> p0");
  CHECK(is_valid(Frame(8), f).valid);
  CHECK_THROWS_AS(is_valid(Frame(9), f), BudgetExceeded);
  CHECK_THROWS_AS(is_valid(Frame(4), f, CheckBudget{11}), BudgetExceeded);
  CHECK(is_valid(Frame::cluster(200), parse_formula("dia true")).valid);
}

TEST_CASE("checker agrees with the recursive evaluator on random frames and formulas") {
  std::mt19937_64 gen(77);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + gen() % 5;
    const Frame f = oracle::random_frame(gen, n, 0.35);
    const Formula phi = oracle::random_formula(gen, 1 + gen() % 4, 2);
    const std::size_t vars = oracle::max_var(phi);
    const auto m = oracle::matrix(f);
    const auto r = is_valid(f, phi);
    CHECK_MESSAGE(r.valid == oracle::valid(m, phi, vars), render(phi));
    if (!r.valid) {
      // The witness really refutes phi.
      std::vector<std::vector<bool>> val(vars, std::vector<bool>(n));
      for (auto& [v, set] : r.witness->valuation)
        for (State s = 0; s < n; ++s) val[v][s] = set.test(s);
      CHECK_FALSE(oracle::holds(m, val, phi, r.witness->state));
    }
    // Random valuation: truth sets match state by state.
    Valuation val;
    std::vector<std::vector<bool>> plain(vars, std::vector<bool>(n));
    for (std::size_t v = 0; v < vars; ++v) {
      StateSet s(n);
      for (State a = 0; a < n; ++a)
        if (gen() & 1) {
          s.set(a);
          plain[v][a] = true;
        }
      val[v] = s;
    }
    const StateSet ts = truth_set(f, val, phi);
    for (State a = 0; a < n; ++a) CHECK(ts.test(a) == oracle::holds(m, plain, phi, a));
  }
}

TEST_CASE("checker agrees with the evaluator on larger frames") {
  std::mt19937_64 gen(78);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 6 + gen() % 7;
    const Frame f = oracle::random_frame(gen, n, 0.3);
    const Formula phi = oracle::random_formula(gen, 3, 1);
    CHECK(is_valid(f, phi).valid == oracle::valid(oracle::matrix(f), phi, oracle::max_var(phi)));
  }
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = 65 + gen() % 60;
    const Frame f = oracle::random_frame(gen, n, 0.05);
    const Formula phi = oracle::random_formula(gen, 4, 1);
    Valuation val{{0, StateSet(n)}};
    for (State a = 0; a < n; ++a)
      if (gen() & 1) val[0].set(a);
    std::vector<std::vector<bool>> plain(1, std::vector<bool>(n));
    for (State a = 0; a < n; ++a) plain[0][a] = val[0].test(a);
    const StateSet ts = truth_set(f, val, phi);
    const auto m = oracle::matrix(f);
    for (State a = 0; a < n; ++a) CHECK(ts.test(a) == oracle::holds(m, plain, phi, a));
  }
}

TEST_CASE("validity is invariant under isomorphism") {
  std::mt19937_64 gen(79);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + gen() % 5;
    const Frame f = oracle::random_frame(gen, n, 0.4);
    std::vector<State> perm(n);
    std::iota(perm.begin(), perm.end(), State{0});
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<Edge> e;
    for (auto [a, b] : f.edges()) e.emplace_back(perm[a], perm[b]);
    const Frame g(n, e);
    const Formula phi = oracle::random_formula(gen, 3, 2);
    CHECK(is_valid(f, phi).valid == is_valid(g, phi).valid);
  }
}

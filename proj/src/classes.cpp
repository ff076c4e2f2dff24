#include "kripkelab/classes.hpp"

#include "kripkelab/error.hpp"

namespace kripkelab {

std::string_view to_string(ClassId c) noexcept {
  switch (c) {
    case ClassId::KD5: return "kd5";
    case ClassId::KD45: return "kd45";
    case ClassId::K5B: return "k5b";
    case ClassId::S5: return "s5";
    case ClassId::GL3: return "gl3";
    case ClassId::GRZ3: return "grz3";
  }
  return "?";
}

std::string_view to_string(ClassScope s) noexcept {
  return s == ClassScope::All ? "all" : "connected";
}

std::optional<ClassId> parse_class_id(std::string_view text) noexcept {
  for (ClassId c : kAllClasses)
    if (to_string(c) == text) return c;
  return std::nullopt;
}

std::optional<ClassScope> parse_class_scope(std::string_view text) noexcept {
  for (ClassScope s : kAllScopes)
    if (to_string(s) == text) return s;
  return std::nullopt;
}

std::vector<PropertyName> class_properties(ClassId c) {
  using P = PropertyName;
  switch (c) {
    case ClassId::KD5: return {P::Serial, P::Euclidean};
    case ClassId::KD45: return {P::Serial, P::Transitive, P::Euclidean};
    case ClassId::K5B: return {P::Symmetric, P::Euclidean};
    case ClassId::S5: return {P::Reflexive, P::Euclidean};
    case ClassId::GL3: return {P::Transitive, P::Irreflexive, P::NonBranching, P::Noetherian};
    case ClassId::GRZ3: return {P::Transitive, P::Reflexive, P::NonBranching, P::Noetherian};
  }
  return {};
}

bool in_class(ClassId c, ClassScope s, const Frame& f) {
  for (PropertyName p : class_properties(c))
    if (!check_property(f, p)) return false;
  return s == ClassScope::All || is_connected(f);
}

Frame chain(std::size_t r, bool reflexive) {
  std::vector<Edge> edges;
  for (State i = 0; i < r; ++i)
    for (State j = reflexive ? i : i + 1; j < r; ++j) edges.emplace_back(i, j);
  return Frame(r, edges);
}

Fixture chain_depth_fixture(ClassId c, std::size_t r) {
  if (r < 2) throw InvalidInput("chain_depth_fixture needs r >= 2");
  if (c == ClassId::GL3) {
    Formula f = Formula::bottom();
    for (std::size_t i = 0; i + 1 < r; ++i) f = Formula::box(f);
    return {"chain" + std::to_string(r), f, FixtureKind::Refuted, chain(r, false)};
  }
  if (c == ClassId::GRZ3) {
    // bd_1 = dia box p0 -> p0; bd_(j+1) = dia(box pj & ~bd_j) -> pj
    Formula bd = Formula::implies(Formula::diamond(Formula::box(Formula::var(0))), Formula::var(0));
    for (std::size_t j = 1; j + 1 < r; ++j)
      bd = Formula::implies(
          Formula::diamond(Formula::conjunction(Formula::box(Formula::var(j)), Formula::negation(bd))),
          Formula::var(j));
    return {"bd" + std::to_string(r - 1), bd, FixtureKind::Refuted, chain(r, true)};
  }
  throw InvalidInput("chain_depth_fixture is defined for gl3 and grz3 only");
}

namespace {

Fixture axiom(std::string name, std::string_view text) {
  return {std::move(name), parse_formula(text), FixtureKind::Axiom, std::nullopt};
}

Fixture refuted(std::string name, std::string_view text, Frame witness) {
  return {std::move(name), parse_formula(text), FixtureKind::Refuted, std::move(witness)};
}

constexpr std::string_view kD = "box p0 -> dia p0";
constexpr std::string_view k4 = "box p0 -> box box p0";
constexpr std::string_view k5 = "dia p0 -> box dia p0";
constexpr std::string_view kB = "p0 -> box dia p0";
constexpr std::string_view kT = "box p0 -> p0";
constexpr std::string_view kGL = "box (box p0 -> p0) -> box p0";
constexpr std::string_view kGrz = "box (box (p0 -> box p0) -> p0) -> p0";
constexpr std::string_view kDot3 =
    "dia p0 & dia p1 -> dia (p0 & p1) | dia (p0 & dia p1) | dia (p1 & dia p0)";

}  // namespace

std::vector<Fixture> fixtures(ClassId c) {
  // ({0,1}, {(0,0),(1,0)}): state 1 sees only the reflexive state 0.
  const Frame pointer(2, {{0, 0}, {1, 0}});
  const Frame dead_end(1);
  switch (c) {
    case ClassId::KD5:
      return {axiom("D", kD), axiom("5", k5), refuted("T", kT, pointer),
              refuted("B", kB, pointer)};
    case ClassId::KD45:
      return {axiom("D", kD), axiom("4", k4), axiom("5", k5), refuted("T", kT, pointer)};
    case ClassId::K5B:
      return {axiom("B", kB), axiom("4", k4), axiom("5", k5),
              refuted("D", "dia true", dead_end), refuted("T", kT, dead_end)};
    case ClassId::S5:
      return {axiom("T", kT), axiom("B", kB), axiom("4", k4), axiom("5", k5), axiom("D", kD),
              refuted("alt1", "p0 -> box p0", Frame::cluster(2))};
    case ClassId::GL3:
      return {axiom("4", k4), axiom("GL", kGL), axiom(".3", kDot3), refuted("D", "dia true", dead_end),
              chain_depth_fixture(ClassId::GL3, 3)};
    case ClassId::GRZ3:
      return {axiom("T", kT), axiom("4", k4), axiom("Grz", kGrz), axiom(".3", kDot3),
              refuted("B", kB, chain(2, true)), chain_depth_fixture(ClassId::GRZ3, 3)};
  }
  return {};
}

}  // namespace kripkelab

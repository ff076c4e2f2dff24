#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kripkelab/class_id.hpp"
#include "kripkelab/formula.hpp"
#include "kripkelab/frame.hpp"

namespace kripkelab {

/// Membership by frame conditions:
///   KD5  serial euclidean            KD45 serial transitive euclidean
///   K5B  symmetric euclidean         S5   reflexive euclidean
///   GL3  transitive irreflexive non-branching noetherian
///   GRZ3 transitive reflexive non-branching noetherian
/// With ClassScope::Connected the frame must also be connected.
bool in_class(ClassId c, ClassScope s, const Frame& f);

/// The relation properties whose conjunction defines the class.
std::vector<PropertyName> class_properties(ClassId c);

enum class FixtureKind { Axiom, Refuted };

/// A formula attached to a class: either valid on every member, or falsified
/// on the recorded witness member.
struct Fixture {
  std::string name;
  Formula formula;
  FixtureKind kind;
  std::optional<Frame> witness;
};

std::vector<Fixture> fixtures(ClassId c);

/// Finite chain on r states where i R j iff i < j (or i <= j when reflexive).
Frame chain(std::size_t r, bool reflexive);

/// For GL3/GRZ3: a formula refuted on the r-state chain of the class and
/// valid on every shorter one. GL3 uses box^(r-1) false; GRZ3 the bounded
/// depth formula bd_(r-1). Requires 2 <= r.
Fixture chain_depth_fixture(ClassId c, std::size_t r);

}  // namespace kripkelab

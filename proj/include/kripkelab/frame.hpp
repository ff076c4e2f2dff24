#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "kripkelab/class_id.hpp"
#include "kripkelab/state_set.hpp"

namespace kripkelab {

using Edge = std::pair<State, State>;

/// A finite Kripke frame on the states 0..n-1. Row a of the adjacency
/// matrix is the out-set R_out(a). Frames are immutable values.
class Frame {
 public:
  /// Frame with n >= 1 states and an empty relation.
  explicit Frame(std::size_t n);
  Frame(std::size_t n, std::span<const Edge> edges);
  Frame(std::size_t n, std::initializer_list<Edge> edges);
  /// Takes ownership of the rows; every row must range over rows.size() states.
  explicit Frame(std::vector<StateSet> rows);

  /// The full relation X x X.
  static Frame cluster(std::size_t n);
  /// Frame on n <= 8 states whose bit a*n+b of `bits` encodes a R b.
  static Frame from_bits(std::size_t n, std::uint64_t bits);

  std::size_t size() const noexcept { return rows_.size(); }
  bool has_edge(State a, State b) const noexcept { return rows_[a].test(b); }
  const StateSet& out(State a) const noexcept { return rows_[a]; }
  /// R_in(a).
  StateSet in(State a) const;
  /// R_out[U].
  StateSet out_of(const StateSet& u) const;
  /// All in-sets at once, i.e. the rows of the inverse relation.
  std::vector<StateSet> in_rows() const;
  std::vector<Edge> edges() const;
  std::size_t edge_count() const noexcept;
  /// Inverse of from_bits; only for n <= 8.
  std::uint64_t bits() const;

  friend bool operator==(const Frame& a, const Frame& b) noexcept { return a.rows_ == b.rows_; }

 private:
  std::vector<StateSet> rows_;
};

// ---- text format ----------------------------------------------------------

/// "n\n" followed by n rows of n '0'/'1' characters, each newline-terminated.
std::string to_text(const Frame& f);
/// Parses exactly one frame occupying the whole input.
Frame frame_from_text(std::string_view text);
/// Reads the next frame from a stream of concatenated frames. Returns nullopt
/// at a clean end of input.
std::optional<Frame> read_frame(std::istream& in);

// ---- relation properties --------------------------------------------------

enum class PropertyName {
  Serial,
  Reflexive,
  Irreflexive,
  Symmetric,
  Transitive,
  Euclidean,
  NonBranching,
  Noetherian
};

std::string_view to_string(PropertyName p) noexcept;

/// Decides a relation property. On finite frames Noetherian means that no
/// strongly connected component has two or more states (self-loops allowed).
bool check_property(const Frame& f, PropertyName p);

// ---- closures, reductions, components --------------------------------------

enum class ClosureKind { Transitive, ReflexiveTransitive, Inverse };

Frame closure(const Frame& f, ClosureKind kind);

/// Strict transitive reduction S \ S^2 where S = R \ Id. For irreflexive R
/// this is R \ R^2. Requires a transitive Noetherian frame.
Frame transitive_reduction(const Frame& f);

/// Canonical set partition: blocks sorted ascending, ordered by minimum.
class Partition {
 public:
  Partition() = default;
  /// Validates and canonicalizes; throws InvalidInput unless the blocks
  /// partition {0..n-1}.
  Partition(std::size_t n, std::vector<std::vector<State>> blocks);

  std::size_t universe() const noexcept { return n_; }
  const std::vector<std::vector<State>>& blocks() const noexcept { return blocks_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  /// Index of the block holding each state.
  std::vector<std::size_t> block_index() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<State>> blocks_;
};

/// Equivalence classes of (R u R^-1)*.
Partition connected_components(const Frame& f);
bool is_connected(const Frame& f);
/// Strongly connected components, each block listed in a reverse topological
/// order of the condensation (successor components first).
std::vector<std::vector<State>> strongly_connected_components(const Frame& f);

/// R*_out[U].
StateSet reachable_from(const Frame& f, const StateSet& u);

/// A subframe relabeled onto an initial segment; states[i] is the original
/// label of new state i.
struct Subframe {
  Frame frame;
  std::vector<State> states;
};

/// F<U> after monotone relabeling. U must be nonempty.
Subframe generated_subframe(const Frame& f, const StateSet& u);

/// Disjoint sum with states renumbered consecutively summand by summand.
Frame disjoint_sum(std::span<const Frame> frames);

/// Restricts f to U and applies the order-preserving bijection U -> [|U|].
/// Edges leaving U x U are dropped.
Frame monotone_relabel(const StateSet& u, const Frame& f);

/// Exact isomorphism test by backtracking; meant for frames of up to ~10 states.
bool is_isomorphic(const Frame& f, const Frame& g);
/// A witness bijection from f to g, if one exists.
std::optional<std::vector<State>> find_isomorphism(const Frame& f, const Frame& g);

/// U_F, the union of all out-sets. Requires a Euclidean frame.
StateSet cluster_core(const Frame& f);

struct Unreachable {
  friend bool operator==(Unreachable, Unreachable) = default;
};
using Distance = std::variant<std::size_t, Unreachable>;

/// Least k with a R^k b; R^0 is the identity.
Distance distance(const Frame& f, State a, State b);

/// Height of the inverse tree underlying a connected GL.3 or Grz.3 frame.
/// Throws InvalidInput when f is not a connected member of that class or
/// the class is not GL3/GRZ3.
std::size_t reduction_height(const Frame& f, ClassId tree_class);

}  // namespace kripkelab

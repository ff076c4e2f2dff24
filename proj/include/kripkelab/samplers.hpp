#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <vector>

#include "kripkelab/class_id.hpp"
#include "kripkelab/combinatorics.hpp"
#include "kripkelab/frame.hpp"
#include "kripkelab/rng.hpp"

namespace kripkelab {

/// Uniform set partition of [n] (n >= 1), built block by block: the block
/// holding the smallest unplaced element gets size j with probability
/// C(m-1, j-1) B_{m-j} / B_m.
Partition sample_partition(std::size_t n, RngStream& rng);

/// Labelled rooted tree; parent[root] == root.
struct RootedTree {
  std::vector<State> parent;
  State root = 0;
};

/// Decodes a Prüfer word (length n-2, letters < n) into the edge list of a
/// labelled tree on [n]. n = 1 and n = 2 take the empty word.
std::vector<Edge> prufer_decode(std::size_t n, const std::vector<State>& word);
/// The tree of the word, rooted at `root`.
RootedTree rooted_tree(std::size_t n, const std::vector<State>& word, State root);
/// Uniform over the n^(n-1) labelled rooted trees on [n].
RootedTree sample_rooted_tree(std::size_t n, RngStream& rng);
/// Edges child -> parent.
Frame inverse_tree(const RootedTree& t);
/// Number of edges on the longest leaf-to-root path.
std::size_t tree_height(const RootedTree& t);

/// Uniform sampler for F_n ∩ Fr c, and for its connected members of any size
/// up to n. Holds the exact count tables it draws from; const methods are
/// safe to share between threads.
class FrameSampler {
 public:
  FrameSampler(ClassId c, std::size_t n);

  ClassId class_id() const noexcept { return class_; }
  std::size_t size() const noexcept { return n_; }

  /// Uniform over F_j ∩ Con Fr c, 1 <= j <= n.
  Frame connected(std::size_t j, RngStream& rng) const;
  /// Uniform over F_n ∩ Fr c.
  Frame all(RngStream& rng) const;
  Frame sample(ClassScope s, RngStream& rng) const;

  /// Weights C(j,m)(2^m-1)^(j-m), m = 1..j, for connected KD5 frames with
  /// |U_F| = m. Only valid for KD5.
  const std::vector<Count>& kd5_weights(std::size_t j) const;

 private:
  struct Tables {
    std::vector<Count> connected;  // c_0 (unused) .. c_n
    std::vector<Count> all;        // a_0 .. a_n
  };
  // Built on first use by all(); connected draws never need them.
  const Tables& tables() const;

  ClassId class_;
  std::size_t n_;
  std::vector<std::vector<Count>> kd5_weights_;  // KD5 only
  std::vector<Count> kd5_totals_;
  mutable std::unique_ptr<std::once_flag> tables_once_ = std::make_unique<std::once_flag>();
  mutable std::unique_ptr<Tables> tables_;
};

Frame sample_connected(ClassId c, std::size_t n, RngStream& rng);
Frame sample_all(ClassId c, std::size_t n, RngStream& rng);

inline constexpr std::size_t kMaxRejectionStates = 4;

/// Oracle sampler: fair coin for every adjacency bit, repeated until the
/// frame lies in the class. n <= 4; throws BudgetExceeded after
/// max_attempts draws.
Frame sample_rejection(ClassId c, ClassScope s, std::size_t n, RngStream& rng,
                       std::size_t max_attempts = 1u << 22);

/// Block structure by the exponential formula: sizes chosen with weight
/// C(m-1, j-1) c_j a_{m-j}, members uniform among the unplaced states.
/// connected[j] and all[j] must be filled for j <= n. Blocks come out sorted
/// by minimum with ascending members.
std::vector<std::vector<State>> sample_blocks(std::size_t n, const std::vector<Count>& connected,
                                              const std::vector<Count>& all, RngStream& rng);

}  // namespace kripkelab

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kripkelab/frame.hpp"

namespace kripkelab {

/// f[a] is the image of source state a.
using StateMap = std::vector<State>;

/// f is total on dom F, surjective onto dom G, and S_out(f(a)) = f(R_out(a))
/// for every a.
bool is_p_morphism(const Frame& f, const Frame& g, const StateMap& map);

struct SearchBudget {
  std::size_t max_nodes = 10'000'000;
};

/// Backtracking search for a p-morphism from f onto g. Returns nullopt when
/// none exists; throws BudgetExceeded when the search gives up first.
std::optional<StateMap> find_p_morphism(const Frame& f, const Frame& g, SearchBudget budget = {});

struct PointGenerated {
  State point;
  Subframe sub;  // F<point>, relabeled
};

/// F<a> for every state a. With dedup only the first frame of each
/// isomorphism type is kept.
std::vector<PointGenerated> point_generated(const Frame& f, bool dedup = false);

struct RefutationMap {
  Subframe source;  // F<a>
  StateMap map;     // indexed by the states of source.frame
};

/// The explicit p-morphism from F<a> onto G used to transfer a refutation on
/// G to F. Requires F a connected KD5 frame, G a KD5 frame generated by c
/// with at most r states, a outside U_F, |U_F| > r and
/// r < |R_out(a)| < |U_F| - r. Each failed requirement is reported as
/// InvalidInput naming it.
///
/// R_out(a) goes round-robin onto S_out(c) and U_F \ R_out(a) round-robin
/// onto U_G \ S_out(c), both in ascending label order. When U_G = S_out(c)
/// the second group is sent to min S_out(c).
RefutationMap build_kd5_refutation_map(const Frame& f, State a, const Frame& g, State c, std::size_t r);

}  // namespace kripkelab

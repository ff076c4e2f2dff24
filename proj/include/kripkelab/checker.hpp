#pragma once

#include <cstddef>
#include <map>
#include <optional>

#include "kripkelab/formula.hpp"
#include "kripkelab/frame.hpp"

namespace kripkelab {

/// Truth sets for the variables of a formula.
using Valuation = std::map<std::size_t, StateSet>;

/// States of f where the formula holds. Throws InvalidInput if a variable of
/// the formula has no entry in the valuation.
StateSet truth_set(const Frame& f, const Valuation& val, const Formula& phi);

struct Refutation {
  Valuation valuation;
  State state;
};

struct ValidityResult {
  bool valid = true;
  std::optional<Refutation> witness;  // set iff !valid
};

/// Limits for the exhaustive validity check. Enumerating 2^(k*n) valuations
/// for k distinct variables is refused when k*n exceeds max_valuation_bits.
struct CheckBudget {
  std::size_t max_valuation_bits = 24;
};

/// F |= phi by enumerating every valuation of the variables occurring in phi.
/// Stops at the first refutation. Throws BudgetExceeded above the budget.
ValidityResult is_valid(const Frame& f, const Formula& phi, CheckBudget budget = {});

}  // namespace kripkelab

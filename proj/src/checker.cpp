#include "kripkelab/checker.hpp"

#include <vector>

#include "kripkelab/error.hpp"

namespace kripkelab {

StateSet truth_set(const Frame& f, const Valuation& val, const Formula& phi) {
  switch (phi.kind()) {
    case Formula::Kind::Var: {
      const auto it = val.find(phi.var_index());
      if (it == val.end())
        throw InvalidInput("valuation does not cover p" + std::to_string(phi.var_index()));
      if (it->second.universe() != f.size())
        throw InvalidInput("valuation of p" + std::to_string(phi.var_index()) +
                           " ranges over the wrong number of states");
      return it->second;
    }
    case Formula::Kind::Bottom:
      return StateSet(f.size());
    case Formula::Kind::Implies: {
      StateSet lhs = truth_set(f, val, phi.left());
      return lhs.complement() | truth_set(f, val, phi.right());
    }
    case Formula::Kind::Box: {
      const StateSet inner = truth_set(f, val, phi.child());
      StateSet s(f.size());
      for (State a = 0; a < f.size(); ++a)
        if (f.out(a).is_subset_of(inner)) s.set(a);
      return s;
    }
  }
  throw InvalidInput("unknown formula node");
}

namespace {

// Postfix program over truth-set words; slots index the formula's variables.
struct Instr {
  enum Op { Load, Bottom, Implies, Box } op;
  std::size_t slot = 0;
};

void compile(const Formula& phi, const std::map<std::size_t, std::size_t>& slot_of,
             std::vector<Instr>& prog) {
  switch (phi.kind()) {
    case Formula::Kind::Var: prog.push_back({Instr::Load, slot_of.at(phi.var_index())}); return;
    case Formula::Kind::Bottom: prog.push_back({Instr::Bottom}); return;
    case Formula::Kind::Implies:
      compile(phi.left(), slot_of, prog);
      compile(phi.right(), slot_of, prog);
      prog.push_back({Instr::Implies});
      return;
    case Formula::Kind::Box:
      compile(phi.child(), slot_of, prog);
      prog.push_back({Instr::Box});
      return;
  }
}

// Word-sized evaluator for frames of at most 64 states.
class SmallChecker {
 public:
  SmallChecker(const Frame& f, const Formula& phi, const std::vector<std::size_t>& vars)
      : n_(f.size()), full_(n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1) {
    std::map<std::size_t, std::size_t> slot_of;
    for (std::size_t i = 0; i < vars.size(); ++i) slot_of[vars[i]] = i;
    compile(phi, slot_of, prog_);
    rows_.resize(n_);
    for (State a = 0; a < n_; ++a) rows_[a] = f.out(a).mask();
    // A lookup table turns box into one load when 2^n is small.
    if (n_ <= 12) {
      box_table_.resize(std::size_t{1} << n_);
      for (std::uint64_t t = 0; t < box_table_.size(); ++t) box_table_[t] = box_scan(t);
    }
    stack_.resize(prog_.size());
  }

  std::uint64_t full() const noexcept { return full_; }

  std::uint64_t eval(const std::vector<std::uint64_t>& slots) {
    std::size_t sp = 0;
    for (const Instr& in : prog_) {
      switch (in.op) {
        case Instr::Load: stack_[sp++] = slots[in.slot]; break;
        case Instr::Bottom: stack_[sp++] = 0; break;
        case Instr::Implies:
          --sp;
          stack_[sp - 1] = ((~stack_[sp - 1]) | stack_[sp]) & full_;
          break;
        case Instr::Box:
          stack_[sp - 1] = box_table_.empty() ? box_scan(stack_[sp - 1]) : box_table_[stack_[sp - 1]];
          break;
      }
    }
    return stack_[0];
  }

 private:
  std::uint64_t box_scan(std::uint64_t t) const noexcept {
    std::uint64_t r = 0;
    for (State a = 0; a < n_; ++a)
      if ((rows_[a] & ~t) == 0) r |= std::uint64_t{1} << a;
    return r;
  }

  std::size_t n_;
  std::uint64_t full_;
  std::vector<Instr> prog_;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint64_t> box_table_;
  std::vector<std::uint64_t> stack_;
};

}  // namespace

ValidityResult is_valid(const Frame& f, const Formula& phi, CheckBudget budget) {
  const auto var_set = phi.variables();
  const std::vector<std::size_t> vars(var_set.begin(), var_set.end());
  const std::size_t n = f.size();
  const std::size_t k = vars.size();
  if (k > 0 && (k * n > budget.max_valuation_bits || k * n >= 63))
    throw BudgetExceeded("validity check needs 2^" + std::to_string(k * n) +
                         " valuations; budget allows 2^" +
                         std::to_string(budget.max_valuation_bits));

  auto make_witness = [&](const std::vector<StateSet>& sets, State at) {
    Refutation r{{}, at};
    for (std::size_t i = 0; i < k; ++i) r.valuation.emplace(vars[i], sets[i]);
    return ValidityResult{false, std::move(r)};
  };

  if (n <= 64) {
    SmallChecker checker(f, phi, vars);
    const std::uint64_t total = std::uint64_t{1} << (k * n);
    const std::uint64_t row_mask = checker.full();
    std::vector<std::uint64_t> slots(k, 0);
    for (std::uint64_t v = 0; v < total; ++v) {
      for (std::size_t i = 0; i < k; ++i) slots[i] = (v >> (i * n)) & row_mask;
      const std::uint64_t truth = checker.eval(slots);
      if (truth != row_mask) {
        std::vector<StateSet> sets;
        for (std::size_t i = 0; i < k; ++i) sets.push_back(StateSet::from_mask(n, slots[i]));
        const State at = static_cast<State>(std::countr_zero(~truth & row_mask));
        return make_witness(sets, at);
      }
    }
    return {};
  }

  // Only variable-free formulas reach this point.
  const StateSet truth = truth_set(f, {}, phi);
  if (truth == StateSet::full(n)) return {};
  return make_witness({}, *truth.complement().first());
}

}  // namespace kripkelab

#include "kripkelab/morphisms.hpp"

#include "kripkelab/classes.hpp"
#include "kripkelab/error.hpp"

namespace kripkelab {

namespace {

StateSet image(const StateSet& s, const StateMap& map, std::size_t target_size) {
  StateSet out(target_size);
  s.for_each([&](State x) { out.set(map[x]); });
  return out;
}

class PMorphismSearch {
 public:
  PMorphismSearch(const Frame& f, const Frame& g, SearchBudget budget)
      : f_(f), g_(g), budget_(budget), map_(f.size(), kUnset), hits_(g.size(), 0), preds_(f.in_rows()) {}

  std::optional<StateMap> run() {
    if (g_.size() > f_.size()) return std::nullopt;
    if (extend(0)) return map_;
    return std::nullopt;
  }

 private:
  static constexpr State kUnset = ~State{0};

  // Image of the assigned part of R_out(b) must stay inside S_out(f(b)), and
  // equal it once R_out(b) is fully assigned (states 0..upto are assigned).
  bool consistent(State b, State upto) const {
    StateSet img(g_.size());
    bool complete = true;
    f_.out(b).for_each([&](State x) {
      if (x <= upto)
        img.set(map_[x]);
      else
        complete = false;
    });
    const StateSet& target = g_.out(map_[b]);
    return complete ? img == target : img.is_subset_of(target);
  }

  bool extend(State a) {
    if (a == f_.size()) return uncovered_ == 0;
    if (++nodes_ > budget_.max_nodes)
      throw BudgetExceeded("find_p_morphism: search exceeded " + std::to_string(budget_.max_nodes) + " nodes");
    // Every unused target still needs a preimage among the unassigned states.
    if (uncovered_ > f_.size() - a) return false;
    for (State t = 0; t < g_.size(); ++t) {
      map_[a] = t;
      if (hits_[t]++ == 0) --uncovered_;
      bool ok = consistent(a, a);
      if (ok) {
        preds_[a].for_each([&](State b) {
          if (ok && b < a) ok = consistent(b, a);
        });
      }
      if (ok && extend(a + 1)) return true;
      if (--hits_[t] == 0) ++uncovered_;
    }
    map_[a] = kUnset;
    return false;
  }

  const Frame& f_;
  const Frame& g_;
  SearchBudget budget_;
  StateMap map_;
  std::vector<std::size_t> hits_;
  std::vector<StateSet> preds_;
  std::size_t uncovered_ = g_.size();
  std::size_t nodes_ = 0;
};

}  // namespace

bool is_p_morphism(const Frame& f, const Frame& g, const StateMap& map) {
  if (map.size() != f.size()) return false;
  StateSet covered(g.size());
  for (State x : map) {
    if (x >= g.size()) return false;
    covered.set(x);
  }
  if (covered.count() != g.size()) return false;
  for (State a = 0; a < f.size(); ++a)
    if (image(f.out(a), map, g.size()) != g.out(map[a])) return false;
  return true;
}

std::optional<StateMap> find_p_morphism(const Frame& f, const Frame& g, SearchBudget budget) {
  return PMorphismSearch(f, g, budget).run();
}

std::vector<PointGenerated> point_generated(const Frame& f, bool dedup) {
  std::vector<PointGenerated> out;
  for (State a = 0; a < f.size(); ++a) {
    StateSet u(f.size());
    u.set(a);
    PointGenerated pg{a, generated_subframe(f, u)};
    if (dedup) {
      bool seen = false;
      for (const auto& prev : out) {
        if (is_isomorphic(prev.sub.frame, pg.sub.frame)) {
          seen = true;
          break;
        }
      }
      if (seen) continue;
    }
    out.push_back(std::move(pg));
  }
  return out;
}

RefutationMap build_kd5_refutation_map(const Frame& f, State a, const Frame& g, State c, std::size_t r) {
  if (!in_class(ClassId::KD5, ClassScope::Connected, f))
    throw InvalidInput("build_kd5_refutation_map: F is not a connected KD5 frame");
  if (a >= f.size()) throw InvalidInput("build_kd5_refutation_map: a is not a state of F");
  if (!in_class(ClassId::KD5, ClassScope::All, g))
    throw InvalidInput("build_kd5_refutation_map: G is not a KD5 frame");
  if (c >= g.size()) throw InvalidInput("build_kd5_refutation_map: c is not a state of G");
  StateSet root(g.size());
  root.set(c);
  if (reachable_from(g, root).count() != g.size())
    throw InvalidInput("build_kd5_refutation_map: G is not generated by c");
  if (g.size() > r) throw InvalidInput("build_kd5_refutation_map: |dom G| exceeds r");
  const StateSet uf = cluster_core(f);
  if (uf.test(a)) throw InvalidInput("build_kd5_refutation_map: a lies in U_F");
  if (uf.count() <= r) throw InvalidInput("build_kd5_refutation_map: |U_F| must exceed r");
  const std::size_t out_a = f.out(a).count();
  if (!(r < out_a && out_a + r < uf.count()))
    throw InvalidInput("build_kd5_refutation_map: spread condition r < |R_out(a)| < |U_F| - r fails");

  StateSet u(f.size());
  u.set(a);
  RefutationMap result{generated_subframe(f, u), {}};
  const auto& labels = result.source.states;  // ascending original labels
  const std::vector<State> s_c = g.out(c).elements();
  const std::vector<State> rest = (cluster_core(g) - g.out(c)).elements();

  result.map.assign(labels.size(), c);
  std::size_t in_out = 0;
  std::size_t in_rest = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const State x = labels[i];
    if (x == a) continue;
    if (f.has_edge(a, x))
      result.map[i] = s_c[in_out++ % s_c.size()];
    else
      result.map[i] = rest.empty() ? s_c.front() : rest[in_rest++ % rest.size()];
  }
  return result;
}

}  // namespace kripkelab

#include "kripkelab/samplers.hpp"

#include <algorithm>
#include <numeric>

#include "kripkelab/classes.hpp"
#include "kripkelab/error.hpp"

namespace kripkelab {

namespace {

void require_states(std::size_t n, const char* who) {
  if (n == 0) throw InvalidInput(std::string(who) + ": n must be at least 1");
}

/// k distinct elements of pool drawn uniformly (partial Fisher-Yates on a copy).
std::vector<State> choose(std::vector<State> pool, std::size_t k, RngStream& rng) {
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

/// Index i drawn with probability weights[i] / sum(weights).
std::size_t draw_weighted(const std::vector<Count>& weights, const Count& total, RngStream& rng) {
  Count x = rng.below(total);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (x < weights[i]) return i;
    x -= weights[i];
  }
  throw Error("draw_weighted: weights do not sum to the total");
}

/// Copies g onto the given ascending labels of a frame under construction.
void place(std::vector<StateSet>& rows, const Frame& g, const std::vector<State>& labels) {
  for (State x = 0; x < g.size(); ++x) g.out(x).for_each([&](State y) { rows[labels[x]].set(labels[y]); });
}

}  // namespace

std::vector<std::vector<State>> sample_blocks(std::size_t n, const std::vector<Count>& connected,
                                              const std::vector<Count>& all, RngStream& rng) {
  std::vector<State> remaining(n);
  std::iota(remaining.begin(), remaining.end(), State{0});
  std::vector<std::vector<State>> blocks;
  std::vector<Count> weights;
  while (!remaining.empty()) {
    const std::size_t m = remaining.size();
    weights.assign(m, 0);
    Count c = 1;  // C(m-1, j-1)
    for (std::size_t j = 1; j <= m; ++j) {
      if (j > 1) {
        c *= m - j + 1;
        c /= j - 1;
      }
      weights[j - 1] = c * connected[j] * all[m - j];
    }
    const std::size_t j = draw_weighted(weights, all[m], rng) + 1;
    std::vector<State> rest(remaining.begin() + 1, remaining.end());
    std::vector<State> block = choose(rest, j - 1, rng);
    block.insert(block.begin(), remaining.front());
    std::vector<State> left;
    left.reserve(m - j);
    std::set_difference(remaining.begin(), remaining.end(), block.begin(), block.end(), std::back_inserter(left));
    remaining = std::move(left);
    blocks.push_back(std::move(block));
  }
  return blocks;
}

Partition sample_partition(std::size_t n, RngStream& rng) {
  require_states(n, "sample_partition");
  const std::vector<Count> ones(n + 1, 1);
  return Partition(n, sample_blocks(n, ones, bell(n), rng));
}

// ---- trees -------------------------------------------------------------------

std::vector<Edge> prufer_decode(std::size_t n, const std::vector<State>& word) {
  require_states(n, "prufer_decode");
  if (n == 1) {
    if (!word.empty()) throw InvalidInput("prufer_decode: word must be empty for n = 1");
    return {};
  }
  if (word.size() != n - 2) throw InvalidInput("prufer_decode: word length must be n - 2");
  if (n == 2) return {{0, 1}};
  std::vector<std::size_t> degree(n, 1);
  for (State s : word) {
    if (s >= n) throw InvalidInput("prufer_decode: letter out of range");
    ++degree[s];
  }
  // Linear-time decoding: `ptr` scans for the smallest leaf, `leaf` may step
  // back to a freshly created smaller leaf.
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  std::size_t ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  std::size_t leaf = ptr;
  for (State v : word) {
    edges.emplace_back(leaf, v);
    if (--degree[v] == 1 && v < ptr) {
      leaf = v;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(leaf, n - 1);
  return edges;
}

RootedTree rooted_tree(std::size_t n, const std::vector<State>& word, State root) {
  if (root >= n) throw InvalidInput("rooted_tree: root out of range");
  const auto edges = prufer_decode(n, word);
  std::vector<std::vector<State>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  RootedTree t;
  t.root = root;
  t.parent.assign(n, n);
  t.parent[root] = root;
  std::vector<State> queue{root};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const State v = queue[i];
    for (State w : adj[v]) {
      if (t.parent[w] != n) continue;
      t.parent[w] = v;
      queue.push_back(w);
    }
  }
  return t;
}

RootedTree sample_rooted_tree(std::size_t n, RngStream& rng) {
  require_states(n, "sample_rooted_tree");
  std::vector<State> word(n >= 2 ? n - 2 : 0);
  for (auto& s : word) s = rng.below(n);
  const State root = rng.below(n);
  return rooted_tree(n, word, root);
}

Frame inverse_tree(const RootedTree& t) {
  const std::size_t n = t.parent.size();
  std::vector<StateSet> rows(n, StateSet(n));
  for (State v = 0; v < n; ++v)
    if (v != t.root) rows[v].set(t.parent[v]);
  return Frame(std::move(rows));
}

std::size_t tree_height(const RootedTree& t) {
  const std::size_t n = t.parent.size();
  constexpr std::size_t kUnknown = ~std::size_t{0};
  std::vector<std::size_t> depth(n, kUnknown);
  depth[t.root] = 0;
  std::vector<State> path;
  std::size_t height = 0;
  for (State v = 0; v < n; ++v) {
    State u = v;
    while (depth[u] == kUnknown) {
      path.push_back(u);
      u = t.parent[u];
    }
    std::size_t d = depth[u];
    while (!path.empty()) {
      depth[path.back()] = ++d;
      path.pop_back();
    }
    height = std::max(height, depth[v]);
  }
  return height;
}

// ---- class samplers ----------------------------------------------------------

FrameSampler::FrameSampler(ClassId c, std::size_t n) : class_(c), n_(n) {
  require_states(n, "FrameSampler");
  if (c == ClassId::KD5) {
    kd5_weights_.resize(n + 1);
    kd5_totals_.assign(n + 1, 0);
    for (std::size_t j = 1; j <= n; ++j) {
      auto& w = kd5_weights_[j];
      for (std::size_t m = 1; m <= j; ++m) {
        Count cluster_choices = (Count(1) << m) - 1;
        w.push_back(binomial(j, m) * boost::multiprecision::pow(cluster_choices, static_cast<unsigned>(j - m)));
        kd5_totals_[j] += w.back();
      }
    }
  }
}

const FrameSampler::Tables& FrameSampler::tables() const {
  std::call_once(*tables_once_, [this] {
    auto t = std::make_unique<Tables>();
    t->connected.assign(n_ + 1, 0);
    for (std::size_t j = 1; j <= n_; ++j) t->connected[j] = count_connected(class_, j);
    std::vector<Count> tail(t->connected.begin() + 1, t->connected.end());
    t->all = exp_formula(tail);
    t->all.insert(t->all.begin(), Count(1));
    tables_ = std::move(t);
  });
  return *tables_;
}

const std::vector<Count>& FrameSampler::kd5_weights(std::size_t j) const {
  if (class_ != ClassId::KD5) throw InvalidInput("kd5_weights: sampler is not for KD5");
  if (j == 0 || j > n_) throw InvalidInput("kd5_weights: size out of range");
  return kd5_weights_[j];
}

Frame FrameSampler::connected(std::size_t j, RngStream& rng) const {
  if (j == 0 || j > n_) throw InvalidInput("FrameSampler::connected: size out of range");
  std::vector<State> all_states(j);
  std::iota(all_states.begin(), all_states.end(), State{0});
  switch (class_) {
    case ClassId::S5:
      return Frame::cluster(j);
    case ClassId::K5B:
      if (j == 1) return rng.coin() ? Frame(1, {{0, 0}}) : Frame(1);
      return Frame::cluster(j);
    case ClassId::KD45: {
      // Uniform nonempty U, then R = [j] x U.
      StateSet u(j);
      do {
        u = StateSet(j);
        for (State s = 0; s < j; ++s)
          if (rng.coin()) u.set(s);
      } while (u.empty());
      return Frame(std::vector<StateSet>(j, u));
    }
    case ClassId::KD5: {
      const std::size_t m = draw_weighted(kd5_weights_[j], kd5_totals_[j], rng) + 1;
      const auto core = choose(all_states, m, rng);
      StateSet u(j);
      for (State s : core) u.set(s);
      std::vector<StateSet> rows(j, StateSet(j));
      for (State a = 0; a < j; ++a) {
        if (u.test(a)) {
          rows[a] = u;
          continue;
        }
        // Uniform nonempty subset of U.
        do {
          rows[a] = StateSet(j);
          for (State s : core)
            if (rng.coin()) rows[a].set(s);
        } while (rows[a].empty());
      }
      return Frame(std::move(rows));
    }
    case ClassId::GL3:
    case ClassId::GRZ3: {
      const Frame tree = inverse_tree(sample_rooted_tree(j, rng));
      return closure(tree, class_ == ClassId::GL3 ? ClosureKind::Transitive : ClosureKind::ReflexiveTransitive);
    }
  }
  throw InvalidInput("FrameSampler: unknown class");
}

Frame FrameSampler::all(RngStream& rng) const {
  const Tables& t = tables();
  const auto blocks = sample_blocks(n_, t.connected, t.all, rng);
  std::vector<StateSet> rows(n_, StateSet(n_));
  for (const auto& block : blocks) place(rows, connected(block.size(), rng), block);
  return Frame(std::move(rows));
}

Frame FrameSampler::sample(ClassScope s, RngStream& rng) const {
  return s == ClassScope::Connected ? connected(n_, rng) : all(rng);
}

Frame sample_connected(ClassId c, std::size_t n, RngStream& rng) { return FrameSampler(c, n).connected(n, rng); }

Frame sample_all(ClassId c, std::size_t n, RngStream& rng) { return FrameSampler(c, n).all(rng); }

Frame sample_rejection(ClassId c, ClassScope s, std::size_t n, RngStream& rng, std::size_t max_attempts) {
  require_states(n, "sample_rejection");
  if (n > kMaxRejectionStates)
    throw BudgetExceeded("sample_rejection: n = " + std::to_string(n) + " exceeds the limit of " +
                         std::to_string(kMaxRejectionStates));
  const std::uint64_t mask = (std::uint64_t{1} << (n * n)) - 1;
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    Frame f = Frame::from_bits(n, rng.next() & mask);
    if (in_class(c, s, f)) return f;
  }
  throw BudgetExceeded("sample_rejection: no class member after " + std::to_string(max_attempts) + " attempts");
}

}  // namespace kripkelab

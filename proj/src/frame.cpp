#include "kripkelab/frame.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <numeric>
#include <string>

#include "kripkelab/error.hpp"

namespace kripkelab {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void require_state(const Frame& f, State s, const char* what) {
  if (s >= f.size())
    throw InvalidInput(std::string(what) + " " + std::to_string(s) + " is not a state of a " +
                       std::to_string(f.size()) + "-state frame");
}

void require_universe(const Frame& f, const StateSet& u) {
  if (u.universe() != f.size())
    throw InvalidInput("state set ranges over " + std::to_string(u.universe()) +
                       " states but the frame has " + std::to_string(f.size()));
}

}  // namespace

// ---- Frame -----------------------------------------------------------------

Frame::Frame(std::size_t n) {
  if (n == 0) throw InvalidInput("a frame needs at least one state");
  rows_.assign(n, StateSet(n));
}

Frame::Frame(std::size_t n, std::span<const Edge> edges) : Frame(n) {
  for (auto [a, b] : edges) {
    if (a >= n || b >= n)
      throw InvalidInput("edge (" + std::to_string(a) + "," + std::to_string(b) +
                         ") outside a " + std::to_string(n) + "-state frame");
    rows_[a].set(b);
  }
}

Frame::Frame(std::size_t n, std::initializer_list<Edge> edges)
    : Frame(n, std::span<const Edge>(edges.begin(), edges.size())) {}

Frame::Frame(std::vector<StateSet> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw InvalidInput("a frame needs at least one state");
  for (const auto& r : rows_)
    if (r.universe() != rows_.size()) throw InvalidInput("frame row has the wrong universe");
}

Frame Frame::cluster(std::size_t n) {
  if (n == 0) throw InvalidInput("a frame needs at least one state");
  return Frame(std::vector<StateSet>(n, StateSet::full(n)));
}

Frame Frame::from_bits(std::size_t n, std::uint64_t bits) {
  if (n == 0 || n > 8) throw InvalidInput("from_bits supports 1..8 states");
  std::vector<StateSet> rows;
  rows.reserve(n);
  const std::uint64_t row_mask = (std::uint64_t{1} << n) - 1;
  for (std::size_t a = 0; a < n; ++a) rows.push_back(StateSet::from_mask(n, (bits >> (a * n)) & row_mask));
  return Frame(std::move(rows));
}

std::uint64_t Frame::bits() const {
  if (size() > 8) throw InvalidInput("bits() supports at most 8 states");
  std::uint64_t b = 0;
  for (std::size_t a = 0; a < size(); ++a) b |= rows_[a].mask() << (a * size());
  return b;
}

StateSet Frame::in(State a) const {
  StateSet s(size());
  for (State b = 0; b < size(); ++b)
    if (rows_[b].test(a)) s.set(b);
  return s;
}

StateSet Frame::out_of(const StateSet& u) const {
  StateSet s(size());
  u.for_each([&](State a) { s |= rows_[a]; });
  return s;
}

std::vector<StateSet> Frame::in_rows() const {
  std::vector<StateSet> in(size(), StateSet(size()));
  for (State a = 0; a < size(); ++a) rows_[a].for_each([&](State b) { in[b].set(a); });
  return in;
}

std::vector<Edge> Frame::edges() const {
  std::vector<Edge> out;
  for (State a = 0; a < size(); ++a) rows_[a].for_each([&](State b) { out.emplace_back(a, b); });
  return out;
}

std::size_t Frame::edge_count() const noexcept {
  std::size_t c = 0;
  for (const auto& r : rows_) c += r.count();
  return c;
}

// ---- text format -----------------------------------------------------------

std::string to_text(const Frame& f) {
  const std::size_t n = f.size();
  std::string s = std::to_string(n);
  s.push_back('\n');
  s.reserve(s.size() + n * (n + 1));
  for (State a = 0; a < n; ++a) {
    for (State b = 0; b < n; ++b) s.push_back(f.has_edge(a, b) ? '1' : '0');
    s.push_back('\n');
  }
  return s;
}

Frame frame_from_text(std::string_view text) {
  std::size_t pos = 0;
  std::size_t line = 1;
  std::size_t line_start = 0;
  auto fail = [&](const std::string& msg) -> Frame {
    throw ParseError("frame text: " + msg, line, pos - line_start + 1);
  };

  std::size_t n = 0;
  const std::size_t digits_begin = pos;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    if (n > 1'000'000) return fail("state count too large");
    n = n * 10 + static_cast<std::size_t>(text[pos] - '0');
    ++pos;
  }
  if (pos == digits_begin) return fail("expected a decimal state count");
  if (text[digits_begin] == '0') {
    pos = digits_begin;
    return fail("state count must be a positive number without leading zeros");
  }
  if (pos >= text.size() || text[pos] != '\n') return fail("expected newline after state count");
  ++pos;
  ++line;
  line_start = pos;

  std::vector<StateSet> rows(n, StateSet(n));
  for (State a = 0; a < n; ++a) {
    for (State b = 0; b < n; ++b) {
      if (pos >= text.size()) return fail("unexpected end of input in matrix row");
      const char c = text[pos];
      if (c == '1') rows[a].set(b);
      else if (c != '0') return fail("expected '0' or '1'");
      ++pos;
    }
    if (pos >= text.size() || text[pos] != '\n') return fail("expected newline after matrix row");
    ++pos;
    ++line;
    line_start = pos;
  }
  if (pos != text.size()) return fail("trailing characters after frame");
  return Frame(std::move(rows));
}

std::optional<Frame> read_frame(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) return std::nullopt;
  if (in.eof()) throw ParseError("frame text: missing newline after state count", 1, header.size() + 1);
  std::string text = header + "\n";
  // Validate the header before trusting it as a row count.
  std::size_t n = 0;
  try {
    n = std::stoul(header);
  } catch (const std::exception&) {
    return frame_from_text(text);  // reports the precise error
  }
  for (std::size_t a = 0; a < n; ++a) {
    std::string row;
    if (!std::getline(in, row)) throw ParseError("frame text: unexpected end of input", a + 2, 1);
    if (in.eof()) throw ParseError("frame text: missing newline after matrix row", a + 2, row.size() + 1);
    text += row;
    text.push_back('\n');
  }
  return frame_from_text(text);
}

// ---- properties ------------------------------------------------------------

std::string_view to_string(PropertyName p) noexcept {
  switch (p) {
    case PropertyName::Serial: return "serial";
    case PropertyName::Reflexive: return "reflexive";
    case PropertyName::Irreflexive: return "irreflexive";
    case PropertyName::Symmetric: return "symmetric";
    case PropertyName::Transitive: return "transitive";
    case PropertyName::Euclidean: return "euclidean";
    case PropertyName::NonBranching: return "nonbranching";
    case PropertyName::Noetherian: return "noetherian";
  }
  return "?";
}

bool check_property(const Frame& f, PropertyName p) {
  const std::size_t n = f.size();
  switch (p) {
    case PropertyName::Serial:
      for (State a = 0; a < n; ++a)
        if (f.out(a).empty()) return false;
      return true;
    case PropertyName::Reflexive:
      for (State a = 0; a < n; ++a)
        if (!f.has_edge(a, a)) return false;
      return true;
    case PropertyName::Irreflexive:
      for (State a = 0; a < n; ++a)
        if (f.has_edge(a, a)) return false;
      return true;
    case PropertyName::Symmetric:
      for (State a = 0; a < n; ++a)
        for (auto b = f.out(a).first(); b; b = f.out(a).next(*b + 1))
          if (!f.has_edge(*b, a)) return false;
      return true;
    case PropertyName::Transitive:
      for (State a = 0; a < n; ++a) {
        bool ok = true;
        f.out(a).for_each([&](State b) { ok = ok && f.out(b).is_subset_of(f.out(a)); });
        if (!ok) return false;
      }
      return true;
    case PropertyName::Euclidean:
      for (State a = 0; a < n; ++a) {
        bool ok = true;
        f.out(a).for_each([&](State b) { ok = ok && f.out(a).is_subset_of(f.out(b)); });
        if (!ok) return false;
      }
      return true;
    case PropertyName::NonBranching: {
      // Every successor of a must be comparable with every other successor
      // of a: succ(a) is inside out(b) | in(b) | {b} for each b in succ(a).
      const auto in = f.in_rows();
      for (State a = 0; a < n; ++a) {
        const StateSet& succ = f.out(a);
        bool ok = true;
        succ.for_each([&](State b) {
          if (!ok) return;
          const StateSet& up = f.out(b);
          const StateSet& down = in[b];
          for (std::size_t w = 0; w < succ.word_count(); ++w) {
            StateSet::Word stray = succ.word(w) & ~(up.word(w) | down.word(w));
            if (w == b / StateSet::kWordBits) stray &= ~(StateSet::Word{1} << (b % StateSet::kWordBits));
            if (stray != 0) {
              ok = false;
              return;
            }
          }
        });
        if (!ok) return false;
      }
      return true;
    }
    case PropertyName::Noetherian:
      for (const auto& c : strongly_connected_components(f))
        if (c.size() >= 2) return false;
      return true;
  }
  return false;
}

// ---- SCCs and closures -----------------------------------------------------

std::vector<std::vector<State>> strongly_connected_components(const Frame& f) {
  const std::size_t n = f.size();
  std::vector<std::size_t> index(n, kNone), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<State> stack;
  std::vector<std::vector<State>> comps;
  struct Call {
    State v;
    State next;
  };
  std::vector<Call> calls;
  std::size_t counter = 0;

  for (State root = 0; root < n; ++root) {
    if (index[root] != kNone) continue;
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    calls.push_back({root, 0});
    while (!calls.empty()) {
      const State v = calls.back().v;
      const auto w = f.out(v).next(calls.back().next);
      if (w) {
        calls.back().next = *w + 1;
        if (index[*w] == kNone) {
          index[*w] = low[*w] = counter++;
          stack.push_back(*w);
          on_stack[*w] = 1;
          calls.push_back({*w, 0});
        } else if (on_stack[*w]) {
          low[v] = std::min(low[v], index[*w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<State> comp;
        State x;
        do {
          x = stack.back();
          stack.pop_back();
          on_stack[x] = 0;
          comp.push_back(x);
        } while (x != v);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
      calls.pop_back();
      if (!calls.empty()) low[calls.back().v] = std::min(low[calls.back().v], low[v]);
    }
  }
  return comps;
}

namespace {

std::vector<StateSet> transitive_rows(const Frame& f) {
  const std::size_t n = f.size();
  const auto comps = strongly_connected_components(f);
  std::vector<std::size_t> comp_of(n);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (State v : comps[c]) comp_of[v] = c;

  // Components arrive successors-first, so every external successor's reach
  // set is final when it is read.
  std::vector<StateSet> reach(comps.size());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    StateSet s(n);
    bool cyclic = comps[c].size() > 1;
    for (State v : comps[c]) {
      const StateSet& succ = f.out(v);
      for (auto w = succ.first(); w; w = succ.next(*w + 1)) {
        if (comp_of[*w] == c) {
          cyclic = true;
          continue;
        }
        if (s.test(*w)) continue;  // reach(w) already contained
        s.set(*w);
        s |= reach[comp_of[*w]];
      }
    }
    if (cyclic)
      for (State v : comps[c]) s.set(v);
    reach[c] = std::move(s);
  }
  std::vector<StateSet> rows(n);
  for (State v = 0; v < n; ++v) rows[v] = reach[comp_of[v]];
  return rows;
}

}  // namespace

Frame closure(const Frame& f, ClosureKind kind) {
  switch (kind) {
    case ClosureKind::Transitive:
      return Frame(transitive_rows(f));
    case ClosureKind::ReflexiveTransitive: {
      auto rows = transitive_rows(f);
      for (State v = 0; v < rows.size(); ++v) rows[v].set(v);
      return Frame(std::move(rows));
    }
    case ClosureKind::Inverse:
      return Frame(f.in_rows());
  }
  throw InvalidInput("unknown closure kind");
}

namespace {

// S \ S^2 for S = R \ Id, assuming R transitive.
Frame strict_reduction(const Frame& f) {
  const std::size_t n = f.size();
  std::vector<StateSet> rows(n);
  StateSet two_step(n);
  for (State a = 0; a < n; ++a) {
    two_step = StateSet(n);
    f.out(a).for_each([&](State b) {
      // R is transitive, so R(b) is already inside two_step when b is.
      if (b == a || two_step.test(b)) return;
      two_step |= f.out(b);
      if (f.has_edge(b, b)) two_step.reset(b);
    });
    rows[a] = f.out(a) - two_step;
    rows[a].reset(a);
  }
  return Frame(std::move(rows));
}

}  // namespace

Frame transitive_reduction(const Frame& f) {
  for (PropertyName p : {PropertyName::Transitive, PropertyName::Noetherian})
    if (!check_property(f, p))
      throw InvalidInput("transitive_reduction requires a " + std::string(to_string(p)) + " frame");
  return strict_reduction(f);
}

// ---- partitions and components ---------------------------------------------

Partition::Partition(std::size_t n, std::vector<std::vector<State>> blocks) : n_(n) {
  std::vector<char> seen(n, 0);
  std::size_t covered = 0;
  for (auto& b : blocks) {
    if (b.empty()) throw InvalidInput("partition blocks must be nonempty");
    std::sort(b.begin(), b.end());
    for (State s : b) {
      if (s >= n) throw InvalidInput("partition block holds a state outside the universe");
      if (seen[s]) throw InvalidInput("partition blocks overlap at state " + std::to_string(s));
      seen[s] = 1;
      ++covered;
    }
  }
  if (covered != n) throw InvalidInput("partition blocks do not cover the universe");
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  blocks_ = std::move(blocks);
}

std::vector<std::size_t> Partition::block_index() const {
  std::vector<std::size_t> idx(n_);
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    for (State s : blocks_[i]) idx[s] = i;
  return idx;
}

Partition connected_components(const Frame& f) {
  const std::size_t n = f.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (State a = 0; a < n; ++a)
    f.out(a).for_each([&](State b) {
      const auto ra = find(a), rb = find(b);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    });
  std::vector<std::size_t> block_of_root(n, kNone);
  std::vector<std::vector<State>> blocks;
  for (State a = 0; a < n; ++a) {
    const auto r = find(a);
    if (block_of_root[r] == kNone) {
      block_of_root[r] = blocks.size();
      blocks.emplace_back();
    }
    blocks[block_of_root[r]].push_back(a);
  }
  return Partition(n, std::move(blocks));
}

bool is_connected(const Frame& f) { return connected_components(f).block_count() == 1; }

StateSet reachable_from(const Frame& f, const StateSet& u) {
  require_universe(f, u);
  StateSet reach = u;
  StateSet frontier = u;
  while (!frontier.empty()) {
    StateSet next = f.out_of(frontier) - reach;
    reach |= next;
    frontier = std::move(next);
  }
  return reach;
}

Subframe generated_subframe(const Frame& f, const StateSet& u) {
  require_universe(f, u);
  if (u.empty()) throw InvalidInput("generated_subframe needs a nonempty generating set");
  const StateSet domain = reachable_from(f, u);
  return Subframe{monotone_relabel(domain, f), domain.elements()};
}

Frame disjoint_sum(std::span<const Frame> frames) {
  if (frames.empty()) throw InvalidInput("disjoint_sum needs at least one frame");
  std::size_t total = 0;
  for (const auto& g : frames) total += g.size();
  std::vector<StateSet> rows(total, StateSet(total));
  std::size_t offset = 0;
  for (const auto& g : frames) {
    for (State a = 0; a < g.size(); ++a)
      g.out(a).for_each([&](State b) { rows[offset + a].set(offset + b); });
    offset += g.size();
  }
  return Frame(std::move(rows));
}

Frame monotone_relabel(const StateSet& u, const Frame& f) {
  require_universe(f, u);
  const auto members = u.elements();
  if (members.empty()) throw InvalidInput("monotone_relabel needs a nonempty state set");
  std::vector<std::size_t> label(f.size(), kNone);
  for (std::size_t i = 0; i < members.size(); ++i) label[members[i]] = i;
  std::vector<StateSet> rows(members.size(), StateSet(members.size()));
  for (std::size_t i = 0; i < members.size(); ++i)
    f.out(members[i]).for_each([&](State b) {
      if (label[b] != kNone) rows[i].set(label[b]);
    });
  return Frame(std::move(rows));
}

// ---- isomorphism -----------------------------------------------------------

namespace {

struct Profile {
  std::size_t out_degree;
  std::size_t in_degree;
  bool loop;
  friend auto operator<=>(const Profile&, const Profile&) = default;
};

std::vector<Profile> profiles(const Frame& f) {
  const auto in = f.in_rows();
  std::vector<Profile> p(f.size());
  for (State a = 0; a < f.size(); ++a) p[a] = {f.out(a).count(), in[a].count(), f.has_edge(a, a)};
  return p;
}

}  // namespace

std::optional<std::vector<State>> find_isomorphism(const Frame& f, const Frame& g) {
  const std::size_t n = f.size();
  if (n != g.size() || f.edge_count() != g.edge_count()) return std::nullopt;
  const auto pf = profiles(f);
  const auto pg = profiles(g);
  {
    auto sf = pf, sg = pg;
    std::sort(sf.begin(), sf.end());
    std::sort(sg.begin(), sg.end());
    if (sf != sg) return std::nullopt;
  }
  std::vector<State> map(n, kNone);
  std::vector<char> used(n, 0);
  std::vector<State> cursor(n, 0);

  std::size_t i = 0;
  while (true) {
    if (i == n) return map;
    bool placed = false;
    for (State j = cursor[i]; j < n; ++j) {
      if (used[j] || pf[i] != pg[j]) continue;
      bool ok = true;
      for (State k = 0; k < i && ok; ++k)
        ok = f.has_edge(i, k) == g.has_edge(j, map[k]) && f.has_edge(k, i) == g.has_edge(map[k], j);
      if (!ok) continue;
      map[i] = j;
      used[j] = 1;
      cursor[i] = j + 1;
      placed = true;
      break;
    }
    if (placed) {
      ++i;
      if (i < n) cursor[i] = 0;
      continue;
    }
    if (i == 0) return std::nullopt;
    --i;
    used[map[i]] = 0;
    map[i] = kNone;
  }
}

bool is_isomorphic(const Frame& f, const Frame& g) { return find_isomorphism(f, g).has_value(); }

// ---- Euclidean and tree structure ------------------------------------------

StateSet cluster_core(const Frame& f) {
  if (!check_property(f, PropertyName::Euclidean))
    throw InvalidInput("cluster_core requires a euclidean frame");
  StateSet u(f.size());
  for (State a = 0; a < f.size(); ++a) u |= f.out(a);
  return u;
}

Distance distance(const Frame& f, State a, State b) {
  require_state(f, a, "state");
  require_state(f, b, "state");
  if (a == b) return std::size_t{0};
  StateSet seen(f.size(), {a});
  StateSet frontier = seen;
  for (std::size_t d = 1; !frontier.empty(); ++d) {
    StateSet next = f.out_of(frontier) - seen;
    if (next.test(b)) return d;
    seen |= next;
    frontier = std::move(next);
  }
  return Unreachable{};
}

std::size_t reduction_height(const Frame& f, ClassId tree_class) {
  if (tree_class != ClassId::GL3 && tree_class != ClassId::GRZ3)
    throw InvalidInput("reduction_height is defined for gl3 and grz3 only");
  const PropertyName loops =
      tree_class == ClassId::GL3 ? PropertyName::Irreflexive : PropertyName::Reflexive;
  for (PropertyName p : {PropertyName::Transitive, loops, PropertyName::NonBranching,
                         PropertyName::Noetherian})
    if (!check_property(f, p))
      throw InvalidInput("reduction_height: frame is not " + std::string(to_string(p)) +
                         ", so it is not in " + std::string(to_string(tree_class)));
  if (!is_connected(f))
    throw InvalidInput("reduction_height: frame is not connected, so it is not in connected " +
                       std::string(to_string(tree_class)));

  const Frame tree = strict_reduction(f);
  const std::size_t n = tree.size();
  std::vector<std::size_t> depth(n, kNone);
  std::vector<State> chain;
  std::size_t height = 0;
  for (State v = 0; v < n; ++v) {
    State x = v;
    while (depth[x] == kNone) {
      const auto parent = tree.out(x).first();
      if (!parent) {
        depth[x] = 0;
        break;
      }
      chain.push_back(x);
      x = *parent;
    }
    while (!chain.empty()) {
      const State c = chain.back();
      chain.pop_back();
      depth[c] = depth[*tree.out(c).first()] + 1;
    }
    height = std::max(height, depth[v]);
  }
  return height;
}

}  // namespace kripkelab

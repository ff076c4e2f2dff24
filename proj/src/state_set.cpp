#include "kripkelab/state_set.hpp"

#include <algorithm>

#include "kripkelab/error.hpp"

namespace kripkelab {

StateSet::StateSet(std::size_t universe)
    : universe_(universe), words_((universe + kWordBits - 1) / kWordBits, 0) {}

StateSet::StateSet(std::size_t universe, std::initializer_list<State> members)
    : StateSet(universe) {
  for (State s : members) {
    if (s >= universe) throw InvalidInput("state " + std::to_string(s) + " outside universe");
    set(s);
  }
}

StateSet StateSet::full(std::size_t universe) {
  StateSet s(universe);
  std::fill(s.words_.begin(), s.words_.end(), ~Word{0});
  s.clear_tail();
  return s;
}

StateSet StateSet::from_mask(std::size_t universe, Word mask) {
  if (universe > kWordBits) throw InvalidInput("from_mask needs a universe of at most 64 states");
  StateSet s(universe);
  if (!s.words_.empty()) s.words_[0] = mask;
  s.clear_tail();
  return s;
}

void StateSet::clear_tail() noexcept {
  const std::size_t rem = universe_ % kWordBits;
  if (rem != 0 && !words_.empty()) words_.back() &= (Word{1} << rem) - 1;
}

std::size_t StateSet::count() const noexcept {
  std::size_t c = 0;
  for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool StateSet::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

bool StateSet::is_subset_of(const StateSet& other) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  return true;
}

bool StateSet::intersects(const StateSet& other) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & other.words_[i]) != 0) return true;
  return false;
}

std::optional<State> StateSet::first() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] != 0) return w * kWordBits + std::countr_zero(words_[w]);
  return std::nullopt;
}

std::optional<State> StateSet::next(State from) const noexcept {
  if (from >= universe_) return std::nullopt;
  std::size_t w = from / kWordBits;
  Word bits = words_[w] & (~Word{0} << (from % kWordBits));
  while (true) {
    if (bits != 0) return w * kWordBits + std::countr_zero(bits);
    if (++w == words_.size()) return std::nullopt;
    bits = words_[w];
  }
}

std::vector<State> StateSet::elements() const {
  std::vector<State> out;
  out.reserve(count());
  for_each([&](State s) { out.push_back(s); });
  return out;
}

StateSet& StateSet::operator|=(const StateSet& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

StateSet& StateSet::operator&=(const StateSet& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

StateSet& StateSet::operator-=(const StateSet& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

StateSet StateSet::complement() const {
  StateSet s = *this;
  for (Word& w : s.words_) w = ~w;
  s.clear_tail();
  return s;
}

}  // namespace kripkelab

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace kripkelab {

using State = std::size_t;

/// Subset of the states {0, ..., universe-1}, stored as 64-bit words.
/// Sets over at most 128 states live inline.
class StateSet {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  StateSet() = default;
  explicit StateSet(std::size_t universe);
  StateSet(std::size_t universe, std::initializer_list<State> members);

  static StateSet full(std::size_t universe);
  /// Set whose members are the set bits of `mask`; universe must be <= 64.
  static StateSet from_mask(std::size_t universe, Word mask);

  std::size_t universe() const noexcept { return universe_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  Word word(std::size_t i) const noexcept { return words_[i]; }

  bool test(State s) const noexcept {
    return (words_[s / kWordBits] >> (s % kWordBits)) & 1U;
  }
  void set(State s) noexcept { words_[s / kWordBits] |= Word{1} << (s % kWordBits); }
  void reset(State s) noexcept { words_[s / kWordBits] &= ~(Word{1} << (s % kWordBits)); }

  std::size_t count() const noexcept;
  bool empty() const noexcept;
  bool is_subset_of(const StateSet& other) const noexcept;
  bool intersects(const StateSet& other) const noexcept;
  std::optional<State> first() const noexcept;
  /// Least member >= from.
  std::optional<State> next(State from) const noexcept;
  /// Members in ascending order.
  std::vector<State> elements() const;
  /// Low word; meaningful as the whole set when universe <= 64.
  Word mask() const noexcept { return words_.empty() ? 0 : words_[0]; }

  StateSet& operator|=(const StateSet& other) noexcept;
  StateSet& operator&=(const StateSet& other) noexcept;
  /// Set difference.
  StateSet& operator-=(const StateSet& other) noexcept;
  /// Complement relative to the universe.
  StateSet complement() const;

  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend StateSet operator-(StateSet a, const StateSet& b) { return a -= b; }
  friend bool operator==(const StateSet& a, const StateSet& b) noexcept {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        fn(static_cast<State>(w * kWordBits + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

 private:
  void clear_tail() noexcept;

  std::size_t universe_ = 0;
  boost::container::small_vector<Word, 2> words_;
};

}  // namespace kripkelab

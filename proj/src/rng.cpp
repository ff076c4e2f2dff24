#include "kripkelab/rng.hpp"

#include <bit>

#include "kripkelab/error.hpp"

namespace kripkelab {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

RngStream RngStream::substream(std::uint64_t seed, std::uint64_t index) {
  return RngStream(mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL)));
}

std::uint64_t RngStream::next() { return engine_(); }

std::uint64_t RngStream::below(std::uint64_t bound) {
  if (bound == 0) throw InvalidInput("RngStream::below: bound must be positive");
  if ((bound & (bound - 1)) == 0) return next() & (bound - 1);
  // 2^64 mod bound values at the bottom are rejected so the rest split evenly.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t x = next();
    if (x >= threshold) return x % bound;
  }
}

std::uint64_t RngStream::uniform(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw InvalidInput("RngStream::uniform: empty range");
  if (lo == 0 && hi == ~std::uint64_t{0}) return next();
  return lo + below(hi - lo + 1);
}

bool RngStream::coin() {
  if (bits_left_ == 0) {
    bits_ = next();
    bits_left_ = 64;
  }
  const bool b = bits_ & 1;
  bits_ >>= 1;
  --bits_left_;
  return b;
}

Count RngStream::below(const Count& bound) {
  if (bound <= 0) throw InvalidInput("RngStream::below: bound must be positive");
  if (bound <= Count(~std::uint64_t{0})) return below(static_cast<std::uint64_t>(bound));
  // Draw msb(bound-1)+1 random bits and reject values >= bound.
  const std::size_t bits = boost::multiprecision::msb(Count(bound - 1)) + 1;
  const std::size_t words = (bits + 63) / 64;
  const std::size_t top_bits = bits - 64 * (words - 1);
  while (true) {
    Count x = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t word = next();
      if (w == 0 && top_bits < 64) word &= (std::uint64_t{1} << top_bits) - 1;
      x <<= 64;
      x |= word;
    }
    if (x < bound) return x;
  }
}

double RngStream::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

}  // namespace kripkelab

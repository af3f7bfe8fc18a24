#pragma once

#include <cstdint>
#include <random>

#include "posso/error.hpp"

namespace posso {

/// Canonical representative of an element of F_p, always in [0, p).
using Elem = std::uint32_t;

/// Seeded generator used for every randomized step, so Las Vegas runs can be
/// replayed from a seed.
using Rng = std::mt19937_64;

inline constexpr std::uint32_t kDefaultPrime = 65521;

bool is_prime(std::uint64_t n);

/// Arithmetic in F_p for an odd prime 2 < p < 2^31. Elements are plain
/// integers kept in canonical range; products fit in 62 bits.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p = kDefaultPrime);

  std::uint32_t modulus() const noexcept { return p_; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }

  Elem add(Elem a, Elem b) const noexcept {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const noexcept {
    return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
  }
  /// Throws ZeroInverse for a == 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const noexcept;

  /// Reduces an arbitrary (possibly negative) integer into [0, p).
  Elem from_int(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Elem>(r < 0 ? r + p_ : r);
  }
  Elem reduce(std::uint64_t v) const noexcept { return static_cast<Elem>(v % p_); }

  /// Symmetric representative in (-p/2, p/2], used for printing.
  std::int64_t to_signed(Elem a) const noexcept {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : a;
  }

  Elem random_element(Rng& rng) const {
    return static_cast<Elem>(std::uniform_int_distribution<std::uint32_t>(0, p_ - 1)(rng));
  }
  Elem random_nonzero(Rng& rng) const {
    return static_cast<Elem>(std::uniform_int_distribution<std::uint32_t>(1, p_ - 1)(rng));
  }

  bool operator==(const PrimeField& other) const noexcept { return p_ == other.p_; }

 private:
  std::uint32_t p_;
};

}  // namespace posso

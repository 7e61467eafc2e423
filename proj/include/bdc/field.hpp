#pragma once

#include <cstdint>

namespace bdc {

/// Element of a prime field F_p, always reduced into [0, p).
struct FieldElement {
  std::uint64_t value = 0;

  friend bool operator==(FieldElement, FieldElement) = default;
};

inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Arithmetic in F_p for a runtime prime 2 < p < 2^62.
///
/// The default modulus is the Mersenne prime 2^61 - 1, for which
/// multiplication uses shift-and-add reduction instead of a 128-bit
/// division.
class PrimeField {
 public:
  PrimeField() : PrimeField(kMersenne61) {}
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const noexcept { return p_; }

  FieldElement zero() const noexcept { return {0}; }
  FieldElement one() const noexcept { return {1}; }

  FieldElement from_int(std::int64_t v) const noexcept {
    std::int64_t r = static_cast<std::int64_t>(
        static_cast<__int128>(v) % static_cast<__int128>(p_));
    if (r < 0) r += static_cast<std::int64_t>(p_);
    return {static_cast<std::uint64_t>(r)};
  }
  FieldElement from_uint(std::uint64_t v) const noexcept { return {v % p_}; }

  FieldElement add(FieldElement a, FieldElement b) const noexcept {
    std::uint64_t s = a.value + b.value;
    return {s >= p_ ? s - p_ : s};
  }
  FieldElement sub(FieldElement a, FieldElement b) const noexcept {
    return {a.value >= b.value ? a.value - b.value : a.value + p_ - b.value};
  }
  FieldElement neg(FieldElement a) const noexcept {
    return {a.value == 0 ? 0 : p_ - a.value};
  }
  FieldElement mul(FieldElement a, FieldElement b) const noexcept {
    unsigned __int128 prod = static_cast<unsigned __int128>(a.value) * b.value;
    if (mersenne_) {
      std::uint64_t lo = static_cast<std::uint64_t>(prod) & kMersenne61;
      std::uint64_t hi = static_cast<std::uint64_t>(prod >> 61);
      std::uint64_t s = lo + hi;
      return {s >= kMersenne61 ? s - kMersenne61 : s};
    }
    return {static_cast<std::uint64_t>(prod % p_)};
  }
  FieldElement pow(FieldElement a, std::uint64_t e) const noexcept;
  /// Inverse of a nonzero element; throws InputError on zero.
  FieldElement inv(FieldElement a) const;

  /// The signed integer v with |v| < p/2 congruent to a.
  std::int64_t to_signed(FieldElement a) const noexcept {
    return a.value > p_ / 2 ? -static_cast<std::int64_t>(p_ - a.value)
                            : static_cast<std::int64_t>(a.value);
  }

 private:
  std::uint64_t p_;
  bool mersenne_;
};

}  // namespace bdc

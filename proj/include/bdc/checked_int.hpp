#pragma once

#include <cstdint>

#include "bdc/error.hpp"

namespace bdc {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 addition overflow");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 subtraction overflow");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 multiplication overflow");
  return r;
}

inline std::int64_t narrow_to_int64(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw OverflowError("value does not fit in int64");
  return static_cast<std::int64_t>(v);
}

}  // namespace bdc

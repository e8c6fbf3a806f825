#pragma once

#include <cstdint>

#include "termcheck/error.hpp"

namespace termcheck {

using Natural = std::uint64_t;

inline Natural checked_add(Natural a, Natural b) {
  Natural r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError();
  return r;
}

inline Natural checked_mul(Natural a, Natural b) {
  Natural r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError();
  return r;
}

}  // namespace termcheck

#pragma once

#include <gtest/gtest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "dbl/error.hpp"
#include "dbl/norm_value.hpp"
#include "dbl/ring.hpp"

namespace dbl {

inline void PrintTo(const NormValue& v, std::ostream* os) { *os << v.to_string(); }

}  // namespace dbl

namespace dbl::testing {

/// Seeded generator for property tests; every suite starts from its own seed
/// so failures reproduce independently of test order.
struct Gen {
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
  bool coin() { return integer(0, 1) == 1; }
  Element element(const RingDescriptor& r, long bound) { return r.reduce(integer(-bound, bound)); }
  std::vector<Element> elements(const RingDescriptor& r, size_t n, long bound) {
    std::vector<Element> out;
    for (size_t i = 0; i < n; ++i) out.push_back(element(r, bound));
    return out;
  }
  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<size_t>(integer(0, static_cast<long>(xs.size()) - 1))];
  }

  std::mt19937_64 rng;
};

inline std::vector<RingDescriptor> all_rings() {
  return {RingDescriptor::int_inf(),    RingDescriptor::int_triv(),    RingDescriptor::fp_triv(2),
          RingDescriptor::fp_triv(5),   RingDescriptor::zmod_triv(6),  RingDescriptor::zmod_quot(5),
          RingDescriptor::zmod_quot(6), RingDescriptor::zmod_quot(3)};
}

}  // namespace dbl::testing

#define EXPECT_ERROR(stmt, expected_kind)                                              \
  do {                                                                                 \
    try {                                                                              \
      stmt;                                                                            \
      ADD_FAILURE() << "expected " << ::dbl::to_string(expected_kind) << " from " #stmt; \
    } catch (const ::dbl::Error& e_) {                                                 \
      EXPECT_EQ(e_.kind(), expected_kind) << e_.what();                                \
    }                                                                                  \
  } while (0)

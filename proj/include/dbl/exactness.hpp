#pragma once

#include <random>

#include "dbl/module.hpp"

namespace dbl {

/// 0 -> M0 --s--> M1 --t--> M2 -> 0 over IntTriv with max-formula modules,
/// where M2 = M1 / s(M0) carries the quotient norm and t is the projection.
struct StrictSequence {
  WeightedFreeModule m0;
  WeightedFreeModule m1;
  IntMatrix s;  // rank(M1) x rank(M0), injective
  FinModule m2;
  /// ||s^{-1}(m)|| <= c0 ||m|| on the image: max weight of M0 / min weight of M1.
  mpq_class c0;
  /// Quotient lifts are norm-minimizing, so the constant for t is 1.
  mpq_class c1 = 1;
};

StrictSequence make_strict_sequence(WeightedFreeModule m0, WeightedFreeModule m1, IntMatrix s);
StrictSequence random_strict_sequence(std::mt19937_64& rng);

struct StrongExactnessReport {
  size_t functions_checked = 0;
  bool injective = true;        // C(s) has zero kernel on the samples
  bool exact_middle = true;     // t o f = 0 iff f lifts through s
  bool surjective = true;       // every sampled C(X, M2) function lifts
  bool constants_respected = true;
  mpq_class worst_c0_ratio = 0; // largest ||lift|| / ||f|| seen for kernel lifts
  mpq_class worst_c1_ratio = 0;
  bool ok() const { return injective && exact_middle && surjective && constants_respected; }
};

/// Applies C_fin(X, -) to the sequence and checks exactness and the lift
/// constants on `samples` seeded functions of each kind.
StrongExactnessReport check_strong_exactness(const SpacePtr& x, const StrictSequence& seq, std::mt19937_64& rng,
                                             int samples);

}  // namespace dbl

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dbl/norm_value.hpp"

namespace dbl {

/// Ring elements are integers; Z/n variants keep them reduced to [0, n).
using Element = mpz_class;

enum class RingKind { IntInf, IntTriv, FpTriv, ZmodTriv, ZmodQuot };

/// One of the five supported normed rings isolated at 0.
///
///   IntInf       Z with |.|_inf
///   IntTriv      Z with the trivial norm
///   FpTriv(p)    F_p with the trivial norm
///   ZmodTriv(n)  Z/n with the trivial norm (n = 1 gives the zero ring)
///   ZmodQuot(n)  Z/n with the quotient norm of |.|_inf
class RingDescriptor {
 public:
  static RingDescriptor int_inf();
  static RingDescriptor int_triv();
  static RingDescriptor fp_triv(long p);
  static RingDescriptor zmod_triv(long n);
  static RingDescriptor zmod_quot(long n);

  RingKind kind() const noexcept { return kind_; }
  /// 0 for the Z variants.
  long modulus() const noexcept { return modulus_; }
  bool is_integer() const noexcept { return modulus_ == 0; }
  bool is_zero_ring() const noexcept { return modulus_ == 1; }

  bool non_archimedean() const noexcept { return non_archimedean_; }
  bool ordered() const noexcept { return ordered_; }
  const NormValue& isolation_gap() const noexcept { return gap_; }
  const NormValue& one_norm() const noexcept { return one_norm_; }
  /// Declared: M(R) has no nontrivial clopen, i.e. R has no nontrivial idempotent.
  bool spectrum_connected() const noexcept { return spectrum_connected_; }

  std::string name() const;

  /// Throws ElementOutOfRange when a Z/n element is not in [0, n).
  void check(const Element& a) const;
  Element reduce(const Element& a) const;
  Element zero() const { return 0; }
  Element one() const { return reduce(1); }
  Element add(const Element& a, const Element& b) const { return reduce(a + b); }
  Element sub(const Element& a, const Element& b) const { return reduce(a - b); }
  Element mul(const Element& a, const Element& b) const { return reduce(a * b); }
  Element neg(const Element& a) const { return reduce(-a); }
  bool is_unit(const Element& a) const;

  NormValue norm(const Element& a) const;

  /// Every element whose integer representative r satisfies |r| <= bound,
  /// deduplicated and reduced.
  std::vector<Element> sample(long bound) const;

  friend bool operator==(const RingDescriptor& a, const RingDescriptor& b) {
    return a.kind_ == b.kind_ && a.modulus_ == b.modulus_;
  }

 private:
  RingDescriptor(RingKind kind, long modulus);

  RingKind kind_;
  long modulus_;
  bool non_archimedean_ = false;
  bool ordered_ = false;
  bool spectrum_connected_ = false;
  NormValue gap_ = NormValue::one();
  NormValue one_norm_ = NormValue::one();
};

/// min |a + kn| over all integers k.
NormValue quotient_norm(long n, const Element& a);

bool is_prime(long p);
std::vector<long> prime_factors(long n);

struct RingReport {
  std::string ring;
  long sample_bound = 0;
  bool submultiplicative = false;
  bool multiplicative = false;
  bool isolated = false;
  bool triangle = false;
  bool strong_triangle = false;
  NormValue gap;
  NormValue one_norm;
};

/// Checks the normed-ring laws on all sampled pairs. Throws ValidationFailure
/// naming the first violated law and its witness.
RingReport validate_ring(const RingDescriptor& ring, long sample_bound);

}  // namespace dbl

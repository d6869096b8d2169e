#pragma once

#include <functional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dbl/function.hpp"
#include "dbl/norm_value.hpp"
#include "dbl/ring.hpp"

namespace dbl {

enum class BaseKind { ArchPow, PadicPow, PadicResidue, Trivial };

/// A point of M(R): a bounded multiplicative seminorm on the base ring.
///
///   ArchPow(eps)        |a| = |a|_inf^eps          (eps = 0 is Trivial)
///   PadicPow(p, eps)    |a| = p^(-eps * v_p(a))
///   PadicResidue(p)     |a| = 0 if p | a, else 1
///   Trivial             |a| = 0 if a = 0, else 1
class BasePoint {
 public:
  static BasePoint arch_pow(const mpq_class& eps);
  static BasePoint padic_pow(long p, const mpq_class& eps);
  static BasePoint padic_residue(long p);
  static BasePoint trivial();

  BaseKind kind() const noexcept { return kind_; }
  long prime() const noexcept { return p_; }
  const mpq_class& eps() const noexcept { return eps_; }

  /// Evaluates on an integer representative.
  NormValue eval(const Element& a) const;
  std::string name() const;

  friend bool operator==(const BasePoint& a, const BasePoint& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_ && a.eps_ == b.eps_;
  }

 private:
  BasePoint(BaseKind kind, long p, mpq_class eps) : kind_(kind), p_(p), eps_(std::move(eps)) {}

  BaseKind kind_;
  long p_ = 0;
  mpq_class eps_ = 0;
};

/// Throws ValidationFailure with the reason when b is not in the admissible
/// family of the ring.
void require_admissible(const RingDescriptor& ring, const BasePoint& b);
bool is_admissible(const RingDescriptor& ring, const BasePoint& b);

/// The sample grid used by the round-trip checks.
std::vector<BasePoint> sample_base_points(const RingDescriptor& ring);

struct PointReport {
  std::string ring;
  std::string point;
  long sample_bound = 0;
  size_t pairs_checked = 0;
};

/// Exact multiplicativity, |1| = 1, |0| = 0, boundedness |a| <= ||a|| and the
/// triangle inequality (the base-level criterion for ArchPow) on samples.
PointReport validate_point(const RingDescriptor& ring, const BasePoint& b, long sample_bound);

struct SpectrumPoint {
  int component = 0;
  BasePoint base = BasePoint::trivial();
  friend bool operator==(const SpectrumPoint&, const SpectrumPoint&) = default;
};

/// A seminorm on C_fin(X, R), given as an evaluation closure.
using Seminorm = std::function<NormValue(const CfinFunction&)>;

NormValue eval_seminorm(const SpectrumPoint& pt, const CfinFunction& f);

Seminorm G_inverse(int component, const BasePoint& b, const SpacePtr& x, const RingDescriptor& ring);

/// Recovers (ultrafilter, base point) from a seminorm oracle. Throws
/// NotUltrafilter or UnrecognizedBasePoint for oracles outside the image.
SpectrumPoint G_split(const Seminorm& x_oracle, const SpacePtr& x, const RingDescriptor& ring);

struct GelfandWitness {
  int quasi_components = 0;
  int recovered_classes = 0;
  std::vector<int> class_of_component;
  size_t points_checked = 0;
  bool bijective = false;
};

/// Throws DisconnectedSpectrum when the ring's spectrum is not connected.
GelfandWitness gelfand_roundtrip(const SpacePtr& x, const RingDescriptor& ring);

}  // namespace dbl

#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "dbl/ring.hpp"
#include "dbl/space.hpp"

namespace dbl {

using SpacePtr = std::shared_ptr<const FiniteSpace>;

inline SpacePtr make_space(FiniteSpace x) { return std::make_shared<const FiniteSpace>(std::move(x)); }

/// A finite-image continuous function X -> R, stored as one value per
/// quasi-component. Functions that are not constant on quasi-components
/// cannot be built, which is the whole continuity constraint at finite stage.
class CfinFunction {
 public:
  /// `values` has one entry per quasi-component.
  CfinFunction(SpacePtr space, RingDescriptor ring, std::vector<Element> values);

  /// One value per point; throws NotContinuous when not constant on components.
  static CfinFunction from_points(SpacePtr space, RingDescriptor ring, const std::vector<Element>& values);
  static CfinFunction from_points(SpacePtr space, RingDescriptor ring, std::initializer_list<long> values);
  static CfinFunction constant(SpacePtr space, RingDescriptor ring, const Element& c);
  static CfinFunction zero(SpacePtr space, RingDescriptor ring) { return constant(std::move(space), ring, 0); }

  const FiniteSpace& space() const noexcept { return *space_; }
  const SpacePtr& space_ptr() const noexcept { return space_; }
  const RingDescriptor& ring() const noexcept { return ring_; }
  const std::vector<Element>& values() const noexcept { return values_; }
  const Element& value(int component) const { return values_.at(static_cast<size_t>(component)); }
  /// Value at a point.
  const Element& eval(int x) const { return value(space_->component_of(x)); }
  std::vector<Element> point_values() const;

  bool is_zero() const;
  /// Points where the function is nonzero.
  Mask support() const;

  friend bool operator==(const CfinFunction& a, const CfinFunction& b);

 private:
  SpacePtr space_;
  RingDescriptor ring_;
  std::vector<Element> values_;
};

/// Throws SpaceMismatch / RingMismatch.
void require_compatible(const CfinFunction& f, const CfinFunction& g);

CfinFunction add(const CfinFunction& f, const CfinFunction& g);
CfinFunction sub(const CfinFunction& f, const CfinFunction& g);
CfinFunction mul(const CfinFunction& f, const CfinFunction& g);
CfinFunction scalar(const Element& a, const CfinFunction& f);
/// 1_U; throws NotClopen.
CfinFunction indicator(const SpacePtr& x, const RingDescriptor& ring, Mask u);

NormValue sup_norm(const CfinFunction& f);

/// The partition f^{-1}({m}) over the distinct values m, in order of first
/// occurrence along the points.
std::vector<std::pair<Mask, Element>> decompose(const CfinFunction& f);
/// Sum of 1_U * m over the blocks.
CfinFunction reconstruct(const SpacePtr& x, const RingDescriptor& ring,
                         const std::vector<std::pair<Mask, Element>>& blocks);

/// f o j for a continuous j: K -> X.
CfinFunction restrict(const CfinFunction& f, const PointMap& j, const SpacePtr& k);

/// The unique function on zeta(X) with g o iota = f.
CfinFunction extend_banaschewski(const CfinFunction& f);

/// Norm-preserving extension along a zeta-embedding j: K -> X, zero off the
/// image. Throws NotEmbedding.
CfinFunction tietze_extend(const CfinFunction& f, const PointMap& j, const SpacePtr& x);

/// U = union of supports; requires every f to vanish on x0 (NotInIdeal).
Mask dominating_idempotent(const std::vector<CfinFunction>& fs, Mask x0);

/// f = f0 * f1 with f0 = 1_{supp f} in I_{K0} and f1 = f in I_{K1}.
std::pair<CfinFunction, CfinFunction> ideal_product_split(const CfinFunction& f, Mask k0, Mask k1);

struct SumSplit {
  CfinFunction f0;   // vanishes on K0
  CfinFunction f1;   // vanishes on K1
  Mask separator;    // the clopen V with K0 in V and V disjoint from K1 \ f^{-1}(0)
};

/// f = f0 + f1 with f0 in I_{K0}, f1 in I_{K1} and ||f0|| + ||f1|| <= 2 ||f||,
/// using f0 = f * 1_{X \ V}, f1 = f * 1_V for the smallest clopen V around K0.
SumSplit ideal_sum_split(const CfinFunction& f, Mask k0, Mask k1);

/// Value of f along the ultrafilter of the given quasi-component.
Element limit_along(int component, const CfinFunction& f);

struct SeparationCheck {
  bool separates = false;
  std::optional<std::pair<int, int>> witness;  // indistinguishable components
};

SeparationCheck separates_points(const std::vector<CfinFunction>& fs, const FiniteSpace& x);

}  // namespace dbl

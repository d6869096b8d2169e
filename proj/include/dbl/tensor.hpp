#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "dbl/module.hpp"

namespace dbl {

/// An element of M0 (x) M1 as its coefficient matrix over the two bases.
/// Bilinearity over free bases makes the matrix representation-independent.
class TensorElement {
 public:
  TensorElement(WeightedFreeModule m0, WeightedFreeModule m1, IntMatrix coeffs);
  static TensorElement from_pairs(WeightedFreeModule m0, WeightedFreeModule m1,
                                  const std::vector<std::pair<IntVector, IntVector>>& pairs);
  static TensorElement zero(WeightedFreeModule m0, WeightedFreeModule m1);

  const WeightedFreeModule& left() const noexcept { return m0_; }
  const WeightedFreeModule& right() const noexcept { return m1_; }
  const IntMatrix& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const { return coeffs_.is_zero(); }

  friend bool operator==(const TensorElement& a, const TensorElement& b) {
    return a.m0_ == b.m0_ && a.m1_ == b.m1_ && a.coeffs_ == b.coeffs_;
  }

 private:
  WeightedFreeModule m0_;
  WeightedFreeModule m1_;
  IntMatrix coeffs_;
};

/// l(S0) (x) l(S1) for max-formula modules: basis pairs with product weights.
/// Throws ModeMismatch unless both are non-Archimedean, RingMismatch on
/// different rings.
WeightedFreeModule tensor_nonarch(const WeightedFreeModule& m0, const WeightedFreeModule& m1);

/// l(S0) (x) l(S1) for sum-formula single-block modules: again basis pairs
/// with product weights. The l^1 norm is the projective tensor norm here.
WeightedFreeModule tensor_l1(const WeightedFreeModule& m0, const WeightedFreeModule& m1);

/// Flattened coefficient vector of t in the product basis (row-major).
IntVector flatten(const TensorElement& t);

/// Exact tensor norm of t for non-Archimedean factors.
NormValue tensor_norm_nonarch(const TensorElement& t);

/// Sum of ||u_h|| ||v_h|| for an explicit representation.
NormValue representation_cost(const WeightedFreeModule& m0, const WeightedFreeModule& m1,
                              const std::vector<std::pair<IntVector, IntVector>>& pairs);

/// Best representation cost found: the entrywise, row and column
/// representations, then (over Z) factorizations t = U V^T with U in
/// [-2, 2]^{m0 x k}, enumerated in a fixed order from k = rank upwards and
/// stopping after `budget` candidate U. Monotone nonincreasing in budget.
/// Throws UnsupportedValue for irrational weights.
NormValue tensor_elem_norm_arch_upper(const TensorElement& t, long budget);

/// gap^2 * min weights * rank of the coefficient matrix: every representation
/// has at least rank terms and every nonzero term costs at least the product
/// of the two gaps.
NormValue tensor_rank_lower_bound(const TensorElement& t);

/// Rank over Q, F_p, or the largest rank mod p over p | n.
size_t coefficient_rank(const RingDescriptor& ring, const IntMatrix& a);

/// The absorbing-law bijection C_fin(X, M0) (x) M1 <-> C_fin(X, M0 (x) M1).
/// Tensors on the left use the basis (component, s0) of C_fin(X, M0).
struct AbsorbingMap {
  SpacePtr space;
  WeightedFreeModule source_left;  // C_fin(X, M0)
  WeightedFreeModule right;        // M1
  WeightedFreeModule target;       // M0 (x) M1
  std::function<CfinModuleFunction(const TensorElement&)> forward;
  std::function<TensorElement(const CfinModuleFunction&)> backward;
};

/// For max-formula modules the target is tensor_nonarch(M0, M1); otherwise
/// it is tensor_l1(M0, M1), which requires sum-formula inputs.
AbsorbingMap absorbing_map(const SpacePtr& x, const WeightedFreeModule& m0, const WeightedFreeModule& m1);

/// f_n = sum_i 1_{i} (x) delta_i over IntInf on the discrete space of n + 1
/// points, as an element of C_fin(X, Z) (x) l({0..n}).
TensorElement absorbing_counterexample(int n, const AbsorbingMap& map);
AbsorbingMap counterexample_map(int n);

struct BaseChangeQuotient {
  FinModule quotient;             // M / nM
  WeightedFreeModule tensor_side; // l(S, R/n)
  RingDescriptor scalars;         // R/n with the quotient (or trivial) norm
  size_t generators = 0;
};

/// M / nM for M over IntInf or IntTriv. The quotient ring is ZmodQuot(n) or
/// ZmodTriv(n); n = 1 gives the zero module.
BaseChangeQuotient base_change_quotient(const WeightedFreeModule& m, long n);

/// Class norm of v in M/nM against the norm of its image in l(S, R/n).
bool base_change_agrees(const BaseChangeQuotient& bc, const IntVector& v);

struct FreeBaseChange {
  WeightedFreeModule source;  // l(S, R)
  WeightedFreeModule target;  // l(S, A)
  bool isometric = false;
  size_t samples_checked = 0;
};

/// l(S, R) (x) A ~ l(S, A) along IntInf -> ZmodQuot(n), IntTriv -> FpTriv(p)
/// or IntTriv -> ZmodTriv(n). Checks on sampled coefficients that the
/// ring map is contractive with |1| = 1 and that the basis representation
/// of each image realizes its l(S, A) norm.
FreeBaseChange free_base_change(const WeightedFreeModule& s, const RingDescriptor& target);

}  // namespace dbl

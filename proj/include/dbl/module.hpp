#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dbl/function.hpp"
#include "dbl/linalg.hpp"
#include "dbl/norm_value.hpp"
#include "dbl/ring.hpp"

namespace dbl {

/// Sum of weighted coefficient norms, or their maximum.
enum class NormMode { Archimedean, NonArchimedean };

/// Free module l(S, R) on a weighted basis. Elements are coefficient vectors.
///
/// The basis may be grouped into blocks; the norm is the maximum over blocks
/// of the in-block formula. A single block is the ordinary l(S, R); one block
/// per component models C_fin(X, M) with its supremum norm.
class WeightedFreeModule {
 public:
  WeightedFreeModule(RingDescriptor ring, std::vector<std::string> labels, std::vector<NormValue> weights,
                     NormMode mode);

  /// Unit weights on the given labels.
  static WeightedFreeModule unit(RingDescriptor ring, std::vector<std::string> labels, NormMode mode);
  /// C_fin(X, M) for X with `components` quasi-components: basis (c, s), block c.
  static WeightedFreeModule cfin(int components, const WeightedFreeModule& m);

  const RingDescriptor& ring() const noexcept { return ring_; }
  NormMode mode() const noexcept { return mode_; }
  size_t rank() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<NormValue>& weights() const noexcept { return weights_; }
  const std::vector<int>& blocks() const noexcept { return block_of_; }
  /// True for max-formula modules over a non-Archimedean ring.
  bool non_archimedean() const noexcept { return mode_ == NormMode::NonArchimedean; }

  void check(const IntVector& v) const;
  IntVector reduce(const IntVector& v) const;
  NormValue norm(const IntVector& v) const;
  /// Every nonzero element has norm at least this.
  NormValue isolation_gap() const;
  NormValue min_weight() const;
  NormValue max_weight() const;

  friend bool operator==(const WeightedFreeModule& a, const WeightedFreeModule& b) {
    return a.ring_ == b.ring_ && a.labels_ == b.labels_ && a.weights_ == b.weights_ && a.mode_ == b.mode_ &&
           a.block_of_ == b.block_of_;
  }

 private:
  RingDescriptor ring_;
  std::vector<std::string> labels_;
  std::vector<NormValue> weights_;
  NormMode mode_;
  std::vector<int> block_of_;
};

/// A finitely presented module: an ambient weighted free module modulo the
/// Z-span of the relation rows, with the quotient norm.
///
/// The quotient norm is computed exactly in two regimes: relations that are
/// multiples of single basis vectors (coordinatewise quotient norms), and
/// max-formula modules over the trivially normed integers, where the norm of
/// a class is the least weight level w whose basis vectors together with the
/// relations reach it.
class FinModule {
 public:
  FinModule(WeightedFreeModule ambient, IntMatrix relations);

  const WeightedFreeModule& ambient() const noexcept { return ambient_; }
  const IntMatrix& relations() const noexcept { return relations_; }

  bool is_zero_class(const IntVector& v) const;
  /// A representative of the class of v of least norm.
  IntVector min_representative(const IntVector& v) const;
  NormValue norm(const IntVector& v) const;
  /// Nonzero classes have norm at least this.
  NormValue isolation_gap() const { return ambient_.isolation_gap(); }
  /// True when every class is zero.
  bool is_zero_module() const;

 private:
  bool diagonal_relations() const;

  WeightedFreeModule ambient_;
  IntMatrix relations_;
};

/// A function X -> M, one coefficient vector per quasi-component.
struct CfinModuleFunction {
  SpacePtr space;
  WeightedFreeModule module;
  std::vector<IntVector> values;
};

NormValue sup_norm(const CfinModuleFunction& f);

}  // namespace dbl

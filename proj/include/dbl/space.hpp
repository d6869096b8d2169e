#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace dbl {

/// Point subsets of a finite space, bit i = point i.
using Mask = std::uint32_t;
using PointSet = std::vector<int>;
/// A point map K -> X, given by the image of each point of K.
using PointMap = std::vector<int>;

inline constexpr int kMaxPoints = 12;
/// Discrete spaces may go further: their opens are every mask, so enumeration stays cheap.
inline constexpr int kMaxDiscretePoints = 20;

Mask mask_of(const PointSet& points);
PointSet points_of(Mask m);
inline Mask full_mask(int n) { return n == 0 ? 0 : (Mask(1) << n) - 1; }
inline bool contains(Mask m, int x) { return (m >> x) & 1u; }

/// A finite topological space presented by a generating family of opens.
///
/// The topology is the one generated by the family: its minimal open
/// neighbourhoods U_x are intersections of generators, and the opens are
/// exactly the sets S with U_x in S for every x in S. Quasi-components are
/// computed from the clopen algebra and indexed by their smallest point.
class FiniteSpace {
 public:
  FiniteSpace() = default;
  FiniteSpace(int points, std::vector<PointSet> generating_opens);

  static FiniteSpace discrete(int points);
  static FiniteSpace indiscrete(int points);
  /// Points {0, 1}, opens {}, {1}, {0, 1}.
  static FiniteSpace sierpinski();

  int size() const noexcept { return n_; }
  Mask all() const noexcept { return full_mask(n_); }
  const std::vector<PointSet>& generators() const noexcept { return generators_; }

  bool is_open(Mask m) const;
  bool is_closed(Mask m) const { return is_open(all() & ~m); }
  bool is_clopen(Mask m) const { return is_open(m) && is_closed(m); }
  bool is_discrete() const;

  /// All opens, ascending as masks.
  const std::vector<Mask>& opens() const noexcept { return opens_; }
  /// All clopens, ascending as masks.
  const std::vector<Mask>& clopens() const noexcept { return clopens_; }
  const std::vector<Mask>& quasi_components() const noexcept { return components_; }
  int component_count() const noexcept { return static_cast<int>(components_.size()); }
  int component_of(int x) const { return component_of_.at(static_cast<size_t>(x)); }
  /// Components meeting m.
  std::vector<int> components_meeting(Mask m) const;
  /// Union of the given components.
  Mask union_of_components(const std::vector<int>& comps) const;
  /// Smallest clopen containing m (the union of components meeting m).
  Mask clopen_hull(Mask m) const;
  Mask minimal_open(int x) const { return min_open_.at(static_cast<size_t>(x)); }

  /// Subspace topology on the points of m, relabelled in increasing order.
  FiniteSpace subspace(Mask m) const;

  friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) {
    return a.n_ == b.n_ && a.opens_ == b.opens_;
  }

 private:
  int n_ = 0;
  std::vector<PointSet> generators_;
  std::vector<Mask> min_open_;
  std::vector<Mask> opens_;
  std::vector<Mask> clopens_;
  std::vector<Mask> components_;
  std::vector<int> component_of_;
};

/// Canonically sorted clopens.
std::vector<Mask> clopens(const FiniteSpace& x);
std::vector<Mask> quasi_components(const FiniteSpace& x);

struct Compactification {
  FiniteSpace zeta;        // discrete on the quasi-components
  std::vector<int> iota;   // point -> component index
};

Compactification banaschewski(const FiniteSpace& x);

/// The clopen of zeta(X) whose iota-preimage is u. Throws NotClopen.
Mask clopen_closure(const FiniteSpace& x, Mask u);

/// One ultrafilter of CO(X) per quasi-component: the clopens containing it.
std::vector<std::vector<Mask>> ultrafilters(const FiniteSpace& x);

bool is_continuous(const PointMap& j, const FiniteSpace& k, const FiniteSpace& x);
/// Throws NotContinuous.
void require_continuous(const PointMap& j, const FiniteSpace& k, const FiniteSpace& x);

/// Component map zeta(K) -> zeta(X) induced by j.
std::vector<int> component_map(const PointMap& j, const FiniteSpace& k, const FiniteSpace& x);

struct EmbeddingCheck {
  bool embedding = false;
  /// Two components of K sent to the same component of X.
  std::optional<std::pair<int, int>> witness;
};

EmbeddingCheck zeta_embedding_check(const PointMap& j, const FiniteSpace& k, const FiniteSpace& x);

}  // namespace dbl

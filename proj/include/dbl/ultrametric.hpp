#pragma once

#include <random>
#include <vector>

#include <gmpxx.h>

namespace dbl {

/// Finite ultrametric space with rational distances.
class UltrametricSpace {
 public:
  /// Validates symmetry, zero diagonal, positivity off the diagonal and the
  /// ultrametric inequality; throws InvalidInput otherwise.
  explicit UltrametricSpace(std::vector<std::vector<mpq_class>> dist);

  int size() const noexcept { return static_cast<int>(dist_.size()); }
  const mpq_class& dist(int x, int y) const { return dist_[static_cast<size_t>(x)][static_cast<size_t>(y)]; }
  const std::vector<std::vector<mpq_class>>& matrix() const noexcept { return dist_; }

 private:
  std::vector<std::vector<mpq_class>> dist_;
};

struct BallNode {
  std::vector<int> points;     // sorted
  mpq_class radius;            // diameter of the ball (0 for singletons)
  int parent = -1;
  std::vector<int> children;   // ordered by smallest point
};

/// Tree of all distinct closed balls ordered by inclusion; node 0 is the root.
struct BallTree {
  std::vector<BallNode> nodes;
};

BallTree ball_tree(const UltrametricSpace& u);

/// Random ultrametric on n points: distances are heights of lowest common
/// ancestors in a random binary merge tree.
UltrametricSpace random_ultrametric(int n, std::mt19937_64& rng);

}  // namespace dbl

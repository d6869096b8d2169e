#include "dbl/ultrametric.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "dbl/error.hpp"

namespace dbl {

UltrametricSpace::UltrametricSpace(std::vector<std::vector<mpq_class>> dist) : dist_(std::move(dist)) {
  const size_t n = dist_.size();
  for (size_t i = 0; i < n; ++i) {
    if (dist_[i].size() != n) fail(ErrorKind::InvalidInput, "distance matrix is not square");
    for (auto& d : dist_[i]) d.canonicalize();
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (dist_[i][j] != dist_[j][i]) fail(ErrorKind::InvalidInput, "distance matrix is not symmetric");
      if ((i == j) != (dist_[i][j] == 0)) fail(ErrorKind::InvalidInput, "d(x,y) = 0 must hold exactly when x = y");
      if (dist_[i][j] < 0) fail(ErrorKind::InvalidInput, "negative distance");
    }
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y)
      for (size_t z = 0; z < n; ++z)
        if (dist_[x][z] > std::max(dist_[x][y], dist_[y][z])) {
          fail(ErrorKind::InvalidInput, "ultrametric inequality fails at (" + std::to_string(x) + "," +
                                            std::to_string(y) + "," + std::to_string(z) + ")");
        }
}

namespace {

void split(const UltrametricSpace& u, BallTree& tree, int node) {
  const std::vector<int> pts = tree.nodes[static_cast<size_t>(node)].points;
  if (pts.size() <= 1) return;
  mpq_class diam = 0;
  for (int a : pts)
    for (int b : pts) diam = std::max(diam, u.dist(a, b));
  tree.nodes[static_cast<size_t>(node)].radius = diam;
  // Maximal proper sub-balls: classes of the relation d(x, y) < diam.
  std::vector<bool> used(pts.size(), false);
  for (size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) continue;
    BallNode child;
    for (size_t j = i; j < pts.size(); ++j)
      if (!used[j] && u.dist(pts[i], pts[j]) < diam) {
        used[j] = true;
        child.points.push_back(pts[j]);
      }
    child.parent = node;
    int id = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(std::move(child));
    tree.nodes[static_cast<size_t>(node)].children.push_back(id);
  }
  for (int c : std::vector<int>(tree.nodes[static_cast<size_t>(node)].children)) split(u, tree, c);
}

}  // namespace

BallTree ball_tree(const UltrametricSpace& u) {
  BallTree tree;
  BallNode root;
  root.points.resize(static_cast<size_t>(u.size()));
  std::iota(root.points.begin(), root.points.end(), 0);
  tree.nodes.push_back(std::move(root));
  split(u, tree, 0);
  return tree;
}

UltrametricSpace random_ultrametric(int n, std::mt19937_64& rng) {
  std::vector<std::vector<mpq_class>> d(static_cast<size_t>(n), std::vector<mpq_class>(static_cast<size_t>(n), 0));
  std::vector<std::vector<int>> clusters;
  for (int i = 0; i < n; ++i) clusters.push_back({i});
  long height = 0;
  while (clusters.size() > 1) {
    // Heights strictly increase, occasionally merging several clusters at once.
    height += 1 + static_cast<long>(rng() % 3);
    std::uniform_int_distribution<size_t> pick(0, clusters.size() - 1);
    size_t a = pick(rng), b = pick(rng);
    while (b == a) b = pick(rng);
    std::vector<int> merged = clusters[a];
    merged.insert(merged.end(), clusters[b].begin(), clusters[b].end());
    if (clusters.size() > 2 && rng() % 4 == 0) {
      size_t c = pick(rng);
      if (c != a && c != b) {
        merged.insert(merged.end(), clusters[c].begin(), clusters[c].end());
        for (int x : clusters[c])
          for (int y : merged)
            if (x != y && d[static_cast<size_t>(x)][static_cast<size_t>(y)] == 0) {
              d[static_cast<size_t>(x)][static_cast<size_t>(y)] = height;
              d[static_cast<size_t>(y)][static_cast<size_t>(x)] = height;
            }
        clusters[c].clear();
      }
    }
    for (int x : clusters[a])
      for (int y : clusters[b]) {
        d[static_cast<size_t>(x)][static_cast<size_t>(y)] = height;
        d[static_cast<size_t>(y)][static_cast<size_t>(x)] = height;
      }
    clusters[a] = merged;
    clusters[b].clear();
    clusters.erase(std::remove_if(clusters.begin(), clusters.end(), [](const auto& c) { return c.empty(); }),
                   clusters.end());
  }
  return UltrametricSpace(std::move(d));
}

}  // namespace dbl

#include "dbl/space.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "dbl/error.hpp"

namespace dbl {

Mask mask_of(const PointSet& points) {
  Mask m = 0;
  for (int p : points) {
    if (p < 0 || p >= kMaxDiscretePoints) fail(ErrorKind::InvalidInput, "point index out of range: " + std::to_string(p));
    m |= Mask(1) << p;
  }
  return m;
}

PointSet points_of(Mask m) {
  PointSet out;
  for (int i = 0; m != 0; ++i, m >>= 1)
    if (m & 1u) out.push_back(i);
  return out;
}

FiniteSpace::FiniteSpace(int points, std::vector<PointSet> generating_opens)
    : n_(points), generators_(std::move(generating_opens)) {
  if (n_ < 0) fail(ErrorKind::InvalidInput, "negative point count");
  if (n_ > kMaxDiscretePoints) {
    fail(ErrorKind::SizeExceeded, "discrete spaces are capped at " + std::to_string(kMaxDiscretePoints) + " points");
  }
  const Mask all = full_mask(n_);
  std::vector<Mask> gens;
  for (auto& g : generators_) {
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    for (int p : g)
      if (p < 0 || p >= n_) fail(ErrorKind::InvalidInput, "open set mentions point " + std::to_string(p));
    gens.push_back(mask_of(g));
  }

  min_open_.assign(static_cast<size_t>(n_), all);
  for (int x = 0; x < n_; ++x)
    for (Mask g : gens)
      if (contains(g, x)) min_open_[static_cast<size_t>(x)] &= g;
  if (n_ > kMaxPoints && !is_discrete()) {
    fail(ErrorKind::SizeExceeded, "finite spaces are capped at " + std::to_string(kMaxPoints) + " points");
  }

  for (Mask s = 0; s <= all; ++s) {
    if (is_open(s)) opens_.push_back(s);
    if (s == all) break;
  }
  for (Mask s : opens_)
    if (is_open(all & ~s)) clopens_.push_back(s);

  component_of_.assign(static_cast<size_t>(n_), -1);
  for (int x = 0; x < n_; ++x) {
    if (component_of_[static_cast<size_t>(x)] >= 0) continue;
    Mask block = all;
    for (Mask c : clopens_)
      if (contains(c, x)) block &= c;
    for (int y : points_of(block)) component_of_[static_cast<size_t>(y)] = static_cast<int>(components_.size());
    components_.push_back(block);
  }
}

FiniteSpace FiniteSpace::discrete(int points) {
  std::vector<PointSet> gens;
  for (int i = 0; i < points; ++i) gens.push_back({i});
  return FiniteSpace(points, gens);
}

FiniteSpace FiniteSpace::indiscrete(int points) { return FiniteSpace(points, {}); }

FiniteSpace FiniteSpace::sierpinski() { return FiniteSpace(2, {{1}}); }

bool FiniteSpace::is_open(Mask m) const {
  if ((m & ~all()) != 0) return false;
  for (int x : points_of(m))
    if ((min_open_[static_cast<size_t>(x)] & ~m) != 0) return false;
  return true;
}

bool FiniteSpace::is_discrete() const {
  for (int x = 0; x < n_; ++x)
    if (min_open_[static_cast<size_t>(x)] != (Mask(1) << x)) return false;
  return true;
}

std::vector<int> FiniteSpace::components_meeting(Mask m) const {
  std::vector<int> out;
  for (size_t c = 0; c < components_.size(); ++c)
    if ((components_[c] & m) != 0) out.push_back(static_cast<int>(c));
  return out;
}

Mask FiniteSpace::union_of_components(const std::vector<int>& comps) const {
  Mask m = 0;
  for (int c : comps) m |= components_.at(static_cast<size_t>(c));
  return m;
}

Mask FiniteSpace::clopen_hull(Mask m) const { return union_of_components(components_meeting(m)); }

FiniteSpace FiniteSpace::subspace(Mask m) const {
  PointSet pts = points_of(m & all());
  std::vector<int> relabel(static_cast<size_t>(n_), -1);
  for (size_t i = 0; i < pts.size(); ++i) relabel[static_cast<size_t>(pts[i])] = static_cast<int>(i);
  std::vector<PointSet> gens;
  for (int x : pts) {
    PointSet trace;
    for (int y : points_of(min_open_[static_cast<size_t>(x)] & m)) trace.push_back(relabel[static_cast<size_t>(y)]);
    gens.push_back(trace);
  }
  return FiniteSpace(static_cast<int>(pts.size()), gens);
}

std::vector<Mask> clopens(const FiniteSpace& x) { return x.clopens(); }
std::vector<Mask> quasi_components(const FiniteSpace& x) { return x.quasi_components(); }

Compactification banaschewski(const FiniteSpace& x) {
  Compactification out{FiniteSpace::discrete(x.component_count()), {}};
  for (int p = 0; p < x.size(); ++p) out.iota.push_back(x.component_of(p));
  return out;
}

Mask clopen_closure(const FiniteSpace& x, Mask u) {
  if (!x.is_clopen(u)) fail(ErrorKind::NotClopen, "set " + std::to_string(u) + " is not clopen");
  Mask out = 0;
  for (int c : x.components_meeting(u)) out |= Mask(1) << c;
  return out;
}

std::vector<std::vector<Mask>> ultrafilters(const FiniteSpace& x) {
  std::vector<std::vector<Mask>> out;
  for (Mask block : x.quasi_components()) {
    std::vector<Mask> filter;
    for (Mask c : x.clopens())
      if ((c & block) == block) filter.push_back(c);
    out.push_back(std::move(filter));
  }
  return out;
}

bool is_continuous(const PointMap& j, const FiniteSpace& k, const FiniteSpace& x) {
  if (static_cast<int>(j.size()) != k.size()) return false;
  for (int v : j)
    if (v < 0 || v >= x.size()) return false;
  // Preimages of the minimal opens of X suffice: they generate the topology.
  for (int y = 0; y < x.size(); ++y) {
    Mask pre = 0;
    for (int p = 0; p < k.size(); ++p)
      if (contains(x.minimal_open(y), j[static_cast<size_t>(p)])) pre |= Mask(1) << p;
    if (!k.is_open(pre)) return false;
  }
  return true;
}

void require_continuous(const PointMap& j, const FiniteSpace& k, const FiniteSpace& x) {
  if (static_cast<int>(j.size()) != k.size()) fail(ErrorKind::InvalidInput, "point map has wrong length");
  if (!is_continuous(j, k, x)) fail(ErrorKind::NotContinuous, "point map is not continuous");
}

std::vector<int> component_map(const PointMap& j, const FiniteSpace& k, const FiniteSpace& x) {
  require_continuous(j, k, x);
  std::vector<int> out(static_cast<size_t>(k.component_count()), -1);
  for (int p = 0; p < k.size(); ++p) {
    out[static_cast<size_t>(k.component_of(p))] = x.component_of(j[static_cast<size_t>(p)]);
  }
  return out;
}

EmbeddingCheck zeta_embedding_check(const PointMap& j, const FiniteSpace& k, const FiniteSpace& x) {
  std::vector<int> cm = component_map(j, k, x);
  for (size_t a = 0; a < cm.size(); ++a)
    for (size_t b = a + 1; b < cm.size(); ++b)
      if (cm[a] == cm[b]) return {false, std::make_pair(static_cast<int>(a), static_cast<int>(b))};
  return {true, std::nullopt};
}

}  // namespace dbl

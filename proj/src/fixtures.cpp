#include "dbl/fixtures.hpp"

namespace dbl {

FiniteSpace glued_four_point() { return FiniteSpace(4, {{0, 1}, {2, 3}}); }

FiniteSpace two_sierpinski() { return FiniteSpace(4, {{1}, {3}, {0, 1}, {2, 3}}); }

FiniteSpace random_space(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, n + 1);
  std::uniform_int_distribution<Mask> subset(1, full_mask(n));
  std::vector<PointSet> gens;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) gens.push_back(points_of(subset(rng)));
  return FiniteSpace(n, gens);
}

std::vector<SpacePtr> fixture_spaces(std::uint64_t seed) {
  std::vector<SpacePtr> out;
  for (int n = 1; n <= 6; ++n) out.push_back(make_space(FiniteSpace::discrete(n)));
  out.push_back(make_space(FiniteSpace::indiscrete(2)));
  out.push_back(make_space(FiniteSpace::indiscrete(3)));
  out.push_back(make_space(FiniteSpace::sierpinski()));
  out.push_back(make_space(glued_four_point()));
  out.push_back(make_space(two_sierpinski()));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(3, 8);
  while (out.size() < 30) {
    FiniteSpace x = random_space(size(rng), rng);
    if (x.component_count() <= 6) out.push_back(make_space(std::move(x)));
  }
  return out;
}

}  // namespace dbl

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dbl/function.hpp"

namespace dbl {

inline constexpr std::uint64_t kFixtureSeed = 0x5eed2024ULL;

/// Opens generated by {0,1} and {2,3} on four points: two blocks.
FiniteSpace glued_four_point();
/// Two Sierpinski spaces side by side: opens {1}, {3}, {0,1}, {2,3}.
FiniteSpace two_sierpinski();

/// Topology generated by a few random subsets of n points.
FiniteSpace random_space(int n, std::mt19937_64& rng);

/// Thirty spaces with at most six quasi-components: discrete 1..6, the
/// indiscrete 2- and 3-point spaces, Sierpinski, the glued and doubled
/// examples, and seeded random topologies on 3..8 points.
std::vector<SpacePtr> fixture_spaces(std::uint64_t seed = kFixtureSeed);

}  // namespace dbl

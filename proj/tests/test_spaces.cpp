#include <algorithm>
#include <set>

#include "dbl/fixtures.hpp"
#include "dbl/space.hpp"
#include "dbl/ultrametric.hpp"
#include "support.hpp"

namespace dbl {
namespace {

std::vector<Mask> ms(std::initializer_list<PointSet> sets) {
  std::vector<Mask> out;
  for (const auto& s : sets) out.push_back(mask_of(s));
  return out;
}

// Closure of the generators under finite unions and intersections, plus the
// empty set and X: an independent oracle for the open-set lattice.
std::vector<Mask> topology_oracle(const FiniteSpace& x) {
  std::set<Mask> t{0, x.all()};
  for (const auto& g : x.generators()) t.insert(mask_of(g));
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<Mask> cur(t.begin(), t.end());
    for (Mask a : cur)
      for (Mask b : cur) grew |= t.insert(a | b).second | t.insert(a & b).second;
  }
  return {t.begin(), t.end()};
}

TEST(Spaces, ClopenExamples) {
  EXPECT_EQ(FiniteSpace::discrete(3).clopens().size(), 8u);
  EXPECT_EQ(FiniteSpace::sierpinski().clopens(), ms({{}, {0, 1}}));
  EXPECT_EQ(glued_four_point().clopens(), ms({{}, {0, 1}, {2, 3}, {0, 1, 2, 3}}));
}

TEST(Spaces, QuasiComponentExamples) {
  EXPECT_EQ(FiniteSpace::discrete(4).quasi_components(), ms({{0}, {1}, {2}, {3}}));
  EXPECT_EQ(FiniteSpace::sierpinski().quasi_components(), ms({{0, 1}}));
  EXPECT_EQ(two_sierpinski().quasi_components(), ms({{0, 1}, {2, 3}}));
}

TEST(Spaces, BanaschewskiExamples) {
  const auto d = banaschewski(FiniteSpace::discrete(3));
  EXPECT_EQ(d.zeta.size(), 3);
  EXPECT_EQ(d.iota, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(banaschewski(FiniteSpace::sierpinski()).zeta.size(), 1);
  const auto g = banaschewski(glued_four_point());
  EXPECT_EQ(g.zeta.size(), 2);
  EXPECT_TRUE(g.zeta.is_discrete());
  EXPECT_EQ(g.iota, (std::vector<int>{0, 0, 1, 1}));
}

TEST(Spaces, ClopenClosureExamples) {
  EXPECT_EQ(clopen_closure(FiniteSpace::discrete(3), mask_of({0})), mask_of({0}));
  EXPECT_EQ(clopen_closure(glued_four_point(), mask_of({0, 1})), mask_of({0}));
  EXPECT_EQ(clopen_closure(FiniteSpace::sierpinski(), 0), 0u);
  EXPECT_ERROR(clopen_closure(FiniteSpace::sierpinski(), mask_of({1})), ErrorKind::NotClopen);
}

TEST(Spaces, UltrafilterExamples) {
  EXPECT_EQ(ultrafilters(FiniteSpace::discrete(2)).size(), 2u);
  const auto s = ultrafilters(FiniteSpace::sierpinski());
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0], ms({{0, 1}}));
  EXPECT_EQ(ultrafilters(glued_four_point()).size(), 2u);
}

TEST(Spaces, EmbeddingExamples) {
  const auto one = FiniteSpace::discrete(1), two = FiniteSpace::discrete(2);
  EXPECT_TRUE(zeta_embedding_check({0}, one, two).embedding);
  const auto c = zeta_embedding_check({0, 0}, two, one);
  EXPECT_FALSE(c.embedding);
  ASSERT_TRUE(c.witness);
  EXPECT_EQ(*c.witness, std::make_pair(0, 1));
  EXPECT_TRUE(zeta_embedding_check({0, 0}, FiniteSpace::sierpinski(), two).embedding);
  // identity from discrete onto Sierpinski is continuous, the reverse is not
  EXPECT_ERROR(zeta_embedding_check({0, 1}, FiniteSpace::sierpinski(), two), ErrorKind::NotContinuous);
}

TEST(Spaces, SizeCap) {
  EXPECT_ERROR(FiniteSpace::indiscrete(13), ErrorKind::SizeExceeded);
  EXPECT_EQ(FiniteSpace::discrete(17).component_count(), 17);
  EXPECT_ERROR(FiniteSpace::discrete(kMaxDiscretePoints + 1), ErrorKind::SizeExceeded);
}

TEST(Spaces, FixturesAgainstOracles) {
  for (const auto& xp : fixture_spaces()) {
    const FiniteSpace& x = *xp;
    EXPECT_EQ(x.opens(), topology_oracle(x));
    std::vector<Mask> clo;
    for (Mask o : x.opens())
      if (std::find(x.opens().begin(), x.opens().end(), x.all() & ~o) != x.opens().end()) clo.push_back(o);
    EXPECT_EQ(x.clopens(), clo);
    // quasi-component oracle: same block iff no clopen separates
    for (int a = 0; a < x.size(); ++a)
      for (int b = 0; b < x.size(); ++b) {
        bool together = true;
        for (Mask c : clo) together &= contains(c, a) == contains(c, b);
        EXPECT_EQ(together, x.component_of(a) == x.component_of(b));
      }
  }
}

TEST(Spaces, BanaschewskiProperties) {
  for (const auto& xp : fixture_spaces()) {
    const auto bz = banaschewski(*xp);
    EXPECT_TRUE(bz.zeta.is_discrete());
    EXPECT_EQ(bz.zeta.size(), xp->component_count());
    EXPECT_EQ(ultrafilters(*xp).size(), static_cast<size_t>(bz.zeta.size()));
    const auto twice = banaschewski(bz.zeta);
    EXPECT_EQ(twice.zeta, bz.zeta);
    for (int i = 0; i < bz.zeta.size(); ++i) EXPECT_EQ(twice.iota[static_cast<size_t>(i)], i);
    for (Mask u : xp->clopens()) {
      const Mask bar = clopen_closure(*xp, u);
      Mask pre = 0;
      for (int x = 0; x < xp->size(); ++x)
        if (contains(bar, bz.iota[static_cast<size_t>(x)])) pre |= Mask(1) << x;
      EXPECT_EQ(pre, u);
    }
  }
}

UltrametricSpace um(std::vector<std::vector<long>> d) {
  std::vector<std::vector<mpq_class>> m;
  for (auto& r : d) {
    std::vector<mpq_class> row;
    for (long v : r) row.emplace_back(v);
    m.push_back(row);
  }
  return UltrametricSpace(m);
}

TEST(Ultrametric, BallTreeExamples) {
  EXPECT_EQ(ball_tree(um({{0}})).nodes.size(), 1u);
  const auto t = ball_tree(um({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}));
  ASSERT_EQ(t.nodes.size(), 5u);
  EXPECT_EQ(t.nodes[0].points, (std::vector<int>{0, 1, 2}));
  ASSERT_EQ(t.nodes[0].children.size(), 2u);
  EXPECT_EQ(t.nodes[static_cast<size_t>(t.nodes[0].children[0])].points, (std::vector<int>{0, 1}));
  EXPECT_EQ(t.nodes[static_cast<size_t>(t.nodes[0].children[1])].points, (std::vector<int>{2}));
  const auto flat = ball_tree(um({{0, 3, 3, 3}, {3, 0, 3, 3}, {3, 3, 0, 3}, {3, 3, 3, 0}}));
  EXPECT_EQ(flat.nodes.size(), 5u);
  EXPECT_EQ(flat.nodes[0].children.size(), 4u);
  EXPECT_ERROR(um({{0, 1, 5}, {1, 0, 2}, {5, 2, 0}}), ErrorKind::InvalidInput);
}

TEST(Ultrametric, BallsAreNestedOrDisjoint) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const auto u = random_ultrametric(1 + trial % 16, rng);
    const auto t = ball_tree(u);
    // every closed ball appears exactly once
    std::set<std::vector<int>> balls;
    for (int c = 0; c < u.size(); ++c)
      for (int r = 0; r < u.size(); ++r) {
        std::vector<int> b;
        for (int y = 0; y < u.size(); ++y)
          if (u.dist(c, y) <= u.dist(c, r)) b.push_back(y);
        balls.insert(b);
      }
    std::set<std::vector<int>> nodes;
    for (const auto& n : t.nodes) nodes.insert(n.points);
    EXPECT_EQ(nodes, balls);
    EXPECT_EQ(nodes.size(), t.nodes.size());
    for (const auto& a : t.nodes)
      for (const auto& b : t.nodes) {
        std::vector<int> i;
        std::set_intersection(a.points.begin(), a.points.end(), b.points.begin(), b.points.end(), std::back_inserter(i));
        EXPECT_TRUE(i.empty() || i == a.points || i == b.points);
      }
  }
}

}  // namespace
}  // namespace dbl

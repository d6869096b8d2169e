#include <set>

#include "dbl/fixtures.hpp"
#include "dbl/function.hpp"
#include "support.hpp"

namespace dbl {
namespace {

using testing::Gen;

const RingDescriptor Z = RingDescriptor::int_inf();

CfinFunction fn(const SpacePtr& x, std::initializer_list<long> v, const RingDescriptor& r = Z) {
  return CfinFunction::from_points(x, r, v);
}

// Every function on x with values in [-b, b], one value per component.
std::vector<CfinFunction> all_functions(const SpacePtr& x, const RingDescriptor& r, long b) {
  std::vector<CfinFunction> out;
  const auto comps = static_cast<size_t>(x->component_count());
  std::vector<long> v(comps, -b);
  while (true) {
    std::vector<Element> e;
    for (long a : v) e.push_back(r.reduce(a));
    out.emplace_back(x, r, e);
    size_t i = 0;
    while (i < comps && v[i] == b) v[i++] = -b;
    if (i == comps) break;
    ++v[i];
  }
  return out;
}

TEST(Functions, AlgebraExamples) {
  auto x = make_space(FiniteSpace::discrete(3));
  EXPECT_EQ(mul(indicator(x, Z, mask_of({0, 1})), indicator(x, Z, mask_of({1, 2}))), indicator(x, Z, mask_of({1})));
  EXPECT_EQ(add(fn(x, {1, 2, 3}), fn(x, {1, 1, 1})), fn(x, {2, 3, 4}));
  auto x2 = make_space(FiniteSpace::discrete(2));
  EXPECT_EQ(scalar(2, fn(x2, {0, 3})), fn(x2, {0, 6}));
  EXPECT_ERROR(add(fn(x, {1, 2, 3}), fn(x2, {1, 1})), ErrorKind::SpaceMismatch);
  EXPECT_ERROR(indicator(make_space(FiniteSpace::sierpinski()), Z, mask_of({1})), ErrorKind::NotClopen);
  EXPECT_ERROR(fn(make_space(FiniteSpace::sierpinski()), {1, 2}), ErrorKind::NotContinuous);
}

TEST(Functions, SupNormExamples) {
  auto x = make_space(FiniteSpace::discrete(3));
  EXPECT_EQ(sup_norm(fn(x, {2, -3, 5})), NormValue::rational(5));
  EXPECT_EQ(sup_norm(CfinFunction::zero(x, Z)), NormValue::zero());
  auto x2 = make_space(FiniteSpace::discrete(2));
  EXPECT_EQ(sup_norm(fn(x2, {3, 1}, RingDescriptor::zmod_quot(5))), NormValue::rational(2));
}

TEST(Functions, DecomposeExamples) {
  auto x = make_space(FiniteSpace::discrete(3));
  using Blocks = std::vector<std::pair<Mask, Element>>;
  EXPECT_EQ(decompose(fn(x, {2, 2, 5})), (Blocks{{mask_of({0, 1}), 2}, {mask_of({2}), 5}}));
  EXPECT_EQ(decompose(CfinFunction::constant(x, Z, 7)), (Blocks{{x->all(), 7}}));
  auto x4 = make_space(FiniteSpace::discrete(4));
  EXPECT_EQ(decompose(fn(x4, {0, 1, 0, 1})), (Blocks{{mask_of({0, 2}), 0}, {mask_of({1, 3}), 1}}));
}

TEST(Functions, RestrictExamples) {
  auto k = make_space(FiniteSpace::discrete(1));
  auto x = make_space(FiniteSpace::discrete(2));
  EXPECT_EQ(restrict(fn(x, {1, 2}), {0}, k), fn(k, {1}));
  EXPECT_EQ(restrict(CfinFunction::constant(x, Z, 4), {1}, k), CfinFunction::constant(k, Z, 4));
  auto s = make_space(FiniteSpace::sierpinski());
  auto x3 = make_space(FiniteSpace::discrete(3));
  EXPECT_EQ(restrict(fn(x3, {1, 2, 3}), {0, 0}, s), CfinFunction::constant(s, Z, 1));
}

TEST(Functions, ExtensionExamples) {
  auto x = make_space(FiniteSpace::discrete(3));
  EXPECT_EQ(extend_banaschewski(fn(x, {4, 5, 6})).point_values(), (std::vector<Element>{4, 5, 6}));
  auto s = make_space(FiniteSpace::sierpinski());
  EXPECT_EQ(extend_banaschewski(CfinFunction::constant(s, Z, 4)).point_values(), (std::vector<Element>{4}));
  auto g = make_space(glued_four_point());
  EXPECT_EQ(extend_banaschewski(fn(g, {2, 2, 9, 9})).point_values(), (std::vector<Element>{2, 9}));
}

TEST(Functions, TietzeExamples) {
  auto k = make_space(FiniteSpace::discrete(1));
  auto x = make_space(FiniteSpace::discrete(2));
  EXPECT_EQ(tietze_extend(fn(k, {5}), {0}, x), fn(x, {5, 0}));
  EXPECT_EQ(tietze_extend(fn(x, {3, -1}), {0, 1}, x), fn(x, {3, -1}));
  auto x4 = make_space(FiniteSpace::discrete(4));
  EXPECT_EQ(tietze_extend(fn(x, {7, -2}), {3, 1}, x4), fn(x4, {0, -2, 0, 7}));
  EXPECT_ERROR(tietze_extend(fn(x, {1, 2}), {0, 0}, k), ErrorKind::NotEmbedding);
}

TEST(Functions, IdealExamples) {
  auto x2 = make_space(FiniteSpace::discrete(2));
  auto x3 = make_space(FiniteSpace::discrete(3));
  EXPECT_EQ(dominating_idempotent({fn(x2, {0, 3})}, mask_of({0})), mask_of({1}));
  EXPECT_EQ(dominating_idempotent({CfinFunction::zero(x2, Z)}, x2->all()), 0u);
  EXPECT_EQ(dominating_idempotent({fn(x3, {0, 1, 0}), fn(x3, {0, 0, 2})}, mask_of({0})), mask_of({1, 2}));
  EXPECT_ERROR(dominating_idempotent({fn(x2, {1, 3})}, mask_of({0})), ErrorKind::NotInIdeal);

  const auto [p0, p1] = ideal_product_split(fn(x3, {0, 0, 6}), mask_of({0}), mask_of({1}));
  EXPECT_EQ(p0, indicator(x3, Z, mask_of({2})));
  EXPECT_EQ(p1, fn(x3, {0, 0, 6}));
  const auto [z0, z1] = ideal_product_split(CfinFunction::zero(x3, Z), mask_of({0}), mask_of({1}));
  EXPECT_EQ(z0, CfinFunction::zero(x3, Z));
  EXPECT_TRUE(z1.is_zero());

  const auto s = ideal_sum_split(fn(x3, {0, 4, 0}), mask_of({0}), mask_of({2}));
  EXPECT_EQ(s.separator, mask_of({0}));
  EXPECT_EQ(s.f0, fn(x3, {0, 4, 0}));
  EXPECT_TRUE(s.f1.is_zero());
  const auto t = ideal_sum_split(fn(x3, {1, 0, 1}), mask_of({1}), mask_of({1}));
  EXPECT_EQ(add(t.f0, t.f1), fn(x3, {1, 0, 1}));
  EXPECT_LE(sup_norm(t.f0) + sup_norm(t.f1), NormValue::rational(2));
  EXPECT_ERROR(ideal_sum_split(fn(x3, {1, 1, 1}), mask_of({1}), mask_of({1})), ErrorKind::NotInIdeal);
}

TEST(Functions, LimitsAndSeparation) {
  auto x3 = make_space(FiniteSpace::discrete(3));
  EXPECT_EQ(limit_along(2, fn(x3, {4, 5, 6})), 6);
  auto s = make_space(FiniteSpace::sierpinski());
  EXPECT_EQ(limit_along(0, CfinFunction::constant(s, Z, 3)), 3);
  auto g = make_space(glued_four_point());
  EXPECT_EQ(limit_along(1, fn(g, {1, 1, 7, 7})), 7);

  EXPECT_TRUE(separates_points({fn(x3, {0, 1, 2})}, *x3).separates);
  auto x2 = make_space(FiniteSpace::discrete(2));
  const auto c = separates_points({CfinFunction::constant(x2, Z, 1)}, *x2);
  EXPECT_FALSE(c.separates);
  EXPECT_EQ(*c.witness, std::make_pair(0, 1));
  EXPECT_TRUE(separates_points({fn(x3, {0, 1, 0}), fn(x3, {0, 0, 1})}, *x3).separates);
}

TEST(Functions, DecomposeReconstructOnFixtures) {
  for (const auto& x : fixture_spaces()) {
    if (x->component_count() > 4) continue;
    for (const auto& r : {Z, RingDescriptor::zmod_quot(5)})
      for (const auto& f : all_functions(x, r, 2)) {
        const auto blocks = decompose(f);
        Mask seen = 0;
        for (const auto& [u, m] : blocks) {
          EXPECT_NE(u, 0u);
          EXPECT_TRUE(x->is_clopen(u));
          EXPECT_EQ(seen & u, 0u);
          seen |= u;
        }
        EXPECT_EQ(seen, x->all());
        EXPECT_EQ(reconstruct(x, r, blocks), f);
      }
  }
}

TEST(Functions, IndicatorsFormBooleanAlgebra) {
  for (const auto& x : fixture_spaces())
    for (Mask u : x->clopens())
      for (Mask v : x->clopens()) {
        const auto iu = indicator(x, Z, u);
        EXPECT_EQ(mul(iu, iu), iu);
        EXPECT_EQ(mul(iu, indicator(x, Z, v)), indicator(x, Z, u & v));
      }
}

TEST(Functions, ExtensionIsIsometricInverseOfRestriction) {
  for (const auto& x : fixture_spaces()) {
    if (x->component_count() > 4) continue;
    const auto bz = banaschewski(*x);
    for (const auto& f : all_functions(x, Z, 2)) {
      const auto g = extend_banaschewski(f);
      EXPECT_EQ(sup_norm(g), sup_norm(f));
      EXPECT_EQ(restrict(g, bz.iota, x), f);
    }
  }
}

// I_{K0} I_{K1} = I_{K0 u K1} = I_{K0} n I_{K1}, by double inclusion over all
// functions with values in {-2..2} on discrete spaces of up to 3 points.
TEST(Functions, IdealArithmeticDoubleInclusion) {
  for (int n = 1; n <= 3; ++n) {
    auto x = make_space(FiniteSpace::discrete(n));
    const auto fs = all_functions(x, Z, 2);
    auto vanishes = [](const CfinFunction& f, Mask k) { return (f.support() & k) == 0; };
    for (Mask k0 = 0; k0 <= x->all(); ++k0)
      for (Mask k1 = 0; k1 <= x->all(); ++k1) {
        std::set<std::vector<Element>> products, joint, meet;
        for (const auto& g : fs)
          if (vanishes(g, k0))
            for (const auto& h : fs)
              if (vanishes(h, k1)) {
                const auto p = mul(g, h);
                EXPECT_TRUE(vanishes(p, k0 | k1));
                if (sup_norm(p) <= NormValue::rational(2)) products.insert(p.point_values());
              }
        for (const auto& f : fs) {
          EXPECT_EQ(vanishes(f, k0 | k1), vanishes(f, k0) && vanishes(f, k1));
          if (!vanishes(f, k0 | k1)) continue;
          joint.insert(f.point_values());
          const auto [f0, f1] = ideal_product_split(f, k0, k1);
          EXPECT_TRUE(vanishes(f0, k0));
          EXPECT_TRUE(vanishes(f1, k1));
          EXPECT_EQ(mul(f0, f1), f);
        }
        EXPECT_EQ(products, joint);
      }
  }
}

TEST(Functions, SumSplitBoundProperty) {
  Gen g(31);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = static_cast<int>(g.integer(1, 8));
    auto x = make_space(FiniteSpace::discrete(n));
    const auto& r = trial % 2 ? Z : RingDescriptor::zmod_quot(7);
    const Mask k0 = static_cast<Mask>(g.integer(0, x->all())), k1 = static_cast<Mask>(g.integer(0, x->all()));
    std::vector<Element> v;
    for (int p = 0; p < n; ++p) v.push_back(contains(k0 & k1, p) ? Element(0) : g.element(r, 9));
    const auto f = CfinFunction::from_points(x, r, v);
    const auto s = ideal_sum_split(f, k0, k1);
    EXPECT_EQ(add(s.f0, s.f1), f);
    EXPECT_EQ(s.f0.support() & k0, 0u);
    EXPECT_EQ(s.f1.support() & k1, 0u);
    EXPECT_LE(sup_norm(s.f0) + sup_norm(s.f1), NormValue::rational(2) * sup_norm(f));
  }
}

}  // namespace
}  // namespace dbl

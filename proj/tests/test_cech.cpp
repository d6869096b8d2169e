#include "dbl/cech.hpp"
#include "dbl/fixtures.hpp"
#include "support.hpp"

namespace dbl {
namespace {

const RingDescriptor Z = RingDescriptor::int_inf();

CoverFamily fam(int n, std::initializer_list<PointSet> sets) {
  std::vector<Mask> m;
  for (const auto& s : sets) m.push_back(mask_of(s));
  return make_family(make_space(FiniteSpace::discrete(n)), m);
}

// Every family of 1..max_sets subsets (nondecreasing masks) of discrete n.
template <class F>
void for_each_family(int n, int max_sets, F&& body) {
  auto x = make_space(FiniteSpace::discrete(n));
  const Mask top = x->all();
  for (int k = 1; k <= max_sets; ++k) {
    std::vector<Mask> sets(static_cast<size_t>(k), 0);
    while (true) {
      body(make_family(x, sets));
      int i = k - 1;
      while (i >= 0 && sets[static_cast<size_t>(i)] == top) --i;
      if (i < 0) break;
      ++sets[static_cast<size_t>(i)];
      for (int j = i + 1; j < k; ++j) sets[static_cast<size_t>(j)] = sets[static_cast<size_t>(i)];
    }
  }
}

TEST(Cech, BuildExamples) {
  const auto whole = build_tate_cech(fam(3, {{0, 1, 2}}), Z);
  EXPECT_EQ(whole.dims, (std::vector<size_t>{3, 3}));
  EXPECT_EQ(whole.differentials[0], IntMatrix::identity(3));
  EXPECT_EQ(build_tate_cech(fam(3, {{0, 1}, {1, 2}}), Z).dims, (std::vector<size_t>{3, 4, 1}));
  const auto one = build_tate_cech(fam(2, {{0}}), Z);
  EXPECT_EQ(one.dims, (std::vector<size_t>{2, 1}));
  EXPECT_EQ(integer_kernel(one.differentials[0]).cols(), 1u);
  EXPECT_ERROR(fam(2, {{0}, {0}, {0}, {0}, {0}, {0}, {1}}), ErrorKind::SizeExceeded);
  EXPECT_ERROR(make_family(make_space(FiniteSpace::sierpinski()), {mask_of({1})}), ErrorKind::NotClosed);
}

TEST(Cech, ExactnessExamples) {
  EXPECT_TRUE(exactness(build_tate_cech(fam(3, {{0, 1}, {1, 2}}), Z)).exact());
  const auto h = exactness(build_tate_cech(fam(3, {{0, 1}}), Z));
  EXPECT_FALSE(h.exact());
  EXPECT_EQ(h.homology[0].free_rank, 1u);
  // the zero ring gives the zero complex
  EXPECT_TRUE(exactness(build_tate_cech(fam(2, {{0}}), RingDescriptor::zmod_triv(1))).exact());
}

TEST(Cech, CoverExamples) {
  EXPECT_TRUE(is_cover(fam(3, {{0, 1}, {1, 2}})));
  EXPECT_FALSE(is_cover(fam(2, {{0}})));
  EXPECT_FALSE(is_cover(fam(1, {{}})));
}

TEST(Cech, EquivalenceExamples) {
  const auto r = tate_equivalence_report(fam(2, {{0}}), Z);
  EXPECT_FALSE(r.cover);
  EXPECT_FALSE(r.exact);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->point_values(), (std::vector<Element>{0, 1}));
  EXPECT_TRUE(tate_equivalence_report(fam(2, {{0}}), RingDescriptor::zmod_triv(1)).zero_ring);
  const auto sier = make_family(make_space(FiniteSpace::sierpinski()), {mask_of({0})});
  EXPECT_ERROR(tate_equivalence_report(sier, Z), ErrorKind::NotHausdorff);
}

TEST(Cech, WitnessExamples) {
  EXPECT_EQ(descent_faithful_witness(fam(2, {{0}}), Z).point_values(), (std::vector<Element>{0, 1}));
  EXPECT_EQ(descent_faithful_witness(fam(3, {{0}, {1}}), Z).point_values(), (std::vector<Element>{0, 0, 1}));
  EXPECT_ERROR(descent_faithful_witness(fam(2, {{0, 1}}), Z), ErrorKind::IsCover);
}

TEST(Cech, SectionExamples) {
  const auto s = fam(3, {{0, 1}, {1, 2}});
  const auto c = build_tate_cech(s, Z);
  const auto secs = strict_sections(c, s);
  ASSERT_FALSE(secs.empty());
  bool saw_split = false;
  for (const auto& sec : secs) {
    EXPECT_LE(sec.constant, NormValue::rational(sec.declared));
    EXPECT_LE(sec.declared, 2);
    saw_split |= sec.kind == "sum-split";
  }
  EXPECT_TRUE(saw_split);
  const auto id = fam(2, {{0, 1}});
  for (const auto& sec : strict_sections(build_tate_cech(id, Z), id)) EXPECT_EQ(sec.constant, NormValue::one());
}

// Over discrete X the complex splits pointwise into the augmented cochains of
// a simplex on the sets containing the point, which are exact unless no set
// contains it. So H_0 is free on the uncovered points and the rest vanishes.
TEST(Cech, HomologyMatchesPointwiseOracle) {
  const std::vector<RingDescriptor> rings{Z, RingDescriptor::int_triv(), RingDescriptor::fp_triv(2),
                                          RingDescriptor::zmod_quot(6)};
  for (int n = 1; n <= 3; ++n)
    for_each_family(n, 3, [&](const CoverFamily& s) {
      Mask u = 0;
      for (Mask k : s.sets) u |= k;
      const auto uncovered = static_cast<size_t>(n - std::popcount(u));
      for (const auto& r : rings)
        for (size_t rank : {size_t(1), size_t(2)}) {
          const auto c = build_tate_cech(s, r, rank);
          EXPECT_NO_THROW(verify_d_squared(c));
          const auto h = exactness(c);
          for (size_t k = 0; k < h.homology.size(); ++k) {
            const size_t expect = k == 0 ? uncovered * rank : 0;
            if (r.modulus() == 6) {
              mpz_class order;
              mpz_ui_pow_ui(order.get_mpz_t(), 6, expect);
              EXPECT_EQ(h.homology[k].order, order);
            } else {
              EXPECT_EQ(h.homology[k].free_rank, expect) << r.name();
              EXPECT_TRUE(h.homology[k].torsion.empty());
            }
          }
        }
    });
}

TEST(Cech, EnumerationAgrees) {
  for (const auto& r : {Z, RingDescriptor::int_triv(), RingDescriptor::fp_triv(2)}) {
    const auto rep = enumerate_equivalence(4, 3, r);
    EXPECT_EQ(rep.disagreements, 0u) << r.name();
    EXPECT_EQ(rep.module_disagreements, 0u);
    EXPECT_LE(rep.max_section_constant, 2.0);
    EXPECT_FALSE(rep.first_failure) << *rep.first_failure;
  }
}

TEST(Gluing, SinglePiece) {
  const auto s = fam(3, {{0, 1, 2}});
  const std::vector<PieceModule> pieces{{{1, 2, 1}}};
  const auto g = glue_modules(s, pieces, {});
  EXPECT_EQ(g.ranks, (std::vector<size_t>{1, 2, 1}));
  EXPECT_TRUE(glue_round_trip(s, pieces, {}, g));
}

TEST(Gluing, IdentityAndSignFlip) {
  const auto s = fam(3, {{0, 1}, {1, 2}});
  const std::vector<PieceModule> pieces{{{1, 1}}, {{1, 1}}};
  for (long sign : {1L, -1L}) {
    IntMatrix m(1, 1);
    m(0, 0) = sign;
    const std::vector<Transition> t{{0, 1, {m}}};
    const auto g = glue_modules(s, pieces, t);
    EXPECT_EQ(g.ranks, (std::vector<size_t>{1, 1, 1}));
    EXPECT_TRUE(glue_round_trip(s, pieces, t, g));
  }
}

TEST(Gluing, CocycleViolation) {
  const auto s = fam(2, {{0, 1}, {0, 1}, {0, 1}});
  const std::vector<PieceModule> pieces(3, PieceModule{{1, 1}});
  IntMatrix one(1, 1), neg(1, 1);
  one(0, 0) = 1;
  neg(0, 0) = -1;
  const std::vector<Transition> t{{0, 1, {one, one}}, {1, 2, {one, one}}, {0, 2, {one, neg}}};
  EXPECT_ERROR(glue_modules(s, pieces, t), ErrorKind::CocycleViolation);
  const std::vector<Transition> ok{{0, 1, {one, neg}}, {1, 2, {neg, one}}, {0, 2, {neg, neg}}};
  EXPECT_TRUE(glue_round_trip(s, pieces, ok, glue_modules(s, pieces, ok)));
  EXPECT_ERROR(glue_modules(s, pieces, {{0, 1, {one, one}}}), ErrorKind::InvalidInput);
  EXPECT_ERROR(glue_modules(fam(2, {{0}}), {PieceModule{{1}}}, {}), ErrorKind::InvalidInput);
}

}  // namespace
}  // namespace dbl

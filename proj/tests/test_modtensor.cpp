#include <algorithm>

#include "dbl/exactness.hpp"
#include "dbl/fixtures.hpp"
#include "dbl/tensor.hpp"
#include "support.hpp"

namespace dbl {
namespace {

using testing::Gen;

const RingDescriptor Zinf = RingDescriptor::int_inf();
const RingDescriptor Ztriv = RingDescriptor::int_triv();
constexpr auto Arch = NormMode::Archimedean;
constexpr auto NonArch = NormMode::NonArchimedean;

NormValue q(long a, long b = 1) { return NormValue::rational(mpq_class(a, b)); }

IntVector vec(std::initializer_list<long> v) { return IntVector(v.begin(), v.end()); }

IntMatrix random_matrix(Gen& g, size_t r, size_t c, long b) {
  IntMatrix a(r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) a(i, j) = g.integer(-b, b);
  return a;
}

// Entries of a over [-b, b], odometer order; returns false after the last.
bool next_matrix(IntMatrix& a, long b) {
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) < b) {
        a(i, j) += 1;
        return true;
      }
      a(i, j) = -b;
    }
  return false;
}

IntMatrix filled(size_t r, size_t c, long v) {
  IntMatrix a(r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) a(i, j) = v;
  return a;
}

TEST(Modules, NormFormulas) {
  const WeightedFreeModule sum(Zinf, {"a", "b"}, {q(1), q(3)}, Arch);
  EXPECT_EQ(sum.norm(vec({2, -1})), q(5));
  const WeightedFreeModule mx(Ztriv, {"a", "b"}, {q(1), q(3)}, NonArch);
  EXPECT_EQ(mx.norm(vec({2, -1})), q(3));
  EXPECT_EQ(mx.norm(vec({0, 0})), NormValue::zero());
  EXPECT_ERROR(WeightedFreeModule::unit(Zinf, {"a"}, NonArch), ErrorKind::ModeMismatch);
  EXPECT_ERROR(sum.norm(vec({1})), ErrorKind::SizeMismatch);
  // C_fin(X, M): supremum over components of the in-block norm
  const auto c = WeightedFreeModule::cfin(2, sum);
  EXPECT_EQ(c.rank(), 4u);
  EXPECT_EQ(c.norm(vec({1, 1, 5, 0})), q(5));
}

TEST(Modules, IsolationGapsSurviveQuotients) {
  Gen g(51);
  for (int trial = 0; trial < 60; ++trial) {
    const bool triv = trial % 2 == 0;
    const WeightedFreeModule m(triv ? Ztriv : Zinf, {"a", "b", "c"}, {q(1), q(2), q(1, 2)}, triv ? NonArch : Arch);
    IntMatrix rel(3, 3);
    if (triv) {
      rel = random_matrix(g, 1, 3, 2);
    } else {
      for (size_t s = 0; s < 3; ++s) rel(s, s) = g.integer(1, 5);
    }
    const FinModule fm(m, rel);
    for (int i = 0; i < 20; ++i) {
      const IntVector v{g.integer(-6, 6), g.integer(-6, 6), g.integer(-6, 6)};
      const NormValue n = fm.norm(v);
      EXPECT_EQ(n.is_zero(), fm.is_zero_class(v));
      if (!n.is_zero()) EXPECT_GE(n, fm.isolation_gap());
      EXPECT_LE(n, m.norm(v));
    }
  }
}

// Quotient norm against a scan of representatives v + sum k_i r_i with
// |k_i| <= 12. With |v_s| <= 9 and diagonal relations this reaches every
// residue near zero, so it contains a minimizer; for general lattices the scan
// is only an upper bound, and min_representative is the witness from below.
TEST(Modules, QuotientNormMatchesRepresentativeScan) {
  Gen g(52);
  for (int trial = 0; trial < 80; ++trial) {
    const bool triv = trial % 2 == 0;
    const WeightedFreeModule m(triv ? Ztriv : Zinf, {"a", "b"}, {q(1), q(3)}, triv ? NonArch : Arch);
    IntMatrix rel(2, 2);
    if (triv) {
      rel = random_matrix(g, 2, 2, 2);
    } else {
      rel(0, 0) = g.integer(1, 6);
      rel(1, 1) = g.integer(1, 6);
    }
    const FinModule fm(m, rel);
    const IntVector v{g.integer(-9, 9), g.integer(-9, 9)};
    NormValue best = m.norm(v);
    for (long k0 = -12; k0 <= 12; ++k0)
      for (long k1 = -12; k1 <= 12; ++k1) {
        IntVector w = v;
        for (size_t s = 0; s < 2; ++s) w[s] += k0 * rel(0, s) + k1 * rel(1, s);
        best = std::min(best, m.norm(w));
      }
    const IntVector rep = fm.min_representative(v);
    IntVector diff(2);
    for (size_t s = 0; s < 2; ++s) diff[s] = v[s] - rep[s];
    EXPECT_TRUE(fm.is_zero_class(diff));
    EXPECT_EQ(fm.norm(v), m.norm(rep));
    if (triv)
      EXPECT_LE(fm.norm(v), best) << "trial " << trial;
    else
      EXPECT_EQ(fm.norm(v), best) << "trial " << trial;
  }
}

TEST(Tensor, NonArchExamples) {
  const auto a = WeightedFreeModule::unit(Ztriv, {"a"}, NonArch);
  const auto b = WeightedFreeModule::unit(Ztriv, {"b"}, NonArch);
  const auto ab = tensor_nonarch(a, b);
  EXPECT_EQ(ab.labels(), (std::vector<std::string>{"(a,b)"}));
  EXPECT_EQ(ab.weights(), (std::vector<NormValue>{q(1)}));
  const auto m0 = WeightedFreeModule::unit(Ztriv, {"a", "b"}, NonArch);
  const WeightedFreeModule m1(Ztriv, {"c"}, {q(2)}, NonArch);
  EXPECT_EQ(tensor_nonarch(m0, m1).weights(), (std::vector<NormValue>{q(2), q(2)}));
  const auto m1u = WeightedFreeModule::unit(Ztriv, {"c"}, NonArch);
  EXPECT_EQ(tensor_norm_nonarch(TensorElement(m0, m1u, filled(2, 1, 1))), q(1));
  EXPECT_ERROR(tensor_nonarch(m0, WeightedFreeModule::unit(Zinf, {"c"}, Arch)), ErrorKind::ModeMismatch);
}

TEST(Tensor, NonArchNormIsMaxFormulaExhaustive) {
  const WeightedFreeModule m0(Ztriv, {"a", "b"}, {q(1), q(3)}, NonArch);
  const WeightedFreeModule m1(Ztriv, {"c", "d"}, {q(2), q(1, 2)}, NonArch);
  const auto target = tensor_nonarch(m0, m1);
  IntMatrix a = filled(2, 2, -2);
  do {
    NormValue expect;
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j)
        if (a(i, j) != 0) expect = max(expect, m0.weights()[i] * m1.weights()[j]);
    const TensorElement t(m0, m1, a);
    EXPECT_EQ(tensor_norm_nonarch(t), expect);
    EXPECT_EQ(target.norm(flatten(t)), expect);
  } while (next_matrix(a, 2));
}

TEST(Tensor, ArchBoundsExamples) {
  const auto a = WeightedFreeModule::unit(Zinf, {"a"}, Arch);
  const auto b = WeightedFreeModule::unit(Zinf, {"b"}, Arch);
  const TensorElement ab(a, b, filled(1, 1, 1));
  EXPECT_EQ(tensor_elem_norm_arch_upper(ab, 100), q(1));
  EXPECT_EQ(tensor_rank_lower_bound(ab), q(1));
  EXPECT_EQ(tensor_elem_norm_arch_upper(TensorElement::zero(a, b), 100), NormValue::zero());

  const auto e = WeightedFreeModule::unit(Zinf, {"e0", "e1", "e2"}, Arch);
  const auto f = WeightedFreeModule::unit(Zinf, {"f0", "f1", "f2"}, Arch);
  const TensorElement diag(e, f, IntMatrix::identity(3));
  EXPECT_EQ(tensor_elem_norm_arch_upper(diag, 2000), q(3));
  EXPECT_EQ(tensor_rank_lower_bound(diag), q(3));

  const auto bc = WeightedFreeModule::unit(Zinf, {"b", "c"}, Arch);
  EXPECT_EQ(tensor_rank_lower_bound(TensorElement(a, bc, filled(1, 2, 1))), q(1));
  const WeightedFreeModule irr(Zinf, {"x"}, {NormValue::power(2, mpq_class(1, 2))}, Arch);
  EXPECT_ERROR(tensor_elem_norm_arch_upper(TensorElement(irr, b, filled(1, 1, 1)), 10), ErrorKind::UnsupportedValue);
}

// Over l^1 (x) l^1 the projective norm is the weighted l^1 norm of the
// coefficient matrix; no representation can beat it, and the entrywise one
// attains it.
TEST(Tensor, ArchBoundsBracketL1Norm) {
  Gen g(53);
  for (int trial = 0; trial < 60; ++trial) {
    const size_t r0 = static_cast<size_t>(g.integer(1, 3)), r1 = static_cast<size_t>(g.integer(1, 3));
    std::vector<std::string> l0, l1;
    std::vector<NormValue> w0, w1;
    for (size_t i = 0; i < r0; ++i) l0.push_back("a" + std::to_string(i)), w0.push_back(q(g.integer(1, 3)));
    for (size_t j = 0; j < r1; ++j) l1.push_back("b" + std::to_string(j)), w1.push_back(q(g.integer(1, 3)));
    const WeightedFreeModule m0(Zinf, l0, w0, Arch), m1(Zinf, l1, w1, Arch);
    const TensorElement t(m0, m1, random_matrix(g, r0, r1, 2));
    NormValue l1norm;
    for (size_t i = 0; i < r0; ++i)
      for (size_t j = 0; j < r1; ++j) l1norm = l1norm + Zinf.norm(t.coeffs()(i, j)) * w0[i] * w1[j];
    const NormValue lo = tensor_rank_lower_bound(t), hi_small = tensor_elem_norm_arch_upper(t, 10),
                    hi = tensor_elem_norm_arch_upper(t, 500);
    EXPECT_LE(lo, hi);
    EXPECT_LE(hi, hi_small);
    EXPECT_EQ(hi, l1norm);
    EXPECT_EQ(tensor_l1(m0, m1).norm(flatten(t)), l1norm);
  }
}

TEST(Tensor, AbsorbingMapInverseAndIsometric) {
  const WeightedFreeModule m0(Ztriv, {"a", "b"}, {q(1), q(2)}, NonArch);
  const WeightedFreeModule m1(Ztriv, {"c", "d"}, {q(1), q(3)}, NonArch);
  for (const auto& x : {make_space(FiniteSpace::discrete(2)), make_space(glued_four_point())}) {
    const auto map = absorbing_map(x, m0, m1);
    const auto comps = static_cast<size_t>(x->component_count());
    IntMatrix a = filled(comps * 2, 2, -1);
    do {
      const TensorElement t(map.source_left, map.right, a);
      const auto f = map.forward(t);
      EXPECT_EQ(map.backward(f), t);
      EXPECT_EQ(sup_norm(f), tensor_norm_nonarch(t));
    } while (next_matrix(a, 1));
  }
  // f = 1_U (x) m  goes to the function 1_U * m
  auto x = make_space(FiniteSpace::discrete(2));
  const auto map = absorbing_map(x, m0, m1);
  const auto t = TensorElement::from_pairs(map.source_left, map.right, {{vec({1, 0, 0, 0}), vec({0, 1})}});
  const auto f = map.forward(t);
  EXPECT_EQ(f.values[0], vec({0, 1, 0, 0}));
  EXPECT_EQ(f.values[1], vec({0, 0, 0, 0}));
}

TEST(Tensor, ArchimedeanCounterexample) {
  for (int n = 1; n <= 16; ++n) {
    const auto map = counterexample_map(n);
    const auto t = absorbing_counterexample(n, map);
    EXPECT_EQ(tensor_rank_lower_bound(t), q(n + 1));
    EXPECT_EQ(sup_norm(map.forward(t)), q(1));
    EXPECT_EQ(map.backward(map.forward(t)), t);
  }
}

TEST(Tensor, BaseChangeQuotientExamples) {
  const auto a = WeightedFreeModule::unit(Zinf, {"a"}, Arch);
  const auto two = base_change_quotient(a, 2);
  EXPECT_EQ(two.generators, 1u);
  EXPECT_EQ(two.scalars, RingDescriptor::zmod_quot(2));
  EXPECT_EQ(base_change_quotient(a, 5).quotient.norm(vec({3})), q(2));
  EXPECT_TRUE(base_change_quotient(a, 1).quotient.is_zero_module());
  EXPECT_EQ(base_change_quotient(a, 1).generators, 0u);
  EXPECT_ERROR(base_change_quotient(WeightedFreeModule::unit(RingDescriptor::fp_triv(3), {"a"}, Arch), 2),
               ErrorKind::UnsupportedRing);
}

TEST(Tensor, BaseChangeQuotientAgreesWithTensorSide) {
  const WeightedFreeModule m(Zinf, {"a", "b"}, {q(1), q(2)}, Arch);
  const WeightedFreeModule mt(Ztriv, {"a", "b"}, {q(1), q(2)}, NonArch);
  for (long n = 1; n <= 7; ++n)
    for (const auto& mod : {m, mt}) {
      const auto bc = base_change_quotient(mod, n);
      for (long x = -3 * n; x <= 3 * n; ++x)
        for (long y = -3; y <= 3; ++y) {
          const IntVector v{x, y};
          EXPECT_TRUE(base_change_agrees(bc, v)) << n << " " << x << " " << y;
          EXPECT_LE(bc.quotient.norm(v), mod.norm(v));
          // every representative within 3n is at least the class norm
          for (long k = -3; k <= 3; ++k) EXPECT_LE(bc.quotient.norm(v), mod.norm(IntVector{x + k * n, y}));
        }
    }
}

TEST(Tensor, FreeBaseChangeExamples) {
  const auto ab = WeightedFreeModule::unit(Ztriv, {"a", "b"}, NonArch);
  const auto f3 = free_base_change(ab, RingDescriptor::fp_triv(3));
  EXPECT_TRUE(f3.isometric);
  EXPECT_EQ(f3.target.labels(), ab.labels());
  const WeightedFreeModule w(Ztriv, {"a"}, {q(2)}, NonArch);
  EXPECT_EQ(free_base_change(w, RingDescriptor::zmod_triv(4)).target.weights(), w.weights());
  const auto z4 = free_base_change(WeightedFreeModule::unit(Zinf, {"a", "b"}, Arch), RingDescriptor::zmod_quot(4));
  EXPECT_TRUE(z4.isometric);
  EXPECT_GT(z4.samples_checked, 0u);
  EXPECT_ERROR(free_base_change(WeightedFreeModule::unit(Zinf, {"a"}, Arch), Ztriv), ErrorKind::UnsupportedHom);
}

TEST(Exactness, StrictSequencesOnFixtures) {
  std::mt19937_64 rng(54);
  const auto spaces = fixture_spaces();
  for (int i = 0; i < 30; ++i) {
    const auto seq = random_strict_sequence(rng);
    const auto report = check_strong_exactness(spaces[static_cast<size_t>(i)], seq, rng, 6);
    EXPECT_TRUE(report.ok()) << i;
    EXPECT_LE(report.worst_c1_ratio, seq.c1);
  }
}

TEST(Exactness, RejectsBadSequences) {
  const auto m0 = WeightedFreeModule::unit(Ztriv, {"a"}, NonArch);
  const auto m1 = WeightedFreeModule::unit(Ztriv, {"b", "c"}, NonArch);
  EXPECT_ERROR(make_strict_sequence(m0, m1, IntMatrix(2, 1)), ErrorKind::ValidationFailure);
  EXPECT_ERROR(make_strict_sequence(m0, m1, IntMatrix(3, 1)), ErrorKind::SizeMismatch);
  EXPECT_ERROR(make_strict_sequence(WeightedFreeModule::unit(Zinf, {"a"}, Arch), WeightedFreeModule::unit(Zinf, {"b"}, Arch),
                                    filled(1, 1, 1)),
               ErrorKind::UnsupportedRing);
}

}  // namespace
}  // namespace dbl

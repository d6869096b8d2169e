#include "dbl/norm_value.hpp"
#include "dbl/ring.hpp"
#include "support.hpp"

namespace dbl {
namespace {

using testing::Gen;

NormValue nv(long q) { return NormValue::rational(q); }
NormValue pw(long q, long num, long den) { return NormValue::power(mpq_class(q), mpq_class(num, den)); }

TEST(NormValue, CanonicalForm) {
  EXPECT_TRUE(NormValue::power(1, mpq_class(3, 2)).is_one());
  EXPECT_TRUE(NormValue::power(5, 0).is_one());
  // 4^(1/2) is stored as 2.
  EXPECT_EQ(pw(4, 1, 2), nv(2));
  EXPECT_TRUE(pw(4, 1, 2).is_rational());
  EXPECT_EQ(pw(8, 1, 3), nv(2));
  EXPECT_FALSE(pw(2, 1, 2).is_rational());
  EXPECT_ERROR(pw(2, 1, 2).as_rational(), ErrorKind::UnsupportedValue);
}

TEST(NormValue, CompareExamples) {
  EXPECT_LT(pw(7, 1, 2), nv(3));
  EXPECT_LT(NormValue::zero(), NormValue::one());
  EXPECT_EQ(pw(2, 3, 2), pw(2, 3, 2));
  EXPECT_GT(pw(10, 1, 2), nv(3));
  EXPECT_GT(pw(9, 1, 3), pw(3, 1, 2));  // 3^(2/3) against 3^(1/2)
}

TEST(NormValue, ParseRoundTrip) {
  for (const auto& v : {NormValue::zero(), nv(3), NormValue::rational(mpq_class(2, 7)), pw(2, 3, 2), pw(6, 1, 3)})
    EXPECT_EQ(NormValue::parse(v.to_string()), v) << v.to_string();
}

TEST(NormValue, ArithmeticRules) {
  EXPECT_EQ(nv(2) + nv(3), nv(5));
  EXPECT_EQ(NormValue::zero() * pw(2, 1, 2), NormValue::zero());
  EXPECT_EQ(pw(2, 1, 2) * pw(2, 1, 2), nv(2));
  EXPECT_EQ(pw(2, 1, 2) * pw(3, 1, 2), pw(6, 1, 2));
  EXPECT_ERROR(pw(2, 1, 2) + nv(1), ErrorKind::UnsupportedValue);
  EXPECT_EQ(max(nv(2), pw(5, 1, 2)), pw(5, 1, 2));
}

TEST(NormValue, OrderIsTotalAndConsistent) {
  Gen g(11);
  std::vector<NormValue> vals{NormValue::zero()};
  for (int i = 0; i < 40; ++i)
    vals.push_back(NormValue::power(mpq_class(g.integer(1, 12), g.integer(1, 5)), mpq_class(g.integer(0, 6), g.integer(1, 4))));
  for (const auto& a : vals)
    for (const auto& b : vals) {
      EXPECT_EQ((a <=> b) == 0, a == b);
      EXPECT_EQ(a < b, b > a);
      // numeric agreement up to rounding for well-separated values
      if (std::abs(a.to_double() - b.to_double()) > 1e-9) EXPECT_EQ(a < b, a.to_double() < b.to_double());
      for (const auto& c : vals)
        if (a <= b && b <= c) EXPECT_LE(a, c);
    }
  for (const auto& a : vals) EXPECT_LE(NormValue::zero(), a);
}

TEST(Ring, NormExamples) {
  EXPECT_EQ(RingDescriptor::int_inf().norm(-7), nv(7));
  EXPECT_EQ(RingDescriptor::int_triv().norm(42), nv(1));
  EXPECT_EQ(RingDescriptor::zmod_quot(5).norm(4), nv(1));
  EXPECT_ERROR(RingDescriptor::zmod_quot(5).norm(5), ErrorKind::ElementOutOfRange);
  EXPECT_ERROR(RingDescriptor::fp_triv(3).norm(-1), ErrorKind::ElementOutOfRange);
}

TEST(Ring, QuotientNormExamples) {
  EXPECT_EQ(quotient_norm(5, 0), NormValue::zero());
  EXPECT_EQ(quotient_norm(5, 3), nv(2));
  EXPECT_EQ(quotient_norm(2, 1), nv(1));
}

TEST(Ring, QuotientNormOracle) {
  // Brute-force minimum over representatives a + kn with |k| <= 10.
  for (long n = 2; n <= 12; ++n)
    for (long a = 0; a < n; ++a) {
      long best = -1;
      for (long k = -10; k <= 10; ++k) {
        const long r = std::labs(a + k * n);
        if (best < 0 || r < best) best = r;
      }
      EXPECT_EQ(quotient_norm(n, a), nv(best)) << n << " " << a;
      for (long r = -3 * n; r <= 3 * n; ++r)
        if (((r % n) + n) % n == a) EXPECT_LE(quotient_norm(n, a), nv(std::labs(r)));
    }
}

TEST(Ring, Flags) {
  EXPECT_TRUE(RingDescriptor::int_inf().ordered());
  EXPECT_TRUE(RingDescriptor::int_triv().ordered());
  EXPECT_FALSE(RingDescriptor::fp_triv(5).ordered());
  EXPECT_FALSE(RingDescriptor::int_inf().non_archimedean());
  EXPECT_TRUE(RingDescriptor::int_triv().non_archimedean());
  EXPECT_TRUE(RingDescriptor::zmod_quot(3).non_archimedean());
  EXPECT_FALSE(RingDescriptor::zmod_quot(5).non_archimedean());
  EXPECT_ERROR(RingDescriptor::fp_triv(4), ErrorKind::UnsupportedRing);
  EXPECT_EQ(RingDescriptor::zmod_quot(6).name(), "ZmodQuot(6)");
}

TEST(Ring, ValidateExamples) {
  const auto inf = validate_ring(RingDescriptor::int_inf(), 50);
  EXPECT_TRUE(inf.submultiplicative && inf.multiplicative && inf.isolated && inf.triangle);
  EXPECT_EQ(inf.gap, nv(1));
  EXPECT_EQ(inf.one_norm, nv(1));
  EXPECT_TRUE(validate_ring(RingDescriptor::zmod_quot(6), 6).submultiplicative);
  EXPECT_TRUE(validate_ring(RingDescriptor::int_triv(), 50).strong_triangle);
}

TEST(Ring, NormLawsProperty) {
  Gen g(12);
  for (const auto& r : testing::all_rings()) {
    for (int i = 0; i < 300; ++i) {
      const Element a = g.element(r, 40), b = g.element(r, 40);
      EXPECT_LE(r.norm(r.mul(a, b)), r.norm(a) * r.norm(b)) << r.name();
      EXPECT_EQ(r.norm(a).is_zero(), a == 0);
      if (!r.norm(a).is_zero()) EXPECT_GE(r.norm(a), r.isolation_gap());
      if (r.kind() == RingKind::IntInf || r.kind() == RingKind::IntTriv)
        EXPECT_EQ(r.norm(r.mul(a, b)), r.norm(a) * r.norm(b));
      if (r.non_archimedean())
        EXPECT_LE(r.norm(r.add(a, b)), max(r.norm(a), r.norm(b)));
      else
        EXPECT_LE(r.norm(r.add(a, b)), r.norm(a) + r.norm(b));
    }
  }
}

TEST(Ring, NonArchimedeanFlagMatchesStrongTriangle) {
  for (long n = 2; n <= 9; ++n) {
    const auto r = RingDescriptor::zmod_quot(n);
    bool strong = true;
    for (long a = 0; a < n; ++a)
      for (long b = 0; b < n; ++b)
        if (r.norm(r.add(a, b)) > max(r.norm(a), r.norm(b))) strong = false;
    EXPECT_EQ(r.non_archimedean(), strong) << n;
  }
}

}  // namespace
}  // namespace dbl

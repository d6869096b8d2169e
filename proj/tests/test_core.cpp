#include <cstdlib>
#include <numeric>

#include "dbl/fixtures.hpp"
#include "dbl/json_io.hpp"
#include "dbl/linalg.hpp"
#include "dbl/parallel.hpp"
#include "support.hpp"

namespace dbl {
namespace {

using testing::Gen;

IntMatrix random_matrix(Gen& g, size_t r, size_t c, long b) {
  IntMatrix a(r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) a(i, j) = g.integer(-b, b);
  return a;
}

TEST(Linalg, SmithFormProperties) {
  Gen g(71);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = static_cast<size_t>(g.integer(1, 5)), c = static_cast<size_t>(g.integer(1, 5));
    IntMatrix a = random_matrix(g, r, c, 4);
    if (trial % 4 == 0 && r > 1)
      for (size_t j = 0; j < c; ++j) a(r - 1, j) = 2 * a(0, j);  // force a dependency
    const auto s = smith_normal_form(a);
    const IntMatrix d = s.U * a * s.V;
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j) EXPECT_EQ(d(i, j), i == j && i < s.rank() ? s.diagonal[i] : mpz_class(0));
    EXPECT_EQ(abs(determinant(s.U)), 1);
    EXPECT_EQ(abs(determinant(s.V)), 1);
    for (size_t i = 0; i + 1 < s.rank(); ++i) EXPECT_EQ(s.diagonal[i + 1] % s.diagonal[i], 0);
    EXPECT_EQ(s.rank(), rank_q(a));
    if (r == c) {
      mpz_class prod = s.rank() == r ? 1 : 0;
      for (const auto& x : s.diagonal) prod *= x;
      EXPECT_EQ(abs(determinant(a)), prod);
    }
    // rank mod p counts the invariant factors p does not divide
    for (long p : {2L, 3L, 5L}) {
      size_t expect = 0;
      for (const auto& x : s.diagonal) expect += x % p != 0;
      EXPECT_EQ(rank_mod_p(a, p), expect);
    }
  }
}

TEST(Linalg, KernelAndSolve) {
  Gen g(72);
  for (int trial = 0; trial < 150; ++trial) {
    const auto r = static_cast<size_t>(g.integer(1, 4)), c = static_cast<size_t>(g.integer(1, 5));
    const IntMatrix a = random_matrix(g, r, c, 3);
    const IntMatrix k = integer_kernel(a);
    EXPECT_EQ(k.cols(), c - rank_q(a));
    if (!k.empty()) EXPECT_TRUE((a * k).is_zero());
    IntVector x0(c);
    for (auto& v : x0) v = g.integer(-5, 5);
    const IntVector b = a.apply(x0);
    const auto sol = solve_integer(a, b);
    ASSERT_TRUE(sol);
    EXPECT_EQ(a.apply(*sol), b);
  }
  // 2x = 1 has no integer solution
  IntMatrix two(1, 1);
  two(0, 0) = 2;
  EXPECT_FALSE(solve_integer(two, IntVector{1}));
  EXPECT_FALSE(inverse_unimodular(two));
  const auto u = IntMatrix::from_rows({IntVector{2, 1}, IntVector{1, 1}}, 2);
  EXPECT_EQ(u * *inverse_unimodular(u), IntMatrix::identity(2));
}

TEST(Linalg, HomologyOfSmallComplexes) {
  // Z --2--> Z : cokernel Z/2 in degree 1, nothing in degree 0
  IntMatrix two(1, 1);
  two(0, 0) = 2;
  const auto h1 = homology(two, IntMatrix(0, 1), 1, 0);
  EXPECT_EQ(h1.free_rank, 0u);
  EXPECT_EQ(h1.torsion, (std::vector<mpz_class>{2}));
  EXPECT_TRUE(homology(IntMatrix(1, 0), two, 1, 0).vanishes());
  EXPECT_EQ(homology(two, IntMatrix(0, 1), 1, 2).free_rank, 1u);
  EXPECT_EQ(homology(two, IntMatrix(0, 1), 1, 4).order, 2);
  EXPECT_EQ(kronecker(IntMatrix::identity(2), two), IntMatrix::from_rows({IntVector{2, 0}, IntVector{0, 2}}, 2));
}

TEST(Json, RingParsing) {
  EXPECT_EQ(parse_ring("IntInf"), RingDescriptor::int_inf());
  EXPECT_EQ(parse_ring(" ZmodQuot(6) "), RingDescriptor::zmod_quot(6));
  EXPECT_EQ(parse_ring("FpTriv(3)"), RingDescriptor::fp_triv(3));
  for (const auto& r : testing::all_rings()) {
    EXPECT_EQ(ring_from_json(to_json(r)), r);
    EXPECT_EQ(ring_from_json(Json(r.name())), r);
  }
  EXPECT_EQ(to_json(RingDescriptor::fp_triv(3)).dump(), R"({"kind":"FpTriv","p":3})");
  for (const char* bad : {"Int", "FpTriv", "IntInf(2)", "ZmodQuot(99999999999999999999)"})
    EXPECT_ERROR(parse_ring(bad), ErrorKind::InvalidInput);
  for (const char* bad : {"FpTriv(4)", "ZmodQuot(1)", "ZmodTriv(0)"}) EXPECT_ERROR(parse_ring(bad), ErrorKind::UnsupportedRing);
}

TEST(Json, RoundTrips) {
  for (const auto& x : fixture_spaces()) {
    const auto back = space_from_json(parse_json(to_json(*x).dump()));
    EXPECT_EQ(back, *x);
  }
  EXPECT_EQ(space_from_json(parse_json(R"({"discrete": 3})")), FiniteSpace::discrete(3));
  EXPECT_ERROR(space_from_json(parse_json(R"({"points": 13, "opens": []})")), ErrorKind::SizeExceeded);
  EXPECT_ERROR(space_from_json(parse_json(R"({"points": 2, "opens": [[0, 5]]})")), ErrorKind::ElementOutOfRange);
  EXPECT_ERROR(space_from_json(parse_json(R"({"opens": []})")), ErrorKind::InvalidInput);
  EXPECT_ERROR(parse_json("{points: 2"), ErrorKind::InvalidInput);

  auto x = make_space(FiniteSpace::discrete(3));
  const auto r = RingDescriptor::int_inf();
  const auto f = CfinFunction::from_points(x, r, {1, -2, 3});
  EXPECT_EQ(function_from_json(to_json(f), x, r), f);
  EXPECT_EQ(integer_from_json(to_json(mpz_class("123456789012345678901234567890"))),
            mpz_class("123456789012345678901234567890"));
  EXPECT_EQ(rational_from_json(Json("6/4")), mpq_class(3, 2));
  EXPECT_ERROR(rational_from_json(Json("1/0")), ErrorKind::InvalidInput);

  for (const auto& b : {BasePoint::arch_pow(mpq_class(1, 2)), BasePoint::padic_pow(3, 1), BasePoint::padic_residue(5),
                        BasePoint::trivial()})
    EXPECT_EQ(base_point_from_json(to_json(b)), b);

  std::mt19937_64 rng(73);
  const auto u = random_ultrametric(5, rng);
  EXPECT_EQ(ultrametric_from_json(to_json(u)).matrix(), u.matrix());
}

TEST(Parallel, WorkerCapAndErrors) {
  ::setenv("DBL_WORKERS", "1", 1);
  EXPECT_EQ(worker_count(), 1);
  ::setenv("DBL_WORKERS", "3", 1);
  EXPECT_EQ(worker_count(), 3);
  std::vector<long> out(1000);
  parallel_for(out.size(), [&](size_t i) { out[i] = static_cast<long>(i) * 2; });
  EXPECT_EQ(std::accumulate(out.begin(), out.end(), 0L), 999L * 1000L);
  EXPECT_THROW(parallel_for(50, [](size_t i) {
                 if (i == 17) fail(ErrorKind::InvalidInput, "boom");
               }),
               Error);
  ::unsetenv("DBL_WORKERS");
  EXPECT_GE(worker_count(), 1);
}

}  // namespace
}  // namespace dbl

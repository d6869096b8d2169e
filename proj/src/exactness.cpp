#include "dbl/exactness.hpp"

#include "dbl/error.hpp"

namespace dbl {

namespace {

IntMatrix relations_of(const IntMatrix& s) { return s.transpose(); }

long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

IntVector random_vector(std::mt19937_64& rng, size_t n, long bound) {
  IntVector v(n);
  for (auto& a : v) a = uniform(rng, -bound, bound);
  return v;
}

bool all_zero(const IntVector& v) {
  for (const auto& a : v)
    if (a != 0) return false;
  return true;
}

}  // namespace

StrictSequence make_strict_sequence(WeightedFreeModule m0, WeightedFreeModule m1, IntMatrix s) {
  if (m0.ring().kind() != RingKind::IntTriv || !(m0.ring() == m1.ring()))
    fail(ErrorKind::UnsupportedRing, "strict sequences are built over IntTriv");
  if (!m0.non_archimedean() || !m1.non_archimedean()) fail(ErrorKind::ModeMismatch, "max-formula modules expected");
  if (s.rows() != m1.rank() || s.cols() != m0.rank()) fail(ErrorKind::SizeMismatch, "s must be rank(M1) x rank(M0)");
  if (rank_q(s) != m0.rank()) fail(ErrorKind::ValidationFailure, "s is not injective");
  FinModule m2(m1, relations_of(s));
  mpq_class c0 = 0;
  if (m0.rank() > 0) c0 = m0.max_weight().as_rational() / m1.min_weight().as_rational();
  return StrictSequence{std::move(m0), std::move(m1), std::move(s), std::move(m2), c0};
}

StrictSequence random_strict_sequence(std::mt19937_64& rng) {
  const auto ring = RingDescriptor::int_triv();
  static const long kWeights[][2] = {{1, 1}, {2, 1}, {3, 1}, {1, 2}, {3, 2}};
  auto module = [&](size_t rank, const std::string& prefix) {
    std::vector<std::string> labels;
    std::vector<NormValue> weights;
    for (size_t i = 0; i < rank; ++i) {
      labels.push_back(prefix + std::to_string(i));
      const auto& w = kWeights[uniform(rng, 0, 4)];
      weights.push_back(NormValue::rational(mpq_class(w[0], w[1])));
    }
    return WeightedFreeModule(ring, labels, weights, NormMode::NonArchimedean);
  };
  const auto r0 = static_cast<size_t>(uniform(rng, 0, 2));
  const auto r1 = r0 + static_cast<size_t>(uniform(rng, 0, 2)) + (r0 == 0 ? 1 : 0);
  WeightedFreeModule m0 = module(r0, "a");
  WeightedFreeModule m1 = module(r1, "b");
  while (true) {
    IntMatrix s(r1, r0);
    for (size_t i = 0; i < r1; ++i)
      for (size_t j = 0; j < r0; ++j) s(i, j) = uniform(rng, -2, 2);
    if (rank_q(s) == r0) return make_strict_sequence(m0, m1, s);
  }
}

StrongExactnessReport check_strong_exactness(const SpacePtr& x, const StrictSequence& seq, std::mt19937_64& rng,
                                             int samples) {
  StrongExactnessReport rep;
  const auto comps = static_cast<size_t>(x->component_count());
  const auto sup = [&](const WeightedFreeModule& m, const std::vector<IntVector>& values) {
    return sup_norm(CfinModuleFunction{x, m, values});
  };
  auto ratio = [](const NormValue& num, const NormValue& den) -> mpq_class {
    if (den.is_zero()) return 0;
    return num.as_rational() / den.as_rational();
  };

  for (int k = 0; k < samples; ++k) {
    // Injectivity and the kernel lift: f = s o g for a random g.
    std::vector<IntVector> g, f;
    for (size_t c = 0; c < comps; ++c) {
      g.push_back(random_vector(rng, seq.m0.rank(), 3));
      f.push_back(seq.s.apply(g.back()));
    }
    std::vector<IntVector> lifted;
    for (size_t c = 0; c < comps; ++c) {
      if (!all_zero(g[c]) && all_zero(f[c])) rep.injective = false;
      if (!seq.m2.is_zero_class(f[c])) rep.exact_middle = false;
      auto pre = solve_integer(seq.s, f[c]);
      if (!pre) {
        rep.exact_middle = false;
        continue;
      }
      if (seq.s.apply(*pre) != f[c]) rep.exact_middle = false;
      lifted.push_back(*pre);
    }
    if (lifted.size() == comps) {
      const mpq_class r = ratio(sup(seq.m0, lifted), sup(seq.m1, f));
      if (r > rep.worst_c0_ratio) rep.worst_c0_ratio = r;
      if (r > seq.c0) rep.constants_respected = false;
    }

    // Middle exactness on an arbitrary f: t o f = 0 iff f lifts.
    std::vector<IntVector> h;
    for (size_t c = 0; c < comps; ++c) h.push_back(random_vector(rng, seq.m1.rank(), 2));
    bool killed = true, lifts = true;
    for (size_t c = 0; c < comps; ++c) {
      killed = killed && seq.m2.is_zero_class(h[c]);
      lifts = lifts && solve_integer(seq.s, h[c]).has_value();
    }
    if (killed != lifts) rep.exact_middle = false;

    // Surjectivity with the norm-minimizing lift of a C(X, M2) function.
    std::vector<IntVector> q, lift;
    for (size_t c = 0; c < comps; ++c) {
      q.push_back(random_vector(rng, seq.m1.rank(), 3));
      lift.push_back(seq.m2.min_representative(q[c]));
      IntVector diff(q[c].size());
      for (size_t i = 0; i < diff.size(); ++i) diff[i] = lift[c][i] - q[c][i];
      if (!seq.m2.is_zero_class(diff)) rep.surjective = false;
    }
    NormValue class_norm = NormValue::zero();
    for (size_t c = 0; c < comps; ++c) class_norm = max(class_norm, seq.m2.norm(q[c]));
    const mpq_class r = ratio(sup(seq.m1, lift), class_norm);
    if (r > rep.worst_c1_ratio) rep.worst_c1_ratio = r;
    if (r > seq.c1) rep.constants_respected = false;
    rep.functions_checked += 3;
  }
  return rep;
}

}  // namespace dbl

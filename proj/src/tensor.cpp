#include "dbl/tensor.hpp"

#include <algorithm>

#include "dbl/error.hpp"

namespace dbl {

TensorElement::TensorElement(WeightedFreeModule m0, WeightedFreeModule m1, IntMatrix coeffs)
    : m0_(std::move(m0)), m1_(std::move(m1)), coeffs_(std::move(coeffs)) {
  if (!(m0_.ring() == m1_.ring())) fail(ErrorKind::RingMismatch, m0_.ring().name() + " vs " + m1_.ring().name());
  if (coeffs_.rows() == 0 && coeffs_.cols() == 0) coeffs_ = IntMatrix(m0_.rank(), m1_.rank());
  if (coeffs_.rows() != m0_.rank() || coeffs_.cols() != m1_.rank())
    fail(ErrorKind::SizeMismatch, "coefficient matrix must be rank(M0) x rank(M1)");
  for (size_t i = 0; i < coeffs_.rows(); ++i)
    for (size_t j = 0; j < coeffs_.cols(); ++j) m0_.ring().check(coeffs_(i, j));
}

TensorElement TensorElement::from_pairs(WeightedFreeModule m0, WeightedFreeModule m1,
                                        const std::vector<std::pair<IntVector, IntVector>>& pairs) {
  const auto& ring = m0.ring();
  IntMatrix c(m0.rank(), m1.rank());
  for (const auto& [u, v] : pairs) {
    m0.check(u);
    m1.check(v);
    for (size_t i = 0; i < u.size(); ++i) {
      if (u[i] == 0) continue;
      for (size_t j = 0; j < v.size(); ++j) c(i, j) = ring.add(c(i, j), ring.mul(u[i], v[j]));
    }
  }
  return TensorElement(std::move(m0), std::move(m1), std::move(c));
}

TensorElement TensorElement::zero(WeightedFreeModule m0, WeightedFreeModule m1) {
  IntMatrix c(m0.rank(), m1.rank());
  return TensorElement(std::move(m0), std::move(m1), std::move(c));
}

namespace {

WeightedFreeModule product_module(const WeightedFreeModule& m0, const WeightedFreeModule& m1, NormMode mode) {
  if (!(m0.ring() == m1.ring())) fail(ErrorKind::RingMismatch, m0.ring().name() + " vs " + m1.ring().name());
  std::vector<std::string> labels;
  std::vector<NormValue> weights;
  for (size_t i = 0; i < m0.rank(); ++i)
    for (size_t j = 0; j < m1.rank(); ++j) {
      labels.push_back("(" + m0.labels()[i] + "," + m1.labels()[j] + ")");
      weights.push_back(m0.weights()[i] * m1.weights()[j]);
    }
  return WeightedFreeModule(m0.ring(), std::move(labels), std::move(weights), mode);
}

bool single_block(const WeightedFreeModule& m) {
  return std::all_of(m.blocks().begin(), m.blocks().end(), [](int b) { return b == 0; });
}

IntVector unit_vector(size_t n, size_t i) {
  IntVector e(n, 0);
  e[i] = 1;
  return e;
}

}  // namespace

WeightedFreeModule tensor_nonarch(const WeightedFreeModule& m0, const WeightedFreeModule& m1) {
  if (!m0.non_archimedean() || !m1.non_archimedean())
    fail(ErrorKind::ModeMismatch, "non-Archimedean tensor product needs two max-formula modules");
  return product_module(m0, m1, NormMode::NonArchimedean);
}

WeightedFreeModule tensor_l1(const WeightedFreeModule& m0, const WeightedFreeModule& m1) {
  if (m0.mode() != NormMode::Archimedean || m1.mode() != NormMode::Archimedean || !single_block(m0) ||
      !single_block(m1))
    fail(ErrorKind::ModeMismatch, "l^1 tensor product needs two sum-formula modules");
  return product_module(m0, m1, NormMode::Archimedean);
}

IntVector flatten(const TensorElement& t) {
  IntVector out;
  for (size_t i = 0; i < t.coeffs().rows(); ++i)
    for (size_t j = 0; j < t.coeffs().cols(); ++j) out.push_back(t.coeffs()(i, j));
  return out;
}

NormValue tensor_norm_nonarch(const TensorElement& t) {
  return tensor_nonarch(t.left(), t.right()).norm(flatten(t));
}

NormValue representation_cost(const WeightedFreeModule& m0, const WeightedFreeModule& m1,
                              const std::vector<std::pair<IntVector, IntVector>>& pairs) {
  NormValue total = NormValue::zero();
  for (const auto& [u, v] : pairs) total = total + m0.norm(u) * m1.norm(v);
  return total;
}

size_t coefficient_rank(const RingDescriptor& ring, const IntMatrix& a) {
  if (ring.is_zero_ring()) return 0;
  if (ring.is_integer()) return rank_q(a);
  size_t best = 0;
  for (long p : prime_factors(ring.modulus())) best = std::max(best, rank_mod_p(a, p));
  return best;
}

namespace {

void require_rational(const WeightedFreeModule& m) {
  for (const auto& w : m.weights())
    if (!w.is_rational()) fail(ErrorKind::UnsupportedValue, "irrational basis weight " + w.to_string());
}

// Tries t = U W with U (m0 x k) given; W (k x m1) solved column by column
// through one Smith form P U Q = D.
std::optional<std::vector<std::pair<IntVector, IntVector>>> factor_through(const IntMatrix& u, const IntMatrix& t) {
  const SmithForm snf = smith_normal_form(u);
  const size_t r = snf.rank();
  IntMatrix w(u.cols(), t.cols());
  for (size_t j = 0; j < t.cols(); ++j) {
    const IntVector pb = snf.U.apply(t.col(j));
    IntVector z(u.cols(), 0);
    for (size_t i = 0; i < pb.size(); ++i) {
      if (i >= r) {
        if (pb[i] != 0) return std::nullopt;
        continue;
      }
      if (!mpz_divisible_p(pb[i].get_mpz_t(), snf.diagonal[i].get_mpz_t())) return std::nullopt;
      z[i] = pb[i] / snf.diagonal[i];
    }
    const IntVector y = snf.V.apply(z);
    for (size_t h = 0; h < u.cols(); ++h) w(h, j) = y[h];
  }
  std::vector<std::pair<IntVector, IntVector>> pairs;
  for (size_t h = 0; h < u.cols(); ++h) pairs.emplace_back(u.col(h), w.row(h));
  return pairs;
}

}  // namespace

NormValue tensor_elem_norm_arch_upper(const TensorElement& t, long budget) {
  const auto& m0 = t.left();
  const auto& m1 = t.right();
  if (m0.non_archimedean() || m1.non_archimedean())
    fail(ErrorKind::ModeMismatch, "the Archimedean bound needs sum-formula or supremum modules");
  require_rational(m0);
  require_rational(m1);
  if (t.is_zero()) return NormValue::zero();
  const IntMatrix& c = t.coeffs();
  const size_t r0 = c.rows();
  const size_t r1 = c.cols();

  std::vector<std::pair<IntVector, IntVector>> entrywise, rows, cols;
  for (size_t i = 0; i < r0; ++i)
    for (size_t j = 0; j < r1; ++j)
      if (c(i, j) != 0) {
        IntVector u(r0, 0);
        u[i] = c(i, j);
        entrywise.emplace_back(u, unit_vector(r1, j));
      }
  for (size_t i = 0; i < r0; ++i)
    if (IntVector row = c.row(i); std::any_of(row.begin(), row.end(), [](const mpz_class& a) { return a != 0; }))
      rows.emplace_back(unit_vector(r0, i), row);
  for (size_t j = 0; j < r1; ++j)
    if (IntVector col = c.col(j); std::any_of(col.begin(), col.end(), [](const mpz_class& a) { return a != 0; }))
      cols.emplace_back(col, unit_vector(r1, j));
  NormValue best = representation_cost(m0, m1, entrywise);
  best = std::min(best, representation_cost(m0, m1, rows));
  best = std::min(best, representation_cost(m0, m1, cols));

  if (!m0.ring().is_integer()) return best;
  const size_t rank = rank_q(c);
  long examined = 0;
  for (size_t k = rank; k <= std::min(r0, r1) && examined < budget; ++k) {
    // Odometer over the entries of U, each in [-2, 2], starting at all -2.
    std::vector<int> digits(r0 * k, 0);
    while (examined < budget) {
      IntMatrix u(r0, k);
      for (size_t e = 0; e < digits.size(); ++e) u(e / k, e % k) = digits[e] - 2;
      ++examined;
      bool zero_column = false;
      for (size_t h = 0; h < k && !zero_column; ++h) {
        IntVector col = u.col(h);
        zero_column = std::all_of(col.begin(), col.end(), [](const mpz_class& a) { return a == 0; });
      }
      if (!zero_column) {
        if (auto pairs = factor_through(u, c)) best = std::min(best, representation_cost(m0, m1, *pairs));
      }
      size_t pos = 0;
      while (pos < digits.size() && digits[pos] == 4) digits[pos++] = 0;
      if (pos == digits.size()) break;
      ++digits[pos];
    }
  }
  return best;
}

NormValue tensor_rank_lower_bound(const TensorElement& t) {
  const size_t rank = coefficient_rank(t.left().ring(), t.coeffs());
  if (rank == 0) return NormValue::zero();
  return NormValue::rational(static_cast<long>(rank)) * t.left().isolation_gap() * t.right().isolation_gap();
}

AbsorbingMap absorbing_map(const SpacePtr& x, const WeightedFreeModule& m0, const WeightedFreeModule& m1) {
  if (!(m0.ring() == m1.ring())) fail(ErrorKind::RingMismatch, m0.ring().name() + " vs " + m1.ring().name());
  const int comps = x->component_count();
  WeightedFreeModule left = WeightedFreeModule::cfin(comps, m0);
  WeightedFreeModule target =
      m0.non_archimedean() && m1.non_archimedean() ? tensor_nonarch(m0, m1) : tensor_l1(m0, m1);
  const size_t r0 = m0.rank();
  const size_t r1 = m1.rank();

  auto forward = [x, left, m1, target, comps, r0, r1](const TensorElement& t) {
    if (!(t.left() == left) || !(t.right() == m1)) fail(ErrorKind::SpaceMismatch, "tensor over other modules");
    std::vector<IntVector> values;
    for (int c = 0; c < comps; ++c) {
      IntVector v;
      for (size_t s0 = 0; s0 < r0; ++s0)
        for (size_t s1 = 0; s1 < r1; ++s1) v.push_back(t.coeffs()(static_cast<size_t>(c) * r0 + s0, s1));
      values.push_back(std::move(v));
    }
    return CfinModuleFunction{x, target, std::move(values)};
  };

  auto backward = [x, left, m1, target, comps, r0, r1](const CfinModuleFunction& f) {
    if (!(f.module == target) || static_cast<int>(f.values.size()) != comps)
      fail(ErrorKind::SpaceMismatch, "function with other values or space");
    // Partition the components by value, then one term 1_U e_s0 (x) m_s0 per
    // block and left basis symbol.
    std::vector<std::pair<std::vector<int>, IntVector>> blocks;
    for (int c = 0; c < comps; ++c) {
      const IntVector& v = f.values[static_cast<size_t>(c)];
      auto it = std::find_if(blocks.begin(), blocks.end(), [&v](const auto& b) { return b.second == v; });
      if (it == blocks.end()) {
        blocks.push_back({{c}, v});
      } else {
        it->first.push_back(c);
      }
    }
    std::vector<std::pair<IntVector, IntVector>> pairs;
    for (const auto& [members, v] : blocks)
      for (size_t s0 = 0; s0 < r0; ++s0) {
        IntVector u(left.rank(), 0);
        for (int c : members) u[static_cast<size_t>(c) * r0 + s0] = left.ring().one();
        IntVector m(v.begin() + static_cast<long>(s0 * r1), v.begin() + static_cast<long>((s0 + 1) * r1));
        pairs.emplace_back(std::move(u), std::move(m));
      }
    return TensorElement::from_pairs(left, m1, pairs);
  };

  return AbsorbingMap{x, left, m1, target, forward, backward};
}

AbsorbingMap counterexample_map(int n) {
  if (n < 0) fail(ErrorKind::InvalidInput, "n must be nonnegative");
  const auto ring = RingDescriptor::int_inf();
  auto x = make_space(FiniteSpace::discrete(n + 1));
  auto r = WeightedFreeModule::unit(ring, {"1"}, NormMode::Archimedean);
  std::vector<std::string> labels;
  for (int i = 0; i <= n; ++i) labels.push_back("d" + std::to_string(i));
  auto l = WeightedFreeModule::unit(ring, labels, NormMode::Archimedean);
  return absorbing_map(x, r, l);
}

TensorElement absorbing_counterexample(int n, const AbsorbingMap& map) {
  const auto size = static_cast<size_t>(n + 1);
  std::vector<std::pair<IntVector, IntVector>> pairs;
  for (size_t i = 0; i < size; ++i) pairs.emplace_back(unit_vector(size, i), unit_vector(size, i));
  return TensorElement::from_pairs(map.source_left, map.right, pairs);
}

BaseChangeQuotient base_change_quotient(const WeightedFreeModule& m, long n) {
  if (n < 1) fail(ErrorKind::InvalidInput, "modulus must be positive");
  RingDescriptor scalars = RingDescriptor::zmod_triv(1);
  if (m.ring().kind() == RingKind::IntInf) {
    scalars = n == 1 ? RingDescriptor::zmod_triv(1) : RingDescriptor::zmod_quot(n);
  } else if (m.ring().kind() == RingKind::IntTriv) {
    scalars = RingDescriptor::zmod_triv(n);
  } else {
    fail(ErrorKind::UnsupportedRing, "quotient base change starts from a Z variant, got " + m.ring().name());
  }
  IntMatrix rel(m.rank(), m.rank());
  for (size_t s = 0; s < m.rank(); ++s) rel(s, s) = n;
  NormMode mode = m.mode();
  if (mode == NormMode::NonArchimedean && !scalars.non_archimedean()) mode = NormMode::Archimedean;
  WeightedFreeModule side(scalars, m.labels(), m.weights(), mode);
  const size_t gens = n == 1 ? 0 : m.rank();
  return BaseChangeQuotient{FinModule(m, std::move(rel)), std::move(side), scalars, gens};
}

bool base_change_agrees(const BaseChangeQuotient& bc, const IntVector& v) {
  return bc.quotient.norm(v) == bc.tensor_side.norm(bc.tensor_side.reduce(v));
}

FreeBaseChange free_base_change(const WeightedFreeModule& s, const RingDescriptor& target) {
  const auto src = s.ring().kind();
  const auto dst = target.kind();
  const bool supported = (src == RingKind::IntInf && dst == RingKind::ZmodQuot) ||
                         (src == RingKind::IntTriv && dst == RingKind::FpTriv) ||
                         (src == RingKind::IntTriv && dst == RingKind::ZmodTriv);
  if (!supported) fail(ErrorKind::UnsupportedHom, s.ring().name() + " -> " + target.name());
  WeightedFreeModule image(target, s.labels(), s.weights(), s.mode());

  FreeBaseChange out{s, image, true, 0};
  if (!(target.norm(target.one()) == NormValue::one()) && !target.is_zero_ring()) out.isometric = false;
  // Contractivity of the coefficient map on every vector with entries in
  // [-3, 3] (capped at 4 coordinates), plus submultiplicativity of the target.
  const size_t dims = std::min<size_t>(s.rank(), 4);
  std::vector<int> digits(dims, 0);
  while (true) {
    IntVector c(s.rank(), 0);
    for (size_t i = 0; i < dims; ++i) c[i] = digits[i] - 3;
    ++out.samples_checked;
    if (image.norm(image.reduce(c)) > s.norm(c)) out.isometric = false;
    size_t pos = 0;
    while (pos < dims && digits[pos] == 6) digits[pos++] = 0;
    if (pos == dims) break;
    ++digits[pos];
  }
  try {
    validate_ring(target, 6);
  } catch (const Error&) {
    out.isometric = false;
  }
  return out;
}

}  // namespace dbl

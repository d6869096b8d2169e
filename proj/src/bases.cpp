#include "dbl/bases.hpp"

#include <algorithm>

#include "dbl/error.hpp"

namespace dbl {

std::string to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::Partition: return "partition";
    case BasisKind::VanDerPut: return "vanDerPut";
    case BasisKind::GeneralisedVdP: return "generalisedVdP";
    case BasisKind::Mahler: return "mahler";
    case BasisKind::Explicit: return "explicit";
  }
  return "unknown";
}

namespace {

mpz_class binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

long checked_level_size(long p, int k, long limit) {
  if (!is_prime(p)) fail(ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
  if (k < 0) fail(ErrorKind::InvalidInput, "level must be nonnegative");
  long size = 1;
  for (int i = 0; i < k; ++i) {
    size *= p;
    if (size > limit) fail(ErrorKind::SizeExceeded, "p^k exceeds " + std::to_string(limit));
  }
  return size;
}

std::vector<int> identity_columns(int n) {
  std::vector<int> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = i;
  return out;
}

}  // namespace

size_t BasisFamily::size() const { return kind == BasisKind::Mahler ? static_cast<size_t>(column_count) : carriers.size(); }

IntMatrix BasisFamily::evaluation() const {
  IntMatrix e(size(), static_cast<size_t>(column_count));
  if (kind == BasisKind::Mahler) {
    for (size_t n = 0; n < e.rows(); ++n)
      for (size_t x = 0; x < e.cols(); ++x) e(n, x) = binomial(static_cast<long>(x), static_cast<long>(n));
    return e;
  }
  for (size_t b = 0; b < carriers.size(); ++b)
    for (int p : carriers[b]) e(b, static_cast<size_t>(column_of.at(static_cast<size_t>(p)))) = 1;
  return e;
}

mpz_class basis_determinant(const IntMatrix& e) {
  if (e.rows() != e.cols()) fail(ErrorKind::SizeMismatch, "evaluation matrix is not square");
  const size_t n = e.rows();
  bool upper = true, lower = true;
  for (size_t i = 0; i < n && (upper || lower); ++i)
    for (size_t j = 0; j < n; ++j) {
      if (j < i && e(i, j) != 0) upper = false;
      if (j > i && e(i, j) != 0) lower = false;
    }
  if (upper || lower) {
    mpz_class d = 1;
    for (size_t i = 0; i < n; ++i) d *= e(i, i);
    return d;
  }
  return determinant(e);
}

UnimodularCheck check_unimodular(const BasisFamily& f) {
  const IntMatrix e = f.evaluation();
  if (e.rows() != e.cols()) fail(ErrorKind::SizeMismatch, "family size differs from the number of quasi-components");
  UnimodularCheck out;
  out.determinant = basis_determinant(e);
  out.unimodular = abs(out.determinant) == 1;
  return out;
}

BasisFamily partition_basis(const FiniteSpace& x) {
  BasisFamily f;
  f.kind = BasisKind::Partition;
  f.column_count = x.component_count();
  for (int p = 0; p < x.size(); ++p) f.column_of.push_back(x.component_of(p));
  for (Mask c : x.quasi_components()) f.carriers.push_back(points_of(c));
  return f;
}

BasisFamily family_from_clopens(const FiniteSpace& x, const std::vector<Mask>& clopens) {
  BasisFamily f;
  f.kind = BasisKind::Explicit;
  f.column_count = x.component_count();
  for (int p = 0; p < x.size(); ++p) f.column_of.push_back(x.component_of(p));
  for (Mask u : clopens) {
    if ((u & ~x.all()) != 0 || !x.is_clopen(u)) fail(ErrorKind::NotClopen, "set " + std::to_string(u) + " is not clopen");
    f.carriers.push_back(points_of(u));
  }
  return f;
}

UnimodularCheck is_unimodular_basis(const FiniteSpace& x, const std::vector<Mask>& clopens) {
  if (static_cast<int>(clopens.size()) != x.component_count())
    fail(ErrorKind::SizeMismatch, "need one clopen per quasi-component");
  return check_unimodular(family_from_clopens(x, clopens));
}

BasisFamily vdp_basis_level(long p, int k) {
  const long size = checked_level_size(p, k, 4096);
  BasisFamily f;
  f.kind = BasisKind::VanDerPut;
  f.prime = p;
  f.level = k;
  f.column_count = static_cast<int>(size);
  f.column_of = identity_columns(f.column_count);
  std::vector<int> all(static_cast<size_t>(size));
  for (long x = 0; x < size; ++x) all[static_cast<size_t>(x)] = static_cast<int>(x);
  f.carriers.push_back(all);
  for (long n = 1; n < size; ++n) {
    long pj = p;
    while (pj <= n) pj *= p;
    std::vector<int> ball;
    for (long x = n; x < size; x += pj) ball.push_back(static_cast<int>(x));
    f.carriers.push_back(std::move(ball));
  }
  return f;
}

BasisFamily generalised_vdp(const UltrametricSpace& u) {
  const BallTree tree = ball_tree(u);
  BasisFamily f;
  f.kind = BasisKind::GeneralisedVdP;
  f.column_count = u.size();
  f.column_of = identity_columns(u.size());
  f.carriers.push_back(tree.nodes[0].points);
  for (const auto& node : tree.nodes) {
    const int lowest = node.points.front();
    for (int child : node.children) {
      const auto& pts = tree.nodes[static_cast<size_t>(child)].points;
      if (pts.front() != lowest) f.carriers.push_back(pts);
    }
  }
  return f;
}

bool products_closed(const BasisFamily& f) {
  for (size_t a = 0; a < f.carriers.size(); ++a)
    for (size_t b = a + 1; b < f.carriers.size(); ++b) {
      std::vector<int> meet;
      std::set_intersection(f.carriers[a].begin(), f.carriers[a].end(), f.carriers[b].begin(), f.carriers[b].end(),
                            std::back_inserter(meet));
      if (!meet.empty() && meet != f.carriers[a] && meet != f.carriers[b]) return false;
    }
  return true;
}

BasisFamily mahler_level_basis(long p, int k) {
  const long size = checked_level_size(p, k, 1024);
  BasisFamily f;
  f.kind = BasisKind::Mahler;
  f.prime = p;
  f.level = k;
  f.column_count = static_cast<int>(size);
  f.column_of = identity_columns(f.column_count);
  return f;
}

std::vector<Element> vdp_expand(const std::vector<Element>& values, const RingDescriptor& ring, const BasisFamily& f) {
  if (static_cast<int>(values.size()) != f.column_count || f.size() != values.size())
    fail(ErrorKind::SizeMismatch, "function and family live on different spaces");
  const IntMatrix e = f.evaluation();
  auto sol = solve_integer(e.transpose(), values);
  if (!sol) fail(ErrorKind::ValidationFailure, "family is not a Z-basis");
  std::vector<Element> out;
  for (const auto& a : *sol) out.push_back(ring.reduce(a));
  return out;
}

std::vector<Element> vdp_expand(const CfinFunction& f, const BasisFamily& basis) {
  return vdp_expand(f.values(), f.ring(), basis);
}

OrthonormalityCheck vdp_orthonormality(const std::vector<Element>& values, const std::vector<Element>& coeffs,
                                       const std::function<NormValue(const Element&)>& norm) {
  OrthonormalityCheck out;
  for (const auto& a : coeffs) out.coefficient_max = max(out.coefficient_max, norm(a));
  for (const auto& v : values) out.sup_norm = max(out.sup_norm, norm(v));
  return out;
}

std::vector<mpz_class> mahler_coeffs(const std::vector<mpz_class>& values) {
  std::vector<mpz_class> out;
  for (size_t n = 0; n < values.size(); ++n) {
    mpz_class a = 0;
    for (size_t j = 0; j <= n; ++j) {
      const mpz_class term = binomial(static_cast<long>(n), static_cast<long>(j)) * values[j];
      if ((n - j) % 2 == 0) {
        a += term;
      } else {
        a -= term;
      }
    }
    out.push_back(a);
  }
  return out;
}

std::vector<mpz_class> mahler_coeffs_mod(const std::vector<mpz_class>& values, const mpz_class& m) {
  if (m <= 0) fail(ErrorKind::InvalidInput, "modulus must be positive");
  std::vector<mpz_class> out = mahler_coeffs(values);
  for (auto& a : out) {
    a %= m;
    if (a < 0) a += m;
  }
  return out;
}

mpz_class mahler_eval(const std::vector<mpz_class>& coeffs, long x) {
  mpz_class out = 0;
  for (size_t n = 0; n < coeffs.size(); ++n) out += coeffs[n] * binomial(x, static_cast<long>(n));
  return out;
}

mpz_class mahler_pairing(long n, long i) {
  if (n < 0 || i < 0) fail(ErrorKind::InvalidInput, "indices must be nonnegative");
  mpz_class out = 0;
  for (long j = 0; j <= i; ++j) {
    const mpz_class term = binomial(i, j) * binomial(j, n);
    if ((n - j) % 2 == 0) {
      out += term;
    } else {
      out -= term;
    }
  }
  return out;
}

MahlerCertificate mahler_level_unimodular(long p, int k) {
  const long size = checked_level_size(p, k, 1024);
  IntMatrix m(static_cast<size_t>(size), static_cast<size_t>(size));
  for (long i = 0; i < size; ++i)
    for (long n = 0; n <= i; ++n) m(static_cast<size_t>(i), static_cast<size_t>(n)) = binomial(i, n);
  MahlerCertificate out;
  out.size = static_cast<size_t>(size);
  out.lower_unitriangular = true;
  for (size_t i = 0; i < m.rows() && out.lower_unitriangular; ++i)
    for (size_t j = i; j < m.cols(); ++j)
      if (m(i, j) != (i == j ? 1 : 0)) {
        out.lower_unitriangular = false;
        break;
      }
  out.determinant = basis_determinant(m);
  return out;
}

IntMatrix basis_change_matrix(const BasisFamily& f, const BasisFamily& g) {
  if (f.column_count != g.column_count || f.size() != g.size())
    fail(ErrorKind::SizeMismatch, "families live on different spaces");
  if (!check_unimodular(f).unimodular || !check_unimodular(g).unimodular)
    fail(ErrorKind::ValidationFailure, "both families must be unimodular");
  auto inv = inverse_unimodular(f.evaluation());
  if (!inv) fail(ErrorKind::ValidationFailure, "evaluation matrix is not invertible over Z");
  return g.evaluation() * *inv;
}

}  // namespace dbl

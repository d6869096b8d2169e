#include "dbl/ring.hpp"

#include <algorithm>
#include <set>

#include "dbl/error.hpp"

namespace dbl {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

RingDescriptor::RingDescriptor(RingKind kind, long modulus) : kind_(kind), modulus_(modulus) {
  switch (kind) {
    case RingKind::IntInf:
      ordered_ = true;
      spectrum_connected_ = true;
      break;
    case RingKind::IntTriv:
      ordered_ = true;
      non_archimedean_ = true;
      spectrum_connected_ = true;
      break;
    case RingKind::FpTriv:
      non_archimedean_ = true;
      spectrum_connected_ = true;
      break;
    case RingKind::ZmodTriv:
      non_archimedean_ = true;
      spectrum_connected_ = modulus > 1 && prime_factors(modulus).size() == 1;
      break;
    case RingKind::ZmodQuot:
      // 1 + 1 has quotient norm 2 > max(1, 1) once n >= 4.
      non_archimedean_ = modulus <= 3;
      spectrum_connected_ = prime_factors(modulus).size() == 1;
      break;
  }
  if (modulus_ == 1) {
    one_norm_ = NormValue::zero();
  }
}

RingDescriptor RingDescriptor::int_inf() { return RingDescriptor(RingKind::IntInf, 0); }
RingDescriptor RingDescriptor::int_triv() { return RingDescriptor(RingKind::IntTriv, 0); }

RingDescriptor RingDescriptor::fp_triv(long p) {
  if (!is_prime(p)) fail(ErrorKind::UnsupportedRing, "FpTriv needs a prime, got " + std::to_string(p));
  return RingDescriptor(RingKind::FpTriv, p);
}

RingDescriptor RingDescriptor::zmod_triv(long n) {
  if (n < 1) fail(ErrorKind::UnsupportedRing, "ZmodTriv needs n >= 1");
  return RingDescriptor(RingKind::ZmodTriv, n);
}

RingDescriptor RingDescriptor::zmod_quot(long n) {
  if (n < 2) fail(ErrorKind::UnsupportedRing, "ZmodQuot needs n >= 2");
  return RingDescriptor(RingKind::ZmodQuot, n);
}

std::string RingDescriptor::name() const {
  switch (kind_) {
    case RingKind::IntInf: return "IntInf";
    case RingKind::IntTriv: return "IntTriv";
    case RingKind::FpTriv: return "FpTriv(" + std::to_string(modulus_) + ")";
    case RingKind::ZmodTriv: return "ZmodTriv(" + std::to_string(modulus_) + ")";
    case RingKind::ZmodQuot: return "ZmodQuot(" + std::to_string(modulus_) + ")";
  }
  return "?";
}

void RingDescriptor::check(const Element& a) const {
  if (modulus_ != 0 && (a < 0 || a >= modulus_)) {
    fail(ErrorKind::ElementOutOfRange, a.get_str() + " is not reduced in " + name());
  }
}

Element RingDescriptor::reduce(const Element& a) const {
  if (modulus_ == 0) return a;
  Element r = a % modulus_;
  if (r < 0) r += modulus_;
  return r;
}

bool RingDescriptor::is_unit(const Element& a) const {
  if (modulus_ == 0) return a == 1 || a == -1;
  return gcd(reduce(a), mpz_class(modulus_)) == 1;
}

NormValue quotient_norm(long n, const Element& a) {
  if (n < 1) fail(ErrorKind::InvalidInput, "modulus must be positive");
  Element r = a % n;
  if (r < 0) r += n;
  // Symmetric range: the nearest representative is r or r - n.
  Element best = std::min(Element(abs(r)), Element(abs(r - n)));
  return NormValue::rational(mpq_class(best));
}

NormValue RingDescriptor::norm(const Element& a) const {
  check(a);
  if (a == 0) return NormValue::zero();
  switch (kind_) {
    case RingKind::IntInf: return NormValue::rational(mpq_class(abs(a)));
    case RingKind::ZmodQuot: return quotient_norm(modulus_, a);
    default: return NormValue::one();
  }
}

std::vector<Element> RingDescriptor::sample(long bound) const {
  std::vector<Element> out;
  if (modulus_ == 0) {
    for (long r = -bound; r <= bound; ++r) out.emplace_back(r);
    return out;
  }
  std::set<long> seen;
  for (long r = -bound; r <= bound; ++r) {
    long x = ((r % modulus_) + modulus_) % modulus_;
    if (seen.insert(x).second) out.emplace_back(x);
    if (static_cast<long>(seen.size()) == modulus_) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

RingReport validate_ring(const RingDescriptor& ring, long sample_bound) {
  if (sample_bound < 2) fail(ErrorKind::InvalidInput, "sampleBound must be >= 2");
  RingReport rep;
  rep.ring = ring.name();
  rep.sample_bound = sample_bound;
  rep.gap = ring.isolation_gap();
  rep.one_norm = ring.norm(ring.one());

  const auto elems = ring.sample(sample_bound);
  auto witness = [](const Element& a, const Element& b) {
    return " (witness a=" + a.get_str() + ", b=" + b.get_str() + ")";
  };

  for (const auto& a : elems) {
    if (a != 0 && ring.norm(a) < ring.isolation_gap()) {
      fail(ErrorKind::ValidationFailure, "isolation: |" + a.get_str() + "| below gap");
    }
  }
  rep.isolated = true;

  bool multiplicative = true;
  for (const auto& a : elems) {
    for (const auto& b : elems) {
      NormValue na = ring.norm(a), nb = ring.norm(b);
      NormValue nab = ring.norm(ring.mul(a, b));
      if (nab > na * nb) fail(ErrorKind::ValidationFailure, "submultiplicativity" + witness(a, b));
      if (nab != na * nb) multiplicative = false;
      NormValue nsum = ring.norm(ring.add(a, b));
      if (nsum > na + nb) fail(ErrorKind::ValidationFailure, "triangle inequality" + witness(a, b));
      if (ring.non_archimedean() && nsum > max(na, nb)) {
        fail(ErrorKind::ValidationFailure, "strong triangle inequality" + witness(a, b));
      }
    }
  }
  rep.submultiplicative = true;
  rep.multiplicative = multiplicative;
  rep.triangle = true;
  rep.strong_triangle = ring.non_archimedean();
  return rep;
}

}  // namespace dbl

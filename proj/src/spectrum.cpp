#include "dbl/spectrum.hpp"

#include <map>
#include <random>

#include "dbl/error.hpp"

namespace dbl {

BasePoint BasePoint::arch_pow(const mpq_class& eps) {
  mpq_class e = eps;
  e.canonicalize();
  if (e < 0) fail(ErrorKind::ValidationFailure, "ArchPow exponent must be nonnegative");
  if (e == 0) return trivial();
  return BasePoint(BaseKind::ArchPow, 0, e);
}

BasePoint BasePoint::padic_pow(long p, const mpq_class& eps) {
  mpq_class e = eps;
  e.canonicalize();
  if (!is_prime(p)) fail(ErrorKind::ValidationFailure, "PadicPow needs a prime");
  if (e <= 0) fail(ErrorKind::ValidationFailure, "PadicPow exponent must be positive");
  return BasePoint(BaseKind::PadicPow, p, e);
}

BasePoint BasePoint::padic_residue(long p) {
  if (!is_prime(p)) fail(ErrorKind::ValidationFailure, "PadicResidue needs a prime");
  return BasePoint(BaseKind::PadicResidue, p, 0);
}

BasePoint BasePoint::trivial() { return BasePoint(BaseKind::Trivial, 0, 0); }

NormValue BasePoint::eval(const Element& a) const {
  if (a == 0) return NormValue::zero();
  switch (kind_) {
    case BaseKind::ArchPow: return NormValue::power(mpq_class(abs(a)), eps_);
    case BaseKind::PadicPow: {
      mpz_class rest = a;
      long v = 0;
      while (rest % p_ == 0) {
        rest /= p_;
        ++v;
      }
      return NormValue::power(mpq_class(1, p_), eps_ * v);
    }
    case BaseKind::PadicResidue: return a % p_ == 0 ? NormValue::zero() : NormValue::one();
    case BaseKind::Trivial: return NormValue::one();
  }
  return NormValue::zero();
}

std::string BasePoint::name() const {
  switch (kind_) {
    case BaseKind::ArchPow: return "ArchPow(" + eps_.get_str() + ")";
    case BaseKind::PadicPow: return "PadicPow(" + std::to_string(p_) + "," + eps_.get_str() + ")";
    case BaseKind::PadicResidue: return "PadicResidue(" + std::to_string(p_) + ")";
    case BaseKind::Trivial: return "Trivial";
  }
  return "?";
}

namespace {

// Empty string: admissible; otherwise the reason it is not.
std::string admissibility(const RingDescriptor& ring, const BasePoint& b) {
  if (ring.is_zero_ring()) return "the zero ring has an empty spectrum";
  const bool integer = ring.is_integer();
  switch (b.kind()) {
    case BaseKind::ArchPow:
      if (ring.kind() != RingKind::IntInf) return "unbounded: |2| = 2^eps exceeds ||2|| = 1";
      if (b.eps() > 1) return "eps out of [0,1]: |2|^eps > ||2|| = 2";
      return "";
    case BaseKind::PadicPow:
      if (!integer) return "p-adic valuations are only defined on Z here";
      return "";
    case BaseKind::PadicResidue:
      if (integer) return "";
      if (ring.kind() == RingKind::FpTriv) return "on F_p the residue point is the trivial point";
      if (ring.modulus() % b.prime() != 0) return "p does not divide the modulus";
      return "";
    case BaseKind::Trivial:
      if (integer || ring.kind() == RingKind::FpTriv) return "";
      return "the trivial absolute value is not multiplicative on Z/n (use PadicResidue)";
  }
  return "unknown base point";
}

}  // namespace

bool is_admissible(const RingDescriptor& ring, const BasePoint& b) { return admissibility(ring, b).empty(); }

void require_admissible(const RingDescriptor& ring, const BasePoint& b) {
  std::string why = admissibility(ring, b);
  if (!why.empty()) fail(ErrorKind::ValidationFailure, b.name() + " rejected on " + ring.name() + ": " + why);
}

std::vector<BasePoint> sample_base_points(const RingDescriptor& ring) {
  std::vector<BasePoint> out;
  if (ring.is_zero_ring()) return out;
  if (ring.is_integer()) {
    if (ring.kind() == RingKind::IntInf) {
      out.push_back(BasePoint::arch_pow(mpq_class(1, 2)));
      out.push_back(BasePoint::arch_pow(1));
    }
    for (long p : {2L, 3L, 5L}) {
      out.push_back(BasePoint::padic_pow(p, mpq_class(1, 2)));
      out.push_back(BasePoint::padic_pow(p, 1));
      out.push_back(BasePoint::padic_residue(p));
    }
    out.push_back(BasePoint::trivial());  // also ArchPow(0)
    return out;
  }
  if (ring.kind() == RingKind::FpTriv) return {BasePoint::trivial()};
  for (long p : prime_factors(ring.modulus())) out.push_back(BasePoint::padic_residue(p));
  return out;
}

PointReport validate_point(const RingDescriptor& ring, const BasePoint& b, long sample_bound) {
  require_admissible(ring, b);
  PointReport rep{ring.name(), b.name(), sample_bound, 0};
  auto bad = [&](const std::string& what, const Element& a, const Element& c) {
    fail(ErrorKind::ValidationFailure,
         b.name() + ": " + what + " (witness a=" + a.get_str() + ", b=" + c.get_str() + ")");
  };
  if (!b.eval(ring.one()).is_one()) bad("|1| != 1", ring.one(), ring.one());
  if (!b.eval(0).is_zero()) bad("|0| != 0", 0, 0);
  const auto elems = ring.sample(sample_bound);
  for (const auto& a : elems)
    if (b.eval(a) > ring.norm(a)) bad("unbounded: |a| > ||a||", a, a);
  for (const auto& a : elems)
    for (const auto& c : elems) {
      const NormValue va = b.eval(a), vc = b.eval(c);
      if (b.eval(ring.mul(a, c)) != va * vc) bad("not multiplicative", a, c);
      const Element s = ring.add(a, c);
      if (b.kind() == BaseKind::ArchPow) {
        // |s|_inf <= |a|_inf + |c|_inf plus subadditivity of t^eps on [0,1].
        if (abs(s) > abs(a) + abs(c) || b.eps() > 1) bad("triangle inequality", a, c);
      } else if (b.eval(s) > max(va, vc)) {
        bad("strong triangle inequality", a, c);
      }
      ++rep.pairs_checked;
    }
  return rep;
}

NormValue eval_seminorm(const SpectrumPoint& pt, const CfinFunction& f) {
  if (!is_admissible(f.ring(), pt.base)) {
    fail(ErrorKind::RingMismatch, pt.base.name() + " is not a point of M(" + f.ring().name() + ")");
  }
  if (pt.component < 0 || pt.component >= f.space().component_count()) {
    fail(ErrorKind::InvalidInput, "component index out of range");
  }
  return pt.base.eval(limit_along(pt.component, f));
}

Seminorm G_inverse(int component, const BasePoint& b, const SpacePtr& x, const RingDescriptor& ring) {
  require_admissible(ring, b);
  if (component < 0 || component >= x->component_count()) fail(ErrorKind::InvalidInput, "component out of range");
  SpectrumPoint pt{component, b};
  return [pt](const CfinFunction& f) { return eval_seminorm(pt, f); };
}

namespace {

// Identifies the base point from the oracle's values on constants.
BasePoint identify_base(const std::function<NormValue(const Element&)>& on_const, const RingDescriptor& ring) {
  auto unrecognized = [](const std::string& why) -> BasePoint {
    fail(ErrorKind::UnrecognizedBasePoint, why);
  };
  if (!ring.is_integer()) {
    if (ring.kind() == RingKind::FpTriv) return BasePoint::trivial();
    std::vector<long> killed;
    for (long p : prime_factors(ring.modulus()))
      if (on_const(ring.reduce(p)).is_zero()) killed.push_back(p);
    if (killed.size() != 1) unrecognized("no unique residue characteristic");
    return BasePoint::padic_residue(killed.front());
  }
  const NormValue two = on_const(2);
  if (two > NormValue::one()) {
    if (two.base() != 2) unrecognized("|2| = " + two.to_string() + " is not a power of 2");
    return BasePoint::arch_pow(two.exponent());
  }
  std::vector<long> small;
  for (long p = 2; p <= 97; ++p)
    if (is_prime(p) && on_const(p) < NormValue::one()) small.push_back(p);
  if (small.empty()) return BasePoint::trivial();
  if (small.size() > 1) unrecognized("several primes have |p| < 1");
  const long p = small.front();
  const NormValue vp = on_const(p);
  if (vp.is_zero()) return BasePoint::padic_residue(p);
  if (vp.base() != mpq_class(1, p)) unrecognized("|p| = " + vp.to_string() + " is not a power of 1/p");
  return BasePoint::padic_pow(p, vp.exponent());
}

}  // namespace

SpectrumPoint G_split(const Seminorm& x_oracle, const SpacePtr& x, const RingDescriptor& ring) {
  // Ultrafilter: the clopens U with x(1_U) != 0 must be those containing one component.
  std::vector<Mask> filter;
  for (Mask u : x->clopens())
    if (!x_oracle(indicator(x, ring, u)).is_zero()) filter.push_back(u);
  int found = -1;
  for (int c = 0; c < x->component_count(); ++c) {
    const Mask block = x->quasi_components()[static_cast<size_t>(c)];
    std::vector<Mask> expect;
    for (Mask u : x->clopens())
      if ((u & block) == block) expect.push_back(u);
    if (expect == filter) {
      found = c;
      break;
    }
  }
  if (found < 0) fail(ErrorKind::NotUltrafilter, "{U : x(1_U) != 0} is not an ultrafilter of CO(X)");

  auto on_const = [&](const Element& a) { return x_oracle(CfinFunction::constant(x, ring, a)); };
  const BasePoint b = identify_base(on_const, ring);
  if (!is_admissible(ring, b)) fail(ErrorKind::UnrecognizedBasePoint, b.name() + " is not admissible");

  // The oracle must agree with b o lim_F on a probe battery.
  const SpectrumPoint pt{found, b};
  const int comps = x->component_count();
  std::vector<Element> probe_values;
  for (long v = -12; v <= 12; ++v) probe_values.push_back(ring.reduce(v));
  for (long p = 2; p <= 97; ++p)
    if (is_prime(p)) probe_values.push_back(ring.reduce(p * p));
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<size_t> pick(0, probe_values.size() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Element> vals;
    for (int c = 0; c < comps; ++c) vals.push_back(probe_values[pick(rng)]);
    if (trial < static_cast<int>(probe_values.size())) vals[static_cast<size_t>(found)] = probe_values[static_cast<size_t>(trial)];
    CfinFunction f(x, ring, vals);
    if (x_oracle(f) != eval_seminorm(pt, f)) {
      fail(ErrorKind::UnrecognizedBasePoint, "oracle disagrees with " + b.name() + " along the recovered ultrafilter");
    }
  }
  return pt;
}

GelfandWitness gelfand_roundtrip(const SpacePtr& x, const RingDescriptor& ring) {
  if (!ring.spectrum_connected()) {
    fail(ErrorKind::DisconnectedSpectrum, ring.name() + " has a nontrivial idempotent; M(R) is disconnected");
  }
  GelfandWitness w;
  w.quasi_components = x->component_count();
  w.class_of_component.assign(static_cast<size_t>(w.quasi_components), -1);
  std::map<int, int> recovered;  // recovered class -> source component
  bool ok = true;
  for (int c = 0; c < w.quasi_components; ++c) {
    for (const auto& b : sample_base_points(ring)) {
      const SpectrumPoint back = G_split(G_inverse(c, b, x, ring), x, ring);
      ++w.points_checked;
      if (!(back.base == b)) ok = false;
      int& cls = w.class_of_component[static_cast<size_t>(c)];
      if (cls < 0) cls = back.component;
      if (cls != back.component) ok = false;
      auto [it, inserted] = recovered.emplace(back.component, c);
      if (!inserted && it->second != c) ok = false;
    }
  }
  w.recovered_classes = static_cast<int>(recovered.size());
  w.bijective = ok && w.recovered_classes == w.quasi_components;
  return w;
}

}  // namespace dbl

#include "dbl/norm_value.hpp"

#include <cmath>

#include "dbl/error.hpp"

namespace dbl {

namespace {

// Largest-root extraction: returns true and sets r if x is a perfect k-th power.
bool exact_root(const mpz_class& x, unsigned long k, mpz_class& r) {
  return mpz_root(r.get_mpz_t(), x.get_mpz_t(), k) != 0;
}

mpz_class pow_z(const mpz_class& x, unsigned long k) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), k);
  return r;
}

// Exponent numerators must fit an unsigned long for mpz_pow_ui.
unsigned long as_exponent(const mpz_class& e) {
  if (e < 0 || !e.fits_ulong_p() || e > 1'000'000) {
    fail(ErrorKind::UnsupportedValue, "exponent too large for exact evaluation");
  }
  return e.get_ui();
}

}  // namespace

mpq_class pow_q(const mpq_class& q, unsigned long k) {
  mpq_class r(pow_z(q.get_num(), k), pow_z(q.get_den(), k));
  r.canonicalize();
  return r;
}

NormValue NormValue::one() {
  NormValue v;
  v.zero_ = false;
  return v;
}

NormValue NormValue::rational(const mpq_class& q) {
  if (q < 0) fail(ErrorKind::UnsupportedValue, "norm values are nonnegative");
  if (q == 0) return zero();
  return power(q, 1);
}

NormValue NormValue::power(const mpq_class& base, const mpq_class& exponent) {
  if (base <= 0) fail(ErrorKind::UnsupportedValue, "power base must be positive");
  if (exponent < 0) fail(ErrorKind::UnsupportedValue, "power exponent must be nonnegative");
  NormValue v;
  v.zero_ = false;
  v.base_ = base;
  v.exponent_ = exponent;
  v.canonicalize();
  return v;
}

void NormValue::canonicalize() {
  if (zero_) {
    base_ = 1;
    exponent_ = 0;
    return;
  }
  base_.canonicalize();
  exponent_.canonicalize();
  if (base_ == 1 || exponent_ == 0) {
    base_ = 1;
    exponent_ = 0;
    return;
  }
  // Integral exponent: fold into the base first so 2^2 and 4 agree.
  if (exponent_.get_den() == 1 && exponent_ != 1) {
    base_ = pow_q(base_, as_exponent(exponent_.get_num()));
    exponent_ = 1;
  }
  mpz_class num = base_.get_num();
  mpz_class den = base_.get_den();
  bool progress = true;
  while (progress) {
    progress = false;
    size_t bits = std::max(mpz_sizeinbase(num.get_mpz_t(), 2), mpz_sizeinbase(den.get_mpz_t(), 2));
    for (unsigned long k = 2; k <= bits; ++k) {
      mpz_class rn, rd;
      if (exact_root(num, k, rn) && exact_root(den, k, rd)) {
        num = rn;
        den = rd;
        exponent_ *= k;
        progress = true;
        break;
      }
    }
  }
  base_ = mpq_class(num, den);
  base_.canonicalize();
  exponent_.canonicalize();
}

bool NormValue::is_rational() const {
  return zero_ || exponent_.get_den() == 1;
}

mpq_class NormValue::as_rational() const {
  if (zero_) return 0;
  if (!is_rational()) fail(ErrorKind::UnsupportedValue, "irrational norm value " + to_string());
  return pow_q(base_, as_exponent(exponent_.get_num()));
}

double NormValue::to_double() const {
  if (zero_) return 0.0;
  return std::pow(base_.get_d(), exponent_.get_d());
}

std::string NormValue::to_string() const {
  if (zero_) return "0";
  if (exponent_.get_den() == 1) return as_rational().get_str();
  return base_.get_str() + "^(" + exponent_.get_str() + ")";
}

NormValue NormValue::parse(const std::string& text) {
  auto caret = text.find("^(");
  try {
    if (caret == std::string::npos) {
      mpq_class q(text);
      q.canonicalize();
      return rational(q);
    }
    if (text.back() != ')') throw std::invalid_argument("missing ')'");
    mpq_class b(text.substr(0, caret));
    mpq_class e(text.substr(caret + 2, text.size() - caret - 3));
    b.canonicalize();
    e.canonicalize();
    return power(b, e);
  } catch (const std::invalid_argument&) {
    fail(ErrorKind::InvalidInput, "cannot parse norm value '" + text + "'");
  }
}

NormValue operator*(const NormValue& a, const NormValue& b) {
  if (a.zero_ || b.zero_) return NormValue::zero();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (a.exponent_ == b.exponent_) return NormValue::power(a.base_ * b.base_, a.exponent_);
  // Common exponent g = gcd of the two rationals, so a = (base_a^ka)^g etc.
  mpz_class n1 = a.exponent_.get_num() * b.exponent_.get_den();
  mpz_class n2 = b.exponent_.get_num() * a.exponent_.get_den();
  mpz_class den = a.exponent_.get_den() * b.exponent_.get_den();
  mpz_class g = gcd(n1, n2);
  mpq_class common(g, den);
  common.canonicalize();
  mpq_class lifted = pow_q(a.base_, as_exponent(n1 / g)) * pow_q(b.base_, as_exponent(n2 / g));
  return NormValue::power(lifted, common);
}

NormValue operator+(const NormValue& a, const NormValue& b) {
  if (!a.is_rational() || !b.is_rational()) {
    fail(ErrorKind::UnsupportedValue, "sum of irrational norm values " + a.to_string() + " + " + b.to_string());
  }
  return NormValue::rational(a.as_rational() + b.as_rational());
}

std::strong_ordering operator<=>(const NormValue& a, const NormValue& b) {
  if (a.zero_ || b.zero_) {
    if (a.zero_ && b.zero_) return std::strong_ordering::equal;
    return a.zero_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (a.base_ == b.base_ && a.exponent_ == b.exponent_) return std::strong_ordering::equal;
  // Clear denominators: compare base_a^(ea*D) with base_b^(eb*D).
  mpz_class den = lcm(a.exponent_.get_den(), b.exponent_.get_den());
  mpz_class ka = a.exponent_.get_num() * (den / a.exponent_.get_den());
  mpz_class kb = b.exponent_.get_num() * (den / b.exponent_.get_den());
  mpq_class lhs = pow_q(a.base_, as_exponent(ka));
  mpq_class rhs = pow_q(b.base_, as_exponent(kb));
  int c = cmp(lhs, rhs);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool operator==(const NormValue& a, const NormValue& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

NormValue max(const NormValue& a, const NormValue& b) { return a < b ? b : a; }

}  // namespace dbl

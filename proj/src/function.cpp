#include "dbl/function.hpp"

#include <algorithm>
#include <string>

#include "dbl/error.hpp"

namespace dbl {

CfinFunction::CfinFunction(SpacePtr space, RingDescriptor ring, std::vector<Element> values)
    : space_(std::move(space)), ring_(ring), values_(std::move(values)) {
  if (!space_) fail(ErrorKind::InvalidInput, "null space");
  if (static_cast<int>(values_.size()) != space_->component_count()) {
    fail(ErrorKind::SizeMismatch, "expected " + std::to_string(space_->component_count()) + " component values");
  }
  for (const auto& v : values_) ring_.check(v);
}

CfinFunction CfinFunction::from_points(SpacePtr space, RingDescriptor ring, const std::vector<Element>& values) {
  if (static_cast<int>(values.size()) != space->size()) fail(ErrorKind::SizeMismatch, "one value per point expected");
  std::vector<Element> comp(static_cast<size_t>(space->component_count()));
  std::vector<bool> seen(comp.size(), false);
  for (int x = 0; x < space->size(); ++x) {
    auto c = static_cast<size_t>(space->component_of(x));
    if (!seen[c]) {
      comp[c] = values[static_cast<size_t>(x)];
      seen[c] = true;
    } else if (comp[c] != values[static_cast<size_t>(x)]) {
      fail(ErrorKind::NotContinuous, "function is not constant on the quasi-component of point " + std::to_string(x));
    }
  }
  return CfinFunction(std::move(space), ring, std::move(comp));
}

CfinFunction CfinFunction::from_points(SpacePtr space, RingDescriptor ring, std::initializer_list<long> values) {
  std::vector<Element> v;
  for (long x : values) v.emplace_back(x);
  return from_points(std::move(space), ring, v);
}

CfinFunction CfinFunction::constant(SpacePtr space, RingDescriptor ring, const Element& c) {
  const auto n = static_cast<size_t>(space->component_count());
  return CfinFunction(std::move(space), ring, std::vector<Element>(n, ring.reduce(c)));
}

std::vector<Element> CfinFunction::point_values() const {
  std::vector<Element> out;
  for (int x = 0; x < space_->size(); ++x) out.push_back(eval(x));
  return out;
}

bool CfinFunction::is_zero() const {
  for (const auto& v : values_)
    if (v != 0) return false;
  return true;
}

Mask CfinFunction::support() const {
  Mask m = 0;
  for (size_t c = 0; c < values_.size(); ++c)
    if (values_[c] != 0) m |= space_->quasi_components()[c];
  return m;
}

bool operator==(const CfinFunction& a, const CfinFunction& b) {
  return a.ring_ == b.ring_ && (a.space_ == b.space_ || *a.space_ == *b.space_) && a.values_ == b.values_;
}

void require_compatible(const CfinFunction& f, const CfinFunction& g) {
  if (f.space_ptr() != g.space_ptr() && !(f.space() == g.space())) fail(ErrorKind::SpaceMismatch, "different spaces");
  if (!(f.ring() == g.ring())) fail(ErrorKind::RingMismatch, f.ring().name() + " vs " + g.ring().name());
}

namespace {

template <class Op>
CfinFunction pointwise(const CfinFunction& f, const CfinFunction& g, Op op) {
  require_compatible(f, g);
  std::vector<Element> out;
  out.reserve(f.values().size());
  for (size_t c = 0; c < f.values().size(); ++c) out.push_back(op(f.values()[c], g.values()[c]));
  return CfinFunction(f.space_ptr(), f.ring(), std::move(out));
}

}  // namespace

CfinFunction add(const CfinFunction& f, const CfinFunction& g) {
  const auto& r = f.ring();
  return pointwise(f, g, [&r](const Element& a, const Element& b) { return r.add(a, b); });
}

CfinFunction sub(const CfinFunction& f, const CfinFunction& g) {
  const auto& r = f.ring();
  return pointwise(f, g, [&r](const Element& a, const Element& b) { return r.sub(a, b); });
}

CfinFunction mul(const CfinFunction& f, const CfinFunction& g) {
  const auto& r = f.ring();
  return pointwise(f, g, [&r](const Element& a, const Element& b) { return r.mul(a, b); });
}

CfinFunction scalar(const Element& a, const CfinFunction& f) {
  std::vector<Element> out;
  for (const auto& v : f.values()) out.push_back(f.ring().mul(a, v));
  return CfinFunction(f.space_ptr(), f.ring(), std::move(out));
}

CfinFunction indicator(const SpacePtr& x, const RingDescriptor& ring, Mask u) {
  if (!x->is_clopen(u)) fail(ErrorKind::NotClopen, "indicator of a non-clopen set");
  std::vector<Element> out;
  for (Mask block : x->quasi_components()) out.push_back((block & u) ? ring.one() : ring.zero());
  return CfinFunction(x, ring, std::move(out));
}

NormValue sup_norm(const CfinFunction& f) {
  NormValue best = NormValue::zero();
  for (const auto& v : f.values()) best = max(best, f.ring().norm(v));
  return best;
}

std::vector<std::pair<Mask, Element>> decompose(const CfinFunction& f) {
  std::vector<std::pair<Mask, Element>> blocks;
  for (int x = 0; x < f.space().size(); ++x) {
    const Element& v = f.eval(x);
    auto it = std::find_if(blocks.begin(), blocks.end(), [&v](const auto& b) { return b.second == v; });
    if (it == blocks.end()) {
      blocks.emplace_back(Mask(1) << x, v);
    } else {
      it->first |= Mask(1) << x;
    }
  }
  return blocks;
}

CfinFunction reconstruct(const SpacePtr& x, const RingDescriptor& ring,
                         const std::vector<std::pair<Mask, Element>>& blocks) {
  CfinFunction out = CfinFunction::zero(x, ring);
  for (const auto& [u, m] : blocks) out = add(out, scalar(m, indicator(x, ring, u)));
  return out;
}

CfinFunction restrict(const CfinFunction& f, const PointMap& j, const SpacePtr& k) {
  require_continuous(j, *k, f.space());
  std::vector<Element> vals;
  for (int p = 0; p < k->size(); ++p) vals.push_back(f.eval(j[static_cast<size_t>(p)]));
  return CfinFunction::from_points(k, f.ring(), vals);
}

CfinFunction extend_banaschewski(const CfinFunction& f) {
  auto zeta = make_space(FiniteSpace::discrete(f.space().component_count()));
  return CfinFunction(zeta, f.ring(), f.values());
}

CfinFunction tietze_extend(const CfinFunction& f, const PointMap& j, const SpacePtr& x) {
  const auto check = zeta_embedding_check(j, f.space(), *x);
  if (!check.embedding) fail(ErrorKind::NotEmbedding, "map merges two quasi-components of the source");
  const auto cm = component_map(j, f.space(), *x);
  std::vector<Element> vals(static_cast<size_t>(x->component_count()), f.ring().zero());
  for (size_t k = 0; k < cm.size(); ++k) vals[static_cast<size_t>(cm[k])] = f.values()[k];
  return CfinFunction(x, f.ring(), std::move(vals));
}

namespace {

bool vanishes_on(const CfinFunction& f, Mask s) { return (f.support() & s) == 0; }

void require_closed(const FiniteSpace& x, Mask k) {
  if ((k & ~x.all()) != 0 || !x.is_closed(k)) fail(ErrorKind::NotClosed, "subset is not closed");
}

}  // namespace

Mask dominating_idempotent(const std::vector<CfinFunction>& fs, Mask x0) {
  Mask u = 0;
  for (const auto& f : fs) {
    if (!vanishes_on(f, x0)) fail(ErrorKind::NotInIdeal, "function does not vanish on the given set");
    u |= f.support();
  }
  return u;
}

std::pair<CfinFunction, CfinFunction> ideal_product_split(const CfinFunction& f, Mask k0, Mask k1) {
  require_closed(f.space(), k0);
  require_closed(f.space(), k1);
  if (!vanishes_on(f, k0 | k1)) fail(ErrorKind::NotInIdeal, "function does not vanish on K0 u K1");
  CfinFunction f0 = indicator(f.space_ptr(), f.ring(), f.support());
  return {f0, f};
}

SumSplit ideal_sum_split(const CfinFunction& f, Mask k0, Mask k1) {
  const FiniteSpace& x = f.space();
  require_closed(x, k0);
  require_closed(x, k1);
  if (!vanishes_on(f, k0 & k1)) fail(ErrorKind::NotInIdeal, "function does not vanish on K0 n K1");
  const Mask k2 = k1 & f.support();
  const Mask v = x.clopen_hull(k0);
  if ((v & k2) != 0) fail(ErrorKind::CannotSeparate, "no clopen separates K0 from K1 \\ f^{-1}(0)");
  const auto& ring = f.ring();
  CfinFunction f0 = mul(f, indicator(f.space_ptr(), ring, x.all() & ~v));
  CfinFunction f1 = mul(f, indicator(f.space_ptr(), ring, v));
  return {f0, f1, v};
}

Element limit_along(int component, const CfinFunction& f) { return f.value(component); }

SeparationCheck separates_points(const std::vector<CfinFunction>& fs, const FiniteSpace& x) {
  for (const auto& f : fs)
    if (!(f.space() == x)) fail(ErrorKind::SpaceMismatch, "generator lives on another space");
  const int n = x.component_count();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      bool split = false;
      for (const auto& f : fs)
        if (f.value(a) != f.value(b)) {
          split = true;
          break;
        }
      if (!split) return {false, std::make_pair(a, b)};
    }
  return {true, std::nullopt};
}

}  // namespace dbl

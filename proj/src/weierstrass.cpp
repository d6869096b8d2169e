#include "dbl/weierstrass.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "dbl/error.hpp"

namespace dbl {

ExprPtr expr_gen(int index) {
  auto e = std::make_shared<Expr>();
  e->op = Expr::Op::Gen;
  e->gen = index;
  return e;
}

ExprPtr expr_const(const mpz_class& value) {
  auto e = std::make_shared<Expr>();
  e->op = Expr::Op::Const;
  e->value = value;
  return e;
}

namespace {

ExprPtr binary(Expr::Op op, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

}  // namespace

ExprPtr expr_add(ExprPtr a, ExprPtr b) { return binary(Expr::Op::Add, std::move(a), std::move(b)); }
ExprPtr expr_sub(ExprPtr a, ExprPtr b) { return binary(Expr::Op::Sub, std::move(a), std::move(b)); }
ExprPtr expr_mul(ExprPtr a, ExprPtr b) { return binary(Expr::Op::Mul, std::move(a), std::move(b)); }

std::vector<Element> evaluate(const ExprPtr& root, const std::vector<CfinFunction>& gens) {
  if (gens.empty()) fail(ErrorKind::InvalidInput, "no generators to evaluate against");
  return evaluate(root, gens, gens.front().ring(), gens.front().values().size());
}

std::vector<Element> evaluate(const ExprPtr& root, const std::vector<CfinFunction>& gens, const RingDescriptor& ring,
                              size_t n) {
  std::unordered_map<const Expr*, std::vector<Element>> memo;
  auto rec = [&](auto&& self, const Expr* e) -> const std::vector<Element>& {
    if (auto it = memo.find(e); it != memo.end()) return it->second;
    std::vector<Element> out(n);
    switch (e->op) {
      case Expr::Op::Gen:
        if (e->gen < 0 || static_cast<size_t>(e->gen) >= gens.size())
          fail(ErrorKind::InvalidInput, "unknown generator g" + std::to_string(e->gen));
        out = gens[static_cast<size_t>(e->gen)].values();
        break;
      case Expr::Op::Const:
        std::fill(out.begin(), out.end(), ring.reduce(e->value));
        break;
      default: {
        const std::vector<Element> a = self(self, e->lhs.get());
        const std::vector<Element>& b = self(self, e->rhs.get());
        for (size_t i = 0; i < n; ++i) {
          if (e->op == Expr::Op::Add) out[i] = ring.add(a[i], b[i]);
          if (e->op == Expr::Op::Sub) out[i] = ring.sub(a[i], b[i]);
          if (e->op == Expr::Op::Mul) out[i] = ring.mul(a[i], b[i]);
        }
      }
    }
    return memo.emplace(e, std::move(out)).first->second;
  };
  return rec(rec, root.get());
}

std::string to_string(const ExprPtr& e) {
  switch (e->op) {
    case Expr::Op::Gen: return "g" + std::to_string(e->gen);
    case Expr::Op::Const: return e->value.get_str();
    case Expr::Op::Add: return "(" + to_string(e->lhs) + " + " + to_string(e->rhs) + ")";
    case Expr::Op::Sub: return "(" + to_string(e->lhs) + " - " + to_string(e->rhs) + ")";
    case Expr::Op::Mul: return to_string(e->lhs) + "*" + to_string(e->rhs);
  }
  return "?";
}

size_t node_count(const ExprPtr& root) {
  std::unordered_set<const Expr*> seen;
  std::vector<const Expr*> stack{root.get()};
  while (!stack.empty()) {
    const Expr* e = stack.back();
    stack.pop_back();
    if (!e || !seen.insert(e).second) continue;
    stack.push_back(e->lhs.get());
    stack.push_back(e->rhs.get());
  }
  return seen.size();
}

namespace {

void require_setup(const SpacePtr& x, const RingDescriptor& ring, const std::vector<CfinFunction>& gens, Mask u) {
  if (!ring.ordered()) fail(ErrorKind::UnsupportedRing, ring.name() + " carries no total order");
  for (const auto& g : gens) {
    if (!(g.space() == *x)) fail(ErrorKind::SpaceMismatch, "generator lives on another space");
    if (!(g.ring() == ring)) fail(ErrorKind::RingMismatch, g.ring().name() + " vs " + ring.name());
  }
  if ((u & ~x->all()) != 0 || !x->is_clopen(u)) fail(ErrorKind::NotClopen, "target set is not clopen");
  const SeparationCheck sep = separates_points(gens, *x);
  if (!sep.separates) {
    const auto [a, b] = *sep.witness;
    fail(ErrorKind::NonSeparating, "no generator separates points " + std::to_string(points_of(x->quasi_components()[static_cast<size_t>(a)]).front()) +
                                       " and " + std::to_string(points_of(x->quasi_components()[static_cast<size_t>(b)]).front()));
  }
}

ExprPtr square(const ExprPtr& e) { return expr_mul(e, e); }

}  // namespace

VanishingWitness sw_vanishing_witness(const SpacePtr& x, const RingDescriptor& ring,
                                      const std::vector<CfinFunction>& gens, int point, Mask u) {
  require_setup(x, ring, gens, u);
  if (point < 0 || point >= x->size()) fail(ErrorKind::ElementOutOfRange, "point outside X");
  if (contains(u, point)) fail(ErrorKind::InvalidInput, "the point lies in U");
  const int cx = x->component_of(point);
  VanishingWitness w;
  w.values.assign(static_cast<size_t>(x->component_count()), 0);
  for (int y : points_of(u)) {
    const int cy = x->component_of(y);
    if (w.values[static_cast<size_t>(cy)] != 0) continue;
    size_t gi = 0;
    while (gens[gi].value(cx) == gens[gi].value(cy)) ++gi;
    const ExprPtr term = square(expr_sub(expr_gen(static_cast<int>(gi)), expr_const(gens[gi].value(cx))));
    w.expr = w.expr ? expr_add(w.expr, term) : term;
    for (size_t c = 0; c < w.values.size(); ++c) {
      const Element d = ring.sub(gens[gi].values()[c], gens[gi].value(cx));
      w.values[c] = ring.add(w.values[c], ring.mul(d, d));
    }
    w.support_points.push_back(y);
  }
  if (!w.expr) w.expr = expr_const(0);
  return w;
}

Idempotent sw_idempotentize(const ExprPtr& f, const std::vector<Element>& f_values, const RingDescriptor& ring,
                            const std::vector<CfinFunction>& gens) {
  std::vector<Element> image;
  for (const auto& v : f_values) {
    if (v < 0) fail(ErrorKind::ValidationFailure, "f takes a negative value");
    if (v != 0 && std::find(image.begin(), image.end(), v) == image.end()) image.push_back(v);
  }
  if (image.empty()) fail(ErrorKind::ZeroFunction, "f vanishes identically");
  std::sort(image.begin(), image.end());
  Idempotent out;
  out.a = 1;
  ExprPtr product;
  for (const auto& v : image) {
    out.a = ring.mul(out.a, v);
    const ExprPtr factor = expr_sub(expr_const(v), f);
    product = product ? expr_mul(product, factor) : factor;
  }
  out.expr = expr_sub(expr_const(out.a), product);
  out.values = evaluate(out.expr, gens, ring, f_values.size());
  for (const auto& e : out.values)
    if (ring.mul(e, e) != ring.mul(out.a, e)) fail(ErrorKind::ValidationFailure, "e^2 != a e");
  return out;
}

SWCertificate sw_construct_indicator(const SpacePtr& x, const RingDescriptor& ring,
                                     const std::vector<CfinFunction>& gens, Mask u) {
  require_setup(x, ring, gens, u);
  SWCertificate cert;
  cert.target = u;
  if (u == x->all()) {
    cert.tree = expr_const(1);
  } else if (u == 0) {
    cert.tree = expr_const(0);
  } else {
    Mask covered = 0;
    for (int p : points_of(x->all() & ~u)) {
      if (contains(covered, p)) continue;
      const VanishingWitness w = sw_vanishing_witness(x, ring, gens, p, u);
      const Idempotent e = sw_idempotentize(w.expr, w.values, ring, gens);
      for (size_t c = 0; c < e.values.size(); ++c)
        if (e.values[c] == 0) covered |= x->quasi_components()[c];
      cert.a_u = ring.mul(cert.a_u, e.a);
      cert.tree = cert.tree ? expr_mul(cert.tree, e.expr) : e.expr;
      cert.chosen_points.push_back(p);
    }
  }
  const std::vector<Element> comp = evaluate(cert.tree, gens, ring, static_cast<size_t>(x->component_count()));
  for (int p = 0; p < x->size(); ++p) cert.evaluation.push_back(comp[static_cast<size_t>(x->component_of(p))]);
  return cert;
}

bool verify_certificate(const SWCertificate& cert, const SpacePtr& x, const std::vector<CfinFunction>& gens) {
  if (cert.a_u <= 0) return false;
  const RingDescriptor ring = gens.empty() ? RingDescriptor::int_inf() : gens.front().ring();
  const std::vector<Element> comp = evaluate(cert.tree, gens, ring, static_cast<size_t>(x->component_count()));
  for (int p = 0; p < x->size(); ++p) {
    const Element expected = contains(cert.target, p) ? cert.a_u : Element(0);
    if (comp[static_cast<size_t>(x->component_of(p))] != expected) return false;
  }
  return true;
}

}  // namespace dbl

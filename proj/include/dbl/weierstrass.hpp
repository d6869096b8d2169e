#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dbl/function.hpp"

namespace dbl {

/// Polynomial expression over generator symbols g0, g1, ... and integer
/// constants. Nodes are shared, so repeated subterms cost nothing.
struct Expr {
  enum class Op { Gen, Const, Add, Sub, Mul };
  Op op = Op::Const;
  int gen = 0;
  mpz_class value = 0;
  std::shared_ptr<const Expr> lhs, rhs;
};
using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr expr_gen(int index);
ExprPtr expr_const(const mpz_class& value);
ExprPtr expr_add(ExprPtr a, ExprPtr b);
ExprPtr expr_sub(ExprPtr a, ExprPtr b);
ExprPtr expr_mul(ExprPtr a, ExprPtr b);

/// Value on each quasi-component, in the generators' ring.
std::vector<Element> evaluate(const ExprPtr& e, const std::vector<CfinFunction>& gens);
/// Same, for a possibly empty generator list over `components` components.
std::vector<Element> evaluate(const ExprPtr& e, const std::vector<CfinFunction>& gens, const RingDescriptor& ring,
                              size_t components);
std::string to_string(const ExprPtr& e);
/// Number of distinct nodes.
size_t node_count(const ExprPtr& e);

struct VanishingWitness {
  ExprPtr expr;                  // f_x
  std::vector<Element> values;   // per component
  std::vector<int> support_points;  // S_x: one point per chosen component of U
};

/// f_x = sum over y in S_x of (g_y - g_y(x))^2, where g_y is the first
/// generator separating x from y and S_x is chosen greedily in point order
/// until f_x is positive on U. Throws UnsupportedRing (unordered ring),
/// NonSeparating, NotClopen, InvalidInput (x in U).
VanishingWitness sw_vanishing_witness(const SpacePtr& x, const RingDescriptor& ring,
                                      const std::vector<CfinFunction>& gens, int point, Mask u);

struct Idempotent {
  Element a;                     // product of the nonzero values of f
  ExprPtr expr;                  // a - prod (v - f)
  std::vector<Element> values;
};

/// Throws ZeroFunction when f vanishes identically.
Idempotent sw_idempotentize(const ExprPtr& f, const std::vector<Element>& f_values, const RingDescriptor& ring,
                            const std::vector<CfinFunction>& gens);

struct SWCertificate {
  Mask target = 0;
  Element a_u = 1;
  ExprPtr tree;
  std::vector<Element> evaluation;   // per point
  std::vector<int> chosen_points;    // S, in X \ U
};

/// a_U 1_U as a polynomial in the generators, with a_U > 0.
SWCertificate sw_construct_indicator(const SpacePtr& x, const RingDescriptor& ring,
                                     const std::vector<CfinFunction>& gens, Mask u);

/// Re-evaluates the tree and checks it equals a_U 1_U with a_U > 0.
bool verify_certificate(const SWCertificate& cert, const SpacePtr& x, const std::vector<CfinFunction>& gens);

}  // namespace dbl

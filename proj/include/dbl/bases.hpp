#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dbl/function.hpp"
#include "dbl/linalg.hpp"
#include "dbl/ultrametric.hpp"

namespace dbl {

enum class BasisKind { Partition, VanDerPut, GeneralisedVdP, Mahler, Explicit };

std::string to_string(BasisKind kind);

/// A candidate Z-basis of C_fin(X, Z): indicator functions of clopens, or the
/// truncated binomial polynomials C(x, n) on Z/p^k.
///
/// Columns of the evaluation matrix are the quasi-components of the
/// underlying space (points, for the discrete spaces used by the vdP and
/// Mahler families).
struct BasisFamily {
  BasisKind kind = BasisKind::Explicit;
  int column_count = 0;
  std::vector<int> column_of;                 // point -> column
  std::vector<std::vector<int>> carriers;     // sorted points; empty for Mahler
  long prime = 0;                             // level families only
  int level = 0;

  size_t size() const;
  /// Row b, column c: the value of basis element b on column c.
  IntMatrix evaluation() const;
};

/// Determinant with a triangular fast path, Bareiss otherwise.
mpz_class basis_determinant(const IntMatrix& e);

struct UnimodularCheck {
  bool unimodular = false;
  mpz_class determinant;
};

UnimodularCheck check_unimodular(const BasisFamily& f);

/// Indicators of the quasi-components (singletons of zeta(X)).
BasisFamily partition_basis(const FiniteSpace& x);

/// Wraps clopens of X as a family; throws NotClopen.
BasisFamily family_from_clopens(const FiniteSpace& x, const std::vector<Mask>& clopens);

/// Throws SizeMismatch unless |F| equals the number of quasi-components.
UnimodularCheck is_unimodular_basis(const FiniteSpace& x, const std::vector<Mask>& clopens);

/// On Z/p^k: the whole space, then for 1 <= n < p^k the class of n modulo
/// the least power p^j > n. Throws SizeExceeded past 4096 points.
BasisFamily vdp_basis_level(long p, int k);

/// The root ball and every ball of the tree that is not the child of its
/// parent containing the parent's smallest point.
BasisFamily generalised_vdp(const UltrametricSpace& u);

/// e0 e1 in {e0, e1, 0} for every pair of carriers.
bool products_closed(const BasisFamily& f);

/// Truncated binomials C(x, n), 0 <= n < p^k, as functions on Z/p^k.
BasisFamily mahler_level_basis(long p, int k);

/// The unique a with sum_U a_U 1_U = f (over Z, then reduced in the ring).
/// Throws SizeMismatch or ValidationFailure when F is not a basis.
std::vector<Element> vdp_expand(const std::vector<Element>& values, const RingDescriptor& ring, const BasisFamily& f);
std::vector<Element> vdp_expand(const CfinFunction& f, const BasisFamily& basis);

struct OrthonormalityCheck {
  NormValue coefficient_max;
  NormValue sup_norm;
  bool holds() const { return coefficient_max == sup_norm; }
};

/// max |a_U| against max |f| for a given absolute value on the coefficients.
OrthonormalityCheck vdp_orthonormality(const std::vector<Element>& values, const std::vector<Element>& coeffs,
                                       const std::function<NormValue(const Element&)>& norm);

/// Forward differences a_n = sum_j (-1)^(n-j) C(n, j) f(j).
std::vector<mpz_class> mahler_coeffs(const std::vector<mpz_class>& values);
/// The same, reduced into [0, m).
std::vector<mpz_class> mahler_coeffs_mod(const std::vector<mpz_class>& values, const mpz_class& m);
/// sum_n a_n C(x, n).
mpz_class mahler_eval(const std::vector<mpz_class>& coeffs, long x);

/// sum_{j=0}^{i} (-1)^(n-j) C(i, j) C(j, n).
mpz_class mahler_pairing(long n, long i);

struct MahlerCertificate {
  size_t size = 0;
  bool lower_unitriangular = false;
  mpz_class determinant;
};

/// The matrix [C(i, n)] for 0 <= i, n < p^k. Throws SizeExceeded past 1024.
MahlerCertificate mahler_level_unimodular(long p, int k);

/// T with E_G = T E_F. Throws SizeMismatch on different columns and
/// ValidationFailure when either family is not unimodular.
IntMatrix basis_change_matrix(const BasisFamily& f, const BasisFamily& g);

}  // namespace dbl

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace dbl {

using IntVector = std::vector<mpz_class>;

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, size_t cols);

  size_t rows() const noexcept { return rows_; }
  size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  mpz_class& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const mpz_class& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(size_t r) const;
  IntVector col(size_t c) const;
  IntMatrix transpose() const;
  bool is_zero() const;

  IntVector apply(const IntVector& v) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string to_string() const;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

/// Kronecker product a (x) b.
IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... | d_r.
struct SmithForm {
  IntMatrix U;
  IntMatrix V;
  std::vector<mpz_class> diagonal;  // the r nonzero invariant factors, positive
  size_t rank() const { return diagonal.size(); }
};

SmithForm smith_normal_form(const IntMatrix& a);

/// Bareiss fraction-free determinant.
mpz_class determinant(const IntMatrix& a);

/// Rank over Q.
size_t rank_q(const IntMatrix& a);
/// Rank over F_p.
size_t rank_mod_p(const IntMatrix& a, long p);

/// Columns form a Z-basis of {x : A x = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

/// Some integer x with A x = b, if one exists.
std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);

/// Inverse of a unimodular matrix; nullopt when det != +-1.
std::optional<IntMatrix> inverse_unimodular(const IntMatrix& a);

/// Homology of C_{k-1} --in--> C_k --out--> C_{k+1} at C_k.
struct HomologyGroup {
  size_t free_rank = 0;                 // over Z; dimension over F_p
  std::vector<mpz_class> torsion;       // invariant factors > 1 (Z only)
  mpz_class order = 1;                  // |H| over Z/n (finite rings only)
  bool vanishes() const { return free_rank == 0 && torsion.empty() && order == 1; }
};

/// `in` has dim C_k rows; `out` has dim C_k columns. Either may be empty
/// (zero map). Over Z pass modulus 0; over F_p or Z/n pass the modulus.
HomologyGroup homology(const IntMatrix& in, const IntMatrix& out, size_t dim, long modulus);

}  // namespace dbl

#include "dbl/linalg.hpp"

#include <sstream>
#include <utility>

#include "dbl/error.hpp"
#include "dbl/ring.hpp"

namespace dbl {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) fail(ErrorKind::SizeMismatch, "ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(size_t n) {
  IntMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) fail(ErrorKind::SizeMismatch, "row length mismatch");
    for (size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntVector IntMatrix::row(size_t r) const {
  return IntVector(data_.begin() + static_cast<long>(r * cols_),
                   data_.begin() + static_cast<long>((r + 1) * cols_));
}

IntVector IntMatrix::col(size_t c) const {
  IntVector out(rows_);
  for (size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

IntVector IntMatrix::apply(const IntVector& v) const {
  if (v.size() != cols_) fail(ErrorKind::SizeMismatch, "matrix-vector size mismatch");
  IntVector out(rows_);
  for (size_t r = 0; r < rows_; ++r) {
    mpz_class acc = 0;
    for (size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorKind::SizeMismatch, "matrix product size mismatch");
  IntMatrix out(a.rows_, b.cols_);
  for (size_t i = 0; i < a.rows_; ++i)
    for (size_t k = 0; k < a.cols_; ++k) {
      const mpz_class& x = a(i, k);
      if (x == 0) continue;
      for (size_t j = 0; j < b.cols_; ++j) out(i, j) += x * b(k, j);
    }
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t r = 0; r < rows_; ++r) {
    os << (r ? ",[" : "[");
    for (size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << (*this)(r, c).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (size_t k = 0; k < b.rows(); ++k)
        for (size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

namespace {

void swap_rows(IntMatrix& m, size_t a, size_t b) {
  if (a == b) return;
  for (size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

void swap_cols(IntMatrix& m, size_t a, size_t b) {
  if (a == b) return;
  for (size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

// row[dst] += k * row[src]
void add_row(IntMatrix& m, size_t dst, size_t src, const mpz_class& k) {
  if (k == 0) return;
  for (size_t c = 0; c < m.cols(); ++c) m(dst, c) += k * m(src, c);
}

void add_col(IntMatrix& m, size_t dst, size_t src, const mpz_class& k) {
  if (k == 0) return;
  for (size_t r = 0; r < m.rows(); ++r) m(r, dst) += k * m(r, src);
}

void negate_row(IntMatrix& m, size_t r) {
  for (size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  IntMatrix d = a;
  const size_t m = a.rows(), n = a.cols();
  SmithForm out{IntMatrix::identity(m), IntMatrix::identity(n), {}};
  IntMatrix& U = out.U;
  IntMatrix& V = out.V;

  size_t t = 0;
  while (t < m && t < n) {
    // Pivot: nonzero entry of least absolute value in the trailing block.
    size_t pr = m, pc = n;
    for (size_t r = t; r < m; ++r)
      for (size_t c = t; c < n; ++c)
        if (d(r, c) != 0 && (pr == m || abs(d(r, c)) < abs(d(pr, pc)))) {
          pr = r;
          pc = c;
        }
    if (pr == m) break;
    swap_rows(d, t, pr);
    swap_rows(U, t, pr);
    swap_cols(d, t, pc);
    swap_cols(V, t, pc);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t r = t + 1; r < m; ++r) {
        if (d(r, t) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), d(r, t).get_mpz_t(), d(t, t).get_mpz_t());
        add_row(d, r, t, -q);
        add_row(U, r, t, -q);
        if (d(r, t) != 0) {
          swap_rows(d, t, r);
          swap_rows(U, t, r);
          clean = false;
        }
      }
      for (size_t c = t + 1; c < n; ++c) {
        if (d(t, c) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), d(t, c).get_mpz_t(), d(t, t).get_mpz_t());
        add_col(d, c, t, -q);
        add_col(V, c, t, -q);
        if (d(t, c) != 0) {
          swap_cols(d, t, c);
          swap_cols(V, t, c);
          clean = false;
        }
      }
      if (!clean) continue;
      // Divisibility: fold any entry not divisible by the pivot into row t.
      for (size_t r = t + 1; r < m && clean; ++r)
        for (size_t c = t + 1; c < n; ++c)
          if (d(r, c) % d(t, t) != 0) {
            add_row(d, t, r, 1);
            add_row(U, t, r, 1);
            clean = false;
            break;
          }
    }
    if (d(t, t) < 0) {
      negate_row(d, t);
      negate_row(U, t);
    }
    out.diagonal.push_back(d(t, t));
    ++t;
  }
  return out;
}

mpz_class determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) fail(ErrorKind::SizeMismatch, "determinant of non-square matrix");
  const size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  int sign = 1;
  mpz_class prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      swap_rows(m, k, swap);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        mpz_class v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

size_t rank_q(const IntMatrix& a) { return smith_normal_form(a).rank(); }

size_t rank_mod_p(const IntMatrix& a, long p) {
  if (!is_prime(p)) fail(ErrorKind::UnsupportedRing, "rank mod p needs a prime");
  std::vector<std::vector<long>> m(a.rows(), std::vector<long>(a.cols()));
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t c = 0; c < a.cols(); ++c) {
      mpz_class v = a(r, c) % p;
      if (v < 0) v += p;
      m[r][c] = v.get_si();
    }
  auto inv = [p](long x) {
    long r = 1, b = x, e = p - 2;
    while (e > 0) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  size_t rank = 0;
  for (size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
    size_t piv = rank;
    while (piv < a.rows() && m[piv][c] == 0) ++piv;
    if (piv == a.rows()) continue;
    std::swap(m[piv], m[rank]);
    long iv = inv(m[rank][c]);
    for (auto& x : m[rank]) x = x * iv % p;
    for (size_t r = 0; r < a.rows(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      long f = m[r][c];
      for (size_t k = 0; k < a.cols(); ++k) m[r][k] = ((m[r][k] - f * m[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  SmithForm s = smith_normal_form(a);
  const size_t n = a.cols(), r = s.rank();
  IntMatrix k(n, n - r);
  for (size_t j = r; j < n; ++j)
    for (size_t i = 0; i < n; ++i) k(i, j - r) = s.V(i, j);
  return k;
}

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) fail(ErrorKind::SizeMismatch, "rhs length mismatch");
  SmithForm s = smith_normal_form(a);
  // D y = U b, x = V y.
  IntVector ub = s.U.apply(b);
  IntVector y(a.cols());
  for (size_t i = 0; i < ub.size(); ++i) {
    if (i < s.rank()) {
      if (ub[i] % s.diagonal[i] != 0) return std::nullopt;
      y[i] = ub[i] / s.diagonal[i];
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V.apply(y);
}

std::optional<IntMatrix> inverse_unimodular(const IntMatrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  SmithForm s = smith_normal_form(a);
  if (s.rank() != a.rows()) return std::nullopt;
  for (const auto& d : s.diagonal)
    if (d != 1) return std::nullopt;
  // U A V = I  =>  A^{-1} = V U.
  return s.V * s.U;
}

HomologyGroup homology(const IntMatrix& in, const IntMatrix& out, size_t dim, long modulus) {
  HomologyGroup h;
  if (modulus == 1) return h;  // zero ring: every module is zero
  const bool has_in = !in.empty();
  const bool has_out = !out.empty();
  if (has_in && in.rows() != dim) fail(ErrorKind::SizeMismatch, "incoming differential has wrong target");
  if (has_out && out.cols() != dim) fail(ErrorKind::SizeMismatch, "outgoing differential has wrong source");

  if (modulus == 0) {
    size_t rank_out = has_out ? rank_q(out) : 0;
    SmithForm sin = has_in ? smith_normal_form(in) : SmithForm{};
    h.free_rank = dim - rank_out - sin.rank();
    for (const auto& d : sin.diagonal)
      if (d > 1) h.torsion.push_back(d);
    return h;
  }
  if (is_prime(modulus)) {
    size_t rank_out = has_out ? rank_mod_p(out, modulus) : 0;
    size_t rank_in = has_in ? rank_mod_p(in, modulus) : 0;
    h.free_rank = dim - rank_out - rank_in;
    mpz_ui_pow_ui(h.order.get_mpz_t(), static_cast<unsigned long>(modulus), h.free_rank);
    return h;
  }
  // Z/n: |ker(out mod n)| / |im(in mod n)| read off the Smith forms over Z,
  // whose transforms stay invertible mod n.
  mpz_class n = modulus;
  mpz_class ker = 1;
  SmithForm sout = has_out ? smith_normal_form(out) : SmithForm{};
  for (size_t i = 0; i < dim; ++i) ker *= i < sout.rank() ? gcd(sout.diagonal[i], n) : n;
  mpz_class im = 1;
  if (has_in) {
    SmithForm sin = smith_normal_form(in);
    for (const auto& d : sin.diagonal) im *= n / gcd(d, n);
  }
  h.order = ker / im;
  h.free_rank = 0;
  return h;
}

}  // namespace dbl

#include "dbl/module.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "dbl/error.hpp"

namespace dbl {

WeightedFreeModule::WeightedFreeModule(RingDescriptor ring, std::vector<std::string> labels,
                                       std::vector<NormValue> weights, NormMode mode)
    : ring_(ring), labels_(std::move(labels)), weights_(std::move(weights)), mode_(mode),
      block_of_(labels_.size(), 0) {
  if (labels_.size() != weights_.size()) fail(ErrorKind::SizeMismatch, "one weight per basis symbol");
  for (const auto& w : weights_)
    if (w.is_zero()) fail(ErrorKind::InvalidInput, "basis weights must be positive");
  if (mode_ == NormMode::NonArchimedean && !ring_.non_archimedean())
    fail(ErrorKind::ModeMismatch, "max-formula module over the Archimedean ring " + ring_.name());
}

WeightedFreeModule WeightedFreeModule::unit(RingDescriptor ring, std::vector<std::string> labels, NormMode mode) {
  std::vector<NormValue> w(labels.size(), NormValue::one());
  return WeightedFreeModule(ring, std::move(labels), std::move(w), mode);
}

WeightedFreeModule WeightedFreeModule::cfin(int components, const WeightedFreeModule& m) {
  std::vector<std::string> labels;
  std::vector<NormValue> weights;
  std::vector<int> blocks;
  for (int c = 0; c < components; ++c)
    for (size_t s = 0; s < m.rank(); ++s) {
      labels.push_back(std::to_string(c) + ":" + m.labels_[s]);
      weights.push_back(m.weights_[s]);
      blocks.push_back(c);
    }
  WeightedFreeModule out(m.ring_, std::move(labels), std::move(weights), m.mode_);
  out.block_of_ = std::move(blocks);
  return out;
}

void WeightedFreeModule::check(const IntVector& v) const {
  if (v.size() != rank()) fail(ErrorKind::SizeMismatch, "coefficient vector of the wrong length");
  for (const auto& a : v) ring_.check(a);
}

IntVector WeightedFreeModule::reduce(const IntVector& v) const {
  if (v.size() != rank()) fail(ErrorKind::SizeMismatch, "coefficient vector of the wrong length");
  IntVector out;
  out.reserve(v.size());
  for (const auto& a : v) out.push_back(ring_.reduce(a));
  return out;
}

NormValue WeightedFreeModule::norm(const IntVector& v) const {
  check(v);
  std::map<int, NormValue> per_block;
  for (size_t s = 0; s < v.size(); ++s) {
    if (v[s] == 0) continue;
    NormValue term = ring_.norm(v[s]) * weights_[s];
    auto [it, fresh] = per_block.try_emplace(block_of_[s], term);
    if (fresh) continue;
    it->second = mode_ == NormMode::Archimedean ? it->second + term : max(it->second, term);
  }
  NormValue best = NormValue::zero();
  for (const auto& [b, value] : per_block) best = max(best, value);
  return best;
}

NormValue WeightedFreeModule::min_weight() const {
  if (weights_.empty()) return NormValue::zero();
  return *std::min_element(weights_.begin(), weights_.end());
}

NormValue WeightedFreeModule::max_weight() const {
  if (weights_.empty()) return NormValue::zero();
  return *std::max_element(weights_.begin(), weights_.end());
}

NormValue WeightedFreeModule::isolation_gap() const { return ring_.isolation_gap() * min_weight(); }

FinModule::FinModule(WeightedFreeModule ambient, IntMatrix relations)
    : ambient_(std::move(ambient)), relations_(std::move(relations)) {
  if (relations_.rows() > 0 && relations_.cols() != ambient_.rank())
    fail(ErrorKind::SizeMismatch, "relation rows must have the ambient rank");
  if (relations_.rows() == 0) relations_ = IntMatrix(0, ambient_.rank());
}

bool FinModule::diagonal_relations() const {
  for (size_t r = 0; r < relations_.rows(); ++r) {
    int nonzero = 0;
    for (size_t c = 0; c < relations_.cols(); ++c)
      if (relations_(r, c) != 0) ++nonzero;
    if (nonzero > 1) return false;
  }
  return true;
}

namespace {

// Columns: the relations, then n * e_s for every s when the ring is Z/n.
IntMatrix lattice_columns(const IntMatrix& relations, const RingDescriptor& ring, const std::vector<size_t>& extra) {
  const size_t dim = relations.cols();
  const size_t mod_cols = ring.is_integer() ? 0 : dim;
  IntMatrix a(dim, relations.rows() + mod_cols + extra.size());
  size_t col = 0;
  for (size_t r = 0; r < relations.rows(); ++r, ++col)
    for (size_t s = 0; s < dim; ++s) a(s, col) = relations(r, s);
  for (size_t s = 0; s < mod_cols; ++s, ++col) a(s, col) = ring.modulus();
  for (size_t s : extra) a(s, col++) = 1;
  return a;
}

bool trivially_normed(const RingDescriptor& r) {
  return r.kind() == RingKind::IntTriv || r.kind() == RingKind::FpTriv || r.kind() == RingKind::ZmodTriv;
}

}  // namespace

bool FinModule::is_zero_class(const IntVector& v) const {
  ambient_.check(v);
  return solve_integer(lattice_columns(relations_, ambient_.ring(), {}), v).has_value();
}

bool FinModule::is_zero_module() const {
  for (size_t s = 0; s < ambient_.rank(); ++s) {
    IntVector e(ambient_.rank(), 0);
    e[s] = ambient_.ring().reduce(1);
    if (!is_zero_class(e)) return false;
  }
  return true;
}

IntVector FinModule::min_representative(const IntVector& v) const {
  ambient_.check(v);
  const auto& ring = ambient_.ring();
  const size_t dim = ambient_.rank();
  if (diagonal_relations()) {
    // Coordinate s may move by any multiple of g_s.
    std::vector<mpz_class> g(dim, ring.is_integer() ? 0 : ring.modulus());
    for (size_t r = 0; r < relations_.rows(); ++r)
      for (size_t s = 0; s < dim; ++s)
        if (relations_(r, s) != 0) {
          mpz_class a = abs(relations_(r, s));
          g[s] = gcd(g[s], a);
        }
    IntVector rep(dim);
    for (size_t s = 0; s < dim; ++s) {
      if (g[s] == 0) {
        rep[s] = v[s];
        continue;
      }
      mpz_class r = v[s] % g[s];
      if (r < 0) r += g[s];
      if (trivially_normed(ring)) {
        rep[s] = r;
      } else {
        // |.|_inf: the least absolute representative, from (-g/2, g/2].
        if (2 * r > g[s]) r -= g[s];
        rep[s] = r;
      }
      rep[s] = ring.reduce(rep[s]);
    }
    return rep;
  }
  if (trivially_normed(ring) && ambient_.mode() == NormMode::NonArchimedean) {
    if (is_zero_class(v)) return IntVector(dim, 0);
    std::vector<size_t> order(dim);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [this](size_t a, size_t b) { return ambient_.weights()[a] < ambient_.weights()[b]; });
    std::vector<size_t> allowed;
    for (size_t i = 0; i < dim; ++i) {
      allowed.push_back(order[i]);
      if (i + 1 < dim && ambient_.weights()[order[i + 1]] == ambient_.weights()[order[i]]) continue;
      const IntMatrix a = lattice_columns(relations_, ring, allowed);
      if (auto sol = solve_integer(a, v)) {
        IntVector rep(dim, 0);
        const size_t first = a.cols() - allowed.size();
        for (size_t k = 0; k < allowed.size(); ++k) rep[allowed[k]] = ring.reduce((*sol)[first + k]);
        return rep;
      }
    }
    fail(ErrorKind::ValidationFailure, "class not reached by the full basis");
  }
  fail(ErrorKind::UnsupportedValue, "exact quotient norm needs coordinate relations or a trivially normed max module");
}

NormValue FinModule::norm(const IntVector& v) const { return ambient_.norm(min_representative(v)); }

NormValue sup_norm(const CfinModuleFunction& f) {
  NormValue best = NormValue::zero();
  for (const auto& v : f.values) best = max(best, f.module.norm(v));
  return best;
}

}  // namespace dbl

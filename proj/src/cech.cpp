#include "dbl/cech.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

#include "dbl/error.hpp"
#include "dbl/parallel.hpp"

namespace dbl {

CoverFamily make_family(SpacePtr x, std::vector<Mask> sets) {
  if (!x) fail(ErrorKind::InvalidInput, "null space");
  if (sets.empty()) fail(ErrorKind::InvalidInput, "empty family");
  if (sets.size() > static_cast<size_t>(kMaxFamily))
    fail(ErrorKind::SizeExceeded, "at most " + std::to_string(kMaxFamily) + " subsets");
  for (Mask k : sets) {
    if ((k & ~x->all()) != 0) fail(ErrorKind::ElementOutOfRange, "subset mentions a point outside X");
    if (!x->is_closed(k)) fail(ErrorKind::NotClosed, "family member " + std::to_string(k) + " is not closed");
  }
  return CoverFamily{std::move(x), std::move(sets)};
}

bool is_cover(const CoverFamily& s) {
  Mask u = 0;
  for (Mask k : s.sets) u |= k;
  return u == s.space->all();
}

namespace {

std::vector<std::vector<int>> increasing_tuples(int m, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < m; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<Mask> components_in(const FiniteSpace& x, Mask set) {
  if (set == x.all()) return x.quasi_components();
  const PointSet pts = points_of(set);
  const FiniteSpace sub = x.subspace(set);
  std::vector<Mask> out;
  for (Mask c : sub.quasi_components()) {
    Mask back = 0;
    for (int p : points_of(c)) back |= Mask(1) << pts[static_cast<size_t>(p)];
    out.push_back(back);
  }
  return out;
}

int lowest_point(Mask m) { return std::countr_zero(m); }

size_t component_containing(const ChainTerm& t, int point) {
  for (size_t a = 0; a < t.components.size(); ++a)
    if (contains(t.components[a], point)) return a;
  fail(ErrorKind::ValidationFailure, "point not found in a chain term");
}

std::string tuple_label(const std::vector<int>& tuple) {
  std::string s = "X";
  if (!tuple.empty()) {
    s = "K";
    for (size_t i = 0; i < tuple.size(); ++i) s += (i ? "," : "") + std::to_string(tuple[i]);
  }
  return s;
}

IntMatrix reduce_matrix(const IntMatrix& a, const RingDescriptor& ring) {
  IntMatrix out(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) out(i, j) = ring.reduce(a(i, j));
  return out;
}

}  // namespace

ChainComplex build_tate_cech(const CoverFamily& s, const RingDescriptor& ring, size_t coefficient_rank) {
  if (s.sets.size() > static_cast<size_t>(kMaxFamily))
    fail(ErrorKind::SizeExceeded, "at most " + std::to_string(kMaxFamily) + " subsets");
  if (coefficient_rank == 0) fail(ErrorKind::InvalidInput, "coefficient rank must be positive");
  const FiniteSpace& x = *s.space;
  const int m = static_cast<int>(s.sets.size());
  const size_t r = coefficient_rank;

  ChainComplex c;
  c.ring = ring;
  c.coefficient_rank = r;
  for (int k = 0; k <= m; ++k) {
    std::vector<ChainTerm> terms;
    std::vector<std::string> labels;
    size_t offset = 0;
    const auto tuples = k == 0 ? std::vector<std::vector<int>>{{}} : increasing_tuples(m, k);
    for (const auto& tuple : tuples) {
      Mask set = x.all();
      for (int i : tuple) set &= s.sets[static_cast<size_t>(i)];
      ChainTerm t{tuple, set, components_in(x, set), offset};
      for (Mask comp : t.components)
        for (size_t sym = 0; sym < r; ++sym) {
          std::string l = tuple_label(tuple) + "[" + std::to_string(lowest_point(comp)) + "]";
          if (r > 1) l += ":" + std::to_string(sym);
          labels.push_back(std::move(l));
        }
      offset += t.components.size() * r;
      terms.push_back(std::move(t));
    }
    c.dims.push_back(offset);
    c.terms.push_back(std::move(terms));
    c.labels.push_back(std::move(labels));
  }

  for (int k = 0; k < m; ++k) {
    const auto& lower = c.terms[static_cast<size_t>(k)];
    const auto& upper = c.terms[static_cast<size_t>(k + 1)];
    std::map<std::vector<int>, size_t> index;
    for (size_t i = 0; i < lower.size(); ++i) index[lower[i].tuple] = i;
    IntMatrix d(c.dims[static_cast<size_t>(k + 1)], c.dims[static_cast<size_t>(k)]);
    for (const auto& tau : upper) {
      for (size_t j = 0; j < tau.tuple.size(); ++j) {
        std::vector<int> face = tau.tuple;
        face.erase(face.begin() + static_cast<long>(j));
        const ChainTerm& f = lower[index.at(face)];
        const long sign = j % 2 == 0 ? 1 : -1;
        for (size_t b = 0; b < tau.components.size(); ++b) {
          const size_t a = component_containing(f, lowest_point(tau.components[b]));
          for (size_t sym = 0; sym < r; ++sym) d(tau.offset + b * r + sym, f.offset + a * r + sym) += sign;
        }
      }
    }
    c.differentials.push_back(std::move(d));
  }
  return c;
}

void verify_d_squared(const ChainComplex& c) {
  for (size_t k = 0; k + 1 < c.differentials.size(); ++k) {
    const IntMatrix dd = reduce_matrix(c.differentials[k + 1] * c.differentials[k], c.ring);
    if (!dd.is_zero()) fail(ErrorKind::ValidationFailure, "d o d != 0 at degree " + std::to_string(k));
  }
}

bool ExactnessReport::exact() const {
  return std::all_of(homology.begin(), homology.end(), [](const HomologyGroup& h) { return h.vanishes(); });
}

ExactnessReport exactness(const ChainComplex& c) {
  ExactnessReport rep;
  const size_t top = c.dims.size();
  for (size_t k = 0; k < top; ++k) {
    const IntMatrix in = k > 0 ? c.differentials[k - 1] : IntMatrix(c.dims[k], 0);
    const IntMatrix out = k + 1 < top ? c.differentials[k] : IntMatrix(0, c.dims[k]);
    rep.homology.push_back(homology(in, out, c.dims[k], c.ring.modulus()));
  }
  return rep;
}

namespace {

// Contracting homotopy sigma_k : C_{k+1} -> C_k at component level: each
// component B of K_rho takes its value from g_{(i, rho)} for the least i with
// B inside K_i, signed by the position of i; zero when i is in rho or no K_i
// contains B.
IntMatrix partition_section(const ChainComplex& c, const CoverFamily& s, size_t k) {
  const auto& lower = c.terms[k];
  const auto& upper = c.terms[k + 1];
  const size_t r = c.coefficient_rank;
  std::map<std::vector<int>, size_t> index;
  for (size_t i = 0; i < upper.size(); ++i) index[upper[i].tuple] = i;
  IntMatrix sigma(c.dims[k], c.dims[k + 1]);
  for (const auto& rho : lower) {
    for (size_t b = 0; b < rho.components.size(); ++b) {
      const Mask comp = rho.components[b];
      int choice = -1;
      for (size_t i = 0; i < s.sets.size(); ++i)
        if ((comp & ~s.sets[i]) == 0) {
          choice = static_cast<int>(i);
          break;
        }
      if (choice < 0 || std::find(rho.tuple.begin(), rho.tuple.end(), choice) != rho.tuple.end()) continue;
      std::vector<int> tau = rho.tuple;
      const auto pos = std::lower_bound(tau.begin(), tau.end(), choice);
      const long sign = (pos - tau.begin()) % 2 == 0 ? 1 : -1;
      tau.insert(pos, choice);
      const ChainTerm& t = upper[index.at(tau)];
      const size_t bb = component_containing(t, lowest_point(comp));
      for (size_t sym = 0; sym < r; ++sym) sigma(rho.offset + b * r + sym, t.offset + bb * r + sym) = sign;
    }
  }
  return sigma;
}

NormValue operator_bound(const IntMatrix& a, const RingDescriptor& ring) {
  NormValue best = NormValue::zero();
  for (size_t i = 0; i < a.rows(); ++i) {
    NormValue row = NormValue::zero();
    for (size_t j = 0; j < a.cols(); ++j) {
      const NormValue v = ring.norm(ring.reduce(a(i, j)));
      row = ring.non_archimedean() ? max(row, v) : row + v;
    }
    best = max(best, row);
  }
  return best;
}

bool section_holds(const ChainComplex& c, size_t k, const IntMatrix& sigma, const IntMatrix* sigma_up) {
  const IntMatrix& d = c.differentials[k];
  const size_t n = c.dims[k + 1];
  // The homotopy identity d sigma_k + sigma_{k+1} d_{k+1} = 1 over Z implies
  // the section property over every ring.
  if (sigma_up && k + 1 < c.differentials.size()) {
    IntMatrix lhs = d * sigma;
    const IntMatrix rhs = *sigma_up * c.differentials[k + 1];
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i)
      for (size_t j = 0; j < n && ok; ++j) ok = lhs(i, j) + rhs(i, j) == (i == j ? 1 : 0);
    if (ok) return true;
  }
  const IntMatrix basis = k + 1 < c.differentials.size() ? integer_kernel(c.differentials[k + 1]) : IntMatrix::identity(n);
  const IntMatrix image = reduce_matrix(d * sigma * basis, c.ring);
  return image == reduce_matrix(basis, c.ring);
}

// Degree-0 section of a two-set family through the ideal sum split: extend
// g0, g1 by zero, split f0 - f1 = a0 + a1 with a0 vanishing on K0, and
// return f0 - a0.
std::optional<IntMatrix> sum_split_section(const ChainComplex& c, const CoverFamily& s) {
  const auto& ring = c.ring;
  const SpacePtr& x = s.space;
  const auto& terms = c.terms[1];
  const size_t cols = c.dims[1] / c.coefficient_rank;
  IntMatrix sigma(static_cast<size_t>(x->component_count()), cols);
  std::vector<SpacePtr> subs;
  std::vector<PointMap> incl;
  for (const auto& t : terms) {
    subs.push_back(make_space(x->subspace(t.set)));
    incl.push_back(points_of(t.set));
  }
  try {
    // The separator V does not depend on f, so the split f -> f 1_{X \ V} is
    // linear and may be applied to basis columns, which are not themselves
    // in the ideal.
    const Mask v = ideal_sum_split(CfinFunction::zero(x, ring), s.sets[0], s.sets[1]).separator;
    const CfinFunction off_v = indicator(x, ring, x->all() & ~v);
    for (size_t col = 0; col < cols; ++col) {
      std::vector<CfinFunction> ext;
      for (size_t i = 0; i < 2; ++i) {
        const auto& t = terms[i];
        std::vector<Element> vals(t.components.size(), 0);
        const size_t start = t.offset / c.coefficient_rank;
        if (col >= start && col < start + t.components.size()) vals[col - start] = ring.one();
        ext.push_back(tietze_extend(CfinFunction(subs[i], ring, vals), incl[i], x));
      }
      const CfinFunction f = sub(ext[0], mul(sub(ext[0], ext[1]), off_v));
      for (size_t a = 0; a < f.values().size(); ++a) sigma(a, col) = f.values()[a];
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  return kronecker(sigma, IntMatrix::identity(c.coefficient_rank));
}

}  // namespace

std::vector<StrictSection> strict_sections(const ChainComplex& c, const CoverFamily& s) {
  const ExactnessReport ex = exactness(c);
  std::vector<IntMatrix> sigmas;
  for (size_t k = 0; k < c.differentials.size(); ++k) sigmas.push_back(partition_section(c, s, k));
  std::vector<StrictSection> out;
  for (size_t k = 0; k < c.differentials.size(); ++k) {
    if (!ex.homology[k + 1].vanishes()) continue;
    const IntMatrix* up = k + 1 < sigmas.size() ? &sigmas[k + 1] : nullptr;
    if (!section_holds(c, k, sigmas[k], up))
      fail(ErrorKind::NoSection, "partition section fails at degree " + std::to_string(k));
    out.push_back({static_cast<int>(k), "partition", sigmas[k], operator_bound(sigmas[k], c.ring), 1});
  }
  if (s.sets.size() == 2 && !c.differentials.empty() && ex.homology[1].vanishes()) {
    if (auto sigma = sum_split_section(c, s); sigma && section_holds(c, 0, *sigma, nullptr)) {
      out.push_back({0, "sum-split", *sigma, operator_bound(*sigma, c.ring), 2});
    }
  }
  return out;
}

CfinFunction descent_faithful_witness(const CoverFamily& s, const RingDescriptor& ring) {
  if (is_cover(s)) fail(ErrorKind::IsCover, "the family covers X");
  if (ring.is_zero_ring()) fail(ErrorKind::InvalidInput, "every function over the zero ring vanishes");
  Mask u = 0;
  for (Mask k : s.sets) u |= k;
  for (Mask comp : s.space->quasi_components())
    if ((comp & u) == 0) return indicator(s.space, ring, comp);
  fail(ErrorKind::NoWitness, "every quasi-component meets the union");
}

EquivalenceReport tate_equivalence_report(const CoverFamily& s, const RingDescriptor& ring, size_t coefficient_rank) {
  if (!s.space->is_discrete()) fail(ErrorKind::NotHausdorff, "the equivalence is stated for Hausdorff X");
  EquivalenceReport rep;
  rep.cover = is_cover(s);
  const ChainComplex c = build_tate_cech(s, ring, coefficient_rank);
  verify_d_squared(c);
  const ExactnessReport ex = exactness(c);
  rep.homology = ex.homology;
  rep.exact = ex.exact();
  rep.zero_ring = ring.is_zero_ring();
  if (rep.zero_ring) return rep;
  if (rep.cover != rep.exact) {
    std::ostringstream msg;
    msg << "cover=" << rep.cover << " but exact=" << rep.exact;
    fail(ErrorKind::EquivalenceViolation, msg.str());
  }
  if (!rep.cover) rep.witness = descent_faithful_witness(s, ring);
  return rep;
}

EnumerationReport enumerate_equivalence(int max_points, int max_sets, const RingDescriptor& ring) {
  struct Case {
    int n;
    std::vector<Mask> sets;
  };
  std::vector<Case> cases;
  for (int n = 1; n <= max_points; ++n) {
    const Mask limit = Mask(1) << n;
    for (int m = 1; m <= max_sets; ++m) {
      std::vector<Mask> cur(static_cast<size_t>(m), 0);
      auto rec = [&](auto&& self, size_t pos, Mask start) -> void {
        if (pos == cur.size()) {
          cases.push_back({n, cur});
          return;
        }
        for (Mask k = start; k < limit; ++k) {
          cur[pos] = k;
          self(self, pos + 1, k);
        }
      };
      rec(rec, 0, 0);
    }
  }
  std::vector<SpacePtr> spaces;
  for (int n = 0; n <= max_points; ++n) spaces.push_back(make_space(FiniteSpace::discrete(n)));

  struct Outcome {
    bool cover = false;
    bool agree = true;
    bool module_agree = true;
    double constant = 0;
    std::string error;
  };
  std::vector<Outcome> results(cases.size());
  parallel_for(cases.size(), [&](size_t idx) {
    const Case& cs = cases[idx];
    Outcome& o = results[idx];
    try {
      const CoverFamily fam = make_family(spaces[static_cast<size_t>(cs.n)], cs.sets);
      const EquivalenceReport scalar = tate_equivalence_report(fam, ring);
      const EquivalenceReport coeff = tate_equivalence_report(fam, ring, 2);
      o.cover = scalar.cover;
      o.module_agree = scalar.exact == coeff.exact;
      for (const auto& sec : strict_sections(build_tate_cech(fam, ring), fam))
        o.constant = std::max(o.constant, sec.constant.to_double());
    } catch (const Error& e) {
      o.agree = false;
      o.error = e.what();
    }
  });

  EnumerationReport rep;
  for (size_t i = 0; i < cases.size(); ++i) {
    const Outcome& o = results[i];
    ++rep.cases;
    if (o.cover) ++rep.covers;
    if (!o.agree) ++rep.disagreements;
    if (!o.module_agree) ++rep.module_disagreements;
    rep.max_section_constant = std::max(rep.max_section_constant, o.constant);
    if ((!o.agree || !o.module_agree) && !rep.first_failure) {
      std::ostringstream msg;
      msg << "n=" << cases[i].n << " sets=[";
      for (size_t j = 0; j < cases[i].sets.size(); ++j) msg << (j ? "," : "") << cases[i].sets[j];
      msg << "] " << o.error;
      rep.first_failure = msg.str();
    }
  }
  return rep;
}

namespace {

size_t position_in(Mask m, int x) { return static_cast<size_t>(std::popcount(m & ((Mask(1) << x) - 1))); }

struct GlueData {
  const CoverFamily& s;
  const std::vector<PieceModule>& pieces;
  std::map<std::pair<int, int>, const Transition*> by_pair;

  size_t rank(int i, int x) const {
    return pieces[static_cast<size_t>(i)].ranks[position_in(s.sets[static_cast<size_t>(i)], x)];
  }

  // The transition from piece i to piece j at point x.
  IntMatrix phi(int i, int j, int x) const {
    if (i == j) return IntMatrix::identity(rank(i, x));
    if (i > j) {
      auto inv = inverse_unimodular(phi(j, i, x));
      if (!inv) fail(ErrorKind::InvalidInput, "transition is not invertible");
      return *inv;
    }
    const Transition* t = by_pair.at({i, j});
    return t->maps[position_in(s.sets[static_cast<size_t>(i)] & s.sets[static_cast<size_t>(j)], x)];
  }
};

GlueData check_glue_input(const CoverFamily& s, const std::vector<PieceModule>& pieces,
                          const std::vector<Transition>& transitions) {
  if (!s.space->is_discrete()) fail(ErrorKind::NotHausdorff, "gluing is implemented on Hausdorff X");
  if (!is_cover(s)) fail(ErrorKind::InvalidInput, "the family does not cover X");
  if (pieces.size() != s.sets.size()) fail(ErrorKind::SizeMismatch, "one module per piece");
  for (size_t i = 0; i < pieces.size(); ++i)
    if (pieces[i].ranks.size() != static_cast<size_t>(std::popcount(s.sets[i])))
      fail(ErrorKind::SizeMismatch, "piece " + std::to_string(i) + " needs one rank per point");
  GlueData g{s, pieces, {}};
  const int m = static_cast<int>(s.sets.size());
  for (const auto& t : transitions) {
    if (t.from < 0 || t.to >= m || t.from >= t.to) fail(ErrorKind::InvalidInput, "transitions go from i to j > i");
    const Mask overlap = s.sets[static_cast<size_t>(t.from)] & s.sets[static_cast<size_t>(t.to)];
    if (t.maps.size() != static_cast<size_t>(std::popcount(overlap)))
      fail(ErrorKind::SizeMismatch, "one transition matrix per overlap point");
    for (int x : points_of(overlap)) {
      const IntMatrix& a = t.maps[position_in(overlap, x)];
      if (a.rows() != g.rank(t.to, x) || a.cols() != g.rank(t.from, x) || !inverse_unimodular(a))
        fail(ErrorKind::InvalidInput, "transition " + std::to_string(t.from) + "->" + std::to_string(t.to) +
                                          " at point " + std::to_string(x) + " is not an isomorphism");
    }
    g.by_pair[{t.from, t.to}] = &t;
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if ((s.sets[static_cast<size_t>(i)] & s.sets[static_cast<size_t>(j)]) != 0 && !g.by_pair.count({i, j}))
        fail(ErrorKind::InvalidInput, "missing transition " + std::to_string(i) + "->" + std::to_string(j));
  return g;
}

}  // namespace

GluedModule glue_modules(const CoverFamily& s, const std::vector<PieceModule>& pieces,
                         const std::vector<Transition>& transitions) {
  const GlueData g = check_glue_input(s, pieces, transitions);
  const int m = static_cast<int>(s.sets.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k) {
        const Mask triple = s.sets[static_cast<size_t>(i)] & s.sets[static_cast<size_t>(j)] & s.sets[static_cast<size_t>(k)];
        for (int x : points_of(triple))
          if (!(g.phi(j, k, x) * g.phi(i, j, x) == g.phi(i, k, x)))
            fail(ErrorKind::CocycleViolation, "triple (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                                  std::to_string(k) + ") at point " + std::to_string(x));
      }
  GluedModule out;
  out.iso.resize(s.sets.size());
  for (int x = 0; x < s.space->size(); ++x) {
    int src = 0;
    while (!contains(s.sets[static_cast<size_t>(src)], x)) ++src;
    out.ranks.push_back(g.rank(src, x));
    out.source_piece.push_back(src);
  }
  for (int i = 0; i < m; ++i)
    for (int x : points_of(s.sets[static_cast<size_t>(i)]))
      out.iso[static_cast<size_t>(i)].push_back(g.phi(out.source_piece[static_cast<size_t>(x)], i, x));
  return out;
}

bool glue_round_trip(const CoverFamily& s, const std::vector<PieceModule>& pieces,
                     const std::vector<Transition>& transitions, const GluedModule& glued) {
  const GlueData g = check_glue_input(s, pieces, transitions);
  const int m = static_cast<int>(s.sets.size());
  for (int i = 0; i < m; ++i) {
    const Mask ki = s.sets[static_cast<size_t>(i)];
    for (int x : points_of(ki)) {
      const IntMatrix& a = glued.iso[static_cast<size_t>(i)][position_in(ki, x)];
      if (a.rows() != g.rank(i, x) || a.cols() != glued.ranks[static_cast<size_t>(x)] || !inverse_unimodular(a))
        return false;
    }
    for (int j = i + 1; j < m; ++j) {
      const Mask kj = s.sets[static_cast<size_t>(j)];
      for (int x : points_of(ki & kj)) {
        const IntMatrix& ai = glued.iso[static_cast<size_t>(i)][position_in(ki, x)];
        const IntMatrix& aj = glued.iso[static_cast<size_t>(j)][position_in(kj, x)];
        if (!(g.phi(i, j, x) * ai == aj)) return false;
      }
    }
  }
  return true;
}

}  // namespace dbl

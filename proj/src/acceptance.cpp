#include "dbl/acceptance.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "dbl/bases.hpp"
#include "dbl/cech.hpp"
#include "dbl/error.hpp"
#include "dbl/exactness.hpp"
#include "dbl/spectrum.hpp"
#include "dbl/tensor.hpp"
#include "dbl/weierstrass.hpp"

namespace dbl {

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond && passed) {
      passed = false;
      detail << "FAILED: " << what << "; ";
    }
  }
};

// Calls body(values) for every vector in {lo..hi}^n.
void for_each_vector(size_t n, long lo, long hi, const std::function<void(const std::vector<Element>&)>& body) {
  std::vector<Element> v(n, lo);
  while (true) {
    body(v);
    size_t pos = 0;
    while (pos < n && v[pos] == hi) v[pos++] = lo;
    if (pos == n) return;
    v[pos] += 1;
  }
}

void criterion_tate(Outcome& o, const AcceptanceOptions&) {
  for (const auto& ring : {RingDescriptor::int_inf(), RingDescriptor::int_triv(), RingDescriptor::fp_triv(2)}) {
    const EnumerationReport rep = enumerate_equivalence(4, 3, ring);
    o.detail << ring.name() << ": " << rep.cases << " families, " << rep.covers << " covers, " << rep.disagreements
             << " disagreements, max section constant " << rep.max_section_constant << "; ";
    o.require(rep.disagreements == 0, ring.name() + " cover/acyclicity disagreement " + rep.first_failure.value_or(""));
    o.require(rep.module_disagreements == 0, ring.name() + " coefficient complex disagrees " + rep.first_failure.value_or(""));
    o.require(rep.max_section_constant <= 2, "section constant above 2");
  }
}

void criterion_spectrum(Outcome& o, const AcceptanceOptions& opts) {
  const auto ring = RingDescriptor::int_inf();
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<long> value(-3, 3);
  size_t roundtrips = 0, products = 0;
  for (const auto& x : fixture_spaces(opts.seed)) {
    const int comps = x->component_count();
    for (int c = 0; c < comps; ++c)
      for (const auto& b : sample_base_points(ring)) {
        const Seminorm s = G_inverse(c, b, x, ring);
        const SpectrumPoint back = G_split(s, x, ring);
        ++roundtrips;
        o.require(back.component == c && back.base == b, "round trip of " + b.name());
        auto check = [&](const CfinFunction& f, const CfinFunction& g) {
          ++products;
          o.require(s(mul(f, g)) == s(f) * s(g), "multiplicativity of " + b.name());
        };
        if (comps <= 2) {
          std::vector<CfinFunction> all;
          for_each_vector(static_cast<size_t>(comps), -3, 3,
                          [&](const std::vector<Element>& v) { all.emplace_back(x, ring, v); });
          for (const auto& f : all)
            for (const auto& g : all) check(f, g);
        } else {
          // Every pair of values at the evaluated component, seeded elsewhere.
          for (long a = -3; a <= 3; ++a)
            for (long d = -3; d <= 3; ++d) {
              std::vector<Element> fv(static_cast<size_t>(comps)), gv(static_cast<size_t>(comps));
              for (int k = 0; k < comps; ++k) {
                fv[static_cast<size_t>(k)] = value(rng);
                gv[static_cast<size_t>(k)] = value(rng);
              }
              fv[static_cast<size_t>(c)] = a;
              gv[static_cast<size_t>(c)] = d;
              check(CfinFunction(x, ring, fv), CfinFunction(x, ring, gv));
            }
        }
      }
  }
  o.detail << roundtrips << " round trips, " << products << " products checked";
}

void criterion_sum_split(Outcome& o, const AcceptanceOptions& opts) {
  std::mt19937_64 rng(opts.seed ^ 0x3ULL);
  std::vector<SpacePtr> spaces;
  for (int n = 0; n <= 8; ++n) spaces.push_back(make_space(FiniteSpace::discrete(n)));
  std::uniform_int_distribution<int> size(1, 8);
  std::uniform_int_distribution<long> value(-5, 5);
  size_t strict = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto ring = k % 2 == 0 ? RingDescriptor::int_inf() : RingDescriptor::zmod_quot(7);
    const int n = size(rng);
    const SpacePtr& x = spaces[static_cast<size_t>(n)];
    std::uniform_int_distribution<Mask> subset(0, x->all());
    const Mask k0 = subset(rng), k1 = subset(rng);
    std::vector<Element> vals;
    for (int p = 0; p < n; ++p) vals.push_back(contains(k0 & k1, p) ? Element(0) : ring.reduce(value(rng)));
    const CfinFunction f(x, ring, vals);
    const SumSplit split = ideal_sum_split(f, k0, k1);
    o.require(add(split.f0, split.f1) == f, "f0 + f1 != f");
    o.require((split.f0.support() & k0) == 0, "f0 does not vanish on K0");
    o.require((split.f1.support() & k1) == 0, "f1 does not vanish on K1");
    const NormValue total = sup_norm(split.f0) + sup_norm(split.f1);
    o.require(total <= NormValue::rational(2) * sup_norm(f), "||f0|| + ||f1|| > 2||f||");
    if (total > sup_norm(f)) ++strict;
  }
  o.require(strict > 0, "no case with ||f0|| + ||f1|| > ||f||");
  o.detail << "1000 splits within 2||f||; " << strict << " exceed ||f||";
}

void criterion_absorbing(Outcome& o, const AcceptanceOptions& opts) {
  const auto ring = RingDescriptor::int_triv();
  const auto m0 = WeightedFreeModule(ring, {"a", "b"}, {NormValue::one(), NormValue::rational(2)}, NormMode::NonArchimedean);
  const auto m1 = WeightedFreeModule(ring, {"c", "d"}, {NormValue::one(), NormValue::rational(3)}, NormMode::NonArchimedean);
  size_t checked = 0;
  for (const auto& x : {make_space(FiniteSpace::discrete(1)), make_space(FiniteSpace::discrete(2)),
                        make_space(FiniteSpace::sierpinski()), make_space(glued_four_point())}) {
    const AbsorbingMap map = absorbing_map(x, m0, m1);
    const size_t rows = map.source_left.rank(), cols = m1.rank();
    for_each_vector(rows * cols, -1, 1, [&](const std::vector<Element>& v) {
      IntMatrix c(rows, cols);
      for (size_t e = 0; e < v.size(); ++e) c(e / cols, e % cols) = v[e];
      const TensorElement t(map.source_left, m1, c);
      const CfinModuleFunction f = map.forward(t);
      const TensorElement back = map.backward(f);
      o.require(back == t, "backward o forward != id");
      o.require(map.forward(back).values == f.values, "forward o backward != id");
      o.require(tensor_norm_nonarch(t) == sup_norm(f), "non-Archimedean norms differ");
      ++checked;
    });
  }
  o.detail << checked << " non-Archimedean tensors isometric; ";
  for (int n = 1; n <= 16; ++n) {
    const AbsorbingMap map = counterexample_map(n);
    const TensorElement t = absorbing_counterexample(n, map);
    const NormValue lower = tensor_rank_lower_bound(t);
    const NormValue image = sup_norm(map.forward(t));
    o.require(lower == NormValue::rational(n + 1), "rank bound of f_" + std::to_string(n));
    o.require(image == NormValue::one(), "sup norm of the image of f_" + std::to_string(n));
    if (n <= 3) o.require(lower <= tensor_elem_norm_arch_upper(t, opts.budget), "lower bound above upper bound");
  }
  o.detail << "f_n: rank bound n+1 against image norm 1 for n = 1..16";
}

void criterion_mahler(Outcome& o, const AcceptanceOptions&) {
  for (long n = 0; n <= 12; ++n)
    for (long i = 0; i <= 12; ++i)
      o.require(mahler_pairing(n, i) == (n == i ? 1 : 0), "pairing (" + std::to_string(n) + "," + std::to_string(i) + ")");
  o.detail << "169 pairings equal the Kronecker delta";
}

void criterion_bases(Outcome& o, const AcceptanceOptions& opts) {
  size_t families = 0;
  for (const auto& x : fixture_spaces(opts.seed)) {
    o.require(check_unimodular(partition_basis(*x)).unimodular, "partition basis");
    ++families;
  }
  const std::vector<std::pair<long, int>> levels = {{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}};
  for (const auto& [p, k] : levels) {
    const BasisFamily f = vdp_basis_level(p, k);
    o.require(check_unimodular(f).unimodular, "vdP level basis");
    o.require(products_closed(f), "vdP level products");
    const MahlerCertificate m = mahler_level_unimodular(p, k);
    o.require(m.lower_unitriangular && m.determinant == 1, "Mahler level certificate");
    families += 2;
  }
  std::mt19937_64 rng(opts.seed ^ 0x6ULL);
  std::uniform_int_distribution<int> size(1, 16);
  std::vector<UltrametricSpace> spaces;
  for (int i = 0; i < 20; ++i) {
    spaces.push_back(random_ultrametric(size(rng), rng));
    const BasisFamily f = generalised_vdp(spaces.back());
    o.require(check_unimodular(f).unimodular, "generalised vdP basis");
    o.require(products_closed(f), "generalised vdP products");
    ++families;
  }
  std::uniform_int_distribution<long> value(-20, 20);
  std::uniform_int_distribution<size_t> pick(0, levels.size() - 1);
  for (int i = 0; i < 100; ++i) {
    BasisFamily f;
    long p = 2;
    if (i % 2 == 0) {
      const auto lv = levels[pick(rng)];
      p = lv.first;
      f = vdp_basis_level(lv.first, lv.second);
    } else {
      f = generalised_vdp(spaces[static_cast<size_t>(i / 2) % spaces.size()]);
      p = i % 3 == 0 ? 3 : 2;
    }
    const bool residue = i % 4 == 3;
    const RingDescriptor ring = residue ? RingDescriptor::fp_triv(p) : RingDescriptor::int_triv();
    std::vector<Element> vals;
    for (int c = 0; c < f.column_count; ++c) vals.push_back(ring.reduce(value(rng)));
    const std::vector<Element> coeffs = vdp_expand(vals, ring, f);
    const BasePoint padic = BasePoint::padic_pow(p, 1);
    const auto norm = [&](const Element& a) { return residue ? ring.norm(a) : padic.eval(a); };
    o.require(vdp_orthonormality(vals, coeffs, norm).holds(), "orthonormality");
  }
  o.detail << families << " families unimodular; 100 expansions orthonormal";
}

void criterion_weierstrass(Outcome& o, const AcceptanceOptions&) {
  size_t certs = 0;
  for (const auto& ring : {RingDescriptor::int_inf(), RingDescriptor::int_triv()}) {
    for (int n = 1; n <= 4; ++n) {
      auto x = make_space(FiniteSpace::discrete(n));
      for_each_vector(static_cast<size_t>(n), -2, 2, [&](const std::vector<Element>& g) {
        for (size_t a = 0; a < g.size(); ++a)
          for (size_t b = a + 1; b < g.size(); ++b)
            if (g[a] == g[b]) return;
        const std::vector<CfinFunction> gens{CfinFunction(x, ring, g)};
        for (Mask u = 0; u <= x->all(); ++u) {
          const SWCertificate cert = sw_construct_indicator(x, ring, gens, u);
          o.require(verify_certificate(cert, x, gens), "certificate evaluation");
          ++certs;
        }
      });
    }
  }
  const auto ring = RingDescriptor::int_inf();
  auto x = make_space(FiniteSpace::discrete(3));
  const std::vector<CfinFunction> gens{CfinFunction::from_points(x, ring, {0, 1, 2})};
  const SWCertificate cert = sw_construct_indicator(x, ring, gens, mask_of({1}));
  o.require(cert.a_u == 16, "worked trace a_U");
  o.require(cert.evaluation == std::vector<Element>{0, 16, 0}, "worked trace evaluation");
  o.detail << certs << " certificates verified; worked trace a_U = " << cert.a_u.get_str();
}

void criterion_gelfand(Outcome& o, const AcceptanceOptions& opts) {
  size_t n = 0;
  for (const auto& x : fixture_spaces(opts.seed)) {
    const GelfandWitness w = gelfand_roundtrip(x, RingDescriptor::int_inf());
    o.require(w.bijective && w.recovered_classes == w.quasi_components, "recovered components");
    ++n;
  }
  bool raised = false;
  try {
    gelfand_roundtrip(make_space(FiniteSpace::discrete(2)), RingDescriptor::zmod_triv(6));
  } catch (const Error& e) {
    raised = e.kind() == ErrorKind::DisconnectedSpectrum;
  }
  o.require(raised, "ZmodTriv(6) did not raise DisconnectedSpectrum");
  o.detail << n << " fixture spaces recovered; ZmodTriv(6) rejected";
}

void criterion_strong_exactness(Outcome& o, const AcceptanceOptions& opts) {
  std::mt19937_64 rng(opts.seed ^ 0x9ULL);
  const auto spaces = fixture_spaces(opts.seed);
  mpq_class worst0 = 0, worst1 = 0;
  for (int i = 0; i < 50; ++i) {
    const StrictSequence seq = random_strict_sequence(rng);
    const StrongExactnessReport rep = check_strong_exactness(spaces[static_cast<size_t>(i) % spaces.size()], seq, rng, 8);
    o.require(rep.ok(), "sequence " + std::to_string(i));
    if (seq.c0 > 0 && rep.worst_c0_ratio / seq.c0 > worst0) worst0 = rep.worst_c0_ratio / seq.c0;
    if (rep.worst_c1_ratio > worst1) worst1 = rep.worst_c1_ratio;
  }
  o.detail << "50 sequences exact; worst kernel-lift ratio / C0 = " << worst0.get_str()
           << ", worst quotient-lift ratio = " << worst1.get_str();
}

void criterion_extension(Outcome& o, const AcceptanceOptions& opts) {
  const auto ring = RingDescriptor::int_inf();
  size_t checked = 0;
  for (const auto& x : fixture_spaces(opts.seed)) {
    const Compactification z = banaschewski(*x);
    for_each_vector(static_cast<size_t>(x->component_count()), -2, 2, [&](const std::vector<Element>& v) {
      const CfinFunction f(x, ring, v);
      const CfinFunction g = extend_banaschewski(f);
      o.require(restrict(g, z.iota, x) == f, "restrict o extend != id");
      o.require(sup_norm(g) == sup_norm(f), "norm changed");
      ++checked;
    });
  }
  o.detail << checked << " functions extended isometrically";
}

const std::vector<std::pair<std::string, std::function<void(Outcome&, const AcceptanceOptions&)>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<void(Outcome&, const AcceptanceOptions&)>>> list = {
      {"Tate-acyclicity equivalence", criterion_tate},
      {"Spectrum homeomorphism", criterion_spectrum},
      {"Ideal sum-split constant", criterion_sum_split},
      {"Absorbing-law dichotomy", criterion_absorbing},
      {"Mahler identity", criterion_mahler},
      {"Basis certificates", criterion_bases},
      {"Stone-Weierstrass construction", criterion_weierstrass},
      {"Gelfand round trip", criterion_gelfand},
      {"Strong exactness", criterion_strong_exactness},
      {"Extension isometry", criterion_extension},
  };
  return list;
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& opts) {
  if (id < 1 || id > kCriterionCount) fail(ErrorKind::InvalidInput, "criteria are numbered 1.." + std::to_string(kCriterionCount));
  const auto& [name, body] = criteria()[static_cast<size_t>(id - 1)];
  CriterionResult r;
  r.id = id;
  r.name = name;
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o, opts);
  } catch (const std::exception& e) {
    o.passed = false;
    o.detail << "exception: " << e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.passed = o.passed;
  r.detail = o.detail.str();
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, opts));
  return out;
}

}  // namespace dbl

#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "dbl/acceptance.hpp"
#include "dbl/error.hpp"
#include "dbl/fixtures.hpp"

namespace dbl::cli {

namespace {

Json parse_inline(const std::string& text, const char* what) {
  try {
    return parse_json(text);
  } catch (const Error& e) {
    fail(ErrorKind::InvalidInput, std::string(what) + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidInput, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_inline(buf.str(), path.c_str());
}

// The --input document; explicit flags take precedence over its fields.
Json load_input(const Options& o) {
  if (o.input_file.empty()) return Json::object();
  Json doc;
  if (o.input_file == "-") {
    std::stringstream buf;
    buf << std::cin.rdbuf();
    doc = parse_inline(buf.str(), "stdin");
  } else {
    doc = read_json_file(o.input_file);
  }
  if (!doc.is_object()) fail(ErrorKind::InvalidInput, "--input must hold a JSON object");
  return doc;
}

SpacePtr load_space(const Options& o, FiniteSpace fallback, const Json& doc = Json::object()) {
  if (!o.space_json.empty()) return make_space(space_from_json(parse_inline(o.space_json, "--space")));
  if (!o.space_file.empty()) return make_space(space_from_json(read_json_file(o.space_file)));
  if (doc.contains("space")) return make_space(space_from_json(doc["space"]));
  return make_space(std::move(fallback));
}

RingDescriptor ring_or(const Options& o, const RingDescriptor& fallback, const Json& doc = Json::object()) {
  if (!o.ring.empty()) return parse_ring(o.ring);
  if (doc.contains("ring")) return ring_from_json(doc["ring"]);
  return fallback;
}

// Inline flag text, else the document field, else the default text.
Json field_or(const std::string& flag_text, const char* flag, const Json& doc, const char* key, const char* fallback) {
  if (!flag_text.empty()) return parse_inline(flag_text, flag);
  if (doc.contains(key)) return doc[key];
  return fallback ? Json::parse(fallback) : Json();
}

std::vector<Mask> masks_from_json(const Json& j, int points, const char* what) {
  if (!j.is_array()) fail(ErrorKind::InvalidInput, std::string(what) + " must be a list of point arrays");
  std::vector<Mask> out;
  for (const auto& s : j) out.push_back(mask_from_json(s, points));
  return out;
}

// Calls body on the vectors of {lo..hi}^n in lexicographic order, stopping
// after `limit` of them.
template <class F>
void for_each_vector(size_t n, long lo, long hi, F&& body, size_t limit = SIZE_MAX) {
  std::vector<Element> v(n, lo);
  for (size_t seen = 0; seen < limit; ++seen) {
    body(v);
    size_t pos = 0;
    while (pos < n && v[pos] == hi) v[pos++] = lo;
    if (pos == n) return;
    v[pos] += 1;
  }
}

// {0..n-1} with d(x, y) = 2^-v(x - y).
UltrametricSpace two_adic_ultrametric(int n) {
  std::vector<std::vector<mpq_class>> d(static_cast<size_t>(n), std::vector<mpq_class>(static_cast<size_t>(n), 0));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      mpq_class r = 1;
      for (int diff = std::abs(x - y); diff % 2 == 0; diff /= 2) r /= 2;
      d[static_cast<size_t>(x)][static_cast<size_t>(y)] = r;
    }
  return UltrametricSpace(std::move(d));
}

std::string count_detail(size_t n, const char* what) { return std::to_string(n) + " " + what; }

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ValidationFailure:
    case ErrorKind::EquivalenceViolation:
    case ErrorKind::NoSection:
    case ErrorKind::CocycleViolation:
    case ErrorKind::NonSeparating:
    case ErrorKind::DisconnectedSpectrum:
    case ErrorKind::NotUltrafilter:
    case ErrorKind::UnrecognizedBasePoint:
    case ErrorKind::NoWitness:
    case ErrorKind::CannotSeparate:
      return 1;
    default:
      return 2;
  }
}

void run_space(const Options& o, Report& r) {
  const auto x = load_space(o, FiniteSpace::discrete(3));
  const auto ring = ring_or(o, RingDescriptor::int_inf());
  r.inputs["space"] = to_json(*x);
  r.inputs["ring"] = to_json(ring);

  Json clo = Json::array();
  for (Mask u : x->clopens()) clo.push_back(mask_to_json(u));
  const auto bz = banaschewski(*x);
  Json ufs = Json::array();
  for (const auto& f : ultrafilters(*x)) {
    Json sets = Json::array();
    for (Mask u : f) sets.push_back(mask_to_json(u));
    ufs.push_back(sets);
  }
  r.result["clopens"] = clo;
  r.result["zeta_points"] = bz.zeta.size();
  r.result["iota"] = bz.iota;
  r.result["ultrafilters"] = ufs;

  bool closure_ok = true;
  for (Mask u : x->clopens()) {
    const Mask bar = clopen_closure(*x, u);
    Mask pre = 0;
    for (int p = 0; p < x->size(); ++p)
      if (contains(bar, bz.iota[static_cast<size_t>(p)])) pre |= Mask(1) << p;
    closure_ok &= pre == u;
  }
  r.verdict("clopen closure pulls back to U", closure_ok, count_detail(x->clopens().size(), "clopens"));
  r.verdict("ultrafilters match points of zeta(X)", ufs.size() == static_cast<size_t>(bz.zeta.size()));

  const auto comps = static_cast<size_t>(x->component_count());
  size_t checked = 0;
  bool iso = true;
  auto check = [&](const std::vector<Element>& v) {
    const CfinFunction f(x, ring, v);
    const auto g = extend_banaschewski(f);
    iso &= sup_norm(g) == sup_norm(f) && restrict(g, bz.iota, x) == f;
    ++checked;
  };
  if (comps <= 4 || !o.seed_given) {
    for_each_vector(
        comps, -2, 2,
        [&](const std::vector<Element>& v) {
          std::vector<Element> red;
          for (const auto& a : v) red.push_back(ring.reduce(a));
          check(red);
        },
        625);
  } else {
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<long> d(-2, 2);
    for (int i = 0; i < 500; ++i) {
      std::vector<Element> v;
      for (size_t c = 0; c < comps; ++c) v.push_back(ring.reduce(d(rng)));
      check(v);
    }
  }
  r.verdict("extension to zeta(X) is an isometric inverse of restriction", iso, count_detail(checked, "functions"));
}

void run_spectrum(const Options& o, Report& r) {
  const auto x = load_space(o, FiniteSpace::discrete(2));
  const auto ring = ring_or(o, RingDescriptor::int_inf());
  r.inputs["space"] = to_json(*x);
  r.inputs["ring"] = to_json(ring);

  Json points = Json::array();
  for (const auto& b : sample_base_points(ring)) {
    points.push_back(to_json(b));
    bool valid = true;
    std::string why;
    try {
      validate_point(ring, b, 20);
    } catch (const Error& e) {
      valid = false;
      why = e.what();
    }
    r.verdict("base point " + b.name() + " is a bounded multiplicative seminorm", valid, why);
  }
  r.result["base_points"] = points;

  size_t trips = 0;
  bool ok = true;
  for (int c = 0; c < x->component_count(); ++c)
    for (const auto& b : sample_base_points(ring)) {
      ok &= G_split(G_inverse(c, b, x, ring), x, ring) == SpectrumPoint{c, b};
      ++trips;
    }
  r.verdict("G_split inverts G_inverse", ok, count_detail(trips, "spectrum points"));

  const auto w = gelfand_roundtrip(x, ring);
  r.result["gelfand"] = Json{{"quasi_components", w.quasi_components},
                             {"recovered_classes", w.recovered_classes},
                             {"class_of_component", w.class_of_component},
                             {"points_checked", w.points_checked}};
  r.verdict("quasi-components recovered from the spectrum", w.bijective);
}

void run_cech(const Options& o, Report& r) {
  const Json doc = load_input(o);
  const auto ring = ring_or(o, RingDescriptor::int_inf(), doc);
  r.inputs["ring"] = to_json(ring);
  if (o.exhaustive) {
    if (o.max_points < 1 || o.max_points > 5) fail(ErrorKind::SizeExceeded, "--max-points must be in 1..5");
    if (o.max_sets < 1 || o.max_sets > 4) fail(ErrorKind::SizeExceeded, "--max-sets must be in 1..4");
    r.inputs["exhaustive"] = true;
    r.inputs["max_points"] = o.max_points;
    r.inputs["max_sets"] = o.max_sets;
    const auto rep = enumerate_equivalence(o.max_points, o.max_sets, ring);
    r.result["cases"] = rep.cases;
    r.result["covers"] = rep.covers;
    r.result["disagreements"] = rep.disagreements;
    r.result["module_disagreements"] = rep.module_disagreements;
    r.result["max_section_constant"] = rep.max_section_constant;
    if (rep.first_failure) r.result["first_failure"] = *rep.first_failure;
    r.verdict("cover iff acyclic", rep.disagreements == 0, count_detail(rep.cases, "families"));
    r.verdict("module coefficients agree with scalars", rep.module_disagreements == 0);
    r.verdict("section constants at most 2", rep.max_section_constant <= 2);
    return;
  }

  const auto x = load_space(o, FiniteSpace::discrete(3), doc);
  const Json fj = field_or(o.family_json, "--family", doc, "family", "[[0,1],[1,2]]");
  const auto fam = make_family(x, masks_from_json(fj, x->size(), "--family"));
  r.inputs["space"] = to_json(*x);
  r.inputs["family"] = fj;
  r.inputs["coefficient_rank"] = o.coefficient_rank;

  const auto c = build_tate_cech(fam, ring, o.coefficient_rank);
  bool squared = true;
  try {
    verify_d_squared(c);
  } catch (const Error&) {
    squared = false;
  }
  r.verdict("d o d = 0", squared);

  const auto ex = exactness(c);
  Json hom = Json::array();
  for (const auto& h : ex.homology) hom.push_back(to_json(h));
  r.result["dims"] = c.dims;
  r.result["homology"] = hom;
  r.result["cover"] = is_cover(fam);
  r.result["exact"] = ex.exact();

  Json secs = Json::array();
  bool within = true;
  for (const auto& s : strict_sections(c, fam)) {
    secs.push_back(Json{{"degree", s.degree}, {"kind", s.kind}, {"constant", s.constant.to_string()}, {"declared", s.declared}});
    within &= s.constant <= NormValue::rational(s.declared);
  }
  r.result["sections"] = secs;
  r.verdict("section constants within their declared bounds", within, count_detail(secs.size(), "sections"));

  if (!x->is_discrete()) {
    r.result["equivalence"] = "not applicable: X is not Hausdorff";
    return;
  }
  const auto eq = tate_equivalence_report(fam, ring, o.coefficient_rank);
  r.result["zero_ring"] = eq.zero_ring;
  if (eq.witness) r.result["witness"] = to_json(*eq.witness);
  r.verdict("cover iff acyclic", eq.zero_ring || eq.cover == eq.exact);
}

void run_tensor(const Options& o, Report& r) {
  const auto x = load_space(o, FiniteSpace::discrete(2));
  const auto ring = ring_or(o, RingDescriptor::int_triv());
  if (!ring.is_integer()) fail(ErrorKind::UnsupportedRing, "tensor demonstrations run over IntInf or IntTriv");
  if (o.max_n < 1 || o.max_n > kMaxDiscretePoints - 1) {
    fail(ErrorKind::SizeExceeded, "--max-n must be in 1.." + std::to_string(kMaxDiscretePoints - 1));
  }
  r.inputs["space"] = to_json(*x);
  r.inputs["ring"] = to_json(ring);
  r.inputs["max_n"] = o.max_n;
  r.inputs["budget"] = o.budget;

  // Absorbing law on the given space.
  const auto mode = ring.non_archimedean() ? NormMode::NonArchimedean : NormMode::Archimedean;
  const WeightedFreeModule m0(ring, {"a", "b"}, {NormValue::one(), NormValue::rational(2)}, mode);
  const WeightedFreeModule m1(ring, {"c", "d"}, {NormValue::one(), NormValue::rational(3)}, mode);
  const auto map = absorbing_map(x, m0, m1);
  const size_t rows = map.source_left.rank();
  size_t checked = 0;
  bool inverse = true, isometric = true;
  auto check = [&](const std::vector<Element>& flat) {
    IntMatrix a(rows, 2);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < 2; ++j) a(i, j) = flat[i * 2 + j];
    const TensorElement t(map.source_left, map.right, a);
    const auto f = map.forward(t);
    inverse &= map.backward(f) == t;
    if (mode == NormMode::NonArchimedean) isometric &= sup_norm(f) == tensor_norm_nonarch(t);
    ++checked;
  };
  if (rows * 2 <= 8 || !o.seed_given) {
    for_each_vector(rows * 2, -1, 1, check, rows * 2 <= 8 ? SIZE_MAX : static_cast<size_t>(o.samples));
  } else {
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<long> d(-1, 1);
    for (int i = 0; i < o.samples; ++i) {
      std::vector<Element> v;
      for (size_t k = 0; k < rows * 2; ++k) v.push_back(d(rng));
      check(v);
    }
  }
  r.result["absorbing"] = Json{{"mode", mode == NormMode::NonArchimedean ? "NonArchimedean" : "Archimedean"},
                               {"target", to_json(map.target)},
                               {"tensors_checked", checked}};
  r.verdict("absorbing map is bijective", inverse, count_detail(checked, "tensors"));
  if (mode == NormMode::NonArchimedean) r.verdict("absorbing map is isometric", isometric);

  // Archimedean counterexample f_n over IntInf.
  Json growth = Json::array();
  bool unbounded = true;
  for (int n = 1; n <= o.max_n; ++n) {
    const auto cmap = counterexample_map(n);
    const auto t = absorbing_counterexample(n, cmap);
    const auto lower = tensor_rank_lower_bound(t);
    const auto image = sup_norm(cmap.forward(t));
    Json row{{"n", n}, {"lower_bound", lower.to_string()}, {"image_norm", image.to_string()}};
    unbounded &= lower == NormValue::rational(n + 1) && image == NormValue::one();
    if (n <= 3) {
      const auto upper = tensor_elem_norm_arch_upper(t, o.budget);
      row["upper_bound"] = upper.to_string();
      unbounded &= lower <= upper;
    }
    growth.push_back(row);
  }
  r.result["counterexample"] = growth;
  r.verdict("backward map grows like n over IntInf", unbounded);

  // Quotient base change M / nM.
  const WeightedFreeModule m(ring, {"a", "b"}, {NormValue::one(), NormValue::rational(2)}, mode);
  bool agrees = true;
  size_t classes = 0;
  for (long n = 1; n <= 7; ++n) {
    const auto bc = base_change_quotient(m, n);
    for (long a = -3 * n; a <= 3 * n; ++a)
      for (long b = -3; b <= 3; ++b, ++classes) agrees &= base_change_agrees(bc, IntVector{a, b});
  }
  r.verdict("M/nM agrees with the tensor side", agrees, count_detail(classes, "classes"));
}

void run_basis(const Options& o, Report& r) {
  r.inputs["kind"] = o.kind;
  BasisFamily fam;
  if (o.kind == "partition" || o.kind == "explicit") {
    const auto x = load_space(o, FiniteSpace::discrete(3));
    r.inputs["space"] = to_json(*x);
    if (o.kind == "partition") {
      fam = partition_basis(*x);
    } else {
      if (o.clopens_json.empty()) fail(ErrorKind::InvalidInput, "--clopens is required for an explicit family");
      const Json cj = parse_inline(o.clopens_json, "--clopens");
      r.inputs["clopens"] = cj;
      const auto masks = masks_from_json(cj, x->size(), "--clopens");
      fam = family_from_clopens(*x, masks);
    }
  } else if (o.kind == "vdp" || o.kind == "mahler") {
    r.inputs["p"] = o.prime;
    r.inputs["k"] = o.level;
    if (o.level < 1) fail(ErrorKind::InvalidInput, "--level must be positive");
    if (!is_prime(o.prime)) fail(ErrorKind::InvalidInput, "--prime must be prime");
    if (o.kind == "vdp") {
      fam = vdp_basis_level(o.prime, o.level);
      r.verdict("products of carriers stay in the family or vanish", products_closed(fam));
      const auto t = basis_change_matrix(fam, mahler_level_basis(o.prime, o.level));
      const auto det = basis_determinant(t);
      r.result["change_to_mahler_determinant"] = to_json(det);
      r.verdict("change of basis to the binomials is unimodular", abs(det) == 1);
    } else {
      const auto cert = mahler_level_unimodular(o.prime, o.level);
      fam = mahler_level_basis(o.prime, o.level);
      r.result["certificate"] = Json{{"size", cert.size},
                                     {"lower_unitriangular", cert.lower_unitriangular},
                                     {"determinant", to_json(cert.determinant)}};
      r.verdict("binomial matrix is lower unitriangular", cert.lower_unitriangular);
    }
  } else if (o.kind == "generalised") {
    UltrametricSpace u = [&] {
      if (!o.ultrametric_file.empty()) return ultrametric_from_json(read_json_file(o.ultrametric_file));
      if (o.ultrametric_points < 1 || o.ultrametric_points > 64) fail(ErrorKind::SizeExceeded, "--points must be in 1..64");
      if (o.seed_given) {
        std::mt19937_64 rng(o.seed);
        return random_ultrametric(o.ultrametric_points, rng);
      }
      return two_adic_ultrametric(o.ultrametric_points);
    }();
    r.inputs["ultrametric"] = to_json(u);
    fam = generalised_vdp(u);
    r.verdict("products of carriers stay in the family or vanish", products_closed(fam));
  } else {
    fail(ErrorKind::InvalidInput, "unknown basis kind \"" + o.kind + "\"");
  }
  const auto uni = check_unimodular(fam);
  r.result["family"] = to_json(fam);
  r.result["determinant"] = to_json(uni.determinant);
  r.verdict("evaluation matrix is unimodular", uni.unimodular, "det " + uni.determinant.get_str());
}

void run_mahler(const Options& o, Report& r) {
  if (!o.values_json.empty()) {
    const Json vj = parse_inline(o.values_json, "--values");
    if (!vj.is_array() || vj.empty()) fail(ErrorKind::InvalidInput, "--values must be a nonempty integer array");
    std::vector<mpz_class> vals;
    for (const auto& v : vj) vals.push_back(integer_from_json(v));
    r.inputs["values"] = vj;
    const auto a = mahler_coeffs(vals);
    Json coeffs = Json::array();
    for (const auto& c : a) coeffs.push_back(to_json(c));
    r.result["coefficients"] = coeffs;
    bool ok = true;
    for (size_t x = 0; x < vals.size(); ++x) ok &= mahler_eval(a, static_cast<long>(x)) == vals[x];
    r.verdict("sum a_n C(x, n) reproduces f", ok, count_detail(vals.size(), "points"));
    if (o.modulus != 0) {
      if (o.modulus < 1) fail(ErrorKind::InvalidInput, "--modulus must be positive");
      r.inputs["modulus"] = o.modulus;
      Json red = Json::array();
      for (const auto& c : mahler_coeffs_mod(vals, o.modulus)) red.push_back(to_json(c));
      r.result["coefficients_mod"] = red;
    }
    if (!o.pairing) return;
  }
  if (o.max_index < 0 || o.max_index > 200) fail(ErrorKind::SizeExceeded, "--max must be in 0..200");
  r.inputs["pairing"] = true;
  r.inputs["max"] = o.max_index;
  size_t bad = 0, total = 0;
  for (long n = 0; n <= o.max_index; ++n)
    for (long i = 0; i <= o.max_index; ++i, ++total) bad += mahler_pairing(n, i) != (n == i ? 1 : 0);
  r.result["pairings"] = total;
  r.result["off_delta"] = bad;
  r.verdict("pairing equals the Kronecker delta", bad == 0, count_detail(total, "pairs"));
}

void run_sw(const Options& o, Report& r) {
  const Json doc = load_input(o);
  const auto x = load_space(o, FiniteSpace::discrete(3), doc);
  const auto ring = ring_or(o, RingDescriptor::int_inf(), doc);
  const Json gj = field_or(o.gens_json, "--gens", doc, "gens", "[[0,1,2]]");
  if (!gj.is_array() || gj.empty()) fail(ErrorKind::InvalidInput, "--gens must be a nonempty list of value arrays");
  r.inputs["space"] = to_json(*x);
  r.inputs["ring"] = to_json(ring);
  r.inputs["gens"] = gj;
  std::vector<CfinFunction> gens;
  for (const auto& g : gj) gens.push_back(function_from_json(g, x, ring));
  if (!ring.ordered()) fail(ErrorKind::UnsupportedRing, "the construction needs an ordered ring, got " + ring.name());

  const auto sep = separates_points(gens, *x);
  if (!sep.separates) {
    const auto [a, b] = *sep.witness;
    r.witness = Json{{"components", {a, b}},
                     {"blocks", {mask_to_json(x->quasi_components()[static_cast<size_t>(a)]),
                                 mask_to_json(x->quasi_components()[static_cast<size_t>(b)])}}};
    r.verdict("generators separate points", false);
    fail(ErrorKind::NonSeparating, "no generator separates components " + std::to_string(a) + " and " + std::to_string(b));
  }
  r.verdict("generators separate points", true);

  std::vector<Mask> targets;
  if (const Json cj = field_or(o.clopen_json, "--clopen", doc, "clopen", nullptr); !cj.is_null()) {
    r.inputs["clopen"] = cj;
    targets.push_back(mask_from_json(cj, x->size()));
  } else {
    targets = x->clopens();
  }
  Json certs = Json::array();
  bool ok = true;
  for (Mask u : targets) {
    const auto cert = sw_construct_indicator(x, ring, gens, u);
    ok &= verify_certificate(cert, x, gens);
    certs.push_back(to_json(cert));
  }
  r.result["certificates"] = certs;
  r.verdict("certificates evaluate to a_U 1_U with a_U > 0", ok, count_detail(targets.size(), "clopens"));
}

void run_suite(const Options& o, Report& r) {
  std::vector<int> ids = o.only;
  if (ids.empty())
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  for (int id : ids)
    if (id < 1 || id > kCriterionCount) fail(ErrorKind::InvalidInput, "criterion ids run from 1 to 10");
  AcceptanceOptions opts;
  if (o.seed_given) opts.seed = o.seed;
  opts.budget = o.budget;
  r.inputs["seed"] = opts.seed;
  r.inputs["budget"] = o.budget;
  r.inputs["criteria"] = ids;
  Json rows = Json::array();
  for (int id : ids) {
    const auto c = run_criterion(id, opts);
    rows.push_back(Json{{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"seconds", c.seconds}});
    r.verdict(std::to_string(c.id) + ". " + c.name, c.passed, c.detail);
  }
  r.result["criteria"] = rows;
}

}  // namespace dbl::cli

#include "dbl/json_io.hpp"

#include <regex>

#include "dbl/error.hpp"

namespace dbl {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::InvalidInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

RingDescriptor parse_ring(const std::string& text) {
  static const std::regex pattern(R"(\s*(IntInf|IntTriv|FpTriv|ZmodTriv|ZmodQuot)\s*(?:\(\s*(\d+)\s*\))?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) bad("unknown ring \"" + text + "\"");
  const std::string kind = m[1];
  const bool has_arg = m[2].matched;
  const bool needs_arg = kind != "IntInf" && kind != "IntTriv";
  if (has_arg != needs_arg) bad("ring \"" + text + "\" has the wrong number of parameters");
  if (!needs_arg) return kind == "IntInf" ? RingDescriptor::int_inf() : RingDescriptor::int_triv();
  long n = 0;
  try {
    n = std::stol(m[2]);
  } catch (const std::exception&) {
    bad("ring parameter out of range");
  }
  // Well-formed text with a bad parameter keeps the constructor's UnsupportedRing.
  if (kind == "FpTriv") return RingDescriptor::fp_triv(n);
  if (kind == "ZmodTriv") return RingDescriptor::zmod_triv(n);
  return RingDescriptor::zmod_quot(n);
}

Json to_json(const RingDescriptor& r) {
  static const char* const kinds[] = {"IntInf", "IntTriv", "FpTriv", "ZmodTriv", "ZmodQuot"};
  Json out{{"kind", kinds[static_cast<int>(r.kind())]}};
  if (r.kind() == RingKind::FpTriv) out["p"] = r.modulus();
  if (r.kind() == RingKind::ZmodTriv || r.kind() == RingKind::ZmodQuot) out["n"] = r.modulus();
  return out;
}

RingDescriptor ring_from_json(const Json& j) {
  if (j.is_string()) return parse_ring(j.get<std::string>());
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) bad("ring kind must be a string");
  std::string text = kind.get<std::string>();
  for (const char* key : {"p", "n"})
    if (j.contains(key)) {
      if (!j.at(key).is_number_integer()) bad(std::string("ring parameter \"") + key + "\" must be an integer");
      text += "(" + std::to_string(j.at(key).get<long>()) + ")";
    }
  return parse_ring(text);
}

Json to_json(const mpz_class& a) {
  if (a.fits_slong_p()) return a.get_si();
  return a.get_str();
}

mpz_class integer_from_json(const Json& j) {
  if (j.is_number_integer()) return mpz_class(j.get<long>());
  if (j.is_string()) {
    mpz_class a;
    if (a.set_str(j.get<std::string>(), 10) != 0) bad("not an integer: " + j.get<std::string>());
    return a;
  }
  bad("expected an integer, got " + j.dump());
}

mpq_class rational_from_json(const Json& j) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (j.is_string()) {
    mpq_class q;
    if (q.set_str(j.get<std::string>(), 10) != 0) bad("not a rational: " + j.get<std::string>());
    if (q.get_den() == 0) bad("zero denominator");
    q.canonicalize();
    return q;
  }
  bad("expected a rational (integer or \"p/q\"), got " + j.dump());
}

Json mask_to_json(Mask m) {
  Json out = Json::array();
  for (int p : points_of(m)) out.push_back(p);
  return out;
}

Mask mask_from_json(const Json& j, int points) {
  if (!j.is_array()) bad("expected a point array, got " + j.dump());
  Mask m = 0;
  for (const auto& p : j) {
    if (!p.is_number_integer()) bad("point indices are integers");
    const long x = p.get<long>();
    if (x < 0 || x >= points) fail(ErrorKind::ElementOutOfRange, "point " + std::to_string(x) + " outside the space");
    m |= Mask(1) << x;
  }
  return m;
}

Json to_json(const FiniteSpace& x) {
  Json opens = Json::array();
  for (const auto& g : x.generators()) opens.push_back(g);
  Json comps = Json::array();
  for (Mask c : x.quasi_components()) comps.push_back(mask_to_json(c));
  return Json{{"points", x.size()}, {"opens", opens}, {"quasi_components", comps}};
}

FiniteSpace space_from_json(const Json& j) {
  if (j.is_object() && j.contains("discrete")) {
    if (!j.at("discrete").is_number_integer()) bad("\"discrete\" takes a point count");
    const long n = j.at("discrete").get<long>();
    if (n < 0) bad("negative point count");
    if (n > kMaxDiscretePoints) fail(ErrorKind::SizeExceeded, "at most " + std::to_string(kMaxDiscretePoints) + " points");
    return FiniteSpace::discrete(static_cast<int>(n));
  }
  const Json& pts = field(j, "points");
  if (!pts.is_number_integer() || pts.get<long>() < 0) bad("\"points\" must be a nonnegative integer");
  const long n = pts.get<long>();
  if (n > kMaxDiscretePoints) fail(ErrorKind::SizeExceeded, "at most " + std::to_string(kMaxDiscretePoints) + " points");
  std::vector<PointSet> gens;
  if (j.contains("opens")) {
    if (!j.at("opens").is_array()) bad("\"opens\" must be a list of point arrays");
    for (const auto& o : j.at("opens")) gens.push_back(points_of(mask_from_json(o, static_cast<int>(n))));
  }
  return FiniteSpace(static_cast<int>(n), gens);
}

Json to_json(const UltrametricSpace& u) {
  Json dist = Json::array();
  for (const auto& row : u.matrix()) {
    Json r = Json::array();
    for (const auto& d : row) r.push_back(d.get_den() == 1 ? Json(d.get_num().get_si()) : Json(d.get_str()));
    dist.push_back(r);
  }
  return Json{{"points", u.size()}, {"dist", dist}};
}

UltrametricSpace ultrametric_from_json(const Json& j) {
  const Json& dist = field(j, "dist");
  if (!dist.is_array()) bad("\"dist\" must be a matrix");
  std::vector<std::vector<mpq_class>> m;
  for (const auto& row : dist) {
    if (!row.is_array()) bad("\"dist\" rows must be arrays");
    std::vector<mpq_class> r;
    for (const auto& d : row) r.push_back(rational_from_json(d));
    m.push_back(std::move(r));
  }
  if (j.contains("points") && j.at("points") != Json(m.size())) bad("\"points\" disagrees with the matrix size");
  return UltrametricSpace(std::move(m));
}

Json to_json(const BasePoint& b) {
  Json out{{"name", b.name()}};
  switch (b.kind()) {
    case BaseKind::ArchPow: out["kind"] = "ArchPow"; out["eps"] = b.eps().get_str(); break;
    case BaseKind::PadicPow: out["kind"] = "PadicPow"; out["p"] = b.prime(); out["eps"] = b.eps().get_str(); break;
    case BaseKind::PadicResidue: out["kind"] = "PadicResidue"; out["p"] = b.prime(); break;
    case BaseKind::Trivial: out["kind"] = "Trivial"; break;
  }
  return out;
}

BasePoint base_point_from_json(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  try {
    if (kind == "ArchPow") return BasePoint::arch_pow(rational_from_json(field(j, "eps")));
    if (kind == "PadicPow") return BasePoint::padic_pow(field(j, "p").get<long>(), rational_from_json(field(j, "eps")));
    if (kind == "PadicResidue") return BasePoint::padic_residue(field(j, "p").get<long>());
    if (kind == "Trivial") return BasePoint::trivial();
  } catch (const Json::exception& e) {
    bad(e.what());
  }
  bad("unknown base point kind \"" + kind + "\"");
}

Json to_json(const CfinFunction& f) {
  Json vals = Json::array();
  for (const auto& v : f.point_values()) vals.push_back(to_json(v));
  return Json{{"ring", f.ring().name()}, {"values", vals}};
}

CfinFunction function_from_json(const Json& j, const SpacePtr& x, const RingDescriptor& ring) {
  const Json& vals = j.is_array() ? j : field(j, "values");
  if (!vals.is_array()) bad("function values must be an array");
  std::vector<Element> v;
  for (const auto& a : vals) v.push_back(integer_from_json(a));
  return CfinFunction::from_points(x, ring, v);
}

Json to_json(const HomologyGroup& h) {
  Json torsion = Json::array();
  for (const auto& t : h.torsion) torsion.push_back(to_json(t));
  return Json{{"free_rank", h.free_rank}, {"torsion", torsion}, {"order", to_json(h.order)}, {"vanishes", h.vanishes()}};
}

Json to_json(const WeightedFreeModule& m) {
  Json basis = Json::array();
  for (size_t s = 0; s < m.rank(); ++s) basis.push_back(Json{{"label", m.labels()[s]}, {"weight", m.weights()[s].to_string()}});
  return Json{{"ring", m.ring().name()},
              {"mode", m.mode() == NormMode::Archimedean ? "Archimedean" : "NonArchimedean"},
              {"basis", basis}};
}

Json to_json(const IntMatrix& a) {
  Json rows = Json::array();
  for (size_t i = 0; i < a.rows(); ++i) {
    Json r = Json::array();
    for (size_t k = 0; k < a.cols(); ++k) r.push_back(to_json(a(i, k)));
    rows.push_back(r);
  }
  return rows;
}

Json to_json(const TensorElement& t) {
  return Json{{"left", t.left().labels()}, {"right", t.right().labels()}, {"coefficients", to_json(t.coeffs())}};
}

Json to_json(const BasisFamily& f) {
  Json out{{"kind", to_string(f.kind)}, {"size", f.size()}};
  if (f.prime != 0) {
    out["p"] = f.prime;
    out["k"] = f.level;
  }
  if (f.kind == BasisKind::Mahler) {
    out["degree_bound"] = f.column_count;
  } else {
    out["clopens"] = f.carriers;
  }
  return out;
}

Json to_json(const SWCertificate& c) {
  Json eval = Json::array();
  for (const auto& v : c.evaluation) eval.push_back(to_json(v));
  return Json{{"clopen", mask_to_json(c.target)},
              {"a_U", to_json(c.a_u)},
              {"tree", to_string(c.tree)},
              {"tree_nodes", node_count(c.tree)},
              {"chosen_points", c.chosen_points},
              {"evaluation", eval}};
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace dbl

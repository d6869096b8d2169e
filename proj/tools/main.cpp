// dbl: command-line front end. JSON on stdout, a short summary on stderr.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "commands.hpp"
#include "dbl/error.hpp"

namespace {

using dbl::Json;
using dbl::cli::Options;
using dbl::cli::Report;

using Handler = void (*)(const Options&, Report&);

Json verdicts_json(const Report& r) {
  Json out = Json::array();
  for (const auto& v : r.verdicts) {
    Json row{{"name", v.name}, {"passed", v.passed}};
    if (!v.detail.empty()) row["detail"] = v.detail;
    out.push_back(row);
  }
  return out;
}

void summarize(const std::string& sub, const Report& r, int code, const std::string& error) {
  std::cerr << "dbl " << sub << "\n";
  for (const auto& v : r.verdicts) {
    std::cerr << "  [" << (v.passed ? "ok" : "FAIL") << "] " << v.name;
    if (!v.detail.empty()) std::cerr << " (" << v.detail << ")";
    std::cerr << "\n";
  }
  if (!error.empty()) std::cerr << "  error: " << error << "\n";
  std::cerr << "  exit " << code << "\n";
}

void emit(const Json& j, bool pretty) { std::cout << (pretty ? j.dump(2) : j.dump()) << std::endl; }

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Finite models of locally constant functions, their spectra, Cech complexes and bases"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();

  app.add_option("--ring", o.ring, "IntInf, IntTriv, FpTriv(p), ZmodTriv(n) or ZmodQuot(n)");
  app.add_option("--space-file", o.space_file, "finite space as JSON {\"points\": n, \"opens\": [[...], ...]}");
  app.add_option("--space", o.space_json, "the same JSON given inline");
  auto* seed = app.add_option("--seed", o.seed, "seed for sampled checks; without it every check is deterministic enumeration");
  app.add_option("--max-points", o.max_points, "largest space in exhaustive enumerations");
  app.add_option("--max-sets", o.max_sets, "largest family in exhaustive enumerations");
  app.add_option("--budget", o.budget, "search budget for the Archimedean tensor upper bound");
  app.add_flag("--json", o.pretty, "pretty-print the JSON report");
  app.add_flag("--quiet", o.quiet, "no summary on stderr");

  std::map<CLI::App*, std::pair<std::string, Handler>> subs;
  auto sub = [&](const char* name, const char* help, Handler h) {
    auto* s = app.add_subcommand(name, help);
    subs[s] = {name, h};
    return s;
  };

  sub("space", "clopens, quasi-components and the Banaschewski compactification", dbl::cli::run_space);
  sub("spectrum", "base points, the spectrum round trip and Gelfand recovery", dbl::cli::run_spectrum);
  auto* cech = sub("cech", "Tate-Cech complex of a family of clopens", dbl::cli::run_cech);
  cech->add_option("--input", o.input_file, "JSON {\"space\", \"family\", \"ring\"}; - reads stdin");
  cech->add_option("--family", o.family_json, "clopens as a JSON list of point lists");
  cech->add_option("--rank", o.coefficient_rank, "rank of the free coefficient module");
  cech->add_flag("--exhaustive", o.exhaustive, "enumerate all spaces and families up to the size limits");
  auto* tensor = sub("tensor", "absorbing law, the Archimedean counterexample and base change", dbl::cli::run_tensor);
  tensor->add_option("--max-n", o.max_n, "largest n for the counterexample");
  tensor->add_option("--samples", o.samples, "sampled tensors when exhaustive checking is too large");
  auto* basis = sub("basis", "unimodular clopen bases", dbl::cli::run_basis);
  basis->add_option("--kind", o.kind, "partition, explicit, vdp, mahler or generalised")
      ->check(CLI::IsMember({"partition", "explicit", "vdp", "mahler", "generalised"}));
  basis->add_option("--prime", o.prime, "p for level families");
  basis->add_option("--level", o.level, "k for level families");
  basis->add_option("--clopens", o.clopens_json, "explicit family as a JSON list of point lists");
  basis->add_option("--ultrametric-file", o.ultrametric_file, "distance matrix as JSON");
  basis->add_option("--points", o.ultrametric_points, "size of the random ultrametric space");
  auto* mahler = sub("mahler", "Mahler coefficients and the binomial pairing", dbl::cli::run_mahler);
  mahler->add_flag("--pairing", o.pairing, "check the pairing against the Kronecker delta");
  mahler->add_option("--max", o.max_index, "largest index in the pairing table");
  mahler->add_option("--values", o.values_json, "f(0), f(1), ... as a JSON integer array");
  mahler->add_option("--modulus", o.modulus, "also reduce the coefficients mod m");
  auto* sw = sub("sw", "constructive Stone-Weierstrass certificates", dbl::cli::run_sw);
  sw->add_option("--input", o.input_file, "JSON {\"space\", \"gens\", \"clopen\"}; - reads stdin");
  sw->add_option("--gens", o.gens_json, "generators as a JSON list of per-point value arrays");
  sw->add_option("--clopen", o.clopen_json, "one target clopen as a point list; default all clopens");
  auto* suite = sub("suite", "run the acceptance criteria", dbl::cli::run_suite);
  suite->add_option("--only", o.only, "criterion ids")->delimiter(',');

  Json out = Json::object();
  out["schema"] = "1";
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    out["subcommand"] = nullptr;
    out["exit"] = 2;
    out["error"] = Json{{"kind", "InvalidInput"}, {"message", e.what()}};
    emit(out, o.pretty);
    if (!o.quiet) std::cerr << "dbl: " << e.what() << "\n  exit 2\n";
    return 2;
  }

  o.seed_given = seed->count() > 0;
  CLI::App* chosen = app.get_subcommands().front();
  const auto& [name, handler] = subs.at(chosen);
  out["subcommand"] = name;

  Report r;
  int code = 0;
  std::string error;
  const auto start = std::chrono::steady_clock::now();
  try {
    handler(o, r);
    for (const auto& v : r.verdicts)
      if (!v.passed) code = 1;
  } catch (const dbl::Error& e) {
    code = dbl::cli::exit_code_for(e.kind());
    error = e.what();
    Json err{{"kind", std::string(dbl::to_string(e.kind()))}, {"message", e.what()}};
    if (r.witness) err["witness"] = *r.witness;
    out["error"] = err;
  } catch (const std::exception& e) {
    code = 2;
    error = e.what();
    out["error"] = Json{{"kind", "InvalidInput"}, {"message", e.what()}};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  out["inputs"] = r.inputs;
  out["result"] = r.result;
  out["verdicts"] = verdicts_json(r);
  out["timing"] = Json{{"seconds", secs}};
  out["exit"] = code;
  emit(out, o.pretty);
  if (!o.quiet) summarize(name, r, code, error);
  return code;
}

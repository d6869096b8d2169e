#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dbl/error.hpp"
#include "dbl/json_io.hpp"

namespace dbl::cli {

struct Options {
  // shared
  std::string ring;  // empty: the subcommand's default
  std::string space_file;
  std::string space_json;
  std::string input_file;  // JSON document with the subcommand's inputs; "-" reads stdin
  std::uint64_t seed = 0x5eed2024ULL;
  bool seed_given = false;  // sampling happens only when --seed was passed
  int max_points = 4;
  int max_sets = 3;
  long budget = 2000;
  bool pretty = false;
  bool quiet = false;

  // cech
  std::string family_json;
  size_t coefficient_rank = 1;
  bool exhaustive = false;
  // tensor
  int max_n = 16;
  int samples = 500;
  // basis
  std::string kind = "vdp";
  long prime = 2;
  int level = 2;
  std::string clopens_json;
  std::string ultrametric_file;
  int ultrametric_points = 6;
  // mahler
  bool pairing = false;
  int max_index = 12;
  std::string values_json;
  long modulus = 0;
  // sw
  std::string gens_json;
  std::string clopen_json;
  // suite
  std::vector<int> only;
};

struct Verdict {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// What a subcommand produced before any error: echo of the inputs, the
/// result payload and the verdicts.
struct Report {
  Json inputs = Json::object();
  Json result = Json::object();
  std::vector<Verdict> verdicts;
  std::optional<Json> witness;  // attached to the error object on failure

  void verdict(std::string name, bool passed, std::string detail = "") {
    verdicts.push_back({std::move(name), passed, std::move(detail)});
  }
};

void run_space(const Options& o, Report& r);
void run_spectrum(const Options& o, Report& r);
void run_cech(const Options& o, Report& r);
void run_tensor(const Options& o, Report& r);
void run_basis(const Options& o, Report& r);
void run_mahler(const Options& o, Report& r);
void run_sw(const Options& o, Report& r);
void run_suite(const Options& o, Report& r);

/// 2 for malformed or unsupported input, 1 for a violated property.
int exit_code_for(ErrorKind kind);

}  // namespace dbl::cli

#pragma once
// Command-line front end. Every command prints human-readable lines followed by
// structured blocks
//   BEGIN <NAME>
//   <one line of JSON>
//   END <NAME>
// or, with --format json, a single JSON document {command, ok, blocks}.
// Exit status: 0 all checks certified, 1 mathematical failure (witness in the
// report), 2 usage or input error.
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "tcalg/category.hpp"
#include "tcalg/frobenius.hpp"

namespace tcalg {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// A path, a fixture name (ising, z4, ...) or a short alias (semion, fermion).
CategorySpec resolve_spec(const std::string& ref);
// "one", a carrier such as "1+psi" optionally with "#k", a JSON file written by
// algebra_to_json; a trailing "^opp" takes the opposite algebra.
FrobAlgebra resolve_algebra(const Engine& E, const std::string& ref);

struct MutationReport {
  int sampled = 0, detected = 0;
  std::vector<std::string> undetected;  // keys of mutations the validator accepted
};
// Multiplies one randomly chosen F entry by a primitive cube root of unity and
// revalidates, count times.
MutationReport sample_f_mutations(const CategorySpec& C, int count, unsigned seed);

// Algebras on every label subset containing the unit, in subset order.
struct ScanResult {
  std::vector<FrobAlgebra> algebras;
  std::vector<std::string> carriers;  // all carriers scanned
  bool exhaustive = true;
};
ScanResult scan_label_algebras(const Engine& E, long budget);

nlohmann::ordered_json brauer_scan(const Engine& E, long budget);
nlohmann::ordered_json jandl_classify(const Engine& E, long budget);

}  // namespace tcalg

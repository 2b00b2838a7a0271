#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "voa/ks.hpp"

namespace voa {

inline constexpr const char* kVersion = "0.3.0";

struct CheckRecord {
  std::string identity;
  std::string anchor;  // group of related checks
  bool pass = false;
  std::string detail;  // value found, or the counterexample
};

// outcome of running the Jacobi suite on one variant of a table
struct Adjudication {
  std::string variant;
  bool passes = false;
  std::string detail;
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckRecord> checks;
  std::vector<Adjudication> adjudication;
  double seconds = 0;  // not part of the deterministic content

  bool ok() const;
  std::size_t failures() const;
  nlohmann::ordered_json to_json(bool timing = false) const;
  std::string to_text(bool timing = false) const;
};

struct SuiteOptions {
  std::optional<Rational> cutoff;  // suite default when unset
  std::map<std::string, Rational> bindings;
};

std::vector<std::string> suite_names();
// throws std::invalid_argument for an unknown suite or conflicting bindings
VerificationReport run_suite(const std::string& name, const SuiteOptions& options);

nlohmann::ordered_json to_json(const KsJob& job);
nlohmann::ordered_json to_json(const KsReport& report);

}  // namespace voa

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace rvmono::cli {

inline constexpr const char* kVersion = "0.1.0";

/// 0: every check passed, 1: some check failed, 2: usage or input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct SuiteConfig {
  int d = 5;
  int r = 4;
  std::size_t count = 100;
  std::string family = "random";  // random | monotone
  std::uint64_t seed = 1;
  int jobs = 1;
  int colorings = 2;              // chain checks per instance: all-red, then random
  bool inject_corruption = false; // flip f_1 at its first source before verifying
};

struct SuiteResult {
  std::size_t instances = 0;
  std::size_t failed_instances = 0;
  nlohmann::ordered_json checks;             // check name -> {pass, fail, vacuous}
  std::vector<nlohmann::ordered_json> rows;  // one flat row per instance
  nlohmann::ordered_json failures;           // [{index, seed, check, witness}]
};

/// Instance k uses derive_seed(seed, k). Results are merged by index.
SuiteResult verify_inequalities(const SuiteConfig& cfg);

/// Header from the first row's keys; strings containing ',' or '"' are quoted.
std::string to_csv(const std::vector<nlohmann::ordered_json>& rows);

}  // namespace rvmono::cli

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace symfact::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitObstructed = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitVerifyFailed = 3;

struct CliConfig {
  std::string subcommand;
  std::string input;
  std::string output;
  std::string method = "auto";
  std::string kind = "haar";
  std::string det_normalize;
  std::optional<double> tol;  // alias for --verify-tol
  std::optional<double> verify_tol;
  std::optional<double> unitary_tol;
  std::optional<double> cluster_tol;
  std::uint64_t seed = 0;
  int dim = 0;
  int arc = 1;
  std::string demo;
};

// Entry point shared by the binary and the in-process tests. Data goes to
// `out` (or --out files), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace symfact::cli

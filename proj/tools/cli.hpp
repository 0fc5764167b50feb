#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace gausseig::cli {

using json = nlohmann::ordered_json;

enum class Format { json, csv };

struct RunConfig {
  double tol = 1e-9;
  double trunc_weight = 1e-18;
  int samples = 2001;     // eigenfunction samples per 1D or radial solve
  int mask_cells = 160;   // cells across a polar domain's bounding square
  int slide_points = 60;  // steps from one half-line to the other
  Format format = Format::json;
  std::string out;  // empty: stdout
  unsigned parallelism = 1;
  std::uint64_t seed = 20240601;

  /// Throws std::invalid_argument on tol outside (1e-14, 1e-2), parallelism < 1 or nonpositive grid sizes.
  void validate() const;
};

json to_json(const RunConfig& c);
/// Overlays the keys present in j onto base; unknown keys are rejected.
RunConfig from_json(const json& j, RunConfig base = {});

/// $GAUSSEIG_CONFIG if set, else ./gausseig.json.
std::string default_config_path();

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSolver = 3;

/// Parses args (without the program name), runs the subcommand and writes the document.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

/// Problems with a result document; empty when it matches the schema.
std::vector<std::string> schema_errors(const json& doc);

/// Results flattened into a header row plus one row per result.
std::string to_csv(const json& doc);

}  // namespace gausseig::cli

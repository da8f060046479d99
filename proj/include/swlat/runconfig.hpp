#pragma once

#include <array>
#include <optional>
#include <string>

#include "swlat/fields.hpp"

namespace swlat {

// Run configuration parsed from strict JSON: unknown keys are errors and
// the offending key is named. kg is a scalar or a 0-cochain payload file.
//
//   {
//     "lattice": {"n": 2, "h": 1.0},
//     "bundle":  {"flux": [0,0,0,0,0,0], "kg": -1.0},
//     "seed": 42,
//     "out_dir": "reports"
//   }
struct RunConfig {
  int n = 2;
  double h = 1.0;
  std::array<int, 6> flux{0, 0, 0, 0, 0, 0};
  double kg_constant = 0.0;
  std::optional<std::string> kg_file;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

// Builds the bundle from a parsed config (reads the kg payload if set).
BundleData make_bundle(const Lattice& lat, const RunConfig& cfg);

// Zero configuration (a = 0, phi = 0) on the config's lattice and bundle.
Configuration make_zero_configuration(const Lattice& lat, const RunConfig& cfg);

}  // namespace swlat

#pragma once
// Run configuration read from a JSON file. Every key is optional:
//
//   {
//     "domain": {"n": 2, "omega": 0.7853981633974483, "variant": "axisymmetric"},
//     "grid": {"q": 0.98, "r_max": 40, "r_min": 4e-11, "K": 0, "J": 96},
//     "suite": ["radial_exp", "logcounter(1)"],
//     "sweeps": {"eps": [...], "k": [...], "alpha": [...], "t": [...], "p": [...]},
//     "output_dir": "conelab-out",
//     "tolerances": {"hardy": 0.05, "roundtrip": 0.02, ...}
//   }
//
// p lists accept the string "inf". An empty alpha list means "derive the levels
// from the maximal function".

#include <filesystem>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "conelab/grid.hpp"

namespace conelab {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double hardy = 0.05;       // relative slack on p/(n-p)
  double slope = 0.10;       // relative slack on fitted slopes
  double cauchy = 0.02;      // last-decade relative increment
  double roundtrip = 0.02;   // ||R E f - f|| / ||f||
  double drift = 2.0;        // allowed ratio change under refinement or across alpha
  double reconstruction = 1e-10;
};

struct Sweeps {
  std::vector<double> eps{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  std::vector<double> k{2, 4, 8, 16};
  std::vector<double> alpha;  // empty: derived
  std::vector<double> t{1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3};
  std::vector<double> p{1.0, 1.5, 2.0, 3.0, std::numeric_limits<double>::infinity()};
};

struct RunConfig {
  ConeDomain domain;
  GridSpec grid;
  std::vector<std::string> suite;  // empty: each command's default suite
  Sweeps sweeps;
  std::filesystem::path output_dir = "conelab-out";
  Tolerances tol;

  /// Throws ConfigError with a message naming the offending key.
  void validate() const;
};

/// Parses JSON text; an empty or all-whitespace text gives the defaults.
RunConfig parse_config(std::string_view text);
/// Throws ConfigError for a missing file, bad JSON or invalid values.
RunConfig load_config(const std::filesystem::path& path);

}  // namespace conelab

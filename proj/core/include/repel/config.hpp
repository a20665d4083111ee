#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "repel/kernels.hpp"
#include "repel/manifold.hpp"
#include "repel/optimize.hpp"

namespace repel {

/// Config-file or points-file problem, carrying the offending key/row and
/// line number for the CLI diagnostic.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, std::string key = {}, int line = 0)
      : std::runtime_error(message), key_(std::move(key)), line_(line) {}
  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

/// Parsed run parameters. The file format is flat `key = value` lines with
/// dotted section prefixes and `#` comments; unknown keys are rejected by
/// name. See README for the full key table.
struct RunConfig {
  std::string manifold_type;          // "torus" | "bolza"
  std::vector<double> periods;        // torus only
  std::string kernel_family = "heat";
  double kernel_t = 0.0;              // required
  int n_points = 0;                   // required by minimize/verify/diagnose
  std::uint64_t seed = 0;
  bool deterministic = true;
  double eps_geo = 1e-10;
  double eps_spec = 1e-10;
  OptimizeParams optimize;
  int verify_samples = 20;
  int diagnose_samples = 2000;
  int baseline_samples = 200;         // hyperbolic nearest-neighbor proxy
  std::vector<int> sweep_n;
  double audit_radius = 6.0;
  std::size_t element_cap = 2000000;  // hyperbolic group enumeration hard cap

  Manifold make_manifold() const;
  KernelPair make_kernel() const;
  /// Effective key/value list in canonical order; reproduces the run.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

}  // namespace repel

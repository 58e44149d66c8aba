#pragma once

#include <optional>
#include <string>
#include <vector>

#include "critic/critical.hpp"

namespace critic::cli {

// Exit-code convention: 0 clean, 2 usage/data error, 3 detection positive.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDetection = 3;

struct RunConfig {
  std::string command;

  std::optional<std::string> map_file;
  std::optional<std::string> orbit_file;
  std::optional<std::string> julia_file;
  std::optional<std::string> seq_file;
  std::optional<int> K;
  std::optional<int> N;
  std::optional<double> slack;
  std::optional<std::string> beta_grid;
  std::optional<std::string> out_dir;
  std::optional<int> threads;
  std::optional<int> seed;
  std::optional<int> grid_n;
  std::optional<int> iters;
  std::optional<double> radius;
  std::optional<double> lambda;
  std::optional<double> C;
  std::optional<int> periods;
  std::optional<double> gamma0;
  std::optional<double> gamma1;

  int k_or(int def) const { return K.value_or(def); }
  int n_or(int def) const { return N.value_or(def); }
  int threads_resolved() const;
  std::string out_or(const std::string& def) const { return out_dir.value_or(def); }

  /// Fingerprint of the logical parameters (threads and output paths
  /// excluded, so reruns and thread sweeps hash identically).
  std::string config_hash() const;
};

/// Fill unset fields from a JSON config file mirroring the flag names.
void apply_config_file(RunConfig& cfg, const std::string& path);

std::vector<Beta> parse_beta_grid(const std::string& text);

int cmd_sample_julia(const RunConfig& cfg);
int cmd_detect_critical(const RunConfig& cfg);
int cmd_check_domination(const RunConfig& cfg);
int cmd_pliss(const RunConfig& cfg);
int cmd_report(const RunConfig& cfg);

}  // namespace critic::cli

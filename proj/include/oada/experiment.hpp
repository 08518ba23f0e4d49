#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "oada/overlap_adapt.hpp"

namespace oada {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string fcidump;
  /// adapt, overlap-adapt-fci, overlap-adapt-cipsi, overlap-adapt-ansatz, cipsi or fci.
  std::string method = "adapt";

  int p_overlap = 20;
  int p_total = 50;
  int p_target = 50;
  int rounds = 1;

  double gtol = 1e-8;
  double eps = 1e-3;
  double gtol_overlap = 1e-7;

  std::size_t cipsi_max_dets = 0;  // 0: no cap
  double cipsi_target_e2 = 0.0;

  int restarts = 0;
  std::uint64_t seed = 0;

  std::string trace_path;
  std::string overlap_trace_path;
  std::string state_path;
  std::string pool_path;
  std::string gnuplot_path;

  /// Throws ConfigError on the first problem found.
  void validate() const;
};

struct ExperimentOutcome {
  std::string summary;
  std::string trace_csv;
  std::string overlap_csv;  // empty unless an overlap phase ran
  double energy = 0.0;
  std::optional<double> e_fci;
  ResourceCount resources;
  int params = 0;
  Statevector state;
};

/// Runs the configured pipeline and writes every requested output file.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

/// `index re im` per nonzero amplitude.
std::string dump_state(const Statevector& s, double cutoff = 0.0);

/// A gnuplot script plotting |E - E_FCI| against the parameter count.
std::string gnuplot_script(const std::string& csv_path, const std::string& title);

}  // namespace oada

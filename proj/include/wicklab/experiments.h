#pragma once

// Experiment drivers. Each takes an ExperimentConfig (unset fields fall back
// to per-experiment built-ins, see resolve_defaults) and returns a report
// whose rows carry both the measured value and the bound it is held to.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace wicklab {

using Json = nlohmann::ordered_json;

struct NRange {
  int lo = 1;
  int hi = 1;
  friend bool operator==(const NRange&, const NRange&) = default;
};
// "4" or "1..6".
NRange parse_n_range(const std::string& text);
std::string format_n_range(const NRange& r);

struct ExperimentConfig {
  std::string experiment;
  std::optional<NRange> n;
  std::optional<int> degree;
  std::optional<double> rho;
  std::optional<int> k;
  std::optional<std::string> symbol;
  std::optional<std::vector<double>> lambda;  // eigenvalues for the variance identity
  std::optional<double> shift;                // c in the shifted Garding family
  std::optional<double> alpha;                // orders of the radial pair N_alpha N_beta
  std::optional<double> beta;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> format;  // json | csv
  // zone planner inputs
  std::optional<double> zone_lambda;
  std::optional<double> zone_d;
  std::optional<double> zone_C;
  std::optional<double> zone_c0;
  std::optional<double> zone_C0;

  void validate() const;
  // Fields set in `over` replace those of `base`.
  static ExperimentConfig overlay(const ExperimentConfig& base, const ExperimentConfig& over);

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

const std::vector<std::string>& experiment_names();
// Fills unset fields with the built-in defaults of cfg.experiment.
ExperimentConfig resolve_defaults(const ExperimentConfig& cfg);

struct ExperimentReport {
  std::string experiment;
  Json config = Json::object();
  std::vector<Json> rows;
  Json meta = Json::object();
  // Assertions that are not tied to one row (decay, stability, ...).
  std::vector<std::pair<std::string, bool>> checks;

  bool all_pass() const;
  Json to_json() const;
  // Header n,measured,bound,pass.
  std::string to_csv() const;
};

Json make_row(int n, double measured, double bound, bool pass);

ExperimentReport exp_hs_bound(const ExperimentConfig& cfg);
ExperimentReport exp_variance(const ExperimentConfig& cfg);
ExperimentReport exp_sobolev_bounds(const ExperimentConfig& cfg);
ExperimentReport exp_corollary_nalpha(const ExperimentConfig& cfg);
ExperimentReport exp_garding(const ExperimentConfig& cfg);
ExperimentReport exp_cutoff(const ExperimentConfig& cfg);
ExperimentReport exp_zones(const ExperimentConfig& cfg);
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// sup over q >= k of (1+q-k)^{s-k} (1+q)^{-s} q! / ((q-k)! k!), with the
// q -> infinity limit 1/k! included. q_max < 0 means unbounded.
double ladder_norm_bound(int k, double s, int q_max = -1);

// Command-line entry point; returns the process exit code
// (0 ok, 1 usage, 2 assertion failure, 3 resource or quadrature failure).
int run_cli(int argc, const char* const* argv);

}  // namespace wicklab

#pragma once

// Config files, operator serialization and the reproduction index.
//
// Config file (schema 1):
//   {"schema": 1, "experiment": "hs-bound", "rho": 0.4,
//    "defaults": {"n": "1..6", "tol": 1e-9}}
// Top-level values win over the defaults section, which wins over the
// built-in defaults of the experiment. Unknown keys are rejected by name.

#include <string>
#include <vector>

#include "wicklab/experiments.h"
#include "wicklab/quantize.h"

namespace wicklab {

inline constexpr int kConfigSchema = 1;

// File values merged over the defaults section; built-ins not yet applied.
ExperimentConfig parse_config(const Json& doc);
// parse_config plus resolve_defaults and validation.
ExperimentConfig load_config(const std::string& path);
// Inverse of parse_config for a resolved config.
Json serialize_config(const ExperimentConfig& cfg);

Json operator_to_json(const FockOperator& op, const Exactness& exactness, const std::string& provenance = "");

struct ReproRow {
  int id;
  std::string claim;
  std::string command;
};
const std::vector<ReproRow>& repro_rows();
std::string repro_index();

}  // namespace wicklab

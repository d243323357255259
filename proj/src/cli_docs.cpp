#include "wicklab/cli_docs.h"

#include <fstream>
#include <set>
#include <sstream>

#include "wicklab/errors.h"

namespace wicklab {

namespace {

const std::set<std::string>& field_keys() {
  static const std::set<std::string> keys{"n",   "degree", "rho",  "k",   "symbol", "lambda", "shift",
                                          "alpha", "beta", "tol",  "seed", "out",   "format", "Lambda",
                                          "d",   "C",      "c0",   "C0"};
  return keys;
}

[[noreturn]] void bad_type(const std::string& key, const char* want) {
  throw UsageError("config key '" + key + "' must be " + want);
}

double get_number(const Json& v, const std::string& key) {
  if (!v.is_number()) bad_type(key, "a number");
  return v.get<double>();
}

int get_int(const Json& v, const std::string& key) {
  if (!v.is_number_integer()) bad_type(key, "an integer");
  return v.get<int>();
}

std::string get_string(const Json& v, const std::string& key) {
  if (!v.is_string()) bad_type(key, "a string");
  return v.get<std::string>();
}

// Applies the field keys of one JSON object onto cfg.
void apply_fields(ExperimentConfig& cfg, const Json& obj, const char* where) {
  for (const auto& [key, v] : obj.items()) {
    if (!field_keys().count(key)) throw UsageError(std::string("unknown ") + where + " key '" + key + "'");
    if (key == "n") {
      if (v.is_number_integer()) {
        cfg.n = NRange{v.get<int>(), v.get<int>()};
        if (cfg.n->lo < 1) throw UsageError("config key 'n' must be >= 1");
      } else if (v.is_string()) {
        cfg.n = parse_n_range(v.get<std::string>());
      } else {
        bad_type(key, "an integer or an \"a..b\" string");
      }
    } else if (key == "degree") {
      cfg.degree = get_int(v, key);
    } else if (key == "rho") {
      cfg.rho = get_number(v, key);
    } else if (key == "k") {
      cfg.k = get_int(v, key);
    } else if (key == "symbol") {
      cfg.symbol = get_string(v, key);
    } else if (key == "lambda") {
      if (!v.is_array()) bad_type(key, "an array of numbers");
      std::vector<double> lam;
      for (const auto& x : v) lam.push_back(get_number(x, key));
      cfg.lambda = lam;
    } else if (key == "shift") {
      cfg.shift = get_number(v, key);
    } else if (key == "alpha") {
      cfg.alpha = get_number(v, key);
    } else if (key == "beta") {
      cfg.beta = get_number(v, key);
    } else if (key == "tol") {
      cfg.tol = get_number(v, key);
    } else if (key == "seed") {
      if (!v.is_number_unsigned()) bad_type(key, "a non-negative integer");
      cfg.seed = v.get<std::uint64_t>();
    } else if (key == "out") {
      cfg.out = get_string(v, key);
    } else if (key == "format") {
      cfg.format = get_string(v, key);
    } else if (key == "Lambda") {
      cfg.zone_lambda = get_number(v, key);
    } else if (key == "d") {
      cfg.zone_d = get_number(v, key);
    } else if (key == "C") {
      cfg.zone_C = get_number(v, key);
    } else if (key == "c0") {
      cfg.zone_c0 = get_number(v, key);
    } else if (key == "C0") {
      cfg.zone_C0 = get_number(v, key);
    }
  }
}

}  // namespace

ExperimentConfig parse_config(const Json& doc) {
  if (!doc.is_object()) throw UsageError("config must be a JSON object");
  if (!doc.contains("schema")) throw UsageError("config key 'schema' is required");
  if (!doc["schema"].is_number_integer() || doc["schema"].get<int>() != kConfigSchema)
    throw UsageError("config key 'schema' must be " + std::to_string(kConfigSchema));

  ExperimentConfig from_defaults, from_top;
  Json fields = Json::object();
  for (const auto& [key, v] : doc.items()) {
    if (key == "schema") continue;
    if (key == "experiment") {
      from_top.experiment = get_string(v, key);
    } else if (key == "defaults") {
      if (!v.is_object()) bad_type(key, "an object");
      apply_fields(from_defaults, v, "defaults");
    } else if (field_keys().count(key)) {
      fields[key] = v;
    } else {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
  apply_fields(from_top, fields, "config");
  ExperimentConfig cfg = ExperimentConfig::overlay(from_defaults, from_top);
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config '" + path + "' is not valid JSON: " + e.what());
  }
  ExperimentConfig cfg = resolve_defaults(parse_config(doc));
  cfg.validate();
  return cfg;
}

Json serialize_config(const ExperimentConfig& c) {
  Json j;
  j["schema"] = kConfigSchema;
  if (!c.experiment.empty()) j["experiment"] = c.experiment;
  if (c.n) {
    if (c.n->lo == c.n->hi)
      j["n"] = c.n->lo;
    else
      j["n"] = format_n_range(*c.n);
  }
  if (c.degree) j["degree"] = *c.degree;
  if (c.rho) j["rho"] = *c.rho;
  if (c.k) j["k"] = *c.k;
  if (c.symbol) j["symbol"] = *c.symbol;
  if (c.lambda) j["lambda"] = *c.lambda;
  if (c.shift) j["shift"] = *c.shift;
  if (c.alpha) j["alpha"] = *c.alpha;
  if (c.beta) j["beta"] = *c.beta;
  if (c.tol) j["tol"] = *c.tol;
  if (c.seed) j["seed"] = *c.seed;
  if (c.out) j["out"] = *c.out;
  if (c.format) j["format"] = *c.format;
  if (c.zone_lambda) j["Lambda"] = *c.zone_lambda;
  if (c.zone_d) j["d"] = *c.zone_d;
  if (c.zone_C) j["C"] = *c.zone_C;
  if (c.zone_c0) j["c0"] = *c.zone_c0;
  if (c.zone_C0) j["C0"] = *c.zone_C0;
  return j;
}

Json operator_to_json(const FockOperator& op, const Exactness& ex, const std::string& provenance) {
  Json j;
  j["n"] = op.params().n;
  j["degree_max"] = op.params().degree_max;
  j["dim"] = op.dim();
  Json basis = Json::array();
  for (const auto& a : op.basis().indices()) basis.push_back(a.exponents());
  j["basis"] = basis;
  Json ej;
  ej["kind"] = to_string(ex.kind);
  ej["safe_degree"] = ex.safe_degree;
  if (ex.kind == ExactnessKind::quadrature) {
    ej["tolerance"] = ex.tolerance;
    ej["nodes"] = ex.nodes;
  }
  j["exactness"] = ej;
  if (!provenance.empty()) j["provenance"] = provenance;
  // Row-major, entry (beta, alpha) = <A e_alpha, e_beta> as [re, im].
  Json rows = Json::array();
  const auto& M = op.matrix();
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back({M(r, c).real(), M(r, c).imag()});
    rows.push_back(row);
  }
  j["matrix"] = rows;
  return j;
}

const std::vector<ReproRow>& repro_rows() {
  static const std::vector<ReproRow> rows{
      {1, "Bergman projection of z^a zbar^b: closed form, idempotent, Hermitian, fixes holomorphic f",
       "build/tests/wicklab_acceptance --only 1"},
      {2, "Complex Hermite polynomials H_{k,l}, k,l <= 5, are orthonormal", "build/tests/wicklab_acceptance --only 2"},
      {3, "exp(-d dbar) inverts exp(d dbar) exactly on monomials of degree <= 10",
       "build/tests/wicklab_acceptance --only 3"},
      {4, "Wick/anti-Wick isometry on random real polynomials", "build/tests/wicklab_acceptance --only 4"},
      {5, "Anti-Wick composition series reproduces the operator product on the safe block",
       "build/tests/wicklab_acceptance --only 5"},
      {6, "Anti-Wick quantization of a nonnegative symbol is positive with norm <= sup|b|",
       "build/tests/wicklab_acceptance --only 6"},
      {7, "anti-Wick(|z|^2) = number operator + n", "build/tests/wicklab_acceptance --only 7"},
      {8, "Hilbert-Schmidt bound and dimension decay of bump quantizations",
       "wicklab experiment hs-bound --rho 0.5 --n 1..8"},
      {9, "Variance identity: integral of |(az,zbar) - tr a|^2 equals sum lambda_j^2",
       "wicklab experiment variance --lambda 1,2,3 && wicklab sweep variance --n 1..6"},
      {10, "Creation/annihilation norms on the Sobolev scale", "wicklab experiment sobolev --n 1..2 --degree 30"},
      {11, "Translation group law with the symplectic phase (and the flipped-sign control)",
       "wicklab translate --point 0.3 --point2 0.2i --degree 40 --block 10"},
      {12, "Superposition norm <= integral |m|, cutoff operator norms under the displayed bound",
       "wicklab experiment cutoff --rho 0.4 --n 1..6"},
      {13, "Radial composition N_a N_b = N_{a+b} + remainder one order lower",
       "wicklab experiment n-alpha --n 1..2 --degree 30"},
      {14, "Garding-type lower bound on shifted oscillator models with zoning",
       "wicklab experiment garding --k 1 --n 1..8 && wicklab experiment garding --k 2 --n 2..5"},
      {15, "Zone planner truth table and monotonicity", "wicklab experiment zones"},
  };
  return rows;
}

std::string repro_index() {
  std::ostringstream os;
  os << "| # | claim | command |\n|---|---|---|\n";
  for (const auto& r : repro_rows()) {
    std::string claim;
    for (char c : r.claim) {
      if (c == '|') claim += '\\';
      claim += c;
    }
    os << "| " << r.id << " | " << claim << " | `" << r.command << "` |\n";
  }
  return os.str();
}

}  // namespace wicklab

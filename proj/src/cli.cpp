#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "wicklab/cli_docs.h"
#include "wicklab/errors.h"
#include "wicklab/experiments.h"
#include "wicklab/heisenberg.h"
#include "wicklab/quantize.h"
#include "wicklab/symbols.h"
#include "wicklab/version.h"

namespace wicklab {

namespace {

void emit(const std::string& text, const std::optional<std::string>& out) {
  if (!out || out->empty() || *out == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(*out);
  if (!f) throw UsageError("cannot write '" + *out + "'");
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad number '" + item + "' in list '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

// "0.3", "0.2i", "0.3+0.2i", comma separated per coordinate.
PhasePoint parse_point(const std::string& text) {
  PhasePoint p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const PolySymbol c = parse_symbol(item, 1);
    if (c.degree() != 0) throw UsageError("phase point coordinate '" + item + "' is not a number");
    p.push_back(c.coefficient(MultiIndex::zero(c.n()), MultiIndex::zero(c.n())));
  }
  if (p.empty()) throw UsageError("empty phase point");
  return p;
}

// "power:theta" or "bump:T".
RadialSymbol parse_radial(const std::string& text, int n) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("radial symbol must be power:<theta> or bump:<T>");
  const std::string kind = text.substr(0, colon);
  const double v = parse_list(text.substr(colon + 1)).at(0);
  if (kind == "power") return RadialSymbol::power(n, v);
  if (kind == "bump") return RadialSymbol::bump(n, v);
  throw UsageError("unknown radial kind '" + kind + "'");
}

struct Flags {
  std::string n_text;
  std::optional<int> degree;
  std::optional<double> rho;
  std::optional<int> k;
  std::vector<std::string> symbols;
  std::string config;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string lambda_text;
  std::optional<double> shift, alpha, beta;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--n", f.n_text, "dimension or range a..b");
  app->add_option("--degree", f.degree, "truncation degree N");
  app->add_option("--rho", f.rho, "support radius factor");
  app->add_option("--k", f.k, "order k");
  app->add_option("--symbol", f.symbols, "polynomial symbol, e.g. \"1*z^[1]*zbar^[1]\"");
  app->add_option("--config", f.config, "JSON config file");
  app->add_option("--out", f.out, "output path (default stdout)");
  app->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--seed", f.seed, "RNG seed");
  app->add_option("--tol", f.tol, "tolerance");
}

void add_experiment_flags(CLI::App* app, Flags& f) {
  app->add_option("--lambda", f.lambda_text, "comma separated eigenvalues");
  app->add_option("--shift", f.shift, "shift c");
  app->add_option("--alpha", f.alpha, "first order");
  app->add_option("--beta", f.beta, "second order");
}

ExperimentConfig flags_to_config(const Flags& f, const std::string& experiment) {
  ExperimentConfig c;
  c.experiment = experiment;
  if (!f.n_text.empty()) c.n = parse_n_range(f.n_text);
  c.degree = f.degree;
  c.rho = f.rho;
  c.k = f.k;
  if (!f.symbols.empty()) c.symbol = f.symbols.front();
  if (!f.lambda_text.empty()) c.lambda = parse_list(f.lambda_text);
  c.shift = f.shift;
  c.alpha = f.alpha;
  c.beta = f.beta;
  c.tol = f.tol;
  c.seed = f.seed;
  c.out = f.out;
  c.format = f.format;
  return c;
}

int single_n(const Flags& f, int fallback) {
  if (f.n_text.empty()) return fallback;
  const NRange r = parse_n_range(f.n_text);
  if (r.lo != r.hi) throw UsageError("this command takes a single n");
  return r.lo;
}

PolySymbol symbol_arg(const Flags& f, std::size_t i, int n_hint) {
  if (f.symbols.size() <= i) throw UsageError("missing --symbol");
  return parse_symbol(f.symbols[i], n_hint);
}

int run_experiment_cmd(const Flags& f, const std::string& name, const std::string& default_format) {
  ExperimentConfig cfg;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw UsageError("cannot open config '" + f.config + "'");
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw UsageError("config '" + f.config + "' is not valid JSON: " + e.what());
    }
    cfg = parse_config(doc);
  }
  ExperimentConfig over = flags_to_config(f, name);
  if (name.empty()) over.experiment.clear();
  cfg = ExperimentConfig::overlay(cfg, over);
  if (cfg.experiment.empty()) throw UsageError("no experiment named (positional or config)");
  if (!f.format && !cfg.format) cfg.format = default_format;
  const ExperimentReport rep = run_experiment(cfg);
  const std::string fmt = cfg.format.value_or("json");
  emit(fmt == "csv" ? rep.to_csv() : rep.to_json().dump(2), cfg.out);
  return rep.all_pass() ? 0 : 2;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"wicklab: truncated Bargmann-Fock quantization lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string());
  Flags f;

  auto* basis = app.add_subcommand("basis", "list the truncated basis");
  add_common(basis, f);

  std::string quant_kind = "antiwick";
  std::string radial;
  auto* quant = app.add_subcommand("quantize", "operator matrix of a symbol");
  add_common(quant, f);
  quant->add_option("--kind", quant_kind, "antiwick or wick")->check(CLI::IsMember({"antiwick", "wick"}));
  quant->add_option("--radial", radial, "radial symbol power:<theta> or bump:<T>");

  std::string direction;
  auto* transform = app.add_subcommand("transform", "wick or antiwick symbol transform");
  add_common(transform, f);
  transform->add_option("direction", direction, "wick | antiwick")
      ->required()
      ->check(CLI::IsMember({"wick", "antiwick"}));

  auto* compose = app.add_subcommand("compose", "anti-Wick symbol of B A (pass --symbol b --symbol a)");
  add_common(compose, f);

  std::string point, point2;
  int block = -1;
  auto* translate = app.add_subcommand("translate", "translation operator or group-law defect");
  add_common(translate, f);
  translate->add_option("--point", point, "Y, e.g. 0.3+0.2i (comma separated for n > 1)")->required();
  translate->add_option("--point2", point2, "second point: report the group-law defect");
  translate->add_option("--block", block, "degree block for the defect (default N/4)");

  std::string exp_name;
  auto* experiment = app.add_subcommand("experiment", "run one experiment");
  add_common(experiment, f);
  add_experiment_flags(experiment, f);
  experiment->add_option("name", exp_name, "experiment")->check(CLI::IsMember(experiment_names()));

  std::string sweep_name;
  auto* sweep = app.add_subcommand("sweep", "experiment over an n range, CSV by default");
  add_common(sweep, f);
  add_experiment_flags(sweep, f);
  sweep->add_option("name", sweep_name, "experiment")->check(CLI::IsMember(experiment_names()));

  auto* repro = app.add_subcommand("repro", "claim to command table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*basis) {
      const TruncationParams params{single_n(f, 1), f.degree.value_or(2)};
      params.validate();
      check_basis_budget(params);
      const auto idx = enumerate_basis(params);
      if (f.format.value_or("json") == "csv") {
        std::ostringstream os;
        os << "index,alpha\n";
        for (std::size_t i = 0; i < idx.size(); ++i) {
          os << i << ",\"";
          for (int j = 0; j < idx[i].dim(); ++j) os << (j ? "," : "") << idx[i][j];
          os << "\"\n";
        }
        emit(os.str(), f.out);
      } else {
        Json j;
        j["n"] = params.n;
        j["degree_max"] = params.degree_max;
        j["size"] = idx.size();
        Json list = Json::array();
        for (const auto& a : idx) list.push_back(a.exponents());
        j["basis"] = list;
        emit(j.dump(2), f.out);
      }
      return 0;
    }
    if (*quant) {
      const int N = f.degree.value_or(4);
      if (!radial.empty()) {
        const int n = single_n(f, 1);
        const auto res = antiwick_quantize_radial(parse_radial(radial, n), {n, N}, f.tol.value_or(1e-10));
        emit(operator_to_json(res.op, res.exactness, res.provenance).dump(2), f.out);
        return 0;
      }
      const PolySymbol s = symbol_arg(f, 0, single_n(f, 0));
      const TruncationParams params{s.n(), N};
      if (quant_kind == "wick") {
        const FockOperator op = wick_quantize(s, params);
        Exactness ex{ExactnessKind::safe_block, N - std::max(0, s.shift_range().max), 0.0, 0};
        emit(operator_to_json(op, ex, "normal-ordered quantization").dump(2), f.out);
      } else {
        const auto res = antiwick_quantize_poly(s, params);
        emit(operator_to_json(res.op, res.exactness, res.provenance).dump(2), f.out);
      }
      return 0;
    }
    if (*transform) {
      const PolySymbol s = symbol_arg(f, 0, single_n(f, 0));
      emit(format_symbol(direction == "wick" ? wick_transform(s) : antiwick_transform(s)), f.out);
      return 0;
    }
    if (*compose) {
      const int n = single_n(f, 0);
      emit(format_symbol(compose_antiwick(symbol_arg(f, 0, n), symbol_arg(f, 1, n))), f.out);
      return 0;
    }
    if (*translate) {
      const PhasePoint Y1 = parse_point(point);
      const int n = int(Y1.size());
      const TruncationParams params{n, f.degree.value_or(40)};
      if (point2.empty()) {
        const FockOperator op = translation_op(Y1, params);
        emit(operator_to_json(op, Exactness{ExactnessKind::exact, params.degree_max, 0.0, 0},
                              "Gaussian-moment series, compressed")
                 .dump(2),
             f.out);
        return 0;
      }
      const PhasePoint Y2 = parse_point(point2);
      if (int(Y2.size()) != n) throw UsageError("--point and --point2 differ in dimension");
      const int blk = block >= 0 ? block : params.degree_max / 4;
      Json j;
      j["n"] = n;
      j["degree_max"] = params.degree_max;
      j["block"] = blk;
      j["sigma"] = symplectic_form(Y1, Y2);
      j["defect"] = group_law_defect(Y1, Y2, params, blk, false);
      j["flipped_defect"] = group_law_defect(Y1, Y2, params, blk, true);
      const double tol = f.tol.value_or(1e-6);
      j["pass"] = j["defect"].get<double>() <= tol && j["flipped_defect"].get<double>() >= 1e-2;
      emit(j.dump(2), f.out);
      return j["pass"].get<bool>() ? 0 : 2;
    }
    if (*experiment) return run_experiment_cmd(f, exp_name, "json");
    if (*sweep) return run_experiment_cmd(f, sweep_name, "csv");
    if (*repro) {
      emit(repro_index(), std::nullopt);
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return 3;
  } catch (const QuadratureError& e) {
    std::cerr << "quadrature error: " << e.what() << '\n';
    return 3;
  } catch (const AccuracyError& e) {
    std::cerr << "accuracy error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace wicklab

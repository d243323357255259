#include "doctest.h"

#include <cmath>

#include "wicklab/errors.h"
#include "wicklab/experiments.h"

using namespace wicklab;

namespace {

ExperimentConfig named(const std::string& e) {
  ExperimentConfig c;
  c.experiment = e;
  return c;
}

Json strip_runtime(Json j) {
  j["meta"].erase("runtime_s");
  for (auto& r : j["rows"]) r.erase("runtime_s");
  return j;
}

}  // namespace

TEST_CASE("n ranges") {
  CHECK(parse_n_range("4") == NRange{4, 4});
  CHECK(parse_n_range("1..6") == NRange{1, 6});
  CHECK(format_n_range({2, 5}) == "2..5");
  CHECK_THROWS_AS(parse_n_range("6..1"), UsageError);
  CHECK_THROWS_AS(parse_n_range("x"), UsageError);
  CHECK_THROWS_AS(parse_n_range("0..3"), UsageError);
}

TEST_CASE("built-in defaults") {
  const auto hs = resolve_defaults(named("hs-bound"));
  CHECK(*hs.rho == 0.5);
  CHECK(*hs.n == NRange{1, 6});
  CHECK(*hs.seed == 1u);
  CHECK(*hs.format == "json");
  const auto g1 = [] {
    auto c = named("garding");
    c.k = 1;
    return resolve_defaults(c);
  }();
  CHECK(*g1.n == NRange{1, 8});
  CHECK(*resolve_defaults(named("garding")).n == NRange{2, 5});
  CHECK(resolve_defaults(named("variance")).lambda->size() == 3);
  CHECK_THROWS_AS(named("nope").validate(), UsageError);
}

TEST_CASE("overlay keeps unset fields") {
  auto base = named("hs-bound");
  base.rho = 0.4;
  base.tol = 1e-7;
  ExperimentConfig over;
  over.rho = 0.3;
  const auto c = ExperimentConfig::overlay(base, over);
  CHECK(c.experiment == "hs-bound");
  CHECK(*c.rho == 0.3);
  CHECK(*c.tol == 1e-7);
}

TEST_CASE("ladder norm bound") {
  CHECK(ladder_norm_bound(0, 0.0) == doctest::Approx(1.0));
  CHECK(ladder_norm_bound(1, 1.0) == doctest::Approx(1.0));
  // k = s = 2: q(q-1) / (2 (1+q)^2) increases towards its limit 1/2.
  CHECK(ladder_norm_bound(2, 2.0, 10) == doctest::Approx(45.0 / 121.0));
  CHECK(ladder_norm_bound(2, 2.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(ladder_norm_bound(-1, 0.0), UsageError);
}

TEST_CASE("hs-bound report") {
  auto c = named("hs-bound");
  c.n = NRange{1, 4};
  const auto r = run_experiment(c);
  CHECK(r.rows.size() == 4);
  CHECK(r.all_pass());
  for (const auto& row : r.rows) CHECK(row["measured"].get<double>() <= row["bound"].get<double>());
  for (std::size_t i = 1; i < r.rows.size(); ++i)
    CHECK(r.rows[i]["measured"].get<double>() < r.rows[i - 1]["measured"].get<double>());
  const auto csv = r.to_csv();
  CHECK(csv.rfind("n,measured,bound,pass\n", 0) == 0);
}

TEST_CASE("variance report") {
  const auto r = run_experiment(named("variance"));
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0]["measured"].get<double>() == doctest::Approx(14.0).epsilon(1e-8));
  CHECK(r.rows[0]["bound"].get<double>() == doctest::Approx(14.0).epsilon(1e-12));
  CHECK(r.all_pass());
}

TEST_CASE("garding k = 1 report") {
  auto c = named("garding");
  c.k = 1;
  c.n = NRange{1, 3};
  const auto r = run_experiment(c);
  CHECK(r.rows.size() == 3);
  CHECK(r.all_pass());
}

TEST_CASE("zones report") {
  const auto r = run_experiment(named("zones"));
  CHECK(r.all_pass());
  CHECK(r.rows.size() >= 3);
}

TEST_CASE("reports are byte-stable for a fixed seed") {
  auto c = named("cutoff");
  c.n = NRange{1, 2};
  const auto a = strip_runtime(run_experiment(c).to_json()).dump(2);
  const auto b = strip_runtime(run_experiment(c).to_json()).dump(2);
  CHECK(a == b);
  auto z = named("zones");
  CHECK(strip_runtime(run_experiment(z).to_json()).dump() == strip_runtime(run_experiment(z).to_json()).dump());
  z.seed = 7;
  CHECK(strip_runtime(run_experiment(z).to_json())["config"]["seed"] == 7);
}

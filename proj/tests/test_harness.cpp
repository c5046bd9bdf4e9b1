#include "catch_amalgamated.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hillgap/harness/experiments.hpp"

using namespace hillgap;
using namespace hillgap::harness;

namespace {

ExperimentConfig cfg(const char* text) { return parse_config(json::parse(text)); }

std::string gap_csv(const RunResult& r) {
  std::ostringstream os;
  write_gap_csv(os, r.rows);
  return os.str();
}

bool mentions(const Report& r, const std::string& s) {
  for (const auto& l : r.lines)
    if (l.find(s) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("config rejects malformed input", "[harness]") {
  CHECK_THROWS_AS(cfg(R"({"tolerence": {"neumann": 1e-12}})"), ConfigError);
  CHECK_THROWS_AS(cfg(R"({"n_range": [5, 2]})"), ConfigError);
  CHECK_THROWS_AS(cfg(R"({"n_range": [0, 2]})"), ConfigError);
  CHECK_THROWS_AS(cfg(R"({"n_range": [1.5, 2]})"), ConfigError);
  CHECK_THROWS_AS(cfg(R"({"tolerances": {"agreement": 0}})"), ConfigError);
  CHECK_THROWS_AS(cfg(R"({"tolerances": {"agreemnt": 1e-3}})"), ConfigError);
  CHECK_THROWS_AS(cfg(R"({"weight": {"kind": "cubic"}})"), ConfigError);
  CHECK_THROWS_AS(cfg(R"({"weight": {"kind": "gevrey", "a": 1}})"), ConfigError);
  CHECK_THROWS_AS(cfg(R"({"weight": {"kind": "gevrey", "sigma": 1.0}})"), ConfigError);
  CHECK_THROWS_AS(cfg(R"({"weight": {"kind": "superexp", "sigma": 2, "r": 1}})"), ConfigError);
  CHECK_THROWS_AS(cfg(R"({"potential": {"type": "sawtooth"}})"), ConfigError);
  CHECK_THROWS_AS(cfg(R"({"potential": {"type": "mathieu"}})"), ConfigError);
  CHECK_THROWS_AS(cfg(R"({"potential": {"type": "gasymov", "coeffs": [[1]]}})"), ConfigError);
  CHECK_THROWS_AS(cfg(R"({"potential": {"type": "random", "decay": {"kind": "trivial"}, "seed": -1}})"),
                  ConfigError);
  CHECK_THROWS_AS(cfg(R"({"oracle": {"steps_per_oscillation": 16}})"), ConfigError);
  CHECK_THROWS_AS(cfg(R"({"oracle": {"precision": "octuple"}})"), ConfigError);
  CHECK_THROWS_AS(cfg(R"({"experiment": "theorem9"})"), ConfigError);
  CHECK_THROWS_AS(cfg(R"({"eps_list": [0.1, -0.1]})"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/hillgap.json"), ConfigError);

  const std::string path = "harness_bad.json";
  {
    std::ofstream f(path);
    f << "{\"n_range\": [1, ";
  }
  CHECK_THROWS_AS(load_config(path), ConfigError);
  std::remove(path.c_str());
}

TEST_CASE("config defaults are echoed", "[harness]") {
  const ExperimentConfig c = cfg("{}");
  CHECK_FALSE(c.experiment.has_value());
  const json e = echo(c);
  CHECK(e["n_range"] == json::array({1, 10}));
  CHECK(e["tolerances"]["neumann"].get<double>() == 1e-14);
  CHECK(e["tolerances"]["agreement"].get<double>() == 1e-6);
  CHECK(e["tolerances"]["collapse"].get<double>() == 1e-7);
  CHECK(e["oracle"]["precision"] == "extended");
  CHECK(e["oracle"]["steps_per_oscillation"] == 64);
  CHECK(e["weights"] == json::array({"trivial"}));
  CHECK(e["potential"]["type"] == "mathieu");
  CHECK(e["M_thresh"] == 0);
}

TEST_CASE("config parsing", "[harness]") {
  const ExperimentConfig c = cfg(R"({
    "experiment": "weights_check",
    "potential": {"type": "fourier", "coeffs": [[1, 0.5, 0.0], [-2, 0.0, 0.25], [0, 1.0, 0.0]]},
    "weights": [{"kind": "tempered", "eps": 0.1, "inner": {"kind": "gevrey", "sigma": 0.5}},
                {"kind": "table", "values": [1, 1.5, 2]}],
    "n_range": [3, 7], "oracle": {"precision": "quad", "steps": 512}, "mathieu": {"c": 2.5}})");
  REQUIRE(c.experiment.has_value());
  CHECK(*c.experiment == Experiment::weights);
  CHECK(parse_experiment("theorem4") == Experiment::theorem4);
  const FourierPotential q = build_potential(c.potential);
  CHECK(q[1] == Complex(0.5));
  CHECK(q[-2] == Complex(0.0, 0.25));
  CHECK(q.mean() == Complex(1.0));
  REQUIRE(c.weight_list().size() == 2);
  CHECK(c.weight_list()[0].kind() == WeightKind::tempered);
  CHECK(c.weight_list()[1].kind() == WeightKind::table);
  CHECK(c.n_lo == 3);
  CHECK(c.n_hi == 7);
  CHECK(c.oracle.precision == floquet::Precision::quad);
  CHECK(c.oracle.steps == 512);
  CHECK(c.mathieu_c == 2.5);
}

TEST_CASE("number formatting round-trips", "[harness]") {
  for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 0.0}) CHECK(std::stod(fmt17(x)) == x);
  CHECK(fmt17(NAN) == "nan");
  CHECK(fmt17(INFINITY) == "inf");
  CHECK(jnum(NAN) == "nan");
  CHECK(jnum(-INFINITY) == "-inf");
  CHECK(jnum(0.5) == 0.5);
}

TEST_CASE("gap tables", "[harness]") {
  const ExperimentConfig c = cfg(R"({"potential": {"type": "mathieu", "mu": 1.0}, "n_range": [1, 4]})");
  const RunResult r = run_gaps(c);
  CHECK(r.report.pass);
  REQUIRE(r.rows.size() == 8);
  CHECK(r.rows[0].method == "block-inadmissible");
  CHECK(r.rows[1].method == "oracle");
  CHECK(r.rows[4].method == "block");
  CHECK(r.rows[4].n == 3);
  const std::string csv = gap_csv(r);
  CHECK(csv.rfind(std::string(kGapColumns) + "\n", 0) == 0);
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 15);
  }
  CHECK(rows == 8);
}

TEST_CASE("identical configs give identical tables", "[harness]") {
  const char* text = R"({"potential": {"type": "random", "decay": {"kind": "polynomial", "r": 3},
                          "seed": 12345, "K": 8, "real": false}, "n_range": [1, 8]})";
  CHECK(gap_csv(run_gaps(cfg(text))) == gap_csv(run_gaps(cfg(text))));
  const RunResult o = run_oracle(cfg(text));
  CHECK(o.rows.size() == 8);
  CHECK(o.report.name == "oracle");
}

TEST_CASE("zero potential", "[harness]") {
  const ExperimentConfig c = cfg(R"({"potential": {"type": "fourier", "coeffs": []}, "n_range": [1, 6]})");
  const RunResult r = run_gaps(c);
  CHECK(r.report.pass);
  for (const GapRow& row : r.rows) {
    INFO(row.method << " n = " << row.n);
    CHECK(std::abs(row.gamma) == 0.0);
  }
  CHECK(verify_theorem1(c).pass);

  ExperimentConfig t5 = cfg(R"({"potential": {"type": "fourier", "coeffs": []}, "n_range": [1, 6],
                                "weight": {"kind": "superexp", "sigma": 2}})");
  const Report r5 = verify_theorem5(t5);
  CHECK(r5.pass);
  CHECK(mentions(r5, "q = 0"));
}

TEST_CASE("one-sided potential", "[harness]") {
  const ExperimentConfig c =
      cfg(R"({"potential": {"type": "gasymov", "coeffs": [[1, 0], [0.5, 0]]}, "n_range": [1, 8]})");
  const RunResult r = run_oracle(c);
  CHECK(r.report.pass);
  for (const GapRow& row : r.rows) CHECK(std::abs(row.gamma) <= 1e-8);
  CHECK(verify_gasymov(c).pass);
}

TEST_CASE("Mathieu verification", "[harness]") {
  const Report ok = verify_mathieu(cfg(R"({"potential": {"type": "mathieu", "mu": 1}, "n_range": [2, 4]})"));
  CHECK(ok.pass);
  const Report tight =
      verify_mathieu(cfg(R"({"potential": {"type": "mathieu", "mu": 1}, "n_range": [3, 4], "mathieu": {"c": 1e-9}})"));
  CHECK_FALSE(tight.pass);
  CHECK(tight.exit_code() == 1);
  const Report zero = verify_mathieu(cfg(R"({"potential": {"type": "mathieu", "mu": 0}, "n_range": [1, 4]})"));
  CHECK(zero.pass);
  CHECK(mentions(zero, "degenerate"));
  CHECK_THROWS_AS(verify_mathieu(cfg(R"({"potential": {"type": "gasymov", "coeffs": [[1, 0]]}})")), ConfigError);
}

TEST_CASE("theorem checks", "[harness]") {
  const char* text = R"({"potential": {"type": "mathieu", "mu": 1},
                          "weights": [{"kind": "trivial"}, {"kind": "polynomial", "r": 1}], "n_range": [1, 8]})";
  const Report t1 = verify_theorem1(cfg(text));
  CHECK(t1.pass);
  CHECK(t1.preconditions.size() == 2);
  CHECK(verify_theorem4(cfg(text)).pass);
  CHECK_THROWS_AS(verify_theorem5(cfg(text)), ConfigError);
  const Report t5 = verify_theorem5(cfg(R"({"potential": {"type": "mathieu", "mu": 0.5}, "n_range": [1, 8],
                                            "weight": {"kind": "superexp", "sigma": 2}})"));
  CHECK(t5.pass);
}

TEST_CASE("adapted and dense experiments", "[harness]") {
  const RunResult a = run_adapted(cfg(R"({"potential": {"type": "mathieu", "mu": 0.5}, "window": 12})"));
  CHECK(a.report.pass);
  CHECK(a.modes.size() == 25);
  CHECK(a.report.data["roundtrip"].get<double>() <= 1e-10);

  const Report zero = verify_dense(cfg(R"({"potential": {"type": "fourier", "coeffs": []}, "n_range": [8, 9]})"));
  CHECK(zero.pass);
  for (const auto& row : zero.data["rows"]) CHECK(row["distance"].get<double>() == 0.0);

  const Report d = verify_dense(cfg(R"({"potential": {"type": "mathieu", "mu": 0.5}, "n_range": [8, 9]})"));
  CHECK(d.pass);
  REQUIRE(d.data["rows"].size() == 2);
  CHECK(d.data["rows"][1]["distance"].get<double>() <= d.data["rows"][0]["distance"].get<double>());
}

TEST_CASE("weights experiment", "[harness]") {
  CHECK(verify_weights(cfg(R"({"weights": [{"kind": "gevrey", "sigma": 0.5}, {"kind": "polynomial", "r": 2}],
                               "N": 100})")).pass);
  const Report bad = verify_weights(cfg(R"({"weight": {"kind": "superexp", "sigma": 2}, "N": 20})"));
  CHECK_FALSE(bad.pass);
}

TEST_CASE("reports", "[harness]") {
  Report r;
  r.name = "demo";
  r.note("hello");
  CHECK(r.exit_code() == 0);
  CHECK(r.to_text().rfind("demo: PASS\n", 0) == 0);
  r.fail("broken");
  CHECK(r.exit_code() == 1);
  const json j = r.to_json();
  CHECK(j["result"] == "FAIL");
  CHECK(j["notes"][1] == "FAIL: broken");
}

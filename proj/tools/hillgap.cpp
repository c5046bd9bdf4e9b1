// hillgap: spectral gap experiments for Hill's operator.
//
//   hillgap gaps|oracle|adapted -c config.json [--out table.csv] [--json]
//   hillgap verify theorem1|theorem4|theorem5|mathieu|gasymov|dense|weights -c config.json [--json]
//
// Exit status: 0 pass, 1 numerical failure or FAIL, 2 configuration error.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hillgap/harness/experiments.hpp"

namespace hg = hillgap::harness;

namespace {

struct Options {
  std::string config;
  std::string out;
  bool json = false;
};

void add_common(CLI::App* sub, Options& o, bool table) {
  sub->add_option("-c,--config", o.config, "experiment configuration (JSON)")->required();
  if (table) sub->add_option("--out", o.out, "CSV output path");
  sub->add_flag("--json", o.json, "machine-readable report");
}

int run(hg::Experiment e, const Options& o) {
  hg::ExperimentConfig cfg;
  try {
    cfg = hg::load_config(o.config);
    if (cfg.experiment && *cfg.experiment != e)
      throw hillgap::ConfigError(std::string("config is for experiment '") + hg::to_string(*cfg.experiment) +
                                 "', not '" + hg::to_string(e) + "'");
  } catch (const hillgap::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 2;
  }

  hg::RunResult res;
  try {
    res = hg::run_experiment(e, cfg);
  } catch (const hillgap::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 2;
  } catch (const hillgap::Error& err) {
    std::cerr << "numerical failure: " << err.what() << "\n";
    return 1;
  }

  const bool table = e == hg::Experiment::gaps || e == hg::Experiment::oracle || e == hg::Experiment::adapted;
  const std::string path = !o.out.empty() ? o.out : cfg.output;
  std::ostream* report_os = &std::cout;
  if (table) {
    if (path.empty()) {
      report_os = &std::cerr;
      if (e == hg::Experiment::adapted)
        hg::write_mode_csv(std::cout, res.modes);
      else
        hg::write_gap_csv(std::cout, res.rows);
    } else {
      std::ofstream f(path);
      if (!f) {
        std::cerr << "cannot write " << path << "\n";
        return 1;
      }
      if (e == hg::Experiment::adapted)
        hg::write_mode_csv(f, res.modes);
      else
        hg::write_gap_csv(f, res.rows);
    }
  }
  if (o.json)
    *report_os << res.report.to_json().dump(2) << "\n";
  else
    *report_os << res.report.to_text();
  return res.report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral gaps of Hill's operator: Fourier block decomposition and Floquet oracle"};
  app.require_subcommand(1);

  Options opts;
  hg::Experiment chosen = hg::Experiment::gaps;

  auto table_cmd = [&](const char* name, const char* help, hg::Experiment e) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, opts, true);
    sub->callback([&chosen, e] { chosen = e; });
  };
  table_cmd("gaps", "block decomposition and oracle side by side", hg::Experiment::gaps);
  table_cmd("oracle", "Floquet oracle only", hg::Experiment::oracle);
  table_cmd("adapted", "adapted Fourier coefficients and their inverse", hg::Experiment::adapted);

  auto* verify = app.add_subcommand("verify", "theorem-level checks");
  verify->require_subcommand(1);
  const std::pair<const char*, hg::Experiment> checks[] = {
      {"theorem1", hg::Experiment::theorem1}, {"theorem4", hg::Experiment::theorem4},
      {"theorem5", hg::Experiment::theorem5}, {"mathieu", hg::Experiment::mathieu},
      {"gasymov", hg::Experiment::gasymov},   {"dense", hg::Experiment::dense},
      {"weights", hg::Experiment::weights}};
  for (const auto& [name, e] : checks) {
    auto* sub = verify->add_subcommand(name);
    add_common(sub, opts, false);
    const hg::Experiment ex = e;
    sub->callback([&chosen, ex] { chosen = ex; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return run(chosen, opts);
}

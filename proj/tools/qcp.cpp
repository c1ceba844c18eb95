// qcp: configuration-driven runner for the constrained-chain simulations.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcp/config.hpp"
#include "qcp/error.hpp"
#include "qcp/experiment.hpp"
#include "qcp/presets.hpp"
#include "qcp/pump.hpp"
#include "qcp/topology.hpp"

namespace {

enum Exit { kOk = 0, kFailure = 1, kConfig = 2, kCapacity = 3, kNumerical = 4 };

struct Overrides {
  std::optional<double> tol;
  std::optional<std::size_t> max_dim;

  void apply(qcp::ExperimentConfig& c) const {
    if (tol) c.tol = *tol;
    if (max_dim) c.max_dim = *max_dim;
    c.validate();
  }
};

int run(const qcp::ExperimentConfig& config, const std::string& out, unsigned jobs) {
  if (config.sweep) {
    const auto results = qcp::run_sweep(config, out, jobs);
    std::cout << "wrote " << results.size() << " sweep points to " << out << "\n";
  } else {
    const auto result = qcp::run_experiment(config, out);
    std::cout << "wrote " << result.files.size() << " files to " << out << "\n";
  }
  return kOk;
}

nlohmann::ordered_json ssh_report(int n, double lv, double lw, double n1) {
  nlohmann::ordered_json j;
  const auto loc = qcp::localization_length(lv, lw);
  j["xi"] = loc.xi;
  j["phase"] = qcp::to_string(loc.phase);
  if (loc.phase != qcp::SshPhase::gapless) j["winding_number"] = qcp::winding_number(lv, lw);
  const auto h = qcp::hybridization(n, lv, lw, n1);
  j["closed_form"] = {{"valid", h.valid}, {"n1", h.n1}, {"e_plus", h.e_plus}, {"e_minus", h.e_minus}, {"t_hyb", h.t_hyb}};
  const auto x = qcp::exact_edge_splitting(n, lv, lw);
  j["exact"] = {{"e_plus", x.e_plus}, {"e_minus", x.e_minus}, {"t_hyb", x.t_hyb}};
  j["edge_site_population"] = qcp::edge_site_population(n, lv, lw);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kinetically constrained chain simulator"};
  app.require_subcommand(1);
  Overrides ov;
  app.add_option("--tol", ov.tol, "Integrator tolerance, overrides the configuration");
  app.add_option("--max-dim", ov.max_dim, "Largest spin-space dimension to evolve");
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  std::string config_path;
  std::string out_dir;

  auto* simulate = app.add_subcommand("simulate", "Run an experiment configuration");
  simulate->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
  simulate->add_option("--out", out_dir, "Output directory")->required();
  simulate->add_option("--jobs", jobs, "Concurrent sweep points");

  auto* sweep = app.add_subcommand("sweep", "Run every point of a configuration's [sweep] section");
  sweep->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out_dir, "Output directory")->required();
  sweep->add_option("--jobs", jobs, "Concurrent sweep points");

  std::string preset_name;
  bool print_only = false;
  bool list = false;
  auto* preset = app.add_subcommand("preset", "Run or print a reference experiment");
  preset->add_option("name", preset_name, "Preset name");
  preset->add_option("--out", out_dir, "Output directory");
  preset->add_flag("--print", print_only, "Print the configuration instead of running it");
  preset->add_flag("--list", list, "List preset names");
  preset->add_option("--jobs", jobs, "Concurrent sweep points");

  auto* analyze = app.add_subcommand("analyze", "Closed-form and invariant diagnostics");
  analyze->require_subcommand(1);
  double lv = 1.0;
  double lw = 10.0;
  int n = 4;
  double n1 = 1.0;
  auto* ssh = analyze->add_subcommand("ssh", "Edge states of an SSH chain");
  ssh->add_option("--lambda-v", lv, "Intra-cell coupling")->required();
  ssh->add_option("--lambda-w", lw, "Inter-cell coupling")->required();
  ssh->add_option("--n", n, "Number of sites (even)")->required();
  ssh->add_option("--n1", n1, "Edge-site population in the closed form");
  auto* pump = analyze->add_subcommand("pump", "Adiabaticity and Chern numbers of a pump configuration");
  pump->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*simulate || *sweep) {
      auto config = qcp::load_config(config_path);
      ov.apply(config);
      if (*sweep && !config.sweep) throw qcp::ConfigError("sweep", "configuration has no [sweep] section");
      return run(config, out_dir, jobs);
    }
    if (*preset) {
      if (list) {
        for (const auto& name : qcp::preset_names()) std::cout << name << "\n";
        return kOk;
      }
      if (preset_name.empty()) throw qcp::ConfigError("preset", "a preset name is required");
      auto config = qcp::preset(preset_name);
      ov.apply(config);
      if (print_only) {
        std::cout << qcp::to_config_text(config);
        return kOk;
      }
      if (out_dir.empty()) throw qcp::ConfigError("--out", "an output directory is required");
      return run(config, out_dir, jobs);
    }
    if (*ssh) {
      std::cout << ssh_report(n, lv, lw, n1).dump(2) << "\n";
      return kOk;
    }
    if (*pump) {
      auto config = qcp::load_config(config_path);
      ov.apply(config);
      if (!config.pump) throw qcp::ConfigError("pump", "configuration has no pump schedule");
      std::cout << qcp::derived_quantities_json(config) << "\n";
      return kOk;
    }
  } catch (const qcp::ConfigError& e) {
    std::cerr << "qcp: config error: " << e.what() << "\n";
    return kConfig;
  } catch (const qcp::ParameterError& e) {
    std::cerr << "qcp: parameter error: " << e.what() << "\n";
    return kConfig;
  } catch (const qcp::NormalizationError& e) {
    std::cerr << "qcp: parameter error: " << e.what() << "\n";
    return kConfig;
  } catch (const qcp::CapacityError& e) {
    std::cerr << "qcp: capacity error: " << e.what() << "\n";
    return kCapacity;
  } catch (const qcp::NumericalError& e) {
    std::cerr << "qcp: numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const qcp::InvalidWindowError& e) {
    std::cerr << "qcp: numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "qcp: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}

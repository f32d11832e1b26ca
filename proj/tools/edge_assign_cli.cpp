// edge-assign: run mechanisms over generated scenarios and write CSV.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "edge_assign/errors.hpp"
#include "edge_assign/oracle.hpp"
#include "edge_assign/scenario.hpp"
#include "edge_assign/sim.hpp"

namespace ea = edge_assign;

namespace {

enum Exit { ok = 0, config_error = 1, guard_violation = 2, invariant_failure = 3 };

struct Common {
  std::string config_path;
  std::string scenario_path;
  std::string bandwidth_mode;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<ea::MechanismKind> parse_mechanisms(const std::string& text) {
  std::vector<ea::MechanismKind> out;
  for (const auto& name : split_list(text)) {
    if (name == "all") {
      for (auto k : {ea::MechanismKind::ia, ea::MechanismKind::da, ea::MechanismKind::energy,
                     ea::MechanismKind::price, ea::MechanismKind::hoda, ea::MechanismKind::oracle})
        out.push_back(k);
    } else {
      out.push_back(ea::parse_mechanism(name));
    }
  }
  if (out.empty()) throw ea::ConfigError("mechanisms", "must not be empty");
  return out;
}

ea::Config load(const Common& common) {
  ea::Config c = common.config_path.empty() ? ea::Config{} : ea::load_config(common.config_path);
  if (!common.bandwidth_mode.empty()) c.bandwidth_mode = ea::parse_bandwidth_mode(common.bandwidth_mode);
  ea::validate(c);
  return c;
}

ea::Scenario scenario_for(const Common& common, const ea::Config& config, std::uint64_t seed) {
  if (common.scenario_path.empty()) return ea::generate(config, seed);
  ea::Scenario sc = ea::load_scenario(common.scenario_path);
  if (!common.bandwidth_mode.empty())
    sc.bandwidth_mode = ea::parse_bandwidth_mode(common.bandwidth_mode);
  return sc;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + out_path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Task offloading assignment simulator"};
  app.require_subcommand(1);

  Common common;
  app.add_option("--bandwidth-mode", common.bandwidth_mode, "fixed or equal_split")
      ->check(CLI::IsMember({"fixed", "equal_split"}));

  std::uint64_t seed = 1;
  bool seed_given = false;
  std::string mechanism = "ia";
  std::string out_path;

  auto* run = app.add_subcommand("run", "one period under one mechanism, as CSV");
  run->add_option("--config", common.config_path, "JSON config");
  run->add_option("--scenario", common.scenario_path, "replay a dumped scenario");
  run->add_option("--seed", seed)->each([&](const std::string&) { seed_given = true; });
  run->add_option("--mechanism", mechanism, "ia, da, energy, price, hoda or oracle");
  run->add_option("--out", out_path, "CSV path (default stdout)");

  std::string param = "users";
  std::string values;
  int reps = 1;
  std::string mechanisms = "ia";
  auto* sweep = app.add_subcommand("sweep", "parameter sweep with replications");
  sweep->add_option("--config", common.config_path, "JSON config");
  sweep->add_option("--param", param, "users, servers or app")->required();
  sweep->add_option("--values", values, "comma-separated values")->required();
  sweep->add_option("--reps", reps, "replications per value");
  sweep->add_option("--mechanisms", mechanisms, "comma-separated mechanisms");
  sweep->add_option("--out", out_path, "CSV path (default stdout)");

  auto* audit = app.add_subcommand("audit", "compare against the exhaustive optimum");
  audit->add_option("--config", common.config_path, "JSON config");
  audit->add_option("--scenario", common.scenario_path, "replay a dumped scenario");
  audit->add_option("--seed", seed)->each([&](const std::string&) { seed_given = true; });
  audit->add_option("--mechanism", mechanism, "mechanism name or all");

  auto* dump = app.add_subcommand("dump", "write the generated scenario as JSON");
  dump->add_option("--config", common.config_path, "JSON config");
  dump->add_option("--seed", seed)->each([&](const std::string&) { seed_given = true; });
  dump->add_option("--out", out_path, "JSON path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : config_error;
  }

  try {
    const ea::Config config = load(common);
    if (!seed_given) seed = config.seed;

    if (*run) {
      const auto kind = ea::parse_mechanism(mechanism);
      const ea::Scenario sc = scenario_for(common, config, seed);
      const std::string app_name =
          common.scenario_path.empty() ? ea::app_label(config) : ea::sim::app_label(sc);
      const auto row = ea::sim::run_scenario(sc, kind, ea::oracle::limits_from(config), app_name);
      emit(ea::sim::to_csv({row}), out_path);
    } else if (*sweep) {
      ea::sim::SweepSpec spec;
      spec.param = ea::sim::parse_sweep_param(param);
      spec.values = split_list(values);
      spec.reps = reps;
      spec.base = config;
      spec.mechanisms = parse_mechanisms(mechanisms);
      const auto rows = ea::sim::run_sweep(spec, ea::sim::default_threads());
      emit(ea::sim::to_csv(rows), out_path);
    } else if (*audit) {
      const ea::Scenario sc = scenario_for(common, config, seed);
      const auto report =
          ea::sim::audit(sc, parse_mechanisms(mechanism), ea::oracle::limits_from(config));
      std::cout << ea::oracle::report_to_json(report) << '\n';
    } else if (*dump) {
      emit(ea::scenario_to_json(ea::generate(config, seed)) + "\n", out_path);
    }
  } catch (const ea::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return config_error;
  } catch (const ea::GuardError& e) {
    std::cerr << "guard violation: " << e.what() << '\n';
    return guard_violation;
  } catch (const ea::InvariantError& e) {
    std::cerr << "invariant failure: " << e.what() << '\n';
    return invariant_failure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return config_error;
  }
  return ok;
}

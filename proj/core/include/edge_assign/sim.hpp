#pragma once

// Experiment runner: one period per run, parameter sweeps with
// replications, CSV output, and oracle audits.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "edge_assign/mechanisms.hpp"
#include "edge_assign/oracle.hpp"
#include "edge_assign/scenario.hpp"

namespace edge_assign::sim {

struct MetricsRow {
  std::string mechanism;
  std::size_t num_devices = 0;
  std::size_t num_servers = 0;
  std::string app;
  std::uint64_t seed = 0;
  double completed_pct = 0.0;
  double avg_energy = 0.0;   // J, over all devices including failed ones
  double avg_utility = 0.0;
  double offloaded_pct = 0.0;
  int rounds = 0;
  // Edge devices that miss the deadline once bandwidth is split among the
  // server's final enrollment (always 0 in fixed mode).
  std::size_t bandwidth_failed = 0;

  bool operator==(const MetricsRow&) const = default;
};

struct DeviceResult {
  bool completed = false;
  bool offloaded = false;
  bool bandwidth_failed = false;
  double energy = 0.0;
  double utility = 0.0;
  double time_s = 0.0;
};

// Per-device completion, energy and utility under the scenario's bandwidth
// mode. A device completes when it meets its deadline, and, if it ran
// locally, only when the mechanism allowed a local fallback.
std::vector<DeviceResult> evaluate(const Scenario& scenario, const MechanismOutcome& outcome);

MetricsRow summarize(const Scenario& scenario, const MechanismOutcome& outcome,
                     std::string mechanism, std::string app);

// The outcome for any mechanism including the oracle (its canonical
// optimum). Throws GuardError when the oracle cannot be used.
MechanismOutcome solve(const Scenario& scenario, MechanismKind kind,
                       const oracle::Limits& limits = {});

// Labels a scenario by the applications its devices run.
std::string app_label(const Scenario& scenario);

MetricsRow run_once(const Config& config, std::uint64_t seed, MechanismKind kind);
MetricsRow run_scenario(const Scenario& scenario, MechanismKind kind,
                        const oracle::Limits& limits, std::string app);

enum class SweepParam { users, servers, app };

std::string_view label(SweepParam param);
SweepParam parse_sweep_param(std::string_view name);

struct SweepSpec {
  SweepParam param = SweepParam::users;
  std::vector<std::string> values;  // device/server counts or app names
  int reps = 1;
  Config base;
  std::vector<MechanismKind> mechanisms;
};

// Throws ConfigError when the spec is unusable.
void validate(const SweepSpec& spec);

// The configuration used for one swept value.
Config config_for(const SweepSpec& spec, const std::string& value);

// Replication r uses seed base.seed + r. Rows come out ordered by swept
// value, then mechanism (in spec order), then seed, regardless of how many
// threads run the replications.
std::vector<MetricsRow> run_sweep(const SweepSpec& spec, unsigned threads);

// EDGE_ASSIGN_THREADS when set to a positive integer, otherwise the
// hardware concurrency.
unsigned default_threads();

std::string csv_header();
std::string to_csv(const std::vector<MetricsRow>& rows);
void write_csv(const std::vector<MetricsRow>& rows, const std::filesystem::path& path);

// Runs the chosen mechanisms and audits each against the exhaustive optimum.
oracle::OracleReport audit(const Scenario& scenario, const std::vector<MechanismKind>& kinds,
                           const oracle::Limits& limits = {});

}  // namespace edge_assign::sim

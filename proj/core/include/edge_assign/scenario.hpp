#pragma once

// Experiment configuration, seeded scenario generation, and the versioned
// JSON files used to store both.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "edge_assign/model.hpp"

namespace edge_assign {

enum class MechanismKind { ia, da, energy, price, hoda, oracle };

std::string_view label(MechanismKind kind);
// Throws ConfigError for unknown names.
MechanismKind parse_mechanism(std::string_view name);

enum class BandwidthMode { fixed, equal_split };

std::string_view label(BandwidthMode mode);
BandwidthMode parse_bandwidth_mode(std::string_view name);

std::string_view label(GainModel model);
GainModel parse_gain_model(std::string_view name);

struct Range {
  double lo = 0.0;
  double hi = 0.0;

  bool operator==(const Range&) const = default;
};

struct IntRange {
  int lo = 0;
  int hi = 0;

  bool operator==(const IntRange&) const = default;
};

struct AppShare {
  AppProfile profile;
  double weight = 0.0;

  bool operator==(const AppShare&) const = default;
};

// Built-in application profiles. Upload sizes and workloads follow the
// augmented-reality / health / infotainment table (1 KB = 8000 bits);
// deadlines are configuration defaults.
AppProfile builtin_profile(std::string_view name);
std::vector<std::string> builtin_profile_names();

struct Config {
  std::size_t num_devices = 10;
  std::size_t num_servers = 5;
  double region_width_m = 1000.0;
  double region_height_m = 1000.0;
  std::vector<AppShare> app_mix;  // empty means an equal mix of built-ins

  // Per-device uniform ranges.
  Range f_local_mips{1000.0, 4000.0};
  Range energy_per_mi{1e-3, 1e-3};
  Range alpha{1.0, 1.0};
  Range beta{1.0, 1.0};
  Range budget{10.0, 100.0};

  // Per-server uniform ranges.
  Range f_max_mips{20000.0, 80000.0};
  IntRange capacity{5, 20};
  Range unit_price{0.001, 0.01};

  double bandwidth_hz = 20e6;
  double tx_power_w = 0.5;
  double noise_w = 1e-13;
  GainModel gain_model = GainModel::log2_m;

  BandwidthMode bandwidth_mode = BandwidthMode::fixed;
  MechanismKind mechanism = MechanismKind::ia;
  std::uint64_t seed = 1;

  std::size_t oracle_max_devices = 6;
  std::size_t oracle_max_servers = 3;

  bool operator==(const Config&) const = default;
};

// Throws ConfigError naming the first invalid key.
void validate(const Config& config);

// The app mix actually used by generation (defaults filled in).
std::vector<AppShare> effective_app_mix(const Config& config);
// "health" for a single-app mix, otherwise the names joined by '+'.
std::string app_label(const Config& config);

Config parse_config(std::string_view json_text);
Config load_config(const std::filesystem::path& path);
std::string config_to_json(const Config& config);
void save_config(const Config& config, const std::filesystem::path& path);
std::uint64_t config_hash(const Config& config);

struct Provenance {
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;

  bool operator==(const Provenance&) const = default;
};

// One fully instantiated quasi-static period.
struct Scenario {
  std::vector<MobileDevice> devices;
  std::vector<MecServer> servers;
  RadioEnvironment radio;
  BandwidthMode bandwidth_mode = BandwidthMode::fixed;
  Provenance provenance;

  std::size_t num_devices() const { return devices.size(); }
  std::size_t num_servers() const { return servers.size(); }

  bool operator==(const Scenario&) const = default;
};

// Exponential draws are clamped to at least this fraction of their mean.
inline constexpr double kExponentialFloor = 0.01;

Scenario generate(const Config& config, std::uint64_t seed);

// Throws std::invalid_argument when an entity breaks its invariants.
void validate(const Scenario& scenario);

std::string scenario_to_json(const Scenario& scenario);
Scenario parse_scenario(std::string_view json_text);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace edge_assign

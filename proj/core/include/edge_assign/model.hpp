#pragma once

// Domain types and the closed-form link, compute, energy and utility
// equations shared by every mechanism.
//
// Units: positions and distances in metres, workloads in MI (million
// instructions), CPU speeds in MIPS, data sizes in bits, times in seconds,
// energies in joules, power in watts, bandwidth in Hz. Prices are abstract
// money units.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace edge_assign {

using DeviceId = std::size_t;
using ServerId = std::size_t;

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

struct AppProfile {
  std::string name;
  double mean_upload_bits = 0.0;
  double mean_workload_mi = 0.0;
  double mean_deadline_s = 0.0;

  bool operator==(const AppProfile&) const = default;
};

// Inherent parameters of one indivisible task; they do not depend on where
// the task runs.
struct Task {
  double workload_mi = 0.0;
  double input_bits = 0.0;
  double deadline_s = 0.0;

  bool operator==(const Task&) const = default;
};

struct MobileDevice {
  DeviceId id = 0;
  Point position;
  double f_local_mips = 0.0;
  double tx_power_w = 0.0;
  double energy_per_mi = 0.0;  // J/MI
  double alpha = 0.0;          // price weight
  double beta = 0.0;           // energy weight
  double budget = 0.0;         // largest acceptable payment
  std::string app;
  Task task;

  bool operator==(const MobileDevice&) const = default;
};

struct MecServer {
  ServerId id = 0;
  Point position;
  double f_max_mips = 0.0;
  int capacity = 0;          // enrollment cap q_j
  double unit_price = 0.0;   // money per MI
  double bandwidth_hz = 0.0; // per-device channel bandwidth

  bool operator==(const MecServer&) const = default;
};

enum class GainModel {
  // Path loss 127 + 30 log2(D) dB with D in metres, clamped at 1 m.
  log2_m,
  // Path loss 127 + 30 log10(D) dB with D in kilometres, D clamped at 1 m.
  log10_km,
};

struct RadioEnvironment {
  double noise_w = 1e-13;
  GainModel gain_model = GainModel::log2_m;

  double gain(double distance_m) const;

  bool operator==(const RadioEnvironment&) const = default;
};

struct EdgeSlot {
  ServerId server = 0;
  double frequency_mips = 0.0;

  bool operator==(const EdgeSlot&) const = default;
};

// Either local execution (no edge slot) or one server with an allocation.
struct Placement {
  std::optional<EdgeSlot> edge;

  static Placement local() { return {}; }
  static Placement on(ServerId server, double frequency_mips) {
    return Placement{EdgeSlot{server, frequency_mips}};
  }

  bool is_local() const { return !edge.has_value(); }
  bool is_edge() const { return edge.has_value(); }

  bool operator==(const Placement&) const = default;
};

// One placement per device, indexed by device id.
struct Assignment {
  std::vector<Placement> placements;

  std::size_t size() const { return placements.size(); }
  const Placement& operator[](DeviceId i) const { return placements[i]; }
  Placement& operator[](DeviceId i) { return placements[i]; }

  int enrollment(ServerId j) const;
  double frequency_sum(ServerId j) const;

  bool operator==(const Assignment&) const = default;
};

// Throw std::invalid_argument naming the violated invariant.
void validate(const Task& task);
void validate(const MobileDevice& md);
void validate(const MecServer& server);
void validate(const AppProfile& profile);

double distance(Point a, Point b);
double distance(const MobileDevice& md, const MecServer& server);

double path_loss_db(double distance_m);
// Linear gain 10^(-PL/10) for the literal log2/metre model.
double channel_gain(double distance_m);
double channel_gain_log10_km(double distance_m);

// Shannon rate B log2(1 + P H / sigma^2).
double uplink_rate(double bandwidth_hz, double tx_power_w, double gain,
                   double noise_w);
double uplink_rate(const MobileDevice& md, const MecServer& server,
                   const RadioEnvironment& env);

double local_time(const Task& task, const MobileDevice& md);
double local_energy(const Task& task, const MobileDevice& md);

double trans_time(const Task& task, double rate_bps);
double trans_energy(const Task& task, const MobileDevice& md, double rate_bps);

double exec_time(const Task& task, double frequency_mips);

// Smallest allocation that finishes the task exactly at its deadline, or
// nullopt when the upload alone already reaches the deadline.
std::optional<double> required_frequency(const Task& task, double trans_time_s);

// Energy actually spent by the device: upload energy on an edge placement,
// compute energy when run locally.
double total_energy(const MobileDevice& md, const Placement& placement,
                    double rate_bps);

// alpha * price + beta * energy.
double weighted_cost(double alpha, double beta, double price, double energy);

double edge_price(const MobileDevice& md, const MecServer& server);
double utility(const MobileDevice& md, const MecServer& server, double rate_bps);
double local_utility(const MobileDevice& md);

// Everything a device learns about one server before applying to it.
struct EdgeQuote {
  double rate_bps = 0.0;
  double trans_time_s = 0.0;
  double trans_energy_j = 0.0;
  double price = 0.0;
  std::optional<double> frequency_mips;
};

EdgeQuote quote(const MobileDevice& md, const MecServer& server,
                const RadioEnvironment& env);
EdgeQuote quote(const MobileDevice& md, const MecServer& server,
                const RadioEnvironment& env, double bandwidth_hz);

}  // namespace edge_assign

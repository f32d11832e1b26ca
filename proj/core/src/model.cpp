#include "edge_assign/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace edge_assign {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

int Assignment::enrollment(ServerId j) const {
  int n = 0;
  for (const auto& p : placements)
    if (p.edge && p.edge->server == j) ++n;
  return n;
}

double Assignment::frequency_sum(ServerId j) const {
  double sum = 0.0;
  for (const auto& p : placements)
    if (p.edge && p.edge->server == j) sum += p.edge->frequency_mips;
  return sum;
}

void validate(const Task& task) {
  require(task.workload_mi > 0.0, "task workload must be positive");
  require(task.input_bits > 0.0, "task input size must be positive");
  require(task.deadline_s > 0.0, "task deadline must be positive");
}

void validate(const MobileDevice& md) {
  require(md.f_local_mips > 0.0, "device f_local must be positive");
  require(md.tx_power_w > 0.0, "device transmit power must be positive");
  require(md.energy_per_mi > 0.0, "device energy per MI must be positive");
  require(md.alpha >= 0.0 && md.beta >= 0.0, "device weights must be non-negative");
  require(md.alpha + md.beta > 0.0, "device weights must not both be zero");
  require(md.budget >= 0.0, "device budget must be non-negative");
  validate(md.task);
}

void validate(const MecServer& server) {
  require(server.f_max_mips > 0.0, "server f_max must be positive");
  require(server.capacity >= 1, "server capacity must be at least 1");
  require(server.unit_price >= 0.0, "server unit price must be non-negative");
  require(server.bandwidth_hz > 0.0, "server bandwidth must be positive");
}

void validate(const AppProfile& profile) {
  require(profile.mean_upload_bits > 0.0, "profile mean upload must be positive");
  require(profile.mean_workload_mi > 0.0, "profile mean workload must be positive");
  require(profile.mean_deadline_s > 0.0, "profile mean deadline must be positive");
}

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

double distance(const MobileDevice& md, const MecServer& server) {
  return distance(md.position, server.position);
}

double path_loss_db(double distance_m) {
  return 127.0 + 30.0 * std::log2(std::max(distance_m, 1.0));
}

double channel_gain(double distance_m) {
  return std::pow(10.0, -path_loss_db(distance_m) / 10.0);
}

double channel_gain_log10_km(double distance_m) {
  const double km = std::max(distance_m, 1.0) / 1000.0;
  return std::pow(10.0, -(127.0 + 30.0 * std::log10(km)) / 10.0);
}

double RadioEnvironment::gain(double distance_m) const {
  switch (gain_model) {
    case GainModel::log2_m:
      return channel_gain(distance_m);
    case GainModel::log10_km:
      return channel_gain_log10_km(distance_m);
  }
  return channel_gain(distance_m);
}

double uplink_rate(double bandwidth_hz, double tx_power_w, double gain,
                   double noise_w) {
  require(bandwidth_hz > 0.0, "bandwidth must be positive");
  require(noise_w > 0.0, "noise power must be positive");
  // log1p keeps precision for the very small SNRs long links produce.
  return bandwidth_hz * std::log1p(tx_power_w * gain / noise_w) / std::log(2.0);
}

double uplink_rate(const MobileDevice& md, const MecServer& server,
                   const RadioEnvironment& env) {
  return uplink_rate(server.bandwidth_hz, md.tx_power_w,
                     env.gain(distance(md, server)), env.noise_w);
}

double local_time(const Task& task, const MobileDevice& md) {
  require(md.f_local_mips > 0.0, "local_time: f_local must be positive");
  return task.workload_mi / md.f_local_mips;
}

double local_energy(const Task& task, const MobileDevice& md) {
  require(md.energy_per_mi > 0.0, "local_energy: energy per MI must be positive");
  return md.energy_per_mi * task.workload_mi;
}

double trans_time(const Task& task, double rate_bps) {
  require(rate_bps > 0.0, "trans_time: rate must be positive");
  return task.input_bits / rate_bps;
}

double trans_energy(const Task& task, const MobileDevice& md, double rate_bps) {
  return md.tx_power_w * trans_time(task, rate_bps);
}

double exec_time(const Task& task, double frequency_mips) {
  require(frequency_mips > 0.0, "exec_time: frequency must be positive");
  return task.workload_mi / frequency_mips;
}

std::optional<double> required_frequency(const Task& task, double trans_time_s) {
  const double slack = task.deadline_s - trans_time_s;
  if (!(slack > 0.0)) return std::nullopt;
  return task.workload_mi / slack;
}

double total_energy(const MobileDevice& md, const Placement& placement,
                    double rate_bps) {
  if (placement.is_edge()) return trans_energy(md.task, md, rate_bps);
  return local_energy(md.task, md);
}

double weighted_cost(double alpha, double beta, double price, double energy) {
  return alpha * price + beta * energy;
}

double edge_price(const MobileDevice& md, const MecServer& server) {
  return server.unit_price * md.task.workload_mi;
}

double utility(const MobileDevice& md, const MecServer& server, double rate_bps) {
  return weighted_cost(md.alpha, md.beta, edge_price(md, server),
                       trans_energy(md.task, md, rate_bps));
}

double local_utility(const MobileDevice& md) {
  return weighted_cost(md.alpha, md.beta, 0.0, local_energy(md.task, md));
}

EdgeQuote quote(const MobileDevice& md, const MecServer& server,
                const RadioEnvironment& env) {
  return quote(md, server, env, server.bandwidth_hz);
}

EdgeQuote quote(const MobileDevice& md, const MecServer& server,
                const RadioEnvironment& env, double bandwidth_hz) {
  EdgeQuote q;
  q.rate_bps = uplink_rate(bandwidth_hz, md.tx_power_w,
                           env.gain(distance(md, server)), env.noise_w);
  q.price = edge_price(md, server);
  if (!(q.rate_bps > 0.0)) return q;  // unreachable: no finite upload time
  q.trans_time_s = trans_time(md.task, q.rate_bps);
  q.trans_energy_j = trans_energy(md.task, md, q.rate_bps);
  q.frequency_mips = required_frequency(md.task, q.trans_time_s);
  return q;
}

}  // namespace edge_assign

#include "edge_assign/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "edge_assign/errors.hpp"
#include "json.hpp"

namespace edge_assign::oracle {

namespace {

// What one device can do on each server, derived from the model equations.
struct DeviceView {
  bool local_ok = false;
  double local_u = 0.0;
  std::vector<std::optional<double>> demand;  // exact-deadline f_ij
  std::vector<double> edge_u;
  std::vector<bool> acceptable;  // listed in the submitted preferences
  std::vector<std::size_t> rank; // position among acceptable servers
  std::size_t listed = 0;
};

std::vector<DeviceView> views_of(const Scenario& sc) {
  std::vector<DeviceView> views;
  views.reserve(sc.devices.size());
  for (const MobileDevice& md : sc.devices) {
    DeviceView v;
    v.local_ok = md.task.workload_mi / md.f_local_mips <= md.task.deadline_s;
    v.local_u = md.beta * (md.energy_per_mi * md.task.workload_mi);
    const std::size_t m = sc.servers.size();
    v.demand.resize(m);
    v.edge_u.resize(m);
    v.acceptable.assign(m, false);
    v.rank.assign(m, m);
    std::vector<std::pair<double, ServerId>> listed;
    for (const MecServer& s : sc.servers) {
      const double gain = sc.radio.gain(distance(md.position, s.position));
      const double rate = uplink_rate(s.bandwidth_hz, md.tx_power_w, gain, sc.radio.noise_w);
      const double price = s.unit_price * md.task.workload_mi;
      if (rate > 0.0) {
        const double t_up = trans_time(md.task, rate);
        v.demand[s.id] = required_frequency(md.task, t_up);
        v.edge_u[s.id] = md.alpha * price + md.beta * trans_energy(md.task, md, rate);
      } else {
        v.edge_u[s.id] = std::numeric_limits<double>::infinity();
      }
      if (v.demand[s.id] && *v.demand[s.id] <= s.f_max_mips && price <= md.budget) {
        v.acceptable[s.id] = true;
        listed.emplace_back(v.edge_u[s.id], s.id);
      }
    }
    std::sort(listed.begin(), listed.end());
    for (std::size_t k = 0; k < listed.size(); ++k) v.rank[listed[k].second] = k;
    v.listed = listed.size();
    views.push_back(std::move(v));
  }
  return views;
}

// Strict priority of server j: is device a ahead of device b?
bool ahead(const Scenario& sc, ServerId j, DeviceId a, DeviceId b) {
  const double da = distance(sc.devices[a].position, sc.servers[j].position);
  const double db = distance(sc.devices[b].position, sc.servers[j].position);
  if (da != db) return da < db;
  return a < b;
}

// Lower is better under both preference models.
double value(const DeviceView& v, const Placement& p, PreferenceModel model) {
  if (model == PreferenceModel::utility) return p.edge ? v.edge_u[p.edge->server] : v.local_u;
  if (p.is_local()) return static_cast<double>(v.listed);
  const ServerId j = p.edge->server;
  return v.acceptable[j] ? static_cast<double>(v.rank[j]) : static_cast<double>(v.listed + 1);
}

}  // namespace

Limits limits_from(const Config& config) {
  return {config.oracle_max_devices, config.oracle_max_servers};
}

void check_guard(const Scenario& sc, const Limits& limits) {
  if (sc.devices.size() > limits.max_devices || sc.servers.size() > limits.max_servers)
    throw GuardError("instance too large for exhaustive search: N=" +
                     std::to_string(sc.devices.size()) + ", M=" +
                     std::to_string(sc.servers.size()) + " (limits N<=" +
                     std::to_string(limits.max_devices) + ", M<=" +
                     std::to_string(limits.max_servers) + ")");
}

FeasibleSet enumerate_feasible(const Scenario& sc, const Limits& limits) {
  check_guard(sc, limits);
  const std::size_t n = sc.devices.size();
  const std::size_t m = sc.servers.size();
  const auto views = views_of(sc);

  FeasibleSet out;
  Assignment current;
  current.placements.assign(n, Placement::local());
  std::vector<int> seats(m, 0);
  std::vector<double> used(m, 0.0);

  // Depth-first over devices in id order, local option first, so members
  // come out in lexicographic order.
  auto dfs = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      out.members.push_back(current);
      return;
    }
    const DeviceView& v = views[i];
    if (v.local_ok) {
      current[i] = Placement::local();
      self(self, i + 1);
    }
    for (ServerId j = 0; j < m; ++j) {
      if (!v.demand[j]) continue;
      const double f = *v.demand[j];
      if (seats[j] + 1 > sc.servers[j].capacity) continue;
      if (used[j] + f > sc.servers[j].f_max_mips) continue;
      ++seats[j];
      const double before = used[j];
      used[j] += f;
      current[i] = Placement::on(j, f);
      self(self, i + 1);
      --seats[j];
      used[j] = before;
    }
    current[i] = Placement::local();
  };
  dfs(dfs, 0);
  return out;
}

double objective(const Scenario& sc, const Assignment& a) {
  double total = 0.0;
  for (DeviceId i = 0; i < sc.devices.size(); ++i) {
    const MobileDevice& md = sc.devices[i];
    if (a[i].edge) {
      const MecServer& s = sc.servers[a[i].edge->server];
      const double gain = sc.radio.gain(distance(md.position, s.position));
      const double rate = uplink_rate(s.bandwidth_hz, md.tx_power_w, gain, sc.radio.noise_w);
      total += md.alpha * (s.unit_price * md.task.workload_mi) +
               md.beta * trans_energy(md.task, md, rate);
    } else {
      total += md.beta * (md.energy_per_mi * md.task.workload_mi);
    }
  }
  return total;
}

bool satisfies_constraints(const Scenario& sc, const Assignment& a) {
  if (a.size() != sc.devices.size()) return false;
  const std::size_t m = sc.servers.size();
  std::vector<int> seats(m, 0);
  std::vector<double> used(m, 0.0);
  for (DeviceId i = 0; i < a.size(); ++i) {
    const MobileDevice& md = sc.devices[i];
    if (!a[i].edge) {
      if (md.task.workload_mi / md.f_local_mips > md.task.deadline_s) return false;
      continue;
    }
    const auto [j, f] = *a[i].edge;
    if (j >= m || !(f > 0.0)) return false;
    const MecServer& s = sc.servers[j];
    const double gain = sc.radio.gain(distance(md.position, s.position));
    const double rate = uplink_rate(s.bandwidth_hz, md.tx_power_w, gain, sc.radio.noise_w);
    if (!(rate > 0.0)) return false;
    if (md.task.input_bits / rate + md.task.workload_mi / f > md.task.deadline_s * (1 + 1e-9))
      return false;
    ++seats[j];
    used[j] += f;
  }
  for (ServerId j = 0; j < m; ++j)
    if (seats[j] > sc.servers[j].capacity || used[j] > sc.servers[j].f_max_mips * (1 + 1e-12))
      return false;
  return true;
}

DominanceVerdict is_pareto_dominated(const Assignment& a, const Scenario& sc,
                                     PreferenceModel model, const Limits& limits) {
  return is_pareto_dominated(a, sc, enumerate_feasible(sc, limits), model);
}

DominanceVerdict is_pareto_dominated(const Assignment& a, const Scenario& sc,
                                     const FeasibleSet& feasible, PreferenceModel model) {
  const auto views = views_of(sc);
  const std::size_t n = sc.devices.size();
  std::vector<double> base(n);
  for (DeviceId i = 0; i < n; ++i) base[i] = value(views[i], a[i], model);

  for (const Assignment& candidate : feasible.members) {
    bool strictly = false;
    bool ok = true;
    for (DeviceId i = 0; i < n && ok; ++i) {
      const double v = value(views[i], candidate[i], model);
      if (v > base[i]) ok = false;
      else if (v < base[i]) strictly = true;
    }
    if (ok && strictly) return {true, candidate};
  }
  return {};
}

std::vector<BlockingPair> blocking_pairs(const Assignment& a, const Scenario& sc) {
  const auto views = views_of(sc);
  const std::size_t n = sc.devices.size();
  const std::size_t m = sc.servers.size();

  std::vector<std::vector<DeviceId>> holders(m);
  std::vector<double> used(m, 0.0);
  for (DeviceId i = 0; i < n; ++i) {
    if (!a[i].edge) continue;
    holders[a[i].edge->server].push_back(i);
    used[a[i].edge->server] += a[i].edge->frequency_mips;
  }

  std::vector<BlockingPair> out;
  for (DeviceId i = 0; i < n; ++i) {
    const DeviceView& v = views[i];
    const double current = value(v, a[i], PreferenceModel::submitted);
    for (ServerId j = 0; j < m; ++j) {
      if (!v.acceptable[j]) continue;
      if (!(static_cast<double>(v.rank[j]) < current)) continue;
      const MecServer& s = sc.servers[j];
      const double f = *v.demand[j];
      bool blocks = static_cast<int>(holders[j].size()) < s.capacity && used[j] + f <= s.f_max_mips;
      for (DeviceId h : holders[j]) {
        if (blocks) break;
        if (h == i || !ahead(sc, j, i, h)) continue;
        blocks = used[j] - a[h].edge->frequency_mips + f <= s.f_max_mips;
      }
      if (blocks) out.push_back({i, j});
    }
  }
  return out;
}

Assignment reference_immediate_acceptance(const Scenario& sc) {
  const std::size_t n = sc.devices.size();
  const std::size_t m = sc.servers.size();
  const auto views = views_of(sc);

  // choice[i][k] = k-th most preferred acceptable server of device i.
  std::vector<std::vector<ServerId>> choice(n);
  for (DeviceId i = 0; i < n; ++i) {
    choice[i].resize(views[i].listed);
    for (ServerId j = 0; j < m; ++j)
      if (views[i].acceptable[j]) choice[i][views[i].rank[j]] = j;
  }
  std::vector<std::vector<DeviceId>> order(m);
  for (ServerId j = 0; j < m; ++j) {
    order[j].resize(n);
    for (DeviceId i = 0; i < n; ++i) order[j][i] = i;
    std::sort(order[j].begin(), order[j].end(),
              [&](DeviceId x, DeviceId y) { return ahead(sc, j, x, y); });
  }

  Assignment result;
  result.placements.assign(n, Placement::local());
  std::vector<bool> assigned(n, false);
  std::vector<int> seats(m, 0);
  std::vector<double> used(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    for (ServerId j = 0; j < m; ++j) {
      for (DeviceId i : order[j]) {
        if (assigned[i] || k >= choice[i].size() || choice[i][k] != j) continue;
        const double f = *views[i].demand[j];
        if (seats[j] < sc.servers[j].capacity && used[j] + f <= sc.servers[j].f_max_mips) {
          ++seats[j];
          used[j] += f;
          assigned[i] = true;
          result[i] = Placement::on(j, f);
        }
      }
    }
  }
  return result;
}

OracleReport optimal_assignment(const Scenario& sc, const Limits& limits) {
  const FeasibleSet feasible = enumerate_feasible(sc, limits);
  OracleReport report;
  report.feasible_count = feasible.size();
  report.feasible = !feasible.empty();
  if (!report.feasible) return report;

  std::vector<double> values;
  values.reserve(feasible.size());
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : feasible.members) {
    values.push_back(objective(sc, a));
    best = std::min(best, values.back());
  }
  const double tol = 1e-12 * std::max(1.0, std::abs(best));
  for (std::size_t k = 0; k < feasible.size(); ++k)
    if (values[k] <= best + tol) report.optimal.push_back(feasible.members[k]);
  report.optimal_objective = best;
  report.canonical = 0;  // enumeration order is lexicographic
  return report;
}

bool enrollment_dominated(const Assignment& assignment, const Scenario& sc,
                          const FeasibleSet& feasible) {
  const std::size_t m = sc.servers.size();
  std::vector<int> base(m);
  for (ServerId j = 0; j < m; ++j) base[j] = assignment.enrollment(j);
  for (const auto& other : feasible.members) {
    bool strict = false, weak = true;
    for (ServerId j = 0; j < m && weak; ++j) {
      const int e = other.enrollment(j);
      weak = e >= base[j];
      strict |= e > base[j];
    }
    if (weak && strict) return true;
  }
  return false;
}

MechanismAudit audit_assignment(const Scenario& sc, const OracleReport& report,
                                const FeasibleSet& feasible, std::string mechanism,
                                const Assignment& assignment, bool outcome_completed) {
  MechanismAudit audit;
  audit.mechanism = std::move(mechanism);
  audit.objective = objective(sc, assignment);
  audit.outcome_feasible = outcome_completed && satisfies_constraints(sc, assignment);
  audit.gap = audit.outcome_feasible && report.feasible
                  ? audit.objective - report.optimal_objective
                  : std::numeric_limits<double>::infinity();
  audit.dominated_submitted =
      is_pareto_dominated(assignment, sc, feasible, PreferenceModel::submitted).dominated;
  audit.dominated_utility =
      is_pareto_dominated(assignment, sc, feasible, PreferenceModel::utility).dominated;
  audit.dominated_enrollment = enrollment_dominated(assignment, sc, feasible);
  audit.blocking = blocking_pairs(assignment, sc);
  return audit;
}

namespace {

nlohmann::json codes(const Assignment& a) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : a.placements)
    out.push_back(p.edge ? static_cast<long long>(p.edge->server) + 1 : 0LL);
  return out;
}

}  // namespace

std::string report_to_json(const OracleReport& r) {
  using nlohmann::json;
  json optimal = json::array();
  for (const auto& a : r.optimal) optimal.push_back(codes(a));
  json audits = json::array();
  for (const auto& m : r.audits) {
    json blocking = json::array();
    for (const auto& b : m.blocking) blocking.push_back({b.device, b.server});
    audits.push_back({{"mechanism", m.mechanism},
                      {"objective", m.objective},
                      {"outcome_feasible", m.outcome_feasible},
                      {"gap", std::isfinite(m.gap) ? json(m.gap) : json(nullptr)},
                      {"dominated_submitted", m.dominated_submitted},
                      {"dominated_utility", m.dominated_utility},
                      {"dominated_enrollment", m.dominated_enrollment},
                      {"blocking_pairs", blocking}});
  }
  json root = {{"feasible", r.feasible},
               {"feasible_count", r.feasible_count},
               {"optimal_objective", r.feasible ? json(r.optimal_objective) : json(nullptr)},
               {"optimal_assignments", optimal},
               {"canonical", r.feasible ? json(r.canonical) : json(nullptr)},
               {"placement_codes", "0 = local, j + 1 = server j"},
               {"audits", audits}};
  return root.dump(2) + "\n";
}

}  // namespace edge_assign::oracle

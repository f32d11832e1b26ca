#include "edge_assign/mechanisms.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "edge_assign/errors.hpp"
#include "json.hpp"

namespace edge_assign {

namespace {

// Relative slack for re-checking deadlines computed by inverting the
// deadline equation; the allocation meets the deadline exactly, up to
// rounding.
constexpr double kDeadlineTolerance = 1e-9;

double score_of(const MobileDevice& md, const EdgeQuote& q, ScoreRule rule) {
  switch (rule) {
    case ScoreRule::weighted:
      return weighted_cost(md.alpha, md.beta, q.price, q.trans_energy_j);
    case ScoreRule::energy_only:
      return q.trans_energy_j;
    case ScoreRule::price_only:
      return q.price;
  }
  return 0.0;
}

// Seats and compute left at one server while a mechanism runs.
struct Load {
  int enrolled = 0;
  double used_mips = 0.0;

  bool admits(const MecServer& s, double f) const {
    return enrolled < s.capacity && used_mips + f <= s.f_max_mips;
  }
  void add(double f) {
    ++enrolled;
    used_mips += f;
  }
};

}  // namespace

const PreferenceEntry* PreferenceList::find(ServerId j) const {
  for (const auto& e : entries)
    if (e.server == j) return &e;
  return nullptr;
}

std::size_t PreferenceList::rank(ServerId j) const {
  for (std::size_t k = 0; k < entries.size(); ++k)
    if (entries[k].server == j) return k;
  return entries.size();
}

PreferenceList build_preferences(const MobileDevice& md,
                                 std::span<const MecServer> servers,
                                 const RadioEnvironment& env, ScoreRule rule) {
  PreferenceList list;
  list.device = md.id;
  for (const auto& s : servers) {
    const EdgeQuote q = quote(md, s, env);
    if (!q.frequency_mips) continue;                 // deadline unreachable
    if (*q.frequency_mips > s.f_max_mips) continue;  // server too small
    if (q.price > md.budget) continue;               // unaffordable
    list.entries.push_back({s.id, score_of(md, q, rule), *q.frequency_mips, q.price});
  }
  std::sort(list.entries.begin(), list.entries.end(),
            [](const PreferenceEntry& a, const PreferenceEntry& b) {
              if (a.score != b.score) return a.score < b.score;
              return a.server < b.server;
            });
  return list;
}

std::vector<PreferenceList> build_preferences(const Scenario& sc, ScoreRule rule) {
  std::vector<PreferenceList> out;
  out.reserve(sc.devices.size());
  for (const auto& md : sc.devices)
    out.push_back(build_preferences(md, sc.servers, sc.radio, rule));
  return out;
}

PriorityList build_priorities(const MecServer& server,
                              std::span<const MobileDevice> devices) {
  std::vector<std::pair<double, DeviceId>> keyed;
  keyed.reserve(devices.size());
  for (const auto& md : devices) keyed.emplace_back(distance(md, server), md.id);
  std::sort(keyed.begin(), keyed.end());
  PriorityList list;
  list.server = server.id;
  for (const auto& [d, id] : keyed) list.devices.push_back(id);
  return list;
}

std::vector<PriorityList> build_priorities(const Scenario& sc) {
  std::vector<PriorityList> out;
  out.reserve(sc.servers.size());
  for (const auto& s : sc.servers) out.push_back(build_priorities(s, sc.devices));
  return out;
}

std::vector<std::size_t> priority_ranks(const PriorityList& list, std::size_t n) {
  std::vector<std::size_t> rank(n, n);
  for (std::size_t k = 0; k < list.devices.size(); ++k) rank[list.devices[k]] = k;
  return rank;
}

namespace {

MechanismOutcome empty_outcome(std::size_t n) {
  MechanismOutcome out;
  out.assignment.placements.assign(n, Placement::local());
  out.fallback_denied.assign(n, false);
  out.trace.resize(n);
  return out;
}

std::vector<std::vector<std::size_t>> all_priority_ranks(const Scenario& sc) {
  std::vector<std::vector<std::size_t>> ranks;
  for (const auto& p : build_priorities(sc))
    ranks.push_back(priority_ranks(p, sc.devices.size()));
  return ranks;
}

}  // namespace

MechanismOutcome run_immediate_acceptance(const Scenario& sc,
                                          std::span<const PreferenceList> prefs,
                                          bool local_fallback) {
  const std::size_t n = sc.devices.size();
  const std::size_t m = sc.servers.size();
  const auto ranks = all_priority_ranks(sc);

  MechanismOutcome out = empty_outcome(n);
  std::vector<std::size_t> next(n, 0);
  std::vector<bool> done(n, false);
  std::vector<Load> load(m);

  auto settle_exhausted = [&] {
    for (DeviceId i = 0; i < n; ++i) {
      if (done[i] || next[i] < prefs[i].entries.size()) continue;
      done[i] = true;
      out.fallback_denied[i] = !local_fallback;
    }
  };
  settle_exhausted();

  std::vector<std::vector<DeviceId>> applicants(m);
  for (;;) {
    for (auto& a : applicants) a.clear();
    bool any = false;
    for (DeviceId i = 0; i < n; ++i) {
      if (done[i]) continue;
      applicants[prefs[i].entries[next[i]].server].push_back(i);
      any = true;
    }
    if (!any) break;
    ++out.rounds;

    for (ServerId j = 0; j < m; ++j) {
      auto& group = applicants[j];
      std::sort(group.begin(), group.end(),
                [&](DeviceId a, DeviceId b) { return ranks[j][a] < ranks[j][b]; });
      for (DeviceId i : group) {
        const double f = prefs[i].entries[next[i]].frequency_mips;
        if (load[j].admits(sc.servers[j], f)) {
          load[j].add(f);
          out.assignment[i] = Placement::on(j, f);
          done[i] = true;
          out.trace[i].push_back({out.rounds, j, Verdict::accepted});
        } else {
          ++next[i];
          out.trace[i].push_back({out.rounds, j, Verdict::rejected});
        }
      }
    }
    settle_exhausted();
  }
  return out;
}

MechanismOutcome immediate_acceptance(const Scenario& sc) {
  const auto prefs = build_preferences(sc, ScoreRule::weighted);
  return run_immediate_acceptance(sc, prefs, true);
}

MechanismOutcome energy_baseline(const Scenario& sc) {
  const auto prefs = build_preferences(sc, ScoreRule::energy_only);
  return run_immediate_acceptance(sc, prefs, false);
}

MechanismOutcome price_baseline(const Scenario& sc) {
  const auto prefs = build_preferences(sc, ScoreRule::price_only);
  return run_immediate_acceptance(sc, prefs, false);
}

// Device-proposing deferred acceptance with sized seats.
//
// Each server keeps, out of its current holds plus the new applicants, the
// set chosen greedily in priority order subject to its seat count and
// compute capacity. Holds that drop out are displaced and continue down
// their lists. Because a displacement can leave room that an earlier
// rejected applicant would now fit in, a quiescent state is followed by a
// re-application pass: any device that the greedy choice of a
// better-ranked server would now admit applies there again. The procedure
// stops at a fixed point of both steps. Sized demands admit instances with
// no stable assignment; there the passes cycle, and the procedure stops at
// the first quiescent state it sees twice.
MechanismOutcome deferred_acceptance(const Scenario& sc) {
  const std::size_t n = sc.devices.size();
  const std::size_t m = sc.servers.size();
  const auto prefs = build_preferences(sc, ScoreRule::weighted);
  const auto ranks = all_priority_ranks(sc);

  MechanismOutcome out = empty_outcome(n);
  std::vector<std::size_t> next(n, 0);
  std::vector<std::optional<ServerId>> held_at(n);
  std::vector<std::vector<DeviceId>> holds(m);  // sorted by priority

  auto demand = [&](DeviceId i, ServerId j) { return prefs[i].find(j)->frequency_mips; };
  auto free_device = [&](DeviceId i) {
    return !held_at[i] && next[i] < prefs[i].entries.size();
  };

  // Whether j's greedy choice over holds + {i} would include i.
  auto would_admit = [&](ServerId j, DeviceId i) {
    const MecServer& s = sc.servers[j];
    int seats = 0;
    double used = 0.0;
    for (DeviceId h : holds[j]) {
      if (ranks[j][h] > ranks[j][i]) break;
      if (h == i) continue;
      ++seats;
      used += demand(h, j);
    }
    return seats < s.capacity && used + demand(i, j) <= s.f_max_mips;
  };

  const std::size_t max_rounds = 64 * (n * m + 1) * (n + 1);
  std::set<std::vector<std::optional<ServerId>>> quiescent;
  std::vector<std::vector<DeviceId>> applicants(m);
  for (;;) {
    for (auto& a : applicants) a.clear();
    bool any = false;
    for (DeviceId i = 0; i < n; ++i) {
      if (!free_device(i)) continue;
      applicants[prefs[i].entries[next[i]].server].push_back(i);
      any = true;
    }

    if (!any) {
      if (!quiescent.insert(held_at).second) break;
      // Re-application pass.
      for (DeviceId i = 0; i < n; ++i) {
        const std::size_t current =
            held_at[i] ? prefs[i].rank(*held_at[i]) : prefs[i].entries.size();
        for (std::size_t k = 0; k < current; ++k) {
          const ServerId j = prefs[i].entries[k].server;
          if (!would_admit(j, i)) continue;
          if (held_at[i]) {
            auto& h = holds[*held_at[i]];
            h.erase(std::find(h.begin(), h.end(), i));
            held_at[i].reset();
          }
          next[i] = k;
          applicants[j].push_back(i);
          any = true;
          break;
        }
      }
      if (!any) break;
    }

    if (static_cast<std::size_t>(++out.rounds) > max_rounds)
      throw InvariantError("deferred acceptance did not reach a fixed point");

    for (ServerId j = 0; j < m; ++j) {
      if (applicants[j].empty()) continue;
      const MecServer& s = sc.servers[j];
      std::vector<DeviceId> pool = holds[j];
      pool.insert(pool.end(), applicants[j].begin(), applicants[j].end());
      std::sort(pool.begin(), pool.end(),
                [&](DeviceId a, DeviceId b) { return ranks[j][a] < ranks[j][b]; });

      std::vector<DeviceId> kept;
      Load load;
      for (DeviceId i : pool) {
        const double f = demand(i, j);
        const bool was_held = held_at[i] == j;
        if (load.admits(s, f)) {
          load.add(f);
          kept.push_back(i);
          if (!was_held) {
            held_at[i] = j;
            out.trace[i].push_back({out.rounds, j, Verdict::accepted});
          }
        } else {
          held_at[i].reset();
          next[i] = prefs[i].rank(j) + 1;
          out.trace[i].push_back(
              {out.rounds, j, was_held ? Verdict::displaced : Verdict::rejected});
        }
      }
      holds[j] = std::move(kept);
    }
  }

  for (DeviceId i = 0; i < n; ++i)
    if (held_at[i]) out.assignment[i] = Placement::on(*held_at[i], demand(i, *held_at[i]));
  return out;
}

// Two-stage heuristic offloading decision: devices request their best
// server only when offloading beats local execution; servers then admit
// requesters by decreasing utility improvement.
MechanismOutcome hoda_baseline(const Scenario& sc) {
  const std::size_t n = sc.devices.size();
  const std::size_t m = sc.servers.size();
  const auto prefs = build_preferences(sc, ScoreRule::weighted);

  MechanismOutcome out = empty_outcome(n);
  std::vector<std::vector<std::pair<double, DeviceId>>> requests(m);
  for (DeviceId i = 0; i < n; ++i) {
    if (prefs[i].entries.empty()) continue;
    const MobileDevice& md = sc.devices[i];
    const auto& best = prefs[i].entries.front();
    const double local_u = local_utility(md);
    const bool local_meets = local_time(md.task, md) <= md.task.deadline_s;
    if (local_meets && !(best.score < local_u)) continue;
    requests[best.server].emplace_back(local_u - best.score, i);
  }

  bool any = false;
  for (ServerId j = 0; j < m; ++j) {
    auto& req = requests[j];
    std::sort(req.begin(), req.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    Load load;
    for (const auto& [delta, i] : req) {
      any = true;
      const double f = prefs[i].entries.front().frequency_mips;
      if (load.admits(sc.servers[j], f)) {
        load.add(f);
        out.assignment[i] = Placement::on(j, f);
        out.trace[i].push_back({1, j, Verdict::accepted});
      } else {
        out.trace[i].push_back({1, j, Verdict::rejected});
      }
    }
  }
  out.rounds = any ? 1 : 0;
  return out;
}

MechanismOutcome run_mechanism(const Scenario& sc, MechanismKind kind) {
  switch (kind) {
    case MechanismKind::ia: return immediate_acceptance(sc);
    case MechanismKind::da: return deferred_acceptance(sc);
    case MechanismKind::energy: return energy_baseline(sc);
    case MechanismKind::price: return price_baseline(sc);
    case MechanismKind::hoda: return hoda_baseline(sc);
    case MechanismKind::oracle: break;
  }
  throw std::invalid_argument("run_mechanism: the oracle is not a preference mechanism");
}

bool meets_deadline(const Scenario& sc, const Assignment& a, DeviceId i) {
  const MobileDevice& md = sc.devices[i];
  const Placement& p = a[i];
  if (p.is_local()) return local_time(md.task, md) <= md.task.deadline_s;
  const MecServer& s = sc.servers[p.edge->server];
  const double rate = uplink_rate(md, s, sc.radio);
  if (!(rate > 0.0)) return false;
  const double t = trans_time(md.task, rate) + exec_time(md.task, p.edge->frequency_mips);
  return t <= md.task.deadline_s * (1.0 + kDeadlineTolerance);
}

std::vector<std::string> constraint_violations(const Scenario& sc,
                                               const MechanismOutcome& outcome) {
  std::vector<std::string> v;
  const std::size_t n = sc.devices.size();
  const std::size_t m = sc.servers.size();
  const Assignment& a = outcome.assignment;
  if (a.size() != n) {
    v.push_back("coverage: assignment covers " + std::to_string(a.size()) + " of " +
                std::to_string(n) + " devices");
    return v;
  }
  if (outcome.fallback_denied.size() != n) v.push_back("outcome: fallback flags size mismatch");

  std::vector<int> seats(m, 0);
  std::vector<double> used(m, 0.0);
  for (DeviceId i = 0; i < n; ++i) {
    if (!a[i].edge) continue;
    const EdgeSlot& slot = *a[i].edge;
    if (slot.server >= m) {
      v.push_back("server: device " + std::to_string(i) + " placed on unknown server");
      continue;
    }
    ++seats[slot.server];
    if (!(slot.frequency_mips > 0.0)) {
      v.push_back("allocation: device " + std::to_string(i) + " has non-positive allocation");
      continue;
    }
    used[slot.server] += slot.frequency_mips;
    if (!meets_deadline(sc, a, i))
      v.push_back("deadline: device " + std::to_string(i) + " misses its deadline on server " +
                  std::to_string(slot.server));
  }
  for (ServerId j = 0; j < m; ++j) {
    if (seats[j] > sc.servers[j].capacity)
      v.push_back("seats: server " + std::to_string(j) + " enrolls " + std::to_string(seats[j]) +
                  " > " + std::to_string(sc.servers[j].capacity));
    if (used[j] > sc.servers[j].f_max_mips * (1.0 + 1e-12))
      v.push_back("compute: server " + std::to_string(j) + " allocates " + std::to_string(used[j]) +
                  " > " + std::to_string(sc.servers[j].f_max_mips) + " MIPS");
  }
  return v;
}

void assert_constraints(const Scenario& sc, const MechanismOutcome& outcome) {
  const auto v = constraint_violations(sc, outcome);
  if (v.empty()) return;
  std::ostringstream msg;
  msg << "constraint violations:";
  for (const auto& s : v) msg << "\n  " << s;
  throw InvariantError(msg.str());
}

std::string outcome_to_json(const MechanismOutcome& outcome) {
  using nlohmann::json;
  json placements = json::array();
  for (const auto& p : outcome.assignment.placements) {
    if (p.edge)
      placements.push_back({{"server", p.edge->server}, {"frequency_mips", p.edge->frequency_mips}});
    else
      placements.push_back(nullptr);
  }
  json trace = json::array();
  for (const auto& events : outcome.trace) {
    json row = json::array();
    for (const auto& e : events) {
      const char* verdict = e.verdict == Verdict::accepted   ? "accepted"
                            : e.verdict == Verdict::rejected ? "rejected"
                                                             : "displaced";
      row.push_back({e.round, e.server, verdict});
    }
    trace.push_back(row);
  }
  json root = {{"rounds", outcome.rounds},
               {"placements", placements},
               {"fallback_denied", outcome.fallback_denied},
               {"trace", trace}};
  return root.dump();
}

}  // namespace edge_assign

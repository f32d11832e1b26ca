#include "edge_assign/sim.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include "edge_assign/errors.hpp"

namespace edge_assign::sim {

std::vector<DeviceResult> evaluate(const Scenario& sc, const MechanismOutcome& outcome) {
  const std::size_t n = sc.devices.size();
  const Assignment& a = outcome.assignment;

  std::vector<int> enrolled(sc.servers.size(), 0);
  for (const auto& p : a.placements)
    if (p.edge) ++enrolled[p.edge->server];

  std::vector<DeviceResult> out(n);
  for (DeviceId i = 0; i < n; ++i) {
    const MobileDevice& md = sc.devices[i];
    DeviceResult& r = out[i];
    if (a[i].edge) {
      const MecServer& s = sc.servers[a[i].edge->server];
      double bandwidth = s.bandwidth_hz;
      if (sc.bandwidth_mode == BandwidthMode::equal_split)
        bandwidth /= static_cast<double>(enrolled[s.id]);
      const EdgeQuote q = quote(md, s, sc.radio, bandwidth);
      r.offloaded = true;
      r.energy = q.trans_energy_j;
      r.utility = weighted_cost(md.alpha, md.beta, q.price, q.trans_energy_j);
      r.time_s = q.trans_time_s + exec_time(md.task, a[i].edge->frequency_mips);
      r.completed = q.rate_bps > 0.0 && r.time_s <= md.task.deadline_s * (1.0 + 1e-9);
      r.bandwidth_failed = !r.completed && sc.bandwidth_mode == BandwidthMode::equal_split;
    } else {
      r.energy = local_energy(md.task, md);
      r.utility = local_utility(md);
      r.time_s = local_time(md.task, md);
      r.completed = !outcome.fallback_denied[i] && r.time_s <= md.task.deadline_s;
    }
  }
  return out;
}

MetricsRow summarize(const Scenario& sc, const MechanismOutcome& outcome,
                     std::string mechanism, std::string app) {
  const auto results = evaluate(sc, outcome);
  MetricsRow row;
  row.mechanism = std::move(mechanism);
  row.num_devices = sc.devices.size();
  row.num_servers = sc.servers.size();
  row.app = std::move(app);
  row.seed = sc.provenance.seed;
  row.rounds = outcome.rounds;
  std::size_t completed = 0, offloaded = 0;
  double energy = 0.0, utility = 0.0;
  for (const auto& r : results) {
    completed += r.completed;
    offloaded += r.offloaded;
    row.bandwidth_failed += r.bandwidth_failed;
    energy += r.energy;
    utility += r.utility;
  }
  const double n = static_cast<double>(results.size());
  row.completed_pct = 100.0 * static_cast<double>(completed) / n;
  row.offloaded_pct = 100.0 * static_cast<double>(offloaded) / n;
  row.avg_energy = energy / n;
  row.avg_utility = utility / n;
  return row;
}

MechanismOutcome solve(const Scenario& sc, MechanismKind kind, const oracle::Limits& limits) {
  if (kind != MechanismKind::oracle) return run_mechanism(sc, kind);
  const auto report = oracle::optimal_assignment(sc, limits);
  if (!report.feasible) throw GuardError("instance has no assignment meeting every deadline");
  MechanismOutcome out;
  out.assignment = report.optimal[report.canonical];
  out.fallback_denied.assign(sc.devices.size(), false);
  out.trace.resize(sc.devices.size());
  return out;
}

std::string app_label(const Scenario& sc) {
  std::set<std::string> names;
  for (const auto& d : sc.devices) names.insert(d.app);
  std::string out;
  for (const auto& name : names) {
    if (!out.empty()) out += '+';
    out += name;
  }
  return out;
}

MetricsRow run_scenario(const Scenario& sc, MechanismKind kind, const oracle::Limits& limits,
                        std::string app) {
  const MechanismOutcome outcome = solve(sc, kind, limits);
  assert_constraints(sc, outcome);
  return summarize(sc, outcome, std::string(label(kind)), std::move(app));
}

MetricsRow run_once(const Config& config, std::uint64_t seed, MechanismKind kind) {
  const Scenario sc = generate(config, seed);
  return run_scenario(sc, kind, oracle::limits_from(config), edge_assign::app_label(config));
}

std::string_view label(SweepParam p) {
  switch (p) {
    case SweepParam::users: return "users";
    case SweepParam::servers: return "servers";
    case SweepParam::app: return "app";
  }
  return "users";
}

SweepParam parse_sweep_param(std::string_view name) {
  if (name == "users") return SweepParam::users;
  if (name == "servers") return SweepParam::servers;
  if (name == "app") return SweepParam::app;
  throw ConfigError("param", "expected users, servers or app, got '" + std::string(name) + "'");
}

namespace {

std::size_t parse_count(const std::string& text) {
  std::size_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw ConfigError("values", "'" + text + "' is not a non-negative integer");
  return v;
}

}  // namespace

void validate(const SweepSpec& spec) {
  if (spec.values.empty()) throw ConfigError("values", "must not be empty");
  if (spec.reps < 1) throw ConfigError("reps", "must be at least 1");
  if (spec.mechanisms.empty()) throw ConfigError("mechanisms", "must not be empty");
  if (spec.param == SweepParam::app) {
    std::set<std::string> seen;
    for (const auto& v : spec.values)
      if (!seen.insert(v).second) throw ConfigError("values", "duplicate app '" + v + "'");
  } else {
    std::size_t prev = 0;
    for (std::size_t k = 0; k < spec.values.size(); ++k) {
      const std::size_t v = parse_count(spec.values[k]);
      if (k > 0 && v <= prev) throw ConfigError("values", "must be strictly increasing");
      prev = v;
    }
  }
  for (const auto& v : spec.values) validate(config_for(spec, v));
}

Config config_for(const SweepSpec& spec, const std::string& value) {
  Config c = spec.base;
  switch (spec.param) {
    case SweepParam::users:
      c.num_devices = parse_count(value);
      break;
    case SweepParam::servers:
      c.num_servers = parse_count(value);
      break;
    case SweepParam::app: {
      AppProfile profile;
      bool found = false;
      for (const auto& share : effective_app_mix(spec.base))
        if (share.profile.name == value) {
          profile = share.profile;
          found = true;
        }
      if (!found) profile = builtin_profile(value);
      c.app_mix = {AppShare{profile, 1.0}};
      break;
    }
  }
  return c;
}

std::vector<MetricsRow> run_sweep(const SweepSpec& spec, unsigned threads) {
  validate(spec);
  const std::size_t nv = spec.values.size();
  const std::size_t nm = spec.mechanisms.size();
  const std::size_t nr = static_cast<std::size_t>(spec.reps);

  std::vector<Config> configs;
  for (const auto& v : spec.values) configs.push_back(config_for(spec, v));

  std::vector<MetricsRow> rows(nv * nm * nr);
  std::vector<std::exception_ptr> errors(nv * nr);
  const std::size_t jobs = nv * nr;

  // One job = one generated scenario, run through every mechanism.
  auto work = [&](std::size_t job) {
    const std::size_t v = job / nr;
    const std::size_t r = job % nr;
    try {
      const Config& c = configs[v];
      const Scenario sc = generate(c, c.seed + r);
      const std::string app = edge_assign::app_label(c);
      for (std::size_t k = 0; k < nm; ++k)
        rows[(v * nm + k) * nr + r] =
            run_scenario(sc, spec.mechanisms[k], oracle::limits_from(c), app);
    } catch (...) {
      errors[job] = std::current_exception();
    }
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs)));
  if (threads == 1) {
    for (std::size_t j = 0; j < jobs; ++j) work(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t j; (j = next.fetch_add(1)) < jobs;) work(j);
      });
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

unsigned default_threads() {
  if (const char* env = std::getenv("EDGE_ASSIGN_THREADS")) {
    unsigned v = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && ptr == s.data() + s.size() && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

void append_number(std::string& out, double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

template <class Int>
void append_int(std::string& out, Int v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

}  // namespace

std::string csv_header() {
  return "mechanism,N,M,app,seed,completed_pct,avg_energy,avg_utility,offloaded_pct,rounds,"
         "bandwidth_failed\n";
}

std::string to_csv(const std::vector<MetricsRow>& rows) {
  std::string out = csv_header();
  for (const auto& r : rows) {
    out += r.mechanism;
    out += ',';
    append_int(out, r.num_devices);
    out += ',';
    append_int(out, r.num_servers);
    out += ',';
    out += r.app;
    out += ',';
    append_int(out, r.seed);
    out += ',';
    append_number(out, r.completed_pct);
    out += ',';
    append_number(out, r.avg_energy);
    out += ',';
    append_number(out, r.avg_utility);
    out += ',';
    append_number(out, r.offloaded_pct);
    out += ',';
    append_int(out, r.rounds);
    out += ',';
    append_int(out, r.bandwidth_failed);
    out += '\n';
  }
  return out;
}

void write_csv(const std::vector<MetricsRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << to_csv(rows);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

oracle::OracleReport audit(const Scenario& sc, const std::vector<MechanismKind>& kinds,
                           const oracle::Limits& limits) {
  const oracle::FeasibleSet feasible = oracle::enumerate_feasible(sc, limits);
  oracle::OracleReport report = oracle::optimal_assignment(sc, limits);
  for (MechanismKind kind : kinds) {
    MechanismOutcome outcome;
    if (kind == MechanismKind::oracle) {
      if (!report.feasible) continue;
      outcome = solve(sc, kind, limits);
    } else {
      outcome = run_mechanism(sc, kind);
    }
    assert_constraints(sc, outcome);
    const auto results = evaluate(sc, outcome);
    const bool all_completed = std::all_of(results.begin(), results.end(),
                                           [](const DeviceResult& r) { return r.completed; });
    report.audits.push_back(oracle::audit_assignment(sc, report, feasible,
                                                     std::string(label(kind)),
                                                     outcome.assignment, all_completed));
  }
  return report;
}

}  // namespace edge_assign::sim

// Acceptance criteria 1-10, one PASS/FAIL line each.
// Usage: acceptance_test [criterion...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "edge_assign/mechanisms.hpp"
#include "edge_assign/model.hpp"
#include "edge_assign/oracle.hpp"
#include "edge_assign/sim.hpp"
#include "fixtures.hpp"

#ifndef EDGE_ASSIGN_CONFIG_DIR
#error "EDGE_ASSIGN_CONFIG_DIR must point at configs/"
#endif
#ifndef EDGE_ASSIGN_GOLDEN_DIR
#error "EDGE_ASSIGN_GOLDEN_DIR must point at tests/golden/"
#endif
#ifndef EDGE_ASSIGN_CLI
#error "EDGE_ASSIGN_CLI must name the edge-assign binary"
#endif

namespace ea = edge_assign;
namespace oracle = edge_assign::oracle;
namespace sim = edge_assign::sim;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
  std::vector<std::string> info;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const std::vector<ea::MechanismKind> kMechanisms = {ea::MechanismKind::ia, ea::MechanismKind::da,
                                                    ea::MechanismKind::energy,
                                                    ea::MechanismKind::price,
                                                    ea::MechanismKind::hoda};

ea::Config load(const char* name) { return ea::load_config(fs::path(EDGE_ASSIGN_CONFIG_DIR) / name); }

// Spearman rank correlation with average ranks for ties.
std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = 0.5 * static_cast<double>(i + j) + 1.0;
    i = j + 1;
  }
  return r;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const auto rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

bool non_increasing(const std::vector<double>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::less<>()) == v.end();
}
bool non_decreasing(const std::vector<double>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::greater<>()) == v.end();
}

std::string join(const std::vector<double>& v, const char* f = "%.4g") {
  std::string out;
  for (double x : v) out += (out.empty() ? "" : " ") + fmt(f, x);
  return out;
}

// Criterion 1 ------------------------------------------------------------

Verdict formulas() {
  const auto t0 = Clock::now();
  ea::MobileDevice md;
  md.f_local_mips = 1000.0;
  md.energy_per_mi = 1e-3;
  md.tx_power_w = 0.5;
  md.alpha = 1.0;
  md.beta = 1.0;
  md.budget = 100.0;
  md.task = {6000.0, 1.6e6, 1.0};
  auto with = [&](double f_local, double eps, ea::Task t) {
    auto d = md;
    d.f_local_mips = f_local;
    d.energy_per_mi = eps;
    d.task = t;
    return d;
  };
  ea::MecServer s;
  s.unit_price = 0.01;
  auto weights = [&](double a, double b) {
    auto d = md;
    d.alpha = a;
    d.beta = b;
    return d;
  };

  struct Case {
    const char* name;
    double actual;
    double expected;
  };
  const auto rf = ea::required_frequency({6000.0, 1.6e6, 1.0}, 0.08);
  const auto rf2 = ea::required_frequency({12000.0, 12e6, 2.0}, 0.5);
  s.unit_price = 0.01;
  const double u_price = ea::utility(weights(1, 0), s, 20e6);
  const double u_energy = ea::utility(weights(0, 1), s, 20e6);
  s.unit_price = 0.005;
  const double u_both = ea::utility(weights(1, 1), s, 20e6);
  const std::vector<Case> cases = {
      {"distance", ea::distance(ea::Point{0, 0}, ea::Point{3, 4}), 5.0},
      {"gain 1 m", ea::channel_gain(1.0), 1.9952623149688795e-13},
      {"gain 2 m", ea::channel_gain(2.0), 1.9952623149688795e-16},
      {"gain 100 m", ea::channel_gain(100.0), 2.335777284927977381e-33},
      {"gain 500 m km-model", ea::channel_gain_log10_km(500.0), 1.596209851975103681e-12},
      {"rate snr 1", ea::uplink_rate(20e6, 1.0, 1.0, 1.0), 20e6},
      {"rate snr 3", ea::uplink_rate(20e6, 3.0, 1.0, 1.0), 40e6},
      {"rate 10 m", ea::uplink_rate(20e6, 0.5, ea::channel_gain(10.0), 1e-13),
       0.003114513762373820508},
      {"local time 12000/1000", ea::local_time({12000, 1.6e6, 1}, with(1000, 1e-3, md.task)), 12.0},
      {"local time 15000/2500", ea::local_time({15000, 1.6e6, 1}, with(2500, 1e-3, md.task)), 6.0},
      {"local energy 6000", ea::local_energy({6000, 1.6e6, 1}, with(1000, 1e-3, md.task)), 6.0},
      {"local energy 12000", ea::local_energy({12000, 1.6e6, 1}, with(1000, 2e-3, md.task)), 24.0},
      {"trans time", ea::trans_time({6000, 1.6e6, 1}, 20e6), 0.08},
      {"trans time 12 Mb", ea::trans_time({12000, 12e6, 1}, 40e6), 0.3},
      {"trans energy", ea::trans_energy({6000, 1.6e6, 1}, md, 20e6), 0.04},
      {"exec time", ea::exec_time({6000, 1.6e6, 1}, 12000), 0.5},
      {"exec time 15000", ea::exec_time({15000, 1.6e6, 1}, 30000), 0.5},
      {"required frequency", rf.value_or(NAN), 6521.739130434783},
      {"required frequency 12000", rf2.value_or(NAN), 8000.0},
      {"total energy local", ea::total_energy(md, ea::Placement::local(), 20e6), 6.0},
      {"total energy edge", ea::total_energy(md, ea::Placement::on(0, 7000), 20e6), 0.04},
      {"utility price only", u_price, 60.0},
      {"utility energy only", u_energy, 0.04},
      {"utility weighted", u_both, 30.04},
      {"local utility", ea::local_utility(weights(7, 2)), 12.0},
  };
  Verdict v;
  int bad = 0;
  double worst = 0.0;
  for (const auto& c : cases) {
    const double rel = std::abs(c.actual - c.expected) / std::abs(c.expected);
    worst = std::max(worst, std::isnan(rel) ? INFINITY : rel);
    if (!(rel <= 1e-9)) {
      ++bad;
      v.info.push_back(fmt("%s: got %.17g want %.17g", c.name, c.actual, c.expected));
    }
  }
  if (ea::required_frequency({6000.0, 1.6e6, 0.05}, 0.08)) {
    ++bad;
    v.info.push_back("required frequency: expected infeasible when upload exceeds the deadline");
  }
  const double t = seconds_since(t0);
  v.pass = bad == 0 && t < 1.0;
  v.detail = fmt("%zu cases, %d mismatches, worst rel err %.2e, %.3f s", cases.size() + 1, bad, worst, t);
  return v;
}

// Criterion 2 and 9 ------------------------------------------------------

std::vector<ea::Scenario> random_scenarios() {
  std::vector<ea::Scenario> out;
  out.reserve(10000);
  for (std::uint64_t k = 0; k < 10000; ++k) {
    const auto c = ea::testing::random_config(k);
    out.push_back(ea::generate(c, c.seed));
  }
  return out;
}

Verdict constraints(const std::vector<ea::Scenario>& scenarios) {
  const auto t0 = Clock::now();
  Verdict v;
  std::size_t outcomes = 0, violations = 0;
  std::size_t max_n = 0, max_m = 0;
  for (std::size_t k = 0; k < scenarios.size(); ++k) {
    const auto& sc = scenarios[k];
    max_n = std::max(max_n, sc.devices.size());
    max_m = std::max(max_m, sc.servers.size());
    for (auto kind : kMechanisms) {
      const auto o = ea::run_mechanism(sc, kind);
      ++outcomes;
      const auto errs = ea::constraint_violations(sc, o);
      violations += errs.size();
      if (!errs.empty() && v.info.size() < 5)
        v.info.push_back(fmt("scenario %zu %s: %s", k, std::string(ea::label(kind)).c_str(),
                             errs.front().c_str()));
    }
  }
  const double t = seconds_since(t0);
  v.pass = violations == 0 && t < 60.0;
  v.detail = fmt("%zu scenarios (N<=%zu, M<=%zu), %zu outcomes, %zu violations, %.1f s",
                 scenarios.size(), max_n, max_m, outcomes, violations, t);
  return v;
}

Verdict reference_ia(const std::vector<ea::Scenario>& scenarios) {
  Verdict v;
  std::size_t agree = 0;
  for (std::size_t k = 0; k < scenarios.size(); ++k) {
    const auto& sc = scenarios[k];
    if (oracle::reference_immediate_acceptance(sc) == ea::immediate_acceptance(sc).assignment)
      ++agree;
    else if (v.info.size() < 5)
      v.info.push_back(fmt("scenario %zu disagrees", k));
  }
  v.pass = agree == scenarios.size();
  v.detail = fmt("%zu/%zu instances agree", agree, scenarios.size());
  return v;
}

// Criteria 3, 4 and 5 -----------------------------------------------------

struct Enumerable {
  ea::Scenario scenario;
  oracle::FeasibleSet feasible;
  oracle::OracleReport report;
};

std::vector<Enumerable> enumerable_instances() {
  std::vector<Enumerable> out;
  out.reserve(1000);
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const auto c = ea::testing::enumerable_config(k);
    Enumerable e;
    e.scenario = ea::generate(c, c.seed);
    e.feasible = oracle::enumerate_feasible(e.scenario);
    e.report = oracle::optimal_assignment(e.scenario);
    out.push_back(std::move(e));
  }
  return out;
}

std::string instance_shape(const std::vector<Enumerable>& inst) {
  std::size_t n = 0, m = 0;
  double min_w = INFINITY;
  for (const auto& e : inst) {
    n = std::max(n, e.scenario.devices.size());
    m = std::max(m, e.scenario.servers.size());
    for (const auto& d : e.scenario.devices) min_w = std::min({min_w, d.alpha, d.beta});
  }
  return fmt("N<=%zu, M<=%zu, min weight %.3g", n, m, min_w);
}

Verdict pareto(const std::vector<Enumerable>& inst) {
  Verdict v;
  std::size_t dominated = 0, by_enrollment = 0;
  for (std::size_t k = 0; k < inst.size(); ++k) {
    const auto& e = inst[k];
    const auto ia = ea::immediate_acceptance(e.scenario);
    by_enrollment += oracle::enrollment_dominated(ia.assignment, e.scenario, e.feasible);
    if (oracle::is_pareto_dominated(ia.assignment, e.scenario, e.feasible,
                                    oracle::PreferenceModel::submitted)
            .dominated) {
      ++dominated;
      if (v.info.size() < 5) v.info.push_back(fmt("instance %zu dominated", k));
    }
  }
  v.pass = dominated == 0;
  v.info.push_back(fmt("server-count view: another feasible assignment enrolls more on %zu/%zu instances",
                       by_enrollment, inst.size()));
  v.detail = fmt("%zu instances (%s), %zu dominated", inst.size(), instance_shape(inst).c_str(),
                 dominated);
  return v;
}

Verdict stability(const std::vector<Enumerable>& inst) {
  Verdict v;
  std::size_t unstable = 0, ia_unstable = 0;
  for (std::size_t k = 0; k < inst.size(); ++k) {
    const auto& sc = inst[k].scenario;
    if (!oracle::blocking_pairs(ea::deferred_acceptance(sc).assignment, sc).empty()) {
      ++unstable;
      if (v.info.size() < 5) v.info.push_back(fmt("instance %zu has a DA blocking pair", k));
    }
    ia_unstable += !oracle::blocking_pairs(ea::immediate_acceptance(sc).assignment, sc).empty();
  }
  const auto contested = ea::testing::contested_instance();
  const auto ia_pairs = oracle::blocking_pairs(ea::immediate_acceptance(contested).assignment, contested);
  v.pass = unstable == 0 && !ia_pairs.empty();
  v.detail = fmt("DA blocking on %zu/%zu instances; constructed instance has %zu IA blocking pair(s)",
                 unstable, inst.size(), ia_pairs.size());
  v.info.push_back(fmt("IA has blocking pairs on %zu/%zu generated instances", ia_unstable, inst.size()));
  return v;
}

Verdict dominance(const std::vector<Enumerable>& inst) {
  Verdict v;
  std::size_t feasible = 0, checks = 0, negative = 0, exceptions = 0, below_raw = 0, infinite = 0;
  std::size_t ia_finite = 0, ia_infinite = 0;
  double ia_sum = 0.0, ia_max = 0.0;
  for (const auto& e : inst) {
    if (!e.report.feasible) continue;
    ++feasible;
    for (auto kind : kMechanisms) {
      try {
        const auto o = ea::run_mechanism(e.scenario, kind);
        const bool inside = oracle::satisfies_constraints(e.scenario, o.assignment);
        const auto a = oracle::audit_assignment(e.scenario, e.report, e.feasible,
                                                std::string(ea::label(kind)), o.assignment, inside);
        ++checks;
        negative += !(a.gap >= 0.0);
        infinite += std::isinf(a.gap);
        below_raw += a.objective < e.report.optimal_objective;
        if (kind == ea::MechanismKind::ia) {
          if (std::isinf(a.gap)) {
            ++ia_infinite;
          } else {
            ++ia_finite;
            ia_sum += a.gap;
            ia_max = std::max(ia_max, a.gap);
          }
        }
      } catch (const std::exception& ex) {
        ++exceptions;
        if (v.info.size() < 5) v.info.push_back(ex.what());
      }
    }
  }
  const double ia_mean = ia_finite ? ia_sum / static_cast<double>(ia_finite) : 0.0;
  v.info.push_back(fmt("%zu outcomes leave a deadline unmet (gap +inf); their raw sum sits below the "
                       "optimum in %zu cases",
                       infinite, below_raw));

  nlohmann::json stats = {{"instances", inst.size()}, {"feasible_instances", feasible},
                          {"ia_finite_gaps", ia_finite}, {"ia_infinite_gaps", ia_infinite},
                          {"ia_mean_finite_gap", ia_mean}, {"ia_max_finite_gap", ia_max}};
  const auto golden_path = fs::path(EDGE_ASSIGN_GOLDEN_DIR) / "ia_gap_stats.json";
  bool golden_ok = false;
  std::ifstream in(golden_path);
  if (in) {
    const auto golden = nlohmann::json::parse(in);
    golden_ok = true;
    for (const auto& [key, val] : stats.items()) {
      if (!golden.contains(key)) {
        golden_ok = false;
      } else if (val.is_number_float()) {
        const double g = golden[key].get<double>(), x = val.get<double>();
        golden_ok &= std::abs(g - x) <= 1e-9 * std::max(1.0, std::abs(g));
      } else {
        golden_ok &= golden[key] == val;
      }
    }
    if (!golden_ok) v.info.push_back("IA gap statistics differ from " + golden_path.string());
  } else {
    v.info.push_back("missing golden " + golden_path.string());
  }
  v.info.push_back("IA gap statistics " + stats.dump());
  v.pass = negative == 0 && exceptions == 0 && golden_ok;
  v.detail = fmt("%zu feasible instances, %zu audits, %zu negative gaps, %zu exceptions, golden %s",
                 feasible, checks, negative, exceptions, golden_ok ? "match" : "MISMATCH");
  return v;
}

// Criteria 6, 7 and 8 -----------------------------------------------------

using Rows = std::vector<sim::MetricsRow>;

// rows grouped by (swept value, mechanism), one vector per replication.
std::map<std::pair<std::size_t, std::string>, Rows> group(const Rows& rows, bool by_servers) {
  std::map<std::pair<std::size_t, std::string>, Rows> g;
  for (const auto& r : rows) g[{by_servers ? r.num_servers : r.num_devices, r.mechanism}].push_back(r);
  return g;
}

double mean_of(const Rows& rows, double sim::MetricsRow::*field) {
  double s = 0.0;
  for (const auto& r : rows) s += r.*field;
  return s / static_cast<double>(rows.size());
}

Rows users_sweep() {
  sim::SweepSpec spec;
  spec.base = load("paper_baseline.json");
  spec.param = sim::SweepParam::users;
  for (int n = 10; n <= 100; n += 10) spec.values.push_back(std::to_string(n));
  spec.reps = 30;
  spec.mechanisms = {ea::MechanismKind::ia, ea::MechanismKind::energy, ea::MechanismKind::price,
                     ea::MechanismKind::hoda};
  return sim::run_sweep(spec, sim::default_threads());
}

Verdict completion_trend(const Rows& rows) {
  const auto g = group(rows, false);
  std::vector<double> ns, ia, price;
  for (int n = 10; n <= 100; n += 10) {
    ns.push_back(n);
    ia.push_back(mean_of(g.at({n, "ia"}), &sim::MetricsRow::completed_pct));
    price.push_back(mean_of(g.at({n, "price"}), &sim::MetricsRow::completed_pct));
  }
  const double rho = spearman(ns, ia);
  std::size_t ia_ge = 0;
  for (std::size_t k = 0; k < ia.size(); ++k) ia_ge += ia[k] >= price[k];
  Verdict v;
  v.pass = rho <= -0.8 && ia_ge == ia.size();
  v.detail = fmt("IA mean completed_pct rho=%.3f; IA >= price at %zu/%zu N", rho, ia_ge, ia.size());
  v.info.push_back("IA completed_pct: " + join(ia));
  v.info.push_back("price completed_pct: " + join(price));
  v.info.push_back(std::string("IA completed_pct strictly non-increasing: ") +
                   (non_increasing(ia) ? "yes" : "no"));
  return v;
}

Verdict energy_utility_trend(const Rows& rows) {
  const auto g = group(rows, false);
  std::vector<double> ns, energy, util;
  for (int n = 10; n <= 100; n += 10) {
    ns.push_back(n);
    energy.push_back(mean_of(g.at({n, "ia"}), &sim::MetricsRow::avg_energy));
    util.push_back(mean_of(g.at({n, "ia"}), &sim::MetricsRow::avg_utility));
  }
  const double rho_e = spearman(ns, energy), rho_u = spearman(ns, util);
  std::vector<double> fractions;
  for (std::size_t n : {50u, 100u}) {
    const auto& a = g.at({n, "ia"});
    const auto& b = g.at({n, "price"});
    std::size_t le = 0;
    for (std::size_t r = 0; r < a.size(); ++r) le += a[r].avg_utility <= b[r].avg_utility;
    fractions.push_back(static_cast<double>(le) / static_cast<double>(a.size()));
  }
  const bool trends = rho_e >= 0.8 && rho_u >= 0.8;
  const bool beats = std::all_of(fractions.begin(), fractions.end(), [](double f) { return f >= 0.8; });
  Verdict v;
  v.pass = trends && beats;
  v.detail = fmt("IA energy rho=%.3f utility rho=%.3f (%s); IA utility <= price in %.0f%% (N=50) and "
                 "%.0f%% (N=100) of replications (%s)",
                 rho_e, rho_u, trends ? "ok" : "FAIL", 100 * fractions[0], 100 * fractions[1],
                 beats ? "ok" : "FAIL, need 80%");
  v.info.push_back("IA avg_energy: " + join(energy));
  v.info.push_back("IA avg_utility: " + join(util));
  v.info.push_back(std::string("IA avg_energy strictly non-decreasing: ") +
                   (non_decreasing(energy) ? "yes" : "no") +
                   "; avg_utility: " + (non_decreasing(util) ? "yes" : "no"));
  return v;
}

Verdict server_trend() {
  sim::SweepSpec spec;
  spec.base = load("paper_baseline_generous.json");
  spec.base.num_devices = 100;
  spec.param = sim::SweepParam::servers;
  spec.values = {"1", "2", "3", "4", "5"};
  spec.reps = 30;
  spec.mechanisms = {ea::MechanismKind::ia};
  const auto g = group(sim::run_sweep(spec, sim::default_threads()), true);
  std::vector<double> energy, offloaded;
  for (std::size_t m = 1; m <= 5; ++m) {
    energy.push_back(mean_of(g.at({m, "ia"}), &sim::MetricsRow::avg_energy));
    offloaded.push_back(mean_of(g.at({m, "ia"}), &sim::MetricsRow::offloaded_pct));
  }
  Verdict v;
  v.pass = offloaded.back() == 100.0 && non_increasing(energy);
  v.detail = fmt("N=100 generous: IA offloaded_pct at M=5 is %.2f; avg_energy %s in M",
                 offloaded.back(), non_increasing(energy) ? "non-increasing" : "NOT non-increasing");
  v.info.push_back("IA offloaded_pct: " + join(offloaded));
  v.info.push_back("IA avg_energy: " + join(energy));
  return v;
}

// Criterion 10 -------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict determinism() {
  Verdict v;
  const auto dir = fs::temp_directory_path() / fmt("edge_assign_acceptance_%d", static_cast<int>(::getpid()));
  fs::create_directories(dir);
  const std::string cli = EDGE_ASSIGN_CLI;
  const std::string cfg = (fs::path(EDGE_ASSIGN_CONFIG_DIR) / "paper_baseline.json").string();
  const std::string sweep_args = " sweep --config " + cfg +
                                 " --param users --values 10,40,70,100 --reps 8"
                                 " --mechanisms ia,da,energy,price,hoda --out ";
  struct Job {
    std::string env;
    std::string args;
    std::string file;
  };
  const std::vector<Job> jobs = {
      {"", " run --config " + cfg + " --seed 7 --mechanism ia --out ", "run_a.csv"},
      {"", " run --config " + cfg + " --seed 7 --mechanism ia --out ", "run_b.csv"},
      {"EDGE_ASSIGN_THREADS=64 ", " --bandwidth-mode equal_split run --config " + cfg +
                                      " --seed 7 --mechanism da --out ",
       "run_c.csv"},
      {"EDGE_ASSIGN_THREADS=1 ", " --bandwidth-mode equal_split run --config " + cfg +
                                     " --seed 7 --mechanism da --out ",
       "run_d.csv"},
      {"EDGE_ASSIGN_THREADS=1 ", sweep_args, "sweep_1.csv"},
      {"", sweep_args, "sweep_default.csv"},
      {"EDGE_ASSIGN_THREADS=64 ", sweep_args, "sweep_64.csv"},
      {"EDGE_ASSIGN_THREADS=64 ", sweep_args, "sweep_64b.csv"},
  };
  std::map<std::string, std::string> out;
  for (const auto& j : jobs) {
    const auto path = dir / j.file;
    const std::string cmd = j.env + cli + j.args + path.string();
    if (std::system(cmd.c_str()) != 0) {
      v.pass = false;
      v.info.push_back("command failed: " + cmd);
    }
    out[j.file] = slurp(path);
  }
  fs::remove_all(dir);
  const auto same = [&](const char* a, const char* b) {
    const bool eq = !out[a].empty() && out[a] == out[b];
    if (!eq) v.info.push_back(fmt("%s differs from %s", a, b));
    return eq;
  };
  int pairs = 0, equal = 0;
  for (auto [a, b] : {std::pair{"run_a.csv", "run_b.csv"}, {"run_c.csv", "run_d.csv"},
                      {"sweep_1.csv", "sweep_default.csv"}, {"sweep_1.csv", "sweep_64.csv"},
                      {"sweep_64.csv", "sweep_64b.csv"}}) {
    ++pairs;
    equal += same(a, b);
  }
  v.pass = v.pass && equal == pairs;
  v.detail = fmt("%d/%d repeated CLI invocations byte-identical (threads 1, default, 64)", equal, pairs);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int k = 1; k < argc; ++k) wanted.insert(std::atoi(argv[k]));
  const auto want = [&](int c) { return wanted.empty() || wanted.count(c); };
  const auto t0 = Clock::now();

  std::vector<ea::Scenario> randoms;
  if (want(2) || want(9)) randoms = random_scenarios();
  std::vector<Enumerable> enumerables;
  if (want(3) || want(4) || want(5)) enumerables = enumerable_instances();
  Rows users;
  if (want(6) || want(7)) users = users_sweep();

  const std::vector<std::pair<int, std::pair<const char*, std::function<Verdict()>>>> criteria = {
      {1, {"formula suite", formulas}},
      {2, {"constraint suite", [&] { return constraints(randoms); }}},
      {3, {"IA Pareto efficiency", [&] { return pareto(enumerables); }}},
      {4, {"DA stability", [&] { return stability(enumerables); }}},
      {5, {"oracle dominance", [&] { return dominance(enumerables); }}},
      {6, {"completion trend in N", [&] { return completion_trend(users); }}},
      {7, {"energy and utility trend in N", [&] { return energy_utility_trend(users); }}},
      {8, {"offloading and energy trend in M", server_trend}},
      {9, {"independent IA agreement", [&] { return reference_ia(randoms); }}},
      {10, {"determinism", determinism}},
  };
  int failed = 0;
  for (const auto& [id, c] : criteria) {
    if (!want(id)) continue;
    Verdict v;
    try {
      v = c.second();
    } catch (const std::exception& ex) {
      v.pass = false;
      v.detail = std::string("exception: ") + ex.what();
    }
    failed += !v.pass;
    std::printf("%s criterion %d (%s): %s\n", v.pass ? "PASS" : "FAIL", id, c.first, v.detail.c_str());
    for (const auto& line : v.info) std::printf("     %s\n", line.c_str());
    std::fflush(stdout);
  }
  std::printf("%d criteria failed, %.1f s total\n", failed, seconds_since(t0));
  return failed == 0 ? 0 : 1;
}

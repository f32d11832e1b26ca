#pragma once

// Exhaustive reference solvers and auditors for desk-sized instances.
//
// Nothing here calls into the mechanisms; preference lists, priorities and
// the reference Immediate Acceptance run are rebuilt from the model
// equations so the two sides can check each other.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edge_assign/model.hpp"
#include "edge_assign/scenario.hpp"

namespace edge_assign::oracle {

struct Limits {
  std::size_t max_devices = 6;
  std::size_t max_servers = 3;
};

Limits limits_from(const Config& config);

// Throws GuardError when the instance exceeds the limits.
void check_guard(const Scenario& scenario, const Limits& limits);

// Every assignment meeting the deadline, seat, positive-allocation,
// integrality, compute and single-server constraints, with each edge
// allocation fixed to the exact-deadline demand. Members are in
// lexicographic order of their placement codes (0 = local, j + 1 = server j,
// device 0 most significant).
struct FeasibleSet {
  std::vector<Assignment> members;

  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }
};

FeasibleSet enumerate_feasible(const Scenario& scenario, const Limits& limits = {});

// Sum of per-device utilities: alpha * price + beta * upload energy on an
// edge server, beta * local energy otherwise.
double objective(const Scenario& scenario, const Assignment& assignment);

// Whether every device meets its deadline with at most one server each.
bool satisfies_constraints(const Scenario& scenario, const Assignment& assignment);

enum class PreferenceModel {
  // The lists devices submit: acceptable servers by weighted score, then
  // local execution; unacceptable servers rank below local execution.
  submitted,
  // Raw utility of every placement, local execution included.
  utility,
};

struct DominanceVerdict {
  bool dominated = false;
  std::optional<Assignment> witness;
};

// Searches the feasible set for an assignment that no device likes less and
// at least one device likes strictly more.
DominanceVerdict is_pareto_dominated(const Assignment& assignment, const Scenario& scenario,
                                     PreferenceModel model, const Limits& limits = {});
DominanceVerdict is_pareto_dominated(const Assignment& assignment, const Scenario& scenario,
                                     const FeasibleSet& feasible, PreferenceModel model);

struct BlockingPair {
  DeviceId device = 0;
  ServerId server = 0;

  bool operator==(const BlockingPair&) const = default;
};

// Whether some feasible assignment enrolls at least as many devices on
// every server and strictly more on at least one.
bool enrollment_dominated(const Assignment& assignment, const Scenario& scenario,
                          const FeasibleSet& feasible);

// Pairs (i, j) where i ranks j above its placement in its submitted list
// and j either has a free seat with room for f_ij, or holds a
// lower-priority device whose removal leaves room for f_ij.
std::vector<BlockingPair> blocking_pairs(const Assignment& assignment, const Scenario& scenario);

// Independent Immediate Acceptance: in round k each server walks its
// priority order and admits, one at a time, the unassigned devices whose
// k-th choice it is, while a seat and enough compute remain. Devices
// without a server after the last round run locally.
Assignment reference_immediate_acceptance(const Scenario& scenario);

struct MechanismAudit {
  std::string mechanism;
  double objective = 0.0;
  bool outcome_feasible = false;
  // objective - optimum; +inf when the outcome leaves any deadline unmet.
  double gap = 0.0;
  bool dominated_submitted = false;
  bool dominated_utility = false;
  bool dominated_enrollment = false;
  std::vector<BlockingPair> blocking;
};

struct OracleReport {
  std::size_t feasible_count = 0;
  bool feasible = false;
  double optimal_objective = 0.0;
  std::vector<Assignment> optimal;  // all minimizers, lexicographic order
  std::size_t canonical = 0;        // index of the lexicographically least
  std::vector<MechanismAudit> audits;
};

OracleReport optimal_assignment(const Scenario& scenario, const Limits& limits = {});

// Fills in gap, dominance and blocking pairs for one mechanism outcome.
MechanismAudit audit_assignment(const Scenario& scenario, const OracleReport& report,
                                const FeasibleSet& feasible, std::string mechanism,
                                const Assignment& assignment, bool outcome_completed);

std::string report_to_json(const OracleReport& report);

}  // namespace edge_assign::oracle

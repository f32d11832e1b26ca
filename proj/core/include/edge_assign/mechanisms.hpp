#pragma once

// Preference and priority construction, the Immediate Acceptance
// mechanism, a sized-seat Deferred Acceptance comparator, and the three
// evaluation baselines.

#include <span>
#include <string>
#include <vector>

#include "edge_assign/model.hpp"
#include "edge_assign/scenario.hpp"

namespace edge_assign {

enum class ScoreRule {
  weighted,     // alpha * price + beta * upload energy
  energy_only,  // upload energy
  price_only,   // price
};

struct PreferenceEntry {
  ServerId server = 0;
  double score = 0.0;
  double frequency_mips = 0.0;  // demand f_ij from the deadline
  double price = 0.0;

  bool operator==(const PreferenceEntry&) const = default;
};

// Acceptable servers, most preferred first. A server is acceptable when the
// deadline can be met at some allocation, that allocation fits in f_max, and
// the price is within budget. Ties break by server id.
struct PreferenceList {
  DeviceId device = 0;
  std::vector<PreferenceEntry> entries;

  const PreferenceEntry* find(ServerId j) const;
  // Position of j in the list, or entries.size() when j is not listed.
  std::size_t rank(ServerId j) const;
};

// All devices, nearest first; ties break by device id.
struct PriorityList {
  ServerId server = 0;
  std::vector<DeviceId> devices;
};

enum class Verdict { accepted, rejected, displaced };

struct TraceEvent {
  int round = 0;
  ServerId server = 0;
  Verdict verdict = Verdict::rejected;

  bool operator==(const TraceEvent&) const = default;
};

struct MechanismOutcome {
  Assignment assignment;
  // Set for devices that exhausted their list under a mechanism with no
  // local fallback; they still run locally but count as failed.
  std::vector<bool> fallback_denied;
  int rounds = 0;
  std::vector<std::vector<TraceEvent>> trace;

  bool operator==(const MechanismOutcome&) const = default;
};

PreferenceList build_preferences(const MobileDevice& md,
                                 std::span<const MecServer> servers,
                                 const RadioEnvironment& env,
                                 ScoreRule rule = ScoreRule::weighted);
std::vector<PreferenceList> build_preferences(const Scenario& scenario,
                                              ScoreRule rule = ScoreRule::weighted);

PriorityList build_priorities(const MecServer& server,
                              std::span<const MobileDevice> devices);
std::vector<PriorityList> build_priorities(const Scenario& scenario);

// Position of each device in a priority list (0 = highest priority).
std::vector<std::size_t> priority_ranks(const PriorityList& list, std::size_t num_devices);

MechanismOutcome immediate_acceptance(const Scenario& scenario);
MechanismOutcome deferred_acceptance(const Scenario& scenario);
MechanismOutcome energy_baseline(const Scenario& scenario);
MechanismOutcome price_baseline(const Scenario& scenario);
MechanismOutcome hoda_baseline(const Scenario& scenario);

// The shared round engine: IA over arbitrary lists, with or without a local
// fallback for devices that run out of choices.
MechanismOutcome run_immediate_acceptance(const Scenario& scenario,
                                          std::span<const PreferenceList> prefs,
                                          bool local_fallback);

// Dispatch for the five preference-based mechanisms (not the oracle).
MechanismOutcome run_mechanism(const Scenario& scenario, MechanismKind kind);

// Human-readable descriptions of every broken constraint: capacity and
// compute limits per server, positive allocations, one placement per
// device, and the deadline for devices the outcome counts as completed.
std::vector<std::string> constraint_violations(const Scenario& scenario,
                                               const MechanismOutcome& outcome);
// Throws InvariantError listing the violations, if any.
void assert_constraints(const Scenario& scenario, const MechanismOutcome& outcome);

// Deadline met for device i under fixed per-device bandwidth.
bool meets_deadline(const Scenario& scenario, const Assignment& assignment, DeviceId i);

std::string outcome_to_json(const MechanismOutcome& outcome);

}  // namespace edge_assign

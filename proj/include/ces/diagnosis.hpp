#pragma once

#include <set>
#include <string>
#include <vector>

#include "ces/behavior.hpp"
#include "ces/counterfactual.hpp"

namespace ces {

// A trace step at which the run could have continued differently: one or
// more events conflicting with the chosen one were enabled at the prefix.
struct ChoicePoint {
  Configuration prefix;
  EventId chosen;
  std::vector<EventId> alternatives;
};

// "Had <alternative> occurred instead, the error would not have": evaluated
// with both engines over the same model.
struct AvoidanceCounterfactual {
  EventId alternative;
  EventId chosen;
  TraceVerdict trace_verdict; // occurs(alternative) => !occurs(error)
  Verdict belief_verdict;     // occ(alternative) => !occ(error)
};

struct DiagnosisReport {
  EventId error_event;
  std::set<EventId> history;
  std::vector<ChoicePoint> choice_points;
  std::vector<AvoidanceCounterfactual> avoidance_counterfactuals;
  BeliefBase belief_base; // closed-world trace facts plus model laws
};

// Locates the unique trace event labelled `error_label`, reconstructs its
// causal history and the choice points of the run, and evaluates an
// avoidance counterfactual for every conflicting alternative to an
// in-history choice.
DiagnosisReport diagnose(const EventStructure &es, const Trace &trace,
                         const std::string &error_label, const Limits &limits = {});

} // namespace ces

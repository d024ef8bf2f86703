#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "ces/event_structure.hpp"

namespace ces {

// Conflict-free, downward-closed set of events: a reachable state of
// occurrence of the structure.
using Configuration = std::set<EventId>;

// One observed run: a linear order of some configuration. Every prefix of a
// trace is itself a configuration.
using Trace = std::vector<EventId>;

struct Transition {
  Configuration from;
  EventId event;
  std::string label;
  Configuration to;

  friend bool operator==(const Transition &a, const Transition &b) {
    return a.from == b.from && a.event == b.event && a.label == b.label && a.to == b.to;
  }
  friend bool operator<(const Transition &a, const Transition &b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.event != b.event) return a.event < b.event;
    return a.to < b.to;
  }
};

// Interleaving semantics: configurations as states, single-event firings as
// labelled transitions. Concurrency shows up as diamonds, never as
// multi-event steps.
struct TransitionSystem {
  std::vector<Configuration> states; // sorted
  Configuration initial;             // always empty
  std::vector<Transition> transitions; // sorted
};

bool is_configuration(const EventStructure &es, const Configuration &events);

// Events that can fire next: not yet in the configuration, all proper causes
// inside it, no conflict with any member.
std::set<EventId> enabled_events(const EventStructure &es, const Configuration &config);

std::vector<Configuration> all_configurations(const EventStructure &es,
                                              const Limits &limits = {});

// Configurations with no enabled event; sorted.
std::vector<Configuration> maximal_configurations(const EventStructure &es,
                                                  const Limits &limits = {});

// All linear extensions of the causal order restricted to the configuration,
// in lexicographic order.
std::vector<Trace> linearizations(const EventStructure &es, const Configuration &config,
                                  const Limits &limits = {});

// True iff every step is enabled at the preceding prefix.
bool conforms(const EventStructure &es, const Trace &trace);

TransitionSystem interleaving_lts(const EventStructure &es, const Limits &limits = {});

// Union of the linearizations of all maximal configurations, sorted
// lexicographically. These are exactly the runs the model cannot extend.
std::vector<Trace> maximal_traces(const EventStructure &es, const Limits &limits = {});

// Repeatedly fires a uniformly drawn enabled event until none remain or
// max_steps is reached. Same seed, same trace.
Trace simulate(const EventStructure &es, std::uint64_t seed, std::size_t max_steps,
               const Limits &limits = {});

} // namespace ces

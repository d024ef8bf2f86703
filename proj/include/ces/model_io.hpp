#pragma once

#include <string>
#include <vector>

#include "ces/behavior.hpp"
#include "ces/beliefs.hpp"
#include "ces/counterfactual.hpp"
#include "ces/event_structure.hpp"

namespace ces {

// A parsed model file, kept close to the text form. `build` hands the
// collected declarations to EventStructure::build.
struct ModelDocument {
  std::string name;
  std::vector<LabelledEvent> events;
  std::vector<IdPair> cause_pairs;
  std::vector<IdPair> conflict_pairs;
  std::vector<std::string> atoms;

  EventStructure build(const Limits &limits = {}) const;
};

// Line-oriented grammar: `#` starts a comment (outside quotes); the first
// line is `es NAME`; then `event ID "label"`, `cause ID ID` (cause first),
// `conflict ID ID` and `atom NAME` in any order. Errors carry line numbers.
ModelDocument parse_model(const std::string &text);

// Deterministic text form: header, then events, atoms, causes and conflicts,
// each section sorted. Reparsing yields an equivalent document.
std::string serialize_model(const ModelDocument &doc);

// `trace` keyword followed by whitespace-separated event ids, possibly over
// several lines. Conformance is not checked here.
Trace parse_trace(const std::string &text, const EventStructure &es);

// `belief <fact|law|existence|meaning> <formula>` per line; origin user.
BeliefBase parse_beliefs(const std::string &text, const EventStructure &es);

enum class Engine { belief, trace };

// A parsed query file: `counterfactual` header, then `antecedent <text>`,
// `consequent <text>` and `engine belief|trace` in any order. The two sides
// are validated against the engine's grammar at parse time but stored as
// text, since the belief and trace engines take different types.
struct QueryDocument {
  Engine engine = Engine::belief;
  std::string antecedent_text;
  std::string consequent_text;

  CounterfactualQuery belief_query(const EventStructure &es) const;
  TracePredicate trace_antecedent(const EventStructure &es) const;
  TracePredicate trace_consequent(const EventStructure &es) const;
};

QueryDocument parse_query(const std::string &text, const EventStructure &es);

} // namespace ces

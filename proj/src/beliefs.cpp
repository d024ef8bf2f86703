#include "ces/beliefs.hpp"

#include <set>
#include <utility>

#include "ces/error.hpp"

namespace ces {

const char *level_name(Level level) {
  switch (level) {
  case Level::meaning:
    return "meaning";
  case Level::existence:
    return "existence";
  case Level::lawfulness:
    return "law";
  case Level::fact:
    return "fact";
  }
  return "?";
}

const char *origin_name(Origin origin) {
  switch (origin) {
  case Origin::model_law:
    return "model-law";
  case Origin::trace_fact:
    return "trace-fact";
  case Origin::user:
    return "user";
  }
  return "?";
}

bool BeliefBase::add(Belief belief) {
  for (const Belief &existing : items_) {
    if (existing.level == belief.level && existing.formula == belief.formula)
      return false;
  }
  items_.push_back(std::move(belief));
  return true;
}

void BeliefBase::merge(const BeliefBase &other) {
  for (const Belief &belief : other.items_)
    add(belief);
}

std::vector<Formula> BeliefBase::formulas() const {
  std::vector<Formula> out;
  out.reserve(items_.size());
  for (const Belief &belief : items_)
    out.push_back(belief.formula);
  return out;
}

BeliefBase laws_from_model(const EventStructure &es, const Limits &limits) {
  if (es.size() > limits.max_atoms)
    throw Error(ErrorCode::atom_limit, "model has " + std::to_string(es.size()) +
                                           " events; belief extraction supports at most " +
                                           std::to_string(limits.max_atoms));
  BeliefBase base;
  for (const IdPair &pair : es.immediate_causes()) {
    Formula law = Formula::implication(Formula::occurrence(pair.second),
                                       Formula::occurrence(pair.first));
    base.add({std::move(law), Level::lawfulness, Origin::model_law});
  }
  for (const IdPair &pair : es.immediate_conflicts()) {
    Formula law = Formula::negation(Formula::conjunction(Formula::occurrence(pair.first),
                                                         Formula::occurrence(pair.second)));
    base.add({std::move(law), Level::lawfulness, Origin::model_law});
  }
  return base;
}

BeliefBase facts_from_trace(const EventStructure &es, const Trace &trace, WorldMode mode,
                            const Limits &limits) {
  if (es.size() > limits.max_atoms)
    throw Error(ErrorCode::atom_limit, "model has " + std::to_string(es.size()) +
                                           " events; belief extraction supports at most " +
                                           std::to_string(limits.max_atoms));
  if (!conforms(es, trace))
    throw Error(ErrorCode::non_conformant_trace,
                "trace does not conform to the model; cannot extract facts");
  BeliefBase base;
  std::set<EventId> seen;
  for (const EventId &id : trace) {
    base.add({Formula::occurrence(id), Level::fact, Origin::trace_fact});
    seen.insert(id);
  }
  if (mode == WorldMode::closed) {
    for (const LabelledEvent &event : es.events()) {
      if (!seen.count(event.id))
        base.add({Formula::negation(Formula::occurrence(event.id)), Level::fact,
                  Origin::trace_fact});
    }
  }
  return base;
}

} // namespace ces

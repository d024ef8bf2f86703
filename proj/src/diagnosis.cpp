#include "ces/diagnosis.hpp"

#include "ces/error.hpp"

namespace ces {

DiagnosisReport diagnose(const EventStructure &es, const Trace &trace,
                         const std::string &error_label, const Limits &limits) {
  if (!conforms(es, trace))
    throw Error(ErrorCode::non_conformant_trace, "trace does not conform to the model");

  DiagnosisReport report;
  for (const EventId &id : trace) {
    if (es.label_of(id) == error_label) {
      if (!report.error_event.empty())
        throw Error(ErrorCode::ambiguous_error_label, "label \"" + error_label +
                                                          "\" matches both '" +
                                                          report.error_event + "' and '" + id +
                                                          "' in the trace");
      report.error_event = id;
    }
  }
  if (report.error_event.empty())
    throw Error(ErrorCode::no_error_event,
                "no event labelled \"" + error_label + "\" occurs in the trace");

  report.history = es.causal_history(report.error_event);

  Configuration prefix;
  for (const EventId &chosen : trace) {
    ChoicePoint point{prefix, chosen, {}};
    for (const EventId &candidate : enabled_events(es, prefix)) {
      if (candidate != chosen && es.relation(candidate, chosen) == Relation::conflict)
        point.alternatives.push_back(candidate);
    }
    if (!point.alternatives.empty())
      report.choice_points.push_back(std::move(point));
    prefix.insert(chosen);
  }

  report.belief_base = facts_from_trace(es, trace, WorldMode::closed, limits);
  report.belief_base.merge(laws_from_model(es, limits));

  for (const ChoicePoint &point : report.choice_points) {
    if (!report.history.count(point.chosen))
      continue; // a detour irrelevant to the error's causal history
    for (const EventId &alternative : point.alternatives) {
      AvoidanceCounterfactual avoidance;
      avoidance.alternative = alternative;
      avoidance.chosen = point.chosen;
      avoidance.trace_verdict = check_over_traces(
          es, TracePredicate::occurs(alternative),
          TracePredicate::negation(TracePredicate::occurs(report.error_event)), limits);
      CounterfactualQuery query{Formula::occurrence(alternative),
                                Formula::negation(Formula::occurrence(report.error_event))};
      avoidance.belief_verdict = validate_counterfactual(report.belief_base, query, limits);
      report.avoidance_counterfactuals.push_back(std::move(avoidance));
    }
  }
  return report;
}

} // namespace ces

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ces/behavior.hpp"
#include "ces/beliefs.hpp"
#include "ces/formula.hpp"

namespace ces {

struct CounterfactualQuery {
  Formula antecedent;
  Formula consequent;
};

// One way of restoring consistency with the antecedent. Indices refer to
// positions in the belief base the subset was computed from.
struct PreferredSubset {
  std::vector<std::size_t> retained;
  std::vector<std::size_t> rejected;
};

enum class BeliefOutcome { valid, refuted, undetermined };

const char *belief_outcome_name(BeliefOutcome outcome);

struct Verdict {
  BeliefOutcome outcome = BeliefOutcome::undetermined;
  bool counterfactual_flag = false; // base entailed the antecedent's negation
  std::vector<PreferredSubset> preferred;
  std::vector<std::size_t> supporting; // indices into preferred entailing the consequent
  std::vector<std::size_t> refuting;   // indices into preferred entailing its negation
};

// All priority-maximal subsets of `base` consistent with `antecedent`:
// levels are fixed in MELF order and, walking from the highest level down,
// each level keeps an inclusion-maximal consistent subset given everything
// kept so far. Branches where maximality allows a choice are all returned,
// sorted by retained index list.
std::vector<PreferredSubset> preferred_subsets(const BeliefBase &base, const Formula &antecedent,
                                               const Limits &limits = {});

// Valid when every preferred subset (plus the antecedent) entails the
// consequent, Refuted when some preferred subset entails its negation,
// Undetermined otherwise.
Verdict validate_counterfactual(const BeliefBase &base, const CounterfactualQuery &query,
                                const Limits &limits = {});

// Predicate over a single trace: primitives first(e), occurs(e), before(a,b)
// combined with !, & and |.
class TracePredicate {
public:
  enum class Kind { first, occurs, before, negation, conjunction, disjunction };

  static TracePredicate first(EventId event);
  static TracePredicate occurs(EventId event);
  static TracePredicate before(EventId earlier, EventId later);
  static TracePredicate negation(TracePredicate operand);
  static TracePredicate conjunction(TracePredicate lhs, TracePredicate rhs);
  static TracePredicate disjunction(TracePredicate lhs, TracePredicate rhs);

  Kind kind() const;
  const EventId &event() const;  // first, occurs, before (the earlier event)
  const EventId &second() const; // before only
  TracePredicate child() const;  // negation
  TracePredicate lhs() const;
  TracePredicate rhs() const;

  std::string to_string() const;

private:
  struct Node;
  explicit TracePredicate(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

TracePredicate parse_trace_predicate(const std::string &text, const EventStructure &es);

bool eval_trace_predicate(const TracePredicate &pred, const Trace &trace);

enum class TraceOutcome { all_hold, refuted_by, vacuous };

const char *trace_outcome_name(TraceOutcome outcome);

struct TraceVerdict {
  TraceOutcome outcome = TraceOutcome::vacuous;
  std::optional<Trace> witness;        // first refuting trace in canonical order
  std::vector<Trace> antecedent_traces; // maximal traces satisfying the antecedent
  std::size_t total_maximal = 0;
};

// Quantifies the consequent over every maximal conformant trace satisfying
// the antecedent. Vacuous when no maximal trace satisfies the antecedent.
TraceVerdict check_over_traces(const EventStructure &es, const TracePredicate &antecedent,
                               const TracePredicate &consequent, const Limits &limits = {});

} // namespace ces

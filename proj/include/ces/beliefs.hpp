#pragma once

#include <string>
#include <vector>

#include "ces/behavior.hpp"
#include "ces/formula.hpp"

namespace ces {

// Rescher's MELF priority order, highest first. Counterfactual evaluation
// retracts beliefs from the lowest level first when restoring consistency.
enum class Level { meaning, existence, lawfulness, fact };

const char *level_name(Level level);

enum class Origin { model_law, trace_fact, user };

const char *origin_name(Origin origin);

struct Belief {
  Formula formula;
  Level level;
  Origin origin = Origin::user;
};

// Ordered list of beliefs; insertion order is kept for deterministic
// tie-breaking. Exact (formula, level) duplicates are dropped.
class BeliefBase {
public:
  bool add(Belief belief); // false if dropped as a duplicate
  void merge(const BeliefBase &other);

  const std::vector<Belief> &items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const Belief &operator[](std::size_t i) const { return items_[i]; }

  std::vector<Formula> formulas() const;

private:
  std::vector<Belief> items_;
};

enum class WorldMode { open, closed };

// One Lawfulness belief per immediate relation of the model:
//   cause pair (a,b):     occ(b) -> occ(a)
//   conflict pair (a,b):  !(occ(a) & occ(b))
// Closure-derived relations are entailed and therefore not emitted.
BeliefBase laws_from_model(const EventStructure &es, const Limits &limits = {});

// Fact beliefs from an observed run: occ(e) for each step; in closed mode
// also !occ(e) for every event absent from the trace. The trace must conform
// to the model.
BeliefBase facts_from_trace(const EventStructure &es, const Trace &trace, WorldMode mode,
                            const Limits &limits = {});

} // namespace ces

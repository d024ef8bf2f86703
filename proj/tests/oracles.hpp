// Independent brute-force reference implementations used to cross-check the
// library. Everything here favours obviousness over speed: closures by
// fixpoint iteration, satisfiability by full truth tables, enumerations by
// filtering the powerset or the permutations.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ces/beliefs.hpp"
#include "ces/counterfactual.hpp"
#include "ces/event_structure.hpp"
#include "ces/formula.hpp"

namespace oracle {

// The generating data of a candidate structure, kept separately so both the
// library and the oracle start from the same input.
struct ModelSpec {
  std::vector<ces::LabelledEvent> events;
  std::vector<ces::IdPair> causes;
  std::vector<ces::IdPair> conflicts;

  ces::EventStructure build(const ces::Limits &limits = {}) const {
    return ces::EventStructure::build(events, causes, conflicts, {}, limits);
  }
  int index(const ces::EventId &id) const;
};

using BoolMatrix = std::vector<std::vector<bool>>;

// Reflexive-transitive closure of the cause edges (Floyd-Warshall).
BoolMatrix closure_leq(const ModelSpec &spec);

bool has_cycle(const BoolMatrix &leq);

// Fixpoint of conflict heredity over the closed order. Returns false when
// the fixpoint forces an event into conflict with itself.
bool closure_conflict(const ModelSpec &spec, const BoolMatrix &leq, BoolMatrix &out);

// Powerset filter: conflict-free downward-closed index sets, sorted.
std::vector<std::vector<int>> all_configs(int n, const BoolMatrix &leq,
                                          const BoolMatrix &conflict);

// Permutation filter: orderings of `config` respecting leq.
std::vector<std::vector<int>> linearizations(const std::vector<int> &config,
                                             const BoolMatrix &leq);

// Largest set of pairwise concurrent events, by powerset enumeration.
std::size_t max_concurrent(int n, const BoolMatrix &leq, const BoolMatrix &conflict);

// Truth-table satisfiability and entailment.
bool tt_satisfiable(const std::vector<ces::Formula> &formulas);
bool tt_entails(const std::vector<ces::Formula> &premises, const ces::Formula &conclusion);

// All priority-lexicographically maximal subsets consistent with the
// antecedent, by pairwise comparison over the whole powerset. Returned as
// sorted retained index lists, ordered like ces::preferred_subsets.
std::vector<std::vector<std::size_t>> preferred(const ces::BeliefBase &base,
                                                const ces::Formula &antecedent);

// Random valid structure: a DAG over up to max_events events plus conflict
// pairs chosen so that closure cannot produce a self conflict.
ModelSpec random_spec(std::mt19937_64 &rng, int max_events);

// Random formula over the given atoms (occurrence atoms for events plus any
// exogenous names), depth-bounded.
ces::Formula random_formula(std::mt19937_64 &rng, const std::vector<ces::Formula> &atoms,
                            int depth);

} // namespace oracle

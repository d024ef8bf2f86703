#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ces/error.hpp"

namespace ces {

using EventId = std::string;
using IdPair = std::pair<EventId, EventId>;

struct LabelledEvent {
  EventId id;
  std::string label; // may be shared by events with different causal histories

  friend bool operator==(const LabelledEvent &a, const LabelledEvent &b) {
    return a.id == b.id && a.label == b.label;
  }
};

// Event ids are nonempty and free of whitespace; exogenous atom names follow
// identifier syntax and avoid the grammar's reserved words, so they can
// appear bare in formulas.
bool valid_event_id(const std::string &id);
bool valid_atom_name(const std::string &name);

// Exactly one of these holds for any ordered pair of events.
enum class Relation { same, causes, caused_by, conflict, concurrent };

const char *relation_name(Relation r);

// Labelled prime event structure: a finite set of labelled events, a causal
// partial order and a hereditary conflict relation. Instances are immutable
// after build() and safe to share across threads.
//
// Axioms checked by build():
//   - causality is reflexive, transitive and antisymmetric
//   - conflict is irreflexive and symmetric
//   - heredity: a <= b and a # c implies b # c
//   - no pair is both causally ordered and in conflict
//
// The input pairs are the generating (immediate) relations; build() closes
// them. The generating relations are kept around because downstream law
// extraction works on immediate edges only.
class EventStructure {
public:
  static EventStructure build(std::vector<LabelledEvent> events,
                              std::vector<IdPair> cause_pairs,
                              std::vector<IdPair> conflict_pairs,
                              std::vector<std::string> exogenous_atoms = {},
                              const Limits &limits = {});

  std::size_t size() const { return events_.size(); }
  const std::vector<LabelledEvent> &events() const { return events_; } // sorted by id
  const std::vector<std::string> &exogenous_atoms() const { return atoms_; }

  bool has_event(const EventId &id) const;
  bool has_atom(const std::string &name) const;

  // Index-based access; events are indexed 0..size()-1 in id order.
  int index_of(const EventId &id) const; // throws unknown_event
  const EventId &id_at(int i) const { return events_[i].id; }
  const std::string &label_at(int i) const { return events_[i].label; }
  const std::string &label_of(const EventId &id) const;

  bool leq(int a, int b) const { return leq_[a][b]; }           // closed causal order
  bool in_conflict(int a, int b) const { return conflict_[a][b]; } // closed conflict

  Relation relation_at(int a, int b) const;
  Relation relation(const EventId &a, const EventId &b) const;

  // {x | x <= e}, including e itself. Downward-closed and conflict-free.
  std::set<EventId> causal_history(const EventId &e) const;
  std::vector<int> history_at(int e) const; // ascending indices

  // Generating relations, normalized: deduplicated, self pairs dropped,
  // conflict pairs stored with the lexicographically smaller id first.
  const std::vector<IdPair> &immediate_causes() const { return gen_causes_; }
  const std::vector<IdPair> &immediate_conflicts() const { return gen_conflicts_; }

  // Closed conflict as unordered id pairs (smaller id first), sorted.
  std::vector<IdPair> conflict_pairs() const;

private:
  EventStructure() = default;

  std::vector<LabelledEvent> events_;
  std::map<EventId, int> index_;
  std::vector<std::string> atoms_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<bool>> conflict_;
  std::vector<IdPair> gen_causes_;
  std::vector<IdPair> gen_conflicts_;
};

// Size of the largest set of pairwise concurrent events: a maximum clique in
// the concurrency graph, found by exhaustive branch and bound. Throws
// size_limit when the search exceeds limits.max_enumeration nodes.
std::size_t degree_of_concurrency(const EventStructure &es, const Limits &limits = {});

} // namespace ces

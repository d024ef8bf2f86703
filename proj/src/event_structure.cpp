#include "ces/event_structure.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <deque>
#include <sstream>

namespace ces {

const char *error_code_name(ErrorCode code) {
  switch (code) {
  case ErrorCode::unknown_event: return "UnknownEvent";
  case ErrorCode::duplicate_event: return "DuplicateEventId";
  case ErrorCode::causality_cycle: return "CausalityCycle";
  case ErrorCode::self_conflict: return "SelfConflict";
  case ErrorCode::size_limit: return "SizeLimitExceeded";
  case ErrorCode::invalid_configuration: return "InvalidConfiguration";
  case ErrorCode::non_conformant_trace: return "NonConformantTrace";
  case ErrorCode::syntax: return "SyntaxError";
  case ErrorCode::unknown_atom: return "UnknownAtom";
  case ErrorCode::atom_limit: return "AtomLimitExceeded";
  case ErrorCode::subset_explosion: return "SubsetExplosion";
  case ErrorCode::no_error_event: return "NoErrorEvent";
  case ErrorCode::ambiguous_error_label: return "AmbiguousErrorLabel";
  }
  return "Error";
}

const char *relation_name(Relation r) {
  switch (r) {
  case Relation::same: return "same";
  case Relation::causes: return "causes";
  case Relation::caused_by: return "caused-by";
  case Relation::conflict: return "conflict";
  case Relation::concurrent: return "concurrent";
  }
  return "?";
}

bool valid_event_id(const std::string &id) {
  if (id.empty()) return false;
  for (char c : id)
    if (std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

bool valid_atom_name(const std::string &name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  static const char *reserved[] = {"true", "false", "occ", "first", "occurs", "before"};
  for (const char *r : reserved)
    if (name == r) return false;
  return true;
}

namespace {

// Shortest cycle through `from` using the generating cause edges, for error
// reporting. `from` and `to` are mutually reachable when this is called.
std::string describe_cycle(const std::vector<LabelledEvent> &events,
                           const std::vector<std::vector<int>> &succ, int from, int to) {
  auto path = [&](int a, int b) {
    std::vector<int> parent(events.size(), -1);
    std::deque<int> queue{a};
    std::vector<bool> seen(events.size(), false);
    seen[a] = true;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      if (v == b) break;
      for (int w : succ[v])
        if (!seen[w]) {
          seen[w] = true;
          parent[w] = v;
          queue.push_back(w);
        }
    }
    std::vector<int> steps;
    for (int v = b; v != a; v = parent[v]) steps.push_back(v);
    std::reverse(steps.begin(), steps.end());
    return steps;
  };
  std::ostringstream out;
  out << events[from].id;
  for (int v : path(from, to)) out << " -> " << events[v].id;
  for (int v : path(to, from)) out << " -> " << events[v].id;
  return out.str();
}

} // namespace

EventStructure EventStructure::build(std::vector<LabelledEvent> events,
                                     std::vector<IdPair> cause_pairs,
                                     std::vector<IdPair> conflict_pairs,
                                     std::vector<std::string> exogenous_atoms,
                                     const Limits &limits) {
  if (events.size() > limits.max_events)
    throw Error(ErrorCode::size_limit,
                "structure has " + std::to_string(events.size()) + " events, limit is " +
                    std::to_string(limits.max_events));

  EventStructure es;
  std::sort(events.begin(), events.end(),
            [](const LabelledEvent &a, const LabelledEvent &b) { return a.id < b.id; });
  for (const auto &ev : events) {
    if (!valid_event_id(ev.id))
      throw Error(ErrorCode::syntax, "invalid event id '" + ev.id + "'");
    if (!es.index_.emplace(ev.id, static_cast<int>(es.events_.size())).second)
      throw Error(ErrorCode::duplicate_event, "duplicate event id '" + ev.id + "'");
    es.events_.push_back(ev);
  }

  for (const auto &name : exogenous_atoms) {
    if (!valid_atom_name(name))
      throw Error(ErrorCode::syntax, "invalid exogenous atom name '" + name + "'");
    es.atoms_.push_back(name);
  }
  std::sort(es.atoms_.begin(), es.atoms_.end());
  es.atoms_.erase(std::unique(es.atoms_.begin(), es.atoms_.end()), es.atoms_.end());

  const int n = static_cast<int>(es.events_.size());
  auto resolve = [&](const EventId &id) {
    auto it = es.index_.find(id);
    if (it == es.index_.end())
      throw Error(ErrorCode::unknown_event, "unknown event '" + id + "'");
    return it->second;
  };

  // Immediate successor lists from the generating cause pairs.
  std::vector<std::vector<int>> succ(n);
  for (auto &[cause, effect] : cause_pairs) {
    int a = resolve(cause), b = resolve(effect);
    if (a != b) succ[a].push_back(b);
  }

  // Reflexive-transitive closure by reachability from each event.
  es.leq_.assign(n, std::vector<bool>(n, false));
  for (int start = 0; start < n; ++start) {
    std::deque<int> queue{start};
    es.leq_[start][start] = true;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w : succ[v])
        if (!es.leq_[start][w]) {
          es.leq_[start][w] = true;
          queue.push_back(w);
        }
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (es.leq_[a][b] && es.leq_[b][a])
        throw Error(ErrorCode::causality_cycle,
                    "causality cycle: " + describe_cycle(es.events_, succ, a, b));

  // Hereditary closure of the conflict: a base pair u # v puts every event
  // above u in conflict with every event above v. An event above both would
  // end up in conflict with itself, which the axioms forbid; this also covers
  // base pairs that are themselves causally ordered.
  es.conflict_.assign(n, std::vector<bool>(n, false));
  for (auto &[x, y] : conflict_pairs) {
    int u = resolve(x), v = resolve(y);
    if (u == v)
      throw Error(ErrorCode::self_conflict, "event '" + x + "' conflicts with itself");
    for (int a = 0; a < n; ++a) {
      if (!es.leq_[u][a]) continue;
      for (int b = 0; b < n; ++b) {
        if (!es.leq_[v][b]) continue;
        if (a == b)
          throw Error(ErrorCode::self_conflict,
                      "conflict " + x + " # " + y + " is inherited by '" + es.events_[a].id +
                          "', which causally depends on both (would force " +
                          es.events_[a].id + " # " + es.events_[a].id + ")");
        es.conflict_[a][b] = true;
        es.conflict_[b][a] = true;
      }
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      assert(!(a == b && es.conflict_[a][b]));
      assert(!(es.leq_[a][b] && es.conflict_[a][b]));
    }

  // Normalized generating relations.
  for (auto &[cause, effect] : cause_pairs)
    if (cause != effect) es.gen_causes_.emplace_back(cause, effect);
  std::sort(es.gen_causes_.begin(), es.gen_causes_.end());
  es.gen_causes_.erase(std::unique(es.gen_causes_.begin(), es.gen_causes_.end()),
                       es.gen_causes_.end());
  for (auto &[x, y] : conflict_pairs)
    es.gen_conflicts_.emplace_back(std::min(x, y), std::max(x, y));
  std::sort(es.gen_conflicts_.begin(), es.gen_conflicts_.end());
  es.gen_conflicts_.erase(std::unique(es.gen_conflicts_.begin(), es.gen_conflicts_.end()),
                          es.gen_conflicts_.end());
  return es;
}

bool EventStructure::has_event(const EventId &id) const { return index_.count(id) > 0; }

bool EventStructure::has_atom(const std::string &name) const {
  return std::binary_search(atoms_.begin(), atoms_.end(), name);
}

int EventStructure::index_of(const EventId &id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    throw Error(ErrorCode::unknown_event, "unknown event '" + id + "'");
  return it->second;
}

const std::string &EventStructure::label_of(const EventId &id) const {
  return events_[index_of(id)].label;
}

Relation EventStructure::relation_at(int a, int b) const {
  if (a == b) return Relation::same;
  if (leq_[a][b]) return Relation::causes;
  if (leq_[b][a]) return Relation::caused_by;
  if (conflict_[a][b]) return Relation::conflict;
  return Relation::concurrent;
}

Relation EventStructure::relation(const EventId &a, const EventId &b) const {
  return relation_at(index_of(a), index_of(b));
}

std::set<EventId> EventStructure::causal_history(const EventId &e) const {
  std::set<EventId> out;
  for (int x : history_at(index_of(e))) out.insert(events_[x].id);
  return out;
}

std::vector<int> EventStructure::history_at(int e) const {
  std::vector<int> out;
  for (int x = 0; x < static_cast<int>(events_.size()); ++x)
    if (leq_[x][e]) out.push_back(x);
  return out;
}

std::vector<IdPair> EventStructure::conflict_pairs() const {
  std::vector<IdPair> out;
  for (int a = 0; a < static_cast<int>(events_.size()); ++a)
    for (int b = a + 1; b < static_cast<int>(events_.size()); ++b)
      if (conflict_[a][b]) out.emplace_back(events_[a].id, events_[b].id);
  return out;
}

namespace {

// Bron-Kerbosch with pivoting over the concurrency graph. Node-counted so a
// hostile input fails with size_limit instead of hanging.
struct CliqueSearch {
  const EventStructure &es;
  std::size_t budget;
  std::size_t nodes = 0;
  std::size_t best = 0;

  bool concurrent(int a, int b) const { return es.relation_at(a, b) == Relation::concurrent; }

  void run(std::vector<int> &clique, std::vector<int> cand, std::vector<int> excluded) {
    if (++nodes > budget)
      throw Error(ErrorCode::size_limit, "concurrency clique search exceeded " +
                                             std::to_string(budget) + " nodes");
    if (cand.empty() && excluded.empty()) {
      best = std::max(best, clique.size());
      return;
    }
    if (clique.size() + cand.size() <= best) return;
    int pivot = -1;
    std::size_t pivot_deg = 0;
    for (int u : cand) {
      std::size_t deg = 0;
      for (int v : cand)
        if (concurrent(u, v)) ++deg;
      if (pivot < 0 || deg >= pivot_deg) {
        pivot = u;
        pivot_deg = deg;
      }
    }
    std::vector<int> branch;
    for (int v : cand)
      if (pivot < 0 || !concurrent(pivot, v)) branch.push_back(v);
    for (int v : branch) {
      std::vector<int> next_cand, next_excl;
      for (int u : cand)
        if (concurrent(u, v)) next_cand.push_back(u);
      for (int u : excluded)
        if (concurrent(u, v)) next_excl.push_back(u);
      clique.push_back(v);
      run(clique, std::move(next_cand), std::move(next_excl));
      clique.pop_back();
      cand.erase(std::find(cand.begin(), cand.end(), v));
      excluded.push_back(v);
    }
  }
};

} // namespace

std::size_t degree_of_concurrency(const EventStructure &es, const Limits &limits) {
  if (es.size() == 0) return 0;
  CliqueSearch search{es, limits.max_enumeration};
  std::vector<int> clique, cand;
  for (int i = 0; i < static_cast<int>(es.size()); ++i) cand.push_back(i);
  search.run(clique, std::move(cand), {});
  return search.best; // >= 1 for any nonempty structure
}

} // namespace ces

#include "ces/behavior.hpp"

#include <algorithm>
#include <deque>
#include <random>

namespace ces {

namespace {

// Internal state representation: sorted vector of event indices.
using IndexSet = std::vector<int>;

IndexSet to_indices(const EventStructure &es, const Configuration &config) {
  IndexSet out;
  for (const auto &id : config) out.push_back(es.index_of(id));
  std::sort(out.begin(), out.end());
  return out;
}

Configuration to_ids(const EventStructure &es, const IndexSet &set) {
  Configuration out;
  for (int i : set) out.insert(es.id_at(i));
  return out;
}

bool contains(const IndexSet &set, int x) {
  return std::binary_search(set.begin(), set.end(), x);
}

bool valid_configuration(const EventStructure &es, const IndexSet &set) {
  for (int a : set)
    for (int b : set) {
      if (a < b && es.in_conflict(a, b)) return false;
    }
  for (int e : set)
    for (int x = 0; x < static_cast<int>(es.size()); ++x)
      if (x != e && es.leq(x, e) && !contains(set, x)) return false;
  return true;
}

IndexSet enabled_at(const EventStructure &es, const IndexSet &config) {
  IndexSet out;
  const int n = static_cast<int>(es.size());
  for (int e = 0; e < n; ++e) {
    if (contains(config, e)) continue;
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      if (x != e && es.leq(x, e) && !contains(config, x)) ok = false;
    for (std::size_t k = 0; ok && k < config.size(); ++k)
      if (es.in_conflict(e, config[k])) ok = false;
    if (ok) out.push_back(e);
  }
  return out;
}

IndexSet with_event(const IndexSet &config, int e) {
  IndexSet out = config;
  out.insert(std::upper_bound(out.begin(), out.end(), e), e);
  return out;
}

// Breadth-first exploration of the configuration space from the empty set.
std::set<IndexSet> explore(const EventStructure &es, const Limits &limits) {
  std::set<IndexSet> seen;
  std::deque<IndexSet> queue;
  seen.insert(IndexSet{}); // brace form would pick the initializer_list overload
  queue.push_back(IndexSet{});
  while (!queue.empty()) {
    IndexSet config = queue.front();
    queue.pop_front();
    for (int e : enabled_at(es, config)) {
      IndexSet next = with_event(config, e);
      if (seen.insert(next).second) {
        if (seen.size() > limits.max_enumeration)
          throw Error(ErrorCode::size_limit,
                      "configuration enumeration exceeded " +
                          std::to_string(limits.max_enumeration) + " states");
        queue.push_back(next);
      }
    }
  }
  return seen;
}

void extend_linearizations(const EventStructure &es, const IndexSet &config,
                           IndexSet &placed_set, std::vector<int> &order,
                           std::vector<Trace> &out, const Limits &limits) {
  if (order.size() == config.size()) {
    Trace trace;
    for (int e : order) trace.push_back(es.id_at(e));
    out.push_back(std::move(trace));
    if (out.size() > limits.max_enumeration)
      throw Error(ErrorCode::size_limit, "linearization enumeration exceeded " +
                                             std::to_string(limits.max_enumeration) +
                                             " traces");
    return;
  }
  for (int e : config) {
    if (contains(placed_set, e)) continue;
    bool minimal = true;
    for (int x : config)
      if (x != e && es.leq(x, e) && !contains(placed_set, x)) { minimal = false; break; }
    if (!minimal) continue;
    order.push_back(e);
    IndexSet next = with_event(placed_set, e);
    std::swap(placed_set, next);
    extend_linearizations(es, config, placed_set, order, out, limits);
    std::swap(placed_set, next);
    order.pop_back();
  }
}

} // namespace

bool is_configuration(const EventStructure &es, const Configuration &events) {
  return valid_configuration(es, to_indices(es, events));
}

std::set<EventId> enabled_events(const EventStructure &es, const Configuration &config) {
  IndexSet set = to_indices(es, config);
  if (!valid_configuration(es, set))
    throw Error(ErrorCode::invalid_configuration, "not a configuration");
  std::set<EventId> out;
  for (int e : enabled_at(es, set)) out.insert(es.id_at(e));
  return out;
}

std::vector<Configuration> all_configurations(const EventStructure &es, const Limits &limits) {
  std::vector<Configuration> out;
  for (const IndexSet &set : explore(es, limits)) out.push_back(to_ids(es, set));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Configuration> maximal_configurations(const EventStructure &es,
                                                  const Limits &limits) {
  std::vector<Configuration> out;
  for (const IndexSet &set : explore(es, limits))
    if (enabled_at(es, set).empty()) out.push_back(to_ids(es, set));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Trace> linearizations(const EventStructure &es, const Configuration &config,
                                  const Limits &limits) {
  IndexSet set = to_indices(es, config);
  if (!valid_configuration(es, set))
    throw Error(ErrorCode::invalid_configuration, "not a configuration");
  std::vector<Trace> out;
  IndexSet placed;
  std::vector<int> order;
  extend_linearizations(es, set, placed, order, out, limits);
  return out;
}

bool conforms(const EventStructure &es, const Trace &trace) {
  IndexSet prefix;
  for (const auto &id : trace) {
    int e = es.index_of(id);
    IndexSet enabled = enabled_at(es, prefix);
    if (!contains(enabled, e)) return false;
    prefix = with_event(prefix, e);
  }
  return true;
}

TransitionSystem interleaving_lts(const EventStructure &es, const Limits &limits) {
  TransitionSystem lts;
  lts.initial = {};
  std::set<IndexSet> states = explore(es, limits);
  for (const IndexSet &set : states) lts.states.push_back(to_ids(es, set));
  std::sort(lts.states.begin(), lts.states.end());
  for (const IndexSet &set : states) {
    Configuration from = to_ids(es, set);
    for (int e : enabled_at(es, set))
      lts.transitions.push_back(
          {from, es.id_at(e), es.label_at(e), to_ids(es, with_event(set, e))});
  }
  std::sort(lts.transitions.begin(), lts.transitions.end());
  return lts;
}

std::vector<Trace> maximal_traces(const EventStructure &es, const Limits &limits) {
  std::vector<Trace> out;
  for (const Configuration &config : maximal_configurations(es, limits)) {
    std::vector<Trace> lin = linearizations(es, config, limits);
    out.insert(out.end(), lin.begin(), lin.end());
    if (out.size() > limits.max_enumeration)
      throw Error(ErrorCode::size_limit, "maximal trace enumeration exceeded " +
                                             std::to_string(limits.max_enumeration) +
                                             " traces");
  }
  std::sort(out.begin(), out.end());
  return out;
}

Trace simulate(const EventStructure &es, std::uint64_t seed, std::size_t max_steps,
               const Limits &) {
  std::mt19937_64 rng(seed);
  Trace trace;
  IndexSet config;
  while (trace.size() < max_steps) {
    IndexSet enabled = enabled_at(es, config);
    if (enabled.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, enabled.size() - 1);
    int e = enabled[pick(rng)];
    trace.push_back(es.id_at(e));
    config = with_event(config, e);
  }
  return trace;
}

} // namespace ces

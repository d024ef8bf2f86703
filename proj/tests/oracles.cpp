#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <string>

namespace oracle {

int ModelSpec::index(const ces::EventId &id) const {
  for (std::size_t i = 0; i < events.size(); ++i)
    if (events[i].id == id)
      return static_cast<int>(i);
  return -1;
}

BoolMatrix closure_leq(const ModelSpec &spec) {
  const int n = static_cast<int>(spec.events.size());
  BoolMatrix leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    leq[i][i] = true;
  for (const ces::IdPair &pair : spec.causes)
    leq[spec.index(pair.first)][spec.index(pair.second)] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j])
          leq[i][j] = true;
  return leq;
}

bool has_cycle(const BoolMatrix &leq) {
  const int n = static_cast<int>(leq.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && leq[i][j] && leq[j][i])
        return true;
  return false;
}

bool closure_conflict(const ModelSpec &spec, const BoolMatrix &leq, BoolMatrix &out) {
  const int n = static_cast<int>(spec.events.size());
  out.assign(n, std::vector<bool>(n, false));
  for (const ces::IdPair &pair : spec.conflicts) {
    int a = spec.index(pair.first), b = spec.index(pair.second);
    if (a == b)
      return false;
    out[a][b] = out[b][a] = true;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (!out[a][b])
          continue;
        for (int c = 0; c < n; ++c)
          if (leq[b][c] && !out[a][c]) {
            out[a][c] = out[c][a] = true;
            changed = true;
          }
      }
  }
  for (int i = 0; i < n; ++i)
    if (out[i][i])
      return false;
  return true;
}

std::vector<std::vector<int>> all_configs(int n, const BoolMatrix &leq,
                                          const BoolMatrix &conflict) {
  std::vector<std::vector<int>> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> set;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1u)
        set.push_back(i);
    bool ok = true;
    for (std::size_t i = 0; ok && i < set.size(); ++i)
      for (std::size_t j = i + 1; ok && j < set.size(); ++j)
        if (conflict[set[i]][set[j]])
          ok = false;
    for (int e : set)
      for (int x = 0; ok && x < n; ++x)
        if (x != e && leq[x][e] && !(mask >> x & 1u))
          ok = false;
    if (ok)
      out.push_back(set);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> linearizations(const std::vector<int> &config,
                                             const BoolMatrix &leq) {
  std::vector<int> perm = config;
  std::sort(perm.begin(), perm.end());
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (std::size_t i = 0; ok && i < perm.size(); ++i)
      for (std::size_t j = i + 1; ok && j < perm.size(); ++j)
        if (leq[perm[j]][perm[i]])
          ok = false;
    if (ok)
      out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t max_concurrent(int n, const BoolMatrix &leq, const BoolMatrix &conflict) {
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> set;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1u)
        set.push_back(i);
    bool ok = true;
    for (std::size_t i = 0; ok && i < set.size(); ++i)
      for (std::size_t j = i + 1; ok && j < set.size(); ++j) {
        int a = set[i], b = set[j];
        if (leq[a][b] || leq[b][a] || conflict[a][b])
          ok = false;
      }
    if (ok)
      best = std::max(best, set.size());
  }
  return best;
}

namespace {

bool eval_full(const ces::Formula &f, const std::map<ces::Atom, bool> &env) {
  using K = ces::Formula::Kind;
  switch (f.kind()) {
  case K::constant:
    return f.constant_value();
  case K::atom:
    return env.at(f.atom());
  case K::negation:
    return !eval_full(f.child(), env);
  case K::conjunction:
    return eval_full(f.lhs(), env) && eval_full(f.rhs(), env);
  case K::disjunction:
    return eval_full(f.lhs(), env) || eval_full(f.rhs(), env);
  case K::implication:
    return !eval_full(f.lhs(), env) || eval_full(f.rhs(), env);
  case K::biconditional:
    return eval_full(f.lhs(), env) == eval_full(f.rhs(), env);
  }
  return false;
}

} // namespace

bool tt_satisfiable(const std::vector<ces::Formula> &formulas) {
  std::set<ces::Atom> atom_set;
  for (const ces::Formula &f : formulas)
    f.collect_atoms(atom_set);
  std::vector<ces::Atom> atoms(atom_set.begin(), atom_set.end());
  const std::size_t k = atoms.size();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
    std::map<ces::Atom, bool> env;
    for (std::size_t i = 0; i < k; ++i)
      env[atoms[i]] = (bits >> i & 1u) != 0;
    bool all = true;
    for (const ces::Formula &f : formulas)
      if (!eval_full(f, env)) {
        all = false;
        break;
      }
    if (all)
      return true;
  }
  return false;
}

bool tt_entails(const std::vector<ces::Formula> &premises, const ces::Formula &conclusion) {
  std::vector<ces::Formula> check = premises;
  check.push_back(ces::Formula::negation(conclusion));
  return !tt_satisfiable(check);
}

std::vector<std::vector<std::size_t>> preferred(const ces::BeliefBase &base,
                                                const ces::Formula &antecedent) {
  const std::size_t n = base.size();
  std::vector<std::uint32_t> sat;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<ces::Formula> formulas{antecedent};
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u)
        formulas.push_back(base[i].formula);
    if (tt_satisfiable(formulas))
      sat.push_back(mask);
  }

  const ces::Level order[] = {ces::Level::meaning, ces::Level::existence,
                              ces::Level::lawfulness, ces::Level::fact};
  auto level_part = [&](std::uint32_t mask, ces::Level level) {
    std::uint32_t out = 0;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i & 1u) && base[i].level == level)
        out |= 1u << i;
    return out;
  };
  // s beats t when, at the highest-priority level where they differ, s keeps
  // a strict superset.
  auto beats = [&](std::uint32_t s, std::uint32_t t) {
    for (ces::Level level : order) {
      std::uint32_t sl = level_part(s, level), tl = level_part(t, level);
      if (sl == tl)
        continue;
      return (tl & ~sl) == 0;
    }
    return false;
  };

  std::vector<std::vector<std::size_t>> out;
  for (std::uint32_t s : sat) {
    bool maximal = true;
    for (std::uint32_t t : sat)
      if (beats(t, s)) {
        maximal = false;
        break;
      }
    if (!maximal)
      continue;
    std::vector<std::size_t> retained;
    for (std::size_t i = 0; i < n; ++i)
      if (s >> i & 1u)
        retained.push_back(i);
    out.push_back(retained);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ModelSpec random_spec(std::mt19937_64 &rng, int max_events) {
  std::uniform_int_distribution<int> n_dist(1, max_events);
  const int n = n_dist(rng);
  ModelSpec spec;
  for (int i = 0; i < n; ++i) {
    std::string id = "e" + std::string(i < 10 ? "0" : "") + std::to_string(i);
    spec.events.push_back({id, "L" + id});
  }
  std::bernoulli_distribution edge(0.25), pick_conflict(0.25);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (edge(rng))
        spec.causes.push_back({spec.events[i].id, spec.events[j].id});

  BoolMatrix leq = closure_leq(spec);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (leq[i][j] || leq[j][i])
        continue;
      bool shared_future = false;
      for (int k = 0; k < n && !shared_future; ++k)
        if (leq[i][k] && leq[j][k])
          shared_future = true;
      if (!shared_future && pick_conflict(rng))
        spec.conflicts.push_back({spec.events[i].id, spec.events[j].id});
    }
  return spec;
}

ces::Formula random_formula(std::mt19937_64 &rng, const std::vector<ces::Formula> &atoms,
                            int depth) {
  std::uniform_int_distribution<int> kind(0, depth <= 0 ? 1 : 7);
  switch (kind(rng)) {
  case 0:
  case 1: {
    if (atoms.empty())
      return ces::Formula::constant(kind(rng) % 2 == 0);
    std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
    return atoms[pick(rng)];
  }
  case 2:
    return ces::Formula::negation(random_formula(rng, atoms, depth - 1));
  case 3:
    return ces::Formula::conjunction(random_formula(rng, atoms, depth - 1),
                                     random_formula(rng, atoms, depth - 1));
  case 4:
    return ces::Formula::disjunction(random_formula(rng, atoms, depth - 1),
                                     random_formula(rng, atoms, depth - 1));
  case 5:
    return ces::Formula::implication(random_formula(rng, atoms, depth - 1),
                                     random_formula(rng, atoms, depth - 1));
  case 6:
    return ces::Formula::biconditional(random_formula(rng, atoms, depth - 1),
                                       random_formula(rng, atoms, depth - 1));
  default:
    return ces::Formula::constant(true);
  }
}

} // namespace oracle

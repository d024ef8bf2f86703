#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ces/event_structure.hpp"

namespace ces {

// Propositional atom: either the occurrence of an event or an exogenous
// condition declared on the structure (e.g. an environmental fact).
struct Atom {
  enum class Kind { occurrence, exogenous };
  Kind kind;
  std::string name; // event id or atom name

  friend bool operator<(const Atom &a, const Atom &b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.name < b.name;
  }
  friend bool operator==(const Atom &a, const Atom &b) {
    return a.kind == b.kind && a.name == b.name;
  }
};

// Immutable propositional formula. Cheap to copy (shared subterms).
class Formula {
public:
  enum class Kind { constant, atom, negation, conjunction, disjunction, implication, biconditional };

  static Formula constant(bool value);
  static Formula occurrence(const EventId &event);
  static Formula exogenous(const std::string &name);
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula biconditional(Formula lhs, Formula rhs);

  Kind kind() const;
  bool constant_value() const; // kind == constant
  const Atom &atom() const;    // kind == atom
  Formula child() const;       // kind == negation
  Formula lhs() const;         // binary kinds
  Formula rhs() const;

  void collect_atoms(std::set<Atom> &out) const;
  std::string to_string() const; // parses back to an equal formula

  friend bool operator==(const Formula &a, const Formula &b);

private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Grammar: atoms `occ(ID)` and bare exogenous names, constants `true`/`false`,
// operators `!`, `&`, `|`, `->`, `<->` (loosest last, `->` right-associative),
// parentheses. The structure supplies the atom universe.
Formula parse_formula(const std::string &text, const EventStructure &es);

// Classical satisfiability by backtracking over the atoms that occur in the
// set. Bounded by limits.max_atoms.
bool satisfiable(const std::vector<Formula> &formulas, const Limits &limits = {});

// premises |= conclusion, i.e. premises + {not conclusion} is unsatisfiable.
bool entails(const std::vector<Formula> &premises, const Formula &conclusion,
             const Limits &limits = {});

} // namespace ces

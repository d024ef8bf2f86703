#include "ces/formula.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <map>

namespace ces {

struct Formula::Node {
  Kind kind;
  bool value = false;
  Atom atom{Atom::Kind::exogenous, ""};
  std::shared_ptr<const Node> lhs, rhs;
};

Formula Formula::constant(bool value) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::constant;
  node->value = value;
  return Formula(node);
}

Formula Formula::occurrence(const EventId &event) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::atom;
  node->atom = {Atom::Kind::occurrence, event};
  return Formula(node);
}

Formula Formula::exogenous(const std::string &name) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::atom;
  node->atom = {Atom::Kind::exogenous, name};
  return Formula(node);
}

Formula Formula::negation(Formula f) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::negation;
  node->lhs = f.node_;
  return Formula(node);
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::conjunction;
  node->lhs = lhs.node_;
  node->rhs = rhs.node_;
  return Formula(node);
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::disjunction;
  node->lhs = lhs.node_;
  node->rhs = rhs.node_;
  return Formula(node);
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::implication;
  node->lhs = lhs.node_;
  node->rhs = rhs.node_;
  return Formula(node);
}

Formula Formula::biconditional(Formula lhs, Formula rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::biconditional;
  node->lhs = lhs.node_;
  node->rhs = rhs.node_;
  return Formula(node);
}

Formula::Kind Formula::kind() const { return node_->kind; }
bool Formula::constant_value() const { return node_->value; }
const Atom &Formula::atom() const { return node_->atom; }
Formula Formula::child() const { return Formula(node_->lhs); }
Formula Formula::lhs() const { return Formula(node_->lhs); }
Formula Formula::rhs() const { return Formula(node_->rhs); }

void Formula::collect_atoms(std::set<Atom> &out) const {
  switch (kind()) {
  case Kind::constant: return;
  case Kind::atom: out.insert(node_->atom); return;
  case Kind::negation: child().collect_atoms(out); return;
  default:
    lhs().collect_atoms(out);
    rhs().collect_atoms(out);
  }
}

namespace {

// Binding strength, loosest first. Used for parsing and printing alike.
int precedence(Formula::Kind kind) {
  switch (kind) {
  case Formula::Kind::biconditional: return 0;
  case Formula::Kind::implication: return 1;
  case Formula::Kind::disjunction: return 2;
  case Formula::Kind::conjunction: return 3;
  case Formula::Kind::negation: return 4;
  default: return 5;
  }
}

void print(const Formula &f, int min_prec, std::string &out) {
  int prec = precedence(f.kind());
  bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (f.kind()) {
  case Formula::Kind::constant:
    out += f.constant_value() ? "true" : "false";
    break;
  case Formula::Kind::atom:
    if (f.atom().kind == Atom::Kind::occurrence)
      out += "occ(" + f.atom().name + ")";
    else
      out += f.atom().name;
    break;
  case Formula::Kind::negation:
    out += '!';
    print(f.child(), precedence(Formula::Kind::negation) + 1, out);
    break;
  case Formula::Kind::conjunction:
    print(f.lhs(), prec, out);
    out += " & ";
    print(f.rhs(), prec + 1, out);
    break;
  case Formula::Kind::disjunction:
    print(f.lhs(), prec, out);
    out += " | ";
    print(f.rhs(), prec + 1, out);
    break;
  case Formula::Kind::implication:
    print(f.lhs(), prec + 1, out); // right-associative
    out += " -> ";
    print(f.rhs(), prec, out);
    break;
  case Formula::Kind::biconditional:
    print(f.lhs(), prec + 1, out);
    out += " <-> ";
    print(f.rhs(), prec, out);
    break;
  }
  if (parens) out += ')';
}

} // namespace

std::string Formula::to_string() const {
  std::string out;
  print(*this, 0, out);
  return out;
}

bool operator==(const Formula &a, const Formula &b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
  case Formula::Kind::constant: return a.constant_value() == b.constant_value();
  case Formula::Kind::atom: return a.atom() == b.atom();
  case Formula::Kind::negation: return a.child() == b.child();
  default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

namespace {

// Recursive descent parser over a flat token stream.
struct Parser {
  const std::string &text;
  const EventStructure &es;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(const std::string &tok) {
    skip_space();
    if (text.compare(pos, tok.size(), tok) != 0) return false;
    // Reject "->" when looking for "-", identifier continuation after words.
    if (std::isalnum(static_cast<unsigned char>(tok.back())) &&
        pos + tok.size() < text.size()) {
      char next = text[pos + tok.size()];
      if (std::isalnum(static_cast<unsigned char>(next)) || next == '_') return false;
    }
    pos += tok.size();
    return true;
  }

  [[noreturn]] void fail(const std::string &message) {
    throw Error(ErrorCode::syntax, message + " at position " + std::to_string(pos) +
                                       " in formula '" + text + "'");
  }

  std::string identifier() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (pos == start) fail("expected identifier");
    return text.substr(start, pos - start);
  }

  Formula parse() {
    Formula f = biconditional();
    skip_space();
    if (pos != text.size()) fail("unexpected trailing input");
    return f;
  }

  Formula biconditional() {
    Formula lhs = implication();
    if (eat("<->")) return Formula::biconditional(lhs, biconditional());
    return lhs;
  }

  Formula implication() {
    Formula lhs = disjunction();
    skip_space();
    // Do not consume the "<-" half of "<->".
    if (text.compare(pos, 2, "->") == 0) {
      pos += 2;
      return Formula::implication(lhs, implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (true) {
      skip_space();
      if (pos < text.size() && text[pos] == '|') {
        ++pos;
        f = Formula::disjunction(f, conjunction());
      } else {
        return f;
      }
    }
  }

  Formula conjunction() {
    Formula f = unary();
    while (true) {
      skip_space();
      if (pos < text.size() && text[pos] == '&') {
        ++pos;
        f = Formula::conjunction(f, unary());
      } else {
        return f;
      }
    }
  }

  Formula unary() {
    skip_space();
    if (pos < text.size() && text[pos] == '!') {
      ++pos;
      return Formula::negation(unary());
    }
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      Formula f = biconditional();
      skip_space();
      if (pos >= text.size() || text[pos] != ')') fail("missing ')'");
      ++pos;
      return f;
    }
    if (eat("true")) return Formula::constant(true);
    if (eat("false")) return Formula::constant(false);
    if (eat("occ")) {
      skip_space();
      if (pos >= text.size() || text[pos] != '(') fail("expected '(' after occ");
      ++pos;
      std::size_t close = text.find(')', pos);
      if (close == std::string::npos) fail("missing ')' after occ(");
      std::string id = text.substr(pos, close - pos);
      while (!id.empty() && std::isspace(static_cast<unsigned char>(id.front()))) id.erase(0, 1);
      while (!id.empty() && std::isspace(static_cast<unsigned char>(id.back()))) id.pop_back();
      pos = close + 1;
      if (!es.has_event(id))
        throw Error(ErrorCode::unknown_atom, "unknown event '" + id + "' in occ(...)");
      return Formula::occurrence(id);
    }
    std::string name = identifier();
    if (!es.has_atom(name))
      throw Error(ErrorCode::unknown_atom, "unknown exogenous atom '" + name + "'");
    return Formula::exogenous(name);
  }
};

// Three-valued evaluation under a partial assignment: 0 false, 1 true,
// -1 undetermined.
int eval_partial(const Formula &f, const std::map<Atom, int> &index,
                 const std::vector<signed char> &assign) {
  switch (f.kind()) {
  case Formula::Kind::constant:
    return f.constant_value() ? 1 : 0;
  case Formula::Kind::atom:
    return assign[index.at(f.atom())];
  case Formula::Kind::negation: {
    int v = eval_partial(f.child(), index, assign);
    return v < 0 ? -1 : 1 - v;
  }
  case Formula::Kind::conjunction: {
    int a = eval_partial(f.lhs(), index, assign);
    if (a == 0) return 0;
    int b = eval_partial(f.rhs(), index, assign);
    if (b == 0) return 0;
    return (a == 1 && b == 1) ? 1 : -1;
  }
  case Formula::Kind::disjunction: {
    int a = eval_partial(f.lhs(), index, assign);
    if (a == 1) return 1;
    int b = eval_partial(f.rhs(), index, assign);
    if (b == 1) return 1;
    return (a == 0 && b == 0) ? 0 : -1;
  }
  case Formula::Kind::implication: {
    int a = eval_partial(f.lhs(), index, assign);
    if (a == 0) return 1;
    int b = eval_partial(f.rhs(), index, assign);
    if (b == 1) return 1;
    return (a == 1 && b == 0) ? 0 : -1;
  }
  case Formula::Kind::biconditional: {
    int a = eval_partial(f.lhs(), index, assign);
    int b = eval_partial(f.rhs(), index, assign);
    if (a < 0 || b < 0) return -1;
    return a == b ? 1 : 0;
  }
  }
  return -1;
}

bool search(const std::vector<Formula> &formulas, const std::map<Atom, int> &index,
            std::vector<signed char> &assign, std::size_t next) {
  bool all_true = true;
  for (const Formula &f : formulas) {
    int v = eval_partial(f, index, assign);
    if (v == 0) return false;
    if (v < 0) all_true = false;
  }
  if (all_true) return true;
  while (next < assign.size() && assign[next] >= 0) ++next;
  if (next == assign.size()) return false; // fully assigned yet undetermined: impossible
  for (int v : {1, 0}) {
    assign[next] = static_cast<signed char>(v);
    if (search(formulas, index, assign, next + 1)) return true;
  }
  assign[next] = -1;
  return false;
}

} // namespace

Formula parse_formula(const std::string &text, const EventStructure &es) {
  Parser parser{text, es};
  return parser.parse();
}

bool satisfiable(const std::vector<Formula> &formulas, const Limits &limits) {
  std::set<Atom> atoms;
  for (const Formula &f : formulas) f.collect_atoms(atoms);
  if (atoms.size() > limits.max_atoms)
    throw Error(ErrorCode::atom_limit, "query involves " + std::to_string(atoms.size()) +
                                           " atoms, limit is " +
                                           std::to_string(limits.max_atoms));
  std::map<Atom, int> index;
  for (const Atom &a : atoms) index.emplace(a, static_cast<int>(index.size()));
  std::vector<signed char> assign(atoms.size(), -1);
  return search(formulas, index, assign, 0);
}

bool entails(const std::vector<Formula> &premises, const Formula &conclusion,
             const Limits &limits) {
  std::vector<Formula> set = premises;
  set.push_back(Formula::negation(conclusion));
  return !satisfiable(set, limits);
}

} // namespace ces

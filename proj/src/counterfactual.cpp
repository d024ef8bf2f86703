#include "ces/counterfactual.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <cctype>
#include <cstdint>

#include "ces/error.hpp"

namespace ces {

const char *belief_outcome_name(BeliefOutcome outcome) {
  switch (outcome) {
  case BeliefOutcome::valid:
    return "Valid";
  case BeliefOutcome::refuted:
    return "Refuted";
  case BeliefOutcome::undetermined:
    return "Undetermined";
  }
  return "?";
}

const char *trace_outcome_name(TraceOutcome outcome) {
  switch (outcome) {
  case TraceOutcome::all_hold:
    return "AllHold";
  case TraceOutcome::refuted_by:
    return "RefutedBy";
  case TraceOutcome::vacuous:
    return "Vacuous";
  }
  return "?";
}

namespace {

constexpr std::size_t level_rank(Level level) {
  switch (level) {
  case Level::meaning:
    return 0;
  case Level::existence:
    return 1;
  case Level::lawfulness:
    return 2;
  case Level::fact:
    return 3;
  }
  return 3;
}

// All inclusion-maximal subsets of `members` jointly satisfiable with
// `context` (which must itself be satisfiable). Masks are visited by
// descending popcount, so a mask dominated by an accepted one can be skipped
// and any surviving satisfiable mask is maximal.
std::vector<std::vector<std::size_t>> maximal_choices(const std::vector<Formula> &context,
                                                      const std::vector<Formula> &members,
                                                      const Limits &limits) {
  const std::size_t n = members.size();
  if (n == 0)
    return {{}};
  std::vector<std::uint32_t> masks(std::size_t{1} << n);
  for (std::size_t i = 0; i < masks.size(); ++i)
    masks[i] = static_cast<std::uint32_t>(i);
  std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa > pb : a < b;
  });

  std::vector<std::uint32_t> accepted;
  std::vector<std::vector<std::size_t>> out;
  std::vector<Formula> formulas;
  for (std::uint32_t mask : masks) {
    bool dominated = false;
    for (std::uint32_t a : accepted) {
      if ((mask & ~a) == 0) {
        dominated = true;
        break;
      }
    }
    if (dominated)
      continue;
    formulas = context;
    std::vector<std::size_t> picked;
    for (std::size_t bit = 0; bit < n; ++bit) {
      if (mask >> bit & 1u) {
        formulas.push_back(members[bit]);
        picked.push_back(bit);
      }
    }
    if (!satisfiable(formulas, limits))
      continue;
    accepted.push_back(mask);
    out.push_back(std::move(picked));
  }
  return out;
}

} // namespace

std::vector<PreferredSubset> preferred_subsets(const BeliefBase &base, const Formula &antecedent,
                                               const Limits &limits) {
  if (base.size() > limits.max_beliefs)
    throw Error(ErrorCode::subset_explosion,
                "belief base has " + std::to_string(base.size()) +
                    " beliefs; preference search supports at most " +
                    std::to_string(limits.max_beliefs));
  if (!satisfiable({antecedent}, limits))
    return {};

  std::array<std::vector<std::size_t>, 4> levels;
  for (std::size_t i = 0; i < base.size(); ++i)
    levels[level_rank(base[i].level)].push_back(i);

  struct Branch {
    std::vector<Formula> context;
    std::vector<std::size_t> retained;
  };
  std::vector<Branch> branches{{{antecedent}, {}}};
  for (const std::vector<std::size_t> &members : levels) {
    std::vector<Formula> member_formulas;
    member_formulas.reserve(members.size());
    for (std::size_t idx : members)
      member_formulas.push_back(base[idx].formula);
    std::vector<Branch> next;
    for (const Branch &branch : branches) {
      for (const std::vector<std::size_t> &choice :
           maximal_choices(branch.context, member_formulas, limits)) {
        Branch extended = branch;
        for (std::size_t j : choice) {
          extended.context.push_back(member_formulas[j]);
          extended.retained.push_back(members[j]);
        }
        next.push_back(std::move(extended));
      }
    }
    branches = std::move(next);
  }

  std::vector<PreferredSubset> out;
  out.reserve(branches.size());
  for (Branch &branch : branches) {
    PreferredSubset subset;
    subset.retained = std::move(branch.retained);
    std::sort(subset.retained.begin(), subset.retained.end());
    std::size_t next_kept = 0;
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (next_kept < subset.retained.size() && subset.retained[next_kept] == i)
        ++next_kept;
      else
        subset.rejected.push_back(i);
    }
    out.push_back(std::move(subset));
  }
  std::sort(out.begin(), out.end(), [](const PreferredSubset &a, const PreferredSubset &b) {
    return a.retained < b.retained;
  });
  return out;
}

Verdict validate_counterfactual(const BeliefBase &base, const CounterfactualQuery &query,
                                const Limits &limits) {
  Verdict verdict;
  verdict.counterfactual_flag =
      entails(base.formulas(), Formula::negation(query.antecedent), limits);
  verdict.preferred = preferred_subsets(base, query.antecedent, limits);

  bool all_support = true;
  for (std::size_t i = 0; i < verdict.preferred.size(); ++i) {
    std::vector<Formula> premises{query.antecedent};
    for (std::size_t idx : verdict.preferred[i].retained)
      premises.push_back(base[idx].formula);
    if (entails(premises, query.consequent, limits))
      verdict.supporting.push_back(i);
    else
      all_support = false;
    if (entails(premises, Formula::negation(query.consequent), limits))
      verdict.refuting.push_back(i);
  }
  // An unsatisfiable antecedent leaves no preferred subsets; the universal
  // reading then holds vacuously.
  if (!verdict.refuting.empty())
    verdict.outcome = BeliefOutcome::refuted;
  else if (all_support)
    verdict.outcome = BeliefOutcome::valid;
  else
    verdict.outcome = BeliefOutcome::undetermined;
  return verdict;
}

struct TracePredicate::Node {
  Kind kind;
  EventId first;
  EventId second;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

TracePredicate TracePredicate::first(EventId event) {
  return TracePredicate(
      std::make_shared<const Node>(Node{Kind::first, std::move(event), {}, nullptr, nullptr}));
}

TracePredicate TracePredicate::occurs(EventId event) {
  return TracePredicate(
      std::make_shared<const Node>(Node{Kind::occurs, std::move(event), {}, nullptr, nullptr}));
}

TracePredicate TracePredicate::before(EventId earlier, EventId later) {
  return TracePredicate(std::make_shared<const Node>(
      Node{Kind::before, std::move(earlier), std::move(later), nullptr, nullptr}));
}

TracePredicate TracePredicate::negation(TracePredicate operand) {
  return TracePredicate(std::make_shared<const Node>(
      Node{Kind::negation, {}, {}, std::move(operand.node_), nullptr}));
}

TracePredicate TracePredicate::conjunction(TracePredicate lhs, TracePredicate rhs) {
  return TracePredicate(std::make_shared<const Node>(
      Node{Kind::conjunction, {}, {}, std::move(lhs.node_), std::move(rhs.node_)}));
}

TracePredicate TracePredicate::disjunction(TracePredicate lhs, TracePredicate rhs) {
  return TracePredicate(std::make_shared<const Node>(
      Node{Kind::disjunction, {}, {}, std::move(lhs.node_), std::move(rhs.node_)}));
}

TracePredicate::Kind TracePredicate::kind() const { return node_->kind; }
const EventId &TracePredicate::event() const { return node_->first; }
const EventId &TracePredicate::second() const { return node_->second; }
TracePredicate TracePredicate::child() const { return TracePredicate(node_->lhs); }
TracePredicate TracePredicate::lhs() const { return TracePredicate(node_->lhs); }
TracePredicate TracePredicate::rhs() const { return TracePredicate(node_->rhs); }

namespace {

constexpr int pred_precedence(TracePredicate::Kind kind) {
  switch (kind) {
  case TracePredicate::Kind::disjunction:
    return 0;
  case TracePredicate::Kind::conjunction:
    return 1;
  case TracePredicate::Kind::negation:
    return 2;
  default:
    return 3;
  }
}

void print_pred(const TracePredicate &pred, int min_prec, std::string &out) {
  const int prec = pred_precedence(pred.kind());
  const bool parens = prec < min_prec;
  if (parens)
    out += '(';
  switch (pred.kind()) {
  case TracePredicate::Kind::first:
    out += "first(" + pred.event() + ")";
    break;
  case TracePredicate::Kind::occurs:
    out += "occurs(" + pred.event() + ")";
    break;
  case TracePredicate::Kind::before:
    out += "before(" + pred.event() + ", " + pred.second() + ")";
    break;
  case TracePredicate::Kind::negation:
    out += '!';
    print_pred(pred.child(), prec, out);
    break;
  case TracePredicate::Kind::conjunction:
    print_pred(pred.lhs(), prec, out);
    out += " & ";
    print_pred(pred.rhs(), prec + 1, out);
    break;
  case TracePredicate::Kind::disjunction:
    print_pred(pred.lhs(), prec, out);
    out += " | ";
    print_pred(pred.rhs(), prec + 1, out);
    break;
  }
  if (parens)
    out += ')';
}

struct PredicateParser {
  const std::string &text;
  const EventStructure &es;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string &message) const {
    throw Error(ErrorCode::syntax, message + " at position " + std::to_string(pos) +
                                       " in trace predicate \"" + text + "\"");
  }

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_space();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::string identifier() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                 text[pos] == '_'))
      ++pos;
    return text.substr(start, pos - start);
  }

  // Argument ids may contain any id characters; read up to ',' or ')'.
  EventId argument() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != ',' && text[pos] != ')')
      ++pos;
    std::size_t end = pos;
    while (end > start && std::isspace(static_cast<unsigned char>(text[end - 1])))
      --end;
    EventId id = text.substr(start, end - start);
    if (id.empty())
      fail("expected an event id");
    if (!es.has_event(id))
      throw Error(ErrorCode::unknown_event,
                  "unknown event '" + id + "' in trace predicate \"" + text + "\"");
    return id;
  }

  TracePredicate parse() {
    TracePredicate result = disjunction();
    skip_space();
    if (pos != text.size())
      fail("unexpected trailing input");
    return result;
  }

  TracePredicate disjunction() {
    TracePredicate lhs = conjunction();
    while (eat('|'))
      lhs = TracePredicate::disjunction(lhs, conjunction());
    return lhs;
  }

  TracePredicate conjunction() {
    TracePredicate lhs = unary();
    while (eat('&'))
      lhs = TracePredicate::conjunction(lhs, unary());
    return lhs;
  }

  TracePredicate unary() {
    if (eat('!'))
      return TracePredicate::negation(unary());
    if (eat('(')) {
      TracePredicate inner = disjunction();
      if (!eat(')'))
        fail("expected ')'");
      return inner;
    }
    std::string keyword = identifier();
    if (keyword.empty())
      fail("expected first(...), occurs(...) or before(...)");
    if (!eat('('))
      fail("expected '(' after '" + keyword + "'");
    if (keyword == "first") {
      EventId id = argument();
      if (!eat(')'))
        fail("expected ')'");
      return TracePredicate::first(std::move(id));
    }
    if (keyword == "occurs") {
      EventId id = argument();
      if (!eat(')'))
        fail("expected ')'");
      return TracePredicate::occurs(std::move(id));
    }
    if (keyword == "before") {
      EventId earlier = argument();
      if (!eat(','))
        fail("expected ',' in before(...)");
      EventId later = argument();
      if (!eat(')'))
        fail("expected ')'");
      return TracePredicate::before(std::move(earlier), std::move(later));
    }
    fail("unknown predicate '" + keyword + "'");
  }
};

} // namespace

std::string TracePredicate::to_string() const {
  std::string out;
  print_pred(*this, 0, out);
  return out;
}

TracePredicate parse_trace_predicate(const std::string &text, const EventStructure &es) {
  PredicateParser parser{text, es};
  return parser.parse();
}

bool eval_trace_predicate(const TracePredicate &pred, const Trace &trace) {
  switch (pred.kind()) {
  case TracePredicate::Kind::first:
    return !trace.empty() && trace.front() == pred.event();
  case TracePredicate::Kind::occurs:
    return std::find(trace.begin(), trace.end(), pred.event()) != trace.end();
  case TracePredicate::Kind::before: {
    auto earlier = std::find(trace.begin(), trace.end(), pred.event());
    auto later = std::find(trace.begin(), trace.end(), pred.second());
    return earlier != trace.end() && later != trace.end() && earlier < later;
  }
  case TracePredicate::Kind::negation:
    return !eval_trace_predicate(pred.child(), trace);
  case TracePredicate::Kind::conjunction:
    return eval_trace_predicate(pred.lhs(), trace) && eval_trace_predicate(pred.rhs(), trace);
  case TracePredicate::Kind::disjunction:
    return eval_trace_predicate(pred.lhs(), trace) || eval_trace_predicate(pred.rhs(), trace);
  }
  assert(false && "unreachable");
  return false;
}

TraceVerdict check_over_traces(const EventStructure &es, const TracePredicate &antecedent,
                               const TracePredicate &consequent, const Limits &limits) {
  TraceVerdict verdict;
  const std::vector<Trace> traces = maximal_traces(es, limits);
  verdict.total_maximal = traces.size();
  for (const Trace &trace : traces) {
    if (eval_trace_predicate(antecedent, trace))
      verdict.antecedent_traces.push_back(trace);
  }
  if (verdict.antecedent_traces.empty()) {
    verdict.outcome = TraceOutcome::vacuous;
    return verdict;
  }
  verdict.outcome = TraceOutcome::all_hold;
  for (const Trace &trace : verdict.antecedent_traces) {
    if (!eval_trace_predicate(consequent, trace)) {
      verdict.outcome = TraceOutcome::refuted_by;
      verdict.witness = trace;
      break;
    }
  }
  return verdict;
}

} // namespace ces

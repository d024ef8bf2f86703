// Command-line front end: model validation, relation queries, behaviour
// enumeration, simulation, diagnosis and counterfactual evaluation.
//
// Exit codes: 0 = ok / Valid / AllHold; 1 = Refuted / RefutedBy / invalid
// model; 2 = Undetermined / Vacuous; 3 = usage or input error.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ces/behavior.hpp"
#include "ces/counterfactual.hpp"
#include "ces/diagnosis.hpp"
#include "ces/error.hpp"
#include "ces/model_io.hpp"

using nlohmann::json;

namespace {

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot read file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int exit_code_for(const ces::Error &error) {
  switch (error.code()) {
  case ces::ErrorCode::causality_cycle:
  case ces::ErrorCode::self_conflict:
    return 1; // well-formed input describing an invalid model
  default:
    return 3;
  }
}

int exit_code_for(ces::BeliefOutcome outcome) {
  switch (outcome) {
  case ces::BeliefOutcome::valid:
    return 0;
  case ces::BeliefOutcome::refuted:
    return 1;
  case ces::BeliefOutcome::undetermined:
    return 2;
  }
  return 3;
}

int exit_code_for(ces::TraceOutcome outcome) {
  switch (outcome) {
  case ces::TraceOutcome::all_hold:
    return 0;
  case ces::TraceOutcome::refuted_by:
    return 1;
  case ces::TraceOutcome::vacuous:
    return 2;
  }
  return 3;
}

std::string join(const std::vector<std::string> &items, const std::string &sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i)
      out += sep;
    out += items[i];
  }
  return out;
}

std::string config_text(const ces::Configuration &config) {
  return "{" + join({config.begin(), config.end()}, ",") + "}";
}

std::string trace_text(const ces::Trace &trace) {
  return trace.empty() ? std::string("(empty)") : join(trace, " ");
}

json string_array(const std::vector<std::string> &items) {
  json arr = json::array();
  for (const std::string &item : items)
    arr.push_back(item);
  return arr;
}

json config_json(const ces::Configuration &config) {
  return string_array({config.begin(), config.end()});
}

void emit(const json &doc) { std::cout << doc.dump(2) << "\n"; }

struct CommonArgs {
  std::string model_path;
  std::string format = "text";

  bool is_json() const { return format == "json"; }
};

ces::EventStructure load_model(const CommonArgs &args, ces::ModelDocument *doc_out = nullptr) {
  ces::ModelDocument doc = ces::parse_model(slurp(args.model_path));
  if (doc_out)
    *doc_out = doc;
  return doc.build();
}

void add_common(CLI::App *cmd, CommonArgs &args) {
  cmd->add_option("model", args.model_path, "model file (.ces)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--format", args.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
}

// ---------------------------------------------------------------- validate

int run_validate(const CommonArgs &args) {
  ces::ModelDocument doc;
  ces::EventStructure es = load_model(args, &doc);
  if (args.is_json()) {
    json out;
    out["name"] = doc.name;
    out["valid"] = true;
    out["events"] = es.size();
    out["cause_pairs"] = es.immediate_causes().size();
    out["conflict_pairs"] = es.immediate_conflicts().size();
    out["closed_conflict_pairs"] = es.conflict_pairs().size();
    out["atoms"] = string_array(es.exogenous_atoms());
    emit(out);
  } else {
    std::cout << "ok: " << doc.name << " (events=" << es.size()
              << " causes=" << es.immediate_causes().size()
              << " conflicts=" << es.immediate_conflicts().size()
              << " atoms=" << es.exogenous_atoms().size() << ")\n";
  }
  return 0;
}

// --------------------------------------------------------------- relations

int run_relations(const CommonArgs &args, const std::vector<std::string> &pair) {
  ces::EventStructure es = load_model(args);
  if (pair.size() == 1)
    throw ces::Error(ces::ErrorCode::syntax, "relations wants either no event ids or two");
  if (pair.size() == 2) {
    ces::Relation r = es.relation(pair[0], pair[1]);
    if (args.is_json()) {
      emit(json{{"a", pair[0]}, {"b", pair[1]}, {"relation", ces::relation_name(r)}});
    } else {
      std::cout << "relation(" << pair[0] << ", " << pair[1] << ") = " << ces::relation_name(r)
                << "\n";
    }
    return 0;
  }
  json pairs = json::array();
  for (std::size_t i = 0; i < es.size(); ++i) {
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      ces::Relation r = es.relation_at(static_cast<int>(i), static_cast<int>(j));
      if (args.is_json())
        pairs.push_back(
            {{"a", es.id_at(static_cast<int>(i))}, {"b", es.id_at(static_cast<int>(j))},
             {"relation", ces::relation_name(r)}});
      else
        std::cout << es.id_at(static_cast<int>(i)) << " " << es.id_at(static_cast<int>(j))
                  << " " << ces::relation_name(r) << "\n";
    }
  }
  if (args.is_json())
    emit(json{{"pairs", pairs}});
  return 0;
}

// ------------------------------------------------------------------ traces

int run_traces(const CommonArgs &args, bool maximal_only) {
  ces::EventStructure es = load_model(args);
  std::vector<ces::Trace> traces;
  if (maximal_only) {
    traces = ces::maximal_traces(es);
  } else {
    for (const ces::Configuration &config : ces::all_configurations(es)) {
      std::vector<ces::Trace> lin = ces::linearizations(es, config);
      traces.insert(traces.end(), lin.begin(), lin.end());
    }
    std::sort(traces.begin(), traces.end());
  }
  if (args.is_json()) {
    json arr = json::array();
    for (const ces::Trace &trace : traces)
      arr.push_back(string_array(trace));
    emit(json{{"maximal", maximal_only}, {"count", traces.size()}, {"traces", arr}});
  } else {
    for (const ces::Trace &trace : traces)
      std::cout << trace_text(trace) << "\n";
  }
  return 0;
}

// --------------------------------------------------------------------- lts

int run_lts(const CommonArgs &args) {
  ces::EventStructure es = load_model(args);
  ces::TransitionSystem lts = ces::interleaving_lts(es);
  if (args.is_json()) {
    json states = json::array();
    for (const ces::Configuration &state : lts.states)
      states.push_back(config_json(state));
    json transitions = json::array();
    for (const ces::Transition &t : lts.transitions)
      transitions.push_back({{"from", config_json(t.from)},
                             {"event", t.event},
                             {"label", t.label},
                             {"to", config_json(t.to)}});
    emit(json{{"initial", config_json(lts.initial)},
              {"states", states},
              {"transitions", transitions}});
  } else {
    std::cout << "states: " << lts.states.size() << "\n";
    for (const ces::Configuration &state : lts.states)
      std::cout << "  " << config_text(state) << "\n";
    std::cout << "transitions: " << lts.transitions.size() << "\n";
    for (const ces::Transition &t : lts.transitions)
      std::cout << "  " << config_text(t.from) << " --" << t.event << "--> "
                << config_text(t.to) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- simulate

int run_simulate(const CommonArgs &args, std::uint64_t seed, std::size_t max_steps) {
  ces::EventStructure es = load_model(args);
  ces::Trace trace = ces::simulate(es, seed, max_steps);
  if (args.is_json())
    emit(json{{"seed", seed}, {"max_steps", max_steps}, {"trace", string_array(trace)}});
  else
    std::cout << trace_text(trace) << "\n";
  return 0;
}

// ------------------------------------------------------------------ degree

int run_degree(const CommonArgs &args) {
  ces::EventStructure es = load_model(args);
  std::size_t degree = ces::degree_of_concurrency(es);
  if (args.is_json())
    emit(json{{"degree", degree}});
  else
    std::cout << "degree of concurrency: " << degree << "\n";
  return 0;
}

// ------------------------------------------------- verdict rendering bits

json belief_json(const ces::BeliefBase &base, std::size_t index) {
  const ces::Belief &belief = base[index];
  return {{"formula", belief.formula.to_string()},
          {"level", ces::level_name(belief.level)},
          {"origin", ces::origin_name(belief.origin)}};
}

std::string belief_text(const ces::BeliefBase &base, std::size_t index) {
  const ces::Belief &belief = base[index];
  return std::string(ces::level_name(belief.level)) + " (" +
         ces::origin_name(belief.origin) + "): " + belief.formula.to_string();
}

json verdict_json(const ces::Verdict &verdict, const ces::BeliefBase &base) {
  json subsets = json::array();
  for (std::size_t i = 0; i < verdict.preferred.size(); ++i) {
    const ces::PreferredSubset &subset = verdict.preferred[i];
    json retained = json::array(), rejected = json::array();
    for (std::size_t idx : subset.retained)
      retained.push_back(belief_json(base, idx));
    for (std::size_t idx : subset.rejected)
      rejected.push_back(belief_json(base, idx));
    bool supports = std::find(verdict.supporting.begin(), verdict.supporting.end(), i) !=
                    verdict.supporting.end();
    bool refutes =
        std::find(verdict.refuting.begin(), verdict.refuting.end(), i) != verdict.refuting.end();
    subsets.push_back({{"retained", retained},
                       {"rejected", rejected},
                       {"supports", supports},
                       {"refutes", refutes}});
  }
  return {{"verdict", ces::belief_outcome_name(verdict.outcome)},
          {"counterfactual", verdict.counterfactual_flag},
          {"preferred_subsets", subsets}};
}

void print_verdict_text(const ces::Verdict &verdict, const ces::BeliefBase &base) {
  std::cout << "beliefs: " << base.size() << "\n";
  std::cout << "counterfactual: " << (verdict.counterfactual_flag ? "yes" : "no") << "\n";
  std::cout << "verdict: " << ces::belief_outcome_name(verdict.outcome) << "\n";
  std::cout << "preferred subsets: " << verdict.preferred.size() << "\n";
  for (std::size_t i = 0; i < verdict.preferred.size(); ++i) {
    const ces::PreferredSubset &subset = verdict.preferred[i];
    bool supports = std::find(verdict.supporting.begin(), verdict.supporting.end(), i) !=
                    verdict.supporting.end();
    bool refutes =
        std::find(verdict.refuting.begin(), verdict.refuting.end(), i) != verdict.refuting.end();
    const char *note = supports ? "supports the consequent"
                      : refutes ? "refutes the consequent"
                                : "inconclusive";
    std::cout << "subset " << i + 1 << " (" << note << "):\n";
    std::cout << "  retained:\n";
    for (std::size_t idx : subset.retained)
      std::cout << "    " << belief_text(base, idx) << "\n";
    std::cout << "  rejected:\n";
    for (std::size_t idx : subset.rejected)
      std::cout << "    " << belief_text(base, idx) << "\n";
  }
}

json trace_verdict_json(const ces::TraceVerdict &verdict) {
  json out;
  out["verdict"] = ces::trace_outcome_name(verdict.outcome);
  out["total_maximal_traces"] = verdict.total_maximal;
  json arr = json::array();
  for (const ces::Trace &trace : verdict.antecedent_traces)
    arr.push_back(string_array(trace));
  out["antecedent_traces"] = arr;
  if (verdict.witness)
    out["witness"] = string_array(*verdict.witness);
  return out;
}

void print_trace_verdict_text(const ces::TraceVerdict &verdict) {
  std::cout << "maximal traces: " << verdict.total_maximal << " ("
            << verdict.antecedent_traces.size() << " satisfy the antecedent)\n";
  std::cout << "verdict: " << ces::trace_outcome_name(verdict.outcome) << "\n";
  if (verdict.witness)
    std::cout << "witness: " << trace_text(*verdict.witness) << "\n";
}

// ---------------------------------------------------------------- diagnose

int run_diagnose(const CommonArgs &args, const std::string &trace_path,
                 const std::string &error_label) {
  ces::EventStructure es = load_model(args);
  ces::Trace trace = ces::parse_trace(slurp(trace_path), es);
  ces::DiagnosisReport report = ces::diagnose(es, trace, error_label);

  if (args.is_json()) {
    json choice_points = json::array();
    for (const ces::ChoicePoint &point : report.choice_points)
      choice_points.push_back({{"prefix", config_json(point.prefix)},
                               {"chosen", point.chosen},
                               {"alternatives", string_array(point.alternatives)}});
    json counterfactuals = json::array();
    for (const ces::AvoidanceCounterfactual &avoidance : report.avoidance_counterfactuals) {
      json entry;
      entry["alternative"] = avoidance.alternative;
      entry["chosen"] = avoidance.chosen;
      entry["trace_engine"] = trace_verdict_json(avoidance.trace_verdict);
      entry["belief_engine"] = verdict_json(avoidance.belief_verdict, report.belief_base);
      counterfactuals.push_back(entry);
    }
    emit(json{{"error_event", report.error_event},
              {"history", config_json(report.history)},
              {"choice_points", choice_points},
              {"counterfactuals", counterfactuals}});
  } else {
    std::cout << "error event: " << report.error_event << " (\""
              << es.label_of(report.error_event) << "\")\n";
    std::cout << "causal history: "
              << join({report.history.begin(), report.history.end()}, " ") << "\n";
    std::cout << "choice points: " << report.choice_points.size() << "\n";
    for (const ces::ChoicePoint &point : report.choice_points)
      std::cout << "  at " << config_text(point.prefix) << ": chose " << point.chosen
                << ", alternatives: " << join(point.alternatives, " ") << "\n";
    std::cout << "avoidance counterfactuals: " << report.avoidance_counterfactuals.size()
              << "\n";
    for (const ces::AvoidanceCounterfactual &avoidance : report.avoidance_counterfactuals) {
      std::cout << "  had " << avoidance.alternative << " occurred instead of "
                << avoidance.chosen << ":\n";
      std::cout << "    trace engine: occurs(" << avoidance.alternative << ") => !occurs("
                << report.error_event
                << "): " << ces::trace_outcome_name(avoidance.trace_verdict.outcome);
      if (avoidance.trace_verdict.witness)
        std::cout << " (witness: " << trace_text(*avoidance.trace_verdict.witness) << ")";
      std::cout << "\n";
      std::cout << "    belief engine: occ(" << avoidance.alternative << ") => !occ("
                << report.error_event
                << "): " << ces::belief_outcome_name(avoidance.belief_verdict.outcome) << "\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------- counterfactual

int run_counterfactual(const CommonArgs &args, const std::string &query_path,
                       const std::string &trace_path, const std::string &beliefs_path,
                       const std::string &world) {
  ces::EventStructure es = load_model(args);
  ces::QueryDocument query = ces::parse_query(slurp(query_path), es);

  if (query.engine == ces::Engine::trace) {
    ces::TraceVerdict verdict =
        ces::check_over_traces(es, query.trace_antecedent(es), query.trace_consequent(es));
    if (args.is_json()) {
      json out = trace_verdict_json(verdict);
      out["engine"] = "trace";
      out["antecedent"] = query.antecedent_text;
      out["consequent"] = query.consequent_text;
      emit(out);
    } else {
      std::cout << "engine: trace\n";
      std::cout << "antecedent: " << query.antecedent_text << "\n";
      std::cout << "consequent: " << query.consequent_text << "\n";
      print_trace_verdict_text(verdict);
    }
    return exit_code_for(verdict.outcome);
  }

  // Belief engine: facts observed in the trace, then the user's beliefs,
  // then the laws the model itself imposes.
  ces::BeliefBase base;
  if (!trace_path.empty()) {
    ces::Trace trace = ces::parse_trace(slurp(trace_path), es);
    ces::WorldMode mode = world == "open" ? ces::WorldMode::open : ces::WorldMode::closed;
    base = ces::facts_from_trace(es, trace, mode);
  }
  if (!beliefs_path.empty())
    base.merge(ces::parse_beliefs(slurp(beliefs_path), es));
  base.merge(ces::laws_from_model(es));

  ces::CounterfactualQuery cq = query.belief_query(es);
  ces::Verdict verdict = ces::validate_counterfactual(base, cq);
  if (args.is_json()) {
    json out = verdict_json(verdict, base);
    out["engine"] = "belief";
    out["antecedent"] = query.antecedent_text;
    out["consequent"] = query.consequent_text;
    emit(out);
  } else {
    std::cout << "engine: belief\n";
    std::cout << "antecedent: " << query.antecedent_text << "\n";
    std::cout << "consequent: " << query.consequent_text << "\n";
    print_verdict_text(verdict, base);
  }
  return exit_code_for(verdict.outcome);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"labelled prime event structures: behaviour, counterfactuals, diagnosis"};
  app.require_subcommand(1);

  CommonArgs args;
  std::vector<std::string> relation_pair;
  bool maximal_only = false;
  std::uint64_t seed = 0;
  std::size_t max_steps = 1000;
  std::string trace_path, beliefs_path, query_path, error_label;
  std::string world = "closed";

  std::function<int()> action;

  CLI::App *validate = app.add_subcommand("validate", "check the event structure axioms");
  add_common(validate, args);
  validate->callback([&] { action = [&] { return run_validate(args); }; });

  CLI::App *relations =
      app.add_subcommand("relations", "relation of one event pair, or of all pairs");
  add_common(relations, args);
  relations->add_option("events", relation_pair, "two event ids")->expected(0, 2);
  relations->callback([&] { action = [&] { return run_relations(args, relation_pair); }; });

  CLI::App *traces = app.add_subcommand("traces", "enumerate conformant traces");
  add_common(traces, args);
  traces->add_flag("--maximal", maximal_only, "only traces of maximal configurations");
  traces->callback([&] { action = [&] { return run_traces(args, maximal_only); }; });

  CLI::App *lts = app.add_subcommand("lts", "interleaving transition system");
  add_common(lts, args);
  lts->callback([&] { action = [&] { return run_lts(args); }; });

  CLI::App *simulate = app.add_subcommand("simulate", "one random conformant run");
  add_common(simulate, args);
  simulate->add_option("--seed", seed, "random seed");
  simulate->add_option("--max-steps", max_steps, "stop after this many events");
  simulate->callback([&] { action = [&] { return run_simulate(args, seed, max_steps); }; });

  CLI::App *degree = app.add_subcommand("degree", "degree of concurrency");
  add_common(degree, args);
  degree->callback([&] { action = [&] { return run_degree(args); }; });

  CLI::App *diagnose = app.add_subcommand("diagnose", "diagnose an observed failing trace");
  add_common(diagnose, args);
  diagnose->add_option("trace", trace_path, "trace file")->required()->check(CLI::ExistingFile);
  diagnose->add_option("--error-label", error_label, "label of the error event")->required();
  diagnose->callback(
      [&] { action = [&] { return run_diagnose(args, trace_path, error_label); }; });

  CLI::App *counterfactual =
      app.add_subcommand("counterfactual", "evaluate a counterfactual query");
  add_common(counterfactual, args);
  counterfactual->add_option("query", query_path, "query file")
      ->required()
      ->check(CLI::ExistingFile);
  counterfactual->add_option("--trace", trace_path, "observed trace for fact extraction")
      ->check(CLI::ExistingFile);
  counterfactual->add_option("--beliefs", beliefs_path, "extra belief file")
      ->check(CLI::ExistingFile);
  counterfactual->add_option("--world", world, "fact extraction mode")
      ->check(CLI::IsMember({"open", "closed"}));
  counterfactual->callback([&] {
    action = [&] {
      return run_counterfactual(args, query_path, trace_path, beliefs_path, world);
    };
  });

  try {
    app.parse(argc, argv);
    return action();
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  } catch (const ces::Error &e) {
    std::cerr << "error: " << ces::error_code_name(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

#include "ces/model_io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

#include "ces/error.hpp"
#include "ces/formula.hpp"

namespace ces {

namespace {

// Cuts a `#` comment, ignoring `#` inside a quoted label.
std::string strip_comment(const std::string &line) {
  bool in_quote = false;
  bool escaped = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_quote) {
      if (escaped)
        escaped = false;
      else if (c == '\\')
        escaped = true;
      else if (c == '"')
        in_quote = false;
    } else if (c == '"') {
      in_quote = true;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

std::string trim(const std::string &text) {
  std::size_t begin = 0, end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin])))
    ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1])))
    --end;
  return text.substr(begin, end - begin);
}

// Iterates the lines of a document with comments stripped and `\r` removed.
struct LineReader {
  std::istringstream in;
  int line_no = 0;

  explicit LineReader(const std::string &text) : in(text) {}

  bool next(std::string &out) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_no;
      if (!raw.empty() && raw.back() == '\r')
        raw.pop_back();
      out = strip_comment(raw);
      if (trim(out).empty())
        continue;
      return true;
    }
    return false;
  }
};

struct LineScanner {
  const std::string &line;
  int line_no;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos])))
      ++pos;
  }

  bool done() {
    skip_space();
    return pos == line.size();
  }

  std::string token() {
    skip_space();
    std::size_t start = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos])))
      ++pos;
    return line.substr(start, pos - start);
  }

  std::string rest() {
    skip_space();
    return trim(line.substr(pos));
  }

  std::string quoted(const char *what) {
    skip_space();
    if (pos == line.size() || line[pos] != '"')
      throw Error(ErrorCode::syntax, std::string("expected a quoted ") + what, line_no);
    ++pos;
    std::string out;
    while (pos < line.size()) {
      char c = line[pos++];
      if (c == '\\' && pos < line.size()) {
        out += line[pos++];
      } else if (c == '"') {
        return out;
      } else {
        out += c;
      }
    }
    throw Error(ErrorCode::syntax, std::string("unterminated quoted ") + what, line_no);
  }
};

} // namespace

EventStructure ModelDocument::build(const Limits &limits) const {
  return EventStructure::build(events, cause_pairs, conflict_pairs, atoms, limits);
}

ModelDocument parse_model(const std::string &text) {
  ModelDocument doc;
  LineReader reader(text);
  std::string line;
  bool have_header = false;
  std::map<EventId, int> declared;       // id -> declaring line
  std::vector<std::pair<EventId, int>> references;

  while (reader.next(line)) {
    LineScanner scan{line, reader.line_no};
    std::string directive = scan.token();
    if (!have_header) {
      if (directive != "es")
        throw Error(ErrorCode::syntax, "expected 'es NAME' as the first directive",
                    reader.line_no);
      doc.name = scan.rest();
      if (doc.name.empty())
        throw Error(ErrorCode::syntax, "expected a model name after 'es'", reader.line_no);
      have_header = true;
      continue;
    }
    if (directive == "es") {
      throw Error(ErrorCode::syntax, "duplicate 'es' header", reader.line_no);
    } else if (directive == "event") {
      EventId id = scan.token();
      if (!valid_event_id(id))
        throw Error(ErrorCode::syntax, "expected an event id after 'event'", reader.line_no);
      std::string label = scan.quoted("label");
      if (!scan.done())
        throw Error(ErrorCode::syntax, "unexpected input after the label", reader.line_no);
      auto [it, inserted] = declared.emplace(id, reader.line_no);
      if (!inserted)
        throw Error(ErrorCode::duplicate_event,
                    "event '" + id + "' already declared on line " + std::to_string(it->second),
                    reader.line_no);
      doc.events.push_back({id, label});
    } else if (directive == "cause" || directive == "conflict") {
      EventId a = scan.token();
      EventId b = scan.token();
      if (a.empty() || b.empty() || !scan.done())
        throw Error(ErrorCode::syntax, "expected two event ids after '" + directive + "'",
                    reader.line_no);
      references.push_back({a, reader.line_no});
      references.push_back({b, reader.line_no});
      if (directive == "cause")
        doc.cause_pairs.push_back({a, b});
      else
        doc.conflict_pairs.push_back({a, b});
    } else if (directive == "atom") {
      std::string name = scan.token();
      if (name.empty() || !scan.done())
        throw Error(ErrorCode::syntax, "expected one atom name after 'atom'", reader.line_no);
      if (!valid_atom_name(name))
        throw Error(ErrorCode::syntax,
                    "invalid atom name '" + name +
                        "' (want letters, digits or '_', not starting with a digit, and not a "
                        "reserved word)",
                    reader.line_no);
      if (std::find(doc.atoms.begin(), doc.atoms.end(), name) == doc.atoms.end())
        doc.atoms.push_back(name);
    } else {
      throw Error(ErrorCode::syntax, "unknown directive '" + directive + "'", reader.line_no);
    }
  }
  if (!have_header)
    throw Error(ErrorCode::syntax, "missing 'es NAME' header");
  for (const auto &[id, line_no] : references) {
    if (!declared.count(id))
      throw Error(ErrorCode::unknown_event, "unknown event '" + id + "'", line_no);
  }
  return doc;
}

namespace {

std::string quote_label(const std::string &label) {
  std::string out = "\"";
  for (char c : label) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

} // namespace

std::string serialize_model(const ModelDocument &doc) {
  std::ostringstream out;
  out << "es " << doc.name << "\n";

  std::vector<LabelledEvent> events = doc.events;
  std::sort(events.begin(), events.end(),
            [](const LabelledEvent &a, const LabelledEvent &b) { return a.id < b.id; });
  std::vector<std::string> atoms = doc.atoms;
  std::sort(atoms.begin(), atoms.end());
  std::vector<IdPair> causes = doc.cause_pairs;
  std::sort(causes.begin(), causes.end());
  std::vector<IdPair> conflicts = doc.conflict_pairs;
  std::sort(conflicts.begin(), conflicts.end());

  if (!events.empty())
    out << "\n";
  for (const LabelledEvent &event : events)
    out << "event " << event.id << " " << quote_label(event.label) << "\n";
  if (!atoms.empty())
    out << "\n";
  for (const std::string &atom : atoms)
    out << "atom " << atom << "\n";
  if (!causes.empty())
    out << "\n";
  for (const IdPair &pair : causes)
    out << "cause " << pair.first << " " << pair.second << "\n";
  if (!conflicts.empty())
    out << "\n";
  for (const IdPair &pair : conflicts)
    out << "conflict " << pair.first << " " << pair.second << "\n";
  return out.str();
}

Trace parse_trace(const std::string &text, const EventStructure &es) {
  Trace trace;
  LineReader reader(text);
  std::string line;
  bool have_header = false;
  while (reader.next(line)) {
    LineScanner scan{line, reader.line_no};
    while (!scan.done()) {
      std::string token = scan.token();
      if (!have_header) {
        if (token != "trace")
          throw Error(ErrorCode::syntax, "expected the 'trace' keyword first", reader.line_no);
        have_header = true;
        continue;
      }
      if (!es.has_event(token))
        throw Error(ErrorCode::unknown_event, "unknown event '" + token + "'", reader.line_no);
      trace.push_back(token);
    }
  }
  if (!have_header)
    throw Error(ErrorCode::syntax, "missing 'trace' header");
  return trace;
}

namespace {

std::optional<Level> level_from_word(const std::string &word) {
  if (word == "fact")
    return Level::fact;
  if (word == "law")
    return Level::lawfulness;
  if (word == "existence")
    return Level::existence;
  if (word == "meaning")
    return Level::meaning;
  return std::nullopt;
}

// Reraise a formula or predicate error with the line it came from.
[[noreturn]] void rethrow_at(const Error &error, int line_no) {
  throw Error(error.code(), error.what(), error.line() > 0 ? error.line() : line_no);
}

} // namespace

BeliefBase parse_beliefs(const std::string &text, const EventStructure &es) {
  BeliefBase base;
  LineReader reader(text);
  std::string line;
  while (reader.next(line)) {
    LineScanner scan{line, reader.line_no};
    std::string directive = scan.token();
    if (directive != "belief")
      throw Error(ErrorCode::syntax, "expected 'belief <level> <formula>'", reader.line_no);
    std::string level_word = scan.token();
    std::optional<Level> level = level_from_word(level_word);
    if (!level)
      throw Error(ErrorCode::syntax,
                  "unknown level '" + level_word + "' (want fact, law, existence or meaning)",
                  reader.line_no);
    std::string formula_text = scan.rest();
    if (formula_text.empty())
      throw Error(ErrorCode::syntax, "expected a formula after the level", reader.line_no);
    try {
      base.add({parse_formula(formula_text, es), *level, Origin::user});
    } catch (const Error &error) {
      rethrow_at(error, reader.line_no);
    }
  }
  return base;
}

CounterfactualQuery QueryDocument::belief_query(const EventStructure &es) const {
  return {parse_formula(antecedent_text, es), parse_formula(consequent_text, es)};
}

TracePredicate QueryDocument::trace_antecedent(const EventStructure &es) const {
  return parse_trace_predicate(antecedent_text, es);
}

TracePredicate QueryDocument::trace_consequent(const EventStructure &es) const {
  return parse_trace_predicate(consequent_text, es);
}

QueryDocument parse_query(const std::string &text, const EventStructure &es) {
  QueryDocument doc;
  LineReader reader(text);
  std::string line;
  bool have_header = false;
  std::optional<Engine> engine;
  std::optional<std::pair<std::string, int>> antecedent, consequent;

  while (reader.next(line)) {
    LineScanner scan{line, reader.line_no};
    std::string directive = scan.token();
    if (!have_header) {
      if (directive != "counterfactual" || !scan.done())
        throw Error(ErrorCode::syntax, "expected 'counterfactual' as the first directive",
                    reader.line_no);
      have_header = true;
      continue;
    }
    if (directive == "antecedent" || directive == "consequent") {
      auto &slot = directive == "antecedent" ? antecedent : consequent;
      if (slot)
        throw Error(ErrorCode::syntax, "duplicate '" + directive + "' line", reader.line_no);
      std::string body = scan.rest();
      if (body.empty())
        throw Error(ErrorCode::syntax, "expected a formula or predicate after '" + directive + "'",
                    reader.line_no);
      slot = {body, reader.line_no};
    } else if (directive == "engine") {
      std::string which = scan.token();
      if (engine)
        throw Error(ErrorCode::syntax, "duplicate 'engine' line", reader.line_no);
      if (which == "belief")
        engine = Engine::belief;
      else if (which == "trace")
        engine = Engine::trace;
      else
        throw Error(ErrorCode::syntax, "unknown engine '" + which + "' (want belief or trace)",
                    reader.line_no);
      if (!scan.done())
        throw Error(ErrorCode::syntax, "unexpected input after the engine name", reader.line_no);
    } else {
      throw Error(ErrorCode::syntax, "unknown directive '" + directive + "'", reader.line_no);
    }
  }
  if (!have_header)
    throw Error(ErrorCode::syntax, "missing 'counterfactual' header");
  if (!engine)
    throw Error(ErrorCode::syntax, "missing 'engine belief|trace' line");
  if (!antecedent)
    throw Error(ErrorCode::syntax, "missing 'antecedent' line");
  if (!consequent)
    throw Error(ErrorCode::syntax, "missing 'consequent' line");

  doc.engine = *engine;
  doc.antecedent_text = antecedent->first;
  doc.consequent_text = consequent->first;
  // Validate both sides now so errors carry the file's line numbers.
  try {
    if (doc.engine == Engine::belief)
      parse_formula(doc.antecedent_text, es);
    else
      parse_trace_predicate(doc.antecedent_text, es);
  } catch (const Error &error) {
    rethrow_at(error, antecedent->second);
  }
  try {
    if (doc.engine == Engine::belief)
      parse_formula(doc.consequent_text, es);
    else
      parse_trace_predicate(doc.consequent_text, es);
  } catch (const Error &error) {
    rethrow_at(error, consequent->second);
  }
  return doc;
}

} // namespace ces

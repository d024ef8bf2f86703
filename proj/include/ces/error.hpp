#pragma once

#include <stdexcept>
#include <string>

namespace ces {

enum class ErrorCode {
  unknown_event,
  duplicate_event,
  causality_cycle,
  self_conflict,
  size_limit,
  invalid_configuration,
  non_conformant_trace,
  syntax,
  unknown_atom,
  atom_limit,
  subset_explosion,
  no_error_event,
  ambiguous_error_label,
};

const char *error_code_name(ErrorCode code);

// All library failures are reported through this type. `line` is nonzero for
// errors raised while parsing a text document.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        code_(code), line_(line) {}

  ErrorCode code() const { return code_; }
  int line() const { return line_; }

private:
  ErrorCode code_;
  int line_;
};

// Tunable bounds for the exhaustive algorithms. The defaults are sized for
// desk-scale models; every enumeration fails loudly when a bound is hit.
struct Limits {
  std::size_t max_events = 10000;       // events per structure
  std::size_t max_enumeration = 100000; // states, traces or search nodes
  std::size_t max_atoms = 24;           // propositional atoms per query
  std::size_t max_beliefs = 20;         // beliefs per base in subset search
};

} // namespace ces

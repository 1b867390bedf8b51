#pragma once

#include <stdexcept>
#include <string>

namespace ghm {

/// Malformed or inconsistent ontology records. The message names the offending record.
class OntologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition (inverted range, bad span, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable persisted state: store logs, model documents, dumps.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ghm

#pragma once

#include <stdexcept>
#include <string>

namespace dfsf {

// Bad user input: flags, config files, report schemas. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed (ledger identity, malformed log,
// invalid forest). Maps to exit code 3.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A scripted or stream answer source ran dry in the middle of a run.
class StreamExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dfsf

#pragma once

#include <stdexcept>
#include <string>

namespace voa {

/// Error categories surfaced by the engine. Suites turn these into failed
/// report items; they never escape the CLI as a crash.
enum class ErrorKind {
    Declaration,     // values built over incompatible parameter/root declarations
    DivisionByZero,  // inverse of zero (or of a zero divisor in a root extension)
    Pole,            // specialization hit a vanishing denominator
    Unsupported,     // operation outside the engine's documented scope
    UnknownGenerator,
    Shape,           // field fails a required OPE shape (e.g. not Virasoro)
    Centrality,      // quotient requested along a non-central generator
    NotClosed,       // reduction of a non d0-closed expression
    Divergence,      // large-parameter limit of a coefficient of positive degree
    Inconsistent,    // presentation data violates skew-symmetry/closure
    Internal
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

} // namespace voa

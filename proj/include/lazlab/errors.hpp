#pragma once

#include <stdexcept>
#include <string>

namespace lazlab {

/// Base class of every error thrown by the library. `kind()` is a short
/// machine-readable tag used by the CLI error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// A domain specification violates an invariant (convexity, closure, ...).
struct InvalidSpec : Error {
    explicit InvalidSpec(const std::string& what) : Error("invalid_spec", what) {}
};

/// A phase-space or Lazutkin state is outside its admissible range.
struct InvalidState : Error {
    explicit InvalidState(const std::string& what) : Error("invalid_state", what) {}
};

/// A caller-side precondition failed (grid too small, bad config, ...).
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& what) : Error("precondition", what) {}
};

/// An iterative solver did not converge.
struct NumericalError : Error {
    explicit NumericalError(const std::string& what) : Error("numerical", what) {}
};

}  // namespace lazlab

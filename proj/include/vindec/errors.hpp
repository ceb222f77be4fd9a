#pragma once

#include <stdexcept>
#include <string>

namespace vindec {

/// A run would exceed the configured enumeration or memory budget.
/// Carries an estimate of the budget that would be required.
struct budget_error : std::runtime_error {
    double required;
    budget_error(const std::string& what, double required_)
        : std::runtime_error(what), required(required_) {}
};

/// Invalid or infeasible configuration (bad parameters, no admissible setup).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A proved invariant failed. Must never fire; firing means a genuine bug
/// (or a counterexample to a theorem, which would be news).
struct invariant_violation : std::logic_error {
    using std::logic_error::logic_error;
};

/// Quadrature failed to reach the requested tolerance. Carries the value it got to.
struct convergence_error : std::runtime_error {
    double achieved_estimate;
    convergence_error(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_estimate(achieved) {}
};

}  // namespace vindec

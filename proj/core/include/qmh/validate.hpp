#pragma once

#include <string>
#include <vector>

namespace qmh {

/// Outcome of one internal consistency check.
///
/// `measured` is the quantity the check computed (typically a residual norm
/// or an integer-valued dimension stored as a double) and `tolerance` is the
/// acceptance threshold it was compared against.  For checks whose pass
/// condition is a lower bound (for example, a commutator norm that must be
/// bounded away from zero), `details` says so explicitly.
struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string details;
};

/// Options controlling how much of the validation suite runs.
///
/// The dense kernel-dimension checks diagonalise a 4096-dimensional operator
/// block and dominate the total runtime; `include_dense_kernel_checks`
/// disables them for quick smoke runs.  Everything else completes in seconds.
struct ValidationOptions {
    bool include_dense_kernel_checks = true;
};

/// Run the internal consistency suite and return one result per check.
///
/// The suite covers: classical chain invariants (row stochasticity,
/// stationarity, detailed balance) on both problem instances; spectral
/// identities linking walk eigenphases to the classical spectrum; unitarity
/// and isometry checks for the circuit-built operators; ancilla cleanliness
/// of the proposal oracles; target-state preservation of the penalised walk
/// across several penalty phases; degeneracy lifting on the reduced grid
/// instance; decoding correctness; agreement of the three filtering modes on
/// reduced instances; and closed-form identities for the filter weights.
std::vector<CheckResult> run_validation(const ValidationOptions& options = {});

/// True when every check in `results` passed.
bool all_passed(const std::vector<CheckResult>& results);

/// Render a single check as a fixed-format report line.
std::string format_check(const CheckResult& result);

}  // namespace qmh

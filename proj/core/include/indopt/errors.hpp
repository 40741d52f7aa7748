#pragma once

#include <stdexcept>
#include <string>

namespace indopt {

/** A constructive synthesis LP failed at tolerance; preconditions were violated numerically. */
struct SynthesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** An in-operation postcondition check failed; indicates an internal bug, never expected. */
struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** An enumeration or evaluation budget was exceeded before completion. */
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** A signal carries positive mass somewhere but none under the reference effort. */
struct ZeroLikelihoodError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** The signal distribution is flat in effort; the multiplier is undefined. */
struct ZeroInformationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** The target effort produces no more surplus than the outside option. */
struct DegenerateSurplusError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** No threshold structure admits an interior root of the effort-choice condition. */
struct NoInteriorEquilibrium : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace indopt

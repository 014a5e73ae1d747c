#pragma once

#include <stdexcept>
#include <string>

namespace hofa {

/** Classified failure modes. The CLI maps kinds to exit codes:
 *  input/validation problems exit 2, analysis failures exit 3. */
enum class ErrorKind {
    EmptyFactors,
    FactorTooSmall,
    OrderExceedsCap,
    DimensionMismatch,
    IndexOutOfRange,
    GroupMismatch,
    BadSubset,
    InvalidOrder,
    EnumerationTooLarge,
    CapExceeded,
    IncompleteSystem,
    InvalidEpsilon,
    InvalidSamples,
    BadParameter,
    NonHermitian,
    SeparationFailed,
    UnsupportedOrder,
    DecompositionMismatch,
    NotUnimodular,
    NotBilinear,
    NotPrimeCyclic,
    InternalConsistency,
    ParseError,
    ValidationError,
    UnknownGenerator,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

/** True for failures discovered while analyzing well-formed input
 *  (as opposed to malformed input or parameters). */
bool is_analysis_error(ErrorKind k);

} // namespace hofa

#include "hofa/errors.hpp"

namespace hofa {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::EmptyFactors: return "EmptyFactors";
        case ErrorKind::FactorTooSmall: return "FactorTooSmall";
        case ErrorKind::OrderExceedsCap: return "OrderExceedsCap";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::GroupMismatch: return "GroupMismatch";
        case ErrorKind::BadSubset: return "BadSubset";
        case ErrorKind::InvalidOrder: return "InvalidOrder";
        case ErrorKind::EnumerationTooLarge: return "EnumerationTooLarge";
        case ErrorKind::CapExceeded: return "CapExceeded";
        case ErrorKind::IncompleteSystem: return "IncompleteSystem";
        case ErrorKind::InvalidEpsilon: return "InvalidEpsilon";
        case ErrorKind::InvalidSamples: return "InvalidSamples";
        case ErrorKind::BadParameter: return "BadParameter";
        case ErrorKind::NonHermitian: return "NonHermitian";
        case ErrorKind::SeparationFailed: return "SeparationFailed";
        case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
        case ErrorKind::DecompositionMismatch: return "DecompositionMismatch";
        case ErrorKind::NotUnimodular: return "NotUnimodular";
        case ErrorKind::NotBilinear: return "NotBilinear";
        case ErrorKind::NotPrimeCyclic: return "NotPrimeCyclic";
        case ErrorKind::InternalConsistency: return "InternalConsistency";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ValidationError: return "ValidationError";
        case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    }
    return "Error";
}

bool is_analysis_error(ErrorKind k) {
    switch (k) {
        case ErrorKind::NonHermitian:
        case ErrorKind::SeparationFailed:
        case ErrorKind::DecompositionMismatch:
        case ErrorKind::NotUnimodular:
        case ErrorKind::NotBilinear:
        case ErrorKind::InternalConsistency:
            return true;
        default:
            return false;
    }
}

} // namespace hofa

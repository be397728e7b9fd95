#include "ifalign/errors.hpp"

namespace ifalign {

const char* err_name(Err e) {
    switch (e) {
        case Err::CoordinateOutOfRange: return "CoordinateOutOfRange";
        case Err::FrozenIndexMiss: return "FrozenIndexMiss";
        case Err::DegenerateScore: return "DegenerateScore";
        case Err::NoChildren: return "NoChildren";
        case Err::TooLarge: return "TooLarge";
        case Err::NonMonotoneAlignment: return "NonMonotoneAlignment";
        case Err::IndexOutOfRange: return "IndexOutOfRange";
        case Err::EmptyMatrix: return "EmptyMatrix";
        case Err::NoSuccessors: return "NoSuccessors";
        case Err::IllegalTransition: return "IllegalTransition";
        case Err::GenerationFailure: return "GenerationFailure";
        case Err::NoPathFound: return "NoPathFound";
        case Err::LineSearchFailure: return "LineSearchFailure";
        case Err::ChecksumMismatch: return "ChecksumMismatch";
        case Err::UnknownVersion: return "UnknownVersion";
        case Err::IdMismatch: return "IdMismatch";
        case Err::DataError: return "DataError";
        case Err::UsageError: return "UsageError";
    }
    return "UnknownError";
}

}  // namespace ifalign

#include "bcm/error.hpp"

namespace bcm {

const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::invalid_bounds: return "InvalidBounds";
    case ErrorKind::unknown_process: return "UnknownProcess";
    case ErrorKind::duplicate_process: return "DuplicateProcess";
    case ErrorKind::invalid_path: return "InvalidPath";
    case ErrorKind::external_at_zero: return "ExternalAtZero";
    case ErrorKind::duplicate_external: return "DuplicateExternal";
    case ErrorKind::invalid_schedule: return "InvalidSchedule";
    case ErrorKind::absent_node: return "AbsentNode";
    case ErrorKind::not_recognized: return "NotRecognized";
    case ErrorKind::time_zero_base: return "TimeZeroBase";
    case ErrorKind::positive_cycle: return "PositiveCycle";
    case ErrorKind::invalid_timing: return "InvalidTiming";
    case ErrorKind::horizon_overflow: return "HorizonOverflow";
    case ErrorKind::budget_exceeded: return "BudgetExceeded";
    case ErrorKind::unknown_node: return "UnknownNode";
    case ErrorKind::parse_error: return "ParseError";
    case ErrorKind::inconsistent: return "InconsistentSpec";
    case ErrorKind::internal: return "InternalError";
    }
    return "Error";
}

} // namespace bcm

#include "recom/errors.hpp"

namespace recom {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::disconnected_graph: return "DisconnectedGraph";
    case ErrorCode::duplicate_edge: return "DuplicateEdge";
    case ErrorCode::negative_attribute: return "NegativeAttribute";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::schema_mismatch: return "SchemaMismatch";
    case ErrorCode::io_failure: return "IoFailure";
    case ErrorCode::unknown_district: return "UnknownDistrict";
    case ErrorCode::unknown_contest: return "UnknownContest";
    case ErrorCode::disconnected_subset: return "DisconnectedSubset";
    case ErrorCode::arithmetic_overflow: return "ArithmeticOverflow";
    case ErrorCode::balance_unreachable: return "BalanceUnreachable";
    case ErrorCode::seed_failure: return "SeedFailure";
    case ErrorCode::chain_stalled: return "ChainStalled";
    case ErrorCode::orphan_block: return "OrphanBlock";
    case ErrorCode::zero_turnout: return "ZeroTurnout";
    case ErrorCode::out_of_range_seats: return "OutOfRangeSeats";
    case ErrorCode::contest_mismatch: return "ContestMismatch";
    case ErrorCode::empty_histogram: return "EmptyHistogram";
    case ErrorCode::key_mismatch: return "KeyMismatch";
    case ErrorCode::region_disconnected: return "RegionDisconnected";
    case ErrorCode::county_overlap: return "CountyOverlap";
    case ErrorCode::uncovered_county: return "UncoveredCounty";
  }
  return "UnknownError";
}

bool is_chain_error(ErrorCode code) {
  return code == ErrorCode::balance_unreachable || code == ErrorCode::seed_failure ||
         code == ErrorCode::chain_stalled;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace recom

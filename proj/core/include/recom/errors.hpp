#pragma once

#include <stdexcept>
#include <string>

namespace recom {

enum class ErrorCode {
  // graph construction and file input
  disconnected_graph,
  duplicate_edge,
  negative_attribute,
  parse_error,
  schema_mismatch,
  io_failure,
  unknown_district,
  unknown_contest,
  disconnected_subset,
  arithmetic_overflow,
  // sampling
  balance_unreachable,
  seed_failure,
  chain_stalled,
  // elections and ensemble statistics
  orphan_block,
  zero_turnout,
  out_of_range_seats,
  contest_mismatch,
  empty_histogram,
  key_mismatch,
  // region splits
  region_disconnected,
  county_overlap,
  uncovered_county,
};

const char* to_string(ErrorCode code);

// True for failures of the sampling process itself (seeding or stepping), as
// opposed to bad input data. The CLI maps these to a distinct exit code.
bool is_chain_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace recom

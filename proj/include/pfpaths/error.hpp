#pragma once

#include <stdexcept>
#include <string>

namespace pfpaths {

enum class errc {
  odd_dimension,
  even_arity,
  odd_arity,
  dimension_too_large,
  not_square,
  cycle_detected,
  nonpositive_weight,
  unknown_vertex,
  duplicate_edge,
  enumeration_budget_exceeded,
  arity_mismatch,
  not_compatible,
  not_separated,
  parity_mismatch,
  bad_ordering,
  misaligned_table,
  singular_leading_minor,
  zero_normalization,
  insufficient_moments,
  nonpositive_time,
  parse_error,
  invalid_argument,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::odd_dimension: return "OddDimension";
    case errc::even_arity: return "EvenArity";
    case errc::odd_arity: return "OddArity";
    case errc::dimension_too_large: return "DimensionTooLarge";
    case errc::not_square: return "NotSquare";
    case errc::cycle_detected: return "CycleDetected";
    case errc::nonpositive_weight: return "NonpositiveWeight";
    case errc::unknown_vertex: return "UnknownVertex";
    case errc::duplicate_edge: return "DuplicateEdge";
    case errc::enumeration_budget_exceeded: return "EnumerationBudgetExceeded";
    case errc::arity_mismatch: return "ArityMismatch";
    case errc::not_compatible: return "NotCompatible";
    case errc::not_separated: return "NotSeparated";
    case errc::parity_mismatch: return "ParityMismatch";
    case errc::bad_ordering: return "BadOrdering";
    case errc::misaligned_table: return "MisalignedTable";
    case errc::singular_leading_minor: return "SingularLeadingMinor";
    case errc::zero_normalization: return "ZeroNormalization";
    case errc::insufficient_moments: return "InsufficientMoments";
    case errc::nonpositive_time: return "NonpositiveTime";
    case errc::parse_error: return "ParseError";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace pfpaths

#pragma once

#include <stdexcept>
#include <string>

namespace loadcast {

// Every failure the library reports, one code per contract violation.
enum class Errc {
  gap_in_series,
  negative_load,
  out_of_range_humidity,
  negative_wind,
  dataset_too_short,
  degenerate_range,
  out_of_range,
  malformed_row,
  schema_mismatch,
  invalid_config,
  insufficient_history,
  insufficient_future,
  divergence,
  insufficient_samples,
  singular_system,
  capacity_exceeded,
  non_bipolar_input,
  max_iterations,
  decode_failure,
  too_few_labels,
  no_rule_fired,
  all_rules_zero,
  bad_rule_text,
  empty_input,
  zero_actual,
  zero_predicted,
  layout_mismatch,
  mismatched_evaluation_sets,
  overlapping_ranges,
  io_failure,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::gap_in_series: return "gap-in-series";
    case Errc::negative_load: return "negative-load";
    case Errc::out_of_range_humidity: return "out-of-range-humidity";
    case Errc::negative_wind: return "negative-wind";
    case Errc::dataset_too_short: return "dataset-too-short";
    case Errc::degenerate_range: return "degenerate-range";
    case Errc::out_of_range: return "out-of-range";
    case Errc::malformed_row: return "malformed-row";
    case Errc::schema_mismatch: return "schema-mismatch";
    case Errc::invalid_config: return "invalid-config";
    case Errc::insufficient_history: return "insufficient-history";
    case Errc::insufficient_future: return "insufficient-future";
    case Errc::divergence: return "divergence";
    case Errc::insufficient_samples: return "insufficient-samples";
    case Errc::singular_system: return "singular-system";
    case Errc::capacity_exceeded: return "capacity-exceeded";
    case Errc::non_bipolar_input: return "non-bipolar-input";
    case Errc::max_iterations: return "max-iterations";
    case Errc::decode_failure: return "decode-failure";
    case Errc::too_few_labels: return "too-few-labels";
    case Errc::no_rule_fired: return "no-rule-fired";
    case Errc::all_rules_zero: return "all-rules-zero";
    case Errc::bad_rule_text: return "bad-rule-text";
    case Errc::empty_input: return "empty-input";
    case Errc::zero_actual: return "zero-actual";
    case Errc::zero_predicted: return "zero-predicted";
    case Errc::layout_mismatch: return "layout-mismatch";
    case Errc::mismatched_evaluation_sets: return "mismatched-evaluation-sets";
    case Errc::overlapping_ranges: return "overlapping-ranges";
    case Errc::io_failure: return "io-failure";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace loadcast

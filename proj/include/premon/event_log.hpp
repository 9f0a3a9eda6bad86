#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "premon/attr_value.hpp"

namespace premon {

// "case_id", "activity" and "timestamp" are unavailable as attribute names.
bool is_reserved_attr_name(const std::string& name);

struct Event {
  std::string activity;
  std::optional<std::int64_t> timestamp;  // ms since epoch
  std::map<std::string, AttrValue> dynamic_attrs;

  bool operator==(const Event&) const = default;
};

struct Case {
  std::string case_id;
  std::map<std::string, AttrValue> static_attrs;
  std::vector<Event> events;

  std::vector<std::string> activity_sequence() const;
  std::optional<std::int64_t> first_timestamp() const;

  bool operator==(const Case&) const = default;
};

struct AttrSchema {
  std::map<std::string, AttrKind> static_attrs;
  std::map<std::string, AttrKind> dynamic_attrs;

  bool operator==(const AttrSchema&) const = default;
};

struct EventLog {
  std::vector<Case> cases;
  std::vector<std::string> activity_alphabet;  // first-appearance order
  AttrSchema attr_schema;

  std::size_t event_count() const;

  bool operator==(const EventLog&) const = default;
};

// Validates the invariants (unique case ids, non-empty activities, monotone
// timestamps where present, reserved names, schema conformance) and computes
// the activity alphabet. Throws Error on any violation.
EventLog finalize_log(std::vector<Case> cases, AttrSchema schema);

struct CsvSchemaConfig {
  std::string case_id_column = "case_id";
  std::string activity_column = "activity";
  std::string timestamp_column = "timestamp";  // used when present in the header
  // Explicit classification of extra columns (true = static); wins over the
  // prefix convention below.
  std::map<std::string, bool> column_is_static;
  // Columns named "s:<name>" / "d:<name>" are static / dynamic. Unclassified
  // columns default to dynamic.
  bool use_prefix_convention = true;
};

// RFC 4180 CSV with a mandatory header. Events are grouped by case id in
// first-appearance order; a case whose events all carry timestamps is sorted
// by them (stable). Column value kinds are inferred: number when every
// non-empty cell parses as a finite number, boolean when every cell is
// true/false, string otherwise. Empty cells are absent values.
EventLog parse_csv(std::string_view bytes, const CsvSchemaConfig& config = {});

std::string write_csv(const EventLog& log);

// Minimal XES subset: string/int/float/boolean/date attributes on trace and
// event elements; concept:name gives case ids and activities, time:timestamp
// gives event timestamps. Other date attributes ingest as epoch-ms numbers.
EventLog parse_xes(std::string_view bytes);

// Cases ordered by first-event timestamp, ties broken by case_id; the
// existing order is kept when any case lacks a first timestamp.
EventLog canonicalize_case_order(const EventLog& log);

// Contiguous partition of the case list by count; fractions are percentages
// summing to 100 and any rounding remainder goes to the final split.
std::vector<EventLog> split_log(const EventLog& log, const std::vector<double>& fractions);

// Accepts integer epoch-ms or ISO 8601 (date, optional time, optional
// fractional seconds, optional Z/±HH:MM offset).
std::int64_t parse_timestamp(std::string_view text);

}  // namespace premon

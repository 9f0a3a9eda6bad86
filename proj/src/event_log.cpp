#include "premon/event_log.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "premon/errors.hpp"

namespace premon {

namespace {

bool parse_full_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool parse_full_int64(std::string_view s, std::int64_t& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

// Days since 1970-01-01 for a proleptic Gregorian date.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

}  // namespace

std::string AttrValue::to_field() const {
  if (is_absent()) return "";
  if (is_string()) return as_string();
  if (is_boolean()) return as_boolean() ? "true" : "false";
  return format_double(as_number());
}

std::string attr_kind_name(AttrKind kind) {
  switch (kind) {
    case AttrKind::string_: return "string";
    case AttrKind::number: return "number";
    case AttrKind::boolean: return "boolean";
  }
  throw Error("bad AttrKind");
}

AttrKind attr_kind_from_name(const std::string& name) {
  if (name == "string") return AttrKind::string_;
  if (name == "number") return AttrKind::number;
  if (name == "boolean") return AttrKind::boolean;
  throw Error("unknown attribute kind: " + name);
}

bool is_reserved_attr_name(const std::string& name) {
  return name == "case_id" || name == "activity" || name == "timestamp";
}

std::vector<std::string> Case::activity_sequence() const {
  std::vector<std::string> out;
  out.reserve(events.size());
  for (const auto& e : events) out.push_back(e.activity);
  return out;
}

std::optional<std::int64_t> Case::first_timestamp() const {
  if (events.empty()) return std::nullopt;
  return events.front().timestamp;
}

std::size_t EventLog::event_count() const {
  std::size_t n = 0;
  for (const auto& c : cases) n += c.events.size();
  return n;
}

std::int64_t parse_timestamp(std::string_view text) {
  std::int64_t ms = 0;
  if (parse_full_int64(text, ms)) return ms;

  // ISO 8601: YYYY-MM-DD[T HH:MM[:SS[.fff]]][Z|±HH[:MM]]
  auto fail = [&](const char* why) -> std::int64_t {
    throw ParseError(std::string("bad timestamp '") + std::string(text) + "': " + why, 0);
  };
  const char* p = text.data();
  const char* end = text.data() + text.size();
  auto read_int = [&](int digits, int& out) {
    if (end - p < digits) fail("truncated");
    out = 0;
    for (int i = 0; i < digits; ++i) {
      if (p[i] < '0' || p[i] > '9') fail("expected digit");
      out = out * 10 + (p[i] - '0');
    }
    p += digits;
  };
  auto expect = [&](char c) {
    if (p >= end || *p != c) fail("unexpected separator");
    ++p;
  };

  int year, month, day;
  read_int(4, year);
  expect('-');
  read_int(2, month);
  expect('-');
  read_int(2, day);
  if (month < 1 || month > 12 || day < 1 || day > 31) fail("date out of range");

  int hh = 0, mm = 0, ss = 0, frac_ms = 0;
  std::int64_t offset_ms = 0;
  if (p < end && (*p == 'T' || *p == ' ')) {
    ++p;
    read_int(2, hh);
    expect(':');
    read_int(2, mm);
    if (p < end && *p == ':') {
      ++p;
      read_int(2, ss);
      if (p < end && *p == '.') {
        ++p;
        int scale = 100;
        int digits = 0;
        while (p < end && *p >= '0' && *p <= '9') {
          if (digits < 3) frac_ms += (*p - '0') * scale;
          scale /= 10;
          ++digits;
          ++p;
        }
        if (digits == 0) fail("empty fraction");
      }
    }
    if (hh > 23 || mm > 59 || ss > 60) fail("time out of range");
  }
  if (p < end) {
    if (*p == 'Z') {
      ++p;
    } else if (*p == '+' || *p == '-') {
      int sign = (*p == '-') ? -1 : 1;
      ++p;
      int oh, om = 0;
      read_int(2, oh);
      if (p < end && *p == ':') ++p;
      if (p < end) read_int(2, om);
      offset_ms = sign * ((std::int64_t)oh * 60 + om) * 60000;
    }
  }
  if (p != end) fail("trailing characters");

  std::int64_t days = days_from_civil(year, (unsigned)month, (unsigned)day);
  std::int64_t local = ((days * 24 + hh) * 60 + mm) * 60000 + (std::int64_t)ss * 1000 + frac_ms;
  return local - offset_ms;
}

EventLog finalize_log(std::vector<Case> cases, AttrSchema schema) {
  std::set<std::string> seen_ids;
  std::vector<std::string> alphabet;
  std::set<std::string> alphabet_seen;

  for (const auto& c : cases) {
    if (c.case_id.empty()) throw Error("case with empty case_id");
    if (!seen_ids.insert(c.case_id).second)
      throw Error("duplicate case_id '" + c.case_id + "'");
    if (c.events.empty())
      throw Error("case '" + c.case_id + "' has no events");

    for (const auto& [name, value] : c.static_attrs) {
      if (is_reserved_attr_name(name))
        throw Error("static attribute uses reserved name '" + name + "'");
      auto it = schema.static_attrs.find(name);
      if (it == schema.static_attrs.end())
        throw Error("static attribute '" + name + "' missing from schema");
      if (!value.conforms_to(it->second))
        throw Error("static attribute '" + name + "' violates declared kind in case '" +
                    c.case_id + "'");
    }

    std::optional<std::int64_t> prev_ts;
    for (const auto& e : c.events) {
      if (e.activity.empty())
        throw Error("event with empty activity in case '" + c.case_id + "'");
      if (e.timestamp) {
        if (prev_ts && *e.timestamp < *prev_ts)
          throw Error("timestamps out of order in case '" + c.case_id + "'");
        prev_ts = e.timestamp;
      }
      if (alphabet_seen.insert(e.activity).second) alphabet.push_back(e.activity);
      for (const auto& [name, value] : e.dynamic_attrs) {
        if (is_reserved_attr_name(name))
          throw Error("dynamic attribute uses reserved name '" + name + "'");
        auto it = schema.dynamic_attrs.find(name);
        if (it == schema.dynamic_attrs.end())
          throw Error("dynamic attribute '" + name + "' missing from schema");
        if (!value.conforms_to(it->second))
          throw Error("dynamic attribute '" + name + "' violates declared kind in case '" +
                      c.case_id + "'");
      }
    }
  }

  EventLog log;
  log.cases = std::move(cases);
  log.activity_alphabet = std::move(alphabet);
  log.attr_schema = std::move(schema);
  return log;
}

// --- CSV ------------------------------------------------------------------

namespace {

std::vector<std::vector<std::string>> read_csv_rows(std::string_view bytes) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool row_has_data = false;
  std::size_t i = 0;
  const std::size_t n = bytes.size();

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
    row_has_data = false;
  };

  while (i < n) {
    char c = bytes[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < n && bytes[i + 1] == '"') {
          field += '"';
          i += 2;
        } else {
          in_quotes = false;
          ++i;
        }
      } else {
        field += c;
        ++i;
      }
    } else if (c == '"') {
      in_quotes = true;
      row_has_data = true;
      ++i;
    } else if (c == ',') {
      end_field();
      row_has_data = true;
      ++i;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < n && bytes[i + 1] == '\n') ++i;
      ++i;
      if (row_has_data || !field.empty() || !row.empty()) end_row();
    } else {
      field += c;
      row_has_data = true;
      ++i;
    }
  }
  if (in_quotes) throw ParseError("unterminated quoted CSV field", n);
  if (row_has_data || !field.empty() || !row.empty()) end_row();
  return rows;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

enum class ColumnRole { case_id, activity, timestamp, static_attr, dynamic_attr };

struct ColumnSpec {
  ColumnRole role;
  std::string attr_name;  // for static/dynamic columns
};

AttrKind infer_column_kind(const std::vector<std::string>& cells) {
  bool any = false;
  bool all_number = true;
  bool all_boolean = true;
  for (const auto& s : cells) {
    if (s.empty()) continue;
    any = true;
    double d;
    if (!parse_full_double(s, d)) all_number = false;
    if (s != "true" && s != "false") all_boolean = false;
  }
  if (!any) return AttrKind::string_;  // kind unknowable for an all-absent column
  if (all_number) return AttrKind::number;
  if (all_boolean) return AttrKind::boolean;
  return AttrKind::string_;
}

AttrValue cell_to_value(const std::string& s, AttrKind kind) {
  if (s.empty()) return AttrValue::absent();
  switch (kind) {
    case AttrKind::number: {
      double d;
      parse_full_double(s, d);
      return AttrValue::of(d);
    }
    case AttrKind::boolean:
      return AttrValue::of(s == "true");
    case AttrKind::string_:
      return AttrValue::of(s);
  }
  throw Error("bad AttrKind");
}

}  // namespace

EventLog parse_csv(std::string_view bytes, const CsvSchemaConfig& config) {
  auto rows = read_csv_rows(bytes);
  if (rows.empty()) throw ParseError("CSV input has no header row", 0);

  const auto& header = rows.front();
  std::vector<ColumnSpec> columns(header.size());
  int case_col = -1, act_col = -1, ts_col = -1;
  std::set<std::string> attr_names;

  for (std::size_t j = 0; j < header.size(); ++j) {
    const std::string& name = header[j];
    if (name == config.case_id_column) {
      columns[j] = {ColumnRole::case_id, ""};
      case_col = (int)j;
    } else if (name == config.activity_column) {
      columns[j] = {ColumnRole::activity, ""};
      act_col = (int)j;
    } else if (name == config.timestamp_column) {
      columns[j] = {ColumnRole::timestamp, ""};
      ts_col = (int)j;
    } else {
      std::string attr = name;
      bool is_static = false;
      bool classified = false;
      if (config.use_prefix_convention) {
        if (name.rfind("s:", 0) == 0) {
          attr = name.substr(2);
          is_static = true;
          classified = true;
        } else if (name.rfind("d:", 0) == 0) {
          attr = name.substr(2);
          classified = true;
        }
      }
      if (auto it = config.column_is_static.find(name); it != config.column_is_static.end()) {
        is_static = it->second;
        classified = true;
        if (config.use_prefix_convention &&
            (name.rfind("s:", 0) == 0 || name.rfind("d:", 0) == 0))
          attr = name.substr(2);
      }
      if (!classified) is_static = false;  // unclassified extras default to dynamic
      if (attr.empty()) throw ParseError("empty attribute column name", 0);
      if (is_reserved_attr_name(attr))
        throw ParseError("attribute column '" + name + "' maps to reserved name", 0);
      if (!attr_names.insert(attr).second)
        throw ParseError("duplicate attribute column '" + attr + "'", 0);
      columns[j] = {is_static ? ColumnRole::static_attr : ColumnRole::dynamic_attr, attr};
    }
  }
  if (case_col < 0) throw ParseError("missing mandatory column '" + config.case_id_column + "'", 0);
  if (act_col < 0) throw ParseError("missing mandatory column '" + config.activity_column + "'", 0);

  // Per-column kind inference over the whole body.
  std::map<std::size_t, AttrKind> column_kind;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].role != ColumnRole::static_attr && columns[j].role != ColumnRole::dynamic_attr)
      continue;
    std::vector<std::string> cells;
    for (std::size_t r = 1; r < rows.size(); ++r)
      if (j < rows[r].size()) cells.push_back(rows[r][j]);
    column_kind[j] = infer_column_kind(cells);
  }

  struct PendingCase {
    Case c;
    bool all_timestamps = true;
  };
  std::vector<std::string> case_order;
  std::map<std::string, PendingCase> by_id;

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size())
      throw ParseError("row " + std::to_string(r + 1) + " has " + std::to_string(row.size()) +
                           " fields, header has " + std::to_string(header.size()),
                       0);
    const std::string& cid = row[case_col];
    if (cid.empty()) throw ParseError("row " + std::to_string(r + 1) + " has empty case id", 0);

    auto it = by_id.find(cid);
    if (it == by_id.end()) {
      it = by_id.emplace(cid, PendingCase{}).first;
      it->second.c.case_id = cid;
      case_order.push_back(cid);
    }
    PendingCase& pc = it->second;

    Event e;
    e.activity = row[act_col];
    if (e.activity.empty())
      throw ParseError("row " + std::to_string(r + 1) + " has empty activity", 0);
    if (ts_col >= 0 && !row[ts_col].empty()) {
      e.timestamp = parse_timestamp(row[ts_col]);
    } else {
      pc.all_timestamps = false;
    }

    for (std::size_t j = 0; j < columns.size(); ++j) {
      const ColumnSpec& spec = columns[j];
      if (spec.role == ColumnRole::dynamic_attr) {
        AttrValue v = cell_to_value(row[j], column_kind[j]);
        if (!v.is_absent()) e.dynamic_attrs[spec.attr_name] = v;
      } else if (spec.role == ColumnRole::static_attr) {
        AttrValue v = cell_to_value(row[j], column_kind[j]);
        auto sit = pc.c.static_attrs.find(spec.attr_name);
        if (sit == pc.c.static_attrs.end()) {
          pc.c.static_attrs[spec.attr_name] = v;
        } else if (!(sit->second == v)) {
          throw ParseError("static column '" + spec.attr_name + "' varies within case '" + cid + "'",
                           0);
        }
      }
    }
    pc.c.events.push_back(std::move(e));
  }

  AttrSchema schema;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].role == ColumnRole::static_attr)
      schema.static_attrs[columns[j].attr_name] = column_kind[j];
    else if (columns[j].role == ColumnRole::dynamic_attr)
      schema.dynamic_attrs[columns[j].attr_name] = column_kind[j];
  }

  std::vector<Case> cases;
  cases.reserve(case_order.size());
  for (const auto& cid : case_order) {
    PendingCase& pc = by_id.at(cid);
    // Drop all-absent static entries so missing stays missing.
    for (auto it = pc.c.static_attrs.begin(); it != pc.c.static_attrs.end();) {
      if (it->second.is_absent()) it = pc.c.static_attrs.erase(it);
      else ++it;
    }
    if (pc.all_timestamps) {
      std::stable_sort(pc.c.events.begin(), pc.c.events.end(),
                       [](const Event& a, const Event& b) { return *a.timestamp < *b.timestamp; });
    }
    cases.push_back(std::move(pc.c));
  }
  return finalize_log(std::move(cases), std::move(schema));
}

std::string write_csv(const EventLog& log) {
  bool any_ts = false;
  for (const auto& c : log.cases)
    for (const auto& e : c.events)
      if (e.timestamp) any_ts = true;

  std::ostringstream out;
  out << "case_id,activity";
  if (any_ts) out << ",timestamp";
  for (const auto& [name, kind] : log.attr_schema.static_attrs) {
    (void)kind;
    out << ',' << csv_quote("s:" + name);
  }
  for (const auto& [name, kind] : log.attr_schema.dynamic_attrs) {
    (void)kind;
    out << ',' << csv_quote("d:" + name);
  }
  out << "\r\n";

  for (const auto& c : log.cases) {
    for (const auto& e : c.events) {
      out << csv_quote(c.case_id) << ',' << csv_quote(e.activity);
      if (any_ts) {
        out << ',';
        if (e.timestamp) out << *e.timestamp;
      }
      for (const auto& [name, kind] : log.attr_schema.static_attrs) {
        (void)kind;
        auto it = c.static_attrs.find(name);
        out << ',' << csv_quote(it == c.static_attrs.end() ? "" : it->second.to_field());
      }
      for (const auto& [name, kind] : log.attr_schema.dynamic_attrs) {
        (void)kind;
        auto it = e.dynamic_attrs.find(name);
        out << ',' << csv_quote(it == e.dynamic_attrs.end() ? "" : it->second.to_field());
      }
      out << "\r\n";
    }
  }
  return out.str();
}

EventLog canonicalize_case_order(const EventLog& log) {
  bool all_have_ts = !log.cases.empty();
  for (const auto& c : log.cases)
    if (!c.first_timestamp()) all_have_ts = false;

  EventLog out = log;
  if (all_have_ts) {
    std::stable_sort(out.cases.begin(), out.cases.end(), [](const Case& a, const Case& b) {
      auto ta = *a.first_timestamp(), tb = *b.first_timestamp();
      if (ta != tb) return ta < tb;
      return a.case_id < b.case_id;
    });
  }
  return out;
}

std::vector<EventLog> split_log(const EventLog& log, const std::vector<double>& fractions) {
  if (log.cases.empty()) throw Error("cannot split an empty log");
  if (fractions.empty()) throw Error("no split fractions given");
  double sum = 0;
  for (double f : fractions) {
    if (f < 0) throw Error("negative split fraction");
    sum += f;
  }
  if (std::abs(sum - 100.0) > 1e-9)
    throw Error("split fractions sum to " + format_double(sum) + ", expected 100");

  const std::size_t n = log.cases.size();
  std::vector<std::size_t> sizes(fractions.size());
  std::size_t used = 0;
  for (std::size_t i = 0; i + 1 < fractions.size(); ++i) {
    sizes[i] = static_cast<std::size_t>(std::floor(n * fractions[i] / 100.0));
    used += sizes[i];
  }
  sizes.back() = n - used;

  std::vector<EventLog> out;
  std::size_t offset = 0;
  for (std::size_t part_size : sizes) {
    EventLog part;
    part.cases.assign(log.cases.begin() + offset, log.cases.begin() + offset + part_size);
    part.attr_schema = log.attr_schema;
    // Alphabet restricted to what the part actually contains, parent order.
    std::set<std::string> seen;
    for (const auto& c : part.cases)
      for (const auto& e : c.events) seen.insert(e.activity);
    for (const auto& a : log.activity_alphabet)
      if (seen.count(a)) part.activity_alphabet.push_back(a);
    out.push_back(std::move(part));
    offset += part_size;
  }
  return out;
}

}  // namespace premon

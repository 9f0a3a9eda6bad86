#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "premon/event_log.hpp"

namespace premon {

enum class FeatureKind { numeric, categorical };

// A single feature slot: absent, a number, or a categorical level.
class FeatureValue {
 public:
  FeatureValue() : v_(std::monostate{}) {}

  static FeatureValue absent() { return FeatureValue{}; }
  static FeatureValue number(double d) {
    FeatureValue v;
    v.v_ = d;
    return v;
  }
  static FeatureValue category(std::string s) {
    FeatureValue v;
    v.v_ = std::move(s);
    return v;
  }
  static FeatureValue from_attr(const AttrValue& a);

  bool is_absent() const { return std::holds_alternative<std::monostate>(v_); }
  bool is_number() const { return std::holds_alternative<double>(v_); }
  bool is_category() const { return std::holds_alternative<std::string>(v_); }
  double num() const { return std::get<double>(v_); }
  const std::string& cat() const { return std::get<std::string>(v_); }

  bool operator==(const FeatureValue&) const = default;

 private:
  std::variant<std::monostate, double, std::string> v_;
};

struct FeatureVector {
  std::vector<FeatureValue> values;
  std::string schema_id;

  bool operator==(const FeatureVector&) const = default;
};

// Unseen activities encode to this categorical level under index schemas.
inline constexpr const char* kUnknownActivity = "__unknown__";

// Fixed at construction; classifiers and cluster models key on schema_id to
// reject vectors from a different schema.
struct EncodingSchema {
  enum class Kind { frequency, index };

  Kind kind = Kind::frequency;
  std::vector<std::string> activity_alphabet;
  std::vector<std::pair<std::string, AttrKind>> static_attrs;   // index only
  std::vector<std::pair<std::string, AttrKind>> dynamic_attrs;  // index only
  int prefix_length = 0;                                        // m, index only

  static EncodingSchema frequency(const EventLog& log);
  static EncodingSchema index(const EventLog& log, int m);

  std::string schema_id() const;
  std::size_t feature_count() const;
  std::vector<FeatureKind> feature_kinds() const;
  std::vector<std::string> feature_names() const;

  bool operator==(const EncodingSchema&) const = default;
};

// First `length` events of a case, viewed in place; `source` must outlive the
// prefix. Training prefixes carry the completed case's outcome label.
struct Prefix {
  const Case* source = nullptr;
  int length = 0;
  std::optional<bool> label;

  const std::string& case_id() const { return source->case_id; }
  const std::map<std::string, AttrValue>& static_attrs() const { return source->static_attrs; }
  std::span<const Event> events() const {
    return std::span<const Event>(source->events.data(), static_cast<std::size_t>(length));
  }
  const Event& last_event() const { return source->events[static_cast<std::size_t>(length) - 1]; }
};

// One prefix per length in [min_len, min(max_len, case length)], each carrying
// the given full-case label.
std::vector<Prefix> extract_prefixes(const Case& c, int min_len, int max_len,
                                     std::optional<bool> label = std::nullopt);

// Activity occurrence counts over the schema alphabet; activities outside the
// alphabet are ignored.
FeatureVector encode_frequency(const Prefix& p, const EncodingSchema& schema);

// Layout: static attrs in schema order, then the m activity labels, then for
// each dynamic attr its value at positions 1..m. Requires p.length == m.
FeatureVector encode_index(const Prefix& p, const EncodingSchema& schema);

}  // namespace premon

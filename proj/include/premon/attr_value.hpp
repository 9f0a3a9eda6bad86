#pragma once

#include <string>
#include <variant>

#include "premon/errors.hpp"

namespace premon {

enum class AttrKind { string_, number, boolean };

std::string attr_kind_name(AttrKind kind);
AttrKind attr_kind_from_name(const std::string& name);

// Attribute value carried by cases and events. Missing values are an
// explicit "absent" state rather than an empty string.
class AttrValue {
 public:
  AttrValue() : v_(std::monostate{}) {}

  static AttrValue absent() { return AttrValue{}; }
  static AttrValue of(std::string s) {
    AttrValue v;
    v.v_ = std::move(s);
    return v;
  }
  static AttrValue of(const char* s) { return of(std::string(s)); }
  static AttrValue of(double d) {
    AttrValue v;
    v.v_ = d;
    return v;
  }
  static AttrValue of(bool b) {
    AttrValue v;
    v.v_ = b;
    return v;
  }

  bool is_absent() const { return std::holds_alternative<std::monostate>(v_); }
  bool is_string() const { return std::holds_alternative<std::string>(v_); }
  bool is_number() const { return std::holds_alternative<double>(v_); }
  bool is_boolean() const { return std::holds_alternative<bool>(v_); }

  const std::string& as_string() const { return std::get<std::string>(v_); }
  double as_number() const { return std::get<double>(v_); }
  bool as_boolean() const { return std::get<bool>(v_); }

  AttrKind kind() const {
    if (is_string()) return AttrKind::string_;
    if (is_number()) return AttrKind::number;
    if (is_boolean()) return AttrKind::boolean;
    throw Error("absent value has no kind");
  }

  bool conforms_to(AttrKind k) const { return is_absent() || kind() == k; }

  // Text form used by the CSV writer; absent renders as the empty field.
  std::string to_field() const;

  bool operator==(const AttrValue&) const = default;

 private:
  std::variant<std::monostate, std::string, double, bool> v_;
};

}  // namespace premon

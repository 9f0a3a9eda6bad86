#include "premon/encoding.hpp"

#include <algorithm>
#include <map>

#include "premon/errors.hpp"

namespace premon {

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::string_view s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  h ^= 0x1f;  // field separator
  h *= 1099511628211ULL;
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

FeatureKind kind_for(AttrKind k) {
  return k == AttrKind::number ? FeatureKind::numeric : FeatureKind::categorical;
}

}  // namespace

FeatureValue FeatureValue::from_attr(const AttrValue& a) {
  if (a.is_absent()) return FeatureValue::absent();
  if (a.is_number()) return FeatureValue::number(a.as_number());
  if (a.is_boolean()) return FeatureValue::category(a.as_boolean() ? "true" : "false");
  return FeatureValue::category(a.as_string());
}

EncodingSchema EncodingSchema::frequency(const EventLog& log) {
  EncodingSchema s;
  s.kind = Kind::frequency;
  s.activity_alphabet = log.activity_alphabet;
  return s;
}

EncodingSchema EncodingSchema::index(const EventLog& log, int m) {
  if (m < 1) throw Error("index schema needs prefix length >= 1");
  EncodingSchema s;
  s.kind = Kind::index;
  s.activity_alphabet = log.activity_alphabet;
  s.prefix_length = m;
  for (const auto& [name, kind] : log.attr_schema.static_attrs) s.static_attrs.emplace_back(name, kind);
  for (const auto& [name, kind] : log.attr_schema.dynamic_attrs) s.dynamic_attrs.emplace_back(name, kind);
  return s;
}

std::string EncodingSchema::schema_id() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& a : activity_alphabet) h = fnv1a(h, a);
  for (const auto& [name, k] : static_attrs) h = fnv1a(h, name + "#" + attr_kind_name(k));
  for (const auto& [name, k] : dynamic_attrs) h = fnv1a(h, name + "#" + attr_kind_name(k));
  if (kind == Kind::frequency) {
    return "freq/" + std::to_string(activity_alphabet.size()) + "/" + hex64(h);
  }
  return "index/m" + std::to_string(prefix_length) + "/u" + std::to_string(static_attrs.size()) +
         "/r" + std::to_string(dynamic_attrs.size()) + "/" + hex64(h);
}

std::size_t EncodingSchema::feature_count() const {
  if (kind == Kind::frequency) return activity_alphabet.size();
  return static_attrs.size() + static_cast<std::size_t>(prefix_length) * (1 + dynamic_attrs.size());
}

std::vector<FeatureKind> EncodingSchema::feature_kinds() const {
  std::vector<FeatureKind> out;
  out.reserve(feature_count());
  if (kind == Kind::frequency) {
    out.assign(activity_alphabet.size(), FeatureKind::numeric);
    return out;
  }
  for (const auto& [name, k] : static_attrs) {
    (void)name;
    out.push_back(kind_for(k));
  }
  for (int j = 0; j < prefix_length; ++j) out.push_back(FeatureKind::categorical);
  for (const auto& [name, k] : dynamic_attrs) {
    (void)name;
    for (int j = 0; j < prefix_length; ++j) out.push_back(kind_for(k));
  }
  return out;
}

std::vector<std::string> EncodingSchema::feature_names() const {
  std::vector<std::string> out;
  out.reserve(feature_count());
  if (kind == Kind::frequency) {
    for (const auto& a : activity_alphabet) out.push_back("count:" + a);
    return out;
  }
  for (const auto& [name, k] : static_attrs) {
    (void)k;
    out.push_back("static:" + name);
  }
  for (int j = 1; j <= prefix_length; ++j) out.push_back("event_" + std::to_string(j));
  for (const auto& [name, k] : dynamic_attrs) {
    (void)k;
    for (int j = 1; j <= prefix_length; ++j)
      out.push_back("dyn:" + name + "_" + std::to_string(j));
  }
  return out;
}

std::vector<Prefix> extract_prefixes(const Case& c, int min_len, int max_len,
                                     std::optional<bool> label) {
  if (min_len < 1 || min_len > max_len)
    throw Error("bad prefix length range [" + std::to_string(min_len) + ", " +
                std::to_string(max_len) + "]");
  std::vector<Prefix> out;
  const int top = std::min<int>(max_len, static_cast<int>(c.events.size()));
  for (int len = min_len; len <= top; ++len) out.push_back(Prefix{&c, len, label});
  return out;
}

FeatureVector encode_frequency(const Prefix& p, const EncodingSchema& schema) {
  if (schema.kind != EncodingSchema::Kind::frequency)
    throw SchemaError("encode_frequency requires a frequency schema");
  std::map<std::string_view, std::size_t> position;
  for (std::size_t i = 0; i < schema.activity_alphabet.size(); ++i)
    position.emplace(schema.activity_alphabet[i], i);

  std::vector<double> counts(schema.activity_alphabet.size(), 0.0);
  for (const auto& e : p.events()) {
    auto it = position.find(e.activity);
    if (it != position.end()) counts[it->second] += 1.0;
  }

  FeatureVector v;
  v.schema_id = schema.schema_id();
  v.values.reserve(counts.size());
  for (double c : counts) v.values.push_back(FeatureValue::number(c));
  return v;
}

FeatureVector encode_index(const Prefix& p, const EncodingSchema& schema) {
  if (schema.kind != EncodingSchema::Kind::index)
    throw SchemaError("encode_index requires an index schema");
  if (p.length != schema.prefix_length)
    throw SchemaError("prefix length " + std::to_string(p.length) +
                      " does not match schema m=" + std::to_string(schema.prefix_length));

  FeatureVector v;
  v.schema_id = schema.schema_id();
  v.values.reserve(schema.feature_count());

  for (const auto& [name, kind] : schema.static_attrs) {
    (void)kind;
    auto it = p.static_attrs().find(name);
    v.values.push_back(it == p.static_attrs().end() ? FeatureValue::absent()
                                                    : FeatureValue::from_attr(it->second));
  }

  auto events = p.events();
  for (const auto& e : events) {
    bool known = std::find(schema.activity_alphabet.begin(), schema.activity_alphabet.end(),
                           e.activity) != schema.activity_alphabet.end();
    v.values.push_back(FeatureValue::category(known ? e.activity : kUnknownActivity));
  }

  for (const auto& [name, kind] : schema.dynamic_attrs) {
    (void)kind;
    for (const auto& e : events) {
      auto it = e.dynamic_attrs.find(name);
      v.values.push_back(it == e.dynamic_attrs.end() ? FeatureValue::absent()
                                                     : FeatureValue::from_attr(it->second));
    }
  }
  return v;
}

}  // namespace premon

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <sstream>

#include "premon/errors.hpp"
#include "premon/event_log.hpp"

namespace premon {

namespace {

namespace pt = boost::property_tree;

bool is_attr_element(const std::string& tag) {
  return tag == "string" || tag == "int" || tag == "float" || tag == "boolean" || tag == "date";
}

struct ParsedAttr {
  std::string key;
  AttrValue value;
  AttrKind kind;
  bool is_date = false;
};

ParsedAttr parse_attr_element(const std::string& tag, const pt::ptree& node) {
  ParsedAttr out;
  auto key = node.get_optional<std::string>("<xmlattr>.key");
  auto value = node.get_optional<std::string>("<xmlattr>.value");
  if (!key || !value) throw ParseError("XES attribute element without key/value", 0);
  out.key = *key;
  if (tag == "string") {
    out.kind = AttrKind::string_;
    out.value = AttrValue::of(*value);
  } else if (tag == "int" || tag == "float") {
    out.kind = AttrKind::number;
    try {
      out.value = AttrValue::of(std::stod(*value));
    } catch (const std::exception&) {
      throw ParseError("bad numeric XES attribute '" + out.key + "': " + *value, 0);
    }
  } else if (tag == "boolean") {
    out.kind = AttrKind::boolean;
    out.value = AttrValue::of(*value == "true");
  } else {  // date: epoch ms as a number
    out.kind = AttrKind::number;
    out.is_date = true;
    out.value = AttrValue::of(static_cast<double>(parse_timestamp(*value)));
  }
  return out;
}

void record_kind(std::map<std::string, AttrKind>& schema, const std::string& key, AttrKind kind) {
  auto [it, inserted] = schema.emplace(key, kind);
  if (!inserted && it->second != kind)
    throw ParseError("XES attribute '" + key + "' has conflicting kinds", 0);
}

}  // namespace

EventLog parse_xes(std::string_view bytes) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(bytes)};
    pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::ptree_error& e) {
    throw ParseError(std::string("malformed XES XML: ") + e.what(), 0);
  }

  auto log_node = tree.get_child_optional("log");
  if (!log_node) throw ParseError("XES input has no <log> element", 0);

  AttrSchema schema;
  std::vector<Case> cases;

  for (const auto& [tag, trace_node] : *log_node) {
    if (tag != "trace") continue;
    Case c;
    for (const auto& [child_tag, child] : trace_node) {
      if (child_tag == "event") {
        Event e;
        for (const auto& [attr_tag, attr_node] : child) {
          if (!is_attr_element(attr_tag)) continue;
          ParsedAttr a = parse_attr_element(attr_tag, attr_node);
          if (a.key == "concept:name") {
            if (!a.value.is_string())
              throw ParseError("event concept:name is not a string", 0);
            e.activity = a.value.as_string();
          } else if (a.key == "time:timestamp" && a.is_date) {
            e.timestamp = static_cast<std::int64_t>(a.value.as_number());
          } else {
            if (is_reserved_attr_name(a.key))
              throw ParseError("XES event attribute uses reserved name '" + a.key + "'", 0);
            e.dynamic_attrs[a.key] = a.value;
            record_kind(schema.dynamic_attrs, a.key, a.kind);
          }
        }
        if (e.activity.empty())
          throw ParseError("XES event without concept:name", 0);
        c.events.push_back(std::move(e));
      } else if (is_attr_element(child_tag)) {
        ParsedAttr a = parse_attr_element(child_tag, child);
        if (a.key == "concept:name") {
          if (!a.value.is_string()) throw ParseError("trace concept:name is not a string", 0);
          c.case_id = a.value.as_string();
        } else {
          if (is_reserved_attr_name(a.key))
            throw ParseError("XES trace attribute uses reserved name '" + a.key + "'", 0);
          c.static_attrs[a.key] = a.value;
          record_kind(schema.static_attrs, a.key, a.kind);
        }
      }
    }
    if (c.case_id.empty()) throw ParseError("XES trace without concept:name", 0);

    bool all_ts = !c.events.empty();
    for (const auto& e : c.events)
      if (!e.timestamp) all_ts = false;
    if (all_ts) {
      std::stable_sort(c.events.begin(), c.events.end(),
                       [](const Event& a, const Event& b) { return *a.timestamp < *b.timestamp; });
    }
    cases.push_back(std::move(c));
  }

  return finalize_log(std::move(cases), std::move(schema));
}

}  // namespace premon

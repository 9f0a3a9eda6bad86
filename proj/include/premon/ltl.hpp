#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "premon/event_log.hpp"

namespace premon {

// Finite-trace LTL over activity labels: atoms, boolean connectives and the
// temporal operators F, G, U. Formulas are immutable and shared.
struct LtlFormula;
using LtlPtr = std::shared_ptr<const LtlFormula>;

struct LtlFormula {
  enum class Op { atom, not_, and_, or_, implies, finally_, globally, until };

  Op op;
  std::string label;  // atom only; stored trimmed
  LtlPtr lhs, rhs;

  static LtlPtr atom(std::string label);
  static LtlPtr not_of(LtlPtr f);
  static LtlPtr and_of(LtlPtr f, LtlPtr g);
  static LtlPtr or_of(LtlPtr f, LtlPtr g);
  static LtlPtr implies_of(LtlPtr f, LtlPtr g);
  static LtlPtr finally_of(LtlPtr f);
  static LtlPtr globally_of(LtlPtr f);
  static LtlPtr until_of(LtlPtr f, LtlPtr g);
};

// Concrete syntax: F(x), G(x), x U y, !x, x & y, x | y, x -> y, parentheses,
// atoms as bare words or "quoted strings". Precedence: unary > U > & > | > ->
// with -> and U right-associative.
LtlPtr parse_formula(const std::string& text);

// Reparseable rendering of a formula.
std::string to_string(const LtlFormula& f);
inline std::string to_string(const LtlPtr& f) { return to_string(*f); }

// Finite-trace semantics evaluated at position 0. Throws on an empty trace.
bool evaluate(const LtlFormula& f, const std::vector<std::string>& trace);
inline bool evaluate(const LtlPtr& f, const std::vector<std::string>& trace) {
  return evaluate(*f, trace);
}

struct OutcomeLabel {
  bool value = false;
  bool operator==(const OutcomeLabel&) const = default;
};

// Labels every completed case by evaluating the formula on its activity
// sequence. Throws if any case has no events.
std::map<std::string, OutcomeLabel> label_log(const EventLog& log, const LtlPtr& formula);

}  // namespace premon

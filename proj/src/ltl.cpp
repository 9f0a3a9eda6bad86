#include "premon/ltl.hpp"

#include <cctype>

#include "premon/errors.hpp"

namespace premon {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

LtlPtr make(LtlFormula::Op op, std::string label, LtlPtr lhs, LtlPtr rhs) {
  auto f = std::make_shared<LtlFormula>();
  f->op = op;
  f->label = std::move(label);
  f->lhs = std::move(lhs);
  f->rhs = std::move(rhs);
  return f;
}

}  // namespace

LtlPtr LtlFormula::atom(std::string label) {
  return make(Op::atom, trim(label), nullptr, nullptr);
}
LtlPtr LtlFormula::not_of(LtlPtr f) { return make(Op::not_, "", std::move(f), nullptr); }
LtlPtr LtlFormula::and_of(LtlPtr f, LtlPtr g) {
  return make(Op::and_, "", std::move(f), std::move(g));
}
LtlPtr LtlFormula::or_of(LtlPtr f, LtlPtr g) {
  return make(Op::or_, "", std::move(f), std::move(g));
}
LtlPtr LtlFormula::implies_of(LtlPtr f, LtlPtr g) {
  return make(Op::implies, "", std::move(f), std::move(g));
}
LtlPtr LtlFormula::finally_of(LtlPtr f) { return make(Op::finally_, "", std::move(f), nullptr); }
LtlPtr LtlFormula::globally_of(LtlPtr f) { return make(Op::globally, "", std::move(f), nullptr); }
LtlPtr LtlFormula::until_of(LtlPtr f, LtlPtr g) {
  return make(Op::until, "", std::move(f), std::move(g));
}

// --- parser -----------------------------------------------------------------

namespace {

struct Token {
  enum class Kind { atom, f_op, g_op, u_op, not_op, and_op, or_op, implies_op, lparen, rparen, end };
  Kind kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    std::size_t start = i_;
    if (i_ >= s_.size()) {
      tok_ = {Token::Kind::end, "", start};
      return;
    }
    char c = s_[i_];
    switch (c) {
      case '(': ++i_; tok_ = {Token::Kind::lparen, "(", start}; return;
      case ')': ++i_; tok_ = {Token::Kind::rparen, ")", start}; return;
      case '!': ++i_; tok_ = {Token::Kind::not_op, "!", start}; return;
      case '&': ++i_; tok_ = {Token::Kind::and_op, "&", start}; return;
      case '|': ++i_; tok_ = {Token::Kind::or_op, "|", start}; return;
      case '-':
        if (i_ + 1 < s_.size() && s_[i_ + 1] == '>') {
          i_ += 2;
          tok_ = {Token::Kind::implies_op, "->", start};
          return;
        }
        throw ParseError("unexpected '-'", start);
      case '"': {
        ++i_;
        std::string text;
        while (i_ < s_.size() && s_[i_] != '"') text += s_[i_++];
        if (i_ >= s_.size()) throw ParseError("unterminated quoted atom", start);
        ++i_;
        tok_ = {Token::Kind::atom, text, start};
        return;
      }
      default: break;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (i_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
        word += s_[i_++];
      if (word == "F") tok_ = {Token::Kind::f_op, word, start};
      else if (word == "G") tok_ = {Token::Kind::g_op, word, start};
      else if (word == "U") tok_ = {Token::Kind::u_op, word, start};
      else tok_ = {Token::Kind::atom, word, start};
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

  const std::string& s_;
  std::size_t i_ = 0;
  Token tok_{Token::Kind::end, "", 0};
};

// Grammar (highest binding first): unary (!, F, G) > U > & > | > ->.
class Parser {
 public:
  explicit Parser(const std::string& s) : lex_(s) {}

  LtlPtr parse() {
    LtlPtr f = implies();
    if (lex_.peek().kind != Token::Kind::end)
      throw ParseError("unexpected trailing input", lex_.peek().pos);
    return f;
  }

 private:
  LtlPtr implies() {
    LtlPtr left = or_expr();
    if (lex_.peek().kind == Token::Kind::implies_op) {
      lex_.take();
      return LtlFormula::implies_of(left, implies());  // right-associative
    }
    return left;
  }

  LtlPtr or_expr() {
    LtlPtr left = and_expr();
    while (lex_.peek().kind == Token::Kind::or_op) {
      lex_.take();
      left = LtlFormula::or_of(left, and_expr());
    }
    return left;
  }

  LtlPtr and_expr() {
    LtlPtr left = until_expr();
    while (lex_.peek().kind == Token::Kind::and_op) {
      lex_.take();
      left = LtlFormula::and_of(left, until_expr());
    }
    return left;
  }

  LtlPtr until_expr() {
    LtlPtr left = unary();
    if (lex_.peek().kind == Token::Kind::u_op) {
      lex_.take();
      return LtlFormula::until_of(left, until_expr());  // right-associative
    }
    return left;
  }

  LtlPtr unary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Token::Kind::not_op:
        lex_.take();
        return LtlFormula::not_of(unary());
      case Token::Kind::f_op:
      case Token::Kind::g_op: {
        Token op = lex_.take();
        expect(Token::Kind::lparen, "'(' after " + op.text);
        LtlPtr body = implies();
        expect(Token::Kind::rparen, "')'");
        return op.kind == Token::Kind::f_op ? LtlFormula::finally_of(body)
                                            : LtlFormula::globally_of(body);
      }
      case Token::Kind::lparen: {
        lex_.take();
        LtlPtr body = implies();
        expect(Token::Kind::rparen, "')'");
        return body;
      }
      case Token::Kind::atom:
        return LtlFormula::atom(lex_.take().text);
      default:
        throw ParseError("expected a formula", t.pos);
    }
  }

  void expect(Token::Kind kind, const std::string& what) {
    if (lex_.peek().kind != kind) throw ParseError("expected " + what, lex_.peek().pos);
    lex_.take();
  }

  Lexer lex_;
};

}  // namespace

LtlPtr parse_formula(const std::string& text) { return Parser(text).parse(); }

std::string to_string(const LtlFormula& f) {
  using Op = LtlFormula::Op;
  switch (f.op) {
    case Op::atom: {
      std::string out = "\"";
      out += f.label;
      out += '"';
      return out;
    }
    case Op::not_: return "!" + to_string(*f.lhs);
    case Op::and_: return "(" + to_string(*f.lhs) + " & " + to_string(*f.rhs) + ")";
    case Op::or_: return "(" + to_string(*f.lhs) + " | " + to_string(*f.rhs) + ")";
    case Op::implies: return "(" + to_string(*f.lhs) + " -> " + to_string(*f.rhs) + ")";
    case Op::finally_: return "F(" + to_string(*f.lhs) + ")";
    case Op::globally: return "G(" + to_string(*f.lhs) + ")";
    case Op::until: return "(" + to_string(*f.lhs) + " U " + to_string(*f.rhs) + ")";
  }
  throw Error("bad formula op");
}

// --- evaluation --------------------------------------------------------------

namespace {

std::string trim_view(const std::string& s) { return trim(s); }

// Truth value of f at every trace position, computed back to front.
std::vector<char> eval_positions(const LtlFormula& f, const std::vector<std::string>& trace) {
  using Op = LtlFormula::Op;
  const std::size_t n = trace.size();
  std::vector<char> out(n, 0);
  switch (f.op) {
    case Op::atom: {
      for (std::size_t i = 0; i < n; ++i) out[i] = trim_view(trace[i]) == f.label;
      return out;
    }
    case Op::not_: {
      auto a = eval_positions(*f.lhs, trace);
      for (std::size_t i = 0; i < n; ++i) out[i] = !a[i];
      return out;
    }
    case Op::and_: {
      auto a = eval_positions(*f.lhs, trace);
      auto b = eval_positions(*f.rhs, trace);
      for (std::size_t i = 0; i < n; ++i) out[i] = a[i] && b[i];
      return out;
    }
    case Op::or_: {
      auto a = eval_positions(*f.lhs, trace);
      auto b = eval_positions(*f.rhs, trace);
      for (std::size_t i = 0; i < n; ++i) out[i] = a[i] || b[i];
      return out;
    }
    case Op::implies: {
      auto a = eval_positions(*f.lhs, trace);
      auto b = eval_positions(*f.rhs, trace);
      for (std::size_t i = 0; i < n; ++i) out[i] = !a[i] || b[i];
      return out;
    }
    case Op::finally_: {
      auto a = eval_positions(*f.lhs, trace);
      char acc = 0;
      for (std::size_t i = n; i-- > 0;) {
        acc = acc || a[i];
        out[i] = acc;
      }
      return out;
    }
    case Op::globally: {
      auto a = eval_positions(*f.lhs, trace);
      char acc = 1;
      for (std::size_t i = n; i-- > 0;) {
        acc = acc && a[i];
        out[i] = acc;
      }
      return out;
    }
    case Op::until: {
      auto a = eval_positions(*f.lhs, trace);
      auto b = eval_positions(*f.rhs, trace);
      char next = 0;  // f U g is false past the end of the trace
      for (std::size_t i = n; i-- > 0;) {
        out[i] = b[i] || (a[i] && next);
        next = out[i];
      }
      return out;
    }
  }
  throw Error("bad formula op");
}

}  // namespace

bool evaluate(const LtlFormula& f, const std::vector<std::string>& trace) {
  if (trace.empty()) throw Error("cannot evaluate LTL on an empty trace");
  return eval_positions(f, trace)[0] != 0;
}

std::map<std::string, OutcomeLabel> label_log(const EventLog& log, const LtlPtr& formula) {
  std::map<std::string, OutcomeLabel> out;
  for (const auto& c : log.cases) {
    if (c.events.empty()) throw Error("cannot label empty case '" + c.case_id + "'");
    out[c.case_id] = OutcomeLabel{evaluate(formula, c.activity_sequence())};
  }
  return out;
}

}  // namespace premon

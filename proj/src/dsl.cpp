#include "wick/dsl.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wick/checks.hpp"
#include "wick/renormalization.hpp"
#include "wick/serialize.hpp"
#include "wick/stransform.hpp"
#include "wick/stratonovich.hpp"

namespace wick::dsl {

// ---------------------------------------------------------------------------
// AST helpers

namespace {

ExprPtr make(decltype(Expr::node) node) {
  auto e = std::make_shared<Expr>();
  e->node = std::move(node);
  return e;
}

ExprPtr at(ExprPtr e, int line, int column) {
  auto copy = std::make_shared<Expr>(*e);
  copy->line = line;
  copy->column = column;
  return copy;
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

const char* op_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Wick: return "<>";
  }
  return "?";
}

}  // namespace

ExprPtr make_number(double v) { return make(Number{v}); }
ExprPtr make_identifier(std::string name) { return make(Identifier{std::move(name)}); }
ExprPtr make_chaos_literal(int order, std::vector<std::pair<std::vector<int>, double>> entries) {
  return make(ChaosLiteral{order, std::move(entries)});
}
ExprPtr make_exp_vector(std::vector<double> coords) { return make(ExpVector{std::move(coords)}); }
ExprPtr make_negate(ExprPtr e) { return make(Negate{std::move(e)}); }
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) { return make(Binary{op, std::move(lhs), std::move(rhs)}); }
ExprPtr make_power(ExprPtr base, int exponent, bool wick) { return make(Power{std::move(base), exponent, wick}); }

bool equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Number>) return x.value == y.value;
        else if constexpr (std::is_same_v<T, Identifier>) return x.name == y.name;
        else if constexpr (std::is_same_v<T, ChaosLiteral>) return x.order == y.order && x.entries == y.entries;
        else if constexpr (std::is_same_v<T, ExpVector>) return x.coords == y.coords;
        else if constexpr (std::is_same_v<T, Negate>) return equal(*x.operand, *y.operand);
        else if constexpr (std::is_same_v<T, Binary>) return x.op == y.op && equal(*x.lhs, *y.lhs) && equal(*x.rhs, *y.rhs);
        else return x.exponent == y.exponent && x.wick == y.wick && equal(*x.base, *y.base);
      },
      a.node);
}

std::string to_source(const Expr& e) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Number>) {
          return format_number(x.value);
        } else if constexpr (std::is_same_v<T, Identifier>) {
          return x.name;
        } else if constexpr (std::is_same_v<T, ChaosLiteral>) {
          std::string s = "I" + std::to_string(x.order) + "{";
          for (std::size_t i = 0; i < x.entries.size(); ++i) {
            if (i) s += ", ";
            s += "(";
            for (std::size_t k = 0; k < x.entries[i].first.size(); ++k) {
              if (k) s += ",";
              s += std::to_string(x.entries[i].first[k]);
            }
            s += "):" + format_number(x.entries[i].second);
          }
          return s + "}";
        } else if constexpr (std::is_same_v<T, ExpVector>) {
          std::string s = "eps(";
          for (std::size_t i = 0; i < x.coords.size(); ++i) s += (i ? ", " : "") + format_number(x.coords[i]);
          return s + ")";
        } else if constexpr (std::is_same_v<T, Negate>) {
          return "(-" + to_source(*x.operand) + ")";
        } else if constexpr (std::is_same_v<T, Binary>) {
          return "(" + to_source(*x.lhs) + " " + op_text(x.op) + " " + to_source(*x.rhs) + ")";
        } else {
          return "(" + to_source(*x.base) + (x.wick ? " <>^ " : " ^ ") + std::to_string(x.exponent) + ")";
        }
      },
      e.node);
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Wick, Caret, WickCaret, LParen, RParen, LBrace, RBrace, Colon, Comma,
                 Equals, Newline, End };

struct Token {
  Tok kind;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Newline: return "end of line";
    case Tok::End: return "end of input";
    default: return "'" + t.text + "'";
  }
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string text, int c) { out.push_back({k, std::move(text), 0.0, line, c}); };
  while (i < src.size()) {
    const char ch = src[i];
    const int start_col = col;
    if (ch == '\n' || ch == ';') {
      push(Tok::Newline, std::string(1, ch), start_col);
      ++i;
      if (ch == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      continue;
    }
    if (ch == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      ++col;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) ||
        (ch == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i;
      while (j < src.size() && (std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '.')) ++j;
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          j = k;
          while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        }
      }
      const std::string text(src.substr(i, j - i));
      double v = 0.0;
      const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
      if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw ParseError(line, start_col, "malformed number '" + text + "'");
      out.push_back({Tok::Number, text, v, line, start_col});
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      push(Tok::Ident, std::string(src.substr(i, j - i)), start_col);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (src.substr(i, 3) == "<>^") {
      push(Tok::WickCaret, "<>^", start_col);
      i += 3;
      col += 3;
      continue;
    }
    if (src.substr(i, 2) == "<>") {
      push(Tok::Wick, "<>", start_col);
      i += 2;
      col += 2;
      continue;
    }
    Tok k;
    switch (ch) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '{': k = Tok::LBrace; break;
      case '}': k = Tok::RBrace; break;
      case ':': k = Tok::Colon; break;
      case ',': k = Tok::Comma; break;
      case '=': k = Tok::Equals; break;
      default: throw ParseError(line, start_col, std::string("unexpected character '") + ch + "'");
    }
    push(k, std::string(1, ch), start_col);
    ++i;
    ++col;
  }
  out.push_back({Tok::End, "", 0.0, line, col});
  return out;
}

const std::set<std::string>& command_names() {
  static const std::set<std::string> names{"eval",   "expect", "show",    "parse", "stransform",
                                           "translate", "renorm", "humeyer", "check"};
  return names;
}

bool is_chaos_keyword(const std::string& s) {
  if (s.size() < 2 || s[0] != 'I') return false;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  std::vector<Statement> program() {
    std::vector<Statement> out;
    while (peek().kind != Tok::End) {
      if (accept(Tok::Newline)) continue;
      out.push_back(statement());
      if (peek().kind != Tok::End) expect(Tok::Newline, "end of statement");
    }
    return out;
  }

  ExprPtr lone_expression() {
    while (accept(Tok::Newline)) {
    }
    ExprPtr e = expr();
    while (accept(Tok::Newline)) {
    }
    if (peek().kind != Tok::End) fail(peek(), "unexpected " + describe(peek()) + " after expression");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] static void fail(const Token& t, const std::string& msg) { throw ParseError(t.line, t.column, msg); }
  const Token& expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail(peek(), "expected " + what + ", found " + describe(peek()));
    return next();
  }

  Statement statement() {
    const Token& head = peek();
    Statement s;
    s.line = head.line;
    if (head.kind != Tok::Ident) fail(head, "expected an assignment or a command, found " + describe(head));
    if (command_names().contains(head.text)) {
      s.body = command();
      return s;
    }
    if (is_chaos_keyword(head.text) || head.text == "eps") fail(head, "'" + head.text + "' is reserved");
    next();
    expect(Tok::Equals, "'=' after '" + head.text + "'");
    s.body = Assignment{head.text, expr()};
    return s;
  }

  Command command() {
    Command c;
    c.name = next().text;
    if (c.name == "eval") {
      c.target = primary_with_postfix();
      const Token& kw = expect(Tok::Ident, "'at'");
      if (kw.text != "at") fail(kw, "expected 'at', found '" + kw.text + "'");
      c.numbers = number_list();
      if (c.numbers.empty()) fail(peek(), "eval needs at least one coordinate");
    } else if (c.name == "stransform" || c.name == "translate") {
      c.target = primary_with_postfix();
      c.numbers = number_list();
      if (c.numbers.empty()) fail(peek(), c.name + " needs at least one coordinate");
    } else if (c.name == "expect" || c.name == "show" || c.name == "parse" || c.name == "renorm") {
      c.target = expr();
    } else if (c.name == "humeyer") {
      expect(Tok::LBrace, "'{'");
      c.entries = entries();
      expect(Tok::RBrace, "'}'");
    } else {  // check
      if (peek().kind == Tok::Ident) c.argument = next().text;
      else c.argument = "all";
    }
    return c;
  }

  std::vector<double> number_list() {
    std::vector<double> v;
    while (true) {
      double sign = 1.0;
      if (peek().kind == Tok::Minus || peek().kind == Tok::Plus) {
        sign = next().kind == Tok::Minus ? -1.0 : 1.0;
        if (peek().kind != Tok::Number) fail(peek(), "expected a number after the sign");
      }
      if (peek().kind != Tok::Number) break;
      v.push_back(sign * next().number);
      accept(Tok::Comma);
    }
    return v;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const Token& op = next();
      lhs = at(make_binary(op.kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub, lhs, term()), op.line, op.column);
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    while (peek().kind == Tok::Star || peek().kind == Tok::Wick) {
      const Token& op = next();
      lhs = at(make_binary(op.kind == Tok::Star ? BinaryOp::Mul : BinaryOp::Wick, lhs, factor()), op.line, op.column);
    }
    return lhs;
  }

  ExprPtr factor() {
    if (peek().kind == Tok::Minus) {
      const Token& op = next();
      return at(make_negate(factor()), op.line, op.column);
    }
    return primary_with_postfix();
  }

  ExprPtr primary_with_postfix() {
    ExprPtr base = primary();
    while (peek().kind == Tok::Caret || peek().kind == Tok::WickCaret) {
      const Token& op = next();
      const Token& k = expect(Tok::Number, "an integer exponent");
      if (k.number != std::floor(k.number) || k.number < 0 || k.number > 1000)
        fail(k, "exponent must be a non-negative integer");
      base = at(make_power(base, static_cast<int>(k.number), op.kind == Tok::WickCaret), op.line, op.column);
    }
    return base;
  }

  ExprPtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number:
        next();
        return at(make_number(t.number), t.line, t.column);
      case Tok::LParen: {
        next();
        ExprPtr e = expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident: {
        next();
        if (is_chaos_keyword(t.text)) {
          const int order = std::stoi(t.text.substr(1));
          expect(Tok::LBrace, "'{' after " + t.text);
          auto e = entries();
          for (const auto& [tuple, c] : e)
            if (static_cast<int>(tuple.size()) != order)
              fail(t, t.text + " entry (" + std::to_string(tuple.size()) + " indices) does not have order " +
                          std::to_string(order));
          expect(Tok::RBrace, "'}'");
          return at(make_chaos_literal(order, std::move(e)), t.line, t.column);
        }
        if (t.text == "eps") {
          expect(Tok::LParen, "'(' after eps");
          std::vector<double> coords;
          if (peek().kind != Tok::RParen) {
            coords.push_back(signed_number());
            while (accept(Tok::Comma)) coords.push_back(signed_number());
          }
          expect(Tok::RParen, "')'");
          return at(make_exp_vector(std::move(coords)), t.line, t.column);
        }
        if (command_names().contains(t.text)) fail(t, "'" + t.text + "' is a command, not a value");
        return at(make_identifier(t.text), t.line, t.column);
      }
      default:
        fail(t, "expected an expression, found " + describe(t));
    }
  }

  double signed_number() {
    double sign = 1.0;
    if (accept(Tok::Minus)) sign = -1.0;
    return sign * expect(Tok::Number, "a number").number;
  }

  int integer() {
    const Token& t = expect(Tok::Number, "a basis index");
    if (t.number != std::floor(t.number) || t.number < 1 || t.number > 1e6)
      fail(t, "basis index must be a positive integer");
    return static_cast<int>(t.number);
  }

  std::vector<std::pair<std::vector<int>, double>> entries() {
    std::vector<std::pair<std::vector<int>, double>> out;
    if (peek().kind == Tok::RBrace) return out;
    do {
      expect(Tok::LParen, "'(' opening an index tuple");
      std::vector<int> tuple;
      if (peek().kind != Tok::RParen) {
        tuple.push_back(integer());
        while (accept(Tok::Comma)) tuple.push_back(integer());
      }
      expect(Tok::RParen, "')'");
      expect(Tok::Colon, "':'");
      out.emplace_back(std::move(tuple), signed_number());
    } while (accept(Tok::Comma));
    return out;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expression(std::string_view source) { return Parser(source).lone_expression(); }

std::vector<Statement> parse_program(std::string_view source) { return Parser(source).program(); }

// ---------------------------------------------------------------------------
// Interpreter

namespace {

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_number(v[i]);
  return s;
}

PolySeries to_polynomial(const Expr& e, int dim) {
  return std::visit(
      [&](const auto& x) -> PolySeries {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Number>) {
          return PolySeries::constant(dim, x.value);
        } else if constexpr (std::is_same_v<T, Identifier>) {
          if (x.name.size() >= 2 && x.name[0] == 'x') {
            int i = 0;
            const auto res = std::from_chars(x.name.data() + 1, x.name.data() + x.name.size(), i);
            if (res.ec == std::errc() && res.ptr == x.name.data() + x.name.size() && i >= 1 && i <= dim)
              return PolySeries::variable(dim, i);
          }
          throw EvalError(e.line, "renorm: '" + x.name + "' is not a variable x1..x" + std::to_string(dim));
        } else if constexpr (std::is_same_v<T, Negate>) {
          return -1.0 * to_polynomial(*x.operand, dim);
        } else if constexpr (std::is_same_v<T, Binary>) {
          const PolySeries a = to_polynomial(*x.lhs, dim), b = to_polynomial(*x.rhs, dim);
          switch (x.op) {
            case BinaryOp::Add: return a + b;
            case BinaryOp::Sub: return a + -1.0 * b;
            case BinaryOp::Mul: return poly_product(a, b);
            case BinaryOp::Wick: break;
          }
          throw EvalError(e.line, "renorm: '<>' is not allowed in a polynomial");
        } else if constexpr (std::is_same_v<T, Power>) {
          if (x.wick) throw EvalError(e.line, "renorm: '<>^' is not allowed in a polynomial");
          const PolySeries base = to_polynomial(*x.base, dim);
          PolySeries acc = PolySeries::constant(dim, 1.0);
          for (int k = 0; k < x.exponent; ++k) acc = poly_product(acc, base);
          return acc;
        } else {
          throw EvalError(e.line, "renorm: chaos literals and eps(...) are not polynomials");
        }
      },
      e.node);
}

}  // namespace

Session::Session(Options options, std::ostream& out, std::ostream& err)
    : options_(options), out_(out), err_(err) {
  if (options_.dim < 1) throw Error("--dim must be >= 1");
  if (options_.order < 0 || options_.order > kMaxSupportedOrder)
    throw Error("--order must lie in 0.." + std::to_string(kMaxSupportedOrder));
  if (options_.samples < 1) throw Error("--samples must be >= 1");
}

HVector Session::padded(const std::vector<double>& v, int line, const char* what) const {
  if (static_cast<int>(v.size()) > options_.dim)
    throw EvalError(line, std::string(what) + " has " + std::to_string(v.size()) + " coordinates but --dim is " +
                              std::to_string(options_.dim));
  std::vector<double> c = v;
  c.resize(static_cast<std::size_t>(options_.dim), 0.0);
  return HVector(std::move(c));
}

ChaosVector Session::evaluate(const Expr& e) const {
  const int dim = options_.dim, order = options_.order;
  try {
    return std::visit(
        [&](const auto& x) -> ChaosVector {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Number>) {
            return ChaosVector::constant(dim, order, x.value);
          } else if constexpr (std::is_same_v<T, Identifier>) {
            const auto it = vars_.find(x.name);
            if (it == vars_.end()) throw EvalError(e.line, "undefined identifier '" + x.name + "'");
            return it->second;
          } else if constexpr (std::is_same_v<T, ChaosLiteral>) {
            ChaosVector::Terms terms;
            for (const auto& [tuple, c] : x.entries) {
              for (int b : tuple)
                if (b > dim)
                  throw EvalError(e.line, "basis index " + std::to_string(b) + " exceeds --dim " + std::to_string(dim));
              const MultiIndex label = MultiIndex::from_tuple(tuple);
              if (!terms.emplace(label, c).second)
                throw EvalError(e.line, "duplicate label " + label.to_string() + " in I" + std::to_string(x.order));
            }
            if (x.order > order)
              throw EvalError(e.line, "I" + std::to_string(x.order) + " exceeds --order " + std::to_string(order));
            return ChaosVector(dim, order, std::move(terms));
          } else if constexpr (std::is_same_v<T, ExpVector>) {
            return exponential_vector(padded(x.coords, e.line, "eps(...)"), order);
          } else if constexpr (std::is_same_v<T, Negate>) {
            return scale(evaluate(*x.operand), -1.0);
          } else if constexpr (std::is_same_v<T, Binary>) {
            const ChaosVector a = evaluate(*x.lhs), b = evaluate(*x.rhs);
            switch (x.op) {
              case BinaryOp::Add: return a + b;
              case BinaryOp::Sub: return a - b;
              case BinaryOp::Mul: return ordinary_product(a, b);
              case BinaryOp::Wick: return wick_product_truncated(a, b, order);
            }
            return a;
          } else {
            const ChaosVector base = evaluate(*x.base);
            return x.wick ? wick_power_truncated(base, x.exponent, order) : ordinary_power(base, x.exponent);
          }
        },
        e.node);
  } catch (const EvalError&) {
    throw;
  } catch (const Error& ex) {
    throw EvalError(e.line, ex.what());
  }
}

int Session::run(std::string_view source) {
  std::vector<Statement> program;
  try {
    program = parse_program(source);
  } catch (const ParseError& e) {
    err_ << "parse error: " << e.what() << "\n";
    return kExitError;
  }
  bool checks_ok = true;
  for (const auto& s : program) {
    try {
      checks_ok = execute(s) && checks_ok;
    } catch (const EvalError& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitError;
    } catch (const std::exception& e) {
      err_ << "error: line " << s.line << ": " << e.what() << "\n";
      return kExitError;
    }
  }
  return checks_ok ? kExitOk : kExitCheckFailed;
}

bool Session::execute(const Statement& s) {
  if (const auto* a = std::get_if<Assignment>(&s.body)) {
    vars_.insert_or_assign(a->name, evaluate(*a->value));
    return true;
  }
  bool ok = true;
  execute_command(std::get<Command>(s.body), s.line, ok);
  return ok;
}

void Session::execute_command(const Command& c, int line, bool& checks_ok) {
  using nlohmann::ordered_json;
  const auto emit_scalar = [&](double v, const std::string& label = {}) {
    switch (options_.format) {
      case OutputFormat::Text: out_ << format_number(v) << "\n"; break;
      case OutputFormat::Json: {
        ordered_json j{{"command", c.name}};
        if (!label.empty()) j["at"] = label;
        j["value"] = v;
        out_ << j.dump() << "\n";
        break;
      }
      case OutputFormat::Csv: out_ << c.name << ",\"" << label << "\"," << format_number(v) << "\n"; break;
    }
  };
  const auto emit_chaos = [&](const ChaosVector& F, const std::string& key = "value") {
    switch (options_.format) {
      case OutputFormat::Text: out_ << (F.empty() ? "0" : F.to_string()) << "\n"; break;
      case OutputFormat::Json: out_ << ordered_json{{"command", c.name}, {key, to_json(F)}}.dump() << "\n"; break;
      case OutputFormat::Csv:
        for (const auto& [alpha, v] : F.terms())
          out_ << c.name << ",\"" << (key == "value" ? "" : key + ":") << alpha.to_string() << "\"," << format_number(v)
               << "\n";
        break;
    }
  };

  if (c.name == "parse") {
    const std::string text = to_source(*c.target);
    if (options_.format == OutputFormat::Json)
      out_ << ordered_json{{"command", "parse"}, {"ast", text}}.dump() << "\n";
    else
      out_ << text << "\n";
  } else if (c.name == "show") {
    emit_chaos(evaluate(*c.target));
  } else if (c.name == "expect") {
    emit_scalar(expectation(evaluate(*c.target)));
  } else if (c.name == "eval") {
    const HVector x = padded(c.numbers, line, "eval point");
    emit_scalar(evaluate_at(evaluate(*c.target), x.coords()), join(c.numbers));
  } else if (c.name == "stransform") {
    emit_scalar(s_transform(evaluate(*c.target), padded(c.numbers, line, "shift")), join(c.numbers));
  } else if (c.name == "translate") {
    emit_chaos(translate(evaluate(*c.target), padded(c.numbers, line, "shift")));
  } else if (c.name == "renorm") {
    const PolySeries f = to_polynomial(*c.target, options_.dim);
    if (f.degree() > options_.order)
      throw EvalError(line, "renorm: degree " + std::to_string(f.degree()) + " exceeds --order " +
                                std::to_string(options_.order));
    const std::vector<double> unit(static_cast<std::size_t>(options_.dim), 1.0);
    emit_chaos(wick_order_poly(f, unit, options_.order));
  } else if (c.name == "humeyer") {
    if (c.entries.empty()) throw EvalError(line, "humeyer: empty tensor");
    const int n = static_cast<int>(c.entries.front().first.size());
    SymTensor::Values values;
    for (const auto& [tuple, v] : c.entries) {
      if (static_cast<int>(tuple.size()) != n) throw EvalError(line, "humeyer: tuples of different lengths");
      for (int b : tuple)
        if (b > options_.dim) throw EvalError(line, "humeyer: basis index " + std::to_string(b) + " exceeds --dim");
      if (!values.emplace(MultiIndex::from_tuple(tuple), v).second)
        throw EvalError(line, "humeyer: the same unordered tuple appears twice");
    }
    const SymTensor f(options_.dim, n, std::move(values));
    if (n > options_.order) throw EvalError(line, "humeyer: order exceeds --order");
    const ChaosVector S = stratonovich_integral(f, options_.order);
    const ChaosVector I = ito_from_stratonovich(f, options_.order);
    if (options_.format == OutputFormat::Text) {
      out_ << "S_" << n << "(f) = " << (S.empty() ? "0" : S.to_string()) << "\n";
      out_ << "I_" << n << "(f) = " << (I.empty() ? "0" : I.to_string()) << "\n";
    } else if (options_.format == OutputFormat::Json) {
      out_ << ordered_json{{"command", "humeyer"}, {"order", n}, {"stratonovich", to_json(S)}, {"ito", to_json(I)}}
                  .dump()
           << "\n";
    } else {
      emit_chaos(S, "S");
      emit_chaos(I, "I");
    }
  } else if (c.name == "check") {
    CheckConfig cfg;
    cfg.seed = options_.seed;
    cfg.samples = options_.samples;
    cfg.tolerance = options_.check_tolerance;
    std::vector<CheckResult> results;
    try {
      results = run_check(c.argument, cfg);
    } catch (const std::invalid_argument& e) {
      std::string names;
      for (const auto& n : check_names()) names += " " + n;
      throw EvalError(line, std::string(e.what()) + "; available: all" + names);
    }
    int failed = 0;
    for (const auto& r : results) {
      out_ << r.to_json().dump() << "\n";
      if (!r.passed) ++failed;
    }
    out_ << ordered_json{{"summary", c.argument},
                         {"checks", results.size()},
                         {"passed", results.size() - static_cast<std::size_t>(failed)},
                         {"failed", failed},
                         {"seed", options_.seed},
                         {"samples", options_.samples},
                         {"gaussian_method", std::string(kGaussianMethod)}}
                .dump()
         << "\n";
    if (failed) checks_ok = false;
  }
}

}  // namespace wick::dsl

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "wick/chaos.hpp"
#include "wick/errors.hpp"

namespace wick::dsl {

// Grammar (LL(1)):
//
//   program   := (stmt? terminator)*            terminator := newline | ';'
//   stmt      := ident '=' expr | command
//   expr      := term (('+' | '-') term)*
//   term      := factor (('*' | '<>') factor)*
//   factor    := '-' factor | primary (('^' | '<>^') int)*
//   primary   := number | ident | 'I'<n> '{' entries? '}' | 'eps' '(' numbers? ')' | '(' expr ')'
//   entries   := tuple ':' number (',' tuple ':' number)*
//   tuple     := '(' int (',' int)* ')' | '(' ')'
//
// Commands: eval X at n..., expect E, show E, parse E, stransform X n...,
// translate X n..., renorm POLY, humeyer {entries}, check [name|all],
// where X is a primary and n... are signed numbers.  '#' starts a comment.

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// Runtime failure tied to a source line (undefined identifier, overflow, ...).
class EvalError : public Error {
 public:
  EvalError(int line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class BinaryOp { Add, Sub, Mul, Wick };

struct Number {
  double value;
};
struct Identifier {
  std::string name;
};
/// I<order>{(i,j,..):c, ...}: Hermite-basis coefficients, labels given as basis tuples.
struct ChaosLiteral {
  int order;
  std::vector<std::pair<std::vector<int>, double>> entries;
};
struct ExpVector {
  std::vector<double> coords;
};
struct Negate {
  ExprPtr operand;
};
struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct Power {
  ExprPtr base;
  int exponent;
  bool wick;
};

struct Expr {
  std::variant<Number, Identifier, ChaosLiteral, ExpVector, Negate, Binary, Power> node;
  int line = 0;
  int column = 0;
};

ExprPtr make_number(double v);
ExprPtr make_identifier(std::string name);
ExprPtr make_chaos_literal(int order, std::vector<std::pair<std::vector<int>, double>> entries);
ExprPtr make_exp_vector(std::vector<double> coords);
ExprPtr make_negate(ExprPtr e);
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_power(ExprPtr base, int exponent, bool wick);

/// Structural equality (source positions ignored).
bool equal(const Expr& a, const Expr& b);

/// Fully parenthesized source form; parse_expression(to_source(e)) is equal to e.
std::string to_source(const Expr& e);

ExprPtr parse_expression(std::string_view source);

struct Assignment {
  std::string name;
  ExprPtr value;
};

struct Command {
  std::string name;
  ExprPtr target;                 // eval/expect/show/parse/stransform/translate/renorm
  std::vector<double> numbers;    // eval/stransform/translate
  std::string argument;           // check
  std::vector<std::pair<std::vector<int>, double>> entries;  // humeyer
};

struct Statement {
  std::variant<Assignment, Command> body;
  int line = 0;
};

std::vector<Statement> parse_program(std::string_view source);

enum class OutputFormat { Text, Json, Csv };

struct Options {
  int dim = 2;
  int order = 8;
  std::uint64_t seed = 20261016;
  std::int64_t samples = 1'000'000;
  OutputFormat format = OutputFormat::Text;
  double check_tolerance = 1e-9;
};

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitError = 2;

class Session {
 public:
  Session(Options options, std::ostream& out, std::ostream& err);

  /// Parses and executes a whole program; stops at the first error.
  int run(std::string_view source);

  /// Evaluates an expression against the current bindings.
  ChaosVector evaluate(const Expr& e) const;

  const std::map<std::string, ChaosVector>& bindings() const noexcept { return vars_; }
  const Options& options() const noexcept { return options_; }

 private:
  bool execute(const Statement& s);  // false when a check failed
  void execute_command(const Command& c, int line, bool& checks_ok);
  HVector padded(const std::vector<double>& v, int line, const char* what) const;

  Options options_;
  std::ostream& out_;
  std::ostream& err_;
  std::map<std::string, ChaosVector> vars_;
};

}  // namespace wick::dsl

#ifndef AIJ_FLATTEN_HPP
#define AIJ_FLATTEN_HPP

// Flattening of values and terms into straight-line builds: a sequence of
// local assignments in postorder followed by one final expression. Each
// expression is one factory call whose operands are earlier locals, so the
// build of a deep structure never nests more than one call.

#include <string>
#include <vector>

#include "aij/terms.hpp"

namespace aij {

enum class Factory {
  integer,             // literal integer
  rational,            // literal ratio
  number,              // literal complex rational
  character,           // literal character
  string,              // literal string
  symbol,              // literal symbol
  cons,                // operands: car, cdr
  variable,            // literal: the variable symbol
  constant,            // operands: value local
  lambda,              // literal: parameter list; operands: body term local
  application,         // literal: function symbol; operands: argument term locals
  lambda_application,  // operands: lambda local, then argument term locals
};

enum class LocalKind { value, term, lambda };

struct BuildExpr {
  Factory factory;
  Value literal = nil();
  std::vector<std::string> operands;

  friend bool operator==(const BuildExpr&, const BuildExpr&) = default;
};

struct BuildStatement {
  LocalKind kind;
  std::string local;
  BuildExpr expr;

  friend bool operator==(const BuildStatement&, const BuildStatement&) = default;
};

struct FlattenedBuild {
  std::vector<BuildStatement> statements;
  BuildExpr final_expression;
};

/// Local counters shared by the flattenings of one generated method, so
/// local names stay distinct. Names are numbered from 1.
struct FlattenCounters {
  int value = 0;
  int term = 0;
  int lambda = 0;
};

namespace detail {

class Flattener {
 public:
  explicit Flattener(FlattenCounters& counters) : counters_(counters) {}

  BuildExpr value_expr(const Value& v) {
    switch (v.kind()) {
      case ValueKind::integer: return {Factory::integer, v, {}};
      case ValueKind::ratio: return {Factory::rational, v, {}};
      case ValueKind::complex_rational: return {Factory::number, v, {}};
      case ValueKind::character: return {Factory::character, v, {}};
      case ValueKind::string: return {Factory::string, v, {}};
      case ValueKind::symbol: return {Factory::symbol, v, {}};
      case ValueKind::cons: break;
    }
    std::string car = bind(LocalKind::value, value_expr(get_car(v)));
    std::string cdr = bind(LocalKind::value, value_expr(get_cdr(v)));
    return {Factory::cons, nil(), {std::move(car), std::move(cdr)}};
  }

  BuildExpr term_expr(const Term& t) {
    const auto& node = t.data().node;
    if (const auto* var = std::get_if<Variable>(&node)) return {Factory::variable, var->symbol, {}};
    if (const auto* c = std::get_if<Constant>(&node)) {
      return {Factory::constant, nil(), {bind(LocalKind::value, value_expr(c->value))}};
    }
    const auto& app = std::get<Application>(node);
    std::vector<std::string> operands;
    const auto* named = std::get_if<NamedFn>(&app.fn.data().node);
    if (named == nullptr) operands.push_back(lambda_local(std::get<Lambda>(app.fn.data().node)));
    for (const auto& arg : app.args) operands.push_back(bind(LocalKind::term, term_expr(arg)));
    if (named != nullptr) return {Factory::application, named->symbol, std::move(operands)};
    return {Factory::lambda_application, nil(), std::move(operands)};
  }

  std::vector<BuildStatement> take_statements() { return std::move(statements_); }

 private:
  std::string lambda_local(const Lambda& lambda) {
    std::vector<Value> params(lambda.params.begin(), lambda.params.end());
    std::string body = bind(LocalKind::term, term_expr(lambda.body));
    return bind(LocalKind::lambda, {Factory::lambda, make_list(params), {std::move(body)}});
  }

  std::string bind(LocalKind kind, BuildExpr expr) {
    std::string name;
    switch (kind) {
      case LocalKind::value: name = "value" + std::to_string(++counters_.value); break;
      case LocalKind::term: name = "term" + std::to_string(++counters_.term); break;
      case LocalKind::lambda: name = "lambda" + std::to_string(++counters_.lambda); break;
    }
    statements_.push_back({kind, name, std::move(expr)});
    return name;
  }

  FlattenCounters& counters_;
  std::vector<BuildStatement> statements_;
};

}  // namespace detail

/// Postorder build of `v`: every cons child is assigned to a value local
/// before the cons that uses it. Atoms are built directly.
[[nodiscard]] inline FlattenedBuild flatten_value(const Value& v, FlattenCounters& counters) {
  detail::Flattener f(counters);
  BuildExpr final_expression = f.value_expr(v);
  return {f.take_statements(), std::move(final_expression)};
}

[[nodiscard]] inline FlattenedBuild flatten_value(const Value& v) {
  FlattenCounters counters;
  return flatten_value(v, counters);
}

/// Build of `t`: quoted values go to value locals, arguments and lambda
/// bodies to term locals, lambdas to lambda locals.
[[nodiscard]] inline FlattenedBuild flatten_term(const Term& t, FlattenCounters& counters) {
  detail::Flattener f(counters);
  BuildExpr final_expression = f.term_expr(t);
  return {f.take_statements(), std::move(final_expression)};
}

[[nodiscard]] inline FlattenedBuild flatten_term(const Term& t) {
  FlattenCounters counters;
  return flatten_term(t, counters);
}

}  // namespace aij

#endif  // AIJ_FLATTEN_HPP

#ifndef AIJ_TERMS_HPP
#define AIJ_TERMS_HPP

// Translated terms (variables, quoted constants, applications) and the
// functions they apply (named functions, closed lambda expressions).
// Nothing beyond duplicate lambda parameters is checked when building;
// arity and closedness are checked during evaluation.

#include <algorithm>
#include <memory>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "aij/values.hpp"

namespace aij {

struct TermData;
struct FnData;

class Term {
 public:
  explicit Term(std::shared_ptr<const TermData> data) noexcept : data_(std::move(data)) {}
  [[nodiscard]] const TermData& data() const noexcept { return *data_; }

 private:
  std::shared_ptr<const TermData> data_;
};

class Fn {
 public:
  explicit Fn(std::shared_ptr<const FnData> data) noexcept : data_(std::move(data)) {}
  [[nodiscard]] const FnData& data() const noexcept { return *data_; }

 private:
  std::shared_ptr<const FnData> data_;
};

struct Variable {
  Symbol symbol;
};

struct Constant {
  Value value;
};

struct Application {
  Fn fn;
  std::vector<Term> args;
};

struct NamedFn {
  Symbol symbol;
};

struct Lambda {
  std::vector<Symbol> params;
  Term body;
};

struct TermData {
  std::variant<Variable, Constant, Application> node;
};

struct FnData {
  std::variant<NamedFn, Lambda> node;
};

[[nodiscard]] inline Term make_variable(Symbol s) {
  return Term(std::make_shared<const TermData>(TermData{Variable{std::move(s)}}));
}

[[nodiscard]] inline Term make_constant(Value v) {
  return Term(std::make_shared<const TermData>(TermData{Constant{std::move(v)}}));
}

[[nodiscard]] inline Fn make_named_fn(Symbol s) {
  return Fn(std::make_shared<const FnData>(FnData{NamedFn{std::move(s)}}));
}

/// Throws `duplicate-params` if a parameter occurs twice.
[[nodiscard]] inline Fn make_lambda(std::vector<Symbol> params, Term body) {
  std::unordered_set<Symbol, SymbolHash> seen;
  for (const auto& p : params) {
    if (!seen.insert(p).second) fail(ErrorKind::duplicate_params, "parameter " + std::string(p.name()) + " repeated");
  }
  return Fn(std::make_shared<const FnData>(FnData{Lambda{std::move(params), std::move(body)}}));
}

[[nodiscard]] inline Term make_application(Fn fn, std::vector<Term> args) {
  return Term(std::make_shared<const TermData>(TermData{Application{std::move(fn), std::move(args)}}));
}

inline bool operator==(const Term& a, const Term& b);

inline bool operator==(const Fn& a, const Fn& b) {
  if (&a.data() == &b.data()) return true;
  return std::visit(
      [&]<class A>(const A& x) {
        const auto* y = std::get_if<A>(&b.data().node);
        if (y == nullptr) return false;
        if constexpr (std::is_same_v<A, NamedFn>) {
          return x.symbol == y->symbol;
        } else {
          return x.params == y->params && x.body == y->body;
        }
      },
      a.data().node);
}

/// Structural equality.
inline bool operator==(const Term& a, const Term& b) {
  if (&a.data() == &b.data()) return true;
  return std::visit(
      [&]<class A>(const A& x) {
        const auto* y = std::get_if<A>(&b.data().node);
        if (y == nullptr) return false;
        if constexpr (std::is_same_v<A, Variable>) {
          return x.symbol == y->symbol;
        } else if constexpr (std::is_same_v<A, Constant>) {
          return value_equal(x.value, y->value);
        } else {
          return x.fn == y->fn && x.args == y->args;
        }
      },
      a.data().node);
}

namespace detail {
inline void collect_free_vars(const Term& t, std::unordered_set<Symbol, SymbolHash>& out) {
  if (const auto* v = std::get_if<Variable>(&t.data().node)) {
    out.insert(v->symbol);
  } else if (const auto* app = std::get_if<Application>(&t.data().node)) {
    for (const auto& a : app->args) collect_free_vars(a, out);
    // lambda bodies are closed over their own parameters; their free
    // variables do not leak into the enclosing term
  }
}
}  // namespace detail

/// Variables occurring free in t.
[[nodiscard]] inline std::unordered_set<Symbol, SymbolHash> free_variables(const Term& t) {
  std::unordered_set<Symbol, SymbolHash> out;
  detail::collect_free_vars(t, out);
  return out;
}

/// True when every lambda inside t (at any depth) has free(body) within its params.
[[nodiscard]] inline bool lambdas_closed(const Term& t) {
  const auto* app = std::get_if<Application>(&t.data().node);
  if (app == nullptr) return true;
  if (const auto* lam = std::get_if<Lambda>(&app->fn.data().node)) {
    for (const auto& v : free_variables(lam->body)) {
      if (std::find(lam->params.begin(), lam->params.end(), v) == lam->params.end()) return false;
    }
    if (!lambdas_closed(lam->body)) return false;
  }
  for (const auto& a : app->args) {
    if (!lambdas_closed(a)) return false;
  }
  return true;
}

}  // namespace aij

#endif  // AIJ_TERMS_HPP

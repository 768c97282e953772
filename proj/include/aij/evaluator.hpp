#ifndef AIJ_EVALUATOR_HPP
#define AIJ_EVALUATOR_HPP

// Recursive-descent evaluation of terms. `if` is non-strict: only the chosen
// branch is evaluated. `return-last` evaluates only its last argument, which
// is how mbe-style definitions execute in the logic. Other applications
// evaluate their arguments left to right and then apply the function.
//
// Evaluation is pure and reentrant; deep recursion needs a large stack (see
// aij/stack.hpp).

#include <span>
#include <string>
#include <utility>

#include <boost/container/small_vector.hpp>

#include "aij/primitives.hpp"

namespace aij {

/// Variable bindings of one lambda application.
class Bindings {
 public:
  Bindings() = default;

  void bind(const Symbol& var, Value value) { entries_.emplace_back(var.identity(), std::move(value)); }

  [[nodiscard]] const Value* find(const Symbol& var) const noexcept {
    for (const auto& [key, value] : entries_) {
      if (key == var.identity()) return &value;
    }
    return nullptr;
  }

  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }

 private:
  boost::container::small_vector<std::pair<const void*, Value>, 4> entries_;
};

namespace detail {
inline std::string qualified(const Symbol& s) {
  return std::string(s.package().str()) + "::" + std::string(s.name());
}
}  // namespace detail

inline Value eval_term(const Environment& env, const Term& term, const Bindings& bindings);
inline Value apply_function(const Environment& env, const Fn& fn, std::span<const Value> args);

namespace detail {

inline Value apply_lambda(const Environment& env, const Lambda& lambda, std::span<const Value> args) {
  if (args.size() != lambda.params.size()) {
    fail(ErrorKind::arity, "lambda expects " + std::to_string(lambda.params.size()) + " arguments, got " +
                               std::to_string(args.size()));
  }
  Bindings fresh;
  for (std::size_t i = 0; i < args.size(); ++i) fresh.bind(lambda.params[i], args[i]);
  return eval_term(env, lambda.body, fresh);
}

// Primitive, defined function, or error; does not require a sealed environment.
inline Value dispatch(const Environment& env, const Symbol& name, std::span<const Value> args) {
  if (const auto& observer = env.call_observer()) observer(name);
  const Primitive prim = name.primitive();
  if (prim == Primitive::if_) {
    if (args.size() != 3) fail(ErrorKind::arity, "IF expects 3 arguments, got " + std::to_string(args.size()));
    return is_nil(args[0]) ? args[2] : args[1];
  }
  if (prim != Primitive::none) return apply_primitive(env, prim, args);
  if (name == constants().return_last) {
    if (args.size() != 3) fail(ErrorKind::arity, "RETURN-LAST expects 3 arguments, got " + std::to_string(args.size()));
    return args[2];
  }
  const Fn* fn = env.find_function(name);
  if (fn == nullptr) fail(ErrorKind::undefined_function, qualified(name) + " is not defined");
  return apply_lambda(env, std::get<Lambda>(fn->data().node), args);
}

}  // namespace detail

/// Value of `term` under `bindings`.
inline Value eval_term(const Environment& env, const Term& term, const Bindings& bindings) {
  const auto& node = term.data().node;
  switch (node.index()) {
    case 0: {
      const Symbol& var = std::get<Variable>(node).symbol;
      const Value* v = bindings.find(var);
      if (v == nullptr) fail(ErrorKind::unbound_variable, detail::qualified(var) + " is unbound");
      return *v;
    }
    case 1:
      return std::get<Constant>(node).value;
    default:
      break;
  }
  const auto& app = std::get<Application>(node);
  if (const auto* named = std::get_if<NamedFn>(&app.fn.data().node)) {
    const Symbol& name = named->symbol;
    if (name.primitive() == Primitive::if_) {
      if (app.args.size() != 3) {
        fail(ErrorKind::arity, "IF expects 3 arguments, got " + std::to_string(app.args.size()));
      }
      const Value test = eval_term(env, app.args[0], bindings);
      return eval_term(env, app.args[is_nil(test) ? 2 : 1], bindings);
    }
    if (name == constants().return_last) {
      if (app.args.size() != 3) {
        fail(ErrorKind::arity, "RETURN-LAST expects 3 arguments, got " + std::to_string(app.args.size()));
      }
      return eval_term(env, app.args[2], bindings);
    }
  }
  boost::container::small_vector<Value, 4> values;
  values.reserve(app.args.size());
  for (const auto& arg : app.args) values.push_back(eval_term(env, arg, bindings));
  return apply_function(env, app.fn, std::span<const Value>(values.data(), values.size()));
}

/// Applies a lambda (fresh bindings of its parameters) or a named function.
inline Value apply_function(const Environment& env, const Fn& fn, std::span<const Value> args) {
  if (const auto* named = std::get_if<NamedFn>(&fn.data().node)) return detail::dispatch(env, named->symbol, args);
  return detail::apply_lambda(env, std::get<Lambda>(fn.data().node), args);
}

/// Top-level call of a primitive or defined function on values. The
/// environment must be sealed; `if` is applied strictly here since its
/// arguments are already values.
inline Value call_function(const Environment& env, const Symbol& name, std::span<const Value> args) {
  if (!env.is_sealed()) fail(ErrorKind::not_initialized, "environment is not initialized");
  return detail::dispatch(env, name, args);
}

inline Value call_function(const Environment& env, const Symbol& name, std::initializer_list<Value> args) {
  return call_function(env, name, std::span<const Value>(args.begin(), args.size()));
}

}  // namespace aij

#endif  // AIJ_EVALUATOR_HPP

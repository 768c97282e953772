#include <gtest/gtest.h>

#include <thread>

#include "test_support.hpp"

using namespace aij;
using testing_support::sym;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error signalled";
  return ErrorKind::io;
}

Environment with_packages() {
  Environment env;
  env.add_package_def(make_package_name("COMMON-LISP"), {});
  std::vector<Symbol> imports;
  for (auto name : acl2_common_lisp_imports) imports.push_back(make_symbol_raw("COMMON-LISP", name));
  env.add_package_def(make_package_name("ACL2"), imports);
  env.set_package_witness_name("ACL2-PKG-WITNESS");
  return env;
}

Value eval_text(const Environment& env, std::string_view text) {
  return eval_term(env, read_term(env, text), Bindings{});
}

const Environment& lists_env() {
  static const Environment env = load_direct(
      testing_support::load_fixture("lists.dump"),
      {parse_symbol_token("LEN-FAST"), parse_symbol_token("REV"), parse_symbol_token("SUM-SQUARE"),
       parse_symbol_token("SCALE-SUM")});
  return env;
}

}  // namespace

TEST(Terms, LambdaRejectsDuplicateParams) {
  EXPECT_EQ(kind_of([] { (void)make_lambda({sym("ACL2", "X"), sym("ACL2", "X")}, make_constant(nil())); }),
            ErrorKind::duplicate_params);
}

TEST(Terms, StructuralEqualityAndFreeVariables) {
  const Term a = read_term("((lambda (x y) (binary-+ x y)) z '1)");
  const Term b = read_term("((lambda (x y) (binary-+ x y)) z '1)");
  const Term c = read_term("((lambda (x y) (binary-+ y x)) z '1)");
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a == c);
  const auto free = free_variables(a);
  EXPECT_EQ(free.size(), 1u);
  EXPECT_TRUE(free.contains(sym("ACL2", "Z")));
  EXPECT_TRUE(lambdas_closed(a));
  EXPECT_FALSE(lambdas_closed(read_term("((lambda (x) (binary-+ x w)) '1)")));
}

TEST(Environment, PackagesAndImports) {
  Environment env = with_packages();
  EXPECT_EQ(env.resolve_symbol("ACL2", "CAR"), sym("COMMON-LISP", "CAR"));
  EXPECT_EQ(env.resolve_symbol("ACL2", "FACT"), sym("ACL2", "FACT"));
  EXPECT_EQ(kind_of([&] { (void)env.resolve_symbol("NOPE", "X"); }), ErrorKind::unknown_package);
  EXPECT_EQ(kind_of([&] { env.add_package_def(make_package_name("ACL2"), {}); }), ErrorKind::duplicate_package);
  EXPECT_EQ(kind_of([&] { env.set_package_witness_name("W"); }), ErrorKind::witness_already_set);
  const auto names = env.package_names();
  ASSERT_EQ(names.size(), 2u);
  EXPECT_EQ(names[0].str(), "COMMON-LISP");
  EXPECT_EQ(names[1].str(), "ACL2");
  EXPECT_EQ(env.package_imports("ACL2")->size(), acl2_common_lisp_imports.size());
  EXPECT_EQ(env.package_imports("NOPE"), nullptr);
}

TEST(Environment, FunctionDefinitionRules) {
  Environment env = with_packages();
  const Symbol f = sym("ACL2", "F");
  const Symbol x = sym("ACL2", "X");
  env.add_function_def(f, {x}, make_variable(x));
  EXPECT_EQ(kind_of([&] { env.add_function_def(f, {x}, make_variable(x)); }), ErrorKind::duplicate_function);
  EXPECT_EQ(kind_of([&] { env.add_function_def(sym("COMMON-LISP", "CAR"), {x}, make_variable(x)); }),
            ErrorKind::duplicate_function);
  EXPECT_EQ(kind_of([&] { env.add_function_def(constants().return_last, {x}, make_variable(x)); }),
            ErrorKind::duplicate_function);
  EXPECT_EQ(kind_of([&] { env.add_function_def(sym("ACL2", "G"), {x, x}, make_variable(x)); }),
            ErrorKind::duplicate_params);
  EXPECT_EQ(env.find_function(sym("ACL2", "G")), nullptr);
  EXPECT_EQ(kind_of([&] { (void)call_function(env, f, {make_integer(1)}); }), ErrorKind::not_initialized);
  env.seal();
  EXPECT_EQ(call_function(env, f, {make_integer(1)}), make_integer(1));
  EXPECT_EQ(kind_of([&] { env.seal(); }), ErrorKind::sealed);
  EXPECT_EQ(kind_of([&] { env.add_package_def(make_package_name("Z"), {}); }), ErrorKind::sealed);
  EXPECT_EQ(kind_of([&] { env.add_function_def(sym("ACL2", "H"), {}, make_constant(nil())); }), ErrorKind::sealed);
  EXPECT_EQ(kind_of([&] { env.set_package_witness_name("W"); }), ErrorKind::sealed);
}

TEST(Evaluator, FactorialMatchesGmp) {
  const Environment env = load_direct(testing_support::load_fixture("fact.dump"), {parse_symbol_token("FACT")});
  const Symbol fact = sym("ACL2", "FACT");
  for (unsigned n = 0; n <= 30; ++n) {
    EXPECT_EQ(call_function(env, fact, {make_integer(n)}), testing_support::from_mpz(testing_support::factorial_oracle(n)))
        << n;
  }
  // zp treats non-naturals as zero
  EXPECT_EQ(call_function(env, fact, {make_integer(-3)}), make_integer(1));
  EXPECT_EQ(call_function(env, fact, {make_string("x")}), make_integer(1));
}

TEST(Evaluator, FibonacciMatchesGmp) {
  const Environment env = load_direct(testing_support::load_fixture("fib.dump"), {parse_symbol_token("FIB")});
  for (unsigned n = 0; n <= 20; ++n) {
    EXPECT_EQ(call_function(env, sym("ACL2", "FIB"), {make_integer(n)}),
              testing_support::from_mpz(testing_support::fibonacci_oracle(n)));
  }
}

TEST(Evaluator, IfIsNonStrict) {
  Environment env = with_packages();
  env.seal();
  int calls = 0;
  env.set_call_observer([&](const Symbol& s) {
    if (s.name() == "UNDEFINED-FN") ++calls;
  });
  EXPECT_EQ(eval_text(env, "(if 't '1 (undefined-fn))"), make_integer(1));
  EXPECT_EQ(eval_text(env, "(if 'nil (undefined-fn) '2)"), make_integer(2));
  EXPECT_EQ(calls, 0);
  EXPECT_EQ(kind_of([&] { (void)eval_text(env, "(if 'nil '1 (undefined-fn))"); }), ErrorKind::undefined_function);
  EXPECT_EQ(calls, 1);
}

TEST(Evaluator, ReturnLastUsesLastArgument) {
  EXPECT_EQ(call_function(lists_env(), sym("ACL2", "LEN-FAST"), {read_value("(a b c d)")}), make_integer(4));
  Environment env = with_packages();
  env.seal();
  EXPECT_EQ(eval_text(env, "(return-last 'mbe1-raw (undefined-fn) '5)"), make_integer(5));
}

TEST(Evaluator, LambdasBindFreshly) {
  EXPECT_EQ(call_function(lists_env(), sym("ACL2", "SUM-SQUARE"), {make_integer(2), make_integer(3)}),
            make_integer(25));
  EXPECT_EQ(call_function(lists_env(), sym("ACL2", "SCALE-SUM"), {make_integer(2), make_integer(3)}),
            make_integer(10));
  EXPECT_EQ(call_function(lists_env(), sym("ACL2", "REV"), {read_value("(1 2 3)")}), read_value("(3 2 1)"));
}

TEST(Evaluator, Errors) {
  Environment env = with_packages();
  env.seal();
  EXPECT_EQ(kind_of([&] { (void)eval_text(env, "x"); }), ErrorKind::unbound_variable);
  EXPECT_EQ(kind_of([&] { (void)eval_text(env, "(nosuch '1)"); }), ErrorKind::undefined_function);
  EXPECT_EQ(kind_of([&] { (void)eval_text(env, "(car '1 '2)"); }), ErrorKind::arity);
  EXPECT_EQ(kind_of([&] { (void)eval_text(env, "((lambda (x) x) '1 '2)"); }), ErrorKind::arity);
  EXPECT_EQ(kind_of([&] { (void)eval_text(env, "(if '1 '2)"); }), ErrorKind::arity);
  EXPECT_EQ(kind_of([&] { (void)call_function(lists_env(), sym("ACL2", "REV"), {}); }), ErrorKind::arity);
  // the body of a lambda sees only its parameters
  EXPECT_EQ(kind_of([&] {
              Bindings b;
              b.bind(sym("ACL2", "W"), make_integer(1));
              (void)eval_term(env, read_term(env, "((lambda (x) (binary-+ x w)) '1)"), b);
            }),
            ErrorKind::unbound_variable);
}

TEST(Evaluator, TopLevelIfIsStrict) {
  Environment env = with_packages();
  env.seal();
  EXPECT_EQ(call_function(env, constants().if_, {nil(), make_integer(1), make_integer(2)}), make_integer(2));
}

TEST(Evaluator, DeepRecursionOnLargeStack) {
  const Environment env = load_direct(testing_support::load_fixture("fact.dump"), {parse_symbol_token("FACT")});
  const Value r = run_with_stack(std::size_t{1} << 30, [&] {
    return call_function(env, sym("ACL2", "FACT"), {make_integer(10000)});
  });
  EXPECT_EQ(r, testing_support::from_mpz(testing_support::factorial_oracle(10000)));
}

TEST(Evaluator, ConcurrentCallsOnSealedEnvironment) {
  const Environment env = load_direct(testing_support::load_fixture("fib.dump"), {parse_symbol_token("FIB")});
  std::vector<Value> results(4, nil());
  std::vector<std::thread> pool;
  for (int i = 0; i < 4; ++i) {
    pool.emplace_back([&, i] { results[i] = call_function(env, sym("ACL2", "FIB"), {make_integer(18)}); });
  }
  for (auto& t : pool) t.join();
  for (const auto& r : results) EXPECT_EQ(r, make_integer(2584));
}

TEST(Stack, ParseSizeAndErrors) {
  EXPECT_EQ(parse_size("512M"), std::size_t{512} << 20);
  EXPECT_EQ(parse_size("2g"), std::size_t{2} << 30);
  EXPECT_EQ(parse_size("4096"), 4096u);
  EXPECT_THROW((void)parse_size("M"), Error);
  EXPECT_THROW((void)parse_size("12Q"), Error);
  EXPECT_THROW(run_with_stack(1 << 20, []() -> int { fail(ErrorKind::io, "inner"); }), Error);
  int hit = 0;
  run_with_stack(1 << 20, [&] { hit = 1; });
  EXPECT_EQ(hit, 1);
}

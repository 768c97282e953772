#include <gtest/gtest.h>

#include <map>

#include "test_support.hpp"

using namespace aij;
using testing_support::Gen;
using testing_support::GaussQ;

namespace {

const Environment& fact_env() {
  static const Environment env =
      load_direct(testing_support::load_fixture("fact.dump"), {parse_symbol_token("ACL2::FACT")});
  return env;
}

Value call(std::string_view fn, std::initializer_list<std::string_view> args) {
  std::vector<Value> values;
  for (auto a : args) values.push_back(read_value(a, fact_env()));
  return call_function(fact_env(), Symbol(read_value(fn, fact_env())), values);
}

std::string show(std::string_view fn, std::initializer_list<std::string_view> args) {
  return print_value(call(fn, args));
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error signalled";
  return ErrorKind::io;
}

bool same(const GaussQ& a, const Value& v) {
  const GaussQ b = testing_support::to_gauss(v);
  return a.re == b.re && a.im == b.im;
}

}  // namespace

TEST(Arithmetic, ExactRationalAndComplex) {
  EXPECT_EQ(show("binary-+", {"1/2", "1/3"}), "5/6");
  EXPECT_EQ(show("binary-*", {"#c(1 2)", "#c(3 4)"}), "#c(-5 10)");
  EXPECT_EQ(show("binary-+", {"#c(1 2)", "#c(0 -2)"}), "1");
  EXPECT_EQ(show("unary-/", {"#c(3 4)"}), "#c(3/25 -4/25)");
  EXPECT_EQ(show("unary--", {"-1/2"}), "1/2");
  EXPECT_EQ(show("binary-*", {"123456789012345678901234567890", "987654321098765432109876543210"}),
            "121932631137021795226185032733622923332237463801111263526900");
}

TEST(Arithmetic, CompletionOnNonNumbers) {
  EXPECT_EQ(show("binary-+", {"\"x\"", "3"}), "3");
  EXPECT_EQ(show("binary-*", {"(1 2)", "3"}), "0");
  EXPECT_EQ(show("unary-/", {"0"}), "0");
  EXPECT_EQ(show("unary--", {"#\\a"}), "0");
  EXPECT_EQ(show("<", {"\"a\"", "1"}), "T");
  EXPECT_EQ(show("<", {"#c(1 2)", "#c(1 3)"}), "T");
  EXPECT_EQ(show("<", {"#c(1 3)", "#c(1 2)"}), "NIL");
}

TEST(Arithmetic, DifferentialAgainstGmp) {
  Gen g(2024);
  for (int i = 0; i < 5000; ++i) {
    const Value x = g.number();
    const Value y = g.number();
    const GaussQ a = testing_support::to_gauss(x);
    const GaussQ b = testing_support::to_gauss(y);
    ASSERT_TRUE(same(testing_support::gauss_add(a, b), add(x, y)));
    ASSERT_TRUE(same(testing_support::gauss_mul(a, b), multiply(x, y)));
    ASSERT_TRUE(same(testing_support::gauss_inv(a), reciprocal(x)));
    ASSERT_TRUE(same({-a.re, -a.im}, negate(x)));
    ASSERT_TRUE(well_formed(multiply(x, y)));
    ASSERT_TRUE(well_formed(reciprocal(x)));
    if (x.is_rational() && y.is_rational()) { ASSERT_EQ(less_than(x, y), a.re < b.re); }
  }
}

TEST(Arithmetic, FieldLaws) {
  Gen g(99);
  const Value zero = make_integer(0);
  const Value one = make_integer(1);
  for (int i = 0; i < 2000; ++i) {
    const Value x = g.number();
    const Value y = g.number();
    const Value z = g.number();
    ASSERT_EQ(add(x, y), add(y, x));
    ASSERT_EQ(multiply(x, y), multiply(y, x));
    ASSERT_EQ(add(add(x, y), z), add(x, add(y, z)));
    ASSERT_EQ(multiply(multiply(x, y), z), multiply(x, multiply(y, z)));
    ASSERT_EQ(multiply(x, add(y, z)), add(multiply(x, y), multiply(x, z)));
    ASSERT_EQ(add(x, negate(x)), zero);
    if (!is_zero(x)) { ASSERT_EQ(multiply(x, reciprocal(x)), one); }
    ASSERT_EQ(reciprocal(reciprocal(x)), x);
  }
}

TEST(Primitives, CoerceToStringMapsNonCharactersToNul) {
  const Value r = call("coerce", {"(#\\a 7 #\\c)", "string"});
  EXPECT_EQ(get_string(r), std::string("a\0c", 3));
}

TEST(Primitives, ArityAndNotPrimitive) {
  const auto& env = fact_env();
  const Value one = make_integer(1);
  EXPECT_EQ(kind_of([&] { (void)apply_primitive(env, Primitive::car, std::span<const Value>()); }), ErrorKind::arity);
  EXPECT_EQ(kind_of([&] { (void)apply_primitive(env, Primitive::if_, std::span<const Value>(&one, 1)); }),
            ErrorKind::not_primitive);
  EXPECT_EQ(kind_of([&] { (void)apply_primitive(env, make_symbol_raw("ACL2", "FACT"), std::span<const Value>()); }),
            ErrorKind::not_primitive);
}

TEST(Primitives, PackageErrors) {
  EXPECT_EQ(kind_of([] { (void)call("pkg-imports", {"\"NOPE\""}); }), ErrorKind::unknown_package);
  EXPECT_EQ(kind_of([] { (void)call("pkg-witness", {"\"NOPE\""}); }), ErrorKind::unknown_package);
  Environment bare;
  bare.add_package_def(make_package_name("ACL2"), {});
  bare.seal();
  const Value acl2 = make_string("ACL2");
  EXPECT_EQ(kind_of([&] { (void)apply_primitive(bare, Primitive::pkg_witness, std::span<const Value>(&acl2, 1)); }),
            ErrorKind::witness_unset);
}

TEST(Primitives, InternResolvesImports) {
  EXPECT_EQ(call("intern-in-package-of-symbol", {"\"CAR\"", "acl2-user::foo"}).identity(),
            make_symbol_raw("COMMON-LISP", "CAR").identity());
  EXPECT_EQ(call("intern-in-package-of-symbol", {"\"ZAP\"", "acl2-user::foo"}).identity(),
            make_symbol_raw("ACL2-USER", "ZAP").identity());
}

TEST(OracleTable, EveryCasePasses) {
  const auto cases = load_oracle_cases(testing_support::fixture("oracle/completion.oracle"),
                                       ReadOptions{"ACL2", env_resolver(fact_env())});
  ASSERT_GE(cases.size(), 60u);
  std::map<Primitive, int> seen;
  for (const auto& c : cases) {
    ++seen[c.primitive.primitive()];
    const Value got = call_function(fact_env(), c.primitive, c.args);
    EXPECT_EQ(got, c.expected) << "line " << c.line << ": got " << print_value(got) << ", expected "
                               << print_value(c.expected) << " (" << c.provenance << ")";
  }
  for (const auto& info : primitive_table) EXPECT_GE(seen[info.id], 2) << info.name;
}

TEST(OracleTable, Parsing) {
  const auto cases = parse_oracle_cases("; comment\n\n(car (5) nil) ; car of atom\n(binary-+ (\"x\" 3) 3)\n");
  ASSERT_EQ(cases.size(), 2u);
  EXPECT_EQ(cases[0].primitive.primitive(), Primitive::car);
  EXPECT_EQ(cases[0].provenance, "car of atom");
  EXPECT_EQ(cases[0].line, 3u);
  EXPECT_TRUE(is_nil(cases[0].expected));
  EXPECT_EQ(cases[1].args.size(), 2u);
  EXPECT_THROW((void)parse_oracle_cases("(car (5))\n"), Error);
  EXPECT_THROW((void)parse_oracle_cases("(car (5) nil) (car (6) nil)\n"), Error);
  EXPECT_THROW((void)parse_oracle_cases("(car (5) nil\n"), Error);
}

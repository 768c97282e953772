#ifndef AIJ_TEST_SUPPORT_HPP
#define AIJ_TEST_SUPPORT_HPP

// Shared helpers for the unit and acceptance tests: fixture paths, oracles
// built on GMP (independent of the library's Boost arithmetic), random value
// generators, a replay interpreter for flattened builds, and a reachability
// oracle for closures.

#include <gmpxx.h>

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "aij/aij.hpp"

namespace testing_support {

inline std::string fixture(const std::string& name) { return std::string(AIJ_FIXTURES_DIR) + "/" + name; }

inline aij::WorldDump load_fixture(const std::string& name) { return aij::read_world_dump_file(fixture(name)); }

inline aij::Symbol sym(std::string_view package, std::string_view name) { return aij::make_symbol_raw(package, name); }

// ---- GMP oracles -----------------------------------------------------------

inline mpz_class factorial_oracle(unsigned n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline mpz_class fibonacci_oracle(unsigned n) {
  mpz_class r;
  mpz_fib_ui(r.get_mpz_t(), n);
  return r;
}

inline aij::Value from_mpz(const mpz_class& z) { return aij::make_integer(aij::Int(z.get_str())); }

inline mpz_class to_mpz(const aij::Int& i) { return mpz_class(i.str()); }

/// Gaussian rational in GMP terms.
struct GaussQ {
  mpq_class re;
  mpq_class im;
};

inline GaussQ to_gauss(const aij::Value& v) {
  auto q = [](const aij::Value& r) {
    mpq_class x(to_mpz(aij::get_numerator(r)), to_mpz(aij::get_denominator(r)));
    x.canonicalize();
    return x;
  };
  return {q(aij::get_real_part(v)), q(aij::get_imag_part(v))};
}

inline aij::Value from_gauss(const GaussQ& g) {
  auto r = [](const mpq_class& x) {
    return aij::make_rational(aij::Int(x.get_num().get_str()), aij::Int(x.get_den().get_str()));
  };
  return aij::make_number(r(g.re), r(g.im));
}

inline GaussQ gauss_add(const GaussQ& a, const GaussQ& b) { return {a.re + b.re, a.im + b.im}; }
inline GaussQ gauss_mul(const GaussQ& a, const GaussQ& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline GaussQ gauss_inv(const GaussQ& a) {
  if (a.re == 0 && a.im == 0) return {0, 0};
  const mpq_class n = a.re * a.re + a.im * a.im;
  return {a.re / n, -a.im / n};
}

// ---- random generators -----------------------------------------------------

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  long long range(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  aij::Int big_int() {
    if (coin(0.7)) return aij::Int(range(-1000, 1000));
    aij::Int n = range(1, 9);
    const int digits = static_cast<int>(range(1, 40));
    for (int i = 0; i < digits; ++i) n = n * 10 + range(0, 9);
    return coin() ? aij::Int(-n) : n;
  }

  aij::Value rational() {
    aij::Int den = big_int();
    if (den == 0 || coin(0.4)) den = 1;
    return aij::make_rational(big_int(), den);
  }

  aij::Value number() {
    if (coin(0.3)) return rational();
    aij::Value im = rational();
    if (aij::is_zero(im)) im = aij::make_integer(1);
    return aij::make_number(rational(), im);
  }

  std::string name(const std::string& alphabet, int max_len) {
    std::string s;
    const int len = static_cast<int>(range(1, max_len));
    for (int i = 0; i < len; ++i) s.push_back(alphabet[static_cast<std::size_t>(range(0, alphabet.size() - 1))]);
    return s;
  }

  std::string bytes(int max_len) {
    std::string s;
    const int len = static_cast<int>(range(0, max_len));
    for (int i = 0; i < len; ++i) s.push_back(static_cast<char>(range(0, 255)));
    return s;
  }

  aij::Symbol symbol() {
    static const std::vector<std::string> packages{"ACL2", "COMMON-LISP", "KEYWORD", "ACL2-USER", "P", "Q-2"};
    static const std::string plain = "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-*+<>=";
    const std::string& pkg = packages[static_cast<std::size_t>(range(0, packages.size() - 1))];
    const std::string n = coin(0.8) ? name(plain, 8) : bytes(6);
    // symbols as a world holds them: ACL2 names its COMMON-LISP imports
    return aij::resolve_builtin(pkg, n.empty() ? std::string("X") : n);
  }

  aij::Value atom() {
    switch (range(0, 5)) {
      case 0: return aij::make_integer(big_int());
      case 1: return rational();
      case 2: return number();
      case 3: return aij::make_character(range(0, 255));
      case 4: return aij::make_string(bytes(8));
      default: return aij::Value(symbol());
    }
  }

  aij::Value value(int depth) {
    if (depth <= 0 || coin(0.35)) return atom();
    return aij::make_cons(value(depth - 1), value(depth - 1));
  }

 private:
  std::mt19937_64 rng_;
};

// ---- replay of flattened builds ------------------------------------------

/// Rebuilds the value or term described by a FlattenedBuild. Each statement
/// may only refer to locals defined before it.
class Replay {
 public:
  aij::Value value(const aij::FlattenedBuild& b) {
    run(b);
    return value_expr(b.final_expression);
  }

  aij::Term term(const aij::FlattenedBuild& b) {
    run(b);
    return term_expr(b.final_expression);
  }

 private:
  void run(const aij::FlattenedBuild& b) {
    for (const auto& st : b.statements) {
      if (values_.count(st.local) || terms_.count(st.local) || lambdas_.count(st.local)) {
        throw std::runtime_error("local defined twice: " + st.local);
      }
      switch (st.kind) {
        case aij::LocalKind::value: values_.emplace(st.local, value_expr(st.expr)); break;
        case aij::LocalKind::term: terms_.emplace(st.local, term_expr(st.expr)); break;
        case aij::LocalKind::lambda: lambdas_.emplace(st.local, lambda_expr(st.expr)); break;
      }
    }
  }

  template <class M>
  static const typename M::mapped_type& get(const M& m, const std::string& k) {
    auto it = m.find(k);
    if (it == m.end()) throw std::runtime_error("local used before definition: " + k);
    return it->second;
  }

  aij::Value value_expr(const aij::BuildExpr& e) {
    using aij::Factory;
    switch (e.factory) {
      case Factory::integer:
      case Factory::rational:
      case Factory::number:
      case Factory::character:
      case Factory::string:
      case Factory::symbol: return e.literal;
      case Factory::cons: return aij::make_cons(get(values_, e.operands.at(0)), get(values_, e.operands.at(1)));
      default: throw std::runtime_error("not a value factory");
    }
  }

  aij::Fn lambda_expr(const aij::BuildExpr& e) {
    std::vector<aij::Symbol> params;
    for (const aij::Value* p = &e.literal; p->is_cons(); p = &aij::get_cdr(*p)) params.emplace_back(aij::get_car(*p));
    return aij::make_lambda(params, get(terms_, e.operands.at(0)));
  }

  aij::Term term_expr(const aij::BuildExpr& e) {
    using aij::Factory;
    std::vector<aij::Term> args;
    switch (e.factory) {
      case Factory::variable: return aij::make_variable(aij::Symbol(e.literal));
      case Factory::constant: return aij::make_constant(get(values_, e.operands.at(0)));
      case Factory::application:
        for (const auto& o : e.operands) args.push_back(get(terms_, o));
        return aij::make_application(aij::make_named_fn(aij::Symbol(e.literal)), args);
      case Factory::lambda_application:
        for (std::size_t i = 1; i < e.operands.size(); ++i) args.push_back(get(terms_, e.operands[i]));
        return aij::make_application(get(lambdas_, e.operands.at(0)), args);
      default: throw std::runtime_error("not a term factory");
    }
  }

  std::map<std::string, aij::Value> values_;
  std::map<std::string, aij::Term> terms_;
  std::map<std::string, aij::Fn> lambdas_;
};

// ---- reachability oracle -------------------------------------------------

/// Names (PKG::NAME) of dump functions reachable from `roots` through
/// function-position symbols in bodies, by depth-first search over the
/// resolved bodies. Quoted data is skipped.
inline std::set<std::string> reachable(const aij::WorldDump& dump, const std::vector<std::string>& roots) {
  aij::ResolvedDump rd(dump);
  std::set<std::string> seen;
  std::vector<aij::Symbol> stack;
  for (const auto& r : roots) stack.push_back(rd.resolve(aij::parse_symbol_token(r)));
  auto name = [](const aij::Symbol& s) { return std::string(s.package().str()) + "::" + std::string(s.name()); };
  while (!stack.empty()) {
    const aij::Symbol s = stack.back();
    stack.pop_back();
    const aij::FunctionEntry* e = rd.find_entry(s);
    if (e == nullptr || !seen.insert(name(s)).second) continue;
    const aij::Value body = aij::resolve_datum(rd.environment(), e->body);
    // walk the datum: heads of non-quote forms are calls
    std::vector<aij::Value> work{body};
    while (!work.empty()) {
      const aij::Value d = work.back();
      work.pop_back();
      if (!d.is_cons()) continue;
      const aij::Value& head = aij::get_car(d);
      if (head.is_symbol() && aij::Symbol(head) == aij::constants().quote) continue;
      if (head.is_symbol()) {
        stack.emplace_back(head);
      } else if (head.is_cons()) {
        work.push_back(aij::get_car(aij::get_cdr(aij::get_cdr(head))));  // lambda body
      }
      for (const aij::Value* p = &aij::get_cdr(d); p->is_cons(); p = &aij::get_cdr(*p)) work.push_back(aij::get_car(*p));
    }
  }
  return seen;
}

}  // namespace testing_support

#endif  // AIJ_TEST_SUPPORT_HPP

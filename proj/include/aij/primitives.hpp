#ifndef AIJ_PRIMITIVES_HPP
#define AIJ_PRIMITIVES_HPP

// Native implementations of the primitive functions other than `if`.
// No guards are checked: arguments outside a primitive's intended domain get
// the completion value (car of a non-cons is nil, a non-number is treated as
// 0 by arithmetic, and so on).

#include <span>
#include <string>

#include "aij/environment.hpp"

namespace aij {

/// Non-numbers become 0.
[[nodiscard]] inline const Value& fix_number(const Value& v) { return v.is_number() ? v : constants().zero; }

/// Non-rationals become 0.
[[nodiscard]] inline const Value& fix_rational(const Value& v) { return v.is_rational() ? v : constants().zero; }

namespace detail {

inline Value rational_negate(const Value& x) {
  if (x.is_integer()) return make_integer(-x.node<IntegerNode>().value);
  const auto& r = x.node<RatioNode>();
  // -(a/b) = (-a)/b, still reduced
  return Value(std::make_shared<const RatioNode>(-r.numerator, r.denominator));
}

inline Value rational_add(const Value& x, const Value& y) {
  if (x.is_integer() && y.is_integer()) return make_integer(x.node<IntegerNode>().value + y.node<IntegerNode>().value);
  // a/b + c/d = (ad + cb)/bd
  const Int& a = get_numerator(x);
  const Int& b = get_denominator(x);
  const Int& c = get_numerator(y);
  const Int& d = get_denominator(y);
  return make_rational(a * d + c * b, b * d);
}

inline Value rational_multiply(const Value& x, const Value& y) {
  if (x.is_integer() && y.is_integer()) return make_integer(x.node<IntegerNode>().value * y.node<IntegerNode>().value);
  return make_rational(get_numerator(x) * get_numerator(y), get_denominator(x) * get_denominator(y));
}

inline Value rational_reciprocal(const Value& x) { return make_rational(get_denominator(x), get_numerator(x)); }

}  // namespace detail

/// unary-- : -(a+bi) = (-a)+(-b)i
[[nodiscard]] inline Value negate(const Value& arg) {
  const Value& x = fix_number(arg);
  if (x.is_rational()) return detail::rational_negate(x);
  return make_number(detail::rational_negate(get_real_part(x)), detail::rational_negate(get_imag_part(x)));
}

/// binary-+ : (a+bi)+(c+di) = (a+c)+(b+d)i
[[nodiscard]] inline Value add(const Value& lhs, const Value& rhs) {
  const Value& x = fix_number(lhs);
  const Value& y = fix_number(rhs);
  if (x.is_rational() && y.is_rational()) return detail::rational_add(x, y);
  return make_number(detail::rational_add(get_real_part(x), get_real_part(y)),
                     detail::rational_add(get_imag_part(x), get_imag_part(y)));
}

/// binary-* : (a+bi)(c+di) = (ac-bd)+(ad+bc)i
[[nodiscard]] inline Value multiply(const Value& lhs, const Value& rhs) {
  const Value& x = fix_number(lhs);
  const Value& y = fix_number(rhs);
  if (x.is_rational() && y.is_rational()) return detail::rational_multiply(x, y);
  const Value& a = get_real_part(x);
  const Value& b = get_imag_part(x);
  const Value& c = get_real_part(y);
  const Value& d = get_imag_part(y);
  using detail::rational_add, detail::rational_multiply, detail::rational_negate;
  return make_number(rational_add(rational_multiply(a, c), rational_negate(rational_multiply(b, d))),
                     rational_add(rational_multiply(a, d), rational_multiply(b, c)));
}

/// unary-/ : 1/(a+bi) = a/(a^2+b^2) - (b/(a^2+b^2))i, and 1/0 = 0.
[[nodiscard]] inline Value reciprocal(const Value& arg) {
  const Value& x = fix_number(arg);
  if (is_zero(x)) return constants().zero;
  if (x.is_rational()) return detail::rational_reciprocal(x);
  using detail::rational_add, detail::rational_multiply, detail::rational_negate, detail::rational_reciprocal;
  const Value& a = get_real_part(x);
  const Value& b = get_imag_part(x);
  const Value inverse_norm = rational_reciprocal(rational_add(rational_multiply(a, a), rational_multiply(b, b)));
  return make_number(rational_multiply(a, inverse_norm), rational_negate(rational_multiply(b, inverse_norm)));
}

/// `<` after number-fixing: numeric order on rationals, otherwise
/// lexicographic on (real part, imaginary part).
[[nodiscard]] inline bool less_than(const Value& lhs, const Value& rhs) {
  const Value& x = fix_number(lhs);
  const Value& y = fix_number(rhs);
  if (x.is_rational() && y.is_rational()) return compare_rationals(x, y) < 0;
  const auto re = compare_rationals(get_real_part(x), get_real_part(y));
  if (re != 0) return re < 0;
  return compare_rationals(get_imag_part(x), get_imag_part(y)) < 0;
}

/// coerce: to a list of characters when `type` is the symbol LIST, else to
/// a string built from the list elements (non-characters become code 0).
[[nodiscard]] inline Value coerce(const Value& x, const Value& type) {
  if (type.identity() == constants().list.identity()) {
    if (!x.is_string()) return nil();
    const std::string& bytes = get_string(x);
    Value out = nil();
    for (auto it = bytes.rbegin(); it != bytes.rend(); ++it) {
      out = make_cons(make_character(static_cast<unsigned char>(*it)), std::move(out));
    }
    return out;
  }
  std::string bytes;
  for (const Value* p = &x; p->is_cons(); p = &get_cdr(*p)) {
    const Value& e = get_car(*p);
    bytes.push_back(e.is_character() ? static_cast<char>(get_char_code(e)) : '\0');
  }
  return make_string(bytes);
}

[[nodiscard]] inline Value pkg_imports(const Environment& env, const Value& x) {
  if (!x.is_string()) return nil();
  const auto* imports = env.package_imports(get_string(x));
  if (imports == nullptr) fail(ErrorKind::unknown_package, "pkg-imports: no package \"" + get_string(x) + "\"");
  std::vector<Value> elements(imports->begin(), imports->end());
  return make_list(elements);
}

/// Non-string arguments name the "ACL2" package.
[[nodiscard]] inline Value pkg_witness(const Environment& env, const Value& x) {
  const auto& witness = env.package_witness_name();
  if (!witness) fail(ErrorKind::witness_unset, "package witness name not set");
  const std::string_view package = x.is_string() ? std::string_view(get_string(x)) : std::string_view("ACL2");
  if (!env.find_package(package)) {
    fail(ErrorKind::unknown_package, "pkg-witness: no package \"" + std::string(package) + "\"");
  }
  return env.resolve_symbol(package, *witness);
}

/// Applies a primitive other than `if` to already-evaluated arguments.
/// Signals `not-primitive` for `if` and `arity` on a wrong argument count.
[[nodiscard]] inline Value apply_primitive(const Environment& env, Primitive id, std::span<const Value> args) {
  if (id == Primitive::none || id == Primitive::if_) fail(ErrorKind::not_primitive, "not a native primitive");
  const auto& info = primitive_info(id);
  if (args.size() != info.arity) {
    fail(ErrorKind::arity, std::string(info.name) + " expects " + std::to_string(info.arity) + " arguments, got " +
                               std::to_string(args.size()));
  }
  const auto& c = constants();
  const Value& x = args[0];
  switch (id) {
    case Primitive::acl2_numberp: return boolean(x.is_number());
    case Primitive::bad_atom_le: return nil();
    case Primitive::binary_star: return multiply(x, args[1]);
    case Primitive::binary_plus: return add(x, args[1]);
    case Primitive::unary_minus: return negate(x);
    case Primitive::unary_slash: return reciprocal(x);
    case Primitive::less_than: return boolean(less_than(x, args[1]));
    case Primitive::car: return x.is_cons() ? get_car(x) : nil();
    case Primitive::cdr: return x.is_cons() ? get_cdr(x) : nil();
    case Primitive::char_code: return x.is_character() ? make_integer(get_char_code(x)) : c.zero;
    case Primitive::characterp: return boolean(x.is_character());
    case Primitive::code_char: {
      if (x.is_integer()) {
        const Int& n = get_integer(x);
        if (n >= 0 && n <= 255) return make_character(n.convert_to<int>());
      }
      return make_character(0);
    }
    case Primitive::complex: return make_number(fix_rational(x), fix_rational(args[1]));
    case Primitive::complex_rationalp: return boolean(x.is_complex());
    case Primitive::coerce: return coerce(x, args[1]);
    case Primitive::cons: return make_cons(x, args[1]);
    case Primitive::consp: return boolean(x.is_cons());
    case Primitive::denominator: return x.is_rational() ? make_integer(get_denominator(x)) : c.one;
    case Primitive::equal: return boolean(value_equal(x, args[1]));
    case Primitive::imagpart: return x.is_number() ? get_imag_part(x) : c.zero;
    case Primitive::integerp: return boolean(x.is_integer());
    case Primitive::intern_in_package_of_symbol: {
      const Value& y = args[1];
      if (!x.is_string() || !y.is_symbol()) return nil();
      return env.resolve_symbol(get_symbol_package_name(y).str(), get_string(x));
    }
    case Primitive::numerator: return x.is_rational() ? (x.is_integer() ? x : make_integer(get_numerator(x))) : c.zero;
    case Primitive::pkg_imports: return pkg_imports(env, x);
    case Primitive::pkg_witness: return pkg_witness(env, x);
    case Primitive::rationalp: return boolean(x.is_rational());
    case Primitive::realpart: return x.is_number() ? get_real_part(x) : c.zero;
    case Primitive::stringp: return boolean(x.is_string());
    case Primitive::symbol_name: return x.is_symbol() ? get_symbol_name(x) : c.empty_string;
    case Primitive::symbol_package_name:
      return x.is_symbol() ? make_string(get_symbol_package_name(x).str()) : c.empty_string;
    case Primitive::symbolp: return boolean(x.is_symbol());
    case Primitive::none:
    case Primitive::if_: break;
  }
  fail(ErrorKind::not_primitive, "not a native primitive");
}

/// Applies the primitive named by `name`.
[[nodiscard]] inline Value apply_primitive(const Environment& env, const Symbol& name, std::span<const Value> args) {
  if (name.primitive() == Primitive::none || name.primitive() == Primitive::if_) {
    fail(ErrorKind::not_primitive,
         std::string(name.package().str()) + "::" + std::string(name.name()) + " is not a native primitive");
  }
  return apply_primitive(env, name.primitive(), args);
}

}  // namespace aij

#endif  // AIJ_PRIMITIVES_HPP

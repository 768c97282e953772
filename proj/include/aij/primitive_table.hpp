#ifndef AIJ_PRIMITIVE_TABLE_HPP
#define AIJ_PRIMITIVE_TABLE_HPP

#include <array>
#include <cstdint>
#include <string_view>

namespace aij {

/// The built-in functions that have no definition and are implemented natively.
enum class Primitive : std::uint8_t {
  none,
  acl2_numberp,
  bad_atom_le,
  binary_star,
  binary_plus,
  unary_minus,
  unary_slash,
  less_than,
  car,
  cdr,
  char_code,
  characterp,
  code_char,
  complex,
  complex_rationalp,
  coerce,
  cons,
  consp,
  denominator,
  equal,
  if_,
  imagpart,
  integerp,
  intern_in_package_of_symbol,
  numerator,
  pkg_imports,
  pkg_witness,
  rationalp,
  realpart,
  stringp,
  symbol_name,
  symbol_package_name,
  symbolp,
};

struct PrimitiveInfo {
  Primitive id;
  std::string_view package;  // home package of the function symbol
  std::string_view name;
  std::uint8_t arity;
};

inline constexpr std::array<PrimitiveInfo, 32> primitive_table{{
    {Primitive::acl2_numberp, "ACL2", "ACL2-NUMBERP", 1},
    {Primitive::bad_atom_le, "ACL2", "BAD-ATOM<=", 2},
    {Primitive::binary_star, "ACL2", "BINARY-*", 2},
    {Primitive::binary_plus, "ACL2", "BINARY-+", 2},
    {Primitive::unary_minus, "ACL2", "UNARY--", 1},
    {Primitive::unary_slash, "ACL2", "UNARY-/", 1},
    {Primitive::less_than, "COMMON-LISP", "<", 2},
    {Primitive::car, "COMMON-LISP", "CAR", 1},
    {Primitive::cdr, "COMMON-LISP", "CDR", 1},
    {Primitive::char_code, "COMMON-LISP", "CHAR-CODE", 1},
    {Primitive::characterp, "COMMON-LISP", "CHARACTERP", 1},
    {Primitive::code_char, "COMMON-LISP", "CODE-CHAR", 1},
    {Primitive::complex, "COMMON-LISP", "COMPLEX", 2},
    {Primitive::complex_rationalp, "ACL2", "COMPLEX-RATIONALP", 1},
    {Primitive::coerce, "COMMON-LISP", "COERCE", 2},
    {Primitive::cons, "COMMON-LISP", "CONS", 2},
    {Primitive::consp, "COMMON-LISP", "CONSP", 1},
    {Primitive::denominator, "COMMON-LISP", "DENOMINATOR", 1},
    {Primitive::equal, "COMMON-LISP", "EQUAL", 2},
    {Primitive::if_, "COMMON-LISP", "IF", 3},
    {Primitive::imagpart, "COMMON-LISP", "IMAGPART", 1},
    {Primitive::integerp, "COMMON-LISP", "INTEGERP", 1},
    {Primitive::intern_in_package_of_symbol, "ACL2", "INTERN-IN-PACKAGE-OF-SYMBOL", 2},
    {Primitive::numerator, "COMMON-LISP", "NUMERATOR", 1},
    {Primitive::pkg_imports, "ACL2", "PKG-IMPORTS", 1},
    {Primitive::pkg_witness, "ACL2", "PKG-WITNESS", 1},
    {Primitive::rationalp, "COMMON-LISP", "RATIONALP", 1},
    {Primitive::realpart, "COMMON-LISP", "REALPART", 1},
    {Primitive::stringp, "COMMON-LISP", "STRINGP", 1},
    {Primitive::symbol_name, "COMMON-LISP", "SYMBOL-NAME", 1},
    {Primitive::symbol_package_name, "ACL2", "SYMBOL-PACKAGE-NAME", 1},
    {Primitive::symbolp, "COMMON-LISP", "SYMBOLP", 1},
}};

[[nodiscard]] constexpr const PrimitiveInfo& primitive_info(Primitive id) {
  for (const auto& info : primitive_table) {
    if (info.id == id) return info;
  }
  return primitive_table[0];  // unreachable for id != none
}

[[nodiscard]] constexpr Primitive find_primitive(std::string_view package, std::string_view name) noexcept {
  for (const auto& info : primitive_table) {
    if (info.package == package && info.name == name) return info.id;
  }
  return Primitive::none;
}

/// COMMON-LISP symbols that the "ACL2" package imports and that the reader
/// resolves without an environment. A subset of the full import list.
inline constexpr std::array<std::string_view, 72> acl2_common_lisp_imports{
    "NIL",        "T",           "QUOTE",     "LAMBDA",     "IF",           "CONS",
    "CAR",        "CDR",         "CONSP",     "EQUAL",      "LIST",         "STRING",
    "<",          "CHAR-CODE",   "CHARACTERP", "CODE-CHAR", "COMPLEX",      "COERCE",
    "DENOMINATOR", "IMAGPART",   "INTEGERP",  "NUMERATOR",  "RATIONALP",    "REALPART",
    "STRINGP",    "SYMBOL-NAME", "SYMBOLP",   "+",          "*",            "-",
    "/",          "=",           "<=",        ">",          ">=",           "NOT",
    "ATOM",       "ENDP",        "APPEND",    "REVERSE",    "LENGTH",       "NTH",
    "NTHCDR",     "MEMBER",      "ASSOC",     "EQ",         "EQL",          "AND",
    "OR",         "COND",        "LET",       "LET*",       "ZEROP",        "PLUSP",
    "MINUSP",     "EVENP",       "ODDP",      "ABS",        "MAX",          "MIN",
    "FLOOR",      "MOD",         "REM",       "TRUNCATE",   "CHARACTER",    "CHAR",
    "FIRST",      "SECOND",      "REST",      "LAST",       "VALUES",       "DEFUN",
};

}  // namespace aij

#endif  // AIJ_PRIMITIVE_TABLE_HPP

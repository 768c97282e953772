#ifndef AIJ_VALUES_HPP
#define AIJ_VALUES_HPP

// Immutable values of the evaluation semantics: integers, ratios, complex
// rationals, characters, strings, symbols and conses.
//
// Characters are pre-created. Strings, symbols and package names are interned
// on demand in process-wide tables; equal inputs always yield the same
// instance, so equality on those kinds is pointer identity. Intern tables are
// guarded by a mutex and entries are never removed. Every value is immutable
// and may be shared freely across threads.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "aij/error.hpp"
#include "aij/primitive_table.hpp"

namespace aij {

using Int = boost::multiprecision::cpp_int;

enum class ValueKind : std::uint8_t { integer, ratio, complex_rational, character, string, symbol, cons };

namespace detail {
struct Node;
struct ConsNode;
struct PackageNameRep {
  std::string name;
};
}  // namespace detail

/// Legal package name: nonempty, made of uppercase letters, digits and - _ . $ + < > = / * ?
[[nodiscard]] constexpr bool valid_package_name(std::string_view name) noexcept {
  if (name.empty()) return false;
  for (char c : name) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.' ||
                    c == '$' || c == '+' || c == '<' || c == '>' || c == '=' || c == '/' || c == '*' || c == '?';
    if (!ok) return false;
  }
  return true;
}

/// Interned package name. Copies are cheap handles to the canonical instance.
class PackageName {
 public:
  [[nodiscard]] std::string_view str() const noexcept { return rep_->name; }
  [[nodiscard]] const void* identity() const noexcept { return rep_; }

  friend bool operator==(PackageName a, PackageName b) noexcept { return a.rep_ == b.rep_; }

 private:
  explicit PackageName(const detail::PackageNameRep* rep) noexcept : rep_(rep) {}
  friend PackageName make_package_name(std::string_view name);

  const detail::PackageNameRep* rep_;
};

class Value {
 public:
  [[nodiscard]] ValueKind kind() const noexcept;

  [[nodiscard]] bool is_integer() const noexcept { return kind() == ValueKind::integer; }
  [[nodiscard]] bool is_ratio() const noexcept { return kind() == ValueKind::ratio; }
  [[nodiscard]] bool is_rational() const noexcept { return is_integer() || is_ratio(); }
  [[nodiscard]] bool is_complex() const noexcept { return kind() == ValueKind::complex_rational; }
  [[nodiscard]] bool is_number() const noexcept { return kind() <= ValueKind::complex_rational; }
  [[nodiscard]] bool is_character() const noexcept { return kind() == ValueKind::character; }
  [[nodiscard]] bool is_string() const noexcept { return kind() == ValueKind::string; }
  [[nodiscard]] bool is_symbol() const noexcept { return kind() == ValueKind::symbol; }
  [[nodiscard]] bool is_cons() const noexcept { return kind() == ValueKind::cons; }

  /// Address of the underlying object; stable for the value's lifetime.
  [[nodiscard]] const void* identity() const noexcept { return node_.get(); }

  template <class N>
  [[nodiscard]] const N& node() const noexcept {
    return static_cast<const N&>(*node_);
  }

  explicit Value(std::shared_ptr<const detail::Node> node) noexcept : node_(std::move(node)) {}

 private:
  friend struct detail::ConsNode;
  std::shared_ptr<const detail::Node> node_;
};

namespace detail {

struct Node {
  explicit Node(ValueKind k) noexcept : kind(k) {}
  ValueKind kind;
};

struct IntegerNode final : Node {
  explicit IntegerNode(Int v) : Node(ValueKind::integer), value(std::move(v)) {}
  Int value;
};

// gcd(|numerator|, denominator) = 1 and denominator > 1.
struct RatioNode final : Node {
  RatioNode(Int n, Int d) : Node(ValueKind::ratio), numerator(std::move(n)), denominator(std::move(d)) {}
  Int numerator;
  Int denominator;
};

// Both parts rational, imag nonzero.
struct ComplexNode final : Node {
  ComplexNode(Value r, Value i) : Node(ValueKind::complex_rational), real(std::move(r)), imag(std::move(i)) {}
  Value real;
  Value imag;
};

struct CharacterNode final : Node {
  explicit CharacterNode(std::uint8_t c) noexcept : Node(ValueKind::character), code(c) {}
  std::uint8_t code;
};

struct StringNode final : Node {
  explicit StringNode(std::string b) : Node(ValueKind::string), bytes(std::move(b)) {}
  std::string bytes;
};

struct SymbolNode final : Node {
  SymbolNode(PackageName p, Value n, Primitive prim)
      : Node(ValueKind::symbol), package(p), name(std::move(n)), primitive(prim) {}
  PackageName package;
  Value name;
  Primitive primitive;
};

// Destruction is iterative so that long lists do not exhaust the stack.
struct ConsNode final : Node {
  ConsNode(Value a, Value d) : Node(ValueKind::cons), car(std::move(a)), cdr(std::move(d)) {}
  ConsNode(const ConsNode&) = delete;
  ConsNode& operator=(const ConsNode&) = delete;

  ~ConsNode() {
    if (!owns_cons(car) && !owns_cons(cdr)) return;
    std::vector<std::shared_ptr<const Node>> pending;
    detach(car, pending);
    detach(cdr, pending);
    while (!pending.empty()) {
      std::shared_ptr<const Node> n = std::move(pending.back());
      pending.pop_back();
      if (n.use_count() == 1) {
        // cons nodes are created non-const, see make_cons
        auto& c = const_cast<ConsNode&>(static_cast<const ConsNode&>(*n));
        detach(c.car, pending);
        detach(c.cdr, pending);
      }
    }
  }

  Value car;
  Value cdr;

 private:
  static bool owns_cons(const Value& v) noexcept {
    return v.node_ && v.node_->kind == ValueKind::cons && v.node_.use_count() == 1;
  }
  static void detach(Value& v, std::vector<std::shared_ptr<const Node>>& pending) {
    if (owns_cons(v)) pending.push_back(std::move(v.node_));
  }
};

struct PackageNameHash {
  std::size_t operator()(PackageName p) const noexcept { return std::hash<const void*>{}(p.identity()); }
};

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
};

struct InternTables {
  std::mutex mutex;
  std::unordered_map<std::string, std::unique_ptr<PackageNameRep>, StringHash, std::equal_to<>> packages;
  std::unordered_map<std::string, Value, StringHash, std::equal_to<>> strings;
  std::unordered_map<PackageName, std::unordered_map<std::string, Value, StringHash, std::equal_to<>>,
                     PackageNameHash>
      symbols;
};

inline InternTables& intern_tables() {
  static InternTables tables;
  return tables;
}

inline const std::array<Value, 256>& character_table() {
  static const std::array<Value, 256> table = [] {
    return [&]<std::size_t... I>(std::index_sequence<I...>) {
      return std::array<Value, 256>{Value(std::make_shared<const CharacterNode>(static_cast<std::uint8_t>(I)))...};
    }(std::make_index_sequence<256>{});
  }();
  return table;
}

}  // namespace detail

inline ValueKind Value::kind() const noexcept { return node_->kind; }

/// A value statically known to be a symbol.
class Symbol {
 public:
  /// Throws `type` unless v is a symbol.
  explicit Symbol(Value v) : value_(std::move(v)) {
    if (!value_.is_symbol()) fail(ErrorKind::type, "not a symbol");
  }

  [[nodiscard]] const Value& value() const noexcept { return value_; }
  operator const Value&() const noexcept { return value_; }  // NOLINT(google-explicit-constructor)

  [[nodiscard]] PackageName package() const noexcept { return node().package; }
  [[nodiscard]] std::string_view name() const noexcept {
    return name_value().node<detail::StringNode>().bytes;
  }
  [[nodiscard]] const Value& name_value() const noexcept { return node().name; }
  [[nodiscard]] Primitive primitive() const noexcept { return node().primitive; }
  [[nodiscard]] const void* identity() const noexcept { return value_.identity(); }

  friend bool operator==(const Symbol& a, const Symbol& b) noexcept { return a.identity() == b.identity(); }

 private:
  [[nodiscard]] const detail::SymbolNode& node() const noexcept { return value_.node<detail::SymbolNode>(); }
  Value value_;
};

struct SymbolHash {
  std::size_t operator()(const Symbol& s) const noexcept { return std::hash<const void*>{}(s.identity()); }
};

// ---------------------------------------------------------------------------
// Factories

[[nodiscard]] inline Value make_integer(Int n) { return Value(std::make_shared<const detail::IntegerNode>(std::move(n))); }
[[nodiscard]] inline Value make_integer(long long n) { return make_integer(Int(n)); }

/// num/den in lowest terms; an integer when the reduced denominator is 1.
[[nodiscard]] inline Value make_rational(Int num, Int den) {
  if (den == 0) fail(ErrorKind::zero_denominator, "denominator is zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (den != 1) {
    Int g = boost::multiprecision::gcd(num, den);
    if (g != 1) {
      num /= g;
      den /= g;
    }
  }
  if (den == 1) return make_integer(std::move(num));
  return Value(std::make_shared<const detail::RatioNode>(std::move(num), std::move(den)));
}

[[nodiscard]] inline bool is_zero(const Value& v) noexcept {
  return v.is_integer() && v.node<detail::IntegerNode>().value.is_zero();
}

/// real + imag*i; collapses to `real` when imag is zero.
[[nodiscard]] inline Value make_number(Value real, Value imag) {
  if (!real.is_rational() || !imag.is_rational()) fail(ErrorKind::type, "complex parts must be rational");
  if (is_zero(imag)) return real;
  return Value(std::make_shared<const detail::ComplexNode>(std::move(real), std::move(imag)));
}

[[nodiscard]] inline Value make_character(long long code) {
  if (code < 0 || code > 255) fail(ErrorKind::char_range, "character code " + std::to_string(code) + " not in [0,255]");
  return detail::character_table()[static_cast<std::size_t>(code)];
}

[[nodiscard]] inline Value make_string(std::string_view bytes) {
  auto& tables = detail::intern_tables();
  std::lock_guard lock(tables.mutex);
  if (auto it = tables.strings.find(bytes); it != tables.strings.end()) return it->second;
  Value v(std::make_shared<const detail::StringNode>(std::string(bytes)));
  tables.strings.emplace(std::string(bytes), v);
  return v;
}

/// String from character codes; every code must be in [0,255].
[[nodiscard]] inline Value make_string(std::span<const int> codes) {
  std::string bytes;
  bytes.reserve(codes.size());
  for (int c : codes) {
    if (c < 0 || c > 255) fail(ErrorKind::char_range, "character code " + std::to_string(c) + " not in [0,255]");
    bytes.push_back(static_cast<char>(static_cast<unsigned char>(c)));
  }
  return make_string(bytes);
}

[[nodiscard]] inline PackageName make_package_name(std::string_view name) {
  if (!valid_package_name(name)) fail(ErrorKind::bad_package_name, "illegal package name \"" + std::string(name) + "\"");
  auto& tables = detail::intern_tables();
  std::lock_guard lock(tables.mutex);
  auto it = tables.packages.find(name);
  if (it == tables.packages.end()) {
    it = tables.packages.emplace(std::string(name), std::make_unique<detail::PackageNameRep>(std::string(name))).first;
  }
  return PackageName(it->second.get());
}

/// Symbol with exactly this package and name; no import resolution.
[[nodiscard]] inline Symbol make_symbol_raw(PackageName package, const Value& name) {
  if (!name.is_string()) fail(ErrorKind::type, "symbol name must be a string");
  const std::string& bytes = name.node<detail::StringNode>().bytes;
  auto& tables = detail::intern_tables();
  std::lock_guard lock(tables.mutex);
  auto& by_name = tables.symbols[package];
  if (auto it = by_name.find(std::string_view(bytes)); it != by_name.end()) return Symbol(it->second);
  Value v(std::make_shared<const detail::SymbolNode>(package, name, find_primitive(package.str(), bytes)));
  by_name.emplace(bytes, v);
  return Symbol(std::move(v));
}

[[nodiscard]] inline Symbol make_symbol_raw(std::string_view package, std::string_view name) {
  return make_symbol_raw(make_package_name(package), make_string(name));
}

[[nodiscard]] inline Value make_cons(Value car, Value cdr) {
  return Value(std::make_shared<detail::ConsNode>(std::move(car), std::move(cdr)));
}

// ---------------------------------------------------------------------------
// Frequently used symbols, created once.

struct Constants {
  Symbol nil = make_symbol_raw("COMMON-LISP", "NIL");
  Symbol t = make_symbol_raw("COMMON-LISP", "T");
  Symbol quote = make_symbol_raw("COMMON-LISP", "QUOTE");
  Symbol lambda = make_symbol_raw("COMMON-LISP", "LAMBDA");
  Symbol list = make_symbol_raw("COMMON-LISP", "LIST");
  Symbol if_ = make_symbol_raw("COMMON-LISP", "IF");
  Symbol return_last = make_symbol_raw("ACL2", "RETURN-LAST");
  PackageName acl2 = make_package_name("ACL2");
  PackageName common_lisp = make_package_name("COMMON-LISP");
  PackageName keyword = make_package_name("KEYWORD");
  Value zero = make_integer(0);
  Value one = make_integer(1);
  Value empty_string = make_string("");
  std::vector<Symbol> primitives = [] {
    std::vector<Symbol> out;
    for (const auto& info : primitive_table) out.push_back(make_symbol_raw(info.package, info.name));
    return out;
  }();
};

[[nodiscard]] inline const Constants& constants() {
  static const Constants c;
  return c;
}

[[nodiscard]] inline const Value& nil() { return constants().nil; }
[[nodiscard]] inline const Value& t() { return constants().t; }
[[nodiscard]] inline bool is_nil(const Value& v) { return v.identity() == constants().nil.identity(); }
[[nodiscard]] inline const Value& boolean(bool b) { return b ? t() : nil(); }

/// Symbol naming a primitive function.
[[nodiscard]] inline const Symbol& primitive_symbol(Primitive id) {
  return constants().primitives.at(static_cast<std::size_t>(id) - 1);
}

/// Proper list of the given elements.
[[nodiscard]] inline Value make_list(std::span<const Value> elements, Value tail = nil()) {
  Value out = std::move(tail);
  for (auto it = elements.rbegin(); it != elements.rend(); ++it) out = make_cons(*it, std::move(out));
  return out;
}
[[nodiscard]] inline Value make_list(std::initializer_list<Value> elements) {
  return make_list(std::span<const Value>(elements.begin(), elements.size()));
}

// ---------------------------------------------------------------------------
// Unbuilding. Mismatched variants signal `type`.

namespace detail {
[[noreturn]] inline void mismatch(const char* what) { fail(ErrorKind::type, std::string("value is not ") + what); }
}  // namespace detail

[[nodiscard]] inline const Int& get_integer(const Value& v) {
  if (!v.is_integer()) detail::mismatch("an integer");
  return v.node<detail::IntegerNode>().value;
}

/// Numerator of a rational; an integer n is n/1.
[[nodiscard]] inline const Int& get_numerator(const Value& v) {
  if (v.is_integer()) return v.node<detail::IntegerNode>().value;
  if (!v.is_ratio()) detail::mismatch("a rational");
  return v.node<detail::RatioNode>().numerator;
}

[[nodiscard]] inline const Int& get_denominator(const Value& v) {
  static const Int one = 1;
  if (v.is_integer()) return one;
  if (!v.is_ratio()) detail::mismatch("a rational");
  return v.node<detail::RatioNode>().denominator;
}

/// Real part of a number; a rational is its own real part.
[[nodiscard]] inline const Value& get_real_part(const Value& v) {
  if (v.is_complex()) return v.node<detail::ComplexNode>().real;
  if (!v.is_rational()) detail::mismatch("a number");
  return v;
}

[[nodiscard]] inline const Value& get_imag_part(const Value& v) {
  if (v.is_complex()) return v.node<detail::ComplexNode>().imag;
  if (!v.is_rational()) detail::mismatch("a number");
  return constants().zero;
}

[[nodiscard]] inline int get_char_code(const Value& v) {
  if (!v.is_character()) detail::mismatch("a character");
  return v.node<detail::CharacterNode>().code;
}

[[nodiscard]] inline const std::string& get_string(const Value& v) {
  if (!v.is_string()) detail::mismatch("a string");
  return v.node<detail::StringNode>().bytes;
}

[[nodiscard]] inline PackageName get_symbol_package_name(const Value& v) {
  if (!v.is_symbol()) detail::mismatch("a symbol");
  return v.node<detail::SymbolNode>().package;
}

[[nodiscard]] inline const Value& get_symbol_name(const Value& v) {
  if (!v.is_symbol()) detail::mismatch("a symbol");
  return v.node<detail::SymbolNode>().name;
}

[[nodiscard]] inline const Value& get_car(const Value& v) {
  if (!v.is_cons()) detail::mismatch("a cons");
  return v.node<detail::ConsNode>().car;
}

[[nodiscard]] inline const Value& get_cdr(const Value& v) {
  if (!v.is_cons()) detail::mismatch("a cons");
  return v.node<detail::ConsNode>().cdr;
}

// ---------------------------------------------------------------------------
// Equality and the total order.

[[nodiscard]] inline bool value_equal(const Value& x, const Value& y) {
  const Value* a = &x;
  const Value* b = &y;
  for (;;) {
    if (a->identity() == b->identity()) return true;
    if (a->kind() != b->kind()) return false;
    switch (a->kind()) {
      case ValueKind::integer:
        return a->node<detail::IntegerNode>().value == b->node<detail::IntegerNode>().value;
      case ValueKind::ratio: {
        const auto& p = a->node<detail::RatioNode>();
        const auto& q = b->node<detail::RatioNode>();
        return p.numerator == q.numerator && p.denominator == q.denominator;
      }
      case ValueKind::complex_rational: {
        const auto& p = a->node<detail::ComplexNode>();
        const auto& q = b->node<detail::ComplexNode>();
        return value_equal(p.real, q.real) && value_equal(p.imag, q.imag);
      }
      case ValueKind::character:
      case ValueKind::string:
      case ValueKind::symbol:
        return false;  // interned: distinct instances are distinct values
      case ValueKind::cons: {
        const auto& p = a->node<detail::ConsNode>();
        const auto& q = b->node<detail::ConsNode>();
        if (!value_equal(p.car, q.car)) return false;
        a = &p.cdr;
        b = &q.cdr;
        break;
      }
    }
  }
}

inline bool operator==(const Value& x, const Value& y) { return value_equal(x, y); }

/// Exact comparison of two rationals.
[[nodiscard]] inline std::strong_ordering compare_rationals(const Value& x, const Value& y) {
  if (x.is_integer() && y.is_integer()) {
    return x.node<detail::IntegerNode>().value.compare(y.node<detail::IntegerNode>().value) <=> 0;
  }
  // a/b vs c/d with b, d > 0
  Int lhs = get_numerator(x) * get_denominator(y);
  Int rhs = get_numerator(y) * get_denominator(x);
  return lhs.compare(rhs) <=> 0;
}

namespace detail {

// Rank of an atom kind in the total order: rationals, complex rationals,
// characters, strings, symbols.
constexpr int atom_rank(ValueKind k) noexcept {
  switch (k) {
    case ValueKind::integer:
    case ValueKind::ratio: return 0;
    case ValueKind::complex_rational: return 1;
    case ValueKind::character: return 2;
    case ValueKind::string: return 3;
    case ValueKind::symbol: return 4;
    case ValueKind::cons: return 5;
  }
  return 5;
}

inline std::strong_ordering compare_bytes(std::string_view a, std::string_view b) noexcept {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto ca = static_cast<unsigned char>(a[i]);
    const auto cb = static_cast<unsigned char>(b[i]);
    if (ca != cb) return ca <=> cb;
  }
  return a.size() <=> b.size();
}

inline std::strong_ordering compare_atoms(const Value& x, const Value& y) {
  const int rx = atom_rank(x.kind());
  const int ry = atom_rank(y.kind());
  if (rx != ry) return rx <=> ry;
  switch (rx) {
    case 0:
      return compare_rationals(x, y);
    case 1: {
      const auto& p = x.node<ComplexNode>();
      const auto& q = y.node<ComplexNode>();
      if (auto c = compare_rationals(p.real, q.real); c != 0) return c;
      return compare_rationals(p.imag, q.imag);
    }
    case 2:
      return x.node<CharacterNode>().code <=> y.node<CharacterNode>().code;
    case 3:
      return compare_bytes(x.node<StringNode>().bytes, y.node<StringNode>().bytes);
    case 4: {
      // by name, then by package name
      const Symbol a(x);
      const Symbol b(y);
      if (auto c = compare_bytes(a.name(), b.name()); c != 0) return c;
      return compare_bytes(a.package().str(), b.package().str());
    }
    default:
      return std::strong_ordering::equal;
  }
}

}  // namespace detail

/// Total order on all values: atoms before conses; atoms by kind (rationals,
/// complex rationals, characters, strings, symbols) then within kind; conses
/// by car, then by cdr.
[[nodiscard]] inline std::strong_ordering compare_total_order(const Value& x, const Value& y) {
  const Value* a = &x;
  const Value* b = &y;
  for (;;) {
    if (a->identity() == b->identity()) return std::strong_ordering::equal;
    const bool ca = a->is_cons();
    const bool cb = b->is_cons();
    if (!ca || !cb) {
      if (ca) return std::strong_ordering::greater;
      if (cb) return std::strong_ordering::less;
      return detail::compare_atoms(*a, *b);
    }
    const auto& p = a->node<detail::ConsNode>();
    const auto& q = b->node<detail::ConsNode>();
    if (auto c = compare_total_order(p.car, q.car); c != 0) return c;
    a = &p.cdr;
    b = &q.cdr;
  }
}

/// True when v and everything inside it satisfies the representation
/// invariants (reduced ratios, nonzero imaginary parts, rational parts).
[[nodiscard]] inline bool well_formed(const Value& v) {
  switch (v.kind()) {
    case ValueKind::integer:
    case ValueKind::character:
    case ValueKind::string:
    case ValueKind::symbol:
      return true;
    case ValueKind::ratio: {
      const auto& r = v.node<detail::RatioNode>();
      return r.denominator > 1 && boost::multiprecision::gcd(r.numerator, r.denominator) == 1;
    }
    case ValueKind::complex_rational: {
      const auto& c = v.node<detail::ComplexNode>();
      return c.real.is_rational() && c.imag.is_rational() && !is_zero(c.imag) && well_formed(c.real) &&
             well_formed(c.imag);
    }
    case ValueKind::cons: {
      const Value* p = &v;
      while (p->is_cons()) {
        if (!well_formed(p->node<detail::ConsNode>().car)) return false;
        p = &p->node<detail::ConsNode>().cdr;
      }
      return well_formed(*p);
    }
  }
  return false;
}

}  // namespace aij

template <>
struct std::hash<aij::PackageName> : aij::detail::PackageNameHash {};
template <>
struct std::hash<aij::Symbol> : aij::SymbolHash {};

#endif  // AIJ_VALUES_HPP

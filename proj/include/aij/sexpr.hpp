#ifndef AIJ_SEXPR_HPP
#define AIJ_SEXPR_HPP

// Textual forms of values and terms.
//
//   integers   -12        ratios      3/4         complex   #c(1/2 -3)
//   characters #\A #\Space #\Newline #\Tab #\Nul #\xNN
//   strings    "a \"quoted\" \\ backslash"
//   symbols    NAME  PKG::NAME  :KEYWORD  |mixed Case|  PKG::|x y|
//   conses     (a b c)  (a . b)  'x for (QUOTE x)
//
// Unescaped symbol characters are upcased. Comments run from `;` to end of
// line, or between `#|` and `|#`.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aij/environment.hpp"

namespace aij {

/// Maps a written package and name to a symbol.
using SymbolResolver = std::function<Symbol(std::string_view package, std::string_view name)>;

/// Resolution without an environment: ACL2::X is COMMON-LISP::X for the
/// COMMON-LISP symbols the "ACL2" package is known to import; every other
/// pair is taken literally.
[[nodiscard]] inline Symbol resolve_builtin(std::string_view package, std::string_view name) {
  if (package == "ACL2" &&
      std::find(acl2_common_lisp_imports.begin(), acl2_common_lisp_imports.end(), name) !=
          acl2_common_lisp_imports.end()) {
    return make_symbol_raw("COMMON-LISP", name);
  }
  return make_symbol_raw(package, name);
}

[[nodiscard]] inline SymbolResolver builtin_resolver() { return resolve_builtin; }

/// Takes every written pair literally.
[[nodiscard]] inline SymbolResolver raw_resolver() {
  return [](std::string_view package, std::string_view name) { return make_symbol_raw(package, name); };
}

/// Import resolution through `env`; the environment must outlive the resolver.
[[nodiscard]] inline SymbolResolver env_resolver(const Environment& env) {
  return [&env](std::string_view package, std::string_view name) { return env.resolve_symbol(package, name); };
}

struct ReadOptions {
  std::string default_package = "ACL2";
  SymbolResolver resolver = builtin_resolver();
};

/// Incremental reader over a text buffer.
class Reader {
 public:
  explicit Reader(std::string_view text, ReadOptions options = {}) : text_(text), options_(std::move(options)) {}

  /// Next datum, or nullopt at end of input.
  std::optional<Value> next() {
    skip_blank();
    if (pos_ >= text_.size()) return std::nullopt;
    return read_datum();
  }

  /// Skips whitespace and comments; returns true at end of input.
  bool at_end() {
    skip_blank();
    return pos_ >= text_.size();
  }

  [[nodiscard]] std::size_t offset() const noexcept { return pos_; }

  /// 1-based line and column of a byte offset.
  [[nodiscard]] std::pair<std::size_t, std::size_t> line_column(std::size_t offset) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

  [[noreturn]] void error(const std::string& message) const { error_at(pos_, message); }

  [[noreturn]] void error_at(std::size_t offset, const std::string& message) const {
    auto [line, col] = line_column(offset);
    fail(ErrorKind::parse, std::to_string(line) + ":" + std::to_string(col) + ": " + message);
  }

 private:
  static bool is_delimiter(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v' || c == '(' || c == ')' ||
           c == '\'' || c == '"' || c == ';' || c == '`' || c == ',';
  }

  [[nodiscard]] bool eof() const noexcept { return pos_ >= text_.size(); }
  [[nodiscard]] char peek(std::size_t ahead = 0) const noexcept {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void skip_blank() {
    while (!eof()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
        ++pos_;
      } else if (c == ';') {
        while (!eof() && peek() != '\n') ++pos_;
      } else if (c == '#' && peek(1) == '|') {
        const std::size_t start = pos_;
        const auto end = text_.find("|#", pos_ + 2);
        if (end == std::string_view::npos) error_at(start, "unterminated block comment");
        pos_ = end + 2;
      } else {
        return;
      }
    }
  }

  Value read_datum() {
    skip_blank();
    if (eof()) error("unexpected end of input");
    const char c = peek();
    switch (c) {
      case '(':
        ++pos_;
        return read_list_tail();
      case ')':
        error("unexpected ')'");
      case '\'': {
        ++pos_;
        Value quoted = read_datum();
        return make_list({constants().quote, std::move(quoted)});
      }
      case '"':
        return read_string();
      case '#':
        return read_dispatch();
      case '`':
      case ',':
        error(std::string("unsupported reader macro '") + c + "'");
      default:
        return read_token();
    }
  }

  Value read_list_tail() {
    std::vector<Value> elements;
    for (;;) {
      skip_blank();
      if (eof()) error("unterminated list");
      if (peek() == ')') {
        ++pos_;
        return make_list(elements);
      }
      if (peek() == '.' && (pos_ + 1 >= text_.size() || is_delimiter(peek(1)))) {
        if (elements.empty()) error("dot at start of list");
        ++pos_;
        Value tail = read_datum();
        skip_blank();
        if (peek() != ')') error("expected ')' after dotted tail");
        ++pos_;
        return make_list(elements, std::move(tail));
      }
      elements.push_back(read_datum());
    }
  }

  Value read_string() {
    const std::size_t start = pos_;
    ++pos_;
    std::string bytes;
    for (;;) {
      if (eof()) error_at(start, "unterminated string");
      char c = text_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (eof()) error_at(start, "unterminated string");
        c = text_[pos_++];
      }
      bytes.push_back(c);
    }
    return make_string(bytes);
  }

  Value read_dispatch() {
    const std::size_t start = pos_;
    const char sub = peek(1);
    if (sub == '\\') {
      pos_ += 2;
      if (eof()) error_at(start, "missing character after #\\");
      std::string token(1, text_[pos_++]);
      while (!eof() && !is_delimiter(peek())) token.push_back(text_[pos_++]);
      return character_from_token(token, start);
    }
    if (sub == 'c' || sub == 'C') {
      pos_ += 2;
      skip_blank();
      if (peek() != '(') error_at(start, "expected '(' after #c");
      ++pos_;
      Value real = read_datum();
      Value imag = read_datum();
      skip_blank();
      if (peek() != ')') error_at(start, "#c takes exactly two parts");
      ++pos_;
      if (!real.is_rational() || !imag.is_rational()) error_at(start, "#c parts must be rational");
      return make_number(std::move(real), std::move(imag));
    }
    error_at(start, std::string("unsupported dispatch #") + sub);
  }

  static char ascii_lower(char c) noexcept { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

  static bool iequals(std::string_view a, std::string_view b) noexcept {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) { return ascii_lower(x) == ascii_lower(y); });
  }

  static int hex_digit(char c) noexcept {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  }

  Value character_from_token(const std::string& token, std::size_t start) const {
    if (token.size() == 1) return make_character(static_cast<unsigned char>(token[0]));
    if (iequals(token, "Space")) return make_character(32);
    if (iequals(token, "Newline")) return make_character(10);
    if (iequals(token, "Tab")) return make_character(9);
    if (iequals(token, "Nul")) return make_character(0);
    if (token.size() == 3 && (token[0] == 'x' || token[0] == 'X')) {
      const int hi = hex_digit(token[1]);
      const int lo = hex_digit(token[2]);
      if (hi >= 0 && lo >= 0) return make_character(hi * 16 + lo);
    }
    error_at(start, "unknown character name #\\" + token);
  }

  static bool all_digits(std::string_view s) noexcept {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  }

  Value read_token() {
    const std::size_t start = pos_;
    std::string chars;
    std::vector<bool> escaped;
    while (!eof()) {
      const char c = peek();
      if (c == '|') {
        ++pos_;
        for (;;) {
          if (eof()) error_at(start, "unterminated |...| in symbol");
          char d = text_[pos_++];
          if (d == '|') break;
          if (d == '\\') {
            if (eof()) error_at(start, "unterminated |...| in symbol");
            d = text_[pos_++];
          }
          chars.push_back(d);
          escaped.push_back(true);
        }
      } else if (c == '\\') {
        ++pos_;
        if (eof()) error_at(start, "escape at end of input");
        chars.push_back(text_[pos_++]);
        escaped.push_back(true);
      } else if (is_delimiter(c)) {
        break;
      } else {
        chars.push_back(c);
        escaped.push_back(false);
        ++pos_;
      }
    }
    const bool any_escaped = std::find(escaped.begin(), escaped.end(), true) != escaped.end();
    if (!any_escaped) {
      if (chars == ".") error_at(start, "unexpected '.'");
      std::string_view body = chars;
      if (!body.empty() && (body[0] == '+' || body[0] == '-')) body.remove_prefix(1);
      if (all_digits(body)) return make_integer(Int(chars[0] == '+' ? chars.substr(1) : chars));
      if (const auto slash = body.find('/'); slash != std::string_view::npos) {
        const auto num = body.substr(0, slash);
        const auto den = body.substr(slash + 1);
        if (all_digits(num) && all_digits(den)) {
          Int n{std::string(num)};
          Int d{std::string(den)};
          if (d == 0) error_at(start, "zero denominator in " + chars);
          if (chars[0] == '-') n = -n;
          return make_rational(std::move(n), std::move(d));
        }
      }
    }
    // symbol: split at the first unescaped colon
    std::size_t colon = chars.size();
    for (std::size_t i = 0; i < chars.size(); ++i) {
      if (chars[i] == ':' && !escaped[i]) {
        colon = i;
        break;
      }
    }
    auto upcase = [&](std::size_t from, std::size_t to) {
      std::string out;
      for (std::size_t i = from; i < to; ++i) {
        const char c = chars[i];
        out.push_back(!escaped[i] && c >= 'a' && c <= 'z' ? static_cast<char>(c - 'a' + 'A') : c);
      }
      return out;
    };
    std::string package;
    std::size_t name_start = 0;
    if (colon == chars.size()) {
      package = options_.default_package;
    } else {
      package = colon == 0 ? std::string("KEYWORD") : upcase(0, colon);
      name_start = colon + 1;
      if (name_start < chars.size() && chars[name_start] == ':' && !escaped[name_start]) ++name_start;
    }
    for (std::size_t i = name_start; i < chars.size(); ++i) {
      if (chars[i] == ':' && !escaped[i]) error_at(start, "too many colons in symbol");
    }
    if (chars.empty()) error_at(start, "empty token");
    std::string name = upcase(name_start, chars.size());
    if (!valid_package_name(package)) error_at(start, "illegal package name \"" + package + "\"");
    return options_.resolver(package, name);
  }

  std::string_view text_;
  ReadOptions options_;
  std::size_t pos_ = 0;
};

/// Reads exactly one datum from `text`.
[[nodiscard]] inline Value read_value(std::string_view text, ReadOptions options = {}) {
  Reader reader(text, std::move(options));
  auto v = reader.next();
  if (!v) reader.error("no datum in input");
  if (!reader.at_end()) reader.error("trailing text after datum");
  return *v;
}

/// Reads one datum, resolving symbols through `env`.
[[nodiscard]] inline Value read_value(std::string_view text, const Environment& env) {
  return read_value(text, ReadOptions{"ACL2", env_resolver(env)});
}

/// All data in `text`, in order.
[[nodiscard]] inline std::vector<Value> read_all(std::string_view text, ReadOptions options = {}) {
  Reader reader(text, std::move(options));
  std::vector<Value> out;
  while (auto v = reader.next()) out.push_back(std::move(*v));
  return out;
}

// ---------------------------------------------------------------------------
// Printing

struct PrintOptions {
  std::string default_package = "ACL2";
  /// Write PKG::NAME even where the bare name would read back the same.
  bool qualify_all = false;
};

namespace detail {

inline bool safe_symbol_char(char c) noexcept {
  if ((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')) return true;
  constexpr std::string_view extra = "-+*/<>=!?$%&_.~^@[]{}";
  return extra.find(c) != std::string_view::npos;
}

inline bool looks_numeric(std::string_view s) noexcept {
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
  auto digits = [](std::string_view d) {
    return !d.empty() && std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (digits(s)) return true;
  const auto slash = s.find('/');
  return slash != std::string_view::npos && digits(s.substr(0, slash)) && digits(s.substr(slash + 1));
}

inline void print_symbol_name(std::string& out, std::string_view name) {
  const bool plain = !name.empty() && name != "." && !looks_numeric(name) &&
                     std::all_of(name.begin(), name.end(), safe_symbol_char);
  if (plain) {
    out.append(name);
    return;
  }
  out.push_back('|');
  for (char c : name) {
    if (c == '|' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('|');
}

inline void print_character(std::string& out, int code) {
  out.append("#\\");
  switch (code) {
    case 32: out.append("Space"); return;
    case 10: out.append("Newline"); return;
    case 9: out.append("Tab"); return;
    case 0: out.append("Nul"); return;
    default: break;
  }
  if (code > 32 && code < 127) {
    out.push_back(static_cast<char>(code));
    return;
  }
  constexpr char hex[] = "0123456789ABCDEF";
  out.push_back('x');
  out.push_back(hex[code >> 4]);
  out.push_back(hex[code & 15]);
}

inline void print_rational(std::string& out, const Value& v) {
  out.append(get_numerator(v).str());
  if (v.is_ratio()) {
    out.push_back('/');
    out.append(get_denominator(v).str());
  }
}

inline void print_into(std::string& out, const Value& v, const PrintOptions& options) {
  switch (v.kind()) {
    case ValueKind::integer:
    case ValueKind::ratio:
      print_rational(out, v);
      return;
    case ValueKind::complex_rational:
      out.append("#c(");
      print_rational(out, get_real_part(v));
      out.push_back(' ');
      print_rational(out, get_imag_part(v));
      out.push_back(')');
      return;
    case ValueKind::character:
      print_character(out, get_char_code(v));
      return;
    case ValueKind::string:
      out.push_back('"');
      for (char c : get_string(v)) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
      }
      out.push_back('"');
      return;
    case ValueKind::symbol: {
      const Symbol s(v);
      const std::string_view package = s.package().str();
      if (package == "KEYWORD") {
        out.push_back(':');
      } else if (options.qualify_all || !(resolve_builtin(options.default_package, s.name()) == s)) {
        out.append(package);
        out.append("::");
      }
      print_symbol_name(out, s.name());
      return;
    }
    case ValueKind::cons: {
      out.push_back('(');
      const Value* p = &v;
      bool first = true;
      while (p->is_cons()) {
        if (!first) out.push_back(' ');
        first = false;
        print_into(out, get_car(*p), options);
        p = &get_cdr(*p);
      }
      if (!is_nil(*p)) {
        out.append(" . ");
        print_into(out, *p, options);
      }
      out.push_back(')');
      return;
    }
  }
}

}  // namespace detail

/// Canonical text of `v`; reading it back with the same default package
/// yields an equal value.
[[nodiscard]] inline std::string print_value(const Value& v, const PrintOptions& options = {}) {
  std::string out;
  detail::print_into(out, v, options);
  return out;
}

// ---------------------------------------------------------------------------
// Terms

/// Term from an already-resolved datum. Bare symbols are variables except T,
/// NIL and keywords, which (like numbers, characters and strings) are
/// constants; (QUOTE v) is a constant; ((LAMBDA (params) body) args...) and
/// (fn args...) are applications.
[[nodiscard]] inline Term term_from_datum(const Value& datum) {
  const auto& c = constants();
  if (datum.is_symbol()) {
    const Symbol s(datum);
    if (s == c.t || s == c.nil || s.package() == c.keyword) return make_constant(datum);
    return make_variable(s);
  }
  if (!datum.is_cons()) return make_constant(datum);
  auto bad = [&](const std::string& why) -> Term { fail(ErrorKind::parse, "bad term " + print_value(datum) + ": " + why); };
  auto proper_list = [&](const Value& list) {
    std::vector<Value> out;
    const Value* p = &list;
    for (; p->is_cons(); p = &get_cdr(*p)) out.push_back(get_car(*p));
    if (!is_nil(*p)) bad("not a proper list");
    return out;
  };
  const Value& head = get_car(datum);
  std::vector<Value> rest = proper_list(get_cdr(datum));
  if (head.identity() == c.quote.identity()) {
    if (rest.size() != 1) return bad("QUOTE takes one argument");
    return make_constant(rest[0]);
  }
  std::vector<Term> args;
  args.reserve(rest.size());
  for (const auto& a : rest) args.push_back(term_from_datum(a));
  if (head.is_symbol()) return make_application(make_named_fn(Symbol(head)), std::move(args));
  if (head.is_cons() && get_car(head).identity() == c.lambda.identity()) {
    std::vector<Value> parts = proper_list(get_cdr(head));
    if (parts.size() != 2) return bad("LAMBDA takes a parameter list and a body");
    std::vector<Symbol> params;
    for (const auto& p : proper_list(parts[0])) {
      if (!p.is_symbol()) return bad("lambda parameter is not a symbol");
      params.emplace_back(p);
    }
    return make_application(make_lambda(std::move(params), term_from_datum(parts[1])), std::move(args));
  }
  return bad("head is neither a symbol nor a lambda expression");
}

/// Datum whose reading as a term gives back `term`.
[[nodiscard]] inline Value term_to_datum(const Term& term) {
  const auto& c = constants();
  return std::visit(
      [&]<class N>(const N& node) -> Value {
        if constexpr (std::is_same_v<N, Variable>) {
          return node.symbol;
        } else if constexpr (std::is_same_v<N, Constant>) {
          return make_list({c.quote, node.value});
        } else {
          std::vector<Value> items;
          if (const auto* named = std::get_if<NamedFn>(&node.fn.data().node)) {
            items.push_back(named->symbol);
          } else {
            const auto& lam = std::get<Lambda>(node.fn.data().node);
            std::vector<Value> params(lam.params.begin(), lam.params.end());
            items.push_back(make_list({c.lambda, make_list(params), term_to_datum(lam.body)}));
          }
          for (const auto& a : node.args) items.push_back(term_to_datum(a));
          return make_list(items);
        }
      },
      term.data().node);
}

[[nodiscard]] inline Term read_term(std::string_view text, ReadOptions options = {}) {
  return term_from_datum(read_value(text, std::move(options)));
}

[[nodiscard]] inline Term read_term(const Environment& env, std::string_view text) {
  return term_from_datum(read_value(text, env));
}

[[nodiscard]] inline std::string print_term(const Term& term, const PrintOptions& options = {}) {
  return print_value(term_to_datum(term), options);
}

/// Replaces every symbol in a datum read literally by its import-resolved
/// counterpart in `env`.
[[nodiscard]] inline Value resolve_datum(const Environment& env, const Value& datum) {
  if (datum.is_symbol()) {
    const Symbol s(datum);
    return env.resolve_symbol(s.package().str(), s.name());
  }
  if (!datum.is_cons()) return datum;
  std::vector<Value> items;
  const Value* p = &datum;
  for (; p->is_cons(); p = &get_cdr(*p)) items.push_back(resolve_datum(env, get_car(*p)));
  return make_list(items, resolve_datum(env, *p));
}

}  // namespace aij

#endif  // AIJ_SEXPR_HPP

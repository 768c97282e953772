#ifndef AIJ_DUMP_HPP
#define AIJ_DUMP_HPP

// World dump files: package definitions, translated function definitions and
// the package witness name, as extracted from a theorem-prover session.
//
//   (world
//     (witness "<name>")
//     (packages (pkg "<NAME>" (<sym> ...)) ...)
//     (functions
//       (fn <name> (<param> ...) <body> :raw <bool> :whitelisted <bool> :stobjs <bool>)
//       ...))
//
// Booleans are t or nil. Symbols are read literally here (as PKG::NAME
// tokens); import resolution happens when a dump is loaded.

#include <fstream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "aij/sexpr.hpp"

namespace aij {

/// A symbol as written: package and name, not yet resolved.
struct SymbolToken {
  std::string package;
  std::string name;

  [[nodiscard]] std::string qualified() const { return package + "::" + name; }
  friend bool operator==(const SymbolToken&, const SymbolToken&) = default;
};

struct PackageEntry {
  std::string name;
  std::vector<SymbolToken> imports;

  friend bool operator==(const PackageEntry&, const PackageEntry&) = default;
};

struct FunctionEntry {
  SymbolToken name;
  std::vector<SymbolToken> params;
  Value body = nil();  // literal datum of the translated body
  bool raw_code = false;
  bool whitelisted = false;
  bool stobjs = false;

  friend bool operator==(const FunctionEntry& a, const FunctionEntry& b) {
    return a.name == b.name && a.params == b.params && value_equal(a.body, b.body) && a.raw_code == b.raw_code &&
           a.whitelisted == b.whitelisted && a.stobjs == b.stobjs;
  }
};

struct WorldDump {
  std::string witness_name;
  std::vector<PackageEntry> packages;  // definition order
  std::vector<FunctionEntry> functions;

  [[nodiscard]] const FunctionEntry* find_function(const SymbolToken& name) const {
    for (const auto& f : functions) {
      if (f.name == name) return &f;
    }
    return nullptr;
  }

  friend bool operator==(const WorldDump&, const WorldDump&) = default;
};

/// Parses "PKG::NAME", ":NAME" or "NAME" (default package ACL2) without resolving it.
[[nodiscard]] inline SymbolToken parse_symbol_token(std::string_view text) {
  const Value v = read_value(text, ReadOptions{"ACL2", raw_resolver()});
  if (!v.is_symbol()) fail(ErrorKind::parse, "not a symbol: " + std::string(text));
  const Symbol s(v);
  return {std::string(s.package().str()), std::string(s.name())};
}

namespace detail {

[[noreturn]] inline void bad_dump(const std::string& why) { fail(ErrorKind::bad_dump, why); }

// The literal reader makes `nil` ACL2::NIL, so lists end in either NIL.
inline bool is_dump_nil(const Value& v) { return v.is_symbol() && Symbol(v).name() == "NIL"; }

inline bool dump_head_is(const Value& v, std::string_view name) {
  return v.is_cons() && get_car(v).is_symbol() && Symbol(get_car(v)).name() == name;
}

inline SymbolToken dump_symbol(const Value& v, const char* what) {
  if (!v.is_symbol()) bad_dump(std::string(what) + " is not a symbol: " + print_value(v));
  const Symbol s(v);
  return {std::string(s.package().str()), std::string(s.name())};
}

inline bool dump_bool(const Value& v, const char* flag) {
  if (v.is_symbol()) {
    const Symbol s(v);
    if (s.name() == "T") return true;
    if (s.name() == "NIL") return false;
  }
  bad_dump(std::string(flag) + " must be t or nil");
}

// List terminators built by the reader are not written tokens and are skipped.
inline void collect_packages(const Value& v, std::vector<std::string>& out) {
  if (v.is_symbol()) {
    out.emplace_back(Symbol(v).package().str());
    return;
  }
  if (!v.is_cons()) return;
  const Value* p = &v;
  for (; p->is_cons(); p = &get_cdr(*p)) collect_packages(get_car(*p), out);
  if (!is_nil(*p)) collect_packages(*p, out);
}

}  // namespace detail

/// Parses and validates a dump. Structural problems and references to
/// undeclared packages signal `bad-dump`; syntax errors signal `parse`.
[[nodiscard]] inline WorldDump read_world_dump(std::string_view text) {
  using namespace detail;
  // dump lists may contain bare NIL read as ACL2::NIL; treat both as empty
  auto items = [](const Value& v, const char* what) {
    std::vector<Value> out;
    const Value* p = &v;
    for (; p->is_cons(); p = &get_cdr(*p)) out.push_back(get_car(*p));
    if (!is_dump_nil(*p)) bad_dump(std::string(what) + " is not a list");
    return out;
  };

  Reader reader(text, ReadOptions{"ACL2", raw_resolver()});
  auto top = reader.next();
  if (!top) bad_dump("empty dump");
  if (!reader.at_end()) bad_dump("text after the world form");
  if (!dump_head_is(*top, "WORLD")) bad_dump("dump must be a (world ...) form");
  const auto sections = items(get_cdr(*top), "world");
  if (sections.size() != 3 || !dump_head_is(sections[0], "WITNESS") || !dump_head_is(sections[1], "PACKAGES") ||
      !dump_head_is(sections[2], "FUNCTIONS")) {
    bad_dump("world must contain (witness ...), (packages ...), (functions ...) in that order");
  }

  WorldDump dump;
  const auto witness = items(get_cdr(sections[0]), "witness");
  if (witness.size() != 1 || !witness[0].is_string()) bad_dump("witness must hold one string");
  dump.witness_name = get_string(witness[0]);

  std::unordered_set<std::string> declared;
  for (const auto& p : items(get_cdr(sections[1]), "packages")) {
    if (!dump_head_is(p, "PKG")) bad_dump("package entries must be (pkg \"NAME\" (imports...))");
    const auto fields = items(get_cdr(p), "pkg");
    if (fields.size() != 2 || !fields[0].is_string()) bad_dump("package entries must be (pkg \"NAME\" (imports...))");
    PackageEntry entry{get_string(fields[0]), {}};
    if (!valid_package_name(entry.name)) bad_dump("illegal package name \"" + entry.name + "\"");
    if (declared.contains(entry.name)) bad_dump("duplicate package \"" + entry.name + "\"");
    for (const auto& s : items(fields[1], "import list")) {
      SymbolToken token = dump_symbol(s, "import");
      if (!declared.contains(token.package)) {
        bad_dump("package \"" + entry.name + "\" imports " + token.qualified() + " from a package not defined before it");
      }
      entry.imports.push_back(std::move(token));
    }
    declared.insert(entry.name);
    dump.packages.push_back(std::move(entry));
  }

  auto check_declared = [&](const std::string& package, const std::string& context) {
    if (!declared.contains(package)) bad_dump(context + " refers to undeclared package \"" + package + "\"");
  };

  std::unordered_set<std::string> defined;
  for (const auto& f : items(get_cdr(sections[2]), "functions")) {
    if (!dump_head_is(f, "FN")) bad_dump("function entries must be (fn ...)");
    const auto fields = items(get_cdr(f), "fn");
    if (fields.size() != 9) bad_dump("function entries must be (fn name (params) body :raw b :whitelisted b :stobjs b)");
    FunctionEntry entry;
    entry.name = dump_symbol(fields[0], "function name");
    const std::string context = "function " + entry.name.qualified();
    check_declared(entry.name.package, context);
    if (!defined.insert(entry.name.qualified()).second) bad_dump("duplicate " + context);
    for (const auto& param : items(fields[1], "parameter list")) {
      entry.params.push_back(dump_symbol(param, "parameter"));
      check_declared(entry.params.back().package, context);
    }
    entry.body = fields[2];
    std::vector<std::string> body_packages;
    collect_packages(entry.body, body_packages);
    for (const auto& pkg : body_packages) check_declared(pkg, context);
    const char* flags[] = {"RAW", "WHITELISTED", "STOBJS"};
    bool* targets[] = {&entry.raw_code, &entry.whitelisted, &entry.stobjs};
    for (int i = 0; i < 3; ++i) {
      const Value& key = fields[3 + 2 * i];
      if (!key.is_symbol() || Symbol(key).package().str() != "KEYWORD" || Symbol(key).name() != flags[i]) {
        bad_dump(context + ": expected :" + std::string(flags[i]));
      }
      *targets[i] = dump_bool(fields[4 + 2 * i], flags[i]);
    }
    dump.functions.push_back(std::move(entry));
  }
  return dump;
}

[[nodiscard]] inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

[[nodiscard]] inline WorldDump read_world_dump_file(const std::string& path) { return read_world_dump(read_file(path)); }

}  // namespace aij

#endif  // AIJ_DUMP_HPP

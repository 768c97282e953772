#ifndef AIJ_CODEGEN_HPP
#define AIJ_CODEGEN_HPP

// Loader generation. A dump and a set of root functions become a
// LoaderProgram (one builder per package, one per closure function), which
// an emitter renders as source text. The reference emitter writes a C++
// header whose class rebuilds the environment through the public factories:
//
//   class ACL2 {
//    public:
//     static void initialize();           // at most once
//     static aij::Value call(fn, args);   // fails before initialize
//     static const aij::Environment& environment();
//    private:
//     static void addPackageDef_41434C32();
//     static void addFunctionDef_41434C32_46414354();
//     ...
//   };

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "aij/closure.hpp"
#include "aij/flatten.hpp"

namespace aij {

enum class NameKind { package, function };

/// Uppercase hex of the bytes of `s`, two digits per byte.
[[nodiscard]] inline std::string hex_encode(std::string_view s) {
  static constexpr char digits[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(2 * s.size());
  for (unsigned char c : s) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xF]);
  }
  return out;
}

/// addPackageDef_<hex package> or addFunctionDef_<hex package>_<hex name>.
[[nodiscard]] inline std::string hex_name(NameKind kind, std::string_view package, std::string_view name = {}) {
  if (kind == NameKind::package) return "addPackageDef_" + hex_encode(package);
  return "addFunctionDef_" + hex_encode(package) + "_" + hex_encode(name);
}

struct PackageBuilder {
  std::string method_name;
  std::string package;
  std::vector<Symbol> imports;
};

struct FunctionBuilder {
  std::string method_name;
  Symbol name;
  std::vector<Symbol> params;
  FlattenedBuild body;
};

struct LoaderOptions {
  std::string class_name = "ACL2";
  std::string namespace_name;  // empty for the global namespace
};

struct LoaderProgram {
  std::string class_name = "ACL2";
  std::string namespace_name;
  std::vector<PackageBuilder> package_builders;  // dump order
  std::vector<FunctionBuilder> function_builders;
  std::string witness_name;
};

/// Builders for every dump package and for the closure of `roots`.
[[nodiscard]] inline LoaderProgram make_loader_program(const WorldDump& dump, const std::vector<SymbolToken>& roots,
                                                       const LoaderOptions& options = {}) {
  static const std::regex identifier("[A-Za-z_][A-Za-z0-9_]*");
  static const std::regex qualified("[A-Za-z_][A-Za-z0-9_]*(::[A-Za-z_][A-Za-z0-9_]*)*");
  if (!std::regex_match(options.class_name, identifier)) fail(ErrorKind::usage, "bad class name: " + options.class_name);
  if (!options.namespace_name.empty() && !std::regex_match(options.namespace_name, qualified)) {
    fail(ErrorKind::usage, "bad namespace name: " + options.namespace_name);
  }

  ResolvedDump resolved(dump);
  std::vector<Symbol> root_symbols;
  for (const auto& r : roots) root_symbols.push_back(resolved.resolve(r));
  const auto closure = compute_closure(resolved, root_symbols);

  LoaderProgram program;
  program.class_name = options.class_name;
  program.namespace_name = options.namespace_name;
  program.witness_name = dump.witness_name;
  for (const auto& pkg : dump.packages) {
    PackageBuilder b{hex_name(NameKind::package, pkg.name), pkg.name, {}};
    for (const auto& token : pkg.imports) b.imports.push_back(resolved.resolve(token));
    program.package_builders.push_back(std::move(b));
  }
  for (const auto* f : closure) {
    FlattenCounters counters;
    program.function_builders.push_back({hex_name(NameKind::function, f->name.package().str(), f->name.name()), f->name,
                                         f->params, flatten_term(f->body, counters)});
  }
  return program;
}

/// Renders a LoaderProgram as source text in some target language.
class LoaderEmitter {
 public:
  virtual ~LoaderEmitter() = default;
  [[nodiscard]] virtual std::string file_name(const LoaderProgram& program) const = 0;
  [[nodiscard]] virtual std::string emit(const LoaderProgram& program) const = 0;
};

/// Emits a header-only C++ class named after the program's class.
class CppLoaderEmitter final : public LoaderEmitter {
 public:
  [[nodiscard]] std::string file_name(const LoaderProgram& program) const override {
    return program.class_name + ".hpp";
  }

  [[nodiscard]] std::string emit(const LoaderProgram& program) const override {
    std::ostringstream out;
    const std::string guard = "AIJ_GENERATED_" + hex_encode(program.namespace_name + "::" + program.class_name);
    out << "// Generated loader. Do not edit.\n"
        << "#ifndef " << guard << "\n#define " << guard << "\n\n"
        << "#include <initializer_list>\n#include <span>\n#include <vector>\n\n"
        << "#include \"aij/aij.hpp\"\n\n";
    if (!program.namespace_name.empty()) out << "namespace " << program.namespace_name << " {\n\n";
    out << "class " << program.class_name << " {\n public:\n";
    out << "  static void initialize() {\n"
        << "    if (initialized_) aij::fail(aij::ErrorKind::already_initialized, \"" << program.class_name
        << " is already initialized\");\n";
    for (const auto& b : program.package_builders) out << "    " << b.method_name << "();\n";
    out << "    env_().set_package_witness_name(std::string(" << string_literal(program.witness_name) << "));\n";
    for (const auto& b : program.function_builders) out << "    " << b.method_name << "();\n";
    out << "    env_().seal();\n"
        << "    initialized_ = true;\n"
        << "  }\n\n"
        << "  static bool initialized() { return initialized_; }\n\n"
        << "  static aij::Value call(const aij::Symbol& function, std::span<const aij::Value> arguments) {\n"
        << "    if (!initialized_) aij::fail(aij::ErrorKind::not_initialized, \"" << program.class_name
        << " is not initialized\");\n"
        << "    return aij::call_function(env_(), function, arguments);\n"
        << "  }\n\n"
        << "  static aij::Value call(const aij::Symbol& function, std::initializer_list<aij::Value> arguments) {\n"
        << "    return call(function, std::span<const aij::Value>(arguments.begin(), arguments.size()));\n"
        << "  }\n\n"
        << "  static const aij::Environment& environment() { return env_(); }\n\n"
        << " private:\n"
        << "  static inline bool initialized_ = false;\n\n"
        << "  static aij::Environment& env_() {\n"
        << "    static aij::Environment env;\n"
        << "    return env;\n"
        << "  }\n";
    for (const auto& b : program.package_builders) emit_package(out, b);
    for (const auto& b : program.function_builders) emit_function(out, b);
    out << "};\n";
    if (!program.namespace_name.empty()) out << "\n}  // namespace " << program.namespace_name << "\n";
    out << "\n#endif  // " << guard << "\n";
    return out.str();
  }

  /// C++ expression for a string_view holding exactly `bytes`.
  [[nodiscard]] static std::string string_literal(std::string_view bytes) {
    std::ostringstream out;
    out << "std::string_view(\"";
    for (unsigned char c : bytes) {
      if (c == '"' || c == '\\') {
        out << '\\' << c;
      } else if (c >= 0x20 && c < 0x7F && c != '?') {
        out << c;
      } else {
        out << '\\' << std::oct << std::setw(3) << std::setfill('0') << static_cast<int>(c) << std::dec;
      }
    }
    out << "\", " << bytes.size() << ")";
    return out.str();
  }

  [[nodiscard]] static std::string symbol_expr(const Symbol& s) {
    return "env.resolve_symbol(" + string_literal(s.package().str()) + ", " + string_literal(s.name()) + ")";
  }

  [[nodiscard]] static std::string rational_expr(const Value& v) {
    if (v.is_integer()) return integer_expr(get_integer(v));
    return "aij::make_rational(" + int_expr(get_numerator(v)) + ", " + int_expr(get_denominator(v)) + ")";
  }

  [[nodiscard]] static std::string expr(const BuildExpr& e) {
    auto operands = [&] {
      std::string s;
      for (std::size_t i = 0; i < e.operands.size(); ++i) s += (i ? ", " : "") + e.operands[i];
      return s;
    };
    switch (e.factory) {
      case Factory::integer:
      case Factory::rational: return rational_expr(e.literal);
      case Factory::number:
        return "aij::make_number(" + rational_expr(get_real_part(e.literal)) + ", " +
               rational_expr(get_imag_part(e.literal)) + ")";
      case Factory::character: return "aij::make_character(" + std::to_string(get_char_code(e.literal)) + ")";
      case Factory::string: return "aij::make_string(" + string_literal(get_string(e.literal)) + ")";
      case Factory::symbol: return "aij::Value(" + symbol_expr(Symbol(e.literal)) + ")";
      case Factory::cons: return "aij::make_cons(" + operands() + ")";
      case Factory::variable: return "aij::make_variable(" + symbol_expr(Symbol(e.literal)) + ")";
      case Factory::constant: return "aij::make_constant(" + operands() + ")";
      case Factory::lambda: {
        std::string params;
        for (const Value* p = &e.literal; p->is_cons(); p = &get_cdr(*p)) {
          params += (params.empty() ? "" : ", ") + symbol_expr(Symbol(get_car(*p)));
        }
        return "aij::make_lambda({" + params + "}, " + operands() + ")";
      }
      case Factory::application:
        return "aij::make_application(aij::make_named_fn(" + symbol_expr(Symbol(e.literal)) + "), {" + operands() +
               "})";
      case Factory::lambda_application: {
        std::string args;
        for (std::size_t i = 1; i < e.operands.size(); ++i) args += (i > 1 ? ", " : "") + e.operands[i];
        return "aij::make_application(" + e.operands.front() + ", {" + args + "})";
      }
    }
    return {};
  }

 private:
  static std::string int_expr(const Int& n) {
    if (n > -(Int(1) << 62) && n < (Int(1) << 62)) return "aij::Int(" + n.str() + "LL)";
    return "aij::Int(\"" + n.str() + "\")";
  }

  static std::string integer_expr(const Int& n) { return "aij::make_integer(" + int_expr(n) + ")"; }

  static void emit_package(std::ostringstream& out, const PackageBuilder& b) {
    out << "\n  static void " << b.method_name << "() {\n"
        << "    aij::Environment& env = env_();\n"
        << "    std::vector<aij::Symbol> imports;\n";
    if (!b.imports.empty()) out << "    imports.reserve(" << b.imports.size() << ");\n";
    for (const auto& s : b.imports) out << "    imports.push_back(" << symbol_expr(s) << ");\n";
    out << "    env.add_package_def(aij::make_package_name(" << string_literal(b.package)
        << "), std::move(imports));\n  }\n";
  }

  static void emit_function(std::ostringstream& out, const FunctionBuilder& b) {
    static constexpr const char* types[] = {"aij::Value", "aij::Term", "aij::Fn"};
    out << "\n  static void " << b.method_name << "() {\n"
        << "    aij::Environment& env = env_();\n";
    for (const auto& st : b.body.statements) {
      out << "    const " << types[static_cast<int>(st.kind)] << " " << st.local << " = " << expr(st.expr) << ";\n";
    }
    std::string params;
    for (const auto& p : b.params) params += (params.empty() ? "" : ", ") + symbol_expr(p);
    out << "    env.add_function_def(" << symbol_expr(b.name) << ", {" << params << "}, "
        << expr(b.body.final_expression) << ");\n  }\n";
  }
};

/// Source text of the loader for `roots`.
[[nodiscard]] inline std::string emit_loader(const WorldDump& dump, const std::vector<SymbolToken>& roots,
                                             const LoaderOptions& options = {},
                                             const LoaderEmitter& emitter = CppLoaderEmitter{}) {
  return emitter.emit(make_loader_program(dump, roots, options));
}

/// Writes the loader into `directory` and returns the file path.
inline std::filesystem::path write_loader(const WorldDump& dump, const std::vector<SymbolToken>& roots,
                                          const LoaderOptions& options, const std::filesystem::path& directory,
                                          const LoaderEmitter& emitter = CppLoaderEmitter{}) {
  const LoaderProgram program = make_loader_program(dump, roots, options);
  const std::filesystem::path path = directory / emitter.file_name(program);
  std::error_code ec;
  if (!directory.empty()) std::filesystem::create_directories(directory, ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::io, "cannot write " + path.string());
  out << emitter.emit(program);
  out.close();
  if (!out) fail(ErrorKind::io, "error writing " + path.string());
  return path;
}

}  // namespace aij

#endif  // AIJ_CODEGEN_HPP

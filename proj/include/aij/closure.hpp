#ifndef AIJ_CLOSURE_HPP
#define AIJ_CLOSURE_HPP

// Resolution of a world dump against its own packages, the call-graph
// closure of requested functions, and direct loading into an environment.

#include <deque>
#include <memory>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "aij/dump.hpp"
#include "aij/evaluator.hpp"

namespace aij {

/// Functions applied by name anywhere in `term`, including inside lambda
/// bodies, in first-occurrence order. Quoted constants contribute nothing.
[[nodiscard]] inline std::vector<Symbol> called_functions(const Term& term) {
  std::vector<Symbol> out;
  std::unordered_set<Symbol, SymbolHash> seen;
  auto walk = [&](auto&& self, const Term& t) -> void {
    const auto* app = std::get_if<Application>(&t.data().node);
    if (app == nullptr) return;
    if (const auto* named = std::get_if<NamedFn>(&app->fn.data().node)) {
      if (seen.insert(named->symbol).second) out.push_back(named->symbol);
    } else {
      self(self, std::get<Lambda>(app->fn.data().node).body);
    }
    for (const auto& a : app->args) self(self, a);
  };
  walk(walk, term);
  return out;
}

/// Names that evaluate natively and never need a definition.
[[nodiscard]] inline bool is_builtin_function(const Symbol& s) {
  return s.primitive() != Primitive::none || s == constants().return_last;
}

/// A dump function with its name, parameters and body resolved.
struct ResolvedFunction {
  const FunctionEntry* entry;
  Symbol name;
  std::vector<Symbol> params;
  Term body;
};

/// A dump whose packages and witness name are installed in an (unsealed)
/// environment. Function bodies are resolved on first use.
class ResolvedDump {
 public:
  explicit ResolvedDump(const WorldDump& dump) : dump_(&dump) {
    for (const auto& pkg : dump.packages) {
      std::vector<Symbol> imports;
      imports.reserve(pkg.imports.size());
      for (const auto& token : pkg.imports) imports.push_back(resolve(token));
      env_.add_package_def(make_package_name(pkg.name), std::move(imports));
    }
    env_.set_package_witness_name(dump.witness_name);
    for (const auto& f : dump.functions) {
      by_name_.emplace(resolve(f.name), &f);
    }
  }

  [[nodiscard]] const WorldDump& dump() const noexcept { return *dump_; }

  /// Environment holding the dump's packages and witness name.
  [[nodiscard]] const Environment& environment() const noexcept { return env_; }

  [[nodiscard]] Symbol resolve(const SymbolToken& token) const { return env_.resolve_symbol(token.package, token.name); }

  /// The dump entry defining `name`, or nullptr.
  [[nodiscard]] const FunctionEntry* find_entry(const Symbol& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? nullptr : it->second;
  }

  /// Resolved definition of `name`; nullptr if the dump does not define it.
  const ResolvedFunction* function(const Symbol& name) {
    if (auto it = resolved_.find(name); it != resolved_.end()) return it->second.get();
    const FunctionEntry* entry = find_entry(name);
    if (entry == nullptr) return nullptr;
    std::vector<Symbol> params;
    for (const auto& p : entry->params) params.push_back(resolve(p));
    Term body = [&] {
      try {
        return term_from_datum(resolve_datum(env_, entry->body));
      } catch (const Error& e) {
        fail(ErrorKind::bad_dump, "body of " + entry->name.qualified() + ": " + e.what());
      }
    }();
    auto rf = std::make_unique<ResolvedFunction>(ResolvedFunction{entry, name, std::move(params), std::move(body)});
    return resolved_.emplace(name, std::move(rf)).first->second.get();
  }

 private:
  const WorldDump* dump_;
  Environment env_;
  std::unordered_map<Symbol, const FunctionEntry*, SymbolHash> by_name_;
  std::unordered_map<Symbol, std::unique_ptr<ResolvedFunction>, SymbolHash> resolved_;
};

/// Closure of `roots` under calls, as a worklist: each step removes the
/// first function, checks it, appends it to the result, and enqueues the
/// functions it calls that are neither built in, in the result, nor queued.
/// The result is in removal order.
[[nodiscard]] inline std::vector<const ResolvedFunction*> compute_closure(ResolvedDump& resolved,
                                                                          const std::vector<Symbol>& roots) {
  std::deque<Symbol> worklist;
  std::unordered_set<Symbol, SymbolHash> queued;
  for (const auto& r : roots) {
    if (!is_builtin_function(r) && queued.insert(r).second) worklist.push_back(r);
  }
  std::vector<const ResolvedFunction*> result;
  std::unordered_set<Symbol, SymbolHash> done;
  while (!worklist.empty()) {
    const Symbol fn = worklist.front();
    worklist.pop_front();
    queued.erase(fn);
    const ResolvedFunction* def = resolved.function(fn);
    const std::string name = std::string(fn.package().str()) + "::" + std::string(fn.name());
    if (def == nullptr) fail(ErrorKind::constrained_or_missing, name + " has no definition in the dump");
    if (def->entry->stobjs) fail(ErrorKind::stobj, name + " has input or output stobjs");
    if (def->entry->raw_code && !def->entry->whitelisted) {
      fail(ErrorKind::raw_code_not_whitelisted, name + " has raw code and is not whitelisted");
    }
    result.push_back(def);
    done.insert(fn);
    for (const auto& callee : called_functions(def->body)) {
      if (is_builtin_function(callee) || done.contains(callee) || queued.contains(callee)) continue;
      queued.insert(callee);
      worklist.push_back(callee);
    }
  }
  return result;
}

/// Closure of `roots` (written as symbol tokens) over a dump.
[[nodiscard]] inline std::vector<FunctionEntry> compute_closure(const WorldDump& dump,
                                                                const std::vector<SymbolToken>& roots) {
  ResolvedDump resolved(dump);
  std::vector<Symbol> root_symbols;
  for (const auto& r : roots) root_symbols.push_back(resolved.resolve(r));
  std::vector<FunctionEntry> out;
  for (const auto* f : compute_closure(resolved, root_symbols)) out.push_back(*f->entry);
  return out;
}

/// Builds a sealed environment with all dump packages, the witness name and
/// the closure of `roots`.
[[nodiscard]] inline Environment load_direct(const WorldDump& dump, const std::vector<SymbolToken>& roots) {
  ResolvedDump resolved(dump);
  std::vector<Symbol> root_symbols;
  for (const auto& r : roots) root_symbols.push_back(resolved.resolve(r));
  const auto closure = compute_closure(resolved, root_symbols);
  Environment env = resolved.environment();
  for (const auto* f : closure) env.add_function_def(f->name, f->params, f->body);
  env.seal();
  return env;
}

}  // namespace aij

#endif  // AIJ_CLOSURE_HPP

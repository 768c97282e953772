#ifndef AIJ_ENVIRONMENT_HPP
#define AIJ_ENVIRONMENT_HPP

// Package definitions, function definitions and the package witness name.
//
// An environment is filled single-threaded (add_package_def,
// add_function_def, set_package_witness_name) and then sealed. A sealed
// environment rejects every mutation and is read-only, so any number of
// threads may evaluate against it.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "aij/terms.hpp"

namespace aij {

class Environment {
 public:
  using CallObserver = std::function<void(const Symbol&)>;

  /// Packages must be added in definition order so that every imported
  /// symbol's home package already exists.
  void add_package_def(PackageName name, std::vector<Symbol> imports) {
    require_unsealed();
    if (package_index_.contains(name)) {
      fail(ErrorKind::duplicate_package, "package \"" + std::string(name.str()) + "\" already defined");
    }
    auto& index = imports_[name];
    for (const auto& s : imports) index.emplace(std::string(s.name()), s);
    package_index_.emplace(name, packages_.size());
    packages_.emplace_back(name, std::move(imports));
  }

  /// The symbol written pkg::name: the imported symbol if pkg imports one
  /// with that name, else the symbol whose home package is pkg.
  [[nodiscard]] Symbol resolve_symbol(std::string_view package, std::string_view name) const {
    const auto pkg = find_package(package);
    if (!pkg) fail(ErrorKind::unknown_package, "package \"" + std::string(package) + "\" is not defined");
    if (auto it = imports_.find(*pkg); it != imports_.end()) {
      if (auto found = it->second.find(name); found != it->second.end()) return found->second;
    }
    return make_symbol_raw(*pkg, make_string(name));
  }

  void add_function_def(Symbol name, std::vector<Symbol> params, Term body) {
    require_unsealed();
    if (name.primitive() != Primitive::none || name == constants().return_last) {
      fail(ErrorKind::duplicate_function, std::string(name.name()) + " is a primitive function");
    }
    if (functions_.contains(name)) {
      fail(ErrorKind::duplicate_function,
           std::string(name.package().str()) + "::" + std::string(name.name()) + " already defined");
    }
    Fn lambda = make_lambda(std::move(params), std::move(body));
    function_order_.push_back(name);
    functions_.emplace(std::move(name), std::move(lambda));
  }

  void set_package_witness_name(std::string name) {
    require_unsealed();
    if (witness_) fail(ErrorKind::witness_already_set, "package witness name already set");
    witness_ = std::move(name);
  }

  [[nodiscard]] const std::optional<std::string>& package_witness_name() const noexcept { return witness_; }

  void seal() {
    require_unsealed();
    sealed_ = true;
  }

  [[nodiscard]] bool is_sealed() const noexcept { return sealed_; }

  [[nodiscard]] std::optional<PackageName> find_package(std::string_view name) const {
    if (!valid_package_name(name)) return std::nullopt;
    const PackageName pkg = make_package_name(name);
    if (!package_index_.contains(pkg)) return std::nullopt;
    return pkg;
  }

  /// Import list in definition order, or nullptr for an undefined package.
  [[nodiscard]] const std::vector<Symbol>* package_imports(std::string_view name) const {
    const auto pkg = find_package(name);
    if (!pkg) return nullptr;
    return &packages_[package_index_.at(*pkg)].second;
  }

  /// Defined packages in definition order.
  [[nodiscard]] std::vector<PackageName> package_names() const {
    std::vector<PackageName> out;
    out.reserve(packages_.size());
    for (const auto& [name, imports] : packages_) out.push_back(name);
    return out;
  }

  /// The defining lambda of a function, or nullptr.
  [[nodiscard]] const Fn* find_function(const Symbol& name) const {
    auto it = functions_.find(name);
    return it == functions_.end() ? nullptr : &it->second;
  }

  /// Defined functions in definition order.
  [[nodiscard]] const std::vector<Symbol>& function_names() const noexcept { return function_order_; }

  /// Instrumentation: invoked with the function name on every named call.
  /// Not part of the environment's contents; may be set at any time.
  void set_call_observer(CallObserver observer) { observer_ = std::move(observer); }
  [[nodiscard]] const CallObserver& call_observer() const noexcept { return observer_; }

 private:
  void require_unsealed() const {
    if (sealed_) fail(ErrorKind::sealed, "environment is sealed");
  }

  std::vector<std::pair<PackageName, std::vector<Symbol>>> packages_;
  std::unordered_map<PackageName, std::size_t> package_index_;
  std::unordered_map<PackageName, std::unordered_map<std::string, Symbol, detail::StringHash, std::equal_to<>>>
      imports_;
  std::unordered_map<Symbol, Fn, SymbolHash> functions_;
  std::vector<Symbol> function_order_;
  std::optional<std::string> witness_;
  bool sealed_ = false;
  CallObserver observer_;
};

}  // namespace aij

#endif  // AIJ_ENVIRONMENT_HPP

// aij: evaluate, generate loaders for, and benchmark functions from world dumps.
//
//   aij eval  fact.dump ACL2::FACT 10
//   aij gen   fact.dump ACL2::FACT --class Fact --out build/
//   aij bench fib.dump ACL2::FIB 25 30 --runs 10 [--csv]

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aij/aij.hpp"

namespace {

std::vector<aij::SymbolToken> tokens(const std::vector<std::string>& names) {
  std::vector<aij::SymbolToken> out;
  for (const auto& n : names) out.push_back(aij::parse_symbol_token(n));
  return out;
}

int cmd_eval(const std::string& dump_path, const std::string& function, const std::vector<std::string>& args,
             std::size_t stack) {
  const auto dump = aij::read_world_dump_file(dump_path);
  const auto token = aij::parse_symbol_token(function);
  const aij::Environment env = aij::load_direct(dump, {token});
  std::vector<aij::Value> values;
  for (const auto& a : args) values.push_back(aij::read_value(a, env));
  const aij::Symbol fn = env.resolve_symbol(token.package, token.name);
  const aij::Value result = aij::run_with_stack(stack, [&] { return aij::call_function(env, fn, values); });
  std::cout << aij::print_value(result) << "\n";
  return 0;
}

int cmd_gen(const std::string& dump_path, const std::vector<std::string>& roots, const std::string& out_dir,
            const std::string& class_name, const std::string& package) {
  const auto dump = aij::read_world_dump_file(dump_path);
  const auto path = aij::write_loader(dump, tokens(roots), {class_name, package}, out_dir);
  std::cout << path.string() << "\n";
  return 0;
}

int cmd_bench(const std::string& dump_path, const std::string& function, const std::vector<std::string>& inputs,
              int runs, bool csv, std::size_t stack) {
  const auto dump = aij::read_world_dump_file(dump_path);
  const auto token = aij::parse_symbol_token(function);
  const aij::Environment env = aij::load_direct(dump, {token});
  const aij::Symbol fn = env.resolve_symbol(token.package, token.name);
  const auto report = aij::run_with_stack(stack, [&] { return aij::run_bench(env, fn, inputs, runs); });
  std::cout << (csv ? aij::format_csv(report) : aij::format_table(report));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interpreter for translated ACL2 definitions"};
  app.require_subcommand(1);
  std::string stack_text = "1G";
  app.add_option("--stack-size", stack_text, "Evaluation stack size, e.g. 512M or 2G")->capture_default_str();

  std::string dump_path;
  std::string function;
  std::vector<std::string> args;

  auto* eval = app.add_subcommand("eval", "Call a function on values and print the result");
  eval->add_option("dump", dump_path, "World dump file")->required();
  eval->add_option("function", function, "Function name, e.g. ACL2::FACT")->required();
  eval->add_option("args", args, "Argument values");

  std::vector<std::string> roots;
  std::string out_dir = ".";
  std::string class_name = "ACL2";
  std::string package;
  auto* gen = app.add_subcommand("gen", "Write a C++ loader for the closure of the given functions");
  gen->add_option("dump", dump_path, "World dump file")->required();
  gen->add_option("roots", roots, "Root function names")->required();
  gen->add_option("--out", out_dir, "Output directory")->capture_default_str();
  gen->add_option("--class", class_name, "Generated class name")->capture_default_str();
  gen->add_option("--package", package, "Namespace of the generated class");

  std::vector<std::string> inputs;
  int runs = 10;
  bool csv = false;
  auto* bench = app.add_subcommand("bench", "Time repeated calls on each input");
  bench->add_option("dump", dump_path, "World dump file")->required();
  bench->add_option("function", function, "Function name, e.g. ACL2::FIB")->required();
  bench->add_option("inputs", inputs, "One argument value per row")->required();
  bench->add_option("--runs", runs, "Runs per input")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_flag("--csv", csv, "Print input,min_s,avg_s,max_s,checksum rows");

  CLI11_PARSE(app, argc, argv);

  try {
    const std::size_t stack = aij::parse_size(stack_text);
    if (eval->parsed()) return cmd_eval(dump_path, function, args, stack);
    if (gen->parsed()) return cmd_gen(dump_path, roots, out_dir, class_name, package);
    return cmd_bench(dump_path, function, inputs, runs, csv, stack);
  } catch (const aij::Error& e) {
    std::cerr << "aij: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "aij: " << e.what() << "\n";
  }
  return 1;
}

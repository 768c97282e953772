#ifndef AIJ_ORACLE_HPP
#define AIJ_ORACLE_HPP

// Oracle tables for primitives. One case per line:
//
//   (<primitive> (<arg> ...) <expected>)  ; provenance
//
// Arguments and the expected value are written as data (no quote needed).
// Blank lines and lines starting with ';' are ignored.

#include <string>
#include <vector>

#include "aij/dump.hpp"

namespace aij {

struct OracleCase {
  Symbol primitive;
  std::vector<Value> args;
  Value expected;
  std::string provenance;
  std::size_t line = 0;
};

[[nodiscard]] inline std::vector<OracleCase> parse_oracle_cases(std::string_view text, ReadOptions options = {}) {
  std::vector<OracleCase> cases;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == ';') continue;

    const std::string where = "line " + std::to_string(line_no) + ": ";
    std::string provenance;
    Reader reader(line, options);
    auto datum = [&] {
      try {
        return reader.next();
      } catch (const Error& e) {
        fail(ErrorKind::parse, where + e.what());
      }
    }();
    const std::string_view rest = line.substr(reader.offset());
    if (const auto semi = rest.find(';'); semi != std::string_view::npos) {
      std::string_view note = rest.substr(semi + 1);
      const auto b = note.find_first_not_of(" \t");
      provenance = b == std::string_view::npos ? "" : std::string(note.substr(b));
    } else if (rest.find_first_not_of(" \t") != std::string_view::npos) {
      fail(ErrorKind::parse, where + "one case per line");
    }
    if (!datum) continue;

    std::vector<Value> fields;
    const Value* p = &*datum;
    for (; p->is_cons(); p = &get_cdr(*p)) fields.push_back(get_car(*p));
    if (!is_nil(*p) || fields.size() != 3 || !fields[0].is_symbol()) {
      fail(ErrorKind::parse, where + "expected (primitive (args...) expected)");
    }
    OracleCase c{Symbol(fields[0]), {}, fields[2], std::move(provenance), line_no};
    const Value* a = &fields[1];
    for (; a->is_cons(); a = &get_cdr(*a)) c.args.push_back(get_car(*a));
    if (!is_nil(*a)) fail(ErrorKind::parse, where + "arguments must be a list");
    cases.push_back(std::move(c));
  }
  return cases;
}

[[nodiscard]] inline std::vector<OracleCase> load_oracle_cases(const std::string& path, ReadOptions options = {}) {
  return parse_oracle_cases(read_file(path), std::move(options));
}

}  // namespace aij

#endif  // AIJ_ORACLE_HPP

#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eufui/parser.hpp"

#ifndef EUFUI_TEST_DATA_DIR
#error "EUFUI_TEST_DATA_DIR must be defined"
#endif

namespace eufui::testing {

inline std::string data_path(const std::string& name) { return std::string(EUFUI_TEST_DATA_DIR) + "/" + name; }

inline std::string read_data(const std::string& name) {
  std::ifstream in(data_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing test data " + name);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline Problem load(const std::string& name) { return parse_problem(read_data(name)); }

inline TermId build_term(TermTable& table, const SExpr& e) {
  if (!e.is_list) {
    auto s = table.find(e.atom);
    if (!s) throw std::runtime_error("unknown symbol " + e.atom);
    return table.constant(*s);
  }
  auto s = table.find(e.list.at(0).atom);
  if (!s) throw std::runtime_error("unknown symbol " + e.list.at(0).atom);
  std::vector<TermId> args;
  for (std::size_t i = 1; i < e.list.size(); ++i) args.push_back(build_term(table, e.list[i]));
  return table.intern(*s, args);
}

/// Term written in problem syntax over the symbols of `p`.
inline TermId term(Problem& p, const std::string& text) { return build_term(*p.table, read_sexprs(text).at(0)); }

inline Literal eq(Problem& p, const std::string& a, const std::string& b) {
  return normalize(*p.table, Literal{term(p, a), term(p, b), true});
}

inline Literal neq(Problem& p, const std::string& a, const std::string& b) {
  return normalize(*p.table, Literal{term(p, a), term(p, b), false});
}

}  // namespace eufui::testing

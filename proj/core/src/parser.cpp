#include "eufui/parser.hpp"

#include <algorithm>

#include <cctype>
#include <map>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "eufui/error.hpp"

namespace eufui {

namespace {

constexpr std::size_t kMaxDepth = 4096;

[[noreturn]] void fail(const SExpr& at, const std::string& message) {
  throw ParseError(message, at.line, at.column);
}

bool is_delimiter(char c) {
  return c == '(' || c == ')' || c == ';' || std::isspace(static_cast<unsigned char>(c)) != 0;
}

std::string describe(const SExpr& e) {
  if (!e.is_list) return "'" + e.atom + "'";
  if (!e.list.empty() && !e.list.front().is_list) return "'(" + e.list.front().atom + " ...)'";
  return "list";
}

const std::string& head_atom(const SExpr& e) {
  static const std::string empty;
  if (!e.is_list || e.list.empty() || e.list.front().is_list) return empty;
  return e.list.front().atom;
}

// Resolves terms against the symbol table, with let-bound names shadowing.
class TermReader {
 public:
  explicit TermReader(TermTable& table) : table_(table) {}

  std::vector<std::unordered_map<std::string, TermId>> scopes;

  TermId read(const SExpr& e, std::size_t depth = 0) {
    if (depth > kMaxDepth) fail(e, "nesting too deep");
    if (!e.is_list) {
      for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
        if (auto found = it->find(e.atom); found != it->end()) return found->second;
      }
      const SymbolId sym = lookup(e, e.atom);
      if (table_.symbol(sym).arity != 0) {
        fail(e, "arity mismatch: '" + e.atom + "' expects " + std::to_string(table_.symbol(sym).arity) +
                    " argument(s), got 0");
      }
      return table_.constant(sym);
    }
    if (e.list.empty()) fail(e, "empty term");
    const SExpr& head = e.list.front();
    if (head.is_list) fail(head, "expected a function symbol");
    const SymbolId sym = lookup(head, head.atom);
    const auto& symbol = table_.symbol(sym);
    const std::size_t given = e.list.size() - 1;
    if (symbol.arity != given) {
      fail(e, "arity mismatch: '" + head.atom + "' expects " + std::to_string(symbol.arity) +
                  " argument(s), got " + std::to_string(given));
    }
    std::vector<TermId> args;
    args.reserve(given);
    for (std::size_t i = 1; i < e.list.size(); ++i) args.push_back(read(e.list[i], depth + 1));
    return table_.intern(sym, args);
  }

 private:
  SymbolId lookup(const SExpr& at, const std::string& name) {
    auto sym = table_.find(name);
    if (!sym) fail(at, "undeclared symbol '" + name + "'");
    return *sym;
  }

  TermTable& table_;
};

void expect_size(const SExpr& cmd, std::size_t size, const char* usage) {
  if (cmd.list.size() != size) fail(cmd, std::string("malformed command, expected ") + usage);
}

const std::string& expect_atom(const SExpr& e, const char* what) {
  if (e.is_list) fail(e, std::string("expected ") + what);
  return e.atom;
}

// Equality or disequality literals of one assertion, `distinct` expanded
// pairwise.
std::vector<Literal> read_assertion(const SExpr& lit, TermReader& terms) {
  const std::string& head = head_atom(lit);
  if (head == "=") {
    if (lit.list.size() != 3) fail(lit, "'=' takes exactly two terms");
    return {Literal{terms.read(lit.list[1]), terms.read(lit.list[2]), true}};
  }
  if (head == "not") {
    if (lit.list.size() != 2 || head_atom(lit.list[1]) != "=") {
      fail(lit, "non-literal assertion: 'not' must wrap an equality");
    }
    const SExpr& eq = lit.list[1];
    if (eq.list.size() != 3) fail(eq, "'=' takes exactly two terms");
    return {Literal{terms.read(eq.list[1]), terms.read(eq.list[2]), false}};
  }
  if (head == "distinct") {
    if (lit.list.size() < 3) fail(lit, "'distinct' takes at least two terms");
    std::vector<TermId> ts;
    for (std::size_t i = 1; i < lit.list.size(); ++i) ts.push_back(terms.read(lit.list[i]));
    std::vector<Literal> out;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      for (std::size_t j = i + 1; j < ts.size(); ++j) out.push_back(Literal{ts[i], ts[j], false});
    }
    return out;
  }
  fail(lit, "non-literal assertion " + describe(lit));
}

struct Declaration {
  std::string name;
  std::uint32_t arity;
  const SExpr* at;
};

}  // namespace

std::vector<SExpr> read_sexprs(std::string_view text) {
  std::vector<SExpr> top;
  std::vector<SExpr> stack;
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  auto emit = [&](SExpr e) {
    if (stack.empty()) {
      top.push_back(std::move(e));
    } else {
      stack.back().list.push_back(std::move(e));
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      advance(1);
    } else if (c == ';') {
      while (i < text.size() && text[i] != '\n') advance(1);
    } else if (c == '(') {
      if (stack.size() >= kMaxDepth) throw ParseError("nesting too deep", line, column);
      SExpr e;
      e.is_list = true;
      e.line = line;
      e.column = column;
      stack.push_back(std::move(e));
      advance(1);
    } else if (c == ')') {
      if (stack.empty()) throw ParseError("unexpected ')'", line, column);
      SExpr e = std::move(stack.back());
      stack.pop_back();
      advance(1);
      emit(std::move(e));
    } else {
      SExpr e;
      e.line = line;
      e.column = column;
      std::size_t j = i;
      while (j < text.size() && !is_delimiter(text[j])) ++j;
      e.atom = std::string(text.substr(i, j - i));
      advance(j - i);
      emit(std::move(e));
    }
  }
  if (!stack.empty()) {
    throw ParseError("unbalanced '(' opened here", stack.back().line, stack.back().column);
  }
  return top;
}

Problem parse_problem(std::string_view text) {
  const std::vector<SExpr> commands = read_sexprs(text);

  std::optional<std::string> sort;
  std::vector<Declaration> declarations;
  std::map<std::string, const SExpr*> declared_at;
  std::vector<const SExpr*> eliminate;
  bool saw_eliminate = false;
  std::vector<const SExpr*> assertions;

  auto check_sort = [&](const SExpr& e) {
    const std::string& name = expect_atom(e, "a sort name");
    if (!sort || name != *sort) fail(e, "undeclared sort '" + name + "'");
  };
  auto declare = [&](const SExpr& name_expr, std::uint32_t arity) {
    const std::string& name = expect_atom(name_expr, "a symbol name");
    if (declared_at.contains(name)) fail(name_expr, "duplicate declaration of '" + name + "'");
    declared_at.emplace(name, &name_expr);
    declarations.push_back(Declaration{name, arity, &name_expr});
  };

  for (const SExpr& cmd : commands) {
    if (!cmd.is_list || cmd.list.empty() || cmd.list.front().is_list) {
      fail(cmd, "expected a command, got " + describe(cmd));
    }
    const std::string& name = cmd.list.front().atom;
    if (name == "compute-ui") break;
    if (name == "set-logic" || name == "set-info" || name == "set-option") continue;
    if (name == "declare-sort") {
      expect_size(cmd, 3, "(declare-sort NAME 0)");
      if (sort) fail(cmd, "only one sort may be declared");
      if (expect_atom(cmd.list[2], "sort arity") != "0") fail(cmd.list[2], "sort arity must be 0");
      sort = expect_atom(cmd.list[1], "a sort name");
    } else if (name == "declare-fun") {
      expect_size(cmd, 4, "(declare-fun NAME (SORT ...) SORT)");
      const SExpr& domain = cmd.list[2];
      if (!domain.is_list) fail(domain, "expected a list of argument sorts");
      for (const auto& s : domain.list) check_sort(s);
      check_sort(cmd.list[3]);
      declare(cmd.list[1], static_cast<std::uint32_t>(domain.list.size()));
    } else if (name == "declare-const") {
      expect_size(cmd, 3, "(declare-const NAME SORT)");
      check_sort(cmd.list[2]);
      declare(cmd.list[1], 0);
    } else if (name == "eliminate") {
      saw_eliminate = true;
      for (std::size_t i = 1; i < cmd.list.size(); ++i) eliminate.push_back(&cmd.list[i]);
    } else if (name == "assert") {
      expect_size(cmd, 2, "(assert LITERAL)");
      assertions.push_back(&cmd.list[1]);
    } else {
      fail(cmd, "unknown command '" + name + "'");
    }
  }
  if (!saw_eliminate) throw ParseError("missing (eliminate ...) command", 1, 1);

  std::unordered_map<std::string, std::uint32_t> rank;
  for (const SExpr* e : eliminate) {
    const std::string& name = expect_atom(*e, "a constant to eliminate");
    auto it = declared_at.find(name);
    if (it == declared_at.end()) fail(*e, "undeclared symbol '" + name + "'");
    if (rank.contains(name)) fail(*e, "'" + name + "' listed twice in eliminate");
    rank.emplace(name, static_cast<std::uint32_t>(rank.size()));
  }

  Problem problem;
  if (sort) problem.sort = *sort;
  TermTable& table = *problem.table;
  std::vector<std::pair<std::uint32_t, SymbolId>> quantified;
  for (const auto& d : declarations) {
    if (auto r = rank.find(d.name); r != rank.end()) {
      if (d.arity != 0) fail(*d.at, "cannot eliminate function symbol '" + d.name + "'");
      const SymbolId id = table.declare(d.name, 0, SymbolKind::Quantified, r->second);
      quantified.emplace_back(r->second, id);
    } else if (d.arity == 0) {
      problem.parameters.push_back(table.declare(d.name, 0, SymbolKind::Parameter));
    } else {
      problem.functions.push_back(table.declare(d.name, d.arity, SymbolKind::Function));
    }
  }
  std::sort(quantified.begin(), quantified.end());
  for (const auto& [r, id] : quantified) problem.eliminate.push_back(id);

  TermReader terms(table);
  for (const SExpr* a : assertions) {
    for (const auto& lit : read_assertion(*a, terms)) problem.body.literals.push_back(lit);
  }
  return problem;
}

namespace {

Formula read_formula(const SExpr& e, TermReader& terms, std::size_t depth) {
  if (depth > kMaxDepth) fail(e, "nesting too deep");
  if (!e.is_list) {
    if (e.atom == "true") return Formula::top();
    if (e.atom == "false") return Formula::bottom();
    fail(e, "expected a formula, got " + describe(e));
  }
  const std::string& head = head_atom(e);
  auto sub = [&](std::size_t i) { return read_formula(e.list[i], terms, depth + 1); };
  if (head == "and" || head == "or") {
    std::vector<Formula> parts;
    for (std::size_t i = 1; i < e.list.size(); ++i) parts.push_back(sub(i));
    return head == "and" ? Formula::conjunction(std::move(parts)) : Formula::disjunction(std::move(parts));
  }
  if (head == "not") {
    if (e.list.size() != 2) fail(e, "'not' takes one argument");
    return Formula::negation(sub(1));
  }
  if (head == "=>") {
    if (e.list.size() < 3) fail(e, "'=>' takes at least two arguments");
    Formula result = sub(e.list.size() - 1);
    for (std::size_t i = e.list.size() - 1; i-- > 1;) result = Formula::implication(sub(i), std::move(result));
    return result;
  }
  if (head == "=" || head == "distinct") {
    std::vector<Formula> parts;
    for (const auto& lit : read_assertion(e, terms)) parts.push_back(Formula::atom(lit));
    return Formula::conjunction(std::move(parts));
  }
  if (head == "let") {
    if (e.list.size() != 3 || !e.list[1].is_list) fail(e, "malformed let");
    std::unordered_map<std::string, TermId> bindings;
    for (const auto& b : e.list[1].list) {
      if (!b.is_list || b.list.size() != 2) fail(b, "malformed let binding");
      const std::string& name = expect_atom(b.list[0], "a binding name");
      if (bindings.contains(name)) fail(b, "duplicate let binding '" + name + "'");
      bindings.emplace(name, terms.read(b.list[1], depth + 1));
    }
    terms.scopes.push_back(std::move(bindings));
    Formula body = sub(2);
    terms.scopes.pop_back();
    return body;
  }
  fail(e, "unknown connective " + describe(e));
}

}  // namespace

Formula parse_formula(std::string_view text, Problem& problem) {
  const auto exprs = read_sexprs(text);
  if (exprs.size() != 1) throw ParseError("expected exactly one formula", 1, 1);
  TermReader terms(*problem.table);
  return read_formula(exprs.front(), terms, 0);
}

}  // namespace eufui

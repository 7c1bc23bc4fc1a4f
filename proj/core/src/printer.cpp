#include "eufui/printer.hpp"

#include <cctype>
#include <unordered_map>
#include <unordered_set>

#include "eufui/error.hpp"

namespace eufui {

namespace {

constexpr std::uint64_t kMaxUnravelledNodes = 50'000'000;

// Subterm sharing for compressed output. Closed compound terms reachable
// through two or more edges get a let-bound name.
class SharedTerms {
 public:
  SharedTerms(const TermTable& table, const Formula& f) : table_(table) {
    collect_bound(f);
    count(f);
    std::unordered_set<TermId> visited;
    for (auto root : roots_) order(root, visited);
  }

  const std::vector<TermId>& ordered() const { return ordered_; }

 private:
  void collect_bound(const Formula& f) {
    if (f.kind() == FormulaKind::Let) bound_.insert(f.bound_var());
    for (const auto& c : f.children()) collect_bound(c);
  }

  bool closed(TermId t) {
    if (auto it = closed_.find(t); it != closed_.end()) return it->second;
    bool result = true;
    if (table_.is_constant(t)) {
      result = !bound_.contains(table_.head(t));
    } else {
      for (auto a : table_.args(t)) result = closed(a) && result;
    }
    closed_.emplace(t, result);
    return result;
  }

  void visit(TermId t) {
    if (table_.is_constant(t)) return;
    if (++uses_[t] > 1) return;
    roots_.push_back(t);
    for (auto a : table_.args(t)) visit(a);
  }

  void count(const Formula& f) {
    if (f.kind() == FormulaKind::Atom) {
      visit(f.literal().lhs);
      visit(f.literal().rhs);
    } else if (f.kind() == FormulaKind::Let) {
      visit(f.bound_value());
    }
    for (const auto& c : f.children()) count(c);
  }

  void order(TermId t, std::unordered_set<TermId>& visited) {
    if (table_.is_constant(t) || !visited.insert(t).second) return;
    for (auto a : table_.args(t)) order(a, visited);
    if (uses_[t] >= 2 && table_.tree_size(t) >= 4 && closed(t)) ordered_.push_back(t);
  }

  const TermTable& table_;
  std::unordered_set<SymbolId> bound_;
  std::unordered_map<TermId, bool> closed_;
  std::unordered_map<TermId, std::size_t> uses_;
  std::vector<TermId> roots_;
  std::vector<TermId> ordered_;
};

class Printer {
 public:
  explicit Printer(const TermTable& table) : table_(table) {}

  std::unordered_map<TermId, std::string> names;

  void term(TermId t, std::string& out) const {
    if (auto it = names.find(t); it != names.end()) {
      out += it->second;
      return;
    }
    const auto args = table_.args(t);
    if (args.empty()) {
      out += table_.head_symbol(t).name;
      return;
    }
    out += '(';
    out += table_.head_symbol(t).name;
    for (auto a : args) {
      out += ' ';
      term(a, out);
    }
    out += ')';
  }

  void formula(const Formula& f, std::string& out, bool top_level) const {
    switch (f.kind()) {
      case FormulaKind::True:
        out += "true";
        return;
      case FormulaKind::False:
        out += "false";
        return;
      case FormulaKind::Atom: {
        const Literal& lit = f.literal();
        if (!lit.positive) out += "(not ";
        out += "(= ";
        term(lit.lhs, out);
        out += ' ';
        term(lit.rhs, out);
        out += ')';
        if (!lit.positive) out += ')';
        return;
      }
      case FormulaKind::Not:
        out += "(not ";
        formula(f.children()[0], out, false);
        out += ')';
        return;
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::Implies: {
        out += f.kind() == FormulaKind::And ? "(and" : f.kind() == FormulaKind::Or ? "(or" : "(=>";
        for (const auto& c : f.children()) {
          out += top_level ? "\n  " : " ";
          formula(c, out, false);
        }
        out += ')';
        return;
      }
      case FormulaKind::Let: {
        out += "(let ((";
        out += table_.symbol(f.bound_var()).name;
        out += ' ';
        term(f.bound_value(), out);
        out += ")) ";
        formula(f.children()[0], out, top_level);
        out += ')';
        return;
      }
    }
  }

 private:
  const TermTable& table_;
};

std::uint64_t unravelled_nodes(const TermTable& table, const Formula& f) {
  std::uint64_t total = 1;
  if (f.kind() == FormulaKind::Atom) total += table.tree_size(f.literal().lhs) + table.tree_size(f.literal().rhs);
  for (const auto& c : f.children()) {
    total += unravelled_nodes(table, c);
    if (total > kMaxUnravelledNodes) return total;
  }
  return total;
}

}  // namespace

std::string print_formula(TermTable& table, const Formula& f, PrintMode mode) {
  Printer printer(table);
  std::string out;
  if (mode == PrintMode::Unravelled) {
    const Formula plain = unravel(table, f);
    if (unravelled_nodes(table, plain) > kMaxUnravelledNodes) {
      throw Error("unravelled formula exceeds " + std::to_string(kMaxUnravelledNodes) + " nodes");
    }
    printer.formula(plain, out, true);
    return out;
  }

  SharedTerms shared(table, f);
  std::string suffix;
  std::uint32_t next = 1;
  for (auto t : shared.ordered()) {
    std::string name;
    do {
      name = "t!" + std::to_string(next++);
    } while (table.find(name));
    out += "(let ((" + name + " ";
    printer.term(t, out);
    out += ")) ";
    suffix += ')';
    printer.names.emplace(t, std::move(name));
  }
  printer.formula(f, out, shared.ordered().empty());
  out += suffix;
  return out;
}

std::string print_ui(TermTable& table, const UiResult& ui, PrintMode mode) {
  return print_formula(table, ui.formula, mode);
}

std::size_t token_count(std::string_view text) {
  std::size_t tokens = 0;
  bool in_token = false;
  for (char c : text) {
    const bool delimiter = c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!delimiter && !in_token) ++tokens;
    in_token = !delimiter;
  }
  return tokens;
}

}  // namespace eufui

#include "eufui/formula.hpp"

#include "eufui/error.hpp"

namespace eufui {

namespace {
std::shared_ptr<const FormulaNode> make(FormulaKind kind) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = kind;
  return n;
}

const std::shared_ptr<const FormulaNode>& true_node() {
  static const auto node = make(FormulaKind::True);
  return node;
}

const std::shared_ptr<const FormulaNode>& false_node() {
  static const auto node = make(FormulaKind::False);
  return node;
}
}  // namespace

Formula::Formula() : node_(true_node()) {}

Formula Formula::top() { return Formula(true_node()); }
Formula Formula::bottom() { return Formula(false_node()); }

Formula Formula::atom(const Literal& lit) {
  if (lit.lhs == lit.rhs) return lit.positive ? top() : bottom();
  auto n = std::make_shared<FormulaNode>();
  n->kind = FormulaKind::Atom;
  n->literal = lit;
  return Formula(std::move(n));
}

Formula Formula::negation(Formula f) {
  switch (f.kind()) {
    case FormulaKind::True:
      return bottom();
    case FormulaKind::False:
      return top();
    case FormulaKind::Not:
      return f.children()[0];
    default:
      break;
  }
  auto n = std::make_shared<FormulaNode>();
  n->kind = FormulaKind::Not;
  n->children.push_back(std::move(f));
  return Formula(std::move(n));
}

Formula Formula::conjunction(std::vector<Formula> parts) {
  std::vector<Formula> kept;
  kept.reserve(parts.size());
  for (auto& p : parts) {
    if (p.is_false()) return bottom();
    if (p.is_true()) continue;
    if (p.kind() == FormulaKind::And) {
      for (const auto& c : p.children()) kept.push_back(c);
    } else {
      kept.push_back(std::move(p));
    }
  }
  if (kept.empty()) return top();
  if (kept.size() == 1) return kept.front();
  auto n = std::make_shared<FormulaNode>();
  n->kind = FormulaKind::And;
  n->children = std::move(kept);
  return Formula(std::move(n));
}

Formula Formula::disjunction(std::vector<Formula> parts) {
  std::vector<Formula> kept;
  kept.reserve(parts.size());
  for (auto& p : parts) {
    if (p.is_true()) return top();
    if (p.is_false()) continue;
    if (p.kind() == FormulaKind::Or) {
      for (const auto& c : p.children()) kept.push_back(c);
    } else {
      kept.push_back(std::move(p));
    }
  }
  if (kept.empty()) return bottom();
  if (kept.size() == 1) return kept.front();
  auto n = std::make_shared<FormulaNode>();
  n->kind = FormulaKind::Or;
  n->children = std::move(kept);
  return Formula(std::move(n));
}

Formula Formula::implication(Formula antecedent, Formula consequent) {
  if (antecedent.is_true()) return consequent;
  if (antecedent.is_false() || consequent.is_true()) return top();
  if (consequent.is_false()) return negation(std::move(antecedent));
  auto n = std::make_shared<FormulaNode>();
  n->kind = FormulaKind::Implies;
  n->children.push_back(std::move(antecedent));
  n->children.push_back(std::move(consequent));
  return Formula(std::move(n));
}

Formula Formula::let(SymbolId var, TermId value, Formula body) {
  if (body.is_true() || body.is_false()) return body;
  auto n = std::make_shared<FormulaNode>();
  n->kind = FormulaKind::Let;
  n->var = var;
  n->value = value;
  n->children.push_back(std::move(body));
  return Formula(std::move(n));
}

Formula Formula::from(const Constraint& c) {
  if (c.falsified) return bottom();
  return from(std::span<const Literal>(c.literals));
}

Formula Formula::from(std::span<const Literal> literals) {
  std::vector<Formula> parts;
  parts.reserve(literals.size());
  for (const auto& l : literals) parts.push_back(atom(l));
  return conjunction(std::move(parts));
}

FormulaKind Formula::kind() const { return node_->kind; }

const Literal& Formula::literal() const {
  if (node_->kind != FormulaKind::Atom) throw Error("formula is not an atom");
  return node_->literal;
}

std::span<const Formula> Formula::children() const { return node_->children; }
SymbolId Formula::bound_var() const { return node_->var; }
TermId Formula::bound_value() const { return node_->value; }

Formula substitute(TermTable& table, const Formula& f, Substitution& sigma) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
      return f;
    case FormulaKind::Atom: {
      return Formula::atom(sigma.apply(f.literal()));
    }
    case FormulaKind::Not:
      return Formula::negation(substitute(table, f.children()[0], sigma));
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> parts;
      parts.reserve(f.children().size());
      for (const auto& c : f.children()) parts.push_back(substitute(table, c, sigma));
      return f.kind() == FormulaKind::And ? Formula::conjunction(std::move(parts))
                                          : Formula::disjunction(std::move(parts));
    }
    case FormulaKind::Implies:
      return Formula::implication(substitute(table, f.children()[0], sigma),
                                  substitute(table, f.children()[1], sigma));
    case FormulaKind::Let: {
      Substitution inner = sigma;
      inner.bind(f.bound_var(), sigma.apply(f.bound_value()));
      return substitute(table, f.children()[0], inner);
    }
  }
  return f;
}

Formula unravel(TermTable& table, const Formula& f) {
  if (!contains_let(f)) return f;
  Substitution sigma(table);
  return substitute(table, f, sigma);
}

void collect_literals(const Formula& f, std::vector<Literal>& out) {
  if (f.kind() == FormulaKind::Atom) {
    out.push_back(f.literal());
    return;
  }
  if (f.kind() == FormulaKind::Let) throw Error("collect_literals needs a let-free formula");
  for (const auto& c : f.children()) collect_literals(c, out);
}

bool contains_let(const Formula& f) {
  if (f.kind() == FormulaKind::Let) return true;
  for (const auto& c : f.children()) {
    if (contains_let(c)) return true;
  }
  return false;
}

}  // namespace eufui

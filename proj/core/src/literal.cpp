#include "eufui/literal.hpp"

#include <algorithm>
#include <unordered_set>

#include "eufui/error.hpp"

namespace eufui {

FlatShape shape_of(const TermTable& table, const Literal& lit) {
  const bool lc = table.is_constant(lit.lhs);
  const bool rc = table.is_constant(lit.rhs);
  if (lc && rc) return lit.positive ? FlatShape::VarEq : FlatShape::Diseq;
  if (!lit.positive) return FlatShape::General;
  const TermId app = lc ? lit.rhs : lit.lhs;
  const TermId other = lc ? lit.lhs : lit.rhs;
  if (!table.is_constant(other)) return FlatShape::General;
  for (auto a : table.args(app)) {
    if (!table.is_constant(a)) return FlatShape::General;
  }
  return FlatShape::FunEq;
}

Literal normalize(const TermTable& table, Literal lit) {
  const bool lc = table.is_constant(lit.lhs);
  const bool rc = table.is_constant(lit.rhs);
  bool swap = false;
  if (lc && rc) {
    swap = table.symbol_greater(table.head(lit.rhs), table.head(lit.lhs));
  } else if (lc != rc) {
    swap = lc;
  } else {
    swap = lit.rhs.value > lit.lhs.value;
  }
  if (swap) std::swap(lit.lhs, lit.rhs);
  return lit;
}

bool mentions_quantified(const TermTable& table, const Literal& lit) {
  return table.mentions_quantified(lit.lhs) || table.mentions_quantified(lit.rhs);
}

bool is_trivial_identity(const Literal& lit) { return lit.lhs == lit.rhs; }

std::string to_string(const TermTable& table, const Literal& lit) {
  return to_string(table, lit.lhs) + (lit.positive ? " = " : " != ") + to_string(table, lit.rhs);
}

void DagDefinition::add(const TermTable& table, SymbolId var, TermId body) {
  if (table.symbol(var).arity != 0) throw Error("DAG variable must be 0-ary");
  if (index_.contains(var)) throw Error("variable '" + table.symbol(var).name + "' defined twice");
  index_.emplace(var, entries_.size());
  entries_.push_back(DagEntry{var, body});
}

std::optional<TermId> DagDefinition::lookup(SymbolId var) const {
  auto it = index_.find(var);
  if (it == index_.end()) return std::nullopt;
  return entries_[it->second].body;
}

DagDefinition DagDefinition::suffix(std::size_t first) const {
  DagDefinition out;
  for (std::size_t i = first; i < entries_.size(); ++i) {
    out.index_.emplace(entries_[i].var, out.entries_.size());
    out.entries_.push_back(entries_[i]);
  }
  return out;
}

void Substitution::bind(SymbolId var, TermId value) {
  map_[var] = value;
  memo_.clear();
}

TermId Substitution::apply(TermId t) {
  if (map_.empty()) return t;
  if (auto it = memo_.find(t); it != memo_.end()) return it->second;
  TermId result = t;
  const auto args = table_->args(t);
  if (args.empty()) {
    if (auto it = map_.find(table_->head(t)); it != map_.end()) result = it->second;
  } else {
    std::vector<TermId> mapped;
    mapped.reserve(args.size());
    bool changed = false;
    for (auto a : args) {
      mapped.push_back(apply(a));
      changed = changed || mapped.back() != a;
    }
    if (changed) result = table_->intern(table_->head(t), mapped);
  }
  memo_.emplace(t, result);
  return result;
}

namespace {

void check_no_defined(const TermTable& table, TermId t, std::unordered_set<TermId>& seen) {
  if (!seen.insert(t).second) return;
  const auto args = table.args(t);
  if (args.empty() && table.head_symbol(t).kind == SymbolKind::Defined) {
    throw Error("defined variable '" + table.head_symbol(t).name + "' has no DAG entry");
  }
  for (auto a : args) check_no_defined(table, a, seen);
}

Substitution expansion(TermTable& table, const DagDefinition& delta) {
  Substitution sigma(table);
  for (const auto& entry : delta.entries()) sigma.bind(entry.var, sigma.apply(entry.body));
  return sigma;
}

}  // namespace

TermId sigma_delta_apply(TermTable& table, const DagDefinition& delta, TermId t) {
  Substitution sigma = expansion(table, delta);
  const TermId result = sigma.apply(t);
  std::unordered_set<TermId> seen;
  check_no_defined(table, result, seen);
  return result;
}

Constraint unravel(TermTable& table, const DagDefinition& delta, const Constraint& phi) {
  Constraint out;
  out.falsified = phi.falsified;
  if (phi.falsified) return out;
  Substitution sigma = expansion(table, delta);
  std::unordered_set<TermId> seen;
  for (const auto& lit : phi.literals) {
    Literal mapped = sigma.apply(lit);
    check_no_defined(table, mapped.lhs, seen);
    check_no_defined(table, mapped.rhs, seen);
    out.literals.push_back(mapped);
  }
  return out;
}

std::optional<std::vector<Literal>> compatible(const TermTable& table, TermId t, TermId u,
                                               const std::function<bool(TermId)>& efree) {
  if (table.head(t) != table.head(u)) return std::nullopt;
  const auto ta = table.args(t);
  const auto ua = table.args(u);
  std::vector<Literal> diff;
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (ta[i] == ua[i]) continue;
    if (!efree(ta[i]) || !efree(ua[i])) return std::nullopt;
    Literal d = normalize(table, Literal{ta[i], ua[i], false});
    if (std::find(diff.begin(), diff.end(), d) == diff.end()) diff.push_back(d);
  }
  return diff;
}

std::optional<std::vector<Literal>> compatible(const TermTable& table, TermId t, TermId u) {
  return compatible(table, t, u, [&](TermId x) { return !table.mentions_quantified(x); });
}

}  // namespace eufui

#include <algorithm>
#include <set>
#include <unordered_map>

#include "eufui/conditional.hpp"
#include "eufui/euf_check.hpp"
#include "eufui/printer.hpp"

namespace eufui {

namespace {

void quantified_leaves(const TermTable& table, TermId t, std::set<SymbolId>& out) {
  if (!table.mentions_quantified(t)) return;
  if (table.is_constant(t)) {
    out.insert(table.head(t));
    return;
  }
  for (auto a : table.args(t)) quantified_leaves(table, a, out);
}

std::set<SymbolId> clause_vars(const TermTable& table, const HornClause& c) {
  std::set<SymbolId> out;
  for (const auto& a : c.antecedent) {
    quantified_leaves(table, a.lhs, out);
    quantified_leaves(table, a.rhs, out);
  }
  if (c.consequent) {
    quantified_leaves(table, c.consequent->lhs, out);
    quantified_leaves(table, c.consequent->rhs, out);
  }
  return out;
}

struct Candidate {
  TermId value;
  std::size_t clause;
  std::vector<SymbolId> deps;
};

class CdagEnumerator {
 public:
  CdagEnumerator(const TermTable& table, const ClauseSet& s3, const std::vector<SymbolId>& evars,
                 const Limits& limits)
      : table_(table), evars_(evars), limits_(limits) {
    for (std::size_t i = 0; i < evars.size(); ++i) position_.emplace(evars[i], i);
    candidates_.resize(evars.size());
    const auto& clauses = s3.clauses();
    for (std::size_t k = 0; k < clauses.size(); ++k) {
      const HornClause& c = clauses[k];
      if (!c.consequent || !c.consequent->positive) continue;
      const Literal& l = *c.consequent;
      if (table.is_constant(l.lhs)) {
        consider(c, k, l.lhs, l.rhs);
        consider(c, k, l.rhs, l.lhs);
      } else {
        consider(c, k, l.rhs, l.lhs);
      }
    }
  }

  std::vector<ConditionalDag> run() {
    dfs();
    return std::move(out_);
  }

 private:
  void consider(const HornClause& c, std::size_t k, TermId var, TermId value) {
    if (!table_.is_quantified(var)) return;
    const SymbolId v = table_.head(var);
    auto pos = position_.find(v);
    if (pos == position_.end()) return;
    std::set<SymbolId> deps;
    for (const auto& a : c.antecedent) {
      quantified_leaves(table_, a.lhs, deps);
      quantified_leaves(table_, a.rhs, deps);
    }
    quantified_leaves(table_, value, deps);
    if (deps.contains(v)) return;
    for (auto d : deps) {
      if (!position_.contains(d)) return;
    }
    candidates_[pos->second].push_back(Candidate{value, k, {deps.begin(), deps.end()}});
  }

  void dfs() {
    if (out_.size() >= limits_.max_cdags) {
      throw LimitExceeded(LimitKind::ConditionalDags,
                          "more than " + std::to_string(limits_.max_cdags) + " conditional DAGs",
                          "num_cdags=" + std::to_string(out_.size()));
    }
    if ((out_.size() & 0x3ff) == 0) limits_.check_time();
    out_.push_back(current_);
    for (std::size_t vi = 0; vi < evars_.size(); ++vi) {
      const SymbolId v = evars_[vi];
      if (placed_.contains(v)) continue;
      for (const auto& cand : candidates_[vi]) {
        if (!admissible(vi, cand)) continue;
        current_.entries.push_back(ConditionalDag::Entry{v, cand.value, cand.clause});
        placed_.emplace(v, current_.entries.size() - 1);
        dfs();
        placed_.erase(v);
        current_.entries.pop_back();
      }
    }
  }

  // Dependencies are defined, and v could not have been placed before a
  // larger variable (one canonical order per set of definitions).
  bool admissible(std::size_t vi, const Candidate& cand) const {
    std::size_t earliest = 0;
    for (auto d : cand.deps) {
      auto it = placed_.find(d);
      if (it == placed_.end()) return false;
      earliest = std::max(earliest, it->second + 1);
    }
    for (std::size_t i = earliest; i < current_.entries.size(); ++i) {
      if (position_.at(current_.entries[i].var) > vi) return false;
    }
    return true;
  }

  const TermTable& table_;
  const std::vector<SymbolId>& evars_;
  const Limits& limits_;
  std::unordered_map<SymbolId, std::size_t> position_;
  std::vector<std::vector<Candidate>> candidates_;
  ConditionalDag current_;
  std::unordered_map<SymbolId, std::size_t> placed_;
  std::vector<ConditionalDag> out_;
};

}  // namespace

std::vector<ConditionalDag> enumerate_cdags(const TermTable& table, const ClauseSet& s3,
                                            const std::vector<SymbolId>& evars, const Limits& limits) {
  return CdagEnumerator(table, s3, evars, limits).run();
}

PhiDelta phi_delta(TermTable& table, const ConditionalDag& delta, const ClauseSet& s3, Prune prune,
                   const Limits& limits) {
  const auto& clauses = s3.clauses();
  std::set<SymbolId> w;
  for (const auto& e : delta.entries) w.insert(e.var);

  Substitution sigma(table);
  std::set<Literal> guards;
  for (const auto& e : delta.entries) {
    for (const auto& a : clauses[e.clause].antecedent) guards.insert(normalize(table, sigma.apply(a)));
    sigma.bind(e.var, sigma.apply(e.value));
  }

  PhiDelta out;
  std::vector<Formula> core;
  for (std::size_t k = 0; k < clauses.size(); ++k) {
    const HornClause& c = clauses[k];
    const auto vars = clause_vars(table, c);
    if (!std::includes(w.begin(), w.end(), vars.begin(), vars.end())) continue;
    if (prune != Prune::None && c.consequent) {
      const Literal cons = normalize(table, sigma.apply(*c.consequent));
      if (cons.lhs == cons.rhs || guards.contains(cons)) continue;
      const bool in_antecedent = std::any_of(c.antecedent.begin(), c.antecedent.end(), [&](const Literal& a) {
        return normalize(table, sigma.apply(a)) == cons;
      });
      if (in_antecedent) continue;
    }
    out.core.push_back(k);
    core.push_back(to_formula(c));
  }

  Formula f = Formula::conjunction(std::move(core));
  for (auto it = delta.entries.rbegin(); it != delta.entries.rend(); ++it) {
    f = Formula::implication(Formula::from(clauses[it->clause].antecedent), Formula::let(it->var, it->value, f));
  }
  out.formula = f;
  out.trivial = out.core.empty();
  if (!out.trivial && prune == Prune::Semantic) {
    out.trivial = euf_valid(table, Formula::top(), f, limits).valid;
  }
  return out;
}

ConditionalResult conditional_ui(TermTable& table, const PreprocessedInput& pre, const ConditionalOptions& options) {
  ConditionalResult result;
  if (pre.falsified()) {
    result.ui = Formula::bottom();
    return result;
  }
  result.s2 = step1(table, pre.s1);
  result.s3 = step2(table, result.s2, options.limits, options.order);
  result.stats.s2_size = result.s2.size();
  result.stats.s3_size = result.s3.size();

  const auto cdags = enumerate_cdags(table, result.s3, pre.evars, options.limits);
  result.stats.num_cdags = cdags.size();

  std::set<std::string> printed;
  std::vector<Formula> parts{Formula::from(pre.passthrough)};
  for (const auto& delta : cdags) {
    options.limits.check_time();
    PhiDelta phi = phi_delta(table, delta, result.s3, options.prune, options.limits);
    if (phi.trivial) continue;
    ++result.stats.nontrivial_cdags;
    if (!printed.insert(print_formula(table, phi.formula, PrintMode::Compressed)).second) continue;
    parts.push_back(phi.formula);
    result.cdags.push_back(delta);
    result.phis.push_back(std::move(phi));
  }

  Formula ui = Formula::conjunction(std::move(parts));
  const auto& entries = pre.initial_dag.entries();
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) ui = Formula::let(it->var, it->body, ui);
  result.ui = ui;
  return result;
}

}  // namespace eufui

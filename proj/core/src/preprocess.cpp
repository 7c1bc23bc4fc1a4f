#include "eufui/preprocess.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <utility>

#include "eufui/euf_check.hpp"

namespace eufui {

namespace {

// Finds a positive literal that solves a quantified constant: e = t with t
// free of quantified symbols, or e = e' (the larger of the two is solved).
std::optional<std::pair<std::size_t, std::pair<SymbolId, TermId>>> find_solvable(const TermTable& table,
                                                                                 const std::vector<Literal>& lits) {
  for (std::size_t i = 0; i < lits.size(); ++i) {
    const Literal& l = lits[i];
    if (!l.positive || l.lhs == l.rhs) continue;
    const bool lq = table.is_quantified(l.lhs);
    const bool rq = table.is_quantified(l.rhs);
    if (lq && rq) {
      const SymbolId a = table.head(l.lhs);
      const SymbolId b = table.head(l.rhs);
      return table.symbol_greater(a, b) ? std::make_pair(i, std::make_pair(a, l.rhs))
                                        : std::make_pair(i, std::make_pair(b, l.lhs));
    }
    if (lq && !table.mentions_quantified(l.rhs)) return std::make_pair(i, std::make_pair(table.head(l.lhs), l.rhs));
    if (rq && !table.mentions_quantified(l.lhs)) return std::make_pair(i, std::make_pair(table.head(l.rhs), l.lhs));
  }
  return std::nullopt;
}

class Flattener {
 public:
  Flattener(Problem& problem, PreprocessedInput& out) : table_(*problem.table), out_(out) {
    next_rank_ = static_cast<std::uint32_t>(problem.eliminate.size());
  }

  void literal(const Literal& lit) {
    TermTable& t = table_;
    if (!lit.positive) {
      add(Literal{abstract(lit.lhs), abstract(lit.rhs), false});
      return;
    }
    TermId lhs = lit.lhs;
    TermId rhs = lit.rhs;
    if (t.is_constant(lhs) && !t.is_constant(rhs)) std::swap(lhs, rhs);
    if (!t.is_constant(rhs)) {
      const bool lq = t.mentions_quantified(lhs);
      const bool rq = t.mentions_quantified(rhs);
      if (lq && !rq) {
        rhs = abstract(rhs);
      } else if (!lq && rq) {
        lhs = std::exchange(rhs, abstract(lhs));
      } else {
        const TermId left = abstract(lhs);
        lhs = rhs;
        rhs = left;
      }
    }
    if (t.is_constant(lhs)) {
      add(Literal{lhs, rhs, true});
      return;
    }
    add(Literal{flat_application(lhs), rhs, true});
  }

 private:
  TermId flat_application(TermId app) {
    std::vector<TermId> args;
    for (auto a : table_.args(app)) args.push_back(abstract(a));
    return table_.intern(table_.head(app), args);
  }

  TermId abstract(TermId term) {
    if (table_.is_constant(term)) return term;
    if (auto it = memo_.find(term); it != memo_.end()) return it->second;
    const TermId flat = flat_application(term);
    TermId var;
    if (table_.mentions_quantified(term)) {
      const std::uint32_t rank = next_rank_++;
      const SymbolId e = table_.fresh("e", SymbolKind::Quantified, rank, rank);
      var = table_.constant(e);
      out_.evars.push_back(e);
      out_.renaming.emplace_back(e, term);
      add(Literal{flat, var, true});
    } else {
      const SymbolId y = table_.defined_var(static_cast<std::uint32_t>(out_.initial_dag.size() + 1));
      out_.initial_dag.add(table_, y, flat);
      var = table_.constant(y);
    }
    memo_.emplace(term, var);
    return var;
  }

  void add(const Literal& lit) {
    const Literal n = normalize(table_, lit);
    if (seen_.insert(n).second) out_.s1.push_back(n);
  }

  TermTable& table_;
  PreprocessedInput& out_;
  std::uint32_t next_rank_;
  std::unordered_map<TermId, TermId> memo_;
  std::set<Literal> seen_;
};

}  // namespace

PreprocessedInput flatten(Problem& problem) {
  TermTable& table = *problem.table;
  PreprocessedInput out;
  if (problem.body.falsified) {
    out.passthrough.falsified = true;
    return out;
  }

  std::vector<Literal> lits = problem.body.literals;
  std::set<SymbolId> solved;
  while (auto found = find_solvable(table, lits)) {
    const auto [index, binding] = *found;
    lits.erase(lits.begin() + static_cast<std::ptrdiff_t>(index));
    Substitution sigma(table);
    sigma.bind(binding.first, binding.second);
    for (auto& l : lits) l = sigma.apply(l);
    for (auto& r : out.replaced) r.second = sigma.apply(r.second);
    out.replaced.push_back(binding);
    solved.insert(binding.first);
  }

  for (auto e : problem.eliminate) {
    if (!solved.contains(e)) out.evars.push_back(e);
  }

  std::vector<Literal> remaining;
  std::set<Literal> seen_passthrough;
  for (const auto& l : lits) {
    if (l.lhs == l.rhs) {
      if (!l.positive) {
        out.passthrough.falsified = true;
        return out;
      }
      continue;
    }
    if (mentions_quantified(table, l)) {
      remaining.push_back(l);
    } else if (seen_passthrough.insert(l).second) {
      out.passthrough.literals.push_back(l);
    }
  }

  Flattener flattener(problem, out);
  for (const auto& l : remaining) flattener.literal(l);
  std::sort(out.evars.begin(), out.evars.end(), [&](SymbolId a, SymbolId b) {
    return table.symbol(a).rank < table.symbol(b).rank;
  });
  return out;
}

bool replay_check(const PreprocessedInput& pre, Problem& problem, const Limits& limits) {
  TermTable& table = *problem.table;
  const Formula body = Formula::from(problem.body);
  if (pre.falsified()) {
    if (problem.body.falsified) return true;
    return cc_sat(table, problem.body.literals) == SatResult::Unsat;
  }

  Substitution sigma(table);
  for (const auto& [e, t] : pre.renaming) sigma.bind(e, t);
  for (const auto& entry : pre.initial_dag.entries()) {
    sigma.bind(entry.var, sigma_delta_apply(table, pre.initial_dag, table.constant(entry.var)));
  }
  std::vector<Literal> image = pre.passthrough.literals;
  for (const auto& l : pre.s1) image.push_back(sigma.apply(l));
  const Formula flat = Formula::from(image);

  std::vector<Literal> raw = pre.passthrough.literals;
  raw.insert(raw.end(), pre.s1.begin(), pre.s1.end());
  for (const auto& entry : pre.initial_dag.entries()) raw.push_back(Literal{table.constant(entry.var), entry.body, true});
  for (const auto& [e, t] : pre.replaced) raw.push_back(Literal{table.constant(e), t, true});
  const Formula back = Formula::from(raw);

  return euf_valid(table, body, flat, limits).valid && euf_valid(table, back, body, limits).valid;
}

}  // namespace eufui

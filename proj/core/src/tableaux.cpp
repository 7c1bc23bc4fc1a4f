#include "eufui/tableaux.hpp"

#include <algorithm>
#include <condition_variable>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

namespace eufui {

namespace {

bool efree(const TermTable& table, TermId t) { return !table.mentions_quantified(t); }

bool is_application_eq(const TermTable& table, const Literal& l) {
  return l.positive && !table.is_constant(l.lhs);
}

// Visiting order of psi positions for a strategy.
std::vector<std::size_t> scan_order(std::size_t n, Strategy strategy) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = strategy == Strategy::Default ? i : n - 1 - i;
  return order;
}

void add_to_phi(const TermTable& table, Constraint& phi, const Literal& lit) {
  const Literal n = normalize(table, lit);
  if (std::find(phi.literals.begin(), phi.literals.end(), n) == phi.literals.end()) phi.literals.push_back(n);
}

bool phi_contains(const Constraint& phi, const Literal& lit) {
  return std::find(phi.literals.begin(), phi.literals.end(), lit) != phi.literals.end();
}

void rename(TermTable& table, std::vector<Literal>& psi, SymbolId from, TermId to) {
  Substitution sigma(table);
  sigma.bind(from, to);
  for (auto& l : psi) l = normalize(table, sigma.apply(l));
}

StepResult single(Rule rule, TableauxState next) {
  StepResult r;
  r.rule = rule;
  r.successors.push_back(std::move(next));
  return r;
}

std::optional<StepResult> rule_trivial(const TableauxState& s, const std::vector<std::size_t>& order) {
  for (auto i : order) {
    const Literal& l = s.psi[i];
    if (l.lhs != l.rhs) continue;
    TableauxState next = s;
    if (l.positive) {
      next.psi.erase(next.psi.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      next.psi.clear();
      next.phi.literals.clear();
      next.phi.falsified = true;
    }
    return single(Rule::Trivial, std::move(next));
  }
  return std::nullopt;
}

std::optional<StepResult> rule_merge_applications(TermTable& table, const TableauxState& s,
                                                  const std::vector<std::size_t>& order) {
  for (std::size_t a = 0; a < order.size(); ++a) {
    const std::size_t i = order[a];
    if (!is_application_eq(table, s.psi[i])) continue;
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const std::size_t j = order[b];
      if (!is_application_eq(table, s.psi[j]) || s.psi[j].lhs != s.psi[i].lhs) continue;
      TableauxState next = s;
      next.psi[i] = normalize(table, Literal{s.psi[i].rhs, s.psi[j].rhs, true});
      return single(Rule::MergeApplications, std::move(next));
    }
  }
  return std::nullopt;
}

std::optional<StepResult> rule_merge_variables(TermTable& table, const TableauxState& s,
                                               const std::vector<std::size_t>& order) {
  for (auto i : order) {
    const Literal& l = s.psi[i];
    if (!l.positive || l.lhs == l.rhs || !table.is_quantified(l.lhs) || !table.is_quantified(l.rhs)) continue;
    const Literal n = normalize(table, l);
    TableauxState next = s;
    next.psi.erase(next.psi.begin() + static_cast<std::ptrdiff_t>(i));
    rename(table, next.psi, table.head(n.lhs), n.rhs);
    return single(Rule::MergeVariables, std::move(next));
  }
  return std::nullopt;
}

std::optional<StepResult> rule_dag_update(TermTable& table, const TableauxState& s,
                                          const std::vector<std::size_t>& order) {
  for (auto i : order) {
    const Literal& l = s.psi[i];
    if (!l.positive) continue;
    TermId var;
    TermId body;
    if (table.is_quantified(l.lhs) && efree(table, l.rhs)) {
      var = l.lhs;
      body = l.rhs;
    } else if (table.is_quantified(l.rhs) && efree(table, l.lhs)) {
      var = l.rhs;
      body = l.lhs;
    } else {
      continue;
    }
    TableauxState next = s;
    next.psi.erase(next.psi.begin() + static_cast<std::ptrdiff_t>(i));
    const SymbolId y = table.defined_var(static_cast<std::uint32_t>(next.delta.size() + 1));
    next.delta.add(table, y, body);
    rename(table, next.psi, table.head(var), table.constant(y));
    return single(Rule::DagUpdate, std::move(next));
  }
  return std::nullopt;
}

std::optional<StepResult> rule_efree(const TermTable& table, const TableauxState& s,
                                     const std::vector<std::size_t>& order) {
  for (auto i : order) {
    const Literal& l = s.psi[i];
    if (mentions_quantified(table, l)) continue;
    TableauxState next = s;
    next.psi.erase(next.psi.begin() + static_cast<std::ptrdiff_t>(i));
    add_to_phi(table, next.phi, l);
    return single(Rule::EFree, std::move(next));
  }
  return std::nullopt;
}

std::optional<StepResult> rule_split(TermTable& table, const TableauxState& s, const std::vector<std::size_t>& order) {
  // Closest pairs in scan order first, then leftmost.
  for (std::size_t gap = 1; gap < order.size(); ++gap) {
    for (std::size_t a = 0; a + gap < order.size(); ++a) {
      const std::size_t i = order[a];
      const std::size_t j = order[a + gap];
      if (!is_application_eq(table, s.psi[i]) || !is_application_eq(table, s.psi[j])) continue;
      auto diff = compatible(table, s.psi[i].lhs, s.psi[j].lhs);
      if (!diff || diff->empty()) continue;
      if (std::any_of(diff->begin(), diff->end(), [&](const Literal& d) { return phi_contains(s.phi, d); })) continue;

      StepResult r;
      r.rule = Rule::Split;
      TableauxState merged = s;
      merged.psi.erase(merged.psi.begin() + static_cast<std::ptrdiff_t>(j));
      merged.psi.push_back(normalize(table, Literal{s.psi[i].rhs, s.psi[j].rhs, true}));
      for (const auto& d : *diff) add_to_phi(table, merged.phi, Literal{d.lhs, d.rhs, true});
      r.successors.push_back(std::move(merged));
      for (const auto& d : *diff) {
        TableauxState apart = s;
        add_to_phi(table, apart.phi, d);
        r.successors.push_back(std::move(apart));
      }
      return r;
    }
  }
  return std::nullopt;
}

void collect_constants(const TermTable& table, TermId t, std::set<SymbolId>& out) {
  if (table.is_constant(t)) {
    if (!table.is_quantified(t)) out.insert(table.head(t));
    return;
  }
  for (auto a : table.args(t)) collect_constants(table, a, out);
}

}  // namespace

const char* to_string(Rule rule) {
  switch (rule) {
    case Rule::Trivial:
      return "1.0";
    case Rule::MergeApplications:
      return "1.i";
    case Rule::MergeVariables:
      return "1.ii";
    case Rule::DagUpdate:
      return "2";
    case Rule::EFree:
      return "3";
    case Rule::Split:
      return "4";
  }
  return "?";
}

StepResult step(TermTable& table, const TableauxState& state, Strategy strategy) {
  if (state.phi.falsified) return StepResult{true, Rule::Trivial, {}};
  const auto order = scan_order(state.psi.size(), strategy);
  if (auto r = rule_trivial(state, order)) return *r;
  if (auto r = rule_merge_applications(table, state, order)) return *r;
  if (auto r = rule_merge_variables(table, state, order)) return *r;
  if (auto r = rule_dag_update(table, state, order)) return *r;
  if (auto r = rule_efree(table, state, order)) return *r;
  if (auto r = rule_split(table, state, order)) return *r;
  return StepResult{true, Rule::Trivial, {}};
}

bool is_terminal(const TermTable& table, const TableauxState& state) {
  if (state.phi.falsified) return true;
  const auto& psi = state.psi;
  for (const auto& l : psi) {
    if (l.lhs == l.rhs) return false;
    if (!l.positive) {
      if (!table.is_quantified(l.lhs) && !table.is_quantified(l.rhs)) return false;
      continue;
    }
    if (table.is_constant(l.lhs)) return false;
    const auto args = table.args(l.lhs);
    if (std::none_of(args.begin(), args.end(), [&](TermId a) { return table.is_quantified(a); })) return false;
  }
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (!psi[i].positive) continue;
    for (std::size_t j = i + 1; j < psi.size(); ++j) {
      if (!psi[j].positive) continue;
      auto diff = compatible(table, psi[i].lhs, psi[j].lhs);
      if (!diff) continue;
      if (diff->empty()) return false;
      if (std::none_of(diff->begin(), diff->end(), [&](const Literal& d) { return phi_contains(state.phi, d); })) {
        return false;
      }
    }
  }
  return true;
}

Measure measure(const TermTable& table, const TableauxState& state) {
  Measure m;
  if (state.phi.falsified) return m;
  std::set<SymbolId> live;
  std::set<SymbolId> constants;
  for (const auto& l : state.psi) {
    for (TermId side : {l.lhs, l.rhs}) {
      if (table.is_quantified(side)) live.insert(table.head(side));
      for (auto a : table.args(side)) {
        if (table.is_quantified(a)) live.insert(table.head(a));
      }
      collect_constants(table, side, constants);
    }
    m.psi_weight += table.is_constant(l.lhs) ? 1 : 3 + table.args(l.lhs).size();
  }
  for (const auto& l : state.phi.literals) {
    collect_constants(table, l.lhs, constants);
    collect_constants(table, l.rhs, constants);
  }
  for (const auto& e : state.delta.entries()) {
    constants.insert(e.var);
    collect_constants(table, e.body, constants);
  }
  m.live_vars = live.size();
  std::set<std::pair<SymbolId, SymbolId>> present;
  for (const auto& l : state.phi.literals) {
    if (l.positive || !table.is_constant(l.lhs) || !table.is_constant(l.rhs) || l.lhs == l.rhs) continue;
    present.insert(std::minmax(table.head(l.lhs), table.head(l.rhs)));
  }
  const std::size_t n = constants.size();
  m.missing_disequalities = (n == 0 ? 0 : n * (n - 1) / 2) - present.size();
  return m;
}

TableauxState initial_state(const PreprocessedInput& pre) {
  TableauxState s;
  s.delta = pre.initial_dag;
  s.psi = pre.s1;
  return s;
}

Formula UiResultDnf::to_formula() const {
  auto wrap = [](const DagDefinition& delta, Formula body) {
    const auto& entries = delta.entries();
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) body = Formula::let(it->var, it->body, body);
    return body;
  };
  std::vector<Formula> parts;
  for (const auto& [delta, phi] : disjuncts) parts.push_back(wrap(delta, Formula::from(phi)));
  return wrap(initial_dag, Formula::conjunction({Formula::from(passthrough), Formula::disjunction(std::move(parts))}));
}

namespace {

struct WorkItem {
  TableauxState state;
  std::vector<std::uint32_t> path;
  std::size_t steps = 0;
};

class Explorer {
 public:
  Explorer(TermTable& table, const TableauxOptions& options) : table_(table), options_(options) {}

  void run(WorkItem root, unsigned jobs) {
    stack_.push_back(std::move(root));
    if (jobs <= 1) {
      worker();
    } else {
      std::vector<std::thread> threads;
      for (unsigned i = 0; i < jobs; ++i) threads.emplace_back([this] { worker(); });
      for (auto& t : threads) t.join();
    }
    if (error_) std::rethrow_exception(error_);
  }

  std::vector<TableauxLeaf> leaves;
  TableauxStats stats;

 private:
  void worker() {
    for (;;) {
      WorkItem item;
      {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [&] { return stop_ || !stack_.empty() || active_ == 0; });
        if (stop_ || stack_.empty()) {
          cv_.notify_all();
          return;
        }
        item = std::move(stack_.back());
        stack_.pop_back();
        ++active_;
      }
      try {
        expand(std::move(item));
      } catch (...) {
        std::lock_guard lock(mutex_);
        if (!error_) error_ = std::current_exception();
        stop_ = true;
      }
      {
        std::lock_guard lock(mutex_);
        --active_;
      }
      cv_.notify_all();
    }
  }

  // Follows single-successor steps until a leaf or a split.
  void expand(WorkItem item) {
    std::vector<std::size_t> rule_counts(6, 0);
    for (;;) {
      options_.limits.check_time();
      StepResult r = step(table_, item.state, options_.strategy);
      if (options_.audit) audit(item.state, r);
      if (r.done) {
        finish_leaf(std::move(item), rule_counts);
        return;
      }
      ++item.steps;
      ++rule_counts[static_cast<std::size_t>(r.rule)];
      if (r.successors.size() == 1) {
        item.state = std::move(r.successors.front());
        continue;
      }
      std::lock_guard lock(mutex_);
      ++stats.rule4_firings;
      add_counts(rule_counts);
      for (std::size_t k = r.successors.size(); k-- > 0;) {
        WorkItem child{std::move(r.successors[k]), item.path, item.steps};
        child.path.push_back(static_cast<std::uint32_t>(k));
        stack_.push_back(std::move(child));
      }
      return;
    }
  }

  void finish_leaf(WorkItem item, const std::vector<std::size_t>& rule_counts) {
    std::lock_guard lock(mutex_);
    add_counts(rule_counts);
    ++stats.branches_explored;
    stats.max_branch_steps = std::max(stats.max_branch_steps, item.steps);
    if (stats.branches_explored > options_.limits.max_branches) {
      throw LimitExceeded(LimitKind::Branches, "more than " + std::to_string(options_.limits.max_branches) + " branches",
                          "branches_explored=" + std::to_string(stats.branches_explored) +
                              " rule4_firings=" + std::to_string(stats.rule4_firings));
    }
    leaves.push_back(TableauxLeaf{std::move(item.state.delta), std::move(item.state.phi), item.steps, std::move(item.path)});
  }

  void add_counts(const std::vector<std::size_t>& rule_counts) {
    for (std::size_t i = 0; i < rule_counts.size(); ++i) {
      stats.rule_counts[i] += rule_counts[i];
      stats.total_steps += rule_counts[i];
    }
  }

  void audit(const TableauxState& before, const StepResult& r) {
    if (r.done != is_terminal(table_, before)) throw Error("terminal predicate disagrees with the rule engine");
    if (r.done) return;
    const Measure m = measure(table_, before);
    for (const auto& next : r.successors) {
      for (const auto& l : next.phi.literals) {
        if (mentions_quantified(table_, l)) throw Error("phi mentions a quantified symbol");
      }
      for (const auto& e : next.delta.entries()) {
        if (table_.mentions_quantified(e.body)) throw Error("delta mentions a quantified symbol");
      }
      if (!(measure(table_, next) < m)) throw Error(std::string("measure did not decrease under rule ") + to_string(r.rule));
    }
  }

  TermTable& table_;
  const TableauxOptions& options_;
  std::mutex mutex_;
  std::condition_variable cv_;
  std::vector<WorkItem> stack_;
  unsigned active_ = 0;
  bool stop_ = false;
  std::exception_ptr error_;
};

}  // namespace

TableauxResult run_tableaux(TermTable& table, const PreprocessedInput& pre, const TableauxOptions& options) {
  TableauxResult result;
  result.ui.initial_dag = pre.initial_dag;
  result.ui.passthrough = pre.passthrough;
  if (pre.falsified()) {
    result.stats.branches_explored = 1;
    return result;
  }

  Explorer explorer(table, options);
  explorer.run(WorkItem{initial_state(pre), {}, 0}, options.jobs);
  result.stats = explorer.stats;
  result.leaves = std::move(explorer.leaves);
  std::sort(result.leaves.begin(), result.leaves.end(),
            [](const TableauxLeaf& a, const TableauxLeaf& b) { return a.path < b.path; });
  const std::size_t base = pre.initial_dag.size();
  for (const auto& leaf : result.leaves) {
    if (leaf.phi.falsified) continue;
    result.ui.disjuncts.emplace_back(leaf.delta.suffix(base), leaf.phi);
  }
  return result;
}

}  // namespace eufui

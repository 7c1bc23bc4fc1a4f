#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "eufui/formula.hpp"
#include "eufui/limits.hpp"
#include "eufui/preprocess.hpp"

namespace eufui {

/// One node of the tableaux: delta and phi are free of quantified symbols,
/// psi holds the literals still mentioning one.
struct TableauxState {
  DagDefinition delta;
  Constraint phi;
  std::vector<Literal> psi;
};

enum class Strategy {
  /// Scans psi front to back and picks the first redex; the split rule takes
  /// the closest compatible pair in scan order, leftmost first.
  Default,
  /// Scans psi back to front.
  Reversed,
};

enum class Rule { Trivial, MergeApplications, MergeVariables, DagUpdate, EFree, Split };

const char* to_string(Rule rule);

struct StepResult {
  bool done = false;
  Rule rule = Rule::Trivial;
  /// One successor for every rule but the split, which yields the 4.0
  /// alternative followed by one successor per difference-set disequality.
  std::vector<TableauxState> successors;
};

/// Applies the highest-priority applicable rule to `state`.
StepResult step(TermTable& table, const TableauxState& state, Strategy strategy = Strategy::Default);

/// No rule applies: psi holds only disequalities e != a and applications with
/// a quantified argument, and every compatible pair of applications is
/// separated by a difference-set disequality in phi.
bool is_terminal(const TermTable& table, const TableauxState& state);

/// Lexicographic termination measure: quantified symbols occurring in psi,
/// disequalities between e-free constants still missing from phi, weight of
/// psi (an application of arity h counts 3 + h, other literals 1).
struct Measure {
  std::size_t live_vars = 0;
  std::size_t missing_disequalities = 0;
  std::size_t psi_weight = 0;

  friend auto operator<=>(const Measure&, const Measure&) = default;
};

Measure measure(const TermTable& table, const TableauxState& state);

TableauxState initial_state(const PreprocessedInput& pre);

struct TableauxOptions {
  Strategy strategy = Strategy::Default;
  unsigned jobs = 1;
  Limits limits;
  /// Checks the state invariants and the measure decrease after every step;
  /// a violation throws `Error`.
  bool audit = false;
};

/// Terminal branch: delta extends the initial DAG of the input.
struct TableauxLeaf {
  DagDefinition delta;
  Constraint phi;
  std::size_t steps = 0;
  /// Successor indices from the root; leaves are reported in path order.
  std::vector<std::uint32_t> path;
};

struct TableauxStats {
  std::size_t branches_explored = 0;
  std::size_t rule4_firings = 0;
  std::size_t total_steps = 0;
  std::size_t max_branch_steps = 0;
  std::vector<std::size_t> rule_counts = std::vector<std::size_t>(6, 0);
};

/// The output as a disjunction of DAG-compressed constraints.
struct UiResultDnf {
  DagDefinition initial_dag;
  Constraint passthrough;
  /// Non-falsified leaves only, with delta restricted to the entries added by
  /// the branch.
  std::vector<std::pair<DagDefinition, Constraint>> disjuncts;

  /// let initial_dag in (passthrough and (or of let delta_i in phi_i)).
  Formula to_formula() const;
};

struct TableauxResult {
  UiResultDnf ui;
  std::vector<TableauxLeaf> leaves;
  TableauxStats stats;
};

/// Explores every branch depth-first. Throws `LimitExceeded` when more than
/// `limits.max_branches` leaves are reached or the deadline passes. With
/// jobs > 1 branches run on a thread pool; the result is the same.
TableauxResult run_tableaux(TermTable& table, const PreprocessedInput& pre, const TableauxOptions& options = {});

}  // namespace eufui

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "eufui/formula.hpp"
#include "eufui/limits.hpp"
#include "eufui/preprocess.hpp"

namespace eufui {

/// Ground Horn clause: a set of equalities between constants implying one
/// atom, or bottom when `consequent` is empty.
struct HornClause {
  /// Normalized, sorted, duplicate-free, no identities.
  std::vector<Literal> antecedent;
  std::optional<Literal> consequent;

  friend bool operator==(const HornClause&, const HornClause&) = default;
  friend auto operator<=>(const HornClause&, const HornClause&) = default;
};

/// Sorts and deduplicates the antecedent, drops identities from it and
/// normalizes every atom. Returns nothing when the consequent is an identity.
std::optional<HornClause> simplify(const TermTable& table, HornClause clause);

/// Same consequent and antecedent(d) a subset of antecedent(c).
bool subsumes(const HornClause& d, const HornClause& c);

/// A rewriter has consequent e_j = e_i between two quantified constants.
bool is_rewriter(const TermTable& table, const HornClause& clause);

Formula to_formula(const HornClause& clause);
std::string to_string(const TermTable& table, const HornClause& clause);

/// Subsumption-reduced set of clauses in insertion order.
class ClauseSet {
 public:
  /// Adds `clause` unless an existing clause subsumes it; removes the
  /// existing clauses it subsumes. Returns whether it was added.
  bool insert(const HornClause& clause);
  bool contains(const HornClause& clause) const;
  /// Some clause subsumes `clause`.
  bool subsumed(const HornClause& clause) const;

  const std::vector<HornClause>& clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }

 private:
  std::vector<HornClause> clauses_;
};

/// The literals of S1 as unit clauses (a != b becomes a = b -> bottom), plus
/// a1 = a1', ..., ah = ah' -> a = a' for every pair of applications of one
/// function symbol with different right sides.
ClauseSet step1(const TermTable& table, const std::vector<Literal>& s1);

enum class SaturationOrder { OldestFirst, NewestFirst };

/// Saturates under rewriting with the clauses G -> e_j = e_i (j > i): every
/// occurrence of e_j in a clause C, one position at a time, yields
/// G, C[e_i]. Throws `LimitExceeded` when more than `limits.max_clauses`
/// clauses are generated.
ClauseSet step2(TermTable& table, const ClauseSet& s2, const Limits& limits = {},
                SaturationOrder order = SaturationOrder::OldestFirst);

/// A w-conditional DAG: entry i defines w_i = value_i under the antecedent
/// of clause i, all in the language of the parameters and w_1..w_{i-1}.
struct ConditionalDag {
  struct Entry {
    SymbolId var;
    TermId value;
    std::size_t clause;  // index into the clause set
  };
  std::vector<Entry> entries;
};

/// Every conditional DAG buildable from `s3` over `evars`, one per set of
/// definitions: independent definitions are listed in a single canonical
/// order. The empty DAG comes first. Throws `LimitExceeded` past
/// `limits.max_cdags`.
std::vector<ConditionalDag> enumerate_cdags(const TermTable& table, const ClauseSet& s3,
                                            const std::vector<SymbolId>& evars, const Limits& limits = {});

enum class Prune { None, Syntactic, Semantic };

/// phi_delta with the guards and let-bound definitions kept in place.
struct PhiDelta {
  Formula formula;
  /// Core clauses (over the parameters and w) surviving the pruning.
  std::vector<std::size_t> core;
  bool trivial = false;
};

/// Builds G_1 -> let w_1 = t_1 in (... G_s -> let w_s = t_s in core). With
/// pruning, core clauses that are true once the guards hold are left out,
/// and `trivial` is set when none remains.
PhiDelta phi_delta(TermTable& table, const ConditionalDag& delta, const ClauseSet& s3,
                   Prune prune = Prune::Syntactic, const Limits& limits = {});

struct ConditionalOptions {
  Limits limits;
  Prune prune = Prune::Syntactic;
  SaturationOrder order = SaturationOrder::OldestFirst;
};

struct ConditionalStats {
  std::size_t s2_size = 0;
  std::size_t s3_size = 0;
  std::size_t num_cdags = 0;
  std::size_t nontrivial_cdags = 0;
};

struct ConditionalResult {
  Formula ui;
  ClauseSet s2;
  ClauseSet s3;
  /// Non-trivial DAGs and their formulas, duplicates removed.
  std::vector<ConditionalDag> cdags;
  std::vector<PhiDelta> phis;
  ConditionalStats stats;
};

/// let initial_dag in (passthrough and the conjunction of all non-trivial
/// phi_delta).
ConditionalResult conditional_ui(TermTable& table, const PreprocessedInput& pre, const ConditionalOptions& options = {});

}  // namespace eufui

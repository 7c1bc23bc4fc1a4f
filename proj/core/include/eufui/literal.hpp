#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "eufui/term.hpp"

namespace eufui {

/// An equality (`positive`) or disequality between two terms.
struct Literal {
  TermId lhs;
  TermId rhs;
  bool positive = true;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

/// Shape of a flat literal. `General` covers everything else.
enum class FlatShape { FunEq, VarEq, Diseq, General };

FlatShape shape_of(const TermTable& table, const Literal& lit);

/// Orients a literal canonically: a compound side goes left of a 0-ary side,
/// two 0-ary sides are ordered by `TermTable::symbol_greater` (larger left),
/// two compound sides by descending id.
Literal normalize(const TermTable& table, Literal lit);

bool mentions_quantified(const TermTable& table, const Literal& lit);
bool is_trivial_identity(const Literal& lit);

std::string to_string(const TermTable& table, const Literal& lit);

/// Conjunction of literals. When `falsified` is set the constraint is bottom
/// and `literals` carries no meaning.
struct Constraint {
  std::vector<Literal> literals;
  bool falsified = false;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct DagEntry {
  SymbolId var;
  TermId body;

  friend bool operator==(const DagEntry&, const DagEntry&) = default;
};

/// Explicit definitions y_i = body_i, where body_i only mentions parameters
/// and y_1..y_{i-1}.
class DagDefinition {
 public:
  /// Appends an entry. Throws `Error` if `var` is already defined or is not
  /// a 0-ary symbol.
  void add(const TermTable& table, SymbolId var, TermId body);

  const std::vector<DagEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::optional<TermId> lookup(SymbolId var) const;

  /// Copy holding only the entries from position `first` on.
  DagDefinition suffix(std::size_t first) const;

  friend bool operator==(const DagDefinition&, const DagDefinition&) = default;

 private:
  std::vector<DagEntry> entries_;
  std::unordered_map<SymbolId, std::size_t> index_;
};

/// Memoized simultaneous replacement of 0-ary symbols. Terms are rebuilt
/// through `table`, so the result shares structure with the input DAG.
class Substitution {
 public:
  explicit Substitution(TermTable& table) : table_(&table) {}

  void bind(SymbolId var, TermId value);
  bool binds(SymbolId var) const { return map_.contains(var); }
  bool empty() const { return map_.empty(); }

  TermId apply(TermId t);
  Literal apply(const Literal& lit) { return Literal{apply(lit.lhs), apply(lit.rhs), lit.positive}; }

 private:
  TermTable* table_;
  std::unordered_map<SymbolId, TermId> map_;
  std::unordered_map<TermId, TermId> memo_;
};

/// The substitution associated with a DAG definition: every defined variable
/// is replaced by its fully expanded body. Throws `Error` when `t` mentions a
/// defined variable without an entry.
TermId sigma_delta_apply(TermTable& table, const DagDefinition& delta, TermId t);

/// Applies `sigma_delta_apply` to every literal of `phi`.
Constraint unravel(TermTable& table, const DagDefinition& delta, const Constraint& phi);

/// Compatibility of two flat applications: same head and every argument pair
/// is identical or made of two e-free symbols. Returns the difference set as
/// normalized disequalities, or nothing when the terms are not compatible.
std::optional<std::vector<Literal>> compatible(const TermTable& table, TermId t, TermId u,
                                               const std::function<bool(TermId)>& efree);

/// Same as above with e-freeness meaning "no quantified leaf".
std::optional<std::vector<Literal>> compatible(const TermTable& table, TermId t, TermId u);

}  // namespace eufui

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "eufui/formula.hpp"
#include "eufui/limits.hpp"

namespace eufui {

/// Congruence closure over ground terms of one `TermTable`.
///
/// Union-find with path compression and union by rank; a signature table
/// keyed by (head, representatives of the arguments) detects congruences.
/// The state is a plain value: copying it forks the closure.
class CongruenceClosure {
 public:
  explicit CongruenceClosure(const TermTable& table) : table_(&table) {}

  /// Registers `t` and its subterms. Registering is required before a term's
  /// congruences are visible to `equal`.
  void add_term(TermId t);
  void merge(TermId a, TermId b);
  void add_disequality(TermId a, TermId b);
  void assert_literal(const Literal& lit);

  bool equal(TermId a, TermId b);
  /// True when some recorded disequality holds between the classes of a and
  /// b.
  bool known_distinct(TermId a, TermId b);
  /// No recorded disequality has both sides in one class.
  bool consistent() const { return consistent_; }

  std::size_t term_count() const { return nodes_.size(); }

 private:
  struct Node {
    TermId term;
    std::uint32_t parent;
    std::uint32_t rank = 0;
    std::vector<std::uint32_t> uses;  // compound nodes with this class as an argument
  };
  struct SigHash {
    std::size_t operator()(const std::vector<std::uint32_t>& key) const noexcept;
  };

  std::uint32_t node_of(TermId t);
  std::uint32_t find(std::uint32_t n);
  std::vector<std::uint32_t> signature(std::uint32_t n);
  void propagate();
  void recheck_disequalities();

  const TermTable* table_;
  std::vector<Node> nodes_;
  std::unordered_map<TermId, std::uint32_t> index_;
  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, SigHash> signatures_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pending_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> disequalities_;
  bool consistent_ = true;
};

enum class SatResult { Sat, Unsat };

/// Satisfiability of a conjunction of ground literals in EUF.
SatResult cc_sat(const TermTable& table, std::span<const Literal> literals);

struct ValidityResult {
  bool valid = false;
  /// A satisfiable cube of hyp and not concl when the implication is not
  /// valid.
  std::vector<Literal> countermodel;
  std::size_t cubes_explored = 0;
};

/// Decides whether hyp -> concl is EUF-valid. Symbols are read as constants
/// (quantified symbols of hyp are Skolemized). Lets are unravelled first.
///
/// hyp and not concl are put in negation normal form and their DNF is
/// enumerated lazily: a partial cube is dropped as soon as congruence
/// closure refutes it, disjunctions with a single surviving disjunct are not
/// split, and every complete cube is checked with `cc_sat`. Throws
/// `LimitExceeded` after `limits.max_cubes` search nodes.
ValidityResult euf_valid(TermTable& table, const Formula& hyp, const Formula& concl, const Limits& limits = {});

struct EquivalenceResult {
  bool equivalent = false;
  /// When not equivalent: true if a -> b failed, false if b -> a failed.
  bool forward_failed = false;
  std::vector<Literal> countermodel;
};

EquivalenceResult euf_equiv(TermTable& table, const Formula& a, const Formula& b, const Limits& limits = {});

}  // namespace eufui

#pragma once

#include <utility>
#include <vector>

#include "eufui/limits.hpp"
#include "eufui/literal.hpp"
#include "eufui/problem.hpp"

namespace eufui {

/// Input shared by both interpolation algorithms.
struct PreprocessedInput {
  /// Flat literals that mention a quantified symbol: f(a1..ah) = a with the
  /// application on the left, and a != b.
  std::vector<Literal> s1;
  /// e-free literals of the input, copied to the output unchanged.
  Constraint passthrough;
  /// Defined variables abstracting e-free compound subterms of e-containing
  /// literals. Both algorithms treat them as parameters; the final UI wraps
  /// them in let bindings.
  DagDefinition initial_dag;
  /// Quantified symbols still to eliminate, in ascending rank. Abstraction
  /// variables follow the original ones.
  std::vector<SymbolId> evars;
  /// Introduced quantified variable -> the subterm it abstracts.
  std::vector<std::pair<SymbolId, TermId>> renaming;
  /// Quantified variable eliminated by an equation e = t -> its value,
  /// expressed over symbols of the original problem.
  std::vector<std::pair<SymbolId, TermId>> replaced;

  bool falsified() const { return passthrough.falsified; }
};

/// Brings the body of `problem` into the shape above. Steps, in order:
/// equations e = t with t e-free (or another quantified constant) are solved
/// by substitution; identities are dropped and t != t falsifies; e-free
/// literals go to the passthrough; every remaining compound subterm is
/// abstracted innermost-leftmost, by a fresh quantified variable when it
/// mentions one and by a defined variable otherwise. Duplicate subterms share
/// one abstraction variable.
PreprocessedInput flatten(Problem& problem);

/// Audits `pre` against the original body with the EUF oracle: the body
/// must entail passthrough and s1 with abstraction variables replaced by
/// their subterms, and that conjunction plus the solved equations must
/// entail the body back. A falsified result must come from an unsatisfiable
/// body.
bool replay_check(const PreprocessedInput& pre, Problem& problem, const Limits& limits = {});

}  // namespace eufui

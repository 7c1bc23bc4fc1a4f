#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

#include "eufui/conditional.hpp"

namespace eufui {

std::optional<HornClause> simplify(const TermTable& table, HornClause clause) {
  std::vector<Literal> atoms;
  atoms.reserve(clause.antecedent.size());
  for (const auto& a : clause.antecedent) {
    if (a.lhs == a.rhs) continue;
    atoms.push_back(normalize(table, a));
  }
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  clause.antecedent = std::move(atoms);
  if (clause.consequent) {
    if (clause.consequent->lhs == clause.consequent->rhs) return std::nullopt;
    clause.consequent = normalize(table, *clause.consequent);
  }
  return clause;
}

bool subsumes(const HornClause& d, const HornClause& c) {
  if (d.consequent != c.consequent || d.antecedent.size() > c.antecedent.size()) return false;
  return std::includes(c.antecedent.begin(), c.antecedent.end(), d.antecedent.begin(), d.antecedent.end());
}

bool is_rewriter(const TermTable& table, const HornClause& clause) {
  return clause.consequent && clause.consequent->positive && table.is_quantified(clause.consequent->lhs) &&
         table.is_quantified(clause.consequent->rhs);
}

Formula to_formula(const HornClause& clause) {
  return Formula::implication(Formula::from(clause.antecedent),
                              clause.consequent ? Formula::atom(*clause.consequent) : Formula::bottom());
}

std::string to_string(const TermTable& table, const HornClause& clause) {
  std::string out;
  for (std::size_t i = 0; i < clause.antecedent.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(table, clause.antecedent[i]);
  }
  out += out.empty() ? "-> " : " -> ";
  out += clause.consequent ? to_string(table, *clause.consequent) : "false";
  return out;
}

bool ClauseSet::insert(const HornClause& clause) {
  if (subsumed(clause)) return false;
  std::erase_if(clauses_, [&](const HornClause& c) { return subsumes(clause, c); });
  clauses_.push_back(clause);
  return true;
}

bool ClauseSet::contains(const HornClause& clause) const {
  return std::find(clauses_.begin(), clauses_.end(), clause) != clauses_.end();
}

bool ClauseSet::subsumed(const HornClause& clause) const {
  return std::any_of(clauses_.begin(), clauses_.end(), [&](const HornClause& d) { return subsumes(d, clause); });
}

ClauseSet step1(const TermTable& table, const std::vector<Literal>& s1) {
  ClauseSet out;
  for (const auto& l : s1) {
    HornClause c;
    if (l.positive) {
      c.consequent = l;
    } else {
      c.antecedent.push_back(Literal{l.lhs, l.rhs, true});
    }
    if (auto s = simplify(table, std::move(c))) out.insert(*s);
  }
  for (std::size_t i = 0; i < s1.size(); ++i) {
    const Literal& a = s1[i];
    if (!a.positive || table.is_constant(a.lhs)) continue;
    for (std::size_t j = i + 1; j < s1.size(); ++j) {
      const Literal& b = s1[j];
      if (!b.positive || table.is_constant(b.lhs) || table.head(a.lhs) != table.head(b.lhs) || a.rhs == b.rhs) {
        continue;
      }
      HornClause c;
      const auto aa = table.args(a.lhs);
      const auto ba = table.args(b.lhs);
      for (std::size_t k = 0; k < aa.size(); ++k) c.antecedent.push_back(Literal{aa[k], ba[k], true});
      c.consequent = Literal{a.rhs, b.rhs, true};
      if (auto s = simplify(table, std::move(c))) out.insert(*s);
    }
  }
  return out;
}

namespace {

class Saturation {
 public:
  Saturation(TermTable& table, const Limits& limits, SaturationOrder order)
      : table_(table), limits_(limits), order_(order) {}

  void add(HornClause raw) {
    auto simplified = simplify(table_, std::move(raw));
    if (!simplified) return;
    const HornClause& c = *simplified;
    if (seen_.contains(c)) return;
    auto& bucket = by_consequent_[key_of(c)];
    const std::uint64_t sig = signature(c);
    for (auto k : bucket) {
      if ((entries_[k].signature & ~sig) == 0 && subsumes(entries_[k].clause, c)) return;
    }
    std::erase_if(bucket, [&](std::size_t k) {
      if ((sig & ~entries_[k].signature) != 0 || !subsumes(c, entries_[k].clause)) return false;
      entries_[k].alive = false;
      return true;
    });
    if (entries_.size() >= limits_.max_clauses) {
      throw LimitExceeded(LimitKind::Clauses, "more than " + std::to_string(limits_.max_clauses) + " clauses",
                          "clauses_generated=" + std::to_string(entries_.size()));
    }
    seen_.insert(c);
    entries_.push_back(Entry{std::move(*simplified), sig, true, false});
    bucket.push_back(entries_.size() - 1);
    queue_.push_back(entries_.size() - 1);
  }

  void run() {
    while (!queue_.empty()) {
      std::size_t g;
      if (order_ == SaturationOrder::OldestFirst) {
        g = queue_.front();
        queue_.pop_front();
      } else {
        g = queue_.back();
        queue_.pop_back();
      }
      if (!entries_[g].alive) continue;
      limits_.check_time();
      entries_[g].active = true;
      const std::size_t count = entries_.size();
      if (is_rewriter(table_, entries_[g].clause)) {
        for (std::size_t c = 0; c < count; ++c) {
          if (entries_[c].active && entries_[c].alive) rewrite_all(g, c);
        }
      }
      for (std::size_t r = 0; r < count; ++r) {
        if (r != g && entries_[r].active && entries_[r].alive && entries_[g].alive &&
            is_rewriter(table_, entries_[r].clause)) {
          rewrite_all(r, g);
        }
      }
    }
  }

  ClauseSet result() const {
    ClauseSet out;
    for (const auto& e : entries_) {
      if (e.alive) out.insert(e.clause);
    }
    return out;
  }

 private:
  struct Entry {
    HornClause clause;
    std::uint64_t signature;  // one bit per antecedent atom, for subsumption filtering
    bool alive;
    bool active;
  };
  using ConsequentKey = std::tuple<bool, std::uint32_t, std::uint32_t, bool>;

  static std::uint64_t signature(const HornClause& c) {
    std::uint64_t bits = 0;
    for (const auto& a : c.antecedent) bits |= std::uint64_t{1} << ((a.lhs.value * 31u + a.rhs.value * 17u + a.positive) % 64u);
    return bits;
  }

  static ConsequentKey key_of(const HornClause& c) {
    if (!c.consequent) return {false, 0, 0, false};
    return {true, c.consequent->lhs.value, c.consequent->rhs.value, c.consequent->positive};
  }

  bool mentions(const HornClause& c, TermId t) const {
    auto in = [&](TermId u) {
      if (u == t) return true;
      const auto args = table_.args(u);
      return std::find(args.begin(), args.end(), t) != args.end();
    };
    for (const auto& a : c.antecedent) {
      if (a.lhs == t || a.rhs == t) return true;
    }
    return c.consequent && (in(c.consequent->lhs) || c.consequent->rhs == t);
  }

  // Every single-position rewrite of clause c with rewriter r.
  void rewrite_all(std::size_t r, std::size_t c) {
    if (!mentions(entries_[c].clause, entries_[r].clause.consequent->lhs)) return;
    const HornClause rewriter = entries_[r].clause;
    const HornClause target = entries_[c].clause;
    const TermId from = rewriter.consequent->lhs;
    const TermId to = rewriter.consequent->rhs;

    auto emit = [&](HornClause next) {
      next.antecedent.insert(next.antecedent.end(), rewriter.antecedent.begin(), rewriter.antecedent.end());
      add(std::move(next));
    };

    for (std::size_t k = 0; k < target.antecedent.size(); ++k) {
      if (target.antecedent[k].lhs == from) {
        HornClause next = target;
        next.antecedent[k].lhs = to;
        emit(std::move(next));
      }
      if (target.antecedent[k].rhs == from) {
        HornClause next = target;
        next.antecedent[k].rhs = to;
        emit(std::move(next));
      }
    }
    if (!target.consequent) return;
    const Literal& cons = *target.consequent;
    if (cons.rhs == from) {
      HornClause next = target;
      next.consequent->rhs = to;
      emit(std::move(next));
    }
    if (table_.is_constant(cons.lhs)) {
      if (cons.lhs == from) {
        HornClause next = target;
        next.consequent->lhs = to;
        emit(std::move(next));
      }
      return;
    }
    const auto args = table_.args(cons.lhs);
    for (std::size_t k = 0; k < args.size(); ++k) {
      if (args[k] != from) continue;
      std::vector<TermId> replaced(args.begin(), args.end());
      replaced[k] = to;
      HornClause next = target;
      next.consequent->lhs = table_.intern(table_.head(cons.lhs), replaced);
      emit(std::move(next));
    }
  }

  TermTable& table_;
  const Limits& limits_;
  SaturationOrder order_;
  std::vector<Entry> entries_;
  std::map<ConsequentKey, std::vector<std::size_t>> by_consequent_;
  std::set<HornClause> seen_;
  std::deque<std::size_t> queue_;
};

}  // namespace

ClauseSet step2(TermTable& table, const ClauseSet& s2, const Limits& limits, SaturationOrder order) {
  Saturation saturation(table, limits, order);
  for (const auto& c : s2.clauses()) saturation.add(c);
  saturation.run();
  return saturation.result();
}

}  // namespace eufui

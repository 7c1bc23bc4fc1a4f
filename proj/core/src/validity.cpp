#include <algorithm>
#include <map>
#include <optional>

#include "eufui/error.hpp"
#include "eufui/euf_check.hpp"

namespace eufui {

namespace {

enum class Truth { True, False, Unknown };

struct NnfNode {
  enum class Kind { True, False, Lit, And, Or } kind;
  Literal lit{};
  std::vector<std::uint32_t> kids;
};

// Negation normal form of a let-free formula, shared by (node, polarity).
class NnfBuilder {
 public:
  std::vector<NnfNode> pool;

  std::uint32_t build(const Formula& f, bool positive) {
    const auto key = std::make_pair(f.node(), positive);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const std::uint32_t id = make(f, positive);
    memo_.emplace(key, id);
    return id;
  }

  std::uint32_t junction(NnfNode::Kind kind, std::vector<std::uint32_t> kids) {
    pool.push_back(NnfNode{kind, {}, std::move(kids)});
    return static_cast<std::uint32_t>(pool.size() - 1);
  }

 private:
  std::uint32_t make(const Formula& f, bool positive) {
    using K = NnfNode::Kind;
    switch (f.kind()) {
      case FormulaKind::True:
      case FormulaKind::False: {
        const bool value = (f.kind() == FormulaKind::True) == positive;
        pool.push_back(NnfNode{value ? K::True : K::False, {}, {}});
        return static_cast<std::uint32_t>(pool.size() - 1);
      }
      case FormulaKind::Atom: {
        Literal lit = f.literal();
        if (!positive) lit.positive = !lit.positive;
        pool.push_back(NnfNode{K::Lit, lit, {}});
        return static_cast<std::uint32_t>(pool.size() - 1);
      }
      case FormulaKind::Not:
        return build(f.children()[0], !positive);
      case FormulaKind::And:
      case FormulaKind::Or: {
        std::vector<std::uint32_t> kids;
        for (const auto& c : f.children()) kids.push_back(build(c, positive));
        const bool conj = (f.kind() == FormulaKind::And) == positive;
        return junction(conj ? K::And : K::Or, std::move(kids));
      }
      case FormulaKind::Implies: {
        const auto a = build(f.children()[0], !positive);
        const auto b = build(f.children()[1], positive);
        return junction(positive ? K::Or : K::And, {a, b});
      }
      case FormulaKind::Let:
        throw Error("validity check needs a let-free formula");
    }
    throw Error("unreachable formula kind");
  }

  std::map<std::pair<const FormulaNode*, bool>, std::uint32_t> memo_;
};

class CubeSearch {
 public:
  CubeSearch(const std::vector<NnfNode>& pool, const Limits& limits) : pool_(pool), limits_(limits) {}

  std::size_t explored = 0;

  // Returns a satisfiable cube extending `cube`, or nothing when every cube
  // below this node is refuted.
  std::optional<std::vector<Literal>> solve(CongruenceClosure cc, std::vector<std::uint32_t> todo,
                                            std::vector<std::uint32_t> ors, std::vector<Literal> cube) {
    using K = NnfNode::Kind;
    if (++explored > limits_.max_cubes) {
      throw LimitExceeded(LimitKind::Cubes, "more than " + std::to_string(limits_.max_cubes) + " cubes",
                          "cubes_explored=" + std::to_string(explored - 1));
    }
    if ((explored & 0xff) == 0) limits_.check_time();

    std::vector<std::vector<std::uint32_t>> open;  // unresolved disjuncts per pending Or
    for (;;) {
      while (!todo.empty()) {
        const NnfNode& n = pool_[todo.back()];
        todo.pop_back();
        switch (n.kind) {
          case K::True:
            break;
          case K::False:
            return std::nullopt;
          case K::Lit:
            cc.assert_literal(n.lit);
            cube.push_back(n.lit);
            if (!cc.consistent()) return std::nullopt;
            break;
          case K::And:
            todo.insert(todo.end(), n.kids.rbegin(), n.kids.rend());
            break;
          case K::Or:
            ors.push_back(static_cast<std::uint32_t>(&n - pool_.data()));
            break;
        }
      }
      open.clear();
      std::vector<std::uint32_t> still;
      bool progress = false;
      for (auto o : ors) {
        std::vector<std::uint32_t> unknown;
        bool satisfied = false;
        for (auto k : pool_[o].kids) {
          const Truth t = eval(cc, k);
          if (t == Truth::True) {
            satisfied = true;
            break;
          }
          if (t == Truth::Unknown) unknown.push_back(k);
        }
        if (satisfied) continue;
        if (unknown.empty()) return std::nullopt;
        if (unknown.size() == 1) {
          todo.push_back(unknown.front());
          progress = true;
          continue;
        }
        still.push_back(o);
        open.push_back(std::move(unknown));
      }
      ors = std::move(still);
      if (!progress) break;
    }
    if (ors.empty()) return cube;

    std::size_t pick = 0;
    for (std::size_t i = 1; i < open.size(); ++i) {
      if (open[i].size() < open[pick].size()) pick = i;
    }
    std::vector<std::uint32_t> rest;
    for (std::size_t i = 0; i < ors.size(); ++i) {
      if (i != pick) rest.push_back(ors[i]);
    }
    for (auto k : open[pick]) {
      if (auto found = solve(cc, {k}, rest, cube)) return found;
    }
    return std::nullopt;
  }

 private:
  Truth eval(CongruenceClosure& cc, std::uint32_t id) const {
    using K = NnfNode::Kind;
    const NnfNode& n = pool_[id];
    switch (n.kind) {
      case K::True:
        return Truth::True;
      case K::False:
        return Truth::False;
      case K::Lit: {
        if (cc.equal(n.lit.lhs, n.lit.rhs)) return n.lit.positive ? Truth::True : Truth::False;
        if (cc.known_distinct(n.lit.lhs, n.lit.rhs)) return n.lit.positive ? Truth::False : Truth::True;
        return Truth::Unknown;
      }
      case K::And: {
        bool all = true;
        for (auto k : n.kids) {
          const Truth t = eval(cc, k);
          if (t == Truth::False) return Truth::False;
          all = all && t == Truth::True;
        }
        return all ? Truth::True : Truth::Unknown;
      }
      case K::Or: {
        bool none = true;
        for (auto k : n.kids) {
          const Truth t = eval(cc, k);
          if (t == Truth::True) return Truth::True;
          none = none && t == Truth::False;
        }
        return none ? Truth::False : Truth::Unknown;
      }
    }
    return Truth::Unknown;
  }

  const std::vector<NnfNode>& pool_;
  const Limits& limits_;
};

}  // namespace

ValidityResult euf_valid(TermTable& table, const Formula& hyp, const Formula& concl, const Limits& limits) {
  const Formula h = unravel(table, hyp);
  const Formula c = unravel(table, concl);

  NnfBuilder nnf;
  const auto root =
      nnf.junction(NnfNode::Kind::And, {nnf.build(h, true), nnf.build(c, false)});

  CongruenceClosure cc(table);
  for (const auto& n : nnf.pool) {
    if (n.kind == NnfNode::Kind::Lit) {
      cc.add_term(n.lit.lhs);
      cc.add_term(n.lit.rhs);
    }
  }

  CubeSearch search(nnf.pool, limits);
  auto cube = search.solve(std::move(cc), {root}, {}, {});
  ValidityResult result;
  result.cubes_explored = search.explored;
  result.valid = !cube.has_value();
  if (cube) result.countermodel = std::move(*cube);
  return result;
}

EquivalenceResult euf_equiv(TermTable& table, const Formula& a, const Formula& b, const Limits& limits) {
  EquivalenceResult result;
  auto forward = euf_valid(table, a, b, limits);
  if (!forward.valid) {
    result.forward_failed = true;
    result.countermodel = std::move(forward.countermodel);
    return result;
  }
  auto backward = euf_valid(table, b, a, limits);
  if (!backward.valid) {
    result.countermodel = std::move(backward.countermodel);
    return result;
  }
  result.equivalent = true;
  return result;
}

}  // namespace eufui

#include <algorithm>

#include "eufui/euf_check.hpp"

namespace eufui {

std::size_t CongruenceClosure::SigHash::operator()(const std::vector<std::uint32_t>& key) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto v : key) h = (h ^ v) * 0x100000001b3ULL;
  return h;
}

std::uint32_t CongruenceClosure::find(std::uint32_t n) {
  std::uint32_t root = n;
  while (nodes_[root].parent != root) root = nodes_[root].parent;
  while (nodes_[n].parent != root) {
    const std::uint32_t next = nodes_[n].parent;
    nodes_[n].parent = root;
    n = next;
  }
  return root;
}

std::vector<std::uint32_t> CongruenceClosure::signature(std::uint32_t n) {
  const TermId t = nodes_[n].term;
  std::vector<std::uint32_t> key;
  key.reserve(table_->args(t).size() + 1);
  key.push_back(table_->head(t).value);
  for (auto a : table_->args(t)) key.push_back(find(index_.at(a)));
  return key;
}

std::uint32_t CongruenceClosure::node_of(TermId t) {
  if (auto it = index_.find(t); it != index_.end()) return it->second;
  for (auto a : table_->args(t)) node_of(a);
  const auto n = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back(Node{t, n, 0, {}});
  index_.emplace(t, n);
  if (!table_->is_constant(t)) {
    for (auto a : table_->args(t)) {
      auto& uses = nodes_[find(index_.at(a))].uses;
      if (uses.empty() || uses.back() != n) uses.push_back(n);
    }
    auto key = signature(n);
    auto [it, inserted] = signatures_.emplace(std::move(key), n);
    if (!inserted) pending_.emplace_back(n, it->second);
  }
  return n;
}

void CongruenceClosure::add_term(TermId t) {
  node_of(t);
  propagate();
}

void CongruenceClosure::merge(TermId a, TermId b) {
  const auto na = node_of(a);
  const auto nb = node_of(b);
  pending_.emplace_back(na, nb);
  propagate();
}

void CongruenceClosure::add_disequality(TermId a, TermId b) {
  const auto na = node_of(a);
  const auto nb = node_of(b);
  propagate();
  disequalities_.emplace_back(na, nb);
  if (find(na) == find(nb)) consistent_ = false;
}

void CongruenceClosure::assert_literal(const Literal& lit) {
  if (lit.positive) {
    merge(lit.lhs, lit.rhs);
  } else {
    add_disequality(lit.lhs, lit.rhs);
  }
}

void CongruenceClosure::propagate() {
  bool merged = false;
  while (!pending_.empty()) {
    auto [a, b] = pending_.back();
    pending_.pop_back();
    std::uint32_t ra = find(a);
    std::uint32_t rb = find(b);
    if (ra == rb) continue;
    if (nodes_[ra].rank < nodes_[rb].rank) std::swap(ra, rb);
    if (nodes_[ra].rank == nodes_[rb].rank) ++nodes_[ra].rank;
    std::vector<std::uint32_t> moved = std::move(nodes_[rb].uses);
    nodes_[rb].uses.clear();
    nodes_[rb].parent = ra;
    merged = true;
    for (auto p : moved) {
      auto key = signature(p);
      auto [it, inserted] = signatures_.emplace(std::move(key), p);
      if (!inserted && find(it->second) != find(p)) pending_.emplace_back(p, it->second);
      nodes_[ra].uses.push_back(p);
    }
  }
  if (merged) recheck_disequalities();
}

void CongruenceClosure::recheck_disequalities() {
  for (auto [a, b] : disequalities_) {
    if (find(a) == find(b)) {
      consistent_ = false;
      return;
    }
  }
}

bool CongruenceClosure::equal(TermId a, TermId b) {
  if (a == b) return true;
  const auto na = node_of(a);
  const auto nb = node_of(b);
  propagate();
  return find(na) == find(nb);
}

bool CongruenceClosure::known_distinct(TermId a, TermId b) {
  const auto na = node_of(a);
  const auto nb = node_of(b);
  propagate();
  const auto ra = find(na);
  const auto rb = find(nb);
  if (ra == rb) return false;
  return std::any_of(disequalities_.begin(), disequalities_.end(), [&](auto d) {
    const auto x = find(d.first);
    const auto y = find(d.second);
    return (x == ra && y == rb) || (x == rb && y == ra);
  });
}

SatResult cc_sat(const TermTable& table, std::span<const Literal> literals) {
  CongruenceClosure cc(table);
  for (const auto& lit : literals) {
    cc.assert_literal(lit);
    if (!cc.consistent()) return SatResult::Unsat;
  }
  return cc.consistent() ? SatResult::Sat : SatResult::Unsat;
}

}  // namespace eufui

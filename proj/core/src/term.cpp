#include "eufui/term.hpp"

#include <limits>

#include "eufui/error.hpp"

namespace eufui {

const char* to_string(LimitKind kind) {
  switch (kind) {
    case LimitKind::Branches:
      return "branch";
    case LimitKind::Clauses:
      return "clause";
    case LimitKind::ConditionalDags:
      return "conditional-DAG";
    case LimitKind::Cubes:
      return "cube";
    case LimitKind::Time:
      return "time";
  }
  return "resource";
}

std::size_t TermTable::KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = k.head * 0x9e3779b97f4a7c15ULL;
  for (auto a : k.args) h = (h ^ a) * 0x100000001b3ULL + (h >> 29);
  return h;
}

SymbolId TermTable::declare_locked(std::string name, std::uint32_t arity, SymbolKind kind,
                                   std::uint32_t rank) {
  if (kind != SymbolKind::Function && arity != 0) {
    throw Error("symbol '" + name + "' must be 0-ary");
  }
  if (by_name_.contains(name)) throw Error("duplicate declaration of '" + name + "'");
  const SymbolId id{symbols_.push(Symbol{name, arity, kind, rank})};
  by_name_.emplace(std::move(name), id);
  return id;
}

SymbolId TermTable::declare(std::string name, std::uint32_t arity, SymbolKind kind, std::uint32_t rank) {
  std::scoped_lock lock(mutex_);
  return declare_locked(std::move(name), arity, kind, rank);
}

SymbolId TermTable::fresh(std::string_view prefix, SymbolKind kind, std::uint32_t start, std::uint32_t rank) {
  std::scoped_lock lock(mutex_);
  for (std::uint32_t n = start;; ++n) {
    std::string name = std::string(prefix) + std::to_string(n);
    if (!by_name_.contains(name)) return declare_locked(std::move(name), 0, kind, rank);
  }
}

SymbolId TermTable::defined_var(std::uint32_t index) {
  std::scoped_lock lock(mutex_);
  if (index == 0) throw Error("defined variables are numbered from 1");
  if (defined_.size() < index) defined_.resize(index, SymbolId{std::numeric_limits<std::uint32_t>::max()});
  SymbolId& slot = defined_[index - 1];
  if (slot.value != std::numeric_limits<std::uint32_t>::max()) return slot;
  std::string prefix = "y";
  while (by_name_.contains(prefix + std::to_string(index))) prefix += "_";
  slot = declare_locked(prefix + std::to_string(index), 0, SymbolKind::Defined, index);
  return slot;
}

std::optional<SymbolId> TermTable::find(std::string_view name) const {
  std::scoped_lock lock(mutex_);
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

TermId TermTable::intern(SymbolId head, std::span<const TermId> args) {
  if (head.value >= symbols_.size()) throw Error("unknown symbol id");
  const Symbol& sym = symbols_[head.value];
  if (sym.arity != args.size()) {
    throw Error("arity mismatch for '" + sym.name + "': expected " + std::to_string(sym.arity) + ", got " +
                std::to_string(args.size()));
  }
  Key key{head.value, {}};
  key.args.reserve(args.size());
  for (auto a : args) key.args.push_back(a.value);

  std::scoped_lock lock(mutex_);
  if (auto it = interned_.find(key); it != interned_.end()) return it->second;

  Node node{head, std::vector<TermId>(args.begin(), args.end()), false, 1};
  node.has_quantified = args.empty() && sym.kind == SymbolKind::Quantified;
  for (auto a : args) {
    const Node& child = terms_[a.value];
    node.has_quantified = node.has_quantified || child.has_quantified;
    const auto max = std::numeric_limits<std::uint64_t>::max();
    node.tree_size = child.tree_size > max - node.tree_size ? max : node.tree_size + child.tree_size;
  }
  const TermId id{terms_.push(std::move(node))};
  interned_.emplace(std::move(key), id);
  return id;
}

bool TermTable::symbol_greater(SymbolId a, SymbolId b) const {
  auto klass = [](SymbolKind k) {
    switch (k) {
      case SymbolKind::Quantified:
        return 4;
      case SymbolKind::Defined:
        return 3;
      case SymbolKind::Parameter:
        return 2;
      case SymbolKind::Fresh:
        return 1;
      case SymbolKind::Function:
        return 0;
    }
    return 0;
  };
  const Symbol& sa = symbol(a);
  const Symbol& sb = symbol(b);
  if (klass(sa.kind) != klass(sb.kind)) return klass(sa.kind) > klass(sb.kind);
  if (sa.rank != sb.rank) return sa.rank > sb.rank;
  return a.value > b.value;
}

namespace {
void render(const TermTable& table, TermId t, std::string& out) {
  const auto args = table.args(t);
  if (args.empty()) {
    out += table.head_symbol(t).name;
    return;
  }
  out += '(';
  out += table.head_symbol(t).name;
  for (auto a : args) {
    out += ' ';
    render(table, a, out);
  }
  out += ')';
}
}  // namespace

std::string to_string(const TermTable& table, TermId t) {
  std::string out;
  render(table, t, out);
  return out;
}

}  // namespace eufui

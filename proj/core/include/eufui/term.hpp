#pragma once

#include <array>
#include <atomic>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace eufui {

/// Role of a symbol within a problem.
///
/// Parameters are kept in the output, quantified symbols are eliminated,
/// defined symbols name explicit DAG definitions, and fresh constants are
/// auxiliary names introduced by the printer or the oracle.
enum class SymbolKind : std::uint8_t { Function, Parameter, Quantified, Defined, Fresh };

struct SymbolId {
  std::uint32_t value = 0;
  friend auto operator<=>(SymbolId, SymbolId) = default;
};

struct TermId {
  std::uint32_t value = 0;
  friend auto operator<=>(TermId, TermId) = default;
};

struct Symbol {
  std::string name;
  std::uint32_t arity = 0;
  SymbolKind kind = SymbolKind::Function;
  // Position in the extended elimination order for quantified symbols, the
  // definition index for defined symbols; zero otherwise.
  std::uint32_t rank = 0;
};

namespace detail {

// Append-only storage whose elements never move. Readers may access any index
// they obtained through a synchronizing operation without taking a lock.
template <typename T>
class StableStore {
 public:
  static constexpr std::size_t kChunkBits = 12;
  static constexpr std::size_t kChunkSize = std::size_t{1} << kChunkBits;
  static constexpr std::size_t kMaxChunks = std::size_t{1} << 14;

  // Caller must hold the owner's write lock.
  std::uint32_t push(T value) {
    const std::size_t index = size_.load(std::memory_order_relaxed);
    const std::size_t chunk = index >> kChunkBits;
    if (chunk >= kMaxChunks) throw std::length_error("term store exhausted");
    if (!chunks_[chunk]) chunks_[chunk] = std::make_unique<T[]>(kChunkSize);
    chunks_[chunk][index & (kChunkSize - 1)] = std::move(value);
    size_.store(index + 1, std::memory_order_release);
    return static_cast<std::uint32_t>(index);
  }

  const T& operator[](std::size_t index) const {
    return chunks_[index >> kChunkBits][index & (kChunkSize - 1)];
  }
  T& mutable_at(std::size_t index) { return chunks_[index >> kChunkBits][index & (kChunkSize - 1)]; }

  std::size_t size() const { return size_.load(std::memory_order_acquire); }

 private:
  std::array<std::unique_ptr<T[]>, kMaxChunks> chunks_{};
  std::atomic<std::size_t> size_{0};
};

}  // namespace detail

/// Hash-consed term DAG plus the symbol table of one problem.
///
/// Structurally equal terms share one dense id, so term equality is id
/// equality. The table is append-only; `intern` and the symbol-creating
/// members are safe to call concurrently, and every accessor is safe to call
/// concurrently with them for ids the caller already holds.
class TermTable {
 public:
  TermTable() = default;
  TermTable(const TermTable&) = delete;
  TermTable& operator=(const TermTable&) = delete;

  /// Declares a new symbol. Throws `Error` if the name is taken or if a
  /// non-function symbol is given a positive arity.
  SymbolId declare(std::string name, std::uint32_t arity, SymbolKind kind, std::uint32_t rank = 0);

  /// Creates a 0-ary symbol named `<prefix><n>` for the smallest n >= `start`
  /// whose name is not taken yet.
  SymbolId fresh(std::string_view prefix, SymbolKind kind, std::uint32_t start = 1,
                 std::uint32_t rank = 0);

  /// The defined symbol of index `index` (1-based). Created on first use and
  /// shared afterwards, so that independent branches name their k-th defined
  /// variable identically.
  SymbolId defined_var(std::uint32_t index);

  std::optional<SymbolId> find(std::string_view name) const;

  TermId intern(SymbolId head, std::span<const TermId> args);
  TermId intern(SymbolId head, std::initializer_list<TermId> args) {
    return intern(head, std::span<const TermId>(args.begin(), args.size()));
  }
  TermId constant(SymbolId symbol) { return intern(symbol, std::span<const TermId>{}); }

  const Symbol& symbol(SymbolId id) const { return symbols_[id.value]; }
  SymbolId head(TermId t) const { return terms_[t.value].head; }
  std::span<const TermId> args(TermId t) const { return terms_[t.value].args; }
  const Symbol& head_symbol(TermId t) const { return symbol(head(t)); }

  bool is_constant(TermId t) const { return terms_[t.value].args.empty(); }
  bool is_quantified(TermId t) const {
    return is_constant(t) && head_symbol(t).kind == SymbolKind::Quantified;
  }
  /// True when some leaf of `t` is a quantified symbol.
  bool mentions_quantified(TermId t) const { return terms_[t.value].has_quantified; }
  /// Number of nodes of `t` seen as a tree (saturates at SIZE_MAX).
  std::uint64_t tree_size(TermId t) const { return terms_[t.value].tree_size; }

  std::size_t term_count() const { return terms_.size(); }
  std::size_t symbol_count() const { return symbols_.size(); }

  /// Strict total order on 0-ary symbols: quantified (by rank) above defined
  /// (by index) above parameters above fresh constants, ties broken by id.
  bool symbol_greater(SymbolId a, SymbolId b) const;

 private:
  struct Node {
    SymbolId head;
    std::vector<TermId> args;
    bool has_quantified = false;
    std::uint64_t tree_size = 1;
  };
  struct Key {
    std::uint32_t head;
    std::vector<std::uint32_t> args;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  SymbolId declare_locked(std::string name, std::uint32_t arity, SymbolKind kind, std::uint32_t rank);

  mutable std::mutex mutex_;
  detail::StableStore<Symbol> symbols_;
  detail::StableStore<Node> terms_;
  std::unordered_map<std::string, SymbolId> by_name_;
  std::unordered_map<Key, TermId, KeyHash> interned_;
  std::vector<SymbolId> defined_;
};

/// Renders a term in prefix s-expression syntax.
std::string to_string(const TermTable& table, TermId t);

}  // namespace eufui

template <>
struct std::hash<eufui::TermId> {
  std::size_t operator()(eufui::TermId t) const noexcept { return std::hash<std::uint32_t>{}(t.value); }
};

template <>
struct std::hash<eufui::SymbolId> {
  std::size_t operator()(eufui::SymbolId s) const noexcept { return std::hash<std::uint32_t>{}(s.value); }
};

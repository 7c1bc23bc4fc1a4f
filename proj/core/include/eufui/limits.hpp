#pragma once

#include <chrono>
#include <cstddef>
#include <optional>

#include "eufui/error.hpp"

namespace eufui {

struct Limits {
  std::size_t max_branches = 1'000'000;
  std::size_t max_clauses = 100'000;
  std::size_t max_cdags = 1'000'000;
  std::size_t max_cubes = std::size_t{1} << 20;
  std::optional<std::chrono::steady_clock::time_point> deadline;

  static Limits with_timeout(std::chrono::milliseconds budget) {
    Limits limits;
    limits.deadline = std::chrono::steady_clock::now() + budget;
    return limits;
  }

  void check_time() const {
    if (deadline && std::chrono::steady_clock::now() > *deadline) {
      throw LimitExceeded(LimitKind::Time, "time budget exhausted");
    }
  }
};

}  // namespace eufui

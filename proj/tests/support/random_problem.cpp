#include "random_problem.hpp"

#include <sstream>
#include <vector>

namespace eufui::testing {

namespace {

struct Signature {
  std::vector<std::pair<std::string, std::size_t>> functions;
  std::vector<std::string> evars;
  std::vector<std::string> params;
};

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::string random_term(std::mt19937_64& rng, const Signature& sig, std::size_t depth, bool need_e) {
  if (depth == 0 || pick(rng, 0, 2) == 0) {
    if (need_e || pick(rng, 0, 1) == 0) return sig.evars[pick(rng, 0, sig.evars.size() - 1)];
    return sig.params[pick(rng, 0, sig.params.size() - 1)];
  }
  const auto& [name, arity] = sig.functions[pick(rng, 0, sig.functions.size() - 1)];
  const std::size_t forced = need_e ? pick(rng, 0, arity - 1) : arity;
  std::string out = "(" + name;
  for (std::size_t i = 0; i < arity; ++i) out += " " + random_term(rng, sig, depth - 1, i == forced);
  return out + ")";
}

std::string render(const Signature& sig, const std::vector<std::string>& asserts) {
  std::ostringstream out;
  out << "(declare-sort U 0)\n";
  for (const auto& [name, arity] : sig.functions) {
    out << "(declare-fun " << name << " (";
    for (std::size_t i = 0; i < arity; ++i) out << (i ? " U" : "U");
    out << ") U)\n";
  }
  for (const auto& e : sig.evars) out << "(declare-const " << e << " U)\n";
  for (const auto& z : sig.params) out << "(declare-const " << z << " U)\n";
  out << "(eliminate";
  for (const auto& e : sig.evars) out << ' ' << e;
  out << ")\n";
  for (const auto& a : asserts) out << "(assert " << a << ")\n";
  return out.str();
}

}  // namespace

std::string random_problem(std::mt19937_64& rng, const RandomShape& shape) {
  Signature sig;
  const std::size_t nf = pick(rng, 1, shape.max_functions);
  for (std::size_t i = 0; i < nf; ++i) {
    const std::size_t arity = shape.unary_only ? 1 : pick(rng, 1, shape.max_arity);
    sig.functions.emplace_back("f" + std::to_string(i), arity);
  }
  const std::size_t ne = pick(rng, 1, shape.max_evars);
  for (std::size_t i = 0; i < ne; ++i) sig.evars.push_back("e" + std::to_string(i));
  const std::size_t np = pick(rng, 1, shape.max_params);
  for (std::size_t i = 0; i < np; ++i) sig.params.push_back("z" + std::to_string(i));

  std::vector<std::string> asserts;
  const std::size_t nl = pick(rng, 1, shape.max_literals);
  for (std::size_t i = 0; i < nl; ++i) {
    const std::string lhs = random_term(rng, sig, shape.max_depth, true);
    const std::string rhs = random_term(rng, sig, shape.max_depth, false);
    const std::string eq = "(= " + lhs + " " + rhs + ")";
    asserts.push_back(pick(rng, 1, 100) <= shape.diseq_percent ? "(not " + eq + ")" : eq);
  }
  return render(sig, asserts);
}

std::string random_unary_problem(std::mt19937_64& rng, std::size_t max_literals) {
  RandomShape shape;
  shape.unary_only = true;
  shape.max_literals = max_literals;
  shape.max_depth = 3;
  shape.diseq_percent = 10;
  return random_problem(rng, shape);
}

}  // namespace eufui::testing

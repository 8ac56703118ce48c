#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wittkit/poly.hpp"

namespace wittkit {

/// A polynomial prepared for repeated evaluation in arbitrary commutative
/// rings.
///
/// `Ops` must provide `T constant(const Rational&)`, `T add(const T&, const T&)`
/// and `T mul(const T&, const T&)`. Evaluation is a recursive multivariate
/// Horner scheme over the lexicographic term order, so the number of ring
/// multiplications is roughly the number of terms times the variable count
/// instead of the sum of all term degrees. Powers of each argument are
/// memoized per call. The term order is computed once here.
class EvalPlan {
 public:
  EvalPlan() = default;
  explicit EvalPlan(const Poly& f) : nvars_(f.nvars()) {
    std::vector<const Poly::Term*> terms;
    terms.reserve(f.num_terms());
    for (const auto& t : f.terms()) terms.push_back(&t);
    std::sort(terms.begin(), terms.end(), [](const Poly::Term* a, const Poly::Term* b) {
      return a->mono.exponents() > b->mono.exponents();
    });
    exps_.reserve(terms.size() * nvars_);
    coeffs_.reserve(terms.size());
    max_exp_.assign(nvars_, 0);
    for (const auto* t : terms) {
      exps_.insert(exps_.end(), t->mono.exponents().begin(), t->mono.exponents().end());
      coeffs_.push_back(t->coeff);
      for (std::size_t v = 0; v < nvars_; ++v) max_exp_[v] = std::max(max_exp_[v], t->mono[v]);
    }
  }

  std::size_t nvars() const noexcept { return nvars_; }
  std::size_t num_terms() const noexcept { return coeffs_.size(); }

  template <class T, class Ops>
  T operator()(std::span<const T> args, Ops& ops) const {
    assert(args.size() == nvars_);
    if (coeffs_.empty()) return ops.constant(Rational(0));

    // powers[var][e] holds args[var]^e once computed; built by halving.
    std::vector<std::vector<std::optional<T>>> powers(nvars_);
    for (std::size_t v = 0; v < nvars_; ++v) powers[v].resize(max_exp_[v] + 1);
    auto power = [&](auto&& self, std::size_t var, std::uint32_t e) -> const T& {
      auto& slot = powers[var][e];
      if (slot) return *slot;
      if (e == 1) return slot.emplace(args[var]);
      const T& half = self(self, var, e / 2);
      T result = ops.mul(half, half);
      if (e & 1U) result = ops.mul(result, args[var]);
      return powers[var][e].emplace(std::move(result));
    };

    auto exp = [&](std::size_t term, std::size_t var) { return exps_[term * nvars_ + var]; };
    auto rec = [&](auto&& self, std::size_t begin, std::size_t end, std::size_t var) -> T {
      if (var == nvars_) {
        assert(end - begin == 1);
        return ops.constant(coeffs_[begin]);
      }
      std::size_t i = begin;
      std::uint32_t prev = exp(i, var);
      std::size_t j = i;
      while (j < end && exp(j, var) == prev) ++j;
      T acc = self(self, i, j, var + 1);
      i = j;
      while (i < end) {
        std::uint32_t e = exp(i, var);
        j = i;
        while (j < end && exp(j, var) == e) ++j;
        acc = ops.add(ops.mul(acc, power(power, var, prev - e)), self(self, i, j, var + 1));
        prev = e;
        i = j;
      }
      if (prev > 0) acc = ops.mul(acc, power(power, var, prev));
      return acc;
    };
    return rec(rec, 0, coeffs_.size(), 0);
  }

 private:
  std::size_t nvars_ = 0;
  std::vector<std::uint32_t> exps_;  // row-major, one row per term, descending lex
  std::vector<Rational> coeffs_;
  std::vector<std::uint32_t> max_exp_;
};

/// One-off evaluation of `f` at `args`; see EvalPlan.
template <class T, class Ops>
T evaluate(const Poly& f, std::span<const T> args, Ops& ops) {
  return EvalPlan(f)(args, ops);
}

}  // namespace wittkit

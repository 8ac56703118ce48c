#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wittkit/ring.hpp"
#include "wittkit/witt.hpp"

namespace wittkit {

enum class CheckStatus { kPass, kFail, kSkip };
const char* status_name(CheckStatus s) noexcept;

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::kPass;
  /// Witness data for failures, the reason for skips, facts for passes.
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  void add(std::string name, bool ok, std::string detail = {});
  void skip(std::string name, std::string reason);
  /// No check failed (skips do not count against a suite).
  bool passed() const;
  std::size_t count(CheckStatus s) const;
  void append(const SuiteReport& other);
};

/// For f: A ->> B with sections[i] a preimage of the i-th generator of B,
/// lifts random vectors of W_n(B) componentwise through the sections and
/// checks that W_n(f) sends the lift back, and that W_n(f) is multiplicative
/// on the lifts.
SuiteReport check_closed_immersion(const RingHom& f, const std::vector<Poly>& sections, unsigned p,
                                   unsigned n, unsigned samples = 20, std::uint64_t seed = 1);

/// Socle of F_p (x) W_n(Z) = F_p[x_1..x_n]/(x_i x_j) by linear algebra over F_p.
SuiteReport check_socle(unsigned p, unsigned n);

/// Multiplication by [a] acts on W_n(A) as (v_i) -> (a^(p^i) v_i); checks
/// that formula by Witt arithmetic on the degree <= D slice and that the
/// map is injective there (rank over Q). Only one-element sequences are
/// checked; longer ones are reported as a skip.
SuiteReport check_teich_regular(const RingPtr& a, const std::vector<Poly>& sequence, unsigned p,
                                unsigned n, unsigned degree_bound);

/// In W_n(Z), n >= 1: V(1) (V(1) - p) = 0 with both factors nonzero.
SuiteReport check_not_normal(unsigned p, unsigned n = 1);

/// Flatness, surjectivity and integrality failures of Lambda_1 on the small
/// corpus, by point counts and the mod-p fiber, plus documented skips for
/// properties with no finite computation.
SuiteReport counterexample_suite(unsigned p);

/// W_n(A[1/fg]) against W_n(A)[1/[f][g]]: the localization is certified,
/// [f][g] = [fg], and W_n(A[1/f]) and W_n(A[1/g]) map compatibly into it.
SuiteReport check_etale_fiber_products(const RingPtr& a, const Poly& f, const Poly& g, unsigned p,
                                       unsigned n);

/// Suite names accepted by run_suite, in run order.
const std::vector<std::string>& suite_names();
/// Runs a named suite (or "all") on the built-in corpus. Each suite draws from
/// its own stream derived from `seed`; "all" runs the suites concurrently.
/// Throws Error(kInvalidArgument) for an unknown name.
SuiteReport run_suite(const std::string& name, unsigned p, unsigned n, std::uint64_t seed);

}  // namespace wittkit

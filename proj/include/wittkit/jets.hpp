#pragma once

#include <string>
#include <vector>

#include "wittkit/poly.hpp"
#include "wittkit/ring.hpp"

namespace wittkit {

/// Level-n arithmetic jets of A for the prime p.
///
/// Jet polynomials live on level-major variables: the k variables of A, then
/// d1_<name> for each, up to dn_<name>. Index of delta^j x_i is j*k + i, so a
/// polynomial keeps its meaning when n grows.
struct JetCtx {
  unsigned p = 2;
  unsigned n = 0;
  RingPtr ring;

  JetCtx() = default;
  JetCtx(unsigned p, unsigned n, RingPtr ring);

  std::size_t base_vars() const { return ring->nvars(); }
  std::size_t nvars() const { return base_vars() * (n + 1); }
  std::vector<std::string> var_names() const;
  std::size_t index(unsigned level, std::size_t var) const { return level * base_vars() + var; }
  Poly var(unsigned level, std::size_t i) const { return Poly::variable(nvars(), index(level, i)); }
  /// A polynomial in the variables of A, viewed on the jet variables.
  Poly embed(const Poly& f) const { return f.resized(nvars()); }
  JetCtx with_level(unsigned n2) const { return JetCtx(p, n2, ring); }
};

/// "d<k>_<name>", or the name itself at level 0.
std::string jet_var_name(const std::string& name, unsigned level);

/// Highest delta level occurring in f (0 for constants).
unsigned jet_depth(const JetCtx& ctx, const Poly& f);

/// phi^i: delta^j x -> (delta^j x)^p + p delta^(j+1) x. Throws
/// Error(kLevelExceeded) when depth(f) + i > n.
Poly phi_apply(const JetCtx& ctx, const Poly& f, unsigned i = 1);
/// delta f = (phi(f) - f^p) / p. Throws Error(kLevelExceeded) when
/// depth(f) >= n.
Poly delta_apply(const JetCtx& ctx, const Poly& f);
Poly delta_power(const JetCtx& ctx, const Poly& f, unsigned j);

struct JetPresentation {
  JetCtx ctx;
  RingPtr ring;                             // over Z
  std::vector<std::vector<Poly>> relations;  // relations[j] = delta^j f_m
  std::vector<Poly> phi_images;              // phi on variables below level n

  /// delta(g r) = g^p delta r + r^p delta g + p delta g delta r and the sum
  /// rule hold symbolically for each relation r below level n, so the ideal
  /// generated level by level is delta-stable.
  bool delta_stable(const std::vector<Poly>& multipliers) const;
};

/// Lambda_n (.) A as base[d^j x_i]/(d^j f_m). A residue base Z/m contributes
/// m as an ordinary relation, so the result is always over Z.
JetPresentation jet_presentation(const JetCtx& ctx,
                                 RewriteMode mode = RewriteMode::kPresentationOnly);

/// G_i(y_0..y_i) with phi^i(f) = G_i(f, delta f, ..., delta^i f); vanishes at 0.
Poly phi_in_delta_coordinates(unsigned p, unsigned i);

/// cgh_i: A -> Lambda_n (.) A, x -> phi^i(x). Well-definedness is certified
/// through phi_in_delta_coordinates even when the jet ring has no rewrite.
RingHom coghost(const JetPresentation& jets, unsigned i);
/// A^(x)(n+1) -> Lambda_n (.) A; copy k of x is named x_k and maps to phi^k(x).
RingHom coghost_total(const JetPresentation& jets);

/// sum_{i<=n} p^i t_i^(p^(n+1-i)) with t = from_ghost(x, phi x, ..., phi^n x).
Poly rcgh_lift(const JetCtx& ctx, std::size_t var);
/// A -> (Lambda_n (.) A)/p^(n+1).
RingHom rcgh(const JetPresentation& jets);
/// phi^(n+1)(x) - rcgh_lift(x) is divisible by p^(n+1) on level n+1 jets.
bool rcgh_consistent(const JetCtx& ctx);

/// Special fiber of the jets of a lift of A (base Z/p^m) at level m-1.
/// `lift` optionally replaces the relations of A by integral lifts, which
/// must agree with them mod p^m. Throws Error(kBadBase).
RingPtr greenberg(const RingPtr& a, unsigned p, const std::vector<Poly>* lift = nullptr,
                  RewriteMode mode = RewriteMode::kComplete);

struct EtaleCheckReport {
  bool passed = false;
  std::vector<std::string> lines;
};
/// F_p (x) Lambda_n(A[1/f]) against (F_p (x) Lambda_n A) (x)_A A[1/f]:
/// solves delta^j u from delta^j(u f - 1) = 0 mod p and checks both
/// composites on generators. Throws Error(kVerificationFailed) with the
/// offending generator.
EtaleCheckReport jet_mod_p_etale_check(const RingPtr& a, const Poly& f, unsigned p, unsigned n);

}  // namespace wittkit

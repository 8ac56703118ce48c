#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wittkit/poly.hpp"

namespace wittkit {

/// Coefficient base of a presentation: Z, Z/m, or Z[1/S] for a finite set of
/// primes S.
class Scalar {
 public:
  enum class Kind { kIntegers, kIntegersMod, kIntegersWithInverted };

  static Scalar integers() { return Scalar(); }
  static Scalar integers_mod(const Integer& m);
  static Scalar integers_with_inverted(std::vector<Integer> primes);
  /// Accepts "Z", "Z/<m>" and "Z[1/p,1/q,...]".
  static Scalar parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  const Integer& modulus() const noexcept { return modulus_; }
  const std::vector<Integer>& inverted() const noexcept { return inverted_; }

  bool admits(const Rational& c) const;
  /// Unit of the base, i.e. an element whose inverse also admits.
  bool is_unit(const Rational& c) const;
  /// Canonical representative; residues mod m live in [0, m).
  Rational normalize(const Rational& c) const;
  /// Whether a field of characteristic `ell` is an algebra over this base.
  bool maps_to_char(unsigned long ell) const;

  std::string to_string() const;
  friend bool operator==(const Scalar&, const Scalar&) = default;

 private:
  Kind kind_ = Kind::kIntegers;
  Integer modulus_ = 0;
  std::vector<Integer> inverted_;
};

/// `lead * lhs + tail = 0` in the ring, oriented as `lead * lhs -> -tail`.
/// Every tail term is strictly smaller than lhs in graded-lex order.
struct RewriteRule {
  Monomial lhs;
  Integer lead;
  Poly tail;

  Poly as_poly() const;
};

struct CompletionBudget {
  std::size_t max_rules = 256;
  std::size_t max_steps = 20000;
  std::uint32_t max_degree = 96;
};

/// Strong Groebner-style rewrite system over Z (or Z[1/S] with unit leads).
///
/// A term c*m with lhs | m is rewritten by replacing the multiple q*lead of
/// its coefficient, where c = q*lead + r and 0 <= r < lead. When the system is
/// complete (all S- and G-polynomials reduce to zero) normal forms are unique.
class RewriteSystem {
 public:
  /// Bounded completion of the ideal generated by `generators` over `base`.
  /// Residue bases contribute their modulus as a constant generator. Returns
  /// nullopt when the budget is exhausted.
  static std::optional<RewriteSystem> complete(const std::vector<Poly>& generators,
                                               const Scalar& base, std::size_t nvars,
                                               const CompletionBudget& budget = {});

  Poly reduce(const Poly& f) const;
  std::span<const RewriteRule> rules() const noexcept { return rules_; }
  std::size_t nvars() const noexcept { return nvars_; }

  /// Re-runs the critical-pair test on the stored rules.
  bool locally_confluent() const;

 private:
  RewriteSystem(std::size_t nvars, const Scalar& base) : nvars_(nvars), base_(base) {}

  std::size_t nvars_ = 0;
  Scalar base_;
  std::vector<RewriteRule> rules_;
  friend class Completion;
};

class FPRing;
using RingPtr = std::shared_ptr<const FPRing>;

enum class RewriteMode { kComplete, kPresentationOnly };

/// Finitely presented commutative algebra base[vars]/(relations).
///
/// Rings are immutable and shared through RingPtr. When bounded completion
/// of the relations succeeds the ring carries a confluent rewrite system and
/// supports equality; otherwise it is "presentation-only" and supports
/// evaluation (homomorphisms, point counts) but equality queries throw
/// Error(kPresentationOnly).
class FPRing {
 public:
  static RingPtr make(Scalar base, std::vector<std::string> vars, std::vector<Poly> relations,
                      RewriteMode mode = RewriteMode::kComplete,
                      const CompletionBudget& budget = {});
  static RingPtr parse(Scalar base, std::vector<std::string> vars,
                       const std::vector<std::string>& relations,
                       RewriteMode mode = RewriteMode::kComplete);
  static RingPtr polynomial(std::vector<std::string> vars, Scalar base = Scalar::integers());
  static RingPtr integers() { return polynomial({}); }

  const Scalar& base() const noexcept { return base_; }
  const std::vector<std::string>& vars() const noexcept { return vars_; }
  std::size_t nvars() const noexcept { return vars_.size(); }
  const std::vector<Poly>& relations() const noexcept { return relations_; }
  bool has_rewrite() const noexcept { return rewrite_.has_value(); }
  const RewriteSystem& rewrite() const;
  bool is_free() const noexcept;

  std::optional<std::size_t> var_index(std::string_view name) const;
  Poly var(std::string_view name) const;
  Poly constant(const Rational& c) const { return Poly(nvars(), c); }
  Poly parse_poly(std::string_view text) const;
  std::string format(const Poly& f) const;

  /// Unique normal form; throws Error(kPresentationOnly) without a rewrite.
  Poly normal_form(const Poly& f) const;
  /// Normal form when available, otherwise base-coefficient normalization.
  Poly canonical(const Poly& f) const;
  /// Throws Error(kInvalidArgument) if a coefficient is outside the base.
  void check_coefficients(const Poly& f) const;

  /// Same base, variables and relations.
  friend bool same_presentation(const FPRing& a, const FPRing& b);

 private:
  FPRing() = default;

  Scalar base_;
  std::vector<std::string> vars_;
  std::vector<Poly> relations_;
  std::optional<RewriteSystem> rewrite_;
};

/// Element of an FPRing, stored canonicalized.
class RingElem {
 public:
  RingElem() = default;
  RingElem(RingPtr ring, const Poly& value);
  static RingElem of(RingPtr ring, const Rational& c);
  static RingElem parse(RingPtr ring, std::string_view text);

  const RingPtr& ring() const noexcept { return ring_; }
  const Poly& value() const noexcept { return value_; }

  RingElem operator+(const RingElem& o) const;
  RingElem operator-(const RingElem& o) const;
  RingElem operator*(const RingElem& o) const;
  RingElem operator-() const;
  RingElem pow(std::uint64_t k) const;
  RingElem scaled(const Rational& c) const;
  /// Divides the normal form coefficientwise; exact when the standard
  /// monomials of a monic rewrite system form a Z-basis.
  RingElem exact_div(const Integer& k) const;

  /// Throws Error(kPresentationOnly) when the ring has no rewrite system.
  bool is_zero() const;
  friend bool operator==(const RingElem& a, const RingElem& b);

  std::string to_string() const;

 private:
  struct Trusted {};
  RingElem(RingPtr ring, Poly value, Trusted) : ring_(std::move(ring)), value_(std::move(value)) {}

  RingPtr ring_;
  Poly value_;
};

RingElem normal_form(const RingElem& e);

/// Ring map determined by generator images (polynomials in codomain
/// variables). Construction checks that every domain relation maps to zero
/// whenever the codomain supports equality.
class RingHom {
 public:
  RingHom() = default;
  RingHom(RingPtr domain, RingPtr codomain, std::vector<Poly> images);
  static RingHom parse(RingPtr domain, RingPtr codomain, const std::vector<std::string>& images);
  static RingHom identity(const RingPtr& ring);

  const RingPtr& domain() const noexcept { return domain_; }
  const RingPtr& codomain() const noexcept { return codomain_; }
  const std::vector<Poly>& images() const noexcept { return images_; }
  bool relations_checked() const noexcept { return checked_; }

  Poly apply(const Poly& f) const;
  RingElem operator()(const RingElem& e) const;

  /// this after `first`: domain(first) -> codomain(this).
  RingHom after(const RingHom& first) const;
  /// Same images on every generator (codomain normal forms).
  bool agrees_with(const RingHom& other) const;

 private:
  RingPtr domain_;
  RingPtr codomain_;
  std::vector<Poly> images_;
  bool checked_ = false;
};

/// A with a fresh variable u and relation u*f - 1, plus A -> A[1/f].
struct Localization {
  RingPtr ring;
  RingHom canonical;
  std::size_t inverse_var = 0;
};
Localization localize(const RingPtr& a, const Poly& f, std::string inverse_name = {});

/// A x B via an idempotent e with e = 0 on the A-part and e = 1 on the B-part.
struct ProductRing {
  RingPtr ring;
  RingHom to_first;
  RingHom to_second;
};
ProductRing product_ring(const RingPtr& a, const RingPtr& b);

/// A (x)_base B on the disjoint union of the variables.
RingPtr tensor_product(const RingPtr& a, const RingPtr& b);

/// The same presentation over Z/m. Requires an Integers base.
RingPtr mod_fiber(const RingPtr& a, const Integer& m,
                  RewriteMode mode = RewriteMode::kComplete);

/// Number of points of Spec A over the field with q elements (q a prime power
/// at most 128). Throws Error(kSearchTooLarge) for more than four variables or
/// more than 2^26 candidate assignments.
std::uint64_t count_points(const RingPtr& a, unsigned q);

/// Both presentations share base and variables and generate the same ideal.
/// Requires rewrite systems on both sides.
bool same_ideal(const RingPtr& a, const RingPtr& b);

/// Fresh name not among `taken`, starting from `stem`.
std::string fresh_name(std::string stem, const std::vector<std::string>& taken);

}  // namespace wittkit

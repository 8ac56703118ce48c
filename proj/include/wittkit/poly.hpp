#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace wittkit {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exponent vector over a fixed number of variables.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps);

  static Monomial variable(std::size_t nvars, std::size_t index,
                           std::uint32_t power = 1);

  std::size_t size() const noexcept { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return degree_ == 0; }
  const std::vector<std::uint32_t>& exponents() const noexcept { return exps_; }

  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  /// Requires `other.divides(*this)`.
  Monomial operator/(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  Monomial pow(std::uint32_t k) const;
  /// Pads with zero exponents or drops trailing variables (which must be absent).
  Monomial resized(std::size_t nvars) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  std::size_t hash() const noexcept;

 private:
  std::vector<std::uint32_t> exps_;
  std::uint32_t degree_ = 0;
};

/// Graded lexicographic order with the first variable most significant.
/// Returns negative, zero or positive like strcmp.
int grlex_compare(const Monomial& a, const Monomial& b);

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return grlex_compare(a, b) > 0;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept sorted in descending graded-lex order with no zero
/// coefficients, so structural equality is mathematical equality. Ring code
/// works almost exclusively with integral polynomials; rational coefficients
/// appear only over bases where p is inverted.
class Poly {
 public:
  struct Term {
    Monomial mono;
    Rational coeff;
  };

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}
  Poly(std::size_t nvars, const Rational& c);

  static Poly variable(std::size_t nvars, std::size_t index);
  static Poly monomial(const Monomial& m, const Rational& c);
  /// Combines like terms and sorts; zero coefficients are dropped.
  static Poly from_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const noexcept { return nvars_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t num_terms() const noexcept { return terms_.size(); }
  std::span<const Term> terms() const noexcept { return terms_; }
  const Term& leading() const { return terms_.front(); }

  bool is_constant() const noexcept;
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;
  std::uint32_t total_degree() const noexcept;
  std::uint32_t degree_in(std::size_t var) const noexcept;
  bool uses_var(std::size_t var) const noexcept { return degree_in(var) > 0; }
  bool is_integral() const noexcept;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);

  Poly scaled(const Rational& c) const;
  Poly times_monomial(const Monomial& m, const Rational& c) const;
  Poly pow(std::uint64_t k) const;

  /// Replaces variable i by images[i]; all images share one variable count.
  Poly substitute(std::span<const Poly> images) const;
  Poly resized(std::size_t nvars) const;
  /// Moves variable i to index_map[i] in a ring with `new_nvars` variables.
  Poly remapped(std::span<const std::size_t> index_map, std::size_t new_nvars) const;

  friend bool operator==(const Poly& a, const Poly& b);

 private:
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

/// Divides every coefficient by k; throws Error(kNotDivisible) naming the
/// first offending term when some quotient is not an integer.
Poly exact_div(const Poly& f, const Integer& k);

/// Canonical text: descending graded-lex terms, `*` between factors, `^` for
/// powers, rational coefficients as `a/b`.
std::string to_string(const Poly& f, std::span<const std::string> names);

/// Parses the expression grammar (integers, identifiers, + - * / ^, parens).
/// Division is only allowed by a nonzero constant. Throws Error(kParse).
Poly parse_poly(std::string_view text, std::span<const std::string> names);

bool is_identifier(std::string_view name);

Integer ipow(const Integer& base, std::uint64_t k);
Integer ipow(unsigned long base, std::uint64_t k);

}  // namespace wittkit

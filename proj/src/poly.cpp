#include "wittkit/poly.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>
#include <unordered_map>

#include "wittkit/error.hpp"
#include "wittkit/eval.hpp"

namespace wittkit {

const char* kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kNotDivisible: return "NotDivisible";
    case ErrorKind::kPresentationOnly: return "PresentationOnly";
    case ErrorKind::kSearchTooLarge: return "SearchTooLarge";
    case ErrorKind::kCtxMismatch: return "CtxMismatch";
    case ErrorKind::kNotInGhostImage: return "NotInGhostImage";
    case ErrorKind::kCongruenceFailed: return "CongruenceFailed";
    case ErrorKind::kLengthError: return "LengthError";
    case ErrorKind::kLevelExceeded: return "LevelExceeded";
    case ErrorKind::kBadBase: return "BadBase";
    case ErrorKind::kIsoFailed: return "IsoFailed";
    case ErrorKind::kVerificationFailed: return "VerificationFailed";
    case ErrorKind::kCocycleFailed: return "CocycleFailed";
  }
  return "Error";
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {
  for (auto e : exps_) degree_ += e;
}

Monomial Monomial::variable(std::size_t nvars, std::size_t index, std::uint32_t power) {
  Monomial m(nvars);
  m.exps_[index] = power;
  m.degree_ = power;
  return m;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  r.degree_ += other.degree_;
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    assert(r.exps_[i] >= other.exps_[i]);
    r.exps_[i] -= other.exps_[i];
  }
  r.degree_ -= other.degree_;
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  std::vector<std::uint32_t> e(exps_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(exps_[i], other.exps_[i]);
  return Monomial(std::move(e));
}

Monomial Monomial::pow(std::uint32_t k) const {
  Monomial r(*this);
  for (auto& e : r.exps_) e *= k;
  r.degree_ *= k;
  return r;
}

Monomial Monomial::resized(std::size_t nvars) const {
  std::vector<std::uint32_t> e(nvars, 0);
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (i < nvars) {
      e[i] = exps_[i];
    } else if (exps_[i] != 0) {
      throw Error(ErrorKind::kInvalidArgument, "cannot drop a variable that occurs");
    }
  }
  return Monomial(std::move(e));
}

std::size_t Monomial::hash() const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (auto e : exps_) {
    h ^= e;
    h *= 1099511628211ULL;
  }
  return h;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  const auto& ea = a.exponents();
  const auto& eb = b.exponents();
  for (std::size_t i = 0; i < ea.size(); ++i)
    if (ea[i] != eb[i]) return ea[i] < eb[i] ? -1 : 1;
  return 0;
}

// -------------------------------------------------------------------- Poly

Poly::Poly(std::size_t nvars, const Rational& c) : nvars_(nvars) {
  if (c != 0) terms_.push_back({Monomial(nvars), c});
}

Poly Poly::variable(std::size_t nvars, std::size_t index) {
  Poly p(nvars);
  p.terms_.push_back({Monomial::variable(nvars, index), Rational(1)});
  return p;
}

Poly Poly::monomial(const Monomial& m, const Rational& c) {
  Poly p(m.size());
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(std::size_t nvars, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return grlex_compare(a.mono, b.mono) > 0;
  });
  Poly p(nvars);
  for (auto& t : terms) {
    assert(t.mono.size() == nvars);
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

bool Poly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Rational Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return Rational(0);
}

Rational Poly::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) {
                               return grlex_compare(t.mono, key) > 0;
                             });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return Rational(0);
}

std::uint32_t Poly::total_degree() const noexcept {
  return terms_.empty() ? 0 : terms_.front().mono.degree();
}

std::uint32_t Poly::degree_in(std::size_t var) const noexcept {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono[var]);
  return d;
}

bool Poly::is_integral() const noexcept {
  for (const auto& t : terms_)
    if (t.coeff.get_den() != 1) return false;
  return true;
}

namespace {

template <class Combine>
std::vector<Poly::Term> merge_terms(const std::vector<Poly::Term>& a,
                                    const std::vector<Poly::Term>& b, Combine sign) {
  std::vector<Poly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    int c = grlex_compare(a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back({b[j].mono, sign(b[j].coeff)});
      ++j;
    } else {
      Rational s = a[i].coeff + sign(b[j].coeff);
      if (s != 0) out.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back({b[j].mono, sign(b[j].coeff)});
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& other) {
  assert(nvars_ == other.nvars_);
  if (other.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, other.terms_, [](const Rational& c) { return c; });
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  assert(nvars_ == other.nvars_);
  if (other.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, other.terms_, [](const Rational& c) { return Rational(-c); });
  return *this;
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

// Univariate integral product by Kronecker substitution: pack each factor
// into one integer at x = 2^bits, multiply, and read off balanced digits.
std::vector<Poly::Term> kronecker_product(const std::vector<Poly::Term>& a,
                                          const std::vector<Poly::Term>& b) {
  auto max_bits = [](const std::vector<Poly::Term>& ts) {
    std::size_t m = 0;
    for (const auto& t : ts) m = std::max(m, mpz_sizeinbase(t.coeff.get_num_mpz_t(), 2));
    return m;
  };
  auto len_bits = mpz_sizeinbase(Integer(std::min(a.size(), b.size())).get_mpz_t(), 2);
  const std::size_t bits = max_bits(a) + max_bits(b) + len_bits + 2;
  auto pack = [bits](const std::vector<Poly::Term>& ts) {
    Integer r = 0;
    Integer shifted;
    for (const auto& t : ts) {
      mpz_mul_2exp(shifted.get_mpz_t(), t.coeff.get_num_mpz_t(), bits * t.mono[0]);
      r += shifted;
    }
    return r;
  };
  Integer v = pack(a) * pack(b);
  const Integer half = Integer(1) << (bits - 1);
  const Integer full = Integer(1) << bits;
  std::vector<Poly::Term> out;
  Integer digit;
  for (std::uint32_t e = 0; sgn(v) != 0; ++e) {
    mpz_fdiv_r_2exp(digit.get_mpz_t(), v.get_mpz_t(), bits);
    if (digit >= half) digit -= full;
    if (sgn(digit) != 0) {
      out.push_back({Monomial::variable(1, 0, e), Rational(digit)});
      v -= digit;
    }
    mpz_fdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), bits);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

Poly operator*(const Poly& a, const Poly& b) {
  assert(a.nvars_ == b.nvars_);
  Poly r(a.nvars_);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  if (a.terms_.size() == 1 || b.terms_.size() == 1) {
    const Poly& single = a.terms_.size() == 1 ? a : b;
    const Poly& other = a.terms_.size() == 1 ? b : a;
    return other.times_monomial(single.terms_[0].mono, single.terms_[0].coeff);
  }
  std::vector<Poly::Term> terms;
  const bool integral = a.is_integral() && b.is_integral();
  if (integral && a.nvars_ == 1 && a.terms_.size() >= 24 && b.terms_.size() >= 24) {
    r.terms_ = kronecker_product(a.terms_, b.terms_);
    return r;
  }
  if (integral && a.nvars_ == 1) {
    std::vector<Integer> dense(a.total_degree() + b.total_degree() + 1);
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_)
        mpz_addmul(dense[s.mono[0] + t.mono[0]].get_mpz_t(), s.coeff.get_num_mpz_t(),
                   t.coeff.get_num_mpz_t());
    for (std::size_t e = dense.size(); e-- > 0;)
      if (dense[e] != 0)
        terms.push_back({Monomial::variable(1, 0, static_cast<std::uint32_t>(e)), Rational(dense[e])});
    r.terms_ = std::move(terms);
    return r;
  }
  if (integral) {
    // Integer fast path: accumulate numerators with fused multiply-add.
    std::unordered_map<Monomial, Integer, MonomialHash> acc;
    acc.reserve(a.terms_.size() * b.terms_.size() / 2 + 1);
    for (const auto& s : a.terms_) {
      const Integer& cs = s.coeff.get_num();
      for (const auto& t : b.terms_) {
        auto& slot = acc[s.mono * t.mono];
        mpz_addmul(slot.get_mpz_t(), cs.get_mpz_t(), t.coeff.get_num().get_mpz_t());
      }
    }
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) terms.push_back({m, Rational(c)});
  } else {
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) acc[s.mono * t.mono] += s.coeff * t.coeff;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) terms.push_back({m, c});
  }
  std::sort(terms.begin(), terms.end(), [](const Poly::Term& x, const Poly::Term& y) {
    return grlex_compare(x.mono, y.mono) > 0;
  });
  r.terms_ = std::move(terms);
  return r;
}

Poly& Poly::operator*=(const Poly& other) {
  *this = *this * other;
  return *this;
}

Poly Poly::scaled(const Rational& c) const {
  if (c == 0) return Poly(nvars_);
  Poly r(*this);
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Poly Poly::times_monomial(const Monomial& m, const Rational& c) const {
  if (c == 0) return Poly(nvars_);
  Poly r(nvars_);
  r.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves the graded-lex order.
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;
}

Poly Poly::pow(std::uint64_t k) const {
  Poly result(nvars_, Rational(1));
  if (k == 0) return result;
  if (terms_.size() == 1 && k <= UINT32_MAX) {
    Rational c;
    mpz_pow_ui(c.get_num_mpz_t(), terms_[0].coeff.get_num_mpz_t(), k);
    mpz_pow_ui(c.get_den_mpz_t(), terms_[0].coeff.get_den_mpz_t(), k);
    result.terms_[0] = {terms_[0].mono.pow(static_cast<std::uint32_t>(k)), std::move(c)};
    return result;
  }
  Poly base = *this;
  bool first = true;
  while (k > 0) {
    if (k & 1U) {
      result = first ? base : result * base;
      first = false;
    }
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

namespace {

struct PolyOps {
  std::size_t nvars;
  Poly constant(const Rational& c) const { return Poly(nvars, c); }
  Poly add(const Poly& a, const Poly& b) const { return a + b; }
  Poly mul(const Poly& a, const Poly& b) const { return a * b; }
};

}  // namespace

Poly Poly::substitute(std::span<const Poly> images) const {
  assert(images.size() == nvars_);
  std::size_t out = images.empty() ? 0 : images[0].nvars();
  if (images.empty()) return *this;
  PolyOps ops{out};
  return evaluate<Poly>(*this, images, ops);
}

Poly Poly::resized(std::size_t nvars) const {
  Poly r(nvars);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono.resized(nvars), t.coeff});
  // Padding or dropping unused trailing variables keeps the order.
  return r;
}

Poly Poly::remapped(std::span<const std::size_t> index_map, std::size_t new_nvars) const {
  assert(index_map.size() == nvars_);
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::vector<std::uint32_t> e(new_nvars, 0);
    for (std::size_t i = 0; i < nvars_; ++i) e[index_map[i]] += t.mono[i];
    terms.push_back({Monomial(std::move(e)), t.coeff});
  }
  return from_terms(new_nvars, std::move(terms));
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  }
  return true;
}

Poly exact_div(const Poly& f, const Integer& k) {
  if (k == 0) throw Error(ErrorKind::kInvalidArgument, "exact_div by zero");
  std::vector<Poly::Term> terms;
  terms.reserve(f.num_terms());
  for (const auto& t : f.terms()) {
    if (t.coeff.get_den() != 1 || !mpz_divisible_p(t.coeff.get_num_mpz_t(), k.get_mpz_t())) {
      std::ostringstream msg;
      msg << "coefficient " << t.coeff.get_str() << " of a degree-" << t.mono.degree()
          << " term is not divisible by " << k.get_str();
      throw Error(ErrorKind::kNotDivisible, msg.str());
    }
    Integer q;
    mpz_divexact(q.get_mpz_t(), t.coeff.get_num_mpz_t(), k.get_mpz_t());
    terms.push_back({t.mono, Rational(q)});
  }
  // Division by a nonzero scalar keeps order and nonzero-ness.
  Poly r = Poly::from_terms(f.nvars(), std::move(terms));
  return r;
}

Integer ipow(const Integer& base, std::uint64_t k) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), k);
  return r;
}

Integer ipow(unsigned long base, std::uint64_t k) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, k);
  return r;
}

// ------------------------------------------------------------- text format

std::string to_string(const Poly& f, std::span<const std::string> names) {
  assert(names.size() >= f.nvars());
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    Rational c = t.coeff;
    if (c < 0) {
      out += first ? "-" : " - ";
      c = -c;
    } else if (!first) {
      out += " + ";
    }
    first = false;
    bool wrote = false;
    if (t.mono.is_one() || c != 1) {
      out += c.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      if (t.mono[i] == 0) continue;
      if (wrote) out += "*";
      out += names[i];
      if (t.mono[i] > 1) out += "^" + std::to_string(t.mono[i]);
      wrote = true;
    }
  }
  return out;
}

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto ok_first = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  if (!ok_first(name[0])) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> names)
      : text_(text), names_(names) {}

  Poly parse() {
    Poly r = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream msg;
    msg << what << " at offset " << pos_ << " in \"" << text_ << "\"";
    throw Error(ErrorKind::kParse, msg.str());
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  // Summands are collected and combined once; long sums stay linear-ish.
  Poly expr() {
    std::vector<Poly::Term> terms;
    auto take = [&](const Poly& f, bool negate) {
      for (const auto& t : f.terms()) terms.push_back({t.mono, negate ? Rational(-t.coeff) : t.coeff});
    };
    take(term(), false);
    while (true) {
      if (accept('+')) {
        take(term(), false);
      } else if (accept('-')) {
        take(term(), true);
      } else {
        return Poly::from_terms(names_.size(), std::move(terms));
      }
    }
  }

  Poly term() {
    Poly acc = unary();
    while (true) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        Poly d = unary();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
        acc = acc.scaled(1 / d.constant_term());
      } else {
        return acc;
      }
    }
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = primary();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be a nonnegative integer literal");
      if (pos_ - start > 9) fail("exponent too large");
      return base.pow(std::stoull(std::string(text_.substr(start, pos_ - start))));
    }
    return base;
  }

  Poly primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Poly(names_.size(), Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view id = text_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == id) return Poly::variable(names_.size(), i);
      pos_ = start;
      fail("unknown variable '" + std::string(id) + "'");
    }
    fail("unexpected character");
  }

  std::string_view text_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, std::span<const std::string> names) {
  return Parser(text, names).parse();
}

}  // namespace wittkit

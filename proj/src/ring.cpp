#include "wittkit/ring.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>
#include <map>
#include <sstream>

#include "wittkit/error.hpp"
#include "wittkit/finite_field.hpp"

namespace wittkit {

// ------------------------------------------------------------------ Scalar

Scalar Scalar::integers_mod(const Integer& m) {
  if (m < 2) throw Error(ErrorKind::kInvalidArgument, "modulus must be at least 2");
  Scalar s;
  s.kind_ = Kind::kIntegersMod;
  s.modulus_ = m;
  return s;
}

Scalar Scalar::integers_with_inverted(std::vector<Integer> primes) {
  if (primes.empty())
    throw Error(ErrorKind::kInvalidArgument, "inverted prime set must be nonempty");
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (const auto& p : primes)
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 25) == 0)
      throw Error(ErrorKind::kInvalidArgument, "inverted element " + p.get_str() + " is not prime");
  Scalar s;
  s.kind_ = Kind::kIntegersWithInverted;
  s.inverted_ = std::move(primes);
  return s;
}

Scalar Scalar::parse(std::string_view text) {
  auto bad = [&] { return Error(ErrorKind::kParse, "bad base '" + std::string(text) + "'"); };
  auto number = [&](std::string_view s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw bad();
    return Integer(std::string(s));
  };
  if (text == "Z") return integers();
  if (text.starts_with("Z/")) return integers_mod(number(text.substr(2)));
  if (text.starts_with("Z[") && text.ends_with("]")) {
    std::string_view inner = text.substr(2, text.size() - 3);
    std::vector<Integer> primes;
    while (!inner.empty()) {
      auto comma = inner.find(',');
      std::string_view item = inner.substr(0, comma);
      if (!item.starts_with("1/")) throw bad();
      primes.push_back(number(item.substr(2)));
      inner = comma == std::string_view::npos ? std::string_view{} : inner.substr(comma + 1);
    }
    return integers_with_inverted(std::move(primes));
  }
  throw bad();
}

namespace {

// Strips every prime of S from |d|; returns the S-free part.
Integer strip_primes(Integer d, const std::vector<Integer>& primes) {
  if (d < 0) d = -d;
  for (const auto& p : primes)
    while (d != 0 && mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) d /= p;
  return d;
}

}  // namespace

bool Scalar::admits(const Rational& c) const {
  switch (kind_) {
    case Kind::kIntegers: return c.get_den() == 1;
    case Kind::kIntegersMod: {
      Integer g;
      mpz_gcd(g.get_mpz_t(), c.get_den_mpz_t(), modulus_.get_mpz_t());
      return g == 1;
    }
    case Kind::kIntegersWithInverted: return strip_primes(c.get_den(), inverted_) == 1;
  }
  return false;
}

bool Scalar::is_unit(const Rational& c) const {
  if (c == 0) return false;
  switch (kind_) {
    case Kind::kIntegers: return c == 1 || c == -1;
    case Kind::kIntegersMod: {
      Rational r = normalize(c);
      Integer g;
      mpz_gcd(g.get_mpz_t(), r.get_num_mpz_t(), modulus_.get_mpz_t());
      return g == 1;
    }
    case Kind::kIntegersWithInverted:
      return strip_primes(c.get_num(), inverted_) == 1 && strip_primes(c.get_den(), inverted_) == 1;
  }
  return false;
}

Rational Scalar::normalize(const Rational& c) const {
  if (kind_ != Kind::kIntegersMod) return c;
  Integer num = c.get_num();
  if (c.get_den() != 1) {
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), c.get_den_mpz_t(), modulus_.get_mpz_t()) == 0)
      throw Error(ErrorKind::kInvalidArgument, "denominator not invertible modulo " + modulus_.get_str());
    num *= inv;
  }
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), modulus_.get_mpz_t());
  return Rational(r);
}

bool Scalar::maps_to_char(unsigned long ell) const {
  switch (kind_) {
    case Kind::kIntegers: return true;
    case Kind::kIntegersMod: return mpz_divisible_ui_p(modulus_.get_mpz_t(), ell) != 0;
    case Kind::kIntegersWithInverted:
      return std::none_of(inverted_.begin(), inverted_.end(), [&](const Integer& p) { return p == ell; });
  }
  return false;
}

std::string Scalar::to_string() const {
  switch (kind_) {
    case Kind::kIntegers: return "Z";
    case Kind::kIntegersMod: return "Z/" + modulus_.get_str();
    case Kind::kIntegersWithInverted: {
      std::string s = "Z[";
      for (std::size_t i = 0; i < inverted_.size(); ++i) {
        if (i) s += ",";
        s += "1/" + inverted_[i].get_str();
      }
      return s + "]";
    }
  }
  return "?";
}

// ----------------------------------------------------------- RewriteSystem

Poly RewriteRule::as_poly() const {
  return Poly::monomial(lhs, Rational(lead)) + tail;
}

Poly RewriteSystem::reduce(const Poly& f) const {
  if (rules_.empty()) {
    if (base_.kind() != Scalar::Kind::kIntegersMod) return f;
  }
  std::map<Monomial, Rational, GrlexGreater> work;
  for (const auto& t : f.terms()) work.emplace(t.mono, t.coeff);
  std::vector<Poly::Term> out;
  while (!work.empty()) {
    auto node = work.extract(work.begin());
    Monomial m = std::move(node.key());
    Rational c = std::move(node.mapped());
    for (const auto& rule : rules_) {
      if (c == 0) break;
      if (!rule.lhs.divides(m)) continue;
      Rational q;
      if (rule.lead == 1) {
        q = c;
        c = 0;
      } else {
        assert(c.get_den() == 1);
        Integer r;
        mpz_fdiv_r(r.get_mpz_t(), c.get_num_mpz_t(), rule.lead.get_mpz_t());
        q = Rational((c.get_num() - r) / rule.lead);
        c = Rational(r);
      }
      if (q == 0) continue;
      Monomial w = m / rule.lhs;
      for (const auto& t : rule.tail.terms()) {
        Rational add = -q * t.coeff;
        auto [it, inserted] = work.try_emplace(t.mono * w, add);
        if (!inserted) {
          it->second += add;
          if (it->second == 0) work.erase(it);
        }
      }
    }
    if (c != 0) out.push_back({std::move(m), std::move(c)});
  }
  // `out` is produced in descending order already.
  return Poly::from_terms(nvars_, std::move(out));
}

class Completion {
 public:
  Completion(std::size_t nvars, const Scalar& base, const CompletionBudget& budget)
      : sys_(nvars, base), budget_(budget) {}

  bool run(const std::vector<Poly>& generators) {
    for (const auto& g : generators) pending_.push_back(g);
    if (sys_.base_.kind() == Scalar::Kind::kIntegersMod)
      pending_.push_front(Poly(sys_.nvars_, Rational(sys_.base_.modulus())));
    std::size_t steps = 0;
    while (!pending_.empty()) {
      if (++steps > budget_.max_steps) return false;
      Poly h = sys_.reduce(pending_.front());
      pending_.pop_front();
      if (h.is_zero()) continue;
      auto rule = make_rule(h);
      if (!rule) return false;
      if (rule->lhs.degree() > budget_.max_degree || sys_.rules_.size() >= budget_.max_rules)
        return false;
      for (const auto& old : sys_.rules_) push_pairs(old, *rule);
      // Rules made redundant by the new one are re-queued as polynomials.
      std::vector<RewriteRule> kept;
      for (auto& old : sys_.rules_) {
        if (rule->lhs.divides(old.lhs) &&
            mpz_divisible_p(old.lead.get_mpz_t(), rule->lead.get_mpz_t())) {
          pending_.push_back(old.as_poly());
        } else {
          kept.push_back(std::move(old));
        }
      }
      sys_.rules_ = std::move(kept);
      sys_.rules_.push_back(std::move(*rule));
    }
    finalize();
    return true;
  }

  RewriteSystem take() { return std::move(sys_); }

  static std::vector<Poly> critical_polys(const RewriteRule& a, const RewriteRule& b) {
    std::vector<Poly> out;
    Monomial l = a.lhs.lcm(b.lhs);
    Monomial wa = l / a.lhs;
    Monomial wb = l / b.lhs;
    Integer c;
    mpz_lcm(c.get_mpz_t(), a.lead.get_mpz_t(), b.lead.get_mpz_t());
    out.push_back(a.tail.times_monomial(wa, Rational(c / a.lead)) -
                  b.tail.times_monomial(wb, Rational(c / b.lead)));
    bool a_div_b = mpz_divisible_p(b.lead.get_mpz_t(), a.lead.get_mpz_t()) != 0;
    bool b_div_a = mpz_divisible_p(a.lead.get_mpz_t(), b.lead.get_mpz_t()) != 0;
    if (!a_div_b && !b_div_a) {
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.lead.get_mpz_t(),
                 b.lead.get_mpz_t());
      Poly gp = Poly::monomial(l, Rational(g)) + a.tail.times_monomial(wa, Rational(s)) +
                b.tail.times_monomial(wb, Rational(t));
      out.push_back(std::move(gp));
    }
    return out;
  }

 private:
  std::optional<RewriteRule> make_rule(Poly h) const {
    Rational lc = h.leading().coeff;
    if (sys_.base_.kind() == Scalar::Kind::kIntegersWithInverted) {
      if (!sys_.base_.is_unit(lc)) return std::nullopt;
      h = h.scaled(1 / lc);
    } else {
      if (!h.is_integral()) return std::nullopt;
      if (lc < 0) h = -h;
    }
    RewriteRule r;
    r.lhs = h.leading().mono;
    r.lead = h.leading().coeff.get_num();
    r.tail = h - Poly::monomial(r.lhs, h.leading().coeff);
    return r;
  }

  void push_pairs(const RewriteRule& a, const RewriteRule& b) {
    for (auto& p : critical_polys(a, b)) pending_.push_back(std::move(p));
  }

  void finalize() {
    // Drop rules whose leading term is covered by another rule, then reduce tails.
    std::vector<RewriteRule> kept;
    for (std::size_t i = 0; i < sys_.rules_.size(); ++i) {
      const auto& r = sys_.rules_[i];
      bool redundant = false;
      for (std::size_t j = 0; j < sys_.rules_.size() && !redundant; ++j) {
        if (i == j) continue;
        const auto& o = sys_.rules_[j];
        bool covers = o.lhs.divides(r.lhs) && mpz_divisible_p(r.lead.get_mpz_t(), o.lead.get_mpz_t());
        bool same = o.lhs == r.lhs && o.lead == r.lead;
        redundant = covers && (!same || j < i);
      }
      if (!redundant) kept.push_back(r);
    }
    std::sort(kept.begin(), kept.end(), [](const RewriteRule& a, const RewriteRule& b) {
      int c = grlex_compare(a.lhs, b.lhs);
      if (c != 0) return c < 0;
      return a.lead < b.lead;
    });
    sys_.rules_ = std::move(kept);
    for (std::size_t i = 0; i < sys_.rules_.size(); ++i) {
      Poly tail = sys_.reduce(sys_.rules_[i].tail);
      sys_.rules_[i].tail = std::move(tail);
    }
  }

  RewriteSystem sys_;
  CompletionBudget budget_;
  std::deque<Poly> pending_;
};

std::optional<RewriteSystem> RewriteSystem::complete(const std::vector<Poly>& generators,
                                                     const Scalar& base, std::size_t nvars,
                                                     const CompletionBudget& budget) {
  Completion c(nvars, base, budget);
  if (!c.run(generators)) return std::nullopt;
  return c.take();
}

bool RewriteSystem::locally_confluent() const {
  for (std::size_t i = 0; i < rules_.size(); ++i)
    for (std::size_t j = i + 1; j < rules_.size(); ++j)
      for (const auto& p : Completion::critical_polys(rules_[i], rules_[j]))
        if (!reduce(p).is_zero()) return false;
  return true;
}

// ------------------------------------------------------------------ FPRing

RingPtr FPRing::make(Scalar base, std::vector<std::string> vars, std::vector<Poly> relations,
                     RewriteMode mode, const CompletionBudget& budget) {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!is_identifier(vars[i]))
      throw Error(ErrorKind::kInvalidArgument, "bad variable name '" + vars[i] + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (vars[i] == vars[j])
        throw Error(ErrorKind::kInvalidArgument, "duplicate variable '" + vars[i] + "'");
  }
  auto ring = std::shared_ptr<FPRing>(new FPRing());
  ring->base_ = std::move(base);
  ring->vars_ = std::move(vars);
  for (auto& r : relations) {
    if (r.nvars() != ring->vars_.size())
      throw Error(ErrorKind::kInvalidArgument, "relation has the wrong number of variables");
    ring->check_coefficients(r);
    Poly n(r.nvars());
    for (const auto& t : r.terms()) n += Poly::monomial(t.mono, ring->base_.normalize(t.coeff));
    if (!n.is_zero()) ring->relations_.push_back(std::move(n));
  }
  if (mode == RewriteMode::kComplete) {
    ring->rewrite_ = RewriteSystem::complete(ring->relations_, ring->base_, ring->nvars(), budget);
  }
  return ring;
}

RingPtr FPRing::parse(Scalar base, std::vector<std::string> vars,
                      const std::vector<std::string>& relations, RewriteMode mode) {
  std::vector<Poly> rels;
  rels.reserve(relations.size());
  for (const auto& r : relations) rels.push_back(wittkit::parse_poly(r, vars));
  return make(std::move(base), std::move(vars), std::move(rels), mode);
}

RingPtr FPRing::polynomial(std::vector<std::string> vars, Scalar base) {
  return make(std::move(base), std::move(vars), {});
}

const RewriteSystem& FPRing::rewrite() const {
  if (!rewrite_)
    throw Error(ErrorKind::kPresentationOnly,
                "ring has no confluent rewrite system; equality is undecided");
  return *rewrite_;
}

bool FPRing::is_free() const noexcept {
  return relations_.empty() && base_.kind() == Scalar::Kind::kIntegers;
}

std::optional<std::size_t> FPRing::var_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

Poly FPRing::var(std::string_view name) const {
  auto idx = var_index(name);
  if (!idx) throw Error(ErrorKind::kInvalidArgument, "unknown variable '" + std::string(name) + "'");
  return Poly::variable(nvars(), *idx);
}

Poly FPRing::parse_poly(std::string_view text) const { return wittkit::parse_poly(text, vars_); }

std::string FPRing::format(const Poly& f) const { return to_string(f, vars_); }

Poly FPRing::normal_form(const Poly& f) const { return rewrite().reduce(f); }

Poly FPRing::canonical(const Poly& f) const {
  if (rewrite_) return rewrite_->reduce(f);
  if (base_.kind() != Scalar::Kind::kIntegersMod) return f;
  std::vector<Poly::Term> terms;
  for (const auto& t : f.terms()) terms.push_back({t.mono, base_.normalize(t.coeff)});
  return Poly::from_terms(f.nvars(), std::move(terms));
}

void FPRing::check_coefficients(const Poly& f) const {
  for (const auto& t : f.terms())
    if (!base_.admits(t.coeff))
      throw Error(ErrorKind::kInvalidArgument,
                  "coefficient " + t.coeff.get_str() + " is not in " + base_.to_string());
}

bool same_presentation(const FPRing& a, const FPRing& b) {
  return a.base_ == b.base_ && a.vars_ == b.vars_ && a.relations_ == b.relations_;
}

// ---------------------------------------------------------------- RingElem

RingElem::RingElem(RingPtr ring, const Poly& value) : ring_(std::move(ring)) {
  if (value.nvars() != ring_->nvars())
    throw Error(ErrorKind::kInvalidArgument, "element has the wrong number of variables");
  ring_->check_coefficients(value);
  value_ = ring_->canonical(value);
}

RingElem RingElem::of(RingPtr ring, const Rational& c) {
  std::size_t n = ring->nvars();
  return RingElem(std::move(ring), Poly(n, c));
}

RingElem RingElem::parse(RingPtr ring, std::string_view text) {
  Poly v = ring->parse_poly(text);
  return RingElem(std::move(ring), v);
}

namespace {

void require_same_ring(const RingElem& a, const RingElem& b) {
  if (a.ring() != b.ring() && !same_presentation(*a.ring(), *b.ring()))
    throw Error(ErrorKind::kCtxMismatch, "elements of different rings");
}

}  // namespace

RingElem RingElem::operator+(const RingElem& o) const {
  require_same_ring(*this, o);
  return RingElem(ring_, ring_->canonical(value_ + o.value_), Trusted{});
}

RingElem RingElem::operator-(const RingElem& o) const {
  require_same_ring(*this, o);
  return RingElem(ring_, ring_->canonical(value_ - o.value_), Trusted{});
}

RingElem RingElem::operator*(const RingElem& o) const {
  require_same_ring(*this, o);
  return RingElem(ring_, ring_->canonical(value_ * o.value_), Trusted{});
}

RingElem RingElem::operator-() const { return RingElem(ring_, ring_->canonical(-value_), Trusted{}); }

RingElem RingElem::pow(std::uint64_t k) const {
  RingElem result = of(ring_, 1);
  RingElem base = *this;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

RingElem RingElem::scaled(const Rational& c) const {
  ring_->check_coefficients(Poly(ring_->nvars(), c));
  return RingElem(ring_, ring_->canonical(value_.scaled(c)), Trusted{});
}

RingElem RingElem::exact_div(const Integer& k) const {
  return RingElem(ring_, ring_->canonical(wittkit::exact_div(value_, k)), Trusted{});
}

bool RingElem::is_zero() const {
  ring_->rewrite();
  return value_.is_zero();
}

bool operator==(const RingElem& a, const RingElem& b) {
  require_same_ring(a, b);
  a.ring_->rewrite();
  return a.value_ == b.value_;
}

std::string RingElem::to_string() const { return ring_->format(value_); }

RingElem normal_form(const RingElem& e) {
  return RingElem(e.ring(), e.ring()->normal_form(e.value()));
}

// ----------------------------------------------------------------- RingHom

RingHom::RingHom(RingPtr domain, RingPtr codomain, std::vector<Poly> images)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images)) {
  if (images_.size() != domain_->nvars())
    throw Error(ErrorKind::kInvalidArgument, "need one image per domain generator");
  for (auto& img : images_) {
    if (img.nvars() != codomain_->nvars())
      throw Error(ErrorKind::kInvalidArgument, "image has the wrong number of variables");
    codomain_->check_coefficients(img);
    img = codomain_->canonical(img);
  }
  // A Z/m domain needs m = 0 in the codomain as well.
  std::vector<Poly> to_check = domain_->relations();
  if (domain_->base().kind() == Scalar::Kind::kIntegersMod)
    to_check.emplace_back(domain_->nvars(), Rational(domain_->base().modulus()));
  if (codomain_->has_rewrite()) {
    for (const auto& r : to_check) {
      if (!apply(r).is_zero())
        throw Error(ErrorKind::kInvalidArgument,
                    "relation " + domain_->format(r) + " does not map to zero");
    }
    checked_ = true;
  }
}

RingHom RingHom::parse(RingPtr domain, RingPtr codomain, const std::vector<std::string>& images) {
  std::vector<Poly> imgs;
  for (const auto& s : images) imgs.push_back(codomain->parse_poly(s));
  return RingHom(std::move(domain), std::move(codomain), std::move(imgs));
}

RingHom RingHom::identity(const RingPtr& ring) {
  std::vector<Poly> imgs;
  for (std::size_t i = 0; i < ring->nvars(); ++i) imgs.push_back(Poly::variable(ring->nvars(), i));
  return RingHom(ring, ring, std::move(imgs));
}

Poly RingHom::apply(const Poly& f) const {
  if (f.nvars() == 0) return codomain_->canonical(Poly(codomain_->nvars(), f.constant_term()));
  return codomain_->canonical(f.substitute(images_));
}

RingElem RingHom::operator()(const RingElem& e) const {
  if (e.ring() != domain_ && !same_presentation(*e.ring(), *domain_))
    throw Error(ErrorKind::kCtxMismatch, "element is not in the domain");
  return RingElem(codomain_, apply(e.value()));
}

RingHom RingHom::after(const RingHom& first) const {
  if (first.codomain_ != domain_ && !same_presentation(*first.codomain_, *domain_))
    throw Error(ErrorKind::kCtxMismatch, "homomorphisms do not compose");
  std::vector<Poly> imgs;
  for (const auto& img : first.images_) imgs.push_back(apply(img));
  return RingHom(first.domain_, codomain_, std::move(imgs));
}

bool RingHom::agrees_with(const RingHom& other) const {
  codomain_->rewrite();
  if (images_.size() != other.images_.size()) return false;
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (codomain_->normal_form(images_[i] - other.images_[i].resized(codomain_->nvars())) != Poly(codomain_->nvars()))
      return false;
  return true;
}

// ---------------------------------------------------------- constructions

std::string fresh_name(std::string stem, const std::vector<std::string>& taken) {
  auto used = [&](const std::string& s) { return std::find(taken.begin(), taken.end(), s) != taken.end(); };
  if (!used(stem)) return stem;
  for (int i = 1;; ++i) {
    std::string cand = stem + std::to_string(i);
    if (!used(cand)) return cand;
  }
}

Localization localize(const RingPtr& a, const Poly& f, std::string inverse_name) {
  if (f.nvars() != a->nvars()) throw Error(ErrorKind::kInvalidArgument, "f is not in A");
  if (a->canonical(f).is_zero() && a->has_rewrite())
    throw Error(ErrorKind::kInvalidArgument, "cannot invert zero");
  std::vector<std::string> vars = a->vars();
  std::string name = fresh_name(inverse_name.empty() ? "u" : inverse_name, vars);
  vars.push_back(name);
  const std::size_t n = vars.size();
  std::vector<Poly> rels;
  for (const auto& r : a->relations()) rels.push_back(r.resized(n));
  rels.push_back(Poly::variable(n, n - 1) * f.resized(n) - Poly(n, Rational(1)));
  RewriteMode mode = a->has_rewrite() ? RewriteMode::kComplete : RewriteMode::kPresentationOnly;
  Localization loc;
  loc.ring = FPRing::make(a->base(), std::move(vars), std::move(rels), mode);
  std::vector<Poly> imgs;
  for (std::size_t i = 0; i < a->nvars(); ++i) imgs.push_back(Poly::variable(n, i));
  loc.canonical = RingHom(a, loc.ring, std::move(imgs));
  loc.inverse_var = n - 1;
  return loc;
}

ProductRing product_ring(const RingPtr& a, const RingPtr& b) {
  if (!(a->base() == b->base()))
    throw Error(ErrorKind::kInvalidArgument, "product of rings over different bases");
  std::vector<std::string> vars = a->vars();
  std::vector<std::size_t> bmap;
  for (const auto& v : b->vars()) {
    std::string name = fresh_name(v, vars);
    bmap.push_back(vars.size());
    vars.push_back(name);
  }
  std::string e_name = fresh_name("e", vars);
  vars.push_back(e_name);
  const std::size_t n = vars.size();
  const std::size_t e_idx = n - 1;
  std::vector<std::size_t> amap(a->nvars());
  for (std::size_t i = 0; i < amap.size(); ++i) amap[i] = i;

  Poly e = Poly::variable(n, e_idx);
  Poly one(n, Rational(1));
  std::vector<Poly> rels;
  rels.push_back(e * e - e);
  for (std::size_t i = 0; i < a->nvars(); ++i) rels.push_back(e * Poly::variable(n, amap[i]));
  for (std::size_t j = 0; j < b->nvars(); ++j) rels.push_back((one - e) * Poly::variable(n, bmap[j]));
  for (const auto& r : a->relations()) rels.push_back((one - e) * r.remapped(amap, n));
  for (const auto& r : b->relations()) rels.push_back(e * r.remapped(bmap, n));
  RewriteMode mode = a->has_rewrite() && b->has_rewrite() ? RewriteMode::kComplete
                                                          : RewriteMode::kPresentationOnly;
  ProductRing out;
  out.ring = FPRing::make(a->base(), std::move(vars), std::move(rels), mode);

  std::vector<Poly> to_a(n, Poly(a->nvars()));
  for (std::size_t i = 0; i < a->nvars(); ++i) to_a[amap[i]] = Poly::variable(a->nvars(), i);
  std::vector<Poly> to_b(n, Poly(b->nvars()));
  for (std::size_t j = 0; j < b->nvars(); ++j) to_b[bmap[j]] = Poly::variable(b->nvars(), j);
  to_b[e_idx] = Poly(b->nvars(), Rational(1));
  out.to_first = RingHom(out.ring, a, std::move(to_a));
  out.to_second = RingHom(out.ring, b, std::move(to_b));
  return out;
}

RingPtr tensor_product(const RingPtr& a, const RingPtr& b) {
  if (!(a->base() == b->base()))
    throw Error(ErrorKind::kInvalidArgument, "tensor product over different bases");
  std::vector<std::string> vars = a->vars();
  std::vector<std::size_t> bmap;
  for (const auto& v : b->vars()) {
    bmap.push_back(vars.size());
    vars.push_back(fresh_name(v, vars));
  }
  const std::size_t n = vars.size();
  std::vector<std::size_t> amap(a->nvars());
  for (std::size_t i = 0; i < amap.size(); ++i) amap[i] = i;
  std::vector<Poly> rels;
  for (const auto& r : a->relations()) rels.push_back(r.remapped(amap, n));
  for (const auto& r : b->relations()) rels.push_back(r.remapped(bmap, n));
  RewriteMode mode = a->has_rewrite() && b->has_rewrite() ? RewriteMode::kComplete
                                                          : RewriteMode::kPresentationOnly;
  return FPRing::make(a->base(), std::move(vars), std::move(rels), mode);
}

RingPtr mod_fiber(const RingPtr& a, const Integer& m, RewriteMode mode) {
  if (a->base().kind() != Scalar::Kind::kIntegers)
    throw Error(ErrorKind::kBadBase, "mod_fiber needs a ring over Z");
  return FPRing::make(Scalar::integers_mod(m), a->vars(), a->relations(), mode);
}

bool same_ideal(const RingPtr& a, const RingPtr& b) {
  if (!(a->base() == b->base()) || a->vars() != b->vars()) return false;
  for (const auto& r : a->relations())
    if (!b->normal_form(r).is_zero()) return false;
  for (const auto& r : b->relations())
    if (!a->normal_form(r).is_zero()) return false;
  return true;
}

// ------------------------------------------------------------ point counts

namespace {

struct CompiledTerm {
  std::uint8_t coeff;
  std::vector<std::uint32_t> exps;
};

struct CompiledRelation {
  std::vector<CompiledTerm> terms;
  std::size_t last_var = 0;  // relation is decided once this variable is assigned
};

}  // namespace

std::uint64_t count_points(const RingPtr& a, unsigned q) {
  FiniteField field(q);
  const unsigned ell = field.characteristic();
  if (!a->base().maps_to_char(ell)) return 0;
  const std::size_t n = a->nvars();
  if (n > 4) throw Error(ErrorKind::kSearchTooLarge, "point counting supports at most 4 variables");
  double space = 1;
  for (std::size_t i = 0; i < n; ++i) space *= q;
  if (space > double(1ULL << 26))
    throw Error(ErrorKind::kSearchTooLarge, "search space q^n exceeds 2^26");

  std::vector<CompiledRelation> rels;
  std::uint32_t max_exp = 1;
  for (const auto& r : a->relations()) {
    CompiledRelation cr;
    bool any = false;
    for (const auto& t : r.terms()) {
      Integer num = t.coeff.get_num() % ell;
      if (num < 0) num += ell;
      Integer den = t.coeff.get_den() % ell;
      if (den == 0) throw Error(ErrorKind::kInvalidArgument, "coefficient not defined mod " + std::to_string(ell));
      Integer inv;
      mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), Integer(ell).get_mpz_t());
      Integer c = (num * inv) % ell;
      if (c == 0) continue;
      CompiledTerm ct{field.from_residue(c.get_ui()), t.mono.exponents()};
      for (std::size_t v = 0; v < n; ++v) {
        if (ct.exps[v] > 0) cr.last_var = std::max(cr.last_var, v);
        max_exp = std::max(max_exp, ct.exps[v]);
      }
      cr.terms.push_back(std::move(ct));
      any = true;
    }
    if (!any) continue;
    rels.push_back(std::move(cr));
  }
  // Constant nonzero relation: no points.
  for (const auto& r : rels) {
    bool constant = std::all_of(r.terms.begin(), r.terms.end(), [](const CompiledTerm& t) {
      return std::all_of(t.exps.begin(), t.exps.end(), [](std::uint32_t e) { return e == 0; });
    });
    if (constant) return 0;
  }
  if (n == 0) return 1;

  // power[v][e] for every field element v.
  std::vector<std::vector<std::uint8_t>> power(q, std::vector<std::uint8_t>(max_exp + 1));
  for (unsigned v = 0; v < q; ++v) {
    power[v][0] = 1;
    for (std::uint32_t e = 1; e <= max_exp; ++e) power[v][e] = field.mul(power[v][e - 1], static_cast<std::uint8_t>(v));
  }
  std::vector<std::vector<const CompiledRelation*>> by_var(n);
  for (const auto& r : rels) by_var[r.last_var].push_back(&r);

  std::vector<std::uint8_t> point(n, 0);
  std::uint64_t count = 0;
  std::function<void(std::size_t)> search = [&](std::size_t depth) {
    if (depth == n) {
      ++count;
      return;
    }
    for (unsigned v = 0; v < q; ++v) {
      point[depth] = static_cast<std::uint8_t>(v);
      bool ok = true;
      for (const auto* r : by_var[depth]) {
        std::uint8_t acc = 0;
        for (const auto& t : r->terms) {
          std::uint8_t term = t.coeff;
          for (std::size_t i = 0; i <= depth; ++i)
            if (t.exps[i]) term = field.mul(term, power[point[i]][t.exps[i]]);
          acc = field.add(acc, term);
        }
        if (acc != 0) {
          ok = false;
          break;
        }
      }
      if (ok) search(depth + 1);
    }
  };
  search(0);
  return count;
}

}  // namespace wittkit

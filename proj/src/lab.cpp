#include "wittkit/lab.hpp"

#include <algorithm>
#include <future>
#include <random>

#include "wittkit/error.hpp"
#include "wittkit/jets.hpp"
#include "wittkit/sample.hpp"

namespace wittkit {

const char* status_name(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kSkip: return "skip";
  }
  return "?";
}

void SuiteReport::add(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok ? CheckStatus::kPass : CheckStatus::kFail, std::move(detail)});
}

void SuiteReport::skip(std::string name, std::string reason) {
  checks.push_back({std::move(name), CheckStatus::kSkip, std::move(reason)});
}

bool SuiteReport::passed() const { return count(CheckStatus::kFail) == 0; }

std::size_t SuiteReport::count(CheckStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [&](const CheckResult& c) { return c.status == s; }));
}

void SuiteReport::append(const SuiteReport& other) {
  for (const auto& c : other.checks) checks.push_back({other.suite + ": " + c.name, c.status, c.detail});
}

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& x : parts) s += (s.empty() ? "" : ", ") + x;
  return s;
}

// Runs `body`; a library error becomes a failed check carrying its message.
template <class F>
void guarded(SuiteReport& rep, const std::string& name, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    rep.add(name, false, std::string(kind_name(e.kind())) + ": " + e.what());
  }
}

// Monomials of degree <= max_deg not divisible by a rewrite lhs. Over Z/m
// the constant rule m -> 0 is ignored.
std::vector<Monomial> standard_monomials(const FPRing& ring, unsigned max_deg) {
  const std::size_t nv = ring.nvars();
  const bool residue = ring.base().kind() == Scalar::Kind::kIntegersMod;
  std::vector<Monomial> out;
  std::vector<Monomial> level{Monomial(nv)};
  for (unsigned d = 0; d <= max_deg && !level.empty(); ++d) {
    std::vector<Monomial> next;
    for (const auto& m : level) {
      bool reducible = false;
      for (const auto& rule : ring.rewrite().rules())
        if (rule.lhs.divides(m) && !(residue && rule.lhs.is_one())) reducible = true;
      if (reducible) continue;
      out.push_back(m);
      // Extend only by variables at or after the last used one, so each
      // monomial is generated once.
      std::size_t last = 0;
      for (std::size_t i = 0; i < nv; ++i)
        if (m[i] > 0) last = i;
      for (std::size_t i = last; i < nv; ++i) next.push_back(m * Monomial::variable(nv, i));
    }
    level = std::move(next);
  }
  return out;
}

std::size_t rank_mod(std::vector<std::vector<long long>> rows, std::size_t ncols, long long p) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] % p == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    long long inv = 1;
    for (long long b = ((rows[r][c] % p) + p) % p, e = p - 2; e > 0; e >>= 1, b = b * b % p)
      if (e & 1) inv = inv * b % p;
    for (auto& x : rows[r]) x = ((x % p + p) % p) * inv % p;
    for (std::size_t o = 0; o < rows.size(); ++o) {
      if (o == r) continue;
      long long f = ((rows[o][c] % p) + p) % p;
      if (f == 0) continue;
      for (std::size_t k = 0; k < ncols; ++k) rows[o][k] = ((rows[o][k] - f * rows[r][k]) % p + p) % p;
    }
    ++r;
  }
  return r;
}

std::size_t rank_q(std::vector<std::vector<Rational>> rows, std::size_t ncols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    for (std::size_t o = r + 1; o < rows.size(); ++o) {
      if (rows[o][c] == 0) continue;
      Rational f = rows[o][c] / rows[r][c];
      for (std::size_t k = c; k < ncols; ++k) rows[o][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

WittVec map_components(const RingHom& h, const WittCtx& target, const WittVec& v) {
  std::vector<RingElem> comps;
  for (const auto& c : v.components()) comps.push_back(h(c));
  return WittVec(target, std::move(comps));
}

RingPtr ring_of(const std::vector<std::string>& vars, const std::vector<std::string>& rels) {
  return FPRing::parse(Scalar::integers(), vars, rels);
}

}  // namespace

// ----------------------------------------------------------------- suites

SuiteReport check_closed_immersion(const RingHom& f, const std::vector<Poly>& sections, unsigned p,
                                   unsigned n, unsigned samples, std::uint64_t seed) {
  SuiteReport rep{"closed-immersion", seed, {}};
  const RingPtr& a = f.domain();
  const RingPtr& b = f.codomain();
  if (sections.size() != b->nvars()) {
    rep.add("sections", false, "need one section per generator of the target");
    return rep;
  }
  bool sections_ok = true;
  for (std::size_t i = 0; i < sections.size(); ++i)
    if (!b->normal_form(f.apply(sections[i]) - Poly::variable(b->nvars(), i)).is_zero()) {
      rep.add("sections", false, "section of " + b->vars()[i] + " does not map to it");
      sections_ok = false;
    }
  if (!sections_ok) return rep;
  rep.add("sections", true);

  guarded(rep, "componentwise lifting", [&] {
    std::mt19937_64 rng(seed);
    WittCtx wa(p, n, a), wb(p, n, b);
    auto lift = [&](const WittVec& w) {
      std::vector<RingElem> comps;
      for (const auto& c : w.components()) {
        const Poly& x = c.value();
        comps.emplace_back(a, sections.empty() ? Poly(a->nvars(), x.constant_term()) : x.substitute(sections));
      }
      return WittVec(wa, std::move(comps));
    };
    std::size_t hits = 0, products = 0;
    for (unsigned t = 0; t < samples; ++t) {
      WittVec u = sample::random_witt(rng, wb, 2, 3, 4);
      WittVec v = sample::random_witt(rng, wb, 2, 3, 4);
      WittVec lu = lift(u), lv = lift(v);
      if (!(map_components(f, wb, lu) == u)) {
        rep.add("componentwise lifting", false, "sample " + std::to_string(t) + ": (" +
                                                    join(u.to_strings()) + ") is not hit");
        return;
      }
      ++hits;
      if (map_components(f, wb, w_mul(lu, lv)) == w_mul(u, v)) ++products;
    }
    rep.add("componentwise lifting", true, std::to_string(hits) + " samples hit");
    rep.add("W_n(f) multiplicative on lifts", products == samples,
            std::to_string(products) + "/" + std::to_string(samples));
  });
  return rep;
}

SuiteReport check_socle(unsigned p, unsigned n) {
  SuiteReport rep{"socle", 0, {}};
  std::vector<std::string> vars;
  std::vector<std::string> rels;
  for (unsigned i = 1; i <= n; ++i) vars.push_back("x" + std::to_string(i));
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = i; j <= n; ++j) rels.push_back("x" + std::to_string(i) + "*x" + std::to_string(j));
  auto ring = FPRing::parse(Scalar::integers_mod(p), vars, rels);

  guarded(rep, "presentation fiber", [&] {
    auto pres = wittring_presentation_Z(p, n, 5, 1);
    auto fiber = mod_fiber(pres.ring, p);
    rep.add("presentation fiber", pres.verified && same_ideal(fiber, ring),
            "F_p (x) W_n(Z) = F_p[x_1..x_n]/(x_i x_j)");
  });

  auto basis = standard_monomials(*ring, 2 * n + 2);
  const std::size_t dim = basis.size();
  auto coords = [&](const Poly& f) {
    std::vector<long long> row(dim, 0);
    Poly nf = ring->normal_form(f);
    for (const auto& t : nf.terms()) {
      auto it = std::find(basis.begin(), basis.end(), t.mono);
      row[it - basis.begin()] = t.coeff.get_num().get_si();
    }
    return row;
  };
  // a is in the socle iff x_i a = 0 for all i; rows are (x_i * b_k)_k.
  std::vector<std::vector<long long>> rows;
  for (unsigned i = 0; i < n; ++i) {
    std::vector<std::vector<long long>> images;
    for (const auto& b : basis) images.push_back(coords(Poly::monomial(b, 1) * Poly::variable(n, i)));
    for (std::size_t r = 0; r < dim; ++r) {
      std::vector<long long> row(dim);
      for (std::size_t k = 0; k < dim; ++k) row[k] = images[k][r];
      rows.push_back(std::move(row));
    }
  }
  const std::size_t socle = dim - rank_mod(rows, dim, p);
  const std::size_t expected = n == 0 ? 1 : n;
  rep.add("socle dimension", socle == expected,
          "dim " + std::to_string(socle) + " in an algebra of dim " + std::to_string(dim));
  rep.add("Gorenstein exactly when n <= 1", (socle == 1) == (n <= 1),
          socle == 1 ? "Gorenstein" : "not Gorenstein");
  if (n == 1)
    rep.add("complete intersection", ring->relations().size() == ring->nvars(), "F_p[x_1]/(x_1^2)");
  return rep;
}

SuiteReport check_teich_regular(const RingPtr& a, const std::vector<Poly>& sequence, unsigned p,
                                unsigned n, unsigned degree_bound) {
  SuiteReport rep{"teich-regular", 0, {}};
  if (sequence.size() != 1) {
    rep.skip("regular sequence", "only one-element sequences are checked");
    return rep;
  }
  if (a->base().kind() != Scalar::Kind::kIntegers || !a->has_rewrite() ||
      std::any_of(a->rewrite().rules().begin(), a->rewrite().rules().end(),
                  [](const RewriteRule& r) { return r.lead != 1; })) {
    rep.add("monomial basis", false, "needs a monic rewrite system over Z");
    return rep;
  }
  guarded(rep, "multiplication by [a]", [&] {
    WittCtx ctx(p, n, a);
    RingElem elt(a, sequence[0]);
    WittVec ta = teich(ctx, elt);
    auto slice = standard_monomials(*a, degree_bound);
    bool formula = true;
    std::size_t rank = 0;
    for (unsigned i = 0; i <= n; ++i) {
      const RingElem scale = elt.pow(ipow(p, i).get_ui());
      std::vector<Poly> images;
      for (const auto& m : slice) {
        std::vector<RingElem> comps(n + 1, RingElem::of(a, 0));
        comps[i] = RingElem(a, Poly::monomial(m, 1));
        WittVec prod = w_mul(ta, WittVec(ctx, comps));
        comps[i] = comps[i] * scale;
        if (!(prod == WittVec(ctx, comps))) formula = false;
        images.push_back(comps[i].value());
      }
      std::vector<Monomial> support;
      for (const auto& img : images)
        for (const auto& t : img.terms())
          if (std::find(support.begin(), support.end(), t.mono) == support.end()) support.push_back(t.mono);
      std::vector<std::vector<Rational>> rows;
      for (const auto& img : images) {
        std::vector<Rational> row(support.size(), 0);
        for (const auto& t : img.terms())
          row[std::find(support.begin(), support.end(), t.mono) - support.begin()] = t.coeff;
        rows.push_back(std::move(row));
      }
      rank += rank_q(std::move(rows), support.size());
    }
    const std::size_t dim = slice.size() * (n + 1);
    rep.add("[a]v = (a^(p^i) v_i)", formula);
    rep.add("injective on the degree <= " + std::to_string(degree_bound) + " slice", rank == dim,
            "rank " + std::to_string(rank) + " of " + std::to_string(dim));
  });
  return rep;
}

SuiteReport check_not_normal(unsigned p, unsigned n) {
  SuiteReport rep{"not-normal", 0, {}};
  if (n == 0) {
    rep.add("no zero divisors", true, "W_0(Z) = Z");
    return rep;
  }
  guarded(rep, "zero divisors", [&] {
    WittCtx ctx(p, n, FPRing::integers());
    WittVec v1 = versch(w_one(ctx.with_length(n - 1)));
    WittVec other = w_sub(v1, w_from_integer(ctx, p));
    WittVec prod = w_mul(v1, other);
    rep.add("V(1) != 0", !(v1 == w_zero(ctx)), "(" + join(v1.to_strings()) + ")");
    rep.add("V(1) - p != 0", !(other == w_zero(ctx)), "(" + join(other.to_strings()) + ")");
    rep.add("V(1) (V(1) - p) = 0", prod == w_zero(ctx), "(" + join(prod.to_strings()) + ")");
  });
  return rep;
}

SuiteReport counterexample_suite(unsigned p) {
  SuiteReport rep{"counterexamples", 0, {}};
  const std::string pp = std::to_string(p);
  const std::vector<unsigned> others = [&] {
    std::vector<unsigned> q;
    for (unsigned x : {2U, 3U, 5U, 7U})
      if (x != p) q.push_back(x);
    return q;
  }();

  guarded(rep, "flatness", [&] {
    auto jets = jet_presentation(JetCtx(p, 1, ring_of({"x"}, {"x^2 - " + pp + "*x"})));
    auto fiber = mod_fiber(jets.ring, p);
    Poly x = fiber->var("x");
    bool nilpotent = fiber->normal_form(x * x).is_zero() && !fiber->normal_form(x).is_zero();
    auto expected = FPRing::parse(Scalar::integers_mod(p), {"x", "d1_x"}, {"x^2"});
    rep.add("mod p fiber is F_p[x,d1_x]/(x^2)", nilpotent && same_ideal(fiber, expected),
            "x^2 = 0, x != 0");
    std::string counts;
    bool four = true;
    for (unsigned q : others) {
      auto c = count_points(jets.ring, q);
      four = four && c == 4;
      counts += (counts.empty() ? "" : ", ") + std::to_string(q) + ":" + std::to_string(c);
    }
    rep.add("4 points away from p", four, counts);
  });
  guarded(rep, "surjectivity", [&] {
    auto jets = jet_presentation(JetCtx(p, 1, ring_of({"x"}, {"x^2 - " + pp})));
    auto c = count_points(jets.ring, p);
    rep.add("no F_p points on the jets of Z[x]/(x^2 - p)", c == 0, std::to_string(c) + " points");
  });
  guarded(rep, "integrality", [&] {
    auto jets = jet_presentation(JetCtx(p, 1, ring_of({"e"}, {"e^2 - e"})));
    auto at_p = count_points(jets.ring, p);
    rep.add("2 F_p points on the jets of Z x Z", at_p == 2, std::to_string(at_p) + " points");
    std::string counts;
    bool four = true;
    for (unsigned q : others) {
      auto c = count_points(jets.ring, q);
      four = four && c == 4;
      counts += (counts.empty() ? "" : ", ") + std::to_string(q) + ":" + std::to_string(c);
    }
    rep.add("4 F_q points for q != p", four, counts);
  });
  for (const char* prop : {"quasi-compact", "separated", "universally closed",
                           "noetherian over an infinite field"})
    rep.skip(prop, "no finite computation decides this property");
  return rep;
}

SuiteReport check_etale_fiber_products(const RingPtr& a, const Poly& f, const Poly& g, unsigned p,
                                       unsigned n) {
  SuiteReport rep{"etale-fiber-products", 0, {}};
  const std::string tag = a->format(f) + ", " + a->format(g);
  guarded(rep, "localization " + tag, [&] {
    WittLocalization d = witt_localized(a, f * g, p, n);
    rep.add("[fg] invertible (" + tag + ")", d.certify());
    const RingPtr& dr = d.loc.ring;
    const std::size_t nd = dr->nvars();
    const Poly u = Poly::variable(nd, d.loc.inverse_var);
    RingElem fe(dr, d.loc.canonical.apply(f)), ge(dr, d.loc.canonical.apply(g));
    WittVec tf = teich(d.ctx, fe), tg = teich(d.ctx, ge);
    rep.add("[f][g] = [fg] (" + tag + ")", w_mul(tf, tg) == d.teich_f);

    // W_n(A[1/f]) and W_n(A[1/g]) into W_n(A[1/fg]).
    bool ok = true;
    std::string witness;
    for (const auto& [h, other] : {std::pair{f, g}, std::pair{g, f}}) {
      Localization l = localize(a, h);
      std::vector<Poly> imgs;
      for (std::size_t v = 0; v < a->nvars(); ++v) imgs.push_back(Poly::variable(nd, v));
      imgs.push_back(d.loc.canonical.apply(other) * u);
      RingHom to_d(l.ring, dr, std::move(imgs));
      WittCtx src(p, n, l.ring);
      WittVec inv = teich(src, RingElem(l.ring, Poly::variable(l.ring->nvars(), l.inverse_var)));
      WittVec hv = teich(d.ctx, RingElem(dr, d.loc.canonical.apply(h)));
      if (!(w_mul(map_components(to_d, d.ctx, inv), hv) == w_one(d.ctx))) {
        ok = false;
        witness = "[1/" + a->format(h) + "] does not map to an inverse";
      }
      std::mt19937_64 rng(7);
      for (int t = 0; t < 5 && ok; ++t) {
        WittVec v = sample::random_witt(rng, src, 2, 2, 3);
        WittVec w = map_components(to_d, d.ctx, v);
        for (unsigned m = 0; m <= n; ++m)
          if (!(ghost_component(w, m) == to_d(ghost_component(v, m)))) {
            ok = false;
            witness = "ghost mismatch on (" + join(v.to_strings()) + ")";
          }
      }
    }
    rep.add("compatible maps from both localizations (" + tag + ")", ok, witness);
  });
  return rep;
}

// ------------------------------------------------------------------ runner

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"closed-immersion", "socle",          "teich-regular",
                                              "not-normal",       "counterexamples", "etale-fiber-products"};
  return names;
}

namespace {

std::uint64_t derived_seed(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

SuiteReport run_one(const std::string& name, unsigned p, unsigned n, std::uint64_t seed) {
  SuiteReport rep{name, seed, {}};
  auto zx = FPRing::polynomial({"x"});
  if (name == "closed-immersion") {
    auto quot = ring_of({"x"}, {"x^2 - 2*x"});
    rep.append(check_closed_immersion(RingHom(zx, quot, {quot->var("x")}), {zx->var("x")}, p, n, 20, seed));
    rep.append(check_closed_immersion(RingHom::identity(zx), {zx->var("x")}, p, n, 20, seed + 1));
    rep.append(check_closed_immersion(RingHom(zx, FPRing::integers(), {Poly(0)}), {}, p, n, 20, seed + 2));
  } else if (name == "socle") {
    rep.append(check_socle(p, n));
  } else if (name == "teich-regular") {
    rep.append(check_teich_regular(zx, {zx->var("x")}, p, n, 4));
    rep.append(check_teich_regular(FPRing::integers(), {Poly(0, Rational(p))}, p, n, 0));
    auto zero = check_teich_regular(zx, {Poly(1)}, p, n, 2);
    rep.add("zero is not a non-zero-divisor", !zero.passed(), "injectivity check fails as it should");
  } else if (name == "not-normal") {
    rep.append(check_not_normal(p, n));
  } else if (name == "counterexamples") {
    rep.append(counterexample_suite(p));
  } else if (name == "etale-fiber-products") {
    auto zt = FPRing::polynomial({"t"});
    Poly t = zt->var("t"), one(1, Rational(1));
    rep.append(check_etale_fiber_products(zt, t, t + one, p, n));
    rep.append(check_etale_fiber_products(zt, t, t, p, n));
    rep.append(check_etale_fiber_products(zt, t, one, p, n));
  } else {
    throw Error(ErrorKind::kInvalidArgument, "unknown suite " + name);
  }
  return rep;
}

}  // namespace

SuiteReport run_suite(const std::string& name, unsigned p, unsigned n, std::uint64_t seed) {
  if (!is_prime(p)) throw Error(ErrorKind::kInvalidArgument, std::to_string(p) + " is not prime");
  const auto& names = suite_names();
  if (name != "all") {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw Error(ErrorKind::kInvalidArgument, "unknown suite " + name);
    return run_one(name, p, n, derived_seed(seed, static_cast<std::size_t>(it - names.begin())));
  }
  std::vector<std::future<SuiteReport>> jobs;
  for (std::size_t i = 0; i < names.size(); ++i)
    jobs.push_back(std::async(std::launch::async, run_one, names[i], p, n, derived_seed(seed, i)));
  SuiteReport all{"all", seed, {}};
  for (auto& j : jobs) {
    SuiteReport r = j.get();
    for (const auto& c : r.checks) all.checks.push_back({r.suite + "/" + c.name, c.status, c.detail});
  }
  return all;
}

}  // namespace wittkit

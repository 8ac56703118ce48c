#include "wittkit/jets.hpp"

#include "wittkit/error.hpp"
#include "wittkit/witt.hpp"

namespace wittkit {

namespace {

Integer ppow(unsigned p, unsigned k) { return ipow(static_cast<unsigned long>(p), k); }

std::uint64_t upow(unsigned p, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) r *= p;
  return r;
}

void require_integral(const Poly& f) {
  if (!f.is_integral())
    throw Error(ErrorKind::kInvalidArgument, "delta calculus needs integral polynomials");
}

// One application of phi, assuming depth(f) < n.
Poly phi_once(const JetCtx& ctx, const Poly& f) {
  const std::size_t k = ctx.base_vars();
  const std::size_t nv = ctx.nvars();
  std::vector<Poly> images;
  images.reserve(nv);
  for (unsigned j = 0; j <= ctx.n; ++j)
    for (std::size_t i = 0; i < k; ++i) {
      Poly x = ctx.var(j, i);
      if (j < ctx.n)
        images.push_back(x.pow(ctx.p) + ctx.var(j + 1, i).scaled(Rational(ctx.p)));
      else
        images.push_back(x);  // unused: callers check the depth first
    }
  return f.substitute(images);
}

Poly check_jet_poly(const JetCtx& ctx, const Poly& f) {
  if (f.nvars() == ctx.nvars()) return f;
  if (f.nvars() == ctx.base_vars() || f.nvars() == 0) return ctx.embed(f);
  throw Error(ErrorKind::kInvalidArgument, "polynomial does not live on the jet variables");
}

std::vector<Poly> relations_over_z(const FPRing& a) {
  std::vector<Poly> rels = a.relations();
  switch (a.base().kind()) {
    case Scalar::Kind::kIntegers:
      break;
    case Scalar::Kind::kIntegersMod:
      rels.emplace_back(a.nvars(), Rational(a.base().modulus()));
      break;
    default:
      throw Error(ErrorKind::kBadBase, "jets are defined here for bases Z and Z/m");
  }
  for (const auto& r : rels) require_integral(r);
  return rels;
}

}  // namespace

JetCtx::JetCtx(unsigned p_, unsigned n_, RingPtr ring_) : p(p_), n(n_), ring(std::move(ring_)) {
  if (!is_prime(p)) throw Error(ErrorKind::kInvalidArgument, std::to_string(p) + " is not prime");
  if (!ring) throw Error(ErrorKind::kInvalidArgument, "jet context needs a ring");
}

std::string jet_var_name(const std::string& name, unsigned level) {
  if (level == 0) return name;
  return "d" + std::to_string(level) + "_" + name;
}

std::vector<std::string> JetCtx::var_names() const {
  std::vector<std::string> names;
  for (unsigned j = 0; j <= n; ++j)
    for (const auto& v : ring->vars()) names.push_back(jet_var_name(v, j));
  return names;
}

unsigned jet_depth(const JetCtx& ctx, const Poly& f) {
  const std::size_t k = ctx.base_vars();
  if (k == 0) return 0;
  unsigned depth = 0;
  for (std::size_t v = 0; v < f.nvars(); ++v)
    if (f.uses_var(v)) depth = std::max(depth, static_cast<unsigned>(v / k));
  return depth;
}

Poly phi_apply(const JetCtx& ctx, const Poly& f, unsigned i) {
  Poly g = check_jet_poly(ctx, f);
  if (jet_depth(ctx, g) + i > ctx.n)
    throw Error(ErrorKind::kLevelExceeded, "phi^" + std::to_string(i) + " of a depth-" +
                                               std::to_string(jet_depth(ctx, g)) +
                                               " polynomial needs level " +
                                               std::to_string(jet_depth(ctx, g) + i));
  for (unsigned s = 0; s < i; ++s) g = phi_once(ctx, g);
  return g;
}

Poly delta_apply(const JetCtx& ctx, const Poly& f) {
  Poly g = check_jet_poly(ctx, f);
  require_integral(g);
  Poly diff = phi_apply(ctx, g, 1) - g.pow(ctx.p);
  try {
    return exact_div(diff, ctx.p);
  } catch (const Error& e) {
    throw std::logic_error(std::string("delta is not integral: ") + e.what());
  }
}

Poly delta_power(const JetCtx& ctx, const Poly& f, unsigned j) {
  Poly g = check_jet_poly(ctx, f);
  for (unsigned s = 0; s < j; ++s) g = delta_apply(ctx, g);
  return g;
}

// ------------------------------------------------------------- presentations

JetPresentation jet_presentation(const JetCtx& ctx, RewriteMode mode) {
  JetPresentation out;
  out.ctx = ctx;
  std::vector<Poly> base_rels = relations_over_z(*ctx.ring);
  std::vector<Poly> level;
  for (const auto& r : base_rels) level.push_back(ctx.embed(r));
  std::vector<Poly> all;
  for (unsigned j = 0; j <= ctx.n; ++j) {
    if (j > 0)
      for (auto& r : level) r = delta_apply(ctx, r);
    out.relations.push_back(level);
    all.insert(all.end(), level.begin(), level.end());
  }
  out.ring = FPRing::make(Scalar::integers(), ctx.var_names(), std::move(all), mode);
  for (unsigned j = 0; j < ctx.n; ++j)
    for (std::size_t i = 0; i < ctx.base_vars(); ++i)
      out.phi_images.push_back(phi_apply(ctx, ctx.var(j, i), 1));
  return out;
}

bool JetPresentation::delta_stable(const std::vector<Poly>& multipliers) const {
  const unsigned p = ctx.p;
  for (unsigned j = 0; j < ctx.n; ++j)
    for (const auto& r : relations[j]) {
      Poly dr = delta_apply(ctx, r);
      // delta r must be the next-level relation.
      bool listed = false;
      for (const auto& s : relations[j + 1]) listed = listed || s == dr;
      if (!listed) return false;
      for (const auto& g0 : multipliers) {
        Poly g = ctx.embed(g0);
        if (jet_depth(ctx, g) > j) continue;
        Poly dg = delta_apply(ctx, g);
        Poly lhs = delta_apply(ctx, g * r);
        Poly rhs = g.pow(p) * dr + r.pow(p) * dg + (dg * dr).scaled(Rational(p));
        if (!(lhs == rhs)) return false;
      }
    }
  return true;
}

Poly phi_in_delta_coordinates(unsigned p, unsigned i) {
  // G_0 = y_0; G_i(y) = G_{i-1}(y_0^p + p y_1, ..., y_{i-1}^p + p y_i).
  Poly g = Poly::variable(1, 0);
  for (unsigned level = 1; level <= i; ++level) {
    const std::size_t nv = level + 1;
    std::vector<Poly> images;
    for (unsigned j = 0; j < level; ++j)
      images.push_back(Poly::variable(nv, j).pow(p) + Poly::variable(nv, j + 1).scaled(Rational(p)));
    g = g.substitute(images);
  }
  return g;
}

namespace {

// phi^i(f) = G_i(f, delta f, ..., delta^i f) with G_i(0) = 0 places phi^i(f)
// in the ideal generated by the delta^j f.
void certify_coghost(const JetPresentation& jets, unsigned i) {
  const auto& ctx = jets.ctx;
  Poly g = phi_in_delta_coordinates(ctx.p, i);
  if (g.constant_term() != 0)
    throw Error(ErrorKind::kVerificationFailed, "phi polynomial has a constant term");
  const std::size_t count = jets.relations.empty() ? 0 : jets.relations[0].size();
  for (std::size_t m = 0; m < count; ++m) {
    std::vector<Poly> coords;
    for (unsigned j = 0; j <= i; ++j) coords.push_back(jets.relations[j][m]);
    Poly via = g.substitute(coords);
    Poly direct = phi_apply(ctx, jets.relations[0][m], i);
    if (!(via == direct))
      throw Error(ErrorKind::kVerificationFailed,
                  "phi^" + std::to_string(i) + " of relation " +
                      jets.ring->format(jets.relations[0][m]) + " is not in the jet ideal");
  }
}

}  // namespace

RingHom coghost(const JetPresentation& jets, unsigned i) {
  const auto& ctx = jets.ctx;
  if (i > ctx.n)
    throw Error(ErrorKind::kLevelExceeded, "cgh_" + std::to_string(i) + " needs level " +
                                               std::to_string(i));
  certify_coghost(jets, i);
  std::vector<Poly> images;
  for (std::size_t v = 0; v < ctx.base_vars(); ++v) images.push_back(phi_apply(ctx, ctx.var(0, v), i));
  return RingHom(ctx.ring, jets.ring, std::move(images));
}

RingHom coghost_total(const JetPresentation& jets) {
  const auto& ctx = jets.ctx;
  const std::size_t k = ctx.base_vars();
  const std::size_t nv = k * (ctx.n + 1);
  std::vector<std::string> names;
  std::vector<Poly> rels;
  std::vector<Poly> images;
  for (unsigned c = 0; c <= ctx.n; ++c) {
    certify_coghost(jets, c);
    for (std::size_t v = 0; v < k; ++v) {
      names.push_back(ctx.ring->vars()[v] + "_" + std::to_string(c));
      images.push_back(phi_apply(ctx, ctx.var(0, v), c));
    }
  }
  for (unsigned c = 0; c <= ctx.n; ++c) {
    std::vector<std::size_t> map;
    for (std::size_t v = 0; v < k; ++v) map.push_back(c * k + v);
    for (const auto& r : ctx.ring->relations()) rels.push_back(r.remapped(map, nv));
  }
  RewriteMode mode = ctx.ring->has_rewrite() ? RewriteMode::kComplete : RewriteMode::kPresentationOnly;
  auto domain = FPRing::make(ctx.ring->base(), std::move(names), std::move(rels), mode);
  return RingHom(domain, jets.ring, std::move(images));
}

// ------------------------------------------------------------------------ rcgh

Poly rcgh_lift(const JetCtx& ctx, std::size_t var) {
  const unsigned p = ctx.p;
  std::vector<Poly> t;
  for (unsigned i = 0; i <= ctx.n; ++i) {
    Poly rest = phi_apply(ctx, ctx.var(0, var), i);
    for (unsigned j = 0; j < i; ++j) rest -= t[j].pow(upow(p, i - j)).scaled(Rational(ppow(p, j)));
    t.push_back(exact_div(rest, ppow(p, i)));
  }
  Poly out(ctx.nvars());
  for (unsigned i = 0; i <= ctx.n; ++i)
    out += t[i].pow(upow(p, ctx.n + 1 - i)).scaled(Rational(ppow(p, i)));
  return out;
}

RingHom rcgh(const JetPresentation& jets) {
  const auto& ctx = jets.ctx;
  auto target = mod_fiber(jets.ring, ppow(ctx.p, ctx.n + 1), RewriteMode::kPresentationOnly);
  std::vector<Poly> images;
  for (std::size_t v = 0; v < ctx.base_vars(); ++v) images.push_back(rcgh_lift(ctx, v));
  return RingHom(ctx.ring, target, std::move(images));
}

bool rcgh_consistent(const JetCtx& ctx) {
  JetCtx up = ctx.with_level(ctx.n + 1);
  for (std::size_t v = 0; v < ctx.base_vars(); ++v) {
    Poly diff = phi_apply(up, up.var(0, v), ctx.n + 1) - up.embed(rcgh_lift(ctx, v));
    try {
      exact_div(diff, ppow(ctx.p, ctx.n + 1));
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

// ------------------------------------------------------------------ Greenberg

RingPtr greenberg(const RingPtr& a, unsigned p, const std::vector<Poly>* lift, RewriteMode mode) {
  if (!is_prime(p)) throw Error(ErrorKind::kInvalidArgument, std::to_string(p) + " is not prime");
  if (a->base().kind() != Scalar::Kind::kIntegersMod)
    throw Error(ErrorKind::kBadBase, "Greenberg transform needs a base Z/p^m");
  const Integer q = a->base().modulus();
  unsigned m = 0;
  for (Integer r = q; r > 1; r /= p) {
    if (r % p != 0) throw Error(ErrorKind::kBadBase, "modulus is not a power of p");
    ++m;
  }
  std::vector<Poly> rels = a->relations();
  if (lift) {
    if (lift->size() != rels.size())
      throw Error(ErrorKind::kInvalidArgument, "one lift per relation is required");
    for (std::size_t i = 0; i < rels.size(); ++i) {
      require_integral((*lift)[i]);
      try {
        exact_div((*lift)[i] - rels[i], q);
      } catch (const Error&) {
        throw Error(ErrorKind::kInvalidArgument, "lift does not reduce to the relation mod p^m");
      }
    }
    rels = *lift;
  }
  rels.emplace_back(a->nvars(), Rational(q));
  auto lifted = FPRing::make(Scalar::integers(), a->vars(), rels, RewriteMode::kPresentationOnly);
  auto jets = jet_presentation(JetCtx(p, m - 1, lifted), RewriteMode::kPresentationOnly);
  return mod_fiber(jets.ring, p, mode);
}

// --------------------------------------------------------- mod-p etale check

EtaleCheckReport jet_mod_p_etale_check(const RingPtr& a, const Poly& f, unsigned p, unsigned n) {
  if (a->base().kind() != Scalar::Kind::kIntegers)
    throw Error(ErrorKind::kBadBase, "etale check needs a ring over Z");
  const std::size_t k = a->nvars();
  Localization loc = localize(a, f);
  JetCtx ca(p, n, a);
  JetCtx cb(p, n, loc.ring);
  auto ja = jet_presentation(ca);
  auto jb = jet_presentation(cb);

  // Right side: (F_p (x) Lambda_n A) (x)_A A[1/f] on jets of A plus u.
  const std::size_t na = ca.nvars();
  std::vector<std::string> rnames = ca.var_names();
  rnames.push_back(loc.ring->vars()[loc.inverse_var]);
  std::vector<Poly> rrels;
  for (const auto& level : ja.relations)
    for (const auto& r : level) rrels.push_back(r.resized(na + 1));
  rrels.push_back(Poly::variable(na + 1, na) * f.resized(na + 1) - Poly(na + 1, Rational(1)));
  auto rhs = FPRing::make(Scalar::integers_mod(p), rnames, rrels);
  auto lhs = mod_fiber(jb.ring, p);
  if (!rhs->has_rewrite() || !lhs->has_rewrite())
    throw Error(ErrorKind::kPresentationOnly, "etale check needs rewrite systems on both sides");

  EtaleCheckReport report;
  const std::size_t kb = k + 1;
  std::vector<Poly> psi(cb.nvars(), Poly(rhs->nvars()));
  for (unsigned j = 0; j <= n; ++j)
    for (std::size_t i = 0; i < k; ++i) psi[j * kb + i] = Poly::variable(rhs->nvars(), j * k + i);
  psi[k] = Poly::variable(rhs->nvars(), na);

  const std::size_t inv_rel = jb.relations[0].size() - 1;  // u f - 1 is the last relation
  for (unsigned j = 1; j <= n; ++j) {
    const std::size_t target = j * kb + k;
    // Coefficients mod p only; a full normal form could eliminate the unknown.
    const Scalar fp = Scalar::integers_mod(p);
    std::vector<Poly::Term> reduced;
    for (const auto& t : jb.relations[j][inv_rel].terms()) reduced.push_back({t.mono, fp.normalize(t.coeff)});
    Poly rel = Poly::from_terms(cb.nvars(), std::move(reduced));
    if (rel.degree_in(target) > 1)
      throw Error(ErrorKind::kVerificationFailed,
                  lhs->vars()[target] + " does not enter linearly mod p");
    std::vector<Poly::Term> lin, rest;
    for (const auto& t : rel.terms()) {
      if (t.mono[target] == 1) {
        std::vector<std::uint32_t> e = t.mono.exponents();
        e[target] = 0;
        lin.push_back({Monomial(std::move(e)), t.coeff});
      } else {
        rest.push_back(t);
      }
    }
    // Unknowns above level j do not occur; the current one is split off.
    std::vector<Poly> sub = psi;
    sub[target] = Poly(rhs->nvars());
    Poly c = rhs->normal_form(Poly::from_terms(cb.nvars(), lin).substitute(sub));
    Poly r = rhs->normal_form(Poly::from_terms(cb.nvars(), rest).substitute(sub));
    Poly c_inv = Poly::variable(rhs->nvars(), na).pow(upow(p, j));
    if (!rhs->normal_form(c * c_inv - Poly(rhs->nvars(), Rational(1))).is_zero())
      throw Error(ErrorKind::kVerificationFailed,
                  "coefficient of " + lhs->vars()[target] + " is not f^(p^" + std::to_string(j) + ")");
    psi[target] = rhs->normal_form(-(r * c_inv));
    report.lines.push_back(lhs->vars()[target] + " -> " + rhs->format(psi[target]));
  }

  RingHom to_rhs;
  RingHom to_lhs;
  try {
    to_rhs = RingHom(lhs, rhs, psi);
    std::vector<Poly> iota;
    for (unsigned j = 0; j <= n; ++j)
      for (std::size_t i = 0; i < k; ++i) iota.push_back(Poly::variable(lhs->nvars(), j * kb + i));
    iota.push_back(Poly::variable(lhs->nvars(), k));
    to_lhs = RingHom(rhs, lhs, iota);
  } catch (const Error& e) {
    throw Error(ErrorKind::kVerificationFailed, std::string("generator map is not well defined: ") + e.what());
  }
  for (std::size_t g = 0; g < lhs->nvars(); ++g) {
    Poly x = Poly::variable(lhs->nvars(), g);
    if (!(to_lhs.apply(to_rhs.apply(x)) == lhs->normal_form(x)))
      throw Error(ErrorKind::kVerificationFailed, "round trip fails on " + lhs->vars()[g]);
  }
  for (std::size_t g = 0; g < rhs->nvars(); ++g) {
    Poly x = Poly::variable(rhs->nvars(), g);
    if (!(to_rhs.apply(to_lhs.apply(x)) == rhs->normal_form(x)))
      throw Error(ErrorKind::kVerificationFailed, "round trip fails on " + rhs->vars()[g]);
  }
  report.passed = true;
  return report;
}

}  // namespace wittkit

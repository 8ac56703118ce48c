// Acceptance suite: one line per criterion, exit status 0 iff all pass.
// Usage: acceptance [criterion ids...]

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "wittkit/geometry.hpp"
#include "wittkit/jets.hpp"
#include "wittkit/lab.hpp"
#include "wittkit/sample.hpp"
#include "wittkit/witt.hpp"

using namespace wittkit;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  std::string title;
  double budget_s;  // 0: no budget
  std::function<Outcome()> run;
};

std::string pn(unsigned p, unsigned n) {
  return "p=" + std::to_string(p) + " n=" + std::to_string(n);
}

RingPtr ring_of(const std::vector<std::string>& vars, const std::vector<std::string>& rels) {
  return FPRing::parse(Scalar::integers(), vars, rels);
}

// Ghost components of integer vectors, straight from the defining sum.
std::vector<Integer> int_ghost(unsigned p, const std::vector<Integer>& a) {
  std::vector<Integer> w;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Integer s = 0;
    for (std::size_t j = 0; j <= i; ++j) s += ipow(p, j) * ipow(a[j], ipow(p, i - j).get_ui());
    w.push_back(s);
  }
  return w;
}

Outcome universal_polys() {
  Outcome o;
  auto& cache = UnivPolyCache::instance();
  for (unsigned p : {2U, 3U, 5U}) {
    UnivPolys fresh = UnivPolys::compute(p, 3);
    o.require(fresh.all_integral(), "non-integral coefficient at " + pn(p, 3));
    o.require(fresh.verify_ghost_identities(), "ghost identity fails at " + pn(p, 3));
    for (unsigned n = 0; n <= 3; ++n) {
      auto cached = cache.get(p, n);
      o.require(cached->all_integral(), "cached polynomials not integral at " + pn(p, n));
      for (unsigned i = 0; i <= n; ++i) {
        o.require(cached->sum[i] == fresh.sum[i] && cached->prod[i] == fresh.prod[i] &&
                      cached->neg[i] == fresh.neg[i],
                  "cache disagrees with recomputation at " + pn(p, n));
        if (i < n) o.require(cached->frob[i] == fresh.frob[i], "cached Frobenius differs at " + pn(p, n));
      }
    }
  }
  if (o.ok) o.detail = "S, P, N, F integral for p in {2,3,5}, n <= 3";
  return o;
}

Outcome ghost_homomorphism() {
  Outcome o;
  std::mt19937_64 rng(2024);
  const auto zx = FPRing::polynomial({"x"});
  const auto z8 = FPRing::make(Scalar::integers_mod(8), {}, {});
  std::size_t pairs = 0;
  for (unsigned p : {2U, 3U, 5U})
    for (unsigned n = 0; n <= 3; ++n)
      for (const auto& ring : {FPRing::integers(), z8, zx}) {
        WittCtx c(p, n, ring);
        const bool is_zx = ring == zx;
        for (int t = 0; t < 500 && o.ok; ++t) {
          WittVec u = is_zx ? sample::random_witt(rng, c, 3, 3, 5) : sample::random_witt(rng, c, 0, 1, 40);
          WittVec v = is_zx ? sample::random_witt(rng, c, 3, 3, 5) : sample::random_witt(rng, c, 0, 1, 40);
          GhostVec gu = ghost(u), gv = ghost(v);
          o.require(ghost(w_add(u, v)) == gu + gv, "ghost not additive at " + pn(p, n));
          o.require(ghost(w_mul(u, v)) == gu * gv, "ghost not multiplicative at " + pn(p, n));
          if (ring == z8) continue;
          if (!(u == w_zero(c)))
            o.require(!(gu == ghost(w_zero(c))), "nonzero vector with zero ghost at " + pn(p, n));
          o.require(from_ghost(c, gu.entries()) == u, "ghost not injective at " + pn(p, n));
          ++pairs;
        }
        if (ring == FPRing::integers() && o.ok) {
          // Independent integer oracle for the ghost sum itself.
          WittVec u = sample::random_witt(rng, c, 0, 1, 40);
          std::vector<Integer> a;
          for (const auto& e : u.components()) a.push_back(e.value().constant_term().get_num());
          auto w = int_ghost(p, a);
          GhostVec g = ghost(u);
          for (std::size_t i = 0; i < w.size(); ++i)
            o.require(g[i] == RingElem::of(c.ring, w[i]), "ghost formula mismatch at " + pn(p, n));
        }
      }
  if (o.ok) o.detail = "500 pairs per (p, n, ring), p in {2,3,5}, n <= 3, rings Z, Z/8, Z[x]";
  return o;
}

Outcome presentation_Z() {
  Outcome o;
  for (unsigned p : {2U, 3U})
    for (unsigned n = 1; n <= 3; ++n) {
      const WittCtx c(p, n, FPRing::integers());
      auto V = [&](unsigned i) {
        WittVec v = w_one(c.with_length(n - i));
        for (unsigned k = 0; k < i; ++k) v = versch(v);
        return v;
      };
      for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = i; j <= n; ++j)
          o.require(w_mul(V(i), V(j)) == w_scale(ipow(p, i), V(j)),
                    "V^" + std::to_string(i) + "(1) V^" + std::to_string(j) + "(1) != p^i V^j(1) at " + pn(p, n));
      auto pres = wittring_presentation_Z(p, n, 20, 1);
      o.require(pres.verified, "presentation not verified at " + pn(p, n));
      auto names = pres.ring->vars();
      for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = i; j <= n; ++j) {
          Poly rel = parse_poly("x" + std::to_string(i) + "*x" + std::to_string(j) + " - " +
                                    ipow(p, i).get_str() + "*x" + std::to_string(j),
                                names);
          o.require(pres.ring->normal_form(rel).is_zero(),
                    "x_i x_j - p^i x_j not in the presentation ideal at " + pn(p, n));
        }
    }
  if (o.ok) o.detail = "p in {2,3}, 1 <= i <= j <= n <= 3";
  return o;
}

Outcome socle() {
  Outcome o;
  for (unsigned p : {2U, 3U, 5U})
    for (unsigned n = 0; n <= 3; ++n) {
      SuiteReport rep = check_socle(p, n);
      o.require(rep.passed(), "socle suite fails at " + pn(p, n));
      const unsigned expected = n == 0 ? 1 : n;
      bool found = false;
      for (const auto& c : rep.checks)
        if (c.name.find("socle dimension") != std::string::npos)
          found = c.detail.rfind("dim " + std::to_string(expected) + " ", 0) == 0;
      o.require(found, "socle dimension is not " + std::to_string(expected) + " at " + pn(p, n));
    }
  if (o.ok) o.detail = "dim n (1 for n = 0), p in {2,3,5}, n <= 3";
  return o;
}

Outcome jet_relation() {
  Outcome o;
  for (unsigned p : {2U, 3U, 5U}) {
    const std::string pp = std::to_string(p);
    auto a = ring_of({"x"}, {"x^2 - " + pp + "*x"});
    JetCtx ctx(p, 1, a);
    auto names = ctx.var_names();
    Poly rel = delta_apply(ctx, ctx.embed(a->relations()[0]));
    auto modx = ring_of({"x", "d1_x"}, {"x^2 - " + pp + "*x"});
    Poly relation = parse_poly("2*x^" + pp + "*d1_x + " + pp + "*d1_x^2 - x^" + pp + " - " + pp + "*d1_x + " +
                                ipow(p, p - 1).get_str() + "*x^" + pp,
                            names);
    o.require(modx->normal_form(rel - relation).is_zero(), "delta(x^2 - px) differs at p=" + pp);
    auto jets = jet_presentation(ctx);
    auto fiber = mod_fiber(jets.ring, p);
    auto expected = FPRing::parse(Scalar::integers_mod(p), {"x", "d1_x"}, {"x^2"});
    o.require(fiber->has_rewrite() && same_ideal(fiber, expected), "mod-p fiber is not (x^2) at p=" + pp);
  }
  if (o.ok) o.detail = "p in {2,3,5}";
  return o;
}

Outcome point_counts() {
  Outcome o;
  std::ostringstream d;
  for (unsigned p : {2U, 3U, 5U}) {
    const std::string pp = std::to_string(p);
    auto zz = jet_presentation(JetCtx(p, 1, ring_of({"e"}, {"e^2 - e"})));
    o.require(count_points(zz.ring, p) == 2, "Lambda_1(Z x Z) over F_" + pp + " is not 2 points");
    for (unsigned q : {3U, 5U, 7U})
      if (q != p)
        o.require(count_points(zz.ring, q) == 4,
                  "Lambda_1(Z x Z) over F_" + std::to_string(q) + " is not 4 points (p=" + pp + ")");
    auto sq = jet_presentation(JetCtx(p, 1, ring_of({"x"}, {"x^2 - " + pp})));
    o.require(count_points(sq.ring, p) == 0, "Lambda_1(Z[x]/(x^2-p)) has F_p-points at p=" + pp);
  }
  if (o.ok) o.detail = "p in {2,3,5}";
  return o;
}

Outcome equalizer() {
  Outcome o;
  std::uint64_t seed = 1;
  for (unsigned p : {2U, 3U}) {
    const std::string pp = std::to_string(p);
    for (const auto& a : {FPRing::integers(), FPRing::polynomial({"x"}), ring_of({"x"}, {"x^2 - " + pp + "*x"})})
      for (unsigned n = 0; n <= 2; ++n) {
        auto rep = coequalizer_check(a, p, n, 100, seed++);
        o.require(rep.round_trips.passed == 100 && rep.ok(),
                  "round trip fails at " + pn(p, n) + (rep.round_trips.failures.empty() ? "" : ": " + rep.round_trips.failures[0]));
        o.require(rep.rejections.passed == 100,
                  "non-congruent pair accepted at " + pn(p, n) + (rep.rejections.failures.empty() ? "" : ": " + rep.rejections.failures[0]));
      }
  }
  if (o.ok) o.detail = "100 round trips and 100 rejections per (A, p, n)";
  return o;
}

Outcome blowup() {
  Outcome o;
  for (const auto& a : {FPRing::polynomial({"x"}), FPRing::polynomial({"x", "y"})}) {
    for (unsigned p : {2U, 3U})
      for (unsigned n = 0; n <= 1; ++n)
        o.require(blowup_vs_jet_iso(a, p, n).passed, "blow-up iso fails at " + pn(p, n));
    for (unsigned p : {2U, 3U})
      for (unsigned n = 0; n <= 2; ++n)
        o.require(rcgh_consistent(JetCtx(p, n, a)), "rcgh divisibility fails at " + pn(p, n));
  }
  if (o.ok) o.detail = "Z[x], Z[x,y]; p in {2,3}; iso for n <= 1, rcgh for n <= 2";
  return o;
}

Outcome coghost_inverse() {
  Outcome o;
  auto zx = FPRing::polynomial({"x"});
  for (unsigned p : {2U, 3U})
    for (unsigned n = 0; n <= 2; ++n) {
      auto rep = coghost_away_from_p(zx, p, n);
      o.require(rep.passed, "co-ghost inverse fails at " + pn(p, n));
      // The inverse is triangular: delta^i x only involves the copies x_0..x_i.
      for (unsigned i = 0; i <= n && o.ok; ++i) {
        const Poly& img = rep.inverse.images()[i];
        for (const auto& t : img.terms())
          for (std::size_t v = i + 1; v < img.nvars(); ++v)
            o.require(t.mono[v] == 0, "inverse is not triangular at " + pn(p, n));
      }
    }
  if (o.ok) o.detail = "Z[x], p in {2,3}, n <= 2";
  return o;
}

Outcome p1() {
  Outcome o;
  for (unsigned p : {2U, 3U}) {
    auto ws = witt_space(GluedScheme::projective_line(), p, 1);
    o.require(ws.charts.size() == 2 && ws.overlaps.size() == 2, "P^1 Witt space has wrong shape");
    auto rep = global_sections_P1(p, 1, 3);
    o.require(rep.rank == 2, "H^0 rank " + std::to_string(rep.rank) + " at p=" + std::to_string(p));
    o.require(rep.matches_witt_of_z, "H^0 does not match W_1(Z) at p=" + std::to_string(p));
  }
  if (o.ok) o.detail = "p in {2,3}, D = 3: rank 2, equal to W_1(Z)";
  return o;
}

Outcome big_witt() {
  Outcome o;
  BigWittCtx z23({{2, 1}, {3, 1}}, {2, 3}, FPRing::integers());
  BigWittCtx z32 = z23.reordered({3, 2});
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> dist(-50, 50);
  for (int t = 0; t < 100 && o.ok; ++t) {
    std::vector<NestedVec> outer;
    for (unsigned i = 0; i <= 1; ++i) {
      std::vector<NestedVec> inner;
      for (unsigned j = 0; j <= 1; ++j) inner.emplace_back(RingElem::of(z23.nested().ring, dist(rng)));
      outer.emplace_back(std::move(inner));
    }
    NestedVec u(std::move(outer));
    NestedVec u2 = big_convert(z23, z32, u);
    o.require(flatten_ghost(z23, u) == flatten_ghost(z32, u2), "flattened ghosts differ across orders");
    o.require(big_convert(z32, z23, u2) == u, "conversion does not round-trip");
  }
  auto za = FPRing::polynomial({"a"});
  RingElem a = RingElem::parse(za, "a");
  for (const auto& order : {std::vector<unsigned>{2, 3}, std::vector<unsigned>{3, 2}}) {
    BigWittCtx c({{2, 1}, {3, 1}}, order, za);
    auto flat = flatten_ghost(c, nested_teich(c.nested(), a));
    o.require(flat.size() == 4, "ghost grid is not indexed by the divisors of 6");
    for (unsigned d : {1U, 2U, 3U, 6U})
      o.require(flat.count(Integer(d)) && flat.at(Integer(d)) == a.pow(d), "Teichmueller grid is not (a^d)");
  }
  if (o.ok) o.detail = "E = {2,3}, lengths (1,1), 100 vectors over Z";
  return o;
}

Outcome delta_calculus() {
  Outcome o;
  std::mt19937_64 rng(12);
  auto a2 = FPRing::polynomial({"x", "y"});
  for (unsigned p : {2U, 3U}) {
    JetCtx c(p, 1, a2);
    for (int t = 0; t < 500 && o.ok; ++t) {
      Poly a = c.embed(sample::random_poly(rng, 2, 3, 4, 4));
      Poly b = c.embed(sample::random_poly(rng, 2, 3, 4, 4));
      Poly da = delta_apply(c, a), db = delta_apply(c, b);
      Poly cross(c.nvars());
      for (unsigned k = 1; k < p; ++k) {
        Integer bin;
        mpz_bin_uiui(bin.get_mpz_t(), p, k);
        cross += (a.pow(k) * b.pow(p - k)).scaled(Rational(Integer(bin / p)));
      }
      o.require(delta_apply(c, a + b) == da + db - cross, "sum rule fails at p=" + std::to_string(p));
      o.require(delta_apply(c, a * b) == a.pow(p) * db + b.pow(p) * da + (da * db).scaled(Rational(p)),
                "product rule fails at p=" + std::to_string(p));
      Poly pa = phi_apply(c, a), pb = phi_apply(c, b);
      o.require(pa == a.pow(p) + da.scaled(Rational(p)), "phi != (.)^p + p delta at p=" + std::to_string(p));
      o.require(phi_apply(c, a + b) == pa + pb && phi_apply(c, a * b) == pa * pb,
                "phi is not a ring map at p=" + std::to_string(p));
    }
  }
  if (o.ok) o.detail = "500 pairs in Z[x,y] per p in {2,3}";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "universal polynomial integrality", 60, universal_polys},
      {2, "ghost homomorphism and injectivity", 60, ghost_homomorphism},
      {3, "W_n(Z) presentation", 10, presentation_Z},
      {4, "socle and Gorenstein", 5, socle},
      {5, "jet relation of Z[x]/(x^2-px)", 5, jet_relation},
      {6, "counterexample point counts", 30, point_counts},
      {7, "alpha equalizer", 60, equalizer},
      {8, "blow-up and jets", 60, blowup},
      {9, "co-ghost away from p", 10, coghost_inverse},
      {10, "Witt space of P^1", 30, p1},
      {11, "big Witt nesting", 0, big_witt},
      {12, "delta-calculus identities", 30, delta_calculus},
  };
  std::set<int> wanted;
  for (int k = 1; k < argc; ++k) wanted.insert(std::stoi(argv[k]));

  int failed = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.budget_s == 0 || secs <= c.budget_s;
    const bool pass = out.ok && in_time;
    if (!pass) ++failed;
    char timing[64];
    if (c.budget_s > 0)
      std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", secs, c.budget_s);
    else
      std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << "  (" << timing
              << ")  " << (in_time ? out.detail : "over time budget; " + out.detail) << std::endl;
  }
  return failed == 0 ? 0 : 1;
}

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "generators.hpp"
#include "wittkit/error.hpp"
#include "wittkit/eval.hpp"
#include "wittkit/witt.hpp"

using namespace wittkit;

namespace {

// Ghost components of an integer vector, straight from the defining sum.
std::vector<Integer> int_ghost(unsigned p, const std::vector<Integer>& a) {
  std::vector<Integer> w;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Integer s = 0;
    for (std::size_t j = 0; j <= i; ++j) {
      Integer pj = ipow(p, j);
      s += pj * ipow(a[j], ipow(p, i - j).get_ui());
    }
    w.push_back(s);
  }
  return w;
}

// Recursive inversion over Q with an explicit integrality assertion.
std::vector<Integer> int_from_ghost(unsigned p, const std::vector<Integer>& w) {
  std::vector<Integer> a;
  for (std::size_t i = 0; i < w.size(); ++i) {
    Rational rest(w[i]);
    for (std::size_t j = 0; j < i; ++j) rest -= Rational(ipow(p, j) * ipow(a[j], ipow(p, i - j).get_ui()));
    rest /= Rational(ipow(p, i));
    rest.canonicalize();
    REQUIRE(rest.get_den() == 1);
    a.push_back(rest.get_num());
  }
  return a;
}

std::vector<Integer> ints(const WittVec& v) {
  std::vector<Integer> out;
  for (const auto& c : v.components()) out.push_back(c.value().constant_term().get_num());
  return out;
}

WittVec zvec(const WittCtx& ctx, std::vector<long> comps) {
  std::vector<RingElem> e;
  for (long c : comps) e.push_back(RingElem::of(ctx.ring, c));
  return WittVec(ctx, std::move(e));
}

struct IntEval {
  Integer constant(const Rational& c) { return c.get_num(); }
  Integer add(const Integer& a, const Integer& b) { return a + b; }
  Integer mul(const Integer& a, const Integer& b) { return a * b; }
};

}  // namespace

TEST_CASE("universal polynomials match hand-solved low levels") {
  auto names = UnivPolys::pair_names(1);
  auto p2 = UnivPolyCache::instance().get(2, 1);
  CHECK(p2->sum[1] == parse_poly("x1 + y1 - x0*y0", names));
  CHECK(p2->prod[1] == parse_poly("x0^2*y1 + x1*y0^2 + 2*x1*y1", names));
  auto p3 = UnivPolyCache::instance().get(3, 1);
  CHECK(p3->sum[1] == parse_poly("x1 + y1 - x0^2*y0 - x0*y0^2", names));

  // Independent derivation of S_1 for p = 2: (x0^2 + 2x1 + y0^2 + 2y1 - (x0+y0)^2) / 2.
  Poly x0 = Poly::variable(4, 0), y0 = Poly::variable(4, 1);
  Poly x1 = Poly::variable(4, 2), y1 = Poly::variable(4, 3);
  Poly num = x0 * x0 + x1.scaled(2) + y0 * y0 + y1.scaled(2) - (x0 + y0).pow(2);
  CHECK(exact_div(num, 2) == p2->sum[1]);
}

TEST_CASE("universal polynomials are integral and satisfy ghost identities") {
  for (unsigned p : {2U, 3U, 5U})
    for (unsigned n = 0; n <= 2; ++n) {
      CAPTURE(p);
      CAPTURE(n);
      auto u = UnivPolys::compute(p, n);
      CHECK(u.all_integral());
      CHECK(u.verify_ghost_identities());
      CHECK(u.frob.size() == n);
    }
}

TEST_CASE("universal polynomials agree with integer ghost arithmetic at random points") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> d(-6, 6);
  for (unsigned p : {2U, 3U}) {
    const unsigned n = 3;
    auto u = UnivPolyCache::instance().get(p, n);
    IntEval ops;
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<Integer> a, b, args;
      for (unsigned i = 0; i <= n; ++i) {
        a.push_back(d(rng));
        b.push_back(d(rng));
        args.push_back(a.back());
        args.push_back(b.back());
      }
      auto wa = int_ghost(p, a), wb = int_ghost(p, b);
      std::vector<Integer> s, m;
      for (unsigned i = 0; i <= n; ++i) {
        s.push_back(evaluate(u->sum[i], std::span<const Integer>(args.data(), 2 * (i + 1)), ops));
        m.push_back(evaluate(u->prod[i], std::span<const Integer>(args.data(), 2 * (i + 1)), ops));
      }
      auto ws = int_ghost(p, s), wm = int_ghost(p, m);
      for (unsigned i = 0; i <= n; ++i) {
        CHECK(ws[i] == wa[i] + wb[i]);
        CHECK(wm[i] == wa[i] * wb[i]);
      }
    }
  }
}

TEST_CASE("cache text round-trips and rebuild is deterministic") {
  auto u = UnivPolys::compute(3, 2);
  auto v = UnivPolys::from_text(3, 2, u.to_text());
  CHECK(v.to_text() == u.to_text());
  CHECK(v.sum == u.sum);
  CHECK_THROWS_AS(UnivPolys::from_text(3, 2, "x0 + y0\n"), Error);

  auto& cache = UnivPolyCache::instance();
  if (!cache.directory()) return;
  auto path = cache.rebuild(2, 2);
  std::ifstream first(path);
  std::stringstream a;
  a << first.rdbuf();
  cache.rebuild(2, 2);
  std::ifstream second(path);
  std::stringstream b;
  b << second.rdbuf();
  CHECK(a.str() == b.str());
  CHECK(a.str() == UnivPolys::compute(2, 2).to_text());
}

TEST_CASE("Witt arithmetic over Z: small examples") {
  WittCtx c(2, 1, FPRing::integers());
  CHECK(ints(w_add(zvec(c, {1, 0}), zvec(c, {1, 0}))) == std::vector<Integer>{2, -1});
  CHECK(ints(w_mul(zvec(c, {0, 1}), zvec(c, {0, 1}))) == std::vector<Integer>{0, 2});
  WittVec u = zvec(c, {5, -3});
  CHECK(w_add(u, w_zero(c)) == u);
  CHECK(w_mul(u, w_one(c)) == u);
  CHECK(w_add(u, w_neg(u)) == w_zero(c));
  CHECK(ints(w_from_integer(c, 2)) == std::vector<Integer>{2, -1});

  WittCtx other(3, 1, FPRing::integers());
  CHECK_THROWS_AS(w_add(u, w_zero(other)), Error);
  CHECK_THROWS_AS(zvec(c, {1}), Error);
}

TEST_CASE("Witt sums and products agree with the integer ghost oracle") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-20, 20);
  for (unsigned p : {2U, 3U, 5U})
    for (unsigned n = 0; n <= 2; ++n) {
      WittCtx c(p, n, FPRing::integers());
      for (int t = 0; t < 20; ++t) {
        std::vector<long> a, b;
        for (unsigned i = 0; i <= n; ++i) {
          a.push_back(d(rng));
          b.push_back(d(rng));
        }
        auto u = zvec(c, a), v = zvec(c, b);
        auto gu = int_ghost(p, ints(u)), gv = int_ghost(p, ints(v));
        std::vector<Integer> gs, gm;
        for (unsigned i = 0; i <= n; ++i) {
          gs.push_back(gu[i] + gv[i]);
          gm.push_back(gu[i] * gv[i]);
        }
        CHECK(ints(w_add(u, v)) == int_from_ghost(p, gs));
        CHECK(ints(w_mul(u, v)) == int_from_ghost(p, gm));
      }
    }
}

TEST_CASE("ghost and from_ghost") {
  WittCtx c(2, 2, FPRing::integers());
  auto g = ghost(zvec(c, {1, 1, 1}));
  std::vector<Integer> gi;
  for (const auto& e : g.entries()) gi.push_back(e.value().constant_term().get_num());
  CHECK(gi == std::vector<Integer>{1, 3, 7});
  CHECK(ghost(w_zero(c)) == GhostVec(c, w_zero(c).components()));

  WittCtx c1(2, 1, FPRing::integers());
  auto r = from_ghost(c1, {RingElem::of(c1.ring, 1), RingElem::of(c1.ring, 3)});
  CHECK(ints(r) == std::vector<Integer>{1, 1});
  try {
    from_ghost(c1, {RingElem::of(c1.ring, 1), RingElem::of(c1.ring, 2)});
    FAIL("expected NotInGhostImage");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNotInGhostImage);
  }

  auto ring = FPRing::polynomial({"a"});
  WittCtx ca(3, 2, ring);
  RingElem a = RingElem::parse(ring, "a");
  auto ta = teich(ca, a);
  auto gt = ghost(ta);
  CHECK(gt[0] == a);
  CHECK(gt[1] == a.pow(3));
  CHECK(gt[2] == a.pow(9));
  CHECK(from_ghost(ca, gt.entries()) == ta);
  CHECK(ghost_component(ta, 2) == a.pow(9));
}

TEST_CASE("Teichmueller lifts are multiplicative") {
  WittCtx c(2, 1, FPRing::integers());
  auto t = w_mul(teich(c, RingElem::of(c.ring, 2)), teich(c, RingElem::of(c.ring, 3)));
  CHECK(ints(t) == std::vector<Integer>{6, 0});
  auto g = ghost(teich(c, RingElem::of(c.ring, 3)));
  CHECK(g[0].value().constant_term() == 3);
  CHECK(g[1].value().constant_term() == 9);
  CHECK(teich(c, RingElem::of(c.ring, 1)) == w_one(c));

  auto ring = FPRing::polynomial({"a", "b"});
  for (unsigned p : {2U, 3U}) {
    WittCtx cr(p, 2, ring);
    RingElem a = RingElem::parse(ring, "a + 2*b"), b = RingElem::parse(ring, "b - 1");
    CHECK(w_mul(teich(cr, a), teich(cr, b)) == teich(cr, a * b));
  }
}

TEST_CASE("Verschiebung, Frobenius and truncation") {
  WittCtx c0(2, 0, FPRing::integers());
  auto v1 = versch(w_one(c0));
  CHECK(ints(v1) == std::vector<Integer>{0, 1});
  CHECK(ghost(v1)[1].value().constant_term() == 2);
  CHECK(ints(w_mul(v1, v1)) == std::vector<Integer>{0, 2});
  CHECK(w_mul(v1, v1) == w_scale(2, v1));

  auto ring = FPRing::polynomial({"a0", "a1"});
  WittCtx c(2, 1, ring);
  auto f = frob(WittVec::parse(c, {"a0", "a1"}));
  CHECK(f.ctx().n == 0);
  CHECK(f[0] == RingElem::parse(ring, "a0^2 + 2*a1"));
  CHECK_THROWS_AS(frob(w_one(c0)), Error);

  std::mt19937_64 rng(9);
  auto zx = FPRing::polynomial({"x"});
  for (unsigned p : {2U, 3U}) {
    WittCtx cn(p, 1, zx);
    for (int t = 0; t < 10; ++t) {
      auto u = testing::random_witt(rng, cn), v = testing::random_witt(rng, cn);
      CHECK(versch(w_add(u, v)) == w_add(versch(u), versch(v)));
      // F V = p on W_1, and V(u) V(v) = p V(u v).
      CHECK(frob(versch(u)) == w_scale(p, u));
      CHECK(w_mul(versch(u), versch(v)) == w_scale(p, versch(w_mul(u, v))));
      RingElem a = testing::random_elem(rng, zx);
      CHECK(frob(teich(cn.with_length(2), a)) == teich(cn, a.pow(p)));
    }
  }

  WittCtx c2(2, 1, FPRing::integers());
  auto w = zvec(c2, {2, -1});
  CHECK(truncate(w, 1) == w);
  CHECK(ints(truncate(w, 0)) == std::vector<Integer>{2});
  CHECK_THROWS_AS(truncate(w, 2), Error);
}

TEST_CASE("monomial identity [t]^b V^n([t^a]) = V^n([t^(b p^n + a)])") {
  auto zt = FPRing::polynomial({"t"});
  for (unsigned p : {2U, 3U})
    for (unsigned n = 1; n <= 2; ++n)
      for (unsigned a = 0; a <= 2; ++a)
        for (unsigned b = 0; b <= 2; ++b) {
          WittCtx base(p, 0, zt);
          WittVec lhs_inner = teich(base, RingElem::parse(zt, "t").pow(a));
          WittVec rhs_inner = teich(base, RingElem::parse(zt, "t").pow(b * ipow(p, n).get_ui() + a));
          for (unsigned k = 0; k < n; ++k) {
            lhs_inner = versch(lhs_inner);
            rhs_inner = versch(rhs_inner);
          }
          WittCtx cn(p, n, zt);
          CHECK(w_mul(teich(cn, RingElem::parse(zt, "t").pow(b)), lhs_inner) == rhs_inner);
        }
}

TEST_CASE("reduced ghost map") {
  auto za = FPRing::polynomial({"a"});
  WittCtx c0(2, 0, za);
  auto r0 = rgh(WittVec::parse(c0, {"a"}));
  CHECK(r0.ring()->base() == Scalar::integers_mod(2));
  CHECK(r0 == RingElem::parse(r0.ring(), "a^2"));

  WittCtx c1(2, 1, FPRing::integers());
  auto r1 = rgh(zvec(c1, {1, 1}));
  CHECK(r1.value().constant_term() == 3);
  CHECK(r1.ring()->base() == Scalar::integers_mod(4));

  WittCtx c2(3, 1, za);
  auto rt = rgh(teich(c2, RingElem::parse(za, "a")));
  CHECK(rt == RingElem::parse(rt.ring(), "a^9"));

  std::mt19937_64 rng(21);
  auto zx = FPRing::polynomial({"x"});
  for (unsigned p : {2U, 3U})
    for (unsigned n = 0; n <= 2; ++n) {
      WittCtx c(p, n, zx);
      auto target = reduced_ghost_target(c);
      for (int t = 0; t < 10; ++t) {
        auto u = testing::random_witt(rng, c), v = testing::random_witt(rng, c);
        CHECK(rgh(w_add(u, v), target) == rgh(u, target) + rgh(v, target));
        CHECK(rgh(w_mul(u, v), target) == rgh(u, target) * rgh(v, target));
        // Any extension to length n+1 has gh_{n+1} congruent to rgh.
        auto ext = alpha_section(u, rgh_lift(u) + RingElem::of(zx, ipow(p, n + 1) * 7));
        CHECK(RingElem(target, ghost_component(ext, n + 1).value()) == rgh(u, target));
      }
    }
}

TEST_CASE("alpha and its section") {
  auto za = FPRing::polynomial({"a0", "a1"});
  WittCtx c(2, 1, za);
  auto al = alpha(WittVec::parse(c, {"a0", "a1"}));
  CHECK(al.truncated == WittVec::parse(c.with_length(0), {"a0"}));
  CHECK(al.top_ghost == RingElem::parse(za, "a0^2 + 2*a1"));

  WittCtx z0(2, 0, FPRing::integers());
  auto s = alpha_section(zvec(z0, {3}), RingElem::of(z0.ring, 11));
  CHECK(ints(s) == std::vector<Integer>{3, 1});
  try {
    alpha_section(zvec(z0, {3}), RingElem::of(z0.ring, 10));
    FAIL("expected CongruenceFailed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kCongruenceFailed);
  }

  auto zt = FPRing::polynomial({"t"});
  WittCtx c2(3, 2, zt);
  RingElem t = RingElem::parse(zt, "t");
  auto at = alpha(teich(c2, t));
  CHECK(at.truncated == teich(c2.with_length(1), t));
  CHECK(at.top_ghost == t.pow(9));
  CHECK(alpha_section(teich(c2.with_length(1), t), t.pow(9)) == teich(c2, t));

  // alpha of (0, ..., 0, a) is (0, p^(n+1) a).
  std::vector<RingElem> comps(3, RingElem::of(zt, 0));
  comps[2] = t;
  auto av = alpha(WittVec(c2, comps));
  CHECK(av.truncated == w_zero(c2.with_length(1)));
  CHECK(av.top_ghost == t.scaled(9));
}

TEST_CASE("coplethysm") {
  WittCtx c(2, 2, FPRing::integers());
  auto v = zvec(c, {0, 1, 0});
  auto nested = coplethysm(v, 1);
  auto nctx = coplethysm_ctx(c, 1);
  auto grid = nested_ghost(nctx, nested);
  std::vector<Integer> gi;
  for (const auto& e : grid) gi.push_back(e.value().constant_term().get_num());
  // w(v) = (0, 2, 2); grid[i][j] = w_{i+j}.
  CHECK(gi == std::vector<Integer>{0, 2, 2, 2});
  CHECK(coplethysm(w_one(c), 1) == nested_constant(nctx, 1));

  auto za = FPRing::polynomial({"a"});
  WittCtx ca(3, 2, za);
  RingElem a = RingElem::parse(za, "a");
  for (unsigned m = 0; m <= 2; ++m)
    CHECK(coplethysm(teich(ca, a), m) == nested_teich(coplethysm_ctx(ca, m), a));
}

TEST_CASE("nested arithmetic matches the ghost grid") {
  std::mt19937_64 rng(4);
  NestedCtx ctx{{{2, 1}, {3, 1}}, FPRing::integers()};
  std::uniform_int_distribution<long> d(-5, 5);
  auto rand_nested = [&] {
    std::vector<RingElem> grid;
    // Random Witt coordinates, not ghost entries.
    std::vector<NestedVec> outer;
    for (int i = 0; i < 2; ++i) {
      std::vector<NestedVec> inner;
      for (int j = 0; j < 2; ++j) inner.emplace_back(RingElem::of(ctx.ring, d(rng)));
      outer.emplace_back(std::move(inner));
    }
    return NestedVec(std::move(outer));
  };
  for (int t = 0; t < 20; ++t) {
    auto u = rand_nested(), v = rand_nested();
    auto gu = nested_ghost(ctx, u), gv = nested_ghost(ctx, v);
    auto gs = nested_ghost(ctx, nested_add(ctx, u, v));
    auto gm = nested_ghost(ctx, nested_mul(ctx, u, v));
    for (std::size_t i = 0; i < gu.size(); ++i) {
      CHECK(gs[i] == gu[i] + gv[i]);
      CHECK(gm[i] == gu[i] * gv[i]);
    }
    CHECK(nested_from_ghost(ctx, gu) == u);
  }
}

TEST_CASE("big Witt vectors by nesting") {
  auto za = FPRing::polynomial({"a"});
  BigWittCtx b23({{2, 1}, {3, 1}}, {2, 3}, za);
  RingElem a = RingElem::parse(za, "a");
  auto flat = flatten_ghost(b23, nested_teich(b23.nested(), a));
  REQUIRE(flat.size() == 4);
  for (unsigned d : {1U, 2U, 3U, 6U}) CHECK(flat.at(Integer(d)) == a.pow(d));

  BigWittCtx b32 = b23.reordered({3, 2});
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> dist(-9, 9);
  auto rand_vec = [&](const NestedCtx& ctx) {
    std::vector<NestedVec> outer;
    for (unsigned i = 0; i <= ctx.levels[0].second; ++i) {
      std::vector<NestedVec> inner;
      for (unsigned j = 0; j <= ctx.levels[1].second; ++j)
        inner.emplace_back(RingElem::of(ctx.ring, dist(rng)));
      outer.emplace_back(std::move(inner));
    }
    return NestedVec(std::move(outer));
  };
  BigWittCtx z23({{2, 1}, {3, 1}}, {2, 3}, FPRing::integers());
  BigWittCtx z32 = z23.reordered({3, 2});
  for (int t = 0; t < 20; ++t) {
    auto u = rand_vec(z23.nested()), v = rand_vec(z23.nested());
    auto u2 = big_convert(z23, z32, u), v2 = big_convert(z23, z32, v);
    CHECK(flatten_ghost(z32, u2) == flatten_ghost(z23, u));
    CHECK(big_convert(z23, z32, nested_add(z23.nested(), u, v)) ==
          nested_add(z32.nested(), u2, v2));
    CHECK(big_convert(z23, z32, nested_mul(z23.nested(), u, v)) ==
          nested_mul(z32.nested(), u2, v2));
    CHECK(big_convert(z32, z23, u2) == u);
  }

  CHECK_THROWS_AS(BigWittCtx({{2, 1}, {3, 1}}, {2}, za), Error);
  CHECK_THROWS_AS(BigWittCtx({{2, 1}, {3, 1}}, {2, 2}, za), Error);
  CHECK_THROWS_AS(big_convert(z23, BigWittCtx({{2, 2}, {3, 1}}, {2, 3}, FPRing::integers()),
                              nested_constant(z23.nested(), 1)),
                  Error);

  // One prime is ordinary p-typical arithmetic.
  BigWittCtx one({{3, 2}}, {3}, FPRing::integers());
  WittCtx c(3, 2, FPRing::integers());
  auto u = zvec(c, {4, -1, 2}), v = zvec(c, {-2, 5, 1});
  CHECK(nested_mul(one.nested(), as_nested(u), as_nested(v)) == as_nested(w_mul(u, v)));
}

TEST_CASE("Witt vectors of a localization") {
  auto wl = witt_localized(FPRing::integers(), Poly(0, 1), 2, 1);
  CHECK(wl.certify());
  CHECK(wl.teich_inv == w_one(wl.ctx));

  auto zt = FPRing::polynomial({"t"});
  auto l = witt_localized(zt, zt->parse_poly("t"), 2, 1);
  CHECK(l.certify());
  auto g = ghost(l.teich_inv);
  RingElem u = RingElem(l.loc.ring, Poly::variable(2, l.loc.inverse_var));
  CHECK(g[0] == u);
  CHECK(g[1] == u.pow(2));
  RingElem t = RingElem::parse(l.loc.ring, "t");
  CHECK(g[1] * t.pow(2) == RingElem::of(l.loc.ring, 1));

  auto po = FPRing::make(Scalar::integers(), {"x"}, {}, RewriteMode::kPresentationOnly);
  CHECK_THROWS_AS(witt_localized(po, po->parse_poly("x"), 2, 1), Error);
}

TEST_CASE("presentation of W_n(Z)") {
  auto p21 = wittring_presentation_Z(2, 1);
  CHECK(p21.verified);
  REQUIRE(p21.ring->relations().size() == 1);
  CHECK(p21.ring->format(p21.ring->relations()[0]) == "x1^2 - 2*x1");

  auto p32 = wittring_presentation_Z(3, 2);
  CHECK(p32.verified);
  CHECK(w_mul(p32.images[0], p32.images[1]) == w_scale(3, p32.images[1]));

  auto p0 = wittring_presentation_Z(5, 0);
  CHECK(p0.verified);
  CHECK(p0.ring->relations().empty());
  CHECK(p0.ring->nvars() == 0);

  WittCtx c(2, 2, FPRing::integers());
  auto coords = decompose_in_verschiebung_basis(zvec(c, {3, 1, 0}));
  WittVec sum = w_from_integer(c, coords[0]);
  for (unsigned i = 1; i <= 2; ++i) {
    WittVec basis = w_one(c.with_length(2 - i));
    for (unsigned k = 0; k < i; ++k) basis = versch(basis);
    sum = w_add(sum, w_scale(coords[i], basis));
  }
  CHECK(sum == zvec(c, {3, 1, 0}));
}

TEST_CASE("ghost is an injective ring map on random inputs") {
  std::mt19937_64 rng(17);
  auto zx = FPRing::polynomial({"x"});
  auto z8 = FPRing::make(Scalar::integers_mod(8), {}, {});
  for (unsigned p : {2U, 3U, 5U})
    for (unsigned n = 0; n <= 2; ++n)
      for (const auto& ring : {FPRing::integers(), zx, z8}) {
        WittCtx c(p, n, ring);
        for (int t = 0; t < 8; ++t) {
          auto u = testing::random_witt(rng, c), v = testing::random_witt(rng, c);
          CHECK(ghost(w_add(u, v)) == ghost(u) + ghost(v));
          CHECK(ghost(w_mul(u, v)) == ghost(u) * ghost(v));
          if (ring == z8) continue;
          CHECK(from_ghost(c, ghost(u).entries()) == u);
          if (!(u == w_zero(c))) CHECK(!(ghost(u) == ghost(w_zero(c))));
        }
      }
}

TEST_CASE("evaluation paths agree under specialization and reduction") {
  std::mt19937_64 rng(23);
  auto zx = FPRing::polynomial({"x"});
  auto z8 = FPRing::make(Scalar::integers_mod(8), {}, {});
  for (unsigned p : {2U, 3U, 5U})
    for (unsigned n : {2U, 3U}) {
      CAPTURE(p);
      CAPTURE(n);
      WittCtx cx(p, n, zx), cz(p, n, FPRing::integers()), c8(p, n, z8);
      const int samples = p == 5 && n == 3 ? 3 : 10;
      for (int t = 0; t < samples; ++t) {
        WittVec u = testing::random_witt(rng, cx), v = testing::random_witt(rng, cx);
        WittVec s = w_add(u, v), m = w_mul(u, v);
        for (long k : {-2L, 3L}) {
          // Z[x] -> Z, x -> k, commutes with Witt arithmetic.
          auto spec = [&](const WittVec& w) {
            std::vector<RingElem> comps;
            for (const auto& c : w.components()) {
              Integer val = 0;
              for (const auto& term : c.value().terms()) {
                Integer pk;
                mpz_pow_ui(pk.get_mpz_t(), Integer(k).get_mpz_t(), term.mono[0]);
                val += term.coeff.get_num() * pk;
              }
              comps.push_back(RingElem::of(cz.ring, val));
            }
            return WittVec(cz, std::move(comps));
          };
          CHECK(spec(s) == w_add(spec(u), spec(v)));
          CHECK(spec(m) == w_mul(spec(u), spec(v)));
        }
      }
      for (int t = 0; t < 10; ++t) {
        WittVec a = testing::random_witt(rng, cz, 0, 1, 40), b = testing::random_witt(rng, cz, 0, 1, 40);
        auto mod8 = [&](const WittVec& w) {
          std::vector<RingElem> comps;
          for (const auto& c : w.components()) comps.push_back(RingElem::of(z8, c.value().constant_term().get_num()));
          return WittVec(c8, std::move(comps));
        };
        CHECK(mod8(w_add(a, b)) == w_add(mod8(a), mod8(b)));
        CHECK(mod8(w_mul(a, b)) == w_mul(mod8(a), mod8(b)));
      }
    }
}

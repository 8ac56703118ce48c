#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "wittkit/error.hpp"
#include "wittkit/jets.hpp"

using namespace wittkit;

namespace {

RingPtr zx() { return FPRing::polynomial({"x"}); }

RingPtr ring_of(const std::vector<std::string>& vars, const std::vector<std::string>& rels,
                Scalar base = Scalar::integers()) {
  return FPRing::parse(base, vars, rels);
}

// binom(p, k) / p
Integer binom_over_p(unsigned p, unsigned k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), p, k);
  return b / p;
}

}  // namespace

TEST_CASE("phi and delta on small inputs") {
  JetCtx c(2, 2, zx());
  auto names = c.var_names();
  REQUIRE(names == std::vector<std::string>{"x", "d1_x", "d2_x"});
  auto P = [&](const char* s) { return parse_poly(s, names); };

  CHECK(phi_apply(c, P("x")) == P("x^2 + 2*d1_x"));
  CHECK(phi_apply(c, P("x"), 2) == P("(x^2 + 2*d1_x)^2 + 2*(d1_x^2 + 2*d2_x)"));
  CHECK(phi_apply(c, P("7")) == P("7"));
  CHECK(delta_apply(c, P("1")).is_zero());
  CHECK(delta_apply(c, P("2")) == P("-1"));
  CHECK(delta_apply(c, P("x^2")) == P("2*x^2*d1_x + 2*d1_x^2"));
  CHECK_THROWS_AS(phi_apply(c, P("d2_x")), Error);
  CHECK_THROWS_AS(delta_apply(c, P("d2_x")), Error);
  try {
    phi_apply(c, P("d1_x"), 2);
    FAIL("expected LevelExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kLevelExceeded);
  }
}

TEST_CASE("delta identities on random polynomials") {
  std::mt19937_64 rng(12);
  auto a2 = FPRing::polynomial({"x", "y"});
  for (unsigned p : {2U, 3U}) {
    JetCtx c(p, 1, a2);
    for (int t = 0; t < 40; ++t) {
      Poly a = c.embed(testing::random_poly(rng, 2, 3, 4, 4));
      Poly b = c.embed(testing::random_poly(rng, 2, 3, 4, 4));
      Poly da = delta_apply(c, a), db = delta_apply(c, b);
      Poly cross(c.nvars());
      for (unsigned k = 1; k < p; ++k)
        cross += (a.pow(k) * b.pow(p - k)).scaled(Rational(binom_over_p(p, k)));
      CHECK(delta_apply(c, a + b) == da + db - cross);
      CHECK(delta_apply(c, a * b) == a.pow(p) * db + b.pow(p) * da + (da * db).scaled(Rational(p)));
      CHECK(phi_apply(c, a) == a.pow(p) + da.scaled(Rational(p)));
    }
  }
}

TEST_CASE("jet presentations") {
  auto free = jet_presentation(JetCtx(2, 1, zx()));
  CHECK(free.ring->vars() == std::vector<std::string>{"x", "d1_x"});
  CHECK(free.ring->relations().empty());

  auto z4 = FPRing::make(Scalar::integers_mod(4), {}, {});
  auto j4 = jet_presentation(JetCtx(2, 1, z4), RewriteMode::kComplete);
  REQUIRE(j4.relations.size() == 2);
  CHECK(j4.relations[0][0] == Poly(0, 4));
  CHECK(j4.relations[1][0] == Poly(0, -6));
  CHECK(count_points(j4.ring, 2) == 1);
  CHECK(j4.ring->normal_form(Poly(0, 3)) == Poly(0, 1));  // the ring is Z/2

  for (unsigned p : {2U, 3U, 5U}) {
    CAPTURE(p);
    const std::string pp = std::to_string(p);
    auto a = ring_of({"x"}, {"x^2 - " + pp + "*x"});
    auto jets = jet_presentation(JetCtx(p, 1, a));
    REQUIRE(jets.relations[1].size() == 1);
    auto modx = ring_of({"x", "d1_x"}, {"x^2 - " + pp + "*x"});
    auto names = modx->vars();
    Poly relation = parse_poly("2*x^" + pp + "*d1_x + " + pp + "*d1_x^2 - x^" + pp + " - " + pp +
                                "*d1_x + " + ipow(p, p - 1).get_str() + "*x^" + pp,
                            names);
    CHECK(modx->normal_form(jets.relations[1][0] - relation).is_zero());

    auto fiber = mod_fiber(jets.ring, p);
    auto expected = FPRing::parse(Scalar::integers_mod(p), {"x", "d1_x"}, {"x^2"});
    REQUIRE(fiber->has_rewrite());
    CHECK(same_ideal(fiber, expected));
    CHECK(!fiber->normal_form(fiber->parse_poly("x")).is_zero());
  }
}

TEST_CASE("jet ideal is delta-stable") {
  std::mt19937_64 rng(2);
  for (unsigned p : {2U, 3U}) {
    const std::string pp = std::to_string(p);
    for (const auto& a : {ring_of({"x"}, {"x^2 - " + pp + "*x"}), ring_of({"e"}, {"e^2 - e"}),
                          ring_of({"x"}, {"x^2 - " + pp})}) {
      auto jets = jet_presentation(JetCtx(p, 2, a));
      std::vector<Poly> gs;
      for (int i = 0; i < 5; ++i) gs.push_back(testing::random_poly(rng, 1, 3, 3, 4));
      CHECK(jets.delta_stable(gs));
    }
  }
}

TEST_CASE("co-ghost maps") {
  auto jets = jet_presentation(JetCtx(2, 1, zx()));
  auto c0 = coghost(jets, 0);
  CHECK(c0.images()[0] == jets.ring->parse_poly("x"));
  auto c1 = coghost(jets, 1);
  CHECK(c1.images()[0] == jets.ring->parse_poly("x^2 + 2*d1_x"));
  CHECK_THROWS_AS(coghost(jets, 2), Error);

  auto total = coghost_total(jets);
  CHECK(total.domain()->vars() == std::vector<std::string>{"x_0", "x_1"});
  CHECK(total.images()[1] == jets.ring->parse_poly("x^2 + 2*d1_x"));

  // Relations of A go to the jet ideal.
  auto a = ring_of({"x"}, {"x^2 - 3*x"});
  auto ja = jet_presentation(JetCtx(3, 2, a), RewriteMode::kPresentationOnly);
  for (unsigned i = 0; i <= 2; ++i) CHECK_NOTHROW(coghost(ja, i));
  auto jc = jet_presentation(JetCtx(3, 1, a), RewriteMode::kComplete);
  REQUIRE(jc.ring->has_rewrite());
  auto h = coghost(jc, 1);
  CHECK(h.relations_checked());
}

TEST_CASE("reduced co-ghost") {
  for (unsigned p : {2U, 3U}) {
    const std::string pp = std::to_string(p);
    auto j0 = jet_presentation(JetCtx(p, 0, zx()));
    auto r0 = rcgh(j0);
    CHECK(r0.codomain()->base() == Scalar::integers_mod(p));
    CHECK(r0.images()[0] == r0.codomain()->parse_poly("x^" + pp));

    auto j1 = jet_presentation(JetCtx(p, 1, zx()));
    auto r1 = rcgh(j1);
    CHECK(r1.codomain()->base() == Scalar::integers_mod(p * p));
    CHECK(r1.images()[0] ==
          r1.codomain()->canonical(r1.codomain()->parse_poly("x^" + std::to_string(p * p) + " + " + pp + "*d1_x^" + pp)));
    CHECK(r1.apply(Poly(1, 1)) == Poly(2, 1));
  }
  for (unsigned p : {2U, 3U})
    for (unsigned n = 0; n <= 2; ++n) {
      CHECK(rcgh_consistent(JetCtx(p, n, zx())));
      CHECK(rcgh_consistent(JetCtx(p, n, FPRing::polynomial({"x", "y"}))));
    }
}

TEST_CASE("Greenberg transform") {
  auto fp = FPRing::parse(Scalar::integers_mod(3), {"x"}, {"x^2 - 1"});
  auto g1 = greenberg(fp, 3);
  CHECK(same_ideal(g1, fp));

  auto z4 = FPRing::make(Scalar::integers_mod(4), {}, {});
  auto g2 = greenberg(z4, 2);
  CHECK(count_points(g2, 2) == 1);
  CHECK(g2->nvars() == 0);

  auto a = FPRing::parse(Scalar::integers_mod(4), {"x"}, {"x^2"});
  auto g3 = greenberg(a, 2);
  CHECK(g3->vars() == std::vector<std::string>{"x", "d1_x"});
  JetCtx c(2, 1, FPRing::polynomial({"x"}));
  Poly x2 = c.embed(parse_poly("x^2", std::vector<std::string>{"x"}));
  auto expected = FPRing::make(Scalar::integers_mod(2), c.var_names(),
                               {x2, delta_apply(c, x2), Poly(2, -6)});
  CHECK(same_ideal(g3, expected));

  // Another integral lift of the same relation gives the same fiber.
  std::vector<Poly> lift{a->parse_poly("x^2 + 4*x + 8")};
  auto g4 = greenberg(a, 2, &lift);
  CHECK(same_ideal(g3, g4));
  std::vector<Poly> bad{a->parse_poly("x^2 + 2*x")};
  CHECK_THROWS_AS(greenberg(a, 2, &bad), Error);

  try {
    greenberg(FPRing::polynomial({"x"}), 2);
    FAIL("expected BadBase");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kBadBase);
  }
  CHECK_THROWS_AS(greenberg(FPRing::make(Scalar::integers_mod(6), {}, {}), 2), Error);
}

TEST_CASE("mod-p jets commute with etale localization") {
  auto zt = FPRing::polynomial({"t"});
  auto rep = jet_mod_p_etale_check(zt, zt->parse_poly("t"), 2, 1);
  CHECK(rep.passed);
  REQUIRE(rep.lines.size() == 1);
  CHECK(rep.lines[0].rfind("d1_u -> ", 0) == 0);

  CHECK(jet_mod_p_etale_check(zt, zt->parse_poly("1"), 2, 1).passed);
  CHECK(jet_mod_p_etale_check(FPRing::integers(), Poly(0, 1), 3, 1).passed);
  CHECK(jet_mod_p_etale_check(zt, zt->parse_poly("t + 1"), 3, 1).passed);
  CHECK(jet_mod_p_etale_check(zt, zt->parse_poly("t"), 2, 2).passed);
}

TEST_CASE("point counts of jet rings") {
  for (unsigned p : {2U, 3U}) {
    CAPTURE(p);
    auto zz = jet_presentation(JetCtx(p, 1, ring_of({"e"}, {"e^2 - e"})));
    CHECK(count_points(zz.ring, p) == 2);
    for (unsigned q : {2U, 3U, 5U, 7U})
      if (q != p) CHECK(count_points(zz.ring, q) == 4);

    auto sq = jet_presentation(JetCtx(p, 1, ring_of({"x"}, {"x^2 - " + std::to_string(p)})));
    CHECK(count_points(sq.ring, p) == 0);
  }

  // Away from p the jets of A look like A x A.
  const std::vector<RingPtr> corpus{
      ring_of({"x"}, {"x^2 - 2*x"}), ring_of({"x"}, {"x^2 - 3*x"}), ring_of({"e"}, {"e^2 - e"}),
      ring_of({"x", "y"}, {"x*y - 1"}), ring_of({"x"}, {"x^2 + 1"}), ring_of({"x"}, {"x^3 - x"})};
  for (unsigned p : {2U, 3U})
    for (const auto& a : corpus) {
      auto jets = jet_presentation(JetCtx(p, 1, a));
      for (unsigned q : {2U, 3U, 4U, 5U, 7U}) {
        if (q % p == 0) continue;
        auto base = count_points(a, q);
        CHECK(count_points(jets.ring, q) == base * base);
      }
    }
}

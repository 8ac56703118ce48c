#pragma once

#include <random>
#include <vector>

#include "wittkit/poly.hpp"
#include "wittkit/ring.hpp"
#include "wittkit/witt.hpp"

namespace wittkit::sample {

// Random integral polynomial in `nvars` variables with at most `max_terms`
// terms, total degree <= max_deg and coefficients in [-bound, bound].
inline Poly random_poly(std::mt19937_64& rng, std::size_t nvars, unsigned max_deg,
                        unsigned max_terms, int bound) {
  std::uniform_int_distribution<int> coeff(-bound, bound);
  std::uniform_int_distribution<unsigned> nterms(0, max_terms);
  std::vector<Poly::Term> terms;
  unsigned k = nterms(rng);
  for (unsigned t = 0; t < k; ++t) {
    std::vector<std::uint32_t> e(nvars, 0);
    unsigned deg = std::uniform_int_distribution<unsigned>(0, max_deg)(rng);
    for (unsigned d = 0; d < deg && nvars > 0; ++d)
      ++e[std::uniform_int_distribution<std::size_t>(0, nvars - 1)(rng)];
    terms.push_back({Monomial(std::move(e)), Rational(coeff(rng))});
  }
  return Poly::from_terms(nvars, std::move(terms));
}

inline RingElem random_elem(std::mt19937_64& rng, const RingPtr& ring, unsigned max_deg = 3,
                            unsigned max_terms = 4, int bound = 5) {
  return RingElem(ring, random_poly(rng, ring->nvars(), max_deg, max_terms, bound));
}

inline WittVec random_witt(std::mt19937_64& rng, const WittCtx& ctx, unsigned max_deg = 3,
                           unsigned max_terms = 3, int bound = 5) {
  std::vector<RingElem> comps;
  for (std::size_t i = 0; i < ctx.length(); ++i)
    comps.push_back(random_elem(rng, ctx.ring, max_deg, max_terms, bound));
  return WittVec(ctx, std::move(comps));
}

}  // namespace wittkit::sample

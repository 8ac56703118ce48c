#include "wittkit/finite_field.hpp"

#include <string>

#include "wittkit/error.hpp"

namespace wittkit {

namespace {

bool prime_power(unsigned q, unsigned& ell, unsigned& k) {
  if (q < 2) return false;
  unsigned p = 2;
  while (q % p != 0) ++p;
  unsigned r = q;
  k = 0;
  while (r % p == 0) {
    r /= p;
    ++k;
  }
  ell = p;
  return r == 1;
}

using Coeffs = std::vector<unsigned>;  // low degree first, length k

// Polynomial arithmetic over F_ell on dense coefficient vectors.
Coeffs poly_mod(Coeffs a, const Coeffs& monic, unsigned ell) {
  const std::size_t d = monic.size() - 1;
  while (a.size() > d) {
    unsigned lead = a.back() % ell;
    if (lead != 0) {
      std::size_t shift = a.size() - 1 - d;
      for (std::size_t i = 0; i <= d; ++i)
        a[shift + i] = (a[shift + i] + ell * ell - (lead * monic[i]) % ell) % ell;
    }
    a.pop_back();
  }
  return a;
}

bool irreducible(const Coeffs& g, unsigned ell) {
  // Trial division by every monic polynomial of degree 1..deg/2.
  const unsigned deg = static_cast<unsigned>(g.size() - 1);
  for (unsigned d = 1; d <= deg / 2; ++d) {
    unsigned count = 1;
    for (unsigned i = 0; i < d; ++i) count *= ell;
    for (unsigned idx = 0; idx < count; ++idx) {
      Coeffs h(d + 1, 0);
      unsigned v = idx;
      for (unsigned i = 0; i < d; ++i) {
        h[i] = v % ell;
        v /= ell;
      }
      h[d] = 1;
      Coeffs r = poly_mod(g, h, ell);
      bool zero = true;
      for (auto c : r) zero = zero && (c % ell == 0);
      if (zero) return false;
    }
  }
  return true;
}

}  // namespace

bool FiniteField::is_supported_order(unsigned q) {
  unsigned ell = 0;
  unsigned k = 0;
  return q <= 128 && prime_power(q, ell, k);
}

FiniteField::FiniteField(unsigned q) : q_(q) {
  if (!is_supported_order(q))
    throw Error(ErrorKind::kInvalidArgument,
                "field order must be a prime power at most 128, got " + std::to_string(q));
  prime_power(q, ell_, k_);

  Coeffs modulus;
  if (k_ > 1) {
    unsigned count = 1;
    for (unsigned i = 0; i < k_; ++i) count *= ell_;
    for (unsigned idx = 0; idx < count; ++idx) {
      Coeffs g(k_ + 1, 0);
      unsigned v = idx;
      for (unsigned i = 0; i < k_; ++i) {
        g[i] = v % ell_;
        v /= ell_;
      }
      g[k_] = 1;
      if (irreducible(g, ell_)) {
        modulus = g;
        break;
      }
    }
  }

  auto decode = [&](unsigned x) {
    Coeffs c(k_, 0);
    for (unsigned i = 0; i < k_; ++i) {
      c[i] = x % ell_;
      x /= ell_;
    }
    return c;
  };
  auto encode = [&](const Coeffs& c) {
    unsigned x = 0;
    for (unsigned i = k_; i-- > 0;) x = x * ell_ + (i < c.size() ? c[i] % ell_ : 0);
    return x;
  };

  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  for (unsigned a = 0; a < q_; ++a) {
    Coeffs ca = decode(a);
    Coeffs na(k_);
    for (unsigned i = 0; i < k_; ++i) na[i] = (ell_ - ca[i]) % ell_;
    neg_[a] = static_cast<std::uint8_t>(encode(na));
    for (unsigned b = 0; b < q_; ++b) {
      Coeffs cb = decode(b);
      Coeffs s(k_);
      for (unsigned i = 0; i < k_; ++i) s[i] = (ca[i] + cb[i]) % ell_;
      add_[a * q_ + b] = static_cast<std::uint8_t>(encode(s));
      Coeffs prod(2 * k_ - 1, 0);
      for (unsigned i = 0; i < k_; ++i)
        for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % ell_;
      if (k_ > 1) prod = poly_mod(prod, modulus, ell_);
      mul_[a * q_ + b] = static_cast<std::uint8_t>(encode(prod));
    }
  }
}

}  // namespace wittkit

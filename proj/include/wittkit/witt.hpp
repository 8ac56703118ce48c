#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "wittkit/eval.hpp"
#include "wittkit/poly.hpp"
#include "wittkit/ring.hpp"

namespace wittkit {

bool is_prime(unsigned long p);

// ------------------------------------------------------ universal polynomials

/// Universal p-typical Witt polynomials up to index n.
///
/// Sum and product polynomials S_i, P_i live in Z[x0,y0,...,xi,yi] (variables
/// interleaved so that S_i does not depend on n); negation N_i in
/// Z[x0..xi]; Frobenius F_i in Z[x0..x_{i+1}] for i < n. All are obtained by
/// solving the ghost equations over Q and must come out integral.
struct UnivPolys {
  unsigned p = 0;
  unsigned n = 0;
  std::vector<Poly> sum;
  std::vector<Poly> prod;
  std::vector<Poly> neg;
  std::vector<Poly> frob;

  /// Evaluation plans for the four families, filled by compute and from_text.
  std::vector<EvalPlan> sum_plans;
  std::vector<EvalPlan> prod_plans;
  std::vector<EvalPlan> neg_plans;
  std::vector<EvalPlan> frob_plans;

  static UnivPolys compute(unsigned p, unsigned n);

  /// Cache-file text: S_0..S_n, P_0..P_n, N_0..N_n, F_0..F_{n-1}, one per line.
  std::string to_text() const;
  static UnivPolys from_text(unsigned p, unsigned n, const std::string& text);

  /// Recomputes every ghost identity symbolically, e.g.
  /// w_i(S(x,y)) = w_i(x) + w_i(y); returns false on the first mismatch.
  bool verify_ghost_identities() const;
  bool all_integral() const;

  /// Names x0,y0,x1,y1,... and x0,x1,... used in the text format.
  static std::vector<std::string> pair_names(unsigned n);
  static std::vector<std::string> single_names(unsigned n);

 private:
  void compile();
};

/// Process-wide store of universal polynomials, backed by one text file per
/// (p, n) under $WITTKIT_CACHE (default ~/.cache/wittkit; an empty value
/// disables the disk). Files are replaced atomically.
class UnivPolyCache {
 public:
  static UnivPolyCache& instance();

  std::shared_ptr<const UnivPolys> get(unsigned p, unsigned n);
  /// Recomputes and rewrites the file for (p, n); returns the path written.
  std::filesystem::path rebuild(unsigned p, unsigned n);
  std::filesystem::path path_for(unsigned p, unsigned n) const;
  std::optional<std::filesystem::path> directory() const;

 private:
  UnivPolyCache() = default;
  void write_file(const UnivPolys& polys) const;

  std::mutex mu_;
  std::map<unsigned, std::shared_ptr<const UnivPolys>> by_prime_;
};

// ------------------------------------------------------------- Witt vectors

/// W_n(A) for one prime: vectors have n+1 components.
struct WittCtx {
  unsigned p = 2;
  unsigned n = 0;
  RingPtr ring;

  WittCtx() = default;
  WittCtx(unsigned p, unsigned n, RingPtr ring);
  std::size_t length() const noexcept { return n + 1; }
  WittCtx with_length(unsigned n2) const { return WittCtx(p, n2, ring); }
};

bool same_ctx(const WittCtx& a, const WittCtx& b);

class WittVec {
 public:
  WittVec(WittCtx ctx, std::vector<RingElem> components);
  static WittVec parse(const WittCtx& ctx, const std::vector<std::string>& components);

  const WittCtx& ctx() const noexcept { return ctx_; }
  const std::vector<RingElem>& components() const noexcept { return comps_; }
  const RingElem& operator[](std::size_t i) const { return comps_[i]; }
  std::vector<std::string> to_strings() const;

  /// Componentwise equality; requires a ring with a rewrite system.
  friend bool operator==(const WittVec& a, const WittVec& b);

 private:
  WittCtx ctx_;
  std::vector<RingElem> comps_;
};

class GhostVec {
 public:
  GhostVec(WittCtx ctx, std::vector<RingElem> entries);

  const WittCtx& ctx() const noexcept { return ctx_; }
  const std::vector<RingElem>& entries() const noexcept { return entries_; }
  const RingElem& operator[](std::size_t i) const { return entries_[i]; }

  GhostVec operator+(const GhostVec& o) const;
  GhostVec operator*(const GhostVec& o) const;
  friend bool operator==(const GhostVec& a, const GhostVec& b);

 private:
  WittCtx ctx_;
  std::vector<RingElem> entries_;
};

WittVec w_zero(const WittCtx& ctx);
WittVec w_one(const WittCtx& ctx);
/// Image of an integer under Z -> W_n(A).
WittVec w_from_integer(const WittCtx& ctx, const Integer& k);
WittVec w_add(const WittVec& u, const WittVec& v);
WittVec w_mul(const WittVec& u, const WittVec& v);
WittVec w_neg(const WittVec& u);
WittVec w_sub(const WittVec& u, const WittVec& v);
WittVec w_scale(const Integer& k, const WittVec& v);

/// w_i = sum_{j<=i} p^j a_j^(p^(i-j)).
GhostVec ghost(const WittVec& v);
RingElem ghost_component(const WittVec& v, unsigned i);
/// Inverse of ghost on its image (p must be a non-zero-divisor in A);
/// throws Error(kNotInGhostImage).
WittVec from_ghost(const WittCtx& ctx, const std::vector<RingElem>& entries);

WittVec teich(const WittCtx& ctx, const RingElem& a);
/// V: W_n(A) -> W_{n+1}(A), (a_0..a_n) -> (0, a_0, ..., a_n).
WittVec versch(const WittVec& v);
/// F: W_n(A) -> W_{n-1}(A), the ghost shift; requires n >= 1.
WittVec frob(const WittVec& v);
/// First n'+1 components; throws Error(kLengthError) when n' > n.
WittVec truncate(const WittVec& v, unsigned n_prime);

/// A/p^(n+1) for a ring over Z; the target of the reduced ghost map.
RingPtr reduced_ghost_target(const WittCtx& ctx);
/// sum_{i<=n} p^i a_i^(p^(n+1-i)) as an element of A (an integral lift).
RingElem rgh_lift(const WittVec& v);
/// The reduced ghost map W_n(A) -> A/p^(n+1).
RingElem rgh(const WittVec& v, const RingPtr& target);
RingElem rgh(const WittVec& v);

struct AlphaImage {
  WittVec truncated;
  RingElem top_ghost;
};
/// v in W_{n+1}(A) -> (truncation to W_n(A), gh_{n+1}(v)).
AlphaImage alpha(const WittVec& v);
/// The unique v in W_{n+1}(A) with alpha(v) = (w, a) for flat A; throws
/// Error(kCongruenceFailed) when a is not congruent to rgh(w) mod p^(n+1).
WittVec alpha_section(const WittVec& w, const RingElem& a);

// -------------------------------------------------- nested and big Witt vectors

/// W_{p_0,n_0}(W_{p_1,n_1}(...(A))) with levels listed outermost first.
struct NestedCtx {
  std::vector<std::pair<unsigned, unsigned>> levels;  // (prime, length)
  RingPtr ring;

  /// Number of flattened ghost entries, prod (n_k + 1).
  std::size_t grid_size() const;
  NestedCtx inner() const;
};

class NestedVec {
 public:
  /// Leaf (no Witt level left).
  explicit NestedVec(RingElem leaf);
  explicit NestedVec(std::vector<NestedVec> components);

  bool is_leaf() const noexcept { return comps_.empty(); }
  const RingElem& leaf() const { return *leaf_; }
  const std::vector<NestedVec>& components() const noexcept { return comps_; }

  friend bool operator==(const NestedVec& a, const NestedVec& b);

 private:
  std::shared_ptr<const RingElem> leaf_;
  std::vector<NestedVec> comps_;
};

NestedVec nested_add(const NestedCtx& ctx, const NestedVec& u, const NestedVec& v);
NestedVec nested_mul(const NestedCtx& ctx, const NestedVec& u, const NestedVec& v);
NestedVec nested_constant(const NestedCtx& ctx, const Integer& k);
NestedVec nested_teich(const NestedCtx& ctx, const RingElem& a);
/// Flattened ghost grid in row-major order over (k_0, k_1, ...), where the
/// entry at multi-index k is the ghost component of weight prod p_l^k_l.
std::vector<RingElem> nested_ghost(const NestedCtx& ctx, const NestedVec& v);
NestedVec nested_from_ghost(const NestedCtx& ctx, const std::vector<RingElem>& grid);
/// Promotes a single-level vector to the nested representation.
NestedVec as_nested(const WittVec& v);

/// W_m(W_n(A)) image of v in W_{m+n}(A): the unique element whose ghost
/// grid is (w_{i+j}(v))_{i<=m, j<=n}.
NestedVec coplethysm(const WittVec& v, unsigned m);
NestedCtx coplethysm_ctx(const WittCtx& ctx, unsigned m);

/// Multi-prime Witt vectors W_{E,n}(A) realized by nesting single primes.
struct BigWittCtx {
  std::map<unsigned, unsigned> lengths;  // prime -> n_p
  std::vector<unsigned> order;           // nesting order, outermost first
  RingPtr ring;

  BigWittCtx(std::map<unsigned, unsigned> lengths, std::vector<unsigned> order, RingPtr ring);
  NestedCtx nested() const;
  BigWittCtx reordered(std::vector<unsigned> order) const;
};

/// Ghost entries keyed by the divisor d = prod p^k_p.
std::map<Integer, RingElem> flatten_ghost(const BigWittCtx& ctx, const NestedVec& v);
NestedVec big_from_flat_ghost(const BigWittCtx& ctx, const std::map<Integer, RingElem>& ghost);
/// Moves a vector between two nesting orders through the ghost grid.
NestedVec big_convert(const BigWittCtx& from, const BigWittCtx& to, const NestedVec& v);

// -------------------------------------------------------------- presentations

/// W_n(A[1/f]) seen as W_n(A) with [f] inverted.
struct WittLocalization {
  Localization loc;
  WittCtx ctx;          // over A[1/f]
  WittVec teich_f;      // [f]
  WittVec teich_inv;    // [u], u = 1/f

  /// [u]*[f] = 1 by Witt arithmetic and ghost(u) * ghost(f) = 1 entrywise.
  bool certify() const;
};
WittLocalization witt_localized(const RingPtr& a, const Poly& f, unsigned p, unsigned n);

struct WittZPresentation {
  RingPtr ring;                 // Z[x_1..x_n]/(x_i x_j - p^i x_j | i <= j)
  std::vector<WittVec> images;  // x_i -> V^i(1)
  std::vector<std::string> report;
  bool verified = false;
};
/// Emits the presentation of W_n(Z) and checks it by Witt arithmetic: every
/// relation holds for the V^i(1), and they with 1 span W_n(Z) (checked on
/// `samples` seeded random vectors by triangular decomposition).
WittZPresentation wittring_presentation_Z(unsigned p, unsigned n, unsigned samples = 20,
                                          std::uint64_t seed = 1);

/// Coordinates of v in the basis 1, V(1), ..., V^n(1) of W_n(Z).
std::vector<Integer> decompose_in_verschiebung_basis(const WittVec& v);

}  // namespace wittkit

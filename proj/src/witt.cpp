#include "wittkit/witt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <unistd.h>

#include "wittkit/error.hpp"
#include "wittkit/eval.hpp"

namespace wittkit {

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

namespace {

Integer ppow(unsigned p, unsigned k) { return ipow(static_cast<unsigned long>(p), k); }

std::uint64_t upow(unsigned p, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) r *= p;
  return r;
}

// sum_{j<=i} p^j X_j^(p^(i-j)) with X_j = variable stride*j + offset.
Poly ghost_poly(unsigned p, unsigned i, std::size_t nvars, std::size_t stride, std::size_t offset) {
  Poly out(nvars);
  for (unsigned j = 0; j <= i; ++j) {
    Monomial m = Monomial::variable(nvars, stride * j + offset,
                                    static_cast<std::uint32_t>(upow(p, i - j)));
    out += Poly::monomial(m, Rational(ppow(p, j)));
  }
  return out;
}

// sum_{j<i} p^j f_j^(p^(i-j)) after padding each f_j to nvars.
Poly lower_ghost_terms(unsigned p, unsigned i, const std::vector<Poly>& solved, std::size_t nvars) {
  Poly out(nvars);
  for (unsigned j = 0; j < i; ++j)
    out += solved[j].resized(nvars).pow(upow(p, i - j)).scaled(Rational(ppow(p, j)));
  return out;
}

Poly solve_level(unsigned p, unsigned i, const Poly& target, const std::vector<Poly>& solved,
                 const char* family) {
  Poly rest = target - lower_ghost_terms(p, i, solved, target.nvars());
  try {
    return exact_div(rest, ppow(p, i));
  } catch (const Error& e) {
    throw std::logic_error(std::string("universal ") + family + " polynomial " +
                           std::to_string(i) + " for p=" + std::to_string(p) +
                           " is not integral: " + e.what());
  }
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

}  // namespace

// ------------------------------------------------------------------ UnivPolys

std::vector<std::string> UnivPolys::pair_names(unsigned n) {
  std::vector<std::string> names;
  for (unsigned i = 0; i <= n; ++i) {
    names.push_back("x" + std::to_string(i));
    names.push_back("y" + std::to_string(i));
  }
  return names;
}

std::vector<std::string> UnivPolys::single_names(unsigned n) {
  std::vector<std::string> names;
  for (unsigned i = 0; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

UnivPolys UnivPolys::compute(unsigned p, unsigned n) {
  if (!is_prime(p)) throw Error(ErrorKind::kInvalidArgument, std::to_string(p) + " is not prime");
  UnivPolys u;
  u.p = p;
  u.n = n;
  for (unsigned i = 0; i <= n; ++i) {
    const std::size_t nv = 2 * (i + 1);
    Poly wx = ghost_poly(p, i, nv, 2, 0);
    Poly wy = ghost_poly(p, i, nv, 2, 1);
    u.sum.push_back(solve_level(p, i, wx + wy, u.sum, "sum"));
    u.prod.push_back(solve_level(p, i, wx * wy, u.prod, "product"));
    u.neg.push_back(solve_level(p, i, -ghost_poly(p, i, i + 1, 1, 0), u.neg, "negation"));
    if (i < n)
      u.frob.push_back(solve_level(p, i, ghost_poly(p, i + 1, i + 2, 1, 0), u.frob, "Frobenius"));
  }
  u.compile();
  return u;
}

void UnivPolys::compile() {
  auto plans = [](const std::vector<Poly>& family) {
    std::vector<EvalPlan> out;
    for (const auto& f : family) out.emplace_back(f);
    return out;
  };
  sum_plans = plans(sum);
  prod_plans = plans(prod);
  neg_plans = plans(neg);
  frob_plans = plans(frob);
}

std::string UnivPolys::to_text() const {
  const auto pairs = pair_names(n + 1);
  const auto singles = single_names(n + 1);
  std::string out;
  for (const auto* family : {&sum, &prod})
    for (const auto& f : *family) out += to_string(f, pairs) + "\n";
  for (const auto* family : {&neg, &frob})
    for (const auto& f : *family) out += to_string(f, singles) + "\n";
  return out;
}

UnivPolys UnivPolys::from_text(unsigned p, unsigned n, const std::string& text) {
  auto lines = split_lines(text);
  if (lines.size() != 4 * static_cast<std::size_t>(n) + 3)
    throw Error(ErrorKind::kParse, "universal polynomial file has " +
                                       std::to_string(lines.size()) + " lines, expected " +
                                       std::to_string(4 * n + 3));
  const auto pairs = pair_names(n);
  const auto singles = single_names(n + 1);
  UnivPolys u;
  u.p = p;
  u.n = n;
  std::size_t line = 0;
  auto read = [&](std::span<const std::string> names) {
    Poly f = parse_poly(lines[line++], names);
    if (!f.is_integral()) throw Error(ErrorKind::kParse, "non-integral universal polynomial");
    return f;
  };
  for (unsigned i = 0; i <= n; ++i)
    u.sum.push_back(read(std::span(pairs).first(2 * (i + 1))));
  for (unsigned i = 0; i <= n; ++i)
    u.prod.push_back(read(std::span(pairs).first(2 * (i + 1))));
  for (unsigned i = 0; i <= n; ++i) u.neg.push_back(read(std::span(singles).first(i + 1)));
  for (unsigned i = 0; i < n; ++i) u.frob.push_back(read(std::span(singles).first(i + 2)));
  u.compile();
  return u;
}

bool UnivPolys::all_integral() const {
  for (const auto* family : {&sum, &prod, &neg, &frob})
    for (const auto& f : *family)
      if (!f.is_integral()) return false;
  return true;
}

bool UnivPolys::verify_ghost_identities() const {
  // Ghost of a vector of polynomials f_0..f_i: sum p^j f_j^(p^(i-j)).
  auto ghost_of = [&](const std::vector<Poly>& fs, unsigned i, std::size_t nvars) {
    return lower_ghost_terms(p, i, fs, nvars) + fs[i].resized(nvars).scaled(Rational(ppow(p, i)));
  };
  for (unsigned i = 0; i <= n; ++i) {
    const std::size_t nv = 2 * (i + 1);
    Poly wx = ghost_poly(p, i, nv, 2, 0);
    Poly wy = ghost_poly(p, i, nv, 2, 1);
    if (!(ghost_of(sum, i, nv) == wx + wy)) return false;
    if (!(ghost_of(prod, i, nv) == wx * wy)) return false;
    if (!(ghost_of(neg, i, i + 1) == -ghost_poly(p, i, i + 1, 1, 0))) return false;
    if (i < n && !(ghost_of(frob, i, i + 2) == ghost_poly(p, i + 1, i + 2, 1, 0))) return false;
  }
  return true;
}

// -------------------------------------------------------------- UnivPolyCache

UnivPolyCache& UnivPolyCache::instance() {
  static UnivPolyCache cache;
  return cache;
}

std::optional<std::filesystem::path> UnivPolyCache::directory() const {
  if (const char* env = std::getenv("WITTKIT_CACHE")) {
    if (*env == '\0') return std::nullopt;
    return std::filesystem::path(env);
  }
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
    return std::filesystem::path(xdg) / "wittkit";
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::filesystem::path(home) / ".cache" / "wittkit";
  return std::nullopt;
}

std::filesystem::path UnivPolyCache::path_for(unsigned p, unsigned n) const {
  auto dir = directory().value_or(std::filesystem::path("."));
  return dir / ("witt-p" + std::to_string(p) + "-n" + std::to_string(n) + ".txt");
}

void UnivPolyCache::write_file(const UnivPolys& polys) const {
  if (!directory()) return;
  std::error_code ec;
  std::filesystem::create_directories(*directory(), ec);
  if (ec) return;
  auto target = path_for(polys.p, polys.n);
  auto tmp = target;
  tmp += ".tmp." + std::to_string(::getpid()) + "." +
         std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    out << polys.to_text();
    if (!out.flush()) {
      std::filesystem::remove(tmp, ec);
      return;
    }
  }
  std::filesystem::rename(tmp, target, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

std::shared_ptr<const UnivPolys> UnivPolyCache::get(unsigned p, unsigned n) {
  std::lock_guard lock(mu_);
  if (auto it = by_prime_.find(p); it != by_prime_.end() && it->second->n >= n) return it->second;

  std::shared_ptr<const UnivPolys> result;
  if (directory()) {
    std::ifstream in(path_for(p, n), std::ios::binary);
    if (in) {
      std::stringstream buf;
      buf << in.rdbuf();
      try {
        result = std::make_shared<const UnivPolys>(UnivPolys::from_text(p, n, buf.str()));
      } catch (const Error&) {
        result.reset();  // corrupt or stale file: recompute below
      }
    }
  }
  if (!result) {
    result = std::make_shared<const UnivPolys>(UnivPolys::compute(p, n));
    write_file(*result);
  }
  by_prime_[p] = result;
  return result;
}

std::filesystem::path UnivPolyCache::rebuild(unsigned p, unsigned n) {
  auto polys = std::make_shared<const UnivPolys>(UnivPolys::compute(p, n));
  std::lock_guard lock(mu_);
  write_file(*polys);
  auto& slot = by_prime_[p];
  if (!slot || slot->n <= n) slot = polys;
  return path_for(p, n);
}

// ------------------------------------------------------------ contexts/values

WittCtx::WittCtx(unsigned p_, unsigned n_, RingPtr ring_) : p(p_), n(n_), ring(std::move(ring_)) {
  if (!is_prime(p)) throw Error(ErrorKind::kInvalidArgument, std::to_string(p) + " is not prime");
  if (!ring) throw Error(ErrorKind::kInvalidArgument, "Witt context needs a coefficient ring");
}

bool same_ctx(const WittCtx& a, const WittCtx& b) {
  return a.p == b.p && a.n == b.n &&
         (a.ring == b.ring || same_presentation(*a.ring, *b.ring));
}

namespace {

void require_ring(const WittCtx& ctx, const RingElem& e) {
  if (e.ring() != ctx.ring && !same_presentation(*e.ring(), *ctx.ring))
    throw Error(ErrorKind::kCtxMismatch, "element does not belong to the Witt coefficient ring");
}

void require_same(const WittCtx& a, const WittCtx& b) {
  if (!same_ctx(a, b))
    throw Error(ErrorKind::kCtxMismatch,
                "Witt contexts differ (p=" + std::to_string(a.p) + ",n=" + std::to_string(a.n) +
                    " vs p=" + std::to_string(b.p) + ",n=" + std::to_string(b.n) + ")");
}

}  // namespace

WittVec::WittVec(WittCtx ctx, std::vector<RingElem> components)
    : ctx_(std::move(ctx)), comps_(std::move(components)) {
  if (comps_.size() != ctx_.length())
    throw Error(ErrorKind::kLengthError, "Witt vector of length n=" + std::to_string(ctx_.n) +
                                             " needs " + std::to_string(ctx_.length()) +
                                             " components, got " + std::to_string(comps_.size()));
  for (auto& c : comps_) {
    require_ring(ctx_, c);
    if (c.ring() != ctx_.ring) c = RingElem(ctx_.ring, c.value());
  }
}

WittVec WittVec::parse(const WittCtx& ctx, const std::vector<std::string>& components) {
  std::vector<RingElem> comps;
  for (const auto& c : components) comps.push_back(RingElem::parse(ctx.ring, c));
  return WittVec(ctx, std::move(comps));
}

std::vector<std::string> WittVec::to_strings() const {
  std::vector<std::string> out;
  for (const auto& c : comps_) out.push_back(c.to_string());
  return out;
}

bool operator==(const WittVec& a, const WittVec& b) {
  require_same(a.ctx_, b.ctx_);
  for (std::size_t i = 0; i < a.comps_.size(); ++i)
    if (!(a.comps_[i] == b.comps_[i])) return false;
  return true;
}

GhostVec::GhostVec(WittCtx ctx, std::vector<RingElem> entries)
    : ctx_(std::move(ctx)), entries_(std::move(entries)) {
  if (entries_.size() != ctx_.length())
    throw Error(ErrorKind::kLengthError, "ghost vector has the wrong number of entries");
  for (const auto& e : entries_) require_ring(ctx_, e);
}

GhostVec GhostVec::operator+(const GhostVec& o) const {
  require_same(ctx_, o.ctx_);
  std::vector<RingElem> out;
  for (std::size_t i = 0; i < entries_.size(); ++i) out.push_back(entries_[i] + o.entries_[i]);
  return GhostVec(ctx_, std::move(out));
}

GhostVec GhostVec::operator*(const GhostVec& o) const {
  require_same(ctx_, o.ctx_);
  std::vector<RingElem> out;
  for (std::size_t i = 0; i < entries_.size(); ++i) out.push_back(entries_[i] * o.entries_[i]);
  return GhostVec(ctx_, std::move(out));
}

bool operator==(const GhostVec& a, const GhostVec& b) {
  require_same(a.ctx_, b.ctx_);
  for (std::size_t i = 0; i < a.entries_.size(); ++i)
    if (!(a.entries_[i] == b.entries_[i])) return false;
  return true;
}

// ----------------------------------------------------------------- arithmetic

namespace {

struct ElemOps {
  RingPtr ring;
  RingElem constant(const Rational& c) const { return RingElem::of(ring, c); }
  RingElem add(const RingElem& a, const RingElem& b) const { return a + b; }
  RingElem mul(const RingElem& a, const RingElem& b) const { return a * b; }
};

struct PolyOps {
  std::size_t nvars;
  Poly constant(const Rational& c) const { return Poly(nvars, c); }
  Poly add(const Poly& a, const Poly& b) const { return a + b; }
  Poly mul(const Poly& a, const Poly& b) const { return a * b; }
};

using DenseOpsVec = std::vector<Integer>;

// Dense coefficient vectors for Z[x] with no relations; much faster than
// sparse rational polynomials for the high-degree substitutions at large n.
struct DenseOps {
  using Vec = std::vector<Integer>;
  Vec constant(const Rational& c) const { return sgn(c) == 0 ? Vec{} : Vec{Integer(c.get_num())}; }
  Vec add(const Vec& a, const Vec& b) const {
    const Vec& big = a.size() >= b.size() ? a : b;
    const Vec& small = a.size() >= b.size() ? b : a;
    Vec r = big;
    for (std::size_t i = 0; i < small.size(); ++i) r[i] += small[i];
    while (!r.empty() && sgn(r.back()) == 0) r.pop_back();
    return r;
  }
  Vec mul(const Vec& a, const Vec& b) const {
    if (a.empty() || b.empty()) return {};
    Vec r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (sgn(a[i]) == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j)
        mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    return r;
  }
  static std::optional<Vec> from(const Poly& f) {
    Vec r;
    for (const auto& t : f.terms()) {
      if (t.coeff.get_den() != 1) return std::nullopt;
      const std::uint32_t e = t.mono[0];
      if (r.size() <= e) r.resize(e + 1);
      r[e] = t.coeff.get_num();
    }
    while (!r.empty() && sgn(r.back()) == 0) r.pop_back();
    return r;
  }
  static Poly to_poly(const Vec& v) {
    std::vector<Poly::Term> terms;
    for (std::size_t e = 0; e < v.size(); ++e)
      if (sgn(v[e]) != 0) terms.push_back({Monomial::variable(1, 0, static_cast<std::uint32_t>(e)), Rational(v[e])});
    return Poly::from_terms(1, std::move(terms));
  }
};

// Upper bound for |coefficients| of f(args) from the l1 norms of the args.
struct AbsBoundOps {
  long double constant(const Rational& c) const { return std::fabs(c.get_d()); }
  long double add(long double a, long double b) const { return a + b; }
  long double mul(long double a, long double b) const { return a * b; }
};

// Kronecker substitution: a polynomial in x with coefficients below 2^(B-1)
// in absolute value is recovered from its value at x = 2^B.
Integer kronecker_pack(const DenseOpsVec& v, std::size_t bits) {
  Integer r = 0;
  for (std::size_t e = v.size(); e-- > 0;) {
    r <<= bits;
    r += v[e];
  }
  return r;
}

DenseOpsVec kronecker_unpack(Integer v, std::size_t bits) {
  DenseOpsVec out;
  Integer half = Integer(1) << (bits - 1);
  Integer digit;
  while (sgn(v) != 0) {
    mpz_fdiv_r_2exp(digit.get_mpz_t(), v.get_mpz_t(), bits);
    if (digit >= half) digit -= Integer(1) << bits;
    out.push_back(digit);
    v -= digit;
    v >>= bits;
  }
  return out;
}

// Z with no generators: plain integers.
struct IntOps {
  Integer constant(const Rational& c) const { return c.get_num(); }
  Integer add(const Integer& a, const Integer& b) const { return a + b; }
  Integer mul(const Integer& a, const Integer& b) const { return a * b; }
};

// Z/m with no generators and m < 2^32: machine words.
struct WordModOps {
  std::uint64_t m;
  std::uint64_t constant(const Rational& c) const { return mpz_fdiv_ui(c.get_num_mpz_t(), m); }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % m; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % m; }
};

// Z/m with no generators, large m.
struct BigModOps {
  Integer m;
  Integer reduce(Integer v) const {
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return v;
  }
  Integer constant(const Rational& c) const { return reduce(c.get_num()); }
  Integer add(const Integer& a, const Integer& b) const { return reduce(a + b); }
  Integer mul(const Integer& a, const Integer& b) const { return reduce(a * b); }
};

// Evaluates a family on a ring without generators, or returns false.
bool eval_family_scalar(const WittCtx& ctx, const std::vector<EvalPlan>& polys, std::size_t count,
                        const std::vector<RingElem>& args, std::vector<RingElem>& out) {
  const FPRing& ring = *ctx.ring;
  if (ring.nvars() != 0 || !ring.relations().empty()) return false;
  const auto kind = ring.base().kind();
  if (kind != Scalar::Kind::kIntegers && kind != Scalar::Kind::kIntegersMod) return false;
  std::vector<Integer> ints;
  for (const auto& a : args) ints.push_back(a.value().constant_term().get_num());
  auto emit = [&](const Integer& v) { out.push_back(RingElem(ctx.ring, Poly(0, Rational(v)))); };
  if (kind == Scalar::Kind::kIntegers) {
    IntOps ops;
    for (std::size_t i = 0; i < count; ++i) emit(polys[i](std::span<const Integer>(ints.data(), polys[i].nvars()), ops));
    return true;
  }
  const Integer& m = ring.base().modulus();
  if (m < Integer(1) << 32) {
    WordModOps ops{m.get_ui()};
    std::vector<std::uint64_t> words;
    for (const auto& v : ints) words.push_back(ops.constant(Rational(v)));
    for (std::size_t i = 0; i < count; ++i)
      emit(Integer(polys[i](std::span<const std::uint64_t>(words.data(), polys[i].nvars()), ops)));
    return true;
  }
  BigModOps ops{m};
  for (std::size_t i = 0; i < count; ++i) emit(polys[i](std::span<const Integer>(ints.data(), polys[i].nvars()), ops));
  return true;
}

// Evaluates polys[0..count) at args (each poly uses a prefix of args).
std::vector<RingElem> eval_family(const WittCtx& ctx, const std::vector<EvalPlan>& polys,
                                  std::size_t count, const std::vector<RingElem>& args) {
  std::vector<RingElem> out;
  out.reserve(count);
  if (eval_family_scalar(ctx, polys, count, args, out)) return out;
  if (ctx.ring->nvars() == 1 && ctx.ring->relations().empty() &&
      ctx.ring->base().kind() == Scalar::Kind::kIntegers) {
    std::vector<DenseOps::Vec> values;
    for (const auto& a : args)
      if (auto d = DenseOps::from(a.value())) values.push_back(std::move(*d));
    if (values.size() == args.size()) {
      std::vector<long double> norms;
      for (const auto& v : values) {
        long double s = 0;
        for (const auto& c : v) s += std::fabs(c.get_d());
        norms.push_back(s);
      }
      AbsBoundOps bound_ops;
      IntOps int_ops;
      DenseOps dense_ops;
      for (std::size_t i = 0; i < count; ++i) {
        const std::size_t k = polys[i].nvars();
        const long double bound = polys[i](std::span<const long double>(norms.data(), k), bound_ops);
        if (std::isfinite(bound) && bound < 0x1p16000L) {
          // Two spare bits absorb rounding in the bound and the sign.
          const auto bits = static_cast<std::size_t>(std::ceil(std::log2(bound + 1))) + 3;
          std::vector<Integer> packed;
          for (std::size_t j = 0; j < k; ++j) packed.push_back(kronecker_pack(values[j], bits));
          Integer val = polys[i](std::span<const Integer>(packed.data(), k), int_ops);
          out.push_back(RingElem(ctx.ring, DenseOps::to_poly(kronecker_unpack(std::move(val), bits))));
        } else {
          std::span<const DenseOps::Vec> view(values.data(), k);
          out.push_back(RingElem(ctx.ring, DenseOps::to_poly(polys[i](view, dense_ops))));
        }
      }
      return out;
    }
  }
  if (ctx.ring->relations().empty() && ctx.ring->base().kind() != Scalar::Kind::kIntegersMod) {
    // Nothing to reduce: evaluate on bare polynomials.
    PolyOps ops{ctx.ring->nvars()};
    std::vector<Poly> values;
    for (const auto& a : args) values.push_back(a.value());
    for (std::size_t i = 0; i < count; ++i) {
      std::span<const Poly> view(values.data(), polys[i].nvars());
      out.push_back(RingElem(ctx.ring, polys[i](view, ops)));
    }
    return out;
  }
  ElemOps ops{ctx.ring};
  for (std::size_t i = 0; i < count; ++i) {
    std::span<const RingElem> view(args.data(), polys[i].nvars());
    out.push_back(polys[i](view, ops));
  }
  return out;
}

std::vector<RingElem> interleave(const WittVec& u, const WittVec& v) {
  std::vector<RingElem> args;
  for (std::size_t i = 0; i < u.components().size(); ++i) {
    args.push_back(u[i]);
    args.push_back(v[i]);
  }
  return args;
}

// Witt components of the integer k in W_n(Z).
std::vector<Integer> integer_witt(unsigned p, unsigned n, const Integer& k) {
  std::vector<Integer> a;
  for (unsigned i = 0; i <= n; ++i) {
    Integer rest = k;
    for (unsigned j = 0; j < i; ++j) rest -= ppow(p, j) * ipow(a[j], upow(p, i - j));
    Integer q;
    mpz_divexact(q.get_mpz_t(), rest.get_mpz_t(), ppow(p, i).get_mpz_t());
    a.push_back(q);
  }
  return a;
}

}  // namespace

WittVec w_zero(const WittCtx& ctx) {
  return WittVec(ctx, std::vector<RingElem>(ctx.length(), RingElem::of(ctx.ring, 0)));
}

WittVec w_one(const WittCtx& ctx) { return teich(ctx, RingElem::of(ctx.ring, 1)); }

WittVec w_from_integer(const WittCtx& ctx, const Integer& k) {
  std::vector<RingElem> comps;
  for (const auto& c : integer_witt(ctx.p, ctx.n, k)) comps.push_back(RingElem::of(ctx.ring, c));
  return WittVec(ctx, std::move(comps));
}

WittVec w_add(const WittVec& u, const WittVec& v) {
  require_same(u.ctx(), v.ctx());
  auto polys = UnivPolyCache::instance().get(u.ctx().p, u.ctx().n);
  return WittVec(u.ctx(), eval_family(u.ctx(), polys->sum_plans, u.ctx().length(), interleave(u, v)));
}

WittVec w_mul(const WittVec& u, const WittVec& v) {
  require_same(u.ctx(), v.ctx());
  auto polys = UnivPolyCache::instance().get(u.ctx().p, u.ctx().n);
  return WittVec(u.ctx(), eval_family(u.ctx(), polys->prod_plans, u.ctx().length(), interleave(u, v)));
}

WittVec w_neg(const WittVec& u) {
  auto polys = UnivPolyCache::instance().get(u.ctx().p, u.ctx().n);
  return WittVec(u.ctx(), eval_family(u.ctx(), polys->neg_plans, u.ctx().length(), u.components()));
}

WittVec w_sub(const WittVec& u, const WittVec& v) { return w_add(u, w_neg(v)); }

WittVec w_scale(const Integer& k, const WittVec& v) {
  return w_mul(w_from_integer(v.ctx(), k), v);
}

// --------------------------------------------------------------------- ghosts

GhostVec ghost(const WittVec& v) {
  const auto& ctx = v.ctx();
  std::vector<RingElem> cur = v.components();  // cur[j] = a_j^(p^(i-j))
  std::vector<RingElem> out;
  for (unsigned i = 0; i <= ctx.n; ++i) {
    if (i > 0)
      for (unsigned j = 0; j < i; ++j) cur[j] = cur[j].pow(ctx.p);
    RingElem w = RingElem::of(ctx.ring, 0);
    for (unsigned j = 0; j <= i; ++j) w = w + cur[j].scaled(Rational(ppow(ctx.p, j)));
    out.push_back(w);
  }
  return GhostVec(ctx, std::move(out));
}

RingElem ghost_component(const WittVec& v, unsigned i) {
  if (i > v.ctx().n) throw Error(ErrorKind::kLengthError, "ghost index exceeds the length");
  const unsigned p = v.ctx().p;
  RingElem w = RingElem::of(v.ctx().ring, 0);
  for (unsigned j = 0; j <= i; ++j) w = w + v[j].pow(upow(p, i - j)).scaled(Rational(ppow(p, j)));
  return w;
}

WittVec from_ghost(const WittCtx& ctx, const std::vector<RingElem>& entries) {
  if (entries.size() != ctx.length())
    throw Error(ErrorKind::kLengthError, "ghost vector has the wrong number of entries");
  if (ctx.ring->base().kind() == Scalar::Kind::kIntegersMod)
    throw Error(ErrorKind::kBadBase, "from_ghost needs p to be a non-zero-divisor");
  std::vector<RingElem> a;
  std::vector<RingElem> cur;
  for (unsigned i = 0; i <= ctx.n; ++i) {
    require_ring(ctx, entries[i]);
    for (auto& c : cur) c = c.pow(ctx.p);
    RingElem rest = RingElem(ctx.ring, entries[i].value());
    for (unsigned j = 0; j < i; ++j) rest = rest - cur[j].scaled(Rational(ppow(ctx.p, j)));
    try {
      a.push_back(rest.exact_div(ppow(ctx.p, i)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kNotDivisible) throw;
      throw Error(ErrorKind::kNotInGhostImage,
                  "ghost entry " + std::to_string(i) + " fails the congruence: " + e.what());
    }
    cur.push_back(a.back());
  }
  return WittVec(ctx, std::move(a));
}

// ------------------------------------------------------------ V, F, [a], trunc

WittVec teich(const WittCtx& ctx, const RingElem& a) {
  require_ring(ctx, a);
  std::vector<RingElem> comps(ctx.length(), RingElem::of(ctx.ring, 0));
  comps[0] = RingElem(ctx.ring, a.value());
  return WittVec(ctx, std::move(comps));
}

WittVec versch(const WittVec& v) {
  std::vector<RingElem> comps{RingElem::of(v.ctx().ring, 0)};
  comps.insert(comps.end(), v.components().begin(), v.components().end());
  return WittVec(v.ctx().with_length(v.ctx().n + 1), std::move(comps));
}

WittVec frob(const WittVec& v) {
  const auto& ctx = v.ctx();
  if (ctx.n == 0) throw Error(ErrorKind::kLengthError, "Frobenius needs length n >= 1");
  auto polys = UnivPolyCache::instance().get(ctx.p, ctx.n);
  WittCtx out = ctx.with_length(ctx.n - 1);
  return WittVec(out, eval_family(out, polys->frob_plans, out.length(), v.components()));
}

WittVec truncate(const WittVec& v, unsigned n_prime) {
  if (n_prime > v.ctx().n)
    throw Error(ErrorKind::kLengthError, "cannot truncate length " + std::to_string(v.ctx().n) +
                                             " to " + std::to_string(n_prime));
  std::vector<RingElem> comps(v.components().begin(), v.components().begin() + n_prime + 1);
  return WittVec(v.ctx().with_length(n_prime), std::move(comps));
}

// ---------------------------------------------------------------- rgh / alpha

RingPtr reduced_ghost_target(const WittCtx& ctx) {
  return mod_fiber(ctx.ring, ppow(ctx.p, ctx.n + 1));
}

RingElem rgh_lift(const WittVec& v) {
  const auto& ctx = v.ctx();
  RingElem s = RingElem::of(ctx.ring, 0);
  for (unsigned i = 0; i <= ctx.n; ++i)
    s = s + v[i].pow(upow(ctx.p, ctx.n + 1 - i)).scaled(Rational(ppow(ctx.p, i)));
  return s;
}

RingElem rgh(const WittVec& v, const RingPtr& target) {
  if (target->vars() != v.ctx().ring->vars() ||
      target->base() != Scalar::integers_mod(ppow(v.ctx().p, v.ctx().n + 1)))
    throw Error(ErrorKind::kCtxMismatch, "reduced ghost target must be A/p^(n+1)");
  return RingElem(target, rgh_lift(v).value());
}

RingElem rgh(const WittVec& v) { return rgh(v, reduced_ghost_target(v.ctx())); }

AlphaImage alpha(const WittVec& v) {
  if (v.ctx().n == 0) throw Error(ErrorKind::kLengthError, "alpha needs a vector of length >= 1");
  return AlphaImage{truncate(v, v.ctx().n - 1), ghost_component(v, v.ctx().n)};
}

WittVec alpha_section(const WittVec& w, const RingElem& a) {
  const auto& ctx = w.ctx();
  require_ring(ctx, a);
  const Integer modulus = ppow(ctx.p, ctx.n + 1);
  RingElem last;
  try {
    last = (RingElem(ctx.ring, a.value()) - rgh_lift(w)).exact_div(modulus);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kNotDivisible) throw;
    throw Error(ErrorKind::kCongruenceFailed,
                "a is not congruent to rgh(w) mod " + modulus.get_str());
  }
  std::vector<RingElem> comps = w.components();
  comps.push_back(last);
  return WittVec(ctx.with_length(ctx.n + 1), std::move(comps));
}

// --------------------------------------------------------------------- nested

std::size_t NestedCtx::grid_size() const {
  std::size_t s = 1;
  for (const auto& [p, n] : levels) s *= n + 1;
  return s;
}

NestedCtx NestedCtx::inner() const {
  return NestedCtx{{levels.begin() + 1, levels.end()}, ring};
}

NestedVec::NestedVec(RingElem leaf) : leaf_(std::make_shared<const RingElem>(std::move(leaf))) {}

NestedVec::NestedVec(std::vector<NestedVec> components) : comps_(std::move(components)) {
  if (comps_.empty()) throw Error(ErrorKind::kLengthError, "nested Witt vector without components");
}

bool operator==(const NestedVec& a, const NestedVec& b) {
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) return a.leaf() == b.leaf();
  if (a.comps_.size() != b.comps_.size()) return false;
  for (std::size_t i = 0; i < a.comps_.size(); ++i)
    if (!(a.comps_[i] == b.comps_[i])) return false;
  return true;
}

namespace {

void check_shape(const NestedCtx& ctx, const NestedVec& v) {
  if (ctx.levels.empty()) {
    if (!v.is_leaf()) throw Error(ErrorKind::kCtxMismatch, "nested vector is deeper than its context");
    return;
  }
  if (v.is_leaf() || v.components().size() != ctx.levels.front().second + 1)
    throw Error(ErrorKind::kCtxMismatch, "nested vector does not match its context");
}

struct NestedOps {
  NestedCtx ctx;
  NestedVec constant(const Rational& c) const { return nested_constant(ctx, c.get_num()); }
  NestedVec add(const NestedVec& a, const NestedVec& b) const { return nested_add(ctx, a, b); }
  NestedVec mul(const NestedVec& a, const NestedVec& b) const { return nested_mul(ctx, a, b); }
};

NestedVec nested_binary(const NestedCtx& ctx, const NestedVec& u, const NestedVec& v, bool product) {
  check_shape(ctx, u);
  check_shape(ctx, v);
  if (ctx.levels.empty()) return NestedVec(product ? u.leaf() * v.leaf() : u.leaf() + v.leaf());
  const auto [p, n] = ctx.levels.front();
  auto polys = UnivPolyCache::instance().get(p, n);
  const auto& family = product ? polys->prod_plans : polys->sum_plans;
  std::vector<NestedVec> args;
  for (unsigned i = 0; i <= n; ++i) {
    args.push_back(u.components()[i]);
    args.push_back(v.components()[i]);
  }
  NestedOps ops{ctx.inner()};
  std::vector<NestedVec> out;
  for (unsigned i = 0; i <= n; ++i)
    out.push_back(family[i](std::span<const NestedVec>(args.data(), family[i].nvars()), ops));
  return NestedVec(std::move(out));
}

}  // namespace

NestedVec nested_add(const NestedCtx& ctx, const NestedVec& u, const NestedVec& v) {
  return nested_binary(ctx, u, v, false);
}

NestedVec nested_mul(const NestedCtx& ctx, const NestedVec& u, const NestedVec& v) {
  return nested_binary(ctx, u, v, true);
}

NestedVec nested_constant(const NestedCtx& ctx, const Integer& k) {
  if (ctx.levels.empty()) return NestedVec(RingElem::of(ctx.ring, k));
  const auto [p, n] = ctx.levels.front();
  NestedCtx in = ctx.inner();
  std::vector<NestedVec> out;
  for (const auto& c : integer_witt(p, n, k)) out.push_back(nested_constant(in, c));
  return NestedVec(std::move(out));
}

NestedVec nested_teich(const NestedCtx& ctx, const RingElem& a) {
  if (ctx.levels.empty()) return NestedVec(a);
  NestedCtx in = ctx.inner();
  std::vector<NestedVec> out{nested_teich(in, a)};
  for (unsigned i = 0; i < ctx.levels.front().second; ++i) out.push_back(nested_constant(in, 0));
  return NestedVec(std::move(out));
}

std::vector<RingElem> nested_ghost(const NestedCtx& ctx, const NestedVec& v) {
  check_shape(ctx, v);
  if (ctx.levels.empty()) return {v.leaf()};
  const auto [p, n] = ctx.levels.front();
  NestedCtx in = ctx.inner();
  std::vector<std::vector<RingElem>> cur;  // cur[j][t] = G(a_j)[t]^(p^(k-j))
  for (const auto& c : v.components()) cur.push_back(nested_ghost(in, c));
  const std::size_t s = in.grid_size();
  std::vector<RingElem> out;
  for (unsigned k = 0; k <= n; ++k) {
    if (k > 0)
      for (unsigned j = 0; j < k; ++j)
        for (auto& e : cur[j]) e = e.pow(p);
    for (std::size_t t = 0; t < s; ++t) {
      RingElem w = RingElem::of(ctx.ring, 0);
      for (unsigned j = 0; j <= k; ++j) w = w + cur[j][t].scaled(Rational(ppow(p, j)));
      out.push_back(w);
    }
  }
  return out;
}

NestedVec nested_from_ghost(const NestedCtx& ctx, const std::vector<RingElem>& grid) {
  if (grid.size() != ctx.grid_size())
    throw Error(ErrorKind::kLengthError, "ghost grid has the wrong size");
  if (ctx.levels.empty()) return NestedVec(grid[0]);
  const auto [p, n] = ctx.levels.front();
  NestedCtx in = ctx.inner();
  const std::size_t s = in.grid_size();
  std::vector<std::vector<RingElem>> cur;
  std::vector<NestedVec> out;
  for (unsigned k = 0; k <= n; ++k) {
    for (auto& row : cur)
      for (auto& e : row) e = e.pow(p);
    std::vector<RingElem> h;
    for (std::size_t t = 0; t < s; ++t) {
      RingElem rest = grid[k * s + t];
      for (unsigned j = 0; j < k; ++j) rest = rest - cur[j][t].scaled(Rational(ppow(p, j)));
      try {
        h.push_back(rest.exact_div(ppow(p, k)));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kNotDivisible) throw;
        throw Error(ErrorKind::kNotInGhostImage, "ghost grid is not in the image: " +
                                                     std::string(e.what()));
      }
    }
    out.push_back(nested_from_ghost(in, h));
    cur.push_back(std::move(h));
  }
  return NestedVec(std::move(out));
}

NestedVec as_nested(const WittVec& v) {
  std::vector<NestedVec> comps;
  for (const auto& c : v.components()) comps.emplace_back(c);
  return NestedVec(std::move(comps));
}

NestedCtx coplethysm_ctx(const WittCtx& ctx, unsigned m) {
  if (m > ctx.n) throw Error(ErrorKind::kLengthError, "coplethysm needs m <= n");
  return NestedCtx{{{ctx.p, m}, {ctx.p, ctx.n - m}}, ctx.ring};
}

NestedVec coplethysm(const WittVec& v, unsigned m) {
  NestedCtx nctx = coplethysm_ctx(v.ctx(), m);
  const unsigned inner = v.ctx().n - m;
  GhostVec g = ghost(v);
  std::vector<RingElem> grid;
  for (unsigned i = 0; i <= m; ++i)
    for (unsigned j = 0; j <= inner; ++j) grid.push_back(g[i + j]);
  return nested_from_ghost(nctx, grid);
}

// ------------------------------------------------------------------- big Witt

BigWittCtx::BigWittCtx(std::map<unsigned, unsigned> lengths_, std::vector<unsigned> order_,
                       RingPtr ring_)
    : lengths(std::move(lengths_)), order(std::move(order_)), ring(std::move(ring_)) {
  if (order.size() != lengths.size())
    throw Error(ErrorKind::kCtxMismatch, "nesting order must list every prime exactly once");
  std::vector<unsigned> seen;
  for (unsigned p : order) {
    if (!lengths.count(p) || std::find(seen.begin(), seen.end(), p) != seen.end())
      throw Error(ErrorKind::kCtxMismatch, "nesting order must list every prime exactly once");
    if (!is_prime(p)) throw Error(ErrorKind::kInvalidArgument, std::to_string(p) + " is not prime");
    seen.push_back(p);
  }
}

NestedCtx BigWittCtx::nested() const {
  NestedCtx ctx{{}, ring};
  for (unsigned p : order) ctx.levels.emplace_back(p, lengths.at(p));
  return ctx;
}

BigWittCtx BigWittCtx::reordered(std::vector<unsigned> new_order) const {
  return BigWittCtx(lengths, std::move(new_order), ring);
}

namespace {

// Divisor of each flattened grid position in row-major order.
std::vector<Integer> grid_divisors(const NestedCtx& ctx) {
  std::vector<Integer> out{Integer(1)};
  for (const auto& [p, n] : ctx.levels) {
    std::vector<Integer> next;
    for (const auto& d : out)
      for (unsigned k = 0; k <= n; ++k) next.push_back(d * ppow(p, k));
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::map<Integer, RingElem> flatten_ghost(const BigWittCtx& ctx, const NestedVec& v) {
  NestedCtx nctx = ctx.nested();
  auto grid = nested_ghost(nctx, v);
  auto divs = grid_divisors(nctx);
  std::map<Integer, RingElem> out;
  for (std::size_t i = 0; i < grid.size(); ++i) out.emplace(divs[i], grid[i]);
  return out;
}

NestedVec big_from_flat_ghost(const BigWittCtx& ctx, const std::map<Integer, RingElem>& ghost) {
  NestedCtx nctx = ctx.nested();
  std::vector<RingElem> grid;
  for (const auto& d : grid_divisors(nctx)) {
    auto it = ghost.find(d);
    if (it == ghost.end())
      throw Error(ErrorKind::kCtxMismatch, "flattened ghost is missing divisor " + d.get_str());
    grid.push_back(it->second);
  }
  if (grid.size() != ghost.size())
    throw Error(ErrorKind::kCtxMismatch, "flattened ghost has extra entries");
  return nested_from_ghost(nctx, grid);
}

NestedVec big_convert(const BigWittCtx& from, const BigWittCtx& to, const NestedVec& v) {
  if (from.lengths != to.lengths)
    throw Error(ErrorKind::kCtxMismatch, "big Witt contexts have different length maps");
  return big_from_flat_ghost(to, flatten_ghost(from, v));
}

// -------------------------------------------------------------- presentations

bool WittLocalization::certify() const {
  if (!(w_mul(teich_inv, teich_f) == w_one(ctx))) return false;
  GhostVec prod = ghost(teich_inv) * ghost(teich_f);
  for (const auto& e : prod.entries())
    if (!(e == RingElem::of(ctx.ring, 1))) return false;
  return true;
}

WittLocalization witt_localized(const RingPtr& a, const Poly& f, unsigned p, unsigned n) {
  if (!a->has_rewrite())
    throw Error(ErrorKind::kPresentationOnly, "witt_localized needs a ring with a rewrite system");
  Localization loc = localize(a, f);
  WittCtx ctx(p, n, loc.ring);
  WittVec tf = teich(ctx, RingElem(loc.ring, loc.canonical.apply(f)));
  WittVec tu = teich(ctx, RingElem(loc.ring, Poly::variable(loc.ring->nvars(), loc.inverse_var)));
  return WittLocalization{std::move(loc), ctx, std::move(tf), std::move(tu)};
}

std::vector<Integer> decompose_in_verschiebung_basis(const WittVec& v) {
  const auto& ctx = v.ctx();
  if (ctx.ring->nvars() != 0 || ctx.ring->base().kind() != Scalar::Kind::kIntegers)
    throw Error(ErrorKind::kBadBase, "Verschiebung basis decomposition needs W_n(Z)");
  std::vector<Integer> coords;
  WittVec rest = v;
  for (unsigned i = 0; i <= ctx.n; ++i) {
    Integer c(rest[i].value().constant_term().get_num());
    coords.push_back(c);
    std::vector<RingElem> basis(ctx.length(), RingElem::of(ctx.ring, 0));
    basis[i] = RingElem::of(ctx.ring, 1);
    rest = w_sub(rest, w_scale(c, WittVec(ctx, std::move(basis))));
    if (!rest[i].is_zero())
      throw Error(ErrorKind::kVerificationFailed, "triangular decomposition left a remainder");
  }
  if (!(rest == w_zero(ctx)))
    throw Error(ErrorKind::kVerificationFailed, "vector is not spanned by 1 and V^i(1)");
  return coords;
}

WittZPresentation wittring_presentation_Z(unsigned p, unsigned n, unsigned samples,
                                          std::uint64_t seed) {
  WittZPresentation out;
  std::vector<std::string> vars;
  for (unsigned i = 1; i <= n; ++i) vars.push_back("x" + std::to_string(i));
  std::vector<Poly> rels;
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = i; j <= n; ++j) {
      Poly xi = Poly::variable(n, i - 1);
      Poly xj = Poly::variable(n, j - 1);
      rels.push_back(xi * xj - xj.scaled(Rational(ppow(p, i))));
    }
  out.ring = FPRing::make(Scalar::integers(), vars, rels);

  WittCtx ctx(p, n, FPRing::integers());
  for (unsigned i = 1; i <= n; ++i) {
    std::vector<RingElem> comps(ctx.length(), RingElem::of(ctx.ring, 0));
    comps[i] = RingElem::of(ctx.ring, 1);
    out.images.emplace_back(ctx, std::move(comps));
  }

  bool ok = true;
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = i; j <= n; ++j) {
      WittVec lhs = w_mul(out.images[i - 1], out.images[j - 1]);
      WittVec rhs = w_scale(ppow(p, i), out.images[j - 1]);
      bool holds = lhs == rhs;
      ok = ok && holds;
      out.report.push_back("x" + std::to_string(i) + "*x" + std::to_string(j) + " = " +
                           ppow(p, i).get_str() + "*x" + std::to_string(j) + ": " +
                           (holds ? "ok" : "FAILED"));
    }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-50, 50);
  unsigned spanned = 0;
  for (unsigned s = 0; s < samples; ++s) {
    std::vector<RingElem> comps;
    for (unsigned i = 0; i <= n; ++i) comps.push_back(RingElem::of(ctx.ring, dist(rng)));
    WittVec v(ctx, std::move(comps));
    try {
      auto coords = decompose_in_verschiebung_basis(v);
      WittVec sum = w_from_integer(ctx, coords[0]);
      for (unsigned i = 1; i <= n; ++i) sum = w_add(sum, w_scale(coords[i], out.images[i - 1]));
      if (sum == v) ++spanned;
    } catch (const Error&) {
    }
  }
  ok = ok && spanned == samples;
  out.report.push_back("span by 1, V^i(1): " + std::to_string(spanned) + "/" +
                       std::to_string(samples) + " random vectors");
  out.verified = ok;
  return out;
}

}  // namespace wittkit

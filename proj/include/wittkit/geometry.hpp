#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wittkit/jets.hpp"
#include "wittkit/ring.hpp"
#include "wittkit/witt.hpp"

namespace wittkit {

// ------------------------------------------------------------ glued schemes

/// The ordered pair (i, j) of charts meeting in D(f_ij) inside chart i.
struct ChartOverlap {
  std::size_t i = 0;
  std::size_t j = 0;
  Poly f_ij;
  Localization local;  // chart_i[1/f_ij]
  /// chart_j[1/f_ji] -> chart_i[1/f_ij], filled in by GluedScheme::make.
  RingHom transition;
};

/// What a caller supplies for an ordered pair: f_ij and the images of the
/// chart-j variables in chart_i[1/f_ij], whose inverse variable is named
/// `inverse_name` (default "u", made fresh against the chart variables).
struct OverlapSpec {
  std::size_t i = 0;
  std::size_t j = 0;
  std::string f_ij;
  std::vector<std::pair<std::string, std::string>> images;
  std::string inverse_name = "u";
};

/// Scheme glued from affine charts along principal opens.
///
/// Each overlapping pair must be listed in both orders. `make` completes
/// every transition to the inverse variable of its source (the inverse of
/// the image of f_ji is searched among +-f_ij^k and +-u^k), then checks
/// that opposite transitions are mutually inverse on generators and that
/// the cocycle condition holds on every triple overlap.
class GluedScheme {
 public:
  static GluedScheme make(std::vector<RingPtr> charts, const std::vector<OverlapSpec>& overlaps);
  static GluedScheme affine(RingPtr a);
  /// Charts Z[t] and Z[s] glued by s = 1/t.
  static GluedScheme projective_line();
  static GluedScheme disjoint_union(RingPtr a, RingPtr b);

  const std::vector<RingPtr>& charts() const noexcept { return charts_; }
  const std::vector<ChartOverlap>& overlaps() const noexcept { return overlaps_; }
  const ChartOverlap* overlap(std::size_t i, std::size_t j) const;
  const std::vector<std::string>& report() const noexcept { return report_; }

 private:
  std::vector<RingPtr> charts_;
  std::vector<ChartOverlap> overlaps_;
  std::vector<std::string> report_;
};

/// W_n applied chart by chart: W_n(A_i), overlaps W_n(A_i)[1/[f_ij]] realized
/// as W_n(A_i[1/f_ij]), and the transitions acting componentwise.
struct WittSpace {
  GluedScheme base;
  unsigned p = 2;
  unsigned n = 0;
  std::vector<WittCtx> charts;
  std::vector<WittLocalization> overlaps;  // parallel to base.overlaps()
  std::vector<std::string> report;

  /// The transition of overlap k applied componentwise to v in W_n(chart_j[1/f_ji]).
  WittVec transition(std::size_t k, const WittVec& v) const;
};

/// Requires charts over Z. Re-checks, on Teichmueller and Verschiebung test
/// vectors, that the Witt transitions are mutually inverse, commute with the
/// ghost map, send [f_ji] to a unit and satisfy the cocycle condition.
/// Throws Error(kCocycleFailed) naming the triple or pair.
WittSpace witt_space(const GluedScheme& x, unsigned p, unsigned n);

struct GlobalSectionsReport {
  unsigned p = 2;
  unsigned n = 0;
  unsigned degree_bound = 1;
  std::vector<WittVec> generators;  // over Z
  std::size_t rank = 0;
  bool matches_witt_of_z = false;
  std::vector<std::string> lines;
};

/// Equalizer of the two restrictions of W_n(P^1) to the overlap, on vectors
/// whose components have degree <= D in each chart, solved as integer linear
/// algebra on the component coefficients.
GlobalSectionsReport global_sections_P1(unsigned p, unsigned n, unsigned degree_bound);

struct CheckCounts {
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;

  bool ok() const noexcept { return failed == 0; }
};

struct CoequalizerReport {
  CheckCounts round_trips;  // alpha_section(alpha(v)) == v
  CheckCounts rejections;   // non-congruent pairs raise CongruenceFailed
  bool ok() const noexcept { return round_trips.ok() && rejections.ok(); }
};

/// Random v in W_{n+1}(A) and random pairs (w, rgh_lift(w) + c) with c not
/// divisible by p^(n+1). A needs a rewrite system and no p-torsion.
CoequalizerReport coequalizer_check(const RingPtr& a, unsigned p, unsigned n, unsigned trials,
                                    std::uint64_t seed = 1);

// ------------------------------------------------------ affine modification

struct AffineModification {
  JetCtx jets;                 // Lambda_n (.) A with A free
  RingPtr base;                // Lambda_n (.) A (x) A; the A-copy of x is y_x
  std::vector<Poly> ideal;     // p^(n+1), y_x - lift(rcgh(x))
  RingPtr modified;            // base[d_x]/(p^(n+1) d_x - (y_x - lift(rcgh(x))))
  RingHom structure;           // base -> modified
  std::vector<std::size_t> y_vars;
  std::vector<std::size_t> d_vars;

  /// Every rewrite rule of `modified` is monic, so standard monomials are a
  /// Z-basis and the ring has no p-torsion.
  bool torsion_free_certificate() const;
  /// Each generator of I lands in p^(n+1) B.
  bool ideal_divisible() const;
};

/// Throws Error(kInvalidArgument) unless A is a polynomial ring over Z.
AffineModification affine_modification(const RingPtr& a, unsigned p, unsigned n);

struct IsoReport {
  bool passed = false;
  RingHom forward;
  RingHom inverse;
  std::vector<std::string> lines;
};

/// h: B -> Lambda_{n+1} (.) A with y_x -> phi^(n+1)(x) and
/// d_x -> (phi^(n+1)(x) - lift(rcgh(x))) / p^(n+1), and its inverse
/// delta^(n+1) x -> d_x - R_x / p^(n+1). Both composites are checked on
/// generators; throws Error(kIsoFailed) with the generator otherwise.
IsoReport blowup_vs_jet_iso(const RingPtr& a, unsigned p, unsigned n);

/// Over Z[1/p] the total co-ghost A^(x)(n+1) -> Lambda_n (.) A is inverted by
/// delta^i x -> (x_i - G_i(x, ..., delta^(i-1) x, 0)) / p^i. Throws
/// Error(kIsoFailed).
IsoReport coghost_away_from_p(const RingPtr& a, unsigned p, unsigned n);

}  // namespace wittkit

#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "bolza/theta.hpp"

namespace bolza {

// Relative tolerance on the curve-equation residual |w^2 - P(z)|.
inline constexpr double kCurveEps = 1e-10;

// A point (z, w) on B_theta. The single point over z = infinity is
// represented by the flag `at_infinity`; z and w are then unused.
struct CurvePoint {
  cplx z{};
  cplx w{};
  bool at_infinity = false;

  static CurvePoint infinity() { return CurvePoint{{}, {}, true}; }
};

double curve_residual(const ThetaParam& theta, const CurvePoint& p);

// The two square roots of P(z), ordered: nonnegative real part first, ties
// broken by nonnegative imaginary part.
std::array<cplx, 2> fiber(cplx z, const ThetaParam& theta);

// (0,0), the four unit-circle branch points, then infinity.
std::array<CurvePoint, 6> ramification_points(const ThetaParam& theta);

// Finite branch values of z: 0, e^{i(pi/2-theta)}, e^{i(pi/2+theta)},
// e^{-i(pi/2-theta)}, e^{-i(pi/2+theta)}.
std::array<cplx, 5> finite_branch_values(const ThetaParam& theta);

// p0 = (1, sqrt(2 + 2 cos 2 theta)), the base point of the Weierstrass
// integrals.
CurvePoint base_point(const ThetaParam& theta);

// ---------------------------------------------------------------------------
// Paths in the z-plane.

class Segment {
 public:
  static Segment line(cplx a, cplx b);
  // Circular arc around `center`, angle running from phi0 to phi1 (either
  // direction; |phi1 - phi0| may exceed 2 pi).
  static Segment arc(cplx center, double radius, double phi0, double phi1);

  cplx at(double s) const;
  cplx derivative(double s) const;
  cplx start() const { return at(0.0); }
  cplx end() const { return at(1.0); }

  Segment reversed() const;
  // Image under z -> scale * z (rotation and scaling about the origin).
  Segment scaled(cplx scale) const;

 private:
  enum class Kind { Line, Arc };
  Kind kind_ = Kind::Line;
  cplx a_{}, b_{};          // line endpoints, or arc center in a_
  double radius_ = 0.0;
  double phi0_ = 0.0, phi1_ = 0.0;
};

struct Path {
  std::vector<Segment> segments;

  bool empty() const { return segments.empty(); }
  Path& append(const Path& other);
  Path reversed() const;
  Path scaled(cplx scale) const;
};

// Straight route from `from` to `to` replacing every stretch that comes
// within `radius` of a finite branch value by a counterclockwise-side circular
// detour. Throws GeometryError if an endpoint is itself within `radius` of a
// branch value.
Path route(const ThetaParam& theta, cplx from, cplx to, double radius = 0.05);

// Closed z-loop of radius `radius` around `center`, traversed `turns` times
// counterclockwise, starting at center + radius.
Path circle(cplx center, double radius, int turns);

// ---------------------------------------------------------------------------
// Analytic continuation of w along a path.

inline constexpr int kDefaultSteps = 256;
inline constexpr int kMaxSteps = 1 << 16;
// Beyond this modulus the continuation tracks v = w / z^3 instead of w.
inline constexpr double kChartRadius = 10.0;

class LiftedPath {
 public:
  const Path& path() const { return path_; }
  const CurvePoint& start() const { return start_; }
  CurvePoint end() const;
  int steps() const { return steps_; }

  // The sheet value w at parameter s of segment `seg`, continued from start.
  cplx w_at(std::size_t seg, double s) const;

 private:
  friend LiftedPath continue_sheet(const ThetaParam&, const Path&,
                                   const CurvePoint&, int);
  ThetaParam theta_{0.5};
  Path path_;
  CurvePoint start_;
  int steps_ = 0;
  std::vector<std::vector<cplx>> traces_;  // chart-local values per grid node
};

// Continues `start` along `path` by nearest-root tracking with `steps` grid
// steps per segment, doubling on ambiguity up to kMaxSteps. Throws
// GeometryError when the tracked root stays ambiguous.
LiftedPath continue_sheet(const ThetaParam& theta, const Path& path,
                          const CurvePoint& start, int steps = kDefaultSteps);

// ---------------------------------------------------------------------------
// Symmetries.

enum class Symmetry { J, S1, S2, S3, Phi, Psi };

std::string_view symmetry_name(Symmetry g);
CurvePoint apply_symmetry(Symmetry g, const CurvePoint& p);

// ---------------------------------------------------------------------------
// Homology cycles.

enum class CycleKind { C4Loop, PhiC4Loop, C5Loop, PhiC5Loop };
inline constexpr std::array<CycleKind, 4> kAllCycles = {
    CycleKind::C4Loop, CycleKind::PhiC4Loop, CycleKind::C5Loop,
    CycleKind::PhiC5Loop};

std::string_view cycle_name(CycleKind k);

struct Cycle {
  CycleKind kind;
  LiftedPath lift;
};

// Realizes the cycle as a closed loop avoiding every branch point: the
// boundary of a thin neighborhood of the slit from 0 to infinity (along the
// positive real axis for C4, the positive imaginary axis for C5), lifted so
// that the outward ray carries the sheet of the slit parametrization. The
// phi-kinds are the pointwise images under (z, w) -> (-z, i w).
Cycle build_cycle(const ThetaParam& theta, CycleKind kind);

}  // namespace bolza

#include "bolza/curve.hpp"

#include <algorithm>
#include <cmath>

namespace bolza {

double curve_residual(const ThetaParam& theta, const CurvePoint& p) {
  if (p.at_infinity) return 0.0;
  const double scale = 1.0 + std::pow(std::abs(p.z), 5);
  return std::abs(p.w * p.w - theta.poly(p.z)) / scale;
}

std::array<cplx, 2> fiber(cplx z, const ThetaParam& theta) {
  const cplx r = std::sqrt(theta.poly(z));
  const bool first = r.real() > 0.0 || (r.real() == 0.0 && r.imag() >= 0.0);
  return first ? std::array<cplx, 2>{r, -r} : std::array<cplx, 2>{-r, r};
}

std::array<cplx, 5> finite_branch_values(const ThetaParam& theta) {
  const double t = theta.theta();
  return {cplx(0.0, 0.0), std::polar(1.0, kHalfPi - t),
          std::polar(1.0, kHalfPi + t), std::polar(1.0, -(kHalfPi - t)),
          std::polar(1.0, -(kHalfPi + t))};
}

std::array<CurvePoint, 6> ramification_points(const ThetaParam& theta) {
  const auto zs = finite_branch_values(theta);
  std::array<CurvePoint, 6> out;
  for (int i = 0; i < 5; ++i) out[i] = CurvePoint{zs[i], cplx(0.0, 0.0)};
  out[5] = CurvePoint::infinity();
  return out;
}

CurvePoint base_point(const ThetaParam& theta) {
  return CurvePoint{cplx(1.0, 0.0),
                    cplx(std::sqrt(2.0 + 2.0 * theta.cos2t()), 0.0)};
}

// ---------------------------------------------------------------------------

Segment Segment::line(cplx a, cplx b) {
  Segment s;
  s.kind_ = Kind::Line;
  s.a_ = a;
  s.b_ = b;
  return s;
}

Segment Segment::arc(cplx center, double radius, double phi0, double phi1) {
  Segment s;
  s.kind_ = Kind::Arc;
  s.a_ = center;
  s.radius_ = radius;
  s.phi0_ = phi0;
  s.phi1_ = phi1;
  return s;
}

cplx Segment::at(double s) const {
  if (kind_ == Kind::Line) return a_ + s * (b_ - a_);
  return a_ + std::polar(radius_, phi0_ + s * (phi1_ - phi0_));
}

cplx Segment::derivative(double s) const {
  if (kind_ == Kind::Line) return b_ - a_;
  const double dphi = phi1_ - phi0_;
  return cplx(0.0, dphi) * std::polar(radius_, phi0_ + s * dphi);
}

Segment Segment::reversed() const {
  Segment s = *this;
  if (kind_ == Kind::Line) {
    std::swap(s.a_, s.b_);
  } else {
    std::swap(s.phi0_, s.phi1_);
  }
  return s;
}

Segment Segment::scaled(cplx scale) const {
  Segment s = *this;
  if (kind_ == Kind::Line) {
    s.a_ *= scale;
    s.b_ *= scale;
  } else {
    const double rot = std::arg(scale);
    s.a_ *= scale;
    s.radius_ *= std::abs(scale);
    s.phi0_ += rot;
    s.phi1_ += rot;
  }
  return s;
}

Path& Path::append(const Path& other) {
  segments.insert(segments.end(), other.segments.begin(), other.segments.end());
  return *this;
}

Path Path::reversed() const {
  Path p;
  for (auto it = segments.rbegin(); it != segments.rend(); ++it)
    p.segments.push_back(it->reversed());
  return p;
}

Path Path::scaled(cplx scale) const {
  Path p;
  for (const auto& s : segments) p.segments.push_back(s.scaled(scale));
  return p;
}

Path route(const ThetaParam& theta, cplx from, cplx to, double radius) {
  const auto branch = finite_branch_values(theta);
  for (const cplx e : branch) {
    if (std::abs(from - e) < radius || std::abs(to - e) < radius)
      throw GeometryError("route endpoint lies inside a branch-point detour");
  }
  Path path;
  const cplx dir = to - from;
  const double len = std::abs(dir);
  if (len == 0.0) return path;

  struct Detour {
    double s_in, s_out;
    cplx center;
  };
  std::vector<Detour> detours;
  for (const cplx e : branch) {
    const double s_star = std::real((e - from) * std::conj(dir)) / (len * len);
    const cplx foot = from + s_star * dir;
    const double d = std::abs(e - foot);
    if (d >= radius || s_star <= 0.0 || s_star >= 1.0) continue;
    const double half = std::sqrt(radius * radius - d * d) / len;
    detours.push_back({s_star - half, s_star + half, e});
  }
  std::sort(detours.begin(), detours.end(),
            [](const Detour& a, const Detour& b) { return a.s_in < b.s_in; });
  for (std::size_t i = 1; i < detours.size(); ++i) {
    if (detours[i].s_in <= detours[i - 1].s_out)
      throw GeometryError("branch-point detours overlap; route ambiguous");
  }

  cplx cursor = from;
  for (const auto& d : detours) {
    const cplx p_in = from + d.s_in * dir;
    const cplx p_out = from + d.s_out * dir;
    path.segments.push_back(Segment::line(cursor, p_in));
    const double phi_in = std::arg(p_in - d.center);
    double phi_out = std::arg(p_out - d.center);
    while (phi_out <= phi_in) phi_out += 2.0 * kPi;
    path.segments.push_back(Segment::arc(d.center, radius, phi_in, phi_out));
    cursor = p_out;
  }
  path.segments.push_back(Segment::line(cursor, to));
  return path;
}

Path circle(cplx center, double radius, int turns) {
  Path p;
  p.segments.push_back(
      Segment::arc(center, radius, 0.0, 2.0 * kPi * static_cast<double>(turns)));
  return p;
}

// ---------------------------------------------------------------------------

namespace {

cplx to_chart(cplx w, cplx z) {
  return std::abs(z) > kChartRadius ? w / (z * z * z) : w;
}

cplx from_chart(cplx v, cplx z) {
  return std::abs(z) > kChartRadius ? v * (z * z * z) : v;
}

// Root of P(z) aligned with `reference` (a chart-local value). Sets
// `ambiguous` when the two candidates are closer to each other than the
// chosen one is to the reference.
cplx aligned_root(const ThetaParam& theta, cplx z, cplx reference,
                  bool* ambiguous) {
  const cplx r = to_chart(std::sqrt(theta.poly(z)), z);
  const cplx pick = std::real(std::conj(reference) * r) >= 0.0 ? r : -r;
  if (ambiguous) *ambiguous = 2.0 * std::abs(pick) < std::abs(pick - reference);
  return pick;
}

}  // namespace

CurvePoint LiftedPath::end() const {
  if (path_.empty()) return start_;
  const auto& last = traces_.back();
  const cplx z = path_.segments.back().end();
  return CurvePoint{z, from_chart(last.back(), z)};
}

cplx LiftedPath::w_at(std::size_t seg, double s) const {
  const auto& trace = traces_.at(seg);
  const int n = static_cast<int>(trace.size()) - 1;
  const int k = std::clamp(static_cast<int>(std::lround(s * n)), 0, n);
  const cplx z = path_.segments[seg].at(s);
  return from_chart(aligned_root(theta_, z, trace[k], nullptr), z);
}

LiftedPath continue_sheet(const ThetaParam& theta, const Path& path,
                          const CurvePoint& start, int steps) {
  if (start.at_infinity)
    throw GeometryError("continuation cannot start at the point at infinity");
  if (!path.empty() && std::abs(path.segments.front().start() - start.z) >
                           1e-12 * (1.0 + std::abs(start.z)))
    throw GeometryError("start point does not lie over the path origin");
  if (curve_residual(theta, start) > kCurveEps)
    throw GeometryError("start point does not satisfy the curve equation");

  for (int n = std::max(steps, 1); n <= kMaxSteps; n *= 2) {
    LiftedPath lift;
    lift.theta_ = theta;
    lift.path_ = path;
    lift.start_ = start;
    lift.steps_ = n;
    bool ok = true;
    cplx prev_w = start.w;
    cplx prev_z = start.z;
    for (const auto& seg : path.segments) {
      std::vector<cplx> trace(n + 1);
      trace[0] = to_chart(prev_w, seg.start());
      for (int k = 1; k <= n && ok; ++k) {
        const cplx z = seg.at(static_cast<double>(k) / n);
        const cplx reference = to_chart(from_chart(trace[k - 1], prev_z), z);
        bool ambiguous = false;
        trace[k] = aligned_root(theta, z, reference, &ambiguous);
        if (ambiguous) ok = false;
        prev_z = z;
      }
      if (!ok) break;
      prev_z = seg.end();
      prev_w = from_chart(trace[n], prev_z);
      lift.traces_.push_back(std::move(trace));
    }
    if (ok) return lift;
  }
  throw GeometryError(
      "continuation stayed ambiguous at the maximum step count; the path "
      "passes through or too close to a branch point");
}

// ---------------------------------------------------------------------------

std::string_view symmetry_name(Symmetry g) {
  switch (g) {
    case Symmetry::J: return "j";
    case Symmetry::S1: return "s1";
    case Symmetry::S2: return "s2";
    case Symmetry::S3: return "s3";
    case Symmetry::Phi: return "phi";
    case Symmetry::Psi: return "psi";
  }
  return "?";
}

CurvePoint apply_symmetry(Symmetry g, const CurvePoint& p) {
  const cplx i(0.0, 1.0);
  const bool swaps_infinity = g == Symmetry::S3 || g == Symmetry::Psi;
  if (p.at_infinity)
    return swaps_infinity ? CurvePoint{cplx(0.0), cplx(0.0)} : p;
  if (swaps_infinity && p.z == cplx(0.0)) return CurvePoint::infinity();

  const cplx z = p.z, w = p.w;
  switch (g) {
    case Symmetry::J: return {z, -w};
    case Symmetry::S1: return {std::conj(z), std::conj(w)};
    case Symmetry::S2: return {-std::conj(z), i * std::conj(w)};
    case Symmetry::S3: {
      const cplx zb = std::conj(z);
      return {1.0 / zb, std::conj(w) / (zb * zb * zb)};
    }
    case Symmetry::Phi: return {-z, i * w};
    case Symmetry::Psi: return {1.0 / z, w / (z * z * z)};
  }
  return p;
}

// ---------------------------------------------------------------------------

std::string_view cycle_name(CycleKind k) {
  switch (k) {
    case CycleKind::C4Loop: return "C4loop";
    case CycleKind::PhiC4Loop: return "PhiC4loop";
    case CycleKind::C5Loop: return "C5loop";
    case CycleKind::PhiC5Loop: return "PhiC5loop";
  }
  return "?";
}

Cycle build_cycle(const ThetaParam& theta, CycleKind kind) {
  constexpr double kInner = 1.0 / 3.0;
  constexpr double kOuter = 3.0;
  const double t = theta.theta();
  const double delta = 0.5 * std::min({t, kHalfPi - t, 0.5});
  const bool c5 = kind == CycleKind::C5Loop || kind == CycleKind::PhiC5Loop;
  const double alpha = c5 ? kHalfPi : 0.0;

  Path loop;
  loop.segments.push_back(Segment::line(std::polar(kInner, alpha - delta),
                                        std::polar(kOuter, alpha - delta)));
  loop.segments.push_back(
      Segment::arc(0.0, kOuter, alpha - delta, alpha + delta - 2.0 * kPi));
  loop.segments.push_back(Segment::line(std::polar(kOuter, alpha + delta),
                                        std::polar(kInner, alpha + delta)));
  loop.segments.push_back(
      Segment::arc(0.0, kInner, alpha + delta, alpha - delta + 2.0 * kPi));

  // Sheet of the slit parametrization at parameter t = kInner.
  const double c = c5 ? -theta.cos2t() : theta.cos2t();
  const double tt = kInner;
  const double mag = std::sqrt(tt * (tt * tt * tt * tt + 2.0 * c * tt * tt + 1.0));
  const cplx anchor = c5 ? std::polar(mag, kPi / 4.0) : cplx(mag, 0.0);

  const cplx z0 = loop.segments.front().start();
  const auto roots = fiber(z0, theta);
  const cplx w0 =
      std::real(std::conj(anchor) * roots[0]) >= 0.0 ? roots[0] : roots[1];
  CurvePoint start{z0, w0};

  if (kind == CycleKind::PhiC4Loop || kind == CycleKind::PhiC5Loop) {
    loop = loop.scaled(-1.0);
    start = apply_symmetry(Symmetry::Phi, start);
  }
  LiftedPath lift = continue_sheet(theta, loop, start);
  const CurvePoint end = lift.end();
  if (std::abs(end.w - start.w) > 1e-8 * (1.0 + std::abs(start.w)))
    throw ConsistencyError("homology cycle failed to close on the curve");
  return Cycle{kind, std::move(lift)};
}

}  // namespace bolza

#include "bolza/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <tuple>
#include <unordered_map>

namespace bolza {

namespace {

double rho(cplx z) {
  const double d = 1.0 + std::norm(z);
  return 4.0 / (d * d);
}

double tri_area(cplx a, cplx b, cplx c) {
  return 0.5 * std::abs(((b - a) * std::conj(c - a)).imag());
}

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

bool on_circle(int arc) { return arc >= 2; }

// Newest-vertex bisection with conforming closure.
struct Refiner {
  std::vector<cplx> V;
  std::vector<std::array<int, 3>> T;
  std::unordered_map<std::uint64_t, int> mid;
  std::unordered_map<std::uint64_t, int> bnd;

  int midpoint(int a, int b) {
    const auto key = edge_key(a, b);
    if (auto it = mid.find(key); it != mid.end()) return it->second;
    cplx m = 0.5 * (V[a] + V[b]);
    const int idx = static_cast<int>(V.size());
    if (auto it = bnd.find(key); it != bnd.end()) {
      const int arc = it->second;
      if (on_circle(arc)) m /= std::abs(m);
      bnd.erase(it);
      bnd[edge_key(a, idx)] = arc;
      bnd[edge_key(idx, b)] = arc;
    }
    V.push_back(m);
    mid[key] = idx;
    return idx;
  }

  bool hanging(const std::array<int, 3>& t) const {
    return mid.count(edge_key(t[0], t[1])) || mid.count(edge_key(t[1], t[2])) ||
           mid.count(edge_key(t[2], t[0]));
  }

  void refine(std::vector<char> marked) {
    for (;;) {
      bool any = false;
      std::vector<std::array<int, 3>> out;
      out.reserve(T.size() * 2);
      for (std::size_t i = 0; i < T.size(); ++i) {
        const auto& t = T[i];
        if (!marked[i] && !hanging(t)) {
          out.push_back(t);
          continue;
        }
        any = true;
        const int m = midpoint(t[1], t[2]);
        out.push_back({m, t[0], t[1]});
        out.push_back({m, t[2], t[0]});
      }
      T = std::move(out);
      marked.assign(T.size(), 0);
      if (!any) break;
    }
  }

  static Refiner from(const Mesh& mesh) {
    Refiner r;
    r.V = mesh.vertices;
    r.T = mesh.triangles;
    for (const auto& e : mesh.boundary) r.bnd[edge_key(e.a, e.b)] = e.arc;
    return r;
  }

  Mesh to_mesh(double theta, double h) const {
    Mesh m;
    m.theta = theta;
    m.h = h;
    m.vertices = V;
    m.triangles = T;
    for (const auto& [key, arc] : bnd) {
      BoundaryEdge e;
      e.a = static_cast<int>(key >> 32);
      e.b = static_cast<int>(key & 0xffffffffu);
      e.arc = arc;
      m.boundary.push_back(e);
    }
    std::sort(m.boundary.begin(), m.boundary.end(),
              [](const BoundaryEdge& x, const BoundaryEdge& y) {
                return std::tie(x.arc, x.a, x.b) < std::tie(y.arc, y.a, y.b);
              });
    return m;
  }
};

double diameter(const std::vector<cplx>& V, const std::array<int, 3>& t) {
  return std::max({std::abs(V[t[0]] - V[t[1]]), std::abs(V[t[1]] - V[t[2]]),
                   std::abs(V[t[2]] - V[t[0]])});
}

// Put the vertex opposite the longest edge first.
std::array<int, 3> longest_edge_first(const std::vector<cplx>& V, int a, int b,
                                      int c) {
  const double lab = std::abs(V[a] - V[b]);
  const double lbc = std::abs(V[b] - V[c]);
  const double lca = std::abs(V[c] - V[a]);
  if (lbc >= lab && lbc >= lca) return {a, b, c};
  if (lca >= lab) return {b, c, a};
  return {c, a, b};
}

constexpr double kGradingRadius = 0.08;

double local_size(const std::vector<cplx>& V, const std::array<int, 3>& t,
                  const std::vector<cplx>& corners, double h) {
  const cplx cen = (V[t[0]] + V[t[1]] + V[t[2]]) / 3.0;
  double d = std::numeric_limits<double>::infinity();
  for (const cplx& p : corners) {
    d = std::min(d, std::abs(cen - p));
    for (int v : t) d = std::min(d, std::abs(V[v] - p));
  }
  if (d >= kGradingRadius) return h;
  int shells = kGradingDepth;
  if (d > 0.0)
    shells = std::min(kGradingDepth,
                      static_cast<int>(std::ceil(std::log(d / kGradingRadius) /
                                                 std::log(kGradingRatio))));
  return h * std::pow(kGradingRatio, std::max(shells, 0));
}

int arc_of_angle(double mid_angle, double a1, double a2) {
  return (mid_angle > a1 && mid_angle < a2) ? 3 : 2;
}

double warp_angle(double phi, double a1, double a2, double b1, double b2) {
  if (phi <= a1) return phi * (b1 / a1);
  if (phi <= a2) return b1 + (phi - a1) * ((b2 - b1) / (a2 - a1));
  return b2 + (phi - a2) * ((kPi - b2) / (kPi - a2));
}

struct Assembled {
  Eigen::SparseMatrix<double> K, M;
  std::vector<int> free_of;  // vertex -> dof or -1
  int n = 0;
};

Assembled assemble(const Mesh& mesh, const SectorSpec& sector) {
  const std::size_t nv = mesh.vertices.size();
  std::vector<char> dirichlet(nv, 0);
  for (const auto& e : mesh.boundary)
    if (sector.arcs[e.arc] == BC::Dirichlet) dirichlet[e.a] = dirichlet[e.b] = 1;
  Assembled out;
  out.free_of.assign(nv, -1);
  for (std::size_t v = 0; v < nv; ++v)
    if (!dirichlet[v]) out.free_of[v] = out.n++;

  std::vector<Eigen::Triplet<double>> kt, mt;
  kt.reserve(mesh.triangles.size() * 9);
  mt.reserve(mesh.triangles.size() * 9);
  for (const auto& t : mesh.triangles) {
    const cplx p[3] = {mesh.vertices[t[0]], mesh.vertices[t[1]],
                       mesh.vertices[t[2]]};
    const double area = tri_area(p[0], p[1], p[2]);
    // gradient of the hat function at vertex i is i * (p_{i+2} - p_{i+1})
    // rotated, scaled by 1 / (2 area); only dot products are needed.
    cplx e[3];
    for (int i = 0; i < 3; ++i) e[i] = p[(i + 2) % 3] - p[(i + 1) % 3];
    const cplx m[3] = {0.5 * (p[0] + p[1]), 0.5 * (p[1] + p[2]),
                       0.5 * (p[2] + p[0])};
    const double r[3] = {rho(m[0]), rho(m[1]), rho(m[2])};
    // phi_i at the edge midpoints m0 (01), m1 (12), m2 (20)
    static constexpr double phi[3][3] = {
        {0.5, 0.0, 0.5}, {0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}};
    for (int i = 0; i < 3; ++i) {
      const int fi = out.free_of[t[i]];
      if (fi < 0) continue;
      for (int j = 0; j < 3; ++j) {
        const int fj = out.free_of[t[j]];
        if (fj < 0) continue;
        const double kij = (e[i].real() * e[j].real() + e[i].imag() * e[j].imag()) /
                           (4.0 * area);
        double mij = 0.0;
        for (int q = 0; q < 3; ++q) mij += r[q] * phi[i][q] * phi[j][q];
        mij *= area / 3.0;
        kt.emplace_back(fi, fj, kij);
        mt.emplace_back(fi, fj, mij);
      }
    }
  }
  out.K.resize(out.n, out.n);
  out.M.resize(out.n, out.n);
  out.K.setFromTriplets(kt.begin(), kt.end());
  out.M.setFromTriplets(mt.begin(), mt.end());
  return out;
}

double inf_norm(const Eigen::SparseMatrix<double>& A) {
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(A.rows());
  for (int k = 0; k < A.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it)
      rows[it.row()] += std::abs(it.value());
  return rows.size() ? rows.maxCoeff() : 0.0;
}

double pair_residual(const Eigen::SparseMatrix<double>& K,
                     const Eigen::SparseMatrix<double>& M, double normK,
                     double normM, double lambda, const Eigen::VectorXd& x) {
  const Eigen::VectorXd r = K * x - lambda * (M * x);
  return r.norm() / ((normK + std::abs(lambda) * normM) * x.norm());
}

}  // namespace

// ---------------------------------------------------------------------------

std::string SectorSpec::label() const {
  auto c = [](int s) { return s > 0 ? '+' : '-'; };
  return std::string("(") + c(s1) + "," + c(j) + "," + c(s3) + ")";
}

std::string SectorSpec::bc_string() const {
  std::string s;
  for (BC b : arcs) s += (b == BC::Neumann ? 'N' : 'D');
  return s;
}

SectorSpec make_sector(int s1, int j, int s3) {
  if (std::abs(s1) != 1 || std::abs(j) != 1 || std::abs(s3) != 1)
    throw DomainError("sector characters must be +1 or -1");
  SectorSpec s;
  s.s1 = s1;
  s.j = j;
  s.s3 = s3;
  auto bc = [](int sign) { return sign > 0 ? BC::Neumann : BC::Dirichlet; };
  s.arcs = {bc(s1), bc(j * s1), bc(s3), bc(j * s3)};
  return s;
}

std::array<SectorSpec, 8> sector_table() {
  std::array<SectorSpec, 8> out;
  for (int i = 0; i < 8; ++i)
    out[i] = make_sector((i & 4) ? -1 : 1, (i & 2) ? -1 : 1, (i & 1) ? -1 : 1);
  return out;
}

int sector_index(const SectorSpec& s) {
  return (s.s1 < 0 ? 4 : 0) + (s.j < 0 ? 2 : 0) + (s.s3 < 0 ? 1 : 0);
}

// ---------------------------------------------------------------------------

double Mesh::flat_area() const {
  double a = 0.0;
  for (const auto& t : triangles)
    a += tri_area(vertices[t[0]], vertices[t[1]], vertices[t[2]]);
  return a;
}

double Mesh::weighted_area() const {
  double a = 0.0;
  for (const auto& t : triangles) {
    const cplx p0 = vertices[t[0]], p1 = vertices[t[1]], p2 = vertices[t[2]];
    a += tri_area(p0, p1, p2) / 3.0 *
         (rho(0.5 * (p0 + p1)) + rho(0.5 * (p1 + p2)) + rho(0.5 * (p2 + p0)));
  }
  return a;
}

double Mesh::max_diameter() const {
  double d = 0.0;
  for (const auto& t : triangles) d = std::max(d, diameter(vertices, t));
  return d;
}

int Mesh::arc_edge_count(int arc) const {
  return static_cast<int>(std::count_if(
      boundary.begin(), boundary.end(),
      [arc](const BoundaryEdge& e) { return e.arc == arc; }));
}

Mesh mesh_fundamental_domain(double theta, double h, bool grading) {
  const ThetaParam tp(theta);
  const double a1 = kHalfPi - theta, a2 = kHalfPi + theta;
  if (!(h > 0.0) || h > 0.25) throw DomainError("mesh size out of range");

  // Coarse mesh: fan around 0, ring at radius 1/2, boundary on the circle.
  std::vector<double> angles{0.0};
  for (auto [lo, hi] : {std::pair{0.0, a1}, std::pair{a1, a2}, std::pair{a2, kPi}}) {
    const int pieces = std::max(1, static_cast<int>(std::ceil((hi - lo) / (kPi / 8))));
    for (int i = 1; i <= pieces; ++i) angles.push_back(lo + (hi - lo) * i / pieces);
  }
  angles.back() = kPi;
  const int na = static_cast<int>(angles.size());
  Refiner r;
  r.V.push_back(0.0);
  for (double a : angles) r.V.push_back(0.5 * std::polar(1.0, a));
  for (double a : angles) r.V.push_back(std::polar(1.0, a));
  r.V[1] = 0.5;
  r.V[na] = -0.5;
  r.V[na + 1] = 1.0;
  r.V[2 * na] = -1.0;
  auto ring = [](int i) { return 1 + i; };
  auto circ = [na](int i) { return 1 + na + i; };
  for (int i = 0; i + 1 < na; ++i) {
    r.T.push_back(longest_edge_first(r.V, 0, ring(i), ring(i + 1)));
    r.T.push_back(longest_edge_first(r.V, ring(i), circ(i + 1), circ(i)));
    r.T.push_back(longest_edge_first(r.V, ring(i), ring(i + 1), circ(i + 1)));
    const double mid_angle = 0.5 * (angles[i] + angles[i + 1]);
    r.bnd[edge_key(circ(i), circ(i + 1))] = arc_of_angle(mid_angle, a1, a2);
  }
  r.bnd[edge_key(0, ring(0))] = 0;
  r.bnd[edge_key(ring(0), circ(0))] = 0;
  r.bnd[edge_key(0, ring(na - 1))] = 1;
  r.bnd[edge_key(ring(na - 1), circ(na - 1))] = 1;

  const std::vector<cplx> corners{0.0, 1.0, -1.0, std::polar(1.0, a1),
                                  std::polar(1.0, a2)};
  for (;;) {
    std::vector<char> marked(r.T.size(), 0);
    bool any = false;
    for (std::size_t i = 0; i < r.T.size(); ++i) {
      const double target = grading ? local_size(r.V, r.T[i], corners, h) : h;
      if (diameter(r.V, r.T[i]) > target) marked[i] = any = 1;
    }
    if (!any) break;
    r.refine(std::move(marked));
  }
  Mesh out = r.to_mesh(theta, h);
  if (out.arc_edge_count(3) < 8)
    throw DomainError("mesh size too large to resolve the middle arc");
  return out;
}

Mesh bisect_all(const Mesh& mesh, int rounds) {
  Refiner r = Refiner::from(mesh);
  for (int k = 0; k < rounds; ++k) r.refine(std::vector<char>(r.T.size(), 1));
  return r.to_mesh(mesh.theta, mesh.h * std::pow(0.5, 0.5 * rounds));
}

Mesh warp_to_theta(const Mesh& mesh, double theta) {
  const ThetaParam tp(theta);
  const double a1 = kHalfPi - mesh.theta, a2 = kHalfPi + mesh.theta;
  const double b1 = kHalfPi - theta, b2 = kHalfPi + theta;
  Mesh out = mesh;
  out.theta = theta;
  for (cplx& v : out.vertices) {
    const double r = std::abs(v);
    if (r == 0.0) continue;
    const double phi = std::clamp(std::arg(v), 0.0, kPi);
    v = std::polar(r, warp_angle(phi, a1, a2, b1, b2));
    if (phi == 0.0) v = r;
    if (phi == kPi) v = -r;
  }
  return out;
}

// ---------------------------------------------------------------------------

LanczosResult lanczos_smallest(const Eigen::SparseMatrix<double>& K,
                               const Eigen::SparseMatrix<double>& M, int k,
                               double sigma, double tol) {
  const int n = static_cast<int>(K.rows());
  if (k <= 0 || k > n) throw DomainError("requested eigenvalue count out of range");
  Eigen::SparseMatrix<double> A = K - sigma * M;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(A);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("factorization of the shifted operator failed", 0.0);
  const double normK = inf_norm(K), normM = inf_norm(M);

  int m = std::min(n, std::max(2 * k + 20, 40));
  double worst = std::numeric_limits<double>::infinity();
  for (;;) {
    Eigen::MatrixXd Q(n, m), MQ(n, m);
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m), beta = Eigen::VectorXd::Zero(m);
    std::mt19937 gen(12345);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Eigen::VectorXd q(n);
    for (int i = 0; i < n; ++i) q[i] = uni(gen);
    q /= std::sqrt(q.dot(M * q));
    int steps = 0;
    for (int j = 0; j < m; ++j) {
      Q.col(j) = q;
      MQ.col(j) = M * q;
      Eigen::VectorXd w = solver.solve(MQ.col(j));
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXd c = MQ.leftCols(j + 1).transpose() * w;
        if (pass == 0) alpha[j] = c[j];
        else alpha[j] += c[j];
        w -= Q.leftCols(j + 1) * c;
      }
      steps = j + 1;
      const double b = std::sqrt(std::max(0.0, w.dot(M * w)));
      beta[j] = b;
      if (b <= 1e-14 * std::abs(alpha[j])) break;
      q = w / b;
    }
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(steps, steps);
    for (int j = 0; j < steps; ++j) {
      T(j, j) = alpha[j];
      if (j + 1 < steps) T(j, j + 1) = T(j + 1, j) = beta[j];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    // largest mu = 1 / (lambda - sigma) first
    const int have = std::min(k, steps);
    LanczosResult res;
    res.steps = steps;
    res.vectors.resize(n, have);
    worst = 0.0;
    for (int i = 0; i < have; ++i) {
      const int col = steps - 1 - i;
      const double mu = es.eigenvalues()[col];
      const double lambda = sigma + 1.0 / mu;
      Eigen::VectorXd x = Q.leftCols(steps) * es.eigenvectors().col(col);
      x /= std::sqrt(x.dot(M * x));
      worst = std::max(worst, pair_residual(K, M, normK, normM, lambda, x));
      res.values.push_back(lambda);
      res.vectors.col(i) = x;
    }
    res.max_residual = worst;
    if (have == k && worst <= tol) return res;
    if (m == n || steps < m)
      throw ConvergenceError("Lanczos did not converge", worst);
    m = std::min(n, 2 * m);
  }
}

SectorEigen solve_sector(const Mesh& mesh, const SectorSpec& sector, int k,
                         bool want_vectors) {
  const Assembled as = assemble(mesh, sector);
  if (as.n == 0) throw DomainError("sector has no free degrees of freedom");
  k = std::min(k, as.n);
  SectorEigen out;
  out.sector = sector;
  out.dofs = as.n;
  Eigen::MatrixXd vecs;
  if (as.n < kDenseLimit) {
    out.dense = true;
    const Eigen::MatrixXd Kd(as.K), Md(as.M);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Kd, Md);
    if (es.info() != Eigen::Success)
      throw ConvergenceError("dense generalized eigensolver failed", 0.0);
    const double normK = inf_norm(as.K), normM = inf_norm(as.M);
    vecs = es.eigenvectors().leftCols(k);
    for (int i = 0; i < k; ++i) {
      const double lambda = es.eigenvalues()[i];
      out.values.push_back(lambda);
      out.max_residual = std::max(
          out.max_residual,
          pair_residual(as.K, as.M, normK, normM, lambda, vecs.col(i)));
    }
  } else {
    LanczosResult lr = lanczos_smallest(as.K, as.M, k);
    out.values = lr.values;
    out.max_residual = lr.max_residual;
    vecs = std::move(lr.vectors);
  }
  // Ritz values come out ascending already; keep the vectors aligned.
  if (want_vectors) {
    for (int i = 0; i < k; ++i) {
      Eigen::VectorXd full = Eigen::VectorXd::Zero(mesh.vertices.size());
      for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
        if (as.free_of[v] >= 0) full[v] = vecs(as.free_of[v], i);
      out.vectors.push_back(std::move(full));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

double cluster_tolerance(double extrapolation_error) {
  return std::max(kClusterFloor, 3.0 * extrapolation_error);
}

double SpectrumResult::smallest_positive(double floor) const {
  for (const auto& e : merged)
    if (e.value > floor) return e.value;
  return std::numeric_limits<double>::quiet_NaN();
}

namespace {

void extrapolate(const std::vector<double>& coarse,
                 const std::vector<double>& fine, bool richardson,
                 std::vector<double>& values, std::vector<double>& errors) {
  values.clear();
  errors.clear();
  for (std::size_t b = 0; b < coarse.size(); ++b) {
    if (richardson) {
      const double v = (4.0 * fine[b] - coarse[b]) / 3.0;
      values.push_back(v);
      errors.push_back(std::abs(v - fine[b]));
    } else {
      values.push_back(coarse[b]);
      errors.push_back(0.0);
    }
  }
}

std::pair<int, int> count_cluster(const std::vector<TaggedEigenvalue>& list) {
  int ind = 0, nul = 0;
  for (const auto& e : list) {
    if (e.value < 2.0 - e.tol) ++ind;
    else if (std::abs(e.value - 2.0) <= e.tol) ++nul;
  }
  return {ind, nul};
}

}  // namespace

SpectrumResult spectrum_on(const Mesh& mesh, int k, bool richardson) {
  SpectrumResult out;
  out.theta = mesh.theta;
  out.h = mesh.h;
  out.k = k;
  out.richardson = richardson;
  out.weighted_area = mesh.weighted_area();
  out.vertices_coarse = static_cast<int>(mesh.vertices.size());
  Mesh fine_mesh;
  if (richardson) {
    fine_mesh = bisect_all(mesh, 2);
    out.vertices_fine = static_cast<int>(fine_mesh.vertices.size());
  }
  const auto table = sector_table();
  for (int s = 0; s < 8; ++s) {
    out.coarse[s] = solve_sector(mesh, table[s], k).values;
    if (richardson) out.fine[s] = solve_sector(fine_mesh, table[s], k).values;
    extrapolate(out.coarse[s], out.fine[s], richardson, out.values[s],
                out.errors[s]);
    for (std::size_t b = 0; b < out.values[s].size(); ++b) {
      TaggedEigenvalue e;
      e.value = out.values[s][b];
      e.error = out.errors[s][b];
      e.sector = s;
      e.branch = static_cast<int>(b);
      e.tol = cluster_tolerance(e.error);
      out.merged.push_back(e);
    }
    if (!out.values[s].empty() && out.values[s].back() <= 2.0 + kClusterFloor)
      throw ConsistencyError("too few eigenvalues per sector to resolve level 2");
  }
  std::sort(out.merged.begin(), out.merged.end(),
            [](const auto& a, const auto& b) { return a.value < b.value; });
  std::tie(out.ind, out.nul) = count_cluster(out.merged);
  return out;
}

SpectrumResult spectrum(double theta, int k, double h, bool richardson) {
  return spectrum_on(mesh_fundamental_domain(theta, h), k, richardson);
}

// ---------------------------------------------------------------------------

bool SweepResult::nondecreasing(int sector, int branch, double slack) const {
  const auto it = std::find(sectors.begin(), sectors.end(), sector);
  if (it == sectors.end()) throw DomainError("sector not part of the sweep");
  const auto& v = values[it - sectors.begin()];
  for (std::size_t t = 1; t < v.size(); ++t)
    if (v[t][branch] < v[t - 1][branch] - slack) return false;
  return true;
}

std::pair<int, int> SweepResult::counts(int t) const {
  std::vector<TaggedEigenvalue> list;
  for (std::size_t s = 0; s < sectors.size(); ++s)
    for (std::size_t b = 0; b < values[s][t].size(); ++b) {
      TaggedEigenvalue e;
      e.value = values[s][t][b];
      e.error = errors[s][t][b];
      e.tol = cluster_tolerance(e.error);
      list.push_back(e);
    }
  return count_cluster(list);
}

SweepResult sweep(double theta_min, double theta_max, int steps,
                  const std::vector<int>& sectors, int k, double h,
                  bool richardson) {
  if (steps < 2 || !(theta_min < theta_max))
    throw DomainError("sweep needs at least two samples on an increasing range");
  if (sectors.empty()) throw DomainError("sweep needs at least one sector");
  for (int s : sectors)
    if (s < 0 || s > 7) throw DomainError("sector index out of range");
  const ThetaParam lo(theta_min), hi(theta_max);
  SweepResult out;
  out.sectors = sectors;
  out.h = h;
  out.k = k;
  const Mesh ref = mesh_fundamental_domain(0.5 * (theta_min + theta_max), h);
  const Mesh ref_fine = richardson ? bisect_all(ref, 2) : Mesh{};
  const auto table = sector_table();
  out.values.assign(sectors.size(), {});
  out.errors.assign(sectors.size(), {});
  for (int t = 0; t < steps; ++t) {
    const double theta = theta_min + (theta_max - theta_min) * t / (steps - 1);
    out.thetas.push_back(theta);
    const Mesh mc = warp_to_theta(ref, theta);
    const Mesh mf = richardson ? warp_to_theta(ref_fine, theta) : Mesh{};
    for (std::size_t s = 0; s < sectors.size(); ++s) {
      const auto coarse = solve_sector(mc, table[sectors[s]], k).values;
      const auto fine = richardson ? solve_sector(mf, table[sectors[s]], k).values
                                   : std::vector<double>{};
      std::vector<double> v, e;
      extrapolate(coarse, fine, richardson, v, e);
      out.values[s].push_back(std::move(v));
      out.errors[s].push_back(std::move(e));
    }
  }
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    const auto& v = out.values[s];
    for (std::size_t b = 0; b < v[0].size(); ++b)
      for (int t = 1; t < steps; ++t) {
        const double f0 = v[t - 1][b] - 2.0, f1 = v[t][b] - 2.0;
        if ((f0 < 0.0) == (f1 < 0.0)) continue;
        Crossing c;
        c.sector = sectors[s];
        c.branch = static_cast<int>(b);
        c.upward = f1 > f0;
        c.theta = out.thetas[t - 1] +
                  (out.thetas[t] - out.thetas[t - 1]) * f0 / (f0 - f1);
        out.crossings.push_back(c);
      }
  }
  return out;
}

}  // namespace bolza

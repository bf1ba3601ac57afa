#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "bolza/theta.hpp"

namespace bolza {

// ---------------------------------------------------------------------------
// Sectors: characters of H restricted to the fundamental domain, the upper
// half of the unit disk. Boundary arcs:
//   0: real segment (0, 1)       1: real segment (-1, 0)
//   2: unit-circle arcs with arg in (0, pi/2 - theta) or (pi/2 + theta, pi)
//   3: unit-circle arc with arg in (pi/2 - theta, pi/2 + theta)

enum class BC { Neumann, Dirichlet };

struct SectorSpec {
  int s1 = 1, j = 1, s3 = 1;  // character values, +-1
  std::array<BC, 4> arcs{};
  std::string label() const;     // e.g. "(+,-,+)"
  std::string bc_string() const;  // e.g. "NDND"
};

SectorSpec make_sector(int s1, int j, int s3);
std::array<SectorSpec, 8> sector_table();
inline SectorSpec v1_sector() { return make_sector(+1, -1, +1); }
inline SectorSpec v2_sector() { return make_sector(-1, -1, +1); }
// Index of a sector within sector_table().
int sector_index(const SectorSpec& s);

// ---------------------------------------------------------------------------

struct BoundaryEdge {
  int a = 0, b = 0;
  int arc = 0;
};

struct Mesh {
  double theta = 0.0;
  double h = 0.0;
  std::vector<cplx> vertices;
  // (newest vertex, a, b); the refinement edge is a-b.
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary;

  double flat_area() const;
  double weighted_area() const;  // integral of 4 / (1 + |z|^2)^2
  double max_diameter() const;
  int arc_edge_count(int arc) const;
};

inline constexpr double kDefaultMeshH = 0.02;
inline constexpr double kGradingRatio = 0.7;
inline constexpr int kGradingDepth = 8;

// Graded triangulation of the half disk. The points 0, +-1, e^{i(pi/2 -+
// theta)} are vertices; element size shrinks by kGradingRatio per shell
// towards them, at most kGradingDepth times. Throws DomainError when the
// arc (pi/2 - theta, pi/2 + theta) ends up with fewer than 8 edges.
Mesh mesh_fundamental_domain(double theta, double h = kDefaultMeshH,
                             bool grading = true);

// Every triangle bisected `rounds` times (plus conforming closure).
Mesh bisect_all(const Mesh& mesh, int rounds);

// The mesh moved to another theta by a piecewise-linear map of the polar
// angle that sends the arc split points of mesh.theta to those of `theta`.
// Topology is unchanged, so eigenvalues vary smoothly with theta.
Mesh warp_to_theta(const Mesh& mesh, double theta);

// ---------------------------------------------------------------------------

struct SectorEigen {
  SectorSpec sector;
  std::vector<double> values;          // ascending
  std::vector<Eigen::VectorXd> vectors;  // nodal values, if requested
  int dofs = 0;
  double max_residual = 0.0;  // relative residual of the returned pairs
  bool dense = false;
};

inline constexpr int kDenseLimit = 3000;
inline constexpr double kShift = -0.1;

SectorEigen solve_sector(const Mesh& mesh, const SectorSpec& sector, int k,
                         bool want_vectors = false);

// Generalized problem K x = lambda M x, k smallest eigenvalues, by shift-
// invert Lanczos with full reorthogonalization in the M inner product.
// Throws ConvergenceError when the Ritz residuals stay above `tol`.
struct LanczosResult {
  std::vector<double> values;
  Eigen::MatrixXd vectors;
  double max_residual = 0.0;
  int steps = 0;
};
LanczosResult lanczos_smallest(const Eigen::SparseMatrix<double>& K,
                               const Eigen::SparseMatrix<double>& M, int k,
                               double sigma = kShift, double tol = 1e-9);

// ---------------------------------------------------------------------------

inline constexpr double kClusterFloor = 5e-3;
inline constexpr int kDefaultK = 8;

struct TaggedEigenvalue {
  double value = 0.0;
  double error = 0.0;  // extrapolation error estimate
  int sector = 0;      // index into sector_table()
  int branch = 0;      // position within its sector
  double tol = 0.0;    // cluster tolerance applied to it
};

struct SpectrumResult {
  double theta = 0.0;
  double h = 0.0;
  bool richardson = false;
  int k = 0;
  std::array<std::vector<double>, 8> coarse;   // mesh h
  std::array<std::vector<double>, 8> fine;     // mesh h/2 (if richardson)
  std::array<std::vector<double>, 8> values;   // reported per sector
  std::array<std::vector<double>, 8> errors;
  std::vector<TaggedEigenvalue> merged;        // ascending
  int ind = 0;
  int nul = 0;
  double weighted_area = 0.0;
  int vertices_coarse = 0;
  int vertices_fine = 0;

  // Smallest eigenvalue above `floor` in the merged list.
  double smallest_positive(double floor = 0.5) const;
};

// tol_cluster for one eigenvalue: max(5e-3, 3 * its extrapolation error).
double cluster_tolerance(double extrapolation_error);

// Spectrum of all eight sectors on `mesh` (and its double bisection when
// richardson), extrapolated as (4 lambda_{h/2} - lambda_h) / 3.
SpectrumResult spectrum_on(const Mesh& mesh, int k, bool richardson);
SpectrumResult spectrum(double theta, int k = kDefaultK,
                        double h = kDefaultMeshH, bool richardson = true);

// ---------------------------------------------------------------------------

struct Crossing {
  int sector = 0;
  int branch = 0;
  double theta = 0.0;   // inverse-interpolated crossing of level 2
  bool upward = true;
};

struct SweepResult {
  std::vector<double> thetas;
  std::vector<int> sectors;  // indices into sector_table()
  // values[s][t][b]: sector sectors[s], theta t, branch b (extrapolated)
  std::vector<std::vector<std::vector<double>>> values;
  std::vector<std::vector<std::vector<double>>> errors;
  std::vector<Crossing> crossings;
  double h = 0.0;
  int k = 0;

  // Branch b of sector index `sector` is nondecreasing up to `slack`.
  bool nondecreasing(int sector, int branch, double slack = 1e-4) const;
  // Ind / Nul of theta sample t (meaningful when all 8 sectors were swept).
  std::pair<int, int> counts(int t) const;
};

// Sweep on thetas linspace(theta_min, theta_max, steps); one reference mesh
// at the middle of the range, warped to every sample.
SweepResult sweep(double theta_min, double theta_max, int steps,
                  const std::vector<int>& sectors, int k = kDefaultK,
                  double h = kDefaultMeshH, bool richardson = true);

}  // namespace bolza

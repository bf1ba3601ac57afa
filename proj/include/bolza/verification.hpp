#pragma once

#include <string>
#include <vector>

#include "bolza/immersion.hpp"
#include "bolza/period_system.hpp"

namespace bolza {

struct ResidueRow {
  int slot = 0;   // position in kBasis
  int point = 0;  // index into ramification_points
  cplx value;
  bool stable = false;
};

// Period of z^power * form minus the period of its second-kind reduction.
struct ReductionRow {
  int slot = 0;
  int power = 0;
  CycleKind cycle = CycleKind::C4Loop;
  double abs_err = 0.0;
};

struct RelationRow {
  std::string name;
  CycleKind cycle = CycleKind::C4Loop;
  double abs_period = 0.0;
};

struct EigenRow {
  CurvePoint point;
  double u1 = 0.0, u2 = 0.0;
  double residual = 0.0;       // stencil h
  double residual_half = 0.0;  // stencil h / 2
  double noise = 0.0;
  bool trend = false;
};

struct OmegaVerification {
  double theta = 0.0;
  OmegaPair pair;
  // Re of the Weierstrass periods, [cycle][component]
  std::array<Vec3, 4> periods1{}, periods2{};
  double period_max = 0.0;
  SymmetryReport symmetry;
  std::vector<ResidueRow> residues;
  double residue_max = 0.0;
  std::vector<ReductionRow> reductions;
  double reduction_max = 0.0;
  std::vector<RelationRow> relations;
  double relation_max = 0.0;
  std::vector<EigenRow> eigen;
  double eigen_max = 0.0;
  bool trend_ok = true;
  double harmonic_residual = 0.0;
  ExtraCheck extra;
};

inline constexpr int kDefaultSamples = 20;
inline constexpr int kEigenSamples = 10;

// Everything the symmetry and eigen-equation checks need at a critical
// angle. Throws ConsistencyError (through omega_pair_at) off the critical
// angles.
OmegaVerification verify_omega(double theta, int samples = kDefaultSamples,
                               int eigen_samples = kEigenSamples,
                               unsigned seed = 2024);

}  // namespace bolza

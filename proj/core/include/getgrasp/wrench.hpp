#pragma once

#include <Eigen/Dense>
#include <vector>

#include "getgrasp/vec2.hpp"

namespace getgrasp {

enum class JawLabel { kWideA, kWideB, kNarrow };

// Point contact with friction: position, unit normal pointing into the
// object material, and the jaw that makes it.
struct ContactPoint2D {
  Vec2 position;
  Vec2 inward_normal;
  JawLabel jaw = JawLabel::kNarrow;
};

struct ContactPoint3D {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d inward_normal = Eigen::Vector3d::Zero();
  JawLabel jaw = JawLabel::kNarrow;
};

struct ContactSet2D {
  std::vector<ContactPoint2D> contacts;
  double mu = 0.75;  // Coulomb friction coefficient
  Vec2 com;          // object center of mass
  double rho = 1.0;  // torque normalization length
};

struct ContactSet3D {
  std::vector<ContactPoint3D> contacts;
  double mu = 0.75;
  Eigen::Vector3d com = Eigen::Vector3d::Zero();
  double rho = 1.0;
};

// Discretized contact wrenches. Planar wrenches are (fx, fy, tau/rho),
// spatial wrenches (f, (p - com) x f / rho), one per friction-cone edge and
// contact, at unit normal force.
struct WrenchSet {
  int dim = 3;
  std::vector<Eigen::VectorXd> wrenches;
};

struct GraspQuality {
  bool force_closure = false;
  double epsilon = 0.0;
  bool exact = true;  // false when facet enumeration fell back to sampling
};

// Interiority margin guarding hull/LP degeneracy near the GWS boundary.
inline constexpr double kForceClosureMargin = 1e-9;
inline constexpr int kDefaultConeEdges = 8;

// Planar cone: the two extreme directions (normal rotated by +/- atan(mu)),
// or just the normal when mu = 0.
std::vector<Vec2> friction_cone_edges(const Vec2& normal, double mu);

// Spatial cone: num_edges unit directions evenly spaced on the cone of
// half-angle atan(mu) about the normal; the bare normal when mu = 0.
std::vector<Eigen::Vector3d> friction_cone_edges(const Eigen::Vector3d& normal, double mu,
                                                 int num_edges);

WrenchSet build_wrench_set(const ContactSet2D& cs);
WrenchSet build_wrench_set(const ContactSet3D& cs, int num_cone_edges = kDefaultConeEdges);

// True iff the origin lies in the strict interior (margin kForceClosureMargin)
// of the convex hull of the wrenches.
bool force_closure(const WrenchSet& ws);

// Radius of the largest origin-centered ball inscribed in the GWS; 0 when the
// grasp is not in force closure or the hull is degenerate.
double ferrari_canny(const WrenchSet& ws);

GraspQuality grasp_quality(const ContactSet2D& cs);
GraspQuality grasp_quality(const ContactSet3D& cs, int num_cone_edges = kDefaultConeEdges);

// Minimum support value over deterministic low-discrepancy directions.
// Used as the fallback estimate when facet enumeration fails numerically.
double support_sampling_min(const WrenchSet& ws, int num_directions = 2048);

}  // namespace getgrasp

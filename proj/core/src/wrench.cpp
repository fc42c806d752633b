#include <cmath>
#include <limits>

#include "getgrasp/hull.hpp"
#include "getgrasp/wrench.hpp"

namespace getgrasp {

std::vector<Vec2> friction_cone_edges(const Vec2& normal, double mu) {
  if (mu <= 0.0) return {normal};
  const double half_angle = std::atan(mu);
  return {normal.rotated(half_angle), normal.rotated(-half_angle)};
}

std::vector<Eigen::Vector3d> friction_cone_edges(const Eigen::Vector3d& normal, double mu,
                                                 int num_edges) {
  if (mu <= 0.0) return {normal};
  const double half_angle = std::atan(mu);
  const double ca = std::cos(half_angle), sa = std::sin(half_angle);

  // Orthonormal basis perpendicular to the normal; anchor on the axis with
  // the smallest normal component for conditioning.
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(normal(i)) < std::abs(normal(k))) k = i;
  Eigen::Vector3d u = normal.cross(Eigen::Vector3d::Unit(k)).normalized();
  Eigen::Vector3d v = normal.cross(u);

  std::vector<Eigen::Vector3d> edges;
  edges.reserve(static_cast<std::size_t>(num_edges));
  for (int i = 0; i < num_edges; ++i) {
    const double theta = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(num_edges);
    edges.push_back(ca * normal + sa * (std::cos(theta) * u + std::sin(theta) * v));
  }
  return edges;
}

WrenchSet build_wrench_set(const ContactSet2D& cs) {
  WrenchSet ws;
  ws.dim = 3;
  for (const ContactPoint2D& c : cs.contacts) {
    const Vec2 arm = c.position - cs.com;
    for (const Vec2& f : friction_cone_edges(c.inward_normal, cs.mu)) {
      Eigen::VectorXd w(3);
      w << f.x, f.y, arm.cross(f) / cs.rho;
      ws.wrenches.push_back(std::move(w));
    }
  }
  return ws;
}

WrenchSet build_wrench_set(const ContactSet3D& cs, int num_cone_edges) {
  WrenchSet ws;
  ws.dim = 6;
  for (const ContactPoint3D& c : cs.contacts) {
    const Eigen::Vector3d arm = c.position - cs.com;
    for (const Eigen::Vector3d& f : friction_cone_edges(c.inward_normal, cs.mu, num_cone_edges)) {
      Eigen::VectorXd w(6);
      w.head<3>() = f;
      w.tail<3>() = arm.cross(f) / cs.rho;
      ws.wrenches.push_back(std::move(w));
    }
  }
  return ws;
}

namespace {

// Radical-inverse Halton sequence, used to build the deterministic
// low-discrepancy fallback directions.
double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  int i = index;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

struct GwsAnalysis {
  bool degenerate = false;  // affinely dependent wrenches: origin never interior
  bool exact = true;
  double min_offset = 0.0;  // min facet offset (exact) or min sampled support
};

GwsAnalysis analyze_gws(const WrenchSet& ws) {
  GwsAnalysis out;
  if (ws.wrenches.size() < static_cast<std::size_t>(ws.dim) + 1) {
    out.degenerate = true;
    return out;
  }
  if (auto facets = convex_hull_facets(ws.wrenches)) {
    double min_offset = std::numeric_limits<double>::infinity();
    for (const HullFacet& f : *facets) min_offset = std::min(min_offset, f.offset);
    out.min_offset = min_offset;
    return out;
  }
  // Affine dependence and numerical failure both land here; the sampled
  // support separates them: a flat set has support <= 0 along the flat's
  // normal directions, so the force-closure verdict stays sound.
  out.exact = false;
  out.min_offset = support_sampling_min(ws);
  return out;
}

}  // namespace

double support_sampling_min(const WrenchSet& ws, int num_directions) {
  static const int primes[6] = {2, 3, 5, 7, 11, 13};
  double worst = std::numeric_limits<double>::infinity();
  const int d = ws.dim;
  for (int i = 0; i < num_directions; ++i) {
    Eigen::VectorXd dir(d);
    // Box-Muller over Halton pairs -> isotropic direction.
    for (int k = 0; k < d; k += 2) {
      const double u1 = std::max(halton(i + 1, primes[k % 6]), 1e-16);
      const double u2 = halton(i + 1, primes[(k + 1) % 6]);
      const double r = std::sqrt(-2.0 * std::log(u1));
      dir(k) = r * std::cos(2.0 * M_PI * u2);
      if (k + 1 < d) dir(k + 1) = r * std::sin(2.0 * M_PI * u2);
    }
    const double norm = dir.norm();
    if (norm <= 0.0) continue;
    dir /= norm;
    double support = -std::numeric_limits<double>::infinity();
    for (const auto& w : ws.wrenches) support = std::max(support, w.dot(dir));
    worst = std::min(worst, support);
  }
  return worst;
}

bool force_closure(const WrenchSet& ws) {
  if (ws.wrenches.empty()) return false;
  const GwsAnalysis a = analyze_gws(ws);
  if (a.degenerate) return false;
  return a.min_offset > kForceClosureMargin;
}

double ferrari_canny(const WrenchSet& ws) {
  if (ws.wrenches.empty()) return 0.0;
  const GwsAnalysis a = analyze_gws(ws);
  if (a.degenerate || a.min_offset <= kForceClosureMargin) return 0.0;
  return a.min_offset;
}

namespace {

GraspQuality quality_from(const WrenchSet& ws) {
  GraspQuality q;
  const GwsAnalysis a = analyze_gws(ws);
  q.exact = a.exact;
  if (a.degenerate || a.min_offset <= kForceClosureMargin) return q;
  q.force_closure = true;
  q.epsilon = a.min_offset;
  return q;
}

}  // namespace

GraspQuality grasp_quality(const ContactSet2D& cs) { return quality_from(build_wrench_set(cs)); }

GraspQuality grasp_quality(const ContactSet3D& cs, int num_cone_edges) {
  return quality_from(build_wrench_set(cs, num_cone_edges));
}

}  // namespace getgrasp

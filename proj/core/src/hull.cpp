#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "getgrasp/hull.hpp"

namespace getgrasp {

namespace {

constexpr double kJitterRel = 1e-10;
constexpr double kVisibleEps = 1e-13;
constexpr double kVerifyRel = 1e-8;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Hyperplane through the d facet vertices; false when they are affinely
// dependent (the smallest-but-one singular value vanishes).
bool facet_plane(const std::vector<Eigen::VectorXd>& pts, const std::vector<int>& verts,
                 double scale, Eigen::VectorXd& normal, double& offset) {
  const int d = static_cast<int>(pts[0].size());
  Eigen::MatrixXd a(d - 1, d);
  for (int i = 1; i < d; ++i)
    a.row(i - 1) = (pts[static_cast<std::size_t>(verts[static_cast<std::size_t>(i)])] -
                    pts[static_cast<std::size_t>(verts[0])])
                       .transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s(d - 2) <= 1e-13 * std::max(1.0, scale)) return false;
  normal = svd.matrixV().col(d - 1);
  offset = normal.dot(pts[static_cast<std::size_t>(verts[0])]);
  return true;
}

}  // namespace

std::optional<std::vector<HullFacet>> convex_hull_facets(const std::vector<Eigen::VectorXd>& raw) {
  if (raw.empty()) return std::nullopt;
  const int d = static_cast<int>(raw[0].size());
  const int n = static_cast<int>(raw.size());
  if (d < 2 || n < d + 1) return std::nullopt;

  double scale = 0.0;
  for (const auto& p : raw) scale = std::max(scale, p.lpNorm<Eigen::Infinity>());
  if (scale <= 0.0) return std::nullopt;

  // Deterministic symbolic-perturbation stand-in.
  std::vector<Eigen::VectorXd> pts(raw.begin(), raw.end());
  for (int i = 0; i < n; ++i) {
    std::uint64_t h = splitmix64(0xC0FFEEULL + static_cast<std::uint64_t>(i));
    for (int k = 0; k < d; ++k) {
      h = splitmix64(h);
      const double u = static_cast<double>(h >> 11) * 0x1.0p-53 - 0.5;
      pts[static_cast<std::size_t>(i)](k) += kJitterRel * scale * u;
    }
  }

  // Initial simplex: greedy farthest-point with Gram-Schmidt residuals.
  std::vector<int> simplex{0};
  std::vector<Eigen::VectorXd> basis;
  std::vector<char> in_simplex(static_cast<std::size_t>(n), 0);
  in_simplex[0] = 1;
  while (static_cast<int>(simplex.size()) < d + 1) {
    int best = -1;
    double best_res = 1e-12 * std::max(1.0, scale);
    Eigen::VectorXd best_vec;
    for (int i = 0; i < n; ++i) {
      if (in_simplex[static_cast<std::size_t>(i)]) continue;
      Eigen::VectorXd r = pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>(simplex[0])];
      for (const auto& b : basis) r -= b.dot(r) * b;
      const double rn = r.norm();
      if (rn > best_res) {
        best_res = rn;
        best = i;
        best_vec = r;
      }
    }
    if (best < 0) return std::nullopt;  // affinely dependent set
    simplex.push_back(best);
    in_simplex[static_cast<std::size_t>(best)] = 1;
    basis.push_back(best_vec / best_vec.norm());
  }

  Eigen::VectorXd interior = Eigen::VectorXd::Zero(d);
  for (int v : simplex) interior += pts[static_cast<std::size_t>(v)];
  interior /= static_cast<double>(d + 1);

  std::vector<HullFacet> facets;
  auto make_facet = [&](std::vector<int> verts, HullFacet& out) {
    Eigen::VectorXd normal;
    double offset;
    if (!facet_plane(pts, verts, scale, normal, offset)) return false;
    double side = normal.dot(interior) - offset;
    if (std::abs(side) <= 1e-13 * std::max(1.0, scale)) return false;  // cannot orient
    if (side > 0.0) {
      normal = -normal;
      offset = -offset;
    }
    out.vertices = std::move(verts);
    out.normal = std::move(normal);
    out.offset = offset;
    return true;
  };

  for (int skip = 0; skip <= d; ++skip) {
    std::vector<int> verts;
    for (int i = 0; i <= d; ++i)
      if (i != skip) verts.push_back(simplex[static_cast<std::size_t>(i)]);
    HullFacet f;
    if (!make_facet(std::move(verts), f)) return std::nullopt;
    facets.push_back(std::move(f));
  }

  // Incremental insertion in index order.
  for (int i = 0; i < n; ++i) {
    if (in_simplex[static_cast<std::size_t>(i)]) continue;
    const Eigen::VectorXd& p = pts[static_cast<std::size_t>(i)];

    std::vector<char> visible(facets.size(), 0);
    bool any_visible = false;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      if (facets[f].normal.dot(p) > facets[f].offset + kVisibleEps * std::max(1.0, scale)) {
        visible[f] = 1;
        any_visible = true;
      }
    }
    if (!any_visible) continue;  // interior point

    // Horizon ridges: (d-1)-subsets shared by exactly one visible facet.
    std::map<std::vector<int>, std::pair<int, int>> ridge_count;  // -> (visible, total)
    for (std::size_t f = 0; f < facets.size(); ++f) {
      for (std::size_t drop = 0; drop < facets[f].vertices.size(); ++drop) {
        std::vector<int> ridge;
        for (std::size_t k = 0; k < facets[f].vertices.size(); ++k)
          if (k != drop) ridge.push_back(facets[f].vertices[k]);
        std::sort(ridge.begin(), ridge.end());
        auto& rc = ridge_count[ridge];
        rc.second += 1;
        if (visible[f]) rc.first += 1;
      }
    }

    std::vector<HullFacet> next;
    for (std::size_t f = 0; f < facets.size(); ++f)
      if (!visible[f]) next.push_back(std::move(facets[f]));

    for (const auto& [ridge, rc] : ridge_count) {
      if (rc.second != 2) return std::nullopt;  // non-simplicial structure
      if (rc.first != 1) continue;              // not on the horizon
      std::vector<int> verts = ridge;
      verts.push_back(i);
      HullFacet nf;
      if (!make_facet(std::move(verts), nf)) return std::nullopt;
      next.push_back(std::move(nf));
    }
    facets = std::move(next);
  }

  // Verification: every point beneath every facet.
  const double verify_eps = kVerifyRel * std::max(1.0, scale);
  for (const auto& f : facets)
    for (int i = 0; i < n; ++i)
      if (f.normal.dot(pts[static_cast<std::size_t>(i)]) > f.offset + verify_eps)
        return std::nullopt;

  return facets;
}

}  // namespace getgrasp

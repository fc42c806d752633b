#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "getgrasp/errors.hpp"
#include "getgrasp/geometry2d.hpp"

namespace getgrasp {

namespace {

constexpr double kBoundaryEps = 1e-12;

}  // namespace

Polygon2D to_metric_polygon(const std::vector<Vec2>& ring,
                            const std::vector<std::vector<Vec2>>& holes,
                            const DepthStats& depth, double ppm_table) {
  if (ppm_table <= 0.0) throw InvalidDepthError("ppm_table must be positive");
  if (depth.z_obj <= 0.0) throw InvalidDepthError("z_obj must be positive");
  if (ring.size() < 3) throw DegenerateContourError("outer ring needs at least 3 vertices");

  const double ppm_obj = ppm_table * depth.z_table / depth.z_obj;
  const double scale = 1.0 / ppm_obj;

  Polygon2D poly;
  poly.scale_ppm = ppm_obj;
  poly.outer.reserve(ring.size());
  for (const Vec2& p : ring) poly.outer.push_back(p * scale);
  if (ring_signed_area(poly.outer) < 0.0)
    std::reverse(poly.outer.begin(), poly.outer.end());
  for (const auto& h : holes) {
    if (h.size() < 3) continue;
    std::vector<Vec2> hr;
    hr.reserve(h.size());
    for (const Vec2& p : h) hr.push_back(p * scale);
    if (ring_signed_area(hr) > 0.0) std::reverse(hr.begin(), hr.end());
    poly.holes.push_back(std::move(hr));
  }
  return poly;
}

double polygon_area(const Polygon2D& poly) {
  double a = ring_signed_area(poly.outer);
  for (const auto& h : poly.holes) a += ring_signed_area(h);  // holes are CW, negative
  return a;
}

Vec2 polygon_centroid(const Polygon2D& poly) {
  double area2 = 0.0;  // 2x signed area
  double cx = 0.0, cy = 0.0;
  auto accumulate = [&](const std::vector<Vec2>& ring) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& p = ring[i];
      const Vec2& q = ring[(i + 1) % n];
      const double w = p.x * q.y - q.x * p.y;
      area2 += w;
      cx += (p.x + q.x) * w;
      cy += (p.y + q.y) * w;
    }
  };
  accumulate(poly.outer);
  for (const auto& h : poly.holes) accumulate(h);
  const double area = 0.5 * area2;
  if (area <= 0.0) throw ZeroAreaError();
  return {cx / (3.0 * area2), cy / (3.0 * area2)};
}

double max_vertex_distance(const Polygon2D& poly, const Vec2& from) {
  double best = 0.0;
  auto scan = [&](const std::vector<Vec2>& ring) {
    for (const Vec2& p : ring) best = std::max(best, distance(p, from));
  };
  scan(poly.outer);
  for (const auto& h : poly.holes) scan(h);
  return best;
}

double min_distance_to_boundary(const Polygon2D& poly, const Vec2& p) {
  double best = std::numeric_limits<double>::infinity();
  auto scan = [&](const std::vector<Vec2>& ring) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double d = distance(p, closest_point_on_segment(ring[i], ring[(i + 1) % n], p));
      if (d < best) best = d;
    }
  };
  scan(poly.outer);
  for (const auto& h : poly.holes) scan(h);
  return best;
}

bool point_in_polygon(const Polygon2D& poly, const Vec2& p) {
  if (min_distance_to_boundary(poly, p) <= kBoundaryEps) return true;  // boundary is inside
  bool inside = false;
  auto cross_count = [&](const std::vector<Vec2>& ring) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& a = ring[i];
      const Vec2& b = ring[(i + 1) % n];
      if ((a.y > p.y) != (b.y > p.y)) {
        const double xint = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
        if (p.x < xint) inside = !inside;
      }
    }
  };
  cross_count(poly.outer);
  for (const auto& h : poly.holes) cross_count(h);
  return inside;
}

std::optional<FingerContact> finger_contact(const Polygon2D& poly, double circle_radius,
                                            const Vec2& start_center, const Vec2& closing_dir,
                                            double max_travel) {
  const Vec2 u = closing_dir.normalized();
  if (u.squared_norm() == 0.0) throw Error("finger_contact: zero closing direction");
  if (max_travel <= 0.0) throw Error("finger_contact: max_travel must be positive");
  if (point_in_polygon(poly, start_center) ||
      min_distance_to_boundary(poly, start_center) < circle_radius * (1.0 - 1e-12))
    throw InvalidStartError("finger circle overlaps the polygon at its start pose");

  double best_t = std::numeric_limits<double>::infinity();
  Vec2 best_point;

  auto consider = [&](double t, const Vec2& pt) {
    if (t < -1e-9) return;
    t = std::max(t, 0.0);
    if (t <= max_travel && t < best_t) {
      best_t = t;
      best_point = pt;
    }
  };

  auto sweep_ring = [&](const std::vector<Vec2>& ring) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& a = ring[i];
      const Vec2& b = ring[(i + 1) % n];

      // Vertex event: |start + t*u - a| = r, first root.
      {
        const Vec2 w = start_center - a;
        const double bq = u.dot(w);
        const double cq = w.squared_norm() - circle_radius * circle_radius;
        const double disc = bq * bq - cq;
        if (disc >= 0.0) consider(-bq - std::sqrt(disc), a);
      }

      // Edge interior event: signed line distance reaches +/-r with the
      // closest point projecting inside the segment.
      const Vec2 e = b - a;
      const double len = e.norm();
      if (len <= 0.0) continue;
      const Vec2 n_hat = e.perp() / len;
      const double denom = n_hat.dot(u);
      if (std::abs(denom) < 1e-15) continue;  // moving parallel to the edge
      const double s0 = n_hat.dot(start_center - a);
      for (const double target : {circle_radius, -circle_radius}) {
        const double t = (target - s0) / denom;
        if (t < -1e-9) continue;
        const Vec2 c = start_center + u * std::max(t, 0.0);
        const double proj = (c - a).dot(e) / len;
        if (proj < 0.0 || proj > len) continue;
        consider(t, a + e * (proj / len));
      }
    }
  };

  sweep_ring(poly.outer);
  for (const auto& h : poly.holes) sweep_ring(h);

  if (!std::isfinite(best_t)) return std::nullopt;
  const Vec2 center_at_touch = start_center + u * best_t;
  FingerContact fc;
  fc.travel = best_t;
  fc.point = best_point;
  fc.inward_normal = (best_point - center_at_touch).normalized();
  return fc;
}

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Vec2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower
    while (k >= 2 && (hull[k - 1] - hull[k - 2]).cross(pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper
    while (k >= t && (hull[k - 1] - hull[k - 2]).cross(pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

Obb oriented_bounding_box(const Polygon2D& poly) {
  const std::vector<Vec2> hull = convex_hull(poly.outer);
  if (hull.size() < 2) throw DegenerateContourError("polygon degenerates to a point");

  double best_area = std::numeric_limits<double>::infinity();
  Obb best;
  const std::size_t n = hull.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = (hull[(i + 1) % n] - hull[i]);
    const double len = e.norm();
    if (len <= 0.0) continue;
    const Vec2 ex = e / len;
    const Vec2 ey = ex.perp();
    double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
    double min_y = min_x, max_y = -min_x;
    for (const Vec2& p : hull) {
      const double px = p.dot(ex), py = p.dot(ey);
      min_x = std::min(min_x, px);
      max_x = std::max(max_x, px);
      min_y = std::min(min_y, py);
      max_y = std::max(max_y, py);
    }
    const double wx = max_x - min_x, wy = max_y - min_y;
    const double area = wx * wy;
    if (area < best_area) {
      best_area = area;
      best.center = ex * ((min_x + max_x) * 0.5) + ey * ((min_y + max_y) * 0.5);
      if (wx >= wy) {
        best.length = wx;
        best.width = wy;
        best.axis_angle = std::atan2(ex.y, ex.x);
      } else {
        best.length = wy;
        best.width = wx;
        best.axis_angle = std::atan2(ey.y, ey.x);
      }
    }
  }
  // Long-axis direction folded to [0, pi).
  best.axis_angle = std::fmod(best.axis_angle, M_PI);
  if (best.axis_angle < 0.0) best.axis_angle += M_PI;
  return best;
}

}  // namespace getgrasp

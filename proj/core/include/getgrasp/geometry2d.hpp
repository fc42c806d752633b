#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "getgrasp/vec2.hpp"

namespace getgrasp {

// Binary object mask, row-major, value != 0 means object pixel.
struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> values;

  bool at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x] != 0; }
  void set(int x, int y, bool v) { values[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }
  std::size_t count_true() const;
};

// Closed pixel-space border. Points are pixel centers, the edge from the last
// point back to the first is implicit. Outer borders are CCW (positive
// shoelace area in x-right/y-up sense), hole borders CW.
struct Contour {
  std::vector<Vec2> points;
  bool is_hole = false;
  int parent = -1;     // index of the enclosing contour, -1 for top level
  bool is_object = false;  // set on the largest-area outer contour
};

// Metric-unit object footprint: one CCW outer ring plus zero or more CW hole
// rings, all simple and closed.
struct Polygon2D {
  std::vector<Vec2> outer;
  std::vector<std::vector<Vec2>> holes;
  double scale_ppm = 0.0;  // pixels-per-meter used for the conversion
};

// Camera/table depth summary.
//   z_table: camera-to-table distance
//   z_obj:   20th-percentile camera-to-object distance
//   h80:     80th-percentile object height above the table
struct DepthStats {
  double z_table = 0.0;
  double z_obj = 0.0;
  double h80 = 0.0;
};

// Border following over the 8-connected object pixels, with hole hierarchy.
// Returns outer and hole contours with parent links; the largest-area outer
// contour carries is_object = true. Throws EmptyMaskError when the mask has
// no usable region.
std::vector<Contour> extract_contours(const BinaryMask& mask);

// Dominant-point detection (bypassed when it keeps fewer than 6 points or
// when teh_chin_enabled is false) followed by Ramer-Douglas-Peucker. The
// result is a subsequence of the input ring and every dropped input point
// lies within rdp_epsilon of the returned ring. Throws DegenerateContourError
// if fewer than 3 vertices would remain.
std::vector<Vec2> simplify_polygon(const Contour& contour, double rdp_epsilon,
                                   bool teh_chin_enabled = true);

// Pixel ring(s) to meters. ppm_obj = ppm_table * z_table / z_obj: the object
// plane is closer to the camera than the table plane, so one meter of object
// covers more pixels. Throws InvalidDepthError if z_obj <= 0.
Polygon2D to_metric_polygon(const std::vector<Vec2>& ring,
                            const std::vector<std::vector<Vec2>>& holes,
                            const DepthStats& depth, double ppm_table);

// Net signed area (outer CCW positive, CW holes subtract).
double polygon_area(const Polygon2D& poly);

// Area centroid of (outer minus holes), uniform density. Throws ZeroAreaError
// if the net area is not positive.
Vec2 polygon_centroid(const Polygon2D& poly);

// Largest distance from a point to any outer or hole vertex. Used as the
// torque normalization length rho.
double max_vertex_distance(const Polygon2D& poly, const Vec2& from);

// Distance from p to the nearest boundary segment (outer or hole).
double min_distance_to_boundary(const Polygon2D& poly, const Vec2& p);

// Even-odd point-in-polygon test; boundary points count as inside.
bool point_in_polygon(const Polygon2D& poly, const Vec2& p);

struct FingerContact {
  double travel = 0.0;   // sweep distance at first touch
  Vec2 point;            // touched boundary point
  Vec2 inward_normal;    // unit, pointing into the object material
};

// Sweeps a circle of circle_radius from start_center along closing_dir and
// reports the first boundary touch within max_travel, or nullopt if there is
// none. Throws InvalidStartError if the circle overlaps the polygon at the
// start (tangency counts as overlap).
std::optional<FingerContact> finger_contact(const Polygon2D& poly, double circle_radius,
                                            const Vec2& start_center, const Vec2& closing_dir,
                                            double max_travel);

struct Obb {
  Vec2 center;
  double axis_angle = 0.0;  // direction of the longer side, in [0, pi)
  double width = 0.0;       // short extent
  double length = 0.0;      // long extent, >= width
};

// Minimum-area enclosing rectangle via rotating calipers over the convex hull.
Obb oriented_bounding_box(const Polygon2D& poly);

// Helpers shared across modules.
double ring_signed_area(const std::vector<Vec2>& ring);
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

}  // namespace getgrasp

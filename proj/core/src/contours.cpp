#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <vector>

#include "getgrasp/errors.hpp"
#include "getgrasp/geometry2d.hpp"

namespace getgrasp {

std::size_t BinaryMask::count_true() const {
  std::size_t n = 0;
  for (auto v : values) n += (v != 0);
  return n;
}

double ring_signed_area(const std::vector<Vec2>& ring) {
  double a = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = ring[i];
    const Vec2& q = ring[(i + 1) % n];
    a += p.x * q.y - q.x * p.y;
  }
  return 0.5 * a;
}

namespace {

// 8-neighborhood in counter-clockwise order starting at east, (drow, dcol).
constexpr int kDR[8] = {0, -1, -1, -1, 0, 1, 1, 1};
constexpr int kDC[8] = {1, 1, 0, -1, -1, -1, 0, 1};

int neighbor_dir(int r0, int c0, int r1, int c1) {
  for (int d = 0; d < 8; ++d)
    if (r0 + kDR[d] == r1 && c0 + kDC[d] == c1) return d;
  std::abort();
}

struct RawBorder {
  std::vector<Vec2> points;  // padded-image pixel coordinates (x=col, y=row)
  bool is_hole = false;
  int parent_nbd = 1;  // border number of the parent (1 = image frame)
};

// Border following (Suzuki & Abe). f holds 1 for object pixels, 0 background;
// traced pixels get relabeled with +/-NBD to detect revisits.
std::vector<RawBorder> follow_borders(std::vector<std::vector<int>>& f) {
  const int rows = static_cast<int>(f.size());
  const int cols = static_cast<int>(f[0].size());

  std::vector<RawBorder> borders;        // borders[k] has NBD = k + 2
  std::vector<bool> border_is_hole{true};  // by NBD-1 index; NBD 1 = frame (hole)
  std::vector<int> border_parent{1};
  int nbd = 1;

  for (int i = 1; i < rows - 1; ++i) {
    int lnbd = 1;
    for (int j = 1; j < cols - 1; ++j) {
      if (f[i][j] == 0) continue;

      bool outer_start = (f[i][j] == 1 && f[i][j - 1] == 0);
      bool hole_start = (f[i][j] >= 1 && f[i][j + 1] == 0);
      int i2 = 0, j2 = 0;
      bool is_hole = false;
      if (outer_start) {
        i2 = i;
        j2 = j - 1;
      } else if (hole_start) {
        i2 = i;
        j2 = j + 1;
        is_hole = true;
        if (f[i][j] > 1) lnbd = f[i][j];
      } else {
        if (f[i][j] != 1) lnbd = std::abs(f[i][j]);
        continue;
      }

      ++nbd;
      // Decide the parent from the last border met on this row (Table 1 of
      // the border-following scheme): same type -> share its parent,
      // different type -> it is the parent.
      const bool lnbd_hole = border_is_hole[static_cast<std::size_t>(lnbd) - 1];
      int parent;
      if (is_hole == lnbd_hole)
        parent = border_parent[static_cast<std::size_t>(lnbd) - 1];
      else
        parent = lnbd;

      RawBorder border;
      border.is_hole = is_hole;
      border.parent_nbd = parent;

      // Step 3.1: first nonzero neighbor clockwise from (i2, j2).
      int dir = neighbor_dir(i, j, i2, j2);
      int i1 = -1, j1 = -1;
      for (int k = 0; k < 8; ++k) {
        const int d = (dir - k + 8) % 8;  // clockwise
        const int r = i + kDR[d], c = j + kDC[d];
        if (f[r][c] != 0) {
          i1 = r;
          j1 = c;
          break;
        }
      }
      if (i1 < 0) {
        f[i][j] = -nbd;  // isolated pixel
        border.points.push_back({static_cast<double>(j), static_cast<double>(i)});
        borders.push_back(std::move(border));
        border_is_hole.push_back(is_hole);
        border_parent.push_back(parent);
        if (f[i][j] != 1) lnbd = std::abs(f[i][j]);
        continue;
      }

      // Steps 3.2-3.5.
      int pr = i1, pc = j1;  // previous (i2, j2)
      int cr = i, cc = j;    // current (i3, j3)
      while (true) {
        border.points.push_back({static_cast<double>(cc), static_cast<double>(cr)});
        const int back = neighbor_dir(cr, cc, pr, pc);
        int nr = -1, nc = -1;
        bool east_zero = false;
        for (int k = 1; k <= 8; ++k) {
          const int d = (back + k) % 8;  // counter-clockwise
          const int r = cr + kDR[d], c = cc + kDC[d];
          if (f[r][c] != 0) {
            nr = r;
            nc = c;
            break;
          }
          if (d == 0) east_zero = true;  // examined east neighbor, it was 0
        }
        if (east_zero)
          f[cr][cc] = -nbd;
        else if (f[cr][cc] == 1)
          f[cr][cc] = nbd;

        if (nr == i && nc == j && cr == i1 && cc == j1) break;
        pr = cr;
        pc = cc;
        cr = nr;
        cc = nc;
      }

      borders.push_back(std::move(border));
      border_is_hole.push_back(is_hole);
      border_parent.push_back(parent);
      if (f[i][j] != 1) lnbd = std::abs(f[i][j]);
    }
  }
  return borders;
}

}  // namespace

std::vector<Contour> extract_contours(const BinaryMask& mask) {
  if (mask.width <= 0 || mask.height <= 0 || mask.count_true() == 0) throw EmptyMaskError();

  // Pad with a background frame so borders at the image edge close properly.
  std::vector<std::vector<int>> f(static_cast<std::size_t>(mask.height) + 2,
                                  std::vector<int>(static_cast<std::size_t>(mask.width) + 2, 0));
  for (int y = 0; y < mask.height; ++y)
    for (int x = 0; x < mask.width; ++x)
      if (mask.at(x, y)) f[static_cast<std::size_t>(y) + 1][static_cast<std::size_t>(x) + 1] = 1;

  std::vector<RawBorder> raw = follow_borders(f);

  // Keep only borders that can form a ring; remap parents (NBD -> index).
  std::vector<int> nbd_to_index(raw.size() + 2, -1);
  std::vector<Contour> out;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (raw[k].points.size() < 3) continue;
    Contour c;
    c.points.reserve(raw[k].points.size());
    for (const Vec2& p : raw[k].points) c.points.push_back({p.x - 1.0, p.y - 1.0});
    c.is_hole = raw[k].is_hole;
    // Walk up through dropped/frame ancestors to the nearest kept one.
    int pn = raw[k].parent_nbd;
    while (pn > 1 && nbd_to_index[static_cast<std::size_t>(pn)] < 0)
      pn = raw[static_cast<std::size_t>(pn) - 2].parent_nbd;
    c.parent = pn > 1 ? nbd_to_index[static_cast<std::size_t>(pn)] : -1;
    nbd_to_index[k + 2] = static_cast<int>(out.size());
    out.push_back(std::move(c));
  }
  if (out.empty()) throw EmptyMaskError();

  // Normalize orientation: outer rings CCW (positive shoelace), holes CW.
  for (Contour& c : out) {
    const double a = ring_signed_area(c.points);
    if ((c.is_hole && a > 0.0) || (!c.is_hole && a < 0.0))
      std::reverse(c.points.begin(), c.points.end());
  }

  // Flag the largest-area outer contour as the object.
  double best = -1.0;
  int best_idx = -1;
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (out[k].is_hole) continue;
    const double a = std::abs(ring_signed_area(out[k].points));
    if (a > best) {
      best = a;
      best_idx = static_cast<int>(k);
    }
  }
  if (best_idx < 0) throw EmptyMaskError();
  out[static_cast<std::size_t>(best_idx)].is_object = true;
  return out;
}

namespace {

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  return distance(p, closest_point_on_segment(a, b, p));
}

void rdp_chain(const std::vector<Vec2>& pts, std::size_t a, std::size_t b, double eps,
               std::vector<char>& keep) {
  if (b <= a + 1) return;
  double dmax = -1.0;
  std::size_t imax = a;
  for (std::size_t i = a + 1; i < b; ++i) {
    const double d = point_segment_distance(pts[i], pts[a], pts[b]);
    if (d > dmax) {
      dmax = d;
      imax = i;
    }
  }
  if (dmax > eps) {
    keep[imax] = 1;
    rdp_chain(pts, a, imax, eps, keep);
    rdp_chain(pts, imax, b, eps, keep);
  }
}

// RDP on a closed ring: split at two far-apart anchor vertices, simplify both
// chains. Anchors found with a double sweep (farthest from point 0, then
// farthest from that), which approximates the diameter in O(n).
std::vector<Vec2> rdp_ring(const std::vector<Vec2>& ring, double eps) {
  const std::size_t n = ring.size();
  if (n <= 3) return ring;
  auto farthest_from = [&](std::size_t i0) {
    std::size_t best = i0;
    double bd = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = (ring[i] - ring[i0]).squared_norm();
      if (d > bd) {
        bd = d;
        best = i;
      }
    }
    return best;
  };
  const std::size_t a = farthest_from(0);
  const std::size_t b = farthest_from(a);
  const std::size_t lo = std::min(a, b), hi = std::max(a, b);
  if (lo == hi) return {ring[lo]};  // all points coincide

  std::vector<char> keep(n, 0);
  keep[lo] = keep[hi] = 1;
  rdp_chain(ring, lo, hi, eps, keep);
  // Wrap-around chain hi..n-1,0..lo as a contiguous buffer.
  std::vector<Vec2> wrap;
  wrap.reserve(n - (hi - lo) + 1);
  for (std::size_t i = hi; i < n; ++i) wrap.push_back(ring[i]);
  for (std::size_t i = 0; i <= lo; ++i) wrap.push_back(ring[i]);
  std::vector<char> wkeep(wrap.size(), 0);
  wkeep.front() = wkeep.back() = 1;
  rdp_chain(wrap, 0, wrap.size() - 1, eps, wkeep);
  for (std::size_t i = 0; i < wrap.size(); ++i) {
    if (!wkeep[i]) continue;
    const std::size_t orig = (hi + i) % n;
    keep[orig] = 1;
  }

  std::vector<Vec2> out;
  for (std::size_t i = 0; i < n; ++i)
    if (keep[i]) out.push_back(ring[i]);
  return out;
}

// Dominant points by region-of-support: grow k while the chord
// p[i-k]..p[i+k] keeps lengthening, score the point by its perpendicular
// distance to that chord, then suppress non-maxima inside the support window.
std::vector<std::size_t> dominant_point_indices(const std::vector<Vec2>& ring) {
  const std::size_t n = ring.size();
  const std::size_t kmax = n / 2 > 1 ? n / 2 - 1 : 1;
  std::vector<std::size_t> support(n, 1);
  std::vector<double> sig(n, 0.0);
  auto wrap = [&](long idx) {
    idx %= static_cast<long>(n);
    if (idx < 0) idx += static_cast<long>(n);
    return static_cast<std::size_t>(idx);
  };
  auto at = [&](std::size_t i, long off) -> const Vec2& {
    return ring[wrap(static_cast<long>(i) + off)];
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t k = 1;
    double lprev = (at(i, -1) - at(i, 1)).norm();
    while (k < kmax) {
      const double lnext = (at(i, -static_cast<long>(k) - 1) - at(i, static_cast<long>(k) + 1)).norm();
      if (lnext < lprev) break;
      lprev = lnext;
      ++k;
    }
    support[i] = k;
    sig[i] = point_segment_distance(ring[i], at(i, -static_cast<long>(k)), at(i, static_cast<long>(k)));
  }
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i) {
    if (sig[i] <= 0.0) continue;
    bool is_max = true;
    for (long off = -static_cast<long>(support[i]); off <= static_cast<long>(support[i]); ++off) {
      if (off == 0) continue;
      const std::size_t j = wrap(static_cast<long>(i) + off);
      if (sig[j] > sig[i] || (sig[j] == sig[i] && j < i)) {
        is_max = false;
        break;
      }
    }
    if (is_max) kept.push_back(i);
  }
  return kept;
}

double max_deviation_from_ring(const std::vector<Vec2>& original, const std::vector<Vec2>& simplified) {
  const std::size_t m = simplified.size();
  double worst = 0.0;
  for (const Vec2& p : original) {
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double d = point_segment_distance(p, simplified[i], simplified[(i + 1) % m]);
      if (d < dmin) dmin = d;
    }
    if (dmin > worst) worst = dmin;
  }
  return worst;
}

}  // namespace

std::vector<Vec2> simplify_polygon(const Contour& contour, double rdp_epsilon,
                                   bool teh_chin_enabled) {
  const std::vector<Vec2>& ring = contour.points;
  if (ring.size() < 3) throw DegenerateContourError("contour has fewer than 3 points");

  std::vector<Vec2> stage = ring;
  if (teh_chin_enabled) {
    const std::vector<std::size_t> dom = dominant_point_indices(ring);
    if (dom.size() >= 6) {
      stage.clear();
      for (std::size_t i : dom) stage.push_back(ring[i]);
    }
  }

  std::vector<Vec2> out = rdp_ring(stage, rdp_epsilon);
  // The dominant-point stage has no deviation guarantee of its own; if it
  // discarded something farther than epsilon, redo plain RDP on the raw ring.
  if (stage.size() != ring.size() &&
      max_deviation_from_ring(ring, out) > rdp_epsilon + 1e-9) {
    out = rdp_ring(ring, rdp_epsilon);
  }
  if (out.size() < 3) throw DegenerateContourError("simplification left fewer than 3 vertices");
  return out;
}

}  // namespace getgrasp

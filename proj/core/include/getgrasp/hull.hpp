#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace getgrasp {

struct HullFacet {
  std::vector<int> vertices;  // d point indices
  Eigen::VectorXd normal;     // unit outward normal
  double offset = 0.0;        // supporting plane: normal . x = offset
};

// Facet enumeration of the convex hull of full-dimensional point sets in
// d >= 2 dimensions by incremental insertion (beneath-beyond). Input points
// receive a deterministic micro-perturbation (<= 1e-10 relative) so that
// degenerate configurations (coplanar cone edges and the like) still yield a
// simplicial facet structure; the induced error in facet offsets is of the
// same order. Returns nullopt when the points are affinely dependent or when
// the built hull fails verification.
std::optional<std::vector<HullFacet>> convex_hull_facets(const std::vector<Eigen::VectorXd>& pts);

}  // namespace getgrasp

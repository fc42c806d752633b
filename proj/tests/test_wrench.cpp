#include <cmath>
#include <vector>

#include "doctest.h"
#include "getgrasp/rng.hpp"
#include "getgrasp/wrench.hpp"

using namespace getgrasp;

namespace {

// Support-sampling force-closure oracle: the origin is interior iff the
// support value is positive along every direction. Independent of the hull
// path in the implementation.
struct SupportOracle {
  double min_support = 0.0;
  bool fc = false;
};

SupportOracle fc_oracle(const WrenchSet& ws, int n_dirs, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 1e300;
  for (int i = 0; i < n_dirs; ++i) {
    Eigen::VectorXd dir(ws.dim);
    for (int k = 0; k < ws.dim; ++k) dir(k) = rng.normal();
    const double n = dir.norm();
    if (n <= 0.0) continue;
    dir /= n;
    double support = -1e300;
    for (const auto& w : ws.wrenches) support = std::max(support, w.dot(dir));
    worst = std::min(worst, support);
  }
  return {worst, worst > 0.0};
}

ContactSet2D antipodal_disk_contacts(double mu) {
  ContactSet2D cs;
  cs.mu = mu;
  cs.com = {0.0, 0.0};
  cs.rho = 0.05;
  cs.contacts.push_back({{0.05, 0.0}, {-1.0, 0.0}, JawLabel::kNarrow});
  cs.contacts.push_back({{-0.05, 0.0}, {1.0, 0.0}, JawLabel::kWideA});
  return cs;
}

// Random planar contact sets for the property checks.
ContactSet2D random_contact_set(Rng& rng, int n_contacts) {
  ContactSet2D cs;
  cs.mu = rng.uniform(0.2, 1.0);
  cs.com = {0.0, 0.0};
  cs.rho = 0.05;
  for (int i = 0; i < n_contacts; ++i) {
    const double pos_angle = rng.uniform(0.0, 2.0 * M_PI);
    const double r = rng.uniform(0.01, 0.05);
    const double n_angle = rng.uniform(0.0, 2.0 * M_PI);
    cs.contacts.push_back({{r * std::cos(pos_angle), r * std::sin(pos_angle)},
                           {std::cos(n_angle), std::sin(n_angle)},
                           JawLabel::kNarrow});
  }
  return cs;
}

WrenchSet octahedron_set() {
  WrenchSet ws;
  ws.dim = 3;
  for (int k = 0; k < 3; ++k)
    for (double s : {1.0, -1.0}) {
      Eigen::VectorXd w = Eigen::VectorXd::Zero(3);
      w(k) = s;
      ws.wrenches.push_back(w);
    }
  return ws;
}

}  // namespace

TEST_SUITE("wrench") {

TEST_CASE("friction_cone_edges: planar") {
  SUBCASE("frictionless cone degenerates to the normal") {
    auto edges = friction_cone_edges(Vec2{0, 1}, 0.0);
    REQUIRE(edges.size() == 1);
    CHECK(edges[0].x == doctest::Approx(0.0));
    CHECK(edges[0].y == doctest::Approx(1.0));
  }
  SUBCASE("mu = 1 gives +-45 degrees") {
    auto edges = friction_cone_edges(Vec2{0, 1}, 1.0);
    REQUIRE(edges.size() == 2);
    const double c = std::sqrt(2.0) / 2.0;
    CHECK(std::abs(edges[0].x) == doctest::Approx(c));
    CHECK(edges[0].y == doctest::Approx(c));
    CHECK(std::abs(edges[1].x) == doctest::Approx(c));
    CHECK(edges[1].y == doctest::Approx(c));
    CHECK(edges[0].x == doctest::Approx(-edges[1].x));
  }
}

TEST_CASE("friction_cone_edges: spatial cone parametrization") {
  const Eigen::Vector3d n(0, 0, 1);
  auto edges = friction_cone_edges(n, 0.75, 8);
  REQUIRE(edges.size() == 8);
  for (const auto& e : edges) {
    CHECK(e.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.z() == doctest::Approx(0.8).epsilon(1e-12));  // cos(atan(0.75)) = 0.8
  }
  // Azimuthal spacing 45 degrees.
  for (std::size_t i = 0; i < 8; ++i) {
    const auto& a = edges[i];
    const auto& b = edges[(i + 1) % 8];
    const double dot_xy = (a.x() * b.x() + a.y() * b.y()) / (0.6 * 0.6);
    CHECK(dot_xy == doctest::Approx(std::cos(M_PI / 4.0)).epsilon(1e-9));
  }
  auto frictionless = friction_cone_edges(n, 0.0, 8);
  REQUIRE(frictionless.size() == 1);
  CHECK((frictionless[0] - n).norm() == doctest::Approx(0.0));
}

TEST_CASE("build_wrench_set: planar torque normalization") {
  SUBCASE("contact at the com produces zero torque") {
    ContactSet2D cs;
    cs.mu = 0.0;
    cs.com = {0, 0};
    cs.rho = 0.05;
    cs.contacts.push_back({{0, 0}, {0, 1}, JawLabel::kNarrow});
    auto ws = build_wrench_set(cs);
    REQUIRE(ws.wrenches.size() == 1);
    CHECK(ws.wrenches[0](0) == doctest::Approx(0.0));
    CHECK(ws.wrenches[0](1) == doctest::Approx(1.0));
    CHECK(ws.wrenches[0](2) == doctest::Approx(0.0));
  }
  SUBCASE("lever arm of rho gives unit normalized torque") {
    ContactSet2D cs;
    cs.mu = 0.0;
    cs.com = {0, 0};
    cs.rho = 0.05;
    cs.contacts.push_back({{0.05, 0.0}, {0, 1}, JawLabel::kNarrow});
    auto ws = build_wrench_set(cs);
    REQUIRE(ws.wrenches.size() == 1);
    CHECK(ws.wrenches[0](2) == doctest::Approx(1.0));
  }
  SUBCASE("two antipodal contacts, hand-computed cone edges") {
    auto ws = build_wrench_set(antipodal_disk_contacts(0.75));
    REQUIRE(ws.wrenches.size() == 4);
    // atan(0.75): cos = 0.8, sin = 0.6. Contact 1 at (0.05, 0), n = (-1, 0):
    // edges (-0.8, +-0.6), torque = (0.05 * +-0.6) / 0.05 = +-0.6.
    CHECK(ws.wrenches[0](0) == doctest::Approx(-0.8));
    CHECK(std::abs(ws.wrenches[0](1)) == doctest::Approx(0.6));
    CHECK(std::abs(ws.wrenches[0](2)) == doctest::Approx(0.6));
    CHECK(ws.wrenches[0](1) * ws.wrenches[0](2) > 0.0);  // same sign for this contact
    CHECK(ws.wrenches[2](0) == doctest::Approx(0.8));
    CHECK(ws.wrenches[2](1) * ws.wrenches[2](2) < 0.0);
  }
}

TEST_CASE("force_closure: dimension counting and the antipodal disk") {
  SUBCASE("single contact is never force closure") {
    ContactSet2D cs;
    cs.mu = 0.75;
    cs.com = {0, 0};
    cs.rho = 0.05;
    cs.contacts.push_back({{0.05, 0.0}, {-1.0, 0.0}, JawLabel::kNarrow});
    CHECK(!force_closure(build_wrench_set(cs)));
  }
  SUBCASE("two frictionless antipodal contacts cannot span 3-space") {
    auto cs = antipodal_disk_contacts(0.0);
    CHECK(!force_closure(build_wrench_set(cs)));
  }
  SUBCASE("two antipodal contacts with friction through the center close") {
    auto ws = build_wrench_set(antipodal_disk_contacts(0.75));
    CHECK(force_closure(ws));
    auto oracle = fc_oracle(ws, 10000, 7777);
    CHECK(oracle.fc);
  }
}

TEST_CASE("ferrari_canny: octahedron facet distance") {
  auto ws = octahedron_set();
  CHECK(force_closure(ws));
  CHECK(std::abs(ferrari_canny(ws) - 1.0 / std::sqrt(3.0)) <= 1e-9);
}

TEST_CASE("ferrari_canny: zero without force closure, homogeneous under scaling") {
  auto cs0 = antipodal_disk_contacts(0.0);
  CHECK(ferrari_canny(build_wrench_set(cs0)) == 0.0);

  auto ws = build_wrench_set(antipodal_disk_contacts(0.75));
  const double eps = ferrari_canny(ws);
  REQUIRE(eps > 0.0);
  for (double c : {0.5, 2.0, 17.0}) {
    WrenchSet scaled = ws;
    for (auto& w : scaled.wrenches) w *= c;
    CHECK(ferrari_canny(scaled) == doctest::Approx(c * eps).epsilon(1e-9));
  }
}

TEST_CASE("grasp_quality: centered grasp beats end grasp on a long bar") {
  // 2 x 0.4 bar (meters scaled down: 0.2 x 0.04), contacts across the width.
  auto bar_contacts = [](double x) {
    ContactSet2D cs;
    cs.mu = 0.75;
    cs.com = {0.0, 0.0};
    cs.rho = std::hypot(0.1, 0.02);
    cs.contacts.push_back({{x, 0.02}, {0.0, -1.0}, JawLabel::kWideA});
    cs.contacts.push_back({{x, -0.02}, {0.0, 1.0}, JawLabel::kNarrow});
    return cs;
  };
  const auto centered = grasp_quality(bar_contacts(0.0));
  const auto end = grasp_quality(bar_contacts(0.095));
  REQUIRE(centered.force_closure);
  CHECK(end.epsilon < centered.epsilon);
}

TEST_CASE("grasp_quality: superset and friction monotonicity examples") {
  ContactSet2D cs;
  cs.mu = 0.75;
  cs.com = {0.0, 0.0};
  cs.rho = 0.05;
  cs.contacts.push_back({{0.015, 0.05}, {0.0, -1.0}, JawLabel::kWideA});
  cs.contacts.push_back({{-0.015, 0.05}, {0.0, -1.0}, JawLabel::kWideB});
  cs.contacts.push_back({{0.0, -0.05}, {0.0, 1.0}, JawLabel::kNarrow});

  ContactSet2D two = cs;
  two.contacts.erase(two.contacts.begin());  // drop one wide contact
  CHECK(grasp_quality(cs).epsilon >= grasp_quality(two).epsilon - 1e-9);

  ContactSet2D low = cs;
  low.mu = 0.4;
  CHECK(grasp_quality(cs).epsilon >= grasp_quality(low).epsilon - 1e-9);
}

TEST_CASE("properties: monotonicity, invariance, oracle agreement") {
  Rng rng(20240817);
  int fc_count = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_int(2));
    ContactSet2D cs = random_contact_set(rng, n);

    // epsilon > 0 iff force closure, exactly.
    const auto ws = build_wrench_set(cs);
    const bool fc = force_closure(ws);
    const double eps = ferrari_canny(ws);
    CHECK((eps > 0.0) == fc);
    fc_count += fc;

    // Superset monotonicity: add one contact.
    ContactSet2D bigger = cs;
    bigger.contacts.push_back(random_contact_set(rng, 1).contacts[0]);
    if (bigger.contacts.size() <= 3)
      CHECK(ferrari_canny(build_wrench_set(bigger)) >= eps - 1e-9);

    // Friction monotonicity over a mu grid.
    double prev = -1.0;
    for (double mu = 0.2; mu <= 1.0 + 1e-12; mu += 0.2) {
      ContactSet2D c2 = cs;
      c2.mu = mu;
      const double e = ferrari_canny(build_wrench_set(c2));
      CHECK(e >= prev - 1e-9);
      prev = e;
    }

    // Rigid-motion invariance about the com.
    const double theta = rng.uniform(0.0, 2.0 * M_PI);
    ContactSet2D rot = cs;
    for (auto& c : rot.contacts) {
      c.position = cs.com + (c.position - cs.com).rotated(theta);
      c.inward_normal = c.inward_normal.rotated(theta);
    }
    CHECK(std::abs(ferrari_canny(build_wrench_set(rot)) - eps) <= 1e-9);

    // Scale invariance with rho scaled along.
    const double s = rng.uniform(0.3, 3.0);
    ContactSet2D scaled = cs;
    scaled.rho = cs.rho * s;
    for (auto& c : scaled.contacts) c.position = cs.com + (c.position - cs.com) * s;
    CHECK(std::abs(ferrari_canny(build_wrench_set(scaled)) - eps) <= 1e-9);

    // Force-closure agreement with the sampling oracle outside the margin band.
    const auto oracle = fc_oracle(ws, 10000, 1000 + static_cast<std::uint64_t>(trial));
    if (std::abs(oracle.min_support) > kForceClosureMargin) CHECK(fc == oracle.fc);
  }
  CHECK(fc_count > 5);  // the generator must exercise both outcomes
  CHECK(fc_count < 95);
}

TEST_CASE("spatial wrench sets: three-contact closure and 6D epsilon") {
  // Box pinch: two wide contacts on one face, narrow on the opposite face.
  ContactSet3D cs;
  cs.mu = 0.75;
  cs.com = Eigen::Vector3d::Zero();
  cs.rho = 0.05;
  cs.contacts.push_back({{0.015, 0.02, 0.01}, {0, -1, 0}, JawLabel::kWideA});
  cs.contacts.push_back({{-0.015, 0.02, 0.01}, {0, -1, 0}, JawLabel::kWideB});
  cs.contacts.push_back({{0.0, -0.02, 0.01}, {0, 1, 0}, JawLabel::kNarrow});
  const auto q = grasp_quality(cs, 8);
  CHECK(q.force_closure);
  CHECK(q.epsilon > 0.0);

  // Dropping a wide contact cannot raise epsilon.
  ContactSet3D two = cs;
  two.contacts.erase(two.contacts.begin());
  const auto q2 = grasp_quality(two, 8);
  CHECK(q2.epsilon <= q.epsilon + 1e-9);

  // Rigid-motion invariance in 6D.
  const Eigen::AngleAxisd rot(0.9, Eigen::Vector3d(1, 2, 3).normalized());
  ContactSet3D moved = cs;
  for (auto& c : moved.contacts) {
    c.position = rot * c.position;
    c.inward_normal = rot * c.inward_normal;
  }
  moved.com = rot * cs.com;
  const auto qm = grasp_quality(moved, 8);
  CHECK(std::abs(qm.epsilon - q.epsilon) <= 1e-9);
}

}  // TEST_SUITE

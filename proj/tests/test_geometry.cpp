#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qring/geometry.hpp"
#include "qring/manifolds.hpp"

using namespace qring;
using std::numbers::pi;

namespace {

double nearest_neighbor(const EmitterArray& g, int ring) {
  double best = 1e300;
  for (int i = 0; i < g.size(); ++i) {
    for (int j = i + 1; j < g.size(); ++j) {
      if (g.ring_of[i] == ring && g.ring_of[j] == ring) {
        best = std::min(best, (g.positions[i] - g.positions[j]).norm());
      }
    }
  }
  return best;
}

// rotating all positions by 2pi/n_d must permute them within each ring
void check_rotation_invariance(const EmitterArray& g) {
  const double c = std::cos(2.0 * pi / g.n_d), s = std::sin(2.0 * pi / g.n_d);
  for (int k = 0; k < g.size(); ++k) {
    const Eigen::Vector3d& p = g.positions[k];
    const Eigen::Vector3d q(c * p.x() - s * p.y(), s * p.x() + c * p.y(), 0.0);
    double best = 1e300;
    int match = -1;
    for (int j = 0; j < g.size(); ++j) {
      const double d = (g.positions[j] - q).norm();
      if (d < best) {
        best = d;
        match = j;
      }
    }
    CHECK(best < 1e-12);
    CHECK(g.ring_of[match] == g.ring_of[k]);
  }
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("hexagon radius equals the spacing") {
  const EmitterArray g = build_ring(6, 0.13);
  for (const auto& p : g.positions) CHECK(std::abs(p.norm() - 0.13) < 1e-15);
  // positions on the circle at the expected angles
  for (int k = 0; k < 6; ++k) {
    const double phi = 2.0 * pi * k / 6;
    const Eigen::Vector3d ref(0.13 * std::cos(phi), 0.13 * std::sin(phi), 0.0);
    CHECK((g.positions[k] - ref).norm() < 1e-14);
  }
}

TEST_CASE("two emitters sit a diameter apart on the x-axis") {
  const EmitterArray g = build_ring(2, 0.3);
  CHECK(g.size() == 2);
  CHECK(std::abs((g.positions[0] - g.positions[1]).norm() - 0.3) < 1e-15);
  CHECK(std::abs(g.positions[0].y()) < 1e-15);
  CHECK(std::abs(g.positions[1].y()) < 1e-12);
}

TEST_CASE("square ring reproduces its nearest-neighbor spacing") {
  const EmitterArray g = build_ring(4, 0.2);
  CHECK(std::abs(nearest_neighbor(g, 0) - 0.2) < 1e-14);
}

TEST_CASE("spacing identity a = 2 R sin(pi/n) for all builders") {
  for (int n = 2; n <= 8; ++n) {
    const EmitterArray g = build_ring(n, 0.11);
    const double radius = g.positions[0].norm();
    CHECK(std::abs(0.11 - 2.0 * radius * std::sin(pi / n)) < 1e-12);
  }
}

TEST_CASE("ring plus center: center equidistant from the ring") {
  const EmitterArray g = build_ring_plus_center(6, 0.16);
  CHECK(g.size() == 7);
  CHECK(g.ring_of[0] == 0);
  for (int k = 1; k <= 6; ++k) {
    CHECK(g.ring_of[k] == 1);
    CHECK(std::abs((g.positions[k] - g.positions[0]).norm() - 0.16) < 1e-14);
  }
}

TEST_CASE("triangle plus center: minimum distance is the circumradius") {
  const EmitterArray g = build_ring_plus_center(3, 0.1);
  CHECK(g.size() == 4);
  const double radius = 0.1 / (2.0 * std::sin(pi / 3.0));
  CHECK(std::abs(g.min_pair_distance() - radius) < 1e-14);
}

TEST_CASE("double ring: per-ring spacings and indexing") {
  const EmitterArray g = build_double_ring(6, 0.16, 2.2);
  CHECK(g.size() == 12);
  CHECK(std::abs(nearest_neighbor(g, 0) - 0.16) < 1e-12);
  CHECK(std::abs(nearest_neighbor(g, 1) - 0.16 * 2.2) < 1e-12);
  for (int k = 0; k < 6; ++k) CHECK(g.ring_of[k] == 0);
  for (int k = 6; k < 12; ++k) CHECK(g.ring_of[k] == 1);
}

TEST_CASE("rotation by 2pi/n permutes every oligomer") {
  check_rotation_invariance(build_ring(5, 0.21));
  check_rotation_invariance(build_ring_plus_center(6, 0.12));
  check_rotation_invariance(build_double_ring(6, 0.1, 2.0));
  check_rotation_invariance(build_double_ring(6, 0.1, 2.0, 0.37));  // twisted
}

TEST_CASE("json round trip regenerates identical positions") {
  const EmitterArray cases[] = {
      build_ring(5, 0.21),
      build_ring_plus_center(6, 0.16),
      build_double_ring(6, 0.16, 2.2, 0.1),
  };
  for (const auto& g : cases) {
    const EmitterArray back = geometry_from_json(geometry_to_json(g));
    REQUIRE(back.size() == g.size());
    for (int k = 0; k < g.size(); ++k) {
      CHECK((back.positions[k] - g.positions[k]).norm() < 1e-15);
    }
    CHECK(back.tag == g.tag);
  }
}

TEST_CASE("custom point sets have no json schema") {
  const EmitterArray g = from_points({{0.0, 0.0, 0.0}, {0.3, 0.0, 0.0}});
  CHECK_THROWS_AS(geometry_to_json(g), std::domain_error);
  CHECK_THROWS_AS(geometry_from_json(R"({"tag":"pentagram","n_d":5,"a":0.1})"),
                  std::domain_error);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(build_ring(1, 0.1), std::domain_error);
  CHECK_THROWS_AS(build_ring(6, 0.0), std::domain_error);
  CHECK_THROWS_AS(build_ring(6, -0.1), std::domain_error);
  CHECK_THROWS_AS(build_double_ring(6, 0.1, 1.0), std::domain_error);
  CHECK_THROWS_AS(build_double_ring(6, 0.1, 0.5), std::domain_error);
  CHECK_THROWS_AS(from_points({{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}), std::domain_error);
}

}  // TEST_SUITE

#include "qring/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace qring {

namespace {

void check_distinct(const EmitterArray& g) {
  if (g.min_pair_distance() <= 0.0) {
    throw std::domain_error("geometry: coincident emitter positions");
  }
}

std::vector<Eigen::Vector3d> circle(int n_d, double radius, double twist) {
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(n_d);
  for (int k = 0; k < n_d; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / n_d + twist;
    pts.emplace_back(radius * std::cos(phi), radius * std::sin(phi), 0.0);
  }
  return pts;
}

}  // namespace

double EmitterArray::min_pair_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      best = std::min(best, (positions[i] - positions[j]).norm());
    }
  }
  return best;
}

double ring_radius(int n_d, double spacing) {
  return spacing / (2.0 * std::sin(std::numbers::pi / n_d));
}

EmitterArray build_ring(int n_d, double spacing) {
  if (n_d < 2) throw std::domain_error("build_ring: need at least 2 emitters");
  if (!(spacing > 0.0)) throw std::domain_error("build_ring: spacing must be positive");
  EmitterArray g;
  g.tag = OligomerTag::Ring;
  g.n_d = n_d;
  g.spacing = spacing;
  g.positions = circle(n_d, ring_radius(n_d, spacing), 0.0);
  g.ring_of.assign(n_d, 0);
  check_distinct(g);
  return g;
}

EmitterArray build_ring_plus_center(int n_d, double spacing) {
  EmitterArray ring = build_ring(n_d, spacing);
  EmitterArray g;
  g.tag = OligomerTag::RingPlusCenter;
  g.n_d = n_d;
  g.spacing = spacing;
  g.positions.push_back(Eigen::Vector3d::Zero());
  g.ring_of.push_back(0);
  for (const auto& p : ring.positions) g.positions.push_back(p);
  g.ring_of.insert(g.ring_of.end(), n_d, 1);
  check_distinct(g);
  return g;
}

EmitterArray build_double_ring(int n_d, double spacing, double ratio, double twist) {
  if (n_d < 2) throw std::domain_error("build_double_ring: need at least 2 emitters per ring");
  if (!(spacing > 0.0)) throw std::domain_error("build_double_ring: spacing must be positive");
  if (!(ratio > 1.0)) throw std::domain_error("build_double_ring: outer/inner ratio must exceed 1");
  EmitterArray g;
  g.tag = OligomerTag::DoubleRing;
  g.n_d = n_d;
  g.spacing = spacing;
  g.ratio = ratio;
  g.twist = twist;
  g.positions = circle(n_d, ring_radius(n_d, spacing), 0.0);
  const auto outer = circle(n_d, ring_radius(n_d, ratio * spacing), twist);
  g.positions.insert(g.positions.end(), outer.begin(), outer.end());
  g.ring_of.assign(n_d, 0);
  g.ring_of.insert(g.ring_of.end(), n_d, 1);
  check_distinct(g);
  return g;
}

EmitterArray from_points(std::vector<Eigen::Vector3d> points) {
  if (points.empty()) throw std::domain_error("from_points: empty point set");
  EmitterArray g;
  g.tag = OligomerTag::Custom;
  g.positions = std::move(points);
  g.ring_of.assign(g.positions.size(), 0);
  check_distinct(g);
  return g;
}

namespace {

const char* tag_name(OligomerTag t) {
  switch (t) {
    case OligomerTag::Ring: return "ring";
    case OligomerTag::RingPlusCenter: return "ring-center";
    case OligomerTag::DoubleRing: return "double-ring";
    default: return "custom";
  }
}

}  // namespace

std::string geometry_to_json(const EmitterArray& g) {
  if (g.tag == OligomerTag::Custom) {
    throw std::domain_error("geometry_to_json: custom point sets have no JSON schema");
  }
  nlohmann::json j;
  j["tag"] = tag_name(g.tag);
  j["n_d"] = g.n_d;
  j["a"] = g.spacing;
  if (g.tag == OligomerTag::DoubleRing) {
    j["b_over_a"] = g.ratio;
  } else {
    j["b_over_a"] = nullptr;
  }
  j["twist"] = g.twist;
  return j.dump();
}

EmitterArray geometry_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const std::string tag = j.at("tag").get<std::string>();
  const int n_d = j.at("n_d").get<int>();
  const double a = j.at("a").get<double>();
  if (tag == "ring") return build_ring(n_d, a);
  if (tag == "ring-center") return build_ring_plus_center(n_d, a);
  if (tag == "double-ring") {
    const double ratio = j.at("b_over_a").get<double>();
    const double twist = j.value("twist", 0.0);
    return build_double_ring(n_d, a, ratio, twist);
  }
  throw std::domain_error("geometry_from_json: unknown tag '" + tag + "'");
}

}  // namespace qring

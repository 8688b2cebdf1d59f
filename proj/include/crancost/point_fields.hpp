#pragma once

// Four-layer point-process geometry: users (PPP), base stations (Thomas
// cluster process: macro parents + Gaussian-displaced micro offspring),
// backhaul (mixed Poisson with a two-point intensity) and data centers (PPP),
// sampled in a finite rectangular window, plus nearest-point association
// between adjacent layers.

#include <cstdint>
#include <vector>

namespace crancost {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Observation window [0,width) x [0,height), km. With `wrap` the window is a
/// torus and all distances use the shortest periodic displacement.
struct Window {
  double width = 10.0;
  double height = 10.0;
  bool wrap = true;

  Window() = default;
  Window(double w, double h, bool wrap_around = true);

  double area() const noexcept { return width * height; }
  bool contains(const Point& p) const noexcept;
  /// Displacement b - a under the window metric.
  Point displacement(const Point& a, const Point& b) const noexcept;
  double distance2(const Point& a, const Point& b) const noexcept;
  double distance(const Point& a, const Point& b) const noexcept;
  /// Maps a point back into the window (torus) or leaves it as is.
  Point wrap_point(Point p) const noexcept;
};

enum class LayerTag { kUsers, kBaseStations, kBackhaul, kDataCenters };

struct PointSet {
  std::vector<Point> points;
  LayerTag layer = LayerTag::kUsers;

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
};

/// Macro base stations are cluster centres; micros carry the index of the
/// macro that spawned them.
struct MarkedBaseStationSet {
  PointSet macros;
  PointSet micros;
  std::vector<std::size_t> parent_of;  // micro index -> macro index

  std::size_t size() const noexcept { return macros.size() + micros.size(); }
  /// Macros first, then micros, as one base-station layer.
  PointSet combined() const;
};

enum class BackhaulKind { kMicrowave, kFiber };

struct BackhaulDraw {
  PointSet nodes;
  BackhaulKind realized = BackhaulKind::kMicrowave;
};

/// lower_to_upper[i] is the index of the upper-layer point nearest to lower point i.
struct AssignmentMap {
  std::vector<std::size_t> lower_to_upper;

  std::size_t size() const noexcept { return lower_to_upper.size(); }
  /// Number of lower points assigned to each of `upper_count` upper points.
  std::vector<std::size_t> counts(std::size_t upper_count) const;
};

PointSet sample_ppp(double intensity, const Window& window, std::uint64_t seed,
                    LayerTag layer = LayerTag::kUsers);

BackhaulDraw sample_backhaul(double p_microwave, double microwave_intensity, double fiber_intensity,
                             const Window& window, std::uint64_t seed);

MarkedBaseStationSet sample_cluster_bs(double parent_intensity, double mean_offspring, double sigma,
                                       const Window& window, std::uint64_t seed);

/// Nearest-point (Voronoi) association; ties go to the lowest upper index.
/// Throws AssignmentError when `upper` is empty and `lower` is not.
AssignmentMap nearest_assign(const PointSet& lower, const PointSet& upper, const Window& window);

/// Distance from each point to the nearest other point of the same set
/// (infinity for a lone point).
std::vector<double> nearest_neighbor_distances(const PointSet& points, const Window& window);

}  // namespace crancost

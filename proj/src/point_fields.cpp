#include "crancost/point_fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <boost/random/poisson_distribution.hpp>

#include "crancost/errors.hpp"
#include "crancost/seeding.hpp"

namespace crancost {

Window::Window(double w, double h, bool wrap_around) : width(w), height(h), wrap(wrap_around) {
  if (!(w > 0.0) || !(h > 0.0) || !std::isfinite(w) || !std::isfinite(h)) {
    throw ParameterError("window dimensions must be positive and finite");
  }
}

bool Window::contains(const Point& p) const noexcept {
  return p.x >= 0.0 && p.x < width && p.y >= 0.0 && p.y < height;
}

Point Window::displacement(const Point& a, const Point& b) const noexcept {
  double dx = b.x - a.x;
  double dy = b.y - a.y;
  if (wrap) {
    if (dx > 0.5 * width) dx -= width;
    else if (dx < -0.5 * width) dx += width;
    if (dy > 0.5 * height) dy -= height;
    else if (dy < -0.5 * height) dy += height;
  }
  return {dx, dy};
}

double Window::distance2(const Point& a, const Point& b) const noexcept {
  const Point d = displacement(a, b);
  return d.x * d.x + d.y * d.y;
}

double Window::distance(const Point& a, const Point& b) const noexcept {
  return std::sqrt(distance2(a, b));
}

Point Window::wrap_point(Point p) const noexcept {
  if (!wrap) return p;
  p.x = std::fmod(p.x, width);
  if (p.x < 0.0) p.x += width;
  p.y = std::fmod(p.y, height);
  if (p.y < 0.0) p.y += height;
  // fmod can return exactly `width` after the negative shift in rare rounding cases.
  if (p.x >= width) p.x = 0.0;
  if (p.y >= height) p.y = 0.0;
  return p;
}

PointSet MarkedBaseStationSet::combined() const {
  PointSet out;
  out.layer = LayerTag::kBaseStations;
  out.points.reserve(size());
  out.points.insert(out.points.end(), macros.points.begin(), macros.points.end());
  out.points.insert(out.points.end(), micros.points.begin(), micros.points.end());
  return out;
}

std::vector<std::size_t> AssignmentMap::counts(std::size_t upper_count) const {
  std::vector<std::size_t> out(upper_count, 0);
  for (std::size_t u : lower_to_upper) ++out.at(u);
  return out;
}

namespace {

void require_intensity(double value, const char* name) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw ParameterError(std::string(name) + " must be a finite non-negative intensity");
  }
}

std::size_t poisson_count(double mean, Engine& rng) {
  if (mean <= 0.0) return 0;
  boost::random::poisson_distribution<long long, double> count(mean);
  return static_cast<std::size_t>(count(rng));
}

void fill_uniform(std::vector<Point>& pts, std::size_t n, const Window& window, Engine& rng) {
  std::uniform_real_distribution<double> ux(0.0, window.width);
  std::uniform_real_distribution<double> uy(0.0, window.height);
  pts.reserve(pts.size() + n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = ux(rng);
    const double y = uy(rng);
    pts.push_back({x, y});
  }
}

}  // namespace

PointSet sample_ppp(double intensity, const Window& window, std::uint64_t seed, LayerTag layer) {
  require_intensity(intensity, "intensity");
  PointSet out;
  out.layer = layer;
  Engine rng(seed);
  const std::size_t n = poisson_count(intensity * window.area(), rng);
  fill_uniform(out.points, n, window, rng);
  return out;
}

BackhaulDraw sample_backhaul(double p_microwave, double microwave_intensity, double fiber_intensity,
                             const Window& window, std::uint64_t seed) {
  if (!(p_microwave >= 0.0 && p_microwave <= 1.0)) {
    throw ParameterError("microwave probability p must lie in [0,1]");
  }
  require_intensity(microwave_intensity, "microwave backhaul intensity");
  require_intensity(fiber_intensity, "fiber backhaul intensity");

  BackhaulDraw draw;
  Engine coin(derive_seed(seed, 0, 0));
  std::bernoulli_distribution is_microwave(p_microwave);
  draw.realized = is_microwave(coin) ? BackhaulKind::kMicrowave : BackhaulKind::kFiber;
  const double intensity =
      draw.realized == BackhaulKind::kMicrowave ? microwave_intensity : fiber_intensity;
  draw.nodes = sample_ppp(intensity, window, derive_seed(seed, 1, 0), LayerTag::kBackhaul);
  return draw;
}

MarkedBaseStationSet sample_cluster_bs(double parent_intensity, double mean_offspring, double sigma,
                                       const Window& window, std::uint64_t seed) {
  require_intensity(parent_intensity, "cluster-centre intensity");
  require_intensity(mean_offspring, "mean offspring count");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ParameterError("cluster kernel standard deviation sigma must be positive");
  }

  MarkedBaseStationSet out;
  out.macros = sample_ppp(parent_intensity, window, derive_seed(seed, 0, 0), LayerTag::kBaseStations);
  out.micros.layer = LayerTag::kBaseStations;
  if (mean_offspring <= 0.0) return out;

  Engine rng(derive_seed(seed, 1, 0));
  boost::random::poisson_distribution<long long, double> offspring(mean_offspring);
  std::normal_distribution<double> kernel(0.0, sigma);
  for (std::size_t parent = 0; parent < out.macros.size(); ++parent) {
    const Point& centre = out.macros.points[parent];
    const auto n = offspring(rng);
    for (long long k = 0; k < n; ++k) {
      const double dx = kernel(rng);
      const double dy = kernel(rng);
      const Point p = window.wrap_point({centre.x + dx, centre.y + dy});
      if (!window.contains(p)) continue;  // only reachable without wrap
      out.micros.points.push_back(p);
      out.parent_of.push_back(parent);
    }
  }
  return out;
}

namespace {

// Uniform bucket grid over the window, CSR layout. Each bucket lists its
// points in ascending index order.
class BucketGrid {
 public:
  BucketGrid(const PointSet& pts, const Window& window) : window_(window) {
    const double n = static_cast<double>(std::max<std::size_t>(pts.size(), 1));
    const double target = std::sqrt(2.0 * window.area() / n);
    nx_ = std::clamp<long>(static_cast<long>(window.width / target), 1, 4096);
    ny_ = std::clamp<long>(static_cast<long>(window.height / target), 1, 4096);
    cw_ = window.width / static_cast<double>(nx_);
    ch_ = window.height / static_cast<double>(ny_);

    start_.assign(static_cast<std::size_t>(nx_ * ny_) + 1, 0);
    std::vector<std::size_t> cell_of(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      cell_of[i] = cell_index(pts.points[i]);
      ++start_[cell_of[i] + 1];
    }
    for (std::size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];
    items_.resize(pts.size());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < pts.size(); ++i) items_[fill[cell_of[i]]++] = i;
    stamp_.assign(static_cast<std::size_t>(nx_ * ny_), 0);
  }

  std::size_t nearest(const Point& q, const std::vector<Point>& pts,
                      std::size_t exclude = std::numeric_limits<std::size_t>::max()) {
    ++epoch_;
    const long ci = std::clamp<long>(static_cast<long>(q.x / cw_), 0, nx_ - 1);
    const long cj = std::clamp<long>(static_cast<long>(q.y / ch_), 0, ny_ - 1);
    const double cell_min = std::min(cw_, ch_);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_index = std::numeric_limits<std::size_t>::max();

    for (long k = 0;; ++k) {
      for (long di = -k; di <= k; ++di) {
        for (long dj = -k; dj <= k; ++dj) {
          if (std::max(std::labs(di), std::labs(dj)) != k) continue;
          long a = ci + di;
          long b = cj + dj;
          if (window_.wrap) {
            a = ((a % nx_) + nx_) % nx_;
            b = ((b % ny_) + ny_) % ny_;
          } else if (a < 0 || a >= nx_ || b < 0 || b >= ny_) {
            continue;
          }
          const auto cell = static_cast<std::size_t>(a * ny_ + b);
          if (stamp_[cell] == epoch_) continue;
          stamp_[cell] = epoch_;
          for (std::size_t s = start_[cell]; s < start_[cell + 1]; ++s) {
            const std::size_t idx = items_[s];
            if (idx == exclude) continue;
            const double d2 = window_.distance2(q, pts[idx]);
            if (d2 < best || (d2 == best && idx < best_index)) {
              best = d2;
              best_index = idx;
            }
          }
        }
      }
      // Every unvisited bucket is at least k * cell_min away.
      const double reach = static_cast<double>(k) * cell_min;
      if (best < reach * reach) break;
      if (2 * k + 1 >= nx_ && 2 * k + 1 >= ny_ && (window_.wrap || k >= std::max(nx_, ny_))) break;
    }
    return best_index;
  }

 private:
  std::size_t cell_index(const Point& p) const {
    const long a = std::clamp<long>(static_cast<long>(p.x / cw_), 0, nx_ - 1);
    const long b = std::clamp<long>(static_cast<long>(p.y / ch_), 0, ny_ - 1);
    return static_cast<std::size_t>(a * ny_ + b);
  }

  Window window_;
  long nx_ = 1;
  long ny_ = 1;
  double cw_ = 1.0;
  double ch_ = 1.0;
  std::vector<std::size_t> start_;
  std::vector<std::size_t> items_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t epoch_ = 0;
};

}  // namespace

AssignmentMap nearest_assign(const PointSet& lower, const PointSet& upper, const Window& window) {
  AssignmentMap out;
  if (lower.empty()) return out;
  if (upper.empty()) {
    throw AssignmentError("cannot assign " + std::to_string(lower.size()) +
                          " points to an empty upper layer");
  }
  BucketGrid grid(upper, window);
  out.lower_to_upper.resize(lower.size());
  for (std::size_t i = 0; i < lower.size(); ++i) {
    out.lower_to_upper[i] = grid.nearest(lower.points[i], upper.points);
  }
  return out;
}

std::vector<double> nearest_neighbor_distances(const PointSet& points, const Window& window) {
  std::vector<double> out(points.size(), std::numeric_limits<double>::infinity());
  if (points.size() < 2) return out;
  BucketGrid grid(points, window);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::size_t j = grid.nearest(points.points[i], points.points, i);
    out[i] = window.distance(points.points[i], points.points[j]);
  }
  return out;
}

}  // namespace crancost

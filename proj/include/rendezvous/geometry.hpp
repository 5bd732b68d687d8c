#pragma once

// Points, balls and axis-aligned boxes in R^d, together with minimal enclosing
// ball / orthotope computations used by the consensus and control layers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rendezvous {

/// Geometric tolerance used for enclosure tests and shape equality.
inline constexpr double kDefaultTol = 1e-9;

enum class Norm { two, inf };

class Point {
 public:
  Point() = default;
  explicit Point(std::size_t dim, double fill = 0.0) : coords_(dim, fill) {}
  Point(std::initializer_list<double> coords) : coords_(coords) {}
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t a) const { return coords_[a]; }
  double& operator[](std::size_t a) { return coords_[a]; }
  std::span<const double> coords() const noexcept { return coords_; }

  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  Point& operator+=(const Point& other) {
    check_dim(other);
    for (std::size_t a = 0; a < dim(); ++a) coords_[a] += other.coords_[a];
    return *this;
  }
  Point& operator-=(const Point& other) {
    check_dim(other);
    for (std::size_t a = 0; a < dim(); ++a) coords_[a] -= other.coords_[a];
    return *this;
  }
  Point& operator*=(double s) noexcept {
    for (auto& c : coords_) c *= s;
    return *this;
  }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  void check_dim(const Point& other) const {
    if (other.dim() != dim()) {
      throw std::domain_error("point dimension mismatch: " + std::to_string(dim()) + " vs " +
                              std::to_string(other.dim()));
    }
  }

  std::vector<double> coords_;
};

inline Point operator+(Point a, const Point& b) { return a += b; }
inline Point operator-(Point a, const Point& b) { return a -= b; }
inline Point operator*(Point a, double s) { return a *= s; }
inline Point operator*(double s, Point a) { return a *= s; }

inline double dot(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) throw std::domain_error("point dimension mismatch in dot product");
  double s = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) s += a[k] * b[k];
  return s;
}

inline double norm(const Point& v, Norm which = Norm::two) {
  if (which == Norm::inf) {
    double m = 0.0;
    for (double c : v) m = std::max(m, std::abs(c));
    return m;
  }
  return std::sqrt(dot(v, v));
}

inline double distance(const Point& a, const Point& b, Norm which = Norm::two) {
  return norm(a - b, which);
}

/// Unit vector along v; the zero vector maps to itself.
inline Point vers(const Point& v) {
  const double len = norm(v);
  if (len == 0.0) return Point(v.dim());
  return v * (1.0 / len);
}

struct Ball {
  Point center;
  double radius = 0.0;

  std::size_t dim() const noexcept { return center.dim(); }
  bool contains(const Point& p, double tol = kDefaultTol) const {
    return distance(center, p) <= radius + tol;
  }
};

inline bool same_ball(const Ball& a, const Ball& b, double tol = kDefaultTol) {
  return a.dim() == b.dim() && std::abs(a.radius - b.radius) <= tol &&
         distance(a.center, b.center) <= tol;
}

/// Axis-aligned box stored as its lower and upper corners.
struct Orthotope {
  Point lo;
  Point hi;

  std::size_t dim() const noexcept { return lo.dim(); }
  double side(std::size_t a) const { return hi[a] - lo[a]; }
  double max_side() const {
    double m = 0.0;
    for (std::size_t a = 0; a < dim(); ++a) m = std::max(m, side(a));
    return m;
  }
  bool contains(const Point& p, double tol = kDefaultTol) const {
    if (p.dim() != dim()) return false;
    for (std::size_t a = 0; a < dim(); ++a) {
      if (p[a] < lo[a] - tol || p[a] > hi[a] + tol) return false;
    }
    return true;
  }
};

inline bool same_orthotope(const Orthotope& a, const Orthotope& b, double tol = kDefaultTol) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    if (std::abs(a.lo[k] - b.lo[k]) > tol || std::abs(a.hi[k] - b.hi[k]) > tol) return false;
  }
  return true;
}

inline const Point& ball_center(const Ball& b) noexcept { return b.center; }

inline Point orthotope_center(const Orthotope& box) {
  Point c(box.dim());
  for (std::size_t a = 0; a < box.dim(); ++a) c[a] = 0.5 * (box.lo[a] + box.hi[a]);
  return c;
}

namespace detail {

inline std::size_t checked_dim(std::span<const Point> points) {
  if (points.empty()) throw std::domain_error("pointset is empty");
  const std::size_t d = points.front().dim();
  if (d == 0) throw std::domain_error("points must have dimension >= 1");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].dim() != d) {
      throw std::domain_error("point " + std::to_string(i) + " has dimension " +
                              std::to_string(points[i].dim()) + ", expected " + std::to_string(d));
    }
  }
  return d;
}

// Smallest ball having every support point on its boundary. The center lies in
// the affine hull of the support; nullopt when the support is affinely dependent.
inline std::optional<Ball> circumball(std::span<const Point> points, std::span<const std::size_t> support) {
  const Point& origin = points[support[0]];
  const std::size_t k = support.size() - 1;
  if (k == 0) return Ball{origin, 0.0};

  std::vector<Point> v;
  v.reserve(k);
  double scale = 0.0;
  for (std::size_t j = 1; j <= k; ++j) {
    v.push_back(points[support[j]] - origin);
    scale = std::max(scale, dot(v.back(), v.back()));
  }

  // Gram system 2 <v_j, v_l> lambda_l = <v_j, v_j>, partial pivoting.
  std::vector<std::vector<double>> m(k, std::vector<double>(k + 1));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t l = 0; l < k; ++l) m[j][l] = 2.0 * dot(v[j], v[l]);
    m[j][k] = dot(v[j], v[j]);
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    }
    if (std::abs(m[piv][col]) <= 1e-12 * scale) return std::nullopt;
    std::swap(m[piv], m[col]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c <= k; ++c) m[r][c] -= f * m[col][c];
    }
  }

  Point center = origin;
  for (std::size_t j = 0; j < k; ++j) center += v[j] * (m[j][k] / m[j][j]);
  double radius = 0.0;
  for (std::size_t idx : support) radius = std::max(radius, distance(center, points[idx]));
  return Ball{std::move(center), radius};
}

/// Fixed seed of the move-to-front shuffle; results are reproducible run to run.
inline constexpr std::uint64_t kMebShuffleSeed = 0x5eedba11u;

struct SupportedBall {
  Ball ball;
  std::vector<std::size_t> support;
};

// Move-to-front smallest enclosing ball (Welzl recursion, Gaertner's ordering).
class MoveToFrontMeb {
 public:
  MoveToFrontMeb(std::span<const Point> points, std::size_t dim) : points_(points), dim_(dim) {
    order_.resize(points.size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
    std::mt19937_64 engine(kMebShuffleSeed);
    for (std::size_t i = order_.size(); i > 1; --i) {
      std::swap(order_[i - 1], order_[engine() % i]);
    }
  }

  SupportedBall solve() {
    std::vector<std::size_t> boundary;
    return recurse(order_.size(), boundary);
  }

 private:
  bool outside(const Ball& ball, double r, const Point& p) const {
    if (r < 0.0) return true;
    return distance(ball.center, p) > r + 1e-12 * std::max(1.0, r);
  }

  SupportedBall recurse(std::size_t end, std::vector<std::size_t>& boundary) {
    SupportedBall best;
    double r = -1.0;
    if (!boundary.empty()) {
      best.support = boundary;
      if (auto b = circumball(points_, boundary)) {
        best.ball = std::move(*b);
      } else {
        // Numerically dependent support: keep the previous center and grow to
        // reach the newest point so enclosure still holds.
        std::vector<std::size_t> prev(boundary.begin(), boundary.end() - 1);
        Ball base = prev.empty() ? Ball{points_[boundary.back()], 0.0}
                                 : circumball(points_, prev).value_or(Ball{points_[prev.front()], 0.0});
        base.radius = std::max(base.radius, distance(base.center, points_[boundary.back()]));
        best.ball = std::move(base);
      }
      r = best.ball.radius;
    }
    if (boundary.size() == dim_ + 1) return best;

    for (std::size_t k = 0; k < end; ++k) {
      const std::size_t idx = order_[k];
      if (!outside(best.ball, r, points_[idx])) continue;
      boundary.push_back(idx);
      best = recurse(k, boundary);
      boundary.pop_back();
      r = best.ball.radius;
      std::rotate(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(k),
                  order_.begin() + static_cast<std::ptrdiff_t>(k) + 1);
    }
    return best;
  }

  std::span<const Point> points_;
  std::size_t dim_;
  std::vector<std::size_t> order_;
};

}  // namespace detail

inline Ball minimal_enclosing_ball(std::span<const Point> points) {
  const std::size_t d = detail::checked_dim(points);
  return detail::MoveToFrontMeb(points, d).solve().ball;
}

/// Indices (ascending) of a minimal support set: at most d+1 points whose
/// minimal enclosing ball equals the ball of the whole set. Among equivalent
/// sets the lower indices are kept.
inline std::vector<std::size_t> meb_support_indices(std::span<const Point> points, double tol = kDefaultTol) {
  const std::size_t d = detail::checked_dim(points);
  const Ball full = minimal_enclosing_ball(points);

  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (distance(full.center, points[i]) >= full.radius - tol) support.push_back(i);
  }

  auto ball_of = [&](const std::vector<std::size_t>& idx) {
    std::vector<Point> sub;
    sub.reserve(idx.size());
    for (std::size_t i : idx) sub.push_back(points[i]);
    return minimal_enclosing_ball(sub);
  };

  for (std::size_t k = support.size(); k-- > 0;) {
    if (support.size() == 1) break;
    std::vector<std::size_t> trial = support;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(k));
    if (same_ball(ball_of(trial), full, tol)) support = std::move(trial);
  }

  if (support.size() > d + 1) {
    // Only reachable when tolerance blurs cospherical points; search the
    // (d+1)-subsets in lexicographic order.
    std::vector<bool> pick(support.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(d + 1), true);
    do {
      std::vector<std::size_t> trial;
      for (std::size_t k = 0; k < support.size(); ++k) {
        if (pick[k]) trial.push_back(support[k]);
      }
      if (same_ball(ball_of(trial), full, tol)) return trial;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    support.resize(d + 1);
  }
  return support;
}

inline std::vector<Point> meb_boundary(std::span<const Point> points, double tol = kDefaultTol) {
  std::vector<Point> out;
  for (std::size_t i : meb_support_indices(points, tol)) out.push_back(points[i]);
  return out;
}

inline Orthotope minimal_enclosing_orthotope(std::span<const Point> points) {
  detail::checked_dim(points);
  Orthotope box{points.front(), points.front()};
  for (const Point& p : points.subspan(1)) {
    for (std::size_t a = 0; a < p.dim(); ++a) {
      box.lo[a] = std::min(box.lo[a], p[a]);
      box.hi[a] = std::max(box.hi[a], p[a]);
    }
  }
  return box;
}

inline double pointset_diameter(std::span<const Point> points, Norm which = Norm::two) {
  detail::checked_dim(points);
  double diam = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      diam = std::max(diam, distance(points[i], points[j], which));
    }
  }
  return diam;
}

}  // namespace rendezvous

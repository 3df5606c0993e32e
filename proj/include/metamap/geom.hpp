#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace metamap {

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

using Point2d = Point2<double>;

template <typename Scalar>
struct Circle {
  Point2<Scalar> center = Point2<Scalar>::Zero();
  Scalar radius = 0;
};

template <typename Scalar>
struct Segment {
  Point2<Scalar> a;
  Point2<Scalar> b;
};

template <typename Scalar>
struct ClosestPoint {
  Point2<Scalar> point;
  Scalar distance;
};

class DegeneratePolygon : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Relative tolerance of the orientation predicate. The threshold scales with
// the lengths of both arms, so it behaves like 1e-12 on unit-normalized input.
inline constexpr double kOrientEpsilon = 1e-12;

template <typename Scalar>
inline Scalar cross(const Point2<Scalar>& u, const Point2<Scalar>& v) {
  return u.x() * v.y() - u.y() * v.x();
}

/// Sign of the turn a -> b -> c: +1 left (counterclockwise), -1 right,
/// 0 when collinear within tolerance.
template <typename Scalar>
int orientation(const Point2<Scalar>& a, const Point2<Scalar>& b,
                const Point2<Scalar>& c) {
  const Point2<Scalar> ab = b - a;
  const Point2<Scalar> ac = c - a;
  const Scalar det = cross(ab, ac);
  const Scalar tol = Scalar(kOrientEpsilon) * ab.norm() * ac.norm();
  if (det > tol) return 1;
  if (det < -tol) return -1;
  return 0;
}

/// Signed area (shoelace); positive for counterclockwise order.
template <typename Scalar>
Scalar signed_area(std::span<const Point2<Scalar>> poly) {
  const std::size_t n = poly.size();
  Scalar acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += cross(poly[i], poly[(i + 1) % n]);
  }
  return acc / 2;
}

template <typename Scalar>
Scalar polygon_area(std::span<const Point2<Scalar>> poly) {
  if (poly.size() < 3) {
    throw DegeneratePolygon("polygon needs at least 3 points");
  }
  return std::abs(signed_area(poly));
}

template <typename Scalar>
Scalar polygon_perimeter(std::span<const Point2<Scalar>> poly) {
  const std::size_t n = poly.size();
  Scalar acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc += (poly[(i + 1) % n] - poly[i]).norm();
  return acc;
}

/// Andrew's monotone chain. Counterclockwise, collinear points dropped.
template <typename Scalar>
std::vector<Point2<Scalar>> convex_hull(std::span<const Point2<Scalar>> points) {
  std::vector<Point2<Scalar>> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const auto& p, const auto& q) {
    return p.x() < q.x() || (p.x() == q.x() && p.y() < q.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const auto& p, const auto& q) { return p == q; }),
            pts.end());
  if (pts.size() < 3) return pts;

  std::vector<Point2<Scalar>> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && orientation(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    const auto& p = pts[i];
    while (k >= lower && orientation(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

namespace detail {

template <typename Scalar>
bool circle_contains(const Circle<Scalar>& c, const Point2<Scalar>& p) {
  return (p - c.center).norm() <= c.radius * (1 + Scalar(1e-12)) + Scalar(1e-12);
}

template <typename Scalar>
Circle<Scalar> circle_from(const Point2<Scalar>& a, const Point2<Scalar>& b) {
  const Point2<Scalar> c = (a + b) / 2;
  return {c, std::max((a - c).norm(), (b - c).norm())};
}

template <typename Scalar>
Circle<Scalar> circle_from(const Point2<Scalar>& a, const Point2<Scalar>& b,
                           const Point2<Scalar>& c) {
  const Point2<Scalar> ab = b - a;
  const Point2<Scalar> ac = c - a;
  const Scalar d = 2 * cross(ab, ac);
  if (orientation(a, b, c) == 0 || d == 0) {
    // Collinear support: the farthest pair spans the circle.
    Circle<Scalar> best = circle_from(a, b);
    for (const auto& cand : {circle_from(a, c), circle_from(b, c)}) {
      if (cand.radius > best.radius) best = cand;
    }
    return best;
  }
  const Scalar ab2 = ab.squaredNorm();
  const Scalar ac2 = ac.squaredNorm();
  const Point2<Scalar> off((ac.y() * ab2 - ab.y() * ac2) / d,
                           (ab.x() * ac2 - ac.x() * ab2) / d);
  const Point2<Scalar> center = a + off;
  const Scalar r = std::max({(a - center).norm(), (b - center).norm(),
                             (c - center).norm()});
  return {center, r};
}

}  // namespace detail

/// Smallest enclosing circle by Welzl's randomized incremental algorithm.
/// The shuffle uses a fixed seed so results are reproducible.
template <typename Scalar>
Circle<Scalar> min_enclosing_circle(std::span<const Point2<Scalar>> points) {
  if (points.empty()) return {};
  std::vector<Point2<Scalar>> pts(points.begin(), points.end());
  std::mt19937 rng(0x5eedu);
  std::shuffle(pts.begin(), pts.end(), rng);

  Circle<Scalar> c{pts[0], 0};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (detail::circle_contains(c, pts[i])) continue;
    c = {pts[i], 0};
    for (std::size_t j = 0; j < i; ++j) {
      if (detail::circle_contains(c, pts[j])) continue;
      c = detail::circle_from(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (detail::circle_contains(c, pts[k])) continue;
        c = detail::circle_from(pts[i], pts[j], pts[k]);
      }
    }
  }
  return c;
}

namespace detail {

// p lies on the open segment (a, b); assumes collinearity was established.
template <typename Scalar>
bool strictly_inside(const Point2<Scalar>& p, const Point2<Scalar>& a,
                     const Point2<Scalar>& b) {
  return (p - a).dot(b - a) > 0 && (p - b).dot(a - b) > 0;
}

}  // namespace detail

/// True iff the segments share more than common endpoints: a proper crossing,
/// an endpoint strictly inside the other segment, or a collinear overlap of
/// positive length.
template <typename Scalar>
bool segments_properly_intersect(const Point2<Scalar>& p1, const Point2<Scalar>& p2,
                                 const Point2<Scalar>& q1, const Point2<Scalar>& q2) {
  const int d1 = orientation(q1, q2, p1);
  const int d2 = orientation(q1, q2, p2);
  const int d3 = orientation(p1, p2, q1);
  const int d4 = orientation(p1, p2, q2);

  if (d1 * d2 < 0 && d3 * d4 < 0) return true;

  if (d1 == 0 && d2 == 0 && d3 == 0 && d4 == 0) {
    const Point2<Scalar> dir = p2 - p1;
    const Scalar len2 = dir.squaredNorm();
    Scalar t0 = (q1 - p1).dot(dir) / len2;
    Scalar t1 = (q2 - p1).dot(dir) / len2;
    if (t0 > t1) std::swap(t0, t1);
    const Scalar overlap = std::min<Scalar>(1, t1) - std::max<Scalar>(0, t0);
    return overlap > Scalar(1e-12);
  }

  if (d1 == 0 && detail::strictly_inside(p1, q1, q2)) return true;
  if (d2 == 0 && detail::strictly_inside(p2, q1, q2)) return true;
  if (d3 == 0 && detail::strictly_inside(q1, p1, p2)) return true;
  if (d4 == 0 && detail::strictly_inside(q2, p1, p2)) return true;
  return false;
}

template <typename Scalar>
bool segments_properly_intersect(const Segment<Scalar>& s1, const Segment<Scalar>& s2) {
  return segments_properly_intersect(s1.a, s1.b, s2.a, s2.b);
}

template <typename Scalar>
ClosestPoint<Scalar> closest_point_on_segment(const Point2<Scalar>& p,
                                              const Point2<Scalar>& a,
                                              const Point2<Scalar>& b) {
  const Point2<Scalar> ab = b - a;
  const Scalar len2 = ab.squaredNorm();
  Scalar t = len2 > 0 ? (p - a).dot(ab) / len2 : Scalar(0);
  t = std::clamp<Scalar>(t, 0, 1);
  const Point2<Scalar> x = a + t * ab;
  return {x, (p - x).norm()};
}

template <typename Scalar>
ClosestPoint<Scalar> closest_point_on_segment(const Point2<Scalar>& p,
                                              const Segment<Scalar>& s) {
  return closest_point_on_segment(p, s.a, s.b);
}

/// Even-odd test; points on the boundary count as outside.
template <typename Scalar>
bool point_strictly_in_polygon(const Point2<Scalar>& p,
                               std::span<const Point2<Scalar>> poly) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % n];
    if (orientation(a, b, p) == 0 && (p - a).dot(b - a) >= 0 &&
        (p - b).dot(a - b) >= 0) {
      return false;
    }
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = poly[i];
    const auto& b = poly[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const Scalar x = (b.x() - a.x()) * (p.y() - a.y()) / (b.y() - a.y()) + a.x();
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

}  // namespace metamap

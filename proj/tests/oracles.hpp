// Independent reference implementations used as test oracles. They favor
// directness over speed and share no code with the library.
#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using P = Eigen::Vector2d;

inline double cross(const P& a, const P& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Trapezoid rule; positive for counterclockwise order.
inline double signed_area(const std::vector<P>& poly) {
  double s = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const P& a = poly[i];
    const P& b = poly[(i + 1) % poly.size()];
    s += (a.x() - b.x()) * (a.y() + b.y());
  }
  return s / 2;
}

inline double perimeter(const std::vector<P>& poly) {
  double s = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) s += (poly[(i + 1) % poly.size()] - poly[i]).norm();
  return s;
}

/// Gift wrapping; drops collinear points.
inline std::vector<P> hull(std::vector<P> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const P& a, const P& b) { return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y()); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<P> out;
  std::size_t cur = 0;
  do {
    out.push_back(pts[cur]);
    std::size_t next = (cur + 1) % pts.size();
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const double c = cross(pts[next] - pts[cur], pts[k] - pts[cur]);
      // Take the most clockwise candidate; on ties the farthest one.
      if (c < 0 || (c == 0 && (pts[k] - pts[cur]).norm() > (pts[next] - pts[cur]).norm())) {
        next = k;
      }
    }
    cur = next;
  } while (cur != 0 && out.size() <= pts.size());
  return out;
}

struct Disc {
  P c;
  double r;
};

/// Smallest circle over all pair and triple candidates that contains every point.
inline Disc enclosing_circle(const std::vector<P>& pts) {
  const double slack = 1e-9;
  auto contains = [&](const Disc& d) {
    for (const auto& p : pts) {
      if ((p - d.c).norm() > d.r + slack) return false;
    }
    return true;
  };
  Disc best{pts[0], std::numeric_limits<double>::infinity()};
  if (pts.size() == 1) return {pts[0], 0};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const Disc d{(pts[i] + pts[j]) / 2, (pts[i] - pts[j]).norm() / 2};
      if (d.r < best.r && contains(d)) best = d;
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        const P a = pts[i], b = pts[j], c = pts[k];
        const double den = 2 * (a.x() * (b.y() - c.y()) + b.x() * (c.y() - a.y()) +
                                c.x() * (a.y() - b.y()));
        if (std::abs(den) < 1e-14) continue;
        const double a2 = a.squaredNorm(), b2 = b.squaredNorm(), c2 = c.squaredNorm();
        const P ctr((a2 * (b.y() - c.y()) + b2 * (c.y() - a.y()) + c2 * (a.y() - b.y())) / den,
                    (a2 * (c.x() - b.x()) + b2 * (a.x() - c.x()) + c2 * (b.x() - a.x())) / den);
        const Disc t{ctr, (a - ctr).norm()};
        if (t.r < best.r && contains(t)) best = t;
      }
    }
  }
  return best;
}

/// Interior angles from atan2; reflex when the angle exceeds pi by more than
/// the collinearity tolerance.
inline int reflex_count(std::vector<P> poly) {
  if (signed_area(poly) < 0) std::reverse(poly.begin(), poly.end());
  const std::size_t n = poly.size();
  int count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const P to_prev = poly[(i + n - 1) % n] - poly[i];
    const P to_next = poly[(i + 1) % n] - poly[i];
    double interior = std::atan2(cross(to_next, to_prev), to_next.dot(to_prev));
    if (interior < 0) interior += 2 * std::numbers::pi;
    if (interior > std::numbers::pi + 1e-9) ++count;
  }
  return count;
}

inline double freq(const std::vector<P>& poly) {
  const double n = static_cast<double>(poly.size());
  if (n <= 3) return 0;
  const double l = reflex_count(poly) / (n - 3);
  const double v = 1 + 16 * std::pow(l - 0.5, 4) - 8 * std::pow(l - 0.5, 2);
  return std::min(1.0, std::max(0.0, v));
}

inline double ampl(const std::vector<P>& poly) {
  const double c = perimeter(poly);
  return (c - perimeter(hull(poly))) / c;
}

inline double conv(const std::vector<P>& poly) {
  const double n = static_cast<double>(poly.size());
  const Disc d = enclosing_circle(poly);
  const double circle = std::numbers::pi * d.r * d.r;
  const double ideal = circle * std::sin(2 * std::numbers::pi / n) * n / (2 * std::numbers::pi);
  const double v = 1 - std::abs(signed_area(poly)) / ideal;
  return std::min(1.0, std::max(0.0, v));
}

inline double compl_(const std::vector<P>& poly) {
  return 0.8 * ampl(poly) * freq(poly) + 0.2 * conv(poly);
}

/// Simple polygon star-shaped around the origin, counterclockwise.
inline std::vector<P> star_polygon(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> ang(0, 2 * std::numbers::pi), rad(0.15, 1.0);
  std::vector<double> a(n);
  // Resample until every angular gap is below pi, which keeps it simple.
  for (bool ok = false; !ok;) {
    for (auto& x : a) x = ang(rng);
    std::sort(a.begin(), a.end());
    ok = a.front() + 2 * std::numbers::pi - a.back() < std::numbers::pi;
    for (std::size_t i = 1; i < a.size(); ++i) ok = ok && a[i] - a[i - 1] < std::numbers::pi;
  }
  std::vector<P> out;
  for (double x : a) {
    const double r = rad(rng);
    out.emplace_back(r * std::cos(x), r * std::sin(x));
  }
  return out;
}

inline std::vector<P> regular_polygon(int n, double radius = 1, P center = P::Zero(),
                                      double phase = 0) {
  std::vector<P> out;
  for (int k = 0; k < n; ++k) {
    const double t = phase + 2 * std::numbers::pi * k / n;
    out.push_back(center + radius * P(std::cos(t), std::sin(t)));
  }
  return out;
}

/// Segments (a,b),(c,d) cross in their relative interiors or touch in a
/// T; shared endpoints alone do not count. Collinear overlaps count.
inline bool proper_intersection(const P& a, const P& b, const P& c, const P& d) {
  auto on = [](const P& p, const P& q, const P& r) {  // r strictly inside pq, collinear
    if (std::abs(cross(q - p, r - p)) > 1e-12 * (q - p).norm() * std::max(1.0, (r - p).norm())) {
      return false;
    }
    const double t = (r - p).dot(q - p) / (q - p).squaredNorm();
    return t > 1e-12 && t < 1 - 1e-12;
  };
  if ((a == c && b == d) || (a == d && b == c)) return true;  // coincident segments overlap
  const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  return on(a, b, c) || on(a, b, d) || on(c, d, a) || on(c, d, b);
}

/// Winding number of a closed polygon around q; nonzero means inside.
inline int winding(const std::vector<P>& poly, const P& q) {
  double total = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const P a = poly[i] - q, b = poly[(i + 1) % poly.size()] - q;
    total += std::atan2(cross(a, b), a.dot(b));
  }
  return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

/// Connected after deleting vertex `skip` (pass -1 to keep all), by flood fill.
inline bool connected_without(int n, const std::vector<std::pair<int, int>>& edges, int skip) {
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : edges) {
    if (a == skip || b == skip) continue;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  const int start = skip == 0 ? 1 : 0;
  std::vector<bool> seen(n, false);
  std::vector<int> stack{start};
  seen[start] = true;
  int count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n - (skip >= 0 ? 1 : 0);
}

inline bool biconnected(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 3 || !connected_without(n, edges, -1)) return false;
  for (int v = 0; v < n; ++v) {
    if (!connected_without(n, edges, v)) return false;
  }
  return true;
}

}  // namespace oracle

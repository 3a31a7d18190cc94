#pragma once

// Real roots of polynomials up to degree four, in closed form with a Newton
// polish.  Degenerate leading coefficients fall through to the lower-degree
// cases.  Coefficients are ascending: p(x) = c[0] + c[1] x + ... + c[d] x^d.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "entlp/linalg.hpp"

namespace entlp {

namespace poly_detail {

inline double eval(const Vec& c, double x) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

inline double eval_deriv(const Vec& c, double x) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 1;) acc = acc * x + c[i] * double(i);
  return acc;
}

inline void polish(const Vec& c, double& r) {
  // one Newton step; repeated only if it clearly helps
  for (int it = 0; it < 2; ++it) {
    double f = eval(c, r);
    double fp = eval_deriv(c, r);
    if (fp == 0.0 || !std::isfinite(fp)) return;
    double step = f / fp;
    if (!std::isfinite(step)) return;
    double rn = r - step;
    if (std::fabs(eval(c, rn)) < std::fabs(f)) r = rn; else return;
  }
}

inline void solve_quadratic_monic(double b, double c, std::vector<double>& out) {
  double disc = b * b - 4.0 * c;
  if (disc < 0.0) return;
  double sq = std::sqrt(disc);
  // stable pairing: avoid cancellation in the far root
  double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
  out.push_back(q);
  out.push_back(q != 0.0 ? c / q : -b - q);
}

inline void solve_cubic_monic(double a, double b, double c, std::vector<double>& out) {
  // x^3 + a x^2 + b x + c, depressed via x = t - a/3
  double a2 = a * a;
  double q = (a2 - 3.0 * b) / 9.0;
  double r = (a * (2.0 * a2 - 9.0 * b) + 27.0 * c) / 54.0;
  double r2 = r * r, q3 = q * q * q;
  if (r2 < q3) {
    double t = std::acos(std::clamp(r / std::sqrt(q3), -1.0, 1.0));
    double m = -2.0 * std::sqrt(q);
    out.push_back(m * std::cos(t / 3.0) - a / 3.0);
    out.push_back(m * std::cos((t + 2.0 * M_PI) / 3.0) - a / 3.0);
    out.push_back(m * std::cos((t - 2.0 * M_PI) / 3.0) - a / 3.0);
  } else {
    double u = std::cbrt(-(r + std::copysign(std::sqrt(r2 - q3), r)));
    double v = (u == 0.0) ? 0.0 : q / u;
    out.push_back(u + v - a / 3.0);
  }
}

}  // namespace poly_detail

// All real roots (with multiplicity collapsed), ascending coefficients, any
// degree up to 4.  |leading| < 1e-14 * scale demotes the degree.
inline std::vector<double> real_roots(Vec c) {
  std::vector<double> out;
  double scale = 0.0;
  for (double v : c) scale = std::max(scale, std::fabs(v));
  if (scale == 0.0) return out;  // identically zero: no isolated roots
  while (c.size() > 1 && std::fabs(c.back()) < 1e-14 * scale) c.pop_back();
  const std::size_t deg = c.size() - 1;
  if (deg == 0) return out;
  if (deg == 1) {
    out.push_back(-c[0] / c[1]);
  } else if (deg == 2) {
    poly_detail::solve_quadratic_monic(c[1] / c[2], c[0] / c[2], out);
  } else if (deg == 3) {
    poly_detail::solve_cubic_monic(c[2] / c[3], c[1] / c[3], c[0] / c[3], out);
  } else {
    // Ferrari via the resolvent cubic of the depressed quartic
    double a = c[3] / c[4], b = c[2] / c[4], cc = c[1] / c[4], d = c[0] / c[4];
    double p = b - 3.0 * a * a / 8.0;
    double q = cc - a * b / 2.0 + a * a * a / 8.0;
    double r = d - a * cc / 4.0 + a * a * b / 16.0 - 3.0 * a * a * a * a / 256.0;
    if (std::fabs(q) < 1e-14 * std::max(1.0, scale)) {
      // biquadratic t^4 + p t^2 + r
      std::vector<double> z;
      poly_detail::solve_quadratic_monic(p, r, z);
      for (double zi : z) {
        if (zi < 0.0) continue;
        double s = std::sqrt(zi);
        out.push_back(s - a / 4.0);
        out.push_back(-s - a / 4.0);
      }
    } else {
      // resolvent: m^3 + p m^2 + (p^2/4 - r) m - q^2/8 = 0, need m > 0
      std::vector<double> ms;
      poly_detail::solve_cubic_monic(p, p * p / 4.0 - r, -q * q / 8.0, ms);
      double m = 0.0;
      for (double mi : ms) m = std::max(m, mi);
      if (m > 0.0) {
        double sq2m = std::sqrt(2.0 * m);
        double inner1 = -(2.0 * p + 2.0 * m + 2.0 * q / sq2m);
        double inner2 = -(2.0 * p + 2.0 * m - 2.0 * q / sq2m);
        if (inner1 >= 0.0) {
          double s = std::sqrt(inner1);
          out.push_back((+sq2m + s) / 2.0 - a / 4.0);
          out.push_back((+sq2m - s) / 2.0 - a / 4.0);
        }
        if (inner2 >= 0.0) {
          double s = std::sqrt(inner2);
          out.push_back((-sq2m + s) / 2.0 - a / 4.0);
          out.push_back((-sq2m - s) / 2.0 - a / 4.0);
        }
      }
    }
  }
  for (double& r : out) poly_detail::polish(c, r);
  std::sort(out.begin(), out.end());
  return out;
}

// Convenience: real roots restricted to the open interval (lo, hi).
inline std::vector<double> real_roots_in(const Vec& c, double lo, double hi) {
  std::vector<double> out;
  for (double r : real_roots(c))
    if (r > lo && r < hi) out.push_back(r);
  return out;
}

// Tiny dense polynomial arithmetic used by the resultant eliminations.
inline Vec poly_add(const Vec& a, const Vec& b) {
  Vec out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

inline Vec poly_sub(const Vec& a, const Vec& b) {
  Vec out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

inline Vec poly_mul(const Vec& a, const Vec& b) {
  if (a.empty() || b.empty()) return Vec();
  Vec out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace entlp

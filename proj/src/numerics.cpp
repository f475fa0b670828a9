#include "risplace/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "risplace/errors.hpp"

namespace risplace::numerics {

namespace {

// Below this argument the power series is used; above it the Hankel
// asymptotic expansion. At 13 the series loses about four digits to
// cancellation and the asymptotic expansion's smallest term is ~1e-11, so
// both sides stay under 1e-10.
constexpr double kSeriesLimit = 13.0;

// sum_k (-x^2/4)^k / (k! (k+1)!), i.e. 2 J1(x)/x.
double j1_over_x_series(double x) {
  const double q = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 100; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + 1));
    sum += term;
    if (std::abs(term) < 1e-18) break;
  }
  return 0.5 * sum;
}

double j1_asymptotic(double x) {
  // J1(x) = sqrt(2/(pi x)) (P cos chi - Q sin chi), chi = x - 3 pi / 4.
  // t_k = a_k(1) / x^k with a_k = prod_{j<=k} (4 - (2j-1)^2) / (k! 8^k).
  constexpr double mu = 4.0;
  const double z = 8.0 * x;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (mu - odd * odd) / (static_cast<double>(k) * z);
    if (std::abs(next) >= previous) break;  // asymptotic series starts to diverge
    previous = std::abs(next);
    term = next;
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      case 0: p += term; break;
    }
    if (std::abs(term) < 1e-17) break;
  }
  const double s = std::sin(x);
  const double c = std::cos(x);
  const double cos_chi = (s - c) * std::numbers::sqrt2 / 2.0;
  const double sin_chi = -(s + c) * std::numbers::sqrt2 / 2.0;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cos_chi - q * sin_chi);
}

double simpson(double a, double fa, double fm, double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double fa, double b,
                        double fb, double m, double fm, double whole, double eps, int depth,
                        int max_depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, fa, flm, m, fm);
  const double right = simpson(m, fm, frm, b, fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * eps) {
    return left + right + delta / 15.0;
  }
  if (depth >= max_depth || !(lm > a && rm < b)) {
    throw ConvergenceError("integrate: no convergence on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "] at depth " + std::to_string(depth));
  }
  return adaptive_simpson(f, a, fa, m, fm, lm, flm, left, 0.5 * eps, depth + 1, max_depth) +
         adaptive_simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * eps, depth + 1, max_depth);
}

double eval_cubic(double a, double b, double c, double d, double x) {
  return ((a * x + b) * x + c) * x + d;
}

double polish(double a, double b, double c, double d, double x) {
  const double value = eval_cubic(a, b, c, d, x);
  const double slope = (3.0 * a * x + 2.0 * b) * x + c;
  if (slope == 0.0 || !std::isfinite(slope)) return x;
  const double candidate = x - value / slope;
  return std::abs(eval_cubic(a, b, c, d, candidate)) < std::abs(value) ? candidate : x;
}

}  // namespace

double bessel_j1(double x) {
  if (!std::isfinite(x)) throw DomainError("bessel_j1: argument is not finite");
  const double ax = std::abs(x);
  const double value = ax <= kSeriesLimit ? ax * j1_over_x_series(ax) : j1_asymptotic(ax);
  return x < 0 ? -value : value;
}

double bessel_j1_over_x(double x) {
  if (!std::isfinite(x)) throw DomainError("bessel_j1_over_x: argument is not finite");
  const double ax = std::abs(x);
  if (ax <= kSeriesLimit) return j1_over_x_series(ax);
  return j1_asymptotic(ax) / ax;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
  if (!(a < b)) throw ArgumentError("integrate: requires a < b");
  if (!(spec.tolerance > 0.0) || spec.max_depth < 1) {
    throw ArgumentError("integrate: tolerance must be > 0 and depth >= 1");
  }
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = simpson(a, fa, fm, b, fb);
  const double eps = spec.tolerance * (1.0 + std::abs(whole));
  return adaptive_simpson(f, a, fa, b, fb, m, fm, whole, eps, 1, spec.max_depth);
}

double integrate_panels(const std::function<double(double)>& f, double a, double b, int panels,
                        const QuadratureSpec& spec) {
  if (panels < 1) throw ArgumentError("integrate_panels: panels must be >= 1");
  if (!(a < b)) throw ArgumentError("integrate_panels: requires a < b");
  QuadratureSpec piece = spec;
  piece.tolerance = spec.tolerance / panels;
  CompensatedSum total;
  const double width = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * width;
    const double hi = k + 1 == panels ? b : a + (k + 1) * width;
    total.add(integrate(f, lo, hi, piece));
  }
  return total.value();
}

CubicRoots solve_cubic(double a, double b, double c, double d) {
  if (a == 0.0) throw DegenerateDegreeError("solve_cubic: leading coefficient is zero");

  CubicRoots out;
  out.discriminant = 18.0 * a * b * c * d - 4.0 * b * b * b * d + b * b * c * c -
                     4.0 * a * c * c * c - 27.0 * a * a * d * d;

  // Depressed cubic t^3 + p t + q with x = t - shift.
  const double bn = b / a;
  const double cn = c / a;
  const double dn = d / a;
  const double shift = bn / 3.0;
  const double p = cn - bn * bn / 3.0;
  const double q = 2.0 * bn * bn * bn / 27.0 - bn * cn / 3.0 + dn;

  std::vector<double> t;
  if (out.discriminant > 0.0 && p < 0.0) {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      t.push_back(m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0));
    }
  } else if (out.discriminant == 0.0) {
    if (p == 0.0) {
      t = {0.0, 0.0, 0.0};
    } else {
      t = {3.0 * q / p, -1.5 * q / p, -1.5 * q / p};
    }
  } else {
    const double s = std::sqrt(std::max(0.0, q * q / 4.0 + p * p * p / 27.0));
    const double big = -std::copysign(std::cbrt(std::abs(q) / 2.0 + s), q);
    const double small = big != 0.0 ? -p / (3.0 * big) : 0.0;
    t.push_back(big + small);
  }

  for (double root : t) out.roots.push_back(polish(a, b, c, d, root - shift));
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

double cubic_relative_residual(double a, double b, double c, double d, double x) {
  const double ax = std::abs(x);
  const double scale = ((std::abs(a) * ax + std::abs(b)) * ax + std::abs(c)) * ax + std::abs(d);
  const double value = std::abs(eval_cubic(a, b, c, d, x));
  return scale > 0.0 ? value / scale : value;
}

std::vector<double> solve_quadratic(double a, double b, double c) {
  if (a == 0.0) throw DegenerateDegreeError("solve_quadratic: leading coefficient is zero");
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return {};
  if (disc == 0.0) {
    const double root = -b / (2.0 * a);
    return {root, root};
  }
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  double r1 = q / a;
  double r2 = q != 0.0 ? c / q : -r1;
  if (r1 > r2) std::swap(r1, r2);
  return {r1, r2};
}

Maximum scalar_maximize(const std::function<double(double)>& f, double lo, double hi, int grid,
                        double refine_tol) {
  if (!(lo < hi)) throw ArgumentError("scalar_maximize: requires lo < hi");
  if (grid < 3) throw ArgumentError("scalar_maximize: grid must have at least 3 points");
  if (!(refine_tol > 0.0)) throw ArgumentError("scalar_maximize: refine_tol must be > 0");

  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  auto eval = [&](double x) {
    const double v = f(x);
    return std::isnan(v) ? kNegInf : v;
  };

  const double step = (hi - lo) / (grid - 1);
  auto node = [&](int k) { return k + 1 == grid ? hi : lo + k * step; };

  int best = 0;
  double best_value = eval(lo);
  for (int k = 1; k < grid; ++k) {
    const double v = eval(node(k));
    if (v > best_value) {
      best = k;
      best_value = v;
    }
  }
  if (best_value == kNegInf) return {lo, kNegInf};

  // Golden-section search for a maximum inside the bracket around `best`.
  constexpr double kInvPhi = 0.6180339887498949;
  double a = node(std::max(best - 1, 0));
  double b = node(std::min(best + 1, grid - 1));
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while (b - a > refine_tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = eval(d);
    }
  }
  const double x = 0.5 * (a + b);
  const double fx = eval(x);
  if (fx > best_value) return {x, fx};
  return {node(best), best_value};
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw ConvergenceError("bisect_root: bracket does not straddle a root");
  }
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace risplace::numerics

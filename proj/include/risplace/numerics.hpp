#pragma once

// Special functions, quadrature and scalar solvers shared by the link model.
// Everything here is pure and may be called concurrently.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace risplace::numerics {

struct QuadratureSpec {
  double tolerance = 1e-9;  // absolute, scaled by (1 + |result|)
  int max_depth = 50;
};

struct CubicRoots {
  std::vector<double> roots;  // real roots, ascending
  double discriminant = 0.0;  // 18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2
};

struct Maximum {
  double argmax = 0.0;
  double value = 0.0;
};

/// Bessel function of the first kind, order one. Absolute error below 1e-10
/// for |x| <= 1e4. Throws DomainError for non-finite input.
double bessel_j1(double x);

/// J1(x)/x, continuous through x = 0 where it equals 1/2.
double bessel_j1_over_x(double x);

/// Adaptive Simpson quadrature of f over [a, b].
/// Throws ArgumentError unless a < b, ConvergenceError when a subinterval
/// still fails the error test at spec.max_depth.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

/// Same as integrate() but first splits [a, b] into `panels` equal pieces.
/// Oscillatory integrands need this so the first Simpson estimate sees
/// every lobe.
double integrate_panels(const std::function<double(double)>& f, double a, double b, int panels,
                        const QuadratureSpec& spec = {});

/// Real roots of a x^3 + b x^2 + c x + d. Closed form (trigonometric for
/// three real roots, Cardano otherwise) followed by one Newton step per root.
/// Throws DegenerateDegreeError when a == 0.
CubicRoots solve_cubic(double a, double b, double c, double d);

/// |p(x)| / sum_k |coef_k| |x|^k for the cubic a x^3 + b x^2 + c x + d.
double cubic_relative_residual(double a, double b, double c, double d, double x);

/// Real roots of a x^2 + b x + c in ascending order, computed without
/// cancellation. A double root is returned twice.
std::vector<double> solve_quadratic(double a, double b, double c);

/// Uniform grid scan over [lo, hi] with `grid` points, then golden-section
/// refinement inside the bracket around the best grid point. NaN values are
/// treated as -inf. A flat function yields lo.
Maximum scalar_maximize(const std::function<double(double)>& f, double lo, double hi, int grid,
                        double refine_tol);

/// Bisection on a sign-changing bracket. Throws ConvergenceError if f(lo) and
/// f(hi) have the same sign.
double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol);

// Neumaier-compensated running sum. Adding the same values in the same order
// always produces the same bits.
class CompensatedSum {
 public:
  void add(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  void merge(const CompensatedSum& other) {
    add(other.sum_);
    add(other.compensation_);
  }

  [[nodiscard]] double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace risplace::numerics

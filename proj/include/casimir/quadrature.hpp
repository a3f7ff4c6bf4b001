#pragma once

#include <functional>
#include <vector>

namespace casimir {

// Knobs for the frequency/wavevector integrals.  Identical specs give
// bit-identical results regardless of thread count.
struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_tol = 0.0;          // absolute floor; 0 = purely relative
    int max_subdivisions = 200;    // adaptive panels for the outer integral
    int inner_min_points = 32;     // Gauss order for the inner integral ...
    int inner_max_points = 512;    // ... doubled until the tolerance is met
    double outer_scale = 0.0;      // rad/s; 0 = c/L
    double inner_scale = 0.0;      // 1/m;   0 = 1/L
};

struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

namespace quad {

struct GaussRule {
    std::vector<double> x;   // nodes on (0,1)
    std::vector<double> w;
};

// Gauss-Legendre rule mapped to (0,1), built by Newton iteration on the
// Legendre roots and cached per order.  n must be at least 2.
const GaussRule& gauss_unit(int n);

// Fixed-order Gauss with order doubling from n_min until two consecutive
// orders agree to tol.  The last difference is the error estimate.
Estimate integrate_unit_doubling(const std::function<double(double)>& f,
                                 int n_min, int n_max,
                                 double rel_tol, double abs_floor);

// Adaptive Gauss-Kronrod 7/15 on (0,1).  Refines the worst panels in small
// deterministic waves; wave members are evaluated through the parallel map,
// and the final sum runs left to right over the panel list.
// Throws ConvergenceError when max_subdivisions is exhausted.
Estimate integrate_unit_adaptive(const std::function<double(double)>& f,
                                 double rel_tol, double abs_tol,
                                 int max_subdivisions);

// Trapezoid in log(x) over tabulated positive abscissae, with the integrand
// resampled on a grid refined to at least `per_decade` points per decade.
double log_trapezoid(const std::function<double(double)>& f,
                     double x_lo, double x_hi, int per_decade);

} // namespace quad
} // namespace casimir

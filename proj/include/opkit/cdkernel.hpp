#ifndef OPKIT_CDKERNEL_HPP
#define OPKIT_CDKERNEL_HPP

#include "opkit/measure.hpp"
#include "opkit/orthopoly.hpp"

#include <vector>

namespace opkit::cdkernel {

// K_n(x,y) = sum_{k<n} p_k(x) p_k(y), summed directly.
double kernel_direct(const orthopoly::RecurrenceTable& table, int n, double x,
                     double y);

// Same kernel through the Christoffel-Darboux formula, with a derivative
// form near the diagonal.
double kernel_cd(const orthopoly::RecurrenceTable& table, int n, double x,
                 double y);

// Christoffel function lambda_n = 1 / K_n(x,x).
double christoffel(const orthopoly::RecurrenceTable& table, int n, double x);

// Independent oracle: the constrained quadratic minimum over polynomials of
// degree < n, solved through a Gram matrix in the Chebyshev basis.  n <= 20.
double christoffel_oracle(const measure::GJMeasure& mu, int n, double x);

// sqrt(w(x) w(y)) K_n(x,y); +infinity where the weight blows up.
double normalized_kernel(const measure::GJMeasure& mu,
                         const orthopoly::RecurrenceTable& table, int n,
                         double x, double y);

// f_n(a,b) = K_n(x0 + a*/n, x0 + b*/n) / K_n(x0,x0) with a* = a / omega and
// omega = pi * omega_K(x0).
double f_n_ratio(const orthopoly::RecurrenceTable& table, int n, double x0,
                 double omega, double a, double b);

// Zeros of psi_n(xi, .) = p_n(xi) p_{n-1}(.) - p_n(.) p_{n-1}(xi) nearest xi.
struct KernelZeroSet {
    double center;
    std::vector<double> zeros; // ascending, contains the center
    int center_index;          // position of the center within `zeros`

    // Zero with signed index k relative to the center.
    double at(int k) const { return zeros[center_index + k]; }
    int k_min() const { return -center_index; }
    int k_max() const { return (int)zeros.size() - 1 - center_index; }
};
KernelZeroSet kernel_zeros(const orthopoly::RecurrenceTable& table, int n,
                           double xi, int window);

// det( sqrt(w(x_i) w(x_j)) K_n(x_i, x_j) ), k <= 12 points.
double correlation_det(const measure::GJMeasure& mu,
                       const orthopoly::RecurrenceTable& table, int n,
                       const std::vector<double>& points);

} // namespace opkit::cdkernel

#endif

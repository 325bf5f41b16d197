#ifndef OPKIT_SPECFUN_HPP
#define OPKIT_SPECFUN_HPP

#include <complex>
#include <vector>

namespace opkit::specfun {

enum class KernelVariant { raw, entire };

// Gamma function for x > 0, relative error below 1e-13 on [1e-3, 50].
double gamma_fn(double x);

// Bessel function of the first kind, real order nu > -1, real x >= 0.
// Ascending series for x <= 12, Hankel asymptotic expansion beyond.
double bessel_j(double nu, double x);

// Derivative J_nu'(x), x > 0.
double bessel_j_deriv(double nu, double x);

// Complex-argument series evaluation, |z| <= 12.
std::complex<double> bessel_j(double nu, std::complex<double> z);

// Entire part of the Bessel function in the squared variable:
//   J_nu(z) = z^nu * G_nu(z^2).
// Returns G_nu(u) together with dG/du and d^2G/du^2.  |u| <= 145.
struct ScaledBessel {
    double g;
    double dg;
    double d2g;
};
ScaledBessel bessel_entire_part(double nu, double u);
std::complex<double> bessel_entire_part(double nu, std::complex<double> u);

// First `count` positive zeros of J_nu, strictly increasing.
std::vector<double> bessel_j_zeros(double nu, int count);

// Hard-edge Bessel kernel.  Raw variant requires a, b > 0; the entire
// variant accepts a, b >= 0 and is finite at the origin.
double kernel_J(double alpha, double a, double b, KernelVariant variant);

// Entire diagonal J*_alpha(a) = J_alpha(a,a)/a^alpha.
double kernel_J_diag(double alpha, double a);

// Bulk singularity kernel built from J_{(alpha+1)/2} and J_{(alpha-1)/2}.
// Raw variant for real arguments; entire variant removes the a^{alpha/2}
// factors and extends to all reals.
double kernel_L(double alpha, double a, double b, KernelVariant variant);

// Entire variant for complex arguments, |a|, |b| <= 12.
std::complex<double> kernel_L(double alpha, std::complex<double> a,
                              std::complex<double> b);

// Entire diagonal L*_alpha(a) = L_alpha(a,a)/a^alpha.
double kernel_L_diag(double alpha, double a);

// Truncated cardinal series for g(.) = L*_alpha(center, .) sampled at the
// signed zeros of J_{(alpha-1)/2}:
//   sum_{0<|k|<=truncation} g(j_k) L*_alpha(j_k, z) / L*_alpha(j_k, j_k).
double cardinal_series(double alpha, double center, double z, int truncation);

} // namespace opkit::specfun

#endif

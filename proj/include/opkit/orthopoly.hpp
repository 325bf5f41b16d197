#ifndef OPKIT_ORTHOPOLY_HPP
#define OPKIT_ORTHOPOLY_HPP

#include "opkit/measure.hpp"

#include <string>
#include <utility>
#include <vector>

namespace opkit::orthopoly {

// Orthonormal three-term recurrence  x p_k = a_{k+1} p_{k+1} + b_k p_k + a_k p_{k-1}.
// A table of size m stores b_0..b_{m-1} and a_1..a_m, enough to evaluate
// p_0..p_m and the kernel K_m.
// Coefficients are held in extended precision: the closed-form families are
// generated exactly enough that the exact kernel anchors (K_n(1,1) = n^2/2
// for Legendre) survive to n ~ 1000.
struct RecurrenceTable {
    double mass = 0.0;                // beta_0 = mu(R)
    std::vector<long double> diag;    // b_k
    std::vector<long double> offdiag; // a_{k+1} at index k

    int size() const { return (int)diag.size(); }
    double b(int k) const { return (double)diag[k]; }
    double a(int k) const { return (double)offdiag[k - 1]; } // k in [1, size()]
    long double bl(int k) const { return diag[k]; }
    long double al(int k) const { return offdiag[k - 1]; }
};

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Closed-form coefficients for the Jacobi weight (1-x)^alpha (1+x)^beta on [-1,1].
RecurrenceTable jacobi_recurrence(double alpha, double beta, int n);

// Coefficients for |x|^alpha dx on [-1,1] through the even/odd split under t = x^2.
RecurrenceTable symmetric_singular_recurrence(double alpha, int n);

// Gauss rules per interval, aligned so each algebraic singularity sits at a
// panel endpoint and is absorbed into a Gauss-Jacobi weight.  `order` is the
// point count per panel.
QuadratureRule composite_quadrature(const measure::GJMeasure& mu, int order);

// mu-integral over [lo, hi] with singularity-aligned panels.
double integrate(const measure::GJMeasure& mu, double lo, double hi, int order);

// Stable nodes-and-weights tridiagonalization (RKPW) of the discrete measure.
RecurrenceTable lanczos_recurrence(const measure::GJMeasure& mu, int n,
                                   const QuadratureRule& rule);

// Forward recurrence; returns (p_n(x), p_{n-1}(x)).
std::pair<double, double> eval_orthonormal(const RecurrenceTable& table, int n,
                                           double x);

// Values and derivatives: {p_n, p_{n-1}, p_n', p_{n-1}'}.
struct EvalDeriv {
    double pn, pnm1, dpn, dpnm1;
};
EvalDeriv eval_orthonormal_deriv(const RecurrenceTable& table, int n, double x);

// Zeros of p_n as eigenvalues of the n-by-n Jacobi matrix, sorted.
std::vector<double> poly_zeros(const RecurrenceTable& table, int n);

// CSV export: header, then rows k,b_k,a_k with the a_0 cell empty.
std::string export_csv(const RecurrenceTable& table);

} // namespace opkit::orthopoly

#endif

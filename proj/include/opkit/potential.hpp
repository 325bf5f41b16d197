#ifndef OPKIT_POTENTIAL_HPP
#define OPKIT_POTENTIAL_HPP

#include "opkit/measure.hpp"

#include <functional>
#include <vector>

namespace opkit::potential {

// Ordered disjoint bands a_0 < b_0 <= a_1 < ... (touching endpoints allowed).
struct IntervalSystem {
    std::vector<measure::Interval> intervals;
    int bands() const { return (int)intervals.size(); }
};

IntervalSystem make_system(const std::vector<measure::Interval>& intervals);

// Equilibrium density omega(x) = |q(x)| / (pi sqrt|R(x)|) where R is the
// monic polynomial vanishing at all band endpoints and q is the monic
// gap polynomial with one root per gap.
struct EquilibriumDensity {
    IntervalSystem system;
    std::vector<double> gap_poly; // ascending coefficients, monic, degree N-1
};

// Solves the gap conditions (integral of q/sqrt|R| over each gap vanishes).
EquilibriumDensity equilibrium_density(const IntervalSystem& system);

// Closed-form density at an interior point of a band.
double density_at_eq(const EquilibriumDensity& eq, double x);

// Total mass of the density over the bands (should be 1).
double total_mass(const EquilibriumDensity& eq, int order = 400);

// M(K, x0) = lim sqrt(2) pi |x-x0|^{1/2} omega(x) at a band endpoint,
// evaluated from the closed form.
double edge_constant(const EquilibriumDensity& eq, double x0);

// Degree-N real polynomial with simple real zeros and all critical values
// of modulus >= 1.
struct AdmissiblePolynomial {
    std::vector<double> coeffs; // ascending, coeffs.back() != 0
    int degree() const { return (int)coeffs.size() - 1; }
    double eval(double x) const;
    double deriv(double x) const;
    std::vector<double> critical_points() const;
};

// Validates the admissibility conditions; throws schema_error naming the
// violated one.
AdmissiblePolynomial make_admissible(const std::vector<double>& coeffs);

// The N bands of T^{-1}([-1,1]).
IntervalSystem inverse_image(const AdmissiblePolynomial& T);

// |T'(x)| / (N pi sqrt(1 - T(x)^2)) for x interior to a band.
double inverse_image_density(const AdmissiblePolynomial& T, double x);

// | int_{-1}^{1} f  -  (1/N) int_{E_N} f(T(x)) |T'(x)| dx |.
double pushforward_check(const AdmissiblePolynomial& T,
                         const std::function<double(double)>& f);

} // namespace opkit::potential

#endif

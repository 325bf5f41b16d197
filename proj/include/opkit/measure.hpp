#ifndef OPKIT_MEASURE_HPP
#define OPKIT_MEASURE_HPP

#include <string>
#include <vector>

namespace opkit::measure {

struct Interval {
    double lo;
    double hi;
};

struct AlgebraicSingularity {
    double location;
    double exponent; // > -1
    bool at_edge = false; // set when the location is an interval endpoint
};

// Smooth positive factor: constant, or a polynomial certified positive on
// the support (coefficients in increasing degree).
struct SmoothFactor {
    bool is_const = true;
    double value = 1.0;
    std::vector<double> poly;

    double operator()(double x) const;
    int degree() const { return is_const ? 0 : (int)poly.size() - 1; }
};

// Generalized Jacobi measure: w(x) * prod |x - x_i|^{gamma_i} on a union
// of disjoint intervals.
struct GJMeasure {
    std::vector<Interval> intervals;              // sorted, disjoint
    std::vector<AlgebraicSingularity> singularities;
    SmoothFactor smooth;

    bool contains(double x) const;
    double lo() const { return intervals.front().lo; }
    double hi() const { return intervals.back().hi; }
};

// |x|^alpha dx on [-1,1].
GJMeasure make_model_bulk(double alpha);

// |x-1|^alpha dx on [-1,1].
GJMeasure make_model_edge(double alpha);

// Lebesgue measure on a general interval union (used by fixtures).
GJMeasure make_lebesgue(const std::vector<Interval>& intervals);

// Radon-Nikodym derivative at x; +infinity at a singularity location with
// negative exponent.  Throws off support.
double density_at(const GJMeasure& mu, double x);

// Parse / serialize the JSON measure document.
GJMeasure parse_measure(const std::string& document);
std::string serialize_measure(const GJMeasure& mu);

// Validates all invariants; throws schema_error naming the field.
void validate(const GJMeasure& mu);

} // namespace opkit::measure

#endif

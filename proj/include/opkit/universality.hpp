#ifndef OPKIT_UNIVERSALITY_HPP
#define OPKIT_UNIVERSALITY_HPP

#include "opkit/measure.hpp"
#include "opkit/orthopoly.hpp"
#include "opkit/potential.hpp"

#include <string>
#include <utility>
#include <vector>

namespace opkit::universality {

enum class ScanMode { bulk_lambda, bulk_ratio, edge_lambda, edge_ratio };

struct ScanConfig {
    measure::GJMeasure measure;
    double x0 = 0.0;
    double alpha = 0.0;
    std::vector<double> a_grid;
    std::vector<double> b_grid; // ignored in lambda modes
    std::vector<int> n_list;    // strictly increasing
    ScanMode mode = ScanMode::bulk_lambda;
};

struct ScanRow {
    int n;
    double a, b;
    double measured, predicted, abs_err, rel_err;
};

struct ScanReport {
    std::vector<ScanRow> rows;
    double fitted_order = 0.0; // log-log slope of max error vs n
    double omega_or_M = 0.0;   // pi*omega_K(x0) for bulk, M(K,x0) for edge
    double weight_at_x0 = 0.0; // smooth part of the weight at x0

    std::string to_csv() const;
    std::string to_json(bool pass) const;
};

// Bulk scaling scan around an interior point x0.  In lambda mode rows hold
// n^{alpha+1} lambda_n(x0 + a/n) against the bulk-kernel prediction; in
// ratio mode the normalized kernel ratio f_n against the kernel ratio.
ScanReport scan_bulk(const ScanConfig& cfg,
                     const orthopoly::RecurrenceTable& table,
                     const potential::EquilibriumDensity& eq,
                     bool serial = false);

// Edge scan at a right endpoint x0 with the a/(2n^2) parametrization.
ScanReport scan_edge(const ScanConfig& cfg,
                     const orthopoly::RecurrenceTable& table,
                     const potential::EquilibriumDensity& eq,
                     bool serial = false);

// Least-squares slope of log err against log n.
double rate_fit(const std::vector<std::pair<int, double>>& errors);

// Residual of the bulk-kernel reproducing identity truncated at |s| <= r.
double check_reproducing(double alpha, double a, double b, double r);

// Slacks of the two-sided quadrature sandwich between kernel zeros
// t_l < ... < t_k around xi; both must be nonnegative.
std::pair<double, double> check_markov_stieltjes(
    const measure::GJMeasure& mu, const orthopoly::RecurrenceTable& table,
    int n, double xi, int l, int k);

struct RatioBand {
    double lo = 0.0, hi = 0.0;
};

// min/max over (n, x) of the Christoffel-function ratios against the
// classical envelope; bulk uses (|x|+1/n)^alpha, edge (sqrt(1-x)+1/n)^(2a+1).
RatioBand check_nevai_bounds(const orthopoly::RecurrenceTable& table,
                             const std::vector<int>& n_list,
                             const std::vector<double>& xs, double alpha,
                             bool edge);

struct SpacingReport {
    std::vector<double> rescaled; // n*pi*omega*(t_k - x0), k in [-w, w]
    double max_gap = 0.0;         // max over single gaps
    double min_double_gap = 0.0;  // min over gaps two apart
};

SpacingReport zero_spacing_report(const orthopoly::RecurrenceTable& table,
                                  int n, double x0, double omega, int window);

} // namespace opkit::universality

#endif

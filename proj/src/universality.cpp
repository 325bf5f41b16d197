#include "opkit/universality.hpp"

#include "opkit/cdkernel.hpp"
#include "opkit/errors.hpp"
#include "opkit/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace opkit::universality {

using cdkernel::christoffel;
using cdkernel::kernel_cd;
using orthopoly::RecurrenceTable;
using specfun::KernelVariant;

namespace {

// Weight at x0 with the |x - x0|^alpha factor stripped.
double weight_smooth_at(const measure::GJMeasure& mu, double x0) {
    double w = mu.smooth(x0);
    for (const auto& s : mu.singularities)
        if (s.location != x0)
            w *= std::pow(std::abs(x0 - s.location), s.exponent);
    return w;
}

void fmt(std::ostringstream& os, double v) {
    os.precision(17);
    os << v;
}

struct Job {
    int n;
    double a, b;
};

std::vector<Job> expand_jobs(const ScanConfig& cfg) {
    std::vector<Job> jobs;
    bool ratio = cfg.mode == ScanMode::bulk_ratio || cfg.mode == ScanMode::edge_ratio;
    for (int n : cfg.n_list)
        for (double a : cfg.a_grid) {
            if (ratio)
                for (double b : cfg.b_grid) jobs.push_back({n, a, b});
            else
                jobs.push_back({n, a, a});
        }
    return jobs;
}

void finish_report(ScanReport& rep, const std::vector<int>& n_list) {
    // Max absolute error per n, then the log-log slope.
    std::map<int, double> worst;
    for (const auto& r : rep.rows)
        worst[r.n] = std::max(worst[r.n], r.abs_err);
    std::vector<std::pair<int, double>> pts;
    for (int n : n_list)
        if (worst.count(n) && worst[n] > 0.0) pts.push_back({n, worst[n]});
    rep.fitted_order = pts.size() >= 3 ? rate_fit(pts) : 0.0;
}

template <class RowFn>
ScanReport run_scan(const ScanConfig& cfg, RowFn&& row_fn, bool serial) {
    auto jobs = expand_jobs(cfg);
    ScanReport rep;
    rep.rows.resize(jobs.size());
    if (serial) {
        for (size_t i = 0; i < jobs.size(); ++i) rep.rows[i] = row_fn(jobs[i]);
    } else {
#pragma omp parallel for schedule(dynamic)
        for (size_t i = 0; i < jobs.size(); ++i) rep.rows[i] = row_fn(jobs[i]);
    }
    finish_report(rep, cfg.n_list);
    return rep;
}

} // namespace

std::string ScanReport::to_csv() const {
    std::ostringstream os;
    os << "n,a,b,measured,predicted,abs_err,rel_err\n";
    for (const auto& r : rows) {
        os << r.n << ',';
        fmt(os, r.a); os << ',';
        fmt(os, r.b); os << ',';
        fmt(os, r.measured); os << ',';
        fmt(os, r.predicted); os << ',';
        fmt(os, r.abs_err); os << ',';
        fmt(os, r.rel_err); os << '\n';
    }
    return os.str();
}

std::string ScanReport::to_json(bool pass) const {
    std::ostringstream os;
    os.precision(17);
    double max_rel = 0.0;
    for (const auto& r : rows) max_rel = std::max(max_rel, r.rel_err);
    os << "{\"fitted_order\": " << fitted_order
       << ", \"constants\": {\"scale\": " << omega_or_M
       << ", \"weight_at_x0\": " << weight_at_x0 << "}"
       << ", \"rows\": " << rows.size()
       << ", \"max_rel_err\": " << max_rel
       << ", \"pass\": " << (pass ? "true" : "false") << "}\n";
    return os.str();
}

ScanReport scan_bulk(const ScanConfig& cfg, const RecurrenceTable& table,
                     const potential::EquilibriumDensity& eq, bool serial) {
    bool interior = false;
    for (const auto& iv : cfg.measure.intervals)
        if (iv.lo < cfg.x0 && cfg.x0 < iv.hi) interior = true;
    if (!interior) throw domain_error("x0 must be interior to the support");
    for (size_t i = 1; i < cfg.n_list.size(); ++i)
        if (cfg.n_list[i] <= cfg.n_list[i - 1])
            throw domain_error("n_list must be strictly increasing");

    const double alpha = cfg.alpha;
    const double pw = M_PI * potential::density_at_eq(eq, cfg.x0);
    const double w0 = weight_smooth_at(cfg.measure, cfg.x0);
    const double L0 = specfun::kernel_L_diag(alpha, 0.0);

    auto rep = run_scan(
        cfg,
        [&](const Job& j) {
            ScanRow r{j.n, j.a, j.b, 0, 0, 0, 0};
            if (cfg.mode == ScanMode::bulk_lambda) {
                double lam = christoffel(table, j.n, cfg.x0 + j.a / j.n);
                r.measured = std::pow((double)j.n, alpha + 1.0) * lam;
                r.predicted = w0 / std::pow(pw, alpha + 1.0) /
                              specfun::kernel_L_diag(alpha, pw * j.a);
            } else {
                r.measured =
                    cdkernel::f_n_ratio(table, j.n, cfg.x0, pw, j.a, j.b);
                r.predicted = specfun::kernel_L(alpha, pw * j.a, pw * j.b,
                                                KernelVariant::entire) /
                              L0;
            }
            r.abs_err = std::abs(r.measured - r.predicted);
            r.rel_err = r.abs_err / std::max(std::abs(r.predicted), 1e-300);
            return r;
        },
        serial);
    rep.omega_or_M = pw;
    rep.weight_at_x0 = w0;
    return rep;
}

ScanReport scan_edge(const ScanConfig& cfg, const RecurrenceTable& table,
                     const potential::EquilibriumDensity& eq, bool serial) {
    bool endpoint = false;
    for (const auto& iv : cfg.measure.intervals)
        if (cfg.x0 == iv.hi) endpoint = true;
    if (!endpoint)
        throw domain_error("x0 must be a right endpoint of the support");
    for (double a : cfg.a_grid)
        if (a < 0.0) throw domain_error("edge scan requires a >= 0");

    const double alpha = cfg.alpha;
    const double M = potential::edge_constant(eq, cfg.x0);
    const double w0 = weight_smooth_at(cfg.measure, cfg.x0);
    const double J0 =
        specfun::kernel_J(alpha, 0.0, 0.0, KernelVariant::entire);
    const double p2 = std::pow(2.0, alpha + 1.0);

    auto rep = run_scan(
        cfg,
        [&](const Job& j) {
            ScanRow r{j.n, j.a, j.b, 0, 0, 0, 0};
            double n2 = (double)j.n * j.n;
            if (cfg.mode == ScanMode::edge_lambda) {
                double lam =
                    christoffel(table, j.n, cfg.x0 - j.a / (2.0 * n2));
                r.measured = std::pow((double)j.n, 2.0 * alpha + 2.0) * lam;
                r.predicted =
                    w0 / std::pow(M, 2.0 * alpha + 2.0) /
                    (p2 * specfun::kernel_J(alpha, M * M * j.a, M * M * j.a,
                                            KernelVariant::entire));
            } else {
                double xa = cfg.x0 - j.a / (2.0 * n2);
                double xb = cfg.x0 - j.b / (2.0 * n2);
                r.measured = kernel_cd(table, j.n, xa, xb) /
                             kernel_cd(table, j.n, cfg.x0, cfg.x0);
                r.predicted = specfun::kernel_J(alpha, M * M * j.a, M * M * j.b,
                                                KernelVariant::entire) /
                              J0;
            }
            r.abs_err = std::abs(r.measured - r.predicted);
            r.rel_err = r.abs_err / std::max(std::abs(r.predicted), 1e-300);
            return r;
        },
        serial);
    rep.omega_or_M = M;
    rep.weight_at_x0 = w0;
    return rep;
}

double rate_fit(const std::vector<std::pair<int, double>>& errors) {
    if (errors.size() < 3)
        throw domain_error("rate fit needs at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [n, e] : errors) {
        if (!(e > 0.0))
            throw domain_error("rate fit requires positive errors");
        double x = std::log((double)n), y = std::log(e);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    double m = (double)errors.size();
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double check_reproducing(double alpha, double a, double b, double r) {
    if (!(r > 0.0) || r > 1000.0)
        throw domain_error("truncation radius must be in (0, 1000]");
    measure::GJMeasure mu;
    mu.intervals = {{-r, r}};
    if (alpha != 0.0) mu.singularities = {{0.0, alpha, false}};
    int order = std::max(64, (int)(4.0 * r));
    auto rule = orthopoly::composite_quadrature(mu, order);
    double s = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        s += rule.weights[i] *
             specfun::kernel_L(alpha, a, rule.nodes[i], KernelVariant::entire) *
             specfun::kernel_L(alpha, rule.nodes[i], b, KernelVariant::entire);
    if (!std::isfinite(s))
        throw numeric_error("reproducing quadrature did not converge");
    return std::abs(specfun::kernel_L(alpha, a, b, KernelVariant::entire) - s);
}

std::pair<double, double> check_markov_stieltjes(
    const measure::GJMeasure& mu, const RecurrenceTable& table, int n,
    double xi, int l, int k) {
    if (!(l < 0 && 0 < k))
        throw domain_error("need l < 0 < k around the center");
    int window = std::max(-l, k);
    auto zs = cdkernel::kernel_zeros(table, n, xi, window);
    auto lam = [&](int j) { return christoffel(table, n, zs.at(j)); };
    double inner = 0.0, outer = 0.0;
    for (int j = l + 1; j <= k - 1; ++j) inner += lam(j);
    for (int j = l; j <= k; ++j) outer += lam(j);
    double integral = orthopoly::integrate(mu, zs.at(l), zs.at(k), 120);
    return {integral - inner, outer - integral};
}

RatioBand check_nevai_bounds(const RecurrenceTable& table,
                             const std::vector<int>& n_list,
                             const std::vector<double>& xs, double alpha,
                             bool edge) {
    RatioBand band{1e300, -1e300};
    for (int n : n_list)
        for (double x : xs) {
            double env = edge
                             ? std::pow(std::sqrt(1.0 - x) + 1.0 / n,
                                        2.0 * alpha + 1.0)
                             : std::pow(std::abs(x) + 1.0 / n, alpha);
            double ratio = christoffel(table, n, x) * n / env;
            band.lo = std::min(band.lo, ratio);
            band.hi = std::max(band.hi, ratio);
        }
    return band;
}

SpacingReport zero_spacing_report(const RecurrenceTable& table, int n,
                                  double x0, double omega, int window) {
    auto zs = cdkernel::kernel_zeros(table, n, x0, window);
    SpacingReport rep;
    for (int k = zs.k_min(); k <= zs.k_max(); ++k)
        rep.rescaled.push_back(n * omega * (zs.at(k) - x0));
    rep.max_gap = 0.0;
    rep.min_double_gap = 1e300;
    for (size_t i = 1; i < rep.rescaled.size(); ++i)
        rep.max_gap = std::max(rep.max_gap, rep.rescaled[i] - rep.rescaled[i - 1]);
    for (size_t i = 2; i < rep.rescaled.size(); ++i)
        rep.min_double_gap =
            std::min(rep.min_double_gap, rep.rescaled[i] - rep.rescaled[i - 2]);
    return rep;
}

} // namespace opkit::universality

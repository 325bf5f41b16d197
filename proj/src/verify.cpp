#include "opkit/verify.hpp"

#include "opkit/cdkernel.hpp"
#include "opkit/errors.hpp"
#include "opkit/measure.hpp"
#include "opkit/orthopoly.hpp"
#include "opkit/potential.hpp"
#include "opkit/specfun.hpp"
#include "opkit/universality.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace opkit::verify {

using namespace opkit::measure;
using namespace opkit::orthopoly;
using namespace opkit::specfun;
using cdkernel::christoffel;
using cdkernel::kernel_cd;
using cdkernel::kernel_direct;

namespace {

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << "FAILED: " << what;
        }
    }
    void note(const std::string& what) {
        if (detail.tellp() > 0) detail << "; ";
        detail << what;
    }
};

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// ---- 1: sinc reduction --------------------------------------------------
void sinc_reduction(Check& c) {
    double worst = 0.0;
    for (double a = -20.0; a <= 20.0; a += 0.5)
        for (double b = -20.0; b <= 20.0; b += 0.5) {
            if (a == b) continue;
            double got = kernel_L(0.0, a, b, KernelVariant::entire);
            double want = std::sin(a - b) / (M_PI * (a - b));
            worst = std::max(worst, std::abs(got - want));
        }
    c.note("max deviation " + num(worst));
    c.require(worst <= 1e-10, "sinc deviation exceeds 1e-10");
}

// ---- 2: kernel origin values -------------------------------------------
void kernel_origin(Check& c) {
    double worst_j = 0.0, worst_l = 0.0;
    for (double alpha : {-0.5, 0.0, 0.3, 1.0, 2.5}) {
        double j = kernel_J(alpha, 0.0, 0.0, KernelVariant::entire);
        double jref = 1.0 / (std::pow(2.0, 2 * alpha + 2) *
                             std::tgamma(alpha + 1.0) * std::tgamma(alpha + 2.0));
        double l = kernel_L_diag(alpha, 0.0);
        double lref = std::pow(2.0, -(alpha + 1.0)) /
                      (std::tgamma((alpha + 3.0) / 2.0) *
                       std::tgamma((alpha + 1.0) / 2.0));
        worst_j = std::max(worst_j, std::abs(j - jref));
        worst_l = std::max(worst_l, std::abs(l - lref));
        if (alpha == 0.0) {
            c.require(std::abs(j - 0.25) <= 1e-12, "J origin at alpha=0 is not 1/4");
            c.require(std::abs(l - 1.0 / M_PI) <= 1e-12,
                      "L origin at alpha=0 is not 1/pi");
        }
    }
    c.note("J dev " + num(worst_j) + ", L dev " + num(worst_l));
    c.require(worst_j <= 1e-10, "hard-edge origin value off by more than 1e-10");
    c.require(worst_l <= 1e-10, "bulk origin value off by more than 1e-10");
}

// ---- 3: model bulk kernel convergence ----------------------------------
void model_bulk(Check& c) {
    for (double alpha : {-0.5, 1.0}) {
        auto table = symmetric_singular_recurrence(alpha, 1024);
        double ref_max = 0.0;
        std::vector<std::pair<int, double>> errs;
        for (int n : {128, 256, 512, 1024}) {
            double e = 0.0;
            double scale = std::pow((double)n, -(alpha + 1.0));
            for (double a = -5.0; a <= 5.0; a += 0.5)
                for (double b = a; b <= 5.0; b += 0.5) {
                    double pred = kernel_L(alpha, a, b, KernelVariant::entire);
                    if (n == 1024) ref_max = std::max(ref_max, std::abs(pred));
                    double got = scale * kernel_cd(table, n, a / n, b / n);
                    e = std::max(e, std::abs(got - pred));
                }
            errs.push_back({n, e});
        }
        double slope = universality::rate_fit(errs);
        c.note("alpha " + num(alpha) + ": e(1024) " + num(errs.back().second) +
               ", slope " + num(slope));
        c.require(errs.back().second <= 0.02 * ref_max,
                  "final-n error above 2% of the kernel scale");
        c.require(slope >= -1.6 && slope <= -0.6, "rate slope outside [-1.6,-0.6]");
    }
}

// ---- 4: model edge ------------------------------------------------------
void model_edge(Check& c) {
    auto leg = jacobi_recurrence(0.0, 0.0, 1024);
    double anchor_worst = 0.0;
    for (int n : {1, 2, 3, 5, 8, 16, 64, 128, 256, 512, 1024}) {
        double v = n * (double)n * christoffel(leg, n, 1.0);
        anchor_worst = std::max(anchor_worst, std::abs(v - 2.0));
    }
    c.note("anchor dev " + num(anchor_worst));
    c.require(anchor_worst <= 1e-12, "exact edge anchor n^2 lambda_n(1) = 2");

    const int n = 1024;
    for (double alpha : {-0.5, 1.0}) {
        auto table = jacobi_recurrence(alpha, 0.0, n);
        double worst = 0.0;
        for (double a : {0.0, 0.5, 1.0, 2.0}) {
            double lam = christoffel(table, n, 1.0 - a / (2.0 * n * (double)n));
            double v = std::pow((double)n, 2 * alpha + 2) * lam *
                       std::pow(2.0, alpha + 1.0) *
                       kernel_J(alpha, a, a, KernelVariant::entire);
            worst = std::max(worst, std::abs(v - 1.0));
        }
        c.note("alpha " + num(alpha) + " worst dev " + num(worst));
        c.require(worst <= 0.02, "edge limit misses the 2% band");
    }
}

// ---- 5: two-band bulk universality -------------------------------------
void two_band(Check& c) {
    auto T = potential::make_admissible({-3.0, 0.0, 4.0});
    auto sys = potential::inverse_image(T);
    auto eq = potential::equilibrium_density(sys);
    const double x0 = 0.5 * (sys.intervals[1].lo + sys.intervals[1].hi);
    const int n = 512;
    for (double alpha : {1.0, -0.5}) {
        GJMeasure mu;
        mu.intervals = sys.intervals;
        mu.singularities = {{x0, alpha, false}};
        auto rule = composite_quadrature(mu, 620);
        auto table = lanczos_recurrence(mu, n, rule);

        universality::ScanConfig cfg;
        cfg.measure = mu;
        cfg.x0 = x0;
        cfg.alpha = alpha;
        cfg.a_grid = {0.0, 1.0, -1.0, 2.0, -2.0};
        cfg.n_list = {n};
        cfg.mode = universality::ScanMode::bulk_lambda;
        auto rep = universality::scan_bulk(cfg, table, eq);
        double worst0 = 0.0, worst = 0.0;
        for (const auto& r : rep.rows) {
            if (r.a == 0.0) worst0 = std::max(worst0, r.rel_err);
            else worst = std::max(worst, r.rel_err);
        }
        c.note("alpha " + num(alpha) + ": rel_err " + num(worst0) + " at 0, " +
               num(worst) + " off-center");
        c.require(worst0 <= 0.05, "two-band rel_err above 5% at a=0");
        c.require(worst <= 0.08, "two-band rel_err above 8% off-center");
    }
}

// ---- 6: potential identities -------------------------------------------
void potential_identities(Check& c) {
    auto eq1 = potential::equilibrium_density(
        potential::make_system({{-1.0, 1.0}}));
    c.require(std::abs(potential::density_at_eq(eq1, 0.0) - 1.0 / M_PI) <= 1e-14,
              "arcsine value at 0");
    c.require(std::abs(potential::edge_constant(eq1, 1.0) - 1.0) <= 1e-10,
              "M([-1,1],1) = 1");

    auto t2 = potential::make_admissible({-1.0, 0.0, 2.0});
    double M = potential::edge_constant(eq1, 1.0);
    c.require(std::abs(std::abs(t2.deriv(1.0)) - 4.0 * M * M) <= 1e-10,
              "|T2'(1)| = 4 M^2");

    double worst = 0.0;
    for (auto coeffs :
         {std::vector<double>{0.0, 1.0}, std::vector<double>{-3.0, 0.0, 4.0}}) {
        auto T = potential::make_admissible(coeffs);
        auto eq = potential::equilibrium_density(potential::inverse_image(T));
        int hits = 0;
        for (const auto& iv : eq.system.intervals) {
            double span = iv.hi - iv.lo;
            for (int i = 1; hits < 100 && i <= 50; ++i) {
                double x = iv.lo + span * i / 51.0;
                worst = std::max(worst,
                                 std::abs(potential::inverse_image_density(T, x) -
                                          potential::density_at_eq(eq, x)));
                ++hits;
            }
        }
    }
    c.note("density identity dev " + num(worst));
    c.require(worst <= 1e-8, "inverse-image density identity");
}

// ---- 7: reproducing identity -------------------------------------------
void reproducing(Check& c) {
    double r50 = universality::check_reproducing(1.0, 0.7, -1.3, 50.0);
    double r100 = universality::check_reproducing(1.0, 0.7, -1.3, 100.0);
    double r200 = universality::check_reproducing(1.0, 0.7, -1.3, 200.0);
    c.note("residuals " + num(r50) + " > " + num(r100) + " > " + num(r200));
    c.require(r50 > r100 && r100 > r200, "residuals strictly decreasing in r");
    c.require(r200 <= 1e-2, "residual(200) below 1e-2");
}

// ---- 8: Markov-Stieltjes sandwich --------------------------------------
void markov_stieltjes(Check& c) {
    auto leg = make_model_bulk(0.0);
    auto t8 = jacobi_recurrence(0.0, 0.0, 8);
    auto [lo1, hi1] = universality::check_markov_stieltjes(leg, t8, 8, 0.0, -2, 2);
    auto mu = make_model_bulk(1.0);
    auto t64 = symmetric_singular_recurrence(1.0, 64);
    auto [lo2, hi2] =
        universality::check_markov_stieltjes(mu, t64, 64, 0.1, -2, 2);
    c.note("slacks " + num(lo1) + ", " + num(hi1) + ", " + num(lo2) + ", " +
           num(hi2));
    for (double s : {lo1, hi1, lo2, hi2})
        c.require(s >= -1e-10, "sandwich slack below -1e-10");
}

// ---- 9: oracle equivalence ----------------------------------------------
void oracle_equivalence(Check& c) {
    auto T = potential::make_admissible({-3.0, 0.0, 4.0});
    auto band_sys = potential::inverse_image(T);

    std::vector<std::pair<GJMeasure, double>> fixtures;
    fixtures.push_back({make_model_bulk(0.0), 0.3});
    fixtures.push_back({make_model_bulk(1.0), 0.3});
    fixtures.push_back({make_model_edge(1.0), 0.3});
    GJMeasure two;
    two.intervals = band_sys.intervals;
    fixtures.push_back({two, 0.5 * (band_sys.intervals[1].lo +
                                    band_sys.intervals[1].hi)});

    double worst = 0.0;
    for (const auto& [mu, x] : fixtures) {
        auto rule = composite_quadrature(mu, 90);
        auto table = lanczos_recurrence(mu, 14, rule);
        for (int n = 1; n <= 12; ++n) {
            double a = christoffel(table, n, x);
            double b = cdkernel::christoffel_oracle(mu, n, x);
            worst = std::max(worst, std::abs(a - b) / std::abs(b));
        }
    }
    c.note("christoffel rel dev " + num(worst));
    c.require(worst <= 1e-9, "christoffel vs oracle beyond 1e-9");

    auto t = jacobi_recurrence(0.0, 0.0, 64);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> U(-0.99, 0.99);
    double kworst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        double x = U(rng), y = U(rng);
        for (int n : {2, 13, 64}) {
            double d = kernel_direct(t, n, x, y);
            kworst = std::max(kworst, std::abs(kernel_cd(t, n, x, y) - d) /
                                          std::max(1.0, std::abs(d)));
        }
    }
    c.note("kernel rel dev " + num(kworst));
    c.require(kworst <= 1e-9, "kernel_cd vs kernel_direct beyond 1e-9");
}

// ---- 10: zero structure -------------------------------------------------
void zero_structure(Check& c) {
    auto t = jacobi_recurrence(0.0, 0.0, 64);
    const int n = 24;
    auto pz = poly_zeros(t, n);
    auto zs = cdkernel::kernel_zeros(t, n, 0.1, 8);
    bool interlace = true;
    for (int k = zs.k_min(); k < zs.k_max(); ++k) {
        int count = 0;
        for (double z : pz)
            if (zs.at(k) < z && z < zs.at(k + 1)) ++count;
        if (count != 1) interlace = false;
    }
    c.require(interlace, "exactly one p_n zero between consecutive kernel zeros");

    for (double alpha : {0.0, 1.0}) {
        auto table = alpha == 0.0 ? jacobi_recurrence(0.0, 0.0, 512)
                                  : symmetric_singular_recurrence(1.0, 512);
        auto rep = universality::zero_spacing_report(table, 512, 0.0, 1.0, 10);
        c.note("alpha " + num(alpha) + ": max gap " + num(rep.max_gap) +
               ", min double gap " + num(rep.min_double_gap));
        c.require(rep.max_gap <= 2.0 * M_PI, "single gaps bounded by 2 pi");
        c.require(rep.min_double_gap >= M_PI / 4.0,
                  "double gaps bounded below by pi/4");
        if (alpha == 0.0) {
            for (size_t i = 1; i < rep.rescaled.size(); ++i) {
                double gap = rep.rescaled[i] - rep.rescaled[i - 1];
                c.require(std::abs(gap / M_PI - 1.0) < 0.1,
                          "sinc lattice spacing within 10%");
            }
        }
    }
}

const std::vector<std::pair<std::string, std::pair<std::function<void(Check&)>,
                                                   double>>>&
registry() {
    // name -> (suite, runtime budget in seconds; 0 = no budget)
    static const std::vector<
        std::pair<std::string, std::pair<std::function<void(Check&)>, double>>>
        reg = {
            {"sinc-reduction", {sinc_reduction, 1.0}},
            {"kernel-origin", {kernel_origin, 0.0}},
            {"model-bulk", {model_bulk, 60.0}},
            {"model-edge", {model_edge, 0.0}},
            {"two-band", {two_band, 120.0}},
            {"potential-identities", {potential_identities, 0.0}},
            {"reproducing", {reproducing, 0.0}},
            {"markov-stieltjes", {markov_stieltjes, 0.0}},
            {"oracle-equivalence", {oracle_equivalence, 0.0}},
            {"zero-structure", {zero_structure, 0.0}},
        };
    return reg;
}

} // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& [name, _] : registry()) names.push_back(name);
    return names;
}

CriterionResult run_suite(const std::string& name) {
    for (const auto& [n, entry] : registry()) {
        if (n != name) continue;
        CriterionResult res;
        res.name = name;
        Check c;
        auto start = std::chrono::steady_clock::now();
        try {
            entry.first(c);
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        res.seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
        if (entry.second > 0.0)
            c.require(res.seconds < entry.second,
                      "runtime budget of " + num(entry.second) + "s");
        res.pass = c.pass;
        res.detail = c.detail.str();
        return res;
    }
    throw domain_error("unknown verification suite: " + name);
}

std::vector<CriterionResult> run_all() {
    std::vector<CriterionResult> out;
    for (const auto& name : suite_names()) out.push_back(run_suite(name));
    return out;
}

} // namespace opkit::verify

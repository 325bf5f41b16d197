#include "opkit/potential.hpp"

#include "opkit/errors.hpp"
#include "opkit/orthopoly.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace opkit::potential {

namespace {

double horner(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

std::vector<double> differentiate(const std::vector<double>& c) {
    std::vector<double> d;
    for (size_t k = 1; k < c.size(); ++k) d.push_back(k * c[k]);
    return d;
}

// All roots of the polynomial via the companion matrix.
std::vector<std::complex<double>> poly_roots(const std::vector<double>& c) {
    int deg = (int)c.size() - 1;
    while (deg > 0 && c[deg] == 0.0) --deg;
    if (deg < 1) return {};
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 0; i < deg; ++i) C(i, deg - 1) = -c[i] / c[deg];
    for (int i = 1; i < deg; ++i) C(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
    std::vector<std::complex<double>> out;
    for (int i = 0; i < deg; ++i) out.push_back(es.eigenvalues()[i]);
    return out;
}

std::vector<double> real_roots(const std::vector<double>& c, double im_tol) {
    std::vector<double> out;
    for (auto z : poly_roots(c))
        if (std::abs(z.imag()) <= im_tol) out.push_back(z.real());
    std::sort(out.begin(), out.end());
    return out;
}

// Endpoint polynomial R(x) = prod (x - e_j) evaluated as a product.
double endpoint_product(const IntervalSystem& sys, double x) {
    double r = 1.0;
    for (const auto& iv : sys.intervals) r *= (x - iv.lo) * (x - iv.hi);
    return r;
}

// Gauss-Chebyshev integral of g(t)/sqrt((t-lo)(hi-t)) over [lo, hi].
template <class F>
double chebyshev_integral(F&& g, double lo, double hi, int m) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double s = 0.0;
    for (int i = 1; i <= m; ++i) {
        double t = mid + half * std::cos((2.0 * i - 1.0) * M_PI / (2.0 * m));
        s += g(t);
    }
    return s * M_PI / m;
}

double bisect_to(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
        double m = 0.5 * (lo + hi), fm = f(m);
        if (fm == 0.0) return m;
        if ((flo < 0) != (fm < 0)) hi = m;
        else { lo = m; flo = fm; }
    }
    return 0.5 * (lo + hi);
}

} // namespace

IntervalSystem make_system(const std::vector<measure::Interval>& intervals) {
    if (intervals.empty()) throw domain_error("interval system is empty");
    IntervalSystem sys{intervals};
    std::sort(sys.intervals.begin(), sys.intervals.end(),
              [](const measure::Interval& p, const measure::Interval& q) {
                  return p.lo < q.lo;
              });
    for (const auto& iv : sys.intervals)
        if (!(iv.lo < iv.hi)) throw domain_error("degenerate band");
    for (size_t i = 0; i + 1 < sys.intervals.size(); ++i)
        if (sys.intervals[i].hi > sys.intervals[i + 1].lo)
            throw domain_error("bands overlap");
    return sys;
}

EquilibriumDensity equilibrium_density(const IntervalSystem& system) {
    const int N = system.bands();
    if (N > 8) throw domain_error("at most 8 bands supported");
    EquilibriumDensity eq;
    eq.system = system;
    eq.gap_poly.assign(N, 0.0);
    eq.gap_poly[N - 1] = 1.0; // monic x^{N-1}
    if (N == 1) return eq;

    // Linear system: for each gap, integral of (t^{N-1} + sum c_k t^k)
    // over the gap against 1/sqrt|R| must vanish.
    const int m = 240;
    Eigen::MatrixXd A(N - 1, N - 1);
    Eigen::VectorXd rhs(N - 1);
    for (int g = 0; g < N - 1; ++g) {
        double lo = system.intervals[g].hi, hi = system.intervals[g + 1].lo;
        if (!(lo < hi)) {
            // Touching bands: the gap degenerates, the root sits at the
            // touchpoint.  Encode as q(lo) = 0.
            for (int k = 0; k < N - 1; ++k) A(g, k) = std::pow(lo, k);
            rhs(g) = -std::pow(lo, N - 1);
            continue;
        }
        std::vector<double> mom(N, 0.0);
        for (int k = 0; k < N; ++k)
            mom[k] = chebyshev_integral(
                [&](double t) {
                    double smooth =
                        std::sqrt(std::abs(endpoint_product(system, t) /
                                           ((t - lo) * (hi - t))));
                    return std::pow(t, k) / smooth;
                },
                lo, hi, m);
        for (int k = 0; k < N - 1; ++k) A(g, k) = mom[k];
        rhs(g) = -mom[N - 1];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (!lu.isInvertible())
        throw numeric_error("gap system is singular");
    Eigen::VectorXd c = lu.solve(rhs);
    for (int k = 0; k < N - 1; ++k) eq.gap_poly[k] = c(k);
    return eq;
}

double density_at_eq(const EquilibriumDensity& eq, double x) {
    bool interior = false;
    for (const auto& iv : eq.system.intervals)
        if (iv.lo < x && x < iv.hi) interior = true;
    if (!interior)
        throw domain_error("point is not interior to a band");
    double R = endpoint_product(eq.system, x);
    return std::abs(horner(eq.gap_poly, x)) / (M_PI * std::sqrt(std::abs(R)));
}

double total_mass(const EquilibriumDensity& eq, int order) {
    double s = 0.0;
    for (const auto& iv : eq.system.intervals)
        s += chebyshev_integral(
            [&](double t) {
                double smooth =
                    std::sqrt(std::abs(endpoint_product(eq.system, t) /
                                       ((t - iv.lo) * (iv.hi - t))));
                return std::abs(horner(eq.gap_poly, t)) / (M_PI * smooth);
            },
            iv.lo, iv.hi, order);
    return s;
}

double edge_constant(const EquilibriumDensity& eq, double x0) {
    // |R(x)| ~ |R'(x0)| |x - x0| near an endpoint, so the sqrt factor in the
    // density cancels against the |x-x0|^{1/2} in the limit.
    bool endpoint = false;
    double deriv = 1.0;
    const double tol = 1e-9;
    for (const auto& iv : eq.system.intervals)
        for (double e : {iv.lo, iv.hi})
            if (std::abs(x0 - e) <= tol * std::max(1.0, std::abs(e))) {
                endpoint = true;
                x0 = e;
            }
    if (!endpoint) throw domain_error("x0 is not a band endpoint");
    for (const auto& iv : eq.system.intervals)
        for (double e : {iv.lo, iv.hi})
            if (e != x0) deriv *= (x0 - e);
    if (deriv == 0.0)
        throw domain_error("edge constant undefined at a band touchpoint");
    return std::sqrt(2.0) * std::abs(horner(eq.gap_poly, x0)) /
           std::sqrt(std::abs(deriv));
}

double AdmissiblePolynomial::eval(double x) const { return horner(coeffs, x); }

double AdmissiblePolynomial::deriv(double x) const {
    return horner(differentiate(coeffs), x);
}

std::vector<double> AdmissiblePolynomial::critical_points() const {
    return real_roots(differentiate(coeffs), 1e-9);
}

AdmissiblePolynomial make_admissible(const std::vector<double>& coeffs) {
    if (coeffs.size() < 2 || coeffs.back() == 0.0)
        throw schema_error("polynomial degree must be at least 1 with a "
                           "nonzero leading coefficient");
    AdmissiblePolynomial T{coeffs};
    const int N = T.degree();
    double scale = 0.0;
    for (double c : coeffs) scale = std::max(scale, std::abs(c));

    auto roots = poly_roots(coeffs);
    std::vector<double> re;
    for (auto z : roots) {
        if (std::abs(z.imag()) > 1e-8 * std::max(1.0, std::abs(z)))
            throw schema_error("polynomial has a non-real zero");
        re.push_back(z.real());
    }
    std::sort(re.begin(), re.end());
    for (size_t i = 0; i + 1 < re.size(); ++i)
        if (re[i + 1] - re[i] < 1e-8 * std::max(1.0, std::abs(re[i])))
            throw schema_error("polynomial has a repeated zero");

    for (double c : T.critical_points())
        if (std::abs(T.eval(c)) < 1.0 - 1e-10)
            throw schema_error("critical value of modulus below 1");
    (void)N;
    (void)scale;
    return T;
}

IntervalSystem inverse_image(const AdmissiblePolynomial& T) {
    const int N = T.degree();
    // Monotone pieces are delimited by the critical points; extend outward
    // until |T| exceeds 1.
    std::vector<double> cp = T.critical_points();
    // Cauchy bound: every solution of T = +-1 lies inside [-B, B].
    double B = 0.0;
    for (int i = 0; i < N; ++i) B = std::max(B, std::abs(T.coeffs[i]));
    B = 1.0 + (B + 1.0) / std::abs(T.coeffs.back());
    double left = -B, right = B;
    if (!cp.empty()) {
        left = std::min(left, cp.front() - 1.0);
        right = std::max(right, cp.back() + 1.0);
    }

    std::vector<double> breaks;
    breaks.push_back(left);
    for (double c : cp)
        if (left < c && c < right) breaks.push_back(c);
    breaks.push_back(right);

    // Boundary points where |T| = 1.
    std::vector<double> bnd;
    for (size_t i = 0; i + 1 < breaks.size(); ++i) {
        double lo = breaks[i], hi = breaks[i + 1];
        for (double level : {1.0, -1.0}) {
            auto f = [&](double x) { return T.eval(x) - level; };
            double flo = f(lo), fhi = f(hi);
            if (flo == 0.0) bnd.push_back(lo);
            if (fhi == 0.0) bnd.push_back(hi);
            if ((flo < 0) != (fhi < 0))
                bnd.push_back(bisect_to(f, lo, hi));
        }
    }
    // Critical points exactly on level |T| = 1 are band touchpoints.
    for (double c : cp)
        if (std::abs(std::abs(T.eval(c)) - 1.0) < 1e-9) bnd.push_back(c);
    std::sort(bnd.begin(), bnd.end());
    bnd.erase(std::unique(bnd.begin(), bnd.end(),
                          [](double p, double q) { return q - p < 1e-11; }),
              bnd.end());

    std::vector<measure::Interval> bands;
    for (size_t i = 0; i + 1 < bnd.size(); ++i) {
        double mid = 0.5 * (bnd[i] + bnd[i + 1]);
        if (std::abs(T.eval(mid)) < 1.0)
            bands.push_back({bnd[i], bnd[i + 1]});
    }
    if ((int)bands.size() != N)
        throw numeric_error("band count does not match the degree");
    IntervalSystem sys{bands};
    return sys;
}

double inverse_image_density(const AdmissiblePolynomial& T, double x) {
    double v = T.eval(x);
    if (std::abs(v) >= 1.0)
        throw domain_error("point maps outside (-1,1)");
    return std::abs(T.deriv(x)) /
           (T.degree() * M_PI * std::sqrt(1.0 - v * v));
}

double pushforward_check(const AdmissiblePolynomial& T,
                         const std::function<double(double)>& f) {
    auto gauss = [](double lo, double hi, int order,
                    const std::function<double(double)>& g) {
        auto mu = measure::make_lebesgue({{lo, hi}});
        auto rule = orthopoly::composite_quadrature(mu, order);
        double s = 0.0;
        for (size_t i = 0; i < rule.nodes.size(); ++i)
            s += rule.weights[i] * g(rule.nodes[i]);
        return s;
    };
    // Reference side; split at 0 in case f kinks there.
    double lhs = gauss(-1.0, 0.0, 160, f) + gauss(0.0, 1.0, 160, f);

    // Image side; split bands at the zeros of T so f(T(x)) is smooth per piece.
    auto sys = inverse_image(T);
    std::vector<double> tz = real_roots(T.coeffs, 1e-9);
    double rhs = 0.0;
    for (const auto& iv : sys.intervals) {
        std::vector<double> cuts{iv.lo};
        for (double z : tz)
            if (iv.lo < z && z < iv.hi) cuts.push_back(z);
        cuts.push_back(iv.hi);
        std::sort(cuts.begin(), cuts.end());
        for (size_t i = 0; i + 1 < cuts.size(); ++i)
            rhs += gauss(cuts[i], cuts[i + 1], 160, [&](double x) {
                return f(T.eval(x)) * std::abs(T.deriv(x));
            });
    }
    rhs /= T.degree();
    return std::abs(lhs - rhs);
}

} // namespace opkit::potential

#include "opkit/cdkernel.hpp"

#include "opkit/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace opkit::cdkernel {

using orthopoly::RecurrenceTable;
using orthopoly::eval_orthonormal;
using orthopoly::eval_orthonormal_deriv;

namespace {

void require_order(const RecurrenceTable& table, int n) {
    if (n < 1) throw domain_error("kernel order must be positive");
    if (n > table.size())
        throw domain_error("kernel order exceeds recurrence table size");
}

} // namespace

double kernel_direct(const RecurrenceTable& table, int n, double x, double y) {
    require_order(table, n);
    // One forward recurrence per argument, accumulating the products.
    double px0 = 1.0 / std::sqrt(table.mass), px1 = 0.0;
    double py0 = px0, py1 = 0.0;
    double sum = px0 * py0;
    for (int k = 0; k + 1 < n; ++k) {
        double px2 = ((x - table.b(k)) * px0 - (k > 0 ? table.a(k) * px1 : 0.0)) /
                     table.a(k + 1);
        double py2 = ((y - table.b(k)) * py0 - (k > 0 ? table.a(k) * py1 : 0.0)) /
                     table.a(k + 1);
        px1 = px0; px0 = px2;
        py1 = py0; py0 = py2;
        sum += px0 * py0;
    }
    return sum;
}

double kernel_cd(const RecurrenceTable& table, int n, double x, double y) {
    require_order(table, n);
    const double tol = 1e-8 * std::max(1.0, std::abs(x));
    if (std::abs(x - y) < tol) {
        double m = 0.5 * (x + y);
        auto e = eval_orthonormal_deriv(table, n, m);
        return table.a(n) * (e.dpn * e.pnm1 - e.dpnm1 * e.pn);
    }
    auto [pnx, pnm1x] = eval_orthonormal(table, n, x);
    auto [pny, pnm1y] = eval_orthonormal(table, n, y);
    return table.a(n) * (pnx * pnm1y - pnm1x * pny) / (x - y);
}

double christoffel(const RecurrenceTable& table, int n, double x) {
    require_order(table, n);
    // Diagonal kernel as a sum of squares: no cancellation, unlike the
    // confluent CD form, which matters for the exact edge anchors.
    long double pkm1 = 0.0L, pk = 1.0L / sqrtl((long double)table.mass);
    long double sum = pk * pk;
    for (int k = 0; k + 1 < n; ++k) {
        long double next = ((x - table.bl(k)) * pk -
                            (k > 0 ? table.al(k) * pkm1 : 0.0L)) /
                           table.al(k + 1);
        pkm1 = pk;
        pk = next;
        sum += pk * pk;
    }
    return (double)(1.0L / sum);
}

double christoffel_oracle(const measure::GJMeasure& mu, int n, double x) {
    if (n < 1 || n > 20)
        throw domain_error("christoffel oracle limited to n <= 20");
    // Minimize integral of P^2 dmu over deg < n with P(x) = 1, working in the
    // Chebyshev basis on the convex hull of the support.
    const double lo = mu.lo(), hi = mu.hi();
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    auto cheb = [&](double t, std::vector<double>& T) {
        double u = (t - mid) / half;
        T[0] = 1.0;
        if (T.size() > 1) T[1] = u;
        for (size_t k = 2; k < T.size(); ++k) T[k] = 2.0 * u * T[k - 1] - T[k - 2];
    };
    auto rule = orthopoly::composite_quadrature(mu, 4 * n + 20);
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
    std::vector<double> T(n);
    for (size_t j = 0; j < rule.nodes.size(); ++j) {
        cheb(rule.nodes[j], T);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c <= r; ++c)
                G(r, c) += rule.weights[j] * T[r] * T[c];
    }
    G = G.selfadjointView<Eigen::Lower>();
    std::vector<double> Tx(n);
    cheb(x, Tx);
    Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(Tx.data(), n);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
    if (ldlt.info() != Eigen::Success)
        throw numeric_error("Gram solve failed in christoffel oracle");
    double q = v.dot(ldlt.solve(v));
    if (!(q > 0.0) || !std::isfinite(q))
        throw numeric_error("Gram solve produced a nonpositive quadratic form");
    return 1.0 / q;
}

double normalized_kernel(const measure::GJMeasure& mu,
                         const RecurrenceTable& table, int n, double x,
                         double y) {
    double wx = measure::density_at(mu, x);
    double wy = measure::density_at(mu, y);
    if (std::isinf(wx) || std::isinf(wy))
        return std::numeric_limits<double>::infinity();
    return std::sqrt(wx * wy) * kernel_cd(table, n, x, y);
}

double f_n_ratio(const RecurrenceTable& table, int n, double x0, double omega,
                 double a, double b) {
    if (!(omega > 0.0)) throw domain_error("omega must be positive");
    double xs = x0 + a / (omega * n);
    double ys = x0 + b / (omega * n);
    return kernel_cd(table, n, xs, ys) / kernel_cd(table, n, x0, x0);
}

namespace {

double bisect_polish(const RecurrenceTable& table, int n, double pnxi,
                     double pnm1xi, double lo, double hi) {
    auto psi = [&](double y) {
        auto [pny, pnm1y] = eval_orthonormal(table, n, y);
        return pnxi * pnm1y - pny * pnm1xi;
    };
    double flo = psi(lo);
    while (hi - lo > 1e-13) {
        double m = 0.5 * (lo + hi);
        double fm = psi(m);
        if (fm == 0.0) { lo = hi = m; break; }
        if ((flo < 0) != (fm < 0)) hi = m;
        else { lo = m; flo = fm; }
    }
    double r = 0.5 * (lo + hi);
    auto e = eval_orthonormal_deriv(table, n, r);
    double f = pnxi * e.pnm1 - e.pn * pnm1xi;
    double df = pnxi * e.dpnm1 - e.dpn * pnm1xi;
    if (df != 0.0) {
        double step = f / df;
        if (std::abs(step) < 1e-10 * std::max(1.0, std::abs(r))) r -= step;
    }
    return r;
}

} // namespace

KernelZeroSet kernel_zeros(const RecurrenceTable& table, int n, double xi,
                           int window) {
    require_order(table, n);
    if (window < 1 || window > n / 2)
        throw domain_error("window must lie in [1, n/2]");
    auto pz = orthopoly::poly_zeros(table, n);
    auto [pnxi, pnm1xi] = eval_orthonormal(table, n, xi);
    double scale = std::abs(pnxi) + std::abs(pnm1xi);

    std::vector<double> zeros;
    if (std::abs(pnxi) <= 1e-13 * scale) {
        // psi_n(xi, .) is proportional to p_n; its zeros are exactly pz.
        zeros = pz;
    } else {
        auto psi = [&](double y) {
            auto [pny, pnm1y] = eval_orthonormal(table, n, y);
            return pnxi * pnm1y - pny * pnm1xi;
        };
        zeros.push_back(xi);
        // One zero strictly between consecutive zeros of p_n; the bracket
        // containing xi holds xi itself.
        for (int i = 0; i + 1 < n; ++i) {
            if (pz[i] < xi && xi < pz[i + 1]) continue;
            double flo = psi(pz[i]), fhi = psi(pz[i + 1]);
            if ((flo < 0) == (fhi < 0)) continue; // degenerate, skip
            zeros.push_back(bisect_polish(table, n, pnxi, pnm1xi, pz[i], pz[i + 1]));
        }
        // Exterior zero: expand geometrically past each end.
        double span = std::max(pz.back() - pz.front(), 1e-8);
        double limit = span + 1.0;
        for (int side = 0; side < 2; ++side) {
            double anchor = side == 0 ? pz.back() : pz.front();
            double dir = side == 0 ? 1.0 : -1.0;
            if (side == 0 && xi > pz.back()) continue;
            if (side == 1 && xi < pz.front()) continue;
            double fa = psi(anchor);
            for (double d = 1e-3 * span; d <= limit; d *= 2.0) {
                double fb = psi(anchor + dir * d);
                if ((fa < 0) != (fb < 0)) {
                    double lo = std::min(anchor, anchor + dir * d);
                    double hi = std::max(anchor, anchor + dir * d);
                    zeros.push_back(
                        bisect_polish(table, n, pnxi, pnm1xi, lo, hi));
                    break;
                }
            }
            // absence after expansion is allowed
        }
        std::sort(zeros.begin(), zeros.end());
    }

    // Locate the center and trim to the requested window.
    int ci = int(std::lower_bound(zeros.begin(), zeros.end(), xi) - zeros.begin());
    if (ci == (int)zeros.size() ||
        std::abs(zeros[ci] - xi) >
            (ci > 0 ? std::abs(zeros[ci - 1] - xi) : 1e300))
        --ci;
    if (ci - window < 0)
        throw numeric_error("bracket exhaustion on the left of the center");
    if (ci + window >= (int)zeros.size())
        throw numeric_error("bracket exhaustion on the right of the center");
    KernelZeroSet out;
    out.center = xi;
    out.zeros.assign(zeros.begin() + (ci - window),
                     zeros.begin() + (ci + window + 1));
    out.center_index = window;
    return out;
}

double correlation_det(const measure::GJMeasure& mu,
                       const RecurrenceTable& table, int n,
                       const std::vector<double>& points) {
    const int k = (int)points.size();
    if (k < 1 || k > 12) throw domain_error("correlation order must be in [1, 12]");
    std::vector<double> w(k);
    for (int i = 0; i < k; ++i) {
        w[i] = measure::density_at(mu, points[i]);
        if (std::isinf(w[i]))
            throw domain_error("correlation point hits a divergent weight");
    }
    Eigen::MatrixXd M(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j <= i; ++j) {
            double v = std::sqrt(w[i] * w[j]) *
                       kernel_cd(table, n, points[i], points[j]);
            M(i, j) = v;
            M(j, i) = v;
        }
    return M.determinant();
}

} // namespace opkit::cdkernel

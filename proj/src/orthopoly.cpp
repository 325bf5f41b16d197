#include "opkit/orthopoly.hpp"
#include "opkit/errors.hpp"
#include "opkit/specfun.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace opkit::orthopoly {

using measure::GJMeasure;

namespace {

// Monic Jacobi recurrence for (1-x)^a (1+x)^b on [-1,1] (Gautschi's r_jacobi).
struct Monic {
    std::vector<long double> alpha; // diagonal
    std::vector<long double> beta;  // beta_0 = mass, a_k = sqrt(beta_k)
};

Monic monic_jacobi(double a, double b, int n) {
    if (!(a > -1.0) || !(b > -1.0))
        throw domain_error("jacobi parameters must exceed -1");
    Monic m;
    m.alpha.resize(n + 1);
    m.beta.resize(n + 1);
    const long double al = a, bl = b;
    const long double ab = al + bl;
    m.alpha[0] = (bl - al) / (ab + 2.0L);
    m.beta[0] = powl(2.0L, ab + 1.0L) *
                (long double)specfun::gamma_fn(a + 1.0) *
                (long double)specfun::gamma_fn(b + 1.0) /
                (long double)specfun::gamma_fn(a + b + 2.0);
    for (int k = 1; k <= n; ++k) {
        const long double t = 2.0L * k + ab;
        m.alpha[k] = (bl * bl - al * al) / (t * (t + 2.0L));
        if (k == 1)
            m.beta[k] = 4.0L * (al + 1.0L) * (bl + 1.0L) /
                        ((ab + 2.0L) * (ab + 2.0L) * (ab + 3.0L));
        else
            m.beta[k] = 4.0L * k * (k + al) * (k + bl) * (k + ab) /
                        (t * t * (t + 1.0L) * (t - 1.0L));
    }
    return m;
}

RecurrenceTable from_monic(const Monic& m, int n) {
    RecurrenceTable t;
    t.mass = (double)m.beta[0];
    t.diag.assign(m.alpha.begin(), m.alpha.begin() + n);
    t.offdiag.resize(n);
    for (int k = 1; k <= n; ++k) t.offdiag[k - 1] = sqrtl(m.beta[k]);
    return t;
}

// Gauss rule for monic coefficients via Golub-Welsch.
void golub_welsch(const Monic& m, int npts, std::vector<double>* nodes,
                  std::vector<double>* weights) {
    Eigen::VectorXd diag(npts), sub(npts - 1 > 0 ? npts - 1 : 0);
    for (int i = 0; i < npts; ++i) diag[i] = m.alpha[i];
    for (int i = 0; i + 1 < npts; ++i) sub[i] = std::sqrt(m.beta[i + 1]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success)
        throw numeric_error("golub_welsch: eigen decomposition failed");
    nodes->resize(npts);
    weights->resize(npts);
    for (int i = 0; i < npts; ++i) {
        (*nodes)[i] = es.eigenvalues()[i];
        const double v = es.eigenvectors()(0, i);
        (*weights)[i] = m.beta[0] * v * v;
    }
}

struct Panel {
    double lo, hi;
    double exp_lo = 0.0, exp_hi = 0.0; // algebraic exponents at the endpoints
};

// Split the support at interior singularities; endpoint singularities attach
// their exponent to the adjacent panel edge.
std::vector<Panel> make_panels(const GJMeasure& mu, double clip_lo, double clip_hi) {
    std::vector<Panel> panels;
    for (const auto& iv : mu.intervals) {
        double lo = std::max(iv.lo, clip_lo), hi = std::min(iv.hi, clip_hi);
        if (!(lo < hi)) continue;
        std::vector<double> cuts = {lo, hi};
        for (const auto& s : mu.singularities)
            if (s.location > lo && s.location < hi) cuts.push_back(s.location);
        std::sort(cuts.begin(), cuts.end());
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            Panel p{cuts[i], cuts[i + 1]};
            for (const auto& s : mu.singularities) {
                if (s.location == p.lo) p.exp_lo = s.exponent;
                if (s.location == p.hi) p.exp_hi = s.exponent;
            }
            panels.push_back(p);
        }
    }
    return panels;
}

QuadratureRule build_rule(const GJMeasure& mu, int order, double clip_lo,
                          double clip_hi) {
    if (order < 1) throw domain_error("quadrature order must be positive");
    measure::validate(mu);
    QuadratureRule rule;
    for (const auto& p : make_panels(mu, clip_lo, clip_hi)) {
        // Gauss-Jacobi on [-1,1] with weight (1-u)^{exp_hi} (1+u)^{exp_lo}.
        Monic m = monic_jacobi(p.exp_hi, p.exp_lo, order);
        std::vector<double> un, uw;
        golub_welsch(m, order, &un, &uw);
        const double half = 0.5 * (p.hi - p.lo);
        const double mid = 0.5 * (p.hi + p.lo);
        const double scale = std::pow(half, p.exp_lo + p.exp_hi + 1.0);
        for (int i = 0; i < order; ++i) {
            const double x = mid + half * un[i];
            // Density factors not absorbed into the Jacobi weight.
            double extra = mu.smooth(x);
            for (const auto& s : mu.singularities)
                if (s.location != p.lo && s.location != p.hi)
                    extra *= std::pow(std::abs(x - s.location), s.exponent);
            rule.nodes.push_back(x);
            rule.weights.push_back(uw[i] * scale * extra);
        }
    }
    return rule;
}

} // namespace

RecurrenceTable jacobi_recurrence(double alpha, double beta, int n) {
    if (n <= 0 || n > 100000)
        throw domain_error("jacobi_recurrence: n out of range");
    return from_monic(monic_jacobi(alpha, beta, n), n);
}

RecurrenceTable symmetric_singular_recurrence(double alpha, int n) {
    if (!(alpha > -1.0))
        throw domain_error("symmetric_singular_recurrence: alpha must exceed -1");
    if (n <= 0 || n > 100000)
        throw domain_error("symmetric_singular_recurrence: n out of range");
    // Under t = x^2 the even part maps to the weight t^{(alpha-1)/2} on [0,1],
    // a shifted Jacobi weight with parameters (0, (alpha-1)/2).
    const double bpar = 0.5 * (alpha - 1.0);
    Monic mj = monic_jacobi(0.0, bpar, n + 2);
    // Shift [-1,1] -> [0,1].
    std::vector<long double> av(n + 2), bv(n + 2);
    av[0] = 0.5L * (1.0L + mj.alpha[0]);
    bv[0] = 2.0L / (alpha + 1.0L); // integral of t^{(alpha-1)/2} over [0,1]
    for (int k = 1; k <= n + 1; ++k) {
        av[k] = 0.5L * (1.0L + mj.alpha[k]);
        bv[k] = 0.25L * mj.beta[k];
    }
    // Interleave into the symmetric monic recurrence x p = p_{k+1} + c_k p_{k-1}.
    std::vector<long double> c(n + 1, 0.0L);
    c[0] = bv[0] * 2.0L; // placeholder; c_0 unused, mass handled separately
    if (n >= 1) c[1] = av[0];
    for (int k = 1; 2 * k <= n; ++k) {
        c[2 * k] = bv[k] / c[2 * k - 1];
        if (2 * k + 1 <= n) c[2 * k + 1] = av[k] - c[2 * k];
    }
    RecurrenceTable t;
    t.mass = 2.0 / (alpha + 1.0);
    t.diag.assign(n, 0.0L);
    t.offdiag.resize(n);
    for (int k = 1; k <= n; ++k) {
        if (!(c[k] > 0.0L))
            throw numeric_error("symmetric split produced a nonpositive coefficient");
        t.offdiag[k - 1] = sqrtl(c[k]);
    }
    return t;
}

QuadratureRule composite_quadrature(const GJMeasure& mu, int order) {
    return build_rule(mu, order, mu.lo(), mu.hi());
}

double integrate(const GJMeasure& mu, double lo, double hi, int order) {
    if (!(lo <= hi)) throw domain_error("integrate: lo must not exceed hi");
    QuadratureRule r = build_rule(mu, order, lo, hi);
    double s = 0.0;
    for (double w : r.weights) s += w;
    return s;
}

RecurrenceTable lanczos_recurrence(const GJMeasure& mu, int n,
                                   const QuadratureRule& rule) {
    (void)mu;
    const int ncap = (int)rule.nodes.size();
    if (ncap < n + 1)
        throw domain_error("lanczos_recurrence: rule has too few nodes for n");
    // RKPW tridiagonalization of diag(nodes) against the weight vector.
    std::vector<double> p0(rule.nodes), p1(ncap, 0.0);
    p1[0] = rule.weights[0];
    for (int i = 0; i < ncap - 1; ++i) {
        double pn = rule.weights[i + 1];
        double gam = 1.0, sig = 0.0, t = 0.0;
        const double xlam = rule.nodes[i + 1];
        for (int k = 0; k <= i + 1; ++k) {
            const double rho = p1[k] + pn;
            const double tmp = gam * rho;
            const double tsig = sig;
            if (rho <= 0.0) {
                gam = 1.0;
                sig = 0.0;
            } else {
                gam = p1[k] / rho;
                sig = pn / rho;
            }
            const double tk = sig * (p0[k] - xlam) - gam * t;
            p0[k] -= tk - t;
            t = tk;
            if (sig <= 0.0)
                pn = tsig * p1[k];
            else
                pn = t * t / sig;
            p1[k] = tmp;
        }
    }
    RecurrenceTable table;
    table.mass = p1[0];
    table.diag.assign(p0.begin(), p0.begin() + n);
    table.offdiag.resize(n);
    for (int k = 1; k <= n; ++k) {
        if (!(p1[k] > 0.0))
            throw numeric_error("lanczos_recurrence: nonpositive beta at k=" +
                                std::to_string(k));
        table.offdiag[k - 1] = std::sqrt(p1[k]);
    }
    return table;
}

std::pair<double, double> eval_orthonormal(const RecurrenceTable& table, int n,
                                           double x) {
    if (n < 0 || n > table.size())
        throw domain_error("eval_orthonormal: n out of table range");
    // Extended precision keeps the n ~ 1000 recurrences at the accuracy the
    // exact kernel anchors demand.
    long double pkm1 = 0.0L;
    long double pk = 1.0L / sqrtl((long double)table.mass);
    for (int k = 0; k < n; ++k) {
        const long double akp1 = table.al(k + 1);
        const long double ak = (k == 0) ? 0.0L : table.al(k);
        const long double next = ((x - table.bl(k)) * pk - ak * pkm1) / akp1;
        pkm1 = pk;
        pk = next;
    }
    return {(double)pk, n == 0 ? 0.0 : (double)pkm1};
}

EvalDeriv eval_orthonormal_deriv(const RecurrenceTable& table, int n, double x) {
    if (n < 0 || n > table.size())
        throw domain_error("eval_orthonormal_deriv: n out of table range");
    long double pkm1 = 0.0L, pk = 1.0L / sqrtl((long double)table.mass);
    long double dkm1 = 0.0L, dk = 0.0L;
    for (int k = 0; k < n; ++k) {
        const long double akp1 = table.al(k + 1);
        const long double ak = (k == 0) ? 0.0L : table.al(k);
        const long double next = ((x - table.bl(k)) * pk - ak * pkm1) / akp1;
        const long double dnext = (pk + (x - table.bl(k)) * dk - ak * dkm1) / akp1;
        pkm1 = pk;
        pk = next;
        dkm1 = dk;
        dk = dnext;
    }
    return {(double)pk, n == 0 ? 0.0 : (double)pkm1, (double)dk,
            n == 0 ? 0.0 : (double)dkm1};
}

std::vector<double> poly_zeros(const RecurrenceTable& table, int n) {
    if (n <= 0 || n > table.size())
        throw domain_error("poly_zeros: n out of table range");
    Eigen::VectorXd diag(n), sub(n - 1 > 0 ? n - 1 : 0);
    for (int i = 0; i < n; ++i) diag[i] = table.b(i);
    for (int i = 0; i + 1 < n; ++i) sub[i] = table.a(i + 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw numeric_error("poly_zeros: eigen solver did not converge");
    std::vector<double> z(n);
    for (int i = 0; i < n; ++i) z[i] = es.eigenvalues()[i];
    std::sort(z.begin(), z.end());
    return z;
}

std::string export_csv(const RecurrenceTable& table) {
    std::ostringstream os;
    os.precision(17);
    os << "k,b_k,a_k\n";
    for (int k = 0; k < table.size(); ++k) {
        os << k << "," << table.b(k) << ",";
        if (k >= 1) os << table.a(k);
        os << "\n";
    }
    return os.str();
}

} // namespace opkit::orthopoly

#include "opkit/specfun.hpp"
#include "opkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opkit::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Series/asymptotic switchover for the Bessel argument.
constexpr double kSeriesCut = 12.0;
// Confluent threshold for the kernel divided differences.
inline bool confluent(double a, double b) {
    return std::abs(a - b) < 1e-4 * std::max(1.0, std::abs(a));
}

void check_alpha(double alpha) {
    if (!(alpha > -1.0))
        throw domain_error("kernel order alpha must exceed -1");
}

void check_nu(double nu) {
    if (!(nu > -1.0) || !std::isfinite(nu))
        throw domain_error("Bessel order nu must be finite and exceed -1");
}

} // namespace

double gamma_fn(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw domain_error("gamma_fn requires finite x > 0");
    // Lanczos approximation, g = 7, 9 coefficients.
    static const double c[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    if (x < 0.5) {
        // Reflection keeps the approximation in its accurate range.
        return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
    }
    const double z = x - 1.0;
    double a = c[0];
    for (int i = 1; i < 9; ++i) a += c[i] / (z + i);
    const double t = z + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

namespace {

// Series for G_nu(u) = sum_k (-1)^k u^k / (2^{nu+2k} k! Gamma(nu+k+1)),
// so that J_nu(z) = z^nu G_nu(z^2).  Also accumulates the u-derivatives.
template <typename T>
void entire_series(double nu, T u, T* g, T* dg, T* d2g) {
    const double t0 = 1.0 / (std::pow(2.0, nu) * gamma_fn(nu + 1.0));
    T term = T(t0);
    T s0 = term, s1 = T(0), s2 = T(0);
    for (int k = 1; k <= 80; ++k) {
        term *= -u / (4.0 * k * (nu + k));
        s0 += term;
        if (std::abs(u) > 0.0) {
            T d1 = term * (double(k) / u);
            s1 += d1;
            s2 += d1 * (double(k - 1) / u);
        }
        if (std::abs(term) < 1e-18 * std::abs(s0) && k > 4) break;
    }
    if (std::abs(u) == 0.0) {
        s1 = T(-t0 / (4.0 * (nu + 1.0)));
        s2 = T(t0 / (16.0 * (nu + 1.0) * (nu + 2.0)));
    }
    *g = s0;
    if (dg) *dg = s1;
    if (d2g) *d2g = s2;
}

// Hankel asymptotic expansion for real x > kSeriesCut.  With
// t_m = prod_{j<=m} (mu - (2j-1)^2) / (m! (8x)^m),
//   P = sum (-1)^k t_{2k},  Q = sum (-1)^k t_{2k+1}.
double bessel_j_asymptotic(double nu, double x) {
    const double mu = 4.0 * nu * nu;
    const double w = 8.0 * x;
    double p = 1.0, q = 0.0;
    double t = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int m = 1; m <= 40; ++m) {
        const double f = 2.0 * m - 1.0;
        t *= (mu - f * f) / (m * w);
        if (std::abs(t) > prev) break; // divergent tail reached
        prev = std::abs(t);
        if (m % 2 == 1) {
            q += (((m - 1) / 2) % 2 == 0) ? t : -t;
        } else {
            p += ((m / 2) % 2 == 0) ? t : -t;
        }
        if (std::abs(t) < 1e-17) break;
    }
    const double chi = x - (0.5 * nu + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

} // namespace

ScaledBessel bessel_entire_part(double nu, double u) {
    check_nu(nu);
    if (std::abs(u) > 145.0)
        throw domain_error("bessel_entire_part: |u| exceeds the series regime");
    ScaledBessel out{};
    entire_series(nu, u, &out.g, &out.dg, &out.d2g);
    return out;
}

std::complex<double> bessel_entire_part(double nu, std::complex<double> u) {
    check_nu(nu);
    if (std::abs(u) > 145.0)
        throw domain_error("bessel_entire_part: |u| exceeds the series regime");
    std::complex<double> g, dg, d2g;
    entire_series(nu, u, &g, &dg, &d2g);
    return g;
}

double bessel_j(double nu, double x) {
    check_nu(nu);
    if (!(x >= 0.0))
        throw domain_error("bessel_j: real argument must be nonnegative");
    if (x <= kSeriesCut) {
        if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
        ScaledBessel s = bessel_entire_part(nu, x * x);
        return std::pow(x, nu) * s.g;
    }
    return bessel_j_asymptotic(nu, x);
}

double bessel_j_deriv(double nu, double x) {
    if (!(x > 0.0))
        throw domain_error("bessel_j_deriv requires x > 0");
    return (nu / x) * bessel_j(nu, x) - bessel_j(nu + 1.0, x);
}

std::complex<double> bessel_j(double nu, std::complex<double> z) {
    check_nu(nu);
    if (std::abs(z) > kSeriesCut)
        throw domain_error("bessel_j: complex argument outside the series regime");
    std::complex<double> g = bessel_entire_part(nu, z * z);
    return std::pow(z, nu) * g;
}

std::vector<double> bessel_j_zeros(double nu, int count) {
    check_nu(nu);
    if (count <= 0 || count > 10000)
        throw domain_error("bessel_j_zeros: count must be in [1, 10000]");
    std::vector<double> zeros;
    zeros.reserve(count);
    const double mu = 4.0 * nu * nu;
    double prev = 0.0;
    for (int k = 1; k <= count; ++k) {
        // McMahon expansion as the initial guess.
        const double beta = (k + 0.5 * nu - 0.25) * kPi;
        double guess = beta - (mu - 1.0) / (8.0 * beta)
            - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * std::pow(8.0 * beta, 3));
        double lo = std::max(guess - 0.8, prev + 1e-9);
        double hi = guess + 0.8;
        double flo = bessel_j(nu, lo), fhi = bessel_j(nu, hi);
        int expand = 0;
        while (flo * fhi > 0.0) {
            lo = std::max(lo - 0.4, prev + 1e-9);
            hi += 0.4;
            flo = bessel_j(nu, lo);
            fhi = bessel_j(nu, hi);
            if (++expand > 40)
                throw numeric_error("bessel_j_zeros: bracket failure at index " +
                                    std::to_string(k));
        }
        for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
            double mid = 0.5 * (lo + hi);
            double fm = bessel_j(nu, mid);
            if (flo * fm <= 0.0) {
                hi = mid;
            } else {
                lo = mid;
                flo = fm;
            }
        }
        double root = 0.5 * (lo + hi);
        // One Newton polish.
        double d = bessel_j_deriv(nu, root);
        if (d != 0.0) {
            double step = bessel_j(nu, root) / d;
            if (std::abs(step) < 0.5) root -= step;
        }
        zeros.push_back(root);
        prev = root;
    }
    return zeros;
}

namespace {

// Entire hard-edge kernel through the scaled series:
//   J*_alpha(a,b) = (b G(a) G'(b) - a G'(a) G(b)) / (a - b)
// with G = G_alpha evaluated in the squared variable u = a.
double kernel_J_entire(double alpha, double a, double b) {
    ScaledBessel ga = bessel_entire_part(alpha, a);
    if (confluent(a, b)) {
        double m = 0.5 * (a + b);
        ScaledBessel gm = bessel_entire_part(alpha, m);
        return m * gm.dg * gm.dg - gm.g * gm.dg - m * gm.g * gm.d2g;
    }
    ScaledBessel gb = bessel_entire_part(alpha, b);
    return (b * ga.g * gb.dg - a * ga.dg * gb.g) / (a - b);
}

} // namespace

double kernel_J(double alpha, double a, double b, KernelVariant variant) {
    check_alpha(alpha);
    if (variant == KernelVariant::raw) {
        if (!(a > 0.0) || !(b > 0.0))
            throw domain_error("kernel_J raw variant requires a, b > 0");
        if (a <= 145.0 && b <= 145.0)
            return std::pow(a, 0.5 * alpha) * std::pow(b, 0.5 * alpha) *
                   kernel_J_entire(alpha, a, b);
        const double sa = std::sqrt(a), sb = std::sqrt(b);
        if (confluent(a, b)) {
            // Confluent limit: J_alpha(a,a) = (J'(s)^2 + (1 - alpha^2/a) J(s)^2)/4.
            const double m = 0.5 * (a + b), s = std::sqrt(m);
            const double j = bessel_j(alpha, s), jp = bessel_j_deriv(alpha, s);
            return 0.25 * (jp * jp + (1.0 - alpha * alpha / m) * j * j);
        }
        return (bessel_j(alpha, sa) * sb * bessel_j_deriv(alpha, sb) -
                bessel_j(alpha, sb) * sa * bessel_j_deriv(alpha, sa)) /
               (2.0 * (a - b));
    }
    if (!(a >= 0.0) || !(b >= 0.0))
        throw domain_error("kernel_J entire variant requires a, b >= 0");
    if (a <= 145.0 && b <= 145.0) return kernel_J_entire(alpha, a, b);
    return kernel_J(alpha, a, b, KernelVariant::raw) /
           (std::pow(a, 0.5 * alpha) * std::pow(b, 0.5 * alpha));
}

double kernel_J_diag(double alpha, double a) {
    check_alpha(alpha);
    if (!(a >= 0.0)) throw domain_error("kernel_J_diag requires a >= 0");
    if (a <= 145.0) {
        ScaledBessel g = bessel_entire_part(alpha, a);
        return a * g.dg * g.dg - g.g * g.dg - a * g.g * g.d2g;
    }
    const double s = std::sqrt(a);
    const double j = bessel_j(alpha, s), jp = bessel_j_deriv(alpha, s);
    return 0.25 * (jp * jp + (1.0 - alpha * alpha / a) * j * j) / std::pow(a, alpha);
}

namespace {

// Helper pair for the bulk kernel: with nu_p = (alpha+1)/2, nu_m = (alpha-1)/2,
//   p(a) = a P(a^2),  q(a) = Q(a^2),
// where P = G_{nu_p}, Q = G_{nu_m}; then
//   L*_alpha(a,b) = (p(a) q(b) - p(b) q(a)) / (2 (a - b)).
struct BulkParts {
    double p, q;
};

BulkParts bulk_parts(double alpha, double a) {
    const double nup = 0.5 * (alpha + 1.0);
    const double num = 0.5 * (alpha - 1.0);
    if (std::abs(a) <= kSeriesCut) {
        double u = a * a;
        ScaledBessel P = bessel_entire_part(nup, u);
        ScaledBessel Q = bessel_entire_part(num, u);
        return {a * P.g, Q.g};
    }
    const double x = std::abs(a);
    const double scale = std::pow(x, 0.5 * (1.0 - alpha));
    const double sgn = a < 0 ? -1.0 : 1.0;
    return {sgn * scale * bessel_j(nup, x), scale * bessel_j(num, x)};
}

double kernel_L_diag_impl(double alpha, double m) {
    const double nup = 0.5 * (alpha + 1.0);
    const double num = 0.5 * (alpha - 1.0);
    if (std::abs(m) <= kSeriesCut) {
        double u = m * m;
        ScaledBessel P = bessel_entire_part(nup, u);
        ScaledBessel Q = bessel_entire_part(num, u);
        return 0.5 * (P.g * Q.g + 2.0 * u * (P.dg * Q.g - P.g * Q.dg));
    }
    const double x = std::abs(m);
    return 0.5 * std::pow(x, 1.0 - alpha) *
           (bessel_j_deriv(nup, x) * bessel_j(num, x) -
            bessel_j(nup, x) * bessel_j_deriv(num, x));
}

double kernel_L_entire_real(double alpha, double a, double b) {
    if (confluent(a, b)) return kernel_L_diag_impl(alpha, 0.5 * (a + b));
    BulkParts A = bulk_parts(alpha, a);
    BulkParts B = bulk_parts(alpha, b);
    return (A.p * B.q - B.p * A.q) / (2.0 * (a - b));
}

} // namespace

double kernel_L(double alpha, double a, double b, KernelVariant variant) {
    check_alpha(alpha);
    if (variant == KernelVariant::entire) return kernel_L_entire_real(alpha, a, b);
    // Raw variant: the piecewise real formulas; equal to the entire value
    // rescaled by |a|^{alpha/2} |b|^{alpha/2}.
    return std::pow(std::abs(a), 0.5 * alpha) * std::pow(std::abs(b), 0.5 * alpha) *
           kernel_L_entire_real(alpha, a, b);
}

std::complex<double> kernel_L(double alpha, std::complex<double> a,
                              std::complex<double> b) {
    check_alpha(alpha);
    if (std::abs(a) > kSeriesCut || std::abs(b) > kSeriesCut)
        throw domain_error("kernel_L: complex arguments require |a|,|b| <= 12");
    const double nup = 0.5 * (alpha + 1.0);
    const double num = 0.5 * (alpha - 1.0);
    if (std::abs(a - b) < 1e-4 * std::max(1.0, std::abs(a))) {
        std::complex<double> m = 0.5 * (a + b), u = m * m;
        std::complex<double> P, dP, Q, dQ, tmp;
        entire_series(nup, u, &P, &dP, &tmp);
        entire_series(num, u, &Q, &dQ, &tmp);
        return 0.5 * (P * Q + 2.0 * u * (dP * Q - P * dQ));
    }
    std::complex<double> Pa, Qa, Pb, Qb, tmp;
    entire_series(nup, a * a, &Pa, &tmp, &tmp);
    entire_series(num, a * a, &Qa, &tmp, &tmp);
    entire_series(nup, b * b, &Pb, &tmp, &tmp);
    entire_series(num, b * b, &Qb, &tmp, &tmp);
    return (a * Pa * Qb - b * Pb * Qa) / (2.0 * (a - b));
}

double kernel_L_diag(double alpha, double a) {
    check_alpha(alpha);
    return kernel_L_diag_impl(alpha, a);
}

double cardinal_series(double alpha, double center, double z, int truncation) {
    check_alpha(alpha);
    if (truncation <= 0)
        throw domain_error("cardinal_series: truncation must be positive");
    const double num = 0.5 * (alpha - 1.0);
    std::vector<double> jz = bessel_j_zeros(num, truncation);
    double sum = 0.0;
    for (int k = truncation; k >= 1; --k) {
        for (double s : {-1.0, 1.0}) {
            const double node = s * jz[k - 1];
            const double g = kernel_L(alpha, center, node, KernelVariant::entire);
            const double d = kernel_L_diag_impl(alpha, node);
            sum += g * kernel_L(alpha, node, z, KernelVariant::entire) / d;
        }
    }
    return sum;
}

} // namespace opkit::specfun

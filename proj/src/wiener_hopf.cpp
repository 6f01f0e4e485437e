#include "dynkin/wiener_hopf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dynkin::wh {

namespace {

// Both roots of psi(z) = r for a Brownian model, via the factored form
// (d - c)(d + c) = 2 r sigma^2 so the smaller magnitude never cancels.
Factors roots_brownian(const levy::Model& m, double r) {
    const double s2 = m.sigma * m.sigma;
    const double d = std::sqrt(m.c * m.c + 2.0 * r * s2);
    Factors f;
    if (m.c >= 0.0) {
        f.rate_inf = (d + m.c) / s2;
        f.rate_sup = 2.0 * r / (d + m.c);
    } else {
        f.rate_sup = (d - m.c) / s2;
        f.rate_inf = 2.0 * r / (d - m.c);
    }
    return f;
}

// psi(z) = r reduces to c z^2 + (c alpha1 - lambda1 - r) z - r alpha1 = 0;
// the product of the roots is -r alpha1 / c, so with the larger magnitude
// written as p / (2 c) the smaller one is 2 r alpha1 / p: the c cancels.
Factors roots_cramer_lundberg(const levy::Model& m, double r) {
    const double k = m.c * m.alpha1 - m.lambda1 - r;
    const double d = std::sqrt(k * k + 4.0 * m.c * r * m.alpha1);
    const double p = d + std::abs(k);
    Factors f;
    if (k >= 0.0) {
        f.rate_inf = p / (2.0 * m.c);
        f.rate_sup = 2.0 * r * m.alpha1 / p;
    } else {
        f.rate_sup = p / (2.0 * m.c);
        f.rate_inf = 2.0 * r * m.alpha1 / p;
    }
    f.atom_inf = r / (f.rate_sup * m.c);
    return f;
}

// psi(z) = r clears denominators to
//   (r + l1 + l2) z^2 + (a1 (l2 + r) - a2 (l1 + r)) z - r a1 a2 = 0
// with one root on each side of zero. Evaluate the larger-magnitude root
// first, the other through the product of the roots.
Factors roots_compound_poisson(const levy::Model& m, double r) {
    const double qa = r + m.lambda1 + m.lambda2;
    const double qb = m.alpha1 * (m.lambda2 + r) - m.alpha2 * (m.lambda1 + r);
    const double qc = -r * m.alpha1 * m.alpha2;
    const double d = std::sqrt(qb * qb - 4.0 * qa * qc);
    const double sign = qb >= 0.0 ? 1.0 : -1.0;
    const double q = -0.5 * (qb + sign * d);
    const double z1 = q / qa;   // larger magnitude
    const double z2 = qc / q;   // opposite sign of z1
    Factors f;
    if (z1 > 0.0) {
        f.rate_sup = z1;
        f.rate_inf = -z2;
    } else {
        f.rate_inf = -z1;
        f.rate_sup = z2;
    }
    f.atom_inf = f.rate_inf / m.alpha1;
    f.atom_sup = f.rate_sup / m.alpha2;
    return f;
}

}  // namespace

Factors factorize(const levy::Model& m, double r) {
    if (!(std::isfinite(r) && r > 0.0))
        throw std::invalid_argument("factorize: r must be positive");
    Factors f;
    switch (m.family) {
        case levy::Family::BrownianMotion:
            f = roots_brownian(m, r);
            break;
        case levy::Family::CramerLundberg:
            f = roots_cramer_lundberg(m, r);
            break;
        case levy::Family::CompoundPoisson:
            f = roots_compound_poisson(m, r);
            break;
    }
    const levy::Strip st = strip(m);
    const bool in_strip = -f.rate_inf > st.lo && f.rate_sup < st.hi;
    const bool atoms_ok = f.atom_inf >= 0.0 && f.atom_inf < 1.0 &&
                          f.atom_sup >= 0.0 && f.atom_sup < 1.0;
    if (!(f.rate_inf > 0.0 && f.rate_sup > 0.0 && in_strip && atoms_ok))
        throw std::runtime_error("factorize: roots left the admissible range");
    return f;
}

double OneSidedLaw::cdf(double x) const {
    if (x < 0.0) return 0.0;
    return atom + (1.0 - atom) * (-std::expm1(-rate * x));
}

OneSidedLaw infimum_law(const Factors& f) { return {f.atom_inf, f.rate_inf}; }

OneSidedLaw supremum_law(const Factors& f) { return {f.atom_sup, f.rate_sup}; }

double identity_error(const levy::Model& m, double r, const Factors& f,
                      int n) {
    if (n < 2) throw std::invalid_argument("identity_error: need n >= 2");
    const double w = (f.rate_inf + f.rate_sup) * 1e-3;
    const double lo = -f.rate_inf + w;
    const double hi = f.rate_sup - w;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
        const double lhs = r / (r - levy::psi(m, z));
        const double left =
            f.atom_inf + (1.0 - f.atom_inf) * f.rate_inf / (f.rate_inf + z);
        const double right =
            f.atom_sup + (1.0 - f.atom_sup) * f.rate_sup / (f.rate_sup - z);
        const double rel = std::abs(lhs - left * right) / std::abs(lhs);
        worst = std::max(worst, rel);
    }
    return worst;
}

}  // namespace dynkin::wh

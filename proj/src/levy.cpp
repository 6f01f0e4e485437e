#include "dynkin/levy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace dynkin::levy {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void require_finite(double v, const char* name) {
    require(std::isfinite(v), std::string(name) + " must be finite");
}

void require_positive(double v, const char* name) {
    require_finite(v, name);
    require(v > 0.0, std::string(name) + " must be positive");
}

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::BrownianMotion: return "brownian";
        case Family::CramerLundberg: return "cramer-lundberg";
        case Family::CompoundPoisson: return "compound-poisson";
    }
    return "?";
}

Model Model::brownian_motion(double c, double sigma) {
    require_finite(c, "c");
    require_positive(sigma, "sigma");
    Model m;
    m.family = Family::BrownianMotion;
    m.c = c;
    m.sigma = sigma;
    return m;
}

Model Model::cramer_lundberg(double c, double lambda1, double alpha1) {
    require_positive(c, "c");
    require_positive(lambda1, "lambda1");
    require_positive(alpha1, "alpha1");
    Model m;
    m.family = Family::CramerLundberg;
    m.c = c;
    m.lambda1 = lambda1;
    m.alpha1 = alpha1;
    return m;
}

Model Model::compound_poisson(double alpha1, double lambda1, double alpha2,
                              double lambda2) {
    require_positive(alpha1, "alpha1");
    require_positive(lambda1, "lambda1");
    require_positive(alpha2, "alpha2");
    require_positive(lambda2, "lambda2");
    Model m;
    m.family = Family::CompoundPoisson;
    m.alpha1 = alpha1;
    m.lambda1 = lambda1;
    m.alpha2 = alpha2;
    m.lambda2 = lambda2;
    return m;
}

Strip strip(const Model& m) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (m.family) {
        case Family::BrownianMotion: return {-inf, inf};
        case Family::CramerLundberg: return {-m.alpha1, inf};
        case Family::CompoundPoisson: return {-m.alpha1, m.alpha2};
    }
    return {0.0, 0.0};
}

double psi(const Model& m, double z) {
    if (!strip(m).contains(z))
        throw std::domain_error("psi: argument outside the finite strip");
    switch (m.family) {
        case Family::BrownianMotion:
            return 0.5 * m.sigma * m.sigma * z * z + m.c * z;
        case Family::CramerLundberg:
            return m.c * z - m.lambda1 * z / (m.alpha1 + z);
        case Family::CompoundPoisson:
            return -m.lambda1 * z / (m.alpha1 + z) +
                   m.lambda2 * z / (m.alpha2 - z);
    }
    return 0.0;
}

std::optional<double> admissible_alpha(const Model& m, double r,
                                       std::span<const double> grid) {
    require_positive(r, "r");
    std::vector<double> candidates(grid.begin(), grid.end());
    std::sort(candidates.begin(), candidates.end(), std::greater<>());
    const Strip st = strip(m);
    for (double a : candidates) {
        if (!(a > 0.0) || !st.contains(a) || !st.contains(-a)) continue;
        if (psi(m, a) < r && psi(m, -a) < r) return a;
    }
    return std::nullopt;
}

std::vector<double> default_alpha_grid(const Model& m, double r) {
    require_positive(r, "r");
    double h = 0.0;
    switch (m.family) {
        case Family::BrownianMotion: {
            // Smaller root of psi(z) = r, written to avoid cancellation.
            const double d =
                std::sqrt(m.c * m.c + 2.0 * r * m.sigma * m.sigma);
            h = 2.0 * r / (d + std::abs(m.c));
            break;
        }
        case Family::CramerLundberg:
            h = m.alpha1;
            break;
        case Family::CompoundPoisson:
            h = std::min(m.alpha1, m.alpha2);
            break;
    }
    std::vector<double> grid;
    grid.reserve(10);
    double a = h;
    for (int k = 1; k <= 10; ++k) {
        a *= 0.5;
        grid.push_back(a);
    }
    return grid;
}

std::optional<double> admissible_alpha(const Model& m, double r) {
    const std::vector<double> grid = default_alpha_grid(m, r);
    return admissible_alpha(m, r, grid);
}

}  // namespace dynkin::levy

#pragma once

// Levy process families with rational Laplace exponents. Three families are
// supported; each model stores only the parameters its family uses and is
// validated on construction.

#include <optional>
#include <span>
#include <vector>

namespace dynkin::levy {

enum class Family {
    BrownianMotion,   // X_t = c t + sigma W_t
    CramerLundberg,   // X_t = c t - compound Poisson(lambda1) of Exp(alpha1) losses
    CompoundPoisson,  // Exp(alpha2) gains at rate lambda2 minus Exp(alpha1) losses
                      // at rate lambda1, no drift
};

const char* family_name(Family f);

struct Model {
    Family family = Family::BrownianMotion;
    double c = 0.0;        // drift
    double sigma = 0.0;    // diffusion coefficient
    double lambda1 = 0.0;  // downward jump intensity
    double alpha1 = 0.0;   // downward jump sizes are Exp(alpha1), mean 1/alpha1
    double lambda2 = 0.0;  // upward jump intensity
    double alpha2 = 0.0;   // upward jump sizes are Exp(alpha2)

    // Factories validate and throw std::invalid_argument on bad input.
    static Model brownian_motion(double c, double sigma);
    static Model cramer_lundberg(double c, double lambda1, double alpha1);
    static Model compound_poisson(double alpha1, double lambda1,
                                  double alpha2, double lambda2);

    bool operator==(const Model&) const = default;
};

// Open interval (lo, hi) on which the Laplace exponent is finite. Unbounded
// ends are +-infinity.
struct Strip {
    double lo, hi;
    bool contains(double z) const { return lo < z && z < hi; }
};

Strip strip(const Model& m);

// Laplace exponent psi(z) = log E exp(z X_1). Throws std::domain_error when
// z is outside the model's strip (at or beyond a jump-transform pole).
double psi(const Model& m, double z);

// Largest candidate alpha with +-alpha inside the strip and both
// psi(alpha) < r and psi(-alpha) < r, scanning the grid from the largest
// entry down. Returns nullopt when no candidate qualifies; the game solver
// treats that as a refusal to proceed.
std::optional<double> admissible_alpha(const Model& m, double r,
                                       std::span<const double> grid);

// Default dyadic grid H/2, H/4, ..., H/1024 where H is the distance from the
// origin to the nearest strip edge, except for Brownian models (unbounded
// strip) where H is the smaller root of psi(z) = r. Convexity of psi then
// guarantees the first candidate already qualifies.
std::vector<double> default_alpha_grid(const Model& m, double r);

std::optional<double> admissible_alpha(const Model& m, double r);

}  // namespace dynkin::levy

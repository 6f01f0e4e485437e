#pragma once

// Monte Carlo verification of the analytic solution: exact event-driven
// simulation for the jump families, Euler discretisation for Brownian
// motion, and the payoff / saddle checks built on top. All estimators are
// bit-reproducible for a fixed seed regardless of thread count.

#include <cstdint>
#include <span>
#include <vector>

#include "dynkin/game.hpp"
#include "dynkin/rng.hpp"

namespace dynkin::mc {

struct SimConfig {
    std::int64_t paths = 100000;
    std::uint64_t seed = 42;
    double dt = 0.0;           // Euler step for Brownian paths; 0 = 1e-4 * min(1, 1/r)
    double horizon_cap = 0.0;  // censoring horizon; 0 = 30 / r
};

double effective_dt(const SimConfig& cfg, double r);
double effective_horizon(const SimConfig& cfg, double r);

// Worker threads for path loops: DYNKIN_THREADS if set and positive,
// otherwise hardware concurrency. The value never changes results, only
// wall time.
int worker_count();

struct ExtremaSample {
    double inf = 0.0;  // running infimum at the Exp(r) time, <= 0
    double sup = 0.0;  // running supremum, >= 0
};

// Samples (I, S) at an independent Exp(r) time for paths started at 0. Jump
// families are simulated exactly event by event (extrema land on segment
// endpoints), Brownian paths on an Euler grid whose extrema are read at grid
// points only.
std::vector<ExtremaSample> simulate_extrema(const levy::Model& m, double r,
                                            const SimConfig& cfg);

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t paths = 0;
};

Estimate summarize(std::span<const double> values);

// Discounted payoff of the threshold strategy pair started at x0: the game
// ends at the first time the path leaves (lower, upper), the upper rule wins
// ties and pays x - delta including any overshoot, the lower rule pays
// x + delta. Paths still inside at the horizon contribute zero, so the
// horizon must satisfy r * horizon >= 20 for the censoring error to stay
// below discount noise; shorter horizons throw std::invalid_argument.
Estimate estimate_payoff(const game::Spec& g, double x0, double lower,
                         double upper, const SimConfig& cfg);

// Tolerance added to MC comparisons on top of 3.5 standard errors: zero for
// the exactly simulated jump families, 5 sigma sqrt(dt) for Euler Brownian
// paths (discrete monitoring shifts each boundary by about 0.583 sigma
// sqrt(dt), so the allowance is conservative).
double bias_allowance(const levy::Model& m, double r, const SimConfig& cfg);

struct SaddleCell {
    double offset = 0.0;
    bool perturbs_upper = false;  // true: maximizer moved to x_sup + offset;
                                  // false: minimizer moved to x_inf + offset
    Estimate est;
    double bound = 0.0;      // V(x0)
    double tolerance = 0.0;  // 3.5 se + bias allowance
    bool pass = false;
};

struct SaddleReport {
    double x0 = 0.0;
    double allowance = 0.0;
    std::vector<SaddleCell> cells;
    bool all_pass = false;
};

// Equilibrium inequality check at x0: against the minimizer's equilibrium
// rule no perturbed maximizer threshold earns more than V(x0), and against
// the maximizer's rule no perturbed minimizer threshold pays less. Each
// offset produces one cell per side. Offsets that would collapse the
// continuation interval throw std::invalid_argument.
SaddleReport saddle_check(const game::Solution& s, double x0,
                          std::span<const double> offsets,
                          const SimConfig& cfg);

// Two-sided Kolmogorov-Smirnov statistic of the sample against the law's
// cdf; the sorted-sample form handles the atom at zero. Sorts in place.
double ks_statistic(std::vector<double>& magnitudes, const wh::OneSidedLaw& law);

// Asymptotic critical value sqrt(-ln(alpha/2)/2) / sqrt(n).
double ks_critical(std::int64_t n, double alpha = 0.001);

struct AtomCheck {
    double estimate = 0.0;
    double std_error = 0.0;
    double expected = 0.0;
    bool pass = false;  // |estimate - expected| <= 3.5 std_error
};

// Fraction of exactly-zero magnitudes against the law's atom. Exact
// simulators produce the atom as a genuine floating-point zero.
AtomCheck check_atom(std::span<const double> magnitudes, double expected);

}  // namespace dynkin::mc

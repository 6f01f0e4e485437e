#pragma once

// Closed-form solution of the perpetual two-player stopping game. The
// minimizer stops to pay x + delta, the maximizer stops to collect x - delta,
// payoffs are discounted at rate r, and simultaneous stops pay the
// maximizer's claim. The equilibrium is a pair of threshold rules: the
// minimizer stops at or below x_inf, the maximizer at or above x_sup, and the
// value function is a two-term exponential between the thresholds.

#include <utility>

#include "dynkin/levy.hpp"
#include "dynkin/wiener_hopf.hpp"

namespace dynkin::game {

struct Spec {
    levy::Model model;
    double r = 1.0;      // discount rate
    double delta = 1.0;  // half-width of the bid/ask spread around x

    bool operator==(const Spec&) const = default;
};

// Moments of the extrema laws entering the threshold equations:
//   mean_*    expected magnitude of the extremum, (1 - atom)/rate
//   factor_*  1 / E exp(-rate_sup |I|) and 1 / E exp(-rate_inf S)
//   excess_*  factor_* - 1
struct Constants {
    double mean_inf = 0.0, mean_sup = 0.0;
    double factor_inf = 0.0, factor_sup = 0.0;
    double excess_inf = 0.0, excess_sup = 0.0;
};

Constants constants(const wh::Factors& f);

struct SolveOptions {
    double tolerance = 1e-12;  // residual bound for the gap equation
    int grid_size = 1001;      // points per verification grid
};

// Residuals and margins from the analytic verification sweep. Margins are
// signed so that negative means violated; residuals are absolute values of
// quantities that should vanish.
struct Conditions {
    int grid_size = 0;
    double sandwich_margin = 0.0;   // min over the middle grid of
                                    // min(V - (x - delta), (x + delta) - V)
    double mono_inf_min = 0.0;      // min slope of the lower averaging function
    double mono_sup_min = 0.0;      // min slope of the upper averaging function
    double boundary_inf = 0.0;      // |Q_inf(x_inf)|
    double boundary_sup = 0.0;      // |Q_sup(x_sup)|
    double continuity_inf = 0.0;    // |V(x_inf) - (x_inf + delta)|
    double continuity_sup = 0.0;    // |V(x_sup) - (x_sup - delta)|
    double gap_residual = 0.0;      // |threshold formulas' gap - solved gap|
    double pasting_inf = 0.0;       // |jump_inf + atom_inf * Q_inf'(x_inf)|
    double pasting_sup = 0.0;       // |jump_sup - atom_sup * Q_sup'(x_sup)|

    bool sandwich_ok = false;
    bool monotone_ok = false;
    bool boundary_ok = false;
    bool continuity_ok = false;
    bool gap_ok = false;
    bool pasting_ok = false;

    bool all_ok() const {
        return sandwich_ok && monotone_ok && boundary_ok && continuity_ok &&
               gap_ok && pasting_ok;
    }
};

// Acceptance bounds for the verification sweep.
struct ConditionTolerances {
    double sandwich = 1e-9;    // allowed undershoot of the sandwich margins
    double monotone = 1e-12;   // allowed negative slope of averaging functions
    double boundary = 1e-9;
    double continuity = 1e-9;
    double gap = 1e-10;
    double pasting = 1e-8;
};

struct Solution {
    Spec spec;
    wh::Factors factors;
    Constants constants;

    double gap = 0.0;            // x_sup - x_inf, root of the gap equation
    double gap_residual_f = 0.0; // gap equation residual at the returned root
    double x_inf = 0.0;          // minimizer's threshold
    double x_sup = 0.0;          // maximizer's threshold
    double coeff_inf = 0.0;      // coefficient of the e^{-rate_inf (x - x_sup)} term
    double coeff_sup = 0.0;      // coefficient of the e^{ rate_sup (x - x_inf)} term

    // The same coefficients carried across the gap,
    // coeff_inf e^{rate_inf gap} and coeff_sup e^{rate_sup gap}, computed in
    // scaled form so large gaps never overflow. The middle branch of V is
    // scaled_inf e^{-rate_inf (x - x_inf)} + scaled_sup e^{-rate_sup (x_sup - x)}.
    double scaled_inf = 0.0;
    double scaled_sup = 0.0;

    double jump_inf = 0.0;  // V'(x_inf+) - V'(x_inf-)
    double jump_sup = 0.0;  // V'(x_sup+) - V'(x_sup-)

    double alpha = 0.0;     // admissible exponential-moment bound used as gate

    Conditions checks;
    bool coeff_signs_ok = false;  // coeff_inf < 0 < coeff_sup, the expected
                                  // pattern; a warning, not a certification gate
    bool certified = false;       // checks.all_ok()
};

// Gap equation pieces, exposed for targeted tests. gap_equation returns
// f(u); gap_equation_slope returns f'(u).
double gap_equation(double u, const Constants& k, const wh::Factors& f,
                    double delta);
double gap_equation_slope(double u, const Constants& k, const wh::Factors& f);

// Upper end of the root bracket, 2 delta + mean_inf + mean_sup. The root is
// unique in (0, bracket_top); f(0) = -2 delta < 0 and f is eventually
// increasing.
double bracket_top(const Constants& k, double delta);

// Bisection to sub-ulp bracket width followed by a few Newton polish steps.
// Throws std::runtime_error if |f(u)| > tolerance at the result.
double solve_gap(const Constants& k, const wh::Factors& f, double delta,
                 double tolerance = 1e-12);

struct Coefficients {
    double inf = 0.0, sup = 0.0;
    double scaled_inf = 0.0, scaled_sup = 0.0;  // inf e^{rate_inf u}, sup e^{rate_sup u}
};

Coefficients coefficients(double gap, const Constants& k, const wh::Factors& f);

struct Thresholds {
    double inf = 0.0, sup = 0.0;
    double gap_residual = 0.0;  // formulas' (sup - inf) minus the solved gap
};

Thresholds thresholds(double gap, const Coefficients& a, const Constants& k,
                      double delta);

// Full pipeline: factorize, constants, gap, coefficients, thresholds, jumps,
// verification sweep. Throws std::invalid_argument when no admissible
// exponential-moment bound exists on the default grid.
Solution solve(const Spec& spec, const SolveOptions& opt = {});

// Equilibrium value. The middle branch owns the closed interval
// [x_inf, x_sup]; outside it the value equals the stopping payoffs.
double value(const Solution& s, double x);

// One-sided derivative of V taken from inside the continuation region;
// linear slope 1 outside.
double value_slope_inside(const Solution& s, double x);

// Averaging functions. q_inf lives on x <= x_inf and q_sup on x >= x_sup;
// both are zero off their domains and vanish at their thresholds.
double q_inf(const Solution& s, double x);
double q_sup(const Solution& s, double x);
double q_inf_slope(const Solution& s, double x);
double q_sup_slope(const Solution& s, double x);

// Recomputes the derivative discontinuities at the thresholds.
std::pair<double, double> pasting_jumps(const Solution& s);

// Analytic verification sweep on grids of the given size.
Conditions verify_conditions(const Solution& s, int grid_size,
                             const ConditionTolerances& tol = {});

enum class Region { StopMin, Continue, StopMax };

Region region(const Solution& s, double x);
const char* region_name(Region rg);

}  // namespace dynkin::game

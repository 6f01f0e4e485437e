#include "dynkin/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dynkin::game {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void validate(const Spec& spec) {
    require(std::isfinite(spec.r) && spec.r > 0.0, "r must be positive");
    require(std::isfinite(spec.delta) && spec.delta > 0.0,
            "delta must be positive");
}

// Shared exponentials of the gap equation. Everything is written in terms
// of a = e^{-rate_inf u} and b = e^{-rate_sup u}, both <= 1, so no quantity
// here can overflow however large the gap gets.
struct GapTerms {
    double a, b, num, den;
};

GapTerms gap_terms(double u, const Constants& k, const wh::Factors& f) {
    GapTerms t;
    t.a = std::exp(-f.rate_inf * u);
    t.b = std::exp(-f.rate_sup * u);
    t.num = -k.mean_inf * k.factor_sup * t.a - k.mean_sup * k.factor_inf * t.b +
            2.0 * k.mean_sup * k.factor_sup * k.excess_inf * t.a * t.b;
    t.den = 1.0 - k.excess_inf * k.excess_sup * t.a * t.b;
    return t;
}

}  // namespace

Constants constants(const wh::Factors& f) {
    Constants k;
    k.mean_inf = (1.0 - f.atom_inf) / f.rate_inf;
    k.mean_sup = (1.0 - f.atom_sup) / f.rate_sup;
    // excess_* written without the subtraction factor_* - 1, which would
    // cancel when the atoms are small.
    k.excess_inf = f.rate_sup * (1.0 - f.atom_inf) /
                   (f.rate_inf + f.atom_inf * f.rate_sup);
    k.excess_sup = f.rate_inf * (1.0 - f.atom_sup) /
                   (f.atom_sup * f.rate_inf + f.rate_sup);
    k.factor_inf = 1.0 + k.excess_inf;
    k.factor_sup = 1.0 + k.excess_sup;
    return k;
}

double gap_equation(double u, const Constants& k, const wh::Factors& f,
                    double delta) {
    if (u == 0.0) {
        // When both atoms vanish, excess_inf * excess_sup == 1 and num/den is
        // 0/0 at the origin. Its limit is -(mean_inf + mean_sup) for every
        // family, so the equation always starts at -2 delta.
        return -2.0 * delta;
    }
    const GapTerms t = gap_terms(u, k, f);
    return u - 2.0 * delta - k.mean_inf - k.mean_sup - t.num / t.den;
}

double gap_equation_slope(double u, const Constants& k, const wh::Factors& f) {
    const GapTerms t = gap_terms(u, k, f);
    const double dnum = k.mean_inf * k.factor_sup * f.rate_inf * t.a +
                        k.mean_sup * k.factor_inf * f.rate_sup * t.b -
                        2.0 * k.mean_sup * k.factor_sup * k.excess_inf *
                            (f.rate_inf + f.rate_sup) * t.a * t.b;
    const double dden =
        k.excess_inf * k.excess_sup * (f.rate_inf + f.rate_sup) * t.a * t.b;
    return 1.0 - (dnum * t.den - t.num * dden) / (t.den * t.den);
}

double bracket_top(const Constants& k, double delta) {
    return 2.0 * delta + k.mean_inf + k.mean_sup;
}

double solve_gap(const Constants& k, const wh::Factors& f, double delta,
                 double tolerance) {
    require(std::isfinite(delta) && delta > 0.0, "delta must be positive");
    require(tolerance > 0.0, "tolerance must be positive");
    const double top = bracket_top(k, delta);
    // In exact arithmetic the equation is nonnegative at the top of the
    // bracket. Once both exponentials have decayed below rounding level the
    // computed value there is pure noise, so allow a few ulps of slack; the
    // residual check at the end still arbitrates the returned root.
    const double slack =
        64.0 * std::numeric_limits<double>::epsilon() * (1.0 + top);
    if (!(gap_equation(top, k, f, delta) >= -slack))
        throw std::runtime_error("solve_gap: bracket top is not a sign change");

    double lo = 0.0, hi = top;
    for (int i = 0; i < 200 && lo < hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (gap_equation(mid, k, f, delta) < 0.0)
            lo = mid;
        else
            hi = mid;
    }

    double u = 0.5 * (lo + hi);
    double best = u;
    double best_res = std::abs(gap_equation(u, k, f, delta));
    for (int i = 0; i < 5 && best_res > 0.0; ++i) {
        const double slope = gap_equation_slope(u, k, f);
        if (!(slope > 0.0)) break;
        double next = u - gap_equation(u, k, f, delta) / slope;
        if (!(next > 0.0 && next <= top)) break;
        u = next;
        const double res = std::abs(gap_equation(u, k, f, delta));
        if (res < best_res) {
            best = u;
            best_res = res;
        }
    }
    if (!(best_res <= tolerance))
        throw std::runtime_error("solve_gap: residual above tolerance");
    return best;
}

Coefficients coefficients(double gap, const Constants& k,
                          const wh::Factors& f) {
    const GapTerms t = gap_terms(gap, k, f);
    Coefficients out;
    out.scaled_inf = (-k.mean_inf + k.mean_sup * k.excess_inf * t.b) / t.den;
    out.scaled_sup = (k.mean_sup - k.mean_inf * k.excess_sup * t.a) / t.den;
    out.inf = t.a * out.scaled_inf;
    out.sup = t.b * out.scaled_sup;
    return out;
}

Thresholds thresholds(double gap, const Coefficients& a, const Constants& k,
                      double delta) {
    Thresholds t;
    t.inf = -delta - k.mean_inf + k.factor_inf * a.sup;
    const double sup_formula = delta + k.mean_sup + k.factor_sup * a.inf;
    t.gap_residual = (sup_formula - t.inf) - gap;
    t.sup = t.inf + gap;
    return t;
}

Solution solve(const Spec& spec, const SolveOptions& opt) {
    validate(spec);
    require(opt.grid_size >= 2, "grid_size must be at least 2");

    const auto alpha = levy::admissible_alpha(spec.model, spec.r);
    if (!alpha)
        throw std::invalid_argument(
            "solve: no admissible exponential-moment bound on the default "
            "grid");

    Solution s;
    s.spec = spec;
    s.alpha = *alpha;
    s.factors = wh::factorize(spec.model, spec.r);
    s.constants = constants(s.factors);
    s.gap = solve_gap(s.constants, s.factors, spec.delta, opt.tolerance);
    s.gap_residual_f =
        gap_equation(s.gap, s.constants, s.factors, spec.delta);

    const Coefficients a = coefficients(s.gap, s.constants, s.factors);
    s.coeff_inf = a.inf;
    s.coeff_sup = a.sup;
    s.scaled_inf = a.scaled_inf;
    s.scaled_sup = a.scaled_sup;

    const Thresholds th = thresholds(s.gap, a, s.constants, spec.delta);
    s.x_inf = th.inf;
    s.x_sup = th.sup;

    const auto [j_inf, j_sup] = pasting_jumps(s);
    s.jump_inf = j_inf;
    s.jump_sup = j_sup;

    s.coeff_signs_ok = s.coeff_inf < 0.0 && s.coeff_sup > 0.0;
    s.checks = verify_conditions(s, opt.grid_size);
    s.certified = s.checks.all_ok();
    return s;
}

double value(const Solution& s, double x) {
    if (x < s.x_inf) return x + s.spec.delta;
    if (x > s.x_sup) return x - s.spec.delta;
    return s.scaled_inf * std::exp(-s.factors.rate_inf * (x - s.x_inf)) +
           s.scaled_sup * std::exp(-s.factors.rate_sup * (s.x_sup - x));
}

double value_slope_inside(const Solution& s, double x) {
    if (x < s.x_inf || x > s.x_sup) return 1.0;
    return -s.factors.rate_inf * s.scaled_inf *
               std::exp(-s.factors.rate_inf * (x - s.x_inf)) +
           s.factors.rate_sup * s.scaled_sup *
               std::exp(-s.factors.rate_sup * (s.x_sup - x));
}

double q_inf(const Solution& s, double x) {
    if (x > s.x_inf) return 0.0;
    return x + s.spec.delta + s.constants.mean_inf -
           s.constants.factor_inf * s.coeff_sup *
               std::exp(s.factors.rate_sup * (x - s.x_inf));
}

double q_inf_slope(const Solution& s, double x) {
    if (x > s.x_inf) return 0.0;
    return 1.0 - s.constants.factor_inf * s.coeff_sup * s.factors.rate_sup *
                     std::exp(s.factors.rate_sup * (x - s.x_inf));
}

double q_sup(const Solution& s, double x) {
    if (x < s.x_sup) return 0.0;
    return x - s.spec.delta - s.constants.mean_sup -
           s.constants.factor_sup * s.coeff_inf *
               std::exp(-s.factors.rate_inf * (x - s.x_sup));
}

double q_sup_slope(const Solution& s, double x) {
    if (x < s.x_sup) return 0.0;
    return 1.0 + s.constants.factor_sup * s.coeff_inf * s.factors.rate_inf *
                     std::exp(-s.factors.rate_inf * (x - s.x_sup));
}

std::pair<double, double> pasting_jumps(const Solution& s) {
    const double inside_lo = -s.factors.rate_inf * s.scaled_inf +
                             s.factors.rate_sup * s.coeff_sup;
    const double inside_hi = -s.factors.rate_inf * s.coeff_inf +
                             s.factors.rate_sup * s.scaled_sup;
    return {inside_lo - 1.0, 1.0 - inside_hi};
}

Conditions verify_conditions(const Solution& s, int grid_size,
                             const ConditionTolerances& tol) {
    require(grid_size >= 2, "grid_size must be at least 2");
    Conditions c;
    c.grid_size = grid_size;
    const double n1 = static_cast<double>(grid_size - 1);

    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_size; ++i) {
        const double x = s.x_inf + s.gap * static_cast<double>(i) / n1;
        const double v = value(s, x);
        margin = std::min(margin, v - (x - s.spec.delta));
        margin = std::min(margin, (x + s.spec.delta) - v);
    }
    c.sandwich_margin = margin;

    double lo_slope = std::numeric_limits<double>::infinity();
    double hi_slope = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_size; ++i) {
        const double t = static_cast<double>(i) / n1;
        lo_slope = std::min(
            lo_slope, q_inf_slope(s, s.x_inf - 10.0 * s.gap * (1.0 - t)));
        hi_slope =
            std::min(hi_slope, q_sup_slope(s, s.x_sup + 10.0 * s.gap * t));
    }
    c.mono_inf_min = lo_slope;
    c.mono_sup_min = hi_slope;

    c.boundary_inf = std::abs(q_inf(s, s.x_inf));
    c.boundary_sup = std::abs(q_sup(s, s.x_sup));

    c.continuity_inf =
        std::abs(s.scaled_inf + s.coeff_sup - (s.x_inf + s.spec.delta));
    c.continuity_sup =
        std::abs(s.coeff_inf + s.scaled_sup - (s.x_sup - s.spec.delta));

    const double formula_inf = -s.spec.delta - s.constants.mean_inf +
                               s.constants.factor_inf * s.coeff_sup;
    const double formula_sup = s.spec.delta + s.constants.mean_sup +
                               s.constants.factor_sup * s.coeff_inf;
    c.gap_residual = std::abs((formula_sup - formula_inf) - s.gap);

    c.pasting_inf =
        std::abs(s.jump_inf + s.factors.atom_inf * q_inf_slope(s, s.x_inf));
    c.pasting_sup =
        std::abs(s.jump_sup - s.factors.atom_sup * q_sup_slope(s, s.x_sup));

    c.sandwich_ok = c.sandwich_margin >= -tol.sandwich;
    c.monotone_ok =
        c.mono_inf_min >= -tol.monotone && c.mono_sup_min >= -tol.monotone;
    c.boundary_ok =
        c.boundary_inf <= tol.boundary && c.boundary_sup <= tol.boundary;
    c.continuity_ok = c.continuity_inf <= tol.continuity &&
                      c.continuity_sup <= tol.continuity;
    c.gap_ok = c.gap_residual <= tol.gap;
    c.pasting_ok =
        c.pasting_inf <= tol.pasting && c.pasting_sup <= tol.pasting;
    return c;
}

Region region(const Solution& s, double x) {
    if (x <= s.x_inf) return Region::StopMin;
    if (x >= s.x_sup) return Region::StopMax;
    return Region::Continue;
}

const char* region_name(Region rg) {
    switch (rg) {
        case Region::StopMin: return "stop_min";
        case Region::Continue: return "continue";
        case Region::StopMax: return "stop_max";
    }
    return "?";
}

}  // namespace dynkin::game

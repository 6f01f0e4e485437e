#include <cmath>
#include <stdexcept>
#include <string>

#include "doctest.h"

#include "dynkin/game.hpp"

using namespace dynkin;

namespace {

// Frozen solutions for the reference parameter sets, cross-checked against
// an independent high-precision implementation of the full pipeline.
struct Frozen {
    const char* name;
    game::Spec spec;
    double mean_inf, mean_sup;      // E_I, E_S
    double factor_inf, factor_sup;  // F_I, F_S
    double gap;                     // u
    double coeff_inf, coeff_sup;    // A_I, A_S
    double x_inf, x_sup;
    double jump_inf, jump_sup;
    double alpha;
};

const Frozen kFrozen[] = {
    {"bm-sym",
     {levy::Model::brownian_motion(0.0, 1.0), 1.0, 1.0},
     0.70710678118654746, 0.70710678118654746, 2.0, 2.0,
     3.3910261609280274, -0.0057968503612668238, 0.0057968503612668238,
     -1.6955130804640137, 1.6955130804640137, 0.0, 0.0,
     0.70710678118654746},
    {"bm-drift",
     {levy::Model::brownian_motion(1.0, 1.0), 1.0, 1.0},
     0.36602540378443865, 1.3660254037844388, 1.2679491924311226,
     4.7320508075688776, 3.6085765229525757, -1.7774047673593585e-05,
     0.097314764389785979, -1.2426352268647844, 2.365941296087791, 0.0, 0.0,
     0.36602540378443865},
    {"cl",
     {levy::Model::cramer_lundberg(1.0, 1.0, 1.0), 1.0, 1.0},
     0.6180339887498949, 0.61803398874989479, 1.3819660112501051,
     1.3819660112501051, 3.1057847693182019, -0.090440384935371557,
     0.0038334301375012475, -1.6127363185933663, 1.4930484507248354,
     -0.6127363185933663, 0.0, 0.5},
    {"cp-sym",
     {levy::Model::compound_poisson(1.0, 1.0, 1.0, 1.0), 1.0, 1.0},
     0.73205080756887742, 0.73205080756887742, 1.2679491924311228,
     1.2679491924311228, 3.1802517178490639, -0.11193267797444094,
     0.11193267797444094, -1.5901258589245322, 1.5901258589245322,
     -0.53004195297484402, 0.53004195297484402, 0.5},
    {"cp-asym",
     {levy::Model::compound_poisson(1.0, 3.0, 3.0, 1.0), 1.0, 1.0},
     2.7748517734455853, 0.1081851067789195, 2.9249505911485283,
     1.026334038989724, 3.8581920771961613, -0.99851156463914614,
     1.3127030048375219e-05, -3.7748133775312853, 0.083378699664875766,
     -0.26488802651877164, 0.55000907326630843, 0.25},
    {"anchor-bm",
     {levy::Model::brownian_motion(-0.4, 1.7), 0.55, 2.1},
     2.0248118908553883, 1.2975391635826612, 2.56050156148246,
     1.6408196086968412, 7.4272438960992222, -0.051517848009968371,
     0.0041303091883623357, -4.1142362277291813, 3.3130076683700418, 0.0,
     0.0, 0.0},
    {"anchor-cl",
     {levy::Model::cramer_lundberg(2.0, 3.0, 1.5), 0.7, 0.3},
     1.0864810967500547, 1.0864810967500549, 1.6197316161374808,
     1.6197316161374811, 2.0487493905939544, -0.31156743060289627,
     0.13555158324531205, -1.1669239117501311, 0.88182547884382323,
     -0.30342336911254586, 0.0, 0.0},
    {"anchor-cp",
     {levy::Model::compound_poisson(2.0, 1.0, 0.8, 1.3), 2.0, 1.2},
     0.17582134287169476, 0.73832134287169471, 1.0706586162496137,
     1.3833799773818813, 3.1499816635249278, -0.0015616848120702039,
     0.15130931209980916, -1.2138207241532322, 1.9361609393716954,
     -0.67956119968492346, 0.62666133895041432, 0.0},
};

constexpr double kEps = 1e-12;

}  // namespace

TEST_CASE("solutions match the frozen references") {
    for (const auto& fr : kFrozen) {
        CAPTURE(fr.name);
        const auto s = game::solve(fr.spec);

        CHECK(s.constants.mean_inf ==
              doctest::Approx(fr.mean_inf).epsilon(kEps));
        CHECK(s.constants.mean_sup ==
              doctest::Approx(fr.mean_sup).epsilon(kEps));
        CHECK(s.constants.factor_inf ==
              doctest::Approx(fr.factor_inf).epsilon(kEps));
        CHECK(s.constants.factor_sup ==
              doctest::Approx(fr.factor_sup).epsilon(kEps));
        CHECK(s.constants.excess_inf ==
              doctest::Approx(fr.factor_inf - 1.0).epsilon(1e-11));
        CHECK(s.constants.excess_sup ==
              doctest::Approx(fr.factor_sup - 1.0).epsilon(1e-11));

        CHECK(s.gap == doctest::Approx(fr.gap).epsilon(kEps));
        CHECK(s.coeff_inf == doctest::Approx(fr.coeff_inf).epsilon(kEps));
        CHECK(s.coeff_sup == doctest::Approx(fr.coeff_sup).epsilon(kEps));
        CHECK(s.x_inf == doctest::Approx(fr.x_inf).epsilon(kEps));
        CHECK(s.x_sup == doctest::Approx(fr.x_sup).epsilon(kEps));
        CHECK(s.jump_inf == doctest::Approx(fr.jump_inf).epsilon(kEps));
        CHECK(s.jump_sup == doctest::Approx(fr.jump_sup).epsilon(kEps));
        if (fr.alpha > 0.0)
            CHECK(s.alpha == doctest::Approx(fr.alpha).epsilon(kEps));

        CHECK(s.certified);
        CHECK(s.coeff_signs_ok);
        CHECK(s.checks.all_ok());
        // The upper threshold is defined as x_inf + gap, bitwise.
        CHECK(s.x_sup == s.x_inf + s.gap);
        CHECK(std::abs(s.gap_residual_f) <= 1e-12);
    }
}

TEST_CASE("gap equation endpoints and root") {
    for (const auto& fr : kFrozen) {
        CAPTURE(fr.name);
        const auto f = wh::factorize(fr.spec.model, fr.spec.r);
        const auto k = game::constants(f);
        CHECK(game::gap_equation(0.0, k, f, fr.spec.delta) ==
              doctest::Approx(-2.0 * fr.spec.delta).epsilon(1e-14));
        CHECK(game::bracket_top(k, fr.spec.delta) ==
              doctest::Approx(2.0 * fr.spec.delta + k.mean_inf + k.mean_sup)
                  .epsilon(1e-15));
        const double u = game::solve_gap(k, f, fr.spec.delta);
        CHECK(std::abs(game::gap_equation(u, k, f, fr.spec.delta)) <= 1e-12);
        CHECK(u == doctest::Approx(fr.gap).epsilon(kEps));
        // The slope at the root is positive: the root is a crossing, not a
        // tangency.
        CHECK(game::gap_equation_slope(u, k, f) > 0.0);
    }
}

TEST_CASE("value function branches") {
    for (const auto& fr : kFrozen) {
        CAPTURE(fr.name);
        const auto s = game::solve(fr.spec);
        const double d = fr.spec.delta;

        // Outside the thresholds the value equals the stopping payoffs.
        const double below = s.x_inf - 1.3;
        const double above = s.x_sup + 0.7;
        CHECK(game::value(s, below) == below + d);
        CHECK(game::value(s, above) == above - d);

        // Continuity at the thresholds.
        CHECK(game::value(s, s.x_inf) ==
              doctest::Approx(s.x_inf + d).epsilon(1e-9));
        CHECK(game::value(s, s.x_sup) ==
              doctest::Approx(s.x_sup - d).epsilon(1e-9));

        // The middle branch is the two-term exponential in scaled form.
        const double mid = 0.5 * (s.x_inf + s.x_sup);
        const double want =
            s.scaled_inf * std::exp(-s.factors.rate_inf * (mid - s.x_inf)) +
            s.scaled_sup * std::exp(-s.factors.rate_sup * (s.x_sup - mid));
        CHECK(game::value(s, mid) == doctest::Approx(want).epsilon(1e-14));

        // Strictly between the payoffs in the interior.
        CHECK(game::value(s, mid) > mid - d);
        CHECK(game::value(s, mid) < mid + d);
    }
}

TEST_CASE("regions") {
    const auto s = game::solve(kFrozen[0].spec);
    CHECK(game::region(s, s.x_inf - 0.1) == game::Region::StopMin);
    CHECK(game::region(s, s.x_inf) == game::Region::StopMin);
    CHECK(game::region(s, 0.0) == game::Region::Continue);
    CHECK(game::region(s, s.x_sup) == game::Region::StopMax);
    CHECK(game::region(s, s.x_sup + 0.1) == game::Region::StopMax);
    CHECK(std::string(game::region_name(game::Region::StopMin)) == "stop_min");
    CHECK(std::string(game::region_name(game::Region::Continue)) ==
          "continue");
    CHECK(std::string(game::region_name(game::Region::StopMax)) == "stop_max");
}

TEST_CASE("averaging functions vanish at their thresholds") {
    for (const auto& fr : kFrozen) {
        CAPTURE(fr.name);
        const auto s = game::solve(fr.spec);
        CHECK(std::abs(game::q_inf(s, s.x_inf)) <= 1e-9);
        CHECK(std::abs(game::q_sup(s, s.x_sup)) <= 1e-9);
        // Zero off their domains.
        CHECK(game::q_inf(s, s.x_inf + 0.1) == 0.0);
        CHECK(game::q_sup(s, s.x_sup - 0.1) == 0.0);
        // Increasing where they live.
        CHECK(game::q_inf_slope(s, s.x_inf - 1.0) > 0.0);
        CHECK(game::q_inf_slope(s, s.x_inf) > 0.0);
        CHECK(game::q_sup_slope(s, s.x_sup) > 0.0);
        CHECK(game::q_sup_slope(s, s.x_sup + 1.0) > 0.0);
    }
}

TEST_CASE("derivative jumps match the averaging-function pastings") {
    for (const auto& fr : kFrozen) {
        CAPTURE(fr.name);
        const auto s = game::solve(fr.spec);
        const auto [ji, js] = game::pasting_jumps(s);
        CHECK(ji == s.jump_inf);
        CHECK(js == s.jump_sup);
        // Smooth pasting from inside against the atom-weighted slope.
        CHECK(std::abs(s.jump_inf +
                       s.factors.atom_inf * game::q_inf_slope(s, s.x_inf)) <=
              1e-8);
        CHECK(std::abs(s.jump_sup -
                       s.factors.atom_sup * game::q_sup_slope(s, s.x_sup)) <=
              1e-8);
    }
}

TEST_CASE("verification sweep passes on a fine grid") {
    for (const auto& fr : kFrozen) {
        CAPTURE(fr.name);
        const auto s = game::solve(fr.spec);
        const auto c = game::verify_conditions(s, 1001);
        CHECK(c.grid_size == 1001);
        CHECK(c.sandwich_ok);
        CHECK(c.monotone_ok);
        CHECK(c.boundary_ok);
        CHECK(c.continuity_ok);
        CHECK(c.gap_ok);
        CHECK(c.pasting_ok);
        CHECK(c.all_ok());
        CHECK(c.sandwich_margin > -1e-9);
        CHECK(c.gap_residual <= 1e-10);
    }
}

TEST_CASE("solve validates its inputs") {
    game::Spec spec{levy::Model::brownian_motion(0.0, 1.0), 1.0, 1.0};
    spec.r = 0.0;
    CHECK_THROWS_AS(game::solve(spec), std::invalid_argument);
    spec.r = 1.0;
    spec.delta = 0.0;
    CHECK_THROWS_AS(game::solve(spec), std::invalid_argument);
    spec.delta = -0.5;
    CHECK_THROWS_AS(game::solve(spec), std::invalid_argument);
    spec.delta = 1.0;
    game::SolveOptions opt;
    opt.grid_size = 1;
    CHECK_THROWS_AS(game::solve(spec, opt), std::invalid_argument);
    opt.grid_size = 2;
    opt.tolerance = 0.0;
    CHECK_THROWS_AS(game::solve(spec, opt), std::invalid_argument);
}

TEST_CASE("value slope inside the continuation region") {
    const auto s = game::solve(kFrozen[2].spec);  // drift-and-loss model
    // Slope from inside at the lower threshold differs from 1 by jump_inf.
    const double inside_lo = game::value_slope_inside(s, s.x_inf);
    CHECK(inside_lo == doctest::Approx(1.0 + s.jump_inf).epsilon(1e-10));
    const double inside_hi = game::value_slope_inside(s, s.x_sup);
    CHECK(inside_hi == doctest::Approx(1.0 - s.jump_sup).epsilon(1e-10));
}

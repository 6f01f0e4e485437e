#include <cmath>
#include <stdexcept>
#include <string>

#include "doctest.h"

#include "dynkin/levy.hpp"
#include "dynkin/wiener_hopf.hpp"

using namespace dynkin;

namespace {

// Frozen factorizations for the reference parameter sets, cross-checked
// against an independent high-precision implementation of the closed forms.
struct Frozen {
    const char* name;
    levy::Model model;
    double r;
    double rate_inf, rate_sup, atom_inf, atom_sup;
};

const Frozen kFrozen[] = {
    {"bm-sym", levy::Model::brownian_motion(0.0, 1.0), 1.0,
     1.4142135623730951, 1.4142135623730951, 0.0, 0.0},
    {"bm-drift", levy::Model::brownian_motion(1.0, 1.0), 1.0,
     2.7320508075688772, 0.73205080756887719, 0.0, 0.0},
    {"cl", levy::Model::cramer_lundberg(1.0, 1.0, 1.0), 1.0,
     0.6180339887498949, 1.6180339887498949, 0.61803398874989479, 0.0},
    {"cp-sym", levy::Model::compound_poisson(1.0, 1.0, 1.0, 1.0), 1.0,
     0.57735026918962573, 0.57735026918962573, 0.57735026918962573,
     0.57735026918962573},
    {"cp-asym", levy::Model::compound_poisson(1.0, 3.0, 3.0, 1.0), 1.0,
     0.26491106406735182, 2.264911064067352, 0.26491106406735182,
     0.75497035468911733},
    {"anchor-bm", levy::Model::brownian_motion(-0.4, 1.7), 0.55,
     0.4938730380418434, 0.77068964703838316, 0.0, 0.0},
    {"anchor-cl", levy::Model::cramer_lundberg(2.0, 3.0, 1.5), 0.7,
     0.57040257579377873, 0.9204025757937786, 0.38026838386251915, 0.0},
    {"anchor-cp", levy::Model::compound_poisson(2.0, 1.0, 0.8, 1.3), 2.0,
     1.4796809993463773, 0.50293681329986584, 0.73984049967318866,
     0.62867101662483227},
};

}  // namespace

TEST_CASE("factorizations match the frozen references") {
    for (const auto& fr : kFrozen) {
        CAPTURE(fr.name);
        const auto f = wh::factorize(fr.model, fr.r);
        CHECK(f.rate_inf == doctest::Approx(fr.rate_inf).epsilon(1e-14));
        CHECK(f.rate_sup == doctest::Approx(fr.rate_sup).epsilon(1e-14));
        CHECK(f.atom_inf ==
              doctest::Approx(fr.atom_inf).epsilon(1e-14).scale(1.0));
        CHECK(f.atom_sup ==
              doctest::Approx(fr.atom_sup).epsilon(1e-14).scale(1.0));
    }
}

TEST_CASE("rates are roots of psi(z) = r") {
    for (const auto& fr : kFrozen) {
        CAPTURE(fr.name);
        const auto f = wh::factorize(fr.model, fr.r);
        CHECK(levy::psi(fr.model, f.rate_sup) ==
              doctest::Approx(fr.r).epsilon(1e-12));
        CHECK(levy::psi(fr.model, -f.rate_inf) ==
              doctest::Approx(fr.r).epsilon(1e-12));
    }
}

TEST_CASE("root products hit their closed forms") {
    // Brownian: rate_inf * rate_sup = 2 r / sigma^2.
    for (const char* name : {"bm-sym", "bm-drift", "anchor-bm"}) {
        for (const auto& fr : kFrozen) {
            if (std::string(fr.name) != name) continue;
            const auto f = wh::factorize(fr.model, fr.r);
            const double want = 2.0 * fr.r / (fr.model.sigma * fr.model.sigma);
            CHECK(f.rate_inf * f.rate_sup ==
                  doctest::Approx(want).epsilon(1e-12));
        }
    }
    // Drift-and-loss models: rate_inf * rate_sup = r alpha1 / c.
    for (const char* name : {"cl", "anchor-cl"}) {
        for (const auto& fr : kFrozen) {
            if (std::string(fr.name) != name) continue;
            const auto f = wh::factorize(fr.model, fr.r);
            const double want = fr.r * fr.model.alpha1 / fr.model.c;
            CHECK(f.rate_inf * f.rate_sup ==
                  doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("atoms follow the family pattern") {
    for (const auto& fr : kFrozen) {
        CAPTURE(fr.name);
        const auto f = wh::factorize(fr.model, fr.r);
        switch (fr.model.family) {
            case levy::Family::BrownianMotion:
                CHECK(f.atom_inf == 0.0);
                CHECK(f.atom_sup == 0.0);
                break;
            case levy::Family::CramerLundberg:
                // Creeping drift upward, jump-only descent.
                CHECK(f.atom_sup == 0.0);
                CHECK(f.atom_inf ==
                      doctest::Approx(fr.r / (f.rate_sup * fr.model.c))
                          .epsilon(1e-13));
                break;
            case levy::Family::CompoundPoisson:
                CHECK(f.atom_inf ==
                      doctest::Approx(f.rate_inf / fr.model.alpha1)
                          .epsilon(1e-13));
                CHECK(f.atom_sup ==
                      doctest::Approx(f.rate_sup / fr.model.alpha2)
                          .epsilon(1e-13));
                break;
        }
    }
}

TEST_CASE("transform identity holds along the strip") {
    for (const auto& fr : kFrozen) {
        CAPTURE(fr.name);
        const auto f = wh::factorize(fr.model, fr.r);
        CHECK(wh::identity_error(fr.model, fr.r, f) <= 1e-10);
    }
}

TEST_CASE("one-sided laws expose atom, tail, and mean") {
    const auto f = wh::factorize(levy::Model::cramer_lundberg(1.0, 1.0, 1.0), 1.0);
    const auto law_inf = wh::infimum_law(f);
    CHECK(law_inf.atom == doctest::Approx(f.atom_inf).epsilon(1e-15));
    CHECK(law_inf.rate == doctest::Approx(f.rate_inf).epsilon(1e-15));
    CHECK(law_inf.cdf(-1.0) == 0.0);
    CHECK(law_inf.cdf(0.0) == doctest::Approx(f.atom_inf).epsilon(1e-15));
    CHECK(law_inf.cdf(1e3) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(law_inf.mean() ==
          doctest::Approx((1.0 - f.atom_inf) / f.rate_inf).epsilon(1e-15));

    const auto law_sup = wh::supremum_law(f);
    CHECK(law_sup.atom == 0.0);
    // Atom-free law: cdf(x) = 1 - exp(-rate x).
    CHECK(law_sup.cdf(0.5) ==
          doctest::Approx(1.0 - std::exp(-f.rate_sup * 0.5)).epsilon(1e-14));
}

TEST_CASE("factorize rejects a non-positive discount") {
    const auto m = levy::Model::brownian_motion(0.0, 1.0);
    CHECK_THROWS_AS(wh::factorize(m, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(wh::factorize(m, -1.0), std::invalid_argument);
}

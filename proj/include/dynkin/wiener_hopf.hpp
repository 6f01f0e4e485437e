#pragma once

// Closed-form Wiener-Hopf data. For each supported family the equation
// psi(z) = r has exactly one root on each side of zero inside the strip, and
// the running supremum S and infimum I of the process at an independent
// Exp(r) time are defective exponentials built from those roots:
//
//   P(S = 0) = atom_sup,  density (1 - atom_sup) rate_sup e^{-rate_sup x}, x > 0
//   P(I = 0) = atom_inf,  density (1 - atom_inf) rate_inf e^{ rate_inf x}, x < 0

#include "dynkin/levy.hpp"

namespace dynkin::wh {

struct Factors {
    double rate_inf = 0.0;  // decay rate of the infimum law (root on the negative side)
    double rate_sup = 0.0;  // decay rate of the supremum law (root on the positive side)
    double atom_inf = 0.0;  // P(I = 0)
    double atom_sup = 0.0;  // P(S = 0)
};

// Computes roots and atoms from the family's closed forms. Throws
// std::invalid_argument for bad r and std::runtime_error if the computed
// roots land outside the strip (cannot happen for valid models).
Factors factorize(const levy::Model& m, double r);

// Distribution of one extremum magnitude (|I| or S): point mass `atom` at
// zero plus an Exp(rate) density carrying the remaining mass.
struct OneSidedLaw {
    double atom = 0.0;
    double rate = 0.0;

    double cdf(double x) const;  // P(magnitude <= x) for x >= 0
    double mean() const { return (1.0 - atom) / rate; }
};

OneSidedLaw infimum_law(const Factors& f);
OneSidedLaw supremum_law(const Factors& f);

// Maximum relative error of r / (r - psi(z)) against the product of the two
// one-sided transforms
//
//   [atom_inf + (1-atom_inf) rate_inf/(rate_inf + z)]
//   [atom_sup + (1-atom_sup) rate_sup/(rate_sup - z)]
//
// over n equispaced points on (-rate_inf, rate_sup) inset from both ends by
// (rate_inf + rate_sup) * 1e-3.
double identity_error(const levy::Model& m, double r, const Factors& f,
                      int n = 101);

}  // namespace dynkin::wh

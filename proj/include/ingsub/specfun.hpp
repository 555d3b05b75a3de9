#pragma once

#include <limits>

namespace ingsub::specfun {

// Tolerance/budget knobs shared by the iterative special functions.
// rel_tol must lie in (0, 1e-6); max_iter must be at least 100.
struct Accuracy {
    double rel_tol = 1e-12;
    int max_iter = 500;

    void validate() const;
};

// ln Gamma(x) for x > 0, via a 9-term Lanczos sum (g = 7) with the
// reflection formula below x = 1/2. Absolute accuracy is near machine
// precision over (0, 171]; the Accuracy argument only feeds validation
// here since the sum is not iterative.
double log_gamma(double x, const Accuracy& acc = {});

// Upper incomplete gamma Gamma(a; eta) = int_eta^inf u^(a-1) e^-u du,
// unregularized, for a in (0, 1] and eta > 0. Uses the lower-tail power
// series for eta < a + 1 and a modified-Lentz continued fraction
// otherwise; throws convergence_error if max_iter is exhausted.
double upper_inc_gamma(double a, double eta, const Accuracy& acc = {});

// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1],
// by the standard continued fraction with the symmetry split at
// x = (a + 1)/(a + b + 2). I_0 = 0 and I_1 = 1 exactly.
double reg_inc_beta(double a, double b, double x, const Accuracy& acc = {});

// Standard normal quantile Phi^-1(p) for p in (0, 1), Wichura's AS 241
// (PPND16) rational approximations, accurate to ~1e-15 relative.
double normal_quantile(double p);

}  // namespace ingsub::specfun

#pragma once

#include "quadfield/arith.hpp"
#include "quadfield/types.hpp"

namespace quadfield::analytic {

inline constexpr long kDefaultCapD = 100'000'000;

/// L(1, chi_D) for the real character chi_D(a) = kronecker(D, a), D > 0
/// fundamental, evaluated by the finite closed form
///   L(1, chi_D) = -(1/sqrt D) * sum_{a=1}^{D-1} chi_D(a) log sin(pi a / D)
/// (the sum is folded onto a < D/2; chi_D is even).  precision_bits <= 53
/// uses plain doubles, larger values evaluate the sum in MPFR.
double l_one_chi(const Int& D, unsigned precision_bits = 53, long cap = kDefaultCapD);

/// Floating-point class-number estimate h = sqrt(D) L(1,chi_D) / (2R).
/// Advisory only: the forms module is the exact route, this one exists to
/// cross-check it through independent mathematics.
struct AnalyticEstimate {
    Int m;
    Int D;
    double L1;
    double regulator;
    double h_est;
    long h_rounded;
    double est_error_bound;
    bool ambiguous;  // |h_est - h_rounded| >= 0.3
};

AnalyticEstimate class_number_analytic(const Int& m, unsigned precision_bits = 53,
                                       long cap = kDefaultCapD);

}  // namespace quadfield::analytic

#include "quadfield/analytic.hpp"

#include <mpfr.h>

#include <cmath>
#include <stdexcept>

#include "quadfield/contfrac.hpp"
#include "quadfield/errors.hpp"
#include "quadfield/forms.hpp"

namespace quadfield::analytic {

namespace {

double char_sum_double(const Int& D, unsigned long d) {
    // chi_D is even and sin(pi (d-a)/d) = sin(pi a/d), so fold onto a < d/2.
    double sum = 0.0;
    const double pi_over_d = M_PI / static_cast<double>(d);
    for (unsigned long a = 1; 2 * a < d; ++a) {
        int chi = mpz_kronecker_ui(D.get_mpz_t(), a);
        if (chi == 0) continue;
        sum += chi * std::log(std::sin(pi_over_d * static_cast<double>(a)));
    }
    return 2.0 * sum;
}

double char_sum_mpfr(const Int& D, unsigned long d, unsigned bits) {
    mpfr_t pi, t, acc;
    mpfr_init2(pi, bits);
    mpfr_init2(t, bits);
    mpfr_init2(acc, bits);
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_set_ui(acc, 0, MPFR_RNDN);
    for (unsigned long a = 1; 2 * a < d; ++a) {
        int chi = mpz_kronecker_ui(D.get_mpz_t(), a);
        if (chi == 0) continue;
        mpfr_mul_ui(t, pi, a, MPFR_RNDN);
        mpfr_div_ui(t, t, d, MPFR_RNDN);
        mpfr_sin(t, t, MPFR_RNDN);
        mpfr_log(t, t, MPFR_RNDN);
        if (chi > 0)
            mpfr_add(acc, acc, t, MPFR_RNDN);
        else
            mpfr_sub(acc, acc, t, MPFR_RNDN);
    }
    mpfr_mul_ui(acc, acc, 2, MPFR_RNDN);
    double out = mpfr_get_d(acc, MPFR_RNDN);
    mpfr_clear(pi);
    mpfr_clear(t);
    mpfr_clear(acc);
    return out;
}

}  // namespace

double l_one_chi(const Int& D, unsigned precision_bits, long cap) {
    if (D > cap) throw cap_exceeded("l_one_chi: discriminant beyond the evaluation cap");
    if (!forms::is_fundamental_discriminant(D))
        throw std::invalid_argument("l_one_chi: D must be a fundamental discriminant > 0");
    unsigned long d = D.get_ui();
    double sum = precision_bits <= 53 ? char_sum_double(D, d) : char_sum_mpfr(D, d, precision_bits);
    return -sum / std::sqrt(static_cast<double>(d));
}

AnalyticEstimate class_number_analytic(const Int& m, unsigned precision_bits, long cap) {
    AnalyticEstimate est;
    est.m = m;
    est.D = forms::discriminant_of(m);
    est.regulator = contfrac::regulator(m);
    est.L1 = l_one_chi(est.D, precision_bits, cap);

    double sqrtD = std::sqrt(est.D.get_d());
    est.h_est = sqrtD * est.L1 / (2.0 * est.regulator);

    // Worst-case rounding error of the folded character sum, propagated
    // through the class number formula.  Loose by design; if it ever
    // reaches the rounding threshold, redo the sum with more bits.
    unsigned bits = precision_bits < 53 ? 53 : precision_bits;
    double term_bound = std::log(est.D.get_d()) + 2.0;
    est.est_error_bound =
        est.D.get_d() * term_bound * 4.0 * std::ldexp(1.0, -static_cast<int>(bits)) /
        (2.0 * est.regulator);
    if (est.est_error_bound >= 0.2) {
        est.L1 = l_one_chi(est.D, 96, cap);
        est.h_est = sqrtD * est.L1 / (2.0 * est.regulator);
        est.est_error_bound =
            est.D.get_d() * term_bound * 4.0 * std::ldexp(1.0, -96) / (2.0 * est.regulator);
    }

    est.h_rounded = std::lround(est.h_est);
    if (est.h_rounded < 1 || est.h_est <= 0.0)
        throw std::logic_error("class_number_analytic: nonpositive estimate");
    est.ambiguous = std::fabs(est.h_est - static_cast<double>(est.h_rounded)) >= 0.3;
    return est;
}

}  // namespace quadfield::analytic

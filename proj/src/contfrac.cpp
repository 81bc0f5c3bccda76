#include "quadfield/contfrac.hpp"

#include <mpfr.h>

#include <map>
#include <stdexcept>
#include <utility>

#include "quadfield/errors.hpp"

namespace quadfield::contfrac {

namespace {

// floor((P + sqrt(d)) / Q) in exact arithmetic: with s = floor(sqrt d),
// the floor equals floor((P + s)/Q) for Q > 0 and floor((P + s + 1)/Q)
// for Q < 0 (no integer lies in (s, sqrt d) or (sqrt d, s + 1)).
Int floor_quotient(const Int& P, const Int& Q, const Int& s) {
    Int num = P + s;
    if (Q < 0) num += 1;
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
    return q;
}

void check_surd(const Int& d, const Int& P0, const Int& Q0) {
    if (d <= 0 || arith::is_perfect_square(d))
        throw std::invalid_argument("expand: d must be positive and not a perfect square");
    if (Q0 == 0) throw std::invalid_argument("expand: Q must be nonzero");
    if ((d - P0 * P0) % Q0 != 0)
        throw std::invalid_argument("expand: Q must divide d - P^2");
}

// Hard guard against runaway expansions (periods grow like sqrt(d)).
constexpr std::size_t kMaxExpansionStates = 5'000'000;

}  // namespace

Int quotient_of(const SurdState& s) {
    return floor_quotient(s.P, s.Q, arith::isqrt(s.d));
}

SurdState step(const SurdState& s) {
    Int a = quotient_of(s);
    Int Pn = a * s.Q - s.P;
    Int Qn = (s.d - Pn * Pn) / s.Q;  // exact by the state invariant
    return SurdState{Pn, Qn, s.d};
}

const Int& SurdExpansion::quotient(std::size_t i) const {
    std::size_t k = period_start(), l = period_length();
    if (i < k + l) return i < k ? preperiod[i] : period[i - k];
    return period[(i - k) % l];
}

const SurdState& SurdExpansion::state(std::size_t i) const {
    std::size_t k = period_start(), l = period_length();
    if (i < k + l) return states[i];
    return states[k + (i - k) % l];
}

SurdExpansion expand(const Int& d, const Int& P0, const Int& Q0) {
    check_surd(d, P0, Q0);
    const Int s = arith::isqrt(d);

    SurdExpansion e;
    e.d = d;
    e.start = SurdState{P0, Q0, d};

    std::map<std::pair<Int, Int>, std::size_t> seen;
    Int P = P0, Q = Q0;
    std::vector<Int> quotients;
    for (;;) {
        auto [it, fresh] = seen.try_emplace({P, Q}, quotients.size());
        if (!fresh) {
            std::size_t k = it->second;
            e.preperiod.assign(quotients.begin(), quotients.begin() + k);
            e.period.assign(quotients.begin() + k, quotients.end());
            return e;
        }
        if (quotients.size() >= kMaxExpansionStates)
            throw cap_exceeded("expand: expansion length guard exceeded");
        e.states.push_back(SurdState{P, Q, d});
        Int a = floor_quotient(P, Q, s);
        quotients.push_back(a);
        Int Pn = a * Q - P;
        Int Qn = (d - Pn * Pn) / Q;
        P = Pn;
        Q = Qn;
    }
}

namespace {

// Denominators q_{l-1}, q_{l-2} of the continued fraction built from the
// period quotients alone (q_{-1} = 0, q_{-2} = 1).
std::pair<Int, Int> period_denominators(const SurdExpansion& e) {
    Int qm2 = 1, qm1 = 0;
    for (const Int& a : e.period) {
        Int q = a * qm1 + qm2;
        qm2 = qm1;
        qm1 = q;
    }
    return {qm1, qm2};  // q_{l-1}, q_{l-2}
}

double log_half_of(const Int& X, const Int& Y, const Int& m) {
    // log((X + Y sqrt m) / 2) at 96 fractional bits; the double result
    // carries relative error ~2^-52, far inside the 2^-40 contract.
    mpfr_t t, r;
    mpfr_init2(t, 96);
    mpfr_init2(r, 96);
    mpfr_set_z(t, m.get_mpz_t(), MPFR_RNDN);
    mpfr_sqrt(t, t, MPFR_RNDN);
    mpfr_mul_z(t, t, Y.get_mpz_t(), MPFR_RNDN);
    mpfr_add_z(t, t, X.get_mpz_t(), MPFR_RNDN);
    mpfr_div_ui(t, t, 2, MPFR_RNDN);
    mpfr_log(r, t, MPFR_RNDN);
    double out = mpfr_get_d(r, MPFR_RNDN);
    mpfr_clear(t);
    mpfr_clear(r);
    return out;
}

SurdExpansion expand_for_field(const Int& m) {
    // Maximal-order generator: (1 + sqrt m)/2 for m = 1 mod 4, sqrt m else.
    return m % 4 == 1 ? expand(m, 1, 2) : expand(m, 0, 1);
}

void require_squarefree(const Int& m, const char* who) {
    if (m < 2) throw std::invalid_argument(std::string(who) + ": m must be >= 2");
    switch (arith::is_squarefree(m)) {
        case Trilean::yes: return;
        case Trilean::no: throw std::invalid_argument(std::string(who) + ": m must be squarefree");
        default: throw cap_exceeded(std::string(who) + ": squarefree status of m unknown");
    }
}

}  // namespace

FundamentalUnit fundamental_unit(const Int& m) {
    require_squarefree(m, "fundamental_unit");

    SurdExpansion e = expand_for_field(m);
    auto [qlm1, qlm2] = period_denominators(e);
    const SurdState& head = e.states[e.period_start()];

    // The purely periodic tail alpha_k satisfies eta = q_{l-1} alpha_k +
    // q_{l-2}, the fundamental unit of the order.  Write eta = (X + Y
    // sqrt m)/2; both divisions below are exact because eta is integral.
    Int X = 2 * (qlm1 * head.P + qlm2 * head.Q);
    Int Y = 2 * qlm1;
    if (X % head.Q != 0 || Y % head.Q != 0)
        throw std::logic_error("fundamental_unit: unit escaped the maximal order");
    X /= head.Q;
    Y /= head.Q;

    FundamentalUnit u;
    u.unit_norm = e.period_length() % 2 == 0 ? 1 : -1;
    u.regulator = log_half_of(X, Y, m);
    if (X % 2 == 0 && Y % 2 == 0) {
        u.x = X / 2;
        u.y = Y / 2;
        u.half_integral = false;
        if (u.x * u.x - m * u.y * u.y != u.unit_norm)
            throw std::logic_error("fundamental_unit: Pell identity violated");
    } else {
        u.x = X;
        u.y = Y;
        u.half_integral = true;
        if (u.x * u.x - m * u.y * u.y != 4 * u.unit_norm)
            throw std::logic_error("fundamental_unit: Pell identity violated");
    }
    return u;
}

double regulator(const Int& m) {
    require_squarefree(m, "regulator");
    SurdExpansion e = expand_for_field(m);

    // R = sum over one period of log((P_i + sqrt m)/Q_i): the complete
    // quotients of the periodic tail multiply to the fundamental unit.
    mpfr_t sqm, t, acc;
    mpfr_init2(sqm, 128);
    mpfr_init2(t, 128);
    mpfr_init2(acc, 128);
    mpfr_set_z(sqm, m.get_mpz_t(), MPFR_RNDN);
    mpfr_sqrt(sqm, sqm, MPFR_RNDN);
    mpfr_set_ui(acc, 0, MPFR_RNDN);
    for (std::size_t i = e.period_start(); i < e.period_start() + e.period_length(); ++i) {
        const SurdState& st = e.states[i];
        mpfr_add_z(t, sqm, st.P.get_mpz_t(), MPFR_RNDN);
        mpfr_div_z(t, t, st.Q.get_mpz_t(), MPFR_RNDN);
        mpfr_log(t, t, MPFR_RNDN);
        mpfr_add(acc, acc, t, MPFR_RNDN);
    }
    double out = mpfr_get_d(acc, MPFR_RNDN);
    mpfr_clear(sqm);
    mpfr_clear(t);
    mpfr_clear(acc);
    return out;
}

RepresentsResult represents(const Int& m, const Int& N) {
    require_squarefree(m, "represents");
    if (N == 0) throw std::invalid_argument("represents: N must be nonzero");
    if (N * N >= m)
        throw criterion_inapplicable(
            "represents: |N| >= sqrt(m), the continued-fraction criterion does not apply");

    SurdExpansion e = expand(m, 0, 1);
    const std::size_t l = e.period_length();

    RepresentsResult res;
    res.cycle.m = m;
    res.cycle.values.reserve(2 * l);
    for (std::size_t j = 1; j <= 2 * l; ++j) {
        Int v = e.state(j).Q;
        if (j % 2 == 1) v = -v;
        res.cycle.values.push_back(v);
    }

    // p_i^2 - m q_i^2 = (-1)^(i+1) Q_(i+1): scan j = i+1 over two periods
    // (all primitively represented |N| < sqrt m occur there), reaching
    // imprimitive solutions through divisors g with g^2 | N.
    for (std::size_t j = 1; j <= 2 * l; ++j) {
        const Int& v = res.cycle.values[j - 1];
        for (Int g = 1; g * g <= abs(N); ++g) {
            if (N % (g * g) != 0 || N / (g * g) != v) continue;
            Int pm2 = 0, pm1 = 1, qm2 = 1, qm1 = 0;
            for (std::size_t i = 0; i < j; ++i) {
                const Int& a = e.quotient(i);
                Int p = a * pm1 + pm2;
                Int q = a * qm1 + qm2;
                pm2 = pm1;
                pm1 = p;
                qm2 = qm1;
                qm1 = q;
            }
            Witness w{g * pm1, g * qm1};
            if (w.x * w.x - m * w.y * w.y != N)
                throw std::logic_error("represents: witness failed verification");
            res.witness = std::move(w);
            return res;
        }
    }
    return res;  // no witness: N absent from the signed cycle
}

}  // namespace quadfield::contfrac

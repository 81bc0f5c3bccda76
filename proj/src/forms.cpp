#include "quadfield/forms.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <unordered_set>

#include "quadfield/contfrac.hpp"
#include "quadfield/errors.hpp"

namespace quadfield::forms {

namespace {

std::int64_t isqrt64(std::int64_t n) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square64(std::int64_t n) {
    if (n < 0) return false;
    std::int64_t r = isqrt64(n);
    return r * r == n;
}

// Coefficient bound keeping every intermediate product inside int64.
constexpr std::int64_t kCoeffBound = std::int64_t(1) << 30;

std::int64_t checked_disc(const Bqf& f) {
    if (f.a == 0 || f.c == 0) throw std::invalid_argument("bqf: a and c must be nonzero");
    if (std::llabs(f.a) >= kCoeffBound || std::llabs(f.b) >= kCoeffBound ||
        std::llabs(f.c) >= kCoeffBound)
        throw std::invalid_argument("bqf: coefficients out of range");
    std::int64_t D = f.b * f.b - 4 * f.a * f.c;
    if (D <= 0 || is_square64(D))
        throw std::invalid_argument("bqf: discriminant must be positive and nonsquare");
    return D;
}

// Packs a reduced form's (a, b) into one key; c is determined by D.
std::uint64_t key_of(const Bqf& f) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(static_cast<std::int32_t>(f.a)))
            << 32) |
           static_cast<std::uint32_t>(static_cast<std::int32_t>(f.b));
}

}  // namespace

std::int64_t disc(const Bqf& f) { return f.b * f.b - 4 * f.a * f.c; }

Int discriminant_of(const Int& m, const arith::FactorBudget& budget) {
    if (m < 2) throw std::invalid_argument("discriminant_of: m must be >= 2");
    switch (arith::is_squarefree(m, budget)) {
        case Trilean::yes: break;
        case Trilean::no: throw std::invalid_argument("discriminant_of: m must be squarefree");
        default: throw cap_exceeded("discriminant_of: squarefree status of m unknown");
    }
    return m % 4 == 1 ? m : 4 * m;
}

bool is_fundamental_discriminant(const Int& D, const arith::FactorBudget& budget) {
    if (D <= 1) return false;
    if (D % 4 == 1) return arith::is_squarefree(D, budget) == Trilean::yes;
    if (D % 4 != 0) return false;
    Int d = D / 4;
    unsigned long r = mpz_fdiv_ui(d.get_mpz_t(), 4);
    return (r == 2 || r == 3) && arith::is_squarefree(d, budget) == Trilean::yes;
}

bool is_reduced(const Bqf& f) {
    std::int64_t D = checked_disc(f);
    std::int64_t s = isqrt64(D);
    if (f.b <= 0 || f.b > s) return false;  // 0 < b < sqrt(D)
    std::int64_t t = 2 * std::llabs(f.a);
    if (t + f.b < s + 1) return false;  // sqrt(D) - b < 2|a|
    if (t - f.b > s) return false;      // 2|a| < sqrt(D) + b
    return true;
}

Bqf rho(const Bqf& f) {
    if (!is_reduced(f)) throw std::invalid_argument("rho: form must be reduced");
    std::int64_t D = disc(f);
    std::int64_t s = isqrt64(D);
    std::int64_t c2 = 2 * std::llabs(f.c);
    // b' = -b (mod 2|c|), the unique representative in (sqrt D - 2|c|, sqrt D).
    std::int64_t r = (s + f.b) % c2;
    std::int64_t bp = s - r;
    std::int64_t cp = (bp * bp - D) / (4 * f.c);
    return Bqf{f.c, bp, cp};
}

Bqf principal_form(std::int64_t D) {
    std::int64_t s = isqrt64(D);
    std::int64_t b0 = (s % 2 == (((D % 2) + 2) % 2)) ? s : s - 1;
    return Bqf{1, b0, (b0 * b0 - D) / 4};
}

std::vector<Bqf> reduced_forms(std::int64_t D) {
    if (D <= 0 || (D % 4 != 0 && ((D % 4) + 4) % 4 != 1))
        throw std::invalid_argument("reduced_forms: D must be positive, 0 or 1 mod 4");
    if (is_square64(D)) throw std::invalid_argument("reduced_forms: D must not be a square");

    std::int64_t s = isqrt64(D);
    std::vector<Bqf> out;
    for (std::int64_t b = (D % 2 == 0) ? 2 : 1; b <= s; b += 2) {
        std::int64_t M = (D - b * b) / 4;  // = -ac > 0
        std::int64_t lo = (s + 2 - b) / 2;
        if (lo < 1) lo = 1;
        std::int64_t hi = (s + b) / 2;
        for (std::int64_t aa = lo; aa <= hi; ++aa) {
            if (M % aa != 0) continue;
            std::int64_t cc = M / aa;
            out.push_back(Bqf{aa, b, -cc});
            out.push_back(Bqf{-aa, b, cc});
        }
    }
    return out;
}

std::uint64_t class_number_narrow(const Int& D, std::int64_t cap) {
    if (D > cap)
        throw cap_exceeded("class_number_narrow: discriminant beyond the enumeration cap, "
                           "use the analytic estimate");
    if (!is_fundamental_discriminant(D))
        throw std::invalid_argument("class_number_narrow: D must be a fundamental discriminant");
    std::int64_t d = D.get_si();

    std::vector<Bqf> all = reduced_forms(d);
    std::unordered_set<std::uint64_t> members;
    members.reserve(all.size() * 2);
    for (const Bqf& f : all) members.insert(key_of(f));

    std::unordered_set<std::uint64_t> visited;
    visited.reserve(all.size() * 2);
    std::uint64_t cycles = 0;
    for (const Bqf& f : all) {
        if (visited.count(key_of(f))) continue;
        ++cycles;
        Bqf g = f;
        do {
            visited.insert(key_of(g));
            g = rho(g);
            if (!members.count(key_of(g)))
                throw std::logic_error("class_number_narrow: rho left the reduced set");
        } while (!(g == f));
    }
    return cycles;
}

ClassNumberResult class_number(const Int& m, std::int64_t cap,
                               const arith::FactorBudget& budget) {
    ClassNumberResult r;
    r.m = m;
    r.D = discriminant_of(m, budget);
    r.h_narrow = class_number_narrow(r.D, cap);
    r.unit_norm = contfrac::fundamental_unit(m).unit_norm;
    if (r.unit_norm == 1) {
        if (r.h_narrow % 2 != 0)
            throw std::logic_error("class_number: odd narrow class number with unit norm +1");
        r.h = r.h_narrow / 2;
    } else {
        r.h = r.h_narrow;
    }
    r.method = Method::form_cycles;
    return r;
}

}  // namespace quadfield::forms

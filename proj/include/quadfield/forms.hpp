#pragma once

#include <cstdint>
#include <vector>

#include "quadfield/arith.hpp"
#include "quadfield/types.hpp"

namespace quadfield::forms {

/// Indefinite binary quadratic form a x^2 + b xy + c y^2 of positive
/// nonsquare discriminant b^2 - 4ac.  Forms of fundamental discriminant
/// are automatically primitive.
struct Bqf {
    std::int64_t a;
    std::int64_t b;
    std::int64_t c;

    friend bool operator==(const Bqf&, const Bqf&) = default;
};

std::int64_t disc(const Bqf& f);

/// Largest discriminant accepted by the exact enumeration; beyond it the
/// analytic estimate is the intended fallback.
inline constexpr std::int64_t kEnumerationCapD = 100'000'000;

/// D = m for m = 1 mod 4, else 4m (fundamental discriminant of Q(sqrt m));
/// m must be squarefree.
Int discriminant_of(const Int& m, const arith::FactorBudget& budget = {});

bool is_fundamental_discriminant(const Int& D, const arith::FactorBudget& budget = {});

/// 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b, decided in exact
/// integer arithmetic.
bool is_reduced(const Bqf& f);

/// Reduction step: (a, b, c) -> (c, b', c') with b' = -b (mod 2c) chosen
/// in the reduced window sqrt(D) - 2|c| < b' < sqrt(D).  A bijection on
/// the reduced forms of each discriminant.
Bqf rho(const Bqf& f);

/// The reduced form (1, b0, .) with b0 the largest admissible b <= sqrt(D).
Bqf principal_form(std::int64_t D);

/// Every reduced form of discriminant D (both signs of a).
std::vector<Bqf> reduced_forms(std::int64_t D);

/// Narrow class number: number of rho-cycles among the reduced forms of
/// the fundamental discriminant D > 0.
std::uint64_t class_number_narrow(const Int& D, std::int64_t cap = kEnumerationCapD);

enum class Method { form_cycles, analytic_estimate };

inline const char* to_string(Method m) {
    return m == Method::form_cycles ? "form_cycles" : "analytic_estimate";
}

struct ClassNumberResult {
    Int m;
    Int D;
    std::uint64_t h_narrow;
    int unit_norm;
    std::uint64_t h;  // h_narrow when the unit has norm -1, else h_narrow/2
    Method method;
};

/// Class number of Q(sqrt m) for squarefree m >= 2, via reduced-form
/// cycles and the unit norm.
ClassNumberResult class_number(const Int& m, std::int64_t cap = kEnumerationCapD,
                               const arith::FactorBudget& budget = {});

}  // namespace quadfield::forms

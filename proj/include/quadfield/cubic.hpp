#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quadfield/arith.hpp"
#include "quadfield/types.hpp"

namespace quadfield::cubic {

/// Monic depressed cubic X^3 - a X - b.
struct CubicPoly {
    Int a;
    Int b;

    friend bool operator==(const CubicPoly&, const CubicPoly&) = default;
};

/// X^3 - 3^((n+3)/3) X - 1: the cubic attached to alpha = (1 + sqrt d')/2,
/// d' = 1 - 4*3^n, whose trace is 1 and whose norm 3^n is a cube exactly
/// when 3 | n.  Requires n >= 3, n = 0 mod 3.
CubicPoly build_f_alpha(const Int& n);

enum class IrredMethod { mod2, rational_root };

inline const char* to_string(IrredMethod m) {
    return m == IrredMethod::mod2 ? "mod2" : "rational_root";
}

struct Irreducibility {
    bool irreducible;
    IrredMethod method;
};

/// Exact irreducibility over Q.  A monic integer cubic is reducible iff it
/// has an integer root dividing its constant term; when a and b are both
/// odd the reduction X^3 - X - 1 mod 2 already settles it (method mod2).
Irreducibility is_irreducible(const CubicPoly& p);

/// The Llorente-Nart conditions at 3 for X^3 - aX - b, applicable when
/// v3(a) < 2 or v3(b) < 3.
struct LnConditions {
    bool applicable;
    bool ln1;  // 1 <= v3(b) <= v3(a)
    bool ln2;  // 3 | a, a != 3 (mod 9), 3 !| b, b^2 != a+1 (mod 9)
    bool ln3;  // a = 3 (mod 9), 3 !| b, b^2 != a+1 (mod 27)
};

LnConditions ln_conditions(const CubicPoly& p);

enum class Ramification { totally_ramified, not_totally_ramified, inapplicable };

/// Whether 3 is totally ramified in Q(theta), theta a root of the
/// irreducible p.  Rejects reducible p; inapplicable when the
/// Llorente-Nart precondition fails.
Ramification totally_ramified_at_3(const CubicPoly& p);

/// Machine-checkable evidence that 3 divides h(Q(sqrt m)) for
/// m = 3(4*3^n - 1), n = 0 mod 3: f_alpha irreducible and 3 not totally
/// ramified in its cubic subfield force an everywhere-unramified cyclic
/// cubic extension of Q(sqrt m).
struct ThreeDivCert {
    Int n;
    Int m;        // 3(4*3^n - 1)
    Int d_prime;  // 1 - 4*3^n
    CubicPoly poly;
    Irreducibility irreducible;
    LnConditions ln;
    Trilean squarefree_status;
    std::optional<Int> h;  // filled when m is within the enumeration cap
    bool verdict;
};

struct CertifyOptions {
    bool compute_h = true;
    std::int64_t form_cap = 100'000'000;
    arith::FactorBudget budget;
};

/// Builds the certificate; throws verification_error if a computed h
/// contradicts the verdict (3 !| h with verdict true).
ThreeDivCert certify_3_divisibility(const Int& n, const CertifyOptions& opts = {});

std::string to_text(const ThreeDivCert& c);
std::vector<std::pair<std::string, std::string>> to_kv(const ThreeDivCert& c);

}  // namespace quadfield::cubic

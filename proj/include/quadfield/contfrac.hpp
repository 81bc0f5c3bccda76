#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "quadfield/arith.hpp"
#include "quadfield/types.hpp"

namespace quadfield::contfrac {

/// The quadratic surd (P + sqrt(d)) / Q with Q | d - P^2 and d nonsquare.
struct SurdState {
    Int P;
    Int Q;
    Int d;

    friend bool operator==(const SurdState&, const SurdState&) = default;
};

/// One step of the expansion: a = floor((P + sqrt d)/Q), then
/// P' = aQ - P, Q' = (d - P'^2)/Q (exact).
SurdState step(const SurdState& s);

/// Partial quotient produced by the state s.
Int quotient_of(const SurdState& s);

/// Preperiod plus exactly one period of the continued fraction of
/// (P0 + sqrt d)/Q0, with the (P, Q) state sequence aligned to the
/// quotients.  The state following the last period element equals the
/// state at the period start.
struct SurdExpansion {
    Int d;
    SurdState start;
    std::vector<Int> preperiod;
    std::vector<Int> period;
    std::vector<SurdState> states;  // states[i] produces quotient i

    std::size_t period_start() const { return preperiod.size(); }
    std::size_t period_length() const { return period.size(); }

    /// Quotient i of the infinite expansion (wraps around the period).
    const Int& quotient(std::size_t i) const;
    /// State i of the infinite expansion (wraps around the period).
    const SurdState& state(std::size_t i) const;
};

SurdExpansion expand(const Int& d, const Int& P0, const Int& Q0);

/// Fundamental unit of the ring of integers of Q(sqrt m), m squarefree.
/// When half_integral, the unit is (x + y sqrt m)/2 with x^2 - m y^2 =
/// 4 * unit_norm (possible only for m = 5 mod 8); otherwise x + y sqrt m
/// with x^2 - m y^2 = unit_norm.  x, y > 0 and (x, y) is minimal.
struct FundamentalUnit {
    Int x;
    Int y;
    int unit_norm;      // -1 or +1
    double regulator;   // log of the unit, relative error well under 2^-40
    bool half_integral;
};

FundamentalUnit fundamental_unit(const Int& m);

/// Regulator of Q(sqrt m) accumulated as sum of log((P_i + sqrt m)/Q_i)
/// over one period, without instantiating the unit's coordinates.
double regulator(const Int& m);

/// x^2 - m y^2 = N with y >= 1.
struct Witness {
    Int x;
    Int y;
};

/// The values (-1)^j Q_j for j = 1..2l in the expansion of sqrt(m); an
/// integer N with |N| < sqrt(m) is primitively represented by
/// x^2 - m y^2 exactly when it occurs in this list.  Two periods cover
/// both sign phases when the period length l is odd.
struct SignedQCycle {
    Int m;
    std::vector<Int> values;
};

struct RepresentsResult {
    std::optional<Witness> witness;  // nullopt: N proved unrepresentable
    SignedQCycle cycle;              // the finite evidence either way
};

/// Decides x^2 - m y^2 = N for squarefree m and 0 < |N| < sqrt(m);
/// imprimitive solutions are reached through divisors g with g^2 | N.
/// Throws criterion_inapplicable when |N| >= sqrt(m).
RepresentsResult represents(const Int& m, const Int& N);

}  // namespace quadfield::contfrac

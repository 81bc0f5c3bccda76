#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "quadfield/errors.hpp"
#include "quadfield/types.hpp"

namespace quadfield::arith {

/// Complete prime factorization, primes strictly increasing.
struct Factorization {
    std::vector<std::pair<Int, unsigned>> factors;

    Int value() const;
    bool squarefree() const;
    /// Product of the primes with odd exponent; Q(sqrt n) = Q(sqrt of this).
    Int squarefree_part() const;
};

/// Budgets for factor() and everything built on it.  Trial division runs
/// up to trial_bound; remaining composite cofactors get at most
/// rho_iterations Pollard-Brent steps in total.
struct FactorBudget {
    std::uint64_t trial_bound = 10'000'000;
    std::uint64_t rho_iterations = 20'000'000;
};

/// floor(sqrt(n)); rejects n < 0.
Int isqrt(const Int& n);

bool is_perfect_square(const Int& n);

/// Jacobi symbol (a/n) for odd n >= 1; equals the Legendre symbol when n
/// is prime.  Returns 0 when gcd(a, n) > 1.
int jacobi(const Int& a, const Int& n);

/// Kronecker symbol (a/n), the Jacobi symbol extended to all n.
int kronecker(const Int& a, const Int& n);

/// Deterministic for n < 2^64 (fixed 12-prime Miller-Rabin witness set);
/// above that, 64 Miller-Rabin rounds with bases derived deterministically
/// from n (false-positive probability <= 4^-64 under the random-base bound).
bool is_prime(const Int& n);

/// Complete factorization of n >= 1, or nullopt when the budget runs out
/// before all cofactors are split.
std::optional<Factorization> factor(const Int& n, const FactorBudget& budget = {});

/// Whether no prime square divides n; unknown when the factoring budget
/// is exhausted before the question is settled.
Trilean is_squarefree(const Int& n, const FactorBudget& budget = {});

/// Largest exponent e with p^e | n; n must be nonzero, p prime.
unsigned vp(const Int& n, const Int& p);

}  // namespace quadfield::arith

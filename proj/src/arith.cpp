#include "quadfield/arith.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace quadfield::arith {

Int Factorization::value() const {
    Int v = 1;
    for (const auto& [p, e] : factors) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        v *= pe;
    }
    return v;
}

bool Factorization::squarefree() const {
    return std::all_of(factors.begin(), factors.end(),
                       [](const auto& pe) { return pe.second == 1; });
}

Int Factorization::squarefree_part() const {
    Int v = 1;
    for (const auto& [p, e] : factors)
        if (e % 2 == 1) v *= p;
    return v;
}

Int isqrt(const Int& n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative input");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_perfect_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

int jacobi(const Int& a, const Int& n) {
    if (n <= 0 || mpz_even_p(n.get_mpz_t()))
        throw std::invalid_argument("jacobi: modulus must be odd and positive");
    return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

int kronecker(const Int& a, const Int& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

namespace {

constexpr std::array<unsigned long, 12> kSmallWitnesses = {2,  3,  5,  7,  11, 13,
                                                           17, 19, 23, 29, 31, 37};

// Strong probable-prime test to base a for odd n = 2^r * d + 1.
bool strong_probable_prime(const Int& n, const Int& a, const Int& d, unsigned long r) {
    Int x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    Int nm1 = n - 1;
    if (x == 1 || x == nm1) return true;
    for (unsigned long i = 1; i < r; ++i) {
        x = (x * x) % n;
        if (x == nm1) return true;
        if (x == 1) return false;
    }
    return false;
}

}  // namespace

bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (unsigned long p : kSmallWitnesses) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    Int d = n - 1;
    unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);

    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
        // The 12-prime witness set is known to be exact below 3.3 * 10^24,
        // which covers everything under 2^64.
        for (unsigned long w : kSmallWitnesses)
            if (!strong_probable_prime(n, Int(w), d, r)) return false;
        return true;
    }

    // Large inputs: 64 rounds with bases derived deterministically from n,
    // so results are reproducible run to run.
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(n);
    for (int round = 0; round < 64; ++round) {
        Int a = 2 + rng.get_z_range(n - 3);
        if (!strong_probable_prime(n, a, d, r)) return false;
    }
    return true;
}

namespace {

struct RhoBudget {
    std::uint64_t left;
};

// Pollard-Brent with an iteration budget; returns a nontrivial factor of
// the odd composite n, or nullopt when the budget runs out.
std::optional<Int> pollard_brent(const Int& n, RhoBudget& budget) {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(n);
    while (budget.left > 0) {
        Int y = 2 + rng.get_z_range(n - 3);
        Int c = 1 + rng.get_z_range(n - 2);
        Int x, q = 1, g = 1, ys;
        const unsigned long block = 128;
        unsigned long rlen = 1;
        while (g == 1 && budget.left > 0) {
            x = y;
            for (unsigned long i = 0; i < rlen; ++i) y = (y * y + c) % n;
            unsigned long k = 0;
            while (k < rlen && g == 1 && budget.left > 0) {
                ys = y;
                unsigned long steps = std::min(block, rlen - k);
                if (steps > budget.left) steps = static_cast<unsigned long>(budget.left);
                for (unsigned long i = 0; i < steps; ++i) {
                    y = (y * y + c) % n;
                    Int diff = x - y;
                    q = (q * abs(diff)) % n;
                }
                budget.left -= steps;
                g = gcd(q, n);
                k += steps;
            }
            rlen *= 2;
        }
        if (g == n) {
            // Backtrack one step at a time from the last saved point.
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                g = gcd(Int(abs(x - ys)), n);
            }
        }
        if (g > 1 && g < n) return g;
        // g == n even after backtracking: retry with a new c.
    }
    return std::nullopt;
}

// Splits rem completely into primes, honoring the rho budget.
bool split_completely(Int rem, std::vector<Int>& primes, RhoBudget& budget) {
    if (rem == 1) return true;
    if (is_prime(rem)) {
        primes.push_back(rem);
        return true;
    }
    // Perfect powers reduce to their base.
    if (mpz_perfect_power_p(rem.get_mpz_t())) {
        for (unsigned long k = 2; k <= mpz_sizeinbase(rem.get_mpz_t(), 2); ++k) {
            Int root;
            if (mpz_root(root.get_mpz_t(), rem.get_mpz_t(), k)) {
                std::vector<Int> base_primes;
                if (!split_completely(root, base_primes, budget)) return false;
                for (unsigned long i = 0; i < k; ++i)
                    primes.insert(primes.end(), base_primes.begin(), base_primes.end());
                return true;
            }
        }
    }
    auto g = pollard_brent(rem, budget);
    if (!g) return false;
    return split_completely(*g, primes, budget) && split_completely(rem / *g, primes, budget);
}

}  // namespace

std::optional<Factorization> factor(const Int& n, const FactorBudget& budget) {
    if (n < 1) throw std::invalid_argument("factor: n must be positive");
    Factorization out;
    if (n == 1) return out;

    Int rem = n;
    std::vector<Int> primes;
    auto strip = [&](unsigned long q) {
        bool hit = false;
        if (mpz_divisible_ui_p(rem.get_mpz_t(), q)) {
            unsigned e = 0;
            do {
                mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), q);
                ++e;
            } while (mpz_divisible_ui_p(rem.get_mpz_t(), q));
            out.factors.emplace_back(Int(q), e);
            hit = true;
        }
        return hit;
    };

    strip(2);
    strip(3);
    Int root = isqrt(rem);
    for (unsigned long q = 5; q <= budget.trial_bound && mpz_cmp_ui(root.get_mpz_t(), q) >= 0;
         q += 6) {
        bool hit = strip(q);
        hit |= strip(q + 2);
        if (hit) {
            if (rem == 1) break;
            root = isqrt(rem);
        }
    }
    if (rem > 1) {
        if (mpz_cmp_ui(root.get_mpz_t(), budget.trial_bound) <= 0) {
            // Every prime factor of rem exceeds sqrt(rem): rem is prime.
            primes.push_back(rem);
        } else {
            RhoBudget rb{budget.rho_iterations};
            if (!split_completely(rem, primes, rb)) return std::nullopt;
        }
    }

    std::sort(primes.begin(), primes.end());
    for (std::size_t i = 0; i < primes.size();) {
        std::size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        out.factors.emplace_back(primes[i], static_cast<unsigned>(j - i));
        i = j;
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

Trilean is_squarefree(const Int& n, const FactorBudget& budget) {
    if (n < 1) throw std::invalid_argument("is_squarefree: n must be positive");
    if (n <= 3) return Trilean::yes;
    auto f = factor(n, budget);
    if (!f) return Trilean::unknown;
    return f->squarefree() ? Trilean::yes : Trilean::no;
}

unsigned vp(const Int& n, const Int& p) {
    if (n == 0) throw std::invalid_argument("vp: n must be nonzero");
    if (!is_prime(p)) throw std::invalid_argument("vp: p must be prime");
    Int rest;
    return static_cast<unsigned>(
        mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

}  // namespace quadfield::arith

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quadfield/arith.hpp"
#include "quadfield/contfrac.hpp"
#include "quadfield/forms.hpp"
#include "quadfield/types.hpp"

namespace quadfield::families {

/// The four built-in families of real quadratic fields:
///   F1: m = (14(2n+1))^2 + 2, split prime 7, claim h(m) > 1
///   F2: m = (3(2n+1))^2 + 1,  split prime 3, claim h(m) > 1
///   F3: m = (6(2n+1))^2 - 2,  split prime 3, claim h(m) > 1
///   F4: m = 3(4*3^n - 1), n = 0 mod 3,       claim 3 | h(m)
/// F1-F3 members are 2 mod 4 (so the claims lift to H+(4m) > 1);
/// F4 members are 1 mod 4 (3 | H+(m)).
enum class Family { F1, F2, F3, F4 };

const char* to_string(Family f);
std::optional<Family> family_from_string(const std::string& s);

/// Generator value m for index n; rejects constraint violations
/// (n >= 1; for F4 additionally n = 0 mod 3, hence n >= 3).
Int member(Family f, const Int& n);

/// 7 for F1, 3 for F2/F3, nullopt for F4.
std::optional<int> split_prime(Family f);

/// Smallest admissible index >= n (steps F4 up to a multiple of 3).
Int first_index_at_least(Family f, const Int& n);
/// Next admissible index after n.
Int next_index(Family f, const Int& n);

/// How the claim column is reported for one table row.
enum class ClaimMark {
    verified,     // m squarefree, claim holds on the exact h
    failed,       // m squarefree, claim fails (contradicts the certificate)
    not_covered,  // m not squarefree: the theorems do not apply
    conditional,  // squarefreeness unknown, or h only estimated
    error,        // row-level failure (cap exceeded, ...)
};

const char* to_string(ClaimMark m);

struct FamilyRow {
    Family family;
    Int n;
    Int m;
    Trilean squarefree = Trilean::unknown;
    std::optional<Int> h;  // class number of Q(sqrt m) (squarefree kernel)
    forms::Method h_method = forms::Method::form_cycles;
    bool claim_verified = false;  // h-test on exact data only
    ClaimMark mark = ClaimMark::error;
    std::string note;  // error text for mark == error
};

struct VerifyOptions {
    std::int64_t form_cap = forms::kEnumerationCapD;
    bool allow_analytic = false;  // fall back to the estimate above the cap
    long analytic_cap = 100'000'000;
    unsigned analytic_bits = 53;
    arith::FactorBudget budget;
};

/// One table row: generator, squarefree flag, class number, claim verdict.
FamilyRow verify(Family f, const Int& n, const VerifyOptions& opts = {});

/// Non-representability evidence for one sign of the split prime.
struct NonRepresentability {
    Int target;  // +p or -p
    contfrac::SignedQCycle cycle;
};

/// Evidence chain for h(m) > 1: the split prime p has a degree-one prime
/// ideal above it (jacobi(m, p) = 1), and x^2 - m y^2 = +-p is
/// unsolvable, so that ideal cannot be principal in Z[sqrt m].
struct NontrivialityCert {
    Family family;
    Int n;
    Int m;
    int prime;
    int split_symbol;  // jacobi(m, prime); must be 1
    NonRepresentability nonrep_plus;
    NonRepresentability nonrep_minus;
};

/// Hard failures: m not squarefree (the claim assumes it), jacobi != 1 or
/// an unexpected representation (both would contradict the certificate).
NontrivialityCert certify_nontrivial(Family f, const Int& n,
                                     const arith::FactorBudget& budget = {});

std::string to_text(const NontrivialityCert& c);
std::vector<std::pair<std::string, std::string>> to_kv(const NontrivialityCert& c);

struct TableOptions : VerifyOptions {
    unsigned threads = 1;
};

/// Rows for every admissible n in [n_from, n_to], ascending.  Row failures
/// are isolated into FamilyRow::mark/note.  Output is deterministic
/// regardless of the thread count.
std::vector<FamilyRow> table(Family f, const Int& n_from, const Int& n_to,
                             const TableOptions& opts = {});

}  // namespace quadfield::families

// Independent oracles used by the test and acceptance suites.  Everything
// here is deliberately implemented through different mathematics than the
// library paths it checks.
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "quadfield/contfrac.hpp"
#include "quadfield/types.hpp"

namespace qftest {

using quadfield::Int;

/// Legendre symbol via the Euler criterion a^((p-1)/2) mod p; p odd prime.
int euler_legendre(const Int& a, const Int& p);

/// Primes <= limit by sieve.
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit);

/// All values of x^2 - m y^2 adjacent to the Conway river of the form,
/// collected over one river period.  An integer N with N^2 < m is
/// primitively represented iff it appears here.
std::set<std::int64_t> river_values(std::int64_t m);

/// Representability of x^2 - m y^2 = N (any solution) from river values,
/// reaching imprimitive solutions through divisors g with g^2 | N.
bool representable_by_river(std::int64_t m, std::int64_t N,
                            const std::set<std::int64_t>& river);

/// Literal bounded scan: does m y^2 + N become a perfect square for some
/// 0 <= y <= y_max?  (y = 0 covers square N.)
bool representable_by_scan(std::int64_t m, std::int64_t N, std::uint64_t y_max);

/// The scan bound ceil(sqrt(|N| (E1 + 1) / m)) where E1 is the fundamental
/// automorph of x^2 - m y^2 (smallest power of the fundamental unit that
/// is integral of norm +1).  Infinity-ish when E1 overflows a double.
double scan_bound(const quadfield::contfrac::FundamentalUnit& u, std::int64_t m,
                  std::int64_t N);

struct GoldenRow {
    Int n;
    Int m;
    Int h;
};

/// Parses a golden TSV with header "n m h".
std::vector<GoldenRow> load_golden(const std::string& path);

struct CliResult {
    int exit_code;
    std::string out;
};

/// Runs the CLI with the given arguments, capturing stdout and exit code.
CliResult run_cli(const std::string& cli, const std::vector<std::string>& args);

}  // namespace qftest

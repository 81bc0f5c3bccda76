#include "oracles.hpp"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace qftest {

int euler_legendre(const Int& a, const Int& p) {
    Int e = (p - 1) / 2, r;
    Int base = a % p;
    if (base < 0) base += p;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

std::set<std::int64_t> river_values(std::int64_t m) {
    // Walk the river of x^2 - m y^2 in the topograph.  State: the current
    // river edge separates a positive face from a negative one; `back` is
    // the face behind the vertex we just left.  The face q ahead satisfies
    // the parallelogram law q = 2(pos + neg) - back.
    std::set<std::int64_t> vals = {1, -m};
    std::int64_t pos = 1, neg = -m, back = 1 - m;
    std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> seen;
    std::size_t guard = 0;
    while (seen.insert({pos, neg, back}).second) {
        if (++guard > 10'000'000) throw std::runtime_error("river walk did not close");
        std::int64_t q = 2 * (pos + neg) - back;
        vals.insert(q);
        if (q > 0) {
            back = pos;
            pos = q;
        } else {
            back = neg;
            neg = q;
        }
    }
    return vals;
}

bool representable_by_river(std::int64_t m, std::int64_t N,
                            const std::set<std::int64_t>& river) {
    if (N == 0 || N * N >= m) throw std::invalid_argument("river oracle: |N| must be < sqrt m");
    for (std::int64_t g = 1; g * g <= std::llabs(N); ++g) {
        if (N % (g * g) != 0) continue;
        if (river.count(N / (g * g))) return true;
    }
    return false;
}

bool representable_by_scan(std::int64_t m, std::int64_t N, std::uint64_t y_max) {
    for (std::uint64_t y = 0; y <= y_max; ++y) {
        std::int64_t t = m * static_cast<std::int64_t>(y * y) + N;
        if (t < 0) continue;
        auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(t)));
        for (std::int64_t c = r > 1 ? r - 1 : 0; c <= r + 1; ++c)
            if (c * c == t) return true;
    }
    return false;
}

double scan_bound(const quadfield::contfrac::FundamentalUnit& u, std::int64_t m,
                  std::int64_t N) {
    // Solutions are classified up to the fundamental automorph E1 of the
    // integral form x^2 - m y^2: the smallest unit power that is integral
    // of norm +1 (half-integral units become integral at the cube).
    int k = u.half_integral ? 3 : 1;
    if (u.unit_norm < 0) k *= 2;
    double logE1 = k * u.regulator;
    if (logE1 > 690) return 1e300;  // exp overflows: effectively unbounded
    double E1 = std::exp(logE1);
    return std::ceil(std::sqrt(static_cast<double>(std::llabs(N)) * (E1 + 1.0) /
                               static_cast<double>(m)));
}

std::vector<GoldenRow> load_golden(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open golden file: " + path);
    std::vector<GoldenRow> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        std::istringstream ss(line);
        std::string n, m, h;
        if (!(ss >> n >> m >> h)) throw std::runtime_error("bad golden row: " + line);
        rows.push_back(GoldenRow{Int(n), Int(m), Int(h)});
    }
    return rows;
}

CliResult run_cli(const std::string& cli, const std::vector<std::string>& args) {
    std::string cmd = "'" + cli + "'";
    for (const auto& a : args) cmd += " '" + a + "'";
    cmd += " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    int code = -1;
    if (WIFEXITED(status)) code = WEXITSTATUS(status);
    return CliResult{code, out};
}

}  // namespace qftest

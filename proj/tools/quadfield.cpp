// quadfield: class numbers, fundamental units and norm-representability
// for real quadratic fields, plus table generation and certificates for
// the four built-in field families.
//
// Exit codes: 0 success / verified, 1 verification failed, 2 usage error,
// 3 resource cap exceeded.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "quadfield/analytic.hpp"
#include "quadfield/arith.hpp"
#include "quadfield/contfrac.hpp"
#include "quadfield/cubic.hpp"
#include "quadfield/errors.hpp"
#include "quadfield/families.hpp"
#include "quadfield/forms.hpp"

namespace {

using namespace quadfield;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapExceeded = 3;

std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Int parse_int(const std::string& s, const char* what) {
    try {
        return Int(s);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(what) + ": not an integer: " + s);
    }
}

arith::FactorBudget budget_from_seconds(double seconds) {
    arith::FactorBudget b;
    if (seconds > 0) {
        // Rough calibration: ~2e7 Pollard-Brent steps per second.
        b.rho_iterations = static_cast<std::uint64_t>(seconds * 2e7);
    }
    return b;
}

unsigned default_threads() {
    if (const char* env = std::getenv("QUADFIELD_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return 1;
}

enum class Format { tsv, csv, text };

Format parse_format(const std::string& s) {
    if (s == "tsv") return Format::tsv;
    if (s == "csv") return Format::csv;
    if (s == "text") return Format::text;
    throw std::invalid_argument("unknown format: " + s);
}

std::string h_cell(const families::FamilyRow& row) {
    if (!row.h) return "-";
    std::string v = row.h->get_str();
    if (row.h_method == forms::Method::analytic_estimate) v.insert(0, "~");
    return v;
}

void print_table(const std::vector<families::FamilyRow>& rows, Format fmt) {
    const char sep = fmt == Format::csv ? ',' : '\t';
    if (fmt == Format::text) {
        for (const auto& row : rows) {
            std::cout << "n=" << row.n << " m=" << row.m
                      << " squarefree=" << to_string(row.squarefree) << " h=" << h_cell(row)
                      << " method="
                      << (row.h ? forms::to_string(row.h_method) : "-")
                      << " claim=" << families::to_string(row.mark);
            if (!row.note.empty()) std::cout << " note=\"" << row.note << "\"";
            std::cout << "\n";
        }
        return;
    }
    std::cout << "n" << sep << "m" << sep << "squarefree" << sep << "h" << sep << "claim\n";
    for (const auto& row : rows)
        std::cout << row.n << sep << row.m << sep << to_string(row.squarefree) << sep
                  << h_cell(row) << sep << families::to_string(row.mark) << "\n";
}

void print_kv(const std::vector<std::pair<std::string, std::string>>& kv, Format fmt) {
    const char sep = fmt == Format::csv ? ',' : '\t';
    for (const auto& [k, v] : kv) std::cout << k << sep << v << "\n";
}

families::Family parse_family(const std::string& s) {
    auto f = families::family_from_string(s);
    if (!f) throw std::invalid_argument("unknown family (expected f1..f4): " + s);
    return *f;
}

std::pair<Int, Int> parse_range(const std::string& s) {
    auto pos = s.find(':');
    if (pos == std::string::npos)
        throw std::invalid_argument("range must look like FROM:TO, got: " + s);
    return {parse_int(s.substr(0, pos), "range start"), parse_int(s.substr(pos + 1), "range end")};
}

int run(int argc, char** argv) {
    CLI::App app{"exact class numbers, units and certificates for real quadratic fields"};
    app.require_subcommand(1);
    app.fallthrough();  // let app-wide flags appear after a subcommand
    double time_budget = 0.0;
    app.add_option("--time-budget", time_budget,
                   "approximate seconds allowed for factoring large members");

    // classno
    auto* classno = app.add_subcommand("classno", "class number of Q(sqrt m), m squarefree");
    std::string classno_m;
    bool classno_analytic = false;
    classno->add_option("m", classno_m)->required();
    classno->add_flag("--analytic", classno_analytic, "force the analytic estimate path");

    // unit
    auto* unit = app.add_subcommand("unit", "fundamental unit of Q(sqrt m), m squarefree");
    std::string unit_m;
    unit->add_option("m", unit_m)->required();

    // represents
    auto* rep = app.add_subcommand(
        "represents", "solve x^2 - m y^2 = N or prove unsolvability (0 < |N| < sqrt m)");
    std::string rep_m, rep_n;
    rep->add_option("m", rep_m)->required();
    rep->add_option("N", rep_n)->required();

    // table
    auto* table = app.add_subcommand("table", "family rows (n, m, squarefree, h, claim)");
    std::string table_family, table_range = "1:10", table_format = "tsv";
    unsigned table_threads = default_threads();
    bool table_analytic = false;
    table->add_option("family", table_family, "f1|f2|f3|f4")->required();
    table->add_option("--n", table_range, "index range FROM:TO")->required();
    table->add_option("--format", table_format, "tsv|csv|text (default tsv)");
    table->add_option("--threads", table_threads, "row-parallel workers");
    table->add_flag("--analytic", table_analytic,
                    "estimate h analytically above the enumeration cap (labeled with ~)");

    // certify
    auto* certify = app.add_subcommand("certify", "emit a theorem-instance certificate");
    certify->require_subcommand(1);
    auto* nontrivial =
        certify->add_subcommand("nontrivial", "h(m) > 1 for a squarefree F1/F2/F3 member");
    std::string nt_family, nt_n, certify_format = "text";
    nontrivial->add_option("family", nt_family, "f1|f2|f3")->required();
    nontrivial->add_option("n", nt_n)->required();
    auto* threediv = certify->add_subcommand("threediv", "3 | h(m) for an F4 member");
    std::string td_n;
    threediv->add_option("n", td_n, "index with n = 0 mod 3")->required();
    certify->add_option("--format", certify_format, "text|tsv|csv (default text)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    arith::FactorBudget budget = budget_from_seconds(time_budget);

    if (*classno) {
        Int m = parse_int(classno_m, "m");
        std::cout << "m=" << m << "\n";
        if (classno_analytic) {
            auto est = analytic::class_number_analytic(m);
            std::cout << "D=" << est.D << "\n";
            std::cout << "h_narrow=-\n";
            std::cout << "unit_norm=-\n";
            std::cout << "h=" << est.h_rounded << "\n";
            std::cout << "method=analytic_estimate\n";
            std::cout << "h_est=" << fmt_real(est.h_est) << "\n";
            std::cout << "error_bound=" << fmt_real(est.est_error_bound) << "\n";
            if (est.ambiguous) std::cout << "ambiguous=true\n";
        } else {
            auto r = forms::class_number(m, forms::kEnumerationCapD, budget);
            std::cout << "D=" << r.D << "\n";
            std::cout << "h_narrow=" << r.h_narrow << "\n";
            std::cout << "unit_norm=" << (r.unit_norm > 0 ? "+1" : "-1") << "\n";
            std::cout << "h=" << r.h << "\n";
            std::cout << "method=" << forms::to_string(r.method) << "\n";
        }
        return kExitOk;
    }

    if (*unit) {
        Int m = parse_int(unit_m, "m");
        auto u = contfrac::fundamental_unit(m);
        std::cout << u.x << " " << u.y << " " << (u.unit_norm > 0 ? "+1" : "-1") << " "
                  << fmt_real(u.regulator) << "\n";
        if (u.half_integral) std::cout << "half_integral=true\n";
        return kExitOk;
    }

    if (*rep) {
        Int m = parse_int(rep_m, "m");
        Int N = parse_int(rep_n, "N");
        auto r = contfrac::represents(m, N);
        if (r.witness) {
            std::cout << r.witness->x << " " << r.witness->y << "\n";
        } else {
            std::cout << "NONE\n";
            std::cout << "cycle:";
            for (const Int& v : r.cycle.values)
                std::cout << ' ' << (v >= 0 ? "+" : "") << v;
            std::cout << "\n";
        }
        return kExitOk;
    }

    if (*table) {
        auto fam = parse_family(table_family);
        auto [from, to] = parse_range(table_range);
        Format fmt = parse_format(table_format);
        families::TableOptions opts;
        opts.budget = budget;
        opts.threads = table_threads;
        opts.allow_analytic = table_analytic;
        if (table_analytic) opts.analytic_cap = 1'000'000'000;
        auto rows = families::table(fam, from, to, opts);
        print_table(rows, fmt);
        for (const auto& row : rows)
            if (row.mark == families::ClaimMark::error)
                return row.note.rfind("cap:", 0) == 0 ? kExitCapExceeded
                                                      : kExitVerificationFailed;
        return kExitOk;
    }

    if (*certify) {
        Format fmt = parse_format(certify_format);
        if (*nontrivial) {
            auto fam = parse_family(nt_family);
            auto cert = families::certify_nontrivial(fam, parse_int(nt_n, "n"), budget);
            if (fmt == Format::text)
                std::cout << families::to_text(cert);
            else
                print_kv(families::to_kv(cert), fmt);
            return kExitOk;
        }
        cubic::CertifyOptions copts;
        copts.budget = budget;
        auto cert = cubic::certify_3_divisibility(parse_int(td_n, "n"), copts);
        if (fmt == Format::text)
            std::cout << cubic::to_text(cert);
        else
            print_kv(cubic::to_kv(cert), fmt);
        return cert.verdict ? kExitOk : kExitVerificationFailed;
    }

    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const quadfield::verification_error& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kExitVerificationFailed;
    } catch (const quadfield::cap_exceeded& e) {
        std::cerr << "resource cap exceeded: " << e.what() << "\n";
        return kExitCapExceeded;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

// Command-line surface of the Hall algebra library: parse matrices and
// dimension vectors, run the computations, emit JSON/LaTeX/plain text, verify
// against the finite-field oracle, and persist a Hall polynomial cache.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hall/canonical.hpp"
#include "hall/hallmult.hpp"
#include "hall/hallpoly.hpp"
#include "hall/io.hpp"
#include "hall/matrix.hpp"
#include "hall/oracle.hpp"
#include "hall/words.hpp"

namespace {

using namespace hall;

enum class Format { json, latex, plain };

Format parse_format(const std::string& s) {
    if (s == "json") return Format::json;
    if (s == "latex") return Format::latex;
    if (s == "plain") return Format::plain;
    throw ValidationError("unknown format '" + s + "', expected json|latex|plain");
}

void add_format_flag(CLI::App* cmd, std::string& fmt) {
    cmd->add_option("--format", fmt, "output format: json|latex|plain")
        ->default_val("json")
        ->check(CLI::IsMember({"json", "latex", "plain"}));
}

void emit_json(const Json& j) { std::cout << j.dump() << "\n"; }

std::vector<long long> parse_q_list(const std::string& text) {
    std::vector<long long> qs;
    std::size_t pos = 0;
    while (true) {
        qs.push_back(hall::detail::parse_ll(text, pos, "prime power"));
        if (qs.back() < 2)
            throw ValidationError("q must be at least 2, got " + std::to_string(qs.back()));
        if (pos == text.size()) break;
        hall::detail::expect_char(text, pos, ',');
    }
    return qs;
}

std::vector<DimVector> dimvecs_up_to(int n, long long max_total) {
    std::vector<DimVector> out;
    std::vector<long long> comp(n, 0);
    while (true) {
        long long t = 0;
        for (long long c : comp) t += c;
        if (t <= max_total) out.emplace_back(n, comp);
        int k = 0;
        while (k < n && comp[k] == max_total) comp[k++] = 0;
        if (k == n) break;
        ++comp[k];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cache plumbing shared by hallpoly and verify.
// ---------------------------------------------------------------------------

struct CacheFile {
    std::string path; // empty: no persistence
    std::vector<CacheRecord> loaded;

    static CacheFile open(const std::string& path) {
        CacheFile f;
        f.path = path;
        if (!path.empty()) f.loaded = load_cache_file(path);
        return f;
    }

    std::size_t seed(int n, HallPolyCache& cache) const {
        return path.empty() ? 0 : seed_hall_cache(loaded, n, cache);
    }

    std::size_t flush(int n, const HallPolyCache& cache) const {
        if (path.empty()) return 0;
        const std::vector<CacheRecord> fresh = cache_to_records(cache, n, loaded);
        append_cache_file(path, fresh);
        return fresh.size();
    }
};

// ---------------------------------------------------------------------------
// Subcommand bodies.  Each returns the process exit code.
// ---------------------------------------------------------------------------

int cmd_dimvec(const std::string& matrix_text, Format fmt) {
    const CyclicMatrix A = parse_matrix(matrix_text);
    const DimVector d = dim_vector(A);
    switch (fmt) {
    case Format::json: {
        Json j = Json::array();
        for (int i = 1; i <= d.n; ++i) j.push_back(d.at(i));
        emit_json(j);
        break;
    }
    case Format::latex:
        std::cout << to_latex(d) << "\n";
        break;
    case Format::plain:
        std::cout << d.to_string() << "\n";
        break;
    }
    return 0;
}

int cmd_distword(const std::string& matrix_text, Format fmt) {
    const CyclicMatrix A = parse_matrix(matrix_text);
    const Word w = distinguished_word(A);
    switch (fmt) {
    case Format::json:
        emit_json(Json{{"n", A.n}, {"matrix", format_matrix(A)}, {"word", w.to_string()}});
        break;
    case Format::latex:
        std::cout << to_latex(w) << "\n";
        break;
    case Format::plain:
        std::cout << w.to_string() << "\n";
        break;
    }
    return 0;
}

int cmd_monomial(const std::string& matrix_text, Format fmt) {
    const CyclicMatrix A = parse_matrix(matrix_text);
    const HallVectorV m = monomial_expand(A);
    switch (fmt) {
    case Format::json:
        emit_json(to_json(m));
        break;
    case Format::latex:
        std::cout << to_latex(m) << "\n";
        break;
    case Format::plain:
        std::cout << to_plain(m) << "\n";
        break;
    }
    return 0;
}

int cmd_mult(const std::string& alpha_text, const std::string& matrix_text, bool twisted,
             Format fmt) {
    const CyclicMatrix C = parse_matrix(matrix_text);
    const DimVector alpha = parse_dimvec(C.n, alpha_text);
    if (twisted) {
        const HallVectorV x = mult_semisimple_twisted(alpha, C);
        switch (fmt) {
        case Format::json:
            emit_json(to_json(x));
            break;
        case Format::latex:
            std::cout << to_latex(x) << "\n";
            break;
        case Format::plain:
            std::cout << to_plain(x) << "\n";
            break;
        }
    } else {
        const HallVectorQ x = mult_semisimple_q(alpha, C);
        switch (fmt) {
        case Format::json:
            emit_json(to_json(x));
            break;
        case Format::latex:
            std::cout << to_latex(x) << "\n";
            break;
        case Format::plain:
            std::cout << to_plain(x) << "\n";
            break;
        }
    }
    return 0;
}

int cmd_hallpoly(int n_flag, const std::string& a_text, const std::string& b_text,
                 const std::string& c_text, const std::string& cache_path, Format fmt) {
    const CyclicMatrix A = parse_matrix(a_text);
    const CyclicMatrix B = parse_matrix(b_text);
    const CyclicMatrix C = parse_matrix(c_text);
    if (n_flag != 0 && n_flag != A.n)
        throw ValidationError("--n " + std::to_string(n_flag) + " contradicts --A with n=" +
                              std::to_string(A.n));
    const CacheFile file = CacheFile::open(cache_path);
    HallPolyCache cache;
    file.seed(A.n, cache);
    const QPoly phi = hall_polynomial(A, B, C, cache);
    file.flush(A.n, cache);
    switch (fmt) {
    case Format::json:
        emit_json(to_json(phi));
        break;
    case Format::latex:
        std::cout << to_latex(phi) << "\n";
        break;
    case Format::plain:
        std::cout << phi.to_string() << "\n";
        break;
    }
    return 0;
}

int cmd_canonical(const std::string& matrix_text, const std::string& route, Format fmt) {
    const CyclicMatrix A = parse_matrix(matrix_text);
    const CanonicalElement el =
        route == "ic" ? canonical_element_ic(A) : canonical_element(A);
    switch (fmt) {
    case Format::json:
        emit_json(to_json(el));
        break;
    case Format::latex:
        std::cout << to_latex(el) << "\n";
        break;
    case Format::plain:
        std::cout << to_plain(el) << "\n";
        break;
    }
    return 0;
}

int cmd_slice(int l, int p, long long bound, Format fmt) {
    const std::vector<CanonicalElement> els = slice(l, p, bound);
    switch (fmt) {
    case Format::json: {
        Json arr = Json::array();
        for (const auto& el : els) arr.push_back(to_json(el));
        emit_json(Json{{"loewy", l}, {"periodicity", p}, {"bound", bound},
                       {"elements", std::move(arr)}});
        break;
    }
    case Format::latex:
        for (const auto& el : els) std::cout << to_latex(el) << "\n";
        break;
    case Format::plain:
        std::cout << els.size() << " elements\n";
        for (const auto& el : els) std::cout << "\n" << to_plain(el) << "\n";
        break;
    }
    return 0;
}

// verify --A --B --C: one Hall polynomial against the oracle at each q
int verify_triple(const std::string& a_text, const std::string& b_text,
                  const std::string& c_text, const std::vector<long long>& qs, long long budget,
                  Format fmt) {
    const CyclicMatrix A = parse_matrix(a_text);
    const CyclicMatrix B = parse_matrix(b_text);
    const CyclicMatrix C = parse_matrix(c_text);
    HallPolyCache cache;
    const QPoly phi = hall_polynomial(A, B, C, cache);
    bool all_match = true;
    Json checks = Json::array();
    std::ostringstream plain;
    for (long long q : qs) {
        const Int eval = eval_q(phi, Int(q));
        const Int oracle = count_submodules(A, B, C, q, budget);
        const bool match = eval == oracle;
        all_match = all_match && match;
        checks.push_back(Json{{"q", q},
                              {"eval", hall::detail::int_to_json(eval)},
                              {"oracle", hall::detail::int_to_json(oracle)},
                              {"match", match}});
        plain << "q=" << q << ": polynomial " << eval << ", oracle " << oracle << ", "
              << (match ? "match" : "MISMATCH") << "\n";
    }
    if (fmt == Format::json)
        emit_json(Json{{"mode", "triple"},
                       {"phi", to_json(phi)},
                       {"checks", std::move(checks)},
                       {"ok", all_match}});
    else
        std::cout << "phi = " << phi.to_string() << "\n" << plain.str();
    return all_match ? 0 : 1;
}

// verify --n --total: sweep every triple with total dim <= total
int verify_sweep(int n, long long total, const std::vector<long long>& qs, long long budget,
                 Format fmt) {
    if (n < 2) throw ValidationError("--n must be at least 2");
    if (total < 1) throw ValidationError("--total must be at least 1");
    HallPolyCache cache;
    long long checked = 0;
    Json mismatches = Json::array();
    for (const auto& da : dimvecs_up_to(n, total)) {
        if (da.is_zero()) continue;
        for (const auto& A : enumerate_by_dimvec(da)) {
            for (const auto& dc : dimvecs_up_to(n, da.total())) {
                if (!leq_componentwise(dc, da)) continue;
                for (const auto& B : enumerate_by_dimvec(da - dc))
                    for (const auto& C : enumerate_by_dimvec(dc)) {
                        const QPoly phi = hall_polynomial(A, B, C, cache);
                        for (long long q : qs) {
                            ++checked;
                            const Int eval = eval_q(phi, Int(q));
                            const Int oracle = count_submodules(A, B, C, q, budget);
                            if (eval != oracle)
                                mismatches.push_back(Json{{"A", format_matrix(A)},
                                                          {"B", format_matrix(B)},
                                                          {"C", format_matrix(C)},
                                                          {"q", q}});
                        }
                    }
            }
        }
    }
    const bool ok = mismatches.empty();
    if (fmt == Format::json)
        emit_json(Json{{"mode", "sweep"},
                       {"n", n},
                       {"total", total},
                       {"checked", checked},
                       {"mismatches", std::move(mismatches)},
                       {"ok", ok}});
    else
        std::cout << "checked " << checked << " evaluations: "
                  << (ok ? "all match" : std::to_string(mismatches.size()) + " MISMATCHES")
                  << "\n";
    return ok ? 0 : 1;
}

// verify --cache: recompute every record and compare
int verify_cache(const std::string& path, Format fmt) {
    const std::vector<CacheRecord> records = load_cache_file(path);
    long long checked = 0, skipped = 0;
    Json mismatches = Json::array();
    for (const auto& r : records) {
        if (r.engine != engine_version) {
            ++skipped;
            continue;
        }
        const CyclicMatrix A = parse_matrix(r.A);
        const CyclicMatrix B = parse_matrix(r.B);
        const CyclicMatrix C = parse_matrix(r.C);
        HallPolyCache fresh;
        const QPoly phi = hall_polynomial(A, B, C, fresh);
        ++checked;
        if (phi != r.value)
            mismatches.push_back(Json{{"A", r.A}, {"B", r.B}, {"C", r.C},
                                      {"cached", to_json(r.value)}, {"recomputed", to_json(phi)}});
    }
    const bool ok = mismatches.empty();
    if (fmt == Format::json)
        emit_json(Json{{"mode", "cache"},
                       {"records", static_cast<long long>(records.size())},
                       {"checked", checked},
                       {"skipped", skipped},
                       {"mismatches", std::move(mismatches)},
                       {"ok", ok}});
    else
        std::cout << "cache " << path << ": " << checked << " records recomputed, " << skipped
                  << " skipped, " << (ok ? "all match" : std::to_string(mismatches.size()) +
                                                             " MISMATCHES")
                  << "\n";
    return ok ? 0 : 1;
}

int run(int argc, char** argv) {
    CLI::App app{"Ringel-Hall algebra of a cyclic quiver: Hall polynomials, distinguished "
                 "words, and the canonical basis"};
    app.require_subcommand(1);

    // dimvec
    auto* dimvec = app.add_subcommand("dimvec", "dimension vector of M(A)");
    std::string dv_matrix, dv_fmt;
    dimvec->add_option("--matrix", dv_matrix, "matrix text, e.g. \"n=2;1,2:1\"")->required();
    add_format_flag(dimvec, dv_fmt);

    // distword
    auto* distword = app.add_subcommand("distword", "distinguished word of M(A)");
    std::string dw_matrix, dw_fmt;
    distword->add_option("--matrix", dw_matrix, "matrix text")->required();
    add_format_flag(distword, dw_fmt);

    // monomial
    auto* monomial = app.add_subcommand("monomial", "expand the monomial m^(A) in the "
                                                    "twisted PBW basis");
    std::string mo_matrix, mo_fmt;
    monomial->add_option("--matrix", mo_matrix, "matrix text")->required();
    add_format_flag(monomial, mo_fmt);

    // mult
    auto* mult = app.add_subcommand("mult", "multiply the semisimple generator u_alpha onto "
                                            "u_C");
    std::string mu_alpha, mu_matrix, mu_fmt;
    bool mu_twisted = false;
    mult->add_option("--alpha", mu_alpha, "semisimple dimension vector c1,c2,...")->required();
    mult->add_option("--matrix", mu_matrix, "matrix text of C")->required();
    mult->add_flag("--twisted", mu_twisted, "twisted product in the utilde basis");
    add_format_flag(mult, mu_fmt);

    // hallpoly
    auto* hallpoly = app.add_subcommand("hallpoly", "Hall polynomial phi^A_{B,C}");
    std::string hp_a, hp_b, hp_c, hp_cache, hp_fmt;
    int hp_n = 0;
    hallpoly->add_option("--n", hp_n, "quiver rank (optional, checked against --A)");
    hallpoly->add_option("--A", hp_a, "matrix text of the extension A")->required();
    hallpoly->add_option("--B", hp_b, "matrix text of the quotient B")->required();
    hallpoly->add_option("--C", hp_c, "matrix text of the submodule C")->required();
    hallpoly->add_option("--cache", hp_cache, "JSON-lines cache file (append-only)")
        ->envname("HALL_CACHE");
    add_format_flag(hallpoly, hp_fmt);

    // canonical
    auto* canonical = app.add_subcommand("canonical", "canonical basis element c_A");
    std::string ca_matrix, ca_route, ca_fmt;
    canonical->add_option("--matrix", ca_matrix, "matrix text")->required();
    canonical->add_option("--route", ca_route, "algorithm: subtract|ic")
        ->default_val("subtract")
        ->check(CLI::IsMember({"subtract", "ic"}));
    add_format_flag(canonical, ca_fmt);

    // slice
    auto* slice_cmd = app.add_subcommand("slice", "canonical basis slice by Loewy length and "
                                                  "periodicity (n = 2)");
    int sl_l = 0, sl_p = 0;
    long long sl_bound = 3;
    std::string sl_fmt;
    slice_cmd->add_option("--l", sl_l, "Loewy length")->required();
    slice_cmd->add_option("--p", sl_p, "periodicity")->required();
    slice_cmd->add_option("--bound", sl_bound, "entry bound for the parameter sweep");
    add_format_flag(slice_cmd, sl_fmt);

    // verify
    auto* verify = app.add_subcommand("verify", "check Hall polynomials against the "
                                                "finite-field oracle or a cache file");
    std::string vf_a, vf_b, vf_c, vf_q = "2,3", vf_cache, vf_fmt;
    int vf_n = 0;
    long long vf_total = 0, vf_budget = 10'000'000;
    verify->add_option("--A", vf_a, "matrix text of the extension A");
    verify->add_option("--B", vf_b, "matrix text of the quotient B");
    verify->add_option("--C", vf_c, "matrix text of the submodule C");
    verify->add_option("--n", vf_n, "quiver rank for a sweep");
    verify->add_option("--total", vf_total, "sweep all triples with total dim <= this");
    verify->add_option("--q", vf_q, "comma-separated prime powers (default 2,3)");
    verify->add_option("--budget", vf_budget, "oracle enumeration budget");
    verify->add_option("--cache", vf_cache, "recompute and compare a cache file");
    add_format_flag(verify, vf_fmt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (dimvec->parsed()) return cmd_dimvec(dv_matrix, parse_format(dv_fmt));
    if (distword->parsed()) return cmd_distword(dw_matrix, parse_format(dw_fmt));
    if (monomial->parsed()) return cmd_monomial(mo_matrix, parse_format(mo_fmt));
    if (mult->parsed()) return cmd_mult(mu_alpha, mu_matrix, mu_twisted, parse_format(mu_fmt));
    if (hallpoly->parsed())
        return cmd_hallpoly(hp_n, hp_a, hp_b, hp_c, hp_cache, parse_format(hp_fmt));
    if (canonical->parsed()) return cmd_canonical(ca_matrix, ca_route, parse_format(ca_fmt));
    if (slice_cmd->parsed()) return cmd_slice(sl_l, sl_p, sl_bound, parse_format(sl_fmt));
    if (verify->parsed()) {
        const bool triple = !vf_a.empty() || !vf_b.empty() || !vf_c.empty();
        const bool sweep = vf_n != 0 || vf_total != 0;
        const bool cache = !vf_cache.empty();
        if (triple + sweep + cache != 1)
            throw ValidationError("verify needs exactly one mode: --A/--B/--C, --n/--total, "
                                  "or --cache");
        const Format fmt = parse_format(vf_fmt);
        if (cache) return verify_cache(vf_cache, fmt);
        const std::vector<long long> qs = parse_q_list(vf_q);
        if (triple) {
            if (vf_a.empty() || vf_b.empty() || vf_c.empty())
                throw ValidationError("verify triple mode needs all of --A, --B, --C");
            return verify_triple(vf_a, vf_b, vf_c, qs, vf_budget, fmt);
        }
        if (vf_n == 0 || vf_total == 0)
            throw ValidationError("verify sweep mode needs both --n and --total");
        return verify_sweep(vf_n, vf_total, qs, vf_budget, fmt);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const hall::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const hall::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hall::HallError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hall/canonical.hpp"
#include "hall/errors.hpp"
#include "hall/hallmult.hpp"
#include "hall/hallpoly.hpp"
#include "hall/laurent.hpp"
#include "hall/matrix.hpp"
#include "hall/words.hpp"

namespace hall {

// insertion-ordered so emitted key order is under our control
using Json = nlohmann::ordered_json;

inline constexpr const char* engine_version = "1.0.0";

namespace detail {

// Coefficients that fit in int64 are emitted as JSON numbers, larger ones as
// decimal strings; the parser accepts both.
inline Json int_to_json(const Int& c) {
    if (c >= std::numeric_limits<std::int64_t>::min() &&
        c <= std::numeric_limits<std::int64_t>::max())
        return Json(static_cast<std::int64_t>(c));
    return Json(c.str());
}

inline Int int_from_json(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw ValidationError("json coefficient must be an integer or a decimal string, got " +
                          j.dump());
}

inline long exponent_from_key(const std::string& key) {
    std::size_t pos = 0;
    const long long e = parse_ll(key, pos, "exponent");
    if (pos != key.size())
        throw ValidationError("json exponent key '" + key + "' has trailing characters");
    return static_cast<long>(e);
}

template <typename Iter>
Json coeff_map_to_json(Iter begin, Iter end) {
    Json j = Json::object();
    for (auto it = begin; it != end; ++it) j[std::to_string(it->first)] = int_to_json(it->second);
    return j;
}

inline CoeffMap coeff_map_from_json(const Json& j) {
    if (!j.is_object()) throw ValidationError("json polynomial must be an object, got " + j.dump());
    CoeffMap m;
    for (const auto& [key, val] : j.items()) {
        const long e = exponent_from_key(key);
        const Int c = int_from_json(val);
        if (c == 0) continue;
        if (!m.emplace(e, c).second)
            throw ValidationError("json polynomial repeats exponent " + key);
    }
    return m;
}

} // namespace detail

// ---------------------------------------------------------------------------
// JSON: polynomials.  LaurentPoly keys ascend ({"-2":1,"0":1}), QPoly keys
// descend ({"1":1,"0":1}); parsing accepts any order.
// ---------------------------------------------------------------------------

inline Json to_json(const LaurentPoly& p) {
    return detail::coeff_map_to_json(p.c.begin(), p.c.end());
}

inline Json to_json(const QPoly& p) { return detail::coeff_map_to_json(p.c.rbegin(), p.c.rend()); }

inline LaurentPoly laurent_from_json(const Json& j) {
    LaurentPoly p;
    p.c = detail::coeff_map_from_json(j);
    return p;
}

inline QPoly qpoly_from_json(const Json& j) {
    detail::CoeffMap m = detail::coeff_map_from_json(j);
    if (!m.empty() && m.begin()->first < 0)
        throw ValidationError("json polynomial in q has a negative exponent");
    return QPoly::from_map(std::move(m));
}

// ---------------------------------------------------------------------------
// JSON: Hall vectors, terms sorted by matrix text.
// ---------------------------------------------------------------------------

namespace detail {

template <typename Coeff>
Json hv_to_json(const HallVectorT<Coeff>& x, const char* basis) {
    std::vector<std::pair<std::string, const Coeff*>> rows;
    rows.reserve(x.terms.size());
    for (const auto& [A, c] : x.terms) rows.emplace_back(format_matrix(A), &c);
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Json terms = Json::array();
    for (const auto& [text, c] : rows)
        terms.push_back(Json{{"matrix", text}, {"coeff", to_json(*c)}});
    return Json{{"basis", basis}, {"n", x.n}, {"terms", std::move(terms)}};
}

} // namespace detail

inline Json to_json(const HallVectorQ& x) { return detail::hv_to_json(x, "u"); }
inline Json to_json(const HallVectorV& x) { return detail::hv_to_json(x, "utilde"); }

namespace detail {

template <typename Coeff, typename FromJson>
HallVectorT<Coeff> hv_from_json(const Json& j, const char* basis, FromJson&& coeff_from_json) {
    if (!j.is_object() || !j.contains("basis") || !j.contains("n") || !j.contains("terms"))
        throw ValidationError("json hall vector needs basis, n, and terms fields");
    if (j.at("basis").get<std::string>() != basis)
        throw ValidationError("json hall vector basis is '" + j.at("basis").get<std::string>() +
                              "', expected '" + basis + "'");
    HallVectorT<Coeff> x(j.at("n").get<int>());
    for (const auto& term : j.at("terms")) {
        const CyclicMatrix A = parse_matrix(term.at("matrix").get<std::string>());
        x.add_term(A, coeff_from_json(term.at("coeff")));
    }
    return x;
}

} // namespace detail

inline HallVectorQ hvq_from_json(const Json& j) {
    return detail::hv_from_json<QPoly>(j, "u", qpoly_from_json);
}

inline HallVectorV hvv_from_json(const Json& j) {
    return detail::hv_from_json<LaurentPoly>(j, "utilde", laurent_from_json);
}

// ---------------------------------------------------------------------------
// JSON: canonical elements.  pbw sorted by matrix text, monomials in their
// stored order (leading pair first).
// ---------------------------------------------------------------------------

inline Json to_json(const CanonicalElement& el) {
    std::vector<std::pair<std::string, const LaurentPoly*>> rows;
    rows.reserve(el.pbw.size());
    for (const auto& [B, p] : el.pbw) rows.emplace_back(format_matrix(B), &p);
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Json pbw = Json::array();
    for (const auto& [text, p] : rows) pbw.push_back(Json{{"B", text}, {"p", to_json(*p)}});
    Json mons = Json::array();
    for (const auto& [B, h] : el.monomials)
        mons.push_back(Json{{"B", format_matrix(B)}, {"h", to_json(h)}});
    return Json{{"A", format_matrix(el.A)},
                {"pbw", std::move(pbw)},
                {"monomials", std::move(mons)},
                {"tight", el.tight()}};
}

inline CanonicalElement canonical_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("A") || !j.contains("pbw") || !j.contains("monomials"))
        throw ValidationError("json canonical element needs A, pbw, and monomials fields");
    CanonicalElement el;
    el.A = parse_matrix(j.at("A").get<std::string>());
    for (const auto& row : j.at("pbw")) {
        const CyclicMatrix B = parse_matrix(row.at("B").get<std::string>());
        const LaurentPoly p = laurent_from_json(row.at("p"));
        if (p.is_zero()) continue;
        if (!el.pbw.emplace(B, p).second)
            throw ValidationError("json canonical element repeats pbw matrix " +
                                  format_matrix(B));
    }
    for (const auto& row : j.at("monomials"))
        el.monomials.emplace_back(parse_matrix(row.at("B").get<std::string>()),
                                  laurent_from_json(row.at("h")));
    if (j.contains("tight") && j.at("tight").get<bool>() != el.tight())
        throw ValidationError("json canonical element tight flag contradicts its monomials");
    return el;
}

// ---------------------------------------------------------------------------
// LaTeX emitters.  Terms follow the same order the plain strings use
// (ascending exponents); matrices appear verbatim in \text subscripts.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string map_to_latex(const CoeffMap& m, const char* var) {
    if (m.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : m) {
        Int a = c;
        if (first) {
            if (a < 0) {
                out << "-";
                a = -a;
            }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        if (e == 0) {
            out << a;
        } else {
            if (a != 1) out << a;
            out << var;
            if (e != 1) out << "^{" << e << "}";
        }
    }
    return out.str();
}

inline std::string coeff_factor_latex(const CoeffMap& m, const char* var) {
    if (m.size() == 1 && m.begin()->first == 0 && m.begin()->second == 1) return "";
    const std::string s = map_to_latex(m, var);
    if (m.size() == 1 && m.begin()->second > 0) return s + " ";
    return "(" + s + ") ";
}

} // namespace detail

inline std::string to_latex(const LaurentPoly& p) { return detail::map_to_latex(p.c, "v"); }
inline std::string to_latex(const QPoly& p) { return detail::map_to_latex(p.c, "q"); }

inline std::string to_latex(const DimVector& d) {
    std::ostringstream out;
    out << "(";
    for (int i = 1; i <= d.n; ++i) out << (i > 1 ? "," : "") << d.at(i);
    out << ")";
    return out.str();
}

inline std::string to_latex(const Word& w) {
    if (w.letters.empty()) return "1";
    std::ostringstream out;
    bool first = true;
    for (const auto& [b, e] : w.letters) {
        if (!first) out << " ";
        first = false;
        if (b.is_simple()) {
            out << "E_{" << b.vertex << "}^{(" << e << ")}";
        } else {
            out << "\\tilde{u}_{" << to_latex(*b.sincere) << "}";
        }
    }
    return out.str();
}

namespace detail {

template <typename Coeff>
std::string hv_to_latex(const HallVectorT<Coeff>& x, const char* symbol, const char* var) {
    if (x.terms.empty()) return "0";
    std::vector<std::pair<std::string, const Coeff*>> rows;
    rows.reserve(x.terms.size());
    for (const auto& [A, c] : x.terms) rows.emplace_back(format_matrix(A), &c);
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::ostringstream out;
    bool first = true;
    for (const auto& [text, c] : rows) {
        if (!first) out << " + ";
        first = false;
        out << coeff_factor_latex(c->c, var) << symbol << "_{\\text{" << text << "}}";
    }
    return out.str();
}

} // namespace detail

inline std::string to_latex(const HallVectorQ& x) { return detail::hv_to_latex(x, "u", "q"); }
inline std::string to_latex(const HallVectorV& x) {
    return detail::hv_to_latex(x, "\\tilde{u}", "v");
}

inline std::string to_latex(const CanonicalElement& el) {
    HallVectorV pbw(el.A.n);
    for (const auto& [B, p] : el.pbw) pbw.add_term(B, p);
    std::ostringstream out;
    out << "c_{\\text{" << format_matrix(el.A) << "}} = " << to_latex(pbw) << " = ";
    bool first = true;
    for (const auto& [B, h] : el.monomials) {
        if (!first) out << " - ";
        const std::string factor = first ? "" : detail::coeff_factor_latex(h.c, "v");
        first = false;
        out << factor << "m^{(\\text{" << format_matrix(B) << "})}";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Plain emitters for Hall vectors and canonical elements (polynomials and
// words already print themselves).
// ---------------------------------------------------------------------------

namespace detail {

template <typename Coeff>
std::string hv_to_plain(const HallVectorT<Coeff>& x, const char* symbol) {
    if (x.terms.empty()) return "0";
    std::vector<std::pair<std::string, const Coeff*>> rows;
    rows.reserve(x.terms.size());
    for (const auto& [A, c] : x.terms) rows.emplace_back(format_matrix(A), &c);
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::ostringstream out;
    bool first = true;
    for (const auto& [text, c] : rows) {
        if (!first) out << " + ";
        first = false;
        const std::string s = c->to_string();
        if (s == "1")
            out << symbol << "[" << text << "]";
        else
            out << "(" << s << ") " << symbol << "[" << text << "]";
    }
    return out.str();
}

} // namespace detail

inline std::string to_plain(const HallVectorQ& x) { return detail::hv_to_plain(x, "u"); }
inline std::string to_plain(const HallVectorV& x) { return detail::hv_to_plain(x, "u~"); }

inline std::string to_plain(const CanonicalElement& el) {
    std::ostringstream out;
    out << "A = " << format_matrix(el.A) << "\n";
    HallVectorV pbw(el.A.n);
    for (const auto& [B, p] : el.pbw) pbw.add_term(B, p);
    out << "pbw: " << to_plain(pbw) << "\n";
    out << "monomials: ";
    bool first = true;
    for (const auto& [B, h] : el.monomials) {
        if (!first) out << " - ";
        if (first || h.is_one())
            out << "m[" << format_matrix(B) << "]";
        else
            out << "(" << h.to_string() << ") m[" << format_matrix(B) << "]";
        first = false;
    }
    out << "\n";
    out << "tight: " << (el.tight() ? "true" : "false");
    return out.str();
}

// ---------------------------------------------------------------------------
// Hall polynomial cache persistence: append-only JSON lines, one record per
// line.  Records from other engine versions are skipped on load.
// ---------------------------------------------------------------------------

struct CacheRecord {
    int n = 0;
    std::string A, B, C; // matrix text
    QPoly value;
    std::string engine;

    friend bool operator==(const CacheRecord& x, const CacheRecord& y) {
        return x.n == y.n && x.A == y.A && x.B == y.B && x.C == y.C && x.value == y.value &&
               x.engine == y.engine;
    }
};

inline Json to_json(const CacheRecord& r) {
    return Json{{"n", r.n},         {"A", r.A},           {"B", r.B},
                {"C", r.C},         {"value", to_json(r.value)}, {"engine", r.engine}};
}

inline CacheRecord cache_record_from_json(const Json& j) {
    CacheRecord r;
    r.n = j.at("n").get<int>();
    r.A = j.at("A").get<std::string>();
    r.B = j.at("B").get<std::string>();
    r.C = j.at("C").get<std::string>();
    r.value = qpoly_from_json(j.at("value"));
    r.engine = j.at("engine").get<std::string>();
    return r;
}

inline std::vector<CacheRecord> load_cache_file(const std::string& path) {
    std::vector<CacheRecord> out;
    std::ifstream in(path);
    if (!in.good()) return out; // absent file: empty cache
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        Json j;
        try {
            j = Json::parse(line);
            out.push_back(cache_record_from_json(j));
        } catch (const Json::exception& e) {
            throw ValidationError("cache file " + path + " line " + std::to_string(lineno) +
                                  ": " + e.what());
        }
    }
    return out;
}

inline void append_cache_file(const std::string& path, const std::vector<CacheRecord>& records) {
    if (records.empty()) return;
    std::ofstream out(path, std::ios::app);
    if (!out.good()) throw ValidationError("cannot open cache file " + path + " for append");
    for (const auto& r : records) out << to_json(r).dump() << "\n";
}

// Seed a HallPolyCache from loaded records, skipping versions other than the
// current engine and any malformed matrix text.
inline std::size_t seed_hall_cache(const std::vector<CacheRecord>& records, int n,
                                   HallPolyCache& cache) {
    std::size_t used = 0;
    for (const auto& r : records) {
        if (r.engine != engine_version || r.n != n) continue;
        const CyclicMatrix A = parse_matrix(r.A);
        const CyclicMatrix B = parse_matrix(r.B);
        const CyclicMatrix C = parse_matrix(r.C);
        if (A.n != n || B.n != n || C.n != n) continue;
        cache.put({B, C, A}, r.value);
        ++used;
    }
    return used;
}

// Collect the entries of a HallPolyCache as records, sorted by key, skipping
// those already present in `known` (so repeated runs only append new lines).
inline std::vector<CacheRecord> cache_to_records(const HallPolyCache& cache, int n,
                                                 const std::vector<CacheRecord>& known) {
    std::set<std::tuple<std::string, std::string, std::string>> seen;
    for (const auto& r : known)
        if (r.engine == engine_version && r.n == n) seen.insert({r.A, r.B, r.C});
    std::vector<CacheRecord> out;
    cache.for_each([&](const HallPolyCache::Key& k, const QPoly& v) {
        const auto& [B, C, A] = k;
        if (A.n != n) return;
        CacheRecord r;
        r.n = n;
        r.A = format_matrix(A);
        r.B = format_matrix(B);
        r.C = format_matrix(C);
        r.value = v;
        r.engine = engine_version;
        if (seen.count({r.A, r.B, r.C})) return;
        out.push_back(std::move(r));
    });
    return out;
}

} // namespace hall

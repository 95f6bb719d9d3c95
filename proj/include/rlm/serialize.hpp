#pragma once

// JSON encodings for coefficients, index sets, wedge vectors, lattice bases,
// chart points and condition reports.

#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "chart.hpp"
#include "errors.hpp"
#include "lattice.hpp"

namespace rlm {

using Json = nlohmann::ordered_json;

inline Json scalar_json(const Fp& a) { return a.signed_value(); }
inline Json scalar_json(const Rational& a) {
    if (boost::multiprecision::denominator(a.value()) == 1) {
        auto num = boost::multiprecision::numerator(a.value());
        if (num >= std::numeric_limits<std::int64_t>::min() && num <= std::numeric_limits<std::int64_t>::max())
            return static_cast<std::int64_t>(num);
    }
    return a.to_string();
}

template <FieldElement K>
Json to_json(const PiLaurent<K>& a) {
    Json j = Json::array();
    for (auto& [e, c] : a.terms()) j.push_back(Json::array({e, scalar_json(c)}));
    return j;
}

inline Json to_json(const IndexSet& S) { return S.elements(); }

template <FieldElement K>
Json ring_json(const K& a) {
    return scalar_json(a);
}
template <FieldElement K>
Json ring_json(const Dual<K>& a) {
    return Json::array({scalar_json(a.re()), scalar_json(a.eps())});
}
template <FieldElement K>
Json ring_json(const MPoly<K>& a) {
    Json j = Json::array();
    for (auto& [mono, c] : a.terms()) j.push_back({{"coeff", scalar_json(c)}, {"exponents", mono}});
    return j;
}
template <FieldElement K>
Json ring_json(const PiLaurent<K>& a) {
    return to_json(a);
}

template <class R>
Json to_json(const WedgeVector<R>& w) {
    Json j;
    j["basis"] = to_string(w.tag);
    j["n"] = w.n;
    j["degree"] = w.degree;
    Json terms = Json::array();
    for (auto& [S, c] : w.terms) terms.push_back({{"indexSet", to_json(S)}, {"coefficient", ring_json(c)}});
    j["terms"] = terms;
    return j;
}

template <FieldElement K>
Json residue_json(const ResidueVector<K>& v) {
    Json terms = Json::array();
    for (auto& [S, c] : v) terms.push_back({{"indexSet", to_json(S)}, {"coefficient", scalar_json(c)}});
    return terms;
}

template <BaseField F>
Json basis_json(const F& k, const LatticeData<typename F::element_type>& d) {
    Json j;
    j["kind"] = d.spec.to_string();
    j["n"] = d.spec.n;
    j["p"] = k.characteristic();
    j["precision"] = d.basis.precision;
    j["degree"] = d.basis.degree;
    j["generators"] = d.generator_count;
    Json cols = Json::array();
    for (auto& c : d.basis.columns) {
        Json terms = Json::array();
        for (auto& [S, x] : c.terms) terms.push_back({{"indexSet", to_json(S)}, {"coefficient", to_json(x)}});
        cols.push_back({{"pivot", to_json(c.pivot)}, {"pivotValuation", c.pivot_valuation}, {"terms", terms}});
    }
    j["columns"] = cols;
    Json res = Json::array();
    for (auto& v : d.residue) res.push_back(residue_json(v));
    j["residue"] = res;
    return j;
}

inline Json report_to_json(const ConditionReport& rep) {
    Json j = Json::object();
    for (auto& [name, v] : rep.entries) {
        Json e;
        e["verdict"] = to_string(v.status);
        if (!v.witness.empty()) e["witness"] = v.witness;
        j[name] = e;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Chart point parsing

template <BaseField F>
using AnyChartPoint = std::variant<ChartPoint<FieldRing<F>>, ChartPoint<DualRing<F>>, ChartPoint<PolyRing<F>>>;

namespace detail {

inline const Json& field_of(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) throw SchemaError("missing field '" + path + key + "'");
    return j.at(key);
}

inline std::int64_t int_of(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaError("field '" + path + "' must be an integer");
    return j.get<std::int64_t>();
}

template <BaseField F>
typename F::element_type scalar_of(const F& k, const Json& j, const std::string& path) {
    return k(int_of(j, path));
}

template <BaseField F>
Dual<typename F::element_type> dual_of(const F& k, const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) throw SchemaError("field '" + path + "' must be a pair [a, b]");
    return Dual<typename F::element_type>(scalar_of(k, j[0], path + "[0]"), scalar_of(k, j[1], path + "[1]"));
}

template <BaseField F>
MPoly<typename F::element_type> poly_of(const F& k, const Json& j, int vars, const std::string& path) {
    if (!j.is_array()) throw SchemaError("field '" + path + "' must be a list of {coeff, exponents}");
    MPoly<typename F::element_type> p;
    for (std::size_t t = 0; t < j.size(); ++t) {
        auto tp = path + "[" + std::to_string(t) + "]";
        auto c = scalar_of(k, field_of(j[t], "coeff", tp + "."), tp + ".coeff");
        auto& ex = field_of(j[t], "exponents", tp + ".");
        if (!ex.is_array() || static_cast<int>(ex.size()) > vars)
            throw SchemaError("field '" + tp + ".exponents' must be a list of at most " + std::to_string(vars) + " integers");
        Monomial mono;
        for (std::size_t v = 0; v < ex.size(); ++v) {
            auto e = int_of(ex[v], tp + ".exponents[" + std::to_string(v) + "]");
            if (e < 0) throw SchemaError("field '" + tp + ".exponents' has a negative exponent");
            mono.push_back(static_cast<int>(e));
        }
        p.add_term(mono, c);
    }
    return p;
}

/// Entries of X as a flat row-major list, accepting either n² entries or n rows of n.
inline std::vector<const Json*> matrix_entries(const Json& X, int n) {
    if (!X.is_array()) throw SchemaError("field 'X' must be a list");
    std::vector<const Json*> out;
    bool nested = X.size() == static_cast<std::size_t>(n) && X[0].is_array() && X[0].size() == static_cast<std::size_t>(n) &&
                  (X[0].empty() || X[0][0].is_array() || X[0][0].is_number() || X[0][0].is_object());
    if (X.size() == static_cast<std::size_t>(n) * n) nested = false;
    if (nested) {
        for (int r = 0; r < n; ++r) {
            if (!X[r].is_array() || X[r].size() != static_cast<std::size_t>(n))
                throw SchemaError("field 'X[" + std::to_string(r) + "]' must be a row of " + std::to_string(n) + " entries");
            for (int c = 0; c < n; ++c) out.push_back(&X[r][c]);
        }
    } else {
        if (X.size() != static_cast<std::size_t>(n) * n)
            throw SchemaError("field 'X' must hold n*n = " + std::to_string(n * n) + " entries");
        for (auto& e : X) out.push_back(&e);
    }
    return out;
}

template <class Ring, class Parse>
ChartPoint<Ring> fill_point(Ring ring, int n, TypePair sig, const Json& X, Parse&& parse) {
    ChartPoint<Ring> pt(std::move(ring), n, sig);
    auto entries = matrix_entries(X, n);
    for (int t = 0; t < n * n; ++t) {
        int r = t / n, c = t % n;
        pt.X(r, c) = parse(*entries[t], "X[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    return pt;
}

}  // namespace detail

/// Reads the header fields n, p, signature without building the point.
struct ChartHeader {
    int n = 0;
    std::uint32_t p = 0;
    TypePair signature{};
    RingKind ring = RingKind::field;
    std::vector<std::string> variables;
};

inline ChartHeader parse_chart_header(const Json& j) {
    using detail::field_of;
    using detail::int_of;
    ChartHeader h;
    if (!j.is_object()) throw SchemaError("chart point must be a JSON object");
    auto n = int_of(field_of(j, "n", ""), "n");
    if (n < 3 || n % 2 == 0 || n > kMaxRank) throw SchemaError("field 'n' must be odd with 3 <= n <= " + std::to_string(kMaxRank));
    h.n = static_cast<int>(n);
    auto p = int_of(field_of(j, "p", ""), "p");
    if (p <= 2 || p >= (std::int64_t{1} << 31) || !is_odd_prime(static_cast<std::uint64_t>(p))) throw SchemaError("field 'p' must be an odd prime below 2^31");
    h.p = static_cast<std::uint32_t>(p);
    auto& sig = field_of(j, "signature", "");
    if (!sig.is_array() || sig.size() != 2) throw SchemaError("field 'signature' must be [r, s]");
    h.signature = {static_cast<int>(int_of(sig[0], "signature[0]")), static_cast<int>(int_of(sig[1], "signature[1]"))};
    if (h.signature.r < 0 || h.signature.s < 0 || h.signature.r + h.signature.s != h.n)
        throw SchemaError("field 'signature' must satisfy r + s = n with r, s >= 0");
    auto& ring = field_of(j, "ring", "");
    auto& kind = field_of(ring, "kind", "ring.");
    if (!kind.is_string()) throw SchemaError("field 'ring.kind' must be a string");
    auto ks = kind.get<std::string>();
    if (ks == "field")
        h.ring = RingKind::field;
    else if (ks == "dual")
        h.ring = RingKind::dual;
    else if (ks == "poly")
        h.ring = RingKind::poly;
    else
        throw SchemaError("field 'ring.kind' must be one of field, dual, poly");
    if (h.ring == RingKind::poly) {
        auto& vars = field_of(ring, "variables", "ring.");
        if (!vars.is_array() || vars.empty()) throw SchemaError("field 'ring.variables' must be a non-empty list of names");
        for (auto& v : vars) {
            if (!v.is_string()) throw SchemaError("field 'ring.variables' must hold strings");
            h.variables.push_back(v.get<std::string>());
        }
    }
    return h;
}

template <BaseField F>
AnyChartPoint<F> parse_chart_point(const F& k, const Json& j) {
    auto h = parse_chart_header(j);
    if (k.characteristic() != h.p) throw SchemaError("field 'p' does not match the requested field");
    auto& X = detail::field_of(j, "X", "");
    switch (h.ring) {
        case RingKind::field:
            return detail::fill_point(FieldRing<F>{k}, h.n, h.signature, X,
                                      [&](const Json& e, const std::string& path) { return detail::scalar_of(k, e, path); });
        case RingKind::dual:
            return detail::fill_point(DualRing<F>{k}, h.n, h.signature, X,
                                      [&](const Json& e, const std::string& path) { return detail::dual_of(k, e, path); });
        case RingKind::poly: {
            int vars = static_cast<int>(h.variables.size());
            return detail::fill_point(PolyRing<F>{k, h.variables}, h.n, h.signature, X, [&](const Json& e, const std::string& path) {
                return detail::poly_of(k, e, vars, path);
            });
        }
    }
    throw SchemaError("field 'ring.kind' is not recognised");
}

template <class Ring>
Json chart_point_json(const ChartPoint<Ring>& pt) {
    Json j;
    j["n"] = pt.n;
    j["p"] = pt.ring.k.characteristic();
    j["signature"] = {pt.signature.r, pt.signature.s};
    Json ring;
    ring["kind"] = to_string(Ring::kind);
    if constexpr (Ring::kind == RingKind::poly) ring["variables"] = pt.ring.variables;
    j["ring"] = ring;
    Json X = Json::array();
    for (int r = 0; r < pt.n; ++r) {
        Json row = Json::array();
        for (int c = 0; c < pt.n; ++c) row.push_back(ring_json(pt.X(r, c)));
        X.push_back(row);
    }
    j["X"] = X;
    return j;
}

}  // namespace rlm

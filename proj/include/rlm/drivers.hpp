#pragma once

#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "chart.hpp"
#include "closed_forms.hpp"
#include "lattice.hpp"
#include "serialize.hpp"

namespace rlm {

enum class Outcome { pass, fail, inconclusive };

inline std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::pass: return "pass";
        case Outcome::fail: return "fail";
        case Outcome::inconclusive: return "inconclusive";
    }
    return "?";
}

struct Certificate {
    std::string result;
    nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
    Outcome verdict = Outcome::inconclusive;
    nlohmann::ordered_json evidence = nlohmann::ordered_json::object();

    bool passed() const { return verdict == Outcome::pass; }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["result"] = result;
        j["parameters"] = parameters;
        j["verdict"] = to_string(verdict);
        j["evidence"] = evidence;
        return j;
    }
};

/// Thrown when a driver's declared precondition fails (usage error).
class DriverPrecondition : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

template <BaseField F>
Certificate make_certificate(const std::string& id, const F& k, int n, int precision) {
    Certificate c;
    c.result = id;
    c.parameters["n"] = n;
    c.parameters["p"] = k.characteristic();
    c.parameters["precision"] = precision;
    return c;
}

inline void require(bool cond, const std::string& what) {
    if (!cond) throw DriverPrecondition(what);
}

inline void require_odd_n(int n, int lo, int hi) {
    require(n % 2 == 1 && n >= lo && n <= hi,
            "n must be odd with " + std::to_string(lo) + " <= n <= " + std::to_string(hi) + ", got " + std::to_string(n));
}

/// Rank of a list of dense rows over k.
template <FieldElement K>
int dense_rank(std::vector<std::vector<K>> rows) {
    int rank = 0;
    if (rows.empty()) return 0;
    int cols = static_cast<int>(rows[0].size());
    for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        int piv = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (!rows[r][c].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        K inv = rows[rank][c].inv();
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || rows[r][c].is_zero()) continue;
            K f = rows[r][c] * inv;
            for (int cc = c; cc < cols; ++cc) rows[r][cc] -= f * rows[rank][cc];
        }
        ++rank;
    }
    return rank;
}

}  // namespace detail

/// (-1)^{ΣS+⌈n/2⌉} against the parity of the explicit shuffle, all n-subsets, n = 2..n_max.
inline Certificate verify_sign_lemma(int n_max) {
    detail::require(n_max >= 2 && n_max <= 6, "sign lemma is exhaustive for 2 <= n_max <= 6");
    Certificate c;
    c.result = "sign-lemma";
    c.parameters["n_max"] = n_max;
    bool ok = true;
    auto per_n = nlohmann::ordered_json::array();
    for (int n = 2; n <= n_max; ++n) {
        int count = 0, mismatches = 0, remark_mismatches = 0;
        for (auto& S : enumerate_subsets(n, n)) {
            ++count;
            if (sigma_sign_bruteforce(S) != sigma_sign_closed(S)) ++mismatches;
            if (n % 2 == 1 && S.type() == TypePair{n - 1, 1}) {
                auto [i, j] = decode_type_n1(S);
                int expect = (i + j + 1) % 2 == 0 ? 1 : -1;
                if (sigma_sign_bruteforce(S) != expect) ++remark_mismatches;
            }
        }
        ok = ok && mismatches == 0 && remark_mismatches == 0;
        per_n.push_back({{"n", n}, {"subsets", count}, {"mismatches", mismatches}, {"type_n1_mismatches", remark_mismatches}});
    }
    IndexSet spot(3, {4, 5, 6});
    c.evidence["per_n"] = per_n;
    c.evidence["spot_check"] = {{"set", spot.elements()},
                                {"bruteforce", sigma_sign_bruteforce(spot)},
                                {"closed", sigma_sign_closed(spot)}};
    ok = ok && sigma_sign_bruteforce(spot) == -1 && sigma_sign_closed(spot) == -1;
    c.verdict = ok ? Outcome::pass : Outcome::fail;
    return c;
}

/// Engine worst terms against the six-case and nine-case closed forms.
template <BaseField F>
Certificate verify_worst_term_tables(const F& k, int n, int precision = kDefaultPrecision) {
    detail::require_odd_n(n, 3, 9);
    auto c = detail::make_certificate("worst-terms", k, n, precision);
    WedgeFactory<F> fac(k, n);
    int m = n / 2;
    int sets = 0, pairs = 0, six_bad = 0, nine_bad = 0, predicate_bad = 0, weight_bad = 0;
    std::vector<int> case_hits(10, 0);
    int case4_valuation = kInfOrd;
    auto failures = nlohmann::ordered_json::array();
    for (auto& S : enumerate_type(n, n - 1, 1)) {
        ++sets;
        auto gs = fac.g_e(S);
        auto [wt, v] = worst_terms(gs);
        if (!(wt == closed_wt_g(k, S))) {
            ++six_bad;
            if (failures.size() < 10) failures.push_back({{"table", "six"}, {"set", S.elements()}});
        }
        auto w = S.weight();
        for (auto& [T, x] : gs.terms)
            if (T.weight() != w) ++weight_bad;
        if (!precedes_perp(S)) continue;
        ++pairs;
        auto [i, j] = decode_type_n1(S);
        auto preds = nine_case_predicates(n, i, j);
        int fired = 0;
        for (bool b : preds) fired += b;
        if (fired != 1) ++predicate_bad;
        int cs = nine_case(n, i, j);
        if (cs >= 1) ++case_hits[cs];
        if (cs >= 1 && !preds[cs - 1]) ++predicate_bad;
        auto diff = signed_combination(gs, fac.g_e(S.perp()), -sigma_sign_closed(S));
        auto [wt2, v2] = worst_terms(diff);
        if (cs == 4) case4_valuation = std::min(case4_valuation, v2);
        if (cs < 1 || !(wt2 == closed_wt_pair(k, S))) {
            ++nine_bad;
            if (failures.size() < 10) failures.push_back({{"table", "nine"}, {"set", S.elements()}, {"case", cs}});
        }
    }
    c.evidence["type_n1_sets"] = sets;
    c.evidence["ordered_pairs"] = pairs;
    c.evidence["six_case_mismatches"] = six_bad;
    c.evidence["nine_case_mismatches"] = nine_bad;
    c.evidence["case_predicate_violations"] = predicate_bad;
    c.evidence["weight_violations"] = weight_bad;
    c.evidence["case_counts"] = std::vector<int>(case_hits.begin() + 1, case_hits.end());
    if (case4_valuation != kInfOrd) c.evidence["case4_worst_valuation"] = case4_valuation;
    c.evidence["failures"] = failures;
    bool ok = six_bad == 0 && nine_bad == 0 && predicate_bad == 0 && weight_bad == 0;
    if (m >= 1) ok = ok && case4_valuation == -m;
    c.verdict = ok ? Outcome::pass : Outcome::fail;
    return c;
}

/// Scaled generators π^{c_S}(g_S - sgn g_{S⊥}) of W(Λ_m)^{n-1,1}_{-1}, S ≼ S⊥.
template <BaseField F>
std::vector<std::map<IndexSet, PiLaurent<typename F::element_type>>> closed_form_generators(const WedgeFactory<F>& fac) {
    int n = fac.rank();
    std::vector<std::map<IndexSet, PiLaurent<typename F::element_type>>> out;
    for (auto& S : enumerate_type(n, n - 1, 1)) {
        if (!precedes_perp(S)) continue;
        auto [i, j] = decode_type_n1(S);
        int cs = scaled_generator_exponent(n, nine_case(n, i, j));
        auto w = signed_combination(fac.g_e(S), fac.g_e(S.perp()), -sigma_sign_closed(S));
        std::map<IndexSet, PiLaurent<typename F::element_type>> col;
        for (auto& [T, x] : w.terms) col.emplace(T, x.shifted(cs));
        out.push_back(std::move(col));
    }
    return out;
}

/// Two-sided lattice equality with the scaled generators and residue-span
/// equality with the six families.
template <BaseField F>
Certificate verify_refined_basis(const F& k, int n, int precision = kDefaultPrecision) {
    detail::require_odd_n(n, 3, 7);
    auto c = detail::make_certificate("refined-basis", k, n, precision);
    WedgeFactory<F> fac(k, n);
    auto d = compute_lattice(fac, LatticeSpec::refined(n, -1, n - 1, 1), precision);
    auto cf = closed_form_generators(fac);
    std::vector<std::map<IndexSet, PiLaurent<typename F::element_type>>> dvr;
    for (auto& col : d.basis.columns) dvr.push_back(col.terms);
    bool dvr_in_cf = lattice_contains_all(cf, dvr, precision);
    bool cf_in_dvr = lattice_contains_all(dvr, cf, precision);

    auto fams = corollary_families(k, n);
    std::vector<ResidueVector<typename F::element_type>> famv;
    for (auto& [mem, v] : fams) famv.push_back(v);
    auto e_res = echelon(d.residue), e_fam = echelon(famv);
    int fam_missing = 0, res_missing = 0;
    for (auto& v : famv) fam_missing += !e_res.contains(v);
    for (auto& v : d.residue) res_missing += !e_fam.contains(v);

    std::vector<int> fam_counts(6, 0);
    for (auto& [mem, v] : fams) ++fam_counts[mem.family - 1];
    c.evidence["generators"] = d.generator_count;
    c.evidence["basis_columns"] = d.basis.columns.size();
    c.evidence["dvr_in_closed_form_lattice"] = dvr_in_cf;
    c.evidence["closed_form_in_dvr_lattice"] = cf_in_dvr;
    c.evidence["residue_dimension"] = e_res.rank();
    c.evidence["family_elements"] = fams.size();
    c.evidence["family_counts"] = fam_counts;
    c.evidence["family_rank"] = e_fam.rank();
    c.evidence["families_outside_residue_span"] = fam_missing;
    c.evidence["residue_outside_family_span"] = res_missing;
    bool ok = dvr_in_cf && cf_in_dvr && fam_missing == 0 && res_missing == 0 &&
              e_res.rank() == static_cast<int>(fams.size()) && e_fam.rank() == static_cast<int>(fams.size()) &&
              static_cast<int>(cf.size()) == d.generator_count;
    c.verdict = ok ? Outcome::pass : Outcome::fail;
    return c;
}

/// X4-detecting coordinate vanishes on both spin residue bases; listed elements are members.
template <BaseField F>
Certificate verify_spin_structure(const F& k, int n, int precision = kDefaultPrecision) {
    detail::require_odd_n(n, 3, 7);
    auto c = detail::make_certificate("spin-structure", k, n, precision);
    WedgeFactory<F> fac(k, n);
    auto x4 = x4_detecting_set(n);
    auto listed = n_lemma_elements(k, n);
    bool ok = true;
    for (int eps : {1, -1}) {
        auto d = compute_lattice(fac, LatticeSpec::spin(n, eps), precision);
        int x4_hits = 0;
        for (auto& v : d.residue) x4_hits += v.count(x4) ? 1 : 0;
        // the coordinate functional is among the annihilators iff it kills the span
        bool functional_present = false;
        for (auto& f : d.ann.functionals)
            if (f.coord == x4 && f.pivot_terms.empty()) functional_present = true;
        auto ech = echelon(d.residue);
        int missing = 0;
        for (auto& v : listed) missing += !ech.contains(v);
        nlohmann::ordered_json e;
        e["generators"] = d.generator_count;
        e["residue_dimension"] = ech.rank();
        e["x4_coordinate_support_hits"] = x4_hits;
        e["x4_functional_in_annihilator"] = functional_present;
        e["listed_elements"] = listed.size();
        e["listed_missing"] = missing;
        c.evidence[eps > 0 ? "eps=+1" : "eps=-1"] = e;
        ok = ok && x4_hits == 0 && functional_present && missing == 0;
    }
    c.evidence["x4_coordinate"] = x4.elements();
    c.verdict = ok ? Outcome::pass : Outcome::fail;
    return c;
}

/// X1 = diag(x,-x,0,...,0,-x,x), X3 = 0 over k[x]/(x²).
template <BaseField F>
ChartPoint<DualRing<F>> counterexample_point(const F& k, int n) {
    DualRing<F> R{k};
    ChartPoint<DualRing<F>> pt(R, n, {n - 1, 1});
    auto x = R.x();
    pt.X(0, 0) = x;
    pt.X(1, 1) = -x;
    pt.X(n - 3, n - 3) = -x;
    pt.X(n - 2, n - 2) = x;
    return pt;
}

template <BaseField F>
Certificate run_counterexample(const F& k, int n, int precision = kDefaultPrecision) {
    detail::require_odd_n(n, 5, 9);
    auto c = detail::make_certificate("counterexample", k, n, precision);
    LatticeCache<F> cache(k, n, precision);
    auto pt = counterexample_point(k, n);
    ConditionReport rep;
    rep.add("naive", check_naive_relations(pt));
    rep.add("wedge", check_wedge(pt));
    rep.add("trace", check_trace(pt));
    rep.add("kottwitz", check_kottwitz(pt));
    rep.add("spin(+1)", check_spin(pt, 1, cache));
    rep.add("spin(-1)", check_spin(pt, -1, cache));
    rep.add("refined", check_refined(pt, cache));
    c.evidence["verdicts"] = report_to_json(rep);
    c.evidence["expected"] = {{"naive", "pass"},    {"wedge", "pass"},    {"trace", "pass"},   {"kottwitz", "pass"},
                              {"spin(+1)", "pass"}, {"spin(-1)", "pass"}, {"refined", "fail"}};
    auto support = nlohmann::ordered_json::array();
    for (auto& [S, x] : chart_wedge(pt).terms) support.push_back(S.elements());
    c.evidence["wedge_support"] = support;
    bool ok = true;
    for (auto& [name, v] : rep.entries) ok = ok && (v.status == (name == "refined" ? Status::fail : Status::pass));
    c.verdict = ok ? Outcome::pass : Outcome::fail;
    return c;
}

/// Symbolic X1 with X2 = X3 = X4 = 0: the linear equations from the refined
/// condition together with X1 = -J X1ᵗ J force X1 = 0.
template <BaseField F>
Certificate verify_x1_zero(const F& k, int n, int precision = kDefaultPrecision) {
    using K = typename F::element_type;
    detail::require_odd_n(n, 3, 5);
    auto c = detail::make_certificate("x1-zero", k, n, precision);
    int d = n - 1, nv = d * d;
    PolyRing<F> R{k, {}};
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) R.variables.push_back("x" + std::to_string(a + 1) + std::to_string(b + 1));
    ChartPoint<PolyRing<F>> pt(R, n, {n - 1, 1});
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) pt.X(a, b) = R.var(a * d + b);

    LatticeCache<F> cache(k, n, precision);
    auto data = cache.get(LatticeSpec::refined(n, -1, n - 1, 1));
    auto w = chart_wedge(pt);
    std::vector<std::vector<K>> refined_rows, symmetry_rows;
    int nonlinear = 0, nonzero = 0;
    for (auto& f : data->ann.functionals) {
        auto v = w.coeff(f.coord);
        for (auto& [P, coef] : f.pivot_terms) v = v - scale(coef, w.coeff(P));
        if (v.is_zero()) continue;
        ++nonzero;
        if (!v.is_homogeneous_linear()) {
            ++nonlinear;
            continue;
        }
        std::vector<K> row(nv);
        for (int t = 0; t < nv; ++t) row[t] = v.linear_coeff(t);
        refined_rows.push_back(std::move(row));
    }
    auto J = j_matrix(R, n);
    auto sym = pt.X1() + J * transpose(pt.X1()) * J;
    for (auto& e : sym.a) {
        if (e.is_zero()) continue;
        std::vector<K> row(nv);
        for (int t = 0; t < nv; ++t) row[t] = e.linear_coeff(t);
        symmetry_rows.push_back(std::move(row));
    }
    int r_ref = detail::dense_rank(refined_rows), r_sym = detail::dense_rank(symmetry_rows);
    auto all = refined_rows;
    all.insert(all.end(), symmetry_rows.begin(), symmetry_rows.end());
    int r_all = detail::dense_rank(all);
    c.evidence["variables"] = nv;
    c.evidence["nonzero_equations"] = nonzero;
    c.evidence["linear_equations"] = refined_rows.size();
    c.evidence["nonlinear_equations"] = nonlinear;
    c.evidence["rank_refined_linear"] = r_ref;
    c.evidence["rank_symmetry"] = r_sym;
    c.evidence["rank_combined"] = r_all;
    c.evidence["symmetry_alone_deficit"] = nv - r_sym;
    bool sanity = r_sym < nv;
    c.evidence["sanity_symmetry_leaves_solutions"] = sanity;
    if (r_all == nv && sanity)
        c.verdict = Outcome::pass;
    else if (r_all < nv && nonlinear > 0)
        c.verdict = Outcome::inconclusive;
    else
        c.verdict = Outcome::fail;
    return c;
}

/// ⋀ⁿ(T - π⊗1) acts on g_S of type (r,s) by (T+π)^r (T-π)^s, and the operators
/// ⋀^{s+1}(π⊗1 + π), ⋀^{r+1}(π⊗1 - π) kill ^{s+1}W^{r,s}, ^{r+1}W^{r,s}.
template <BaseField F>
Certificate verify_operator_identities(const F& k, int n, int r, int s, int precision = kDefaultPrecision) {
    using K = typename F::element_type;
    using L = PiLaurent<K>;
    detail::require(n >= 2 && n <= 9, "n must satisfy 2 <= n <= 9");
    detail::require(r >= 0 && s >= 0 && r + s == n, "signature must satisfy r + s = n");
    detail::require(r != s, "signature must satisfy r != s");
    auto c = detail::make_certificate("operator-identities", k, n, precision);
    c.parameters["signature"] = {r, s};
    auto g = build_frame(k, FrameKind::g_split, n);
    auto Pi = pi_tensor_one_matrix(n, k.one());
    const L pi = L::monomial(1, k.one());
    std::vector<std::pair<std::string, L>> samples{{"0", L{}}, {"1", L(k.one())}, {"pi", pi}};
    auto power = [](L base, int e, const K& one) {
        L out(one);
        for (int t = 0; t < e; ++t) out *= base;
        return out;
    };
    int checked = 0, eigen_bad = 0;
    for (auto& [label, T] : samples) {
        auto op = scalar_matrix(2 * n, T) - Pi;
        auto scalar = power(T + pi, r, k.one()) * power(T - pi, s, k.one());
        for (auto& S : enumerate_type(n, r, s)) {
            auto w = basis_wedge(g, S);
            auto lhs = apply_wedge_power_operator(op, w);
            ++checked;
            if (!(lhs == w.scaled(scalar))) ++eigen_bad;
        }
    }
    int kill_checked = 0, kill_bad = 0;
    auto kills = [&](int l, const L& shift, int max_minus, int max_plus) {
        if (l < 1 || l > n) return;
        auto op = Pi + scalar_matrix(2 * n, shift);
        for (auto& T : enumerate_subsets(n, l)) {
            auto t = T.type();
            if (t.r > max_minus || t.s > max_plus) continue;
            ++kill_checked;
            if (!apply_wedge_power_operator(op, basis_wedge(g, T)).is_zero()) ++kill_bad;
        }
    };
    kills(s + 1, pi, r, s);
    kills(r + 1, -pi, r, s);
    c.evidence["eigen_checks"] = checked;
    c.evidence["eigen_failures"] = eigen_bad;
    c.evidence["annihilation_checks"] = kill_checked;
    c.evidence["annihilation_failures"] = kill_bad;
    c.evidence["T_samples"] = {"0", "1", "pi"};
    c.verdict = (eigen_bad == 0 && kill_bad == 0 && checked > 0) ? Outcome::pass : Outcome::fail;
    return c;
}

// ---------------------------------------------------------------------------
// Randomized implication lattice

/// Deterministic random chart points of signature (n-1,1) over the three ring kinds.
template <BaseField F>
class PointSampler {
public:
    using K = typename F::element_type;

    PointSampler(const F& k, int n, std::uint64_t seed) : k_(k), n_(n), rng_(seed) {}

    K scalar() { return k_(static_cast<std::int64_t>(rng_() % 1000003)); }
    K small() { return k_(static_cast<std::int64_t>(rng_() % 5) - 2); }
    int pick(int bound) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(bound)); }

    /// Base-field matrices: X1, X3 on the U^loc parametrization and variants.
    template <class Ring, class Gen>
    ChartPoint<Ring> structured(const Ring& ring, Gen&& entry) {
        using R = typename Ring::element;
        ChartPoint<Ring> pt(ring, n_, {n_ - 1, 1});
        int d = n_ - 1;
        int strategy = pick(6);
        Matrix<R> X3(1, d);
        for (int j = 0; j < d; ++j) X3(0, j) = pick(3) ? entry() : R{};
        switch (strategy) {
            case 0: {  // U^loc: X1 = -1/2 J X3ᵗ X3
                auto J = j_matrix(ring, n_);
                auto X1 = J * transpose(X3) * X3;
                for (auto& e : X1.a) e = scale(-k_.half(), e);
                pt.set_X1(X1);
                pt.set_X3(X3);
                break;
            }
            case 1:  // X1 = 0
                pt.set_X3(X3);
                break;
            case 2:  // sparse random X
                for (auto& e : pt.X.a)
                    if (pick(4) == 0) e = entry();
                break;
            case 3: {  // U^loc point with one perturbed entry, possibly in X2 / X4
                auto J = j_matrix(ring, n_);
                auto X1 = J * transpose(X3) * X3;
                for (auto& e : X1.a) e = scale(-k_.half(), e);
                pt.set_X1(X1);
                pt.set_X3(X3);
                pt.X(pick(n_), pick(n_)) += entry();
                break;
            }
            case 4: {  // rank-one X1 = u vᵗ with v·u = 0
                std::vector<R> u(d), v(d);
                for (auto& e : u) e = pick(2) ? entry() : R{};
                for (auto& e : v) e = pick(2) ? entry() : R{};
                R dot{};
                for (int i = 0; i < d; ++i) dot += u[i] * v[i];
                if (!dot.is_zero()) v.assign(d, R{});
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) pt.X(i, j) = u[i] * v[j];
                break;
            }
            default:  // worst point or X4 only
                if (pick(2)) pt.X(n_ - 1, n_ - 1) = entry();
                break;
        }
        return pt;
    }

    ChartPoint<FieldRing<F>> field_point() {
        FieldRing<F> R{k_};
        return structured(R, [&] { return small(); });
    }

    ChartPoint<DualRing<F>> dual_point() {
        DualRing<F> R{k_};
        int flavour = pick(3);
        auto pt = structured(R, [&] {
            if (flavour == 0) return Dual<K>(small(), small());
            if (flavour == 1) return Dual<K>(K{}, small());
            return Dual<K>(small());
        });
        if (pick(3) == 0) {  // nilpotent diagonal perturbation in the style of the counterexample
            auto x = R.x();
            int a = pick(n_ - 1), b = pick(n_ - 1);
            pt.X(a, a) += x;
            pt.X(b, b) -= x;
        }
        return pt;
    }

    ChartPoint<PolyRing<F>> poly_point() {
        PolyRing<F> R{k_, {"t", "u"}};
        return structured(R, [&] {
            MPoly<K> p(small());
            p += scale(small(), R.var(0));
            if (pick(2)) p += scale(small(), R.var(1));
            return p;
        });
    }

private:
    F k_;
    int n_;
    std::mt19937_64 rng_;
};

struct ImplicationTally {
    int points = 0;
    int refined_pass = 0;
    int spin_pass = 0;
    int kn_pass = 0;
    int on_locus = 0;
    int violations = 0;
    std::vector<std::string> examples;
};

template <class Ring, BaseField F>
void tally_point(const ChartPoint<Ring>& pt, const LatticeCache<F>& cache, ImplicationTally& t) {
    ++t.points;
    int eps = pt.signature.s % 2 == 0 ? 1 : -1;
    bool refined = check_refined(pt, cache).passed();
    bool spin = check_spin(pt, eps, cache).passed();
    bool spin_other = check_spin(pt, -eps, cache).passed();
    bool kn = check_kl(pt, pt.n, cache).passed();
    bool kott = check_kottwitz(pt).passed();
    bool x4 = check_x4_coordinate(pt).passed();
    t.refined_pass += refined;
    t.spin_pass += spin;
    t.kn_pass += kn;
    auto violate = [&](const std::string& what) {
        ++t.violations;
        if (t.examples.size() < 5) t.examples.push_back(what);
    };
    if (refined && !spin) violate("refined without spin");
    if ((spin || spin_other) && !x4) violate("spin without vanishing X4 coordinate");
    if (refined && !kn) violate("refined without K_n");
    if (kn && !kott) violate("K_n without Kottwitz");
    if (pt.on_x2_x4_zero_locus()) {
        ++t.on_locus;
        if (refined && !check_wedge(pt).passed()) violate("refined without wedge on X2 = X4 = 0");
    }
}

/// No sampled point may pass a stronger condition and fail a weaker one.
template <BaseField F>
Certificate verify_implications(const F& k, int n, std::uint64_t seed, int samples, int precision = kDefaultPrecision) {
    detail::require_odd_n(n, 3, 7);
    detail::require(samples >= 1, "samples must be positive");
    auto c = detail::make_certificate("implications", k, n, precision);
    c.parameters["seed"] = seed;
    c.parameters["samples_per_ring"] = samples;
    LatticeCache<F> cache(k, n, precision);
    PointSampler<F> sampler(k, n, seed);
    ImplicationTally tf, td, tp;
    for (int i = 0; i < samples; ++i) tally_point(sampler.field_point(), cache, tf);
    for (int i = 0; i < samples; ++i) tally_point(sampler.dual_point(), cache, td);
    for (int i = 0; i < samples; ++i) tally_point(sampler.poly_point(), cache, tp);
    bool ok = true;
    const std::pair<const char*, ImplicationTally*> rows[] = {{"field", &tf}, {"dual", &td}, {"poly", &tp}};
    for (auto [name, t] : rows) {
        c.evidence[name] = {{"points", t->points},     {"refined_pass", t->refined_pass}, {"spin_pass", t->spin_pass},
                            {"kn_pass", t->kn_pass},   {"x2_x4_zero", t->on_locus},      {"violations", t->violations},
                            {"examples", t->examples}};
        ok = ok && t->violations == 0 && t->refined_pass > 0 && t->refined_pass < t->points;
    }
    c.verdict = ok ? Outcome::pass : Outcome::fail;
    return c;
}

}  // namespace rlm

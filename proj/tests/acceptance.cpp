// One line per acceptance criterion; exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "rlm/drivers.hpp"

using namespace rlm;

namespace {

struct Criterion {
    int id;
    std::string name;
    double limit_s;  // 0 means no limit
    std::function<std::pair<bool, std::string>()> run;
};

std::pair<bool, std::string> all_pass(std::vector<Certificate> certs) {
    std::string detail;
    bool ok = true;
    for (auto& c : certs) {
        ok = ok && c.passed();
        if (!detail.empty()) detail += ", ";
        detail += c.result;
        if (c.parameters.contains("n")) detail += " n=" + std::to_string(c.parameters["n"].get<int>());
        detail += " " + to_string(c.verdict);
    }
    return {ok, detail};
}

}  // namespace

int main() {
    const PrimeField k(13);
    std::vector<Criterion> criteria{
        {1, "sign lemma, all n-subsets for n = 2..6", 1.0, [] { return all_pass({verify_sign_lemma(6)}); }},
        {2, "worst-term tables at n = 3, 5, 7", 10.0,
         [&] {
             return all_pass({verify_worst_term_tables(k, 3), verify_worst_term_tables(k, 5), verify_worst_term_tables(k, 7)});
         }},
        {3, "refined basis: lattice equality and residue families at n = 3, 5, 7", 30.0,
         [&] { return all_pass({verify_refined_basis(k, 3), verify_refined_basis(k, 5), verify_refined_basis(k, 7)}); }},
        {4, "spin structure: X4 functional and listed elements at n = 3, 5, 7", 0.0,
         [&] { return all_pass({verify_spin_structure(k, 3), verify_spin_structure(k, 5), verify_spin_structure(k, 7)}); }},
        {5, "counterexample verdict vector over F_13[x]/(x^2) at n = 5, 7", 10.0,
         [&] { return all_pass({run_counterexample(k, 5), run_counterexample(k, 7)}); }},
        {6, "X3 = 0 forces X1 = 0: combined rank 4 at n = 3, 16 at n = 5", 120.0,
         [&] {
             auto a = verify_x1_zero(k, 3), b = verify_x1_zero(k, 5);
             auto r = all_pass({a, b});
             r.first = r.first && a.evidence["rank_combined"] == 4 && b.evidence["rank_combined"] == 16;
             r.second += "; ranks " + a.evidence["rank_combined"].dump() + ", " + b.evidence["rank_combined"].dump();
             return r;
         }},
        {7, "implication lattice on 200 seeded points per ring kind at n = 3, 5", 0.0,
         [&] { return all_pass({verify_implications(k, 3, 1, 200), verify_implications(k, 5, 1, 200)}); }},
        {8, "operator identities at n = 3, (r,s) = (2,1), T in {0, 1, pi}", 0.0,
         [&] { return all_pass({verify_operator_identities(k, 3, 2, 1)}); }},
    };

    int failures = 0;
    for (auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        std::pair<bool, std::string> r;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = c.limit_s == 0.0 || secs < c.limit_s;
        bool ok = r.first && in_time;
        failures += !ok;
        std::string limit = c.limit_s > 0 ? ", limit " + std::to_string(static_cast<int>(c.limit_s)) + " s" : "";
        std::printf("%s  criterion %d: %s [%.3f s%s] (%s)%s\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(), secs, limit.c_str(),
                    r.second.c_str(), in_time ? "" : " over time limit");
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}

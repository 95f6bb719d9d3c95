// rlm: run verification drivers, dump lattice bases, check chart points.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <unistd.h>

#include "CLI11.hpp"

#include "rlm/drivers.hpp"
#include "rlm/serialize.hpp"

namespace fs = std::filesystem;
using rlm::Json;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kPrecision = 3 };

struct RunConfig {
    int n = 5;
    std::int64_t p = 13;
    int precision = rlm::kDefaultPrecision;
    std::string signature;  // "r,s"; empty means (n-1, 1)
    std::string eps;        // empty means the kind's default
    int l = 0;              // 0 means n
    std::uint64_t seed = 1;
    int samples = 200;
    std::string out = "results";
    std::string input;
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

rlm::TypePair parse_signature(const RunConfig& cfg) {
    if (cfg.signature.empty()) return {cfg.n - 1, 1};
    auto comma = cfg.signature.find(',');
    if (comma == std::string::npos) throw UsageError("--signature expects r,s");
    try {
        rlm::TypePair t{std::stoi(cfg.signature.substr(0, comma)), std::stoi(cfg.signature.substr(comma + 1))};
        if (t.r < 0 || t.s < 0 || t.r + t.s != cfg.n) throw UsageError("--signature must satisfy r + s = n");
        return t;
    } catch (const std::logic_error& e) {
        if (dynamic_cast<const UsageError*>(&e)) throw;
        throw UsageError("--signature expects two integers r,s");
    }
}

int parse_eps(const std::string& s, int fallback) {
    if (s.empty()) return fallback;
    if (s == "1" || s == "+1" || s == "+") return 1;
    if (s == "-1" || s == "-") return -1;
    throw UsageError("--eps must be +1 or -1");
}

rlm::PrimeField make_field(const RunConfig& cfg) {
    if (cfg.p <= 2 || cfg.p >= (std::int64_t{1} << 31) || !rlm::is_odd_prime(static_cast<std::uint64_t>(cfg.p)))
        throw UsageError("--p must be an odd prime below 2^31");
    if (cfg.precision < 1) throw UsageError("--precision must be positive");
    return rlm::PrimeField(static_cast<std::uint32_t>(cfg.p));
}

Json config_json(const RunConfig& cfg) {
    Json j;
    j["p"] = cfg.p;
    j["precision"] = cfg.precision;
    j["defaults"] = {{"p", 13}, {"precision", rlm::kDefaultPrecision}};
    return j;
}

/// Write through a temporary file in the same directory, then rename over the target.
void write_atomic(const fs::path& path, const Json& j) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        f << j.dump(2) << '\n';
        if (!f) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

const std::vector<std::string> kResultIds = {"sign-lemma",  "worst-terms",    "refined-basis",       "spin-structure",
                                             "counterexample", "x1-zero", "operator-identities", "implications"};

rlm::Certificate run_driver(const std::string& id, const RunConfig& cfg, const rlm::PrimeField& k) {
    if (id == "sign-lemma") return rlm::verify_sign_lemma(6);
    if (id == "worst-terms") return rlm::verify_worst_term_tables(k, cfg.n, cfg.precision);
    if (id == "refined-basis") return rlm::verify_refined_basis(k, cfg.n, cfg.precision);
    if (id == "spin-structure") return rlm::verify_spin_structure(k, cfg.n, cfg.precision);
    if (id == "counterexample") return rlm::run_counterexample(k, cfg.n, cfg.precision);
    if (id == "x1-zero") return rlm::verify_x1_zero(k, cfg.n, cfg.precision);
    if (id == "operator-identities") {
        auto sig = parse_signature(cfg);
        return rlm::verify_operator_identities(k, cfg.n, sig.r, sig.s, cfg.precision);
    }
    if (id == "implications") return rlm::verify_implications(k, cfg.n, cfg.seed, cfg.samples, cfg.precision);
    throw UsageError("unknown result id '" + id + "'");
}

std::string certificate_name(const std::string& id, const RunConfig& cfg) {
    if (id == "sign-lemma") return id + ".json";
    return id + "-n" + std::to_string(cfg.n) + ".json";
}

int cmd_verify(const std::string& id, const RunConfig& cfg) {
    auto k = make_field(cfg);
    fs::path out(cfg.out);
    if (id != "all") {
        auto c = run_driver(id, cfg, k);
        Json j = c.to_json();
        j["config"] = config_json(cfg);
        auto path = out / certificate_name(id, cfg);
        write_atomic(path, j);
        std::cout << id << ": " << rlm::to_string(c.verdict) << " -> " << path.string() << '\n';
        return c.passed() ? kPass : kFail;
    }
    std::vector<std::future<rlm::Certificate>> jobs;
    for (auto& rid : kResultIds) jobs.push_back(std::async(std::launch::async, [rid, &cfg, k] { return run_driver(rid, cfg, k); }));
    Json bundle;
    bundle["config"] = config_json(cfg);
    bundle["n"] = cfg.n;
    bundle["certificates"] = Json::array();
    bundle["skipped"] = Json::array();
    bool ok = true, precision_hit = false;
    for (std::size_t t = 0; t < jobs.size(); ++t) {
        const auto& rid = kResultIds[t];
        try {
            auto c = jobs[t].get();
            Json j = c.to_json();
            j["config"] = config_json(cfg);
            write_atomic(out / certificate_name(rid, cfg), j);
            bundle["certificates"].push_back(j);
            ok = ok && c.passed();
            std::cout << rid << ": " << rlm::to_string(c.verdict) << '\n';
        } catch (const rlm::DriverPrecondition& e) {
            bundle["skipped"].push_back({{"result", rid}, {"reason", e.what()}});
            std::cout << rid << ": skipped (" << e.what() << ")\n";
        } catch (const rlm::PrecisionError& e) {
            precision_hit = true;
            bundle["skipped"].push_back({{"result", rid}, {"reason", std::string("precision exhausted: ") + e.what()}});
            std::cout << rid << ": precision exhausted (" << e.what() << ")\n";
        }
    }
    auto path = out / ("all-n" + std::to_string(cfg.n) + ".json");
    write_atomic(path, bundle);
    std::cout << "bundle -> " << path.string() << '\n';
    if (!ok) return kFail;
    return precision_hit ? kPrecision : kPass;
}

Json read_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    try {
        return Json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw rlm::SchemaError(std::string("malformed JSON: ") + e.what());
    }
}

int cmd_check(const RunConfig& cfg) {
    if (cfg.input.empty()) throw UsageError("check needs --input FILE");
    auto j = read_json(cfg.input);
    auto header = rlm::parse_chart_header(j);
    RunConfig local = cfg;
    local.p = header.p;
    auto k = make_field(local);
    auto point = rlm::parse_chart_point(k, j);
    rlm::LatticeCache<rlm::PrimeField> cache(k, header.n, cfg.precision);
    Json report = std::visit([&](const auto& pt) { return rlm::report_to_json(rlm::check_all(pt, cache)); }, point);
    Json doc;
    doc["config"] = config_json(local);
    doc["input"] = cfg.input;
    doc["n"] = header.n;
    doc["signature"] = {header.signature.r, header.signature.s};
    doc["report"] = report;
    auto path = fs::path(cfg.out) / ("report-" + fs::path(cfg.input).stem().string() + ".json");
    write_atomic(path, doc);
    for (auto& [name, v] : report.items()) std::cout << name << ": " << v["verdict"].get<std::string>() << '\n';
    std::cout << "report -> " << path.string() << '\n';
    return kPass;
}

int cmd_basis(const std::string& kind, const RunConfig& cfg) {
    auto k = make_field(cfg);
    if (cfg.n < 2 || cfg.n > rlm::kMaxRank) throw UsageError("--n out of range");
    rlm::LatticeSpec spec;
    std::string tag;
    if (kind == "spin") {
        spec = rlm::LatticeSpec::spin(cfg.n, parse_eps(cfg.eps, 1));
        tag = "spin-n" + std::to_string(cfg.n) + (spec.eps > 0 ? "-plus" : "-minus");
    } else if (kind == "refined") {
        auto sig = parse_signature(cfg);
        spec = rlm::LatticeSpec::refined(cfg.n, parse_eps(cfg.eps, sig.s % 2 == 0 ? 1 : -1), sig.r, sig.s);
        tag = "refined-n" + std::to_string(cfg.n) + "-" + std::to_string(sig.r) + "-" + std::to_string(sig.s);
    } else if (kind == "kl") {
        auto sig = parse_signature(cfg);
        int l = cfg.l == 0 ? cfg.n : cfg.l;
        spec = rlm::LatticeSpec::kl(cfg.n, l, sig.r, sig.s);
        tag = "kl-n" + std::to_string(cfg.n) + "-l" + std::to_string(l);
    } else {
        throw UsageError("basis kind must be spin, refined or kl");
    }
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    rlm::WedgeFactory<rlm::PrimeField> fac(k, cfg.n);
    auto d = rlm::compute_lattice(fac, spec, cfg.precision);
    Json j = rlm::basis_json(k, d);
    j["config"] = config_json(cfg);
    auto path = fs::path(cfg.out) / ("basis-" + tag + ".json");
    write_atomic(path, j);
    std::cout << spec.to_string() << ": " << d.basis.columns.size() << " columns, residue rank " << d.residue.size() << " -> "
              << path.string() << '\n';
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rlm: lattice and chart computations for ramified unitary local models"};
    app.require_subcommand(1);
    RunConfig cfg;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "rank n")->capture_default_str();
        sub->add_option("--p", cfg.p, "residue characteristic (odd prime)")->capture_default_str();
        sub->add_option("--precision", cfg.precision, "pi-adic precision")->capture_default_str();
        sub->add_option("--signature", cfg.signature, "signature r,s (default n-1,1)");
        sub->add_option("--eps", cfg.eps, "spin sign +1 or -1");
        sub->add_option("--l", cfg.l, "wedge degree for kl (default n)");
        sub->add_option("--seed", cfg.seed, "seed for sampled drivers")->capture_default_str();
        sub->add_option("--samples", cfg.samples, "points per ring kind for implications")->capture_default_str();
        sub->add_option("--out", cfg.out, "output directory")->capture_default_str();
        sub->add_option("--input", cfg.input, "chart point JSON file");
    };
    std::string result_id, basis_kind;
    auto* verify = app.add_subcommand("verify", "run a verification driver and write its certificate");
    verify->add_option("result", result_id, "sign-lemma | worst-terms | refined-basis | spin-structure | counterexample | "
                                            "x1-zero | operator-identities | implications | all")
        ->required();
    common(verify);
    auto* check = app.add_subcommand("check", "evaluate every condition on a chart point");
    common(check);
    auto* basis = app.add_subcommand("basis", "dump a DVR-reduced lattice basis");
    basis->add_option("kind", basis_kind, "spin | refined | kl")->required();
    common(basis);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kPass : kUsage;
    }
    try {
        if (*verify) return cmd_verify(result_id, cfg);
        if (*check) return cmd_check(cfg);
        if (*basis) return cmd_basis(basis_kind, cfg);
    } catch (const rlm::PrecisionError& e) {
        std::cerr << "precision exhausted: " << e.what() << '\n';
        return kPrecision;
    } catch (const rlm::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

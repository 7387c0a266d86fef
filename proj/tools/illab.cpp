#include <CLI11.hpp>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

#include "illab/error.hpp"
#include "illab/forward_ops.hpp"
#include "illab/instability.hpp"
#include "illab/io.hpp"
#include "illab/nets.hpp"
#include "illab/rates.hpp"
#include "illab/seqspace.hpp"
#include "illab/spectral.hpp"
#include "illab/version.hpp"

using namespace illab;
namespace fs = std::filesystem;

namespace {

struct Ctx {
    json cfg = json::object();
    std::string out = ".";
    std::uint64_t seed = 0;
    bool plot = false;
    std::string hash;
};

std::string config_hash(const json& cfg) { return fnv1a_hex(nlohmann::json::parse(cfg.dump()).dump()); }

json meta(const Ctx& c) {
    return json{{"tool", "illab"}, {"version", kVersion}, {"config_hash", c.hash}, {"seed", c.seed}};
}

std::string csv_preamble(const Ctx& c) {
    std::ostringstream os;
    os << "# illab " << kVersion << " config=" << c.hash << " seed=" << c.seed << "\n";
    return os.str();
}

std::string show(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string path_in(const Ctx& c, const std::string& file) { return (fs::path(c.out) / file).string(); }

void write_json(const Ctx& c, const std::string& file, const json& j) { write_text(path_in(c, file), j.dump(2) + "\n"); }

std::string name_of(const json& cfg, const std::string& fallback) {
    const std::string n = get_string(cfg, "name", "config", fallback);
    if (n.empty() || n.find('/') != std::string::npos) throw ConfigError("config.name: must be a plain file stem");
    return n;
}

// ---- spectrum ----------------------------------------------------------------

json run_spectrum(const Ctx& c, const json& cfg) {
    if (!cfg.contains("operator")) throw ConfigError("config: missing field 'operator'");
    const std::string name = name_of(cfg, "spectrum");
    const WeightedOperator op = operator_from_json(cfg.at("operator"));
    SpectrumReport rep = weighted_svd(op);
    if (cfg.contains("fit")) {
        const json& f = cfg.at("fit");
        const int k0 = get_int(f, "k0", "fit", 1);
        const int k1 = get_int(f, "k1", "fit", rep.resolved);
        if (k1 > rep.resolved) throw NumericalError("fit range extends beyond the resolved spectrum");
        rep.fit = fit_log_decay(rep.log_sigmas, k0, k1, get_string(f, "model", "fit", "poly"));
    }
    if (cfg.contains("carl")) {
        const json& a = cfg.at("carl");
        if (!a.is_array()) throw ConfigError("config.carl: expected an array of integers");
        const bool real = get_bool(cfg, "real_scalars", "config", true);
        for (const auto& n : a) {
            if (!n.is_number_integer()) throw ConfigError("config.carl: expected an array of integers");
            rep.carl.push_back(carl_sandwich(rep.sigmas, n.get<int>(), real));
        }
    }
    std::ostringstream csv;
    csv << csv_preamble(c) << "k,sigma_k\n";
    for (std::size_t k = 0; k < rep.sigmas.size(); ++k) csv << k + 1 << "," << fmt_double(rep.sigmas[k]) << "\n";
    write_text(path_in(c, name + ".csv"), csv.str());
    json j{{"meta", meta(c)}, {"operator", op.label}, {"rows", op.rows()}, {"cols", op.cols()}};
    j["domain"] = to_string(op.domain.kind);
    j["codomain"] = to_string(op.codomain.kind);
    j["spectrum"] = to_json(rep);
    write_json(c, name + ".json", j);
    if (get_bool(cfg, "export_matrix", "config", false)) {
        json h{{"meta", meta(c)}, {"operator", op.label}, {"content", "weighted matrix"}};
        write_matrix_binary(path_in(c, name + ".bin"), op.weighted(), h);
    }
    if (c.plot) {
        Series s{"log10 sigma_k", {}};
        for (std::size_t k = 0; k < rep.log_sigmas.size(); ++k)
            s.points.emplace_back(double(k + 1), rep.log_sigmas[k] / std::log(10.0));
        write_text(path_in(c, name + ".svg"), svg_plot({s}, op.label, "k", "log10 sigma_k", false, false));
    }
    std::cout << "spectrum " << op.label << ": " << rep.sigmas.size() << " values, " << rep.resolved
              << " resolved (" << rep.method << ")\n";
    json summary{{"name", name}, {"operator", op.label}, {"resolved", rep.resolved}, {"method", rep.method}};
    summary["sigma_1"] = rep.sigmas.empty() ? 0.0 : rep.sigmas[0];
    if (rep.fit) summary["fit"] = to_json(*rep.fit);
    return summary;
}

// ---- certify -----------------------------------------------------------------

json run_certify(const Ctx& c, const json& cfg, int& exit_code) {
    if (!cfg.contains("operator")) throw ConfigError("config: missing field 'operator'");
    if (!cfg.contains("eps") || !cfg.at("eps").is_array() || cfg.at("eps").empty())
        throw ConfigError("config.eps: expected a nonempty array of numbers");
    const std::string name = name_of(cfg, "certify");
    const WeightedOperator op = operator_from_json(cfg.at("operator"));
    const int J = int(op.cols());
    const json Kc = cfg.contains("K") ? cfg.at("K") : json::object();
    WeightedBall K{Kc.contains("kappa") ? weights_from_json(Kc.at("kappa"), "K.kappa", J) : sobolev(1, 1, J),
                   get_number(Kc, "radius", "K", 1.0)};
    if (int(K.kappa.size()) < J) throw ConfigError("K.kappa: shorter than the operator domain");
    const std::string method = get_string(cfg, "method", "config", "pigeonhole");
    if (method != "pigeonhole" && method != "spectral") throw ConfigError("config.method: expected pigeonhole or spectral");
    PigeonholeOptions opt;
    opt.sample_budget = get_int(cfg, "budget", "config", opt.sample_budget);
    const Evaluator F = weighted_evaluator(op);

    json certs = json::array(), fails = json::array(), summary = json::array();
    std::vector<std::pair<double, double>> curve;
    int unstable = 0;
    std::ostringstream csv;
    csv << csv_preamble(c) << "eps,image_distance,domain_distance,delta\n";
    for (const auto& e : cfg.at("eps")) {
        if (!e.is_number()) throw ConfigError("config.eps: expected numbers");
        const double eps = e.get<double>();
        std::optional<InstabilityCertificate> cert;
        std::string diag;
        if (method == "pigeonhole") {
            const WitnessResult r = pigeonhole_witness(F, K, eps, opt);
            cert = r.certificate;
            diag = r.diagnostic;
        } else {
            try {
                cert = spectral_witness(op, K.kappa, eps);
            } catch (const std::exception& ex) {
                diag = ex.what();
            }
        }
        if (cert) {
            certs.push_back(to_json(*cert));
            csv << fmt_double(eps) << "," << fmt_double(cert->image_distance) << ","
                << fmt_double(cert->domain_distance) << "," << fmt_double(cert->delta) << "\n";
            summary.push_back({{"eps", eps}, {"image_distance", cert->image_distance}});
            curve.emplace_back(cert->image_distance, cert->domain_distance);
            if (cert->image_distance < cert->domain_distance) ++unstable;
            std::cout << "eps " << show(eps) << ": image distance " << show(cert->image_distance) << "\n";
        } else {
            fails.push_back({{"eps", eps}, {"diagnostic", diag}});
            std::cout << "eps " << show(eps) << ": no witness (" << diag << ")\n";
        }
    }
    json j{{"meta", meta(c)}, {"operator", op.label}, {"method", method}, {"K_radius", K.radius}};
    j["certificates"] = certs;
    j["failures"] = fails;
    j["summary"] = summary;
    write_json(c, name + ".json", j);
    write_text(path_in(c, name + ".csv"), csv.str());
    if (c.plot && !curve.empty()) {
        std::sort(curve.begin(), curve.end());
        write_text(path_in(c, name + ".svg"),
                   svg_plot({{"omega lower bound", curve}}, "modulus lower bound: " + op.label, "t", "omega(t)", true, true));
    }
    if (unstable == 0) {
        std::cout << "no instability found\n";
        exit_code = 4;
    }
    return json{{"name", name}, {"operator", op.label}, {"method", method}, {"summary", summary},
                {"failures", fails.size()}};
}

// ---- oracle ------------------------------------------------------------------

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

std::string describe(const WeylViolation& v) {
    std::ostringstream os;
    os << "weyl " << v.kind << " inequality sigma_{j+k-1} <= sigma_j(A) " << (v.kind == "sum" ? "+" : "*")
       << " sigma_k(B) violated at j=" << v.j << ", k=" << v.k << ": " << fmt_double(v.lhs) << " > " << fmt_double(v.rhs);
    return os.str();
}

int run_oracle(const Ctx& c, const json& cfg) {
    std::vector<Check> checks;
    const std::string inject = get_string(cfg, "inject", "config", "");
    if (!inject.empty() && inject != "sigma") throw ConfigError("config.inject: expected \"sigma\"");
    const long budget = long(get_number(cfg, "nets_budget", "config", 2e6));
    std::mt19937_64 rng(c.seed);
    std::normal_distribution<double> normal;

    // diagonal embeddings against closed forms
    for (auto [s1, s2, n] : {std::tuple{1.0, 0.0, 1.0}, {2.0, 0.0, 2.0}, {3.0, 1.0, 3.0}}) {
        const auto sv = embedding_singular_values(sobolev(s1, n, 512), sobolev(s2, n, 512));
        double worst = 0;
        for (int k = 1; k <= 512; ++k)
            worst = std::max(worst, std::abs(sv[std::size_t(k - 1)] / std::pow(k, -(s1 - s2) / n) - 1));
        std::ostringstream os;
        os << "sobolev(" << s1 << "," << n << ")->sobolev(" << s2 << "," << n << ")";
        checks.push_back({"embedding " + os.str(), worst <= 1e-12, "max rel err " + fmt_double(worst)});
    }
    // annulus powers
    {
        const auto op = annulus_restriction(1, 0.5, 16);
        const auto rep = weighted_svd(op);
        const auto modes = annulus_modes(16);
        std::vector<double> ex;
        for (int m : modes) ex.push_back(std::pow(0.5, std::abs(m)));
        ex = sort_descending(ex);
        double worst = 0;
        for (std::size_t k = 0; k < ex.size(); ++k) worst = std::max(worst, std::abs(rep.sigmas[k] / ex[k] - 1));
        checks.push_back({"annulus exact powers", worst <= 1e-13, "max rel err " + fmt_double(worst)});
    }
    // nets: d = 1 exact values, sandwich and Carl for d <= 2
    for (const auto& s : std::vector<std::vector<double>>{{1.0}, {1.0, 0.5}, {0.7, 0.3}}) {
        for (int k = 1; k <= 3; ++k) {
            const Bracket e = entropy_bruteforce(s, k, 0.05, budget);
            const Bracket cb = capacity_bruteforce(s, k, 0.05, budget);
            std::ostringstream tag;
            tag << "sigma=(";
            for (std::size_t i = 0; i < s.size(); ++i) tag << (i ? "," : "") << s[i];
            tag << ") k=" << k;
            if (s.size() == 1) {
                const double exact = s[0] / std::pow(2.0, k - 1);
                const bool ok = e.lo <= exact * (1 + 1e-12) && exact <= e.hi * (1 + 1e-12) && e.hi <= exact * 1.05 &&
                                cb.lo <= exact * (1 + 1e-12) && cb.lo >= exact * 0.95;
                checks.push_back({"d=1 entropy exact " + tag.str(), ok,
                                  "e in [" + fmt_double(e.lo) + ", " + fmt_double(e.hi) + "], exact " + fmt_double(exact)});
            }
            checks.push_back({"entropy-capacity sandwich " + tag.str(), entropy_capacity_sandwich(e, cb, 0.05),
                              "e [" + fmt_double(e.lo) + ", " + fmt_double(e.hi) + "], c [" + fmt_double(cb.lo) + ", " +
                                  fmt_double(cb.hi) + "]"});
            const CarlBracket cl = carl_sandwich(s, k, true);
            const bool ok = e.hi >= cl.lo * (1 - 1e-12) && e.lo <= 6 * cl.lo;
            checks.push_back({"carl " + tag.str(), ok,
                              "e [" + fmt_double(e.lo) + ", " + fmt_double(e.hi) + "], carl lo " + fmt_double(cl.lo)});
        }
    }
    // Weyl inequalities on seeded random matrices
    {
        Eigen::MatrixXd A(12, 9), B(12, 9), C(9, 7);
        for (Eigen::Index i = 0; i < A.size(); ++i) A.data()[i] = normal(rng);
        for (Eigen::Index i = 0; i < B.size(); ++i) B.data()[i] = normal(rng);
        for (Eigen::Index i = 0; i < C.size(); ++i) C.data()[i] = normal(rng);
        const auto sa = singular_values(A), sb = singular_values(B), sc = singular_values(C);
        auto ssum = singular_values(A + B);
        if (inject == "sigma") ssum[0] *= 1.5;
        const auto vs = weyl_violations(sa, sb, ssum, true);
        checks.push_back({"weyl sum", vs.empty(), vs.empty() ? "ok" : describe(vs.front())});
        const auto vp = weyl_violations(sa, sc, singular_values(A * C), false);
        checks.push_back({"weyl product", vp.empty(), vp.empty() ? "ok" : describe(vp.front())});
    }
    // stability iff-check against sampling
    {
        std::vector<double> sig;
        std::vector<double> kap;
        for (int j = 1; j <= 64; ++j) {
            sig.push_back(std::exp(-j));
            kap.push_back(std::exp(j));
        }
        const auto kw = custom_weights(kap);
        const auto chk = holder_stability_check(sig, kw, eta_power(0.5), 64);
        const auto bf = holder_stability_bruteforce(sig, kw, eta_power(0.5), 64, 2000, c.seed);
        checks.push_back({"holder check vs sampling", chk.pass && bf.violations == 0,
                          "violations " + std::to_string(bf.violations) + ", worst ratio " + fmt_double(bf.worst_ratio)});
    }

    int failed = 0;
    json arr = json::array();
    for (const auto& ch : checks) {
        std::cout << (ch.pass ? "PASS " : "FAIL ") << ch.name << (ch.pass ? "" : ": " + ch.detail) << "\n";
        failed += !ch.pass;
        arr.push_back({{"name", ch.name}, {"pass", ch.pass}, {"detail", ch.detail}});
    }
    json j{{"meta", meta(c)}, {"checks", arr}, {"failed", failed}};
    write_json(c, "oracle.json", j);
    return failed ? 1 : 0;
}

// ---- rates -------------------------------------------------------------------

ExponentParams params_from_json(const json& p) {
    ExponentParams q;
    const std::string w = "params";
    q.n = get_number(p, "n", w, q.n);
    q.delta = get_number(p, "delta", w, q.delta);
    q.ell = get_number(p, "ell", w, q.ell);
    q.mu = get_number(p, "mu", w, q.mu);
    q.m = get_number(p, "m", w, q.m);
    q.sigma = get_number(p, "sigma", w, q.sigma);
    q.s = get_number(p, "s", w, q.s);
    q.dim_M = get_number(p, "dim_M", w, q.dim_M);
    q.dim_N = get_number(p, "dim_N", w, q.dim_N);
    return q;
}

json iterate_query(const std::string& kind, double n, double delta, int budget) {
    StepRate s;
    if (kind == "heat")
        s = heat_step(n, delta);
    else if (kind == "ucp")
        s = ucp_step(n, delta);
    else
        throw ConfigError("iterate: expected heat or ucp");
    const IterationResult r = iterate_composition(s, budget);
    return json{{"query", "iterate " + kind}, {"n", n}, {"delta", delta}, {"rate", to_json(r.rate)},
                {"value", r.rate.exponent}};
}

json run_rates(const Ctx& c, const json& cfg) {
    json results = json::array();
    if (!cfg.contains("queries")) {
        for (const auto& e : exponent_catalogue()) {
            ExponentParams q;
            if (std::string(e.name).starts_with("ucp")) q.n = 2;
            results.push_back({{"query", std::string("exponent ") + e.name},
                               {"formula", e.formula},
                               {"n", q.n},
                               {"value", theorem_exponent(e.problem, q)}});
        }
        results.push_back(iterate_query("heat", 1, 1, 14));
        results.push_back(iterate_query("ucp", 2, 1, 14));
        results.push_back({{"query", "singular_to_entropy stretched mu=1"},
                           {"rate", to_json(singular_to_entropy(Rate::stretched(1, 1, 1)))},
                           {"value", singular_to_entropy(Rate::stretched(1, 1, 1)).exponent}});
    } else {
        const json& qs = cfg.at("queries");
        if (!qs.is_array()) throw ConfigError("config.queries: expected an array");
        for (const auto& q : qs) {
            if (q.contains("exponent")) {
                const std::string n = get_string(q, "exponent", "query", "");
                const Problem p = problem_from_name(n);
                results.push_back({{"query", "exponent " + n},
                                   {"value", theorem_exponent(p, params_from_json(q.value("params", json::object())))}});
            } else if (q.contains("iterate")) {
                results.push_back(iterate_query(get_string(q, "iterate", "query", ""), get_number(q, "n", "query", 1.0),
                                                get_number(q, "delta", "query", 1.0), get_int(q, "budget", "query", 14)));
            } else if (q.contains("singular_to_entropy")) {
                const Rate r = singular_to_entropy(rate_from_json(q.at("singular_to_entropy"), "query.singular_to_entropy"));
                results.push_back({{"query", "singular_to_entropy"}, {"rate", to_json(r)}, {"value", r.exponent}});
            } else if (q.contains("compose")) {
                const json& a = q.at("compose");
                if (!a.is_array() || a.size() != 2) throw ConfigError("query.compose: expected two rates");
                const Rate r = compose_rate(rate_from_json(a[0], "query.compose[0]"), rate_from_json(a[1], "query.compose[1]"));
                results.push_back({{"query", "compose"}, {"rate", to_json(r)}, {"value", r.exponent}});
            } else if (q.contains("modulus")) {
                const json& a = q.at("modulus");
                if (!a.is_array() || a.size() != 2) throw ConfigError("query.modulus: expected [lower, upper] rates");
                const ModulusBound m =
                    entropy_pair_to_modulus(rate_from_json(a[0], "query.modulus[0]"), rate_from_json(a[1], "query.modulus[1]"));
                results.push_back({{"query", "modulus"}, {"modulus", to_json(m)}, {"value", m.exponent}});
            } else {
                throw ConfigError("query: expected one of exponent, iterate, singular_to_entropy, compose, modulus");
            }
        }
    }
    for (const auto& r : results) std::cout << r.at("query").get<std::string>() << " = " << show(r.at("value").get<double>()) << "\n";
    write_json(c, "rates.json", json{{"meta", meta(c)}, {"results", results}});
    return results;
}

// ---- report ------------------------------------------------------------------

json default_report_config() {
    return json::parse(R"({
      "spectra": [
        {"name": "annulus", "operator": {"type": "annulus", "s": 1, "r": 0.5, "K": 16}, "fit": {"model": "stretched", "k0": 2, "k1": 33}},
        {"name": "heat", "operator": {"type": "heat", "n_x": 63, "n_t": 32}, "carl": [1, 2, 4, 8]}
      ],
      "certify": [
        {"name": "diagonal_witness", "operator": {"type": "diagonal", "J": 16, "scale": [0.36787944117144233, 0.1353352832366127, 0.049787068367863944, 0.018315638888734179, 0.006737946999085467, 0.0024787521766663585, 0.00091188196555451624, 0.00033546262790251185, 0.00012340980408667956, 4.5399929762484854e-05, 1.670170079024566e-05, 6.1442123533282098e-06, 2.2603294069810542e-06, 8.3152871910356788e-07, 3.0590232050182579e-07, 1.1253517471925912e-07]},
         "K": {"kappa": {"kind": "sobolev", "s": 1, "n": 1}}, "eps": [0.5, 0.25], "method": "spectral"}
      ]
    })");
}

int run_report(const Ctx& c, const json& cfg_in) {
    const json cfg = cfg_in.empty() ? default_report_config() : cfg_in;
    std::ostringstream md;
    md << "# illab report\n\nversion " << kVersion << ", config " << c.hash << ", seed " << c.seed << "\n";
    json all{{"meta", meta(c)}};
    if (cfg.contains("spectra")) {
        md << "\n## Spectra\n\n| name | operator | resolved | sigma_1 | fit |\n|---|---|---|---|---|\n";
        all["spectra"] = json::array();
        for (const auto& s : cfg.at("spectra")) {
            const json r = run_spectrum(c, s);
            all["spectra"].push_back(r);
            std::string fit = "-";
            if (r.contains("fit"))
                fit = r["fit"]["model"].get<std::string>() + " exponent " + fmt_double(r["fit"]["exponent"].get<double>());
            md << "| " << r["name"].get<std::string>() << " | " << r["operator"].get<std::string>() << " | "
               << r["resolved"].get<int>() << " | " << fmt_double(r["sigma_1"].get<double>()) << " | " << fit << " |\n";
        }
    }
    if (cfg.contains("certify")) {
        md << "\n## Witnesses\n\n| name | eps | image distance |\n|---|---|---|\n";
        all["certify"] = json::array();
        for (const auto& s : cfg.at("certify")) {
            int code = 0;
            const json r = run_certify(c, s, code);
            all["certify"].push_back(r);
            for (const auto& row : r["summary"])
                md << "| " << r["name"].get<std::string>() << " | " << fmt_double(row["eps"].get<double>()) << " | "
                   << fmt_double(row["image_distance"].get<double>()) << " |\n";
        }
    }
    if (cfg.contains("rates") || cfg_in.empty()) {
        md << "\n## Rates\n\n| query | value |\n|---|---|\n";
        const json r = run_rates(c, cfg.value("rates", json::object()));
        all["rates"] = r;
        for (const auto& row : r)
            md << "| " << row["query"].get<std::string>() << " | " << fmt_double(row["value"].get<double>()) << " |\n";
    }
    write_text(path_in(c, "report.md"), md.str());
    write_json(c, "report.json", all);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"illab: ill-posedness laboratory"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    std::string config_path, out = ".";
    std::uint64_t seed = 0;
    bool plot = false;
    for (auto [name, help] : {std::pair{"spectrum", "singular values, fit and Carl brackets of an operator"},
                              {"certify", "instability witnesses for a schedule of eps"},
                              {"oracle", "brute-force cross-checks"},
                              {"rates", "exponent catalogue and rate algebra queries"},
                              {"report", "combined run with a markdown summary"}}) {
        auto* sc = app.add_subcommand(name, help);
        sc->add_option("--config", config_path, "JSON config file");
        sc->add_option("--out", out, "output directory");
        sc->add_option("--seed", seed, "seed for randomized checks");
        sc->add_flag("--plot", plot, "write SVG plots");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int r = app.exit(e);
        return r == 0 ? 0 : 2;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        Ctx c;
        c.out = out;
        c.seed = seed;
        c.plot = plot;
        if (!config_path.empty()) c.cfg = read_json_file(config_path);
        if (!c.cfg.is_object()) throw ConfigError("config: top level must be an object");
        if ((cmd == "spectrum" || cmd == "certify") && config_path.empty())
            throw ConfigError(cmd + " requires --config");
        c.hash = config_hash(c.cfg);
        fs::create_directories(c.out);
        if (cmd == "spectrum") {
            run_spectrum(c, c.cfg);
            return 0;
        }
        if (cmd == "certify") {
            int code = 0;
            run_certify(c, c.cfg, code);
            return code;
        }
        if (cmd == "oracle") return run_oracle(c, c.cfg);
        if (cmd == "rates") {
            run_rates(c, c.cfg);
            return 0;
        }
        return run_report(c, c.cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}

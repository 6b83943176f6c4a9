#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "heun/batch.hpp"
#include "heun/closed_values.hpp"
#include "heun/expansions.hpp"
#include "heun/termination.hpp"
#include "heun/verify.hpp"
#include "heun/version.hpp"

namespace {

using json = nlohmann::json;

enum ExitCode {
    kOk = 0,
    kVerifyFailed = 1,
    kBadInput = 2,
    kNoConvergence = 3,
    kPole = 4,
    kNoTermination = 5,
    kNotTwoTerm = 6,
};

struct RunConfig {
    std::optional<heun::HeunParams> params;
    double tolerance = 1e-10;
    int max_terms = 8192;
    std::string format = "human";
    std::uint64_t seed = 12345;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16g", v);
    return buf;
}

json params_json(const heun::HeunParams& p) {
    json j;
    j["a"] = p.a;
    j["q"] = p.q;
    j["alpha"] = p.alpha;
    j["beta"] = p.beta;
    j["gamma"] = p.gamma;
    j["delta"] = p.delta;
    j["epsilon"] = p.epsilon;
    return j;
}

void print_header_human(const RunConfig& cfg) {
    std::printf("heun %s\n", heun::version());
    if (cfg.params) {
        const auto& p = *cfg.params;
        std::printf("params: a=%s q=%s alpha=%s beta=%s gamma=%s delta=%s epsilon=%s\n",
                    fmt(p.a).c_str(), fmt(p.q).c_str(), fmt(p.alpha).c_str(),
                    fmt(p.beta).c_str(), fmt(p.gamma).c_str(), fmt(p.delta).c_str(),
                    fmt(p.epsilon).c_str());
    }
}

void print_header_csv(const RunConfig& cfg) {
    std::printf("# version=%s\n", heun::version());
    if (cfg.params) std::printf("# params=%s\n", params_json(*cfg.params).dump().c_str());
}

json report_envelope(const RunConfig& cfg) {
    json j;
    j["version"] = heun::version();
    if (cfg.params) j["params"] = params_json(*cfg.params);
    j["tolerance"] = cfg.tolerance;
    j["seed"] = cfg.seed;
    return j;
}

heun::HeunParams load_params(const std::string& file, const std::vector<double>& inline_v,
                             const std::vector<bool>& inline_set, bool q_required) {
    double a = 0, q = 0, alpha = 0, beta = 0, gamma = 0, epsilon = 0;
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw heun::DomainError("cannot open parameter file: " + file);
        json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            throw heun::DomainError(std::string("malformed JSON: ") + e.what());
        }
        if (j.contains("delta"))
            throw heun::DomainError(
                "delta is derived from the Fuchsian relation and cannot be set");
        for (auto key : {"a", "alpha", "beta", "gamma", "epsilon"})
            if (!j.contains(key))
                throw heun::DomainError(std::string("missing parameter: ") + key);
        if (q_required && !j.contains("q")) throw heun::DomainError("missing parameter: q");
        a = j["a"].get<double>();
        q = j.value("q", 0.0);
        alpha = j["alpha"].get<double>();
        beta = j["beta"].get<double>();
        gamma = j["gamma"].get<double>();
        epsilon = j["epsilon"].get<double>();
    } else {
        const char* names[] = {"--a", "--q", "--alpha", "--beta", "--gamma", "--epsilon"};
        for (int i = 0; i < 6; ++i) {
            if (i == 1 && !q_required) continue;
            if (!inline_set[i])
                throw heun::DomainError(std::string("missing flag ") + names[i] +
                                        " (or use --params)");
        }
        a = inline_v[0];
        q = inline_v[1];
        alpha = inline_v[2];
        beta = inline_v[3];
        gamma = inline_v[4];
        epsilon = inline_v[5];
    }
    return heun::make_params(a, q, alpha, beta, gamma, epsilon);
}

std::vector<double> parse_z_list(const std::string& zcsv) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < zcsv.size()) {
        std::size_t comma = zcsv.find(',', pos);
        std::string tok = zcsv.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            std::size_t used = 0;
            double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw heun::DomainError("bad z value: " + tok);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw heun::DomainError("empty z list");
    return out;
}

int map_exception(const std::exception& e) {
    if (dynamic_cast<const heun::NoConvergence*>(&e)) return kNoConvergence;
    if (dynamic_cast<const heun::PoleError*>(&e)) return kPole;
    if (dynamic_cast<const heun::DomainError*>(&e)) return kBadInput;
    return kPole;  // RootFailure / StepFailure / TerminationFailure
}

// ---------------------------------------------------------------- eval ----

struct FamilyEval {
    std::string name;
    std::vector<heun::ExpansionValue> values;
    bool all_converged = false;
};

heun::Expansion build_family(const heun::HeunParams& p, const std::string& family,
                             int max_terms) {
    bool two_term = heun::is_two_term(p);
    if (family == "ascending") {
        if (two_term) return heun::two_term_coefficients(p, max_terms / 2);
        return heun::generate_coefficients(p, heun::ascending_spec(p), max_terms);
    }
    double gamma0 = family == "desc-gamma" ? p.gamma
                    : family == "desc-alpha" ? p.alpha
                                             : p.beta;
    if (two_term) return heun::two_term_descending_coefficients(p, gamma0, max_terms / 2);
    return heun::generate_coefficients(p, heun::descending_spec(p, gamma0), max_terms);
}

int cmd_eval(const RunConfig& cfg, const std::vector<double>& zs,
             const std::string& choice) {
    const heun::HeunParams& p = *cfg.params;
    if (p.alpha * p.beta == 0.0) {
        std::fprintf(stderr,
                     "error: the expansions are meaningless if alpha beta = 0 "
                     "(the basis functions are constants)\n");
        return kPole;
    }
    for (double z : zs) {
        if (!(z >= 0.0) || z >= 1.0) {
            std::fprintf(stderr, "error: z out of range: %s\n", fmt(z).c_str());
            return kBadInput;
        }
    }

    std::vector<std::string> families;
    if (choice == "auto")
        families = {"ascending", "desc-gamma", "desc-alpha", "desc-beta"};
    else
        families = {choice};

    std::optional<FamilyEval> best;
    int poles = 0;
    for (const auto& fam : families) {
        try {
            heun::Expansion e = build_family(p, fam, cfg.max_terms);
            FamilyEval fe;
            fe.name = fam;
            fe.values = heun::batch::sum_expansion_grid(p, e, zs, cfg.tolerance);
            fe.all_converged = true;
            for (const auto& v : fe.values) fe.all_converged &= v.converged;
            if (!best || (fe.all_converged && !best->all_converged)) best = fe;
            if (fe.all_converged) break;
        } catch (const heun::PoleError& ex) {
            ++poles;
            if (families.size() == 1) {
                std::fprintf(stderr, "error: %s\n", ex.what());
                return kPole;
            }
        }
    }
    if (!best) {
        std::fprintf(stderr, "error: no applicable expansion family (parameter poles)\n");
        return kPole;
    }

    std::string regime = heun::is_two_term(p) ? "two-term" : "three-term";
    if (cfg.format == "human") {
        print_header_human(cfg);
        std::printf("expansion: %s   regime: %s\n", best->name.c_str(), regime.c_str());
        std::printf("%-12s %-24s %-24s %-12s %-8s %s\n", "z", "value_re", "value_im",
                    "abs_err", "terms", "converged");
        for (std::size_t i = 0; i < zs.size(); ++i) {
            const auto& v = best->values[i];
            std::printf("%-12s %-24s %-24s %-12.3e %-8d %s\n", fmt(zs[i]).c_str(),
                        fmt(v.value.real()).c_str(), fmt(v.value.imag()).c_str(),
                        v.abs_error_estimate, v.terms_used, v.converged ? "yes" : "no");
        }
    } else if (cfg.format == "csv") {
        print_header_csv(cfg);
        std::printf("z,value_re,value_im,abs_err,terms,regime,expansion\n");
        for (std::size_t i = 0; i < zs.size(); ++i) {
            const auto& v = best->values[i];
            std::printf("%s,%s,%s,%s,%d,%s,%s\n", fmt(zs[i]).c_str(),
                        fmt(v.value.real()).c_str(), fmt(v.value.imag()).c_str(),
                        fmt(v.abs_error_estimate).c_str(), v.terms_used, regime.c_str(),
                        best->name.c_str());
        }
    } else {
        json j = report_envelope(cfg);
        j["expansion"] = best->name;
        j["regime"] = regime;
        json rows = json::array();
        for (std::size_t i = 0; i < zs.size(); ++i) {
            const auto& v = best->values[i];
            rows.push_back({{"z", zs[i]},
                            {"value_re", v.value.real()},
                            {"value_im", v.value.imag()},
                            {"abs_err", v.abs_error_estimate},
                            {"terms", v.terms_used},
                            {"converged", v.converged}});
        }
        j["points"] = rows;
        std::printf("%s\n", j.dump(2).c_str());
    }
    return best->all_converged ? kOk : kNoConvergence;
}

// -------------------------------------------------------------- qroots ----

const char* kind_name(heun::CaseKind k) {
    switch (k) {
        case heun::CaseKind::Eps: return "eps";
        case heun::CaseKind::Alpha: return "alpha";
        default: return "beta";
    }
}

int cmd_qroots(const RunConfig& cfg, const std::string& forced_case, int forced_N) {
    const heun::HeunParams& p = *cfg.params;
    std::vector<heun::TerminationCase> cases;
    if (!forced_case.empty()) {
        heun::CaseKind k = forced_case == "eps" ? heun::CaseKind::Eps
                           : forced_case == "alpha" ? heun::CaseKind::Alpha
                                                    : heun::CaseKind::Beta;
        if (forced_N < 0) {
            std::fprintf(stderr, "error: --case requires --N\n");
            return kBadInput;
        }
        cases.push_back({k, forced_N});
    } else {
        cases = heun::detect_termination_cases(p);
        if (cases.empty()) {
            std::fprintf(stderr, "error: no termination case detected "
                                 "(epsilon, epsilon+gamma-alpha, epsilon+gamma-beta "
                                 "all away from non-positive integers)\n");
            return kNoTermination;
        }
    }

    json out = report_envelope(cfg);
    json jcases = json::array();
    if (cfg.format == "human") print_header_human(cfg);
    if (cfg.format == "csv") {
        print_header_csv(cfg);
        std::printf("case,N,root_re,root_im,poly_residual,solution_residual\n");
    }
    for (const auto& tc : cases) {
        heun::QRootSet rs = heun::q_roots(p, tc);
        json jroots = json::array();
        if (cfg.format == "human")
            std::printf("case %s, N=%d: %zu roots\n", kind_name(tc.kind), tc.N,
                        rs.roots.size());
        for (std::size_t i = 0; i < rs.roots.size(); ++i) {
            std::string sol = "";
            double sol_res = -1.0;
            if (rs.roots[i].imag() == 0.0) {
                try {
                    heun::FiniteSolution s =
                        heun::build_finite_solution(p, tc, static_cast<int>(i));
                    sol_res = heun::verify::finite_solution_fd_residual(s, 0.25);
                    sol = fmt(sol_res);
                } catch (const std::exception& e) {
                    sol = std::string("failed: ") + e.what();
                }
            } else {
                sol = "skipped (complex root)";
            }
            if (cfg.format == "human") {
                std::printf("  q = %s %+si   |poly|/scale = %.3e   residual(z=0.25): %s\n",
                            fmt(rs.roots[i].real()).c_str(), fmt(rs.roots[i].imag()).c_str(),
                            rs.residuals[i], sol.c_str());
            } else if (cfg.format == "csv") {
                std::printf("%s,%d,%s,%s,%s,%s\n", kind_name(tc.kind), tc.N,
                            fmt(rs.roots[i].real()).c_str(), fmt(rs.roots[i].imag()).c_str(),
                            fmt(rs.residuals[i]).c_str(),
                            sol_res >= 0 ? fmt(sol_res).c_str() : "");
            } else {
                jroots.push_back({{"re", rs.roots[i].real()},
                                  {"im", rs.roots[i].imag()},
                                  {"poly_residual", rs.residuals[i]},
                                  {"solution_residual", sol}});
            }
        }
        if (cfg.format == "json")
            jcases.push_back({{"case", kind_name(tc.kind)}, {"N", tc.N}, {"roots", jroots}});
    }
    if (cfg.format == "json") {
        out["cases"] = jcases;
        std::printf("%s\n", out.dump(2).c_str());
    }
    return kOk;
}

// ------------------------------------------------------------ boundary ----

int cmd_boundary(const RunConfig& cfg) {
    const heun::HeunParams& p = *cfg.params;
    if (!heun::is_two_term(p)) {
        double q_two = p.a * p.alpha * p.beta + p.a * (1.0 - p.delta) * p.epsilon;
        std::fprintf(stderr,
                     "error: not in the two-term regime:\n"
                     "  a = 1/2:                 %s\n"
                     "  gamma + delta = 2:       %s\n"
                     "  q = a(alpha beta + (1-delta) epsilon): %s (expected q=%s)\n",
                     std::fabs(p.a - 0.5) <= 1e-12 ? "ok" : "FAILED",
                     std::fabs(p.gamma + p.delta - 2.0) <= 1e-12 ? "ok" : "FAILED",
                     std::fabs(p.q - q_two) <= 1e-12 ? "ok" : "FAILED", fmt(q_two).c_str());
        return kNotTwoTerm;
    }

    double u0 = heun::value_at_origin(p);
    double du0 = heun::derivative_at_origin(p);
    std::optional<double> u1;
    try {
        u1 = heun::value_at_one(p);
    } catch (const heun::PoleError&) {
        u1 = std::nullopt;
    }

    struct Row {
        std::string family;
        double u0, du0;
        std::optional<double> u1;
    };
    std::vector<Row> rows;
    rows.push_back({"ascending", u0, du0, u1});
    const std::pair<const char*, double> descs[] = {
        {"desc-gamma", p.gamma}, {"desc-alpha", p.alpha}, {"desc-beta", p.beta}};
    for (auto [name, g0] : descs) {
        try {
            heun::BoundaryValues bv = heun::descending_boundary_values(p, g0);
            rows.push_back({name, bv.u_at_0, bv.du_at_0, bv.u_at_1});
        } catch (const heun::PoleError& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return kPole;
        }
    }

    if (cfg.format == "human") {
        print_header_human(cfg);
        std::printf("%-12s %-24s %-24s %-24s\n", "family", "u(0)", "u'(0)", "u(1)");
        for (const auto& r : rows)
            std::printf("%-12s %-24s %-24s %-24s\n", r.family.c_str(), fmt(r.u0).c_str(),
                        fmt(r.du0).c_str(),
                        r.u1 ? fmt(*r.u1).c_str() : "unavailable");
    } else if (cfg.format == "csv") {
        print_header_csv(cfg);
        std::printf("family,u0,du0,u1\n");
        for (const auto& r : rows)
            std::printf("%s,%s,%s,%s\n", r.family.c_str(), fmt(r.u0).c_str(),
                        fmt(r.du0).c_str(), r.u1 ? fmt(*r.u1).c_str() : "");
    } else {
        json j = report_envelope(cfg);
        json jr = json::array();
        for (const auto& r : rows) {
            json row{{"family", r.family}, {"u0", r.u0}, {"du0", r.du0}};
            if (r.u1)
                row["u1"] = *r.u1;
            else
                row["u1"] = nullptr;
            jr.push_back(row);
        }
        j["boundary"] = jr;
        std::printf("%s\n", j.dump(2).c_str());
    }
    return kOk;
}

// --------------------------------------------------------------- orbit ----

int cmd_orbit(const RunConfig& cfg, double a1) {
    std::vector<double> orbit = heun::a_orbit(a1);
    if (cfg.format == "human") {
        std::printf("heun %s\n", heun::version());
        std::printf("orbit of a = %s:", fmt(a1).c_str());
        for (double v : orbit) std::printf(" %s", fmt(v).c_str());
        std::printf("\n");
    } else if (cfg.format == "csv") {
        std::printf("# version=%s\n# a1=%s\nvalue\n", heun::version(), fmt(a1).c_str());
        for (double v : orbit) std::printf("%s\n", fmt(v).c_str());
    } else {
        json j;
        j["version"] = heun::version();
        j["a1"] = a1;
        j["orbit"] = orbit;
        std::printf("%s\n", j.dump(2).c_str());
    }
    return kOk;
}

// -------------------------------------------------------------- verify ----

int cmd_verify(const RunConfig& cfg) {
    auto suites = heun::verify::run_all(cfg.seed);
    bool ok = true;
    if (cfg.format == "json") {
        json j = report_envelope(cfg);
        json js = json::array();
        for (const auto& s : suites) {
            js.push_back({{"suite", s.name},
                          {"cases", s.cases},
                          {"failures", s.failures},
                          {"worst_residual", s.worst},
                          {"threshold", s.threshold}});
            ok &= s.failures == 0;
        }
        j["suites"] = js;
        j["pass"] = ok;
        std::printf("%s\n", j.dump(2).c_str());
    } else if (cfg.format == "csv") {
        std::printf("# version=%s\n# seed=%llu\nsuite,cases,failures,worst,threshold\n",
                    heun::version(), static_cast<unsigned long long>(cfg.seed));
        for (const auto& s : suites) {
            std::printf("%s,%d,%d,%s,%s\n", s.name.c_str(), s.cases, s.failures,
                        fmt(s.worst).c_str(), fmt(s.threshold).c_str());
            ok &= s.failures == 0;
        }
    } else {
        std::printf("heun %s   verify (seed %llu)\n", heun::version(),
                    static_cast<unsigned long long>(cfg.seed));
        for (const auto& s : suites) {
            std::printf("%-22s cases %-5d failures %-4d worst %.3e (bound %.1e)  %s\n",
                        s.name.c_str(), s.cases, s.failures, s.worst, s.threshold,
                        s.failures == 0 ? "pass" : "FAIL");
            ok &= s.failures == 0;
        }
    }
    return ok ? kOk : kVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
    if (const char* lg = std::getenv("HEUN_LOG"); lg && std::string(lg) == "debug")
        heun::set_term_trace(true);

    CLI::App app{"Heun equation via hypergeometric-series expansions"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string params_file;
    std::vector<double> inline_v(6, 0.0);
    std::vector<bool> inline_set(6, false);
    std::string zcsv;
    std::string expansion = "auto";
    std::string format = "human";
    std::string forced_case;
    int forced_N = -1;
    double orbit_a = 2.0;

    auto add_common = [&](CLI::App* sub, bool with_params) {
        sub->add_option("--tol", cfg.tolerance, "tolerance (0, 1e-2]")
            ->check(CLI::Range(1e-300, 1e-2));
        sub->add_option("--max-terms", cfg.max_terms, "coefficient budget (>= 8)")
            ->check(CLI::Range(8, 100000000));
        sub->add_option("--format", format, "human|json|csv")
            ->check(CLI::IsMember({"human", "json", "csv"}));
        sub->add_option("--seed", cfg.seed, "seed for randomized sweeps");
        if (with_params) {
            sub->add_option("--params", params_file, "JSON parameter file");
            const char* names[] = {"--a", "--q", "--alpha", "--beta", "--gamma",
                                   "--epsilon"};
            for (int i = 0; i < 6; ++i) {
                auto* opt = sub->add_option(names[i], inline_v[i]);
                opt->each([&inline_set, i](const std::string&) { inline_set[i] = true; });
            }
        }
    };

    auto* eval = app.add_subcommand("eval", "evaluate expansions at points");
    add_common(eval, true);
    eval->add_option("--z", zcsv, "comma-separated z list in [0,1)")->required();
    eval->add_option("--expansion", expansion,
                     "ascending|desc-gamma|desc-alpha|desc-beta|auto")
        ->check(CLI::IsMember({"ascending", "desc-gamma", "desc-alpha", "desc-beta",
                               "auto"}));

    auto* qroots = app.add_subcommand("qroots", "accessory-parameter roots");
    add_common(qroots, true);
    qroots->add_option("--case", forced_case, "force termination case")
        ->check(CLI::IsMember({"eps", "alpha", "beta"}));
    qroots->add_option("--N", forced_N, "forced case index N");

    auto* boundary = app.add_subcommand("boundary", "two-term closed boundary values");
    add_common(boundary, true);

    auto* orbit = app.add_subcommand("orbit", "singular-point orbit of a");
    add_common(orbit, false);
    orbit->add_option("--a", orbit_a, "location of the fourth singular point")->required();

    auto* verify = app.add_subcommand("verify", "randomized self-verification suites");
    add_common(verify, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kBadInput;
    }
    cfg.format = format;

    try {
        if (eval->parsed() || qroots->parsed() || boundary->parsed()) {
            bool q_required = !qroots->parsed();
            cfg.params = load_params(params_file, inline_v, inline_set, q_required);
        }
        if (eval->parsed()) return cmd_eval(cfg, parse_z_list(zcsv), expansion);
        if (qroots->parsed()) return cmd_qroots(cfg, forced_case, forced_N);
        if (boundary->parsed()) return cmd_boundary(cfg);
        if (orbit->parsed()) return cmd_orbit(cfg, orbit_a);
        if (verify->parsed()) return cmd_verify(cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return map_exception(e);
    }
    return kBadInput;
}

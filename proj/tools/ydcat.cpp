#include "ydcat/scenario.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace ydcat;

namespace {

struct Options {
    std::string provider;
    std::string fixture;
    std::string report;
    std::string algebra;
    std::string category = "fiber";
    std::string subgroup;
    std::string level;
    std::vector<std::string> measure;
    std::vector<std::string> objects;
    std::vector<std::string> fusion;
    std::string scenario;
    double tol = -1.0;
    int64_t seed = -1;
    bool pictures = false;
};

void print_step(const StepResult& s) {
    std::cout << (s.status == "pass" ? "PASS" : s.status == "fail" ? "FAIL" : s.status == "truncation" ? "TRUNC" : "ERROR")
              << "  " << s.op << (s.label.empty() ? "" : " [" + s.label + "]") << "\n";
    for (const auto& c : s.report.checks)
        std::cout << "    " << (c.passed() ? "ok  " : "BAD ") << c.name << "  residual=" << c.residual << "  tol=" << c.tol
                  << "\n";
    if (!s.dims.empty()) std::cout << "    dims " << s.dims.dump() << "\n";
    if (!s.values.empty()) std::cout << "    values " << s.values.dump() << "\n";
    for (const auto& n : s.report.notes) std::cout << "    note: " << n << "\n";
}

int exit_for(const StepResult& s) {
    if (s.status == "pass") return kExitPass;
    if (s.status == "truncation") return kExitTruncation;
    return kExitFail;
}

void write_report(const std::string& path, const json& j) {
    if (!path.empty()) write_json_file(path, j);
}

int run_op(const std::string& op, const Options& o) {
    ScenarioRunner R;
    std::string provider = o.provider;
    if (provider.empty() && !o.fixture.empty()) provider = "finite:" + o.fixture;
    if (provider.empty()) throw ParseError("no provider: pass --provider or --fixture");
    R.set_context(provider, o.tol >= 0 ? o.tol : (provider.rfind("suq2:", 0) == 0 ? 1e-7 : 1e-9),
                  o.seed >= 0 ? uint64_t(o.seed) : 7);
    json step;
    step["op"] = op;
    if (!o.algebra.empty()) step["algebra"] = o.algebra;
    if (!o.subgroup.empty()) step["subgroup"] = o.subgroup;
    if (!o.level.empty()) step["level"] = o.level;
    step["category"] = o.category;
    if (!o.measure.empty()) {
        json m = json::object();
        for (const auto& kv : o.measure) {
            auto eq = kv.find('=');
            m[kv.substr(0, eq)] = eq == std::string::npos ? 1.0 : parse_rational(kv.substr(eq + 1), "--measure");
        }
        step["measure"] = m;
    }
    if (!o.objects.empty()) step["objects"] = o.objects;
    if (!o.fusion.empty()) {
        json f = json::array();
        for (const auto& pr : o.fusion) {
            auto x = pr.find('x');
            if (x == std::string::npos) throw ParseError("--fusion expects <label>x<label>");
            f.push_back(json::array({pr.substr(0, x), pr.substr(x + 1)}));
        }
        step["fusion"] = f;
    }
    if (op == "poisson_finite") {
        step["phi"] = true;
        step["composition"] = true;
    }
    StepResult s = R.run_single(step);
    print_step(s);
    json rep = step_to_json(s, true);
    rep["provider"] = provider;
    write_report(o.report, rep);
    return exit_for(s);
}

int run_scenario(const Options& o) {
    ScenarioRunner R;
    if (o.tol >= 0) R.default_tol = o.tol;
    if (o.seed >= 0) R.seed_override = int(o.seed);
    ScenarioResult r = R.run_file(o.scenario);
    std::cout << "scenario " << r.name << " seed " << r.seed << "\n";
    for (const auto& s : r.steps) print_step(s);
    if (!r.error.empty()) std::cerr << "error: " << r.error << "\n";
    write_report(o.report, scenario_to_json(r));
    std::cout << (r.passed() ? "PASS" : "FAIL") << " (exit " << r.exit_code << ")\n";
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Yetter-Drinfeld algebras and tensor functors on finite and truncated quantum groups"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* c) {
        c->add_option("--provider", o.provider, "finite:<fixture.json> or suq2:q=<rational>,L=<half-integer>");
        c->add_option("--fixture", o.fixture, "Hopf fixture; shorthand for --provider finite:<path>");
        c->add_option("--tol", o.tol, "tolerance (default 1e-9 finite, 1e-7 q-deformed)");
        c->add_option("--seed", o.seed, "random seed for sampled checks");
        c->add_option("--level", o.level, "truncation spin for the dual algebra, e.g. 1 or 3/2");
        c->add_option("--report", o.report, "write the JSON report here");
    };

    struct Sub {
        const char* name;
        const char* op;
        const char* help;
    };
    const std::vector<Sub> subs = {
        {"validate", "validate_hopf", "check the Hopf *-algebra axioms"},
        {"irreps", "irreps", "irreducible table, conjugate equations, quantum dimensions, fusion"},
        {"ydcheck", "yd_check", "check the Yetter-Drinfeld axioms of an algebra"},
        {"categorify", "equivalence", "build the algebra of a functor category and check the equivalence"},
        {"reconstruct", "reconstruct", "recover ker(restriction) from the quotient coideal of a subgroup"},
        {"roundtrip", "roundtrip", "algebra to category to algebra isomorphism check"},
        {"coideal", "enumerate_coideals", "enumerate invariant coideal subalgebras exhaustively"},
        {"galois", "galois", "Galois map invertibility and the module action it induces"},
        {"poisson", "poisson_finite", "Markov operator, harmonic space and Cesaro product"},
    };
    std::map<CLI::App*, std::string> op_of;
    for (const auto& s : subs) {
        CLI::App* c = app.add_subcommand(s.name, s.help);
        common(c);
        op_of[c] = s.op;
        std::string n = s.name;
        if (n == "ydcheck" || n == "roundtrip" || n == "galois")
            c->add_option("--algebra", o.algebra, "adjoint, dual or quotient");
        if (n == "ydcheck" || n == "roundtrip" || n == "galois" || n == "reconstruct" || n == "categorify")
            c->add_option("--subgroup", o.subgroup, "subgroup fixture for quotient algebras and subgroup categories");
        if (n == "categorify") c->add_option("--category", o.category, "fiber, rep or sub");
        if (n == "irreps") c->add_option("--fusion", o.fusion, "tensor products to decompose, as <label>x<label>");
        if (n == "poisson") {
            c->add_option("--measure", o.measure, "irrep weights as <label>=<weight>")->required();
            c->add_option("--objects", o.objects, "objects for the picture comparison");
            c->add_flag("--pictures", o.pictures, "compare the algebra and natural-transformation Markov operators");
        }
    }
    CLI::App* run = app.add_subcommand("run", "run a scenario file");
    common(run);
    run->add_option("scenario", o.scenario, "scenario JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        bool known = argc > 1 && (std::string(argv[1]) == "run" || std::any_of(subs.begin(), subs.end(), [&](const Sub& s) {
                                      return std::string(argv[1]) == s.name;
                                  }));
        if (argc > 1 && !known && argv[1][0] != '-') {
            std::cerr << "unknown operation '" << argv[1] << "'\n";
            return kExitUnknownOp;
        }
        return app.exit(e);
    }

    try {
        if (run->parsed()) return run_scenario(o);
        for (const auto& [c, op] : op_of)
            if (c->parsed()) {
                std::string name = op;
                if (name == "poisson_finite" && o.pictures) name = "poisson_pictures";
                return run_op(name, o);
            }
    } catch (const UnknownOperation& e) {
        std::cerr << e.what() << "\n";
        return kExitUnknownOp;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const TruncationExceeded& e) {
        std::cerr << e.what() << "\n";
        return kExitTruncation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitFail;
}

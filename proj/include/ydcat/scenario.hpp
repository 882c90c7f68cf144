#ifndef YDCAT_SCENARIO_HPP
#define YDCAT_SCENARIO_HPP

#include "ydcat/io.hpp"
#include "ydcat/poisson.hpp"
#include "ydcat/suq2.hpp"

#include <chrono>
#include <filesystem>
#include <functional>

namespace ydcat {

/** \brief Raised for a step whose op name is not registered. */
struct UnknownOperation : Error {
    using Error::Error;
};

enum ExitCode { kExitPass = 0, kExitFail = 1, kExitUnknownOp = 2, kExitParse = 3, kExitTruncation = 4 };

/** \brief Outcome of one scenario step. */
struct StepResult {
    std::string op;
    std::string label;
    std::string status;  // "pass", "fail", "error", "truncation"
    ValidationReport report;
    json dims = json::object();
    json values = json::object();
    double runtime_ms = 0.0;
};

struct ScenarioResult {
    std::string name;
    uint64_t seed = 0;
    std::vector<StepResult> steps;
    std::string error;
    int exit_code = kExitPass;

    bool passed() const { return exit_code == kExitPass; }
};

inline json step_to_json(const StepResult& s, bool with_runtime) {
    json j;
    j["op"] = s.op;
    if (!s.label.empty()) j["label"] = s.label;
    j["status"] = s.status;
    j["report"] = encode_report(s.report);
    j["dims"] = s.dims;
    j["values"] = s.values;
    if (with_runtime) j["runtime_ms"] = s.runtime_ms;
    return j;
}

/** \brief Report JSON; without runtimes two runs with the same seed are byte-identical. */
inline json scenario_to_json(const ScenarioResult& r, bool with_runtime = true) {
    json j;
    j["scenario"] = r.name;
    j["seed"] = r.seed;
    j["passed"] = r.passed();
    j["exit_code"] = r.exit_code;
    if (!r.error.empty()) j["error"] = r.error;
    json steps = json::array();
    for (const auto& s : r.steps) steps.push_back(step_to_json(s, with_runtime));
    j["steps"] = steps;
    return j;
}

/** \brief Decimal or "a/b" rational. */
inline double parse_rational(const std::string& s, const std::string& context) {
    try {
        size_t slash = s.find('/'), used = 0;
        std::string num = s.substr(0, slash);
        double v = std::stod(num, &used);
        if (used != num.size()) throw ParseError("");
        if (slash == std::string::npos) return v;
        std::string den = s.substr(slash + 1);
        double d = std::stod(den, &used);
        if (used != den.size() || d == 0) throw ParseError("");
        return v / d;
    } catch (const std::exception&) {
        throw ParseError(context + ": bad number '" + s + "'");
    }
}

/** \brief Half-integer spin given as a number or an "a/2" string, returned doubled. */
inline int parse_spin2(const json& j, const std::string& context) {
    double v;
    if (j.is_number())
        v = j.get<double>();
    else if (j.is_string())
        v = parse_rational(j.get<std::string>(), context);
    else
        throw ParseError(context + ": expected a spin");
    if (v < 0 || std::abs(2 * v - std::round(2 * v)) > 1e-12) throw ParseError(context + ": not a half-integer");
    return int(std::lround(2 * v));
}

/** \brief Parses "suq2:q=<rational>,L=<half-integer>" into (q, twice L). */
inline std::pair<double, int> parse_suq2_provider(const std::string& text) {
    const std::string ctx = "provider '" + text + "'";
    double q = -1;
    int level2 = -1;
    std::string body = text.substr(5);
    size_t start = 0;
    while (true) {
        size_t comma = body.find(',', start);
        std::string kv = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        size_t eq = kv.find('=');
        if (eq == std::string::npos) throw ParseError(ctx + ": expected key=value");
        std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
        if (k == "q")
            q = parse_rational(v, ctx);
        else if (k == "L")
            level2 = parse_spin2(json(v), ctx);
        else
            throw ParseError(ctx + ": unknown key '" + k + "'");
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (!(q > 0 && q <= 1)) throw ParseError(ctx + ": q must lie in (0, 1]");
    if (level2 < 0) throw ParseError(ctx + ": missing L");
    return {q, level2};
}

/** \brief Runs scenario JSON step by step, caching groups and fixtures per provider string. */
class ScenarioRunner {
public:
    using Op = std::function<void(const json&, StepResult&)>;

    std::filesystem::path base_dir = ".";
    double default_tol = -1.0;  // when >= 0, overrides the scenario-level tolerance
    int seed_override = -1;

    ScenarioRunner() { register_ops(); }

    bool has_op(const std::string& name) const { return ops_.count(name) > 0; }
    std::vector<std::string> op_names() const {
        std::vector<std::string> out;
        for (const auto& [k, v] : ops_) out.push_back(k);
        return out;
    }

    ScenarioResult run_file(const std::string& file) {
        ScenarioResult r;
        json j;
        try {
            j = io::read_json_file(file);
        } catch (const ParseError& e) {
            r.name = file;
            r.error = e.what();
            r.exit_code = kExitParse;
            return r;
        }
        base_dir = std::filesystem::path(file).parent_path();
        if (base_dir.empty()) base_dir = ".";
        return run(j);
    }

    /** Unknown ops are rejected before any step runs; parse failures stop the scenario. */
    ScenarioResult run(const json& s) {
        ScenarioResult r;
        try {
            r.name = s.contains("name") && s["name"].is_string() ? s["name"].get<std::string>() : "unnamed";
            seed_ = s.contains("seed") ? uint64_t(io::int_at(s["seed"], "/seed")) : 7;
            if (seed_override >= 0) seed_ = uint64_t(seed_override);
            r.seed = seed_;
            tol_ = s.contains("tol") ? io::number_at(s["tol"], "/tol") : 1e-9;
            if (default_tol >= 0) tol_ = default_tol;
            provider_ = s.contains("provider") ? s["provider"].get<std::string>() : "";
            const json& steps = io::array_at(io::member(s, "steps", ""), "/steps");
            for (size_t i = 0; i < steps.size(); ++i) {
                const json& op = io::member(steps[i], "op", "/steps/" + std::to_string(i));
                if (!op.is_string()) throw ParseError("/steps/" + std::to_string(i) + "/op: expected a string");
                if (!has_op(op.get<std::string>())) throw UnknownOperation("unknown operation '" + op.get<std::string>() + "'");
            }
            for (size_t i = 0; i < steps.size(); ++i) {
                StepResult st = run_step(steps[i], "/steps/" + std::to_string(i));
                int code = st.status == "pass" ? kExitPass : st.status == "truncation" ? kExitTruncation : kExitFail;
                if (code == kExitTruncation || (code == kExitFail && r.exit_code == kExitPass)) r.exit_code = code;
                r.steps.push_back(std::move(st));
            }
            if (s.contains("max_total_runtime_ms")) {
                double budget = io::number_at(s["max_total_runtime_ms"], "/max_total_runtime_ms"), total = 0.0;
                for (const auto& st : r.steps) total += st.runtime_ms;
                StepResult b;
                b.op = "total_runtime";
                b.report.seed = seed_;
                b.report.add("runtime_within_budget", total <= budget ? 0.0 : 1.0, 0.0);
                b.status = b.report.passed() ? "pass" : "fail";
                b.runtime_ms = total;
                if (!b.report.passed() && r.exit_code == kExitPass) r.exit_code = kExitFail;
                r.steps.push_back(std::move(b));
            }
        } catch (const UnknownOperation& e) {
            r.error = e.what();
            r.exit_code = kExitUnknownOp;
        } catch (const ParseError& e) {
            r.error = e.what();
            r.exit_code = kExitParse;
        } catch (const json::exception& e) {
            r.error = std::string("malformed scenario: ") + e.what();
            r.exit_code = kExitParse;
        }
        return r;
    }

    /** Runs one op outside a scenario; ParseError and UnknownOperation propagate. */
    StepResult run_single(const json& step) {
        if (!has_op(step.value("op", ""))) throw UnknownOperation("unknown operation '" + step.value("op", "") + "'");
        return run_step(step, "");
    }

    void set_context(const std::string& provider, double tol, uint64_t seed) {
        provider_ = provider;
        tol_ = tol;
        seed_ = seed;
    }

    /** Groups are shared by every runner in the process; construction is deterministic. */
    QG group(const std::string& provider) {
        static std::mutex mu;
        static std::map<std::string, QG> cache;
        const std::string key = provider.rfind("finite:", 0) == 0 ? "finite:" + resolve(provider.substr(7)) : provider;
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        QG G;
        if (provider.rfind("finite:", 0) == 0) {
            std::string path = resolve(provider.substr(7));
            G = make_finite_group(load_hopf(path), std::filesystem::path(path).stem().string());
        } else if (provider.rfind("suq2:", 0) == 0) {
            auto [q, level2] = parse_suq2_provider(provider);
            G = make_suq2(q, level2);
        } else {
            throw ParseError("provider '" + provider + "': expected finite:<fixture> or suq2:q=..,L=..");
        }
        cache[key] = G;
        return G;
    }

    std::string resolve(const std::string& p) const {
        std::filesystem::path f(p);
        if (f.is_absolute()) return f.string();
        return (base_dir / f).lexically_normal().string();
    }

private:
    std::map<std::string, Op> ops_;
    std::string provider_;
    double tol_ = 1e-9;
    uint64_t seed_ = 7;

    double tol_of(const json& p) const { return p.contains("tol") ? io::number_at(p["tol"], "tol") : tol_; }
    uint64_t seed_of(const json& p) const { return p.contains("seed") ? uint64_t(io::int_at(p["seed"], "seed")) : seed_; }

    QG group_of(const json& p) {
        std::string prov = p.contains("provider") ? p["provider"].get<std::string>() : provider_;
        if (prov.empty()) throw ParseError("step has no provider");
        return group(prov);
    }

    SubgroupData subgroup_of(const json& p, const QuantumGroup& G) {
        if (!p.contains("subgroup") || !p["subgroup"].is_string()) throw ParseError("step needs a subgroup fixture path");
        SubgroupFixture f = load_subgroup(resolve(p["subgroup"].get<std::string>()));
        if (f.sub.p.cols() != G.cg.dim)
            throw ParseError(p["subgroup"].get<std::string>() + ": restriction does not match the group dimension");
        return f.sub;
    }

    static int level2_of(const json& p, const QuantumGroup& G) {
        if (p.contains("level")) return parse_spin2(p["level"], "level");
        return G.kind == "suq2" ? G.table.level2 : -1;
    }

    YD algebra_of(const json& p, QG G, double tol) {
        std::string kind = p.value("algebra", "adjoint");
        if (kind == "adjoint") return std::make_shared<const RegularYDAlgebra>(adjoint_yd_on_CG(G));
        if (kind == "dual") return std::make_shared<const RegularYDAlgebra>(dual_yd(G, level2_of(p, *G)));
        if (kind == "quotient") return quotient_coideal(G, subgroup_of(p, *G), tol).yd;
        throw ParseError("unknown algebra '" + kind + "'");
    }

    CategoryProvider category_of(const json& p, QG G) {
        std::string kind = p.value("category", "fiber");
        if (kind == "fiber") return provider_fiber(G);
        if (kind == "rep") return provider_rep(G);
        if (kind == "sub") {
            SubgroupData S = subgroup_of(p, *G);
            return provider_sub(G, S.p, S.name);
        }
        throw ParseError("unknown category '" + kind + "'");
    }

    static std::vector<int> labels_of(const json& p, const std::string& key, const IrrepTable& T) {
        std::vector<int> out;
        if (!p.contains(key)) {
            for (int s = 0; s < T.size(); ++s) out.push_back(s);
            return out;
        }
        for (const auto& l : io::array_at(p[key], key)) {
            std::string name = l.is_string() ? l.get<std::string>() : l.dump();
            bool found = false;
            for (int s = 0; s < T.size(); ++s)
                if (T.labels[s] == name) out.push_back(s), found = true;
            if (!found) throw ParseError(key + ": unknown irrep label '" + name + "'");
        }
        return out;
    }

    static Measure measure_of(const json& p, const IrrepTable& T) {
        if (!p.contains("measure")) throw ParseError("step needs a measure");
        std::map<std::string, double> w;
        for (const auto& [k, v] : p["measure"].items()) w[k] = io::number_at(v, "measure/" + k);
        for (const auto& [k, v] : w)
            if (std::find(T.labels.begin(), T.labels.end(), k) == T.labels.end())
                throw ParseError("measure: unknown irrep label '" + k + "'");
        return make_measure(T, w);
    }

    StepResult run_step(const json& step, const std::string& path) {
        StepResult st;
        st.op = step["op"].get<std::string>();
        st.label = step.value("label", "");
        auto t0 = std::chrono::steady_clock::now();
        bool want_truncation = step.value("expect_truncation", false);
        try {
            ops_.at(st.op)(step, st);
            st.status = st.report.passed() ? "pass" : "fail";
            if (want_truncation) {
                st.report.add("truncation_expected", 1.0, 0.0);
                st.status = "fail";
            }
        } catch (const TruncationExceeded& e) {
            st.report.notes.push_back(e.what());
            st.values["required2"] = e.required2;
            st.values["available2"] = e.available2;
            st.status = want_truncation ? "pass" : "truncation";
        } catch (const ParseError& e) {
            throw ParseError(path.empty() ? std::string(e.what()) : path + ": " + e.what());
        } catch (const json::exception& e) {
            throw ParseError(path.empty() ? std::string(e.what()) : path + ": " + e.what());
        } catch (const std::exception& e) {
            st.report.notes.push_back(std::string("error: ") + e.what());
            st.status = "error";
        }
        st.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        if (step.contains("max_runtime_ms")) {
            double budget = io::number_at(step["max_runtime_ms"], path + "/max_runtime_ms");
            st.report.add("runtime_within_budget", st.runtime_ms <= budget ? 0.0 : 1.0, 0.0);
            if (st.status == "pass" && st.runtime_ms > budget) st.status = "fail";
        }
        if (st.status == "pass" || st.status == "fail") {
            if (step.contains("expect")) apply_expectations(step["expect"], st);
            st.status = st.report.passed() ? "pass" : "fail";
        }
        return st;
    }

    /** Each expected value becomes a check against dims or values with the same key. */
    static void apply_expectations(const json& expect, StepResult& st) {
        for (const auto& [key, want] : expect.items()) {
            const json* got = nullptr;
            if (st.dims.contains(key)) got = &st.dims[key];
            if (st.values.contains(key)) got = &st.values[key];
            std::string name = "expect " + key;
            if (!got) {
                st.report.add(name, std::numeric_limits<double>::infinity(), 0.0);
                continue;
            }
            double tol = 0.0;
            json w = want;
            if (want.is_object() && want.contains("value")) {
                tol = want.value("tol", 0.0);
                w = want["value"];
            }
            st.report.add(name, json_distance(*got, w), tol);
        }
    }

    static double json_distance(const json& a, const json& b) {
        const double inf = std::numeric_limits<double>::infinity();
        if (a.is_number() && b.is_number()) return std::abs(a.get<double>() - b.get<double>());
        if (a.is_array() && b.is_array()) {
            if (a.size() != b.size()) return inf;
            double m = 0.0;
            for (size_t i = 0; i < a.size(); ++i) m = std::max(m, json_distance(a[i], b[i]));
            return m;
        }
        return a == b ? 0.0 : 1.0;
    }

    void register_ops() {
        ops_["validate_hopf"] = [this](const json& p, StepResult& st) {
            QG G = group_of(p);
            st.report = validate_hopf(G->cg, tol_of(p), seed_of(p));
            st.dims["dim"] = G->cg.dim;
        };

        ops_["irreps"] = [this](const json& p, StepResult& st) {
            QG G = group_of(p);
            const IrrepTable& T = G->table;
            double tol = tol_of(p);
            MaxAcc corep, unit, conj, qd;
            json dims = json::array(), qdims = json::array(), labels = json::array();
            std::vector<int> sorted;
            int sq = 0;
            for (int s = 0; s < T.size(); ++s) {
                const auto& U = T.irreps[s];
                const auto& c = T.conj[s];
                corep(corep_residual(G->cg, U));
                unit(unitarity_residual(G->cg, U));
                conj(conjugate_equation_residual(c.R, c.Rbar, U.d));
                qd(std::abs(c.qdim - c.rho.trace().real()));
                qd(std::abs(c.qdim - hermitian_power(c.rho, -1.0).trace().real()));
                sorted.push_back(U.d);
                sq += U.d * U.d;
                labels.push_back(T.labels[s]);
                qdims.push_back(c.qdim);
            }
            std::sort(sorted.begin(), sorted.end());
            for (int d : sorted) dims.push_back(d);
            st.report.seed = seed_of(p);
            st.report.add("corepresentation", corep.v, tol);
            st.report.add("unitary", unit.v, tol);
            st.report.add("conjugate_equations", conj.v, tol);
            st.report.add("qdim_is_trace_of_rho", qd.v, p.value("qdim_tol", tol));
            if (G->kind == "finite") st.report.add("sum_of_squares", std::abs(sq - G->cg.dim), 0.0);
            st.dims["irrep_dims"] = dims;
            st.values["labels"] = labels;
            st.values["qdims"] = qdims;
            if (p.contains("fusion")) {
                for (const auto& pr : io::array_at(p["fusion"], "fusion")) {
                    int s = T.find(pr.at(0).get<std::string>()), t = T.find(pr.at(1).get<std::string>());
                    const Fusion& f = G->fusion(s, t);
                    json out = json::array();
                    for (int r : f.labels) out.push_back(T.labels[r]);
                    int dst = T.dim(s) * T.dim(t);
                    st.report.add("fusion_complete " + T.labels[s] + "x" + T.labels[t], completeness_residual(f, dst), tol);
                    st.values["fusion " + T.labels[s] + "x" + T.labels[t]] = out;
                }
            }
        };

        ops_["yd_check"] = [this](const json& p, StepResult& st) {
            QG G = group_of(p);
            YD A = algebra_of(p, G, tol_of(p));
            st.report = check_yd_axioms(*A, tol_of(p), seed_of(p));
            st.dims["dim"] = A->dim;
            st.values["algebra"] = A->name;
        };

        ops_["roundtrip"] = [this](const json& p, StepResult& st) {
            QG G = group_of(p);
            YD A = algebra_of(p, G, tol_of(p));
            RoundtripData R = roundtrip_lambda(A, tol_of(p), seed_of(p));
            st.report = R.report;
            st.dims["dim"] = A->dim;
            st.dims["categorical_dim"] = R.cat->alg.dim;
            st.values["algebra"] = A->name;
        };

        ops_["equivalence"] = [this](const json& p, StepResult& st) {
            QG G = group_of(p);
            CategoricalYD C = build_yd_from_category(category_of(p, G));
            double tol = tol_of(p);
            std::vector<Representation> objs = G->table.irreps;
            st.report = check_equivalence(C, objs, tol, seed_of(p));
            st.report.add("coordinate_defect", C.coord_defect, tol);
            st.dims["categorical_dim"] = C.alg.dim;
            st.values["category"] = C.P.name;
            ValidationReport ax = check_yd_axioms(C.alg, tol, seed_of(p));
            st.report.merge(ax, "yd ");
        };

        // u_ij |> v_kl against sum_m u_im v_kl S(u_mj) on the fiber category
        ops_["adjoint_action"] = [this](const json& p, StepResult& st) {
            QG G = group_of(p);
            if (G->kind != "finite") throw Error("adjoint_action needs a finite provider");
            CategoricalYD C = build_yd_from_category(provider_fiber(G));
            const HopfAlgebraData& A = G->cg;
            const PeterWeyl& pw = C.pw;
            const int n = A.dim;
            if (C.alg.dim != n) throw Error("fiber category does not have the dimension of C[G]");
            MaxAcc acc;
            for (int a = 0; a < n; ++a) {
                const auto& U = G->table.irreps[pw.block[a]];
                const int i = pw.row[a], j = pw.col[a];
                for (int c = 0; c < n; ++c) {
                    Vec v = pw.basis.col(c);
                    Vec want = Vec::Zero(n);
                    for (int m = 0; m < U.d; ++m) want += A.mul(A.mul(U.at(i, m), v), A.S(U.at(m, j)));
                    Vec got = pw.basis * module_action_rhd(C, pw.basis.col(a), unit_vec(n, c));
                    acc(max_abs(Vec(got - want)));
                }
            }
            st.report.seed = seed_of(p);
            Check& c = st.report.add("adjoint_action_entrywise", acc.v, tol_of(p));
            c.evaluated = long(n) * n;
            st.dims["pairs"] = n * n;
        };

        ops_["reconstruct"] = [this](const json& p, StepResult& st) {
            QG G = group_of(p);
            double tol = tol_of(p);
            SubgroupData S = subgroup_of(p, *G);
            st.report = validate_subgroup(G->cg, S, tol);
            CoidealSubalgebra C = quotient_coideal(G, S, tol);
            ReconstructionData R = reconstruct_subgroup(G, C.basis, tol);
            st.report.merge(R.report, "reconstruct ");
            Mat ker = null_space(S.p);
            st.report.add("kernel_rank", std::abs(double(ker.cols() - R.kernel.cols())), 0.0);
            double dist = ker.cols() == R.kernel.cols() ? (ker.cols() ? subspace_distance(ker, R.kernel) : 0.0)
                                                        : std::numeric_limits<double>::infinity();
            st.report.add("kernel_distance", dist, tol);
            st.dims["coideal"] = int(C.basis.cols());
            st.dims["kernel"] = int(R.kernel.cols());
            st.dims["restriction_kernel"] = int(ker.cols());
            st.values["subgroup"] = S.name;
            st.values["kernel_basis"] = io::encode_columns(R.kernel);
        };

        ops_["enumerate_coideals"] = [this](const json& p, StepResult& st) {
            QG G = group_of(p);
            if (G->kind != "finite") throw Error("coideal enumeration is implemented for finite providers only");
            CoidealEnumeration E = enumerate_coideals(G, tol_of(p), seed_of(p));
            st.report = E.report;
            int quotient = 0;
            json dims = json::array();
            for (const auto& c : E.coideals) {
                quotient += c.quotient_type;
                dims.push_back(int(c.basis.cols()));
            }
            st.dims["components"] = E.components;
            st.dims["coideals"] = int(E.coideals.size());
            st.dims["quotient_type"] = quotient;
            st.dims["coideal_dims"] = dims;
            st.values["exhaustive"] = E.exhaustive;
            st.values["backend"] = "finite only";
        };

        ops_["galois"] = [this](const json& p, StepResult& st) {
            QG G = group_of(p);
            YD A = algebra_of(p, G, tol_of(p));
            GaloisData g = galois_map(*A, tol_of(p));
            st.report = g.report;
            st.dims["rank"] = g.rank;
            st.values["invertible"] = g.invertible;
            st.values["algebra"] = A->name;
        };

        ops_["galois_identity"] = [this](const json& p, StepResult& st) {
            QG G = group_of(p);
            st.report = galois_rbar_identity(G, tol_of(p));
        };

        ops_["spectral_functor"] = [this](const json& p, StepResult& st) {
            QG G = group_of(p);
            YD A = algebra_of(p, G, tol_of(p));
            SpectralFunctorData f = spectral_functor(*A, tol_of(p));
            st.report = f.report;
            st.dims["spectral_dims"] = f.dims;
            st.values["full_multiplicity"] = f.full_multiplicity;
            st.values["algebra"] = A->name;
        };

        ops_["poisson_finite"] = [this](const json& p, StepResult& st) {
            QG G = group_of(p);
            const IrrepTable& T = G->table;
            double tol = tol_of(p);
            uint64_t seed = seed_of(p);
            RegularYDAlgebra D = dual_yd(G, level2_of(p, *G));
            Measure mu = measure_of(p, T);
            MarkovOperator M = markov_operator(D, mu);
            st.report = markov_report(D, M, p.value("markov_tol", tol), seed);
            if (p.value("phi", false)) {
                Rng rng(seed);
                MaxAcc inv, unit, tr;
                bool kac = true;
                for (int s = 0; s < T.size(); ++s) {
                    const int d = T.dim(s);
                    Mat X = random_matrix(d, d, rng);
                    inv(phi_invariance_residual(G->cg, T.irreps[s], T.conj[s], X));
                    unit(std::abs(phi_state(T.conj[s], Mat::Identity(d, d)) - 1.0));
                    // phi_U is the normalized trace exactly when rho_U = 1
                    if (max_abs(Mat(T.conj[s].rho - Mat::Identity(d, d))) > tol) {
                        kac = false;
                        continue;
                    }
                    tr(std::abs(phi_state(T.conj[s], X) - X.trace() / double(d)));
                }
                st.report.add("phi_invariant", inv.v, tol).sampled = true;
                st.report.add("phi_unital", unit.v, tol);
                if (kac) st.report.add("phi_normalized_trace", tr.v, tol).sampled = true;
            }
            HarmonicSpace H = harmonic_space(D, M, tol);
            st.report.merge(H.report, "harmonic ");
            st.dims["harmonic"] = int(H.basis.cols());
            st.dims["certified_dim"] = H.certified_dim;
            st.values["level2"] = D.level2;
            st.values["harmonic_exact"] = H.exact;
            CesaroData C = cesaro_projection(M, tol);
            st.report.merge(C.report, "cesaro ");
            st.dims["peripheral"] = int(C.peripheral.size());
            if (p.value("composition", false)) {
                MaxAcc acc;
                for (int s = 0; s < T.size(); ++s)
                    for (int t = 0; t < T.size(); ++t) {
                        Measure a = delta_measure(T, s), b = delta_measure(T, t);
                        MarkovOperator Pa = markov_operator(D, a), Pb = markov_operator(D, b);
                        MarkovOperator Pab = markov_operator(D, convolve(*G, a, b));
                        acc(max_abs(Mat(Pa.P * Pb.P - Pab.P)));
                    }
                st.report.add("composition", acc.v, p.value("composition_tol", tol)).evaluated = long(T.size()) * T.size();
            }
            if (p.value("nat_harmonic", false)) {
                json nd = json::array();
                for (int s = 0; s < T.size(); ++s)
                    nd.push_back(nat_harmonic(*G, mu, T.irreps[s], T.irreps[s], dual_layout(D).blocks).dimension);
                st.dims["nat_harmonic"] = nd;
            }
        };

        ops_["poisson_pictures"] = [this](const json& p, StepResult& st) {
            QG G = group_of(p);
            const IrrepTable& T = G->table;
            double tol = tol_of(p);
            RegularYDAlgebra D = dual_yd(G, level2_of(p, *G));
            Measure mu = measure_of(p, T);
            MarkovOperator M = markov_operator(D, mu);
            st.report.seed = seed_of(p);
            for (int v : labels_of(p, "objects", T)) {
                ValidationReport r = picture_report(D, M, mu, T.irreps[v], tol);
                st.report.merge(r, T.labels[v] + " ");
            }
            st.dims["dual_dim"] = D.dim;
            st.dims["certified_dim"] = M.certified_dim;
        };

        // re-runs scenario files twice with fresh runners and compares runtime-free reports
        ops_["determinism"] = [this](const json& p, StepResult& st) {
            json files = p.value("scenarios", json::array());
            int same = 0, total = 0;
            for (const auto& f : files) {
                std::string file = resolve(f.get<std::string>());
                std::string a, b;
                for (int run = 0; run < 2; ++run) {
                    ScenarioRunner R;
                    R.seed_override = seed_override;
                    std::string out = scenario_to_json(R.run_file(file), false).dump();
                    (run == 0 ? a : b) = out;
                }
                ++total;
                if (a == b) ++same;
                else st.report.notes.push_back("report differs between runs: " + f.get<std::string>());
            }
            st.report.seed = seed_of(p);
            st.report.add("identical_reports", double(total - same), 0.0).evaluated = total;
            st.dims["scenarios"] = total;
        };
    }
};

}  // namespace ydcat

#endif

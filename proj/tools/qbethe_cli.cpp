#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>

#include <CLI11.hpp>
#include <json.hpp>

#include "qbethe/kernels.hpp"
#include "qbethe/report.hpp"
#include "qbethe/sampling.hpp"
#include "qbethe/scalar_product.hpp"

using namespace qbethe;
using nlohmann::json;

namespace {

struct GlobalOpts {
    std::string backend = "rational";
    uint64_t seed = 0;
    std::string json_out;
};

bool is_float(const GlobalOpts& g) { return g.backend == "float"; }

Scalar maybe_float(const Scalar& s, const GlobalOpts& g) {
    return is_float(g) ? s.to_float_backend() : s;
}

json scalar_json(const Scalar& s) {
    if (s.is_rational()) return s.str();
    auto z = s.cplx();
    return json::array({z.real(), z.imag()});
}

Scalar parse_scalar(const std::string& text, const GlobalOpts& g) {
    return maybe_float(Scalar::from_string(text), g);
}

// Seeded chain: q and inhomogeneities drawn unless given explicitly. Draws are
// always performed on the rational backend so that a seed fully determines the
// sampled values; the float backend only re-tags them.
struct ChainArgs {
    std::string q_text;
    std::vector<std::string> xi_text;
    int sites = 1;

    ChainSpec build(Rng& rng, const GlobalOpts& g) const {
        Scalar q;
        if (!q_text.empty()) {
            q = parse_scalar(q_text, g);
        } else {
            Scalar qq = random_rational(rng);
            while (qq == Scalar(1) || qq == Scalar(-1) || qq.is_zero())
                qq = random_rational(rng);
            q = maybe_float(qq, g);
        }
        std::vector<Scalar> xi;
        if (!xi_text.empty()) {
            for (const auto& s : xi_text) xi.push_back(parse_scalar(s, g));
        } else {
            std::vector<Scalar> avoid;
            for (int i = 0; i < sites; ++i) {
                Scalar c = random_parameter(rng, Scalar(2), avoid);
                avoid.push_back(c);
                xi.push_back(maybe_float(c, g));
            }
        }
        return ChainSpec(q, xi);
    }
};

BetheParams draw_family(Rng& rng, int a, int b, const GlobalOpts& g,
                        std::vector<Scalar>& avoid) {
    BetheParams p;
    for (int i = 0; i < a + b; ++i) {
        Scalar c = random_parameter(rng, Scalar(2), avoid);
        avoid.push_back(c);
        (i < a ? p.first : p.second).push_back(maybe_float(c, g));
    }
    return p;
}

void emit(const GlobalOpts& g, const json& doc) {
    std::string text = doc.dump(2);
    if (!g.json_out.empty()) {
        std::ofstream out(g.json_out);
        out << text << "\n";
    }
    std::cout << text << "\n";
}

json state_vector_json(const StateVector& v) {
    json entries = json::object();
    for (const auto& [idx, val] : v.entries()) entries[std::to_string(idx)] = scalar_json(val);
    return json{{"legs", v.shape().legs}, {"entries", entries}};
}

bool residual_ok(const Scalar& r, const GlobalOpts& g) {
    return is_float(g) ? r.abs_double() <= 1e-9 : r.is_zero();
}

int run_verify(const GlobalOpts& g, const std::string& suite, int sites, int n, int count) {
    Rng rng(g.seed);
    SuiteReport report;
    report.suite = suite;
    auto timed = [&](const std::string& name, auto&& fn) {
        auto t0 = std::chrono::steady_clock::now();
        CheckResult c;
        c.name = name;
        try {
            Scalar r = fn();
            c.residual = r.str();
            c.pass = residual_ok(r, g);
        } catch (const Error& e) {
            c.residual = e.what();
            c.pass = false;
        }
        c.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
        report.checks.push_back(std::move(c));
    };

    auto chain_for = [&](int N) {
        ChainArgs ca;
        ca.sites = N;
        return ca.build(rng, g);
    };
    bool all = suite == "all";

    if (all || suite == "ybe") {
        for (int i = 0; i < count; ++i) {
            Scalar q = random_rational(rng);
            if (q == Scalar(1) || q == Scalar(-1) || q.is_zero()) q = Scalar(5, 3);
            std::vector<Scalar> avoid;
            Scalar u = random_parameter(rng, q, avoid);
            avoid.push_back(u);
            Scalar v = random_parameter(rng, q, avoid);
            avoid.push_back(v);
            Scalar w = random_parameter(rng, q, avoid);
            timed("ybe[" + std::to_string(i) + "]", [&] {
                return check_yang_baxter(maybe_float(q, g), maybe_float(u, g),
                                         maybe_float(v, g), maybe_float(w, g));
            });
        }
    }
    if (all || suite == "rtt") {
        for (int i = 0; i < count; ++i) {
            ChainSpec chain = chain_for(sites);
            std::vector<Scalar> avoid;
            for (const auto& x : chain.xi)
                if (x.is_rational()) avoid.push_back(x);
            Scalar u = random_parameter(rng, Scalar(2), avoid);
            avoid.push_back(u);
            Scalar v = random_parameter(rng, Scalar(2), avoid);
            timed("rtt[N=" + std::to_string(sites) + "," + std::to_string(i) + "]", [&] {
                return check_rtt(chain, maybe_float(u, g), maybe_float(v, g));
            });
        }
    }
    if (all || suite == "singular") {
        ChainSpec chain = chain_for(sites);
        WeightFunctions wf = weight_functions(chain);
        StateVector vac = StateVector::basis(TensorShape{sites}, 0, chain.backend());
        std::vector<int> qlegs(sites);
        std::iota(qlegs.begin(), qlegs.end(), 1);
        for (int i = 0; i < count; ++i) {
            std::vector<Scalar> avoid;
            for (const auto& x : chain.xi)
                if (x.is_rational()) avoid.push_back(x);
            Scalar z = maybe_float(random_parameter(rng, Scalar(2), avoid), g);
            timed("singular[z#" + std::to_string(i) + "]", [&] {
                MonodromyMatrix T = monodromy(chain, z);
                Scalar worst = Scalar::zero(chain.backend());
                auto bump = [&](const StateVector& d) {
                    for (const auto& [k, val] : d.entries()) {
                        Scalar aa = val.abs_scalar();
                        if (aa.abs_double() > worst.abs_double()) worst = aa;
                    }
                };
                for (int r = 1; r <= 3; ++r)
                    for (int c = 1; c <= 3; ++c) {
                        StateVector out = apply_on_legs(T[r - 1][c - 1], qlegs, vac);
                        StateVector outl =
                            apply_on_legs(T[r - 1][c - 1].transpose(), qlegs, vac);
                        if (r > c) bump(out);
                        if (r < c) bump(outl);
                        if (r == c) {
                            bump(out + vac.scaled(-wf.lambda(r, z)));
                            bump(outl + vac.scaled(-wf.mu(r, z)));
                        }
                    }
                return worst;
            });
        }
    }
    if (all || suite == "gauss") {
        ChainSpec chain = chain_for(sites);
        for (int i = 0; i < count; ++i) {
            std::vector<Scalar> avoid;
            for (const auto& x : chain.xi)
                if (x.is_rational()) avoid.push_back(x);
            Scalar z = maybe_float(random_parameter(rng, Scalar(2), avoid), g);
            timed("gauss[z#" + std::to_string(i) + "]", [&] {
                GaussDecomposition gd = gauss_decompose(chain, z);
                MonodromyMatrix T = monodromy(chain, z);
                MonodromyMatrix R = gd.recompose(TensorShape{chain.sites}, chain.backend());
                Scalar worst = Scalar::zero(chain.backend());
                for (int r = 0; r < 3; ++r)
                    for (int c = 0; c < 3; ++c) {
                        Scalar m = (T[r][c] - R[r][c]).max_abs_scalar(chain.backend());
                        if (m.abs_double() > worst.abs_double()) worst = m;
                    }
                return worst;
            });
        }
    }
    if (all || suite == "kernels") {
        for (int i = 0; i < count; ++i) {
            Scalar q(2);
            std::vector<Scalar> avoid;
            std::vector<Scalar> t, x;
            for (int k = 0; k < n; ++k) {
                Scalar c = random_parameter(rng, q, avoid);
                avoid.push_back(c);
                t.push_back(maybe_float(c, g));
            }
            for (int k = 0; k < n; ++k) {
                Scalar c = random_parameter(rng, q, avoid);
                avoid.push_back(c);
                x.push_back(maybe_float(c, g));
            }
            Scalar qf = maybe_float(q, g);
            timed("y-two-forms[" + std::to_string(i) + "]", [&] {
                return (kernel_Y(qf, t, x) - kernel_Y_alt(qf, t, x)).abs_scalar();
            });
            std::vector<int> w(n), wp(n);
            std::iota(w.begin(), w.end(), 0);
            std::iota(wp.begin(), wp.end(), 0);
            for (int k = n - 1; k > 0; --k) {
                std::swap(w[k], w[rng.below(k + 1)]);
                std::swap(wp[k], wp[rng.below(k + 1)]);
            }
            timed("exchange[" + std::to_string(i) + "]", [&] {
                return check_exchange_identity(qf, t, x, w, wp);
            });
        }
    }
    if (all || suite == "izergin") {
        for (int i = 0; i < count; ++i) {
            Scalar q(3, 2);
            std::vector<Scalar> avoid;
            std::vector<Scalar> t, x;
            for (int k = 0; k < n; ++k) {
                Scalar c = random_parameter(rng, q, avoid);
                avoid.push_back(c);
                t.push_back(maybe_float(c, g));
            }
            for (int k = 0; k < n; ++k) {
                Scalar c = random_parameter(rng, q, avoid);
                avoid.push_back(c);
                x.push_back(maybe_float(c, g));
            }
            timed("izergin[n=" + std::to_string(n) + "," + std::to_string(i) + "]",
                  [&] { return check_izergin_identity(maybe_float(q, g), t, x); });
        }
    }
    if (report.checks.empty()) {
        std::cerr << "ConfigError: unknown suite '" << suite << "'\n";
        return 2;
    }

    emit(g, json::parse(report.to_json()));
    return report.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact scalar products of nested Bethe vectors for the "
                 "q-deformed gl3 chain"};
    app.require_subcommand(1);

    GlobalOpts g;
    std::string config_path;
    app.add_option("--backend", g.backend, "rational | float")
        ->check(CLI::IsMember({"rational", "float"}));
    app.add_option("--seed", g.seed, "PRNG seed (splitmix64)");
    app.add_option("--config", config_path, "JSON config file; flags override");
    app.add_option("--json-out", g.json_out, "write the JSON report to this path");

    auto* verify = app.add_subcommand("verify", "run identity suites");
    std::string suite = "all";
    int v_sites = 2, v_n = 3, v_count = 5;
    verify->add_option("--suite", suite, "ybe|rtt|singular|gauss|kernels|izergin|all");
    verify->add_option("--N", v_sites, "chain length for rtt/singular/gauss");
    verify->add_option("--n", v_n, "family size for kernels/izergin");
    verify->add_option("--count", v_count, "checks per suite");

    auto* bethe = app.add_subcommand("bethe", "dump an off-shell Bethe vector");
    auto* dual = app.add_subcommand("dual", "dump a dual Bethe vector");
    int a = 1, b = 0, sites = 1;
    std::string q_text;
    std::vector<std::string> xi_text, t_text, s_text;
    for (auto* cmd : {bethe, dual}) {
        cmd->add_option("--a", a, "number of first-level parameters");
        cmd->add_option("--b", b, "number of second-level parameters");
        cmd->add_option("--N", sites, "chain length");
        cmd->add_option("--q", q_text, "deformation parameter, e.g. 3/2");
        cmd->add_option("--xi", xi_text, "inhomogeneities");
        cmd->add_option("--t", t_text, "explicit first-level parameters");
        cmd->add_option("--s", s_text, "explicit second-level parameters");
    }

    auto* scalar = app.add_subcommand("scalar", "compare direct and kernel scalar products");
    std::string method = "both";
    bool descending = false;
    scalar->add_option("--a", a, "first-level family size");
    scalar->add_option("--b", b, "second-level family size");
    scalar->add_option("--N", sites, "chain length");
    scalar->add_option("--method", method, "direct | kernel | both")
        ->check(CLI::IsMember({"direct", "kernel", "both"}));
    scalar->add_option("--q", q_text, "deformation parameter");
    scalar->add_option("--xi", xi_text, "inhomogeneities");
    scalar->add_flag("--descending", descending,
                     "diagnostic: eliminate within families in descending order");

    auto* izergin = app.add_subcommand("izergin", "Izergin determinant and identity residual");
    int iz_n = 2;
    izergin->add_option("--n", iz_n, "family size");
    auto* kernels = app.add_subcommand("kernels", "evaluate Y/Z/K_E/K_F at a random point");
    std::string which = "KF";
    kernels->add_option("--which", which, "Y|Z|KE|KF")
        ->check(CLI::IsMember({"Y", "Z", "KE", "KF"}));
    kernels->add_option("--a", a, "first-level family size");
    kernels->add_option("--b", b, "second-level family size");

    for (auto* cmd : {verify, bethe, dual, scalar, izergin, kernels}) cmd->fallthrough();

    // Config file pre-pass: values act as defaults, explicit flags win.
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "ConfigError: cannot open " << config_path << "\n";
            return 2;
        }
        try {
            json cfg = json::parse(in);
            if (cfg.contains("backend")) g.backend = cfg["backend"].get<std::string>();
            if (cfg.contains("seed")) g.seed = cfg["seed"].get<uint64_t>();
            if (cfg.contains("suite")) suite = cfg["suite"].get<std::string>();
            if (cfg.contains("N")) sites = v_sites = cfg["N"].get<int>();
            if (cfg.contains("n")) v_n = iz_n = cfg["n"].get<int>();
            if (cfg.contains("a")) a = cfg["a"].get<int>();
            if (cfg.contains("b")) b = cfg["b"].get<int>();
            if (cfg.contains("count")) v_count = cfg["count"].get<int>();
            if (cfg.contains("method")) method = cfg["method"].get<std::string>();
            if (cfg.contains("q")) q_text = cfg["q"].get<std::string>();
        } catch (const json::exception& e) {
            std::cerr << "ConfigError: " << e.what() << "\n";
            return 2;
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return run_verify(g, suite, v_sites, v_n, v_count);

        Rng rng(g.seed);
        if (bethe->parsed() || dual->parsed()) {
            ChainArgs ca{q_text, xi_text, sites};
            ChainSpec chain = ca.build(rng, g);
            std::vector<Scalar> avoid;
            for (const auto& x : chain.xi)
                if (x.is_rational()) avoid.push_back(x);
            BetheParams p;
            if (!t_text.empty() || !s_text.empty()) {
                for (const auto& s : t_text) p.first.push_back(parse_scalar(s, g));
                for (const auto& s : s_text) p.second.push_back(parse_scalar(s, g));
            } else {
                p = draw_family(rng, a, b, g, avoid);
            }
            StateVector v = bethe->parsed() ? bethe_vector(chain, p)
                                            : dual_bethe_vector(chain, p);
            json doc = state_vector_json(v);
            doc["q"] = scalar_json(chain.q);
            json xi = json::array();
            for (const auto& x : chain.xi) xi.push_back(scalar_json(x));
            doc["xi"] = xi;
            json tj = json::array(), sj = json::array();
            for (const auto& x : p.first) tj.push_back(scalar_json(x));
            for (const auto& x : p.second) sj.push_back(scalar_json(x));
            doc["t"] = tj;
            doc["s"] = sj;
            emit(g, doc);
            return 0;
        }
        if (scalar->parsed()) {
            ChainArgs ca{q_text, xi_text, sites};
            ChainSpec chain = ca.build(rng, g);
            std::vector<Scalar> avoid;
            for (const auto& x : chain.xi)
                if (x.is_rational()) avoid.push_back(x);
            BetheParams right = draw_family(rng, a, b, g, avoid);
            BetheParams left = draw_family(rng, a, b, g, avoid);
            ResidueConvention conv;
            conv.family_descending = descending;
            json doc;
            doc["a"] = a;
            doc["b"] = b;
            doc["N"] = sites;
            doc["seed"] = g.seed;
            if (method == "direct") {
                doc["direct"] = scalar_json(direct_scalar_product(chain, left, right));
                emit(g, doc);
                return 0;
            }
            if (method == "kernel") {
                doc["kernel"] = scalar_json(scalar_product_kernel(chain, left, right, conv));
                emit(g, doc);
                return 0;
            }
            CompareReport rep = compare_scalar_products(chain, left, right, conv);
            doc["direct"] = scalar_json(rep.direct);
            doc["kernel"] = scalar_json(rep.kernel);
            doc["normalization"] = scalar_json(rep.normalization);
            doc["pass"] = rep.pass;
            doc["residue_tree_nodes"] = rep.residue_tree_nodes;
            doc["elapsed_ms"] = rep.elapsed_ms;
            emit(g, doc);
            return rep.pass ? 0 : 1;
        }
        if (izergin->parsed()) {
            Scalar q(3, 2);
            std::vector<Scalar> avoid, t, x;
            for (int k = 0; k < iz_n; ++k) {
                Scalar c = random_parameter(rng, q, avoid);
                avoid.push_back(c);
                t.push_back(maybe_float(c, g));
            }
            for (int k = 0; k < iz_n; ++k) {
                Scalar c = random_parameter(rng, q, avoid);
                avoid.push_back(c);
                x.push_back(maybe_float(c, g));
            }
            Scalar qf = maybe_float(q, g);
            Scalar det = izergin_determinant(qf, t, x);
            Scalar resid = check_izergin_identity(qf, t, x);
            json doc;
            doc["n"] = iz_n;
            doc["determinant"] = scalar_json(det);
            doc["identity_residual"] = scalar_json(resid);
            doc["pass"] = residual_ok(resid, g);
            emit(g, doc);
            return residual_ok(resid, g) ? 0 : 1;
        }
        if (kernels->parsed()) {
            Scalar q(3, 2);
            std::vector<Scalar> avoid, t, s, x, y;
            auto take = [&](std::vector<Scalar>& fam, int n) {
                for (int k = 0; k < n; ++k) {
                    Scalar c = random_parameter(rng, q, avoid);
                    avoid.push_back(c);
                    fam.push_back(maybe_float(c, g));
                }
            };
            take(t, a);
            take(s, b);
            take(x, a);
            take(y, b);
            Scalar qf = maybe_float(q, g);
            Scalar val;
            if (which == "Y") val = kernel_Y(qf, t, x);
            else if (which == "Z") val = kernel_Z(qf, t, x);
            else if (which == "KE") val = kernel_KE(qf, t, s, x, y);
            else val = kernel_KF(qf, t, s, x, y);
            json doc;
            doc["which"] = which;
            doc["value"] = scalar_json(val);
            auto arr = [&](const std::vector<Scalar>& v) {
                json j = json::array();
                for (const auto& e : v) j.push_back(scalar_json(e));
                return j;
            };
            doc["t"] = arr(t);
            doc["s"] = arr(s);
            doc["x"] = arr(x);
            doc["y"] = arr(y);
            emit(g, doc);
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return e.code() == ErrorCode::ConfigError ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

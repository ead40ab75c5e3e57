// lunekit command line: generate bodies and gamma fields, compute metrics and
// polars, run the Wulff shape constructions, export meshes, and verify the
// property suites over the built-in generator families.
//
// Exit codes: 0 success, 1 property failure, 2 usage or schema error,
// 3 geometric precondition failure.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lunekit/generators.hpp"
#include "lunekit/io.hpp"
#include "lunekit/metrics.hpp"
#include "lunekit/polar.hpp"
#include "lunekit/wulff.hpp"

using json = nlohmann::ordered_json;
using namespace lunekit;

namespace {

struct GlobalOpts {
    double tol = 1e-9;
    double tol_sample = 1e-3;
    int samples = 2048;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "json";

    ToleranceConfig cfg() const {
        ToleranceConfig c;
        c.tol_angle = tol;
        c.tol_sample = tol_sample;
        c.boundary_samples = samples;
        c.seed = seed;
        c.validate();
        return c;
    }
};

void emit(const GlobalOpts& opts, const std::string& text) {
    if (!opts.out.empty()) {
        write_text_file(opts.out, text);
        return;
    }
    std::fwrite(text.data(), 1, text.size(), stdout);
    if (text.empty() || text.back() != '\n') std::fputc('\n', stdout);
}

SpherePoint north_pole(int dim) {
    Vec v = Vec::Zero(dim);
    v[dim - 1] = 1.0;
    return normalize(v);
}

Body load_body(const std::string& path, const ToleranceConfig& cfg) {
    return body_from_json(read_text_file(path), cfg);
}

GammaField load_gamma(const std::string& path) {
    const std::string text = read_text_file(path);
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0)
        return gamma_from_csv(text);
    return gamma_from_json(text);
}

std::string gamma_to_csv(const GammaField& g) {
    std::string out;
    char buf[64];
    for (size_t i = 0; i < g.directions.size(); ++i) {
        const Vec& d = g.directions[i].coords();
        for (int k = 0; k < d.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%.17g,", d[k]);
            out += buf;
        }
        std::snprintf(buf, sizeof buf, "%.17g\n", g.values[i]);
        out += buf;
    }
    return out;
}

json point_json(const SpherePoint& p) {
    json a = json::array();
    for (int k = 0; k < p.dim(); ++k) a.push_back(p.coords()[k]);
    return a;
}

json pair_json(const std::pair<SpherePoint, SpherePoint>& w) {
    return json::array({point_json(w.first), point_json(w.second)});
}

// ---------------------------------------------------------------------------
// verify: property suites over the generator families. Each suite reports the
// number of cases, the worst observed deviation, and a verdict; the first
// failing case is serialized as the counterexample.

struct SuiteResult {
    std::string name;
    int cases = 0;
    double worst = 0.0;
    bool pass = true;
    json counterexample;

    void record(bool ok, double deviation, const json& detail) {
        ++cases;
        worst = std::max(worst, deviation);
        if (!ok && pass) {
            pass = false;
            counterexample = detail;
        }
    }
};

struct NamedBody {
    std::string name;
    Body body;
    double tau = -1.0; // expected constant width, < 0 when not constant
};

std::vector<NamedBody> canonical_bodies(const ToleranceConfig& cfg) {
    std::vector<NamedBody> out;
    const double taus[] = {M_PI / 6, M_PI / 4, M_PI / 3, M_PI / 2, 2 * M_PI / 3};
    const char* tau_names[] = {"reuleaux-pi6", "reuleaux-pi4", "reuleaux-pi3",
                               "reuleaux-pi2", "reuleaux-2pi3"};
    for (int i = 0; i < 5; ++i)
        out.push_back({tau_names[i], gen_reuleaux(taus[i], cfg), taus[i]});
    out.push_back({"cap-pi8", gen_cap(north_pole(3), M_PI / 8, cfg), M_PI / 4});
    out.push_back({"cap-pi5", gen_cap(north_pole(3), M_PI / 5, cfg), 2 * M_PI / 5});
    out.push_back({"orthant-3", gen_orthant(3, cfg), M_PI / 2});
    out.push_back({"orthant-4", gen_orthant(4, cfg), M_PI / 2});
    return out;
}

Body random_body(int i, const ToleranceConfig& cfg) {
    return gen_random_polytope(3, 12, 0.6, mix_seed(cfg.seed, 0xabc0ULL + i), cfg);
}

SuiteResult suite_equivalence(const ToleranceConfig& cfg) {
    SuiteResult r{"equivalence"};
    const double ctol = 5.0 * cfg.tol_sample;
    auto run = [&](const std::string& name, const Body& b) {
        const auto eq = check_constancy_equivalence(b, ctol, cfg);
        double gap = 0.0;
        if (eq.constant_diameter.is_constant && eq.constant_width.is_constant)
            gap = std::abs(eq.constant_width.tau - eq.constant_diameter.tau);
        r.record(eq.pass, gap,
                 json{{"body", name},
                      {"report", json::parse(equivalence_report_to_json(eq))}});
    };
    for (const auto& nb : canonical_bodies(cfg)) run(nb.name, nb.body);
    for (int i = 0; i < 50; ++i)
        run("random-" + std::to_string(i), random_body(i, cfg));
    return r;
}

SuiteResult suite_support_centers(const ToleranceConfig& cfg) {
    SuiteResult r{"support-centers"};
    auto run = [&](const std::string& name, const Body& b, std::uint64_t seed) {
        const auto rep = check_polar_support_centers(b, 256, seed, cfg);
        r.record(rep.pass && rep.max_violation <= 1e-3, rep.max_violation,
                 json{{"body", name},
                      {"report", json::parse(boundary_duality_report_to_json(rep))}});
    };
    int tag = 0;
    for (const auto& nb : canonical_bodies(cfg))
        run(nb.name, nb.body, mix_seed(cfg.seed, 0x5c00ULL + tag++));
    for (int i = 0; i < 20; ++i)
        run("random-" + std::to_string(i), random_body(i, cfg),
            mix_seed(cfg.seed, 0x5c40ULL + i));
    return r;
}

SuiteResult suite_polar_width(const ToleranceConfig& cfg) {
    SuiteResult r{"polar-width"};
    for (const auto& nb : canonical_bodies(cfg)) {
        const Body polar = polar_body(nb.body, cfg);
        const double expected = M_PI - nb.tau;
        const double thick = thickness(polar, cfg).value.radians();
        const auto cw = is_constant_width(polar, 5.0 * cfg.tol_sample, cfg);
        const double dev =
            std::max(std::abs(thick - expected), std::abs(cw.tau - expected));
        r.record(cw.is_constant && dev <= 5e-3, dev,
                 json{{"body", nb.name},
                      {"expected", expected},
                      {"polar_thickness", thick},
                      {"polar_width_report",
                       json::parse(constancy_report_to_json(cw))}});
    }
    return r;
}

SuiteResult suite_polar_diameter(const ToleranceConfig& cfg) {
    SuiteResult r{"polar-diameter"};
    for (const auto& nb : canonical_bodies(cfg)) {
        const Body polar = polar_body(nb.body, cfg);
        const double expected = M_PI - nb.tau;
        const double diam = diameter(polar, cfg).value.radians();
        const auto cd = is_constant_diameter(polar, 5.0 * cfg.tol_sample, cfg);
        const double dev =
            std::max(std::abs(diam - expected), std::abs(cd.tau - expected));
        r.record(cd.is_constant && dev <= 5e-3, dev,
                 json{{"body", nb.name},
                      {"expected", expected},
                      {"polar_diameter", diam},
                      {"polar_diameter_report",
                       json::parse(constancy_report_to_json(cd))}});
    }
    return r;
}

SuiteResult suite_projection(const ToleranceConfig& cfg) {
    SuiteResult r{"projection"};
    auto run = [&](const std::string& name, const GammaField& g) {
        const auto rep = check_projection_diagram(g, 5e-3, cfg);
        r.record(rep.pass, rep.max_rel_discrepancy,
                 json{{"gamma", name},
                      {"report",
                       json::parse(projection_diagram_report_to_json(rep))}});
    };
    GammaParams gp;
    gp.grid = 400;
    run("constant-1", gen_gamma(GammaKind::constant, 3, gp, cfg.seed));
    run("cube", gen_gamma(GammaKind::axes, 3, gp, cfg.seed));
    GammaParams pp;
    pp.grid = 240;
    pp.amplitude = 0.3;
    for (int i = 0; i < 20; ++i)
        run("perturbed-" + std::to_string(i),
            gen_gamma(GammaKind::perturbed, 3, pp, mix_seed(cfg.seed, 0x9a00ULL + i)));
    return r;
}

SuiteResult suite_thickness_sums(const ToleranceConfig& cfg) {
    SuiteResult r{"thickness-sums"};
    for (const double c : {1.0, 0.5, 2.0}) {
        GammaParams gp;
        gp.grid = 1400;
        gp.value = c;
        const auto rep =
            thickness_sum_report(gen_gamma(GammaKind::constant, 3, gp, cfg.seed),
                                 1e-2, cfg);
        r.record(rep.pass, rep.max_error,
                 json{{"gamma_value", c},
                      {"report", json::parse(thickness_sum_report_to_json(rep))}});
    }
    return r;
}

SuiteResult suite_selfdual(const ToleranceConfig& cfg) {
    SuiteResult r{"selfdual"};
    GammaParams gp;
    gp.grid = 2000;
    const auto sd1 = check_self_dual(gen_gamma(GammaKind::constant, 3, gp, cfg.seed),
                                     5e-3, cfg);
    const double dev1 = std::abs(sd1.lift_width_tau - M_PI / 2);
    r.record(sd1.self_dual && dev1 <= 5e-3, dev1,
             json{{"gamma", "constant-1"},
                  {"report", json::parse(self_dual_report_to_json(sd1))}});

    GammaParams gp2 = gp;
    gp2.value = 2.0;
    const auto sd2 = check_self_dual(gen_gamma(GammaKind::constant, 3, gp2, cfg.seed),
                                     5e-3, cfg);
    const double dev2 = std::abs(sd2.lift_width_tau - 2.0 * std::atan(2.0));
    r.record(sd2.consistent && !sd2.self_dual && dev2 <= 5e-3, dev2,
             json{{"gamma", "constant-2"},
                  {"report", json::parse(self_dual_report_to_json(sd2))}});

    const auto sdc = check_self_dual(gen_gamma(GammaKind::axes, 3, gp, cfg.seed),
                                     5e-3, cfg);
    r.record(sdc.consistent && !sdc.self_dual, sdc.self_dual ? 1.0 : 0.0,
             json{{"gamma", "cube"},
                  {"report", json::parse(self_dual_report_to_json(sdc))}});
    return r;
}

int run_verify(const GlobalOpts& opts, const std::string& suite) {
    const ToleranceConfig cfg = opts.cfg();
    std::vector<SuiteResult> results;
    auto want = [&](const char* name) { return suite == "all" || suite == name; };
    if (want("equivalence")) results.push_back(suite_equivalence(cfg));
    if (want("support-centers")) results.push_back(suite_support_centers(cfg));
    if (want("polar-width")) results.push_back(suite_polar_width(cfg));
    if (want("polar-diameter")) results.push_back(suite_polar_diameter(cfg));
    if (want("projection")) results.push_back(suite_projection(cfg));
    if (want("thickness-sums")) results.push_back(suite_thickness_sums(cfg));
    if (want("selfdual")) results.push_back(suite_selfdual(cfg));

    bool all_pass = true;
    if (opts.format == "csv") {
        std::string table = "suite,cases,worst,pass\n";
        char buf[160];
        for (const auto& r : results) {
            std::snprintf(buf, sizeof buf, "%s,%d,%.17g,%d\n", r.name.c_str(),
                          r.cases, r.worst, r.pass ? 1 : 0);
            table += buf;
            all_pass = all_pass && r.pass;
        }
        emit(opts, table);
    } else {
        json out = json::array();
        for (const auto& r : results) {
            json jr{{"suite", r.name},
                    {"cases", r.cases},
                    {"worst", r.worst},
                    {"pass", r.pass}};
            if (!r.pass) jr["counterexample"] = r.counterexample;
            out.push_back(jr);
            all_pass = all_pass && r.pass;
        }
        emit(opts, out.dump(2));
    }
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    GlobalOpts opts;
    CLI::App app{"spherical convex bodies: metrics, polarity, Wulff shapes"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--tol", opts.tol, "angular predicate tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--tol-sample", opts.tol_sample, "sampling accuracy tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--samples", opts.samples, "boundary sample count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--seed", opts.seed, "seed for all randomized sampling")
        ->capture_default_str();
    app.add_option("--out", opts.out, "output file (default: standard output)");
    app.add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "off"}))
        ->capture_default_str();

    auto* gen = app.add_subcommand("gen", "generate a body or gamma field");
    gen->require_subcommand(1);
    double gen_tau = M_PI / 3, gen_radius = M_PI / 5, gen_spread = 0.5;
    int gen_dim = 3, gen_count = 12, gen_grid = 200;
    double gen_value = 1.0, gen_amplitude = 0.0;
    std::string gen_kind = "constant";
    auto* g_reu = gen->add_subcommand("reuleaux", "three-cap body of constant width tau");
    g_reu->add_option("--tau", gen_tau, "width in (0, pi)")->required();
    auto* g_cap = gen->add_subcommand("cap", "single cap at the north pole");
    g_cap->add_option("--radius", gen_radius, "radius in (0, pi/2]")->required();
    g_cap->add_option("--dim", gen_dim, "ambient dimension")->capture_default_str();
    auto* g_orth = gen->add_subcommand("orthant", "positive orthant polytope");
    g_orth->add_option("--dim", gen_dim, "ambient dimension")->capture_default_str();
    auto* g_rand = gen->add_subcommand("random", "hull of random points in a cap");
    g_rand->add_option("--dim", gen_dim, "ambient dimension")->capture_default_str();
    g_rand->add_option("--count", gen_count, "number of points")->capture_default_str();
    g_rand->add_option("--spread", gen_spread, "cap radius containing the points")
        ->capture_default_str();
    auto* g_gamma = gen->add_subcommand("gamma", "surface-energy field on a grid");
    g_gamma->add_option("--kind", gen_kind, "constant | perturbed | axes")
        ->check(CLI::IsMember({"constant", "perturbed", "axes"}))
        ->capture_default_str();
    g_gamma->add_option("--dim", gen_dim, "ambient dimension")->capture_default_str();
    g_gamma->add_option("--grid", gen_grid, "direction grid size")->capture_default_str();
    g_gamma->add_option("--value", gen_value, "base gamma value")->capture_default_str();
    g_gamma->add_option("--amplitude", gen_amplitude, "relative perturbation in [0, 1)")
        ->capture_default_str();

    std::string in_file;
    double constancy_tol = 0.0;
    auto* analyze = app.add_subcommand(
        "analyze", "diameter, thickness and constancy report for a body");
    analyze->add_option("file", in_file, "body JSON file")->required();
    analyze->add_option("--constancy-tol", constancy_tol,
                        "constancy decision tolerance (default 5 * tol-sample)");

    auto* polar = app.add_subcommand("polar", "spherical polar body");
    polar->add_option("file", in_file, "body JSON file")->required();

    auto* wulff = app.add_subcommand("wulff", "Wulff shape constructions");
    wulff->require_subcommand(1);
    std::string gamma_file;
    for (const char* sub : {"build", "dual", "lift", "selfdual", "projection", "sums"}) {
        auto* s = wulff->add_subcommand(
            sub, std::string("gamma file -> ") +
                     (std::string(sub) == "build"       ? "halfspace shape"
                      : std::string(sub) == "dual"      ? "dual shape at the field directions"
                      : std::string(sub) == "lift"      ? "spherical lift body"
                      : std::string(sub) == "selfdual"  ? "three-way self-duality report"
                      : std::string(sub) == "projection"? "dual-route agreement report"
                                                        : "width/diameter sum report"));
        s->add_option("file", gamma_file, "gamma JSON or CSV file")->required();
    }

    auto* exp = app.add_subcommand("export", "OFF boundary mesh of a 3-dimensional body");
    exp->add_option("file", in_file, "body JSON file")->required();

    auto* verify = app.add_subcommand("verify", "run a property suite");
    std::string suite = "all";
    verify
        ->add_option("suite", suite,
                     "all | equivalence | support-centers | polar-width | "
                     "polar-diameter | projection | thickness-sums | selfdual")
        ->check(CLI::IsMember({"all", "equivalence", "support-centers",
                               "polar-width", "polar-diameter", "projection",
                               "thickness-sums", "selfdual"}));

    try {
        app.parse(argc, argv);

        if (app.got_subcommand(gen)) {
            const ToleranceConfig cfg = opts.cfg();
            if (gen->got_subcommand(g_gamma)) {
                GammaKind kind = gen_kind == "constant"  ? GammaKind::constant
                                 : gen_kind == "perturbed" ? GammaKind::perturbed
                                                           : GammaKind::axes;
                GammaParams params;
                params.value = gen_value;
                params.amplitude = gen_amplitude;
                params.grid = gen_grid;
                const GammaField g = gen_gamma(kind, gen_dim, params, opts.seed);
                emit(opts, opts.format == "csv" ? gamma_to_csv(g) : gamma_to_json(g));
                return 0;
            }
            Body body = [&] {
                if (gen->got_subcommand(g_reu)) return gen_reuleaux(gen_tau, cfg);
                if (gen->got_subcommand(g_cap))
                    return gen_cap(north_pole(gen_dim), gen_radius, cfg);
                if (gen->got_subcommand(g_orth)) return gen_orthant(gen_dim, cfg);
                return gen_random_polytope(gen_dim, gen_count, gen_spread,
                                           opts.seed, cfg);
            }();
            emit(opts, body_to_json(body));
            return 0;
        }

        if (app.got_subcommand(analyze)) {
            const ToleranceConfig cfg = opts.cfg();
            const double ctol =
                constancy_tol > 0.0 ? constancy_tol : 5.0 * cfg.tol_sample;
            const Body body = load_body(in_file, cfg);
            const WidthReport diam = diameter(body, cfg);
            const WidthReport thick = thickness(body, cfg);
            const auto eq = check_constancy_equivalence(body, ctol, cfg);
            json report{
                {"diameter", diam.value.radians()},
                {"thickness", thick.value.radians()},
                {"constant_width",
                 json::parse(constancy_report_to_json(eq.constant_width))},
                {"constant_diameter",
                 json::parse(constancy_report_to_json(eq.constant_diameter))},
                {"equivalence_pass", eq.pass},
                {"witnesses",
                 json{{"diameter_pair", pair_json(diam.witness_pair)},
                      {"thickness_pair", pair_json(thick.witness_pair)}}},
                {"equivalence", json::parse(equivalence_report_to_json(eq))}};
            if (opts.format == "csv") {
                char buf[160];
                std::string table = "metric,value\n";
                auto row = [&](const char* k, double v) {
                    std::snprintf(buf, sizeof buf, "%s,%.17g\n", k, v);
                    table += buf;
                };
                row("diameter", diam.value.radians());
                row("thickness", thick.value.radians());
                row("constant_width", eq.constant_width.is_constant ? 1 : 0);
                row("constant_diameter", eq.constant_diameter.is_constant ? 1 : 0);
                row("equivalence_pass", eq.pass ? 1 : 0);
                emit(opts, table);
            } else {
                emit(opts, report.dump(2));
            }
            return eq.pass ? 0 : 1;
        }

        if (app.got_subcommand(polar)) {
            const ToleranceConfig cfg = opts.cfg();
            emit(opts, body_to_json(polar_body(load_body(in_file, cfg), cfg)));
            return 0;
        }

        if (app.got_subcommand(wulff)) {
            const ToleranceConfig cfg = opts.cfg();
            const GammaField g = load_gamma(gamma_file);
            if (wulff->got_subcommand("build")) {
                emit(opts, wulff_to_json(build_wulff(g)));
                return 0;
            }
            if (wulff->got_subcommand("dual")) {
                emit(opts, wulff_to_json(dual_wulff(build_wulff(g), g.directions)));
                return 0;
            }
            if (wulff->got_subcommand("lift")) {
                emit(opts, body_to_json(Body(spherical_wulff(build_wulff(g), cfg))));
                return 0;
            }
            if (wulff->got_subcommand("selfdual")) {
                const auto rep = check_self_dual(g, 5e-3, cfg);
                emit(opts, self_dual_report_to_json(rep));
                return rep.consistent ? 0 : 1;
            }
            if (wulff->got_subcommand("projection")) {
                const auto rep = check_projection_diagram(g, 5e-3, cfg);
                emit(opts, projection_diagram_report_to_json(rep));
                return rep.pass ? 0 : 1;
            }
            const auto rep = thickness_sum_report(g, 1e-2, cfg);
            emit(opts, thickness_sum_report_to_json(rep));
            return rep.pass ? 0 : 1;
        }

        if (app.got_subcommand(exp)) {
            const ToleranceConfig cfg = opts.cfg();
            const Body body = load_body(in_file, cfg);
            if (body.dim() != 3)
                throw std::invalid_argument(
                    "OFF export requires a 3-dimensional body");
            emit(opts, export_off(body, opts.samples, opts.seed, cfg));
            return 0;
        }

        return run_verify(opts, suite);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const SchemaError& e) {
        std::fprintf(stderr, "schema error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const GeometryError& e) {
        std::fprintf(stderr, "geometry error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

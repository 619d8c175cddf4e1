#include "convval/cli_driver.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <unistd.h>

#include "CLI11.hpp"

#include "convval/conjugate.hpp"
#include "convval/function_spec.hpp"
#include "convval/report_io.hpp"
#include "convval/valuations.hpp"

namespace convval {
namespace {

bool use_color() {
    if (std::getenv("NO_COLOR") != nullptr) return false;
    return isatty(1) != 0;
}

std::string passfail(bool ok) {
    if (!use_color()) return ok ? "pass" : "FAIL";
    return ok ? "\033[32mpass\033[0m" : "\033[31mFAIL\033[0m";
}

// --fn/--density arguments take inline JSON or a path to a JSON file
nlohmann::json load_json_arg(const std::string& arg, const char* what) {
    std::string trimmed = arg;
    size_t a = trimmed.find_first_not_of(" \t\n");
    if (a != std::string::npos && (trimmed[a] == '{' || trimmed[a] == '['))
        return nlohmann::json::parse(trimmed);
    std::ifstream is(arg);
    if (!is) throw std::invalid_argument(std::string(what) + ": cannot open " + arg);
    return nlohmann::json::parse(is);
}

std::string fmt_vec_out(const Vec& v) {
    std::ostringstream os;
    os.precision(12);
    os << "(";
    for (int i = 0; i < v.n; ++i) os << (i ? ", " : "") << v[i];
    os << ")";
    return os.str();
}

int cmd_verify(const std::string& config_path, const std::string& only, bool have_seed,
               uint64_t seed, const std::string& out_dir) {
    std::ifstream is(config_path);
    if (!is) throw std::invalid_argument("verify: cannot open config " + config_path);
    nlohmann::json raw = nlohmann::json::parse(is);
    RunConfig cfg = parse_run_config(raw);
    if (!only.empty()) {
        const auto& names = suite_names();
        if (std::find(names.begin(), names.end(), only) == names.end())
            throw std::invalid_argument("verify: unknown suite '" + only + "'");
        cfg.suites = {only};
    }
    if (have_seed) cfg.seed = seed;
    if (!out_dir.empty()) cfg.output_path = out_dir;

    std::vector<std::string> suites = cfg.suites.empty() ? suite_names() : cfg.suites;
    std::filesystem::create_directories(cfg.output_path);
    std::string stamp = iso_timestamp_now();

    std::printf("%-24s %7s %14s %12s  %s\n", "suite", "cases", "max residual", "tolerance",
                "status");
    bool all_pass = true;
    for (const auto& name : suites) {
        PropertyReport rep = run_suite(name, cfg);
        all_pass = all_pass && rep.pass;
        std::string path = cfg.output_path + "/" + name;
        if (cfg.output_format == "csv") {
            write_text_file(path + ".csv", report_to_csv(rep, cfg.seed, stamp));
        } else {
            write_text_file(path + ".json", report_to_json(rep, cfg.seed, stamp).dump(2) + "\n");
        }
        std::printf("%-24s %7d %14.6g %12.4g  %s\n", rep.suite.c_str(), rep.case_count,
                    rep.max_residual, rep.tolerance, passfail(rep.pass).c_str());
    }
    std::printf("reports written to %s\n", cfg.output_path.c_str());
    return all_pass ? 0 : 1;
}

int cmd_steiner(const std::string& fn_arg, const std::string& density_arg,
                const std::vector<double>& r_values, const std::string& csv_path, int res) {
    FunctionSpec spec = parse_function_spec(load_json_arg(fn_arg, "--fn"));
    RadialDensity alpha = parse_density_spec(load_json_arg(density_arg, "--density"));
    if (alpha.kind != DensityKind::alpha)
        throw std::invalid_argument("steiner: the expansion takes an alpha-kind density");
    std::vector<double> rv = r_values.empty() ? default_r_values(spec.dim) : r_values;
    GridFunction f = sample_spec(spec, res);
    SteinerExpansion exp = steiner_expand(f, alpha, rv);

    std::printf("fn: %s   density: %s   res=%d   n=%d\n", describe(spec).c_str(),
                alpha.describe().c_str(), res, spec.dim);
    std::printf("fit residual %.3e, condition %.3e%s\n", exp.fit_residual, exp.condition,
                exp.ill_conditioned ? "  (ill-conditioned)" : "");
    bool consistent = !exp.ill_conditioned;
    for (size_t k = 0; k < exp.coefficients.size(); ++k) {
        const auto& part = exp.attributed[k];
        std::string attr;
        if (part.has_z) attr += "z_{" + std::to_string(spec.dim - (int)k + 1) + "}";
        if (part.has_z && part.has_t) attr += " + ";
        if (part.has_t) attr += "t_{" + std::to_string(spec.dim - (int)k + 1) + "}";
        if (attr.empty()) attr = "-";
        double cross = exp.cross_residual[k];
        if (!(cross <= part.budget)) consistent = false;
        std::printf("  r^%zu  coef %s   parts [%s] %s   |coef-parts| %.3e (budget %.3e)\n", k,
                    fmt_vec_out(exp.coefficients[k]).c_str(), attr.c_str(),
                    fmt_vec_out(part.total).c_str(), cross, part.budget);
    }
    std::printf("attribution %s\n", consistent ? "consistent" : "EXCEEDS BUDGET");

    if (!csv_path.empty()) {
        std::string csv = "r";
        for (int c = 0; c < spec.dim; ++c) csv += ",m_" + std::to_string(c);
        csv += "\r\n";
        std::ostringstream os;
        os.precision(17);
        for (size_t i = 0; i < exp.r_values.size(); ++i) {
            os.str("");
            os << exp.r_values[i];
            for (int c = 0; c < spec.dim; ++c) os << "," << exp.samples[i][c];
            csv += os.str() + "\r\n";
        }
        write_text_file(csv_path, csv);
        std::printf("samples written to %s\n", csv_path.c_str());
    }
    return 0;
}

int cmd_conjugate(const std::string& fn_arg, const std::string& out_path, int res) {
    FunctionSpec spec = parse_function_spec(load_json_arg(fn_arg, "--fn"));
    nlohmann::ordered_json doc;
    if (spec_is_max_affine(spec)) {
        DualCellComplex C = conjugate_max_affine(to_max_affine(spec));
        doc["kind"] = "complex";
        doc["dim"] = C.dim;
        doc["domain"] = nlohmann::ordered_json::array();
        for (const auto& v : C.domain.verts) {
            nlohmann::ordered_json jv = nlohmann::ordered_json::array();
            for (int a = 0; a < C.dim; ++a) jv.push_back(v[a]);
            doc["domain"].push_back(jv);
        }
        doc["cells"] = nlohmann::ordered_json::array();
        for (const auto& cell : C.cells) {
            nlohmann::ordered_json jc;
            nlohmann::ordered_json gx = nlohmann::ordered_json::array();
            for (int a = 0; a < C.dim; ++a) gx.push_back(cell.x[a]);
            jc["gradient"] = gx;
            jc["value"] = cell.value;
            jc["mass"] = volume(cell.cell);
            Vec mom = moment_vector(cell.cell);
            nlohmann::ordered_json jm = nlohmann::ordered_json::array();
            for (int a = 0; a < C.dim; ++a) jm.push_back(mom[a]);
            jc["cell_moment"] = jm;
            jc["vertices"] = nlohmann::ordered_json::array();
            for (const auto& v : cell.cell.verts) {
                nlohmann::ordered_json jv = nlohmann::ordered_json::array();
                for (int a = 0; a < C.dim; ++a) jv.push_back(v[a]);
                jc["vertices"].push_back(jv);
            }
            doc["cells"].push_back(jc);
        }
    } else {
        GridFunction f = sample_spec(spec, res);
        GridFunction g = conjugate_grid(f);
        doc["kind"] = "grid";
        doc["dim"] = g.dim;
        doc["lo"] = nlohmann::ordered_json::array();
        doc["hi"] = nlohmann::ordered_json::array();
        doc["res"] = nlohmann::ordered_json::array();
        for (int a = 0; a < g.dim; ++a) {
            doc["lo"].push_back(g.lo[a]);
            doc["hi"].push_back(g.hi[a]);
            doc["res"].push_back(g.res[a]);
        }
        doc["values"] = g.values;
    }
    std::string text = doc.dump(2) + "\n";
    if (out_path.empty())
        std::fputs(text.c_str(), stdout);
    else {
        write_text_file(out_path, text);
        std::printf("conjugate written to %s\n", out_path.c_str());
    }
    return 0;
}

} // namespace

RunConfig parse_run_config(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
    static const std::set<std::string> known_keys = {"dims",        "suites",      "operators",
                                                     "densities",   "resolutions", "seed",
                                                     "tolerances",  "output"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known_keys.count(it.key()))
            throw std::invalid_argument("config: unknown key '" + it.key() + "'");

    RunConfig cfg;
    if (j.contains("dims")) {
        if (!j["dims"].is_array() || j["dims"].empty())
            throw std::invalid_argument("config: dims must be a non-empty array");
        cfg.dims.clear();
        for (const auto& d : j["dims"]) {
            if (!d.is_number_integer())
                throw std::invalid_argument("config: dims entries must be integers");
            int n = d.get<int>();
            if (n < 1 || n > 3)
                throw std::invalid_argument("config: dims must lie in {1,2,3}, got " +
                                            std::to_string(n));
            cfg.dims.push_back(n);
        }
    }
    if (j.contains("suites")) {
        const auto& names = suite_names();
        for (const auto& s : j["suites"]) {
            std::string name = s.get<std::string>();
            if (std::find(names.begin(), names.end(), name) == names.end())
                throw std::invalid_argument("config: unknown suite '" + name + "'");
            cfg.suites.push_back(name);
        }
    }
    if (j.contains("operators")) {
        static const std::set<std::string> fams = {"m_alpha", "t_j_xi", "z_j_alpha", "V_j_alpha",
                                                   "so2_variant"};
        for (const auto& o : j["operators"]) {
            OperatorChoice c;
            if (o.is_string()) {
                c.family = o.get<std::string>();
            } else if (o.is_object()) {
                if (!o.contains("family"))
                    throw std::invalid_argument("config: operator entry needs 'family'");
                c.family = o["family"].get<std::string>();
                c.j = o.value("j", -1);
            } else {
                throw std::invalid_argument("config: operator entries are strings or objects");
            }
            if (!fams.count(c.family))
                throw std::invalid_argument("config: unknown operator family '" + c.family + "'");
            if (c.j < -1 || c.j > 3)
                throw std::invalid_argument("config: operator degree j out of range");
            cfg.operators.push_back(c);
        }
    }
    if (j.contains("densities")) {
        for (const auto& d : j["densities"]) cfg.densities.push_back(parse_density_spec(d));
    }
    if (j.contains("resolutions")) {
        if (!j["resolutions"].is_array() || j["resolutions"].empty())
            throw std::invalid_argument("config: resolutions must be a non-empty array");
        cfg.resolutions.clear();
        for (const auto& r : j["resolutions"]) {
            if (!r.is_number_integer())
                throw std::invalid_argument("config: resolutions must be integers");
            int n = r.get<int>();
            if (n < 33 || n % 2 == 0)
                throw std::invalid_argument("config: resolutions must be odd and >= 33, got " +
                                            std::to_string(n));
            cfg.resolutions.push_back(n);
        }
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer())
            throw std::invalid_argument("config: seed must be an integer");
        if (!j["seed"].is_number_unsigned() && j["seed"].get<int64_t>() < 0)
            throw std::invalid_argument("config: seed must be non-negative");
        cfg.seed = j["seed"].get<uint64_t>();
    }
    if (j.contains("tolerances")) {
        if (!j["tolerances"].is_object())
            throw std::invalid_argument("config: tolerances must be an object");
        const auto& names = suite_names();
        for (auto it = j["tolerances"].begin(); it != j["tolerances"].end(); ++it) {
            if (std::find(names.begin(), names.end(), it.key()) == names.end())
                throw std::invalid_argument("config: tolerance for unknown suite '" + it.key() +
                                            "'");
            double v = it.value().get<double>();
            if (!(v >= 0.0))
                throw std::invalid_argument("config: tolerances must be >= 0");
            cfg.tolerances[it.key()] = v;
        }
    }
    if (j.contains("output")) {
        const auto& o = j["output"];
        if (!o.is_object()) throw std::invalid_argument("config: output must be an object");
        cfg.output_path = o.value("path", std::string("reports"));
        cfg.output_format = o.value("format", std::string("json"));
        if (cfg.output_format != "json" && cfg.output_format != "csv")
            throw std::invalid_argument("config: output format must be 'json' or 'csv'");
    }
    return cfg;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"vector-valued valuations on convex functions: property harness and tools"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "run property suites from a config");
    std::string config_path, only, out_dir;
    uint64_t seed = 0;
    verify->add_option("--config", config_path, "path to JSON run config")->required();
    verify->add_option("--only", only, "run a single suite");
    auto* seed_opt = verify->add_option("--seed", seed, "override the config seed");
    verify->add_option("--out", out_dir, "override the report directory");

    auto* steiner = app.add_subcommand("steiner", "expand r -> m(v + r q) and attribute");
    std::string fn_arg, density_arg, csv_path;
    std::vector<double> r_values;
    int res = 65;
    steiner->add_option("--fn", fn_arg, "function spec (inline JSON or file)")->required();
    steiner->add_option("--density", density_arg, "alpha density spec (inline JSON or file)")
        ->required();
    steiner->add_option("--r-values", r_values, "expansion radii");
    steiner->add_option("--csv", csv_path, "write the sample table as CSV");
    steiner->add_option("--res", res, "grid resolution (odd, >= 33)");

    auto* conj = app.add_subcommand("conjugate", "Legendre-Fenchel conjugate of a spec");
    std::string cfn_arg, cout_path;
    int cres = 65;
    conj->add_option("--fn", cfn_arg, "function spec (inline JSON or file)")->required();
    conj->add_option("--out", cout_path, "output path (default stdout)");
    conj->add_option("--res", cres, "grid resolution for non-max-affine specs");

    try {
        app.parse(argc, argv);
        if (verify->parsed())
            return cmd_verify(config_path, only, seed_opt->count() > 0, seed, out_dir);
        if (steiner->parsed()) {
            if (res < 33 || res % 2 == 0)
                throw std::invalid_argument("steiner: --res must be odd and >= 33");
            return cmd_steiner(fn_arg, density_arg, r_values, csv_path, res);
        }
        if (cres < 33 || cres % 2 == 0)
            throw std::invalid_argument("conjugate: --res must be odd and >= 33");
        return cmd_conjugate(cfn_arg, cout_path, cres);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

} // namespace convval

#include "convval/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "convval/conjugate.hpp"

namespace convval {
namespace {

// every suite samples on [-2,2]^n; densities are checked against it downstream
constexpr double kBoxHalf = 2.0;

std::array<double, 3> box_lo() { return {-kBoxHalf, -kBoxHalf, -kBoxHalf}; }
std::array<double, 3> box_hi() { return {kBoxHalf, kBoxHalf, kBoxHalf}; }

std::array<int, 3> res_of(int dim, int r) {
    std::array<int, 3> a{1, 1, 1};
    for (int k = 0; k < dim; ++k) a[k] = r;
    return a;
}

double floor_for(double scale) { return 1e-12 * (1.0 + scale); }

std::string fmt_num(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

FunctionSpec::Term quad_term(double scale, const Vec& center) {
    FunctionSpec::Term t;
    t.kind = "quadratic";
    t.scale = scale;
    t.center = center;
    return t;
}

FunctionSpec::Term lin_term(const Vec& v, double c) {
    FunctionSpec::Term t;
    t.kind = "linear";
    t.vector = v;
    t.constant = c;
    return t;
}

FunctionSpec::Term ma_term(std::vector<MaxAffineFunction::Piece> pieces) {
    FunctionSpec::Term t;
    t.kind = "max_affine";
    t.pieces = std::move(pieces);
    return t;
}

// smooth family: strictly convex quadratic plus a tilt, centers kept small so
// gradients stay inside the density ball over its support
FunctionSpec random_smooth_spec(RandomStream& rs, int dim) {
    FunctionSpec s;
    s.dim = dim;
    s.terms.push_back(quad_term(rs.uniform(0.5, 1.5), rs.uniform_vec(dim, -0.3, 0.3)));
    s.terms.push_back(lin_term(rs.uniform_vec(dim, -0.4, 0.4), rs.uniform(-0.2, 0.2)));
    return s;
}

// ---------------------------------------------------------------- operators

struct OpInst {
    std::string family;
    int j = 0;
    RadialDensity density;
    std::string label;

    int degree(int dim) const {
        if (family == "m_alpha") return dim + 1;
        if (family == "z_j_alpha") return j + 1;
        return j; // t and V are j-homogeneous in the values
    }
};

VectorResult as_vec(const ScalarResult& r) {
    VectorResult out;
    out.value = vec1(r.value);
    out.error_estimate = r.error_estimate;
    out.pathway = r.pathway;
    out.mollified = r.mollified;
    return out;
}

VectorResult op_eval(const OpInst& op, const MaxAffineFunction& v) {
    if (op.family == "m_alpha") return m_alpha_star(v, op.density);
    if (op.family == "t_j_xi") return t_j_xi_star(v, op.density, op.j);
    if (op.family == "z_j_alpha") return z_j_alpha_star(v, op.density, op.j);
    return as_vec(V_j_alpha_star(v, op.density, op.j));
}

VectorResult op_eval(const OpInst& op, const GridFunction& f) {
    if (op.family == "m_alpha") return m_alpha_star(f, op.density);
    if (op.family == "t_j_xi") return t_j_xi_star(f, op.density, op.j);
    if (op.family == "z_j_alpha") return z_j_alpha_star(f, op.density, op.j);
    return as_vec(V_j_alpha_star(f, op.density, op.j));
}

std::vector<RadialDensity> config_densities(const RunConfig& cfg) {
    if (!cfg.densities.empty()) return cfg.densities;
    return {make_radial_density(DensityKind::alpha, DensityFamily::hat, 1.0),
            make_radial_density(DensityKind::xi, DensityFamily::hat, 1.0)};
}

// expand the configured operator choices into concrete (family, j, density)
// instances valid for `dim`; det_only keeps the determinant class (j = n),
// which is what the exact pathway supports
std::vector<OpInst> resolve_ops(const RunConfig& cfg, int dim, bool det_only,
                                const char* only_family = nullptr) {
    std::vector<OperatorChoice> choices = cfg.operators;
    if (choices.empty())
        choices = {{"m_alpha", -1}, {"t_j_xi", -1}, {"z_j_alpha", -1}, {"V_j_alpha", -1}};
    std::vector<RadialDensity> dens = config_densities(cfg);

    std::vector<OpInst> out;
    for (const auto& c : choices) {
        if (c.family == "so2_variant") continue; // handled by the rotation suite only
        if (only_family && c.family != only_family) continue;
        std::vector<int> js;
        if (c.family == "m_alpha") {
            js = {dim};
        } else if (c.j >= 0) {
            if (c.j > dim) continue;
            js = {c.j};
        } else if (det_only) {
            js = {dim};
        } else {
            for (int j = 0; j <= dim; ++j) js.push_back(j);
        }
        for (int j : js) {
            if (det_only && j != dim) continue;
            for (const auto& d : dens) {
                bool wants_alpha = c.family != "t_j_xi" || j < dim;
                if (wants_alpha && d.kind != DensityKind::alpha) continue;
                OpInst op;
                op.family = c.family;
                op.j = j;
                op.density = d;
                op.label = c.family + "[j=" + std::to_string(j) + "," + d.describe() + "]";
                out.push_back(op);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- case pump

struct Outcome {
    double residual = 0.0;
    double budget = 0.0;
    bool grid = false;
};

struct Pending {
    std::string input;
    std::function<Outcome()> run;
};

// raw residuals go into the report; a grid case whose residual exceeds its own
// error budget is escalated past any plausible tolerance so a loose suite
// tolerance cannot hide a quadrature estimate that failed to cover the error
PropertyReport finish_suite(const std::string& name, const RunConfig& cfg,
                            std::vector<Pending>& todo, bool escalate) {
    PropertyReport rep;
    rep.suite = name;
    rep.case_count = static_cast<int>(todo.size());
    auto it = cfg.tolerances.find(name);
    rep.tolerance = it != cfg.tolerances.end() ? it->second : default_tolerance(name);
    rep.cases.resize(todo.size());
    std::vector<CaseRecord>* slots = &rep.cases;
    parallel_for(todo.size(), [&](size_t i) {
        Outcome o = todo[i].run();
        double recorded = o.residual;
        if (escalate && o.grid && !(o.residual <= o.budget)) recorded = o.residual + 1.0;
        (*slots)[i] =
            CaseRecord{static_cast<int>(i), todo[i].input, recorded, o.grid ? "grid" : "exact", o.budget};
    });
    double mx = 0.0;
    for (const auto& c : rep.cases) mx = std::max(mx, c.residual);
    rep.max_residual = mx;
    rep.pass = rep.max_residual <= rep.tolerance;
    return rep;
}

int res_at(const RunConfig& cfg, size_t k) {
    if (cfg.resolutions.empty()) return 65;
    return cfg.resolutions[k % cfg.resolutions.size()];
}

std::vector<int> config_dims(const RunConfig& cfg) {
    return cfg.dims.empty() ? std::vector<int>{1, 2} : cfg.dims;
}

using GridPtr = std::shared_ptr<GridFunction>;

GridPtr sample_ptr(const FunctionSpec& spec, int res) {
    return std::make_shared<GridFunction>(sample_spec(spec, res));
}

// ------------------------------------------------------------------ suites

// z(v ∨ w) + z(v ∧ w) = z(v) + z(w) on constructively valid pairs
std::vector<Pending> build_valuation_identity(const RunConfig& cfg) {
    std::vector<Pending> todo;
    const int kPairs = 4;
    for (int dim : config_dims(cfg)) {
        auto pairs_e =
            gen_valid_pairs(derive_seed(cfg.seed, "pairs-exact", dim), kPairs, dim, Pathway::exact);
        auto ops_e = resolve_ops(cfg, dim, true);
        for (size_t pi = 0; pi < pairs_e.size(); ++pi) {
            auto fns = std::make_shared<std::array<MaxAffineFunction, 4>>();
            (*fns)[0] = to_max_affine(pairs_e[pi].v);
            (*fns)[1] = to_max_affine(pairs_e[pi].w);
            (*fns)[2] = to_max_affine(pairs_e[pi].vmax);
            (*fns)[3] = to_max_affine(pairs_e[pi].vmin);
            for (const auto& op : ops_e) {
                std::string input = "n=" + std::to_string(dim) + " " + op.label + " pair#" +
                                    std::to_string(pi) + "(" + pairs_e[pi].witness + ")";
                todo.push_back({input, [fns, op]() {
                                    auto zv = op_eval(op, (*fns)[0]);
                                    auto zw = op_eval(op, (*fns)[1]);
                                    auto zx = op_eval(op, (*fns)[2]);
                                    auto zn = op_eval(op, (*fns)[3]);
                                    Outcome o;
                                    o.residual = norm(zx.value + zn.value - zv.value - zw.value);
                                    o.budget = zv.error_estimate + zw.error_estimate + zx.error_estimate +
                                               zn.error_estimate + floor_for(norm(zv.value));
                                    return o;
                                }});
            }
        }
        auto pairs_g =
            gen_valid_pairs(derive_seed(cfg.seed, "pairs-grid", dim), kPairs, dim, Pathway::grid);
        auto ops_g = resolve_ops(cfg, dim, false);
        for (size_t pi = 0; pi < pairs_g.size(); ++pi) {
            int res = res_at(cfg, pi);
            auto grids = std::make_shared<std::array<GridFunction, 4>>();
            (*grids)[0] = sample_spec(pairs_g[pi].v, res);
            (*grids)[1] = sample_spec(pairs_g[pi].w, res);
            (*grids)[2] = sample_spec(pairs_g[pi].vmax, res);
            (*grids)[3] = sample_spec(pairs_g[pi].vmin, res);
            for (const auto& op : ops_g) {
                std::string input = "n=" + std::to_string(dim) + " " + op.label + " pair#" +
                                    std::to_string(pi) + "(" + pairs_g[pi].witness + ") res=" +
                                    std::to_string(res);
                todo.push_back({input, [grids, op]() {
                                    auto zv = op_eval(op, (*grids)[0]);
                                    auto zw = op_eval(op, (*grids)[1]);
                                    auto zx = op_eval(op, (*grids)[2]);
                                    auto zn = op_eval(op, (*grids)[3]);
                                    Outcome o;
                                    o.grid = true;
                                    o.residual = norm(zx.value + zn.value - zv.value - zw.value);
                                    o.budget = zv.error_estimate + zw.error_estimate + zx.error_estimate +
                                               zn.error_estimate + floor_for(norm(zv.value));
                                    return o;
                                }});
            }
        }
        // cross-pathway: the exact pair's max, sampled, against the atom value
        for (size_t pi = 0; pi < std::min<size_t>(2, pairs_e.size()); ++pi) {
            int res = res_at(cfg, pi);
            auto f = sample_ptr(pairs_e[pi].vmax, res);
            auto v = std::make_shared<MaxAffineFunction>(to_max_affine(pairs_e[pi].vmax));
            for (const auto& op : ops_e) {
                std::string input = "n=" + std::to_string(dim) + " " + op.label + " cross pair#" +
                                    std::to_string(pi) + " res=" + std::to_string(res);
                todo.push_back({input, [f, v, op]() {
                                    auto ge = op_eval(op, *f);
                                    auto ex = op_eval(op, *v);
                                    Outcome o;
                                    o.grid = true;
                                    o.residual = norm(ge.value - ex.value);
                                    o.budget = ge.error_estimate + floor_for(norm(ex.value));
                                    return o;
                                }});
            }
        }
    }
    return todo;
}

// z_j(v + <y,.>) - z_j(v) = V_j(v) y for the moment families; t and V are
// invariant under adding linear terms
std::vector<Pending> build_translation_covariance(const RunConfig& cfg) {
    std::vector<Pending> todo;
    const int kProbes = 5;
    for (int dim : config_dims(cfg)) {
        RandomStream rs(derive_seed(cfg.seed, "translation", dim));
        auto probes = std::make_shared<std::vector<Vec>>();
        for (int i = 0; i < kProbes; ++i) probes->push_back(rs.uniform_vec(dim, -0.3, 0.3));

        for (int rep = 0; rep < 2; ++rep) {
            bool grid = rep == 1;
            auto ops = resolve_ops(cfg, dim, !grid);
            for (int vi = 0; vi < 2; ++vi) {
                FunctionSpec spec = grid ? random_smooth_spec(rs, dim)
                                         : random_max_affine_spec(rs, dim, 3 + vi, 0.8);
                int res = res_at(cfg, vi);
                GridPtr f;
                std::shared_ptr<MaxAffineFunction> v;
                if (grid)
                    f = sample_ptr(spec, res);
                else
                    v = std::make_shared<MaxAffineFunction>(to_max_affine(spec));
                for (const auto& op : ops) {
                    bool moment_family = op.family == "m_alpha" || op.family == "z_j_alpha";
                    OpInst vol = op; // the associated scalar of a moment family is V_j
                    vol.family = "V_j_alpha";
                    std::string input = "n=" + std::to_string(dim) + " " + op.label + " " +
                                        describe(spec) + (grid ? " res=" + std::to_string(res) : "");
                    todo.push_back({input, [grid, f, v, op, vol, probes, moment_family]() {
                                        Outcome o;
                                        o.grid = grid;
                                        auto base = grid ? op_eval(op, *f) : op_eval(op, *v);
                                        VectorResult vj;
                                        if (moment_family)
                                            vj = grid ? op_eval(vol, *f) : op_eval(vol, *v);
                                        double worst = 0.0, budget = 0.0;
                                        for (const auto& y : *probes) {
                                            VectorResult sh =
                                                grid ? op_eval(op, grid_add_linear(*f, y))
                                                     : op_eval(op, ma_add_linear(*v, y));
                                            Vec d = sh.value - base.value;
                                            if (moment_family) d = d - vj.value[0] * y;
                                            worst = std::max(worst, norm(d));
                                            double b = sh.error_estimate + base.error_estimate;
                                            if (moment_family) b += vj.error_estimate * norm(y);
                                            budget = std::max(budget, b);
                                        }
                                        o.residual = worst;
                                        o.budget = budget + floor_for(norm(base.value));
                                        return o;
                                    }});
                }
            }
        }
    }
    return todo;
}

// z(v + c) = z(v)
std::vector<Pending> build_vertical_invariance(const RunConfig& cfg) {
    std::vector<Pending> todo;
    for (int dim : config_dims(cfg)) {
        RandomStream rs(derive_seed(cfg.seed, "vertical", dim));
        const double shifts[2] = {0.7, -0.4};
        for (int rep = 0; rep < 2; ++rep) {
            bool grid = rep == 1;
            auto ops = resolve_ops(cfg, dim, !grid);
            FunctionSpec spec =
                grid ? random_smooth_spec(rs, dim) : random_max_affine_spec(rs, dim, 3, 0.8);
            int res = res_at(cfg, dim);
            GridPtr f;
            std::shared_ptr<MaxAffineFunction> v;
            if (grid)
                f = sample_ptr(spec, res);
            else
                v = std::make_shared<MaxAffineFunction>(to_max_affine(spec));
            for (const auto& op : ops)
                for (double c : shifts) {
                    std::string input = "n=" + std::to_string(dim) + " " + op.label + " " +
                                        describe(spec) + " c=" + fmt_num(c);
                    todo.push_back({input, [grid, f, v, op, c, dim]() {
                                        Outcome o;
                                        o.grid = grid;
                                        auto base = grid ? op_eval(op, *f) : op_eval(op, *v);
                                        auto sh = grid ? op_eval(op, grid_add_linear(*f, zero_vec(dim), c))
                                                       : op_eval(op, ma_add_linear(*v, zero_vec(dim), c));
                                        o.residual = norm(sh.value - base.value);
                                        o.budget = base.error_estimate + sh.error_estimate +
                                                   floor_for(norm(base.value));
                                        return o;
                                    }});
                }
        }
    }
    return todo;
}

// z(v o rho^-1) = rho z(v) over SO(n) and a reflection; V is invariant; the
// planar rotation-field variant is checked over SO(2) only
std::vector<Pending> build_rotation_equivariance(const RunConfig& cfg) {
    std::vector<Pending> todo;
    for (int dim : config_dims(cfg)) {
        RandomStream rs(derive_seed(cfg.seed, "rotation", dim));
        std::vector<std::pair<std::string, Mat>> rots;
        if (dim == 1) {
            Mat refl = Mat::identity(1);
            refl(0, 0) = -1.0;
            rots.push_back({"reflect", refl});
        } else if (dim == 2) {
            for (int k = 0; k < 3; ++k) {
                double a = rs.uniform(0.2, 6.0);
                rots.push_back({"rot(" + fmt_num(a) + ")", rotation2(a)});
            }
            rots.push_back({"reflect", reflection2()});
        } else {
            for (int k = 0; k < 3; ++k) rots.push_back({"rot#" + std::to_string(k), rs.rotation(3)});
            Mat refl = Mat::identity(3);
            refl(2, 2) = -1.0;
            rots.push_back({"reflect", refl});
        }

        // the isotropic quadratic is discretely equivariant by grid symmetry,
        // so the grid pathway also gets a tilted ridge whose resampling has
        // to be absorbed by the error budget
        FunctionSpec kinked = random_smooth_spec(rs, dim);
        {
            Vec e = dim == 1 ? vec1(1.0) : rs.unit_vec(dim);
            Vec p = rs.uniform_vec(dim, -0.3, 0.3);
            double off = dot(e, p);
            kinked.terms.insert(kinked.terms.begin(), ma_term({{e, -off}, {e * -1.0, off}}));
        }
        for (int rep = 0; rep < 3; ++rep) {
            bool grid = rep >= 1;
            auto ops = resolve_ops(cfg, dim, !grid);
            FunctionSpec spec = rep == 0 ? random_max_affine_spec(rs, dim, 4, 0.8)
                                         : (rep == 1 ? random_smooth_spec(rs, dim) : kinked);
            int res = res_at(cfg, dim);
            GridPtr f;
            std::shared_ptr<MaxAffineFunction> v;
            if (grid)
                f = sample_ptr(spec, res);
            else
                v = std::make_shared<MaxAffineFunction>(to_max_affine(spec));
            for (const auto& op : ops)
                for (const auto& rot : rots) {
                    bool scalar = op.family == "V_j_alpha";
                    std::string input = "n=" + std::to_string(dim) + " " + op.label + " " +
                                        rot.first + " " + describe(spec);
                    Mat R = rot.second;
                    if (grid) {
                        auto fr = sample_ptr(rotate_spec(spec, R), res);
                        todo.push_back({input, [f, fr, op, R, scalar]() {
                                            auto lhs = op_eval(op, *fr);
                                            auto rhs = op_eval(op, *f);
                                            Outcome o;
                                            o.grid = true;
                                            Vec want = scalar ? rhs.value : apply(R, rhs.value);
                                            o.residual = norm(lhs.value - want);
                                            o.budget = lhs.error_estimate + rhs.error_estimate +
                                                       floor_for(norm(rhs.value));
                                            return o;
                                        }});
                    } else {
                        todo.push_back({input, [v, op, R, scalar]() {
                                            auto lhs = op_eval(op, ma_rotate(*v, R));
                                            auto rhs = op_eval(op, *v);
                                            Outcome o;
                                            Vec want = scalar ? rhs.value : apply(R, rhs.value);
                                            o.residual = norm(lhs.value - want);
                                            o.budget = lhs.error_estimate + rhs.error_estimate +
                                                       floor_for(norm(rhs.value));
                                            return o;
                                        }});
                    }
                }
        }

        if (dim == 2) {
            // rotation-field variant: equivariant because SO(2) is abelian
            RadialDensity xi = make_radial_density(DensityKind::xi, DensityFamily::hat, 1.0);
            for (const auto& d : config_densities(cfg))
                if (d.kind == DensityKind::xi) {
                    xi = d;
                    break;
                }
            auto phi = [](double t) { return rotation2(0.9 * t); };
            FunctionSpec spec = random_max_affine_spec(rs, 2, 4, 0.8);
            auto v = std::make_shared<MaxAffineFunction>(to_max_affine(spec));
            for (int k = 0; k < 3; ++k) {
                double a = rs.uniform(0.2, 6.0);
                Mat R = rotation2(a);
                std::string input = "n=2 so2_variant[" + xi.describe() + "] rot(" + fmt_num(a) +
                                    ") " + describe(spec);
                todo.push_back({input, [v, R, xi, phi]() {
                                    auto lhs = so2_variant(conjugate_max_affine(ma_rotate(*v, R)), xi, phi);
                                    auto rhs = so2_variant(conjugate_max_affine(*v), xi, phi);
                                    Outcome o;
                                    o.residual = norm(lhs.value - apply(R, rhs.value));
                                    o.budget = lhs.error_estimate + rhs.error_estimate +
                                               floor_for(norm(rhs.value));
                                    return o;
                                }});
            }
        }
    }
    return todo;
}

// determinant-class operators vanish on functions of fewer variables
std::vector<Pending> build_simplicity(const RunConfig& cfg) {
    std::vector<Pending> todo;
    for (int dim : config_dims(cfg)) {
        RandomStream rs(derive_seed(cfg.seed, "simplicity", dim));
        auto ops = resolve_ops(cfg, dim, true);

        // exact: all slopes on one line through the origin -> no full-dim cells
        std::vector<std::pair<std::string, MaxAffineFunction>> exact_inputs;
        for (int k = 0; k < 2; ++k) {
            Vec e = dim == 1 ? vec1(1.0) : rs.unit_vec(dim);
            std::vector<MaxAffineFunction::Piece> pieces;
            int np = dim == 1 ? 1 : 3;
            for (int i = 0; i < np; ++i)
                pieces.push_back({e * rs.uniform(-0.8, 0.8), rs.uniform(-0.3, 0.3)});
            exact_inputs.push_back({"collinear maxaff#" + std::to_string(k),
                                    make_max_affine(dim, pieces)});
        }
        for (const auto& in : exact_inputs)
            for (const auto& op : ops) {
                auto v = std::make_shared<MaxAffineFunction>(in.second);
                std::string input = "n=" + std::to_string(dim) + " " + op.label + " " + in.first;
                todo.push_back({input, [v, op]() {
                                    auto z = op_eval(op, *v);
                                    Outcome o;
                                    o.residual = norm(z.value);
                                    o.budget = z.error_estimate + floor_for(0.0);
                                    return o;
                                }});
            }

        if (dim == 1) continue; // every 1-d input already uses all variables

        // grid: functions of one coordinate, axis-aligned so the flat
        // directions cancel exactly in both quadrature routes
        int res = res_at(cfg, dim);
        int axis = rs.uniform_int(0, dim - 1);
        double s = rs.uniform(0.5, 1.5), c = rs.uniform(-0.3, 0.3);
        Vec tilt = rs.uniform_vec(dim, -0.3, 0.3);
        auto qf = [axis, s, c, tilt](const Vec& x) {
            return 0.5 * s * (x[axis] - c) * (x[axis] - c) + dot(tilt, x);
        };
        auto pl = [axis, c, tilt](const Vec& x) { return std::fabs(x[axis] - c) + dot(tilt, x); };
        std::vector<std::pair<std::string, GridPtr>> grid_inputs = {
            {"quad(x_" + std::to_string(axis) + ")",
             std::make_shared<GridFunction>(sample_grid(dim, box_lo(), box_hi(), res_of(dim, res), qf))},
            {"ridge(x_" + std::to_string(axis) + ")",
             std::make_shared<GridFunction>(sample_grid(dim, box_lo(), box_hi(), res_of(dim, res), pl))}};
        for (const auto& in : grid_inputs)
            for (const auto& op : ops) {
                std::string input = "n=" + std::to_string(dim) + " " + op.label + " " + in.first +
                                    " res=" + std::to_string(res);
                GridPtr f = in.second;
                todo.push_back({input, [f, op]() {
                                    auto z = op_eval(op, *f);
                                    Outcome o;
                                    o.grid = true;
                                    o.residual = norm(z.value);
                                    o.budget = z.error_estimate + floor_for(0.0);
                                    return o;
                                }});
            }
    }
    return todo;
}

// value scaling: z(lambda v) = lambda^d z(v) with d the operator's degree
std::vector<Pending> build_homogeneity(const RunConfig& cfg) {
    std::vector<Pending> todo;
    const double lambdas[2] = {0.5, 2.0};
    for (int dim : config_dims(cfg)) {
        RandomStream rs(derive_seed(cfg.seed, "homogeneity", dim));
        for (int rep = 0; rep < 2; ++rep) {
            bool grid = rep == 1;
            auto ops = resolve_ops(cfg, dim, !grid);
            FunctionSpec spec =
                grid ? random_smooth_spec(rs, dim) : random_max_affine_spec(rs, dim, 3, 0.8);
            int res = res_at(cfg, dim);
            GridPtr f;
            std::shared_ptr<MaxAffineFunction> v;
            if (grid)
                f = sample_ptr(spec, res);
            else
                v = std::make_shared<MaxAffineFunction>(to_max_affine(spec));
            for (const auto& op : ops)
                for (double lam : lambdas) {
                    int d = op.degree(dim);
                    std::string input = "n=" + std::to_string(dim) + " " + op.label + " lambda=" +
                                        fmt_num(lam) + " deg=" + std::to_string(d);
                    todo.push_back({input, [grid, f, v, op, lam, d]() {
                                        auto base = grid ? op_eval(op, *f) : op_eval(op, *v);
                                        auto sc = grid ? op_eval(op, grid_scale_values(*f, lam))
                                                       : op_eval(op, ma_scale(*v, lam));
                                        double pw = std::pow(lam, d);
                                        Outcome o;
                                        o.grid = grid;
                                        o.residual = norm(sc.value - pw * base.value);
                                        o.budget = sc.error_estimate + pw * base.error_estimate +
                                                   floor_for(pw * norm(base.value));
                                        return o;
                                    }});
                }
        }
    }
    return todo;
}

// z(v_k) -> z(v) along the explicit families v + q/k and v(./lambda_k); the
// residual is the decay ratio of the last gap to the first
std::vector<Pending> build_epi_continuity(const RunConfig& cfg) {
    std::vector<Pending> todo;
    const int ks[9] = {1, 2, 4, 8, 16, 32, 64, 128, 256};
    for (int dim : config_dims(cfg)) {
        RandomStream rs(derive_seed(cfg.seed, "epi", dim));
        int res = res_at(cfg, dim);

        // family A: v + q/k, grid pathway (adding the quadratic forces it)
        {
            FunctionSpec spec = random_smooth_spec(rs, dim);
            auto f = sample_ptr(spec, res);
            for (const auto& op : resolve_ops(cfg, dim, false)) {
                std::string input = "n=" + std::to_string(dim) + " " + op.label + " v+q/k " +
                                    describe(spec) + " res=" + std::to_string(res);
                todo.push_back({input, [f, op, ks]() {
                                    auto base = op_eval(op, *f);
                                    double widest = 0.0, last = 0.0, est = 0.0;
                                    for (int k : ks) {
                                        auto zk = op_eval(op, grid_add_quadratic(*f, 1.0 / k));
                                        double gap = norm(zk.value - base.value);
                                        widest = std::max(widest, gap);
                                        last = gap;
                                        est = zk.error_estimate;
                                    }
                                    // the widest gap normalizes; the first one
                                    // can cancel when the path is not monotone
                                    double fl = floor_for(norm(base.value));
                                    Outcome o;
                                    o.grid = true;
                                    o.residual = last / (widest + fl);
                                    o.budget = (est + base.error_estimate) / (widest + fl) + fl;
                                    return o;
                                }});
            }
        }

        // family B: v(x / lambda_k), lambda_k -> 1, both pathways
        for (int rep = 0; rep < 2; ++rep) {
            bool grid = rep == 1;
            FunctionSpec spec =
                grid ? random_smooth_spec(rs, dim) : random_max_affine_spec(rs, dim, 3, 0.8);
            GridPtr f;
            std::shared_ptr<MaxAffineFunction> v;
            if (grid)
                f = sample_ptr(spec, res);
            else
                v = std::make_shared<MaxAffineFunction>(to_max_affine(spec));
            for (const auto& op : resolve_ops(cfg, dim, !grid)) {
                std::string input = "n=" + std::to_string(dim) + " " + op.label + " v(x/l_k) " +
                                    describe(spec) + (grid ? " res=" + std::to_string(res) : "");
                todo.push_back({input, [grid, f, v, op, ks, spec, res]() {
                                    auto base = grid ? op_eval(op, *f) : op_eval(op, *v);
                                    double widest = 0.0, last = 0.0, est = 0.0;
                                    for (int k : ks) {
                                        double lam = 1.0 + 0.5 / k;
                                        VectorResult zk;
                                        if (grid)
                                            zk = op_eval(op, sample_spec(scale_args_spec(spec, lam), res));
                                        else
                                            zk = op_eval(op, ma_compose_inverse_scale(*v, lam));
                                        double gap = norm(zk.value - base.value);
                                        widest = std::max(widest, gap);
                                        last = gap;
                                        est = zk.error_estimate;
                                    }
                                    double fl = floor_for(norm(base.value));
                                    Outcome o;
                                    o.grid = grid;
                                    o.residual = last / (widest + fl);
                                    o.budget = (est + base.error_estimate) / (widest + fl) + fl;
                                    return o;
                                }});
            }
        }
    }
    return todo;
}

// the Minkowski-relation analogue: t_j vanishes on support functions
std::vector<Pending> build_minkowski_relations(const RunConfig& cfg) {
    std::vector<Pending> todo;
    const int kBodies = 4;
    for (int dim : config_dims(cfg)) {
        RandomStream rs(derive_seed(cfg.seed, "minkowski", dim));
        auto ops_exact = resolve_ops(cfg, dim, true, "t_j_xi");
        auto ops_grid = resolve_ops(cfg, dim, false, "t_j_xi");
        for (int b = 0; b < kBodies; ++b) {
            Polytope K = random_polytope(rs, dim, 0.8);
            auto v = std::make_shared<MaxAffineFunction>(support_function(K));
            FunctionSpec hs = support_spec(K, zero_vec(dim));
            int res = res_at(cfg, b);
            auto f = sample_ptr(hs, res);
            for (const auto& op : ops_exact) {
                std::string input = "n=" + std::to_string(dim) + " " + op.label + " h_K#" +
                                    std::to_string(b);
                todo.push_back({input, [v, op]() {
                                    auto z = op_eval(op, *v);
                                    Outcome o;
                                    o.residual = norm(z.value);
                                    o.budget = z.error_estimate + floor_for(0.0);
                                    return o;
                                }});
            }
            for (const auto& op : ops_grid) {
                std::string input = "n=" + std::to_string(dim) + " " + op.label + " h_K#" +
                                    std::to_string(b) + " res=" + std::to_string(res);
                todo.push_back({input, [f, op]() {
                                    auto z = op_eval(op, *f);
                                    Outcome o;
                                    o.grid = true;
                                    o.residual = norm(z.value);
                                    o.budget = z.error_estimate + floor_for(0.0);
                                    return o;
                                }});
            }
        }
    }
    return todo;
}

// the fitted expansion coefficients must match their direct z/t attributions
std::vector<Pending> build_steiner_consistency(const RunConfig& cfg) {
    std::vector<Pending> todo;
    for (int dim : config_dims(cfg)) {
        RandomStream rs(derive_seed(cfg.seed, "steiner", dim));
        std::vector<RadialDensity> alphas;
        for (const auto& d : config_densities(cfg))
            if (d.kind == DensityKind::alpha) alphas.push_back(d);
        for (size_t ai = 0; ai < alphas.size(); ++ai)
            for (int vi = 0; vi < 2; ++vi) {
                FunctionSpec spec = random_smooth_spec(rs, dim);
                int res = res_at(cfg, vi);
                auto f = sample_ptr(spec, res);
                RadialDensity alpha = alphas[ai];
                std::string input = "n=" + std::to_string(dim) + " steiner[" + alpha.describe() +
                                    "] " + describe(spec) + " res=" + std::to_string(res);
                todo.push_back({input, [f, alpha, dim]() {
                                    auto exp = steiner_expand(*f, alpha, default_r_values(dim));
                                    Outcome o;
                                    o.grid = true;
                                    double worst = 0.0, b = floor_for(0.0);
                                    for (size_t k = 0; k < exp.cross_residual.size(); ++k)
                                        if (exp.cross_residual[k] >= worst) {
                                            worst = exp.cross_residual[k];
                                            b = exp.attributed[k].budget;
                                        }
                                    o.residual = worst;
                                    o.budget = exp.ill_conditioned ? 0.0 : b;
                                    return o;
                                }});
            }
    }
    return todo;
}

// primal operators on v against the dual-side forms on u = v*
std::vector<Pending> build_conjugation_duality(const RunConfig& cfg) {
    std::vector<Pending> todo;
    for (int dim : config_dims(cfg)) {
        RandomStream rs(derive_seed(cfg.seed, "duality", dim));
        RadialDensity alpha = make_radial_density(DensityKind::alpha, DensityFamily::hat, 1.0);
        RadialDensity xi = make_radial_density(DensityKind::xi, DensityFamily::hat, 1.0);
        for (const auto& d : config_densities(cfg)) {
            if (d.kind == DensityKind::alpha) alpha = d;
            if (d.kind == DensityKind::xi) xi = d;
        }

        // exact: the complex overloads share the primal atom sums
        for (int k = 0; k < 2; ++k) {
            FunctionSpec spec = random_max_affine_spec(rs, dim, 3 + k, 0.8);
            auto v = std::make_shared<MaxAffineFunction>(to_max_affine(spec));
            std::string input = "n=" + std::to_string(dim) + " dual-exact " + describe(spec);
            todo.push_back({input + " m", [v, alpha]() {
                                auto C = conjugate_max_affine(*v);
                                Outcome o;
                                o.residual = norm(dual_m_alpha(C, alpha).value - m_alpha_star(*v, alpha).value);
                                o.budget = floor_for(0.0);
                                return o;
                            }});
            todo.push_back({input + " t", [v, xi, dim]() {
                                auto C = conjugate_max_affine(*v);
                                Outcome o;
                                o.residual =
                                    norm(dual_t_n_xi(C, xi).value - t_j_xi_star(*v, xi, dim).value);
                                o.budget = floor_for(0.0);
                                return o;
                            }});
        }

        // grid, flat side: v = h_K(. - x0) with a box K, so u = <x0,.> on K
        for (int k = 0; k < 2; ++k) {
            std::array<double, 3> klo{0, 0, 0}, khi{0, 0, 0};
            std::vector<Vec> corners;
            {
                Vec a = rs.uniform_vec(dim, -0.8, -0.1), b = rs.uniform_vec(dim, 0.1, 0.8);
                for (int axis = 0; axis < dim; ++axis) klo[axis] = a[axis], khi[axis] = b[axis];
                int ncorner = 1 << dim;
                for (int m = 0; m < ncorner; ++m) {
                    Vec c = zero_vec(dim);
                    for (int axis = 0; axis < dim; ++axis)
                        c[axis] = (m >> axis) & 1 ? khi[axis] : klo[axis];
                    corners.push_back(c);
                }
            }
            Vec x0 = rs.uniform_vec(dim, -0.4, 0.4);
            FunctionSpec vf;
            vf.dim = dim;
            std::vector<MaxAffineFunction::Piece> pieces;
            for (const auto& c : corners) pieces.push_back({c, -dot(c, x0)});
            vf.terms.push_back(ma_term(pieces));
            FunctionSpec uf;
            uf.dim = dim;
            uf.terms.push_back(lin_term(x0, 0.0));

            int res = res_at(cfg, k);
            auto fv = sample_ptr(vf, res);
            auto fu = std::make_shared<GridFunction>(
                to_grid(uf, klo, khi, res_of(dim, res)));
            std::string input = "n=" + std::to_string(dim) + " dual-grid h_K(x-x0)#" +
                                std::to_string(k) + " res=" + std::to_string(res);
            todo.push_back({input + " m", [fv, fu, alpha]() {
                                auto p = m_alpha_star(*fv, alpha);
                                auto d = dual_m_alpha(*fu, alpha);
                                Outcome o;
                                o.grid = true;
                                o.residual = norm(p.value - d.value);
                                o.budget = p.error_estimate + d.error_estimate +
                                           floor_for(norm(p.value));
                                return o;
                            }});
            todo.push_back({input + " t", [fv, fu, xi, dim]() {
                                auto p = t_j_xi_star(*fv, xi, dim);
                                auto d = dual_t_n_xi(*fu, xi);
                                Outcome o;
                                o.grid = true;
                                o.residual = norm(p.value - d.value);
                                o.budget = p.error_estimate + d.error_estimate +
                                           floor_for(norm(p.value));
                                return o;
                            }});
        }

        // grid, smooth side: quadratic-plus-tilt and its closed-form conjugate
        for (int k = 0; k < 2; ++k) {
            double smax = std::min(1.2, 1.7 / (alpha.support_radius + 0.2));
            double s = rs.uniform(0.6, smax);
            Vec c = rs.uniform_vec(dim, -0.2, 0.2);
            Vec y0 = rs.uniform_vec(dim, -0.2, 0.2);
            double b = rs.uniform(-0.2, 0.2);
            FunctionSpec vf;
            vf.dim = dim;
            vf.terms.push_back(quad_term(s, c));
            vf.terms.push_back(lin_term(y0, b));
            FunctionSpec uf;
            uf.dim = dim;
            uf.terms.push_back(quad_term(1.0 / s, y0));
            uf.terms.push_back(lin_term(c, -dot(c, y0) - b));

            int res = res_at(cfg, k + 1);
            auto fv = sample_ptr(vf, res);
            auto fu = sample_ptr(uf, res);
            std::string input = "n=" + std::to_string(dim) + " dual-grid smooth#" +
                                std::to_string(k) + " res=" + std::to_string(res);
            todo.push_back({input + " m", [fv, fu, alpha]() {
                                auto p = m_alpha_star(*fv, alpha);
                                auto d = dual_m_alpha(*fu, alpha);
                                Outcome o;
                                o.grid = true;
                                o.residual = norm(p.value - d.value);
                                o.budget = p.error_estimate + d.error_estimate +
                                           floor_for(norm(p.value));
                                return o;
                            }});
            todo.push_back({input + " t", [fv, fu, xi, dim]() {
                                auto p = t_j_xi_star(*fv, xi, dim);
                                auto d = dual_t_n_xi(*fu, xi);
                                Outcome o;
                                o.grid = true;
                                o.residual = norm(p.value - d.value);
                                o.budget = p.error_estimate + d.error_estimate +
                                           floor_for(norm(p.value));
                                return o;
                            }});
        }
    }
    return todo;
}

// the r^n coefficient of the V-type expansion equals the degree-0 functional
// intrinsic volume and does not depend on v; quadratic inputs keep the finite
// differences exact so the check runs at floating-point precision
std::vector<Pending> build_degree0_constancy(const RunConfig& cfg) {
    std::vector<Pending> todo;
    for (int dim : config_dims(cfg)) {
        RandomStream rs(derive_seed(cfg.seed, "degree0", dim));
        std::vector<RadialDensity> alphas;
        for (const auto& d : config_densities(cfg))
            if (d.kind == DensityKind::alpha) alphas.push_back(d);
        int res = res_at(cfg, 0); // one resolution: the shared discretization
                                  // is what makes v-independence exact
        for (const auto& alpha : alphas) {
            auto inputs = std::make_shared<std::vector<GridFunction>>();
            RandomStream gen(derive_seed(cfg.seed, "degree0-inputs", dim));
            for (int i = 0; i < 3; ++i)
                inputs->push_back(sample_spec(random_smooth_spec(gen, dim), res));
            for (size_t i = 0; i < inputs->size(); ++i) {
                std::string input = "n=" + std::to_string(dim) + " vtype[" + alpha.describe() +
                                    "] input#" + std::to_string(i) + " res=" + std::to_string(res);
                todo.push_back({input, [inputs, i, alpha, dim]() {
                                    auto exp = steiner_expand_vtype((*inputs)[i], alpha,
                                                                    default_r_values(dim));
                                    double cn = exp.coefficients[dim];
                                    double direct = V_j_alpha_star((*inputs)[i], alpha, 0).value;
                                    auto exp0 = steiner_expand_vtype((*inputs)[0], alpha,
                                                                     default_r_values(dim));
                                    double spread = std::fabs(cn - exp0.coefficients[dim]);
                                    Outcome o;
                                    o.grid = true;
                                    o.residual = std::max(std::fabs(cn - direct), spread);
                                    o.budget = exp.fit_residual + floor_for(std::fabs(direct));
                                    return o;
                                }});
            }
        }
    }
    return todo;
}

} // namespace

// ------------------------------------------------------------- public API

GridFunction sample_spec(const FunctionSpec& spec, int res) {
    return to_grid(spec, box_lo(), box_hi(), res_of(spec.dim, res));
}

FunctionSpec random_max_affine_spec(RandomStream& rs, int dim, int npieces, double slope_scale) {
    std::vector<MaxAffineFunction::Piece> pieces;
    for (int i = 0; i < npieces; ++i)
        pieces.push_back({rs.uniform_vec(dim, -slope_scale, slope_scale), rs.uniform(-0.3, 0.3)});
    FunctionSpec s;
    s.dim = dim;
    s.terms.push_back(ma_term(std::move(pieces)));
    return s;
}

Polytope random_polytope(RandomStream& rs, int dim, double radius, int npts) {
    if (dim == 1)
        return make_polytope(1, {vec1(rs.uniform(-radius, -0.1 * radius)),
                                 vec1(rs.uniform(0.1 * radius, radius))});
    std::vector<Vec> pts;
    for (int i = 0; i < npts; ++i) pts.push_back(rs.uniform_vec(dim, -radius, radius));
    Polytope K = make_polytope(dim, pts);
    if (K.aff_dim < dim) return random_polytope(rs, dim, radius, npts + 1);
    return K;
}

FunctionSpec support_spec(const Polytope& K, const Vec& shift) {
    FunctionSpec s;
    s.dim = K.dim;
    if (norm(shift) == 0.0) {
        FunctionSpec::Term t;
        t.kind = "support";
        t.vertices = K.verts;
        s.terms.push_back(t);
    } else {
        std::vector<MaxAffineFunction::Piece> pieces;
        for (const auto& v : K.verts) pieces.push_back({v, -dot(v, shift)});
        s.terms.push_back(ma_term(std::move(pieces)));
    }
    return s;
}

FunctionSpec rotate_spec(const FunctionSpec& spec, const Mat& rot) {
    FunctionSpec out = spec;
    for (auto& t : out.terms) {
        if (t.kind == "quadratic") {
            t.center = apply(rot, t.center);
        } else if (t.kind == "linear") {
            t.vector = apply(rot, t.vector);
        } else if (t.kind == "max_affine") {
            for (auto& p : t.pieces) p.a = apply(rot, p.a);
        } else if (t.kind == "support") {
            for (auto& v : t.vertices) v = apply(rot, v);
        } // radial_power is rotation invariant
    }
    return out;
}

FunctionSpec scale_args_spec(const FunctionSpec& spec, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("argument scaling needs lambda > 0");
    FunctionSpec out = spec;
    for (auto& t : out.terms) {
        if (t.kind == "quadratic") {
            t.scale /= lambda * lambda;
            t.center = lambda * t.center;
        } else if (t.kind == "linear") {
            t.vector = (1.0 / lambda) * t.vector;
        } else if (t.kind == "max_affine") {
            for (auto& p : t.pieces) p.a = (1.0 / lambda) * p.a;
        } else if (t.kind == "support") {
            for (auto& v : t.vertices) v = (1.0 / lambda) * v;
        } else { // radial_power
            t.scale *= std::pow(lambda, -t.exponent);
        }
    }
    return out;
}

FunctionSpec spec_add_linear(const FunctionSpec& spec, const Vec& y, double c) {
    FunctionSpec out = spec;
    out.terms.push_back(lin_term(y, c));
    return out;
}

std::vector<ValidPair> gen_valid_pairs(uint64_t seed, int count, int dim, Pathway rep) {
    RandomStream rs(seed);
    std::vector<ValidPair> out;
    for (int i = 0; i < count; ++i) {
        FunctionSpec g;
        g.dim = dim;
        if (rep == Pathway::grid) {
            g = random_smooth_spec(rs, dim);
        } else {
            g = random_max_affine_spec(rs, dim, 2 + i % 3, 0.8);
        }

        ValidPair pair;
        if (i % 4 == 3) {
            // dominated pair: v <= w pointwise, so max = w and min = v
            pair.witness = "dominated";
            pair.v = g;
            pair.w = spec_add_linear(g, zero_vec(dim), 0.4);
            pair.vmax = pair.w;
            pair.vmin = pair.v;
        } else {
            pair.witness = "ridge_split";
            Vec e = rs.unit_vec(dim);
            Vec p = rs.uniform_vec(dim, -0.3, 0.3);
            double off = dot(e, p);
            FunctionSpec v = g, w = g, vmax = g;
            v.terms.insert(v.terms.begin(), ma_term({{zero_vec(dim), 0.0}, {e, -off}}));
            w.terms.insert(w.terms.begin(), ma_term({{zero_vec(dim), 0.0}, {e * -1.0, off}}));
            vmax.terms.insert(vmax.terms.begin(), ma_term({{e, -off}, {e * -1.0, off}}));
            pair.v = v;
            pair.w = w;
            pair.vmax = vmax;
            pair.vmin = g;
        }

        // asserted, not assumed: run the discrete convexity validator
        const int vres = 33;
        for (const FunctionSpec* s : {&pair.v, &pair.w, &pair.vmax, &pair.vmin}) {
            GridFunction f = sample_spec(*s, vres);
            if (!is_discretely_convex(f))
                throw std::logic_error("generated pair failed the convexity validator");
        }
        out.push_back(std::move(pair));
    }
    return out;
}

ScalarExtraction extract_associated_scalar(const std::function<Vec(const Vec&)>& shifted,
                                           const Vec& base, const std::vector<Vec>& probes) {
    if (probes.empty()) throw std::invalid_argument("probe set is empty");
    int n = probes[0].n;

    // the probes must span the space: row-reduce a copy
    std::vector<std::vector<double>> rows;
    for (const auto& y : probes) {
        std::vector<double> r(n);
        for (int a = 0; a < n; ++a) r[a] = y[a];
        rows.push_back(r);
    }
    double scale = 0.0;
    for (const auto& r : rows)
        for (double x : r) scale = std::max(scale, std::fabs(x));
    int rank = 0;
    for (int col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
        int piv = -1;
        double best = 1e-12 * (1.0 + scale);
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (std::fabs(rows[r][col]) > best) {
                best = std::fabs(rows[r][col]);
                piv = r;
            }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank) continue;
            double m = rows[r][col] / rows[rank][col];
            for (int a = col; a < n; ++a) rows[r][a] -= m * rows[rank][a];
        }
        ++rank;
    }
    if (rank < n) throw std::invalid_argument("probe directions do not span the space");

    double num = 0.0, den = 0.0;
    std::vector<Vec> deltas;
    for (const auto& y : probes) {
        Vec d = shifted(y) - base;
        deltas.push_back(d);
        num += dot(d, y);
        den += dot(y, y);
    }
    ScalarExtraction out;
    out.z0 = num / den;
    for (size_t i = 0; i < probes.size(); ++i)
        out.residual = std::max(out.residual, norm(deltas[i] - out.z0 * probes[i]));
    return out;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "valuation_identity",   "translation_covariance", "vertical_invariance",
        "rotation_equivariance", "simplicity",            "homogeneity",
        "epi_continuity",       "minkowski_relations",    "steiner_consistency",
        "conjugation_duality",  "degree0_constancy"};
    return names;
}

double default_tolerance(const std::string& suite) {
    // pinned from measured residuals of the bundled config over several
    // seeds, with 2-10x headroom; the per-case budget escalation polices
    // grid cases independently
    if (suite == "valuation_identity") return 0.1;
    if (suite == "translation_covariance") return 1e-9;
    if (suite == "vertical_invariance") return 1e-10;
    if (suite == "rotation_equivariance") return 0.15;
    if (suite == "simplicity") return 1e-9;
    if (suite == "homogeneity") return 1e-7;
    if (suite == "epi_continuity") return 0.1;
    if (suite == "minkowski_relations") return 1e-2;
    if (suite == "steiner_consistency") return 1e-6;
    if (suite == "conjugation_duality") return 5e-2;
    if (suite == "degree0_constancy") return 1e-9;
    throw std::invalid_argument("unknown suite: " + suite);
}

PropertyReport run_suite(const std::string& name, const RunConfig& cfg) {
    std::vector<Pending> todo;
    bool escalate = true;
    if (name == "valuation_identity") {
        todo = build_valuation_identity(cfg);
    } else if (name == "translation_covariance") {
        todo = build_translation_covariance(cfg);
    } else if (name == "vertical_invariance") {
        todo = build_vertical_invariance(cfg);
    } else if (name == "rotation_equivariance") {
        todo = build_rotation_equivariance(cfg);
    } else if (name == "simplicity") {
        todo = build_simplicity(cfg);
    } else if (name == "homogeneity") {
        todo = build_homogeneity(cfg);
    } else if (name == "epi_continuity") {
        todo = build_epi_continuity(cfg);
        escalate = false; // decay ratios are not zero-targets; the tolerance is the claim
    } else if (name == "minkowski_relations") {
        todo = build_minkowski_relations(cfg);
    } else if (name == "steiner_consistency") {
        todo = build_steiner_consistency(cfg);
    } else if (name == "conjugation_duality") {
        todo = build_conjugation_duality(cfg);
    } else if (name == "degree0_constancy") {
        todo = build_degree0_constancy(cfg);
        escalate = false; // checked at floating-point precision by the tolerance itself
    } else {
        throw std::invalid_argument("unknown suite: " + name);
    }
    return finish_suite(name, cfg, todo, escalate);
}

} // namespace convval

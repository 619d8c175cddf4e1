#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "convval/function_spec.hpp"
#include "convval/polytope.hpp"
#include "convval/reduce.hpp"
#include "convval/valuations.hpp"

namespace convval {

// pair whose pointwise max and min are convex by construction
struct ValidPair {
    FunctionSpec v, w, vmax, vmin;
    std::string witness;
};

// template-based generation: ridge splits v = max(0, <e,x-p>)+g against the
// mirrored ridge (max = |<e,x-p>|+g, min = g), plus dominated pairs v <= w
std::vector<ValidPair> gen_valid_pairs(uint64_t seed, int count, int dim, Pathway rep);

struct ScalarExtraction {
    double z0 = 0.0;
    double residual = 0.0; // misfit of the rank-one isotropic model
};

// least-squares scalar from the covariance relation z(v + <y,.>) - z(v) = z0 y
ScalarExtraction extract_associated_scalar(const std::function<Vec(const Vec&)>& shifted,
                                           const Vec& base, const std::vector<Vec>& probes);

struct CaseRecord {
    int index = 0;
    std::string input;
    double residual = 0.0;
    std::string pathway;
    double error_estimate = 0.0; // per-case error budget
};

struct PropertyReport {
    std::string suite;
    int case_count = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::vector<CaseRecord> cases;
};

struct OperatorChoice {
    std::string family; // m_alpha | t_j_xi | z_j_alpha | V_j_alpha | so2_variant
    int j = -1;         // -1 = every applicable degree
};

struct RunConfig {
    std::vector<int> dims{1, 2};
    std::vector<std::string> suites;       // empty = all
    std::vector<OperatorChoice> operators; // empty = all families
    std::vector<RadialDensity> densities;
    std::vector<int> resolutions{65};
    uint64_t seed = 42;
    std::map<std::string, double> tolerances;
    std::string output_path = "reports";
    std::string output_format = "json";
};

const std::vector<std::string>& suite_names();
double default_tolerance(const std::string& suite);

PropertyReport run_suite(const std::string& name, const RunConfig& cfg);

// shared generators and spec transforms (also used by tests)
Polytope random_polytope(RandomStream& rs, int dim, double radius, int npts = 6);
FunctionSpec random_max_affine_spec(RandomStream& rs, int dim, int npieces, double slope_scale);
FunctionSpec support_spec(const Polytope& K, const Vec& shift);
FunctionSpec rotate_spec(const FunctionSpec& spec, const Mat& rot);      // v o rot^-1
FunctionSpec scale_args_spec(const FunctionSpec& spec, double lambda);   // v(x / lambda)
FunctionSpec spec_add_linear(const FunctionSpec& spec, const Vec& y, double c = 0.0);

// harness sampling box: [-2, 2]^n
GridFunction sample_spec(const FunctionSpec& spec, int res);

} // namespace convval

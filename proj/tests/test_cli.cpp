#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cmd(const std::string& cmd) {
    RunResult r;
    FILE* p = popen((cmd + " 2>&1").c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string cli() { return std::string("\"") + CLI_BIN_PATH + "\""; }

fs::path scratch() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("convval_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
    fs::path p = scratch() / name;
    std::ofstream os(p);
    os << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

const char* kSmallConfig = R"({
  "dims": [1],
  "suites": ["vertical_invariance", "homogeneity"],
  "resolutions": [33],
  "seed": 7
})";

} // namespace

TEST_CASE("verify: exit 0, table output, and report files") {
    fs::path cfg = write_file("small.json", kSmallConfig);
    fs::path out = scratch() / "rep1";
    RunResult r = run_cmd(cli() + " verify --config " + cfg.string() + " --out " + out.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("vertical_invariance") != std::string::npos);
    CHECK(r.out.find("pass") != std::string::npos);
    CHECK(r.out.find("\033[") == std::string::npos); // not a tty: no color codes

    json doc = json::parse(slurp(out / "vertical_invariance.json"));
    CHECK(doc["suite"] == "vertical_invariance");
    CHECK(doc["seed"] == 7);
    CHECK(doc["pass"] == true);
    CHECK(doc["cases"].is_array());
    CHECK(!doc["cases"].empty());
    CHECK(doc["cases"][0].contains("residual"));
    CHECK(fs::exists(out / "homogeneity.json"));
}

TEST_CASE("verify: reruns are identical apart from the timestamp") {
    fs::path cfg = write_file("small.json", kSmallConfig);
    fs::path o1 = scratch() / "rep_a";
    fs::path o2 = scratch() / "rep_b";
    REQUIRE(run_cmd(cli() + " verify --config " + cfg.string() + " --out " + o1.string()).code == 0);
    REQUIRE(run_cmd(cli() + " verify --config " + cfg.string() + " --out " + o2.string()).code == 0);
    for (const char* name : {"vertical_invariance.json", "homogeneity.json"}) {
        json a = json::parse(slurp(o1 / name));
        json b = json::parse(slurp(o2 / name));
        a.erase("generated_at");
        b.erase("generated_at");
        CHECK(a.dump() == b.dump());
    }
}

TEST_CASE("verify: --only restricts and validates the suite name") {
    fs::path cfg = write_file("small.json", kSmallConfig);
    fs::path out = scratch() / "rep_only";
    RunResult r = run_cmd(cli() + " verify --config " + cfg.string() + " --only homogeneity --out " +
                          out.string());
    CHECK(r.code == 0);
    CHECK(fs::exists(out / "homogeneity.json"));
    CHECK_FALSE(fs::exists(out / "vertical_invariance.json"));

    RunResult bad = run_cmd(cli() + " verify --config " + cfg.string() + " --only bogus");
    CHECK(bad.code == 2);
    CHECK(bad.out.find("unknown suite") != std::string::npos);
}

TEST_CASE("verify: --seed overrides the config") {
    fs::path cfg = write_file("small.json", kSmallConfig);
    fs::path out = scratch() / "rep_seed";
    RunResult r = run_cmd(cli() + " verify --config " + cfg.string() +
                          " --only vertical_invariance --seed 99 --out " + out.string());
    CHECK(r.code == 0);
    json doc = json::parse(slurp(out / "vertical_invariance.json"));
    CHECK(doc["seed"] == 99);
}

TEST_CASE("verify: a zero tolerance turns into exit 1 with the report still written") {
    fs::path cfg = write_file("failing.json", R"({
      "dims": [1],
      "suites": ["translation_covariance"],
      "resolutions": [33],
      "tolerances": {"translation_covariance": 0.0}
    })");
    fs::path out = scratch() / "rep_fail";
    RunResult r = run_cmd(cli() + " verify --config " + cfg.string() + " --out " + out.string());
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL") != std::string::npos);
    json doc = json::parse(slurp(out / "translation_covariance.json"));
    CHECK(doc["pass"] == false);
    CHECK(doc["max_residual"].get<double>() > 0.0);
}

TEST_CASE("verify: csv output format") {
    fs::path cfg = write_file("csv.json", R"({
      "dims": [1],
      "suites": ["simplicity"],
      "resolutions": [33],
      "output": {"format": "csv"}
    })");
    fs::path out = scratch() / "rep_csv";
    RunResult r = run_cmd(cli() + " verify --config " + cfg.string() + " --out " + out.string());
    CHECK(r.code == 0);
    std::string csv = slurp(out / "simplicity.csv");
    REQUIRE(!csv.empty());
    CHECK(csv.find("\r\n") != std::string::npos);
    CHECK(csv.substr(0, 5) == "suite");
}

TEST_CASE("verify: malformed configs exit 2 with a diagnostic") {
    fs::path broken = write_file("broken.json", "{ not json");
    CHECK(run_cmd(cli() + " verify --config " + broken.string()).code == 2);

    fs::path unknown_key = write_file("unknown_key.json", R"({"dims": [1], "typo_key": 3})");
    RunResult r1 = run_cmd(cli() + " verify --config " + unknown_key.string());
    CHECK(r1.code == 2);
    CHECK(r1.out.find("typo_key") != std::string::npos);

    fs::path bad_dim = write_file("bad_dim.json", R"({"dims": [4]})");
    CHECK(run_cmd(cli() + " verify --config " + bad_dim.string()).code == 2);

    fs::path bad_res = write_file("bad_res.json", R"({"resolutions": [32]})");
    CHECK(run_cmd(cli() + " verify --config " + bad_res.string()).code == 2);

    CHECK(run_cmd(cli() + " verify --config " + (scratch() / "missing.json").string()).code == 2);
}

TEST_CASE("verify: an inadmissible weight in the config is rejected up front") {
    fs::path cfg = write_file("inadmissible.json", R"({
      "dims": [1],
      "suites": ["simplicity"],
      "densities": [{"kind": "xi", "family": "power", "radius": 1.0, "exponent": 1.0}]
    })");
    RunResult r = run_cmd(cli() + " verify --config " + cfg.string());
    CHECK(r.code == 2);
    CHECK(r.out.find("inadmissible") != std::string::npos);
}

TEST_CASE("steiner: frozen one-dimensional expansion") {
    std::string fn = R"('{"dim": 1, "terms": [{"kind": "quadratic", "center": [1.0]}]}')";
    std::string density = R"('{"kind": "alpha", "family": "hat", "radius": 1.0}')";
    fs::path csv = scratch() / "steiner.csv";
    RunResult r = run_cmd(cli() + " steiner --fn " + fn + " --density " + density + " --res 129" +
                          " --csv " + csv.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("attribution consistent") != std::string::npos);
    CHECK(r.out.find("r^0") != std::string::npos);
    CHECK(r.out.find("coef (-1") != std::string::npos); // c0 = c1 = -1

    std::string table = slurp(csv);
    CHECK(table.substr(0, 7) == "r,m_0\r\n");
    CHECK(table.find("\r\n") != std::string::npos);

    // an xi-kind density is not accepted here
    std::string xi = R"('{"kind": "xi", "family": "hat", "radius": 1.0}')";
    RunResult bad = run_cmd(cli() + " steiner --fn " + fn + " --density " + xi);
    CHECK(bad.code == 2);

    RunResult badres = run_cmd(cli() + " steiner --fn " + fn + " --density " + density + " --res 10");
    CHECK(badres.code == 2);
}

TEST_CASE("conjugate: exact complex of the absolute value") {
    std::string fn = R"('{"dim": 1, "terms": [{"kind": "max_affine", "pieces": [{"a": [1.0]}, {"a": [-1.0]}]}]}')";
    RunResult r = run_cmd(cli() + " conjugate --fn " + fn);
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["kind"] == "complex");
    CHECK(doc["dim"] == 1);
    REQUIRE(doc["cells"].size() == 1);
    CHECK(doc["cells"][0]["gradient"][0].get<double>() == 0.0);
    CHECK(doc["cells"][0]["mass"].get<double>() == doctest::Approx(2.0));
    CHECK(doc["cells"][0]["cell_moment"][0].get<double>() == doctest::Approx(0.0));
    CHECK(doc["domain"].size() == 2);
}

TEST_CASE("conjugate: grid fallback for smooth specs writes a sampled function") {
    std::string fn = R"('{"dim": 1, "terms": [{"kind": "quadratic"}]}')";
    fs::path out = scratch() / "conj.json";
    RunResult r = run_cmd(cli() + " conjugate --fn " + fn + " --res 65 --out " + out.string());
    CHECK(r.code == 0);
    json doc = json::parse(slurp(out));
    CHECK(doc["kind"] == "grid");
    CHECK(doc["res"][0] == 65);
    REQUIRE(doc["values"].size() == 65);
    // self-conjugate up to the interpolation defect
    double lo = doc["lo"][0].get<double>(), hi = doc["hi"][0].get<double>();
    for (size_t i = 0; i < 65; ++i) {
        double y = lo + (hi - lo) * static_cast<double>(i) / 64.0;
        CHECK(std::fabs(doc["values"][i].get<double>() - 0.5 * y * y) <= 1e-3);
    }
}

TEST_CASE("argument errors exit 2, help exits 0") {
    CHECK(run_cmd(cli()).code == 2);                      // a subcommand is required
    CHECK(run_cmd(cli() + " verify").code == 2);          // --config is required
    CHECK(run_cmd(cli() + " frobnicate").code == 2);
    RunResult help = run_cmd(cli() + " --help");
    CHECK(help.code == 0);
    CHECK(help.out.find("verify") != std::string::npos);
    CHECK(help.out.find("steiner") != std::string::npos);
    CHECK(help.out.find("conjugate") != std::string::npos);
}

#include "convval/report_io.hpp"

#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace convval {

namespace {

std::string fmt17(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

} // namespace

nlohmann::ordered_json report_to_json(const PropertyReport& rep, uint64_t seed,
                                      const std::string& generated_at) {
    nlohmann::ordered_json doc;
    doc["schema"] = "convval-report/1";
    doc["suite"] = rep.suite;
    doc["generated_at"] = generated_at;
    doc["seed"] = seed;
    doc["case_count"] = rep.case_count;
    doc["max_residual"] = rep.max_residual;
    doc["tolerance"] = rep.tolerance;
    doc["pass"] = rep.pass;
    doc["cases"] = nlohmann::ordered_json::array();
    for (const auto& c : rep.cases) {
        nlohmann::ordered_json jc;
        jc["index"] = c.index;
        jc["input"] = c.input;
        jc["residual"] = c.residual;
        jc["pathway"] = c.pathway;
        jc["error_estimate"] = c.error_estimate;
        doc["cases"].push_back(jc);
    }
    return doc;
}

std::string csv_field(const std::string& s) {
    bool needs = s.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += "\"";
    return out;
}

std::string report_to_csv(const PropertyReport& rep, uint64_t seed,
                          const std::string& generated_at) {
    std::string out =
        "suite,seed,generated_at,tolerance,pass,index,input,residual,pathway,error_estimate\r\n";
    for (const auto& c : rep.cases) {
        out += csv_field(rep.suite) + "," + std::to_string(seed) + "," + csv_field(generated_at) +
               "," + fmt17(rep.tolerance) + "," + (rep.pass ? "true" : "false") + "," +
               std::to_string(c.index) + "," + csv_field(c.input) + "," + fmt17(c.residual) + "," +
               c.pathway + "," + fmt17(c.error_estimate) + "\r\n";
    }
    return out;
}

std::string iso_timestamp_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << text;
    if (!os) throw std::runtime_error("write failed: " + path);
}

} // namespace convval

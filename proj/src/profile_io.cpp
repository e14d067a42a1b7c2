#include "rsl/profile_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rsl/errors.hpp"

namespace rsl {

std::string format_double(double v) {
    char buf[40];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(len));
}

double parse_double(const Json& v) {
    if (v.is_number()) return v.get<double>();
    if (!v.is_string()) throw InvalidParameters("expected a number or numeric string");
    const auto& s = v.get_ref<const std::string&>();
    double out = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, out);
    if (ec != std::errc() || ptr != end) throw InvalidParameters("malformed number '" + s + "'");
    return out;
}

Json number_json(double v) { return std::isfinite(v) ? Json(format_double(v)) : Json(nullptr); }

Json profile_to_json(const RadialProfile& prof) {
    prof.validate();
    Json doc;
    doc["schema"] = std::string(profile_schema);
    Json params;
    params["n"] = prof.params.n;
    params["rho"] = format_double(prof.params.rho);
    params["lambda"] = format_double(prof.params.lambda);
    params["kappa"] = prof.params.kappa;
    doc["params"] = params;
    doc["normalization"] = to_string(prof.normalization);
    Json samples = Json::array();
    for (std::size_t i = 0; i < prof.size(); ++i) {
        Json s;
        s["r"] = format_double(prof.r[i]);
        s["omega"] = format_double(prof.omega[i]);
        s["omega_p"] = format_double(prof.omega_p[i]);
        s["omega_pp"] = format_double(prof.omega_pp[i]);
        s["f"] = format_double(prof.f[i]);
        s["f_p"] = format_double(prof.f_p[i]);
        samples.push_back(std::move(s));
    }
    doc["samples"] = std::move(samples);
    return doc;
}

RadialProfile profile_from_json(const Json& doc) {
    try {
        if (doc.at("schema").get<std::string>() != profile_schema)
            throw InvalidParameters("unsupported profile schema " + doc.at("schema").dump());
        RadialProfile prof;
        const auto& params = doc.at("params");
        prof.params.n = params.at("n").get<int>();
        prof.params.rho = parse_double(params.at("rho"));
        prof.params.lambda = parse_double(params.at("lambda"));
        prof.params.kappa = params.at("kappa").get<int>();
        prof.params.validate();
        prof.normalization = normalization_from_string(doc.at("normalization").get<std::string>());
        const auto& samples = doc.at("samples");
        prof.reserve(samples.size());
        for (const auto& s : samples) {
            prof.push_back(parse_double(s.at("r")), parse_double(s.at("omega")), parse_double(s.at("omega_p")),
                           parse_double(s.at("omega_pp")), parse_double(s.at("f")), parse_double(s.at("f_p")));
        }
        prof.validate();
        return prof;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidParameters(std::string("malformed profile: ") + e.what());
    }
}

std::string dump_json(const Json& doc) { return doc.dump(2) + "\n"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidParameters("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw InvalidParameters("failed writing " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidParameters("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_profile(const std::filesystem::path& path, const RadialProfile& prof) {
    write_text(path, dump_json(profile_to_json(prof)));
}

RadialProfile read_profile(const std::filesystem::path& path) {
    Json doc;
    try {
        doc = Json::parse(read_text(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidParameters(path.string() + ": " + e.what());
    }
    return profile_from_json(doc);
}

}  // namespace rsl

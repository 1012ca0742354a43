#pragma once

// State files and CSV output.
//
// A state file is a JSON object
//   { "basis": "ee,eg,ge,gg", "matrix": [[[re, im], x4], x4] }
// holding the full 4x4 matrix. Doubles are written with 17 significant digits
// so that a write/read cycle reproduces every entry exactly.

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "discord_lab/experiments.hpp"

namespace discord {

inline constexpr const char* kBasisLabel = "ee,eg,ge,gg";

/// Malformed file contents (as opposed to an invalid matrix).
class StateFormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline nlohmann::json state_to_json(const DensityMatrix4& rho) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < 4; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < 4; ++j) row.push_back({rho(i, j).real(), rho(i, j).imag()});
        rows.push_back(row);
    }
    return {{"basis", kBasisLabel}, {"matrix", rows}};
}

inline Matrix4 matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw StateFormatError("state file: top level must be a JSON object");
    if (!j.contains("basis") || !j["basis"].is_string() || j["basis"].get<std::string>() != kBasisLabel) {
        throw StateFormatError(std::string("state file: \"basis\" must be \"") + kBasisLabel + "\"");
    }
    if (!j.contains("matrix")) throw StateFormatError("state file: missing \"matrix\"");
    const auto& rows = j["matrix"];
    if (!rows.is_array() || rows.size() != 4) throw StateFormatError("state file: \"matrix\" must have 4 rows");
    Matrix4 m;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || row.size() != 4) {
            throw StateFormatError("state file: row " + std::to_string(i) + " must have 4 entries");
        }
        for (std::size_t k = 0; k < 4; ++k) {
            const auto& e = row[k];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
                throw StateFormatError("state file: entry (" + std::to_string(i) + "," + std::to_string(k) +
                                       ") must be [re, im]");
            }
            m(i, k) = cplx(e[0].get<double>(), e[1].get<double>());
        }
    }
    return m;
}

inline DensityMatrix4 state_from_json(const nlohmann::json& j, double tol_psd = kTolPsd) {
    return DensityMatrix4(matrix_from_json(j), tol_psd);
}

inline std::string state_to_string(const DensityMatrix4& rho) { return state_to_json(rho).dump(2) + "\n"; }

inline DensityMatrix4 state_from_string(const std::string& text, double tol_psd = kTolPsd) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw StateFormatError(std::string("state file: malformed JSON: ") + e.what());
    }
    return state_from_json(j, tol_psd);
}

inline DensityMatrix4 read_state_file(const std::string& path, double tol_psd = kTolPsd) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::stringstream ss;
    ss << in.rdbuf();
    return state_from_string(ss.str(), tol_psd);
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw IoError("write to '" + path + "' failed");
}

inline void write_state_file(const std::string& path, const DensityMatrix4& rho) {
    write_text_file(path, state_to_string(rho));
}

// ---------------------------------------------------------------------------
// CSV

/// 12 significant digits, '.' decimal separator regardless of locale.
inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    std::string s(buf);
    for (char& c : s)
        if (c == ',') c = '.';
    return s;
}

inline std::string curves_to_csv(const std::vector<CurveSample>& samples, const std::string& x_name = "gamma0t",
                                 double x_scale = 1.0) {
    std::string out = "label," + x_name + ",value\n";
    for (const auto& s : samples) out += s.label + "," + format_number(s.x * x_scale) + "," + format_number(s.value) + "\n";
    return out;
}

inline std::string sweep_to_csv(const std::vector<SweepRecord>& records) {
    std::string out = "seed,family,cm0,peak_dg,peak_t\n";
    for (const auto& r : records) {
        out += std::to_string(r.seed) + "," + to_string(r.family) + "," + format_number(r.cm0) + "," +
               format_number(r.peak_dg) + "," + format_number(r.peak_t) + "\n";
    }
    return out;
}

inline std::string dmax_to_csv(const std::vector<DmaxPoint>& points) {
    std::string out = "alpha,dmax,t_peak\n";
    for (const auto& p : points) out += format_number(p.alpha) + "," + format_number(p.dmax) + "," + format_number(p.t_peak) + "\n";
    return out;
}

} // namespace discord

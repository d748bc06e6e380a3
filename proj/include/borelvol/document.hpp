#pragma once

// JSON input documents for the command line tools plus small deterministic
// writers (JSON and CSV) that print doubles with 17 significant digits.

#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "borelvol/flag.hpp"
#include "borelvol/projective.hpp"
#include "borelvol/rigidity.hpp"

namespace borelvol {

struct RunConfig {
    int K = 30;
    int L = 3;
    std::uint64_t seed = 1;
    double tol = 1e-3;
    EpsSchedule eps_schedule;
    DriftSpec drift;
};

struct InputDocument {
    int n = 2;
    std::vector<ProjectivePoint> points;
    std::vector<Flag> flags;
    RunConfig config;
};

class document_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline ProjectivePoint parse_point(const nlohmann::json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return ProjectivePoint::infinity();
        throw document_error("point string must be \"inf\"");
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw document_error("point must be [re, im] or \"inf\"");
    return ProjectivePoint::from_value(cplx(j[0].get<double>(), j[1].get<double>()));
}

inline cplx parse_entry(const nlohmann::json& j) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return cplx(j[0].get<double>(), j[1].get<double>());
    throw document_error("matrix entry must be a number or [re, im]");
}

inline Mat parse_matrix(const nlohmann::json& j, int n) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw document_error("matrix must have n rows");
    Mat m(n, n);
    for (int r = 0; r < n; ++r) {
        const auto& row = j[r];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw document_error("matrix row must have n entries");
        for (int c = 0; c < n; ++c) m(r, c) = parse_entry(row[c]);
    }
    return m;
}

}  // namespace detail

inline InputDocument parse_input(const nlohmann::json& j) {
    if (!j.is_object()) throw document_error("input document must be an object");
    InputDocument doc;
    if (j.contains("n")) {
        if (!j["n"].is_number_integer()) throw document_error("n must be an integer");
        doc.n = j["n"].get<int>();
        if (doc.n < 2) throw document_error("n must be at least 2");
    }
    if (j.contains("points")) {
        if (!j["points"].is_array()) throw document_error("points must be an array");
        for (const auto& p : j["points"]) doc.points.push_back(detail::parse_point(p));
    }
    if (j.contains("flags")) {
        if (!j["flags"].is_array()) throw document_error("flags must be an array");
        for (const auto& m : j["flags"]) {
            try {
                doc.flags.emplace_back(detail::parse_matrix(m, doc.n));
            } catch (const conditioning_error&) {
                throw document_error("flag matrix is singular");
            }
        }
    }
    if (j.contains("config")) {
        const auto& c = j["config"];
        if (!c.is_object()) throw document_error("config must be an object");
        if (c.contains("K")) doc.config.K = c["K"].get<int>();
        if (c.contains("L")) doc.config.L = c["L"].get<int>();
        if (c.contains("seed")) doc.config.seed = c["seed"].get<std::uint64_t>();
        if (c.contains("tol")) doc.config.tol = c["tol"].get<double>();
        if (c.contains("eps_schedule")) {
            const std::string s = c["eps_schedule"].get<std::string>();
            if (s == "zero") doc.config.eps_schedule.kind = EpsSchedule::Kind::zero;
            else if (s == "pow2") doc.config.eps_schedule.kind = EpsSchedule::Kind::pow2;
            else if (s == "geometric")
                doc.config.eps_schedule.kind = EpsSchedule::Kind::geometric;
            else throw document_error("eps_schedule must be zero, pow2 or geometric");
        }
        if (c.contains("eps_scale"))
            doc.config.eps_schedule.scale = c["eps_scale"].get<double>();
        if (c.contains("eps_ratio"))
            doc.config.eps_schedule.ratio = c["eps_ratio"].get<double>();
        if (c.contains("drift")) {
            const std::string s = c["drift"].get<std::string>();
            if (s == "none") doc.config.drift.kind = DriftSpec::Kind::none;
            else if (s == "diag") doc.config.drift.kind = DriftSpec::Kind::diag;
            else if (s == "random") doc.config.drift.kind = DriftSpec::Kind::random;
            else throw document_error("drift must be none, diag or random");
        }
        if (c.contains("drift_scale"))
            doc.config.drift.scale = c["drift_scale"].get<double>();
    }
    for (const auto& f : doc.flags)
        if (f.n() != doc.n) throw document_error("flag size does not match n");
    return doc;
}

inline InputDocument parse_input_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw document_error(std::string("invalid JSON: ") + e.what());
    }
    try {
        return parse_input(j);
    } catch (const nlohmann::json::exception& e) {
        throw document_error(std::string("invalid field type: ") + e.what());
    }
}

// 17 significant digits round-trip any double exactly.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_complex_json(cplx z) {
    return "[" + format_double(z.real()) + ", " + format_double(z.imag()) + "]";
}

inline std::string format_point_json(const ProjectivePoint& p) {
    if (p.is_infinity()) return "\"inf\"";
    return format_complex_json(p.value());
}

inline std::string format_matrix_json(const Mat& m) {
    std::string out = "[";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        if (r) out += ", ";
        out += "[";
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out += ", ";
            out += format_complex_json(m(r, c));
        }
        out += "]";
    }
    return out + "]";
}

// Minimal ordered JSON object writer: nlohmann's dumps reorder keys and
// shorten doubles, so outputs are assembled by hand.
class JsonWriter {
  public:
    void field(const std::string& key, const std::string& raw) {
        if (!body_.empty()) body_ += ", ";
        body_ += "\"" + key + "\": " + raw;
    }
    void text_field(const std::string& key, const std::string& value) {
        field(key, "\"" + value + "\"");
    }
    void number_field(const std::string& key, double v) { field(key, format_double(v)); }
    void int_field(const std::string& key, long long v) { field(key, std::to_string(v)); }
    std::string str() const { return "{" + body_ + "}"; }

  private:
    std::string body_;
};

}  // namespace borelvol

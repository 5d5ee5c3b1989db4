#pragma once
// JSON and CSV serialisation of verification reports. The JSON layout is
// documented in docs/report-schema.md; complex numbers are {"re", "im"} and
// non-finite reals are written as null.

#include <cmath>
#include <fstream>
#include <ostream>
#include <string>

#include "json.hpp"

#include "betapenta/report.hpp"

namespace betapenta::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline json real(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json complex(cplx z) { return {{"re", real(z.real())}, {"im", real(z.imag())}}; }

inline json to_json(const PointRecord& p)
{
    json in = json::object();
    for (const auto& [name, v] : p.inputs) in[name] = complex(v);
    json j = {{"inputs", in},      {"lhs", complex(p.lhs)},         {"rhs", complex(p.rhs)},
              {"abs_err", real(p.abs_err)}, {"rel_err", real(p.rel_err)}, {"quad_err", real(p.quad_err)}};
    j["note"] = p.note;
    if (p.error_kind) j["error"] = {{"kind", std::string(to_string(*p.error_kind))}, {"message", p.error_message}};
    else j["error"] = nullptr;
    return j;
}

inline json to_json(const VerificationReport& r)
{
    json params = json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    json points = json::array();
    for (const auto& p : r.points) points.push_back(to_json(p));
    return {{"schema_version", kSchemaVersion},
            {"suite", r.suite},
            {"params", params},
            {"tol", real(r.tol)},
            {"points", points},
            {"max_rel_err", real(r.max_rel_err)},
            {"error_count", r.error_count()},
            {"pass", r.pass},
            {"wall_seconds", r.wall_seconds}};
}

inline std::string csv_field(std::string s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

/// One row per point: index, note, inputs as "name=re+imi" joined by ';',
/// the two sides, the residuals and the error kind (empty if none).
inline void write_csv(std::ostream& os, const VerificationReport& r)
{
    os.precision(17);
    os << "index,note,inputs,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,quad_err,error\n";
    for (std::size_t k = 0; k < r.points.size(); ++k) {
        const auto& p = r.points[k];
        std::string in;
        for (const auto& [name, v] : p.inputs) {
            std::ostringstream s;
            s.precision(17);
            s << name << "=" << v.real() << (v.imag() < 0 ? "" : "+") << v.imag() << "i";
            in += (in.empty() ? "" : ";") + s.str();
        }
        os << k << "," << csv_field(p.note) << "," << csv_field(in) << "," << p.lhs.real() << "," << p.lhs.imag() << ","
           << p.rhs.real() << "," << p.rhs.imag() << "," << p.abs_err << "," << p.rel_err << "," << p.quad_err << ","
           << (p.error_kind ? std::string(to_string(*p.error_kind)) : "") << "\n";
    }
}

} // namespace betapenta::io

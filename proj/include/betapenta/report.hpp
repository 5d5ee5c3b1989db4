#pragma once

// Per-sample verification records and their aggregation.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "betapenta/cmath.hpp"
#include "betapenta/error.hpp"

namespace betapenta {

struct PointRecord {
    std::vector<std::pair<std::string, cplx>> inputs;
    cplx lhs{};
    cplx rhs{};
    double abs_err = 0.0;
    double rel_err = 0.0;
    double quad_err = 0.0;
    std::optional<ErrorKind> error_kind;
    std::string error_message;
    std::string note;

    bool failed() const { return error_kind.has_value(); }
};

inline PointRecord make_record(std::vector<std::pair<std::string, cplx>> inputs, cplx lhs, cplx rhs,
                               double quad_err = 0.0)
{
    PointRecord r;
    r.inputs = std::move(inputs);
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_err = std::abs(lhs - rhs);
    r.rel_err = rel_err(lhs, rhs);
    r.quad_err = quad_err;
    return r;
}

inline PointRecord error_record(std::vector<std::pair<std::string, cplx>> inputs, const Error& e)
{
    PointRecord r;
    r.inputs = std::move(inputs);
    r.error_kind = e.kind();
    r.error_message = e.what();
    r.abs_err = r.rel_err = std::numeric_limits<double>::quiet_NaN();
    return r;
}

struct VerificationReport {
    std::string suite;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<PointRecord> points;
    double tol = 0.0;
    double max_rel_err = 0.0;
    bool pass = false;
    double wall_seconds = 0.0;

    /// pass <=> every point evaluated and max relative residual <= tol.
    void finalize()
    {
        max_rel_err = 0.0;
        bool any_error = false;
        for (const auto& p : points) {
            if (p.failed()) {
                any_error = true;
                continue;
            }
            max_rel_err = std::max(max_rel_err, std::isnan(p.rel_err) ? INFINITY : p.rel_err);
        }
        pass = !any_error && !points.empty() && max_rel_err <= tol;
    }

    std::size_t error_count() const
    {
        return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const auto& p) { return p.failed(); }));
    }
};

} // namespace betapenta

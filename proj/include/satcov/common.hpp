#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace satcov {

// Raised when an analytic expression cannot be evaluated reliably
// (alternating-sum blowup, series non-convergence, unsupported range).
// Distinct from std::domain_error so the CLI can map it to its own exit code.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Configuration / input-file problems.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double kPi = 3.14159265358979323846;

// Compensated (Kahan) accumulator. The coverage sums alternate in sign and
// span many orders of magnitude, so plain accumulation loses digits.
class KahanSum {
public:
    void add(double x) {
        const double y = x - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double v) { return 10.0 * std::log10(v); }
inline double dbm_to_watt(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
inline double watt_to_dbm(double w) { return 10.0 * std::log10(w / 1e-3); }

inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

inline double square(double x) { return x * x; }

} // namespace satcov

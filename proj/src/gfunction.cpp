#include "tbf/gfunction.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tbf/spectral.hpp"

namespace tbf {

StoppingDistance StoppingDistance::finite(long n) {
    if (n < 0) {
        throw std::domain_error("stopping distance must be nonnegative, got " + std::to_string(n));
    }
    return StoppingDistance(false, n);
}

StoppingDistance StoppingDistance::infinity() {
    return StoppingDistance(true, 0);
}

long StoppingDistance::value() const {
    if (infinite_) {
        throw std::logic_error("infinite stopping distance has no integer value");
    }
    return n_;
}

namespace {
constexpr long kUnderflowCutoff = 10000;
}

double g(Density pd, StoppingDistance n) {
    const Spectrum s = build_spectrum(pd);
    if (n.is_infinite()) return s.lambda_pf;
    const long m = n.value();
    if (m == 0) return 0.0;
    if (m == 1) return 1.0 - pd.value();
    if (m > kUnderflowCutoff) return s.lambda_pf;
    const double c = 1.0 - s.lambda_r;
    const double d = 1.0 - s.lambda_pf;
    const double am1 = std::pow(s.a, static_cast<double>(m - 1));
    return s.lambda_pf * (c - am1 * s.a * d) / (c - am1 * d);
}

double variation(Density pd, long n) {
    if (n < 2) {
        throw std::domain_error("variation is only defined for n >= 2, got " + std::to_string(n));
    }
    const Spectrum s = build_spectrum(pd);
    const double c = 1.0 - s.lambda_r;
    const double d = 1.0 - s.lambda_pf;
    const double absa = std::fabs(s.a);
    const double an1 = std::pow(s.a, static_cast<double>(n - 1));
    const double dn = c - an1 * d;
    const double dn1 = c - an1 * s.a * d;
    const double one_minus_a = 1.0 - s.a;
    return s.lambda_pf * c * d * one_minus_a * one_minus_a *
           std::pow(absa, static_cast<double>(n - 1)) / (dn * dn1);
}

double g_gap(Density pd, long n) {
    if (n < 2) {
        throw std::domain_error("g_gap is only defined for n >= 2, got " + std::to_string(n));
    }
    const Spectrum s = build_spectrum(pd);
    const double c = 1.0 - s.lambda_r;
    const double d = 1.0 - s.lambda_pf;
    const double an1 = std::pow(s.a, static_cast<double>(n - 1));
    return s.lambda_pf * d * (1.0 - s.a) * an1 / (c - an1 * d);
}

double parity_limit(long n) {
    if (n < 1) {
        throw std::domain_error("parity limit needs n >= 1, got " + std::to_string(n));
    }
    if (n == 1 || n % 2 == 0) return 0.0;
    return 2.0 / static_cast<double>(n + 1);
}

std::vector<std::vector<double>> sweep_g(const std::vector<Density>& p_values,
                                         const std::vector<StoppingDistance>& n_values) {
    if (p_values.empty() || n_values.empty()) {
        throw std::domain_error("sweep needs at least one density and one stopping distance");
    }
    std::vector<std::vector<double>> table;
    table.reserve(p_values.size());
    for (const Density& p : p_values) {
        std::vector<double> row;
        row.reserve(n_values.size());
        for (const StoppingDistance& n : n_values) row.push_back(g(p, n));
        table.push_back(std::move(row));
    }
    return table;
}

} // namespace tbf

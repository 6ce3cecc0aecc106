#include "tbf/spectral.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace tbf {

Spectrum build_spectrum(Density pd) {
    const double p = pd.value();
    Spectrum s;
    s.p = p;
    const double disc = (1.0 - p) * (3.0 * p + 1.0);
    s.sqrt_disc = std::sqrt(disc);
    s.lambda_pf = (1.0 - p + s.sqrt_disc) / 2.0;
    s.lambda_r = (1.0 - p - s.sqrt_disc) / 2.0;
    s.a = s.lambda_r / s.lambda_pf;
    const double sq = std::sqrt(p * (1.0 - p));
    s.v_pf = {s.lambda_pf / sq, 1.0};
    s.v_r = {s.lambda_r / sq, 1.0};
    s.c_ratio = s.sqrt_disc / std::fabs(s.lambda_r);
    s.d_const = (1.0 - p) * (s.lambda_pf + 2.0 * p) / (s.lambda_pf * s.lambda_pf * s.lambda_pf);
    return s;
}

Mat2 transfer_matrix(Density pd) {
    const double p = pd.value();
    const double sq = std::sqrt(p * (1.0 - p));
    return {{{1.0 - p, sq}, {sq, 0.0}}};
}

namespace {

// Inner matrix of the closed power form: Q^m = lambda_pf^m / sqrt_disc * M_m
// with M_m = [[lambda_pf - a^m lambda_r, (1-a^m) s], [(1-a^m) s,
// -lambda_r + a^m lambda_pf]], s = sqrt(p(1-p)).
Mat2 inner_power(const Spectrum& s, long m) {
    const double sq = std::sqrt(s.p * (1.0 - s.p));
    const double am = std::pow(s.a, static_cast<double>(m));
    return {{{s.lambda_pf - am * s.lambda_r, (1.0 - am) * sq},
             {(1.0 - am) * sq, -s.lambda_r + am * s.lambda_pf}}};
}

void require_positive_exponent(long m) {
    if (m < 1) {
        throw std::domain_error("matrix power exponent must be >= 1, got " + std::to_string(m));
    }
}

} // namespace

Mat2 q_power(Density pd, long m) {
    require_positive_exponent(m);
    const Spectrum s = build_spectrum(pd);
    const double f = std::pow(s.lambda_pf, static_cast<double>(m)) / s.sqrt_disc;
    Mat2 inner = inner_power(s, m);
    for (auto& row : inner) {
        for (auto& v : row) v *= f;
    }
    return inner;
}

QPowerLog q_power_log(Density pd, long m) {
    require_positive_exponent(m);
    const Spectrum s = build_spectrum(pd);
    const double logf = static_cast<double>(m) * std::log(s.lambda_pf) - std::log(s.sqrt_disc);
    const Mat2 inner = inner_power(s, m);
    QPowerLog out;
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            const double v = inner[x][y];
            if (v > 0.0) {
                out.sign[x][y] = 1;
                out.log_abs[x][y] = logf + std::log(v);
            } else {
                out.sign[x][y] = 0;
                out.log_abs[x][y] = -std::numeric_limits<double>::infinity();
            }
        }
    }
    return out;
}

double log_q_entry(Density pd, long m, int x, int y) {
    return q_power_log(pd, m).log_abs[x][y];
}

double ratio_limit_onesided(Density pd, long i, int x, int y) {
    const Spectrum s = build_spectrum(pd);
    return std::pow(s.lambda_pf, static_cast<double>(i)) * s.v_pf[x] / s.v_pf[y];
}

double ratio_limit_twosided(Density pd, long i, int x, int y) {
    const Spectrum s = build_spectrum(pd);
    return std::pow(s.lambda_pf, static_cast<double>(i)) * s.c_ratio / (s.v_pf[x] * s.v_pf[y]);
}

double isolation_weight(Density pd, long interval_length, int left_spin, int right_spin) {
    if (interval_length < 0) {
        throw std::domain_error("interval length must be nonnegative");
    }
    const double p = pd.value();
    const auto alpha = [&](int x) { return x == 1 ? p : 1.0 - p; };
    const double logq = log_q_entry(pd, interval_length + 1, left_spin, right_spin);
    const double denom = 0.5 * (std::log(alpha(left_spin)) + std::log(alpha(right_spin)));
    if (std::isinf(logq)) return 0.0;
    return std::exp(logq - denom);
}

} // namespace tbf

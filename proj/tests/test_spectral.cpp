#include "doctest.h"

#include "tbf/density.hpp"
#include "tbf/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace tbf;

namespace {

std::vector<double> dense_grid() {
    std::vector<double> out;
    for (int i = 1; i <= 19; ++i) out.push_back(0.05 * i);
    return out;
}

Mat2 multiply(const Mat2& x, const Mat2& y) {
    Mat2 z{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            z[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
    return z;
}

// direct sum over first-layer words of the interval: every occupied site
// must have an occupied neighbour missing, i.e. the glued string
// left|word|right keeps no adjacent occupied pair inside the interval
double isolation_by_enumeration(double p, long len, int left, int right) {
    double total = 0.0;
    for (std::uint32_t w = 0; w < (1u << len); ++w) {
        bool pair = false;
        int prev = left;
        for (long i = 0; i < len; ++i) {
            int cur = (w >> i) & 1;
            if (prev == 1 && cur == 1) pair = true;
            prev = cur;
        }
        if (prev == 1 && right == 1) pair = true;
        if (pair) continue;
        double weight = 1.0;
        for (long i = 0; i < len; ++i)
            weight *= ((w >> i) & 1) ? p : (1.0 - p);
        total += weight;
    }
    return total;
}

} // namespace

TEST_SUITE("spectral") {

TEST_CASE("eigen data at p one half matches the closed forms") {
    Spectrum s = build_spectrum(Density(0.5));
    CHECK(std::fabs(s.lambda_pf - 0.80901699437494745) < 1e-15);
    CHECK(std::fabs(s.lambda_r - (-0.30901699437494745)) < 1e-15);
    CHECK(std::fabs(s.a - (-0.38196601125010515)) < 1e-15);
    CHECK(std::fabs(s.c_ratio - 3.6180339887498949) < 1e-14);
    CHECK(std::fabs(s.d_const - 1.7082039324993694) < 1e-14);
    CHECK(std::fabs(s.sqrt_disc - std::sqrt(0.5 * 2.5)) < 1e-15);
}

TEST_CASE("eigen identities hold across the density grid") {
    for (double pv : dense_grid()) {
        Density p(pv);
        Spectrum s = build_spectrum(p);
        double q = 1.0 - pv;

        CHECK(std::fabs(s.lambda_pf + s.lambda_r - q) < 1e-12);
        CHECK(std::fabs(s.lambda_pf * s.lambda_r + pv * q) < 1e-12);
        CHECK(std::fabs(s.c_ratio * std::fabs(s.lambda_r) - s.sqrt_disc) < 1e-12);
        CHECK(std::fabs(s.d_const * s.lambda_pf * s.lambda_pf * s.lambda_pf -
                        q * (s.lambda_pf + 2.0 * pv)) < 1e-12);

        CHECK(s.lambda_pf > 0.0);
        CHECK(s.lambda_pf < 1.0);
        CHECK(s.lambda_r < 0.0);
        CHECK(s.lambda_r > -1.0 / 3.0);
        CHECK(s.a < 0.0);
        CHECK(s.a > -1.0);

        Mat2 qm = transfer_matrix(p);
        for (int i = 0; i < 2; ++i) {
            double got = qm[i][0] * s.v_pf[0] + qm[i][1] * s.v_pf[1];
            CHECK(std::fabs(got - s.lambda_pf * s.v_pf[i]) < 1e-12);
            double got_r = qm[i][0] * s.v_r[0] + qm[i][1] * s.v_r[1];
            CHECK(std::fabs(got_r - s.lambda_r * s.v_r[i]) < 1e-12);
        }
    }
}

TEST_CASE("eigenvalue ratio decreases strictly in the density") {
    double prev = 0.0;
    bool first = true;
    for (double pv : dense_grid()) {
        double a = build_spectrum(Density(pv)).a;
        if (!first) CHECK(a < prev);
        prev = a;
        first = false;
    }
}

TEST_CASE("spectral powers match repeated multiplication") {
    for (double pv : {0.3, 0.5, 0.8}) {
        Density p(pv);
        Mat2 acc = transfer_matrix(p);
        for (long m = 1; m <= 30; ++m) {
            Mat2 closed = q_power(p, m);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    double scale = std::fabs(acc[i][j]) + 1e-300;
                    CHECK(std::fabs(closed[i][j] - acc[i][j]) / scale < 1e-10);
                }
            acc = multiply(acc, transfer_matrix(p));
        }
    }
}

TEST_CASE("zeroth power is rejected") {
    CHECK_THROWS_AS(q_power(Density(0.5), 0), std::domain_error);
    CHECK_THROWS_AS(q_power_log(Density(0.5), 0), std::domain_error);
}

TEST_CASE("log scaled powers agree with the plain ones") {
    for (double pv : {0.25, 0.6}) {
        Density p(pv);
        for (long m : {1L, 2L, 5L, 12L, 30L}) {
            Mat2 plain = q_power(p, m);
            QPowerLog lg = q_power_log(p, m);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    if (lg.sign[i][j] == 0) {
                        CHECK(plain[i][j] == 0.0);
                        CHECK(std::isinf(lg.log_abs[i][j]));
                        continue;
                    }
                    CHECK(lg.sign[i][j] == 1);
                    double rebuilt = std::exp(lg.log_abs[i][j]);
                    CHECK(std::fabs(rebuilt - plain[i][j]) /
                              (plain[i][j] + 1e-300) < 1e-10);
                }
        }
    }
}

TEST_CASE("only the single step has a vanishing corner entry") {
    QPowerLog one = q_power_log(Density(0.5), 1);
    CHECK(one.sign[1][1] == 0);
    CHECK(one.sign[0][0] == 1);
    QPowerLog two = q_power_log(Density(0.5), 2);
    CHECK(two.sign[1][1] == 1);
}

TEST_CASE("log entries stay finite far past the underflow point") {
    Density p(0.5);
    double log_pf = std::log(build_spectrum(p).lambda_pf);
    double prev = log_q_entry(p, 5000, 0, 0);
    CHECK(std::isfinite(prev));
    CHECK(prev < 0.0);
    double next = log_q_entry(p, 5001, 0, 0);
    CHECK(std::fabs((next - prev) - log_pf) < 1e-12);
}

TEST_CASE("ratio limits are the limits of the power ratios") {
    for (double pv : {0.4, 0.7}) {
        Density p(pv);
        long n = 40;
        struct Probe { long i; int x; int y; };
        for (Probe pr : {Probe{0, 0, 1}, Probe{1, 0, 0}, Probe{2, 1, 0}}) {
            double finite = q_power(p, n + pr.i)[0][pr.x] / q_power(p, n)[0][pr.y];
            double limit = ratio_limit_onesided(p, pr.i, pr.x, pr.y);
            CHECK(std::fabs(finite - limit) / std::fabs(limit) < 1e-10);
        }
        double finite2 = q_power(p, 2 * n)[0][0] /
                         (q_power(p, n)[0][1] * q_power(p, n)[1][0]);
        double limit2 = ratio_limit_twosided(p, 0, 1, 1);
        CHECK(std::fabs(finite2 - limit2) / std::fabs(limit2) < 1e-10);
        CHECK(std::fabs(limit2 - build_spectrum(p).c_ratio) < 1e-12);
    }
}

TEST_CASE("isolation weight anchors") {
    Density half(0.5);
    CHECK(std::fabs(isolation_weight(half, 1, 0, 0) - 1.0) < 1e-12);
    CHECK(std::fabs(isolation_weight(half, 2, 1, 1) - 0.25) < 1e-12);
    CHECK(isolation_weight(half, 0, 1, 1) == 0.0);
    CHECK(std::fabs(isolation_weight(half, 0, 1, 0) - 1.0) < 1e-12);
}

TEST_CASE("isolation weight equals the direct enumeration") {
    for (double pv : {0.3, 0.7}) {
        Density p(pv);
        for (long len = 1; len <= 10; ++len)
            for (int l = 0; l < 2; ++l)
                for (int r = 0; r < 2; ++r) {
                    double direct = isolation_by_enumeration(pv, len, l, r);
                    double closed = isolation_weight(p, len, l, r);
                    CHECK(std::fabs(direct - closed) < 1e-12);
                }
    }
}

TEST_CASE("densities outside the open interval are rejected") {
    CHECK_THROWS_AS(Density(0.0), std::domain_error);
    CHECK_THROWS_AS(Density(1.0), std::domain_error);
    CHECK_THROWS_AS(Density(-0.2), std::domain_error);
    CHECK_THROWS_AS(Density(1.0000001), std::domain_error);
    CHECK(Density(0.5).value() == 0.5);
}

}

#include "tbf/verify.hpp"

#include "tbf/boundary.hpp"
#include "tbf/gfunction.hpp"
#include "tbf/ghoc.hpp"
#include "tbf/oracle.hpp"
#include "tbf/rng.hpp"
#include "tbf/spectral.hpp"
#include "tbf/specification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace tbf {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string num(double v, double w) { return num(v) + ", " + num(w); }

std::vector<double> grid(double start, double stop, double step) {
    std::vector<double> out;
    for (double v = start; v < stop + step / 2; v += step) out.push_back(v);
    return out;
}

std::vector<double> densities_or(const std::vector<double>& override_ps,
                                 std::vector<double> fallback) {
    return override_ps.empty() ? std::move(fallback) : override_ps;
}

double lsq_slope(const std::vector<std::pair<double, double>>& pts) {
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0.0, sxx = 0.0;
    for (const auto& [x, y] : pts) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    return sxy / sxx;
}

Mat2 mat_mul(const Mat2& A, const Mat2& B) {
    Mat2 C{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            C[i][j] = A[i][0] * B[0][j] + A[i][1] * B[1][j];
    return C;
}

bool check_spectral_identities(const std::vector<double>& ps, std::string& detail) {
    double worst_id = 0.0, worst_pow = 0.0;
    for (double pv : densities_or(ps, grid(0.05, 0.95, 0.05))) {
        Density p(pv);
        Spectrum s = build_spectrum(p);
        double q = 1.0 - pv;
        double e1 = std::abs(s.lambda_pf + s.lambda_r - q);
        double e2 = std::abs(s.lambda_pf * s.lambda_r + pv * q);
        double e3 = std::abs(s.lambda_pf - s.lambda_r - std::sqrt(q * (3 * pv + 1)));
        worst_id = std::max({worst_id, e1, e2, e3});

        Mat2 ref = transfer_matrix(p);
        for (long m = 1; m <= 30; ++m) {
            if (m > 1) ref = mat_mul(ref, transfer_matrix(p));
            Mat2 cf = q_power(p, m);
            double scale = 0.0, diff = 0.0;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    scale = std::max(scale, std::abs(ref[i][j]));
                    diff = std::max(diff, std::abs(cf[i][j] - ref[i][j]));
                }
            worst_pow = std::max(worst_pow, diff / scale);
        }
    }
    detail = "max identity deviation " + num(worst_id) + ", max relative power deviation " +
             num(worst_pow);
    return worst_id <= 1e-12 && worst_pow <= 1e-10;
}

// odds (1-g(n))/g(n) as a ratio of transfer-matrix return weights
double g_from_odds(const Density& p, long n) {
    double numer = q_power(p, n - 2)[0][0];
    double denom = 0.0;
    for (long l = 2; l < 100000; ++l) {
        double term = q_power(p, n + l - 3)[0][0];
        denom += term;
        if (term < denom * 1e-16) break;
    }
    return 1.0 / (1.0 + numer / denom);
}

bool check_g_anchors(const std::vector<double>& ps, std::string& detail) {
    double worst = 0.0;
    for (double pv : densities_or(ps, grid(0.1, 0.9, 0.1))) {
        Density p(pv);
        if (g(p, StoppingDistance::finite(0)) != 0.0) {
            detail = "g(0) not exactly 0 at p=" + num(pv);
            return false;
        }
        if (g(p, StoppingDistance::finite(1)) != 1.0 - pv) {
            detail = "g(1) not exactly 1-p at p=" + num(pv);
            return false;
        }
        double e2 = std::abs(g(p, StoppingDistance::finite(2)) - (1.0 - pv * pv));
        if (e2 > 1e-12) {
            detail = "g(2) off by " + num(e2) + " at p=" + num(pv);
            return false;
        }
        worst = std::max(worst, e2);
    }
    Density half(0.5);
    double direct = std::abs(g(half, StoppingDistance::finite(3)) - 5.0 / 6.0);
    double via_odds = std::abs(g_from_odds(half, 3) - 5.0 / 6.0);
    detail = "max g(2) deviation " + num(worst) + "; g(3) at 0.5 off by " +
             num(direct) + " direct, " + num(via_odds) + " via odds";
    return direct <= 1e-10 && via_odds <= 1e-10;
}

bool check_parity_limits(std::string& detail) {
    const double ps[3] = {0.9, 0.99, 0.999};
    double dev3[3], val4[3];
    for (int k = 0; k < 3; ++k) {
        Density p(ps[k]);
        dev3[k] = std::abs(g(p, StoppingDistance::finite(3)) - parity_limit(3));
        val4[k] = g(p, StoppingDistance::finite(4));
    }
    detail = "at 0.999: |g(3)-1/2| = " + num(dev3[2]) + ", g(4) = " + num(val4[2]);
    if (dev3[2] >= 1e-2 || val4[2] >= 1e-2) return false;
    for (int k = 1; k < 3; ++k)
        if (dev3[k] >= dev3[k - 1] || val4[k] >= val4[k - 1]) {
            detail += "; approach not monotone";
            return false;
        }
    return true;
}

bool check_variation_structure(const std::vector<double>& ps, std::string& detail) {
    double worst_ratio = 0.0, worst_tail = 0.0;
    for (double pv : densities_or(ps, grid(0.1, 0.9, 0.1))) {
        Density p(pv);
        Spectrum s = build_spectrum(p);
        const double slack = 5e-15;
        for (long n = 1; n <= 60; ++n) {
            double even_lo = g(p, StoppingDistance::finite(2 * n));
            double even_hi = g(p, StoppingDistance::finite(2 * n + 2));
            double odd_hi = g(p, StoppingDistance::finite(2 * n + 1));
            double odd_lo = g(p, StoppingDistance::finite(2 * n + 3));
            if (even_lo > even_hi + slack || odd_hi < odd_lo - slack) {
                detail = "interleaving breaks at p=" + num(pv) + ", n=" + std::to_string(n);
                return false;
            }
        }
        double ratio = variation(p, 61) / variation(p, 60);
        worst_ratio = std::max(worst_ratio, std::abs(ratio + s.a));
        double tail = 0.0;
        for (long n = 81; n <= 120; ++n) tail += variation(p, n);
        double bound = variation(p, 80) * (-s.a) / (1.0 + s.a) * 1.01;
        worst_tail = std::max(worst_tail, tail / bound);
        if (tail > bound) {
            detail = "tail exceeds geometric bound at p=" + num(pv);
            return false;
        }
    }
    detail = "max |variation ratio - |a|| = " + num(worst_ratio) +
             ", max tail/bound = " + num(worst_tail);
    return worst_ratio <= 1e-3;
}

bool check_stationary_identities(const std::vector<double>& ps, std::string& detail) {
    double worst = 0.0;
    for (double pv : densities_or(ps, grid(0.1, 0.9, 0.1))) {
        Density p(pv);
        StationaryDistribution pi = stationary_auto(p);
        if (!(pi.tail_mass_bound < 1e-10)) {
            detail = "tail bound " + num(pi.tail_mass_bound) + " at p=" + num(pv);
            return false;
        }
        double e1 = std::abs(pi.probabilities[1] - pv * pv);
        double e0 = std::abs(pi.probabilities[0] - pv * pv * (1.0 - pv));
        const long K = pi.truncation_level;
        double residual = 0.0;
        for (long j = 0; j <= K; ++j) {
            double in;
            if (j == 0) {
                in = 0.0;
                for (long k = 2; k <= K; ++k)
                    in += pi.probabilities[static_cast<std::size_t>(k)] *
                          (1.0 - g(p, StoppingDistance::finite(k)));
            } else if (j == 1) {
                in = pi.probabilities[0] + pi.probabilities[1] * pv;
            } else if (j == 2) {
                in = pi.probabilities[1] * (1.0 - pv);
            } else {
                in = pi.probabilities[static_cast<std::size_t>(j - 1)] *
                     g(p, StoppingDistance::finite(j - 1));
            }
            residual = std::max(residual, std::abs(in - pi.probabilities[static_cast<std::size_t>(j)]));
        }
        worst = std::max({worst, e1, e0, residual});
        if (e1 > 1e-10 || e0 > 1e-10 || residual > 1e-10) {
            detail = "stationary identities off by " + num(std::max({e1, e0, residual})) +
                     " at p=" + num(pv);
            return false;
        }
    }
    detail = "max deviation " + num(worst);
    return true;
}

bool check_chain_vs_pushforward(const std::vector<double>& ps, std::string& detail) {
    double worst = 0.0;
    for (double pv : densities_or(ps, {0.3, 0.5, 0.7, 0.9})) {
        Density p(pv);
        for (long len = 1; len <= 4; ++len) {
            for (std::uint32_t code = 0; code < (1u << len); ++code) {
                std::vector<int> pattern(static_cast<std::size_t>(len));
                for (long j = 0; j < len; ++j)
                    pattern[static_cast<std::size_t>(j)] =
                        static_cast<int>((code >> (len - 1 - j)) & 1u);
                double chain = pattern_probability(p, pattern);
                double oracle = pushforward_marginal(p, pattern, 2);
                worst = std::max(worst, std::abs(chain - oracle));
            }
        }
        double single = std::abs(pattern_probability(p, {1}) - pv * pv * (2.0 - pv));
        double pair = std::abs(pattern_probability(p, {1, 1}) - pv * pv);
        worst = std::max({worst, single, pair});
    }
    detail = "max pattern deviation " + num(worst);
    return worst <= 1e-9;
}

bool check_sampler(std::uint64_t seed, std::string& detail) {
    Density p(0.6);
    const long steps = 1000000;
    std::vector<GhocState> path = sample_path(p, steps, seed);
    long occupied = 0;
    std::vector<int> spins(static_cast<std::size_t>(steps));
    for (long i = 0; i < steps; ++i) {
        spins[static_cast<std::size_t>(i)] = tau(path[static_cast<std::size_t>(i)]);
        occupied += spins[static_cast<std::size_t>(i)];
    }
    double frac = static_cast<double>(occupied) / static_cast<double>(steps);
    long forbidden = 0;
    for (long i = 1; i + 1 < steps; ++i)
        if (spins[static_cast<std::size_t>(i)] == 1 &&
            spins[static_cast<std::size_t>(i - 1)] == 0 &&
            spins[static_cast<std::size_t>(i + 1)] == 0)
            ++forbidden;
    detail = "occupied fraction " + num(frac) + ", isolated occurrences " +
             std::to_string(forbidden);
    return std::abs(frac - 0.504) <= 0.005 && forbidden == 0;
}

std::vector<BoundaryCondition> convergence_corpus() {
    std::vector<BoundaryCondition> corpus;
    for (long b = 14; b <= 18; ++b) {
        for (long r = 0; r <= 1; ++r) {
            BoundaryCondition bc;
            bc.l = 0;
            bc.r = r;
            bc.left_annulus.assign(static_cast<std::size_t>(b) + 2, 0);
            bc.left_annulus[0] = 1;
            bc.left_annulus[1] = 1;
            bc.right_annulus = {1};
            corpus.push_back(bc);
        }
    }
    BoundaryCondition mirror;
    mirror.l = 0;
    mirror.r = 1;
    mirror.left_annulus = {1};
    mirror.right_annulus.assign(18, 0);
    mirror.right_annulus[16] = 1;
    mirror.right_annulus[17] = 1;
    corpus.push_back(mirror);
    return corpus;
}

bool check_kernel_convergence(std::string& detail) {
    std::vector<long> depths;
    for (long d = 4; d <= 12; ++d) depths.push_back(d);
    double worst_e12 = 0.0, worst_slope_dev = 0.0;
    for (double pv : {0.3, 0.35}) {
        Density p(pv);
        double log_abs_a = std::log(-build_spectrum(p).a);
        for (const BoundaryCondition& bc : convergence_corpus()) {
            auto conv = kernel_convergence(p, bc, depths);
            double e12 = conv.back().second;
            worst_e12 = std::max(worst_e12, e12);
            if (e12 > 1e-6) {
                detail = "depth-12 error " + num(e12) + " at p=" + num(pv);
                return false;
            }
            std::vector<std::pair<double, double>> pts;
            for (const auto& [d, e] : conv)
                if (e > 1e-13) pts.emplace_back(static_cast<double>(d), std::log(e));
            if (pts.size() < 3) {
                detail = "too few usable depths for the rate fit at p=" + num(pv);
                return false;
            }
            double slope = lsq_slope(pts);
            double dev = std::abs(slope - log_abs_a) / std::abs(log_abs_a);
            worst_slope_dev = std::max(worst_slope_dev, dev);
            if (dev > 0.2) {
                detail = "rate slope " + num(slope) + " vs " + num(log_abs_a) +
                         " at p=" + num(pv);
                return false;
            }
        }
    }
    detail = "max depth-12 error " + num(worst_e12) + ", max slope deviation " +
             num(100 * worst_slope_dev) + "%";
    return true;
}

BoundaryCondition random_boundary(SplitMix64& rng, long l, long r) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        BoundaryCondition bc;
        bc.l = l;
        bc.r = r;
        auto draw_annulus = [&rng]() {
            std::vector<int> bits(3 + rng.next() % 3);
            for (int& b : bits) b = static_cast<int>(rng.next() & 1u);
            return bits;
        };
        auto draw_tail = [&rng]() {
            switch (rng.next() % 4) {
                case 0: return TailPattern::all_ones();
                case 1: return TailPattern::all_empty();
                case 2: return TailPattern::periodic({1, 1, 0});
                default: return TailPattern::periodic({1, 1, 0, 0});
            }
        };
        bc.left_annulus = draw_annulus();
        bc.right_annulus = draw_annulus();
        bc.left_tail = draw_tail();
        bc.right_tail = draw_tail();
        try {
            bc.validate();
            return bc;
        } catch (const std::exception&) {
        }
    }
    throw std::runtime_error("no valid random boundary after 200 draws");
}

bool check_nested_consistency(std::uint64_t seed, std::string& detail) {
    double worst = 0.0;
    SplitMix64 rng(seed);
    for (double pv : {0.4, 0.7}) {
        Density p(pv);
        for (int rep = 0; rep < 10; ++rep) {
            const long d = 6 + static_cast<long>(rng.next() % 7);  // |Delta| in [6,12]
            BoundaryCondition outer = random_boundary(rng, 0, d - 1);
            const long max_len = std::min<long>(d - 2, 6);
            const long llen = 1 + static_cast<long>(rng.next() % max_len);
            const long ll = static_cast<long>(rng.next() % (d - llen + 1));
            const long lr = ll + llen - 1;

            KernelResult kd = kernel(p, outer);
            std::vector<double> marginal(1ull << llen, 0.0);
            std::vector<double> composed(1ull << llen, 0.0);
            const std::uint32_t mask = (1u << llen) - 1u;
            for (const auto& [w, pr] : kd.probabilities)
                marginal[(w >> ll) & mask] += pr;

            for (const auto& [w, pr] : kd.probabilities) {
                BoundaryCondition inner;
                inner.l = ll;
                inner.r = lr;
                inner.left_tail = outer.left_tail;
                inner.right_tail = outer.right_tail;
                inner.left_annulus = outer.left_annulus;
                for (long i = 0; i < ll; ++i)
                    inner.left_annulus.push_back(static_cast<int>((w >> i) & 1u));
                for (long i = lr + 1; i < d; ++i)
                    inner.right_annulus.push_back(static_cast<int>((w >> i) & 1u));
                inner.right_annulus.insert(inner.right_annulus.end(),
                                           outer.right_annulus.begin(),
                                           outer.right_annulus.end());
                KernelResult kl = kernel(p, inner);
                for (const auto& [v, q] : kl.probabilities) composed[v] += pr * q;
            }
            for (std::size_t v = 0; v < marginal.size(); ++v)
                worst = std::max(worst, std::abs(marginal[v] - composed[v]));
        }
    }
    detail = "max composition deviation " + num(worst);
    return worst <= 1e-10;
}

bool check_sensitivity_sandwich(const std::vector<double>& ps, std::string& detail) {
    double worst_eq = 0.0;
    for (double pv : densities_or(ps, {0.3, 0.6, 0.9})) {
        Density p(pv);
        for (long len = 1; len <= 3; ++len) {
            for (long n = 2; n <= 12; ++n) {
                auto [with_pair, without_pair] = witness_pair(0, len - 1, n);
                KernelResult k1 = kernel(p, with_pair);
                KernelResult k2 = kernel(p, without_pair);
                std::uint32_t w = witness_word(len);
                double direct = std::abs(k1.probability_of(w) - k2.probability_of(w));
                double exact = lower_bound_exact(p, n, len);
                worst_eq = std::max(worst_eq, std::abs(direct - exact));
                if (std::abs(direct - exact) > 1e-10) {
                    detail = "witness mismatch " + num(std::abs(direct - exact)) +
                             " at p=" + num(pv) + ", n=" + std::to_string(n);
                    return false;
                }
                SensitivityBounds sb = sensitivity_bounds(p, 0, len - 1, -n, len - 1 + n);
                if (direct < sb.lower || direct > sb.upper) {
                    detail = "witness " + num(direct) + " outside [" +
                             num(sb.lower, sb.upper) + "] at p=" + num(pv) +
                             ", n=" + std::to_string(n);
                    return false;
                }
            }
        }
    }
    detail = "max witness deviation " + num(worst_eq) + ", all values inside bounds";
    return true;
}

bool check_finite_energy(const std::vector<double>& ps, std::uint64_t seed,
                         std::string& detail) {
    const std::vector<double> densities = densities_or(ps, {0.3, 0.5, 0.8});
    SplitMix64 rng(seed);
    double worst_margin = 1e300;
    for (int i = 0; i < 100; ++i) {
        Density p(densities[static_cast<std::size_t>(i) % densities.size()]);
        std::vector<std::uint32_t> event;
        while (event.empty()) {
            for (std::uint32_t v = 0; v < 8; ++v) {
                if (v == 2u) continue;  // the isolated center word never occurs
                if (rng.next() & 1u) event.push_back(v);
            }
        }
        BoundaryCondition first = random_boundary(rng, -5, 5);
        BoundaryCondition second = random_boundary(rng, -5, 5);
        double ratio = finite_energy_ratio(p, 1, event, first, second);
        double floor_value = std::pow(2.0, -16) * std::pow(p.value(), 8);
        worst_margin = std::min(worst_margin, ratio / floor_value);
        if (ratio < floor_value) {
            detail = "ratio " + num(ratio) + " below floor " + num(floor_value);
            return false;
        }
    }
    detail = "smallest ratio/floor margin " + num(worst_margin);
    return true;
}

bool check_drift(const std::vector<double>& ps, std::string& detail) {
    double worst = -1e300;
    for (double pv : densities_or(ps, {0.3, 0.5, 0.9})) {
        Density p(pv);
        for (const auto& [j, drift] : foster_drift(p, 5, 105)) {
            worst = std::max(worst, drift);
            if (drift >= 0.0) {
                detail = "drift " + num(drift) + " at p=" + num(pv) +
                         ", j=" + std::to_string(j);
                return false;
            }
        }
    }
    detail = "largest drift " + num(worst);
    return true;
}

bool check_ratio_limits(std::string& detail) {
    Density p(0.5);
    double log_abs_a = std::log(-build_spectrum(p).a);
    const double limit_one = ratio_limit_onesided(p, 1, 0, 1);
    const double limit_two = ratio_limit_twosided(p, 0, 1, 1);

    auto one_sided = [&](long n) {
        return q_power(p, n + 1)[0][0] / q_power(p, n)[0][1];
    };
    auto two_sided = [&](long n) {
        return q_power(p, 2 * n)[0][0] / (q_power(p, n)[0][1] * q_power(p, n)[1][0]);
    };

    double e40_one = std::abs(one_sided(40) - limit_one);
    double e40_two = std::abs(two_sided(40) - limit_two);
    if (e40_one >= 1e-6 || e40_two >= 1e-6) {
        detail = "errors at n=40: " + num(e40_one, e40_two);
        return false;
    }

    for (int which = 0; which < 2; ++which) {
        std::vector<std::pair<double, double>> pts;
        for (long n = 10; n <= 40; ++n) {
            double err = which == 0 ? std::abs(one_sided(n) - limit_one)
                                    : std::abs(two_sided(n) - limit_two);
            if (err > 1e-13) pts.emplace_back(static_cast<double>(n), std::log(err));
        }
        if (pts.size() < 3) {
            detail = "too few points for the rate fit";
            return false;
        }
        double slope = lsq_slope(pts);
        if (std::abs(slope - log_abs_a) > 0.2 * std::abs(log_abs_a)) {
            detail = "rate slope " + num(slope) + " vs " + num(log_abs_a);
            return false;
        }
    }
    detail = "errors at n=40: " + num(e40_one, e40_two) + "; rate slopes match";
    return true;
}

} // namespace

std::string criterion_name(int id) {
    switch (id) {
        case 1: return "spectral identities and matrix powers";
        case 2: return "g-function exact anchors";
        case 3: return "g-function parity limits";
        case 4: return "variation interleaving and tail";
        case 5: return "stationary chain identities";
        case 6: return "chain marginals match enumeration";
        case 7: return "sampler occupied fraction and support";
        case 8: return "kernel matches finite-volume conditionals";
        case 9: return "nested kernel consistency";
        case 10: return "boundary sensitivity sandwich";
        case 11: return "finite-energy ratio floor";
        case 12: return "drift is negative";
        case 13: return "spectral ratio limits";
        default: throw std::domain_error("unknown criterion " + std::to_string(id));
    }
}

std::vector<int> suite_criteria(const std::string& suite) {
    if (suite == "spectral") return {1, 13};
    if (suite == "gfunction") return {2, 3, 4};
    if (suite == "ghoc") return {5, 7, 12};
    if (suite == "pushforward") return {6};
    if (suite == "kernel") return {8, 9};
    if (suite == "bounds") return {10};
    if (suite == "finite-energy") return {11};
    if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
    throw std::domain_error("unknown suite \"" + suite + "\"");
}

std::vector<std::string> suite_names() {
    return {"spectral", "gfunction", "ghoc",   "pushforward",
            "kernel",   "bounds",    "finite-energy", "all"};
}

CheckResult run_criterion(int id, const std::vector<double>& p_override,
                          std::uint64_t seed) {
    CheckResult out;
    out.criterion = id;
    out.name = criterion_name(id);
    auto start = std::chrono::steady_clock::now();
    try {
        switch (id) {
            case 1: out.pass = check_spectral_identities(p_override, out.detail); break;
            case 2: out.pass = check_g_anchors(p_override, out.detail); break;
            case 3: out.pass = check_parity_limits(out.detail); break;
            case 4: out.pass = check_variation_structure(p_override, out.detail); break;
            case 5: out.pass = check_stationary_identities(p_override, out.detail); break;
            case 6: out.pass = check_chain_vs_pushforward(p_override, out.detail); break;
            case 7: out.pass = check_sampler(seed, out.detail); break;
            case 8: out.pass = check_kernel_convergence(out.detail); break;
            case 9: out.pass = check_nested_consistency(seed, out.detail); break;
            case 10: out.pass = check_sensitivity_sandwich(p_override, out.detail); break;
            case 11: out.pass = check_finite_energy(p_override, seed, out.detail); break;
            case 12: out.pass = check_drift(p_override, out.detail); break;
            case 13: out.pass = check_ratio_limits(out.detail); break;
            default: throw std::domain_error("unknown criterion " + std::to_string(id));
        }
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

std::vector<CheckResult> run_suite(const std::string& suite,
                                   const std::vector<double>& p_override,
                                   std::uint64_t seed) {
    std::vector<CheckResult> out;
    for (int id : suite_criteria(suite)) out.push_back(run_criterion(id, p_override, seed));
    return out;
}

} // namespace tbf

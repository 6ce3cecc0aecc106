#include "tbf/ghoc.hpp"

#include "tbf/rng.hpp"
#include "tbf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tbf {

double transition(const Density& p, const GhocState& from, const GhocState& to) {
    if (from.is_infinite()) {
        double stay = g(p, GhocState::infinity());
        if (to.is_infinite()) return stay;
        if (to.value() == 0) return 1.0 - stay;
        return 0.0;
    }
    long i = from.value();
    if (i == 0) return (!to.is_infinite() && to.value() == 1) ? 1.0 : 0.0;
    if (to.is_infinite()) return 0.0;
    if (i == 1) {
        if (to.value() == 1) return p.value();
        if (to.value() == 2) return 1.0 - p.value();
        return 0.0;
    }
    double climb = g(p, from);
    if (to.value() == i + 1) return climb;
    if (to.value() == 0) return 1.0 - climb;
    return 0.0;
}

std::vector<std::pair<GhocState, double>> transitions(const Density& p,
                                                      const GhocState& from) {
    if (from.is_infinite()) {
        double stay = g(p, GhocState::infinity());
        return {{GhocState::infinity(), stay}, {GhocState::finite(0), 1.0 - stay}};
    }
    long i = from.value();
    if (i == 0) return {{GhocState::finite(1), 1.0}};
    if (i == 1)
        return {{GhocState::finite(1), p.value()},
                {GhocState::finite(2), 1.0 - p.value()}};
    double climb = g(p, from);
    return {{GhocState::finite(i + 1), climb}, {GhocState::finite(0), 1.0 - climb}};
}

double StationaryDistribution::prob(const GhocState& s) const {
    if (s.is_infinite()) return probability_infinity;
    long v = s.value();
    if (v > truncation_level) return 0.0;
    return probabilities[static_cast<std::size_t>(v)];
}

namespace {

// unnormalized balance weights u(0..K) with u(1) = 1
std::vector<double> balance_weights(const Density& p, long truncation) {
    std::vector<double> u(static_cast<std::size_t>(truncation) + 1, 0.0);
    u[1] = 1.0;
    u[0] = 1.0 - p.value();
    if (truncation >= 2) u[2] = g(p, GhocState::finite(1));
    for (long k = 2; k < truncation; ++k)
        u[static_cast<std::size_t>(k + 1)] =
            u[static_cast<std::size_t>(k)] * g(p, GhocState::finite(k));
    return u;
}

StationaryDistribution normalize(std::vector<double> u, double geometric_factor) {
    double z = 0.0;
    for (double w : u) z += w;
    StationaryDistribution out;
    out.truncation_level = static_cast<long>(u.size()) - 1;
    out.probabilities = std::move(u);
    for (double& w : out.probabilities) w /= z;
    out.tail_mass_bound = out.probabilities.back() * geometric_factor;
    return out;
}

} // namespace

StationaryDistribution stationary(const Density& p, long truncation) {
    if (truncation < 10)
        throw std::domain_error("stationary truncation must be at least 10");
    const Spectrum s = build_spectrum(p);
    double geom = s.lambda_pf / (1.0 - s.lambda_pf);
    StationaryDistribution out = normalize(balance_weights(p, truncation), geom);
    if (out.tail_mass_bound > 1e-8)
        throw std::domain_error("tail mass bound " + std::to_string(out.tail_mass_bound) +
                                " exceeds 1e-8; raise the truncation");
    return out;
}

StationaryDistribution stationary_auto(const Density& p, double threshold) {
    if (!(threshold > 0.0))
        throw std::domain_error("tail threshold must be positive");
    const Spectrum s = build_spectrum(p);
    double geom = s.lambda_pf / (1.0 - s.lambda_pf);
    const long cap = 2000000;

    std::vector<double> u;
    u.reserve(64);
    u.push_back(1.0 - p.value());
    u.push_back(1.0);
    u.push_back(g(p, GhocState::finite(1)));
    double z = u[0] + u[1] + u[2];
    long k = 2;
    while (k < 10 || u.back() * geom > threshold * z) {
        if (k >= cap)
            throw std::domain_error("stationary truncation exceeds supported size");
        double next = u.back() * g(p, GhocState::finite(k));
        u.push_back(next);
        z += next;
        ++k;
    }
    return normalize(std::move(u), geom);
}

int tau(const GhocState& n) {
    if (n.is_infinite()) return 0;
    return (n.value() == 0 || n.value() == 1) ? 1 : 0;
}

std::vector<GhocState> sample_path(const Density& p, long length, std::uint64_t seed,
                                   const std::optional<GhocState>& initial) {
    if (length < 1) throw std::domain_error("path length must be at least 1");
    SplitMix64 rng(seed);

    GhocState state = GhocState::finite(0);
    if (initial.has_value()) {
        state = *initial;
    } else {
        StationaryDistribution dist = stationary_auto(p);
        double u = rng.uniform01();
        double cum = 0.0;
        long drawn = dist.truncation_level;
        for (long j = 0; j <= dist.truncation_level; ++j) {
            cum += dist.probabilities[static_cast<std::size_t>(j)];
            if (u < cum) {
                drawn = j;
                break;
            }
        }
        state = GhocState::finite(drawn);
    }

    std::vector<GhocState> path;
    path.reserve(static_cast<std::size_t>(length));
    path.push_back(state);
    double stay_inf = g(p, GhocState::infinity());
    for (long t = 1; t < length; ++t) {
        double u = rng.uniform01();
        if (state.is_infinite()) {
            state = (u < stay_inf) ? GhocState::infinity() : GhocState::finite(0);
        } else if (state.value() == 0) {
            state = GhocState::finite(1);
        } else if (state.value() == 1) {
            state = (u < p.value()) ? GhocState::finite(1) : GhocState::finite(2);
        } else {
            state = (u < g(p, state)) ? GhocState::finite(state.value() + 1)
                                      : GhocState::finite(0);
        }
        path.push_back(state);
    }
    return path;
}

std::vector<GhocState> distance_sequence(const std::vector<int>& word,
                                         const TailPattern& left_tail) {
    long len = static_cast<long>(word.size());
    for (int b : word)
        if (b != 0 && b != 1)
            throw std::domain_error("word entries must be 0 or 1");

    auto bit = [&](long j) -> int {
        if (j >= 0) return word[static_cast<std::size_t>(j)];
        return left_tail.spin_at(-j, true);
    };

    long margin = left_tail.scan_margin();
    for (long i = -margin; i <= len - 2; ++i) {
        if (bit(i) == 1 && bit(i - 1) == 0 && bit(i + 1) == 0)
            throw std::domain_error("isolated occupied site at position " +
                                    std::to_string(i));
    }

    std::vector<GhocState> out;
    out.reserve(word.size());
    for (long i = 0; i < len; ++i) {
        if (bit(i) == 1 && bit(i - 1) == 0) {
            out.push_back(GhocState::finite(0));
            continue;
        }
        long found = -1;
        long k_max = i + 1 + margin;
        for (long k = 1; k <= k_max; ++k) {
            if (bit(i - k) == 1 && bit(i - k + 1) == 1) {
                found = k;
                break;
            }
        }
        out.push_back(found < 0 ? GhocState::infinity() : GhocState::finite(found));
    }
    return out;
}

std::vector<std::pair<long, double>> foster_drift(const Density& p, long j_min,
                                                  long j_max) {
    if (j_min < 2 || j_min > j_max)
        throw std::domain_error("drift range needs 2 <= j_min <= j_max");
    const Spectrum s = build_spectrum(p);
    double A = 0.5 * (1.0 + 1.0 / s.lambda_pf);
    std::vector<std::pair<long, double>> out;
    out.reserve(static_cast<std::size_t>(j_max - j_min + 1));
    for (long j = j_min; j <= j_max; ++j) {
        double hj = std::pow(A, static_cast<double>(j));
        double drift = g(p, GhocState::finite(j)) * hj * A - hj;
        out.emplace_back(j, drift);
    }
    return out;
}

double pattern_probability(const Density& p, const std::vector<int>& word) {
    for (int b : word)
        if (b != 0 && b != 1)
            throw std::domain_error("word entries must be 0 or 1");
    if (word.empty()) return 1.0;

    StationaryDistribution dist = stationary_auto(p, 1e-14);
    long K = dist.truncation_level;
    std::vector<double> v = dist.probabilities;
    std::vector<double> climb(static_cast<std::size_t>(K) + 1, 0.0);
    for (long k = 2; k <= K; ++k)
        climb[static_cast<std::size_t>(k)] = g(p, GhocState::finite(k));

    auto mask = [&](int spin) {
        for (long j = 0; j <= K; ++j) {
            int emitted = (j == 0 || j == 1) ? 1 : 0;
            if (emitted != spin) v[static_cast<std::size_t>(j)] = 0.0;
        }
    };

    mask(word[0]);
    std::vector<double> next(static_cast<std::size_t>(K) + 1, 0.0);
    for (std::size_t i = 1; i < word.size(); ++i) {
        std::fill(next.begin(), next.end(), 0.0);
        next[1] = v[0] + v[1] * p.value();
        next[2] += v[1] * (1.0 - p.value());
        for (long k = 2; k <= K; ++k) {
            double m = v[static_cast<std::size_t>(k)];
            if (m == 0.0) continue;
            double c = climb[static_cast<std::size_t>(k)];
            next[0] += m * (1.0 - c);
            if (k + 1 <= K) next[static_cast<std::size_t>(k + 1)] += m * c;
        }
        v.swap(next);
        mask(word[i]);
    }

    double total = 0.0;
    for (double m : v) total += m;
    return total;
}

} // namespace tbf

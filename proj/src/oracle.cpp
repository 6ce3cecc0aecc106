#include "tbf/oracle.hpp"

#include "tbf/parallel.hpp"
#include "tbf/rng.hpp"
#include "tbf/specification.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace tbf {

void FirstLayerWindow::validate() const {
    if (lo > hi) throw std::domain_error("window start exceeds window end");
    if (width() > 27)
        throw std::domain_error("window exceeds the 27-site enumeration bound");
    for (int s : left_spins)
        if (s != 0 && s != 1) throw std::domain_error("boundary spins must be 0 or 1");
    for (int s : right_spins)
        if (s != 0 && s != 1) throw std::domain_error("boundary spins must be 0 or 1");
}

namespace {

// thinned word on [0, n) given the spins just outside
inline std::uint64_t thin_bits(std::uint64_t w, std::uint64_t bl, std::uint64_t br,
                               long n, std::uint64_t mask) {
    std::uint64_t left = (w << 1) | bl;
    std::uint64_t right = (w >> 1) | (br << (n - 1));
    return w & (left | right) & mask;
}

std::vector<double> bernoulli_weights_by_ones(const Density& p, long n) {
    std::vector<double> pw(static_cast<std::size_t>(n) + 1);
    for (long k = 0; k <= n; ++k)
        pw[static_cast<std::size_t>(k)] =
            std::pow(p.value(), static_cast<double>(k)) *
            std::pow(1.0 - p.value(), static_cast<double>(n - k));
    return pw;
}

std::uint64_t chunk_width(std::uint64_t total) {
    return std::max<std::uint64_t>(65536, (total + 63) / 64);
}

double fold_pairwise(std::vector<double> parts) {
    if (parts.empty()) return 0.0;
    while (parts.size() > 1) {
        std::vector<double> next((parts.size() + 1) / 2, 0.0);
        for (std::size_t i = 0; i < next.size(); ++i) {
            double a = parts[2 * i];
            double b = (2 * i + 1 < parts.size()) ? parts[2 * i + 1] : 0.0;
            next[i] = a + b;
        }
        parts.swap(next);
    }
    return parts[0];
}

struct SweepPlan {
    long n = 0;
    long interior_len = 0;
    long left_len = 0;
    std::uint64_t mask = 0;
    std::uint64_t interior_mask = 0;
    std::uint64_t annulus_mask = 0;
    std::uint64_t expanded_annulus = 0;
    std::uint64_t bl = 0;
    std::uint64_t br = 0;
    std::uint64_t total = 0;
    std::uint64_t chunk = 0;
    std::size_t nchunks = 0;
    std::vector<double> weights;
};

SweepPlan build_plan(const FirstLayerWindow& window, long l_lo, long l_hi,
                     std::uint64_t target_annulus) {
    window.validate();
    if (l_lo > l_hi || l_lo < window.lo || l_hi > window.hi)
        throw std::domain_error("interior interval must lie inside the window");

    SweepPlan plan;
    plan.n = window.width();
    plan.interior_len = l_hi - l_lo + 1;
    plan.left_len = l_lo - window.lo;
    const long right_len = window.hi - l_hi;
    const long annulus_len = plan.left_len + right_len;
    if (annulus_len < 64 && (target_annulus >> annulus_len) != 0)
        throw std::domain_error("annulus word wider than the annulus");

    plan.mask = (plan.n == 64) ? ~0ull : ((1ull << plan.n) - 1ull);
    plan.interior_mask = ((1ull << plan.interior_len) - 1ull) << plan.left_len;
    plan.annulus_mask = plan.mask & ~plan.interior_mask;
    for (long j = 0; j < plan.left_len; ++j)
        plan.expanded_annulus |= ((target_annulus >> j) & 1ull) << j;
    for (long j = 0; j < right_len; ++j)
        plan.expanded_annulus |= ((target_annulus >> (plan.left_len + j)) & 1ull)
                                 << (l_hi - window.lo + 1 + j);

    plan.bl = static_cast<std::uint64_t>(window.left_spins[1]);
    plan.br = static_cast<std::uint64_t>(window.right_spins[0]);
    plan.total = 1ull << plan.n;
    plan.chunk = chunk_width(plan.total);
    plan.nchunks = static_cast<std::size_t>((plan.total + plan.chunk - 1) / plan.chunk);
    plan.weights = bernoulli_weights_by_ones(window.p, plan.n);
    return plan;
}

} // namespace

std::vector<double> finite_conditional_table(const FirstLayerWindow& window,
                                             long l_lo, long l_hi,
                                             std::uint64_t target_annulus) {
    const SweepPlan plan = build_plan(window, l_lo, l_hi, target_annulus);
    if (plan.interior_len > 16)
        throw std::domain_error("interior wider than the 16-site table bound");

    const std::size_t table_size = 1ull << plan.interior_len;
    std::vector<std::vector<double>> tables(plan.nchunks);
    parallel_chunks(plan.nchunks, [&](std::size_t c) {
        auto& tab = tables[c];
        tab.assign(table_size, 0.0);
        std::uint64_t begin = static_cast<std::uint64_t>(c) * plan.chunk;
        std::uint64_t end = std::min(plan.total, begin + plan.chunk);
        for (std::uint64_t w = begin; w < end; ++w) {
            std::uint64_t t = thin_bits(w, plan.bl, plan.br, plan.n, plan.mask);
            if ((t & plan.annulus_mask) != plan.expanded_annulus) continue;
            std::size_t word = (t >> plan.left_len) & ((1ull << plan.interior_len) - 1ull);
            tab[word] += plan.weights[static_cast<std::size_t>(std::popcount(w))];
        }
    });

    std::vector<std::vector<double>> folded = std::move(tables);
    while (folded.size() > 1) {
        std::vector<std::vector<double>> next((folded.size() + 1) / 2);
        for (std::size_t i = 0; i < next.size(); ++i) {
            next[i] = std::move(folded[2 * i]);
            if (2 * i + 1 < folded.size())
                for (std::size_t j = 0; j < table_size; ++j)
                    next[i][j] += folded[2 * i + 1][j];
        }
        folded.swap(next);
    }
    std::vector<double> table = std::move(folded[0]);

    double denom = 0.0;
    for (double v : table) denom += v;
    if (denom <= 0.0)
        throw std::domain_error("conditioning event has no admissible first-layer configuration");
    for (double& v : table) v /= denom;
    return table;
}

double finite_conditional(const FirstLayerWindow& window, long l_lo, long l_hi,
                          std::uint64_t target_interior,
                          std::uint64_t target_annulus) {
    const SweepPlan plan = build_plan(window, l_lo, l_hi, target_annulus);
    if (plan.interior_len < 64 && (target_interior >> plan.interior_len) != 0)
        throw std::domain_error("interior word wider than the interior");
    const std::uint64_t expanded_interior = target_interior << plan.left_len;

    std::vector<double> nums(plan.nchunks, 0.0);
    std::vector<double> dens(plan.nchunks, 0.0);
    parallel_chunks(plan.nchunks, [&](std::size_t c) {
        double num = 0.0;
        double den = 0.0;
        std::uint64_t begin = static_cast<std::uint64_t>(c) * plan.chunk;
        std::uint64_t end = std::min(plan.total, begin + plan.chunk);
        for (std::uint64_t w = begin; w < end; ++w) {
            std::uint64_t t = thin_bits(w, plan.bl, plan.br, plan.n, plan.mask);
            if ((t & plan.annulus_mask) != plan.expanded_annulus) continue;
            double weight = plan.weights[static_cast<std::size_t>(std::popcount(w))];
            den += weight;
            if ((t & plan.interior_mask) == expanded_interior) num += weight;
        }
        nums[c] = num;
        dens[c] = den;
    });

    double denom = fold_pairwise(dens);
    if (denom <= 0.0)
        throw std::domain_error("conditioning event has no admissible first-layer configuration");
    return fold_pairwise(nums) / denom;
}

std::vector<std::pair<long, double>> kernel_convergence(
    const Density& p, const BoundaryCondition& bc, const std::vector<long>& depths) {
    bc.validate();
    if (bc.left_tail.all_zero() || bc.right_tail.all_zero())
        throw std::domain_error("boundary must have finite unfixed areas");

    const KernelResult closed = kernel(p, bc);
    const long len = bc.window_length();
    if (len > 16)
        throw std::domain_error("window wider than the 16-site table bound");

    std::vector<std::pair<long, double>> out;
    out.reserve(depths.size());
    for (long d : depths) {
        if (d < 1) throw std::domain_error("depth must be at least 1");
        const long dlo = bc.l - d;
        const long dhi = bc.r + d;
        if (dhi - dlo + 1 > 27)
            throw std::domain_error("window exceeds the 27-site enumeration bound");

        FirstLayerWindow window{p,
                                dlo,
                                dhi,
                                {bc.sigma(dlo - 2), bc.sigma(dlo - 1)},
                                {bc.sigma(dhi + 1), bc.sigma(dhi + 2)}};

        std::uint64_t annulus = 0;
        long j = 0;
        for (long i = dlo; i <= bc.l - 1; ++i, ++j)
            annulus |= static_cast<std::uint64_t>(bc.sigma(i)) << j;
        for (long i = bc.r + 1; i <= dhi; ++i, ++j)
            annulus |= static_cast<std::uint64_t>(bc.sigma(i)) << j;

        const std::vector<double> table =
            finite_conditional_table(window, bc.l, bc.r, annulus);
        double worst = 0.0;
        for (std::size_t word = 0; word < table.size(); ++word)
            worst = std::max(worst,
                             std::abs(table[word] -
                                      closed.probability_of(static_cast<std::uint32_t>(word))));
        out.emplace_back(d, worst);
    }
    return out;
}

std::vector<std::pair<long, double>> gfunction_via_kernels(
    const Density& p, StoppingDistance n, const std::vector<long>& k_values) {
    BoundaryCondition bc;
    bc.l = 0;
    bc.right_annulus = {1};
    if (n.is_infinite()) {
        bc.left_annulus = {0, 0};
        bc.left_tail = TailPattern::all_empty();
    } else if (n.value() == 0) {
        bc.left_annulus = {1, 1, 0, 1};
    } else {
        bc.left_annulus.assign(static_cast<std::size_t>(n.value()) + 1, 0);
        bc.left_annulus[0] = 1;
        bc.left_annulus[1] = 1;
    }

    std::vector<std::pair<long, double>> out;
    out.reserve(k_values.size());
    for (long k : k_values) {
        if (k < 0 || k > 22)
            throw std::domain_error("future horizon must lie in [0, 22]");
        bc.r = k;
        const KernelResult kr = kernel(p, bc);
        double empty_at_zero = 0.0;
        for (const auto& [word, prob] : kr.probabilities)
            if ((word & 1u) == 0u) empty_at_zero += prob;
        out.emplace_back(k, empty_at_zero);
    }
    return out;
}

double ThinSampleSummary::frequency(const std::string& pattern) const {
    auto it = window_counts.find(pattern);
    if (it == window_counts.end())
        throw std::domain_error("pattern length must lie in [1, 4]");
    return static_cast<double>(it->second) /
           static_cast<double>(windows(static_cast<long>(pattern.size())));
}

ThinSampleSummary monte_carlo_thin(const Density& p, long length, std::uint64_t seed) {
    if (length < 1000)
        throw std::domain_error("sample length must be at least 1000");

    SplitMix64 rng(seed);
    std::vector<int> line(static_cast<std::size_t>(length) + 2);
    for (int& s : line) s = rng.bernoulli(p.value()) ? 1 : 0;

    std::vector<int> thinned(static_cast<std::size_t>(length));
    for (long i = 0; i < length; ++i) {
        std::size_t k = static_cast<std::size_t>(i);
        thinned[k] = (line[k + 1] == 1 && (line[k] == 1 || line[k + 2] == 1)) ? 1 : 0;
    }

    ThinSampleSummary out;
    out.length = length;
    for (long len = 1; len <= 4; ++len) {
        std::vector<long> counts(1ull << len, 0);
        for (long i = 0; i + len <= length; ++i) {
            std::size_t code = 0;
            for (long j = 0; j < len; ++j)
                code = (code << 1) | static_cast<std::size_t>(thinned[static_cast<std::size_t>(i + j)]);
            counts[code] += 1;
        }
        for (std::size_t code = 0; code < counts.size(); ++code) {
            std::string key(static_cast<std::size_t>(len), '0');
            for (long j = 0; j < len; ++j)
                if ((code >> (len - 1 - j)) & 1u) key[static_cast<std::size_t>(j)] = '1';
            out.window_counts[key] = counts[code];
        }
    }
    return out;
}

namespace {

double pushforward_at(const Density& p, const std::vector<int>& pattern, long padding) {
    const long len = static_cast<long>(pattern.size());
    const long n = len + 2 * padding;
    const std::uint64_t mask = (1ull << n) - 1ull;
    const std::uint64_t center_mask = ((1ull << len) - 1ull) << padding;
    std::uint64_t target = 0;
    for (long j = 0; j < len; ++j)
        target |= static_cast<std::uint64_t>(pattern[static_cast<std::size_t>(j)])
                  << (padding + j);

    const std::vector<double> weights = bernoulli_weights_by_ones(p, n);
    const std::uint64_t total = 1ull << n;
    const std::uint64_t chunk = chunk_width(total);
    const std::size_t nchunks = static_cast<std::size_t>((total + chunk - 1) / chunk);
    const double spin_weight[2] = {1.0 - p.value(), p.value()};

    double value = 0.0;
    for (int bl = 0; bl <= 1; ++bl) {
        for (int br = 0; br <= 1; ++br) {
            std::vector<double> parts(nchunks, 0.0);
            parallel_chunks(nchunks, [&](std::size_t c) {
                double acc = 0.0;
                std::uint64_t begin = static_cast<std::uint64_t>(c) * chunk;
                std::uint64_t end = std::min(total, begin + chunk);
                for (std::uint64_t w = begin; w < end; ++w) {
                    std::uint64_t t =
                        thin_bits(w, static_cast<std::uint64_t>(bl),
                                  static_cast<std::uint64_t>(br), n, mask);
                    if ((t & center_mask) == target)
                        acc += weights[static_cast<std::size_t>(std::popcount(w))];
                }
                parts[c] = acc;
            });
            value += spin_weight[bl] * spin_weight[br] * fold_pairwise(std::move(parts));
        }
    }
    return value;
}

} // namespace

double pushforward_marginal(const Density& p, const std::vector<int>& pattern,
                            long padding) {
    if (pattern.empty()) throw std::domain_error("pattern must be non-empty");
    for (int b : pattern)
        if (b != 0 && b != 1) throw std::domain_error("pattern entries must be 0 or 1");
    if (padding < 1) throw std::domain_error("padding must be at least 1");
    const long len = static_cast<long>(pattern.size());
    if (len + 2 * padding > 26)
        throw std::domain_error("padded window exceeds the 26-site enumeration bound");

    const double value = pushforward_at(p, pattern, padding);
    long alt = std::min(2 * padding, (26 - len) / 2);
    if (alt == padding) alt = padding - 1;
    if (alt >= 1) {
        const double check = pushforward_at(p, pattern, alt);
        if (std::abs(check - value) > 1e-12)
            throw std::domain_error("marginal is not padding-stable");
    }
    return value;
}

} // namespace tbf

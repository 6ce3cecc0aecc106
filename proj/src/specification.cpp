#include "tbf/specification.hpp"

#include "tbf/parallel.hpp"
#include "tbf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tbf {

std::vector<int> thin(const std::vector<int>& word, int left_spin, int right_spin) {
    long n = static_cast<long>(word.size());
    std::vector<int> out(word.size(), 0);
    for (long i = 0; i < n; ++i) {
        if (word[static_cast<std::size_t>(i)] != 1) continue;
        int left = (i > 0) ? word[static_cast<std::size_t>(i - 1)] : left_spin;
        int right = (i + 1 < n) ? word[static_cast<std::size_t>(i + 1)] : right_spin;
        if (left == 1 || right == 1) out[static_cast<std::size_t>(i)] = 1;
    }
    return out;
}

namespace {

int glued_at(const BoundaryCondition& bc, std::uint32_t word, long i) {
    if (i >= bc.l && i <= bc.r)
        return static_cast<int>((word >> (i - bc.l)) & 1u);
    return bc.sigma(i);
}

bool admissible(const BoundaryCondition& bc, std::uint32_t word) {
    for (long i = bc.l - 2; i <= bc.r + 2; ++i) {
        if (glued_at(bc, word, i) != 1) continue;
        if (glued_at(bc, word, i - 1) == 1) continue;
        if (glued_at(bc, word, i + 1) == 1) continue;
        return false;
    }
    return true;
}

void decompose_into(const BoundaryCondition& bc, std::uint32_t word,
                    AreaDecomposition& out) {
    out.theta.clear();
    out.theta_bar.clear();
    out.unfixed_components.clear();
    out.influencing_set.clear();
    out.outer_left.reset();
    out.outer_right.reset();

    const long l = bc.l;
    const long r = bc.r;
    auto at = [&](long i) { return glued_at(bc, word, i); };

    for (long i = l - 1; i <= r + 1; ++i) {
        int c = at(i);
        if (c == 1) out.theta.push_back(i);
        if (c == 1 || at(i - 1) == 1 || at(i + 1) == 1) out.theta_bar.push_back(i);
    }

    const long lo = bc.left_edge() - bc.left_tail.scan_margin();
    const long hi = bc.right_edge() + bc.right_tail.scan_margin();
    bool in_run = false;
    long run_lo = 0;
    std::vector<UnfixedComponent> runs;
    for (long i = lo; i <= hi; ++i) {
        bool unfixed = at(i) == 0 && at(i - 1) == 0 && at(i + 1) == 0;
        if (unfixed && !in_run) {
            in_run = true;
            run_lo = i;
        } else if (!unfixed && in_run) {
            in_run = false;
            runs.push_back({false, false, run_lo, i - 1});
        }
    }
    if (in_run) runs.push_back({false, false, run_lo, hi});

    for (UnfixedComponent& u : runs) {
        // a run reaching the scan edge continues through an all-empty tail;
        // tails containing occupied sites stop every run within the margin
        if (u.lo == lo && bc.left_tail.all_zero()) u.left_infinite = true;
        if (u.hi == hi && bc.right_tail.all_zero()) u.right_infinite = true;
        bool member = (u.left_infinite || u.lo <= r + 2) &&
                      (u.right_infinite || u.hi >= l - 2);
        if (!member) continue;
        out.unfixed_components.push_back(u);
        if (!out.outer_left && (u.left_infinite || u.lo < l)) out.outer_left = u;
        if (u.right_infinite || u.hi > r) out.outer_right = u;
    }

    // influencing set: fixed sites in the closure plus the member components
    std::vector<UnfixedComponent> parts;
    for (std::size_t i = 0; i < out.theta_bar.size(); ++i) {
        long start = out.theta_bar[i];
        long end = start;
        while (i + 1 < out.theta_bar.size() && out.theta_bar[i + 1] == end + 1) {
            ++i;
            ++end;
        }
        parts.push_back({false, false, start, end});
    }
    parts.insert(parts.end(), out.unfixed_components.begin(),
                 out.unfixed_components.end());
    std::sort(parts.begin(), parts.end(),
              [](const UnfixedComponent& a, const UnfixedComponent& b) {
                  if (a.left_infinite != b.left_infinite) return a.left_infinite;
                  return a.lo < b.lo;
              });
    for (const UnfixedComponent& part : parts) {
        if (!out.influencing_set.empty()) {
            UnfixedComponent& cur = out.influencing_set.back();
            bool joined = cur.right_infinite ||
                          (!part.left_infinite && part.lo <= cur.hi + 1);
            if (joined) {
                cur.right_infinite = cur.right_infinite || part.right_infinite;
                if (!cur.right_infinite) cur.hi = std::max(cur.hi, part.hi);
                continue;
            }
        }
        out.influencing_set.push_back(part);
    }
}

double log_unfixed_weight(const Density& p, const Spectrum& s,
                          const UnfixedComponent& u, long l, long r) {
    double log_one_minus_p = std::log(1.0 - p.value());
    double log_pf = std::log(s.lambda_pf);
    if (u.left_infinite && u.right_infinite)
        return std::log(s.d_const) + static_cast<double>(r - l + 3) * log_pf -
               log_one_minus_p;
    if (u.left_infinite) {
        long e = std::max(0L, u.hi - (l - 1) + 1);
        return static_cast<double>(e) * log_pf - log_one_minus_p;
    }
    if (u.right_infinite) {
        long e = std::max(0L, (r + 1) - u.lo + 1);
        return static_cast<double>(e) * log_pf - log_one_minus_p;
    }
    return log_q_entry(p, u.length() + 1, 0, 0) - log_one_minus_p;
}

double log_word_weight(const Density& p, const Spectrum& s,
                       const AreaDecomposition& d, long l, long r, double log_p,
                       double log_one_minus_p) {
    double lw = static_cast<double>(d.occupied_in_closure()) * log_p +
                static_cast<double>(d.border_in_closure()) * log_one_minus_p;
    for (const UnfixedComponent& u : d.unfixed_components)
        lw += log_unfixed_weight(p, s, u, l, r);
    return lw;
}

} // namespace

AreaDecomposition decompose(const BoundaryCondition& bc, std::uint32_t interior_word) {
    bc.validate();
    if (bc.window_length() > 32)
        throw std::domain_error("interior word wider than 32 sites");
    if (bc.window_length() < 32 && (interior_word >> bc.window_length()) != 0)
        throw std::domain_error("interior word has bits past the window");
    AreaDecomposition out;
    decompose_into(bc, interior_word, out);
    return out;
}

double unfixed_weight(const Density& p, const UnfixedComponent& u, long l, long r) {
    const Spectrum s = build_spectrum(p);
    return std::exp(log_unfixed_weight(p, s, u, l, r));
}

double KernelResult::probability_of(std::uint32_t word) const {
    auto it = std::lower_bound(
        probabilities.begin(), probabilities.end(), word,
        [](const std::pair<std::uint32_t, double>& e, std::uint32_t w) {
            return e.first < w;
        });
    if (it != probabilities.end() && it->first == word) return it->second;
    return 0.0;
}

KernelResult kernel(const Density& p, const BoundaryCondition& bc) {
    bc.validate();
    const long len = bc.window_length();
    if (len > 24)
        throw std::domain_error("window exceeds the 24-site enumeration bound");

    const Spectrum s = build_spectrum(p);
    const double log_p = std::log(p.value());
    const double log_one_minus_p = std::log(1.0 - p.value());

    const std::uint64_t total = 1ull << len;
    const std::uint64_t chunk_size = 4096;
    const std::size_t nchunks =
        static_cast<std::size_t>((total + chunk_size - 1) / chunk_size);

    std::vector<std::vector<std::pair<std::uint32_t, double>>> entries(nchunks);
    std::vector<double> chunk_max(nchunks, -std::numeric_limits<double>::infinity());
    parallel_chunks(nchunks, [&](std::size_t c) {
        AreaDecomposition scratch;
        std::uint64_t begin = static_cast<std::uint64_t>(c) * chunk_size;
        std::uint64_t end = std::min(total, begin + chunk_size);
        for (std::uint64_t w = begin; w < end; ++w) {
            std::uint32_t word = static_cast<std::uint32_t>(w);
            if (!admissible(bc, word)) continue;
            decompose_into(bc, word, scratch);
            double lw = log_word_weight(p, s, scratch, bc.l, bc.r, log_p,
                                        log_one_minus_p);
            entries[c].emplace_back(word, lw);
            chunk_max[c] = std::max(chunk_max[c], lw);
        }
    });

    double gmax = -std::numeric_limits<double>::infinity();
    for (double m : chunk_max) gmax = std::max(gmax, m);
    if (!std::isfinite(gmax))
        throw std::domain_error("boundary admits no interior word");

    std::vector<double> sums(nchunks, 0.0);
    parallel_chunks(nchunks, [&](std::size_t c) {
        double acc = 0.0;
        for (const auto& e : entries[c]) acc += std::exp(e.second - gmax);
        sums[c] = acc;
    });
    while (sums.size() > 1) {
        std::vector<double> folded((sums.size() + 1) / 2, 0.0);
        for (std::size_t i = 0; i < folded.size(); ++i) {
            double a = sums[2 * i];
            double b = (2 * i + 1 < sums.size()) ? sums[2 * i + 1] : 0.0;
            folded[i] = a + b;
        }
        sums.swap(folded);
    }
    const double scaled_sum = sums[0];

    KernelResult out;
    out.log_partition = gmax + std::log(scaled_sum);
    out.partition_value = std::exp(out.log_partition);
    for (std::size_t c = 0; c < nchunks; ++c)
        for (const auto& e : entries[c])
            out.probabilities.emplace_back(e.first,
                                           std::exp(e.second - gmax) / scaled_sum);
    return out;
}

SensitivityBounds sensitivity_bounds(const Density& p, long l, long r, long L,
                                     long R) {
    if (l > r) throw std::domain_error("window start exceeds window end");
    if (!(L < l - 1) || !(r + 1 < R))
        throw std::domain_error("frozen interval must extend past the window closure");
    const Spectrum s = build_spectrum(p);
    SensitivityBounds out;
    out.n = std::min(l - L, R - r);
    double abs_a = -s.a;
    double len = static_cast<double>(r - l + 1);
    double rate = std::pow(abs_a, static_cast<double>(out.n));
    out.lower = std::sqrt(1.0 - p.value()) / 6.0 * std::pow(p.value(), len) * rate;
    out.upper = 24.0 / ((1.0 - p.value()) * (1.0 - p.value())) *
                std::pow(std::max(p.value(), s.lambda_pf), len) * rate;
    return out;
}

double lower_bound_exact(const Density& p, long n, long window_len) {
    if (n < 1) throw std::domain_error("separation must be at least 1");
    if (window_len < 1) throw std::domain_error("window length must be at least 1");
    const Spectrum s = build_spectrum(p);
    double an = std::pow(s.a, static_cast<double>(n));
    double shifted = s.lambda_r + p.value();
    double d1 = s.lambda_pf + p.value() - an * shifted;
    double d2 = s.lambda_pf + p.value() - an * s.a * shifted;
    double prefactor = (1.0 - s.a) * (s.lambda_pf - s.lambda_r) / (d1 * d2);
    return prefactor * std::pow(p.value(), static_cast<double>(window_len)) *
           std::pow(-s.a, static_cast<double>(n));
}

std::pair<BoundaryCondition, BoundaryCondition> witness_pair(long l, long r, long n) {
    if (l > r) throw std::domain_error("window start exceeds window end");
    if (n < 1) throw std::domain_error("separation must be at least 1");

    BoundaryCondition with_pair;
    with_pair.l = l;
    with_pair.r = r;
    with_pair.left_annulus.assign(static_cast<std::size_t>(n + 2), 0);
    with_pair.left_annulus[0] = 1;
    with_pair.left_annulus[1] = 1;
    with_pair.right_annulus = {1};

    BoundaryCondition without_pair = with_pair;
    without_pair.left_annulus[1] = 0;

    return {with_pair, without_pair};
}

std::uint32_t witness_word(long window_len) {
    if (window_len < 1 || window_len > 24)
        throw std::domain_error("window length out of range");
    return static_cast<std::uint32_t>(((1ull << window_len) - 1ull) & ~1ull);
}

double sensitivity_over_family(
    const Density& p, long l, long r, long frozen_lo, long frozen_hi,
    const std::vector<std::pair<BoundaryCondition, BoundaryCondition>>& family) {
    if (frozen_lo > l || frozen_hi < r)
        throw std::domain_error("window must lie inside the frozen interval");
    double worst = 0.0;
    for (const auto& [first, second] : family) {
        if (first.l != l || first.r != r || second.l != l || second.r != r)
            throw std::domain_error("family windows must match the given window");
        for (long i = frozen_lo; i <= frozen_hi; ++i) {
            if (i >= l && i <= r) continue;
            if (first.sigma(i) != second.sigma(i))
                throw std::domain_error("pair disagrees inside the frozen interval");
        }
        KernelResult k1 = kernel(p, first);
        KernelResult k2 = kernel(p, second);
        for (const auto& [word, prob] : k1.probabilities)
            worst = std::max(worst, std::abs(prob - k2.probability_of(word)));
        for (const auto& [word, prob] : k2.probabilities)
            worst = std::max(worst, std::abs(prob - k1.probability_of(word)));
    }
    return worst;
}

double finite_energy_ratio(const Density& p, long m,
                           const std::vector<std::uint32_t>& event_words,
                           const BoundaryCondition& first,
                           const BoundaryCondition& second) {
    if (m < 0) throw std::domain_error("event radius must be non-negative");
    if (event_words.empty()) throw std::domain_error("event must be non-empty");
    const long l = -m - 4;
    const long r = m + 4;
    if (first.l != l || first.r != r || second.l != l || second.r != r)
        throw std::domain_error("boundary windows must equal the buffered window");

    const std::uint32_t mask = static_cast<std::uint32_t>((1ull << (2 * m + 1)) - 1ull);
    for (std::uint32_t v : event_words)
        if (v > mask) throw std::domain_error("event word wider than the event window");

    KernelResult k1 = kernel(p, first);
    KernelResult k2 = kernel(p, second);
    double worst = std::numeric_limits<double>::infinity();
    for (std::uint32_t v : event_words) {
        double p1 = 0.0;
        double p2 = 0.0;
        for (const auto& [word, prob] : k1.probabilities)
            if (((word >> 4) & mask) == v) p1 += prob;
        for (const auto& [word, prob] : k2.probabilities)
            if (((word >> 4) & mask) == v) p2 += prob;
        if (p1 <= 0.0 || p2 <= 0.0)
            throw std::domain_error("event word has zero probability under a boundary");
        worst = std::min(worst, p1 / p2);
    }
    return worst;
}

} // namespace tbf

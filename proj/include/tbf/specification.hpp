#pragma once

#include "tbf/boundary.hpp"
#include "tbf/density.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tbf {

// Connected component of the unfixed area. Endpoints are meaningful only
// on the finite sides.
struct UnfixedComponent {
    bool left_infinite = false;
    bool right_infinite = false;
    long lo = 0;
    long hi = 0;

    long length() const { return hi - lo + 1; }
};

// Fixed/unfixed decomposition of a glued configuration around a window,
// restricted to the components within distance 1 of the window closure.
struct AreaDecomposition {
    std::vector<long> theta;      // occupied sites inside the window closure
    std::vector<long> theta_bar;  // fixed-area sites inside the window closure
    std::vector<UnfixedComponent> unfixed_components;
    std::vector<UnfixedComponent> influencing_set;
    std::optional<UnfixedComponent> outer_left;
    std::optional<UnfixedComponent> outer_right;

    long occupied_in_closure() const { return static_cast<long>(theta.size()); }
    long border_in_closure() const {
        return static_cast<long>(theta_bar.size() - theta.size());
    }
};

// Applies the thinning map to a word given its two outside neighbour spins:
// an occupied site survives exactly when some neighbour is occupied.
std::vector<int> thin(const std::vector<int>& word, int left_spin, int right_spin);

// Decomposes the configuration glued from the boundary and an interior
// word. Interior word bit k is the spin at site l+k.
AreaDecomposition decompose(const BoundaryCondition& bc, std::uint32_t interior_word);

// Partition weight of one unfixed component relative to the window:
// (1-p)^(-1) * Q^(|U|+1)(0,0) for finite U, a Perron power of the overlap
// with the half-line beyond the window closure for half-infinite U, and
// the bi-infinite constant otherwise.
double unfixed_weight(const Density& p, const UnfixedComponent& u, long l, long r);

struct KernelResult {
    // admissible interior words in increasing order with their probabilities
    std::vector<std::pair<std::uint32_t, double>> probabilities;
    double partition_value = 0.0;
    double log_partition = 0.0;

    double probability_of(std::uint32_t word) const;
};

// Conditional distribution of the interior words on the window given the
// boundary. Enumerates the 2^(r-l+1) words, so the window is capped at 24
// sites. Rejects boundaries that admit no interior word.
KernelResult kernel(const Density& p, const BoundaryCondition& bc);

struct SensitivityBounds {
    long n = 0;
    double lower = 0.0;
    double upper = 0.0;
};

// Quasilocality constants for a window [l,r] frozen on [L,R]:
// n = min(l-L, R-r), lower = sqrt(1-p)/6 * p^len * |a|^n,
// upper = 24/(1-p)^2 * max(p, lpf)^len * |a|^n.
SensitivityBounds sensitivity_bounds(const Density& p, long l, long r, long L, long R);

// Exact kernel difference achieved by the witness boundary pair.
double lower_bound_exact(const Density& p, long n, long window_len);

// The witness pair: both boundaries are all ones except for a zero block
// left of the window, of length n for the first and n+1 for the second.
std::pair<BoundaryCondition, BoundaryCondition> witness_pair(long l, long r, long n);

// Interior word whose probability separates the witness pair: empty at the
// left window edge, occupied elsewhere.
std::uint32_t witness_word(long window_len);

// Maximum kernel difference over a family of boundary pairs that agree on
// the frozen interval outside the window.
double sensitivity_over_family(
    const Density& p, long l, long r, long frozen_lo, long frozen_hi,
    const std::vector<std::pair<BoundaryCondition, BoundaryCondition>>& family);

// Minimum over the event words of the conditional-probability ratio between
// the two boundaries, for the window [-m-4, m+4]. Event words live on
// [-m, m] with bit k at site -m+k.
double finite_energy_ratio(const Density& p, long m,
                           const std::vector<std::uint32_t>& event_words,
                           const BoundaryCondition& first,
                           const BoundaryCondition& second);

} // namespace tbf

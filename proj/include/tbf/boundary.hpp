#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tbf {

// Infinite half-line of spins with a finite description. A periodic pattern
// must be non-isolated under infinite tiling, so its occupied sites need an
// occupied neighbour inside the word or across the wrap-around junction.
class TailPattern {
public:
    enum class Kind { AllEmpty, AllOnes, Periodic };

    static TailPattern all_empty() { return TailPattern(Kind::AllEmpty, {}); }
    static TailPattern all_ones() { return TailPattern(Kind::AllOnes, {}); }
    static TailPattern periodic(std::vector<int> word);

    Kind kind() const { return kind_; }
    const std::vector<int>& period() const { return period_; }

    // spin at distance k >= 1 from the tail's inner edge. A left tail tiles
    // leftward ending at distance 1; a right tail starts at distance 1.
    int spin_at(long k, bool leftward) const;

    // true when the tiled half-line contains an adjacent occupied pair
    bool has_occupied_pair() const;

    // true when every site of the tail is empty
    bool all_zero() const;

    // sites to scan past the tail edge before the pattern provably repeats
    long scan_margin() const;

    std::string text() const;

private:
    TailPattern(Kind k, std::vector<int> w) : kind_(k), period_(std::move(w)) {}

    Kind kind_;
    std::vector<int> period_;
};

// Second-layer configuration outside a window [l, r], described by explicit
// annulus spins on [L, l-1] and [r+1, R] plus tail patterns beyond them.
struct BoundaryCondition {
    long l = 0;
    long r = 0;
    std::vector<int> left_annulus;   // spins at L .. l-1
    std::vector<int> right_annulus;  // spins at r+1 .. R
    TailPattern left_tail = TailPattern::all_ones();
    TailPattern right_tail = TailPattern::all_ones();

    long window_length() const { return r - l + 1; }
    long left_edge() const { return l - static_cast<long>(left_annulus.size()); }
    long right_edge() const { return r + static_cast<long>(right_annulus.size()); }

    // spin at any site outside the window
    int sigma(long i) const;

    // rejects malformed shapes and exterior configurations that cannot be
    // completed to a non-isolated line by any interior word
    void validate() const;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg), position(pos) {}
    std::size_t position;
};

// Text form:
//   tailL=<empty|ones|per:BITS> annulus=<bits> window=[l,r]
//   annulusR=<bits> tailR=<empty|ones|per:BITS>
// Fields are space-separated and must appear in this order.
BoundaryCondition parse_boundary(const std::string& text);
std::string format_boundary(const BoundaryCondition& bc);

} // namespace tbf

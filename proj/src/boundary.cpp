#include "tbf/boundary.hpp"

#include <cstdio>

namespace tbf {

TailPattern TailPattern::periodic(std::vector<int> word) {
    if (word.empty()) throw std::domain_error("periodic tail needs a non-empty word");
    long n = static_cast<long>(word.size());
    for (long i = 0; i < n; ++i) {
        if (word[i] != 0 && word[i] != 1)
            throw std::domain_error("tail word entries must be 0 or 1");
    }
    for (long i = 0; i < n; ++i) {
        if (word[i] != 1) continue;
        int left = word[(i - 1 + n) % n];
        int right = word[(i + 1) % n];
        if (left == 0 && right == 0)
            throw std::domain_error("periodic tail has an isolated occupied site");
    }
    return TailPattern(Kind::Periodic, std::move(word));
}

int TailPattern::spin_at(long k, bool leftward) const {
    if (k < 1) throw std::domain_error("tail distance must be >= 1");
    switch (kind_) {
        case Kind::AllEmpty: return 0;
        case Kind::AllOnes: return 1;
        case Kind::Periodic: break;
    }
    long n = static_cast<long>(period_.size());
    if (leftward) return period_[static_cast<std::size_t>((n - (k % n)) % n)];
    return period_[static_cast<std::size_t>((k - 1) % n)];
}

bool TailPattern::has_occupied_pair() const {
    if (kind_ == Kind::AllOnes) return true;
    if (kind_ == Kind::AllEmpty) return false;
    long n = static_cast<long>(period_.size());
    for (long i = 0; i < n; ++i) {
        if (period_[i] == 1 && period_[(i + 1) % n] == 1) return true;
    }
    return false;
}

bool TailPattern::all_zero() const {
    if (kind_ == Kind::AllEmpty) return true;
    if (kind_ == Kind::AllOnes) return false;
    for (int b : period_)
        if (b == 1) return false;
    return true;
}

long TailPattern::scan_margin() const {
    if (kind_ == Kind::Periodic) return 2 * static_cast<long>(period_.size()) + 4;
    return 4;
}

std::string TailPattern::text() const {
    switch (kind_) {
        case Kind::AllEmpty: return "empty";
        case Kind::AllOnes: return "ones";
        case Kind::Periodic: break;
    }
    std::string out = "per:";
    for (int b : period_) out.push_back(b ? '1' : '0');
    return out;
}

int BoundaryCondition::sigma(long i) const {
    if (i >= l && i <= r) throw std::logic_error("sigma queried inside the window");
    if (i < l) {
        long L = left_edge();
        if (i >= L) return left_annulus[static_cast<std::size_t>(i - L)];
        return left_tail.spin_at(L - i, true);
    }
    long R = right_edge();
    if (i <= R) return right_annulus[static_cast<std::size_t>(i - (r + 1))];
    return right_tail.spin_at(i - R, false);
}

void BoundaryCondition::validate() const {
    if (l > r) throw std::domain_error("window start exceeds window end");
    if (left_annulus.empty() || right_annulus.empty())
        throw std::domain_error("annulus words must cover at least one site per side");
    for (int b : left_annulus)
        if (b != 0 && b != 1) throw std::domain_error("annulus entries must be 0 or 1");
    for (int b : right_annulus)
        if (b != 0 && b != 1) throw std::domain_error("annulus entries must be 0 or 1");

    // Exterior occupied sites need an occupied neighbour among exterior
    // sites; the two window-adjacent sites are exempt because an interior
    // word can supply the partner. Scanning one margin past each tail edge
    // covers every junction; deeper tail sites repeat a validated pattern.
    long lo = left_edge() - left_tail.scan_margin();
    long hi = right_edge() + right_tail.scan_margin();
    for (long i = lo; i <= hi; ++i) {
        if (i >= l - 1 && i <= r + 1) continue;
        if (sigma(i) != 1) continue;
        if (sigma(i - 1) == 1 || sigma(i + 1) == 1) continue;
        throw std::domain_error("boundary has an isolated occupied site at site " +
                                std::to_string(i));
    }
}

namespace {

std::size_t skip_spaces(const std::string& s, std::size_t pos) {
    while (pos < s.size() && s[pos] == ' ') ++pos;
    return pos;
}

std::string expect_field(const std::string& s, std::size_t& pos,
                         const std::string& name, std::size_t& value_pos) {
    pos = skip_spaces(s, pos);
    if (pos >= s.size())
        throw ParseError("missing field '" + name + "='", pos);
    std::size_t start = pos;
    while (pos < s.size() && s[pos] != ' ') ++pos;
    std::string token = s.substr(start, pos - start);
    std::string prefix = name + "=";
    if (token.rfind(prefix, 0) != 0)
        throw ParseError("expected '" + name + "=...'", start);
    value_pos = start + prefix.size();
    return token.substr(prefix.size());
}

std::vector<int> parse_bits(const std::string& value, std::size_t value_pos) {
    if (value.empty())
        throw ParseError("expected a non-empty bitstring", value_pos);
    std::vector<int> bits;
    bits.reserve(value.size());
    for (std::size_t i = 0; i < value.size(); ++i) {
        char c = value[i];
        if (c != '0' && c != '1')
            throw ParseError("expected only 0s and 1s", value_pos + i);
        bits.push_back(c - '0');
    }
    return bits;
}

TailPattern parse_tail(const std::string& value, std::size_t value_pos) {
    if (value == "empty") return TailPattern::all_empty();
    if (value == "ones") return TailPattern::all_ones();
    if (value.rfind("per:", 0) == 0) {
        std::vector<int> bits = parse_bits(value.substr(4), value_pos + 4);
        try {
            return TailPattern::periodic(std::move(bits));
        } catch (const std::domain_error& e) {
            throw ParseError(e.what(), value_pos + 4);
        }
    }
    throw ParseError("expected empty, ones, or per:BITS", value_pos);
}

long parse_integer(const std::string& s, std::size_t& i, std::size_t base_pos) {
    std::size_t start = i;
    if (i < s.size() && s[i] == '-') ++i;
    std::size_t digits = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == digits)
        throw ParseError("expected an integer", base_pos + start);
    return std::stol(s.substr(start, i - start));
}

std::pair<long, long> parse_window(const std::string& value, std::size_t value_pos) {
    std::size_t i = 0;
    if (i >= value.size() || value[i] != '[')
        throw ParseError("expected window of the form [l,r]", value_pos);
    ++i;
    long lo = parse_integer(value, i, value_pos);
    if (i >= value.size() || value[i] != ',')
        throw ParseError("expected ',' between window endpoints", value_pos + i);
    ++i;
    long hi = parse_integer(value, i, value_pos);
    if (i >= value.size() || value[i] != ']')
        throw ParseError("expected closing ']'", value_pos + i);
    ++i;
    if (i != value.size())
        throw ParseError("unexpected text after window", value_pos + i);
    if (lo > hi)
        throw ParseError("window start exceeds end", value_pos);
    return {lo, hi};
}

} // namespace

BoundaryCondition parse_boundary(const std::string& text) {
    std::size_t pos = 0;
    std::size_t vpos = 0;

    std::string v = expect_field(text, pos, "tailL", vpos);
    TailPattern left = parse_tail(v, vpos);

    v = expect_field(text, pos, "annulus", vpos);
    std::vector<int> left_ann = parse_bits(v, vpos);

    v = expect_field(text, pos, "window", vpos);
    auto [lo, hi] = parse_window(v, vpos);

    v = expect_field(text, pos, "annulusR", vpos);
    std::vector<int> right_ann = parse_bits(v, vpos);

    v = expect_field(text, pos, "tailR", vpos);
    TailPattern right = parse_tail(v, vpos);

    pos = skip_spaces(text, pos);
    if (pos != text.size())
        throw ParseError("unexpected trailing text", pos);

    BoundaryCondition bc;
    bc.l = lo;
    bc.r = hi;
    bc.left_annulus = std::move(left_ann);
    bc.right_annulus = std::move(right_ann);
    bc.left_tail = left;
    bc.right_tail = right;
    return bc;
}

std::string format_boundary(const BoundaryCondition& bc) {
    std::string out = "tailL=" + bc.left_tail.text() + " annulus=";
    for (int b : bc.left_annulus) out.push_back(b ? '1' : '0');
    out += " window=[" + std::to_string(bc.l) + "," + std::to_string(bc.r) + "]";
    out += " annulusR=";
    for (int b : bc.right_annulus) out.push_back(b ? '1' : '0');
    out += " tailR=" + bc.right_tail.text();
    return out;
}

} // namespace tbf

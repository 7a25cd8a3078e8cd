#include "carpet/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "carpet/errors.hpp"

namespace carpet::symbolic {

bool allowed(int from, int to) {
    static constexpr bool table[4][4] = {
        {false, true, false, false},  // 0 -> 1
        {false, false, true, false},  // 1 -> 2
        {true, false, false, true},   // 2 -> 0, 3
        {true, true, false, false},   // 3 -> 0, 1
    };
    return from >= 0 && from < 4 && to >= 0 && to < 4 && table[from][to];
}

std::array<std::array<int, 4>, 4> adjacency() {
    std::array<std::array<int, 4>, 4> a{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a[i][j] = allowed(i, j) ? 1 : 0;
    return a;
}

int Word::digit(int k) const {
    if (k < static_cast<int>(preperiod.size())) return preperiod[k];
    if (period.empty()) throw argument_error("finite word has no digit at this depth");
    return period[(k - preperiod.size()) % period.size()];
}

void validate_word(const Word& w) {
    auto check_digit = [](int d) {
        if (d < 0 || d >= kAlphabet) throw argument_error("digit out of alphabet");
    };
    for (int d : w.preperiod) check_digit(d);
    for (int d : w.period) check_digit(d);
    if (w.preperiod.empty() && w.period.empty())
        throw argument_error("empty word");
    const int total = static_cast<int>(w.preperiod.size() + w.period.size());
    for (int k = 0; k + 1 < total; ++k)
        if (!allowed(w.digit(k), w.digit(k + 1)))
            throw argument_error("word has a forbidden adjacent pair");
    if (!w.period.empty()) {
        // wrap of the period back to its own start
        const int last = w.digit(total - 1);
        const int wrap = w.period.front();
        if (!allowed(last, wrap)) throw argument_error("period wrap pair is forbidden");
    }
}

std::vector<std::vector<int>> admissible_words(int n) {
    if (n < 1 || n > 30) throw argument_error("word length must be in 1..30");
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    // Depth-first in digit order = lexicographic output order.
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == n) {
            out.push_back(cur);
            return;
        }
        for (int d = 0; d < kAlphabet; ++d) {
            if (!cur.empty() && !allowed(cur.back(), d)) continue;
            cur.push_back(d);
            self(self, depth + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

unsigned long long admissible_word_count(int n) {
    if (n < 1 || n > 30) throw argument_error("word length must be in 1..30");
    const auto a = adjacency();
    // row vector of ones times A^(n-1), summed.
    std::array<unsigned long long, 4> v{1, 1, 1, 1};
    for (int step = 1; step < n; ++step) {
        std::array<unsigned long long, 4> w{};
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i) w[j] += v[i] * (a[i][j] ? 1ull : 0ull);
        v = w;
    }
    return std::accumulate(v.begin(), v.end(), 0ull);
}

DistanceBound word_distance(const Word& s, const Word& sp, int depth) {
    if (depth < 1) throw argument_error("depth must be >= 1");
    if (!s.expandable_to(depth) || !sp.expandable_to(depth))
        throw argument_error("word not expandable to the requested depth");
    DistanceBound b;
    double pow4 = 1.0;
    for (int k = 0; k < depth; ++k) {
        b.truncated += std::abs(double(s.digit(k) - sp.digit(k))) / pow4;
        pow4 *= 4.0;
    }
    b.lo = b.truncated;
    // Tail: Sum_{k >= depth} |ds_k|/4^k <= 3 * 4^(-depth) * 4/3.
    b.hi = b.truncated + 4.0 / pow4;
    return b;
}

std::optional<int> salpha_entry(const Word& w) {
    if (w.period.empty()) return std::nullopt; // finite words have no infinite tail
    // The periodic part must itself be a rotation chain of (0,1,2).
    const int q = static_cast<int>(w.period.size());
    for (int i = 0; i < q; ++i) {
        const int cur = w.period[i], nxt = w.period[(i + 1) % q];
        if (cur < 0 || cur > 2) return std::nullopt;
        if (nxt != (cur + 1) % 3) return std::nullopt;
    }
    // Walk the preperiod backwards extending the chain as far as it goes.
    int entry = static_cast<int>(w.preperiod.size());
    for (int k = entry - 1; k >= 0; --k) {
        const int cur = w.preperiod[k];
        if (cur < 0 || cur > 2) break;
        if (w.digit(k + 1) != (cur + 1) % 3) break;
        entry = k;
    }
    return entry;
}

namespace {

// Equality of two eventually periodic digit sequences.
bool same_sequence(const Word& a, const Word& b) {
    if (a.period.empty() != b.period.empty()) return false;
    if (a.period.empty())
        return a.preperiod == b.preperiod;
    const int pre = static_cast<int>(std::max(a.preperiod.size(), b.preperiod.size()));
    const int l = static_cast<int>(std::lcm(a.period.size(), b.period.size()));
    for (int k = 0; k < pre + l; ++k)
        if (a.digit(k) != b.digit(k)) return false;
    return true;
}

} // namespace

QuotientResult equivalent(const Word& s, const Word& sp) {
    if (same_sequence(s, sp)) return {true, 0};
    if (s.period.empty() || sp.period.empty()) return {false, std::nullopt};
    const auto ns = salpha_entry(s);
    const auto nsp = salpha_entry(sp);
    if (!ns || !nsp) return {false, std::nullopt};
    const int need = std::max(*ns, *nsp);
    for (int k = 0; k < need; ++k)
        if (s.digit(k) != sp.digit(k)) return {false, std::nullopt};
    return {true, need};
}

double IntervalModel::map_point(double x) const {
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (!sub[i][j]) continue;
            const Interval& c = *sub[i][j];
            if (x >= c.lo && x <= c.hi) return 4.0 * j + 3.0 * (x - c.lo);
        }
    }
    throw domain_error("point is outside every sub-interval");
}

std::optional<std::vector<int>> IntervalModel::itinerary(double x, int n) const {
    std::vector<int> out;
    for (int step = 0; step < n; ++step) {
        int digit = -1;
        for (int i = 0; i < 4 && digit < 0; ++i) {
            const Interval b = base(i);
            if (x >= b.lo && x <= b.hi) digit = i;
        }
        if (digit < 0) return std::nullopt;
        out.push_back(digit);
        if (step + 1 == n) break;
        bool moved = false;
        for (int j = 0; j < 4 && !moved; ++j) {
            if (!sub[digit][j]) continue;
            const Interval& c = *sub[digit][j];
            if (x >= c.lo && x <= c.hi) {
                x = 4.0 * j + 3.0 * (x - c.lo);
                moved = true;
            }
        }
        if (!moved) return std::nullopt;
    }
    return out;
}

IntervalModel build_interval_model() {
    IntervalModel m;
    for (int i = 0; i < 4; ++i) {
        std::vector<int> images;
        for (int j = 0; j < 4; ++j)
            if (allowed(i, j)) images.push_back(j);
        const double left = 4.0 * i;
        if (images.size() == 1) {
            m.sub[i][images[0]] = Interval{left, left + 1.0 / 3.0};
        } else {
            // Increasing j order on the first and last thirds, keeping the
            // closed sub-intervals disjoint.
            m.sub[i][images[0]] = Interval{left, left + 1.0 / 3.0};
            m.sub[i][images[1]] = Interval{left + 2.0 / 3.0, left + 1.0};
        }
    }
    return m;
}

Interval itinerary_cylinder(const std::vector<int>& word, const IntervalModel& model) {
    if (word.empty()) throw argument_error("cylinder of the empty word");
    for (std::size_t k = 0; k + 1 < word.size(); ++k)
        if (!allowed(word[k], word[k + 1]))
            throw argument_error("inadmissible word");
    for (int d : word)
        if (d < 0 || d >= 4) throw argument_error("digit out of alphabet");

    // Start from the last digit's base interval and pull back through the
    // affine inverses x -> lo_ij + (y - 4j)/3.
    Interval cur = model.base(word.back());
    for (std::size_t k = word.size() - 1; k-- > 0;) {
        const int i = word[k], j = word[k + 1];
        const Interval& c = *model.sub[i][j];
        cur = Interval{c.lo + (cur.lo - 4.0 * j) / 3.0, c.lo + (cur.hi - 4.0 * j) / 3.0};
    }
    return cur;
}

} // namespace carpet::symbolic

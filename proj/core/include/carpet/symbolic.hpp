#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace carpet::symbolic {

// The exchange subshift on digits {0,1,2,3}; the allowed transitions are
// exactly the edge-image combinatorics of the 4-edge tree.
inline constexpr int kAlphabet = 4;

bool allowed(int from, int to);

// 0/1 adjacency matrix of the allowed pairs.
std::array<std::array<int, 4>, 4> adjacency();

// Eventually periodic word: digits are preperiod then period repeated;
// empty period means a finite word.
struct Word {
    std::vector<int> preperiod;
    std::vector<int> period;

    bool finite() const { return period.empty(); }
    int length() const { return static_cast<int>(preperiod.size()); } // finite part

    // Digit at position k; throws for finite words past the end.
    int digit(int k) const;

    // True iff k is within the expandable range (always true when periodic).
    bool expandable_to(int depth) const {
        return !period.empty() || depth <= static_cast<int>(preperiod.size());
    }
};

// Digits in range and every adjacent pair allowed, including the
// preperiod->period junction and the period wrap.
void validate_word(const Word& w);

// All admissible words of length n in lexicographic order, as digit vectors.
// Count equals the total of the adjacency-matrix power A^(n-1); 1 <= n <= 30.
std::vector<std::vector<int>> admissible_words(int n);

// Exact count via the matrix power (fits in unsigned 64-bit for n <= 30).
unsigned long long admissible_word_count(int n);

// Truncation of Sum |s_k - s'_k| / 4^k over k < depth, with the rigorous
// enclosure [lo, hi] of the full series; hi - lo = 4^(1-depth).
struct DistanceBound {
    double truncated = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};
DistanceBound word_distance(const Word& s, const Word& sp, int depth);

// Minimal shift n with sigma^n(w) in S_alpha (the three rotations of the
// repeating (0,1,2) pattern), if any.
std::optional<int> salpha_entry(const Word& w);

// The quotient relation: equal words, or a common prefix of some length n
// after which both shifted tails lie in S_alpha.  On success `witness` is
// the smallest such n.
struct QuotientResult {
    bool equivalent = false;
    std::optional<int> witness;
};
QuotientResult equivalent(const Word& s, const Word& sp);

// Concrete interval realization: I_i = [4i, 4i+1]; inside I_i the
// sub-interval for the j-th allowed image sits on the first third (single
// image) or the first/last thirds in increasing j order (two images), and
// maps onto I_j by the increasing affine bijection of slope 3.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

struct IntervalModel {
    // sub[i][j] = the sub-interval of I_i mapped onto I_j, when (i,j) allowed.
    std::array<std::array<std::optional<Interval>, 4>, 4> sub;

    Interval base(int i) const { return {4.0 * i, 4.0 * i + 1.0}; }

    // The piecewise-affine model map on a sub-interval's points.
    double map_point(double x) const;

    // Digit sequence of x under the model, length n; nullopt if x escapes
    // the sub-interval union before n digits are read.
    std::optional<std::vector<int>> itinerary(double x, int n) const;
};

IntervalModel build_interval_model();

// Closed interval of points whose first |word| digits equal `word`;
// inadmissible words are rejected.
Interval itinerary_cylinder(const std::vector<int>& word, const IntervalModel& model);

} // namespace carpet::symbolic

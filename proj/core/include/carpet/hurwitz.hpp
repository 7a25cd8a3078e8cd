#pragma once

#include <string>
#include <vector>

namespace carpet::hurwitz {

// Bijection on {1..d}, stored 0-based internally.
class Permutation {
public:
    explicit Permutation(int d); // identity
    explicit Permutation(std::vector<int> images_zero_based);

    int degree() const { return static_cast<int>(map_.size()); }
    int apply(int x) const { return map_[x]; } // 0-based

    // this after other: (a.then(b)) means apply a first, then b.
    Permutation then(const Permutation& b) const;
    Permutation inverse() const;

    // Cycle lengths including fixed points, sorted descending.
    std::vector<int> cycle_type() const;

    // Disjoint-cycle string like "(1,2,3)(4,5)"; fixed points omitted,
    // identity prints "()".
    std::string cycle_notation() const;

    // A cycle on the 1-based entries, e.g. {1,2,3} -> (1,2,3).
    static Permutation from_cycle(int d, const std::vector<int>& cycle_one_based);

    bool is_identity() const;
    bool operator==(const Permutation& o) const { return map_ == o.map_; }

private:
    std::vector<int> map_;
};

// Abstract branch data: degree d plus one row of local degrees per branch
// point; every row must sum to d and contain an entry >= 2.
struct BranchData {
    int degree = 0;
    std::vector<std::vector<int>> rows;
};

void validate(const BranchData& data);

// d = (d11 + d21 + d31 - 1) / 2, exactly.
bool check_h1prime(int d, int d11, int d21, int d31);

// The explicit witnesses: s1 = (1,2,...,d11), s2 = (d,d-1,...,d-d21+1),
// s3 = (s1 s2)^-1 with s1 applied first; s3 is then a d31-cycle.
std::vector<Permutation> construct_permutations(int d, int d11, int d21, int d31);

// Cycle types match the rows (padded with 1s), the product (left factor
// applied first) is the identity, and the generated group is transitive.
bool verify_hurwitz_conditions(const std::vector<Permutation>& perms,
                               const BranchData& data);

// Exhaustive search with the first permutation frozen to a canonical
// representative of its cycle type; d <= 7.
bool brute_force_realizable(const BranchData& data);

// Witness tuple if realizable (same search as brute_force_realizable).
std::vector<Permutation> find_witness(const BranchData& data);

} // namespace carpet::hurwitz

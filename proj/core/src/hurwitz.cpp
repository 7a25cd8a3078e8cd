#include "carpet/hurwitz.hpp"

#include <algorithm>
#include <numeric>

#include "carpet/errors.hpp"

namespace carpet::hurwitz {

Permutation::Permutation(int d) : map_(d) {
    if (d < 1) throw argument_error("permutation degree must be >= 1");
    std::iota(map_.begin(), map_.end(), 0);
}

Permutation::Permutation(std::vector<int> images_zero_based) : map_(std::move(images_zero_based)) {
    std::vector<bool> seen(map_.size(), false);
    for (int v : map_) {
        if (v < 0 || v >= static_cast<int>(map_.size()) || seen[v])
            throw argument_error("not a bijection");
        seen[v] = true;
    }
}

Permutation Permutation::then(const Permutation& b) const {
    if (degree() != b.degree()) throw argument_error("degree mismatch in composition");
    std::vector<int> r(map_.size());
    for (std::size_t x = 0; x < map_.size(); ++x) r[x] = b.map_[map_[x]];
    return Permutation(std::move(r));
}

Permutation Permutation::inverse() const {
    std::vector<int> r(map_.size());
    for (std::size_t x = 0; x < map_.size(); ++x) r[map_[x]] = static_cast<int>(x);
    return Permutation(std::move(r));
}

std::vector<int> Permutation::cycle_type() const {
    std::vector<bool> seen(map_.size(), false);
    std::vector<int> type;
    for (std::size_t s = 0; s < map_.size(); ++s) {
        if (seen[s]) continue;
        int len = 0;
        for (std::size_t x = s; !seen[x]; x = map_[x]) {
            seen[x] = true;
            ++len;
        }
        type.push_back(len);
    }
    std::sort(type.rbegin(), type.rend());
    return type;
}

std::string Permutation::cycle_notation() const {
    std::vector<bool> seen(map_.size(), false);
    std::string out;
    for (std::size_t s = 0; s < map_.size(); ++s) {
        if (seen[s] || map_[s] == static_cast<int>(s)) {
            seen[s] = true;
            continue;
        }
        out += '(';
        bool first = true;
        for (std::size_t x = s; !seen[x]; x = map_[x]) {
            seen[x] = true;
            if (!first) out += ',';
            out += std::to_string(x + 1);
            first = false;
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

Permutation Permutation::from_cycle(int d, const std::vector<int>& cycle_one_based) {
    std::vector<int> r(d);
    std::iota(r.begin(), r.end(), 0);
    const std::size_t n = cycle_one_based.size();
    for (std::size_t i = 0; i < n; ++i) {
        const int a = cycle_one_based[i] - 1;
        const int b = cycle_one_based[(i + 1) % n] - 1;
        if (a < 0 || a >= d) throw argument_error("cycle entry out of range");
        r[a] = b;
    }
    return Permutation(std::move(r));
}

bool Permutation::is_identity() const {
    for (std::size_t x = 0; x < map_.size(); ++x)
        if (map_[x] != static_cast<int>(x)) return false;
    return true;
}

void validate(const BranchData& data) {
    if (data.degree < 2) throw argument_error("branch data needs degree >= 2");
    if (data.rows.empty()) throw argument_error("branch data needs at least one row");
    for (const auto& row : data.rows) {
        int sum = 0;
        bool has_branch = false;
        for (int v : row) {
            if (v < 1) throw argument_error("local degrees must be >= 1");
            sum += v;
            has_branch = has_branch || v >= 2;
        }
        if (sum != data.degree) throw argument_error("each row must sum to the degree");
        if (!has_branch) throw argument_error("each row needs some local degree >= 2");
    }
}

bool check_h1prime(int d, int d11, int d21, int d31) {
    for (int v : {d11, d21, d31})
        if (v < 2 || v > d) throw argument_error("local degrees must satisfy 2 <= d_i1 <= d");
    return 2 * d == d11 + d21 + d31 - 1;
}

std::vector<Permutation> construct_permutations(int d, int d11, int d21, int d31) {
    if (!check_h1prime(d, d11, d21, d31))
        throw argument_error("(d, d11, d21, d31) does not satisfy 2d = d11+d21+d31-1");
    std::vector<int> c1(d11), c2(d21);
    std::iota(c1.begin(), c1.end(), 1); // (1, 2, ..., d11)
    for (int i = 0; i < d21; ++i) c2[i] = d - i; // (d, d-1, ..., d-d21+1)
    const Permutation s1 = Permutation::from_cycle(d, c1);
    const Permutation s2 = Permutation::from_cycle(d, c2);
    const Permutation s3 = s1.then(s2).inverse(); // s1 applied first
    return {s1, s2, s3};
}

bool verify_hurwitz_conditions(const std::vector<Permutation>& perms, const BranchData& data) {
    validate(data);
    if (perms.size() != data.rows.size()) return false;
    for (std::size_t i = 0; i < perms.size(); ++i) {
        if (perms[i].degree() != data.degree) return false;
        std::vector<int> want = data.rows[i];
        std::sort(want.rbegin(), want.rend());
        if (perms[i].cycle_type() != want) return false;
    }
    // Product with the leftmost factor applied first.
    for (int x = 0; x < data.degree; ++x) {
        int y = x;
        for (const auto& p : perms) y = p.apply(y);
        if (y != x) return false;
    }
    // Transitivity: the forward closure of a point under bijections equals
    // its orbit under the generated group.
    std::vector<bool> seen(data.degree, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        for (const auto& p : perms) {
            const int y = p.apply(x);
            if (!seen[y]) {
                seen[y] = true;
                ++count;
                stack.push_back(y);
            }
        }
    }
    return count == data.degree;
}

namespace {

Permutation canonical_of_type(int d, std::vector<int> type_desc) {
    std::vector<int> images(d);
    std::iota(images.begin(), images.end(), 0);
    int base = 0;
    for (int len : type_desc) {
        for (int i = 0; i < len; ++i) images[base + i] = base + (i + 1) % len;
        base += len;
    }
    return Permutation(std::move(images));
}

// All permutations of S_d whose cycle type matches `want` (descending).
std::vector<Permutation> all_of_type(int d, const std::vector<int>& want) {
    std::vector<int> images(d);
    std::iota(images.begin(), images.end(), 0);
    std::vector<Permutation> out;
    do {
        Permutation p{std::vector<int>(images)};
        if (p.cycle_type() == want) out.push_back(std::move(p));
    } while (std::next_permutation(images.begin(), images.end()));
    return out;
}

bool search(const BranchData& data, std::vector<Permutation>& chosen, std::size_t row,
            const Permutation& partial) {
    const std::size_t n = data.rows.size();
    if (row == n - 1) {
        // Last permutation is forced: it must invert the partial product.
        Permutation last = partial.inverse();
        std::vector<int> want = data.rows[row];
        std::sort(want.rbegin(), want.rend());
        if (last.cycle_type() != want) return false;
        chosen.push_back(std::move(last));
        if (verify_hurwitz_conditions(chosen, data)) return true;
        chosen.pop_back();
        return false;
    }
    std::vector<int> want = data.rows[row];
    std::sort(want.rbegin(), want.rend());
    for (auto& cand : all_of_type(data.degree, want)) {
        chosen.push_back(cand);
        if (search(data, chosen, row + 1, partial.then(cand))) return true;
        chosen.pop_back();
    }
    return false;
}

std::vector<Permutation> witness_impl(const BranchData& data) {
    validate(data);
    if (data.degree > 7) throw budget_error("brute force limited to degree <= 7");

    // Sphere realizability also needs the Euler-characteristic identity:
    // total branching must be exactly 2d - 2.  Permutation tuples with the
    // right cycle types, identity product and transitivity exist for other
    // branching sums too, but they realize coverings of higher genus.
    int branching = 0;
    for (const auto& row : data.rows)
        for (int k : row) branching += k - 1;
    if (branching != 2 * data.degree - 2) return {};

    std::vector<int> first = data.rows[0];
    std::sort(first.rbegin(), first.rend());
    // Conjugating a witness tuple preserves realizability, so the first
    // permutation can be frozen to one canonical representative.
    Permutation s1 = canonical_of_type(data.degree, first);
    std::vector<Permutation> chosen{s1};
    if (data.rows.size() == 1) {
        if (verify_hurwitz_conditions(chosen, data)) return chosen;
        return {};
    }
    if (search(data, chosen, 1, s1)) return chosen;
    return {};
}

} // namespace

bool brute_force_realizable(const BranchData& data) { return !witness_impl(data).empty(); }

std::vector<Permutation> find_witness(const BranchData& data) { return witness_impl(data); }

} // namespace carpet::hurwitz

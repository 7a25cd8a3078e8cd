#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "carpet/errors.hpp"
#include "carpet/trees.hpp"

using namespace carpet;
using namespace carpet::trees;

TEST_CASE("builtin tree shapes") {
    const auto hp = builtin_tree(TreeKind::HP, {1, 2, 2, 1});
    CHECK(hp.edge_count == 4);
    CHECK(hp.vertex_count == 5);
    CHECK(hp.edge_images == std::vector<std::vector<int>>{{1}, {2}, {0, 3}, {0, 1}});

    const auto hq = builtin_tree(TreeKind::HQ, {2, 3});
    CHECK(hq.edge_count == 2);
    CHECK(hq.vertex_count == 3);
    CHECK(hq.edge_images == std::vector<std::vector<int>>{{0, 1}, {0, 1}});

    const auto hr = builtin_tree(TreeKind::HR, {1, 2, 2});
    CHECK(hr.edge_count == 3);
    CHECK(hr.edge_images == std::vector<std::vector<int>>{{1}, {2}, {0}});

    CHECK_THROWS_AS(builtin_tree(TreeKind::HP, {1, 2}), argument_error);
    CHECK_THROWS_AS(builtin_tree(TreeKind::HQ, {2, 0}), argument_error);
}

TEST_CASE("transition matrices") {
    const auto mp = transition_matrix(builtin_tree(TreeKind::HP, {1, 2, 2, 1}));
    const TransitionMatrix expected = {
        {0, 1, 0, 0}, {0, 0, 0.5, 0}, {0.5, 0, 0, 0.5}, {1, 1, 0, 0}};
    CHECK(mp == expected);

    const auto mq = transition_matrix(builtin_tree(TreeKind::HQ, {2, 3}));
    CHECK(mq == TransitionMatrix{{0.5, 0.5}, {1.0 / 3, 1.0 / 3}});

    // Single self-mapped edge of weight 1.
    WeightedDynamicalTree loop;
    loop.vertex_count = 2;
    loop.edge_count = 1;
    loop.edge_images = {{0}};
    loop.weights = {1};
    CHECK(transition_matrix(loop) == TransitionMatrix{{1.0}});
}

TEST_CASE("row structure is 1/w at image edges") {
    const auto tree = builtin_tree(TreeKind::HP, {3, 4, 5, 2});
    const auto m = transition_matrix(tree);
    for (int i = 0; i < tree.edge_count; ++i) {
        for (int j = 0; j < tree.edge_count; ++j) {
            const bool in_image =
                std::find(tree.edge_images[i].begin(), tree.edge_images[i].end(), j) !=
                tree.edge_images[i].end();
            CHECK(m[i][j] == (in_image ? 1.0 / tree.weights[i] : 0.0));
        }
    }
}

TEST_CASE("leading eigenvalues of the three shapes") {
    // Frozen: largest real root of X^4 - X/2 - 1/4.
    const double hp_1221 = 0.917543340819818;
    const auto mp = transition_matrix(builtin_tree(TreeKind::HP, {1, 2, 2, 1}));
    CHECK(std::abs(leading_eigenvalue(mp) - hp_1221) <= 1e-10);
    CHECK(std::abs(hp_characteristic_root(1, 2, 2, 1) - hp_1221) <= 1e-12);
    CHECK(std::abs(leading_eigenvalue(mp) - 0.918) <= 1e-3);

    const auto mq = transition_matrix(builtin_tree(TreeKind::HQ, {2, 3}));
    CHECK(std::abs(leading_eigenvalue(mq) - 5.0 / 6.0) <= 1e-12);

    CHECK(leading_eigenvalue({{1.0}}) == doctest::Approx(1.0).epsilon(1e-12));

    // Cyclic shape: eigenvalue is the cube root of the weight product inverse.
    const auto mr = transition_matrix(builtin_tree(TreeKind::HR, {1, 2, 2}));
    CHECK(std::abs(leading_eigenvalue(mr) - std::pow(0.25, 1.0 / 3.0)) <= 1e-10);
}

TEST_CASE("power iteration vs characteristic roots across weights") {
    for (int d0 = 1; d0 <= 6; ++d0)
        for (int d1 = 1; d1 <= 6; ++d1)
            for (int d2 = 1; d2 <= 6; ++d2) {
                const double lr = leading_eigenvalue(
                    transition_matrix(builtin_tree(TreeKind::HR, {d0, d1, d2})));
                CHECK(std::abs(lr - std::pow(1.0 / (d0 * d1 * d2), 1.0 / 3.0)) <= 1e-10);

                const double lq = leading_eigenvalue(
                    transition_matrix(builtin_tree(TreeKind::HQ, {d0, d1})));
                CHECK(std::abs(lq - (1.0 / d0 + 1.0 / d1)) <= 1e-10);

                for (int d3 = 1; d3 <= 6; ++d3) {
                    const double lp = leading_eigenvalue(
                        transition_matrix(builtin_tree(TreeKind::HP, {d0, d1, d2, d3})));
                    CHECK(std::abs(lp - hp_characteristic_root(d0, d1, d2, d3)) <= 1e-10);
                }
            }
}

TEST_CASE("h1 arithmetic") {
    CHECK(check_h1(1, 2, 2) == std::pair<bool, std::optional<int>>{true, 2});
    CHECK(check_h1(2, 2, 2) == std::pair<bool, std::optional<int>>{false, std::nullopt});
    CHECK(check_h1(3, 3, 3) == std::pair<bool, std::optional<int>>{true, 4});
    // Integral dhat that fails the size bounds is still reported.
    CHECK(check_h1(1, 1, 1) == std::pair<bool, std::optional<int>>{false, 1});
    CHECK(check_h1(1, 1, 5) == std::pair<bool, std::optional<int>>{false, 3});
    CHECK_THROWS_AS(check_h1(0, 1, 1), argument_error);
}

TEST_CASE("obstruction reports") {
    const auto rp = is_unobstructed(builtin_tree(TreeKind::HP, {1, 2, 2, 1}));
    CHECK(rp.unobstructed);
    CHECK(rp.leading_eigenvalue < 1.0);

    CHECK(is_unobstructed(builtin_tree(TreeKind::HQ, {2, 3})).unobstructed);
    CHECK_FALSE(is_unobstructed(builtin_tree(TreeKind::HQ, {2, 2})).unobstructed);
    CHECK(is_unobstructed(builtin_tree(TreeKind::HQ, {2, 2})).leading_eigenvalue ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("perron vector strict inequality") {
    for (const auto& weights :
         {std::vector<int>{1, 2, 2, 1}, {2, 2, 2, 2}, {1, 3, 2, 2}, {5, 1, 4, 2}}) {
        const auto tree = builtin_tree(TreeKind::HP, weights);
        const auto rep = is_unobstructed(tree);
        if (!rep.unobstructed) continue;
        const auto m = transition_matrix(tree);
        REQUIRE(rep.perron_vector.size() == 4);
        for (int i = 0; i < 4; ++i) {
            CHECK(rep.perron_vector[i] > 0.0);
            double mv = 0.0;
            for (int j = 0; j < 4; ++j) mv += m[i][j] * rep.perron_vector[j];
            CHECK(mv < rep.perron_vector[i]);
        }
    }
}

TEST_CASE("hp obstruction pattern over small weights") {
    for (int d0 = 1; d0 <= 6; ++d0)
        for (int d1 = 1; d1 <= 6; ++d1)
            for (int d2 = 1; d2 <= 6; ++d2)
                for (int d3 = 1; d3 <= 6; ++d3) {
                    const auto rep =
                        is_unobstructed(builtin_tree(TreeKind::HP, {d0, d1, d2, d3}));
                    int big = (d0 >= 2) + (d1 >= 2) + (d2 >= 2) + (d3 >= 2);
                    if (big >= 3) CHECK(rep.unobstructed);
                    // A lone big weight can unobstruct only from the two
                    // middle slots; combined with the integrality condition
                    // on (d0,d1,d2) that never happens.
                    if (rep.unobstructed && big < 2) {
                        CHECK((d1 >= 4 || d2 >= 4));
                        CHECK_FALSE(check_h1(d0, d1, d2).first);
                    }
                    if (rep.unobstructed && check_h1(d0, d1, d2).first) CHECK(big >= 2);
                }
}

TEST_CASE("single middle weight can unobstruct") {
    // Frozen counterexample: only d1 = 4 is >= 2, eigenvalue is the largest
    // root of X^4 - X/2 - 1/4 which is below 1.
    const auto rep = is_unobstructed(builtin_tree(TreeKind::HP, {1, 4, 1, 1}));
    CHECK(rep.unobstructed);
    CHECK(std::abs(rep.leading_eigenvalue - hp_characteristic_root(1, 4, 1, 1)) <= 1e-10);
}

TEST_CASE("json round structure") {
    const std::string j = to_json(builtin_tree(TreeKind::HQ, {2, 3}));
    CHECK(j.find("\"edges\":2") != std::string::npos);
    CHECK(j.find("\"weights\":[2,3]") != std::string::npos);
    CHECK(j.find("\"images\":[[0,1],[0,1]]") != std::string::npos);
}

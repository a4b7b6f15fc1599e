#include <doctest.h>

#include "hcsp/gf2.hpp"
#include "hcsp/oracle.hpp"

using namespace hcsp;

namespace {

BitVec bits(int width, std::initializer_list<int> ones) {
    BitVec v(width);
    for (int b : ones) v.set(b);
    return v;
}

}  // namespace

TEST_CASE("gf2_solve: odd cycle is inconsistent") {
    Gf2System sys;
    sys.width = 3;
    sys.add_row(bits(3, {0, 1}), true);
    sys.add_row(bits(3, {1, 2}), true);
    sys.add_row(bits(3, {0, 2}), true);
    auto res = gf2_solve(sys);
    CHECK_FALSE(res.consistent);
    CHECK(verify_certificate(sys, res.certificate));
    CHECK(res.certificate.size() == 3);
}

TEST_CASE("gf2_solve: solvable systems") {
    Gf2System sys;
    sys.width = 2;
    sys.add_row(bits(2, {0, 1}), false);
    auto res = gf2_solve(sys);
    REQUIRE(res.consistent);
    CHECK(res.solution.test(0) == res.solution.test(1));

    Gf2System s2;
    s2.width = 2;
    s2.add_row(bits(2, {0}), true);
    s2.add_row(bits(2, {0, 1}), true);
    auto r2 = gf2_solve(s2);
    REQUIRE(r2.consistent);
    CHECK(r2.solution.test(0));
    CHECK_FALSE(r2.solution.test(1));
}

TEST_CASE("affine_hull: named examples") {
    // even-weight code on three bits
    auto h1 = affine_hull({bits(3, {}), bits(3, {1, 2}), bits(3, {0, 2}), bits(3, {0, 1})}, 3);
    CHECK(h1.exact);
    REQUIRE(h1.system.rows.size() == 1);
    CHECK(h1.system.rows[0] == bits(3, {0, 1, 2}));
    CHECK(h1.system.rhs[0] == 0);

    auto h2 = affine_hull({bits(2, {}), bits(2, {0, 1})}, 2);
    CHECK(h2.exact);
    REQUIRE(h2.system.rows.size() == 1);
    CHECK(h2.system.rhs[0] == 0);

    // closing {000,001,010,100} under triple sums reaches the full space
    auto h3 = affine_hull({bits(3, {}), bits(3, {2}), bits(3, {1}), bits(3, {0})}, 3);
    CHECK_FALSE(h3.exact);
    CHECK(h3.system.rows.empty());
}

TEST_CASE("gf2 randomized verification") {
    Rng rng(99);
    for (int run = 0; run < 200; ++run) {
        int width = 1 + static_cast<int>(rng.below(20));
        Gf2System sys;
        sys.width = width;
        int rows = 1 + static_cast<int>(rng.below(25));
        for (int r = 0; r < rows; ++r) {
            BitVec row(width);
            for (int b = 0; b < width; ++b)
                if (rng.coin()) row.set(b);
            sys.add_row(std::move(row), rng.coin());
        }
        auto res = gf2_solve(sys);
        if (res.consistent) CHECK(verify_solution(sys, res.solution));
        else CHECK(verify_certificate(sys, res.certificate));
    }
}

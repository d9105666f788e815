#include "doctest.h"

#include <algorithm>

#include "sq2/extchart.hpp"
#include "sq2/gradmod.hpp"
#include "support/ext_oracle.hpp"

using namespace sq2;
using namespace sq2::ext;
using gradmod::Algebra;
using gradmod::GradedModule;

namespace {

GradedModule f2() { return gradmod::f2_module(Algebra::A1, 0); }

}  // namespace

TEST_CASE("free modules resolve in one stage") {
    auto stages = minimal_resolution(gradmod::free_module(Algebra::A1, {0}), 5, 20);
    REQUIRE(stages.size() == 6);
    CHECK(stages[0].generator_degrees == std::vector<int>{0});
    for (int s = 1; s <= 5; ++s) CHECK(stages[s].generator_degrees.empty());
}

TEST_CASE("resolving the trivial module") {
    auto stages = minimal_resolution(f2(), 4, 20);
    CHECK(stages[0].generator_degrees == std::vector<int>{0});
    // the augmentation ideal needs one generator each in degrees 1 and 2
    CHECK(stages[1].generator_degrees == std::vector<int>{1, 2});
}

TEST_CASE("trivial module diagonal") {
    auto chart = ext_chart(f2(), 10, 16);
    for (int s = 0; s <= 10; ++s) CHECK(chart.dim(s, s) == 1);
}

TEST_CASE("joker tower") {
    auto chart = ext_chart(gradmod::joker(), 12, 24);
    CHECK(chart.dim(0, 0) == 1);
    // a single infinite tower of dimension 1 in the t-s = 6 column, nothing
    // below its first nonzero filtration
    for (int s = 0; s < 2; ++s) CHECK(chart.dim(s, s + 6) == 0);
    for (int s = 2; s <= 12; ++s) CHECK(chart.dim(s, s + 6) == 1);

    // the independently coded dense resolution agrees on the whole window
    auto dense = ext_oracle::dense_chart(gradmod::joker(), 12, 24);
    for (int s = 0; s <= 12; ++s)
        for (int t = 0; t <= 18; ++t) {
            auto it = dense.find({s, t});
            CHECK(chart.dim(s, t) == (it == dense.end() ? 0 : it->second));
        }
}

TEST_CASE("dense second implementation agrees") {
    for (const auto& m : {f2(), gradmod::tensor(gradmod::joker(), gradmod::joker()),
                          gradmod::direct_sum(f2(), gradmod::shift(gradmod::joker(), -6))}) {
        auto chart = ext_chart(m, 8, 20);
        auto dense = ext_oracle::dense_chart(m, 8, 20);
        int lo = m.empty() ? 0 : m.lo();
        for (int s = 0; s <= 8; ++s)
            for (int t = lo; t <= 14; ++t) {
                auto it = dense.find({s, t});
                CHECK(chart.dim(s, t) == (it == dense.end() ? 0 : it->second));
            }
    }
}

TEST_CASE("free modules contribute only their generators") {
    auto chart = ext_chart(gradmod::free_module(Algebra::A1, {-4, -2, -3}), 6, 14);
    CHECK(chart.dim(0, -4) == 1);
    CHECK(chart.dim(0, -3) == 1);
    CHECK(chart.dim(0, -2) == 1);
    std::size_t total = 0;
    for (const auto& [st, dim] : chart.dims) {
        if (st.first >= 1) CHECK(dim == 0);
        total += dim;
    }
    CHECK(total == 3);
}

TEST_CASE("diagonal examples") {
    // two towers: the h0 tower of F2 from s = 0 and the Joker tower from its
    // starting filtration
    auto both = e2_diagonal(
        gradmod::direct_sum(f2(), gradmod::shift(gradmod::joker(), -6)), 8);
    CHECK(both == std::vector<std::size_t>{1, 1, 2, 2, 2, 2, 2, 2, 2});

    auto free = e2_diagonal(gradmod::free_module(Algebra::A1, {-4}), 5);
    CHECK(free[0] == 0);                       // generator sits at t = -4, not 0
    for (int s = 1; s <= 5; ++s) CHECK(free[s] == 0);

    auto zero = e2_diagonal(gradmod::zero_module(Algebra::A1), 4);
    CHECK(zero == std::vector<std::size_t>(5, 0));
}

TEST_CASE("differentials compose to zero") {
    for (const auto& m : {f2(), gradmod::joker(),
                          gradmod::tensor(gradmod::joker(), gradmod::joker())}) {
        auto stages = minimal_resolution(m, 6, 16);
        for (std::size_t s = 1; s < stages.size(); ++s)
            for (const auto& [d, mat] : stages[s].differential) {
                if (!stages[s - 1].differential.count(d)) continue;
                CHECK(stages[s - 1].differential.at(d).mul(mat).is_zero());
            }
    }
}

TEST_CASE("differentials carry no unit coefficients") {
    for (const auto& m : {f2(), gradmod::joker()}) {
        auto stages = minimal_resolution(m, 8, 20);
        for (std::size_t s = 1; s < stages.size(); ++s) {
            const auto& cur = stages[s].generator_degrees;
            const auto& prev = stages[s - 1].generator_degrees;
            for (std::size_t c = 0; c < cur.size(); ++c) {
                int t = cur[c];
                std::size_t col = ext_oracle::bottom_offset(cur, t, c);
                REQUIRE(col != std::size_t(-1));
                const F2Matrix& mat = stages[s].differential.at(t);
                for (std::size_t c2 = 0; c2 < prev.size(); ++c2) {
                    if (prev[c2] != t) continue;
                    std::size_t off = ext_oracle::bottom_offset(prev, t, c2);
                    CHECK(!mat.get(off, col));
                }
            }
        }
    }
}

TEST_CASE("chart matches the dual-complex computation") {
    // the non-minimal resolution grows fast, so only the low filtrations are
    // checked this way; it confirms that minimal generator counts really are
    // homology dimensions
    for (const auto& m :
         {f2(), gradmod::joker(),
          gradmod::direct_sum(f2(), gradmod::shift(gradmod::joker(), -2))}) {
        auto chart = ext_chart(m, 2, 14);
        auto oracle = ext_oracle::resolve(m, 3, 14);
        int lo = m.empty() ? 0 : m.lo();
        for (int s = 0; s <= 2; ++s)
            for (int t = lo; t <= 8; ++t)
                CHECK(chart.dim(s, t) == ext_oracle::ext_dim(oracle, s, t));
    }
}

TEST_CASE("stage zero counts module generators") {
    auto m = gradmod::tensor(gradmod::joker(), gradmod::joker());
    auto chart = ext_chart(m, 2, 16);
    for (int t = m.lo(); t <= m.hi(); ++t) {
        // dim of M_t modulo Sq1 M_{t-1} + Sq2 M_{t-2}
        F2Matrix images(m.dim(t), m.dim(t - 1) + m.dim(t - 2));
        F2Matrix s1 = m.action(1, t - 1), s2 = m.action(2, t - 2);
        for (std::size_t j = 0; j < m.dim(t - 1); ++j)
            for (std::size_t i = 0; i < m.dim(t); ++i)
                images.set(i, j, s1.get(i, j));
        for (std::size_t j = 0; j < m.dim(t - 2); ++j)
            for (std::size_t i = 0; i < m.dim(t); ++i)
                images.set(i, m.dim(t - 1) + j, s2.get(i, j));
        CHECK(chart.dim(0, t) == m.dim(t) - images.rank());
    }
}

TEST_CASE("charts add over direct sums") {
    auto a = f2();
    auto b = gradmod::joker();
    auto sum = ext_chart(gradmod::direct_sum(a, b), 6, 16);
    auto ca = ext_chart(a, 6, 16);
    auto cb = ext_chart(b, 6, 16);
    for (int s = 0; s <= 6; ++s)
        for (int t = 0; t <= 10; ++t)
            CHECK(sum.dim(s, t) == ca.dim(s, t) + cb.dim(s, t));
}

TEST_CASE("charts shift with the module") {
    auto base = ext_chart(gradmod::joker(), 6, 16);
    auto moved = ext_chart(gradmod::shift(gradmod::joker(), 3), 6, 19);
    for (int s = 0; s <= 6; ++s)
        for (int t = 0; t <= 13; ++t)
            CHECK(moved.dim(s, t) == base.dim(s, t - 3));
}

TEST_CASE("euler characteristic per degree") {
    // exactness forces the alternating sum of the free-module dimensions to
    // equal the resolved module's dimension once every contributing stage is
    // present (stage-s generators sit in degrees >= s)
    auto m = gradmod::joker();
    auto stages = minimal_resolution(m, 12, 24);
    for (int t = 0; t <= 10; ++t) {
        long minimal = 0;
        for (std::size_t s = 0; s < stages.size(); ++s)
            minimal += (s % 2 ? -1 : 1) * long(stages[s].free.dim(t));
        CHECK(minimal == long(m.dim(t)));
    }
}

TEST_CASE("rendering") {
    auto chart = ext_chart(f2(), 3, 10);
    auto tsv = render_chart(chart, "tsv");
    CHECK(tsv.find("2\t2\t1\n") != std::string::npos);
    CHECK(tsv.find("0\t0\t1\n") != std::string::npos);

    auto ascii = render_chart(chart, "ascii");
    std::size_t stars = std::count(ascii.begin(), ascii.end(), '*');
    std::size_t total = 0;
    for (const auto& [st, dim] : chart.dims) total += dim;
    CHECK(stars == total);
    // header plus one row per filtration 0..3
    CHECK(std::count(ascii.begin(), ascii.end(), '\n') == 5);
    // four diagonal classes stack in the t-s = 0 column, one per row
    for (int s = 0; s <= 3; ++s) CHECK(chart.dim(s, s) == 1);

    auto svg = render_chart(chart, "svg");
    CHECK(svg.rfind("<svg", 0) == 0);
    std::size_t circles = 0;
    for (std::size_t pos = svg.find("<circle"); pos != std::string::npos;
         pos = svg.find("<circle", pos + 1))
        ++circles;
    CHECK(circles == total);

    auto empty = render_chart(ext_chart(gradmod::zero_module(Algebra::A1), 3, 10),
                              "ascii");
    CHECK(std::count(empty.begin(), empty.end(), '\n') == 1);

    CHECK_THROWS_AS((void)render_chart(chart, "png"), std::invalid_argument);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "icvistream/geometry.hpp"
#include "oracles.hpp"

using namespace icvistream;

namespace {

RangeState make_range(Vec lo, Vec hi) {
    RangeState r;
    r.x_min = std::move(lo);
    r.x_max = std::move(hi);
    return r;
}

} // namespace

TEST_CASE("observe absorbs bounds componentwise") {
    RangeState r = make_range({0.0}, {1.0});

    Vec interior{0.5};
    CHECK_FALSE(observe(r, interior));
    CHECK(r.x_min[0] == 0.0);
    CHECK(r.x_max[0] == 1.0);

    Vec push{2.0};
    CHECK(observe(r, push));
    CHECK(r.x_max[0] == 2.0);

    RangeState r2 = make_range({0.0, 0.0}, {1.0, 1.0});
    Vec both{-1.0, 3.0};
    CHECK(observe(r2, both));
    CHECK(r2.x_min == Vec{-1.0, 0.0});
    CHECK(r2.x_max == Vec{1.0, 3.0});
}

TEST_CASE("observe rejects dimension mismatch") {
    RangeState r = make_range({0.0}, {1.0});
    Vec bad{1.0, 2.0};
    CHECK_THROWS_AS(observe(r, bad), std::invalid_argument);
}

TEST_CASE("normalize_cc on the identity range") {
    RangeState r = make_range({0.0, 0.0}, {1.0, 1.0});
    Vec x{0.3, 0.7};
    const Vec cc = normalize_cc(r, x);
    const Vec want{0.3, 0.7, 0.7, 0.3};
    REQUIRE(cc.size() == want.size());
    for (std::size_t i = 0; i < cc.size(); ++i) {
        CHECK(cc[i] == doctest::Approx(want[i]).epsilon(1e-12));
    }
}

TEST_CASE("normalize_cc scales and keeps the L1 norm at d") {
    RangeState r = make_range({0.0}, {2.0});
    Vec zero{0.0};
    CHECK(normalize_cc(r, zero) == Vec{0.0, 1.0});

    Vec mid{1.0};
    const Vec cc = normalize_cc(r, mid);
    CHECK(cc == Vec{0.5, 0.5});
    CHECK(cc[0] + cc[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("degenerate feature maps to 0.5") {
    RangeState r = make_range({3.0}, {3.0});
    Vec x{3.0};
    CHECK(normalize_cc(r, x) == Vec{0.5, 0.5});
}

TEST_CASE("rescale_weight matches the hand-computed recursions") {
    const RangeState r01 = make_range({0.0}, {1.0});
    const RangeState r02 = make_range({0.0}, {2.0});
    Vec w{0.4, 0.2};
    CHECK(rescale_weight(r01, r02, w) == Vec{0.2, 0.6});

    // identical ranges: identity
    CHECK(rescale_weight(r01, r01, w) == w);

    // the box [u=0, v=1] over [0,1] maps to [0.5, 1] over [-1,1]:
    // raw endpoint 0 lands at 0.5 and raw endpoint 1 stays at the top,
    // so the complement half stays 0 (checked against the round trip)
    const RangeState rm11 = make_range({-1.0}, {1.0});
    Vec whole{0.0, 0.0};
    const Vec out = rescale_weight(r01, rm11, whole);
    CHECK(out[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(out[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("rescale rejects a shrinking range") {
    const RangeState big = make_range({0.0}, {2.0});
    const RangeState small = make_range({0.0}, {1.0});
    Vec w{0.4, 0.2};
    CHECK_THROWS_AS(rescale_weight(big, small, w), std::invalid_argument);
}

TEST_CASE("round trip: denormalize old then normalize new equals rescale") {
    oracles::TestRng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = 1 + rng.below(6);
        RangeState r_old, r_new;
        for (std::size_t i = 0; i < d; ++i) {
            const double lo = rng.uniform(-5.0, 5.0);
            const double hi = lo + rng.uniform(0.1, 5.0);
            r_old.x_min.push_back(lo);
            r_old.x_max.push_back(hi);
            r_new.x_min.push_back(lo - rng.uniform(0.0, 3.0));
            r_new.x_max.push_back(hi + rng.uniform(0.0, 3.0));
        }
        Vec w(2 * d);
        for (std::size_t i = 0; i < d; ++i) {
            const double u = rng.uniform(0.0, 1.0);
            const double v = rng.uniform(u, 1.0);
            w[i] = u;
            w[d + i] = 1.0 - v;
        }
        const Vec got = rescale_weight(r_old, r_new, w);

        // reference: through the raw domain
        for (std::size_t i = 0; i < d; ++i) {
            const double u_raw = r_old.x_min[i] + w[i] * r_old.span_of(i);
            const double v_raw = r_old.x_min[i] + (1.0 - w[d + i]) * r_old.span_of(i);
            const double u_ref = (u_raw - r_new.x_min[i]) / r_new.span_of(i);
            const double v_ref = (v_raw - r_new.x_min[i]) / r_new.span_of(i);
            CHECK(got[i] == doctest::Approx(u_ref).epsilon(1e-12));
            CHECK(got[d + i] == doctest::Approx(1.0 - v_ref).epsilon(1e-12));
        }
    }
}

TEST_CASE("rescale composition equals the direct map") {
    const RangeState a = make_range({0.0}, {1.0});
    const RangeState b = make_range({0.0}, {2.0});
    const RangeState c = make_range({0.0}, {4.0});
    Vec w{0.4, 0.2};
    const Vec two_hops = rescale_weight(b, c, rescale_weight(a, b, w));
    const Vec direct = rescale_weight(a, c, w);
    for (std::size_t i = 0; i < w.size(); ++i) {
        CHECK(two_hops[i] == doctest::Approx(direct[i]).epsilon(1e-12));
    }
}

TEST_CASE("normalize_cc L1 norm is d for in-range samples") {
    oracles::TestRng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t d = 1 + rng.below(8);
        RangeState r;
        Vec x(d);
        for (std::size_t i = 0; i < d; ++i) {
            const double lo = rng.uniform(-10.0, 10.0);
            const double hi = lo + rng.uniform(0.01, 10.0);
            r.x_min.push_back(lo);
            r.x_max.push_back(hi);
            x[i] = rng.uniform(lo, hi);
        }
        const Vec cc = normalize_cc(r, x);
        double norm = 0.0;
        for (double v : cc) norm += v;
        CHECK(norm == doctest::Approx(static_cast<double>(d)).epsilon(1e-12));
    }
}

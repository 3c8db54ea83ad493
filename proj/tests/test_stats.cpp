#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "icvistream/stats.hpp"
#include "oracles.hpp"

using namespace icvistream;

TEST_CASE("init is a singleton with zero compactness") {
    Vec x{2.0};
    const auto s = stats_init(x);
    CHECK(s.n == 1);
    CHECK(s.mu == Vec{2.0});
    CHECK(s.cp == 0.0);

    Vec o{0.0, 0.0};
    const auto s2 = stats_init(o);
    CHECK(s2.n == 1);
    CHECK(s2.mu == Vec{0.0, 0.0});
    CHECK(s2.cp == 0.0);
}

TEST_CASE("add_sample matches the batch over {0,2} and {0,2,4}") {
    auto s = stats_init(Vec{0.0});
    stats_add(s, Vec{2.0});
    CHECK(s.n == 2);
    CHECK(s.mu[0] == doctest::Approx(1.0));
    CHECK(s.cp == doctest::Approx(2.0));

    stats_add(s, Vec{4.0});
    CHECK(s.n == 3);
    CHECK(s.mu[0] == doctest::Approx(2.0));
    CHECK(s.cp == doctest::Approx(8.0));
}

TEST_CASE("adding the mean leaves compactness unchanged") {
    auto s = stats_init(Vec{0.0});
    stats_add(s, Vec{2.0});
    const double cp_before = s.cp;
    stats_add(s, Vec{1.0}); // == mu
    CHECK(s.cp == doctest::Approx(cp_before));
}

TEST_CASE("merge pools exactly") {
    auto a = stats_init(Vec{0.0});
    stats_add(a, Vec{2.0});
    const auto b = stats_init(Vec{4.0});
    const auto m = stats_merge(a, b);
    CHECK(m.n == 3);
    CHECK(m.mu[0] == doctest::Approx(2.0));
    CHECK(m.cp == doctest::Approx(8.0));

    // singleton merge equals add_sample
    auto via_add = a;
    stats_add(via_add, Vec{4.0});
    CHECK(m.mu[0] == doctest::Approx(via_add.mu[0]).epsilon(1e-9));
    CHECK(m.cp == doctest::Approx(via_add.cp).epsilon(1e-9));

    // symmetric
    const auto m2 = stats_merge(b, a);
    CHECK(m.mu[0] == doctest::Approx(m2.mu[0]).epsilon(1e-9));
    CHECK(m.cp == doctest::Approx(m2.cp).epsilon(1e-9));
}

TEST_CASE("split inverts merge on the worked fixture") {
    ClusterStats whole;
    whole.n = 3;
    whole.mu = {2.0};
    whole.cp = 8.0;
    const auto part = stats_init(Vec{4.0});
    const auto rest = stats_split(whole, part);
    CHECK(rest.n == 2);
    CHECK(rest.mu[0] == doctest::Approx(1.0));
    CHECK(rest.cp == doctest::Approx(2.0));
}

TEST_CASE("removing a point at the mean keeps compactness") {
    auto s = stats_init(Vec{0.0});
    stats_add(s, Vec{2.0});
    stats_add(s, Vec{1.0});
    const auto single = stats_init(Vec{1.0}); // at the mean
    const auto rest = stats_split(s, single);
    CHECK(rest.n == 2);
    CHECK(rest.cp == doctest::Approx(s.cp).epsilon(1e-9));
}

TEST_CASE("split of everything leaves an empty cluster") {
    const auto a = stats_init(Vec{1.0});
    const auto out = stats_split(a, a);
    CHECK(out.empty());
}

TEST_CASE("randomized: incremental matches batch within 1e-6 relative") {
    oracles::TestRng rng(123);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t d = 1 + rng.below(16);
        const std::size_t n = 2 + rng.below(999);
        std::vector<Vec> samples;
        ClusterStats inc;
        for (std::size_t i = 0; i < n; ++i) {
            Vec x(d);
            for (auto& v : x) v = rng.uniform(-100.0, 100.0);
            if (i == 0) inc = stats_init(x);
            else stats_add(inc, x);
            samples.push_back(std::move(x));
        }
        const auto batch = oracles::batch_stats(samples);
        CHECK(inc.n == batch.n);
        for (std::size_t f = 0; f < d; ++f) {
            CHECK(oracles::rel_err(inc.mu[f], batch.mu[f]) < 1e-6);
        }
        CHECK(oracles::rel_err(inc.cp, batch.cp) < 1e-6);
    }
}

TEST_CASE("randomized: split∘merge is the identity") {
    oracles::TestRng rng(321);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = 1 + rng.below(8);
        auto make = [&](std::size_t count) {
            ClusterStats s;
            for (std::size_t i = 0; i < count; ++i) {
                Vec x(d);
                for (auto& v : x) v = rng.uniform(-10.0, 10.0);
                if (i == 0) s = stats_init(x);
                else stats_add(s, x);
            }
            return s;
        };
        const auto a = make(1 + rng.below(50));
        const auto b = make(1 + rng.below(50));
        const auto back = stats_split(stats_merge(a, b), b);
        CHECK(back.n == a.n);
        for (std::size_t f = 0; f < d; ++f) {
            CHECK(oracles::rel_err(back.mu[f], a.mu[f]) < 1e-6);
        }
        CHECK(oracles::rel_err(back.cp, a.cp) < 1e-6);
    }
}

TEST_CASE("randomized: merge associativity within 1e-6 relative") {
    oracles::TestRng rng(555);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t d = 1 + rng.below(4);
        auto make = [&] {
            ClusterStats s;
            const std::size_t count = 1 + rng.below(20);
            for (std::size_t i = 0; i < count; ++i) {
                Vec x(d);
                for (auto& v : x) v = rng.uniform(-10.0, 10.0);
                if (i == 0) s = stats_init(x);
                else stats_add(s, x);
            }
            return s;
        };
        const auto a = make(), b = make(), c = make();
        const auto left = stats_merge(stats_merge(a, b), c);
        const auto right = stats_merge(a, stats_merge(b, c));
        CHECK(left.n == right.n);
        for (std::size_t f = 0; f < d; ++f) {
            CHECK(oracles::rel_err(left.mu[f], right.mu[f]) < 1e-6);
        }
        CHECK(oracles::rel_err(left.cp, right.cp) < 1e-6);
    }
}

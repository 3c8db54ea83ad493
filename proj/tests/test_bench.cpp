#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "icvistream/bench.hpp"
#include "oracles.hpp"

using namespace icvistream;

TEST_CASE("ari basics") {
    const std::vector<int> a{0, 0, 1, 1};
    const std::vector<int> relabeled{1, 1, 0, 0};
    CHECK(adjusted_rand_index(a, relabeled) == doctest::Approx(1.0));

    const std::vector<int> crossed{0, 1, 0, 1};
    CHECK(adjusted_rand_index(a, crossed) == doctest::Approx(-0.5));
    CHECK(adjusted_rand_index(a, crossed) ==
          doctest::Approx(oracles::brute_force_ari(a, crossed)).epsilon(1e-12));

    CHECK(adjusted_rand_index(a, a) == doctest::Approx(1.0));

    std::vector<int> shorter{0, 1};
    CHECK_THROWS_AS(adjusted_rand_index(a, shorter), std::invalid_argument);
    std::vector<int> single_a{0}, single_b{0};
    CHECK_THROWS_AS(adjusted_rand_index(single_a, single_b), std::invalid_argument);
}

TEST_CASE("ari equals the pair-counting oracle on random partitions") {
    oracles::TestRng rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 5 + rng.below(60);
        std::vector<int> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = static_cast<int>(rng.below(4));
            b[i] = static_cast<int>(rng.below(3));
        }
        CHECK(adjusted_rand_index(a, b) ==
              doctest::Approx(oracles::brute_force_ari(a, b)).epsilon(1e-12));
        CHECK(adjusted_rand_index(a, b) ==
              doctest::Approx(adjusted_rand_index(b, a)).epsilon(1e-12));
    }
}

TEST_CASE("accuracy") {
    const std::vector<int> t{1, 2, 3};
    const std::vector<int> good{1, 2, 3};
    const std::vector<int> bad{0, 0, 0};
    CHECK(accuracy(good, t).acc == doctest::Approx(1.0));
    CHECK(accuracy(bad, t).acc == doctest::Approx(0.0));
    CHECK(accuracy(bad, t).n_mis == 3);

    // 10 wrong of 1590
    std::vector<int> truth(1590, 0), pred(1590, 0);
    for (int i = 0; i < 10; ++i) pred[i] = 1;
    CHECK(accuracy(pred, truth).acc == doctest::Approx(1.0 - 10.0 / 1590.0).epsilon(1e-9));
    CHECK(accuracy(pred, truth).n_mis == 10);
}

TEST_CASE("synthetic defaults: size, labels, determinism, means") {
    const auto spec = SyntheticSpec::default7();
    const auto data = gen_synthetic(7, spec);
    CHECK(data.x.size() == 1600);
    CHECK(data.dim == 2);
    CHECK(std::set<int>(data.y.begin(), data.y.end()).size() == 7);

    const auto again = gen_synthetic(7, spec);
    CHECK(data.x == again.x);
    CHECK(data.y == again.y);

    // per-cluster sample means stay within 3 sigma / sqrt(n) of the spec
    for (std::size_t c = 0; c < spec.clusters.size(); ++c) {
        std::vector<Vec> members;
        for (std::size_t i = 0; i < data.x.size(); ++i) {
            if (data.y[i] == static_cast<int>(c)) members.push_back(data.x[i]);
        }
        const auto stats = oracles::batch_stats(members);
        const double bound =
            3.0 * spec.clusters[c].sigma / std::sqrt(static_cast<double>(members.size()));
        for (std::size_t f = 0; f < 2; ++f) {
            CHECK(std::abs(stats.mu[f] - spec.clusters[c].mean[f]) < bound);
        }
    }
}

TEST_CASE("orderings") {
    const auto data = gen_synthetic(3, SyntheticSpec::default7(140));

    SUBCASE("class incremental keeps labels contiguous") {
        const auto s = order_stream(data, Ordering::class_incremental, 1);
        std::set<int> closed;
        int current = s.y.front();
        for (int label : s.y) {
            if (label != current) {
                closed.insert(current);
                CHECK(closed.count(label) == 0); // never re-opened
                current = label;
            }
        }
    }
    SUBCASE("mixed keeps the first two blocks contiguous then shuffles") {
        const auto s = order_stream(data, Ordering::mixed, 1);
        std::size_t i = 0;
        while (i < s.y.size() && s.y[i] == 0) ++i;
        CHECK(i > 0);
        std::size_t j = i;
        while (j < s.y.size() && s.y[j] == 1) ++j;
        CHECK(j > i);
        // everything after j comes from clusters 2..6 only
        for (std::size_t r = j; r < s.y.size(); ++r) CHECK(s.y[r] >= 2);
    }
    SUBCASE("random is a seed-deterministic permutation") {
        const auto s1 = order_stream(data, Ordering::random_order, 5);
        const auto s2 = order_stream(data, Ordering::random_order, 5);
        const auto s3 = order_stream(data, Ordering::random_order, 6);
        CHECK(s1.x == s2.x);
        CHECK(s1.x != s3.x);
        CHECK(s1.x != data.x); // actually permuted

        auto sorted_flat = [](const Dataset& d) {
            std::vector<double> v;
            for (const auto& x : d.x) v.insert(v.end(), x.begin(), x.end());
            std::sort(v.begin(), v.end());
            return v;
        };
        CHECK(sorted_flat(s1) == sorted_flat(data)); // multiset preserved
    }
}

TEST_CASE("evaluate scores a perfect model and never mutates it") {
    // two well separated blobs; iCH engine at defaults finds them
    SyntheticSpec spec;
    spec.clusters = {{{0.0, 0.0}, 0.2, 60}, {{8.0, 8.0}, 0.2, 60}};
    const auto data = order_stream(gen_synthetic(2, spec), Ordering::random_order, 3);

    Config cfg;
    cfg.rho_mt_icvi = 0.9;
    cfg.tau = 5;
    cfg.xi = 40;
    IcviTopoArtMap model(cfg);
    run_stream(model, data.x);

    const auto digest = model.state_digest();
    const auto r = evaluate(model, data);
    CHECK(model.state_digest() == digest);
    CHECK(r.ari == doctest::Approx(1.0));
    CHECK(r.k_hat == 2);

    // constant predictions score 0 against the truth
    std::vector<int> constant(data.y.size(), 0);
    CHECK(adjusted_rand_index(constant, data.y) == doctest::Approx(0.0));
}

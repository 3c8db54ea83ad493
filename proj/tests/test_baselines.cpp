#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "icvistream/baselines.hpp"
#include "oracles.hpp"

using namespace icvistream;

TEST_CASE("skm winner update is the running mean") {
    SequentialKMeans skm(1);
    skm.step(Vec{0.0, 0.0});
    skm.step(Vec{2.0, 2.0});
    CHECK(skm.centroids()[0][0] == doctest::Approx(1.0));
    CHECK(skm.centroids()[0][1] == doctest::Approx(1.0));

    // x on the centroid leaves it unchanged
    skm.step(Vec{1.0, 1.0});
    CHECK(skm.centroids()[0][0] == doctest::Approx(1.0));

    // with k = 1 the centroid is the grand running mean
    SequentialKMeans one(1);
    oracles::TestRng rng(2);
    std::vector<Vec> xs;
    for (int i = 0; i < 50; ++i) {
        xs.push_back(Vec{rng.uniform(-3.0, 3.0)});
        one.step(xs.back());
    }
    const auto batch = oracles::batch_stats(xs);
    CHECK(one.centroids()[0][0] == doctest::Approx(batch.mu[0]).epsilon(1e-9));
}

TEST_CASE("skm centroids replay as per-cluster means (exact replay oracle)") {
    SequentialKMeans skm(3);
    oracles::TestRng rng(55);
    std::vector<Vec> xs;
    for (int i = 0; i < 200; ++i) {
        Vec x{rng.uniform(0.0, 1.0) + (i % 3) * 5.0};
        skm.step(x);
        xs.push_back(x);
    }

    // independent reimplementation: buffer 48, farthest-first seeds,
    // replay, then online winner updates; each centroid must be the
    // exact mean of its seed plus every sample it won
    const std::size_t B = 48;
    std::vector<std::size_t> seeds{0};
    std::vector<double> dist(B, std::numeric_limits<double>::infinity());
    while (seeds.size() < 3) {
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < B; ++i) {
            dist[i] = std::min(dist[i], oracles::sq_dist(xs[i], xs[seeds.back()]));
            if (dist[i] > far_d) {
                far_d = dist[i];
                far = i;
            }
        }
        seeds.push_back(far);
    }
    std::vector<std::vector<Vec>> bucket(3);
    std::vector<Vec> cent(3);
    for (std::size_t c = 0; c < 3; ++c) {
        bucket[c].push_back(xs[seeds[c]]);
        cent[c] = xs[seeds[c]];
    }
    auto feed = [&](const Vec& x) {
        std::size_t w = 0;
        double bd = oracles::sq_dist(x, cent[0]);
        for (std::size_t c = 1; c < 3; ++c) {
            const double d = oracles::sq_dist(x, cent[c]);
            if (d < bd) {
                bd = d;
                w = c;
            }
        }
        bucket[w].push_back(x);
        cent[w] = oracles::batch_stats(bucket[w]).mu;
    };
    std::vector<bool> is_seed(B, false);
    for (std::size_t s : seeds) is_seed[s] = true;
    for (std::size_t i = 0; i < B; ++i) {
        if (!is_seed[i]) feed(xs[i]);
    }
    for (std::size_t i = B; i < xs.size(); ++i) feed(xs[i]);

    for (std::size_t c = 0; c < 3; ++c) {
        CHECK(skm.centroids()[c][0] == doctest::Approx(cent[c][0]).epsilon(1e-9));
        CHECK(skm.counts()[c] == static_cast<long long>(bucket[c].size()));
    }
}

TEST_CASE("ws_dvfa three-way routing") {
    SUBCASE("equal vigilances behave like plain fuzzy ART") {
        WsDualVigilanceArt dvfa(0.8, 0.8);
        dvfa.step(Vec{0.0});
        dvfa.step(Vec{10.0});
        CHECK(dvfa.categories() == dvfa.clusters());
    }
    SUBCASE("far sample opens a new cluster") {
        WsDualVigilanceArt dvfa(0.9, 0.85);
        dvfa.step(Vec{0.0, 0.0});
        dvfa.step(Vec{1.0, 1.0});
        const std::size_t k_before = dvfa.clusters();
        dvfa.step(Vec{100.0, 100.0});
        CHECK(dvfa.clusters() == k_before + 1);
    }
    SUBCASE("near sample failing only the upper vigilance joins the cluster") {
        // d=1 over range [0,10]: category at 0.0 is a point box after
        // rescale; x=0.5 has match 1 - 0.05 = 0.95
        WsDualVigilanceArt dvfa(0.98, 0.9);
        dvfa.step(Vec{0.0});
        dvfa.step(Vec{10.0});
        const std::size_t cats = dvfa.categories();
        const std::size_t k = dvfa.clusters();
        const std::size_t assigned = dvfa.step(Vec{0.5});
        CHECK(dvfa.categories() == cats + 1); // new category
        CHECK(dvfa.clusters() == k);          // same cluster set
        CHECK(assigned == 0);                 // joined the first cluster
    }
}

TEST_CASE("ws_topofa components and pruning") {
    ArtParams p;
    p.rho = 0.0;
    WsTopoFuzzyArt topofa(p, 0, 0); // no pruning
    topofa.step(Vec{0.0});
    topofa.step(Vec{0.05});
    topofa.step(Vec{10.0});
    // the two nearby categories share CONN; the far one is isolated
    const auto comp = topofa.components();
    REQUIRE(comp.size() >= 2);

    SUBCASE("linked categories share a component") {
        WsTopoFuzzyArt t2(p, 0, 0);
        t2.step(Vec{0.0});
        t2.step(Vec{1.0});
        t2.step(Vec{0.5}); // resonates with one, links to the other
        if (t2.art().conn().total() > 0) {
            const auto c = t2.components();
            bool linked = false;
            for (std::size_t i = 0; i < c.size() && !linked; ++i) {
                for (std::size_t j = i + 1; j < c.size(); ++j) {
                    if (c[i] == c[j]) {
                        linked = true;
                        break;
                    }
                }
            }
            CHECK(linked);
        }
    }

    SUBCASE("graph oracle: component count equals a BFS over CONN > 0") {
        ArtParams tight;
        tight.rho = 0.3;
        WsTopoFuzzyArt t3(tight, 0, 0);
        oracles::TestRng rng(14);
        for (int i = 0; i < 150; ++i) {
            t3.step(Vec{rng.uniform(0.0, 4.0), rng.uniform(0.0, 4.0)});
        }
        // independent component count
        const std::size_t pn = t3.categories();
        std::vector<int> seen(pn, 0);
        std::size_t comps = 0;
        for (std::size_t s = 0; s < pn; ++s) {
            if (seen[s]) continue;
            ++comps;
            std::vector<std::size_t> q{s};
            seen[s] = 1;
            while (!q.empty()) {
                auto u = q.back();
                q.pop_back();
                for (std::size_t v = 0; v < pn; ++v) {
                    if (!seen[v] && t3.art().conn().at(u, v) > 0) {
                        seen[v] = 1;
                        q.push_back(v);
                    }
                }
            }
        }
        CHECK(t3.clusters() == comps);
    }

    SUBCASE("pruning deletes small categories on the cadence") {
        ArtParams tight;
        tight.rho = 0.95;
        WsTopoFuzzyArt t4(tight, 4, 2); // every 4 samples drop n < 2
        t4.step(Vec{0.0});
        t4.step(Vec{5.0});
        t4.step(Vec{9.0});
        CHECK(t4.categories() == 3);
        t4.step(Vec{0.01}); // t = 4: prune fires; lone categories vanish
        CHECK(t4.categories() < 3);
    }
}

TEST_CASE("nn classifier") {
    const std::vector<Vec> protos = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    const std::vector<int> labels = {7, 8, 9};

    CHECK(nn_classify(protos, labels, NnMetric::euclidean, Vec{1.0, 0.0}) == 8);
    // equidistant tie goes to the lowest index
    CHECK(nn_classify(protos, labels, NnMetric::euclidean, Vec{0.5, 0.0}) == 7);
    // cosine is scale invariant
    CHECK(nn_classify(protos, labels, NnMetric::cosine, Vec{0.1, 0.9}) ==
          nn_classify(protos, labels, NnMetric::cosine, Vec{0.3, 2.7}));
}

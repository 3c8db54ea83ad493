#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "icvistream/icvi.hpp"
#include "oracles.hpp"

using namespace icvistream;

namespace {

// shared fixture: cluster A = {0, 2}, cluster B = {4, 6}, d = 1
IcviState make_fixture(IcviKind kind) {
    IcviState s(kind);
    s.commit({Vec{0.0}, 0, 0, true, std::nullopt, nullptr});
    s.commit({Vec{2.0}, 0, 0, false, std::nullopt, nullptr});
    s.commit({Vec{4.0}, 1, 1, true, std::nullopt, nullptr});
    s.commit({Vec{6.0}, 1, 1, false, std::nullopt, nullptr});
    return s;
}

bool states_equal(const IcviState& a, const IcviState& b) {
    if (a.cluster_count() != b.cluster_count()) return false;
    for (std::size_t i = 0; i < a.cluster_count(); ++i) {
        if (a.clusters()[i].n != b.clusters()[i].n) return false;
        if (a.clusters()[i].mu != b.clusters()[i].mu) return false;
        if (a.clusters()[i].cp != b.clusters()[i].cp) return false;
    }
    if (a.grand().n != b.grand().n || a.grand().mu != b.grand().mu ||
        a.grand().cp != b.grand().cp) {
        return false;
    }
    return a.value() == b.value() && a.tracker() == b.tracker();
}

} // namespace

TEST_CASE("fixture values for the five SS indices") {
    CHECK(*make_fixture(IcviKind::ch).value() == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(*make_fixture(IcviKind::wb).value() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(*make_fixture(IcviKind::xb).value() == doctest::Approx(0.0625).epsilon(1e-12));
    CHECK(*make_fixture(IcviKind::db).value() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(*make_fixture(IcviKind::pbm).value() == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("value is undefined below two clusters") {
    IcviState s(IcviKind::ch);
    s.commit({Vec{1.0}, 0, 0, true, std::nullopt, nullptr});
    CHECK_FALSE(s.value());
    s.commit({Vec{2.0}, 0, 0, false, std::nullopt, nullptr});
    CHECK_FALSE(s.value());
    s.commit({Vec{9.0}, 1, 1, true, std::nullopt, nullptr});
    CHECK(s.value());
}

TEST_CASE("conn_index worked fixture") {
    ConnMatrix conn(3);
    conn.link(0, 1);
    conn.link(0, 1);
    conn.link(0, 1);
    conn.link(0, 1); // CONN(0,1) = 4
    conn.link(1, 2); // CONN(1,2) = 1
    const std::vector<std::size_t> mapping{0, 0, 1};
    const auto v = icvi_evaluate_conn(conn, mapping, 2);
    REQUIRE(v);
    CHECK(*v == doctest::Approx((4.0 / 9.0) * (1.0 - 0.6)).epsilon(1e-9));
    // agrees with the independent batch definition
    const auto ref = oracles::batch_conn_index(conn, mapping, 2);
    CHECK(*v == doctest::Approx(*ref).epsilon(1e-9));
}

TEST_CASE("score_assignments prefers the nearer cluster and leaves state untouched") {
    const auto s = make_fixture(IcviKind::ch);
    const IcviState before = s;
    TopoFuzzyArt art{ArtParams{}};
    MapField mf{MapFieldParams{}};

    const auto scores = s.score_assignments(Vec{1.9}, art, mf, 0.0, 0.0);
    REQUIRE(scores.size() == 2);
    CHECK(scores[0] > scores[1]); // 1.9 belongs with {0, 2}
    CHECK(states_equal(s, before));

    // batch cross-check of both hypothetical partitions
    const auto a = oracles::batch_ss_index(
        IcviKind::ch, {{Vec{0.0}, Vec{2.0}, Vec{1.9}}, {Vec{4.0}, Vec{6.0}}});
    const auto b = oracles::batch_ss_index(
        IcviKind::ch, {{Vec{0.0}, Vec{2.0}}, {Vec{4.0}, Vec{6.0}, Vec{1.9}}});
    CHECK(scores[0] == doctest::Approx(*a).epsilon(1e-9));
    CHECK(scores[1] == doctest::Approx(*b).epsilon(1e-9));
}

TEST_CASE("symmetric midpoint scores equally") {
    const auto s = make_fixture(IcviKind::ch);
    TopoFuzzyArt art{ArtParams{}};
    MapField mf{MapFieldParams{}};
    const auto scores = s.score_assignments(Vec{3.0}, art, mf, 0.0, 0.0);
    CHECK(scores[0] == doctest::Approx(scores[1]).epsilon(1e-12));
}

TEST_CASE("min-optimal scores are negated so argmax applies") {
    const auto s = make_fixture(IcviKind::xb);
    TopoFuzzyArt art{ArtParams{}};
    MapField mf{MapFieldParams{}};
    const auto scores = s.score_assignments(Vec{1.9}, art, mf, 0.0, 0.0);
    CHECK(scores[0] < 0.0); // negated raw values
    CHECK(scores[0] > scores[1]);

    const auto raw_a = oracles::batch_ss_index(
        IcviKind::xb, {{Vec{0.0}, Vec{2.0}, Vec{1.9}}, {Vec{4.0}, Vec{6.0}}});
    CHECK(-scores[0] == doctest::Approx(*raw_a).epsilon(1e-9));
}

TEST_CASE("label matrix covers the argmax set in cluster order") {
    const auto rows = IcviState::label_matrix(std::vector<double>{0.5, 0.9, 0.9});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == Vec{0.0, 1.0, 0.0});
    CHECK(rows[1] == Vec{0.0, 0.0, 1.0});

    const auto unique = IcviState::label_matrix(std::vector<double>{0.1, 0.9});
    REQUIRE(unique.size() == 1);
    CHECK(unique[0] == Vec{0.0, 1.0});

    const auto all = IcviState::label_matrix(std::vector<double>{0.4, 0.4, 0.4});
    CHECK(all.size() == 3);
}

TEST_CASE("commit then value equals the chosen score") {
    auto s = make_fixture(IcviKind::ch);
    TopoFuzzyArt art{ArtParams{}};
    MapField mf{MapFieldParams{}};
    const auto scores = s.score_assignments(Vec{1.9}, art, mf, 0.0, 0.0);
    s.commit({Vec{1.9}, 0, 0, false, std::nullopt, nullptr});
    CHECK(*s.value() == doctest::Approx(scores[0]).epsilon(1e-9));
}

TEST_CASE("commit to a new singleton cluster grows k") {
    auto s = make_fixture(IcviKind::ch);
    s.commit({Vec{9.0}, 2, 2, true, std::nullopt, nullptr});
    CHECK(s.cluster_count() == 3);
    CHECK(s.grand().n == 5);
}

TEST_CASE("iCVI match tracking follows the two equations") {
    IcviState s(IcviKind::ch);
    // v = 0 < tau: reset to baseline
    CHECK(s.match_tracking(0.5, 0.1, MatchKind::fuzzy, 0.2, 0.9, 3) == doctest::Approx(0.1));

    // drive the tracker to 3 (worsening max-optimal values)
    s.tracker_update(5.0, 4.0);
    s.tracker_update(5.0, 4.0);
    s.tracker_update(5.0, 4.0);
    CHECK(s.tracker() == 3);

    // instantaneous jump with eps = rho_MT - rho_a
    CHECK(s.match_tracking(0.0, 0.0, MatchKind::fuzzy, 0.9, 0.9, 3) == doctest::Approx(0.9));
    // cosine: move down toward rho_MT
    CHECK(s.match_tracking(2.0, 2.0, MatchKind::cosine, 1.9, 0.1, 3) == doctest::Approx(0.1));
}

TEST_CASE("tracker update is direction aware and clamped") {
    IcviState max_opt(IcviKind::ch);
    max_opt.tracker_update(5.0, 4.0); // worse
    CHECK(max_opt.tracker() == 1);
    max_opt.tracker_update(4.0, 6.0); // better
    CHECK(max_opt.tracker() == 0);
    max_opt.tracker_update(4.0, 6.0); // clamp at 0
    CHECK(max_opt.tracker() == 0);

    IcviState min_opt(IcviKind::xb);
    min_opt.tracker_update(5.0, 4.0); // better for min-optimal
    CHECK(min_opt.tracker() == 0);
    min_opt.tracker_update(4.0, 5.0);
    CHECK(min_opt.tracker() == 1);
}

TEST_CASE("restructure: merge edit matches the batch and can undefine the value") {
    auto s = make_fixture(IcviKind::ch);
    const auto merged = stats_merge(s.clusters()[0], s.clusters()[1]);
    s.reset_partition({merged}, {}, {}, nullptr);
    CHECK(s.cluster_count() == 1);
    CHECK_FALSE(s.value()); // k = 1

    // swap edit equals split-then-merge on the stats
    auto s2 = make_fixture(IcviKind::wb);
    const auto part = stats_init(Vec{2.0});
    const auto from = stats_split(s2.clusters()[0], part);
    const auto to = stats_merge(s2.clusters()[1], part);
    s2.reset_partition({from, to}, {}, {}, nullptr);
    const auto batch = oracles::batch_ss_index(IcviKind::wb, {{Vec{0.0}}, {Vec{4.0}, Vec{6.0}, Vec{2.0}}});
    CHECK(*s2.value() == doctest::Approx(*batch).epsilon(1e-6));
}

TEST_CASE("conn_index scoring trains throwaway copies only") {
    // a tiny two-cluster network; scoring must not move module A, the
    // map field, or the state itself
    TopoFuzzyArt art{ArtParams{}};
    art.observe(Vec{0.0});
    art.observe(Vec{10.0});
    auto enc = [&](double v) { return art.encode(Vec{v}); };
    art.create_category(enc(0.0), Vec{0.0});
    art.create_category(enc(10.0), Vec{10.0});
    {
        ConnMatrix conn(2);
        art.adopt(art.categories(), conn);
    }
    MapField mf{MapFieldParams{}};
    mf.adopt_rows({MapField::one_hot(2, 0), MapField::one_hot(2, 1)}, 2);

    IcviState s(IcviKind::conn);
    s.commit({Vec{0.0}, 0, 0, true, std::nullopt, &art.conn()});
    s.commit({Vec{10.0}, 1, 1, true, std::nullopt, &art.conn()});

    const IcviState before_state = s;
    const std::size_t p_before = art.size();
    const long long conn_before = art.conn().total();
    const Vec row0 = mf.row(0);

    const auto scores = s.score_assignments(Vec{0.2}, art, mf, 0.0, 0.0);
    REQUIRE(scores.size() == 2);
    CHECK(art.size() == p_before);
    CHECK(art.conn().total() == conn_before);
    CHECK(mf.row(0) == row0);
    CHECK(states_equal(s, before_state));
    CHECK(s.proto_clusters() == before_state.proto_clusters());
}

TEST_CASE("every SS index tracks its batch oracle over a random commit stream") {
    for (IcviKind kind : {IcviKind::ch, IcviKind::wb, IcviKind::pbm, IcviKind::xb, IcviKind::db}) {
        oracles::TestRng rng(1000 + static_cast<int>(kind));
        IcviState s(kind);
        std::vector<std::vector<Vec>> shadow;
        const std::size_t d = 2;
        for (int t = 0; t < 300; ++t) {
            Vec x{rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)};
            std::size_t c;
            if (shadow.size() < 4 && rng.below(10) == 0) {
                c = shadow.size();
            } else if (shadow.empty()) {
                c = 0;
            } else {
                c = rng.below(shadow.size());
            }
            if (c == shadow.size()) shadow.emplace_back();
            shadow[c].push_back(x);
            s.commit({x, c, 0, c + 1 == shadow.size() && shadow[c].size() == 1, std::nullopt,
                      nullptr});
            const auto batch = oracles::batch_ss_index(kind, shadow);
            if (batch) {
                REQUIRE(s.value());
                CHECK(oracles::rel_err(*s.value(), *batch) < 1e-6);
            } else {
                CHECK_FALSE(s.value());
            }
        }
        (void)d;
    }
}

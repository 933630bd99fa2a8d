#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "sawlab/enumerate.hpp"
#include "sawlab/surgery.hpp"
#include "sawlab/walk.hpp"
#include "sawlab/widepoly.hpp"

using namespace sawlab;

namespace {

// ---------------------------------------------------------------------------
// Contract audit: the eight structural clauses a conformant join must obey,
// each checked directly on the output (independent of how the splice was
// chosen internally).
// ---------------------------------------------------------------------------

std::set<Pt> vertex_set(const std::vector<Pt>& v) { return {v.begin(), v.end()}; }

void check_join_contract(const Walk& gamma, const PlacedPoly& poly,
                         const JoinResult& jr, bool with_unjoin) {
    const size_t n = gamma.length();
    const size_t m = poly.length();
    const Walk& w = jr.joined;
    PlacedPoly pi = poly.translated(Pt{jr.translate, 0});
    PlaquetteEdges J(jr.junction);

    // (1) Bridge status and endpoints are preserved; length is n + m + 16.
    CHECK(w.length() == n + m + 16);
    CHECK(w.points().front() == gamma.points().front());
    CHECK(w.points().back() == gamma.points().back());
    CHECK(w.self_avoiding());
    if (gamma.is_bridge())
        CHECK(w.is_bridge());
    else
        CHECK(w.is_reflected_bridge());

    // (2) Endpoints of the junction's right vertical edge lie on the walk at
    // chemical distance m + 7.
    const auto& pts = w.points();
    size_t i1 = pts.size(), i2 = pts.size();
    for (size_t i = 0; i < pts.size(); ++i) {
        if (pts[i] == J.right.a) i1 = i;
        if (pts[i] == J.right.b) i2 = i;
    }
    REQUIRE(i1 < pts.size());
    REQUIRE(i2 < pts.size());
    CHECK((i1 > i2 ? i1 - i2 : i2 - i1) == m + 7);

    // (3) Swapping the junction plaquette splits the walk into a walk and a
    // polygon, and no right translate of the polygon meets the walk part.
    std::set<Edge> es;
    for (const Edge& e : w.edges()) es.insert(e);
    REQUIRE(es.count(J.top));
    REQUIRE(es.count(J.bottom));
    CHECK(!es.count(J.left));
    CHECK(!es.count(J.right));
    std::set<Edge> swapped = es;
    swapped.erase(J.top);
    swapped.erase(J.bottom);
    swapped.insert(J.left);
    swapped.insert(J.right);
    EdgeComponents comps = split_components(swapped);
    REQUIRE(comps.simple);
    REQUIRE(comps.paths.size() == 1);
    REQUIRE(comps.cycles.size() == 1);
    {
        auto rset = vertex_set(comps.paths.front());
        const auto& q = comps.cycles.front();
        int64_t rx_max = comps.paths.front().front().x;
        int64_t qx_min = q.front().x;
        for (Pt p : comps.paths.front()) rx_max = std::max(rx_max, p.x);
        for (Pt p : q) qx_min = std::min(qx_min, p.x);
        for (int64_t t = 0; t <= rx_max - qx_min + 1; ++t)
            for (Pt p : q) CHECK(!rset.count(Pt{p.x + t, p.y}));
    }

    // (5) The right-side of the translated polygon survives into the output.
    {
        Walk cyc = cycle_walk_ccw(pi.edges, pi.vertices().front());
        std::vector<Pt> cv(cyc.points().begin(), cyc.points().end() - 1);
        auto better = [](Pt a, Pt b, bool low) {
            if (a.y != b.y) return low ? a.y < b.y : a.y > b.y;
            return a.x > b.x;
        };
        size_t se = 0, ne = 0;
        for (size_t i = 1; i < cv.size(); ++i) {
            if (better(cv[i], cv[se], true)) se = i;
            if (better(cv[i], cv[ne], false)) ne = i;
        }
        auto wset = vertex_set(w.points());
        for (size_t i = se;; i = (i + 1) % cv.size()) {
            CHECK(wset.count(cv[i]));
            if (i == ne) break;
        }
    }

    // (6) At most two edges of the original walk are removed.
    {
        std::set<Edge> ges;
        for (const Edge& e : gamma.edges()) ges.insert(e);
        size_t missing = 0;
        for (const Edge& e : ges)
            if (!es.count(e)) ++missing;
        CHECK(missing <= 2);
    }

    // (7) The output is an initial subwalk of gamma, a middle section of
    // length m + 17 or m + 18, and a final subwalk of gamma.
    {
        const auto& g = gamma.points();
        size_t a = 0;
        while (a < g.size() && a < pts.size() && g[a] == pts[a]) ++a;
        size_t b = 0;
        while (b < g.size() && b < pts.size() &&
               g[g.size() - 1 - b] == pts[pts.size() - 1 - b])
            ++b;
        REQUIRE(a >= 1);
        REQUIRE(b >= 1);
        size_t middle = w.length() - (a - 1) - (b - 1);
        CHECK((middle == m + 17 || middle == m + 18));
    }

    // Error set: a bounded number of edges differ between the output and the
    // union of the walk with the translated polygon.  The bound is 16 + 2r
    // where r <= 4 edges are removed across the two splices.
    CHECK(jr.removed_edges.size() + jr.added_edges.size() <= 24);

    // (8) The decoder returns at most four candidate preimages, including the
    // true one.
    if (with_unjoin) {
        auto cands = unjoin(w, jr.junction);
        CHECK(cands.size() <= 4);
        bool found = false;
        for (const auto& [g0, p0] : cands)
            if (g0.points() == gamma.points() && p0 == pi) found = true;
        CHECK(found);
    }
}

Walk straight_bridge(int64_t h) {
    std::vector<Pt> pts;
    for (int64_t y = 0; y <= h; ++y) pts.push_back(Pt{0, y});
    return Walk(pts);
}

PlacedPoly reflect_poly_vertical(const PlacedPoly& p) {
    std::vector<Edge> es;
    for (const Edge& e : p.edges)
        es.push_back(Edge(Pt{e.a.x, -e.a.y}, Pt{e.b.x, -e.b.y}));
    return PlacedPoly::from_edges(std::move(es));
}

// Seeded random bridge with at least the requested height.
Walk random_bridge(std::mt19937& rng, int len, int64_t min_height) {
    std::uniform_int_distribution<int> pick(0, 8);
    for (;;) {
        std::vector<Pt> pts{Pt{0, 0}};
        std::set<Pt> seen{Pt{0, 0}};
        bool stuck = false;
        for (int i = 0; i < len && !stuck; ++i) {
            // Weighted step choice, drifting north: N x4, E x2, W x2, S x1.
            static const Pt moves[9] = {{0, 1}, {0, 1}, {0, 1}, {0, 1}, {1, 0},
                                        {1, 0}, {-1, 0}, {-1, 0}, {0, -1}};
            bool placed = false;
            for (int tries = 0; tries < 12 && !placed; ++tries) {
                Pt d = moves[pick(rng)];
                Pt nxt{pts.back().x + d.x, pts.back().y + d.y};
                if (seen.count(nxt)) continue;
                pts.push_back(nxt);
                seen.insert(nxt);
                placed = true;
            }
            if (!placed) stuck = true;
        }
        if (stuck) continue;
        Walk w(pts);
        if (w.is_bridge() && w.y_max() - w.y_min() >= min_height) return w;
    }
}

std::vector<PolygonTrace> trace_pool(std::initializer_list<int> lengths) {
    std::vector<PolygonTrace> pool;
    for (int L : lengths)
        for (const PolygonTrace& t : sap_traces_z2(L)) pool.push_back(t);
    return pool;
}

}  // namespace

TEST_CASE("madras join on the straight-bridge fixture satisfies the contract") {
    Walk gamma = straight_bridge(20);
    PolygonTrace plq = *sap_traces_z2(4).begin();
    JoinResult jr = mj_at_height(gamma, plq, 10);
    PlacedPoly placed =
        PlacedPoly::from_edges(root_wide(plq).edges()).translated(Pt{0, 10});
    check_join_contract(gamma, placed, jr, true);
    CHECK(jr.joined.length() == 20 + 4 + 16);
    // Output height equals the input height.
    CHECK(jr.joined.y_max() - jr.joined.y_min() == 20);
}

TEST_CASE("mj height range emptiness and out-of-range rejection") {
    Walk gamma = straight_bridge(7);
    PolygonTrace plq = *sap_traces_z2(4).begin();
    auto [lo, hi] = mj_height_range(gamma, plq);
    CHECK(lo > hi);  // height 7 < 2h + 6 = 8: no admissible translate
    CHECK_THROWS_AS(mj_at_height(gamma, plq, 4), std::invalid_argument);
    Walk tall = straight_bridge(8);
    auto [lo2, hi2] = mj_height_range(tall, plq);
    CHECK(lo2 == 4);
    CHECK(hi2 == 4);
}

TEST_CASE("exhaustive contract sweep over short bridges and small polygons") {
    std::vector<Walk> bridges;
    for_each_sab_z2(10, [&](const Walk& w) { bridges.push_back(w); });
    auto pool = trace_pool({4, 6});
    size_t joins = 0;
    for (const Walk& g : bridges)
        for (const PolygonTrace& p : pool) {
            auto [lo, hi] = mj_height_range(g, p);
            for (int64_t j = lo; j <= hi; ++j) {
                JoinResult jr = mj_at_height(g, p, j);
                PlacedPoly placed =
                    PlacedPoly::from_edges(root_wide(p).edges()).translated(Pt{0, j});
                check_join_contract(g, placed, jr, true);
                ++joins;

                // Reflected-bridge variant (the lemma's final sentence): the
                // same contract holds after vertical reflection of all data.
                Walk rg = g.reflect_vertical();
                PlacedPoly rp = reflect_poly_vertical(placed);
                JoinResult rjr = madras_join(rg, rp);
                check_join_contract(rg, rp, rjr, true);
            }
        }
    CHECK(joins > 0);
    MESSAGE("exhaustive sweep performed ", joins, " joins");
}

TEST_CASE("randomized contract corpus at larger sizes") {
    std::mt19937 rng(20260826);
    auto pool = trace_pool({4, 6, 8});
    const int kCases = 10000;
    for (int c = 0; c < kCases; ++c) {
        const PolygonTrace& p = pool[rng() % pool.size()];
        int64_t h = p.geometry().h;
        Walk g = random_bridge(rng, 24, 2 * h + 7);
        auto [lo, hi] = mj_height_range(g, p);
        REQUIRE(lo <= hi);
        int64_t j = lo + static_cast<int64_t>(rng() % (hi - lo + 1));
        JoinResult jr = mj_at_height(g, p, j);
        PlacedPoly placed =
            PlacedPoly::from_edges(root_wide(p).edges()).translated(Pt{0, j});
        check_join_contract(g, placed, jr, c % 20 == 0);
    }
}

TEST_CASE("clause 4: vertically separated joins commute") {
    std::mt19937 rng(4242);
    auto pool = trace_pool({4, 6});
    for (int c = 0; c < 200; ++c) {
        const PolygonTrace& p = pool[rng() % pool.size()];
        const PolygonTrace& q = pool[rng() % pool.size()];
        int64_t hp = p.geometry().h, hq = q.geometry().h;
        Walk g = random_bridge(rng, 40, 2 * (hp + hq) + 16);
        int64_t j1 = g.y_min() + hp + 3;
        int64_t j2 = j1 + hp + hq + 5;  // padded vertical spans are disjoint
        if (j2 > g.y_max() - hq - 3) continue;
        Walk a = mj_at_height(mj_at_height(g, p, j1).joined, q, j2).joined;
        Walk b = mj_at_height(mj_at_height(g, q, j2).joined, p, j1).joined;
        CHECK(a.points() == b.points());
    }
}

TEST_CASE("right-detachable adjacencies: straight walk and post-join walk") {
    CHECK(find_right_detachable(straight_bridge(10)).empty());

    Walk gamma = straight_bridge(20);
    PolygonTrace plq = *sap_traces_z2(4).begin();
    JoinResult jr = mj_at_height(gamma, plq, 10);
    PlaquetteEdges J(jr.junction);
    const auto& pts = jr.joined.points();
    size_t i1 = 0, i2 = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        if (pts[i] == J.right.a) i1 = i;
        if (pts[i] == J.right.b) i2 = i;
    }
    AdjacencyPair expect{std::min(i1, i2), std::max(i1, i2)};
    auto adj = find_right_detachable(jr.joined);
    bool found = false;
    for (const auto& a : adj)
        if (a == expect) found = true;
    CHECK(found);
    CHECK(expect.gap() == 4 + 7);
}

TEST_CASE("gap separation for equal-gap right-detachable adjacencies") {
    // Over all self-avoiding walks of length <= 12 whose minimal height is
    // attained at the start and maximal height at the end, two adjacencies of
    // equal gap h have higher indices separated by at least h.
    size_t walks = 0, with_pairs = 0;
    for_each_saw_z2(12, [&](const Walk& w) {
        if (w.length() == 0) return;
        const auto& pts = w.points();
        if (pts.front().y != w.y_min() || pts.back().y != w.y_max()) return;
        ++walks;
        auto adj = find_right_detachable(w);
        if (adj.size() < 2) return;
        ++with_pairs;
        for (size_t i = 0; i < adj.size(); ++i)
            for (size_t j = i + 1; j < adj.size(); ++j) {
                if (adj[i].gap() != adj[j].gap()) continue;
                size_t d = adj[i].k > adj[j].k ? adj[i].k - adj[j].k
                                               : adj[j].k - adj[i].k;
                CHECK(d >= adj[i].gap());
            }
    });
    CHECK(walks > 0);
    MESSAGE("checked ", walks, " admissible walks, ", with_pairs,
            " with multiple adjacencies");
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <sawlab/hexsurgery.hpp>
#include <sawlab/widepoly.hpp>

using namespace sawlab;

namespace {

// Deterministic tall bridge: greedily step to the highest adjacent midpoint.
HexWalk climb(HexMid start, int len) {
    std::vector<HexMid> ms{start};
    for (int i = 0; i < len; ++i) {
        HexMid best;
        int64_t by = std::numeric_limits<int64_t>::min();
        for (auto [m, v] : hex_adjacent_mids(ms.back())) {
            if (ms.size() >= 2 && m == ms[ms.size() - 2]) continue;
            if (m.my() > by) {
                by = m.my();
                best = m;
            }
        }
        ms.push_back(best);
    }
    return HexWalk(std::move(ms));
}

HexWalk random_hex_bridge(std::mt19937& rng, int len, int64_t min_span) {
    for (;;) {
        std::vector<HexMid> ms{hex_origin_mid()};
        for (int i = 0; i < len; ++i) {
            std::vector<HexMid> opts;
            for (auto [m, v] : hex_adjacent_mids(ms.back())) {
                if (ms.size() >= 2 && m == ms[ms.size() - 2]) continue;
                int64_t dy = m.my() - ms.back().my();
                int w = dy > 0 ? 4 : (dy == 0 ? 2 : 1);
                for (int k = 0; k < w; ++k) opts.push_back(m);
            }
            ms.push_back(opts[std::uniform_int_distribution<size_t>(0, opts.size() - 1)(rng)]);
        }
        HexWalk w(std::move(ms));
        if (w.is_bridge() && w.y_max() - w.y_min() >= min_span) return w;
    }
}

void check_hex_contract(const HexWalk& gamma, const HexPolygon& poly,
                        const HexJoinResult& jr, bool with_unjoin) {
    const HexWalk& w = jr.joined;
    CHECK(w.length() == gamma.length() + poly.size() + 18);
    CHECK(w.front() == gamma.front());
    CHECK(w.back() == gamma.back());
    CHECK(w.is_bridge());

    // The junction hexagon f3 shares an edge with the surviving polygon
    // hexagon f4; that edge is absent from the output but its two vertices
    // are traversed at chemical distance |P| + 3.
    HexPolygon placed = poly.translated(HexVertex{jr.translate, 0});
    std::set<HexMid> pset(placed.edges.begin(), placed.edges.end());
    std::set<HexMid> wset(w.mids().begin(), w.mids().end());
    bool marker = false;
    auto tv = w.traversed_vertices();
    for (HexFace f4 : hex_face_neighbors(jr.junction)) {
        bool f4_on_poly = false;
        for (const HexMid& e : hex_face_edges(f4)) f4_on_poly |= pset.count(e) > 0;
        if (!f4_on_poly) continue;
        HexMid e34;
        bool shared = false;
        for (const HexMid& e : hex_face_edges(jr.junction))
            for (const HexMid& e4 : hex_face_edges(f4))
                if (e == e4) {
                    e34 = e;
                    shared = true;
                }
        if (!shared || wset.count(e34)) continue;
        int64_t iu = -1, iv = -1;
        for (size_t i = 0; i < tv.size(); ++i) {
            if (tv[i] == e34.u) iu = static_cast<int64_t>(i);
            if (tv[i] == e34.v) iv = static_cast<int64_t>(i);
        }
        if (iu >= 0 && iv >= 0 &&
            std::abs(iu - iv) == static_cast<int64_t>(poly.size()) + 3)
            marker = true;
    }
    CHECK(marker);

    if (with_unjoin) {
        auto cands = hex_unjoin(w, jr.junction);
        CHECK(cands.size() == 1);
        bool found = false;
        for (const auto& [g0, p0] : cands)
            if (g0 == gamma && p0.edges == placed.edges) found = true;
        CHECK(found);
    }
}

}  // namespace

TEST_CASE("hex join on the climbing-bridge fixture satisfies the contract") {
    HexWalk g = climb(hex_origin_mid(), 14);
    auto es = hex_face_edges(HexFace{1, 9});
    HexPolygon p = HexPolygon::from_edges(std::vector<HexMid>(es.begin(), es.end()));
    HexJoinResult jr = hex_join(g, p);
    check_hex_contract(g, p, jr, true);
}

TEST_CASE("hex join precondition rejects short bridges and bad polygons") {
    HexWalk tall = climb(hex_origin_mid(), 14);
    HexWalk low = climb(hex_origin_mid(), 4);
    auto es = hex_face_edges(HexFace{1, 9});
    HexPolygon p = HexPolygon::from_edges(std::vector<HexMid>(es.begin(), es.end()));
    CHECK_THROWS_AS(hex_join(low, p), std::invalid_argument);
    HexPolygon broken = p;
    broken.edges.pop_back();
    CHECK_THROWS_AS(hex_join(tall, broken), std::invalid_argument);
}

TEST_CASE("randomized hex corpus: +18 length and bridge preservation, decoded") {
    std::vector<HexPolygon> pool;
    for (int len : {6, 10})
        for (const auto& t : hex_sap_traces(len)) pool.push_back(HexPolygon::from_edges(t));
    REQUIRE(pool.size() == 4);

    std::mt19937 rng(20260826);
    int done = 0;
    while (done < 120) {
        const HexPolygon& base = pool[std::uniform_int_distribution<size_t>(
            0, pool.size() - 1)(rng)];
        HexWalk g = random_hex_bridge(rng, 20, 44);
        // Vertical placements use lattice translations (k mod 2, 3k).
        int64_t span = base.y_max() - base.y_min();
        int64_t lo = g.y_min() + 12 - base.y_min();
        int64_t hi = g.y_max() - 12 - span - base.y_min();
        if (lo > hi) continue;
        int64_t k_lo = (lo + 5) / 6, k_hi = hi / 6;
        if (k_lo > k_hi) continue;
        int64_t k = std::uniform_int_distribution<int64_t>(k_lo, k_hi)(rng);
        HexPolygon p = base.translated(HexVertex{imod(k, 2), 3 * k});
        if (!(g.y_min() <= p.y_min() - 12 && p.y_max() + 12 <= g.y_max())) continue;
        HexJoinResult jr = hex_join(g, p);
        check_hex_contract(g, p, jr, done % 4 == 0);
        ++done;
    }
    MESSAGE("hex corpus performed ", done, " joins");
}

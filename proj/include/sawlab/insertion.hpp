#pragma once
// Polygon insertion on confined half-space walks: the traversal rectangle,
// tall branches ordered by their leftmost crossings, viable join indices,
// join location lists, the multi-valued encoder Phi that grafts wide polygons
// onto tall branches by iterated Madras joins, and the near-injective decoder
// that recovers the walk, the polygons and the location list from the
// resulting bridge list with at most twelve choices per insertion.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sawlab/hwdecomp.hpp"
#include "sawlab/surgery.hpp"
#include "sawlab/walk.hpp"
#include "sawlab/widepoly.hpp"

namespace sawlab {

struct InsertionParams {
    size_t n = 0;        // nominal scale; thresholds are powers of n
    double eps = 0.0;    // tall threshold n^{1/2-eps}, rectangle width n^{1/2+eps}
    double delta = 0.0;  // recorded for reports; the polygon scale satisfies u <= 2 n^delta
    double kappa = 1.0;  // insertions per branch: K = kappa * r
    int64_t u = 1;       // line-width floor for inserted polygons
    size_t m = 4;        // length of every inserted polygon

    double tall_threshold() const {
        return std::pow(static_cast<double>(n), 0.5 - eps);
    }
    double rect_halfwidth() const {
        return std::pow(static_cast<double>(n), 0.5 + eps);
    }
    size_t insertions(size_t r) const {
        return static_cast<size_t>(std::llround(kappa * static_cast<double>(r)));
    }
};

// A join index (ell, j): ell is the 1-based left-right rank of a tall branch,
// j the height at which a polygon would be joined onto that branch.
using JoinIndex = std::pair<size_t, int64_t>;

struct JoinIndexSet {
    std::set<JoinIndex> viable;
};

// An unordered set of join indices, kept sorted; any two members on the same
// or adjacent branches must sit at heights at least 32u + 5 apart.
struct JoinLocationList {
    std::vector<JoinIndex> entries;  // sorted by (ell, j)
};

struct InsertionContext {
    InsertionParams params;
    Walk gamma;
    BranchDecomposition bd;      // branches in decomposition order, absolute position
    size_t t = 0;                // number of tall branches (a prefix, heights decrease)
    int64_t j_min = 0, j_max = 0;  // vertical range of the last tall branch
    std::vector<size_t> tall_order;  // tall_order[l] = decomposition index of phi^(l+1)
    std::vector<int64_t> crossing_x;  // left-right sort key of each tall branch

    // The tall branch phi^(ell), 1-based in left-right order.
    const Walk& tall_branch(size_t ell) const {
        if (ell < 1 || ell > t) throw std::out_of_range("tall_branch: ell out of range");
        return bd.branches[tall_order[ell - 1]];
    }

    // z_{ell,j}: the rightmost vertex of phi^(ell) at height j, if any.
    std::optional<Pt> z(size_t ell, int64_t j) const {
        const Walk& w = tall_branch(ell);
        std::optional<Pt> best;
        for (Pt p : w.points())
            if (p.y == j && (!best || p.x > best->x)) best = p;
        return best;
    }
};

namespace insdetail {

// The x-coordinate, at height j_min, of the leftmost vertical traversal of
// the strip [j_min, j_max] made by the walk.  A traversal is a subwalk whose
// endpoints sit on the two boundary heights and whose interior stays strictly
// between them; since steps change y by at most one, consecutive visits to
// the boundary heights delimit every traversal.
inline std::optional<int64_t> leftmost_crossing_x(const Walk& w, int64_t j_min,
                                                  int64_t j_max) {
    const std::vector<Pt>& pts = w.points();
    std::vector<size_t> marks;
    for (size_t i = 0; i < pts.size(); ++i)
        if (pts[i].y == j_min || pts[i].y == j_max) marks.push_back(i);
    std::optional<int64_t> best;
    for (size_t a = 0; a + 1 < marks.size(); ++a) {
        size_t s = marks[a], e = marks[a + 1];
        if (pts[s].y == pts[e].y) continue;
        int64_t x = pts[pts[s].y == j_min ? s : e].x;
        if (!best || x < *best) best = x;
    }
    return best;
}

}  // namespace insdetail

inline InsertionContext build_context(const Walk& gamma, const InsertionParams& params) {
    if (!gamma.is_half_space())
        throw std::invalid_argument("build_context: not a half-space walk");
    if (!horizontally_confined(gamma, params.n, params.eps))
        throw std::invalid_argument("build_context: walk is not horizontally confined");
    InsertionContext ctx;
    ctx.params = params;
    ctx.gamma = gamma;
    ctx.bd = record_points(gamma);
    // Branch heights strictly decrease, so the tall branches form a prefix.
    const double thr = params.tall_threshold();
    while (ctx.t < ctx.bd.r() &&
           static_cast<double>(branch_height(ctx.bd.branches[ctx.t])) > thr)
        ++ctx.t;
    if (ctx.t == 0) throw std::invalid_argument("build_context: no tall branch");
    // The vertical range of the last tall branch; its endpoints realize the
    // extremes because every branch is a bridge or a reflected bridge.
    const Walk& last = ctx.bd.branches[ctx.t - 1];
    ctx.j_min = std::min(last.front().y, last.back().y);
    ctx.j_max = std::max(last.front().y, last.back().y);
    // Order the tall branches by the leftmost of their strip traversals.
    std::vector<std::pair<int64_t, size_t>> keyed;
    for (size_t k = 0; k < ctx.t; ++k) {
        auto x = insdetail::leftmost_crossing_x(ctx.bd.branches[k], ctx.j_min, ctx.j_max);
        if (!x) throw std::logic_error("build_context: tall branch does not cross the strip");
        keyed.push_back({*x, k});
    }
    std::sort(keyed.begin(), keyed.end());
    for (auto& [x, k] : keyed) {
        ctx.crossing_x.push_back(x);
        ctx.tall_order.push_back(k);
    }
    return ctx;
}

// The height window open to join indices; empty when lo > hi.
inline std::pair<int64_t, int64_t> join_height_window(const InsertionContext& ctx) {
    return {ctx.j_min + 16 * ctx.params.u + 3, ctx.j_max - 16 * ctx.params.u - 3};
}

// A pair (ell, j) is a viable join index when j lies in the height window and
// the adjacent tall branch passes within u to the right at height j.
inline JoinIndexSet viable_indices(const InsertionContext& ctx) {
    JoinIndexSet out;
    auto [lo, hi] = join_height_window(ctx);
    for (size_t ell = 1; ell < ctx.t; ++ell)
        for (int64_t j = lo; j <= hi; ++j) {
            auto a = ctx.z(ell, j), b = ctx.z(ell + 1, j);
            if (a && b && b->x - a->x <= ctx.params.u) out.viable.insert({ell, j});
        }
    return out;
}

// The points blocked by an in-window pair that fails viability: the u points
// strictly and directly to the right of z_{ell,j}.  Blocked sets of distinct
// non-viable pairs are disjoint and contain no z vertex.
inline std::map<JoinIndex, std::vector<Pt>> blocked_points(const InsertionContext& ctx) {
    std::map<JoinIndex, std::vector<Pt>> out;
    JoinIndexSet vi = viable_indices(ctx);
    auto [lo, hi] = join_height_window(ctx);
    for (size_t ell = 1; ell < ctx.t; ++ell)
        for (int64_t j = lo; j <= hi; ++j) {
            if (vi.viable.count({ell, j})) continue;
            auto a = ctx.z(ell, j);
            if (!a) continue;
            std::vector<Pt> pts;
            for (int64_t d = 1; d <= ctx.params.u; ++d) pts.push_back(Pt{a->x + d, a->y});
            out[{ell, j}] = std::move(pts);
        }
    return out;
}

// Do two join indices satisfy the list separation rule?
inline bool separated(const JoinIndex& a, const JoinIndex& b, int64_t u) {
    int64_t dl = static_cast<int64_t>(a.first) - static_cast<int64_t>(b.first);
    if (std::llabs(dl) > 1) return true;
    return std::llabs(a.second - b.second) >= 32 * u + 5;
}

inline bool valid_location_list(const InsertionContext& ctx, const JoinLocationList& list) {
    JoinIndexSet vi = viable_indices(ctx);
    for (size_t i = 0; i < list.entries.size(); ++i) {
        if (!vi.viable.count(list.entries[i])) return false;
        for (size_t k = i + 1; k < list.entries.size(); ++k)
            if (!separated(list.entries[i], list.entries[k], ctx.params.u)) return false;
    }
    return std::is_sorted(list.entries.begin(), list.entries.end());
}

// Enumerate join location lists of size K in lexicographic order, stopping
// after max_lists of them.
inline std::vector<JoinLocationList> location_lists(const InsertionContext& ctx, size_t K,
                                                    size_t max_lists) {
    JoinIndexSet vi = viable_indices(ctx);
    std::vector<JoinIndex> all(vi.viable.begin(), vi.viable.end());
    std::vector<JoinLocationList> out;
    std::vector<JoinIndex> cur;
    auto dfs = [&](auto&& self, size_t from) -> void {
        if (out.size() >= max_lists) return;
        if (cur.size() == K) {
            out.push_back({cur});
            return;
        }
        for (size_t i = from; i < all.size(); ++i) {
            bool ok = true;
            for (const JoinIndex& e : cur)
                if (!separated(e, all[i], ctx.params.u)) ok = false;
            if (!ok) continue;
            cur.push_back(all[i]);
            self(self, i + 1);
            cur.pop_back();
            if (out.size() >= max_lists) return;
        }
    };
    dfs(dfs, 0);
    return out;
}

// The counting scheme behind the lower bound on |Join|: in-window pairs minus
// a blocking estimate.  Reported for inspection; the bound itself only binds
// at large scale.
struct JoinCountReport {
    size_t in_window_pairs = 0;
    size_t viable = 0;
    size_t non_viable = 0;
    double claimed_lower_bound = 0.0;  // r n^{1/2-eps} / 4
    bool bound_holds = false;
};

inline JoinCountReport join_count_report(const InsertionContext& ctx) {
    JoinCountReport rep;
    auto [lo, hi] = join_height_window(ctx);
    if (hi >= lo && ctx.t >= 2) rep.in_window_pairs = (ctx.t - 1) * (hi - lo + 1);
    rep.viable = viable_indices(ctx).viable.size();
    rep.non_viable = rep.in_window_pairs - rep.viable;
    rep.claimed_lower_bound = 0.25 * static_cast<double>(ctx.bd.r()) *
                              std::pow(static_cast<double>(ctx.params.n), 0.5 - ctx.params.eps);
    rep.bound_holds = static_cast<double>(rep.viable) >= rep.claimed_lower_bound;
    return rep;
}

// ---------------------------------------------------------------------------
// The encoder Phi.
// ---------------------------------------------------------------------------

// Join a polygon onto a branch kept in absolute position: the join operates
// on bridges rooted at the origin, so conjugate by the translation that moves
// the branch's start there.
inline JoinResult mj_absolute(const Walk& branch, const PolygonTrace& p, int64_t j) {
    const Pt off = branch.front();
    JoinResult jr = mj_at_height(branch.translated(Pt{0, 0} - off), p, j - off.y);
    jr.joined = jr.joined.translated(off);
    jr.junction = jr.junction + off;
    for (Edge& e : jr.removed_edges) e = e.translated(off);
    for (Edge& e : jr.added_edges) e = e.translated(off);
    return jr;
}

// Lowest-then-leftmost vertex shared by the joined branch and the adjacent
// tall branch but absent from the pre-join branch.  Such a vertex exists for
// every viable join index and every admissible wide polygon.
inline Pt intersection_witness(const InsertionContext& ctx, size_t ell, int64_t j,
                               const PolygonTrace& p) {
    if (!viable_indices(ctx).viable.count({ell, j}))
        throw std::invalid_argument("intersection_witness: index is not viable");
    JoinResult jr = mj_absolute(ctx.tall_branch(ell), p, j);
    std::set<Pt> before(ctx.tall_branch(ell).points().begin(),
                        ctx.tall_branch(ell).points().end());
    std::set<Pt> next(ctx.tall_branch(ell + 1).points().begin(),
                      ctx.tall_branch(ell + 1).points().end());
    std::optional<Pt> best;
    for (Pt q : jr.joined.points()) {
        if (!next.count(q) || before.count(q)) continue;
        if (!best || q.y < best->y || (q.y == best->y && q.x < best->x)) best = q;
    }
    if (!best) throw std::logic_error("intersection_witness: joined branch misses its neighbour");
    return *best;
}

// Apply the insertions prescribed by the list: polygon k is joined onto the
// branch and at the height named by the k-th list entry.  The output is the
// bridge list of the post-surgical walk: branches in decomposition order,
// odd-indexed ones reflected, each translated to start at the origin.
inline std::vector<Walk> phi_encode(const InsertionContext& ctx,
                                    const std::vector<PolygonTrace>& polys,
                                    const JoinLocationList& list) {
    if (polys.size() != list.entries.size())
        throw std::invalid_argument("phi_encode: one polygon per list entry required");
    if (!valid_location_list(ctx, list))
        throw std::invalid_argument("phi_encode: not a join location list");
    for (const PolygonTrace& p : polys)
        if (p.length() != ctx.params.m ||
            !is_wide(p, static_cast<int>(ctx.params.u)))
            throw std::invalid_argument("phi_encode: polygon outside the admitted class");
    std::vector<Walk> branches = ctx.bd.branches;
    for (size_t k = 0; k < polys.size(); ++k) {
        auto [ell, j] = list.entries[k];
        size_t idx = ctx.tall_order[ell - 1];
        JoinResult jr = mj_absolute(branches[idx], polys[k], j);
        branches[idx] = std::move(jr.joined);
    }
    std::vector<Walk> out;
    out.reserve(branches.size());
    for (size_t k = 0; k < branches.size(); ++k) {
        Walk b = branches[k].translated(Pt{0, 0} - branches[k].front());
        if (k % 2 == 1) b = b.reflect_vertical();
        out.push_back(std::move(b));
    }
    return out;
}

// ---------------------------------------------------------------------------
// The decoder.
// ---------------------------------------------------------------------------

struct DecodedPreimage {
    Walk gamma;
    std::vector<PolygonTrace> polys;  // matched to list entries
    JoinLocationList list;
};

struct DecodeReport {
    std::vector<DecodedPreimage> candidates;  // validated by re-encoding
    size_t leaves = 0;      // complete preimage candidates examined
    size_t insertions = 0;  // K, from kappa and the branch count
};

namespace insdetail {

struct DecodeScratch {
    const InsertionParams* params;
    size_t t = 0;
    int64_t j_min = 0, j_max = 0;
    std::vector<size_t> tall_order;  // left-right rank -> decomposition index
    const std::vector<Walk>* input_bridges;
};

// Vertices shared by two branches, excluding branch endpoints (decomposition
// neighbours meet at a record point) and heights outside the strip interior,
// where no surgery leaves a trace.  Returns the lowest-then-leftmost.
inline std::optional<Pt> lowest_shared_vertex(const Walk& a, const Walk& b,
                                              int64_t j_min, int64_t j_max) {
    std::set<Pt> bs(b.points().begin(), b.points().end());
    bs.erase(b.front());
    bs.erase(b.back());
    std::optional<Pt> best;
    for (Pt q : a.points()) {
        if (q == a.front() || q == a.back()) continue;
        if (q.y < j_min + 3 || q.y > j_max - 3) continue;
        if (!bs.count(q)) continue;
        if (!best || q.y < best->y || (q.y == best->y && q.x < best->x)) best = q;
    }
    return best;
}

inline void decode_dfs(const DecodeScratch& sc, std::vector<Walk>& branches,
                       std::vector<std::pair<JoinIndex, PolygonTrace>>& undone,
                       size_t K, DecodeReport& rep) {
    // The lowest unexplained intersection on the leftmost branch that has one.
    std::optional<Pt> v;
    size_t ell = 0;
    for (size_t l = 1; l < sc.t && !v; ++l) {
        v = lowest_shared_vertex(branches[sc.tall_order[l - 1]],
                                 branches[sc.tall_order[l]], sc.j_min, sc.j_max);
        ell = l;
    }
    if (!v) {
        ++rep.leaves;
        if (undone.size() != K) return;
        // Reassemble the walk and validate by re-encoding.
        Walk g = branches[0];
        for (size_t k = 1; k < branches.size(); ++k) g = concatenate(g, branches[k]);
        if (!g.self_avoiding() || !g.is_half_space()) return;
        DecodedPreimage cand;
        cand.gamma = g;
        std::vector<std::pair<JoinIndex, PolygonTrace>> sorted = undone;
        std::sort(sorted.begin(), sorted.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        for (auto& [idx, p] : sorted) {
            cand.list.entries.push_back(idx);
            cand.polys.push_back(p);
        }
        try {
            InsertionContext cctx = build_context(g, *sc.params);
            if (phi_encode(cctx, cand.polys, cand.list) == *sc.input_bridges)
                rep.candidates.push_back(std::move(cand));
        } catch (const std::exception&) {
        }
        return;
    }
    if (undone.size() == K) {
        ++rep.leaves;  // leftover intersections with no insertion budget
        return;
    }
    const size_t idx = sc.tall_order[ell - 1];
    const Walk& rho = branches[idx];
    // Index of the witness along the current branch.
    size_t vi = 0;
    for (size_t i = 0; i <= rho.length(); ++i)
        if (rho[i] == *v) vi = i;
    const int64_t m = static_cast<int64_t>(sc.params->m);
    const int64_t win_lo = static_cast<int64_t>(vi) - (m + 18);
    const int64_t win_hi = static_cast<int64_t>(vi) + (m + 18);
    // The junction's right corners form a right-detachable adjacency of gap
    // m + 7 whose higher index lies within m + 18 of the witness; distinct
    // such adjacencies are at least m + 7 apart, so at most three qualify.
    for (const AdjacencyPair& ap : find_right_detachable(rho)) {
        if (ap.gap() != static_cast<size_t>(m) + 7) continue;
        int64_t k = static_cast<int64_t>(ap.k);
        if (k < win_lo || k > win_hi) continue;
        Pt a = rho[ap.j], b = rho[ap.k];
        Pt sw{a.x - 1, std::min(a.y, b.y)};
        // The unjoin decoder works on origin-rooted bridges; conjugate by the
        // translation that roots the branch there, as the encoder did.
        const Pt off = rho.front();
        std::vector<std::pair<Walk, PlacedPoly>> cands;
        try {
            cands = unjoin(rho.translated(Pt{0, 0} - off), sw - off);
        } catch (const std::exception&) {
            continue;
        }
        for (auto& [walk0_local, poly0_local] : cands) {
            Walk walk0 = walk0_local.translated(off);
            PlacedPoly poly0 = poly0_local.translated(off);
            PolygonTrace trace = PolygonTrace::from_edges(poly0.edges);
            if (trace.length() != sc.params->m ||
                !is_wide(trace, static_cast<int>(sc.params->u)))
                continue;
            // The join height is the vertical offset between the resting
            // polygon and its rooted representative.
            std::vector<Edge> rooted = root_wide(trace).edges();
            std::sort(rooted.begin(), rooted.end());
            if (rooted.empty() || poly0.edges.empty()) continue;
            int64_t j = poly0.edges.front().a.y - rooted.front().a.y;
            if (j < sc.j_min + 16 * sc.params->u + 3 || j > sc.j_max - 16 * sc.params->u - 3)
                continue;
            branches[idx] = walk0;
            undone.push_back({{ell, j}, trace});
            decode_dfs(sc, branches, undone, K, rep);
            undone.pop_back();
            branches[idx] = rho;
        }
    }
}

}  // namespace insdetail

// Decode a bridge list: recover every preimage (gamma; polygons; list) whose
// encoding reproduces the input exactly.  The candidates examined number at
// most 12 per insertion: three junction locations times four unjoin shapes.
inline DecodeReport phi_decode(const std::vector<Walk>& bridges,
                               const InsertionParams& params) {
    if (bridges.empty()) throw std::invalid_argument("phi_decode: empty bridge list");
    insdetail::DecodeScratch sc;
    sc.params = &params;
    sc.input_bridges = &bridges;
    // Place the branches in absolute position by chaining.
    std::vector<Walk> branches;
    Pt at{0, 0};
    for (size_t k = 0; k < bridges.size(); ++k) {
        Walk b = bridges[k];
        if (k % 2 == 1) b = b.reflect_vertical();
        b = b.translated(at - b.front());
        at = b.back();
        branches.push_back(std::move(b));
    }
    const double thr = params.tall_threshold();
    while (sc.t < branches.size() &&
           static_cast<double>(branch_height(branches[sc.t])) > thr)
        ++sc.t;
    if (sc.t == 0) throw std::invalid_argument("phi_decode: no tall branch");
    const Walk& last = branches[sc.t - 1];
    sc.j_min = std::min(last.front().y, last.back().y);
    sc.j_max = std::max(last.front().y, last.back().y);
    std::vector<std::pair<int64_t, size_t>> keyed;
    for (size_t k = 0; k < sc.t; ++k) {
        auto x = insdetail::leftmost_crossing_x(branches[k], sc.j_min, sc.j_max);
        if (!x) throw std::invalid_argument("phi_decode: tall branch misses the strip");
        keyed.push_back({*x, k});
    }
    std::sort(keyed.begin(), keyed.end());
    for (auto& [x, k] : keyed) sc.tall_order.push_back(k);

    DecodeReport rep;
    rep.insertions = params.insertions(bridges.size());
    std::vector<std::pair<JoinIndex, PolygonTrace>> undone;
    insdetail::decode_dfs(sc, branches, undone, rep.insertions, rep);
    return rep;
}

// ---------------------------------------------------------------------------
// Fixture serialization.
// ---------------------------------------------------------------------------

inline nlohmann::json walk_to_json(const Walk& w) {
    auto arr = nlohmann::json::array();
    for (Pt p : w.points()) arr.push_back({p.x, p.y});
    return arr;
}

inline Walk walk_from_json(const nlohmann::json& j) {
    std::vector<Pt> pts;
    for (const auto& e : j) pts.push_back(Pt{e[0].get<int64_t>(), e[1].get<int64_t>()});
    return Walk(std::move(pts));
}

inline nlohmann::json insertion_fixture_to_json(const Walk& gamma,
                                                const InsertionParams& params,
                                                const std::vector<PolygonTrace>& polys,
                                                const JoinLocationList& list) {
    nlohmann::json j;
    j["walk"] = walk_to_json(gamma);
    j["params"] = {{"n", params.n},     {"eps", params.eps}, {"delta", params.delta},
                   {"kappa", params.kappa}, {"u", params.u},     {"m", params.m}};
    j["polygons"] = nlohmann::json::array();
    for (const PolygonTrace& p : polys) {
        auto edges = nlohmann::json::array();
        for (const Edge& e : p.edges())
            edges.push_back({{e.a.x, e.a.y}, {e.b.x, e.b.y}});
        j["polygons"].push_back(edges);
    }
    j["list"] = nlohmann::json::array();
    for (const JoinIndex& e : list.entries) j["list"].push_back({e.first, e.second});
    return j;
}

struct InsertionFixture {
    Walk gamma;
    InsertionParams params;
    std::vector<PolygonTrace> polys;
    JoinLocationList list;
};

inline InsertionFixture insertion_fixture_from_json(const nlohmann::json& j) {
    InsertionFixture f;
    f.gamma = walk_from_json(j.at("walk"));
    const auto& p = j.at("params");
    f.params.n = p.at("n").get<size_t>();
    f.params.eps = p.at("eps").get<double>();
    f.params.delta = p.at("delta").get<double>();
    f.params.kappa = p.at("kappa").get<double>();
    f.params.u = p.at("u").get<int64_t>();
    f.params.m = p.at("m").get<size_t>();
    for (const auto& pe : j.at("polygons")) {
        std::vector<Edge> es;
        for (const auto& e : pe)
            es.emplace_back(Pt{e[0][0].get<int64_t>(), e[0][1].get<int64_t>()},
                            Pt{e[1][0].get<int64_t>(), e[1][1].get<int64_t>()});
        f.polys.push_back(PolygonTrace::from_edges(std::move(es)));
    }
    for (const auto& e : j.at("list"))
        f.list.entries.push_back({e[0].get<size_t>(), e[1].get<int64_t>()});
    return f;
}

}  // namespace sawlab

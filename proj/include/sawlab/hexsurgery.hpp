// Surgery on the hexagonal lattice: joining a polygon onto a bridge through
// a corridor of five dual-adjacent faces, and the inverse decode.
//
// The join M(gamma, P) slides P horizontally to its rightmost position at
// dual distance four from gamma's face set, picks a canonical five-face
// corridor f0..f4 with good end faces, and forms
//     M = gamma xor f0 xor Q xor f4 xor P
// where f0, f4 stand for their bounding hexagons and Q is the boundary of a
// small face set containing f2, chosen as the first set in a canonical order
// for which the result is a bridge of length |gamma| + |P| + 18 whose
// junction hexagon f3 carries the required chemical-distance marker.
#ifndef SAWLAB_HEXSURGERY_HPP
#define SAWLAB_HEXSURGERY_HPP

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sawlab/hexlattice.hpp"
#include "sawlab/hexwalk.hpp"

namespace sawlab {

// Dual-graph (triangular) distance between face centres.
inline int64_t hex_dual_dist(HexFace f, HexFace g) {
    int64_t da = std::abs(f.a - g.a);
    int64_t db = std::abs(f.b - g.b) / 3;
    return da <= db ? db : db + (da - db) / 2;
}

struct HexJoinResult {
    HexWalk joined;
    HexFace junction{0, 0};  // the face f3
    int64_t translate = 0;   // horizontal slide applied to P, in a-units
    std::vector<HexMid> removed_edges, added_edges;
};

namespace hexdetail {

inline std::set<HexFace> faces_adjacent_to(const std::set<HexMid>& edges) {
    std::set<HexFace> out;
    for (const HexMid& e : edges)
        for (HexFace f : hex_edge_faces(e)) out.insert(f);
    return out;
}

// A face is good for an edge set when at most two of its six boundary edges
// belong to the set and, if two, those two share a vertex.
inline bool good_face(HexFace f, const std::set<HexMid>& edges) {
    std::vector<HexMid> mine;
    for (const HexMid& e : hex_face_edges(f))
        if (edges.count(e)) mine.push_back(e);
    if (mine.size() > 2) return false;
    if (mine.size() == 2) {
        const HexMid &a = mine[0], &b = mine[1];
        return a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v;
    }
    return true;
}

inline void xor_in(std::set<HexMid>& s, const HexMid& e) {
    auto it = s.find(e);
    if (it == s.end())
        s.insert(e);
    else
        s.erase(it);
}

inline void xor_face(std::set<HexMid>& s, HexFace f) {
    for (const HexMid& e : hex_face_edges(f)) xor_in(s, e);
}

// Boundary of a face set: edges bordering exactly one member face.
inline std::set<HexMid> face_set_boundary(const std::set<HexFace>& faces) {
    std::set<HexMid> out;
    for (HexFace f : faces) xor_face(out, f);
    return out;
}

// Reconstruct a single open walk covering the whole edge set, starting at
// `start` and ending at `goal`.  Fails on branching (a vertex with three
// incident set edges), ambiguity at the start, leftover edges, or a
// non-self-avoiding result.
inline std::optional<HexWalk> walk_from_set(const std::set<HexMid>& es, HexMid start,
                                            HexMid goal) {
    if (!es.count(start) || !es.count(goal)) return std::nullopt;
    std::map<HexVertex, std::vector<HexMid>> inc;
    for (const HexMid& e : es) {
        inc[e.u].push_back(e);
        inc[e.v].push_back(e);
        if (inc[e.u].size() > 2 || inc[e.v].size() > 2) return std::nullopt;
    }
    std::vector<HexMid> chain{start};
    std::set<HexMid> used{start};
    HexMid cur = start;
    std::optional<HexVertex> entered;
    while (true) {
        std::optional<HexMid> nxt;
        std::optional<HexVertex> via;
        for (HexVertex w : {cur.u, cur.v}) {
            if (entered && w == *entered) continue;
            for (const HexMid& e : inc[w]) {
                if (used.count(e)) continue;
                if (nxt) return std::nullopt;  // two continuations: ambiguous
                nxt = e;
                via = w;
            }
        }
        if (!nxt) break;
        chain.push_back(*nxt);
        used.insert(*nxt);
        entered = *via;  // the vertex through which the new edge was entered
        cur = *nxt;
    }
    if (chain.back() != goal || used.size() != es.size()) return std::nullopt;
    HexWalk w(std::move(chain));
    if (!w.adjacent_ok() || !w.self_avoiding()) return std::nullopt;
    return w;
}

// Connected subsets of `pool` containing `seed`, of at most `max_size`
// faces, in canonical order (size, then sorted centre list).
inline std::vector<std::vector<HexFace>> connected_face_sets(
    const std::vector<HexFace>& pool, HexFace seed, size_t max_size) {
    std::set<std::set<HexFace>> seen;
    std::vector<std::set<HexFace>> frontier{{seed}};
    seen.insert({seed});
    for (size_t sz = 1; sz < max_size; ++sz) {
        std::vector<std::set<HexFace>> next;
        for (const auto& s : frontier)
            for (HexFace f : s)
                for (HexFace nb : hex_face_neighbors(f)) {
                    if (s.count(nb)) continue;
                    if (std::find(pool.begin(), pool.end(), nb) == pool.end()) continue;
                    std::set<HexFace> grown = s;
                    grown.insert(nb);
                    if (seen.insert(grown).second) next.push_back(grown);
                }
        frontier = std::move(next);
    }
    std::vector<std::vector<HexFace>> out;
    for (const auto& s : seen) out.emplace_back(s.begin(), s.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        auto key = [](const std::vector<HexFace>& v) {
            std::vector<std::pair<int64_t, int64_t>> k;
            for (HexFace f : v) k.emplace_back(f.b, f.a);
            std::sort(k.begin(), k.end());
            return k;
        };
        return key(a) < key(b);
    });
    return out;
}

// Vertical clearance for the precondition, in midpoint-sum units: three edge
// lengths; one edge length spans four units of my(), so the pad is 12.
constexpr int64_t kHexMargin = 12;

// Assemble and validate one candidate surgery.  Returns the result when
// every acceptance requirement holds.
inline std::optional<HexJoinResult> hex_assemble(
    const HexWalk& gamma, const std::set<HexMid>& gset, const std::set<HexMid>& pset,
    size_t plen, const std::array<HexFace, 5>& path, const std::vector<HexFace>& S,
    int64_t translate) {
    std::set<HexMid> m = gset;
    for (const HexMid& e : pset) xor_in(m, e);
    xor_face(m, path[0]);
    xor_face(m, path[4]);
    std::set<HexFace> sset(S.begin(), S.end());
    for (const HexMid& e : face_set_boundary(sset)) xor_in(m, e);

    if (m.size() != gset.size() + plen + 18) return std::nullopt;
    auto w = walk_from_set(m, gamma.front(), gamma.back());
    if (!w || !w->is_bridge()) return std::nullopt;

    // Chemical-distance marker: the two vertices of the junction hexagon f3
    // across the edge it shares with f4 sit |P| + 3 traversals apart.
    HexMid shared;
    {
        bool found = false;
        for (const HexMid& e : hex_face_edges(path[3]))
            for (const HexMid& e4 : hex_face_edges(path[4]))
                if (e == e4) {
                    shared = e;
                    found = true;
                }
        if (!found) return std::nullopt;
    }
    auto tv = w->traversed_vertices();
    int64_t iu = -1, iv = -1;
    for (size_t i = 0; i < tv.size(); ++i) {
        if (tv[i] == shared.u) iu = static_cast<int64_t>(i);
        if (tv[i] == shared.v) iv = static_cast<int64_t>(i);
    }
    if (iu < 0 || iv < 0 || std::abs(iu - iv) != static_cast<int64_t>(plen) + 3)
        return std::nullopt;

    HexJoinResult jr;
    jr.joined = std::move(*w);
    jr.junction = path[3];
    jr.translate = translate;
    for (const HexMid& e : gset)
        if (!m.count(e)) jr.removed_edges.push_back(e);
    for (const HexMid& e : pset)
        if (!m.count(e)) jr.removed_edges.push_back(e);
    for (const HexMid& e : m)
        if (!gset.count(e) && !pset.count(e)) jr.added_edges.push_back(e);
    return jr;
}

}  // namespace hexdetail

// Join a hexagonal-lattice polygon onto a bridge.  The polygon's horizontal
// position is irrelevant (the slide absorbs it); its vertical position must
// satisfy the clearance condition.  Throws std::invalid_argument on a
// precondition violation, std::runtime_error when no conformant surgery
// exists.
inline HexJoinResult hex_join(const HexWalk& gamma, const HexPolygon& poly) {
    using namespace hexdetail;
    if (!gamma.is_bridge()) throw std::invalid_argument("hex_join: walk is not a bridge");
    if (!poly.valid()) throw std::invalid_argument("hex_join: not a polygon");
    if (!(gamma.y_min() <= poly.y_min() - kHexMargin &&
          poly.y_max() + kHexMargin <= gamma.y_max()))
        throw std::invalid_argument("hex_join: vertical alignment condition fails");

    std::set<HexMid> gset(gamma.mids().begin(), gamma.mids().end());
    std::set<HexFace> fg = faces_adjacent_to(gset);
    // Faces whose hexagon contains a terminal half-edge of the bridge are
    // unusable anchors: removing such an edge would move an endpoint.
    std::set<HexFace> terminal_faces;
    for (const HexMid& e : {gamma.front(), gamma.back()})
        for (HexFace f : hex_edge_faces(e)) terminal_faces.insert(f);

    // Slide the polygon in from the right.  Offsets are tried from the first
    // one at dual distance at most four (a five-face corridor cannot span
    // more) down to the last collision-safe one (distance at least two keeps
    // the two edge sets vertex-disjoint); at each offset every corridor and
    // every small face set for Q is tried in canonical order, and the first
    // assembly passing the full acceptance contract wins.
    int64_t gx_hi = gamma.mids().front().mx();
    for (const HexMid& e : gamma.mids()) gx_hi = std::max(gx_hi, e.mx());
    int64_t px_lo = poly.edges.front().mx();
    for (const HexMid& e : poly.edges) px_lo = std::min(px_lo, e.mx());
    // mx is in quarter units; a slide of (2,0) moves mx by four.
    int64_t t0 = (gx_hi - px_lo) / 4 + 8;
    auto dist_at = [&](int64_t ta) {
        int64_t best = std::numeric_limits<int64_t>::max();
        for (const HexMid& e : poly.edges)
            for (HexFace f : hex_edge_faces(e.translated(HexVertex{2 * ta, 0})))
                for (HexFace g : fg) best = std::min(best, hex_dual_dist(g, f));
        return best;
    };

    for (int64_t t = t0;; --t) {
        int64_t d = dist_at(t);
        if (d < 2) break;
        if (d > 4) continue;

        HexPolygon placed = poly.translated(HexVertex{2 * t, 0});
        std::set<HexMid> pset(placed.edges.begin(), placed.edges.end());
        std::set<HexFace> fp = faces_adjacent_to(pset);

        // Candidate five-face corridors with good, set-avoiding interiors,
        // in canonical order of their centre sequences.
        std::vector<std::array<HexFace, 5>> paths;
        for (HexFace f4 : fp) {
            if (!good_face(f4, pset)) continue;
            for (HexFace f3 : hex_face_neighbors(f4)) {
                if (fg.count(f3) || fp.count(f3)) continue;
                for (HexFace f2 : hex_face_neighbors(f3)) {
                    if (f2 == f4 || fg.count(f2) || fp.count(f2)) continue;
                    for (HexFace f1 : hex_face_neighbors(f2)) {
                        if (f1 == f3 || f1 == f4 || fg.count(f1) || fp.count(f1)) continue;
                        for (HexFace f0 : hex_face_neighbors(f1)) {
                            if (!fg.count(f0) || terminal_faces.count(f0)) continue;
                            if (!good_face(f0, gset)) continue;
                            paths.push_back({f0, f1, f2, f3, f4});
                        }
                    }
                }
            }
        }
        auto path_key = [](const std::array<HexFace, 5>& p) {
            std::vector<std::pair<int64_t, int64_t>> k;
            for (HexFace f : p) k.emplace_back(f.b, f.a);
            return k;
        };
        std::sort(paths.begin(), paths.end(),
                  [&](const auto& a, const auto& b) { return path_key(a) < path_key(b); });

        for (const auto& path : paths) {
            // Pool for Q's face set: the corridor interior and its
            // neighbours, avoiding the end faces and both edge sets' faces.
            std::set<HexFace> pool_set;
            for (HexFace f : {path[1], path[2], path[3]}) {
                pool_set.insert(f);
                for (HexFace nb : hex_face_neighbors(f)) pool_set.insert(nb);
            }
            pool_set.erase(path[0]);
            pool_set.erase(path[4]);
            std::vector<HexFace> pool;
            for (HexFace f : pool_set)
                if (!fg.count(f) && !fp.count(f)) pool.push_back(f);
            for (const auto& S : connected_face_sets(pool, path[2], 5)) {
                // Q must hook both end hexagons: some member face of S has
                // to border each of them.
                bool hook0 = false, hook4 = false;
                for (HexFace f : S)
                    for (HexFace nb : hex_face_neighbors(f)) {
                        hook0 |= nb == path[0];
                        hook4 |= nb == path[4];
                    }
                if (!hook0 || !hook4) continue;
                auto jr = hex_assemble(gamma, gset, pset, placed.size(), path, S, 2 * t);
                if (jr) return *jr;
            }
        }
    }
    throw std::runtime_error("hex_join: no conformant surgery found");
}

// Decode candidate (bridge, polygon) preimages of a joined walk from its
// junction hexagon.  Candidates are validated by re-joining; polygons are
// reported at their resting position.  On conformant inputs the set has
// exactly one element.
inline std::vector<std::pair<HexWalk, HexPolygon>> hex_unjoin(const HexWalk& w,
                                                              HexFace junction) {
    using namespace hexdetail;
    if (!hex_face_valid(junction))
        throw std::invalid_argument("hex_unjoin: invalid junction face");
    std::set<HexMid> wset(w.mids().begin(), w.mids().end());
    {
        bool touches = false;
        for (const HexMid& e : hex_face_edges(junction))
            if (wset.count(e)) touches = true;
        if (!touches)
            throw std::invalid_argument("hex_unjoin: junction inconsistent with walk");
    }

    std::vector<std::pair<HexWalk, HexPolygon>> out;
    std::set<std::pair<std::vector<HexMid>, std::vector<HexMid>>> emitted;
    std::set<HexVertex> traversed;
    for (HexVertex v : w.traversed_vertices()) traversed.insert(v);
    // An end face of the corridor keeps at least three of its six boundary
    // edges (at most two lost to the joined piece, one to Q); the f3/f4
    // shared edge is absent but both of its vertices are traversed (they
    // carry the chemical-distance marker).
    auto face_mostly_present = [&](HexFace f) {
        int c = 0;
        for (const HexMid& e : hex_face_edges(f)) c += wset.count(e) ? 1 : 0;
        return c >= 3;
    };
    HexFace f3 = junction;
    for (HexFace f4 : hex_face_neighbors(f3)) {
        if (!face_mostly_present(f4)) continue;
        {
            HexMid e34;
            bool found = false;
            for (const HexMid& e : hex_face_edges(f3))
                for (const HexMid& e4 : hex_face_edges(f4))
                    if (e == e4) {
                        e34 = e;
                        found = true;
                    }
            if (!found || wset.count(e34) || !traversed.count(e34.u) ||
                !traversed.count(e34.v))
                continue;
        }
        for (HexFace f2 : hex_face_neighbors(f3)) {
            if (f2 == f4) continue;
            for (HexFace f1 : hex_face_neighbors(f2)) {
                if (f1 == f3 || f1 == f4) continue;
                for (HexFace f0 : hex_face_neighbors(f1)) {
                    if (f0 == f2 || f0 == f3 || f0 == f4) continue;
                    if (!face_mostly_present(f0)) continue;
                    std::set<HexFace> pool_set;
                    for (HexFace f : {f1, f2, f3}) {
                        pool_set.insert(f);
                        for (HexFace nb : hex_face_neighbors(f)) pool_set.insert(nb);
                    }
                    pool_set.erase(f0);
                    pool_set.erase(f4);
                    std::vector<HexFace> pool(pool_set.begin(), pool_set.end());
                    for (const auto& S : connected_face_sets(pool, f2, 5)) {
                        bool hook0 = false, hook4 = false;
                        for (HexFace f : S)
                            for (HexFace nb : hex_face_neighbors(f)) {
                                hook0 |= nb == f0;
                                hook4 |= nb == f4;
                            }
                        if (!hook0 || !hook4) continue;
                        std::set<HexMid> m = wset;
                        xor_face(m, f0);
                        xor_face(m, f4);
                        std::set<HexFace> sset(S.begin(), S.end());
                        for (const HexMid& e : face_set_boundary(sset)) xor_in(m, e);

                        // Expect an open walk with w's endpoints plus one cycle.
                        std::map<HexVertex, int> deg;
                        bool branch = false;
                        for (const HexMid& e : m) {
                            if (++deg[e.u] > 2 || ++deg[e.v] > 2) branch = true;
                            if (branch) break;
                        }
                        if (branch) continue;
                        if (!m.count(w.front()) || !m.count(w.back())) continue;
                        // Greedy chain from the start; remainder must be a cycle.
                        std::set<HexMid> chain_set;
                        {
                            std::map<HexVertex, std::vector<HexMid>> inc;
                            for (const HexMid& e : m) {
                                inc[e.u].push_back(e);
                                inc[e.v].push_back(e);
                            }
                            HexMid cur = w.front();
                            chain_set.insert(cur);
                            std::optional<HexVertex> entered;
                            bool ok = true;
                            while (ok) {
                                std::optional<HexMid> nxt;
                                std::optional<HexVertex> via;
                                for (HexVertex vv : {cur.u, cur.v}) {
                                    if (entered && vv == *entered) continue;
                                    for (const HexMid& e : inc[vv]) {
                                        if (chain_set.count(e)) continue;
                                        if (nxt) ok = false;
                                        nxt = e;
                                        via = vv;
                                    }
                                }
                                if (!ok || !nxt) break;
                                chain_set.insert(*nxt);
                                entered = *via;
                                cur = *nxt;
                            }
                            if (!ok || cur != w.back()) continue;
                        }
                        std::vector<HexMid> rest;
                        for (const HexMid& e : m)
                            if (!chain_set.count(e)) rest.push_back(e);
                        if (rest.empty()) continue;
                        HexPolygon p0 = HexPolygon::from_edges(rest);
                        if (!p0.valid()) continue;
                        auto g0 = walk_from_set(chain_set, w.front(), w.back());
                        if (!g0 || !g0->is_bridge()) continue;
                        try {
                            HexJoinResult jr = hex_join(*g0, p0);
                            if (jr.joined == w && jr.junction == junction) {
                                HexPolygon rest_poly =
                                    p0.translated(HexVertex{jr.translate, 0});
                                if (emitted
                                        .insert({g0->mids(), rest_poly.edges})
                                        .second)
                                    out.emplace_back(*g0, rest_poly);
                            }
                        } catch (const std::exception&) {
                        }
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace sawlab

#endif  // SAWLAB_HEXSURGERY_HPP

// Branch-cut covers of the hexagonal lattice: the j-fold cover U^j and a
// finite window of the universal cover U^inf, with the walk enumerations,
// winding bookkeeping and good-polygon census built on them.
//
// The branch cut is the positive x-axis.  It meets H only at the midpoints
// of the vertical edges at x = k + 1/2, and each such midpoint splits into a
// lower copy (argument 0) and an upper copy (argument 2pi).  A cover point
// is stored as (sheet, base midpoint), where a cut midpoint's sheet is the
// index of the sheet in which it is the *lower* copy; the upper copy in
// sheet s is the same point as the lower copy in sheet s + 1.  With this
// convention a counterclockwise loop around the singular face raises the
// sheet by one, and the continuous angle of a cover point is exactly
// 2 pi sheet + arg(base position) with arg taken in [0, 2pi).
#ifndef SAWLAB_COVERS_HPP
#define SAWLAB_COVERS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "sawlab/hexdomain.hpp"
#include "sawlab/hexwalk.hpp"
#include "sawlab/observable.hpp"

namespace sawlab {

// Midpoints on the branch cut: vertical edges crossing the positive x-axis.
inline bool is_cut_mid(const HexMid& m) {
    return m.is_vertical() && m.my() == 0 && m.mx() > 0;
}

// A point of a cover of H.  `fold` lives with the walk / enumeration, not
// with the point; `sheet` is canonical (a cut midpoint is its lower copy).
struct CoverMid {
    int64_t sheet = 0;
    HexMid base;

    friend bool operator==(const CoverMid& a, const CoverMid& b) {
        return a.sheet == b.sheet && a.base == b.base;
    }
    friend bool operator!=(const CoverMid& a, const CoverMid& b) { return !(a == b); }
    friend bool operator<(const CoverMid& a, const CoverMid& b) {
        if (a.sheet != b.sheet) return a.sheet < b.sheet;
        return a.base < b.base;
    }
};

inline int64_t normalize_sheet(int64_t s, int fold) { return fold > 0 ? imod(s, fold) : s; }

// Sheet occupied while traversing vertex `via` when departing from `c`.  A
// cut midpoint stored as the lower copy in sheet s is the upper copy in
// sheet s - 1, and the upper copy is the one attached to the region just
// below the axis, reached through the lower endpoint (b < 0).
inline int64_t departure_sheet(const CoverMid& c, HexVertex via) {
    int64_t s = c.sheet;
    if (is_cut_mid(c.base) && via.b < 0) s -= 1;
    return s;
}

// One cover step from `c` through shared vertex `via` onto base midpoint
// `to`.  Arriving at a cut midpoint from below (through its lower endpoint)
// lands on the upper copy, i.e. the lower copy one sheet higher.
inline CoverMid cover_step(const CoverMid& c, HexVertex via, const HexMid& to, int fold) {
    int64_t s = departure_sheet(c, via);
    if (is_cut_mid(to) && via.b < 0) s += 1;
    return CoverMid{normalize_sheet(s, fold), to};
}

// The fold distinct preimages of a base midpoint under the j-fold
// projection (for a cut midpoint these are its canonical lower copies).
inline std::vector<CoverMid> cover_preimages(const HexMid& m, int fold) {
    std::vector<CoverMid> out;
    for (int s = 0; s < fold; ++s) out.push_back(CoverMid{s, m});
    return out;
}

// ---------------------------------------------------------------------------
// Cover walks.
// ---------------------------------------------------------------------------

struct CoverWalk {
    int fold = 0;  // 0 means the universal cover
    std::vector<CoverMid> mids;

    size_t length() const { return mids.empty() ? 0 : mids.size() - 1; }
    const CoverMid& front() const { return mids.front(); }
    const CoverMid& back() const { return mids.back(); }

    // Consecutive midpoints share an H-vertex and the sheets obey the
    // branch-cut step rule.
    bool consistent() const {
        for (size_t i = 1; i < mids.size(); ++i) {
            const HexMid& p = mids[i - 1].base;
            const HexMid& q = mids[i].base;
            bool ok = false;
            for (HexVertex via : {p.u, p.v}) {
                if (!(via == q.u || via == q.v)) continue;
                if (cover_step(mids[i - 1], via, q, fold) == mids[i]) ok = true;
            }
            if (!ok) return false;
        }
        return true;
    }

    // Self-avoidance of the traversed cover vertices (sheet, H-vertex).
    bool self_avoiding() const {
        std::set<std::pair<int64_t, HexVertex>> seen;
        for (size_t i = 1; i < mids.size(); ++i) {
            const HexMid& p = mids[i - 1].base;
            const HexMid& q = mids[i].base;
            HexVertex via = (p.u == q.u || p.u == q.v) ? p.u : p.v;
            int64_t s = normalize_sheet(departure_sheet(mids[i - 1], via), fold);
            if (!seen.insert({s, via}).second) return false;
        }
        return true;
    }

    HexWalk projected() const {
        std::vector<HexMid> ms;
        ms.reserve(mids.size());
        for (const CoverMid& c : mids) ms.push_back(c.base);
        return HexWalk(std::move(ms));
    }
};

// Lift of a base walk starting on the given sheet.  In the universal cover
// (fold 0) the lift must stay within |sheet| <= window.
inline CoverWalk lift_walk(const HexWalk& w, int64_t sheet0, int fold, int64_t window = 3) {
    CoverWalk cw;
    cw.fold = fold;
    if (w.mids().empty()) return cw;
    cw.mids.push_back(CoverMid{normalize_sheet(sheet0, fold), w.front()});
    for (size_t i = 1; i < w.mids().size(); ++i) {
        HexVertex via = w.traversed(i);
        CoverMid next = cover_step(cw.mids.back(), via, w.mids()[i], fold);
        if (fold == 0 && std::llabs(next.sheet) > window)
            throw std::out_of_range("lift_walk: universal-cover window exceeded");
        cw.mids.push_back(next);
    }
    return cw;
}

// ---------------------------------------------------------------------------
// Angles.  Midpoint coordinates (mx, my) are in units of (1/4, sqrt(3)/12);
// comparisons of arguments in [0, 2pi) reduce to region tags and integer
// cross products, so the theta order on cover points is exact.
// ---------------------------------------------------------------------------

// 0: positive x-axis (arg 0); 1: upper half; 2: negative x-axis; 3: lower.
inline int angle_region(int64_t mx, int64_t my) {
    if (my > 0) return 1;
    if (my < 0) return 3;
    return mx > 0 ? 0 : 2;
}

// Three-way comparison of arguments in [0, 2pi).
inline int arg_compare(int64_t ax, int64_t ay, int64_t bx, int64_t by) {
    int ra = angle_region(ax, ay), rb = angle_region(bx, by);
    if (ra != rb) return ra < rb ? -1 : 1;
    int64_t cross = ax * by - ay * bx;
    return cross > 0 ? -1 : (cross < 0 ? 1 : 0);
}

// Three-way comparison of the continuous angle theta = 2 pi sheet + arg.
inline int theta_compare(const CoverMid& a, const CoverMid& b) {
    if (a.sheet != b.sheet) return a.sheet < b.sheet ? -1 : 1;
    return arg_compare(a.base.mx(), a.base.my(), b.base.mx(), b.base.my());
}

// Rotation by pi/3 about the origin in midpoint units:
// real (x, y) -> (x/2 - y sqrt3/2, x sqrt3/2 + y/2).
inline std::pair<int64_t, int64_t> rotate60_mid(int64_t mx, int64_t my) {
    if ((mx - my) % 2 != 0 || (3 * mx + my) % 2 != 0)
        throw std::logic_error("rotate60_mid: non-lattice image");
    return {(mx - my) / 2, (3 * mx + my) / 2};
}

// Continuous angular winding around the origin of a midpoint path, summed
// through the traversed vertices so every increment is small.
inline double angular_winding(const std::vector<HexMid>& mids, bool closed = false) {
    std::vector<std::complex<double>> pts;
    size_t count = mids.size() + (closed ? 1 : 0);
    for (size_t i = 0; i + 1 < count; ++i) {
        const HexMid& p = mids[i % mids.size()];
        const HexMid& q = mids[(i + 1) % mids.size()];
        HexVertex via = (p.u == q.u || p.u == q.v) ? p.u : p.v;
        pts.push_back(hex_mid_pos(p));
        pts.push_back(hex_vertex_pos(via));
    }
    if (!mids.empty()) pts.push_back(hex_mid_pos(mids[closed ? 0 : mids.size() - 1]));
    double total = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) total += std::arg(pts[i + 1] / pts[i]);
    return total;
}

// Sheet displacement of the lift of a closed midpoint cycle (first midpoint
// implicitly repeated at the end), starting from sheet 0.
inline int64_t sheet_displacement(const std::vector<HexMid>& cycle, int64_t window = 8) {
    std::vector<HexMid> closed = cycle;
    closed.push_back(cycle.front());
    CoverWalk cw = lift_walk(HexWalk(std::move(closed)), 0, 0, window);
    return cw.back().sheet - cw.front().sheet;
}

// Boundary cycle of a domain's face set: the edges lying in exactly one
// face, traced into cyclic midpoint order.
inline std::vector<HexMid> domain_outline(const HexDomain& d) {
    std::map<HexMid, int> count;
    for (HexFace f : d.faces)
        for (const HexMid& e : hex_face_edges(f)) ++count[e];
    std::set<HexMid> edges;
    for (const auto& [e, c] : count)
        if (c == 1) edges.insert(e);
    if (edges.empty()) throw std::invalid_argument("domain_outline: no faces");
    std::vector<HexMid> cycle;
    HexMid start = *edges.begin();
    cycle.push_back(start);
    HexVertex prev = start.u;
    HexVertex cur = start.v;
    while (true) {
        bool moved = false;
        for (HexVertex n : hex_neighbors(cur)) {
            if (n == prev) continue;
            HexMid e(cur, n);
            if (!edges.count(e)) continue;
            if (e == start) return cycle;
            cycle.push_back(e);
            prev = cur;
            cur = n;
            moved = true;
            break;
        }
        if (!moved) throw std::logic_error("domain_outline: outline is not a single cycle");
        if (cycle.size() > edges.size()) throw std::logic_error("domain_outline: runaway trace");
    }
}

// ---------------------------------------------------------------------------
// Inner / outer classification of cover walks between boundary lifts.
// ---------------------------------------------------------------------------

enum class CoverClass { inner, outer, neither };

inline CoverClass classify_inner_outer(const CoverWalk& w, int n) {
    HexDomain dom = lambda_domain(n);
    if (w.mids.empty()) throw std::invalid_argument("classify_inner_outer: empty walk");
    if (!dom.boundary.count(w.front().base) || !dom.boundary.count(w.back().base))
        throw std::invalid_argument("classify_inner_outer: endpoints not on the boundary");
    bool inner = true, outer = true;
    for (const CoverMid& c : w.mids) {
        if (!dom.mids.count(c.base)) inner = false;
        if (dom.internal_edges.count(c.base)) outer = false;
    }
    if (inner) return CoverClass::inner;
    if (outer) return CoverClass::outer;
    return CoverClass::neither;
}

// ---------------------------------------------------------------------------
// Walk enumeration in a lifted domain: the cover analogue of `observable`.
// Walks start at z0 and move between cover midpoints whose projections lie
// in the base domain; self-avoidance is on traversed (sheet, vertex) pairs.
// ---------------------------------------------------------------------------

struct CoverSiteStats {
    double g = 0.0;
    std::complex<double> f{};
    // Arrival statistics split by the endpoint of the final edge through
    // which the walk arrived: side 0 = lexicographically smaller endpoint
    // (the lower endpoint of a vertical edge), side 1 = the larger.
    std::array<double, 2> g_side{};
    std::array<std::complex<double>, 2> f_side{};
    std::array<std::complex<double>, 2> phase_ref{};
    std::array<bool, 2> has_phase{};
    std::array<double, 2> phase_dev{};      // max |phase - phase_ref|
    std::array<uint64_t, 2> wind_mod48{};   // bitmask of winding residues mod 48
};

struct CoverField {
    std::string domain_id;
    int fold = 8;
    CoverMid z0;
    double sigma = 0.0, x = 0.0;
    std::map<CoverMid, CoverSiteStats> sites;

    const CoverSiteStats& at(const CoverMid& c) const {
        static const CoverSiteStats empty{};
        auto it = sites.find(c);
        return it == sites.end() ? empty : it->second;
    }
    double g(const CoverMid& c) const { return at(c).g; }
};

namespace coverdetail {

struct Graph {
    std::vector<HexMid> mids;
    std::unordered_map<HexMid, int, HexMidHash> mid_id;
    std::vector<HexVertex> verts;
    std::unordered_map<HexVertex, int, HexVertexHash> vert_id;
    // Per mid: (via vertex id, via b-sign < 0, to mid id, to is cut, turn sign)
    struct Arc {
        int via = 0;
        bool via_low = false;
        int to = 0;
        bool to_cut = false;
        int turn = 0;
    };
    std::vector<std::vector<Arc>> arcs;
    std::vector<bool> cut;

    explicit Graph(const HexDomain& dom) {
        for (const HexMid& m : dom.mids) {
            mid_id.emplace(m, static_cast<int>(mids.size()));
            mids.push_back(m);
        }
        auto vid = [&](HexVertex v) {
            auto [it, fresh] = vert_id.emplace(v, static_cast<int>(verts.size()));
            if (fresh) verts.push_back(v);
            return it->second;
        };
        arcs.resize(mids.size());
        cut.resize(mids.size());
        for (size_t i = 0; i < mids.size(); ++i) {
            const HexMid& m = mids[i];
            cut[i] = is_cut_mid(m);
            for (const auto& [other, via] : hex_adjacent_mids(m)) {
                auto it = mid_id.find(other);
                if (it == mid_id.end()) continue;
                Arc a;
                a.via = vid(via);
                a.via_low = via.b < 0;
                a.to = it->second;
                a.to_cut = is_cut_mid(other);
                a.turn = hex_turn_sign(m, other);
                arcs[i].push_back(a);
            }
            vid(m.u);
            vid(m.v);
        }
    }
};

}  // namespace coverdetail

// Exhaustive cover-walk field from z0 in the lift of `dom` to the fold-fold
// cover (fold >= 1) truncated by the sheet window when fold is large.  When
// `cut_at` is given, that cover midpoint becomes terminal: walks may end
// there through either half-edge but may not traverse the cut edge, which
// is the cut-vertex bookkeeping on the domain with one severed edge.
inline CoverField cover_observable(const HexDomain& dom, CoverMid z0, int fold, double sigma,
                                   double x, int length_cap = -1,
                                   std::optional<CoverMid> cut_at = std::nullopt) {
    if (fold < 1) throw std::invalid_argument("cover_observable: fold must be >= 1");
    if (!dom.mids.count(z0.base)) throw std::invalid_argument("cover_observable: z0 not in domain");
    z0.sheet = normalize_sheet(z0.sheet, fold);

    coverdetail::Graph gr(dom);
    const int nm = static_cast<int>(gr.mids.size());
    const int nv = static_cast<int>(gr.verts.size());

    struct Site {
        CoverSiteStats s;
        bool touched = false;
    };
    std::vector<Site> sites(static_cast<size_t>(nm) * fold);
    std::vector<uint8_t> used(static_cast<size_t>(nv) * fold, 0);
    auto site_at = [&](int mid, int64_t sheet) -> Site& {
        return sites[static_cast<size_t>(mid) * fold + imod(sheet, fold)];
    };

    int cut_mid = -1;
    int64_t cut_sheet = 0;
    if (cut_at) {
        auto it = gr.mid_id.find(cut_at->base);
        if (it == gr.mid_id.end())
            throw std::invalid_argument("cover_observable: cut midpoint not in domain");
        cut_mid = it->second;
        cut_sheet = normalize_sheet(cut_at->sheet, fold);
    }

    const double pi3 = kPi / 3.0;
    // side: -1 for the start, else arrival endpoint index (0 = lex smaller).
    auto contribute = [&](int mid, int64_t sheet, int side, int64_t wind, double xn) {
        Site& st = site_at(mid, sheet);
        st.touched = true;
        std::complex<double> phase = std::polar(1.0, -sigma * static_cast<double>(wind) * pi3);
        st.s.g += xn;
        st.s.f += phase * xn;
        if (side < 0) return;
        st.s.g_side[side] += xn;
        st.s.f_side[side] += phase * xn;
        if (!st.s.has_phase[side]) {
            st.s.has_phase[side] = true;
            st.s.phase_ref[side] = phase;
        } else {
            st.s.phase_dev[side] =
                std::max(st.s.phase_dev[side], std::abs(phase - st.s.phase_ref[side]));
        }
        st.s.wind_mod48[side] |= uint64_t{1} << imod(wind, 48);
    };

    const int z0_mid = gr.mid_id.at(z0.base);
    contribute(z0_mid, z0.sheet, -1, 0, 1.0);

    struct Frame {
        int mid;
        int64_t sheet;
    };
    std::function<void(int, int64_t, int64_t, double, int)> extend = [&](int mid, int64_t sheet,
                                                                         int64_t wind, double xn,
                                                                         int len) {
        if (cut_mid >= 0 && mid == cut_mid && sheet == cut_sheet) return;  // terminal
        if (length_cap >= 0 && len >= length_cap) return;
        for (const auto& a : gr.arcs[mid]) {
            int64_t dep = sheet;
            if (gr.cut[mid] && a.via_low) dep = imod(dep - 1, fold);
            size_t vkey = static_cast<size_t>(a.via) * fold + dep;
            if (used[vkey]) continue;
            int64_t arr = dep;
            if (a.to_cut && a.via_low) arr = imod(arr + 1, fold);
            used[vkey] = 1;
            int side = (gr.mids[a.to].v == gr.verts[a.via]) ? 1 : 0;
            contribute(a.to, arr, side, wind + a.turn, xn * x);
            extend(a.to, arr, wind + a.turn, xn * x, len + 1);
            used[vkey] = 0;
        }
    };
    extend(z0_mid, z0.sheet, 0, 1.0, 0);

    CoverField out;
    out.domain_id = dom.id;
    out.fold = fold;
    out.z0 = z0;
    out.sigma = sigma;
    out.x = x;
    for (int m = 0; m < nm; ++m)
        for (int s = 0; s < fold; ++s) {
            const Site& st = sites[static_cast<size_t>(m) * fold + s];
            if (st.touched) out.sites.emplace(CoverMid{s, gr.mids[m]}, st.s);
        }
    return out;
}

// ---------------------------------------------------------------------------
// The boundary-sum inequality on the eight-fold cover:
//   G_{Lambda_n}(o, z0)  <=  8 / cos(3 pi / 16) * sum_z G_{Lambda^8_n}(zbar0, z).
// The left side is enumerated exactly.  The right side admits cover walks
// that wind many times through the eight sheets, far too many to list, so
// it is enumerated exactly *up to a length cap*; since every term is
// positive the capped sum is a strict lower bound, and lhs <= capped rhs
// certifies the full inequality.  The cut-vertex partition audit compares
// severed and unsevered enumerations at the same cap, where the equality
// is exact.
// ---------------------------------------------------------------------------

struct CoverBoundaryReport {
    int n = 0;
    double x = 0.0;
    HexMid z0;
    int rhs_length_cap = 0;
    double lhs = 0.0;       // G_{Lambda_n}(o, z0), exact
    double rhs_sum = 0.0;   // capped boundary sum of G from zbar0 (lower bound)
    double factor = 0.0;    // 8 / cos(3 pi / 16)
    double rhs = 0.0;
    bool holds = false;
    size_t preimages_of_o = 0;
    bool preimages_distinct = false;
    // For each audited preimage v of o: |g(v+) + g(v-) - G(zbar0, v)|,
    // where the split sides come from the severed-edge enumeration.
    std::vector<double> cut_partition_err;
    bool cut_partition_ok = false;
};

inline HexMid canonical_boundary_mid(const HexDomain& dom) { return *dom.boundary.begin(); }

inline CoverBoundaryReport lemma_a1_check(int n, std::optional<HexMid> z0_opt = std::nullopt,
                                          double x = kXCritical, int cut_audits = 8,
                                          int rhs_length_cap = 32) {
    HexDomain dom = lambda_domain(n);
    HexMid o = hex_origin_mid();
    HexMid z0 = z0_opt ? *z0_opt : canonical_boundary_mid(dom);
    if (!dom.boundary.count(z0)) throw std::invalid_argument("lemma_a1_check: z0 not on boundary");

    CoverBoundaryReport rep;
    rep.n = n;
    rep.x = x;
    rep.z0 = z0;
    rep.rhs_length_cap = rhs_length_cap;
    rep.factor = 8.0 / std::cos(3.0 * kPi / 16.0);

    // Left side: exact planar enumeration from z0 (reversal gives G(o, z0)).
    rep.lhs = observable(dom, z0, 0.0, x).g(o);

    // Right side: capped enumeration from the sheet-0 lift of z0.
    CoverMid zbar0{0, z0};
    CoverField fld = cover_observable(dom, zbar0, 8, kSigmaCritical, x, rhs_length_cap);
    for (const HexMid& b : dom.boundary)
        for (const CoverMid& c : cover_preimages(b, 8)) rep.rhs_sum += fld.g(c);
    rep.rhs = rep.factor * rep.rhs_sum;
    rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-12);

    std::vector<CoverMid> pre = cover_preimages(o, 8);
    std::set<CoverMid> uniq(pre.begin(), pre.end());
    rep.preimages_of_o = uniq.size();
    rep.preimages_distinct = uniq.size() == pre.size();

    // Cut-vertex bookkeeping: severing the edge at preimage v must leave the
    // walks ending at v intact, split between the two half-edge arrivals.
    rep.cut_partition_ok = true;
    for (int a = 0; a < std::min<int>(cut_audits, 8); ++a) {
        CoverMid v = pre[a];
        CoverField cutfld = cover_observable(dom, zbar0, 8, kSigmaCritical, x, rhs_length_cap, v);
        const CoverSiteStats& cs = cutfld.at(v);
        double err = std::abs(cs.g_side[0] + cs.g_side[1] - fld.g(v));
        rep.cut_partition_err.push_back(err);
        if (err > 1e-9 * std::max(1.0, fld.g(v))) rep.cut_partition_ok = false;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Winding-phase audit at a preimage of o on the eight-fold cover.  All
// walks from a boundary lift that end at the severed midpoint through a
// given half-edge have windings in a single residue class mod 48 (i.e.
// differing by multiples of 16 pi), so at sigma = 5/8 they share one phase;
// the two arrival classes are offset by exactly e^{i sigma pi}.
// ---------------------------------------------------------------------------

struct PhaseAuditReport {
    int n = 0;
    double sigma = 0.0;
    bool sixteen_pi_identity = false;  // sigma * 16 pi = 0 mod 2 pi, exactly
    int plus_side = -1;                // arrival side labelled plus
    double spread_plus = 0.0;
    double spread_minus = 0.0;
    bool residues_single_class = false;
    std::complex<double> offset{};  // phase(v-) / phase(v+)
    double offset_err = 0.0;        // |offset - e^{i sigma pi}|
};

inline PhaseAuditReport winding_phase_audit(int n, double sigma = kSigmaCritical,
                                            double x = kXCritical, int length_cap = 32) {
    HexDomain dom = lambda_domain(n);
    HexMid z0 = canonical_boundary_mid(dom);
    CoverMid zbar0{0, z0};
    CoverMid v{0, hex_origin_mid()};
    CoverField fld = cover_observable(dom, zbar0, 8, sigma, x, length_cap, v);
    const CoverSiteStats& st = fld.at(v);

    PhaseAuditReport rep;
    rep.n = n;
    rep.sigma = sigma;
    // sigma * 16 pi = (5/8) * 48 * (pi/3); divisibility by 2 pi = 6 * (pi/3).
    rep.sixteen_pi_identity = (5 * 48) % (8 * 6) == 0;
    rep.residues_single_class = true;
    for (int side : {0, 1}) {
        if (!st.has_phase[side])
            throw std::logic_error("winding_phase_audit: an arrival class is empty");
        uint64_t mask = st.wind_mod48[side];
        if ((mask & (mask - 1)) != 0) rep.residues_single_class = false;
    }
    std::complex<double> target = std::polar(1.0, sigma * kPi);
    double e01 = std::abs(st.phase_ref[0] / st.phase_ref[1] - target);  // plus = side 1
    double e10 = std::abs(st.phase_ref[1] / st.phase_ref[0] - target);  // plus = side 0
    rep.plus_side = e10 <= e01 ? 0 : 1;
    int minus = 1 - rep.plus_side;
    rep.offset = st.phase_ref[minus] / st.phase_ref[rep.plus_side];
    rep.offset_err = std::abs(rep.offset - target);
    rep.spread_plus = st.phase_dev[rep.plus_side];
    rep.spread_minus = st.phase_dev[minus];
    return rep;
}

// ---------------------------------------------------------------------------
// U^inf_k membership: a walk lies in the cover complement of Lambda_k when
// none of its midpoints is an internal edge of Lambda_k and none of its
// traversed vertices is strictly inside.
// ---------------------------------------------------------------------------

inline bool walk_avoids_lambda_lift(const CoverWalk& w, const HexDomain& lambda_k) {
    for (const CoverMid& c : w.mids)
        if (lambda_k.internal_edges.count(c.base)) return false;
    HexWalk proj = w.projected();
    for (size_t i = 1; i < w.mids.size(); ++i)
        if (lambda_k.inside.count(proj.traversed(i))) return false;
    return true;
}

// All cover walks of length <= max_len from `start` that stay in the
// complement lift U^inf_k within the sheet window.  Desk-scale audit tool.
inline std::vector<CoverWalk> cover_complement_walks(int k, CoverMid start, int max_len,
                                                     int64_t window = 3) {
    HexDomain lam = lambda_domain(k);
    if (lam.internal_edges.count(start.base))
        throw std::invalid_argument("cover_complement_walks: start inside Lambda_k");
    std::vector<CoverWalk> out;
    CoverWalk cur;
    cur.fold = 0;
    cur.mids.push_back(start);
    std::set<std::pair<int64_t, HexVertex>> used;
    std::function<void()> go = [&]() {
        out.push_back(cur);
        if (static_cast<int>(cur.length()) >= max_len) return;
        const CoverMid c = cur.mids.back();
        for (const auto& [to, via] : hex_adjacent_mids(c.base)) {
            if (!hex_edge_valid(to) || lam.internal_edges.count(to)) continue;
            if (lam.inside.count(via)) continue;
            int64_t dep = departure_sheet(c, via);
            if (used.count({dep, via})) continue;
            CoverMid next = cover_step(c, via, to, 0);
            if (std::llabs(next.sheet) > window)
                throw std::out_of_range("cover_complement_walks: window exceeded");
            used.insert({dep, via});
            cur.mids.push_back(next);
            go();
            cur.mids.pop_back();
            used.erase({dep, via});
        }
    };
    go();
    return out;
}

// ---------------------------------------------------------------------------
// Good polygons.  Embedding U^inf_k in R^3 with vertical coordinate the
// continuous angle theta, a polygon is (i, j)-good when its unique lowest
// edge is the sheet-0 lift of the vertical edge centred at (0, sqrt3 i / 2)
// and its unique highest edge is the lift of a rotation of the radius-j
// axis edge by a positive multiple of pi/3, at exactly that height.
// ---------------------------------------------------------------------------

// The vertical edge of H centred on the positive y-axis at radius
// sqrt(3) i / 2; exists exactly for odd i >= 1.
inline std::optional<HexMid> axis_edge(int i) {
    if (i < 1 || i % 2 == 0) return std::nullopt;
    HexVertex lo{0, 3 * static_cast<int64_t>(i) - 1}, hi{0, 3 * static_cast<int64_t>(i) + 1};
    HexMid m(lo, hi);
    if (!hex_edge_valid(m)) return std::nullopt;
    return m;
}

// If `top` is the lift of a rotation of an axis edge by l pi/3 with l >= 1
// at height exactly l pi/3 above the sheet-0 axis, return (j, l).
inline std::optional<std::pair<int, int>> classify_top_edge(const CoverMid& top) {
    int64_t mx = top.base.mx(), my = top.base.my();
    int64_t norm = 3 * mx * mx + my * my;
    if (norm % 36 != 0) return std::nullopt;
    int64_t j2 = norm / 36;
    auto j = static_cast<int64_t>(std::llround(std::sqrt(static_cast<double>(j2))));
    while (j * j > j2) --j;
    while (j * j < j2) ++j;
    if (j * j != j2 || j < 1 || j % 2 == 0) return std::nullopt;
    int64_t cx = 0, cy = 6 * j;
    for (int r = 0; r < 6; ++r) {
        if (cx == mx && cy == my) {
            int64_t l = 6 * top.sheet + (r == 5 ? -1 : r);
            if (l < 1) return std::nullopt;
            return std::make_pair(static_cast<int>(j), static_cast<int>(l));
        }
        std::tie(cx, cy) = rotate60_mid(cx, cy);
    }
    return std::nullopt;
}

struct GoodPolygonCensus {
    int k = 0;
    int i_max = 0;
    int n_cap = 0;
    int64_t window = 3;
    // (length n, lowest radius i, highest radius j) -> count
    std::map<std::tuple<int, int, int>, long long> counts;
    // First cycle found per table entry, closed (last midpoint = first).
    std::map<std::tuple<int, int, int>, CoverWalk> witnesses;

    long long g(int n, int i, int j) const {
        auto it = counts.find({n, i, j});
        return it == counts.end() ? 0 : it->second;
    }
};

// Exhaustive census of good polygons of length <= n_cap in U^inf_k with
// lowest-edge radius i <= i_max, within the universal-cover sheet window.
// Each polygon is enumerated once: the cycle is rooted at its lowest edge
// and oriented to leave through the upper endpoint first.
inline GoodPolygonCensus good_polygon_census(int k, int i_max, int n_cap, int64_t window = 3) {
    if (k < 0 || n_cap < 1 || i_max < 1) throw std::invalid_argument("good_polygon_census: caps");
    GoodPolygonCensus cs;
    cs.k = k;
    cs.i_max = i_max;
    cs.n_cap = n_cap;
    cs.window = window;
    HexDomain lam = lambda_domain(k);

    for (int i = 1; i <= i_max; i += 2) {
        std::optional<HexMid> e0 = axis_edge(i);
        if (!e0 || lam.internal_edges.count(*e0)) continue;
        CoverMid start{0, *e0};

        std::vector<CoverMid> path{start};
        std::set<std::pair<int64_t, HexVertex>> used;
        std::function<void()> grow = [&]() {
            const CoverMid c = path.back();
            int steps_left = n_cap - static_cast<int>(path.size());
            for (const auto& [to, via] : hex_adjacent_mids(c.base)) {
                if (path.size() == 1 && !(via == e0->v)) continue;  // orientation pin
                if (!hex_edge_valid(to) || lam.internal_edges.count(to)) continue;
                if (lam.inside.count(via)) continue;
                int64_t dep = departure_sheet(c, via);
                if (used.count({dep, via})) continue;
                CoverMid next = cover_step(c, via, to, 0);
                if (std::llabs(next.sheet) > window) continue;
                if (next == start) {
                    if (path.size() < 3) continue;
                    // Close the cycle; the lowest edge is `start` by the
                    // sector pruning below.  Classify the highest edge.
                    const CoverMid* top = &path[0];
                    int ties = 0;
                    for (const CoverMid& m : path) {
                        int cmpv = theta_compare(m, *top);
                        if (cmpv > 0) {
                            top = &m;
                            ties = 0;
                        } else if (cmpv == 0 && !(m == *top)) {
                            ++ties;
                        }
                    }
                    if (ties == 0) {
                        if (auto jl = classify_top_edge(*top)) {
                            std::tuple<int, int, int> key{static_cast<int>(path.size()), i,
                                                          jl->first};
                            if (++cs.counts[key] == 1) {
                                CoverWalk w;
                                w.fold = 0;
                                w.mids = path;
                                w.mids.push_back(start);
                                cs.witnesses.emplace(key, std::move(w));
                            }
                        }
                    }
                    continue;
                }
                // Unique-lowest-edge sector: every other edge strictly above.
                if (theta_compare(next, start) <= 0) continue;
                // Return-distance pruning in chart units (max step is 3).
                int64_t dx = std::llabs(next.base.mx() - e0->mx());
                int64_t dy = std::llabs(next.base.my() - e0->my());
                if ((std::max(dx, dy) + 2) / 3 > steps_left) continue;
                used.insert({dep, via});
                path.push_back(next);
                grow();
                path.pop_back();
                used.erase({dep, via});
            }
        };
        grow();
    }
    return cs;
}

inline std::string census_to_csv(const GoodPolygonCensus& cs) {
    std::string out = "n,i,j,g\n";
    for (const auto& [key, cnt] : cs.counts) {
        auto [n, i, j] = key;
        out += std::to_string(n) + "," + std::to_string(i) + "," + std::to_string(j) + "," +
               std::to_string(cnt) + "\n";
    }
    return out;
}

// Symmetry and supermultiplicativity over the computed table.
struct CensusRelationReport {
    size_t symmetry_pairs = 0;
    size_t symmetry_failures = 0;
    size_t super_triples = 0;
    size_t super_failures = 0;
    size_t nonzero_super_triples = 0;  // triples with a strictly positive product
};

inline CensusRelationReport census_relations(const GoodPolygonCensus& cs) {
    CensusRelationReport rep;
    std::set<int> lengths, radii;
    for (const auto& [key, cnt] : cs.counts) {
        auto [n, i, j] = key;
        (void)cnt;
        lengths.insert(n);
        radii.insert(i);
        radii.insert(j);
    }
    for (int n : lengths)
        for (int i : radii)
            for (int j : radii) {
                if (i > cs.i_max || j > cs.i_max) continue;
                ++rep.symmetry_pairs;
                if (cs.g(n, i, j) != cs.g(n, j, i)) ++rep.symmetry_failures;
            }
    for (int n : lengths)
        for (int l : lengths) {
            if (n + l - 2 > cs.n_cap) continue;
            for (int i : radii)
                for (int j : radii) {
                    if (i > cs.i_max || j > cs.i_max) continue;
                    long long prod = cs.g(n, i, j) * cs.g(l, j, i);
                    ++rep.super_triples;
                    if (prod > 0) ++rep.nonzero_super_triples;
                    if (cs.g(n + l - 2, i, i) < prod) ++rep.super_failures;
                }
        }
    return rep;
}

inline nlohmann::json cover_report_to_json(const CoverBoundaryReport& r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["x"] = r.x;
    j["z0"] = hex_edge_id(r.z0);
    j["lhs"] = r.lhs;
    j["rhs_sum"] = r.rhs_sum;
    j["factor"] = r.factor;
    j["rhs"] = r.rhs;
    j["holds"] = r.holds;
    j["preimages_of_o"] = r.preimages_of_o;
    j["cut_partition_ok"] = r.cut_partition_ok;
    j["cut_partition_err"] = r.cut_partition_err;
    return j;
}

}  // namespace sawlab

#endif  // SAWLAB_COVERS_HPP

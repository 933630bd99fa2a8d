// Walks on the hexagonal lattice: ordered midpoint sequences.
//
// Length counts traversed H-vertices (#midpoints - 1); self-avoidance means
// no traversed vertex repeats; length-zero walks are permitted.
#ifndef SAWLAB_HEXWALK_HPP
#define SAWLAB_HEXWALK_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "sawlab/hexlattice.hpp"

namespace sawlab {

class HexWalk {
  public:
    HexWalk() = default;
    explicit HexWalk(std::vector<HexMid> mids) : mids_(std::move(mids)) {}
    explicit HexWalk(HexMid start) : mids_{start} {}

    const std::vector<HexMid>& mids() const { return mids_; }
    size_t length() const { return mids_.empty() ? 0 : mids_.size() - 1; }
    HexMid front() const { return mids_.front(); }
    HexMid back() const { return mids_.back(); }

    // The vertex traversed between midpoints i-1 and i (1-based step index).
    HexVertex traversed(size_t i) const {
        const HexMid& p = mids_[i - 1];
        const HexMid& q = mids_[i];
        if (p.u == q.u || p.u == q.v) return p.u;
        return p.v;
    }
    std::vector<HexVertex> traversed_vertices() const {
        std::vector<HexVertex> vs;
        for (size_t i = 1; i < mids_.size(); ++i) vs.push_back(traversed(i));
        return vs;
    }

    bool adjacent_ok() const {
        for (size_t i = 1; i < mids_.size(); ++i) {
            const HexMid& p = mids_[i - 1];
            const HexMid& q = mids_[i];
            if (p == q) return false;
            if (!(p.u == q.u || p.u == q.v || p.v == q.u || p.v == q.v)) return false;
        }
        return true;
    }

    bool self_avoiding() const {
        std::unordered_set<HexVertex, HexVertexHash> seen;
        for (size_t i = 1; i < mids_.size(); ++i)
            if (!seen.insert(traversed(i)).second) return false;
        return true;
    }

    // Midpoint heights in units of sqrt(3)/12.
    int64_t y_of(size_t i) const { return mids_[i].my(); }
    int64_t y_min() const {
        int64_t m = mids_[0].my();
        for (const HexMid& z : mids_) m = std::min(m, z.my());
        return m;
    }
    int64_t y_max() const {
        int64_t m = mids_[0].my();
        for (const HexMid& z : mids_) m = std::max(m, z.my());
        return m;
    }

    // Bridge relative to the start midpoint: 0 < y(g_k) - y(g_0) <= y(g_n) - y(g_0).
    bool is_bridge() const {
        if (length() == 0) return false;
        int64_t y0 = mids_.front().my(), yn = mids_.back().my();
        for (size_t i = 1; i < mids_.size(); ++i) {
            int64_t y = mids_[i].my();
            if (y <= y0 || y > yn) return false;
        }
        return self_avoiding();
    }

    HexWalk translated(HexVertex d) const {
        std::vector<HexMid> ms(mids_);
        for (HexMid& m : ms) m = m.translated(d);
        return HexWalk(std::move(ms));
    }

    // Vertical reflection (b -> -b); a lattice symmetry of H.
    HexWalk reflect_vertical() const {
        std::vector<HexMid> ms;
        ms.reserve(mids_.size());
        for (const HexMid& m : mids_)
            ms.push_back(HexMid(HexVertex{m.u.a, -m.u.b}, HexVertex{m.v.a, -m.v.b}));
        return HexWalk(std::move(ms));
    }

    HexWalk reversed() const {
        std::vector<HexMid> ms(mids_.rbegin(), mids_.rend());
        return HexWalk(std::move(ms));
    }

    friend bool operator==(const HexWalk& a, const HexWalk& b) { return a.mids_ == b.mids_; }
    friend bool operator!=(const HexWalk& a, const HexWalk& b) { return !(a == b); }

    // Serialization: "ax,ay|bx,by" start edge, then ":+" or ":-" for the
    // first traversed vertex (the lexicographically larger or smaller
    // endpoint), then ":" and turn letters over {L, R}.
    std::string serialize() const;
    static HexWalk deserialize(const std::string& s);

  private:
    std::vector<HexMid> mids_;
};

// Sign of the turn at the vertex shared by two consecutive midpoints,
// computed from the half-edge directions into and out of that vertex (a
// vertex sits at (2a, 2b) in midpoint units of (1/4, sqrt(3)/12)).  The two
// edges of a hexagonal vertex always meet at +-pi/3, so the cross product
// never vanishes.  Returns +1 for a left turn, -1 for a right turn.
inline int hex_turn_sign(const HexMid& m1, const HexMid& m2) {
    HexVertex v = (m1.u == m2.u || m1.u == m2.v) ? m1.u : m1.v;
    int64_t d1x = 2 * v.a - m1.mx(), d1y = 2 * v.b - m1.my();
    int64_t d2x = m2.mx() - 2 * v.a, d2y = m2.my() - 2 * v.b;
    int64_t cross = d1x * d2y - d1y * d2x;
    if (cross == 0) throw std::logic_error("hex walk does not turn");
    return cross > 0 ? 1 : -1;
}

// Winding bookkeeping: each traversed vertex contributes +-pi/3.
struct WindingTotal {
    int64_t left = 0;
    int64_t right = 0;
    // Total winding in units of pi/3.
    int64_t sixths() const { return left - right; }
    double radians() const {
        return static_cast<double>(sixths()) * 3.14159265358979323846 / 3.0;
    }
};

inline WindingTotal hex_winding(const HexWalk& w) {
    WindingTotal t;
    const auto& ms = w.mids();
    for (size_t i = 1; i < ms.size(); ++i) {
        if (hex_turn_sign(ms[i - 1], ms[i]) > 0)
            ++t.left;
        else
            ++t.right;
    }
    return t;
}

inline std::string HexWalk::serialize() const {
    std::string s = hex_edge_id(mids_.front());
    if (mids_.size() < 2) return s;
    HexVertex first = traversed(1);
    s += (first == mids_.front().v) ? ":+" : ":-";
    s += ":";
    for (size_t i = 1; i < mids_.size(); ++i)
        s.push_back(hex_turn_sign(mids_[i - 1], mids_[i]) > 0 ? 'L' : 'R');
    return s;
}

inline HexWalk HexWalk::deserialize(const std::string& s) {
    auto parse_vertex = [](const std::string& t) {
        size_t c = t.find(',');
        return HexVertex{std::stoll(t.substr(0, c)), std::stoll(t.substr(c + 1))};
    };
    size_t bar = s.find('|');
    size_t colon = s.find(':', bar);
    HexVertex u = parse_vertex(s.substr(0, bar));
    std::string rest = (colon == std::string::npos) ? s.substr(bar + 1)
                                                    : s.substr(bar + 1, colon - bar - 1);
    HexVertex v = parse_vertex(rest);
    std::vector<HexMid> ms{HexMid(u, v)};
    if (colon == std::string::npos) return HexWalk(std::move(ms));
    char sign = s[colon + 1];
    std::string turns = s.substr(colon + 3);
    HexVertex via = (sign == '+') ? ms[0].v : ms[0].u;
    // First step: there are two edges at `via` besides the start edge; the
    // very first turn letter (if any) selects between them, so we emit the
    // walk incrementally: place both candidates and match turns greedily.
    // Convention: the first continuation is chosen so that the *first* turn
    // letter in the string describes the turn at `via`.
    size_t ti = 0;
    HexVertex cur = via;
    while (ti < turns.size()) {
        std::vector<HexMid> nexts;
        for (HexVertex n : hex_neighbors(cur)) {
            HexMid cand(cur, n);
            if (cand == ms.back()) continue;
            nexts.push_back(cand);
        }
        std::sort(nexts.begin(), nexts.end());
        bool found = false;
        HexMid chosen;
        for (const HexMid& c : nexts) {
            char letter = hex_turn_sign(ms.back(), c) > 0 ? 'L' : 'R';
            if (letter == turns[ti]) {
                chosen = c;
                found = true;
                break;
            }
        }
        if (!found) throw std::invalid_argument("bad hex walk string");
        ms.push_back(chosen);
        ++ti;
        cur = (chosen.u == cur) ? chosen.v : chosen.u;
    }
    return HexWalk(std::move(ms));
}

// ---------------------------------------------------------------------------
// Hex polygons: cycles of H-edges (every incident vertex has degree 2).
// ---------------------------------------------------------------------------

struct HexPolygon {
    std::vector<HexMid> edges;  // sorted canonical order

    static HexPolygon from_edges(std::vector<HexMid> es) {
        std::sort(es.begin(), es.end());
        return HexPolygon{std::move(es)};
    }

    size_t size() const { return edges.size(); }

    std::vector<HexVertex> vertices() const {
        std::set<HexVertex> vs;
        for (const HexMid& e : edges) {
            vs.insert(e.u);
            vs.insert(e.v);
        }
        return std::vector<HexVertex>(vs.begin(), vs.end());
    }

    int64_t y_min() const {
        int64_t m = edges[0].my();
        for (const HexMid& e : edges) m = std::min(m, e.my());
        return m;
    }
    int64_t y_max() const {
        int64_t m = edges[0].my();
        for (const HexMid& e : edges) m = std::max(m, e.my());
        return m;
    }

    HexPolygon translated(HexVertex d) const {
        std::vector<HexMid> es;
        es.reserve(edges.size());
        for (const HexMid& e : edges) es.push_back(e.translated(d));
        return from_edges(std::move(es));
    }

    bool valid() const {
        if (edges.empty()) return false;
        std::unordered_set<HexMid, HexMidHash> eset(edges.begin(), edges.end());
        if (eset.size() != edges.size()) return false;
        std::set<HexVertex> vs;
        for (const HexMid& e : edges) {
            vs.insert(e.u);
            vs.insert(e.v);
        }
        for (HexVertex v : vs) {
            int deg = 0;
            for (HexVertex n : hex_neighbors(v))
                if (eset.count(HexMid(v, n))) ++deg;
            if (deg != 2) return false;
        }
        // Single-cycle connectivity.
        HexVertex start = edges.front().u, prev = start;
        HexVertex cur = edges.front().v;
        size_t used = 1;
        while (!(cur == start)) {
            bool moved = false;
            for (HexVertex n : hex_neighbors(cur)) {
                if (n == prev) continue;
                if (eset.count(HexMid(cur, n))) {
                    prev = cur;
                    cur = n;
                    ++used;
                    moved = true;
                    break;
                }
            }
            if (!moved) return false;
        }
        return used == edges.size();
    }
};

}  // namespace sawlab

#endif  // SAWLAB_HEXWALK_HPP

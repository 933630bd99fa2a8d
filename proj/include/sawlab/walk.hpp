// Square-lattice walks, bridges, half-space walks, polygons and traces.
#ifndef SAWLAB_WALK_HPP
#define SAWLAB_WALK_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "sawlab/geometry.hpp"

namespace sawlab {

// A walk on Z^2: an ordered list of lattice sites with consecutive sites
// adjacent.  Length is the number of steps (= points - 1).
class Walk {
  public:
    Walk() : pts_{Pt{0, 0}} {}
    explicit Walk(std::vector<Pt> pts) : pts_(std::move(pts)) {
        if (pts_.empty()) pts_.push_back({0, 0});
    }
    static Walk from_steps(const std::string& steps, Pt start = {0, 0}) {
        std::vector<Pt> pts{start};
        for (char c : steps) pts.push_back(pts.back() + step_vec(c));
        return Walk(std::move(pts));
    }

    const std::vector<Pt>& points() const { return pts_; }
    size_t length() const { return pts_.size() - 1; }
    Pt front() const { return pts_.front(); }
    Pt back() const { return pts_.back(); }
    Pt operator[](size_t i) const { return pts_[i]; }

    std::string steps() const {
        std::string s;
        s.reserve(length());
        for (size_t i = 1; i < pts_.size(); ++i)
            s.push_back(step_letter(pts_[i] - pts_[i - 1]));
        return s;
    }

    bool adjacent_ok() const {
        for (size_t i = 1; i < pts_.size(); ++i) {
            Pt d = pts_[i] - pts_[i - 1];
            if (std::abs(d.x) + std::abs(d.y) != 1) return false;
        }
        return true;
    }

    bool self_avoiding() const {
        std::unordered_set<Pt, PtHash> seen;
        for (Pt p : pts_)
            if (!seen.insert(p).second) return false;
        return true;
    }

    // First repeated site, if any (for concatenation error reporting).
    std::optional<Pt> first_repeat() const {
        std::unordered_set<Pt, PtHash> seen;
        for (Pt p : pts_)
            if (!seen.insert(p).second) return p;
        return std::nullopt;
    }

    // Bridge: starts at O with 0 < y(g_k) <= y(g_n) for 1 <= k <= n.
    bool is_bridge() const {
        if (pts_.front() != Pt{0, 0}) return false;
        int64_t top = pts_.back().y;
        for (size_t i = 1; i < pts_.size(); ++i)
            if (pts_[i].y <= 0 || pts_[i].y > top) return false;
        return length() > 0 && self_avoiding();
    }

    // Vertical reflection of a bridge.
    bool is_reflected_bridge() const { return reflect_vertical().is_bridge(); }

    // Half-space walk: starts at O with y(g_k) > 0 for all k >= 1.
    bool is_half_space() const {
        if (pts_.front() != Pt{0, 0}) return false;
        for (size_t i = 1; i < pts_.size(); ++i)
            if (pts_[i].y <= 0) return false;
        return self_avoiding();
    }

    // Closing walk: self-avoiding with endpoints one step apart (odd length).
    bool is_closing() const {
        Pt d = pts_.back() - pts_.front();
        return self_avoiding() && length() >= 3 &&
               std::abs(d.x) + std::abs(d.y) == 1;
    }

    int64_t height() const { return pts_.back().y - pts_.front().y; }
    int64_t y_min() const {
        int64_t m = pts_[0].y;
        for (Pt p : pts_) m = std::min(m, p.y);
        return m;
    }
    int64_t y_max() const {
        int64_t m = pts_[0].y;
        for (Pt p : pts_) m = std::max(m, p.y);
        return m;
    }
    int64_t x_min() const {
        int64_t m = pts_[0].x;
        for (Pt p : pts_) m = std::min(m, p.x);
        return m;
    }
    int64_t x_max() const {
        int64_t m = pts_[0].x;
        for (Pt p : pts_) m = std::max(m, p.x);
        return m;
    }

    Walk translated(Pt d) const {
        std::vector<Pt> pts(pts_);
        for (Pt& p : pts) p = p + d;
        return Walk(std::move(pts));
    }
    Walk reflect_vertical() const {
        std::vector<Pt> pts(pts_);
        for (Pt& p : pts) p = tau(p);
        return Walk(std::move(pts));
    }
    Walk reflect_horizontal() const {
        std::vector<Pt> pts(pts_);
        for (Pt& p : pts) p = mirror_h(p);
        return Walk(std::move(pts));
    }
    Walk rotate90() const {
        std::vector<Pt> pts(pts_);
        for (Pt& p : pts) p = rot90(p);
        return Walk(std::move(pts));
    }
    Walk reversed() const {
        std::vector<Pt> pts(pts_.rbegin(), pts_.rend());
        return Walk(std::move(pts));
    }
    // Subwalk over point indices [i, j].
    Walk sub(size_t i, size_t j) const {
        return Walk(std::vector<Pt>(pts_.begin() + i, pts_.begin() + j + 1));
    }

    std::vector<Edge> edges() const {
        std::vector<Edge> es;
        es.reserve(length());
        for (size_t i = 1; i < pts_.size(); ++i)
            es.emplace_back(pts_[i - 1], pts_[i]);
        return es;
    }

    friend bool operator==(const Walk& a, const Walk& b) { return a.pts_ == b.pts_; }
    friend bool operator!=(const Walk& a, const Walk& b) { return !(a == b); }

  private:
    std::vector<Pt> pts_;
};

// Concatenation g . g2 per the standard definition: translate g2 so that it
// starts at the end of g and append.  Throws nothing; the caller may test
// self-avoidance (concatenating bridges never fails).
inline Walk concatenate(const Walk& g, const Walk& g2) {
    std::vector<Pt> pts = g.points();
    Pt off = g.back() - g2.front();
    const auto& q = g2.points();
    for (size_t i = 1; i < q.size(); ++i) pts.push_back(q[i] + off);
    return Walk(std::move(pts));
}

// ---------------------------------------------------------------------------
// Polygon traces: translation-equivalence classes of closed edge sets.
// ---------------------------------------------------------------------------

// Geometry of a polygon edge set: height, width and line-width.
struct PolyGeometry {
    int64_t h = 0;   // y_max - y_min over vertices
    int64_t w = 0;   // x_max - x_min over vertices
    int64_t lw = 0;  // max over rows y of (x_max - x_min) within that row
};

class PolygonTrace {
  public:
    PolygonTrace() = default;

    // Build from an arbitrary representative edge set; canonicalizes to the
    // lexicographically least translate (least vertex becomes the origin).
    static PolygonTrace from_edges(std::vector<Edge> es) {
        PolygonTrace t;
        std::sort(es.begin(), es.end());
        Pt lo = es.empty() ? Pt{0, 0} : es.front().a;
        for (const Edge& e : es) {
            if (e.a < lo) lo = e.a;
            if (e.b < lo) lo = e.b;
        }
        t.edges_.reserve(es.size());
        for (const Edge& e : es) t.edges_.push_back(e.translated({-lo.x, -lo.y}));
        std::sort(t.edges_.begin(), t.edges_.end());
        return t;
    }

    // Construct the trace of a closed walk (first point == last point).
    static PolygonTrace from_cycle(const std::vector<Pt>& cyc) {
        std::vector<Edge> es;
        for (size_t i = 1; i < cyc.size(); ++i) es.emplace_back(cyc[i - 1], cyc[i]);
        return from_edges(std::move(es));
    }

    const std::vector<Edge>& edges() const { return edges_; }
    size_t length() const { return edges_.size(); }

    std::vector<Pt> vertices() const {
        std::set<Pt> vs;
        for (const Edge& e : edges_) {
            vs.insert(e.a);
            vs.insert(e.b);
        }
        return std::vector<Pt>(vs.begin(), vs.end());
    }

    // Validity: every vertex has degree exactly two and the edge set is a
    // single connected cycle.
    bool valid() const;

    PolyGeometry geometry() const {
        PolyGeometry g;
        auto vs = vertices();
        if (vs.empty()) return g;
        int64_t xmin = vs[0].x, xmax = vs[0].x, ymin = vs[0].y, ymax = vs[0].y;
        for (Pt p : vs) {
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
        g.h = ymax - ymin;
        g.w = xmax - xmin;
        // Line-width: per-row horizontal spread.
        for (int64_t y = ymin; y <= ymax; ++y) {
            int64_t rxmin = 0, rxmax = 0;
            bool seen = false;
            for (Pt p : vs) {
                if (p.y != y) continue;
                if (!seen) {
                    rxmin = rxmax = p.x;
                    seen = true;
                } else {
                    rxmin = std::min(rxmin, p.x);
                    rxmax = std::max(rxmax, p.x);
                }
            }
            if (seen) g.lw = std::max(g.lw, rxmax - rxmin);
        }
        return g;
    }

    friend bool operator==(const PolygonTrace& a, const PolygonTrace& b) {
        return a.edges_ == b.edges_;
    }
    friend bool operator<(const PolygonTrace& a, const PolygonTrace& b) {
        return a.edges_ < b.edges_;
    }

  private:
    std::vector<Edge> edges_;  // sorted, anchored at the canonical translate
};

inline bool PolygonTrace::valid() const {
    if (edges_.empty() || edges_.size() % 2 != 0) return false;
    std::unordered_set<Pt, PtHash> verts;
    std::unordered_set<Edge, EdgeHash> eset(edges_.begin(), edges_.end());
    if (eset.size() != edges_.size()) return false;
    for (const Edge& e : edges_) {
        verts.insert(e.a);
        verts.insert(e.b);
    }
    // Degree check.
    for (Pt v : verts) {
        int deg = 0;
        for (Pt d : kStepVecs)
            if (eset.count(Edge(v, v + d))) ++deg;
        if (deg != 2) return false;
    }
    // Connectivity: walk the cycle from the first edge.
    Pt start = edges_.front().a;
    Pt prev = start, cur = edges_.front().b;
    size_t used = 1;
    while (cur != start) {
        bool moved = false;
        for (Pt d : kStepVecs) {
            Pt nxt = cur + d;
            if (nxt == prev) continue;
            if (eset.count(Edge(cur, nxt))) {
                prev = cur;
                cur = nxt;
                ++used;
                moved = true;
                break;
            }
        }
        if (!moved) return false;
    }
    return used == edges_.size();
}

// The 2n closing walks of a length-n polygon trace: remove one edge, pick an
// orientation, translate to start at the origin.
inline std::vector<Walk> closing_walks_of(const PolygonTrace& p) {
    std::vector<Walk> out;
    const auto& es = p.edges();
    std::unordered_set<Edge, EdgeHash> eset(es.begin(), es.end());
    for (const Edge& skip : es) {
        // Trace the cycle from skip.a to skip.b without using skip.
        std::vector<Pt> path{skip.a};
        Pt prev{INT64_MIN, INT64_MIN}, cur = skip.a;
        while (true) {
            bool moved = false;
            for (Pt d : kStepVecs) {
                Pt nxt = cur + d;
                if (nxt == prev) continue;
                Edge e(cur, nxt);
                if (e == skip || !eset.count(e)) continue;
                path.push_back(nxt);
                prev = cur;
                cur = nxt;
                moved = true;
                break;
            }
            if (!moved || cur == skip.b) break;
        }
        Walk w{std::move(path)};
        out.push_back(w.translated({-w.front().x, -w.front().y}));
        Walk r = w.reversed();
        out.push_back(r.translated({-r.front().x, -r.front().y}));
    }
    return out;
}

}  // namespace sawlab

#endif  // SAWLAB_WALK_HPP

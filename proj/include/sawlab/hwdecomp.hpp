// Bridge decompositions of half-space walks: record points, the unfolding
// map Psi and its inverse, bridge-product spaces, the Xi split into tall
// bridges plus two horizontally confined pieces, walk classifiers, and
// strict partitions.
#ifndef SAWLAB_HWDECOMP_HPP
#define SAWLAB_HWDECOMP_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sawlab/enumerate.hpp"
#include "sawlab/walk.hpp"

namespace sawlab {

struct BranchDecomposition {
    std::vector<size_t> record_indices;  // a_0 = 0, ..., a_r = n
    std::vector<Walk> branches;          // branch k = gamma[a_k, a_{k+1}]
    size_t r() const { return branches.size(); }
};

// Record points of a half-space walk: a_0 = 0; for k odd, a_k is the last
// time gamma[a_{k-1}, n] reaches its highest y-coordinate; for k even, the
// last time it reaches its lowest.  Stops when a_k = n.
inline BranchDecomposition record_points(const Walk& g) {
    if (!g.is_half_space()) throw std::invalid_argument("record_points: not a half-space walk");
    const auto& pts = g.points();
    const size_t n = g.length();
    BranchDecomposition bd;
    bd.record_indices.push_back(0);
    size_t prev = 0;
    for (int k = 1; prev != n; ++k) {
        bool want_max = (k % 2 == 1);
        int64_t best = pts[prev].y;
        for (size_t t = prev; t <= n; ++t)
            best = want_max ? std::max(best, pts[t].y) : std::min(best, pts[t].y);
        size_t a = prev;
        for (size_t t = prev + 1; t <= n; ++t)
            if (pts[t].y == best) a = t;
        if (a == prev) throw std::logic_error("record_points: recursion stalled");
        bd.record_indices.push_back(a);
        bd.branches.push_back(g.sub(prev, a));
        prev = a;
    }
    return bd;
}

// Height of a branch/bridge: |y(end) - y(start)|.
inline int64_t branch_height(const Walk& w) {
    return std::llabs(w.back().y - w.front().y);
}

// Psi: alternately reflect branches (odd-indexed ones run downward) and
// translate each to start at the origin, yielding a list of bridges whose
// heights strictly decrease and whose lengths sum to n.
inline std::vector<Walk> psi(const Walk& g) {
    BranchDecomposition bd = record_points(g);
    std::vector<Walk> out;
    for (size_t k = 0; k < bd.branches.size(); ++k) {
        Walk b = bd.branches[k].translated(Pt{0, 0} - bd.branches[k].front());
        if (k % 2 == 1) b = b.reflect_vertical();
        out.push_back(std::move(b));
    }
    return out;
}

// Inverse of Psi: undo the alternating reflection and re-chain the branches.
// Rejects lists whose reassembly is not a half-space walk (the image of Psi
// always reassembles).
inline std::optional<Walk> psi_inverse(const std::vector<Walk>& bridges) {
    Walk g;  // single origin point
    for (size_t k = 0; k < bridges.size(); ++k) {
        Walk b = bridges[k];
        if (k % 2 == 1) b = b.reflect_vertical();
        g = concatenate(g, b);
    }
    if (!g.self_avoiding() || !(g.length() == 0 || g.is_half_space())) return std::nullopt;
    return g;
}

// ---------------------------------------------------------------------------
// Bridge-product spaces BPi_{l,j}.
// ---------------------------------------------------------------------------

struct BpVerdict {
    bool accept = false;
    std::string reason;
};

inline BpVerdict bp_membership(const std::vector<Walk>& bridges) {
    if (bridges.empty()) return {false, "empty list"};
    int64_t prev_h = -1;
    for (size_t k = 0; k < bridges.size(); ++k) {
        if (!bridges[k].is_bridge())
            return {false, "element " + std::to_string(k) + " is not a bridge"};
        int64_t h = branch_height(bridges[k]);
        if (k > 0 && h >= prev_h)
            return {false, "heights not strictly decreasing at element " + std::to_string(k)};
        prev_h = h;
    }
    return {true, "ok"};
}

// Exact |BPi_{l,j}| by convolving per-(length, height) bridge counts over
// strictly decreasing height sequences.  Exponentially cheaper than listing
// bridge tuples.
inline BigInt bp_count(int ell, int j) {
    if (ell <= 0 || j <= 0) return 0;
    // g[len][h] = number of bridges of length len and height h
    std::vector<std::vector<BigInt>> g(ell + 1, std::vector<BigInt>(ell + 1, 0));
    for_each_sab_z2(ell, [&](const Walk& b) {
        int64_t h = b.back().y;
        if (h <= ell) ++g[b.length()][h];
    });
    // dp[t][len] = lists of t bridges, total length len, heights strictly
    // increasing and bounded by the current sweep height h (so that reading
    // the list in reverse gives the required decreasing sequence).
    std::vector<std::vector<BigInt>> dp(j + 1, std::vector<BigInt>(ell + 1, 0));
    dp[0][0] = 1;
    for (int h = 1; h <= ell; ++h) {
        for (int t = j; t >= 1; --t)
            for (int len = ell; len >= 1; --len) {
                BigInt add = 0;
                for (int lb = h; lb <= len; ++lb)  // a bridge of height h has length >= h
                    if (g[lb][h] != 0) add += g[lb][h] * dp[t - 1][len - lb];
                dp[t][len] += add;
            }
    }
    return dp[j][ell];
}

// ---------------------------------------------------------------------------
// Xi: tall bridges plus two rotated, horizontally confined half-space walks.
// ---------------------------------------------------------------------------

struct XiDecomposition {
    std::vector<Walk> tall_bridges;  // Psi images of branches taller than the threshold
    Walk piece1;  // rotated reverse of gamma[a_l, s], with a prefixed vertical edge
    Walk piece2;  // rotated gamma[s, n]
    double threshold = 0.0;
};

// Clockwise quarter turn: (x, y) -> (y, -x).
inline Walk rot_cw(const Walk& w) {
    std::vector<Pt> pts;
    pts.reserve(w.points().size());
    for (Pt p : w.points()) pts.push_back(Pt{p.y, -p.x});
    return Walk(std::move(pts));
}
inline Walk rot_ccw(const Walk& w) {
    std::vector<Pt> pts;
    pts.reserve(w.points().size());
    for (Pt p : w.points()) pts.push_back(Pt{-p.y, p.x});
    return Walk(std::move(pts));
}

inline XiDecomposition xi_decompose(const Walk& g, size_t n, double eps) {
    XiDecomposition xi;
    xi.threshold = std::pow(static_cast<double>(n), 0.5 + eps);
    BranchDecomposition bd = record_points(g);
    size_t ell = 0;
    while (ell < bd.branches.size() &&
           static_cast<double>(branch_height(bd.branches[ell])) > xi.threshold)
        ++ell;
    std::vector<Walk> all = psi(g);
    xi.tall_bridges.assign(all.begin(), all.begin() + ell);

    // Remainder gamma[a_l, n], translated to start at the origin.
    size_t a_ell = bd.record_indices[ell];
    Walk rem = g.sub(a_ell, g.length()).translated(Pt{0, 0} - g.points()[a_ell]);
    // s = highest index of a point of maximal x-coordinate of the remainder.
    int64_t xmax = rem.x_max();
    size_t s = 0;
    for (size_t t = 0; t <= rem.length(); ++t)
        if (rem[t].x == xmax) s = t;

    // gamma[s, n] turned clockwise about gamma_s: x-coordinates strictly
    // below x_max for t > s become positive heights.
    Walk tail = rem.sub(s, rem.length());
    xi.piece2 = rot_cw(tail.translated(Pt{0, 0} - tail.front()));

    // gamma[a_l, s] reversed then turned clockwise: heights become >= 0, so
    // prefix one vertical edge and lift to make them strictly positive.
    Walk head = rem.sub(0, s).reversed();
    Walk rot = rot_cw(head.translated(Pt{0, 0} - head.front()));
    std::vector<Pt> pts{Pt{0, 0}};
    for (Pt p : rot.points()) pts.push_back(p + Pt{0, 1});
    xi.piece1 = Walk(std::move(pts));
    return xi;
}

// Reassemble a Xi decomposition into the original half-space walk.
inline Walk xi_reassemble(const XiDecomposition& xi) {
    Walk g;
    for (size_t k = 0; k < xi.tall_bridges.size(); ++k) {
        Walk b = xi.tall_bridges[k];
        if (k % 2 == 1) b = b.reflect_vertical();
        g = concatenate(g, b);
    }
    // Undo piece1: strip the prefixed edge, lower, rotate back, reverse.
    const auto& p1 = xi.piece1.points();
    std::vector<Pt> rot(p1.begin() + 1, p1.end());
    for (Pt& p : rot) p = p - Pt{0, 1};
    Walk head = rot_ccw(Walk(std::move(rot))).reversed();
    head = head.translated(Pt{0, 0} - head.front());
    Walk tail = rot_ccw(xi.piece2);
    Walk rem = concatenate(head, tail.translated(Pt{0, 0} - tail.front()));
    return concatenate(g, rem);
}

// ---------------------------------------------------------------------------
// Walk classifiers.
// ---------------------------------------------------------------------------

// Contained in the vertical strip [-n^{1/2+eps}, n^{1/2+eps}] x Z.
inline bool horizontally_confined(const Walk& w, size_t n, double eps) {
    double bound = std::pow(static_cast<double>(n), 0.5 + eps);
    return static_cast<double>(w.x_max()) <= bound &&
           static_cast<double>(-w.x_min()) <= bound;
}

// Fewer than 7 n^{1/2-eps} branches.
inline bool few_branches(const Walk& w, size_t n, double eps) {
    return static_cast<double>(record_points(w).r()) <
           7.0 * std::pow(static_cast<double>(n), 0.5 - eps);
}

// ---------------------------------------------------------------------------
// Strict (decreasing) partitions.
// ---------------------------------------------------------------------------

// strict_partition_table(k)[m] = number of partitions of m into distinct
// parts, for 0 <= m <= k.  O(k^2) big-integer dynamic programme.
inline std::vector<BigInt> strict_partition_table(int k) {
    std::vector<BigInt> dp(k + 1, 0);
    dp[0] = 1;
    for (int part = 1; part <= k; ++part)
        for (int m = k; m >= part; --m) dp[m] += dp[m - part];
    return dp;
}

inline BigInt strict_partitions(int k) { return strict_partition_table(k)[k]; }

}  // namespace sawlab

#endif  // SAWLAB_HWDECOMP_HPP

// The hexagonal lattice H in edge-midpoint form, with an exact integer chart.
//
// Hexagons have side 1/sqrt(3) and vertical edges.  A vertex is stored as an
// integer pair (a, b) whose real position is (a/2, b*sqrt(3)/6).  The valid
// vertices are those with b mod 3 != 0, where a is odd when b = 1, 5 (mod 6)
// and even when b = 2, 4 (mod 6).  Each vertex has three neighbours: one
// across a vertical edge (b = 1 mod 3: partner (a, b-2); b = 2 mod 3:
// partner (a, b+2)) and two across diagonal edges ((a+-1, b+1) resp.
// (a+-1, b-1)).  Face centres sit at (a, b) with b = 0 (mod 3) and
// a = b/3 (mod 2); the face containing the origin is centred at (0, 0) and
// the midpoint of its right vertical edge -- the reference point o -- is
// (1, 0), i.e. the real point (1/2, 0).
//
// With this chart every geometric predicate (height, x-extent, winding sign)
// reduces to integer arithmetic: midpoint coordinates are carried as the sum
// of the two endpoint coordinate pairs, i.e. in units of (1/4, sqrt(3)/12).
#ifndef SAWLAB_HEXLATTICE_HPP
#define SAWLAB_HEXLATTICE_HPP

#include <array>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace sawlab {

struct HexVertex {
    int64_t a = 0;
    int64_t b = 0;

    friend HexVertex operator+(HexVertex u, HexVertex v) { return {u.a + v.a, u.b + v.b}; }
    friend HexVertex operator-(HexVertex u, HexVertex v) { return {u.a - v.a, u.b - v.b}; }
    friend bool operator==(HexVertex u, HexVertex v) { return u.a == v.a && u.b == v.b; }
    friend bool operator!=(HexVertex u, HexVertex v) { return !(u == v); }
    friend bool operator<(HexVertex u, HexVertex v) {
        return u.a != v.a ? u.a < v.a : u.b < v.b;
    }
};

struct HexVertexHash {
    size_t operator()(HexVertex v) const {
        uint64_t h = static_cast<uint64_t>(v.a) * 0x9e3779b97f4a7c15ull;
        h ^= static_cast<uint64_t>(v.b) + 0x7f4a7c159e3779b9ull + (h << 6) + (h >> 2);
        return static_cast<size_t>(h);
    }
};

inline int64_t imod(int64_t v, int64_t m) {
    int64_t r = v % m;
    return r < 0 ? r + m : r;
}

inline bool hex_vertex_valid(HexVertex v) {
    int64_t b6 = imod(v.b, 6);
    if (b6 == 0 || b6 == 3) return false;
    bool odd = imod(v.a, 2) == 1;
    return (b6 == 1 || b6 == 5) ? odd : !odd;
}

// The three neighbours of a valid vertex.
inline std::array<HexVertex, 3> hex_neighbors(HexVertex v) {
    if (imod(v.b, 3) == 1)
        return {HexVertex{v.a, v.b - 2}, HexVertex{v.a - 1, v.b + 1}, HexVertex{v.a + 1, v.b + 1}};
    return {HexVertex{v.a, v.b + 2}, HexVertex{v.a - 1, v.b - 1}, HexVertex{v.a + 1, v.b - 1}};
}

inline bool hex_adjacent(HexVertex u, HexVertex v) {
    for (HexVertex w : hex_neighbors(u))
        if (w == v) return true;
    return false;
}

// An edge of H, i.e. an edge midpoint: canonically ordered endpoint pair.
struct HexMid {
    HexVertex u, v;
    HexMid() = default;
    HexMid(HexVertex p, HexVertex q) {
        if (q < p) std::swap(p, q);
        u = p;
        v = q;
    }
    // Midpoint coordinates in units of (1/4, sqrt(3)/12).
    int64_t mx() const { return u.a + v.a; }
    int64_t my() const { return u.b + v.b; }
    bool is_vertical() const { return u.a == v.a; }

    HexMid translated(HexVertex d) const { return HexMid(u + d, v + d); }

    friend bool operator==(HexMid a, HexMid b) { return a.u == b.u && a.v == b.v; }
    friend bool operator!=(HexMid a, HexMid b) { return !(a == b); }
    friend bool operator<(HexMid a, HexMid b) {
        if (!(a.u == b.u)) return a.u < b.u;
        return a.v < b.v;
    }
};

struct HexMidHash {
    size_t operator()(HexMid m) const {
        HexVertexHash h;
        return h(m.u) * 1315423911u ^ h(m.v);
    }
};

inline bool hex_edge_valid(HexMid m) {
    return hex_vertex_valid(m.u) && hex_vertex_valid(m.v) && hex_adjacent(m.u, m.v);
}

// Canonical text form "ax,ay|bx,by" with lexicographic endpoint order.
inline std::string hex_edge_id(HexMid m) {
    return std::to_string(m.u.a) + "," + std::to_string(m.u.b) + "|" +
           std::to_string(m.v.a) + "," + std::to_string(m.v.b);
}

// Up to four adjacent midpoints, each tagged with the shared vertex.
inline std::vector<std::pair<HexMid, HexVertex>> hex_adjacent_mids(HexMid m) {
    std::vector<std::pair<HexMid, HexVertex>> out;
    for (HexVertex end : {m.u, m.v}) {
        for (HexVertex n : hex_neighbors(end)) {
            HexMid other(end, n);
            if (other == m) continue;
            out.emplace_back(other, end);
        }
    }
    return out;
}

// The reference midpoint o: right vertical edge of the face containing the
// origin, at real position (1/2, 0).
inline HexMid hex_origin_mid() { return HexMid(HexVertex{1, -1}, HexVertex{1, 1}); }

// ---------------------------------------------------------------------------
// Faces.  A face id is its centre (a, b) with b = 0 (mod 3), a = b/3 (mod 2).
// ---------------------------------------------------------------------------

using HexFace = HexVertex;  // centre coordinates
using HexFaceHash = HexVertexHash;

inline bool hex_face_valid(HexFace f) {
    if (imod(f.b, 3) != 0) return false;
    return imod(f.a, 2) == imod(f.b / 3, 2);
}

// The six vertices of a face, counterclockwise from the lower-right.
inline std::array<HexVertex, 6> hex_face_vertices(HexFace f) {
    return {HexVertex{f.a + 1, f.b - 1}, HexVertex{f.a + 1, f.b + 1},
            HexVertex{f.a, f.b + 2},     HexVertex{f.a - 1, f.b + 1},
            HexVertex{f.a - 1, f.b - 1}, HexVertex{f.a, f.b - 2}};
}

// The six edges of a face.
inline std::array<HexMid, 6> hex_face_edges(HexFace f) {
    auto vs = hex_face_vertices(f);
    std::array<HexMid, 6> es;
    for (int i = 0; i < 6; ++i) es[i] = HexMid(vs[i], vs[(i + 1) % 6]);
    return es;
}

// The six neighbouring faces (triangular-lattice adjacency of centres).
inline std::array<HexFace, 6> hex_face_neighbors(HexFace f) {
    return {HexFace{f.a + 2, f.b},     HexFace{f.a - 2, f.b},
            HexFace{f.a + 1, f.b + 3}, HexFace{f.a - 1, f.b + 3},
            HexFace{f.a + 1, f.b - 3}, HexFace{f.a - 1, f.b - 3}};
}

// The two faces bordering an edge.
inline std::array<HexFace, 2> hex_edge_faces(HexMid m) {
    if (m.is_vertical()) {
        int64_t bmid = (m.u.b + m.v.b) / 2;
        return {HexFace{m.u.a - 1, bmid}, HexFace{m.u.a + 1, bmid}};
    }
    // Diagonal edge: candidate centres adjacent to both endpoints.
    std::array<HexFace, 2> out{};
    int n = 0;
    // A diagonal edge joins (a, b) with b=1 mod 3 to (a+-1, b+1).  The two
    // bordering faces are found by scanning centres near the midpoint.
    int64_t cx = (m.u.a + m.v.a) / 2;  // rounded; scan a window around it
    int64_t cy = (m.u.b + m.v.b) / 2;
    for (int64_t da = -2; da <= 2; ++da) {
        for (int64_t db = -3; db <= 3; ++db) {
            HexFace f{cx + da, cy + db};
            if (!hex_face_valid(f)) continue;
            auto vs = hex_face_vertices(f);
            bool hasU = false, hasV = false;
            for (HexVertex v : vs) {
                if (v == m.u) hasU = true;
                if (v == m.v) hasV = true;
            }
            if (hasU && hasV && n < 2) out[n++] = f;
        }
    }
    if (n != 2) throw std::logic_error("hex_edge_faces: did not find two faces");
    return out;
}

// Triangular (dual-graph) ball of faces: centre distance in face-adjacency
// steps from the face at the origin.
inline std::vector<HexFace> hex_face_ball(HexFace centre, int k);

// Graph distance between faces in the dual (triangular) lattice.  The centre
// offsets (da, db) are reachable by steps (+-2, 0), (+-1, +-3); the distance
// admits the closed form below (axial metric of the triangular lattice).
inline int64_t hex_face_distance(HexFace f, HexFace g) {
    int64_t da = std::llabs(f.a - g.a);
    int64_t db = std::llabs(f.b - g.b) / 3;  // rows differ by multiples of 3
    if (da <= db) return db;
    return db + (da - db) / 2;
}

inline std::vector<HexFace> hex_face_ball(HexFace centre, int k) {
    std::vector<HexFace> out;
    for (int64_t row = -k; row <= k; ++row) {
        int64_t b = centre.b + 3 * row;
        for (int64_t a = centre.a - 2 * k; a <= centre.a + 2 * k; ++a) {
            HexFace f{a, b};
            if (!hex_face_valid(f)) continue;
            if (hex_face_distance(f, centre) <= k) out.push_back(f);
        }
    }
    return out;
}

}  // namespace sawlab

#endif  // SAWLAB_HEXLATTICE_HPP

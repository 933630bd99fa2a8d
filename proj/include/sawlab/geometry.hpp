// Square-lattice primitives: points, steps, isometries.
#ifndef SAWLAB_GEOMETRY_HPP
#define SAWLAB_GEOMETRY_HPP

#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sawlab {

struct Pt {
    int64_t x = 0;
    int64_t y = 0;

    friend Pt operator+(Pt a, Pt b) { return {a.x + b.x, a.y + b.y}; }
    friend Pt operator-(Pt a, Pt b) { return {a.x - b.x, a.y - b.y}; }
    friend bool operator==(Pt a, Pt b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(Pt a, Pt b) { return !(a == b); }
    // Lexicographic order (x first) -- used for canonical anchors and edge ids.
    friend bool operator<(Pt a, Pt b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    }
};

struct PtHash {
    size_t operator()(Pt p) const {
        uint64_t h = static_cast<uint64_t>(p.x) * 0x9e3779b97f4a7c15ull;
        h ^= static_cast<uint64_t>(p.y) + 0x517cc1b727220a95ull + (h << 6) + (h >> 2);
        return static_cast<size_t>(h);
    }
};

// Steps in the canonical visitor order E < N < S < W (lexicographic in the
// step letters, per the enumeration contract).
inline constexpr std::array<char, 4> kStepLetters{'E', 'N', 'S', 'W'};
inline constexpr std::array<Pt, 4> kStepVecs{Pt{1, 0}, Pt{0, 1}, Pt{0, -1}, Pt{-1, 0}};

inline Pt step_vec(char c) {
    switch (c) {
        case 'N': return {0, 1};
        case 'S': return {0, -1};
        case 'E': return {1, 0};
        case 'W': return {-1, 0};
        default: throw std::invalid_argument("bad step letter");
    }
}

inline char step_letter(Pt d) {
    if (d == Pt{0, 1}) return 'N';
    if (d == Pt{0, -1}) return 'S';
    if (d == Pt{1, 0}) return 'E';
    if (d == Pt{-1, 0}) return 'W';
    throw std::invalid_argument("bad step vector");
}

// Vertical reflection tau (about the horizontal axis).
inline Pt tau(Pt p) { return {p.x, -p.y}; }
// Horizontal reflection (about the vertical axis).
inline Pt mirror_h(Pt p) { return {-p.x, p.y}; }
// Counterclockwise quarter turn.
inline Pt rot90(Pt p) { return {-p.y, p.x}; }

// An unordered lattice edge stored with canonically ordered endpoints.
struct Edge {
    Pt a, b;
    Edge() = default;
    Edge(Pt u, Pt v) {
        if (v < u) std::swap(u, v);
        a = u;
        b = v;
    }
    friend bool operator==(Edge e, Edge f) { return e.a == f.a && e.b == f.b; }
    friend bool operator<(Edge e, Edge f) {
        if (e.a != f.a) return e.a < f.a;
        return e.b < f.b;
    }
    bool horizontal() const { return a.y == b.y; }
    bool vertical() const { return a.x == b.x; }
    Edge translated(Pt d) const { return Edge(a + d, b + d); }
};

struct EdgeHash {
    size_t operator()(Edge e) const {
        PtHash h;
        return h(e.a) * 1315423911u ^ h(e.b);
    }
};

inline std::string edge_id(Edge e) {
    return std::to_string(e.a.x) + "," + std::to_string(e.a.y) + "|" +
           std::to_string(e.b.x) + "," + std::to_string(e.b.y);
}

}  // namespace sawlab

#endif  // SAWLAB_GEOMETRY_HPP

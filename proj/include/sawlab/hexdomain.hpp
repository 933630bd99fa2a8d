// Finite domains of the hexagonal lattice bounded by triangular-lattice
// polygons, given by the set of H-vertices strictly inside the polygon.
//
// From the inside-vertex set everything else is derived: internal edges have
// both endpoints inside, boundary edges exactly one, and a face belongs to
// the domain when all six of its corners are inside.  Named constructions
// (triangular balls, triangles, strips, rectangles) specify the inside set
// through exact integer inequalities in the (a, b) chart, where a vertex
// (a, b) sits at the real point (a/2, b*sqrt(3)/6).
#ifndef SAWLAB_HEXDOMAIN_HPP
#define SAWLAB_HEXDOMAIN_HPP

#include <map>
#include <set>
#include <string>

#include "json.hpp"
#include "sawlab/hexlattice.hpp"

namespace sawlab {

struct HexDomain {
    std::string id;
    std::set<HexVertex> inside;
    std::set<HexMid> internal_edges;
    std::set<HexMid> boundary;
    std::set<HexMid> mids;  // internal_edges plus boundary
    std::set<HexFace> faces;
    std::map<std::string, std::set<HexMid>> labels;

    bool has_mid(const HexMid& m) const { return mids.count(m) != 0; }
    const std::set<HexMid>& side(const std::string& name) const {
        static const std::set<HexMid> empty;
        auto it = labels.find(name);
        return it == labels.end() ? empty : it->second;
    }
};

inline HexDomain domain_from_inside(std::string id, std::set<HexVertex> inside) {
    HexDomain d;
    d.id = std::move(id);
    d.inside = std::move(inside);
    for (HexVertex v : d.inside)
        for (HexVertex n : hex_neighbors(v)) {
            HexMid e(v, n);
            if (d.inside.count(n))
                d.internal_edges.insert(e);
            else
                d.boundary.insert(e);
        }
    d.mids = d.internal_edges;
    d.mids.insert(d.boundary.begin(), d.boundary.end());
    // Faces: all six corners inside.  Candidates touch some inside vertex.
    std::set<HexFace> cands;
    for (HexVertex v : d.inside)
        for (int64_t da = -1; da <= 1; ++da)
            for (int64_t db : {-2, -1, 1, 2}) {
                HexFace f{v.a + da, v.b + db};
                if (hex_face_valid(f)) cands.insert(f);
            }
    for (HexFace f : cands) {
        bool all = true;
        for (HexVertex v : hex_face_vertices(f))
            if (!d.inside.count(v)) all = false;
        if (all) d.faces.insert(f);
    }
    return d;
}

// The triangular-distance ball of faces of radius k around the origin face.
inline HexDomain lambda_domain(int k) {
    std::set<HexVertex> inside;
    for (HexFace f : hex_face_ball(HexFace{0, 0}, k))
        for (HexVertex v : hex_face_vertices(f)) inside.insert(v);
    return domain_from_inside("Lambda_" + std::to_string(k), std::move(inside));
}

// The equilateral triangle of side length 2k+1: internal edges are exactly
// those inside { 0 < y < sqrt(3) (k + 1/2 - |x - k - 1/2|) }, which in chart
// coordinates reads 0 < b, b < 3a, b + 3a < 12k + 6.  Boundary midpoints are
// labelled Bottom, Left and Right by the constraint their outer endpoint
// violates.  The reference start z0 sits at (k + 1/2, 0), the middle of the
// Bottom side.
inline HexMid triangle_z0(int k) {
    return HexMid(HexVertex{2 * k + 1, -1}, HexVertex{2 * k + 1, 1});
}

inline HexDomain triangle_domain(int k) {
    std::set<HexVertex> inside;
    for (int64_t a = 1; a <= 4 * k + 1; ++a)
        for (int64_t b = 1; b < 3 * a && b + 3 * a < 12 * k + 6; ++b) {
            HexVertex v{a, b};
            if (hex_vertex_valid(v)) inside.insert(v);
        }
    HexDomain d = domain_from_inside("T_" + std::to_string(k), std::move(inside));
    for (const HexMid& e : d.boundary) {
        HexVertex w = d.inside.count(e.u) ? e.v : e.u;
        if (w.b <= 0)
            d.labels["Bottom"].insert(e);
        else if (w.b >= 3 * w.a)
            d.labels["Left"].insert(e);
        else
            d.labels["Right"].insert(e);
    }
    return d;
}

// The strip of height k, truncated at |x| <= W: 0 < b < 3k, |a| <= 2W.
// Boundary labels: Bottom, Top, and Side for the truncation walls.
inline HexDomain strip_domain(int k, int W) {
    std::set<HexVertex> inside;
    for (int64_t a = -2 * W; a <= 2 * W; ++a)
        for (int64_t b = 1; b < 3 * k; ++b) {
            HexVertex v{a, b};
            if (hex_vertex_valid(v)) inside.insert(v);
        }
    HexDomain d = domain_from_inside(
        "S_" + std::to_string(k) + "_W" + std::to_string(W), std::move(inside));
    for (const HexMid& e : d.boundary) {
        HexVertex w = d.inside.count(e.u) ? e.v : e.u;
        if (w.b <= 0)
            d.labels["Bottom"].insert(e);
        else if (w.b >= 3 * k)
            d.labels["Top"].insert(e);
        else
            d.labels["Side"].insert(e);
    }
    return d;
}

// Start midpoint on the Bottom of a strip: the vertical edge at x = j + 1/2.
inline HexMid strip_z0(int64_t j) {
    return HexMid(HexVertex{2 * j + 1, -1}, HexVertex{2 * j + 1, 1});
}

// The rectangle whose base is centred at o = (1/2, 0) with width 2k+1 and
// whose height is 4 sqrt(3) k (the height of the strip of height 8k):
// -2k < a < 2k + 2, 0 < b < 24k.  Labels: Base, Top, Left, Right.
inline HexDomain rect_domain(int k) {
    std::set<HexVertex> inside;
    for (int64_t a = -2 * k + 1; a <= 2 * k + 1; ++a)
        for (int64_t b = 1; b < 24 * k; ++b) {
            HexVertex v{a, b};
            if (hex_vertex_valid(v)) inside.insert(v);
        }
    HexDomain d = domain_from_inside("R_" + std::to_string(k), std::move(inside));
    for (const HexMid& e : d.boundary) {
        HexVertex w = d.inside.count(e.u) ? e.v : e.u;
        if (w.b <= 0)
            d.labels["Base"].insert(e);
        else if (w.b >= 24 * k)
            d.labels["Top"].insert(e);
        else if (w.a <= -2 * k)
            d.labels["Left"].insert(e);
        else
            d.labels["Right"].insert(e);
    }
    return d;
}

inline nlohmann::json domain_to_json(const HexDomain& d) {
    nlohmann::json j;
    j["id"] = d.id;
    j["faces"] = nlohmann::json::array();
    for (HexFace f : d.faces)
        j["faces"].push_back(std::to_string(f.a) + "," + std::to_string(f.b));
    j["boundary"] = nlohmann::json::array();
    for (const HexMid& e : d.boundary) j["boundary"].push_back(hex_edge_id(e));
    j["internal"] = nlohmann::json::array();
    for (const HexMid& e : d.internal_edges) j["internal"].push_back(hex_edge_id(e));
    j["labels"] = nlohmann::json::object();
    for (const auto& [name, edges] : d.labels) {
        auto arr = nlohmann::json::array();
        for (const HexMid& e : edges) arr.push_back(hex_edge_id(e));
        j["labels"][name] = arr;
    }
    return j;
}

}  // namespace sawlab

#endif  // SAWLAB_HEXDOMAIN_HPP

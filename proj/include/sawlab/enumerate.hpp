// Exact enumeration engines: SAW / SAB / HSW / SAP on Z^2 and H.
//
// All engines are depth-first backtracking over the walk tree in
// lexicographic step order (E < N < S < W on Z^2; L < R on H), so visitor
// order is deterministic.  Parallel counting splits the tree at a fixed
// prefix depth and merges per-prefix subtotals in prefix order, which makes
// ledgers identical for every worker count.
#ifndef SAWLAB_ENUMERATE_HPP
#define SAWLAB_ENUMERATE_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "sawlab/hexwalk.hpp"
#include "sawlab/walk.hpp"

namespace sawlab {

using BigInt = boost::multiprecision::cpp_int;

enum class Model { SAW, SAB, HSW, SAPTrace, ClosingWalk };
enum class LatticeKind { Z2, Hex };

inline const char* model_name(Model m) {
    switch (m) {
        case Model::SAW: return "saw";
        case Model::SAB: return "sab";
        case Model::HSW: return "hsw";
        case Model::SAPTrace: return "sap";
        case Model::ClosingWalk: return "closing";
    }
    return "?";
}
inline const char* lattice_name(LatticeKind l) {
    return l == LatticeKind::Z2 ? "z2" : "hex";
}

struct CountLedger {
    Model model;
    LatticeKind lattice;
    std::vector<BigInt> counts;  // counts[n] for 0 <= n <= n_max
    std::string engine;
    bool complete = true;  // false when a resource cap truncated the run
};

// ---------------------------------------------------------------------------
// Square-lattice walk enumeration.
// ---------------------------------------------------------------------------

// Depth-first over self-avoiding extensions.  The `admit` predicate prunes
// sites (site, index) that a prefix may visit; `visit` fires on every
// admissible prefix (including the empty walk at n = 0).
template <class Admit, class Visit>
void dfs_square(int n_max, Admit&& admit, Visit&& visit) {
    std::vector<Pt> pts{Pt{0, 0}};
    std::unordered_set<Pt, PtHash> occ{Pt{0, 0}};
    visit(pts);
    std::function<void()> rec = [&]() {
        if (static_cast<int>(pts.size()) - 1 >= n_max) return;
        for (Pt d : kStepVecs) {
            Pt nxt = pts.back() + d;
            if (occ.count(nxt)) continue;
            if (!admit(nxt, pts.size())) continue;
            pts.push_back(nxt);
            occ.insert(nxt);
            visit(pts);
            rec();
            occ.erase(nxt);
            pts.pop_back();
        }
    };
    rec();
}

// Visit every square SAW of length <= n_max as a Walk (deterministic order).
template <class Visit>
void for_each_saw_z2(int n_max, Visit&& visit) {
    dfs_square(
        n_max, [](Pt, size_t) { return true; },
        [&](const std::vector<Pt>& pts) { visit(Walk(pts)); });
}

template <class Visit>
void for_each_hsw_z2(int n_max, Visit&& visit) {
    dfs_square(
        n_max, [](Pt p, size_t) { return p.y > 0; },
        [&](const std::vector<Pt>& pts) { visit(Walk(pts)); });
}

// Bridges: half-space prefixes whose final height equals the running max.
template <class Visit>
void for_each_sab_z2(int n_max, Visit&& visit) {
    dfs_square(
        n_max, [](Pt p, size_t) { return p.y > 0; },
        [&](const std::vector<Pt>& pts) {
            if (pts.size() == 1) return;
            int64_t top = 0;
            for (Pt p : pts) top = std::max(top, p.y);
            if (pts.back().y == top) visit(Walk(pts));
        });
}

// All SAP traces of length exactly n (n even >= 4), deduplicated.
inline std::set<PolygonTrace> sap_traces_z2(int n) {
    std::set<PolygonTrace> out;
    if (n < 4 || n % 2 != 0) return out;
    // Closing walks of length n-1 starting with an E step (each trace is hit
    // by at least one such walk; the set dedupes the 2n-fold rooting).
    dfs_square(
        n - 1, [](Pt p, size_t idx) { return !(idx == 1 && p != Pt{1, 0}); },
        [&](const std::vector<Pt>& pts) {
            if (static_cast<int>(pts.size()) != n) return;
            Pt d = pts.back() - pts.front();
            if (std::abs(d.x) + std::abs(d.y) != 1) return;
            std::vector<Pt> cyc(pts);
            cyc.push_back(pts.front());
            out.insert(PolygonTrace::from_cycle(cyc));
        });
    return out;
}

// ---------------------------------------------------------------------------
// Hex-lattice walk enumeration (midpoint convention).
// ---------------------------------------------------------------------------

// Visit every hex SAW of length <= n_max starting at `start`, restricted to
// midpoints passing `mid_ok` and traversed vertices passing `vert_ok`.
template <class MidOk, class VertOk, class Visit>
void for_each_hex_walk(HexMid start, int n_max, MidOk&& mid_ok, VertOk&& vert_ok,
                       Visit&& visit) {
    if (!mid_ok(start)) return;
    std::vector<HexMid> mids{start};
    std::unordered_set<HexVertex, HexVertexHash> used;
    visit(HexWalk(mids));
    // Continuations at the current frontier, ordered canonically.
    std::function<void(HexVertex, bool)> rec = [&](HexVertex via, bool have_via) {
        if (static_cast<int>(mids.size()) - 1 >= n_max) return;
        std::vector<std::pair<HexMid, HexVertex>> nexts;
        if (!have_via) {
            for (auto& [m, v] : hex_adjacent_mids(mids.back())) nexts.emplace_back(m, v);
        } else {
            for (HexVertex n : hex_neighbors(via)) {
                HexMid cand(via, n);
                if (cand == mids.back()) continue;
                nexts.emplace_back(cand, via);
            }
        }
        std::sort(nexts.begin(), nexts.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& [m, v] : nexts) {
            if (used.count(v) || !vert_ok(v) || !mid_ok(m)) continue;
            mids.push_back(m);
            used.insert(v);
            visit(HexWalk(mids));
            HexVertex far = (m.u == v) ? m.v : m.u;
            rec(far, true);
            used.erase(v);
            mids.pop_back();
        }
    };
    // First step: the next traversed vertex may be either endpoint.
    rec(HexVertex{}, false);
    (void)0;
}

template <class Visit>
void for_each_hex_saw(int n_max, Visit&& visit) {
    for_each_hex_walk(
        hex_origin_mid(), n_max, [](HexMid) { return true; },
        [](HexVertex) { return true; }, visit);
}

// ---------------------------------------------------------------------------
// Counting ledgers.
// ---------------------------------------------------------------------------

inline CountLedger count_ledger(Model m, LatticeKind lat, int n_max,
                                const std::string& engine = "dfs") {
    CountLedger led{m, lat, std::vector<BigInt>(n_max + 1, 0), engine, true};
    auto bump = [&](size_t n) {
        if (static_cast<int>(n) <= n_max) ++led.counts[n];
    };
    if (lat == LatticeKind::Z2) {
        switch (m) {
            case Model::SAW:
                for_each_saw_z2(n_max, [&](const Walk& w) { bump(w.length()); });
                break;
            case Model::HSW:
                for_each_hsw_z2(n_max, [&](const Walk& w) {
                    if (w.length() > 0) bump(w.length());
                });
                break;
            case Model::SAB:
                for_each_sab_z2(n_max, [&](const Walk& w) { bump(w.length()); });
                break;
            case Model::SAPTrace:
                for (int n = 4; n <= n_max; n += 2)
                    led.counts[n] = BigInt(sap_traces_z2(n).size());
                break;
            case Model::ClosingWalk:
                for_each_saw_z2(n_max, [&](const Walk& w) {
                    if (w.is_closing()) bump(w.length());
                });
                break;
        }
    } else {
        switch (m) {
            case Model::SAW:
                for_each_hex_saw(n_max, [&](const HexWalk& w) { bump(w.length()); });
                break;
            case Model::SAB:
                for_each_hex_saw(n_max, [&](const HexWalk& w) {
                    if (w.is_bridge()) bump(w.length());
                });
                break;
            case Model::HSW: {
                int64_t y0 = hex_origin_mid().my();
                for_each_hex_saw(n_max, [&](const HexWalk& w) {
                    bool ok = true;
                    for (size_t i = 1; i < w.mids().size(); ++i)
                        if (w.mids()[i].my() <= y0) ok = false;
                    if (ok && w.length() > 0) bump(w.length());
                });
                break;
            }
            default:
                throw std::invalid_argument("model not available on hex lattice");
        }
    }
    // Length-0 conventions: a single site/midpoint is the unique walk of
    // length 0 for SAW; bridges and half-space walks have length >= 1.
    if (m == Model::SAW) led.counts[0] = 1;
    return led;
}

// ---------------------------------------------------------------------------
// Deterministic prefix-split parallel counting (square lattice).
// ---------------------------------------------------------------------------

// Enumerate step-string prefixes of exactly `depth` steps that are valid
// under the model's pruning; each prefix owns the subtree below it.
inline std::vector<std::string> z2_prefixes(Model m, int depth) {
    std::vector<std::string> out;
    auto admit = [&](Pt p, size_t) {
        return (m == Model::SAW || m == Model::ClosingWalk) ? true : p.y > 0;
    };
    dfs_square(depth, admit, [&](const std::vector<Pt>& pts) {
        if (static_cast<int>(pts.size()) - 1 == depth) out.push_back(Walk(pts).steps());
    });
    return out;
}

// Parallel count with subtotals merged in prefix order.  Results are
// bit-identical for any `threads` value.
inline CountLedger count_ledger_parallel(Model m, LatticeKind lat, int n_max,
                                         unsigned threads, int split_depth = 4) {
    if (lat == LatticeKind::Hex || m == Model::SAPTrace || threads <= 1 ||
        n_max <= split_depth)
        return count_ledger(m, lat, n_max, "dfs");

    std::vector<std::string> prefixes = z2_prefixes(m, split_depth);
    std::vector<std::vector<BigInt>> sub(prefixes.size());

    auto run_prefix = [&](size_t pi) {
        const std::string& pre = prefixes[pi];
        std::vector<BigInt> counts(n_max + 1, 0);
        Walk base = Walk::from_steps(pre);
        std::vector<Pt> pts = base.points();
        std::unordered_set<Pt, PtHash> occ(pts.begin(), pts.end());
        auto admit = [&](Pt p) {
            return (m == Model::SAW || m == Model::ClosingWalk) ? true : p.y > 0;
        };
        auto record = [&]() {
            size_t n = pts.size() - 1;
            switch (m) {
                case Model::SAW:
                    ++counts[n];
                    break;
                case Model::HSW:
                    ++counts[n];
                    break;
                case Model::SAB: {
                    int64_t top = 0;
                    for (Pt p : pts) top = std::max(top, p.y);
                    if (pts.back().y == top) ++counts[n];
                    break;
                }
                case Model::ClosingWalk: {
                    Pt d = pts.back() - pts.front();
                    if (pts.size() >= 4 && std::abs(d.x) + std::abs(d.y) == 1) ++counts[n];
                    break;
                }
                default:
                    break;
            }
        };
        record();
        std::function<void()> rec = [&]() {
            if (static_cast<int>(pts.size()) - 1 >= n_max) return;
            for (Pt d : kStepVecs) {
                Pt nxt = pts.back() + d;
                if (occ.count(nxt) || !admit(nxt)) continue;
                pts.push_back(nxt);
                occ.insert(nxt);
                record();
                rec();
                occ.erase(nxt);
                pts.pop_back();
            }
        };
        rec();
        sub[pi] = std::move(counts);
    };

    std::vector<std::thread> workers;
    for (unsigned t = 0; t < threads; ++t)
        workers.emplace_back([&, t]() {
            for (size_t pi = t; pi < prefixes.size(); pi += threads) run_prefix(pi);
        });
    for (auto& w : workers) w.join();

    CountLedger led{m, lat, std::vector<BigInt>(n_max + 1, 0), "dfs-parallel", true};
    // Short walks (below the split depth) are counted serially.
    CountLedger shallow = count_ledger(m, lat, split_depth - 1, "dfs");
    for (int n = 0; n < split_depth; ++n) led.counts[n] = shallow.counts[n];
    for (const auto& s : sub)  // merged in prefix order
        for (int n = split_depth; n <= n_max; ++n) led.counts[n] += s[n];
    return led;
}

}  // namespace sawlab

#endif  // SAWLAB_ENUMERATE_HPP

// The parafermionic observable F(z) = sum over walks z0 -> z in a domain of
// e^{-i sigma wind(gamma)} x^{|gamma|}, with the exact finite-domain
// identities it satisfies at (sigma, x) = (5/8, 1/sqrt(2+sqrt2)).
//
// Field construction enumerates every self-avoiding walk from z0 once.  The
// enumeration is split at a fixed prefix depth into independent subtree
// tasks; tasks run on any number of threads but their contributions are
// merged in prefix order, so the computed field is byte-identical for every
// thread count.
#ifndef SAWLAB_OBSERVABLE_HPP
#define SAWLAB_OBSERVABLE_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <functional>
#include <thread>
#include <vector>

#include "sawlab/hexdomain.hpp"
#include "sawlab/hexwalk.hpp"

namespace sawlab {

inline constexpr double kPi = 3.14159265358979323846;
inline const double kSigmaCritical = 5.0 / 8.0;
inline const double kXCritical = 1.0 / std::sqrt(2.0 + std::sqrt(2.0));

inline std::complex<double> hex_mid_pos(const HexMid& m) {
    return {m.mx() / 4.0, m.my() * std::sqrt(3.0) / 12.0};
}
inline std::complex<double> hex_vertex_pos(HexVertex v) {
    return {v.a / 2.0, v.b * std::sqrt(3.0) / 6.0};
}

struct ObservableField {
    std::string domain_id;
    HexMid z0;
    double sigma = 0.0;
    double x = 0.0;
    std::map<HexMid, std::complex<double>> values;  // F(z)
    std::map<HexMid, double> gvalues;               // G(z): the same sum without phases
    std::map<HexMid, int64_t> wind_first;  // winding (units pi/3) of the first walk to reach z

    double g(const HexMid& z) const {
        auto it = gvalues.find(z);
        return it == gvalues.end() ? 0.0 : it->second;
    }
    std::complex<double> f(const HexMid& z) const {
        auto it = values.find(z);
        return it == values.end() ? std::complex<double>{} : it->second;
    }
};

namespace obsdetail {

struct Accum {
    std::map<HexMid, std::complex<double>> f;
    std::map<HexMid, double> g;
    std::map<HexMid, int64_t> wind;
};

inline void contribute(Accum& acc, const HexMid& m, int64_t wind, double xn, double sigma) {
    acc.f[m] += std::polar(xn, -sigma * static_cast<double>(wind) * kPi / 3.0);
    acc.g[m] += xn;
    acc.wind.try_emplace(m, wind);
}

struct WalkState {
    std::vector<HexMid> mids;
    std::set<HexVertex> used;
    int64_t wind = 0;
    double xn = 1.0;
};

// Depth-first extension of the current walk.  When `prefixes` is given, the
// walk is parked there once it reaches `stop_len` and its subtree is left to
// a later task; contributions happen exactly when a midpoint is appended.
inline void extend(const HexDomain& dom, WalkState& st, Accum& acc, double sigma, double x,
                   int cap, int stop_len, std::vector<WalkState>* prefixes) {
    int len = static_cast<int>(st.mids.size()) - 1;
    if (prefixes && len == stop_len) {
        prefixes->push_back(st);
        return;
    }
    if (cap >= 0 && len >= cap) return;
    const HexMid cur = st.mids.back();
    for (HexVertex end : {cur.u, cur.v}) {
        if (st.used.count(end)) continue;
        for (HexVertex n : hex_neighbors(end)) {
            HexMid nxt(end, n);
            if (nxt == cur || !dom.mids.count(nxt)) continue;
            int64_t turn = hex_turn_sign(cur, nxt);
            double xn_saved = st.xn;
            st.mids.push_back(nxt);
            st.used.insert(end);
            st.wind += turn;
            st.xn *= x;
            contribute(acc, nxt, st.wind, st.xn, sigma);
            extend(dom, st, acc, sigma, x, cap, stop_len, prefixes);
            st.xn = xn_saved;
            st.wind -= turn;
            st.used.erase(end);
            st.mids.pop_back();
        }
    }
}

inline void merge(Accum& into, const Accum& part) {
    for (const auto& [m, v] : part.f) into.f[m] += v;
    for (const auto& [m, v] : part.g) into.g[m] += v;
    for (const auto& [m, v] : part.wind) into.wind.try_emplace(m, v);
}

}  // namespace obsdetail

// The exact field of the domain: every self-avoiding walk from z0 is summed.
// An optional length cap truncates the sum; threads only affect speed.
inline ObservableField observable(const HexDomain& dom, HexMid z0, double sigma, double x,
                                  int length_cap = -1, int threads = 1) {
    using namespace obsdetail;
    if (!dom.mids.count(z0)) throw std::invalid_argument("observable: z0 not in domain");

    ObservableField fld;
    fld.domain_id = dom.id;
    fld.z0 = z0;
    fld.sigma = sigma;
    fld.x = x;

    constexpr int kSplitLen = 8;
    Accum acc;
    std::vector<WalkState> prefixes;
    WalkState st;
    st.mids.push_back(z0);
    contribute(acc, z0, 0, 1.0, sigma);  // the length-zero walk
    extend(dom, st, acc, sigma, x, length_cap, kSplitLen, &prefixes);

    std::vector<Accum> parts(prefixes.size());
    size_t nthreads = std::max(1, threads);
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i = next.fetch_add(1); i < prefixes.size(); i = next.fetch_add(1)) {
            WalkState ws = prefixes[i];
            extend(dom, ws, parts[i], sigma, x, length_cap, -1, nullptr);
        }
    };
    std::vector<std::thread> pool;
    for (size_t t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (const Accum& p : parts) merge(acc, p);

    fld.values = std::move(acc.f);
    fld.gvalues = std::move(acc.g);
    fld.wind_first = std::move(acc.wind);
    return fld;
}

// The critical two-point function G_Omega(z0, z).
inline double partition_function(const HexDomain& dom, HexMid z0, HexMid z, double x,
                                 int length_cap = -1, int threads = 1) {
    return observable(dom, z0, 0.0, x, length_cap, threads).g(z);
}

// (p - v) F(p) + (q - v) F(q) + (r - v) F(r) over the three midpoints
// incident to an inside vertex; vanishes at (5/8, 1/sqrt(2+sqrt2)).
inline std::complex<double> local_relation_residual(const HexDomain& dom,
                                                    const ObservableField& fld, HexVertex v) {
    if (!dom.inside.count(v))
        throw std::invalid_argument("local_relation_residual: vertex not inside domain");
    std::complex<double> res{};
    for (HexVertex n : hex_neighbors(v)) {
        HexMid m(v, n);
        res += (hex_mid_pos(m) - hex_vertex_pos(v)) * fld.f(m);
    }
    return res;
}

inline double max_local_relation_residual(const HexDomain& dom, const ObservableField& fld) {
    double worst = 0.0;
    for (HexVertex v : dom.inside)
        worst = std::max(worst, std::abs(local_relation_residual(dom, fld, v)));
    return worst;
}

// Left-hand side of the triangle identity:
// 2cos(pi/8) sum_{Left} G + cos(3pi/8) sum_{Bottom minus z0} G; equals 1 at
// criticality.
inline double triangle_identity(int k, double x, int threads = 1) {
    HexDomain dom = triangle_domain(k);
    HexMid z0 = triangle_z0(k);
    ObservableField fld = observable(dom, z0, 0.0, x, -1, threads);
    double lhs = 0.0;
    for (const HexMid& z : dom.side("Left")) lhs += 2.0 * std::cos(kPi / 8.0) * fld.g(z);
    for (const HexMid& z : dom.side("Bottom"))
        if (z != z0) lhs += std::cos(3.0 * kPi / 8.0) * fld.g(z);
    return lhs;
}

// Truncated strip identity: sum_{Top} G + cos(3pi/8) sum_{Bottom minus z0} G
// approaches 1 from below as the width cap and length cap grow.  Also
// reports B_k, the bridge partition function sum_{Top} G.
struct StripReport {
    double lhs = 0.0;
    double bk = 0.0;
};

inline StripReport strip_identity(int k, int W, double x, int length_cap = -1,
                                  int64_t z0_column = 0, int threads = 1) {
    HexDomain dom = strip_domain(k, W);
    HexMid z0 = strip_z0(z0_column);
    ObservableField fld = observable(dom, z0, 0.0, x, length_cap, threads);
    StripReport rep;
    for (const HexMid& z : dom.side("Top")) rep.bk += fld.g(z);
    rep.lhs = rep.bk;
    for (const HexMid& z : dom.side("Bottom"))
        if (z != z0) rep.lhs += std::cos(3.0 * kPi / 8.0) * fld.g(z);
    return rep;
}

// The rectangle pipeline: the left-side sum of the rectangle of base width
// 2k+1 and height 4 sqrt(3) k, the alternating boundary prefactor angles,
// and the reflect-and-concatenate construction of half-plane arcs, audited
// walk by walk.
struct RectangleReport {
    int k = 0;
    double left_sum = 0.0;                  // sum_{Left} G_{R_k}(o, z)
    std::vector<double> prefactor_angles;   // (1-sigma) |wind(z)|, bottom to top
    bool angles_alternating = false;
    size_t arcs_audited = 0;
    bool arcs_valid = false;        // all concatenations self-avoiding, in Lambda_{8k}+, correct end
    double arc_bound = 0.0;         // sum_z x G_cap(o,z)^2
    double direct_g = 0.0;          // G_{Lambda_{8k} cap H+}(o, reflected o) at matching cap
};

inline RectangleReport rectangle_relations(int k, double x, int length_cap, int arc_cap,
                                           int threads = 1) {
    RectangleReport rep;
    rep.k = k;
    HexDomain dom = rect_domain(k);
    HexMid o = hex_origin_mid();
    ObservableField fld = observable(dom, o, kSigmaCritical, x, length_cap, threads);

    std::vector<HexMid> left(dom.side("Left").begin(), dom.side("Left").end());
    std::sort(left.begin(), left.end(),
              [](const HexMid& a, const HexMid& b) { return a.my() < b.my(); });
    for (const HexMid& z : left) {
        rep.left_sum += fld.g(z);
        auto it = fld.wind_first.find(z);
        if (it == fld.wind_first.end()) continue;
        rep.prefactor_angles.push_back((1.0 - kSigmaCritical) * std::llabs(it->second) * kPi /
                                       3.0);
    }
    rep.angles_alternating = rep.prefactor_angles.size() >= 2;
    for (size_t i = 1; i < rep.prefactor_angles.size(); ++i)
        if (std::abs(rep.prefactor_angles[i] - rep.prefactor_angles[i - 1]) < 1e-12)
            rep.angles_alternating = false;

    // Walks o -> Left of length <= arc_cap, for the concatenation audit.
    std::vector<std::vector<HexMid>> arcs;
    {
        std::vector<HexMid> midsv{o};
        std::set<HexVertex> used;
        std::function<void()> go = [&]() {
            if (dom.side("Left").count(midsv.back())) arcs.push_back(midsv);
            if (static_cast<int>(midsv.size()) - 1 >= arc_cap) return;
            HexMid cur = midsv.back();
            for (HexVertex end : {cur.u, cur.v}) {
                if (used.count(end)) continue;
                for (HexVertex n : hex_neighbors(end)) {
                    HexMid nxt(end, n);
                    if (nxt == cur || !dom.mids.count(nxt)) continue;
                    midsv.push_back(nxt);
                    used.insert(end);
                    go();
                    used.erase(end);
                    midsv.pop_back();
                }
            }
        };
        go();
    }

    // Lambda_{8k} intersected with the closed upper half-plane.
    HexDomain lam = lambda_domain(8 * k);
    std::set<HexVertex> upper;
    for (HexVertex v : lam.inside)
        if (v.b >= 1) upper.insert(v);
    HexDomain half = domain_from_inside("Lambda8k_plus", std::move(upper));

    auto reflect = [&](const HexMid& m) {
        return HexMid(HexVertex{-4 * k - m.u.a, m.u.b}, HexVertex{-4 * k - m.v.a, m.v.b});
    };
    HexMid target = reflect(o);
    std::map<HexMid, double> gcap;  // capped G(o, z) for z on Left
    rep.arcs_valid = true;
    for (const auto& w1 : arcs) {
        gcap[w1.back()] += std::pow(x, static_cast<double>(w1.size() - 1));
        for (const auto& w2 : arcs) {
            if (w1.back() != w2.back()) continue;
            std::vector<HexMid> joined = w1;
            for (auto it = w2.rbegin(); it != w2.rend(); ++it) joined.push_back(reflect(*it));
            HexWalk arc(joined);
            ++rep.arcs_audited;
            bool ok = arc.adjacent_ok() && arc.self_avoiding() && arc.back() == target;
            for (const HexMid& m : joined)
                if (!half.mids.count(m)) ok = false;
            if (!ok) rep.arcs_valid = false;
        }
    }
    for (const auto& [z, gv] : gcap) rep.arc_bound += x * gv * gv;
    rep.direct_g = partition_function(half, o, target, x, 2 * arc_cap + 1, threads);
    return rep;
}

}  // namespace sawlab

#endif  // SAWLAB_OBSERVABLE_HPP

#include "mscvrp/search.hpp"

#include <algorithm>
#include <cassert>

namespace mscvrp {

namespace {

constexpr int kDepot = 0;

const std::vector<MoveKind> kLevel0 = {
    MoveKind::kIntraRelocate, MoveKind::kIntraSwap,      MoveKind::kTwoOpt,
    MoveKind::kInterRelocate, MoveKind::kInterSwap,      MoveKind::kTwoOptStar,
    MoveKind::kSinglePathMove, MoveKind::kDoublePathMove, MoveKind::kCrossExchange,
};
const std::vector<MoveKind> kLevel1 = {
    MoveKind::kEjectionRelocate,
    MoveKind::kEjectionPathMove,
};

struct Ctx {
    const Instance& inst;
    const Solution& sol;
    const NodeIndex& idx;

    long long d(int a, int b) const { return inst.distance(a, b); }
    const std::vector<int>& route(int r) const { return sol.routes()[r]; }
    int len(int r) const { return static_cast<int>(sol.routes()[r].size()); }
    int prev(int r, int p) const { return p == 0 ? kDepot : route(r)[p - 1]; }
    int next(int r, int p) const { return p + 1 == len(r) ? kDepot : route(r)[p + 1]; }

    long long prefix_load(int r, int p) const {  // load of route r up to position p inclusive
        long long load = 0;
        const auto& rt = route(r);
        for (int i = 0; i <= p; ++i) load += inst.demand(rt[i]);
        return load;
    }
};

// Insertion edge (x, y) around anchor v; `after` picks the edge that follows v.
struct Edge {
    int x, y;
};

Edge insertion_edge(const Ctx& c, int rv, int pv, bool after) {
    if (after) return {c.route(rv)[pv], c.next(rv, pv)};
    return {c.prev(rv, pv), c.route(rv)[pv]};
}

std::optional<long long> delta_intra_relocate(const Ctx& c, const Move& m) {
    const int r = c.idx.route_of[m.u];
    if (r != c.idx.route_of[m.v] || m.u == m.v) return std::nullopt;
    const int pu = c.idx.pos_of[m.u], pv = c.idx.pos_of[m.v];
    const int a = c.prev(r, pu), b = c.next(r, pu);
    Edge e = insertion_edge(c, r, pv, m.after);
    if (e.x == m.u) e.x = a;
    if (e.y == m.u) e.y = b;
    return c.d(a, b) - c.d(a, m.u) - c.d(m.u, b) + c.d(e.x, m.u) + c.d(m.u, e.y) - c.d(e.x, e.y);
}

std::optional<long long> delta_inter_relocate(const Ctx& c, const Move& m) {
    const int ra = c.idx.route_of[m.u], rb = c.idx.route_of[m.v];
    if (ra == rb) return std::nullopt;
    if (c.sol.route_load(rb) + c.inst.demand(m.u) > c.inst.capacity()) return std::nullopt;
    const int pu = c.idx.pos_of[m.u];
    const int a = c.prev(ra, pu), b = c.next(ra, pu);
    const Edge e = insertion_edge(c, rb, c.idx.pos_of[m.v], m.after);
    return c.d(a, b) - c.d(a, m.u) - c.d(m.u, b) + c.d(e.x, m.u) + c.d(m.u, e.y) - c.d(e.x, e.y);
}

std::optional<long long> delta_intra_swap(const Ctx& c, const Move& m) {
    const int r = c.idx.route_of[m.u];
    if (r != c.idx.route_of[m.v] || m.u == m.v) return std::nullopt;
    int pu = c.idx.pos_of[m.u], pv = c.idx.pos_of[m.v];
    int u = m.u, v = m.v;
    if (pu > pv) {
        std::swap(pu, pv);
        std::swap(u, v);
    }
    if (pv == pu + 1) {
        const int a = c.prev(r, pu), e = c.next(r, pv);
        return c.d(a, v) + c.d(u, e) - c.d(a, u) - c.d(v, e);
    }
    const int a = c.prev(r, pu), b = c.next(r, pu);
    const int f = c.prev(r, pv), e = c.next(r, pv);
    return c.d(a, v) + c.d(v, b) + c.d(f, u) + c.d(u, e) - c.d(a, u) - c.d(u, b) - c.d(f, v) - c.d(v, e);
}

std::optional<long long> delta_inter_swap(const Ctx& c, const Move& m) {
    const int ra = c.idx.route_of[m.u], rb = c.idx.route_of[m.v];
    if (ra == rb) return std::nullopt;
    const long long qu = c.inst.demand(m.u), qv = c.inst.demand(m.v);
    if (c.sol.route_load(ra) - qu + qv > c.inst.capacity()) return std::nullopt;
    if (c.sol.route_load(rb) - qv + qu > c.inst.capacity()) return std::nullopt;
    const int pu = c.idx.pos_of[m.u], pv = c.idx.pos_of[m.v];
    const int a = c.prev(ra, pu), b = c.next(ra, pu);
    const int f = c.prev(rb, pv), e = c.next(rb, pv);
    return c.d(a, m.v) + c.d(m.v, b) + c.d(f, m.u) + c.d(m.u, e) - c.d(a, m.u) - c.d(m.u, b) - c.d(f, m.v) -
           c.d(m.v, e);
}

std::optional<long long> delta_two_opt(const Ctx& c, const Move& m) {
    const int r = c.idx.route_of[m.u];
    if (r != c.idx.route_of[m.v] || m.u == m.v) return std::nullopt;
    int i = c.idx.pos_of[m.u], j = c.idx.pos_of[m.v];
    if (i > j) std::swap(i, j);
    const int s = c.route(r)[i], t = c.route(r)[j];
    return c.d(s, t) + c.d(c.next(r, i), c.next(r, j)) - c.d(s, c.next(r, i)) - c.d(t, c.next(r, j));
}

std::optional<long long> delta_two_opt_star(const Ctx& c, const Move& m) {
    const int ra = c.idx.route_of[m.u], rb = c.idx.route_of[m.v];
    if (ra == rb) return std::nullopt;
    const int pu = c.idx.pos_of[m.u], pv = c.idx.pos_of[m.v];
    const long long pref_a = c.prefix_load(ra, pu), pref_b = c.prefix_load(rb, pv);
    if (pref_a + c.sol.route_load(rb) - pref_b > c.inst.capacity()) return std::nullopt;
    if (pref_b + c.sol.route_load(ra) - pref_a > c.inst.capacity()) return std::nullopt;
    const int na = c.next(ra, pu), nb = c.next(rb, pv);
    return c.d(m.u, nb) + c.d(m.v, na) - c.d(m.u, na) - c.d(m.v, nb);
}

std::optional<long long> delta_path_move(const Ctx& c, const Move& m, int seg_len) {
    const int ra = c.idx.route_of[m.u], rb = c.idx.route_of[m.v];
    if (ra == rb) return std::nullopt;
    const int pu = c.idx.pos_of[m.u];
    if (pu + seg_len > c.len(ra)) return std::nullopt;
    long long seg_load = 0;
    for (int i = 0; i < seg_len; ++i) seg_load += c.inst.demand(c.route(ra)[pu + i]);
    if (c.sol.route_load(rb) + seg_load > c.inst.capacity()) return std::nullopt;

    const int e = c.route(ra)[pu + seg_len - 1];
    const int a = c.prev(ra, pu), b = c.next(ra, pu + seg_len - 1);
    const Edge ins = insertion_edge(c, rb, c.idx.pos_of[m.v], m.after);
    const int head = m.flip ? e : m.u;
    const int tail = m.flip ? m.u : e;
    return c.d(a, b) - c.d(a, m.u) - c.d(e, b) + c.d(ins.x, head) + c.d(tail, ins.y) - c.d(ins.x, ins.y);
}

std::optional<long long> delta_cross_exchange(const Ctx& c, const Move& m) {
    const int ra = c.idx.route_of[m.u], rb = c.idx.route_of[m.v];
    if (ra == rb) return std::nullopt;
    const int pu = c.idx.pos_of[m.u], pv = c.idx.pos_of[m.v];
    if (pu + m.len_u > c.len(ra) || pv + m.len_v > c.len(rb)) return std::nullopt;
    long long qa = 0, qb = 0;
    for (int i = 0; i < m.len_u; ++i) qa += c.inst.demand(c.route(ra)[pu + i]);
    for (int i = 0; i < m.len_v; ++i) qb += c.inst.demand(c.route(rb)[pv + i]);
    if (c.sol.route_load(ra) - qa + qb > c.inst.capacity()) return std::nullopt;
    if (c.sol.route_load(rb) - qb + qa > c.inst.capacity()) return std::nullopt;

    const int eu = c.route(ra)[pu + m.len_u - 1], ev = c.route(rb)[pv + m.len_v - 1];
    const int a = c.prev(ra, pu), bu = c.next(ra, pu + m.len_u - 1);
    const int f = c.prev(rb, pv), bv = c.next(rb, pv + m.len_v - 1);
    return c.d(a, m.v) + c.d(ev, bu) + c.d(f, m.u) + c.d(eu, bv) - c.d(a, m.u) - c.d(eu, bu) - c.d(f, m.v) -
           c.d(ev, bv);
}

// Two-stage chains: the first relocation overloads the target route, the
// second relocates some customer out of it to restore feasibility.
std::optional<long long> delta_ejection(const Ctx& c, const Move& m, int seg_len) {
    const int ra = c.idx.route_of[m.u], rb = c.idx.route_of[m.v];
    if (ra == rb) return std::nullopt;
    if (m.w < 0 || m.x < 0) return std::nullopt;
    if (c.idx.route_of[m.w] != rb) return std::nullopt;
    const int rc = c.idx.route_of[m.x];
    if (rc == rb) return std::nullopt;

    const int pu = c.idx.pos_of[m.u];
    if (pu + seg_len > c.len(ra)) return std::nullopt;
    long long seg_load = 0;
    for (int i = 0; i < seg_len; ++i) {
        if (c.route(ra)[pu + i] == m.x) return std::nullopt;  // repair anchor may not move away
        seg_load += c.inst.demand(c.route(ra)[pu + i]);
    }
    // Stage 1 must actually violate capacity; feasible relocations belong to
    // the plain operators.
    if (c.sol.route_load(rb) + seg_load <= c.inst.capacity()) return std::nullopt;

    const long long qw = c.inst.demand(m.w);
    if (c.sol.route_load(rb) + seg_load - qw > c.inst.capacity()) return std::nullopt;
    long long load_c = c.sol.route_load(rc);
    if (rc == ra) load_c -= seg_load;
    if (load_c + qw > c.inst.capacity()) return std::nullopt;

    const int e = c.route(ra)[pu + seg_len - 1];
    const int a = c.prev(ra, pu), b = c.next(ra, pu + seg_len - 1);
    const Edge ins = insertion_edge(c, rb, c.idx.pos_of[m.v], m.after);
    const int head = m.flip ? e : m.u;
    const int tail = m.flip ? m.u : e;
    const long long stage1 =
        c.d(a, b) - c.d(a, m.u) - c.d(e, b) + c.d(ins.x, head) + c.d(tail, ins.y) - c.d(ins.x, ins.y);

    // Removal of w from the overloaded route, aware of the segment just
    // inserted next to it.
    const int pw = c.idx.pos_of[m.w];
    int wp = c.prev(rb, pw), wn = c.next(rb, pw);
    if (m.w == ins.x) wn = head;
    if (m.w == ins.y) wp = tail;
    const long long stage2_remove = c.d(wp, wn) - c.d(wp, m.w) - c.d(m.w, wn);

    // Reinsertion of w next to x, aware of the segment removed from its route.
    const int px = c.idx.pos_of[m.x];
    Edge rep = insertion_edge(c, rc, px, m.after2);
    if (rc == ra) {
        const bool x_in_seg = [&] {
            for (int i = 0; i < seg_len; ++i)
                if (c.route(ra)[pu + i] == rep.x) return true;
            return false;
        }();
        const bool y_in_seg = [&] {
            for (int i = 0; i < seg_len; ++i)
                if (c.route(ra)[pu + i] == rep.y) return true;
            return false;
        }();
        if (x_in_seg) rep.x = a;
        if (y_in_seg) rep.y = b;
    }
    const long long stage2_insert = c.d(rep.x, m.w) + c.d(m.w, rep.y) - c.d(rep.x, rep.y);

    return stage1 + stage2_remove + stage2_insert;
}

}  // namespace

int move_level(MoveKind kind) {
    return (kind == MoveKind::kEjectionRelocate || kind == MoveKind::kEjectionPathMove) ? 1 : 0;
}

const std::vector<MoveKind>& moves_for_level(int level) { return level == 0 ? kLevel0 : kLevel1; }

void NodeIndex::rebuild(const Solution& sol, int dimension) {
    route_of.assign(dimension, -1);
    pos_of.assign(dimension, -1);
    for (int r = 0; r < sol.route_count(); ++r) {
        const auto& route = sol.routes()[r];
        for (int p = 0; p < static_cast<int>(route.size()); ++p) {
            route_of[route[p]] = r;
            pos_of[route[p]] = p;
        }
    }
}

std::optional<long long> move_delta(const Instance& inst,
                                    const Solution& sol,
                                    const NodeIndex& index,
                                    const Move& move) {
    if (move.u < 1 || move.v < 1 || index.route_of[move.u] < 0 || index.route_of[move.v] < 0) return std::nullopt;
    const Ctx c{inst, sol, index};
    switch (move.kind) {
        case MoveKind::kIntraRelocate: return delta_intra_relocate(c, move);
        case MoveKind::kIntraSwap: return delta_intra_swap(c, move);
        case MoveKind::kTwoOpt: return delta_two_opt(c, move);
        case MoveKind::kInterRelocate: return delta_inter_relocate(c, move);
        case MoveKind::kInterSwap: return delta_inter_swap(c, move);
        case MoveKind::kTwoOptStar: return delta_two_opt_star(c, move);
        case MoveKind::kSinglePathMove: return delta_path_move(c, move, 2);
        case MoveKind::kDoublePathMove: return delta_path_move(c, move, 3);
        case MoveKind::kCrossExchange: return delta_cross_exchange(c, move);
        case MoveKind::kEjectionRelocate: return delta_ejection(c, move, 1);
        case MoveKind::kEjectionPathMove: return delta_ejection(c, move, 2);
    }
    return std::nullopt;
}

std::optional<long long> move_delta(const Instance& inst, const Solution& sol, const Move& move) {
    NodeIndex index;
    index.rebuild(sol, inst.dimension());
    return move_delta(inst, sol, index, move);
}

namespace {

void erase_segment(std::vector<int>& route, int pos, int count) {
    route.erase(route.begin() + pos, route.begin() + pos + count);
}

void insert_segment(std::vector<int>& route, int pos, const std::vector<int>& seg) {
    route.insert(route.begin() + pos, seg.begin(), seg.end());
}

int insertion_pos(const NodeIndex& idx, int v, bool after) { return idx.pos_of[v] + (after ? 1 : 0); }

}  // namespace

std::vector<int> apply_move(const Instance& inst, Solution& sol, const Move& move) {
    NodeIndex idx;
    idx.rebuild(sol, inst.dimension());

    const int ra = idx.route_of[move.u];
    const int rb = idx.route_of[move.v];
    std::vector<int> moved{move.u};

    switch (move.kind) {
        case MoveKind::kIntraRelocate: {
            auto& route = sol.route(ra);
            route.erase(route.begin() + idx.pos_of[move.u]);
            int pos = static_cast<int>(std::find(route.begin(), route.end(), move.v) - route.begin());
            route.insert(route.begin() + pos + (move.after ? 1 : 0), move.u);
            break;
        }
        case MoveKind::kIntraSwap: {
            auto& route = sol.route(ra);
            std::swap(route[idx.pos_of[move.u]], route[idx.pos_of[move.v]]);
            moved.push_back(move.v);
            break;
        }
        case MoveKind::kTwoOpt: {
            auto& route = sol.route(ra);
            int i = idx.pos_of[move.u], j = idx.pos_of[move.v];
            if (i > j) std::swap(i, j);
            std::reverse(route.begin() + i + 1, route.begin() + j + 1);
            moved.push_back(move.v);
            break;
        }
        case MoveKind::kInterRelocate: {
            erase_segment(sol.route(ra), idx.pos_of[move.u], 1);
            insert_segment(sol.route(rb), insertion_pos(idx, move.v, move.after), {move.u});
            break;
        }
        case MoveKind::kInterSwap: {
            sol.route(ra)[idx.pos_of[move.u]] = move.v;
            sol.route(rb)[idx.pos_of[move.v]] = move.u;
            moved.push_back(move.v);
            break;
        }
        case MoveKind::kTwoOptStar: {
            auto& a = sol.route(ra);
            auto& b = sol.route(rb);
            std::vector<int> tail_a(a.begin() + idx.pos_of[move.u] + 1, a.end());
            std::vector<int> tail_b(b.begin() + idx.pos_of[move.v] + 1, b.end());
            a.erase(a.begin() + idx.pos_of[move.u] + 1, a.end());
            b.erase(b.begin() + idx.pos_of[move.v] + 1, b.end());
            a.insert(a.end(), tail_b.begin(), tail_b.end());
            b.insert(b.end(), tail_a.begin(), tail_a.end());
            moved.push_back(move.v);
            break;
        }
        case MoveKind::kSinglePathMove:
        case MoveKind::kDoublePathMove: {
            const int seg_len = move.kind == MoveKind::kSinglePathMove ? 2 : 3;
            auto& a = sol.route(ra);
            std::vector<int> seg(a.begin() + idx.pos_of[move.u], a.begin() + idx.pos_of[move.u] + seg_len);
            if (move.flip) std::reverse(seg.begin(), seg.end());
            erase_segment(a, idx.pos_of[move.u], seg_len);
            insert_segment(sol.route(rb), insertion_pos(idx, move.v, move.after), seg);
            moved = seg;
            break;
        }
        case MoveKind::kCrossExchange: {
            auto& a = sol.route(ra);
            auto& b = sol.route(rb);
            std::vector<int> seg_a(a.begin() + idx.pos_of[move.u], a.begin() + idx.pos_of[move.u] + move.len_u);
            std::vector<int> seg_b(b.begin() + idx.pos_of[move.v], b.begin() + idx.pos_of[move.v] + move.len_v);
            erase_segment(a, idx.pos_of[move.u], move.len_u);
            insert_segment(a, idx.pos_of[move.u], seg_b);
            erase_segment(b, idx.pos_of[move.v], move.len_v);
            insert_segment(b, idx.pos_of[move.v], seg_a);
            moved = seg_a;
            moved.insert(moved.end(), seg_b.begin(), seg_b.end());
            break;
        }
        case MoveKind::kEjectionRelocate:
        case MoveKind::kEjectionPathMove: {
            const int seg_len = move.kind == MoveKind::kEjectionRelocate ? 1 : 2;
            auto& a = sol.route(ra);
            std::vector<int> seg(a.begin() + idx.pos_of[move.u], a.begin() + idx.pos_of[move.u] + seg_len);
            if (move.flip) std::reverse(seg.begin(), seg.end());
            erase_segment(a, idx.pos_of[move.u], seg_len);
            auto& b = sol.route(rb);
            int pos_v = static_cast<int>(std::find(b.begin(), b.end(), move.v) - b.begin());
            insert_segment(b, pos_v + (move.after ? 1 : 0), seg);

            int pos_w = static_cast<int>(std::find(b.begin(), b.end(), move.w) - b.begin());
            b.erase(b.begin() + pos_w);
            auto& target = sol.route(idx.route_of[move.x]);
            int pos_x = static_cast<int>(std::find(target.begin(), target.end(), move.x) - target.begin());
            target.insert(target.begin() + pos_x + (move.after2 ? 1 : 0), move.w);
            moved = seg;
            moved.push_back(move.w);
            break;
        }
    }

    // Drop emptied routes, then refresh loads and cost.
    for (int r = sol.route_count() - 1; r >= 0; --r)
        if (sol.routes()[r].empty()) sol.remove_route(r);
    sol.rebuild_caches(inst);
    return moved;
}

void enumerate_moves(const Instance& inst,
                     const Solution& sol,
                     const NodeIndex& index,
                     MoveKind kind,
                     int u,
                     int v,
                     int granular_size,
                     std::vector<Move>& out) {
    out.clear();
    const int ru = index.route_of[u], rv = index.route_of[v];
    if (ru < 0 || rv < 0) return;
    const bool same = ru == rv;

    switch (kind) {
        case MoveKind::kIntraRelocate:
            if (same && u != v) {
                out.push_back({kind, u, v, false});
                out.push_back({kind, u, v, true});
            }
            break;
        case MoveKind::kIntraSwap:
            if (same && u != v) out.push_back({kind, u, v});
            break;
        case MoveKind::kTwoOpt:
            if (same && u != v) out.push_back({kind, u, v});
            break;
        case MoveKind::kInterRelocate:
            if (!same) {
                out.push_back({kind, u, v, false});
                out.push_back({kind, u, v, true});
            }
            break;
        case MoveKind::kInterSwap:
            if (!same) out.push_back({kind, u, v});
            break;
        case MoveKind::kTwoOptStar:
            if (!same) out.push_back({kind, u, v});
            break;
        case MoveKind::kSinglePathMove:
        case MoveKind::kDoublePathMove: {
            if (same) break;
            const int seg_len = kind == MoveKind::kSinglePathMove ? 2 : 3;
            if (index.pos_of[u] + seg_len > static_cast<int>(sol.routes()[ru].size())) break;
            for (bool after : {false, true})
                for (bool flip : {false, true}) {
                    Move m{kind, u, v, after, flip};
                    out.push_back(m);
                }
            break;
        }
        case MoveKind::kCrossExchange: {
            if (same) break;
            const int max_u = std::min<int>(3, static_cast<int>(sol.routes()[ru].size()) - index.pos_of[u]);
            const int max_v = std::min<int>(3, static_cast<int>(sol.routes()[rv].size()) - index.pos_of[v]);
            for (int lu = 1; lu <= max_u; ++lu)
                for (int lv = 1; lv <= max_v; ++lv) {
                    Move m{kind, u, v};
                    m.len_u = lu;
                    m.len_v = lv;
                    out.push_back(m);
                }
            break;
        }
        case MoveKind::kEjectionRelocate:
        case MoveKind::kEjectionPathMove: {
            if (same) break;
            const int seg_len = kind == MoveKind::kEjectionRelocate ? 1 : 2;
            const auto& route_a = sol.routes()[ru];
            if (index.pos_of[u] + seg_len > static_cast<int>(route_a.size())) break;
            long long seg_load = 0;
            for (int i = 0; i < seg_len; ++i) seg_load += inst.demand(route_a[index.pos_of[u] + i]);
            // The chain only exists when the first relocation overloads the
            // target route.
            if (sol.route_load(rv) + seg_load <= inst.capacity()) break;

            const Ctx c{inst, sol, index};
            for (bool after : {false, true}) {
                for (bool flip : {false, true}) {
                    if (seg_len == 1 && flip) continue;
                    // Screen on the first stage being an improvement by itself.
                    const int e = route_a[index.pos_of[u] + seg_len - 1];
                    const int a = c.prev(ru, index.pos_of[u]);
                    const int b = c.next(ru, index.pos_of[u] + seg_len - 1);
                    const Edge ins = insertion_edge(c, rv, index.pos_of[v], after);
                    const int head = flip ? e : u;
                    const int tail = flip ? u : e;
                    const long long stage1 =
                        c.d(a, b) - c.d(a, u) - c.d(e, b) + c.d(ins.x, head) + c.d(tail, ins.y) - c.d(ins.x, ins.y);
                    if (stage1 >= 0) continue;

                    for (int w : sol.routes()[rv]) {
                        const auto& nbs = inst.neighbors_of(w);
                        const int limit = std::min<int>(granular_size, static_cast<int>(nbs.size()));
                        for (int k = 0; k < limit; ++k) {
                            const int x = nbs[k];
                            if (index.route_of[x] == rv || index.route_of[x] < 0) continue;
                            if (x == u || (seg_len == 2 && x == route_a[index.pos_of[u] + 1])) continue;
                            for (bool after2 : {false, true}) {
                                Move m{kind, u, v, after, flip};
                                m.w = w;
                                m.x = x;
                                m.after2 = after2;
                                out.push_back(m);
                            }
                        }
                    }
                }
            }
            break;
        }
    }
}

bool TabuList::contains(int a, int b) const {
    if (a > b) std::swap(a, b);
    for (const auto& e : entries_)
        if (e.first == a && e.second == b) return true;
    return false;
}

void TabuList::insert(int a, int b) {
    if (a > b) std::swap(a, b);
    entries_.emplace_back(a, b);
    while (static_cast<int>(entries_.size()) > cap_) entries_.pop_front();
}

void VertexCache::push(int customer) {
    for (auto it = entries_.begin(); it != entries_.end(); ++it)
        if (*it == customer) {
            entries_.erase(it);
            break;
        }
    entries_.push_back(customer);
    while (static_cast<int>(entries_.size()) > cap_) entries_.pop_front();
}

RepairStrategy select_strategy(RouteSizeClass size_class, int regen_count, bool new_best_found) {
    if (new_best_found) return RepairStrategy::kFull;
    if (size_class == RouteSizeClass::kShort) {
        if (regen_count < 3) return RepairStrategy::kFull;
        if (regen_count == 3) return RepairStrategy::kFullGranular;
        return RepairStrategy::kGranular;
    }
    return regen_count < 2 ? RepairStrategy::kFull : RepairStrategy::kGranular;
}

SearchEngine::SearchEngine(const Instance& inst, const Params& params, Rng& rng)
    : inst_(inst),
      params_(params),
      rng_(rng),
      cache_(params.cache_cap),
      granular_(params.granular_init, params.granular_growth, params.granular_max) {}

void SearchEngine::destroy_repair(Solution& sol, Incumbent& incumbent, RepairStrategy strategy) {
    if (sol.route_count() == 0) return;
    const int destroy_count = std::min(params_.size_class == RouteSizeClass::kShort ? 2 : 1, sol.route_count());

    int r1 = rng_.int_below(sol.route_count());
    int r2 = -1;
    if (destroy_count == 2) {
        r2 = rng_.int_below(sol.route_count() - 1);
        if (r2 >= r1) ++r2;
    }

    std::vector<int> freed;
    freed.insert(freed.end(), sol.routes()[r1].begin(), sol.routes()[r1].end());
    if (r2 >= 0) freed.insert(freed.end(), sol.routes()[r2].begin(), sol.routes()[r2].end());
    if (r2 > r1) std::swap(r1, r2);
    sol.remove_route(r1);
    if (r2 >= 0) sol.remove_route(r2);
    sol.rebuild_caches(inst_);
    rng_.shuffle(freed);

    // Current route of each routed customer, kept up to date as we reinsert.
    std::vector<int> route_of(inst_.dimension(), -1);
    for (int r = 0; r < sol.route_count(); ++r)
        for (int c : sol.routes()[r]) route_of[c] = r;

    const int granular_limit =
        strategy == RepairStrategy::kFullGranular ? params_.granular_max : granular_.current();

    for (int c : freed) {
        const long long q = inst_.demand(c);
        int best_route = -1, best_pos = -1;
        long long best_delta = 0;
        bool found = false;

        if (strategy == RepairStrategy::kFull) {
            for (int r = 0; r < sol.route_count(); ++r) {
                if (sol.route_load(r) + q > inst_.capacity()) continue;
                const auto& route = sol.routes()[r];
                for (int p = 0; p <= static_cast<int>(route.size()); ++p) {
                    const int before = p == 0 ? kDepot : route[p - 1];
                    const int next = p == static_cast<int>(route.size()) ? kDepot : route[p];
                    const long long delta =
                        inst_.distance(before, c) + inst_.distance(c, next) - inst_.distance(before, next);
                    if (!found || delta < best_delta) {
                        found = true;
                        best_delta = delta;
                        best_route = r;
                        best_pos = p;
                    }
                }
            }
        } else {
            const auto& nbs = inst_.neighbors_of(c);
            const int limit = std::min<int>(granular_limit, static_cast<int>(nbs.size()));
            for (int k = 0; k < limit; ++k) {
                const int anchor = nbs[k];
                const int r = route_of[anchor];
                if (r < 0) continue;
                if (sol.route_load(r) + q > inst_.capacity()) continue;
                const auto& route = sol.routes()[r];
                const int p = static_cast<int>(std::find(route.begin(), route.end(), anchor) - route.begin());
                const int before_prev = p == 0 ? kDepot : route[p - 1];
                const int after_next = p + 1 == static_cast<int>(route.size()) ? kDepot : route[p + 1];
                const long long delta_before =
                    inst_.distance(before_prev, c) + inst_.distance(c, anchor) - inst_.distance(before_prev, anchor);
                if (!found || delta_before < best_delta) {
                    found = true;
                    best_delta = delta_before;
                    best_route = r;
                    best_pos = p;
                }
                const long long delta_after =
                    inst_.distance(anchor, c) + inst_.distance(c, after_next) - inst_.distance(anchor, after_next);
                if (delta_after < best_delta) {
                    best_delta = delta_after;
                    best_route = r;
                    best_pos = p + 1;
                }
            }
        }

        if (found) {
            sol.route(best_route).insert(sol.route(best_route).begin() + best_pos, c);
            sol.set_route_load(best_route, sol.route_load(best_route) + q);
            sol.add_cost(best_delta);
            route_of[c] = best_route;
        } else {
            sol.append_route({c}, q);
            sol.add_cost(2 * inst_.distance(kDepot, c));
            route_of[c] = sol.route_count() - 1;
        }
    }

    cache_.clear();
    for (int c : freed) cache_.push(c);
    incumbent.offer(sol);
}

bool SearchEngine::execute_operator(MoveKind kind, Solution& sol, Incumbent& incumbent) {
    index_.rebuild(sol, inst_.dimension());
    TabuList tabu(params_.tabu_cap);
    bool improved = false;

    const std::vector<int> snapshot(cache_.entries().begin(), cache_.entries().end());
    for (int u : snapshot) {
        Move best_move;
        long long best_delta = 0;
        int best_anchor = -1;
        bool found = false;

        const auto& nbs = inst_.neighbors_of(u);
        const int limit = std::min<int>(granular_.current(), static_cast<int>(nbs.size()));
        for (int k = 0; k < limit; ++k) {
            const int v = nbs[k];
            const bool banned = tabu.contains(u, v);
            enumerate_moves(inst_, sol, index_, kind, u, v, granular_.current(), scratch_moves_);
            for (const Move& m : scratch_moves_) {
                const auto delta = move_delta(inst_, sol, index_, m);
                if (!delta || *delta >= best_delta) continue;
                // A banned pair may still act when it would set a new global best.
                if (banned && sol.cost() + *delta >= incumbent.cost) continue;
                best_move = m;
                best_delta = *delta;
                best_anchor = v;
                found = true;
            }
        }

        if (found) {
            const auto moved = apply_move(inst_, sol, best_move);
            index_.rebuild(sol, inst_.dimension());
            tabu.insert(u, best_anchor);
            for (int m : moved) cache_.push(m);
            improved = true;
        }
    }
    return improved;
}

void SearchEngine::random_neighborhood_search(int level, Solution& sol, Incumbent& incumbent) {
    std::vector<MoveKind> ops = moves_for_level(level);
    rng_.shuffle(ops);
    const int size = static_cast<int>(ops.size());
    int current = 0, last = 0;
    do {
        const long long before = sol.cost();
        execute_operator(ops[last], sol, incumbent);
        if (sol.cost() < before) {
            current = last;
            incumbent.offer(sol);
        }
        last = (last + 1) % size;
    } while (current != last);
}

void SearchEngine::local_search_improvement(Solution& sol, Incumbent& incumbent) {
    int level = 0;
    while (level < 2) {
        const long long before = sol.cost();
        random_neighborhood_search(level, sol, incumbent);
        if (sol.cost() < before) {
            level = 0;
        } else {
            ++level;
        }
    }
}

}  // namespace mscvrp

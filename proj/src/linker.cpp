#include "linklab/linker.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

#include "linklab/connectivity.hpp"
#include "linklab/errors.hpp"
#include "linklab/menger.hpp"
#include "linklab/oracle.hpp"

namespace linklab {

Rational theorem_bounds(int a, int kappa_g, int h) {
    if (a < 1 || h < 1 || kappa_g < h)
        throw std::invalid_argument(
            "theorem_bounds requires a >= 1 and kappa_g >= h >= 1");
    long long num = 1LL * a * (kappa_g + h);
    long long den = 2LL * a + 1;
    long long g = std::gcd(num, den);
    return {num / g, den / g};
}

long long rational_floor(const Rational& r) { return r.num / r.den; }

namespace {

using Pair = std::pair<int, int>;
using Pairs = std::vector<Pair>;

// ---- two-factor coordinate arithmetic ----------------------------------

struct Ctx {
    const Graph* G = nullptr;
    const Graph* H = nullptr;
    int ng = 0, nh = 0;
    int id(int g, int h) const { return g * nh + h; }
    int gcoord(int v) const { return v / nh; }
    int hcoord(int v) const { return v % nh; }
};

Ctx make_ctx(const ProductGraph& p) {
    if (p.factors.size() != 2)
        throw std::invalid_argument("solver expects a two-factor product; "
                                    "combine leading factors with product_of");
    Ctx c;
    c.G = &p.factors[0];
    c.H = &p.factors[1];
    c.ng = c.G->size();
    c.nh = c.H->size();
    return c;
}

void check_pairs(int n, const Pairs& pairs) {
    std::vector<char> seen(n, 0);
    for (const auto& [s, t] : pairs)
        for (int v : {s, t}) {
            if (v < 0 || v >= n)
                throw std::invalid_argument("terminal out of range");
            if (seen[v])
                throw std::invalid_argument("terminals are not distinct");
            seen[v] = 1;
        }
}

// ---- occupancy bookkeeping ----------------------------------------------

struct State {
    const Ctx* ctx;
    std::vector<char> used;     // occupied product vertices
    std::vector<int> col_count; // occupied vertices per G-coordinate column

    explicit State(const Ctx& c)
        : ctx(&c), used(size_t(c.ng) * c.nh, 0), col_count(c.ng, 0) {}

    bool is_used(int v) const { return used[size_t(v)] != 0; }
    bool mark(int v) {
        if (used[size_t(v)])
            return false;
        used[size_t(v)] = 1;
        ++col_count[ctx->gcoord(v)];
        return true;
    }
    void unmark(int v) {
        used[size_t(v)] = 0;
        --col_count[ctx->gcoord(v)];
    }
    void mark_all(const std::vector<int>& vs) {
        for (int v : vs)
            mark(v);
    }
};

// ---- path helpers --------------------------------------------------------

// Shortest path through non-blocked vertices; endpoints must be unblocked.
std::optional<std::vector<int>> bfs_path(const Graph& g, int from, int to,
                                         const std::vector<char>& blocked) {
    if (blocked[from] || blocked[to])
        return std::nullopt;
    if (from == to)
        return std::vector<int>{from};
    std::vector<int> prev(g.size(), -2);
    prev[from] = -1;
    std::queue<int> q;
    q.push(from);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : g.neighbors(v)) {
            if (prev[w] != -2 || blocked[w])
                continue;
            prev[w] = v;
            if (w == to) {
                std::vector<int> path;
                for (int x = to; x != -1; x = prev[x])
                    path.push_back(x);
                std::reverse(path.begin(), path.end());
                return path;
            }
            q.push(w);
        }
    }
    return std::nullopt;
}

// Appends seg (reversed if asked), dropping the first vertex when it repeats
// path.back().  Junctions that are merely adjacent are concatenated as-is;
// final validation catches genuine stitching bugs.
void stitch(std::vector<int>& path, std::vector<int> seg, bool reversed = false) {
    if (seg.empty())
        return;
    if (reversed)
        std::reverse(seg.begin(), seg.end());
    if (path.empty()) {
        path = std::move(seg);
        return;
    }
    auto begin = seg.begin();
    if (path.back() == seg.front())
        ++begin;
    path.insert(path.end(), begin, seg.end());
}

std::vector<int> layer_to_product(const Ctx& c, const std::vector<int>& gpath,
                                  int h) {
    std::vector<int> out;
    out.reserve(gpath.size());
    for (int g : gpath)
        out.push_back(c.id(g, h));
    return out;
}

std::vector<int> column_to_product(const Ctx& c, const std::vector<int>& hpath,
                                   int g) {
    std::vector<int> out;
    out.reserve(hpath.size());
    for (int h : hpath)
        out.push_back(c.id(g, h));
    return out;
}

// ---- solver job ----------------------------------------------------------

struct Job {
    const ProductGraph* p;
    Ctx ctx;
    Pairs pairs; // product ids
    std::vector<int> F; // vertices reserved by outer recursion levels
    const SolverParams* params;
    long long budget = 0;
    int depth = 0;
    bool factor_checked = false;
    std::vector<std::string> trace;
};

// Joins `config` (factor-G vertex pairs, exact pairing) inside one G-layer
// while avoiding `obstacles`; paths come back in factor-G ids.  nullopt means
// exhaustive search proved the layer linkage impossible.
std::optional<std::vector<std::vector<int>>>
layer_solve(const Graph& G, const Pairs& config, std::vector<int> obstacles,
            long long budget) {
    if (config.empty())
        return std::vector<std::vector<int>>{};
    if (G.is_complete()) {
        // Distinct endpoints are adjacent, so direct edges always work.
        std::vector<std::vector<int>> out;
        for (const auto& [s, t] : config)
            out.push_back({s, t});
        return out;
    }
    std::sort(obstacles.begin(), obstacles.end());
    obstacles.erase(std::unique(obstacles.begin(), obstacles.end()),
                    obstacles.end());
    if (obstacles.empty()) {
        if (G.size() > oracle_max_vertices)
            throw unsupported_instance("factor too large for in-layer search");
        auto sol = solve_config(G, config, budget);
        if (!sol)
            return std::nullopt;
        return std::move(sol->paths);
    }
    std::vector<int> keep;
    keep.reserve(G.size());
    std::vector<int> inv(G.size(), -1);
    size_t oi = 0;
    for (int v = 0; v < G.size(); ++v) {
        if (oi < obstacles.size() && obstacles[oi] == v) {
            ++oi;
            continue;
        }
        inv[v] = static_cast<int>(keep.size());
        keep.push_back(v);
    }
    Pairs sub;
    for (const auto& [s, t] : config) {
        if (inv[s] < 0 || inv[t] < 0)
            throw internal_error("layer_solve: endpoint listed as obstacle");
        sub.push_back({inv[s], inv[t]});
    }
    Graph gsub = G.induced(keep);
    if (gsub.size() > oracle_max_vertices)
        throw unsupported_instance("factor too large for in-layer search");
    auto sol = solve_config(gsub, sub, budget);
    if (!sol)
        return std::nullopt;
    std::vector<std::vector<int>> out;
    for (auto& path : sol->paths) {
        for (int& v : path)
            v = keep[v];
        out.push_back(std::move(path));
    }
    return out;
}

// ---- restriction of the H factor (for recursion) -------------------------

struct SubProduct {
    ProductGraph p;
    std::vector<int> keep_h; // sub h-coordinate -> original
    std::vector<int> inv_h;  // original h-coordinate -> sub (-1 if removed)
};

SubProduct restrict_h(const Ctx& c, const std::vector<int>& removed) {
    SubProduct sp;
    std::vector<char> gone(c.nh, 0);
    for (int h : removed)
        gone[h] = 1;
    sp.inv_h.assign(c.nh, -1);
    for (int h = 0; h < c.nh; ++h)
        if (!gone[h]) {
            sp.inv_h[h] = static_cast<int>(sp.keep_h.size());
            sp.keep_h.push_back(h);
        }
    sp.p = cartesian_product(*c.G, c.H->induced(sp.keep_h));
    return sp;
}

int sub_id(const Ctx& c, const SubProduct& sp, int v) {
    int h = sp.inv_h[c.hcoord(v)];
    if (h < 0)
        throw internal_error("restrict_h: vertex lies in a removed layer");
    return c.gcoord(v) * static_cast<int>(sp.keep_h.size()) + h;
}

int orig_id(const Ctx& c, const SubProduct& sp, int v) {
    int nh2 = static_cast<int>(sp.keep_h.size());
    return c.id(v / nh2, sp.keep_h[v % nh2]);
}

SolveResult run_b1(Job& job);

// Builds the sub-job on G [] (H - removed) and runs `fn` on it, translating
// pairs and blocked vertices in and paths back out.
template <typename Fn>
std::vector<std::vector<int>> recurse_without_layers(
    Job& job, const std::vector<int>& removed, const Pairs& sub_pairs_orig,
    Fn&& fn) {
    SubProduct sp = restrict_h(job.ctx, removed);
    Job sub;
    sub.p = &sp.p;
    sub.ctx = make_ctx(sp.p);
    for (const auto& [s, t] : sub_pairs_orig)
        sub.pairs.push_back({sub_id(job.ctx, sp, s), sub_id(job.ctx, sp, t)});
    for (int f : job.F)
        if (sp.inv_h[job.ctx.hcoord(f)] >= 0)
            sub.F.push_back(sub_id(job.ctx, sp, f));
    sub.params = job.params;
    sub.budget = job.budget;
    sub.depth = job.depth - 1;
    sub.factor_checked = job.factor_checked;
    SolveResult res = fn(sub);
    for (const std::string& line : sub.trace)
        job.trace.push_back(line);
    for (auto& path : res.system.paths)
        for (int& v : path)
            v = orig_id(job.ctx, sp, v);
    return std::move(res.system.paths);
}

// Additional case-specific blocked vertices are threaded through job.F; they
// accumulate one partner per vertical edge-join and shrink the pair count by
// one each time, so every budget argument below keeps its slack.
SolveResult oracle_rescue(Job& job) {
    const int n = job.ctx.ng * job.ctx.nh;
    std::vector<char> drop(n, 0);
    for (int v : job.F)
        drop[v] = 1;
    std::vector<int> keep;
    keep.reserve(n);
    std::vector<int> inv(n, -1);
    for (int v = 0; v < n; ++v)
        if (!drop[v]) {
            inv[v] = static_cast<int>(keep.size());
            keep.push_back(v);
        }
    if (static_cast<int>(keep.size()) > oracle_max_vertices)
        throw unsupported_instance("instance too large for exhaustive fallback");
    Graph sub = job.p->graph.induced(keep);
    Pairs cfg;
    for (const auto& [s, t] : job.pairs) {
        if (inv[s] < 0 || inv[t] < 0)
            throw internal_error("oracle_rescue: terminal marked as blocked");
        cfg.push_back({inv[s], inv[t]});
    }
    auto sol = solve_config(sub, cfg, job.budget);
    if (!sol)
        throw unsupported_instance("exhaustive fallback found no linkage");
    SolveResult res;
    for (auto& path : sol->paths) {
        for (int& v : path)
            v = keep[v];
        res.system.paths.push_back(std::move(path));
    }
    job.trace.push_back("fallback:oracle");
    return res;
}

// ---- funnel routine: G |pairs|-linked, H connected ------------------------

SolveResult run_b1(Job& job) {
    const Ctx& c = job.ctx;
    const int k = static_cast<int>(job.pairs.size());
    SolveResult res;
    if (k == 0) {
        job.trace.push_back("b1:empty");
        return res;
    }
    if (job.depth <= 0)
        throw internal_error("recursion depth exhausted");

    State st(c);
    for (const auto& [s, t] : job.pairs) {
        st.mark(s);
        st.mark(t);
    }
    for (int f : job.F)
        st.mark(f);

    std::vector<int> cnt(c.nh, 0);
    std::vector<char> f_in(c.nh, 0);
    for (const auto& [s, t] : job.pairs) {
        ++cnt[c.hcoord(s)];
        ++cnt[c.hcoord(t)];
    }
    for (int f : job.F)
        f_in[c.hcoord(f)] = 1;

    std::vector<int> candidates;
    for (int h = 0; h < c.nh; ++h)
        if (cnt[h] > 0)
            candidates.push_back(h);
    std::sort(candidates.begin(), candidates.end(), [&](int x, int y) {
        return std::pair(f_in[x], x) < std::pair(f_in[y], y);
    });

    for (int x : candidates) {
        // Route every outside terminal into layer x, truncate at the first
        // layer vertex reached, then link the 2k endpoints inside the layer.
        std::vector<int> inside, outside;
        for (const auto& [s, t] : job.pairs)
            for (int v : {s, t})
                (c.hcoord(v) == x ? inside : outside).push_back(v);
        std::vector<int> entry(size_t(c.ng) * c.nh, -1);
        std::vector<std::vector<int>> approach(size_t(c.ng) * c.nh);
        bool ok = true;
        if (!outside.empty()) {
            std::vector<int> sinks;
            for (int g = 0; g < c.ng; ++g) {
                int v = c.id(g, x);
                if (!st.is_used(v))
                    sinks.push_back(v);
            }
            if (static_cast<int>(sinks.size()) <
                static_cast<int>(outside.size())) {
                job.trace.push_back("b1:layer=" + std::to_string(x) +
                                    " skipped (too few free layer vertices)");
                continue;
            }
            MengerRequest req;
            req.sources = outside;
            req.sinks = std::move(sinks);
            req.forbidden = inside;
            for (int f : job.F)
                req.forbidden.push_back(f);
            MengerResult mr = menger_link(job.p->graph, req);
            if (!mr.success) {
                job.trace.push_back("b1:layer=" + std::to_string(x) +
                                    " skipped (routing cut off)");
                continue;
            }
            std::vector<int> sorted_sources = outside;
            std::sort(sorted_sources.begin(), sorted_sources.end());
            for (size_t i = 0; i < sorted_sources.size(); ++i) {
                std::vector<int> kept = truncate_path(
                    mr.system.paths[i],
                    [&](int v) { return c.hcoord(v) == x; });
                int s = sorted_sources[i];
                entry[s] = kept.back();
                approach[s] = std::move(kept);
            }
        }
        Pairs config;
        for (const auto& [s, t] : job.pairs) {
            int rs = c.hcoord(s) == x ? s : entry[s];
            int rt = c.hcoord(t) == x ? t : entry[t];
            config.push_back({c.gcoord(rs), c.gcoord(rt)});
        }
        std::vector<int> obstacles;
        for (int f : job.F)
            if (c.hcoord(f) == x)
                obstacles.push_back(c.gcoord(f));
        auto mid = layer_solve(*c.G, config, obstacles, job.budget);
        if (!mid) {
            job.trace.push_back("b1:layer=" + std::to_string(x) +
                                " skipped (in-layer linkage impossible)");
            ok = false;
        }
        if (!ok)
            continue;
        for (size_t i = 0; i < job.pairs.size(); ++i) {
            auto [s, t] = job.pairs[i];
            std::vector<int> path;
            stitch(path, approach[s]);
            stitch(path, layer_to_product(c, (*mid)[i], x));
            stitch(path, approach[t], /*reversed=*/true);
            res.system.paths.push_back(std::move(path));
        }
        job.trace.push_back("b1:layer=" + std::to_string(x) + " inlayer=" +
                            std::to_string(inside.size()) + " routed=" +
                            std::to_string(outside.size()));
        return res;
    }
    if (job.params->fallback)
        return oracle_rescue(job);
    throw unsupported_instance("funnel routing failed in every candidate layer");
}

// ---- shared horizontal + vertical shift engine ----------------------------

struct EndInfo {
    int term = -1;
    int uprime = -1;
    std::vector<int> horiz; // term .. uprime, empty for layer residents
};

struct ShiftPlan {
    int alpha = -1;
    int beta = -1;
    std::vector<int> exempt; // reserved layers whose terminals stay put
    int cap = 0;             // per-prefix budget of the D-avoiding rounds
    int capacity = 0;        // max pairs a reserved layer can absorb
    bool strict = false;     // failures are solver bugs, not instance traits
};

bool contains(const std::vector<int>& xs, int x) {
    return std::find(xs.begin(), xs.end(), x) != xs.end();
}

// Ascending-position combinations; idx holds m strictly increasing values.
bool next_combination(std::vector<int>& idx, int n) {
    int m = static_cast<int>(idx.size());
    for (int i = m - 1; i >= 0; --i)
        if (idx[i] < n - (m - i)) {
            ++idx[i];
            for (int j = i + 1; j < m; ++j)
                idx[j] = idx[j - 1] + 1;
            return true;
        }
    return false;
}

// Assignments of free pairs to the two reserved layers: 0 = alpha, 1 = beta.
// forced[i] in {0, 1} pins a pair, 2 leaves it free.  Balanced splits first.
std::vector<std::vector<char>> assignment_variants(
    const std::vector<char>& forced, int capacity, int max_variants) {
    const int k = static_cast<int>(forced.size());
    int base_a = 0, base_b = 0;
    std::vector<int> free;
    for (int i = 0; i < k; ++i) {
        if (forced[i] == 0)
            ++base_a;
        else if (forced[i] == 1)
            ++base_b;
        else
            free.push_back(i);
    }
    std::vector<std::vector<char>> out;
    if (base_a > capacity || base_b > capacity)
        return out;
    const int nf = static_cast<int>(free.size());

    // First choice: alternate free pairs between the layers in input order.
    std::vector<char> alt(k);
    {
        int na = base_a, nb = base_b, turn = 0;
        for (int i = 0; i < k; ++i) {
            if (forced[i] != 2) {
                alt[i] = forced[i];
                continue;
            }
            char side = turn++ % 2 == 0 ? 0 : 1;
            if (side == 0 && na >= capacity)
                side = 1;
            else if (side == 1 && nb >= capacity)
                side = 0;
            (side == 0 ? na : nb) += 1;
            alt[i] = side;
        }
        if (na <= capacity && nb <= capacity)
            out.push_back(alt);
    }
    if (static_cast<int>(out.size()) >= max_variants)
        return out;

    std::vector<int> sizes;
    for (int s = 0; s <= nf; ++s)
        if (base_a + s <= capacity && base_b + (nf - s) <= capacity)
            sizes.push_back(s);
    std::stable_sort(sizes.begin(), sizes.end(), [&](int x, int y) {
        int dx = std::abs(2 * (base_a + x) - k), dy = std::abs(2 * (base_a + y) - k);
        return std::pair(dx, x) < std::pair(dy, y);
    });
    for (int s : sizes) {
        std::vector<int> idx(s);
        std::iota(idx.begin(), idx.end(), 0);
        bool more = s <= nf;
        while (more) {
            std::vector<char> assign(k);
            for (int i = 0; i < k; ++i)
                assign[i] = forced[i] == 2 ? 1 : forced[i];
            for (int pos : idx)
                assign[free[pos]] = 0;
            if (out.empty() || assign != out.front())
                out.push_back(std::move(assign));
            if (static_cast<int>(out.size()) >= max_variants)
                return out;
            more = s > 0 && next_combination(idx, nf);
        }
    }
    return out;
}

std::optional<SolveResult> shift_variant(
    Job& job, const ShiftPlan& plan, const State& base,
    const std::vector<std::array<EndInfo, 2>>& ends,
    const std::vector<char>& assign, int num_late) {
    const Ctx& c = job.ctx;
    auto fail = [&](const std::string& why) -> std::optional<SolveResult> {
        if (plan.strict)
            throw internal_error("guaranteed shift failed: " + why);
        job.trace.push_back("shift:variant-failed " + why);
        return std::nullopt;
    };

    State st = base;
    const int k = static_cast<int>(ends.size());
    std::vector<std::array<std::vector<int>, 2>> vert(k);
    std::vector<std::array<int, 2>> landing(k);
    std::vector<std::vector<int>> self_path(k);
    std::vector<char> self_joined(k, 0);
    for (int i = 0; i < k; ++i) {
        const int g0 = c.gcoord(ends[i][0].uprime);
        if (g0 == c.gcoord(ends[i][1].uprime)) {
            // Both endpoints share a column (torn between the two reserved
            // layers): join them inside that column instead of dropping.
            std::vector<char> blocked(c.nh, 0);
            for (int h = 0; h < c.nh; ++h)
                if (st.is_used(c.id(g0, h)))
                    blocked[h] = 1;
            blocked[c.hcoord(ends[i][0].uprime)] = 0;
            blocked[c.hcoord(ends[i][1].uprime)] = 0;
            auto hp = bfs_path(*c.H, c.hcoord(ends[i][0].uprime),
                               c.hcoord(ends[i][1].uprime), blocked);
            if (!hp)
                return fail("same-column pair blocked");
            self_path[i] = column_to_product(c, *hp, g0);
            st.mark_all(self_path[i]);
            self_joined[i] = 1;
            continue;
        }
        for (int s = 0; s < 2; ++s) {
            const EndInfo& e = ends[i][s];
            int target = assign[i] == 0 ? plan.alpha : plan.beta;
            int other = assign[i] == 0 ? plan.beta : plan.alpha;
            if (c.hcoord(e.uprime) == target) {
                landing[i][s] = e.uprime;
                continue;
            }
            int g = c.gcoord(e.uprime);
            int tv = c.id(g, target);
            if (st.is_used(tv))
                return fail("vertical target occupied");
            if (plan.strict && st.col_count[g] - 1 > num_late)
                throw internal_error("vertical phase: column holds more "
                                     "foreign vertices than rounds allow");
            std::vector<char> blocked(c.nh, 0);
            for (int h = 0; h < c.nh; ++h)
                if (st.is_used(c.id(g, h)))
                    blocked[h] = 1;
            blocked[other] = 1;
            blocked[c.hcoord(e.uprime)] = 0;
            auto hp = bfs_path(*c.H, c.hcoord(e.uprime), target, blocked);
            if (!hp)
                return fail("vertical routing blocked");
            vert[i][s] = column_to_product(c, *hp, g);
            st.mark_all(vert[i][s]);
            landing[i][s] = tv;
        }
    }

    std::vector<std::vector<int>> mids(k);
    for (int side = 0; side < 2; ++side) {
        int L = side == 0 ? plan.alpha : plan.beta;
        Pairs config;
        std::vector<int> members;
        std::vector<char> endpoint(c.ng, 0);
        for (int i = 0; i < k; ++i) {
            if (assign[i] != side || self_joined[i])
                continue;
            int gs = c.gcoord(landing[i][0]), gt = c.gcoord(landing[i][1]);
            config.push_back({gs, gt});
            members.push_back(i);
            endpoint[gs] = endpoint[gt] = 1;
        }
        std::vector<int> obstacles;
        for (int g = 0; g < c.ng; ++g)
            if (st.is_used(c.id(g, L)) && !endpoint[g])
                obstacles.push_back(g);
        auto mid = layer_solve(*c.G, config, obstacles, job.budget);
        if (!mid) {
            if (plan.strict) {
                if (job.factor_checked)
                    throw internal_error("guaranteed in-layer link failed");
                throw unsupported_instance(
                    "in-layer linking failed; the factor may not be as "
                    "linked as claimed");
            }
            return fail("in-layer linkage impossible");
        }
        for (size_t j = 0; j < members.size(); ++j)
            mids[members[j]] = layer_to_product(c, (*mid)[j], L);
    }

    SolveResult res;
    for (int i = 0; i < k; ++i) {
        std::vector<int> path{ends[i][0].term};
        stitch(path, ends[i][0].horiz);
        if (self_joined[i]) {
            stitch(path, self_path[i]);
        } else {
            stitch(path, vert[i][0]);
            stitch(path, mids[i]);
            stitch(path, vert[i][1], /*reversed=*/true);
        }
        std::vector<int> tail{ends[i][1].term};
        stitch(tail, ends[i][1].horiz);
        stitch(path, tail, /*reversed=*/true);
        res.system.paths.push_back(std::move(path));
    }
    return res;
}

// Horizontal rounds (ascending terminal count) relocate every terminal of a
// non-reserved layer to a vertex whose column is fully unoccupied, then the
// vertical phase drops each endpoint into its pair's reserved layer, where
// the final in-layer linkage happens.
std::optional<SolveResult> attempt_shift(Job& job, const ShiftPlan& plan) {
    const Ctx& c = job.ctx;
    const int k = static_cast<int>(job.pairs.size());
    auto fail = [&](const std::string& why) -> std::optional<SolveResult> {
        if (plan.strict)
            throw internal_error("guaranteed shift failed: " + why);
        job.trace.push_back("shift:failed " + why);
        return std::nullopt;
    };

    State st(c);
    for (const auto& [s, t] : job.pairs) {
        st.mark(s);
        st.mark(t);
    }
    for (int f : job.F)
        st.mark(f);

    std::vector<std::vector<int>> layer_terms(c.nh);
    for (const auto& [s, t] : job.pairs)
        for (int v : {s, t})
            layer_terms[c.hcoord(v)].push_back(v);

    std::vector<int> rounds;
    for (int h = 0; h < c.nh; ++h)
        if (!layer_terms[h].empty() && !contains(plan.exempt, h))
            rounds.push_back(h);
    std::sort(rounds.begin(), rounds.end(), [&](int x, int y) {
        return std::pair(layer_terms[x].size(), x) <
               std::pair(layer_terms[y].size(), y);
    });

    int num_late = 0;
    {
        int prefix = 0;
        for (int h : rounds) {
            prefix += static_cast<int>(layer_terms[h].size());
            if (prefix > plan.cap)
                ++num_late;
        }
    }

    std::vector<std::array<EndInfo, 2>> ends(k);
    std::vector<std::pair<int, int>> where(size_t(c.ng) * c.nh, {-1, -1});
    for (int i = 0; i < k; ++i) {
        ends[i][0].term = ends[i][0].uprime = job.pairs[i].first;
        ends[i][1].term = ends[i][1].uprime = job.pairs[i].second;
        where[job.pairs[i].first] = {i, 0};
        where[job.pairs[i].second] = {i, 1};
    }

    std::vector<int> endpoint_cols; // columns already owning a kept endpoint
    int prefix = 0;
    for (int x : rounds) {
        // A terminal alone in its column can drop vertically in place; only
        // columns holding further marks force a horizontal relocation.
        std::vector<int> T;
        for (int v : layer_terms[x]) {
            if (st.col_count[c.gcoord(v)] > 1)
                T.push_back(c.gcoord(v));
            else
                endpoint_cols.push_back(c.gcoord(v));
        }
        if (T.empty())
            continue;
        std::sort(T.begin(), T.end());
        const int s_i = static_cast<int>(T.size());
        const bool early = prefix + s_i <= plan.cap;

        std::vector<int> sinks;
        for (int g = 0; g < c.ng; ++g)
            if (st.col_count[g] == 0)
                sinks.push_back(g);
        if (static_cast<int>(sinks.size()) < s_i)
            return fail("not enough clean columns");
        std::vector<int> forbidden;
        for (int f : job.F)
            if (c.hcoord(f) == x)
                forbidden.push_back(c.gcoord(f));
        if (early)
            for (int g : endpoint_cols)
                forbidden.push_back(g);
        MengerRequest req{T, sinks, forbidden};
        MengerResult mr = menger_link(*c.G, req);
        if (!mr.success)
            return fail("horizontal round cut off");
        for (int i = 0; i < s_i; ++i) {
            std::vector<int> prod = layer_to_product(c, mr.system.paths[i], x);
            std::vector<int> kept;
            try {
                kept = truncate_path(prod, [&](int v) {
                    return st.col_count[c.gcoord(v)] == 0;
                });
            } catch (const not_found&) {
                return fail("truncation found no clean column");
            }
            st.mark_all(kept);
            int term = c.id(T[i], x);
            auto [pi, side] = where[term];
            ends[pi][side].uprime = kept.back();
            endpoint_cols.push_back(c.gcoord(kept.back()));
            ends[pi][side].horiz = std::move(kept);
        }
        prefix += s_i;
    }

    // Pair-to-layer assignment: layer residents pin their pair.  A pair torn
    // between both reserved layers stays free: whichever side it joins, the
    // other endpoint is rerouted vertically (leaving its old spot as an
    // obstacle for that layer's linkage), and the variants try both.
    std::vector<char> forced(k, 2);
    for (int i = 0; i < k; ++i) {
        bool at_a = false, at_b = false;
        for (int s = 0; s < 2; ++s) {
            int h = c.hcoord(ends[i][s].uprime);
            if (h == plan.alpha && contains(plan.exempt, plan.alpha))
                at_a = true;
            if (h == plan.beta && contains(plan.exempt, plan.beta))
                at_b = true;
        }
        if (at_a && !at_b)
            forced[i] = 0;
        else if (at_b && !at_a)
            forced[i] = 1;
    }
    auto variants = assignment_variants(forced, plan.capacity,
                                        plan.strict ? 1 : 200);
    if (variants.empty())
        return fail("no feasible pair assignment");
    for (const auto& assign : variants) {
        auto res = shift_variant(job, plan, st, ends, assign, num_late);
        if (res) {
            job.trace.push_back(
                "shift:alpha=" + std::to_string(plan.alpha) +
                " beta=" + std::to_string(plan.beta) +
                " late=" + std::to_string(num_late) +
                (plan.exempt.empty() ? "" : " reserved-with-terminals"));
            return res;
        }
        if (plan.strict)
            break;
    }
    return fail("every assignment variant failed");
}

// ---- per-pair column routine (small terminal profiles) --------------------

std::optional<SolveResult> small_case(Job& job) {
    const Ctx& c = job.ctx;
    const int k = static_cast<int>(job.pairs.size());
    State st(c);
    for (const auto& [s, t] : job.pairs) {
        st.mark(s);
        st.mark(t);
    }
    for (int f : job.F)
        st.mark(f);

    std::vector<std::array<std::vector<int>, 3>> segs(k); // u-horiz, column, v-horiz
    long nodes = 0;
    const long node_cap = 200000;

    auto route_in_layer = [&](int h, int gfrom, int gto,
                              std::vector<int>& marked)
        -> std::optional<std::vector<int>> {
        std::vector<char> blocked(c.ng, 0);
        for (int g = 0; g < c.ng; ++g)
            if (st.is_used(c.id(g, h)))
                blocked[g] = 1;
        blocked[gfrom] = blocked[gto] = 0;
        auto gp = bfs_path(*c.G, gfrom, gto, blocked);
        if (!gp)
            return std::nullopt;
        std::vector<int> prod = layer_to_product(c, *gp, h);
        for (int v : prod)
            if (st.mark(v))
                marked.push_back(v);
        return prod;
    };

    std::function<bool(int)> rec = [&](int i) -> bool {
        if (i == k)
            return true;
        if (++nodes > node_cap)
            return false;
        auto [u, v] = job.pairs[i];
        int gu = c.gcoord(u), hu = c.hcoord(u);
        int gv = c.gcoord(v), hv = c.hcoord(v);
        if (hu == hv) {
            std::vector<int> marked;
            auto direct = route_in_layer(hu, gu, gv, marked);
            if (!direct)
                return false;
            segs[i] = {std::move(*direct), {}, {}};
            if (rec(i + 1))
                return true;
            for (int w : marked)
                st.unmark(w);
            return false;
        }
        for (int col = 0; col < c.ng; ++col) {
            if (st.col_count[col] != 0)
                continue;
            std::vector<int> marked;
            auto hz_u = route_in_layer(hu, gu, col, marked);
            if (!hz_u) {
                for (int w : marked)
                    st.unmark(w);
                continue;
            }
            auto hz_v = route_in_layer(hv, gv, col, marked);
            if (!hz_v) {
                for (int w : marked)
                    st.unmark(w);
                continue;
            }
            std::vector<char> blocked(c.nh, 0);
            for (int h = 0; h < c.nh; ++h)
                if (st.is_used(c.id(col, h)))
                    blocked[h] = 1;
            blocked[hu] = blocked[hv] = 0;
            auto hp = bfs_path(*c.H, hu, hv, blocked);
            if (!hp) {
                for (int w : marked)
                    st.unmark(w);
                continue;
            }
            std::vector<int> colpath = column_to_product(c, *hp, col);
            for (int w : colpath)
                if (st.mark(w))
                    marked.push_back(w);
            segs[i] = {std::move(*hz_u), std::move(colpath), std::move(*hz_v)};
            if (rec(i + 1))
                return true;
            for (int w : marked)
                st.unmark(w);
        }
        return false;
    };

    if (!rec(0)) {
        job.trace.push_back("smallcase:failed");
        return std::nullopt;
    }
    SolveResult res;
    for (int i = 0; i < k; ++i) {
        std::vector<int> path;
        stitch(path, segs[i][0]);
        stitch(path, segs[i][1]);
        stitch(path, segs[i][2], /*reversed=*/true);
        res.system.paths.push_back(std::move(path));
    }
    job.trace.push_back("smallcase:pairs=" + std::to_string(k));
    return res;
}

// ---- crowded-layer branch of the two-reserved-layer theorem ---------------

SolveResult run_strong(Job& job, int a, int b);

struct CrowdedOutcome {
    std::optional<SolveResult> result;
    int switch_to = -1; // stuck pair fully inside the layer; retry joins it
};

CrowdedOutcome crowded_attempt(Job& job, int a, int b, int x, int joined) {
    const Ctx& c = job.ctx;
    CrowdedOutcome out;
    State st(c);
    for (const auto& [s, t] : job.pairs) {
        st.mark(s);
        st.mark(t);
    }
    for (int f : job.F)
        st.mark(f);

    if (joined < 0)
        for (size_t i = 0; i < job.pairs.size() && joined < 0; ++i)
            if (c.hcoord(job.pairs[i].first) == x &&
                c.hcoord(job.pairs[i].second) == x)
                joined = static_cast<int>(i);
    if (joined < 0)
        throw internal_error("crowded layer holds no full pair");

    int y = -1;
    for (int z : c.H->neighbors(x)) {
        bool clean = true;
        for (int g = 0; g < c.ng && clean; ++g)
            if (st.is_used(c.id(g, z)))
                clean = false;
        if (clean) {
            y = z;
            break;
        }
    }
    if (y < 0)
        throw internal_error("crowded layer has no clean neighbour layer");

    auto [u1, v1] = job.pairs[joined];
    auto gp = bfs_path(*c.G, c.gcoord(u1), c.gcoord(v1),
                       std::vector<char>(c.ng, 0));
    if (!gp)
        throw internal_error("factor is disconnected inside a clean layer");
    std::vector<int> join_path{u1};
    stitch(join_path, layer_to_product(c, *gp, y));
    stitch(join_path, {v1});
    st.mark_all(join_path);

    // Remaining layer terminals leave vertically: a pair adjacent across a
    // vertical edge is joined outright (the partner then blocks recursion),
    // everyone else claims a free neighbour-layer vertex outside G_y.
    std::vector<int> uprime(size_t(c.ng) * c.nh, -1);
    std::vector<char> edge_joined(job.pairs.size(), 0);
    std::vector<int> F_add;
    int shifted = 0;
    for (size_t i = 0; i < job.pairs.size(); ++i) {
        if (static_cast<int>(i) == joined)
            continue;
        for (int side = 0; side < 2; ++side) {
            int u = side == 0 ? job.pairs[i].first : job.pairs[i].second;
            int partner = side == 0 ? job.pairs[i].second : job.pairs[i].first;
            if (c.hcoord(u) != x || edge_joined[i])
                continue;
            if (c.gcoord(partner) == c.gcoord(u) &&
                c.H->adjacent(x, c.hcoord(partner))) {
                edge_joined[i] = 1;
                F_add.push_back(partner);
                continue;
            }
            int picked = -1;
            for (int z : c.H->neighbors(x)) {
                if (z == y)
                    continue;
                int cand = c.id(c.gcoord(u), z);
                if (!st.is_used(cand)) {
                    picked = cand;
                    break;
                }
            }
            if (picked < 0) {
                if (c.hcoord(partner) == x)
                    out.switch_to = static_cast<int>(i);
                job.trace.push_back("crowded:stuck terminal " +
                                    std::to_string(u));
                return out;
            }
            st.mark(picked);
            uprime[u] = picked;
            ++shifted;
        }
    }

    Pairs sub_pairs;
    std::vector<int> sub_to_orig;
    for (size_t i = 0; i < job.pairs.size(); ++i) {
        if (static_cast<int>(i) == joined || edge_joined[i])
            continue;
        auto [s, t] = job.pairs[i];
        int s2 = uprime[s] >= 0 ? uprime[s] : s;
        int t2 = uprime[t] >= 0 ? uprime[t] : t;
        sub_pairs.push_back({s2, t2});
        sub_to_orig.push_back(static_cast<int>(i));
    }

    std::vector<int> saved_F = job.F;
    for (int f : F_add)
        job.F.push_back(f);
    std::vector<std::vector<int>> sub_paths;
    try {
        sub_paths = recurse_without_layers(
            job, {x, y}, sub_pairs,
            [&](Job& sub) { return run_strong(sub, a, b - 1); });
    } catch (const unsupported_instance& e) {
        job.F = std::move(saved_F);
        job.trace.push_back(std::string("crowded:recursion failed ") + e.what());
        return out;
    } catch (...) {
        job.F = std::move(saved_F);
        throw;
    }
    job.F = std::move(saved_F);

    SolveResult res;
    res.system.paths.resize(job.pairs.size());
    res.system.paths[joined] = std::move(join_path);
    for (size_t i = 0; i < job.pairs.size(); ++i)
        if (edge_joined[i])
            res.system.paths[i] = {job.pairs[i].first, job.pairs[i].second};
    for (size_t j = 0; j < sub_paths.size(); ++j) {
        int i = sub_to_orig[j];
        auto [s, t] = job.pairs[i];
        std::vector<int> path;
        if (uprime[s] >= 0)
            path.push_back(s);
        stitch(path, sub_paths[j]);
        if (uprime[t] >= 0)
            stitch(path, {t});
        res.system.paths[i] = std::move(path);
    }
    job.trace.push_back("strong:crowded x=" + std::to_string(x) +
                        " y=" + std::to_string(y) +
                        " joined=" + std::to_string(joined) +
                        " shifted=" + std::to_string(shifted) + " edge_joins=" +
                        std::to_string(std::count(edge_joined.begin(),
                                                  edge_joined.end(), 1)));
    out.result = std::move(res);
    return out;
}

SolveResult run_crowded(Job& job, int a, int b, int x) {
    CrowdedOutcome first = crowded_attempt(job, a, b, x, -1);
    if (first.result)
        return std::move(*first.result);
    if (first.switch_to >= 0) {
        job.trace.push_back("crowded:switch joined pair");
        CrowdedOutcome second = crowded_attempt(job, a, b, x, first.switch_to);
        if (second.result)
            return std::move(*second.result);
        // Without outer blocked vertices the switched round is asserted to
        // terminate; a second failure is a solver bug, not an instance trait.
        if (job.F.empty())
            throw internal_error("crowded-layer shift stuck twice");
    }
    if (job.params->fallback)
        return oracle_rescue(job);
    throw unsupported_instance("crowded-layer shift ran out of free "
                               "neighbour vertices");
}

// ---- global shift orchestration for the two-reserved-layer theorem --------

SolveResult run_shift_orchestrated(Job& job, int a, int b) {
    const Ctx& c = job.ctx;
    State st(c);
    for (const auto& [s, t] : job.pairs) {
        st.mark(s);
        st.mark(t);
    }
    for (int f : job.F)
        st.mark(f);

    std::vector<int> cnt(c.nh, 0);
    for (const auto& [s, t] : job.pairs) {
        ++cnt[c.hcoord(s)];
        ++cnt[c.hcoord(t)];
    }
    std::vector<char> layer_dirty(c.nh, 0);
    for (int h = 0; h < c.nh; ++h)
        for (int g = 0; g < c.ng && !layer_dirty[h]; ++g)
            if (st.is_used(c.id(g, h)))
                layer_dirty[h] = 1;

    // Reserve the two best layers: fully clean ones first, then the layers
    // with the fewest terminals (those keep their residents in place).
    std::vector<int> order(c.nh);
    std::iota(order.begin(), order.end(), 0);
    auto key = [&](int h) {
        if (!layer_dirty[h])
            return std::tuple(0, 0, h);
        if (cnt[h] > 0)
            return std::tuple(1, cnt[h], h);
        return std::tuple(2, 0, h); // blocked vertices only
    };
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return key(x) < key(y); });

    ShiftPlan plan;
    plan.alpha = order[0];
    plan.beta = order[1];
    plan.cap = 2 * a - 1;
    plan.capacity = a;
    for (int h : {plan.alpha, plan.beta})
        if (cnt[h] > 0)
            plan.exempt.push_back(h);

    int num_late = 0;
    {
        std::vector<std::pair<int, int>> rounds; // (count, layer)
        for (int h = 0; h < c.nh; ++h)
            if (cnt[h] > 0 && !contains(plan.exempt, h))
                rounds.push_back({cnt[h], h});
        std::sort(rounds.begin(), rounds.end());
        int prefix = 0;
        for (auto [s, h] : rounds) {
            prefix += s;
            if (prefix > plan.cap)
                ++num_late;
        }
    }
    plan.strict = plan.exempt.empty() && job.F.empty() &&
                  num_late + 1 <= 2 * b - 2;

    bool small_profile = true;
    int twos = 0;
    for (int h = 0; h < c.nh; ++h) {
        if (cnt[h] == 2)
            ++twos;
        else if (cnt[h] > 2)
            small_profile = false;
    }
    small_profile = small_profile && twos <= 1;

    if (plan.strict) {
        auto res = attempt_shift(job, plan);
        if (!res)
            throw internal_error("guaranteed shift returned no result");
        return std::move(*res);
    }
    if (small_profile) {
        auto res = small_case(job);
        if (res)
            return std::move(*res);
    }
    try {
        auto res = attempt_shift(job, plan);
        if (res)
            return std::move(*res);
    } catch (const unsupported_instance& e) {
        job.trace.push_back(std::string("shift:abandoned ") + e.what());
    }
    if (!small_profile) {
        auto res = small_case(job);
        if (res)
            return std::move(*res);
    }
    if (job.params->fallback)
        return oracle_rescue(job);
    throw unsupported_instance("shift phases failed and the per-pair column "
                               "routine found no assignment");
}

SolveResult run_strong(Job& job, int a, int b) {
    if (job.depth <= 0)
        throw internal_error("recursion depth exhausted");
    if (job.pairs.empty())
        return {};
    if (b <= 1)
        return run_b1(job);
    const Ctx& c = job.ctx;
    std::vector<int> cnt(c.nh, 0);
    for (const auto& [s, t] : job.pairs) {
        ++cnt[c.hcoord(s)];
        ++cnt[c.hcoord(t)];
    }
    for (int h = 0; h < c.nh; ++h)
        if (cnt[h] > 2 * a - 1)
            return run_crowded(job, a, b, h);
    return run_shift_orchestrated(job, a, b);
}

// ---- k -> k+1 cases --------------------------------------------------------

// Join one full pair inside layer x, move the other layer terminals out
// through vertical edges, then funnel the k remaining pairs in G [] (H - x).
std::optional<SolveResult> empty_big_layer(Job& job, int x, int joined,
                                           int* switch_to) {
    const Ctx& c = job.ctx;
    State st(c);
    for (const auto& [s, t] : job.pairs) {
        st.mark(s);
        st.mark(t);
    }
    for (int f : job.F)
        st.mark(f);

    if (joined < 0)
        for (size_t i = 0; i < job.pairs.size() && joined < 0; ++i)
            if (c.hcoord(job.pairs[i].first) == x &&
                c.hcoord(job.pairs[i].second) == x)
                joined = static_cast<int>(i);
    if (joined < 0)
        return std::nullopt;

    auto [u1, v1] = job.pairs[joined];
    std::vector<char> blocked(c.ng, 0);
    for (int g = 0; g < c.ng; ++g)
        if (st.is_used(c.id(g, x)))
            blocked[g] = 1;
    blocked[c.gcoord(u1)] = blocked[c.gcoord(v1)] = 0;
    auto gp = bfs_path(*c.G, c.gcoord(u1), c.gcoord(v1), blocked);
    if (!gp) {
        job.trace.push_back("bigjoin:in-layer path blocked");
        return std::nullopt;
    }
    std::vector<int> join_path = layer_to_product(c, *gp, x);
    st.mark_all(join_path);

    std::vector<int> uprime(size_t(c.ng) * c.nh, -1);
    std::vector<char> edge_joined(job.pairs.size(), 0);
    std::vector<int> F_add;
    for (size_t i = 0; i < job.pairs.size(); ++i) {
        if (static_cast<int>(i) == joined)
            continue;
        for (int side = 0; side < 2; ++side) {
            int u = side == 0 ? job.pairs[i].first : job.pairs[i].second;
            int partner = side == 0 ? job.pairs[i].second : job.pairs[i].first;
            if (c.hcoord(u) != x || edge_joined[i])
                continue;
            if (c.gcoord(partner) == c.gcoord(u) &&
                c.H->adjacent(x, c.hcoord(partner))) {
                edge_joined[i] = 1;
                F_add.push_back(partner);
                continue;
            }
            int picked = -1;
            for (int z : c.H->neighbors(x)) {
                int cand = c.id(c.gcoord(u), z);
                if (!st.is_used(cand)) {
                    picked = cand;
                    break;
                }
            }
            if (picked < 0) {
                if (switch_to && c.hcoord(partner) == x)
                    *switch_to = static_cast<int>(i);
                job.trace.push_back("bigjoin:stuck terminal " +
                                    std::to_string(u));
                return std::nullopt;
            }
            st.mark(picked);
            uprime[u] = picked;
        }
    }

    Pairs sub_pairs;
    std::vector<int> sub_to_orig;
    for (size_t i = 0; i < job.pairs.size(); ++i) {
        if (static_cast<int>(i) == joined || edge_joined[i])
            continue;
        auto [s, t] = job.pairs[i];
        sub_pairs.push_back({uprime[s] >= 0 ? uprime[s] : s,
                             uprime[t] >= 0 ? uprime[t] : t});
        sub_to_orig.push_back(static_cast<int>(i));
    }

    std::vector<int> saved_F = job.F;
    for (int f : F_add)
        job.F.push_back(f);
    std::vector<std::vector<int>> sub_paths;
    try {
        sub_paths = recurse_without_layers(job, {x}, sub_pairs,
                                           [&](Job& sub) { return run_b1(sub); });
    } catch (const unsupported_instance& e) {
        job.F = std::move(saved_F);
        job.trace.push_back(std::string("bigjoin:recursion failed ") + e.what());
        return std::nullopt;
    } catch (...) {
        job.F = std::move(saved_F);
        throw;
    }
    job.F = std::move(saved_F);

    SolveResult res;
    res.system.paths.resize(job.pairs.size());
    res.system.paths[joined] = std::move(join_path);
    for (size_t i = 0; i < job.pairs.size(); ++i)
        if (edge_joined[i])
            res.system.paths[i] = {job.pairs[i].first, job.pairs[i].second};
    for (size_t j = 0; j < sub_paths.size(); ++j) {
        int i = sub_to_orig[j];
        auto [s, t] = job.pairs[i];
        std::vector<int> path;
        if (uprime[s] >= 0)
            path.push_back(s);
        stitch(path, sub_paths[j]);
        if (uprime[t] >= 0)
            stitch(path, {t});
        res.system.paths[i] = std::move(path);
    }
    return res;
}

std::optional<SolveResult> run_case_bigjoin(Job& job, int x) {
    int switch_to = -1;
    auto res = empty_big_layer(job, x, -1, &switch_to);
    if (res)
        return res;
    if (switch_to >= 0) {
        job.trace.push_back("bigjoin:switch joined pair");
        res = empty_big_layer(job, x, switch_to, nullptr);
    }
    return res;
}

// All terminals in one layer (possibly one stray): distribute the pairs over
// two neighbour layers through vertical edges and link inside each.
std::optional<SolveResult> run_case7(Job& job, int k, int x) {
    const Ctx& c = job.ctx;
    auto neigh = c.H->neighbors(x);
    std::vector<char> forced(k + 1, 2);
    auto variants = assignment_variants(forced, k, 64);
    for (int yi = 0; yi < static_cast<int>(neigh.size()); ++yi)
        for (int zi = 0; zi < static_cast<int>(neigh.size()); ++zi) {
            if (yi == zi)
                continue;
            int y = neigh[yi], z = neigh[zi];
            for (const auto& assign : variants) {
                State st(c);
                for (const auto& [s, t] : job.pairs) {
                    st.mark(s);
                    st.mark(t);
                }
                for (int f : job.F)
                    st.mark(f);
                bool ok = true;
                std::vector<std::array<std::vector<int>, 2>> side(k + 1);
                std::vector<std::array<int, 2>> landing(k + 1);
                std::vector<char> self_joined(k + 1, 0);
                for (int i = 0; i < k + 1 && ok; ++i) {
                    int L = assign[i] == 0 ? y : z;
                    auto [e0, e1] = job.pairs[i];
                    if (c.gcoord(e0) == c.gcoord(e1)) {
                        // Partner sits in the stray's own column: join the
                        // pair inside that column and skip the layer visit.
                        int g = c.gcoord(e0);
                        std::vector<char> blocked(c.nh, 0);
                        for (int h = 0; h < c.nh; ++h)
                            if (st.is_used(c.id(g, h)))
                                blocked[h] = 1;
                        blocked[c.hcoord(e0)] = blocked[c.hcoord(e1)] = 0;
                        auto hp = bfs_path(*c.H, c.hcoord(e0), c.hcoord(e1),
                                           blocked);
                        if (!hp) {
                            ok = false;
                            break;
                        }
                        side[i][0] = column_to_product(c, *hp, g);
                        st.mark_all(side[i][0]);
                        self_joined[i] = 1;
                        continue;
                    }
                    for (int s = 0; s < 2 && ok; ++s) {
                        int e = s == 0 ? e0 : e1;
                        int g = c.gcoord(e);
                        int tv = c.id(g, L);
                        if (c.hcoord(e) == x) {
                            if (st.is_used(tv)) {
                                ok = false;
                                break;
                            }
                            st.mark(tv);
                            side[i][s] = {e, tv};
                        } else if (c.hcoord(e) == L) {
                            side[i][s] = {e}; // stray already sits in L
                        } else {
                            std::vector<char> blocked(c.nh, 0);
                            for (int h = 0; h < c.nh; ++h)
                                if (st.is_used(c.id(g, h)))
                                    blocked[h] = 1;
                            blocked[x] = 1;
                            blocked[c.hcoord(e)] = 0;
                            if (st.is_used(tv)) {
                                ok = false;
                                break;
                            }
                            auto hp = bfs_path(*c.H, c.hcoord(e), L, blocked);
                            if (!hp) {
                                ok = false;
                                break;
                            }
                            side[i][s] = column_to_product(c, *hp, g);
                            st.mark_all(side[i][s]);
                        }
                        landing[i][s] = tv;
                    }
                }
                if (!ok)
                    continue;
                std::vector<std::vector<int>> mids(k + 1);
                for (int sideL = 0; sideL < 2 && ok; ++sideL) {
                    int L = sideL == 0 ? y : z;
                    Pairs config;
                    std::vector<int> members;
                    std::vector<char> endpoint(c.ng, 0);
                    for (int i = 0; i < k + 1; ++i) {
                        if (assign[i] != sideL || self_joined[i])
                            continue;
                        int gs = c.gcoord(landing[i][0]);
                        int gt = c.gcoord(landing[i][1]);
                        config.push_back({gs, gt});
                        members.push_back(i);
                        endpoint[gs] = endpoint[gt] = 1;
                    }
                    std::vector<int> obstacles;
                    for (int g = 0; g < c.ng; ++g)
                        if (st.is_used(c.id(g, L)) && !endpoint[g])
                            obstacles.push_back(g);
                    auto mid = layer_solve(*c.G, config, obstacles, job.budget);
                    if (!mid) {
                        ok = false;
                        break;
                    }
                    for (size_t j = 0; j < members.size(); ++j)
                        mids[members[j]] =
                            layer_to_product(c, (*mid)[j], L);
                }
                if (!ok)
                    continue;
                SolveResult res;
                for (int i = 0; i < k + 1; ++i) {
                    if (self_joined[i]) {
                        res.system.paths.push_back(std::move(side[i][0]));
                        continue;
                    }
                    std::vector<int> path = std::move(side[i][0]);
                    stitch(path, mids[i]);
                    stitch(path, side[i][1], /*reversed=*/true);
                    res.system.paths.push_back(std::move(path));
                }
                job.trace.push_back("kplus1:case=7 x=" + std::to_string(x) +
                                    " y=" + std::to_string(y) +
                                    " z=" + std::to_string(z));
                return res;
            }
        }
    return std::nullopt;
}

// Two layers of k+1 terminals, no full pair anywhere: bridge one pair from
// G_x through its column into G_y, push everyone else into a third layer.
std::optional<SolveResult> run_case8_bridge(Job& job, int x, int y) {
    const Ctx& c = job.ctx;
    for (int z : c.H->neighbors(x)) {
        if (z == y)
            continue;
        State st(c);
        for (const auto& [s, t] : job.pairs) {
            st.mark(s);
            st.mark(t);
        }
        for (int f : job.F)
            st.mark(f);

        // Horizontal shift inside G_x for terminals whose column is dirty.
        std::vector<int> xterms;
        for (const auto& [s, t] : job.pairs)
            for (int v : {s, t})
                if (c.hcoord(v) == x)
                    xterms.push_back(v);
        std::sort(xterms.begin(), xterms.end());
        std::vector<int> uprime(size_t(c.ng) * c.nh, -1);
        std::vector<std::vector<int>> horiz(size_t(c.ng) * c.nh);
        std::vector<int> dirty, resident_cols;
        for (int v : xterms) {
            if (st.col_count[c.gcoord(v)] == 1)
                uprime[v] = v;
            else
                dirty.push_back(c.gcoord(v));
        }
        for (int v : xterms)
            if (uprime[v] == v)
                resident_cols.push_back(c.gcoord(v));
        bool ok = true;
        if (!dirty.empty()) {
            std::vector<int> sinks;
            for (int g = 0; g < c.ng; ++g)
                if (st.col_count[g] == 0)
                    sinks.push_back(g);
            if (static_cast<int>(sinks.size()) <
                static_cast<int>(dirty.size()))
                continue;
            std::vector<int> forbidden = resident_cols;
            for (int f : job.F)
                if (c.hcoord(f) == x)
                    forbidden.push_back(c.gcoord(f));
            std::sort(dirty.begin(), dirty.end());
            MengerResult mr = menger_link(*c.G, {dirty, sinks, forbidden});
            if (!mr.success)
                continue;
            for (size_t i = 0; i < dirty.size(); ++i) {
                std::vector<int> prod =
                    layer_to_product(c, mr.system.paths[i], x);
                std::vector<int> kept;
                try {
                    kept = truncate_path(prod, [&](int v) {
                        return st.col_count[c.gcoord(v)] == 0;
                    });
                } catch (const not_found&) {
                    ok = false;
                    break;
                }
                st.mark_all(kept);
                int term = c.id(dirty[i], x);
                uprime[term] = kept.back();
                horiz[term] = std::move(kept);
            }
        }
        if (!ok)
            continue;

        // Bridge pair: u -> u' -> u'' in G_y, then join u'' to u's partner.
        int bridge = -1;
        std::vector<int> bridge_vert, bridge_join;
        for (int u : xterms) {
            int g = c.gcoord(uprime[u]);
            int u2 = c.id(g, y);
            if (st.is_used(u2))
                continue;
            std::vector<char> blocked(c.nh, 0);
            for (int h = 0; h < c.nh; ++h)
                if (st.is_used(c.id(g, h)))
                    blocked[h] = 1;
            blocked[x] = 0;
            auto hp = bfs_path(*c.H, x, y, blocked);
            if (!hp)
                continue;
            int partner = -1;
            for (const auto& [s, t] : job.pairs) {
                if (s == u)
                    partner = t;
                if (t == u)
                    partner = s;
            }
            std::vector<int> vert = column_to_product(c, *hp, g);
            std::vector<int> marked;
            for (int w : vert)
                if (st.mark(w))
                    marked.push_back(w);
            std::vector<char> gblocked(c.ng, 0);
            for (int gg = 0; gg < c.ng; ++gg)
                if (st.is_used(c.id(gg, y)))
                    gblocked[gg] = 1;
            gblocked[g] = gblocked[c.gcoord(partner)] = 0;
            auto jp = bfs_path(*c.G, g, c.gcoord(partner), gblocked);
            if (!jp) {
                for (int w : marked)
                    st.unmark(w);
                continue;
            }
            bridge = u;
            bridge_vert = std::move(vert);
            bridge_join = layer_to_product(c, *jp, y);
            st.mark_all(bridge_join);
            break;
        }
        if (bridge < 0)
            continue;
        int bridge_pair = -1;
        for (size_t i = 0; i < job.pairs.size(); ++i)
            if (job.pairs[i].first == bridge || job.pairs[i].second == bridge)
                bridge_pair = static_cast<int>(i);

        // Everyone else projects into G_z: x-side over a vertical edge from
        // its shifted spot, y-side through its own column avoiding G_x.
        std::vector<std::array<std::vector<int>, 2>> side(job.pairs.size());
        std::vector<std::array<int, 2>> landing(job.pairs.size());
        for (size_t i = 0; i < job.pairs.size() && ok; ++i) {
            if (static_cast<int>(i) == bridge_pair)
                continue;
            for (int s = 0; s < 2 && ok; ++s) {
                int e = s == 0 ? job.pairs[i].first : job.pairs[i].second;
                if (c.hcoord(e) == x) {
                    int w2 = uprime[e];
                    int tv = c.id(c.gcoord(w2), z);
                    if (st.is_used(tv)) {
                        ok = false;
                        break;
                    }
                    st.mark(tv);
                    side[i][s] = {e};
                    stitch(side[i][s], horiz[e]);
                    stitch(side[i][s], {w2, tv});
                    landing[i][s] = tv;
                } else {
                    int g = c.gcoord(e);
                    int tv = c.id(g, z);
                    if (st.is_used(tv)) {
                        ok = false;
                        break;
                    }
                    std::vector<char> blocked(c.nh, 0);
                    for (int h = 0; h < c.nh; ++h)
                        if (st.is_used(c.id(g, h)))
                            blocked[h] = 1;
                    blocked[x] = 1;
                    blocked[c.hcoord(e)] = 0;
                    auto hp = bfs_path(*c.H, c.hcoord(e), z, blocked);
                    if (!hp) {
                        ok = false;
                        break;
                    }
                    side[i][s] = column_to_product(c, *hp, g);
                    st.mark_all(side[i][s]);
                    landing[i][s] = tv;
                }
            }
        }
        if (!ok)
            continue;

        Pairs config;
        std::vector<int> members;
        std::vector<char> endpoint(c.ng, 0);
        for (size_t i = 0; i < job.pairs.size(); ++i) {
            if (static_cast<int>(i) == bridge_pair)
                continue;
            int gs = c.gcoord(landing[i][0]), gt = c.gcoord(landing[i][1]);
            config.push_back({gs, gt});
            members.push_back(static_cast<int>(i));
            endpoint[gs] = endpoint[gt] = 1;
        }
        std::vector<int> obstacles;
        for (int g = 0; g < c.ng; ++g)
            if (st.is_used(c.id(g, z)) && !endpoint[g])
                obstacles.push_back(g);
        auto mid = layer_solve(*c.G, config, obstacles, job.budget);
        if (!mid)
            continue;

        SolveResult res;
        res.system.paths.resize(job.pairs.size());
        {
            int u = bridge;
            int partner = job.pairs[bridge_pair].first == u
                              ? job.pairs[bridge_pair].second
                              : job.pairs[bridge_pair].first;
            std::vector<int> path{u};
            stitch(path, horiz[u]);
            stitch(path, bridge_vert);
            stitch(path, bridge_join);
            stitch(path, {partner});
            bool forward = job.pairs[bridge_pair].first == u;
            if (!forward)
                std::reverse(path.begin(), path.end());
            res.system.paths[bridge_pair] = std::move(path);
        }
        for (size_t j = 0; j < members.size(); ++j) {
            int i = members[j];
            std::vector<int> path = std::move(side[i][0]);
            stitch(path, layer_to_product(c, (*mid)[j], z));
            stitch(path, side[i][1], /*reversed=*/true);
            res.system.paths[i] = std::move(path);
        }
        job.trace.push_back("kplus1:case=8 x=" + std::to_string(x) +
                            " y=" + std::to_string(y) +
                            " z=" + std::to_string(z) + " bridge=" +
                            std::to_string(bridge_pair));
        return res;
    }
    return std::nullopt;
}

SolveResult run_kplus1(Job& job, int k) {
    if (job.depth <= 0)
        throw internal_error("recursion depth exhausted");
    const Ctx& c = job.ctx;
    std::vector<int> cnt(c.nh, 0);
    for (const auto& [s, t] : job.pairs) {
        ++cnt[c.hcoord(s)];
        ++cnt[c.hcoord(t)];
    }
    std::vector<std::pair<int, int>> prof; // (count, layer), ascending
    for (int h = 0; h < c.nh; ++h)
        if (cnt[h] > 0)
            prof.push_back({cnt[h], h});
    std::sort(prof.begin(), prof.end());
    const int n = static_cast<int>(prof.size());
    const int s_max = prof.back().first;
    const int big = prof.back().second;

    auto graded = [&](std::optional<SolveResult> r,
                      const char* what) -> SolveResult {
        if (!r)
            r = small_case(job);
        if (!r && job.params->fallback)
            return oracle_rescue(job);
        if (!r)
            throw unsupported_instance(std::string(what) +
                                       ": all routing variants failed");
        return std::move(*r);
    };

    if (s_max >= 2 * k + 1) {
        auto r = run_case7(job, k, big);
        return graded(std::move(r), "one-layer distribution");
    }
    if (s_max == 2 * k) {
        int outside_layers = n - 1;
        auto r = run_case_bigjoin(job, big);
        if (r)
            job.trace.push_back(outside_layers == 2 ? "kplus1:case=5"
                                                    : "kplus1:case=6");
        return graded(std::move(r), "big-layer join");
    }
    if (n == 2 && prof[0].first == k + 1 && prof[1].first == k + 1) {
        int x = prof[0].second, y = prof[1].second;
        bool full_pair = false;
        int full_layer = -1;
        for (const auto& [s, t] : job.pairs)
            if (c.hcoord(s) == c.hcoord(t)) {
                full_pair = true;
                full_layer = c.hcoord(s);
            }
        std::optional<SolveResult> r;
        if (full_pair) {
            r = run_case_bigjoin(job, full_layer);
            if (r)
                job.trace.push_back("kplus1:case=8 variant=inlayer");
        } else {
            r = run_case8_bridge(job, x, y);
            if (!r)
                r = run_case8_bridge(job, y, x);
        }
        return graded(std::move(r), "split-layer bridge");
    }

    auto shifted_case = [&](int alpha, int beta, const char* tag) {
        ShiftPlan plan;
        plan.alpha = alpha;
        plan.beta = beta;
        plan.cap = 2 * k - 1;
        plan.capacity = k;
        for (int h : {alpha, beta})
            if (cnt[h] > 0)
                plan.exempt.push_back(h);
        auto r = attempt_shift(job, plan);
        if (r)
            job.trace.push_back(tag);
        return graded(std::move(r), tag);
    };

    for (const auto& [s, h] : prof)
        if (3 <= s && s <= k) {
            int beta = -1;
            for (int hh = 0; hh < c.nh && beta < 0; ++hh)
                if (cnt[hh] == 0)
                    beta = hh;
            if (beta < 0)
                for (const auto& [s2, h2] : prof)
                    if (h2 != h) {
                        beta = h2;
                        break;
                    }
            return shifted_case(h, beta, "kplus1:case=1");
        }
    {
        int j2 = -1, i2 = -1;
        for (const auto& [s, h] : prof)
            if (s == 2 && j2 < 0)
                j2 = h;
        for (const auto& [s, h] : prof)
            if (s <= 2 && h != j2 && i2 < 0)
                i2 = h;
        if (j2 >= 0 && i2 >= 0)
            return shifted_case(i2, j2, "kplus1:case=2");
    }
    if (s_max == 1) {
        auto r = small_case(job);
        if (r)
            job.trace.push_back("kplus1:case=3");
        return graded(std::move(r), "all-singleton columns");
    }
    if (k + 1 <= s_max && s_max <= 2 * k - 1 && prof[0].first == 1 &&
        n >= 3 && prof[n - 2].first == 1)
        return shifted_case(prof[0].second, prof[1].second, "kplus1:case=4");
    throw internal_error("terminal profile escaped the case analysis");
}

// ---- entry points ----------------------------------------------------------

long long resolve_budget(const SolverParams& params) {
    return params.budget < 0 ? default_search_budget() : params.budget;
}

// Verifies k-linkedness of small factors outright; larger ones are trusted
// (the final validation still guards every returned system).
bool verify_factor_linked(const Graph& G, int k, const SolverParams& params) {
    if (2 * k > G.size())
        throw unsupported_instance("factor too small to be k-linked");
    if (params.assume_linked)
        return false;
    if (G.size() > 12)
        return false;
    LinkReport rep = is_k_linked(G, k);
    if (rep.outcome == LinkOutcome::undecided)
        throw budget_exhausted("factor linkedness check ran out of budget");
    if (rep.outcome == LinkOutcome::not_linked)
        throw unsupported_instance("factor is not k-linked");
    return true;
}

SolveResult seal(const ProductGraph& p, const Pairs& pairs, Job& job,
                 SolveResult res) {
    res.system.pairing.resize(pairs.size());
    std::iota(res.system.pairing.begin(), res.system.pairing.end(), 0);
    ValidationResult v = validate_path_system(p.graph, pairs, res.system.paths);
    if (!v.ok)
        throw internal_error("solver emitted an invalid path system: " +
                             v.reason);
    res.trace = std::move(job.trace);
    return res;
}

Job make_job(const ProductGraph& p, Ctx ctx, const Pairs& pairs,
             const SolverParams& params) {
    if (params.depth_limit < 1)
        throw std::invalid_argument("depth_limit must be at least 1");
    Job job;
    job.p = &p;
    job.ctx = ctx;
    job.pairs = pairs;
    job.params = &params;
    job.budget = resolve_budget(params);
    job.depth = params.depth_limit;
    return job;
}

} // namespace

SolveResult link_connected_factor(const ProductGraph& p, const Pairs& pairs,
                                  const SolverParams& params) {
    Ctx ctx = make_ctx(p);
    check_pairs(ctx.ng * ctx.nh, pairs);
    Job job = make_job(p, ctx, pairs, params);
    const int k = static_cast<int>(pairs.size());
    if (k > 0) {
        if (!ctx.H->is_connected())
            throw unsupported_instance("second factor is not connected");
        job.factor_checked = verify_factor_linked(*ctx.G, k, params);
    }
    return seal(p, pairs, job, run_b1(job));
}

SolveResult solve_product_linkage(const ProductGraph& p, const Pairs& pairs,
                                  int a, int b, const SolverParams& params) {
    Ctx ctx = make_ctx(p);
    check_pairs(ctx.ng * ctx.nh, pairs);
    if (b < 2 || a < b)
        throw unsupported_instance("requires a >= b >= 2");
    if (static_cast<int>(pairs.size()) > a + b - 1)
        throw unsupported_instance("at most a+b-1 pairs are supported");
    if (ctx.ng < 8 * a)
        throw unsupported_instance("first factor needs at least 8a vertices");
    if (vertex_connectivity(*ctx.H) < 2 * b - 1)
        throw unsupported_instance("second factor is not (2b-1)-connected");
    Job job = make_job(p, ctx, pairs, params);
    job.factor_checked = verify_factor_linked(*ctx.G, a, params);
    return seal(p, pairs, job, run_strong(job, a, b));
}

SolveResult solve_k_plus_1(const ProductGraph& p, const Pairs& pairs, int k,
                           const SolverParams& params) {
    Ctx ctx = make_ctx(p);
    check_pairs(ctx.ng * ctx.nh, pairs);
    if (k < 2)
        throw unsupported_instance("requires k >= 2");
    if (static_cast<int>(pairs.size()) != k + 1)
        throw std::invalid_argument("expected exactly k+1 terminal pairs");
    if (ctx.ng < std::max(9, 4 * k))
        throw unsupported_instance(
            "first factor needs at least max(9, 4k) vertices");
    if (vertex_connectivity(*ctx.H) < 2)
        throw unsupported_instance("second factor is not 2-connected");
    Job job = make_job(p, ctx, pairs, params);
    job.factor_checked = verify_factor_linked(*ctx.G, k, params);
    return seal(p, pairs, job, run_kplus1(job, k));
}

} // namespace linklab

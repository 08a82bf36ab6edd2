#include "dsr/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dsr/errors.hpp"

namespace dsr {

std::mt19937_64 seeded_rng(unsigned long long seed) { return std::mt19937_64(seed); }

long long rand_below(std::mt19937_64& rng, long long n) {
    if (n <= 0) throw invalid_input_error("rand_below needs a positive bound");
    const unsigned long long bound = static_cast<unsigned long long>(n);
    const unsigned long long limit = std::mt19937_64::max() - std::mt19937_64::max() % bound;
    unsigned long long x;
    do {
        x = rng();
    } while (x >= limit);
    return static_cast<long long>(x % bound);
}

CircularArcModel ring_model(int n) {
    if (n < 3) throw invalid_input_error("ring needs at least three arcs");
    const long long m = 2LL * n;
    std::vector<Arc> arcs;
    arcs.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) arcs.push_back(Arc{2LL * i, (2LL * i + 3) % m, false});
    return CircularArcModel(m, std::move(arcs));
}

CircularArcModel gen_random_carc(std::mt19937_64& rng, int n, double density, int attempts) {
    if (n < 1) throw invalid_input_error("need at least one arc");
    const long long m = 4LL * n;
    const bool want_full = density >= 0.999;
    const int normal = want_full ? n - 1 : n;
    const int need = 2 * normal;
    for (int att = 0; att < attempts; ++att) {
        std::vector<long long> pool(static_cast<size_t>(m));
        std::iota(pool.begin(), pool.end(), 0LL);
        for (int i = 0; i < need; ++i)
            std::swap(pool[static_cast<size_t>(i)],
                      pool[static_cast<size_t>(i + rand_below(rng, m - i))]);
        std::vector<long long> pts(pool.begin(), pool.begin() + need);
        std::sort(pts.begin(), pts.end());
        std::vector<char> used(pts.size(), 0);
        std::vector<Arc> arcs;
        if (want_full) arcs.push_back(Arc{0, 0, true});
        int remaining = need;
        while (remaining > 0) {
            long long pick = rand_below(rng, remaining);
            int li = -1;
            for (int idx = 0; idx < need; ++idx)
                if (!used[static_cast<size_t>(idx)] && pick-- == 0) {
                    li = idx;
                    break;
                }
            used[static_cast<size_t>(li)] = 1;
            --remaining;
            const long long l = pts[static_cast<size_t>(li)];
            // span target around density * circumference, jittered 0.25x..1.75x
            const double frac = 0.25 + 1.5 * static_cast<double>(rand_below(rng, 1000)) / 1000.0;
            const long long target =
                l + std::max<long long>(1, std::llround(density * static_cast<double>(m) * frac));
            int best = -1;
            long long best_d = 0;
            for (int idx = 0; idx < need; ++idx) {
                if (used[static_cast<size_t>(idx)]) continue;
                const long long d = ((pts[static_cast<size_t>(idx)] - target) % m + m) % m;
                if (best == -1 || d < best_d) {
                    best = idx;
                    best_d = d;
                }
            }
            used[static_cast<size_t>(best)] = 1;
            --remaining;
            arcs.push_back(Arc{l, pts[static_cast<size_t>(best)], false});
        }
        CircularArcModel model(m, std::move(arcs));
        if (is_connected(model.graph())) return model;
    }
    throw resource_limit_error("no connected arc family found within the attempt budget");
}

CircularArcModel gen_covered_carc(std::mt19937_64& rng, int ring, int extra) {
    if (ring < 3) throw invalid_input_error("need at least three covering arcs");
    if (extra < 0 || extra > 2 * ring)
        throw invalid_input_error("not enough free endpoints for the extra arcs");
    const long long m = 6LL * ring;
    std::vector<Arc> arcs;
    arcs.reserve(static_cast<size_t>(ring + extra));
    for (int i = 0; i < ring; ++i) arcs.push_back(Arc{6LL * i, (6LL * i + 9) % m, false});
    std::vector<long long> free_pts;
    for (long long p = 0; p < m; ++p) {
        const long long r = p % 6;
        if (r != 0 && r != 3) free_pts.push_back(p);
    }
    for (int i = 0; i < 2 * extra; ++i)
        std::swap(free_pts[static_cast<size_t>(i)],
                  free_pts[static_cast<size_t>(
                      i + rand_below(rng, static_cast<long long>(free_pts.size()) - i))]);
    for (int e = 0; e < extra; ++e)
        arcs.push_back(Arc{free_pts[static_cast<size_t>(2 * e)],
                           free_pts[static_cast<size_t>(2 * e + 1)], false});
    return CircularArcModel(m, std::move(arcs));
}

IntervalModel gen_random_intervals(std::mt19937_64& rng, int n, int attempts) {
    if (n < 1) throw invalid_input_error("need at least one interval");
    const long long range = 4LL * n;
    for (int att = 0; att < attempts; ++att) {
        std::vector<long long> pool(static_cast<size_t>(range));
        std::iota(pool.begin(), pool.end(), 0LL);
        for (int i = 0; i < 2 * n; ++i)
            std::swap(pool[static_cast<size_t>(i)],
                      pool[static_cast<size_t>(i + rand_below(rng, range - i))]);
        std::vector<Interval> ivs;
        ivs.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            const long long a = pool[static_cast<size_t>(2 * i)];
            const long long b = pool[static_cast<size_t>(2 * i + 1)];
            ivs.push_back(Interval{std::min(a, b), std::max(a, b)});
        }
        IntervalModel model(std::move(ivs));
        if (is_connected(model.graph())) return model;
    }
    throw resource_limit_error("no connected interval family found within the attempt budget");
}

CnfFormula gen_random_formula(std::mt19937_64& rng, int variables, int clauses,
                              Assignment* target) {
    if (variables < 1) throw invalid_input_error("need at least one variable");
    if (clauses < 1) throw invalid_input_error("need at least one clause");
    Assignment hidden;
    hidden.bits.resize(static_cast<size_t>(variables));
    for (auto& b : hidden.bits) b = static_cast<unsigned char>(rand_below(rng, 2));
    CnfFormula f;
    f.variable_count = variables;
    std::vector<int> order(static_cast<size_t>(variables));
    for (int j = 0; j < clauses; ++j) {
        const int width = 1 + static_cast<int>(rand_below(rng, std::min(3, variables)));
        std::iota(order.begin(), order.end(), 0);
        for (int i = 0; i < width; ++i)
            std::swap(order[static_cast<size_t>(i)],
                      order[static_cast<size_t>(
                          i + rand_below(rng, static_cast<long long>(variables - i)))]);
        std::vector<Literal> clause;
        clause.reserve(static_cast<size_t>(width));
        for (int t = 0; t < width; ++t)
            clause.push_back(Literal{order[static_cast<size_t>(t)], rand_below(rng, 2) == 0});
        // pin one literal so the hidden assignment satisfies the clause
        const int pin = static_cast<int>(rand_below(rng, width));
        clause[static_cast<size_t>(pin)].positive = hidden.value(clause[static_cast<size_t>(pin)].var);
        f.clauses.push_back(std::move(clause));
    }
    // adding a literal never unsatisfies a clause, so unused variables can be
    // patched into existing clauses
    std::vector<char> used(static_cast<size_t>(variables), 0);
    for (const auto& c : f.clauses)
        for (const auto& lit : c) used[static_cast<size_t>(lit.var)] = 1;
    for (int v = 0; v < variables; ++v) {
        if (used[static_cast<size_t>(v)]) continue;
        auto& clause = f.clauses[static_cast<size_t>(rand_below(rng, clauses))];
        clause.push_back(Literal{v, rand_below(rng, 2) == 0});
    }
    validate_formula(f);
    if (target) *target = hidden;
    return f;
}

} // namespace dsr

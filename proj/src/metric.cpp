#include "owlet/metric.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>

namespace owlet::dynamics {

FiniteMetricSpace FiniteMetricSpace::make(std::vector<std::vector<Rational>> dist) {
    std::size_t n = dist.size();
    if (n == 0) throw std::invalid_argument("metric space needs at least one point");
    for (std::size_t i = 0; i < n; ++i) {
        if (dist[i].size() != n) throw std::invalid_argument("distance matrix must be square");
        if (dist[i][i] != 0) throw std::invalid_argument("distance matrix diagonal must be zero");
        for (std::size_t j = 0; j < n; ++j) {
            if (dist[i][j] < 0) throw std::invalid_argument("distances must be nonnegative");
            if (i != j && dist[i][j] == 0)
                throw std::invalid_argument("distinct points must have positive distance");
            if (dist[i][j] != dist[j][i])
                throw std::invalid_argument("distance matrix must be symmetric");
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (dist[i][k] > dist[i][j] + dist[j][k])
                    throw std::invalid_argument("triangle inequality violated");
    FiniteMetricSpace m;
    m.dist = std::move(dist);
    return m;
}

namespace {

/// Fixed-width bitset sized at runtime; big enough for cylinder spaces.
struct Bits {
    std::vector<std::uint64_t> w;

    explicit Bits(std::size_t n = 0) : w((n + 63) / 64, 0) {}
    static Bits full(std::size_t n) {
        Bits b(n);
        for (auto& x : b.w) x = ~0ull;
        if (n % 64) b.w.back() = (1ull << (n % 64)) - 1;
        return b;
    }
    void set(std::size_t i) { w[i >> 6] |= 1ull << (i & 63); }
    void reset(std::size_t i) { w[i >> 6] &= ~(1ull << (i & 63)); }
    bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    bool any() const {
        for (auto x : w)
            if (x) return true;
        return false;
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto x : w) c += std::size_t(std::popcount(x));
        return c;
    }
    std::size_t first() const {  // index of the lowest set bit
        for (std::size_t k = 0; k < w.size(); ++k)
            if (w[k]) return k * 64 + std::size_t(std::countr_zero(w[k]));
        return ~std::size_t(0);
    }
    Bits& operator&=(const Bits& o) {
        for (std::size_t k = 0; k < w.size(); ++k) w[k] &= o.w[k];
        return *this;
    }
    Bits& operator|=(const Bits& o) {
        for (std::size_t k = 0; k < w.size(); ++k) w[k] |= o.w[k];
        return *this;
    }
    Bits and_not(const Bits& o) const {
        Bits r = *this;
        for (std::size_t k = 0; k < w.size(); ++k) r.w[k] &= ~o.w[k];
        return r;
    }
    std::size_t overlap(const Bits& o) const {
        std::size_t c = 0;
        for (std::size_t k = 0; k < w.size(); ++k)
            c += std::size_t(std::popcount(w[k] & o.w[k]));
        return c;
    }
    bool operator==(const Bits&) const = default;
};

/// close[i] = set of j with d(i,j) < eps (including i itself).
std::vector<Bits> close_graph(const FiniteMetricSpace& m, const Rational& eps) {
    std::size_t n = m.size();
    std::vector<Bits> close(n, Bits(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (m.dist[i][j] < eps) close[i].set(j);
    return close;
}

/// Max independent set of the close graph.
std::size_t max_separated(const std::vector<Bits>& close, const Bits& all) {
    std::size_t best = 0;
    auto dfs = [&](auto&& self, const Bits& avail, std::size_t cur) -> void {
        if (cur + avail.count() <= best) return;
        std::size_t i = avail.first();
        if (i == ~std::size_t(0)) {
            best = std::max(best, cur);
            return;
        }
        self(self, avail.and_not(close[i]), cur + 1);  // take i
        Bits rest = avail;
        rest.reset(i);
        self(self, rest, cur);  // skip i
    };
    dfs(dfs, all, 0);
    return best;
}

/// Exact minimum number of the given sets covering every bit of `universe`.
std::size_t min_cover(const std::vector<Bits>& sets, const Bits& universe) {
    std::size_t best = sets.size() + 1;
    auto dfs = [&](auto&& self, const Bits& uncovered, std::size_t used) -> void {
        std::size_t i = uncovered.first();
        if (i == ~std::size_t(0)) {
            best = std::min(best, used);
            return;
        }
        if (used + 1 >= best) return;
        // branch on the first uncovered point: some chosen set must contain it
        for (const Bits& s : sets)
            if (s.test(i)) self(self, uncovered.and_not(s), used + 1);
    };
    dfs(dfs, universe, 0);
    return best;
}

/// All maximal cliques of the close graph (Bron-Kerbosch, capped).
void maximal_cliques(const std::vector<Bits>& close, Bits r, Bits p, Bits x,
                     std::vector<Bits>& out, std::size_t cap) {
    if (out.size() > cap) return;
    if (!p.any() && !x.any()) {
        out.push_back(std::move(r));
        return;
    }
    Bits pivots = p;
    pivots |= x;
    std::size_t pivot = pivots.first();
    Bits branch = p.and_not(close[pivot]);
    if (p.test(pivot)) branch.set(pivot);
    for (std::size_t v = branch.first(); v != ~std::size_t(0); v = branch.first()) {
        branch.reset(v);
        Bits r2 = r;
        r2.set(v);
        Bits p2 = p;
        p2 &= close[v];
        p2.reset(v);
        Bits x2 = x;
        x2 &= close[v];
        maximal_cliques(close, std::move(r2), std::move(p2), std::move(x2), out, cap);
        p.reset(v);
        x.set(v);
    }
}

std::size_t greedy_cover(const std::vector<Bits>& sets, Bits uncovered) {
    std::size_t count = 0;
    while (uncovered.any()) {
        std::size_t gain = 0, pick = 0;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            std::size_t g = sets[i].overlap(uncovered);
            if (g > gain) {  // lexicographic tie-break: strict improvement only
                gain = g;
                pick = i;
            }
        }
        if (gain == 0) throw std::logic_error("cover sets do not span the space");
        uncovered = uncovered.and_not(sets[pick]);
        ++count;
    }
    return count;
}

}  // namespace

CountResult sep(const FiniteMetricSpace& m, const Rational& eps, std::size_t exact_limit) {
    std::size_t n = m.size();
    auto close = close_graph(m, eps);
    if (n <= exact_limit) return {BigInt(max_separated(close, Bits::full(n))), true};
    // greedy in point order: certified lower bound
    Bits blocked(n);
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (!blocked.test(i)) {
            ++count;
            blocked |= close[i];
        }
    return {BigInt(count), false};
}

CountResult spa(const FiniteMetricSpace& m, const Rational& eps, std::size_t exact_limit) {
    std::size_t n = m.size();
    auto close = close_graph(m, eps);  // strict eps-balls around each point
    if (n <= exact_limit) return {BigInt(min_cover(close, Bits::full(n))), true};
    return {BigInt(greedy_cover(close, Bits::full(n))), false};  // upper bound
}

CountResult cov_metric(const FiniteMetricSpace& m, const Rational& eps, std::size_t exact_limit) {
    std::size_t n = m.size();
    auto close = close_graph(m, eps);
    // Sets of diameter < eps are the cliques of the close graph; a minimum
    // cover can always use maximal cliques.
    std::vector<Bits> cliques;
    maximal_cliques(close, Bits(n), Bits::full(n), Bits(n), cliques, 1u << 16);
    if (n <= exact_limit && cliques.size() <= 4096)
        return {BigInt(min_cover(cliques, Bits::full(n))), true};
    return {BigInt(greedy_cover(cliques, Bits::full(n))), false};
}

FiniteMetricSpace cylinder_space(const Subshift& s, const FiniteSet& A, Scale scale,
                                 std::uint64_t budget) {
    FiniteSet support = minkowski(A, centered_ball(s.dim, scale.radius));
    auto patterns = enumerate_patterns(s, support, budget);
    std::size_t n = patterns.size();
    std::vector<std::vector<Rational>> dist(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) dist[i][j] = 1;
    return FiniteMetricSpace::make(std::move(dist));
}

}  // namespace owlet::dynamics

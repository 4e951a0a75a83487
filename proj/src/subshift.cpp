#include "owlet/subshift.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "word_automaton.hpp"

namespace owlet::dynamics {

Pattern Pattern::make(std::vector<std::pair<Site, int>> cells) {
    if (cells.empty()) throw std::invalid_argument("pattern needs at least one cell");
    std::sort(cells.begin(), cells.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].second < 0) throw std::invalid_argument("pattern symbol must be >= 0");
        if (cells[i].first.size() != cells.front().first.size())
            throw std::invalid_argument("pattern sites must share a dimension");
        if (i > 0 && cells[i].first == cells[i - 1].first)
            throw std::invalid_argument("pattern assigns one site twice");
    }
    Pattern p;
    p.cells = std::move(cells);
    return p;
}

Subshift Subshift::full_shift(int k, int d) {
    if (k < 1) throw std::invalid_argument("alphabet size must be >= 1");
    if (d < 1 || d > 2) throw std::invalid_argument("supported dimensions are 1 and 2");
    Subshift s;
    s.alphabet = k;
    s.dim = d;
    s.name = "full-" + std::to_string(k) + (d == 2 ? "-d2" : "");
    return s;
}

Subshift Subshift::golden_mean() {
    Subshift s;
    s.alphabet = 2;
    s.dim = 1;
    s.forbidden = {Pattern::make({{{0}, 1}, {{1}, 1}})};
    s.margin = 1;
    s.name = "golden-mean";
    return s;
}

Subshift Subshift::hard_square() {
    Subshift s;
    s.alphabet = 2;
    s.dim = 2;
    s.forbidden = {Pattern::make({{{0, 0}, 1}, {{1, 0}, 1}}),
                   Pattern::make({{{0, 0}, 1}, {{0, 1}, 1}})};
    s.margin = 1;
    s.name = "hard-square";
    return s;
}

Subshift Subshift::single_point(int d) {
    Subshift s = full_shift(1, d);
    s.name = "point";
    return s;
}

Subshift Subshift::product(const Subshift& a, const Subshift& b) {
    if (a.dim != 1 || b.dim != 1)
        throw std::invalid_argument("product subshift is built for d=1 factors");
    Subshift s;
    s.alphabet = a.alphabet * b.alphabet;
    s.dim = 1;
    s.name = a.name + "*" + b.name;
    s.margin = std::max(a.margin, b.margin);
    // Paired symbol (x, y) -> x * |B| + y. Each factor constraint lifts to all
    // fillings of the free component.
    auto lift = [&](const Pattern& p, bool first_component) {
        int free_k = first_component ? b.alphabet : a.alphabet;
        std::size_t n = p.cells.size();
        std::vector<int> fill(n, 0);
        while (true) {
            std::vector<std::pair<Site, int>> cells(n);
            for (std::size_t i = 0; i < n; ++i) {
                int sym = first_component ? p.cells[i].second * b.alphabet + fill[i]
                                          : fill[i] * b.alphabet + p.cells[i].second;
                cells[i] = {p.cells[i].first, sym};
            }
            s.forbidden.push_back(Pattern::make(std::move(cells)));
            std::size_t j = 0;
            while (j < n && ++fill[j] == free_k) fill[j++] = 0;
            if (j == n) break;
        }
    };
    for (const auto& p : a.forbidden) lift(p, true);
    for (const auto& p : b.forbidden) lift(p, false);
    return s;
}

int Subshift::forbidden_span() const {
    int span = 0;
    for (const auto& p : forbidden)
        for (std::size_t axis = 0; axis < p.cells.front().first.size(); ++axis) {
            long long lo = p.cells.front().first[axis], hi = lo;
            for (const auto& [site, sym] : p.cells) {
                lo = std::min(lo, site[axis]);
                hi = std::max(hi, site[axis]);
            }
            span = std::max<int>(span, static_cast<int>(hi - lo));
        }
    return span;
}

FiniteSet centered_ball(int d, int r) {
    if (r < 0) throw std::invalid_argument("ball radius must be >= 0");
    return groups::grid_set(d, -r, r);
}

namespace {

std::vector<long long> sites_1d(const FiniteSet& F) {
    std::vector<long long> out;
    out.reserve(F.size());
    for (const auto& e : F.elements) out.push_back(e.ints().at(0));
    return out;
}

using detail::AnchoredWord;
using detail::anchor_words;
using detail::kOutside;
using detail::last_symbol_ok;

/// Distinct observed words on one block of consecutive positions, where each
/// position is observed (branch over symbols, words distinguished), free
/// (margin/pad: existentially quantified), or outside the support. Subset
/// construction over truncated histories handles the free sites.
BigInt count_block_1d(const Subshift& s, const std::vector<AnchoredWord>& words, int order,
                      long long block_lo, long long block_hi, const std::set<long long>& observed,
                      const std::set<long long>& support) {
    using StateSet = std::vector<std::string>;
    std::map<StateSet, BigInt> frontier;
    frontier[{std::string()}] = 1;

    auto advance = [&](const std::string& h, char c, StateSet& dst) {
        std::string nh = h;
        nh.push_back(c);
        if (c == kOutside || last_symbol_ok(nh, words)) {
            if (static_cast<int>(nh.size()) > order) nh.erase(0, nh.size() - order);
            dst.push_back(std::move(nh));
        }
    };
    auto canonical = [](StateSet& ss) {
        std::sort(ss.begin(), ss.end());
        ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
    };

    for (long long pos = block_lo; pos <= block_hi; ++pos) {
        std::map<StateSet, BigInt> next;
        bool in_support = support.count(pos) > 0;
        bool is_observed = observed.count(pos) > 0;
        for (const auto& [states, cnt] : frontier) {
            if (!in_support) {
                StateSet dst;
                for (const auto& h : states) advance(h, kOutside, dst);
                canonical(dst);
                next[dst] += cnt;
            } else if (is_observed) {
                for (int a = 0; a < s.alphabet; ++a) {
                    StateSet dst;
                    for (const auto& h : states) advance(h, char(a), dst);
                    if (dst.empty()) continue;
                    canonical(dst);
                    next[dst] += cnt;
                }
            } else {
                StateSet dst;
                for (const auto& h : states) for (int a = 0; a < s.alphabet; ++a)
                    advance(h, char(a), dst);
                if (dst.empty()) continue;
                canonical(dst);
                next[dst] += cnt;
            }
        }
        frontier = std::move(next);
    }

    BigInt total = 0;
    for (const auto& [states, cnt] : frontier) total += cnt;
    return total;
}

BigInt count_1d(const Subshift& s, const FiniteSet& F) {
    std::vector<long long> fsites = sites_1d(F);
    std::set<long long> observed(fsites.begin(), fsites.end());
    std::set<long long> support;  // F padded by the admissibility margin
    for (long long x : fsites)
        for (int d = -s.margin; d <= s.margin; ++d) support.insert(x + d);

    auto words = anchor_words(s);
    int span = s.forbidden_span();
    int order = std::max(span + 1, 1);

    // Support gaps of at least span+1 cannot carry a forbidden word across, so
    // blocks separated by such gaps count independently.
    BigInt total = 1;
    auto it = support.begin();
    while (it != support.end()) {
        long long lo = *it, hi = *it;
        auto jt = std::next(it);
        while (jt != support.end() && *jt - hi <= span) hi = *jt++;
        total *= count_block_1d(s, words, order, lo, hi, observed, support);
        it = jt;
    }
    return total;
}

/// Exhaustive sweep shared by the d=2 counter and the explicit enumerator:
/// walk all locally admissible assignments on the margin-padded support and
/// collect the distinct restrictions to F.
std::set<std::vector<int>> sweep_restrictions(const Subshift& s, const FiniteSet& F,
                                              std::uint64_t budget) {
    std::set<Site> padded;
    std::vector<Site> fs;
    for (const auto& e : F.elements) fs.push_back(Site(e.ints().begin(), e.ints().end()));
    for (const auto& site : fs) {
        if (s.dim == 1) {
            for (long long dx = -s.margin; dx <= s.margin; ++dx) padded.insert({site[0] + dx});
        } else {
            for (long long dx = -s.margin; dx <= s.margin; ++dx)
                for (long long dy = -s.margin; dy <= s.margin; ++dy)
                    padded.insert({site[0] + dx, site[1] + dy});
        }
    }
    std::vector<Site> sites(padded.begin(), padded.end());
    std::map<Site, std::size_t> index;
    for (std::size_t i = 0; i < sites.size(); ++i) index[sites[i]] = i;
    std::vector<std::size_t> observed;
    for (const auto& site : fs) observed.push_back(index.at(site));
    std::sort(observed.begin(), observed.end());

    // checks[i]: fully visible occurrences completed once site i is assigned.
    std::vector<std::vector<std::vector<std::pair<std::size_t, int>>>> checks(sites.size());
    for (const auto& p : s.forbidden) {
        std::set<Site> anchors;
        for (const auto& site : sites) {
            Site t(site.size());
            for (std::size_t ax = 0; ax < site.size(); ++ax)
                t[ax] = site[ax] - p.cells.front().first[ax];
            anchors.insert(t);
        }
        for (const auto& t : anchors) {
            std::vector<std::pair<std::size_t, int>> cells;
            std::size_t last = 0;
            bool inside = true;
            for (const auto& [site, sym] : p.cells) {
                Site q(site.size());
                for (std::size_t ax = 0; ax < site.size(); ++ax) q[ax] = site[ax] + t[ax];
                auto found = index.find(q);
                if (found == index.end()) {
                    inside = false;
                    break;
                }
                cells.push_back({found->second, sym});
                last = std::max(last, found->second);
            }
            if (inside) checks[last].push_back(std::move(cells));
        }
    }

    std::set<std::vector<int>> seen;
    std::vector<int> assign(sites.size(), -1);
    std::uint64_t nodes = 0;
    auto dfs = [&](auto&& self, std::size_t i) -> void {
        if (i == sites.size()) {
            std::vector<int> key;
            key.reserve(observed.size());
            for (std::size_t j : observed) key.push_back(assign[j]);
            seen.insert(std::move(key));
            return;
        }
        for (int a = 0; a < s.alphabet; ++a) {
            if (++nodes > budget)
                throw std::domain_error(
                    "enumeration budget exceeded; required budget > " + std::to_string(budget));
            assign[i] = a;
            bool ok = true;
            for (const auto& occ : checks[i]) {
                bool match = true;
                for (const auto& [idx, sym] : occ)
                    if (assign[idx] != sym) {
                        match = false;
                        break;
                    }
                if (match) {
                    ok = false;
                    break;
                }
            }
            if (ok) self(self, i + 1);
        }
        assign[i] = -1;
    };
    dfs(dfs, 0);
    return seen;
}

}  // namespace

BigInt count_patterns(const Subshift& s, const FiniteSet& F, std::uint64_t budget) {
    if (F.group.kind != groups::GroupKind::IntLattice || F.group.dim != s.dim)
        throw std::invalid_argument("support must live in the subshift's lattice Z^" +
                                    std::to_string(s.dim));
    if (F.size() == 0) return 1;
    if (s.is_full_shift()) {
        BigInt n = 1;
        for (std::size_t i = 0; i < F.size(); ++i) n *= s.alphabet;
        return n;
    }
    if (s.dim == 1) return count_1d(s, F);
    return BigInt(sweep_restrictions(s, F, budget).size());
}

BigInt cov(const Subshift& s, const FiniteSet& A, Scale scale, std::uint64_t budget) {
    return count_patterns(s, minkowski(A, centered_ball(s.dim, scale.radius)), budget);
}

std::vector<std::vector<int>> enumerate_patterns(const Subshift& s, const FiniteSet& F,
                                                 std::uint64_t budget) {
    if (F.group.kind != groups::GroupKind::IntLattice || F.group.dim != s.dim)
        throw std::invalid_argument("support must live in the subshift's lattice Z^" +
                                    std::to_string(s.dim));
    if (F.size() == 0) return {{}};
    auto seen = sweep_restrictions(s, F, budget);
    return std::vector<std::vector<int>>(seen.begin(), seen.end());
}

}  // namespace owlet::dynamics

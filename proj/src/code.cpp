#include "owlet/code.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "word_automaton.hpp"

namespace owlet::dynamics {

namespace {

std::size_t rule_size(int alphabet, std::size_t neighborhood) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < neighborhood; ++i) n *= static_cast<std::size_t>(alphabet);
    return n;
}

}  // namespace

SlidingBlockCode SlidingBlockCode::make(Subshift source, Subshift target, FiniteSet neighborhood,
                                        std::vector<int> rule, std::string name) {
    if (neighborhood.group.kind != groups::GroupKind::IntLattice ||
        neighborhood.group.dim != source.dim)
        throw std::invalid_argument("code neighborhood must live in the source lattice");
    if (source.dim != target.dim)
        throw std::invalid_argument("source and target dimensions differ");
    if (neighborhood.size() == 0) throw std::invalid_argument("code neighborhood is empty");
    if (rule.size() != rule_size(source.alphabet, neighborhood.size()))
        throw std::invalid_argument("rule table size must be source alphabet ^ |neighborhood|");
    for (int v : rule)
        if (v < 0 || v >= target.alphabet)
            throw std::invalid_argument("rule value outside the target alphabet");
    SlidingBlockCode c;
    c.source = std::move(source);
    c.target = std::move(target);
    c.neighborhood = std::move(neighborhood);
    c.rule = std::move(rule);
    c.name = std::move(name);
    return c;
}

SlidingBlockCode SlidingBlockCode::symbol_map(Subshift source, Subshift target,
                                              std::vector<int> symbol_to_symbol,
                                              std::string name) {
    int d = source.dim;
    FiniteSet origin = groups::grid_set(d, 0, 0);
    return make(std::move(source), std::move(target), std::move(origin),
                std::move(symbol_to_symbol), std::move(name));
}

SlidingBlockCode SlidingBlockCode::identity(const Subshift& s) {
    std::vector<int> id(s.alphabet);
    for (int i = 0; i < s.alphabet; ++i) id[i] = i;
    return symbol_map(s, s, std::move(id), "identity:" + s.name);
}

SlidingBlockCode SlidingBlockCode::to_point(const Subshift& s) {
    return symbol_map(s, Subshift::single_point(s.dim), std::vector<int>(s.alphabet, 0),
                      "to-point:" + s.name);
}

bool SlidingBlockCode::is_symbol_map() const {
    return neighborhood.size() == 1 &&
           neighborhood.elements.front() == groups::identity(neighborhood.group);
}

int SlidingBlockCode::apply(const std::vector<int>& window) const {
    if (window.size() != neighborhood.size())
        throw std::invalid_argument("window size does not match the neighborhood");
    std::size_t idx = 0;
    for (int sym : window) {
        if (sym < 0 || sym >= source.alphabet)
            throw std::invalid_argument("window symbol outside the source alphabet");
        idx = idx * static_cast<std::size_t>(source.alphabet) + static_cast<std::size_t>(sym);
    }
    return rule[idx];
}

SlidingBlockCode compose(const SlidingBlockCode& p, const SlidingBlockCode& q) {
    if (p.target.alphabet != q.source.alphabet || p.target.dim != q.source.dim)
        throw std::invalid_argument("codes do not compose: target of the first (" + p.target.name +
                                    ") does not feed the source of the second (" + q.source.name +
                                    ")");
    if (p.is_symbol_map() && q.is_symbol_map()) {
        std::vector<int> rule(p.rule.size());
        for (std::size_t i = 0; i < p.rule.size(); ++i) rule[i] = q.rule[p.rule[i]];
        return SlidingBlockCode::symbol_map(p.source, q.target, std::move(rule),
                                            q.name + "." + p.name);
    }
    // z_t = q(y on t+Nq) with y_u = p(x on u+Np): composed neighborhood Nq+Np.
    FiniteSet m = minkowski(q.neighborhood, p.neighborhood);
    std::size_t sz = rule_size(p.source.alphabet, m.size());
    std::vector<int> rule(sz);
    std::vector<int> window(m.size());
    for (std::size_t idx = 0; idx < sz; ++idx) {
        std::size_t rem = idx;
        for (std::size_t i = m.size(); i-- > 0;) {
            window[i] = static_cast<int>(rem % p.source.alphabet);
            rem /= p.source.alphabet;
        }
        std::vector<int> mid;
        for (const auto& u : q.neighborhood.elements) {
            std::vector<int> sub;
            for (const auto& v : p.neighborhood.elements) {
                auto site = groups::op(m.group, u, v);
                auto it = std::lower_bound(m.elements.begin(), m.elements.end(), site,
                                           groups::element_less);
                sub.push_back(window[static_cast<std::size_t>(it - m.elements.begin())]);
            }
            mid.push_back(p.apply(sub));
        }
        rule[idx] = q.apply(mid);
    }
    return SlidingBlockCode::make(p.source, q.target, std::move(m), std::move(rule),
                                  q.name + "." + p.name);
}

namespace {

using detail::anchor_words;
using detail::AnchoredWord;
using detail::last_symbol_ok;

struct FrontierOverflow {};

/// Symbol-map DP over a contiguous 1-d support: branch the target word,
/// subset-construct over the hidden margin, count distinct source traces, keep
/// the best target branch. Dominated branches are pruned.
BigInt fiber_cov_dp(const SlidingBlockCode& code, long long lo, long long hi) {
    const Subshift& s = code.source;
    auto words = anchor_words(s);
    int order = std::max(s.forbidden_span() + 1, 1);
    int m = s.margin;

    std::vector<std::vector<int>> preimages(code.target.alphabet);
    for (int a = 0; a < s.alphabet; ++a) preimages[code.rule[a]].push_back(a);

    using StateSet = std::vector<std::string>;
    using DPState = std::map<StateSet, BigInt>;

    auto advance = [&](const std::string& h, int a) -> std::string {
        std::string nh = h;
        nh.push_back(char(a));
        if (!last_symbol_ok(nh, words)) return std::string(1, char(-1));  // dead marker
        if (static_cast<int>(nh.size()) > order) nh.erase(0, nh.size() - order);
        return nh;
    };

    std::vector<DPState> frontier = {DPState{{StateSet{std::string()}, BigInt(1)}}};
    for (long long pos = lo - m; pos <= hi + m; ++pos) {
        bool observed = pos >= lo && pos <= hi;
        std::vector<DPState> next;
        for (const DPState& d : frontier) {
            for (int y = 0; y < code.target.alphabet; ++y) {
                DPState nd;
                for (const auto& [states, cnt] : d) {
                    if (observed) {
                        for (int a : preimages[y]) {
                            StateSet dst;
                            for (const auto& h : states) {
                                std::string nh = advance(h, a);
                                if (nh != std::string(1, char(-1))) dst.push_back(std::move(nh));
                            }
                            if (dst.empty()) continue;
                            std::sort(dst.begin(), dst.end());
                            dst.erase(std::unique(dst.begin(), dst.end()), dst.end());
                            nd[dst] += cnt;
                        }
                    } else {
                        StateSet dst;
                        for (const auto& h : states)
                            for (int a : preimages[y]) {
                                std::string nh = advance(h, a);
                                if (nh != std::string(1, char(-1))) dst.push_back(std::move(nh));
                            }
                        if (dst.empty()) continue;
                        std::sort(dst.begin(), dst.end());
                        dst.erase(std::unique(dst.begin(), dst.end()), dst.end());
                        nd[dst] += cnt;
                    }
                }
                if (!nd.empty()) next.push_back(std::move(nd));
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        // Drop branches pointwise below another branch; they cannot win.
        std::vector<char> dead(next.size(), 0);
        for (std::size_t i = 0; i < next.size(); ++i)
            for (std::size_t j = 0; j < next.size() && !dead[i]; ++j) {
                if (i == j || dead[j]) continue;
                bool dominated = true;
                for (const auto& [k, c] : next[i]) {
                    auto it = next[j].find(k);
                    if (it == next[j].end() || it->second < c) {
                        dominated = false;
                        break;
                    }
                }
                if (dominated && next[i] != next[j]) dead[i] = 1;
            }
        frontier.clear();
        for (std::size_t i = 0; i < next.size(); ++i)
            if (!dead[i]) frontier.push_back(std::move(next[i]));
        if (frontier.size() > 4096) throw FrontierOverflow{};
    }

    BigInt best = 0;
    for (const DPState& d : frontier) {
        BigInt total = 0;
        for (const auto& [states, cnt] : d) total += cnt;
        best = std::max(best, total);
    }
    return best;
}

/// Literal sweep: enumerate locally admissible source patterns on the padded
/// support, group by the determined part of the image, count distinct traces
/// per group, take the max.
BigInt fiber_cov_sweep(const SlidingBlockCode& code, const FiniteSet& S, std::uint64_t budget) {
    const Subshift& s = code.source;
    FiniteSet V = minkowski(minkowski(S, code.neighborhood), centered_ball(s.dim, s.margin));

    std::vector<Site> sites;
    for (const auto& e : V.elements) sites.push_back(Site(e.ints().begin(), e.ints().end()));
    std::map<Site, std::size_t> index;
    for (std::size_t i = 0; i < sites.size(); ++i) index[sites[i]] = i;

    std::vector<std::size_t> observed;
    for (const auto& e : S.elements)
        observed.push_back(index.at(Site(e.ints().begin(), e.ints().end())));
    std::sort(observed.begin(), observed.end());

    // Image sites whose whole neighborhood lies in the padded support.
    std::vector<std::vector<std::size_t>> image_windows;
    for (const auto& site : sites) {
        std::vector<std::size_t> win;
        bool determined = true;
        for (const auto& off : code.neighborhood.elements) {
            Site q = site;
            for (std::size_t ax = 0; ax < q.size(); ++ax) q[ax] += off.ints()[ax];
            auto it = index.find(q);
            if (it == index.end()) {
                determined = false;
                break;
            }
            win.push_back(it->second);
        }
        if (determined) image_windows.push_back(std::move(win));
    }

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

    std::map<std::vector<int>, std::set<std::vector<int>>> fibers;
    std::vector<int> assign(sites.size(), -1);
    std::uint64_t nodes = 0;
    auto dfs = [&](auto&& self, std::size_t i) -> void {
        if (i == sites.size()) {
            std::vector<int> image;
            std::vector<int> window;
            for (const auto& win : image_windows) {
                window.clear();
                for (std::size_t j : win) window.push_back(assign[j]);
                image.push_back(code.apply(window));
            }
            std::vector<int> trace;
            for (std::size_t j : observed) trace.push_back(assign[j]);
            fibers[std::move(image)].insert(std::move(trace));
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

    BigInt best = 0;
    for (const auto& [image, traces] : fibers) best = std::max(best, BigInt(traces.size()));
    return best;
}

/// Contiguous integer interval recognition for the DP fast path.
bool contiguous_interval(const FiniteSet& S, long long& lo, long long& hi) {
    if (S.group.dim != 1 || S.size() == 0) return false;
    lo = S.elements.front().ints()[0];
    hi = S.elements.back().ints()[0];
    return hi - lo + 1 == static_cast<long long>(S.size());
}

}  // namespace

BigInt fiber_cov(const SlidingBlockCode& code, const FiniteSet& A, Scale scale,
                 std::uint64_t budget) {
    if (A.group.kind != groups::GroupKind::IntLattice || A.group.dim != code.source.dim)
        throw std::invalid_argument("support must live in the source lattice");
    FiniteSet S = minkowski(A, centered_ball(code.source.dim, scale.radius));
    if (S.size() == 0) return 1;

    long long lo = 0, hi = 0;
    if (code.is_symbol_map() && code.source.dim == 1 && contiguous_interval(S, lo, hi)) {
        try {
            return fiber_cov_dp(code, lo, hi);
        } catch (const FrontierOverflow&) {
            // fall through to the literal sweep
        }
    }
    return fiber_cov_sweep(code, S, budget);
}

bool surjective_on_window(const SlidingBlockCode& code, int window_radius, std::uint64_t budget) {
    FiniteSet window = centered_ball(code.source.dim, window_radius);
    auto targets = enumerate_patterns(code.target, window, budget);

    // Realized images on the window from all admissible source assignments on
    // the window padded by the neighborhood and margin.
    const Subshift& s = code.source;
    FiniteSet V = minkowski(minkowski(window, code.neighborhood), centered_ball(s.dim, s.margin));
    std::vector<Site> sites;
    for (const auto& e : V.elements) sites.push_back(Site(e.ints().begin(), e.ints().end()));
    std::map<Site, std::size_t> index;
    for (std::size_t i = 0; i < sites.size(); ++i) index[sites[i]] = i;

    std::vector<std::vector<std::size_t>> image_windows;
    for (const auto& e : window.elements) {
        Site site(e.ints().begin(), e.ints().end());
        std::vector<std::size_t> win;
        for (const auto& off : code.neighborhood.elements) {
            Site q = site;
            for (std::size_t ax = 0; ax < q.size(); ++ax) q[ax] += off.ints()[ax];
            win.push_back(index.at(q));
        }
        image_windows.push_back(std::move(win));
    }

    auto sources = enumerate_patterns(s, V, budget);
    std::set<std::vector<int>> realized;
    std::vector<int> buf;
    for (const auto& x : sources) {
        std::vector<int> image;
        for (const auto& win : image_windows) {
            buf.clear();
            for (std::size_t j : win) buf.push_back(x[j]);
            image.push_back(code.apply(buf));
        }
        realized.insert(std::move(image));
    }
    for (const auto& y : targets)
        if (!realized.count(y)) return false;
    return true;
}

}  // namespace owlet::dynamics

// Acceptance suite: twelve desk-scale criteria, one verdict line each.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "owlet/cli.hpp"
#include "owlet/report.hpp"

using namespace owlet;
using namespace owlet::entropy;
using dynamics::Scale;
using dynamics::SlidingBlockCode;
using dynamics::Subshift;
using groups::CompactRegion;
using groups::interval_set;
using json = nlohmann::json;

namespace {

int failures = 0;

void verdict(int n, const std::string& what, bool ok, double seconds) {
    std::printf("%s criterion %2d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", n, what.c_str(), seconds);
    if (!ok) ++failures;
}

template <typename F>
void criterion(int n, const std::string& what, F&& body) {
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& e) {
        note = std::string(" [exception: ") + e.what() + "]";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    verdict(n, what + note, ok, secs);
}

int run_cli(std::initializer_list<std::string> args, std::string* out = nullptr) {
    std::ostringstream o, e;
    int code = cli::run(std::vector<std::string>(args), o, e);
    if (out) *out = o.str();
    return code;
}

const double kTol3 = 1e-2;    // net independence
const double kTolEnt = 1e-3;  // entropy comparisons

}  // namespace

int main() {
    // 1. full shifts: exactly log k at every index and scale
    criterion(1, "full k-shift entropy exact at every trace index (k=2,3,4)", [] {
        for (int k : {2, 3, 4}) {
            auto s = Subshift::full_shift(k, 1);
            auto rep = topological_entropy(s, groups::intervals_sequence(), {0, 1, 2}, 20);
            for (const auto& se : rep.per_scale)
                for (const auto& row : se.estimate.trace) {
                    if (std::abs(row.ratio - std::log(double(k))) > 1e-12) return false;
                    // counts themselves are exact powers
                    auto support = interval_set(-se.radius, row.index - 1 + se.radius);
                    if (dynamics::count_patterns(s, support) !=
                        pow(BigInt(k), unsigned(support.size())))
                        return false;
                }
            if (std::abs(rep.sup_value - std::log(double(k))) > 1e-12) return false;
        }
        return true;
    });

    // 2. golden mean against the transfer-matrix oracle, through the CLI
    criterion(2, "golden mean tail within 1e-3 of the transfer-matrix eigenvalue", [] {
        std::string out;
        if (run_cli({"entropy", "--preset", "golden-mean", "--seq", "intervals", "--imax", "30"},
                    &out) != 0)
            return false;
        double sup = json::parse(out)["supValue"];
        return std::abs(sup - oracles::golden_mean_entropy()) <= kTolEnt;
    });

    // 3. net independence across shipped sequences for every built-in f
    criterion(3, "ow_crosscheck passes at 1e-2 on 10 (f, sequence-pair) combinations", [] {
        using groups::VanHoveSequence;
        auto iv = groups::intervals_sequence();
        auto sh = groups::shifted_intervals_sequence();
        auto cu = groups::cubes_sequence(1);
        std::vector<std::pair<VanHoveSequence, VanHoveSequence>> z_pairs = {
            {iv, sh}, {iv, cu}, {sh, cu}};
        std::vector<SubadditiveFunction> z_funcs = {
            SubadditiveFunction::log_pattern_count(Subshift::full_shift(2, 1)),
            SubadditiveFunction::log_pattern_count(Subshift::golden_mean())};
        int combos = 0;
        for (const auto& f : z_funcs)
            for (const auto& [a, b] : z_pairs) {
                if (!ow_crosscheck(f, a, b, 30, kTol3).pass) return false;
                ++combos;
            }
        auto merge = SubadditiveFunction::log_fiber_cov(cli::parse_code("merge:4:2"), Scale{0});
        for (const auto& [a, b] : z_pairs)
            if (!ow_crosscheck(merge, a, b, 30, kTol3).pass)
                return false;
            else
                ++combos;
        auto dil = SubadditiveFunction::dilation_volume(
            CompactRegion::make_box({{Rational(-1), Rational(1)}}));
        if (!ow_crosscheck(dil, groups::boxes_sequence(1),
                           groups::offset_boxes_sequence(1, Rational(7, 2)), 30, kTol3)
                 .pass)
            return false;
        ++combos;
        return combos >= 8;
    });

    // 4. discretization sandwich with the exact cell-count ratio
    criterion(4, "box discretization ratio ((2n+2)/(2n))^d and monotone sandwich, n<=50", [] {
        for (int d = 1; d <= 2; ++d) {
            auto fd = cps::parse_fundamental_domain(d == 1 ? "zd:1" : "zd:2");
            auto dil = SubadditiveFunction::dilation_volume(CompactRegion::make_box(
                std::vector<groups::Interval>(d, {Rational(-1), Rational(1)})));
            auto lin =
                SubadditiveFunction::linear(groups::GroupDescriptor::real_vector(d), Rational(2));
            for (long long n = 1; n <= 50; ++n) {
                auto box = CompactRegion::make_box(
                    std::vector<groups::Interval>(d, {Rational(-n), Rational(n)}));
                auto disc = groups::lattice_discretize(box, Rational(1));
                Rational expect = 1;
                for (int ax = 0; ax < d; ++ax) expect *= Rational(2 * n + 2, 2 * n);
                if (Rational((long long)disc.f_hat.size(), (long long)disc.f_check.size()) !=
                    expect)
                    return false;
                auto as_real = [&](const groups::FiniteSet& f) {
                    std::vector<groups::GroupElement> elems;
                    for (const auto& e : f.elements) {
                        std::vector<Rational> v;
                        for (long long x : e.ints()) v.push_back(Rational(x));
                        elems.push_back(groups::make_rat_element(std::move(v)));
                    }
                    return groups::FiniteSet::make(groups::GroupDescriptor::real_vector(d),
                                                   std::move(elems));
                };
                for (const auto* f : {&dil, &lin}) {
                    double lo = lattice_transfer_value(*f, fd, as_real(disc.f_check));
                    double mid = f->eval(box);
                    double hi = lattice_transfer_value(*f, fd, as_real(disc.f_hat));
                    if (!(lo <= mid + 1e-9 && mid <= hi + 1e-9)) return false;
                }
            }
        }
        return true;
    });

    // 5. restriction to sublattices reproduces the entropy
    criterion(5, "restricted entropy (with density) matches entropy, n0=2..4", [] {
        for (bool golden : {false, true}) {
            auto s = golden ? Subshift::golden_mean() : Subshift::full_shift(2, 1);
            auto top = topological_entropy(s, groups::intervals_sequence(), {0, 1}, 25);
            for (long long n = 2; n <= 4; ++n) {
                auto res = lattice_restricted_entropy(s, {{n}, ""}, {0, 1}, 25);
                double tol = golden ? kTolEnt : 1e-12;
                if (std::abs(res.sup_value - top.sup_value) > tol) return false;
            }
        }
        return true;
    });

    // 6. power rule
    criterion(6, "n*E(s) equals the nZ restriction, n=1..4", [] {
        for (int n = 1; n <= 4; ++n) {
            for (int k : {2, 3}) {
                auto rep = power_rule_check(Subshift::full_shift(k, 1), n, 10, 1e-12);
                if (!rep.pass || rep.delta > 1e-12) return false;
            }
            if (!power_rule_check(Subshift::golden_mean(), n, 25, kTolEnt).pass) return false;
        }
        return true;
    });

    // 7. chain inequalities for composed factor maps
    criterion(7, "chain inequalities: exact 4->2->point, 20 random merge chains, negative test",
              [] {
                  auto seq = groups::intervals_sequence();
                  auto p = cli::parse_code("four-to-two");
                  auto q = cli::parse_code("to-point:full:2");
                  auto exact = bowen_chain_check(p, q, seq, {0, 1}, 8);
                  const double l2 = std::log(2.0);
                  if (!exact.pass || std::abs(exact.first.sup_value - l2) > 1e-12 ||
                      std::abs(exact.second.sup_value - l2) > 1e-12 ||
                      std::abs(exact.composed.sup_value - 2 * l2) > 1e-12)
                      return false;
                  for (unsigned seed = 1; seed <= 20; ++seed) {
                      auto [a, b] = cli::random_merge_chain(seed, 6);
                      if (!bowen_chain_check(a, b, seq, {0, 1}, 10).pass) return false;
                  }
                  // corrupted fiber count must exit 1 through the CLI
                  return run_cli({"bowen-chain", "--preset", "four-to-two-to-point", "--corrupt",
                                  "0.5"}) == 1;
              });

    // 8. cov/spa/sep chain on exact metric spaces and cylinder families
    criterion(8, "cov(e) <= spa(e/2) <= sep(e/2) <= cov(e/2) on 60 spaces; cylinders collapse",
              [] {
                  std::mt19937 rng(17);
                  for (int trial = 0; trial < 60; ++trial) {
                      std::size_t n = 4 + rng() % 7;  // up to 10 points
                      std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
                      for (std::size_t i = 0; i < n; ++i)
                          for (std::size_t j = i + 1; j < n; ++j)
                              d[i][j] = d[j][i] = Rational(8 + (long long)(rng() % 9), 8);
                      auto m = dynamics::FiniteMetricSpace::make(std::move(d));
                      for (const Rational& eps : {Rational(2), Rational(5, 2), Rational(3)}) {
                          auto c_full = dynamics::cov_metric(m, eps);
                          auto s_half = dynamics::sep(m, eps / 2);
                          auto p_half = dynamics::spa(m, eps / 2);
                          auto c_half = dynamics::cov_metric(m, eps / 2);
                          if (!(c_full.exact && s_half.exact && p_half.exact && c_half.exact))
                              return false;
                          if (!(c_full.value <= p_half.value && p_half.value <= s_half.value &&
                                s_half.value <= c_half.value))
                              return false;
                      }
                  }
                  for (const auto& s : {Subshift::golden_mean(), Subshift::full_shift(2, 1)})
                      for (int r = 0; r <= 1; ++r) {
                          auto a = interval_set(0, 4);
                          auto m = dynamics::cylinder_space(s, a, Scale{r});
                          BigInt expect = dynamics::cov(s, a, Scale{r});
                          if (dynamics::sep(m, 1).value != expect ||
                              dynamics::spa(m, 1).value != expect ||
                              dynamics::cov_metric(m, 1).value != expect)
                              return false;
                      }
                  return true;
              });

    // 9. Van Hove diagnostics with closed-form shells
    criterion(9, "box shells exact and pass; constant sequence exits 1; p-adic ratios zero", [] {
        for (int d = 1; d <= 2; ++d) {
            auto Kr = CompactRegion::make_box(
                std::vector<groups::Interval>(d, {Rational(-1), Rational(1)}));
            auto diag = groups::van_hove_diagnostic(groups::boxes_sequence(d), Kr, 30, 0.2);
            if (!diag.pass) return false;
            for (const auto& row : diag.rows) {
                long long n = row.index;
                Rational outer = 1, inner = 1, vol = 1;
                for (int ax = 0; ax < d; ++ax) {
                    outer *= 2 * n + 2;
                    inner *= n >= 1 ? (n == 1 ? 0 : 2 * n - 2) : 0;
                    vol *= 2 * n;
                }
                if (row.ratio != (outer - inner) / vol) return false;
            }
            auto Kz = CompactRegion::make_int_box(
                std::vector<std::pair<long long, long long>>(d, {-1, 1}));
            auto zdiag = groups::van_hove_diagnostic(groups::cubes_sequence(d), Kz, 30, 0.2);
            if (!zdiag.pass) return false;
            for (const auto& row : zdiag.rows) {
                long long n = row.index;
                Rational outer = 1, inner = 1, vol = 1;
                for (int ax = 0; ax < d; ++ax)
                    outer *= 2 * n + 3, inner *= 2 * n - 1, vol *= 2 * n + 1;
                if (row.ratio != (outer - inner) / vol) return false;
            }
        }
        if (run_cli({"vanhove", "--group", "r1", "--seq", "constant", "--K", "box:1"}) != 1)
            return false;
        auto seq = groups::padic_ball_sequence(2, 6);
        auto K = CompactRegion::make_padic_ball(seq.group, 0, 0);
        auto pdiag = groups::van_hove_diagnostic(seq, K, 5);
        for (const auto& row : pdiag.rows)
            if (row.ratio != 0) return false;
        return pdiag.pass;
    });

    // 10. cut-and-project schemes
    criterion(10, "p-adic: 17 points, density -> 2R; fibonacci: meyer + density band", [] {
        auto ms = cps::ModelSetDesc::parse("padic:2:1:3");
        if (cps::enumerate_padic_points(ms, 3).size() != 17) return false;
        auto trace = cps::uniform_density(ms, 3);
        double c_measured = 0;
        for (const auto& row : trace.rows)
            c_measured = std::max(c_measured, std::abs(to_double(row.ratio) - 2.0) *
                                                  std::pow(2.0, row.index));
        std::printf("      p-adic density error constant C = %.3f (|ratio_i - 2R| <= C 2^-i)\n",
                    c_measured);
        if (c_measured > 10.0) return false;

        auto fib = cps::ModelSetDesc::parse("fibonacci");
        auto patch = cps::enumerate_model_set(fib, Rational(-110), Rational(110));
        auto meyer = cps::meyer_check(patch, Rational(-110), Rational(110), Rational(-50),
                                      Rational(50), Rational(2), Rational(2));
        if (!meyer.conclusive || !meyer.relatively_dense || !meyer.meyer_difference) return false;
        auto dens = cps::uniform_density(fib, 30);
        double oracle = fib.density_oracle().to_double();
        return std::abs(dens.tail - oracle) <= dens.band;
    });

    // 11. rectangle-cover infimum equals f(A)|B|
    criterion(11, "product extension exact on all |A|<=3, |B|<=3 instances", [] {
        auto subsets = [](const std::vector<long long>& ground) {
            std::vector<groups::FiniteSet> out;
            for (unsigned mask = 1; mask < (1u << ground.size()); ++mask) {
                std::vector<groups::GroupElement> elems;
                for (std::size_t i = 0; i < ground.size(); ++i)
                    if ((mask >> i) & 1) elems.push_back(groups::make_int_element({ground[i]}));
                out.push_back(groups::FiniteSet::make(groups::GroupDescriptor::int_lattice(1),
                                                      std::move(elems)));
            }
            return out;
        };
        for (const auto& ground_a : {std::vector<long long>{0, 1, 2},
                                     std::vector<long long>{-2, 1, 5}})
            for (const auto& a : subsets(ground_a))
                for (const auto& b : subsets({0, 1, 2})) {
                    auto rep = product_extension_check(ProductFKind::Cardinality, a, b);
                    if (!rep.exhaustive || !rep.pass) return false;
                    if (rep.infimum != Rational((long long)(a.size() * b.size()))) return false;
                }
        return true;
    });

    // 12. bernoulli entropies against the variational bound
    criterion(12, "bernoulli(1/2,1/2) = log 2 = E(full 2-shift); five strict non-uniform cases",
              [] {
                  auto flat = bernoulli_entropy({Rational(1, 2), Rational(1, 2)});
                  auto top = topological_entropy(Subshift::full_shift(2, 1),
                                                 groups::intervals_sequence(), {0}, 10);
                  if (std::abs(flat.entropy - std::log(2.0)) > 1e-14) return false;
                  if (std::abs(flat.entropy - top.sup_value) > 1e-12) return false;
                  std::vector<std::vector<Rational>> skews = {
                      {Rational(1, 4), Rational(3, 4)}, {Rational(1, 3), Rational(2, 3)},
                      {Rational(1, 10), Rational(9, 10)}, {Rational(2, 5), Rational(3, 5)},
                      {Rational(1, 8), Rational(7, 8)}};
                  for (const auto& p : skews) {
                      auto rep = bernoulli_entropy(p);
                      if (!(rep.entropy < std::log(2.0)) || !rep.variational_ok) return false;
                  }
                  return true;
              });

    std::printf("%s: %d of 12 criteria passed\n", failures == 0 ? "OK" : "FAILED", 12 - failures);
    return failures;
}

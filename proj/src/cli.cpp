#include "owlet/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <random>

#include "owlet/report.hpp"

namespace owlet::cli {

using dynamics::Scale;
using dynamics::SlidingBlockCode;
using dynamics::Subshift;
using entropy::SubadditiveFunction;
using groups::CompactRegion;
using groups::FiniteSet;
using groups::GroupDescriptor;
using groups::VanHoveSequence;
using json = nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return parts;
}

Rational parse_rational(const std::string& s) {
    try {
        if (auto slash = s.find('/'); slash != std::string::npos)
            return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
        if (auto dot = s.find('.'); dot != std::string::npos) {
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            BigInt denom = 1;
            for (std::size_t i = dot + 1; i < s.size(); ++i) denom *= 10;
            return Rational(BigInt(digits), denom);
        }
        return Rational(BigInt(s));
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse rational '" + s + "'");
    }
}

std::vector<Rational> parse_rational_list(const std::string& s) {
    std::vector<Rational> out;
    for (const auto& part : split(s, ',')) out.push_back(parse_rational(part));
    return out;
}

std::vector<long long> parse_int_list(const std::string& s) {
    std::vector<long long> out;
    for (const auto& part : split(s, ',')) out.push_back(std::stoll(part));
    return out;
}

std::vector<int> parse_scales(const std::string& s) {
    std::vector<int> out;
    for (long long v : parse_int_list(s)) {
        if (v < 0 || v > 16) throw std::invalid_argument("scale radius out of range [0,16]");
        out.push_back(int(v));
    }
    if (out.empty()) throw std::invalid_argument("empty scale list");
    return out;
}

/// K-region syntax against a concrete group: box:<r> | cube:<r> | ball:<n>.
CompactRegion parse_k_region(const std::string& spec, const GroupDescriptor& g) {
    auto parts = split(spec, ':');
    if (parts[0] == "box" && parts.size() == 2 && g.kind == groups::GroupKind::RealVector) {
        Rational r = parse_rational(parts[1]);
        if (r <= 0) throw std::invalid_argument("box radius must be positive");
        return CompactRegion::make_box(
            std::vector<groups::Interval>(g.dim, {-r, r}));
    }
    if (parts[0] == "cube" && parts.size() == 2 && g.kind == groups::GroupKind::IntLattice) {
        long long r = std::stoll(parts[1]);
        if (r < 0) throw std::invalid_argument("cube radius must be nonnegative");
        return CompactRegion::make_int_box(
            std::vector<std::pair<long long, long long>>(g.dim, {-r, r}));
    }
    if (parts[0] == "ball" && parts.size() == 2 && g.kind == groups::GroupKind::PadicTruncated)
        return CompactRegion::make_padic_ball(g, 0, std::stoi(parts[1]));
    throw std::invalid_argument("cannot parse region '" + spec + "' for group " + g.str());
}

GroupDescriptor parse_group(const std::string& spec) {
    if (spec == "r1") return GroupDescriptor::real_vector(1);
    if (spec == "r2") return GroupDescriptor::real_vector(2);
    if (spec == "z1") return GroupDescriptor::int_lattice(1);
    if (spec == "z2") return GroupDescriptor::int_lattice(2);
    if (spec == "heis") return GroupDescriptor::heisenberg();
    auto parts = split(spec, ':');
    if (parts[0] == "padic" && parts.size() == 3)
        return GroupDescriptor::padic(std::stoll(parts[1]), std::stoi(parts[2]));
    throw std::invalid_argument("unknown group '" + spec + "'");
}

double emit_scale(bool use_log2) { return use_log2 ? 1.0 / std::log(2.0) : 1.0; }

void rescale(entropy::OWEstimate& e, double c) {
    for (auto& row : e.trace) row.f_value *= c, row.ratio *= c;
    e.tail *= c;
    e.band *= c;
}

void rescale(entropy::EntropyReport& r, double c) {
    for (auto& se : r.per_scale) rescale(se.estimate, c);
    r.sup_value *= c;
    r.band *= c;
}

entropy::EntropyReport wrap_estimate(const std::string& label, entropy::OWEstimate est) {
    entropy::EntropyReport rep;
    rep.label = label;
    rep.per_scale.push_back({0, std::move(est)});
    rep.sup_value = rep.per_scale[0].estimate.tail;
    rep.band = rep.per_scale[0].estimate.band;
    return rep;
}

int emit_entropy(const entropy::EntropyReport& rep, const std::string& command,
                 const std::string& format, std::ostream& out, json extra = json::object()) {
    if (format == "csv") {
        out << report::to_csv(rep);
    } else if (format == "svg") {
        out << report::to_svg(rep);
    } else {
        json body = report::to_json(rep);
        for (auto& [k, v] : extra.items()) body[k] = std::move(v);
        out << report::envelope(command, std::move(body));
    }
    return 0;
}

struct CliError {
    int code;
    std::string message;
};

}  // namespace

Subshift parse_subshift(const std::string& preset) {
    if (preset == "golden-mean") return Subshift::golden_mean();
    if (preset == "hard-square") return Subshift::hard_square();
    if (preset == "single-point") return Subshift::single_point();
    auto parts = split(preset, ':');
    if (parts[0] == "full" && (parts.size() == 2 || parts.size() == 3)) {
        int k = std::stoi(parts[1]);
        int d = parts.size() == 3 ? std::stoi(parts[2]) : 1;
        if (k < 1 || d < 1 || d > 2)
            throw std::invalid_argument("full shift wants alphabet >= 1 and d in {1,2}");
        return Subshift::full_shift(k, d);
    }
    if (parts[0] == "full-2" || preset == "full-2") return Subshift::full_shift(2, 1);
    if (preset == "full-3") return Subshift::full_shift(3, 1);
    if (preset == "full-4") return Subshift::full_shift(4, 1);
    if (parts[0] == "product" && parts.size() >= 3) {
        // product:<a>:<b> where a, b are single-token presets
        return Subshift::product(parse_subshift(parts[1]),
                                 parse_subshift(preset.substr(parts[1].size() + 9)));
    }
    throw std::invalid_argument("unknown subshift preset '" + preset + "'");
}

SlidingBlockCode parse_code(const std::string& preset) {
    if (preset == "four-to-two")
        return SlidingBlockCode::symbol_map(Subshift::full_shift(4, 1), Subshift::full_shift(2, 1),
                                            {0, 0, 1, 1}, "four-to-two");
    if (preset == "xor") {
        // radius-1 xor of a 2-shift with its right neighbor
        return SlidingBlockCode::make(Subshift::full_shift(2, 1), Subshift::full_shift(2, 1),
                                      groups::interval_set(0, 1), {0, 1, 1, 0}, "xor");
    }
    auto parts = split(preset, ':');
    if (parts[0] == "identity" && parts.size() >= 2)
        return SlidingBlockCode::identity(parse_subshift(preset.substr(9)));
    if (parts[0] == "to-point" && parts.size() >= 2)
        return SlidingBlockCode::to_point(parse_subshift(preset.substr(9)));
    if (parts[0] == "merge" && parts.size() == 3) {
        int k = std::stoi(parts[1]), m = std::stoi(parts[2]);
        if (m < 1 || k < m) throw std::invalid_argument("merge wants k >= m >= 1");
        std::vector<int> map(k);
        for (int i = 0; i < k; ++i) map[i] = i % m;
        return SlidingBlockCode::symbol_map(Subshift::full_shift(k, 1), Subshift::full_shift(m, 1),
                                            std::move(map), "merge-" + parts[1] + "-" + parts[2]);
    }
    if (parts[0] == "projection" && parts.size() >= 3) {
        Subshift a = parse_subshift(parts[1]);
        Subshift b = parse_subshift(preset.substr(parts[1].size() + 12));
        Subshift prod = Subshift::product(a, b);
        std::vector<int> map(prod.alphabet);
        for (int i = 0; i < prod.alphabet; ++i) map[i] = i / b.alphabet;
        return SlidingBlockCode::symbol_map(std::move(prod), std::move(a), std::move(map),
                                            "projection-" + parts[1]);
    }
    throw std::invalid_argument("unknown code preset '" + preset + "'");
}

VanHoveSequence parse_sequence(const std::string& preset) {
    if (preset == "intervals") return groups::intervals_sequence();
    if (preset == "shifted-intervals" || preset == "shifted")
        return groups::shifted_intervals_sequence();
    if (preset == "constant") return groups::constant_interval_sequence();
    auto parts = split(preset, ':');
    if (parts[0] == "cubes")
        return groups::cubes_sequence(parts.size() == 2 ? std::stoi(parts[1]) : 1);
    if (parts[0] == "boxes")
        return groups::boxes_sequence(parts.size() == 2 ? std::stoi(parts[1]) : 1);
    if (parts[0] == "offset-boxes" && parts.size() == 3)
        return groups::offset_boxes_sequence(std::stoi(parts[1]), parse_rational(parts[2]));
    if (parts[0] == "padic" && parts.size() == 3)
        return groups::padic_ball_sequence(std::stoll(parts[1]), std::stoi(parts[2]));
    throw std::invalid_argument("unknown sequence preset '" + preset + "'");
}

std::pair<SlidingBlockCode, SlidingBlockCode> random_merge_chain(unsigned seed, int max_alphabet) {
    if (max_alphabet < 3) throw std::invalid_argument("merge chain wants alphabet >= 3");
    std::mt19937 rng(seed);
    int k0 = 3 + int(rng() % (max_alphabet - 2));
    int k1 = 2 + int(rng() % (k0 - 1));
    int k2 = 1 + int(rng() % k1);
    auto surjection = [&](int from, int to) {
        std::vector<int> map(from);
        for (int i = 0; i < to; ++i) map[i] = i;  // guarantee surjectivity
        for (int i = to; i < from; ++i) map[i] = int(rng() % to);
        std::shuffle(map.begin(), map.end(), rng);
        return map;
    };
    auto p = SlidingBlockCode::symbol_map(Subshift::full_shift(k0, 1), Subshift::full_shift(k1, 1),
                                          surjection(k0, k1),
                                          "merge-" + std::to_string(k0) + "-" + std::to_string(k1));
    auto q = SlidingBlockCode::symbol_map(Subshift::full_shift(k1, 1), Subshift::full_shift(k2, 1),
                                          surjection(k1, k2),
                                          "merge-" + std::to_string(k1) + "-" + std::to_string(k2));
    return {std::move(p), std::move(q)};
}

namespace {

SubadditiveFunction parse_subadditive(const std::string& spec, const VanHoveSequence& seq,
                                      int scale_radius) {
    auto parts = split(spec, ':');
    if (parts[0] == "pattern-count" && parts.size() >= 2)
        return SubadditiveFunction::log_pattern_count(parse_subshift(spec.substr(14)));
    if (parts[0] == "fiber-cov" && parts.size() >= 2)
        return SubadditiveFunction::log_fiber_cov(parse_code(spec.substr(10)),
                                                  Scale{scale_radius});
    if (parts[0] == "dilation" && parts.size() >= 2)
        return SubadditiveFunction::dilation_volume(
            parse_k_region(spec.substr(9), seq.group));
    if (parts[0] == "linear" && parts.size() == 2)
        return SubadditiveFunction::linear(seq.group, parse_rational(parts[1]));
    throw std::invalid_argument("unknown subadditive function '" + spec + "'");
}

// ---- option bags ----

struct CommonOpts {
    int i_max = 20;
    std::string scales = "0,1,2";
    std::string seq = "intervals";
    std::string format = "json";
    double tol = 1e-2;
    std::uint64_t budget = 1ull << 26;
    unsigned seed = 1;
    bool log2 = false;
};

int run_impl(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    try {
        return run_impl(std::move(args), out, err);
    } catch (const CliError& e) {
        err << json{{"code", e.code}, {"error", e.message}}.dump() << "\n";
        return e.code;
    } catch (const std::domain_error& e) {
        int code = std::string(e.what()).find("budget") != std::string::npos ? 3 : 2;
        err << json{{"code", code}, {"error", e.what()}}.dump() << "\n";
        return code;
    } catch (const std::exception& e) {
        err << json{{"code", 2}, {"error", e.what()}}.dump() << "\n";
        return 2;
    }
}

namespace {

int run_impl(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"entropy and quasicrystal toolkit"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    // --config <file>: JSON object of long-option values; explicit flags win.
    std::string config_path;
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--config") {
            config_path = args[i + 1];
            args.erase(args.begin() + long(i), args.begin() + long(i) + 2);
            break;
        }
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw CliError{2, "cannot open config file " + config_path};
        json cfg;
        try {
            in >> cfg;
        } catch (const std::exception& e) {
            throw CliError{2, std::string("config parse error: ") + e.what()};
        }
        if (!cfg.is_object()) throw CliError{2, "config must be a JSON object"};
        std::vector<std::string> tokens;
        for (auto& [key, value] : cfg.items()) {
            if (value.is_boolean()) {
                if (value.get<bool>()) tokens.push_back("--" + key);
            } else {
                tokens.push_back("--" + key);
                tokens.push_back(value.is_string() ? value.get<std::string>() : value.dump());
            }
        }
        if (args.empty()) throw CliError{2, "config given but no subcommand"};
        args.insert(args.begin() + 1, tokens.begin(), tokens.end());
    }

    CommonOpts o;
    std::string scheme = "trivial-z", sublattice, model, preset = "full:2", code = "identity:full:2";
    std::string lo = "-10", hi = "10", group_spec, k_spec, f_spec = "pattern-count:full:2";
    std::string seq2 = "shifted-intervals", transfer, counter = "cov", chain = "four-to-two-to-point";
    std::string set_a = "0,1", set_b = "0,1,2", f_kind = "cardinality", probs = "1/2,1/2";
    std::string patch_lo = "-110", patch_hi = "110", query_lo = "-50", query_hi = "50";
    std::string k_bound = "2", f_bound = "2", discretize;
    int ball = -1, power_n = 2, margin = 1, scale_radius = 0;
    double corrupt = 0.0;
    bool no_density = false, dilate_check = false;

    auto add_common = [&](CLI::App* sub, bool with_scales = true) {
        sub->add_option("--imax", o.i_max, "sequence prefix length");
        sub->add_option("--seq", o.seq, "Van Hove sequence preset");
        sub->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv", "svg"}));
        sub->add_option("--tol", o.tol, "verdict tolerance");
        sub->add_option("--budget", o.budget, "search-node budget");
        sub->add_option("--seed", o.seed, "seed for randomized inputs");
        sub->add_flag("--log2", o.log2, "report entropies in log base 2");
        if (with_scales) sub->add_option("--scales", o.scales, "cylinder radii, comma separated");
    };

    auto* c_enum = app.add_subcommand("cps-enumerate", "model-set points of a shipped scheme");
    c_enum->add_option("--scheme", scheme);
    c_enum->add_option("--lo", lo);
    c_enum->add_option("--hi", hi);
    c_enum->add_option("--ball", ball, "p-adic ball exponent (padic schemes)");
    add_common(c_enum, false);

    auto* c_dens = app.add_subcommand("density", "uniform density trace of a point set");
    c_dens->add_option("--scheme", scheme);
    c_dens->add_option("--sublattice", sublattice, "moduli n1,n2,... (overrides --scheme)");
    add_common(c_dens, false);

    auto* c_meyer = app.add_subcommand("meyer-check", "relative density + difference property");
    c_meyer->add_option("--scheme", scheme);
    c_meyer->add_option("--patch-lo", patch_lo);
    c_meyer->add_option("--patch-hi", patch_hi);
    c_meyer->add_option("--query-lo", query_lo);
    c_meyer->add_option("--query-hi", query_hi);
    c_meyer->add_option("--kbound", k_bound);
    c_meyer->add_option("--fbound", f_bound);
    add_common(c_meyer, false);

    auto* c_vh = app.add_subcommand("vanhove", "K-boundary diagnostics of a sequence");
    c_vh->add_option("--group", group_spec);
    c_vh->add_option("--K", k_spec, "boundary probe: box:<r> | cube:<r> | ball:<n>");
    c_vh->add_flag("--dilate-check", dilate_check, "also trace mu(K A_i)/mu(A_i)");
    c_vh->add_option("--discretize", discretize, "lattice spacing for the box sandwich");
    add_common(c_vh, false);

    auto* c_ow = app.add_subcommand("ow-limit", "normalized subadditive limit");
    c_ow->add_option("--f", f_spec, "pattern-count:<s> | fiber-cov:<c> | dilation:<K> | linear:<c>");
    c_ow->add_option("--scale", scale_radius, "cylinder radius for fiber-cov");
    c_ow->add_option("--transfer", transfer, "lattice preset: verify the covolume transfer");
    add_common(c_ow, false);

    auto* c_cc = app.add_subcommand("ow-crosscheck", "net-independence of the limit");
    c_cc->add_option("--f", f_spec);
    c_cc->add_option("--scale", scale_radius);
    c_cc->add_option("--seq2", seq2);
    add_common(c_cc, false);

    auto* c_ent = app.add_subcommand("entropy", "topological entropy of a subshift");
    c_ent->add_option("--preset", preset);
    c_ent->add_option("--counter", counter)->check(CLI::IsMember({"cov", "sep", "spa"}));
    add_common(c_ent);

    auto* c_rel = app.add_subcommand("relative-entropy", "fiber entropy of a factor map");
    c_rel->add_option("--code", code);
    add_common(c_rel);

    auto* c_res = app.add_subcommand("restrict", "entropy along a restricted index set");
    c_res->add_option("--preset", preset);
    c_res->add_option("--sublattice", sublattice);
    c_res->add_option("--model", model, "model-set index preset (fibonacci)");
    c_res->add_flag("--no-density", no_density, "skip the density factor");
    add_common(c_res);

    auto* c_pow = app.add_subcommand("power-rule", "n * E(s) = E over nZ");
    c_pow->add_option("--preset", preset);
    c_pow->add_option("--n", power_n)->check(CLI::Range(1, 8));
    add_common(c_pow);

    auto* c_chain = app.add_subcommand("bowen-chain", "two-step relative entropy inequalities");
    c_chain->add_option("--preset", chain,
                        "four-to-two-to-point | product-projection | identity-collapse | random");
    c_chain->add_option("--corrupt", corrupt, "offset added to the composed value (negative test)");
    add_common(c_chain);

    auto* c_prod = app.add_subcommand("product-extension", "rectangle-cover infimum over A x B");
    c_prod->add_option("--A", set_a);
    c_prod->add_option("--B", set_b);
    c_prod->add_option("--f", f_kind)->check(CLI::IsMember({"cardinality", "log2count"}));
    c_prod->add_option("--margin", margin)->check(CLI::Range(0, 4));
    add_common(c_prod, false);

    auto* c_ber = app.add_subcommand("bernoulli", "product-measure entropy + variational check");
    c_ber->add_option("--p", probs, "rational probabilities, comma separated");
    add_common(c_ber, false);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        throw CliError{2, std::string("argument error: ") + e.what()};
    }
    if (o.i_max < 1 || o.i_max > 500) throw CliError{2, "imax out of range [1,500]"};
    double scale_out = emit_scale(o.log2);

    if (app.got_subcommand(c_enum)) {
        auto ms = cps::ModelSetDesc::parse(scheme);
        std::vector<Quad5> points;
        std::vector<std::pair<std::string, std::string>> meta{{"scheme", ms.name}};
        if (ms.kind == cps::SchemeKind::Padic && ball >= 0) {
            for (const auto& r : cps::enumerate_padic_points(ms, ball)) points.emplace_back(r);
            meta.push_back({"ball", std::to_string(ball)});
        } else {
            points = cps::enumerate_model_set(ms, parse_rational(lo), parse_rational(hi));
            meta.push_back({"lo", lo});
            meta.push_back({"hi", hi});
        }
        meta.push_back({"count", std::to_string(points.size())});
        meta.push_back({"densityOracle", ms.density_oracle().str()});
        if (ms.kind != cps::SchemeKind::Padic)
            meta.push_back({"internalFillGap", std::to_string(cps::internal_fill_gap(ms, 400))});
        if (o.format == "csv") {
            out << report::points_csv(points, meta);
        } else {
            json body;
            for (const auto& [k, v] : meta) body[k] = v;
            json arr = json::array();
            for (const auto& q : points) arr.push_back(q.str());
            body["points"] = std::move(arr);
            out << report::envelope("cps-enumerate", std::move(body));
        }
        return 0;
    }

    if (app.got_subcommand(c_dens)) {
        cps::DensityTrace trace =
            sublattice.empty()
                ? cps::uniform_density(cps::ModelSetDesc::parse(scheme), o.i_max)
                : cps::sublattice_density(parse_int_list(sublattice), o.i_max);
        if (o.format == "csv")
            out << report::to_csv(trace);
        else if (o.format == "svg")
            out << report::to_svg(trace);
        else
            out << report::envelope("density", report::to_json(trace));
        return 0;
    }

    if (app.got_subcommand(c_meyer)) {
        auto ms = cps::ModelSetDesc::parse(scheme);
        if (ms.kind == cps::SchemeKind::Padic)
            throw CliError{2, "meyer-check covers the real-line schemes only"};
        Rational plo = parse_rational(patch_lo), phi = parse_rational(patch_hi);
        auto patch = cps::enumerate_model_set(ms, plo, phi);
        auto rep = cps::meyer_check(patch, plo, phi, parse_rational(query_lo),
                                    parse_rational(query_hi), parse_rational(k_bound),
                                    parse_rational(f_bound));
        out << report::envelope("meyer-check", report::to_json(rep));
        if (!rep.conclusive) return 2;
        return (rep.relatively_dense && rep.meyer_difference) ? 0 : 1;
    }

    if (app.got_subcommand(c_vh)) {
        auto seq = parse_sequence(o.seq);
        if (!group_spec.empty() && !(parse_group(group_spec) == seq.group))
            throw CliError{2, "sequence group does not match --group"};
        if (k_spec.empty()) k_spec = seq.group.kind == groups::GroupKind::RealVector ? "box:1"
                                     : seq.group.kind == groups::GroupKind::IntLattice ? "cube:1"
                                                                                       : "ball:1";
        CompactRegion K = parse_k_region(k_spec, seq.group);
        auto diag = groups::van_hove_diagnostic(seq, K, o.i_max, o.tol);
        json body = report::to_json(diag);
        if (dilate_check) {
            auto dil = groups::dilated_sequence(K, seq, o.i_max);
            json ratios = json::array();
            for (const auto& [i, r] : dil.ratio)
                ratios.push_back({{"index", i}, {"ratio", to_double(r)}});
            body["dilationRatios"] = std::move(ratios);
        }
        if (!discretize.empty()) {
            if (seq.group.kind != groups::GroupKind::RealVector)
                throw CliError{2, "--discretize wants a real box sequence"};
            auto disc = groups::lattice_discretize(seq.at(o.i_max), parse_rational(discretize));
            body["discretization"] = {{"innerCount", disc.f_check.size()},
                                      {"outerCount", disc.f_hat.size()},
                                      {"spacing", rat_str(disc.spacing)}};
        }
        if (o.format == "csv")
            out << report::to_csv(diag);
        else
            out << report::envelope("vanhove", std::move(body));
        return diag.pass ? 0 : 1;
    }

    if (app.got_subcommand(c_ow)) {
        auto seq = parse_sequence(o.seq);
        auto f = parse_subadditive(f_spec, seq, scale_radius);
        if (!transfer.empty()) {
            auto fd = cps::parse_fundamental_domain(transfer);
            auto rep = entropy::lattice_transfer_check(f, fd, seq, o.i_max, o.tol);
            out << report::envelope("ow-limit", report::to_json(rep));
            return rep.pass ? 0 : 1;
        }
        auto est = entropy::ow_limit(f, seq, o.i_max);
        return emit_entropy(wrap_estimate(f.tag, std::move(est)), "ow-limit", o.format, out);
    }

    if (app.got_subcommand(c_cc)) {
        auto seq_a = parse_sequence(o.seq);
        auto seq_b = parse_sequence(seq2);
        auto f = parse_subadditive(f_spec, seq_a, scale_radius);
        auto rep = entropy::ow_crosscheck(f, seq_a, seq_b, o.i_max, o.tol);
        out << report::envelope("ow-crosscheck", report::to_json(rep));
        return rep.pass ? 0 : 1;
    }

    if (app.got_subcommand(c_ent)) {
        auto s = parse_subshift(preset);
        auto seq = parse_sequence(o.seq);
        entropy::EntropyReport rep;
        if (counter == "cov") {
            rep = entropy::topological_entropy(s, seq, parse_scales(o.scales), o.i_max, o.budget);
        } else {
            // sep/spa route the same counts through the cylinder metric chain;
            // exponential, so the prefix is capped.
            if (o.i_max > 4) throw CliError{2, "counter " + counter + " wants imax <= 4"};
            rep.label = "entropy:" + s.name + ":" + counter;
            for (int r : parse_scales(o.scales)) {
                std::vector<entropy::OWRow> rows;
                for (int i = 1; i <= o.i_max; ++i) {
                    FiniteSet f = groups::materialize(seq.at(i));
                    auto space = dynamics::cylinder_space(s, f, Scale{r}, o.budget);
                    auto count = counter == "sep" ? dynamics::sep(space, 1)
                                                  : dynamics::spa(space, 1);
                    double value = entropy::log_big(count.value);
                    double m = double(groups::minkowski(f, dynamics::centered_ball(s.dim, r)).size());
                    rows.push_back({i, value, m, value / m});
                }
                rep.per_scale.push_back({r, entropy::make_estimate(std::move(rows))});
            }
            const auto* best = &rep.per_scale.front();
            for (const auto& se : rep.per_scale)
                if (se.estimate.tail > best->estimate.tail) best = &se;
            rep.sup_value = best->estimate.tail;
            rep.band = best->estimate.band;
        }
        rescale(rep, scale_out);
        return emit_entropy(rep, "entropy", o.format, out);
    }

    if (app.got_subcommand(c_rel)) {
        auto c = parse_code(code);
        auto rep = entropy::relative_entropy(c, parse_sequence(o.seq), parse_scales(o.scales),
                                             o.i_max, o.budget);
        rescale(rep, scale_out);
        return emit_entropy(rep, "relative-entropy", o.format, out);
    }

    if (app.got_subcommand(c_res)) {
        entropy::RestrictionSpec spec;
        if (!sublattice.empty())
            spec.moduli = parse_int_list(sublattice);
        else if (!model.empty())
            spec.model_preset = model;
        else
            throw CliError{2, "restrict wants --sublattice or --model"};
        auto rep = entropy::lattice_restricted_entropy(parse_subshift(preset), spec,
                                                       parse_scales(o.scales), o.i_max,
                                                       !no_density, o.budget);
        rescale(rep, scale_out);
        return emit_entropy(rep, "restrict", o.format, out);
    }

    if (app.got_subcommand(c_pow)) {
        auto rep = entropy::power_rule_check(parse_subshift(preset), power_n, o.i_max,
                                            o.tol == 1e-2 ? 1e-3 : o.tol, parse_scales(o.scales));
        out << report::envelope("power-rule", report::to_json(rep));
        return rep.pass ? 0 : 1;
    }

    if (app.got_subcommand(c_chain)) {
        std::pair<SlidingBlockCode, SlidingBlockCode> pq = [&] {
            if (chain == "four-to-two-to-point")
                return std::pair{parse_code("four-to-two"),
                                 parse_code("to-point:full:2")};
            if (chain == "product-projection")
                return std::pair{parse_code("projection:golden-mean:full:2"),
                                 parse_code("to-point:golden-mean")};
            if (chain == "identity-collapse")
                return std::pair{parse_code("identity:golden-mean"),
                                 parse_code("to-point:golden-mean")};
            if (chain == "random") return random_merge_chain(o.seed);
            throw CliError{2, "unknown chain preset '" + chain + "'"};
        }();
        if (o.scales == "0,1,2") o.scales = "0,1";
        if (o.i_max == 20) o.i_max = 8;
        auto rep = entropy::bowen_chain_check(pq.first, pq.second, parse_sequence(o.seq),
                                              parse_scales(o.scales), o.i_max, corrupt);
        out << report::envelope("bowen-chain", report::to_json(rep));
        return rep.pass ? 0 : 1;
    }

    if (app.got_subcommand(c_prod)) {
        auto to_set = [](const std::string& s) {
            std::vector<groups::GroupElement> elems;
            for (long long v : parse_int_list(s)) elems.push_back(groups::make_int_element({v}));
            return FiniteSet::make(GroupDescriptor::int_lattice(1), std::move(elems));
        };
        auto kind = f_kind == "cardinality" ? entropy::ProductFKind::Cardinality
                                            : entropy::ProductFKind::Log2Count;
        auto rep = entropy::product_extension_check(kind, to_set(set_a), to_set(set_b), margin,
                                                    o.budget);
        out << report::envelope("product-extension", report::to_json(rep));
        if (!rep.exhaustive) return 3;
        return rep.pass ? 0 : 1;
    }

    if (app.got_subcommand(c_ber)) {
        auto rep = entropy::bernoulli_entropy(parse_rational_list(probs));
        rep.entropy *= scale_out;
        rep.full_shift *= scale_out;
        out << report::envelope("bernoulli", report::to_json(rep));
        return rep.variational_ok ? 0 : 1;
    }

    throw CliError{2, "no subcommand selected"};
}

}  // namespace

}  // namespace owlet::cli

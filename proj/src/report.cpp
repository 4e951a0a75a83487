#include "owlet/report.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

namespace owlet::report {

namespace {

json trace_json(const std::vector<entropy::OWRow>& rows) {
    json arr = json::array();
    for (const auto& row : rows)
        arr.push_back({{"index", row.index},
                       {"f", row.f_value},
                       {"measure", row.measure},
                       {"ratio", row.ratio}});
    return arr;
}

}  // namespace

json to_json(const entropy::OWEstimate& e) {
    return {{"tail", e.tail},
            {"band", e.band},
            {"tailWindow", e.tail_window},
            {"trace", trace_json(e.trace)}};
}

json to_json(const entropy::EntropyReport& r) {
    json scales = json::array();
    for (const auto& se : r.per_scale) {
        json j = to_json(se.estimate);
        j["radius"] = se.radius;
        scales.push_back(std::move(j));
    }
    return {{"label", r.label},
            {"densityFactor", r.density_factor},
            {"supValue", r.sup_value},
            {"band", r.band},
            {"scales", std::move(scales)}};
}

json to_json(const entropy::CrossCheckReport& r) {
    return {{"first", to_json(r.first)},
            {"second", to_json(r.second)},
            {"delta", r.delta},
            {"tolerance", r.tolerance},
            {"verdict", r.pass ? "pass" : "fail"}};
}

json to_json(const entropy::TransferReport& r) {
    return {{"latticeSide", to_json(r.lattice_side)},
            {"groupSide", to_json(r.group_side)},
            {"covolume", r.covolume},
            {"delta", r.delta},
            {"verdict", r.pass ? "pass" : "fail"}};
}

json to_json(const entropy::ChainReport& r) {
    return {{"first", to_json(r.first)},
            {"second", to_json(r.second)},
            {"composed", to_json(r.composed)},
            {"slackLower", r.slack_lower},
            {"slackUpper", r.slack_upper},
            {"lowerOk", r.lower_ok},
            {"upperOk", r.upper_ok},
            {"verdict", r.pass ? "pass" : "fail"}};
}

json to_json(const entropy::PowerRuleReport& r) {
    return {{"n", r.n},
            {"baseEntropy", r.base_entropy},
            {"restrictedEntropy", r.restricted_entropy},
            {"delta", r.delta},
            {"verdict", r.pass ? "pass" : "fail"}};
}

json to_json(const entropy::ProductExtensionReport& r) {
    return {{"infimum", rat_str(r.infimum)},
            {"expected", rat_str(r.expected)},
            {"unit", r.unit},
            {"rectanglesTried", r.rectangles_tried},
            {"exhaustive", r.exhaustive},
            {"verdict", r.pass ? "pass" : "fail"}};
}

json to_json(const entropy::BernoulliReport& r) {
    json probs = json::array();
    for (const auto& p : r.probabilities) probs.push_back(rat_str(p));
    return {{"probabilities", std::move(probs)},
            {"entropy", r.entropy},
            {"fullShift", r.full_shift},
            {"uniform", r.uniform},
            {"verdict", r.variational_ok ? "pass" : "fail"}};
}

json to_json(const cps::DensityTrace& t) {
    json rows = json::array();
    for (const auto& row : t.rows)
        rows.push_back({{"index", row.index},
                        {"count", row.count.str()},
                        {"measure", rat_str(row.measure)},
                        {"ratio", to_double(row.ratio)}});
    return {{"tail", t.tail}, {"band", t.band}, {"trace", std::move(rows)}};
}

json to_json(const cps::MeyerReport& r) {
    json witness = json::array();
    for (const auto& q : r.difference_witness) witness.push_back(q.str());
    return {{"conclusive", r.conclusive},
            {"status", r.status},
            {"relativelyDense", r.relatively_dense},
            {"denseWitnessRadius", rat_str(r.dense_witness_radius)},
            {"meyerDifference", r.meyer_difference},
            {"differenceWitness", std::move(witness)},
            {"verdict", (r.conclusive && r.relatively_dense && r.meyer_difference)
                            ? "pass"
                            : (r.conclusive ? "fail" : "inconclusive")}};
}

json to_json(const groups::VanHoveDiagnostic& d) {
    json rows = json::array();
    for (const auto& row : d.rows)
        rows.push_back({{"index", row.index},
                        {"boundaryMeasure", rat_str(row.boundary_measure)},
                        {"measure", rat_str(row.measure)},
                        {"ratio", to_double(row.ratio)}});
    return {{"tolerance", d.tolerance},
            {"tailLength", d.tail_length},
            {"verdict", d.pass ? "pass" : "fail"},
            {"trace", std::move(rows)}};
}

std::string envelope(const std::string& command, json body) {
    json out;
    out["schemaVersion"] = kSchemaVersion;
    out["command"] = command;
    for (auto& [key, value] : body.items()) out[key] = std::move(value);
    return out.dump(2) + "\n";
}

std::string to_csv(const entropy::EntropyReport& r) {
    std::ostringstream out;
    out << "scale,index,f,measure,ratio\n";
    for (const auto& se : r.per_scale)
        for (const auto& row : se.estimate.trace)
            out << se.radius << ',' << row.index << ',' << row.f_value << ',' << row.measure
                << ',' << row.ratio << '\n';
    return out.str();
}

std::string to_csv(const cps::DensityTrace& t) {
    std::ostringstream out;
    out << "index,count,measure,ratio\n";
    for (const auto& row : t.rows)
        out << row.index << ',' << row.count.str() << ',' << rat_str(row.measure) << ','
            << to_double(row.ratio) << '\n';
    return out.str();
}

std::string to_csv(const groups::VanHoveDiagnostic& d) {
    std::ostringstream out;
    out << "index,boundary,measure,ratio\n";
    for (const auto& row : d.rows)
        out << row.index << ',' << rat_str(row.boundary_measure) << ',' << rat_str(row.measure)
            << ',' << to_double(row.ratio) << '\n';
    return out.str();
}

namespace {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

/// Minimal fixed-size line chart; everything inline, no external refs.
std::string svg_chart(const std::string& title, const std::vector<Series>& series) {
    const double w = 640, h = 400, ml = 60, mr = 20, mt = 40, mb = 40;
    double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
    for (const auto& s : series)
        for (auto [x, y] : s.points) {
            x_lo = std::min(x_lo, x), x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, y), y_hi = std::max(y_hi, y);
        }
    if (x_hi <= x_lo) x_hi = x_lo + 1;
    if (y_hi <= y_lo) y_hi = y_lo + 1;
    auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * (w - ml - mr); };
    auto py = [&](double y) { return h - mb - (y - y_lo) / (y_hi - y_lo) * (h - mt - mb); };
    static const char* colors[] = {"#1f6fb2", "#c23b22", "#3a8f4e", "#8455b0", "#b08a2e"};

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    out << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"monospace\" "
           "font-size=\"14\">"
        << title << "</text>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\""
        << h - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << ml - 6 << "\" y=\"" << py(y_lo) << "\" text-anchor=\"end\" "
           "font-family=\"monospace\" font-size=\"11\">"
        << y_lo << "</text>\n";
    out << "<text x=\"" << ml - 6 << "\" y=\"" << py(y_hi) + 10 << "\" text-anchor=\"end\" "
           "font-family=\"monospace\" font-size=\"11\">"
        << y_hi << "</text>\n";
    out << "<text x=\"" << px(x_lo) << "\" y=\"" << h - mb + 16
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">" << x_lo
        << "</text>\n";
    out << "<text x=\"" << px(x_hi) << "\" y=\"" << h - mb + 16
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">" << x_hi
        << "</text>\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = colors[i % 5];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (auto [x, y] : series[i].points) out << px(x) << ',' << py(y) << ' ';
        out << "\"/>\n";
        out << "<text x=\"" << w - mr - 4 << "\" y=\"" << mt + 14 * double(i + 1)
            << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\" fill=\"" << color
            << "\">" << series[i].label << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace

std::string to_svg(const entropy::EntropyReport& r) {
    std::vector<Series> series;
    for (const auto& se : r.per_scale) {
        Series s{"r=" + std::to_string(se.radius), {}};
        for (const auto& row : se.estimate.trace)
            s.points.push_back({double(row.index), row.ratio});
        series.push_back(std::move(s));
    }
    return svg_chart(r.label, series);
}

std::string to_svg(const cps::DensityTrace& t) {
    Series s{"density", {}};
    for (const auto& row : t.rows) s.points.push_back({double(row.index), to_double(row.ratio)});
    return svg_chart("density trace", {s});
}

std::string points_csv(const std::vector<Quad5>& points,
                       const std::vector<std::pair<std::string, std::string>>& metadata) {
    std::ostringstream out;
    for (const auto& [key, value] : metadata) out << "# " << key << ": " << value << '\n';
    out << "point\n";
    for (const auto& q : points) out << q.str() << '\n';
    return out.str();
}

}  // namespace owlet::report

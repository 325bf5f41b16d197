#include "opkit/measure.hpp"
#include "opkit/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opkit::measure {

double SmoothFactor::operator()(double x) const {
    if (is_const) return value;
    double acc = 0.0;
    for (size_t i = poly.size(); i-- > 0;) acc = acc * x + poly[i];
    return acc;
}

bool GJMeasure::contains(double x) const {
    const double tol = 1e-12 * std::max(1.0, std::abs(x));
    for (const auto& iv : intervals)
        if (x >= iv.lo - tol && x <= iv.hi + tol) return true;
    return false;
}

void validate(const GJMeasure& mu) {
    if (mu.intervals.empty())
        throw schema_error("intervals: at least one interval required");
    for (const auto& iv : mu.intervals) {
        if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi))
            throw schema_error("intervals: endpoints must be finite");
        if (!(iv.lo < iv.hi))
            throw schema_error("intervals: lo must be less than hi");
    }
    for (size_t i = 0; i + 1 < mu.intervals.size(); ++i)
        if (mu.intervals[i].hi > mu.intervals[i + 1].lo)
            throw schema_error("intervals overlap");
    for (const auto& s : mu.singularities) {
        if (!(s.exponent > -1.0))
            throw schema_error("singularities: exponent must exceed -1");
        if (!mu.contains(s.location))
            throw schema_error("singularities: location must lie in the support");
    }
    for (size_t i = 0; i < mu.singularities.size(); ++i)
        for (size_t j = i + 1; j < mu.singularities.size(); ++j)
            if (mu.singularities[i].location == mu.singularities[j].location)
                throw schema_error("singularities: locations must be distinct");
    if (mu.smooth.is_const) {
        if (!(mu.smooth.value > 0.0))
            throw schema_error("smooth: constant must be positive");
    } else {
        if (mu.smooth.poly.empty())
            throw schema_error("smooth: polynomial needs coefficients");
        // Certify positivity on the support by dense sampling.
        for (const auto& iv : mu.intervals) {
            for (int k = 0; k <= 2000; ++k) {
                double x = iv.lo + (iv.hi - iv.lo) * k / 2000.0;
                if (!(mu.smooth(x) > 0.0))
                    throw schema_error("smooth: polynomial not positive on support");
            }
        }
    }
}

namespace {

void tag_edges(GJMeasure& mu) {
    for (auto& s : mu.singularities) {
        s.at_edge = false;
        for (const auto& iv : mu.intervals)
            if (s.location == iv.lo || s.location == iv.hi) s.at_edge = true;
    }
}

GJMeasure make_model(double alpha, double loc) {
    if (!(alpha > -1.0)) throw domain_error("model measure requires alpha > -1");
    GJMeasure mu;
    mu.intervals = {{-1.0, 1.0}};
    if (alpha != 0.0) mu.singularities = {{loc, alpha}};
    tag_edges(mu);
    validate(mu);
    return mu;
}

} // namespace

GJMeasure make_model_bulk(double alpha) { return make_model(alpha, 0.0); }
GJMeasure make_model_edge(double alpha) { return make_model(alpha, 1.0); }

GJMeasure make_lebesgue(const std::vector<Interval>& intervals) {
    GJMeasure mu;
    mu.intervals = intervals;
    validate(mu);
    return mu;
}

double density_at(const GJMeasure& mu, double x) {
    if (!mu.contains(x)) throw domain_error("density_at: point outside support");
    double v = mu.smooth(x);
    for (const auto& s : mu.singularities) {
        const double d = std::abs(x - s.location);
        if (d == 0.0) {
            if (s.exponent < 0.0) return std::numeric_limits<double>::infinity();
            if (s.exponent > 0.0) return 0.0;
        } else {
            v *= std::pow(d, s.exponent);
        }
    }
    return v;
}

GJMeasure parse_measure(const std::string& document) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(document);
    } catch (const nlohmann::json::parse_error& e) {
        throw schema_error(std::string("invalid JSON: ") + e.what());
    }
    GJMeasure mu;
    if (!j.contains("intervals") || !j["intervals"].is_array())
        throw schema_error("intervals: missing or not an array");
    for (const auto& iv : j["intervals"]) {
        if (!iv.is_array() || iv.size() != 2)
            throw schema_error("intervals: each entry must be [lo, hi]");
        mu.intervals.push_back({iv[0].get<double>(), iv[1].get<double>()});
    }
    if (j.contains("singularities")) {
        for (const auto& s : j["singularities"]) {
            if (!s.contains("x0") || !s.contains("alpha"))
                throw schema_error("singularities: entries need x0 and alpha");
            mu.singularities.push_back(
                {s["x0"].get<double>(), s["alpha"].get<double>()});
        }
    }
    if (j.contains("smooth")) {
        const auto& s = j["smooth"];
        if (s.contains("const")) {
            mu.smooth.is_const = true;
            mu.smooth.value = s["const"].get<double>();
        } else if (s.contains("poly")) {
            mu.smooth.is_const = false;
            mu.smooth.poly = s["poly"].get<std::vector<double>>();
        } else {
            throw schema_error("smooth: must be {\"const\": c} or {\"poly\": [...]}");
        }
    }
    std::sort(mu.intervals.begin(), mu.intervals.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    tag_edges(mu);
    validate(mu);
    return mu;
}

std::string serialize_measure(const GJMeasure& mu) {
    nlohmann::json j;
    j["intervals"] = nlohmann::json::array();
    for (const auto& iv : mu.intervals)
        j["intervals"].push_back({iv.lo, iv.hi});
    if (!mu.singularities.empty()) {
        j["singularities"] = nlohmann::json::array();
        for (const auto& s : mu.singularities)
            j["singularities"].push_back({{"x0", s.location}, {"alpha", s.exponent}});
    }
    if (mu.smooth.is_const)
        j["smooth"] = {{"const", mu.smooth.value}};
    else
        j["smooth"] = {{"poly", mu.smooth.poly}};
    return j.dump(2);
}

} // namespace opkit::measure

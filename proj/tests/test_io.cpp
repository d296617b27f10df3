// Serialization: deterministic CSV/JSON output and lossless round-trips.

#include <numbers>

#include "doctest.h"

#include "cmc/io.hpp"

using namespace cmc;

namespace {
ProfileCurve sample_curve() {
    const GeometryParams p(2, 2, 0.0);
    IntegrationControls c;
    c.max_arclength = 25.0;
    return integrate(YAxisStart{3.0}, p, c);
}
}  // namespace

TEST_CASE("format_double round-trips doubles exactly") {
    for (double v : {0.0, 1.0, -1.5, std::numbers::pi, 1e-300, 123456.789,
                     0.1 + 0.2, 2.0 / 3.0}) {
        const std::string s = io::format_double(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("curve CSV has the declared shape") {
    const ProfileCurve curve = sample_curve();
    const std::string csv = io::curve_csv(curve);
    CHECK(csv.rfind("s,x,y,sigma\n", 0) == 0);
    std::size_t lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == curve.samples.size() + 1);
    CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("serialization is deterministic") {
    const ProfileCurve a = sample_curve();
    const ProfileCurve b = sample_curve();
    CHECK(io::curve_csv(a) == io::curve_csv(b));
    CHECK(io::curve_events_json(a).dump() == io::curve_events_json(b).dump());
}

TEST_CASE("curve round-trips through CSV + sidecar") {
    const ProfileCurve curve = sample_curve();
    const std::string csv = io::curve_csv(curve);
    const nlohmann::json sidecar = io::curve_events_json(curve);
    const ProfileCurve back = io::curve_from_strings(csv, sidecar);

    REQUIRE(back.samples.size() == curve.samples.size());
    for (std::size_t i = 0; i < curve.samples.size(); ++i) {
        CHECK(back.samples[i].s == curve.samples[i].s);
        CHECK(back.samples[i].x == curve.samples[i].x);
        CHECK(back.samples[i].y == curve.samples[i].y);
        CHECK(back.samples[i].sigma == curve.samples[i].sigma);
    }
    CHECK(back.termination == curve.termination);
    CHECK(back.params.n == curve.params.n);
    CHECK(back.params.m == curve.params.m);
    CHECK(back.params.h == curve.params.h);
    REQUIRE(back.events.size() == curve.events.size());
    for (std::size_t i = 0; i < curve.events.size(); ++i) {
        CHECK(back.events[i].kind == curve.events[i].kind);
        CHECK(back.events[i].s == curve.events[i].s);
        CHECK(back.events[i].orthogonal == curve.events[i].orthogonal);
    }
    // rates are recomputed: interior rows from the field, the axis row from
    // the regularized start
    REQUIRE(back.rates.size() == curve.rates.size());
    for (std::size_t i = 0; i < curve.rates.size(); ++i)
        CHECK(back.rates[i].dsigma ==
              doctest::Approx(curve.rates[i].dsigma).epsilon(1e-12));
}

TEST_CASE("round-tripped curve classifies identically") {
    const ProfileCurve curve = sample_curve();
    const ProfileCurve back =
        io::curve_from_strings(io::curve_csv(curve), io::curve_events_json(curve));
    const ClassificationResult r1 = classify(curve, curve.params);
    const ClassificationResult r2 = classify(back, back.params);
    CHECK(r1.topology == r2.topology);
    CHECK(r1.case_tag == r2.case_tag);
    CHECK(r1.embedded == r2.embedded);
    CHECK(io::classification_json(r1).dump() == io::classification_json(r2).dump());
}

TEST_CASE("report serializers expose the expected keys") {
    const ProfileCurve curve = sample_curve();
    const nlohmann::json cj = io::classification_json(classify(curve, curve.params));
    for (const char* key : {"topology", "embedded", "case_tag", "extrema", "contacts",
                            "oscillation_certified", "evidence_horizon"})
        CHECK(cj.contains(key));

    const nlohmann::json kj = io::criteria_json(
        cylinder_slice_criteria(GeometryParams(2, 2, 2.0)));
    for (const char* key : {"slice", "cylinder", "threshold_h", "cylinder_radius",
                            "threshold_radius", "cylinder_unstable_by_radius"})
        CHECK(kj.contains(key));

    const nlohmann::json ej = io::curve_events_json(curve);
    for (const char* key : {"params", "termination", "events", "contact_orthogonal"})
        CHECK(ej.contains(key));
}

#ifndef CMC_IO_HPP
#define CMC_IO_HPP

#include <string>

#include "json.hpp"

#include "cmc/classify.hpp"
#include "cmc/integrate.hpp"
#include "cmc/shoot.hpp"
#include "cmc/stability.hpp"

// Deterministic, locale-independent serialization: CSV rows use shortest
// round-trip decimals; JSON keys come out sorted (nlohmann::json's default
// object ordering).
namespace cmc::io {

std::string format_double(double v);

// RFC-4180 CSV with header s,x,y,sigma and \n line endings.
std::string curve_csv(const ProfileCurve& curve);

// Sidecar JSON: params, termination, and events keyed by the index of the
// nearest sample at or before the event.
nlohmann::json curve_events_json(const ProfileCurve& curve);

// Rebuilds a curve from the CSV and its sidecar; rates are recomputed from
// the vector field (the regularized rate at an axis start).
ProfileCurve curve_from_strings(const std::string& csv, const nlohmann::json& sidecar);

nlohmann::json classification_json(const ClassificationResult& r);
nlohmann::json index_report_json(const IndexFormReport& r);
nlohmann::json criteria_json(const CriteriaReport& r);

}  // namespace cmc::io

#endif

#ifndef CMC_CLASSIFY_HPP
#define CMC_CLASSIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "cmc/integrate.hpp"

namespace cmc {

enum class Topology {
    SliceProduct,      // R^n x S^{m-1}
    TubeProduct,       // S^{n-1} x R^m
    ImmersedCylinder,  // S^{n-1} x S^{m-1} x R, self-intersecting
    HyperSphere,       // S^{n+m-1}
    ConstantSlice,
    ConstantCylinder,
    Undetermined,
};

std::string to_string(Topology t);

struct Extremum {
    double s;
    double x;
    double y;
    EventKind kind;  // YMax or YMin
};

struct Intersection {
    double s1;
    double s2;
    double x;
    double y;
    bool degenerate = false;  // near-tangential within tolerance
};

struct ClassificationResult {
    Topology topology = Topology::Undetermined;
    bool embedded = false;
    int case_tag = 0;  // 1, 2, 3 for the minimal-curve trichotomy; 0 otherwise
    std::vector<Extremum> extrema;
    std::optional<Intersection> intersection;
    std::vector<Event> contacts;
    bool oscillation_certified = false;  // >= 3 alternating extrema, monotone envelope
    double evidence_horizon = 0.0;       // arclength actually verified
    std::string note;
};

// The YMax/YMin events in order.
std::vector<Extremum> extract_extrema(const ProfileCurve& curve);

// Earliest transversal crossing of the sampled polyline, refined by local
// re-integration to tol. Near-tangential near-misses within tol come back
// with the degenerate flag set.
std::optional<Intersection> detect_self_intersection(const ProfileCurve& curve,
                                                     double tol = 1e-9);

ClassificationResult classify(const ProfileCurve& curve, const GeometryParams& params);

}  // namespace cmc

#endif

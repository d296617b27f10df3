#include "cmc/classify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace cmc {

namespace {

struct Pt {
    double x, y;
};

double cross(Pt a, Pt b) { return a.x * b.y - a.y * b.x; }
Pt sub(Pt a, Pt b) { return {a.x - b.x, a.y - b.y}; }

struct SegHit {
    bool hit = false;
    bool degenerate = false;
    double t = 0.0;  // parameter along the first segment
    double u = 0.0;  // parameter along the second segment
    Pt point{};
};

SegHit segment_intersection(Pt a0, Pt a1, Pt b0, Pt b1, double tol) {
    SegHit out;
    const Pt da = sub(a1, a0);
    const Pt db = sub(b1, b0);
    const double denom = cross(da, db);
    const double la = std::hypot(da.x, da.y);
    const double lb = std::hypot(db.x, db.y);
    if (std::abs(denom) <= 1e-12 * la * lb) {
        // near-parallel: flag as degenerate when the segments nearly touch
        const double d0 = std::abs(cross(da, sub(b0, a0))) / std::max(la, 1e-300);
        const double d1 = std::abs(cross(da, sub(b1, a0))) / std::max(la, 1e-300);
        if (std::min(d0, d1) < tol) {
            // require overlap in the direction of the segment
            const double p0 = (da.x * (b0.x - a0.x) + da.y * (b0.y - a0.y)) / (la * la);
            const double p1 = (da.x * (b1.x - a0.x) + da.y * (b1.y - a0.y)) / (la * la);
            if (std::max(std::min(p0, p1), 0.0) <= std::min(std::max(p0, p1), 1.0))
                out.degenerate = true;
        }
        return out;
    }
    const double t = cross(sub(b0, a0), db) / denom;
    const double u = cross(sub(b0, a0), da) / denom;
    if (t < 0.0 || t > 1.0 || u < 0.0 || u > 1.0) return out;
    out.hit = true;
    out.t = t;
    out.u = u;
    out.point = {a0.x + t * da.x, a0.y + t * da.y};
    return out;
}

std::int64_t cell_key(int ix, int iy) {
    return (static_cast<std::int64_t>(ix) << 32) ^ (static_cast<std::uint32_t>(iy));
}

}  // namespace

std::string to_string(Topology t) {
    switch (t) {
        case Topology::SliceProduct: return "slice_product";
        case Topology::TubeProduct: return "tube_product";
        case Topology::ImmersedCylinder: return "immersed_cylinder";
        case Topology::HyperSphere: return "hypersphere";
        case Topology::ConstantSlice: return "constant_slice";
        case Topology::ConstantCylinder: return "constant_cylinder";
        case Topology::Undetermined: return "undetermined";
    }
    return "?";
}

std::vector<Extremum> extract_extrema(const ProfileCurve& curve) {
    std::vector<Extremum> out;
    for (const Event& e : curve.events) {
        if (e.kind == EventKind::YMax || e.kind == EventKind::YMin)
            out.push_back({e.s, e.state.x, e.state.y, e.kind});
    }
    return out;
}

std::optional<Intersection> detect_self_intersection(const ProfileCurve& curve,
                                                     double tol) {
    const auto& ss = curve.samples;
    if (ss.size() < 4) return std::nullopt;
    const std::size_t nseg = ss.size() - 1;

    // broad phase: uniform grid keyed by segment bounding boxes
    double max_len = 0.0;
    for (std::size_t i = 0; i < nseg; ++i)
        max_len = std::max(max_len, std::hypot(ss[i + 1].x - ss[i].x,
                                               ss[i + 1].y - ss[i].y));
    const double cell = std::max(max_len, 1e-12);
    std::unordered_map<std::int64_t, std::vector<std::uint32_t>> grid;
    grid.reserve(nseg * 2);
    auto cells_of = [&](std::size_t i, auto&& fn) {
        const int x0 = static_cast<int>(std::floor(std::min(ss[i].x, ss[i + 1].x) / cell));
        const int x1 = static_cast<int>(std::floor(std::max(ss[i].x, ss[i + 1].x) / cell));
        const int y0 = static_cast<int>(std::floor(std::min(ss[i].y, ss[i + 1].y) / cell));
        const int y1 = static_cast<int>(std::floor(std::max(ss[i].y, ss[i + 1].y) / cell));
        for (int ix = x0; ix <= x1; ++ix)
            for (int iy = y0; iy <= y1; ++iy) fn(cell_key(ix, iy));
    };
    for (std::size_t i = 0; i < nseg; ++i)
        cells_of(i, [&](std::int64_t k) { grid[k].push_back(static_cast<std::uint32_t>(i)); });

    // earliest crossing = the first arclength s2 at which the tracer revisits
    // already-traced curve; scan the second leg in order and stop at the
    // first segment that produces a hit (later segments only increase s2)
    bool best_found = false, best_degenerate = false;
    std::size_t bi = 0, bj = 0;
    SegHit best_hit;
    for (std::size_t j = 2; j < nseg; ++j) {
        std::vector<std::uint32_t> cand;
        cells_of(j, [&](std::int64_t k) {
            const auto it = grid.find(k);
            if (it != grid.end())
                cand.insert(cand.end(), it->second.begin(), it->second.end());
        });
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        for (std::uint32_t i : cand) {
            if (i + 1 >= j) continue;
            const SegHit hit = segment_intersection(
                {ss[i].x, ss[i].y}, {ss[i + 1].x, ss[i + 1].y},
                {ss[j].x, ss[j].y}, {ss[j + 1].x, ss[j + 1].y}, tol);
            if (!hit.hit && !hit.degenerate) continue;
            if (!best_found || hit.u < best_hit.u) {
                best_found = true;
                best_degenerate = hit.degenerate;
                bi = i;
                bj = j;
                best_hit = hit;
            }
        }
        if (best_found) break;
    }
    if (!best_found) return std::nullopt;

    Intersection out;
    out.degenerate = best_degenerate;
    out.s1 = ss[bi].s + best_hit.t * (ss[bi + 1].s - ss[bi].s);
    out.s2 = ss[bj].s + best_hit.u * (ss[bj + 1].s - ss[bj].s);
    out.x = best_hit.point.x;
    out.y = best_hit.point.y;
    if (best_degenerate) return out;

    // narrow phase refinement: re-integrate the two parent intervals on
    // finer grids until both bracketing subsegments are shorter than tol
    double a0 = ss[bi].s, a1 = ss[bi + 1].s;
    double b0 = ss[bj].s, b1 = ss[bj + 1].s;
    constexpr int kSub = 8;
    for (int iter = 0; iter < 60 && (a1 - a0 > tol || b1 - b0 > tol); ++iter) {
        std::array<CurveState, kSub + 1> pa, pb;
        for (int k = 0; k <= kSub; ++k) {
            pa[k] = state_at(curve, a0 + (a1 - a0) * k / kSub);
            pb[k] = state_at(curve, b0 + (b1 - b0) * k / kSub);
        }
        bool found = false;
        for (int p = 0; p < kSub && !found; ++p) {
            for (int q = 0; q < kSub && !found; ++q) {
                const SegHit hit = segment_intersection(
                    {pa[p].x, pa[p].y}, {pa[p + 1].x, pa[p + 1].y},
                    {pb[q].x, pb[q].y}, {pb[q + 1].x, pb[q + 1].y}, tol);
                if (hit.hit) {
                    const double na0 = pa[p].s, na1 = pa[p + 1].s;
                    const double nb0 = pb[q].s, nb1 = pb[q + 1].s;
                    a0 = na0; a1 = na1; b0 = nb0; b1 = nb1;
                    out.s1 = a0 + hit.t * (a1 - a0);
                    out.s2 = b0 + hit.u * (b1 - b0);
                    out.x = hit.point.x;
                    out.y = hit.point.y;
                    found = true;
                }
            }
        }
        if (!found) {
            out.degenerate = true;  // tangential near-miss at this resolution
            break;
        }
    }
    return out;
}

ClassificationResult classify(const ProfileCurve& curve, const GeometryParams& params) {
    ClassificationResult r;
    if (curve.samples.size() < 2) {
        r.note = "curve too short";
        return r;
    }
    r.extrema = extract_extrema(curve);
    for (const Event& e : curve.events)
        if (is_contact(e.kind)) r.contacts.push_back(e);
    r.evidence_horizon = curve.arclength();

    // constant solutions
    double dev_y = 0.0, dev_x = 0.0, dev_sigma = 0.0;
    for (const CurveState& st : curve.samples) {
        dev_y = std::max(dev_y, std::abs(st.y - curve.front().y));
        dev_x = std::max(dev_x, std::abs(st.x - curve.front().x));
        dev_sigma = std::max(dev_sigma, std::abs(st.sigma - curve.front().sigma));
    }
    if (dev_sigma < 1e-9) {
        if (dev_y < 1e-9 && std::abs(std::sin(curve.front().sigma)) < 1e-12) {
            r.topology = Topology::ConstantSlice;
            r.embedded = true;
            return r;
        }
        if (dev_x < 1e-9 && std::abs(std::cos(curve.front().sigma)) < 1e-12) {
            r.topology = Topology::ConstantCylinder;
            r.embedded = true;
            return r;
        }
    }

    r.intersection = detect_self_intersection(curve);
    if (r.intersection && r.intersection->degenerate) {
        r.note = "near-tangential self-intersection within tolerance";
        return r;  // Undetermined, never guesses
    }
    const bool selfx = r.intersection.has_value();

    // oscillation certificate: >= 3 alternating extrema with monotone envelope
    if (r.extrema.size() >= 3) {
        bool ok = true;
        double last_max = -1.0, last_min = -1.0;
        for (std::size_t i = 0; i + 1 < r.extrema.size(); ++i)
            if (r.extrema[i].kind == r.extrema[i + 1].kind) ok = false;
        for (const Extremum& e : r.extrema) {
            if (e.kind == EventKind::YMax) {
                if (last_max >= 0.0 && e.y >= last_max) ok = false;
                last_max = e.y;
            } else {
                if (last_min >= 0.0 && e.y <= last_min) ok = false;
                last_min = e.y;
            }
        }
        r.oscillation_certified = ok;
    }

    const Event* start_contact = nullptr;
    const Event* end_contact = nullptr;
    if (!r.contacts.empty() && r.contacts.front().s == curve.front().s)
        start_contact = &r.contacts.front();
    if (curve.termination == Termination::AxisContact)
        end_contact = &curve.events.back();

    if (end_contact && !end_contact->orthogonal) {
        r.note = "non-orthogonal axis contact: singular hypersurface";
        return r;
    }

    if (start_contact && end_contact && !selfx) {
        const bool start_is_y_axis = start_contact->kind == EventKind::YAxisContact;
        const bool end_is_y_axis = end_contact->kind == EventKind::YAxisContact;
        if (start_is_y_axis != end_is_y_axis) {
            r.topology = Topology::HyperSphere;
            r.embedded = true;
            return r;
        }
        r.note = "orthogonal contacts on the same boundary family";
        return r;
    }

    if (selfx) {
        r.topology = Topology::ImmersedCylinder;
        r.case_tag = 2;
        r.embedded = false;
        return r;
    }

    if (r.oscillation_certified && start_contact) {
        if (start_contact->kind == EventKind::YAxisContact) {
            r.topology = Topology::SliceProduct;
            r.case_tag = 1;
        } else {
            r.topology = Topology::TubeProduct;
            r.case_tag = 3;
        }
        r.embedded = true;
        return r;
    }

    r.note = "insufficient evidence within the integration horizon";
    (void)params;
    return r;
}

}  // namespace cmc

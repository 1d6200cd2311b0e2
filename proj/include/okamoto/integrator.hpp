#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "okamoto/atlas.hpp"

namespace okamoto {

struct AtlasState {
    cplx z{};
    ChartPoint point;
};

struct Segment {
    cplx z0{};
    cplx z1{};
};

// z = center + radius * exp(i arg), arg running from arg0 to arg1.
struct Arc {
    cplx center{};
    double radius = 1;
    double arg0 = 0;
    double arg1 = 0;
};

using PathPiece = std::variant<Segment, Arc>;

struct PathSpec {
    std::vector<PathPiece> pieces;

    static PathSpec segment(cplx z0, cplx z1) { return {{Segment{z0, z1}}}; }
    static PathSpec arc(cplx center, double radius, double arg0, double arg1) {
        return {{Arc{center, radius, arg0, arg1}}};
    }
    PathSpec& then(const PathPiece& p) {
        pieces.push_back(p);
        return *this;
    }
};

cplx piece_start(const PathPiece& p);
cplx piece_end(const PathPiece& p);
double piece_length(const PathPiece& p);

struct StepControl {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double h_init = 1e-2;
    double h_min = 1e-14;
    long max_steps = 2'000'000;
};

struct IntegrateOptions {
    // Integrate the z -> infinity limit field instead of the full field.
    bool autonomous = false;
    double d_min = 1e-8;
    bool detect_poles = true;
    bool switch_charts = true;
    // Radial detours tried when an arc runs into the infinity set.
    int bulge_retries = 0;
    double bulge_factor = 1.05;
};

struct PoleEvent {
    cplx zeta{};
    cplx a{};
    std::size_t step_index = 0;
    int newton_iterations = 0;
};

struct ChartSwitch {
    std::size_t step_index = 0;
    ChartId from = ChartId::B;
    ChartId to = ChartId::B;
};

struct Trajectory {
    std::vector<double> s;  // arc length along the path
    std::vector<AtlasState> states;
    std::vector<EnergyValue> energies;
    std::vector<PoleEvent> events;
    std::vector<ChartSwitch> chart_switches;
    long rejected_steps = 0;
    int bulges = 0;
};

// Thrown by integrate_path; carries everything integrated before the failure.
class IntegrationError : public Error {
public:
    IntegrationError(ErrorCode code, const std::string& what, Trajectory partial)
        : Error(code, what), partial_(std::move(partial)) {}
    const Trajectory& partial() const { return partial_; }

private:
    Trajectory partial_;
};

struct StepResult {
    AtlasState state;
    double error_estimate = 0;
};

// One Dormand-Prince 5(4) step along the straight increment dz in the current
// chart. error_estimate is the scaled embedded difference; accept iff <= 1.
StepResult step(const AtlasState& s, cplx dz, const StepControl& ctl, bool autonomous = false);

Trajectory integrate_path(const AtlasState& init, const PathSpec& path, const StepControl& ctl = {},
                          const IntegrateOptions& opt = {});

// Re-expresses s in the chart with the smallest max(|c1|, |c2|) (plus 1e3 when
// the field is not evaluable there). Switches only below half the current score.
AtlasState switch_chart(const AtlasState& s);

// Newton refinement of the pole ζ (u912(ζ) = 0) starting from the C91 state of
// the segment with the smaller |u912|, integrating off-path in z.
PoleEvent detect_pole(const std::pair<AtlasState, AtlasState>& segment, const StepControl& ctl = {});

// Integrates in the current chart, without switching, along a straight line.
AtlasState integrate_straight(const AtlasState& s, cplx z_end, const StepControl& ctl, bool autonomous = false);

std::pair<cplx, cplx> state_to_base(const AtlasState& s);

std::string trajectory_csv(const Trajectory& t);
std::string pole_events_json(const std::vector<PoleEvent>& events);

}  // namespace okamoto

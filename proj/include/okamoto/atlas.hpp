#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "okamoto/common.hpp"

namespace okamoto {

// B is the affine (u1, u2) chart; Cij carries coordinates (u_ij1, u_ij2).
enum class ChartId : int {
    B, C02, C03, C11, C12, C21, C22, C31, C32, C41, C42,
    C51, C52, C61, C62, C71, C72, C81, C82, C91, C92
};

constexpr int chart_count = 21;

const std::array<ChartId, chart_count>& all_charts();
const char* chart_name(ChartId c);
ChartId chart_from_name(std::string_view name);

// Blow-up index i of chart Cij (0 for B).
int blowup_level(ChartId c);

struct ChartPoint {
    ChartId chart = ChartId::B;
    cplx c1{};
    cplx c2{};
};

struct Tangent {
    cplx d1{};
    cplx d2{};
};

struct EnergyValue {
    cplx E{};
    cplx q{};
};

// Z = (5z)^-1; Z = 0 gives the autonomous limit system and its charts.
inline cplx boutroux_Z(cplx z) { return 1.0 / (5.0 * z); }

// Printed inverse maps.
std::pair<cplx, cplx> chart_to_base(const ChartPoint& p, cplx z);
// Printed forward maps.
ChartPoint base_to_chart(ChartId chart, cplx u1, cplx u2, cplx z);

Tangent vector_field(const ChartPoint& p, cplx z);
// z -> infinity limit field; C91/C92 subtract the printed difference, the other
// charts drop every (5z)^-1 term.
Tangent autonomous_vector_field(const ChartPoint& p, cplx z);
// vector_field - autonomous_vector_field as printed for C91/C92; zero elsewhere.
Tangent u0u_difference(const ChartPoint& p, cplx z);

cplx jacobian_w(const ChartPoint& p, cplx z);
cplx energy_times_w(const ChartPoint& p, cplx z);
cplx energy_dot_times_w(const ChartPoint& p, cplx z);
EnergyValue energy(const ChartPoint& p, cplx z);
cplx energy_dot(const ChartPoint& p, cplx z);

struct DistanceIndicator {
    cplx d{};
    bool near_infinity_set = false;
    bool near_L8 = false;
};

struct DistanceOptions {
    double q0 = 10.0;
    double w92_threshold = 1e-2;
};

DistanceIndicator distance_to_infinity(const ChartPoint& p, cplx z, const DistanceOptions& opt = {});

// b0 ... b8 in their defining charts.
std::vector<ChartPoint> base_points(cplx z);
ChartPoint base_point_b8_ell();

// Blow-up tree: every chart except B, C02, C03 has a parent chart reached by a
// polynomial substitution.
ChartId parent_chart(ChartId c);
ChartPoint to_parent(const ChartPoint& p, cplx z);
ChartPoint from_parent(ChartId child, const ChartPoint& parent, cplx z);
// Re-expresses p in the target chart along the blow-up tree (down to the
// common ancestor, then up).
ChartPoint convert(const ChartPoint& p, ChartId target, cplx z);

// Same operations with Z passed explicitly; Z = 0 is the autonomous system.
namespace detail {
std::pair<cplx, cplx> to_base_Z(const ChartPoint& p, cplx Z);
ChartPoint from_base_Z(ChartId chart, cplx u1, cplx u2, cplx Z);
Tangent field_Z(const ChartPoint& p, cplx Z);
Tangent diff_Z(const ChartPoint& p, cplx Z);
cplx w_Z(const ChartPoint& p, cplx Z);
cplx Ew_Z(const ChartPoint& p, cplx Z);
cplx Edw_Z(const ChartPoint& p, cplx Z);
cplx energy_Z(const ChartPoint& p, cplx Z);
ChartPoint convert_Z(const ChartPoint& p, ChartId target, cplx Z);
ChartPoint to_parent_Z(const ChartPoint& p, cplx Z);
ChartPoint from_parent_Z(ChartId child, const ChartPoint& parent, cplx Z);
}  // namespace detail

struct ChartManifestEntry {
    ChartId chart;
    std::string forward;
    std::string inverse;
    std::string parent_substitution;
    std::vector<std::string> excluded_loci;
};

struct ChartVerifyOptions {
    int samples = 100;
    std::uint64_t seed = 1;
    double tol_round_trip = 1e-12;
    double tol_pushforward = 1e-6;
    double tol_jacobian = 1e-6;
    double tol_energy = 1e-10;
    double tol_difference = 1e-10;
    // Fault injection for the verifier itself: scales this chart's field.
    std::optional<ChartId> tamper;
};

// Worst residual per check over the samples of one chart. Checks that do not
// apply to a chart stay at 0.
struct ChartVerifyRow {
    ChartId chart = ChartId::B;
    double round_trip = 0;
    double pushforward = 0;
    double jacobian = 0;
    double energy = 0;
    double difference = 0;
    bool pass = true;
};

struct ChartVerifyReport {
    std::vector<ChartVerifyRow> rows;
    bool pass = true;
    std::string to_json() const;
};

// Samples each chart in its working region (|c1|, |c2| in [0.1, 1]) and checks
// the printed maps, fields, Jacobians and energies against the parent chart.
ChartVerifyReport verify_charts(const ChartVerifyOptions& opt = {});

std::vector<ChartManifestEntry> chart_manifest();
std::string chart_manifest_json();

}  // namespace okamoto

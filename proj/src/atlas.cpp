#include "okamoto/atlas.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "json.hpp"

#include "c9_formulas.hpp"

namespace okamoto {

namespace {

using c9::pw;

struct ChartInfo {
    ChartId id;
    const char* name;
    int level;
    int sub;  // j of Cij; 0 for B
    ChartId parent;
};

constexpr std::array<ChartInfo, chart_count> kCharts{{
    {ChartId::B, "B", 0, 0, ChartId::B},
    {ChartId::C02, "C02", 0, 2, ChartId::B},
    {ChartId::C03, "C03", 0, 3, ChartId::B},
    {ChartId::C11, "C11", 1, 1, ChartId::C03},
    {ChartId::C12, "C12", 1, 2, ChartId::C03},
    {ChartId::C21, "C21", 2, 1, ChartId::C11},
    {ChartId::C22, "C22", 2, 2, ChartId::C11},
    {ChartId::C31, "C31", 3, 1, ChartId::C21},
    {ChartId::C32, "C32", 3, 2, ChartId::C21},
    {ChartId::C41, "C41", 4, 1, ChartId::C31},
    {ChartId::C42, "C42", 4, 2, ChartId::C31},
    {ChartId::C51, "C51", 5, 1, ChartId::C41},
    {ChartId::C52, "C52", 5, 2, ChartId::C41},
    {ChartId::C61, "C61", 6, 1, ChartId::C51},
    {ChartId::C62, "C62", 6, 2, ChartId::C51},
    {ChartId::C71, "C71", 7, 1, ChartId::C61},
    {ChartId::C72, "C72", 7, 2, ChartId::C61},
    {ChartId::C81, "C81", 8, 1, ChartId::C71},
    {ChartId::C82, "C82", 8, 2, ChartId::C71},
    {ChartId::C91, "C91", 9, 1, ChartId::C81},
    {ChartId::C92, "C92", 9, 2, ChartId::C81},
}};

const ChartInfo& info(ChartId c) {
    const int i = static_cast<int>(c);
    if (i < 0 || i >= chart_count) throw Error(ErrorCode::InvalidChart, "chart id out of range");
    return kCharts[static_cast<std::size_t>(i)];
}

constexpr double kGuard = 1e-14;

cplx dv(cplx num, cplx den, ErrorCode code) {
    if (!finite(num) || !finite(den) || !(std::abs(den) > kGuard * std::max(1.0, std::abs(num))))
        throw Error(code, "denominator vanishes");
    return num / den;
}

// First coordinate of the base point blown up to create the charts of level i.
cplx blowup_offset(int level, cplx Z) {
    if (level == 4) return 4.0;
    if (level == 8) return 32.0;
    if (level == 9) return -256.0 * Z;
    return 0.0;
}

}  // namespace

const std::array<ChartId, chart_count>& all_charts() {
    static const std::array<ChartId, chart_count> ids = [] {
        std::array<ChartId, chart_count> a{};
        for (int i = 0; i < chart_count; ++i) a[static_cast<std::size_t>(i)] = kCharts[static_cast<std::size_t>(i)].id;
        return a;
    }();
    return ids;
}

const char* chart_name(ChartId c) { return info(c).name; }

ChartId chart_from_name(std::string_view name) {
    for (const auto& ci : kCharts)
        if (name == ci.name) return ci.id;
    throw Error(ErrorCode::InvalidChart, "unknown chart '" + std::string(name) + "'");
}

int blowup_level(ChartId c) { return info(c).level; }

namespace detail {

ChartPoint from_base_Z(ChartId chart, cplx u1, cplx u2, cplx Z) {
    if (chart == ChartId::B) return {chart, u1, u2};
    const cplx K = -4.0 * pw(u1, 3) + pw(u2, 2);
    const cplx P8 = 32.0 * pw(u1, 7) + 4.0 * pw(u1, 3) * pw(u2, 4) - pw(u2, 6);
    const cplx P9 = -32.0 * pw(u1, 7) * u2 - 4.0 * pw(u1, 3) * pw(u2, 5) + pw(u2, 7) + 256.0 * Z * pw(u1, 8);
    auto make = [chart](std::pair<cplx, cplx> c) { return ChartPoint{chart, c.first, c.second}; };
    switch (chart) {
    case ChartId::C02: {
        return make({dv(1.0, u1, ErrorCode::OutsideChartDomain), dv(u2, u1,
            ErrorCode::OutsideChartDomain)});
    }
    case ChartId::C03: {
        return make({dv(1.0, u2, ErrorCode::OutsideChartDomain), dv(u1, u2,
            ErrorCode::OutsideChartDomain)});
    }
    case ChartId::C11: {
        return make({dv(1.0, u1, ErrorCode::OutsideChartDomain), dv(u1, u2,
            ErrorCode::OutsideChartDomain)});
    }
    case ChartId::C12: {
        return make({dv(1.0, u2, ErrorCode::OutsideChartDomain), u1});
    }
    case ChartId::C21: {
        return make({dv(u2, pw(u1,2), ErrorCode::OutsideChartDomain), dv(u1, u2,
            ErrorCode::OutsideChartDomain)});
    }
    case ChartId::C22: {
        return make({dv(1.0, u1, ErrorCode::OutsideChartDomain), dv(pw(u1,2), u2,
            ErrorCode::OutsideChartDomain)});
    }
    case ChartId::C31: {
        return make({dv(pw(u2,2), pw(u1,3), ErrorCode::OutsideChartDomain), dv(u1, u2,
            ErrorCode::OutsideChartDomain)});
    }
    case ChartId::C32: {
        return make({dv(u2, pw(u1,2), ErrorCode::OutsideChartDomain), dv(pw(u1,3), pw(u2,2),
            ErrorCode::OutsideChartDomain)});
    }
    case ChartId::C41: {
        return make({dv(u2*K, pw(u1,4), ErrorCode::OutsideChartDomain), dv(u1, u2,
            ErrorCode::OutsideChartDomain)});
    }
    case ChartId::C42: {
        return make({dv(K, pw(u1,3), ErrorCode::OutsideChartDomain), dv(pw(u1,4), u2*K,
            ErrorCode::OutsideChartDomain)});
    }
    case ChartId::C51: {
        return make({dv(pw(u2,2)*K, pw(u1,5), ErrorCode::OutsideChartDomain), dv(u1, u2,
            ErrorCode::OutsideChartDomain)});
    }
    case ChartId::C52: {
        return make({dv(u2*K, pw(u1,4), ErrorCode::OutsideChartDomain), dv(pw(u1,5), K*pw(u2,2),
            ErrorCode::OutsideChartDomain)});
    }
    case ChartId::C61: {
        return make({dv(pw(u2,3)*K, pw(u1,6), ErrorCode::OutsideChartDomain), dv(u1, u2,
            ErrorCode::OutsideChartDomain)});
    }
    case ChartId::C62: {
        return make({dv(pw(u2,2)*K, pw(u1,5), ErrorCode::OutsideChartDomain), dv(pw(u1,6),
            pw(u2,3)*K, ErrorCode::OutsideChartDomain)});
    }
    case ChartId::C71: {
        return make({dv(pw(u2,4)*K, pw(u1,7), ErrorCode::OutsideChartDomain), dv(u1, u2,
            ErrorCode::OutsideChartDomain)});
    }
    case ChartId::C72: {
        return make({dv(pw(u2,3)*K, pw(u1,6), ErrorCode::OutsideChartDomain), dv(pw(u1,7),
            pw(u2,4)*K, ErrorCode::OutsideChartDomain)});
    }
    case ChartId::C81: {
        return make({dv(-u2*P8, pw(u1,8), ErrorCode::OutsideChartDomain), dv(u1, u2,
            ErrorCode::OutsideChartDomain)});
    }
    case ChartId::C82: {
        return make({dv(-P8, pw(u1,7), ErrorCode::OutsideChartDomain), dv(-pw(u1,8), u2*P8,
            ErrorCode::OutsideChartDomain)});
    }
    case ChartId::C91:
        return make({dv(u2 * P9, pw(u1, 9), ErrorCode::OutsideChartDomain),
                     dv(u1, u2, ErrorCode::OutsideChartDomain)});
    case ChartId::C92:
        return make({dv(P9, pw(u1, 8), ErrorCode::OutsideChartDomain),
                     dv(pw(u1, 9), u2 * P9, ErrorCode::OutsideChartDomain)});
    default:
        break;
    }
    throw Error(ErrorCode::InvalidChart, "invalid chart");
}

std::pair<cplx, cplx> to_base_Z(const ChartPoint& p, cplx Z) {
    const cplx c1 = p.c1, c2 = p.c2;
    switch (p.chart) {
    case ChartId::B:
        return {c1, c2};
    case ChartId::C02: {
        return {dv(1.0, c1, ErrorCode::DenominatorVanishes), dv(c2, c1,
            ErrorCode::DenominatorVanishes)};
    }
    case ChartId::C03: {
        return {dv(c2, c1, ErrorCode::DenominatorVanishes), dv(1.0, c1,
            ErrorCode::DenominatorVanishes)};
    }
    case ChartId::C11: {
        return {dv(1.0, c1, ErrorCode::DenominatorVanishes), dv(1.0, c1*c2,
            ErrorCode::DenominatorVanishes)};
    }
    case ChartId::C12: {
        return {c2, dv(1.0, c1, ErrorCode::DenominatorVanishes)};
    }
    case ChartId::C21: {
        return {dv(1.0, c1*c2, ErrorCode::DenominatorVanishes), dv(1.0, c1*pw(c2,2),
            ErrorCode::DenominatorVanishes)};
    }
    case ChartId::C22: {
        return {dv(1.0, c1, ErrorCode::DenominatorVanishes), dv(1.0, pw(c1,2)*c2,
            ErrorCode::DenominatorVanishes)};
    }
    case ChartId::C31: {
        return {dv(1.0, c1*pw(c2,2), ErrorCode::DenominatorVanishes), dv(1.0, c1*pw(c2,3),
            ErrorCode::DenominatorVanishes)};
    }
    case ChartId::C32: {
        return {dv(1.0, pw(c1,2)*c2, ErrorCode::DenominatorVanishes), dv(1.0, pw(c1,3)*pw(c2,2),
            ErrorCode::DenominatorVanishes)};
    }
    case ChartId::C41: {
        const cplx D = 4.0+c1*c2;
        return {dv(1.0, pw(c2,2)*D, ErrorCode::DenominatorVanishes), dv(1.0, pw(c2,3)*D,
            ErrorCode::DenominatorVanishes)};
    }
    case ChartId::C42: {
        const cplx D = 4.0+c1;
        return {dv(1.0, pw(c1,2)*D*pw(c2,2), ErrorCode::DenominatorVanishes), dv(1.0,
            pw(c1,3)*D*pw(c2,3), ErrorCode::DenominatorVanishes)};
    }
    case ChartId::C51: {
        const cplx D = 4.0+c1*pw(c2,2);
        return {dv(1.0, pw(c2,2)*D, ErrorCode::DenominatorVanishes), dv(1.0, pw(c2,3)*D,
            ErrorCode::DenominatorVanishes)};
    }
    case ChartId::C52: {
        const cplx D = 4.0+pw(c1,2)*c2;
        return {dv(1.0, pw(c1,2)*pw(c2,2)*D, ErrorCode::DenominatorVanishes), dv(1.0,
            pw(c1,3)*pw(c2,3)*D, ErrorCode::DenominatorVanishes)};
    }
    case ChartId::C61: {
        const cplx D = 4.0+c1*pw(c2,3);
        return {dv(1.0, pw(c2,2)*D, ErrorCode::DenominatorVanishes), dv(1.0, pw(c2,3)*D,
            ErrorCode::DenominatorVanishes)};
    }
    case ChartId::C62: {
        const cplx D = 4.0+pw(c1,3)*pw(c2,2);
        return {dv(1.0, pw(c1,2)*pw(c2,2)*D, ErrorCode::DenominatorVanishes), dv(1.0,
            pw(c1,3)*pw(c2,3)*D, ErrorCode::DenominatorVanishes)};
    }
    case ChartId::C71: {
        const cplx D = 4.0+c1*pw(c2,4);
        return {dv(1.0, pw(c2,2)*D, ErrorCode::DenominatorVanishes), dv(1.0, pw(c2,3)*D,
            ErrorCode::DenominatorVanishes)};
    }
    case ChartId::C72: {
        const cplx D = 4.0+pw(c1,4)*pw(c2,3);
        return {dv(1.0, pw(c1,2)*pw(c2,2)*D, ErrorCode::DenominatorVanishes), dv(1.0,
            pw(c1,3)*pw(c2,3)*D, ErrorCode::DenominatorVanishes)};
    }
    case ChartId::C81: {
        const cplx D = 4.0+32.0*pw(c2,4)+c1*pw(c2,5);
        return {dv(1.0, pw(c2,2)*D, ErrorCode::DenominatorVanishes), dv(1.0, pw(c2,3)*D,
            ErrorCode::DenominatorVanishes)};
    }
    case ChartId::C82: {
        const cplx D = 4.0+32.0*pw(c1,4)*pw(c2,4)+pw(c1,5)*pw(c2,4);
        return {dv(1.0, pw(c1,2)*pw(c2,2)*D, ErrorCode::DenominatorVanishes), dv(1.0,
            pw(c1,3)*pw(c2,3)*D, ErrorCode::DenominatorVanishes)};
    }
    case ChartId::C91: {
        const cplx D = c9::d91(c1, c2, Z);
        return {dv(1.0, pw(c2, 2) * D, ErrorCode::DenominatorVanishes),
                dv(1.0, pw(c2, 3) * D, ErrorCode::DenominatorVanishes)};
    }
    case ChartId::C92: {
        const cplx D = c9::d92(c1, c2, Z);
        return {dv(1.0, pw(c1 * c2, 2) * D, ErrorCode::DenominatorVanishes),
                dv(1.0, pw(c1 * c2, 3) * D, ErrorCode::DenominatorVanishes)};
    }
    }
    throw Error(ErrorCode::InvalidChart, "invalid chart");
}

Tangent field_Z(const ChartPoint& p, cplx Z) {
    const cplx c1 = p.c1, c2 = p.c2;
    switch (p.chart) {
    case ChartId::B:
        return {c2 - 2.0 * Z * c1, 6.0 * c1 * c1 + 1.0 - 3.0 * Z * c2};
    case ChartId::C02: {
        return {c1*(-c2 + 2.0*Z), dv((6.0 + pw(c1,2) - c1*pw(c2,2) - Z*c1*c2), c1,
            ErrorCode::FieldInfinite)};
    }
    case ChartId::C03: {
        return {-pw(c1,2) - 6.0*pw(c2,2) + 3.0*Z*c1, dv((c1 - pw(c1,2)*c2 - 6.0*pw(c2,3) +
            Z*c1*c2), c1, ErrorCode::FieldInfinite)};
    }
    case ChartId::C11: {
        return {dv(c1*(-1.0 + 2.0*Z*c2), c2, ErrorCode::FieldInfinite), dv((c1 - 6.0*pw(c2,2) -
            pw(c1,2)*pw(c2,2) + Z*c1*c2), c1, ErrorCode::FieldInfinite)};
    }
    case ChartId::C12: {
        return {c1*(-c1 - 6.0*c1*pw(c2,2) + 3.0*Z), dv((1.0 - 2.0*Z*c1*c2), c1,
            ErrorCode::FieldInfinite)};
    }
    case ChartId::C21: {
        return {dv((-2.0*c1 + 6.0*c2 + pw(c1,2)*pw(c2,3) + Z*c1*c2), c2,
            ErrorCode::FieldInfinite), dv((c1 - 6.0*c2 - pw(c1,2)*pw(c2,3) + Z*c1*c2), c1,
            ErrorCode::FieldInfinite)};
    }
    case ChartId::C22: {
        return {dv((-1.0 + 2.0*Z*c1*c2), c2, ErrorCode::FieldInfinite), dv((2.0 -
            6.0*c1*pw(c2,2) - pw(c1,3)*pw(c2,2) - Z*c1*c2), c1, ErrorCode::FieldInfinite)};
    }
    case ChartId::C31: {
        return {dv((12.0 - 3.0*c1 + 2.0*pw(c1,2)*pw(c2,4)), c2, ErrorCode::FieldInfinite),
            dv((-6.0 + c1 - pw(c1,2)*pw(c2,4) + Z*c1*c2), c1, ErrorCode::FieldInfinite)};
    }
    case ChartId::C32: {
        return {dv((-2.0 + 6.0*c2 + pw(c1,4)*pw(c2,3) + Z*c1*c2), c2, ErrorCode::FieldInfinite),
            dv((3.0 - 12.0*c2 - 2.0*pw(c1,4)*pw(c2,3)), c1, ErrorCode::FieldInfinite)};
    }
    case ChartId::C41: {
        const cplx D = 4.0+c1*c2;
        return {dv((-10.0*c1 - 4.0*pw(c1,2)*c2 + 128.0*pw(c2,3) + 112.0*c1*pw(c2,4) +
            32.0*pw(c1,2)*pw(c2,5) + 3.0*pw(c1,3)*pw(c2,6) - Z*c1*c2*D), c2*D,
            ErrorCode::FieldInfinite), dv((-2.0 + c1*c2 - 16.0*pw(c2,4) - 8.0*c1*pw(c2,5) -
            pw(c1,2)*pw(c2,6) + Z*c2*D), D, ErrorCode::FieldInfinite)};
    }
    case ChartId::C42: {
        const cplx D = 4.0+c1;
        return {dv((-3.0 + 32.0*pw(c1,3)*pw(c2,4) + 16.0*pw(c1,4)*pw(c2,4) +
            2.0*pw(c1,5)*pw(c2,4)), c2, ErrorCode::FieldInfinite), dv((10.0 + 4.0*c1 -
            128.0*pw(c1,3)*pw(c2,4) - 112.0*pw(c1,4)*pw(c2,4) - 32.0*pw(c1,5)*pw(c2,4) -
            3.0*pw(c1,6)*pw(c2,4) + Z*c1*D*c2), c1*D, ErrorCode::FieldInfinite)};
    }
    case ChartId::C51: {
        const cplx D = 4.0+c1*pw(c2,2);
        return {dv((-8.0*c1 + 128.0*pw(c2,2) - 5.0*pw(c1,2)*pw(c2,2) + 128.0*c1*pw(c2,4) +
            40.0*pw(c1,2)*pw(c2,6) + 4.0*pw(c1,3)*pw(c2,8) - 2.0*Z*c1*c2*D), c2*D,
            ErrorCode::FieldInfinite), dv((-2.0 + c1*pw(c2,2) - 16.0*pw(c2,4) - 8.0*c1*pw(c2,6) -
            pw(c1,2)*pw(c2,8) + Z*c2*D), D, ErrorCode::FieldInfinite)};
    }
    case ChartId::C52: {
        const cplx D = 4.0+pw(c1,2)*c2;
        return {dv((-10.0 - 4.0*pw(c1,2)*c2 + 128.0*pw(c1,2)*pw(c2,3) + 112.0*pw(c1,4)*pw(c2,4)
            + 32.0*pw(c1,6)*pw(c2,5) + 3.0*pw(c1,8)*pw(c2,6) - Z*c1*c2*D), c2*D,
            ErrorCode::FieldInfinite), dv((8.0 + 5.0*pw(c1,2)*c2 - 128.0*pw(c1,2)*pw(c2,3) -
            128.0*pw(c1,4)*pw(c2,4) - 40.0*pw(c1,6)*pw(c2,5) - 4.0*pw(c1,8)*pw(c2,6) +
            2.0*Z*c1*c2*D), c1*D, ErrorCode::FieldInfinite)};
    }
    case ChartId::C61: {
        const cplx D = 4.0+c1*pw(c2,3);
        return {dv((-6.0*c1 + 128.0*c2 - 6.0*pw(c1,2)*pw(c2,3) + 144.0*c1*pw(c2,4) +
            48.0*pw(c1,2)*pw(c2,7) + 5.0*pw(c1,3)*pw(c2,10) - 3.0*Z*c1*c2*D), c2*D,
            ErrorCode::FieldInfinite), dv((-2.0 + c1*pw(c2,3) - 16.0*pw(c2,4) - 8.0*c1*pw(c2,7) -
            pw(c1,2)*pw(c2,10) + Z*c2*D), D, ErrorCode::FieldInfinite)};
    }
    case ChartId::C62: {
        const cplx D = 4.0+pw(c1,3)*pw(c2,2);
        return {dv((-8.0 + 128.0*c1*pw(c2,2) - 5.0*pw(c1,3)*pw(c2,2) + 128.0*pw(c1,4)*pw(c2,4) +
            40.0*pw(c1,7)*pw(c2,6) + 4.0*pw(c1,10)*pw(c2,8) - 2.0*Z*c1*c2*D), c2*D,
            ErrorCode::FieldInfinite), dv((6.0 - 128.0*c1*pw(c2,2) + 6.0*pw(c1,3)*pw(c2,2) -
            144.0*pw(c1,4)*pw(c2,4) - 48.0*pw(c1,7)*pw(c2,6) - 5.0*pw(c1,10)*pw(c2,8) +
            3.0*Z*c1*c2*D), c1*D, ErrorCode::FieldInfinite)};
    }
    case ChartId::C71: {
        const cplx D = 4.0+c1*pw(c2,4);
        return {dv((128.0 - 4.0*c1 + 160.0*c1*pw(c2,4) - 7.0*pw(c1,2)*pw(c2,4) +
            56.0*pw(c1,2)*pw(c2,8) + 6.0*pw(c1,3)*pw(c2,12) - 4.0*Z*c1*c2*D), c2*D,
            ErrorCode::FieldInfinite), dv((-2.0 - 16.0*pw(c2,4) + c1*pw(c2,4) - 8.0*c1*pw(c2,8) -
            pw(c1,2)*pw(c2,12) + Z*c2*D), D, ErrorCode::FieldInfinite)};
    }
    case ChartId::C72: {
        const cplx D = 4.0+pw(c1,4)*pw(c2,3);
        return {dv((-6.0 + 128.0*c2 - 6.0*pw(c1,4)*pw(c2,3) + 144.0*pw(c1,4)*pw(c2,4) +
            48.0*pw(c1,8)*pw(c2,7) + 5.0*pw(c1,12)*pw(c2,10) - 3.0*Z*c1*c2*D), c2*D,
            ErrorCode::FieldInfinite), dv((4.0 - 128.0*c2 + 7.0*pw(c1,4)*pw(c2,3) -
            160.0*pw(c1,4)*pw(c2,4) - 56.0*pw(c1,8)*pw(c2,7) - 6.0*pw(c1,12)*pw(c2,10) +
            4.0*Z*c1*c2*D), c1*D, ErrorCode::FieldInfinite)};
    }
    case ChartId::C81: {
        const cplx D = 4.0+32.0*pw(c2,4)+c1*pw(c2,5);
        return {dv((-2.0*(c1 + 1024.0*pw(c2,3) + 152.0*c1*pw(c2,4) + 4.0*pw(c1,2)*pw(c2,5)) +
            pw(c2,7)*(32.0 + c1*c2)*(1792.0 + 64.0*c1*c2 + 6144.0*pw(c2,4) + 416.0*c1*pw(c2,5) +
            7.0*pw(c1,2)*pw(c2,6)) - Z*(128.0 + 5.0*c1*c2)*D), c2*D, ErrorCode::FieldInfinite),
            dv(-(2.0 - 16.0*pw(c2,4) - c1*pw(c2,5) + 256.0*pw(c2,8) + 8.0*c1*pw(c2,9) +
            1024.0*pw(c2,12) + 64.0*c1*pw(c2,13) + pw(c1,2)*pw(c2,14) - Z*c2*D), D,
            ErrorCode::FieldInfinite)};
    }
    case ChartId::C82: {
        const cplx D = 4.0+32.0*pw(c1,4)*pw(c2,4)+pw(c1,5)*pw(c2,4);
        return {dv((-4.0 - 2048.0*pw(c1,3)*pw(c2,4) - 288.0*pw(c1,4)*pw(c2,4) -
            7.0*pw(c1,5)*pw(c2,4) + 2.0*pw(c1,7)*pw((32.0 + c1),2)*pw(c2,8)*(28.0 +
            96.0*pw(c1,4)*pw(c2,4) + 3.0*pw(c1,5)*pw(c2,4)) - 4.0*Z*(32.0 + c1)*c2*D), c2*D,
            ErrorCode::FieldInfinite), dv(-(-2.0 - 8.0*pw(c1,3)*(256.0 + 38.0*c1 +
            pw(c1,2))*pw(c2,4) + pw(c1,7)*(32.0 + c1)*pw(c2,8)*(1792.0 + 64.0*c1 +
            6144.0*pw(c1,4)*pw(c2,4) + 416.0*pw(c1,5)*pw(c2,4) + 7.0*pw(c1,6)*pw(c2,4)) - Z*(128.0 +
            5.0*c1)*c2*D), c1*D, ErrorCode::FieldInfinite)};
    }
    case ChartId::C91: {
        const cplx D = c9::d91(c1, c2, Z);
        cplx n1, n2;
        c9::field91_num(c1, c2, Z, n1, n2);
        return {dv(n1, D, ErrorCode::FieldInfinite), dv(n2, D, ErrorCode::FieldInfinite)};
    }
    case ChartId::C92: {
        const cplx D = c9::d92(c1, c2, Z);
        cplx n1, n2;
        c9::field92_num(c1, c2, Z, n1, n2);
        return {dv(n1, c2 * D, ErrorCode::FieldInfinite), dv(n2, D, ErrorCode::FieldInfinite)};
    }
    }
    throw Error(ErrorCode::InvalidChart, "invalid chart");
}

Tangent diff_Z(const ChartPoint& p, cplx Z) {
    const cplx a = p.c1, b = p.c2;
    if (p.chart == ChartId::C91)
        return {dv(-2.0 * Z * (64.0 - 640.0 * Z * b + 3.0 * a * b * b), b * b, ErrorCode::FieldInfinite),
                Z * b};
    if (p.chart == ChartId::C92)
        return {dv(-Z * (128.0 - 1280.0 * Z * a * b + 5.0 * a * a * b), a * b, ErrorCode::FieldInfinite),
                dv(2.0 * Z * (64.0 - 640.0 * Z * a * b + 3.0 * a * a * b), a * a, ErrorCode::FieldInfinite)};
    return {};
}

cplx w_Z(const ChartPoint& p, cplx Z) {
    const cplx c1 = p.c1, c2 = p.c2;
    switch (p.chart) {
    case ChartId::B:
        return 1.0;
    case ChartId::C02: {
        return -pw(c1,3);
    }
    case ChartId::C03: {
        return pw(c1,3);
    }
    case ChartId::C11: {
        return pw(c1,3)*pw(c2,2);
    }
    case ChartId::C12: {
        return pw(c1,2);
    }
    case ChartId::C21: {
        return pw(c1,3)*pw(c2,4);
    }
    case ChartId::C22: {
        return pw(c1,4)*pw(c2,2);
    }
    case ChartId::C31: {
        return pw(c1,3)*pw(c2,6);
    }
    case ChartId::C32: {
        return pw(c1,6)*pw(c2,4);
    }
    case ChartId::C41: {
        const cplx D = 4.0+c1*c2;
        return pw(c2,5)*pw(D,3);
    }
    case ChartId::C42: {
        const cplx D = 4.0+c1;
        return pw(c1,5)*pw(D,3)*pw(c2,6);
    }
    case ChartId::C51: {
        const cplx D = 4.0+c1*pw(c2,2);
        return pw(c2,4)*pw(D,3);
    }
    case ChartId::C52: {
        const cplx D = 4.0+pw(c1,2)*c2;
        return pw(c1,4)*pw(c2,5)*pw(D,3);
    }
    case ChartId::C61: {
        const cplx D = 4.0+c1*pw(c2,3);
        return pw(c2,3)*pw(D,3);
    }
    case ChartId::C62: {
        const cplx D = 4.0+pw(c1,3)*pw(c2,2);
        return pw(c1,3)*pw(c2,4)*pw(D,3);
    }
    case ChartId::C71: {
        const cplx D = 4.0+c1*pw(c2,4);
        return pw(c2,2)*pw(D,3);
    }
    case ChartId::C72: {
        const cplx D = 4.0+pw(c1,4)*pw(c2,3);
        return pw(c1,2)*pw(c2,3)*pw(D,3);
    }
    case ChartId::C81: {
        const cplx D = 4.0+32.0*pw(c2,4)+c1*pw(c2,5);
        return c2*pw(D,3);
    }
    case ChartId::C82: {
        const cplx D = 4.0+32.0*pw(c1,4)*pw(c2,4)+pw(c1,5)*pw(c2,4);
        return c1*pw(c2,2)*pw(D,3);
    }
    case ChartId::C91:
        return pw(c9::d91(c1, c2, Z), 3);
    case ChartId::C92:
        return c2 * pw(c9::d92(c1, c2, Z), 3);
    }
    throw Error(ErrorCode::InvalidChart, "invalid chart");
}

cplx Ew_Z(const ChartPoint& p, cplx Z) {
    const cplx c1 = p.c1, c2 = p.c2;
    switch (p.chart) {
    case ChartId::B:
        return 0.5 * c2 * c2 - 2.0 * pw(c1, 3) - c1;
    case ChartId::C02: {
        return 2.0 + pw(c1,2) - c1*pw(c2,2)/2.0;
    }
    case ChartId::C03: {
        return c1/2.0 - pw(c1,2)*c2 - 2.0*pw(c2,3);
    }
    case ChartId::C11: {
        return c1/2.0 - 2.0*pw(c2,2) - pw(c1,2)*pw(c2,2);
    }
    case ChartId::C12: {
        return 0.5 - pw(c1,2)*c2 - 2.0*pw(c1,2)*pw(c2,3);
    }
    case ChartId::C21: {
        return c1/2.0 - 2.0*c2 - pw(c1,2)*pw(c2,3);
    }
    case ChartId::C22: {
        return 0.5 - 2.0*c1*pw(c2,2) - pw(c1,3)*pw(c2,2);
    }
    case ChartId::C31: {
        return -2.0 + c1/2.0 - pw(c1,2)*pw(c2,4);
    }
    case ChartId::C32: {
        return 0.5 - 2.0*c2 - pw(c1,4)*pw(c2,3);
    }
    case ChartId::C41: {
        const cplx D = 4.0+c1*c2;
        return c1/2.0 - pw(c2,3)*pw(D,2);
    }
    case ChartId::C42: {
        const cplx D = 4.0+c1;
        return 0.5 - pw(c1,3)*pw(D,2)*pw(c2,4);
    }
    case ChartId::C51: {
        const cplx D = 4.0+c1*pw(c2,2);
        return c1/2.0 - pw(c2,2)*pw(D,2);
    }
    case ChartId::C52: {
        const cplx D = 4.0+pw(c1,2)*c2;
        return 0.5 - pw(c1,2)*pw(c2,3)*pw(D,2);
    }
    case ChartId::C61: {
        const cplx D = 4.0+c1*pw(c2,3);
        return c1/2.0 - c2*pw(D,2);
    }
    case ChartId::C62: {
        const cplx D = 4.0+pw(c1,3)*pw(c2,2);
        return 0.5 - c1*pw(c2,2)*pw(D,2);
    }
    case ChartId::C71: {
        const cplx D = 4.0+c1*pw(c2,4);
        return c1/2.0 - pw(D,2);
    }
    case ChartId::C72: {
        const cplx D = 4.0+pw(c1,4)*pw(c2,3);
        return 0.5 - c2*pw(D,2);
    }
    case ChartId::C81: {
        return c1/2.0 - pw(c2,3)*(32.0 + c1*c2)*(8.0 + 32.0*pw(c2,4) + c1*pw(c2,5));
    }
    case ChartId::C82: {
        return 0.5 - pw(c1,3)*(32.0 + c1)*pw(c2,4)*(8.0 + 32.0*pw(c1,4)*pw(c2,4) +
            pw(c1,5)*pw(c2,4));
    }
    case ChartId::C91:
        return dv(c9::ew91_num(c1, c2, Z), c2, ErrorCode::EnergyInfinite);
    case ChartId::C92:
        return dv(c9::ew92_num(c1, c2, Z), c1, ErrorCode::EnergyInfinite);
    }
    throw Error(ErrorCode::InvalidChart, "invalid chart");
}

cplx Edw_Z(const ChartPoint& p, cplx Z) {
    const cplx c1 = p.c1, c2 = p.c2;
    switch (p.chart) {
    case ChartId::B: {
        const cplx E = 0.5 * c2 * c2 - 2.0 * pw(c1, 3) - c1;
        return -Z * (6.0 * E + 4.0 * c1);
    }
    case ChartId::C02: {
        return -Z*(12.0 + 2.0*pw(c1,2) - 3.0*c1*pw(c2,2));
    }
    case ChartId::C03: {
        return Z*(-3.0*c1 + 2.0*pw(c1,2)*c2 + 12.0*pw(c2,3));
    }
    case ChartId::C11: {
        return Z*(-3.0*c1 + 12.0*pw(c2,2) + 2.0*pw(c1,2)*pw(c2,2));
    }
    case ChartId::C12: {
        return Z*(-3.0 + 2.0*pw(c1,2)*c2 + 12.0*pw(c1,2)*pw(c2,3));
    }
    case ChartId::C21: {
        return Z*(-3.0*c1 + 12.0*c2 + 2.0*pw(c1,2)*pw(c2,3));
    }
    case ChartId::C22: {
        return Z*(-3.0 + 12.0*c1*pw(c2,2) + 2.0*pw(c1,3)*pw(c2,2));
    }
    case ChartId::C31: {
        return Z*(12.0 - 3.0*c1 + 2.0*pw(c1,2)*pw(c2,4));
    }
    case ChartId::C32: {
        return Z*(-3.0 + 12.0*c2 + 2.0*pw(c1,4)*pw(c2,3));
    }
    case ChartId::C41: {
        const cplx D = 4.0+c1*c2;
        return Z*(-3.0*c1 + 2.0*pw(c2,3)*pw(D,2));
    }
    case ChartId::C42: {
        const cplx D = 4.0+c1;
        return Z*(-3.0 + 2.0*pw(c1,3)*pw(D,2)*pw(c2,4));
    }
    case ChartId::C51: {
        const cplx D = 4.0+c1*pw(c2,2);
        return Z*(-3.0*c1 + 2.0*pw(c2,2)*pw(D,2));
    }
    case ChartId::C52: {
        const cplx D = 4.0+pw(c1,2)*c2;
        return Z*(-3.0 + 2.0*pw(c1,2)*pw(c2,3)*pw(D,2));
    }
    case ChartId::C61: {
        const cplx D = 4.0+c1*pw(c2,3);
        return Z*(-3.0*c1 + 2.0*c2*pw(D,2));
    }
    case ChartId::C62: {
        const cplx D = 4.0+pw(c1,3)*pw(c2,2);
        return Z*(-3.0 + 2.0*c1*pw(c2,2)*pw(D,2));
    }
    case ChartId::C71: {
        const cplx D = 4.0+c1*pw(c2,4);
        return Z*(-3.0*c1 + 2.0*pw(D,2));
    }
    case ChartId::C72: {
        const cplx D = 4.0+pw(c1,4)*pw(c2,3);
        return Z*(-3.0 + 2.0*c2*pw(D,2));
    }
    case ChartId::C81: {
        return dv(Z*(-64.0 - 3.0*c1*c2 + 2.0*pw(c2,4)*(32.0 + c1*c2)*(8.0 + 32.0*pw(c2,4) +
            c1*pw(c2,5))), c2, ErrorCode::EnergyInfinite);
    }
    case ChartId::C82: {
        return dv(Z*(-64.0 - 3.0*c1 + 2.0*pw(c1,4)*(32.0 + c1)*pw(c2,4)*(8.0 +
            32.0*pw(c1,4)*pw(c2,4) + pw(c1,5)*pw(c2,4))), c1, ErrorCode::EnergyInfinite);
    }
    case ChartId::C91:
        return dv(c9::edw91_num(c1, c2, Z), c2 * c2, ErrorCode::EnergyInfinite);
    case ChartId::C92:
        return dv(c9::edw92_num(c1, c2, Z), c1 * c1 * c2, ErrorCode::EnergyInfinite);
    }
    throw Error(ErrorCode::InvalidChart, "invalid chart");
}

cplx energy_Z(const ChartPoint& p, cplx Z) {
    return dv(Ew_Z(p, Z), w_Z(p, Z), ErrorCode::EnergyInfinite);
}

ChartPoint to_parent_Z(const ChartPoint& p, cplx Z) {
    const ChartInfo& ci = info(p.chart);
    if (p.chart == ChartId::B) throw Error(ErrorCode::InvalidChart, "B has no parent chart");
    if (ci.level == 0) {
        auto [u1, u2] = to_base_Z(p, Z);
        return {ChartId::B, u1, u2};
    }
    const cplx b = blowup_offset(ci.level, Z);
    if (ci.sub == 1) return {ci.parent, b + p.c1 * p.c2, p.c2};
    return {ci.parent, b + p.c1, p.c1 * p.c2};
}

ChartPoint from_parent_Z(ChartId child, const ChartPoint& parent, cplx Z) {
    const ChartInfo& ci = info(child);
    if (child == ChartId::B || parent.chart != ci.parent)
        throw Error(ErrorCode::InvalidChart, "not a parent/child pair");
    if (ci.level == 0) return from_base_Z(child, parent.c1, parent.c2, Z);
    const cplx s = parent.c1 - blowup_offset(ci.level, Z);
    if (ci.sub == 1) return {child, dv(s, parent.c2, ErrorCode::OutsideChartDomain), parent.c2};
    return {child, s, dv(parent.c2, s, ErrorCode::OutsideChartDomain)};
}

ChartPoint convert_Z(const ChartPoint& p, ChartId target, cplx Z) {
    if (p.chart == target) return p;
    auto chain = [](ChartId c) {
        std::vector<ChartId> v{c};
        while (c != ChartId::B) {
            c = info(c).parent;
            v.push_back(c);
        }
        return v;
    };
    const auto up = chain(p.chart);
    const auto down = chain(target);
    // Lowest common ancestor.
    std::size_t iu = 0, id = 0;
    for (; iu < up.size(); ++iu) {
        auto it = std::find(down.begin(), down.end(), up[iu]);
        if (it != down.end()) {
            id = static_cast<std::size_t>(it - down.begin());
            break;
        }
    }
    ChartPoint q = p;
    for (std::size_t k = 0; k < iu; ++k) q = to_parent_Z(q, Z);
    for (std::size_t k = id; k-- > 0;) q = from_parent_Z(down[k], q, Z);
    return q;
}

}  // namespace detail

std::pair<cplx, cplx> chart_to_base(const ChartPoint& p, cplx z) { return detail::to_base_Z(p, boutroux_Z(z)); }

ChartPoint base_to_chart(ChartId chart, cplx u1, cplx u2, cplx z) {
    return detail::from_base_Z(chart, u1, u2, boutroux_Z(z));
}

Tangent vector_field(const ChartPoint& p, cplx z) { return detail::field_Z(p, boutroux_Z(z)); }

Tangent autonomous_vector_field(const ChartPoint& p, cplx z) {
    if (p.chart == ChartId::C91 || p.chart == ChartId::C92) {
        const cplx Z = boutroux_Z(z);
        const Tangent f = detail::field_Z(p, Z);
        const Tangent d = detail::diff_Z(p, Z);
        return {f.d1 - d.d1, f.d2 - d.d2};
    }
    return detail::field_Z(p, 0.0);
}

Tangent u0u_difference(const ChartPoint& p, cplx z) { return detail::diff_Z(p, boutroux_Z(z)); }

cplx jacobian_w(const ChartPoint& p, cplx z) { return detail::w_Z(p, boutroux_Z(z)); }
cplx energy_times_w(const ChartPoint& p, cplx z) { return detail::Ew_Z(p, boutroux_Z(z)); }
cplx energy_dot_times_w(const ChartPoint& p, cplx z) { return detail::Edw_Z(p, boutroux_Z(z)); }

EnergyValue energy(const ChartPoint& p, cplx z) {
    const cplx E = detail::energy_Z(p, boutroux_Z(z));
    return {E, 2.0 * E};
}

cplx energy_dot(const ChartPoint& p, cplx z) {
    const cplx Z = boutroux_Z(z);
    return dv(detail::Edw_Z(p, Z), detail::w_Z(p, Z), ErrorCode::EnergyInfinite);
}

DistanceIndicator distance_to_infinity(const ChartPoint& p, cplx z, const DistanceOptions& opt) {
    const cplx Z = boutroux_Z(z);
    DistanceIndicator r;
    cplx inv_q;
    try {
        const cplx q = 2.0 * detail::energy_Z(p, Z);
        inv_q = q == cplx(0.0) ? cplx(INFINITY, 0.0) : 1.0 / q;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::EnergyInfinite) throw;
        inv_q = 0.0;
    }
    r.d = inv_q;
    r.near_infinity_set = std::abs(inv_q) < 1.0 / opt.q0;
    if (p.chart != ChartId::C91 && p.chart != ChartId::C92) return r;
    cplx w92;
    try {
        w92 = detail::w_Z(detail::convert_Z(p, ChartId::C92, Z), Z);
    } catch (const Error&) {
        return r;
    }
    const double aw = std::abs(w92);
    if (!(aw < opt.w92_threshold)) return r;
    const double theta = aw == 0.0 ? 1.0 : std::clamp(std::log10(opt.w92_threshold / aw), 0.0, 1.0);
    r.d = (1.0 - theta) * inv_q + theta * w92;
    r.near_infinity_set = true;
    r.near_L8 = true;
    return r;
}

std::vector<ChartPoint> base_points(cplx z) {
    return {{ChartId::C03, 0.0, 0.0},  {ChartId::C11, 0.0, 0.0}, {ChartId::C21, 0.0, 0.0},
            {ChartId::C31, 4.0, 0.0},  {ChartId::C41, 0.0, 0.0}, {ChartId::C51, 0.0, 0.0},
            {ChartId::C61, 0.0, 0.0},  {ChartId::C71, 32.0, 0.0},
            {ChartId::C81, -256.0 * boutroux_Z(z), 0.0}};
}

ChartPoint base_point_b8_ell() { return {ChartId::C81, 0.0, 0.0}; }

ChartId parent_chart(ChartId c) {
    if (c == ChartId::B) throw Error(ErrorCode::InvalidChart, "B has no parent chart");
    return info(c).parent;
}

ChartPoint to_parent(const ChartPoint& p, cplx z) { return detail::to_parent_Z(p, boutroux_Z(z)); }

ChartPoint from_parent(ChartId child, const ChartPoint& parent, cplx z) {
    return detail::from_parent_Z(child, parent, boutroux_Z(z));
}

ChartPoint convert(const ChartPoint& p, ChartId target, cplx z) {
    return detail::convert_Z(p, target, boutroux_Z(z));
}

std::vector<ChartManifestEntry> chart_manifest() {
    // Z stands for (5z)^-1, K = -4u1^3 + u2^2, P8 = 32u1^7 + 4u1^3u2^4 - u2^6,
    // P9 = -32u1^7u2 - 4u1^3u2^5 + u2^7 + 256Z u1^8; D is the chart's own factor.
    return {
        {ChartId::B, "(u1, u2)", "(u1, u2)", "", {}},
        {ChartId::C02, "(1/u1, u2/u1)", "(1/c1, c2/c1)", "", {"c1 = 0 (line at infinity L0)"}},
        {ChartId::C03, "(1/u2, u1/u2)", "(c2/c1, 1/c1)", "", {"c1 = 0 (line at infinity L0)"}},
        {ChartId::C11, "(1/u1, u1/u2)", "(1/c1, 1/(c1 c2))", "u031 = u111 u112, u032 = u112", {"c1 = 0", "c2 = 0"}},
        {ChartId::C12, "(1/u2, u1)", "(c2, 1/c1)", "u031 = u121, u032 = u121 u122", {"c1 = 0"}},
        {ChartId::C21, "(u2/u1^2, u1/u2)", "(1/(c1 c2), 1/(c1 c2^2))", "u111 = u211 u212, u112 = u212", {"c1 = 0", "c2 = 0"}},
        {ChartId::C22, "(1/u1, u1^2/u2)", "(1/c1, 1/(c1^2 c2))", "u111 = u221, u112 = u221 u222", {"c1 = 0", "c2 = 0"}},
        {ChartId::C31, "(u2^2/u1^3, u1/u2)", "(1/(c1 c2^2), 1/(c1 c2^3))", "u211 = u311 u312, u212 = u312", {"c1 = 0", "c2 = 0"}},
        {ChartId::C32, "(u2/u1^2, u1^3/u2^2)", "(1/(c1^2 c2), 1/(c1^3 c2^2))", "u211 = u321, u212 = u321 u322", {"c1 = 0", "c2 = 0"}},
        {ChartId::C41, "(u2 K/u1^4, u1/u2)", "(1/(c2^2 D), 1/(c2^3 D)), D = 4 + c1 c2", "u311 = 4 + u411 u412, u312 = u412", {"c2 = 0", "D = 0"}},
        {ChartId::C42, "(K/u1^3, u1^4/(u2 K))", "(1/(c1^2 D c2^2), 1/(c1^3 D c2^3)), D = 4 + c1", "u311 = 4 + u421, u312 = u421 u422", {"c1 = 0", "c2 = 0", "D = 0"}},
        {ChartId::C51, "(u2^2 K/u1^5, u1/u2)", "(1/(c2^2 D), 1/(c2^3 D)), D = 4 + c1 c2^2", "u411 = u511 u512, u412 = u512", {"c2 = 0", "D = 0"}},
        {ChartId::C52, "(u2 K/u1^4, u1^5/(K u2^2))", "(1/(c1^2 c2^2 D), 1/(c1^3 c2^3 D)), D = 4 + c1^2 c2", "u411 = u521, u412 = u521 u522", {"c1 = 0", "c2 = 0", "D = 0"}},
        {ChartId::C61, "(u2^3 K/u1^6, u1/u2)", "(1/(c2^2 D), 1/(c2^3 D)), D = 4 + c1 c2^3", "u511 = u611 u612, u512 = u612", {"c2 = 0", "D = 0"}},
        {ChartId::C62, "(u2^2 K/u1^5, u1^6/(u2^3 K))", "(1/(c1^2 c2^2 D), 1/(c1^3 c2^3 D)), D = 4 + c1^3 c2^2", "u511 = u621, u512 = u621 u622", {"c1 = 0", "c2 = 0", "D = 0"}},
        {ChartId::C71, "(u2^4 K/u1^7, u1/u2)", "(1/(c2^2 D), 1/(c2^3 D)), D = 4 + c1 c2^4", "u611 = u711 u712, u612 = u712", {"c2 = 0", "D = 0"}},
        {ChartId::C72, "(u2^3 K/u1^6, u1^7/(u2^4 K))", "(1/(c1^2 c2^2 D), 1/(c1^3 c2^3 D)), D = 4 + c1^4 c2^3", "u611 = u721, u612 = u721 u722", {"c1 = 0", "c2 = 0", "D = 0"}},
        {ChartId::C81, "(-u2 P8/u1^8, u1/u2)", "(1/(c2^2 D), 1/(c2^3 D)), D = 4 + 32 c2^4 + c1 c2^5", "u711 = 32 + u811 u812, u712 = u812", {"c2 = 0", "D = 0"}},
        {ChartId::C82, "(-P8/u1^7, -u1^8/(u2 P8))", "(1/(c1^2 c2^2 D), 1/(c1^3 c2^3 D)), D = 4 + 32 c1^4 c2^4 + c1^5 c2^4", "u711 = 32 + u821, u712 = u821 u822", {"c1 = 0", "c2 = 0", "D = 0"}},
        {ChartId::C91, "(u2 P9/u1^9, u1/u2)", "(1/(c2^2 D), 1/(c2^3 D)), D = 4 + 32 c2^4 + c1 c2^6 - 256 Z c2^5", "u811 = -256 Z + u911 u912, u812 = u912", {"c2 = 0 (pole line L9)", "D = 0"}},
        {ChartId::C92, "(P9/u1^8, u1^9/(u2 P9))", "(1/(c1^2 c2^2 D), 1/(c1^3 c2^3 D)), D = 4 + 32 c1^4 c2^4 + c1^6 c2^5 - 256 Z c1^5 c2^5", "u811 = -256 Z + u921, u812 = u921 u922", {"c1 = 0", "c2 = 0 (infinity line L8)", "D = 0"}},
    };
}

std::string chart_manifest_json() {
    nlohmann::ordered_json j;
    j["notation"] = {{"Z", "(5z)^-1"},
                     {"K", "-4 u1^3 + u2^2"},
                     {"P8", "32 u1^7 + 4 u1^3 u2^4 - u2^6"},
                     {"P9", "-32 u1^7 u2 - 4 u1^3 u2^5 + u2^7 + 256 Z u1^8"}};
    j["charts"] = nlohmann::ordered_json::array();
    for (const auto& e : chart_manifest()) {
        nlohmann::ordered_json c;
        c["id"] = chart_name(e.chart);
        c["level"] = blowup_level(e.chart);
        c["parent"] = e.chart == ChartId::B ? "" : chart_name(parent_chart(e.chart));
        c["forward"] = e.forward;
        c["inverse"] = e.inverse;
        c["parent_substitution"] = e.parent_substitution;
        c["excluded_loci"] = e.excluded_loci;
        j["charts"].push_back(c);
    }
    return j.dump(2);
}

}  // namespace okamoto

#include "core/bifurcation.hpp"

#include <algorithm>
#include <sstream>

#include "core/reproduction.hpp"

namespace twostrain {

const char* region_name(Region region) {
    switch (region) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    case Region::IV: return "IV";
    }
    return "unknown";
}

RegionLabel classify_region(const ModelParams& p) {
    RegionLabel out;
    out.thresholds = closed_form_reproduction(p);
    const ReproductionSet& r = out.thresholds;
    // precedence I -> IV -> II -> III; ties (== 1) land on the
    // lower-numbered region by the <= comparisons
    if (r.r1 <= 1.0 && r.r2 <= 1.0) {
        out.label = Region::I;
    } else if (r.r1 > 1.0 && r.r2 > 1.0 && r.r12 > 1.0 && r.r21 > 1.0) {
        out.label = Region::IV;
    } else if (r.r1 > 1.0 && r.r2 > 1.0 && r.r12 <= 1.0 && r.r21 <= 1.0) {
        // mutual invasion resistance; outside the four-region scheme
        out.label = r.r1 >= r.r2 ? Region::II : Region::III;
        out.contested = true;
    } else if (r.r1 > 1.0 && (r.r2 <= 1.0 || r.r21 <= 1.0)) {
        out.label = Region::II;
    } else {
        out.label = Region::III;
    }
    return out;
}

ScanAxis parse_axis(const std::string& name) {
    if (name == "beta1") return ScanAxis::beta1;
    if (name == "beta2") return ScanAxis::beta2;
    if (name == "gamma1") return ScanAxis::gamma1;
    if (name == "gamma2") return ScanAxis::gamma2;
    if (name == "sigma1") return ScanAxis::sigma1;
    if (name == "sigma2") return ScanAxis::sigma2;
    if (name == "epsilon") return ScanAxis::epsilon;
    raise(errc::invalid_axis, "unknown scan axis '" + name + "'");
}

const char* axis_name(ScanAxis axis) {
    switch (axis) {
    case ScanAxis::beta1: return "beta1";
    case ScanAxis::beta2: return "beta2";
    case ScanAxis::gamma1: return "gamma1";
    case ScanAxis::gamma2: return "gamma2";
    case ScanAxis::sigma1: return "sigma1";
    case ScanAxis::sigma2: return "sigma2";
    case ScanAxis::epsilon: return "epsilon";
    }
    return "unknown";
}

AxisSpec make_axis(ScanAxis axis, double lo, double hi, std::size_t points) {
    if (points < 2 || !(hi > lo)) {
        raise(errc::invalid_axis, "axis needs at least 2 increasing values");
    }
    AxisSpec spec;
    spec.axis = axis;
    spec.values.reserve(points);
    for (std::size_t k = 0; k < points; ++k) {
        spec.values.push_back(lo + (hi - lo) * static_cast<double>(k) /
                                       static_cast<double>(points - 1));
    }
    spec.values.back() = hi; // inclusive endpoint, exactly
    return spec;
}

namespace {

void set_axis_value(ModelParams& p, ScanAxis axis, double value) {
    switch (axis) {
    case ScanAxis::beta1: p.beta1 = value; break;
    case ScanAxis::beta2: p.beta2 = value; break;
    case ScanAxis::gamma1: p.gamma1 = value; break;
    case ScanAxis::gamma2: p.gamma2 = value; break;
    case ScanAxis::sigma1: p.sigma1 = value; break;
    case ScanAxis::sigma2: p.sigma2 = value; break;
    case ScanAxis::epsilon: p.epsilon = value; break;
    }
}

void check_axes(const AxisSpec& a1, const AxisSpec& a2) {
    if (a1.axis == a2.axis) {
        raise(errc::invalid_axis, "the two scan axes must differ");
    }
    for (const AxisSpec* spec : {&a1, &a2}) {
        if (spec->values.size() < 2) {
            raise(errc::invalid_axis, "axis needs at least 2 values");
        }
        if (!std::is_sorted(spec->values.begin(), spec->values.end()) ||
            std::adjacent_find(spec->values.begin(), spec->values.end()) !=
                spec->values.end()) {
            std::ostringstream os;
            os << "axis " << axis_name(spec->axis)
               << " values must be strictly increasing";
            raise(errc::invalid_axis, os.str());
        }
    }
}

template <class Cell, class Eval>
ScanGrid<Cell> scan_impl(const ModelParams& fixed, const AxisSpec& a1,
                         const AxisSpec& a2, Eval&& eval) {
    check_axes(a1, a2);
    ScanGrid<Cell> grid;
    grid.axis1 = a1;
    grid.axis2 = a2;
    grid.fixed = fixed;
    grid.cells.reserve(a1.values.size() * a2.values.size());
    for (double v1 : a1.values) {
        for (double v2 : a2.values) {
            grid.cells.push_back(eval(apply_axes(fixed, a1, v1, a2, v2)));
        }
    }
    return grid;
}

} // namespace

ModelParams apply_axes(const ModelParams& fixed, const AxisSpec& axis1,
                       double v1, const AxisSpec& axis2, double v2) {
    ModelParams p = fixed;
    set_axis_value(p, axis1.axis, v1);
    set_axis_value(p, axis2.axis, v2);
    return validate_params(p);
}

ScanGrid<RegionLabel> scan_regions(const ModelParams& fixed,
                                   const AxisSpec& axis1,
                                   const AxisSpec& axis2) {
    return scan_impl<RegionLabel>(fixed, axis1, axis2, [](const ModelParams& p) {
        return classify_region(p);
    });
}

ScanQuantity parse_quantity(const std::string& name) {
    if (name == "r12") return ScanQuantity::r12;
    if (name == "r21") return ScanQuantity::r21;
    raise(errc::invalid_axis, "unknown scan quantity '" + name + "'");
}

ScanGrid<double> scan_scalar(const ModelParams& fixed, const AxisSpec& axis1,
                             const AxisSpec& axis2, ScanQuantity quantity) {
    return scan_impl<double>(
        fixed, axis1, axis2, [quantity](const ModelParams& p) {
            const ReproductionSet r = closed_form_reproduction(p);
            return quantity == ScanQuantity::r12 ? r.r12 : r.r21;
        });
}

} // namespace twostrain

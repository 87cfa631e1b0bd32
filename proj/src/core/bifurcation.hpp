#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace twostrain {

/// Qualitative behaviour regions:
///   I   disease-free (neither strain can infiltrate)
///   II  original strain only
///   III emerging strain only
///   IV  coexistence (all four thresholds exceed 1)
enum class Region : int { I = 1, II = 2, III = 3, IV = 4 };

const char* region_name(Region region);

struct RegionLabel {
    Region label{};
    ReproductionSet thresholds;
    /// Both invasion numbers <= 1 with both strains supercritical: the
    /// four-region scheme does not name this case; the label falls back to
    /// the strain with the larger basic reproduction number.
    bool contested{};
};

RegionLabel classify_region(const ModelParams& params);

enum class ScanAxis {
    beta1,
    beta2,
    gamma1,
    gamma2,
    sigma1,
    sigma2,
    epsilon,
};

/// Accepts the parameter field names; throws invalid_axis otherwise.
ScanAxis parse_axis(const std::string& name);
const char* axis_name(ScanAxis axis);

struct AxisSpec {
    ScanAxis axis{};
    std::vector<double> values; // strictly increasing
};

/// Uniform inclusive grid helper.
AxisSpec make_axis(ScanAxis axis, double lo, double hi, std::size_t points);

/// Row-major grid: cell (i, j) = cells[i * axis2.size() + j] with axis1
/// indexing rows.
template <class Cell>
struct ScanGrid {
    AxisSpec axis1;
    AxisSpec axis2;
    ModelParams fixed;
    std::vector<Cell> cells;

    const Cell& at(std::size_t i, std::size_t j) const {
        return cells[i * axis2.values.size() + j];
    }
};

ScanGrid<RegionLabel> scan_regions(const ModelParams& fixed,
                                   const AxisSpec& axis1,
                                   const AxisSpec& axis2);

enum class ScanQuantity { r12, r21 };

ScanQuantity parse_quantity(const std::string& name);

ScanGrid<double> scan_scalar(const ModelParams& fixed, const AxisSpec& axis1,
                             const AxisSpec& axis2, ScanQuantity quantity);

/// The cell parameter set with the axis values substituted in.
ModelParams apply_axes(const ModelParams& fixed, const AxisSpec& axis1,
                       double v1, const AxisSpec& axis2, double v2);

} // namespace twostrain

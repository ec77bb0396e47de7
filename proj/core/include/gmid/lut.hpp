#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gmid/device.hpp"

namespace gmid {

enum class Quantity { GmOverId, GmOverGds, IdPerW };

/// Gridded sizing-chart data for one device: (L, Vgs) -> {gm/id, gm/gds, id/W}.
///
/// Matrices are stored L-major (row = one length). Immutable after
/// construction; the constructor enforces ascending grids and the
/// monotonicity that interpolation and inversion rely on.
class DeviceLUT {
public:
    DeviceLUT(Polarity polarity, double vds_char, std::vector<double> l_grid,
              std::vector<double> vgs_grid, std::vector<double> gm_over_id,
              std::vector<double> gm_over_gds, std::vector<double> id_per_w,
              std::string provenance = {});

    Polarity polarity() const noexcept { return polarity_; }
    double vds_char() const noexcept { return vds_char_; }
    std::span<const double> l_grid() const noexcept { return l_grid_; }
    std::span<const double> vgs_grid() const noexcept { return vgs_grid_; }
    const std::string& provenance() const noexcept { return provenance_; }

    std::size_t n_l() const noexcept { return l_grid_.size(); }
    std::size_t n_vgs() const noexcept { return vgs_grid_.size(); }

    double at(Quantity q, std::size_t il, std::size_t iv) const;

    /// One L row of a quantity, ordered by ascending vgs.
    std::span<const double> row(Quantity q, std::size_t il) const;

private:
    const std::vector<double>& matrix(Quantity q) const noexcept;

    Polarity polarity_;
    double vds_char_;
    std::vector<double> l_grid_;
    std::vector<double> vgs_grid_;
    std::vector<double> gm_over_id_;
    std::vector<double> gm_over_gds_;
    std::vector<double> id_per_w_;
    std::string provenance_;
};

/// Bilinear read-off. Throws RangeError outside the grid.
double interp(const DeviceLUT& lut, double l, double vgs, Quantity q);

/// Gate voltage at which gm/id equals `target_gm_id` at length `l`.
/// Throws InfeasibleTarget when the target is outside the column's range.
double invert_gmid(const DeviceLUT& lut, double l, double target_gm_id);

/// Gate voltage giving the requested current density at length `l`.
double invert_id_per_w(const DeviceLUT& lut, double l, double target_id_per_w);

/// Smallest grid length whose gm/gds at `gm_id` reaches `required_gm_gds`.
double select_length(const DeviceLUT& lut, double gm_id, double required_gm_gds);

struct ChartSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string x_name;
    std::string y_name;
};

struct ChartPanel {
    int index = 0;          // 1: gm/gds vs gm/id, 2: id/W vs gm/id, 3: gm/id vs Vgs
    std::string title;
    std::vector<ChartSeries> series;  // one per grid length
};

std::vector<ChartPanel> emit_charts(const DeviceLUT& lut);

void write_chart_csv(const ChartPanel& panel, std::ostream& os);

/// LUT CSV text in the fixed two-header layout.
std::string format_lut(const DeviceLUT& lut);
DeviceLUT parse_lut(const std::string& text, std::string provenance = {});

void save_lut(const DeviceLUT& lut, const std::filesystem::path& path);
DeviceLUT load_lut(const std::filesystem::path& path);

} // namespace gmid

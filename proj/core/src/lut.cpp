#include "gmid/lut.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "gmid/errors.hpp"
#include "gmid/fileio.hpp"
#include "gmid/numfmt.hpp"

namespace gmid {

namespace {

void require_ascending(const std::vector<double>& g, const char* name) {
    if (g.size() < 2) throw InvalidArgument(std::string(name) + " grid needs at least 2 points");
    for (std::size_t i = 1; i < g.size(); ++i) {
        if (!(g[i] > g[i - 1])) {
            throw InvalidArgument(std::string(name) + " grid not strictly ascending");
        }
    }
}

} // namespace

DeviceLUT::DeviceLUT(Polarity polarity, double vds_char, std::vector<double> l_grid,
                     std::vector<double> vgs_grid, std::vector<double> gm_over_id,
                     std::vector<double> gm_over_gds, std::vector<double> id_per_w,
                     std::string provenance)
    : polarity_(polarity), vds_char_(vds_char), l_grid_(std::move(l_grid)),
      vgs_grid_(std::move(vgs_grid)), gm_over_id_(std::move(gm_over_id)),
      gm_over_gds_(std::move(gm_over_gds)), id_per_w_(std::move(id_per_w)),
      provenance_(std::move(provenance)) {
    require_ascending(l_grid_, "l");
    require_ascending(vgs_grid_, "vgs");
    const std::size_t cells = l_grid_.size() * vgs_grid_.size();
    if (gm_over_id_.size() != cells || gm_over_gds_.size() != cells || id_per_w_.size() != cells) {
        throw InvalidArgument("LUT matrix size does not match |l_grid| x |vgs_grid|");
    }
    for (std::size_t il = 0; il < n_l(); ++il) {
        auto gmid = row(Quantity::GmOverId, il);
        auto idw = row(Quantity::IdPerW, il);
        for (std::size_t j = 1; j < gmid.size(); ++j) {
            if (!(gmid[j] < gmid[j - 1])) {
                throw InvalidArgument("gm/id not strictly decreasing in vgs at L=" +
                                      format_number(l_grid_[il]));
            }
            if (!(idw[j] > idw[j - 1])) {
                throw InvalidArgument("id/W not strictly increasing in vgs at L=" +
                                      format_number(l_grid_[il]));
            }
        }
    }
}

const std::vector<double>& DeviceLUT::matrix(Quantity q) const noexcept {
    switch (q) {
    case Quantity::GmOverId: return gm_over_id_;
    case Quantity::GmOverGds: return gm_over_gds_;
    case Quantity::IdPerW: break;
    }
    return id_per_w_;
}

double DeviceLUT::at(Quantity q, std::size_t il, std::size_t iv) const {
    return matrix(q).at(il * n_vgs() + iv);
}

std::span<const double> DeviceLUT::row(Quantity q, std::size_t il) const {
    return std::span<const double>(matrix(q)).subspan(il * n_vgs(), n_vgs());
}

namespace {

struct Cell {
    std::size_t i;
    double t;
};

Cell locate(std::span<const double> g, double x, const char* axis) {
    if (!(x >= g.front() && x <= g.back())) throw RangeError(axis, x, g.front(), g.back());
    auto it = std::upper_bound(g.begin(), g.end(), x);
    std::size_t i = static_cast<std::size_t>(it - g.begin());
    i = i == 0 ? 0 : i - 1;
    if (i >= g.size() - 1) return {g.size() - 2, 1.0};
    return {i, (x - g[i]) / (g[i + 1] - g[i])};
}

double lerp(double a, double b, double t) {
    if (t == 0.0) return a;
    if (t == 1.0) return b;
    return a + t * (b - a);
}

// Quantity along vgs at a (possibly off-grid) length.
double at_length(const DeviceLUT& lut, const Cell& lc, std::size_t iv, Quantity q) {
    const double a = lut.at(q, lc.i, iv);
    if (lc.t == 0.0) return a;
    return lerp(a, lut.at(q, lc.i + 1, iv), lc.t);
}

double interp_cell(const DeviceLUT& lut, const Cell& lc, double vgs, Quantity q) {
    const auto vc = locate(lut.vgs_grid(), vgs, "vgs");
    return lerp(at_length(lut, lc, vc.i, q), at_length(lut, lc, vc.i + 1, q), vc.t);
}

template <class F>
double bisect_vgs(const DeviceLUT& lut, F&& f, double target, bool decreasing) {
    double lo = lut.vgs_grid().front();
    double hi = lut.vgs_grid().back();
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double v = f(mid);
        if (v == target) return mid;
        const bool go_right = decreasing ? (v > target) : (v < target);
        (go_right ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double interp(const DeviceLUT& lut, double l, double vgs, Quantity q) {
    const auto lc = locate(lut.l_grid(), l, "l");
    return interp_cell(lut, lc, vgs, q);
}

double invert_gmid(const DeviceLUT& lut, double l, double target_gm_id) {
    const auto lc = locate(lut.l_grid(), l, "l");
    const double hi = at_length(lut, lc, 0, Quantity::GmOverId);
    const double lo = at_length(lut, lc, lut.n_vgs() - 1, Quantity::GmOverId);
    if (!(target_gm_id >= lo && target_gm_id <= hi)) {
        throw InfeasibleTarget(target_gm_id, lo, hi, l);
    }
    if (target_gm_id == hi) return lut.vgs_grid().front();
    if (target_gm_id == lo) return lut.vgs_grid().back();
    auto f = [&](double vgs) { return interp_cell(lut, lc, vgs, Quantity::GmOverId); };
    return bisect_vgs(lut, f, target_gm_id, true);
}

double invert_id_per_w(const DeviceLUT& lut, double l, double target_id_per_w) {
    const auto lc = locate(lut.l_grid(), l, "l");
    const double lo = at_length(lut, lc, 0, Quantity::IdPerW);
    const double hi = at_length(lut, lc, lut.n_vgs() - 1, Quantity::IdPerW);
    if (!(target_id_per_w >= lo && target_id_per_w <= hi)) {
        throw RangeError("id_per_w", target_id_per_w, lo, hi);
    }
    auto f = [&](double vgs) { return interp_cell(lut, lc, vgs, Quantity::IdPerW); };
    return bisect_vgs(lut, f, target_id_per_w, false);
}

double select_length(const DeviceLUT& lut, double gm_id, double required_gm_gds) {
    bool any_feasible = false;
    double best = -1.0;
    double best_l = lut.l_grid().front();
    double lo_all = 0.0, hi_all = 0.0;
    for (double l : lut.l_grid()) {
        double vgs = 0.0;
        try {
            vgs = invert_gmid(lut, l, gm_id);
        } catch (const InfeasibleTarget& e) {
            lo_all = e.lo();
            hi_all = e.hi();
            continue;
        }
        any_feasible = true;
        const double g = interp(lut, l, vgs, Quantity::GmOverGds);
        if (g >= required_gm_gds) return l;
        if (g > best) {
            best = g;
            best_l = l;
        }
    }
    if (!any_feasible) throw InfeasibleTarget(gm_id, lo_all, hi_all, lut.l_grid().back());
    throw InfeasibleGain(required_gm_gds, best, best_l);
}

namespace {

std::string length_label(double l) {
    const double nm = std::round(l * 1e10) / 10.0;
    return "L=" + format_fixed(nm) + "nm";
}

} // namespace

std::vector<ChartPanel> emit_charts(const DeviceLUT& lut) {
    const bool p = lut.polarity() == Polarity::P;
    const std::string gate_axis = p ? "Vsg (V)" : "Vgs (V)";
    const std::string dev = p ? "pMOS" : "nMOS";

    std::vector<ChartPanel> panels(3);
    panels[0] = {1, "gm/gds vs gm/id (" + dev + ")", {}};
    panels[1] = {2, "id/W vs gm/id (" + dev + ")", {}};
    panels[2] = {3, "gm/id vs " + gate_axis.substr(0, 3) + " (" + dev + ")", {}};

    for (std::size_t il = 0; il < lut.n_l(); ++il) {
        const auto label = length_label(lut.l_grid()[il]);
        auto gmid = lut.row(Quantity::GmOverId, il);
        auto gmgds = lut.row(Quantity::GmOverGds, il);
        auto idw = lut.row(Quantity::IdPerW, il);

        // gm/id falls with vgs, so reverse to get ascending abscissa.
        ChartSeries s1{label, {gmid.rbegin(), gmid.rend()}, {gmgds.rbegin(), gmgds.rend()},
                       "gm/id (1/V)", "gm/gds"};
        ChartSeries s2{label, {gmid.rbegin(), gmid.rend()}, {idw.rbegin(), idw.rend()},
                       "gm/id (1/V)", "id/W (A/m)"};
        ChartSeries s3{label, {lut.vgs_grid().begin(), lut.vgs_grid().end()},
                       {gmid.begin(), gmid.end()}, gate_axis, "gm/id (1/V)"};
        panels[0].series.push_back(std::move(s1));
        panels[1].series.push_back(std::move(s2));
        panels[2].series.push_back(std::move(s3));
    }
    return panels;
}

void write_chart_csv(const ChartPanel& panel, std::ostream& os) {
    os << "panel,series_label,x,y\n";
    for (const auto& s : panel.series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            os << panel.index << ',' << s.label << ',' << format_fixed(s.x[i]) << ','
               << format_fixed(s.y[i]) << '\n';
        }
    }
}

namespace {

constexpr const char* kHeader1 = "polarity,vds_char_V";
constexpr std::array<const char*, 5> kColumns = {"l_m", "vgs_V", "gm_over_id_perV", "gm_over_gds",
                                                 "id_per_w_A_per_m"};

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(std::move(cur));
    return out;
}

double number_field(const std::string& s, const char* column, std::size_t line) {
    double v = 0.0;
    if (!parse_number(s, v)) {
        throw ParseError("column " + std::string(column) + ": not a number '" + s + "'", line);
    }
    return v;
}

} // namespace

std::string format_lut(const DeviceLUT& lut) {
    std::string out;
    out += kHeader1;
    out += '\n';
    out += to_string(lut.polarity());
    out += ',' + format_fixed(lut.vds_char()) + '\n';
    for (std::size_t i = 0; i < kColumns.size(); ++i) {
        out += kColumns[i];
        out += i + 1 < kColumns.size() ? ',' : '\n';
    }
    for (std::size_t il = 0; il < lut.n_l(); ++il) {
        for (std::size_t iv = 0; iv < lut.n_vgs(); ++iv) {
            out += format_fixed(lut.l_grid()[il]);
            out += ',' + format_fixed(lut.vgs_grid()[iv]);
            out += ',' + format_fixed(lut.at(Quantity::GmOverId, il, iv));
            out += ',' + format_fixed(lut.at(Quantity::GmOverGds, il, iv));
            out += ',' + format_fixed(lut.at(Quantity::IdPerW, il, iv));
            out += '\n';
        }
    }
    return out;
}

DeviceLUT parse_lut(const std::string& text, std::string provenance) {
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;

    auto next = [&]() -> bool {
        if (!std::getline(is, line)) return false;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    };

    if (!next() || line != kHeader1) {
        throw ParseError("expected header '" + std::string(kHeader1) + "'", lineno == 0 ? 1 : lineno);
    }
    if (!next()) throw ParseError("missing polarity row", lineno + 1);
    auto meta = split_csv(line);
    if (meta.size() != 2) throw ParseError("polarity row needs 2 fields", lineno);
    Polarity pol;
    if (meta[0] == "N") {
        pol = Polarity::N;
    } else if (meta[0] == "P") {
        pol = Polarity::P;
    } else {
        throw ParseError("polarity must be N or P, got '" + meta[0] + "'", lineno);
    }
    const double vds_char = number_field(meta[1], "vds_char_V", lineno);

    if (!next()) throw ParseError("missing column header", lineno + 1);
    auto cols = split_csv(line);
    for (const char* c : kColumns) {
        if (std::find(cols.begin(), cols.end(), c) == cols.end()) {
            throw ParseError("missing column '" + std::string(c) + "'", lineno);
        }
    }
    if (cols.size() != kColumns.size() ||
        !std::equal(cols.begin(), cols.end(), kColumns.begin())) {
        throw ParseError("column header must be exactly l_m,vgs_V,gm_over_id_perV,gm_over_gds,"
                         "id_per_w_A_per_m",
                         lineno);
    }

    std::vector<double> l_grid, vgs_grid, gm_id, gm_gds, id_w;
    std::set<std::pair<double, double>> seen;
    std::size_t vgs_index = 0;
    bool first_block = true;

    while (next()) {
        if (line.empty()) continue;
        auto f = split_csv(line);
        if (f.size() != kColumns.size()) {
            throw ParseError("ragged row: expected " + std::to_string(kColumns.size()) +
                                 " fields, got " + std::to_string(f.size()),
                             lineno);
        }
        const double l = number_field(f[0], kColumns[0], lineno);
        const double vgs = number_field(f[1], kColumns[1], lineno);
        if (!seen.insert({l, vgs}).second) {
            throw ParseError("duplicate key (l=" + f[0] + ", vgs=" + f[1] + ")", lineno);
        }

        if (l_grid.empty() || l != l_grid.back()) {
            if (!l_grid.empty()) {
                if (!(l > l_grid.back())) throw ParseError("l grid not ascending", lineno);
                if (first_block) {
                    first_block = false;
                } else if (vgs_index != vgs_grid.size()) {
                    throw ParseError("ragged grid: block for previous l has " +
                                         std::to_string(vgs_index) + " vgs points, expected " +
                                         std::to_string(vgs_grid.size()),
                                     lineno);
                }
            }
            l_grid.push_back(l);
            vgs_index = 0;
        }

        if (first_block) {
            if (!vgs_grid.empty() && !(vgs > vgs_grid.back())) {
                throw ParseError("vgs grid not ascending", lineno);
            }
            vgs_grid.push_back(vgs);
        } else {
            if (vgs_index >= vgs_grid.size() || vgs != vgs_grid[vgs_index]) {
                throw ParseError("vgs value " + f[1] + " does not match the grid of the first block",
                                 lineno);
            }
        }
        ++vgs_index;

        gm_id.push_back(number_field(f[2], kColumns[2], lineno));
        gm_gds.push_back(number_field(f[3], kColumns[3], lineno));
        id_w.push_back(number_field(f[4], kColumns[4], lineno));
    }
    if (!first_block && vgs_index != vgs_grid.size()) {
        throw ParseError("ragged grid: last block has " + std::to_string(vgs_index) +
                             " vgs points, expected " + std::to_string(vgs_grid.size()),
                         lineno);
    }
    if (l_grid.size() < 2 || vgs_grid.size() < 2) {
        throw ParseError("LUT needs at least 2 lengths and 2 gate voltages", lineno);
    }
    try {
        return DeviceLUT(pol, vds_char, std::move(l_grid), std::move(vgs_grid), std::move(gm_id),
                         std::move(gm_gds), std::move(id_w), std::move(provenance));
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what(), lineno);
    }
}

void save_lut(const DeviceLUT& lut, const std::filesystem::path& path) {
    write_file_atomic(path, format_lut(lut));
}

DeviceLUT load_lut(const std::filesystem::path& path) {
    return parse_lut(read_file(path), "file:" + path.string());
}

} // namespace gmid

#pragma once

#include <string>
#include <vector>

#include "gmid/kv.hpp"
#include "gmid/synth.hpp"
#include "gmid/verify.hpp"

namespace gmid {

/// Design document: a device listing (W, L in um) followed by every
/// intermediate quantity in SI units. `design_from_kv` reads the SI keys.
KvDocument design_to_kv(const AmpDesign& design);
AmpDesign design_from_kv(const KvDocument& doc);

KvDocument report_to_kv(const AmpReport& rep, const AmpSpec& spec);
KvDocument verdicts_to_kv(const VerdictTable& table);

/// `freq_hz,mag_db,phase_deg` rows.
std::string bode_csv(const std::vector<BodePoint>& points);

} // namespace gmid

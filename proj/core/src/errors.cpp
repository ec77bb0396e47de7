#include "gmid/errors.hpp"

#include "gmid/numfmt.hpp"

namespace gmid {

RangeError::RangeError(std::string axis, double value, double lo, double hi)
    : Error(axis + "=" + format_number(value) + " outside characterized range [" +
            format_number(lo) + ", " + format_number(hi) + "]"),
      axis_(std::move(axis)), lo_(lo), hi_(hi) {}

InfeasibleTarget::InfeasibleTarget(double target, double lo, double hi, double l)
    : Infeasible("gm/id target " + format_number(target) + " 1/V not achievable at L=" +
            format_number(l) + " m; achievable interval [" + format_number(lo) + ", " +
            format_number(hi) + "] 1/V"),
      lo_(lo), hi_(hi) {}

InfeasibleGain::InfeasibleGain(double required, double best_gm_gds, double best_l)
    : Infeasible("required gm/gds " + format_number(required) + " not reached; best " +
            format_number(best_gm_gds) + " at L=" + format_number(best_l) + " m"),
      best_gm_gds_(best_gm_gds), best_l_(best_l) {}

ParseError::ParseError(const std::string& what, std::size_t line)
    : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

SynthesisError::SynthesisError(std::string stage, const std::string& cause)
    : Error("stage " + stage + ": " + cause), stage_(std::move(stage)) {}

} // namespace gmid

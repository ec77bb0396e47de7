#include <cmath>
#include <numbers>
#include <variant>

#include <gtest/gtest.h>

#include "gmid/errors.hpp"
#include "gmid/kv.hpp"
#include "gmid/report_io.hpp"
#include "gmid/synth.hpp"
#include "test_support.hpp"

namespace gmid {
namespace {

using testing::nmos_lut;
using testing::pmos_lut;

constexpr double kVn = 8e-9;       // V/sqrt(Hz)
constexpr double kGbw = 60e6;      // Hz
constexpr double kSlew = 18e6;     // V/s
constexpr double kCload = 4e-12;   // F

// Independent evaluation of the noise-to-gm rule.
double gm_oracle(double vn, double t) { return 16.0 * 1.380649e-23 * t / (3.0 * vn * vn); }

double deg_atan(double x) { return std::atan(x) * 180.0 / std::numbers::pi; }

TEST(GmFromNoise, ReferenceValue) {
    const double gm = gm_from_noise(kVn, 300.0);
    EXPECT_NEAR(gm / 345.2e-6, 1.0, 1e-3);
    EXPECT_DOUBLE_EQ(gm, gm_oracle(kVn, 300.0));
}

TEST(GmFromNoise, Scaling) {
    EXPECT_NEAR(gm_from_noise(kVn, 1e-12), 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(gm_from_noise(2 * kVn, 300.0), gm_from_noise(kVn, 300.0) / 4.0);
    EXPECT_THROW(gm_from_noise(0.0, 300.0), InvalidArgument);
    EXPECT_THROW(gm_from_noise(kVn, -1.0), InvalidArgument);
}

TEST(CompensationCap, ReferenceValue) {
    EXPECT_NEAR(compensation_cap(345.2e-6, kGbw) / 0.916e-12, 1.0, 5e-3);
    EXPECT_DOUBLE_EQ(compensation_cap(2.0 * std::numbers::pi, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(compensation_cap(2e-3, kGbw), 2.0 * compensation_cap(1e-3, kGbw));
    EXPECT_THROW(compensation_cap(1e-3, 0.0), InvalidArgument);
}

TEST(TailCurrents, ReferenceValue) {
    const auto t = tail_currents(kSlew, 0.916e-12);
    EXPECT_NEAR(t.i_d5 / 16.5e-6, 1.0, 5e-3);
    EXPECT_NEAR(t.i_d1 / 8.24e-6, 1.0, 5e-3);
    EXPECT_DOUBLE_EQ(t.i_d1, t.i_d5 / 2.0);
    EXPECT_THROW(tail_currents(kSlew, 0.0), InvalidArgument);
}

TEST(Stage1Conductances, EqualSplit) {
    const auto g = stage1_conductances(345.2e-6, 100.0);
    EXPECT_NEAR(g.gds12, 1.726e-6, 1e-12);
    EXPECT_EQ(g.gds12, g.gds34);
    EXPECT_DOUBLE_EQ(345.2e-6 / (g.gds12 + g.gds34), 100.0);
    EXPECT_DOUBLE_EQ(stage1_conductances(345.2e-6, 345.2e-6 / 2.0).gds12, 1.0);
}

TEST(SizeDevice, VacuousGainPicksShortestLength) {
    const auto s = size_device(nmos_lut(), 100e-6, 10e-6, 1.0);
    EXPECT_DOUBLE_EQ(s.l, 65e-9);
}

TEST(SizeDevice, ReEvaluationClosure) {
    auto g = testing::rng(3);
    for (int k = 0; k < 200; ++k) {
        const auto& lut = k % 2 ? nmos_lut() : pmos_lut();
        const double i_d = testing::log_uniform(g, 1e-6, 500e-6);
        const double gm = i_d * testing::uniform(g, 4.0, 28.0);
        const double gds_max = gm / testing::uniform(g, 5.0, 150.0);
        SizedDevice s{};
        try {
            s = size_device(lut, gm, i_d, gds_max);
        } catch (const InfeasibleGain&) {
            continue;
        }
        EXPECT_NEAR(std::remainder(s.w, 10e-9), 0.0, 1e-15);
        const double idw = interp(lut, s.l, s.vgs, Quantity::IdPerW);
        const double gm_id = interp(lut, s.l, s.vgs, Quantity::GmOverId);
        EXPECT_NEAR(gm_id * i_d / gm, 1.0, 1e-2);
        // Rounding W up by at most one grid step.
        EXPECT_GE(idw * s.w, i_d * (1.0 - 1e-9));
        EXPECT_LE(idw * s.w, i_d * 1.01 + idw * 10e-9);
        const double gds = gm_id * i_d / interp(lut, s.l, s.vgs, Quantity::GmOverGds);
        EXPECT_LE(gds, gds_max * (1.0 + 1e-6));
    }
}

TEST(SizeDevice, AboveCeilingIsInfeasible) {
    EXPECT_THROW(size_device(nmos_lut(), 30e-6, 1e-6, 1.0), InfeasibleTarget);
    EXPECT_THROW(size_device(pmos_lut(), 30e-6, 1e-6, 1.0), InfeasibleTarget);
}

TEST(ActiveLoadCheck, Verdicts) {
    const auto& lut = nmos_lut();
    const double l = lut.l_grid()[2];
    const double vgs = 0.4;
    const double actual = interp(lut, l, vgs, Quantity::GmOverId);
    EXPECT_TRUE(std::holds_alternative<Accept>(active_load_check(lut, vgs, l, actual)));
    EXPECT_TRUE(std::holds_alternative<Accept>(active_load_check(lut, vgs, l, actual * 1.2)));
    const auto v = active_load_check(lut, vgs, l, actual * 0.5);
    ASSERT_TRUE(std::holds_alternative<Reassess>(v));
    EXPECT_EQ(std::get<Reassess>(v).gm_id, actual);
    EXPECT_THROW(active_load_check(lut, 0.95, l, 10.0), RangeError);
}

TEST(TailRequirement, Proportionality) {
    const double a = tail_requirement(1000.0, 345e-6, 2e-6, 3e-6, 170e-6);
    EXPECT_DOUBLE_EQ(tail_requirement(2000.0, 345e-6, 2e-6, 3e-6, 170e-6), a / 2.0);
}

TEST(TailRequirement, ReferenceCmrrInversion) {
    const double cmrr = std::pow(10.0, 68.0 / 20.0);
    EXPECT_NEAR(cmrr, 2512.0, 0.5);
    const double gm12 = 345.2e-6, gds12 = 1.726e-6, gds34 = 1.726e-6;
    const double gm34 = 10.0 * 8.24e-6;  // load at its initial gm/id
    const double gds5 = tail_requirement(cmrr, gm12, gds12, gds34, gm34);
    ASSERT_TRUE(std::isfinite(gds5));
    ASSERT_GT(gds5, 0.0);
    // Forward CMRR with R_ss = 1/gds5.
    const double forward = gm12 / (gds12 + gds34) * 2.0 * gm34 * (1.0 / gds5);
    EXPECT_NEAR(forward / cmrr, 1.0, 1e-12);
}

TEST(SecondStageCurrent, ReferenceBound) {
    const double bound = 0.916e-12 / (2.0 * (kCload + 0.916e-12));
    EXPECT_NEAR(bound / 0.0931, 1.0, 1e-2);
    const double i6 = second_stage_current(8.24e-6, 0.916e-12, kCload);
    EXPECT_NEAR(i6 / 88.5e-6, 1.0, 1e-2);
    EXPECT_NEAR((8.24e-6 / i6) / bound, 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(second_stage_current(8.24e-6, 0.916e-12, 0.0), 2.0 * 8.24e-6);
}

TEST(PhaseMargin, Limits) {
    EXPECT_DOUBLE_EQ(phase_margin(0.0, 1e-6, 10e-6, 4e-12, 1e-12), 90.0);
    EXPECT_NEAR(phase_margin(10.0, 1e-6, 10e-6, 1e-12, 1e-12), 0.0, 1e-12);
}

TEST(PhaseMargin, ReferenceValue) {
    const double ratio = 0.0931, cl_over_cc = 4.368, alpha = 1.05;
    const double oracle = 90.0 - deg_atan(alpha * ratio * cl_over_cc) - deg_atan(alpha * ratio);
    const double pm = phase_margin(alpha, ratio, 1.0, cl_over_cc, 1.0);
    EXPECT_NEAR(pm, oracle, 1e-12);
    EXPECT_NEAR(pm, 61.3, 0.2);
}

TEST(PhaseMargin, StrictlyDecreasing) {
    auto g = testing::rng(5);
    for (int k = 0; k < 1000; ++k) {
        const double a = testing::log_uniform(g, 1e-3, 1e2);
        const double i1 = testing::log_uniform(g, 1e-7, 1e-4);
        const double i6 = testing::log_uniform(g, 1e-6, 1e-3);
        const double cl = testing::log_uniform(g, 1e-13, 1e-11);
        const double cc = testing::log_uniform(g, 1e-13, 1e-11);
        const double pm = phase_margin(a, i1, i6, cl, cc);
        EXPECT_LT(phase_margin(a * 1.01, i1, i6, cl, cc), pm);
        EXPECT_LT(phase_margin(a, i1 * 1.01, i6, cl, cc), pm);
        EXPECT_LT(phase_margin(a, i1, i6, cl * 1.01, cc), pm);
    }
}

TEST(SolveAlpha, ReferenceValue) {
    const double alpha = solve_alpha(61.3, 0.0931, 1.0, 4.368, 1.0);
    EXPECT_NEAR(alpha / 1.05, 1.0, 1e-2);
    EXPECT_NEAR(phase_margin(alpha, 0.0931, 1.0, 4.368, 1.0), 61.3, 0.01);
}

TEST(SolveAlpha, NearNinetyGivesTinyAlpha) {
    EXPECT_LT(solve_alpha(90.0 - 1e-9, 0.0931, 1.0, 4.368, 1.0), 1e-9);
    EXPECT_THROW(solve_alpha(90.0, 0.0931, 1.0, 4.368, 1.0), Infeasible);
    EXPECT_THROW(solve_alpha(95.0, 0.0931, 1.0, 4.368, 1.0), Infeasible);
}

TEST(SolveAlpha, RoundTripProperty) {
    auto g = testing::rng(9);
    for (int k = 0; k < 1000; ++k) {
        const double pm = testing::uniform(g, 1.0, 89.0);
        const double i1 = testing::log_uniform(g, 1e-7, 1e-4);
        const double i6 = testing::log_uniform(g, 1e-6, 1e-3);
        const double cl = testing::log_uniform(g, 1e-13, 1e-11);
        const double cc = testing::log_uniform(g, 1e-13, 1e-11);
        const double a = solve_alpha(pm, i1, i6, cl, cc);
        const double back = phase_margin(a, i1, i6, cl, cc);
        EXPECT_NEAR(back, pm, 0.01);
        EXPECT_GE(back, pm);
    }
}

TEST(MirrorWidth, Rule) {
    EXPECT_DOUBLE_EQ(mirror_width(9e-6, 1e-6, 1e-6), 6e-6);
    EXPECT_DOUBLE_EQ(mirror_width(9e-6, 2e-6, 1e-6), 2.0 * mirror_width(9e-6, 1e-6, 1e-6));
    // Reference sizing: W5 = 450 um, W8 = 1.29 um.
    const double ratio = 3.0 * 1.29 / (2.0 * 450.0);
    EXPECT_NEAR(ratio, 0.0043, 1e-4);
    EXPECT_NEAR(mirror_width(450e-6, ratio * 16.5e-6, 16.5e-6), 1.29e-6, 1e-12);
}

TEST(Synthesize, ReferenceSpecProducesCompleteDesign) {
    const auto spec = AmpSpec::reference();
    const auto d = synthesize(spec, nmos_lut(), pmos_lut());

    for (std::size_t i = 0; i < kDeviceCount; ++i) {
        EXPECT_GT(d.devices[i].w, 0.0) << device_name(i);
        EXPECT_GE(d.devices[i].l, 65e-9) << device_name(i);
        EXPECT_LE(d.devices[i].l, 180e-9) << device_name(i);
    }
    EXPECT_EQ(d.devices[M1].w, d.devices[M2].w);
    EXPECT_EQ(d.devices[M1].l, d.devices[M2].l);
    EXPECT_EQ(d.devices[M3].w, d.devices[M4].w);
    EXPECT_EQ(d.devices[M3].l, d.devices[M4].l);
    EXPECT_EQ(d.devices[M5].l, d.devices[M7].l);
    EXPECT_EQ(d.devices[M5].l, d.devices[M8].l);

    EXPECT_NEAR(d.c_c / 0.916e-12, 1.0, 5e-3);
    EXPECT_DOUBLE_EQ(d.i_d5, 2.0 * d.i_d1);
    EXPECT_EQ(d.i_d7, d.i_d6);
    EXPECT_NEAR((d.i_d1 / d.i_d6) / (d.c_c / (2.0 * (spec.c_load + d.c_c))), 1.0, 1e-9);
    EXPECT_NEAR(d.id1_over_id6_bound / 0.0931, 1.0, 1e-2);
    EXPECT_NEAR(d.alpha * (d.gm6 / d.i_d6) / (d.gm12 / d.i_d1), 1.0, 1e-9);
    // Slew is a floor; the tail may carry more.
    EXPECT_GE(d.i_d5 / d.c_c, spec.slew_rate * (1.0 - 1e-12));
    EXPECT_LE(d.gm12 / d.i_d1, SynthOptions{}.input_gm_id_max * (1.0 + 1e-12));
    EXPECT_GE(d.active_load_rounds, 1);
    EXPECT_LE(d.active_load_rounds, 5);
}

TEST(Synthesize, ReEvaluationClosure) {
    const auto spec = AmpSpec::reference();
    const auto d = synthesize(spec, nmos_lut(), pmos_lut());
    struct Check {
        const DeviceLUT* lut;
        std::size_t dev;
        double vgs, i_d, gm;
    };
    const Check checks[] = {
        {&pmos_lut(), M1, d.vgs1, d.i_d1, d.gm12},
        {&nmos_lut(), M3, d.vgs34, d.i_d1, d.gm34},
        {&nmos_lut(), M6, d.vgs6, d.i_d6, d.gm6},
        {&pmos_lut(), M5, d.vgs5, d.i_d5, SynthOptions{}.mirror_gm_id * d.i_d5},
        {&pmos_lut(), M7, d.vgs5, d.i_d7, SynthOptions{}.mirror_gm_id * d.i_d7},
    };
    for (const auto& c : checks) {
        const auto& dev = d.devices[c.dev];
        const double id_back = interp(*c.lut, dev.l, c.vgs, Quantity::IdPerW) * dev.w;
        const double gm_back = interp(*c.lut, dev.l, c.vgs, Quantity::GmOverId) * c.i_d;
        const double rounding = interp(*c.lut, dev.l, c.vgs, Quantity::IdPerW) * 10e-9 / c.i_d;
        EXPECT_NEAR(id_back / c.i_d, 1.0, 0.01 + rounding) << device_name(c.dev);
        EXPECT_NEAR(gm_back / c.gm, 1.0, 0.01) << device_name(c.dev);
    }
}

TEST(Synthesize, ActiveLoadIterates) {
    const auto d = synthesize(AmpSpec::reference(), nmos_lut(), pmos_lut());
    // Starting guess of 10 1/V is below what the load reaches at M6's gate bias.
    EXPECT_EQ(d.active_load_rounds, 2);
    EXPECT_EQ(d.vgs34, d.vgs6);
}

TEST(Synthesize, ActiveLoadRoundCap) {
    SynthOptions opt;
    opt.active_load_max_rounds = 1;
    try {
        synthesize(AmpSpec::reference(), nmos_lut(), pmos_lut(), opt);
        FAIL() << "expected SynthesisError";
    } catch (const SynthesisError& e) {
        EXPECT_EQ(e.stage(), "M3/M4 active load");
    }
}

TEST(Synthesize, NearNinetyDegreesFailsAtSecondStage) {
    auto spec = AmpSpec::reference();
    spec.pm_target = 89.9;
    try {
        synthesize(spec, nmos_lut(), pmos_lut());
        FAIL() << "expected SynthesisError";
    } catch (const SynthesisError& e) {
        EXPECT_EQ(e.stage(), "M6 second stage");
    }
}

TEST(Synthesize, NoiseScalingLaw) {
    const auto base = AmpSpec::reference();
    auto scaled = base;
    scaled.noise_density = base.noise_density * 1.5;
    const auto a = synthesize(base, nmos_lut(), pmos_lut());
    const auto b = synthesize(scaled, nmos_lut(), pmos_lut());
    EXPECT_NEAR(b.gm12 / a.gm12, 1.0 / 2.25, 1e-12);
    EXPECT_NEAR(b.c_c / a.c_c, 1.0 / 2.25, 1e-12);
    EXPECT_NEAR(b.id1_over_id6_bound, b.c_c / (2.0 * (base.c_load + b.c_c)), 1e-15);
}

TEST(Synthesize, RejectsSwappedLuts) {
    EXPECT_THROW(synthesize(AmpSpec::reference(), pmos_lut(), nmos_lut()), SynthesisError);
}

TEST(Synthesize, DeterministicBytes) {
    const auto spec = AmpSpec::reference();
    const auto a = design_to_kv(synthesize(spec, nmos_lut(), pmos_lut())).str();
    const auto b = design_to_kv(synthesize(spec, nmos_lut(), pmos_lut())).str();
    EXPECT_EQ(a, b);
}

} // namespace
} // namespace gmid

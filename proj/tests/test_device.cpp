#include <cstring>
#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "gmid/device.hpp"
#include "gmid/errors.hpp"
#include "gmid/lut.hpp"
#include "test_support.hpp"

namespace gmid {
namespace {

DeviceParams nmos() { return DeviceParams::default_nmos(); }

TEST(Device, ThermalVoltageAt300K) {
    EXPECT_NEAR(thermal_voltage(300.0), 0.025852, 1e-6);
    EXPECT_THROW(thermal_voltage(0.0), InvalidArgument);
}

TEST(Device, WeakInversionApproachesCeiling) {
    auto p = nmos();
    const double vgs = p.vth0 - 10.0 * p.n * p.ut;
    const auto m = eval_device(p, vgs, p.vds_char, 100e-9);
    const double ceiling = 1.0 / (p.n * p.ut);
    EXPECT_NEAR(ceiling, 29.75, 0.01);
    EXPECT_NEAR(m.gm_over_id / ceiling, 1.0, 0.02);
    EXPECT_LT(m.gm_over_id, ceiling);
}

TEST(Device, StrongInversionAsymptote) {
    auto p = nmos();
    const auto m = eval_device(p, p.vth0 + 0.4, p.vds_char, 100e-9);
    EXPECT_NEAR(m.gm_over_id, 5.0, 0.05 * 5.0);
}

TEST(Device, ZeroLambdaGivesInfiniteIntrinsicGain) {
    auto p = nmos();
    p.lambda0 = 0.0;
    const auto m = eval_device(p, 0.5, 0.45, 100e-9);
    EXPECT_TRUE(std::isinf(m.gm_over_gds));
    EXPECT_GT(m.id_per_w, 0.0);
}

TEST(Device, IntrinsicGainIdentity) {
    auto p = nmos();
    for (double l : {65e-9, 120e-9, 180e-9}) {
        const auto m = eval_device(p, 0.45, 0.3, l);
        const double lam = p.lambda0 / l;
        EXPECT_DOUBLE_EQ(m.gm_over_gds, m.gm_over_id * (1.0 + lam * 0.3) / lam);
    }
}

TEST(Device, RejectsNonPositiveLengthOrVds) {
    auto p = nmos();
    EXPECT_THROW(eval_device(p, 0.5, 0.45, 0.0), InvalidArgument);
    EXPECT_THROW(eval_device(p, 0.5, 0.45, -1e-9), InvalidArgument);
    EXPECT_THROW(eval_device(p, 0.5, 0.0, 100e-9), InvalidArgument);
}

TEST(Device, ValidateChecksModelValidity) {
    auto p = nmos();
    EXPECT_NO_THROW(p.validate(65e-9, 180e-9));
    p.lambda0 = 1e-6;  // lambda(65nm)*0.45 ~ 6.9
    EXPECT_THROW(p.validate(65e-9, 180e-9), InvalidArgument);
    p = nmos();
    p.n = 0.9;
    EXPECT_THROW(p.validate(65e-9, 180e-9), InvalidArgument);
}

TEST(Device, Deterministic) {
    auto p = DeviceParams::default_pmos();
    const auto a = eval_device(p, 0.4123, 0.45, 97e-9);
    const auto b = eval_device(p, 0.4123, 0.45, 97e-9);
    EXPECT_EQ(std::memcmp(&a, &b, sizeof a), 0);
}

// Oracle: central difference of id/W against the closed-form gm.
TEST(Device, AnalyticGmMatchesFiniteDifference) {
    for (const auto& p : {DeviceParams::default_nmos(), DeviceParams::default_pmos()}) {
        const auto& lut = p.polarity == Polarity::N ? testing::nmos_lut() : testing::pmos_lut();
        for (std::size_t il = 0; il < lut.n_l(); ++il) {
            for (std::size_t iv = 1; iv + 1 < lut.n_vgs(); ++iv) {
                const double l = lut.l_grid()[il];
                const double vgs = lut.vgs_grid()[iv];
                const double h = 1e-6;
                const double up = eval_device(p, vgs + h, p.vds_char, l).id_per_w;
                const double dn = eval_device(p, vgs - h, p.vds_char, l).id_per_w;
                const auto m = eval_device(p, vgs, p.vds_char, l);
                const double gm_fd = (up - dn) / (2.0 * h);
                const double gm = m.gm_over_id * m.id_per_w;
                EXPECT_NEAR(gm_fd / gm, 1.0, 1e-3) << "L=" << l << " vgs=" << vgs;
            }
        }
    }
}

TEST(GenerateLut, DefaultGridShape) {
    const auto& lut = testing::pmos_lut();
    ASSERT_EQ(lut.n_l(), 10u);
    ASSERT_EQ(lut.n_vgs(), 10u);
    EXPECT_DOUBLE_EQ(lut.l_grid().front(), 65e-9);
    EXPECT_DOUBLE_EQ(lut.l_grid().back(), 180e-9);
    EXPECT_DOUBLE_EQ(lut.vgs_grid().front(), 0.1);
    EXPECT_DOUBLE_EQ(lut.vgs_grid().back(), 0.9);
    EXPECT_DOUBLE_EQ(lut.vds_char(), 0.45);
    EXPECT_EQ(lut.polarity(), Polarity::P);
    for (std::size_t i = 1; i + 1 < lut.n_l(); ++i) {
        const double step = lut.l_grid()[i + 1] - lut.l_grid()[i];
        EXPECT_NEAR(step, (180e-9 - 65e-9) / 9.0, 1e-20);
    }
}

TEST(GenerateLut, MinimalGridCornersMatchDirectEvaluation) {
    auto p = nmos();
    SweepGrid g{65e-9, 180e-9, 2, 0.1, 0.9, 2};
    const auto lut = generate_lut(p, g);
    ASSERT_EQ(lut.n_l(), 2u);
    ASSERT_EQ(lut.n_vgs(), 2u);
    for (std::size_t il = 0; il < 2; ++il) {
        for (std::size_t iv = 0; iv < 2; ++iv) {
            const auto m = eval_device(p, lut.vgs_grid()[iv], p.vds_char, lut.l_grid()[il]);
            EXPECT_EQ(lut.at(Quantity::GmOverId, il, iv), m.gm_over_id);
            EXPECT_EQ(lut.at(Quantity::GmOverGds, il, iv), m.gm_over_gds);
            EXPECT_EQ(lut.at(Quantity::IdPerW, il, iv), m.id_per_w);
        }
    }
}

TEST(GenerateLut, ColumnsMonotone) {
    for (const auto* lut : {&testing::nmos_lut(), &testing::pmos_lut()}) {
        for (std::size_t il = 0; il < lut->n_l(); ++il) {
            auto gmid = lut->row(Quantity::GmOverId, il);
            auto idw = lut->row(Quantity::IdPerW, il);
            for (std::size_t j = 1; j < gmid.size(); ++j) {
                EXPECT_LT(gmid[j], gmid[j - 1]);
                EXPECT_GT(idw[j], idw[j - 1]);
            }
        }
    }
}

TEST(GenerateLut, IntrinsicGainRisesWithLength) {
    const auto& lut = testing::nmos_lut();
    for (double gm_id : {6.0, 12.0, 20.0, 28.0}) {
        double prev = 0.0;
        for (double l : lut.l_grid()) {
            const double vgs = invert_gmid(lut, l, gm_id);
            const double g = interp(lut, l, vgs, Quantity::GmOverGds);
            EXPECT_GT(g, prev) << "gm/id=" << gm_id << " L=" << l;
            prev = g;
        }
    }
}

TEST(GenerateLut, RejectsBadRanges) {
    auto p = nmos();
    EXPECT_THROW(generate_lut(p, SweepGrid{180e-9, 65e-9, 10, 0.1, 0.9, 10}), InvalidArgument);
    EXPECT_THROW(generate_lut(p, SweepGrid{65e-9, 180e-9, 10, 0.9, 0.1, 10}), InvalidArgument);
    EXPECT_THROW(generate_lut(p, SweepGrid{65e-9, 180e-9, 1, 0.1, 0.9, 10}), InvalidArgument);
    EXPECT_THROW(generate_lut(p, SweepGrid{65e-9, 180e-9, 10, 0.1, 0.9, 1}), InvalidArgument);
}

} // namespace
} // namespace gmid

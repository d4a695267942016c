#include "doctest.h"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "squidgate/builders.hpp"
#include "squidgate/errors.hpp"
#include "squidgate/schedule.hpp"
#include "squidgate/simulate.hpp"
#include "squidgate/verification.hpp"

using namespace squidgate;
constexpr double kPi = std::numbers::pi;
const std::complex<double> I1{0.0, 1.0};

namespace {

bool contains(const std::vector<int>& v, int x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

TEST_CASE("step counts of the gate builders") {
    auto p6 = DeviceParams::defaults(6);
    CHECK(build_three_qubit_gate(p6, kPi / 2, kPi / 4).step_count() == 10);
    for (int n = 2; n <= 6; ++n) {
        CHECK(build_merged_gate(p6, qft_phase_list(n)).step_count() == 2 * n + 1);
        CHECK(build_ntcp_gate(p6, n).step_count() == 5);
        CHECK(build_decomposed_gate(p6, qft_phase_list(n)).step_count() == 5 * (n - 1));
    }
    CHECK(build_two_qubit_gate(p6, 1.0).step_count() == 5);
    CHECK(build_hadamard(p6, 3, 2).step_count() == 3);
    // 3 Hadamards (3 steps each) + 5-step and 7-step phase cores; retune-only
    // groups do not count as protocol steps
    CHECK(build_qft3(p6).step_count() == 21);
    CHECK(build_qft3(p6).steps.size() == 23);
}

// Per-step state of the ten-step three-SQUID gate (theta2 = pi/2, theta3 = pi/4)
// for every computational input: exactly one basis amplitude at every step.
TEST_CASE("ten-step gate walks the expected single-amplitude trajectory") {
    struct Point {
        std::complex<double> coeff;
        std::array<int, 3> levels;
        int photons;
    };
    const std::complex<double> u = std::exp(I1 * kPi / 4.0);   // e^{i theta3}
    const std::complex<double> w = I1;                         // e^{i theta2}
    const std::complex<double> wu = w * u;                     // e^{i(theta2+theta3)}

    // rows indexed by input bits q1 q2 q3; ten columns = state after step k
    const std::array<std::array<Point, 10>, 8> expected{{
        {{{1, {0, 0, 0}, 0}, {-1, {2, 0, 0}, 0}, {-1, {2, 0, 0}, 0}, {-1, {2, 0, 0}, 0},
          {-1, {2, 0, 0}, 0}, {-1, {2, 0, 0}, 0}, {-1, {2, 0, 0}, 0}, {-1, {2, 0, 0}, 0},
          {1, {0, 0, 0}, 0}, {1, {0, 0, 0}, 0}}},
        {{{1, {0, 0, 1}, 0}, {-1, {2, 0, 1}, 0}, {-1, {2, 0, 1}, 0}, {-1, {2, 0, 1}, 0},
          {-1, {2, 0, 1}, 0}, {-1, {2, 0, 2}, 0}, {-1, {2, 0, 2}, 0}, {-1, {2, 0, 1}, 0},
          {1, {0, 0, 1}, 0}, {1, {0, 0, 1}, 0}}},
        {{{1, {0, 1, 0}, 0}, {-1, {2, 1, 0}, 0}, {-1, {2, 2, 0}, 0}, {-1, {2, 2, 0}, 0},
          {-1, {2, 1, 0}, 0}, {-1, {2, 1, 0}, 0}, {-1, {2, 1, 0}, 0}, {-1, {2, 1, 0}, 0},
          {1, {0, 1, 0}, 0}, {1, {0, 1, 0}, 0}}},
        {{{1, {0, 1, 1}, 0}, {-1, {2, 1, 1}, 0}, {-1, {2, 2, 1}, 0}, {-1, {2, 2, 1}, 0},
          {-1, {2, 1, 1}, 0}, {-1, {2, 1, 2}, 0}, {-1, {2, 1, 2}, 0}, {-1, {2, 1, 1}, 0},
          {1, {0, 1, 1}, 0}, {1, {0, 1, 1}, 0}}},
        {{{1, {2, 0, 0}, 1}, {1, {0, 0, 0}, 1}, {1, {0, 0, 0}, 1}, {1, {0, 0, 0}, 1},
          {1, {0, 0, 0}, 1}, {1, {0, 0, 0}, 1}, {1, {0, 0, 0}, 1}, {1, {0, 0, 0}, 1},
          {1, {2, 0, 0}, 1}, {1, {1, 0, 0}, 0}}},
        {{{1, {2, 0, 1}, 1}, {1, {0, 0, 1}, 1}, {1, {0, 0, 1}, 1}, {1, {0, 0, 1}, 1},
          {1, {0, 0, 1}, 1}, {1, {0, 0, 2}, 1}, {u, {0, 0, 2}, 1}, {u, {0, 0, 1}, 1},
          {u, {2, 0, 1}, 1}, {u, {1, 0, 1}, 0}}},
        {{{1, {2, 1, 0}, 1}, {1, {0, 1, 0}, 1}, {1, {0, 2, 0}, 1}, {w, {0, 2, 0}, 1},
          {w, {0, 1, 0}, 1}, {w, {0, 1, 0}, 1}, {w, {0, 1, 0}, 1}, {w, {0, 1, 0}, 1},
          {w, {2, 1, 0}, 1}, {w, {1, 1, 0}, 0}}},
        {{{1, {2, 1, 1}, 1}, {1, {0, 1, 1}, 1}, {1, {0, 2, 1}, 1}, {w, {0, 2, 1}, 1},
          {w, {0, 1, 1}, 1}, {w, {0, 1, 2}, 1}, {wu, {0, 1, 2}, 1}, {wu, {0, 1, 1}, 1},
          {wu, {2, 1, 1}, 1}, {wu, {1, 1, 1}, 0}}},
    }};

    auto params = DeviceParams::defaults(3);
    auto schedule = build_three_qubit_gate(params, kPi / 2, kPi / 4);
    auto space = make_space(3, 2);
    SimOptions opts;
    opts.collect_trace = true;

    for (int x = 0; x < 8; ++x) {
        CAPTURE(x);
        auto input = basis_state(space, {(x >> 2) & 1, (x >> 1) & 1, x & 1}, 0);
        auto result = simulate_state(schedule, input, opts);
        REQUIRE(result.trace.size() == 10);
        for (int s = 0; s < 10; ++s) {
            CAPTURE(s);
            CHECK(result.trace[s].label == "step-" + std::to_string(s + 1));
            const Point& pt = expected[x][s];
            auto want = basis_state(space, {pt.levels[0], pt.levels[1], pt.levels[2]},
                                    pt.photons);
            want.amplitudes *= pt.coeff;
            CHECK(max_deviation(result.trace[s].state, want) < 1e-10);
        }
    }
}

TEST_CASE("merged layout reproduces the sequential ten-step unitary") {
    auto params = DeviceParams::defaults(3);
    auto space = make_space(3, 2);
    auto seq = simulate_unitary(build_three_qubit_gate(params, kPi / 2, kPi / 4), space);
    auto merged = simulate_unitary(build_merged_gate(params, {kPi / 2, kPi / 4}), space);
    CHECK((seq.unitary.matrix - merged.unitary.matrix).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("decomposed chain realizes the same logical gate as the merged layout") {
    auto params = DeviceParams::defaults(4);
    auto space = make_space(4, 2);
    std::vector<double> thetas{kPi / 2, kPi / 4, kPi / 8};
    auto merged = logical_restriction(simulate_unitary(build_merged_gate(params, thetas), space).unitary);
    auto chain = logical_restriction(simulate_unitary(build_decomposed_gate(params, thetas), space).unitary);
    auto report = compare_to_ideal(chain, merged);
    CHECK(report.fidelity > 1.0 - 1e-12);
    CHECK(report.max_deviation < 1e-10);
}

TEST_CASE("two-qubit gate: controlled phase on |11> only") {
    auto params = DeviceParams::defaults(2);
    auto space = make_space(2, 2);
    double theta = 0.7;
    auto logical = logical_restriction(simulate_unitary(build_two_qubit_gate(params, theta), space).unitary);
    auto report = compare_to_ideal(logical, ideal_phase_gate(2, {theta}));
    CHECK(report.fidelity > 1.0 - 1e-12);
    CHECK(report.max_deviation < 1e-10);
}

TEST_CASE("theta = 0 builds a zero-length wait and acts as the identity") {
    auto params = DeviceParams::defaults(2);
    auto space = make_space(2, 2);
    auto logical = logical_restriction(simulate_unitary(build_two_qubit_gate(params, 0.0), space).unitary);
    CHECK((logical - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("controlled phases outside [0, 2pi) are rejected") {
    auto params = DeviceParams::defaults(3);
    CHECK_THROWS_AS(build_two_qubit_gate(params, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(build_two_qubit_gate(params, 2.0 * kPi), std::invalid_argument);
    CHECK_THROWS_AS(build_three_qubit_gate(params, kPi, 7.0), std::invalid_argument);
    CHECK_THROWS_AS(build_merged_gate(params, {kPi, -1e-9}), std::invalid_argument);
}

TEST_CASE("truth-table phases are invariant under device rate rescaling") {
    auto base = DeviceParams::defaults(3);
    auto fast = base;
    for (auto& sq : fast.squids) {
        sq.omega_02 *= 3.0;
        sq.omega_12 *= 3.0;
        sq.omega_13 *= 3.0;
        sq.omega_03 *= 3.0;
        sq.g *= 2.0;
        sq.delta_c *= 2.0;  // keeps delta/g above the dispersive floor
    }
    auto space = make_space(3, 2);
    auto t_base = truth_table(build_three_qubit_gate(base, kPi / 2, kPi / 4), space);
    auto t_fast = truth_table(build_three_qubit_gate(fast, kPi / 2, kPi / 4), space);
    REQUIRE(t_base.rows.size() == 8);
    for (int r = 0; r < 8; ++r) {
        double diff = std::remainder(t_base.rows[r].phase - t_fast.rows[r].phase, 2.0 * kPi);
        CHECK(std::abs(diff) < 1e-10);
        CHECK(t_fast.rows[r].diagonal_weight == doctest::Approx(1.0).epsilon(1e-12));
    }
    // but the schedule got shorter
    CHECK(build_three_qubit_gate(fast, kPi / 2, kPi / 4).duration() <
          build_three_qubit_gate(base, kPi / 2, kPi / 4).duration());
}

TEST_CASE("phase-flip gate: joint wait, five steps, correct diagonal") {
    auto params = DeviceParams::defaults(3);
    auto space = make_space(3, 2);
    auto schedule = build_ntcp_gate(params, 3);
    CHECK(schedule.step_count() == 5);
    auto logical = logical_restriction(simulate_unitary(schedule, space).unitary);
    auto report = compare_to_ideal(logical, ideal_phase_gate(3, {kPi, kPi}));
    CHECK(report.fidelity > 1.0 - 1e-12);
    // sign pattern: minus exactly when q1 = 1 and an odd number of targets are 1
    CHECK(std::abs(logical(5, 5) + 1.0) < 1e-10);   // |101>
    CHECK(std::abs(logical(6, 6) + 1.0) < 1e-10);   // |110>
    CHECK(std::abs(logical(7, 7) - 1.0) < 1e-10);   // |111>: both phases cancel
    CHECK(std::abs(logical(3, 3) - 1.0) < 1e-10);   // control 0: untouched
}

TEST_CASE("phase-flip gate rejects targets with unequal delta_c/g^2") {
    auto params = DeviceParams::defaults(3);
    params.squids[2].delta_c *= 1.01;
    CHECK_THROWS_AS(build_ntcp_gate(params, 3), ConstraintError);
    try {
        build_ntcp_gate(params, 3);
    } catch (const ConstraintError& e) {
        CHECK(contains(e.squids, 2));
        CHECK(contains(e.squids, 3));
        CHECK(std::string(e.what()).find("delta_c/g^2") != std::string::npos);
    }
}

TEST_CASE("multiphase gate needs theta * delta_c / g^2 equal across targets") {
    std::vector<double> thetas{kPi / 2, kPi / 4};
    SUBCASE("uniform detunings cannot host distinct phases in one slot") {
        auto params = DeviceParams::defaults(3);
        CHECK_THROWS_AS(build_multiphase_gate(params, thetas), ConstraintError);
    }
    SUBCASE("detunings chosen in inverse proportion to theta work exactly") {
        auto params = DeviceParams::defaults(3);
        params.squids[1].delta_c = 1.5e10;  // target 2: theta2 * delta2 = 0.75e10 pi
        params.squids[2].delta_c = 3.0e10;  // target 3: theta3 * delta3 = 0.75e10 pi
        auto schedule = build_multiphase_gate(params, thetas);
        CHECK(schedule.step_count() == 5);
        auto space = make_space(3, 2);
        auto logical = logical_restriction(simulate_unitary(schedule, space).unitary);
        auto report = compare_to_ideal(logical, ideal_phase_gate(3, thetas));
        CHECK(report.fidelity > 1.0 - 1e-12);
        CHECK(report.max_deviation < 1e-10);
    }
}

TEST_CASE("merged slots require matching Rabi frequencies") {
    auto params = DeviceParams::defaults(3);
    params.squids[0].omega_02 = 4.0e10;  // control shelve now slower than target open
    try {
        build_merged_gate(params, {kPi / 2, kPi / 4});
        FAIL("expected ConstraintError");
    } catch (const ConstraintError& e) {
        CHECK(contains(e.squids, 1));
        CHECK(contains(e.squids, 2));
    }
    // the sequential layout has no shared slots and still builds
    CHECK_NOTHROW(build_three_qubit_gate(params, kPi / 2, kPi / 4));
}

TEST_CASE("Hadamard pulses produce the real 2x2 Hadamard and square to identity") {
    auto params = DeviceParams::defaults(1);
    auto space = make_space(1, 2);
    auto h = simulate_unitary(build_hadamard(params, 1, 1), space).unitary;
    auto logical = logical_restriction(h);
    Eigen::MatrixXcd want(2, 2);
    want << 1, 1, 1, -1;
    want /= std::sqrt(2.0);
    CHECK((logical - want).cwiseAbs().maxCoeff() < 1e-12);
    auto hh = compose(h, h);
    CHECK((hh.matrix - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("schedule JSON round trip is byte-identical") {
    auto params = DeviceParams::defaults(4);
    for (const Schedule& s : {build_three_qubit_gate(params, kPi / 2, kPi / 4),
                              build_merged_gate(params, {1.0, 2.0, 3.0}),
                              build_ntcp_gate(params, 4), build_qft3(params)}) {
        auto j = schedule_to_json(s);
        auto back = schedule_to_json(schedule_from_json(j));
        CHECK(j.dump() == back.dump());
    }
}

TEST_CASE("schedule_from_json validates structure") {
    auto params = DeviceParams::defaults(2);
    auto j = schedule_to_json(build_two_qubit_gate(params, 1.0));
    SUBCASE("missing field") {
        j.erase("steps");
        CHECK_THROWS_AS(schedule_from_json(j), std::invalid_argument);
    }
    SUBCASE("squid index out of range") {
        j["steps"][0]["actions"][0]["squid"] = 9;
        CHECK_THROWS_AS(schedule_from_json(j), std::invalid_argument);
    }
    SUBCASE("unknown action type") {
        j["steps"][0]["actions"][0]["type"] = "nap";
        CHECK_THROWS_AS(schedule_from_json(j), std::invalid_argument);
    }
    SUBCASE("negative duration") {
        j["steps"][0]["actions"][0]["duration_s"] = -1.0;
        CHECK_THROWS_AS(schedule_from_json(j), std::invalid_argument);
    }
}

TEST_CASE("simultaneous slot validation") {
    auto mk_pulse = [](int squid, double duration) {
        return PulseStep{MicrowavePulse{squid, 0, 1, 1e10, 0.0, duration}};
    };
    Schedule s;
    s.name = "slot-test";
    s.n_squids = 3;

    SUBCASE("duplicate SQUID") {
        s.steps = {{"x", {PulseStep{Simultaneous{{mk_pulse(1, 1e-10), mk_pulse(1, 1e-10)}}}}}};
        CHECK_THROWS_AS(validate_schedule(s), ConstraintError);
    }
    SUBCASE("mismatched durations carry the offending SQUIDs") {
        s.steps = {{"x", {PulseStep{Simultaneous{{mk_pulse(1, 1e-10), mk_pulse(2, 2e-10)}}}}}};
        try {
            validate_schedule(s);
            FAIL("expected ConstraintError");
        } catch (const ConstraintError& e) {
            CHECK(contains(e.squids, 1));
            CHECK(contains(e.squids, 2));
        }
    }
    SUBCASE("single-member slot") {
        s.steps = {{"x", {PulseStep{Simultaneous{{mk_pulse(1, 1e-10)}}}}}};
        CHECK_THROWS_AS(validate_schedule(s), std::invalid_argument);
    }
    SUBCASE("nested slot") {
        Simultaneous inner{{mk_pulse(1, 1e-10), mk_pulse(2, 1e-10)}};
        s.steps = {{"x", {PulseStep{Simultaneous{{PulseStep{inner}, mk_pulse(3, 1e-10)}}}}}};
        CHECK_THROWS_AS(validate_schedule(s), std::invalid_argument);
    }
    SUBCASE("retune inside a slot") {
        s.steps = {{"x",
                    {PulseStep{Simultaneous{{mk_pulse(1, 1e-10),
                                             PulseStep{RetuneMarker{2, CavityRole::Resonant}}}}}}}};
        CHECK_THROWS_AS(validate_schedule(s), std::invalid_argument);
    }
    SUBCASE("slot duration is the member duration") {
        Schedule ok;
        ok.name = "ok";
        ok.n_squids = 2;
        ok.steps = {{"x", {PulseStep{Simultaneous{{mk_pulse(1, 1e-10), mk_pulse(2, 1e-10)}}}}}};
        CHECK_NOTHROW(validate_schedule(ok));
        CHECK(ok.duration() == doctest::Approx(1e-10));
    }
}

TEST_CASE("cavity role rules are enforced while simulating") {
    auto space = make_space(2, 2);
    auto vac = basis_state(space, {0, 0}, 0);

    SUBCASE("resonant wait needs the resonant role") {
        Schedule s;
        s.name = "r";
        s.n_squids = 2;
        s.steps = {{"w", {PulseStep{ResonantWait{1, 3e9, 1e-10}}}}};
        CHECK_THROWS_AS(simulate_state(s, vac), RoleConflictError);
    }
    SUBCASE("dispersive wait needs the dispersive role") {
        Schedule s;
        s.name = "d";
        s.n_squids = 2;
        s.initial_roles = {{1, CavityRole::Resonant}};
        s.steps = {{"w", {PulseStep{DispersiveWait{1, 3e9, 3e10, 1e-10}}}}};
        CHECK_THROWS_AS(simulate_state(s, vac), RoleConflictError);
    }
    SUBCASE("two SQUIDs may not start resonant") {
        Schedule s;
        s.name = "rr";
        s.n_squids = 2;
        s.initial_roles = {{1, CavityRole::Resonant}, {2, CavityRole::Resonant}};
        CHECK_THROWS_AS(simulate_state(s, vac), RoleConflictError);
    }
    SUBCASE("retuning a second SQUID onto resonance is rejected") {
        Schedule s;
        s.name = "rt";
        s.n_squids = 2;
        s.initial_roles = {{1, CavityRole::Resonant}};
        s.steps = {{"t", {PulseStep{RetuneMarker{2, CavityRole::Resonant}}}}};
        CHECK_THROWS_AS(simulate_state(s, vac), RoleConflictError);
    }
    SUBCASE("handing the resonance over via retunes is fine") {
        Schedule s;
        s.name = "hand-over";
        s.n_squids = 2;
        s.initial_roles = {{1, CavityRole::Resonant}};
        s.steps = {{"t",
                    {PulseStep{RetuneMarker{1, CavityRole::Decoupled}},
                     PulseStep{RetuneMarker{2, CavityRole::Resonant}}}},
                   {"w", {PulseStep{ResonantWait{2, 3e9, 1e-10}}}}};
        CHECK_NOTHROW(simulate_state(s, vac));
    }
}

TEST_CASE("population on a truncation boundary state aborts the simulation") {
    Schedule s;
    s.name = "leak";
    s.n_squids = 1;
    s.initial_roles = {{1, CavityRole::Resonant}};
    s.steps = {{"w", {PulseStep{ResonantWait{1, 3e9, 1e-10}}}}};

    auto tight = make_space(1, 2);
    auto boundary = basis_state(tight, {3}, 1);  // |3, N_c-1>: partner state cut off
    try {
        simulate_state(s, boundary);
        FAIL("expected TruncationLeakError");
    } catch (const TruncationLeakError& e) {
        CHECK(e.leaked == doctest::Approx(1.0));
        CHECK(std::string(e.what()).find("SQUID 1") != std::string::npos);
    }

    SUBCASE("a larger cavity removes the problem") {
        auto roomy = make_space(1, 3);
        CHECK_NOTHROW(simulate_state(s, basis_state(roomy, {3}, 1)));
    }
    SUBCASE("the tolerance knob is honoured") {
        SimOptions opts;
        opts.leak_tolerance = 2.0;  // accept anything
        CHECK_NOTHROW(simulate_state(s, boundary, opts));
    }
    SUBCASE("the exact-dispersive wait also counts as cavity-coupled") {
        Schedule d;
        d.name = "leak-d";
        d.n_squids = 1;
        d.initial_roles = {{1, CavityRole::Dispersive}};
        d.steps = {{"w", {PulseStep{DispersiveWait{1, 3e9, 3e10, 1e-10}}}}};
        SimOptions exact;
        exact.mode = SimMode::ExactDispersive;
        CHECK_THROWS_AS(simulate_state(d, boundary, exact), TruncationLeakError);
        CHECK_NOTHROW(simulate_state(d, boundary));  // analytic wait is diagonal, harmless
    }
}

TEST_CASE("exact-dispersive mode exposes the finite-detuning error of the gate") {
    auto params = DeviceParams::defaults(3);
    auto schedule = build_three_qubit_gate(params, kPi / 2, kPi / 4);
    auto space = make_space(3, 2);
    SimOptions exact;
    exact.mode = SimMode::ExactDispersive;

    auto logical = logical_restriction(simulate_unitary(schedule, space, exact).unitary);
    auto report = compare_to_ideal(logical, ideal_phase_gate(3, {kPi / 2, kPi / 4}));
    // frozen value for delta = 10g; the analytic mode gives exactly 1
    CHECK(report.fidelity == doctest::Approx(0.992696158493).epsilon(1e-9));
    CHECK(report.fidelity < 1.0 - 1e-4);

    auto table = truth_table(schedule, space, exact);
    const double p_peak = dispersive_leak_peak(params.squid(2).g, params.squid(2).delta_c);
    for (const auto& row : table.rows) {
        int waits = (row.input[0] == 1) ? (row.input[1] + row.input[2]) : 0;
        if (waits == 0) {
            CHECK(row.leakage < 1e-10);  // no populated detuned segment on this input
        } else {
            CHECK(row.leakage > 1e-4);       // the residual coupling is visible ...
            CHECK(row.leakage < 1.05 * waits * p_peak);  // ... and bounded by the peak transfer
            CHECK(row.flagged);
        }
    }
}

TEST_CASE("simulation forwards dispersive warnings") {
    auto params = DeviceParams::defaults(3);
    params.squids[1].delta_c = 4.0 * params.squids[1].g;  // below the 5g guideline
    params.squids[2].delta_c = 4.0 * params.squids[2].g;
    auto schedule = build_three_qubit_gate(params, kPi / 2, kPi / 4);
    auto space = make_space(3, 2);
    auto result = simulate_unitary(schedule, space);
    REQUIRE(!result.warnings.empty());
    CHECK(result.warnings[0].find("SQUID") != std::string::npos);
}

TEST_CASE("retune markers cost nothing unless a latency is given") {
    auto params = DeviceParams::defaults(3);
    auto qft = build_qft3(params);
    const double bare = qft.duration();
    CHECK(qft.duration(1e-9) == doctest::Approx(bare + 3e-9));  // three markers in the circuit
}

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gencheck.channel import PauliError, sample_depolarizing, syndrome
from gencheck.codes import build_hgp
from gencheck.decode import (
    Decoder,
    DecoderConfig,
    boxplus,
    gmbp4_decode,
    hard_decision,
    hybrid_decode,
    init_priors,
    mbp4_decode,
    osd1,
    osd1_full,
    quaternary_to_binary,
    relay_bp4,
    soft_weight,
    symplectic_reliabilities,
)
from gencheck.decode.engine import MODE_BOXPLUS, MODE_SISO, DecoderGraph
from gencheck.decode.messages import pauli_string, pauli_to_symplectic, symplectic_to_pauli
from gencheck.gf2 import BinaryMatrix
from gencheck.grouping import make_groupings, trivial_grouping

from oracles import reference_bp4, tanh_boxplus

REP2 = BinaryMatrix.from_strings(["11"])


def noisy_syndromes(code, eps, count, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        e = sample_depolarizing(code.n, eps, rng)
        yield e, syndrome(code, e)


# scalar rules --------------------------------------------------------------------------


def test_init_priors_values():
    assert init_priors(0.75, 2) == pytest.approx(np.zeros((2, 3)), abs=1e-12)
    assert init_priors(0.1, 1)[0, 0] == pytest.approx(math.log(27), abs=1e-12)
    assert init_priors(0.03, 1)[0, 2] == pytest.approx(math.log(97), abs=1e-12)
    assert init_priors(0.03, 4).shape == (4, 3)
    for bad in (0.0, 1.0, -0.2):
        with pytest.raises(ValueError):
            init_priors(bad, 3)


def test_quaternary_to_binary_examples():
    assert quaternary_to_binary(0, 0, 0, 0) == pytest.approx(0.0, abs=1e-15)
    lam = 2.3
    assert quaternary_to_binary(1e6, lam, lam, 0) == pytest.approx(lam - math.log(2), abs=1e-12)


def test_quaternary_to_binary_closed_form():
    rng = np.random.default_rng(41)
    for gx, gy, gz in rng.normal(0, 8, (100_000 // 20, 3)):
        for side in (0, 1):
            wi, wbar = (gx, gz) if side == 0 else (gz, gx)
            closed = math.log((1 + math.exp(-wi)) / (math.exp(-gy) + math.exp(-wbar)))
            assert quaternary_to_binary(gx, gy, gz, side) == pytest.approx(closed, abs=1e-12)


def test_boxplus_examples():
    assert boxplus([1.7, math.inf]) == 1.7
    assert boxplus([1.7, 0.0]) == 0.0
    assert boxplus([1.0, 1.0]) == pytest.approx(0.433781, abs=1e-6)
    assert boxplus([]) == math.inf
    assert boxplus([800.0, -900.0]) == pytest.approx(-800.0, abs=1e-9)  # no tanh saturation


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(-15, 15), min_size=1, max_size=6))
def test_boxplus_matches_tanh_rule(vals):
    assert boxplus(vals) == pytest.approx(tanh_boxplus(vals), abs=1e-9)


def test_hard_decision_rule():
    assert list(hard_decision(np.ones((3, 3)))) == [0, 0, 0]
    assert list(hard_decision([[-1, 2, 3]])) == [1]
    assert list(hard_decision([[-1, -1, 5]])) == [1]
    assert list(hard_decision([[4, -1, -1]])) == [2]
    assert list(hard_decision([[4, 3, 0]])) == [3]  # zero is not positive


def test_pauli_conversions():
    est = np.array([0, 1, 2, 3], dtype=np.int8)
    x, z = pauli_to_symplectic(est)
    assert list(x) == [0, 1, 1, 0] and list(z) == [0, 0, 1, 1]
    assert list(symplectic_to_pauli(x, z)) == list(est)
    assert pauli_string(est) == "IXYZ"
    assert soft_weight(est, init_priors(0.1, 4)) == pytest.approx(3 * math.log(27))


# BP engines ----------------------------------------------------------------------------------


def test_zero_syndrome_converges_immediately(z5_code):
    pri = init_priors(0.05, z5_code.n)
    s = np.zeros(z5_code.H0.rows + z5_code.H1.rows, dtype=np.uint8)
    groupings = make_groupings(z5_code, "full")
    for out in (
        mbp4_decode(z5_code, s, pri),
        gmbp4_decode(z5_code, groupings, s, pri),
        hybrid_decode(z5_code, groupings, s, pri),
        mbp4_decode(z5_code, s, pri, alpha=1.0),
    ):
        assert out.converged and out.iterations_used == 1
        assert not out.estimate.any()
    assert hybrid_decode(z5_code, groupings, s, pri).stage == "MBP4"


def test_single_qubit_y_error():
    # one X-type and one Z-type check on a single qubit (not a CSS pair, so built on the raw graph)
    H = BinaryMatrix.from_strings(["1"])
    syn = np.array([1, 1], dtype=np.uint8)
    lam = init_priors(0.1, 1)
    for mode in (MODE_BOXPLUS, MODE_SISO):
        graph = DecoderGraph.build(H, H, (trivial_grouping(H, 0), trivial_grouping(H, 1)), mode)
        conv, it, est, _ = graph.run(syn, lam, 6, 1.6)
        assert conv and it == 1 and list(est) == [2]


def test_mbp4_matches_python_reference(d10_code):
    code = d10_code
    lam = init_priors(0.06, code.n)
    graph = DecoderGraph.build(code.H0, code.H1, make_groupings(code, "trivial"), MODE_BOXPLUS)
    for _, s in noisy_syndromes(code, 0.06, 15, 42):
        ref = reference_bp4(code.H0, code.H1, s, lam, 6, 1.6)
        got = graph.run(s, lam, 6, 1.6)
        assert got[:2] == ref[:2]
        assert np.array_equal(got[2], ref[2])
        np.testing.assert_allclose(got[3], ref[3], rtol=1e-9, atol=1e-9)


def test_memory_run_matches_python_reference(z13_code):
    code = z13_code
    lam = init_priors(0.08, code.n)
    graph = DecoderGraph.build(code.H0, code.H1, make_groupings(code, "trivial"), MODE_BOXPLUS)
    rng = np.random.default_rng(5)
    for _, s in noisy_syndromes(code, 0.08, 10, 43):
        mem = rng.uniform(-0.03, 0.63, code.n)
        gv = lam + rng.normal(0, 0.5, lam.shape)
        ref = reference_bp4(code.H0, code.H1, s, lam, 5, 1.0, mem=mem, gv=gv)
        got = graph.run(s, lam, 5, 1.0, gv=gv, mem=mem)
        assert got[:2] == ref[:2]
        np.testing.assert_allclose(got[3], ref[3], rtol=1e-9, atol=1e-9)


def test_trivial_gmbp4_reproduces_mbp4_trajectories(z13_code):
    code = z13_code
    lam = init_priors(0.07, code.n)
    triv = make_groupings(code, "trivial")
    bp = DecoderGraph.build(code.H0, code.H1, triv, MODE_BOXPLUS)
    gen = DecoderGraph.build(code.H0, code.H1, triv, MODE_SISO)
    for _, s in noisy_syndromes(code, 0.07, 100, 44):
        for t in range(1, 7):
            a, b = bp.run(s, lam, t, 1.6), gen.run(s, lam, t, 1.6)
            assert a[:2] == b[:2]
            assert np.array_equal(a[2], b[2])
            if a[0]:
                break


def test_converged_outcomes_satisfy_syndrome(d10_code):
    code = d10_code
    pri = init_priors(0.05, code.n)
    decs = [Decoder(code, DecoderConfig(d, osd=o)) for d in ("mbp4", "gmbp4", "hybrid", "relay") for o in ("none", "osd1")]
    for _, s in noisy_syndromes(code, 0.05, 20, 45):
        for dec in decs:
            out = dec.decode(s, pri, np.random.default_rng(0))
            if out.converged:
                assert np.array_equal(syndrome(code, PauliError.from_pauli(out.estimate)), s)
            if dec.config.osd == "osd1":
                assert out.converged


def test_syndrome_length_checked(z5_code):
    with pytest.raises(ValueError, match="syndrome length"):
        mbp4_decode(z5_code, np.zeros(3, np.uint8), init_priors(0.1, z5_code.n))


def test_config_validation_and_parsing():
    with pytest.raises(ValueError):
        DecoderConfig("minsum")
    with pytest.raises(ValueError):
        DecoderConfig("mbp4", osd="osd2")
    with pytest.raises(ValueError):
        DecoderConfig("mbp4", alpha=0)
    cfg = DecoderConfig.from_dict({"decoder": "relay", "osd": None, "relay": {"R": 4, "T_r": [3, 3, 3, 3], "S": 2}})
    assert (cfg.relay_legs, cfg.relay_t, cfg.relay_solutions, cfg.osd) == (4, (3, 3, 3, 3), 2, "none")
    with pytest.raises(ValueError):
        DecoderConfig.from_dict({"decoder": "relay", "relay": {"Q": 1}})


# hybrid ----------------------------------------------------------------------------------------


def first_rescue(code, eps, seed, warm_start):
    pri = init_priors(eps, code.n)
    groupings = make_groupings(code, "full")
    mbp = Decoder(code, DecoderConfig("mbp4"))
    hyb = Decoder(code, DecoderConfig("hybrid", warm_start=warm_start), groupings)
    for _, s in noisy_syndromes(code, eps, 400, seed):
        if not mbp.decode(s, pri).converged:
            out = hyb.decode(s, pri)
            if out.converged:
                return out
    return None


def test_hybrid_second_stage_rescues_a_trial(z13_code):
    found = first_rescue(z13_code, 0.08, 46, warm_start=False)
    assert found is not None, "no rescue found in the scanned seeds"
    assert found.stage == "GMBP4"
    assert found.iterations_used > 6


def test_hybrid_cold_start_on_single_row_local_codes(z5_code):
    # k_A = k_B = 1: every local PCM is one row, so full grouping is the trivial one
    # and a cold second stage replays the first; only the warm start can differ
    assert all(p.rows == 1 for p in z5_code.meta.local_pcms)
    assert first_rescue(z5_code, 0.12, 46, warm_start=False) is None
    found = first_rescue(z5_code, 0.12, 46, warm_start=True)
    assert found is not None and found.stage == "GMBP4"


def test_hybrid_osd_only_after_second_stage(z5_code):
    code = z5_code
    pri = init_priors(0.15, code.n)
    groupings = make_groupings(code, "full")
    plain = Decoder(code, DecoderConfig("hybrid"), groupings)
    with_osd = Decoder(code, DecoderConfig("hybrid", osd="osd1"), groupings)
    seen_osd = False
    for _, s in noisy_syndromes(code, 0.15, 300, 47):
        a, b = plain.decode(s, pri), with_osd.decode(s, pri)
        if a.converged:
            assert (b.stage, b.iterations_used) == (a.stage, a.iterations_used)
        else:
            assert b.stage == "OSD" and b.converged and b.iterations_used == 12
            seen_osd = True
    assert seen_osd


def test_warm_start_option_runs(z5_code):
    groupings = make_groupings(z5_code, "full")
    pri = init_priors(0.12, z5_code.n)
    for _, s in noisy_syndromes(z5_code, 0.12, 30, 48):
        out = hybrid_decode(z5_code, groupings, s, pri, warm_start=True)
        if out.converged:
            assert np.array_equal(syndrome(z5_code, PauliError.from_pauli(out.estimate)), s)


# OSD ---------------------------------------------------------------------------------------------


def test_osd_identity_system():
    s = np.array([1, 0, 1, 1], dtype=np.uint8)
    assert list(osd1(BinaryMatrix.identity(4), [0.3, -1.0, 2.0, 0.1], s)) == list(s)


def test_osd_random_systems():
    rng = np.random.default_rng(49)
    for _ in range(200):
        H = (rng.random((6, 12)) < 0.4).astype(np.uint8)
        e = (rng.random(12) < 0.3).astype(np.uint8)
        s = (H.astype(int) @ e % 2).astype(np.uint8)
        w = rng.normal(1, 2, 12)
        res = osd1_full(H, w, s)
        assert np.array_equal(H.astype(int) @ res.error % 2, s)
        assert res.cost <= res.cost_order0 + 1e-12
        assert res.cost == pytest.approx(float(w[res.error.astype(bool)].sum()))


def test_osd_rejects_inconsistent_syndrome():
    with pytest.raises(ValueError, match="inconsistent"):
        osd1(BinaryMatrix.from_strings(["11", "11"]), [1.0, 1.0], [1, 0])


def test_osd_prefers_unreliable_bits():
    # rank-1 system: any single bit solves it; the cheapest bit must win
    H = BinaryMatrix.from_strings(["1111"])
    e = osd1(H, [3.0, 0.5, 2.0, 4.0], [1])
    assert list(e) == [0, 1, 0, 0]


def test_symplectic_reliabilities():
    g = np.array([[1.0, 2.0, 3.0]])
    w = symplectic_reliabilities(g)
    assert w[0] == pytest.approx(quaternary_to_binary(1.0, 2.0, 3.0, 0))
    assert w[1] == pytest.approx(quaternary_to_binary(1.0, 2.0, 3.0, 1))


# relay ---------------------------------------------------------------------------------------------


def test_relay_returns_minimum_weight_solution(d10_code):
    code = d10_code
    pri = init_priors(0.07, code.n)
    hits = 0
    for i, (_, s) in enumerate(noisy_syndromes(code, 0.07, 60, 50)):
        out = relay_bp4(code, s, pri, S=8, R=8, T_r=6, seed=i)
        if out.converged:
            assert np.array_equal(syndrome(code, PauliError.from_pauli(out.estimate)), s)
            assert soft_weight(out.estimate, pri) == pytest.approx(min(out.solution_weights))
            if len(set(np.round(out.solution_weights, 9))) > 1:
                hits += 1
                # the incumbent is never replaced by a heavier solution
                running = np.minimum.accumulate(out.solution_weights)
                assert (np.diff(running) <= 0).all()
                assert soft_weight(out.estimate, pri) < max(out.solution_weights)
    assert hits > 0, "no multi-solution run with distinct weights in the scanned seeds"


def test_relay_stops_after_s_solutions(z5_code):
    pri = init_priors(0.05, z5_code.n)
    s = np.zeros(z5_code.H0.rows + z5_code.H1.rows, dtype=np.uint8)
    out = relay_bp4(z5_code, s, pri, S=3, R=8, T_r=4)
    assert len(out.solution_weights) == 3 and out.iterations_used == 3
    assert out.stage == "Relay"


def test_relay_zero_width_is_constant_memory(z13_code):
    code = z13_code
    pri = init_priors(0.08, code.n)
    graph = DecoderGraph.build(code.H0, code.H1, make_groupings(code, "trivial"), MODE_BOXPLUS)
    for _, s in noisy_syndromes(code, 0.08, 20, 51):
        a = relay_bp4(code, s, pri, R=3, T_r=5, gamma_c=0.3, gamma_w=0.0, seed=1)
        b = relay_bp4(code, s, pri, R=3, T_r=5, gamma_c=0.3, gamma_w=0.0, seed=999)
        assert np.array_equal(a.estimate, b.estimate) and a.solution_weights == b.solution_weights
        # manual legs with a fixed strength of gamma_c
        gv, weights = pri.copy(), []
        for _ in range(3):
            conv, it, est, gv = graph.run(s, pri, 5, 1.0, gv=gv, mem=np.full(code.n, 0.3))
            if conv:
                weights.append(soft_weight(est, pri))
        assert list(a.solution_weights) == pytest.approx(weights)


def test_relay_osd_after_failed_legs(d10_code):
    code = d10_code
    pri = init_priors(0.09, code.n)
    for i, (_, s) in enumerate(noisy_syndromes(code, 0.09, 20, 52)):
        out = relay_bp4(code, s, pri, R=4, T_r=3, seed=i, osd_flag=True)
        assert out.converged
        assert len(out.solution_weights) == 4  # every leg yields a candidate
        assert np.array_equal(syndrome(code, PauliError.from_pauli(out.estimate)), s)


def test_relay_list_of_leg_lengths(z5_code):
    pri = init_priors(0.1, z5_code.n)
    s = np.zeros(z5_code.H0.rows + z5_code.H1.rows, dtype=np.uint8)
    with pytest.raises(ValueError, match="legs"):
        relay_bp4(z5_code, s, pri, R=3, T_r=[2, 2])


def test_decoding_is_deterministic(d10_code):
    pri = init_priors(0.06, d10_code.n)
    cfg = DecoderConfig("relay", osd="osd1")
    dec = Decoder(d10_code, cfg)
    for _, s in noisy_syndromes(d10_code, 0.06, 10, 53):
        a = dec.decode(s, pri, np.random.default_rng(7))
        b = Decoder(d10_code, cfg).decode(s, pri, np.random.default_rng(7))
        assert np.array_equal(a.estimate, b.estimate) and a.solution_weights == b.solution_weights

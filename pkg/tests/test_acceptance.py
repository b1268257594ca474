"""One test per acceptance criterion; each prints a CRITERION pass/fail line."""

import itertools
import time

import numpy as np
from conftest import ACCEPTANCE_RESULTS, kets, random_secret

from qshare.cli import EXIT_FAIL, EXIT_OK, EXIT_PARAM, EXIT_USAGE, dump_state, load_state, main
from qshare.hilbert import DensityMatrix, partial_trace, trace_distance
from qshare.polycode import CodeParams, decode_subset, encode, min_distance_check
from qshare.scheme import NoCloningViolation, build_threshold, discard, split
from qshare.verify import (
    Encoding,
    check_erasure_conditions,
    check_no_information,
    check_pure_state_structure,
    demo_epr_product,
    demo_four_qubit_leak,
    demo_restricted_22,
    full_report,
    reconstruction_fidelity,
)

SQ3 = 1 / np.sqrt(3)


def record(n: int, ok: bool, detail: str):
    line = f"CRITERION {n} {'PASS' if ok else 'FAIL'} {detail}"
    ACCEPTANCE_RESULTS.append(line)
    print(line)
    assert ok, line


def test_criterion_1_qutrit_code_reproduction():
    t0 = time.perf_counter()
    params = CodeParams(2, 3, 3, 3, (0, 1, 2))
    rows = [("000", "111", "222"), ("012", "120", "201"), ("021", "102", "210")]
    dev = 0.0
    for v, row in enumerate(rows):
        expected = kets({w: SQ3 for w in row}, (3, 3, 3)).amplitudes
        dev = max(dev, float(np.max(np.abs(encode(np.eye(3)[v], params).amplitudes - expected))))
    elapsed = time.perf_counter() - t0
    record(1, dev <= 1e-12 and elapsed < 1, f"max deviation {dev:.2e}, {elapsed:.3f}s")


def test_criterion_2_qutrit_reconstruction():
    t0 = time.perf_counter()
    params = CodeParams.make(2, 3, 3)
    rng = np.random.default_rng(20240601)
    mixed = DensityMatrix((3,), np.eye(3) / 3)
    worst_fid, worst_td = 1.0, 0.0
    for _ in range(200):
        secret = random_secret(rng, 3)
        state = encode(secret, params)
        for j in range(3):
            worst_td = max(worst_td, trace_distance(partial_trace(state, [j]), mixed))
        for pair in itertools.combinations(range(3), 2):
            rho = partial_trace(decode_subset(state, pair, params), [pair[0]]).matrix
            worst_fid = min(worst_fid, float(np.real(np.vdot(secret, rho @ secret))))
    elapsed = time.perf_counter() - t0
    ok = worst_fid >= 1 - 1e-10 and worst_td <= 1e-10 and elapsed < 5
    record(2, ok, f"min fidelity {worst_fid:.15f}, max td to I/3 {worst_td:.2e}, {elapsed:.2f}s")


def test_criterion_3_threshold_k3_m5_q5():
    t0 = time.perf_counter()
    enc = Encoding.from_spec(build_threshold(3, 5, 5))
    fid = min(reconstruction_fidelity(enc, S) for S in itertools.combinations(range(5), 3))
    small = [S for r in (1, 2) for S in itertools.combinations(range(5), r)]
    td = max(check_no_information(enc, S) for S in small)
    elapsed = time.perf_counter() - t0
    ok = fid >= 1 - 1e-9 and td <= 1e-9 and len(small) == 15 and elapsed < 120
    record(3, ok, f"min fidelity (incl. entangled) {fid:.15f}, max td {td:.2e}, {elapsed:.2f}s")


def test_criterion_4_discarded_schemes_and_no_cloning():
    t0 = time.perf_counter()
    s34 = discard(build_threshold(3, 5, 2))
    s33 = discard(s34)
    passed = full_report(s34).passed and full_report(s33).passed
    refused = []
    for k, n in [(2, 4), (3, 6), (1, 2)]:
        try:
            build_threshold(k, n, 2)
        except NoCloningViolation:
            refused.append((k, n))
    elapsed = time.perf_counter() - t0
    ok = passed and len(refused) == 3 and (s34.n, s33.n) == (4, 3) and elapsed < 120
    record(4, ok, f"((3,4)),((3,3)) reports pass={passed}, refused {refused}, {elapsed:.2f}s")


def test_criterion_5_mixed_pure_dichotomy():
    dual23 = check_pure_state_structure(build_threshold(2, 3, 3))
    dual35 = check_pure_state_structure(build_threshold(3, 5, 5))
    probe = np.array([1, 1]) / np.sqrt(2)
    rho = split(build_threshold(3, 4, 2), probe).retained_state()
    rank = int(np.sum(rho.eigenvalues() > 1e-8))
    ok = dual23 and dual35 and rank >= 2
    record(5, ok, f"duality ((2,3))={dual23} ((3,5))={dual35}, ((3,4)) retained rank {rank}")


def test_criterion_6_erasure_conditions():
    enc23 = Encoding.from_spec(build_threshold(2, 3, 3))
    singles_ok, c_zero = True, 0.0
    for j in range(3):
        res = check_erasure_conditions(enc23.images, (j,))
        singles_ok &= res.holds
        c_zero = max(c_zero, max(abs(v) for key, v in res.c.items() if key != ((0,), (0,))))
    pairs_fail = all(not check_erasure_conditions(enc23.images, K).holds
                     for K in itertools.combinations(range(3), 2))
    mismatches = []
    for enc in (enc23, Encoding.from_spec(build_threshold(3, 5, 5))):
        m = len(enc.dims)
        for r in range(m + 1):
            for K in itertools.combinations(range(m), r):
                comp = tuple(j for j in range(m) if j not in K)
                a = reconstruction_fidelity(enc, comp) >= 1 - 1e-9
                b = check_erasure_conditions(enc.images, K).holds
                if a != b:
                    mismatches.append((enc.name, K))
    ok = singles_ok and c_zero <= 1e-9 and pairs_fail and not mismatches
    record(6, ok, f"singletons hold={singles_ok} max|c(E!=I)|={c_zero:.2e}, pairs fail={pairs_fail}, "
                  f"(a)<=>(b) mismatches={len(mismatches)}")


def test_criterion_7_counterexamples():
    leak = demo_four_qubit_leak()
    restricted = demo_restricted_22()
    td_leak = leak.facts["td_{0,2}(|0>,|1>)"]
    td_phase = restricted.facts["single-share td, (|0>+i|1>) vs (|0>-i|1>)"]
    td_real = restricted.facts["single-share td, real-amplitude probes"]
    ok = (leak.passed and abs(td_leak - 1) <= 1e-9 and leak.facts["min 3-subset fidelity"] >= 1 - 1e-9
          and abs(td_phase - 1) <= 1e-10 and td_real <= 1e-10)
    record(7, ok, f"four-qubit td{{0,2}}={td_leak:.12f}, restricted td phase={td_phase:.12f} real={td_real:.2e}")


def test_criterion_8_css_distance():
    results = {}
    for k, m, q in [(2, 3, 3), (3, 5, 5)]:
        d1, d2 = min_distance_check(CodeParams(k, m, q, q, tuple(range(m))))
        results[(k, m, q)] = (min(d1, d2), m - k + 1)
    ok = all(a == b for a, b in results.values())
    record(8, ok, f"(min distance, m-k+1): {results}")


def test_criterion_9_epr_demo():
    rep = demo_epr_product()
    td = max(rep.facts["td(rho_AliceBob, rho_Alice x rho_Bob)"],
             rep.facts["td(rho_AliceCarol, rho_Alice x rho_Carol)"])
    fid = rep.facts["entanglement fidelity after reconstruction"]
    record(9, rep.passed and td <= 1e-9 and fid >= 1 - 1e-9, f"product td {td:.2e}, entanglement fidelity {fid:.15f}")


GOLDEN_STATE = """\
QSS1
q=3
dims=3,3,3
discarded=-
bundles=A:0;B:1;C:2
amp 0 5.7735026918962573e-01 0.0000000000000000e+00
amp 13 5.7735026918962573e-01 0.0000000000000000e+00
amp 26 5.7735026918962573e-01 0.0000000000000000e+00
"""


def test_criterion_10_file_format_and_exit_codes(tmp_path, capsys):
    scheme, state = tmp_path / "scheme.txt", tmp_path / "state.txt"
    codes = {
        "new": main(["new", "--k", "2", "--n", "3", "--secret-dim", "3", "--out", str(scheme)]),
        "new-nocloning": main(["new", "--k", "2", "--n", "4", "--out", str(tmp_path / "x")]),
        "split": main(["split", "--scheme", str(scheme), "--secret", "2:0,0:0,0:0", "--out", str(state)]),
        "split-wrong-length": main(["split", "--scheme", str(scheme), "--secret", "1:0,0:0",
                                    "--out", str(tmp_path / "y")]),
        "reconstruct-ok": main(["reconstruct", "--state", str(state), "--shares", "A,B",
                                "--expect", "1:0,0:0,0:0"]),
        "reconstruct-mismatch": main(["reconstruct", "--state", str(state), "--shares", "A,B",
                                      "--expect", "0:0,1:0,0:0"]),
        "reconstruct-undersized": main(["reconstruct", "--state", str(state), "--shares", "C"]),
        "verify": main(["verify", "--scheme", str(scheme)]),
    }
    expected = {"new": EXIT_OK, "new-nocloning": EXIT_PARAM, "split": EXIT_OK,
                "split-wrong-length": EXIT_USAGE, "reconstruct-ok": EXIT_OK,
                "reconstruct-mismatch": EXIT_FAIL, "reconstruct-undersized": EXIT_FAIL, "verify": EXIT_OK}
    golden = state.read_text() == GOLDEN_STATE
    rng = np.random.default_rng(5)
    round_trip = True
    for k, n, s in [(2, 3, 3), (3, 4, 5), (3, 5, 5)]:
        shared = split(build_threshold(k, n, s), random_secret(rng, s))
        text = dump_state(shared)
        loaded = load_state(text)
        kept = np.abs(shared.state.amplitudes) >= 1e-15
        round_trip &= bool(np.array_equal(loaded.state.amplitudes[kept], shared.state.amplitudes[kept]))
        round_trip &= dump_state(loaded) == text
    capsys.readouterr()
    bad = {k: v for k, v in codes.items() if v != expected[k]}
    record(10, golden and round_trip and not bad,
           f"golden={golden}, bit-exact round trip={round_trip}, exit-code mismatches={bad}")

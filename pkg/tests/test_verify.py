import itertools

import numpy as np
import pytest
from conftest import random_secret

from qshare.hilbert import partial_trace, random_state, trace_distance
from qshare.polycode import TooLarge
from qshare.scheme import build_threshold, bundle, discard, split
from qshare.verify import (
    DEMOS,
    Encoding,
    NotPureScheme,
    SubsetTooSmall,
    _pair_trace_distance,
    check_erasure_conditions,
    check_no_information,
    check_pure_state_structure,
    check_reconstruction,
    classify,
    condition_c_deviation,
    demo_epr_product,
    demo_four_qubit_leak,
    demo_restricted_22,
    four_qubit_code,
    full_report,
    reconstruction_fidelity,
    uhlmann_decoder,
)

ENC23 = Encoding.from_spec(build_threshold(2, 3, 3))
ENC35 = Encoding.from_spec(build_threshold(3, 5, 5))


def all_subsets(n):
    return [S for r in range(n + 1) for S in itertools.combinations(range(n), r)]


@pytest.mark.parametrize("j", range(3))
def test_no_information_single_share_23(j):
    assert check_no_information(ENC23, (j,)) <= 1e-12


@pytest.mark.parametrize("S", list(itertools.combinations(range(5), 2)))
def test_no_information_pairs_35(S):
    assert check_no_information(ENC35, S) <= 1e-9


def test_no_information_four_qubit_leak():
    enc = four_qubit_code()
    assert check_no_information(enc, (0, 2), [np.array([1, 0]), np.array([0, 1])]) == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("S", list(itertools.combinations(range(3), 2)))
def test_reconstruction_pairs_23(S):
    assert check_reconstruction(ENC23, S) >= 1 - 1e-10


@pytest.mark.parametrize("S", list(itertools.combinations(range(4), 3)))
def test_reconstruction_mixed_34(S):
    enc = Encoding.from_spec(build_threshold(3, 4, 2))
    assert check_reconstruction(enc, S) >= 1 - 1e-10


def test_reconstruction_too_small():
    with pytest.raises(SubsetTooSmall):
        check_reconstruction(ENC23, (1,))


def test_uhlmann_decoder_is_isometry_and_matches_spec_decoder():
    for S in itertools.combinations(range(3), 2):
        V = uhlmann_decoder(ENC23, S)
        assert np.allclose(V.conj().T @ V, np.eye(9), atol=1e-12)
    # the generic decoder also succeeds where the polynomial decoder does
    from qshare.verify import _generic_fidelities, _probes

    for S in itertools.combinations(range(3), 2):
        assert min(_generic_fidelities(ENC23, S, _probes(ENC23, None))) >= 1 - 1e-10


def test_erasure_conditions_singletons_23():
    for j in range(3):
        res = check_erasure_conditions(ENC23.images, (j,))
        assert res.holds
        assert res.c[(0,), (0,)] == pytest.approx(1)
        for (a, b), val in res.c.items():
            if (a, b) != ((0,), (0,)):
                assert abs(val) <= 1e-12


def test_erasure_conditions_fail_on_pairs_23():
    for K in itertools.combinations(range(3), 2):
        assert not check_erasure_conditions(ENC23.images, K).holds


def test_erasure_conditions_identity_and_empty():
    res = check_erasure_conditions(ENC35.images, ())
    assert res.holds and res.c[(), ()] == pytest.approx(1)
    res = check_erasure_conditions(ENC35.images, (0, 3))
    assert res.c[(0, 0), (0, 0)] == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("enc", [ENC23, ENC35], ids=["23", "35"])
def test_erasure_conditions_equivalent_to_complement_reconstruction(enc):
    m = len(enc.dims)
    for K in all_subsets(m):
        comp = tuple(j for j in range(m) if j not in K)
        erasable = check_erasure_conditions(enc.images, K).holds
        recoverable = reconstruction_fidelity(enc, comp) >= 1 - 1e-9
        assert erasable == recoverable, K


def test_erasure_conditions_four_qubit_code():
    enc = four_qubit_code()
    for K in itertools.combinations(range(4), 1):
        assert check_erasure_conditions(enc.images, K).holds
    assert not check_erasure_conditions(enc.images, (0, 2)).holds


@pytest.mark.parametrize("enc", [ENC23, ENC35], ids=["23", "35"])
def test_gram_path_agrees_with_pauli_path(enc):
    m = len(enc.dims)
    for K in all_subsets(m):
        if 0 < len(K) <= 3:
            pauli = check_erasure_conditions(enc.images, K)
            gram = check_erasure_conditions(enc.images, K, max_support=0)
            assert gram.c is None
            assert pauli.holds == gram.holds, K


@pytest.mark.parametrize("enc", [ENC23, ENC35], ids=["23", "35"])
def test_condition_b_equivalent_to_c(enc):
    rng = np.random.default_rng(7)
    secrets = [random_secret(rng, enc.s) for _ in range(4)]
    k = enc.spec.k
    for K in itertools.combinations(range(len(enc.dims)), k - 1):
        res = check_erasure_conditions(enc.images, K)
        assert res.holds
        assert condition_c_deviation(enc.images, K, res.c, secrets) <= 1e-9


@pytest.mark.parametrize("seed", range(5))
def test_factored_trace_distance_matches_dense(seed):
    rng = np.random.default_rng(seed)
    a, b = random_state((3, 3, 3, 2), rng), random_state((3, 3, 3, 2), rng)
    from qshare.hilbert import _split

    Ai, Aj = _split(a, (0, 1, 2))[0], _split(b, (0, 1, 2))[0]
    assert Ai.shape[0] > 2 * Ai.shape[1]
    dense = trace_distance(partial_trace(a, [0, 1, 2]), partial_trace(b, [0, 1, 2]))
    assert _pair_trace_distance(Ai, Aj) == pytest.approx(dense, abs=1e-12)


def test_classify_verdicts():
    assert classify(ENC23, (0, 2)).verdict == "authorized"
    assert classify(ENC23, (1,)).verdict == "unauthorized"
    enc = four_qubit_code()
    assert classify(enc, (0, 2)).verdict == "intermediate"
    line = classify(ENC23, (0, 2)).line()
    assert line.startswith("SUBSET 0,2 VERDICT authorized FID 1.0000000000")


@pytest.mark.parametrize("spec", [build_threshold(2, 3, 3), build_threshold(3, 5, 5)], ids=["23", "35"])
def test_pure_state_structure(spec):
    assert check_pure_state_structure(spec)


def test_pure_state_structure_rejects_mixed():
    with pytest.raises(NotPureScheme):
        check_pure_state_structure(build_threshold(3, 4, 2))


def test_pure_state_structure_fails_for_leaky_code():
    assert not check_pure_state_structure(four_qubit_code())


@pytest.mark.parametrize("k,n,s", [
    (1, 1, 2), (2, 2, 2), (2, 3, 2), (2, 3, 3), (3, 3, 2), (3, 4, 2), (3, 5, 2),
])
def test_full_report_passes(k, n, s):
    report = full_report(build_threshold(k, n, s))
    assert report.passed, report.render()
    names = [name for name, _, _ in report.checks]
    assert "no-cloning" in names and "erasure-conditions" in names


def test_full_report_bundled_34():
    spec = bundle(build_threshold(3, 4, 2), [(0, 1), (2,), (3,)])
    report = full_report(spec)
    assert report.passed
    verdicts = {v.labels: v.verdict for v in report.subsets}
    assert verdicts[("A", "B")] == "authorized"
    assert verdicts[("A", "C")] == "authorized"
    assert verdicts[("B", "C")] == "unauthorized"
    assert verdicts[("A",)] == "unauthorized"


def test_full_report_deterministic_across_workers():
    spec = build_threshold(3, 5, 2)
    serial = full_report(spec)
    parallel = full_report(spec, workers=4)
    assert serial.render() == parallel.render()


def test_full_report_cap():
    with pytest.raises(TooLarge):
        full_report(build_threshold(3, 5, 2), cap=100)


def test_demo_four_qubit_leak():
    rep = demo_four_qubit_leak()
    assert rep.passed
    assert rep.facts["td_{0,2}(|0>,|1>)"] == pytest.approx(1, abs=1e-12)


def test_demo_restricted_22():
    rep = demo_restricted_22()
    assert rep.passed
    assert rep.facts["single-share td, (|0>+i|1>) vs (|0>-i|1>)"] == pytest.approx(1, abs=1e-10)
    assert rep.facts["single-share td, real-amplitude probes"] <= 1e-10


def test_demo_epr():
    rep = demo_epr_product()
    assert rep.passed
    assert rep.facts["td(rho_AliceBob, rho_Alice x rho_Bob)"] <= 1e-9
    assert rep.facts["entanglement fidelity after reconstruction"] >= 1 - 1e-9


@pytest.mark.parametrize("name", sorted(DEMOS))
def test_every_demo_passes(name):
    rep = DEMOS[name]()
    assert rep.passed
    assert rep.render().endswith("PASS")


def test_discarded_scheme_probe_rank():
    shared = split(discard(build_threshold(2, 3, 2)), [1, 0])
    assert shared.retained_state().rank() == 3

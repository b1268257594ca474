"""Brute-force checks of the secret sharing contract.

Everything here measures rather than assumes: a coordinate subset is
called authorized only if decoding it actually returns the secret (plain
and entangled with a reference), and unauthorized only if its reduced
state is the same for every probe secret.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .hilbert import (
    DimensionMismatch,
    PureState,
    _split,
    apply_matrix,
    partial_trace,
    pauli_coefficients,
    trace_distance,
)
from .polycode import TooLarge, min_distance_check
from .scheme import (
    SchemeSpec,
    SharedState,
    maximally_entangled,
    probe_secrets,
    recover,
    split,
)

TOL = 1e-9
DEFAULT_STATE_CAP = 10**6
DEFAULT_MAX_SUPPORT = 3


class SubsetTooSmall(ValueError):
    pass


class NotPureScheme(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Encoding:
    """A linear encoding given by the images of the basis secrets.

    ``images[v]`` is the global (purified) state encoding |v>; ``retained``
    lists the coordinates handed out as shares, the rest are environment.
    """

    name: str
    images: tuple[PureState, ...]
    retained: tuple[int, ...]
    spec: SchemeSpec | None = None

    def __post_init__(self):
        dims = {img.dims for img in self.images}
        if len(dims) != 1:
            raise DimensionMismatch("all basis images must live on the same registers")

    @classmethod
    def from_vectors(cls, name: str, vectors, dims: Sequence[int],
                     retained: Sequence[int] | None = None) -> Encoding:
        images = tuple(PureState.from_vector(v, dims) for v in vectors)
        if retained is None:
            retained = range(len(dims))
        return cls(name, images, tuple(retained))

    @classmethod
    def from_spec(cls, spec: SchemeSpec) -> Encoding:
        s = spec.params.s
        images = tuple(split(spec, np.eye(s)[v]).state for v in range(s))
        return cls(f"(({spec.k},{spec.n}))", images, spec.retained, spec)

    @property
    def s(self) -> int:
        return len(self.images)

    @property
    def dims(self) -> tuple[int, ...]:
        return self.images[0].dims

    @property
    def threshold(self) -> int | None:
        return self.spec.k if self.spec is not None else None

    def _stack(self) -> np.ndarray:
        return np.stack([img.amplitudes for img in self.images])

    def encode(self, secret: Sequence[complex]) -> PureState:
        secret = np.asarray(secret, dtype=np.complex128)
        return PureState(self.dims, secret @ self._stack()[: secret.size])

    def encode_entangled(self, joint: np.ndarray) -> PureState:
        """Encode the second factor of joint[r, v]; the reference becomes register 0."""
        joint = np.asarray(joint, dtype=np.complex128)
        amps = joint @ self._stack()[: joint.shape[1]]
        return PureState((joint.shape[0],) + self.dims, amps.reshape(-1))


# -- decoding -----------------------------------------------------------------

def uhlmann_decoder(encoding: Encoding, subset: Sequence[int]) -> np.ndarray:
    """Best isometry from ``subset`` onto (secret (x) ancilla).

    Encodes half of a maximally entangled reference pair, then maximizes
    the overlap with |Phi>_{ref,out} |chi>_{anc,T}, where chi purifies the
    complement T's reduced state. By Uhlmann's theorem the optimum is read
    off an SVD. The overlap reaches 1 exactly when ``subset`` can recover
    the secret. Returns a matrix of shape (s * D_S, D_S).
    """
    s = encoding.s
    subset = tuple(sorted(subset))
    psi = encoding.encode_entangled(maximally_entangled(s))
    regs = tuple(j + 1 for j in subset)
    A, rest = _split(psi, regs)  # rest = (reference, T...)
    d_s = A.shape[0]
    d_t = A.shape[1] // s
    psi3 = A.T.reshape(s, d_t, d_s)  # [ref, t, sigma]
    X = psi3.transpose(1, 0, 2).reshape(d_t, s * d_s)
    U, sv, _ = np.linalg.svd(X, full_matrices=False)
    keep = min(d_s, sv.size)
    mu = sv[:keep] ** 2
    chi = np.zeros((d_s, d_t), dtype=np.complex128)
    chi[:keep] = (np.sqrt(mu / mu.sum())[:, None] * U[:, :keep].T)
    B = np.einsum("at,ots->oas", chi.conj(), psi3).reshape(s * d_s, d_s) / np.sqrt(s)
    W, _, Vh = np.linalg.svd(B, full_matrices=False)
    return (W @ Vh).conj()


def _apply_decoder(state: PureState, V: np.ndarray, subset: Sequence[int], s: int,
                   shift: int) -> tuple[PureState, int, int]:
    """Apply V on the subset; returns (state, output register, reference shift)."""
    regs = tuple(sorted(j + shift for j in subset))
    d_s = V.shape[1]
    out = apply_matrix(state, V, regs, out_dims=(s, d_s))
    if regs:
        return out, regs[0], 0
    return out, 0, 2


def _fidelity(rho, target: np.ndarray) -> float:
    return float(np.real(np.vdot(target, rho.matrix @ target)))


def _spec_fidelities(encoding: Encoding, subset, probes) -> list[float]:
    spec = encoding.spec
    q, s = spec.q, encoding.s
    fids = []
    for p in probes:
        shared = SharedState(encoding.encode(p), spec, p)
        out, reg = recover(shared, subset)
        target = np.zeros(q, dtype=np.complex128)
        target[: p.size] = p
        fids.append(_fidelity(partial_trace(out, [reg]), target))
    joint = maximally_entangled(s)
    shared = SharedState(encoding.encode_entangled(joint), spec, joint.reshape(-1), (s,))
    out, reg = recover(shared, subset)
    target = np.zeros((s, q), dtype=np.complex128)
    target[:, :s] = joint
    fids.append(_fidelity(partial_trace(out, [0, reg]), target.reshape(-1)))
    return fids


def _generic_fidelities(encoding: Encoding, subset, probes) -> list[float]:
    s = encoding.s
    V = uhlmann_decoder(encoding, subset)
    fids = []
    for p in probes:
        out, reg, _ = _apply_decoder(encoding.encode(p), V, subset, s, 0)
        target = np.zeros(s, dtype=np.complex128)
        target[: p.size] = p
        fids.append(_fidelity(partial_trace(out, [reg]), target))
    joint = maximally_entangled(s)
    out, reg, ref_shift = _apply_decoder(encoding.encode_entangled(joint), V, subset, s, 1)
    fids.append(_fidelity(partial_trace(out, [ref_shift, reg]), joint.reshape(-1)))
    return fids


def reconstruction_fidelity(encoding: Encoding, subset: Sequence[int],
                            probes: Sequence[np.ndarray] | None = None) -> float:
    """Worst fidelity over probes and the entangled-reference variant.

    Uses the scheme's own decoder when it applies (>= k coordinates) and
    the Uhlmann decoder otherwise.
    """
    probes = _probes(encoding, probes)
    subset = tuple(sorted(subset))
    if encoding.spec is not None and len(subset) >= encoding.spec.k:
        return min(_spec_fidelities(encoding, subset, probes))
    return min(_generic_fidelities(encoding, subset, probes))


def check_reconstruction(encoding: Encoding, subset: Sequence[int],
                         probes: Sequence[np.ndarray] | None = None) -> float:
    """Minimum reconstruction fidelity from ``subset`` (see reconstruction_fidelity)."""
    k = encoding.threshold
    if k is not None and len(set(subset)) < k:
        raise SubsetTooSmall(f"{len(set(subset))} coordinates, threshold is {k}")
    return reconstruction_fidelity(encoding, subset, probes)


# -- information leakage ------------------------------------------------------

def _probes(encoding: Encoding, probes):
    if probes is None:
        return probe_secrets(encoding.s)
    return [np.asarray(p, dtype=np.complex128) for p in probes]


def _pair_trace_distance(Ai: np.ndarray, Aj: np.ndarray) -> float:
    """Trace distance of Ai Ai^+ and Aj Aj^+ without forming the big matrices."""
    if Ai.shape[0] <= 2 * Ai.shape[1]:
        d = Ai @ Ai.conj().T - Aj @ Aj.conj().T
        return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(d))))
    Q, R = np.linalg.qr(np.concatenate([Ai, Aj], axis=1))
    J = np.diag(np.r_[np.ones(Ai.shape[1]), -np.ones(Aj.shape[1])])
    small = R @ J @ R.conj().T
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh((small + small.conj().T) / 2))))


def max_pairwise_distance(states: Sequence[PureState], subset: Sequence[int]) -> float:
    subset = tuple(subset)
    if not subset:
        return 0.0
    blocks = [_split(st, subset)[0] for st in states]
    worst = 0.0
    for i, j in itertools.combinations(range(len(blocks)), 2):
        worst = max(worst, _pair_trace_distance(blocks[i], blocks[j]))
    return worst


def check_no_information(encoding: Encoding, subset: Sequence[int],
                         probes: Sequence[np.ndarray] | None = None) -> float:
    """Largest trace distance between reduced states of ``subset`` over probes."""
    states = [encoding.encode(p) for p in _probes(encoding, probes)]
    return max_pairwise_distance(states, subset)


# -- Knill-Laflamme style conditions ------------------------------------------

@dataclass(frozen=True)
class ErasureConditions:
    holds: bool
    c: dict | None


def _gram_deviation(blocks: list[np.ndarray]) -> tuple[float, float]:
    """Frobenius norms of M_ji (i != j) and M_ii - M_00, M_ji = A_j A_i^+."""
    n = len(blocks)
    if blocks[0].shape[0] <= blocks[0].shape[1]:
        M = {(j, i): blocks[j] @ blocks[i].conj().T for i in range(n) for j in range(n)}
        off = max((np.linalg.norm(M[j, i]) for i in range(n) for j in range(n) if i != j), default=0.0)
        spread = max(np.linalg.norm(M[i, i] - M[0, 0]) for i in range(n))
        return float(off), float(spread)
    N = {(a, b): blocks[a].conj().T @ blocks[b] for a in range(n) for b in range(n)}

    def tr(X, Y):
        return np.sum(X * Y.T)

    off = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                off = max(off, np.sqrt(max(tr(N[j, j], N[i, i]).real, 0.0)))
    spread = 0.0
    for i in range(n):
        sq = tr(N[i, i], N[i, i]) - 2 * tr(N[i, 0], N[0, i]).real + tr(N[0, 0], N[0, 0])
        spread = max(spread, np.sqrt(max(sq.real, 0.0)))
    return float(off), float(spread)


def check_erasure_conditions(basis: Sequence[PureState], K: Sequence[int], tol: float = TOL,
                             max_support: int = DEFAULT_MAX_SUPPORT) -> ErasureConditions:
    """Test <phi_i|E|phi_j> = c(E) delta_ij for every operator E on K.

    For |K| <= max_support, E runs over the generalized Pauli basis
    and the measured c(E) table is returned keyed by ``(a, b)``.
    Larger K are tested in the equivalent operator form (the Paulis
    span all operators) and ``c`` is None.
    """
    K = tuple(K)
    basis = list(basis)
    if not K:
        G = np.array([[bi.inner(bj) for bj in basis] for bi in basis])
        holds = bool(np.max(np.abs(G - np.eye(len(basis)))) <= tol)
        return ErasureConditions(holds, {((), ()): complex(G[0, 0])})
    dims = {basis[0].dims[r] for r in K}
    blocks = [_split(phi, K)[0] for phi in basis]
    if len(K) > max_support or len(dims) != 1:
        off, spread = _gram_deviation(blocks)
        return ErasureConditions(off <= tol and spread <= tol, None)
    (q,) = dims
    n = len(K)
    coeffs = {}
    for i, j in itertools.product(range(len(basis)), repeat=2):
        coeffs[i, j] = pauli_coefficients(blocks[j] @ blocks[i].conj().T, q, n)
    off = max((np.max(np.abs(coeffs[i, j])) for i, j in coeffs if i != j), default=0.0)
    spread = max(np.max(np.abs(coeffs[i, i] - coeffs[0, 0])) for i in range(len(basis)))
    c0 = coeffs[0, 0]
    table = {}
    for idx in itertools.product(range(q), repeat=2 * n):
        table[idx[:n], idx[n:]] = complex(c0[idx])
    return ErasureConditions(bool(off <= tol and spread <= tol), table)


def condition_c_deviation(basis: Sequence[PureState], K: Sequence[int], c: dict,
                          secrets: Sequence[np.ndarray]) -> float:
    """max |<phi|E|phi> - c(E)| over superposed codewords phi."""
    K = tuple(K)
    q = basis[0].dims[K[0]]
    n = len(K)
    stack = np.stack([b.amplitudes for b in basis])
    worst = 0.0
    for sec in secrets:
        phi = PureState.from_vector(np.asarray(sec) @ stack[: len(sec)], basis[0].dims)
        rho = partial_trace(phi, K)
        coeffs = pauli_coefficients(rho.matrix, q, n)
        for (a, b), val in c.items():
            worst = max(worst, abs(coeffs[a + b] - val))
    return worst


# -- classification -----------------------------------------------------------

@dataclass(frozen=True)
class SubsetVerdict:
    coords: tuple[int, ...]
    verdict: str
    fidelity: float
    distance: float
    labels: tuple[str, ...] = ()
    expected: str | None = None

    @property
    def ok(self) -> bool:
        return self.expected is None or self.expected == self.verdict

    def line(self) -> str:
        idx = ",".join(map(str, self.coords)) or "-"
        return f"SUBSET {idx} VERDICT {self.verdict} FID {self.fidelity:.12f} TD {self.distance:.12f}"


def classify(encoding: Encoding, subset: Sequence[int], probes=None, tol: float = TOL,
             labels: tuple[str, ...] = (), expected: str | None = None) -> SubsetVerdict:
    probes = _probes(encoding, probes)
    subset = tuple(sorted(subset))
    fid = reconstruction_fidelity(encoding, subset, probes)
    td = check_no_information(encoding, subset, probes)
    if fid >= 1 - tol:
        verdict = "authorized"
    elif td <= tol:
        verdict = "unauthorized"
    else:
        verdict = "intermediate"
    return SubsetVerdict(subset, verdict, fid, td, labels, expected)


def _shares(encoding: Encoding) -> list[tuple[str, tuple[int, ...]]]:
    if encoding.spec is not None:
        return list(encoding.spec.bundles)
    return [(str(j), (j,)) for j in encoding.retained]


def check_pure_state_structure(encoding: Encoding | SchemeSpec, probes=None,
                               tol: float = TOL) -> bool:
    """Complement duality of authorized and unauthorized share sets.

    Raises NotPureScheme when some probe encodes to a mixed state on the
    retained coordinates. For threshold schemes also requires n = 2k-1.
    """
    if isinstance(encoding, SchemeSpec):
        encoding = Encoding.from_spec(encoding)
    probes = _probes(encoding, probes)
    env = [j for j in range(len(encoding.dims)) if j not in encoding.retained]
    if env:
        for p in probes:
            purity = partial_trace(encoding.encode(p), env).purity()
            if purity < 1 - tol:
                raise NotPureScheme(f"{encoding.name}: retained state has purity {purity:.6f}")
    shares = _shares(encoding)
    labels = [lab for lab, _ in shares]
    table = dict(shares)
    verdicts = {}
    for r in range(len(labels) + 1):
        for combo in itertools.combinations(labels, r):
            coords = tuple(sorted(j for lab in combo for j in table[lab]))
            verdicts[frozenset(combo)] = classify(encoding, coords, probes, tol).verdict
    everyone = frozenset(labels)
    for combo, verdict in verdicts.items():
        if verdict == "intermediate":
            return False
        dual = verdicts[everyone - combo]
        if (verdict == "authorized") != (dual == "unauthorized"):
            return False
    if encoding.spec is not None:
        return encoding.spec.n == 2 * encoding.spec.k - 1
    return True


# -- reports ------------------------------------------------------------------

@dataclass
class VerificationReport:
    summary: str
    subsets: list[SubsetVerdict] = field(default_factory=list)
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v.ok for v in self.subsets) and all(ok for _, ok, _ in self.checks)

    def lines(self) -> list[str]:
        return [v.line() for v in self.subsets]

    def render(self) -> str:
        out = [self.summary]
        for v in self.subsets:
            tag = "ok" if v.ok else f"MISMATCH (expected {v.expected})"
            shares = "{" + ",".join(v.labels) + "}" if v.labels else ""
            out.append(f"  {v.line()}  {shares} {tag}".rstrip())
        for name, ok, detail in self.checks:
            out.append(f"  CHECK {name}: {'pass' if ok else 'FAIL'} ({detail})")
        out.append("PASS" if self.passed else "FAIL")
        return "\n".join(out)


def _map(fn: Callable, items: list, workers: int | None) -> list:
    if not workers or workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def full_report(spec: SchemeSpec, tol: float = TOL, cap: int = DEFAULT_STATE_CAP,
                workers: int | None = None, probes=None) -> VerificationReport:
    """Classify every nonempty share set and run the structural checks."""
    if spec.q**spec.m > cap:
        raise TooLarge(f"q^m = {spec.q**spec.m} exceeds cap {cap}")
    enc = Encoding.from_spec(spec)
    probes = _probes(enc, probes)
    labels = list(spec.labels)
    combos = [c for r in range(1, len(labels) + 1) for c in itertools.combinations(labels, r)]

    def run(combo):
        coords = spec.coords(combo)
        expected = "authorized" if len(coords) >= spec.k else "unauthorized"
        return classify(enc, coords, probes, tol, tuple(combo), expected)

    report = VerificationReport(spec.describe(), _map(run, combos, workers))

    authorized = [set(v.labels) for v in report.subsets if v.verdict == "authorized"]
    disjoint = any(a.isdisjoint(b) for a, b in itertools.combinations(authorized, 2))
    report.checks.append(("no-cloning", spec.n < 2 * spec.k and not disjoint,
                          f"n={spec.n} < 2k={2 * spec.k}, no disjoint authorized sets"))

    if spec.is_pure():
        ok = check_pure_state_structure(enc, probes, tol)
        report.checks.append(("complement-duality", ok, "pure scheme, n = 2k-1"))
    else:
        probe = np.zeros(spec.params.s, dtype=np.complex128)
        probe[:2] = 1 / np.sqrt(2)
        rank = SharedState(enc.encode(probe), spec).retained_state().rank()
        report.checks.append(("mixed-state", rank >= 2, f"retained rank {rank} for (|0>+|1>)/sqrt2"))

    if spec.q**spec.k <= 10**4:
        d1, d2 = min_distance_check(spec.params, cap)
        target = spec.m - spec.k + 1
        report.checks.append(("css-distance", min(d1, d2) == target,
                              f"dist C1={d1}, dist C2^perp={d2}, m-k+1={target}"))

    bad = []
    for r in range(1, spec.k):
        for K in itertools.combinations(spec.retained, r):
            if not check_erasure_conditions(enc.images, K, tol).holds:
                bad.append(K)
    report.checks.append(("erasure-conditions", not bad,
                          f"c(E) constant on every set of <= {spec.k - 1} coordinates"
                          + (f"; violated on {bad}" if bad else "")))
    return report


# -- demos --------------------------------------------------------------------

@dataclass
class DemoReport:
    name: str
    facts: dict[str, float] = field(default_factory=dict)
    checks: list[tuple[str, bool]] = field(default_factory=list)
    lines: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def render(self) -> str:
        out = [f"demo {self.name}"]
        out += [f"  {k} = {v:.12f}" for k, v in self.facts.items()]
        out += [f"  {line}" for line in self.lines]
        out += [f"  CHECK {name}: {'pass' if ok else 'FAIL'}" for name, ok in self.checks]
        out.append("PASS" if self.passed else "FAIL")
        return "\n".join(out)


def four_qubit_code() -> Encoding:
    """The 4-qubit erasure code a(|0000>+|1111>) + b(|0011>+|1100>)."""
    v0 = np.zeros(16)
    v0[[0b0000, 0b1111]] = 1
    v1 = np.zeros(16)
    v1[[0b0011, 0b1100]] = 1
    return Encoding.from_vectors("four-qubit", [v0, v1], (2, 2, 2, 2))


def restricted_22() -> Encoding:
    """a(|00>-|11>) + b(|01>+|10>), secure only when a b* is real."""
    v0 = np.array([1, 0, 0, -1])
    v1 = np.array([0, 1, 1, 0])
    return Encoding.from_vectors("restricted-22", [v0, v1], (2, 2))


def demo_four_qubit_leak(tol: float = TOL) -> DemoReport:
    enc = four_qubit_code()
    basis = [np.array([1, 0]), np.array([0, 1])]
    rep = DemoReport("four-qubit-leak")
    rep.facts["td_{0,2}(|0>,|1>)"] = check_no_information(enc, (0, 2), basis)
    worst = 1.0
    for S in itertools.combinations(range(4), 3):
        f = check_reconstruction(enc, S)
        rep.lines.append(f"subset {S}: reconstruction fidelity {f:.12f}")
        worst = min(worst, f)
    for S in itertools.combinations(range(4), 2):
        rep.lines.append(f"subset {S}: trace distance |0> vs |1> {check_no_information(enc, S, basis):.12f}")
    rep.facts["min 3-subset fidelity"] = worst
    rep.checks.append(("qubits {0,2} distinguish |0> from |1>", rep.facts["td_{0,2}(|0>,|1>)"] >= 1 - tol))
    rep.checks.append(("every 3 qubits reconstruct", worst >= 1 - tol))
    return rep


def demo_restricted_22(tol: float = 1e-10) -> DemoReport:
    enc = restricted_22()
    r = 1 / np.sqrt(2)
    phase_pair = [np.array([r, 1j * r]), np.array([r, -1j * r])]
    real_probes = [np.array([1, 0]), np.array([0, 1]), np.array([r, r])]
    rep = DemoReport("restricted-22")
    td_phase = min(check_no_information(enc, (j,), phase_pair) for j in (0, 1))
    td_real = max(check_no_information(enc, (j,), real_probes) for j in (0, 1))
    fid = reconstruction_fidelity(enc, (0, 1), real_probes)
    rep.facts["single-share td, (|0>+i|1>) vs (|0>-i|1>)"] = td_phase
    rep.facts["single-share td, real-amplitude probes"] = td_real
    rep.facts["two-share reconstruction fidelity"] = fid
    rep.checks.append(("one share separates the i-phase secrets", td_phase >= 1 - tol))
    rep.checks.append(("real-ratio secrets leak nothing to one share", td_real <= tol))
    rep.checks.append(("both shares reconstruct", fid >= 1 - tol))
    return rep


def demo_epr_product(tol: float = TOL) -> DemoReport:
    """Alice keeps half of an EPR pair; the other half goes through ((2,2))."""
    from .scheme import build_threshold, bundle, reconstruct, split_entangled

    spec = bundle(build_threshold(2, 2, 2), [[0], [1]], labels=["Bob", "Carol"])
    shared = split_entangled(spec, maximally_entangled(2))
    rep = DemoReport("epr")
    rho_a = partial_trace(shared.state, [0])
    rep.facts["td(rho_Alice, I/2)"] = float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(rho_a.matrix - np.eye(2) / 2))))
    for lab in spec.labels:
        reg = shared.register(spec.coords([lab])[0])
        joint = partial_trace(shared.state, [0, reg])
        product = rho_a.kron(partial_trace(shared.state, [reg]))
        rep.facts[f"td(rho_Alice{lab}, rho_Alice x rho_{lab})"] = trace_distance(joint, product)
    rec = reconstruct(shared, spec.labels)
    rep.facts["entanglement fidelity after reconstruction"] = rec.fidelity
    rep.checks.append(("Alice alone holds I/2", rep.facts["td(rho_Alice, I/2)"] <= tol))
    for lab in spec.labels:
        rep.checks.append((f"Alice and {lab} share a product state",
                           rep.facts[f"td(rho_Alice{lab}, rho_Alice x rho_{lab})"] <= tol))
    rep.checks.append(("Bob and Carol rebuild the EPR pair with Alice", rec.fidelity >= 1 - tol))
    return rep


def demo_qutrit_233(tol: float = TOL) -> DemoReport:
    """The ((2,3)) qutrit scheme: reproduce the three-qutrit map and verify it."""
    from .hilbert import index_of
    from .scheme import build_threshold

    spec = build_threshold(2, 3, 3)
    expected = {0: ("000", "111", "222"), 1: ("012", "120", "201"), 2: ("021", "102", "210")}
    dev = 0.0
    for v, kets in expected.items():
        vec = np.zeros(27, dtype=np.complex128)
        for ket in kets:
            vec[index_of((3, 3, 3), [int(c) for c in ket])] = 1 / np.sqrt(3)
        dev = max(dev, float(np.max(np.abs(split(spec, np.eye(3)[v]).state.amplitudes - vec))))
    rep = DemoReport("qutrit-233")
    rep.facts["max amplitude deviation from the three-qutrit map"] = dev
    report = full_report(spec, tol)
    rep.lines = report.render().splitlines()
    rep.checks.append(("encoding matches the three-qutrit map", dev <= 1e-12))
    rep.checks.append(("full verification", report.passed))
    return rep


DEMOS = {
    "qutrit-233": demo_qutrit_233,
    "four-qubit-leak": demo_four_qubit_leak,
    "restricted-22": demo_restricted_22,
    "epr": demo_epr_product,
}

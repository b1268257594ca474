"""Threshold schemes and bundled access structures.

A ((k, n)) scheme is built from the length m = 2k-1 polynomial code by
discarding m - n coordinates. Discarded coordinates stay in the global
state as a purification; share-facing APIs never expose them, so the
retained shares carry the (possibly mixed) encoding.
"""

from __future__ import annotations

import itertools
import string
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field, replace

import numpy as np

from . import gfq
from .hilbert import DensityMatrix, PureState, partial_trace
from .polycode import CodeParams, decode_subset, encode_with_reference


class NoCloningViolation(ValueError):
    """n >= 2k: two disjoint authorized sets would clone the secret."""


class ThresholdFloor(ValueError):
    pass


class InvalidPartition(ValueError):
    pass


class BadSecretDimension(ValueError):
    pass


class UnknownShareLabel(KeyError):
    pass


def default_labels(count: int) -> list[str]:
    if count <= len(string.ascii_uppercase):
        return list(string.ascii_uppercase[:count])
    return [f"S{i}" for i in range(count)]


@dataclass(frozen=True)
class SchemeSpec:
    k: int
    n: int
    params: CodeParams
    discarded: tuple[int, ...]
    bundles: tuple[tuple[str, tuple[int, ...]], ...]

    def __post_init__(self):
        m = self.params.m
        if self.params.k != self.k or m != 2 * self.k - 1:
            raise ValueError("scheme needs a length 2k-1 code with matching k")
        if not self.k <= self.n < 2 * self.k:
            raise NoCloningViolation(f"need k <= n < 2k, got k={self.k}, n={self.n}")
        discarded = tuple(sorted(set(self.discarded)))
        if any(not 0 <= j < m for j in discarded) or m - len(discarded) != self.n:
            raise ValueError(f"discarded coordinates {self.discarded} inconsistent with n={self.n}")
        object.__setattr__(self, "discarded", discarded)
        bundles = tuple((str(lab), tuple(sorted(coords))) for lab, coords in self.bundles)
        labels = [lab for lab, _ in bundles]
        if len(set(labels)) != len(labels):
            raise InvalidPartition(f"duplicate share labels {labels}")
        covered = sorted(j for _, coords in bundles for j in coords)
        if covered != list(self.retained) or any(not coords for _, coords in bundles):
            raise InvalidPartition(f"bundles {bundles} do not partition {self.retained}")
        object.__setattr__(self, "bundles", bundles)

    @property
    def m(self) -> int:
        return self.params.m

    @property
    def q(self) -> int:
        return self.params.q

    @property
    def retained(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.m) if j not in self.discarded)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(lab for lab, _ in self.bundles)

    def coords(self, shares: Iterable[str]) -> tuple[int, ...]:
        """Union of the coordinates held by ``shares``, ascending."""
        table = dict(self.bundles)
        out = []
        for lab in shares:
            if lab not in table:
                raise UnknownShareLabel(lab)
            out.extend(table[lab])
        return tuple(sorted(out))

    def share_dim(self, label: str) -> int:
        return self.q ** len(self.coords([label]))

    def is_pure(self) -> bool:
        return not self.discarded

    def describe(self) -> str:
        shares = " ".join(f"{lab}={','.join(map(str, c))}" for lab, c in self.bundles)
        disc = ",".join(map(str, self.discarded)) or "-"
        return (f"(({self.k},{self.n})) scheme: m={self.m} q={self.q} s={self.params.s} "
                f"shares[{shares}] discarded[{disc}]")


@dataclass(frozen=True)
class AccessStructure:
    authorized: frozenset[frozenset[str]]
    unauthorized: frozenset[frozenset[str]]

    def minimal_authorized(self) -> list[frozenset[str]]:
        return sorted(
            (a for a in self.authorized if not any(b < a for b in self.authorized)),
            key=lambda a: (len(a), sorted(a)),
        )


def build_threshold(k: int, n: int, s: int) -> SchemeSpec:
    """((k, n)) scheme from the length 2k-1 code, last m-n coordinates discarded."""
    if k < 1 or n < k or s < 2:
        raise ValueError(f"need k >= 1, n >= k, s >= 2; got k={k}, n={n}, s={s}")
    if n >= 2 * k:
        raise NoCloningViolation(f"no-cloning violation: n >= 2k (k={k}, n={n})")
    m = 2 * k - 1
    params = CodeParams.make(k, m, s, q=gfq.choose_prime(m, s))
    retained = range(n)
    return SchemeSpec(
        k=k,
        n=n,
        params=params,
        discarded=tuple(range(n, m)),
        bundles=tuple(zip(default_labels(n), ((j,) for j in retained))),
    )


def discard(spec: SchemeSpec) -> SchemeSpec:
    """Trace out the highest retained coordinate: ((k, n)) -> ((k, n-1))."""
    if spec.n <= spec.k:
        raise ThresholdFloor(f"cannot discard below the threshold (n = k = {spec.k})")
    j = spec.retained[-1]
    bundles = tuple(
        (lab, tuple(c for c in coords if c != j)) for lab, coords in spec.bundles
    )
    bundles = tuple(b for b in bundles if b[1])
    return replace(spec, n=spec.n - 1, discarded=spec.discarded + (j,), bundles=bundles)


def bundle(spec: SchemeSpec, partition: Sequence[Sequence[int]],
           labels: Sequence[str] | None = None) -> SchemeSpec:
    """Regroup the retained coordinates into shares, one per partition block."""
    blocks = [tuple(int(j) for j in block) for block in partition]
    if labels is None:
        labels = default_labels(len(blocks))
    if len(labels) != len(blocks):
        raise InvalidPartition("one label per partition block is required")
    flat = sorted(j for b in blocks for j in b)
    if flat != list(spec.retained) or any(not b for b in blocks):
        raise InvalidPartition(f"{blocks} is not a partition of {spec.retained}")
    return replace(spec, bundles=tuple(zip(labels, blocks)))


def access_structure(spec: SchemeSpec) -> AccessStructure:
    """Share sets with at least k coordinates are authorized, the rest not."""
    auth, unauth = set(), set()
    for r in range(len(spec.labels) + 1):
        for combo in itertools.combinations(spec.labels, r):
            target = auth if len(spec.coords(combo)) >= spec.k else unauth
            target.add(frozenset(combo))
    return AccessStructure(frozenset(auth), frozenset(unauth))


def probe_secrets(s: int, seed: int = 42) -> list[np.ndarray]:
    """Basis states, (|0>+|a>)/sqrt2, (|0>+i|a>)/sqrt2, and one random state.

    The complex-phase probes matter: real amplitudes alone can miss leaks.
    """
    probes = [np.eye(s, dtype=np.complex128)[v] for v in range(s)]
    for phase in (1, 1j):
        for a in range(1, s):
            v = np.zeros(s, dtype=np.complex128)
            v[0] = 1 / np.sqrt(2)
            v[a] = phase / np.sqrt(2)
            probes.append(v)
    rng = np.random.default_rng(seed)
    v = rng.normal(size=s) + 1j * rng.normal(size=s)
    probes.append(v / np.linalg.norm(v))
    return probes


def maximally_entangled(s: int) -> np.ndarray:
    """Joint amplitudes sum_v |v>_ref |v>_secret / sqrt(s) as an (s, s) matrix."""
    return np.eye(s, dtype=np.complex128) / np.sqrt(s)


@dataclass(frozen=True, eq=False)
class SharedState:
    """Global purification of a split secret.

    Registers ``0..len(reference_dims)-1`` belong to an outside reference
    system; code coordinate j is register ``len(reference_dims) + j``.
    ``secret`` is the dealt state on reference (x) secret, kept for
    fidelity reports; it is None for states loaded from disk.
    """

    state: PureState
    spec: SchemeSpec
    secret: np.ndarray | None = None
    reference_dims: tuple[int, ...] = field(default=())

    @property
    def offset(self) -> int:
        return len(self.reference_dims)

    def register(self, coord: int) -> int:
        return self.offset + coord

    def shares_state(self, shares: Iterable[str]) -> DensityMatrix:
        coords = self.spec.coords(shares)
        return partial_trace(self.state, [self.register(j) for j in coords])

    def retained_state(self) -> DensityMatrix:
        return partial_trace(self.state, [self.register(j) for j in self.spec.retained])


def _check_secret(spec: SchemeSpec, dim: int):
    if not 1 <= dim <= spec.params.s:
        raise BadSecretDimension(f"secret dimension {dim} not in [1, {spec.params.s}]")


def split(spec: SchemeSpec, secret: Sequence[complex]) -> SharedState:
    secret = np.asarray(secret, dtype=np.complex128).reshape(-1)
    _check_secret(spec, secret.size)
    if abs(np.linalg.norm(secret) - 1) > 1e-9:
        raise ValueError("secret must be normalized")
    state = encode_with_reference(secret.reshape(1, -1), spec.params)
    return SharedState(PureState(spec.params.dims, state.amplitudes), spec, secret)


def split_entangled(spec: SchemeSpec, joint: np.ndarray) -> SharedState:
    """Split the secret half of a state on reference (x) secret.

    ``joint[r, v]`` is the amplitude of |r>_ref |v>_secret.
    """
    joint = np.asarray(joint, dtype=np.complex128)
    _check_secret(spec, joint.shape[1])
    state = encode_with_reference(joint, spec.params)
    return SharedState(state, spec, joint.reshape(-1), (joint.shape[0],))


@dataclass(frozen=True, eq=False)
class Reconstruction:
    """Result of :func:`reconstruct`.

    ``output`` is the recovered state (reference registers first) when the
    shares are authorized, otherwise the reduced state of the shares.
    """

    reconstructible: bool
    output: PureState | DensityMatrix
    density: DensityMatrix
    fidelity: float | None
    coords: tuple[int, ...]


def _embed(joint: np.ndarray, ref_dims: tuple[int, ...], q: int) -> np.ndarray:
    R = int(np.prod(ref_dims)) if ref_dims else 1
    mat = joint.reshape(R, -1)
    out = np.zeros((R, q), dtype=np.complex128)
    out[:, : mat.shape[1]] = mat
    return out.reshape(-1)


def dominant_state(rho: DensityMatrix, align: np.ndarray | None = None) -> PureState:
    """Top eigenvector of ``rho`` with a fixed global phase.

    The phase makes the overlap with ``align`` real and positive, or
    otherwise the largest-magnitude amplitude real and positive.
    """
    _, vecs = np.linalg.eigh(rho.matrix)
    v = vecs[:, -1]
    ref = np.vdot(align, v) if align is not None else v[np.argmax(np.abs(v))]
    if abs(ref) > 1e-12:
        v = v * (abs(ref) / ref)
    return PureState.from_vector(v, rho.dims)


def recover(shared: SharedState, coords: Sequence[int]) -> tuple[PureState, int]:
    """Decode from the k lowest of ``coords``; returns (state, output register)."""
    spec = shared.spec
    chosen = sorted(coords)[: spec.k]
    regs = [shared.register(j) for j in range(spec.m)]
    out = decode_subset(shared.state, chosen, spec.params, code_registers=regs)
    return out, shared.register(chosen[0])


def reconstruct(shared: SharedState, shares: Iterable[str]) -> Reconstruction:
    spec = shared.spec
    coords = spec.coords(shares)
    if len(coords) < spec.k:
        rho = partial_trace(shared.state, [shared.register(j) for j in coords]) if coords else None
        if rho is None:
            raise ValueError("no shares given")
        return Reconstruction(False, rho, rho, None, coords)
    decoded, out_reg = recover(shared, coords)
    keep = list(range(shared.offset)) + [out_reg]
    rho = partial_trace(decoded, keep)
    target = None
    fid = None
    if shared.secret is not None:
        target = _embed(shared.secret, shared.reference_dims, spec.q)
        fid = float(np.real(np.vdot(target, rho.matrix @ target)))
    return Reconstruction(True, dominant_state(rho, target), rho, fid, coords)

"""Dense simulation of registers of qudits with mixed dimensions.

Basis index convention: register 0 is the most significant digit, so the
label tuple ``(y_0, ..., y_{r-1})`` sits at ``sum_j y_j * prod_{l>j} d_l``.
This is numpy's C order for a tensor of shape ``dims``.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .gfq import SingularMatrix, mat_inverse

NORM_TOL = 1e-12
PSD_TOL = 1e-10


class LabelOutOfRange(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class InvalidPermutation(ValueError):
    pass


class EmptyKeepSet(ValueError):
    pass


def _dims(dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if not dims:
        raise ValueError("register system needs at least one register")
    if any(d < 1 for d in dims):
        raise ValueError(f"invalid register dimensions {dims}")
    return dims


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PureState:
    """A normalized ket on registers of dimensions ``dims``."""

    dims: tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        dims = _dims(self.dims)
        amps = _frozen(np.ravel(self.amplitudes))
        if amps.size != int(np.prod(dims)):
            raise DimensionMismatch(f"{amps.size} amplitudes for dims {dims}")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized (norm^2 = {norm2!r})")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_vector(cls, vec, dims: Sequence[int] | None = None) -> PureState:
        """Build a state from any nonzero vector, normalizing it."""
        vec = np.ravel(np.asarray(vec, dtype=np.complex128))
        norm = np.linalg.norm(vec)
        if norm == 0:
            raise ValueError("zero vector is not a state")
        return cls(tuple(dims) if dims is not None else (vec.size,), vec / norm)

    @property
    def num_registers(self) -> int:
        return len(self.dims)

    @property
    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.dims)

    def inner(self, other: PureState) -> complex:
        """<self|other>."""
        if self.dims != other.dims:
            raise DimensionMismatch(f"{self.dims} vs {other.dims}")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def kron(self, other: PureState) -> PureState:
        return PureState(self.dims + other.dims, np.kron(self.amplitudes, other.amplitudes))

    def density(self) -> DensityMatrix:
        return DensityMatrix(self.dims, np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace operator on registers of dimensions ``dims``.

    Hermiticity and trace are checked on construction; positivity is
    checked by :meth:`is_physical` since it needs an eigendecomposition.
    """

    dims: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        dims = _dims(self.dims)
        D = int(np.prod(dims))
        mat = _frozen(self.matrix)
        if mat.shape != (D, D):
            raise DimensionMismatch(f"matrix shape {mat.shape} for dims {dims}")
        if np.max(np.abs(mat - mat.conj().T), initial=0.0) > NORM_TOL:
            raise ValueError("density matrix is not Hermitian")
        tr = np.trace(mat)
        if abs(tr - 1.0) > NORM_TOL:
            raise ValueError(f"density matrix trace is {tr!r}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    def is_physical(self) -> bool:
        return bool(self.eigenvalues().min() >= -PSD_TOL)

    def rank(self, tol: float = 1e-8) -> int:
        return int(np.sum(self.eigenvalues() > tol))

    def purity(self) -> float:
        return float(np.real(np.vdot(self.matrix, self.matrix)))

    def kron(self, other: DensityMatrix) -> DensityMatrix:
        return DensityMatrix(self.dims + other.dims, np.kron(self.matrix, other.matrix))


@dataclass(frozen=True, eq=False)
class SubsetOperator:
    """An operator acting on the registers in ``support`` (in that order)."""

    support: tuple[int, ...]
    local_dims: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        support = tuple(int(j) for j in self.support)
        local_dims = tuple(int(d) for d in self.local_dims)
        if len(set(support)) != len(support):
            raise ValueError(f"repeated register in support {support}")
        if len(local_dims) != len(support):
            raise DimensionMismatch("support and local_dims differ in length")
        D = int(np.prod(local_dims))
        mat = _frozen(self.matrix)
        if mat.shape != (D, D):
            raise DimensionMismatch(f"operator shape {mat.shape} for local dims {local_dims}")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "local_dims", local_dims)
        object.__setattr__(self, "matrix", mat)


def index_of(dims: Sequence[int], labels: Sequence[int]) -> int:
    idx = 0
    for d, y in zip(dims, labels):
        idx = idx * d + int(y)
    return idx


def basis_state(dims: Sequence[int], labels: Sequence[int]) -> PureState:
    dims = _dims(dims)
    if len(labels) != len(dims):
        raise DimensionMismatch(f"{len(labels)} labels for {len(dims)} registers")
    for y, d in zip(labels, dims):
        if not 0 <= int(y) < d:
            raise LabelOutOfRange(f"label {y} out of range for dimension {d}")
    amps = np.zeros(int(np.prod(dims)), dtype=np.complex128)
    amps[index_of(dims, labels)] = 1.0
    return PureState(dims, amps)


def random_state(dims: Sequence[int], rng: np.random.Generator) -> PureState:
    """Haar-random pure state (normalized complex Gaussian vector)."""
    D = int(np.prod(dims))
    vec = rng.normal(size=D) + 1j * rng.normal(size=D)
    return PureState.from_vector(vec, dims)


def _check_registers(dims: tuple[int, ...], registers: Sequence[int]) -> tuple[int, ...]:
    registers = tuple(int(r) for r in registers)
    if len(set(registers)) != len(registers):
        raise ValueError(f"repeated register in {registers}")
    for r in registers:
        if not 0 <= r < len(dims):
            raise IndexError(f"register {r} out of range for {len(dims)} registers")
    return registers


def _split(state: PureState, registers: Sequence[int]) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reshape the state into a (D_registers, D_rest) matrix."""
    rest = tuple(r for r in range(state.num_registers) if r not in registers)
    t = np.transpose(state.tensor, tuple(registers) + rest)
    d_reg = int(np.prod([state.dims[r] for r in registers]))
    return t.reshape(d_reg, -1), rest


def _merge(mat: np.ndarray, new_dims: Sequence[int], registers: Sequence[int],
           rest: Sequence[int], rest_dims: Sequence[int]) -> np.ndarray:
    """Inverse of :func:`_split` with possibly new dims on ``registers``."""
    order = tuple(registers) + tuple(rest)
    t = mat.reshape(tuple(new_dims) + tuple(rest_dims))
    return np.transpose(t, np.argsort(order)).reshape(-1)


def apply_matrix(state: PureState, U: np.ndarray, registers: Sequence[int],
                 out_dims: Sequence[int] | None = None) -> PureState:
    """Apply a linear map ``U`` on ``registers``; the identity elsewhere.

    ``out_dims`` gives the output dimensions of those registers when ``U``
    is an isometry into a different space. The new registers take the
    place of the first of ``registers`` and the rest are removed.
    """
    registers = _check_registers(state.dims, registers)
    A, rest = _split(state, registers)
    if U.shape[1] != A.shape[0]:
        raise DimensionMismatch(f"operator acts on dim {U.shape[1]}, registers have {A.shape[0]}")
    out_dims = tuple(out_dims) if out_dims is not None else tuple(state.dims[r] for r in registers)
    if int(np.prod(out_dims)) != U.shape[0]:
        raise DimensionMismatch(f"operator output {U.shape[0]} does not match {out_dims}")
    B = U @ A
    rest_dims = [state.dims[r] for r in rest]
    if out_dims == tuple(state.dims[r] for r in registers):
        return PureState(state.dims, _merge(B, out_dims, registers, rest, rest_dims))
    # Registers change shape: place the block at the position of registers[0].
    pos = registers[0] if registers else -1
    head = [r for r in rest if r < pos]
    tail = [r for r in rest if r > pos]
    t = B.reshape(tuple(out_dims) + tuple(rest_dims))
    nh = len(head)
    k = len(out_dims)
    perm = list(range(k, k + nh)) + list(range(k)) + list(range(k + nh, k + len(rest)))
    t = np.transpose(t, perm)
    dims = tuple(state.dims[r] for r in head) + tuple(out_dims) + tuple(state.dims[r] for r in tail)
    return PureState(dims, t.reshape(-1))


def _label_permutation(state: PureState, registers: tuple[int, ...], M: np.ndarray, q: int) -> PureState:
    d = len(registers)
    labels = np.array(list(itertools.product(range(q), repeat=d)), dtype=np.int64).reshape(q**d, d)
    images = (labels @ M) % q
    weights = q ** np.arange(d - 1, -1, -1, dtype=np.int64)
    target = images @ weights
    A, rest = _split(state, registers)
    B = np.empty_like(A)
    B[target] = A
    rest_dims = [state.dims[r] for r in rest]
    return PureState(state.dims, _merge(B, [q] * d, registers, rest, rest_dims))


def apply_label_matrix(state: PureState, M: np.ndarray, registers: Sequence[int], q: int) -> PureState:
    """Basis permutation |y> -> |y M> (row vector times M, mod q) on ``registers``."""
    registers = _check_registers(state.dims, registers)
    M = np.asarray(M, dtype=np.int64) % q
    if M.shape != (len(registers), len(registers)):
        raise DimensionMismatch(f"matrix shape {M.shape} for {len(registers)} registers")
    for r in registers:
        if state.dims[r] != q:
            raise DimensionMismatch(f"register {r} has dimension {state.dims[r]}, not {q}")
    mat_inverse(M, q)  # raises SingularMatrix
    return _label_permutation(state, registers, M, q)


def permute_registers(state: PureState, perm: Sequence[int]) -> PureState:
    """Relabel registers: new register ``i`` is old register ``perm[i]``."""
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(state.num_registers)):
        raise InvalidPermutation(f"{perm} is not a permutation of {state.num_registers} registers")
    t = np.transpose(state.tensor, perm)
    return PureState(tuple(state.dims[p] for p in perm), t.reshape(-1))


def add_scaled_register(state: PureState, src: int, dst: int, factor: int, q: int) -> PureState:
    """|.., y_src, .., y_dst, ..> -> |.., y_src, .., y_dst + factor * y_src, ..>."""
    if src == dst:
        raise ValueError("source and destination registers must differ")
    M = np.array([[1, factor % q], [0, 1]], dtype=np.int64)
    return apply_label_matrix(state, M, (src, dst), q)


def partial_trace(state: PureState | DensityMatrix, keep: Sequence[int]) -> DensityMatrix:
    """Reduced state on ``keep``, registers ordered as listed."""
    keep = tuple(int(r) for r in keep)
    if not keep:
        raise EmptyKeepSet("must keep at least one register")
    keep = _check_registers(state.dims, keep)
    kept_dims = tuple(state.dims[r] for r in keep)
    if isinstance(state, PureState):
        A, _ = _split(state, keep)
        rho = A @ A.conj().T
    else:
        n = len(state.dims)
        rest = tuple(r for r in range(n) if r not in keep)
        t = state.matrix.reshape(state.dims + state.dims)
        t = np.transpose(t, keep + rest + tuple(n + r for r in keep) + tuple(n + r for r in rest))
        dk = int(np.prod(kept_dims))
        dr = int(np.prod([state.dims[r] for r in rest]))
        rho = np.einsum("ijkj->ik", t.reshape(dk, dr, dk, dr))
    rho = (rho + rho.conj().T) / 2
    return DensityMatrix(kept_dims, rho)


def fidelity(rho: DensityMatrix, psi: PureState) -> float:
    """<psi|rho|psi>."""
    if rho.dim != psi.amplitudes.size:
        raise DimensionMismatch(f"{rho.dims} vs {psi.dims}")
    v = psi.amplitudes
    return float(np.real(np.vdot(v, rho.matrix @ v)))


def trace_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    if rho.matrix.shape != sigma.matrix.shape:
        raise DimensionMismatch(f"{rho.dims} vs {sigma.dims}")
    eig = np.linalg.eigvalsh(rho.matrix - sigma.matrix)
    return float(0.5 * np.sum(np.abs(eig)))


def shift_matrix(q: int, power: int = 1) -> np.ndarray:
    """X^power with X|y> = |y+1 mod q>."""
    X = np.zeros((q, q), dtype=np.complex128)
    for y in range(q):
        X[(y + power) % q, y] = 1.0
    return X


def clock_matrix(q: int, power: int = 1) -> np.ndarray:
    """Z^power with Z|y> = w^y |y>, w = exp(2 pi i / q)."""
    y = np.arange(q)
    return np.diag(np.exp(2j * np.pi * power * y / q))


def gen_pauli(a: Sequence[int], b: Sequence[int], support: Sequence[int], q: int) -> SubsetOperator:
    """The generalized Pauli X^a Z^b = (x)_j X^{a_j} Z^{b_j} on ``support``."""
    if not (len(a) == len(b) == len(support)):
        raise DimensionMismatch("a, b and support must have equal length")
    mat = np.ones((1, 1), dtype=np.complex128)
    for aj, bj in zip(a, b):
        mat = np.kron(mat, shift_matrix(q, int(aj)) @ clock_matrix(q, int(bj)))
    return SubsetOperator(tuple(support), (q,) * len(support), mat)


def pauli_basis(support: Sequence[int], q: int):
    """Yield ``((a, b), operator)`` over all q^(2|support|) generalized Paulis."""
    n = len(support)
    for a in itertools.product(range(q), repeat=n):
        for b in itertools.product(range(q), repeat=n):
            yield (a, b), gen_pauli(a, b, support, q)


def pauli_coefficients(M: np.ndarray, q: int, n: int) -> np.ndarray:
    """All traces tr(X^a Z^b M) for an operator ``M`` on ``n`` qudits.

    Returns an array indexed ``[a_1..a_n, b_1..b_n]``. Uses
    tr(X^a Z^b M) = sum_z w^(b.z) M[z, z+a], one inverse FFT per shift a.
    """
    D = q**n
    M = np.asarray(M).reshape((q,) * (2 * n))
    if n == 0:
        return np.asarray(M, dtype=np.complex128).reshape(())
    grids = np.indices((q,) * n).reshape(n, -1)
    zi = [grids[j] for j in range(n)]
    out = np.empty((D, D), dtype=np.complex128)
    for ai, a in enumerate(itertools.product(range(q), repeat=n)):
        cols = [(zi[j] + a[j]) % q for j in range(n)]
        g = M[tuple(zi) + tuple(cols)].reshape((q,) * n)
        out[ai] = (np.fft.ifftn(g) * D).reshape(-1)
    return out.reshape((q,) * (2 * n))


def _register_block(state: PureState, op: SubsetOperator) -> DensityMatrix:
    for r, d in zip(op.support, op.local_dims):
        if not 0 <= r < state.num_registers:
            raise IndexError(f"register {r} out of range")
        if state.dims[r] != d:
            raise DimensionMismatch(f"register {r} has dimension {state.dims[r]}, operator expects {d}")
    return partial_trace(state, op.support)


def expectation(state: PureState, op: SubsetOperator) -> complex:
    """<phi|E|phi> with E extended by the identity off its support."""
    if not op.support:
        return complex(op.matrix[0, 0])
    rho = _register_block(state, op)
    return complex(np.sum(op.matrix * rho.matrix.T))


__all__ = [
    "DensityMatrix",
    "DimensionMismatch",
    "EmptyKeepSet",
    "InvalidPermutation",
    "LabelOutOfRange",
    "PureState",
    "SingularMatrix",
    "SubsetOperator",
    "add_scaled_register",
    "apply_label_matrix",
    "apply_matrix",
    "basis_state",
    "clock_matrix",
    "expectation",
    "fidelity",
    "gen_pauli",
    "index_of",
    "partial_trace",
    "pauli_basis",
    "pauli_coefficients",
    "permute_registers",
    "random_state",
    "shift_matrix",
    "trace_distance",
]

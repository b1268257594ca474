"""Quantum polynomial codes over Z_q.

A basis secret |s> is encoded as the uniform superposition of the
evaluation tuples (p_c(x_0), ..., p_c(x_{m-1})) over all polynomials
p_c of degree < k whose leading coefficient c_{k-1} equals s.
"""

from __future__ import annotations

import functools
import itertools
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import gfq
from .hilbert import (
    DimensionMismatch,
    PureState,
    add_scaled_register,
    apply_label_matrix,
    permute_registers,
)

DEFAULT_ENUM_CAP = 10**6


class ParamViolation(ValueError):
    """Code parameters break one of the construction's requirements."""


class WrongSubsetSize(ValueError):
    pass


class TooLarge(ValueError):
    """Exhaustive enumeration would exceed the configured cap."""


@dataclass(frozen=True)
class CodeParams:
    k: int
    m: int
    q: int
    s: int
    points: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(int(x) for x in self.points))
        k, m, q, s = self.k, self.m, self.q, self.s
        if k < 1 or m < 1:
            raise ParamViolation(f"need k >= 1 and m >= 1, got k={k}, m={m}")
        if m >= 2 * k:
            raise ParamViolation(
                f"m={m} >= 2k={2 * k}: the secret could not be disentangled from k registers"
            )
        if not gfq.is_prime(q):
            raise ParamViolation(f"q={q} is not prime")
        if s > q:
            raise ParamViolation(f"secret dimension s={s} exceeds q={q}")
        if m > q:
            raise ParamViolation(f"code length m={m} exceeds q={q}")
        if len(self.points) != m:
            raise ParamViolation(f"{len(self.points)} evaluation points for m={m}")
        if any(not 0 <= x < q for x in self.points):
            raise ParamViolation(f"evaluation points {self.points} not reduced mod {q}")
        if len(set(self.points)) != m:
            raise ParamViolation(f"evaluation points {self.points} are not distinct")

    @classmethod
    def make(cls, k: int, m: int, s: int, q: int | None = None,
             points: Sequence[int] | None = None) -> CodeParams:
        """Fill in the default prime and the points x_i = i."""
        if q is None:
            q = gfq.choose_prime(m, s)
        if points is None:
            points = range(m)
        return cls(k, m, q, s, tuple(points))

    @property
    def dims(self) -> tuple[int, ...]:
        return (self.q,) * self.m


@functools.lru_cache(maxsize=64)
def _codeword_table(params: CodeParams) -> np.ndarray:
    """Basis indices of all codeword kets, shape (q, q^(k-1)).

    Row s lists the kets |p_c(x_0),...,p_c(x_{m-1})> with c_{k-1} = s.
    """
    k, q = params.k, params.q
    low = np.array(list(itertools.product(range(q), repeat=k - 1)), dtype=np.int64).reshape(q ** (k - 1), k - 1)
    # Row i of the k x m evaluation matrix holds x_j^i.
    E = np.array([[pow(x, i, q) for x in params.points] for i in range(k)], dtype=np.int64)
    weights = params.q ** np.arange(params.m - 1, -1, -1, dtype=np.int64)
    table = np.empty((q, low.shape[0]), dtype=np.int64)
    for s in range(q):
        c = np.concatenate([low, np.full((low.shape[0], 1), s, dtype=np.int64)], axis=1)
        words = (c @ E) % q
        table[s] = words @ weights
    table.setflags(write=False)
    return table


def encode_with_reference(joint: np.ndarray, params: CodeParams) -> PureState:
    """Encode the second factor of a state on reference (x) secret.

    ``joint[r, v]`` is the amplitude of |r>_ref |v>_secret. The result
    has the reference as register 0 followed by the m code registers.
    """
    joint = np.asarray(joint, dtype=np.complex128)
    if joint.ndim != 2:
        raise ValueError("joint amplitudes must be a (reference, secret) matrix")
    R, sdim = joint.shape
    if sdim > params.s:
        raise ParamViolation(f"secret of dimension {sdim} exceeds s={params.s}")
    table = _codeword_table(params)
    D = params.q**params.m
    out = np.zeros((R, D), dtype=np.complex128)
    scale = params.q ** (-(params.k - 1) / 2)
    for v in range(sdim):
        out[:, table[v]] += joint[:, v : v + 1] * scale
    return PureState((R,) + params.dims, out.reshape(-1))


def encode(secret: Sequence[complex], params: CodeParams) -> PureState:
    """Encode a secret of dimension <= s on the m code registers."""
    secret = np.asarray(secret, dtype=np.complex128).reshape(1, -1)
    state = encode_with_reference(secret, params)
    return PureState(params.dims, state.amplitudes)


def decode_subset(state: PureState, subset: Sequence[int], params: CodeParams,
                  code_registers: Sequence[int] | None = None, steps: int = 4) -> PureState:
    """Unitarily move the secret into the first register of ``subset``.

    ``subset`` lists k code coordinates; ``code_registers[j]`` is the
    register holding coordinate j (default: register j). Only the subset's
    registers are touched. Afterwards the subset's remaining registers
    hold a copy of the complement's values, sum_y |y>|y>, independent of
    the secret. ``steps`` < 4 stops early, for inspecting intermediate states.
    """
    k, m, q = params.k, params.m, params.q
    subset = tuple(int(j) for j in subset)
    if len(subset) != k:
        raise WrongSubsetSize(f"need exactly k={k} coordinates, got {len(subset)}")
    if len(set(subset)) != k or any(not 0 <= j < m for j in subset):
        raise ParamViolation(f"invalid coordinate subset {subset}")
    if m != 2 * k - 1:
        # Step 3 needs exactly k-1 complement points.
        raise ParamViolation(f"subset decoding needs m = 2k-1, got m={m}, k={k}")
    if code_registers is None:
        code_registers = range(m)
    code_registers = tuple(code_registers)
    if len(code_registers) != m:
        raise DimensionMismatch(f"{len(code_registers)} code registers for m={m}")
    regs = [code_registers[j] for j in subset]
    xs = [params.points[j] for j in subset]
    complement = [j for j in range(m) if j not in subset]
    xc = [params.points[j] for j in complement]

    # 1. Registers now hold the coefficients c_0..c_{k-1}.
    state = apply_label_matrix(state, gfq.mat_inverse(gfq.vandermonde(xs, k, q), q), regs, q)
    if steps == 1:
        return state
    # 2. Cyclic shift right: regs[0] <- c_{k-1} = s, regs[i] <- c_{i-1}.
    perm = list(range(state.num_registers))
    for i in range(k):
        perm[regs[i]] = regs[(i - 1) % k]
    state = permute_registers(state, perm)
    if k == 1 or steps <= 2:
        return state
    # 3. Evaluate the low-degree part at the complement points.
    state = apply_label_matrix(state, gfq.vandermonde(xc, k - 1, q), regs[1:], q)
    if steps == 3:
        return state
    # 4. Restore the leading term s * x^(k-1).
    for i, x in enumerate(xc, start=1):
        state = add_scaled_register(state, regs[0], regs[i], pow(x, k - 1, q), q)
    return state


@dataclass(frozen=True)
class ClassicalCode:
    q: int
    codewords: frozenset[tuple[int, ...]]

    def __len__(self):
        return len(self.codewords)

    def __contains__(self, word):
        return tuple(word) in self.codewords

    def is_linear(self) -> bool:
        return all(
            tuple((a + b) % self.q for a, b in zip(u, v)) in self.codewords
            for u in self.codewords
            for v in self.codewords
        )


def classical_code(params: CodeParams, which: Literal["C1", "C2"],
                   cap: int = DEFAULT_ENUM_CAP) -> ClassicalCode:
    """Evaluation codes: C1 over all c in F^k, C2 over those with c_{k-1} = 0."""
    if which not in ("C1", "C2"):
        raise ValueError(f"unknown code {which!r}")
    k, q = params.k, params.q
    if q**k > cap:
        raise TooLarge(f"q^k = {q**k} exceeds cap {cap}")
    words = set()
    for c in itertools.product(range(q), repeat=k):
        if which == "C2" and c[k - 1] != 0:
            continue
        words.add(tuple(gfq.poly_eval(c, x, q) for x in params.points))
    return ClassicalCode(q, frozenset(words))


def min_weight(words) -> int:
    return min(sum(1 for y in w if y) for w in words if any(w))


def dual_code(code: ClassicalCode, m: int, cap: int = DEFAULT_ENUM_CAP) -> ClassicalCode:
    """All v in F^m orthogonal to every codeword, by exhaustive search."""
    q = code.q
    if q**m > cap:
        raise TooLarge(f"q^m = {q**m} exceeds cap {cap}")
    words = np.array(sorted(code.codewords), dtype=np.int64).reshape(-1, m)
    cands = np.array(list(itertools.product(range(q), repeat=m)), dtype=np.int64).reshape(-1, m)
    ok = np.all((cands @ words.T) % q == 0, axis=1)
    return ClassicalCode(q, frozenset(map(tuple, cands[ok].tolist())))


def min_distance_check(params: CodeParams, cap: int = DEFAULT_ENUM_CAP) -> tuple[int, int]:
    """(dist C1, dist C2-dual) by exhaustive weight enumeration."""
    c1 = classical_code(params, "C1", cap)
    c2 = classical_code(params, "C2", cap)
    c2_dual = dual_code(c2, params.m, cap)
    return min_weight(c1.codewords), min_weight(c2_dual.codewords)

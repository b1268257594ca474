"""Command-line front end and the text file formats.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 parameter or no-cloning violation.

State file (``QSS1``)::

    QSS1
    q=3
    dims=3,3,3
    discarded=-
    bundles=A:0;B:1;C:2
    amp 0 5.7735026918962584e-01 0.0000000000000000e+00
    ...

Amplitudes below 1e-15 in magnitude are omitted; basis indices use the
register-0-most-significant convention. Scheme files (``QSS1-SCHEME``)
carry k, n, s, q, the evaluation points, discarded coordinates and bundles.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path

import numpy as np

from .hilbert import PureState
from .polycode import CodeParams, ParamViolation
from .scheme import (
    NoCloningViolation,
    SchemeSpec,
    SharedState,
    UnknownShareLabel,
    build_threshold,
    reconstruct,
    split,
)
from .verify import DEMOS, full_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PARAM = 0, 1, 2, 3
AMP_CUTOFF = 1e-15


class FormatError(ValueError):
    pass


def _fmt(x: float) -> str:
    return f"{x:.16e}"


def _join(idx) -> str:
    return ",".join(map(str, idx)) if idx else "-"


def _ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "-"):
        return ()
    return tuple(int(t) for t in text.split(","))


def _bundles_text(bundles) -> str:
    return ";".join(f"{lab}:{_join(coords)}" for lab, coords in bundles)


def _parse_bundles(text: str):
    out = []
    for part in text.strip().split(";"):
        if not part:
            continue
        lab, _, idx = part.partition(":")
        out.append((lab, _ints(idx)))
    return tuple(out)


def _fields(lines: list[str], header: str) -> tuple[dict[str, str], list[str]]:
    if not lines or lines[0].strip() != header:
        raise FormatError(f"expected header {header!r}")
    fields, rest = {}, []
    for line in lines[1:]:
        line = line.strip()
        if not line:
            continue
        if line.startswith("amp "):
            rest.append(line)
        else:
            key, sep, val = line.partition("=")
            if not sep:
                raise FormatError(f"malformed line {line!r}")
            fields[key] = val
    return fields, rest


def dump_scheme(spec: SchemeSpec) -> str:
    p = spec.params
    return "\n".join([
        "QSS1-SCHEME",
        f"k={spec.k}",
        f"n={spec.n}",
        f"s={p.s}",
        f"q={p.q}",
        f"points={_join(p.points)}",
        f"discarded={_join(spec.discarded)}",
        f"bundles={_bundles_text(spec.bundles)}",
    ]) + "\n"


def load_scheme(text: str) -> SchemeSpec:
    f, _ = _fields(text.splitlines(), "QSS1-SCHEME")
    try:
        k, n, s, q = int(f["k"]), int(f["n"]), int(f["s"]), int(f["q"])
        params = CodeParams(k, 2 * k - 1, q, s, _ints(f["points"]))
        return SchemeSpec(k, n, params, _ints(f["discarded"]), _parse_bundles(f["bundles"]))
    except KeyError as e:
        raise FormatError(f"missing field {e}") from None


def dump_state(shared: SharedState) -> str:
    """Serialize the code registers of a shared state (no reference registers)."""
    if shared.reference_dims:
        raise FormatError("states entangled with a reference cannot be written")
    spec = shared.spec
    lines = [
        "QSS1",
        f"q={spec.q}",
        f"dims={_join(shared.state.dims)}",
        f"discarded={_join(spec.discarded)}",
        f"bundles={_bundles_text(spec.bundles)}",
    ]
    for i, a in enumerate(shared.state.amplitudes):
        if abs(a) >= AMP_CUTOFF:
            lines.append(f"amp {i} {_fmt(a.real)} {_fmt(a.imag)}")
    return "\n".join(lines) + "\n"


def load_state(text: str) -> SharedState:
    """Parse a state file; the threshold is k = (m+1)/2 and points are 0..m-1."""
    f, amp_lines = _fields(text.splitlines(), "QSS1")
    try:
        q = int(f["q"])
        dims = _ints(f["dims"])
        discarded = _ints(f["discarded"])
        bundles = _parse_bundles(f["bundles"])
    except KeyError as e:
        raise FormatError(f"missing field {e}") from None
    m = len(dims)
    if any(d != q for d in dims) or m % 2 == 0:
        raise FormatError(f"dims {dims} do not describe a length 2k-1 code over Z_{q}")
    k = (m + 1) // 2
    spec = SchemeSpec(k, m - len(discarded), CodeParams(k, m, q, q, tuple(range(m))), discarded, bundles)
    amps = np.zeros(q**m, dtype=np.complex128)
    for line in amp_lines:
        parts = line.split()
        if len(parts) != 4:
            raise FormatError(f"malformed amplitude line {line!r}")
        amps[int(parts[1])] = complex(float(parts[2]), float(parts[3]))
    norm = np.linalg.norm(amps)
    if abs(norm - 1) > 1e-9:
        raise FormatError(f"state norm {norm!r} is not 1")
    if abs(norm * norm - 1) > 1e-12:
        amps = amps / norm
    return SharedState(PureState(dims, amps), spec)


def parse_secret(text: str) -> np.ndarray:
    """``re:im,re:im,...`` -> normalized complex vector."""
    vals = []
    for tok in text.split(","):
        re_part, sep, im_part = tok.strip().partition(":")
        if not sep:
            raise FormatError(f"amplitude {tok!r} is not of the form re:im")
        vals.append(complex(float(re_part), float(im_part)))
    vec = np.array(vals, dtype=np.complex128)
    norm = np.linalg.norm(vec)
    if not np.isfinite(norm) or norm == 0:
        raise FormatError("secret must be a nonzero vector")
    return vec / norm


def _amp_lines(vec: np.ndarray) -> list[str]:
    return [f"  |{i}> {_fmt(a.real)} {_fmt(a.imag)}" for i, a in enumerate(vec)]


def cmd_new(args) -> int:
    try:
        spec = build_threshold(args.k, args.n, args.secret_dim)
    except NoCloningViolation:
        print("no-cloning violation: n >= 2k", file=sys.stderr)
        return EXIT_PARAM
    except ValueError as e:
        print(f"parameter violation: {e}", file=sys.stderr)
        return EXIT_PARAM
    Path(args.out).write_text(dump_scheme(spec))
    print(spec.describe())
    return EXIT_OK


def cmd_split(args) -> int:
    spec = load_scheme(Path(args.scheme).read_text())
    secret = parse_secret(args.secret)
    if secret.size != spec.params.s:
        print(f"secret has {secret.size} amplitudes, scheme expects {spec.params.s}", file=sys.stderr)
        return EXIT_USAGE
    Path(args.out).write_text(dump_state(split(spec, secret)))
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    shared = load_state(Path(args.state).read_text())
    labels = [lab.strip() for lab in args.shares.split(",") if lab.strip()]
    if args.expect is not None:
        expect = parse_secret(args.expect)
        if expect.size > shared.spec.q:
            print("expected secret is larger than the share dimension", file=sys.stderr)
            return EXIT_USAGE
        shared = SharedState(shared.state, shared.spec, expect)
    try:
        rec = reconstruct(shared, labels)
    except UnknownShareLabel as e:
        print(f"unknown share label {e}", file=sys.stderr)
        return EXIT_USAGE
    if not rec.reconstructible:
        print(f"shares {','.join(labels)} (coordinates {_join(rec.coords)}): NOT-RECONSTRUCTIBLE")
        print("reduced density matrix:")
        for row in rec.density.matrix:
            print("  " + " ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in row))
        return EXIT_FAIL
    print(f"recovered secret from coordinates {_join(rec.coords[: shared.spec.k])}:")
    print("\n".join(_amp_lines(rec.output.amplitudes)))
    if rec.fidelity is None:
        return EXIT_OK
    print(f"fidelity {rec.fidelity:.15f}")
    return EXIT_OK if rec.fidelity >= 1 - 1e-9 else EXIT_FAIL


def cmd_verify(args) -> int:
    if args.demo is not None:
        rep = DEMOS[args.demo]()
        text = rep.render()
        lines = text.splitlines()
    else:
        report = full_report(load_scheme(Path(args.scheme).read_text()), workers=args.workers)
        rep = report
        text, lines = report.render(), report.lines()
    print(text)
    if args.report:
        Path(args.report).write_text("\n".join(lines) + ("\n" if lines else ""))
    return EXIT_OK if rep.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qshare", description="Quantum secret sharing laboratory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("new", help="build a ((k,n)) threshold scheme")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--secret-dim", type=int, default=2)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_new)

    p = sub.add_parser("split", help="split a secret into shares")
    p.add_argument("--scheme", required=True)
    p.add_argument("--secret", required=True, help="comma-separated re:im amplitudes")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("reconstruct", help="recover the secret from a set of shares")
    p.add_argument("--state", required=True)
    p.add_argument("--shares", required=True, help="comma-separated share labels")
    p.add_argument("--expect", help="original secret as re:im amplitudes")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("verify", help="brute-force verification of a scheme or a demo")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--scheme")
    group.add_argument("--demo", choices=sorted(DEMOS))
    p.add_argument("--report", help="write SUBSET lines to this file")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, ParamViolation, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: orbit sweeps, verification suites, witnesses and
continuous-model experiments, with CSV artifacts.

Artifacts are UTF-8, LF-terminated CSV with a header row; floats carry 17
significant digits so they round-trip exactly.  Identical configuration and
seed produce byte-identical files.  Relative output paths are resolved
against $SHIFTORBITS_OUTDIR when set.

Exit codes: 0 all requested assertions passed, 1 an assertion failed,
2 usage error, 3 I/O failure.
"""

import argparse
import math
import os
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .continuous import (
    ContinuousWeight,
    evolve,
    gaussian_bump,
    generator_consistency,
    l2_lognorm,
)
from .doubling import FormKind, verify_form_preservation
from .growth import (
    DEFAULT_SLACK,
    GrowthClass,
    classify_growth,
    krein_witness,
    lyapunov_estimate,
    orbit_profile,
    slope_fit,
)
from .kernels import get_backend
from .shift import Mode, spectral_radius_estimate, window_covers_supremum
from .suite import DEFAULT_SEED, run_all
from .vectors import ScaledVector, random_scaled_vector
from .weights import FamilyKind, WeightSequence

USAGE_ERROR, ASSERTION_ERROR, IO_ERROR = 2, 1, 3


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _resolve_out(path: str) -> str:
    outdir = os.environ.get("SHIFTORBITS_OUTDIR")
    if outdir and not os.path.isabs(path):
        return os.path.join(outdir, path)
    return path


def _write_csv(path: str, header: str, rows) -> None:
    path = _resolve_out(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def emit_orbit_csv(record, path):
    _write_csv(
        path,
        "N,lognorm",
        ([str(int(n)), _fmt(v)] for n, v in zip(record.times, record.lognorms)),
    )


def emit_witness_csv(rows, path):
    _write_csv(
        path,
        "k,checkpoint,margin",
        ([str(r.k), str(r.peak_index), _fmt(r.margin)] for r in rows),
    )


def emit_report_csv(reports, path):
    _write_csv(
        path,
        "check,max_violation,tolerance,pass",
        (
            [f"{r.check}/{r.system}", _fmt(r.max_violation), _fmt(r.tolerance),
             "true" if r.passed else "false"]
            for r in reports
        ),
    )


def emit_verdict_csv(verdicts, path):
    """Growth verdicts in the report schema: the margin is the violation,
    the slack is the tolerance it was measured against."""
    _write_csv(
        path,
        "check,max_violation,tolerance,pass",
        (
            [
                f"classify-{v.kind.value}" + (f"(a={v.rate:g})" if v.rate else ""),
                _fmt(v.margin),
                _fmt(v.slack),
                "true" if v.verdict.value == "consistent" else "false",
            ]
            for v in verdicts
        ),
    )


def emit_sweep_csv(ts, lognorms, path):
    _write_csv(path, "t,lognorm", ([_fmt(t), _fmt(v)] for t, v in zip(ts, lognorms)))


def emit_grid_csv(grid, path):
    values = grid.materialized()
    _write_csv(
        path,
        "x,value",
        ([_fmt(x), _fmt(float(v.real))] for x, v in zip(grid.x_values(), values)),
    )


def parse_vector_spec(spec: str, seed: int = DEFAULT_SEED) -> ScaledVector:
    """Vector mini-language: e<n>, harmonic:<K>, random:<size>:<seed>,
    file:<path> (index,coefficient CSV)."""
    try:
        if spec.startswith("e"):
            return ScaledVector.basis(int(spec[1:]))
        if spec.startswith("harmonic:"):
            return ScaledVector.harmonic(int(spec.split(":", 1)[1]))
        if spec.startswith("random:"):
            parts = spec.split(":")
            size = int(parts[1])
            rng_seed = int(parts[2]) if len(parts) > 2 else seed
            return random_scaled_vector(np.random.default_rng(rng_seed), size=size)
        if spec.startswith("file:"):
            support, coeffs = [], []
            with open(spec[5:], encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line or line.startswith(("index", "#")):
                        continue
                    idx, coef = line.split(",", 1)
                    support.append(int(idx))
                    coeffs.append(complex(coef))
            return ScaledVector.make(support, coeffs)
    except (ValueError, IndexError) as exc:
        raise argparse.ArgumentTypeError(f"bad vector spec {spec!r}: {exc}") from None
    except OSError as exc:
        raise argparse.ArgumentTypeError(f"cannot read vector file: {exc}") from None
    raise argparse.ArgumentTypeError(f"unknown vector spec {spec!r}")


@dataclass
class RunConfig:
    """Validated knobs shared by the shift-side subcommands."""

    family: FamilyKind
    c: float
    mode: Mode
    seed: int
    out: Optional[str]

    def sequence(self) -> WeightSequence:
        if self.family == FamilyKind.KREIN:
            return WeightSequence.krein(self.c)
        if self.family == FamilyKind.GEOMETRIC:
            return WeightSequence.geometric(self.c)
        return WeightSequence.mixed()

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        try:
            cfg = cls(
                family=FamilyKind(args.family),
                c=args.c,
                mode=Mode(getattr(args, "mode", "forward")),
                seed=args.seed,
                out=getattr(args, "out", None),
            )
            cfg.sequence()  # validates c against the family constraints
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
        return cfg


def _add_common(p, family=True, mode=True):
    if family:
        p.add_argument("--family", choices=["krein", "geometric", "mixed"], required=True)
        p.add_argument("--c", type=float, default=1.0, help="family parameter")
    if mode:
        p.add_argument(
            "--mode", choices=["forward", "adjoint-inverse"], default="forward"
        )
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", default=None, help="CSV output path")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="shiftorbits",
        description="orbit growth and indefinite-form dynamics of weighted bilateral shifts",
    )
    parser.add_argument(
        "--version", action="version", version=f"shiftorbits 0.1.0 [{get_backend()} kernels]"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orbit", help="sample ln||T^N f|| over a time range")
    _add_common(p)
    p.add_argument("--vector", default="e0")
    p.add_argument("--nmin", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--stride", type=int, default=1)

    p = sub.add_parser("lyapunov", help="finite-horizon Lyapunov exponent estimates")
    _add_common(p)
    p.add_argument("--vector", default="e0")
    p.add_argument("--nmin", type=int, default=-200)
    p.add_argument("--nmax", type=int, default=200)
    p.add_argument("--stride", type=int, default=1)
    p.add_argument("--fit-window", type=float, default=0.25)

    p = sub.add_parser("classify", help="growth-class evidence test over N >= 0")
    _add_common(p)
    p.add_argument("--vector", default="e0")
    p.add_argument("--kind", choices=["s0", "s", "s+"], required=True)
    p.add_argument("--rate", type=float, default=None, help="rate a for s+")
    p.add_argument("--slack", type=float, default=DEFAULT_SLACK)
    p.add_argument("--nmax", type=int, default=200)

    p = sub.add_parser("witness", help="checkpoint margins of the oscillating family")
    _add_common(p, mode=False)
    p.add_argument("--kmax", type=int, default=3)

    p = sub.add_parser("verify-forms", help="J/symplectic form preservation sweep")
    _add_common(p, mode=False)
    p.add_argument("--form", choices=["j", "symplectic", "both"], default="both")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--nmax", type=int, default=50)
    p.add_argument("--tol", type=float, default=1e-10)

    p = sub.add_parser("spectral", help="Gelfand spectral-radius estimate")
    _add_common(p)
    p.add_argument("--nmax", type=int, default=100)
    p.add_argument("--window", type=int, nargs=2, default=(-300, 300), metavar=("LO", "HI"))

    p = sub.add_parser("continuous", help="transport semigroup sweep and checks")
    p.add_argument("--weight", choices=["oscillating", "geometric", "mixed"], required=True)
    p.add_argument("--xmin", type=float, default=-100.0)
    p.add_argument("--xmax", type=float, default=100.0)
    p.add_argument("--dx", type=float, default=2.0 ** -7)
    p.add_argument("--center", type=float, default=-5.0)
    p.add_argument("--width", type=float, default=0.6)
    p.add_argument("--tmax", type=float, default=5.0)
    p.add_argument("--dt", type=float, default=0.25)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", default=None)
    p.add_argument("--grid-out", default=None, help="final evolved grid as x,value CSV")
    p.add_argument("--skip-checks", action="store_true")

    sub.add_parser("suite", help="run the full acceptance battery")
    return parser


def cmd_orbit(args):
    cfg = RunConfig.from_args(args)
    record = orbit_profile(
        cfg.sequence(),
        parse_vector_spec(args.vector, args.seed),
        args.nmin,
        args.nmax,
        stride=args.stride,
        mode=cfg.mode,
        one_sided=True,
    )
    if cfg.out:
        emit_orbit_csv(record, cfg.out)
    print(f"system {record.system}  samples {record.times.size}")
    print(
        f"lognorm range [{record.lognorms.min():.6g}, {record.lognorms.max():.6g}] "
        f"over N in [{args.nmin}, {args.nmax}]"
    )
    return 0


def cmd_lyapunov(args):
    cfg = RunConfig.from_args(args)
    record = orbit_profile(
        cfg.sequence(),
        parse_vector_spec(args.vector, args.seed),
        args.nmin,
        args.nmax,
        stride=args.stride,
        mode=cfg.mode,
        one_sided=True,
    )
    lam_plus, lam_minus = lyapunov_estimate(record, args.fit_window)
    print(f"lambda+ {lam_plus:.12g}")
    print(f"lambda- {lam_minus:.12g}")
    for positive, tag in ((True, "slope+"), (False, "slope-")):
        try:
            print(f"{tag} {slope_fit(record, positive):.12g}  (least-squares diagnostic)")
        except ValueError:
            pass
    if cfg.out:
        emit_orbit_csv(record, cfg.out)
    return 0


def cmd_classify(args):
    cfg = RunConfig.from_args(args)
    kind = GrowthClass(args.kind)
    record = orbit_profile(
        cfg.sequence(),
        parse_vector_spec(args.vector, args.seed),
        0,
        args.nmax,
        mode=cfg.mode,
    )
    verdict = classify_growth(record, kind, rate=args.rate, slack=args.slack)
    print(
        f"{kind.value} verdict {verdict.verdict.value} margin {verdict.margin:.6g} "
        f"witness N={verdict.witness_time} horizon {verdict.horizon} "
        f"(finite-horizon evidence, not a membership proof)"
    )
    lam_plus, _ = verdict.fitted
    print(f"fitted lambda+ {lam_plus:.6g}")
    if cfg.out:
        emit_verdict_csv([verdict], cfg.out)
    return 0


def cmd_witness(args):
    cfg = RunConfig.from_args(args)
    if cfg.family != FamilyKind.KREIN:
        print("witness requires --family krein", file=sys.stderr)
        return USAGE_ERROR
    rows = krein_witness(cfg.sequence(), args.kmax)
    print("k  checkpoint  margin")
    for r in rows:
        print(f"{r.k}  {r.peak_index:>10d}  {r.margin:.6g}")
    if cfg.out:
        emit_witness_csv(rows, cfg.out)
    margins = [r.margin for r in rows]
    four_sided = [
        m for r in rows for m in (r.peak_pos, r.trough_pos, r.peak_neg, r.trough_neg)
    ]
    if min(four_sided) <= 0 or any(b <= a for a, b in zip(margins, margins[1:])):
        print("FAIL: witness margins must be positive and strictly increasing")
        return ASSERTION_ERROR
    print("margins positive and strictly increasing")
    return 0


def cmd_verify_forms(args):
    cfg = RunConfig.from_args(args)
    kinds = {
        "j": [FormKind.J_FORM],
        "symplectic": [FormKind.SYMPLECTIC],
        "both": [FormKind.J_FORM, FormKind.SYMPLECTIC],
    }[args.form]
    reports = [
        verify_form_preservation(
            cfg.sequence(), kind, args.samples, args.nmax, cfg.seed, tolerance=args.tol
        )
        for kind in kinds
    ]
    for r in reports:
        status = "pass" if r.passed else "FAIL"
        print(
            f"{r.check} [{r.system}] max violation {r.max_violation:.3e} "
            f"tol {r.tolerance:g}: {status}"
        )
    if cfg.out:
        emit_report_csv(reports, cfg.out)
    if not all(r.passed for r in reports):
        print("FAIL: form preservation violated")
        return ASSERTION_ERROR
    return 0


def cmd_spectral(args):
    cfg = RunConfig.from_args(args)
    seq = cfg.sequence()
    window = tuple(args.window)
    est = spectral_radius_estimate(seq, args.nmax, window, cfg.mode)
    exact = window_covers_supremum(seq, args.nmax, window, cfg.mode)
    note = "windowed norm exact" if exact else "windowed lower bound"
    print(f"spectral radius estimate {est:.12g}  ({note}, N={args.nmax})")
    known = _known_radius(cfg)
    if known is not None:
        print(f"closed-form value {known:g}")
    return 0


def _known_radius(cfg):
    if cfg.family == FamilyKind.GEOMETRIC:
        return 2.0 * cfg.c
    if cfg.family == FamilyKind.MIXED:
        return 2.0 if cfg.mode == Mode.FORWARD else 1.0
    return None


def cmd_continuous(args):
    w = {
        "oscillating": ContinuousWeight.oscillating,
        "geometric": ContinuousWeight.geometric,
        "mixed": ContinuousWeight.mixed,
    }[args.weight]()
    f = gaussian_bump(args.center, args.width, args.xmin, args.xmax, args.dx)
    steps = int(round(args.tmax / args.dt))
    ts, lognorms = [], []
    for i in range(steps + 1):
        t = i * args.dt
        ts.append(t)
        lognorms.append(l2_lognorm(evolve(w, f, t)) if t else l2_lognorm(f))
    print(f"weight {w.label}: evolved to t={ts[-1]:g}, lognorm {lognorms[0]:.6g} -> {lognorms[-1]:.6g}")
    if args.out:
        emit_sweep_csv(ts, lognorms, args.out)
    if args.grid_out:
        emit_grid_csv(evolve(w, f, ts[-1]) if ts[-1] else f, args.grid_out)
    if args.skip_checks:
        return 0
    # cocycle + generator consistency assertions
    g1 = evolve(w, evolve(w, f, -args.dt), 2 * args.dt)
    g2 = evolve(w, f, args.dt)
    lo, hi = max(g1.data_lo, g2.data_lo), min(g1.data_hi, g2.data_hi)
    a, b = g1.materialized()[lo:hi], g2.materialized()[lo:hi]
    rel = float(np.abs(a - b).max()) / max(float(np.abs(b).max()), 1e-300)
    residual = generator_consistency(w, f, args.dx, args.dx)
    half = generator_consistency(
        w, gaussian_bump(args.center, args.width, args.xmin, args.xmax, args.dx / 2),
        args.dx / 2, args.dx / 2,
    )
    ratio = residual / half if half else math.inf
    print(f"cocycle rel err {rel:.3e}; generator residual {residual:.3e} (halving ratio {ratio:.2f})")
    if rel > 1e-12:
        print("FAIL: cocycle identity violated")
        return ASSERTION_ERROR
    if not 1.5 <= ratio <= 2.5:
        print("FAIL: generator consistency is not first order")
        return ASSERTION_ERROR
    return 0


def cmd_suite(args):
    results = run_all()
    for r in results:
        print(r.line)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return 0 if not failed else ASSERTION_ERROR


COMMANDS = {
    "orbit": cmd_orbit,
    "lyapunov": cmd_lyapunov,
    "classify": cmd_classify,
    "witness": cmd_witness,
    "verify-forms": cmd_verify_forms,
    "spectral": cmd_spectral,
    "continuous": cmd_continuous,
    "suite": cmd_suite,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except argparse.ArgumentTypeError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return IO_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())

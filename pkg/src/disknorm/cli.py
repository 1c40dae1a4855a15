"""Command-line interface: ``disknorm {eval,norm,verify,dump}``.

Exit codes: 0 success, 1 a verification check failed, 2 bad input (parse
error or bad flags), 3 evaluation error, 4 the map failed validation,
5 internal error, 6 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
import tempfile
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from disknorm import __version__
from disknorm.errors import (
    BranchCutArgumentZero,
    DegenerateFunction,
    DiskNormError,
    DomainError,
    ExprSyntaxError,
    InvalidExponent,
    NoFiniteSamples,
    NotSensePreserving,
    PoleEncountered,
    UnknownIdentifier,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_EVAL, EXIT_INVALID_MAP, EXIT_INTERNAL, EXIT_IO = range(7)

KINDS = ("pre-schwarzian", "psi-pre-schwarzian", "schwarzian", "bloch", "hyperbolic", "profile-E")


class UsageError(Exception):
    pass


@dataclass
class RunManifest:
    command: str
    flags: dict
    sup_config: dict
    version: str = __version__
    seed: int | None = None
    wall_clock_s: float = 0.0
    extra: dict = field(default_factory=dict)

    def to_json(self):
        out = asdict(self)
        if not out["extra"]:
            del out["extra"]
        return out


# ------------------------------------------------------------------ formats


def format_real(x):
    """15 digits after the leading one, positional when that is readable."""
    x = float(x)
    if not math.isfinite(x):
        return repr(x)
    if x == 0:
        return "0." + "0" * 15
    e = math.floor(math.log10(abs(x)))
    if -5 <= e < 16:
        return f"{x:.{max(0, 15 - e)}f}"
    return f"{x:.15e}"


def format_complex(z):
    z = complex(z)
    if z.imag == 0:
        return format_real(z.real)
    re_part = format_real(z.real)
    im = format_real(abs(z.imag))
    sign = "-" if z.imag < 0 else "+"
    return f"{re_part}{sign}{im}i"


def parse_complex(text):
    """Accepts Python-style (``0.3+0.2j``) and math-style (``0.3+0.2i``) literals."""
    s = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(s)
    except ValueError:
        raise UsageError(f"not a complex number: {text!r}") from None


def parse_grid(text):
    m = re.fullmatch(r"\s*(\d+)\s*[xX]\s*(\d+)\s*", text)
    if not m or int(m.group(1)) < 1 or int(m.group(2)) < 1:
        raise UsageError(f"--grid expects RxA with positive integers, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def atomic_write(path, text):
    """Write to a temporary file beside ``path`` and rename it into place, so a
    failed run never leaves a partial report."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".disknorm-", dir=directory)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=False, allow_nan=True) + "\n"


# ------------------------------------------------------------------ parsing


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser():
    p = argparse.ArgumentParser(prog="disknorm", description="Norms of analytic, harmonic and logharmonic disk maps.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate an expression at a point")
    ev.add_argument("--expr", required=True)
    ev.add_argument("--at", default="0", help="complex literal, e.g. 0.5 or 0.3+0.2i")

    def map_flags(q):
        q.add_argument("--h", help="analytic factor h (or H for --lambda1/--lambda2)")
        q.add_argument("--g", help="co-analytic factor g")
        q.add_argument("--omega", help="dilatation; g is then recovered from it")
        q.add_argument("--lambda1", type=float, help="power construction H'^l1 conj(G'^l2)")
        q.add_argument("--lambda2", type=float)
        q.add_argument("--kind", choices=KINDS, default="pre-schwarzian")
        q.add_argument("--t", type=float, default=0.6, help="parameter for --kind profile-E")

    def cfg_flags(q, grid_default=None):
        q.add_argument("--grid", default=grid_default, help="RxA: radial levels x angular base")
        q.add_argument("--rmax", type=float, default=None)

    nm = sub.add_parser("norm", help="estimate a norm")
    map_flags(nm)
    cfg_flags(nm)
    nm.add_argument("--tol", type=_positive_float, default=None, help="convergence tolerance abs_tol")
    nm.add_argument("--out")

    vf = sub.add_parser("verify", help="run a verification suite")
    vf.add_argument("--suite", choices=("paper", "properties", "all"), default="paper")
    vf.add_argument("--tol", type=_positive_float, default=1e-3)
    vf.add_argument("--seed", type=int, default=42)
    vf.add_argument("--out")
    cfg_flags(vf)

    dp = sub.add_parser("dump", help="write the weighted objective on a grid as CSV")
    map_flags(dp)
    cfg_flags(dp, "24x128")
    dp.add_argument("--out", required=True)
    return p


def _sup_config(args):
    from disknorm.norms import SupConfig

    kw = {}
    if getattr(args, "grid", None):
        kw["radial_levels"], kw["angular_base"] = parse_grid(args.grid)
    if getattr(args, "rmax", None) is not None:
        kw["r_max"] = args.rmax
    if getattr(args, "tol", None) is not None and args.command == "norm":
        kw["abs_tol"] = args.tol
    try:
        return SupConfig(**kw)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _build_map(args):
    """(kind of object, object) from the map flags."""
    from disknorm.maps import logharmonic_map, power_construct
    from disknorm.maps.mappings import harmonic_map
    from disknorm.expr import parse

    if args.g is not None and args.omega is not None:
        raise UsageError("give at most one of --g and --omega")
    if args.lambda1 is not None or args.lambda2 is not None:
        if args.h is None or args.lambda1 is None or args.lambda2 is None:
            raise UsageError("--lambda1/--lambda2 need both exponents and --h (and optionally --g as G)")
        return "logharmonic", power_construct(args.h, args.g or args.h, args.lambda1, args.lambda2)
    if args.kind == "hyperbolic":
        if args.omega is None:
            raise UsageError("--kind hyperbolic needs --omega")
        return "omega", parse(args.omega)
    if args.h is None:
        raise UsageError("--h is required")
    if args.g is None and args.omega is None:
        return "analytic", parse(args.h)
    if args.kind == "schwarzian":
        if args.omega is None:
            raise UsageError("--kind schwarzian with a co-analytic part needs --omega (harmonic map H + conj G)")
        return "harmonic", harmonic_map(H=args.h, omega=args.omega)
    return "logharmonic", logharmonic_map(args.h, g=args.g, omega=args.omega)


def _objective(kind, obj_kind, obj):
    """(vectorised objective, weight power) for dump."""
    from disknorm.expr.evaluate import compile_array
    from disknorm.maps.mappings import pre_schwarzian_analytic, schwarzian_analytic
    from disknorm.norms import quantities as Q
    from disknorm.expr.calculus import differentiate

    if kind == "hyperbolic":
        run = compile_array(obj, differentiate(obj))

        def hyp(z):
            w, dw = run(z)
            return np.abs(dw) * (1 - np.abs(z) ** 2) / (1 - np.abs(w) ** 2)

        return hyp, 0
    if kind == "pre-schwarzian":
        if obj_kind == "logharmonic":
            return Q._harmonic_pre_objective(obj.pre_schwarzian_psi, obj.omega, obj.domega), 1
        return Q._abs_objective(pre_schwarzian_analytic(obj)), 1
    if kind == "psi-pre-schwarzian":
        if obj_kind != "logharmonic":
            raise UsageError("--kind psi-pre-schwarzian needs a logharmonic map (--g or --omega)")
        return Q._abs_objective(obj.pre_schwarzian_psi), 1
    if kind == "bloch":
        if obj_kind == "logharmonic":
            run = compile_array(obj.dlog_h, obj.dlog_g)
            return (lambda z: sum(np.abs(v) for v in run(z))), 1
        return Q._abs_objective(differentiate(obj)), 1
    if kind == "schwarzian":
        if obj_kind == "analytic":
            return Q._abs_objective(schwarzian_analytic(obj)), 2
        raise UsageError("dump of the harmonic Schwarzian is not supported; use norm")
    raise UsageError(f"unsupported kind {kind!r}")


# ------------------------------------------------------------------ commands


def cmd_eval(args, out):
    from disknorm.expr import evaluate, parse

    e = parse(args.expr)
    z = parse_complex(args.at)
    print(format_complex(evaluate(e, z)), file=out)
    return EXIT_OK


def cmd_norm(args, out):
    from disknorm.norms import (
        bloch_seminorm_analytic,
        hyperbolic_sup,
        logharmonic_bloch_norm,
        pre_schwarzian_norm,
        psi_pre_schwarzian_norm,
        schwarzian_norm,
    )

    t0 = time.perf_counter()
    cfg = _sup_config(args)
    if args.kind == "profile-E":
        raise UsageError("--kind profile-E is only available for dump")
    obj_kind, obj = _build_map(args)
    extra = {}
    if args.kind == "hyperbolic":
        est = hyperbolic_sup(obj, cfg)
    elif args.kind == "pre-schwarzian":
        est = pre_schwarzian_norm(obj, cfg)
    elif args.kind == "psi-pre-schwarzian":
        if obj_kind != "logharmonic":
            raise UsageError("--kind psi-pre-schwarzian needs --g or --omega")
        est = psi_pre_schwarzian_norm(obj, cfg)
    elif args.kind == "schwarzian":
        if obj_kind == "logharmonic":
            raise UsageError("the Schwarzian norm needs an analytic --h or a harmonic --h/--omega")
        est = schwarzian_norm(obj, cfg)
    else:  # bloch
        if obj_kind == "logharmonic":
            est, norm = logharmonic_bloch_norm(obj, cfg)
            extra["norm"] = norm
        else:
            est = bloch_seminorm_analytic(obj, cfg)
    print(f"kind:      {est.kind}", file=out)
    print(f"value:     {format_real(est.value)}", file=out)
    if "norm" in extra:
        print(f"norm:      {format_real(extra['norm'])}", file=out)
    print(f"maximizer: r={format_real(est.r)} theta={format_real(est.theta)}", file=out)
    print(f"converged: {str(est.converged).lower()} (skipped {est.skipped} of {est.samples} samples)", file=out)
    if args.out:
        manifest = RunManifest("norm", _flags(args), cfg.to_json(), wall_clock_s=time.perf_counter() - t0)
        payload = {"manifest": manifest.to_json(), "estimate": est.to_json(), **extra}
        if hasattr(obj, "to_json"):
            payload["map"] = obj.to_json()
        _write(args.out, _dumps(payload))
    return EXIT_OK


def cmd_verify(args, out):
    from disknorm.theorems.suites import run_suite

    t0 = time.perf_counter()
    cfg = _sup_config(args)
    reports = run_suite(args.suite, cfg, args.tol, args.seed)
    width = max(len(_label(r)) for r in reports)
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        why = "" if r.passed else "  (" + ", ".join(r.failures) + ")"
        print(f"{status}  {_label(r):<{width}}  {r.runtime_ms:>6d} ms{why}", file=out)
    failed = sum(not r.passed for r in reports)
    print(f"{len(reports) - failed}/{len(reports)} checks passed", file=out)
    if args.out:
        manifest = RunManifest("verify", _flags(args), cfg.to_json(), seed=args.seed)
        manifest.wall_clock_s = time.perf_counter() - t0
        payload = {"manifest": manifest.to_json(), "reports": [r.to_json() for r in reports]}
        _write(args.out, _dumps(payload))
    return EXIT_FAIL if failed else EXIT_OK


def _label(r):
    name = r.inputs.get("map")
    if not name and "r" in r.inputs:
        name = f"r={r.inputs['r']}"
    if not name and "u" in r.inputs:
        name = r.inputs["u"]
    return f"{r.check_id} [{name}]" if name else r.check_id


def dump_rows(objective, weight_power, radial, angular, r_max):
    radii = [min(1 - 2.0 ** (-k / 2), r_max) for k in range(radial)]
    rows = []
    for r in radii:
        n = 1 if r == 0 and angular == 1 else angular
        theta = 2 * np.pi * np.arange(n) / n
        z = r * np.exp(1j * theta)
        with np.errstate(all="ignore"):
            v = np.asarray(objective(z), dtype=float) * (1 - r * r) ** weight_power
        rows += [(r, float(t), float(x)) for t, x in zip(theta, np.broadcast_to(v, z.shape))]
    return rows


def profile_rows(t, radial, r_max):
    from disknorm.theorems.formulas import profile_E

    return [(float(r), 0.0, profile_E(float(r), t)) for r in np.linspace(0.0, r_max, radial)]


def cmd_dump(args, out):
    cfg = _sup_config(args)
    radial, angular = parse_grid(args.grid)
    if args.kind == "profile-E":
        if not 0 < args.t < 1:
            raise DomainError(f"t must lie in (0, 1), got {args.t!r}")
        rows = profile_rows(args.t, radial, cfg.r_max)
    else:
        obj_kind, obj = _build_map(args)
        objective, power = _objective(args.kind, obj_kind, obj)
        rows = dump_rows(objective, power, radial, angular, cfg.r_max)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("r", "theta", "value"))
    # repr gives the shortest decimal that round-trips
    w.writerows((repr(r), repr(t), repr(v)) for r, t, v in rows)
    _write(args.out, buf.getvalue())
    best = max((row for row in rows if math.isfinite(row[2])), key=lambda row: row[2], default=None)
    print(f"wrote {len(rows)} rows to {args.out}", file=out)
    if best is not None:
        print(f"max value {format_real(best[2])} at r={format_real(best[0])} theta={format_real(best[1])}", file=out)
    return EXIT_OK


class _IOFailure(Exception):
    pass


def _write(path, text):
    try:
        atomic_write(path, text)
    except OSError as e:
        raise _IOFailure(f"cannot write {path}: {e}") from e


def _flags(args):
    return {k: v for k, v in sorted(vars(args).items()) if k != "command"}


COMMANDS = {"eval": cmd_eval, "norm": cmd_norm, "verify": cmd_verify, "dump": cmd_dump}


def _syntax_message(e, source):
    msg = f"error: {e}"
    pos = getattr(e, "position", None)
    if source is not None and pos is not None:
        msg += f"\n  {source}\n  {' ' * (pos - 1)}^"
    return msg


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except (ExprSyntaxError, UnknownIdentifier) as e:
        source = getattr(args, "expr", None)
        print(_syntax_message(e, source), file=err)
        return EXIT_USAGE
    except UsageError as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE
    except _IOFailure as e:
        print(f"error: {e}", file=err)
        return EXIT_IO
    except (NotSensePreserving, DegenerateFunction, InvalidExponent) as e:
        print(f"error: invalid map: {e}", file=err)
        return EXIT_INVALID_MAP
    except PoleEncountered as e:
        # during map construction this is a vanishing g; elsewhere a pole
        code = EXIT_EVAL if args.command == "eval" else EXIT_INVALID_MAP
        print(f"error: {e}", file=err)
        return code
    except (BranchCutArgumentZero, DomainError, NoFiniteSamples, ArithmeticError) as e:
        print(f"error: {e}", file=err)
        return EXIT_EVAL
    except DiskNormError as e:
        print(f"error: {e}", file=err)
        return EXIT_EVAL if args.command in ("eval", "norm", "dump") else EXIT_INTERNAL
    except Exception as e:  # noqa: BLE001
        print(f"internal error: {type(e).__name__}: {e}", file=err)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

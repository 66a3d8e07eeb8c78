"""Command-line front end: realize controllers, print symbolic forms,
synthesize ladders, sweep Bode responses, compare approximation methods.

All output is deterministic: identical invocations produce byte-identical
files. Data payloads carry no timestamps; run provenance lives in one
suppressible place (the "meta" key of JSON documents, one leading "# "
comment line in CSV) so payloads diff cleanly.

The interchange format for numeric transfer functions is the tf-document:
JSON with descending-power coefficient strings, exact "p/q" in the
rational ring and 15-significant-digit decimals in the float ring. A
document produced here parses back and re-emits byte for byte. The
symbolic command emits a separate symbolic-tf document whose coefficients
are polynomial strings in the tuning parameters; that format is for
reading, not for feeding back in.

Exit codes: 0 success, 2 validation error, 3 degenerate mathematics.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import polys
from .approx import GainTag, TransferFunction, make_tf
from .baselines import BaselineConfig, carlson, modified_oustaloup, oustaloup
from .controllers import (
    FOPID,
    Differintegrator,
    FOPDBracket,
    LeadLag,
    realize_differintegrator,
    realize_fopd_bracket,
    realize_fopid,
    realize_leadlag,
    symbolic_differintegrator,
)
from .errors import FracratError, ValidationError
from .freqresp import bode, fit_report, ideal_response, log_grid
from .ladder import export_netlist, map_elements, synthesize_ladder

_RAT_FLAGS = (
    ("lam", "--lambda"),
    ("mu", "--mu"),
    ("alpha", "--alpha"),
    ("x", "--x"),
    ("kp", "--kp"),
    ("ki", "--ki"),
    ("kd", "--kd"),
    ("kc", "--kc"),
    ("T", "--T"),
)

_CONTROLLER_PARAMS = {
    "diffint": ("lam", "T"),
    "fopid": ("kp", "ki", "kd", "lam", "mu"),
    "fopd": ("kp", "kd", "mu"),
    "leadlag": ("kc", "lam", "x", "alpha"),
}

# controllers whose expansion picks a frequency range
_RANGED = ("diffint", "fopid")

_METHODS = ("cfe-low", "cfe-high", "oustaloup", "mod-oustaloup", "carlson")


def _parse_rat(text: str, flag: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"{flag} expects a rational number, got {text!r}") from None


def _coeff_str(c) -> str:
    if isinstance(c, float):
        return f"{c:.15g}"
    return str(c)


def _gain_dict(gain: GainTag | None):
    if gain is None:
        return None
    return {"label": gain.label, "value": gain.value}


def emit_tf_document(
    tf: TransferFunction, meta: dict | None = None, as_float: bool = False
) -> str:
    """Serialize a numeric TF as tf-document JSON.

    Coefficients are listed in descending powers of s: exact "p/q"
    strings in the rational ring, 15-significant-digit decimals in the
    float ring. as_float converts an exact TF to the float display form
    (a one-way step; the exact strings are the canonical ones).
    """
    if tf.ring == "symbolic":
        raise ValidationError("symbolic coefficients do not fit a tf-document")
    num, den, ring = tf.num, tf.den, tf.ring
    if as_float and ring == "rational":
        num = tuple(float(c) for c in num)
        den = tuple(float(c) for c in den)
        ring = "float"
    doc = {
        "format": "tf-document",
        "variable": "s",
        "ring": ring,
        "num": [_coeff_str(c) for c in reversed(num)],
        "den": [_coeff_str(c) for c in reversed(den)],
        "gain": _gain_dict(tf.gain),
        "notes": list(tf.notes),
    }
    if meta is not None:
        doc["meta"] = meta
    return json.dumps(doc, indent=2) + "\n"


def parse_tf_document(text: str) -> tuple[TransferFunction, dict | None]:
    """Parse tf-document JSON back into a TransferFunction plus its meta.

    Accepts only the numeric rings; a symbolic-tf document does not come
    back (one-way by design). Coefficients re-normalize through make_tf,
    which is the identity on documents this tool emitted.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != "tf-document":
        raise ValidationError('expected a JSON object with format "tf-document"')
    if doc.get("variable", "s") != "s":
        raise ValidationError("only the variable s is supported")
    ring = doc.get("ring", "rational")
    if ring not in ("rational", "float"):
        raise ValidationError(f"cannot parse coefficients in ring {ring!r}")

    def coeff(text_value):
        try:
            if ring == "float":
                return float(text_value)
            return Fraction(str(text_value))
        except (ValueError, ZeroDivisionError, TypeError):
            raise ValidationError(f"bad coefficient {text_value!r}") from None

    for side in ("num", "den"):
        if side not in doc or not isinstance(doc[side], list) or not doc[side]:
            raise ValidationError(f"tf-document needs a non-empty {side!r} list")
    num = tuple(coeff(c) for c in reversed(doc["num"]))
    den = tuple(coeff(c) for c in reversed(doc["den"]))
    gain = doc.get("gain")
    tag = None
    if gain is not None:
        if not isinstance(gain, dict) or "label" not in gain:
            raise ValidationError("gain must be null or carry a label")
        value = gain.get("value")
        tag = GainTag(str(gain["label"]), None if value is None else float(value))
    notes = tuple(str(n) for n in doc.get("notes", ()))
    return make_tf(num, den, gain=tag, notes=notes), doc.get("meta")


def emit_symbolic_document(tf: TransferFunction, meta: dict | None = None) -> str:
    """Serialize a TF with the tuning parameters left symbolic.

    Coefficients are polynomial strings in descending powers of s.
    """
    doc = {
        "format": "symbolic-tf",
        "variable": "s",
        "num": [str(c) for c in reversed(tf.num)],
        "den": [str(c) for c in reversed(tf.den)],
        "gain": _gain_dict(tf.gain),
        "notes": list(tf.notes),
    }
    if meta is not None:
        doc["meta"] = meta
    return json.dumps(doc, indent=2) + "\n"


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from None


def _write_text(path: str | None, text: str):
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    except OSError as exc:
        raise ValidationError(f"cannot write {path}: {exc}") from None


def _csv_num(value: float) -> str:
    return repr(float(value))


def _exact_tf(tf: TransferFunction) -> TransferFunction:
    """Exact-coefficient copy for synthesis: float coefficients convert
    binary-exactly, a numeric gain tag folds into the numerator."""
    if tf.ring == "symbolic":
        raise ValidationError("ladder synthesis needs numeric coefficients")
    num, den = tf.num, tf.den
    if tf.ring == "float":
        num = tuple(Fraction(c) for c in num)
        den = tuple(Fraction(c) for c in den)
    if tf.gain is not None:
        if tf.gain.value is None:
            raise ValidationError("gain tag has no numeric value")
        num = polys.scale(num, Fraction(tf.gain.value))
    return make_tf(num, den)


def _build_controller(args, numeric: bool) -> TransferFunction:
    controller = args.controller
    params = _CONTROLLER_PARAMS[controller]
    values: dict = {}
    for name, flag in _RAT_FLAGS:
        raw = getattr(args, name)
        if raw is None:
            values[name] = None
        elif name not in params:
            raise ValidationError(f"{flag} is not a {controller} parameter")
        else:
            values[name] = _parse_rat(raw, flag)
    if args.range is not None and controller not in _RANGED:
        raise ValidationError(f"--range does not apply to {controller}")
    if args.sign is not None and controller != "diffint":
        raise ValidationError("--sign only applies to diffint")
    if numeric:
        flags = dict(_RAT_FLAGS)
        for name in params:
            if name != "T" and values[name] is None:
                raise ValidationError(f"{controller} needs {flags[name]}")
    order = args.order
    rng = args.range or "low"
    if controller == "diffint":
        sign = args.sign or "integrator"
        T = values["T"] if values["T"] is not None else Fraction(1)
        if numeric or values["lam"] is not None:
            spec = Differintegrator(values["lam"], sign=sign, freq_range=rng, T=T)
            return realize_differintegrator(spec, order)
        if T != 1:
            raise ValidationError("the symbolic differintegrator is produced at T = 1")
        return symbolic_differintegrator(rng, order, sign=sign)
    if controller == "fopid":
        spec = FOPID(values["kp"], values["ki"], values["kd"], values["lam"], values["mu"])
        return realize_fopid(spec, rng, order)
    if controller == "fopd":
        return realize_fopd_bracket(FOPDBracket(values["kp"], values["kd"], values["mu"]), order)
    return realize_leadlag(LeadLag(values["kc"], values["lam"], values["x"], values["alpha"]), order)


def _controller_meta(command: str, args) -> dict:
    meta: dict = {"command": command, "controller": args.controller, "order": args.order}
    for name, flag in _RAT_FLAGS:
        raw = getattr(args, name)
        if raw is not None:
            meta[flag[2:]] = raw
    if args.range is not None:
        meta["range"] = args.range
    if args.sign is not None:
        meta["sign"] = args.sign
    return meta


def _run_realize(args) -> int:
    tf = _build_controller(args, numeric=True)
    meta = None if args.no_meta else _controller_meta("realize", args)
    _write_text(args.output, emit_tf_document(tf, meta=meta, as_float=args.as_float))
    return 0


def _run_symbolic(args) -> int:
    tf = _build_controller(args, numeric=False)
    meta = None if args.no_meta else _controller_meta("symbolic", args)
    _write_text(args.output, emit_symbolic_document(tf, meta=meta))
    return 0


def _run_ladder(args) -> int:
    tf, _ = parse_tf_document(_read_text(args.tf))
    net = synthesize_ladder(_exact_tf(tf))
    elements = [
        {
            "role": el.role,
            "position": el.position,
            "g": str(el.g),
            "h": str(el.h),
            "nic": el.g < 0 or el.h < 0,
        }
        for el in net.elements
    ]
    doc: dict = {"format": "ladder", "variable": "s", "elements": elements}
    if not args.no_meta:
        doc["meta"] = {"command": "ladder", "tf": args.tf}
    _write_text(args.output, json.dumps(doc, indent=2) + "\n")
    if args.netlist is not None:
        _write_text(args.netlist, export_netlist(map_elements(net)))
    return 0


def _sweep_grid(args):
    if args.points_per_decade < 1:
        raise ValidationError("--points-per-decade must be at least 1")
    return log_grid(args.fmin, args.fmax, args.points_per_decade, args.unit)


def _run_bode(args) -> int:
    tf, _ = parse_tf_document(_read_text(args.tf))
    grid = _sweep_grid(args)
    sweep = bode(tf, grid)
    lines = []
    if not args.no_meta:
        meta = {
            "command": "bode",
            "tf": args.tf,
            "fmin": args.fmin,
            "fmax": args.fmax,
            "points_per_decade": args.points_per_decade,
            "unit": args.unit,
        }
        lines.append("# " + json.dumps(meta, separators=(",", ":")))
    lines.append(f"freq,{args.unit},mag_db,phase_deg")
    for f, m, p in zip(grid.values, sweep.mag_db, sweep.phase_deg):
        lines.append(f"{_csv_num(f)},{args.unit},{_csv_num(m)},{_csv_num(p)}")
    _write_text(args.output, "\n".join(lines) + "\n")
    return 0


def _compare_tf(method: str, lam: Fraction, args) -> TransferFunction:
    """One integrator approximation of s^(-lam) per requested method.

    --order is the [n/n] order for the expansion methods, the recursion
    depth N for the two recursive baselines (orders 2N+1 and 2N+3) and
    the iteration count for the fixed-point method.
    """
    if method == "cfe-low":
        return realize_differintegrator(Differintegrator(lam), args.order)
    if method == "cfe-high":
        T = Fraction(1) if args.T is None else _parse_rat(args.T, "--T")
        spec = Differintegrator(lam, freq_range="high", T=T)
        return realize_differintegrator(spec, args.order)
    if method == "carlson":
        return carlson(lam, args.order).reciprocal()
    factor = 2.0 * math.pi if args.unit == "hz" else 1.0
    omega_b = args.omega_b if args.omega_b is not None else factor * args.fmin
    omega_h = args.omega_h if args.omega_h is not None else factor * args.fmax
    cfg = BaselineConfig(lam, omega_b, omega_h, args.order)
    core = oustaloup(cfg) if method == "oustaloup" else modified_oustaloup(cfg)
    return core.reciprocal()


def _report_entry(report) -> dict:
    return {
        "max_phase_err_deg": report.max_phase_err_deg,
        "mean_phase_err_deg": report.mean_phase_err_deg,
        "max_mag_err_db": report.max_mag_err_db,
        "mean_mag_err_db": report.mean_mag_err_db,
        "band": list(report.band),
        "constant_phase_band": None
        if report.constant_phase_band is None
        else list(report.constant_phase_band),
    }


def _run_compare(args) -> int:
    lam = _parse_rat(args.lam, "--lambda")
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    if not methods:
        raise ValidationError("--methods lists no methods")
    for m in methods:
        if m not in _METHODS:
            raise ValidationError(f"unknown method {m!r}; choose from {', '.join(_METHODS)}")
    if len(set(methods)) != len(methods):
        raise ValidationError("--methods lists a method twice")
    grid = _sweep_grid(args)
    ideal = ideal_response(Differintegrator(lam), grid)
    sweeps = {m: bode(_compare_tf(m, lam, args), grid) for m in methods}

    meta = {
        "command": "compare",
        "lambda": args.lam,
        "order": args.order,
        "methods": args.methods,
        "fmin": args.fmin,
        "fmax": args.fmax,
        "points_per_decade": args.points_per_decade,
        "unit": args.unit,
    }
    if args.T is not None:
        meta["T"] = args.T
    if args.omega_b is not None:
        meta["omega_b"] = args.omega_b
    if args.omega_h is not None:
        meta["omega_h"] = args.omega_h

    columns = [m.replace("-", "_") for m in methods]
    lines = []
    if not args.no_meta:
        lines.append("# " + json.dumps(meta, separators=(",", ":")))
    header = ["freq", args.unit, "ideal_mag_db", "ideal_phase_deg"]
    for name in columns:
        header.extend((f"{name}_mag_db", f"{name}_phase_deg"))
    lines.append(",".join(header))
    for i, f in enumerate(grid.values):
        row = [
            _csv_num(f),
            args.unit,
            _csv_num(ideal.mag_db[i]),
            _csv_num(ideal.phase_deg[i]),
        ]
        for m in methods:
            row.extend((_csv_num(sweeps[m].mag_db[i]), _csv_num(sweeps[m].phase_deg[i])))
        lines.append(",".join(row))
    _write_text(args.output, "\n".join(lines) + "\n")

    if args.report is not None:
        band = (grid.values[0], grid.values[-1])
        doc: dict = {
            "format": "fit-report",
            "unit": args.unit,
            "band": list(band),
            "phase_tol_deg": 5.0,
            "methods": {
                m: _report_entry(fit_report(sweeps[m], ideal, band)) for m in methods
            },
        }
        if not args.no_meta:
            doc["meta"] = meta
        _write_text(args.report, json.dumps(doc, indent=2) + "\n")
    return 0


class _Parser(argparse.ArgumentParser):
    """argparse error channel routed through the package's validation
    error so bad flags exit 2 like every other precondition failure."""

    def error(self, message):
        raise ValidationError(message)


def _add_controller_flags(p: argparse.ArgumentParser):
    p.add_argument(
        "--controller", required=True, choices=sorted(_CONTROLLER_PARAMS), help="controller family"
    )
    p.add_argument("--order", required=True, type=int, help="order n of the [n/n] approximant")
    p.add_argument("--lambda", dest="lam", metavar="RAT", help="fractional order, e.g. 1/2 or 0.5")
    p.add_argument("--mu", metavar="RAT", help="fractional differential order")
    p.add_argument("--alpha", metavar="RAT", help="lead-lag exponent in [0, 1]")
    p.add_argument("--x", metavar="RAT", help="lead-lag pole/zero ratio in (0, 1]")
    p.add_argument("--kp", metavar="RAT", help="proportional gain")
    p.add_argument("--ki", metavar="RAT", help="integral gain")
    p.add_argument("--kd", metavar="RAT", help="derivative gain")
    p.add_argument("--kc", metavar="RAT", help="compensator gain")
    p.add_argument("--T", metavar="RAT", help="time constant of the high-range form (default 1)")
    p.add_argument("--range", choices=("low", "high"), help="expansion band (default low)")
    p.add_argument(
        "--sign",
        choices=("integrator", "differentiator"),
        help="s^-lambda or s^+lambda (default integrator)",
    )


def _add_output_flags(p: argparse.ArgumentParser):
    p.add_argument("-o", "--output", metavar="FILE", help="write here instead of stdout")
    p.add_argument("--no-meta", dest="no_meta", action="store_true", help="omit run metadata")


def _add_sweep_flags(p: argparse.ArgumentParser):
    p.add_argument("--fmin", required=True, type=float, help="sweep start frequency")
    p.add_argument("--fmax", required=True, type=float, help="sweep end frequency")
    p.add_argument("--points-per-decade", type=int, default=50, metavar="N")
    p.add_argument("--unit", choices=("hz", "rad"), default="hz", help="frequency unit")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="fracrat",
        description="Rational approximations of fractional-order operators and controllers.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("realize", help="numeric rational realization of one controller")
    _add_controller_flags(p)
    p.add_argument(
        "--float",
        dest="as_float",
        action="store_true",
        help="display coefficients as 15-significant-digit decimals",
    )
    _add_output_flags(p)

    p = sub.add_parser("symbolic", help="realization with omitted parameters kept symbolic")
    _add_controller_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("ladder", help="domino-ladder synthesis of a tf-document")
    p.add_argument("--tf", required=True, metavar="FILE", help="tf-document to expand")
    p.add_argument("--netlist", metavar="FILE", help="also write a SPICE-dialect netlist here")
    _add_output_flags(p)

    p = sub.add_parser("bode", help="frequency sweep of a tf-document as CSV")
    p.add_argument("--tf", required=True, metavar="FILE", help="tf-document to sweep")
    _add_sweep_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("compare", help="sweep several integrator approximations side by side")
    p.add_argument("--lambda", dest="lam", required=True, metavar="RAT", help="fractional order")
    p.add_argument(
        "--order",
        required=True,
        type=int,
        help="[n/n] order; recursion depth N for the recursive baselines; iterations for carlson",
    )
    p.add_argument(
        "--methods",
        required=True,
        help="comma-separated subset of " + ",".join(_METHODS),
    )
    _add_sweep_flags(p)
    p.add_argument("--T", metavar="RAT", help="time constant for cfe-high (default 1)")
    p.add_argument(
        "--omega-b", type=float, metavar="W", help="baseline fit-band low edge, rad/s (default: sweep start)"
    )
    p.add_argument(
        "--omega-h", type=float, metavar="W", help="baseline fit-band high edge, rad/s (default: sweep end)"
    )
    p.add_argument("--report", metavar="FILE", help="write a fit-report JSON here")
    _add_output_flags(p)

    return parser


_RUNNERS = {
    "realize": _run_realize,
    "symbolic": _run_symbolic,
    "ladder": _run_ladder,
    "bode": _run_bode,
    "compare": _run_compare,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _RUNNERS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FracratError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

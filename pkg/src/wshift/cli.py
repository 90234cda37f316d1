"""Command-line front end.

Shift families are read from a JSON config whose numbers are exact
fraction strings (``"9/16"``); decimal literals are refused. Reports are
printed as an aligned text table, RFC 4180 CSV, or JSON.

Exit codes: 0 success / verdict passed, 1 mathematical failure (a failed
window check or a MISMATCH in ``paper-tables``), 2 usage or config error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .exactmath import INFINITE, NotPSD, Poly, as_fraction
from .measures import (
    Measure,
    monomial_density,
    power_backstep_subnormal_threshold,
    shift_from_measure,
)
from .positivity import DEFAULT_WINDOW, is_k_hyponormal_window, power_backstep_k_threshold
from .quadratic import hyponormal_closed_form, pqh_threshold_family, qh_closed_form
from .weights import (
    ConstantTail,
    InvalidWeights,
    RationalFunctionTail,
    WeightSequenceSq,
    backstep,
    bergman,
    packet,
    power_decompose,
    schur,
)

REPORT_SCHEMA = "wshift-report/1"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class ParseError(ValueError):
    pass


class InvalidFamily(ValueError):
    pass


class UnsupportedFamily(ValueError):
    pass


# ---------------------------------------------------------------------------
# Config
# ---------------------------------------------------------------------------


def _frac(value, where: str) -> Fraction:
    if isinstance(value, float):
        raise ParseError(f"{where}: decimal number {value!r} not accepted; write \"p/q\"")
    try:
        return as_fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where}: {exc}") from None


def _fracs(values, where: str) -> tuple[Fraction, ...]:
    if not isinstance(values, list):
        raise ParseError(f"{where}: expected a list")
    return tuple(_frac(v, f"{where}[{i}]") for i, v in enumerate(values))


def _int(value, where: str, minimum: int = 0) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise ParseError(f"{where}: expected an integer >= {minimum}")
    return value


def _fstr(x: Fraction) -> str:
    return str(x)


@dataclass(frozen=True)
class FamilyConfig:
    """A parsed family: a base sequence plus an ordered list of transforms.

    ``base`` is a tagged dict with every number already a Fraction;
    ``transforms`` is a tuple of ``(name, argument)`` pairs.
    """

    base: dict
    transforms: tuple = ()

    def to_json(self) -> dict:
        b = dict(self.base)
        out: dict[str, Any] = {"type": b["type"]}
        kind = b["type"]
        if kind == "rational_tail":
            out["numerator"] = [_fstr(c) for c in b["numerator"]]
            out["denominator"] = [_fstr(c) for c in b["denominator"]]
            out["prefix"] = [_fstr(c) for c in b["prefix"]]
        elif kind == "measure":
            out["atoms"] = [[_fstr(p), _fstr(m)] for p, m in b["atoms"]]
            out["density"] = [[_fstr(a), _fstr(q)] for a, q in b["density"]]
        elif kind == "constant":
            out["c"] = _fstr(b["c"])
        elif kind == "explicit":
            out["prefix"] = [_fstr(c) for c in b["prefix"]]
            out["then"] = _fstr(b["then"])
        transforms = []
        for name, arg in self.transforms:
            if name == "backstep":
                transforms.append({"backstep": _fstr(arg)})
            elif name == "power":
                transforms.append({"power": arg})
            elif name == "packet":
                transforms.append({"packet": list(arg)})
            elif name == "schur":
                transforms.append({"schur": arg.to_json()})
        return {"base": out, "transforms": transforms}


def parse_config(obj, where: str = "config") -> FamilyConfig:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    unknown = set(obj) - {"base", "transforms"}
    if unknown:
        raise ParseError(f"{where}: unknown field(s) {sorted(unknown)}")
    if "base" not in obj:
        raise ParseError(f"{where}: missing 'base'")
    base_obj = obj["base"]
    bw = f"{where}.base"
    if not isinstance(base_obj, dict) or "type" not in base_obj:
        raise ParseError(f"{bw}: expected an object with a 'type'")
    kind = base_obj["type"]
    if kind == "rational_tail":
        base = {
            "type": kind,
            "numerator": _fracs(base_obj.get("numerator"), f"{bw}.numerator"),
            "denominator": _fracs(base_obj.get("denominator"), f"{bw}.denominator"),
            "prefix": _fracs(base_obj.get("prefix", []), f"{bw}.prefix"),
        }
    elif kind == "measure":
        atoms = base_obj.get("atoms", [])
        density = base_obj.get("density", [])
        if not isinstance(atoms, list) or not isinstance(density, list):
            raise ParseError(f"{bw}: 'atoms' and 'density' must be lists")
        base = {
            "type": kind,
            "atoms": tuple(_pair(a, f"{bw}.atoms[{i}]") for i, a in enumerate(atoms)),
            "density": tuple(_pair(d, f"{bw}.density[{i}]") for i, d in enumerate(density)),
        }
    elif kind == "constant":
        base = {"type": kind, "c": _frac(base_obj.get("c", "1"), f"{bw}.c")}
    elif kind == "explicit":
        base = {
            "type": kind,
            "prefix": _fracs(base_obj.get("prefix"), f"{bw}.prefix"),
            "then": _frac(base_obj.get("then", "1"), f"{bw}.then"),
        }
    else:
        raise ParseError(f"{bw}.type: unknown base type {kind!r}")

    raw = obj.get("transforms", [])
    if not isinstance(raw, list):
        raise ParseError(f"{where}.transforms: expected a list")
    transforms = []
    for i, item in enumerate(raw):
        tw = f"{where}.transforms[{i}]"
        if not isinstance(item, dict) or len(item) != 1:
            raise ParseError(f"{tw}: expected a single-key object")
        (name, arg), = item.items()
        if name == "backstep":
            transforms.append((name, _frac(arg, f"{tw}.backstep")))
        elif name == "power":
            transforms.append((name, _int(arg, f"{tw}.power", 1)))
        elif name == "packet":
            if not isinstance(arg, list) or len(arg) != 2:
                raise ParseError(f"{tw}.packet: expected [length, start]")
            transforms.append((name, (_int(arg[0], f"{tw}.packet[0]", 1), _int(arg[1], f"{tw}.packet[1]"))))
        elif name == "schur":
            transforms.append((name, parse_config(arg, f"{tw}.schur")))
        else:
            raise ParseError(f"{tw}: unknown transform {name!r}")
    return FamilyConfig(base, tuple(transforms))


def _pair(value, where):
    if not isinstance(value, list) or len(value) != 2:
        raise ParseError(f"{where}: expected a pair")
    return _frac(value[0], f"{where}[0]"), _frac(value[1], f"{where}[1]")


def load_config(path: str) -> FamilyConfig:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_config(obj)


def base_measure(config: FamilyConfig) -> Measure | None:
    """The Berger measure of the base, when it is known in closed form."""
    b = config.base
    kind = b["type"]
    try:
        if kind == "measure":
            return Measure(b["atoms"], b["density"])
        if kind == "constant" and 0 < b["c"] <= 1:
            return Measure(((b["c"], 1),))
    except ValueError as exc:
        raise InvalidFamily(str(exc)) from None
    if kind == "rational_tail" and not b["prefix"]:
        num, den = Poly(b["numerator"], "n"), Poly(b["denominator"], "n")
        if num.degree == 1 and den.degree == 1 and num.lc == den.lc:
            a = num[0] / num.lc
            if den[0] / den.lc == a + 1 and a > 0:
                # s_n = (n+a)/(n+a+1): moments a/(n+a), measure a t^(a-1) dt
                return monomial_density(a, a - 1)
    return None


def build_sequences(config: FamilyConfig) -> list[WeightSequenceSq]:
    b = config.base
    try:
        kind = b["type"]
        if kind == "rational_tail":
            tail = RationalFunctionTail(Poly(b["numerator"], "n"), Poly(b["denominator"], "n"))
            seq = WeightSequenceSq(b["prefix"], tail)
            seq.weights_sq(len(b["prefix"]) + 64)
        elif kind == "measure":
            seq = shift_from_measure(Measure(b["atoms"], b["density"]))
        elif kind == "constant":
            seq = WeightSequenceSq((), ConstantTail(b["c"]))
        else:
            seq = WeightSequenceSq(b["prefix"], ConstantTail(b["then"]))
        pieces = [seq]
        for name, arg in config.transforms:
            if name == "backstep":
                pieces = [backstep(p, arg) for p in pieces]
            elif name == "power":
                pieces = [q for p in pieces for q in power_decompose(p, arg)]
            elif name == "packet":
                pieces = [packet(p, *arg) for p in pieces]
            elif name == "schur":
                others = build_sequences(arg)
                if len(others) != 1:
                    raise InvalidFamily("schur factor must resolve to a single sequence")
                pieces = [schur(p, others[0]) for p in pieces]
    except (InvalidWeights, ValueError, IndexError) as exc:
        if isinstance(exc, (ParseError, InvalidFamily)):
            raise
        raise InvalidFamily(str(exc)) from None
    return pieces


def _is_bergman(config: FamilyConfig) -> bool:
    mu = base_measure(config)
    return mu is not None and mu == monomial_density(2, 1)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


@dataclass
class Row:
    label: str
    exact: str
    approx: str = ""
    extra: dict = field(default_factory=dict)


def value_row(label: str, value, **extra) -> Row:
    return Row(label, format_exact(value), format_approx(value), {k: str(v) for k, v in extra.items()})


def format_exact(value) -> str:
    if value is None:
        return "none"
    if value == INFINITE:
        return "inf"
    return str(value)


def format_approx(value) -> str:
    if value is None or value == INFINITE:
        return ""
    return f"{float(value):.6f}"


@dataclass
class Report:
    title: str
    rows: list = field(default_factory=list)

    def columns(self) -> list[str]:
        cols = ["label", "exact", "approx"]
        for row in self.rows:
            for key in row.extra:
                if key not in cols:
                    cols.append(key)
        return cols

    def records(self) -> list[dict]:
        cols = self.columns()
        out = []
        for row in self.rows:
            rec = {"label": row.label, "exact": row.exact, "approx": row.approx, **row.extra}
            out.append({c: rec.get(c, "") for c in cols})
        return out

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps({"schema": REPORT_SCHEMA, "title": self.title, "rows": self.records()}, indent=2) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            writer = csv.DictWriter(buf, fieldnames=self.columns(), lineterminator="\r\n")
            writer.writeheader()
            writer.writerows(self.records())
            return buf.getvalue()
        cols = self.columns()
        recs = self.records()
        widths = {c: max([len(c)] + [len(r[c]) for r in recs]) for c in cols}
        lines = [self.title, "  ".join(c.ljust(widths[c]) for c in cols).rstrip()]
        lines.append("  ".join("-" * widths[c] for c in cols))
        for r in recs:
            lines.append("  ".join(r[c].ljust(widths[c]) for c in cols).rstrip())
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _single(pieces: list[WeightSequenceSq]) -> WeightSequenceSq:
    if len(pieces) != 1:
        raise InvalidFamily("this command needs a config resolving to one sequence (no 'power' transform)")
    return pieces[0]


def cmd_moments(config: FamilyConfig, count: int) -> Report:
    if count < 1:
        raise ParseError("--count must be >= 1")
    pieces = build_sequences(config)
    report = Report(f"moments gamma_0 .. gamma_{count - 1}")
    for idx, seq in enumerate(pieces):
        prefix = f"piece {idx} " if len(pieces) > 1 else ""
        try:
            for n, g in enumerate(seq.moments(count)):
                report.rows.append(value_row(f"{prefix}gamma_{n}", g))
        except (InvalidWeights, ValueError) as exc:
            raise InvalidFamily(str(exc)) from None
    return report


def cmd_check(config: FamilyConfig, k: int, window: int, power: int = 1) -> tuple[Report, int]:
    if k < 1 or window < 0 or power < 1:
        raise ParseError("need --k >= 1, --window >= 0, --power >= 1")
    pieces = build_sequences(config)
    if power > 1:
        pieces = [q for p in pieces for q in power_decompose(p, power)]
    report = Report(f"{k}-hyponormality, Hankel windows n = 0..{window}")
    ok = True
    for idx, seq in enumerate(pieces):
        try:
            verdict = is_k_hyponormal_window(seq, k, window)
        except (InvalidWeights, ValueError) as exc:
            raise InvalidFamily(str(exc)) from None
        ok = ok and verdict.passed
        report.rows.append(
            Row(f"piece {idx}", str(verdict), "", {"failed_at": "" if verdict.passed else str(verdict.failed_at)})
        )
    report.rows.append(Row("overall", f"PassedWindow({window})" if ok else "Failed"))
    return report, EXIT_OK if ok else EXIT_FAIL


def cmd_threshold(config: FamilyConfig, k: int, power: int, mode: str) -> Report:
    if k < 1 or power < 1:
        raise ParseError("need --k >= 1 and --power >= 1")
    label = f"threshold[{mode}] power={power}"
    if mode == "khyp":
        seq = _single(build_sequences(config))
        value = power_backstep_k_threshold(seq, power, k)
        return Report(f"largest squared back-step weight: {k}-hyponormal power {power}", [value_row(f"{label} k={k}", value)])
    if config.transforms:
        raise UnsupportedFamily(f"--mode {mode} needs a bare base family (no transforms)")
    if mode == "subnormal":
        mu = base_measure(config)
        if mu is None:
            raise UnsupportedFamily("base has no known Berger measure")
        value = power_backstep_subnormal_threshold(mu, power)
        return Report(f"largest squared back-step weight: subnormal power {power}", [value_row(label, value)])
    if mode == "pqh":
        if not _is_bergman(config):
            raise UnsupportedFamily("pqh mode is available for the Bergman-tail family only")
        value = pqh_threshold_family(power)
        return Report(f"largest squared back-step weight: PQH power {power}", [value_row(label, value)])
    raise ParseError(f"unknown mode {mode!r}")


def cmd_decompose(config: FamilyConfig, power: int, count: int) -> Report:
    if power < 1 or count < 1:
        raise ParseError("need --power >= 1 and --count >= 1")
    seq = _single(build_sequences(config))
    report = Report(f"summands of the power {power}")
    for i, piece in enumerate(power_decompose(seq, power)):
        for j, s in enumerate(piece.weights_sq(count)):
            report.rows.append(value_row(f"piece {i} s_{j}", s))
        for j, g in enumerate(piece.moments(count)):
            report.rows.append(value_row(f"piece {i} gamma_{j}", g))
    return report


def _khyp2_closed_form(power: int) -> Fraction:
    lp = Fraction(power)
    return (lp + 1) ** 2 * (2 * lp + 1) ** 2 / (2 * (3 * lp + 1) * (4 * lp**2 + 3 * lp + 1))


def cmd_threshold_tables(max_power: int = 8) -> tuple[Report, int]:
    """Regenerate the back-step thresholds of the Bergman-tail shift for
    powers 1..max_power, each from scratch and from its closed form."""
    if max_power < 1:
        raise ParseError("--max-power must be >= 1")
    base = bergman()
    mu = monomial_density(2, 1)
    report = Report(f"Bergman-tail back-step thresholds, powers 1..{max_power}")
    ok = True
    for lp in range(1, max_power + 1):
        cells = [
            ("hyponormal", power_backstep_k_threshold(base, lp, 1), hyponormal_closed_form(lp)),
            ("2-hyponormal", power_backstep_k_threshold(base, lp, 2), _khyp2_closed_form(lp)),
            ("subnormal", power_backstep_subnormal_threshold(mu, lp), Fraction(1, 2)),
            ("PQH", pqh_threshold_family(lp), qh_closed_form(lp)),
        ]
        for name, computed, closed in cells:
            match = computed == closed
            ok = ok and match
            report.rows.append(
                value_row(f"l={lp} {name}", computed, closed_form=closed, status="MATCH" if match else "MISMATCH")
            )
    return report, EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wshift", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, config=True):
        if config:
            p.add_argument("--config", required=True, help="family config (JSON); '-' reads stdin")
        p.add_argument("--format", choices=("text", "csv", "json"), default="text")

    p = sub.add_parser("moments", help="print gamma_0 .. gamma_{count-1}")
    add_common(p)
    p.add_argument("--count", type=int, default=10)

    p = sub.add_parser("check", help="windowed k-hyponormality")
    add_common(p)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p.add_argument("--power", type=int, default=1)

    p = sub.add_parser("threshold", help="exact back-step thresholds")
    add_common(p)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--power", type=int, default=1)
    p.add_argument("--mode", choices=("khyp", "subnormal", "pqh"), default="khyp")

    p = sub.add_parser("decompose", help="direct summands of a power")
    add_common(p)
    p.add_argument("--power", type=int, required=True)
    p.add_argument("--count", type=int, default=6)

    p = sub.add_parser("paper-tables", help="regenerate the threshold tables")
    add_common(p, config=False)
    p.add_argument("--max-power", type=int, default=8)
    return parser


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    code = EXIT_OK
    try:
        if args.command == "paper-tables":
            report, code = cmd_threshold_tables(args.max_power)
        else:
            config = load_config(args.config)
            if args.command == "moments":
                report = cmd_moments(config, args.count)
            elif args.command == "check":
                report, code = cmd_check(config, args.k, args.window, args.power)
            elif args.command == "threshold":
                report = cmd_threshold(config, args.k, args.power, args.mode)
            else:
                report = cmd_decompose(config, args.power, args.count)
    except (ParseError, InvalidFamily, UnsupportedFamily, NotPSD, OSError) as exc:
        print(f"wshift: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    stdout.write(report.render(args.format))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

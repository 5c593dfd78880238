"""Command line front end and the line-based map document format.

A document looks like::

    # y1 = x1^3 + x2^3, y2 = 3 x1^2 x2 + 3 x1 x2^2
    format = 1
    mode = tensor
    F1_111 = 1
    F1_112 = 0
    ...

``F`` keys are required; ``Q``, ``L`` and ``c`` keys default to zero.
Every number in every report is an exact rational string, a structured
quadratic surd, or an interval with its defining polynomial.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import oracles
from .classify import Classification, Kind, ProjectiveRoot, classify_map, root_vanishes
from .core import (
    SEXTET_NAMES,
    AffineChange,
    CubicMap,
    InconsistencyError,
    NotCubicError,
    build_map,
    determinants,
    first_form,
)
from .normalize import (
    DEFAULT_RESIDUAL,
    NormalizationResult,
    ResidualBudgetExceeded,
    normalize_map,
    refinement_report,
)
from .numeric import format_rational, parse_rational, scalar_to_json, sturm_count

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT, EXIT_BUDGET = 0, 1, 2, 3

FORMAT_VERSION = 1
MODES = ("tensor", "poly")
_ROWS = (
    ("F", ("111", "112", "122", "222")),
    ("Q", ("11", "12", "22")),
    ("L", ("1", "2")),
)
COEFFICIENT_KEYS = tuple(
    f"{block}{i}_{suffix}" for block, suffixes in _ROWS for i in (1, 2) for suffix in suffixes
) + ("c1", "c2")
REQUIRED_KEYS = tuple(k for k in COEFFICIENT_KEYS if k.startswith("F"))


class DocumentError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class MapDocument:
    mode: str
    values: dict
    version: int = FORMAT_VERSION

    @classmethod
    def parse(cls, text: str) -> MapDocument:
        seen: dict[str, int] = {}
        header: dict[str, str] = {}
        values: dict[str, Fraction] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, eq, value = (part.strip() for part in line.partition("="))
            if not eq or not key or not value:
                raise DocumentError(f"expected 'key = value', got {raw.strip()!r}", lineno)
            if key in seen:
                raise DocumentError(f"{key}: duplicate (first set on line {seen[key]})", lineno)
            seen[key] = lineno
            if key in ("format", "mode"):
                header[key] = value
            elif key in COEFFICIENT_KEYS:
                try:
                    values[key] = parse_rational(value)
                except (ValueError, ZeroDivisionError):
                    raise DocumentError(f"{key}: not a rational: {value!r}", lineno) from None
            else:
                raise DocumentError(f"{key}: unknown field", lineno)
        if header.get("format") != str(FORMAT_VERSION):
            where = seen.get("format")
            raise DocumentError(f"format: expected {FORMAT_VERSION}, got {header.get('format')!r}", where)
        mode = header.get("mode")
        if mode not in MODES:
            raise DocumentError(f"mode: expected one of {', '.join(MODES)}, got {mode!r}", seen.get("mode"))
        missing = [k for k in REQUIRED_KEYS if k not in values]
        if missing:
            raise DocumentError(f"missing required fields: {', '.join(missing)}")
        return cls(mode, {k: values.get(k, Fraction(0)) for k in COEFFICIENT_KEYS})

    def serialize(self) -> str:
        lines = [f"format = {self.version}", f"mode = {self.mode}"]
        lines += [f"{k} = {format_rational(self.values[k])}" for k in COEFFICIENT_KEYS]
        return "\n".join(lines) + "\n"

    def to_map(self) -> CubicMap:
        v = self.values
        raw = {
            "F1": [v[f"F1_{s}"] for s in _ROWS[0][1]],
            "F2": [v[f"F2_{s}"] for s in _ROWS[0][1]],
            "Q1": [v[f"Q1_{s}"] for s in _ROWS[1][1]],
            "Q2": [v[f"Q2_{s}"] for s in _ROWS[1][1]],
            "L1": [v["L1_1"], v["L1_2"]],
            "L2": [v["L2_1"], v["L2_2"]],
            "c": [v["c1"], v["c2"]],
        }
        return build_map(raw, self.mode)

    @classmethod
    def from_map(cls, f: CubicMap) -> MapDocument:
        vals = {}
        for block, rows in (("F", f.F), ("Q", f.Q), ("L", f.L)):
            suffixes = dict(_ROWS)[block]
            for i, row in enumerate(rows, start=1):
                for s, x in zip(suffixes, row):
                    vals[f"{block}{i}_{s}"] = Fraction(x)
        vals["c1"], vals["c2"] = (Fraction(x) for x in f.c)
        return cls("tensor", vals)

    def to_json(self) -> dict:
        return {
            "format": self.version,
            "mode": self.mode,
            "coefficients": {k: format_rational(self.values[k]) for k in COEFFICIENT_KEYS},
        }


# --------------------------------------------------------------------------
# report pieces


def _sextet_json(g) -> dict:
    return {name: scalar_to_json(x) for name, x in zip(SEXTET_NAMES, g)}


def _point_json(point) -> list:
    return [scalar_to_json(x) for x in point]


def root_json(r: ProjectiveRoot) -> dict:
    out: dict = {"multiplicity": r.multiplicity}
    if r.is_exact:
        out["exact"] = True
        out["point"] = _point_json(r.representative)
    else:
        out["exact"] = False
        out["interval"] = [format_rational(r.root.lo), format_rational(r.root.hi)]
        out["polynomial"] = [format_rational(c) for c in r.root.poly.coeffs]
    return out


def _change_json(change: AffineChange) -> dict:
    return {
        "matrix": [[scalar_to_json(x) for x in row] for row in change.T],
        "translation": [scalar_to_json(x) for x in change.a],
    }


def _map_json(f: CubicMap) -> dict:
    return {
        "F": [[scalar_to_json(x) for x in row] for row in f.F],
        "Q": [[scalar_to_json(x) for x in row] for row in f.Q],
        "L": [[scalar_to_json(x) for x in row] for row in f.L],
        "c": [scalar_to_json(x) for x in f.c],
    }


def _check_roots(cls: Classification) -> None:
    """Re-verify every root before it is reported."""
    q = cls.quartic
    for r in cls.roots:
        if r.is_exact:
            if not root_vanishes(q, r):
                raise InconsistencyError(f"reported root {r} does not annihilate the quartic")
        else:
            p, lo, hi = r.root.poly, r.root.lo, r.root.hi
            if p(lo) * p(hi) >= 0 or sturm_count(p, lo, hi) != 1:
                raise InconsistencyError(f"interval {r} does not isolate a simple sign change")


def classification_json(cls: Classification) -> dict:
    _check_roots(cls)
    out: dict = {
        "kind": cls.kind.value,
        "sign": cls.sign_label,
        "subcase": cls.subcase.value if cls.subcase else None,
        "roots": [root_json(r) for r in cls.roots],
    }
    if cls.witnesses:
        out["witnesses"] = [{"point": _point_json(p), "value": scalar_to_json(v)} for p, v in cls.witnesses]
    if cls.sign_point is not None:
        out["sign_point"] = _point_json(cls.sign_point)
    return out


def normalization_json(res: NormalizationResult) -> dict:
    return {
        "S": _change_json(res.left),
        "T": _change_json(res.right),
        "normalized": _map_json(res.normalized),
        "achieved": _sextet_json(res.achieved),
        "exact": res.exact,
        "residual": scalar_to_json(res.residual),
        "partial": res.partial,
        "refinement_steps": res.steps,
    }


def refinement_json(f: CubicMap) -> dict:
    rep = refinement_report(f)
    return {
        "verdict": rep.verdict,
        "verdict_determined": rep.verdict_determined,
        "conditions": list(rep.conditions),
        "combinations": list(rep.combinations),
        "pairs": [
            {
                "first": root_json(p.first),
                "second": root_json(p.second),
                "vanishing": dict(zip(("R1", "R2", "R3", "R4"), p.vanishing)),
                "label": p.label,
            }
            for p in rep.pairs
        ],
    }


# --------------------------------------------------------------------------
# commands: each returns a report dict


def cmd_forms(doc: MapDocument) -> dict:
    f = doc.to_map()
    g = determinants(f)
    if g.as_tuple() != oracles.brute_determinants(f.F):
        raise InconsistencyError("determinants disagree with the direct column computation")
    return {
        "command": "forms",
        "input": doc.to_json(),
        "determinants": _sextet_json(g),
        "quartic": [scalar_to_json(x) for x in first_form(g).coeffs],
    }


def cmd_classify(doc: MapDocument) -> dict:
    f = doc.to_map()
    g = determinants(f)
    return {
        "command": "classify",
        "input": doc.to_json(),
        "determinants": _sextet_json(g),
        "quartic": [scalar_to_json(x) for x in first_form(g).coeffs],
        "classification": classification_json(classify_map(f)),
    }


def cmd_normalize(doc: MapDocument, residual=DEFAULT_RESIDUAL) -> dict:
    f = doc.to_map()
    cls, res = normalize_map(f, residual)
    report = {
        "command": "normalize",
        "input": doc.to_json(),
        "determinants": _sextet_json(determinants(f)),
        "classification": classification_json(cls),
        "requested_residual": format_rational(Fraction(residual)),
    }
    if res is None:
        report["normalization"] = None
        report["partial"] = "definite case"
        return report
    report["normalization"] = normalization_json(res)
    if cls.kind is not Kind.ZERO and len(cls.roots) >= 2:
        report["refinement"] = refinement_json(f)
    return report


def cmd_verify(trials: int, seed: int, bound: int) -> dict:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    cfg = oracles.GeneratorConfig(seed, bound, trials)
    right = oracles.right_composition_trials(cfg)
    left = oracles.left_composition_trials(cfg)
    conf = oracles.symbolic_expansion_check(cfg)
    return {
        "command": "verify",
        "config": {"trials": trials, "seed": seed, "bound": bound},
        "right_composition": right.to_json(),
        "left_composition": left.to_json(),
        "conformance": {
            "cases": conf.cases,
            "derived_mismatches": conf.derived_mismatches,
            "published_mismatches": {str(k): v for k, v in conf.published_mismatches.items()},
            "sites": [
                {
                    "form": s.form,
                    "monomial": s.monomial,
                    "published": dict(zip(SEXTET_NAMES, s.published)),
                    "derived": dict(zip(SEXTET_NAMES, s.derived)),
                }
                for s in conf.sites
            ],
        },
        "ok": right.failures == 0 and left.failures == 0 and conf.derived_ok,
    }


# --------------------------------------------------------------------------
# text rendering


def _fmt(x) -> str:
    if isinstance(x, dict):
        if "terms" in x:
            return " + ".join([x["p"]] + [f"{t['q']}*sqrt({t['d']})" for t in x["terms"]])
        return f"{x['p']} + {x['q']}*sqrt({x['d']})"
    return str(x)


def _root_text(r: dict) -> str:
    if r["exact"]:
        u, v = (_fmt(x) for x in r["point"])
        return f"[{u} : {v}] x{r['multiplicity']}"
    lo, hi = r["interval"]
    return f"[t : 1], t in [{lo}, {hi}] x{r['multiplicity']}"


def render_text(report: dict) -> str:
    lines = []
    if "determinants" in report:
        lines.append("determinants: " + ", ".join(_fmt(v) for v in report["determinants"].values()))
    if "quartic" in report:
        lines.append("quartic: " + ", ".join(_fmt(v) for v in report["quartic"]))
    cls = report.get("classification")
    if cls:
        head = cls["kind"]
        if cls["sign"]:
            head += f" ({cls['sign']}" + (f", {cls['subcase']})" if cls["subcase"] else ")")
        lines.append("kind: " + head)
        for r in cls["roots"]:
            lines.append("  root " + _root_text(r))
        for w in cls.get("witnesses", []):
            lines.append(f"  witness [{', '.join(_fmt(x) for x in w['point'])}] -> {_fmt(w['value'])}")
    if report.get("command") == "normalize":
        norm = report["normalization"]
        if norm is None:
            lines.append(f"partial: {report['partial']} (no normalization defined)")
        else:
            for name in ("S", "T"):
                lines.append(f"{name}: " + str([[_fmt(x) for x in row] for row in norm[name]["matrix"]]))
            lines.append("achieved: " + ", ".join(_fmt(v) for v in norm["achieved"].values()))
            lines.append(f"exact: {str(norm['exact']).lower()}, residual: {_fmt(norm['residual'])}")
            if norm["partial"]:
                lines.append("partial: only the first column is normalized")
        ref = report.get("refinement")
        if ref:
            suffix = "" if ref["verdict_determined"] else " (undetermined)"
            lines.append(f"refinement: {ref['verdict']}{suffix}")
            lines.append("combinations: " + (", ".join(ref["combinations"]) or "-"))
    if report.get("command") == "verify":
        for key in ("right_composition", "left_composition"):
            block = report[key]
            lines.append(f"{key}: {block['trials']} trials, {block['failures']} failures")
        conf = report["conformance"]
        lines.append(f"conformance: {conf['cases']} cases, {conf['derived_mismatches']} derived mismatches")
        for s in conf["sites"]:
            lines.append(f"  printed form {s['form']} differs at {s['monomial']}")
        lines.append("ok" if report["ok"] else "FAILED")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _positive_rational(text: str) -> Fraction:
    try:
        x = parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None
    if x <= 0:
        raise argparse.ArgumentTypeError("residual must be positive")
    return x


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cubicplane", description="Exact invariants and normal forms of planar cubic maps.")
    parser.add_argument("--json", action="store_true", help="print the full report as JSON")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("forms", "classify"):
        p = sub.add_parser(name)
        p.add_argument("file")
    p = sub.add_parser("normalize")
    p.add_argument("file")
    p.add_argument("--residual", type=_positive_rational, default=DEFAULT_RESIDUAL)
    p = sub.add_parser("verify")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--bound", type=int, default=5)
    return parser


def _load(path: str) -> MapDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    return MapDocument.parse(text)


def run(argv=None) -> tuple[int, str, str]:
    """Execute a command; returns (exit code, stdout text, stderr text)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            report = cmd_verify(args.trials, args.seed, args.bound)
        else:
            doc = _load(args.file)
            if args.command == "forms":
                report = cmd_forms(doc)
            elif args.command == "classify":
                report = cmd_classify(doc)
            else:
                report = cmd_normalize(doc, args.residual)
    except ResidualBudgetExceeded as exc:
        return EXIT_BUDGET, "", f"error: {exc}\n"
    except InconsistencyError as exc:
        return EXIT_INCONSISTENT, "", f"internal inconsistency: {exc}\n"
    except (NotCubicError, ValueError) as exc:
        return EXIT_INPUT, "", f"error: {exc}\n"
    out = json.dumps(report, indent=2) + "\n" if args.json else render_text(report)
    code = EXIT_OK
    if args.command == "verify" and not report["ok"]:
        code = EXIT_INCONSISTENT
    return code, out, ""


def main(argv=None) -> int:
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())

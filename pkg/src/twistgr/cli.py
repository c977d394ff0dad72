"""Command-line front end.

Type identifiers use the Kac names in ASCII: ``A2~2`` or ``A2^(2)`` for the
twisted type A_2^(2), ``A1~1`` (or ``A1~``) for untwisted affine types and
``Res2A1`` for the restriction of scalars of a split group along a quadratic
extension.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import inspect
import io
import json
import sys
from fractions import Fraction
from typing import Any, Callable, Sequence

import click
import jsonschema

from . import checks
from .apartment import ApartmentError, facet_of, fundamental_alcove, levi_datum, parahoric_subset
from .demazure_km import (
    KacMoodyError,
    affine_gcm,
    central_charge_matrix,
    coefficient_ratios,
    demazure_character,
    delta_level,
)
from .iwahori_weyl import IWError, affine_weyl_group
from .rank_one_models import RankOneError
from .root_data import RootDataError, affine_simple_roots, relative_datum, root_label, special_points

MAX_LEVEL_BOUND = 10
MAX_LENGTH_BOUND = 8
MAX_SAMPLES = 10000

_CELL = {"type": ["string", "integer", "boolean", "null"]}

OUTPUT_SCHEMA: dict = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "twistgr output",
    "type": "object",
    "required": ["command", "type", "params"],
    "properties": {
        "command": {"enum": ["roots", "apartment", "adm", "demazure-char", "central-charge", "verify"]},
        "type": {"type": ["string", "null"]},
        "params": {"type": "object"},
        "rows": {"type": "array", "items": {"type": "object", "additionalProperties": _CELL}},
        "report": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["check", "identity", "status", "passed", "details"],
                "properties": {
                    "check": {"type": "string"},
                    "identity": {"type": "string"},
                    "status": {"enum": ["PASS", "FAIL", "PASS (expected failure)"]},
                    "passed": {"type": "boolean"},
                    "details": {"type": "object"},
                },
            },
        },
    },
    "oneOf": [{"required": ["rows"]}, {"required": ["report"]}],
    "additionalProperties": False,
}

DOMAIN_ERRORS = (RootDataError, ApartmentError, IWError, KacMoodyError, RankOneError)


# --------------------------------------------------------------------------
# rendering

def _cell(x: Any) -> Any:
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, (list, tuple)):
        return " ".join(str(_cell(v)) for v in x)
    return str(x)


def _tex_escape(s: str) -> str:
    repl = {"\\": r"\textbackslash{}", "&": r"\&", "%": r"\%", "$": r"\$", "#": r"\#", "_": r"\_",
            "{": r"\{", "}": r"\}", "~": r"\textasciitilde{}", "^": r"\textasciicircum{}"}
    return "".join(repl.get(c, c) for c in s)


def render(doc: dict, fmt: str) -> str:
    jsonschema.validate(doc, OUTPUT_SCHEMA)
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"
    if "report" in doc:
        columns = ["check", "status", "identity"]
        rows = [{k: r[k] for k in columns} for r in doc["report"]]
    else:
        rows = doc["rows"]
        columns = list(rows[0]) if rows else []
    if fmt == "tsv":
        out = io.StringIO()
        out.write("\t".join(columns) + "\n")
        for r in rows:
            out.write("\t".join("" if r[c] is None else str(r[c]) for c in columns) + "\n")
        return out.getvalue()
    lines = [r"\begin{tabular}{" + "l" * len(columns) + "}", r"\hline"]
    lines.append(" & ".join(_tex_escape(c) for c in columns) + r" \\")
    lines.append(r"\hline")
    for r in rows:
        lines.append(" & ".join(_tex_escape("" if r[c] is None else str(r[c])) for c in columns) + r" \\")
    lines += [r"\hline", r"\end{tabular}"]
    return "\n".join(lines) + "\n"


def emit(doc: dict, fmt: str, out: str | None) -> None:
    text = render(doc, fmt)
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


# --------------------------------------------------------------------------
# argument helpers

def _fail_usage(msg: str) -> None:
    raise click.UsageError(msg)


def _resolve_type(positional: str | None, option: str | None, required: bool = True) -> str | None:
    if positional and option and positional != option:
        _fail_usage(f"conflicting types {positional!r} and {option!r}")
    name = positional or option
    if name is None:
        if required:
            _fail_usage("a type identifier is required (e.g. A2~2)")
        return None
    try:
        return relative_datum(name).type_id
    except RootDataError as exc:
        _fail_usage(f"unknown type {name!r}: {exc}")
    return None


def _ints(text: str | None, what: str) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        _fail_usage(f"{what} must be a comma-separated list of integers")
    return None


def _rationals(text: str, what: str) -> list[Fraction]:
    try:
        return [Fraction(x) for x in text.replace(" ", "").split(",") if x != ""]
    except (ValueError, ZeroDivisionError):
        _fail_usage(f"{what} must be a comma-separated list of rationals such as 1,1/2")
    return []


def _bounded(value: int | None, name: str, hi: int, lo: int = 0) -> None:
    if value is not None and not lo <= value <= hi:
        _fail_usage(f"{name} must lie in {lo}..{hi}")


def _guard(fn: Callable[[], dict]) -> dict:
    try:
        return fn()
    except DOMAIN_ERRORS as exc:
        raise click.UsageError(str(exc)) from exc


def output_options(f: Callable) -> Callable:
    f = click.option("--out", "out", type=click.Path(dir_okay=False), default=None, help="Write to FILE instead of stdout.")(f)
    f = click.option("--format", "fmt", type=click.Choice(["json", "tsv", "tex"]), default="tsv", show_default=True)(f)
    return f


def type_options(f: Callable) -> Callable:
    f = click.option("--type", "type_opt", default=None, help="Type identifier, e.g. A2~2 or A3^(2).")(f)
    f = click.argument("type_arg", required=False, metavar="[TYPE]")(f)
    return f


@click.group(help=__doc__)
def main() -> None:
    pass


# --------------------------------------------------------------------------
# roots

def roots_table(type_id: str, level_bound: int) -> list[dict]:
    d = relative_datum(type_id)
    rows = []
    for a in sorted(d.roots, key=lambda r: (not d.is_positive(r), sum(abs(x) for x in r), r)):
        ls = d.level_set(a)
        rows.append({
            "kind": "root",
            "label": root_label(a),
            "coordinates": _cell(a),
            "class": d.classify(a),
            "gamma": str(ls),
            "levels": _cell(ls.elements(-level_bound, level_bound)),
        })
    for sp in special_points(d):
        rows.append({
            "kind": "special point",
            "label": f"v{sp.vertex}",
            "coordinates": _cell(sp.point),
            "class": sp.kind,
            "gamma": None,
            "levels": " ".join(root_label(a) for a in sp.residual),
        })
    return rows


@main.command("roots")
@type_options
@click.option("--level-bound", "level_bound", type=int, default=1, show_default=True, help="Truncation N of the level sets.")
@output_options
def cmd_roots(type_arg, type_opt, level_bound, fmt, out):
    """Relative roots with class and Gamma'_a, and the special vertices."""
    t = _resolve_type(type_arg, type_opt)
    _bounded(level_bound, "--level-bound", MAX_LEVEL_BOUND)
    rows = _guard(lambda: {"rows": roots_table(t, level_bound)})["rows"]
    emit({"command": "roots", "type": t, "params": {"level_bound": level_bound}, "rows": rows}, fmt, out)


# --------------------------------------------------------------------------
# apartment

def apartment_table(type_id: str, facet_idx: Sequence[int] | None, level_bound: int) -> list[dict]:
    d = relative_datum(type_id)
    facet = fundamental_alcove(d) if facet_idx is None else facet_of(d, facet_idx)
    rows = []
    for i, v in enumerate(facet.vertices):
        rows.append({"section": "vertex", "item": str(i), "value": _cell(v)})
    levi = levi_datum(facet, d)
    for a in levi.roots:
        rows.append({"section": "residual root", "item": root_label(a), "value": _cell(levi.shifts[a])})
    rows.append({"section": "residual Weyl group", "item": "order", "value": levi.weyl_order})
    for b, n in affine_simple_roots(d):
        rows.append({"section": "wall", "item": root_label(b), "value": _cell(n)})
    for r in sorted(parahoric_subset(facet, d, level_bound), key=lambda r: (r.level, r.gradient)):
        if r.is_real:
            rows.append({"section": "parahoric", "item": root_label(r.gradient), "value": _cell(r.level)})
    return rows


@main.command("apartment")
@type_options
@click.option("--facet", default=None, help="Vertex indices of a face of the fundamental alcove, e.g. 0,1 (default: the alcove).")
@click.option("--level-bound", "level_bound", type=int, default=1, show_default=True)
@output_options
def cmd_apartment(type_arg, type_opt, facet, level_bound, fmt, out):
    """Facet vertices, residual roots with level shifts, walls and parahoric roots."""
    t = _resolve_type(type_arg, type_opt)
    _bounded(level_bound, "--level-bound", MAX_LEVEL_BOUND)
    idx = _ints(facet, "--facet")
    rows = _guard(lambda: {"rows": apartment_table(t, idx, level_bound)})["rows"]
    emit({"command": "apartment", "type": t, "params": {"facet": idx, "level_bound": level_bound}, "rows": rows}, fmt, out)


# --------------------------------------------------------------------------
# admissible sets

def adm_table(type_id: str, mu: Sequence[Fraction], facet_idx: Sequence[int] | None) -> list[dict]:
    W = affine_weyl_group(type_id)
    if len(mu) != W.rank:
        raise IWError(f"mu needs {W.rank} coordinates")
    if tuple(mu) != W.dominant(mu):
        raise IWError(f"mu is not dominant; its dominant conjugate is {','.join(str(c) for c in W.dominant(mu))}")
    W.translation(mu)
    for lam in W.finite_orbit(mu):
        if W.length(W.translation(lam)) > 4 * MAX_LENGTH_BOUND:
            raise IWError("mu is too large for a desk-scale listing")
    facet = None if facet_idx is None else tuple(facet_idx)
    elems = W.admissible_set(mu, facet)
    covers: dict[int, list[int]] = {j: [] for j in range(len(elems))}
    for i, j in W.hasse_edges(elems):
        covers[j].append(i)
    translations = {W.min_rep(W.translation(lam), facet) for lam in W.finite_orbit(mu)}
    return [
        {"index": j, "word": W.word_str(w), "length": W.length(w), "extremal": w in translations, "covers": _cell(covers[j])}
        for j, w in enumerate(elems)
    ]


@main.command("adm")
@type_options
@click.option("--mu", required=True, help="Dominant coweight in the basis of simple coroots, e.g. 1 or 1,0 or 1/4.")
@click.option("--facet", default=None, help="Vertex indices of the parahoric facet (default: Iwahori level).")
@output_options
def cmd_adm(type_arg, type_opt, mu, facet, fmt, out):
    """Admissible set Adm(mu) with lengths and Bruhat covering relations."""
    t = _resolve_type(type_arg, type_opt)
    coweight = _rationals(mu, "--mu")
    idx = _ints(facet, "--facet")
    rows = _guard(lambda: {"rows": adm_table(t, coweight, idx)})["rows"]
    params = {"mu": [_cell(c) for c in coweight], "facet": idx}
    emit({"command": "adm", "type": t, "params": params, "rows": rows}, fmt, out)


# --------------------------------------------------------------------------
# Demazure characters

def demazure_table(type_id: str, word: Sequence[int], weight: Sequence[int]) -> list[dict]:
    _, real = affine_gcm(type_id)
    chi = demazure_character(type_id, word, weight)
    return [
        {"weight": _cell(lam), "multiplicity": c, "delta_level": _cell(delta_level(real, lam))}
        for lam, c in sorted(chi.terms.items())
        if c
    ]


@main.command("demazure-char")
@type_options
@click.option("--word", default="", help="Word in the simple reflections, e.g. 0,1,0.")
@click.option("--weight", default=None, help="Dominant weight: pairings with the simple coroots then the d-coordinate.")
@click.option("--fundamental", type=int, default=None, help="Use the fundamental weight of this node instead of --weight.")
@output_options
def cmd_demazure(type_arg, type_opt, word, weight, fundamental, fmt, out):
    """Demazure character D_{i_1} ... D_{i_n}(e^lambda)."""
    t = _resolve_type(type_arg, type_opt)
    w = _ints(word, "--word") or []
    if (weight is None) == (fundamental is None):
        _fail_usage("give exactly one of --weight and --fundamental")

    def run() -> dict:
        _, real = affine_gcm(t)
        if fundamental is not None:
            if not 0 <= fundamental < real.gcm.size:
                raise KacMoodyError(f"no node {fundamental}")
            lam = real.fundamental_weight(fundamental)
        else:
            lam = tuple(_ints(weight, "--weight"))
        return {"rows": demazure_table(t, w, lam), "weight": lam}

    res = _guard(run)
    params = {"word": w, "weight": list(res["weight"])}
    emit({"command": "demazure-char", "type": t, "params": params, "rows": res["rows"]}, fmt, out)


# --------------------------------------------------------------------------
# central charge

def central_charge_table(type_id: str) -> list[dict]:
    d = relative_datum(type_id)
    cc = central_charge_matrix(d)
    ratios = coefficient_ratios(d) if d.e > 1 else None
    rows = []
    for s, ((b, n), row) in enumerate(zip(affine_simple_roots(d), cc.matrix)):
        rows.append({
            "node": s,
            "wall": root_label(b) if n == 0 else f"{root_label(b)}{'+' if n > 0 else '-'}{abs(n)}",
            "coroot": _cell(row),
            "charge": cc.charges[s],
            "distinguished": s == cc.distinguished,
            "ratio": None if ratios is None else _cell(ratios.ratios[s]),
            "degree": None if ratios is None else ratios.degrees[s],
        })
    return rows


@main.command("central-charge")
@type_options
@output_options
def cmd_central_charge(type_arg, type_opt, fmt, out):
    """Coroot matrix, central charges and (twisted types) coefficient ratios."""
    t = _resolve_type(type_arg, type_opt)
    rows = _guard(lambda: {"rows": central_charge_table(t)})["rows"]
    cc = central_charge_matrix(t)
    params = {"invariant_factors": list(cc.invariant_factors), "projection_det": cc.projection_det}
    emit({"command": "central-charge", "type": t, "params": params, "rows": rows}, fmt, out)


# --------------------------------------------------------------------------
# verify

VERIFY_NAMES = list(checks.CHECKS) + ["all"]


def _call_check(name: str, options: dict) -> checks.CheckResult:
    fn = checks.CHECKS[name]
    accepted = inspect.signature(fn).parameters
    kwargs = {k: v for k, v in options.items() if v is not None and k in accepted}
    return fn(**kwargs)


@main.command("verify")
@click.argument("check", type=click.Choice(VERIFY_NAMES))
@click.option("--type", "type_opt", default=None, help="Restrict type-dependent checks to one type.")
@click.option("--field", "field_name", type=click.Choice(["q", "f2", "f3", "Q", "F2", "F3"]), default=None, help="Coefficient field for span.")
@click.option("--flavor", type=click.Choice(["tits", "cs", "Tits", "CS"]), default=None, help="Coordinates for tits-integrality.")
@click.option("--samples", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--level-bound", "level_bound", type=int, default=None)
@click.option("--length-bound", "length_bound", type=int, default=None)
@output_options
def cmd_verify(check, type_opt, field_name, flavor, samples, seed, level_bound, length_bound, fmt, out):
    """Run a named verification suite; exit 1 if any identity fails."""
    t = _resolve_type(None, type_opt, required=False)
    _bounded(samples, "--samples", MAX_SAMPLES, 1)
    _bounded(level_bound, "--level-bound", MAX_LEVEL_BOUND, 1)
    _bounded(length_bound, "--length-bound", MAX_LENGTH_BOUND)
    options = {
        "types": None if t is None else [t],
        "field_name": field_name.upper() if field_name else None,
        "flavor": flavor,
        "samples": samples,
        "seed": seed,
        "level_bound": level_bound,
        "length_bound": length_bound,
    }
    names = list(checks.CHECKS) if check == "all" else [check]
    results = [_guard(lambda n=n: {"r": _call_check(n, options)})["r"] for n in names]
    params = {k: v for k, v in options.items() if v is not None and k != "types"}
    doc = {"command": "verify", "type": t, "params": params, "report": [r.as_dict() for r in results]}
    emit(doc, fmt, out)
    if not all(r.passed for r in results):
        for r in results:
            if not r.passed and r.details.get("note"):
                click.echo(f"{r.name}: {r.details['note']}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()

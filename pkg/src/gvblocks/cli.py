"""
Command line front end.

    gvblocks check CATEGORY            coherence suites, exit 1 on any failure
    gvblocks blocks CATEGORY --g 3     dimension and basis of a block space
    gvblocks twist-spectrum CATEGORY   handle-twist eigenvalues
    gvblocks excise CATEGORY           excision and sewing report
    gvblocks act CATEGORY --word W     apply a framed braid to a genus 0 block
    gvblocks braid multiply|equals|cable ...
    gvblocks graph FILE                ribbon graph summary and contractions

CATEGORY is a path to a category file or builtin:NAME for a shipped example
(trivial, z2_semion, z4, z4_explicit).  Output format is --format, else the
GVBLOCKS_FORMAT environment variable, else json.

Category file grammar, one directive per line, '#' starts a comment:

    name TEXT                 free text
    group N1 N2 ...           cyclic factors, must come first
    q E1 E2 ...               q_i(g) = ζ^{E_i g²} with ζ of order 2N_i (N_i even) or N_i
    bichar I J = B            cross term ζ_{gcd}^{B a_I b_J}, needs q, I < J
    h0 ELEM                   half degree, g₀ = -2h₀
    tau ELEM ELEM = K/N       τ entry ζ_N^K, overrides the q construction
    lambda ELEM ELEM ELEM = K/N
    validate on|off           default on

ELEM is an integer for a cyclic group or comma separated components (1,0).
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import click

from . import blocks as B
from .exact_scalars import RootOfUnity
from .graphs import GraphError, contract_edge, format_graph, parse_graph, pi0
from .pointed_gv import (
    CocycleValidationError, FiniteAbelianGroup, PointedGVCategory, check_balanced_braided_axioms,
    check_cocycle, check_hexagon_H, check_pivotal_axioms, from_tables, make_product_category,
)
from .reports import AxiomReport, scalar_json
from .ribbon_braid import (
    ArityError, FramedBraid, cable, check_cyclic_structure, check_rbr_relations, fb_equals,
)

FORMAT_ENV = "GVBLOCKS_FORMAT"
FORMATS = ("json", "csv", "text")
BUILTINS = ("trivial", "z2_semion", "z4", "z4_explicit")


class CategoryParseError(ValueError):
    def __init__(self, line: int, col: int, msg: str):
        self.line, self.col = line, col
        super().__init__(f"line {line}, column {col}: {msg}")


# -- category files ------------------------------------------------------------

@dataclass
class _Decl:
    name: str = ""
    factors: tuple | None = None
    q: tuple | None = None
    bichar: dict = field(default_factory=dict)
    h0: tuple | None = None
    tau: dict = field(default_factory=dict)
    lam: dict = field(default_factory=dict)
    validate: bool = True


_TOKEN = re.compile(r"\S+")


def _elem(tok: str, factors, line: int, col: int) -> tuple:
    try:
        parts = [int(x) for x in tok.strip("()").split(",")]
    except ValueError:
        raise CategoryParseError(line, col, f"expected a group element, got {tok!r}") from None
    if len(parts) != len(factors):
        raise CategoryParseError(line, col, f"element {tok!r} needs {len(factors)} components")
    return tuple(a % n for a, n in zip(parts, factors))


def _exponent(tok: str, line: int, col: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise CategoryParseError(line, col, f"expected an exponent K/N, got {tok!r}") from None


def _ints(toks, line) -> tuple[int, ...]:
    out = []
    for col, tok in toks:
        try:
            out.append(int(tok))
        except ValueError:
            raise CategoryParseError(line, col, f"expected an integer, got {tok!r}") from None
    return tuple(out)


def parse_category(text: str, validate: bool | None = None) -> PointedGVCategory:
    """Parse the documented grammar; validation follows the file unless overridden."""
    decl = _Decl()
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        toks = [(m.start() + 1, m.group()) for m in _TOKEN.finditer(body)]
        if not toks:
            continue
        (col0, head), rest = toks[0], toks[1:]
        if head != "name" and head != "group" and decl.factors is None:
            raise CategoryParseError(lineno, col0, "the group directive must come first")
        if head == "name":
            decl.name = body[toks[1][0] - 1:].strip() if rest else ""
        elif head == "group":
            if decl.factors is not None:
                raise CategoryParseError(lineno, col0, "group given twice")
            if not rest:
                raise CategoryParseError(lineno, col0 + len(head), "group needs at least one cyclic order")
            decl.factors = _ints(rest, lineno)
            for (c, _), n in zip(rest, decl.factors):
                if n < 1:
                    raise CategoryParseError(lineno, c, "cyclic orders must be positive")
        elif head == "q":
            if len(rest) != len(decl.factors):
                raise CategoryParseError(lineno, col0, f"q needs {len(decl.factors)} exponents")
            decl.q = _ints(rest, lineno)
        elif head == "bichar":
            if len(rest) != 4 or rest[2][1] != "=":
                raise CategoryParseError(lineno, col0, "expected 'bichar I J = B'")
            i, j, b = _ints([rest[0], rest[1], rest[3]], lineno)
            if not 0 <= i < j < len(decl.factors):
                raise CategoryParseError(lineno, rest[0][0], "bichar indices need 0 <= I < J < number of factors")
            decl.bichar[(i, j)] = b
        elif head == "h0":
            if len(rest) != 1:
                raise CategoryParseError(lineno, col0, "expected 'h0 ELEM'")
            decl.h0 = _elem(rest[0][1], decl.factors, lineno, rest[0][0])
        elif head in ("tau", "lambda"):
            k = 2 if head == "tau" else 3
            if len(rest) != k + 2 or rest[k][1] != "=":
                args = " ".join(["ELEM"] * k)
                raise CategoryParseError(lineno, col0, f"expected '{head} {args} = K/N'")
            key = tuple(_elem(t, decl.factors, lineno, c) for c, t in rest[:k])
            (decl.tau if head == "tau" else decl.lam)[key] = _exponent(rest[k + 1][1], lineno, rest[k + 1][0])
        elif head == "validate":
            if len(rest) != 1 or rest[0][1] not in ("on", "off"):
                raise CategoryParseError(lineno, col0, "expected 'validate on' or 'validate off'")
            decl.validate = rest[0][1] == "on"
        else:
            raise CategoryParseError(lineno, col0, f"unknown directive {head!r}")
    if decl.factors is None:
        raise CategoryParseError(1, 1, "missing group directive")
    if decl.h0 is None:
        raise CategoryParseError(1, 1, "missing h0 directive")
    if decl.bichar and decl.q is None:
        raise CategoryParseError(1, 1, "bichar needs q")
    check = decl.validate if validate is None else validate
    G = FiniteAbelianGroup(decl.factors)
    els = G.elements()
    if decl.q is not None:
        base = make_product_category(decl.factors, decl.q, decl.h0, bichar=decl.bichar, validate=False)
        lam, tau = dict(base.lam), dict(base.tau)
    else:
        lam = {k: RootOfUnity(0) for k in itertools.product(els, repeat=3)}
        tau = {k: RootOfUnity(0) for k in itertools.product(els, repeat=2)}
    for key, t in decl.lam.items():
        lam[key] = RootOfUnity(t)
    for key, t in decl.tau.items():
        tau[key] = RootOfUnity(t)
    name = decl.name or "x".join(f"Z/{n}" for n in decl.factors)
    return from_tables(G, lam, tau, decl.h0, name=name, validate=check)


def builtin_text(name: str) -> str:
    if name not in BUILTINS:
        raise click.BadParameter(f"unknown builtin category {name!r}; choose from {', '.join(BUILTINS)}")
    return resources.files("gvblocks").joinpath("data", f"{name}.cat").read_text()


def load_category(ref: str, validate: bool | None = None) -> PointedGVCategory:
    text = builtin_text(ref[len("builtin:"):]) if ref.startswith("builtin:") else Path(ref).read_text()
    return parse_category(text, validate=validate)


# -- output --------------------------------------------------------------------

@dataclass
class Result:
    payload: dict
    rows: list[dict] = field(default_factory=list)
    text: str = ""
    ok: bool = True


def _emit(res: Result, fmt: str, output) -> None:
    if fmt == "json":
        out = json.dumps(res.payload, indent=2, ensure_ascii=False) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        rows = res.rows or [res.payload]
        cols = list(dict.fromkeys(k for r in rows for k in r))
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in r.items()})
        out = buf.getvalue()
    else:
        out = res.text if res.text.endswith("\n") else res.text + "\n"
    if output:
        Path(output).write_text(out)
    else:
        click.echo(out, nl=False)


def _report_rows(reports: list[AxiomReport]) -> list[dict]:
    rows = []
    for r in reports:
        d = r.to_json()
        if not d["failures"]:
            rows.append({"suite": r.suite, "passed": True, "instances": r.instances,
                         "axiom": "", "witness": "", "lhs": "", "rhs": ""})
        for f in d["failures"]:
            rows.append({"suite": r.suite, "passed": False, "instances": r.instances,
                         "axiom": f["axiom"], "witness": f["witness"], "lhs": f["lhs"], "rhs": f["rhs"]})
    return rows


def _reports_result(reports: list[AxiomReport], extra: dict | None = None) -> Result:
    payload = dict(extra or {})
    payload["passed"] = all(r.passed for r in reports)
    payload["reports"] = [r.to_json() for r in reports]
    lines = [r.summary() for r in reports]
    for r in reports:
        for f in r.failures[:10]:
            lines.append(f"  {r.suite} {f.axiom} at {f.witness}: {f.lhs!r} != {f.rhs!r}")
    return Result(payload, _report_rows(reports), "\n".join(lines), payload["passed"])


def _labels(text: str | None) -> list:
    if not text:
        return []
    return [tuple(int(x) for x in tok.strip("()").split(",")) if "," in tok else int(tok)
            for tok in text.replace(";", " ").split()]


# -- commands ------------------------------------------------------------------

def _fmt_option(f):
    f = click.option("--output", "-o", type=click.Path(dir_okay=False), default=None,
                     help="Write to a file instead of stdout.")(f)
    return click.option("--format", "fmt", type=click.Choice(FORMATS), default=None,
                        help=f"Output format (default: ${FORMAT_ENV} or json).")(f)


def _finish(res: Result, fmt, output):
    fmt = fmt or os.environ.get(FORMAT_ENV, "json")
    if fmt not in FORMATS:
        raise click.UsageError(f"{FORMAT_ENV}={fmt!r} is not one of {', '.join(FORMATS)}")
    _emit(res, fmt, output)
    sys.exit(0 if res.ok else 1)


@click.group()
def main():
    """Pointed Grothendieck-Verdier categories, ribbon braids and block spaces."""


@main.command()
@click.argument("category")
@click.option("--suite", type=click.Choice(["all", "cocycle", "pivotal", "hexagon", "balanced"]),
              default="all", show_default=True)
@click.option("--rbr", "rbr_n", type=int, default=0,
              help="Also run the ribbon-braid relation and cyclic suites up to this many strands.")
@_fmt_option
def check(category, suite, rbr_n, fmt, output):
    """Run the coherence suites on a category file."""
    C = load_category(category, validate=False)
    suites = {
        "cocycle": check_cocycle, "pivotal": check_pivotal_axioms,
        "hexagon": check_hexagon_H, "balanced": check_balanced_braided_axioms,
    }
    chosen = list(suites) if suite == "all" else [suite]
    reports = [suites[s](C) for s in chosen]
    if rbr_n:
        reports.append(check_rbr_relations(rbr_n))
        reports.append(check_cyclic_structure(min(rbr_n, 3)))
    _finish(_reports_result(reports, {"category": C.describe()}), fmt, output)


@main.command()
@click.argument("category")
@click.option("--g", "genus", type=int, default=0, show_default=True)
@click.option("--labels", default="", help="Boundary labels, space separated; 1,0 for product groups.")
@click.option("--basis/--no-basis", default=False, help="List the basis vectors.")
@_fmt_option
def blocks(category, genus, labels, basis, fmt, output):
    """Dimension (and basis) of V_{g,n}(labels)."""
    C = load_category(category)
    V = B.block_space(C, genus, _labels(labels))
    payload = {"category": C.name, "space": V.describe(), "coend_dim": B.coend(C).dim}
    if basis:
        payload["basis"] = [[list(h) for h in hv] for hv in V.basis]
    rows = [{"index": k, "h": [list(h) for h in hv]} for k, hv in enumerate(V.basis)] if basis else []
    text = f"{V!r}  (condition {'holds' if V.condition else 'fails'})"
    _finish(Result(payload, rows or [payload["space"]], text), fmt, output)


@main.command("twist-spectrum")
@click.argument("category")
@click.option("--g", "genus", type=int, default=1, show_default=True)
@click.option("--labels", default="")
@click.option("--handle", type=int, default=1, show_default=True)
@_fmt_option
def twist_spectrum(category, genus, labels, handle, fmt, output):
    """Eigenvalues of the Dehn twist around one handle, in basis order."""
    C = load_category(category)
    V = B.block_space(C, genus, _labels(labels))
    try:
        T = B.handle_twist(C, V, handle)
    except IndexError as e:
        raise click.BadParameter(str(e), param_hint="--handle") from None
    vals = T.diagonal_values()
    rows = []
    for k, (hv, v) in enumerate(zip(V.basis, vals)):
        j = scalar_json(v)
        rows.append({"index": k, "h": [list(h) for h in hv], "k": j["root"]["k"], "N": j["root"]["N"],
                     "re": j["float"][0], "im": j["float"][1]})
    payload = {"space": V.describe(), "handle": handle, "acting_group": B.acting_group(genus, V.n),
               "eigenvalues": [scalar_json(v) for v in vals]}
    text = "\n".join(f"{r['h']}: zeta_{r['N']}^{r['k']}" for r in rows) or "(empty space)"
    _finish(Result(payload, rows, text), fmt, output)


@main.command()
@click.argument("category")
@click.option("--g", "genus", type=int, default=0, show_default=True)
@click.option("--labels", default="")
@click.option("--all-labels", is_flag=True, help="Run every label tuple of length --n.")
@click.option("--n", "n_labels", type=int, default=None)
@_fmt_option
def excise(category, genus, labels, all_labels, n_labels, fmt, output):
    """Excision and sewing identities."""
    C = load_category(category)
    if all_labels:
        n = n_labels or 0
        tuples = list(itertools.product(C.group.elements(), repeat=n))
    else:
        tuples = [_labels(labels)]
    reports = [B.excision_check(C, genus, len(t), list(t)) for t in tuples]
    _finish(_reports_result(reports), fmt, output)


@main.command()
@click.argument("category")
@click.option("--labels", required=True)
@click.option("--word", required=True, help="Framed braid word, e.g. 's1 s2^-1 t3'.")
@click.option("--g", "genus", type=int, default=0, show_default=True)
@_fmt_option
def act(category, labels, word, genus, fmt, output):
    """Apply a framed braid word to V_{g,n}(labels)."""
    C = load_category(category)
    V = B.block_space(C, genus, _labels(labels))
    try:
        op = B.rbr_action(C, V, word)
    except (ArityError, ValueError) as e:
        raise click.BadParameter(str(e), param_hint="--word") from None
    payload = {"space": V.describe(), "word": word, "operator": op.to_json()}
    rows = [{"row": r, "col": c, **{k: v for k, v in scalar_json(op.entry(r, c)).items() if k != "coeffs"}}
            for r, c in sorted(op.entries)]
    text = f"{op.source!r} -> {op.target!r}\n" + "\n".join(
        f"[{r},{c}] {op.entry(r, c)!r}" for r, c in sorted(op.entries))
    _finish(Result(payload, rows, text), fmt, output)


@main.group()
def braid():
    """Framed braid arithmetic."""


@braid.command()
@click.option("--n", "strands", type=int, required=True)
@click.argument("words", nargs=-1, required=True)
@_fmt_option
def multiply(strands, words, fmt, output):
    """Product of the words, left to right."""
    out = FramedBraid.identity(strands)
    for w in words:
        out = out * FramedBraid.parse(strands, w)
    payload = {"n": strands, "word": out.word(), "twists": list(out.twists),
               "permutation": list(out.transport(range(strands)))}
    _finish(Result(payload, [payload], out.word() or "id"), fmt, output)


@braid.command()
@click.option("--n", "strands", type=int, required=True)
@click.argument("first")
@click.argument("second")
@_fmt_option
def equals(strands, first, second, fmt, output):
    """Decide equality of two framed braid words."""
    a, b = FramedBraid.parse(strands, first), FramedBraid.parse(strands, second)
    eq = fb_equals(a, b)
    payload = {"n": strands, "first": first, "second": second,
               "normal_forms": [a.word(), b.word()], "equal": eq}
    _finish(Result(payload, [payload], "equal" if eq else "not equal"), fmt, output)


@braid.command("cable")
@click.option("--n", "strands", type=int, required=True)
@click.option("--widths", required=True, help="Space separated cable widths, one per strand.")
@click.argument("word")
@_fmt_option
def cable_cmd(strands, widths, word, fmt, output):
    """Replace each strand by parallel ribbons."""
    w = [int(x) for x in widths.split()]
    out = cable(FramedBraid.parse(strands, word), w)
    payload = {"n": out.n, "widths": w, "word": out.word()}
    _finish(Result(payload, [payload], out.word() or "id"), fmt, output)


@main.command()
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--contract", "contract", type=int, multiple=True, help="Contract the edge at this half-edge.")
@click.option("--category", default=None, help="Evaluate the block space of the graph.")
@click.option("--labels", default="")
@_fmt_option
def graph(graph_file, contract, category, labels, fmt, output):
    """Summary of a ribbon graph file, optionally contracted and evaluated."""
    try:
        rg = parse_graph(Path(graph_file).read_text())
        for h in contract:
            rg = contract_edge(rg, h)
    except GraphError as e:
        raise click.ClickException(str(e)) from None
    g = rg.graph
    payload = {"vertices": g.n_vertices, "edges": len(g.edges()), "legs": len(g.legs()),
               "components": g.n_components(), "loops": rg.loop_count(),
               "pi0_legs": len(pi0(g).legs()), "graph": format_graph(rg)}
    if category:
        C = load_category(category)
        V = B.ribbon_graph_value(C, rg, _labels(labels))
        payload["value"] = V.describe()
    text = (f"{payload['vertices']} vertices, {payload['edges']} edges, {payload['legs']} legs, "
            f"{payload['loops']} loops")
    if "value" in payload:
        text += f"\nvalue: {payload['value']}"
    _finish(Result(payload, [{k: v for k, v in payload.items() if k != "graph"}], text), fmt, output)


def run(argv: list[str]) -> int:
    """Invoke the command line in-process; returns the exit status."""
    try:
        main.main(args=argv, prog_name="gvblocks", standalone_mode=False)
    except SystemExit as e:
        return int(e.code or 0)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except (CategoryParseError, CocycleValidationError, GraphError, ArityError, OSError) as e:
        click.echo(f"error: {e}", err=True)
        return 2
    return 0


_PARAMS = {
    "check": {"suite", "rbr"},
    "blocks": {"g", "labels", "basis"},
    "twist-spectrum": {"g", "labels", "handle"},
    "excise": {"g", "labels", "all-labels", "n"},
    "act": {"g", "labels", "word"},
    "braid": {"op", "n", "words", "widths"},
    "graph": {"graph", "contract", "labels"},
}


@dataclass
class RunConfig:
    command: str
    category_file: str | None = None
    params: dict = field(default_factory=dict)
    output: str | None = None
    format: str = "json"

    def __post_init__(self):
        if self.command not in _PARAMS:
            raise ValueError(f"unknown command {self.command!r}")
        unknown = set(self.params) - _PARAMS[self.command]
        if unknown:
            raise ValueError(f"unknown parameters for {self.command}: {sorted(unknown)}")
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}")

    def argv(self) -> list[str]:
        p = dict(self.params)
        if self.command == "braid":
            args = ["braid", p.pop("op"), "--n", str(p.pop("n"))]
            if "widths" in p:
                args += ["--widths", " ".join(map(str, p.pop("widths")))]
            args += list(p.pop("words", []))
        elif self.command == "graph":
            args = ["graph", p.pop("graph")]
            for h in p.pop("contract", []):
                args += ["--contract", str(h)]
            if self.category_file:
                args += ["--category", self.category_file]
        else:
            args = [self.command, self.category_file]
        for key, value in p.items():
            if value is True:
                args.append(f"--{key}")
            elif value is not False and value is not None:
                args += [f"--{key}", " ".join(map(str, value)) if isinstance(value, (list, tuple)) else str(value)]
        args += ["--format", self.format]
        if self.output:
            args += ["--output", self.output]
        return args


def run_config(config: RunConfig) -> int:
    return run(config.argv())


def entry() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    entry()

"""Command-line driver exposing every computation and verification.

Each subcommand prints a deterministic report (text by default, a single JSON
document with --json) and exits 0 on pass/info, 1 on a failed verification,
2 on usage errors.  Timing is deliberately kept out of the output so that
identical runs produce identical bytes.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field

import click

from .algebras import SplitAlgebra, QuatAlgebra, enumerate_right_ideals, independent, \
    independent_left_ideal, symbolic_quaternion
from .exact import IntMatrix, det_exact
from .geometry import all_charts, chart_equation, classify_all_charts, plucker_embed, \
    quadric_form_value, quadric_identity_samples, verify_quadric_identity, witt_split
from .hyperplane import SectionClass, basis_certificate, gram_matrix, hyperplane_mul, \
    middle_classes, pairing_matrix, rational_cycle, reference_bases, standard_collection, \
    tate_iso_check, verify_c3_twist_identity, verify_cycle_recursion
from .schubert import GrChowClass, box_partitions, format_partition, parse_partition, \
    pieri, point_count, schur_product
from .spectral import SPLIT_EXTENSION_NOTE, Atom, NZ, PowerSubN, Z, direct_sum, \
    render_group, weight_table
from .tate import consistency_report, d2_matrix, d2_matrix_from_chern, \
    gl_tate_pattern, slice_consistency, max_weight


@dataclass
class Report:
    command: str
    inputs: dict
    status: str                 # pass | fail | info
    payload: dict
    duration: float | None = field(default=None, compare=False)

    def to_json(self) -> str:
        # Duration is excluded: reports must be byte-identical across runs.
        doc = {"command": self.command, "inputs": self.inputs,
               "status": self.status, "payload": self.payload}
        return json.dumps(doc, sort_keys=True, default=str)

    def to_text(self) -> str:
        lines = [f"[{self.status}] {self.command}"]
        for key, value in self.inputs.items():
            lines.append(f"  input {key}: {value}")
        for key, value in sorted(self.payload.items()):
            lines.append(f"  {key}: {json.dumps(value, sort_keys=True, default=str)}")
        return "\n".join(lines)


def _finish(report: Report, as_json: bool):
    click.echo(report.to_json() if as_json else report.to_text())
    sys.exit(0 if report.status in ("pass", "info") else 1)


def _json_option(fn):
    return click.option("--json", "as_json", is_flag=True, help="emit a JSON document")(fn)


# -- the verification battery ---------------------------------------------------


def _check_pieri_regression():
    gr = pieri(GrChowClass.schubert(3, 6, (2, 1, 1)))
    gr_ok = gr == GrChowClass(3, 6, 5, {(2, 2, 1): 1, (3, 1, 1): 1})
    xr = hyperplane_mul(SectionClass.label(4, (2, 2)))
    xr_ok = xr == SectionClass(5, {(3, 3): 1, (3, 2, 1): 2, (2, 2, 2): 1})
    return gr_ok and xr_ok, {"grassmannian": str(gr), "section": str(xr)}


def _check_pieri_schur_agreement():
    hyper = GrChowClass.schubert(3, 6, (1,))
    bad = []
    for parts in box_partitions(3, 3):
        if sum(parts) == 9:
            continue
        cls = GrChowClass.schubert(3, 6, parts)
        if pieri(cls) != schur_product(hyper, cls):
            bad.append(format_partition(parts))
    return not bad, {"partitions_checked": 20, "disagreements": bad}


def _check_gram_certificate():
    matrix = gram_matrix(middle_classes())
    expected = IntMatrix.from_rows([[1, 1, 0], [1, 0, 1], [0, 1, 1]])
    det = det_exact(matrix)
    with_two = tate_iso_check([(4, c) for c in middle_classes()], {2})
    without = tate_iso_check([(4, c) for c in middle_classes()], set())
    ok = matrix == expected and det == -2 and with_two and not without
    return ok, {"matrix": matrix.to_lists(), "det": det,
                "invertible_with_2_inverted": with_two,
                "invertible_over_Z": without}


def _check_cycle_recursion():
    results = {}
    ok = True
    for i in range(1, 5):
        holds, residual = verify_cycle_recursion(i)
        results[str(i)] = {"holds": holds, "residual": str(residual)}
        ok = ok and holds
    return ok, {"steps": results}


def _check_basis_certificates():
    results = {}
    ok = True
    for codim, classes in sorted(reference_bases().items()):
        good = basis_certificate(classes, codim)
        results[str(codim)] = good
        ok = ok and good
    return ok, {"codims": results}


def _check_chern_twist_identity():
    ok = verify_c3_twist_identity()
    return ok, {"residual": "h^3"}


def _check_quadric_identity():
    symbolic = verify_quadric_identity()
    sampled = quadric_identity_samples(200)
    return symbolic and sampled, {"symbolic_zero": symbolic, "samples": 200,
                                  "samples_zero": sampled}


def _check_chart_sweep():
    rows = {}
    for pivots, cls in classify_all_charts(3).items():
        rows[",".join(map(str, pivots))] = cls.kind
    eq = chart_equation((1, 2, 4))
    from .exact import Poly
    expected = Poly.var("a33") - (Poly.var("a51") * Poly.var("a62")
                                  - Poly.var("a52") * Poly.var("a61"))
    verbatim = eq == expected
    counts = {"SL": sum(1 for k in rows.values() if k == "SL"),
              "graph": sum(1 for k in rows.values() if k == "graph")}
    ok = len(rows) == 20 and verbatim
    return ok, {"charts": rows, "counts": counts,
                "chart_124_equation": str(eq), "chart_124_verbatim": verbatim}


def _check_gl_patterns():
    pattern = gl_tate_pattern(2)
    expected = {(0, 0): 1, (1, 1): 1, (2, 3): 1, (3, 4): 1}
    gl_ok = pattern.entries == expected
    slice_ok = {str(n): slice_consistency(n) for n in (2, 3, 5)}
    report = consistency_report()
    ok = gl_ok and all(slice_ok.values()) and report["all"]
    return ok, {"gl2_pattern": json.loads(pattern.to_json()),
                "slice_consistency": slice_ok,
                "split_checks": {k: v for k, v in report.items() if k != "all"}}


def _check_d2_oracle():
    checked = 0
    for n in (2, 3, 5):
        for q in range(1, max_weight(n) + 1):
            closed = d2_matrix(n, q)
            derived = d2_matrix_from_chern(n, q)
            if closed.entries != derived.entries:
                return False, {"counterexample": {"n": n, "q": q}}
            checked += 1
    return True, {"matrices_checked": checked}


def _expected_weight_tables():
    return {
        1: {1: Z},
        2: {2: Atom("F*"), 3: NZ},
        3: {1: Atom("H^{0,2}(F)"), 2: Atom("H^{1,2}(F)"), 3: Atom("H^{2,2}(F)"),
            4: direct_sum([Z, PowerSubN(Atom("F*"))]), 5: NZ},
    }


def _check_ss_tables():
    expected = _expected_weight_tables()
    tables = {}
    ok = True
    for j in (1, 2, 3):
        table = weight_table(3, j, unit="c")
        tables[str(j)] = {str(p): render_group(g) for p, g in sorted(table.items())}
        ok = ok and table == expected[j]
        # The symbolic unit never enters the rewrite rules.
        ok = ok and weight_table(3, j, unit="c'") == table
    return ok, {"tables": tables, "unit_invariant": True,
                "assumption": SPLIT_EXTENSION_NOTE}


def _check_ideal_enumeration():
    expected = {(2, 1): 3, (3, 1): 7, (3, 2): 7}
    counts = {}
    ok = True
    for (n, k), want in expected.items():
        count, _ = enumerate_right_ideals(SplitAlgebra(n, 2), k)
        counts[f"n={n},k={k}"] = count
        ok = ok and count == want and count == point_count(k, n, 2)
    alg = SplitAlgebra(2, 2)
    elements = list(alg.all_elements())
    agree = all(
        independent(alg, (x, y)) == independent_left_ideal(alg, (x, y))
        for x in elements for y in elements
    )
    return ok and agree, {"counts": counts, "independence_routes_agree": agree}


VERIFICATIONS = (
    ("pieri_regression", _check_pieri_regression),
    ("pieri_schur_agreement", _check_pieri_schur_agreement),
    ("gram_certificate", _check_gram_certificate),
    ("cycle_recursion", _check_cycle_recursion),
    ("basis_certificates", _check_basis_certificates),
    ("chern_twist_identity", _check_chern_twist_identity),
    ("quadric_identity", _check_quadric_identity),
    ("chart_sweep", _check_chart_sweep),
    ("gl_patterns", _check_gl_patterns),
    ("d2_oracle", _check_d2_oracle),
    ("ss_tables", _check_ss_tables),
    ("ideal_enumeration", _check_ideal_enumeration),
)


# -- command group ----------------------------------------------------------------


@click.group()
def main():
    """Exact verification toolkit for norm hypersurfaces and their invariants."""


@main.group()
def verify():
    """Run verification batteries."""


@verify.command("all")
@_json_option
def verify_all(as_json):
    """Run the full verification battery; exit 0 only if everything passes."""
    checks = []
    failed = []
    for name, fn in VERIFICATIONS:
        ok, payload = fn()
        checks.append({"name": name, "status": "pass" if ok else "fail",
                       "detail": payload})
        if not ok:
            failed.append(name)
    status = "pass" if not failed else "fail"
    report = Report("verify all", {}, status, {"checks": checks, "failed": failed})
    if as_json:
        click.echo(report.to_json())
    else:
        for check in checks:
            click.echo(f"[{check['status']}] {check['name']}")
        click.echo(f"result: {status} ({len(checks) - len(failed)}/{len(checks)} passed)")
    sys.exit(0 if status == "pass" else 1)


@main.group("schubert")
def schubert_group():
    """Schubert calculus on Gr(3,6)."""


@schubert_group.command("mul")
@click.argument("first")
@click.argument("second")
@click.option("--xring", is_flag=True,
              help="multiply inside the hyperplane-section ring (one factor must be (1))")
@_json_option
def schubert_mul(first, second, xring, as_json):
    """Product of two Schubert classes, e.g. mul "(2,2)" "(1)"."""
    try:
        lam = parse_partition(first)
        mu = parse_partition(second)
        if xring:
            if mu == (1,):
                base = lam
            elif lam == (1,):
                base = mu
            else:
                raise click.UsageError(
                    "--xring multiplies by the hyperplane: one factor must be (1)")
            result = hyperplane_mul(SectionClass.label(_infer_codim(base), base))
            report = Report("schubert mul",
                            {"first": first, "second": second, "xring": True},
                            "info", {"result": str(result), "codim": result.codim})
        else:
            product = schur_product(GrChowClass.schubert(3, 6, lam),
                                    GrChowClass.schubert(3, 6, mu))
            report = Report("schubert mul",
                            {"first": first, "second": second, "xring": False},
                            "info", {"result": str(product), "codim": product.codim})
    except ValueError as err:
        raise click.UsageError(str(err))
    _finish(report, as_json)


def _infer_codim(parts) -> int:
    w = sum(parts)
    if w <= 4:
        return w
    if w >= 6:
        return w - 1
    raise click.UsageError("labels of degree 5 do not occur in the section ring")


@main.group("xring")
def xring_group():
    """The Chow groups of the hyperplane section."""


@xring_group.command("mul-h")
@click.argument("label")
@_json_option
def xring_mul_h(label, as_json):
    """Multiply a section class by the hyperplane class."""
    try:
        parts = parse_partition(label)
        result = hyperplane_mul(SectionClass.label(_infer_codim(parts), parts))
    except ValueError as err:
        raise click.UsageError(str(err))
    report = Report("xring mul-h", {"label": label}, "info",
                    {"result": str(result), "codim": result.codim})
    _finish(report, as_json)


@main.command("gram")
@_json_option
def gram_command(as_json):
    """Gram matrix of the three middle-degree classes."""
    ok, payload = _check_gram_certificate()
    report = Report("gram", {}, "pass" if ok else "fail", payload)
    _finish(report, as_json)


@main.command("alphas")
@_json_option
def alphas_command(as_json):
    """List the five rational cycles and verify their mod-3 recursion."""
    ok, steps = _check_cycle_recursion()
    cycles = {str(i): str(rational_cycle(i)) for i in range(1, 6)}
    report = Report("alphas", {}, "pass" if ok else "fail",
                    {"cycles": cycles, **steps})
    _finish(report, as_json)


@main.command("bases")
@_json_option
def bases_command(as_json):
    """Unimodularity certificates for the six reference bases."""
    ok, payload = _check_basis_certificates()
    lists = {str(c): [str(cls) for cls in classes]
             for c, classes in sorted(reference_bases().items())}
    report = Report("bases", {}, "pass" if ok else "fail", {"bases": lists, **payload})
    _finish(report, as_json)


@main.command("tateiso")
@click.option("--invert", "inverted", multiple=True, type=int,
              help="prime to invert (repeatable)")
@_json_option
def tateiso_command(inverted, as_json):
    """Invertibility of the pairing matrix of the standard collection."""
    primes = set(inverted)
    matrix = pairing_matrix(standard_collection())
    ok = tate_iso_check(standard_collection(), primes)
    collection = [{"codim": c, "class": str(cls)} for c, cls in standard_collection()]
    report = Report("tateiso", {"invert": sorted(primes)},
                    "pass" if ok else "fail",
                    {"invertible": ok, "determinant": det_exact(matrix),
                     "collection_size": len(collection), "collection": collection})
    _finish(report, as_json)


@main.command("glmotive")
@click.option("--n", "n", required=True, type=int)
@_json_option
def glmotive_command(n, as_json):
    """Tate pattern of GL_n and its total-count identity."""
    try:
        pattern = gl_tate_pattern(n)
    except ValueError as err:
        raise click.UsageError(str(err))
    ok = pattern.total() == 2 ** n
    report = Report("glmotive", {"n": n}, "pass" if ok else "fail",
                    {"pattern": json.loads(pattern.to_json()), "total": pattern.total()})
    _finish(report, as_json)


@main.command("d2")
@click.option("--n", "n", required=True, type=int)
@click.option("--q", "q", required=True, type=int)
@_json_option
def d2_command(n, q, as_json):
    """The second-differential matrix between twists q and q+1."""
    try:
        matrix = d2_matrix(n, q)
    except ValueError as err:
        raise click.UsageError(str(err))
    oracle = d2_matrix_from_chern(n, q)
    ok = matrix.entries == oracle.entries
    report = Report("d2", {"n": n, "q": q}, "pass" if ok else "fail",
                    {"matrix": json.loads(matrix.to_json()), "oracle_agrees": ok})
    _finish(report, as_json)


@main.command("ss")
@click.option("--n", "n", required=True, type=int)
@click.option("--weight", "weight", required=True, type=int)
@_json_option
def ss_command(n, weight, as_json):
    """Assembled spectral-sequence table for one weight."""
    try:
        table = weight_table(n, weight)
    except ValueError as err:
        raise click.UsageError(str(err))
    rendered = {str(p): render_group(g) for p, g in sorted(table.items())}
    report = Report("ss", {"n": n, "weight": weight}, "info",
                    {"table": rendered, "assumptions": [SPLIT_EXTENSION_NOTE]})
    if as_json:
        _finish(report, as_json)
    click.echo(f"[info] ss (n={n}, weight={weight})")
    width = max(len(k) for k in rendered)
    for p, group in sorted(rendered.items(), key=lambda kv: int(kv[0])):
        click.echo(f"  p={p:<{width}}  {group}")
    click.echo(f"  note: {SPLIT_EXTENSION_NOTE}")
    sys.exit(0)


@main.command("quadric")
@_json_option
def quadric_command(as_json):
    """Symbolic and sampled verification of the embedding quadric identity."""
    ok, payload = _check_quadric_identity()
    report = Report("quadric", {}, "pass" if ok else "fail", payload)
    _finish(report, as_json)


@main.command("plucker")
@click.option("--a", "a", required=True, type=int)
@click.option("--b", "b", required=True, type=int)
@_json_option
def plucker_command(a, b, as_json):
    """Pluecker embedding of a generic pair for numeric structure constants."""
    if a == 0 or b == 0:
        raise click.UsageError("structure constants must be nonzero")
    alg = QuatAlgebra(a, b)
    a1 = symbolic_quaternion("1", alg)
    a2 = symbolic_quaternion("2", alg)
    point = plucker_embed(a1, a2)
    residual = point.norms[0] * point.norms[1] - quadric_form_value(alg, point.u)
    ok = residual.is_zero
    report = Report("plucker", {"a": a, "b": b}, "pass" if ok else "fail",
                    {"u": [str(u) for u in point.u],
                     "identity_holds": ok})
    _finish(report, as_json)


@main.command("charts")
@click.option("--degree", "degree", type=click.Choice(["2", "3"]), required=True)
@_json_option
def charts_command(degree, as_json):
    """Classify every chart of the block-determinant hyperplane."""
    degree = int(degree)
    table = classify_all_charts(degree)
    rows = []
    for pivots in all_charts(degree):
        cls = table[pivots]
        rows.append({"pivots": list(pivots), "kind": cls.kind,
                     "pivot_variable": cls.pivot_variable,
                     "equation": str(cls.equation)})
    ok = len(rows) == len(all_charts(degree))
    report = Report("charts", {"degree": degree}, "pass" if ok else "fail",
                    {"charts": rows, "count": len(rows)})
    if as_json:
        _finish(report, as_json)
    click.echo(f"[{report.status}] charts (degree={degree}, {len(rows)} charts)")
    for row in rows:
        pivots = ",".join(str(p) for p in row["pivots"])
        pivot_var = row["pivot_variable"] or "-"
        click.echo(f"  {{{pivots}}}  {row['kind']:<5}  pivot={pivot_var:<4}  {row['equation']}")
    sys.exit(0 if ok else 1)


@main.command("ideals")
@click.option("--n", "n", required=True, type=int)
@click.option("--q", "q", required=True, type=int)
@click.option("--k", "k", required=True, type=int)
@_json_option
def ideals_command(n, q, k, as_json):
    """Enumerate right ideals of rank k*n in M_n(F_q)."""
    try:
        count, ideals = enumerate_right_ideals(SplitAlgebra(n, q), k)
    except ValueError as err:
        raise click.UsageError(str(err))
    expected = point_count(k, n, q)
    ok = count == expected
    report = Report("ideals", {"n": n, "q": q, "k": k}, "pass" if ok else "fail",
                    {"count": count, "gaussian_binomial": expected,
                     "subspaces": [[list(r) for r in ideal.subspace] for ideal in ideals]})
    _finish(report, as_json)


@main.command("witt")
@click.option("--form", "form", required=True,
              help="comma-separated diagonal entries, e.g. 1,-2,-3,6,-1")
@_json_option
def witt_command(form, as_json):
    """Witt decomposition of a diagonal rational quadratic form."""
    try:
        entries = [int(v) for v in form.split(",") if v.strip()]
        if not entries:
            raise ValueError("empty form")
        decomposition = witt_split(entries)
    except ValueError as err:
        raise click.UsageError(str(err))
    report = Report("witt", {"form": form}, "pass",
                    {"hyperbolic_planes": decomposition.planes,
                     "residual": [str(d) for d in decomposition.residual],
                     "search_exhausted": decomposition.search_exhausted})
    _finish(report, as_json)


if __name__ == "__main__":
    main()

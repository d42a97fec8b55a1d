"""
Reading and writing cyquiver documents.

Quivers and Ext tables are JSON documents, potentials are plain text in
the expression grammar, automorphisms are JSON maps from coordinate id to
a path expression. Reports render either as human-readable text or as
JSON with sorted keys, so identical inputs give byte-identical output.
"""

import json
from pathlib import Path

from .exceptions import ExpressionError, InadmissibleTransformError, QuiverError
from .expressions import parse_potential, print_potential
from .gauge import Automorphism
from .quiver import ext_table_from_dict, ext_table_to_dict, quiver_from_dict, quiver_to_dict


def _read_text(path, error):
    try:
        return Path(path).read_text()
    except OSError as e:
        raise error(f"{path}: cannot read: {e.strerror or e}")


def _load_json(path, error):
    text = _read_text(path, error)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise error(f"{path}: invalid JSON: {e}")


def dump_json(data):
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def read_quiver(path):
    return quiver_from_dict(_load_json(path, QuiverError))


def quiver_document(quiver):
    return dump_json(quiver_to_dict(quiver))


def read_ext_table(path):
    return ext_table_from_dict(_load_json(path, QuiverError))


def ext_table_document(table):
    data = ext_table_to_dict(table)
    data["vertices"] = list(table.vertices)
    return dump_json(data)


def read_potential(path, space):
    text = _read_text(path, ExpressionError)
    if not text.strip():
        raise ExpressionError(f"{path}: empty potential file")
    return parse_potential(text, space)


def potential_document(series):
    return print_potential(series) + "\n"


def read_automorphism(path, space):
    data = _load_json(path, InadmissibleTransformError)
    if not isinstance(data, dict):
        raise InadmissibleTransformError(f"{path}: expected a map from coordinate id to expression")
    return Automorphism.from_expressions(space, data)


def read_generator(path, space):
    """Generator h of a Hamiltonian flow."""
    return parse_potential(_read_text(path, InadmissibleTransformError), space)


def render_master(report):
    data = report.to_dict()
    status = "PASS" if data["pass"] else "FAIL"
    lines = [f"{report.label}: {status}"]
    precision = "exact" if data["precision"] is None else f"cyc.deg <= {data['precision']}"
    lines.append(f"  precision: {precision}")
    for term in data["residual_terms"]:
        lines.append(f"  residual {term['coeff']} * {term['word']}")
    return "\n".join(lines)


def render_check(report):
    status = "PASS" if report.passed else "FAIL"
    lines = [f"{report.name}: {status} ({report.checked} checked)"]
    for violation in report.violations:
        inputs = ", ".join(violation.get("inputs", []))
        rule = violation.get("rule", f"arity {violation.get('arity')}")
        residual = violation.get("residual")
        suffix = f" -> {residual}" if residual else ""
        lines.append(f"  {rule}: ({inputs}){suffix}")
    return "\n".join(lines)


def render_cohomology(table):
    header = ("n", "k", "dim ĝ", "dim g_can", "dim g", "rank D", "dim H", "dim α", "H α")
    rows = [header] + [
        (r.n, r.k, r.dim, r.dim_g_can, r.dim_g, r.rank_d, r.dim_h, r.dim_alpha, r.h_alpha)
        for r in table.rows
    ]
    widths = [max(len(str(row[i])) for row in rows) for i in range(len(header))]
    lines = ["  ".join(str(v).rjust(w) for v, w in zip(row, widths)) for row in rows]
    lines.append(f"H(g_can) per n: {table.totals('g_can')}")
    lines.append(f"H(g) per n: {table.totals('g')}")
    if table.vanishing_violations:
        lines.append(f"nonzero H^(n>d-2)(g_can) at: {table.vanishing_violations}")
    if table.nonpositive_violations:
        lines.append(f"words without alpha of positive degree: {table.nonpositive_violations}")
    lines.append(f"caveat: {table.caveat}")
    return "\n".join(lines)


def render_psi(report):
    status = "PASS" if report.passed else "FAIL"
    lines = [f"psi: {status}"]
    for name in ("outside_g_can", "not_closed", "bracket_violations", "nontrivial_differential"):
        values = getattr(report, name)
        if values:
            lines.append(f"  {name}: {', '.join(values)}")
    for row in report.comparison:
        if row["dim_h"] or row["dim_H_g_can"]:
            lines.append(
                f"  i={row['i']} k={row['k']}: dim h {row['dim_h']}, dim H(g_can) {row['dim_H_g_can']}"
            )
    lines.append(f"caveat: {report.caveat}")
    return "\n".join(lines)

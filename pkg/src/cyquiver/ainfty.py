"""
Cyclic A∞ structure constants of a potential.

Each coordinate z has a dual basis vector e_z of Ext degree 1 - deg(z).
Products are read off the right cyclic derivatives of W through the CY
pairing. They are stored in the shifted (bar) convention b_n, where the
A∞ relations read

    Σ (-1)^{|v_1|+...+|v_i|} b(v_1, ..., v_i, b(v_{i+1}, ...), ...) = 0,

and the unshifted products are m_n(a_1..a_n) = (-1)^{Σ_j (n-j) k_j} b_n(a_1..a_n)
with k_j the Ext degree of a_j.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, NamedTuple, Tuple

from . import settings
from .calculus import build_W_can, require_degree
from .expressions import print_word
from .utils import format_coefficient, koszul_sign
from .words import CyclicSeries, Letters, accumulate, rotation_signs

Vector = Dict[int, Fraction]


class BasisVector(NamedTuple):
    """e_z for the coordinate z; its Ext degree is 1 - deg(z)."""

    letter: int
    name: str
    degree: int


class Pairing:
    """
    (e_u, e_v), nonzero exactly when v is the dual of u: +1 when u is of kind
    x or alpha, -(-1)^{|u||v|} otherwise. Graded antisymmetric on shifted degrees.
    """

    def __init__(self, space):
        self.space = space

    def basis(self):
        space = self.space
        return [BasisVector(n, space.name(n), 1 - space.degree[n]) for n in range(len(space))]

    def form(self, a, z):
        """Weight of the cut letter a against the output letter z of its dual."""
        return -self.space.omega(a, z)

    def value(self, u, v):
        return self.form(v, u)

    def is_nondegenerate(self):
        return all(self.value(u, self.space.partner[u]) != 0 for u in range(len(self.space)))


@dataclass
class StructureConstants:
    """b[n][inputs] = {output letter: coefficient} for 1 <= n <= n_max."""

    space: object
    n_max: int
    b: Dict[int, Dict[Letters, Vector]] = field(default_factory=dict)

    def shifted(self, inputs):
        inputs = tuple(inputs)
        return dict(self.b.get(len(inputs), {}).get(inputs, {}))

    def suspension_sign(self, inputs):
        n = len(inputs)
        exponent = sum((n - j) * (1 - self.space.degree[a]) for j, a in enumerate(inputs, 1))
        return -1 if exponent % 2 else 1

    def m(self, inputs):
        """Unshifted product m_n on the basis vectors of the input letters."""
        inputs = tuple(self.space.letter(a) for a in inputs)
        sign = self.suspension_sign(inputs)
        return {z: sign * c for z, c in self.shifted(inputs).items()}

    def entries(self, n=None):
        arities = sorted(self.b) if n is None else [n]
        for arity in arities:
            for inputs, out in sorted(self.b.get(arity, {}).items()):
                yield arity, inputs, out

    def m1_vanishes(self):
        return not any(self.b.get(1, {}).values())

    def is_zero(self):
        return not any(out for table in self.b.values() for out in table.values())

    def to_records(self):
        """Export of the unshifted products in deterministic order."""
        space = self.space
        records = []
        for n, inputs, _ in self.entries():
            out = self.m(inputs)
            records.append(
                {
                    "n": n,
                    "inputs": space.names(inputs),
                    "output": [
                        {"basis": space.name(z), "coeff": format_coefficient(c)}
                        for z, c in sorted(out.items())
                    ],
                }
            )
        return records


def _add(table, inputs, z, value):
    out = table.setdefault(inputs, {})
    total = out.get(z, 0) + value
    if total:
        out[z] = total
    else:
        out.pop(z, None)
        if not out:
            table.pop(inputs, None)


def extract_products(w, pairing=None, n_max=None):
    """
    b_{N-1}(letters after a, then letters before a)[dual of a] collects
    κ · sign · (cut form) over every occurrence of every letter a in the
    words of W, where W ≡ sign · (path) · a.
    """
    space = w.space
    require_degree(w, 3 - space.d, "W")
    pairing = pairing or Pairing(space)
    if n_max is None:
        n_max = settings.CYQUIVER_TRUNCATION
    if w.precision is not None and w.precision - 1 < n_max:
        logging.warning(f"W is exact up to cyc.deg {w.precision}; extracting m_n for n <= {w.precision - 1}")
        n_max = w.precision - 1
    b: Dict[int, Dict[Letters, Vector]] = {}
    degrees = space.degree
    for word, coeff in w.terms.items():
        n = len(word) - 1
        if n < 1:
            logging.warning(f"ignoring curvature term {print_word(space, word)}")
            continue
        if n > n_max:
            continue
        total = sum(degrees[a] for a in word)
        prefix = 0
        for i, a in enumerate(word):
            moved = prefix + degrees[a]
            sign = koszul_sign(moved, total - moved)
            prefix = moved
            z = space.partner[a]
            inputs = word[i + 1 :] + word[:i]
            _add(b.setdefault(n, {}), inputs, z, coeff * sign * pairing.form(a, z))
    return StructureConstants(space, n_max, {n: t for n, t in b.items() if t})


@dataclass
class Report:
    name: str
    violations: List[dict] = field(default_factory=list)
    checked: int = 0

    @property
    def passed(self):
        return not self.violations

    def to_dict(self):
        return {"check": self.name, "pass": self.passed, "checked": self.checked, "violations": self.violations}


def relation_residuals(m, n_max=None):
    """arity -> {inputs: {output: coefficient}} for the composite sums Σ ± b(.., b(..), ..)."""
    space = m.space
    n_max = m.n_max if n_max is None else min(n_max, m.n_max)
    producers: Dict[int, Dict[int, List[Tuple[Letters, Fraction]]]] = {}
    for n, inputs, out in m.entries():
        for z, c in out.items():
            producers.setdefault(z, {}).setdefault(n, []).append((inputs, c))
    residuals: Dict[int, Dict[Letters, Vector]] = {}
    for n1, outer_inputs, outer_out in m.entries():
        prefix = 0
        for i, v in enumerate(outer_inputs):
            for n2, inner in producers.get(v, {}).items():
                arity = n1 + n2 - 1
                if arity > n_max:
                    continue
                sign = -1 if prefix % 2 else 1
                table = residuals.setdefault(arity, {})
                for inner_inputs, c_inner in inner:
                    inputs = outer_inputs[:i] + inner_inputs + outer_inputs[i + 1 :]
                    for z, c_outer in outer_out.items():
                        _add(table, inputs, z, sign * c_inner * c_outer)
            prefix += space.degree[v]
    return {n: t for n, t in residuals.items() if t}


def check_ainfty(m, n_max=None):
    """Evaluates every A∞ relation of arity <= n_max on all composable basis tuples."""
    space = m.space
    report = Report("ainfty")
    residuals = relation_residuals(m, n_max)
    for arity in sorted(residuals):
        for inputs, out in sorted(residuals[arity].items()):
            report.violations.append(
                {
                    "arity": arity,
                    "inputs": space.names(inputs),
                    "residual": {space.name(z): format_coefficient(c) for z, c in sorted(out.items())},
                }
            )
    report.checked = sum(len(t) for t in m.b.values())
    logging.info(f"A∞ relations: {len(report.violations)} violated tuple(s)")
    return report


def reconstruct_cyclic_map(m, pairing=None):
    """W_N(v_1..v_N) = (b_{N-1}(v_1..v_{N-1}), e_{v_N}) on every nonzero tuple."""
    pairing = pairing or Pairing(m.space)
    values: Dict[Letters, Fraction] = {}
    for _, inputs, out in m.entries():
        for z, c in out.items():
            last = m.space.partner[z]
            key = inputs + (last,)
            values[key] = values.get(key, 0) + c * pairing.value(z, last)
    return {k: v for k, v in values.items() if v}


def symmetrize(w, n_max):
    """Full graded-cyclic symmetrization of W on words of length <= n_max + 1."""
    values: Dict[Letters, Fraction] = {}
    for word, coeff in w.terms.items():
        if len(word) < 2 or len(word) > n_max + 1:
            continue
        for _, rotated, sign in rotation_signs(w.space, word):
            values[rotated] = values.get(rotated, 0) + sign * coeff
    return {k: v for k, v in values.items() if v}


def potential_from_products(m, pairing=None):
    """Reads W back from its products: κ(c) = W_N(c) / |rotations fixing c|."""
    space = m.space
    terms: Dict[Letters, Fraction] = {}
    for key, value in reconstruct_cyclic_map(m, pairing).items():
        rotations = [r for _, r, _ in rotation_signs(space, key)]
        if key != min(rotations):
            continue
        stabilizer = sum(1 for r in rotations if r == key)
        accumulate(space, terms, key, value / stabilizer)
    return CyclicSeries(space, terms)


def _contains_w_can(w):
    w_can = build_W_can(w.space)
    return all(w.terms.get(word) == c for word, c in w_can.terms.items())


def check_m2_associative(m):
    """m_2(m_2(a, b), c) == m_2(a, m_2(b, c)) on all composable triples."""
    space = m.space
    pairs = {inputs: m.m(inputs) for inputs in m.b.get(2, {})}
    by_first: Dict[int, List[Tuple[int, Vector]]] = {}
    for (a, b), out in pairs.items():
        by_first.setdefault(a, []).append((b, out))
    lhs: Dict[Tuple[int, int, int], Vector] = {}
    rhs: Dict[Tuple[int, int, int], Vector] = {}
    for (a, b), out in pairs.items():
        for o, c1 in out.items():
            for c, out2 in by_first.get(o, []):
                for p, c2 in out2.items():
                    _add(lhs, (a, b, c), p, c1 * c2)
    for (b, c), out in pairs.items():
        for o, c1 in out.items():
            for (a, o2), out2 in pairs.items():
                if o2 != o:
                    continue
                for p, c2 in out2.items():
                    _add(rhs, (a, b, c), p, c1 * c2)
    violations = []
    for key in sorted(set(lhs) | set(rhs)):
        if lhs.get(key, {}) != rhs.get(key, {}):
            violations.append({"inputs": space.names(key), "rule": "m2 associativity"})
    return violations


def check_cyclicity_and_unit(m, pairing, w):
    """
    Cyclic invariance and normalization of the reconstructed W_N, graded
    symmetry of the pairing, weak and strict unitality for potentials
    containing W_can, degree bookkeeping, and associativity of m_2 for W_can.
    """
    space = m.space
    pairing = pairing or Pairing(space)
    report = Report("cyclicity_and_unit")
    add = report.violations.append

    cyclic = reconstruct_cyclic_map(m, pairing)
    for key, value in sorted(cyclic.items()):
        shifted = key[1:] + key[:1]
        rest = sum(space.degree[n] for n in key[1:])
        expected = koszul_sign(space.degree[key[0]], rest) * value
        if cyclic.get(shifted, 0) != expected:
            add({"inputs": space.names(key), "rule": "cyclic invariance"})
    if cyclic != symmetrize(w, m.n_max):
        add({"rule": "W_N differs from the graded-cyclic symmetrization of W"})
    report.checked += len(cyclic)

    for u in range(len(space)):
        v = space.partner[u]
        if pairing.value(u, v) == 0:
            add({"inputs": space.names((u, v)), "rule": "degenerate pairing"})
        expected = -koszul_sign(space.degree[u], space.degree[v]) * pairing.value(v, u)
        if pairing.value(u, v) != expected:
            add({"inputs": space.names((u, v)), "rule": "pairing symmetry"})
        if (1 - space.degree[u]) + (1 - space.degree[v]) != space.d:
            add({"inputs": space.names((u, v)), "rule": "pairing degree"})

    for n, inputs, out in m.entries():
        k_in = sum(1 - space.degree[a] for a in inputs)
        for z in out:
            if 1 - space.degree[z] != k_in + 2 - n:
                add({"inputs": space.names(inputs), "rule": f"m_{n} degree"})

    if space.with_unit and _contains_w_can(w):
        for vertex in space.vertices:
            unit = space.alpha(vertex)
            if m.m((unit, unit)) != {unit: 1}:
                add({"inputs": space.names((unit, unit)), "rule": "weak unit"})
            for v in range(len(space)):
                if space.source[v] == vertex and m.m((unit, v)) != {v: 1}:
                    add({"inputs": space.names((unit, v)), "rule": "left unit"})
                if space.target[v] == vertex and m.m((v, unit)) not in ({v: 1}, {v: -1}):
                    add({"inputs": space.names((v, unit)), "rule": "right unit"})
        units = space.of_kind("alpha")
        for n, inputs, out in m.entries():
            if n >= 3 and out and units.intersection(inputs):
                add({"inputs": space.names(inputs), "rule": "strict unitality"})
        canonical = extract_products(build_W_can(space), Pairing(space), 2)
        report.violations.extend(check_m2_associative(canonical))
    elif space.with_unit:
        logging.info("W does not contain W_can; unitality is reported, not assumed")
    return report


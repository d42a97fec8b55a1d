"""
Noncommutative calculus on cyclic series.

Cyclic derivatives, the necklace Poisson bracket pairing each coordinate
with its dual, the canonical potential W_can of a double quiver, the lift
W = W_can + W_0 and the master and Maurer-Cartan checks.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List

from .exceptions import (
    ConsistencyError,
    DegreeError,
    IncompatibleSpaceError,
    InadmissiblePotentialError,
)
from .expressions import print_word
from .utils import add_precision, format_coefficient, koszul_sign, min_precision
from .words import CoordinateSpace, CyclicSeries, Letters, PathSeries, accumulate


def _occurrences(word, degrees):
    """Yields (position, prefix degree) for every letter of a word."""
    prefix = 0
    for i, letter in enumerate(word):
        yield i, letter, prefix
        prefix += degrees[letter]


def _derivatives(series, right):
    """letter -> {complementary path: coefficient} for all letters of the series."""
    degrees = series.space.degree
    result: Dict[int, Dict[Letters, Fraction]] = {}
    for word, coeff in series.terms.items():
        total = sum(degrees[n] for n in word)
        for i, letter, prefix in _occurrences(word, degrees):
            if right:
                moved = prefix + degrees[letter]
                sign = koszul_sign(moved, total - moved)
            else:
                sign = koszul_sign(prefix, total - prefix)
            path = word[i + 1 :] + word[:i]
            paths = result.setdefault(letter, {})
            value = paths.get(path, 0) + sign * coeff
            if value:
                paths[path] = value
            else:
                paths.pop(path, None)
    return result


def _path_series(series, z, paths):
    space = series.space
    return PathSeries(
        space, space.target[z], space.source[z], paths, add_precision(series.precision, -1)
    )


def cyclic_derivative(series, z):
    """
    Left cyclic derivative: rotate each occurrence of z to the front with its
    Koszul sign and keep the remaining path, from target(z) to source(z).
    """
    z = series.space.letter(z)
    return _path_series(series, z, _derivatives(series, right=False).get(z, {}))


def right_cyclic_derivative(series, z):
    """Like cyclic_derivative, rotating each occurrence of z to the end."""
    z = series.space.letter(z)
    return _path_series(series, z, _derivatives(series, right=True).get(z, {}))


def bracket_precision(f, g):
    """min(p_f + m_g, p_g + m_f) - 2, None when both series are exact."""
    mf = f.min_length() or 0
    mg = g.min_length() or 0
    return add_precision(
        min_precision(add_precision(f.precision, mg), add_precision(g.precision, mf)), -2
    )


def necklace_bracket(f, g):
    """
    {f, g}: for every letter a of f and its dual b in g, join the right
    derivative of f at a with the left derivative of g at b, weighted by the
    bracket form. Words of length zero are dropped.
    """
    if f.space != g.space:
        raise IncompatibleSpaceError("bracket of series over different coordinate spaces")
    space = f.space
    precision = bracket_precision(f, g)
    right = _derivatives(f, right=True)
    left = _derivatives(g, right=False)
    terms: Dict[Letters, Fraction] = {}
    for a, f_paths in right.items():
        b = space.partner[a]
        g_paths = left.get(b)
        if not g_paths:
            continue
        weight = space.omega(a, b)
        for u, cu in f_paths.items():
            for v, cv in g_paths.items():
                word = u + v
                if not word or (precision is not None and len(word) > precision):
                    continue
                accumulate(space, terms, word, weight * cu * cv)
    return CyclicSeries(space, terms, precision)


def _space(qbar_or_space):
    if isinstance(qbar_or_space, CoordinateSpace):
        return qbar_or_space
    return CoordinateSpace.from_quiver(qbar_or_space)


def build_W_can(qbar_or_space):
    """
    Σ_i α_i²β_i + Σ_{a∈Q} (α_{s(a)} a a* − (−1)^{|a||a*|} α_{t(a)} a* a).
    """
    space = _space(qbar_or_space)
    items = []
    for v in space.vertices:
        alpha = space.alpha(v)
        items.append(((alpha, alpha, space.beta(v)), 1))
    for a in sorted(space.of_kind("x")):
        dual = space.partner[a]
        items.append(((space.alpha(space.source[a]), a, dual), 1))
        sign = koszul_sign(space.degree[a], space.degree[dual])
        items.append(((space.alpha(space.target[a]), dual, a), -sign))
    return CyclicSeries.from_words(space, items)


def word_degree(space, word):
    return sum(space.degree[n] for n in word)


def admissibility_violations(w0, qbar_or_space):
    """Reasons W_0 cannot be lifted; empty when W_can + W_0 is a valid lift."""
    space = _space(qbar_or_space)
    if w0.space != space:
        raise IncompatibleSpaceError("W_0 is not written over the coordinates of this quiver")
    violations: List[str] = []
    if space.d == 2 and w0:
        violations.append("d=2 admits no W_0")
    impossible = {n for n in space.of_kind("xi") if space.degree[n] == 2 - space.d}
    for word, _ in w0.items():
        text = print_word(space, word)
        kinds = {space.kind[n] for n in word}
        if "alpha" in kinds:
            violations.append(f"{text}: contains alpha")
        if "beta" in kinds:
            violations.append(f"{text}: contains beta")
        if impossible.intersection(word):
            violations.append(f"{text}: degree-impossible variable")
        if len(word) < 3:
            violations.append(f"{text}: not minimal")
        if word_degree(space, word) != 3 - space.d:
            violations.append(f"{text}: wrong degree {word_degree(space, word)}, expected {3 - space.d}")
    return violations


def lift_potential(w0, qbar_or_space):
    """W := W_can + W_0 after checking W_0 is admissible."""
    space = _space(qbar_or_space)
    violations = admissibility_violations(w0, space)
    if violations:
        raise InadmissiblePotentialError(violations)
    return build_W_can(space) + w0


@dataclass
class MasterReport:
    residual: CyclicSeries
    passed: bool
    label: str = "master"

    @property
    def precision(self):
        return self.residual.precision

    def to_dict(self):
        space = self.residual.space
        return {
            "pass": self.passed,
            "residual_terms": [
                {"word": print_word(space, w), "coeff": format_coefficient(c)}
                for w, c in self.residual.items()
            ],
            "precision": self.precision,
        }


def require_degree(series, degree, what):
    if not series.is_homogeneous(degree):
        found = sorted(series.function_degrees())
        raise DegreeError(f"{what} must be homogeneous of degree {degree}, found degrees {found}")


def check_master(w):
    """Residual {W, W}; passes when it vanishes up to its precision."""
    require_degree(w, 3 - w.space.d, "W")
    residual = necklace_bracket(w, w)
    logging.info(f"{{W,W}} has {len(residual)} residual term(s)")
    return MasterReport(residual, not residual, "master")


def maurer_cartan_check(gamma, qbar_or_space):
    """
    Residual {W_can, γ} + ½{γ, γ} for γ in 𝔤¹_can, cross-checked against
    ½{W_can + γ, W_can + γ} on every call.
    """
    space = _space(qbar_or_space)
    require_degree(gamma, 3 - space.d, "gamma")
    if gamma.min_length() is not None and gamma.min_length() < 3:
        raise DegreeError("gamma must have cyc.deg at least 3")
    w_can = build_W_can(space)
    residual = necklace_bracket(w_can, gamma) + necklace_bracket(gamma, gamma).scale(
        Fraction(1, 2)
    )
    total = w_can + gamma
    expected = necklace_bracket(total, total).scale(Fraction(1, 2))
    precision = min_precision(residual.precision, expected.precision)
    if residual.truncate(precision) != expected.truncate(precision):
        raise ConsistencyError("Maurer-Cartan residual differs from half the master residual")
    return MasterReport(residual, not residual, "mc")


def cyclic_identity_residual(series):
    """
    Σ_z (z·∂_z P − (−1)^{|z||∂_z P|} ∂_z P·z) in the path algebra, per vertex.

    Every entry vanishes for every P; the sum telescopes over the rotations
    of each word.
    """
    space = series.space
    derivatives = _derivatives(series, right=False)
    residual = {v: {} for v in space.vertices}
    for z, paths in derivatives.items():
        terms = residual[space.source[z]]
        for path, coeff in paths.items():
            left = (z,) + path
            right = path + (z,)
            sign = koszul_sign(space.degree[z], word_degree(space, path))
            terms[left] = terms.get(left, 0) + coeff
            terms_right = residual[space.target[z]]
            terms_right[right] = terms_right.get(right, 0) - sign * coeff
    return {
        v: PathSeries(space, v, v, {w: c for w, c in terms.items() if c}, series.precision)
        for v, terms in residual.items()
    }

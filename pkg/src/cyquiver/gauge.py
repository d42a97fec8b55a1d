"""
Gauge actions on potentials.

On the quiver side a gauge transformation is a grading and vertex
preserving automorphism of the completed path algebra, given by the image
of every coordinate. On the CY side it is the Hamiltonian flow
exp({h, ·}) of a coh.deg 0 series h.
"""

import logging
from fractions import Fraction
from typing import Dict

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .calculus import necklace_bracket, require_degree, right_cyclic_derivative
from .exceptions import DegreeError, InadmissibleTransformError, WordError
from .expressions import parse_path, print_path
from .utils import as_fraction, min_precision, to_qq
from .words import CyclicSeries, Letters, PathSeries, accumulate


class Automorphism:
    """
    Substitution z -> image(z) on the letters of `domain` (all letters by default).

    Letters without an explicit image map to themselves. Images must run
    between the endpoints of their letter, have the letter's degree, carry no
    constant term, and the linear part must be invertible.
    """

    def __init__(self, space, images=None, domain=None, precision=None):
        self.space = space
        self.domain = frozenset(range(len(space))) if domain is None else frozenset(domain)
        self.precision = precision
        self.images: Dict[int, PathSeries] = {}
        for z, image in (images or {}).items():
            z = space.letter(z)
            if z in self.domain:
                self.images[z] = image
        self.validate()

    @classmethod
    def identity(cls, space):
        return cls(space)

    @classmethod
    def scaling(cls, space, factors):
        """Symplectic scaling a -> λa, a* -> a*/λ for x-kind coordinates a."""
        images = {}
        for name, factor in factors.items():
            z = space.letter(name)
            if space.kind[z] != "x":
                raise InadmissibleTransformError(f"scaling is defined on x-coordinates, got {name!r}")
            factor = as_fraction(factor)
            if factor == 0:
                raise InadmissibleTransformError("scaling factors must be nonzero")
            dual = space.partner[z]
            images[z] = PathSeries.letter(space, z).scale(factor)
            images[dual] = PathSeries.letter(space, dual).scale(1 / factor)
        return cls(space, images)

    @classmethod
    def from_expressions(cls, space, mapping):
        """Builds an automorphism from {coordinate id: path expression}."""
        images = {}
        for name, text in mapping.items():
            if not space.has(name):
                raise InadmissibleTransformError(f"unknown coordinate {name!r}")
            z = space.letter(name)
            try:
                images[z] = parse_path(str(text), space, space.source[z], space.target[z])
            except WordError as e:
                raise InadmissibleTransformError(f"image of {name!r}: {e}")
        return cls(space, images)

    def to_expressions(self):
        return {
            self.space.name(z): print_path(image)
            for z, image in sorted(self.images.items())
            if image != PathSeries.letter(self.space, z)
        }

    def image(self, z):
        z = self.space.letter(z)
        if z in self.images:
            return self.images[z]
        return PathSeries.letter(self.space, z)

    def linear_part(self):
        """Matrix L[i][j] = coefficient of letter j in the image of letter i, over the domain."""
        order = sorted(self.domain)
        position = {z: n for n, z in enumerate(order)}
        rows = {}
        for n, z in enumerate(order):
            row = {}
            for word, coeff in self.image(z).terms.items():
                if len(word) == 1 and word[0] in position:
                    row[position[word[0]]] = to_qq(coeff)
            if row:
                rows[n] = row
        return DomainMatrix(rows, (len(order), len(order)), QQ)

    def validate(self):
        space = self.space
        for z, image in self.images.items():
            name = space.name(z)
            if image.space != space:
                raise InadmissibleTransformError(f"image of {name!r} uses another coordinate space")
            if (image.source, image.target) != (space.source[z], space.target[z]):
                raise InadmissibleTransformError(f"image of {name!r} does not preserve the vertices")
            for word in image.terms:
                if not word:
                    raise InadmissibleTransformError(f"image of {name!r} has a constant term")
                if sum(space.degree[n] for n in word) != space.degree[z]:
                    raise InadmissibleTransformError(f"image of {name!r} does not preserve the grading")
                if not self.domain.issuperset(word):
                    raise InadmissibleTransformError(f"image of {name!r} leaves the domain")
        if self.domain and self.linear_part().rank() < len(self.domain):
            raise InadmissibleTransformError("linear part is not invertible")

    def apply_to_path(self, path, truncation=None):
        """Substitutes every letter of a path series, keeping words up to the truncation."""
        precision = min_precision(path.precision, self.precision, truncation)
        terms = _substitute(self, path.terms.items(), precision)
        return PathSeries(self.space, path.source, path.target, terms, precision)

    def compose(self, other, truncation=None):
        """self ∘ other: first other, then self."""
        if self.space != other.space:
            raise InadmissibleTransformError("automorphisms over different coordinate spaces")
        domain = self.domain & other.domain
        precision = min_precision(self.precision, other.precision, truncation)
        images = {z: self.apply_to_path(other.image(z), precision) for z in domain}
        return Automorphism(self.space, images, domain, precision)

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return (
            self.space == other.space
            and self.domain == other.domain
            and all(self.image(z) == other.image(z) for z in self.domain)
        )

    def truncate(self, precision):
        images = {z: self.image(z).truncate(precision) for z in self.domain}
        return Automorphism(self.space, images, self.domain, min_precision(self.precision, precision))


def _substitute(phi, items, precision):
    terms: Dict[Letters, Fraction] = {}
    for word, coeff in items:
        partial: Dict[Letters, Fraction] = {(): coeff}
        for letter in word:
            image = phi.image(letter).terms
            expanded: Dict[Letters, Fraction] = {}
            for prefix, a in partial.items():
                for piece, b in image.items():
                    w = prefix + piece
                    if precision is not None and len(w) > precision:
                        continue
                    expanded[w] = expanded.get(w, 0) + a * b
            partial = expanded
        for w, c in partial.items():
            terms[w] = terms.get(w, 0) + c
    return {w: c for w, c in terms.items() if c}


def apply_automorphism(phi, series, truncation=None):
    """Substitutes each letter of every cyclic word and re-canonicalizes."""
    if phi.space != series.space:
        raise InadmissibleTransformError("automorphism and potential use different coordinates")
    if not phi.domain.issuperset(series.letters_used()):
        raise InadmissibleTransformError("potential uses letters outside the automorphism's domain")
    precision = min_precision(series.precision, phi.precision, truncation)
    expanded = _substitute(phi, series.terms.items(), precision)
    terms: Dict[Letters, Fraction] = {}
    for word, coeff in expanded.items():
        accumulate(series.space, terms, word, coeff)
    return CyclicSeries(series.space, terms, precision)


def project_gauge(phi):
    """
    The automorphism induced on the subalgebra in x and ξ_{r≠2−d} by setting
    α, β and ξ_{2−d} to zero in every image.
    """
    space = phi.space
    ideal = space.ideal_generators()
    for z in ideal & phi.domain:
        survivors = [w for w in phi.image(z).terms if ideal.isdisjoint(w)]
        if survivors:
            raise InadmissibleTransformError(
                f"image of {space.name(z)!r} leaves the ideal generated by alpha, beta and xi_(2-d)"
            )
    domain = phi.domain - ideal
    images = {}
    for z in domain:
        image = phi.image(z)
        images[z] = image.copy({w: c for w, c in image.terms.items() if ideal.isdisjoint(w)})
    return Automorphism(space, images, domain, phi.precision)


def _require_generator(h):
    try:
        require_degree(h, 2 - h.space.d, "h")
    except DegreeError as e:
        raise InadmissibleTransformError(f"generator of coh.deg 0 expected: {e}")
    if h.min_length() is not None and h.min_length() < 3:
        raise InadmissibleTransformError("h must have cyc.deg at least 3 for the flow to converge")


def hamiltonian_flow(h, series, truncation):
    """exp({h, ·}) applied to a series, exact up to cyc.deg `truncation`."""
    if truncation is None:
        raise ValueError("a Hamiltonian flow needs a finite truncation")
    _require_generator(h)
    result = series.truncate(truncation)
    term = result
    n = 1
    while term:
        term = necklace_bracket(h, term).truncate(truncation).scale(Fraction(1, n))
        result = result + term
        n += 1
    logging.info(f"Hamiltonian flow converged after {n - 1} bracket(s)")
    return result.truncate(truncation)


def flow_automorphism(h):
    """
    exp({h, ·}) as an exact substitution, for generators h that contain no
    letter together with its dual.

    {h, ·} then moves each dual b = a* of a letter a of h by
    ω(a, b) ∂_R h/∂a and fixes every other letter, so the flow stops after
    one step on letters.
    """
    _require_generator(h)
    space = h.space
    used = h.letters_used()
    paired = sorted(space.name(a) for a in used if space.partner[a] in used)
    if paired:
        raise InadmissibleTransformError(
            f"h contains both members of a dual pair ({', '.join(paired)}); use hamiltonian_flow"
        )
    images = {}
    for a in sorted(used):
        b = space.partner[a]
        shift = right_cyclic_derivative(h, a).scale(space.omega(a, b))
        images[b] = PathSeries.letter(space, b) + shift
    return Automorphism(space, images)

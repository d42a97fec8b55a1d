"""
Words and series over the graded coordinates of a double quiver.

Every coordinate of a space gets an integer letter, assigned in the global
order alpha < x < xi < beta, then source vertex, target vertex, degree and
arrow position. Words are tuples of letters read left to right, so a word
a1 a2 requires target(a1) == source(a2). Cyclic words are stored as their
lexicographically least rotation, with the Koszul sign of the rotation
absorbed into the coefficient.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, NamedTuple, Tuple

from .exceptions import IncompatibleSpaceError, QuiverError, WordError
from .utils import as_fraction, koszul_sign, min_precision

KIND_ORDER = {"alpha": 0, "x": 1, "xi": 2, "beta": 3}

Letters = Tuple[int, ...]


@dataclass(frozen=True)
class Coordinate:
    name: str
    kind: str
    source: str
    target: str
    degree: int
    index: int = field(default=-1, compare=False)


class Word(NamedTuple):
    letters: Letters
    source: str
    target: str


class CyclicWord(NamedTuple):
    letters: Letters
    zero: bool = False


class Grading(NamedTuple):
    func_degree: int
    cyc_degree: int
    coh_degree: int


class CoordinateSpace:
    """
    The graded coordinates alpha_i, beta_i, x and xi of a double quiver.

    alpha_i has degree 1 and beta_i degree 1-d at vertex i; every arrow of
    Q̄ gives a coordinate of the arrow's degree, x-kind for arrows of Q and
    xi-kind for their duals. Dual pairs are (x, xi) and (alpha_i, beta_i).
    """

    def __init__(self, d, vertices, coordinates, partners, with_unit=True):
        self.d = d
        self.vertices = tuple(vertices)
        self.with_unit = with_unit
        self.coordinates = tuple(coordinates)
        self.partner = tuple(partners)
        self.degree = tuple(c.degree for c in self.coordinates)
        self.source = tuple(c.source for c in self.coordinates)
        self.target = tuple(c.target for c in self.coordinates)
        self.kind = tuple(c.kind for c in self.coordinates)
        self._by_name = {c.name: c.index for c in self.coordinates}
        self._key = (
            d,
            self.vertices,
            tuple((c.name, c.kind, c.source, c.target, c.degree) for c in self.coordinates),
        )
        self._outgoing: Dict[str, Tuple[int, ...]] = {
            v: tuple(i for i, s in enumerate(self.source) if s == v) for v in self.vertices
        }

    @classmethod
    def from_quiver(cls, qbar, with_unit=True):
        if qbar.half:
            raise QuiverError("coordinates are defined on the double quiver")
        vertex_index = {v: n for n, v in enumerate(qbar.vertices)}
        keyed = []
        if with_unit:
            for v in qbar.vertices:
                n = vertex_index[v]
                keyed.append(((0, n, n, 1, 0), ("alpha_" + v, "alpha", v, v, 1), None))
                keyed.append(
                    ((3, n, n, 1 - qbar.d, 0), ("beta_" + v, "beta", v, v, 1 - qbar.d), None)
                )
        for position, a in enumerate(qbar.arrows):
            kind = "xi" if a.star else "x"
            key = (KIND_ORDER[kind], vertex_index[a.src], vertex_index[a.tgt], a.deg, position)
            keyed.append((key, (a.id, kind, a.src, a.tgt, a.deg), a.dual))
        keyed.sort(key=lambda item: item[0])
        coordinates = [Coordinate(*fields, index=n) for n, (_, fields, _) in enumerate(keyed)]
        by_name = {c.name: c.index for c in coordinates}
        partners = []
        for c, (_, _, dual) in zip(coordinates, keyed):
            if c.kind == "alpha":
                partners.append(by_name["beta_" + c.source])
            elif c.kind == "beta":
                partners.append(by_name["alpha_" + c.source])
            elif dual in by_name:
                partners.append(by_name[dual])
            else:
                raise QuiverError(f"arrow {c.name!r} has no dual arrow")
        return cls(qbar.d, qbar.vertices, coordinates, partners, with_unit=with_unit)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, CoordinateSpace):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __len__(self):
        return len(self.coordinates)

    def __repr__(self):
        return f"CoordinateSpace(d={self.d}, letters={[c.name for c in self.coordinates]})"

    def letter(self, ref):
        """Letter of a coordinate given by name, Coordinate or letter."""
        if isinstance(ref, int):
            return ref
        if isinstance(ref, Coordinate):
            ref = ref.name
        try:
            return self._by_name[ref]
        except KeyError:
            raise WordError(f"unknown coordinate {ref!r}")

    def letters(self, refs):
        return frozenset(self.letter(r) for r in refs)

    def has(self, name):
        return name in self._by_name

    def coordinate(self, letter):
        return self.coordinates[letter]

    def name(self, letter):
        return self.coordinates[letter].name

    def names(self, letters):
        return [self.coordinates[n].name for n in letters]

    def word(self, refs):
        """Composable Word from names; raises WordError when letters do not compose."""
        letters = tuple(self.letter(r) for r in refs)
        if not letters:
            raise WordError("empty word has no endpoints")
        check_composable(self, letters)
        return Word(letters, self.source[letters[0]], self.target[letters[-1]])

    def alpha(self, vertex):
        return self.letter("alpha_" + vertex)

    def beta(self, vertex):
        return self.letter("beta_" + vertex)

    def outgoing(self, vertex):
        return self._outgoing[vertex]

    def omega(self, a, b):
        """
        Bracket form on a dual pair: (-1)^{|u||u*|} for (u, u*) with u of kind
        x or alpha, and -1 for the reversed pair. Zero off dual pairs.
        """
        if self.partner[a] != b:
            return 0
        if self.kind[a] in ("x", "alpha"):
            return koszul_sign(self.degree[a], self.degree[b])
        return -1

    def ideal_generators(self):
        """alpha_i, beta_i and the xi coordinates of degree 2-d."""
        return frozenset(
            n
            for n, kind in enumerate(self.kind)
            if kind in ("alpha", "beta") or (kind == "xi" and self.degree[n] == 2 - self.d)
        )

    def of_kind(self, *kinds):
        return frozenset(n for n, kind in enumerate(self.kind) if kind in kinds)


def check_composable(space, letters):
    for a, b in zip(letters, letters[1:]):
        if space.target[a] != space.source[b]:
            raise WordError(
                f"letters {space.name(a)!r} and {space.name(b)!r} do not compose"
            )


def check_closed(space, letters):
    if not letters:
        raise WordError("cyclic words have at least one letter")
    check_composable(space, letters)
    if space.target[letters[-1]] != space.source[letters[0]]:
        raise WordError(f"word {' '.join(space.names(letters))} is not closed")


def _canonical(degrees, letters):
    n = len(letters)
    total = sum(degrees)
    best = letters
    best_sign = 1
    zero = False
    prefix = 0
    for k in range(1, n):
        prefix += degrees[k - 1]
        rotated = letters[k:] + letters[:k]
        if rotated > best:
            continue
        sign = koszul_sign(prefix, total - prefix)
        if rotated < best:
            best, best_sign, zero = rotated, sign, False
        elif sign != best_sign:
            zero = True
    return best, best_sign, zero


def canonical_cyclic(space, letters):
    """
    Canonical rotation of a closed word and the Koszul sign w = sign * rep.

    Rotating u.v to v.u costs (-1)^{|u||v|}. When two rotations reach the
    least word with opposite signs the class is zero and flagged as such.
    """
    letters = tuple(letters.letters if isinstance(letters, (Word, CyclicWord)) else letters)
    check_closed(space, letters)
    best, sign, zero = _canonical([space.degree[n] for n in letters], letters)
    return CyclicWord(best, zero), sign


def rotation_signs(space, letters):
    """Yields (k, rotated letters, sign) with letters = sign * rotated."""
    degrees = [space.degree[n] for n in letters]
    total = sum(degrees)
    prefix = 0
    for k in range(len(letters)):
        yield k, letters[k:] + letters[:k], koszul_sign(prefix, total - prefix)
        prefix += degrees[k]


def grading(space, w):
    """Function, cyclic and cohomological degree of a word (coh = func + d - 2)."""
    letters = w.letters if isinstance(w, (Word, CyclicWord)) else tuple(w)
    func = sum(space.degree[n] for n in letters)
    return Grading(func, len(letters), func + space.d - 2)


def _check_space(a, b):
    if a.space != b.space:
        raise IncompatibleSpaceError("series live over different coordinate spaces")


class CyclicSeries:
    """
    Rational combination of canonical cyclic words with a precision bound.

    Coefficients of words with at most `precision` letters are exact; a
    precision of None stands for an exact (polynomial) series. Terms longer
    than the precision are never stored.
    """

    __slots__ = ("space", "terms", "precision")

    def __init__(self, space, terms=None, precision=None):
        self.space = space
        self.precision = precision
        self.terms: Dict[Letters, Fraction] = {
            w: c
            for w, c in (terms or {}).items()
            if c != 0 and (precision is None or len(w) <= precision)
        }

    @classmethod
    def zero(cls, space, precision=None):
        return cls(space, {}, precision)

    @classmethod
    def from_words(cls, space, items, precision=None):
        """Sums (letters, coefficient) pairs after cyclic canonicalization."""
        terms: Dict[Letters, Fraction] = {}
        for letters, coeff in items:
            accumulate(space, terms, tuple(letters), as_fraction(coeff))
        return cls(space, terms, precision)

    @classmethod
    def from_names(cls, space, items, precision=None):
        return cls.from_words(
            space, ((tuple(space.letter(n) for n in names), c) for names, c in items), precision
        )

    def copy(self, terms=None, precision="same"):
        if precision == "same":
            precision = self.precision
        return CyclicSeries(self.space, dict(self.terms if terms is None else terms), precision)

    def __add__(self, other):
        _check_space(self, other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return CyclicSeries(self.space, terms, min_precision(self.precision, other.precision))

    def __neg__(self):
        return self.copy({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        factor = as_fraction(factor)
        return self.copy({w: factor * c for w, c in self.terms.items()})

    def __mul__(self, factor):
        return self.scale(factor)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CyclicSeries):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    def __hash__(self):
        return hash((self.space, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        from .expressions import print_potential

        return f"CyclicSeries({print_potential(self)!r}, precision={self.precision})"

    def items(self):
        """Terms in canonical order: by length, then lexicographically."""
        return sorted(self.terms.items(), key=lambda item: (len(item[0]), item[0]))

    def coefficient(self, letters):
        letters = tuple(self.space.letter(n) for n in letters)
        word, sign = canonical_cyclic(self.space, letters)
        if word.zero:
            return Fraction(0)
        return sign * self.terms.get(word.letters, Fraction(0))

    def truncate(self, precision):
        return self.copy(precision=min_precision(self.precision, precision))

    def min_length(self):
        if not self.terms:
            return None
        return min(len(w) for w in self.terms)

    def max_length(self):
        if not self.terms:
            return 0
        return max(len(w) for w in self.terms)

    def function_degrees(self):
        return {sum(self.space.degree[n] for n in w) for w in self.terms}

    def is_homogeneous(self, degree=None):
        degrees = self.function_degrees()
        if degree is None:
            return len(degrees) <= 1
        return degrees <= {degree}

    def letters_used(self):
        return frozenset(n for w in self.terms for n in w)

    def of_length(self, length):
        return self.copy({w: c for w, c in self.terms.items() if len(w) == length})


def accumulate(space, terms, letters, coeff):
    """Adds coeff * [letters] to a canonical term map; False when the word is zero."""
    best, sign, zero = _canonical([space.degree[n] for n in letters], letters)
    if zero:
        return False
    value = terms.get(best, 0) + sign * coeff
    if value:
        terms[best] = value
    else:
        terms.pop(best, None)
    return True


class PathSeries:
    """Rational combination of words sharing the endpoints (source, target)."""

    __slots__ = ("space", "source", "target", "terms", "precision")

    def __init__(self, space, source, target, terms=None, precision=None):
        self.space = space
        self.source = source
        self.target = target
        self.precision = precision
        self.terms: Dict[Letters, Fraction] = {
            w: as_fraction(c)
            for w, c in (terms or {}).items()
            if c != 0 and (precision is None or len(w) <= precision)
        }
        for w in self.terms:
            if w and (space.source[w[0]] != source or space.target[w[-1]] != target):
                raise WordError(f"word {' '.join(space.names(w))} has the wrong endpoints")
            if not w and source != target:
                raise WordError("the empty word only lives at a single vertex")

    @classmethod
    def letter(cls, space, letter):
        letter = space.letter(letter)
        return cls(space, space.source[letter], space.target[letter], {(letter,): Fraction(1)})

    @classmethod
    def idempotent(cls, space, vertex):
        return cls(space, vertex, vertex, {(): Fraction(1)})

    def copy(self, terms=None, precision="same"):
        if precision == "same":
            precision = self.precision
        return PathSeries(
            self.space, self.source, self.target, self.terms if terms is None else terms, precision
        )

    def _check(self, other):
        _check_space(self, other)
        if (self.source, self.target) != (other.source, other.target):
            raise WordError("path series have different endpoints")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return self.copy(terms, min_precision(self.precision, other.precision))

    def __neg__(self):
        return self.copy({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        factor = as_fraction(factor)
        return self.copy({w: factor * c for w, c in self.terms.items()})

    def __mul__(self, other):
        """Concatenation; scalars scale."""
        if not isinstance(other, PathSeries):
            return self.scale(other)
        _check_space(self, other)
        if self.target != other.source:
            raise WordError("path series do not compose")
        precision = concatenation_precision(self, other)
        terms: Dict[Letters, Fraction] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u + v
                if precision is not None and len(w) > precision:
                    continue
                terms[w] = terms.get(w, 0) + a * b
        return PathSeries(self.space, self.source, other.target, terms, precision)

    def __rmul__(self, factor):
        return self.scale(factor)

    def __eq__(self, other):
        if not isinstance(other, PathSeries):
            return NotImplemented
        return (
            self.space == other.space
            and (self.source, self.target) == (other.source, other.target)
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        from .expressions import print_path

        return f"PathSeries({print_path(self)!r}, precision={self.precision})"

    def items(self):
        return sorted(self.terms.items(), key=lambda item: (len(item[0]), item[0]))

    def min_length(self):
        if not self.terms:
            return None
        return min(len(w) for w in self.terms)

    def truncate(self, precision):
        return self.copy(precision=min_precision(self.precision, precision))

    def close(self):
        """The cyclic series of the closed words of this path series."""
        if self.source != self.target:
            raise WordError("only paths from a vertex to itself close into cyclic words")
        return CyclicSeries.from_words(
            self.space, ((w, c) for w, c in self.terms.items() if w), self.precision
        )


def concatenation_precision(a, b):
    """min(p_a + m_b, p_b + m_a), None when both factors are exact."""
    ma = a.min_length() or 0
    mb = b.min_length() or 0
    return min_precision(
        None if a.precision is None else a.precision + mb,
        None if b.precision is None else b.precision + ma,
    )


def is_minimal(series):
    """True when every term has at least three letters."""
    return all(len(w) >= 3 for w in series.terms)


def restrict(series, kill):
    """Drops every term that contains a killed coordinate."""
    killed = series.space.letters(kill)
    return series.copy({w: c for w, c in series.terms.items() if killed.isdisjoint(w)})


def enumerate_closed_words(space, length, letters=None):
    """All closed composable letter tuples of the given length over the allowed letters."""
    allowed = None if letters is None else frozenset(letters)
    found: List[Letters] = []
    for start in space.vertices:
        stack = [((), start)]
        while stack:
            word, vertex = stack.pop()
            if len(word) == length:
                if vertex == start:
                    found.append(word)
                continue
            for n in space.outgoing(vertex):
                if allowed is None or n in allowed:
                    stack.append((word + (n,), space.target[n]))
    return found


def canonical_words(space, length, letters=None):
    """Distinct nonzero canonical cyclic words of a length, in canonical order."""
    seen = set()
    for word in enumerate_closed_words(space, length, letters):
        best, _, zero = _canonical([space.degree[n] for n in word], word)
        if not zero:
            seen.add(best)
    return sorted(seen)

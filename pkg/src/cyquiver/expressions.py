"""
Parser and printer for potentials and path series.

Grammar (whitespace is insignificant):

    series   ::= term (('+' | '-') term)*
    term     ::= [rational '*'] ident ('*' ident)*
    rational ::= int ['/' int]
    ident    ::= arrow id | "alpha_<vertex>" | "beta_<vertex>"

A bare rational stands for a multiple of a vertex idempotent in path
series; in potentials only "0" is accepted. Printing emits terms in
canonical word order with reduced rationals, so parse(print(P)) == P.
"""

import logging
from fractions import Fraction
from typing import Dict

import pyparsing as pp

from .exceptions import ExpressionError, WordError
from .quiver import IDENTIFIER_RE
from .utils import format_coefficient
from .words import CyclicSeries, Letters, PathSeries, accumulate, check_closed, check_composable

IDENT = pp.Regex(IDENTIFIER_RE.pattern)
INTEGER = pp.Word(pp.nums)
RATIONAL = pp.Combine(INTEGER + pp.Optional("/" + INTEGER))
SIGN = pp.one_of("+ -")
WORD = pp.Group(IDENT + pp.ZeroOrMore(pp.Suppress("*") + IDENT))
BODY = (RATIONAL("coeff") + pp.Optional(pp.Suppress("*") + WORD("word"))) | WORD("word")
FIRST_TERM = pp.Group(pp.Optional(SIGN, default="+")("sign") + BODY)
NEXT_TERM = pp.Group(SIGN("sign") + BODY)
SERIES = FIRST_TERM + pp.ZeroOrMore(NEXT_TERM)


def _terms(text):
    """Yields (coefficient, names) pairs; names is empty for a bare rational."""
    try:
        parsed = SERIES.parse_string(text, parse_all=True)
    except pp.ParseException as e:
        raise ExpressionError(f"cannot parse {text!r}: {e.msg}", location=e.loc)
    for term in parsed:
        raw = term.get("coeff", "1")
        try:
            coeff = Fraction(raw)
        except ZeroDivisionError:
            raise ExpressionError(f"malformed rational {raw!r}")
        if term["sign"] == "-":
            coeff = -coeff
        names = list(term["word"]) if "word" in term else []
        yield coeff, names


def _letters(space, names):
    letters = []
    for name in names:
        if not space.has(name):
            raise ExpressionError(f"unknown identifier {name!r}")
        letters.append(space.letter(name))
    return tuple(letters)


def parse_potential(text, space):
    """Parses a potential, canonicalizing words cyclically and merging coefficients."""
    terms: Dict[Letters, Fraction] = {}
    for coeff, names in _terms(text):
        if not names:
            if coeff:
                raise ExpressionError("potentials have no constant terms")
            continue
        letters = _letters(space, names)
        check_closed(space, letters)
        if not accumulate(space, terms, letters, coeff):
            logging.warning(f"symmetry-killed term: {'*'.join(names)}")
    return CyclicSeries(space, terms)


def parse_path(text, space, source=None, target=None):
    """Parses a path series; endpoints default to those of the first word."""
    items = []
    for coeff, names in _terms(text):
        letters = _letters(space, names)
        if letters:
            check_composable(space, letters)
            endpoints = (space.source[letters[0]], space.target[letters[-1]])
            if source is None:
                source, target = endpoints
            elif endpoints != (source, target):
                raise WordError(
                    f"word {'*'.join(names)} runs {endpoints[0]}->{endpoints[1]}, "
                    f"expected {source}->{target}"
                )
        items.append((letters, coeff))
    if source is None:
        if any(c for _, c in items):
            raise ExpressionError("cannot infer the endpoints of a constant path")
        raise ExpressionError("endpoints are required for the zero path")
    terms: Dict[Letters, Fraction] = {}
    for letters, coeff in items:
        terms[letters] = terms.get(letters, 0) + coeff
    return PathSeries(space, source, target, terms)


def _format(items, space):
    if not items:
        return "0"
    parts = []
    for n, (letters, coeff) in enumerate(items):
        sign = "-" if coeff < 0 else "+"
        magnitude = abs(coeff)
        body = "*".join(space.names(letters))
        if not letters:
            body = format_coefficient(magnitude)
        elif magnitude != 1:
            body = f"{format_coefficient(magnitude)}*{body}"
        if n == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def print_potential(series):
    return _format(series.items(), series.space)


def print_path(series):
    return _format(series.items(), series.space)


def print_word(space, letters):
    return "*".join(space.names(letters))

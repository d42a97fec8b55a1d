"""
Finite windows of the DGLAs controlling deformations of W_can.

ĝ is spanned by cyclic words, bigraded by (coh.deg n, cyc.deg k). Its
differential D = {W_can, ·} maps the piece (n, k) to (n + 1, k + 1), so
every piece and every matrix of D is finite. 𝔤_can collects the pieces
with k >= n + 2 and 𝔤 the rest; 𝔥 is spanned by words in x and ξ only.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .calculus import build_W_can, necklace_bracket
from .exceptions import ConsistencyError
from .expressions import print_word
from .utils import to_qq
from .words import CyclicSeries, Letters, canonical_words

FINITE_WINDOW = "finite window"
CACHE_SIZE = 512

_cached_space = None


@lru_cache(maxsize=CACHE_SIZE)
def _words_by_degree(space, k):
    pieces: Dict[int, List[Letters]] = {}
    for word in canonical_words(space, k):
        n = sum(space.degree[a] for a in word) + space.d - 2
        pieces.setdefault(n, []).append(word)
    logging.info(f"cyc.deg {k}: {sum(len(v) for v in pieces.values())} cyclic word(s)")
    return {n: tuple(words) for n, words in pieces.items()}


def coh_degrees(space, k):
    """coh.deg values with a nonempty piece at cyc.deg k."""
    if k < 1:
        return []
    return sorted(_words_by_degree(space, k))


@dataclass(frozen=True)
class BigradedPiece:
    d: int
    n: int
    k: int
    basis: Tuple[Letters, ...]
    in_g_can: bool
    in_h: Tuple[bool, ...]
    alpha_only: Tuple[bool, ...]
    no_alpha: Tuple[bool, ...]
    index: Dict[Letters, int] = field(compare=False, repr=False, hash=False, default_factory=dict)

    def __len__(self):
        return len(self.basis)


def _in_h(space, word, n, k):
    kinds = {space.kind[a] for a in word}
    if not kinds <= {"x", "xi"}:
        return False
    if n == 0:
        return k >= 2
    if n == 1:
        return k >= 3 and all(
            not (space.kind[a] == "xi" and space.degree[a] == 2 - space.d) for a in word
        )
    return False


@lru_cache(maxsize=CACHE_SIZE)
def bigraded_basis(space, n, k):
    """Canonical nonzero cyclic words of coh.deg n and cyc.deg k, with their flags."""
    words = _words_by_degree(space, k).get(n, ()) if k >= 1 else ()
    return BigradedPiece(
        d=space.d,
        n=n,
        k=k,
        basis=words,
        in_g_can=k >= n + 2,
        in_h=tuple(_in_h(space, w, n, k) for w in words),
        alpha_only=tuple(all(space.kind[a] == "alpha" for a in w) for w in words),
        no_alpha=tuple(all(space.kind[a] != "alpha" for a in w) for w in words),
        index={w: i for i, w in enumerate(words)},
    )


@dataclass(frozen=True)
class DifferentialMatrix:
    source: BigradedPiece
    target: BigradedPiece
    matrix: DomainMatrix

    def rank(self):
        if not len(self.source) or not len(self.target):
            return 0
        return self.matrix.rank()

    def column(self, j):
        return {i: row[j] for i, row in self.matrix.to_sdm().items() if j in row}

    def restricted(self, rows, cols):
        """Submatrix on the given target rows and source columns."""
        sdm = self.matrix.to_sdm()
        row_pos = {r: i for i, r in enumerate(rows)}
        col_pos = {c: j for j, c in enumerate(cols)}
        entries: Dict[int, Dict[int, object]] = {}
        for r, row in sdm.items():
            if r not in row_pos:
                continue
            picked = {col_pos[c]: v for c, v in row.items() if c in col_pos}
            if picked:
                entries[row_pos[r]] = picked
        return DomainMatrix(entries, (len(rows), len(cols)), QQ)


def _single(space, word):
    return CyclicSeries(space, {word: 1})


@lru_cache(maxsize=CACHE_SIZE)
def _matrix(space, n, k):
    source = bigraded_basis(space, n, k)
    target = bigraded_basis(space, n + 1, k + 1)
    w_can = build_W_can(space)
    rows: Dict[int, Dict[int, object]] = {}
    for j, word in enumerate(source.basis):
        image = necklace_bracket(w_can, _single(space, word))
        for target_word, coeff in image.terms.items():
            i = target.index.get(target_word)
            if i is None:
                raise ConsistencyError(
                    f"D({print_word(space, word)}) leaves the piece ({n + 1}, {k + 1})"
                )
            rows.setdefault(i, {})[j] = to_qq(coeff)
    return DifferentialMatrix(source, target, DomainMatrix(rows, (len(target), len(source)), QQ))


def clear_caches():
    global _cached_space
    _cached_space = None
    for cached in (_words_by_degree, bigraded_basis, _matrix):
        cached.cache_clear()


def _use_space(space):
    """Drops the cached pieces when the window code moves to another space."""
    global _cached_space
    if _cached_space is not None and _cached_space is not space:
        clear_caches()
    _cached_space = space


def _is_zero_product(second, first):
    if 0 in (first.matrix.shape[1], first.matrix.shape[0], second.matrix.shape[0]):
        return True
    return second.matrix.matmul(first.matrix).is_zero_matrix


def differential_matrix(space, n, k):
    """Matrix of D from (n, k) to (n + 1, k + 1); D² = 0 is checked on every call."""
    first = _matrix(space, n, k)
    second = _matrix(space, n + 1, k + 1)
    if not _is_zero_product(second, first):
        raise ConsistencyError(f"D² does not vanish on the piece ({n}, {k})")
    return first


def _rank_in(space, n, k):
    if k - 1 < 1:
        return 0
    return differential_matrix(space, n - 1, k - 1).rank()


def _alpha_ranks(space, n, k):
    out = differential_matrix(space, n, k)
    cols = [j for j, flag in enumerate(out.source.alpha_only) if flag]
    rows = [i for i, flag in enumerate(out.target.alpha_only) if flag]
    rank_out = out.restricted(rows, cols).rank() if rows and cols else 0
    rank_in = 0
    if k - 1 >= 1:
        into = differential_matrix(space, n - 1, k - 1)
        cols_in = [j for j, flag in enumerate(into.source.alpha_only) if flag]
        if cols and cols_in:
            rank_in = into.restricted(cols, cols_in).rank()
    return len(cols), rank_out, rank_in


@dataclass
class CohomologyRow:
    n: int
    k: int
    dim: int
    dim_g_can: int
    dim_g: int
    rank_d: int
    dim_h: int
    dim_alpha: int
    h_alpha: int
    dim_no_alpha: int

    def to_dict(self):
        return dict(self.__dict__)


@dataclass
class CohomologyTable:
    d: int
    window: int
    rows: List[CohomologyRow] = field(default_factory=list)
    nonpositive_violations: List[str] = field(default_factory=list)
    vanishing_violations: List[Tuple[int, int]] = field(default_factory=list)
    caveat: str = FINITE_WINDOW

    def totals(self, part="all"):
        """Σ_k dim H at each n for the whole window, or for the g_can / g part."""
        sums: Dict[int, int] = {}
        for row in self.rows:
            in_g_can = row.k >= row.n + 2
            if part == "g_can" and not in_g_can or part == "g" and in_g_can:
                continue
            sums[row.n] = sums.get(row.n, 0) + row.dim_h
        return dict(sorted(sums.items()))

    def row(self, n, k):
        for r in self.rows:
            if (r.n, r.k) == (n, k):
                return r
        return None

    def to_dict(self):
        return {
            "d": self.d,
            "window": self.window,
            "rows": [r.to_dict() for r in self.rows],
            "h_g_can": self.totals("g_can"),
            "h_g": self.totals("g"),
            "nonpositive_violations": self.nonpositive_violations,
            "vanishing_violations": [list(p) for p in self.vanishing_violations],
            "caveat": self.caveat,
        }


def cohomology_ranks(space, window):
    """dim H at every bidegree (n, k) with 1 <= k <= window, by exact rational rank."""
    _use_space(space)
    table = CohomologyTable(space.d, window)
    for k in range(1, window + 1):
        for n in coh_degrees(space, k):
            piece = bigraded_basis(space, n, k)
            rank_out = differential_matrix(space, n, k).rank()
            rank_in = _rank_in(space, n, k)
            dim_alpha, alpha_out, alpha_in = _alpha_ranks(space, n, k)
            dim_g_can = len(piece) if piece.in_g_can else 0
            row = CohomologyRow(
                n=n,
                k=k,
                dim=len(piece),
                dim_g_can=dim_g_can,
                dim_g=0 if piece.in_g_can else len(piece),
                rank_d=rank_out,
                dim_h=len(piece) - rank_out - rank_in,
                dim_alpha=dim_alpha,
                h_alpha=dim_alpha - alpha_out - alpha_in,
                dim_no_alpha=sum(piece.no_alpha),
            )
            table.rows.append(row)
            for word, flag in zip(piece.basis, piece.no_alpha):
                if flag and n > space.d - 2:
                    table.nonpositive_violations.append(print_word(space, word))
            if piece.in_g_can and n > space.d - 2 and row.dim_h:
                table.vanishing_violations.append((n, k))
            logging.info(f"piece ({n}, {k}): dim {row.dim}, rank D {rank_out}, dim H {row.dim_h}")
    return table


@dataclass
class PsiReport:
    window: int
    outside_g_can: List[str] = field(default_factory=list)
    not_closed: List[str] = field(default_factory=list)
    bracket_violations: List[str] = field(default_factory=list)
    nontrivial_differential: List[str] = field(default_factory=list)
    comparison: List[dict] = field(default_factory=list)
    caveat: str = FINITE_WINDOW

    @property
    def passed(self):
        return not (
            self.outside_g_can or self.not_closed or self.bracket_violations or self.nontrivial_differential
        )

    def to_dict(self):
        data = dict(self.__dict__)
        data["pass"] = self.passed
        return data


def _h_words(space, n, k):
    piece = bigraded_basis(space, n, k)
    return [w for w, flag in zip(piece.basis, piece.in_h) if flag]


def psi_probe(space, window, samples=6):
    """
    Ψ: 𝔥 -> 𝔤_can as the inclusion of 𝔥-flagged words: lands in 𝔤_can,
    kills D in coh.deg 1, respects brackets on sampled pairs, and has
    trivial differential on 𝔥. Ranks of 𝔥^i and H^i(𝔤_can) are compared
    per cyc.deg for i in {0, 1, 2}.
    """
    _use_space(space)
    report = PsiReport(window)
    h_words = {(n, k): _h_words(space, n, k) for k in range(1, window + 1) for n in (0, 1)}
    for (n, k), words in h_words.items():
        piece = bigraded_basis(space, n, k)
        if words and not piece.in_g_can:
            report.outside_g_can.extend(print_word(space, w) for w in words)
        if not words:
            continue
        matrix = differential_matrix(space, n, k)
        target = matrix.target
        for w in words:
            column = matrix.column(piece.index[w])
            if n == 1 and column:
                report.not_closed.append(print_word(space, w))
            if any(target.in_h[i] for i in column):
                report.nontrivial_differential.append(print_word(space, w))

    h0 = [w for (n, _), words in sorted(h_words.items()) if n == 0 for w in words][:samples]
    h1 = [w for (n, _), words in sorted(h_words.items()) if n == 1 for w in words][:samples]
    for first in h0:
        for second, expected_n in [(w, 0) for w in h0] + [(w, 1) for w in h1]:
            result = necklace_bracket(_single(space, first), _single(space, second))
            for word in result.terms:
                k = len(word)
                if k > window or word not in h_words.get((expected_n, k), ()):
                    if k <= window:
                        report.bracket_violations.append(
                            f"{{{print_word(space, first)}, {print_word(space, second)}}}"
                        )
                    break

    table = cohomology_ranks(space, window)
    for i in (0, 1, 2):
        for k in range(1, window + 1):
            row = table.row(i, k)
            h_dim = len(h_words.get((i, k), ()))
            report.comparison.append(
                {
                    "i": i,
                    "k": k,
                    "dim_h": h_dim,
                    "dim_H_g_can": row.dim_h if row is not None and k >= i + 2 else 0,
                }
            )
    return report

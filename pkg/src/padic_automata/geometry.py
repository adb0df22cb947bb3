"""Geometric images of maps and machines, with exact box-counting.

A run pairs an input word with an output word.  Words embed into [0, 1]
by the digit-mirror rule: the FIRST-consumed letter becomes the most
significant base-p fractional digit, so a word w of length L maps to
0.w_0 w_1 ... w_{L-1} in base p.  Under this embedding the grid cell of
side p^-m that a point lands in is determined by the length-m prefixes
of the words, the quantity an n-unit delay actually controls (m output
letters are pinned by m+n input letters).  Mirroring is a bijection on
each level, so per-level point counts, diagonal structure, and coverage
fractions of prefix-transitive families are unchanged; what it buys is
that refining a run (reading more letters) keeps the point inside the
cell of its prefix.

The (p+1)-ary machine graph uses the same first-letter-most-significant
rule with symbols renumbered 1..p, landing in [1, p+1]^2.

All coordinates are exact rationals; cover fractions are exact; the PGM
rasterizer is byte-deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .errors import BudgetExceededError
from .oracle import FunctionOracle
from .transducer import SyncTransducer, reachable_states, run_sync, word_of

__all__ = [
    "CoverReport",
    "PointSet2D",
    "accumulate_image",
    "automaton_graph",
    "cover_fraction",
    "family_image",
    "family_points",
    "image_points",
    "mirror_fraction",
    "render_pgm",
]


def mirror_fraction(value: int, length: int, p: int) -> Fraction:
    """Embed the length-``length`` word of ``value`` into [0, 1).

    The first-consumed (least significant) digit of ``value`` becomes the
    most significant fractional digit.
    """
    v = value % p ** length
    num = 0
    for _ in range(length):
        v, d = divmod(v, p)
        num = num * p + d
    return Fraction(num, p ** length)


@dataclass(frozen=True)
class PointSet2D:
    """Deduplicated exact points in a declared bounding square.

    ``square`` is (lo, hi); run-image sets live in [0, 1], machine graphs
    in [1, p+1].  ``levels`` records which word lengths / reduction levels
    contributed.
    """

    p: int
    n: int
    levels: tuple[int, ...]
    square: tuple[int, int]
    points: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        lo, hi = self.square
        for x, y in self.points:
            if not (lo <= x <= hi and lo <= y <= hi):
                raise ValueError(f"point ({x}, {y}) outside [{lo}, {hi}]^2")

    @staticmethod
    def union(sets: Sequence["PointSet2D"]) -> "PointSet2D":
        if not sets:
            raise ValueError("cannot union zero point sets")
        first = sets[0]
        pts: set[tuple[Fraction, Fraction]] = set()
        levels: list[int] = []
        for ps in sets:
            if (ps.p, ps.square) != (first.p, first.square):
                raise ValueError("point sets disagree on prime or square")
            pts.update(ps.points)
            levels.extend(ps.levels)
        return PointSet2D(
            p=first.p,
            n=first.n,
            levels=tuple(sorted(set(levels))),
            square=first.square,
            points=tuple(sorted(pts)),
        )


def image_points(
    f: FunctionOracle, k: int, budget: int = 1 << 24
) -> PointSet2D:
    """Level-k image of an oracle: one point per residue x mod p^(n+k),
    pairing the input word of length n+k with the output word of length k.
    """
    if k < 1:
        raise ValueError(f"level must be >= 1, got {k}")
    p, n = f.p, f.delay
    dom = p ** (n + k)
    if dom > budget:
        raise BudgetExceededError(
            f"level {k} needs {p}^{n + k} evaluations, over the budget {budget}"
        )
    outs = f.values(k, dom)
    pts = {
        (mirror_fraction(x, n + k, p), mirror_fraction(outs[x], k, p))
        for x in range(dom)
    }
    return PointSet2D(
        p=p, n=n, levels=(k,), square=(0, 1), points=tuple(sorted(pts))
    )


def accumulate_image(
    f: FunctionOracle, levels: Iterable[int], budget: int = 1 << 24
) -> PointSet2D:
    """Union of :func:`image_points` over the given levels."""
    sets = [image_points(f, k, budget) for k in levels]
    return PointSet2D.union(sets)


@dataclass(frozen=True)
class CoverReport:
    """Occupied cells of the p^m-by-p^m grid over the bounding square.

    ``fraction`` is exact: occupied / p^(2m).  The cell list is kept so
    reports can be rendered and compared deterministically.
    """

    p: int
    n: int
    levels: tuple[int, ...]
    m: int
    occupied: int
    fraction: Fraction
    cells: tuple[tuple[int, int], ...]
    square: tuple[int, int] = (0, 1)


def _cell_index(coord: Fraction, lo: int, hi: int, grid: int) -> int:
    scaled = (coord - lo) * grid / (hi - lo)
    idx = int(scaled)  # floor for the nonnegative values in range
    return min(idx, grid - 1)


def cover_fraction(points: PointSet2D, m: int) -> CoverReport:
    """Grid the point set at resolution m (cells of side (hi-lo) * p^-m)."""
    if m < 1:
        raise ValueError(f"resolution must be >= 1, got {m}")
    grid = points.p ** m
    lo, hi = points.square
    cells = {
        (_cell_index(x, lo, hi, grid), _cell_index(y, lo, hi, grid))
        for x, y in points.points
    }
    return CoverReport(
        p=points.p,
        n=points.n,
        levels=points.levels,
        m=m,
        occupied=len(cells),
        fraction=Fraction(len(cells), grid * grid),
        cells=tuple(sorted(cells)),
        square=points.square,
    )


def family_points(
    t: SyncTransducer, depth: int, budget: int = 1 << 24
) -> PointSet2D:
    """Image points of the whole state family of a synchronous machine.

    For every state s known at ``depth`` and every input word u of length
    j <= depth, the run of the machine started at s contributes the point
    (embed(u), embed(output)).  The union over states is what the closure
    of the single-run image accumulates: a long run passes through s and
    then behaves like the machine started there.
    """
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    p = t.p
    states = reachable_states(t, depth)
    runs = len(states) * sum(p ** j for j in range(1, depth + 1))
    if runs > budget:
        raise BudgetExceededError(
            f"family image needs {runs} runs, over the budget {budget}"
        )
    pts: set[tuple[Fraction, Fraction]] = set()
    for s in states:
        for j in range(1, depth + 1):
            for u in range(p ** j):
                word = word_of(u, j, p)
                out = run_sync(t, word, start=s)
                pts.add(
                    (
                        mirror_fraction(u, j, p),
                        Fraction(_word_mirror_value(out, p), p ** j),
                    )
                )
    return PointSet2D(
        p=p,
        n=0,
        levels=tuple(range(1, depth + 1)),
        square=(0, 1),
        points=tuple(sorted(pts)),
    )


def _word_mirror_value(word: Sequence[int], p: int) -> int:
    num = 0
    for d in word:
        num = num * p + d
    return num


def family_image(
    t: SyncTransducer, depth: int, m: int, budget: int = 1 << 24
) -> CoverReport:
    """Cover report of the family image at resolution m."""
    return cover_fraction(family_points(t, depth, budget), m)


def automaton_graph(t: SyncTransducer, depth: int) -> PointSet2D:
    """The (p+1)-ary graph of the machine's initial-state function.

    Each nonempty input word u of length <= depth yields the point
    (arrow(u), arrow(output)) in [1, p+1]^2, where
    arrow(w) = sum_i (w_i + 1) * (p+1)^-i over the letters in consumed
    order (symbols renumbered 1..p, order-preservingly).
    """
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    p = t.p
    base = p + 1
    pts: set[tuple[Fraction, Fraction]] = set()
    for j in range(1, depth + 1):
        den = base ** (j - 1)
        for u in range(p ** j):
            word = word_of(u, j, p)
            out = run_sync(t, word)
            pts.add(
                (
                    Fraction(_arrow_value(word, base), den),
                    Fraction(_arrow_value(out, base), den),
                )
            )
    return PointSet2D(
        p=p,
        n=0,
        levels=tuple(range(1, depth + 1)),
        square=(1, p + 1),
        points=tuple(sorted(pts)),
    )


def _arrow_value(word: Sequence[int], base: int) -> int:
    # numerator of sum_i (w_i + 1) * base^-i over the denominator base^(len-1):
    # the first-consumed letter carries the largest weight
    num = 0
    power = len(word) - 1
    for d in word:
        num += (d + 1) * base ** power
        power -= 1
    return num


def render_pgm(
    source: PointSet2D | CoverReport, m: int, path: str | Path
) -> bytes:
    """Write a binary PGM: occupied cells black, origin at the lower left.

    Accepts a point set (gridded here at resolution m) or a ready cover
    report (whose resolution must match m).  Returns the bytes written.
    """
    if isinstance(source, PointSet2D):
        report = cover_fraction(source, m)
    else:
        if source.m != m:
            raise ValueError(
                f"cover report was gridded at m={source.m}, asked to render m={m}"
            )
        report = source
    grid = report.p ** m
    occupied = set(report.cells)
    rows = bytearray()
    for row in range(grid - 1, -1, -1):  # top scanline first, origin bottom-left
        for col in range(grid):
            rows.append(0 if (col, row) in occupied else 255)
    data = b"P5\n%d %d\n255\n" % (grid, grid) + bytes(rows)
    Path(path).write_bytes(data)
    return data

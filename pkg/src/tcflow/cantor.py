"""Exact piecewise-affine dynamics on the Cantor square, embedded in the disc.

Digit scheme: with alphabet size m the base is b = 2m and the symbol with
index d maps to digit 2d, so all encoded points have even base-b digits
(the classical middle-gaps construction).  The forward tape (indices
0, 1, ...) fills the base-b digits of x, the backward tape (indices
-1, -2, ...) fills the digits of y:

    x = sum_{i>=0} 2 idx(s_i) b^-(i+1),    y = sum_{i>=1} 2 idx(s_-i) b^-i.

A generalized shift becomes one affine piece per window word.  Substitution
is a translation; a dot shift multiplies x by b^g and y by b^-g plus a
digit carry, so every piece has determinant exactly 1.  All arithmetic in
this module is exact rational; floats never enter the symbolic chain.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .gshift import widen_window


class DomainError(ValueError):
    """Point outside every block of a piecewise map."""


@dataclass(frozen=True)
class CantorPoint:
    x: Fraction
    y: Fraction
    base: int


@dataclass(frozen=True)
class DiscPoint:
    u: Fraction
    v: Fraction


@dataclass(frozen=True)
class Rect:
    """Half-open rectangle [x0, x0+wx) x [y0, y0+wy)."""

    x0: Fraction
    y0: Fraction
    wx: Fraction
    wy: Fraction

    def contains(self, x, y):
        return self.x0 <= x < self.x0 + self.wx and self.y0 <= y < self.y0 + self.wy

    def overlaps(self, other):
        return (
            self.x0 < other.x0 + other.wx
            and other.x0 < self.x0 + self.wx
            and self.y0 < other.y0 + other.wy
            and other.y0 < self.y0 + self.wy
        )


@dataclass(frozen=True)
class OpenRect:
    """Open rectangle (x0, x1) x (y0, y1)."""

    x0: Fraction
    x1: Fraction
    y0: Fraction
    y1: Fraction

    def contains(self, x, y):
        return self.x0 < x < self.x1 and self.y0 < y < self.y1


@dataclass(frozen=True)
class AffinePiece:
    """(x, y) -> (sx*x + ax, sy*y + ay) on its block rectangle."""

    word: tuple
    block: Rect
    sx: Fraction
    ax: Fraction
    sy: Fraction
    ay: Fraction

    def apply(self, x, y):
        return self.sx * x + self.ax, self.sy * y + self.ay

    def det(self):
        return self.sx * self.sy

    def image_rect(self):
        return Rect(self.sx * self.block.x0 + self.ax, self.sy * self.block.y0 + self.ay,
                    self.sx * self.block.wx, self.sy * self.block.wy)


@dataclass(frozen=True)
class BlockMap:
    alphabet: tuple
    base: int
    lo: int
    hi: int
    pieces: dict  # window word -> AffinePiece

    def digit_of(self, sym):
        return 2 * self.alphabet.index(sym)


def symbol_digit(alphabet, sym):
    return 2 * alphabet.index(sym)


def encode_point(seq, alphabet) -> CantorPoint:
    """Exact coordinates of a sequence; constant fill tails sum geometrically."""
    b = 2 * len(alphabet)
    fill_d = symbol_digit(alphabet, seq.fill)

    def side(word):
        n = len(word)
        num = 0
        for sym in word:
            num = num * b + symbol_digit(alphabet, sym)
        val = Fraction(num, b**n)
        if fill_d:
            val += Fraction(fill_d, b**n * (b - 1))
        return val

    return CantorPoint(side(seq.right), side(seq.left), b)


def digits_of(x, base, depth):
    """First ``depth`` base-b digits of x in [0,1), floor semantics."""
    out = []
    for _ in range(depth):
        x *= base
        d = int(x)
        out.append(d)
        x -= d
    return out


def is_cantor_coord(x, base):
    """True when x has an eventually periodic base-b expansion with even digits only."""
    if not 0 <= x < 1:
        return False
    seen = {}
    while x not in seen:
        seen[x] = True
        x *= base
        d = int(x)
        if d % 2:
            return False
        x -= d
    return True


def gs_to_block_map(gs) -> BlockMap:
    """One determinant-1 affine piece per window word.

    A left shift consumes the digit at index -1, so the window is widened
    to include it when any word shifts left.
    """
    if any(g == -1 for g in gs.shift.values()) and gs.lo > -1:
        gs = widen_window(gs, -1, gs.hi)
    alphabet = gs.alphabet
    b = 2 * len(alphabet)
    lo, hi = gs.lo, gs.hi
    dig = {s: symbol_digit(alphabet, s) for s in alphabet}

    def corner(word):
        x0 = sum(Fraction(dig[word[i - lo]], b ** (i + 1)) for i in range(0, hi + 1))
        y0 = sum(Fraction(dig[word[-i - lo]], b**i) for i in range(1, -lo + 1))
        return x0, y0

    wx = Fraction(1, b ** (hi + 1))
    wy = Fraction(1, b ** (-lo)) if lo < 0 else Fraction(1)
    pieces = {}
    for w in gs.subst:
        f = gs.subst[w]
        g = gs.shift[w]
        x0w, y0w = corner(w)
        x0f, y0f = corner(f)
        tx, ty = x0f - x0w, y0f - y0w  # substitution is a pure translation
        if g == 0:
            sx, ax, sy, ay = Fraction(1), tx, Fraction(1), ty
        elif g == 1:
            d0 = dig[f[-lo]]  # digit written at index 0
            sx, ax = Fraction(b), b * tx - d0
            sy, ay = Fraction(1, b), Fraction(ty + d0, b)
        else:
            dm1 = dig[f[-1 - lo]]  # digit written at index -1
            sx, ax = Fraction(1, b), Fraction(tx + dm1, b)
            sy, ay = Fraction(b), b * ty - dm1
        pieces[w] = AffinePiece(w, Rect(x0w, y0w, wx, wy), sx, ax, sy, ay)
    return BlockMap(alphabet, b, lo, hi, pieces)


def locate_block(m, p):
    """Window word of the block containing p, or None for off-block points."""
    xd = digits_of(p.x, m.base, m.hi + 1)
    yd = digits_of(p.y, m.base, -m.lo)
    word = []
    for i in range(m.lo, m.hi + 1):
        d = yd[-i - 1] if i < 0 else xd[i]
        if d % 2 or d // 2 >= len(m.alphabet):
            return None
        word.append(m.alphabet[d // 2])
    w = tuple(word)
    return w if w in m.pieces else None


def block_map_apply(m, p) -> CantorPoint:
    w = locate_block(m, p)
    if w is None:
        raise DomainError(f"point ({p.x}, {p.y}) lies outside every block")
    x, y = m.pieces[w].apply(p.x, p.y)
    return CantorPoint(x, y, m.base)


HALF = Fraction(1, 2)


def embed_square_in_disc(p) -> DiscPoint:
    """Center the unit square in the disc; determinant-1 translation."""
    return DiscPoint(p.x - HALF, p.y - HALF)


def unembed_disc_point(q, base) -> CantorPoint:
    return CantorPoint(q.u + HALF, q.v + HALF, base)


def in_embedded_square(q):
    return -HALF <= q.u < HALF and -HALF <= q.v < HALF


def disc_map(m, q) -> DiscPoint:
    """The compiled disc dynamics: block map inside the embedded square,
    identity outside."""
    if not in_embedded_square(q):
        return q
    p = block_map_apply(m, unembed_disc_point(q, m.base))
    return embed_square_in_disc(p)


def halting_words(m, halt_state):
    """Window words showing a (halt, symbol) pair anywhere."""
    return [
        w
        for w in m.pieces
        if any(isinstance(s, tuple) and s[0] == halt_state for s in w)
    ]


@dataclass(frozen=True)
class HaltingRegion:
    """Open neighbourhood of the halting blocks.

    Each block is enlarged by half the minimal gap separating Cantor points
    of distinct blocks, so the union is open yet contains no non-halting
    Cantor point.
    """

    rects: tuple
    words: frozenset
    block_map: BlockMap

    def contains(self, p) -> bool:
        w = locate_block(self.block_map, p)
        if w is not None:
            return w in self.words
        return any(r.contains(p.x, p.y) for r in self.rects)

    def contains_disc(self, q) -> bool:
        if not in_embedded_square(q):
            return False
        return self.contains(unembed_disc_point(q, self.block_map.base))


def halting_region(m, halt_state) -> HaltingRegion:
    b = m.base
    eps = Fraction(1, 2 * b * (b - 1))  # half the tightest inter-block Cantor gap
    words = halting_words(m, halt_state)
    rects = tuple(
        OpenRect(
            m.pieces[w].block.x0 - eps,
            m.pieces[w].block.x0 + m.pieces[w].block.wx + eps,
            m.pieces[w].block.y0 - eps,
            m.pieces[w].block.y0 + m.pieces[w].block.wy + eps,
        )
        for w in words
    )
    return HaltingRegion(rects, frozenset(words), m)

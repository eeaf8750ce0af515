"""Generalized shifts on bi-infinite symbol sequences.

A generalized shift reads a fixed window of cells around the dot,
substitutes the window word through a table F, then shifts the dot by an
amount given by a table G.  Machines compile to generalized shifts over a
composite alphabet: plain tape symbols plus (state, symbol) pairs, with the
pair sitting on the head cell.  Encoded halted configurations are fixed
points of the compiled shift.
"""

from dataclasses import dataclass
from itertools import product

from .tm import Halted, TapeConfig, normalize_config, run_bounded, tm_step

# a symbol is either a plain tape symbol (str) or a (state, symbol) pair


def is_composite(sym):
    return isinstance(sym, tuple)


def sym_str(sym):
    return f"{sym[0]}:{sym[1]}" if is_composite(sym) else str(sym)


@dataclass(frozen=True)
class BiInfiniteSeq:
    """Canonical two-sided sequence: stored words plus a constant fill.

    ``left`` holds indices -1, -2, ... outward, ``right`` holds 0, 1, ...
    Trailing fill symbols are stripped, so equality is decidable.
    """

    left: tuple
    right: tuple
    fill: str

    def at(self, i):
        if i >= 0:
            return self.right[i] if i < len(self.right) else self.fill
        j = -i - 1
        return self.left[j] if j < len(self.left) else self.fill

    def window(self, lo, hi):
        return tuple(self.at(i) for i in range(lo, hi + 1))


def make_seq(left, right, fill):
    def strip(word):
        i = len(word)
        while i > 0 and word[i - 1] == fill:
            i -= 1
        return tuple(word[:i])

    return BiInfiniteSeq(strip(tuple(left)), strip(tuple(right)), fill)


@dataclass(frozen=True)
class GeneralizedShift:
    alphabet: tuple
    lo: int  # window start, <= 0
    hi: int  # window end, >= 0
    subst: dict  # window word -> window word, length preserved
    shift: dict  # window word -> -1 | 0 | +1

    @property
    def width(self):
        return self.hi - self.lo + 1


def gs_step(gs, s):
    """Substitute the window word, then shift the dot."""
    w = s.window(gs.lo, gs.hi)
    new = gs.subst[w]
    g = gs.shift[w]
    left = list(s.left)
    right = list(s.right)
    for k, i in enumerate(range(gs.lo, gs.hi + 1)):
        if i >= 0:
            while len(right) <= i:
                right.append(s.fill)
            right[i] = new[k]
        else:
            j = -i - 1
            while len(left) <= j:
                left.append(s.fill)
            left[j] = new[k]
    if g == 1:
        if not right:
            right.append(s.fill)
        left = [right[0]] + left
        right = right[1:]
    elif g == -1:
        if not left:
            left.append(s.fill)
        right = [left[0]] + right
        left = left[1:]
    elif g != 0:
        raise ValueError(f"shift amount {g} outside {{-1,0,1}}")
    return make_seq(left, right, s.fill)


def composite_alphabet(tm):
    """Plain tape symbols followed by (state, symbol) pairs, in declared order."""
    return tuple(tm.alphabet) + tuple((q, a) for q in tm.states for a in tm.alphabet)


def encode_config(tm, c):
    """Embed a configuration: the head cell carries the (state, symbol) pair."""
    c = normalize_config(tm, c)
    return make_seq(c.left, ((c.state, c.head_symbol),) + c.right, tm.blank)


def decode_seq(tm, s):
    """Inverse of encode_config; None when the sequence is not a valid encoding."""
    comps = [i for i in range(-len(s.left), len(s.right)) if is_composite(s.at(i))]
    if comps != [0]:
        return None
    q, a = s.at(0)
    if q not in tm.states or a not in tm.alphabet:
        return None
    return normalize_config(tm, TapeConfig(q, s.left, a, s.right[1:]))


def tm_to_gs(tm):
    """Compile a machine to a generalized shift with window [-1, 1].

    Window words with a (state, symbol) pair on the dot cell step the
    machine: the written symbol replaces the dot cell, the pair moves to
    the neighbour in the move direction, and the dot follows it.  Every
    other word (halted, stuck, or with no pair on the dot) is left fixed.
    """
    alphabet = composite_alphabet(tm)
    subst = {}
    shift = {}
    for w in product(alphabet, repeat=3):
        wl, wc, wr = w
        new, g = w, 0
        if is_composite(wc) and not is_composite(wl) and not is_composite(wr):
            q, a = wc
            rule = tm.delta.get((q, a)) if q != tm.halt else None
            if rule is not None:
                q2, a2, mv = rule
                if mv == "R":
                    new, g = (wl, a2, (q2, wr)), 1
                else:
                    new, g = ((q2, wl), a2, wr), -1
        subst[w] = new
        shift[w] = g
    return GeneralizedShift(alphabet, -1, 1, subst, shift)


def widen_window(gs, lo, hi):
    """Equivalent shift over an enlarged window (padding acts as identity)."""
    if lo > gs.lo or hi < gs.hi:
        raise ValueError("window can only grow")
    if (lo, hi) == (gs.lo, gs.hi):
        return gs
    a, b = gs.lo - lo, gs.hi - lo + 1
    subst = {}
    shift = {}
    for w in product(gs.alphabet, repeat=hi - lo + 1):
        core = w[a:b]
        subst[w] = w[:a] + gs.subst[core] + w[b:]
        shift[w] = gs.shift[core]
    return GeneralizedShift(gs.alphabet, lo, hi, subst, shift)


@dataclass(frozen=True)
class ConjugacyReport:
    ok: bool
    steps: int
    first_divergence: int  # -1 when the diagram commutes
    detail: str = ""


def check_conjugacy_tm_gs(tm, c, n) -> ConjugacyReport:
    """Assert encode(step^k(c)) == gs_step^k(encode(c)) for all k <= n."""
    gs = tm_to_gs(tm)
    trace = run_bounded(tm, c, n)
    s = encode_config(tm, normalize_config(tm, c))
    cur = trace.configs[0]
    for k in range(n + 1):
        if encode_config(tm, cur) != s:
            return ConjugacyReport(False, n, k, f"divergence at step {k}")
        if k == n:
            break
        nxt = tm_step(tm, cur)
        cur = nxt.config if isinstance(nxt, Halted) else nxt
        s = gs_step(gs, s)
    return ConjugacyReport(True, n, -1)


def format_gs_table(gs):
    """Debug dump, one line per window word: ``w -> F(w) G(w)``."""
    lines = [f"window [{gs.lo},{gs.hi}]  alphabet {len(gs.alphabet)}"]
    for w in sorted(gs.subst, key=lambda w: tuple(map(sym_str, w))):
        lhs = " ".join(map(sym_str, w))
        rhs = " ".join(map(sym_str, gs.subst[w]))
        lines.append(f"{lhs} -> {rhs} {gs.shift[w]:+d}")
    return "\n".join(lines) + "\n"

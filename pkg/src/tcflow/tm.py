"""Deterministic single-tape Turing machines: parsing, stepping, bounded runs.

Conventions used throughout the package:
  * the head sits on cell 0; ``left`` stores cells -1, -2, ... outward and
    ``right`` stores cells 1, 2, ... outward,
  * trailing blanks are stripped, so equal configurations compare equal,
  * a missing transition halts the machine in place (machines are total
    without a dedicated reject state).
"""

from dataclasses import dataclass, field
from typing import Mapping, Union

MOVES = ("L", "R")


class TMError(ValueError):
    """Base class for machine specification errors."""


class TMSyntaxError(TMError):
    def __init__(self, msg, line, col=None):
        loc = f"line {line}" + (f", col {col}" if col is not None else "")
        super().__init__(f"{loc}: {msg}")
        self.line = line
        self.col = col


class TMSemanticError(TMError):
    def __init__(self, msg, line=None):
        super().__init__(f"line {line}: {msg}" if line is not None else msg)
        self.line = line


@dataclass(frozen=True)
class TuringMachine:
    alphabet: tuple
    blank: str
    states: tuple
    start: str
    halt: str
    delta: Mapping  # (state, symbol) -> (state, symbol, move)

    def __post_init__(self):
        if self.blank not in self.alphabet:
            raise TMSemanticError(f"blank symbol {self.blank!r} not in alphabet")
        for s in (self.start, self.halt):
            if s not in self.states:
                raise TMSemanticError(f"state {s!r} not declared")
        for (q, a), (q2, a2, mv) in self.delta.items():
            if q == self.halt:
                raise TMSemanticError(f"transition from halt state {q!r}")
            if q not in self.states or q2 not in self.states:
                raise TMSemanticError(f"unknown state in transition ({q},{a})")
            if a not in self.alphabet or a2 not in self.alphabet:
                raise TMSemanticError(f"unknown symbol in transition ({q},{a})")
            if mv not in MOVES:
                raise TMSemanticError(f"bad move {mv!r} in transition ({q},{a})")


@dataclass(frozen=True)
class TapeConfig:
    state: str
    left: tuple = ()       # cells -1, -2, ... outward
    head_symbol: str = ""  # cell 0
    right: tuple = ()      # cells 1, 2, ... outward


@dataclass(frozen=True)
class Halted:
    config: TapeConfig


@dataclass(frozen=True)
class Trace:
    configs: tuple
    halted: bool
    steps: int  # step at which the halt was detected, or the exhausted budget

    @property
    def final(self):
        return self.configs[-1]


def _strip(word, blank):
    i = len(word)
    while i > 0 and word[i - 1] == blank:
        i -= 1
    return tuple(word[:i])


def normalize_config(tm, c):
    """Canonical form: trailing blanks removed from both half-tapes."""
    head = c.head_symbol if c.head_symbol else tm.blank
    return TapeConfig(c.state, _strip(c.left, tm.blank), head, _strip(c.right, tm.blank))


def initial_config(tm, right=(), left=(), head_symbol=None, state=None):
    """Build a canonical starting configuration (blank tape by default)."""
    return normalize_config(
        tm,
        TapeConfig(
            state if state is not None else tm.start,
            tuple(left),
            head_symbol if head_symbol is not None else tm.blank,
            tuple(right),
        ),
    )


def tm_step(tm, c) -> Union[TapeConfig, Halted]:
    """One transition; ``Halted`` when in the halt state or no rule applies."""
    c = normalize_config(tm, c)
    if c.state == tm.halt:
        return Halted(c)
    rule = tm.delta.get((c.state, c.head_symbol))
    if rule is None:
        return Halted(c)
    q2, a2, mv = rule
    if mv == "R":
        left = (a2,) + c.left
        head = c.right[0] if c.right else tm.blank
        right = c.right[1:]
    else:
        right = (a2,) + c.right
        head = c.left[0] if c.left else tm.blank
        left = c.left[1:]
    return normalize_config(tm, TapeConfig(q2, left, head, right))


def run_bounded(tm, c, n_max) -> Trace:
    """Run at most ``n_max`` transitions, recording every configuration."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    c = normalize_config(tm, c)
    configs = [c]
    for n in range(n_max + 1):
        nxt = tm_step(tm, c)
        if isinstance(nxt, Halted):
            return Trace(tuple(configs), True, n)
        if n == n_max:
            break
        c = nxt
        configs.append(c)
    return Trace(tuple(configs), False, n_max)


def tape_symbols(tm, c, lo, hi):
    """Symbols of cells lo..hi inclusive (head at cell 0)."""
    out = []
    for i in range(lo, hi + 1):
        if i == 0:
            out.append(c.head_symbol)
        elif i < 0:
            j = -i - 1
            out.append(c.left[j] if j < len(c.left) else tm.blank)
        else:
            j = i - 1
            out.append(c.right[j] if j < len(c.right) else tm.blank)
    return tuple(out)


_KEYWORDS = ("alphabet", "blank", "states", "start", "halt", "delta")


def parse_tm(text) -> TuringMachine:
    """Parse the line-oriented machine grammar.

    One declaration per line, ``#`` starts a comment::

        alphabet: <sym> <sym> ...
        blank: <sym>
        states: <name> <name> ...
        start: <name>
        halt: <name>
        delta: <state> <sym> -> <state> <sym> <L|R>
    """
    decls = {}
    delta = {}
    delta_lines = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if ":" not in line:
            raise TMSyntaxError("expected '<keyword>: ...'", lineno, line.index(line.strip()[0]) + 1)
        key, _, rest = line.partition(":")
        key = key.strip()
        if key not in _KEYWORDS:
            raise TMSyntaxError(f"unknown keyword {key!r}", lineno, 1)
        toks = rest.split()
        if key == "delta":
            if len(toks) != 6 or toks[2] != "->":
                raise TMSyntaxError("expected 'delta: <state> <sym> -> <state> <sym> <L|R>'", lineno)
            q, a, _, q2, a2, mv = toks
            if mv not in MOVES:
                raise TMSyntaxError(f"move must be L or R, got {mv!r}", lineno)
            if (q, a) in delta:
                raise TMSemanticError(f"duplicate transition for ({q},{a}), first at line {delta_lines[(q, a)]}", lineno)
            delta[(q, a)] = (q2, a2, mv)
            delta_lines[(q, a)] = lineno
        else:
            if key in decls:
                raise TMSemanticError(f"duplicate declaration of {key!r}", lineno)
            if key in ("blank", "start", "halt"):
                if len(toks) != 1:
                    raise TMSyntaxError(f"{key!r} takes exactly one token", lineno)
                decls[key] = toks[0]
            else:
                if not toks:
                    raise TMSyntaxError(f"{key!r} needs at least one token", lineno)
                if len(set(toks)) != len(toks):
                    raise TMSemanticError(f"repeated entries in {key!r}", lineno)
                decls[key] = tuple(toks)
    for key in _KEYWORDS[:-1]:
        if key not in decls:
            raise TMSemanticError(f"missing declaration {key!r}")
    return TuringMachine(
        alphabet=decls["alphabet"],
        blank=decls["blank"],
        states=decls["states"],
        start=decls["start"],
        halt=decls["halt"],
        delta=delta,
    )

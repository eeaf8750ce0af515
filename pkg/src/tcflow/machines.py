"""Built-in machine corpus: small machines with known halting behaviour.

Every corpus machine either loops forever or halts by entering its halt
state; none relies on the missing-transition convention, so halting is
always visible as a halt-state symbol on the tape.
"""

from .tm import initial_config, parse_tm

BB2_TEXT = """\
# two-state busy beaver
alphabet: 0 1
blank: 0
states: A B H
start: A
halt: H
delta: A 0 -> B 1 R
delta: A 1 -> B 1 L
delta: B 0 -> A 1 L
delta: B 1 -> H 1 R
"""

HALT_START_TEXT = """\
# starts in the halt state; nothing is reachable
alphabet: 0 1
blank: 0
states: H
start: H
halt: H
"""

LOOP_TEXT = """\
# one-state loop, runs right forever over blanks
alphabet: 0 1
blank: 0
states: A H
start: A
halt: H
delta: A 0 -> A 0 R
"""

MOVER_TEXT = """\
# total right-mover; never halts, step map is injective
alphabet: 0 1
blank: 0
states: A H
start: A
halt: H
delta: A 0 -> A 0 R
delta: A 1 -> A 1 R
"""

COUNT3_TEXT = """\
# writes three ones then halts
alphabet: 0 1
blank: 0
states: A B C H
start: A
halt: H
delta: A 0 -> B 1 R
delta: B 0 -> C 1 R
delta: C 0 -> H 1 R
"""

LEFT2_TEXT = """\
# writes two ones moving left then halts
alphabet: 0 1
blank: 0
states: A B H
start: A
halt: H
delta: A 0 -> B 1 L
delta: B 0 -> H 1 L
"""

BB2 = parse_tm(BB2_TEXT)
HALT_START = parse_tm(HALT_START_TEXT)
LOOP = parse_tm(LOOP_TEXT)
MOVER = parse_tm(MOVER_TEXT)
COUNT3 = parse_tm(COUNT3_TEXT)
LEFT2 = parse_tm(LEFT2_TEXT)


def corpus():
    """(name, machine, initial config) triples used by the verification suites."""
    return [
        ("bb2", BB2, initial_config(BB2)),
        ("halt_start", HALT_START, initial_config(HALT_START)),
        ("loop", LOOP, initial_config(LOOP)),
        ("mover", MOVER, initial_config(MOVER, right=("1", "0", "1", "1"))),
        ("count3", COUNT3, initial_config(COUNT3)),
        ("left2", LEFT2, initial_config(LEFT2)),
    ]


# halting step on the corpus initial configs, None for non-halting machines
EXPECTED_HALT = {
    "bb2": 6,
    "halt_start": 0,
    "loop": None,
    "mover": None,
    "count3": 3,
    "left2": 2,
}

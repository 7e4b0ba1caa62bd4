"""Grammars and pushdown systems shared by the test modules."""

from workbench.grammars import parse_grammar
from workbench.pushdown import parse_pds

# The two rules of the worked example, with E1 = A(D(x5, C(x2, B)), x5, B).
EXAMPLE_GRAMMAR = """\
grammar
nonterminal A/3 B/0 C/2 D/2
action a b
rule A(x1,x2,x3) -a-> C(x2, D(x2,x1))
rule A(x1,x2,x3) -b-> x2
"""

E1 = 'A(D(x5, C(x2, B)), x5, B)'
E2 = 'A(D(x5, C(A(D(x5, C(x2, B)), x5, B), B)), x5, B)'
E3 = 'rec E3 = A(D(x5, C(ref E3, B)), x5, B)'

SINK_GRAMMAR = """\
grammar
nonterminal A/1 B/1
action a b
rule A(x1) -a-> B(x1)
rule B(x1) -b-> x1
"""

# Spoiler wins at once by playing b from A.
ROUND_ZERO_GRAMMAR = """\
grammar
nonterminal A/0 B/0
action a b
rule A -a-> A
rule A -b-> A
rule B -a-> B
"""

# A reaches the stuck Z after one a; B loops.
ROUND_ONE_GRAMMAR = """\
grammar
nonterminal A/0 B/0 Z/0
action a
rule A -a-> Z
rule B -a-> B
"""

LOOPS_GRAMMAR = """\
grammar
nonterminal A/0 B/0
action a b
rule A -a-> A
rule B -b-> B
"""

SAME_LOOPS_GRAMMAR = """\
grammar
nonterminal A/0 B/0
action a
rule A -a-> A
rule B -a-> B
"""

GROWING_GRAMMAR = """\
grammar
nonterminal A/1 B/0
action a
rule A(x1) -a-> A(A(x1))
rule B -a-> B
"""

COUNTER_PDS = """\
pds
states p q
action a b
stack X Z
rule p X -a-> p X X
rule p Z -a-> p X Z
rule p X -b-> q
rule q X -b-> q
rule q Z -a-> p Z
"""

# Non-popping silent rules that are alone at their head.
SILENT_PDS = """\
pds
states p q r
action a b
stack X Y Z
rule p X -eps-> q Y X
rule q Y -a-> r
rule r X -b-> p Z
rule p Z -eps-> r Z
rule r Z -a-> r
rule q X -eps-> q X
"""


def grammar(text):
    return parse_grammar(text)


def pds(text):
    return parse_pds(text)

"""Grammatical constants: shortest sink words and the derived size/level bounds."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field

from .grammars import Grammar, VariableMode, grammar_size
from .terms import TermRef

logger = logging.getLogger(__name__)

# Print order of the constant table; n comes last.
CONSTANT_KEYS = ('m', 'hinc', 'sinc', 'd0', 'd1', 'd2', 'd3', 's', 'g', 'd4', 'd5', 'c', 'n')

SinkWords = dict[tuple[str, int], tuple[str, ...]]


@dataclass
class GrammarConstants:
    nonterminals: int
    rules: int
    size: int
    m: int
    hinc: int
    sinc: int
    d0: int
    n: int
    d1: int
    d2: int
    d3: int
    s: int
    g: int
    d4: int
    d5: int
    c: int
    sink_words: SinkWords = field(default_factory=dict)

    def values(self) -> dict[str, int]:
        return {key: getattr(self, key) for key in CONSTANT_KEYS}

    def digits(self) -> dict[str, int]:
        return {key: len(str(abs(value))) for key, value in self.values().items()}


def sink_words(grammar: Grammar) -> SinkWords:
    """Shortest word taking ``A(x1..xk)`` to ``x_i`` for every sinkable ``(A, i)``.

    Among equally short words the one earliest in action-declaration order wins.
    """
    order = {action: position for position, action in enumerate(grammar.actions)}
    store = grammar.store

    def key(word: tuple[str, ...]) -> tuple[int, tuple[int, ...]]:
        return (len(word), tuple(order[a] for a in word))

    best: dict[tuple[int, int], tuple[str, ...]] = {}

    def term_word(ref: TermRef, i: int, memo: dict) -> tuple[str, ...] | None:
        if (ref, i) in memo:
            return memo[(ref, i)]
        if store.is_var(ref):
            result = () if store.var_index(ref) == i else None
        else:
            result = None
            head = store.label(ref)
            for j, child in enumerate(store.children(ref), start=1):
                prefix = best.get((head, j))
                if prefix is None:
                    continue
                suffix = term_word(child, i, memo)
                if suffix is None:
                    continue
                candidate = prefix + suffix
                if result is None or key(candidate) < key(result):
                    result = candidate
        memo[(ref, i)] = result
        return result

    changed = True
    rounds = 0
    while changed:
        changed = False
        rounds += 1
        memo: dict = {}
        for rule in grammar.rules:
            for i in range(1, grammar.alphabet.arity(rule.head) + 1):
                tail = term_word(rule.rhs, i, memo)
                if tail is None:
                    continue
                candidate = (rule.action,) + tail
                current = best.get((rule.head, i))
                if current is None or key(candidate) < key(current):
                    best[(rule.head, i)] = candidate
                    changed = True
    logger.debug('sink words settled after %d rounds', rounds)
    return {
        (grammar.alphabet.symbol(head).name, i): word
        for (head, i), word in sorted(best.items())
    }


def shortest_sink_word_bruteforce(grammar: Grammar, name: str, i: int, *, max_length: int = 12) -> tuple[str, ...] | None:
    """Breadth-first search on terms; used to cross-check :func:`sink_words`."""
    store = grammar.store
    start = grammar.initial_term(name)
    target = store.var(i)
    order = {action: position for position, action in enumerate(grammar.actions)}
    parents: dict[TermRef, tuple[TermRef, str] | None] = {start: None}
    queue = deque([(start, 0)])
    while queue:
        term, depth = queue.popleft()
        if term == target:
            word = []
            while parents[term] is not None:
                term, action = parents[term]
                word.append(action)
            return tuple(reversed(word))
        if depth == max_length:
            continue
        moves = sorted(grammar.transitions(term, VariableMode.DEAD), key=lambda move: order[move[0]])
        for action, successor in moves:
            if successor not in parents:
                parents[successor] = (term, action)
                queue.append((successor, depth + 1))
    return None


def compute_constants(grammar: Grammar) -> GrammarConstants:
    store = grammar.store
    words = sink_words(grammar)
    m = grammar.alphabet.max_arity
    rhs = grammar.rhs_terms
    heights = [store.height(ref) for ref in rhs]
    hinc = max(heights) - 1 if heights else -1
    sinc = max((store.ntsize(ref) for ref in rhs), default=0)
    d0 = 1 + max((len(word) for word in words.values()), default=0)
    n = m ** d0
    # hinc is -1 when every right-hand side is a variable or a constant; then
    # every sink word has length 1, so d0 <= 2 and d2, d5 stay natural.
    nonterminals = len(grammar.alphabet)
    rule_count = len(grammar.rules)
    base = max(d0, rule_count ** d0)
    d1 = 2 * nonterminals * base ** (m + 2)
    d2 = d0 + (1 + d0 * hinc) * (d0 - 1)
    d3 = base ** 2
    span = d2 + d0 - 1
    s = m ** (d0 + 1) + (m + 2) * d0 * sinc + span * sinc
    g = span * sinc
    d4 = d1 * (1 + sum(store.ntsize(ref) for ref in rhs)) ** span
    d5 = span * (1 + (d0 - 1) * hinc)
    c = max(d3, 2 * d4 * d5)
    constants = GrammarConstants(
        nonterminals=nonterminals,
        rules=rule_count,
        size=grammar_size(grammar),
        m=m, hinc=hinc, sinc=sinc, d0=d0, n=n,
        d1=d1, d2=d2, d3=d3, s=s, g=g, d4=d4, d5=d5, c=c,
        sink_words=words,
    )
    logger.info('constants: m=%d d0=%d n=%d (c has %d digits)', m, d0, n, len(str(c)))
    return constants


def complexity_class_report(*, n: int | None = None, states: int | None = None) -> list[str]:
    """Fast-growing complexity classes the bounds place the problem in."""
    lines = []
    if n is not None:
        lines.append(f'grammar with constant n={n}: bisimilarity in F_{n + 4}')
    if states is not None:
        lines.append(f'pushdown system with {states} control states: weak bisimilarity in F_{states + 4}')
    lines.append('general problem (unbounded n): ACKERMANN = F_w')
    return lines

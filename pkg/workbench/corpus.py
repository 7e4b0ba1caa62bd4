"""Seeded random grammars, terms and pushdown systems for property checks."""

from __future__ import annotations

import random

from .grammars import Grammar, Rule
from .pushdown import Configuration, Pds, PdsRule
from .terms import RankedAlphabet, TermRef

NAMES = 'ABCDEFGH'


def random_grammar(
    rng: random.Random,
    *,
    nonterminals: int = 3,
    max_arity: int = 2,
    actions: tuple[str, ...] = ('a', 'b'),
    max_rules: int = 2,
    depth: int = 2,
) -> Grammar:
    arities = [rng.randint(0, max_arity) for _ in range(nonterminals - 1)] + [0]
    rng.shuffle(arities)
    alphabet = RankedAlphabet(zip(NAMES, arities))
    grammar = Grammar(alphabet, list(actions))
    for head, arity in enumerate(arities):
        for _ in range(rng.randint(1, max_rules)):
            rhs = random_term(grammar, rng, depth=depth, variables=arity)
            grammar.add_rule(Rule(head=head, action=rng.choice(actions), rhs=rhs))
    return grammar


def random_term(grammar: Grammar, rng: random.Random, *, depth: int, variables: int) -> TermRef:
    """A finite term of height at most ``depth`` over ``x1..x<variables>``."""
    store = grammar.store
    alphabet = grammar.alphabet
    leaves = [('var', k) for k in range(1, variables + 1)]
    leaves += [('sym', i) for i in range(len(alphabet)) if alphabet.arity(i) == 0]
    inner = [i for i in range(len(alphabet)) if alphabet.arity(i) > 0]
    if depth <= 0 or not inner or rng.random() < 0.3:
        kind, value = rng.choice(leaves)
        return store.var(value) if kind == 'var' else store.app(value, [])
    head = rng.choice(inner)
    children = [random_term(grammar, rng, depth=depth - 1, variables=variables) for _ in range(alphabet.arity(head))]
    return store.app(head, children)


def random_substitution(grammar: Grammar, rng: random.Random, *, variables: int, depth: int = 1) -> dict[int, TermRef]:
    return {k: random_term(grammar, rng, depth=depth, variables=variables) for k in range(1, variables + 1)}


def random_pds(
    rng: random.Random,
    *,
    states: int = 2,
    stack: int = 2,
    actions: tuple[str, ...] = ('a', 'b'),
    rules: int = 5,
    silent_heads: int = 0,
    popping_only: bool = False,
) -> Pds:
    """Random system; ``silent_heads`` heads get a single silent rule each."""
    state_names = [f'p{i}' for i in range(states)]
    stack_names = [f'Y{i}' for i in range(stack)]
    heads = [(p, y) for p in state_names for y in stack_names]
    rng.shuffle(heads)
    silent = heads[:silent_heads]
    visible = heads[silent_heads:] or heads[:1]
    result = []
    for p, y in silent:
        push = () if popping_only else tuple(rng.choice(stack_names) for _ in range(rng.randint(0, 2)))
        result.append(PdsRule(p, y, None, rng.choice(state_names), push))
    for _ in range(rules):
        p, y = rng.choice(visible)
        if (p, y) in silent:
            continue
        push = tuple(rng.choice(stack_names) for _ in range(rng.randint(0, 2)))
        result.append(PdsRule(p, y, rng.choice(actions), rng.choice(state_names), push))
    return Pds(state_names, list(actions), stack_names, list(dict.fromkeys(result)))


def random_configuration(pds: Pds, rng: random.Random, *, max_height: int = 3) -> Configuration:
    height = rng.randint(1, max_height)
    return Configuration(rng.choice(pds.states), tuple(rng.choice(pds.stack_symbols) for _ in range(height)))

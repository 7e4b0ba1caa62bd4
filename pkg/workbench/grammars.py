"""First-order grammars and the labelled transition system they generate.

File format (one declaration per line, ``#`` starts a comment)::

    grammar
    nonterminal A/3 B/0
    action a b
    rule A(x1,x2,x3) -a-> C(x2, D(x2,x1))

Rule left-hand sides are ``A(x1,...,xk)`` with the variables in order; right
hand sides are finite terms over ``x1..xk``.
"""

from __future__ import annotations

import enum
import logging
import re
from collections import defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .conf import workbench_setting
from .exceptions import GrammarValidationError, InputError, TermSyntaxError, UnknownSymbolError
from .syntax import VAR_RE, parse_term, tokenize
from .terms import RankedAlphabet, TermRef, TermStore

logger = logging.getLogger(__name__)

NAME_PATTERN = r"\[[^\]\s]+\]|[A-Za-z_][A-Za-z0-9_']*"
DECLARATION_RE = re.compile(rf'^(?P<name>{NAME_PATTERN})/(?P<arity>\d+)$')
ACTION_RE = re.compile(rf'^(?:{NAME_PATTERN})$')
RULE_RE = re.compile(
    rf"^rule\s+(?P<lhs>.+?)\s*-(?P<action>[A-Za-z_][A-Za-z0-9_']*)->\s*(?P<rhs>.+)$"
)


class VariableMode(str, enum.Enum):
    DEAD = 'dead'
    SELF_LOOP = 'self_loop'

    @classmethod
    def coerce(cls, value: 'VariableMode | str | None') -> 'VariableMode':
        if value is None:
            value = workbench_setting('VARIABLE_MODE')
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).replace('-', '_'))
        except ValueError:
            raise InputError(f'unknown variable mode {value!r} (use dead or self-loop)') from None


@dataclass(frozen=True, order=True)
class SelfLoop:
    """The private action ``a_x<k>`` a variable performs in self-loop mode."""

    index: int

    def __str__(self) -> str:
        return f'a_x{self.index}'


Action = str | SelfLoop


@dataclass(frozen=True)
class Rule:
    head: int
    action: str
    rhs: TermRef


class Grammar:
    def __init__(
        self,
        alphabet: RankedAlphabet,
        actions: Sequence[str],
        rules: Iterable[Rule] = (),
        *,
        store: TermStore | None = None,
    ):
        self.alphabet = alphabet
        self.actions = list(actions)
        self.store = store or TermStore(alphabet)
        self.rules: list[Rule] = []
        self._by_head: dict[int, list[Rule]] = defaultdict(list)
        self._transitions: dict[tuple[TermRef, VariableMode], list[tuple[Action, TermRef]]] = {}
        for rule in rules:
            self.add_rule(rule)

    def add_rule(self, rule: Rule) -> None:
        if rule.action not in self.actions:
            raise UnknownSymbolError(f'undeclared action {rule.action}')
        symbol = self.alphabet.symbol(rule.head)
        if not self.store.is_finite(rule.rhs):
            raise GrammarValidationError(f'right-hand side of a {symbol.name} rule is not finite')
        stray = sorted(k for k in self.store.vars(rule.rhs) if k > symbol.arity)
        if stray:
            raise GrammarValidationError(
                f'rule for {symbol.name}/{symbol.arity} uses x{stray[0]} outside its arguments'
            )
        self.rules.append(rule)
        self._by_head[rule.head].append(rule)
        self._transitions.clear()

    def rules_for(self, head: int) -> list[Rule]:
        return self._by_head.get(head, [])

    def initial_term(self, name: str) -> TermRef:
        """``A(x1, ..., xk)`` for the nonterminal ``A``."""
        index = self.alphabet.index(name)
        arity = self.alphabet.arity(index)
        return self.store.app(index, [self.store.var(i) for i in range(1, arity + 1)])

    @property
    def rhs_terms(self) -> list[TermRef]:
        """Distinct right-hand sides in rule order."""
        return list(dict.fromkeys(rule.rhs for rule in self.rules))

    def transitions(self, ref: TermRef, mode: VariableMode | str | None = None) -> list[tuple[Action, TermRef]]:
        mode = VariableMode.coerce(mode)
        key = (ref, mode)
        cached = self._transitions.get(key)
        if cached is not None:
            return cached
        store = self.store
        if store.is_var(ref):
            moves = [(SelfLoop(store.var_index(ref)), ref)] if mode is VariableMode.SELF_LOOP else []
        else:
            sigma = store.root_substitution(ref)
            moves = [(rule.action, store.apply_subst(rule.rhs, sigma)) for rule in self.rules_for(store.label(ref))]
        self._transitions[key] = moves
        return moves


class GrammarLts:
    """A grammar seen as a labelled transition system on interned terms."""

    def __init__(self, grammar: Grammar, mode: VariableMode | str | None = None):
        self.grammar = grammar
        self.mode = VariableMode.coerce(mode)

    def successors(self, state: TermRef) -> list[tuple[Action, TermRef]]:
        return self.grammar.transitions(state, self.mode)

    def describe(self, state: TermRef) -> str:
        return self.grammar.store.format(state)


def transitions(grammar: Grammar, ref: TermRef, mode: VariableMode | str | None = None) -> list[tuple[Action, TermRef]]:
    return grammar.transitions(ref, mode)


def step_word(
    grammar: Grammar,
    ref: TermRef,
    word: Sequence[Action],
    mode: VariableMode | str | None = VariableMode.DEAD,
) -> list[TermRef]:
    """All terms reachable from ``ref`` by exactly the word ``word``."""
    current = {ref}
    for action in word:
        current = {target for term in current for a, target in grammar.transitions(term, mode) if a == action}
        if not current:
            break
    return sorted(current, key=grammar.store.sort_key)


def grammar_size(grammar: Grammar) -> int:
    """Sum over rules of ``ar(A) + 1 + size(rhs)``."""
    return sum(
        grammar.alphabet.arity(rule.head) + 1 + grammar.store.size(rule.rhs) for rule in grammar.rules
    )


def parse_grammar(text: str) -> Grammar:
    lines = [(number, raw.split('#', 1)[0].strip()) for number, raw in enumerate(text.splitlines(), start=1)]
    lines = [(number, line) for number, line in lines if line]
    if not lines or lines[0][1] != 'grammar':
        line = lines[0][0] if lines else 1
        raise TermSyntaxError('grammar files start with the line "grammar"', line=line)

    declarations: list[tuple[str, int]] = []
    actions: list[str] = []
    rule_lines: list[tuple[int, str]] = []
    for number, line in lines[1:]:
        keyword, _, rest = line.partition(' ')
        if keyword == 'nonterminal':
            for item in rest.split():
                match = DECLARATION_RE.match(item)
                if not match or VAR_RE.match(match.group('name')) or match.group('name') in ('rec', 'ref'):
                    raise TermSyntaxError(f'bad nonterminal declaration {item!r}', line=number)
                declarations.append((match.group('name'), int(match.group('arity'))))
        elif keyword == 'action':
            for item in rest.split():
                if not ACTION_RE.match(item):
                    raise TermSyntaxError(f'bad action name {item!r}', line=number)
                if item in actions:
                    raise GrammarValidationError(f'action {item} declared twice (line {number})')
                actions.append(item)
        elif keyword == 'rule':
            rule_lines.append((number, line))
        else:
            raise TermSyntaxError(f'unknown declaration {keyword!r}', line=number)

    alphabet = RankedAlphabet(declarations)
    grammar = Grammar(alphabet, actions)
    for number, line in rule_lines:
        grammar.add_rule(_parse_rule(grammar, number, line))
    logger.debug('parsed grammar: %d nonterminals, %d actions, %d rules',
                 len(alphabet), len(actions), len(grammar.rules))
    return grammar


def _parse_rule(grammar: Grammar, number: int, line: str) -> Rule:
    match = RULE_RE.match(line)
    if not match:
        raise TermSyntaxError('rules read "rule A(x1,...,xk) -a-> E"', line=number)
    tokens = [t for t in tokenize(match.group('lhs'), line=number, column=6) if t.kind != 'end']
    if not tokens or tokens[0].kind != 'name':
        raise TermSyntaxError('rule left-hand side must start with a nonterminal', line=number)
    head_name = tokens[0].text
    if head_name not in grammar.alphabet:
        raise UnknownSymbolError(f'unknown nonterminal {head_name} (line {number})')
    head = grammar.alphabet.index(head_name)
    arity = grammar.alphabet.arity(head)
    expected: list[str] = []
    if arity:
        expected.append('(')
        for i in range(1, arity + 1):
            if i > 1:
                expected.append(',')
            expected.append(f'x{i}')
        expected.append(')')
    allowed = [expected, ['(', ')']] if arity == 0 else [expected]
    if [t.text for t in tokens[1:]] not in allowed:
        raise GrammarValidationError(
            f'left-hand side of {head_name}/{arity} must be {head_name}({", ".join(f"x{i}" for i in range(1, arity + 1))}) (line {number})'
        )
    rhs = parse_term(grammar.store, match.group('rhs'), line=number, column=match.start('rhs') + 1)
    return Rule(head=head, action=match.group('action'), rhs=rhs)


def format_grammar(grammar: Grammar) -> str:
    store = grammar.store
    out = ['grammar']
    if len(grammar.alphabet):
        out.append('nonterminal ' + ' '.join(f'{s.name}/{s.arity}' for s in grammar.alphabet))
    if grammar.actions:
        out.append('action ' + ' '.join(grammar.actions))
    for rule in grammar.rules:
        symbol = grammar.alphabet.symbol(rule.head)
        lhs = symbol.name
        if symbol.arity:
            lhs += '(' + ','.join(f'x{i}' for i in range(1, symbol.arity + 1)) + ')'
        out.append(f'rule {lhs} -{rule.action}-> {store.format(rule.rhs)}')
    return '\n'.join(out) + '\n'

"""Pushdown systems and their translations to and from first-order grammars.

File format::

    pds
    states p q
    action a b
    stack X Y
    rule p X -a-> q Y X     # push Y X (top first)
    rule q Y -eps-> p       # silent pop

Configurations are written ``p X Y`` (control state, then the stack top first).
"""

from __future__ import annotations

import logging
import re
from collections import defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

from .conf import workbench_setting
from .exceptions import BudgetExceeded, PdsValidationError, TermSyntaxError, UnsupportedSilentRules
from .games import EqLevelResult, GameSolver
from .grammars import Grammar, Rule
from .terms import RankedAlphabet, TermRef

logger = logging.getLogger(__name__)

SILENT = 'eps'
SYMBOL_RE = re.compile(r'^[^\s\[\]():,#]+$')
ACTION_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")
RULE_RE = re.compile(r'^rule\s+(?P<state>\S+)\s+(?P<top>\S+)\s+-(?P<action>\S+?)->\s+(?P<target>\S+)(?P<push>(?:\s+\S+)*)\s*$')


@dataclass(frozen=True)
class PdsRule:
    state: str
    top: str
    action: str | None
    target: str
    push: tuple[str, ...] = ()

    @property
    def silent(self) -> bool:
        return self.action is None

    @property
    def popping(self) -> bool:
        return self.silent and not self.push

    def __str__(self) -> str:
        label = SILENT if self.silent else self.action
        return ' '.join(['rule', self.state, self.top, f'-{label}->', self.target, *self.push])


class Configuration(NamedTuple):
    state: str
    stack: tuple[str, ...] = ()

    def __str__(self) -> str:
        return ' '.join([self.state, *self.stack])


@dataclass
class Pds:
    states: list[str]
    actions: list[str]
    stack_symbols: list[str]
    rules: list[PdsRule] = field(default_factory=list)

    def __post_init__(self):
        self._by_head: dict[tuple[str, str], list[PdsRule]] = defaultdict(list)
        for rule in self.rules:
            self._by_head[(rule.state, rule.top)].append(rule)

    def rules_at(self, state: str, top: str) -> list[PdsRule]:
        return self._by_head.get((state, top), [])

    def silent_rule(self, state: str, top: str) -> PdsRule | None:
        return next((rule for rule in self.rules_at(state, top) if rule.silent), None)

    def validate(self) -> None:
        if not self.states:
            raise PdsValidationError('a pushdown system needs at least one control state')
        for names, kind in ((self.states, 'state'), (self.actions, 'action'), (self.stack_symbols, 'stack symbol')):
            if len(set(names)) != len(names):
                raise PdsValidationError(f'duplicate {kind} declaration')
            pattern = ACTION_RE if kind == 'action' else SYMBOL_RE
            for name in names:
                if not pattern.match(name):
                    raise PdsValidationError(f'bad {kind} name {name!r}')
        if SILENT in self.actions:
            raise PdsValidationError(f'{SILENT!r} is reserved for silent rules')
        for rule in self.rules:
            if rule.state not in self.states or rule.target not in self.states:
                raise PdsValidationError(f'unknown state in {rule}')
            if rule.top not in self.stack_symbols or any(y not in self.stack_symbols for y in rule.push):
                raise PdsValidationError(f'unknown stack symbol in {rule}')
            if rule.action is not None and rule.action not in self.actions:
                raise PdsValidationError(f'undeclared action in {rule}')


def parse_pds(text: str) -> Pds:
    lines = [(number, raw.split('#', 1)[0].strip()) for number, raw in enumerate(text.splitlines(), start=1)]
    lines = [(number, line) for number, line in lines if line]
    if not lines or lines[0][1] != 'pds':
        raise TermSyntaxError('pushdown files start with the line "pds"', line=lines[0][0] if lines else 1)
    declared: dict[str, list[str]] = {'states': [], 'action': [], 'stack': []}
    rules = []
    for number, line in lines[1:]:
        keyword, _, rest = line.partition(' ')
        keyword = 'action' if keyword == 'actions' else keyword
        if keyword in declared:
            declared[keyword].extend(rest.split())
        elif keyword == 'rule':
            match = RULE_RE.match(line)
            if not match:
                raise TermSyntaxError('rules read "rule p X -a-> q Y1 ... Yk"', line=number)
            action = match.group('action')
            rules.append(PdsRule(
                state=match.group('state'),
                top=match.group('top'),
                action=None if action == SILENT else action,
                target=match.group('target'),
                push=tuple(match.group('push').split()),
            ))
        else:
            raise TermSyntaxError(f'unknown declaration {keyword!r}', line=number)
    pds = Pds(declared['states'], declared['action'], declared['stack'], rules)
    pds.validate()
    return pds


def format_pds(pds: Pds) -> str:
    out = ['pds', 'states ' + ' '.join(pds.states)]
    if pds.actions:
        out.append('action ' + ' '.join(pds.actions))
    if pds.stack_symbols:
        out.append('stack ' + ' '.join(pds.stack_symbols))
    out.extend(str(rule) for rule in pds.rules)
    return '\n'.join(out) + '\n'


def parse_configuration(pds: Pds, text: str) -> Configuration:
    words = text.split()
    if not words:
        raise PdsValidationError('empty configuration')
    state, stack = words[0], tuple(words[1:])
    if state not in pds.states:
        raise PdsValidationError(f'unknown state {state}')
    unknown = [y for y in stack if y not in pds.stack_symbols]
    if unknown:
        raise PdsValidationError(f'unknown stack symbol {unknown[0]}')
    return Configuration(state, stack)


@dataclass(frozen=True)
class PdsClassification:
    real_time: bool
    restricted: bool
    popping_silent: bool

    def __str__(self) -> str:
        if self.real_time:
            return 'real-time'
        if self.restricted:
            return 'restricted, popping silent rules' if self.popping_silent else 'restricted'
        return 'unrestricted silent rules'


def classify(pds: Pds) -> PdsClassification:
    silent = [rule for rule in pds.rules if rule.silent]
    restricted = all(len(pds.rules_at(rule.state, rule.top)) == 1 for rule in silent)
    return PdsClassification(
        real_time=not silent,
        restricted=restricted,
        popping_silent=all(rule.popping for rule in silent),
    )


def apply_rule(rule: PdsRule, configuration: Configuration) -> Configuration:
    return Configuration(rule.target, rule.push + configuration.stack[1:])


def pds_transitions(pds: Pds, configuration: Configuration) -> list[tuple[str, Configuration]]:
    if not configuration.stack:
        return []
    return [
        (SILENT if rule.silent else rule.action, apply_rule(rule, configuration))
        for rule in pds.rules_at(configuration.state, configuration.stack[0])
    ]


def is_stable(pds: Pds, configuration: Configuration) -> bool:
    return not configuration.stack or pds.silent_rule(configuration.state, configuration.stack[0]) is None


def stabilize(pds: Pds, configuration: Configuration) -> Configuration:
    """Follow the deterministic popping silent rules to a stable configuration."""
    state, stack = configuration
    while stack:
        rule = pds.silent_rule(state, stack[0])
        if rule is None:
            break
        if not rule.popping:
            raise UnsupportedSilentRules(f'stabilize needs popping silent rules, found {rule}')
        state, stack = rule.target, stack[1:]
    return Configuration(state, stack)


class PdsLts:
    """The strong transition system; silent steps carry the label ``eps``."""

    def __init__(self, pds: Pds):
        self.pds = pds

    def successors(self, configuration: Configuration) -> list[tuple[str, Configuration]]:
        return pds_transitions(self.pds, configuration)


class StableLts:
    """Visible steps between stable configurations of a popping-silent system."""

    def __init__(self, pds: Pds):
        self.pds = pds

    def successors(self, configuration: Configuration) -> list[tuple[str, Configuration]]:
        current = stabilize(self.pds, configuration)
        if not current.stack:
            return []
        return [
            (rule.action, stabilize(self.pds, apply_rule(rule, current)))
            for rule in self.pds.rules_at(current.state, current.stack[0])
            if not rule.silent
        ]


class ClosureLts:
    """Weak steps of a restricted system computed by running its silent rules.

    A configuration whose silent run never ends has no visible moves.
    """

    def __init__(self, pds: Pds, *, budget: int | None = None):
        self.pds = pds
        self.budget = workbench_setting('EPSILON_STEP_BUDGET', budget)

    def closure(self, configuration: Configuration) -> tuple[Configuration, bool]:
        """``(last configuration, diverged)`` of the deterministic silent run."""
        state, stack = configuration
        marks: list[set[tuple[str, str]]] = [set() for _ in range(len(stack) + 1)]
        steps = 0
        while stack:
            head = (state, stack[0])
            rule = self.pds.silent_rule(*head)
            if rule is None:
                return Configuration(state, stack), False
            depth = len(stack)
            if any(head in marks[d] for d in range(1, depth + 1)):
                return Configuration(state, stack), True
            while len(marks) <= depth:
                marks.append(set())
            marks[depth].add(head)
            state, stack = rule.target, rule.push + stack[1:]
            for d in range(len(stack) + 1, len(marks)):
                marks[d].clear()
            steps += 1
            if steps > self.budget:
                raise BudgetExceeded(f'silent run longer than {self.budget} steps')
        return Configuration(state, ()), False

    def successors(self, configuration: Configuration) -> list[tuple[str, Configuration]]:
        current, diverged = self.closure(configuration)
        if diverged or not current.stack:
            return []
        return [
            (rule.action, self.closure(apply_rule(rule, current))[0])
            for rule in self.pds.rules_at(current.state, current.stack[0])
            if not rule.silent
        ]


# -- silent-rule saturation ---------------------------------------------------


class _SilentSummaries:
    """Where the silent run from a single head ``pY`` ends.

    Outcomes are ``('pop', q)``, ``('stable', q, stack)`` or ``('diverge',)``.
    Heads found on a silent cycle are collected in ``repeating``.
    """

    def __init__(self, pds: Pds):
        self.pds = pds
        self.results: dict[tuple[str, str], tuple] = {}
        self.repeating: set[tuple[str, str]] = set()
        self._active: list[tuple[str, str]] = []

    def summary(self, head: tuple[str, str]) -> tuple:
        if head in self.results:
            return self.results[head]
        if head in self._active:
            self.repeating.update(self._active[self._active.index(head):])
            return ('diverge',)
        rule = self.pds.silent_rule(*head)
        self._active.append(head)
        outcome = self.run(rule.target, rule.push)
        self._active.pop()
        self.results[head] = outcome
        return outcome

    def run(self, state: str, stack: tuple[str, ...]) -> tuple:
        while stack:
            head = (state, stack[0])
            if self.pds.silent_rule(*head) is None:
                return ('stable', state, stack)
            outcome = self.summary(head)
            if outcome[0] == 'pop':
                state, stack = outcome[1], stack[1:]
            elif outcome[0] == 'stable':
                return ('stable', outcome[1], outcome[2] + stack[1:])
            else:
                return outcome
        return ('pop', state)


def remove_nonpopping_eps(pds: Pds) -> Pds:
    """Equivalent system (for weak bisimilarity) whose silent rules all pop."""
    if not classify(pds).restricted:
        raise UnsupportedSilentRules('silent rules must be the only rule of their head')
    heads = [(rule.state, rule.top) for rule in pds.rules if rule.silent]
    first = _SilentSummaries(pds)
    for head in heads:
        first.summary(head)
    trimmed = Pds(pds.states, pds.actions, pds.stack_symbols,
                  [rule for rule in pds.rules if not (rule.silent and (rule.state, rule.top) in first.repeating)])

    second = _SilentSummaries(trimmed)
    added: list[PdsRule] = []
    for state, top in heads:
        if (state, top) in first.repeating:
            continue
        outcome = second.summary((state, top))
        if outcome[0] == 'pop':
            added.append(PdsRule(state, top, None, outcome[1]))
        elif outcome[0] == 'stable':
            _, target, stack = outcome
            for rule in trimmed.rules_at(target, stack[0]):
                if not rule.silent:
                    added.append(PdsRule(state, top, rule.action, rule.target, rule.push + stack[1:]))
    kept = [rule for rule in trimmed.rules if not rule.silent or rule.popping]
    rules = list(dict.fromkeys(kept + added))
    logger.debug('silent saturation: %d repeating heads, %d rules added', len(first.repeating), len(added))
    return Pds(pds.states, pds.actions, pds.stack_symbols, rules)


def weak_eq_level_bounded(pds: Pds, left: Configuration, right: Configuration, cap: int, *,
                          budget: int | None = None) -> EqLevelResult:
    kind = classify(pds)
    if kind.real_time:
        return GameSolver(PdsLts(pds), budget=budget).level(left, right, cap)
    if not kind.restricted:
        raise UnsupportedSilentRules('weak levels need deterministic silent rules that are alone at their head')
    if not kind.popping_silent:
        pds = remove_nonpopping_eps(pds)
    return GameSolver(StableLts(pds), budget=budget).level(stabilize(pds, left), stabilize(pds, right), cap)


# -- pushdown system to grammar -----------------------------------------------


@dataclass
class PdsEncoding:
    """A grammar built from a pushdown system, with its configuration encoder."""

    pds: Pds
    grammar: Grammar
    _memo: dict = field(default_factory=dict, repr=False)

    def head_name(self, state: str, top: str | None = None) -> str:
        return f'[{state}]' if top is None else f'[{state}:{top}]'

    def _term(self, state: str, stack: tuple[str, ...], symbolic: bool) -> TermRef:
        key = (state, stack, symbolic)
        if key in self._memo:
            return self._memo[key]
        store = self.grammar.store
        if not stack:
            if symbolic:
                ref = store.var(self.pds.states.index(state) + 1)
            else:
                ref = store.app(self.head_name(state))
        else:
            silent = self.pds.silent_rule(state, stack[0])
            if silent is not None:
                ref = self._term(silent.target, stack[1:], symbolic)
            else:
                children = [self._term(q, stack[1:], symbolic) for q in self.pds.states]
                ref = store.app(self.head_name(state, stack[0]), children)
        self._memo[key] = ref
        return ref

    def encode(self, configuration: Configuration) -> TermRef:
        return self._term(configuration.state, tuple(configuration.stack), False)

    def table(self) -> list[str]:
        lines = [f'{self.head_name(q)} = {q} (empty stack)' for q in self.pds.states]
        for symbol in self.grammar.alphabet:
            if ':' in symbol.name:
                state, top = symbol.name[1:-1].split(':', 1)
                lines.append(f'{symbol.name} = {state} {top} ...')
        return lines


def pds_to_grammar(pds: Pds) -> PdsEncoding:
    kind = classify(pds)
    if not kind.real_time and not (kind.restricted and kind.popping_silent):
        raise UnsupportedSilentRules(
            'translation needs a real-time system or deterministic popping silent rules; '
            'apply remove_nonpopping_eps to restricted systems first'
        )
    m = len(pds.states)
    stable_heads = [(q, y) for q in pds.states for y in pds.stack_symbols if pds.silent_rule(q, y) is None]
    alphabet = RankedAlphabet(
        [(f'[{q}]', 0) for q in pds.states] + [(f'[{q}:{y}]', m) for q, y in stable_heads]
    )
    encoding = PdsEncoding(pds=pds, grammar=Grammar(alphabet, pds.actions))
    for q, y in stable_heads:
        head = alphabet.index(encoding.head_name(q, y))
        for rule in pds.rules_at(q, y):
            rhs = encoding._term(rule.target, rule.push, True)
            encoding.grammar.add_rule(Rule(head=head, action=rule.action, rhs=rhs))
    logger.info('pds -> grammar: %d nonterminals, %d rules', len(alphabet), len(encoding.grammar.rules))
    return encoding


# -- grammar to pushdown system -----------------------------------------------


@dataclass
class GrammarEncoding:
    grammar: Grammar
    pds: Pds
    substitution_names: dict[tuple[TermRef, ...], str]

    def encode_initial(self, name: str) -> Configuration:
        """``A(x1, ..., xk)`` corresponds to ``q1 A``."""
        self.grammar.alphabet.index(name)
        return Configuration(self.pds.states[0], (name,))

    def table(self) -> list[str]:
        store = self.grammar.store
        lines = []
        for images, name in self.substitution_names.items():
            mapping = ', '.join(f'x{i} -> {store.format(ref)}' for i, ref in enumerate(images, start=1))
            lines.append(f'{name} = {{{mapping}}}')
        lines.extend(f'{symbol.name}(x1..x{symbol.arity}) = q1 {symbol.name}' for symbol in self.grammar.alphabet)
        return lines


def _root_images(grammar: Grammar, ref: TermRef) -> tuple[TermRef, ...]:
    """Root substitution as images of ``x1..xk``, trailing identities dropped."""
    store = grammar.store
    images = list(store.children(ref))
    while images and images[-1] == store.var(len(images)):
        images.pop()
    return tuple(images)


def grammar_to_pds(grammar: Grammar) -> GrammarEncoding:
    store = grammar.store
    m = grammar.alphabet.max_arity
    states = [f'q{i}' for i in range(1, max(m, 1) + 1)]
    names: dict[tuple[TermRef, ...], str] = {}
    taken = {symbol.name for symbol in grammar.alphabet}

    def substitution_name(images: tuple[TermRef, ...]) -> str:
        if images not in names:
            candidate = f'_s{len(names) + 1}'
            while candidate in taken:
                candidate = '_' + candidate
            taken.add(candidate)
            names[images] = candidate
        return names[images]

    for rule in grammar.rules:
        for node in store.reachable(rule.rhs):
            if not store.is_var(node):
                substitution_name(_root_images(grammar, node))

    def image(images: tuple[TermRef, ...], i: int) -> TermRef:
        return images[i - 1] if i <= len(images) else store.var(i)

    rules: list[PdsRule] = []
    for rule in grammar.rules:
        head = grammar.alphabet.symbol(rule.head).name
        if store.is_var(rule.rhs):
            rules.append(PdsRule('q1', head, rule.action, f'q{store.var_index(rule.rhs)}'))
        else:
            root = grammar.alphabet.symbol(store.label(rule.rhs)).name
            rules.append(PdsRule('q1', head, rule.action, 'q1', (root, names[_root_images(grammar, rule.rhs)])))
    for images, name in list(names.items()):
        for i in range(1, m + 1):
            target = image(images, i)
            if store.is_var(target):
                rules.append(PdsRule(f'q{i}', name, None, f'q{store.var_index(target)}'))
            else:
                root = grammar.alphabet.symbol(store.label(target)).name
                rules.append(PdsRule(f'q{i}', name, None, 'q1', (root, names[_root_images(grammar, target)])))
    pds = Pds(states, list(grammar.actions), [s.name for s in grammar.alphabet] + list(names.values()), rules)
    logger.info('grammar -> pds: %d states, %d stack symbols, %d rules', len(states), len(pds.stack_symbols), len(rules))
    return GrammarEncoding(grammar=grammar, pds=pds, substitution_names=names)


def reachable_configurations(pds: Pds, start: Iterable[Configuration], *, limit: int) -> list[Configuration]:
    """Breadth-first strong reachability, at most ``limit`` configurations."""
    order: list[Configuration] = list(dict.fromkeys(start))
    seen = set(order)
    index = 0
    while index < len(order) and len(order) < limit:
        for _, target in pds_transitions(pds, order[index]):
            if target not in seen and len(order) < limit:
                seen.add(target)
                order.append(target)
        index += 1
    return order


def stack_shape_ok(encoding: GrammarEncoding, configuration: Configuration) -> bool:
    """Reachable stacks hold at most one nonterminal, on top of substitution symbols."""
    nonterminals = {symbol.name for symbol in encoding.grammar.alphabet}
    stack: Sequence[str] = configuration.stack
    body = stack[1:] if stack and stack[0] in nonterminals else stack
    return all(symbol not in nonterminals for symbol in body)

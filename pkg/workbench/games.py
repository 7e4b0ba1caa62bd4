"""Bounded bisimulation games.

``el(E, F)`` is the largest ``k`` with ``E ~_k F``: Spoiler wins the
bisimulation game from ``(E, F)`` within ``el + 1`` rounds and not earlier.
Levels are computed on any labelled transition system exposing
``successors(state) -> [(action, state)]``; grammars, pushdown systems and
their disjoint unions all plug into the same :class:`GameSolver`.
"""

from __future__ import annotations

import logging
import math
import weakref
from collections import deque
from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any, Protocol

from .conf import workbench_setting
from .exceptions import BudgetExceeded, CertificateUnavailable
from .grammars import Grammar, GrammarLts, VariableMode
from .terms import TermRef

logger = logging.getLogger(__name__)

OMEGA = math.inf

State = Hashable


class TransitionSystem(Protocol):
    def successors(self, state: Any) -> Sequence[tuple[Any, Any]]: ...


@dataclass(frozen=True)
class Finite:
    level: int

    def __str__(self) -> str:
        return f'Finite({self.level})'


@dataclass(frozen=True)
class AtLeast:
    cap: int

    def __str__(self) -> str:
        return f'AtLeast({self.cap})'


EqLevelResult = Finite | AtLeast


@dataclass(frozen=True)
class GameConfig:
    cap: int
    budget: int | None = None
    mode: VariableMode | str | None = None


class UnionLts:
    """Disjoint union of two systems; states are ``(0, s)`` or ``(1, s)``."""

    def __init__(self, left: TransitionSystem, right: TransitionSystem):
        self.parts = (left, right)

    def successors(self, state: tuple[int, Any]) -> list[tuple[Any, tuple[int, Any]]]:
        side, inner = state
        return [(action, (side, target)) for action, target in self.parts[side].successors(inner)]


def _pair_key(a: State, b: State) -> tuple[State, State]:
    try:
        return (a, b) if a <= b else (b, a)  # type: ignore[operator]
    except TypeError:
        return (a, b) if repr(a) <= repr(b) else (b, a)


class GameSolver:
    """Computes ``min(el, cap)`` by a layered attractor over the bounded game graph.

    Exact levels and lower bounds found along the way are memoised on the
    unordered pair, so later queries reuse them.
    """

    def __init__(self, lts: TransitionSystem, *, budget: int | None = None):
        self.lts = lts
        self.budget = workbench_setting('GAME_BUDGET', budget)
        self._exact: dict[tuple[State, State], int] = {}
        self._lower: dict[tuple[State, State], int] = {}
        self._succ: dict[State, Sequence[tuple[Any, State]]] = {}

    def successors(self, state: State) -> Sequence[tuple[Any, State]]:
        moves = self._succ.get(state)
        if moves is None:
            moves = self._succ[state] = self.lts.successors(state)
        return moves

    def _options(self, pair: tuple[State, State]) -> list[list[tuple[State, State]]]:
        """For each Spoiler move, the positions Duplicator may answer with."""
        left, right = pair
        options = []
        for mover, other, flip in ((left, right, False), (right, left, True)):
            answers = self.successors(other)
            for action, target in self.successors(mover):
                options.append([
                    _pair_key(reply, target) if flip else _pair_key(target, reply)
                    for reply_action, reply in answers if reply_action == action
                ])
        return options

    def level(self, a: State, b: State, cap: int) -> EqLevelResult:
        if cap <= 0 or a == b:
            return AtLeast(max(cap, 0))
        root = _pair_key(a, b)
        exact = self._exact.get(root)
        if exact is not None:
            return Finite(exact) if exact < cap else AtLeast(cap)
        if self._lower.get(root, 0) >= cap:
            return AtLeast(cap)

        depth = {root: 0}
        order = [root]
        options: dict[tuple[State, State], list[list[tuple[State, State]]]] = {}
        queue = deque([root])
        while queue:
            pair = queue.popleft()
            remaining = cap - depth[pair]
            if pair[0] == pair[1] or pair in self._exact or self._lower.get(pair, 0) >= remaining:
                continue
            options[pair] = self._options(pair)
            if remaining < 2:
                continue
            for option in options[pair]:
                for reply in option:
                    if reply not in depth:
                        depth[reply] = depth[pair] + 1
                        order.append(reply)
                        queue.append(reply)
                        if len(depth) > self.budget:
                            raise BudgetExceeded(
                                f'bisimulation game explored more than {self.budget} positions (cap {cap})'
                            )

        found: dict[tuple[State, State], int] = {}

        def lost_by(pair: tuple[State, State], k: int) -> bool:
            if k < 0:
                return False
            known = self._exact.get(pair)
            if known is not None:
                return known <= k
            level = found.get(pair)
            return level is not None and level <= k

        last = -1
        for k in range(cap):
            layer = [
                pair for pair, opts in options.items()
                if pair not in found and k <= cap - depth[pair] - 1
                and any(all(lost_by(reply, k - 1) for reply in option) for option in opts)
            ]
            for pair in layer:
                found[pair] = k
            last = k
            if root in found:
                break
        for pair in options:
            if pair in found:
                self._exact[pair] = found[pair]
            else:
                bound = min(cap - depth[pair], last + 1)
                if bound > self._lower.get(pair, 0):
                    self._lower[pair] = bound
        logger.debug('game cap=%d explored %d positions, %d resolved', cap, len(order), len(found))
        if root in found:
            return Finite(found[root])
        return AtLeast(cap)


_solvers: 'weakref.WeakKeyDictionary[Grammar, dict[VariableMode, GameSolver]]' = weakref.WeakKeyDictionary()


def grammar_solver(grammar: Grammar, mode: VariableMode | str | None = None, *, budget: int | None = None) -> GameSolver:
    """The memoising solver shared by all queries on ``grammar`` in ``mode``."""
    mode = VariableMode.coerce(mode)
    per_mode = _solvers.setdefault(grammar, {})
    solver = per_mode.get(mode)
    if solver is None:
        solver = per_mode[mode] = GameSolver(GrammarLts(grammar, mode), budget=budget)
    elif budget is not None:
        solver.budget = budget
    return solver


def eq_level_bounded(grammar: Grammar, left: TermRef, right: TermRef, config: GameConfig) -> EqLevelResult:
    solver = grammar_solver(grammar, config.mode, budget=config.budget)
    return solver.level(left, right, config.cap)


# -- certificates -------------------------------------------------------------


@dataclass
class CertificateNode:
    """Spoiler's move at ``(left, right)`` and a subtree per Duplicator answer."""

    left: Any
    right: Any
    level: int
    side: int
    action: Any
    target: Any
    replies: list['CertificateNode'] = field(default_factory=list)

    def depth(self) -> int:
        return 1 + max((child.depth() for child in self.replies), default=0)


def spoiler_certificate(solver: GameSolver, left: State, right: State, cap: int) -> CertificateNode:
    result = solver.level(left, right, cap)
    if not isinstance(result, Finite):
        raise CertificateUnavailable(f'no certificate: equivalence level is {result}')
    return _certify(solver, left, right, result.level)


def _certify(solver: GameSolver, left: State, right: State, level: int) -> CertificateNode:
    for side, mover, other in ((0, left, right), (1, right, left)):
        answers = solver.successors(other)
        for action, target in solver.successors(mover):
            replies = [reply for reply_action, reply in answers if reply_action == action]
            levels = []
            for reply in replies:
                position = (target, reply) if side == 0 else (reply, target)
                outcome = solver.level(*position, level)
                if not isinstance(outcome, Finite):
                    break
                levels.append((position, outcome.level))
            else:
                children = [_certify(solver, a, b, k) for (a, b), k in levels]
                return CertificateNode(left, right, level, side, action, target, children)
    raise CertificateUnavailable(f'no winning Spoiler move found at level {level}')


def replay_certificate(lts: TransitionSystem, node: CertificateNode, left: State, right: State) -> bool:
    """Check that the certificate wins against every Duplicator answer."""
    if node.left != left or node.right != right or node.level < 0:
        return False
    mover, other = (left, right) if node.side == 0 else (right, left)
    if (node.action, node.target) not in list(lts.successors(mover)):
        return False
    replies = [reply for action, reply in lts.successors(other) if action == node.action]
    if node.level == 0 and replies:
        return False
    covered = {}
    for child in node.replies:
        reply = child.right if node.side == 0 else child.left
        mine = child.left if node.side == 0 else child.right
        if mine != node.target or child.level >= node.level:
            return False
        covered[reply] = child
    if set(covered) != set(replies):
        return False
    return all(replay_certificate(lts, child, child.left, child.right) for child in covered.values())


# -- partition oracle ---------------------------------------------------------


@dataclass
class PartitionTower:
    """Blocks of ``~_0 .. ~_k`` on the states reachable within ``k`` steps.

    Level ``l`` is exact on states at distance ``d`` from the seeds when
    ``d + l <= k``; in particular on the seeds for every level.
    """

    states: list[State]
    assignments: list[dict[State, int]]

    @property
    def k(self) -> int:
        return len(self.assignments) - 1

    def blocks(self, level: int) -> list[list[State]]:
        grouped: dict[int, list[State]] = {}
        for state in self.states:
            grouped.setdefault(self.assignments[level][state], []).append(state)
        return list(grouped.values())

    def same(self, level: int, a: State, b: State) -> bool:
        return self.assignments[level][a] == self.assignments[level][b]

    def level(self, a: State, b: State) -> EqLevelResult:
        for level in range(self.k + 1):
            if not self.same(level, a, b):
                return Finite(level - 1)
        return AtLeast(self.k)


def sim_k_partition(lts: TransitionSystem, seeds: Iterable[State], k: int, *, budget: int | None = None) -> PartitionTower:
    budget = workbench_setting('STATE_BUDGET', budget)
    distance: dict[State, int] = {}
    order: list[State] = []
    for seed in seeds:
        if seed not in distance:
            distance[seed] = 0
            order.append(seed)
    successors: dict[State, Sequence[tuple[Any, State]]] = {}
    queue = deque(order)
    while queue:
        state = queue.popleft()
        if distance[state] >= k:
            continue
        successors[state] = moves = lts.successors(state)
        for _, target in moves:
            if target not in distance:
                distance[target] = distance[state] + 1
                order.append(target)
                queue.append(target)
                if len(order) > budget:
                    raise BudgetExceeded(f'state space beyond {budget} states within {k} steps')
    assignments = [{state: 0 for state in order}]
    for _ in range(k):
        previous = assignments[-1]
        signatures: dict[tuple, int] = {}
        current = {}
        for state in order:
            if state in successors:
                moves = frozenset((action, previous[target]) for action, target in successors[state])
            else:
                moves = None
            current[state] = signatures.setdefault((previous[state], moves), len(signatures))
        assignments.append(current)
    return PartitionTower(order, assignments)


# -- finite-state decision ----------------------------------------------------


@dataclass(frozen=True)
class Bisimilar:
    def __str__(self) -> str:
        return 'Bisimilar'


@dataclass(frozen=True)
class NotBisimilar:
    level: int

    def __str__(self) -> str:
        return f'NotBisimilar({self.level})'


@dataclass(frozen=True)
class Inconclusive:
    explored: int

    def __str__(self) -> str:
        return 'Inconclusive'


Decision = Bisimilar | NotBisimilar | Inconclusive


def finite_state_decide(lts: TransitionSystem, a: State, b: State, *, budget: int | None = None) -> Decision:
    """Exact answer when the states reachable from ``a`` and ``b`` are finitely many."""
    budget = workbench_setting('STATE_BUDGET', budget)
    if a == b:
        return Bisimilar()
    order = list(dict.fromkeys([a, b]))
    seen = set(order)
    successors: dict[State, Sequence[tuple[Any, State]]] = {}
    queue = deque(order)
    while queue:
        state = queue.popleft()
        successors[state] = moves = lts.successors(state)
        for _, target in moves:
            if target not in seen:
                seen.add(target)
                order.append(target)
                queue.append(target)
                if len(order) > budget:
                    logger.warning('finite-state decision gave up after %d states', len(order))
                    return Inconclusive(len(order))
    block = {state: 0 for state in order}
    count = 1
    rounds = 0
    while True:
        signatures: dict[tuple, int] = {}
        refined = {}
        for state in order:
            moves = frozenset((action, block[target]) for action, target in successors[state])
            refined[state] = signatures.setdefault((block[state], moves), len(signatures))
        rounds += 1
        if refined[a] != refined[b]:
            return NotBisimilar(rounds - 1)
        if len(signatures) == count:
            return Bisimilar()
        block = refined
        count = len(signatures)


def grammar_decide(grammar: Grammar, left: TermRef, right: TermRef, *, mode: VariableMode | str | None = None,
                   budget: int | None = None) -> Decision:
    return finite_state_decide(GrammarLts(grammar, mode), left, right, budget=budget)

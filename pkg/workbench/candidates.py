"""Candidate bases and the bound ``E_B`` they certify.

A candidate basis ``B`` is a set of non-equivalent pairs of small terms, each
stored with its equivalence level. The main loop keeps, for each index ``i``
(number of variables), a size bound ``s_i``, the largest level ``e_i`` seen
among stored pairs of size at most ``s_i``, and the pending pairs ``P_i``
still to be examined. It stops once every pending pair is reported
equivalent, and returns ``E_B = n + 1 + sum(e_i)``.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field

from .conf import workbench_setting
from .exceptions import BudgetExceeded, EnumerationRefused, InputError, OracleInconclusive
from .games import OMEGA, AtLeast, Bisimilar, Finite, NotBisimilar, grammar_decide, grammar_solver
from .grammars import Grammar, VariableMode
from .ordinals import Ordinal, control_exponent
from .terms import TermRef, enumerate_terms

logger = logging.getLogger(__name__)

Pair = tuple[TermRef, TermRef]
Oracle = Callable[[TermRef, TermRef, int], float]


@dataclass(frozen=True)
class CandidateParams:
    n: int
    s: int
    g: int
    c: int

    def __post_init__(self):
        if self.n < 0:
            raise InputError('n must be a natural number')
        if self.s < 1:
            raise InputError('s must be at least 1')
        if self.g < 0 or self.c < 0:
            raise InputError('g and c must be natural numbers')


def pairs_count_bound(grammar: Grammar, i: int, size: int) -> int:
    """Upper bound on ``|pairs_i(size)|``: ``((|N| + i) * size^m)^size * size^2``."""
    m = grammar.alphabet.max_arity
    return ((len(grammar.alphabet) + i) * size ** m) ** size * size ** 2


def pairs_set(grammar: Grammar, i: int, size: int, *, budget: int | None = None) -> list[Pair]:
    """Pairs with at most ``size`` distinct subterms jointly whose variables are
    exactly ``x1..xj`` for some ``j <= i``, in canonical order."""
    budget = workbench_setting('ENUMERATION_BUDGET', budget)
    bound = pairs_count_bound(grammar, i, size)
    if bound > budget:
        logger.warning('refusing pairs_%d(%d): bound %d exceeds budget %d', i, size, bound, budget)
        raise EnumerationRefused(
            f'pairs_{i}({size}) may hold up to {bound} pairs, above the enumeration budget {budget}'
        )
    store = grammar.store
    terms = enumerate_terms(store, i, size, budget=max(bound, 1))
    result = []
    for left in terms:
        for right in terms:
            variables = store.vars_pair(left, right)
            if variables != frozenset(range(1, len(variables) + 1)):
                continue
            if store.size_pair(left, right) <= size:
                result.append((left, right))
    return result


def eq_level_effective(
    grammar: Grammar,
    bound: int,
    c: int,
    left: TermRef,
    right: TermRef,
    *,
    mode: VariableMode | str | None = None,
    budget: int | None = None,
    max_threshold: int | None = None,
) -> float:
    """The level if it is at most ``c * (bound * size + size^2)``, else ``OMEGA``."""
    size = grammar.store.size_pair(left, right)
    threshold = c * (bound * size + size * size)
    limit = workbench_setting('MAX_THRESHOLD', max_threshold)
    if threshold + 1 > limit:
        raise BudgetExceeded(f'effective threshold {threshold} is above the configured maximum {limit}')
    result = grammar_solver(grammar, mode, budget=budget).level(left, right, threshold + 1)
    return result.level if isinstance(result, Finite) else OMEGA


class ExactOracle:
    """Exact levels through the finite-state decision; needs finite reachable sets."""

    name = 'exact'

    def __init__(self, grammar: Grammar, *, mode: VariableMode | str | None = None, budget: int | None = None):
        self.grammar = grammar
        self.mode = mode
        self.budget = budget
        self._memo: dict[Pair, float] = {}

    def __call__(self, left: TermRef, right: TermRef, bound: int) -> float:
        pair = (left, right)
        if pair not in self._memo:
            decision = grammar_decide(self.grammar, left, right, mode=self.mode, budget=self.budget)
            if isinstance(decision, Bisimilar):
                self._memo[pair] = OMEGA
            elif isinstance(decision, NotBisimilar):
                self._memo[pair] = decision.level
            else:
                store = self.grammar.store
                raise OracleInconclusive(
                    f'exact oracle could not decide {store.format(left)} | {store.format(right)}',
                    pair=pair,
                )
        return self._memo[pair]


class EffectiveOracle:
    name = 'effective'

    def __init__(self, grammar: Grammar, c: int, *, mode: VariableMode | str | None = None,
                 budget: int | None = None, max_threshold: int | None = None):
        self.grammar = grammar
        self.c = c
        self.mode = mode
        self.budget = budget
        self.max_threshold = max_threshold

    def __call__(self, left: TermRef, right: TermRef, bound: int) -> float:
        return eq_level_effective(self.grammar, bound, self.c, left, right, mode=self.mode,
                                  budget=self.budget, max_threshold=self.max_threshold)


@dataclass
class TraceEntry:
    iteration: int
    rank: Ordinal
    pair: Pair
    level: int
    control: int


@dataclass
class CandidateState:
    params: CandidateParams
    sinc: int
    s: list[int]
    e: list[int]
    pending: list[list[Pair]]
    basis: dict[Pair, int] = field(default_factory=dict)
    bound: int = 0

    def control_value(self) -> int:
        """``N = max{n+1, E_B, max s_i, max |P_i|}``."""
        return max(self.params.n + 1, self.bound, max(self.s), max(len(p) for p in self.pending))


@dataclass
class CandidateResult:
    bound: int
    state: CandidateState
    trace: list[TraceEntry]

    @property
    def basis(self) -> list[tuple[Pair, int]]:
        return list(self.state.basis.items())


def rank(state: CandidateState) -> Ordinal:
    """``sum of w^i * |P_i|``; strictly decreases along the main loop."""
    return Ordinal(len(pending) for pending in state.pending)


def max_rhs_ntsize(grammar: Grammar) -> int:
    return max((grammar.store.ntsize(ref) for ref in grammar.rhs_terms), default=0)


def candidate_bound(
    grammar: Grammar,
    params: CandidateParams,
    oracle: Oracle,
    *,
    subtract_above_j: bool = False,
    budget: int | None = None,
    on_iteration: Callable[[TraceEntry], None] | None = None,
) -> CandidateResult:
    """Run the main loop; ``subtract_above_j`` removes ``P_k`` for ``j < k``
    (instead of ``i < k``) when recomputing the lower pending sets."""
    n, g = params.n, params.g
    store = grammar.store
    sinc = max_rhs_ntsize(grammar)
    s = [0] * (n + 1)
    s[n] = params.s
    for i in range(n - 1, -1, -1):
        s[i] = 2 * s[i + 1] + g
    state = CandidateState(params=params, sinc=sinc, s=s, e=[0] * (n + 1), pending=[[] for _ in range(n + 1)],
                           bound=n + 1)
    above: set[Pair] = set()
    for i in range(n, -1, -1):
        state.pending[i] = [pair for pair in pairs_set(grammar, i, s[i], budget=budget) if pair not in above]
        above.update(state.pending[i])

    trace: list[TraceEntry] = []
    iteration = 0
    while True:
        chosen = None
        for i in range(n, -1, -1):
            for pair in state.pending[i]:
                level = oracle(pair[0], pair[1], state.bound)
                if level < OMEGA:
                    chosen = (i, pair, int(level))
                    break
            if chosen:
                break
        if chosen is None:
            break
        i, pair, level = chosen
        entry = TraceEntry(iteration, rank(state), pair, level, state.control_value())
        trace.append(entry)
        if on_iteration:
            on_iteration(entry)
        logger.debug('iteration %d: P_%d pair (%d, %d) level %d', iteration, i, pair[0], pair[1], level)

        state.pending[i].remove(pair)
        state.basis[pair] = level
        if level > state.e[i]:
            state.e[i] = level
            for j in range(i - 1, -1, -1):
                s[j] = 2 * s[j + 1] + g + state.e[j + 1] * (sinc + g)
                state.e[j] = max(
                    (lvl for (a, b), lvl in state.basis.items() if store.size_pair(a, b) <= s[j]), default=0
                )
                excluded = set(state.basis)
                for k in range((j if subtract_above_j else i) + 1, n + 1):
                    excluded.update(state.pending[k])
                state.pending[j] = [p for p in pairs_set(grammar, j, s[j], budget=budget) if p not in excluded]
            state.bound = n + 1 + sum(state.e)
        iteration += 1

    logger.info('candidate basis: %d pairs after %d iterations, E_B=%d', len(state.basis), iteration, state.bound)
    return CandidateResult(bound=state.bound, state=state, trace=trace)


def check_invariants(grammar: Grammar, state: CandidateState) -> list[str]:
    """Violations of the loop invariants; empty when they all hold."""
    store = grammar.store
    params = state.params
    n, g, sinc = params.n, params.g, state.sinc
    problems = []
    if state.s[n] != params.s:
        problems.append(f's_{n} = {state.s[n]} but s = {params.s}')
    for i in range(n):
        expected = 2 * state.s[i + 1] + g + state.e[i + 1] * (sinc + g)
        if state.s[i] != expected:
            problems.append(f's_{i} = {state.s[i]}, expected {expected}')
    for i in range(n + 1):
        expected = max((lvl for (a, b), lvl in state.basis.items() if store.size_pair(a, b) <= state.s[i]), default=0)
        if state.e[i] != expected:
            problems.append(f'e_{i} = {state.e[i]}, expected {expected}')
    if state.bound != n + 1 + sum(state.e):
        problems.append(f'E_B = {state.bound}, expected {n + 1 + sum(state.e)}')
    for (a, b), lvl in state.basis.items():
        j = len(store.vars_pair(a, b))
        if store.vars_pair(a, b) != frozenset(range(1, j + 1)) or j > n or store.size_pair(a, b) > state.s[j]:
            problems.append(f'pair ({a}, {b}) is not a candidate pair')
        if lvl < 0:
            problems.append(f'pair ({a}, {b}) stored with level {lvl}')
    return problems


def is_full(grammar: Grammar, state: CandidateState, oracle: Oracle, *, budget: int | None = None) -> bool:
    """Every examined pair outside the basis is equivalent."""
    for i in range(state.params.n + 1):
        for left, right in pairs_set(grammar, i, state.s[i], budget=budget):
            if (left, right) not in state.basis and oracle(left, right, state.bound) < OMEGA:
                return False
    return True


def is_complete(grammar: Grammar, state: CandidateState, c: int, *, k: int | None = None,
                mode: VariableMode | str | None = None, budget: int | None = None) -> bool:
    """Pairs outside the basis have level above ``c * (k * size + size^2)`` (``k`` defaults to ``E_B``)."""
    k = state.bound if k is None else k
    solver = grammar_solver(grammar, mode)
    for i in range(state.params.n + 1):
        for left, right in pairs_set(grammar, i, state.s[i], budget=budget):
            if (left, right) in state.basis:
                continue
            size = grammar.store.size_pair(left, right)
            threshold = c * (k * size + size * size)
            if not isinstance(solver.level(left, right, threshold + 1), AtLeast):
                return False
    return True


@dataclass
class FullBasis:
    s: list[int]
    e: list[int]
    basis: dict[Pair, int]
    bound: int


def construct_full_basis(grammar: Grammar, params: CandidateParams, oracle: Oracle, *,
                         budget: int | None = None) -> FullBasis:
    """Build the unique full basis top-down, without the main loop."""
    n, g = params.n, params.g
    sinc = max_rhs_ntsize(grammar)
    s = [0] * (n + 1)
    e = [0] * (n + 2)
    basis: dict[Pair, int] = {}
    for i in range(n, -1, -1):
        s[i] = params.s if i == n else 2 * s[i + 1] + g + e[i + 1] * (sinc + g)
        levels = []
        for left, right in pairs_set(grammar, i, s[i], budget=budget):
            level = oracle(left, right, 0)
            if level < OMEGA:
                basis[(left, right)] = int(level)
                levels.append(int(level))
        e[i] = max([e[i + 1], *levels])
    return FullBasis(s=s, e=e[:n + 1], basis=basis, bound=n + 1 + sum(e[:n + 1]))


def control_holds(previous: int, following: int, *, n: int, c: int, g: int, size: int) -> bool:
    """``following <= G_G(previous)`` decided on exponents."""
    if following <= 1:
        return True
    return (following - 1).bit_length() <= control_exponent(previous, n=n, c=c, g=g, size=size)

"""Ordinals below w^w, Hardy and Cichon hierarchies, and length bounds.

Ordinals are kept in Cantor normal form as coefficient vectors, lowest
degree first. ``Ordinal.OMEGA_OMEGA`` stands for w^w itself, which only
takes part in fundamental sequences and comparisons.
"""

from __future__ import annotations

import functools
import itertools
import logging
import re
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass

from .conf import workbench_setting
from .exceptions import BudgetExceeded, InputError, OrdinalError

logger = logging.getLogger(__name__)

_TERM_RE = re.compile(r'^(?:w|ω)(?:\^(?P<degree>\d+))?(?:\*(?P<coefficient>\d+))?$')


@functools.total_ordering
class Ordinal:
    __slots__ = ('_coefficients', 'is_top')

    def __init__(self, coefficients: Iterable[int] = (), *, top: bool = False):
        values = list(coefficients)
        if any(c < 0 for c in values):
            raise OrdinalError('ordinal coefficients must be natural numbers')
        while values and values[-1] == 0:
            values.pop()
        self._coefficients = () if top else tuple(values)
        self.is_top = top

    @classmethod
    def from_cnf(cls, high_to_low: Iterable[int]) -> 'Ordinal':
        """Build from ``(c_n, ..., c_0)``."""
        return cls(reversed(list(high_to_low)))

    @classmethod
    def natural(cls, value: int) -> 'Ordinal':
        return cls([value])

    @classmethod
    def omega_power(cls, degree: int, coefficient: int = 1) -> 'Ordinal':
        return cls([0] * degree + [coefficient])

    @property
    def coefficients(self) -> tuple[int, ...]:
        return self._coefficients

    def coefficient(self, degree: int) -> int:
        return self._coefficients[degree] if degree < len(self._coefficients) else 0

    @property
    def degree(self) -> int:
        if self.is_top:
            raise OrdinalError('w^w has no finite degree')
        return max(len(self._coefficients) - 1, 0)

    @property
    def is_zero(self) -> bool:
        return not self.is_top and not self._coefficients

    @property
    def is_successor(self) -> bool:
        return not self.is_top and self.coefficient(0) > 0

    @property
    def is_limit(self) -> bool:
        return self.is_top or (bool(self._coefficients) and self._coefficients[0] == 0)

    def norm(self) -> int:
        """``max(degree, largest coefficient)``; zero has norm 0."""
        if self.is_top:
            raise OrdinalError('the norm of w^w is not defined here')
        if not self._coefficients:
            return 0
        return max(self.degree, max(self._coefficients))

    def predecessor(self) -> 'Ordinal':
        if not self.is_successor:
            raise OrdinalError(f'{self} is not a successor')
        values = list(self._coefficients)
        values[0] -= 1
        return Ordinal(values)

    def fundamental(self, x: int) -> 'Ordinal':
        """The ``x``-th element of the standard fundamental sequence of a limit."""
        if x < 0:
            raise OrdinalError('fundamental sequences are indexed by naturals')
        if self.is_top:
            return Ordinal.omega_power(x + 1)
        if not self.is_limit:
            raise OrdinalError(f'{self} is not a limit ordinal')
        values = list(self._coefficients)
        lowest = next(d for d, c in enumerate(values) if c)
        values[lowest] -= 1
        values[lowest - 1] = x + 1
        return Ordinal(values)

    def __add__(self, other: 'Ordinal') -> 'Ordinal':
        if other.is_zero:
            return self
        if self.is_top or other.is_top:
            if other.is_top and not self.is_top:
                return other
            raise OrdinalError('sums above w^w are not represented')
        if self.is_zero:
            return other
        d = other.degree
        values = list(other._coefficients)
        values[d] += self.coefficient(d)
        values.extend(self._coefficients[d + 1:])
        return Ordinal(values)

    def _key(self) -> tuple:
        if self.is_top:
            return (1,)
        return (0, len(self._coefficients), tuple(reversed(self._coefficients)))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Ordinal.natural(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other: 'Ordinal | int') -> bool:
        if isinstance(other, int):
            other = Ordinal.natural(other)
        return self._key() < other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f'Ordinal({self})'

    def __str__(self) -> str:
        if self.is_top:
            return 'w^w'
        if not self._coefficients:
            return '0'
        parts = []
        for degree in range(len(self._coefficients) - 1, -1, -1):
            c = self._coefficients[degree]
            if not c:
                continue
            if degree == 0:
                parts.append(str(c))
                continue
            base = 'w' if degree == 1 else f'w^{degree}'
            parts.append(base if c == 1 else f'{base}*{c}')
        return '+'.join(parts)

    @classmethod
    def parse(cls, text: str) -> 'Ordinal':
        """Read ``w^k*c + ... + c`` (terms in decreasing degree) or ``w^w``."""
        cleaned = text.replace(' ', '')
        if cleaned in ('w^w', 'ω^ω'):
            return Ordinal.OMEGA_OMEGA
        if not cleaned:
            raise OrdinalError('empty ordinal')
        values: dict[int, int] = {}
        previous = None
        for term in cleaned.split('+'):
            if term.isdigit():
                degree, coefficient = 0, int(term)
            else:
                match = _TERM_RE.match(term)
                if not match:
                    raise OrdinalError(f'cannot read ordinal term {term!r}')
                degree = int(match.group('degree') or 1)
                coefficient = int(match.group('coefficient') or 1)
            if previous is not None and degree >= previous:
                raise OrdinalError(f'terms of {text!r} are not in decreasing degree')
            previous = degree
            values[degree] = coefficient
        top = max(values)
        return cls(values.get(d, 0) for d in range(top + 1))


Ordinal.ZERO = Ordinal()
Ordinal.OMEGA = Ordinal.omega_power(1)
Ordinal.OMEGA_OMEGA = Ordinal(top=True)


def ordinals_below(n: int, norm: int) -> list[Ordinal]:
    """Every ordinal below ``w^(n+1)`` of norm at most ``norm``, ascending."""
    found = {
        Ordinal(reversed(vector))
        for vector in itertools.product(range(norm + 1), repeat=n + 1)
    }
    return sorted(alpha for alpha in found if alpha.norm() <= norm)


# -- control functions --------------------------------------------------------


@dataclass(frozen=True)
class ControlFunction:
    name: str
    fn: Callable[[int], int]

    def __call__(self, x: int) -> int:
        return self.fn(x)

    def check(self, samples: Iterable[int] = range(64)) -> bool:
        """Monotone and inflationary on the sampled arguments."""
        points = sorted(samples)
        values = [self.fn(x) for x in points]
        inflationary = all(v >= x for x, v in zip(points, values))
        monotone = all(a <= b for a, b in zip(values, values[1:]))
        return inflationary and monotone


def successor(x: int) -> int:
    return x + 1


def double(x: int) -> int:
    return 2 * x + 1


def exp2(x: int) -> int:
    return 2 ** x


CONTROLS = {
    'succ': ControlFunction('succ', successor),
    'double': ControlFunction('double', double),
    'exp2': ControlFunction('exp2', exp2),
}


def control(name: str, table: Mapping[str, ControlFunction] = CONTROLS) -> ControlFunction:
    """Look up a control function and spot-check that it is monotone and inflationary."""
    try:
        fn = table[name]
    except KeyError:
        raise InputError(f'unknown control function {name!r} (choose from {", ".join(table)})') from None
    if not fn.check():
        logger.warning('control function %s failed the monotone/inflationary check', name)
        raise InputError(f'control function {name!r} is not monotone and inflationary')
    return fn


def _iterate(h: Callable[[int], int], alpha: Ordinal, x: int, budget: int | None) -> tuple[int, int]:
    """Run the Hardy recursion; returns ``(h^alpha(x), number of h applications)``."""
    budget = workbench_setting('HARDY_BUDGET', budget)
    if x < 0:
        raise OrdinalError('hierarchies are evaluated on naturals')
    if alpha.is_top:
        values = [0] * (x + 1) + [1]
    else:
        values = list(alpha.coefficients)
    steps = 0
    while True:
        lowest = next((d for d, c in enumerate(values) if c), None)
        if lowest is None:
            return x, steps
        if lowest == 0:
            values[0] -= 1
            x = h(x)
            steps += 1
            if steps > budget:
                raise BudgetExceeded(f'hierarchy evaluation needs more than {budget} steps')
        else:
            values[lowest] -= 1
            values[lowest - 1] = x + 1


def hardy(h: Callable[[int], int], alpha: Ordinal, x: int, *, budget: int | None = None) -> int:
    return _iterate(h, alpha, x, budget)[0]


def cichon(h: Callable[[int], int], alpha: Ordinal, x: int, *, budget: int | None = None) -> int:
    return _iterate(h, alpha, x, budget)[1]


def iterate_control(h: Callable[[int], int], times: int, x: int) -> int:
    for _ in range(times):
        x = h(x)
    return x


# -- controlled descending sequences -----------------------------------------


def _vector_norm(vector: tuple[int, ...]) -> int:
    """Norm of a high-to-low coefficient vector."""
    for position, c in enumerate(vector):
        if c:
            return max(len(vector) - 1 - position, max(vector))
    return 0


def max_controlled_descent(n: int, start_norm: int, h: Callable[[int], int], *, budget: int | None = None) -> int:
    """Longest strictly descending ``a_0 > a_1 > ...`` below ``w^(n+1)`` with
    ``norm(a_i) <= h^i(start_norm)``, found by exhaustive memoised search."""
    budget = workbench_setting('HARDY_BUDGET', budget)
    width = n + 1
    bounds = [start_norm]
    visited = 0

    def bound(position: int) -> int:
        while len(bounds) <= position:
            bounds.append(h(bounds[-1]))
        return bounds[position]

    def candidates(limit: int, below: tuple[int, ...] | None) -> list[tuple[int, ...]]:
        vectors = itertools.product(range(limit + 1), repeat=width)
        return [v for v in vectors if _vector_norm(v) <= limit and (below is None or v < below)]

    @functools.lru_cache(maxsize=None)
    def longest(vector: tuple[int, ...], position: int) -> int:
        nonlocal visited
        visited += 1
        if visited > budget:
            raise BudgetExceeded(f'descent search visited more than {budget} states')
        if not any(vector):
            return 1
        return 1 + max((longest(v, position + 1) for v in candidates(bound(position + 1), vector)), default=0)

    best = max(longest(v, 0) for v in candidates(bound(0), None))
    logger.debug('longest controlled descent below w^%d from %d: %d (%d states)', width, start_norm, best, visited)
    return best


# -- symbolic bounds ----------------------------------------------------------


@dataclass
class BoundReport:
    lines: list[tuple[str, str]]

    def as_dict(self) -> dict[str, str]:
        return dict(self.lines)


def control_exponent(x: int, *, n: int, c: int, g: int, size: int) -> int:
    """Exponent ``E`` with ``G_G(x) = 2^E``."""
    return 2 ** (2 * n + 6) * c * c * g * g * size ** 3 * x ** 4


def bound_report(*, n: int, s: int, g: int, c: int, size: int, classes: list[str]) -> BoundReport:
    rank = Ordinal.omega_power(n + 1)
    lines = [
        ('n', str(n)),
        ('grammar_size', str(size)),
        ('rank_below', str(rank)),
        ('pair_level', f'el(E,F) <= {c}*(E_B*size(E,F) + size(E,F)^2) unless E ~ F'),
        ('control', f'G_G(x) = 2^(2^{2 * n + 6} * {c}^2 * {g}^2 * {size}^3 * x^4)'),
        ('start', f'N_0 <= 2^(2^{2 * n + 5} * {s}^2 * {g}^2 * log2({size}))'),
        ('iterations', f'L <= h_{rank}(N_0) with h = G_G'),
        ('candidate_bound', f'E_B <= N_L <= h^{rank}(N_0)'),
        ('final', 'E <= h^(w^w)(h(|G|)) with h = H^(w^2*d), d a fixed constant'),
    ]
    lines.extend((f'class_{i}', text) for i, text in enumerate(classes, start=1))
    return BoundReport(lines)

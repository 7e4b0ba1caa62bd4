"""Regular terms over a ranked alphabet, stored as shared minimal graphs.

A :class:`TermStore` interns every term it sees. Nodes are labelled with a
nonterminal index (``>= 0``) or with ``-k`` for the variable ``x<k>``. The
store is kept minimal: no two stored nodes have the same infinite unfolding,
so two refs denote equal terms exactly when they are the same integer.

Finite terms are hash-consed bottom-up. Graphs with cycles are minimised one
strongly connected component at a time (partition refinement over the
component and the stored nodes it reaches) and then matched against the
cyclic components already stored through a canonical breadth-first
serialization of the component.
"""

from __future__ import annotations

import logging
import threading
from collections import deque
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field

from .conf import workbench_setting
from .exceptions import ArityError, EnumerationRefused, UnknownSymbolError

logger = logging.getLogger(__name__)

TermRef = int


@dataclass(frozen=True)
class Symbol:
    name: str
    arity: int


class RankedAlphabet:
    """Finite ordered set of nonterminals with their arities."""

    def __init__(self, symbols: Iterable[tuple[str, int]] = ()):
        self._symbols: list[Symbol] = []
        self._index: dict[str, int] = {}
        for name, arity in symbols:
            if name in self._index:
                raise ArityError(f'nonterminal {name} declared twice')
            if arity < 0:
                raise ArityError(f'nonterminal {name} has negative arity')
            self._index[name] = len(self._symbols)
            self._symbols.append(Symbol(name, arity))

    def __len__(self) -> int:
        return len(self._symbols)

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self._symbols)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownSymbolError(f'unknown nonterminal {name}') from None

    def symbol(self, index: int) -> Symbol:
        return self._symbols[index]

    def arity(self, index: int) -> int:
        return self._symbols[index].arity

    @property
    def max_arity(self) -> int:
        return max((s.arity for s in self._symbols), default=0)


@dataclass
class TermGraph:
    """A rooted graph drawing of a term, possibly with redundant nodes.

    ``nodes[i]`` is ``(label, children)`` with children given as local indices.
    """

    nodes: list[tuple[int, tuple[int, ...]]] = field(default_factory=list)
    root: int = 0


def _external(ref: TermRef) -> int:
    # Local graphs encode already stored refs as negative child entries.
    return -(ref + 1)


class TermStore:
    def __init__(self, alphabet: RankedAlphabet):
        self.alphabet = alphabet
        self._labels: list[int] = []
        self._children: list[tuple[int, ...]] = []
        self._table: dict[tuple[int, tuple[int, ...]], TermRef] = {}
        self._cyclic: dict[tuple, TermRef] = {}
        self._lock = threading.RLock()
        self._size: dict[TermRef, int] = {}
        self._finite: dict[TermRef, bool] = {}
        self._height: dict[TermRef, int | None] = {}
        self._vars: dict[TermRef, frozenset[int]] = {}

    def __len__(self) -> int:
        return len(self._labels)

    # -- construction -------------------------------------------------------

    def _make(self, label: int, children: tuple[int, ...]) -> TermRef:
        key = (label, children)
        ref = self._table.get(key)
        if ref is not None:
            return ref
        with self._lock:
            ref = self._table.get(key)
            if ref is None:
                ref = len(self._labels)
                self._labels.append(label)
                self._children.append(children)
                self._table[key] = ref
            return ref

    def var(self, k: int) -> TermRef:
        if k < 1:
            raise ArityError(f'variable index must be positive, got x{k}')
        return self._make(-k, ())

    def app(self, symbol: str | int, children: Sequence[TermRef] = ()) -> TermRef:
        index = self.alphabet.index(symbol) if isinstance(symbol, str) else symbol
        arity = self.alphabet.arity(index)
        if len(children) != arity:
            name = self.alphabet.symbol(index).name
            raise ArityError(f'{name} expects {arity} arguments, got {len(children)}')
        return self._make(index, tuple(children))

    def minimize(self, term: TermGraph | TermRef) -> TermRef:
        """Return the canonical ref of a graph drawing (refs are already canonical)."""
        if not isinstance(term, TermGraph):
            return term
        nodes = []
        for label, children in term.nodes:
            if label >= 0:
                arity = self.alphabet.arity(label)
                if len(children) != arity:
                    name = self.alphabet.symbol(label).name
                    raise ArityError(f'{name} expects {arity} arguments, got {len(children)}')
            elif children:
                raise ArityError(f'variable x{-label} cannot take arguments')
            nodes.append((label, tuple(children)))
        return self._intern_local(nodes)[term.root]

    def _intern_local(self, nodes: Sequence[tuple[int, tuple[int, ...]]]) -> list[TermRef]:
        """Intern a local graph; children are local indices or encoded stored refs."""
        with self._lock:
            resolved: list[TermRef | None] = [None] * len(nodes)
            for component in _strongly_connected(nodes):
                if len(component) == 1 and component[0] not in nodes[component[0]][1]:
                    index = component[0]
                    label, children = nodes[index]
                    resolved[index] = self._make(label, tuple(
                        -(c + 1) if c < 0 else resolved[c] for c in children
                    ))
                else:
                    self._intern_component(nodes, component, resolved)
            return resolved  # type: ignore[return-value]

    def _intern_component(self, nodes, component: list[int], resolved: list[TermRef | None]) -> None:
        members = set(component)

        def outside(c: int) -> TermRef:
            return -(c + 1) if c < 0 else resolved[c]

        # Partition refinement over the component together with the stored
        # nodes it reaches; a new node may unfold like one of those.
        stored: list[TermRef] = []
        seen: set[TermRef] = set()
        for u in component:
            for c in nodes[u][1]:
                if not (c >= 0 and c in members):
                    for node in self.reachable(outside(c)):
                        if node not in seen:
                            seen.add(node)
                            stored.append(node)
        states = [('n', u) for u in component] + [('s', ref) for ref in stored]

        def edges(state: tuple[str, int]) -> tuple[int, list[tuple[str, int]]]:
            kind, value = state
            if kind == 's':
                return self._labels[value], [('s', child) for child in self._children[value]]
            label, children = nodes[value]
            return label, [('n', c) if c >= 0 and c in members else ('s', outside(c)) for c in children]

        block = {state: 0 for state in states}
        count = 1
        while True:
            signatures: dict[tuple, int] = {}
            refined = {}
            for state in states:
                label, targets = edges(state)
                sig = (block[state], label, tuple(block[t] for t in targets))
                refined[state] = signatures.setdefault(sig, len(signatures))
            block = refined
            if len(signatures) == count:
                break
            count = len(signatures)

        known = {block[('s', ref)]: ref for ref in stored}
        fresh = [u for u in component if block[('n', u)] not in known]
        for u in component:
            if block[('n', u)] in known:
                resolved[u] = known[block[('n', u)]]
        if not fresh:
            return

        def target(c: int) -> tuple[str, int]:
            if c >= 0 and c in members and block[('n', c)] not in known:
                return ('b', block[('n', c)])
            return ('r', resolved[c] if c >= 0 and c in members else outside(c))

        quotient: dict[int, tuple[int, tuple[tuple[str, int], ...]]] = {}
        for u in fresh:
            b = block[('n', u)]
            if b in quotient:
                continue
            label, children = nodes[u]
            quotient[b] = (label, tuple(target(c) for c in children))

        start = block[('n', fresh[0])]
        key = _component_key(quotient, start)
        existing = self._cyclic.get(key)
        mapping: dict[int, TermRef] = {}
        if existing is not None:
            mapping[start] = existing
            queue = deque([start])
            while queue:
                b = queue.popleft()
                stored_children = self._children[mapping[b]]
                for (kind, value), stored in zip(quotient[b][1], stored_children):
                    if kind == 'b' and value not in mapping:
                        mapping[value] = stored
                        queue.append(value)
        else:
            for b in quotient:
                mapping[b] = len(self._labels)
                self._labels.append(quotient[b][0])
                self._children.append(())
            for b, (label, children) in quotient.items():
                ref = mapping[b]
                kids = tuple(mapping[v] if kind == 'b' else v for kind, v in children)
                self._children[ref] = kids
                self._table.setdefault((label, kids), ref)
            for b in quotient:
                self._cyclic[_component_key(quotient, b)] = mapping[b]
        for u in fresh:
            resolved[u] = mapping[block[('n', u)]]

    # -- inspection ---------------------------------------------------------

    def label(self, ref: TermRef) -> int:
        return self._labels[ref]

    def children(self, ref: TermRef) -> tuple[TermRef, ...]:
        return self._children[ref]

    def is_var(self, ref: TermRef) -> bool:
        return self._labels[ref] < 0

    def var_index(self, ref: TermRef) -> int | None:
        label = self._labels[ref]
        return -label if label < 0 else None

    def label_name(self, label: int) -> str:
        return f'x{-label}' if label < 0 else self.alphabet.symbol(label).name

    def reachable(self, ref: TermRef) -> list[TermRef]:
        seen = {ref}
        order = [ref]
        stack = [ref]
        while stack:
            for child in self._children[stack.pop()]:
                if child not in seen:
                    seen.add(child)
                    order.append(child)
                    stack.append(child)
        return order

    def size(self, ref: TermRef) -> int:
        """Number of distinct subterms."""
        cached = self._size.get(ref)
        if cached is None:
            cached = self._size[ref] = len(self.reachable(ref))
        return cached

    def size_pair(self, a: TermRef, b: TermRef) -> int:
        return len(set(self.reachable(a)) | set(self.reachable(b)))

    def ntsize(self, ref: TermRef) -> int:
        """Number of distinct subterms with a nonterminal root."""
        return sum(1 for node in self.reachable(ref) if self._labels[node] >= 0)

    def vars(self, ref: TermRef) -> frozenset[int]:
        cached = self._vars.get(ref)
        if cached is None:
            cached = self._vars[ref] = frozenset(
                -self._labels[node] for node in self.reachable(ref) if self._labels[node] < 0
            )
        return cached

    def vars_pair(self, a: TermRef, b: TermRef) -> frozenset[int]:
        return self.vars(a) | self.vars(b)

    def is_finite(self, ref: TermRef) -> bool:
        cached = self._finite.get(ref)
        if cached is None:
            cached = self._finite[ref] = self._acyclic_height(ref) is not None
        return cached

    def height(self, ref: TermRef) -> int | None:
        """Longest root-to-leaf path; ``None`` for infinite terms."""
        if ref not in self._height:
            self._height[ref] = self._acyclic_height(ref)
        return self._height[ref]

    def _acyclic_height(self, ref: TermRef) -> int | None:
        height: dict[TermRef, int] = {}
        on_path: set[TermRef] = set()
        stack: list[tuple[TermRef, bool]] = [(ref, False)]
        while stack:
            node, done = stack.pop()
            if done:
                on_path.discard(node)
                kids = self._children[node]
                height[node] = 1 + max(height[c] for c in kids) if kids else 0
                continue
            if node in height:
                continue
            if node in on_path:
                return None
            on_path.add(node)
            stack.append((node, True))
            for child in self._children[node]:
                if child in on_path:
                    return None
                if child not in height:
                    stack.append((child, False))
        return height[ref]

    def root_substitution(self, ref: TermRef) -> dict[int, TermRef]:
        """``{i: F_i}`` for ``ref = A(F_1, ..., F_k)``; empty for variables."""
        return {i: child for i, child in enumerate(self._children[ref], start=1)}

    # -- substitution -------------------------------------------------------

    def apply_subst(self, ref: TermRef, sigma: Mapping[int, TermRef]) -> TermRef:
        """Simultaneously replace ``x<k>`` by ``sigma[k]``; other variables stay."""
        support = {k: v for k, v in sigma.items() if self._table.get((-k, ())) != v}
        if not support or not (self.vars(ref) & support.keys()):
            return ref
        if self.is_finite(ref):
            return self._subst_finite(ref, support)
        reach = self.reachable(ref)
        local = {node: i for i, node in enumerate(reach)}
        nodes = []
        for node in reach:
            label = self._labels[node]
            if label < 0 and -label in support:
                # Placeholder: never referenced, parents point at the image directly.
                nodes.append((label, ()))
                continue
            kids = []
            for child in self._children[node]:
                child_label = self._labels[child]
                if child_label < 0 and -child_label in support:
                    kids.append(_external(support[-child_label]))
                else:
                    kids.append(local[child])
            nodes.append((label, tuple(kids)))
        return self._intern_local(nodes)[0]

    def _subst_finite(self, ref: TermRef, support: Mapping[int, TermRef]) -> TermRef:
        memo: dict[TermRef, TermRef] = {}
        stack: list[tuple[TermRef, bool]] = [(ref, False)]
        while stack:
            node, ready = stack.pop()
            if node in memo:
                continue
            label = self._labels[node]
            if label < 0:
                memo[node] = support.get(-label, node)
                continue
            if not ready:
                stack.append((node, True))
                stack.extend((c, False) for c in self._children[node] if c not in memo)
                continue
            old = self._children[node]
            kids = tuple(memo[c] for c in old)
            memo[node] = node if kids == old else self._make(label, kids)
        return memo[ref]

    # -- export -------------------------------------------------------------

    def graph(self, ref: TermRef) -> TermGraph:
        """Least graph representation in breadth-first order from the root."""
        order = {ref: 0}
        queue = deque([ref])
        nodes: list[tuple[int, tuple[int, ...]]] = []
        while queue:
            node = queue.popleft()
            kids = []
            for child in self._children[node]:
                if child not in order:
                    order[child] = len(order)
                    queue.append(child)
                kids.append(order[child])
            nodes.append((self._labels[node], tuple(kids)))
        return TermGraph(nodes=nodes, root=0)

    def serialize(self, ref: TermRef) -> str:
        """Canonical let-binding text of the minimal graph, root first."""
        lines = []
        for i, (label, kids) in enumerate(self.graph(ref).nodes):
            name = self.label_name(label)
            if kids:
                name += '(' + ', '.join(f't{k}' for k in kids) + ')'
            lines.append(f'let t{i} = {name}')
        return '\n'.join(lines)

    def format(self, ref: TermRef) -> str:
        """Concrete syntax; cycles are written with ``rec``/``ref`` binders."""
        names: dict[TermRef, str | None] = {}
        counter = [0]

        def emit(node: TermRef) -> str:
            if node in names:
                if names[node] is None:
                    counter[0] += 1
                    names[node] = f'L{counter[0]}'
                return f'ref {names[node]}'
            label = self._labels[node]
            text = self.label_name(label)
            kids = self._children[node]
            if not kids:
                return text
            names[node] = None
            inner = ', '.join(emit(child) for child in kids)
            binder = names.pop(node)
            text = f'{text}({inner})'
            return f'rec {binder} = {text}' if binder else text

        return emit(ref)

    def sort_key(self, ref: TermRef) -> tuple[int, str]:
        return (self.size(ref), self.serialize(ref))


def _component_key(quotient: Mapping[int, tuple], start: int) -> tuple:
    order = {start: 0}
    queue = deque([start])
    key = []
    while queue:
        b = queue.popleft()
        label, children = quotient[b]
        encoded = []
        for kind, value in children:
            if kind == 'b':
                if value not in order:
                    order[value] = len(order)
                    queue.append(value)
                encoded.append(('l', order[value]))
            else:
                encoded.append(('r', value))
        key.append((label, tuple(encoded)))
    return tuple(key)


def _strongly_connected(nodes: Sequence[tuple[int, tuple[int, ...]]]) -> list[list[int]]:
    """Tarjan's algorithm, iterative; components come out children first."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    result: list[list[int]] = []
    counter = 0
    for root in range(len(nodes)):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            node, pos = work.pop()
            if pos == 0:
                index[node] = low[node] = counter
                counter += 1
                stack.append(node)
                on_stack.add(node)
            children = [c for c in nodes[node][1] if c >= 0]
            if pos < len(children):
                work.append((node, pos + 1))
                child = children[pos]
                if child not in index:
                    work.append((child, 0))
                elif child in on_stack:
                    low[node] = min(low[node], index[child])
                continue
            for child in children:
                if child in on_stack:
                    low[node] = min(low[node], low[child])
            if low[node] == index[node]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.append(member)
                    if member == node:
                        break
                result.append(component)
    return result


def term_equal(store: TermStore, a: TermGraph | TermRef, b: TermGraph | TermRef) -> bool:
    return store.minimize(a) == store.minimize(b)


def unfold_equal(store: TermStore, a: TermRef, b: TermRef, depth: int) -> bool:
    """Compare the depth-``depth`` unfoldings of two terms node by node."""
    frontier = {(a, b)}
    seen: set[tuple[TermRef, TermRef]] = set()
    for _ in range(depth + 1):
        following = set()
        for left, right in frontier:
            if left == right or (left, right) in seen:
                continue
            seen.add((left, right))
            if store.label(left) != store.label(right):
                return False
            following.update(zip(store.children(left), store.children(right)))
        frontier = following
        if not frontier:
            break
    return True


def enumerate_terms(
    store: TermStore,
    max_var: int,
    size_bound: int,
    *,
    budget: int | None = None,
) -> list[TermRef]:
    """All regular terms with at most ``size_bound`` distinct subterms over
    variables ``x1..x<max_var>``, each once, in canonical order."""
    budget = workbench_setting('ENUMERATION_BUDGET', budget)
    labels = list(range(len(store.alphabet))) + [-k for k in range(1, max_var + 1)]
    arity = {label: (store.alphabet.arity(label) if label >= 0 else 0) for label in labels}
    found: set[TermRef] = set()
    emitted = 0
    nodes: list[list] = []

    def assign(i: int, slot: int) -> Iterator[None]:
        label = nodes[i][0]
        if slot == arity[label]:
            yield from expand(i + 1)
            return
        limit = len(nodes) + (1 if len(nodes) < size_bound else 0)
        for target in range(limit):
            fresh = target == len(nodes)
            if fresh:
                nodes.append([None, []])
            nodes[i][1].append(target)
            yield from assign(i, slot + 1)
            nodes[i][1].pop()
            if fresh:
                nodes.pop()

    def expand(i: int) -> Iterator[None]:
        if i == len(nodes):
            yield None
            return
        for label in labels:
            nodes[i][0] = label
            yield from assign(i, 0)
        nodes[i][0] = None

    if size_bound >= 1 and labels:
        nodes.append([None, []])
        for _ in expand(0):
            emitted += 1
            if emitted > budget:
                raise EnumerationRefused(
                    f'term enumeration exceeded {budget} candidate graphs (size <= {size_bound})'
                )
            found.add(store._intern_local([(label, tuple(kids)) for label, kids in nodes])[0])
    logger.debug('enumerated %d terms from %d graphs (vars<=%d, size<=%d)',
                 len(found), emitted, max_var, size_bound)
    return sorted(found, key=store.sort_key)

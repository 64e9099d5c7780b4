"""Safety automata for sequences over {1, m} avoiding forbidden blocks.

A finite set of forbidden blocks defines a subshift: the set of
infinite sequences over the two symbols '1' and 'm' containing none of
the blocks as a factor.  The automaton built here accepts exactly the
prefixes of those sequences: an Aho-Corasick matcher with the matching
states deleted, then pruned so that every remaining state lies on an
infinite path.

States of a built automaton are numbered in breadth-first order from
the start (symbol '1' explored before 'm'), which makes transition
tables and DOT exports reproducible byte for byte.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .sequences import Word

ZERO_FREE_SYMBOLS = ("1", "m")


@dataclass(frozen=True)
class Automaton:
    """Deterministic partial automaton over a fixed symbol tuple.

    ``transitions[s][i]`` is the target of state ``s`` on symbol
    ``symbols[i]``, or None where the symbol is not allowed.  ``start``
    is None when the language is empty.  ``forbidden`` records the
    blocks the automaton was built from (metadata only).
    """

    transitions: tuple[tuple[int | None, ...], ...]
    start: int | None
    forbidden: tuple[str, ...] = ()
    symbols: tuple[str, ...] = ZERO_FREE_SYMBOLS

    def __post_init__(self) -> None:
        n = len(self.transitions)
        if self.start is not None and not 0 <= self.start < n:
            raise ValueError(f"start state {self.start} out of range")
        for s, row in enumerate(self.transitions):
            if len(row) != len(self.symbols):
                raise ValueError(f"state {s}: row width != symbol count")
            for t in row:
                if t is not None and not 0 <= t < n:
                    raise ValueError(f"state {s}: target {t} out of range")

    @property
    def n_states(self) -> int:
        return len(self.transitions)

    def edges(self) -> Iterable[tuple[int, int, int]]:
        """Yield (state, symbol_index, target) for every present edge."""
        for s, row in enumerate(self.transitions):
            for i, t in enumerate(row):
                if t is not None:
                    yield s, i, t


def _as_text(block: Word | str, symbols: tuple[str, ...]) -> str:
    text = block.text() if isinstance(block, Word) else str(block)
    if not text:
        raise ValueError("forbidden block must be nonempty")
    for ch in text:
        if ch not in symbols:
            raise ValueError(f"symbol {ch!r} not among {symbols}")
    return text


def build_safety_automaton(blocks: Iterable[Word | str],
                           symbols: tuple[str, ...] = ZERO_FREE_SYMBOLS,
                           ) -> Automaton:
    """Build the pruned factor automaton avoiding the given blocks."""
    texts = sorted({_as_text(b, symbols) for b in blocks},
                   key=lambda t: (len(t), t))

    children: list[dict[str, int]] = [{}]
    terminal = [False]
    for text in texts:
        cur = 0
        for ch in text:
            nxt = children[cur].get(ch)
            if nxt is None:
                nxt = len(children)
                children[cur][ch] = nxt
                children.append({})
                terminal.append(False)
            cur = nxt
        terminal[cur] = True

    fail = [0] * len(children)
    order: list[int] = []
    queue = deque(children[0].values())
    while queue:
        u = queue.popleft()
        order.append(u)
        for ch, v in children[u].items():
            f = fail[u]
            while f and ch not in children[f]:
                f = fail[f]
            fv = children[f].get(ch, 0)
            fail[v] = fv if fv != v else 0
            terminal[v] = terminal[v] or terminal[fail[v]]
            queue.append(v)

    delta = [[0] * len(symbols) for _ in children]
    for i, ch in enumerate(symbols):
        delta[0][i] = children[0].get(ch, 0)
    for u in order:
        for i, ch in enumerate(symbols):
            if ch in children[u]:
                delta[u][i] = children[u][ch]
            else:
                delta[u][i] = delta[fail[u]][i]

    rows = []
    for u in range(len(children)):
        if terminal[u]:
            rows.append(tuple(None for _ in symbols))
        else:
            rows.append(tuple(None if terminal[t] else t for t in delta[u]))
    raw = Automaton(tuple(rows), 0, tuple(texts), symbols)
    return _canonical_form(trim(raw))


def trim(a: Automaton) -> Automaton:
    """Remove states with no outgoing edge (repeatedly) and states not
    reachable from the start.  Keeps every state on an infinite path.
    Surviving states keep their relative order; idempotent."""
    if a.start is None:
        return Automaton((), None, a.forbidden, a.symbols)
    alive = set(range(a.n_states))
    while True:
        dropped = {s for s in alive
                   if not any(t is not None and t in alive
                              for t in a.transitions[s])}
        if not dropped:
            break
        alive -= dropped
    if a.start not in alive:
        return Automaton((), None, a.forbidden, a.symbols)
    reach = {a.start}
    frontier = [a.start]
    while frontier:
        s = frontier.pop()
        for t in a.transitions[s]:
            if t is not None and t in alive and t not in reach:
                reach.add(t)
                frontier.append(t)
    kept = sorted(reach)
    relabel = {s: i for i, s in enumerate(kept)}
    rows = tuple(
        tuple(relabel[t] if (t is not None and t in reach) else None
              for t in a.transitions[s])
        for s in kept)
    return Automaton(rows, relabel[a.start], a.forbidden, a.symbols)


def _bfs_order(transitions: Sequence[Sequence[int | None]],
               start: int) -> list[int]:
    seen = {start}
    order = [start]
    qi = 0
    while qi < len(order):
        s = order[qi]
        qi += 1
        for t in transitions[s]:
            if t is not None and t not in seen:
                seen.add(t)
                order.append(t)
    return order


def _canonical_form(a: Automaton) -> Automaton:
    if a.start is None:
        return Automaton((), None, a.forbidden, a.symbols)
    order = _bfs_order(a.transitions, a.start)
    relabel = {s: i for i, s in enumerate(order)}
    rows = tuple(
        tuple(None if t is None else relabel[t] for t in a.transitions[s])
        for s in order)
    return Automaton(rows, 0, a.forbidden, a.symbols)


def canonical_key(a: Automaton):
    """Hashable form invariant under state relabeling (metadata ignored)."""
    c = _canonical_form(trim(a))
    return (c.symbols, c.start, c.transitions)


def is_isomorphic(a: Automaton, b: Automaton) -> bool:
    return canonical_key(a) == canonical_key(b)


def strongly_connected_components(
        transitions: Sequence[Sequence[int | None]]) -> list[tuple[int, ...]]:
    """Tarjan's algorithm with an explicit stack."""
    n = len(transitions)
    index = [-1] * n
    low = [0] * n
    on = [False] * n
    stack: list[int] = []
    comps: list[tuple[int, ...]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        call: list[tuple[int, int]] = [(root, 0)]
        while call:
            v, pos = call.pop()
            if pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on[v] = True
            succs = [t for t in transitions[v] if t is not None]
            descended = False
            for i in range(pos, len(succs)):
                w = succs[i]
                if index[w] == -1:
                    call.append((v, i + 1))
                    call.append((w, 0))
                    descended = True
                    break
                if on[w]:
                    low[v] = min(low[v], index[w])
            if descended:
                continue
            if call:
                parent = call[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(tuple(sorted(comp)))
    return comps


class GrowthKind(str, Enum):
    EMPTY = "Empty"
    FINITE_PATHS = "FinitePaths"
    COUNTABLY_INFINITE = "CountablyInfinite"
    UNCOUNTABLE = "Uncountable"


@dataclass(frozen=True)
class GrowthClass:
    """Cardinality class of the infinite-path language.

    ``path_count`` is the exact number of infinite paths when finite.
    ``evidence`` lists the states (of the trimmed automaton) of the
    witnessing component: a branching component for Uncountable, two
    linked cycles for CountablyInfinite."""

    kind: GrowthKind
    path_count: int | None = None
    evidence: tuple[int, ...] = ()


def _component_stats(a: Automaton):
    comps = strongly_connected_components(a.transitions)
    comp_of = {}
    for ci, comp in enumerate(comps):
        for s in comp:
            comp_of[s] = ci
    internal = []
    for comp in comps:
        members = set(comp)
        edges = sum(1 for s in comp for t in a.transitions[s]
                    if t is not None and t in members)
        internal.append(edges)
    return comps, comp_of, internal


def classify_growth(a: Automaton) -> GrowthClass:
    """Decide whether the avoiding sequences form an empty, finite,
    countably infinite, or uncountable set."""
    a = trim(a)
    if a.start is None:
        return GrowthClass(GrowthKind.EMPTY, 0)
    comps, comp_of, internal = _component_stats(a)

    for comp, edges in zip(comps, internal):
        if edges > len(comp):
            return GrowthClass(GrowthKind.UNCOUNTABLE, None, comp)

    cyclic = [ci for ci, comp in enumerate(comps) if internal[ci] == len(comp)]
    cyclic_set = set(cyclic)
    succ_comps: dict[int, set[int]] = {ci: set() for ci in range(len(comps))}
    for s, _i, t in a.edges():
        if comp_of[s] != comp_of[t]:
            succ_comps[comp_of[s]].add(comp_of[t])
    for ci in cyclic:
        seen = set()
        frontier = [ci]
        while frontier:
            c = frontier.pop()
            for d in succ_comps[c]:
                if d not in seen:
                    seen.add(d)
                    frontier.append(d)
        linked = sorted(seen & cyclic_set)
        if linked:
            evidence = tuple(sorted(comps[ci] + comps[linked[0]]))
            return GrowthClass(GrowthKind.COUNTABLY_INFINITE, None, evidence)

    cyclic_states = {s for ci in cyclic for s in comps[ci]}
    memo: dict[int, int] = {}
    stack = [a.start]
    while stack:
        s = stack[-1]
        if s in memo:
            stack.pop()
            continue
        if s in cyclic_states:
            memo[s] = 1
            stack.pop()
            continue
        deps = [t for t in a.transitions[s] if t is not None]
        missing = [t for t in deps if t not in memo]
        if missing:
            stack.extend(missing)
            continue
        memo[s] = sum(memo[t] for t in deps)
        stack.pop()
    return GrowthClass(GrowthKind.FINITE_PATHS, memo[a.start])


def count_words(a: Automaton, n: int) -> int:
    """Number of length-n prefixes of infinite avoiding sequences.

    Exact (arbitrary precision); n is capped at 64.
    """
    if not 0 <= n <= 64:
        raise ValueError(f"n must be between 0 and 64, got {n}")
    a = trim(a)
    if a.start is None:
        return 0
    counts = {a.start: 1}
    for _ in range(n):
        nxt: dict[int, int] = {}
        for s, c in counts.items():
            for t in a.transitions[s]:
                if t is not None:
                    nxt[t] = nxt.get(t, 0) + c
        counts = nxt
    return sum(counts.values())


def growth_rate(a: Automaton, iterations: int = 200) -> float:
    """Exponential growth rate of the factor counts, as the largest
    spectral radius over strongly connected components (power iteration
    on A + I, which converges on periodic cycles too)."""
    a = trim(a)
    if a.start is None:
        return 0.0
    comps, _comp_of, internal = _component_stats(a)
    best = 0.0
    for comp, edges in zip(comps, internal):
        if edges == 0:
            continue
        idx = {s: i for i, s in enumerate(comp)}
        mat = np.zeros((len(comp), len(comp)))
        for s in comp:
            for t in a.transitions[s]:
                if t is not None and t in idx:
                    mat[idx[s], idx[t]] += 1.0
        shifted = mat + np.eye(len(comp))
        vec = np.full(len(comp), 1.0 / math.sqrt(len(comp)))
        for _ in range(iterations):
            nxt = shifted @ vec
            vec = nxt / np.linalg.norm(nxt)
        rate = float(vec @ (shifted @ vec)) - 1.0
        best = max(best, rate)
    return best


def export_dot(a: Automaton, name: str = "safety") -> str:
    """Graphviz source with a fixed ordering of nodes and edges."""
    lines = [f"digraph {name} {{"]
    if a.forbidden:
        lines.append(f"  // forbidden: {' '.join(a.forbidden)}")
    lines.append("  rankdir=LR;")
    lines.append("  node [shape=circle];")
    if a.start is None:
        lines.append('  empty [shape=plaintext, label="(empty language)"];')
    else:
        lines.append('  __start [shape=point, label=""];')
        lines.append(f"  __start -> s{a.start};")
    for s in range(a.n_states):
        lines.append(f"  s{s};")
    for s, i, t in a.edges():
        lines.append(f'  s{s} -> s{t} [label="{a.symbols[i]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

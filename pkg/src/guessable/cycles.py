"""Cycle and reachability analysis on small state graphs.

Everything here works on an explicit node set plus a successor map
``succ[node] -> iterable of nodes``; edges leaving the node set are
ignored.  Nodes must be hashable and sortable so that all outputs are
deterministic.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Mapping, Sequence

Node = Hashable


def _restricted(nodes: set, succ: Mapping) -> dict:
    return {n: [m for m in succ.get(n, ()) if m in nodes] for n in nodes}


def forward_closure(starts: Iterable[Node], nodes: set, succ: Mapping) -> set:
    """Nodes reachable from starts without leaving `nodes`."""
    seen = {s for s in starts if s in nodes}
    stack = list(seen)
    while stack:
        n = stack.pop()
        for m in succ.get(n, ()):
            if m in nodes and m not in seen:
                seen.add(m)
                stack.append(m)
    return seen


def backward_closure(targets: Iterable[Node], nodes: set, succ: Mapping) -> set:
    pred: dict[Node, list[Node]] = {n: [] for n in nodes}
    for n in nodes:
        for m in succ.get(n, ()):
            if m in nodes:
                pred[m].append(n)
    seen = {t for t in targets if t in nodes}
    stack = list(seen)
    while stack:
        n = stack.pop()
        for p in pred[n]:
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


def strongly_connected_components(nodes: set, succ: Mapping) -> list[list[Node]]:
    """Tarjan's algorithm, iterative. Components in deterministic order."""
    adj = _restricted(nodes, succ)
    index: dict[Node, int] = {}
    low: dict[Node, int] = {}
    on_stack: set = set()
    stack: list[Node] = []
    components: list[list[Node]] = []
    counter = 0

    for root in sorted(nodes):
        if root in index:
            continue
        work: list[tuple[Node, int]] = [(root, 0)]
        while work:
            node, child_i = work[-1]
            if child_i == 0:
                index[node] = low[node] = counter
                counter += 1
                stack.append(node)
                on_stack.add(node)
            advanced = False
            children = adj[node]
            while child_i < len(children):
                child = children[child_i]
                child_i += 1
                if child not in index:
                    work[-1] = (node, child_i)
                    work.append((child, 0))
                    advanced = True
                    break
                if child in on_stack:
                    low[node] = min(low[node], index[child])
            if advanced:
                continue
            work.pop()
            if low[node] == index[node]:
                comp = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    comp.append(member)
                    if member == node:
                        break
                components.append(sorted(comp))
            if work:
                parent, _ = work[-1]
                low[parent] = min(low[parent], low[node])
    return components


def is_nontrivial(component: Sequence[Node], succ: Mapping) -> bool:
    """The component carries a cycle: more than one node, or a self-loop."""
    if len(component) > 1:
        return True
    node = component[0]
    return node in succ.get(node, ())


def cycle_nodes(nodes: set, succ: Mapping) -> set:
    """Nodes lying on some cycle inside `nodes`."""
    out: set = set()
    for comp in strongly_connected_components(nodes, succ):
        if is_nontrivial(comp, _restricted(nodes, succ)):
            out.update(comp)
    return out


def parity_cycle_nodes(
    nodes: set, succ: Mapping, priority: Callable[[Node], int], want: int
) -> set:
    """Nodes on a cycle whose maximum priority has parity `want` (0/1).

    A cycle has maximum priority p iff it stays within the priority<=p
    subgraph and visits a priority-p node, so it suffices to scan the
    nontrivial SCCs of each such subgraph.
    """
    result: set = set()
    for p in sorted({priority(n) for n in nodes}):
        if p % 2 != want:
            continue
        sub = {n for n in nodes if priority(n) <= p}
        adj = _restricted(sub, succ)
        for comp in strongly_connected_components(sub, succ):
            if not is_nontrivial(comp, adj):
                continue
            if any(priority(n) == p for n in comp):
                result.update(comp)
    return result


def can_reach_parity_cycle(
    nodes: set, succ: Mapping, priority: Callable[[Node], int], want: int
) -> set:
    """Nodes from which a cycle with max-priority parity `want` is
    reachable without leaving `nodes`."""
    anchors = parity_cycle_nodes(nodes, succ, priority, want)
    return backward_closure(anchors, nodes, succ)


def shortest_word_path(
    start: Node,
    goals: set,
    nodes: set,
    step: Callable[[Node, int], Node],
    alphabet: int,
    min_len: int = 0,
) -> tuple[tuple[int, ...], Node] | None:
    """BFS for the shortest (then lexicographically least) symbol word
    leading from start to a goal node inside `nodes`.

    With min_len=1 the empty word is not a solution even if start is a
    goal, which is how closed walks are found.
    """
    if min_len == 0 and start in goals:
        return (), start
    seen = {start}
    frontier: list[tuple[Node, tuple[int, ...]]] = [(start, ())]
    while frontier:
        next_frontier: list[tuple[Node, tuple[int, ...]]] = []
        for node, word in frontier:
            for a in range(alphabet):
                nxt = step(node, a)
                if nxt not in nodes:
                    continue
                w = word + (a,)
                if nxt in goals and len(w) >= min_len:
                    return w, nxt
                if nxt not in seen:
                    seen.add(nxt)
                    next_frontier.append((nxt, w))
        frontier = next_frontier
    return None

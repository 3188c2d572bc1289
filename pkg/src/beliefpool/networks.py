"""Bayesian and Markov network structures and the transforms between them.

Variables are integer indices 0..m-1. CPT row encoding: for a node with
parents (p_0, ..., p_{k-1}), row index bit i (least significant bit =
p_0) is 1 exactly when p_i is true, and each row stores the probability
that the owner is true.
"""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    CapacityExceeded,
    MismatchedVariables,
    NotChordal,
    UnknownVariable,
)
from .joint import MAX_DENSE_VARIABLES, Assignment, JointTable

EliminationOrder = tuple[int, ...]


@dataclass(frozen=True)
class Cpt:
    """Conditional probability table of one binary node.

    rows[r] is P(owner = true | parent instantiation r), with r encoded
    from the parent outcomes as described in the module docstring.
    """

    owner: int
    parents: tuple[int, ...]
    rows: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parents", tuple(self.parents))
        object.__setattr__(self, "rows", tuple(float(r) for r in self.rows))
        if self.owner < 0:
            raise ValueError(f"owner index must be nonnegative, got {self.owner}")
        if len(set(self.parents)) != len(self.parents):
            raise ValueError("duplicate parent indices")
        if self.owner in self.parents:
            raise ValueError("node cannot be its own parent")
        if len(self.rows) != 1 << len(self.parents):
            raise ValueError(
                f"expected {1 << len(self.parents)} rows for "
                f"{len(self.parents)} parents, got {len(self.rows)}"
            )
        for r in self.rows:
            if not 0.0 <= r <= 1.0:
                raise ValueError(f"row probability {r} outside [0, 1]")

    def row_index(self, assignment: Assignment) -> int:
        """Row picked out by an assignment covering every parent."""
        index = 0
        for i, parent in enumerate(self.parents):
            if parent not in assignment:
                raise UnknownVariable(f"assignment missing parent {parent}")
            if assignment[parent]:
                index |= 1 << i
        return index

    def prob_true(self, assignment: Assignment) -> float:
        """P(owner = true) under the given parent assignment."""
        return self.rows[self.row_index(assignment)]


@dataclass(frozen=True)
class Dag:
    """Directed acyclic structure: parents[j] lists the parents of node j."""

    m: int
    parents: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "parents", tuple(tuple(ps) for ps in self.parents)
        )
        if len(self.parents) != self.m:
            raise ValueError("parent lists must cover every node")
        for j, ps in enumerate(self.parents):
            if len(set(ps)) != len(ps):
                raise ValueError(f"duplicate parents for node {j}")
            for p in ps:
                if not 0 <= p < self.m:
                    raise UnknownVariable(f"parent {p} outside range(0, {self.m})")
                if p == j:
                    raise ValueError(f"node {j} cannot be its own parent")
        self.topological_order()  # raises on cycles

    def children(self) -> tuple[tuple[int, ...], ...]:
        """children()[j] lists the nodes that have j as a parent."""
        out: list[list[int]] = [[] for _ in range(self.m)]
        for j, ps in enumerate(self.parents):
            for p in ps:
                out[p].append(j)
        return tuple(tuple(ch) for ch in out)

    def edges(self) -> frozenset[tuple[int, int]]:
        """Directed (parent, child) pairs."""
        return frozenset(
            (p, j) for j, ps in enumerate(self.parents) for p in ps
        )

    def skeleton(self) -> frozenset[tuple[int, int]]:
        """Undirected edge set, each pair sorted ascending."""
        return frozenset(
            (min(p, j), max(p, j)) for j, ps in enumerate(self.parents) for p in ps
        )

    def topological_order(self) -> tuple[int, ...]:
        """Parents-before-children order, lowest index first among ties."""
        remaining = [len(ps) for ps in self.parents]
        children = self.children()
        ready = [j for j in range(self.m) if remaining[j] == 0]
        heapq.heapify(ready)
        order: list[int] = []
        while ready:
            j = heapq.heappop(ready)
            order.append(j)
            for c in children[j]:
                remaining[c] -= 1
                if remaining[c] == 0:
                    heapq.heappush(ready, c)
        if len(order) != self.m:
            raise ValueError("parent structure contains a directed cycle")
        return tuple(order)


def _check_labels(m: int, labels: tuple[str, ...] | None) -> None:
    if labels is None:
        return
    if len(labels) != m:
        raise ValueError(f"expected {m} labels, got {len(labels)}")
    if len(set(labels)) != len(labels):
        raise ValueError("variable labels must be distinct")


@dataclass(frozen=True)
class BayesNet:
    """Bayesian network over binary variables: one CPT per node."""

    cpts: tuple[Cpt, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        cpts = tuple(sorted(self.cpts, key=lambda c: c.owner))
        object.__setattr__(self, "cpts", cpts)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
        owners = [c.owner for c in cpts]
        if owners != list(range(len(cpts))):
            raise ValueError("need exactly one CPT per variable 0..m-1")
        _check_labels(self.m, self.labels)
        self.dag()  # validates parent ranges and acyclicity

    @property
    def m(self) -> int:
        return len(self.cpts)

    def dag(self) -> Dag:
        return Dag(self.m, tuple(c.parents for c in self.cpts))


@dataclass(frozen=True)
class MarkovNet:
    """Undirected structure over binary variables."""

    m: int
    edges: frozenset[tuple[int, int]]
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        canonical = set()
        for u, v in self.edges:
            if not (0 <= u < self.m and 0 <= v < self.m):
                raise UnknownVariable(f"edge ({u}, {v}) outside range(0, {self.m})")
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            canonical.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(canonical))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
        _check_labels(self.m, self.labels)

    def adjacency(self) -> dict[int, set[int]]:
        """Mutable adjacency map covering every node, isolated ones included."""
        adj: dict[int, set[int]] = {v: set() for v in range(self.m)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def neighbors(self, v: int) -> frozenset[int]:
        if not 0 <= v < self.m:
            raise UnknownVariable(f"variable {v} outside range(0, {self.m})")
        return frozenset(
            u if w == v else w for u, w in self.edges if v in (u, w)
        )


def _as_dag(structure: BayesNet | Dag) -> Dag:
    return structure.dag() if isinstance(structure, BayesNet) else structure


def bn_to_joint(bn: BayesNet) -> JointTable:
    """Dense joint table from the network's CPT factorization."""
    if bn.m > MAX_DENSE_VARIABLES:
        raise CapacityExceeded(
            f"cannot materialize a dense table over {bn.m} variables"
        )
    size = 1 << bn.m
    indices = np.arange(size)
    probs = np.ones(size, dtype=np.float64)
    for cpt in bn.cpts:
        row_idx = np.zeros(size, dtype=np.int64)
        for i, parent in enumerate(cpt.parents):
            row_idx |= ((indices >> parent) & 1) << i
        p_true = np.asarray(cpt.rows, dtype=np.float64)[row_idx]
        owner_true = ((indices >> cpt.owner) & 1) == 1
        probs *= np.where(owner_true, p_true, 1.0 - p_true)
    return JointTable(bn.m, probs)


def moralize(structure: BayesNet | Dag) -> MarkovNet:
    """Undirected structure: drop directions and marry co-parents."""
    dag = _as_dag(structure)
    edges = set(dag.skeleton())
    for ps in dag.parents:
        for u, v in itertools.combinations(sorted(ps), 2):
            edges.add((u, v))
    labels = structure.labels if isinstance(structure, BayesNet) else None
    return MarkovNet(dag.m, frozenset(edges), labels)


def mn_union(nets: Sequence[MarkovNet]) -> MarkovNet:
    """Edge union of structures over the same variable set."""
    if not nets:
        raise ValueError("need at least one structure")
    m = nets[0].m
    for net in nets:
        if net.m != m:
            raise MismatchedVariables(
                f"structures disagree on variable count: {net.m} != {m}"
            )
    edges: set[tuple[int, int]] = set()
    for net in nets:
        edges |= net.edges
    labels = nets[0].labels
    if any(net.labels != labels for net in nets):
        labels = None
    return MarkovNet(m, frozenset(edges), labels)


def _fill_count(adj: Mapping[int, set[int]], v: int) -> int:
    nbrs = sorted(adj[v])
    return sum(
        1 for u, w in itertools.combinations(nbrs, 2) if w not in adj[u]
    )


def min_fill_order(
    adjacency: Mapping[int, set[int]]
) -> tuple[EliminationOrder, frozenset[tuple[int, int]]]:
    """Greedy elimination order adding the fewest fill edges per step.

    Ties pick the lowest variable index. Returns the order and the set
    of fill edges added (each pair sorted ascending).
    """
    adj = {v: set(nbrs) for v, nbrs in adjacency.items()}
    order: list[int] = []
    fills: set[tuple[int, int]] = set()
    while adj:
        v = min(adj, key=lambda u: (_fill_count(adj, u), u))
        nbrs = sorted(adj[v])
        for u, w in itertools.combinations(nbrs, 2):
            if w not in adj[u]:
                adj[u].add(w)
                adj[w].add(u)
                fills.add((u, w))
        for u in nbrs:
            adj[u].discard(v)
        del adj[v]
        order.append(v)
    return tuple(order), frozenset(fills)


def triangulate(mn: MarkovNet) -> tuple[MarkovNet, EliminationOrder]:
    """Chordal supergraph of mn plus the elimination order that built it.

    The returned order is a perfect elimination order of the chordal
    graph; running it again adds no further fill.
    """
    order, fills = min_fill_order(mn.adjacency())
    chordal = MarkovNet(mn.m, mn.edges | fills, mn.labels)
    return chordal, order


def perfect_elimination_order(mn: MarkovNet) -> EliminationOrder | None:
    """A perfect elimination order of mn, or None when mn is not chordal.

    Maximum-cardinality search proposes the order; the simplicial check
    of each vertex against its later neighbors verifies it.
    """
    adj = mn.adjacency()
    weight = {v: 0 for v in range(mn.m)}
    unnumbered = set(range(mn.m))
    visit: list[int] = []
    while unnumbered:
        v = min(unnumbered, key=lambda u: (-weight[u], u))
        unnumbered.remove(v)
        visit.append(v)
        for u in adj[v]:
            if u in unnumbered:
                weight[u] += 1
    peo = tuple(reversed(visit))
    pos = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = [u for u in adj[v] if pos[u] > pos[v]]
        if later:
            first = min(later, key=pos.__getitem__)
            if any(u != first and u not in adj[first] for u in later):
                return None
    return peo


def is_chordal(mn: MarkovNet) -> bool:
    """Whether every cycle of length four or more has a chord."""
    return perfect_elimination_order(mn) is not None


def direct_by_order(mn: MarkovNet, order: Sequence[int]) -> Dag:
    """Orient a chordal graph along an elimination order.

    Each node's parents are its neighbors eliminated later, so the
    last-eliminated node becomes the first node in topological order.
    Raises NotChordal unless every parent set comes out complete, which
    holds exactly when order is a perfect elimination order of mn.
    """
    if sorted(order) != list(range(mn.m)):
        raise ValueError("order must be a permutation of all variables")
    adj = mn.adjacency()
    pos = {v: i for i, v in enumerate(order)}
    parents = tuple(
        tuple(sorted(u for u in adj[v] if pos[u] > pos[v])) for v in range(mn.m)
    )
    for v, ps in enumerate(parents):
        for u, w in itertools.combinations(ps, 2):
            if w not in adj[u]:
                raise NotChordal(
                    "order is not a perfect elimination order of the graph"
                )
    return Dag(mn.m, parents)


def is_decomposable(structure: BayesNet | Dag) -> bool:
    """Whether every node's parent set is already complete in the skeleton."""
    dag = _as_dag(structure)
    skeleton = dag.skeleton()
    for ps in dag.parents:
        for u, v in itertools.combinations(sorted(ps), 2):
            if (u, v) not in skeleton:
                return False
    return True


def markov_blanket(structure: BayesNet | Dag, a: int) -> frozenset[int]:
    """Parents, children, and children's other parents of node a."""
    dag = _as_dag(structure)
    if not 0 <= a < dag.m:
        raise UnknownVariable(f"variable {a} outside range(0, {dag.m})")
    blanket = set(dag.parents[a])
    for child, ps in enumerate(dag.parents):
        if a in ps:
            blanket.add(child)
            blanket.update(ps)
    blanket.discard(a)
    return frozenset(blanket)

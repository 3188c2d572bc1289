"""Exact inference on Bayesian networks by variable elimination.

Queries never materialize the full joint table, so they stay usable on
networks too large for dense enumeration as long as the induced factor
widths stay small.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import UnknownVariable, ZeroEvidence
from .joint import Assignment
from .networks import BayesNet, Cpt


@dataclass(eq=False)
class _Factor:
    """Table over a strictly increasing variable tuple; axis i = vars[i]."""

    vars: tuple[int, ...]
    table: np.ndarray


def _cpt_factor(cpt: Cpt) -> _Factor:
    variables = tuple(sorted((cpt.owner,) + cpt.parents))
    table = np.empty((2,) * len(variables), dtype=np.float64)
    for bits in itertools.product((0, 1), repeat=len(variables)):
        assignment = dict(zip(variables, bits))
        p_true = cpt.rows[cpt.row_index(assignment)]
        table[bits] = p_true if assignment[cpt.owner] else 1.0 - p_true
    table.flags.writeable = False
    return _Factor(variables, table)


@lru_cache(maxsize=128)
def _network_factors(bn: BayesNet) -> tuple[_Factor, ...]:
    return tuple(_cpt_factor(cpt) for cpt in bn.cpts)


def _restrict(factor: _Factor, var: int, value: bool) -> _Factor:
    axis = factor.vars.index(var)
    remaining = factor.vars[:axis] + factor.vars[axis + 1 :]
    return _Factor(remaining, np.take(factor.table, int(value), axis=axis))


def _expand(factor: _Factor, out_vars: tuple[int, ...]) -> np.ndarray:
    # Both variable tuples are sorted, so inserting singleton axes for
    # the missing variables aligns the tables for broadcasting.
    shape = tuple(2 if v in factor.vars else 1 for v in out_vars)
    return factor.table.reshape(shape)


def _multiply(a: _Factor, b: _Factor) -> _Factor:
    out_vars = tuple(sorted(set(a.vars) | set(b.vars)))
    return _Factor(out_vars, _expand(a, out_vars) * _expand(b, out_vars))


def _sum_out(factor: _Factor, var: int) -> _Factor:
    axis = factor.vars.index(var)
    remaining = factor.vars[:axis] + factor.vars[axis + 1 :]
    return _Factor(remaining, factor.table.sum(axis=axis))


def _elimination_order(
    scopes: Iterable[tuple[int, ...]], eliminate: set[int]
) -> list[int]:
    """Min-fill order restricted to the variables being eliminated."""
    adj: dict[int, set[int]] = {}
    for scope in scopes:
        for v in scope:
            adj.setdefault(v, set())
        for u, w in itertools.combinations(scope, 2):
            adj[u].add(w)
            adj[w].add(u)
    remaining = set(eliminate)
    order: list[int] = []

    def fill_count(v: int) -> int:
        nbrs = sorted(adj[v])
        return sum(
            1 for u, w in itertools.combinations(nbrs, 2) if w not in adj[u]
        )

    while remaining:
        v = min(remaining, key=lambda u: (fill_count(u), u))
        nbrs = adj[v]
        for u, w in itertools.combinations(sorted(nbrs), 2):
            adj[u].add(w)
            adj[w].add(u)
        for u in nbrs:
            adj[u].discard(v)
        del adj[v]
        remaining.discard(v)
        order.append(v)
    return order


def _run(bn: BayesNet, evidence: Assignment, keep: set[int]) -> _Factor:
    """Eliminate everything outside keep after restricting by evidence.

    The returned factor maps each keep-assignment to its probability
    jointly with the evidence.
    """
    factors = []
    for factor in _network_factors(bn):
        for var, value in evidence.items():
            if var in factor.vars:
                factor = _restrict(factor, var, bool(value))
        factors.append(factor)
    eliminate = {
        v for f in factors for v in f.vars if v not in keep
    }
    for v in _elimination_order((f.vars for f in factors), eliminate):
        bucket = [f for f in factors if v in f.vars]
        factors = [f for f in factors if v not in f.vars]
        factors.append(_sum_out(reduce(_multiply, bucket), v))
    return reduce(_multiply, factors, _Factor((), np.array(1.0)))


def _check_assignment(bn: BayesNet, assignment: Assignment) -> None:
    for v in assignment:
        if not 0 <= v < bn.m:
            raise UnknownVariable(f"variable {v} outside range(0, {bn.m})")


def query_event_marginal(bn: BayesNet, event: Assignment) -> float:
    """Probability that every variable in event takes its given value."""
    _check_assignment(bn, event)
    return float(_run(bn, event, set()).table)


def query_conditional(
    bn: BayesNet, target: Assignment, evidence: Assignment | None = None
) -> float:
    """P(target | evidence) by variable elimination.

    Target and evidence must assign disjoint variables. An empty target
    is the sure event. Raises ZeroEvidence when the evidence itself has
    probability zero.
    """
    evidence = dict(evidence or {})
    _check_assignment(bn, target)
    _check_assignment(bn, evidence)
    if set(target) & set(evidence):
        raise ValueError("target and evidence must assign disjoint variables")
    result = _run(bn, evidence, set(target))
    total = float(result.table.sum())
    if total <= 0.0:
        raise ZeroEvidence("conditioning event has probability zero")
    if not target:
        return 1.0
    picked = result.table[
        tuple(int(bool(target[v])) for v in result.vars)
    ]
    return float(picked) / total

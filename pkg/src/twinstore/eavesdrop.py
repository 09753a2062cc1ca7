"""Eavesdropper model and exact information-leakage oracles.

An eavesdropper reads the storage of some nodes (e1) and the repair
downloads of other nodes (e2).  Every observed symbol is a fixed linear
functional of the source vector f = (random symbols, payload), so the
whole observation is a matrix M with e = M @ f.  Leakage is then a rank
statement: with uniform independent randomness and payload,

    I(payload; e) = (rank(M) - rank(M restricted to random columns)) * log q.

This module measures that rank gap exactly (one Gaussian elimination,
counting pivots left of / right of the random block) and, for tiny
instances, cross-checks it against brute-force mutual information
computed by enumerating every source vector.

Observation rows are assembled symbolically from generator columns, so
the result is a property of the scheme rather than of one random draw.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    InstanceTooLarge,
    MissingRepairPlan,
)
from .field import FieldMatrix, _pivot_columns, in_row_space
from .framework import TwinSystem, opposite_type
from .secure import SecureLayout


@dataclass(frozen=True)
class EavesdropperSpec:
    """Nodes whose storage (e1) or repair downloads (e2) are observed."""

    e1: tuple
    e2: tuple

    @classmethod
    def of(cls, e1=(), e2=()) -> "EavesdropperSpec":
        e1 = tuple(sorted((int(t), int(j)) for t, j in e1))
        e2 = tuple(sorted((int(t), int(j)) for t, j in e2))
        for t, j in e1 + e2:
            if t not in (1, 2):
                raise ValueError(f"node type must be 1 or 2, got ({t}, {j})")
        if set(e1) & set(e2):
            raise ValueError(f"e1 and e2 must be disjoint: {set(e1) & set(e2)}")
        if len(set(e1)) != len(e1) or len(set(e2)) != len(e2):
            raise ValueError("duplicate node references in eavesdropper spec")
        return cls(e1=e1, e2=e2)

    @property
    def budget(self) -> int:
        return len(self.e1) + len(self.e2)

    def to_json_dict(self) -> dict:
        return {"e1": [list(x) for x in self.e1],
                "e2": [list(x) for x in self.e2]}


@dataclass(frozen=True)
class Observation:
    """Eavesdropper view: functionals over the source vector plus values."""

    matrix: FieldMatrix       # one row per observed symbol, k*k columns
    values: np.ndarray        # matrix @ source vector
    random_cols: tuple        # source coordinates holding random symbols
    payload_cols: tuple
    k: int

    def label(self, coord: int) -> str:
        return f"r{coord + 1}" if coord in set(self.random_cols) else f"a{coord + 1}"


def _storage_rows(k: int, node_type: int, g: np.ndarray, p: int) -> np.ndarray:
    """k functional rows for the stored symbols of one node.

    Source coordinate c*k + t holds message-matrix entry (t, c).  A Type 1
    node's symbol t combines row t (weight g[c] at c*k + t); a Type 2
    node's symbol t combines column t (weight g[c] at t*k + c).
    """
    rows = np.zeros((k, k * k), dtype=np.int64)
    t = np.arange(k)
    if node_type == 1:
        rows[t[:, None], t[None, :] * k + t[:, None]] = g[None, :] % p
    else:
        rows[t[:, None], t[:, None] * k + t[None, :]] = g[None, :] % p
    return rows


def _repair_rows(k: int, failed_type: int, g_failed: np.ndarray,
                 helper_vectors: np.ndarray, p: int) -> np.ndarray:
    """One functional row per helper for an observed repair.

    The helper serving a failed Type 1 node g ships sum_{t,c} g[t] A[c,t] h[c],
    i.e. weight g[t]*h[c] on coordinate t*k + c; for a failed Type 2 node the
    roles transpose to weight h[c]*g[t] on coordinate c*k + t.
    """
    if failed_type == 1:
        outer = g_failed[None, :, None] * helper_vectors[:, None, :]
    else:
        outer = helper_vectors[:, :, None] * g_failed[None, None, :]
    return outer.reshape(helper_vectors.shape[0], k * k) % p


def observe(system: TwinSystem, layout: SecureLayout, spec: EavesdropperSpec,
            repair_plans=None) -> Observation:
    """Assemble the eavesdropper's observation matrix and observed values.

    repair_plans maps each e2 node (type, index) to the k helper indices
    used for its observed repair; the functionals do not depend on when
    the repair happened, only on which helpers served it.
    """
    config = system.config
    k = config.k
    if layout.k != k or layout.field != config.field:
        raise DimensionMismatch("layout does not match the system configuration")
    if spec.budget >= k:
        raise BudgetExceeded(f"need |e1| + |e2| < k = {k}, got {spec.budget}")
    repair_plans = dict(repair_plans or {})

    blocks = []
    for node_type, j in spec.e1:
        g = config.encoding_vector(node_type, j).coefficients
        blocks.append(_storage_rows(k, node_type, g, config.field.p))
    for node_type, j in spec.e2:
        plan = repair_plans.get((node_type, j))
        if plan is None:
            raise MissingRepairPlan(
                f"no repair plan recorded for type {node_type} node {j}"
            )
        helpers = [int(h) for h in plan]
        helper_type = opposite_type(node_type)
        if len(helpers) != k or len(set(helpers)) != k or any(
                not 1 <= h <= config.node_count(helper_type) for h in helpers):
            raise DimensionMismatch(
                f"repair plan for type {node_type} node {j} must name k={k} "
                f"distinct type {helper_type} helpers, got {plan}"
            )
        g_failed = config.encoding_vector(node_type, j).coefficients
        helper_vectors = np.stack(
            [config.encoding_vector(helper_type, h).coefficients
             for h in helpers])
        blocks.append(_repair_rows(k, node_type, g_failed, helper_vectors,
                                   config.field.p))

    if blocks:
        m = np.vstack(blocks)
    else:
        m = np.zeros((0, k * k), dtype=np.int64)
    matrix = FieldMatrix(m, config.field)
    values = matrix @ layout.source_vector() if m.shape[0] else np.zeros(0, np.int64)
    return Observation(matrix=matrix, values=values,
                       random_cols=layout.random_cols,
                       payload_cols=layout.payload_cols, k=k)


def default_repair_plans(system: TwinSystem, spec: EavesdropperSpec) -> dict:
    """Lowest-index live opposite-type helpers for every e2 node."""
    plans = {}
    for node_type, j in spec.e2:
        helper_type = opposite_type(node_type)
        usable = [h for h in system.live_indices(helper_type)
                  if not system.node(helper_type, h).is_empty]
        plans[(node_type, j)] = tuple(usable[: system.config.k])
    return plans


def independent_symbol_count(obs: Observation) -> int:
    """Number of linearly independent observed symbols: rank(M)."""
    return obs.matrix.rank()


def leakage(obs: Observation) -> int:
    """Exact q-ary leakage: rank(M) minus rank of M's random-column block.

    One elimination suffices: with columns ordered random-first, pivots
    falling in the payload region are exactly the rank gap.
    """
    if obs.matrix.rows == 0:
        return 0
    n_random = len(obs.random_cols)
    perm = list(obs.random_cols) + list(obs.payload_cols)
    arr = obs.matrix.array[:, perm]
    pivots = _pivot_columns(arr, obs.matrix.field.p)
    return sum(1 for c in pivots if c >= n_random)


def revealed_symbols(obs: Observation) -> set:
    """Labels of source coordinates fully determined by the observation.

    Coordinate i is revealed iff the unit functional e_i lies in the row
    space of M.
    """
    n = obs.k * obs.k
    out = set()
    for coord in range(n):
        unit = np.zeros(n, dtype=np.int64)
        unit[coord] = 1
        if in_row_space(obs.matrix, unit):
            out.add(obs.label(coord))
    return out


def brute_force_mi(obs: Observation, max_states: int = 10**6) -> float:
    """Exact mutual information I(payload; observation) in bits, by enumeration.

    Enumerates every source vector (q^(k*k) of them), so it is only
    feasible for tiny fields and k; the rank oracle `leakage` must agree
    with this on every enumerable instance.
    """
    q = obs.matrix.field.p
    ncols = obs.matrix.cols
    n_states = q**ncols
    if n_states > max_states:
        raise InstanceTooLarge(
            f"{q}^{ncols} = {n_states} source vectors exceed the "
            f"limit of {max_states}"
        )
    payload_cols = np.asarray(obs.payload_cols, dtype=np.intp)
    n_pay = payload_cols.size
    rows = obs.matrix.rows

    joint_keys = np.empty(n_states, dtype=np.int64)
    y_keys = np.empty(n_states, dtype=np.int64)
    x_radix = q ** np.arange(n_pay, dtype=np.int64)
    y_radix = q ** np.arange(rows, dtype=np.int64)
    mt = obs.matrix.array.T
    chunk = 1 << 16
    for start in range(0, n_states, chunk):
        stop = min(start + chunk, n_states)
        f = np.array(np.unravel_index(np.arange(start, stop), (q,) * ncols),
                     dtype=np.int64).T
        e = (f @ mt) % q if rows else np.zeros((stop - start, 0), dtype=np.int64)
        yk = e @ y_radix if rows else np.zeros(stop - start, dtype=np.int64)
        xk = f[:, payload_cols] @ x_radix if n_pay else np.zeros(stop - start,
                                                                 dtype=np.int64)
        y_keys[start:stop] = yk
        joint_keys[start:stop] = xk * (q**rows if rows else 1) + yk

    _, jinv, jcounts = np.unique(joint_keys, return_inverse=True,
                                 return_counts=True)
    _, yinv, ycounts = np.unique(y_keys, return_inverse=True, return_counts=True)
    # uniform sources: p(x) = q^-n_pay exactly, so
    # log2(p(xy)/(p(x)p(y))) = log2 c_xy - log2 c_y + n_pay*log2 q
    per_sample = np.log2(jcounts[jinv]) - np.log2(ycounts[yinv])
    mi = float(per_sample.mean()) + n_pay * math.log2(q)
    return max(mi, 0.0)


def eavesdrop_report(obs: Observation, spec: EavesdropperSpec) -> dict:
    """JSON-ready leakage report for one eavesdropper spec."""
    revealed = revealed_symbols(obs)
    return {
        "spec": spec.to_json_dict(),
        "rank": independent_symbol_count(obs),
        "leakage": leakage(obs),
        "revealed": sorted(revealed, key=lambda s: (s[0], int(s[1:]))),
    }

"""Uniform parameter grids on [0,1]^m with hat-function partitions of unity.

Grids carry a boolean mask marking the relative subset Q (a union of grid
faces).  Node weights are the usual piecewise-linear hats (products of 1-d
hats in two dimensions): nonnegative, summing to one everywhere, each
supported on the cells touching its node.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError


def _hat_1d(x: float, node: int, n: int) -> float:
    """Linear hat at node k of an n-point uniform grid on [0,1].

    Values within rounding distance of 0 or 1 snap exactly, so the hats are
    a true Kronecker basis at the nodes despite binary-fraction dust.
    """
    if n == 1:
        return 1.0
    h = 1.0 / (n - 1)
    t = 1.0 - abs(x - node * h) / h
    if t < 1e-12:
        return 0.0
    if t > 1.0 - 1e-12:
        return 1.0
    return t


@dataclass(frozen=True)
class ParamGrid:
    """Uniform grid on [0,1]^m (m = 1 or 2), with a Q-mask per node."""

    shape: tuple[int, ...]
    q_mask: tuple[bool, ...]

    def __post_init__(self):
        shape = tuple(int(s) for s in self.shape)
        object.__setattr__(self, "shape", shape)
        if len(shape) not in (1, 2):
            raise InputError("parameter grids must be 1- or 2-dimensional")
        if any(s < 2 for s in shape):
            raise InputError("each grid axis needs at least 2 points")
        mask = tuple(bool(b) for b in self.q_mask)
        object.__setattr__(self, "q_mask", mask)
        if len(mask) != self.npoints:
            raise InputError("q_mask length must match the number of grid points")

    # -- constructors -------------------------------------------------------

    @classmethod
    def line(cls, n: int, q_nodes: Iterable[int] = ()) -> "ParamGrid":
        """1-d grid of n points; q_nodes lists the node indices in Q."""
        qs = set(int(i) for i in q_nodes)
        if any(i < 0 or i >= n for i in qs):
            raise InputError("q node index out of range")
        return cls((n,), tuple(i in qs for i in range(n)))

    @classmethod
    def box(cls, n1: int, n2: int, q_nodes: Iterable[int] = ()) -> "ParamGrid":
        """2-d grid of n1 x n2 points (flat indexing, axis 0 major)."""
        qs = set(int(i) for i in q_nodes)
        total = n1 * n2
        if any(i < 0 or i >= total for i in qs):
            raise InputError("q node index out of range")
        return cls((n1, n2), tuple(i in qs for i in range(total)))

    # -- geometry ------------------------------------------------------------

    @property
    def ndim(self) -> int:
        return len(self.shape)

    @property
    def npoints(self) -> int:
        return math.prod(self.shape)

    def node_index(self, multi: tuple[int, ...]) -> int:
        if self.ndim == 1:
            return multi[0]
        return multi[0] * self.shape[1] + multi[1]

    def node_multi(self, i: int) -> tuple[int, ...]:
        if self.ndim == 1:
            return (i,)
        return divmod(i, self.shape[1])

    def point(self, i: int) -> tuple[float, ...]:
        multi = self.node_multi(i)
        return tuple(
            k / (s - 1) for k, s in zip(multi, self.shape)
        )

    @property
    def points(self) -> list[tuple[float, ...]]:
        return [self.point(i) for i in range(self.npoints)]

    @property
    def q_indices(self) -> list[int]:
        return [i for i, b in enumerate(self.q_mask) if b]

    def adjacent_pairs(self) -> list[tuple[int, int]]:
        """Pairs of node indices one grid step apart."""
        out = []
        if self.ndim == 1:
            out = [(i, i + 1) for i in range(self.shape[0] - 1)]
        else:
            n1, n2 = self.shape
            for i, j in product(range(n1), range(n2)):
                if i + 1 < n1:
                    out.append((self.node_index((i, j)), self.node_index((i + 1, j))))
                if j + 1 < n2:
                    out.append((self.node_index((i, j)), self.node_index((i, j + 1))))
        return out

    def neighbors(self, i: int) -> list[int]:
        """Nodes within one grid step (the cell neighborhood), excluding i."""
        multi = self.node_multi(i)
        out = []
        for delta in product((-1, 0, 1), repeat=self.ndim):
            if all(d == 0 for d in delta):
                continue
            cand = tuple(m + d for m, d in zip(multi, delta))
            if all(0 <= c < s for c, s in zip(cand, self.shape)):
                out.append(self.node_index(cand))
        return out

    # -- partition of unity ---------------------------------------------------

    def hat_weights(self, p: Sequence[float] | float) -> np.ndarray:
        """Node hat weights at parameter p; nonnegative and summing to 1."""
        p = (float(p),) if isinstance(p, (int, float)) else tuple(float(x) for x in p)
        if len(p) != self.ndim:
            raise InputError(f"parameter must have {self.ndim} coordinates")
        if any(x < -1e-12 or x > 1.0 + 1e-12 for x in p):
            raise InputError("parameters live in [0,1]^m")
        axes = [
            np.array([_hat_1d(x, k, s) for k in range(s)])
            for x, s in zip(p, self.shape)
        ]
        if self.ndim == 1:
            w = axes[0]
        else:
            w = np.outer(axes[0], axes[1]).ravel()
        return w

    def q_cutoff(self, p: Sequence[float] | float) -> float:
        """Cutoff that is 1 on Q and decays to 0 across one cell layer."""
        w = self.hat_weights(p)
        return float(sum(w[i] for i in self.q_indices))

    def q_neighborhood(self) -> list[int]:
        """Node indices within one cell of Q (including Q itself)."""
        out = set(self.q_indices)
        for i in self.q_indices:
            out.update(self.neighbors(i))
        return sorted(out)

    def nearest_q_node(self, i: int) -> int:
        """Index of the Q node closest to node i (ties to the lower index)."""
        qs = self.q_indices
        if not qs:
            raise InputError("grid has no Q nodes")
        pi = np.array(self.point(i))
        dists = [float(np.linalg.norm(pi - np.array(self.point(q)))) for q in qs]
        best = min(range(len(qs)), key=lambda k: (dists[k], qs[k]))
        return qs[best]

    # -- coarse nets over the grid ---------------------------------------------

    def net_indices(self, stride: int) -> list[int]:
        """A subsample including the axis endpoints, every ``stride`` nodes."""
        if stride < 1:
            raise InputError("stride must be >= 1")
        axes = []
        for s in self.shape:
            idx = sorted(set(list(range(0, s, stride)) + [s - 1]))
            axes.append(idx)
        if self.ndim == 1:
            return axes[0]
        return [self.node_index((i, j)) for i in axes[0] for j in axes[1]]

    def net_weights(self, net: Sequence[int], p: Sequence[float] | float) -> np.ndarray:
        """Piecewise-linear partition of unity over the net nodes, at p.

        The net nodes must form a tensor grid (as produced by net_indices).
        """
        p = (float(p),) if isinstance(p, (int, float)) else tuple(float(x) for x in p)
        coords = [self.point(i) for i in net]
        axes_vals: list[list[float]] = []
        for d in range(self.ndim):
            axes_vals.append(sorted(set(c[d] for c in coords)))

        def axis_w(vals: list[float], x: float) -> dict[float, float]:
            if len(vals) == 1:
                return {vals[0]: 1.0}
            if x <= vals[0]:
                return {vals[0]: 1.0}
            if x >= vals[-1]:
                return {vals[-1]: 1.0}
            for a, b in zip(vals, vals[1:]):
                if a <= x <= b:
                    t = (x - a) / (b - a)
                    return {a: 1.0 - t, b: t}
            return {vals[-1]: 1.0}

        per_axis = [axis_w(axes_vals[d], p[d]) for d in range(self.ndim)]
        out = np.zeros(len(net))
        for k, c in enumerate(coords):
            w = 1.0
            for d in range(self.ndim):
                w *= per_axis[d].get(c[d], 0.0)
            out[k] = w
        return out

"""Minimum-cardinality acceptance intervals, built greedily from the mode.

For each M the interval starts at the pmf maximizer and repeatedly absorbs
the more probable neighbor (the left one on ties) until its mass reaches
1 - alpha. Among intervals of its cardinality the result has maximal
probability, and no smaller level-alpha set exists.

Greedy direction choices and the stopping rule are exact integer
comparisons, so the output is a deterministic function of (N, n, alpha).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import (
    Params,
    attains_level,
    mode,
    step_down,
    step_up,
    support,
    weight,
)
from .parallel import pmap


class Stage(enum.Enum):
    RAW = "raw"
    ADJUSTED = "adjusted"
    SYMMETRIZED = "symmetrized"


@dataclass(frozen=True)
class AcceptanceFamily:
    """Per-M acceptance intervals [lower[M], upper[M]] for M = 0..len-1."""

    params: Params
    stage: Stage
    lower: tuple
    upper: tuple

    def __post_init__(self):
        if len(self.lower) != len(self.upper) or not self.lower:
            raise ValueError("lower/upper must be nonempty and equally long")
        for M, (a, b) in enumerate(zip(self.lower, self.upper)):
            lo, hi = support(M, self.params)
            if not lo <= a <= b <= hi:
                raise ValueError(
                    f"interval [{a}, {b}] at M={M} leaves the support [{lo}, {hi}]"
                )
        if self.stage is Stage.SYMMETRIZED:
            self._check_symmetrized()

    def _check_symmetrized(self):
        N, n = self.params.N, self.params.n
        if len(self.lower) != N + 1:
            raise ValueError("symmetrized family must cover M = 0..N")
        for M in range(N + 1):
            if self.lower[M] + self.upper[N - M] != n:
                raise ValueError(f"reflection symmetry broken at M={M}")
        for M in range(N):
            if self.lower[M] > self.lower[M + 1] or self.upper[M] > self.upper[M + 1]:
                raise ValueError(f"endpoints not nondecreasing at M={M}")

    def __len__(self) -> int:
        return len(self.lower)

    def interval(self, M: int) -> tuple:
        return (self.lower[M], self.upper[M])

    def length(self, M: int) -> int:
        return self.upper[M] - self.lower[M] + 1

    def total_size(self) -> int:
        return sum(b - a + 1 for a, b in zip(self.lower, self.upper))


def _greedy_interval(p: Params, M: int) -> tuple:
    """Smallest level-alpha interval of maximal mass for one M."""
    lo, hi = support(M, p)
    c = d = mode(M, p)
    w_mid = weight(M, c, p)
    w_left = step_down(w_mid, M, c, p) if c > lo else 0
    w_right = step_up(w_mid, M, d, p) if d < hi else 0
    mass = w_mid
    while not attains_level(mass, p):
        if w_right > w_left:
            d += 1
            mass += w_right
            w_right = step_up(w_right, M, d, p) if d < hi else 0
        else:
            c -= 1
            mass += w_left
            w_left = step_down(w_left, M, c, p) if c > lo else 0
    return (c, d)


def amo_half(p: Params, workers: int = 0) -> AcceptanceFamily:
    """Acceptance intervals for M = 0..floor(N/2), stage RAW.

    Per-M computations are independent; with workers > 1 they are mapped
    over a process pool, with output identical to the sequential order.
    """
    ms = range(p.N // 2 + 1)
    intervals = pmap(_greedy_interval, p, ms, workers)
    lower, upper = zip(*intervals)
    return AcceptanceFamily(p, Stage.RAW, lower, upper)


def reflect_full(half: AcceptanceFamily) -> AcceptanceFamily:
    """Extend a half-family to M = 0..N via a_{N-M} = n - b_M, b_{N-M} = n - a_M.

    For even N the index N/2 reflects onto itself; the half-family's own
    entry is kept (the symmetrizing step replaces it anyway).
    """
    p = half.params
    N, n = p.N, p.n
    k = N // 2
    if len(half) != k + 1:
        raise ValueError(f"expected a half-family over 0..{k}, got length {len(half)}")
    lower = list(half.lower) + [0] * (N - k)
    upper = list(half.upper) + [0] * (N - k)
    for M in range(k + 1):
        if N - M == M:
            continue
        lower[N - M] = n - half.upper[M]
        upper[N - M] = n - half.lower[M]
    return AcceptanceFamily(p, half.stage, tuple(lower), tuple(upper))

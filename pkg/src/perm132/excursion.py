"""Discrete Brownian excursions and the limit functionals Psi_sigma.

An excursion with parameter m lives on the grid x_i = i/(2m), i = 0..2m, and
comes from a uniformly random Dyck path of length 2m scaled by 1/sqrt(2m).
The supported functionals are Riemann sums of

    12, 1...k : 2^((k-1)/2)/(k-1)! * int e^(k-1)
    213       : sqrt(2) * iint_{x<y} e([x,y])
    231       : sqrt(2) * iint_{x<y} (e(x) - e([x,y]))
    312       : sqrt(2) * iint_{x<y} (e(y) - e([x,y]))
    k...1     : 1/k!

where e([x,y]) is the minimum of e over [x,y].
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .perms import PatternError, Permutation, parse_pattern
from .sampler import SampleStats, _moments, left_height_sums, replicate_rng, summarize
from .trees import SparseTableMin


@dataclass(frozen=True, eq=False)
class DiscreteExcursion:
    """Values e(i/(2m)), i = 0..2m; nonnegative with zero endpoints."""

    m: int
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 1 or v.shape[0] != 2 * self.m + 1:
            raise ValueError(f"expected {2 * self.m + 1} grid values, got shape {v.shape}")
        if v[0] != 0 or v[-1] != 0 or (v < 0).any():
            raise ValueError("an excursion is nonnegative with zero endpoints")
        object.__setattr__(self, "values", v)

    @property
    def step(self) -> float:
        return 1.0 / (2 * self.m)

    def reversed(self) -> "DiscreteExcursion":
        return DiscreteExcursion(self.m, self.values[::-1].copy())

    @classmethod
    def zero(cls, m: int) -> "DiscreteExcursion":
        return cls(m, np.zeros(2 * m + 1))


def _excursion_from_rng(rng: np.random.Generator, m: int) -> DiscreteExcursion:
    steps = np.ones(2 * m + 1, dtype=np.int64)
    steps[m:] = -1
    heights = _kernels.dyck_from_cycle(rng.permutation(steps))
    return DiscreteExcursion(m, heights / math.sqrt(2 * m))


def sample_excursion(m: int, seed: int, replicate: int = 0) -> DiscreteExcursion:
    """Uniform Dyck path of 2m steps, scaled to approximate the normalized excursion.

    The path is the cyclic rotation of a shuffled walk with m up and m+1 down
    steps that starts after its first minimum (every such walk has exactly one
    rotation that stays nonnegative, so the result is exactly uniform).
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    return _excursion_from_rng(replicate_rng(seed, replicate), m)


def _kind(sigma) -> tuple[str, int]:
    p = parse_pattern(sigma)
    k = len(p)
    if k == 0:
        raise PatternError("empty pattern")
    if p.word == tuple(range(k, 0, -1)):
        return "dec", k
    if p.word == tuple(range(1, k + 1)):
        return "inc", k
    if p.word in ((2, 1, 3), (2, 3, 1), (3, 1, 2)):
        return "".join(map(str, p.word)), 3
    raise PatternError(f"no excursion functional implemented for {p}")


def supported(sigma) -> bool:
    try:
        _kind(sigma)
    except PatternError:
        return False
    return True


def _double_parts(e: DiscreteExcursion) -> tuple[float, float, float]:
    """(sum_{i<j} e_i, sum_{i<j} e_j, sum_{i<j} min e[i..j])."""
    v = e.values
    last = v.shape[0] - 1
    idx = np.arange(v.shape[0])
    return (
        math.fsum(((last - idx) * v).tolist()),
        math.fsum((idx * v).tolist()),
        _kernels.sum_pair_minima(v),
    )


def psi(sigma, e: DiscreteExcursion) -> float:
    kind, k = _kind(sigma)
    h = e.step
    if kind == "dec":
        return 1.0 / math.factorial(k)
    if kind == "inc":
        if k == 1:
            return 1.0
        integral = h * math.fsum((e.values ** (k - 1)).tolist())
        return 2 ** ((k - 1) / 2) / math.factorial(k - 1) * integral
    left, right, smin = _double_parts(e)
    c = math.sqrt(2) * h * h
    if kind == "213":
        return c * smin
    if kind == "231":
        return c * (left - smin)
    return c * (right - smin)


def psi_bruteforce(sigma, e: DiscreteExcursion) -> float:
    """Direct O(m^2) evaluation with range-minimum queries, for testing."""
    kind, k = _kind(sigma)
    if kind in ("dec", "inc"):
        return psi(sigma, e)
    v = e.values
    table = SparseTableMin(v)
    n = v.shape[0]
    total = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            mn = table.query(i, j)
            if kind == "213":
                total += mn
            elif kind == "231":
                total += v[i] - mn
            else:
                total += v[j] - mn
    return math.sqrt(2) * e.step**2 * total


def _psi_chunk(m, perms, seed, start, stop):
    out = np.empty((stop - start, len(perms)))
    for r in range(start, stop):
        e = _excursion_from_rng(replicate_rng(seed, r), m)
        out[r - start] = [psi(p, e) for p in perms]
    return out


def sample_psi(m: int, patterns, reps: int, seed: int, threads: int | None = None) -> tuple[list[Permutation], np.ndarray]:
    """Psi values for ``reps`` excursions; array of shape (reps, len(patterns))."""
    perms = [parse_pattern(s) for s in patterns]
    if not perms:
        raise PatternError("no patterns given")
    for p in perms:
        _kind(p)
    if m < 2 or reps < 1:
        raise ValueError("need m >= 2 and reps >= 1")
    threads = threads or os.cpu_count() or 1
    chunk = max(1, math.ceil(reps / threads))
    bounds = [(s, min(s + chunk, reps)) for s in range(0, reps, chunk)]
    if len(bounds) == 1:
        parts = [_psi_chunk(m, perms, seed, 0, reps)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = [f.result() for f in [pool.submit(_psi_chunk, m, perms, seed, a, b) for a, b in bounds]]
    return perms, np.concatenate(parts)


def sample_psi_stats(m: int, patterns, reps: int, seed: int, threads: int | None = None) -> SampleStats:
    """Moments of Psi_sigma over random excursions (the ``n`` field holds m)."""
    perms, vals = sample_psi(m, patterns, reps, seed, threads)
    return summarize(m, seed, [str(p) for p in perms], vals)


def profile_convergence_check(n: int, reps: int, seed: int, excursion_m: int | None = None) -> dict:
    """Compare n^(-3/2) * sum of left heights with the limit of X_12.

    Reports mean and variance against sqrt(pi)/2 and (10 - 3 pi)/12, against
    the exact finite-n values, and optionally against sqrt(2) int e from
    ``reps`` excursions with parameter ``excursion_m``.
    """
    from .moments import exact_moment

    scaled = left_height_sums(n, reps, seed) / n**1.5
    st = _moments(scaled)
    limit_mean = math.sqrt(math.pi) / 2
    limit_var = (10 - 3 * math.pi) / 12
    m1 = float(exact_moment({"12": 1}, n)) / n**1.5
    m2 = float(exact_moment({"12": 2}, n)) / n**3
    # standard error of the sample variance, from the fourth central moment
    dev = scaled - st["mean"]
    var_se = math.sqrt(max(float(np.mean(dev**4)) - st["var"] ** 2, 0.0) / reps)
    report = {
        "n": n,
        "reps": reps,
        "seed": seed,
        "mean": st["mean"],
        "mean_se": st["se"],
        "var": st["var"],
        "var_se": var_se,
        "limit_mean": limit_mean,
        "limit_var": limit_var,
        "exact_mean": m1,
        "exact_var": m2 - m1 * m1,
        "mean_z": (st["mean"] - limit_mean) / st["se"],
        "var_z": (st["var"] - limit_var) / var_se if var_se else math.nan,
        "exact_mean_z": (st["mean"] - m1) / st["se"],
    }
    if excursion_m is not None:
        _, vals = sample_psi(excursion_m, ["12"], reps, seed + 1)
        ex = _moments(vals[:, 0])
        report.update(
            excursion_mean=ex["mean"],
            excursion_var=ex["var"],
            two_sample_z=(st["mean"] - ex["mean"]) / math.hypot(st["se"], ex["se"]),
        )
    return report

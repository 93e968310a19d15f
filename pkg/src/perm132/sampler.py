"""Monte Carlo over uniform binary trees (equivalently uniform 132-avoiders).

Replicate r always draws from ``SeedSequence(seed, spawn_key=(r,))``, so a
run is reproducible regardless of how replicates are split across threads.
"""
from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels
from .perms import Permutation, PatternError, parse_pattern, pattern_stats
from .trees import BinaryTree, CountProgram, count_occurrences_tree, count_program

INT64_MAX = 2**63 - 1


def replicate_rng(seed: int, r: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(r,)))


def _remy_draws(rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
    picks = rng.integers(0, np.arange(1, 2 * n, 2, dtype=np.int64))
    flips = rng.integers(0, 2, size=n)
    return picks, flips


def _full_tree(rng: np.random.Generator, n: int):
    picks, flips = _remy_draws(rng, n)
    return _kernels.remy_grow(n, picks, flips)


def full_to_binary(left: np.ndarray, right: np.ndarray, root: int, n: int) -> BinaryTree:
    """Drop the leaves of a full binary tree; nodes renumbered in inorder."""
    _, _, _, lch, rch, rpos = _kernels.inorder_internal(left, right, root, n)
    return BinaryTree(tuple(int(c) for c in lch), tuple(int(c) for c in rch), int(rpos))


def sample_tree(n: int, seed: int, replicate: int = 0) -> BinaryTree:
    """A uniformly random binary tree with n nodes."""
    if n < 1:
        raise ValueError("n must be at least 1")
    left, right, root = _full_tree(replicate_rng(seed, replicate), n)
    return full_to_binary(left, right, root, n)


def _fits_int64(n: int, program: CountProgram) -> bool:
    kmax = max(len(p) for p in program.patterns)
    return math.comb(n, kmax) <= INT64_MAX


def _count_replicates(n, program, offsets, pairs, seed, start, stop, fast):
    width = len(program.patterns)
    out = np.empty((stop - start, width), dtype=np.float64 if fast else object)
    for r in range(start, stop):
        left, right, root = _full_tree(replicate_rng(seed, r), n)
        if fast:
            out[r - start] = _kernels.count_full(left, right, root, offsets, pairs, width)
        else:
            t = full_to_binary(left, right, root, n)
            counts = count_occurrences_tree(t, (), program)
            out[r - start] = [counts[p] for p in program.patterns]
    return out


def sample_counts(n: int, patterns, reps: int, seed: int, threads: int | None = None) -> tuple[list[Permutation], np.ndarray]:
    """Raw counts X_sigma(T) for ``reps`` independent uniform trees.

    Returns the pattern list and an array of shape (reps, len(patterns)).
    Counts are exact int64 when C(n, k) fits, otherwise Python integers.
    """
    perms = [parse_pattern(s) for s in patterns]
    if not perms:
        raise PatternError("no patterns given")
    if n < 1 or reps < 1:
        raise ValueError("need n >= 1 and reps >= 1")
    program = count_program(perms)
    offsets, pairs = program.as_arrays()
    fast = _fits_int64(n, program)
    threads = threads or os.cpu_count() or 1
    chunk = max(1, math.ceil(reps / threads))
    bounds = [(s, min(s + chunk, reps)) for s in range(0, reps, chunk)]
    if len(bounds) == 1:
        parts = [_count_replicates(n, program, offsets, pairs, seed, 0, reps, fast)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(_count_replicates, n, program, offsets, pairs, seed, a, b, fast)
                for a, b in bounds
            ]
            parts = [f.result() for f in futures]
    allv = np.concatenate(parts)
    cols = [program.index[p] for p in perms]
    return perms, allv[:, cols]


def _moments(values: np.ndarray) -> dict:
    """Mean, variance and standard errors with correctly rounded sums."""
    x = [float(v) for v in values]
    r = len(x)
    mean = math.fsum(x) / r
    dev = [v - mean for v in x]
    var = math.fsum(d * d for d in dev) / (r - 1) if r > 1 else 0.0
    sq = [v * v for v in x]
    m2 = math.fsum(sq) / r
    m2_var = math.fsum((s - m2) ** 2 for s in sq) / (r - 1) if r > 1 else 0.0
    return {
        "mean": mean,
        "var": var,
        "se": math.sqrt(var / r),
        "m2": m2,
        "m2_se": math.sqrt(m2_var / r),
    }


@dataclass
class SampleStats:
    """Empirical statistics of X_sigma / n^(lambda/2) over independent trees."""

    n: int
    reps: int
    seed: int
    patterns: list[str]
    per_pattern: dict[str, dict] = field(default_factory=dict)
    covariances: dict[str, float] = field(default_factory=dict)
    scaled: np.ndarray | None = field(default=None, repr=False)

    def mean(self, sigma) -> float:
        return self.per_pattern[str(parse_pattern(sigma))]["mean"]

    def se(self, sigma) -> float:
        return self.per_pattern[str(parse_pattern(sigma))]["se"]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "reps": self.reps,
            "seed": self.seed,
            "per_pattern": self.per_pattern,
            "covariances": self.covariances,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_json(cls, text: str) -> "SampleStats":
        d = json.loads(text)
        return cls(d["n"], d["reps"], d["seed"], list(d["per_pattern"]), d["per_pattern"], d["covariances"])


def summarize(n: int, seed: int, names: Sequence[str], scaled: np.ndarray) -> SampleStats:
    reps = scaled.shape[0]
    per = {name: _moments(scaled[:, i]) for i, name in enumerate(names)}
    cov = {}
    for i, a in enumerate(names):
        for j in range(i, len(names)):
            b = names[j]
            x = scaled[:, i] - per[a]["mean"]
            y = scaled[:, j] - per[b]["mean"]
            cov[f"{a},{b}"] = math.fsum((x * y).tolist()) / max(reps - 1, 1)
            # raw mixed second moment, for comparison with limit constants
            cov[f"E[{a}*{b}]"] = math.fsum((scaled[:, i] * scaled[:, j]).tolist()) / reps
    return SampleStats(n, reps, seed, list(names), per, cov, scaled)


def sample_scaled_stats(n: int, patterns, reps: int, seed: int, threads: int | None = None) -> SampleStats:
    perms, counts = sample_counts(n, patterns, reps, seed, threads)
    scale = np.array([float(n) ** (pattern_stats(p).lam / 2) for p in perms])
    scaled = np.asarray(counts, dtype=np.float64) / scale
    return summarize(n, seed, [str(p) for p in perms], scaled)


def residual_patterns(k: int) -> list[Permutation]:
    """132-avoiding patterns of length k with k-1 descents (lambda = 2k-1)."""
    from .perms import avoiders

    return [p for p in avoiders(k) if pattern_stats(p).descents == k - 1]


def residual_stat(n: int, k: int, reps: int, seed: int, threads: int | None = None) -> dict:
    """n^-(k-1/2) (C(n,k) - n_{k...1}) over uniform trees, with its exact limit mean.

    The limit mean is the sum of A_sigma over sigma with k-1 descents.
    """
    from .expectation import asymptotic_constant

    if k < 2:
        raise ValueError("the residual needs k >= 2")
    dec = Permutation(tuple(range(k, 0, -1)))
    perms, counts = sample_counts(n, [dec], reps, seed, threads)
    total = math.comb(n, k)
    resid = np.array([(total - int(c)) / n ** (k - 0.5) for c in counts[:, 0]])
    stats = _moments(resid)
    targets = residual_patterns(k)
    stats.update(
        n=n,
        k=k,
        reps=reps,
        seed=seed,
        target=sum(asymptotic_constant(p).value for p in targets),
        target_patterns=[str(p) for p in targets],
    )
    return stats


def left_height_sums(n: int, reps: int, seed: int) -> np.ndarray:
    """Sum of left heights for ``reps`` uniform trees (equals X_12 per tree)."""
    out = np.empty(reps, dtype=np.int64)
    for r in range(reps):
        left, right, root = _full_tree(replicate_rng(seed, r), n)
        out[r] = _kernels.left_height_sum(left, right, root)
    return out

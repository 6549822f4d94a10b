"""Monte Carlo reliability harness for erasure decoding strategies.

Erasure recovery for a linear code depends only on which cells are
erased, never on the symbol values, so everything here works on
coordinate patterns alone.  That keeps hundred-thousand-trial runs
cheap: a trial is a random permutation of the grid cells plus a few
evaluations of a pure correctability predicate.

Four decoder models are supported: row decoding alone, column decoding
alone (the transposed budgets), iterative row-column decoding, and an
idealized locally-recoverable layout that fixes lightly erased groups
locally and everything else against a single global distance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from math import fsum, sqrt

from .eii import EiiCode, row_correctable
from .layout import transpose_profile

ROWS_ONLY = "RowsOnly"
COLS_ONLY = "ColsOnly"
ITERATIVE = "Iterative"
IDEAL_LRC = "IdealLrc"

_tprofile = lru_cache(maxsize=None)(transpose_profile)


@dataclass(frozen=True)
class DecoderModel:
    """A named correctability predicate over erasure patterns.

    Code-backed kinds carry the array code; the idealized-LRC kind
    carries (n_group, h_local, d_global) instead and treats each grid
    row as one group of n_group cells.
    """

    kind: str
    code: EiiCode | None = None
    n_group: int | None = None
    h_local: int | None = None
    d_global: int | None = None

    @classmethod
    def rows_only(cls, code: EiiCode) -> "DecoderModel":
        return cls(ROWS_ONLY, code=code)

    @classmethod
    def cols_only(cls, code: EiiCode) -> "DecoderModel":
        return cls(COLS_ONLY, code=code)

    @classmethod
    def iterative(cls, code: EiiCode) -> "DecoderModel":
        return cls(ITERATIVE, code=code)

    @classmethod
    def ideal_lrc(cls, n_group: int, h_local: int,
                  d_global: int) -> "DecoderModel":
        if not (0 <= h_local < n_group and d_global >= 1):
            raise ValueError("need 0 <= h_local < n_group and d_global >= 1")
        return cls(IDEAL_LRC, n_group=n_group, h_local=h_local,
                   d_global=d_global)

    def grid_shape(self, shape=None) -> tuple[int, int]:
        """Resolve the (rows, cols) this model runs on.

        Code-backed models have an intrinsic shape; an explicit shape,
        when given, must agree.  The LRC model needs the shape spelled
        out, with rows acting as groups of n_group cells.
        """
        if self.code is not None:
            mine = (self.code.m, self.code.n)
            if shape is not None and tuple(shape) != mine:
                raise ValueError("shape %r does not match the code's %r"
                                 % (tuple(shape), mine))
            return mine
        if shape is None:
            raise ValueError("the LRC model needs an explicit grid shape")
        m, n = shape
        if n != self.n_group:
            raise ValueError("group size %d does not match n_group %d"
                             % (n, self.n_group))
        return m, n


@dataclass(frozen=True)
class SimResult:
    """trials samples summarized; std_error is sample stddev / sqrt(trials)."""

    trials: int
    mean: float
    std_error: float
    seed: int
    histogram: dict | None = None


def correctable(model: DecoderModel, pattern, shape=None) -> bool:
    """Decide whether the erasure pattern (a set of (row, col) coords)
    is fully recoverable under the model."""
    m, n = model.grid_shape(shape)
    rows = [set() for _ in range(m)]
    for r, c in pattern:
        if not (0 <= r < m and 0 <= c < n):
            raise ValueError("coordinate (%d, %d) outside %dx%d"
                             % (r, c, m, n))
        rows[r].add(c)
    return _correctable_rows(model, rows, m, n)


def _correctable_rows(model: DecoderModel, rows, m: int, n: int) -> bool:
    if model.kind == ROWS_ONLY:
        ok, _ = row_correctable(model.code.profile,
                                [len(s) for s in rows])
        return ok
    if model.kind == COLS_ONLY:
        cols = [0] * n
        for s in rows:
            for c in s:
                cols[c] += 1
        ok, _ = row_correctable(_tprofile(model.code.profile), cols)
        return ok
    if model.kind == ITERATIVE:
        return _iterative_clears(model.code.profile, rows)
    if model.kind == IDEAL_LRC:
        residual = sum(len(s) for s in rows if len(s) > model.h_local)
        return residual <= model.d_global
    raise ValueError("unknown model kind %r" % (model.kind,))


def _iterative_clears(profile, rows) -> bool:
    """Alternate row and column clearing passes on the mask until the
    grid empties or a full cycle removes nothing."""
    tprof = _tprofile(profile)
    rows = [set(s) for s in rows]
    cols = [set() for _ in range(profile.n)]
    for r, s in enumerate(rows):
        for c in s:
            cols[c].add(r)
    remaining = sum(len(s) for s in rows)
    while remaining:
        before = remaining
        _, good = row_correctable(profile, [len(s) for s in rows])
        for r in good:
            for c in rows[r]:
                cols[c].discard(r)
            remaining -= len(rows[r])
            rows[r] = set()
        if not remaining:
            break
        _, good = row_correctable(tprof, [len(s) for s in cols])
        for c in good:
            for r in cols[c]:
                rows[r].discard(c)
            remaining -= len(cols[c])
            cols[c] = set()
        if remaining == before:
            return False
    return True


_MASK64 = (1 << 64) - 1


def _trial_rng(seed: int, trial: int) -> random.Random:
    """Independent substream per (seed, trial): a 64-bit mix in the
    splitmix64 style seeds a stdlib generator, so trials are
    order-independent and safe to fan out."""
    z = (seed + (trial + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return random.Random(z ^ (z >> 31))


def _shuffled_cells(rng: random.Random, total: int, count: int) -> list:
    """First count entries of a Fisher-Yates shuffle of range(total),
    spelled out so the draw sequence is pinned."""
    pool = list(range(total))
    for i in range(count):
        j = rng.randrange(i, total)
        pool[i], pool[j] = pool[j], pool[i]
    return pool[:count]


def _summary(samples, seed: int, histogram=None) -> SimResult:
    trials = len(samples)
    mean = fsum(samples) / trials
    if trials > 1:
        var = fsum((x - mean) ** 2 for x in samples) / (trials - 1)
        std_error = sqrt(var / trials)
    else:
        std_error = 0.0
    return SimResult(trials, mean, std_error, seed, histogram)


def mean_erasures_to_failure(model: DecoderModel, shape=None,
                             trials: int = 100_000,
                             seed: int = 0) -> SimResult:
    """Average count of uniformly ordered erasures at which the pattern
    first becomes uncorrectable.

    Each trial permutes the mn cells and reports the 1-based length of
    the shortest uncorrectable prefix.  Correctability is monotone
    (erasing more never helps), so the cutoff is found by bisection.
    The histogram maps that length to its trial count.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    m, n = model.grid_shape(shape)
    total = m * n
    samples = []
    histogram: dict[int, int] = {}
    for t in range(trials):
        perm = _shuffled_cells(_trial_rng(seed, t), total, total)
        lo, hi = 1, total
        if _prefix_ok(model, perm, total, m, n):
            cutoff = total + 1
        else:
            while lo < hi:
                mid = (lo + hi) // 2
                if _prefix_ok(model, perm, mid, m, n):
                    lo = mid + 1
                else:
                    hi = mid
            cutoff = lo
        samples.append(float(cutoff))
        histogram[cutoff] = histogram.get(cutoff, 0) + 1
    return _summary(samples, seed, histogram)


def _prefix_ok(model: DecoderModel, perm, count: int, m: int, n: int) -> bool:
    rows = [set() for _ in range(m)]
    for cid in perm[:count]:
        rows[cid // n].add(cid % n)
    return _correctable_rows(model, rows, m, n)


def correction_probability(model: DecoderModel, num_erasures: int,
                           shape=None, trials: int = 100_000,
                           seed: int = 0) -> SimResult:
    """Fraction of uniformly random num_erasures-cell patterns the
    model corrects."""
    if trials < 1:
        raise ValueError("need at least one trial")
    m, n = model.grid_shape(shape)
    total = m * n
    if not 0 <= num_erasures <= total:
        raise ValueError("num_erasures %d outside 0..%d"
                         % (num_erasures, total))
    samples = []
    for t in range(trials):
        cells = _shuffled_cells(_trial_rng(seed, t), total, num_erasures)
        rows = [set() for _ in range(m)]
        for cid in cells:
            rows[cid // n].add(cid % n)
        samples.append(1.0 if _correctable_rows(model, rows, m, n) else 0.0)
    return _summary(samples, seed)


def birthday_expected(m: int) -> float:
    """Expected number of uniform draws from m bins until the first
    repeat, by the exact falling-factorial sum."""
    if m < 1:
        raise ValueError("need m >= 1")
    term = 1.0
    total = 1.0
    for k in range(1, m + 1):
        term *= (m - k + 1) / m
        total += term
    return total

"""Monte Carlo side: random partitions and their corner transition measures.

A sample is drawn by taking a Poisson-distributed size, a uniform random
permutation of that size, and the insertion-tableau shape of the
permutation.  The transition measure of the resulting partition is the
discrete probability measure supported on the contents of its addable
corners, with weights given by the partial fractions of

    prod_j (x - b_j) / prod_i (x - a_i)

over upper corner contents a_i and lower corner contents b_j.  Corner
arithmetic is exact; positions are rescaled by 1/sqrt(n), so even scaled
moments stay rational and floats appear only when estimates are averaged.

The moment estimator averages the transformed measure of the sampled
partition, whose exact even moments are the path-product sums of
transformed_moment below (the corner measure itself has the same mass,
mean and variance but larger sixth and higher moments; see the tests).

Randomness comes from a counter-based 64-bit generator that derives an
independent stream per trial index, so results are identical no matter
how trials are scheduled.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .algebra import rat_to_str
from .oracles import DuplicateEntries, Partition

__all__ = [
    "DEFAULT_SEED",
    "RngState",
    "TransitionMeasure",
    "mc_moment",
    "mc_moments",
    "poisson_sample",
    "rsk_shape",
    "sample_pp",
    "transformed_moment",
    "transition_measure",
]

DEFAULT_SEED = 8675309  # documented default; override with --seed / seed=

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_INVERSION_LIMIT = 30  # Poisson mean up to which plain inversion is used


def _mix64(z: int) -> int:
    """SplitMix64 finalizer: bijective 64-bit avalanche."""
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


class RngState:
    """Counter-based 64-bit generator with per-index splitting.

    A stream walks the SplitMix64 sequence from its seed.  split(i)
    derives the seed of an independent child stream from (seed, i) only,
    so per-trial results do not depend on how work is interleaved.
    """

    __slots__ = ("seed", "_counter")

    def __init__(self, seed: int):
        self.seed = seed & _MASK64
        self._counter = self.seed

    def split(self, index: int) -> "RngState":
        if index < 0:
            raise ValueError("split index must be nonnegative")
        child = _mix64(self.seed ^ _mix64((index + 1) * _GOLDEN & _MASK64))
        return RngState(child)

    def next_u64(self) -> int:
        self._counter = (self._counter + _GOLDEN) & _MASK64
        return _mix64(self._counter)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (2.0 ** -53)

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n), unbiased via rejection."""
        if n <= 0:
            raise ValueError("bound must be positive")
        bits = n.bit_length()
        while True:
            r = self.next_u64() >> (64 - bits)
            if r < n:
                return r

    def shuffle(self, xs: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(xs) - 1, 0, -1):
            j = self.randbelow(i + 1)
            xs[i], xs[j] = xs[j], xs[i]


def poisson_sample(mean: float, rng: RngState) -> int:
    """Draw a Poisson variate: inversion for small means, PTRS above.

    The transformed-rejection sampler follows Hormann's PTRS scheme,
    which is exact for means above 10; the inversion cutoff keeps well
    inside both methods' domains.
    """
    if mean <= 0:
        raise ValueError("mean must be positive")
    if mean <= _INVERSION_LIMIT:
        u = rng.random()
        p = math.exp(-mean)
        cdf = p
        k = 0
        while u > cdf:
            k += 1
            p *= mean / k
            cdf += p
        return k
    b = 0.931 + 2.53 * math.sqrt(mean)
    a = -0.059 + 0.02483 * b
    inv_alpha = 1.1239 + 1.1328 / (b - 3.4)
    v_r = 0.9277 - 3.6224 / (b - 2.0)
    log_mean = math.log(mean)
    while True:
        u = rng.random() - 0.5
        v = rng.random()
        us = 0.5 - abs(u)
        k = math.floor((2.0 * a / us + b) * u + mean + 0.43)
        if us >= 0.07 and v <= v_r:
            return int(k)
        if k < 0 or (us < 0.013 and v > us):
            continue
        if (math.log(v * inv_alpha / (a / (us * us) + b))
                <= k * log_mean - mean - math.lgamma(k + 1.0)):
            return int(k)


def rsk_shape(word: Sequence[int]) -> Partition:
    """Shape of the row-insertion tableau of a word of distinct integers."""
    seen = set(word)
    if len(seen) != len(word):
        raise DuplicateEntries("insertion word has repeated entries")
    rows: list[list[int]] = []
    for x in word:
        for row in rows:
            i = bisect_left(row, x)
            if i == len(row):
                row.append(x)
                break
            x, row[i] = row[i], x
        else:
            rows.append([x])
    return Partition(len(r) for r in rows)


def sample_pp(n: int, rng: RngState) -> Partition:
    """One random partition: Poisson(n) size, uniform permutation, shape."""
    if n < 1:
        raise ValueError("n must be positive")
    size = poisson_sample(n, rng)
    perm = list(range(1, size + 1))
    rng.shuffle(perm)
    return rsk_shape(perm)


class TransitionMeasure:
    """Corner measure of a partition, rescaled by 1/sqrt(n).

    Atoms are stored as the exact integer contents of the addable
    corners; the 1/sqrt(n) rescaling is applied symbolically, so every
    even scaled moment is an exact rational (content^2k / n^k) and the
    odd unscaled moments are exact as well.
    """

    __slots__ = ("atoms", "weights", "lower", "n")

    def __init__(self, atoms: Iterable[int], weights: Iterable[Fraction],
                 lower: Iterable[int], n: int):
        object.__setattr__(self, "atoms", tuple(int(a) for a in atoms))
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in weights))
        object.__setattr__(self, "lower", tuple(int(b) for b in lower))
        object.__setattr__(self, "n", int(n))
        if len(self.atoms) != len(self.weights):
            raise ValueError("one weight per atom required")
        if n < 1:
            raise ValueError("n must be positive")

    def __setattr__(self, name, value):
        raise AttributeError("TransitionMeasure is immutable")

    def total_mass(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def unscaled_moment(self, order: int) -> Fraction:
        """Moment of the integer-content measure, before rescaling."""
        return sum((w * a ** order for a, w in zip(self.atoms, self.weights)),
                   Fraction(0))

    def moment(self, order: int) -> Fraction:
        """Exact scaled moment; defined for even orders (and zero)."""
        if order % 2:
            raise ValueError("scaled odd moments are irrational; "
                             "use unscaled_moment")
        return self.unscaled_moment(order) / Fraction(self.n) ** (order // 2)

    def scaled_atoms(self) -> list[float]:
        root = math.sqrt(self.n)
        return [a / root for a in self.atoms]

    def to_json(self) -> dict:
        return {"n": self.n,
                "atoms": [str(a) for a in self.atoms],
                "weights": [rat_to_str(w) for w in self.weights]}


def transition_measure(shape: Partition, n: int) -> TransitionMeasure:
    """Exact transition measure of a partition at poissonization n.

    Upper (addable) corner contents a_i carry the weights
    prod_j (a_i - b_j) / prod_{j != i} (a_i - a_j) over the lower
    (removable) corner contents b_j.
    """
    uppers = shape.addable_contents()
    lowers = shape.removable_contents()
    weights = []
    for i, a in enumerate(uppers):
        num = 1
        for b in lowers:
            num *= a - b
        den = 1
        for j, a2 in enumerate(uppers):
            if j != i:
                den *= a - a2
        weights.append(Fraction(num, den))
    return TransitionMeasure(uppers, weights, lowers, n)


@lru_cache(maxsize=None)
def transformed_moment(size: int, k: int) -> int:
    """Exact unscaled 2k-th moment of the transformed measure at a size.

    Sum over nonnegative balanced paths of length 2k of the product of
    (size - h) over down steps ending at height h; this is the diagonal
    matrix element of the 2k-th power of the raising/lowering operator
    word sum at level `size`.  Equivalently, (size+1) times this value is
    the 2k-th power sum of the roots of the monic degree-(size+1)
    probabilists' Hermite polynomial, i.e. the measure is uniform on
    those roots.  Its mass, mean and variance agree with the corner
    transition measure of any partition of the same size.
    """
    if size < 0 or k < 0:
        raise ValueError("arguments must be nonnegative")
    ways = {0: 1}
    for _ in range(2 * k):
        nxt: dict[int, int] = {}
        for h, w in ways.items():
            nxt[h + 1] = nxt.get(h + 1, 0) + w
            if h > 0:
                f = size - (h - 1)
                if f:
                    nxt[h - 1] = nxt.get(h - 1, 0) + w * f
        ways = nxt
    return ways.get(0, 0)


def mc_moments(n: int, ks: Sequence[int], trials: int,
               seed: int = DEFAULT_SEED) -> list[tuple[float, float]]:
    """Estimate scaled moments of orders 2k for each k, sharing the samples.

    Each trial draws a partition and evaluates the exact rational 2k-th
    moment of its transformed measure, transformed_moment(|shape|, k)/n^k;
    averaging is the only floating step.  Returns (mean, standard error)
    per requested k.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    if any(k < 0 for k in ks):
        raise ValueError("moment orders must be nonnegative")
    root = RngState(seed)
    sums = [0.0] * len(ks)
    sq_sums = [0.0] * len(ks)
    for t in range(trials):
        shape = sample_pp(n, root.split(t))
        size = shape.size
        for i, k in enumerate(ks):
            v = float(Fraction(transformed_moment(size, k), n ** k))
            sums[i] += v
            sq_sums[i] += v * v
    out = []
    for i in range(len(ks)):
        mean = sums[i] / trials
        if trials == 1:
            se = 0.0
        else:
            var = max(0.0, (sq_sums[i] - trials * mean * mean) / (trials - 1))
            se = math.sqrt(var / trials)
        out.append((mean, se))
    return out


def mc_moment(n: int, k: int, trials: int,
              seed: int = DEFAULT_SEED) -> tuple[float, float]:
    """Monte Carlo estimate and standard error of the scaled 2k-th moment."""
    return mc_moments(n, [k], trials, seed)[0]

"""Monte Carlo oracles for the frog model on T_d.

``simulate_frog_model`` runs the full agent-based process on a lazily grown
tree.  The three estimators below it each check one probabilistic ingredient
of the bound in isolation: the edge law beta**dist, the child probability
phi_n(beta), and the mean offspring d**n phi_n(beta) of the embedded
branching process.

Conventions shared by every routine:

* one step = every awake frog first dies with probability 1 - p, and a
  survivor then jumps to a uniformly chosen neighbour;
* a frog woken at time t makes its first move at time t + 1;
* a frog visits the vertices it lands on, and its own start vertex.

Randomness is derived from ``(seed, trial index)`` for the per-trial
simulators and from ``(seed, block index)`` for the vectorised estimators,
with blocks of fixed size, so results do not depend on ``workers``.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from itertools import product

import numpy as np

from .analytic import beta, check_degree, check_probability

DEFAULT_HORIZON = 200
DEFAULT_AWAKE_CAP = 10**6
DEFAULT_SEED = 20190101
BLOCK_SIZE = 1 << 16
MAX_OFFSPRING_TARGETS = 10**4
# z-value behind the reported 95% half-width.
Z95 = 1.96

SLEEPING = 0
WOKEN = 1


class TreeArena:
    """Lazily grown T_d rooted at vertex 0.

    The root has ``d + 1`` child slots; every other vertex has its parent
    plus ``d`` child slots, so all degrees equal ``d + 1``.  Vertices are
    materialised on first arrival.  ``frog[v]`` is the state of the frog
    that starts at ``v``: sleeping until some frog lands there.
    """

    __slots__ = ("d", "parent", "children", "depth", "frog")

    def __init__(self, d: int):
        self.d = check_degree(d)
        self.parent = [-1]
        self.children = [[-1] * (d + 1)]
        self.depth = [0]
        self.frog = [WOKEN]

    def __len__(self) -> int:
        return len(self.parent)

    def child(self, v: int, slot: int) -> int:
        kids = self.children[v]
        w = kids[slot]
        if w < 0:
            w = len(self.parent)
            kids[slot] = w
            self.parent.append(v)
            self.children.append([-1] * self.d)
            self.depth.append(self.depth[v] + 1)
            self.frog.append(SLEEPING)
        return w

    def neighbour(self, v: int, k: int) -> int:
        """k-th neighbour of v, 0 <= k <= d; for non-root v, k = 0 is the parent."""
        if v == 0:
            return self.child(0, k)
        if k == 0:
            return self.parent[v]
        return self.child(v, k - 1)

    def check_integrity(self) -> None:
        n = len(self.parent)
        if not (len(self.children) == len(self.depth) == len(self.frog) == n):
            raise AssertionError("arena arrays out of sync")
        if self.parent[0] != -1 or len(self.children[0]) != self.d + 1:
            raise AssertionError("malformed root")
        for v in range(n):
            kids = self.children[v]
            if v and len(kids) != self.d:
                raise AssertionError(f"vertex {v} has {len(kids)} child slots")
            for w in kids:
                if w >= 0 and (self.parent[w] != v or self.depth[w] != self.depth[v] + 1):
                    raise AssertionError(f"broken link {v} -> {w}")
            if v:
                if self.parent[v] < 0 or v not in self.children[self.parent[v]]:
                    raise AssertionError(f"vertex {v} is not listed by its parent")
            if self.frog[v] not in (SLEEPING, WOKEN):
                raise AssertionError(f"vertex {v} has frog state {self.frog[v]}")


@dataclass(frozen=True)
class SimConfig:
    d: int
    p: float
    horizon: int = DEFAULT_HORIZON
    awake_cap: int = DEFAULT_AWAKE_CAP
    trials: int = 1000
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        check_degree(self.d)
        check_probability(self.p)
        for name in ("horizon", "awake_cap", "trials"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class SurvivalEstimate:
    """Bernoulli frequency with a normal-approximation 95% half-width."""

    trials: int
    successes: int
    point: float
    ci95_halfwidth: float

    @classmethod
    def from_counts(cls, successes: int, trials: int) -> SurvivalEstimate:
        point = successes / trials
        return cls(trials, successes, point, Z95 * math.sqrt(point * (1.0 - point) / trials))


@dataclass(frozen=True)
class MeanEstimate:
    trials: int
    mean: float
    ci95_halfwidth: float


def _trial_rng(seed: int, index: int) -> random.Random:
    state = np.random.SeedSequence(seed, spawn_key=(index,)).generate_state(4, np.uint64)
    return random.Random(int.from_bytes(state.tobytes(), "little"))


def _block_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


def _blocks(trials: int) -> list[tuple[int, int]]:
    return [(i, min(BLOCK_SIZE, trials - i * BLOCK_SIZE)) for i in range(-(-trials // BLOCK_SIZE))]


def _map(fn, items, workers: int) -> list:
    if workers <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


# -- full frog model ---------------------------------------------------------


def run_replica(
    d: int, p: float, horizon: int, awake_cap: int, rng: random.Random
) -> tuple[bool, TreeArena]:
    """One realisation; returns (survived, arena).

    Survival means some frog is awake after step ``horizon``, or the awake
    count reached ``awake_cap`` at some time.
    """
    arena = TreeArena(d)
    rand = rng.random
    deg = d + 1
    awake = [0]
    if len(awake) >= awake_cap:
        return True, arena
    frog = arena.frog
    neighbour = arena.neighbour
    for _ in range(horizon):
        moved = []
        for v in awake:
            if rand() >= p:
                continue
            w = neighbour(v, int(rand() * deg))
            moved.append(w)
            if frog[w] == SLEEPING:
                frog[w] = WOKEN
                moved.append(w)
        awake = moved
        if not awake:
            return False, arena
        if len(awake) >= awake_cap:
            return True, arena
    return True, arena


def _replica_chunk(config: SimConfig, indices: range) -> int:
    hits = 0
    for i in indices:
        survived, _ = run_replica(
            config.d, config.p, config.horizon, config.awake_cap, _trial_rng(config.seed, i)
        )
        hits += survived
    return hits


def _index_chunks(trials: int, workers: int) -> list[range]:
    size = max(1, -(-trials // max(1, 4 * workers)))
    return [range(s, min(trials, s + size)) for s in range(0, trials, size)]


def simulate_frog_model(config: SimConfig, workers: int = 1) -> SurvivalEstimate:
    """Fraction of replicas that survive to the horizon (or hit the awake cap)."""
    if config.p == 1.0:
        # Nobody ever dies; every replica trivially survives.
        return SurvivalEstimate.from_counts(config.trials, config.trials)
    chunks = _index_chunks(config.trials, workers)
    hits = sum(_map(partial(_replica_chunk, config), chunks, workers))
    return SurvivalEstimate.from_counts(hits, config.trials)


# -- single-frog edge law ----------------------------------------------------


def _escape_distance(b: float, floor: float = 1e-16) -> int:
    """Distance L beyond which a return has probability b**L < floor."""
    if b <= 0.0:
        return 1
    if b >= 1.0:
        raise ValueError("escape distance is unbounded for b >= 1")
    return max(1, math.ceil(math.log(floor) / math.log(b)))


def _hit_block(d: int, p: float, n: int, cutoff: int, seed: int, block: tuple[int, int]) -> int:
    index, size = block
    rng = _block_rng(seed, index)
    dist = np.full(size, n, dtype=np.int64)
    active = np.arange(size)
    hits = 0
    toward = 1.0 / (d + 1)
    while active.size:
        survives = rng.random(active.size) < p
        active = active[survives]
        step = np.where(rng.random(active.size) < toward, -1, 1)
        dist[active] += step
        reached = dist[active] == 0
        hits += int(reached.sum())
        active = active[~reached & (dist[active] < cutoff)]
    return hits


def _hit_tree_trial(d: int, p: float, n: int, cutoff: int, rng: random.Random) -> bool:
    arena = TreeArena(d)
    target = 0
    for _ in range(n):
        target = arena.child(target, 0)
    v, rand, deg = 0, rng.random, d + 1
    while rand() < p:
        v = arena.neighbour(v, int(rand() * deg))
        if v == target:
            return True
        if arena.depth[v] >= cutoff:
            return False
    return False


def estimate_hit_probability(
    d: int,
    p: float,
    n: int,
    trials: int,
    seed: int = DEFAULT_SEED,
    method: str = "chain",
    workers: int = 1,
) -> SurvivalEstimate:
    """Frequency with which one awake frog ever visits a fixed vertex n steps away.

    ``method="chain"`` simulates only the frog's distance to the target, which
    on T_d moves one step closer with probability 1/(d+1) and one step away
    otherwise; it is vectorised per block.  ``method="tree"`` walks the frog
    on an explicit arena, one trial at a time.  Frogs that drift so far that
    returning has probability below 1e-16 are counted as misses.
    """
    d = check_degree(d)
    p = check_probability(p)
    if n < 1 or trials < 1:
        raise ValueError("need n >= 1 and trials >= 1")
    cutoff = n + _escape_distance(beta(d, p))
    if method == "chain":
        hits = sum(_map(partial(_hit_block, d, p, n, cutoff, seed), _blocks(trials), workers))
    elif method == "tree":
        hits = sum(_hit_tree_trial(d, p, n, cutoff, _trial_rng(seed, i)) for i in range(trials))
    else:
        raise ValueError(f"unknown method {method!r}")
    return SurvivalEstimate.from_counts(hits, trials)


# -- child event along a path --------------------------------------------------


def child_event(opens, n: int):
    """Indicator of [x_0 => x_n] on the path x_0, ..., x_n.

    ``opens(j, k)`` gives the indicator of [x_j -> x_k] (the frog from x_j
    ever visits x_k) for 0 <= j < k <= n, as a bool or a numpy bool array.
    x_j stops at x_l means it reaches x_l but not x_{l+1}.  Then x_j => x_n
    holds iff x_j reaches x_n directly, or x_j stops at x_{j+1} and
    x_{j+1} => x_n, or for some l in 2..n-j-1 x_j stops at x_{j+l} and one
    of x_{j+l-1}, x_{j+l} => x_n.
    """
    memo = {}

    def stops(j, k):
        return opens(j, k) & ~opens(j, k + 1)

    def event(j):
        if j in memo:
            return memo[j]
        m = n - j
        out = opens(j, n)
        if m >= 2:
            out = out | (stops(j, j + 1) & event(j + 1))
        for ell in range(2, m):
            out = out | (stops(j, j + ell) & (event(j + ell - 1) | event(j + ell)))
        memo[j] = out
        return out

    return event(0)


def sample_reaches(b: float, n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """Reach of each path frog: shape (n, size), P[M >= l] = b**l, by inversion."""
    if b <= 0.0:
        return np.zeros((n, size), dtype=np.int64)
    u = 1.0 - rng.random((n, size))
    return np.floor(np.log(u) / math.log(b)).astype(np.int64)


def _child_block(b: float, n: int, seed: int, block: tuple[int, int]) -> int:
    index, size = block
    reach = sample_reaches(b, n, size, _block_rng(seed, index))
    event = child_event(lambda j, k: reach[j] >= k - j, n)
    return int(np.count_nonzero(event))


def estimate_child_probability(
    d: int, p: float, n: int, trials: int, seed: int = DEFAULT_SEED, workers: int = 1
) -> SurvivalEstimate:
    """Frequency of [x_0 => x_n] when each path frog's reach follows the edge law."""
    d = check_degree(d)
    b = beta(d, p)
    if n < 1 or trials < 1:
        raise ValueError("need n >= 1 and trials >= 1")
    hits = sum(_map(partial(_child_block, b, n, seed), _blocks(trials), workers))
    return SurvivalEstimate.from_counts(hits, trials)


# -- offspring of the embedded branching process -------------------------------


def _walk_visits(arena: TreeArena, start: int, p: float, cutoff: int, rand) -> set[int]:
    visits = {start}
    v, deg = start, arena.d + 1
    while rand() < p:
        v = arena.neighbour(v, int(rand() * deg))
        visits.add(v)
        if arena.depth[v] >= cutoff:
            break
    return visits


def _offspring_trial(d: int, p: float, n: int, cutoff: int, rng: random.Random) -> int:
    arena = TreeArena(d)
    # Root slot d leads to the excluded neighbour; slots 0..d-1 span T_d^+(root).
    paths = [
        [0] + _descend(arena, slots) for slots in product(range(d), repeat=n)
    ]
    visits = {}
    for path in paths:
        for v in path[:-1]:
            if v not in visits:
                visits[v] = _walk_visits(arena, v, p, cutoff, rng.random)
    count = 0
    for path in paths:
        count += child_event(lambda j, k: path[k] in visits[path[j]], n)
    return count


def _descend(arena: TreeArena, slots) -> list[int]:
    out, v = [], 0
    for s in slots:
        v = arena.child(v, s)
        out.append(v)
    return out


def _offspring_chunk(d: int, p: float, n: int, cutoff: int, seed: int, indices: range):
    total = total_sq = 0
    for i in indices:
        c = _offspring_trial(d, p, n, cutoff, _trial_rng(seed, i))
        total += c
        total_sq += c * c
    return total, total_sq


def simulate_branching_offspring(
    d: int, p: float, n: int, trials: int, seed: int = DEFAULT_SEED, workers: int = 1
) -> MeanEstimate:
    """Mean number of children of the root in the n-level embedded process.

    Every frog on a root-to-L_n path walks until it dies (whether or not it
    would ever be woken) and its visit set decides the events [x -> y].
    """
    d = check_degree(d)
    p = check_probability(p)
    if n < 1 or trials < 1:
        raise ValueError("need n >= 1 and trials >= 1")
    if d**n > MAX_OFFSPRING_TARGETS:
        raise ValueError(f"d**n = {d ** n} exceeds {MAX_OFFSPRING_TARGETS} targets")
    cutoff = n + _escape_distance(beta(d, p))
    parts = _map(
        partial(_offspring_chunk, d, p, n, cutoff, seed), _index_chunks(trials, workers), workers
    )
    total = sum(t for t, _ in parts)
    total_sq = sum(s for _, s in parts)
    mean = total / trials
    var = max(0.0, total_sq / trials - mean * mean)
    return MeanEstimate(trials, mean, Z95 * math.sqrt(var / trials))

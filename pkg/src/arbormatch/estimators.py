"""One-pass streaming estimators for maximum-matching size.

Four building blocks, combined two ways:

* ``alg1_estimate`` samples vertices and tracks exact degree counters d(.) on
  sampled vertices plus lower-bound counters l(.) on their neighbors; its
  output estimates the high-degree count plus the non-isolated low-degree
  count, a constant-factor surrogate for the matching size.
* ``alg2_estimate`` runs a greedy maximal matching truncated at t edges next
  to alg1 in the same pass and picks whichever side is trustworthy.
* ``alpha_good_test_feed`` is the per-edge survival test (at most alpha later
  incident edges per endpoint); ``alg4_estimate_e_alpha`` runs the test under
  geometric level sampling to estimate the number of surviving edges, and
  ``estimate_matching_logspace`` turns that count into a matching estimate.
* ``dynamic_estimate`` is the insert/delete variant of alg2: counters are
  decremented on deletes and the greedy side runs on a capacity-bounded
  uniform edge sample that is rebuilt after deletions touching it.

Space is instrumented at event granularity in abstract items: one stored
edge = 1 item, one counter = 1 item, one live survival test = 3 items.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace
from typing import TYPE_CHECKING

from .errors import BudgetExceeded, ConfigError
from .graphs import Edge

if TYPE_CHECKING:
    from .streams import EdgeStream, StreamEvent

_INSERT = "+"
_DELETE = "-"

TEST_ACTIVE = "active"
TEST_FAILED = "failed"


@dataclass(frozen=True)
class Estimate:
    """Result of one estimator run.

    ``value`` is None when the run failed (failure is a value, not an error;
    callers decide whether to retry with a fresh seed). ``params`` echoes the
    effective parameters plus per-run diagnostics.
    """

    value: float | int | None
    space_peak: int
    seed: int
    params: dict
    failed: bool = False
    trace: dict | None = None


# ---------------------------------------------------------------------------
# Degree-sampling estimator (alg1) and its greedy companion (alg2)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Alg1Params:
    """Parameters of the degree-sampling estimator.

    beta is the approximation factor mu*(2*mu/(mu-2c+1)+1) and lam = epsilon/beta
    the relative accuracy used to size sampling probabilities. mu must exceed
    2c so the factor's denominator stays positive.
    """

    mu: int
    p: float
    c: int
    epsilon: float

    def __post_init__(self):
        if self.c < 1:
            raise ConfigError(f"c must be >= 1, got {self.c}")
        if self.mu <= 2 * self.c:
            raise ConfigError(f"mu must exceed 2c = {2 * self.c}, got {self.mu}")
        if not 0.0 < self.p <= 1.0:
            raise ConfigError(f"p must be in (0, 1], got {self.p}")
        if not 0.0 < self.epsilon < 1.0:
            raise ConfigError(f"epsilon must be in (0, 1), got {self.epsilon}")

    @property
    def beta(self) -> float:
        return self.mu * (2.0 * self.mu / (self.mu - 2 * self.c + 1) + 1.0)

    @property
    def lam(self) -> float:
        return self.epsilon / self.beta


class Alg1State:
    """Stream state of the degree-sampling estimator; handles deletes too.

    Every vertex enters the sample S independently with probability p at
    initialization. Each arriving edge with a sampled endpoint is stored;
    sampled endpoints advance their exact counter d(.), unsampled endpoints
    of stored edges advance the lower-bound counter l(.). Deletes undo those
    updates, and a neighbor whose stored edges all vanish is discarded.
    """

    def __init__(self, n: int, params: Alg1Params, seed: int):
        self.n = n
        self.params = params
        if params.p >= 1.0:
            sampled = set(range(n))
        else:
            rng = random.Random(seed)
            p = params.p
            sampled = {v for v in range(n) if rng.random() < p}
        self.sampled = sampled
        self.deg = dict.fromkeys(sampled, 0)  # d(.): exact live degree per sampled vertex
        self.lower: dict[int, int] = {}  # l(.): stored-edge count per outside neighbor
        self.neighbors: dict[int, set[int]] = {v: set() for v in sampled}
        self.stored: set[Edge] = set()  # H: edges with a sampled endpoint
        self.space_peak = len(sampled)

    def items(self) -> int:
        """Current stored items: |H| edges plus one counter per S and Gamma(S)\\S vertex."""
        return len(self.stored) + len(self.deg) + len(self.lower)

    def apply(self, ev: "StreamEvent") -> None:
        if ev.kind == _INSERT:
            self.apply_insert(ev.u, ev.v)
        else:
            self.apply_delete(ev.u, ev.v)

    def apply_insert(self, u: int, v: int) -> None:
        sampled = self.sampled
        in_u = u in sampled
        in_v = v in sampled
        if not (in_u or in_v):
            return
        self.stored.add((u, v))
        if in_u:
            self.deg[u] += 1
            self.neighbors[u].add(v)
        else:
            self.lower[u] = self.lower.get(u, 0) + 1
        if in_v:
            self.deg[v] += 1
            self.neighbors[v].add(u)
        else:
            self.lower[v] = self.lower.get(v, 0) + 1
        items = len(self.stored) + len(self.deg) + len(self.lower)
        if items > self.space_peak:
            self.space_peak = items

    def apply_delete(self, u: int, v: int) -> None:
        e = (u, v)
        if e not in self.stored:
            return
        self.stored.remove(e)
        for x, other in ((u, v), (v, u)):
            if x in self.sampled:
                self.deg[x] -= 1
                self.neighbors[x].discard(other)
            else:
                self.lower[x] -= 1
                if self.lower[x] == 0:
                    del self.lower[x]  # all stored edges gone: drop from Gamma(S)

    def counter(self, w: int) -> int:
        """The one counter that exists for w: d(w) if sampled, else l(w)."""
        if w in self.sampled:
            return self.deg[w]
        return self.lower.get(w, 0)

    def split(self) -> tuple[list[int], list[int]]:
        """(S_1, S_2): low-degree sampled vertices with a low-counter neighbor,
        and high-degree sampled vertices."""
        mu = self.params.mu
        s1 = []
        s2 = []
        for v in self.sampled:
            d = self.deg[v]
            if d > mu:
                s2.append(v)
            elif any(self.counter(w) <= mu for w in self.neighbors[v]):
                s1.append(v)
        return s1, s2

    def estimate(self) -> float:
        s1, s2 = self.split()
        return (len(s1) + len(s2)) / self.params.p


def alg1_estimate(stream: "EdgeStream", params: Alg1Params, seed: int) -> Estimate:
    """Run the degree-sampling estimator over an insert-only stream.

    Returns s = (|S_1| + |S_2|) / p; an empty sample simply yields 0.
    """
    edges = stream.insert_edges()
    state = Alg1State(stream.n, params, seed)
    for u, v in edges:
        state.apply_insert(u, v)
    return Estimate(
        value=state.estimate(),
        space_peak=state.space_peak,
        seed=seed,
        params={
            "algorithm": "alg1",
            "mu": params.mu,
            "p": params.p,
            "c": params.c,
            "epsilon": params.epsilon,
            "beta": params.beta,
            "sample_size": len(state.sampled),
        },
    )


def alg2_greedy_cutoff(n: int, c: int, epsilon: float, beta: float) -> int:
    """Greedy truncation threshold t = ceil(beta * sqrt(8*n*c) / epsilon)."""
    return math.ceil(beta * math.sqrt(8.0 * n * c) / epsilon)


def alg2_estimate(stream: "EdgeStream", c: int, mu: int, epsilon: float, seed: int) -> Estimate:
    """One-pass composite: truncated greedy matching next to the degree sampler.

    The greedy side admits edges while its matching is below t; if it ends
    below t its doubled size is already a 2-approximation and is returned,
    otherwise the degree-sampling estimate (run at p = min(1, 8/(lam^2 t)))
    is returned.
    """
    edges = stream.insert_edges()
    n = stream.n
    probe = Alg1Params(mu=mu, p=1.0, c=c, epsilon=epsilon)  # validates mu/c/epsilon
    beta = probe.beta
    lam = probe.lam
    t = alg2_greedy_cutoff(n, c, epsilon, beta)
    p = min(1.0, 8.0 / (lam * lam * t))
    params = Alg1Params(mu=mu, p=p, c=c, epsilon=epsilon)
    state = Alg1State(n, params, seed)
    matched: set[int] = set()
    r = 0
    truncated = False
    peak = state.space_peak
    for u, v in edges:
        if not truncated and u not in matched and v not in matched:
            if r == t:
                truncated = True  # t+1-st admissible edge: stop the greedy task
            else:
                matched.add(u)
                matched.add(v)
                r += 1
        state.apply_insert(u, v)
        items = state.items() + r
        if items > peak:
            peak = items
    if r < t:
        value: float | int = 2 * r
        branch = "greedy"
    else:
        value = state.estimate()
        branch = "alg1"
    return Estimate(
        value=value,
        space_peak=peak,
        seed=seed,
        params={
            "algorithm": "alg2",
            "mu": mu,
            "c": c,
            "epsilon": epsilon,
            "beta": beta,
            "t": t,
            "p": p,
            "greedy_r": r,
            "branch": branch,
        },
    )


# ---------------------------------------------------------------------------
# Survival test (alg3) and level-sampled survivor counting (alg4)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlphaGoodTest:
    """Survival test for one stream edge.

    r_u / r_v count later edges incident to each endpoint; the test fails the
    moment either exceeds alpha. The edge that started the test never counts
    toward its own counters.
    """

    u: int
    v: int
    alpha: float
    r_u: int = 0
    r_v: int = 0
    status: str = TEST_ACTIVE

    @classmethod
    def for_edge(cls, u: int, v: int, alpha: float) -> "AlphaGoodTest":
        if u == v:
            raise ConfigError(f"self-loop test edge ({u}, {v})")
        a, b = (u, v) if u < v else (v, u)
        return cls(u=a, v=b, alpha=alpha)


def alpha_good_test_feed(test: AlphaGoodTest, event: "StreamEvent") -> AlphaGoodTest:
    """Feed one subsequent insert event to an active test.

    Returns the updated test; the status flips to failed when either endpoint
    counter passes alpha.
    """
    if test.status != TEST_ACTIVE:
        raise ConfigError("cannot feed a test that already failed")
    if event.kind != _INSERT:
        raise ConfigError("survival tests consume insert events only")
    r_u = test.r_u + (1 if test.u in (event.u, event.v) else 0)
    r_v = test.r_v + (1 if test.v in (event.u, event.v) else 0)
    if r_u == test.r_u and r_v == test.r_v:
        return test
    status = TEST_FAILED if max(r_u, r_v) > test.alpha else TEST_ACTIVE
    return replace(test, r_u=r_u, r_v=r_v, status=status)


@dataclass(frozen=True)
class LevelState:
    """End-of-run snapshot of one sampling level.

    ``live_tests`` is the size of the level's surviving test set (zero once
    terminated, since a terminated level discards its tests); ``terminated``
    latches at the first event that pushed the set past ``cap``.
    """

    index: int
    probability: float
    live_tests: int
    cap: float
    terminated: bool


class _LiveTest:
    __slots__ = ("u", "v", "r_u", "r_v", "level", "alive", "pos")

    def __init__(self, u: int, v: int, level: int, pos: int):
        self.u = u
        self.v = v
        self.r_u = 0
        self.r_v = 0
        self.level = level
        self.alive = True
        self.pos = pos


def _geometric_skip(rng: random.Random, p: float) -> int:
    """Events to skip until the next sampled one (>= 1) at per-event rate p."""
    if p >= 1.0:
        return 1
    return int(math.log(1.0 - rng.random()) / math.log(1.0 - p)) + 1


def alg4_num_levels(n: int, c: int, epsilon: float) -> int:
    """Level count: indices 0..floor(log_{1+eps}(c*n)), using m <= c*n."""
    cn = max(c * n, 1)
    return int(math.floor(math.log(cn) / math.log(1.0 + epsilon))) + 1


def alg4_level_cap(n: int, alpha: float, c: int, epsilon: float) -> float:
    """Per-level live-test cap tau = 64*alpha^2*ln(n)/(c*eps^2)."""
    return 64.0 * alpha * alpha * math.log(max(n, 2)) / (c * epsilon * epsilon)


def alg4_selection_threshold(n: int, epsilon: float) -> float:
    """Post-selection threshold tau' = 8*ln(n)/eps^2."""
    return 8.0 * math.log(max(n, 2)) / (epsilon * epsilon)


def alg4_estimate_e_alpha(
    stream: "EdgeStream",
    alpha: float,
    c: int,
    epsilon: float,
    seed: int,
    *,
    tau_override: float | None = None,
    collect_trace: bool = False,
) -> Estimate:
    """Estimate the number of surviving (alpha-good) edges of an insert-only stream.

    Levels i = 0.. sample each event with probability (1+eps)^-i and run a
    survival test per sampled edge; existing tests are fed before the event's
    own sampling decision. A level is terminated the moment its live-test set
    exceeds tau. Post-processing returns |X_0| exactly when level 0 survived,
    otherwise |X_j|/p_j for the smallest live level under tau'*(1+eps), or a
    failed Estimate when no level qualifies.

    ``tau_override`` (e.g. math.inf) and ``collect_trace`` are test hooks: the
    trace records per-level started/surviving positions and size high-marks.
    """
    if not 0.0 < epsilon < 1.0:
        raise ConfigError(f"epsilon must be in (0, 1), got {epsilon}")
    if alpha < 1:
        raise ConfigError(f"alpha must be >= 1, got {alpha}")
    if c < 1:
        raise ConfigError(f"c must be >= 1, got {c}")
    edges = stream.insert_edges()
    n = stream.n
    num_levels = alg4_num_levels(n, c, epsilon)
    tau = alg4_level_cap(n, alpha, c, epsilon) if tau_override is None else tau_override
    tau_prime = alg4_selection_threshold(n, epsilon)
    growth = 1.0 + epsilon

    master = random.Random(seed)
    rngs = [random.Random(master.getrandbits(64)) for _ in range(num_levels)]
    probs = [growth ** (-i) for i in range(num_levels)]
    live_count = [0] * num_levels
    max_live = [0] * num_levels
    terminated = [False] * num_levels
    by_vertex: dict[int, list[_LiveTest]] = {}
    due: dict[int, list[int]] = {}
    for i in range(num_levels):
        due.setdefault(_geometric_skip(rngs[i], probs[i]), []).append(i)
    total_live = 0
    peak = 0
    all_tests: list[_LiveTest] = []

    for pos in range(1, len(edges) + 1):
        u, v = edges[pos - 1]
        # feed existing tests before this event's own sampling decision
        for x in (u, v):
            tests = by_vertex.get(x)
            if not tests:
                continue
            keep = 0
            for tst in tests:
                if not tst.alive or terminated[tst.level]:
                    continue  # stale entry, drop it
                if x == tst.u:
                    tst.r_u += 1
                    failed_now = tst.r_u > alpha
                else:
                    tst.r_v += 1
                    failed_now = tst.r_v > alpha
                if failed_now:
                    tst.alive = False
                    live_count[tst.level] -= 1
                    total_live -= 1
                    continue
                tests[keep] = tst
                keep += 1
            del tests[keep:]
            if not tests:
                del by_vertex[x]
        scheduled = due.pop(pos, None)
        if scheduled:
            for i in scheduled:
                if terminated[i]:
                    continue
                tst = _LiveTest(u, v, i, pos)
                by_vertex.setdefault(u, []).append(tst)
                by_vertex.setdefault(v, []).append(tst)
                if collect_trace:
                    all_tests.append(tst)
                live_count[i] += 1
                total_live += 1
                if live_count[i] > max_live[i]:
                    max_live[i] = live_count[i]
                if live_count[i] > tau:
                    terminated[i] = True
                    total_live -= live_count[i]
                else:
                    due.setdefault(pos + _geometric_skip(rngs[i], probs[i]), []).append(i)
        if 3 * total_live > peak:
            peak = 3 * total_live

    value: float | int | None
    failed = False
    selected: int | None = None
    if not terminated[0] and live_count[0] <= tau:
        value = live_count[0]
        selected = 0
    else:
        threshold = tau_prime * (1.0 + epsilon)
        value = None
        for i in range(num_levels):
            if not terminated[i] and live_count[i] <= threshold:
                selected = i
                value = live_count[i] / probs[i]
                break
        if selected is None:
            failed = True

    trace = None
    if collect_trace:
        started: dict[int, list[int]] = {i: [] for i in range(num_levels)}
        survivors: dict[int, list[int]] = {i: [] for i in range(num_levels)}
        for tst in all_tests:
            started[tst.level].append(tst.pos)
            if tst.alive and not terminated[tst.level]:
                survivors[tst.level].append(tst.pos)
        trace = {
            "started": started,
            "survivors": survivors,
            "max_live": list(max_live),
            "final_live": list(live_count),
            "terminated": list(terminated),
            "levels": tuple(
                LevelState(
                    index=i,
                    probability=probs[i],
                    live_tests=0 if terminated[i] else live_count[i],
                    cap=tau,
                    terminated=terminated[i],
                )
                for i in range(num_levels)
            ),
        }
    return Estimate(
        value=value,
        space_peak=peak,
        seed=seed,
        params={
            "algorithm": "alg4",
            "alpha": alpha,
            "c": c,
            "epsilon": epsilon,
            "tau": tau,
            "tau_prime": tau_prime,
            "num_levels": num_levels,
            "selected_level": selected,
        },
        failed=failed,
        trace=trace,
    )


LOGSPACE_MAX_ATTEMPTS = 4  # initial seed plus up to three fresh retries


def estimate_matching_logspace(
    stream: "EdgeStream",
    c: int,
    epsilon: float,
    seed: int,
    *,
    tau_override: float | None = None,
) -> Estimate:
    """Matching-size estimate 3 * (survivor-count estimate at alpha = 6c).

    A failed survivor estimate is retried with fresh derived seeds (seed+1,
    seed+2, ...) a bounded number of times before failure is surfaced.
    """
    alpha = 6 * c
    peak = 0
    for attempt in range(LOGSPACE_MAX_ATTEMPTS):
        est = alg4_estimate_e_alpha(
            stream, alpha, c, epsilon, seed + attempt, tau_override=tau_override
        )
        if est.space_peak > peak:
            peak = est.space_peak
        if not est.failed:
            return Estimate(
                value=3 * est.value,
                space_peak=peak,
                seed=seed,
                params={
                    "algorithm": "logspace",
                    "alpha": alpha,
                    "c": c,
                    "epsilon": epsilon,
                    "attempts": attempt + 1,
                    "selected_level": est.params["selected_level"],
                    "num_levels": est.params["num_levels"],
                    "tau": est.params["tau"],
                },
            )
    return Estimate(
        value=None,
        space_peak=peak,
        seed=seed,
        params={
            "algorithm": "logspace",
            "alpha": alpha,
            "c": c,
            "epsilon": epsilon,
            "attempts": LOGSPACE_MAX_ATTEMPTS,
        },
        failed=True,
    )


# ---------------------------------------------------------------------------
# Insert/delete variant
# ---------------------------------------------------------------------------


class _SampledMatching:
    """Capacity-bounded uniform edge sample with a greedy matching on top.

    Stand-in for a full dynamic maximal-matching structure: each arriving live
    edge is retained with probability min(1, capacity/m_hat) where m_hat is
    the running live-edge count, and the greedy matching is recomputed over
    the sample (in retention order) after every deletion that touches it.
    """

    def __init__(self, capacity: int, seed: int):
        self.capacity = capacity
        self.rng = random.Random(seed)
        self.live_total = 0
        self.sample: dict[Edge, None] = {}
        self.matched: dict[int, int] = {}
        self.msize = 0

    def items(self) -> int:
        return len(self.sample)

    def apply(self, ev: "StreamEvent") -> None:
        e = (ev.u, ev.v)
        if ev.kind == _INSERT:
            self.live_total += 1
            keep_p = min(1.0, self.capacity / self.live_total)
            if keep_p >= 1.0 or self.rng.random() < keep_p:
                self.sample[e] = None
                if ev.u not in self.matched and ev.v not in self.matched:
                    self.matched[ev.u] = ev.v
                    self.matched[ev.v] = ev.u
                    self.msize += 1
        else:
            self.live_total -= 1
            if e in self.sample:
                del self.sample[e]
                self._rebuild()

    def _rebuild(self) -> None:
        self.matched = {}
        self.msize = 0
        for u, v in self.sample:
            if u not in self.matched and v not in self.matched:
                self.matched[u] = v
                self.matched[v] = u
                self.msize += 1


DYNAMIC_BUDGET_FACTOR = 4  # allowed stream length: 4*c*n events


def dynamic_greedy_cutoff(n: int, c: int, epsilon: float, beta: float) -> int:
    """Cutoff t = ceil((8*beta*n*c/eps^2)^(1/3)) for the insert/delete variant."""
    return math.ceil((8.0 * beta * n * c / (epsilon * epsilon)) ** (1.0 / 3.0))


def dynamic_estimate(
    stream: "EdgeStream", c: int, mu: int, epsilon: float, seed: int
) -> Estimate:
    """Insert/delete matching estimate with the alg2 post-processing.

    Runs the delete-aware degree sampler next to a greedy matching over a
    4*t^2-edge uniform sample; returns twice the final greedy size when it
    stays below t, the degree-sampling estimate otherwise. Streams longer
    than the 4*c*n budget are rejected.
    """
    n = stream.n
    budget = DYNAMIC_BUDGET_FACTOR * c * n
    if len(stream.events) > budget:
        raise BudgetExceeded(
            f"stream of {len(stream.events)} events exceeds the budget {budget}"
        )
    probe = Alg1Params(mu=mu, p=1.0, c=c, epsilon=epsilon)
    beta = probe.beta
    lam = probe.lam
    t = dynamic_greedy_cutoff(n, c, epsilon, beta)
    p = min(1.0, 8.0 / (lam * lam * t))
    master = random.Random(seed)
    sampler_seed = master.getrandbits(64)
    matcher_seed = master.getrandbits(64)
    state = Alg1State(n, Alg1Params(mu=mu, p=p, c=c, epsilon=epsilon), sampler_seed)
    matcher = _SampledMatching(capacity=4 * t * t, seed=matcher_seed)
    peak = state.space_peak
    for ev in stream.events:
        matcher.apply(ev)
        state.apply(ev)
        items = state.items() + matcher.items()
        if items > peak:
            peak = items
    r = matcher.msize
    s = state.estimate()
    if r < t:
        value: float | int = 2 * r
        branch = "greedy"
    else:
        value = s
        branch = "alg1"
    return Estimate(
        value=value,
        space_peak=peak,
        seed=seed,
        params={
            "algorithm": "dynamic",
            "mu": mu,
            "c": c,
            "epsilon": epsilon,
            "beta": beta,
            "t": t,
            "p": p,
            "greedy_r": r,
            "alg1_value": s,
            "branch": branch,
            "matching_substitute": "uniform-edge-sample+greedy-rebuild",
        },
    )

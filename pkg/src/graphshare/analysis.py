"""Exhaustive oracles at desk scale: secret-space census, the labeled
connected-graph recurrence, chromatic number, and an exact secrecy audit of
the sharing schemes over small spaces.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Sequence

from .codec import gamma
from .graph import ColoredGraph, Graph, Predicate, evaluate_predicate, triangle_size
from .schemes import KghParams, ScriptedSource, ShamirParams, kgh_split, shamir_split

MAX_CENSUS_VERTICES = 6
MAX_CHROMATIC_VERTICES = 10
MAX_AUDIT_STATES = 10**7


@dataclass(frozen=True)
class CensusResult:
    n: int
    predicate: Predicate
    total: int
    valid: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.valid, self.total)

    @property
    def rejection_rate(self) -> Fraction:
        """Chance a uniformly random point of the space fails the restriction."""
        return 1 - self.fraction


def all_graphs(n: int):
    for bits in product((0, 1), repeat=triangle_size(n)):
        yield Graph(n, bits)


def census(n: int, predicate: Predicate) -> CensusResult:
    if not 1 <= n <= MAX_CENSUS_VERTICES:
        raise ValueError(f"census is exhaustive only for 1 <= n <= {MAX_CENSUS_VERTICES}, got {n}")
    valid = sum(evaluate_predicate(predicate, ColoredGraph.uncolored(g)) for g in all_graphs(n))
    return CensusResult(n, predicate, gamma(n), valid)


def restricted_space(n: int, predicate: Predicate) -> list[tuple[int, ...]]:
    """Edge-bit tuples of every n-vertex graph satisfying ``predicate``."""
    return [g.bits for g in all_graphs(n) if evaluate_predicate(predicate, ColoredGraph.uncolored(g))]


@lru_cache(maxsize=None)
def connected_count_recurrence(n: int) -> int:
    """Labeled connected graphs on n vertices.

    Every graph splits into the component containing vertex 1 (size j) and an
    arbitrary graph on the remaining n - j vertices.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return 1
    disconnected = sum(
        connected_count_recurrence(j) * comb(n - 1, j - 1) * 2 ** triangle_size(n - j)
        for j in range(1, n)
    )
    return 2 ** triangle_size(n) - disconnected


def find_coloring(g: Graph, k: int) -> tuple[int, ...] | None:
    """A proper k-coloring by backtracking, or None if there is none."""
    adj = g.adjacency()
    colors = [-1] * g.n

    def place(v: int) -> bool:
        if v == g.n:
            return True
        used = {colors[w] for w in adj[v] if w < v}
        # fixing the first new color only removes label permutations
        limit = min(k, max(colors[:v], default=-1) + 2)
        for c in range(limit):
            if c not in used:
                colors[v] = c
                if place(v + 1):
                    return True
        colors[v] = -1
        return False

    return tuple(colors) if place(0) else None


def chromatic_number(g: Graph) -> int:
    if g.n > MAX_CHROMATIC_VERTICES:
        raise ValueError(f"exhaustive chromatic number limited to n <= {MAX_CHROMATIC_VERTICES}")
    for k in range(1, g.n + 1):
        if find_coloring(g, k) is not None:
            return k
    return g.n


@dataclass(frozen=True)
class SubsetAudit:
    participants: tuple[int, ...]
    views: int
    max_distance: Fraction
    min_support: int
    max_posterior: Fraction


@dataclass(frozen=True)
class AuditReport:
    scheme: str
    secret_space: int
    digit_space: int
    dealer_choices: int
    subsets: tuple[SubsetAudit, ...]

    @property
    def perfect(self) -> bool:
        """Every unauthorized view leaves the prior over secrets unchanged."""
        return all(s.max_distance == 0 for s in self.subsets)

    @property
    def reduced_entropy(self) -> bool:
        """The admissible secrets are a strict subset of the digit space."""
        return self.secret_space < self.digit_space

    @property
    def max_posterior(self) -> Fraction:
        return max((s.max_posterior for s in self.subsets), default=Fraction(1, self.secret_space))


def secrecy_audit(params: ShamirParams | KghParams, secrets: Sequence | None = None) -> AuditReport:
    """Enumerate every secret and every dealer choice, and report the exact
    posterior over secrets seen by each unauthorized set of participants.

    Shamir secrets are single field elements; KGH secrets are digit tuples.
    ``secrets`` defaults to the whole space; the prior is uniform over it.
    """
    if isinstance(params, ShamirParams):
        scheme = "shamir"
        digit_space = params.prime
        secrets = list(range(params.prime)) if secrets is None else list(secrets)
        draws = [range(params.prime)] * (params.t - 1)
        unauthorized = params.t - 1

        def deal(secret, choice):
            return shamir_split([secret], params, ScriptedSource(choice))
    else:
        scheme = "kgh"
        digit_space = 1
        for r in params.radices:
            digit_space *= r
        secrets = list(product(*(range(r) for r in params.radices))) if secrets is None else [
            tuple(s) for s in secrets
        ]
        draws = [range(r) for r in params.radices] * (params.n_participants - 1)
        unauthorized = params.n_participants - 1

        def deal(secret, choice):
            return kgh_split(secret, params, ScriptedSource(choice))

    choices = 1
    for d in draws:
        choices *= len(d)
    if len(secrets) * choices > MAX_AUDIT_STATES:
        raise ValueError(f"audit needs {len(secrets) * choices} states, limit {MAX_AUDIT_STATES}")

    subsets = [
        c
        for size in range(1, unauthorized + 1)
        for c in combinations(range(1, params.n_participants + 1), size)
    ]
    # counts[subset][view][secret]
    counts: dict = {s: defaultdict(lambda: defaultdict(int)) for s in subsets}
    for sid, secret in enumerate(secrets):
        for choice in product(*draws):
            shares = deal(secret, choice)
            for subset in subsets:
                view = tuple(shares[i - 1].payload for i in subset)
                counts[subset][view][sid] += 1

    prior = Fraction(1, len(secrets))
    results = []
    for subset in subsets:
        max_dist = Fraction(0)
        min_support = len(secrets)
        max_post = Fraction(0)
        for view, per_secret in counts[subset].items():
            total = sum(per_secret.values())
            post = {sid: Fraction(c, total) for sid, c in per_secret.items()}
            dist = sum((abs(post.get(sid, 0) - prior) for sid in range(len(secrets))), Fraction(0)) / 2
            max_dist = max(max_dist, dist)
            min_support = min(min_support, len(post))
            max_post = max(max_post, max(post.values()))
        results.append(SubsetAudit(subset, len(counts[subset]), max_dist, min_support, max_post))
    return AuditReport(scheme, len(secrets), digit_space, choices, tuple(results))

"""Genus of a presentation, minimised over shuffles and over rotation systems.

Three numbers are computed for a fixed ordered presentation:

* ``t_genus``: genus of the canonical surface;
* shuffle-minimal genus: the same discs and ribbons, with the slots of each
  generator reordered simultaneously on both of its discs;
* link genus: the minimum genus of the underlying multigraph over all rotation
  systems (independent cyclic orders at every disc).

Each shuffle-induced rotation system is a rotation system of the link graph, so
``link <= shuffle-min <= canonical`` always holds. Searches are exact when the
search space fits in the budget and fall back to seeded simulated annealing
otherwise; every result carries an ``exact`` flag.
"""
from __future__ import annotations

import itertools
import math
import random
import time
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

from .presentation import (
    AddGeneratorWithDefinition, AddRedundantRelator, ConjugateRelator, CyclicPermuteRelator,
    InvertRelator, MultiplyRelators, Presentation, PresentationError, RemoveDefinedGenerator,
    RemoveRedundantRelator, ReorderRelators, Word, apply_tietze, fresh_name, occurrence_stats,
)
from .ribbon import (
    DEFAULT_CONVENTION, LinkGraph, RibbonGraph, Shuffle, Slot, build_canonical_surface,
    disc_components, disc_index, link_graph, surface_summary,
)


class HierarchyViolation(RuntimeError):
    """link <= shuffle-min <= canonical failed; indicates a bug, never expected."""


class BoundPreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 200_000
    seed: int = 0
    time_limit: float | None = None  # seconds; hitting it makes results machine-dependent
    exhaustive: bool = False  # ignore max_nodes and enumerate everything


class _Clock:
    def __init__(self, budget: SearchBudget):
        self.deadline = None if budget.time_limit is None else time.monotonic() + budget.time_limit
        self.expired = False

    def check(self) -> bool:
        if self.deadline is not None and time.monotonic() > self.deadline:
            self.expired = True
        return self.expired


# ---------------------------------------------------------------------------
# integer dart tables

class _DartTable:
    """Darts are ribbon ends; ``alpha`` swaps the two ends of a ribbon."""

    def __init__(self, rg: RibbonGraph):
        slots = sorted(s for rb in rg.ribbons for s in (rb.start, rb.end))
        self.slots: list[Slot] = slots
        self.index = {s: t for t, s in enumerate(slots)}
        self.alpha = [0] * len(slots)
        for rb in rg.ribbons:
            a, b = self.index[rb.start], self.index[rb.end]
            self.alpha[a] = b
            self.alpha[b] = a
        self.degrees = rg.degrees
        self.num_discs = rg.num_discs
        self.bare_discs = 2 * sum(1 for d in rg.degrees if d == 0)
        comp = disc_components(rg.num_discs, [(disc_index(*rb.start[:2]), disc_index(*rb.end[:2])) for rb in rg.ribbons])
        self.components = len(set(comp))
        self.num_ribbons = len(rg.ribbons)

    def dart(self, g: int, s: int, p: int) -> int:
        return self.index[(g, s, p)]

    def genus(self, faces: int) -> int:
        chi = self.num_discs - self.num_ribbons + faces + self.bare_discs
        return self.components - chi // 2


def count_cycles(alpha: Sequence[int], succ: Sequence[int]) -> int:
    """Number of cycles of ``succ o alpha``."""
    n = len(alpha)
    seen = bytearray(n)
    faces = 0
    for x in range(n):
        if seen[x]:
            continue
        faces += 1
        while not seen[x]:
            seen[x] = 1
            x = succ[alpha[x]]
    return faces


def _set_cycle(succ: list[int], cyc: Sequence[int]) -> None:
    m = len(cyc)
    for t in range(m):
        succ[cyc[t]] = cyc[(t + 1) % m]


# ---------------------------------------------------------------------------
# canonical genus

def presentation_genus(p: Presentation, convention: str = DEFAULT_CONVENTION) -> int:
    return surface_summary(build_canonical_surface(p, convention)).genus


# ---------------------------------------------------------------------------
# shuffles

class ShuffleResult(NamedTuple):
    genus: int
    shuffle: Shuffle
    exact: bool
    evaluated: int


class _ShuffleSpace:
    """Genus as a function of one slot order per generator."""

    def __init__(self, p: Presentation, convention: str):
        self.rg = build_canonical_surface(p, convention)
        self.table = _DartTable(self.rg)
        self.convention = convention
        self.degrees = self.rg.degrees
        self.succ = list(range(len(self.table.alpha)))

    def set_order(self, g: int, order: Sequence[int]) -> None:
        t = self.table
        _set_cycle(self.succ, [t.dart(g, 1, q) for q in order])
        minus = order[::-1] if self.convention == "B" else order
        _set_cycle(self.succ, [t.dart(g, -1, q) for q in minus])

    def genus(self) -> int:
        return self.table.genus(count_cycles(self.table.alpha, self.succ))

    def evaluate(self, orders: Sequence[Sequence[int]]) -> int:
        for g, order in enumerate(orders):
            if order:
                self.set_order(g, order)
        return self.genus()


def _pinned_orders(d: int) -> list[tuple[int, ...]]:
    if d == 0:
        return [()]
    return [(1,) + rest for rest in itertools.permutations(range(2, d + 1))]


def shuffle_space_size(degrees: Sequence[int]) -> int:
    return math.prod(math.factorial(max(d - 1, 0)) for d in degrees)


def _exhaustive_orders(degrees: Sequence[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    return itertools.product(*(_pinned_orders(d) for d in degrees))


def min_genus_over_shuffles(
    p: Presentation, budget: SearchBudget = SearchBudget(), convention: str = DEFAULT_CONVENTION
) -> ShuffleResult:
    """Minimum genus over all shuffles of ``p``.

    Rotating a generator's slot order cyclically does not change either disc's
    cyclic order, so slot 1 is pinned first and ``prod (d_i - 1)!`` orders cover
    every surface.
    """
    space = _ShuffleSpace(p, convention)
    degrees = space.degrees
    if budget.exhaustive or shuffle_space_size(degrees) <= budget.max_nodes:
        clock = _Clock(budget)
        best, best_orders, evaluated = None, None, 0
        for orders in _exhaustive_orders(degrees):
            g = space.evaluate(orders)
            evaluated += 1
            if best is None or g < best:
                best, best_orders = g, orders
                if g == 0:
                    break
            if evaluated % 1024 == 0 and clock.check():
                return ShuffleResult(best, Shuffle.from_orders(best_orders), False, evaluated)
        return ShuffleResult(best, Shuffle.from_orders(best_orders), True, evaluated)
    return _anneal_shuffles(space, budget)


def _anneal_shuffles(space: _ShuffleSpace, budget: SearchBudget) -> ShuffleResult:
    rng = random.Random(budget.seed)
    clock = _Clock(budget)
    degrees = space.degrees
    orders = [list(range(1, d + 1)) for d in degrees]
    movable = [g for g, d in enumerate(degrees) if d >= 3]
    cur = space.evaluate(orders)
    best, best_orders = cur, [tuple(o) for o in orders]
    n = max(budget.max_nodes, 1)
    t_hi, t_lo = 2.0, 0.05
    for step in range(1, n):
        if best == 0 or (step % 1024 == 0 and clock.check()):
            break
        temp = t_hi * (t_lo / t_hi) ** (step / n)
        g = movable[rng.randrange(len(movable))]
        old = orders[g][:]
        if rng.random() < 0.05:
            rng.shuffle(orders[g])
        else:
            t = rng.randrange(degrees[g] - 1)
            orders[g][t], orders[g][t + 1] = orders[g][t + 1], orders[g][t]
        space.set_order(g, orders[g])
        new = space.genus()
        if new <= cur or rng.random() < math.exp((cur - new) / temp):
            cur = new
            if new < best:
                best, best_orders = new, [tuple(o) for o in orders]
        else:
            orders[g] = old
            space.set_order(g, old)
    return ShuffleResult(best, Shuffle.from_orders(best_orders), best == 0, n)


def genus_spectrum(p: Presentation, convention: str = DEFAULT_CONVENTION) -> Counter:
    """Genus of every surface reachable by shuffles (one per pinned order class)."""
    space = _ShuffleSpace(p, convention)
    return Counter(space.evaluate(orders) for orders in _exhaustive_orders(space.degrees))


# ---------------------------------------------------------------------------
# link genus

@dataclass(frozen=True)
class LinkGenusResult:
    lower: int
    upper: int
    exact: bool
    rotation: tuple[tuple[Slot, ...], ...] | None = None  # per disc, darts in cyclic order

    @property
    def genus(self) -> int:
        if not self.exact:
            raise ValueError(f"link genus only bracketed: [{self.lower}, {self.upper}]")
        return self.upper


def _girth(vertices: list[int], edges: list[tuple[int, int]]) -> float:
    import networkx as nx

    if any(a == b for a, b in edges):
        return 1
    if len({tuple(sorted(e)) for e in edges}) < len(edges):
        return 2
    g = nx.Graph()
    g.add_nodes_from(vertices)
    g.add_edges_from(edges)
    return nx.girth(g)


def _planar_rotation(vertices, darts_at, dart_edge, edge_ends):
    """Planar rotation system for a multigraph with loops, or None if non-planar."""
    import networkx as nx

    simple = nx.Graph()
    simple.add_nodes_from(vertices)
    simple.add_edges_from((a, b) for a, b in edge_ends if a != b)
    planar, emb = nx.check_planarity(simple)
    if not planar:
        return None
    rot = {}
    for v in vertices:
        by_nbr: dict[int, list[int]] = {}
        loops = []
        for d in darts_at[v]:
            a, b = edge_ends[dart_edge[d]]
            if a == b:
                loops.append(d)
            else:
                by_nbr.setdefault(b if a == v else a, []).append(d)
        order = []
        nbrs = list(emb.neighbors_cw_order(v)) if v in emb and emb[v] else []
        for w in nbrs:
            ds = sorted(by_nbr[w], key=lambda d: dart_edge[d])
            order.extend(ds if v < w else ds[::-1])
        order.extend(sorted(loops))  # both ends of a loop adjacent
        rot[v] = order
    return rot


def link_genus(graph: LinkGraph, budget: SearchBudget = SearchBudget()) -> LinkGenusResult:
    """Minimum embedding genus of ``graph`` (sum over connected components).

    Planar components are settled by a planarity test. Otherwise the search is
    exhaustive when ``prod (deg - 1)!`` fits the budget, and stops early once a
    rotation system attains the lower bound; beyond the budget it anneals and
    returns a bracket.
    """
    slots = sorted(s for e in graph.edges for s in e)
    index = {s: t for t, s in enumerate(slots)}
    alpha = [0] * len(slots)
    dart_edge = [0] * len(slots)
    edge_ends = []
    for k, (a, b) in enumerate(graph.edges):
        x, y = index[a], index[b]
        alpha[x], alpha[y] = y, x
        dart_edge[x] = dart_edge[y] = k
        edge_ends.append((disc_index(*a[:2]), disc_index(*b[:2])))
    darts_at: dict[int, list[int]] = {v: [] for v in range(graph.num_vertices)}
    for t, s in enumerate(slots):
        darts_at[disc_index(*s[:2])].append(t)
    comp = disc_components(graph.num_vertices, edge_ends)
    groups: dict[int, list[int]] = {}
    for v in range(graph.num_vertices):
        groups.setdefault(comp[v], []).append(v)

    succ = list(range(len(slots)))
    lower_total = upper_total = 0
    exact = True
    clock = _Clock(budget)
    remaining = budget.max_nodes
    for root in sorted(groups):
        vs = groups[root]
        c_edges = [edge_ends[k] for k in range(len(edge_ends)) if comp[edge_ends[k][0]] == root]
        if not c_edges:
            continue
        c_darts = [d for v in vs for d in darts_at[v]]
        V, E = len(vs), len(c_edges)

        def comp_genus() -> int:
            seen = set()
            faces = 0
            for x in c_darts:
                if x in seen:
                    continue
                faces += 1
                while x not in seen:
                    seen.add(x)
                    x = succ[alpha[x]]
            return (2 - V + E - faces) // 2

        planar = _planar_rotation(vs, darts_at, dart_edge, edge_ends)
        if planar is not None:
            for v in vs:
                _set_cycle(succ, planar[v])
            if comp_genus() != 0:
                for v in vs:  # opposite handedness of the parallel-edge nesting
                    _set_cycle(succ, _reorient_parallel(planar[v], dart_edge, edge_ends, v))
            if comp_genus() != 0:
                raise HierarchyViolation("planar witness failed verification")
            continue
        girth = _girth(vs, c_edges)
        fmax = (2 * E) // girth
        lower = max(1, -((-(2 - V + E - fmax)) // 2))
        for v in vs:
            _set_cycle(succ, darts_at[v])
        best = comp_genus()
        best_rot = {v: list(darts_at[v]) for v in vs}
        size = math.prod(math.factorial(max(len(darts_at[v]) - 1, 0)) for v in vs)
        if best > lower and (budget.exhaustive or size <= remaining):
            remaining -= size
            choices = [[(darts_at[v][0],) + r for r in itertools.permutations(darts_at[v][1:])] for v in vs]
            count = 0
            for combo in itertools.product(*choices):
                for cyc in combo:
                    _set_cycle(succ, cyc)
                g = comp_genus()
                count += 1
                if g < best:
                    best, best_rot = g, {v: list(c) for v, c in zip(vs, combo)}
                    if best == lower:
                        break
                if count % 1024 == 0 and clock.check():
                    exact = False
                    break
            else:
                lower = best  # exhausted the space
        elif best > lower:
            best, best_rot = _anneal_rotations(vs, darts_at, succ, comp_genus, budget, best, best_rot, lower)
        if best > lower:
            exact = False
        lower_total += lower
        upper_total += best
        for v in vs:
            _set_cycle(succ, best_rot[v])
    rotation = []
    for v in range(graph.num_vertices):
        if not darts_at[v]:
            rotation.append(())
            continue
        cyc, x = [], darts_at[v][0]
        while True:
            cyc.append(slots[x])
            x = succ[x]
            if x == darts_at[v][0]:
                break
        rotation.append(tuple(cyc))
    return LinkGenusResult(lower_total, upper_total, exact, tuple(rotation))


def _reorient_parallel(order, dart_edge, edge_ends, v):
    """Reverse every block of consecutive parallel darts in ``order``."""
    out, t = [], 0
    while t < len(order):
        a, b = edge_ends[dart_edge[order[t]]]
        key = frozenset((a, b))
        u = t
        while u < len(order) and frozenset(edge_ends[dart_edge[order[u]]]) == key and a != b:
            u += 1
        if u == t:
            out.append(order[t])
            t += 1
        else:
            out.extend(order[t:u][::-1])
            t = u
    return out


def _anneal_rotations(vs, darts_at, succ, comp_genus, budget, best, best_rot, lower):
    rng = random.Random(budget.seed)
    clock = _Clock(budget)
    movable = [v for v in vs if len(darts_at[v]) >= 3]
    cur_rot = {v: list(best_rot[v]) for v in vs}
    for v in vs:
        _set_cycle(succ, cur_rot[v])
    cur = best
    n = max(budget.max_nodes, 1)
    t_hi, t_lo = 2.0, 0.05
    for step in range(1, n):
        if best <= lower or (step % 1024 == 0 and clock.check()):
            break
        temp = t_hi * (t_lo / t_hi) ** (step / n)
        v = movable[rng.randrange(len(movable))]
        old = cur_rot[v][:]
        t = rng.randrange(len(old) - 1)
        cur_rot[v][t], cur_rot[v][t + 1] = cur_rot[v][t + 1], cur_rot[v][t]
        _set_cycle(succ, cur_rot[v])
        new = comp_genus()
        if new <= cur or rng.random() < math.exp((cur - new) / temp):
            cur = new
            if new < best:
                best, best_rot = new, {u: list(c) for u, c in cur_rot.items()}
        else:
            cur_rot[v] = old
            _set_cycle(succ, old)
    return best, best_rot


# ---------------------------------------------------------------------------
# bounds and group-level search

def genus_upper_bound(p: Presentation) -> Fraction:
    """``(l + 1)/2 - n``; only claimed when every generator occurs in some relator."""
    stats = occurrence_stats(p)
    missing = [p.generators[i] for i, d in enumerate(stats.generator_degrees) if d == 0]
    if missing:
        raise BoundPreconditionError(f"generators {missing} occur in no relator; bound withheld")
    return Fraction(stats.total_length + 1, 2) - p.n


def _short_words(n: int, max_len: int = 2) -> list[Word]:
    letters = [(g, s) for g in range(n) for s in (1, -1)]
    words: list[Word] = []
    for length in range(1, max_len + 1):
        for w in itertools.product(letters, repeat=length):
            if all(w[t] != (w[t + 1][0], -w[t + 1][1]) for t in range(length - 1)):
                words.append(tuple(w))
    return words


def tietze_neighbors(p: Presentation, max_word: int = 2) -> Iterator[tuple[object, Presentation]]:
    """One-move neighbours in a fixed order (generator reordering is skipped: it never changes genus)."""
    moves: list = []
    for i in range(p.k - 1):
        order = list(range(p.k))
        order[i], order[i + 1] = order[i + 1], order[i]
        moves.append(ReorderRelators(tuple(order)))
    for i in range(p.k):
        moves.append(InvertRelator(i))
        if len(p.relators[i]) > 1:
            moves.append(CyclicPermuteRelator(i, 1))
        for j in range(p.k):
            if i != j:
                moves.append(MultiplyRelators(i, j))
                moves.append(MultiplyRelators(i, j, inverse=True))
        moves.append(AddRedundantRelator(i))
        moves.append(RemoveRedundantRelator(i))
    words = _short_words(p.n, max_word)
    for i in range(p.k):
        moves.extend(ConjugateRelator(i, w) for w in words)
    name = fresh_name(p.generators, "t")
    moves.extend(AddGeneratorWithDefinition(name, w) for w in words)
    for i, r in enumerate(p.relators):
        counts = Counter(g for g, _ in r)
        moves.extend(RemoveDefinedGenerator(i, g) for g in sorted(counts) if counts[g] == 1)
    for m in moves:
        try:
            yield m, apply_tietze(p, m)
        except PresentationError:
            continue


class GroupSearchResult(NamedTuple):
    genus: int
    presentation: Presentation
    shuffle: Shuffle
    visited: int


def group_genus_upper(
    p: Presentation,
    depth: int = 1,
    budget: SearchBudget = SearchBudget(),
    convention: str = DEFAULT_CONVENTION,
    max_presentations: int = 200,
    per_presentation_nodes: int = 5_000,
) -> GroupSearchResult:
    """Best shuffle-minimal genus over the Tietze ball of radius ``depth`` around ``p``.

    Presentations are visited breadth first in a fixed order, so the result is
    deterministic and never increases with ``depth``. Every value is an upper
    bound for the genus of the group.
    """
    sub = SearchBudget(max_nodes=min(per_presentation_nodes, budget.max_nodes), seed=budget.seed,
                       time_limit=budget.time_limit)
    seen = {p}
    queue = deque([(p, 0)])
    best = None
    visited = 0
    while queue and visited < max_presentations:
        q, dist = queue.popleft()
        res = min_genus_over_shuffles(q, sub, convention)
        visited += 1
        if best is None or res.genus < best.genus:
            best = GroupSearchResult(res.genus, q, res.shuffle, visited)
            if res.genus == 0:
                break
        if dist < depth:
            for _, nxt in tietze_neighbors(q):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append((nxt, dist + 1))
    return best._replace(visited=visited)


# ---------------------------------------------------------------------------
# the hierarchy

@dataclass(frozen=True)
class GenusReport:
    presentation: str
    convention: str
    t_genus: int
    shuffle_min_genus: int
    shuffle_exact: bool
    shuffle_witness: Shuffle
    link_genus_lower: int
    link_genus_upper: int
    link_exact: bool
    upper_bound: Fraction | None
    link_witness: tuple = field(default=(), repr=False)

    @property
    def link_genus(self) -> int | None:
        return self.link_genus_upper if self.link_exact else None

    @property
    def chain(self) -> tuple[int | None, int | None, int]:
        return (self.link_genus, self.shuffle_min_genus if self.shuffle_exact else None, self.t_genus)

    def to_dict(self) -> dict:
        return {
            "presentation": self.presentation,
            "convention": self.convention,
            "t_genus": self.t_genus,
            "shuffle_min_genus": self.shuffle_min_genus,
            "shuffle_exact": self.shuffle_exact,
            "shuffle_witness": self.shuffle_witness.to_list(),
            "link_genus": self.link_genus,
            "link_genus_lower": self.link_genus_lower,
            "link_genus_upper": self.link_genus_upper,
            "link_exact": self.link_exact,
            "upper_bound": None if self.upper_bound is None else str(self.upper_bound),
        }


def hierarchy_check(
    p: Presentation, budget: SearchBudget = SearchBudget(), convention: str = DEFAULT_CONVENTION
) -> GenusReport:
    from .presentation import render_presentation

    t = presentation_genus(p, convention)
    sh = min_genus_over_shuffles(p, budget, convention)
    lk = link_genus(link_graph(p), budget)
    lower, upper, exact = lk.lower, lk.upper, lk.exact
    if sh.genus < upper:  # a shuffle is itself a rotation system
        upper = sh.genus
        exact = upper == lower
    if sh.genus > t:
        raise HierarchyViolation(f"shuffle minimum {sh.genus} exceeds canonical genus {t}")
    if lower > sh.genus:
        raise HierarchyViolation(f"link genus lower bound {lower} exceeds shuffle minimum {sh.genus}")
    if exact and sh.exact and not upper <= sh.genus <= t:
        raise HierarchyViolation(f"chain {upper} <= {sh.genus} <= {t} fails")
    try:
        bound = genus_upper_bound(p)
    except BoundPreconditionError:
        bound = None
    return GenusReport(render_presentation(p), convention, t, sh.genus, sh.exact, sh.shuffle,
                       lower, upper, exact, bound, lk.rotation or ())

"""Oriented ribbon graphs built from presentations.

Each generator ``x_i`` contributes two discs ``(i, +1)`` and ``(i, -1)``, each
with ``d_i`` leg slots numbered ``1..d_i`` by the left-to-right order of the
occurrences of ``x_i`` in ``r_1 r_2 ... r_k``. A slot is ``(gen, side, pos)``.
Ribbons are untwisted, so every surface produced here is orientable.

For consecutive letters ``x_{i,p}^e`` then ``x_{j,q}^f`` (cyclically, within a
relator) one ribbon joins slot ``(i, e, p)`` to slot ``(j, -f, q)``.

The cyclic order on disc ``(i, +1)`` is by increasing position. On ``(i, -1)``
it is increasing under convention ``"A"`` and decreasing (mirrored) under
convention ``"B"``. Convention B reproduces every genus value quoted for the
worked examples, so it is the default.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, asdict
from typing import NamedTuple, Sequence

from .presentation import Presentation, occurrence_stats

Slot = tuple[int, int, int]
Disc = tuple[int, int]

CONVENTIONS = ("A", "B")
DEFAULT_CONVENTION = "B"


class RibbonError(ValueError):
    pass


class Ribbon(NamedTuple):
    start: Slot
    end: Slot
    relator: int
    position: int  # index within the relator of the letter the ribbon leaves from


def disc_index(gen: int, side: int) -> int:
    return 2 * gen + (0 if side == 1 else 1)


def canonical_rotation(degrees: Sequence[int], convention: str = DEFAULT_CONVENTION) -> tuple[tuple[int, ...], ...]:
    if convention not in CONVENTIONS:
        raise RibbonError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")
    rot = []
    for d in degrees:
        up = tuple(range(1, d + 1))
        rot.append(up)
        rot.append(up[::-1] if convention == "B" else up)
    return tuple(rot)


@dataclass(frozen=True)
class RibbonGraph:
    """Discs with cyclically ordered leg slots joined by untwisted ribbons.

    ``rotation[disc_index(i, s)]`` lists the slot positions of disc ``(i, s)``
    in cyclic order.
    """
    generators: tuple[str, ...]
    degrees: tuple[int, ...]
    ribbons: tuple[Ribbon, ...]
    rotation: tuple[tuple[int, ...], ...]
    convention: str = DEFAULT_CONVENTION

    def __post_init__(self):
        if len(self.degrees) != len(self.generators) or len(self.rotation) != 2 * len(self.degrees):
            raise RibbonError("disc data does not match the generator count")
        for i, d in enumerate(self.degrees):
            for s in (1, -1):
                if sorted(self.rotation[disc_index(i, s)]) != list(range(1, d + 1)):
                    raise RibbonError(f"rotation at disc {(i, s)} is not a cyclic order of 1..{d}")
        used: set[Slot] = set()
        for rb in self.ribbons:
            for g, s, p in (rb.start, rb.end):
                if not (0 <= g < len(self.degrees) and s in (1, -1) and 1 <= p <= self.degrees[g]):
                    raise RibbonError(f"ribbon end {(g, s, p)} is not a slot")
                if (g, s, p) in used:
                    raise RibbonError(f"slot {(g, s, p)} hosts two ribbon ends")
                used.add((g, s, p))
        if len(used) != 2 * sum(self.degrees):
            raise RibbonError("some leg slots carry no ribbon")

    @property
    def num_discs(self) -> int:
        return 2 * len(self.degrees)

    @property
    def num_ribbons(self) -> int:
        return len(self.ribbons)

    def discs(self) -> list[Disc]:
        return [(i, s) for i in range(len(self.degrees)) for s in (1, -1)]

    def partner(self) -> dict[Slot, Slot]:
        out = {}
        for rb in self.ribbons:
            out[rb.start] = rb.end
            out[rb.end] = rb.start
        return out

    def successor(self) -> dict[Slot, Slot]:
        """Next slot in the cyclic order around its disc."""
        out = {}
        for (i, s) in self.discs():
            cyc = self.rotation[disc_index(i, s)]
            for t, p in enumerate(cyc):
                out[(i, s, p)] = (i, s, cyc[(t + 1) % len(cyc)])
        return out

    def with_rotation(self, rotation) -> "RibbonGraph":
        return RibbonGraph(self.generators, self.degrees, self.ribbons, tuple(map(tuple, rotation)), self.convention)


def build_canonical_surface(p: Presentation, convention: str = DEFAULT_CONVENTION) -> RibbonGraph:
    degrees = occurrence_stats(p).generator_degrees
    seen = [0] * p.n
    ribbons = []
    for j, r in enumerate(p.relators):
        labelled = []
        for g, s in r:
            seen[g] += 1
            labelled.append((g, s, seen[g]))
        m = len(labelled)
        for t in range(m):
            g, e, pos = labelled[t]
            h, f, q = labelled[(t + 1) % m]
            ribbons.append(Ribbon((g, e, pos), (h, -f, q), j, t))
    return RibbonGraph(p.generators, degrees, tuple(ribbons), canonical_rotation(degrees, convention), convention)


def trace_faces(rg: RibbonGraph) -> list[tuple[Slot, ...]]:
    """Boundary circuits of the ribbon surface.

    From a slot, cross its ribbon, then step to the next slot around the disc
    reached. A disc without legs has its whole boundary as a single face,
    returned as the one-element circuit ``((i, s, 0),)``.
    """
    alpha = rg.partner()
    succ = rg.successor()
    faces = []
    seen: set[Slot] = set()
    for start in sorted(alpha):
        if start in seen:
            continue
        circuit = []
        x = start
        while x not in seen:
            seen.add(x)
            circuit.append(x)
            x = succ[alpha[x]]
        faces.append(tuple(circuit))
    for i, d in enumerate(rg.degrees):
        if d == 0:
            faces.extend([((i, 1, 0),), ((i, -1, 0),)])
    return faces


def disc_components(num_discs: int, edges) -> list[int]:
    """Component label per disc index, given disc-index pairs."""
    parent = list(range(num_discs))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return [find(x) for x in range(num_discs)]


@dataclass(frozen=True)
class SurfaceSummary:
    discs: int
    ribbons: int
    faces: int
    components: int
    euler: int
    genus: int
    component_genera: tuple[int, ...]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["component_genera"] = list(self.component_genera)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def surface_summary(rg: RibbonGraph, faces: list[tuple[Slot, ...]] | None = None) -> SurfaceSummary:
    if faces is None:
        faces = trace_faces(rg)
    comp = disc_components(
        rg.num_discs, [(disc_index(*rb.start[:2]), disc_index(*rb.end[:2])) for rb in rg.ribbons]
    )
    roots = sorted(set(comp))
    v = {r: 0 for r in roots}
    e = {r: 0 for r in roots}
    f = {r: 0 for r in roots}
    for x in range(rg.num_discs):
        v[comp[x]] += 1
    for rb in rg.ribbons:
        e[comp[disc_index(*rb.start[:2])]] += 1
    for face in faces:
        f[comp[disc_index(*face[0][:2])]] += 1
    genera = []
    for r in roots:
        chi = v[r] - e[r] + f[r]
        if chi % 2 or chi > 2:
            raise RibbonError(f"component Euler characteristic {chi} is impossible for a closed orientable surface")
        genera.append(1 - chi // 2)
    V, E, F = rg.num_discs, rg.num_ribbons, len(faces)
    chi = V - E + F
    genus = len(roots) - chi // 2
    assert genus == sum(genera)
    return SurfaceSummary(V, E, F, len(roots), chi, genus, tuple(genera))


# ---------------------------------------------------------------------------
# shuffles

@dataclass(frozen=True)
class Shuffle:
    """One permutation per generator; ``perms[i][p - 1]`` is the new label of slot ``p``."""
    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "perms", tuple(tuple(s) for s in self.perms))
        for i, s in enumerate(self.perms):
            if sorted(s) != list(range(1, len(s) + 1)):
                raise RibbonError(f"shuffle component {i} is not a permutation: {s}")

    @classmethod
    def identity(cls, degrees: Sequence[int]) -> "Shuffle":
        return cls(tuple(tuple(range(1, d + 1)) for d in degrees))

    @classmethod
    def from_orders(cls, orders: Sequence[Sequence[int]]) -> "Shuffle":
        """The shuffle putting old slot ``orders[i][t]`` at new position ``t + 1``."""
        perms = []
        for order in orders:
            s = [0] * len(order)
            for t, old in enumerate(order):
                s[old - 1] = t + 1
            perms.append(tuple(s))
        return cls(tuple(perms))

    def to_list(self) -> list[list[int]]:
        return [list(s) for s in self.perms]


def apply_shuffle(rg: RibbonGraph, shuffle: Shuffle) -> RibbonGraph:
    if tuple(len(s) for s in shuffle.perms) != rg.degrees:
        raise RibbonError(f"shuffle sizes {[len(s) for s in shuffle.perms]} do not match degrees {list(rg.degrees)}")

    def move(slot: Slot) -> Slot:
        g, s, p = slot
        return (g, s, shuffle.perms[g][p - 1])

    ribbons = tuple(Ribbon(move(rb.start), move(rb.end), rb.relator, rb.position) for rb in rg.ribbons)
    return RibbonGraph(rg.generators, rg.degrees, ribbons, canonical_rotation(rg.degrees, rg.convention), rg.convention)


def degree3_shuffle(p: Presentation) -> Shuffle:
    """The shuffle that lays out ``degree3_normalize(p)`` like the original surface.

    New generator ``x^q`` occurs once in the original relators and once in each
    of its two chain relators ``S_q = x^q (x^{q-1})^-1`` and ``S_{q+1}``. Its
    slots are relabelled original, then ``S_{q+1}``, then ``S_q``; the canonical
    order of the normalized presentation cannot achieve this in general.
    """
    from .presentation import degree3_normalize

    degrees = occurrence_stats(p).generator_degrees
    q = degree3_normalize(p)
    label: dict[tuple[int, int, int], int] = {}
    seen = [0] * q.n
    for j, r in enumerate(q.relators):
        for g, s in r:
            seen[g] += 1
            label[(g, j, s)] = seen[g]
    perms = []
    g = 0
    for i, d in enumerate(degrees):
        base = p.k + g
        for t in range(d):
            s = [0, 0, 0]
            s[label[(g + t, base + t, 1)] - 1] = 3
            s[label[(g + t, base + (t + 1) % d, -1)] - 1] = 2
            s[s.index(0)] = 1
            perms.append(tuple(s))
        g += d
    return Shuffle(tuple(perms))


# ---------------------------------------------------------------------------
# link graph

@dataclass(frozen=True)
class LinkGraph:
    """The canonical ribbon graph with its rotations forgotten.

    Vertices are disc indices ``0..2n-1``. Each edge keeps its two end slots so
    that parallel edges and loops stay distinguishable.
    """
    num_vertices: int
    edges: tuple[tuple[Slot, Slot], ...]

    def vertex_pairs(self) -> list[tuple[int, int]]:
        return [(disc_index(*a[:2]), disc_index(*b[:2])) for a, b in self.edges]

    def degree(self) -> list[int]:
        deg = [0] * self.num_vertices
        for a, b in self.vertex_pairs():
            deg[a] += 1
            deg[b] += 1
        return deg

    def to_networkx(self):
        import networkx as nx

        g = nx.MultiGraph()
        g.add_nodes_from(range(self.num_vertices))
        g.add_edges_from(self.vertex_pairs())
        return g


def link_graph(p: Presentation) -> LinkGraph:
    rg = build_canonical_surface(p)
    return LinkGraph(rg.num_discs, tuple((rb.start, rb.end) for rb in rg.ribbons))


# ---------------------------------------------------------------------------
# plumbing

def plumb(rg1: RibbonGraph, rg2: RibbonGraph) -> RibbonGraph:
    """Join two one-relator surfaces on the same generators disc by disc.

    On each disc the slots of ``rg2`` are placed after those of ``rg1`` in the
    positive sense of the ``+`` disc (mirrored on the ``-`` disc under
    convention B). Equals the canonical surface of the two-relator presentation.
    """
    if rg1.generators != rg2.generators:
        raise RibbonError("plumbing needs surfaces over the same ordered generators")
    if rg1.convention != rg2.convention:
        raise RibbonError("plumbing needs surfaces built with the same convention")
    for rg in (rg1, rg2):
        if len({rb.relator for rb in rg.ribbons}) > 1:
            raise RibbonError("plumbing inputs must come from one-relator presentations")
    off = rg1.degrees

    def shift(slot: Slot) -> Slot:
        g, s, p = slot
        return (g, s, p + off[g])

    ribbons = rg1.ribbons + tuple(Ribbon(shift(rb.start), shift(rb.end), 1, rb.position) for rb in rg2.ribbons)
    rotation = []
    for i in range(len(off)):
        for s in (1, -1):
            a = rg1.rotation[disc_index(i, s)]
            b = tuple(p + off[i] for p in rg2.rotation[disc_index(i, s)])
            rotation.append(b + a if (s == -1 and rg1.convention == "B") else a + b)
    degrees = tuple(x + y for x, y in zip(rg1.degrees, rg2.degrees))
    return RibbonGraph(rg1.generators, degrees, ribbons, tuple(rotation), rg1.convention)


def normalized(rg: RibbonGraph) -> tuple:
    """Comparison key: ribbon set (ends unordered) plus rotations as cyclic sequences."""
    ribbons = sorted(tuple(sorted((rb.start, rb.end))) for rb in rg.ribbons)
    rots = []
    for cyc in rg.rotation:
        if cyc:
            t = cyc.index(min(cyc))
            cyc = cyc[t:] + cyc[:t]
        rots.append(tuple(cyc))
    return rg.generators, rg.degrees, tuple(ribbons), tuple(rots)


def structurally_equal(a: RibbonGraph, b: RibbonGraph) -> bool:
    return normalized(a) == normalized(b)


# ---------------------------------------------------------------------------
# export

def _disc_label(rg: RibbonGraph, g: int, s: int) -> str:
    return f"{rg.generators[g]}{'+' if s == 1 else '-'}"


def to_dot(rg: RibbonGraph) -> str:
    lines = ["graph ribbon {", "  node [shape=circle];"]
    for i, s in rg.discs():
        order = ",".join(map(str, rg.rotation[disc_index(i, s)]))
        lines.append(f'  "g{i}{"+" if s == 1 else "-"}" [label="{_disc_label(rg, i, s)}\\n({order})"];')
    for rb in rg.ribbons:
        a, b = rb.start, rb.end
        lines.append(
            f'  "g{a[0]}{"+" if a[1] == 1 else "-"}" -- "g{b[0]}{"+" if b[1] == 1 else "-"}" '
            f'[label="r{rb.relator + 1}.{rb.position + 1}", taillabel="{a[2]}", headlabel="{b[2]}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"

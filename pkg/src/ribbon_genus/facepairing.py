"""Quotients of a triangulated 3-ball by pairing its boundary triangles.

The ball is the cone from an apex over a triangulated 2-sphere, one tetrahedron
``(apex, a, b, c)`` per boundary triangle ``(a, b, c)``. Boundary triangles are
glued in pairs by orientation-reversing vertex bijections, three per pair, and
the resulting cell counts and vertex links are computed with union-find.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

APEX = "apex"


class FacePairingError(ValueError):
    pass


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        self.add(x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def classes(self) -> int:
        return len({self.find(x) for x in self.parent})


@dataclass(frozen=True)
class TriangulatedSphere:
    """Coherently oriented triangles: each directed edge occurs exactly once, its reverse once."""
    triangles: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        tris = tuple(tuple(t) for t in self.triangles)
        object.__setattr__(self, "triangles", tris)
        if not tris or len(tris) % 2:
            raise FacePairingError("a triangulated sphere has a positive even number of triangles")
        directed: set[tuple[int, int]] = set()
        for t in tris:
            if len(t) != 3 or len(set(t)) != 3:
                raise FacePairingError(f"triangle {t} needs three distinct vertices")
            for a, b in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
                if (a, b) in directed:
                    raise FacePairingError(f"directed edge {(a, b)} used twice; triangles are not coherently oriented")
                directed.add((a, b))
        for a, b in directed:
            if (b, a) not in directed:
                raise FacePairingError(f"edge {(a, b)} lies on only one triangle; surface not closed")
        uf = _UnionFind()
        for a, b, c in tris:
            uf.union(a, b)
            uf.union(b, c)
        if uf.classes() != 1:
            raise FacePairingError("triangulation is disconnected")
        if self.euler_characteristic != 2:
            raise FacePairingError(f"Euler characteristic {self.euler_characteristic} != 2; not a sphere")

    @property
    def vertices(self) -> list[int]:
        return sorted({v for t in self.triangles for v in t})

    @property
    def edges(self) -> list[frozenset]:
        return sorted({frozenset(e) for t in self.triangles for e in itertools.combinations(t, 2)}, key=sorted)

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.triangles)

    @classmethod
    def standard(cls, n: int) -> "TriangulatedSphere":
        """A sphere with ``2n`` triangles: two glued triangles, the tetrahedron, then bipyramids."""
        if n == 1:
            return cls(((0, 1, 2), (0, 2, 1)))
        if n == 2:
            return cls(((0, 2, 1), (0, 1, 3), (1, 2, 3), (0, 3, 2)))
        if n < 1:
            raise FacePairingError("n must be positive")
        top, bottom = n, n + 1
        tris = []
        for i in range(n):
            j = (i + 1) % n
            tris.append((i, j, top))
            tris.append((j, i, bottom))
        return cls(tuple(tris))

    @classmethod
    def from_text(cls, text: str) -> "TriangulatedSphere":
        """One triangle per line as three integer vertex labels; ``#`` starts a comment."""
        tris = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.replace(",", " ").split()
            if len(parts) != 3:
                raise FacePairingError(f"line {lineno}: expected three vertex labels, got {line!r}")
            try:
                tris.append(tuple(int(x) for x in parts))
            except ValueError:
                raise FacePairingError(f"line {lineno}: vertex labels must be integers") from None
        return cls(tuple(tris))

    def to_text(self) -> str:
        return "".join(f"{a} {b} {c}\n" for a, b, c in self.triangles)


def gluing_map(code: int) -> tuple[int, int, int]:
    """Corner ``i`` of the first triangle goes to corner ``(code - i) % 3`` of the second."""
    return tuple((code - i) % 3 for i in range(3))


def _is_odd(perm: Sequence[int]) -> bool:
    inversions = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
    return inversions % 2 == 1


@dataclass(frozen=True)
class FacePairing:
    """``pairs[r] = (t, u, perm)``: corner ``i`` of triangle ``t`` is glued to corner ``perm[i]`` of ``u``."""
    pairs: tuple[tuple[int, int, tuple[int, int, int]], ...]

    @classmethod
    def from_codes(cls, matching: Sequence[tuple[int, int]], codes: Sequence[int]) -> "FacePairing":
        return cls(tuple((t, u, gluing_map(c)) for (t, u), c in zip(matching, codes)))

    @property
    def codes(self) -> list[int]:
        return [perm[0] for _, _, perm in self.pairs]

    def validate(self, sphere: TriangulatedSphere) -> None:
        used = sorted(x for t, u, _ in self.pairs for x in (t, u))
        if used != list(range(len(sphere.triangles))):
            raise FacePairingError(f"pairing {self.pairs} is not a perfect matching of the triangles")
        for t, u, perm in self.pairs:
            if sorted(perm) != [0, 1, 2]:
                raise FacePairingError(f"gluing {perm} is not a bijection")
            if not _is_odd(perm):
                raise FacePairingError(f"gluing of triangles {t} and {u} preserves orientation; quotient would not be orientable")

    def label(self) -> str:
        return " ".join(f"{t}-{u}:{perm[0]}" for t, u, perm in self.pairs)


def pairing_count(n: int) -> int:
    """Number of (matching, gluing) choices on ``2n`` triangles: ``3^n (2n)! / (2^n n!)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return 3 ** n * math.factorial(2 * n) // (2 ** n * math.factorial(n))


def perfect_matchings(items: Sequence[int]) -> Iterator[list[tuple[int, int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for k, other in enumerate(rest):
        for m in perfect_matchings(rest[:k] + rest[k + 1:]):
            yield [(first, other)] + m


class PairingEnumeration:
    """Iterates every face pairing once, in a fixed order; ``truncated`` is set if ``limit`` cut it short."""

    def __init__(self, sphere: TriangulatedSphere, limit: int | None = None):
        self.sphere = sphere
        self.limit = limit
        self.truncated = False
        self.emitted = 0

    def __iter__(self) -> Iterator[FacePairing]:
        m = len(self.sphere.triangles) // 2
        for matching in perfect_matchings(list(range(2 * m))):
            for codes in itertools.product(range(3), repeat=m):
                if self.limit is not None and self.emitted >= self.limit:
                    self.truncated = True
                    return
                self.emitted += 1
                yield FacePairing.from_codes(matching, codes)


def enumerate_pairings(sphere: TriangulatedSphere, budget=None) -> PairingEnumeration:
    limit = None
    if budget is not None and not getattr(budget, "exhaustive", False):
        limit = budget.max_nodes
    return PairingEnumeration(sphere, limit)


# ---------------------------------------------------------------------------
# quotient

@dataclass(frozen=True)
class LinkSummary:
    vertex: object  # a representative sphere vertex, or APEX
    euler: int
    orientable: bool
    connected: bool
    components: int
    genus: int
    triangles: int

    @property
    def is_sphere(self) -> bool:
        return self.connected and self.orientable and self.euler == 2


@dataclass(frozen=True)
class QuotientComplex:
    sphere: TriangulatedSphere
    pairing: FacePairing
    v: int
    e: int
    f: int
    t: int
    vertex_classes: dict = field(repr=False, compare=False)  # sphere vertex -> class representative
    links: tuple[LinkSummary, ...] = field(repr=False, compare=False)

    @property
    def euler(self) -> int:
        return self.v - self.e + self.f - self.t


def _tetra_gluings(sphere: TriangulatedSphere, fp: FacePairing):
    """Face gluings of the cone tetrahedra as ``(tau, j, tau2, j2, phi)``.

    Tetrahedron ``tau`` has local vertices ``0 = apex`` and ``1, 2, 3`` the
    corners of triangle ``tau``. ``j`` is the local vertex opposite the glued
    face, ``phi`` maps the other local vertices of ``tau`` to those of ``tau2``.
    """
    tris = sphere.triangles
    glue = []
    # interior faces: apex plus a sphere edge, shared by the two triangles on that edge
    by_edge: dict[frozenset, list[tuple[int, int]]] = {}
    for t, tri in enumerate(tris):
        for j in range(3):
            by_edge.setdefault(frozenset(tri[:j] + tri[j + 1:]), []).append((t, j))
    for edge, sides in sorted(by_edge.items(), key=lambda kv: sorted(kv[0])):
        (t1, j1), (t2, j2) = sides
        phi = {0: 0}
        for i in range(3):
            if i != j1:
                phi[i + 1] = tris[t2].index(tris[t1][i]) + 1
        glue.append((t1, j1 + 1, t2, j2 + 1, phi))
    for t, u, perm in fp.pairs:
        phi = {i + 1: perm[i] + 1 for i in range(3)}
        glue.append((t, 0, u, 0, phi))
    return glue


def _even(perm: Sequence[int]) -> bool:
    p = list(perm)
    swaps = 0
    for i in range(len(p)):
        while p[i] != i:
            k = p[i]
            p[i], p[k] = p[k], p[i]
            swaps += 1
    return swaps % 2 == 0


def _compute_links(sphere: TriangulatedSphere, glue, vclass) -> tuple[LinkSummary, ...]:
    tris = sphere.triangles

    def global_vertex(tau, i):
        return APEX if i == 0 else vclass[tris[tau][i - 1]]

    lv = _UnionFind()  # link vertices (tau, i, k)
    corners = _UnionFind()  # corner triangles (tau, i), merged into link components
    adjacency: dict[tuple[int, int], list] = {}
    for tau, j, tau2, j2, phi in glue:
        for i in phi:
            i2 = phi[i]
            corners.union((tau, i), (tau2, i2))
            k, l = (x for x in range(4) if x not in (i, j))
            lv.union((tau, i, k), (tau2, i2, phi[k]))
            lv.union((tau, i, l), (tau2, i2, phi[l]))
            # direction of the shared link edge in each corner's induced orientation
            d1 = 1 if _even((i, j, k, l)) else -1
            d2 = 1 if _even((i2, j2, phi[k], phi[l])) else -1
            adjacency.setdefault((tau, i), []).append(((tau2, i2), -d1 * d2))
            adjacency.setdefault((tau2, i2), []).append(((tau, i), -d1 * d2))
    all_corners = [(tau, i) for tau in range(len(tris)) for i in range(4)]
    by_vertex: dict = {}
    for c in all_corners:
        by_vertex.setdefault(global_vertex(*c), []).append(c)

    links = []
    order = [APEX] + sorted((v for v in by_vertex if v != APEX))
    for v in order:
        cs = by_vertex[v]
        for c in cs:
            for k in range(4):
                if k != c[1]:
                    lv.add((c[0], c[1], k))
        nv = len({lv.find((c[0], c[1], k)) for c in cs for k in range(4) if k != c[1]})
        nf = len(cs)
        if (3 * nf) % 2:
            raise FacePairingError(f"link of vertex {v} is not a closed surface")
        ne = 3 * nf // 2
        comps = len({corners.find(c) for c in cs})
        sign: dict = {}
        orientable = True
        for c in cs:
            if c in sign:
                continue
            sign[c] = 1
            stack = [c]
            while stack:
                x = stack.pop()
                for y, rel in adjacency.get(x, []):
                    want = sign[x] * rel
                    if y not in sign:
                        sign[y] = want
                        stack.append(y)
                    elif sign[y] != want:
                        orientable = False
        chi = nv - ne + nf
        genus = (2 * comps - chi) // 2 if orientable else -1
        links.append(LinkSummary(v, chi, orientable, comps == 1, comps, genus, nf))
    return tuple(links)


def build_quotient(sphere: TriangulatedSphere, fp: FacePairing) -> QuotientComplex:
    fp.validate(sphere)
    tris = sphere.triangles
    verts = _UnionFind()
    edges = _UnionFind()
    for v in sphere.vertices:
        verts.add(v)
    for e in sphere.edges:
        edges.add(e)
    for t, u, perm in fp.pairs:
        a, b = tris[t], tris[u]
        for i in range(3):
            verts.union(a[i], b[perm[i]])
        for i, k in itertools.combinations(range(3), 2):
            edges.union(frozenset((a[i], a[k])), frozenset((b[perm[i]], b[perm[k]])))
    vclass = {v: verts.find(v) for v in sphere.vertices}
    m = len(tris) // 2
    nv_s, ne_s = len(sphere.vertices), len(sphere.edges)
    v = 1 + verts.classes()
    e = nv_s + edges.classes()  # apex edges + boundary edge classes
    f = ne_s + m  # interior triangles + boundary triangle classes
    t = 2 * m
    links = _compute_links(sphere, _tetra_gluings(sphere, fp), vclass)
    return QuotientComplex(sphere, fp, v, e, f, t, vclass, links)


def vertex_links(q: QuotientComplex) -> tuple[LinkSummary, ...]:
    for link in q.links:
        if not link.orientable:
            raise FacePairingError(f"link of {link.vertex} is non-orientable; invalid pairing data")
    return q.links


@dataclass(frozen=True)
class ManifoldCertificate:
    euler: int
    link_genera: dict
    singular_vertices: tuple  # vertices whose link is not a sphere
    disconnected_links: tuple


def is_manifold(q: QuotientComplex) -> tuple[bool, ManifoldCertificate]:
    """A closed 3-manifold exactly when the Euler characteristic vanishes.

    Cross-checked against the vertex links: raises if ``euler == 0`` disagrees
    with "every link has genus 0".
    """
    links = vertex_links(q)
    genera = {str(l.vertex): l.genus for l in links}
    all_genus_zero = all(l.genus == 0 for l in links)
    manifold = q.euler == 0
    if manifold != all_genus_zero:
        raise FacePairingError(f"Euler characteristic {q.euler} disagrees with link genera {genera}")
    cert = ManifoldCertificate(
        q.euler,
        genera,
        tuple(str(l.vertex) for l in links if not l.is_sphere),
        tuple(str(l.vertex) for l in links if not l.connected),
    )
    return manifold, cert


def census_row(index: int, q: QuotientComplex) -> dict:
    manifold, cert = is_manifold(q)
    return {
        "pairing_id": index,
        "pairing": q.pairing.label(),
        "gluing_codes": q.pairing.codes,
        "v": q.v,
        "e": q.e,
        "f": q.f,
        "t": q.t,
        "euler": q.euler,
        "link_genera": [l.genus for l in q.links],
        "links_connected": all(l.connected for l in q.links),
        "is_manifold": manifold,
        "singular_vertices": list(cert.singular_vertices),
    }


def _census_task(item):
    index, sphere, fp = item
    return census_row(index, build_quotient(sphere, fp))


def census(sphere: TriangulatedSphere, budget=None, jobs: int = 1) -> tuple[list[dict], bool]:
    stream = enumerate_pairings(sphere, budget)
    items = [(i, sphere, fp) for i, fp in enumerate(stream)]
    if jobs > 1 and len(items) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_census_task, items, chunksize=64))
    else:
        rows = [_census_task(it) for it in items]
    return rows, stream.truncated

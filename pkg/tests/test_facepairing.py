import itertools

import pytest

from oracles import quotient_counts
from ribbon_genus.facepairing import (
    APEX,
    FacePairing,
    FacePairingError,
    TriangulatedSphere,
    build_quotient,
    census,
    enumerate_pairings,
    gluing_map,
    is_manifold,
    pairing_count,
    perfect_matchings,
    vertex_links,
)
from ribbon_genus.genus_search import SearchBudget


@pytest.mark.parametrize("n,count", [(1, 3), (2, 27), (3, 405), (4, 8505)])
def test_pairing_count(n, count):
    assert pairing_count(n) == count


@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumeration_matches_count_and_is_unique(n):
    s = TriangulatedSphere.standard(n)
    stream = enumerate_pairings(s)
    items = list(stream)
    assert len(items) == pairing_count(n)
    assert len(set(items)) == len(items)
    assert not stream.truncated
    assert items == list(enumerate_pairings(s))


def test_truncated_stream_is_flagged():
    stream = enumerate_pairings(TriangulatedSphere.standard(3), SearchBudget(max_nodes=10))
    assert len(list(stream)) == 10 and stream.truncated


def test_perfect_matchings_count():
    assert sum(1 for _ in perfect_matchings(list(range(6)))) == 15


def test_gluing_codes_reverse_orientation():
    for code in range(3):
        perm = gluing_map(code)
        assert sorted(perm) == [0, 1, 2]
        inversions = sum(perm[i] > perm[j] for i, j in itertools.combinations(range(3), 2))
        assert inversions % 2 == 1


def test_orientation_preserving_gluing_rejected():
    s = TriangulatedSphere.standard(1)
    with pytest.raises(FacePairingError, match="preserves orientation"):
        build_quotient(s, FacePairing(((0, 1, (0, 1, 2)),)))
    with pytest.raises(FacePairingError, match="perfect matching"):
        build_quotient(s, FacePairing(((0, 0, (0, 2, 1)),)))


@pytest.mark.parametrize("text,needle", [
    ("0 1 2\n", "even number"),
    ("0 1 2\n0 1 2\n", "twice"),
    ("0 1 2\n3 4 5\n", "only one triangle|disconnected"),
    ("0 1\n", "three vertex labels"),
    ("0 1 x\n", "integers"),
])
def test_bad_spheres(text, needle):
    with pytest.raises(FacePairingError, match=needle):
        TriangulatedSphere.from_text(text)


def test_torus_is_not_a_sphere():
    # 7-vertex torus
    tris = []
    for i in range(7):
        tris.append((i, (i + 1) % 7, (i + 3) % 7))
        tris.append((i, (i + 3) % 7, (i + 2) % 7))
    with pytest.raises(FacePairingError, match="Euler characteristic 0"):
        TriangulatedSphere(tuple(tris))


def test_text_round_trip():
    s = TriangulatedSphere.standard(4)
    text = "# bipyramid\n" + s.to_text()
    assert TriangulatedSphere.from_text(text) == s


@pytest.mark.parametrize("n", [1, 2, 3])
def test_counts_match_simplicial_oracle(n):
    s = TriangulatedSphere.standard(n)
    for fp in enumerate_pairings(s):
        q = build_quotient(s, fp)
        assert (q.v, q.e, q.f, q.t) == quotient_counts(s.triangles, fp.pairs)
        assert q.t == len(s.triangles)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_euler_zero_iff_links_are_spheres(n):
    s = TriangulatedSphere.standard(n)
    for fp in enumerate_pairings(s):
        q = build_quotient(s, fp)
        links = vertex_links(q)
        assert links[0].vertex == APEX and links[0].is_sphere
        assert all(l.orientable for l in links)
        manifold, cert = is_manifold(q)
        assert manifold == (q.euler == 0) == all(l.genus == 0 for l in links)
        assert manifold == (cert.singular_vertices == ())


def test_tetrahedron_census_has_no_singular_vertex():
    rows, truncated = census(TriangulatedSphere.standard(2))
    assert len(rows) == 27 and not truncated
    assert all(r["is_manifold"] and r["euler"] == 0 for r in rows)
    assert {len(r["link_genera"]) for r in rows} == {2, 3}


def test_first_singular_pairing_on_six_triangles():
    s = TriangulatedSphere.standard(3)
    fp = FacePairing.from_codes([(0, 1), (2, 3), (4, 5)], [0, 0, 0])
    q = build_quotient(s, fp)
    manifold, cert = is_manifold(q)
    assert not manifold
    assert q.euler == 2
    assert sorted(l.genus for l in q.links) == [0, 2]
    assert cert.singular_vertices


def test_six_triangle_census_summary():
    rows, _ = census(TriangulatedSphere.standard(3))
    assert len(rows) == 405
    assert sum(r["is_manifold"] for r in rows) == 113
    assert max(max(r["link_genera"]) for r in rows) == 2
    # the genus of the singular links adds up to the Euler characteristic here
    assert all(r["euler"] == sum(r["link_genera"]) for r in rows)


def test_census_parallel_matches_serial():
    s = TriangulatedSphere.standard(3)
    assert census(s, jobs=2) == census(s)

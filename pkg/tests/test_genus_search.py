import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import presentations
from oracles import brute_force_graph_genus, naive_shuffle_min, oracle_surface
from ribbon_genus.corpus import load
from ribbon_genus.genus_search import (
    BoundPreconditionError,
    SearchBudget,
    genus_spectrum,
    genus_upper_bound,
    group_genus_upper,
    hierarchy_check,
    link_genus,
    min_genus_over_shuffles,
    presentation_genus,
    shuffle_space_size,
    tietze_neighbors,
)
from ribbon_genus.presentation import occurrence_stats, parse_presentation
from ribbon_genus.ribbon import LinkGraph, apply_shuffle, build_canonical_surface, link_graph, surface_summary

EXHAUSTIVE = SearchBudget(exhaustive=True)


def make_link(num_vertices, pairs):
    """A LinkGraph on arbitrary vertex pairs; vertex ``v`` plays disc ``(v // 2, +-)``."""
    if num_vertices % 2:
        num_vertices += 1
    used = [0] * num_vertices

    def slot(v):
        used[v] += 1
        return (v // 2, 1 if v % 2 == 0 else -1, used[v])

    return LinkGraph(num_vertices, tuple((slot(a), slot(b)) for a, b in pairs))


def rotation_genus(graph, rotation):
    """Genus of the embedding given per-vertex slot cycles, traced from scratch."""
    nxt = {}
    for cyc in rotation:
        for t, s in enumerate(cyc):
            nxt[s] = cyc[(t + 1) % len(cyc)]
    partner = {}
    for a, b in graph.edges:
        partner[a], partner[b] = b, a
    seen, faces = set(), 0
    for s in nxt:
        if s in seen:
            continue
        faces += 1
        while s not in seen:
            seen.add(s)
            s = nxt[partner[s]]
    import networkx as nx

    g = nx.MultiGraph(graph.vertex_pairs())
    busy = [v for v in range(graph.num_vertices) if graph.degree()[v]]
    comps = nx.number_connected_components(g.subgraph(busy)) if busy else 0
    chi = len(busy) - len(graph.edges) + faces
    return comps - chi // 2


# --- canonical genus --------------------------------------------------------

@pytest.mark.parametrize("name,genus", [
    ("z6_amalgam", 1), ("z6_amalgam_small", 1), ("bs_2_3", 1), ("p_reduced", 2), ("utilities", 2),
    ("p_amalgam", 2), ("q_amalgam", 1), ("trivial", 0), ("free_rank_2", 0),
])
def test_presentation_genus(name, genus):
    assert presentation_genus(load(name)) == genus


def test_q_prime_literal_canonical_and_shuffled():
    q = load("q_reduced_literal")
    assert presentation_genus(q) == 2
    r = min_genus_over_shuffles(q, EXHAUSTIVE)
    assert (r.genus, r.exact) == (1, True)


# --- shuffles ---------------------------------------------------------------

def test_single_cyclic_class():
    p = parse_presentation("<a | a^2>")
    assert shuffle_space_size((2,)) == 1
    r = min_genus_over_shuffles(p)
    assert r.exact and r.genus == presentation_genus(p)


def test_baumslag_solitar_shuffle_min():
    r = min_genus_over_shuffles(load("bs_2_3"), EXHAUSTIVE)
    assert r.exact and r.genus == 1
    rg = apply_shuffle(build_canonical_surface(load("bs_2_3")), r.shuffle)
    assert surface_summary(rg).genus == 1


def test_q_prime_spectrum():
    spec = genus_spectrum(load("q_reduced_literal"))
    assert sum(spec.values()) == 3 * 2 * 5040 == shuffle_space_size((4, 8))
    assert min(spec) == 1 and len(spec) >= 2
    assert dict(spec) == {1: 312, 2: 5016, 3: 14160, 4: 10752}


@given(presentations(max_gens=2, max_rels=2, max_len=5, max_total=6))
@settings(max_examples=120)
def test_pinned_search_equals_full_symmetric_groups(p):
    r = min_genus_over_shuffles(p, EXHAUSTIVE)
    assert r.exact
    assert r.genus == naive_shuffle_min(p)
    perms = r.shuffle.perms
    assert oracle_surface(p, "B", perms)[4] == r.genus


@given(presentations(max_gens=3, max_rels=3, max_len=6, max_total=12))
@settings(max_examples=200)
def test_witness_attains_reported_minimum(p):
    r = min_genus_over_shuffles(p, SearchBudget(max_nodes=500))
    rg = apply_shuffle(build_canonical_surface(p), r.shuffle)
    assert surface_summary(rg).genus == r.genus
    assert r.genus <= presentation_genus(p)


def test_annealing_is_deterministic_and_flagged():
    p = load("p_amalgam")  # 5! * 5! * ... far beyond this budget
    b = SearchBudget(max_nodes=2000, seed=7)
    r1 = min_genus_over_shuffles(p, b)
    r2 = min_genus_over_shuffles(p, b)
    assert r1 == r2 and not r1.exact
    assert r1.genus <= presentation_genus(p)


# --- link genus -------------------------------------------------------------

def test_z6_link_genus_zero():
    r = link_genus(link_graph(load("z6_amalgam")))
    assert r.exact and r.genus == 0


def test_parallel_pair_is_planar():
    r = link_graph(parse_presentation("<a | a^2>"))
    assert link_genus(r).genus == 0


def test_utilities_link_genus_by_exhaustion():
    g = link_graph(load("utilities"))
    r = link_genus(g, EXHAUSTIVE)
    assert r.exact
    assert r.genus == brute_force_graph_genus(g.num_vertices, g.vertex_pairs()) == 0


def test_k33_and_k5():
    k33 = make_link(6, [(a, b) for a in range(3) for b in range(3, 6)])
    r = link_genus(k33, EXHAUSTIVE)
    assert (r.lower, r.upper, r.exact) == (1, 1, True)
    assert rotation_genus(k33, r.rotation) == 1
    k5 = make_link(6, list(itertools.combinations(range(5), 2)))
    r = link_genus(k5, EXHAUSTIVE)
    assert r.genus == 1 and rotation_genus(k5, r.rotation) == 1


def test_bracket_when_budget_is_tiny():
    k7 = make_link(8, list(itertools.combinations(range(7), 2)))  # genus 1, Euler bound 1
    r = link_genus(k7, SearchBudget(max_nodes=50, seed=3))
    assert r.lower == 1 and r.upper >= 1
    assert rotation_genus(k7, r.rotation) == r.upper
    assert r == link_genus(k7, SearchBudget(max_nodes=50, seed=3))
    if not r.exact:
        with pytest.raises(ValueError):
            r.genus


@st.composite
def small_multigraphs(draw):
    n = draw(st.integers(2, 6))
    m = draw(st.integers(1, 9))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), min_size=m, max_size=m))
    deg = [0] * n
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    if max(deg) > 6 or sum(deg) > 18:
        edges = edges[:4]
    return n, edges


@given(small_multigraphs())
@settings(max_examples=300)
def test_link_genus_matches_brute_force(case):
    n, edges = case
    g = make_link(n, edges)
    r = link_genus(g, EXHAUSTIVE)
    assert r.exact
    assert r.genus == brute_force_graph_genus(g.num_vertices, g.vertex_pairs())
    assert rotation_genus(g, r.rotation) == r.genus


# --- bounds and hierarchy ---------------------------------------------------

def test_upper_bound_examples():
    assert genus_upper_bound(load("bs_2_3")) == 2
    assert genus_upper_bound(load("utilities")) == Fraction(5, 2)
    assert genus_upper_bound(parse_presentation("<a | a^2>")) == Fraction(1, 2)
    with pytest.raises(BoundPreconditionError):
        genus_upper_bound(parse_presentation("<a,b | a^2>"))


def test_hierarchy_examples():
    assert hierarchy_check(load("z6_amalgam"), EXHAUSTIVE).chain == (0, 1, 1)
    assert hierarchy_check(parse_presentation("<a,b | >"), EXHAUSTIVE).chain == (0, 0, 0)
    rep = hierarchy_check(load("p_reduced"), EXHAUSTIVE)
    assert rep.t_genus == 2 and rep.chain == (0, 0, 2)
    d = rep.to_dict()
    assert d["upper_bound"] == "5/2" and d["link_genus"] == 0


@given(presentations(max_gens=3, max_rels=3, max_len=6, max_total=8))
@settings(max_examples=200)
def test_chain_on_random_presentations(p):
    rep = hierarchy_check(p, EXHAUSTIVE)
    link, shuf, t = rep.chain
    assert link is not None and shuf is not None
    assert link <= shuf <= t


# --- group-level search -----------------------------------------------------

def test_group_genus_small_examples():
    assert group_genus_upper(load("trivial"), depth=0).genus == 0
    assert group_genus_upper(load("q_amalgam"), depth=0).genus == 1
    assert group_genus_upper(load("p_amalgam"), depth=0).genus <= 2


def test_group_genus_monotone_in_depth():
    p = load("bs_1_2")
    values = [group_genus_upper(p, depth=d, max_presentations=40).genus for d in (0, 1, 2)]
    assert values == sorted(values, reverse=True)


def test_group_search_witness_is_real():
    r = group_genus_upper(load("bs_2_3"), depth=1, max_presentations=30)
    rg = apply_shuffle(build_canonical_surface(r.presentation), r.shuffle)
    assert surface_summary(rg).genus == r.genus


def test_tietze_neighbors_are_deterministic():
    p = load("bs_1_2")
    a = [q for _, q in tietze_neighbors(p)]
    b = [q for _, q in tietze_neighbors(p)]
    assert a == b and len(a) > 5
    assert all(occurrence_stats(q).total_length >= 0 for q in a)

"""Half-edge graphs, the three graph categories and ribbon graphs."""

import itertools
import random

import pytest
from hypothesis import assume, given, strategies as st

from gvblocks.graphs import (
    CompositionError, FlavorError, GraphError, GraphMorphism, HalfEdgeGraph, InvalidContractionError,
    RibbonGraph, compose, contract_edge, corolla, disjoint_union, format_graph, identity, is_isomorphic,
    loop_count, nu, parse_graph, pi0, ribbon_isomorphic, rotation, standard_factorization,
)
from gvblocks.graphs import disjoint_corollas


def glued(sizes, edges):
    return GraphMorphism.from_edges(sizes, edges).gamma


def same_shape(a: HalfEdgeGraph, b: HalfEdgeGraph) -> bool:
    """Multiset of (legs, degree) per vertex plus edge count; enough for the corolla examples."""
    sig = lambda g: (sorted(len(g.at(v)) for v in g.vertices), len(g.edges()), len(g.legs()))
    return sig(a) == sig(b)


# -- ν, π₀, loops --------------------------------------------------------------

def test_nu_examples():
    c3 = corolla(3)
    assert nu(c3) == c3
    two = glued((3, 3), [((0, 0), (1, 0))])
    assert same_shape(nu(two), disjoint_corollas((3, 3)))
    loop = glued((3,), [((0, 1), (0, 2))])
    assert same_shape(nu(loop), corolla(3))


def test_pi0_examples():
    two = glued((3, 3), [((0, 0), (1, 0))])
    assert same_shape(pi0(two), corolla(4))
    apart = disjoint_corollas((2, 3))
    assert same_shape(pi0(apart), apart)
    loop = glued((3,), [((0, 1), (0, 2))])
    assert same_shape(pi0(loop), corolla(1))


def test_loop_count_examples():
    assert loop_count(glued((2, 2, 1), [((0, 1), (1, 0)), ((1, 1), (2, 0))])) == 0
    assert loop_count(glued((2,), [((0, 0), (0, 1))])) == 1
    theta = glued((3, 3), [((0, l), (1, l)) for l in range(3)])
    assert loop_count(theta) == 2


def test_invalid_graphs():
    with pytest.raises(GraphError):
        HalfEdgeGraph(1, (0, 0), (1, 1))
    with pytest.raises(GraphError):
        HalfEdgeGraph(1, (0, 1), (0, 1))
    with pytest.raises(GraphError):
        GraphMorphism.from_edges((2,), [((0, 0), (0, 0))])


# -- random morphisms --------------------------------------------------------------

@st.composite
def morphisms(draw, sizes=None, forest=False, max_corollas=3):
    if sizes is None:
        sizes = draw(st.lists(st.integers(1, 4), min_size=1, max_size=max_corollas))
    sizes = tuple(sizes)
    flags = [(c, l) for c, k in enumerate(sizes) for l in range(k)]
    order = draw(st.permutations(flags))
    parent = list(range(len(sizes)))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    free, edges = list(order), []
    n_edges = draw(st.integers(0, len(flags) // 2))
    while len(edges) < n_edges and len(free) >= 2:
        a, b = free.pop(), free.pop()
        if forest:
            ra, rb = find(a[0]), find(b[0])
            if ra == rb:
                continue
            parent[ra] = rb
        edges.append((a, b))
    f = GraphMorphism.from_edges(sizes, edges, flavor="Forests" if forest else "Graphs") \
        if not forest else None
    if forest:
        g = GraphMorphism.from_edges(sizes, edges)
        assume(all(f_ for f_ in g.target))
        f = g.with_flavor("Forests")
    # scramble leg order inside every target corolla and the order of target corollas
    perm = draw(st.permutations(range(len(f.target))))
    phi2 = [tuple(draw(st.permutations(list(f.phi2[d])))) for d in perm]
    return GraphMorphism(f.flavor, f.gamma, f.source, tuple(len(x) for x in phi2), f.phi1_vertex,
                         f.phi1, tuple(f.phi2_vertex[d] for d in perm), tuple(phi2))


@given(morphisms())
def test_nu_pi0_idempotent(f):
    g = f.gamma
    assert nu(nu(g)) == nu(g)
    assert same_shape(pi0(pi0(g)), pi0(g))
    assert pi0(g).n_vertices == g.n_components()


@given(morphisms())
def test_identity_is_neutral(f):
    assert compose(identity(f.target), f) == f
    assert compose(f, identity(f.source)) == f
    assert is_isomorphic(f, f)


@given(st.data())
def test_compose_associative_and_loops_add(data):
    f = data.draw(morphisms())
    g = data.draw(morphisms(sizes=f.target))
    h = data.draw(morphisms(sizes=g.target))
    assume(f.gamma.n_vertices <= 6)
    gf = compose(g, f)
    assert compose(h, gf) == compose(compose(h, g), f)
    assert loop_count(gf.gamma) == loop_count(f.gamma) + loop_count(g.gamma)


def test_composition_example():
    # T2 ⊔ T2 → T3 then T3 ⊔ T2 → T4 gives a 3-vertex tree with two internal edges
    inner = disjoint_union([GraphMorphism.from_edges((3, 3), [((0, 2), (1, 0))]), identity((3,))])
    outer = GraphMorphism.from_edges((4, 3), [((0, 3), (1, 0))])
    gf = compose(outer, inner)
    assert gf.gamma.n_vertices == 3 and len(gf.gamma.edges()) == 2
    assert gf.target == (5,) and loop_count(gf.gamma) == 0


def test_loop_after_tree():
    tree = GraphMorphism.from_edges((3, 3), [((0, 0), (1, 0))])
    loop = GraphMorphism.from_edges((4,), [((0, 0), (0, 2))])
    assert loop_count(compose(loop, tree).gamma) == 1


def test_composition_errors():
    with pytest.raises(CompositionError):
        compose(identity((2,)), identity((3,)))
    with pytest.raises(CompositionError):
        compose(identity((2,), "Forests"), identity((2,)))
    with pytest.raises(FlavorError):
        GraphMorphism.from_edges((2,), [((0, 0), (0, 1))], flavor="Forests")
    with pytest.raises(FlavorError):
        identity((0,), "Forests")


def test_tree_is_not_a_loop_graph():
    # both have a 2-leg corolla as target
    tree = GraphMorphism.from_edges((3, 1), [((0, 0), (1, 0))])
    loop = GraphMorphism.from_edges((4,), [((0, 0), (0, 1))])
    assert tree.target == loop.target == (2,)
    assert (loop_count(tree.gamma), loop_count(loop.gamma)) == (0, 1)
    assert not is_isomorphic(tree, loop)


def test_internal_relabeling_is_invisible():
    a = GraphMorphism.from_edges((3, 2, 2), [((0, 1), (1, 0)), ((0, 2), (2, 0))])
    b = GraphMorphism.from_edges((3, 2, 2), [((0, 2), (2, 0)), ((0, 1), (1, 0))])
    assert a == b
    c = GraphMorphism.from_edges((3, 2, 2), [((0, 1), (2, 0)), ((0, 2), (1, 0))])
    assert a != c


# -- standard factorization -------------------------------------------------------

def test_rooted_input_has_zero_rotations():
    f = GraphMorphism.from_edges((3, 3), [((0, 1), (1, 0))], [[(0, 0), (0, 2), (1, 1), (1, 2)]])
    assert f.with_flavor("RForests").is_rooted()
    sf = standard_factorization(f.with_flavor("Forests"))
    assert sf.rotations == (0, 0)
    assert sf.rooted == f.with_flavor("RForests")


def test_pure_rotation():
    sf = standard_factorization(rotation(3, 1))
    assert sf.rotations == (1,)
    assert sf.rooted == identity((3,), "RForests")


def test_two_corolla_figure_example():
    # two T₂ glued along one edge; the global root sits at leg 2 of the first corolla and
    # the edge meets the second one at its leg 1
    f = GraphMorphism.from_edges((3, 3), [((0, 0), (1, 1))],
                                 [[(0, 2), (0, 1), (1, 2), (1, 0)]], flavor="Forests")
    sf = standard_factorization(f)
    assert sf.rotations == (2, 1)
    assert sf.recompose() == f


def test_factorization_rejects_loops():
    with pytest.raises(FlavorError):
        standard_factorization(GraphMorphism.from_edges((3,), [((0, 0), (0, 1))]))


@given(morphisms(forest=True))
def test_factorization_recomposes_and_is_unique(f):
    sf = standard_factorization(f)
    assert sf.recompose() == f
    assert sf.rooted.flavor == "RForests"
    # every other rotation vector leaves a non-rooted remainder
    hits = []
    for ks in itertools.product(*(range(k) for k in f.source)):
        undo = disjoint_union([rotation(k, -r, "Forests") for k, r in zip(f.source, ks)])
        if compose(f, undo).is_rooted():
            hits.append(ks)
    assert hits == [sf.rotations]


# -- ribbon graphs -----------------------------------------------------------------

def test_dumbbell_splice():
    rg = parse_graph("v 0 1 2\nv 3 4 5\ne 0 3\n")
    c = contract_edge(rg, 0)
    assert c.graph.n_vertices == 1
    # ids 1 2 4 5 are renumbered 0 1 2 3, the far side is spliced in after 2
    assert c.cyclic_orders == ((0, 1, 2, 3),)
    assert c.leg_order == (0, 1, 2, 3)


def test_contraction_errors():
    rg = parse_graph("v 0 1 2\ne 1 2\n")
    with pytest.raises(InvalidContractionError):
        contract_edge(rg, 1)
    with pytest.raises(InvalidContractionError):
        contract_edge(rg, 0)


def test_bridge_next_to_loop():
    rg = parse_graph("v 0 1 2\nv 3 4\ne 1 2\ne 0 3\n")
    assert rg.loop_count() == 1
    assert contract_edge(rg, 0).loop_count() == 1


def random_ribbon_graph(rng: random.Random, n_vertices=4, max_loops=2) -> RibbonGraph:
    """A connected ribbon graph: a random spanning tree plus up to max_loops extra edges."""
    while True:
        degs = [rng.randint(1, 4) for _ in range(n_vertices)]
        ids = [[0] * d for d in degs]
        h = 0
        for v in range(n_vertices):
            for k in range(degs[v]):
                ids[v][k] = h
                h += 1
        free = {v: list(ids[v]) for v in range(n_vertices)}
        for v in free:
            rng.shuffle(free[v])
        pairs, ok = [], True
        for v in range(1, n_vertices):
            u = rng.randrange(v)
            if not free[u] or not free[v]:
                ok = False
                break
            pairs.append((free[u].pop(), free[v].pop()))
        if not ok:
            continue
        rest = [x for v in free for x in free[v]]
        rng.shuffle(rest)
        for _ in range(rng.randint(0, max_loops)):
            if len(rest) >= 2:
                pairs.append((rest.pop(), rest.pop()))
        text = "".join("v " + " ".join(map(str, vl)) + "\n" for vl in ids)
        text += "".join(f"e {a} {b}\n" for a, b in pairs)
        return parse_graph(text)


def test_contraction_keeps_loops_and_legs():
    rng = random.Random(11)
    for _ in range(200):
        rg = random_ribbon_graph(rng, rng.randint(1, 4))
        while rg.graph.n_vertices > 1:
            tree_edges = [h for h, j in rg.graph.edges() if rg.graph.incidence[h] != rg.graph.incidence[j]]
            c = contract_edge(rg, rng.choice(tree_edges))
            assert c.loop_count() == rg.loop_count()
            assert len(c.graph.legs()) == len(rg.graph.legs())
            rg = c


def test_contraction_order_does_not_matter():
    rg = parse_graph("v 0 1 2\nv 3 4 5\nv 6 7\ne 0 3\ne 4 6\n")
    a = contract_edge(contract_edge(rg, 0), 2)   # edge (4, 6) has been renumbered to (2, 4)
    b = contract_edge(contract_edge(rg, 4), 0)
    assert ribbon_isomorphic(a, b)


def test_format_round_trip():
    rg = random_ribbon_graph(random.Random(3))
    assert ribbon_isomorphic(parse_graph(format_graph(rg)), rg)


def test_parse_errors():
    with pytest.raises(GraphError, match="line 2, column 5"):
        parse_graph("v 0 1\nv 2 x\n")
    with pytest.raises(GraphError):
        parse_graph("v 0 2\n")
    with pytest.raises(GraphError):
        parse_graph("v 0 1\ne 0 0\n")
    with pytest.raises(GraphError):
        parse_graph("w 0\n")

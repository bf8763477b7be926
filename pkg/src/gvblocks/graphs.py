"""
Half-edge graphs and the graph categories Graphs, Forests, RForests.

A graph is a set of half-edges with an incidence map to vertices and an
involution; two-element orbits are edges, fixed points are legs.  Ids are
dense integers.  A morphism S → T between disjoint unions of corollas is a
graph Γ with identifications φ₁: S ≅ ν(Γ) and φ₂: T ≅ π₀(Γ).  A corolla is
recorded by its number of legs k (legs 0..k-1), and a flag (c, ℓ) is leg ℓ
of corolla c.  Leg 0 of each target corolla is its root.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

__all__ = [
    "GraphError",
    "CompositionError",
    "FlavorError",
    "InvalidContractionError",
    "HalfEdgeGraph",
    "corolla",
    "GraphMorphism",
    "StandardFactorization",
    "RibbonGraph",
    "nu",
    "pi0",
    "loop_count",
    "compose",
    "standard_factorization",
    "rotation",
    "identity",
    "disjoint_union",
    "ribbon_isomorphic",
    "is_isomorphic",
    "find_isomorphism",
    "contract_edge",
    "parse_graph",
    "format_graph",
]

FLAVORS = ("Graphs", "Forests", "RForests")


class GraphError(ValueError):
    pass


class CompositionError(GraphError):
    pass


class FlavorError(GraphError):
    pass


class InvalidContractionError(GraphError):
    pass


@dataclass(frozen=True)
class HalfEdgeGraph:
    """incidence[h] is the vertex of half-edge h, involution[h] its partner (h itself for a leg)."""
    n_vertices: int
    incidence: tuple[int, ...]
    involution: tuple[int, ...]

    def __post_init__(self):
        H = len(self.incidence)
        if len(self.involution) != H:
            raise GraphError("incidence and involution have different lengths")
        for h, j in enumerate(self.involution):
            if not 0 <= j < H or self.involution[j] != h:
                raise GraphError(f"involution is not an involution at half-edge {h}")
        for v in self.incidence:
            if not 0 <= v < self.n_vertices:
                raise GraphError(f"half-edge attached to missing vertex {v}")

    @property
    def half_edges(self) -> range:
        return range(len(self.incidence))

    @property
    def vertices(self) -> range:
        return range(self.n_vertices)

    def legs(self) -> list[int]:
        return [h for h in self.half_edges if self.involution[h] == h]

    def edges(self) -> list[tuple[int, int]]:
        return [(h, j) for h, j in enumerate(self.involution) if h < j]

    def at(self, v: int) -> list[int]:
        return [h for h in self.half_edges if self.incidence[h] == v]

    def components(self) -> list[int]:
        """comp[v], components numbered by their smallest vertex."""
        parent = list(self.vertices)

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for h, j in self.edges():
            a, b = find(self.incidence[h]), find(self.incidence[j])
            if a != b:
                parent[max(a, b)] = min(a, b)
        roots: dict[int, int] = {}
        return [roots.setdefault(find(v), len(roots)) for v in self.vertices]

    def n_components(self) -> int:
        return len(set(self.components())) if self.n_vertices else 0

    def is_forest(self) -> bool:
        return loop_count(self) == 0


def corolla(k: int) -> HalfEdgeGraph:
    return HalfEdgeGraph(1, (0,) * k, tuple(range(k)))


def disjoint_corollas(sizes: Sequence[int]) -> HalfEdgeGraph:
    inc = tuple(c for c, k in enumerate(sizes) for _ in range(k))
    return HalfEdgeGraph(len(sizes), inc, tuple(range(len(inc))))


def nu(g: HalfEdgeGraph) -> HalfEdgeGraph:
    return HalfEdgeGraph(g.n_vertices, g.incidence, tuple(g.half_edges))


def pi0(g: HalfEdgeGraph) -> HalfEdgeGraph:
    """One vertex per component; legs keep their ids in increasing order."""
    comp = g.components()
    legs = g.legs()
    return HalfEdgeGraph(g.n_components(), tuple(comp[g.incidence[h]] for h in legs),
                         tuple(range(len(legs))))


def loop_count(g: HalfEdgeGraph) -> int:
    return len(g.edges()) - g.n_vertices + g.n_components()


# -- morphisms -------------------------------------------------------------

@dataclass(frozen=True)
class GraphMorphism:
    flavor: str
    gamma: HalfEdgeGraph
    source: tuple[int, ...]
    target: tuple[int, ...]
    phi1_vertex: tuple[int, ...]
    phi1: tuple[tuple[int, ...], ...]
    phi2_vertex: tuple[int, ...]
    phi2: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = self.gamma
        if self.flavor not in FLAVORS:
            raise FlavorError(f"unknown flavor {self.flavor!r}")
        if sorted(self.phi1_vertex) != list(g.vertices) or len(self.source) != g.n_vertices:
            raise GraphError("φ₁ is not a bijection onto the vertices")
        flat = [h for legs in self.phi1 for h in legs]
        if sorted(flat) != list(g.half_edges):
            raise GraphError("φ₁ is not a bijection onto the half-edges")
        for c, legs in enumerate(self.phi1):
            if len(legs) != self.source[c] or any(g.incidence[h] != self.phi1_vertex[c] for h in legs):
                raise GraphError(f"φ₁ does not respect incidence at source corolla {c}")
        comp = g.components()
        if sorted(comp[v] for v in self.phi2_vertex) != list(range(g.n_components())):
            raise GraphError("φ₂ is not a bijection onto the components")
        flat2 = [h for legs in self.phi2 for h in legs]
        if sorted(flat2) != g.legs():
            raise GraphError("φ₂ is not a bijection onto the legs")
        for d, legs in enumerate(self.phi2):
            if len(legs) != self.target[d] or any(comp[g.incidence[h]] != comp[self.phi2_vertex[d]]
                                                   for h in legs):
                raise GraphError(f"φ₂ does not respect components at target corolla {d}")
        if self.flavor in ("Forests", "RForests"):
            if not g.is_forest():
                raise FlavorError("a Forests morphism needs an acyclic graph")
            if 0 in self.source or 0 in self.target:
                raise FlavorError("Forests has no corollas without legs")
        if self.flavor == "RForests" and not self.is_rooted():
            raise FlavorError("roots are not compatible with the zeroth legs")

    @classmethod
    def from_edges(cls, source: Sequence[int], edges: Iterable[tuple[tuple[int, int], tuple[int, int]]],
                   target_legs: Optional[Sequence[Sequence[tuple[int, int]]]] = None,
                   flavor: str = "Graphs") -> "GraphMorphism":
        """Glue flags of the source corollas along edges; target legs listed per target corolla."""
        source = tuple(source)
        offs = [sum(source[:c]) for c in range(len(source))]
        flag = lambda f: offs[f[0]] + f[1]
        g = disjoint_corollas(source)
        inv = list(g.involution)
        for a, b in edges:
            x, y = flag(a), flag(b)
            if inv[x] != x or inv[y] != y or x == y:
                raise GraphError(f"flags {a}, {b} cannot be glued")
            inv[x], inv[y] = y, x
        g = HalfEdgeGraph(len(source), g.incidence, tuple(inv))
        comp = g.components()
        if target_legs is None:
            by_comp: dict[int, list[int]] = {}
            for h in g.legs():
                by_comp.setdefault(comp[g.incidence[h]], []).append(h)
            groups = [by_comp.get(k, []) for k in range(g.n_components())]
        else:
            groups = [[flag(f) for f in legs] for legs in target_legs]
        reps = []
        for k, legs in enumerate(groups):
            if legs:
                reps.append(g.incidence[legs[0]])
            else:
                # a closed component, matched in order of appearance
                used = {comp[r] for r in reps}
                free = [v for v in g.vertices if comp[v] not in used
                        and not any(comp[g.incidence[h]] == comp[v] for h in g.legs())]
                reps.append(free[0])
        phi1 = tuple(tuple(range(offs[c], offs[c] + source[c])) for c in range(len(source)))
        return cls(flavor, g, source, tuple(len(x) for x in groups), tuple(range(len(source))),
                   phi1, tuple(reps), tuple(tuple(x) for x in groups))

    def with_flavor(self, flavor: str) -> "GraphMorphism":
        return GraphMorphism(flavor, self.gamma, self.source, self.target, self.phi1_vertex,
                             self.phi1, self.phi2_vertex, self.phi2)

    def root_half_edges(self) -> dict[int, int]:
        """For each vertex, the half-edge pointing towards the root leg of its tree."""
        g = self.gamma
        roots: dict[int, int] = {}
        for legs in self.phi2:
            if not legs:
                continue
            start = legs[0]
            roots[g.incidence[start]] = start
            stack = [g.incidence[start]]
            while stack:
                v = stack.pop()
                for h in g.at(v):
                    j = g.involution[h]
                    if j != h:
                        w = g.incidence[j]
                        if w not in roots:
                            roots[w] = j
                            stack.append(w)
        return roots

    def is_rooted(self) -> bool:
        roots = self.root_half_edges()
        return all(roots.get(self.phi1_vertex[c]) == self.phi1[c][0] for c in range(len(self.source)))

    def __eq__(self, other):
        if not isinstance(other, GraphMorphism):
            return NotImplemented
        return is_isomorphic(self, other)

    def __hash__(self):
        return hash((self.flavor, self.source, self.target, loop_count(self.gamma)))


def identity(sizes: Sequence[int], flavor: str = "Graphs") -> GraphMorphism:
    return GraphMorphism.from_edges(sizes, [], [[(c, l) for l in range(k)] for c, k in enumerate(sizes)],
                                    flavor)


def rotation(k_legs: int, power: int = 1, flavor: str = "Forests") -> GraphMorphism:
    """τ^power on a corolla with k_legs legs: source leg j becomes target leg j - power."""
    m = k_legs
    tl = [[(0, (l + power) % m) for l in range(m)]]
    return GraphMorphism.from_edges((m,), [], tl, flavor)


def _flag_of(f: GraphMorphism) -> dict[int, tuple[int, int]]:
    return {h: (c, l) for c, legs in enumerate(f.phi1) for l, h in enumerate(legs)}


def compose(outer: GraphMorphism, inner: GraphMorphism) -> GraphMorphism:
    """outer ∘ inner: replace each vertex of outer's graph by the matching component of inner's."""
    if inner.target != outer.source:
        raise CompositionError(f"target {inner.target} does not match source {outer.source}")
    if inner.flavor != outer.flavor:
        raise CompositionError(f"cannot compose {outer.flavor} after {inner.flavor}")
    g1, g2 = inner.gamma, outer.gamma
    out_flag = _flag_of(outer)
    inv = list(g1.involution)
    for d, legs2 in enumerate(outer.phi1):
        for l, h2 in enumerate(legs2):
            j2 = g2.involution[h2]
            if j2 != h2:
                d2, l2 = out_flag[j2]
                inv[inner.phi2[d][l]] = inner.phi2[d2][l2]
    g = HalfEdgeGraph(g1.n_vertices, g1.incidence, tuple(inv))
    vertex_of_d = {outer.phi1_vertex[d]: d for d in range(len(outer.source))}
    phi2, phi2_vertex = [], []
    comp2 = g2.components()
    for e, legs in enumerate(outer.phi2):
        new = []
        for h2 in legs:
            d, l = out_flag[h2]
            new.append(inner.phi2[d][l])
        phi2.append(tuple(new))
        # any source corolla of outer lying in component e gives a representative
        d = next(vertex_of_d[v] for v in g2.vertices if comp2[v] == comp2[outer.phi2_vertex[e]])
        phi2_vertex.append(inner.phi2_vertex[d])
    return GraphMorphism(outer.flavor, g, inner.source, outer.target, inner.phi1_vertex,
                         inner.phi1, tuple(phi2_vertex), tuple(phi2))


def find_isomorphism(a: HalfEdgeGraph, b: HalfEdgeGraph, fixed: Optional[dict[int, int]] = None,
                     fixed_vertices: Optional[dict[int, int]] = None,
                     cyclic_a: Optional[Sequence[Sequence[int]]] = None,
                     cyclic_b: Optional[Sequence[Sequence[int]]] = None) -> Optional[dict[int, int]]:
    """Backtracking search for a half-edge bijection a → b respecting incidence and involution."""
    if (a.n_vertices, len(a.incidence), len(a.legs())) != (b.n_vertices, len(b.incidence), len(b.legs())):
        return None
    hmap: dict[int, int] = {}
    vmap: dict[int, int] = dict(fixed_vertices or {})

    def assign(h, j, trail):
        if h in hmap:
            return hmap[h] == j
        if j in hmap.values():
            return False
        va, vb = a.incidence[h], b.incidence[j]
        if vmap.get(va, vb) != vb or (va not in vmap and vb in vmap.values()):
            return False
        if len(a.at(va)) != len(b.at(vb)):
            return False
        if va not in vmap:
            vmap[va] = vb
            trail.append(("v", va))
        hmap[h] = j
        trail.append(("h", h))
        ih, ij = a.involution[h], b.involution[j]
        if (ih == h) != (ij == j):
            return False
        if ih != h and not assign(ih, ij, trail):
            return False
        if cyclic_a is not None:
            # the successor in the cyclic order is forced
            oa, ob = cyclic_a[va], cyclic_b[vb]
            nh = oa[(oa.index(h) + 1) % len(oa)]
            nj = ob[(ob.index(j) + 1) % len(ob)]
            if not assign(nh, nj, trail):
                return False
        return True

    def undo(trail):
        for kind, x in reversed(trail):
            if kind == "h":
                del hmap[x]
            else:
                del vmap[x]

    trail0: list = []
    for h, j in (fixed or {}).items():
        if not assign(h, j, trail0):
            return None

    order = list(a.half_edges)

    def search(i):
        while i < len(order) and order[i] in hmap:
            i += 1
        if i == len(order):
            return True
        h = order[i]
        for j in b.half_edges:
            if j in hmap.values():
                continue
            trail: list = []
            if assign(h, j, trail) and search(i + 1):
                return True
            undo(trail)
        return False

    return dict(hmap) if search(0) else None


def is_isomorphic(a: GraphMorphism, b: GraphMorphism) -> bool:
    """Equivalence of (Γ, φ₁, φ₂) triples."""
    if (a.flavor, a.source, a.target) != (b.flavor, b.source, b.target):
        return False
    if loop_count(a.gamma) != loop_count(b.gamma):
        return False
    fixed = {}
    for la, lb in zip(a.phi1, b.phi1):
        fixed.update(zip(la, lb))
    vfixed = dict(zip(a.phi1_vertex, b.phi1_vertex))
    psi = find_isomorphism(a.gamma, b.gamma, fixed, vfixed)
    if psi is None:
        return False
    # φ₂ must be transported as well
    for la, lb in zip(a.phi2, b.phi2):
        if any(psi[h] != j for h, j in zip(la, lb)):
            return False
    ca, cb = a.gamma.components(), b.gamma.components()
    vmap = {a.gamma.incidence[h]: b.gamma.incidence[j] for h, j in psi.items()}
    return all(cb[vmap[va]] == cb[vb] for va, vb in zip(a.phi2_vertex, b.phi2_vertex))


# -- standard factorization --------------------------------------------------

@dataclass(frozen=True)
class StandardFactorization:
    rooted: GraphMorphism
    rotations: tuple[int, ...]

    def recompose(self) -> GraphMorphism:
        rots = [rotation(k, r, "Forests") for k, r in zip(self.rooted.source, self.rotations)]
        return compose(self.rooted.with_flavor("Forests"), disjoint_union(rots))


def disjoint_union(morphisms: Sequence[GraphMorphism]) -> GraphMorphism:
    flavor = morphisms[0].flavor if morphisms else "Graphs"
    inc, inv, src, tgt, p1v, p1, p2v, p2 = [], [], [], [], [], [], [], []
    voff = hoff = 0
    for f in morphisms:
        g = f.gamma
        inc += [v + voff for v in g.incidence]
        inv += [h + hoff for h in g.involution]
        src += f.source
        tgt += f.target
        p1v += [v + voff for v in f.phi1_vertex]
        p1 += [tuple(h + hoff for h in legs) for legs in f.phi1]
        p2v += [v + voff for v in f.phi2_vertex]
        p2 += [tuple(h + hoff for h in legs) for legs in f.phi2]
        voff += g.n_vertices
        hoff += len(g.incidence)
    return GraphMorphism(flavor, HalfEdgeGraph(voff, tuple(inc), tuple(inv)), tuple(src), tuple(tgt),
                         tuple(p1v), tuple(p1), tuple(p2v), tuple(p2))


def standard_factorization(f: GraphMorphism) -> StandardFactorization:
    """f = f' ∘ ⊔ τ^{k_c} with f' rooted; k_c is the position of the root flag at corolla c."""
    if f.flavor == "Graphs" or not f.gamma.is_forest():
        raise FlavorError("standard factorization needs a Forests morphism")
    roots = f.root_half_edges()
    ks, phi1 = [], []
    for c, legs in enumerate(f.phi1):
        k = legs.index(roots[f.phi1_vertex[c]])
        ks.append(k)
        phi1.append(tuple(legs[(l + k) % len(legs)] for l in range(len(legs))))
    rooted = GraphMorphism("RForests", f.gamma, f.source, f.target, f.phi1_vertex, tuple(phi1),
                           f.phi2_vertex, f.phi2)
    return StandardFactorization(rooted, tuple(ks))


# -- ribbon graphs -------------------------------------------------------------

@dataclass(frozen=True)
class RibbonGraph:
    graph: HalfEdgeGraph
    cyclic_orders: tuple[tuple[int, ...], ...]
    leg_order: tuple[int, ...] = field(default=())

    def __post_init__(self):
        g = self.graph
        if len(self.cyclic_orders) != g.n_vertices:
            raise GraphError("one cyclic order per vertex is required")
        for v, order in enumerate(self.cyclic_orders):
            if sorted(order) != g.at(v):
                raise GraphError(f"cyclic order at vertex {v} does not list its half-edges once")
        if not self.leg_order:
            object.__setattr__(self, "leg_order", tuple(g.legs()))
        elif sorted(self.leg_order) != g.legs():
            raise GraphError("leg identification is not a bijection onto the legs")

    def loop_count(self) -> int:
        return loop_count(self.graph)


def contract_edge(rg: RibbonGraph, h: int) -> RibbonGraph:
    """Contract the edge containing half-edge h, splicing the two cyclic orders."""
    g = rg.graph
    j = g.involution[h]
    if j == h:
        raise InvalidContractionError(f"half-edge {h} is a leg")
    u, v = g.incidence[h], g.incidence[j]
    if u == v:
        raise InvalidContractionError(f"edge ({h}, {j}) is a loop")
    ou, ov = list(rg.cyclic_orders[u]), list(rg.cyclic_orders[v])
    ou = ou[ou.index(h) + 1:] + ou[:ou.index(h)]
    ov = ov[ov.index(j) + 1:] + ov[:ov.index(j)]
    merged = ou + ov
    keep_h = [x for x in g.half_edges if x not in (h, j)]
    hnew = {x: k for k, x in enumerate(keep_h)}
    keep_v = [x for x in g.vertices if x != v]
    vnew = {x: k for k, x in enumerate(keep_v)}
    vnew[v] = vnew[u]
    inc = tuple(vnew[g.incidence[x]] for x in keep_h)
    inv = tuple(hnew[g.involution[x]] for x in keep_h)
    orders = []
    for x in keep_v:
        src = merged if x == u else rg.cyclic_orders[x]
        orders.append(tuple(hnew[y] for y in src))
    return RibbonGraph(HalfEdgeGraph(len(keep_v), inc, inv), tuple(orders),
                       tuple(hnew[x] for x in rg.leg_order))


def ribbon_isomorphic(a: RibbonGraph, b: RibbonGraph) -> bool:
    fixed = dict(zip(a.leg_order, b.leg_order))
    return find_isomorphism(a.graph, b.graph, fixed, None, a.cyclic_orders, b.cyclic_orders) is not None


# -- text format ---------------------------------------------------------------

def parse_graph(text: str) -> RibbonGraph:
    """Lines 'v h h ...' (half-edges at a vertex, in cyclic order) and 'e h h' (an edge)."""
    vertex_lists: list[list[int]] = []
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        try:
            ids = [int(x) for x in rest]
        except ValueError:
            col = raw.index(next(x for x in rest if not re.fullmatch(r"-?\d+", x))) + 1
            raise GraphError(f"line {lineno}, column {col}: expected an integer half-edge id") from None
        if head == "v":
            vertex_lists.append(ids)
        elif head == "e":
            if len(ids) != 2:
                raise GraphError(f"line {lineno}, column 1: an edge line needs exactly two ids")
            pairs.append((ids[0], ids[1]))
        else:
            raise GraphError(f"line {lineno}, column 1: unknown record {head!r}")
    all_ids = sorted(h for vl in vertex_lists for h in vl)
    if all_ids != list(range(len(all_ids))):
        raise GraphError("half-edge ids must be 0..H-1, each at exactly one vertex")
    inc = [0] * len(all_ids)
    for v, vl in enumerate(vertex_lists):
        for h in vl:
            inc[h] = v
    inv = list(range(len(all_ids)))
    for x, y in pairs:
        if not (0 <= x < len(inv) and 0 <= y < len(inv)) or inv[x] != x or inv[y] != y or x == y:
            raise GraphError(f"edge ({x}, {y}) is not a valid pairing")
        inv[x], inv[y] = y, x
    g = HalfEdgeGraph(len(vertex_lists), tuple(inc), tuple(inv))
    return RibbonGraph(g, tuple(tuple(vl) for vl in vertex_lists))


def format_graph(rg: RibbonGraph) -> str:
    lines = ["v " + " ".join(map(str, order)) for order in rg.cyclic_orders]
    lines += [f"e {h} {j}" for h, j in rg.graph.edges()]
    return "\n".join(lines) + "\n"

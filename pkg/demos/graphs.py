"""Graph morphisms and ribbon graphs: composition, standard factorization, contraction."""

from gvblocks.blocks import ribbon_graph_value
from gvblocks.graphs import (
    GraphMorphism, compose, contract_edge, format_graph, identity, loop_count, parse_graph,
    standard_factorization,
)
from gvblocks.pointed_gv import make_cyclic_category

# two corollas with three legs glued once; the root sits at leg 2 of the first
f = GraphMorphism.from_edges((3, 3), [((0, 0), (1, 1))], [[(0, 2), (0, 1), (1, 2), (1, 0)]],
                             flavor="Forests")
sf = standard_factorization(f)
print("rotations:", sf.rotations, " recomposes:", sf.recompose() == f)

tree = GraphMorphism.from_edges((3, 3), [((0, 0), (1, 0))])
loop = GraphMorphism.from_edges((4,), [((0, 0), (0, 2))])
print("loops after composing:", loop_count(compose(loop, tree).gamma))
print("identity is neutral:", compose(identity(tree.target), tree) == tree)

rg = parse_graph("v 0 1 2\nv 3 4 5\nv 6 7 8\ne 0 3\ne 4 6\ne 1 7\n")
C = make_cyclic_category(4, 1, 1)
labels = [1, 3, 0]
print("loops:", rg.loop_count(), " value:", ribbon_graph_value(C, rg, labels))
while rg.graph.n_vertices > 1:
    h = next(h for h, j in rg.graph.edges() if rg.graph.incidence[h] != rg.graph.incidence[j])
    rg = contract_edge(rg, h)
    print(format_graph(rg).replace("\n", "; "), " ->", ribbon_graph_value(C, rg, labels))

from .framed import ArityError, FramedBraid, cable, fb_equals, fb_multiply, format_word, parse_word
from .terms import (
    IDENTITY_OP, MU, MU_OPP, UNIT, Compose, CyclicRotation, FlatMorphism, Gen, Id, Leaf, Mu,
    Partial, Relabel, TermError, Unit, arity, compose_orders, cyclic_act, flatten, inverse_term,
    left_comb, op_arity, op_compose, op_order, op_relabel, rotate_order, source, target,
)
from .relations import (
    BRAIDINGS, base_relations, check_cyclic_structure, check_rbr_relations, random_term,
    relation_instances,
)

"""
Operation terms over μ and the unit, and morphism terms over c, θ.

An object of RBr(n) is a total order of the labels 1..n; OpTerm is a planar
tree that flattens to such an order.  A MorphismTerm flattens to a
FlatMorphism: source order, target order, and the framed braid on
positions.  The strand at source position p carries label source[p] and
ends at position π(β)(p) of the target.

The cyclic action τ relabels ℓ ↦ ℓ-1 mod n+1 (label 1 becomes the new
output) and is pushed through terms with

    τ(a ∘_1 b) = τ(b) ∘_m τ(a)            m = arity(b) ≥ 1
    τ(a ∘_1 u) = τ²(a) ∘_n u              n = arity(a)
    τ(a ∘_i b) = τ(a) ∘_{i-1} b           i > 1
    τ(f ∘ g)   = τ(f) ∘ τ(g)
    τ(s·f)     = s'·τ^j(f)                 τ s = s' τ^j in Σ_{n+1}

with base values on θ and the four braiding flavors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .framed import ArityError, FramedBraid, cable

__all__ = [
    "TermError",
    "Leaf",
    "Unit",
    "Mu",
    "OpTerm",
    "MU",
    "MU_OPP",
    "IDENTITY_OP",
    "UNIT",
    "op_order",
    "op_arity",
    "op_compose",
    "op_relabel",
    "left_comb",
    "Gen",
    "Id",
    "Compose",
    "Partial",
    "Relabel",
    "MorphismTerm",
    "FlatMorphism",
    "flatten",
    "source",
    "target",
    "arity",
    "inverse_term",
    "CyclicRotation",
    "cyclic_act",
    "rotate_order",
    "compose_orders",
]


class TermError(ValueError):
    pass


# -- operations (objects) -------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    label: int


@dataclass(frozen=True)
class Unit:
    pass


@dataclass(frozen=True)
class Mu:
    left: "OpTerm"
    right: "OpTerm"


OpTerm = Union[Leaf, Unit, Mu]

IDENTITY_OP = Leaf(1)
UNIT = Unit()
MU = Mu(Leaf(1), Leaf(2))
MU_OPP = Mu(Leaf(2), Leaf(1))


def op_order(t: OpTerm) -> tuple[int, ...]:
    if isinstance(t, Leaf):
        return (t.label,)
    if isinstance(t, Unit):
        return ()
    return op_order(t.left) + op_order(t.right)


def op_arity(t: OpTerm) -> int:
    return len(op_order(t))


def _check_order(order: Sequence[int]) -> None:
    if sorted(order) != list(range(1, len(order) + 1)):
        raise TermError(f"labels {tuple(order)} are not 1..{len(order)}")


def op_relabel(t: OpTerm, perm: Sequence[int]) -> OpTerm:
    """Label ℓ becomes perm[ℓ-1]."""
    if isinstance(t, Leaf):
        return Leaf(perm[t.label - 1])
    if isinstance(t, Unit):
        return t
    return Mu(op_relabel(t.left, perm), op_relabel(t.right, perm))


def op_compose(a: OpTerm, i: int, b: OpTerm) -> OpTerm:
    """a ∘_i b: substitute b into the leaf labelled i."""
    n, m = op_arity(a), op_arity(b)
    if not 1 <= i <= n:
        raise TermError(f"no input {i} in an operation of arity {n}")

    def shift_a(x):
        return x if x < i else x + m - 1

    def walk(t):
        if isinstance(t, Leaf):
            if t.label == i:
                return op_relabel(b, [x + i - 1 for x in range(1, m + 1)])
            return Leaf(shift_a(t.label))
        if isinstance(t, Unit):
            return t
        return Mu(walk(t.left), walk(t.right))

    return walk(a)


def compose_orders(sigma: Sequence[int], i: int, rho: Sequence[int]) -> tuple[int, ...]:
    m = len(rho)
    out = []
    for x in sigma:
        if x == i:
            out += [y + i - 1 for y in rho]
        else:
            out.append(x if x < i else x + m - 1)
    return tuple(out)


def left_comb(order: Sequence[int]) -> OpTerm:
    if not order:
        return UNIT
    t: OpTerm = Leaf(order[0])
    for x in order[1:]:
        t = Mu(t, Leaf(x))
    return t


def rotate_order(order: Sequence[int], power: int = 1) -> tuple[int, ...]:
    """Object-level cyclic action: ℓ ↦ ℓ-1 mod n+1, read from the new output."""
    order = tuple(order)
    for _ in range(power % (len(order) + 1)):
        m = len(order) + 1
        full = (0,) + order
        k = full.index(1)
        order = tuple((full[(s + k) % m] - 1) % m for s in range(1, m))
    return order


# -- morphism terms -------------------------------------------------------

GENERATORS = {
    # name: (source, target, braid word on 1 or 2 strands)
    "theta": (IDENTITY_OP, IDENTITY_OP, "t1"),
    "theta_inv": (IDENTITY_OP, IDENTITY_OP, "t1^-1"),
    "c": (MU, MU_OPP, "s1"),
    "c_inv": (MU_OPP, MU, "s1^-1"),
    "cbar": (MU_OPP, MU, "s1"),
    "cbar_inv": (MU, MU_OPP, "s1^-1"),
}

_INVERSE_NAME = {"theta": "theta_inv", "theta_inv": "theta", "c": "c_inv", "c_inv": "c",
                 "cbar": "cbar_inv", "cbar_inv": "cbar"}


@dataclass(frozen=True)
class Gen:
    name: str

    def __post_init__(self):
        if self.name not in GENERATORS:
            raise TermError(f"unknown generator {self.name!r}")


@dataclass(frozen=True)
class Id:
    op: OpTerm


@dataclass(frozen=True)
class Compose:
    """outer ∘ inner (inner first)."""
    outer: "MorphismTerm"
    inner: "MorphismTerm"


@dataclass(frozen=True)
class Partial:
    """outer ∘_i inner."""
    outer: "MorphismTerm"
    i: int
    inner: "MorphismTerm"


@dataclass(frozen=True)
class Relabel:
    """Label ℓ becomes perm[ℓ-1] in source and target."""
    term: "MorphismTerm"
    perm: tuple[int, ...]


MorphismTerm = Union[Gen, Id, Compose, Partial, Relabel]


@dataclass(frozen=True)
class FlatMorphism:
    source: tuple[int, ...]
    target: tuple[int, ...]
    braid: FramedBraid

    def __mul__(self, other: "FlatMorphism") -> "FlatMorphism":
        if other.target != self.source:
            raise TermError(f"cannot compose: {other.target} is not {self.source}")
        return FlatMorphism(other.source, self.target, self.braid * other.braid)


def source(m: MorphismTerm) -> OpTerm:
    if isinstance(m, Gen):
        return GENERATORS[m.name][0]
    if isinstance(m, Id):
        return m.op
    if isinstance(m, Compose):
        return source(m.inner)
    if isinstance(m, Partial):
        return op_compose(source(m.outer), m.i, source(m.inner))
    return op_relabel(source(m.term), m.perm)


def target(m: MorphismTerm) -> OpTerm:
    if isinstance(m, Gen):
        return GENERATORS[m.name][1]
    if isinstance(m, Id):
        return m.op
    if isinstance(m, Compose):
        return target(m.outer)
    if isinstance(m, Partial):
        return op_compose(target(m.outer), m.i, target(m.inner))
    return op_relabel(target(m.term), m.perm)


def arity(m: MorphismTerm) -> int:
    return op_arity(source(m))


def flatten(m: MorphismTerm) -> FlatMorphism:
    if isinstance(m, Gen):
        src, tgt, word = GENERATORS[m.name]
        n = op_arity(src)
        return FlatMorphism(op_order(src), op_order(tgt), FramedBraid.parse(n, word))
    if isinstance(m, Id):
        order = op_order(m.op)
        _check_order(order)
        return FlatMorphism(order, order, FramedBraid.identity(len(order)))
    if isinstance(m, Compose):
        return flatten(m.outer) * flatten(m.inner)
    if isinstance(m, Partial):
        f, g = flatten(m.outer), flatten(m.inner)
        n, k = len(f.source), len(g.source)
        if not 1 <= m.i <= n:
            raise TermError(f"attachment at input {m.i} of an arity {n} morphism")
        pos = f.source.index(m.i)
        widths = [1] * n
        widths[pos] = k
        total = n - 1 + k
        braid = cable(f.braid, widths) * g.braid.shifted(pos, total)
        return FlatMorphism(compose_orders(f.source, m.i, g.source),
                            compose_orders(f.target, m.i, g.target), braid)
    if isinstance(m, Relabel):
        f = flatten(m.term)
        perm = tuple(m.perm)
        if sorted(perm) != list(range(1, len(f.source) + 1)):
            raise TermError(f"{perm} is not a permutation of 1..{len(f.source)}")
        return FlatMorphism(tuple(perm[x - 1] for x in f.source),
                            tuple(perm[x - 1] for x in f.target), f.braid)
    raise TermError(f"not a morphism term: {m!r}")


def inverse_term(m: MorphismTerm) -> MorphismTerm:
    if isinstance(m, Gen):
        return Gen(_INVERSE_NAME[m.name])
    if isinstance(m, Id):
        return m
    if isinstance(m, Compose):
        return Compose(inverse_term(m.inner), inverse_term(m.outer))
    if isinstance(m, Partial):
        return Partial(inverse_term(m.outer), m.i, inverse_term(m.inner))
    return Relabel(inverse_term(m.term), m.perm)


# -- cyclic action --------------------------------------------------------

@dataclass(frozen=True)
class CyclicRotation:
    arity: int
    power: int = 1

    def __post_init__(self):
        object.__setattr__(self, "power", self.power % (self.arity + 1))


def _twist_on_label_one(op: OpTerm, name: str) -> MorphismTerm:
    return Partial(Id(op), 1, Gen(name))


# τ on the braidings.  Each value is the unique element of RB_2 matching the
# rigid rotation of the three-holed sphere; see the arc-groupoid oracle in tests.
_TAU_BRAIDING = {
    "c": Compose(Gen("cbar_inv"), _twist_on_label_one(MU, "theta_inv")),
    "c_inv": Compose(_twist_on_label_one(MU, "theta"), Gen("cbar")),
    "cbar": Compose(_twist_on_label_one(MU, "theta_inv"), Gen("c_inv")),
    "cbar_inv": Compose(Gen("c"), _twist_on_label_one(MU, "theta")),
}


def _tau_perm(s: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    # τ s = s' τ^j with s' fixing the output; returns (j, s' on 1..n)
    n = len(s)
    m = n + 1
    full = (0,) + tuple(s)
    j = full.index(1)
    T = lambda x: (x - 1) % m
    s_new = tuple(T(full[(x + j) % m]) for x in range(m))
    assert s_new[0] == 0
    return j, s_new[1:]


def _tau_op(t: OpTerm) -> OpTerm:
    order = op_order(t)
    if not order:
        return t
    return left_comb(rotate_order(order))


def _tau(m: MorphismTerm) -> MorphismTerm:
    if isinstance(m, Gen):
        if m.name in ("theta", "theta_inv"):
            return m
        return _TAU_BRAIDING[m.name]
    if isinstance(m, Id):
        return Id(_tau_op(m.op))
    n = arity(m)
    if n == 0:
        return m
    if isinstance(m, Compose):
        return Compose(_tau(m.outer), _tau(m.inner))
    if isinstance(m, Partial):
        k = arity(m.inner)
        if m.i > 1:
            return Partial(_tau(m.outer), m.i - 1, m.inner)
        if k == 0:
            return Partial(_tau(_tau(m.outer)), arity(m.outer), m.inner)
        return Partial(_tau(m.inner), k, _tau(m.outer))
    if isinstance(m, Relabel):
        j, s_new = _tau_perm(m.perm)
        inner = m.term
        for _ in range(j):
            inner = _tau(inner)
        return Relabel(inner, s_new)
    raise TermError(f"not a morphism term: {m!r}")


def cyclic_act(m: Union[MorphismTerm, OpTerm], rot: CyclicRotation | int = 1):
    """Apply τ^power to an operation or morphism term."""
    is_op = isinstance(m, (Leaf, Unit, Mu))
    n = op_arity(m) if is_op else arity(m)
    if isinstance(rot, CyclicRotation):
        if rot.arity != n:
            raise ArityError(f"rotation of arity {rot.arity} applied to a term of arity {n}")
        power = rot.power
    else:
        power = rot % (n + 1)
    for _ in range(power):
        m = _tau_op(m) if is_op else _tau(m)
    return m

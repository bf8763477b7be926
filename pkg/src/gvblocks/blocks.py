"""
Spaces of conformal blocks for a pointed category C, at semisimple scale.

The coend 𝔽 = ⊕_h C_h ⊗ C_{g₀-h} has one summand per group element, all of
degree g₀.  The block space

    V_{g,n}(a₁,…,aₙ) = C(K, ((a₁⊗a₂)⊗…⊗aₙ)⊗𝔽^{⊗g})

has one basis vector for each h⃗ ∈ G^g (the summands picked in the 𝔽
factors) when a₁+…+aₙ = (1-g)·g₀, and is zero otherwise.  Bases are in
lexicographic order of h⃗.  Operators are sparse matrices whose entries are
exact roots of unity or CycNumbers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .exact_scalars import CycNumber, RootOfUnity
from .graphs import GraphError, RibbonGraph, loop_count
from .pointed_gv import PointedGVCategory
from .reports import AxiomReport, scalar_json
from .ribbon_braid import ArityError, FramedBraid, parse_word
from .ribbon_braid.terms import Compose, Gen, Id, MorphismTerm, Partial, Relabel, flatten
from .ribbon_braid.framed import cable

__all__ = [
    "CoendF",
    "BlockSpace",
    "BlockOperator",
    "LabelError",
    "coend",
    "block_space",
    "handle_twist",
    "boundary_twist",
    "boundary_braiding",
    "rbr_action",
    "term_action",
    "excision_check",
    "ribbon_graph_value",
    "acting_group",
    "handlebody_relations_check",
    "dimension_oracle",
]

Scalar = Union[RootOfUnity, CycNumber]


class LabelError(ValueError):
    pass


@dataclass(frozen=True)
class CoendF:
    """𝔽 as a list of summands (h, g₀-h); every summand has degree g₀."""
    summands: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    degree: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.summands)


def coend(C: PointedGVCategory) -> CoendF:
    G = C.group
    return CoendF(tuple((h, G.sub(C.g0, h)) for h in G.elements()), C.g0)


@dataclass(frozen=True, eq=False)
class BlockSpace:
    category: PointedGVCategory
    genus: int
    labels: tuple[tuple[int, ...], ...]
    basis: tuple[tuple[tuple[int, ...], ...], ...] = field(default=(), repr=False)
    condition: bool = False

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, hvec) -> int:
        return self.basis.index(tuple(hvec))

    def _key(self):
        return (id(self.category), self.genus, self.labels)

    def __eq__(self, other):
        return isinstance(other, BlockSpace) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def with_labels(self, labels) -> "BlockSpace":
        return block_space(self.category, self.genus, labels)

    def describe(self) -> dict:
        return {
            "g": self.genus,
            "labels": [list(a) for a in self.labels],
            "dim": self.dim,
            "condition": self.condition,
        }

    def __repr__(self):
        labs = ",".join(_fmt(a) for a in self.labels)
        return f"V_{{{self.genus},{self.n}}}({labs}) dim {self.dim}"


def _fmt(a) -> str:
    return str(a[0]) if len(a) == 1 else "(" + ",".join(map(str, a)) + ")"


def block_space(C: PointedGVCategory, g: int, labels: Sequence) -> BlockSpace:
    if g < 0:
        raise ValueError(f"genus must be non-negative, got {g}")
    G = C.group
    labs = tuple(C.el(a) for a in labels)
    target = G.scale(1 - g, C.g0)
    cond = G.add(*labs) == target if labs else G.zero == target
    basis = tuple(itertools.product(G.elements(), repeat=g)) if cond else ()
    return BlockSpace(C, g, labs, basis, cond)


def dimension_oracle(C: PointedGVCategory, g: int, labels: Sequence) -> int:
    """
    Count simple summands of a₁⊗…⊗aₙ⊗𝔽^{⊗g} isomorphic to K by expanding the
    tensor product summand by summand (no closed formula).
    """
    G = C.group
    degrees = [G.zero]
    for a in labels:
        degrees = [G.add(d, C.el(a)) for d in degrees]
    F = [G.add(h, G.sub(C.g0, h)) for h in G.elements()]
    for _ in range(g):
        degrees = [G.add(d, f) for d in degrees for f in F]
    return sum(1 for d in degrees if d == C.g0)


# -- operators ---------------------------------------------------------------

def _add(x: Scalar, y: Scalar) -> CycNumber:
    return CycNumber._coerce(x) + CycNumber._coerce(y)


def _is_zero(x: Scalar) -> bool:
    return isinstance(x, CycNumber) and x.is_zero()


@dataclass(frozen=True, eq=False)
class BlockOperator:
    source: BlockSpace
    target: BlockSpace
    entries: dict = field(default_factory=dict)

    @classmethod
    def identity(cls, space: BlockSpace) -> "BlockOperator":
        return cls(space, space, {(k, k): RootOfUnity(0) for k in range(space.dim)})

    @classmethod
    def diagonal(cls, space: BlockSpace, values: Sequence[Scalar]) -> "BlockOperator":
        return cls(space, space, {(k, k): v for k, v in enumerate(values)})

    def __matmul__(self, other: "BlockOperator") -> "BlockOperator":
        """self ∘ other: other acts first."""
        if other.target != self.source:
            raise LabelError(f"cannot compose: {other.target!r} is not {self.source!r}")
        by_row: dict[int, list] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: dict = {}
        for (r, mid), v in self.entries.items():
            for c, w in by_row.get(mid, ()):
                x = v * w
                out[(r, c)] = _add(out[(r, c)], x) if (r, c) in out else x
        return BlockOperator(other.source, self.target, {k: v for k, v in out.items() if not _is_zero(v)})

    def inverse(self) -> "BlockOperator":
        """Inverse of a monomial operator (one entry per row and column)."""
        rows = [r for r, _ in self.entries]
        cols = [c for _, c in self.entries]
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols) or \
                len(rows) != self.source.dim or self.source.dim != self.target.dim:
            raise ValueError("only monomial operators are inverted here")
        return BlockOperator(self.target, self.source,
                             {(c, r): v.inverse() for (r, c), v in self.entries.items()})

    def entry(self, row: int, col: int) -> CycNumber:
        v = self.entries.get((row, col))
        return CycNumber(1, [0]) if v is None else CycNumber._coerce(v)

    def is_identity(self) -> bool:
        return self == BlockOperator.identity(self.source)

    def is_diagonal(self) -> bool:
        return self.source == self.target and all(r == c for r, c in self.entries)

    def diagonal_values(self) -> list[CycNumber]:
        if not self.is_diagonal():
            raise ValueError("operator is not diagonal")
        return [self.entry(k, k) for k in range(self.source.dim)]

    def __eq__(self, other):
        if not isinstance(other, BlockOperator):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        keys = set(self.entries) | set(other.entries)
        for k in keys:
            x, y = self.entries.get(k), other.entries.get(k)
            if isinstance(x, RootOfUnity) and isinstance(y, RootOfUnity):
                if x.t != y.t:
                    return False
            elif self.entry(*k) != other.entry(*k):
                return False
        return True

    __hash__ = None

    def to_json(self) -> dict:
        return {
            "source": self.source.describe(),
            "target": self.target.describe(),
            "entries": [[r, c, scalar_json(self.entry(r, c))] for r, c in sorted(self.entries)],
        }

    def __repr__(self):
        return f"BlockOperator({self.source!r} -> {self.target!r}, {len(self.entries)} entries)"


def _own(C: PointedGVCategory, space: BlockSpace) -> None:
    if space.category is not C:
        raise LabelError("block space belongs to a different category")


def handle_twist(C: PointedGVCategory, space: BlockSpace, m: int) -> BlockOperator:
    """Dehn twist around handle m: h⃗ ↦ θ(h_m) h⃗."""
    _own(C, space)
    if not 1 <= m <= space.genus:
        raise IndexError(f"handle index {m} out of range 1..{space.genus}")
    return BlockOperator.diagonal(space, [C.theta(h[m - 1]) for h in space.basis])


def boundary_twist(C: PointedGVCategory, space: BlockSpace, i: int, power: int = 1) -> BlockOperator:
    _own(C, space)
    if not 1 <= i <= space.n:
        raise IndexError(f"boundary index {i} out of range 1..{space.n}")
    t = C.theta(space.labels[i - 1]) ** power
    return BlockOperator.diagonal(space, [t] * space.dim)


def _braiding_scalar(C: PointedGVCategory, labels, i: int) -> RootOfUnity:
    # ((p⊗a)⊗b) → (p⊗(a⊗b)) → (p⊗(b⊗a)) → ((p⊗b)⊗a), p the left-normed prefix
    G = C.group
    a, b = labels[i - 1], labels[i]
    p = G.add(*labels[: i - 1]) if i > 1 else G.zero
    return C.lam[(p, a, b)] * C.tau[(a, b)] * C.lam[(p, b, a)].inverse()


def boundary_braiding(C: PointedGVCategory, space: BlockSpace, i: int,
                      inverse: bool = False) -> BlockOperator:
    """
    Exchange of boundaries i and i+1.  The result lands in the space with the
    two labels swapped; inverse=True gives the inverse of the braiding that
    ends in the present space.
    """
    _own(C, space)
    if not 1 <= i <= space.n - 1:
        raise IndexError(f"braiding index {i} out of range 1..{space.n - 1}")
    labs = list(space.labels)
    labs[i - 1], labs[i] = labs[i], labs[i - 1]
    other = space.with_labels(labs)
    if inverse:
        s = _braiding_scalar(C, other.labels, i).inverse()
    else:
        s = _braiding_scalar(C, space.labels, i)
    return BlockOperator(space, other, {(k, k): s for k in range(space.dim)})


Letters = list[tuple[str, int, int]]


def _letters(braid) -> tuple[int | None, Letters]:
    if isinstance(braid, FramedBraid):
        return braid.n, braid.letters()
    if isinstance(braid, str):
        return None, parse_word(braid)
    return None, list(braid)


def rbr_action(C: PointedGVCategory, space: BlockSpace, braid) -> BlockOperator:
    """
    Image of a framed braid: σ_i ↦ boundary_braiding(i), t_i ↦ boundary_twist(i).
    Words are read as composites, the rightmost letter acting first.  A word
    given as a string or letter list is applied letter by letter without
    normalizing, so equal braids written differently exercise the relations.
    """
    _own(C, space)
    n, letters = _letters(braid)
    if n is not None and n != space.n:
        raise ArityError(f"braid on {n} strands acting on {space.n} boundary labels")
    op = BlockOperator.identity(space)
    for kind, i, e in reversed(letters):
        cur = op.target
        if kind == "t":
            if not 1 <= i <= cur.n:
                raise ArityError(f"t{i} on {cur.n} boundary labels")
            op = boundary_twist(C, cur, i, e) @ op
        else:
            if not 1 <= i < cur.n:
                raise ArityError(f"s{i} on {cur.n} boundary labels")
            for _ in range(abs(e)):
                op = boundary_braiding(C, op.target, i, inverse=e < 0) @ op
    return op


def _term_factors(m: MorphismTerm) -> list[FramedBraid]:
    """The braid of a term as an unmultiplied product, leftmost factor last to act."""
    if isinstance(m, (Gen, Id)):
        return [flatten(m).braid]
    if isinstance(m, Compose):
        return _term_factors(m.outer) + _term_factors(m.inner)
    if isinstance(m, Relabel):
        return _term_factors(m.term)
    if isinstance(m, Partial):
        f, g = flatten(m.outer), flatten(m.inner)
        n, k = len(f.source), len(g.source)
        pos = f.source.index(m.i)
        widths = [1] * n
        widths[pos] = k
        total = n - 1 + k
        return [cable(f.braid, widths)] + [b.shifted(pos, total) for b in _term_factors(m.inner)]
    raise TypeError(f"not a morphism term: {m!r}")


def term_action(C: PointedGVCategory, space: BlockSpace, m: MorphismTerm) -> BlockOperator:
    """Operator of a morphism term, built factor by factor along the term's structure."""
    op = BlockOperator.identity(space)
    for b in reversed(_term_factors(m)):
        op = rbr_action(C, op.target, b) @ op
    return op


# -- excision and sewing -------------------------------------------------------

def acting_group(g: int, n: int) -> str:
    # the closed solid torus is the exception: its automorphism group maps to
    # the handlebody group without being isomorphic to it
    if (g, n) == (1, 0):
        return "Aut(o_{1,0})-action"
    return f"Map(H_{{{g},{n}}})-action"


def excision_check(C: PointedGVCategory, g: int, n: int, labels: Sequence) -> AxiomReport:
    """
    Excision: ⊕_y V_{g,n+2}(a⃗, y, g₀-y) ≅ V_{g+1,n}(a⃗) through the basis
    bijection (y, h⃗) ↔ (h⃗, y); the new handle is the last one.  Sewing:
    ⊕_y V_{g₁,n₁+1}(a⃗', y) ⊗ V_{g₂,n₂+1}(a⃗'', g₀-y) ≅ V_{g₁+g₂,n₁+n₂}(a⃗', a⃗'')
    through (y, h⃗', h⃗'') ↔ (h⃗', h⃗''), for every split of genus and labels.
    """
    labs = [C.el(a) for a in labels]
    if len(labs) != n:
        raise LabelError(f"{len(labs)} labels given for n = {n}")
    G = C.group
    rep = AxiomReport(f"excision[{C.name}](g={g}, n={n}, labels={[_fmt(a) for a in labs]})")
    big = block_space(C, g + 1, labs)
    rep.info["acting_group"] = acting_group(g + 1, n)
    images: list = []
    total = 0
    for y in G.elements():
        small = block_space(C, g, labs + [y, G.sub(C.g0, y)])
        total += small.dim
        for h in small.basis:
            image = h + (y,)
            images.append(image)
            rep.check("excision_degree", (y, h), True, image in big.basis, image in big.basis)
            if image not in big.basis:
                continue
            col = big.index(image)
            for m in range(1, g + 1):
                lhs = handle_twist(C, big, m).entry(col, col)
                rhs = handle_twist(C, small, m).entry(small.index(h), small.index(h))
                rep.check("excision_handle_twist", (y, h, m), lhs, rhs)
            # the new handle twists by the balancing of the excised label pair
            lhs = handle_twist(C, big, g + 1).entry(col, col)
            rhs = boundary_twist(C, small, n + 1).entry(small.index(h), small.index(h))
            rep.check("excision_new_handle", (y, h), lhs, rhs)
    rep.check("excision_dimension", (g, n), total, big.dim)
    rep.check("excision_bijection", (g, n), sorted(images), list(big.basis))
    for g1 in range(g + 1):
        g2 = g - g1
        for n1 in range(n + 1):
            a1, a2 = labs[:n1], labs[n1:]
            glued = block_space(C, g, labs)
            total = 0
            images = []
            for y in G.elements():
                left = block_space(C, g1, a1 + [y])
                right = block_space(C, g2, a2 + [G.sub(C.g0, y)])
                total += left.dim * right.dim
                images += [h1 + h2 for h1 in left.basis for h2 in right.basis]
            rep.check("sewing_dimension", (g1, n1), total, glued.dim)
            rep.check("sewing_bijection", (g1, n1), sorted(images), list(glued.basis))
    return rep.finish()


def handlebody_relations_check(C: PointedGVCategory, g: int, labels: Sequence) -> AxiomReport:
    """Relations among the operator families on one block space, with the acting-group label."""
    space = block_space(C, g, labels)
    n = space.n
    rep = AxiomReport(f"handlebody_relations[{C.name}]{space!r}")
    rep.info["acting_group"] = acting_group(g, n)
    rep.info["space"] = space.describe()
    for m in range(1, g + 1):
        t = handle_twist(C, space, m)
        rep.check("handle_twist_invertible", (m,), True, (t @ t.inverse()).is_identity(),
                  (t @ t.inverse()).is_identity())
    for m1, m2 in itertools.combinations(range(1, g + 1), 2):
        a, b = handle_twist(C, space, m1), handle_twist(C, space, m2)
        rep.check("handle_twists_commute", (m1, m2), True, a @ b == b @ a, a @ b == b @ a)
    for i in range(1, n):
        s = boundary_braiding(C, space, i)
        lhs = s @ boundary_twist(C, space, i)
        rhs = boundary_twist(C, s.target, i + 1) @ s
        rep.check("exchange", (i,), True, lhs == rhs, lhs == rhs)
        back = boundary_braiding(C, s.target, i, inverse=True) @ s
        rep.check("braiding_inverse", (i,), True, back.is_identity(), back.is_identity())
        if i + 1 < n:
            w1 = rbr_action(C, space, [("s", i, 1), ("s", i + 1, 1), ("s", i, 1)])
            w2 = rbr_action(C, space, [("s", i + 1, 1), ("s", i, 1), ("s", i + 1, 1)])
            rep.check("braid_relation", (i,), True, w1 == w2, w1 == w2)
    return rep.finish()


# -- ribbon graphs -------------------------------------------------------------

def ribbon_graph_value(C: PointedGVCategory, rg: RibbonGraph, labels: Sequence) -> BlockSpace:
    """Block space of a connected ribbon graph: one 𝔽 factor per independent loop."""
    if rg.graph.n_components() != 1:
        raise GraphError("ribbon_graph_value needs a connected graph")
    if len(labels) != len(rg.leg_order):
        raise LabelError(f"{len(labels)} labels for {len(rg.leg_order)} legs")
    return block_space(C, loop_count(rg.graph), labels)

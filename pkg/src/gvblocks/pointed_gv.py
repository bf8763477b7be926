"""
Pointed balanced braided Grothendieck-Verdier categories Vect_G^{ω,g₀}.

Simple objects are the degrees g ∈ G, every hom space between tensor
products of simples is 0- or 1-dimensional, and all structure is a table of
roots of unity.  Conventions:

* the associator (a⊗b)⊗c → a⊗(b⊗c) is the scalar λ(a,b,c);
* the braiding c_{a,b}: a⊗b → b⊗a is τ(a,b) times the flip (the opposite
  convention is obtained from the inverse cocycle);
* the dualizing object is K = C_{g₀} with g₀ = −2h₀, D(g) = g₀ − g;
* θ(g) = q(g+h₀)/q(h₀) where q(g) = τ(g,g);
* ψ(x,y): C(K, x⊗y) → C(K, y⊗x) is fixed by compatibility with θ,
  ψ(x,y) = τ(y,x)⁻¹ θ(x)⁻¹, supported on x+y = g₀.

Tables hold RootOfUnity values (exponents in Q/Z), which keeps the
exhaustive suites fast; scalar() hands out CycNumbers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .exact_scalars import CycNumber, RootOfUnity
from .reports import AxiomReport

__all__ = [
    "FiniteAbelianGroup",
    "QuadraticForm",
    "AbelianCocycle",
    "PointedGVCategory",
    "CocycleValidationError",
    "ArgumentError",
    "ZeroSupport",
    "ZERO_SUPPORT",
    "make_cyclic_category",
    "make_product_category",
    "trivial_category",
    "dual",
    "scalar",
    "check_pivotal_axioms",
    "check_hexagon_H",
    "check_balanced_braided_axioms",
    "check_cocycle",
    "standard_test_categories",
]

Element = tuple[int, ...]
ONE = RootOfUnity(0)


class CocycleValidationError(ValueError):
    def __init__(self, axiom: str, witness: tuple, detail: str = ""):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"{axiom} violated at {witness}" + (f": {detail}" if detail else ""))


class ArgumentError(TypeError):
    pass


class ZeroSupport:
    """The hom space is zero: there is no scalar to report."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "ZERO_SUPPORT"

    def __bool__(self):
        return False


ZERO_SUPPORT = ZeroSupport()


@dataclass(frozen=True)
class FiniteAbelianGroup:
    factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(n) for n in self.factors))
        if any(n < 1 for n in self.factors):
            raise ValueError(f"cyclic orders must be positive: {self.factors}")

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    def __len__(self):
        return self.order

    def elements(self) -> list[Element]:
        return [tuple(e) for e in itertools.product(*(range(n) for n in self.factors))]

    def __iter__(self):
        return iter(self.elements())

    @property
    def zero(self) -> Element:
        return (0,) * len(self.factors)

    def element(self, x) -> Element:
        if isinstance(x, int):
            if len(self.factors) != 1:
                raise ArgumentError(f"integer element needs a cyclic group, got factors {self.factors}")
            x = (x,)
        x = tuple(x)
        if len(x) != len(self.factors):
            raise ArgumentError(f"element {x} has wrong length for factors {self.factors}")
        return tuple(int(a) % n for a, n in zip(x, self.factors))

    def add(self, *xs) -> Element:
        out = [0] * len(self.factors)
        for x in xs:
            for k, a in enumerate(x):
                out[k] += a
        return tuple(a % n for a, n in zip(out, self.factors))

    def neg(self, x) -> Element:
        return tuple(-a % n for a, n in zip(x, self.factors))

    def sub(self, x, y) -> Element:
        return self.add(x, self.neg(y))

    def scale(self, k: int, x) -> Element:
        return tuple(k * a % n for a, n in zip(x, self.factors))


@dataclass
class QuadraticForm:
    group: FiniteAbelianGroup
    values: dict

    def __call__(self, g) -> RootOfUnity:
        return self.values[g]

    def bichar(self, g, h) -> RootOfUnity:
        G = self.group
        return self.values[G.add(g, h)] / (self.values[g] * self.values[h])

    def instances(self) -> Iterable[tuple[str, tuple, RootOfUnity, RootOfUnity]]:
        G = self.group
        els = G.elements()
        for g in els:
            yield "even_form", (g,), self.values[G.neg(g)], self.values[g]
        for g1, g2, h in itertools.product(els, repeat=3):
            yield "bicharacter", (g1, g2, h), self.bichar(G.add(g1, g2), h), \
                self.bichar(g1, h) * self.bichar(g2, h)

    def violations(self):
        return (v for v in self.instances() if v[2] != v[3])


@dataclass
class AbelianCocycle:
    group: FiniteAbelianGroup
    lam: dict
    tau: dict

    def quadratic_form(self) -> QuadraticForm:
        return QuadraticForm(self.group, {g: self.tau[(g, g)] for g in self.group.elements()})

    def instances(self) -> Iterable[tuple[str, tuple, RootOfUnity, RootOfUnity]]:
        """Every axiom instance, quadratic form first, then pentagon and hexagons."""
        yield from self.quadratic_form().instances()
        G, lam, tau = self.group, self.lam, self.tau
        els = G.elements()
        add = G.add
        for a, b, c, d in itertools.product(els, repeat=4):
            lhs = lam[(b, c, d)] * lam[(a, add(b, c), d)] * lam[(a, b, c)]
            rhs = lam[(add(a, b), c, d)] * lam[(a, b, add(c, d))]
            yield "pentagon", (a, b, c, d), lhs, rhs
        for x, y, z in itertools.product(els, repeat=3):
            lhs = lam[(y, z, x)] * tau[(x, add(y, z))] * lam[(x, y, z)]
            rhs = tau[(x, z)] * lam[(y, x, z)] * tau[(x, y)]
            yield "hexagon_1", (x, y, z), lhs, rhs
            lhs = (lam[(z, x, y)] * lam[(x, y, z)]).inverse() * tau[(add(x, y), z)]
            rhs = tau[(x, z)] * lam[(x, z, y)].inverse() * tau[(y, z)]
            yield "hexagon_2", (x, y, z), lhs, rhs

    def violations(self):
        return (v for v in self.instances() if v[2] != v[3])

    def validate(self) -> None:
        for axiom, witness, lhs, rhs in self.violations():
            raise CocycleValidationError(axiom, witness, f"{lhs!r} != {rhs!r}")


@dataclass
class PointedGVCategory:
    group: FiniteAbelianGroup
    cocycle: AbelianCocycle
    h0: Element
    name: str = ""
    validated: bool = False
    _theta: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        G = self.group
        self.h0 = G.element(self.h0)
        self.g0 = G.scale(-2, self.h0)
        self.q = self.cocycle.quadratic_form()
        qh = self.q(self.h0)
        self._theta = {g: self.q(G.add(g, self.h0)) / qh for g in G.elements()}

    @property
    def lam(self) -> dict:
        return self.cocycle.lam

    @property
    def tau(self) -> dict:
        return self.cocycle.tau

    @property
    def is_r_category(self) -> bool:
        """The dualizing object is the monoidal unit."""
        return self.g0 == self.group.zero

    def el(self, x) -> Element:
        return self.group.element(x)

    def theta(self, g) -> RootOfUnity:
        return self._theta[self.el(g)]

    def eta(self, g) -> RootOfUnity:
        return self.q.bichar(self.el(g), self.h0)

    def describe(self) -> dict:
        return {
            "name": self.name,
            "factors": list(self.group.factors),
            "order": self.group.order,
            "h0": list(self.h0),
            "g0": list(self.g0),
            "r_category": self.is_r_category,
        }


def _cyclic_root_order(n: int) -> int:
    return 2 * n if n % 2 == 0 else n


def _build(G: FiniteAbelianGroup, lam_fn: Callable, tau_fn: Callable, h0, name: str,
           validate: bool) -> PointedGVCategory:
    els = G.elements()
    lam = {(a, b, c): lam_fn(a, b, c) for a, b, c in itertools.product(els, repeat=3)}
    tau = {(a, b): tau_fn(a, b) for a, b in itertools.product(els, repeat=2)}
    return from_tables(G, lam, tau, h0, name=name, validate=validate)


def from_tables(G: FiniteAbelianGroup, lam: dict, tau: dict, h0, name: str = "",
                validate: bool = True) -> PointedGVCategory:
    """
    Category from explicit (λ, τ) tables keyed by element tuples.  Values may
    be RootOfUnity, CycNumber roots of unity, or (k, N) exponent pairs.
    """
    els = G.elements()
    tables = []
    for table, keys in ((lam, itertools.product(els, repeat=3)), (tau, itertools.product(els, repeat=2))):
        conv = {}
        for key in keys:
            if key not in table:
                raise CocycleValidationError("complete_table", key, "missing entry")
            try:
                conv[key] = RootOfUnity.of(table[key])
            except ValueError as e:
                raise CocycleValidationError("root_of_unity", key, str(e)) from None
        tables.append(conv)
    coc = AbelianCocycle(G, *tables)
    if validate:
        coc.validate()
    return PointedGVCategory(G, coc, h0, name=name, validated=validate)


def make_product_category(factors: Sequence[int], q_exponents: Sequence[int], h0,
                          bichar: dict | None = None, name: str = "",
                          validate: bool = True) -> PointedGVCategory:
    """
    Orthogonal sum of cyclic pieces plus cross terms.  Factor i carries
    q_i(g) = ζ^{e_i g²} with ζ of order 2n_i (n_i even) or n_i (n_i odd);
    bichar[(i, j)] = B for i < j adds β(a_i, b_j) = ζ_{gcd(n_i,n_j)}^{B a_i b_j}
    to τ.  λ has no cross terms.
    """
    G = FiniteAbelianGroup(factors)
    if len(q_exponents) != len(G.factors):
        raise ArgumentError("one q-exponent per cyclic factor")
    bichar = dict(bichar or {})
    for (i, j) in bichar:
        if not 0 <= i < j < len(G.factors):
            raise ArgumentError(f"bicharacter index ({i}, {j}) must satisfy 0 <= i < j < {len(G.factors)}")
    roots = [_cyclic_root_order(n) for n in G.factors]

    def lam_fn(a, b, c):
        # ζ^{e n a ⌊(b+c)/n⌋}, exponents collected over Q/Z
        t = Fraction(0)
        for k, n in enumerate(G.factors):
            t += Fraction(q_exponents[k] * n * a[k] * ((b[k] + c[k]) // n), roots[k])
        return _root(t)

    def tau_fn(a, b):
        t = Fraction(0)
        for k in range(len(G.factors)):
            t += Fraction(q_exponents[k] * a[k] * b[k], roots[k])
        for (i, j), B in bichar.items():
            t += Fraction(B * a[i] * b[j], math.gcd(G.factors[i], G.factors[j]))
        return _root(t)

    if not name:
        name = "x".join(f"Z/{n}" for n in G.factors)
    return _build(G, lam_fn, tau_fn, h0, name, validate)


def make_cyclic_category(n: int, q1_exponent: int, h0, validate: bool = True,
                         name: str = "") -> PointedGVCategory:
    """Z/n with q(g) = ζ^{q1_exponent·g²}; raises CocycleValidationError if invalid."""
    return make_product_category((n,), (q1_exponent,), h0, name=name or f"Z/{n}", validate=validate)


def trivial_category() -> PointedGVCategory:
    return make_cyclic_category(1, 0, 0, name="trivial")


def standard_test_categories() -> list[PointedGVCategory]:
    """The categories exercised by the acceptance suites."""
    return [
        trivial_category(),
        make_cyclic_category(2, 1, 0, name="Z/2 semion"),
        make_cyclic_category(2, 2, 0, name="Z/2 fermion"),
        make_cyclic_category(3, 1, 1, name="Z/3"),
        make_cyclic_category(4, 1, 1, name="Z/4 running example"),
        make_product_category((2, 2), (0, 0), (1, 0), bichar={(0, 1): 1}, name="Z/2xZ/2 toric"),
    ]


def _root(t: Fraction) -> RootOfUnity:
    return RootOfUnity(t)


# -- scalars ---------------------------------------------------------------

def dual(C: PointedGVCategory, g) -> Element:
    return C.group.sub(C.g0, C.el(g))


_ALIASES = {
    "associator": "associator", "lambda": "associator", "λ": "associator", "alpha": "associator",
    "braiding": "braiding", "tau": "braiding", "τ": "braiding", "c": "braiding",
    "balancing": "balancing", "theta": "balancing", "θ": "balancing",
    "pivotal": "pivotal", "psi": "pivotal", "ψ": "pivotal",
    "kappa_symmetry": "kappa_symmetry", "sigma": "kappa_symmetry", "Σ": "kappa_symmetry",
    "rotation": "rotation", "omega": "rotation", "Ω": "rotation",
}
_ARITY = {"associator": 3, "braiding": 2, "balancing": 1, "pivotal": 2, "kappa_symmetry": 2, "rotation": 3}
SCALARS = tuple(_ARITY)


def scalar(C: PointedGVCategory, which: str, *args):
    """
    Structure scalar on simple objects.

    pivotal ψ(x,y) and the κ-symmetry Σ(x,y) live on x+y = g₀; the rotation
    Ω(x,y,z): C(K,(x⊗y)⊗z) → C(K,(y⊗z)⊗x) lives on x+y+z = g₀.  Off that
    support the marker ZERO_SUPPORT is returned.
    """
    if len(args) == 1 and isinstance(args[0], (list, tuple)) and args[0] and \
            isinstance(args[0][0], (list, tuple, int)) and _ARITY.get(_ALIASES.get(which, ""), 0) > 1:
        args = tuple(args[0])
    try:
        kind = _ALIASES[which]
    except KeyError:
        raise ArgumentError(f"unknown scalar {which!r}; expected one of {SCALARS}") from None
    if len(args) != _ARITY[kind]:
        raise ArgumentError(f"{kind} takes {_ARITY[kind]} elements, got {len(args)}")
    value = _phase(C, kind, [C.el(a) for a in args])
    return value if value is ZERO_SUPPORT else value.cyc


def _phase(C: PointedGVCategory, kind: str, xs):
    G = C.group
    if kind == "associator":
        return C.lam[tuple(xs)]
    if kind == "braiding":
        return C.tau[tuple(xs)]
    if kind == "balancing":
        return C.theta(xs[0])
    if kind in ("pivotal", "kappa_symmetry"):
        x, y = xs
        if G.add(x, y) != C.g0:
            return ZERO_SUPPORT
        if kind == "pivotal":
            return (C.tau[(y, x)] * C.theta(x)).inverse()
        # symmetry of κ(X,Y) = C(K, X⊗Y): the pivotal map read backwards
        return C.tau[(x, y)] * C.theta(y)
    x, y, z = xs
    if G.add(x, y, z) != C.g0:
        return ZERO_SUPPORT
    return _phase(C, "pivotal", (x, G.add(y, z))) * C.lam[(x, y, z)]


def _supported_pairs(C):
    G = C.group
    return [(x, G.sub(C.g0, x)) for x in G.elements()]


def _supported_triples(C):
    G = C.group
    return [(x, y, G.sub(C.g0, G.add(x, y))) for x, y in itertools.product(G.elements(), repeat=2)]


def check_pivotal_axioms(C: PointedGVCategory) -> AxiomReport:
    rep = AxiomReport(f"pivotal_axioms[{C.name}]")
    G = C.group
    for x, y in _supported_pairs(C):
        rep.check("psi_involution", (x, y), _phase(C, "pivotal", (x, y)) * _phase(C, "pivotal", (y, x)), ONE)
    lam = C.lam
    for x, y, z in _supported_triples(C):
        # C(K,(xy)z) → C(K,z(xy)) → C(K,(zx)y) → C(K,y(zx)) → C(K,(yz)x) → C(K,x(yz)) → C(K,(xy)z)
        tri = ONE
        for a, b, c in ((x, y, z), (z, x, y), (y, z, x)):
            tri = tri * _phase(C, "pivotal", (G.add(a, b), c)) * lam[(c, a, b)].inverse()
        rep.check("cyclic_triangle", (x, y, z), tri, ONE)
        cube = _phase(C, "rotation", (x, y, z)) * _phase(C, "rotation", (y, z, x)) * \
            _phase(C, "rotation", (z, x, y))
        rep.check("omega_cubed", (x, y, z), cube, ONE)
    rep.info["r_category"] = C.is_r_category
    return rep.finish()


def check_hexagon_H(C: PointedGVCategory) -> AxiomReport:
    """
    The hexagon through the κ-symmetry: starting in C(K, x⊗(y⊗z)), three
    rotations by Σ⁻¹ interleaved with associators return to the identity.
    Written with Σ and λ directly rather than through ψ or Ω.
    """
    rep = AxiomReport(f"hexagon_H[{C.name}]")
    G = C.group
    lam, tau = C.lam, C.tau
    for x, y, z in _supported_triples(C):
        hexa = ONE
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            # x⊗(y⊗z) → (y⊗z)⊗x → y⊗(z⊗x)
            bc = G.add(b, c)
            hexa = hexa * (tau[(bc, a)] * C.theta(a)).inverse() * lam[(b, c, a)]
        rep.check("H", (x, y, z), hexa, ONE)
    for x, y in _supported_pairs(C):
        rep.check("kappa_symmetry_involution", (x, y),
                  _phase(C, "kappa_symmetry", (x, y)) * _phase(C, "kappa_symmetry", (y, x)), ONE)
    return rep.finish()


def check_balanced_braided_axioms(C: PointedGVCategory) -> AxiomReport:
    rep = AxiomReport(f"balanced_braided[{C.name}]")
    G = C.group
    els = G.elements()
    tau, lam = C.tau, C.lam
    add = G.add
    rep.check("theta_unit", (G.zero,), C.theta(G.zero), ONE)
    rep.check("theta_dualizing", (C.g0,), C.theta(C.g0), ONE)
    for g, h in itertools.product(els, repeat=2):
        rep.check("theta_tensor", (g, h), C.theta(add(g, h)),
                  tau[(g, h)] * tau[(h, g)] * C.theta(g) * C.theta(h))
    for g in els:
        rep.check("RT", (g,), C.theta(g), C.theta(dual(C, g)))
    for x, y in _supported_pairs(C):
        psi = _phase(C, "pivotal", (x, y))
        # ψ read through c_{y,x}⁻¹ and θ_x⁻¹ agrees with the mirrored reading through c_{x,y} and θ_y
        rep.check("RB", (x, y), psi, tau[(x, y)] * C.theta(y))
    for x, y, z in itertools.product(els, repeat=3):
        lhs = lam[(y, z, x)] * tau[(x, add(y, z))] * lam[(x, y, z)]
        rhs = tau[(x, z)] * lam[(y, x, z)] * tau[(x, y)]
        rep.check("B1", (x, y, z), lhs, rhs)
        lhs = (lam[(z, x, y)] * lam[(x, y, z)]).inverse() * tau[(add(x, y), z)]
        rhs = tau[(x, z)] * lam[(x, z, y)].inverse() * tau[(y, z)]
        rep.check("B2", (x, y, z), lhs, rhs)
    rep.info["r_category"] = C.is_r_category
    return rep.finish()


def check_cocycle(C: PointedGVCategory) -> AxiomReport:
    """The abelian cocycle invariants as a report (construction raises on the first one)."""
    rep = AxiomReport(f"abelian_cocycle[{C.name}]")
    for axiom, witness, lhs, rhs in C.cocycle.instances():
        rep.check(axiom, witness, lhs, rhs)
    return rep.finish()

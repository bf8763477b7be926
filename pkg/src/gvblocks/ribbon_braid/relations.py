"""
Relation suites for RBr: the defining relations (T1), (T2), (B1), (B2) in
every placement up to a strand bound, framed-braid exchange relations, and
the checks that the cyclic action is a well defined Z_{n+1}-action
extending the symmetric group actions.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from ..reports import AxiomReport
from .framed import FramedBraid
from .terms import (
    IDENTITY_OP, MU, MU_OPP, UNIT, Compose, Gen, Id, MorphismTerm, Partial, Relabel,
    arity, cyclic_act, flatten, inverse_term, left_comb,
)

__all__ = [
    "base_relations",
    "relation_instances",
    "check_rbr_relations",
    "check_cyclic_structure",
    "random_term",
    "BRAIDINGS",
]

BRAIDINGS = ("c", "c_inv", "cbar", "cbar_inv")
_SRC = {"c": MU, "c_inv": MU_OPP, "cbar": MU_OPP, "cbar_inv": MU}
_TGT = {"c": MU_OPP, "c_inv": MU, "cbar": MU, "cbar_inv": MU_OPP}

Relation = tuple[str, MorphismTerm, MorphismTerm]


def _theta_at(op, label, name="theta"):
    return Partial(Id(op), label, Gen(name))


def base_relations() -> list[Relation]:
    rels: list[Relation] = []
    # (T1): the balancing is natural with respect to every braiding
    for b in BRAIDINGS:
        for label in (1, 2):
            rels.append((f"T1[{b},{label}]",
                         Compose(Gen(b), _theta_at(_SRC[b], label)),
                         Compose(_theta_at(_TGT[b], label), Gen(b))))
    # (T2): θ on the output of μ is c̄ c (θ ⊗ θ)
    t2_lhs = Partial(Gen("theta"), 1, Id(MU))
    t2_rhs = Compose(Gen("cbar"), Compose(Gen("c"), Compose(_theta_at(MU, 1), _theta_at(MU, 2))))
    rels.append(("T2", t2_lhs, t2_rhs))
    rels.append(("T2[inv]", inverse_term(t2_lhs), inverse_term(t2_rhs)))
    # (B1), (B2): braiding past a product, in both inputs
    b1_lhs = Partial(Gen("c"), 1, Id(MU))
    b1_rhs = Compose(Relabel(Partial(Id(MU), 1, Gen("c")), (1, 3, 2)), Partial(Id(MU), 2, Gen("c")))
    b2_lhs = Partial(Gen("c"), 2, Id(MU))
    b2_rhs = Compose(Relabel(Partial(Id(MU), 2, Gen("c")), (2, 1, 3)), Partial(Id(MU), 1, Gen("c")))
    for name, lhs, rhs in (("B1", b1_lhs, b1_rhs), ("B2", b2_lhs, b2_rhs)):
        for inv in (False, True):
            l, r = (inverse_term(lhs), inverse_term(rhs)) if inv else (lhs, rhs)
            for perm in itertools.permutations((1, 2, 3)):
                tag = f"{name}{'[inv]' if inv else ''}[{''.join(map(str, perm))}]"
                rels.append((tag, Relabel(l, perm), Relabel(r, perm)))
    return rels


def _placements(term: MorphismTerm, n_max: int) -> Iterator[tuple[str, MorphismTerm]]:
    """The term inside larger operations: whiskered by μ or with an input cabled by μ."""
    seen = set()
    frontier = [("", term)]
    while frontier:
        nxt = []
        for tag, t in frontier:
            yield tag, t
            k = arity(t)
            if k >= n_max:
                continue
            moves = [(f"{tag}w{j}{'o' if op is MU_OPP else ''}", Partial(Id(op), j, t))
                     for op in (MU, MU_OPP) for j in (1, 2)]
            moves += [(f"{tag}c{j}", Partial(t, j, Id(MU))) for j in range(1, k + 1)]
            for new_tag, new in moves:
                if new_tag not in seen:
                    seen.add(new_tag)
                    nxt.append((new_tag, new))
        frontier = nxt
    # unit insertions on the original term
    for j in range(1, arity(term) + 1):
        yield f"u{j}", Partial(term, j, Id(UNIT))


def relation_instances(n_max: int) -> Iterator[tuple[str, MorphismTerm, MorphismTerm]]:
    for name, lhs, rhs in base_relations():
        if arity(lhs) > n_max:
            continue
        for (tag, l), (_, r) in zip(_placements(lhs, n_max), _placements(rhs, n_max)):
            yield (f"{name}@{tag}" if tag else name), l, r


def _flat_str(f) -> str:
    return f"{f.source}->{f.target}: {f.braid.word() or 'id'}"


def check_rbr_relations(n: int) -> AxiomReport:
    """Defining relations and framed exchange relations as normal-form identities."""
    if n > 6:
        raise ValueError("relation suite is desk scale: n <= 6")
    rep = AxiomReport(f"rbr_relations(n={n})")
    for name, lhs, rhs in relation_instances(n):
        fl, fr = flatten(lhs), flatten(rhs)
        rep.check(name.split("@")[0].split("[")[0], (name,), _flat_str(fl), _flat_str(fr), fl == fr)
    for k in range(1, n + 1):
        F = FramedBraid
        for i in range(1, k):
            s = F.sigma(k, i)
            for j in range(1, k + 1):
                sj = i + 1 if j == i else i if j == i + 1 else j
                lhs, rhs = s * F.twist(k, j), F.twist(k, sj) * s
                rep.check("exchange", (k, i, j), lhs.word(), rhs.word(), lhs == rhs)
            for i2 in range(i + 2, k):
                s2 = F.sigma(k, i2)
                rep.check("far_commutation", (k, i, i2), (s * s2).word(), (s2 * s).word(), s * s2 == s2 * s)
            if i + 1 < k:
                s2 = F.sigma(k, i + 1)
                lhs, rhs = s * s2 * s, s2 * s * s2
                rep.check("braid", (k, i), lhs.word(), rhs.word(), lhs == rhs)
        for j1, j2 in itertools.combinations(range(1, k + 1), 2):
            a, b = F.twist(k, j1), F.twist(k, j2)
            rep.check("twists_commute", (k, j1, j2), (a * b).word(), (b * a).word(), a * b == b * a)
    return rep.finish()


# -- random terms ----------------------------------------------------------

def random_term(rng: random.Random, n: int, depth: int = 3) -> MorphismTerm:
    """A random well formed morphism term of arity n."""
    if depth <= 0 or rng.random() < 0.25:
        if n == 0:
            return Id(UNIT)
        if n == 1:
            return rng.choice([Gen("theta"), Gen("theta_inv"), Id(IDENTITY_OP)])
        if n == 2:
            return rng.choice([Gen(b) for b in BRAIDINGS] + [Id(MU), Id(MU_OPP)])
        return Id(left_comb(range(1, n + 1)))
    u = rng.random()
    if u < 0.45 and n >= 0:
        a = rng.choice([x for x in (1, 2) if n - x + 1 >= 0])
        inner = random_term(rng, n - a + 1, depth - 1)
        outer = random_term(rng, a, depth - 1)
        return Partial(outer, rng.randint(1, a), inner)
    if u < 0.75:
        g = random_term(rng, n, depth - 1)
        h = random_term(rng, n, depth - 1)
        hs, gt = flatten(h).source, flatten(g).target
        perm = [0] * n
        for k in range(n):
            perm[hs[k] - 1] = gt[k]
        return Compose(Relabel(h, tuple(perm)), g)
    f = random_term(rng, n, depth - 1)
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    return Relabel(f, tuple(perm))


def _generator_morphisms() -> list[tuple[str, MorphismTerm]]:
    gens = [("theta", Gen("theta")), ("theta_inv", Gen("theta_inv")), ("id1", Id(IDENTITY_OP))]
    gens += [(b, Gen(b)) for b in BRAIDINGS]
    gens += [("id_mu", Id(MU)), ("id_mu_opp", Id(MU_OPP))]
    for op, tag in ((MU, "mu"), (MU_OPP, "mu_opp")):
        for label in (1, 2):
            for name in ("theta", "theta_inv"):
                gens.append((f"{name}@{tag}.{label}", _theta_at(op, label, name)))
    return gens


def check_cyclic_structure(n_max: int = 3, n_random: int = 100, seed: int = 0) -> AxiomReport:
    rep = AxiomReport(f"cyclic_structure(n<={n_max}, random={n_random}, seed={seed})")
    # order of the action on generators
    for name, g in _generator_morphisms():
        k = arity(g) + 1
        rep.check(f"Z(tau_{k})^{k}=id", (name,), _flat_str(flatten(cyclic_act(g, k))),
                  _flat_str(flatten(g)))
    # τ_3 σ_12 = σ_12 τ_3² on the arity-2 generators
    for name, g in _generator_morphisms():
        if arity(g) != 2:
            continue
        swapped = flatten(Relabel(g, (2, 1)))
        # the generator whose flattening is the swapped morphism, so the base table is used twice
        twin = next((t for _, t in _generator_morphisms()
                     if arity(t) == 2 and flatten(t) == swapped), None)
        if twin is None:
            continue
        lhs = flatten(cyclic_act(twin, 1))
        rhs = flatten(Relabel(cyclic_act(g, 2), (2, 1)))
        rep.check("tau3*s12=s12*tau3^2", (name,), _flat_str(lhs), _flat_str(rhs))
    rng = random.Random(seed)
    for trial in range(n_random):
        n = rng.randint(0, n_max)
        t = random_term(rng, n)
        f = flatten(t)
        back = flatten(cyclic_act(t, n + 1))
        rep.check(f"Z(tau_{n + 1})^{n + 1}=id", (f"random#{trial}", n), _flat_str(back), _flat_str(f))
    # relations survive every power of τ
    for name, lhs, rhs in relation_instances(n_max):
        if name.split("[")[0].split("@")[0] not in ("T1", "B1", "B2"):
            continue
        n = arity(lhs)
        for k in range(1, n + 1):
            fl, fr = flatten(cyclic_act(lhs, k)), flatten(cyclic_act(rhs, k))
            rep.check("tau_preserves_" + name.split("[")[0].split("@")[0], (name, k),
                      _flat_str(fl), _flat_str(fr), fl == fr)
    return rep.finish()

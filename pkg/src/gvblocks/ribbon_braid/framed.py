"""
Framed (ribbon) braids: the semidirect product Z^n ⋊ B_n.

Conventions.  A word g_1 g_2 ... g_k is read as functional composition, so
the rightmost letter acts first.  Positions are 0-based internally, the
generator σ_i (1-based, as in text) exchanges positions i-1 and i.  The
permutation π(β) sends the source position of a strand to its target
position, and π(βγ) = π(β)∘π(γ).  A framed braid (v, β) stands for t^v β,
so the twist vector is indexed by target positions and

    (v, β)(w, γ) = (v + π(β)·w, βγ),    (π·w)[π(j)] = w[j].

The braid part is kept in left Garside normal form Δ^k A_1 ... A_r, each A_j
a positive permutation braid given by its permutation.  For a simple A with
permutation p, σ_i is a right divisor iff p(i-1) > p(i) and a left divisor
iff p⁻¹(i-1) > p⁻¹(i).
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Sequence

Perm = tuple[int, ...]

__all__ = [
    "ArityError",
    "FramedBraid",
    "fb_multiply",
    "fb_equals",
    "cable",
    "parse_word",
    "format_word",
]


class ArityError(ValueError):
    pass


def _compose(p: Perm, q: Perm) -> Perm:
    """p∘q, i.e. q first."""
    return tuple(p[j] for j in q)


def _inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for j, pj in enumerate(p):
        inv[pj] = j
    return tuple(inv)


def _identity(n: int) -> Perm:
    return tuple(range(n))


def _w0(n: int) -> Perm:
    return tuple(range(n - 1, -1, -1))


def _swap(n: int, i: int) -> Perm:
    # 0-based transposition of positions i, i+1
    p = list(range(n))
    p[i], p[i + 1] = p[i + 1], p[i]
    return tuple(p)


def _right_descents(p: Perm) -> set[int]:
    return {i for i in range(len(p) - 1) if p[i] > p[i + 1]}


def _left_descents(p: Perm) -> set[int]:
    return _right_descents(_inverse(p))


def _flip(p: Perm) -> Perm:
    # Δ⁻¹ A Δ (and Δ A Δ⁻¹): conjugation of the permutation by w0
    w0 = _w0(len(p))
    return _compose(w0, _compose(p, w0))


def reduced_word(p: Perm) -> list[int]:
    """0-based positive word a_1 ... a_k with p = s_{a_1}∘...∘s_{a_k}."""
    p = list(p)
    letters: list[int] = []
    while True:
        for i in range(len(p) - 1):
            if p[i] > p[i + 1]:
                p[i], p[i + 1] = p[i + 1], p[i]
                letters.append(i)
                break
        else:
            break
    letters.reverse()
    return letters


def _left_weight(a: Perm, b: Perm) -> tuple[Perm, Perm]:
    # Move left divisors of b that a can absorb into a.
    changed = True
    while changed:
        changed = False
        rd = _right_descents(a)
        for i in sorted(_left_descents(b)):
            if i not in rd:
                s = _swap(len(a), i)
                a = _compose(a, s)
                b = _compose(s, b)
                changed = True
                break
    return a, b


def _normalize(n: int, k: int, factors: Sequence[Perm]) -> tuple[int, tuple[Perm, ...]]:
    fs = list(factors)
    changed = True
    while changed:
        changed = False
        for j in range(len(fs) - 2, -1, -1):
            a, b = _left_weight(fs[j], fs[j + 1])
            if (a, b) != (fs[j], fs[j + 1]):
                fs[j], fs[j + 1] = a, b
                changed = True
    w0, e = _w0(n), _identity(n)
    lead = 0
    while lead < len(fs) and fs[lead] == w0:
        lead += 1
    # Δ^lead A_1... : nothing to conjugate since the Δs already sit in front.
    fs = fs[lead:]
    while fs and fs[-1] == e:
        fs.pop()
    return k + lead, tuple(fs)


class FramedBraid:
    """An element of RB_n, immutable, with its normal form computed on construction."""

    __slots__ = ("n", "twists", "delta", "factors", "perm")

    def __init__(self, n: int, twists: Sequence[int] | None = None, delta: int = 0,
                 factors: Sequence[Perm] = (), _normal: bool = False):
        self.n = n
        self.twists = tuple(twists) if twists is not None else (0,) * n
        if len(self.twists) != n:
            raise ArityError(f"twist vector of length {len(self.twists)} on {n} strands")
        if n <= 1:
            delta, factors = 0, ()
        if not _normal:
            delta, factors = _normalize(n, delta, factors)
        self.delta = delta
        self.factors = tuple(factors)
        perm = _w0(n) if delta % 2 else _identity(n)
        for f in self.factors:
            perm = _compose(perm, f)
        self.perm = perm

    # -- constructors -----------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "FramedBraid":
        return cls(n, _normal=True)

    @classmethod
    def sigma(cls, n: int, i: int, power: int = 1) -> "FramedBraid":
        """σ_i^power, i 1-based."""
        if not 1 <= i <= n - 1:
            raise ArityError(f"σ_{i} does not exist on {n} strands")
        return cls.from_letters(n, [("s", i, power)])

    @classmethod
    def twist(cls, n: int, j: int, power: int = 1) -> "FramedBraid":
        """t_j^power, j 1-based."""
        if not 1 <= j <= n:
            raise ArityError(f"t_{j} does not exist on {n} strands")
        v = [0] * n
        v[j - 1] = power
        return cls(n, v, _normal=True)

    @classmethod
    def simple(cls, perm: Sequence[int]) -> "FramedBraid":
        """The positive permutation braid of perm (source position ↦ target position)."""
        perm = tuple(perm)
        return cls(len(perm), None, 0, (perm,))

    @classmethod
    def full_twist(cls, n: int) -> "FramedBraid":
        """Δ_n² as a braid, no framing."""
        return cls(n, None, 2, ())

    @classmethod
    def from_letters(cls, n: int, letters: Iterable[tuple[str, int, int]]) -> "FramedBraid":
        """Letters ('s', i, e) or ('t', j, e), 1-based, written left to right."""
        out = cls.identity(n)
        for kind, idx, e in letters:
            if kind == "t":
                out = out * cls.twist(n, idx, e)
            elif kind == "s":
                if not 1 <= idx <= n - 1:
                    raise ArityError(f"σ_{idx} does not exist on {n} strands")
                out = out._times_sigma(idx - 1, e)
            else:
                raise ValueError(f"unknown letter kind {kind!r}")
        return out

    @classmethod
    def parse(cls, n: int, text: str) -> "FramedBraid":
        return cls.from_letters(n, parse_word(text))

    # -- normal form arithmetic -------------------------------------------
    def _times_sigma(self, i: int, e: int) -> "FramedBraid":
        k, fs = self.delta, list(self.factors)
        n = self.n
        for _ in range(abs(e)):
            if e > 0:
                fs.append(_swap(n, i))
            else:
                # σ_i⁻¹ = Δ⁻¹ (w0 s_i); the Δ⁻¹ moves left past every factor
                fs = [_flip(f) for f in fs]
                fs.append(_compose(_w0(n), _swap(n, i)))
                k -= 1
            k, fs = _normalize(n, k, fs)
            fs = list(fs)
        return FramedBraid(n, self.twists, k, fs, _normal=True)

    def _braid_mul(self, other: "FramedBraid") -> tuple[int, tuple[Perm, ...]]:
        # (Δ^a A)(Δ^b B) = Δ^(a+b) flip^b(A) B
        a = [_flip(f) for f in self.factors] if other.delta % 2 else list(self.factors)
        return _normalize(self.n, self.delta + other.delta, a + list(other.factors))

    def __mul__(self, other: "FramedBraid") -> "FramedBraid":
        if not isinstance(other, FramedBraid):
            return NotImplemented
        if other.n != self.n:
            raise ArityError(f"cannot multiply braids on {self.n} and {other.n} strands")
        k, fs = self._braid_mul(other)
        moved = self.transport(other.twists)
        tw = tuple(x + y for x, y in zip(self.twists, moved))
        return FramedBraid(self.n, tw, k, fs, _normal=True)

    def transport(self, w: Sequence[int]) -> tuple[int, ...]:
        """π(β)·w."""
        out = [0] * self.n
        for j, x in enumerate(w):
            out[self.perm[j]] = x
        return tuple(out)

    def inverse(self) -> "FramedBraid":
        # (Δ^k A_1..A_r)⁻¹ = A_r⁻¹..A_1⁻¹ Δ^-k, and A⁻¹ = Δ⁻¹ (w0∘p⁻¹... ) handled letterwise
        b = FramedBraid.identity(self.n)
        for f in reversed(self.factors):
            for i in reversed(reduced_word(f)):
                b = b._times_sigma(i, -1)
        b = FramedBraid(self.n, None, b.delta - self.delta,
                        [_flip(f) for f in b.factors] if self.delta % 2 else b.factors, _normal=True)
        # twists: (v, β)⁻¹ = (-π(β)⁻¹ v, β⁻¹)
        tw = tuple(-x for x in b.transport(self.twists))
        return FramedBraid(self.n, tw, b.delta, b.factors, _normal=True)

    def __pow__(self, k: int) -> "FramedBraid":
        base = self if k >= 0 else self.inverse()
        out = FramedBraid.identity(self.n)
        for _ in range(abs(k)):
            out = out * base
        return out

    # -- equality ---------------------------------------------------------
    def normal_form(self) -> tuple[tuple[int, ...], int, tuple[Perm, ...]]:
        return (self.twists, self.delta, self.factors)

    def __eq__(self, other):
        if not isinstance(other, FramedBraid):
            return NotImplemented
        return self.n == other.n and self.normal_form() == other.normal_form()

    def __hash__(self):
        return hash((self.n, self.normal_form()))

    def is_identity(self) -> bool:
        return self == FramedBraid.identity(self.n)

    # -- words ------------------------------------------------------------
    def braid_letters(self) -> list[tuple[str, int, int]]:
        """An Artin word for the braid part, 1-based letters."""
        out: list[tuple[str, int, int]] = []
        delta_word = reduced_word(_w0(self.n))
        if self.delta >= 0:
            out += [("s", i + 1, 1) for _ in range(self.delta) for i in delta_word]
        else:
            out += [("s", i + 1, -1) for _ in range(-self.delta) for i in reversed(delta_word)]
        for f in self.factors:
            out += [("s", i + 1, 1) for i in reduced_word(f)]
        return out

    def letters(self) -> list[tuple[str, int, int]]:
        tw = [("t", j + 1, x) for j, x in enumerate(self.twists) if x]
        return tw + self.braid_letters()

    def word(self) -> str:
        return format_word(self.letters())

    def shifted(self, offset: int, total: int) -> "FramedBraid":
        """The same braid on strands offset..offset+n-1 of a total-strand braid."""
        pad = lambda p: tuple(range(offset)) + tuple(x + offset for x in p) + \
            tuple(range(offset + self.n, total))
        tw = (0,) * offset + self.twists + (0,) * (total - offset - self.n)
        out = FramedBraid(total, tw, _normal=True)
        lead = FramedBraid(total, None, 0, [pad(_w0(self.n))] * abs(self.delta))
        if self.delta < 0:
            lead = lead.inverse()
        body = FramedBraid(total, None, 0, [pad(f) for f in self.factors])
        return out * lead * body

    def __repr__(self):
        return f"FramedBraid({self.n}, {self.word()!r})"


_LETTER = re.compile(r"^([st])(\d+)(?:\^(-?\d+))?$")


def parse_word(text: str) -> list[tuple[str, int, int]]:
    """Parse e.g. "t1 s1 s2^-1 t3^2"."""
    out = []
    for col, tok in _tokens(text):
        m = _LETTER.match(tok)
        if not m:
            raise ValueError(f"bad braid letter {tok!r} at column {col}")
        out.append((m.group(1), int(m.group(2)), int(m.group(3) or 1)))
    return out


def _tokens(text: str):
    for m in re.finditer(r"\S+", text):
        yield m.start() + 1, m.group(0)


def format_word(letters: Iterable[tuple[str, int, int]]) -> str:
    toks = []
    for kind, i, e in letters:
        toks.append(f"{kind}{i}" if e == 1 else f"{kind}{i}^{e}")
    return " ".join(toks)


def fb_multiply(a: FramedBraid, b: FramedBraid) -> FramedBraid:
    return a * b


def fb_equals(a: FramedBraid, b: FramedBraid) -> bool:
    if a.n != b.n:
        raise ArityError(f"comparing braids on {a.n} and {b.n} strands")
    return a.normal_form() == b.normal_form()


@lru_cache(maxsize=None)
def _block_crossing(left: int, right: int) -> Perm:
    # Positive permutation braid moving a block of `left` strands past `right` strands.
    return tuple(range(right, right + left)) + tuple(range(right))


def cable(base: FramedBraid, widths: Sequence[int]) -> FramedBraid:
    """Replace strand j (source position) of base by widths[j] parallel ribbons."""
    widths = list(widths)
    if len(widths) != base.n:
        raise ArityError(f"{len(widths)} widths for a braid on {base.n} strands")
    total = sum(widths)
    out = FramedBraid.identity(total)
    cur = list(widths)
    # braid letters act right to left, so build the cabled word from the right
    pieces: list[FramedBraid] = []
    for kind, i, e in reversed(base.braid_letters()):
        a, b = cur[i - 1], cur[i]
        off = sum(cur[: i - 1])
        if e > 0:
            perm = tuple(range(off)) + tuple(x + off for x in _block_crossing(a, b)) + \
                tuple(range(off + a + b, total))
            piece = FramedBraid.simple(perm)
        else:
            perm = tuple(range(off)) + tuple(x + off for x in _block_crossing(b, a)) + \
                tuple(range(off + a + b, total))
            piece = FramedBraid.simple(perm).inverse()
        pieces.append(piece)
        cur[i - 1], cur[i] = b, a
    for piece in reversed(pieces):
        out = out * piece
    # twists sit on the left, at target positions
    tw_part = FramedBraid.identity(total)
    for j, x in enumerate(base.twists):
        if x == 0 or cur[j] == 0:
            continue
        off, m = sum(cur[:j]), cur[j]
        v = [0] * total
        for s in range(off, off + m):
            v[s] = x
        ribbon = FramedBraid(total, v, _normal=True)
        if m > 1:
            spin = FramedBraid.full_twist(m).shifted(off, total) ** x
            ribbon = spin * ribbon
        tw_part = tw_part * ribbon
    return tw_part * out

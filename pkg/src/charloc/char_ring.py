"""The group ring Z[L] of finitely supported virtual torus characters."""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Sequence

from .lattice import LatticeError, RootDatum, Weight


class LaurentPoly:
    """Finitely supported map ``Weight -> int`` with no zero coefficients.

    Values are immutable. Terms iterate in canonical order (lexicographic on
    doubled coordinates), which also fixes the JSON layout.
    """

    __slots__ = ("_terms", "_rank", "_hash")

    def __init__(self, terms: Mapping[Weight, int] | Iterable[tuple[Weight, int]] = (), rank: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, ...], int] = {}
        for w, c in items:
            if not isinstance(w, Weight):
                raise TypeError(f"expected Weight, got {type(w).__name__}")
            if rank is None:
                rank = w.rank
            elif w.rank != rank:
                raise LatticeError(f"rank mismatch: {w.rank} vs {rank}")
            acc[w.coords] = acc.get(w.coords, 0) + int(c)
        if rank is None:
            raise LatticeError("rank of an empty polynomial must be given")
        self._terms = {k: v for k, v in sorted(acc.items()) if v}
        self._rank = rank
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[tuple[int, ...], int], rank: int) -> "LaurentPoly":
        obj = object.__new__(cls)
        obj._terms = {k: v for k, v in sorted(terms.items()) if v}
        obj._rank = rank
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, rank: int) -> "LaurentPoly":
        return cls._raw({}, rank)

    @classmethod
    def one(cls, rank: int) -> "LaurentPoly":
        return cls._raw({(0,) * rank: 1}, rank)

    @classmethod
    def monomial(cls, w: Weight, c: int = 1) -> "LaurentPoly":
        return cls._raw({w.coords: c}, w.rank)

    @property
    def rank(self) -> int:
        return self._rank

    def items(self):
        for k, v in self._terms.items():
            yield Weight(k), v

    @property
    def terms(self) -> dict[Weight, int]:
        return dict(self.items())

    def raw_items(self):
        return self._terms.items()

    def coefficient(self, w: Weight) -> int:
        return self._terms.get(w.coords, 0)

    def support(self) -> list[Weight]:
        return [Weight(k) for k in self._terms]

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def total(self) -> int:
        return sum(self._terms.values())

    def radii(self) -> tuple[int, ...]:
        """Largest absolute doubled coordinate of the support, per axis."""
        if not self._terms:
            return (0,) * self._rank
        return tuple(max(abs(k[i]) for k in self._terms) for i in range(self._rank))

    def _check(self, other: "LaurentPoly"):
        if not isinstance(other, LaurentPoly):
            raise TypeError(f"expected LaurentPoly, got {type(other).__name__}")
        if other._rank != self._rank:
            raise LatticeError(f"rank mismatch: {self._rank} vs {other._rank}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._rank == other._rank and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._rank, tuple(self._terms.items())))
        return self._hash

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        acc = dict(self._terms)
        for k, v in other._terms.items():
            acc[k] = acc.get(k, 0) + v
        return LaurentPoly._raw(acc, self._rank)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({k: -v for k, v in self._terms.items()}, self._rank)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly._raw({k: other * v for k, v in self._terms.items()}, self._rank)
        return poly_mul(self, other)

    def __rmul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers live in the localization")
        out = LaurentPoly.one(self._rank)
        for _ in range(n):
            out = out * self
        return out

    def shift(self, w: Weight) -> "LaurentPoly":
        return LaurentPoly._raw(
            {tuple(a + b for a, b in zip(k, w.coords)): v for k, v in self._terms.items()},
            self._rank,
        )

    def dual(self) -> "LaurentPoly":
        return poly_dual(self)

    def to_json(self) -> dict:
        return {"terms": [{"w2": list(k), "c": v} for k, v in self._terms.items()]}

    @classmethod
    def from_json(cls, doc: Mapping, rank: int | None = None) -> "LaurentPoly":
        try:
            items = [(Weight(tuple(int(x) for x in t["w2"])), int(t["c"])) for t in doc["terms"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise LatticeError(f"malformed polynomial: {exc}") from exc
        if rank is None and not items:
            raise LatticeError("rank of an empty polynomial must be given")
        return cls(items, rank)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, v in self._terms.items():
            mono = "1" if not any(k) else "X^" + (str(k[0]) if self._rank == 1 else str(k))
            parts.append(f"{v}*{mono}")
        return " + ".join(parts)


def poly_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Convolution product."""
    a._check(b)
    acc: dict[tuple[int, ...], int] = {}
    for ka, va in a._terms.items():
        for kb, vb in b._terms.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            acc[k] = acc.get(k, 0) + va * vb
    return LaurentPoly._raw(acc, a.rank)


def poly_dual(a: LaurentPoly) -> LaurentPoly:
    """Contragredient: every weight is negated."""
    return LaurentPoly._raw({tuple(-x for x in k): v for k, v in a._terms.items()}, a.rank)


def weyl_factor(alpha: Weight) -> LaurentPoly:
    """``1 - [-alpha]``."""
    one = (0,) * alpha.rank
    return LaurentPoly._raw({one: 1, (-alpha).coords: -1}, alpha.rank)


def weyl_element(datum: RootDatum) -> LaurentPoly:
    """The Weyl element as the closed product over the positive system."""
    out = LaurentPoly.one(datum.rank)
    for a in datum.u_roots:
        out = out * weyl_factor(a)
    return out


def exterior_weyl_element(datum: RootDatum) -> LaurentPoly:
    """``sum_q (-1)^q [Lambda^q u*]`` from the weights ``-alpha`` of ``u*``, subset by subset."""
    rank = datum.rank
    acc: dict[tuple[int, ...], int] = {}
    roots = datum.u_roots
    for q in range(len(roots) + 1):
        sign = -1 if q % 2 else 1
        for subset in itertools.combinations(roots, q):
            k = tuple(-sum(a.coords[i] for a in subset) for i in range(rank))
            acc[k] = acc.get(k, 0) + sign
    return LaurentPoly._raw(acc, rank)


def top_exterior_weight(datum: RootDatum) -> Weight:
    """Weight of ``Lambda^{dim u} u*``, i.e. ``-sum alpha``."""
    total = Weight.zero(datum.rank)
    for a in datum.u_roots:
        total = total - a
    return total


def restrict_weights(f: Sequence[Sequence[int]], a: LaurentPoly) -> LaurentPoly:
    """Push ``a`` forward along the integer matrix ``f`` (rows = target coordinates)."""
    rows = [tuple(int(x) for x in row) for row in f]
    if rows and any(len(r) != a.rank for r in rows):
        raise LatticeError("matrix does not match the source rank")
    target = len(rows)
    acc: dict[tuple[int, ...], int] = {}
    for k, v in a._terms.items():
        img = tuple(sum(r[j] * k[j] for j in range(a.rank)) for r in rows)
        acc[img] = acc.get(img, 0) + v
    return LaurentPoly._raw(acc, target)

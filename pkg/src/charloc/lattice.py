"""Weight lattices, invariant inner products, reflections and Weyl groups.

A weight is stored through the integer coordinates of ``2*lambda`` in a fixed
basis of the lattice ``L0``; this realizes the square-root lattice
``L = L0 / 2`` and makes ``alpha**(1/2)`` canonical.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence


class LatticeError(ValueError):
    """Raised for malformed lattice input or an operation leaving the lattice."""


class UnsupportedRootSystem(LatticeError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise LatticeError(f"not a number: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (float, str)):
        try:
            return Fraction(str(x).strip())
        except ValueError as exc:
            raise LatticeError(f"not a rational number: {x!r}") from exc
    raise LatticeError(f"not a rational number: {x!r}")


@dataclass(frozen=True, order=True)
class Weight:
    """A point of ``L``; ``coords`` are the coordinates of twice the weight."""

    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(self.coords)
        if not coords:
            raise LatticeError("a weight needs rank >= 1")
        if any(not isinstance(c, int) or isinstance(c, bool) for c in coords):
            raise LatticeError(f"doubled coordinates must be integers: {coords}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls((0,) * rank)

    @classmethod
    def from_l0(cls, coords: Iterable) -> "Weight":
        """Build from coordinates in ``L0`` (rationals allowed if twice them is integral)."""
        doubled = []
        for c in coords:
            d = 2 * as_fraction(c)
            if d.denominator != 1:
                raise LatticeError(f"coordinate {c} is not in L = L0/2")
            doubled.append(int(d))
        return cls(tuple(doubled))

    @property
    def rank(self) -> int:
        return len(self.coords)

    @property
    def l0_coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, 2) for c in self.coords)

    def in_l0(self) -> bool:
        return all(c % 2 == 0 for c in self.coords)

    def sqrt(self) -> "Weight":
        """The square root ``alpha**(1/2)``, i.e. ``alpha/2``; needs ``alpha`` in ``L0``."""
        if not self.in_l0():
            raise LatticeError(f"{self} has no square root in L (not in L0)")
        return Weight(tuple(c // 2 for c in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check(self, other: "Weight"):
        if self.rank != other.rank:
            raise LatticeError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> "Weight":
        return Weight(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def radius(self) -> int:
        return max(abs(c) for c in self.coords)

    def __repr__(self) -> str:
        return f"Weight({self.coords})"


@dataclass(frozen=True)
class InnerProduct:
    """Symmetric positive definite Gram matrix on ``L0`` coordinates."""

    gram: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        gram = tuple(tuple(as_fraction(x) for x in row) for row in self.gram)
        n = len(gram)
        if n == 0 or any(len(row) != n for row in gram):
            raise LatticeError("gram matrix must be square and non-empty")
        for i in range(n):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise LatticeError("gram matrix must be symmetric")
        for k in range(1, n + 1):
            if determinant([row[:k] for row in gram[:k]]) <= 0:
                raise LatticeError("gram matrix must be positive definite")
        object.__setattr__(self, "gram", gram)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def functional(self, mu: Weight) -> tuple[Fraction, ...]:
        """Coefficients ``c`` with ``pair(lam, mu) == sum(c_i * lam.coords[i])``."""
        n = self.rank
        return tuple(
            sum((self.gram[i][j] * mu.coords[j] for j in range(n)), Fraction(0)) / 4
            for i in range(n)
        )


def pair(lam: Weight, mu: Weight, inner: InnerProduct) -> Fraction:
    """Exact invariant pairing ``<lam, mu>``."""
    if lam.rank != mu.rank or lam.rank != inner.rank:
        raise LatticeError(f"rank mismatch: {lam.rank}, {mu.rank}, {inner.rank}")
    g = inner.gram
    a, b = lam.coords, mu.coords
    total = Fraction(0)
    for i, ai in enumerate(a):
        if ai:
            total += ai * sum((g[i][j] * bj for j, bj in enumerate(b) if bj), Fraction(0))
    return total / 4


def reflect(alpha: Weight, lam: Weight, inner: InnerProduct) -> Weight:
    """Orthogonal reflection of ``lam`` in the hyperplane perpendicular to ``alpha``."""
    aa = pair(alpha, alpha, inner)
    if aa == 0:
        raise LatticeError(f"cannot reflect in isotropic {alpha}")
    c = 2 * pair(lam, alpha, inner) / aa
    out = []
    for x, a in zip(lam.coords, alpha.coords):
        y = x - c * a
        if y.denominator != 1:
            raise LatticeError(f"reflection of {lam} in {alpha} leaves L")
        out.append(int(y))
    return Weight(tuple(out))


def determinant(m: Sequence[Sequence[Fraction]]) -> Fraction:
    a = [[as_fraction(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def matrix_rank(rows: Sequence[Sequence]) -> int:
    a = [[as_fraction(x) for x in row] for row in rows]
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(len(a)):
            if r != rank and a[r][col] != 0:
                f = a[r][col] / a[rank][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


Matrix = tuple[tuple[int, ...], ...]


def _identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def apply_matrix(m: Matrix, lam: Weight) -> Weight:
    return Weight(tuple(sum(r[j] * lam.coords[j] for j in range(len(r))) for r in m))


@dataclass(frozen=True)
class WeylElement:
    matrix: Matrix
    length: int
    word: tuple[int, ...] = field(compare=False)

    def __call__(self, lam: Weight) -> Weight:
        return apply_matrix(self.matrix, lam)


@dataclass(frozen=True)
class RootDatum:
    """Ambient rank, invariant product and the positive system ``Delta(u, l)``.

    ``u_roots`` holds weights of ``L0`` (even doubled coordinates). The Weyl
    group is generated by the simple roots of ``u_roots``.
    """

    inner: InnerProduct
    u_roots: tuple[Weight, ...] = ()

    def __post_init__(self):
        roots = tuple(self.u_roots)
        for a in roots:
            if a.rank != self.inner.rank:
                raise LatticeError(f"root {a} has wrong rank")
            if not a.in_l0():
                raise LatticeError(f"root {a} is not in L0")
            if a.is_zero():
                raise LatticeError("zero is not a root")
        object.__setattr__(self, "u_roots", roots)

    @classmethod
    def from_json(cls, doc) -> "RootDatum":
        """Load ``{"rank": n, "gram": [[...]], "u_roots": [[...]]}`` (roots in L0 coordinates)."""
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            rank = int(doc["rank"])
            inner = InnerProduct(tuple(tuple(row) for row in doc["gram"]))
            roots = tuple(Weight.from_l0(r) for r in doc.get("u_roots", []))
        except (KeyError, TypeError) as exc:
            raise LatticeError(f"malformed root datum: {exc}") from exc
        if inner.rank != rank:
            raise LatticeError(f"gram has rank {inner.rank}, expected {rank}")
        return cls(inner, roots)

    @classmethod
    def load(cls, path) -> "RootDatum":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def to_json(self) -> dict:
        def num(x: Fraction):
            return int(x) if x.denominator == 1 else str(x)

        return {
            "rank": self.rank,
            "gram": [[num(x) for x in row] for row in self.inner.gram],
            "u_roots": [[num(c) for c in a.l0_coords] for a in self.u_roots],
        }

    @property
    def rank(self) -> int:
        return self.inner.rank

    @cached_property
    def rho_u(self) -> Weight:
        total = [0] * self.rank
        for a in self.u_roots:
            for i, c in enumerate(a.coords):
                total[i] += c
        return Weight(tuple(c // 2 for c in total))

    @cached_property
    def root_set(self) -> frozenset[Weight]:
        return frozenset(self.u_roots)

    @cached_property
    def simple_roots(self) -> tuple[Weight, ...]:
        pos = self.root_set
        simple = []
        for a in sorted(pos):
            if not any((a - b) in pos for b in pos if b != a):
                simple.append(a)
        # keep the order in which they were supplied
        order = {a: i for i, a in enumerate(self.u_roots)}
        return tuple(sorted(simple, key=order.__getitem__))

    def pair(self, lam: Weight, mu: Weight) -> Fraction:
        return pair(lam, mu, self.inner)

    def is_dominant(self, lam: Weight) -> bool:
        return all(self.pair(lam, a) >= 0 for a in self.simple_roots)

    def reflection_matrix(self, alpha: Weight) -> Matrix:
        cols = []
        for j in range(self.rank):
            e = Weight(tuple(2 * int(i == j) for i in range(self.rank)))
            cols.append(reflect(alpha, e, self.inner).coords)
        rows = tuple(tuple(cols[j][i] // 2 if cols[j][i] % 2 == 0 else None for j in range(self.rank))
                     for i in range(self.rank))
        if any(x is None for row in rows for x in row):
            raise LatticeError(f"reflection in {alpha} does not preserve L0")
        return rows

    @cached_property
    def weyl_group(self) -> tuple[WeylElement, ...]:
        return tuple(enumerate_weyl_group(self))

    @cached_property
    def longest_element(self) -> WeylElement:
        return max(self.weyl_group, key=lambda w: w.length)

    def inverse(self, w: WeylElement) -> WeylElement:
        m = _identity(self.rank)
        simple = [self.reflection_matrix(a) for a in self.simple_roots]
        for i in reversed(w.word):
            m = _matmul(m, simple[i])
        for v in self.weyl_group:
            if v.matrix == m:
                return v
        raise LatticeError("inverse not found in the enumerated group")  # pragma: no cover

    def length(self, m: Matrix) -> int:
        pos = self.root_set
        return sum(1 for b in self.u_roots if -apply_matrix(m, b) in pos)


def _components(datum: RootDatum) -> list[list[Weight]]:
    simple = list(datum.simple_roots)
    seen: set[int] = set()
    comps = []
    for i in range(len(simple)):
        if i in seen:
            continue
        stack, comp = [i], []
        seen.add(i)
        while stack:
            j = stack.pop()
            comp.append(simple[j])
            for k in range(len(simple)):
                if k not in seen and datum.pair(simple[j], simple[k]) != 0:
                    seen.add(k)
                    stack.append(k)
        comps.append(comp)
    return comps


def expected_order(datum: RootDatum) -> int:
    """Order of the Weyl group if the positive system is a product of type A pieces."""
    simple = datum.simple_roots
    if simple and len(simple) != matrix_rank([a.coords for a in simple]):
        raise UnsupportedRootSystem("simple roots are linearly dependent")
    comps = _components(datum)
    if sum(len(c) * (len(c) + 1) // 2 for c in comps) != len(datum.root_set):
        raise UnsupportedRootSystem("positive system is not a product of type A systems")
    if len(datum.root_set) != len(datum.u_roots):
        raise UnsupportedRootSystem("repeated roots in the positive system")
    for comp in comps:
        # type A: every simple root has the same length and neighbours pair to -1/2 of it
        lengths = {datum.pair(a, a) for a in comp}
        if len(lengths) != 1:
            raise UnsupportedRootSystem("component with roots of different lengths")
        if len(comp) > 4:
            raise UnsupportedRootSystem("components of rank above 4 are not supported")
    return math.prod(math.factorial(len(c) + 1) for c in comps)


def enumerate_weyl_group(datum: RootDatum) -> list[WeylElement]:
    """All elements of the Weyl group with their lengths, by closure under simple reflections.

    Lengths are inversion counts; ``word`` is a reduced word in the simple
    reflections, found breadth first.
    """
    n = datum.rank
    order = expected_order(datum)
    simple = [datum.reflection_matrix(a) for a in datum.simple_roots]
    pos = datum.root_set
    full = pos | {-a for a in pos}
    for s in simple:
        if any(apply_matrix(s, b) not in full for b in pos):
            raise UnsupportedRootSystem("simple reflection does not permute the roots")

    ident = _identity(n)
    found = {ident: ()}
    queue = deque([ident])
    bound = 10 * order
    while queue:
        m = queue.popleft()
        for i, s in enumerate(simple):
            nm = _matmul(m, s)
            if nm not in found:
                found[nm] = found[m] + (i,)
                queue.append(nm)
                if len(found) > bound:
                    raise UnsupportedRootSystem(f"closure exceeded {bound} elements")
    if len(found) != order:
        raise UnsupportedRootSystem(f"enumerated {len(found)} elements, expected {order}")
    out = [WeylElement(m, datum.length(m), word) for m, word in found.items()]
    out.sort(key=lambda w: (w.length, w.word))
    return out


def levi_datum(datum: RootDatum, keep: Sequence[int]) -> RootDatum:
    """Levi sub-datum generated by the simple roots with the given indices."""
    simple = datum.simple_roots
    gens = [simple[i] for i in keep]
    base = matrix_rank([g.coords for g in gens]) if gens else 0
    roots = tuple(
        b for b in datum.u_roots
        if gens and matrix_rank([g.coords for g in gens] + [b.coords]) == base
    )
    return RootDatum(datum.inner, roots)

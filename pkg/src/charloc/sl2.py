"""Characters and branching for the pair (sl2, SO(2)).

Rank-one coordinates: ``X`` is the generator of the SO(2) characters, stored
at doubled coordinate 1, so the root is ``X**2`` and the SO(2)-type ``k``
sits at doubled coordinate ``k``. The Weyl element is ``1 - X**-2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .char_ring import LaurentPoly
from .lattice import InnerProduct, LatticeError, RootDatum, Weight
from .localization import RationalChar, rc_add, rc_dual, rc_eq
from .series import BoxTooSmall, TruncatedSeries, expand_rational, kernel_y
from .weyl_kostant import euler_character, highest_weight_decomposition, restrict_finite

SL2 = RootDatum(InnerProduct(((1,),)), (Weight((2,)),))
ROOT = Weight((2,))
UP = Weight((1,))
DOWN = Weight((-1,))


class IdentityFalsified(AssertionError):
    pass


def X(k: int) -> Weight:
    return Weight((k,))


@dataclass(frozen=True, order=True)
class Sl2Module:
    kind: str
    k: int

    FINITE = "F"
    PLUS = "D+"
    MINUS = "D-"

    def __post_init__(self):
        if self.kind == self.FINITE:
            ok = self.k >= 0
        elif self.kind in (self.PLUS, self.MINUS):
            ok = self.k >= 1
        else:
            raise LatticeError(f"unknown sl2 module kind {self.kind!r}")
        if not ok:
            raise LatticeError(f"label {self.k} out of range for {self.kind}")

    @classmethod
    def finite(cls, k: int) -> "Sl2Module":
        return cls(cls.FINITE, k)

    @classmethod
    def plus(cls, k: int) -> "Sl2Module":
        return cls(cls.PLUS, k)

    @classmethod
    def minus(cls, k: int) -> "Sl2Module":
        return cls(cls.MINUS, k)

    @classmethod
    def parse(cls, text: str) -> "Sl2Module":
        """``F3``, ``D5`` or ``D+5``, ``D-2``."""
        t = text.strip()
        for prefix, kind in (("D+", cls.PLUS), ("D-", cls.MINUS), ("D", cls.PLUS), ("F", cls.FINITE)):
            if t.startswith(prefix):
                try:
                    return cls(kind, int(t[len(prefix):]))
                except ValueError as exc:
                    raise LatticeError(f"cannot parse sl2 module {text!r}") from exc
        raise LatticeError(f"cannot parse sl2 module {text!r}")

    @property
    def is_discrete(self) -> bool:
        return self.kind != self.FINITE

    @property
    def cone(self) -> int:
        """+1 for D+, -1 for D-, 0 for finite modules."""
        return {self.FINITE: 0, self.PLUS: 1, self.MINUS: -1}[self.kind]

    def __str__(self) -> str:
        return f"{self.kind}{self.k}"


def sl2_character(m: Sl2Module) -> RationalChar:
    if m.kind == Sl2Module.FINITE:
        return euler_character(SL2, X(m.k))
    plus = RationalChar.over(LaurentPoly.monomial(X(m.k)), [ROOT])
    return plus if m.kind == Sl2Module.PLUS else rc_dual(plus)


def restriction(m: Sl2Module, box: int) -> TruncatedSeries:
    """SO(2)-type multiplicities of ``m``; discrete series expand toward their own cone."""
    if m.kind == Sl2Module.FINITE:
        return TruncatedSeries.from_poly(restrict_finite(SL2, X(m.k)), box)
    direction = UP if m.kind == Sl2Module.PLUS else DOWN
    return expand_rational(sl2_character(m), direction, box, SL2.inner)


def blattner(k: int, box: int) -> TruncatedSeries:
    """Expansion of ``X**k / (1 - X**2)``: ones at ``k, k+2, ...``."""
    if k < 1:
        raise LatticeError("discrete series labels start at 1")
    return restriction(Sl2Module.plus(k), box)


Combination = Union[Sl2Module, Sequence[tuple[Sl2Module, int]]]


def _terms(m: Combination) -> list[tuple[Sl2Module, int]]:
    return [(m, 1)] if isinstance(m, Sl2Module) else list(m)


def combination_character(m: Combination) -> RationalChar:
    acc = RationalChar.from_poly(LaurentPoly.zero(1))
    for mod, c in _terms(m):
        acc = rc_add(acc, sl2_character(mod) * c)
    return acc


def multiplicity_profile(m: Combination, box: int) -> dict[str, int]:
    """Largest absolute multiplicity per parity of the SO(2)-type."""
    total = TruncatedSeries.zeros((box,))
    for mod, c in _terms(m):
        total = total + restriction(mod, box).scale(c)
    out = {"even": 0, "odd": 0}
    for w, c in total.items():
        key = "odd" if w.coords[0] % 2 else "even"
        out[key] = max(out[key], abs(c))
    return out


@dataclass(frozen=True)
class Decomposition:
    summands: tuple[tuple[Sl2Module, int], ...]
    complete: bool = True

    def to_json(self) -> dict:
        return {
            "decomposable": True,
            "complete": self.complete,
            "summands": [{"module": str(m), "multiplicity": c} for m, c in self.summands],
        }


@dataclass(frozen=True)
class NotDiscretelyDecomposable:
    reason: str
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"decomposable": False, "reason": self.reason, "evidence": self.evidence}


def _divergence(a: Sl2Module, b: Sl2Module, radii: Iterable[int]) -> dict[int, int]:
    """Multiplicity of one fixed SO(2)-type in the product of truncated restrictions."""
    target = X(a.k * a.cone + b.k * b.cone)
    out = {}
    for r in radii:
        p = restriction(a, r).to_poly() * restriction(b, r).to_poly()
        out[r] = p.coefficient(target)
    return out


def tensor_decompose(a: Sl2Module, b: Sl2Module, box: int = 60):
    """Decompose ``a (x) b`` by peeling minimal SO(2)-types.

    Returns a ``Decomposition`` (``complete=False`` when the peeling runs out
    of box, as for two discrete series of the same sign) or a
    ``NotDiscretelyDecomposable`` verdict.
    """
    product = sl2_character(a) * sl2_character(b)
    if not a.is_discrete and not b.is_discrete:
        p = restrict_finite(SL2, X(a.k)) * restrict_finite(SL2, X(b.k))
        parts = tuple((Sl2Module.finite(w.coords[0]), c) for w, c in highest_weight_decomposition(SL2, p))
        total = combination_character(parts)
        if not rc_eq(total, product):
            raise IdentityFalsified(f"{a} x {b}: Clebsch-Gordan sum disagrees with the product character")
        return Decomposition(parts)

    if a.cone * b.cone == -1:
        radii = (box // 2, box)
        growth = _divergence(a, b, radii)
        lo, hi = growth[radii[0]], growth[radii[1]]
        if hi > lo:
            return NotDiscretelyDecomposable(
                "multiplicity of a fixed SO(2)-type grows with the truncation (continuous spectrum)",
                {"so2_type": a.k * a.cone + b.k * b.cone, "multiplicity_by_box": {str(r): v for r, v in growth.items()}},
            )
        raise IdentityFalsified(f"{a} x {b}: expected divergent multiplicities, got {growth}")

    sign = a.cone or b.cone
    direction = UP if sign > 0 else DOWN
    rest = expand_rational(product, direction, box, SL2.inner)
    parts: list[tuple[Sl2Module, int]] = []
    complete = False
    margin = box - 2
    while True:
        found = [(sign * w.coords[0], c) for w, c in rest.items()]
        if not found:
            break
        e, c = min(found)
        if e < 1:
            return NotDiscretelyDecomposable(
                f"leading SO(2)-type {sign * e} is not the lowest type of a discrete series",
                {"so2_type": sign * e, "multiplicity": c},
            )
        if c < 0:
            return NotDiscretelyDecomposable(
                f"negative multiplicity {c} at SO(2)-type {sign * e}", {"so2_type": sign * e, "multiplicity": c}
            )
        if e > margin:
            break
        m = Sl2Module(Sl2Module.PLUS if sign > 0 else Sl2Module.MINUS, e)
        parts.append((m, c))
        rest = rest - restriction(m, box).scale(c)
    parts.sort(key=lambda t: -t[0].k)
    if rc_eq(combination_character(parts), product):
        complete = True
    elif not any(True for _ in rest.items()):
        raise IdentityFalsified(f"{a} x {b}: peeled sum vanishes on the box but not as a character")
    return Decomposition(tuple(parts), complete)


def kernel_relation_check(box: int, minus_k: int = 1, sign: int = -1) -> bool:
    """Whether ``[D1] + sign*[D-minus_k]``, restricted to SO(2), equals ``y^(1)`` on the box."""
    if box < 4:
        raise BoxTooSmall("kernel relation needs a box of at least 4")
    lhs = restriction(Sl2Module.plus(1), box) + restriction(Sl2Module.minus(minus_k), box).scale(sign)
    return lhs.agrees(kernel_y(ROOT, 1, False, box))

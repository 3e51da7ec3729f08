"""Regularity conditions on K-types and infinitesimal characters.

Both conditions quantify over the Weyl group of ``Delta(u')``, the choice of
``beta_1`` among the distinct ``betas`` and exponent tuples ``n``. The
inequality depends only on ``beta_1`` and the multiset of ``(beta_i, n_i)``,
so orderings beyond the choice of ``beta_1`` are not enumerated.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .lattice import LatticeError, RootDatum, Weight, as_fraction

DEFAULT_CAP = 200_000


class CombinatorialBlowup(ValueError):
    pass


@dataclass(frozen=True)
class RegularityInstance:
    """``datum`` carries ``Delta(u')``; ``betas`` are the distinct roots of ``u + u'``."""

    datum: RootDatum
    betas: tuple[Weight, ...]
    lam: Weight
    lambda0: Optional[Weight] = None
    b: int = 0
    cX: Fraction = Fraction(0)
    dX: Fraction = Fraction(0)
    include_first: bool = True
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        betas = tuple(self.betas)
        if len(set(betas)) != len(betas):
            raise LatticeError("betas must be pairwise distinct")
        for w in betas + (self.lam,) + ((self.lambda0,) if self.lambda0 is not None else ()):
            if w.rank != self.datum.rank:
                raise LatticeError(f"{w} does not have rank {self.datum.rank}")
        if self.b < 0:
            raise LatticeError("b must be nonnegative")
        cX, dX = as_fraction(self.cX), as_fraction(self.dX)
        if cX < 0 or dX < 0:
            raise LatticeError("cX and dX must be nonnegative")
        object.__setattr__(self, "betas", betas)
        object.__setattr__(self, "cX", cX)
        object.__setattr__(self, "dX", dX)
        if self.lambda0 is None:
            object.__setattr__(self, "lambda0", self.datum.rho_u)

    def with_lambda(self, lam: Weight) -> "RegularityInstance":
        return RegularityInstance(
            self.datum, self.betas, lam, self.lambda0, self.b, self.cX, self.dX, self.include_first, self.cap
        )

    @classmethod
    def from_json(cls, doc) -> "RegularityInstance":
        """Weights in ``L0`` coordinates; ``datum`` is an inline root datum."""
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            datum = RootDatum.from_json(doc["datum"])
            betas = tuple(Weight.from_l0(x) for x in doc.get("betas", []))
            lam = Weight.from_l0(doc["lambda"])
            lam0 = Weight.from_l0(doc["lambda0"]) if doc.get("lambda0") is not None else None
            return cls(
                datum,
                betas,
                lam,
                lam0,
                int(doc.get("b", 0)),
                as_fraction(doc.get("cX", 0)),
                as_fraction(doc.get("dX", 0)),
                bool(doc.get("include_first", True)),
                int(doc.get("cap", DEFAULT_CAP)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, LatticeError):
                raise
            raise LatticeError(f"malformed regularity config: {exc}") from exc


@dataclass(frozen=True)
class Witness:
    w_index: int
    w_word: tuple[int, ...]
    beta1: Weight
    n: tuple[int, ...]
    lhs: Fraction
    rhs: Fraction

    def to_json(self) -> dict:
        return {
            "w": {"index": self.w_index, "word": list(self.w_word)},
            "beta1": [str(c) for c in self.beta1.l0_coords],
            "n": list(self.n),
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
        }


@dataclass(frozen=True)
class ConditionResult:
    holds: bool
    witness: Optional[Witness] = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "checked": self.checked,
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def _touch_count(inst: RegularityInstance, subset) -> int:
    """``#{beta in Delta(u') | some beta_i, i in subset, is not orthogonal to beta}``."""
    d = inst.datum
    return sum(1 for g in d.u_roots if any(d.pair(inst.betas[i], g) != 0 for i in subset))


def admissible_S(inst: RegularityInstance) -> list[tuple[int, ...]]:
    """Exponent tuples obeying the subset inequality, in lexicographic order."""
    r = len(inst.betas)
    caps = [_touch_count(inst, (i,)) for i in range(r)]
    subsets = [s for k in range(2, r + 1) for s in itertools.combinations(range(r), k)]
    bounds = [(s, _touch_count(inst, s)) for s in subsets]
    total = 1
    for c in caps:
        total *= c + 1
    if total > inst.cap:
        raise CombinatorialBlowup(f"{total} candidate exponent tuples exceed the cap {inst.cap}")
    return [
        n for n in itertools.product(*[range(c + 1) for c in caps])
        if all(sum(n[i] for i in s) <= bound for s, bound in bounds)
    ]


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def admissible_Sprime(inst: RegularityInstance) -> list[tuple[int, ...]]:
    """Exponent tuples with the prescribed total, in lexicographic order."""
    r = len(inst.betas)
    total = inst.b * _touch_count(inst, range(r))
    if r and math.comb(total + r - 1, r - 1) > inst.cap:
        raise CombinatorialBlowup(f"exponent tuples of sum {total} exceed the cap {inst.cap}")
    return list(_compositions(total, r))


def threshold(inst: RegularityInstance, first: int, n: tuple[int, ...]) -> Fraction:
    """Right-hand side of the regularity inequality for ``beta_1 = betas[first]``."""
    d = inst.datum
    b1 = inst.betas[first]
    out = Fraction(1, 2) * d.pair(b1, b1)
    for i, (bi, ni) in enumerate(zip(inst.betas, n)):
        if i == first and not inst.include_first:
            continue
        out += Fraction(ni + 1, 2) * d.pair(b1, bi)
    return out


def _check(inst: RegularityInstance, tuples, shifted: bool) -> ConditionResult:
    d = inst.datum
    if not inst.betas:
        return ConditionResult(True)
    base = inst.lam + d.rho_u if shifted else inst.lam
    checked = 0
    for wi, w in enumerate(d.weyl_group):
        point = w(base) - inst.lambda0
        for first, b1 in enumerate(inst.betas):
            lhs = abs(d.pair(point, b1))
            for n in tuples:
                checked += 1
                rhs = threshold(inst, first, n)
                if lhs < rhs:
                    return ConditionResult(False, Witness(wi, w.word, b1, n, lhs, rhs), checked)
    return ConditionResult(True, None, checked)


def check_condition_S(inst: RegularityInstance) -> ConditionResult:
    """K-type regularity; the witness is the lexicographically least ``(w, beta_1, n)`` violator."""
    return _check(inst, admissible_S(inst) if inst.betas else [], shifted=True)


def check_condition_Sprime(inst: RegularityInstance) -> ConditionResult:
    """Infinitesimal-character regularity with the fixed exponent total and unshifted ``w(lambda)``."""
    return _check(inst, admissible_Sprime(inst) if inst.betas else [], shifted=False)


def multiplicity_bound(inst: RegularityInstance, lam: Weight) -> Fraction:
    d = inst.datum
    prod = Fraction(1)
    for g in d.u_roots:
        prod *= d.pair(lam + d.rho_u, g) ** inst.b
    return inst.cX * prod + inst.dX


def check_multiplicity_bound(profile: Mapping[Weight, int], inst: RegularityInstance) -> bool:
    return all(m <= multiplicity_bound(inst, lam) for lam, m in profile.items())

"""Truncated unbounded Laurent series on a box of the lattice ``L``.

A ``TruncatedSeries`` stores every coefficient on the box
``|coords_i| <= box_i`` (doubled coordinates) together with a smaller
``valid`` box on which the coefficients are trustworthy. Products with
polynomials shrink ``valid`` by the polynomial's support radius; series that
are generated in closed form (geometric rays and their products) are exact on
the whole box.
"""

from __future__ import annotations

import enum
import itertools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .char_ring import LaurentPoly
from .lattice import InnerProduct, LatticeError, Weight, pair
from .localization import RationalChar, factor_exponent


class BoxTooSmall(ValueError):
    pass


class TheoremFalsified(AssertionError):
    """A window-vanishing kernel element turned out nonzero."""


class TruncationWarning(UserWarning):
    pass


Box = tuple[int, ...]


def as_box(box, rank: int) -> Box:
    if isinstance(box, int):
        box = (box,) * rank
    box = tuple(int(b) for b in box)
    if len(box) != rank:
        raise LatticeError(f"box {box} does not have rank {rank}")
    if any(b < 0 for b in box):
        raise BoxTooSmall(f"negative box radius in {box}")
    return box


class TruncatedSeries:
    __slots__ = ("coeffs", "box", "valid")

    def __init__(self, coeffs: np.ndarray, box: Box, valid: Box | None = None):
        box = tuple(box)
        valid = box if valid is None else tuple(valid)
        if coeffs.shape != tuple(2 * b + 1 for b in box):
            raise LatticeError(f"coefficient grid {coeffs.shape} does not match box {box}")
        if any(v > b for v, b in zip(valid, box)):
            raise LatticeError(f"valid box {valid} exceeds box {box}")
        self.coeffs = coeffs
        self.box = box
        self.valid = valid

    @classmethod
    def zeros(cls, box: Box) -> "TruncatedSeries":
        arr = np.zeros(tuple(2 * b + 1 for b in box), dtype=object)
        arr[...] = 0
        return cls(arr, box)

    @classmethod
    def from_poly(cls, p: LaurentPoly, box) -> "TruncatedSeries":
        box = as_box(box, p.rank)
        out = cls.zeros(box)
        for k, v in p.raw_items():
            if all(abs(x) <= b for x, b in zip(k, box)):
                out.coeffs[out._index(k)] = v
        return out

    @property
    def rank(self) -> int:
        return len(self.box)

    def is_valid_empty(self) -> bool:
        return any(v < 0 for v in self.valid)

    def _index(self, k: Sequence[int]) -> tuple[int, ...]:
        return tuple(x + b for x, b in zip(k, self.box))

    def in_box(self, w: Weight, box: Box | None = None) -> bool:
        box = self.box if box is None else box
        return all(abs(x) <= b for x, b in zip(w.coords, box))

    def coefficient(self, w: Weight) -> int:
        if not self.in_box(w):
            raise BoxTooSmall(f"{w} lies outside the box {self.box}")
        return self.coeffs[self._index(w.coords)]

    def __getitem__(self, w: Weight) -> int:
        return self.coefficient(w)

    def _valid_slices(self, valid: Box | None = None) -> tuple[slice, ...]:
        valid = self.valid if valid is None else valid
        return tuple(slice(b - v, b + v + 1) for b, v in zip(self.box, valid))

    def valid_view(self, valid: Box | None = None) -> np.ndarray:
        if self.is_valid_empty():
            raise BoxTooSmall("valid box is empty")
        return self.coeffs[self._valid_slices(valid)]

    def items(self, valid: Box | None = None):
        """Nonzero ``(Weight, coefficient)`` pairs inside the valid box, canonical order."""
        valid = self.valid if valid is None else valid
        view = self.valid_view(valid)
        for idx in zip(*np.nonzero(view != 0)):
            yield Weight(tuple(int(i) - v for i, v in zip(idx, valid))), view[idx]

    def is_zero(self) -> bool:
        return not np.any(self.valid_view() != 0)

    def _align(self, other: "TruncatedSeries"):
        if other.box != self.box:
            raise LatticeError(f"box mismatch: {self.box} vs {other.box}")

    def _meet(self, other: "TruncatedSeries") -> Box:
        return tuple(min(a, b) for a, b in zip(self.valid, other.valid))

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._align(other)
        return TruncatedSeries(self.coeffs + other.coeffs, self.box, self._meet(other))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._align(other)
        return TruncatedSeries(self.coeffs - other.coeffs, self.box, self._meet(other))

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(-self.coeffs, self.box, self.valid)

    def scale(self, c: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs * c, self.box, self.valid)

    def __rmul__(self, c: int) -> "TruncatedSeries":
        return self.scale(c)

    def mul_poly(self, p: LaurentPoly) -> "TruncatedSeries":
        """Multiply by a polynomial; ``valid`` shrinks by its support radius per axis."""
        if p.rank != self.rank:
            raise LatticeError("rank mismatch")
        out = TruncatedSeries.zeros(self.box)
        for k, v in p.raw_items():
            src, dst = [], []
            for shift, b in zip(k, self.box):
                lo, hi = max(-b, -b + shift), min(b, b + shift)
                if lo > hi:
                    break
                dst.append(slice(lo + b, hi + b + 1))
                src.append(slice(lo - shift + b, hi - shift + b + 1))
            else:
                out.coeffs[tuple(dst)] += v * self.coeffs[tuple(src)]
        valid = tuple(v - r for v, r in zip(self.valid, p.radii()))
        out.valid = valid
        return out

    def with_valid(self, valid: Box) -> "TruncatedSeries":
        valid = tuple(min(a, b) for a, b in zip(valid, self.valid))
        return TruncatedSeries(self.coeffs, self.box, valid)

    def agrees(self, other: "TruncatedSeries") -> bool:
        """Equal on the intersection of both valid boxes."""
        self._align(other)
        valid = self._meet(other)
        if any(v < 0 for v in valid):
            raise BoxTooSmall("valid boxes do not overlap")
        return bool(np.all(self.valid_view(valid) == other.valid_view(valid)))

    def to_poly(self) -> LaurentPoly:
        return LaurentPoly(list(self.items()), self.rank)

    def dumps(self) -> str:
        """Dense grid dump, row-major over doubled coordinates, with headers."""
        lines = [
            f"# rank: {self.rank}",
            "# box: " + " ".join(map(str, self.box)),
            "# valid_box: " + " ".join(map(str, self.valid)),
        ]
        grid = self.coeffs.reshape(-1, self.coeffs.shape[-1])
        lines += [" ".join(str(int(x)) for x in row) for row in grid]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "TruncatedSeries":
        head, rows = {}, []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, val = line[1:].partition(":")
                head[key.strip()] = [int(x) for x in val.split()]
            else:
                rows.append([int(x) for x in line.split()])
        try:
            box, valid = tuple(head["box"]), tuple(head["valid_box"])
        except KeyError as exc:
            raise LatticeError(f"series dump lacks header {exc}") from exc
        shape = tuple(2 * b + 1 for b in box)
        arr = np.empty(shape, dtype=object)
        flat = [x for row in rows for x in row]
        if len(flat) != math.prod(shape):
            raise LatticeError("series dump has the wrong number of entries")
        arr.reshape(-1)[:] = flat
        return cls(arr, box, valid)

    def __repr__(self) -> str:
        return f"TruncatedSeries(box={self.box}, valid={self.valid}, nonzero={int(np.count_nonzero(self.coeffs != 0))})"


def _integer_functional(c: Sequence[Fraction]) -> tuple[int, ...]:
    den = math.lcm(*(Fraction(x).denominator for x in c))
    return tuple(int(Fraction(x) * den) for x in c)


def cone_expand(num: LaurentPoly, rays: Sequence[tuple[Weight, int]], functional: Sequence, box) -> TruncatedSeries:
    """``num * prod (1 - [gamma])^(-n)`` expanded as ``sum binom(n-1+k, n-1) [k*gamma]`` per ray.

    ``functional`` must be positive on every ray; it bounds the enumeration so
    the result is exact on the whole box.
    """
    box = as_box(box, num.rank)
    phi = _integer_functional(functional)
    gammas = [g.coords for g, _ in rays]
    steps = [sum(a * b for a, b in zip(phi, g)) for g in gammas]
    if any(s <= 0 for s in steps):
        raise LatticeError("rays do not lie in the open half-space of the functional")
    top = sum(abs(a) * b for a, b in zip(phi, box))
    ns = [n for _, n in rays]
    out = TruncatedSeries.zeros(box)
    arr = out.coeffs

    def walk(i: int, pos: list[int], weight: int, height: int):
        if i == len(gammas):
            if all(abs(x) <= b for x, b in zip(pos, box)):
                arr[tuple(x + b for x, b in zip(pos, box))] += weight
            return
        g, n, s = gammas[i], ns[i], steps[i]
        k = 0
        p = list(pos)
        while height + k * s <= top:
            walk(i + 1, p, weight * math.comb(n - 1 + k, n - 1), height + k * s)
            k += 1
            p = [x + y for x, y in zip(p, g)]

    for k, v in num.raw_items():
        walk(0, list(k), v, sum(a * b for a, b in zip(phi, k)))
    return out


def d_factor(alpha: Weight, sign: int) -> LaurentPoly:
    """``alpha^(-1/2) + sign * alpha^(1/2)``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    half = alpha.sqrt()
    return LaurentPoly({-half: 1, half: sign}, alpha.rank)


def _require_root(alpha: Weight):
    if alpha.is_zero():
        raise LatticeError("alpha must be nonzero")
    alpha.sqrt()


def _ray_product(alphas: Sequence[Weight], ns: Sequence[int], box, num: LaurentPoly | None = None) -> TruncatedSeries:
    """``num * prod s_alpha^n`` exactly on the box."""
    rank = alphas[0].rank
    start = Weight.zero(rank)
    for a, n in zip(alphas, ns):
        start = start + a.sqrt() * n
    head = LaurentPoly.monomial(start) if num is None else num.shift(start)
    functional = tuple(sum(a.coords[i] for a in alphas) for i in range(rank))
    return cone_expand(head, list(zip(alphas, ns)), functional, box)


def geometric_s(alpha: Weight, box) -> TruncatedSeries:
    """``s_alpha = alpha^(1/2) * sum_{k>=0} alpha^k``."""
    _require_root(alpha)
    return _ray_product([alpha], [1], box)


def reflected_s(alpha: Weight, box) -> TruncatedSeries:
    """``w_alpha s_alpha = alpha^(-1/2) * sum_{k>=0} alpha^(-k)``."""
    _require_root(alpha)
    return _ray_product([-alpha], [1], box)


@dataclass(frozen=True)
class KernelSpec:
    alphas: tuple[Weight, ...]
    exponents: tuple[int, ...]

    def __post_init__(self):
        alphas, ns = tuple(self.alphas), tuple(int(n) for n in self.exponents)
        if not alphas or len(alphas) != len(ns):
            raise LatticeError("need one positive exponent per alpha")
        if len(set(alphas)) != len(alphas):
            raise LatticeError("alphas must be pairwise distinct")
        if any(n < 1 for n in ns):
            raise LatticeError("exponents must be >= 1")
        for a in alphas:
            _require_root(a)
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "exponents", ns)

    @property
    def rank(self) -> int:
        return self.alphas[0].rank

    def annihilator(self) -> LaurentPoly:
        out = LaurentPoly.one(self.rank)
        for a, n in zip(self.alphas, self.exponents):
            out = out * d_factor(a, -1) ** n
        return out


def kernel_y_mixed(spec: KernelSpec, box, *, times: LaurentPoly | None = None) -> TruncatedSeries:
    """``prod s_i^{n_i} + (-1)^{1+sum n} prod (w_i s_i)^{n_i}``, optionally times a polynomial.

    Multiplying by ``times`` happens before truncation, so the result stays
    exact on the whole box.
    """
    sign = -1 if (1 + sum(spec.exponents)) % 2 else 1
    forward = _ray_product(spec.alphas, spec.exponents, box, times)
    backward = _ray_product([-a for a in spec.alphas], spec.exponents, box, times)
    return forward + backward.scale(sign)


def kernel_y(alpha: Weight, n: int, plus: bool, box, *, shift: Weight | None = None) -> TruncatedSeries:
    """``y_alpha^(n)``, or ``d_{alpha,+} * y_alpha^(n)`` when ``plus``; optionally shifted."""
    spec = KernelSpec((alpha,), (n,))
    times = d_factor(alpha, 1) if plus else LaurentPoly.one(alpha.rank)
    if shift is not None:
        times = times.shift(shift)
    return kernel_y_mixed(spec, box, times=times)


def annihilation_check(spec: KernelSpec, z: TruncatedSeries) -> bool:
    """Whether ``prod d_{alpha_i,-}^{n_i} * z`` vanishes on the shrunken valid box."""
    out = z
    for a, n in zip(spec.alphas, spec.exponents):
        d = d_factor(a, -1)
        for _ in range(n):
            out = out.mul_poly(d)
    if out.is_valid_empty():
        raise BoxTooSmall(f"valid box {z.valid} too small for the annihilator")
    return out.is_zero()


def window_bounds(spec: KernelSpec, inner: InnerProduct) -> list[Fraction]:
    """Right-hand sides of the window inequality, one per alpha."""
    out = []
    for i, a in enumerate(spec.alphas):
        b = Fraction(spec.exponents[i] + 1, 2) * pair(a, a, inner)
        for j, c in enumerate(spec.alphas):
            if j != i:
                b += Fraction(spec.exponents[j], 2) * pair(a, c, inner)
        out.append(b)
    return out


def in_window(spec: KernelSpec, lam0: Weight, lam: Weight, inner: InnerProduct) -> bool:
    diff = lam - lam0
    return any(
        abs(pair(diff, a, inner)) < b for a, b in zip(spec.alphas, window_bounds(spec, inner))
    )


def window_mask(spec: KernelSpec, lam0: Weight, inner: InnerProduct, valid: Box) -> np.ndarray:
    """Boolean grid over ``valid``: which points satisfy the window inequality for some alpha."""
    grids = np.meshgrid(*[np.arange(-v, v + 1) for v in valid], indexing="ij")
    mask = np.zeros(grids[0].shape, dtype=bool) if grids else np.zeros((), dtype=bool)
    for a, bound in zip(spec.alphas, window_bounds(spec, inner)):
        f = inner.functional(a)
        den = math.lcm(*(x.denominator for x in f), bound.denominator)
        ints = [int(x * den) for x in f]
        value = sum(c * (g - x0) for c, g, x0 in zip(ints, grids, lam0.coords))
        mask |= np.abs(value) < bound * den
    return mask


class Verdict(str, enum.Enum):
    ZERO = "zero"
    NONZERO_WINDOW_HIT = "nonzero-with-window-hit"
    UNDECIDABLE = "undecidable"


def window_fits(spec: KernelSpec, lam0: Weight, inner: InnerProduct, valid: Box) -> bool:
    """Whether the window's cross-section along every ``alpha_i`` through ``lam0`` lies in ``valid``."""
    for a, bound in zip(spec.alphas, window_bounds(spec, inner)):
        reach = bound / pair(a, a, inner)
        for x0, ai, v in zip(lam0.coords, a.coords, valid):
            if abs(x0) + reach * abs(ai) > v:
                return False
    return True


def window_uniqueness_check(spec: KernelSpec, lam0: Weight, z: TruncatedSeries, inner: InnerProduct) -> Verdict:
    """Decide a kernel element from its coefficients inside the window.

    Raises ``TheoremFalsified`` if the window coefficients vanish while ``z``
    does not.
    """
    if not window_fits(spec, lam0, inner, z.valid):
        return Verdict.UNDECIDABLE
    if not annihilation_check(spec, z):
        raise ValueError("z is not annihilated by the kernel operator")
    view = z.valid_view()
    mask = window_mask(spec, lam0, inner, z.valid)
    if np.any(view[mask] != 0):
        return Verdict.NONZERO_WINDOW_HIT
    if np.any(view != 0):
        raise TheoremFalsified("window coefficients vanish but z is nonzero")
    return Verdict.ZERO


def expand_rational(x: RationalChar, direction: Weight, box, inner: InnerProduct) -> TruncatedSeries:
    """Geometric expansion of every denominator factor toward positive ``<., direction>``."""
    phi = inner.functional(direction)
    num = x.num
    rays: dict[Weight, int] = {}
    for f in x.den:
        gamma = factor_exponent(f)
        height = pair(gamma, direction, inner)
        if height == 0:
            raise LatticeError(f"direction {direction} is orthogonal to factor 1 - [{gamma}]")
        if height < 0:
            # 1/(1 - [g]) = -[-g] / (1 - [-g])
            num = num * LaurentPoly.monomial(-gamma, -1)
            gamma = -gamma
        rays[gamma] = rays.get(gamma, 0) + 1
    if not rays:
        return TruncatedSeries.from_poly(num, as_box(box, x.rank))
    return cone_expand(num, sorted(rays.items()), phi, box)


def beta_finiteness(z: TruncatedSeries, betas: Sequence[Weight]) -> bool:
    """Whether the support of ``z`` is finite along the ``betas``, as far as the box can tell.

    A nonzero coefficient whose ``beta``-translate leaves the valid box cannot
    be certified; that case returns ``False`` with a ``TruncationWarning``.
    """
    valid = z.valid
    for w, _ in z.items():
        for b in betas:
            for p in (w + b, w - b):
                if not z.in_box(p, valid):
                    warnings.warn(
                        f"support at {w} reaches the box boundary along {b}; undecidable at this box",
                        TruncationWarning,
                        stacklevel=2,
                    )
                    return False
    return True


def box_points(valid: Box) -> Iterable[Weight]:
    for idx in itertools.product(*[range(-v, v + 1) for v in valid]):
        yield Weight(idx)

"""Brute-force test of the window theorem on a finite family of kernel generators.

The generators are shifted copies of the explicit kernel elements. Their
values on the window form a matrix ``M``; every integer vector in the
nullspace of ``M`` gives a combination whose window coefficients vanish, and
the theorem predicts that the combination vanishes on the whole box.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from .char_ring import LaurentPoly
from .lattice import InnerProduct, Weight
from .series import (
    KernelSpec,
    TruncatedSeries,
    Verdict,
    d_factor,
    kernel_y_mixed,
    window_mask,
    window_uniqueness_check,
)


def _shift_grid(rank: int, radius: int) -> list[Weight]:
    return [Weight(p) for p in itertools.product(range(-radius, radius + 1), repeat=rank)]


def kernel_generators(spec: KernelSpec, box, shift_radius: int = 2) -> list[tuple[str, TruncatedSeries]]:
    """Shifted kernel elements for ``prod d_{alpha_i,-}^{n_i}``.

    For every nonempty subset of the alphas and every exponent vector below
    ``spec.exponents`` the mixed element is included, plain and multiplied
    by one ``d_{alpha,+}`` factor, at each shift of the grid.
    """
    rank = spec.rank
    shifts = _shift_grid(rank, shift_radius)
    out = []
    r = len(spec.alphas)
    for size in range(1, r + 1):
        for idx in itertools.combinations(range(r), size):
            alphas = tuple(spec.alphas[i] for i in idx)
            for ns in itertools.product(*[range(1, spec.exponents[i] + 1) for i in idx]):
                sub = KernelSpec(alphas, ns)
                factors = [("", LaurentPoly.one(rank))] + [
                    (f"d+[{i}]", d_factor(spec.alphas[i], 1)) for i in idx
                ]
                for tag, factor in factors:
                    for s in shifts:
                        name = f"y{list(idx)}{list(ns)}{tag}@{list(s.coords)}"
                        out.append((name, kernel_y_mixed(sub, box, times=factor.shift(s))))
    return out


def _int_matrix(columns: list[np.ndarray]) -> DomainMatrix:
    rows = np.stack(columns, axis=1) if columns else np.zeros((0, 0), dtype=object)
    return DomainMatrix([[ZZ(int(x)) for x in row] for row in rows], rows.shape, ZZ)


@dataclass(frozen=True)
class WindowReport:
    generators: int
    window_points: int
    box_points: int
    window_rank: int
    full_rank: int
    nullity: int
    trials: int
    verdicts: dict

    @property
    def ok(self) -> bool:
        return self.window_rank == self.full_rank and self.verdicts.get(Verdict.ZERO.value, 0) == self.trials

    def to_json(self) -> dict:
        return {
            "generators": self.generators,
            "window_points": self.window_points,
            "box_points": self.box_points,
            "window_rank": self.window_rank,
            "full_rank": self.full_rank,
            "nullity": self.nullity,
            "trials": self.trials,
            "verdicts": dict(self.verdicts),
            "ok": self.ok,
        }


def window_experiment(
    spec: KernelSpec,
    lam0: Weight,
    inner: InnerProduct,
    box,
    trials: int,
    seed: int = 0,
    shift_radius: int = 2,
    spread: int = 3,
) -> WindowReport:
    """Random window-vanishing combinations of generators, each checked to vanish on the box.

    Raises ``TheoremFalsified`` (from the window check) on a counterexample.
    """
    gens = kernel_generators(spec, box, shift_radius)
    valid = gens[0][1].valid
    mask = window_mask(spec, lam0, inner, valid)
    flat = [g.valid_view().reshape(-1) for _, g in gens]
    window_cols = [f[mask.reshape(-1)] for f in flat]
    m_window = _int_matrix(window_cols)
    m_full = _int_matrix(flat)
    null = m_window.nullspace().to_Matrix().tolist() if gens else []

    rng = random.Random(seed)
    verdicts: dict[str, int] = {}
    for _ in range(trials):
        coeffs = [0] * len(gens)
        for vec in null:
            c = rng.randint(-spread, spread)
            if c:
                coeffs = [a + c * int(v) for a, v in zip(coeffs, vec)]
        z = TruncatedSeries.zeros(gens[0][1].box).with_valid(valid)
        for c, (_, g) in zip(coeffs, gens):
            if c:
                z = z + g.scale(c)
        v = window_uniqueness_check(spec, lam0, z, inner)
        verdicts[v.value] = verdicts.get(v.value, 0) + 1
    return WindowReport(
        generators=len(gens),
        window_points=int(mask.sum()),
        box_points=int(mask.size),
        window_rank=m_window.rank(),
        full_rank=m_full.rank(),
        nullity=len(null),
        trials=trials,
        verdicts=verdicts,
    )

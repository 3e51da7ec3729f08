"""The twelve acceptance criteria, each with its own oracle and time budget.

Every check is exact. ``run_all`` returns one ``Result`` per criterion; a
criterion fails when its identity fails or when it overruns its budget.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from importlib.resources import files
from typing import Callable

from .char_ring import (
    LaurentPoly,
    exterior_weyl_element,
    poly_dual,
    top_exterior_weight,
    weyl_element,
)
from .kernel_window import window_experiment
from .lattice import InnerProduct, RootDatum, Weight
from .localization import rc_eq
from .regularity import RegularityInstance, admissible_S, check_condition_S
from .series import (
    KernelSpec,
    annihilation_check,
    d_factor,
    geometric_s,
    in_window,
    kernel_y,
)
from .sl2 import (
    ROOT,
    SL2,
    Decomposition,
    NotDiscretelyDecomposable,
    Sl2Module,
    X,
    blattner,
    combination_character,
    kernel_relation_check,
    sl2_character,
    tensor_decompose,
)
from .weyl_kostant import (
    check_duality,
    check_transitivity,
    cohomology_table,
    dual_highest_weight,
    highest_weight_decomposition,
    restrict_finite,
    weyl_dimension,
)

SHIPPED = ("sl2", "a2", "a2_levi", "a2_torus", "a2_roots", "a1xa1", "a3", "a4")


def load_datum(name: str) -> RootDatum:
    return RootDatum.load(files("charloc") / "data" / f"{name}.json")


@dataclass(frozen=True)
class Result:
    number: int
    title: str
    ok: bool
    seconds: float
    budget: float
    detail: str

    @property
    def passed(self) -> bool:
        return self.ok and self.seconds <= self.budget

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = "" if self.seconds <= self.budget else f" (over budget {self.budget:g}s)"
        return f"[{status}] criterion {self.number:2d}: {self.title} ({self.seconds:.2f}s){extra} - {self.detail}"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "identity_holds": self.ok,
            "seconds": round(self.seconds, 3),
            "budget": self.budget,
            "detail": self.detail,
        }


def _string(k: int) -> LaurentPoly:
    return LaurentPoly({X(k - 2 * j): 1 for j in range(k + 1)}, 1)


def c01_weyl_round_trip():
    bad = [k for k in range(51) if restrict_finite(SL2, X(k)) != _string(k)]
    return not bad, f"k=0..50, mismatches {bad}"


def c02_kostant_census():
    a2 = load_datum("a2")
    census = [1, 2, 2, 1]
    out, ok = [], True
    for name, lam, dim in (("0", [0, 0], 1), ("w1", [1, 0], 3), ("w1+w2", [1, 1], 8)):
        w = Weight.from_l0(lam)
        counts = [len(h) for h in cohomology_table(a2, w).values()]
        unit = all(c == 1 for h in cohomology_table(a2, w).values() for _, c in h.items())
        mass = restrict_finite(a2, w).total()
        good = counts == census and unit and mass == weyl_dimension(a2, w) == dim
        ok &= good
        out.append(f"{name}: {counts} mass {mass}")
    return ok, "; ".join(out)


def _clebsch_gordan(k: int, j: int) -> list[tuple[Sl2Module, int]]:
    return [(Sl2Module.finite(m), 1) for m in range(k + j, abs(k - j) - 1, -2)]


def c03_multiplicativity():
    bad = []
    for k in range(21):
        for j in range(21):
            # independent side: convolve the weight strings and peel highest weights
            conv = _string(k) * _string(j)
            peeled = [(Sl2Module.finite(w.coords[0]), c) for w, c in highest_weight_decomposition(SL2, conv)]
            if peeled != _clebsch_gordan(k, j):
                bad.append((k, j, "peel"))
                continue
            product = sl2_character(Sl2Module.finite(k)) * sl2_character(Sl2Module.finite(j))
            if not rc_eq(product, combination_character(peeled)):
                bad.append((k, j, "rc_eq"))
    return not bad, f"441 pairs, failures {bad[:5]}"


def c04_discrete_tensor():
    bad, count = [], 0
    for k in range(1, 11):
        for j in range(0, 6):
            if k < j + 3:
                continue
            count += 1
            a, b = Sl2Module.plus(k), Sl2Module.finite(j)
            res = tensor_decompose(a, b)
            expected = tuple((Sl2Module.plus(k + j - 2 * i), 1) for i in range(j + 1))
            product = sl2_character(a) * sl2_character(b)
            if not (isinstance(res, Decomposition) and res.complete and res.summands == expected
                    and rc_eq(product, combination_character(res.summands))):
                bad.append((k, j))
    return not bad, f"{count} pairs, failures {bad}"


def c05_blattner():
    bad = []
    for k in range(1, 11):
        s = blattner(k, 101)
        comb = {(e,): 1 for e in range(k, 102, 2)}
        got = {w.coords: c for w, c in s.items()}
        if got != comb or s.valid != (101,):
            bad.append(k)
    return not bad, f"k=1..10 at box 101, failures {bad}"


def _y_coefficients_match(n: int, box: int) -> bool:
    y = kernel_y(ROOT, n, False, box)
    sign = 1 if n % 2 else -1
    expected = {}
    i = 0
    while n + 2 * i <= box:
        c = math.comb(n - 1 + i, n - 1)
        expected[(n + 2 * i,)] = c
        expected[(-(n + 2 * i),)] = sign * c
        i += 1
    return {w.coords: c for w, c in y.items()} == expected


def c06_kernel_identities():
    box = 60
    dm, dp = d_factor(ROOT, -1), d_factor(ROOT, 1)
    one = geometric_s(ROOT, box).mul_poly(dm)
    checks = {"d-.s=1": {w.coords: c for w, c in one.items()} == {(0,): 1}}
    ys = {n: kernel_y(ROOT, n, False, box) for n in range(1, 6)}
    checks["d-.y(n)=y(n-1)"] = all(ys[n].mul_poly(dm).agrees(ys[n - 1]) for n in range(2, 6))
    checks["d-.y(1)=0"] = ys[1].mul_poly(dm).is_zero()
    checks["d-^n.y(n)=0"] = all(annihilation_check(KernelSpec((ROOT,), (n,)), ys[n]) for n in range(1, 6))
    checks["(X+1/X).y=y+"] = all(ys[n].mul_poly(dp).agrees(kernel_y(ROOT, n, True, box)) for n in range(1, 6))
    checks["binomial"] = all(_y_coefficients_match(n, box) for n in range(1, 6))
    failed = [k for k, v in checks.items() if not v]
    return not failed, f"box {box}, failed {failed}"


def c07_kernel_relation():
    literal = kernel_relation_check(40)
    corrected = kernel_relation_check(40, sign=1)
    return literal, f"[D1]-[D-1]=y(1): {literal}; [D1]+[D-1]=y(1): {corrected}"


def c08_window_theorem():
    reports = []
    rank1 = InnerProduct(((1,),))
    for n, lam0 in ((1, 0), (2, 1), (3, 0)):
        reports.append(window_experiment(KernelSpec((ROOT,), (n,)), Weight((lam0,)), rank1, 40, 50, seed=n))
    rank2 = InnerProduct(((1, 0), (0, 1)))
    spec2 = KernelSpec((Weight((2, 0)), Weight((0, 2))), (1, 1))
    reports.append(window_experiment(spec2, Weight((0, 0)), rank2, (12, 12), 50, seed=4))
    ok = all(r.ok for r in reports)
    summary = ", ".join(f"rank {r.window_rank}/{r.full_rank} zero {r.verdicts.get('zero', 0)}/{r.trials}" for r in reports)
    return ok, f"200 combinations: {summary}"


def c09_transitivity():
    a2, levi = load_datum("a2"), load_datum("a2_levi")
    lams = ([1, 0], [0, 1], [1, 1], [2, 1])
    bad = [lam for lam in lams if not check_transitivity(a2, levi, Weight.from_l0(lam))]
    return not bad, f"A2 > A1 > torus, failures {bad}"


def c10_duality():
    bad = [k for k in range(21) if not check_duality(SL2, X(k))]
    a2 = load_datum("a2")
    w1, w2 = Weight.from_l0([1, 0]), Weight.from_l0([0, 1])
    pair_ok = dual_highest_weight(a2, w1) == w2 and dual_highest_weight(a2, w2) == w1
    pair_ok &= check_duality(a2, w1) and check_duality(a2, w2)
    weyl_bad = []
    for name in SHIPPED:
        d = load_datum(name)
        wq = weyl_element(d)
        sign = -1 if len(d.u_roots) % 2 else 1
        lhs = LaurentPoly.monomial(top_exterior_weight(d), sign) * poly_dual(wq)
        if lhs != wq or exterior_weyl_element(d) != wq:
            weyl_bad.append(name)
    ok = not bad and pair_ok and not weyl_bad
    return ok, f"sl2 failures {bad}, A2 w1<->w2 {pair_ok}, Weyl element failures {weyl_bad}"


def c11_non_decomposable():
    bad = []
    for k in range(1, 7):
        for j in range(1, 7):
            if not isinstance(tensor_decompose(Sl2Module.plus(k), Sl2Module.minus(j)), NotDiscretelyDecomposable):
                bad.append((k, j))
    return not bad, f"36 pairs, failures {bad}"


def regularity_window_agreement(inst: RegularityInstance, radius: int = 20, cap: int = 3) -> list[int]:
    """Doubled coordinates ``|x| <= radius`` where condition S and the window picture disagree."""
    d = inst.datum
    tuples = [n for n in admissible_S(inst) if max(n, default=0) <= cap]
    inner = d.inner
    bad = []
    for x in range(-radius, radius + 1):
        lam = Weight((x,))
        s_holds = check_condition_S(inst.with_lambda(lam)).holds
        outside = all(
            not in_window(KernelSpec(inst.betas, tuple(m + 1 for m in n)), inst.lambda0, w(lam + d.rho_u), inner)
            for w in d.weyl_group
            for n in tuples
        )
        if s_holds != outside:
            bad.append(x)
    return bad


def c12_regularity():
    compact = RegularityInstance(SL2, (ROOT,), Weight((0,)))
    so2 = RegularityInstance(RootDatum(SL2.inner, ()), (ROOT,), Weight((0,)))
    bad = regularity_window_agreement(compact) + regularity_window_agreement(so2)
    return not bad, f"|x|<=20 on two rank-1 instances, disagreements {bad}"


CRITERIA: list[tuple[int, str, float, Callable]] = [
    (1, "Weyl/restriction round trip", 1.0, c01_weyl_round_trip),
    (2, "Kostant census on A2", 1.0, c02_kostant_census),
    (3, "multiplicativity of finite characters", 5.0, c03_multiplicativity),
    (4, "tensor with discrete series", 5.0, c04_discrete_tensor),
    (5, "Blattner comb", 1.0, c05_blattner),
    (6, "kernel identities", 2.0, c06_kernel_identities),
    (7, "kernel relation [D1]-[D-1]=y(1)", 1.0, c07_kernel_relation),
    (8, "window theorem at desk scale", 30.0, c08_window_theorem),
    (9, "transitivity", 2.0, c09_transitivity),
    (10, "duality", 1.0, c10_duality),
    (11, "non-decomposability detection", 2.0, c11_non_decomposable),
    (12, "regularity against windows", 2.0, c12_regularity),
]


def run_criterion(number: int) -> Result:
    for num, title, budget, fn in CRITERIA:
        if num == number:
            start = time.perf_counter()
            try:
                ok, detail = fn()
            except Exception as exc:  # a crash is a failed criterion, reported not raised
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            return Result(num, title, bool(ok), time.perf_counter() - start, budget, detail)
    raise KeyError(f"no criterion {number}")


def run_all() -> list[Result]:
    return [run_criterion(num) for num, *_ in CRITERIA]

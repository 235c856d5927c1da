"""The brute-force oracle: kernel membership in finite p-quotients.

Two families of targets are available.  Catalog targets are the shipped
power-commutator groups; for those, every assignment of images to
(a, t_1..t_r) satisfying the loop relations is enumerated exhaustively (a
homomorphism of the HNN extension is exactly such an assignment).  Holomorph
targets realize the quotient Z/p^s twisted by the conjugation units c_i with
n_i c_i = m_i mod p^s, as pairs (k mod p^s, h) with h in the unit subgroup H
generated by the c_i; they exist when every loop has equal valuations on both
sides and H is a p-group, and contribute one canonical homomorphism each
(a -> (1, 1), t_i -> (0, c_i)).

A word separated by some homomorphism is definitely outside the intersection
of p-power-index kernels; surviving every tested target is one-sided evidence
of membership, never proof.  Witness reporting is deterministic: targets are
scanned in a fixed order (catalog by file order, then holomorphs by s) and
assignments in lexicographic order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .classifier import (
    Case,
    Classification,
    Orientation,
    classify,
    moldavanskii_r1,
)
from .generators import (
    Bounds,
    GeneratorEntry,
    GeneratorSet,
    MixedOrder,
    case1_generators,
    case2_generators,
    family_mixed,
)
from .numtheory import inverse_mod, is_p_power, is_prime, p_valuation
from .pcgroup import PcGroup, builtin_catalog
from .presentation import RoseGbs, Word, generator

#: Cap on order**(r+1), the size of one exhaustive assignment sweep.
MAX_ASSIGNMENTS = 2**24


@dataclass(frozen=True)
class Budget:
    """Oracle effort: catalog groups up to max_order, holomorphs up to s_max."""

    max_order: int = 16
    s_max: int = 6

    def __post_init__(self):
        if self.max_order < 0 or self.s_max < 0:
            raise ValueError("budget values must be non-negative")


@dataclass(frozen=True)
class Hom:
    """Images of (a, t_1..t_r) in a catalog group, one per stable letter."""

    group: PcGroup
    image_a: int
    image_t: tuple[int, ...]

    def validate(self, pres: RoseGbs) -> bool:
        g = self.group
        for loop, ti in zip(pres.loops, self.image_t):
            lhs = g.mult(g.mult(ti, g.power(self.image_a, loop.n)), g.inverse(ti))
            if lhs != g.power(self.image_a, loop.m):
                return False
        return True

    def describe(self) -> dict:
        g = self.group
        return {
            "target": g.name,
            "order": g.order,
            "image_a": g.element_str(self.image_a),
            "image_t": [g.element_str(t) for t in self.image_t],
        }


def _assignment_grid(order: int, r: int) -> np.ndarray:
    if order ** (r + 1) > MAX_ASSIGNMENTS:
        raise ValueError(
            f"assignment sweep {order}^{r + 1} exceeds {MAX_ASSIGNMENTS};"
            " lower the catalog budget"
        )
    return np.indices((order,) * (r + 1), dtype=np.int32).reshape(r + 1, -1)


def hom_arrays(pres: RoseGbs, group: PcGroup) -> tuple[np.ndarray, list[np.ndarray]]:
    """All satisfying assignments, as an a-image array plus one array per t_i.

    Assignments come out in lexicographic order of (a, t_1, .., t_r) codes.
    """
    grid = _assignment_grid(group.order, pres.r)
    a_img, t_imgs = grid[0], list(grid[1:])
    table, pw, inv = group.table, group.pow_table, group.inv
    n = group.order
    mask = np.ones(a_img.shape, dtype=bool)
    for loop, ti in zip(pres.loops, t_imgs):
        lhs = table[table[ti, pw[a_img, loop.n % n]], inv[ti]]
        mask &= lhs == pw[a_img, loop.m % n]
    keep = np.nonzero(mask)[0]
    return a_img[keep], [ti[keep] for ti in t_imgs]


def enumerate_homs(pres: RoseGbs, group: PcGroup) -> list[Hom]:
    """Every homomorphism pres -> group, in lexicographic image order."""
    a_img, t_imgs = hom_arrays(pres, group)
    return [
        Hom(group, int(a_img[i]), tuple(int(t[i]) for t in t_imgs))
        for i in range(len(a_img))
    ]


def evaluate_word(w: Word, hom: Hom) -> int:
    """Image of w under hom, by collection in the target group."""
    g = hom.group
    acc = g.identity
    for gen, exp in w.letters:
        if gen > len(hom.image_t):
            raise ValueError(f"word uses t{gen} but the hom has r={len(hom.image_t)}")
        base = hom.image_a if gen == 0 else hom.image_t[gen - 1]
        acc = g.mult(acc, g.power(base, exp))
    return acc


def evaluate_word_bulk(
    w: Word, group: PcGroup, a_img: np.ndarray, t_imgs: Sequence[np.ndarray]
) -> np.ndarray:
    """Images of w under a whole array of homs at once."""
    acc = np.zeros(len(a_img), dtype=np.int32)
    for gen, exp in w.letters:
        img = a_img if gen == 0 else t_imgs[gen - 1]
        acc = group.table[acc, group.pow_table[img, exp % group.order]]
    return acc


# --- holomorph quotients ------------------------------------------------------


class HolomorphUnavailable(Exception):
    """The holomorph quotient does not exist for this (pres, p, s)."""

    def __init__(self, reason: str, detail: str):
        super().__init__(f"{reason}: {detail}")
        self.reason = reason  # "not-applicable" | "not-a-p-group"
        self.detail = detail


@dataclass(frozen=True)
class HolomorphQuotient:
    """Pairs (k mod p^s, h) with h in the unit subgroup H = <c_1..c_r>,
    multiplied by (k1, h1)(k2, h2) = (k1 + h1 k2, h1 h2); the canonical
    homomorphism sends a to (1, 1) and t_i to (0, c_i)."""

    p: int
    s: int
    c: tuple[int, ...]
    h_order: int

    @property
    def modulus(self) -> int:
        return self.p**self.s

    @property
    def order(self) -> int:
        return self.modulus * self.h_order

    @property
    def identity(self) -> tuple[int, int]:
        return (0, 1)

    def mul(self, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
        q = self.modulus
        return ((x[0] + x[1] * y[0]) % q, (x[1] * y[1]) % q)

    def inv(self, x: tuple[int, int]) -> tuple[int, int]:
        q = self.modulus
        hi = inverse_mod(x[1], q)
        return ((-hi * x[0]) % q, hi)

    def pow(self, x: tuple[int, int], e: int) -> tuple[int, int]:
        if e < 0:
            return self.pow(self.inv(x), -e)
        acc, base = self.identity, x
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    def evaluate(self, w: Word) -> tuple[int, int]:
        acc = self.identity
        for gen, exp in w.letters:
            base = (1, 1) if gen == 0 else (0, self.c[gen - 1])
            acc = self.mul(acc, self.pow(base, exp))
        return acc

    def describe(self) -> dict:
        return {
            "target": f"holomorph(s={self.s})",
            "order": self.order,
            "c": list(self.c),
            "image_a": "(1, 1)",
            "image_t": [f"(0, {c})" for c in self.c],
        }


def _unit_subgroup_order(units: Sequence[int], q: int) -> int:
    seen = {1}
    frontier = [1]
    while frontier:
        x = frontier.pop()
        for c in units:
            y = (x * c) % q
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return len(seen)


def holomorph_quotient(pres: RoseGbs, p: int, s: int) -> HolomorphQuotient:
    """Build the order-p^s holomorph quotient, or raise HolomorphUnavailable.

    Exists only when sigma_i == tau_i for every loop; c_i is the least
    positive lift of m_hat_i * n_hat_i^(-1) mod p^(s - sigma_i) coprime to p.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if s < 1:
        raise ValueError("need s >= 1")
    q = p**s
    cs = []
    lemma_aut_applies = True
    for i, loop in enumerate(pres.loops, 1):
        sigma, m_hat = p_valuation(loop.m, p)
        tau, n_hat = p_valuation(loop.n, p)
        if sigma != tau:
            raise HolomorphUnavailable(
                "not-applicable",
                f"loop {i} has unequal valuations sigma={sigma}, tau={tau}",
            )
        if (m_hat - n_hat) % p != 0:
            lemma_aut_applies = False
        modulus = p ** (s - sigma) if s > sigma else 1
        c = (m_hat * inverse_mod(n_hat, modulus)) % modulus if modulus > 1 else 1
        while math.gcd(c, p) != 1:  # defensive; lifts of units are units
            c += modulus
        cs.append(c % q)
    h_order = _unit_subgroup_order(cs, q)
    if not is_p_power(h_order, p):
        if lemma_aut_applies:
            raise RuntimeError(
                "unit subgroup order is not a p-power although every loop has"
                " p | (m_hat - n_hat); this contradicts the automorphism-order"
                " lemma"
            )
        raise HolomorphUnavailable(
            "not-a-p-group",
            f"unit subgroup has order {h_order}, not a power of {p}",
        )
    hq = HolomorphQuotient(p, s, tuple(cs), h_order)
    for i, loop in enumerate(pres.loops, 1):
        lhs = hq.mul(
            hq.mul((0, hq.c[i - 1]), hq.pow((1, 1), loop.n)),
            hq.inv((0, hq.c[i - 1])),
        )
        if lhs != hq.pow((1, 1), loop.m):
            raise RuntimeError(f"holomorph images violate loop {i}; lift bug")
    return hq


# --- verdicts -----------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    """Oracle outcome for one word: separated with a witness, or in all
    tested kernels (one-sided evidence of membership)."""

    word: Word
    separated: bool
    homs_tested: int
    max_order: int
    witness: Optional[dict] = None

    @property
    def kind(self) -> str:
        return "separated" if self.separated else "in_all_kernels"


class QuotientOracle:
    """Budgeted, deterministic sweep over catalog homs and holomorphs."""

    def __init__(
        self,
        pres: RoseGbs,
        p: int,
        budget: Budget = Budget(),
        catalog: Optional[Sequence[PcGroup]] = None,
    ):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.pres = pres
        self.p = p
        self.budget = budget
        if catalog is None:
            catalog = builtin_catalog(p) if budget.max_order > 0 else ()
        self.groups = [g for g in catalog if g.order <= budget.max_order]
        self._hom_cache: dict[str, tuple[np.ndarray, list[np.ndarray]]] = {}
        self.holomorphs: list[HolomorphQuotient] = []
        self.holomorph_unavailable: Optional[str] = None
        for s in range(1, budget.s_max + 1):
            try:
                self.holomorphs.append(holomorph_quotient(pres, p, s))
            except HolomorphUnavailable as exc:
                if self.holomorph_unavailable is None:
                    self.holomorph_unavailable = f"s={s}: {exc}"

    def homs_for(self, group: PcGroup) -> tuple[np.ndarray, list[np.ndarray]]:
        if group.name not in self._hom_cache:
            self._hom_cache[group.name] = hom_arrays(self.pres, group)
        return self._hom_cache[group.name]

    @property
    def total_homs(self) -> int:
        return sum(len(self.homs_for(g)[0]) for g in self.groups) + len(
            self.holomorphs
        )

    def verdict(self, w: Word) -> Verdict:
        if w.max_gen() > self.pres.r:
            raise ValueError("word uses a stable letter outside the presentation")
        tested = 0
        max_order = 0
        for group in self.groups:
            a_img, t_imgs = self.homs_for(group)
            tested += len(a_img)
            max_order = max(max_order, group.order)
            images = evaluate_word_bulk(w, group, a_img, t_imgs)
            hits = np.nonzero(images)[0]
            if len(hits):
                i = int(hits[0])
                hom = Hom(group, int(a_img[i]), tuple(int(t[i]) for t in t_imgs))
                witness = hom.describe() | {
                    "kind": "catalog",
                    "word_image": group.element_str(int(images[i])),
                }
                return Verdict(w, True, tested, max_order, witness)
        for hq in self.holomorphs:
            tested += 1
            max_order = max(max_order, hq.order)
            image = hq.evaluate(w)
            if image != hq.identity:
                witness = hq.describe() | {
                    "kind": "holomorph",
                    "word_image": f"({image[0]}, {image[1]})",
                }
                return Verdict(w, True, tested, max_order, witness)
        return Verdict(w, False, tested, max_order)


def membership_verdict(
    w: Word,
    pres: RoseGbs,
    p: int,
    budget: Budget = Budget(),
    catalog: Optional[Sequence[PcGroup]] = None,
) -> Verdict:
    """Evaluate w under every budgeted quotient; first separation wins."""
    return QuotientOracle(pres, p, budget, catalog).verdict(w)


# --- whole-theorem verification -------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    check: str  # "containment" | "separation" | "moldavanskii" | alternates
    family: str
    detail: str
    word: Word
    verdict: Verdict


@dataclass(frozen=True)
class VerifyReport:
    pres: RoseGbs
    p: int
    classification: Classification
    bounds: Bounds
    budget: Budget
    orientation: Orientation
    mixed_order: MixedOrder
    generator_set: GeneratorSet
    checks: tuple[CheckResult, ...]
    violations: tuple[CheckResult, ...]
    inconclusive: tuple[str, ...]
    orientation_report: Optional[dict]
    mixed_order_report: Optional[dict]
    holomorph_s: tuple[int, ...]
    holomorph_unavailable: Optional[str]
    catalog_names: tuple[str, ...]

    @property
    def status(self) -> str:
        if self.violations:
            return "theorem-violation"
        if self.inconclusive:
            return "inconclusive"
        return "ok"


def _check_entries(
    oracle: QuotientOracle,
    entries: Sequence[GeneratorEntry],
    check: str,
) -> list[CheckResult]:
    return [
        CheckResult(check, e.family, e.detail, e.word, oracle.verdict(e.word))
        for e in entries
    ]


def verify_theorem(
    pres: RoseGbs,
    p: int,
    bounds: Bounds = Bounds(),
    budget: Budget = Budget(),
    orientation: Orientation = Orientation.CANONICAL,
    mixed_order: MixedOrder = MixedOrder.CONJUGATE,
    catalog: Optional[Sequence[PcGroup]] = None,
) -> VerifyReport:
    """Run every oracle check the theorem admits at this budget.

    Containment: every emitted generator must land in every tested kernel;
    a separation is a theorem violation (under the chosen orientation and
    letter order).  Separation: in case 1 with xi >= 1 the word a^(p^(xi-1))
    must be separated by some tested quotient, else the run is inconclusive.
    For r = 1 the Moldavanskii family is cross-checked the same way.  In case
    2 the mixed family is additionally evaluated under the opposite
    orientation and opposite letter order, and the report records which
    choices survive the oracle.
    """
    oracle = QuotientOracle(pres, p, budget, catalog)
    cls = classify(pres, p, orientation)
    inconclusive: list[str] = []
    checks: list[CheckResult] = []
    violations: list[CheckResult] = []
    orientation_report: Optional[dict] = None
    mixed_order_report: Optional[dict] = None

    if cls.case == Case.ONE:
        gens = case1_generators(cls)
    else:
        gens = case2_generators(cls, bounds, mixed_order)

    containment = _check_entries(oracle, gens.entries, "containment")
    checks.extend(containment)
    violations.extend(c for c in containment if c.verdict.separated)

    if oracle.total_homs == 0:
        inconclusive.append("no quotients within budget; nothing was tested")

    if cls.case == Case.ONE and cls.xi is not None and cls.xi >= 1:
        w = generator(0, p ** (cls.xi - 1))
        v = oracle.verdict(w)
        checks.append(CheckResult("separation", "power", f"xi-1={cls.xi - 1}", w, v))
        if not v.separated:
            inconclusive.append(
                f"a^(p^(xi-1)) = {w} was not separated within budget"
            )

    if pres.r == 1:
        fam = moldavanskii_r1(pres, p, k_bound=bounds.k_max)
        mold = _check_entries(
            oracle,
            [GeneratorEntry(w, "moldavanskii", f"word {i}") for i, w in
             enumerate(fam.words)],
            "moldavanskii",
        )
        checks.extend(mold)
        violations.extend(c for c in mold if c.verdict.separated)

    if cls.case == Case.TWO:
        alt_orientation = (
            Orientation.INTRO_VERBATIM
            if orientation is Orientation.CANONICAL
            else Orientation.CANONICAL
        )
        cls_alt = classify(pres, p, alt_orientation)
        alt_mixed = _check_entries(
            oracle, family_mixed(cls_alt, bounds, mixed_order),
            "orientation-alternate",
        )
        checks.extend(alt_mixed)
        counts = {
            orientation.value: sum(
                1 for c in containment if c.family == "mixed" and c.verdict.separated
            ),
            alt_orientation.value: sum(
                1 for c in alt_mixed if c.verdict.separated
            ),
        }
        surviving = [o for o, c in counts.items() if c == 0]
        orientation_report = {
            "separations": counts,
            "surviving": surviving,
            "default": Orientation.CANONICAL.value,
            "default_survives": counts.get(Orientation.CANONICAL.value) == 0,
        }

        alt_order = (
            MixedOrder.VERBATIM
            if mixed_order is MixedOrder.CONJUGATE
            else MixedOrder.CONJUGATE
        )
        alt_entries = family_mixed(cls, bounds, alt_order)
        alt_results = _check_entries(oracle, alt_entries, "mixed-order-alternate")
        checks.extend(alt_results)
        mixed_order_report = {
            "separations": {
                mixed_order.value: sum(
                    1
                    for c in containment
                    if c.family == "mixed" and c.verdict.separated
                ),
                alt_order.value: sum(1 for c in alt_results if c.verdict.separated),
            },
            "default": MixedOrder.CONJUGATE.value,
        }

    return VerifyReport(
        pres=pres,
        p=p,
        classification=cls,
        bounds=bounds,
        budget=budget,
        orientation=orientation,
        mixed_order=mixed_order,
        generator_set=gens,
        checks=tuple(checks),
        violations=tuple(violations),
        inconclusive=tuple(inconclusive),
        orientation_report=orientation_report,
        mixed_order_report=mixed_order_report,
        holomorph_s=tuple(h.s for h in oracle.holomorphs),
        holomorph_unavailable=oracle.holomorph_unavailable,
        catalog_names=tuple(g.name for g in oracle.groups),
    )

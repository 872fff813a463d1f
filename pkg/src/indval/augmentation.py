"""Ordinary and limit augmentation of chains.

Ordinary augmentation extends a chain by a key polynomial chi and a value
gamma > mu(chi); augmenting by a key equivalent to the top key replaces the
top step (same class of valuations, with the new value).

A continuous family keeps the key degree fixed while the values strictly
increase; polynomials either stabilize along the family or their values grow
strictly at every step.  A limit augmentation assigns, to a minimal-degree
unstable phi and a value gamma dominating every mu_alpha(phi), the valuation
min over the phi-expansion of (stable coefficient value + s*gamma).  When the
mu_alpha(phi) are unbounded, gamma lives in a fresh major coordinate and the
stable values embed into the minor coordinate, q -> (0, q).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from .basefield import PadicValuation, Poly
from .chains import (
    InductiveValuation,
    Step,
    _parse_gamma,
    expansion_report,
    is_equivalent,
    phi_expansion,
    validate_chain,
)
from .errors import ChainError, DomainError, ResourceError
from .keys import key_check
from .values import INFINITY, Value


def augment(nu: InductiveValuation, chi: Poly, gamma) -> InductiveValuation:
    """The augmented chain [nu; chi, gamma].

    chi must be a key polynomial for nu and gamma must exceed nu(chi) (after
    embedding when gamma opens the second coordinate).  A key equivalent to
    the top key replaces the top step instead of appending.
    """
    gamma = Value.of(gamma).demote()
    kc = key_check(nu, chi)
    if not kc.ok:
        raise DomainError(f"chi is not a key polynomial: {kc.reason}")
    mu_chi = nu(chi)
    rank = max(nu.rank, gamma.rank)
    if not gamma.embed(rank, major=True) > mu_chi.embed(rank, major=True):
        raise DomainError(
            f"gamma={gamma} must exceed the current value {mu_chi} of chi"
        )
    if chi.degree == nu.top_degree and is_equivalent(nu, chi, nu.top.phi):
        steps = nu.steps[:-1] + (Step(chi, gamma),)
    else:
        steps = nu.steps + (Step(chi, gamma),)
    return validate_chain(steps, nu.base)


def compare_augmented(
    nu: InductiveValuation, nu_prime: InductiveValuation, f: Poly
) -> Tuple[Value, Value, bool]:
    """(nu(f), nu'(f), equal?) for nu' built from nu by a single augmentation.

    The values never decrease, and equality holds exactly when the top key of
    nu' does not divide f in the graded algebra of nu (or f = 0).
    """
    if nu_prime.base != nu.base:
        raise DomainError("chains over different base valuations")
    same_prefix = [s.phi for s in nu_prime.steps[:-1]] == [s.phi for s in nu.steps] or (
        [s.phi for s in nu_prime.steps[:-1]] == [s.phi for s in nu.steps[:-1]]
        and nu_prime.top_degree == nu.top_degree
        and is_equivalent(nu, nu_prime.top.phi, nu.top.phi)
    )
    if not same_prefix:
        raise DomainError("nu' is not an augmentation of nu")
    a, b = nu(f), nu_prime(f)
    rank = max(nu.rank, nu_prime.rank)
    a_e, b_e = a.embed(rank, major=True), b.embed(rank, major=True)
    assert a_e <= b_e
    return a, b, a_e == b_e


# ---------------------------------------------------------------------------
# Continuous families
# ---------------------------------------------------------------------------


class ContinuousChain:
    """A finite prefix of a continuous family of augmentations.

    Every family member augments the (possibly empty) base prefix by a key of
    the common degree d; the member chains mu_alpha are cached in order.
    """

    def __init__(
        self,
        base: PadicValuation,
        family: Sequence[Step],
        base_steps: Sequence[Step] = (),
        members: Optional[List[InductiveValuation]] = None,
    ):
        self.base = base
        self.base_steps = tuple(base_steps)
        self.family = tuple(family)
        self.members = members or []

    @property
    def length(self) -> int:
        return len(self.family)

    @property
    def degree(self) -> int:
        return self.family[0].phi.degree

    def member(self, alpha: int) -> InductiveValuation:
        """The chain mu_alpha (1-based)."""
        if not 1 <= alpha <= len(self.members):
            raise DomainError("family index out of range")
        return self.members[alpha - 1]

    def to_json(self) -> dict:
        def gamma_obj(g: Value):
            return str(g.coords[0]) if g.rank == 1 else [str(c) for c in g.coords]

        obj = {
            "prime": self.base.p,
            "family": [
                {"phi": str(s.phi), "gamma": gamma_obj(s.gamma)} for s in self.family
            ],
        }
        if self.base_steps:
            obj["base_steps"] = [
                {"phi": str(s.phi), "gamma": gamma_obj(s.gamma)}
                for s in self.base_steps
            ]
        return obj


def continuous_chain_from_json(obj: Union[str, dict]) -> ContinuousChain:
    """Build and validate a family from {"prime": p, "family": [...]}.

    An optional "base_steps" list supplies the chain prefix below the family.
    """
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        p = int(obj["prime"])
        family = [
            (Poly.parse(st["phi"]), _parse_gamma(st["gamma"])) for st in obj["family"]
        ]
        base_steps = [
            (Poly.parse(st["phi"]), _parse_gamma(st["gamma"]))
            for st in obj.get("base_steps", [])
        ]
    except (KeyError, TypeError) as exc:
        raise ChainError(f"malformed continuous chain description: {exc}") from None
    return validate_continuous_chain(family, PadicValuation(p), base_steps)


def validate_continuous_chain(
    raw_family: Sequence,
    base: PadicValuation,
    base_steps: Sequence = (),
) -> ContinuousChain:
    """Validate the three family conditions, naming violations with indices.

    (1) all key degrees equal; (2) values strictly increasing; (3) for
    alpha < beta, phi_beta is a key for mu_alpha, not equivalent to
    phi_alpha, with gamma_beta > mu_alpha(phi_beta).  Adjacent pairs are
    checked fully, non-adjacent pairs by deterministic spot checks.
    """
    family: List[Step] = []
    for item in raw_family:
        if isinstance(item, Step):
            phi, gamma = item.phi, item.gamma
        else:
            phi, gamma = item
        if isinstance(phi, str):
            phi = Poly.parse(phi)
        family.append(Step(phi, Value.of(gamma).demote()))
    if not family:
        raise ChainError("a continuous family must be non-empty")
    bsteps: List[Step] = []
    for item in base_steps:
        if isinstance(item, Step):
            bsteps.append(item)
        else:
            phi, gamma = item
            if isinstance(phi, str):
                phi = Poly.parse(phi)
            bsteps.append(Step(phi, Value.of(gamma).demote()))

    d = family[0].phi.degree
    for i, st in enumerate(family, 1):
        if st.phi.degree != d:
            raise ChainError(
                f"condition (1) violated at index {i}: degree {st.phi.degree} != {d}"
            )
    for i in range(1, len(family)):
        if not family[i].gamma > family[i - 1].gamma:
            raise ChainError(
                f"condition (2) violated at indices {i},{i + 1}: values must "
                "strictly increase"
            )

    members = [
        validate_chain(list(bsteps) + [st], base) for st in family
    ]

    def check_pair(a: int, b: int):
        mu_a = members[a - 1]
        phi_b, gamma_b = family[b - 1].phi, family[b - 1].gamma
        kc = key_check(mu_a, phi_b)
        if not kc.ok:
            raise ChainError(
                f"condition (3) violated at indices {a},{b}: phi_{b} is not a "
                f"key for mu_{a} ({kc.reason})"
            )
        if is_equivalent(mu_a, phi_b, family[a - 1].phi):
            raise ChainError(
                f"condition (3) violated at indices {a},{b}: phi_{b} is "
                f"equivalent to phi_{a}"
            )
        if not gamma_b > mu_a(phi_b):
            raise ChainError(
                f"condition (3) violated at indices {a},{b}: gamma_{b} does "
                f"not exceed mu_{a}(phi_{b})"
            )

    for i in range(1, len(family)):
        check_pair(i, i + 1)
    rng = random.Random(1009)
    m = len(family)
    if m > 2:
        pairs = {(a, b) for a in range(1, m + 1) for b in range(a + 2, m + 1)}
        for a, b in rng.sample(sorted(pairs), min(5, len(pairs))):
            check_pair(a, b)
    return ContinuousChain(base, family, bsteps, members)


# ---------------------------------------------------------------------------
# Stability along a family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StabilityReport:
    """Outcome of the stability scan of one polynomial along the family.

    Stable: the first index alpha where the phi_alpha-expansion has its
    strict minimum at the 0-th coefficient certifies every later value equals
    mu_alpha(f).  Unstable: the values increased strictly across the whole
    prefix (any equality would already certify stability).
    """

    stable: bool
    value: Optional[Value]
    witness_index: Optional[int]
    values: Tuple[Value, ...]

    def __str__(self):
        if self.stable:
            return f"Stable({self.value}, witness alpha={self.witness_index})"
        vals = ", ".join(str(v) for v in self.values)
        return f"UnstableWithinPrefix([{vals}])"


def stability(chain: ContinuousChain, f: Poly) -> StabilityReport:
    """Scan the family in order for a stability witness.

    At each alpha the expansion of f in phi_alpha is valued with mu_alpha; a
    singleton argmin at the 0-th coefficient makes f equivalent to a
    polynomial of degree < d, on which all later family members agree.
    Without a witness the value list must be strictly increasing.
    """
    if f.is_zero:
        raise DomainError("stability of the zero polynomial")
    values: List[Value] = []
    for alpha in range(1, chain.length + 1):
        mu = chain.member(alpha)
        rep = expansion_report(mu, f)
        values.append(rep.mu)
        if rep.indices == (0,):
            return StabilityReport(True, rep.mu, alpha, tuple(values))
    for i in range(1, len(values)):
        if not values[i] > values[i - 1]:
            raise AssertionError(
                "stability trichotomy violated: values neither witnessed "
                "stable nor strictly increasing"
            )
    return StabilityReport(False, None, None, tuple(values))


class LimitValuation:
    """The limit augmentation of a family by an unstable minimal-degree phi.

    Values of the phi-expansion coefficients are the stable family values;
    the key itself takes gamma.  Evaluation raises ResourceError when a
    coefficient's stability witness lies beyond the finite prefix.
    """

    def __init__(self, chain: ContinuousChain, phi: Poly, gamma: Value, rank: int):
        self.chain = chain
        self.phi = phi
        self.gamma = gamma
        self.rank = rank

    def stable_value(self, g: Poly) -> Value:
        rep = stability(self.chain, g)
        if not rep.stable:
            raise ResourceError(
                "stability of a coefficient is not witnessed within the "
                "prefix; extend the family"
            )
        return rep.value.embed(self.rank)

    def valuation(self, g: Poly) -> Value:
        if g.is_zero:
            return INFINITY
        best: Optional[Value] = None
        for s, coeff in enumerate(phi_expansion(g, self.phi)):
            if coeff.is_zero:
                continue
            w = self.stable_value(coeff) + self.gamma.scaled(s)
            if best is None or w < best:
                best = w
        return best

    def __call__(self, g: Poly) -> Value:
        return self.valuation(g)

    def is_equivalent(self, f: Poly, g: Poly) -> bool:
        if f.is_zero and g.is_zero:
            return True
        if f.is_zero or g.is_zero:
            return False
        return self.valuation(f - g) > self.valuation(g)


def limit_augment(chain: ContinuousChain, phi: Poly, gamma) -> LimitValuation:
    """Build the limit augmentation [family; phi, gamma].

    phi must be unstable within the prefix and of minimal degree among
    unstable polynomials (caller-asserted for degree > 1; a seeded spot check
    samples lower-degree monic polynomials and verifies their stability).
    gamma must exceed every mu_alpha(phi); old values embed into the minor
    coordinate when gamma opens the major one.
    """
    if not phi.is_monic:
        raise DomainError("the limit key must be monic")
    rep = stability(chain, phi)
    if rep.stable:
        raise DomainError(
            "phi is stable within the prefix; ordinary augmentation applies"
        )
    gamma = Value.of(gamma)
    rank = gamma.rank if not gamma.is_infinite else 1
    if gamma.is_infinite:
        raise DomainError("the limit value must be finite")
    for alpha, v in enumerate(rep.values, 1):
        if not gamma > v.embed(rank):
            raise DomainError(
                f"gamma={gamma} does not exceed mu_{alpha}(phi)={v}"
            )
    if phi.degree > 1:
        rng = random.Random(4241)
        for _ in range(8):
            deg = rng.randrange(1, phi.degree)
            g = Poly([rng.randrange(-9, 10) for _ in range(deg)] + [1])
            low = stability(chain, g)
            if not low.stable:
                raise DomainError(
                    f"minimality assertion violated: {g} of degree {deg} is "
                    "unstable within the prefix"
                )
    return LimitValuation(chain, phi, gamma, rank)

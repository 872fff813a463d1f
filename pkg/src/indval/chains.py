"""Augmentation chains over (Q, v_p) as first-class valuations on Q[x].

A chain [(phi_1, gamma_1), ..., (phi_r, gamma_r)] starts with a monic linear
key and assigns, level by level, the value gamma_i to the key phi_i.  A
polynomial is valued by expanding it in the top key, valuing the coefficients
with the prefix chain, and taking the lexicographic minimum of the monomial
values mu(f_s) + s*gamma_r.

Each key value may enlarge the value group; at most the final gamma_r may be
incommensurable with the group generated below it, in which case the chain
values live in rank-2 lexicographic coordinates.  Inside a rank-2 chain the
base valuation embeds into the *major* coordinate, q -> (q, 0), so an
incommensurable step supplies a fresh infinitesimal direction.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .basefield import PadicValuation, Poly
from .errors import ChainError, DomainError
from .values import INFINITY, Value, in_subgroup, is_commensurable, subgroup_index


@dataclass(frozen=True)
class Step:
    """One augmentation step: a monic key polynomial and its assigned value."""

    phi: Poly
    gamma: Value


def _linear_digits(coeffs: Sequence[Fraction], a: Fraction) -> List[Fraction]:
    """Digits of f at the monic linear base x - a, by synthetic division."""
    if a == 0:
        return list(coeffs)
    cs = list(coeffs)
    out: List[Fraction] = []
    while cs:
        k = len(cs) - 1
        acc = cs[k]
        q = [Fraction(0)] * k
        for j in range(k - 1, -1, -1):
            q[j] = acc
            acc = cs[j] + a * acc
        out.append(acc)
        cs = q
    return out


def phi_expansion(f: Poly, phi: Poly) -> List[Poly]:
    """Digit expansion f = sum f_s phi^s with deg f_s < deg phi.

    Returned constant-coefficient-first, including interior zero coefficients;
    the zero polynomial expands to [0].
    """
    if phi.degree is None or phi.degree < 1:
        raise DomainError("expansion base must be non-constant")
    if not phi.is_monic:
        raise DomainError("expansion base must be monic")
    if f.is_zero:
        return [Poly.zero()]
    if phi.degree == 1:
        return [Poly.constant(c) for c in _linear_digits(f.coeffs, -phi.coeffs[0])]
    out: List[Poly] = []
    cur = f
    while not cur.is_zero:
        cur, r = cur.divmod_monic(phi)
        out.append(r)
    return out


class InductiveValuation:
    """A validated augmentation chain; immutable after construction.

    Use :func:`validate_chain` (or :func:`indval.augmentation.augment`) to
    build instances; the raw constructor performs no invariant checking.
    """

    def __init__(self, base: PadicValuation, steps: Sequence[Step], rank: int):
        self.base = base
        self.steps = tuple(steps)
        self.rank = rank
        self.degrees = tuple(s.phi.degree for s in self.steps)
        self._levels = None  # residual level data, attached by validation
        self._e_cache: dict = {}

    # -- basic structure ----------------------------------------------------

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def top(self) -> Step:
        return self.steps[-1]

    @property
    def top_degree(self) -> int:
        return self.degrees[-1]

    def prefix(self, i: int) -> "InductiveValuation":
        """The chain formed by the first i steps (1 <= i <= length).

        For a rank-2 chain the prefix steps are commensurable and are returned
        as a rank-1 chain, matching the residual level data.
        """
        if not 1 <= i <= self.length:
            raise DomainError("prefix length out of range")
        if i == self.length:
            return self
        demoted = tuple(Step(s.phi, s.gamma.demote()) for s in self.steps[:i])
        assert all(st.gamma.rank == 1 for st in demoted)
        nu = InductiveValuation(self.base, demoted, 1)
        if self._levels is not None:
            nu._levels = self._levels[:i]
        return nu

    def __eq__(self, other):
        return (
            isinstance(other, InductiveValuation)
            and self.base == other.base
            and self.steps == other.steps
        )

    def __hash__(self):
        return hash((self.base, self.steps))

    def describe(self) -> str:
        parts = ", ".join(f"({s.phi}, {s.gamma})" for s in self.steps)
        return f"[{parts}] over v_{self.base.p}"

    def __repr__(self):
        return f"InductiveValuation({self.describe()})"

    # -- value groups ---------------------------------------------------------

    def base_unit_value(self) -> Value:
        """v(p) = 1, embedded into the chain's rank."""
        one = Value.of(1)
        return one.embed(self.rank, major=True)

    def group_gens(self, i: int) -> Tuple[Value, ...]:
        """Generators of the value group of polynomials of degree < deg(phi_i).

        For a validated chain this group is generated by v(p) = 1 together
        with gamma_1, ..., gamma_{i-1}.
        """
        return (self.base_unit_value(),) + tuple(s.gamma for s in self.steps[: i - 1])

    def value_group_gens(self) -> Tuple[Value, ...]:
        """Generators of the full value group of the chain."""
        return (self.base_unit_value(),) + tuple(s.gamma for s in self.steps)

    def ram_index(self, i: int) -> int:
        """Least e >= 1 with e*gamma_i in the value group below level i."""
        if i not in self._e_cache:
            e = subgroup_index(self.steps[i - 1].gamma, self.group_gens(i))
            self._e_cache[i] = e
        e = self._e_cache[i]
        if e is None:
            raise DomainError(f"gamma_{i} is incommensurable with the group below it")
        return e

    def commensurable_at(self, i: int) -> bool:
        return is_commensurable(self.steps[i - 1].gamma, self.group_gens(i))

    @property
    def top_commensurable(self) -> bool:
        return self.commensurable_at(self.length)

    # -- evaluation -------------------------------------------------------------

    def base_value(self, c: Union[int, Fraction]) -> Value:
        v = self.base.value(c)
        return v.embed(self.rank, major=True)

    def _val(self, f: Poly, i: int) -> Value:
        if f.is_zero:
            return INFINITY
        if i == 0:
            return self.base_value(f.constant_value())
        phi, gamma = self.steps[i - 1].phi, self.steps[i - 1].gamma
        if f.degree < phi.degree:
            return self._val(f, i - 1)
        if i == 1:
            # digits are constants; take the minimum without Poly churn
            best = None
            for s, c in enumerate(_linear_digits(f.coeffs, -phi.coeffs[0])):
                if c == 0:
                    continue
                w = self.base_value(c) + gamma.scaled(s)
                if best is None or w < best:
                    best = w
            return best
        best: Optional[Value] = None
        for s, coeff in enumerate(phi_expansion(f, phi)):
            if coeff.is_zero:
                continue
            w = self._val(coeff, i - 1) + gamma.scaled(s)
            if best is None or w < best:
                best = w
        return best

    def valuation(self, f: Poly) -> Value:
        """The chain's value of f; Infinity exactly for f = 0."""
        return self._val(f, self.length)

    def __call__(self, f: Poly) -> Value:
        return self.valuation(f)

    def expansion(self, f: Poly, phi: Optional[Poly] = None) -> List[Poly]:
        """Expansion of f in the top key (or an explicit monic base)."""
        return phi_expansion(f, phi if phi is not None else self.top.phi)

    def weighted_cap(self) -> Value:
        """gamma_r / deg(phi_r): the maximal weighted value mu(f)/deg(f)."""
        return self.top.gamma.over(self.top_degree)

    # -- canonical monomials -------------------------------------------------------

    def digit_vector(self, beta: Value, level: Optional[int] = None) -> Tuple[int, ...]:
        """Exponents (c, m_1, ..., m_{i-1}) with beta = c*1 + sum m_j gamma_j.

        The digits satisfy 0 <= m_j < e_j and are found by greedy descent from
        the top generator; c is the free integer digit of v(p).  Raises
        DomainError when beta is not in the group.
        """
        i = self.length if level is None else level
        exps = [0] * i
        rem = beta
        for j in range(i - 1, 0, -1):
            gens_j = self.group_gens(j)
            e_j = self.ram_index(j)
            gamma_j = self.steps[j - 1].gamma
            for m in range(e_j):
                cand = rem - gamma_j.scaled(m)
                if in_subgroup(cand, gens_j):
                    exps[j] = m
                    rem = cand
                    break
            else:
                raise DomainError(
                    f"{beta} is not in the value group of degree<{self.degrees[i-1]} polynomials"
                )
        rem = rem.demote()
        if rem.rank != 1 or rem.coords[0].denominator != 1:
            raise DomainError(
                f"{beta} is not in the value group of degree<{self.degrees[i-1]} polynomials"
            )
        exps[0] = int(rem.coords[0])
        return tuple(exps)

    def monomial_from_exps(self, exps: Sequence[int]) -> Poly:
        """The monomial p^c * prod phi_j^{m_j} for exponents (c, m_1, ...)."""
        out = Poly.constant(Fraction(self.base.p) ** exps[0])
        for j, m in enumerate(exps[1:], 1):
            if m:
                out = out * (self.steps[j - 1].phi ** m)
        return out

    def canonical_monomial(self, beta: Value, level: Optional[int] = None) -> Poly:
        """Deterministic monomial of value beta with degree < deg(phi_r)."""
        exps = self.digit_vector(beta, level)
        mono = self.monomial_from_exps(exps)
        i = self.length if level is None else level
        assert mono.degree < max(self.degrees[i - 1], 1) or mono.degree == 0
        assert self._val(mono, i - 1) == beta
        return mono

    def ramification_data(self, level: Optional[int] = None) -> Tuple[int, Poly]:
        """(e, u): least e with e*gamma_r in the lower value group, and the
        canonical monomial u of degree < deg(phi_r) with value(u * phi_r^e) = 0.
        """
        i = self.length if level is None else level
        if not self.commensurable_at(i):
            raise DomainError("ramification data needs a commensurable top step")
        e = self.ram_index(i)
        u = self.canonical_monomial(self.steps[i - 1].gamma.scaled(-e), level=i)
        assert self._val(u * self.steps[i - 1].phi**e, i) == Value.of(0).embed(self.rank)
        return e, u

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        def gamma_obj(g: Value):
            if g.rank == 1:
                return str(g.coords[0])
            return [str(c) for c in g.coords]

        return {
            "prime": self.base.p,
            "steps": [
                {"phi": str(s.phi), "gamma": gamma_obj(s.gamma)} for s in self.steps
            ],
        }


def _parse_gamma(obj) -> Value:
    if isinstance(obj, list):
        return Value([Fraction(x) for x in obj])
    return Value.parse(str(obj))


def chain_from_json(obj: Union[str, dict]) -> InductiveValuation:
    """Build and validate a chain from {"prime": p, "steps": [{phi, gamma}...]}."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        p = int(obj["prime"])
        raw = [
            (Poly.parse(st["phi"]), _parse_gamma(st["gamma"])) for st in obj["steps"]
        ]
    except (KeyError, TypeError) as exc:
        raise ChainError(f"malformed chain description: {exc}") from None
    return validate_chain(raw, PadicValuation(p))


def validate_chain(
    raw_steps: Sequence, base: PadicValuation
) -> InductiveValuation:
    """Validate an augmentation chain, naming the first violated invariant.

    Checks, in order: monic non-constant keys with finite values; first key
    linear; key degrees divide the next degree; only the final value may be
    incommensurable; each gamma_i exceeds the prefix value of phi_i; each
    phi_{i+1} is a key polynomial for the prefix chain and is not equivalent
    to phi_i (augment replaces the top step in that case).  Residual level
    data (ramification, normalizers, residue-field tower) is built and cached
    during the walk.
    """
    steps: List[Step] = []
    for item in raw_steps:
        if isinstance(item, Step):
            phi, gamma = item.phi, item.gamma
        else:
            phi, gamma = item
        if isinstance(phi, str):
            phi = Poly.parse(phi)
        gamma = Value.of(gamma)
        steps.append(Step(phi, gamma))
    if not steps:
        raise ChainError("a chain must contain at least one step")

    for idx, st in enumerate(steps, 1):
        if st.phi.is_zero or st.phi.is_constant:
            raise ChainError(f"step {idx}: key polynomial must be non-constant")
        if not st.phi.is_monic:
            raise ChainError(f"step {idx}: key polynomial must be monic")
        if st.gamma.is_infinite:
            raise ChainError(
                f"step {idx}: infinite key values are not representable as chains; "
                "use key_semivaluation for the semivaluation with support (phi)"
            )

    steps = [Step(s.phi, s.gamma.demote()) for s in steps]
    for i, st in enumerate(steps[:-1], 1):
        # only the last value may carry the fresh (incommensurable) direction
        if st.gamma.rank == 2:
            raise ChainError(
                f"step {i}: incommensurable key value must be the last step"
            )
    rank = steps[-1].gamma.rank
    if rank == 2:
        steps = [
            Step(s.phi, s.gamma.embed(2, major=True)) for s in steps[:-1]
        ] + [steps[-1]]

    if steps[0].phi.degree != 1:
        raise ChainError("step 1: the first key polynomial must be monic linear")
    for i in range(1, len(steps)):
        if steps[i].phi.degree % steps[i - 1].phi.degree != 0:
            raise ChainError(
                f"step {i + 1}: key degree {steps[i].phi.degree} is not a multiple "
                f"of the previous key degree {steps[i - 1].phi.degree}"
            )

    nu = InductiveValuation(base, steps, rank)

    # value and key invariants, walked level by level; builds residual data
    from . import residual

    residual.attach_levels(nu)
    _spot_check_group(nu)
    return nu


def _spot_check_group(nu: InductiveValuation, samples: int = 6):
    """Values of random degree<n polynomials must lie in the cached group."""
    n = nu.top_degree
    if n == 1:
        return
    rng = random.Random(20210 + nu.base.p)
    gens = nu.group_gens(nu.length)
    for _ in range(samples):
        f = Poly([rng.randrange(-12, 13) for _ in range(rng.randrange(1, n + 1))])
        if f.is_zero:
            continue
        w = nu._val(f, nu.length - 1)
        assert in_subgroup(w, gens), "value-group generators are inconsistent"


# ---------------------------------------------------------------------------
# Expansion reports and elementary predicates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExpansionReport:
    """Top-key expansion data: coefficients, monomial values and the argmin set."""

    coeffs: Tuple[Poly, ...]
    monomial_values: Tuple[Value, ...]
    mu: Value
    indices: Tuple[int, ...]
    s: int
    s_prime: int


def expansion_report(nu: InductiveValuation, f: Poly) -> ExpansionReport:
    """Expansion of f in the top key with values, minimum and argmin set."""
    if f.is_zero:
        raise DomainError("expansion report of the zero polynomial")
    coeffs = nu.expansion(f)
    gamma = nu.top.gamma
    vals = []
    for s, c in enumerate(coeffs):
        if c.is_zero:
            vals.append(INFINITY)
        else:
            vals.append(nu._val(c, nu.length - 1) + gamma.scaled(s))
    mu = min(vals)
    idx = tuple(s for s, w in enumerate(vals) if w == mu)
    if not nu.top_commensurable:
        # monomial values differ in the fresh direction, so ties are impossible
        assert len(idx) == 1, "incommensurable argmin must be a singleton"
    return ExpansionReport(tuple(coeffs), tuple(vals), mu, idx, idx[0], idx[-1])


def is_equivalent(nu: InductiveValuation, f: Poly, g: Poly) -> bool:
    """Whether f and g share their initial term: value(f - g) > value(g)."""
    if f.is_zero and g.is_zero:
        return True
    if f.is_zero or g.is_zero:
        return False
    return nu(f - g) > nu(g)


def is_unit(nu: InductiveValuation, f: Poly) -> bool:
    """Whether the initial term of f is a unit of the graded algebra.

    Equivalent to the argmin set of the top-key expansion being {0}: f is then
    equivalent to its 0-th coefficient, a polynomial of degree < deg(phi_r),
    and all such initial terms are invertible.
    """
    if f.is_zero:
        raise DomainError("the zero polynomial is not a unit")
    return expansion_report(nu, f).indices == (0,)


def is_minimal(nu: InductiveValuation, f: Poly) -> bool:
    """Whether f is minimal: it divides nothing of smaller degree.

    Characterized through the expansion: deg(f) = s'(f) * deg(phi_r); with an
    incommensurable top step the argmin is a singleton and s = s'.
    """
    if f.is_zero or f.is_constant:
        raise DomainError("minimality is asked of non-constant polynomials")
    rep = expansion_report(nu, f)
    s_char = rep.s if not nu.top_commensurable else rep.s_prime
    return f.degree == s_char * nu.top_degree


def key_semivaluation(nu: InductiveValuation, chi: Poly, f: Poly) -> Value:
    """The semivaluation attached to a key chi: f -> value of (f mod chi).

    Extends the chain's values on degree < deg(chi) polynomials to Q[x]/(chi),
    with value Infinity exactly on multiples of chi.
    """
    from .keys import key_check

    kc = key_check(nu, chi)
    if not kc.ok:
        raise DomainError(f"chi is not a key polynomial: {kc.reason}")
    if f.is_zero:
        return INFINITY
    f0 = phi_expansion(f, chi)[0]
    return nu(f0)

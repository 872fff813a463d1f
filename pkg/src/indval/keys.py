"""Key-polynomial detection, graded divisibility, lifting and factorization.

A key polynomial generates a homogeneous prime of the graded algebra.  With a
commensurable top step the keys split into the class of the top key phi and,
for every monic irreducible psi over the residue tower, the class of a lift
whose residual polynomial is psi; the residual ideal separates the classes.
An incommensurable top step admits the single class of phi.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .basefield import Poly
from .chains import InductiveValuation, expansion_report, is_equivalent
from .errors import DomainError
from .residual import (
    HomogeneousUnit,
    _decompose,
    _hu_mul,
    _hu_pow,
    _require_levels,
    residual_lift,
)
from .towers import TowerPoly, ff_factor, ff_is_irreducible, monic_irreducibles


@dataclass(frozen=True)
class KeyCheck:
    """Outcome of a key test: verdict, branch taken, failure reason, and the
    residual data computed along the way (commensurable branch only)."""

    ok: bool
    branch: Optional[str] = None  # "equivalent" | "residual" | "translate"
    reason: Optional[str] = None
    s: Optional[int] = None
    respoly: Optional[TowerPoly] = None

    def __bool__(self):
        return self.ok


def key_check(nu: InductiveValuation, chi: Poly) -> KeyCheck:
    """Test whether chi is a key polynomial for the chain, with a reason code.

    Commensurable top step: chi is a key iff it is equivalent to the top key
    (same degree), or s(chi) = 0, R(chi) is irreducible and
    deg(chi) = e * deg(phi) * deg(R(chi)).  Incommensurable top step: the keys
    are exactly the translates phi + a with value(a) > gamma.
    """
    if chi.is_zero or chi.is_constant:
        raise DomainError("key polynomials are non-constant")
    if not chi.is_monic:
        raise DomainError("key polynomials are monic")
    n = nu.top_degree
    if not nu.top_commensurable:
        if chi.degree != n:
            return KeyCheck(False, reason=f"degree must be {n}")
        if nu(chi - nu.top.phi) > nu.top.gamma:
            return KeyCheck(True, branch="translate")
        return KeyCheck(
            False, reason="difference from the top key has value <= gamma"
        )
    if chi.degree == n and is_equivalent(nu, chi, nu.top.phi):
        return KeyCheck(True, branch="equivalent", s=1, respoly=None)
    levels = _require_levels(nu)
    dec = _decompose(levels, nu.length, chi)
    if dec.s != 0:
        return KeyCheck(False, reason=f"s(chi) = {dec.s} != 0", s=dec.s)
    if dec.respoly.is_constant:
        return KeyCheck(
            False, reason="chi is a unit (constant residual polynomial)", s=0
        )
    if not ff_is_irreducible(dec.respoly):
        return KeyCheck(
            False,
            reason=f"residual polynomial {dec.respoly} is reducible",
            s=0,
            respoly=dec.respoly,
        )
    e = levels[-1].e
    expected = e * n * dec.respoly.degree
    if chi.degree != expected:
        return KeyCheck(
            False,
            reason=f"degree {chi.degree} != e*n*deg(R) = {expected}",
            s=0,
            respoly=dec.respoly,
        )
    return KeyCheck(True, branch="residual", s=0, respoly=dec.respoly)


def is_key(nu: InductiveValuation, chi: Poly) -> bool:
    return key_check(nu, chi).ok


def graded_divides(nu: InductiveValuation, f: Poly, g: Poly) -> bool:
    """Whether the initial term of f divides the initial term of g.

    Commensurable: s(f) <= s(g) and R(f) | R(g) over the tower; with an
    incommensurable top step the s-comparison alone decides.
    """
    if f.is_zero or g.is_zero:
        raise DomainError("graded divisibility is asked of non-zero polynomials")
    if not nu.top_commensurable:
        return expansion_report(nu, f).s <= expansion_report(nu, g).s
    levels = _require_levels(nu)
    df = _decompose(levels, nu.length, f)
    dg = _decompose(levels, nu.length, g)
    return df.s <= dg.s and df.respoly.divides(dg.respoly)


def lift_key(nu: InductiveValuation, psi) -> Poly:
    """The canonical key polynomial whose residual polynomial is psi.

    psi = y maps to the top key itself; otherwise psi must be monic
    irreducible with psi(0) != 0, and the lift has degree e*n*deg(psi) with
    top coefficient 1.
    """
    levels = _require_levels(nu)
    top = levels[-1]
    if isinstance(psi, str):
        psi = TowerPoly.parse(top.field, psi)
    psi = TowerPoly(top.field, [top.field.coerce(c) for c in psi.elems()])
    if psi == TowerPoly.y(top.field):
        return nu.top.phi
    if psi.is_zero or psi.is_constant:
        raise DomainError("psi must be non-constant")
    if not ff_is_irreducible(psi):
        raise DomainError(f"psi = {psi} is reducible over the residue tower")
    chi = residual_lift(nu, 0, top.field.one(), psi)
    assert chi.is_monic and chi.degree == top.e * top.n * psi.degree
    assert key_check(nu, chi).ok
    return chi


def enumerate_keys(
    nu: InductiveValuation, max_res_deg: int, cap: int = 2**16
) -> List[Poly]:
    """One representative per key class with residual degree <= max_res_deg.

    The top key represents its own class; every monic irreducible psi != y
    over the tower contributes lift_key(psi).  An incommensurable top step
    has a single class.  Raises ResourceError past the enumeration cap.
    """
    if max_res_deg < 1:
        raise DomainError("max residual degree must be >= 1")
    if not nu.top_commensurable:
        return [nu.top.phi]
    levels = _require_levels(nu)
    top = levels[-1]
    out = [nu.top.phi]
    y = TowerPoly.y(top.field)
    for psi in monic_irreducibles(top.field, max_res_deg, cap=cap):
        if psi == y:
            continue
        out.append(lift_key(nu, psi))
    return out


@dataclass(frozen=True)
class GradedFactorization:
    """Factorization of an initial term into key classes with a closing unit:
    H(f) = unit * prod H(chi)^a."""

    unit_part: HomogeneousUnit
    factors: Tuple[Tuple[Poly, int], ...]

    def accounting(self, nu: InductiveValuation, f: Poly) -> str:
        total = self.unit_part.value
        pieces = [f"value({self.unit_part.residue})={self.unit_part.value}"]
        for chi, a in self.factors:
            w = nu(chi)
            total = total + w.scaled(a)
            pieces.append(f"{a}*value({chi})={w.scaled(a)}")
        return f"mu(f) = {nu(f)} = " + " + ".join(pieces)

    def __str__(self):
        prod = " * ".join(f"({chi})^{a}" for chi, a in self.factors) or "1"
        return f"{self.unit_part} ⊙ {prod}"


def graded_factorization(
    nu: InductiveValuation, f: Poly, seed: int = 0
) -> GradedFactorization:
    """Factor the initial term of f into key-polynomial classes.

    R(f) is factored over the tower (seeded, deterministic); each irreducible
    factor psi of multiplicity m contributes (lift_key(psi), m), and the top
    key enters with exponent s(f).  The unit part closes the value accounting
    mu(f) = value(unit) + sum a * mu(chi) exactly.
    """
    if f.is_zero:
        raise DomainError("factorization of the zero polynomial")
    if not nu.top_commensurable:
        raise DomainError("graded factorization needs a commensurable top step")
    levels = _require_levels(nu)
    r = nu.length
    dec = _decompose(levels, r, f)
    factors: List[Tuple[Poly, int]] = []
    unit = dec.nlc
    if dec.s > 0:
        factors.append((nu.top.phi, dec.s))
    if dec.respoly.degree > 0:
        for psi, mult in ff_factor(dec.respoly, seed):
            chi = lift_key(nu, psi)
            factors.append((chi, mult))
            chi_dec = _decompose(levels, r, chi)
            unit = _hu_mul(levels, r, unit, _hu_pow(levels, r, chi_dec.nlc, -mult))
    result = GradedFactorization(unit, tuple(factors))
    total = unit.value
    for chi, a in result.factors:
        total = total + nu(chi).scaled(a)
    assert total == dec.mu, "unit part does not close the value accounting"
    return result

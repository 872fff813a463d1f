"""Residues of units, the residual polynomial operator, and its inverses.

For a chain with commensurable top step, the degree-zero part of the graded
algebra is a polynomial ring k[xi] over a finite-field tower k, where
xi is the class of u * phi^e (e the relative ramification index, u the
canonical normalizer).  Every initial term H(f) factors as

    H(f)  =  unit * H(phi)^s(f) * R(f)(xi),

with R(f) a monic polynomial over k whose constant term is non-zero.  This
module computes that decomposition exactly, inverts it (lifting residual data
back to Q[x]), and verifies the two change-of-data transformation laws.

Computation scheme
------------------
The tower k is built level by level: the residue field after step i+1 extends
the step-i field by the step-i residual polynomial of phi_{i+1} (degree-1
moduli collapse).  Residues of units are taken *relative to canonical
monomials*: the unit with value beta and residue zeta stands for
zeta~ * H(M(beta)), M(beta) the canonical monomial.  Arbitrary monomials in p
and the lower keys reduce to this form by replacing every bundle phi_j^{e_j}
with xi_j * u_j^{-1}; the xi_j images are tower elements fixed at validation,
so the reduction is pure exponent bookkeeping.  The residue of a general unit
follows the recursion: a unit is equivalent to its 0-th expansion
coefficient, whose full decomposition one level down maps into the tower
through the stored images.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .basefield import Poly
from .chains import InductiveValuation, Step, phi_expansion
from .errors import ChainError, DomainError
from .towers import (
    TowerElem,
    TowerField,
    TowerPoly,
    extend_with_root,
)
from .values import INFINITY, Value


@dataclass(frozen=True)
class HomogeneousUnit:
    """A unit of the graded algebra: a value and a residue relative to the
    canonical monomial of that value."""

    value: Value
    residue: TowerElem

    def __post_init__(self):
        if self.residue.is_zero:
            raise DomainError("unit residue must be non-zero")

    def __str__(self):
        return f"({self.value}; {self.residue})"


@dataclass(frozen=True)
class ResidualIdeal:
    """The ideal cut out by an initial term in the degree-zero part: a power
    of xi times the residual polynomial evaluated at xi."""

    xi_power: int
    psi_part: TowerPoly

    def __str__(self):
        return f"xi^{self.xi_power} * ({self.psi_part})(xi)"


@dataclass(frozen=True)
class GradedDecomposition:
    """The triple (s, unit, residual polynomial) of an initial term."""

    s: int
    unit: HomogeneousUnit
    respoly: TowerPoly

    def __str__(self):
        return f"(s={self.s}, unit={self.unit}, R={self.respoly})"


@dataclass(frozen=True)
class ResidualData:
    """Top-level residual context of a chain: ramification index e, canonical
    normalizer u (value(u * phi^e) = 0), and the residue tower."""

    nu: InductiveValuation
    e: int
    u: Poly
    field: TowerField
    xi_symbol: str = "xi"


@dataclass
class _Level:
    """Per-level residual context, built during chain validation."""

    index: int
    nu: InductiveValuation  # rank-1 prefix chain of this length
    phi: Poly
    gamma: Value
    n: int
    e: int
    u_exps: Tuple[int, ...]
    u_poly: Poly
    field: TowerField
    z_images: Tuple[TowerElem, ...]  # xi_j images (j < index) in `field`
    gen_lifts: Tuple[Poly, ...]  # lift of each stored tower generator


@dataclass
class _Decomp:
    s: int
    s_prime: int
    indices: Tuple[int, ...]
    mu: Value
    nlc: HomogeneousUnit
    respoly: TowerPoly


# ---------------------------------------------------------------------------
# Level construction (driven by chain validation)
# ---------------------------------------------------------------------------


def attach_levels(nu: InductiveValuation) -> None:
    """Walk the chain, checking value/key invariants and building level data.

    Raises ChainError naming the first violated invariant.  On success the
    levels are cached on the chain; an incommensurable final step carries no
    level of its own.
    """
    from .keys import key_check

    r = nu.length
    comm_len = r if nu.rank == 1 else r - 1
    demoted = [Step(s.phi, s.gamma.demote()) for s in nu.steps[:comm_len]]
    levels: List[_Level] = []
    pre: Optional[InductiveValuation] = None
    for i in range(1, comm_len + 1):
        step = demoted[i - 1]
        psi = None
        if i >= 2:
            mu_phi = pre.valuation(step.phi)
            if not step.gamma > mu_phi:
                raise ChainError(
                    f"step {i}: gamma={step.gamma} must exceed the prefix value "
                    f"{mu_phi} of the key polynomial"
                )
            kc = key_check(pre, step.phi)
            if not kc.ok:
                raise ChainError(
                    f"step {i}: {step.phi} is not a key polynomial for the "
                    f"prefix chain ({kc.reason})"
                )
            if kc.branch == "equivalent":
                raise ChainError(
                    f"step {i}: key is equivalent to the previous key; augment "
                    "replaces the top step instead of appending"
                )
            psi = kc.respoly
        new_pre = InductiveValuation(nu.base, demoted[:i], 1)
        new_pre._levels = levels  # prefix sees the levels built so far
        levels.append(_make_level(new_pre, i, levels, psi))
        pre = new_pre
    if nu.rank == 2 and r >= 2:
        step = nu.steps[-1]
        mu_phi = pre.valuation(step.phi).embed(2, major=True)
        if not step.gamma > mu_phi:
            raise ChainError(
                f"step {r}: gamma={step.gamma} must exceed the prefix value "
                f"{mu_phi} of the key polynomial"
            )
        kc = key_check(pre, step.phi)
        if not kc.ok:
            raise ChainError(
                f"step {r}: {step.phi} is not a key polynomial for the prefix "
                f"chain ({kc.reason})"
            )
        if kc.branch == "equivalent":
            raise ChainError(
                f"step {r}: key is equivalent to the previous key; augment "
                "replaces the top step instead of appending"
            )
    nu._levels = levels


def _make_level(
    nu_i: InductiveValuation, i: int, levels: List[_Level], psi: Optional[TowerPoly]
) -> _Level:
    step = nu_i.steps[-1]
    e = nu_i.ram_index(i)
    u_exps = nu_i.digit_vector(step.gamma.scaled(-e), level=i)
    u_poly = nu_i.monomial_from_exps(u_exps)
    if i == 1:
        field = TowerField(nu_i.base.p)
        z_images: Tuple[TowerElem, ...] = ()
        gen_lifts: Tuple[Poly, ...] = ()
    else:
        prev = levels[i - 2]
        field, root = extend_with_root(prev.field, psi)
        z_images = tuple(field.coerce(z) for z in prev.z_images) + (field.coerce(root),)
        if field.height > prev.field.height:
            gen_lifts = prev.gen_lifts + (prev.u_poly * prev.phi**prev.e,)
        else:
            gen_lifts = prev.gen_lifts
    return _Level(
        index=i,
        nu=nu_i,
        phi=step.phi,
        gamma=step.gamma,
        n=step.phi.degree,
        e=e,
        u_exps=u_exps,
        u_poly=u_poly,
        field=field,
        z_images=z_images,
        gen_lifts=gen_lifts,
    )


def _require_levels(nu: InductiveValuation) -> List[_Level]:
    if nu._levels is None:
        raise DomainError("chain has no residual data; build it with validate_chain")
    if len(nu._levels) != nu.length:
        raise DomainError(
            "residual operators are only defined for a commensurable top step"
        )
    return nu._levels


def residual_data(nu: InductiveValuation) -> ResidualData:
    """Public view of the top-level residual context."""
    levels = _require_levels(nu)
    top = levels[-1]
    return ResidualData(nu=nu, e=top.e, u=top.u_poly, field=top.field)


# ---------------------------------------------------------------------------
# Homogeneous-unit arithmetic relative to canonical monomials
# ---------------------------------------------------------------------------


def _digits(levels: Sequence[_Level], i: int, beta: Value) -> Tuple[int, ...]:
    return levels[i - 1].nu.digit_vector(beta, level=i)


def _rho(levels: Sequence[_Level], i: int, exps: Sequence[int]):
    """Reduce an arbitrary-exponent monomial to canonical digits.

    Returns (residue data, canonical exponent vector).  Each bundle
    phi_j^{e_j} is replaced by xi_j * u_j^{-1}; the accumulated xi-images form
    the residue of the monomial relative to the canonical monomial of the
    same value.
    """
    top = levels[i - 1]
    F, h = top.field, top.field.height
    vec = list(exps) + [0] * (i - len(exps))
    acc = F._one(h)
    for j in range(i - 1, 0, -1):
        e_j = levels[j - 1].e
        q, digit = divmod(vec[j], e_j)
        vec[j] = digit
        if q:
            zj = top.z_images[j - 1]
            acc = F._mul(acc, F._pow(zj.data, q, h), h)
            for t, exp in enumerate(levels[j - 1].u_exps):
                vec[t] -= q * exp
    return acc, vec


def _hu_mono(levels: Sequence[_Level], i: int, exps: Sequence[int]) -> HomogeneousUnit:
    top = levels[i - 1]
    value = Value.of(exps[0])
    for j in range(1, len(exps)):
        value = value + levels[j - 1].gamma.scaled(exps[j])
    acc, canon = _rho(levels, i, exps)
    assert tuple(canon) == _digits(levels, i, value)
    return HomogeneousUnit(value, TowerElem(top.field, acc))


def _hu_mul(levels, i: int, a: HomogeneousUnit, b: HomogeneousUnit) -> HomogeneousUnit:
    top = levels[i - 1]
    F, h = top.field, top.field.height
    da = _digits(levels, i, a.value)
    db = _digits(levels, i, b.value)
    acc, _ = _rho(levels, i, [x + y for x, y in zip(da, db)])
    res = F._mul(F._mul(a.residue.data, b.residue.data, h), acc, h)
    return HomogeneousUnit(a.value + b.value, TowerElem(F, res))


def _hu_pow(levels, i: int, a: HomogeneousUnit, k: int) -> HomogeneousUnit:
    top = levels[i - 1]
    F, h = top.field, top.field.height
    if k == 0:
        return HomogeneousUnit(Value.of(0), TowerElem(F, F._one(h)))
    da = _digits(levels, i, a.value)
    acc, _ = _rho(levels, i, [k * x for x in da])
    res = F._mul(F._pow(a.residue.data, k, h), acc, h)
    return HomogeneousUnit(a.value.scaled(k), TowerElem(F, res))


def _hu_inv(levels, i: int, a: HomogeneousUnit) -> HomogeneousUnit:
    return _hu_pow(levels, i, a, -1)


# ---------------------------------------------------------------------------
# Residues of units and the graded decomposition, per level
# ---------------------------------------------------------------------------


def _residue_small(levels: Sequence[_Level], i: int, a: Poly) -> HomogeneousUnit:
    """Residue of a non-zero polynomial of degree < deg(phi_i) at level i."""
    top = levels[i - 1]
    if i == 1:
        c = a.constant_value()
        base = top.nu.base
        v = base.value(c)
        unit_part = Fraction(c) / Fraction(base.p) ** int(v.coords[0])
        return HomogeneousUnit(v, top.field.from_int(base.residue(unit_part)))
    dec = _decompose(levels, i - 1, a)
    F, h = top.field, top.field.height
    prev_field = levels[i - 2].field
    z = top.z_images[i - 2]
    # evaluate the level-(i-1) residual polynomial at the image of xi_{i-1};
    # non-zero because deg(a) < deg(phi_i) and phi_i is minimal at level i-1
    acc = F._zero(h)
    for cdata in reversed(dec.respoly.coeffs):
        up = F._coerce_up(cdata, prev_field.height, h)
        acc = F._add(F._mul(acc, z.data, h), up, h)
    assert not F._is_zero(acc, h), "residual polynomial vanished at the tower image"
    nlc_up = HomogeneousUnit(dec.nlc.value, F.coerce(dec.nlc.residue))
    q_part = _hu_mono(levels, i, [0] * (i - 1) + [dec.s])
    out = _hu_mul(levels, i, _hu_mul(levels, i, nlc_up, q_part), HomogeneousUnit(Value.of(0), TowerElem(F, acc)))
    return out


def _decompose(
    levels: Sequence[_Level],
    i: int,
    f: Poly,
    phi_override: Optional[Poly] = None,
    u_override: Optional[HomogeneousUnit] = None,
) -> _Decomp:
    """Expansion data and the graded decomposition of f at level i."""
    if f.is_zero:
        raise DomainError("decomposition of the zero polynomial")
    top = levels[i - 1]
    phi = phi_override if phi_override is not None else top.phi
    coeffs = phi_expansion(f, phi)
    vals = []
    for s, c in enumerate(coeffs):
        if c.is_zero:
            vals.append(INFINITY)
        else:
            vals.append(top.nu._val(c, i - 1) + top.gamma.scaled(s))
    mu = min(vals)
    indices = tuple(s for s, w in enumerate(vals) if w == mu)
    s0, sp = indices[0], indices[-1]
    e = top.e
    assert all((j - s0) % e == 0 for j in indices), "argmin indices off the e-grid"
    d = (sp - s0) // e
    hu_u = u_override if u_override is not None else _hu_mono(levels, i, top.u_exps)
    top_res = _residue_small(levels, i, coeffs[sp])
    nlc = _hu_mul(levels, i, top_res, _hu_pow(levels, i, hu_u, -d))
    zero_val = Value.of(0)
    zetas: List[TowerElem] = []
    idxset = set(indices)
    for j in range(d + 1):
        sj = s0 + j * e
        if sj in idxset:
            hu = _hu_mul(
                levels,
                i,
                _hu_mul(levels, i, _residue_small(levels, i, coeffs[sj]), _hu_pow(levels, i, hu_u, d - j)),
                _hu_inv(levels, i, top_res),
            )
            assert hu.value == zero_val
            zetas.append(hu.residue)
        else:
            zetas.append(top.field.zero())
    respoly = TowerPoly(top.field, zetas)
    assert respoly.is_monic and respoly.degree == d
    assert not respoly.coeff(0).is_zero
    return _Decomp(s0, sp, indices, mu, nlc, respoly)


# ---------------------------------------------------------------------------
# Public operations (top level)
# ---------------------------------------------------------------------------


def decompose(nu: InductiveValuation, f: Poly) -> GradedDecomposition:
    """The triple (s, unit, R) with H(f) = unit * H(phi)^s * R(xi)."""
    levels = _require_levels(nu)
    dec = _decompose(levels, nu.length, f)
    return GradedDecomposition(dec.s, dec.nlc, dec.respoly)


def residual_poly(nu: InductiveValuation, f: Poly) -> TowerPoly:
    """The monic residual polynomial R(f) over the residue tower."""
    levels = _require_levels(nu)
    return _decompose(levels, nu.length, f).respoly


def residual_unit(nu: InductiveValuation, f: Poly) -> HomogeneousUnit:
    """The normalized leading unit of the decomposition of H(f).

    Its value is mu(f) - s(f)*gamma_r and it is multiplicative in f.
    """
    levels = _require_levels(nu)
    return _decompose(levels, nu.length, f).nlc


def residual_ideal(nu: InductiveValuation, f: Poly) -> ResidualIdeal:
    """The degree-zero ideal of H(f): xi^ceil(s/e) * R(f)(xi)."""
    levels = _require_levels(nu)
    dec = _decompose(levels, nu.length, f)
    e = levels[-1].e
    return ResidualIdeal(-(-dec.s // e), dec.respoly)


def unit_residue(nu: InductiveValuation, f: Poly) -> HomogeneousUnit:
    """Value and residue of a unit, relative to its canonical monomial."""
    levels = _require_levels(nu)
    if f.is_zero:
        raise DomainError("the zero polynomial is not a unit")
    dec = _decompose(levels, nu.length, f)
    if dec.indices != (0,):
        raise DomainError("polynomial is not a unit: expansion argmin is not {0}")
    return dec.nlc


def _mulred(nu: InductiveValuation, a: Poly, b: Poly) -> Poly:
    """Product reduced to degree < deg(phi_r); residue-preserving for factors
    of degree < deg(phi_r) because a*b is equivalent to its 0-th coefficient."""
    prod = a * b
    n = nu.top_degree
    if not prod.is_zero and prod.degree >= n:
        prod = prod.divmod_monic(nu.top.phi)[1]
    return prod


def _lift_data(nu: InductiveValuation, levels, data, h: int) -> Poly:
    if h == 0:
        return Poly.constant(data)
    genlift = levels[-1].gen_lifts[h - 1]
    acc = Poly.zero()
    power = Poly.one()
    for cdata in data:
        sub = _lift_data(nu, levels, cdata, h - 1)
        if not sub.is_zero:
            acc = acc + _mulred(nu, sub, power)
        power = _mulred(nu, power, genlift)
    return acc


def unit_lift(nu: InductiveValuation, hu: HomogeneousUnit) -> Poly:
    """A polynomial of degree < deg(phi_r) whose unit residue is exactly hu.

    Tower generators lift to u_j * phi_j^{e_j}; products are reduced modulo
    the top key after every step, which preserves residues; a canonical
    monomial then moves the value-0 lift to the requested value.
    """
    levels = _require_levels(nu)
    top = levels[-1]
    zeta = top.field.coerce(hu.residue)
    if zeta.is_zero:
        raise DomainError("unit residue must be non-zero")
    w = _lift_data(nu, levels, zeta.data, top.field.height)
    mono = nu.canonical_monomial(hu.value)
    out = _mulred(nu, w, mono)
    back = _residue_small(levels, nu.length, out)
    assert back.value == hu.value and back.residue == zeta
    return out


def residual_lift(
    nu: InductiveValuation, s: int, zeta: TowerElem, psi: TowerPoly
) -> Poly:
    """Build f with s(f) = s, residual polynomial psi, and top unit zeta.

    The coefficient at phi^(s + j*e) lifts zeta * u^(j-d) * psi_j, so the top
    coefficient is the lift of zeta; round-trip equality of the triple is
    asserted.  psi must be monic with psi(0) != 0 (or psi = 1).
    """
    levels = _require_levels(nu)
    top = levels[-1]
    if s < 0:
        raise DomainError("s must be non-negative")
    zeta = top.field.coerce(zeta)
    if zeta.is_zero:
        raise DomainError("zeta must be non-zero")
    psi = TowerPoly(top.field, [top.field.coerce(c) for c in psi.elems()])
    if psi.is_zero or not psi.is_monic:
        raise DomainError("psi must be monic")
    d = psi.degree
    if d > 0 and psi.coeff(0).is_zero:
        raise DomainError("psi must have a non-zero constant term (or equal 1)")
    hu_u = _hu_mono(levels, nu.length, top.u_exps)
    acc = Poly.zero()
    for j in range(d + 1):
        zj = psi.coeff(j)
        if zj.is_zero:
            continue
        hu_j = _hu_mul(
            levels,
            nu.length,
            _hu_mul(levels, nu.length, HomogeneousUnit(Value.of(0), zeta), _hu_pow(levels, nu.length, hu_u, j - d)),
            HomogeneousUnit(Value.of(0), zj),
        )
        acc = acc + unit_lift(nu, hu_j) * top.phi ** (j * top.e)
    f = acc * top.phi**s
    dec = _decompose(levels, nu.length, f)
    assert dec.s == s and dec.respoly == psi
    return f


# ---------------------------------------------------------------------------
# Change-of-data transformation laws
# ---------------------------------------------------------------------------


def change_normalizer(nu: InductiveValuation, f: Poly, u_star: Poly):
    """Compare the residual polynomial under an alternative normalizer.

    Returns (predicted, observed): the law R*(y) = sigma^d R(sigma^{-1} y)
    with sigma the residue of u/u*, against a recomputation from scratch.
    """
    levels = _require_levels(nu)
    top = levels[-1]
    n = nu.top_degree
    if u_star.is_zero or u_star.degree >= n:
        raise DomainError("alternative normalizer must be non-zero of degree < deg(phi)")
    target = top.gamma.scaled(-top.e)
    if nu._val(u_star, nu.length - 1) != target:
        raise DomainError("alternative normalizer must satisfy value(u* phi^e) = 0")
    hu_star = _residue_small(levels, nu.length, u_star)
    hu_u = _hu_mono(levels, nu.length, top.u_exps)
    sigma_hu = _hu_mul(levels, nu.length, hu_u, _hu_inv(levels, nu.length, hu_star))
    assert sigma_hu.value == Value.of(0)
    sigma = sigma_hu.residue
    dec = _decompose(levels, nu.length, f)
    d = dec.respoly.degree
    predicted = dec.respoly.compose_linear(sigma.inv(), top.field.zero()).scale(sigma**d)
    observed = _decompose(levels, nu.length, f, u_override=hu_star).respoly
    return predicted, observed


def change_key(nu: InductiveValuation, f: Poly, phi_star: Poly):
    """Compare the residual polynomial under an alternative minimal-degree key.

    For an equivalent key the operator is unchanged.  Otherwise e = 1 and
    y^s R(f)(y) = (y+tau)^{s*} R*(f)(y+tau) with tau the residue of
    u*(phi*-phi); the predicted R* is solved from that identity and compared
    with a recomputation from the phi*-expansion.
    """
    levels = _require_levels(nu)
    top = levels[-1]
    if not phi_star.is_monic or phi_star.degree != top.n:
        raise DomainError("alternative key must be monic of the minimal degree")
    a = phi_star - top.phi
    dec = _decompose(levels, nu.length, f)
    mu_a = nu(a)
    if mu_a > top.gamma:
        observed = _decompose(levels, nu.length, f, phi_override=phi_star).respoly
        return dec.respoly, observed
    if mu_a < top.gamma:
        raise DomainError("alternative polynomial is not a key: its value is too small")
    if top.e != 1:
        raise DomainError("all minimal-degree keys are equivalent when e > 1")
    tau_hu = _hu_mul(
        levels, nu.length, _hu_mono(levels, nu.length, top.u_exps), _residue_small(levels, nu.length, a)
    )
    assert tau_hu.value == Value.of(0)
    tau = tau_hu.residue
    one = top.field.one()
    shifted = dec.respoly.compose_linear(one, -tau)
    lhs = shifted * TowerPoly(top.field, [-tau, one]) ** dec.s
    m = 0
    while lhs.coeff(m).is_zero:
        m += 1
    predicted = TowerPoly(top.field, lhs.coeffs[m:])
    observed_dec = _decompose(levels, nu.length, f, phi_override=phi_star)
    assert observed_dec.s == m
    return predicted, observed_dec.respoly

"""Command-line front end: verb-style subcommands over chain files.

Exit codes: 0 success, 1 usage error, 2 invalid chain, 3 domain/resource
error.  All randomness sits behind --seed (default 0), so output is
deterministic.  --json renders {verb, inputs, result, diagnostics}.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Tuple

from .augmentation import (
    augment,
    continuous_chain_from_json,
    limit_augment,
    stability,
)
from .basefield import Poly
from .chains import (
    chain_from_json,
    expansion_report,
    key_semivaluation,
)
from .errors import ChainError, DomainError, ParseError, ResourceError
from .keys import enumerate_keys, graded_factorization, key_check, lift_key
from .residual import decompose, residual_data, residual_ideal, residual_poly
from .towers import TowerPoly
from .values import Value


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> _Parser:
    parser = _Parser(prog="indval", description=__doc__)
    parser.add_argument("--json", action="store_true", help="emit JSON output")
    sub = parser.add_subparsers(dest="verb", parser_class=_Parser)

    def add(verb, *, poly=False, psi=False, chi=False, phi_gamma=False, maxdeg=False, seed=False):
        sp = sub.add_parser(verb)
        sp.add_argument("--chain", required=True, help="chain description file (JSON)")
        if poly:
            sp.add_argument("--poly", required=True)
        if psi:
            sp.add_argument("--psi", required=True, help="residual polynomial in y")
        if chi:
            sp.add_argument("--chi", required=True, help="key polynomial")
        if phi_gamma:
            sp.add_argument("--phi", required=True)
            sp.add_argument("--gamma", required=True)
        if maxdeg:
            sp.add_argument("--max-res-deg", type=int, default=1)
        if seed:
            sp.add_argument("--seed", type=int, default=0)
        # SUPPRESS keeps a top-level --json from being clobbered by the default
        sp.add_argument(
            "--json", action="store_true", default=argparse.SUPPRESS,
            help="emit JSON output",
        )
        return sp

    add("eval", poly=True)
    add("expand", poly=True)
    add("respoly", poly=True)
    add("decompose", poly=True)
    add("ideal", poly=True)
    add("iskey", poly=True)
    add("liftkey", psi=True)
    add("enumerate", maxdeg=True)
    add("factor", poly=True, seed=True)
    add("augment", phi_gamma=True)
    add("vchi", poly=True, chi=True)
    add("stability", poly=True)
    add("limit", poly=True)
    return parser


def _load_json_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ChainError(f"cannot read chain file {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ChainError(f"chain file {path} is not valid JSON: {exc}") from None


def _unit_obj(hu) -> dict:
    return {"value": str(hu.value), "residue": str(hu.residue)}


def _dispatch(args) -> Tuple[List[str], object]:
    """Run one verb; returns (human-readable lines, JSON result object)."""
    verb = args.verb

    if verb in ("stability", "limit"):
        obj = _load_json_file(args.chain)
        chain = continuous_chain_from_json(obj)
        f = Poly.parse(args.poly)
        if verb == "stability":
            rep = stability(chain, f)
            res = {
                "stable": rep.stable,
                "value": str(rep.value) if rep.stable else None,
                "witness_index": rep.witness_index,
                "values": [str(v) for v in rep.values],
            }
            return [str(rep)], res
        if "limit_phi" not in obj or "limit_gamma" not in obj:
            raise ChainError("limit requires limit_phi and limit_gamma in the chain file")
        phi = Poly.parse(obj["limit_phi"])
        gamma = obj["limit_gamma"]
        gamma = Value([*map(str, gamma)]) if isinstance(gamma, list) else Value.parse(str(gamma))
        lim = limit_augment(chain, phi, gamma)
        w = lim(f)
        return [str(w)], {"value": str(w)}

    nu = chain_from_json(_load_json_file(args.chain))

    if verb == "eval":
        w = nu(Poly.parse(args.poly))
        return [str(w)], {"value": str(w)}
    if verb == "expand":
        rep = expansion_report(nu, Poly.parse(args.poly))
        lines = [
            f"coeffs: [{', '.join(str(c) for c in rep.coeffs)}]",
            f"monomial values: [{', '.join(str(v) for v in rep.monomial_values)}]",
            f"mu = {rep.mu}; I = {list(rep.indices)}; s = {rep.s}; s' = {rep.s_prime}",
        ]
        res = {
            "coeffs": [str(c) for c in rep.coeffs],
            "monomial_values": [str(v) for v in rep.monomial_values],
            "mu": str(rep.mu),
            "indices": list(rep.indices),
            "s": rep.s,
            "s_prime": rep.s_prime,
        }
        return lines, res
    if verb == "respoly":
        R = residual_poly(nu, Poly.parse(args.poly))
        return [str(R)], {"respoly": str(R)}
    if verb == "decompose":
        d = decompose(nu, Poly.parse(args.poly))
        lines = [f"s = {d.s}", f"unit = {d.unit}", f"R = {d.respoly}"]
        return lines, {"s": d.s, "unit": _unit_obj(d.unit), "respoly": str(d.respoly)}
    if verb == "ideal":
        ideal = residual_ideal(nu, Poly.parse(args.poly))
        return [str(ideal)], {
            "xi_power": ideal.xi_power,
            "psi": str(ideal.psi_part),
            "printed": str(ideal),
        }
    if verb == "iskey":
        kc = key_check(nu, Poly.parse(args.poly))
        text = "true" if kc.ok else f"false ({kc.reason})"
        if kc.ok and kc.branch:
            text += f" [{kc.branch}]"
        return [text], {"is_key": kc.ok, "branch": kc.branch, "reason": kc.reason}
    if verb == "liftkey":
        field = residual_data(nu).field
        psi = TowerPoly.parse(field, args.psi)
        chi = lift_key(nu, psi)
        return [str(chi)], {"key": str(chi)}
    if verb == "enumerate":
        keys = enumerate_keys(nu, args.max_res_deg)
        return [str(k) for k in keys], {"keys": [str(k) for k in keys]}
    if verb == "factor":
        f = Poly.parse(args.poly)
        gf = graded_factorization(nu, f, seed=args.seed)
        lines = [str(gf), gf.accounting(nu, f)]
        res = {
            "unit": _unit_obj(gf.unit_part),
            "factors": [{"chi": str(c), "exponent": a} for c, a in gf.factors],
            "accounting": gf.accounting(nu, f),
        }
        return lines, res
    if verb == "augment":
        phi = Poly.parse(args.phi)
        gamma = Value.parse(args.gamma)
        nu2 = augment(nu, phi, gamma)
        obj = nu2.to_json()
        return [json.dumps(obj)], {"chain": obj}
    if verb == "vchi":
        w = key_semivaluation(nu, Poly.parse(args.chi), Poly.parse(args.poly))
        return [str(w)], {"value": str(w)}
    raise ParseError(f"unknown verb {verb!r}")


def _inputs_obj(args) -> dict:
    skip = {"verb", "json"}
    return {
        k.replace("_", "-"): v
        for k, v in sorted(vars(args).items())
        if k not in skip and v is not None
    }


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.verb is None:
        parser.print_usage(sys.stderr)
        return 1
    diagnostics: List[str] = []
    result = None
    lines: List[str] = []
    code = 0
    try:
        lines, result = _dispatch(args)
    except ParseError as exc:
        diagnostics.append(str(exc))
        code = 1
    except ChainError as exc:
        diagnostics.append(str(exc))
        code = 2
    except (DomainError, ResourceError) as exc:
        diagnostics.append(str(exc))
        code = 3
    if args.json:
        payload = {
            "verb": args.verb,
            "inputs": _inputs_obj(args),
            "result": result,
            "diagnostics": diagnostics,
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)
        for msg in diagnostics:
            print(f"error: {msg}", file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Command-line front end: verb-noun subcommands, structured output optional.

Exit codes: 0 success, 2 parse/validation error, 3 search/scale bound
exhausted, 1 anything else.  Structured output is a single JSON record per
invocation with all inputs echoed in canonical form; identical invocations
produce byte-identical records.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .classgroup import class_group, principal_generator
from .constructions import (QuotientPair, approx_element, cutdown_pair,
                            in_localization, monoid_quotient_rep,
                            ray_generates_check, second_generator)
from .errors import (CongmonError, FactorBoundExceededError, PreconditionError,
                     ScaleExceededError, SearchBoundExceededError,
                     SpecParseError)
from .fields import AlgebraicNumber, format_element, parse_element, parse_field
from .functorial import (MonoidDescriptor, field_inclusion_check,
                         induced_modulus, leq_pairs, monoid_inclusion_check,
                         ray_positivity_detect)
from .ideals import (DEFAULT_FACTOR_BOUND, FractionalIdeal, PrimeIdeal,
                     factor_ideal, parse_ideal)
from .primitive import (DEFAULT_VMAX, INF, PrimeWindow,
                        PrimitiveIdealDescriptor, TruncatedPoint,
                        boundary_defect_data, closure_of, extremal_ideals,
                        ideal_leq, orbit_reach_check)
from .rayclass import hm_order, is_right_lcm, prime_class_order, quotient_group
from .residues import (enumerate_monoid, monoid_reject_reason, parse_gamma,
                       parse_modulus, residue_of, residue_of_fraction)
from .semilattice import (ConstructibleIdeal, SemigroupElement,
                          check_relations, embed_full, faithfulness_witness,
                          independence_witness, meet, act,
                          parse_constructible, prime_in_class_avoiding)
from .units import unit_group


def _ser(v):
    if v is None or isinstance(v, (bool, int, str)):
        return v
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, AlgebraicNumber):
        return format_element(v)
    if isinstance(v, FractionalIdeal):
        return v.spec()
    if isinstance(v, PrimeIdeal):
        return v.ideal.spec()
    if isinstance(v, ConstructibleIdeal):
        return v.spec()
    if isinstance(v, SemigroupElement):
        return [format_element(v.b), format_element(v.a)]
    if isinstance(v, QuotientPair):
        return [format_element(v.numerator), format_element(v.denominator)]
    if isinstance(v, PrimitiveIdealDescriptor):
        return sorted(P.ideal.spec() for P in v.members)
    if isinstance(v, TruncatedPoint):
        return {"vals": ["inf" if t == INF else t for t in v.vals],
                "res": format_element(v.window.modulus.field.element(*v.res))}
    if isinstance(v, (list, tuple, set, frozenset)):
        items = [_ser(x) for x in v]
        if isinstance(v, (set, frozenset)):
            items = sorted(items, key=str)
        return items
    if isinstance(v, dict):
        return {str(k): _ser(x) for k, x in v.items()}
    return str(v)


def _human(v) -> str:
    s = _ser(v)
    if isinstance(s, bool):
        return "true" if s else "false"
    if isinstance(s, (list, dict)):
        return json.dumps(s, sort_keys=True)
    return str(s)


class Invocation:
    """Parsed common context: field, modulus, gamma, output format."""

    def __init__(self, args):
        self.args = args
        self.field = parse_field(args.field)
        self.modulus = parse_modulus(self.field, args.modulus)
        self.gamma = parse_gamma(self.modulus, args.gamma)

    def inputs(self, **extra) -> dict:
        base = {"field": self.field.spec(), "modulus": self.modulus.spec(),
                "gamma": self.gamma.spec_hint}
        base.update({k: _ser(v) for k, v in extra.items()})
        return base

    def emit(self, command: str, result, extra_inputs: dict | None = None) -> None:
        if self.args.format == "structured":
            record = {"command": command,
                      "inputs": self.inputs(**(extra_inputs or {})),
                      "result": _ser(result)}
            print(json.dumps(record, sort_keys=True, separators=(",", ":")))
        else:
            print(_human(result))


def _parse_prime(field, spec: str) -> PrimeIdeal:
    I = parse_ideal(field, spec)
    fact = I.factorization()
    if len(fact) != 1 or fact[0][1] != 1:
        raise SpecParseError(f"{spec!r} is not a prime ideal")
    return fact[0][0]


def _parse_window(inv: Invocation, spec: str, vmax: int) -> PrimeWindow:
    primes = [_parse_prime(inv.field, s) for s in spec.split("/") if s.strip()]
    return PrimeWindow(inv.modulus, inv.gamma, primes, vmax)


def _parse_subset(window: PrimeWindow, inv: Invocation, spec: str):
    primes = [_parse_prime(inv.field, s) for s in spec.split("/") if s.strip()]
    return PrimitiveIdealDescriptor(window, primes)


def _parse_point(window: PrimeWindow, inv: Invocation, spec: str) -> TruncatedPoint:
    if "|" in spec:
        vals_s, res_s = spec.split("|", 1)
    else:
        vals_s, res_s = spec, "0"
    vals = []
    for tok in vals_s.split(","):
        tok = tok.strip()
        vals.append(INF if tok == "inf" else int(tok))
    res = parse_element(inv.field, res_s)
    return TruncatedPoint(window, vals, res.int_coords())


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="congmon", description=__doc__)
    top.add_argument("--field", default="Q", help="Q or Q(sqrt,<d>)")
    top.add_argument("--modulus", default="", help="inf:<idx,...>;fin:<gens>")
    top.add_argument("--gamma", default="full", help="trivial|full|gens:<elements>")
    top.add_argument("--format", choices=("human", "structured"), default="human")
    sub = top.add_subparsers(dest="group", required=True)

    g = sub.add_parser("field").add_subparsers(dest="verb", required=True)
    p = g.add_parser("factor")
    p.add_argument("--ideal", required=True)
    p.add_argument("--bound", type=int, default=DEFAULT_FACTOR_BOUND)
    g.add_parser("units")
    g.add_parser("classgroup")
    p = g.add_parser("principal")
    p.add_argument("--ideal", required=True)

    g = sub.add_parser("monoid").add_subparsers(dest="verb", required=True)
    p = g.add_parser("contains")
    p.add_argument("element")
    p = g.add_parser("residue")
    p.add_argument("element")
    p = g.add_parser("enumerate")
    p.add_argument("--bound", type=int, required=True)
    p = g.add_parser("quotientrep")
    p.add_argument("element")

    g = sub.add_parser("lemma").add_subparsers(dest="verb", required=True)
    p = g.add_parser("approx")
    p.add_argument("--at", action="append", default=[],
                   help="<prime spec>:<exponent>, repeatable")
    p = g.add_parser("twogen")
    p.add_argument("--ideal", required=True)
    p.add_argument("--element", required=True)
    p = g.add_parser("cutdown")
    p.add_argument("--ideal", required=True)
    p.add_argument("--element", required=True)
    p = g.add_parser("raygen")
    p.add_argument("--ideal", required=True)
    p.add_argument("--bound", type=int, default=None)
    p = g.add_parser("localize")
    p.add_argument("element")

    g = sub.add_parser("semilattice").add_subparsers(dest="verb", required=True)
    p = g.add_parser("meet")
    p.add_argument("x")
    p.add_argument("y")
    p = g.add_parser("act")
    p.add_argument("--translate", required=True)
    p.add_argument("--scale", required=True)
    p.add_argument("x")
    p = g.add_parser("witness")
    p.add_argument("x")
    p.add_argument("--cover", action="append", default=[])
    p = g.add_parser("embed")
    p.add_argument("x")
    p = g.add_parser("relations")
    p.add_argument("--which", default="Ta,Tb,Tc,Td,I,II")
    p.add_argument("--count", type=int, default=4)

    g = sub.add_parser("faithful").add_subparsers(dest="verb", required=True)
    p = g.add_parser("witness")
    p.add_argument("--target", required=True, help="ideal representing the class")
    p.add_argument("--base", required=True)
    p.add_argument("--sub", action="append", default=[],
                   help="constructible-ideal literal, repeatable")
    p.add_argument("--max-norm", type=int, default=4000)
    p = g.add_parser("prime")
    p.add_argument("--target", required=True)
    p.add_argument("--avoid-element", action="append", default=[])
    p.add_argument("--avoid-ideal", action="append", default=[])
    p.add_argument("--max-norm", type=int, default=4000)

    g = sub.add_parser("rayclass").add_subparsers(dest="verb", required=True)
    p = g.add_parser("order")
    p.add_argument("--bound-factor", type=int, default=1)
    g.add_parser("quotient")
    p = g.add_parser("fp")
    p.add_argument("--prime", required=True)
    g.add_parser("rightlcm")

    g = sub.add_parser("prim").add_subparsers(dest="verb", required=True)
    p = g.add_parser("order")
    p.add_argument("--window", required=True, help="prime specs joined by /")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--vmax", type=int, default=DEFAULT_VMAX)
    p = g.add_parser("closure")
    p.add_argument("--window", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--vmax", type=int, default=DEFAULT_VMAX)
    p = g.add_parser("extremal")
    p.add_argument("--window", required=True)
    p.add_argument("--vmax", type=int, default=DEFAULT_VMAX)
    p = g.add_parser("defect")
    p.add_argument("--window", required=True)
    p.add_argument("--prime", required=True)
    p.add_argument("--vmax", type=int, default=DEFAULT_VMAX)

    g = sub.add_parser("orbit").add_subparsers(dest="verb", required=True)
    p = g.add_parser("reach")
    p.add_argument("--window", required=True)
    p.add_argument("--vmax", type=int, default=DEFAULT_VMAX)
    p.add_argument("--x", required=True, help="v1,v2,...|residue")
    p.add_argument("--y", required=True)
    p.add_argument("--budget", type=int, default=12)

    g = sub.add_parser("functor").add_subparsers(dest="verb", required=True)
    for verb in ("leq", "include"):
        p = g.add_parser(verb)
        p.add_argument("--modulus2", required=True)
        p.add_argument("--gamma2", default="full")
        if verb == "include":
            p.add_argument("--bound", type=int, default=1000)
    p = g.add_parser("induce")
    p.add_argument("--field2", required=True)
    p = g.add_parser("fieldinc")
    p.add_argument("--field2", required=True)
    p.add_argument("--modulus2", default="")
    p.add_argument("--gamma2", default="full")
    p.add_argument("--bound", type=int, default=1000)
    p = g.add_parser("raypos")
    p.add_argument("--embedding", type=int, required=True)
    p.add_argument("--bound", type=int, default=1000)
    return top


def _dispatch(inv: Invocation) -> None:
    args = inv.args
    K, m, gamma = inv.field, inv.modulus, inv.gamma
    group, verb = args.group, args.verb
    cmd = f"{group}.{verb}"

    if group == "field":
        if verb == "factor":
            I = parse_ideal(K, args.ideal)
            fact = factor_ideal(I, args.bound)
            inv.emit(cmd, [[P.ideal.spec(), e] for P, e in fact],
                     {"ideal": I})
        elif verb == "units":
            data = unit_group(K)
            inv.emit(cmd, {"torsion_order": data.torsion_order,
                           "torsion_generator": data.torsion_generator,
                           "fundamental_unit": data.fundamental_unit})
        elif verb == "classgroup":
            data = class_group(K)
            inv.emit(cmd, {"order": data.order,
                           "representatives": data.representatives})
        elif verb == "principal":
            I = parse_ideal(K, args.ideal)
            inv.emit(cmd, principal_generator(I), {"ideal": I})
    elif group == "monoid":
        if verb == "enumerate":
            inv.emit(cmd, enumerate_monoid(m, gamma, args.bound),
                     {"bound": args.bound})
        elif verb == "contains":
            x = parse_element(K, args.element)
            reason = monoid_reject_reason(x, m, gamma)
            inv.emit(cmd, reason is None, {"element": x})
        elif verb == "residue":
            x = parse_element(K, args.element)
            r = (residue_of(x, m) if x.is_integral()
                 else residue_of_fraction(x, m))
            inv.emit(cmd, {"signs": list(r.signs), "rep": r.rep_element()},
                     {"element": x})
        elif verb == "quotientrep":
            x = parse_element(K, args.element)
            inv.emit(cmd, monoid_quotient_rep(x, m, gamma), {"element": x})
    elif group == "lemma":
        # each lemma verb echoes the postcondition it verified
        if verb == "approx":
            prescription = []
            for tok in args.at:
                ideal_s, _, exp_s = tok.rpartition(":")
                prescription.append((_parse_prime(K, ideal_s), int(exp_s)))
            x = approx_element(prescription, m)
            post = ("totally positive, = 1 mod the finite part, exact "
                    "valuations " + ",".join(
                        f"v({P.ideal.spec()})={n}" for P, n in prescription))
            inv.emit(cmd, {"element": x, "post": post},
                     {"at": [[P.ideal.spec(), n] for P, n in prescription]})
        elif verb == "twogen":
            A = parse_ideal(K, args.ideal)
            a = parse_element(K, args.element)
            b = second_generator(a, A, m)
            inv.emit(cmd, {"element": b,
                           "post": f"{a}R + {b}R = {A.spec()} verified"},
                     {"ideal": A, "element": a})
        elif verb == "cutdown":
            A = parse_ideal(K, args.ideal)
            a = parse_element(K, args.element)
            b = cutdown_pair(A, a, m)
            inv.emit(cmd, {"element": b,
                           "post": f"({a}/{b})R meet R = {A.spec()} verified"},
                     {"ideal": A, "element": a})
        elif verb == "raygen":
            A = parse_ideal(K, args.ideal)
            ok, gens = ray_generates_check(A, m, args.bound)
            post = ("generated ideal equals the input" if ok
                    else "bound too small to generate the input")
            inv.emit(cmd, {"generates": ok, "generators": gens, "post": post},
                     {"ideal": A})
        elif verb == "localize":
            x = parse_element(K, args.element)
            pair = in_localization(x, m)
            if pair is None:
                inv.emit(cmd, None, {"element": x})
            else:
                a, b = pair
                inv.emit(cmd, {"pair": [a, b],
                               "post": f"{a} integral, {b} coprime to the "
                                       "finite part, quotient equals input"},
                         {"element": x})
    elif group == "semilattice":
        if verb == "meet":
            X = parse_constructible(m, gamma, args.x)
            Y = parse_constructible(m, gamma, args.y)
            inv.emit(cmd, meet(X, Y), {"x": X, "y": Y})
        elif verb == "act":
            X = parse_constructible(m, gamma, args.x)
            g = SemigroupElement(m, gamma, parse_element(K, args.translate),
                                 parse_element(K, args.scale))
            inv.emit(cmd, act(g, X), {"x": X, "element": g})
        elif verb == "witness":
            X = parse_constructible(m, gamma, args.x)
            covers = [parse_constructible(m, gamma, c) for c in args.cover]
            inv.emit(cmd, independence_witness(X, covers),
                     {"x": X, "covers": covers})
        elif verb == "embed":
            X = parse_constructible(m, gamma, args.x)
            inv.emit(cmd, embed_full(X), {"x": X})
        elif verb == "relations":
            elements, ideals = _relation_samples(m, gamma, args.count)
            out = {}
            for which in args.which.split(","):
                rep = check_relations(which.strip(), elements, ideals)
                out[rep.relation] = {"checked": rep.checked,
                                     "violations": rep.violations}
            inv.emit(cmd, out)
    elif group == "faithful":
        if verb == "witness":
            target = parse_ideal(K, args.target)
            base = parse_ideal(K, args.base)
            subs = []
            for s in args.sub:
                ci = parse_constructible(m, gamma, s)
                subs.append((ci.rep, ci.ideal))
            w = faithfulness_witness(target, base, subs, m, gamma,
                                     args.max_norm)
            inv.emit(cmd, w, {"target": target, "base": base,
                              "subcosets": [list(t) for t in subs]})
        elif verb == "prime":
            target = parse_ideal(K, args.target)
            avoid_e = [parse_element(K, s) for s in args.avoid_element]
            avoid_i = [parse_ideal(K, s) for s in args.avoid_ideal]
            P = prime_in_class_avoiding(target, avoid_e, avoid_i, m, gamma,
                                        args.max_norm)
            inv.emit(cmd, P, {"target": target, "avoid_elements": avoid_e,
                              "avoid_ideals": avoid_i})
    elif group == "rayclass":
        if verb == "order":
            inv.emit(cmd, hm_order(K, m, args.bound_factor))
        elif verb == "quotient":
            Q = quotient_group(m, gamma)
            inv.emit(cmd, {"order": Q.order, "representatives": Q.classes})
        elif verb == "fp":
            P = _parse_prime(K, args.prime)
            f, t = prime_class_order(P, quotient_group(m, gamma))
            inv.emit(cmd, {"f": f, "t": t}, {"prime": P})
        elif verb == "rightlcm":
            inv.emit(cmd, is_right_lcm(m, gamma))
    elif group == "prim":
        window = _parse_window(inv, args.window, args.vmax)
        winspec = {"window": [P.ideal.spec() for P in window.primes]}
        if verb == "order":
            A = _parse_subset(window, inv, args.a)
            B = _parse_subset(window, inv, args.b)
            inv.emit(cmd, ideal_leq(A, B),
                     dict(winspec, a=A, b=B))
        elif verb == "closure":
            A = _parse_subset(window, inv, getattr(args, "set"))
            cl = sorted(closure_of(A), key=lambda D: sorted(
                P.ideal.spec() for P in D.members))
            inv.emit(cmd, cl, dict(winspec, set=A))
        elif verb == "extremal":
            mx, mins = extremal_ideals(window)
            inv.emit(cmd, {"maximal": mx, "minimals": mins}, winspec)
        elif verb == "defect":
            P = _parse_prime(K, args.prime)
            t, count, reps = boundary_defect_data(window, P)
            inv.emit(cmd, {"t": t, "coset_count": count,
                           "representatives": reps},
                     dict(winspec, prime=P))
    elif group == "orbit":
        window = _parse_window(inv, args.window, args.vmax)
        x = _parse_point(window, inv, args.x)
        y = _parse_point(window, inv, args.y)
        ok, moves = orbit_reach_check(x, y, args.budget)
        inv.emit(cmd, {"reached": ok, "moves": moves},
                 {"window": [P.ideal.spec() for P in window.primes],
                  "x": x, "y": y, "budget": args.budget})
    elif group == "functor":
        P1 = MonoidDescriptor(K, m, gamma)
        if verb in ("leq", "include"):
            m2 = parse_modulus(K, args.modulus2)
            g2 = parse_gamma(m2, args.gamma2)
            P2 = MonoidDescriptor(K, m2, g2)
            if verb == "leq":
                inv.emit(cmd, leq_pairs(P1, P2),
                         {"modulus2": m2.spec(), "gamma2": g2.spec_hint})
            else:
                ok, witness = monoid_inclusion_check(P1, P2, args.bound)
                inv.emit(cmd, {"included": ok, "counterexample": witness},
                         {"modulus2": m2.spec(), "gamma2": g2.spec_hint})
        elif verb == "induce":
            K2 = parse_field(args.field2)
            m2 = induced_modulus(K2, m)
            inv.emit(cmd, m2.spec(), {"field2": K2.spec()})
        elif verb == "fieldinc":
            K2 = parse_field(args.field2)
            m2 = parse_modulus(K2, args.modulus2)
            g2 = parse_gamma(m2, args.gamma2)
            P2 = MonoidDescriptor(K2, m2, g2)
            ok, witness = field_inclusion_check(P1, P2, args.bound)
            inv.emit(cmd, {"included": ok, "counterexample": witness},
                     {"field2": K2.spec(), "modulus2": m2.spec(),
                      "gamma2": g2.spec_hint})
        elif verb == "raypos":
            kind, x = ray_positivity_detect(args.embedding, m, args.bound)
            inv.emit(cmd, {"kind": kind, "witness": x},
                     {"embedding": args.embedding})
    else:
        raise SpecParseError(f"unknown command {group} {verb}")


def _relation_samples(m, gamma, count: int):
    """Deterministic small sample of elements and ideals for the checker."""
    from .ideals import integral_ideals_up_to
    K = m.field
    scalars = enumerate_monoid(m, gamma, 40)[: max(2, count)]
    translations = [K.element(i) for i in range(max(2, count))]
    elements = [SemigroupElement(m, gamma, b, a)
                for b in translations for a in scalars][: count * count]
    ideals = []
    for I in integral_ideals_up_to(K, 16, avoid=m.support()):
        ideals.append(ConstructibleIdeal(m, gamma, K.zero, I))
        if len(ideals) >= count:
            break
    return elements, ideals


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        inv = Invocation(args)
        _dispatch(inv)
        return 0
    except (SearchBoundExceededError, FactorBoundExceededError,
            ScaleExceededError) as e:
        print(f"bound exhausted: {e}", file=sys.stderr)
        return 3
    except (SpecParseError, PreconditionError) as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return 2
    except CongmonError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except Exception as e:  # no stack traces for users
        print(f"internal error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

"""Command-line entry point: ``krasnerkit <group> [<action>] --field JSON ...``.

Every run prints one JSON report.  Exit status is 0 when all checks pass,
1 when a checked property fails and 2 on usage, budget or precision errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from . import arith, ee, krasner
from .errors import KrasnerError
from .extensions import MonicVector, count_classes
from .fields import FieldDescriptor, FieldElement, is_square, padic_val
from .padic import hensel_lift_root, rational_valuation
from .poly import Poly


class UsageError(Exception):
    pass


def _json_arg(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"not valid JSON: {text!r}") from exc


def _field(args) -> FieldDescriptor:
    if args.field is None:
        raise UsageError("--field is required")
    return FieldDescriptor.from_json(_json_arg(args.field))


def _scalar(K: FieldDescriptor, text: str) -> FieldElement:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        obj = text
    return K.decode(obj)


def _vector(K: FieldDescriptor, text: str) -> tuple:
    obj = _json_arg(text)
    if not isinstance(obj, list):
        raise UsageError(f"expected a JSON list, got {text!r}")
    return tuple(K.decode(x) for x in obj)


def _monic(K, text) -> MonicVector:
    return MonicVector(K, _vector(K, text))


def _load_cover(path: str) -> ee.EtaleCover:
    """A cover JSON file, or a report whose outputs carry one."""
    try:
        with open(path) as fh:
            obj = json.load(fh)
        obj = obj.get("outputs", obj)
        return ee.EtaleCover.from_json(obj.get("cover", obj))
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        raise UsageError(f"cannot read a cover from {path}: {exc}") from exc


def _enc_point(K, pt):
    return None if pt is None else [K.encode(x) for x in pt]


# -- handlers: each returns (field, inputs, outputs, checks, notes) ----------

def run_classify(args, rng):
    K = _field(args)
    res = count_classes(K, args.deg, samples=args.samples, seed=args.seed)
    out = res.to_json()
    return K, {"deg": args.deg, "samples": args.samples}, out, {}, res.precision_notes


def run_krasner(args, rng):
    K = _field(args)
    a = _monic(K, args.poly)
    kd = krasner.build(a, check=not args.no_check)
    inputs = {"poly": a.to_json()}
    if args.action == "build":
        rep = krasner.verify_base_point(kd)
        return K, inputs, kd.to_json(), {"base_point_ok": rep.base_point_ok}, kd.notes
    if args.action == "verify":
        rep = krasner.verify_base_point(kd)
        out = rep.to_json()
        checks = {"base_point_ok": rep.base_point_ok, "jac_invertible": rep.jac_invertible,
                  "jac_equals_pm_disc": rep.jac_equals_pm_disc,
                  "stored_jac_agrees": rep.stored_jac_agrees}
        if K.is_finite:
            chain = krasner.chain_rule_factors(kd)
            out["chain_rule"] = chain.to_json()
            checks["chain_rule_matches"] = chain.matches
        return K, inputs, out, checks, kd.notes
    cover = krasner.krasner_cover(kd)
    out = {"cover": cover.to_json()}
    checks = {"base_point_witness": cover.check_witness(kd.base_point, a.a)}
    if args.point:
        w = _vector(K, args.point)
        trace: list = []
        v = ee.membership_witness(cover, w, trace)
        out["member"] = {"point": _enc_point(K, w), "witness": _enc_point(K, v), "trace": trace}
        if v is not None:
            checks["witness_valid"] = cover.check_witness(v, w)
    return K, inputs, out, checks, kd.notes


def run_ee(args, rng):
    if args.action == "split":
        K = _field(args)
        cover = ee.split_cover(args.n, K)
        return K, {"n": args.n}, {"cover": cover.to_json()}, {}, []
    if not args.cover:
        raise UsageError("--cover is required")
    cover = _load_cover(args.cover)
    K = cover.field
    inputs = {"cover": args.cover}
    if args.action == "image":
        img = sorted(ee.image(cover), key=lambda pt: [x.index() for x in pt])
        return K, inputs, {"image": [_enc_point(K, pt) for pt in img], "size": len(img)}, {}, []
    if args.action == "member":
        if not args.point:
            raise UsageError("--point is required")
        w = _vector(K, args.point)
        trace: list = []
        v = ee.membership_witness(cover, w, trace)
        inputs["point"] = _enc_point(K, w)
        checks = {} if v is None else {"witness_valid": cover.check_witness(v, w)}
        return K, inputs, {"member": v is not None, "witness": _enc_point(K, v),
                           "trace": trace}, checks, []
    if args.action == "intersect":
        if not args.cover2:
            raise UsageError("--cover2 is required")
        other = _load_cover(args.cover2)
        system = ee.intersect(cover, other)
        inputs["cover2"] = args.cover2
        out = {"system": system.to_json()}
        checks = {}
        if args.point:
            w = _vector(K, args.point)
            sols = system.fix(w).solutions()
            out["point"] = _enc_point(K, w)
            out["solutions"] = [_enc_point(K, s) for s in sols]
            if sols:
                m = cover.nvars
                s = sols[0]
                checks["solution_valid"] = (cover.check_witness(s[:m], w)
                                            and other.check_witness(s[m:], w))
        elif K.is_finite:
            pts = sorted(system.projected_image(), key=lambda pt: [x.index() for x in pt])
            out["intersection"] = [_enc_point(K, pt) for pt in pts]
        return K, inputs, out, checks, []
    # transform
    shift = _vector(K, args.shift) if args.shift else tuple(K.zero for _ in range(cover.n))
    scale = _vector(K, args.scale) if args.scale else tuple(K.one for _ in range(cover.n))
    moved = ee.affine_transform(cover, shift, scale)
    inputs.update(shift=_enc_point(K, shift), scale=_enc_point(K, scale))
    return K, inputs, {"cover": moved.to_json()}, {}, []


def run_arith(args, rng):
    act = args.action
    if act == "four-squares":
        n = Fraction(args.n)
        z = arith.four_squares(n)
        return None, {"n": str(n)}, {"squares": [str(x) for x in z]}, \
            {"resums": sum(x * x for x in z) == n}, []
    if act == "sopn":
        chain = [Fraction(str(x)) for x in _json_arg(args.chain)]
        rep = arith.sopn_check(chain, cyclic=args.cyclic)
        checks = {"witnesses_valid": all(
            sum(z * z for z in e["witness"]) == e["arg"] for e in rep.pairs if e["holds"])}
        if args.cyclic:
            checks["cycle_refuted"] = rep.refuted and rep.telescoped < 0
        return None, {"chain": [str(x) for x in chain], "cyclic": args.cyclic}, rep.to_json(), checks, []
    K = _field(args)
    if act == "power-index":
        t = arith.power_subgroup_index(K, args.m)
        return K, {"m": args.m}, t.to_json(), {"index_matches_gcd": t.matches}, []
    if act == "as-index":
        t = arith.artin_schreier_index(K)
        return K, {}, t.to_json(), {"index_matches_char": t.matches}, []
    if act == "coset-sum":
        rep = arith.coset_sum_covers(K, args.m)
        return K, {"m": args.m}, rep.to_json(), {}, []
    if act == "conic":
        a, b = _scalar(K, args.a), _scalar(K, args.b)
        c, d = arith.conic_solve(K, a, b)
        valid = a * c * c + b * d * d == K.one
        return K, {"a": K.encode(a), "b": K.encode(b)}, \
            {"c": K.encode(c), "d": K.encode(d), "valid": valid}, {"valid": valid}, []
    if act == "power-sum":
        a, b = _scalar(K, args.a), _scalar(K, args.b)
        sol = arith.power_sum_solve(K, args.m, a, b, nonzero=args.nonzero)
        inputs = {"m": args.m, "a": K.encode(a), "b": K.encode(b), "nonzero": args.nonzero}
        if sol is None:
            return K, inputs, {"solution": None}, {}, []
        c, e = sol
        valid = c**args.m + a * e**args.m == b
        return K, inputs, {"solution": [K.encode(c), K.encode(e)], "valid": valid}, {"valid": valid}, []
    # krasner-vadic
    a = _monic(K, args.poly)
    rep = arith.krasner_vadic_check(a, args.radius, args.samples, seed=args.seed)
    return K, {"poly": a.to_json(), "radius": args.radius, "samples": args.samples}, \
        rep.to_json(), {"all_equiv": rep.all_pass}, rep.precision_notes


def run_padic(args, rng):
    K = _field(args)
    act = args.action
    if act == "val":
        x = _scalar(K, args.x)
        v = padic_val(x, K.p if K.kind != "Q" else args.p)
        return K, {"x": K.encode(x)}, {"valuation": "inf" if v == float("inf") else v}, {}, []
    if act == "is-square":
        x = _scalar(K, args.x)
        return K, {"x": K.encode(x)}, {"is_square": is_square(x)}, {}, []
    f = Poly(K, list(_vector(K, args.poly)))
    x0 = _scalar(K, args.x0)
    trace: list = []
    root = hensel_lift_root(f, x0, args.target, trace)
    r = K(root)
    # exact residual on the representatives; p-adic evaluation would cancel
    rep = root.to_fraction()
    residual = sum((c.value.to_fraction() * rep**i for i, c in enumerate(f.coeffs)), Fraction(0))
    ok = rational_valuation(residual, K.p) >= args.target
    return K, {"poly": [K.encode(c) for c in f.coeffs], "x0": K.encode(x0), "target": args.target}, \
        {"root": K.encode(r), "trace": trace}, {"residual_small": ok}, []


# ---------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--field", help="field descriptor as JSON, e.g. '{\"kind\":\"Fp\",\"p\":5}'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-", help="output path, '-' for stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="krasnerkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="group", required=True)

    p = sub.add_parser("classify", help="count isomorphism classes of degree-n algebras")
    _common(p)
    p.add_argument("--deg", type=int, required=True)
    p.add_argument("--exhaustive", action="store_true", help="finite fields are always exhaustive")
    p.add_argument("--samples", type=int, default=None)
    p.set_defaults(run=run_classify)

    p = sub.add_parser("krasner", help="the Krasner map G")
    p.add_argument("action", choices=["build", "verify", "cover"])
    _common(p)
    p.add_argument("--poly", required=True, help="[a_0, ..., a_{n-1}] as JSON")
    p.add_argument("--point", help="with 'cover': search a preimage of this point")
    p.add_argument("--no-check", action="store_true", help="skip the separable-irreducible test")
    p.set_defaults(run=run_krasner)

    p = sub.add_parser("ee", help="EE sets as étale covers")
    p.add_argument("action", choices=["image", "member", "intersect", "transform", "split"])
    _common(p)
    p.add_argument("--cover")
    p.add_argument("--cover2")
    p.add_argument("--point")
    p.add_argument("--shift")
    p.add_argument("--scale")
    p.add_argument("--n", type=int, default=2)
    p.set_defaults(run=run_ee)

    p = sub.add_parser("arith", help="arithmetic checks")
    p.add_argument("action", choices=["power-index", "as-index", "coset-sum", "conic",
                                      "power-sum", "four-squares", "sopn", "krasner-vadic"])
    _common(p)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--n", default="0")
    p.add_argument("--chain")
    p.add_argument("--cyclic", action="store_true")
    p.add_argument("--nonzero", action="store_true")
    p.add_argument("--poly")
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(run=run_arith)

    p = sub.add_parser("padic", help="p-adic utilities")
    p.add_argument("action", choices=["val", "is-square", "hensel"])
    _common(p)
    p.add_argument("--x")
    p.add_argument("--p", type=int, help="prime for valuations of rationals")
    p.add_argument("--poly")
    p.add_argument("--x0")
    p.add_argument("--target", type=int, default=10)
    p.set_defaults(run=run_padic)
    return parser


def _required(args):
    need = {("arith", "conic"): ["a", "b"], ("arith", "power-sum"): ["a", "b"],
            ("arith", "sopn"): ["chain"], ("arith", "krasner-vadic"): ["poly"],
            ("padic", "val"): ["x"], ("padic", "is-square"): ["x"],
            ("padic", "hensel"): ["poly", "x0"]}
    for name in need.get((args.group, getattr(args, "action", None)), []):
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required")


def dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    argv = list(sys.argv[1:] if argv is None else argv)
    rng = random.Random(args.seed)
    start = time.perf_counter()
    try:
        _required(args)
        K, inputs, outputs, checks, notes = args.run(args, rng)
    except (UsageError, ValueError, TypeError, KrasnerError) as exc:
        # property failures are reported through checks; anything raised is a
        # usage, budget or precision problem
        err = {"command": argv, "error": type(exc).__name__, "message": str(exc),
               "seed": args.seed}
        print(json.dumps(err), file=sys.stderr)
        return 2
    report = {
        "command": argv,
        "field": None if K is None else K.to_json(),
        "inputs": inputs,
        "outputs": outputs,
        "checks": checks,
        "precision_notes": list(notes),
        "seed": args.seed,
        "wall_time": round(time.perf_counter() - start, 6),
    }
    text = json.dumps(report, indent=2, default=str)
    if args.out == "-":
        print(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return 0 if all(checks.values()) else 1


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()

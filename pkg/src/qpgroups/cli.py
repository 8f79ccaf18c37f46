"""Command line interface: ``qpgroups <area> <command> [args]``, JSON on stdout.

Exit status 0 on success, 2 on usage or input errors, 1 when the library
rejects the input (the error object carries a stable ``code``).
"""

import argparse
import ast
import json
import os
import sys
from fractions import Fraction

from . import elliptic as ell
from . import formal, groups, tate
from .errors import DomainError, QpError
from .finite_abelian import FiniteAbelian, torsion_split
from .padic import (PadicContext, angular_component, format_padic, format_padic_compact,
                    is_nth_power, parse_padic, square_class, vp_fraction)
from .presburger import (cell_from_json, cells_to_json, decompose, free_vars, parse,
                         recognize_subgroup, to_text)

DEFAULT_PRECISION = 20


class UsageError(Exception):
    pass


def default_precision():
    raw = os.environ.get("PADIC_DEFAULT_PREC")
    if raw is None:
        return DEFAULT_PRECISION
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"PADIC_DEFAULT_PREC must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError("PADIC_DEFAULT_PREC must be positive")
    return value


# -- input helpers ----------------------------------------------------------------

def _context(args, obj=None):
    obj = obj or {}
    p = args.p if args.p is not None else obj.get("p")
    if p is None:
        raise UsageError("a prime is required (--p or \"p\" in the input)")
    prec = args.prec if args.prec is not None else obj.get("precision")
    return PadicContext(int(p), int(prec) if prec is not None else default_precision())


def _payload(args):
    """The JSON input: the positional argument, or the file named by --in."""
    if args.input is not None:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    elif getattr(args, "json", None) is not None:
        text = args.json
    else:
        raise UsageError("missing JSON input (positional argument or --in FILE)")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON input: {exc.msg}") from None


def _require(obj, *keys):
    if not isinstance(obj, dict):
        raise UsageError("the JSON input must be an object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise UsageError(f"missing field(s) in input: {', '.join(missing)}")


def _number(text, ctx):
    return parse_padic(str(text), ctx)


def _padic_json(x):
    if x.is_zero:
        return {"value": "0", "valuation": None}
    return {"value": format_padic(x), "compact": format_padic_compact(x),
            "valuation": x.valuation, "unit": x.unit}


_BINOPS = {ast.Add: lambda a, b: a + b, ast.Sub: lambda a, b: a - b,
           ast.Mult: lambda a, b: a * b, ast.Div: lambda a, b: a / b}


def _eval_expression(text, ctx):
    """Arithmetic on integers with + - * / and integer powers, evaluated in Q_p."""
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError:
        return _number(text, ctx)

    def ev(node):
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return ctx(node.value)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Pow):
            e = node.right
            if isinstance(e, ast.UnaryOp) and isinstance(e.op, ast.USub):
                e, sign = e.operand, -1
            else:
                sign = 1
            if not (isinstance(e, ast.Constant) and isinstance(e.value, int)):
                raise UsageError("exponents must be integer literals")
            return ev(node.left) ** (sign * e.value)
        raise UsageError(f"unsupported expression element: {ast.dump(node)[:40]}")

    try:
        return ev(tree.body)
    except UsageError:
        return _number(text, ctx)


# -- padic -------------------------------------------------------------------------

def cmd_padic_eval(args):
    ctx = _context(args)
    return _padic_json(_eval_expression(args.expr, ctx))


def cmd_padic_class(args):
    ctx = _context(args)
    x = _eval_expression(args.expr, ctx)
    if x.is_zero:
        raise DomainError("zero has no square class or angular component")
    out = {"square_class": square_class(x), "valuation": x.valuation,
           "ac": format_padic(angular_component(x))}
    if args.n is not None:
        ok, root = is_nth_power(x, args.n)
        out["nth_power"] = {"n": args.n, "is_power": ok,
                            "root": format_padic(root) if ok and root is not None else None}
    return out


# -- presburger ---------------------------------------------------------------------

def cmd_presburger_parse(args):
    f = parse(args.formula)
    return {"formula": to_text(f), "free": sorted(free_vars(f))}


def cmd_presburger_decompose(args):
    return cells_to_json(decompose(args.formula, var=args.var))


def cmd_presburger_subgroup(args):
    text = args.cells.strip()
    if text.startswith("["):
        try:
            cells = [cell_from_json(c) for c in json.loads(text)]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise UsageError(f"invalid cell list: {exc}") from None
    else:
        cells = decompose(text)
    result = recognize_subgroup(cells)
    if isinstance(result, int):
        return {"group": True, "n": result}
    return result.to_json()


# -- group ----------------------------------------------------------------------------

def _descriptor(obj, args):
    _require(obj, "family")
    raw = dict(obj)
    ctx = _context(args, raw)
    raw["p"], raw["precision"] = ctx.prime, ctx.precision
    return groups.GroupDescriptor.from_json(raw)


def cmd_group_check(args):
    obj = _payload(args)
    _require(obj, "group", "element")
    desc = _descriptor(obj["group"], args)
    member = groups.contains(desc, obj["element"])
    out = {"group": desc.to_json(), "member": member}
    if member:
        out["element"] = groups.element(desc, obj["element"]).payload_json()
    return out


def cmd_group_op(args):
    obj = _payload(args)
    _require(obj, "group", "elements")
    desc = _descriptor(obj["group"], args)
    elems = [groups.element(desc, e) for e in obj["elements"]]
    if not elems:
        raise UsageError("need at least one element")
    acc = elems[0]
    for g in elems[1:]:
        acc = groups.group_op(acc, g)
    return {"group": desc.to_json(), "product": acc.payload_json(),
            "inverse": groups.inverse(acc).payload_json()}


def cmd_group_index(args):
    obj = _payload(args)
    _require(obj, "group", "alpha", "beta")
    desc = _descriptor(obj["group"], args)
    alpha, beta = int(obj["alpha"]), int(obj["beta"])
    return {"group": desc.to_json(), "alpha": alpha, "beta": beta,
            "index": groups.filtration_index(desc, alpha, beta)}


def cmd_group_split(args):
    obj = _payload(args)
    _require(obj, "orders", "subgroup")
    G = FiniteAbelian(obj["orders"])
    gens = [G.element(g) for g in obj["subgroup"]]
    result = torsion_split(G, gens)
    out = result.to_json()
    out["orders"] = list(G.orders)
    return out


# -- curve ----------------------------------------------------------------------------

def _curve(obj, args):
    _require(obj, "a")
    ctx = _context(args, obj)
    return ell.WeierstrassCurve.from_json(obj, ctx)


def _point(curve, obj, key):
    _require(obj, key)
    return ell.point_from_json(curve, obj[key])


def cmd_curve_invariants(args):
    E = _curve(_payload(args), args)
    inv = E.exact_invariants
    out = {k: str(inv[k]) for k in sorted(inv)}
    out["v_disc"] = E.discriminant.valuation
    j = inv["j"]
    out["v_j"] = None if j == 0 else vp_fraction(j, E.prime)
    return {"curve": E.to_json(), "invariants": out}


def cmd_curve_add(args):
    obj = _payload(args)
    E = _curve(obj, args)
    P, Q = _point(E, obj, "P"), _point(E, obj, "Q")
    return {"curve": E.to_json(), "sum": ell.add_points(E, P, Q).to_json()}


def cmd_curve_transform(args):
    obj = _payload(args)
    E = _curve(obj, args)
    _require(obj, "u")
    u = Fraction(str(obj["u"]))
    r, s, t = (Fraction(str(obj.get(k, 0))) for k in ("r", "s", "t"))
    E2, T = ell.change_of_variables(E, u, r, s, t)
    out = {"curve": E2.to_json(), "transform": T.to_json(E.context)}
    if "P" in obj:
        out["P"] = ell.transport(E, T, _point(E, obj, "P")).to_json()
    return out


def cmd_curve_minimal(args):
    E = _curve(_payload(args), args)
    M, T = ell.minimal_model(E)
    return {"curve": M.to_json(), "transform": T.to_json(E.context),
            "v_disc": M.discriminant.valuation}


def cmd_curve_classify(args):
    obj = _payload(args)
    E = _curve(obj, args)
    if obj.get("minimize"):
        E, _ = ell.minimal_model(E)
    return ell.classify_reduction(E).to_json()


def cmd_curve_filtration(args):
    obj = _payload(args)
    E = _curve(obj, args)
    return ell.filtration_membership(E, _point(E, obj, "P")).to_json()


def cmd_curve_reduce(args):
    obj = _payload(args)
    E = _curve(obj, args)
    image = ell.reduction_map(E, _point(E, obj, "P"))
    return {"image": "O" if image is None else list(image)}


# -- iso --------------------------------------------------------------------------------

def cmd_iso_exp(args):
    ctx = _context(args)
    z = _eval_expression(args.value, ctx)
    f = formal.power_of_base if args.base else formal.exp_one_units
    return _padic_json(f(z))


def cmd_iso_log(args):
    ctx = _context(args)
    u = _eval_expression(args.value, ctx)
    f = formal.log_base if args.base else formal.log_one_units
    return _padic_json(f(u))


def cmd_iso_elog(args):
    obj = _payload(args)
    E = _curve(obj, args)
    return _padic_json(formal.elliptic_log(E, _point(E, obj, "P")))


def cmd_iso_eexp(args):
    obj = _payload(args)
    E = _curve(obj, args)
    _require(obj, "z")
    return {"point": formal.elliptic_exp(E, _number(obj["z"], E.context)).to_json()}


def cmd_iso_tlog(args):
    ctx = _context(args)
    d = _eval_expression(args.d, ctx)
    x, y = _eval_expression(args.x, ctx), _eval_expression(args.y, ctx)
    if (x * x - d * y * y - 1).valuation < ctx.precision:
        raise DomainError("(x, y) does not satisfy x^2 - d y^2 = 1")
    return _padic_json(formal.torus_log(d, (x, y)))


# -- tate --------------------------------------------------------------------------------

def _tate(args):
    ctx = _context(args)
    return tate.TateCurve(_eval_expression(args.q, ctx))


def cmd_tate_coeffs(args):
    tc = _tate(args)
    a = tc.curve.a
    return {"q": format_padic(tc.q), "m": tc.m, "a4": format_padic(a[3]),
            "a6": format_padic(a[4]), "v_j": tc.curve.j.valuation}


def cmd_tate_uniformize(args):
    tc = _tate(args)
    u = _eval_expression(args.u, tc.context)
    return {"point": tate.uniformize(tc, u).to_json(), "level": u.valuation % tc.m}


def cmd_tate_coset(args):
    tc = _tate(args)
    try:
        obj = json.loads(args.point)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid point: {exc.msg}") from None
    P = ell.point_from_json(tc.curve, obj)
    return {"level": tate.coset_level(tc, P), "m": tc.m}


# -- catalog -------------------------------------------------------------------------------

def catalog(p):
    a_min = 2 if p == 2 else 1
    return [
        {"item": 1, "name": "(Q_p, +)", "family": "AdditiveQp", "params": {}},
        {"item": 2, "name": "(Z_p, +)", "family": "AdditiveDalpha",
         "params": {"alpha": "integer; D_alpha = p^alpha Z_p is isomorphic to Z_p"}},
        {"item": 3, "name": "((Q_p^x)^n, *)", "family": "PowersOfUnits",
         "params": {"n": "integer >= 1"}},
        {"item": 4, "name": "(U_alpha, *)", "family": "Ualpha",
         "params": {"alpha": f"integer >= {a_min}"}},
        {"item": 5, "name": "O(a)^n / <a^n>", "family": "LatticeQuotient",
         "params": {"a": "p-adic literal with v(a) >= 1", "n": "integer >= 1"}},
        {"item": 6, "name": "F_alpha", "family": "TorusFalpha",
         "params": {"d": "non-square with v(d) >= 0", "alpha": f"integer >= {a_min}"}},
        {"item": 7, "name": "E_{1,alpha}", "family": "EllipticE1alpha",
         "params": {"curve": "integral Weierstrass coefficients a1 a2 a3 a4 a6",
                    "alpha": f"integer >= {a_min}"}},
        {"item": 8, "name": "O_E(b)^n / <b^n>", "family": "TateLatticeQuotient",
         "params": {"q": "Tate parameter with v(q) >= 1", "b": "element with v(b) >= 1",
                    "n": "integer >= 1"}},
    ]


def cmd_catalog_list(args):
    if args.p is None:
        raise UsageError("catalog list needs --p")
    PadicContext(args.p, 1)  # validates the prime
    return catalog(args.p)


# -- parser ----------------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="the prime p")
    common.add_argument("--prec", type=int, help="digits of precision "
                        "(default: $PADIC_DEFAULT_PREC or 20)")
    common.add_argument("--in", dest="input", metavar="FILE", help="read JSON input from FILE")
    common.add_argument("--pretty", action="store_true", help="indent the JSON output")

    parser = argparse.ArgumentParser(prog="qpgroups",
                                     description="Computations with groups definable in Q_p.")
    areas = parser.add_subparsers(dest="area", required=True)

    def sub(area, name, func, help_text):
        sp = area.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        return sp

    def group(name, help_text):
        return areas.add_parser(name, help=help_text).add_subparsers(dest="command",
                                                                     required=True)

    a = group("padic", "p-adic numbers")
    sp = sub(a, "eval", cmd_padic_eval, "evaluate an expression or literal in Q_p")
    sp.add_argument("expr")
    sp = sub(a, "class", cmd_padic_class, "square class, valuation and angular component")
    sp.add_argument("expr")
    sp.add_argument("--n", type=int, help="also decide whether the value is an n-th power")

    a = group("presburger", "Presburger formulas in one variable")
    sp = sub(a, "parse", cmd_presburger_parse, "parse and print a formula")
    sp.add_argument("formula")
    sp = sub(a, "decompose", cmd_presburger_decompose, "cell decomposition")
    sp.add_argument("formula")
    sp.add_argument("--var", help="the free variable (default: the only one)")
    sp = sub(a, "subgroup", cmd_presburger_subgroup,
             "decide whether a cell list or formula defines a subgroup nZ")
    sp.add_argument("cells", help="JSON cell list or a formula")

    a = group("group", "catalog groups and finite splitting")
    for name, func, text in (("check", cmd_group_check, "membership of an element"),
                             ("op", cmd_group_op, "product of elements"),
                             ("index", cmd_group_index, "filtration index [alpha : beta]"),
                             ("split", cmd_group_split, "does K split off G")):
        sp = sub(a, name, func, text)
        sp.add_argument("json", nargs="?")

    a = group("curve", "elliptic curves over Q_p")
    for name, func, text in (("invariants", cmd_curve_invariants, "b/c invariants, disc, j"),
                             ("add", cmd_curve_add, "P + Q"),
                             ("transform", cmd_curve_transform, "change of variables"),
                             ("minimal", cmd_curve_minimal, "minimal model"),
                             ("classify", cmd_curve_classify, "reduction type"),
                             ("filtration", cmd_curve_filtration, "E / E0 / E1 level of P"),
                             ("reduce", cmd_curve_reduce, "reduction of P mod p")):
        sp = sub(a, name, func, text)
        sp.add_argument("json", nargs="?")

    a = group("iso", "explicit isomorphisms with additive groups")
    sp = sub(a, "exp", cmd_iso_exp, "exponential of z with v(z) >= 1")
    sp.add_argument("value")
    sp.add_argument("--base", action="store_true", help="z -> (1+p)^z instead")
    sp = sub(a, "log", cmd_iso_log, "logarithm of a one-unit")
    sp.add_argument("value")
    sp.add_argument("--base", action="store_true", help="inverse of z -> (1+p)^z instead")
    sp = sub(a, "elog", cmd_iso_elog, "formal logarithm of a point of E_1")
    sp.add_argument("json", nargs="?")
    sp = sub(a, "eexp", cmd_iso_eexp, "point of E_1 with given logarithm")
    sp.add_argument("json", nargs="?")
    sp = sub(a, "tlog", cmd_iso_tlog, "logarithm on the twisted torus")
    sp.add_argument("--d", required=True)
    sp.add_argument("x")
    sp.add_argument("y")

    a = group("tate", "Tate curves")
    sp = sub(a, "coeffs", cmd_tate_coeffs, "a4(q) and a6(q)")
    sp.add_argument("--q", required=True)
    sp = sub(a, "uniformize", cmd_tate_uniformize, "the point phi(u)")
    sp.add_argument("--q", required=True)
    sp.add_argument("--u", required=True)
    sp = sub(a, "coset", cmd_tate_coset, "image of a point in E/E0 = Z/m")
    sp.add_argument("--q", required=True)
    sp.add_argument("--point", required=True, help='JSON ["x", "y"] or "O"')

    a = group("catalog", "the classification list")
    sub(a, "list", cmd_catalog_list, "the eight families with their parameters")
    return parser


def _emit(obj, pretty, stream):
    text = json.dumps(obj, sort_keys=True, indent=2 if pretty else None,
                      separators=None if pretty else (",", ":"), ensure_ascii=False)
    stream.write(text + "\n")


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        result = args.func(args)
    except UsageError as exc:
        _emit({"error": "usage", "message": str(exc)}, False, stderr)
        return 2
    except QpError as exc:
        _emit({"error": exc.code, "message": str(exc)}, False, stderr)
        return 1
    _emit(result, args.pretty, stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""``hypjac`` command line.

Exit codes: 0 all checks pass, 1 a check failed, 2 inconclusive or a window
refusal, 64 usage error.
"""
import argparse
import csv
import io
import json
import sys
from fractions import Fraction

import mpmath

from . import derham, flows, mumford, qseries, reduce, symplectic, verify
from .errors import (
    DegenerateDivisor,
    GenusMismatch,
    HypJacError,
    InvalidParameter,
    OffCurve,
    ParseError,
    StructuralError,
    WindowTooSmall,
)
from .polyring import GenId, Poly, TOKEN_HELP, parse_poly, ring

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 64
SCHEMA = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _jsonable(x):
    if isinstance(x, qseries.QSeries):
        return {"trunc": x.trunc, "terms": x.report_terms()}
    if isinstance(x, Poly):
        return x.to_text()
    if isinstance(x, GenId):
        return x.token
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (mpmath.mpf, mpmath.mpc)):
        return mpmath.nstr(x, 30)
    if isinstance(x, dict):
        return {_key(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _key(k):
    if isinstance(k, GenId):
        return k.token
    if isinstance(k, tuple):
        return ",".join(str(v) for v in k)
    return str(k)


def _window(text):
    try:
        lo, hi = (int(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like lo:hi, got {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError("window needs lo <= hi")
    return lo, hi


def _rationals(text):
    try:
        return [Fraction(v.strip()) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}")


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


# --- subcommands; each returns (report, exit code) ---

def cmd_char(a):
    ch_a, ch_f, ch_a0 = qseries.ring_characters(a.g, a.trunc)
    ident = (ch_a0 * ch_f) == ch_a
    rep = {"ch_A": ch_a, "ch_F": ch_f, "ch_A0": ch_a0, "product_identity": ident}
    if a.k is not None:
        ch_c, chi, r_k, w_k = qseries.complex_characters(a.g, a.k, a.trunc)
        rep.update({"k": a.k, "ch_C0": ch_c, "chi_q": chi, "R_k": r_k, "ch_W": w_k})
    rep["euler_limit"] = qseries.euler_limit(a.g)
    rep["telescoping"] = qseries.telescoping_check(a.g, a.trunc)
    ok = ident and all(rep["telescoping"].values())
    return rep, EXIT_OK if ok else EXIT_FAIL


def cmd_basis(a):
    R = ring(a.g)
    rows = []
    for d, count, ch in reduce.character_match(a.g, a.max_deg2):
        rows.append({
            "deg2": d,
            "count": count,
            "ch_A0": ch,
            "monomials": [Poly(R, {m: 1}).to_text() for m in reduce.basis_enum(a.g, d)],
        })
    ok = all(r["count"] == r["ch_A0"] for r in rows)
    return {"rows": rows, "match": ok}, EXIT_OK if ok else EXIT_FAIL


def cmd_nf(a):
    x = parse_poly(a.expr, a.g)
    system = reduce.build_reduction_system(a.g, a.f0)
    nf = reduce.normal_form(x, system)
    return {
        "input": x.to_text(),
        "f0": [str(v) for v in system.f0],
        "normal_form": nf.to_text(),
        "poly": nf.to_json(),
        "is_normal": reduce.is_normal(nf),
    }, EXIT_OK


def cmd_mumford(a):
    if a.curve is not None:
        curve = mumford.Curve(a.g, tuple(a.curve))
    else:
        curve = mumford.Curve.degenerate(a.g)
    if a.points is not None:
        pts = []
        for item in a.points.split(","):
            try:
                z, y = item.split(":")
                pts.append((Fraction(z), Fraction(y)))
            except ValueError:
                raise InvalidParameter(f"points must look like z:y,z:y; got {item!r}")
        t = mumford.divisor_to_triple(pts, curve, prec=a.prec)
        return {"curve": curve.to_json(), "triple": t.to_json(), "satisfies": t.satisfies(curve)}, EXIT_OK
    if a.triple is not None:
        try:
            t = mumford.MumfordTriple.from_json(json.loads(a.triple))
        except (ValueError, KeyError, TypeError) as exc:
            raise InvalidParameter(f"bad triple JSON: {exc}")
        div = mumford.triple_to_divisor(t, curve, prec=a.prec)
        return {"curve": curve.to_json(), "divisor": div.to_json()}, EXIT_OK
    res = verify.check_mumford(a.g, seed=a.seed, cases=a.random)
    return res, EXIT_OK if res["status"] == "pass" else EXIT_FAIL


def cmd_flows(a):
    fam = flows.closed_form_flows(a.g)
    system = reduce.build_reduction_system(a.g)
    images = {}
    for i in range(1, a.g + 1):
        images[f"D{i}"] = {
            x.token: {"raw": p.to_text(), "normal_form": reduce.normal_form(p, system).to_text()}
            for x, p in fam[i].images.items()
        }
    rep = {"flows": images}
    code = EXIT_OK
    if a.verify:
        v = flows.verify_flows(a.g)
        rep["verification"] = v
        rep["epsilon"] = v["epsilon"]
        code = EXIT_OK if v["pass"] else EXIT_FAIL
    return rep, code


def cmd_cohomology(a):
    res = derham.cohomology_dims(a.g, a.window)
    chi, euler_ok = derham.euler_from_ranks(a.g, result=res)
    res["euler_from_ranks"] = chi
    res["euler_matches"] = euler_ok
    if res["restricted"]:
        res["note"] = "restricted-window evidence only"
    ok = res["matches_prediction"] and res["guard_band_zero"] and euler_ok
    return res, EXIT_OK if ok else EXIT_FAIL


def cmd_descend(a):
    x = parse_poly(a.expr, a.g)
    terms, residual = derham.descend(x, a.g)
    R = ring(a.g)
    out = []
    for mu, h, c in terms:
        op = "*".join(f"D{j}^{e}" if e > 1 else f"D{j}" for j, e in enumerate(mu, 1) if e) or "1"
        out.append({"operator": op, "rep": h.to_text(), "coeff": str(c)})
    ok = residual.is_zero()
    return {"input": x.to_text(), "terms": out, "residual": residual.to_text() if residual else R.zero().to_text(),
            "exact": ok}, EXIT_OK if ok else EXIT_FAIL


def cmd_symplectic(a):
    ks = [a.k] if a.k is not None else list(range(0, a.g + 1))
    rows = []
    ok = True
    inconclusive = False
    for k in ks:
        if k < 0 or k > 2 * a.g:
            raise InvalidParameter(f"k must lie in 0..{2 * a.g}")
        dim, ch, rep = symplectic.wk_dims_and_characters(a.g, k, a.trunc)
        row = {"k": k, "dim_W": dim, "ch_W": ch, "ker_phi": symplectic.ker_phi_dim(a.g, k)}
        row.update({key: rep[key] for key in rep if key.endswith("matches")})
        ok = ok and rep["dim_matches"] and rep.get("character_matches", True)
        if 1 <= k <= a.g and a.g <= 3:
            iso = symplectic.isotropic_span_check(a.g, k, seed=a.seed)
            row["isotropic_span"] = iso
            ok = ok and iso["status"] != "fail"
            inconclusive = inconclusive or iso["status"] == "inconclusive"
        rows.append(row)
    rep = {"rows": rows, "generic_abelian": symplectic.generic_abelian_dims(a.g)}
    code = EXIT_FAIL if not ok else EXIT_INCONCLUSIVE if inconclusive else EXIT_OK
    return rep, code


def cmd_resolution(a):
    rep = symplectic.koszul_check(a.g, a.window)
    return rep, EXIT_OK if rep["pass"] else EXIT_FAIL


def cmd_verify_all(a):
    rep = verify.verify_all(a.g, seed=a.seed)
    code = {"pass": EXIT_OK, "fail": EXIT_FAIL, "inconclusive": EXIT_INCONCLUSIVE}[rep["status"]]
    return rep, code


# --- parser ---

def build_parser():
    p = _Parser(prog="hypjac", description="Exact checks on affine hyperelliptic Jacobians.",
                epilog=TOKEN_HELP)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, epilog=TOKEN_HELP)
        sp.add_argument("--g", type=_positive, required=True, help="genus")
        sp.add_argument("--output", choices=("json", "csv", "text"), default="json")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--trunc", type=_positive, default=qseries.DEFAULT_TRUNC)
        sp.set_defaults(func=fn)
        return sp

    sp = add("char", cmd_char, "ring and complex characters")
    sp.add_argument("--k", type=int)
    sp = add("basis", cmd_basis, "normal-form basis listing against ch_A0")
    sp.add_argument("--max-deg2", type=int, default=12)
    sp = add("nf", cmd_nf, "normal form of an expression")
    sp.add_argument("--f0", type=_rationals)
    sp.add_argument("expr")
    sp = add("mumford", cmd_mumford, "divisor <-> triple conversions")
    sp.add_argument("--curve", type=_rationals, help="f1,...,f(2g+1); default all zero")
    sp.add_argument("--points", help="z:y,z:y,... (exact rationals)")
    sp.add_argument("--triple", help='JSON like {"a":["1"],"b":["-1"],"c":["1","1"]}')
    sp.add_argument("--random", type=_positive, default=100, help="round-trip cases")
    sp.add_argument("--prec", type=_positive, default=mumford.DEFAULT_PREC)
    sp = add("flows", cmd_flows, "commuting flows D_i")
    sp.add_argument("--verify", action="store_true")
    sp = add("cohomology", cmd_cohomology, "cohomology of the de Rham complex")
    sp.add_argument("--window", type=_window)
    sp = add("descend", cmd_descend, "write an element via D-polynomials on H^g representatives")
    sp.add_argument("expr")
    sp = add("symplectic", cmd_symplectic, "W^k, phi_k and isotropic spans")
    sp.add_argument("--k", type=int)
    sp = add("resolution", cmd_resolution, "Koszul resolution checks")
    sp.add_argument("--window", type=_window)
    add("verify-all", cmd_verify_all, "run every check for one genus")
    return p


def _flatten(prefix, x, out):
    if isinstance(x, dict):
        for k in sorted(x):
            _flatten(f"{prefix}.{k}" if prefix else str(k), x[k], out)
    elif isinstance(x, list) and x and all(isinstance(v, dict) for v in x):
        for i, v in enumerate(x):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, json.dumps(x, sort_keys=True) if isinstance(x, (list, dict)) else x))


def render(report, fmt):
    report = _jsonable(report)
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        rows = report.get("rows")
        if isinstance(rows, list) and rows and all(isinstance(r, dict) for r in rows):
            keys = sorted({k for r in rows for k in r})
            w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
            w.writeheader()
            for r in rows:
                w.writerow({k: json.dumps(v, sort_keys=True) if isinstance(v, (list, dict)) else v
                            for k, v in r.items()})
        else:
            flat = []
            _flatten("", report, flat)
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["key", "value"])
            w.writerows(flat)
        return buf.getvalue().rstrip("\n")
    flat = []
    _flatten("", report, flat)
    return "\n".join(f"{k}: {v}" for k, v in flat)


def _glue_negative_values(argv):
    """Let ``--window -2:2`` through: argparse would read -2:2 as an option."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--window", "--f0", "--curve"):
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-"):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(tok)
    return out


def main(argv=None):
    parser = build_parser()
    argv = _glue_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        print(parser.format_usage().rstrip(), file=sys.stderr)
        print(TOKEN_HELP, file=sys.stderr)
        return EXIT_USAGE
    try:
        report, code = args.func(args)
    except WindowTooSmall as exc:
        report = {"error": "window_too_small", "message": str(exc),
                  "needed": list(exc.needed), "given": list(exc.given)}
        code = EXIT_INCONCLUSIVE
    except (ParseError, InvalidParameter, GenusMismatch, OffCurve, DegenerateDivisor) as exc:
        print(f"hypjac: {exc}", file=sys.stderr)
        print(TOKEN_HELP, file=sys.stderr)
        return EXIT_USAGE
    except StructuralError as exc:
        report = {"error": "structural", "message": str(exc)}
        code = EXIT_FAIL
    except HypJacError as exc:
        report = {"error": type(exc).__name__, "message": str(exc)}
        code = EXIT_FAIL
    report = dict(report)
    report["schema"] = SCHEMA
    report["command"] = args.command
    report["g"] = args.g
    print(render(report, args.output))
    return code


if __name__ == "__main__":
    sys.exit(main())

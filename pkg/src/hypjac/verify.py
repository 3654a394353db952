"""Per-genus verification suite behind ``hypjac verify-all``.

Each check returns a dict with a ``status`` of pass, fail, inconclusive or
skipped (outside the genus range the check is meant for).
"""
import random
from math import comb

import mpmath

from . import derham, flows, mumford, qseries, reduce, symplectic
from .errors import HypJacError
from .polyring import Poly, ring


def _status(ok):
    return "pass" if ok else "fail"


def check_characters(g, seed=0):
    ch_a, ch_f, ch_a0 = qseries.ring_characters(g, 40)
    return {"status": _status((ch_a0 * ch_f) == ch_a)}


def check_basis(g, seed=0, dmax=24):
    if g > 3:
        return {"status": "skipped"}
    rows = reduce.character_match(g, dmax)
    bad = [r for r in rows if r[1] != r[2]]
    return {"status": _status(not bad), "degrees": len(rows), "mismatches": bad}


def check_euler(g, seed=0):
    _, chi, _, _ = qseries.complex_characters(g, 0, 40)
    tele = qseries.telescoping_check(g, 40)
    limit = qseries.euler_limit(g)
    ok = all(tele.values()) and chi.value_at_one() == limit
    return {"status": _status(ok), "telescoping": tele, "limit": limit}


def check_flows(g, seed=0):
    if g > 3:
        return {"status": "skipped"}
    rep = flows.verify_flows(g)
    desc = flows.descent_check(g, seed=seed) if g <= 2 else True
    sign, dev = flows.separated_variable_check(g, trials=3, seed=seed)
    ok = rep["pass"] and desc and dev < mpmath.mpf("1e-20")
    return {
        "status": _status(ok),
        "checks": rep["checks"],
        "epsilon": rep["epsilon"],
        "descent": desc,
        "separated_variable_sign": sign,
        "separated_variable_deviation": mpmath.nstr(dev, 5),
    }


def check_cohomology(g, seed=0):
    if g > 3:
        return {"status": "skipped"}
    res = derham.cohomology_dims(g)
    _, euler_ok = derham.euler_from_ranks(g, result=res)
    ok = res["matches_prediction"] and res["guard_band_zero"] and euler_ok
    return {
        "status": _status(ok),
        "dims": res["dims"],
        "window": res["window"],
        "restricted": res["restricted"],
        "euler_matches": euler_ok,
    }


def check_descend(g, seed=0, dmax=12):
    if g > 2:
        return {"status": "skipped"}
    reps = derham.top_representatives(g, dmax)
    R = ring(g)
    count = 0
    for d in range(dmax + 1):
        for m in reduce.basis_enum(g, d):
            _, res = derham.descend(Poly(R, {m: 1}), g, reps)
            if not res.is_zero():
                return {"status": "fail", "monomial": Poly(R, {m: 1}).to_text()}
            count += 1
    return {"status": "pass", "monomials": count}


def check_symplectic(g, seed=0):
    if g > 4:
        return {"status": "skipped"}
    ok = True
    inconclusive = False
    kernels = []
    for k in range(0, g + 1):
        want = comb(2 * g, k) - (comb(2 * g, k - 2) if k >= 2 else 0)
        got = symplectic.ker_phi_dim(g, k)
        _, _, wk = symplectic.wk_dims_and_characters(g, k)
        ok = ok and got == want and wk["dim_matches"] and wk.get("character_matches", True)
        kernels.append(got)
    spans = []
    if g <= 3:
        for k in range(1, g + 1):
            r = symplectic.isotropic_span_check(g, k, seed=seed)
            spans.append(r["status"])
            ok = ok and r["status"] != "fail"
            inconclusive = inconclusive or r["status"] == "inconclusive"
    gen = symplectic.generic_abelian_dims(g)
    if g == 3:
        ok = ok and gen["defect"] == 1
    status = "fail" if not ok else "inconclusive" if inconclusive else "pass"
    return {"status": status, "ker_phi_dims": kernels, "isotropic_spans": spans, "defect": gen["defect"]}


def check_resolution(g, seed=0):
    if g > 3:
        return {"status": "skipped"}
    rep = symplectic.koszul_check(g)
    return {
        "status": _status(rep["pass"]),
        "window": rep["window"],
        "exact_below_top": rep["exact_below_top"],
        "cokernel_matches": rep["cokernel_matches"],
    }


def check_mumford(g, seed=0, cases=100):
    if g > 3:
        return {"status": "skipped"}
    rng = random.Random(seed)
    worst = mpmath.mpf(0)
    with mpmath.workprec(256):
        for _ in range(cases):
            pts, curve = mumford.random_divisor_on_curve(g, rng)
            t = mumford.divisor_to_triple(pts, curve)
            if not t.satisfies(curve):
                return {"status": "fail", "reason": "triple misses a^2 + b c = f"}
            back = mumford.triple_to_divisor(t, curve, prec=256)
            for z, y in pts:
                zq, yq = mpmath.mpmathify(z), mpmath.mpmathify(y)
                err = min(abs(zq - zz) + abs(yq - yy) for zz, yy in back.points)
                worst = max(worst, err)
    return {"status": _status(worst < mpmath.mpf("1e-20")), "max_error": mpmath.nstr(worst, 5)}


def check_gr(g, seed=0):
    if g > 2:
        return {"status": "skipped"}
    rng = random.Random(seed)
    f0 = reduce.random_nonzero_f0(g, rng)
    rep = reduce.gr_compatibility_check(g, f0, 12, pairs=50, seed=seed)
    return {"status": _status(rep["pass"]), "pairs": len(rep["pairs"])}


CHECKS = [
    ("characters", check_characters),
    ("basis", check_basis),
    ("euler", check_euler),
    ("flows", check_flows),
    ("cohomology", check_cohomology),
    ("descend", check_descend),
    ("symplectic", check_symplectic),
    ("resolution", check_resolution),
    ("mumford", check_mumford),
    ("gr_compatibility", check_gr),
]


def verify_all(g, seed=0):
    results = {}
    for name, fn in CHECKS:
        try:
            res = fn(g, seed=seed)
        except HypJacError as exc:
            res = {"status": "fail", "error": str(exc)}
        results[name] = res
    statuses = {r["status"] for r in results.values()}
    overall = "fail" if "fail" in statuses else "inconclusive" if "inconclusive" in statuses else "pass"
    return {"g": g, "seed": seed, "checks": results, "status": overall}

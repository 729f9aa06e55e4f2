"""Coaction of the deformed 2x2 matrix algebra on the planes.

Matrix entries are written to the left of plane coordinates, so the
coacted coordinates live in the coaction presets as two-letter words.
The inverse and superdeterminant computations run in the localized
matrix algebra, whose passage rules are derived and budget-guarded
rather than termination-checked.
"""

from __future__ import annotations

from .scalars import ONE, J, J2, MINUS_ONE, rational
from .freealg import NCPolynomial, apply_hom, fa_str
from .rewrite import Presentation
from . import presets as _presets


def _m(*names):
    return NCPolynomial.word(names)


def plane_coaction():
    """Images of the plane coordinates under the coaction."""
    return {
        "x": _m("a", "x") + _m("b", "th"),
        "th": _m("g", "x") + _m("dT", "th"),
        "h": _m("h"),
    }


def dual_coaction():
    return {
        "phi": _m("a", "phi") + NCPolynomial.word(("b", "y"), J2),
        "y": NCPolynomial.word(("g", "phi"), J) + _m("dT", "y"),
        "h": _m("h"),
    }


def coact_plane(p):
    """Apply the coaction to a polynomial in x, th, h."""
    return apply_hom(plane_coaction(), p)


def coact_dual(p):
    return apply_hom(dual_coaction(), p)


def _comodule_checks(Pp, Pd):
    xt = _m("a", "x") + _m("b", "th")
    tt = _m("g", "x") + _m("dT", "th")
    pt = dual_coaction()["phi"]
    yt = dual_coaction()["y"]
    h = _m("h")
    return {
        "plane_relation": Pp.normal_form(
            xt * tt - tt * xt - h * xt * xt).is_zero(),
        "plane_cube": Pp.normal_form(tt * tt * tt).is_zero(),
        "dual_relation": Pd.normal_form(
            pt * yt - (yt * pt).scale(J) - (h * pt * pt).scale(J2)).is_zero(),
        "dual_cube": Pd.normal_form(pt * pt * pt).is_zero(),
    }


_MUTATION_GROUPS = ("gl:ab", "gl:ag", "gl:dTb", "gl:dTg", "gl:b3", "gl:g3",
                    "gl:bg", "gl:adT")


def _drop(pres, ref):
    return Presentation(pres.name + "~" + ref, pres.generators,
                        [r for r in pres.rules if r.ref != ref],
                        pres.order, q=pres.q,
                        orientation_checked=pres.orientation_checked)


def verify_comodule(mutations=True):
    """The coacted coordinates satisfy the plane relations, and every
    matrix-entry relation is necessary for that."""
    Pp = _presets.coaction_plane()
    Pd = _presets.coaction_dual()
    items = []
    for name, ok in _comodule_checks(Pp, Pd).items():
        items.append({"name": name, "status": "pass" if ok else "fail"})
    if mutations:
        for ref in _MUTATION_GROUPS:
            res = _comodule_checks(_drop(Pp, ref), _drop(Pd, ref))
            broke = sorted(k for k, v in res.items() if not v)
            entry = {"name": "necessity_" + ref.split(":")[1],
                     "status": "pass" if broke else "fail"}
            if broke:
                entry["witness"] = "deleting %s breaks %s" % (ref, ", ".join(broke))
            items.append(entry)
    return {"check": "comodule", "items": items,
            "ok": all(i["status"] == "pass" for i in items)}


# ---------------------------------------------------------------------------
# inverse and superdeterminant

class SuperMatrix:
    """2x2 matrix over an algebra, row-major entries."""

    def __init__(self, a11, a12, a21, a22):
        self.e = ((a11, a12), (a21, a22))

    def __mul__(self, other):
        out = []
        for i in range(2):
            for k in range(2):
                acc = NCPolynomial.zero()
                for m in range(2):
                    acc = acc + self.e[i][m] * other.e[m][k]
                out.append(acc)
        return SuperMatrix(*out)

    def entry(self, i, k):
        return self.e[i][k]


def t_matrix():
    return SuperMatrix(_m("a"), _m("b"), _m("g"), _m("dT"))


def t_inverse():
    """Entrywise geometric-series inverse, exact because b and g are
    nilpotent: the series stops after the second correction."""
    A11 = (_m("ainv") + _m("ainv", "b", "dTinv", "g", "ainv")
           + _m("ainv", "b", "dTinv", "g", "ainv", "b", "dTinv", "g", "ainv"))
    A12 = (-_m("ainv", "b", "dTinv")
           - _m("ainv", "b", "dTinv", "g", "ainv", "b", "dTinv"))
    A21 = (-_m("dTinv", "g", "ainv")
           - _m("dTinv", "g", "ainv", "b", "dTinv", "g", "ainv"))
    A22 = (_m("dTinv") + _m("dTinv", "g", "ainv", "b", "dTinv")
           + _m("dTinv", "g", "ainv", "b", "dTinv", "g", "ainv", "b", "dTinv"))
    return SuperMatrix(A11, A12, A21, A22)


def verify_inverse(budget=500000):
    L = _presets.glhj_localized()
    T = t_matrix()
    Ti = t_inverse()
    items = []
    for label, M in (("T_Tinv", T * Ti), ("Tinv_T", Ti * T)):
        for i in range(2):
            for k in range(2):
                want = NCPolynomial.unit() if i == k else NCPolynomial.zero()
                nf = L.normal_form(M.entry(i, k) - want, budget)
                entry = {"name": "%s_%d%d" % (label, i + 1, k + 1),
                         "status": "pass" if nf.is_zero() else "fail"}
                if not nf.is_zero():
                    entry["witness"] = fa_str(nf, L.order.key)
                items.append(entry)
    return {"check": "inverse", "items": items,
            "ok": all(i["status"] == "pass" for i in items)}


def sdet_element():
    return (_m("a", "dTinv") + _m("a", "dTinv", "g", "ainv", "b", "dTinv")
            + _m("a", "dTinv", "g", "ainv", "b", "dTinv", "g", "ainv", "b",
                 "dTinv"))


def sdet(style="text", budget=500000):
    L = _presets.glhj_localized()
    nf = L.normal_form(sdet_element(), budget)
    return nf, fa_str(nf, L.order.key, style), L


def verify_sdet(budget=500000):
    L = _presets.glhj_localized()
    nf = L.normal_form(sdet_element(), budget)
    kappa = {g.name: NCPolynomial.gen(g.name) for g in L.generators}
    kappa["b"] = NCPolynomial.zero()
    kappa["g"] = NCPolynomial.zero()
    kappa["h"] = NCPolynomial.zero()
    diag = L.normal_form(apply_hom(kappa, nf), budget)
    items = [
        {"name": "normal_form", "status": "pass",
         "witness": fa_str(nf, L.order.key)},
        {"name": "diagonal_limit",
         "status": "pass" if diag == _m("dTinv", "a") else "fail",
         "witness": fa_str(diag, L.order.key)},
    ]
    return {"check": "sdet", "items": items,
            "ok": all(i["status"] == "pass" for i in items)}


def verify(check):
    if check == "comodule":
        return verify_comodule()
    if check == "inverse":
        return verify_inverse()
    if check == "sdet":
        return verify_sdet()
    raise KeyError("unknown check %r" % check)

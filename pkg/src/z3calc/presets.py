"""Shipped presentations.

Every factory returns a fresh Presentation whose rules are oriented
against its term order at construction time.  The collapse rules
(ref "derived:...") are consequences of the listed relations, obtained
by orienting differences of overlap ambiguities; they are part of the
presentation so that reduction alone decides equality, and the pair
census in the test suite re-checks them.

q conventions: presets carrying a symbolic q say so in their q field,
the rest are bound at q = 1.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import (CycloRational, ZERO, ONE, J, J2, Q, MINUS_ONE, jpow,
                      qpow, rational)
from .freealg import GeneratorInfo, NCPolynomial
from .rewrite import Presentation, TermOrder, localize, orient, saturate

_QI = qpow(-1)

# name -> (declared grade, effective weight, nilpotency, d image)
_GENDATA = {
    "x": (0, 0, None, "dx"),
    "th": (1, 1, 3, "dth"),
    "h": (2, 1, 3, "zero"),
    "xinv": (0, 0, None, None),
    "dx": (1, 1, 3, "d2x"),
    "dth": (2, 2, None, "d2th"),
    "d2x": (2, 2, None, "zero"),
    "d2th": (0, 0, None, "zero"),
    "px": (0, 0, None, None),
    "pth": (2, 2, 3, None),
    "w": (1, 1, 3, None),
    "u": (2, 2, None, None),
    "a": (0, 0, None, None),
    "b": (2, 2, 3, None),
    "g": (1, 1, None, None),
    "dT": (0, 0, None, None),
    "ainv": (0, 0, None, None),
    "dTinv": (0, 0, None, None),
    "phi": (2, 2, 3, None),
    "y": (0, 0, None, None),
}


def _g(name, nilpotency="default", d_image="default"):
    grade, weight, n0, d0 = _GENDATA[name]
    return GeneratorInfo(
        name, grade, weight,
        n0 if nilpotency == "default" else nilpotency,
        d0 if d_image == "default" else d_image,
    )


def _rules(order, entries):
    out = []
    for entry in entries:
        ref, lhs = entry[0], tuple(entry[1])
        rhs = NCPolynomial.zero()
        for coeff, word in entry[2:]:
            rhs = rhs + NCPolynomial.word(tuple(word), coeff)
        out.append(orient(lhs, rhs, order, ref))
    return out


def _zero_rules(order, words):
    return _rules(order, [("derived:" + ".".join(w), w) for w in words])


# ---------------------------------------------------------------------------
# plane presets

def q_plane():
    order = TermOrder({"th": 2, "x": 1}, ["th", "x"])
    gens = [_g("th"), _g("x")]
    rules = _rules(order, [
        ("plane:xth", ("x", "th"), (Q, ("th", "x"))),
        ("plane:th3", ("th", "th", "th")),
    ])
    return Presentation("q_plane", gens, rules, order, q="symbolic")


_H_PLANE_COLLAPSE = [
    ("h", "h", "x", "x"),
    ("h", "h", "th", "x", "x"),
    ("h", "h", "th", "th", "x", "x"),
]


def h_plane():
    order = TermOrder({"h": 1, "th": 2, "x": 1}, ["h", "th", "x"])
    gens = [_g("h"), _g("th"), _g("x")]
    rules = _rules(order, [
        ("plane:xth", ("x", "th"), (ONE, ("th", "x")), (ONE, ("h", "x", "x"))),
        ("plane:th3", ("th", "th", "th")),
        ("plane:h3", ("h", "h", "h")),
        ("passage:xh", ("x", "h"), (ONE, ("h", "x"))),
        ("passage:thh", ("th", "h"), (J, ("h", "th"))),
    ]) + _zero_rules(order, _H_PLANE_COLLAPSE)
    return Presentation("h_plane", gens, rules, order, q=Fraction(1))


# ---------------------------------------------------------------------------
# first and second order calculus

_CALC_WEIGHTS = {"d2th": 5, "dth": 5, "h": 1, "d2x": 2, "dx": 2, "th": 2, "x": 1}
_CALC_PRECEDENCE = ["d2th", "dth", "h", "d2x", "dx", "th", "x"]

_CALC_COLLAPSE = [
    ("h", "h", "d2x", "d2x"),
    ("h", "h", "d2x", "dx"),
    ("h", "h", "d2x", "x"),
    ("h", "h", "d2x", "th", "x"),
    ("h", "h", "d2x", "th", "th", "x"),
    ("h", "h", "dx", "dx"),
    ("h", "h", "dx", "x"),
    ("h", "h", "dx", "th", "x"),
    ("h", "h", "dx", "th", "th", "x"),
    ("h", "h", "x", "x"),
    ("h", "h", "th", "x", "x"),
    ("h", "h", "th", "th", "x", "x"),
]


def _calc_gens():
    return [_g(n) for n in _CALC_PRECEDENCE]


def qjh_calculus():
    order = TermOrder(_CALC_WEIGHTS, _CALC_PRECEDENCE)
    rules = _rules(order, [
        ("plane:xth", ("x", "th"), (Q, ("th", "x")), (ONE, ("h", "x", "x"))),
        ("plane:th3", ("th", "th", "th")),
        ("plane:h3", ("h", "h", "h")),
        ("passage:xh", ("x", "h"), (ONE, ("h", "x"))),
        ("passage:thh", ("th", "h"), (Q * J, ("h", "th"))),
        ("passage:dxh", ("dx", "h"), (J, ("h", "dx"))),
        ("passage:hdth", ("h", "dth"), (_QI * J, ("dth", "h"))),
        ("passage:d2xh", ("d2x", "h"), (J2, ("h", "d2x"))),
        ("passage:hd2th", ("h", "d2th"), (_QI, ("d2th", "h"))),
        ("mixed:xdx", ("x", "dx"), (J2, ("dx", "x"))),
        ("mixed:xdth", ("x", "dth"), (Q, ("dth", "x")), (J2 - ONE, ("dx", "th")),
         (J, ("h", "dx", "x"))),
        ("mixed:thdx", ("th", "dx"), (J * _QI, ("dx", "th")),
         (-(_QI * J2), ("h", "dx", "x"))),
        ("mixed:thdth", ("th", "dth"), (J, ("dth", "th"))),
        ("mixed2:xd2x", ("x", "d2x"), (J2, ("d2x", "x"))),
        ("mixed2:xd2th", ("x", "d2th"), (Q, ("d2th", "x")),
         (J2 - ONE, ("d2x", "th")), (J2, ("h", "d2x", "x"))),
        ("mixed2:thd2x", ("th", "d2x"), (_QI, ("d2x", "th")),
         (-(_QI * J2), ("h", "d2x", "x"))),
        ("mixed2:thd2th", ("th", "d2th"), (ONE, ("d2th", "th"))),
        ("forms:dxdth", ("dx", "dth"), (Q * J, ("dth", "dx")),
         (J2, ("h", "dx", "dx"))),
        ("forms:dxd2x", ("dx", "d2x"), (J, ("d2x", "dx"))),
        ("forms:dxd2th", ("dx", "d2th"), (Q, ("d2th", "dx")),
         (J - J2, ("d2x", "dth")), (J2, ("h", "d2x", "dx"))),
        ("forms:d2xdth", ("d2x", "dth"), (Q * J, ("dth", "d2x")),
         (ONE, ("h", "d2x", "dx"))),
        ("forms:dthd2th", ("dth", "d2th"), (ONE, ("d2th", "dth"))),
        ("forms:d2xd2th", ("d2x", "d2th"), (Q * J2, ("d2th", "d2x")),
         (J, ("h", "d2x", "d2x"))),
        ("forms:dx3", ("dx", "dx", "dx")),
    ]) + _zero_rules(order, _CALC_COLLAPSE)
    return Presentation("qjh_calculus", _calc_gens(), rules, order, q="symbolic")


def hj_calculus():
    # same system transcribed at q = 1, kept independent of qjh_calculus
    order = TermOrder(_CALC_WEIGHTS, _CALC_PRECEDENCE)
    rules = _rules(order, [
        ("plane:xth", ("x", "th"), (ONE, ("th", "x")), (ONE, ("h", "x", "x"))),
        ("plane:th3", ("th", "th", "th")),
        ("plane:h3", ("h", "h", "h")),
        ("passage:xh", ("x", "h"), (ONE, ("h", "x"))),
        ("passage:thh", ("th", "h"), (J, ("h", "th"))),
        ("passage:dxh", ("dx", "h"), (J, ("h", "dx"))),
        ("passage:hdth", ("h", "dth"), (J, ("dth", "h"))),
        ("passage:d2xh", ("d2x", "h"), (J2, ("h", "d2x"))),
        ("passage:hd2th", ("h", "d2th"), (ONE, ("d2th", "h"))),
        ("mixed:xdx", ("x", "dx"), (J2, ("dx", "x"))),
        ("mixed:xdth", ("x", "dth"), (ONE, ("dth", "x")), (J2 - ONE, ("dx", "th")),
         (J, ("h", "dx", "x"))),
        ("mixed:thdx", ("th", "dx"), (J, ("dx", "th")), (-J2, ("h", "dx", "x"))),
        ("mixed:thdth", ("th", "dth"), (J, ("dth", "th"))),
        ("mixed2:xd2x", ("x", "d2x"), (J2, ("d2x", "x"))),
        ("mixed2:xd2th", ("x", "d2th"), (ONE, ("d2th", "x")),
         (J2 - ONE, ("d2x", "th")), (J2, ("h", "d2x", "x"))),
        ("mixed2:thd2x", ("th", "d2x"), (ONE, ("d2x", "th")),
         (-J2, ("h", "d2x", "x"))),
        ("mixed2:thd2th", ("th", "d2th"), (ONE, ("d2th", "th"))),
        ("forms:dxdth", ("dx", "dth"), (J, ("dth", "dx")), (J2, ("h", "dx", "dx"))),
        ("forms:dxd2x", ("dx", "d2x"), (J, ("d2x", "dx"))),
        ("forms:dxd2th", ("dx", "d2th"), (ONE, ("d2th", "dx")),
         (J - J2, ("d2x", "dth")), (J2, ("h", "d2x", "dx"))),
        ("forms:d2xdth", ("d2x", "dth"), (J, ("dth", "d2x")),
         (ONE, ("h", "d2x", "dx"))),
        ("forms:dthd2th", ("dth", "d2th"), (ONE, ("d2th", "dth"))),
        ("forms:d2xd2th", ("d2x", "d2th"), (J2, ("d2th", "d2x")),
         (J, ("h", "d2x", "d2x"))),
        ("forms:dx3", ("dx", "dx", "dx")),
    ]) + _zero_rules(order, _CALC_COLLAPSE)
    return Presentation("hj_calculus", _calc_gens(), rules, order, q=Fraction(1))


# ---------------------------------------------------------------------------
# partial derivative letters adjoined, q = 1

def weyl():
    order = TermOrder({"h": 1, "th": 2, "x": 1, "pth": 2, "px": 4},
                      ["h", "th", "x", "pth", "px"])
    gens = [_g("h"), _g("th"), _g("x"), _g("pth"), _g("px")]
    rules = _rules(order, [
        ("plane:xth", ("x", "th"), (ONE, ("th", "x")), (ONE, ("h", "x", "x"))),
        ("plane:th3", ("th", "th", "th")),
        ("plane:h3", ("h", "h", "h")),
        ("passage:xh", ("x", "h"), (ONE, ("h", "x"))),
        ("passage:thh", ("th", "h"), (J, ("h", "th"))),
        ("partial:pxx", ("px", "x"), (ONE, ()), (J2, ("x", "px")),
         (J2 - ONE, ("th", "pth")), (ONE, ("h", "x", "pth"))),
        ("partial:pthx", ("pth", "x"), (ONE, ("x", "pth"))),
        ("partial:pxth", ("px", "th"), (J2, ("th", "px")),
         (-J2, ("h", "x", "px"))),
        ("partial:pthth", ("pth", "th"), (ONE, ()), (J2, ("th", "pth"))),
        ("partial:pxpth", ("px", "pth"), (J, ("pth", "px"))),
        ("partial:pth3", ("pth", "pth", "pth")),
        ("derived:pxh", ("px", "h"), (ONE, ("h", "px"))),
        ("derived:pthh", ("pth", "h"), (J2, ("h", "pth"))),
    ]) + _zero_rules(order, [
        ("h", "h", "x"),
        ("h", "h", "th", "x"),
        ("h", "h", "th", "th", "x"),
    ])
    return Presentation("weyl", gens, rules, order, q=Fraction(1))


# ---------------------------------------------------------------------------
# invertible x: Cartan letters w, u

_CARTAN_WEIGHTS = {"d2th": 5, "dth": 5, "h": 1, "d2x": 2, "dx": 2,
                   "w": 3, "u": 6, "th": 2, "x": 1}
_CARTAN_PRECEDENCE = ["d2th", "dth", "h", "d2x", "dx", "w", "u", "th", "x"]


def cartan():
    order = TermOrder(_CARTAN_WEIGHTS, _CARTAN_PRECEDENCE)
    gens = [_g(n, nilpotency=2) if n == "h" else _g(n) for n in _CARTAN_PRECEDENCE]
    core = qjh_calculus()
    rules = []
    for r in core.rules:
        if r.ref == "plane:h3":
            rules.append(orient(("h", "h"), NCPolynomial.zero(), order, "plane:h2"))
        elif r.ref.startswith("derived:"):
            continue  # h^2 = 0 subsumes the h^2-collapse list
        else:
            rules.append(orient(r.lhs, r.rhs, order, r.ref))
    rules += _rules(order, [
        ("cartan:wh", ("w", "h"), (J, ("h", "w"))),
        ("cartan:uh", ("u", "h"), (Q * J2, ("h", "u"))),
        ("cartan:xw", ("x", "w"), (J2, ("w", "x"))),
        ("cartan:xu", ("x", "u"), (Q, ("u", "x"))),
        ("cartan:thw", ("th", "w"), (J, ("w", "th"))),
        ("cartan:thu", ("th", "u"), (Q * J, ("u", "th")), (Q, ("h", "u", "x"))),
        ("cartan:wdx", ("w", "dx"), (J, ("dx", "w"))),
        ("cartan:udx", ("u", "dx"), (_QI, ("dx", "u"))),
        ("cartan:wd2x", ("w", "d2x"), (J2, ("d2x", "w"))),
        ("cartan:ud2x", ("u", "d2x"), (_QI, ("d2x", "u"))),
        ("cartan:wd2th", ("w", "d2th"), ((J - J2) * _QI, ("d2x", "u")),
         (ONE, ("d2th", "w"))),
        ("cartan:uw", ("u", "w"), (ONE, ("w", "u"))),
        ("cartan:w3", ("w", "w", "w")),
    ])
    base = Presentation("cartan_core", gens, rules, order, q="symbolic")
    loc = localize(base, "x", "xinv", name="cartan")
    xinv_rules = _rules(loc.order, [
        # coefficient 1 - j^2 is forced: substituting w = dx*xinv leaves a
        # residual for any other value (see substituted_wdth)
        ("cartan:wdth", ("w", "dth"), (J, ("dth", "w")),
         (ONE - J2, ("th", "xinv", "dx", "w"))),
        ("cartan:udth", ("u", "dth"), (_QI, ("dth", "u")),
         (_QI * (ONE - J), ("th", "xinv", "dx", "u")), (-_QI, ("h", "dx", "u"))),
        ("cartan:ud2th", ("u", "d2th"), (_QI, ("d2th", "u")),
         (J - J2, ("xinv", "th", "d2x", "u")), (-(_QI * J2), ("h", "d2x", "u"))),
    ])
    return Presentation("cartan", loc.generators, loc.rules + xinv_rules,
                        loc.order, q="symbolic")


# ---------------------------------------------------------------------------
# the structure algebra of 2x2 supermatrices, q = 1

_GL_WEIGHTS = {"h": 1, "g": 3, "b": 1, "dT": 2, "a": 2}
_GL_PRECEDENCE = ["h", "g", "b", "dT", "a"]


def _glhj_rules(order):
    return _rules(order, [
        ("gl:ab", ("a", "b"), (J, ("b", "a"))),
        ("gl:ag", ("a", "g"), (ONE, ("g", "a")), (ONE, ("h", "a", "a")),
         (MINUS_ONE, ("h", "a", "dT")), (ONE, ("h", "g", "b")),
         (J2, ("h", "h", "a", "b"))),
        ("gl:dTb", ("dT", "b"), (J, ("b", "dT")), (MINUS_ONE, ("h", "b", "b"))),
        ("gl:dTg", ("dT", "g"), (ONE, ("g", "dT"))),
        ("gl:b3", ("b", "b", "b")),
        # 1 - j^2 is forced by the coacted cube: any other value leaves a
        # g*g*g residue in theta-tilde cubed
        ("gl:g3", ("g", "g", "g"), (ONE - J2, ("h", "g", "g", "dT")),
         (rational(-2) * J2, ("h", "h", "g", "dT", "dT"))),
        ("gl:bg", ("b", "g"), (ONE, ("g", "b")), (ONE, ("h", "a", "b"))),
        ("gl:adT", ("a", "dT"), (ONE, ("dT", "a")), (ONE - J, ("b", "g")),
         (ONE, ("h", "b", "a"))),
        ("gl:ah", ("a", "h"), (ONE, ("h", "a"))),
        ("gl:dTh", ("dT", "h"), (ONE, ("h", "dT"))),
        ("gl:bh", ("b", "h"), (J2, ("h", "b"))),
        ("gl:gh", ("g", "h"), (J, ("h", "g"))),
        ("gl:h3", ("h", "h", "h")),
    ]) + _zero_rules(order, [
        ("h", "h", "b", "b"),
        ("h", "h", "b", "a"),
        ("h", "h", "g", "g", "dT"),
    ]) + _rules(order, [
        ("derived:h.h.a.a", ("h", "h", "a", "a"), (ONE, ("h", "h", "a", "dT")),
         (MINUS_ONE, ("h", "h", "g", "b"))),
    ])


def glhj():
    order = TermOrder(_GL_WEIGHTS, _GL_PRECEDENCE)
    gens = [_g(n) for n in _GL_PRECEDENCE]
    return Presentation("glhj", gens, _glhj_rules(order), order, q=Fraction(1))


def _gl_runaway(word, cap=3):
    # The derived collapse families h*X*dT^n*a*a -> h*X*dT^(n+1)*a and
    # their localized mirrors grow one dT (or dTinv) per step forever, so
    # saturation must cut them off.  Runs up to the cap are kept because
    # the inverse checks genuinely consume family members that deep.
    run = 1
    for i in range(1, len(word)):
        run = run + 1 if word[i] == word[i - 1] else 1
        if run > cap and word[i] in ("dT", "dTinv", "a", "ainv"):
            return True
    return False


_GLHJ_LOCALIZED = None


def glhj_localized():
    """glhj with both diagonal entries inverted.

    The derived passage rules cannot be oriented by any additive weight
    assignment, so this presentation is not in the shipped catalog and
    reduction in it is budget-guarded rather than termination-checked.

    Localizing needs collapse relations the seventeen base rules only
    reach as critical-pair differences (the multiply-back check otherwise
    trips over ideal members such as h*h*g*b*b), so the base is saturated
    before inverting and the result is saturated again to absorb the
    relations that only appear once a diagonal entry can be cancelled.
    Both sweeps stop at the _gl_runaway cutoff, so this is a partial
    saturation, not a confluent system.  The build is cached: callers
    share one instance and must not mutate it.
    """
    global _GLHJ_LOCALIZED
    if _GLHJ_LOCALIZED is None:
        base = saturate(glhj(), skip=_gl_runaway)
        step = localize(base, "dT", "dTinv", check_orientation=False)
        loc = localize(step, "a", "ainv", check_orientation=False)
        _GLHJ_LOCALIZED = saturate(loc, skip=_gl_runaway, name="glhj_localized")
    return _GLHJ_LOCALIZED


# ---------------------------------------------------------------------------
# the dual plane, q = 1

def dual_plane():
    order = TermOrder({"h": 1, "y": 2, "phi": 1}, ["h", "y", "phi"])
    gens = [_g("h"), _g("y"), _g("phi")]
    rules = _rules(order, [
        ("dual:phiy", ("phi", "y"), (J, ("y", "phi")), (J2, ("h", "phi", "phi"))),
        ("dual:phi3", ("phi", "phi", "phi")),
        ("dual:h3", ("h", "h", "h")),
        # h passes phi and y the way it passes the degree-one and degree-two
        # form letters of the calculus
        ("dual:yh", ("y", "h"), (J2, ("h", "y"))),
        ("dual:phih", ("phi", "h"), (J, ("h", "phi"))),
    ]) + _zero_rules(order, [("h", "h", "phi", "phi")])
    return Presentation("dual_plane", gens, rules, order, q=Fraction(1))


# ---------------------------------------------------------------------------
# coaction presets: matrix entries to the left of the coordinates

def coaction_plane():
    weights = dict(_GL_WEIGHTS, th=2, x=1)
    precedence = _GL_PRECEDENCE + ["th", "x"]
    order = TermOrder(weights, precedence)
    gens = [_g(n) for n in precedence]
    rules = _glhj_rules(order) + _rules(order, [
        ("plane:xth", ("x", "th"), (ONE, ("th", "x")), (ONE, ("h", "x", "x"))),
        ("plane:th3", ("th", "th", "th")),
        ("passage:xh", ("x", "h"), (ONE, ("h", "x"))),
        ("passage:thh", ("th", "h"), (J, ("h", "th"))),
        ("coact:xa", ("x", "a"), (ONE, ("a", "x"))),
        ("coact:xb", ("x", "b"), (ONE, ("b", "x"))),
        ("coact:xg", ("x", "g"), (ONE, ("g", "x"))),
        ("coact:xdT", ("x", "dT"), (ONE, ("dT", "x"))),
        ("coact:tha", ("th", "a"), (ONE, ("a", "th"))),
        ("coact:thb", ("th", "b"), (J2, ("b", "th"))),
        ("coact:thg", ("th", "g"), (J, ("g", "th"))),
        ("coact:thdT", ("th", "dT"), (ONE, ("dT", "th"))),
    ]) + _zero_rules(order, _H_PLANE_COLLAPSE)
    return Presentation("coaction_plane", gens, rules, order, q=Fraction(1))


def coaction_dual():
    weights = dict(_GL_WEIGHTS, y=2, phi=1)
    precedence = _GL_PRECEDENCE + ["y", "phi"]
    order = TermOrder(weights, precedence)
    gens = [_g(n) for n in precedence]
    rules = _glhj_rules(order) + _rules(order, [
        ("dual:phiy", ("phi", "y"), (J, ("y", "phi")), (J2, ("h", "phi", "phi"))),
        ("dual:phi3", ("phi", "phi", "phi")),
        ("dual:yh", ("y", "h"), (J2, ("h", "y"))),
        ("dual:phih", ("phi", "h"), (J, ("h", "phi"))),
        # entry twists follow the entry grade times the coordinate grade,
        # with phi of grade one and y of grade two
        ("coact:phia", ("phi", "a"), (ONE, ("a", "phi"))),
        ("coact:phib", ("phi", "b"), (J2, ("b", "phi"))),
        ("coact:phig", ("phi", "g"), (J, ("g", "phi"))),
        ("coact:phidT", ("phi", "dT"), (ONE, ("dT", "phi"))),
        ("coact:ya", ("y", "a"), (ONE, ("a", "y"))),
        ("coact:yb", ("y", "b"), (J, ("b", "y"))),
        ("coact:yg", ("y", "g"), (J2, ("g", "y"))),
        ("coact:ydT", ("y", "dT"), (ONE, ("dT", "y"))),
    ]) + _zero_rules(order, [("h", "h", "phi", "phi")])
    return Presentation("coaction_dual", gens, rules, order, q=Fraction(1))


# ---------------------------------------------------------------------------
# catalog

PRESETS = {
    "q_plane": q_plane,
    "h_plane": h_plane,
    "hj_calculus": hj_calculus,
    "qjh_calculus": qjh_calculus,
    "weyl": weyl,
    "cartan": cartan,
    "glhj": glhj,
    "dual_plane": dual_plane,
    "coaction_plane": coaction_plane,
    "coaction_dual": coaction_dual,
}


class BuildError(RuntimeError):
    pass


def build(name, census=False):
    try:
        factory = PRESETS[name]
    except KeyError:
        raise KeyError("unknown preset %r" % name) from None
    pres = factory()
    bad = pres.check_homogeneity()
    if bad:
        raise BuildError("%s: inhomogeneous rules: %r" % (name, bad))
    bad = pres.check_termination()
    if bad:
        raise BuildError("%s: unoriented rules: %r" % (name, bad))
    if census:
        pres.census = pres.pair_census()
    return pres


def specialize(pres, q0):
    return pres.specialize(q0)


# ---------------------------------------------------------------------------
# the h -> 0 scaling limit of the calculus relations

def verify_contraction():
    """Check the change of variables that removes h from the calculus.

    The shifted letters th' = th + h x/(q-1), dth' = dth + j h dx/(q-1),
    d2th' = d2th + j^2 h d2x/(q-1) satisfy the h-free q-relations inside
    the full calculus, with the commutation matrix forced by a linear
    system whose solution is checked here coefficient by coefficient.
    """
    q = Q
    A, B = J2, J
    F11, F12, F21, F22 = Q, J2 - ONE, J * _QI, ZERO
    F = Q * J
    c = (Q - ONE).inv()

    checks = {}
    checks["scaling_consistency"] = (
        F11 == q * (ONE + J * F22) and F12 == q * J * F21 - ONE
    )
    k1 = B * J2 * q - F22 * J2 * q - F11
    k2 = B * J - F21 * J2 * q - F12
    k3 = (B * J2 - F21 * q - F22 * q + A * J2 * q - F11 * J - F12 * J)
    checks["obstructions_vanish"] = k1.is_zero() and k2.is_zero() and k3.is_zero()
    checks["cube_constraint"] = (ONE + J * B + J2 * B * B).is_zero()
    checks["xdth_h_coefficient"] = (F11 * J + F12 * J - A * J) * c == J
    checks["thdx_h_coefficient"] = (F21 * J + F22 * J - A) * c == -(J2 * _QI)
    checks["wedge_h_coefficient"] = (F * J - J2) * c == J2

    P = qjh_calculus()
    gen = NCPolynomial.gen
    word = NCPolynomial.word
    xp = gen("x")
    thp = gen("th") + word(("h", "x"), c)
    dxp = gen("dx")
    dthp = gen("dth") + word(("h", "dx"), J * c)
    relations = [
        xp * dxp - (dxp * xp).scale(A),
        xp * dthp - (dthp * xp).scale(F11) - (dxp * thp).scale(F12),
        thp * dxp - (dxp * thp).scale(F21) - (dxp * xp).scale(F22),
        thp * dthp - (dthp * thp).scale(B),
    ]
    checks["shifted_relations_reduce"] = all(
        P.normal_form(r).is_zero() for r in relations
    )
    return checks

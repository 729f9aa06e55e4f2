"""Rewriting for finitely presented graded algebras.

A Presentation bundles an alphabet, a term order, and a list of
oriented rules lhs -> rhs where lhs is a word and rhs a polynomial in
strictly smaller words.  Reduction replaces the leftmost, first-declared
match and recurses with memoisation; the engine never completes a
presentation behind the caller's back, it only reports critical pairs.

The term order compares (total weight, length, leftmost precedence
index) with weight ascending, length DESCENDING, then lex.  Longer
words losing ties keeps substitution rules like v*vinv -> 1 oriented,
and positivity of the weights makes the order well founded either way.
"""

from __future__ import annotations

import json
import sys
import os
from dataclasses import dataclass
from fractions import Fraction

from .scalars import CycloRational, ONE, ZERO, specialize_q, scalar_str
from .freealg import GeneratorInfo, NCPolynomial, word_grade, fa_str

sys.setrecursionlimit(100000)

DEFAULT_BUDGET = 10**6


class OrientationError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    def __init__(self, word):
        super().__init__("step budget exceeded while reducing %r" % (word,))
        self.word = word


class LocalizeError(RuntimeError):
    pass


class TermOrder:
    __slots__ = ("weights", "precedence", "_idx")

    def __init__(self, weights, precedence):
        for g in precedence:
            w = weights.get(g)
            if not isinstance(w, int) or w <= 0:
                raise ValueError("generator %r needs a positive integer weight" % g)
        self.weights = dict(weights)
        self.precedence = list(precedence)
        self._idx = {g: i for i, g in enumerate(precedence)}

    def word_weight(self, word):
        ww = self.weights
        return sum(ww[g] for g in word)

    def key(self, word):
        idx = self._idx
        return (self.word_weight(word), -len(word), tuple(idx[g] for g in word))

    def less(self, u, v):
        return self.key(u) < self.key(v)

    def index(self, g):
        return self._idx[g]


@dataclass(frozen=True)
class RewriteRule:
    lhs: tuple
    rhs: NCPolynomial
    ref: str = ""


def orient(lhs, rhs, order, ref=""):
    """Build a rule after checking every rhs word is below lhs."""
    lhs = tuple(lhs)
    lk = order.key(lhs)
    for w in rhs.support():
        if not order.key(w) < lk:
            raise OrientationError(
                "rule %s: rhs word %r not below lhs %r" % (ref or "?", w, lhs)
            )
    return RewriteRule(lhs, rhs, ref)


class Presentation:
    def __init__(self, name, generators, rules, order, q="symbolic",
                 orientation_checked=True):
        self.name = name
        self.generators = list(generators)
        self.rules = list(rules)
        self.order = order
        self.q = q  # "symbolic" or a Fraction
        self.orientation_checked = orientation_checked
        self.gens = {g.name: g for g in self.generators}
        self._by_first = {}
        for r in self.rules:
            self._by_first.setdefault(r.lhs[0], []).append(r)
        self._memo = {}

    # -- sanity -------------------------------------------------------------

    def check_termination(self):
        """Re-run the orientation test on every rule; list violations."""
        bad = []
        for r in self.rules:
            lk = self.order.key(r.lhs)
            for w in r.rhs.support():
                if not self.order.key(w) < lk:
                    bad.append((r.ref, r.lhs, w))
        return bad

    def check_homogeneity(self):
        """Rules must preserve the effective Z3 grade."""
        bad = []
        for r in self.rules:
            lg = word_grade(r.lhs, self.gens)
            for w in r.rhs.support():
                if word_grade(w, self.gens) != lg:
                    bad.append((r.ref, r.lhs, w))
        return bad

    # -- reduction ----------------------------------------------------------

    def _nf_word(self, word, state):
        memo = self._memo
        hit = memo.get(word)
        if hit is not None:
            return hit
        by_first = self._by_first
        n = len(word)
        for i in range(n):
            for rule in by_first.get(word[i], ()):
                L = rule.lhs
                if word[i:i + len(L)] == L:
                    state[0] -= 1
                    if state[0] < 0:
                        raise BudgetExceeded(word)
                    prefix = word[:i]
                    suffix = word[i + len(L):]
                    acc = NCPolynomial.zero()
                    for rw, rc in rule.rhs.t.items():
                        acc = acc + self._nf_word(prefix + rw + suffix, state).scale(rc)
                    memo[word] = acc
                    return acc
        acc = NCPolynomial.word(word)
        memo[word] = acc
        return acc

    def normal_form(self, p, budget=None):
        if budget is None:
            budget = int(os.environ.get("Z3CALC_STEP_BUDGET", DEFAULT_BUDGET))
        state = [budget]
        out = NCPolynomial.zero()
        for word, c in p.t.items():
            out = out + self._nf_word(word, state).scale(c)
        return out

    def nf_word(self, word, budget=None):
        return self.normal_form(NCPolynomial.word(word), budget)

    def reduces_to_zero(self, p, budget=None):
        return self.normal_form(p, budget).is_zero()

    # -- critical pairs -----------------------------------------------------

    def critical_pairs(self, budget=None):
        """All overlap and containment ambiguities, each reduced both ways.

        Returns a list of dicts with the ambiguous word, the two rule
        refs, both normal forms, and whether they agree.  No completion
        is attempted.
        """
        out = []
        rules = self.rules
        seen = set()
        for i1, r1 in enumerate(rules):
            for i2, r2 in enumerate(rules):
                l1, l2 = r1.lhs, r2.lhs
                # suffix of l1 overlaps prefix of l2
                kmax = min(len(l1), len(l2)) - 1
                for k in range(1, kmax + 1):
                    if l1[-k:] != l2[:k]:
                        continue
                    word = l1 + l2[k:]
                    tag = (i1, i2, "ov", len(l1) - k)
                    if tag in seen:
                        continue
                    seen.add(tag)
                    out.append(self._pair_entry(word, r1, 0, r2, len(l1) - k, budget))
                # l2 properly contained in l1
                if i1 != i2 and len(l2) < len(l1):
                    for p in range(len(l1) - len(l2) + 1):
                        if l1[p:p + len(l2)] != l2:
                            continue
                        tag = (i1, i2, "in", p)
                        if tag in seen:
                            continue
                        seen.add(tag)
                        out.append(self._pair_entry(l1, r1, 0, r2, p, budget))
        return out

    def _pair_entry(self, word, r1, p1, r2, p2, budget):
        nf1 = self._reduce_at(word, r1, p1, budget)
        nf2 = self._reduce_at(word, r2, p2, budget)
        return {
            "word": word,
            "rules": (r1.ref, r2.ref),
            "nf1": nf1,
            "nf2": nf2,
            "joinable": nf1 == nf2,
        }

    def _reduce_at(self, word, rule, pos, budget):
        prefix, suffix = word[:pos], word[pos + len(rule.lhs):]
        step = NCPolynomial.zero()
        for rw, rc in rule.rhs.t.items():
            step = step + NCPolynomial.word(prefix + rw + suffix, rc)
        return self.normal_form(step, budget)

    def pair_census(self, budget=None):
        pairs = self.critical_pairs(budget)
        bad = [p for p in pairs if not p["joinable"]]
        return {
            "preset": self.name,
            "pairs": len(pairs),
            "joinable": len(pairs) - len(bad),
            "unjoinable": [
                {
                    "word": list(p["word"]),
                    "rules": list(p["rules"]),
                    "difference": fa_str(p["nf1"] - p["nf2"], self.order.key),
                }
                for p in bad
            ],
        }

    # -- q specialisation ----------------------------------------------------

    def specialize(self, q0):
        q0 = Fraction(q0)
        gens = [
            GeneratorInfo(
                g.name, g.grade, g.weight, g.nilpotency, g.d_image,
                specialize_q(g.d_passage, q0) if g.d_passage is not None else None,
            )
            for g in self.generators
        ]
        rules = []
        for r in self.rules:
            rhs = NCPolynomial({w: specialize_q(c, q0) for w, c in r.rhs.t.items()})
            rules.append(RewriteRule(r.lhs, rhs, r.ref))
        return Presentation(self.name, gens, rules, self.order, q=q0,
                            orientation_checked=self.orientation_checked)

    # -- serialisation --------------------------------------------------------

    def to_json(self):
        gens = []
        for g in self.generators:
            d = {"name": g.name, "grade": g.grade, "weight": g.weight}
            if g.nilpotency is not None:
                d["nilpotency"] = g.nilpotency
            if g.d_image is not None:
                d["d_image"] = g.d_image
            if g.d_passage is not None:
                d["d_passage"] = scalar_str(g.d_passage)
            gens.append(d)
        rules = []
        for r in self.rules:
            terms = sorted(r.rhs.t.items(), key=lambda it: self.order.key(it[0]),
                           reverse=True)
            rules.append({
                "lhs": list(r.lhs),
                "rhs": [{"coeff": scalar_str(c), "word": list(w)} for w, c in terms],
                "ref": r.ref,
            })
        return {
            "name": self.name,
            "generators": gens,
            "rules": rules,
            "order": {"weights": dict(self.order.weights),
                      "precedence": list(self.order.precedence)},
            "q": "symbolic" if self.q == "symbolic" else str(self.q),
        }

    @staticmethod
    def from_json(doc):
        from .parser import parse_scalar

        gens = []
        for d in doc["generators"]:
            gens.append(GeneratorInfo(
                d["name"], d["grade"], d["weight"], d.get("nilpotency"),
                d.get("d_image"),
                parse_scalar(d["d_passage"]) if "d_passage" in d else None,
            ))
        order = TermOrder(doc["order"]["weights"], doc["order"]["precedence"])
        rules = []
        for rd in doc["rules"]:
            rhs = NCPolynomial.zero()
            for t in rd["rhs"]:
                rhs = rhs + NCPolynomial.word(tuple(t["word"]), parse_scalar(t["coeff"]))
            rules.append(RewriteRule(tuple(rd["lhs"]), rhs, rd.get("ref", "")))
        q = doc.get("q", "symbolic")
        if q != "symbolic":
            q = Fraction(q)
        return Presentation(doc["name"], gens, rules, order, q=q)

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False) + "\n"

    def same_rules(self, other):
        """Structural equality of rule systems, ignoring names and refs."""
        def norm(p):
            return sorted(
                (r.lhs, tuple(sorted(r.rhs.t.items(), key=lambda it: it[0])))
                for r in p.rules
            )
        return norm(self) == norm(other)


# ---------------------------------------------------------------------------
# saturation and localization

def saturate(pres, max_sweeps=8, skip=None, name=None):
    """Append oriented critical-pair differences as derived rules.

    Each sweep reduces every ambiguity both ways and turns any nonzero
    difference into a new rule headed by its leading word.  Sweeps repeat
    until nothing admissible is left.  skip filters candidate left sides:
    a system whose completion grows without bound passes a predicate that
    cuts off the runaway families and accepts partial saturation instead
    of confluence.  The result is never marked orientation-checked.
    """
    rules = list(pres.rules)
    seen = {r.lhs for r in rules}
    for _ in range(max_sweeps):
        trial = Presentation("_sat", pres.generators, rules, pres.order,
                             q=pres.q, orientation_checked=False)
        added = False
        for cp in trial.critical_pairs():
            d = cp["nf1"] - cp["nf2"]
            if d.is_zero():
                continue
            lead = max(d.support(), key=pres.order.key)
            if lead in seen or (skip is not None and skip(lead)):
                continue
            c = d.coeff(lead)
            rhs = (d - NCPolynomial.word(lead, c)).scale(-(c.inv()))
            seen.add(lead)
            rules.append(RewriteRule(lead, rhs, "derived:" + ".".join(lead)))
            added = True
        if not added:
            break
    return Presentation(name or pres.name, pres.generators, rules, pres.order,
                        q=pres.q, orientation_checked=False)


def localize(pres, v, vinv, name=None, max_sweeps=8, check_orientation=True,
             budget=200000):
    """Adjoin a two-sided inverse vinv for the generator v.

    Passage rules for vinv are solved from the passage rules of v by a
    fixpoint iteration: each candidate rule vinv*g -> X (or g*vinv -> X)
    is recomputed against the current candidate set until stable, which
    the nilpotent corrections guarantee.  Every derived rule is then
    verified by multiplying back.  A nonzero multiply-back residual is
    itself a valid identity of the localized ring (the candidate equals
    vinv*g there by construction), so residuals are oriented into extra
    rules and the solve repeats; this absorbs relations that only appear
    once v can be cancelled.  With check_orientation the derived rules
    must be compatible with the term order; callers that know the system
    cannot be oriented pass False and lose the termination guarantee
    (reduction is still budget-guarded).
    """
    gv = pres.gens[v]
    winv = (3 - gv.weight) % 3
    ginv = GeneratorInfo(vinv, (3 - gv.grade) % 3, winv)
    generators = list(pres.generators) + [ginv]

    weights = dict(pres.order.weights)
    weights[vinv] = weights[v]
    precedence = list(pres.order.precedence)
    pos_v = precedence.index(v)
    precedence.insert(pos_v, vinv)  # vinv just below v
    order = TermOrder(weights, precedence)

    base_rules = list(pres.rules)
    inv_rules = [
        RewriteRule((v, vinv), NCPolynomial.unit(), "inv:%s" % v),
        RewriteRule((vinv, v), NCPolynomial.unit(), "inv:%s" % vinv),
    ]

    idx = order.index
    base_by_pair = {}
    for r in base_rules:
        if len(r.lhs) == 2:
            base_by_pair[r.lhs] = r

    # targets: (lhs pair, base rule, case)
    targets = []
    for g in order.precedence:
        if g in (v, vinv):
            continue
        if idx(g) < idx(vinv):
            base = base_by_pair.get((v, g))
            if base is None:
                raise LocalizeError("no passage rule for (%s, %s)" % (v, g))
            targets.append(((vinv, g), base, 1))
        elif idx(g) > idx(v):
            base = base_by_pair.get((g, v))
            if base is None:
                raise LocalizeError("no passage rule for (%s, %s)" % (g, v))
            targets.append(((g, vinv), base, 2))

    def split(base, main_word):
        c0 = base.rhs.t.get(main_word)
        if c0 is None:
            raise LocalizeError("passage rule %r has no %r term" % (base.lhs, main_word))
        rest = base.rhs - NCPolynomial.word(main_word, c0)
        return c0, rest

    candidates = {}
    extra = []
    seen_extra = set()
    for outer in range(max_sweeps):
        for sweep in range(max_sweeps):
            trial = Presentation(
                "_loc", generators,
                base_rules + extra + inv_rules
                + [RewriteRule(lhs, rhs, "derived:%s*%s" % lhs)
                   for lhs, rhs in candidates.items()],
                order, q=pres.q, orientation_checked=False)
            changed = False
            for lhs, base, case in targets:
                if case == 1:
                    vinv_, g = lhs
                    c0, rest = split(base, (g, v))
                    main = NCPolynomial.word((g, vinv))
                else:
                    g, vinv_ = lhs
                    c0, rest = split(base, (v, g))
                    main = NCPolynomial.word((vinv, g))
                wrapped = NCPolynomial.zero()
                for w, c in rest.t.items():
                    wrapped = wrapped + NCPolynomial.word((vinv,) + w + (vinv,), c)
                x = (main - trial.normal_form(wrapped, budget)).scale(c0.inv())
                if candidates.get(lhs) != x:
                    candidates[lhs] = x
                    changed = True
            if not changed:
                break
        else:
            raise LocalizeError("localization of %s did not stabilise" % v)

        derived = [RewriteRule(lhs, rhs, "derived:%s*%s" % lhs)
                   for lhs, rhs in candidates.items()]
        if check_orientation:
            for r in derived:
                orient(r.lhs, r.rhs, order, r.ref)

        final = Presentation(name or (pres.name + "_loc_" + v), generators,
                             base_rules + extra + inv_rules + derived, order,
                             q=pres.q,
                             orientation_checked=pres.orientation_checked
                             and check_orientation and not extra)

        # multiply-back check: v * (vinv*g) == g and (g*vinv) * v == g
        bad = []
        for lhs, base, case in targets:
            x = candidates[lhs]
            g = lhs[1] if case == 1 else lhs[0]
            if case == 1:
                prod = NCPolynomial.gen(v) * x
            else:
                prod = x * NCPolynomial.gen(v)
            res = final.normal_form(prod, budget) - final.nf_word((g,), budget)
            if not res.is_zero():
                bad.append((lhs, res))
        if not bad:
            return final
        for lhs, res in bad:
            lead = max(res.support(), key=order.key)
            if lead in seen_extra:
                raise LocalizeError("derived rule for %r fails multiply-back" % (lhs,))
            c = res.coeff(lead)
            rhs = (res - NCPolynomial.word(lead, c)).scale(-(c.inv()))
            if check_orientation:
                orient(lead, rhs, order, "derived:" + ".".join(lead))
            seen_extra.add(lead)
            extra.append(RewriteRule(lead, rhs, "derived:" + ".".join(lead)))
    raise LocalizeError("localization of %s did not stabilise" % v)

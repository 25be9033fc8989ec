"""Sample-based verification of the structural statements.

Each statement is split into a geometric side (integrability of a
distribution, a totally geodesic foliation, the induced connection being
metric) and an operator side (an exact equation between projection-type
objects).  Both sides are evaluated at every sample point for a
deterministic family of fields; the report records whether their truth
values agree.  All global statements are checked samplewise: a pointwise
necessary condition, labelled as such, never a proof.

Sampling policy: operator conditions built only from tensorial objects
(second fundamental forms, shape operators) use polynomial-coefficient
combinations of the spanning fields; conditions that mention the induced
screen connection, which is not tensorial, use constant-coefficient
combinations, since non-constant rescalings change connection terms by
derivative terms that no pointwise condition can cancel.
"""

from __future__ import annotations

from . import linalg
from .calculus import FrameCalculus, lie_bracket
from .errors import WrongStructureKind
from .linalg import vadd, vsub, vec_is_zero


class SampleRow:
    __slots__ = ("point", "lhs", "rhs", "witnesses")

    def __init__(self, point, lhs: bool, rhs: bool, witnesses: dict):
        self.point = point
        self.lhs = lhs
        self.rhs = rhs
        self.witnesses = witnesses


class TheoremReport:
    """Per-sample agreement between the two sides of one statement."""

    __slots__ = ("theorem_id", "rule", "verdict", "rows", "notes")

    def __init__(self, theorem_id, rule, verdict, rows, notes=()):
        self.theorem_id = theorem_id
        self.rule = rule
        self.verdict = verdict
        self.rows = tuple(rows)
        self.notes = tuple(notes)


def _not_applicable(tid, rule, kind):
    return TheoremReport(
        tid, rule, "not-applicable", [],
        (f"instance structure kind is {kind!r}, which does not match the hypothesis",),
    )


def _assemble(calc, tid, rule, lhs_list, rhs_list, wit_list, notes=()):
    rows = [
        SampleRow(calc.points[k], lhs_list[k], rhs_list[k], wit_list[k])
        for k in range(len(calc.points))
    ]
    verdict = "consistent" if all(r.lhs == r.rhs for r in rows) else "inconsistent"
    return TheoremReport(tid, rule, verdict, rows, notes)


# -- geometric (left-hand) conditions -----------------------------------------------


def integrable_at(calc: FrameCalculus, span_fields) -> list:
    """Samplewise bracket closure of the span of the given tangent fields.

    Returns one row per sample point: {point, ok, witnesses}.  This is the
    pointwise necessary condition for involutivity.
    """
    rows = []
    brackets = []
    for i in range(len(span_fields)):
        for j in range(i + 1, len(span_fields)):
            x, y = span_fields[i], span_fields[j]
            br = lie_bracket(calc.inst, x.chart, y.chart)
            brackets.append((x.key, y.key, calc.chart_field(
                f"[{x.key},{y.key}]", br)))
    for k in range(len(calc.points)):
        ok = True
        wit = {}
        for xk, yk, bf in brackets:
            val = calc.field_at(bf, k)
            inside = calc.in_span_at(k, span_fields, val)
            if not wit or not inside:
                wit = {"pair": f"[{xk},{yk}]", "bracket": _vstr(val),
                       "in_span": str(inside)}
            ok = ok and inside
        rows.append({"point": calc.points[k], "ok": ok, "witnesses": wit})
    return rows


def _integrable_bools(calc, span_fields):
    rows = integrable_at(calc, span_fields)
    return [r["ok"] for r in rows], [r["witnesses"] for r in rows]


def _totally_geodesic_bools(calc, span_fields):
    """Samplewise: induced derivatives of spanning fields stay in the span."""
    per_sample = []
    wits = []
    for k in range(len(calc.points)):
        ok = True
        wit = {}
        for x in span_fields:
            for y in span_fields:
                nab = calc.nabla(k, x, y)
                inside = calc.in_span_at(k, span_fields, nab)
                if not wit or not inside:
                    wit = {"pair": f"nabla_{x.key} {y.key}",
                           "value": _vstr(nab), "in_span": str(inside)}
                ok = ok and inside
        per_sample.append(ok)
        wits.append(wit)
    return per_sample, wits


def _defect_vanishes_bools(calc):
    fields = calc.tangent_sample_fields(polynomial=True)
    base = fields[: len(fields) - 3] or fields
    per_sample = []
    wits = []
    for k in range(len(calc.points)):
        ok = True
        wit = {}
        for u in fields:
            for v in base:
                for z in base:
                    d = calc.metric_defect_at(k, u, v, z)
                    if not wit or not d.is_zero():
                        wit = {"triple": f"({u.key},{v.key},{z.key})",
                               "defect": str(d)}
                    ok = ok and d.is_zero()
        per_sample.append(ok)
        wits.append(wit)
    return per_sample, wits


# -- helpers for operator (right-hand) conditions -------------------------------------


def _vstr(v):
    return "(" + ", ".join(str(x) for x in v) + ")"


def _all_pairs(fields):
    return [(x, y) for x in fields for y in fields if x is not y]


def _quantified(calc, tuples, condition):
    """Evaluate a per-tuple exact condition at each sample; all must hold."""
    per_sample = []
    wits = []
    for k in range(len(calc.points)):
        ok = True
        wit = {}
        for args in tuples:
            holds, w = condition(k, *args)
            if not wit or not holds:
                wit = w
            ok = ok and holds
        per_sample.append(ok)
        wits.append(wit)
    return per_sample, wits


def _disjunction(a, b):
    return [x or y for x, y in zip(a, b)]


# -- theorem catalogue ------------------------------------------------------------------


def _thm_3_1(calc):
    rad = calc.span_sample_fields(calc.rad_fields, polynomial=True, prefix="rad")
    lhs, lw = _integrable_bools(calc, calc.rad_fields)
    pairs = _all_pairs(rad)
    p = calc.space.params.p

    def branch_a(k, x, y):
        l1 = calc.a_star(k, calc.j_of(x), y)
        r1 = calc.a_star(k, calc.j_of(y), x)
        l2 = calc.a_star(k, x, y)
        r2 = calc.a_star(k, y, x)
        ok = l1 == r1 and l2 == r2
        return ok, {"X": x.key, "Y": y.key, "A*_JX Y": _vstr(l1), "A*_JY X": _vstr(r1)}

    def branch_b(k, x, y):
        lhs_v = vsub(calc.a_star(k, calc.j_of(x), y), calc.a_star(k, calc.j_of(y), x))
        rhs_v = linalg.vscale(p, vsub(calc.a_star(k, x, y), calc.a_star(k, y, x)))
        return lhs_v == rhs_v, {"X": x.key, "Y": y.key,
                                "lhs": _vstr(lhs_v), "rhs": _vstr(rhs_v)}

    ra, wa = _quantified(calc, pairs, branch_a)
    rb, wb = _quantified(calc, pairs, branch_b)
    rhs = _disjunction(ra, rb)
    wits = [dict(lw[k], **(wa[k] if ra[k] else wb[k])) for k in range(len(lhs))]
    return lhs, rhs, wits, ()


def _thm_3_2(calc):
    scr = calc.span_sample_fields(calc.screen_fields, polynomial=True, prefix="scr")
    lhs, lw = _integrable_bools(calc, calc.screen_fields) if calc.screen_fields else (
        [True] * len(calc.points), [{}] * len(calc.points))
    pairs = _all_pairs(scr)
    p = calc.space.params.p

    def hstar(k, u, v):
        return calc.comps(k, u, calc.pbar(v)).radical

    def branch_a(k, u, v):
        l, r = hstar(k, u, v), hstar(k, v, u)
        return l == r, {"U": u.key, "V": v.key, "h*(U,V)": _vstr(l), "h*(V,U)": _vstr(r)}

    def branch_b(k, u, v):
        lv = vsub(hstar(k, u, calc.j_of(v)), hstar(k, v, calc.j_of(u)))
        rv = linalg.vscale(p, vsub(hstar(k, u, v), hstar(k, v, u)))
        return lv == rv, {"U": u.key, "V": v.key, "lhs": _vstr(lv), "rhs": _vstr(rv)}

    ra, wa = _quantified(calc, pairs, branch_a)
    rb, wb = _quantified(calc, pairs, branch_b)
    rhs = _disjunction(ra, rb)
    wits = [dict(lw[k], **(wa[k] if ra[k] else wb[k])) for k in range(len(lhs))]
    return lhs, rhs, wits, ()


def _thm_3_3(calc):
    lhs, lw = _defect_vanishes_bools(calc)
    rad = calc.span_sample_fields(calc.rad_fields, polynomial=True, prefix="rad")
    tang = calc.tangent_sample_fields(polynomial=True)
    p = calc.space.params.p

    def cond(k, xi, u):
        lv = calc.a_star(k, calc.j_of(xi), u)
        rv = linalg.vscale(p, calc.a_star(k, xi, u))
        return lv == rv, {"xi": xi.key, "U": u.key,
                          "A*_Jxi U": _vstr(lv), "p A*_xi U": _vstr(rv)}

    rhs, rw = _quantified(calc, [(xi, u) for xi in rad for u in tang], cond)
    wits = [dict(lw[k], **rw[k]) for k in range(len(lhs))]
    return lhs, rhs, wits, ()


def _thm_3_4(calc):
    lhs, lw = _totally_geodesic_bools(calc, calc.rad_fields)
    rad = calc.span_sample_fields(calc.rad_fields, polynomial=True, prefix="rad")
    scr = calc.span_sample_fields(calc.screen_fields, polynomial=True, prefix="scr")
    p = calc.space.params.p

    def cond(k, xi, u):
        lv = calc.comps(k, xi, calc.j_of(u)).ltr
        rv = linalg.vscale(p, calc.comps(k, xi, u).ltr)
        return lv == rv, {"xi": xi.key, "U": u.key,
                          "h_l(xi,JU)": _vstr(lv), "p h_l(xi,U)": _vstr(rv)}

    rhs, rw = _quantified(calc, [(xi, u) for xi in rad for u in scr], cond)
    wits = [dict(lw[k], **rw[k]) for k in range(len(lhs))]
    return lhs, rhs, wits, ()


def _thm_3_5(calc):
    lhs, lw = _totally_geodesic_bools(calc, calc.screen_fields)
    scr = calc.span_sample_fields(calc.screen_fields, polynomial=True, prefix="scr")
    p = calc.space.params.p

    def cond(k, u, v):
        lv = calc.comps(k, u, calc.pbar(calc.j_of(v))).radical
        rv = linalg.vscale(p, calc.comps(k, u, calc.pbar(v)).radical)
        return lv == rv, {"U": u.key, "V": v.key,
                          "h*(U,JV)": _vstr(lv), "p h*(U,V)": _vstr(rv)}

    rhs, rw = _quantified(calc, [(u, v) for u in scr for v in scr], cond)
    wits = [dict(lw[k], **rw[k]) for k in range(len(lhs))]
    return lhs, rhs, wits, ()


def _thm_4_1(calc):
    lhs, lw = _integrable_bools(calc, calc.l_fields)
    lf = calc.span_sample_fields(calc.l_fields, polynomial=True, prefix="L")
    p, q = calc.space.params.p, calc.space.params.q

    def cond(k, u, w):
        jw = calc.j_of(w)
        ju = calc.j_of(u)
        lv = calc.comps(k, jw, ju).ltr
        rv = vadd(
            linalg.vscale(p, calc.comps(k, u, jw).ltr),
            linalg.vscale(q, calc.comps(k, u, w).ltr),
        )
        return lv == rv, {"U": u.key, "W": w.key,
                          "h_l(JW,JU)": _vstr(lv), "p h_l(U,JW)+q h_l(U,W)": _vstr(rv)}

    rhs, rw = _quantified(calc, _all_pairs(lf), cond)
    wits = [dict(lw[k], **rw[k]) for k in range(len(lhs))]
    return lhs, rhs, wits, ()


def _thm_4_2(calc):
    lhs, lw = _integrable_bools(calc, calc.rad_fields)
    rad = calc.span_sample_fields(calc.rad_fields, polynomial=False, prefix="rad")
    p = calc.space.params.p
    pairs = _all_pairs(rad) or [(x, x) for x in rad]

    def diff_term(k, u, w):
        return vsub(
            calc.comps(k, u, calc.j_of(w)).screen,
            calc.comps(k, w, calc.j_of(u)).screen,
        )

    def c417(k, u, w):
        lv = diff_term(k, u, w)
        rv = linalg.vscale(p, vsub(calc.a_star(k, u, w), calc.a_star(k, w, u)))
        return lv == rv, {"U": u.key, "W": w.key, "lhs": _vstr(lv), "rhs": _vstr(rv)}

    def c418(k, u, w):
        d = diff_term(k, u, w)
        lv = calc.j_vec(d)
        rv = linalg.vscale(p, d)
        return lv == rv, {"U": u.key, "W": w.key, "J d": _vstr(lv), "p d": _vstr(rv)}

    ra, wa = _quantified(calc, pairs, c417)
    rb, wb = _quantified(calc, pairs, c418)
    rhs = _disjunction(ra, rb)
    wits = [dict(lw[k], **(wa[k] if ra[k] else wb[k])) for k in range(len(lhs))]
    notes = (
        "the screen-level derivative of a non-tangent argument is read as the "
        "screen part of the induced derivative; J acts on ambient representatives",
    )
    return lhs, rhs, wits, notes


def _thm_4_3(calc):
    lhs, lw = _integrable_bools(calc, calc.screen_fields)
    scr = calc.span_sample_fields(calc.screen_fields, polynomial=False, prefix="scr")
    p = calc.space.params.p
    pairs = _all_pairs(scr)

    def c420(k, u, w):
        lv = vsub(
            calc.comps(k, u, calc.j_of(w)).screen,
            calc.comps(k, w, calc.j_of(u)).screen,
        )
        rv = linalg.vscale(p, vsub(
            calc.comps(k, u, w).screen, calc.comps(k, w, u).screen))
        return lv == rv, {"U": u.key, "W": w.key, "lhs": _vstr(lv), "rhs": _vstr(rv)}

    def c421(k, u, w):
        lv = calc.comps(k, u, calc.j_of(w)).screen
        rv = calc.comps(k, w, calc.j_of(u)).screen
        return lv == rv, {"U": u.key, "W": w.key,
                          "nabla*_U JW": _vstr(lv), "nabla*_W JU": _vstr(rv)}

    ra, wa = _quantified(calc, pairs, c420)
    rb, wb = _quantified(calc, pairs, c421)
    rhs = _disjunction(ra, rb)
    wits = [dict(lw[k], **(wa[k] if ra[k] else wb[k])) for k in range(len(lhs))]
    notes = (
        "the statement concerns the screen distribution; the condition is "
        "checked for screen fields",
    )
    return lhs, rhs, wits, notes


def _thm_4_4(calc):
    lhs, lw = _defect_vanishes_bools(calc)
    rad = calc.span_sample_fields(calc.rad_fields, polynomial=False, prefix="rad")
    tang = calc.tangent_sample_fields(polynomial=False)
    p, q = calc.space.params.p, calc.space.params.q

    def c423(k, xi, u):
        lv = calc.comps(k, u, calc.j_of(xi)).screen
        rv = linalg.vscale(-p, calc.a_star(k, xi, u))
        return lv == rv, {"xi": xi.key, "U": u.key,
                          "nabla*_U Jxi": _vstr(lv), "-p A*_xi U": _vstr(rv)}

    def c424(k, xi, u):
        v = linalg.vscale(q, calc.a_star(k, xi, u))
        return vec_is_zero(v), {"xi": xi.key, "U": u.key, "q A*_xi U": _vstr(v)}

    tuples = [(xi, u) for xi in rad for u in tang]
    ra, wa = _quantified(calc, tuples, c423)
    rb, wb = _quantified(calc, tuples, c424)
    rhs = _disjunction(ra, rb)
    wits = [dict(lw[k], **(wa[k] if ra[k] else wb[k])) for k in range(len(lhs))]
    return lhs, rhs, wits, ()


def _thm_4_5(calc):
    lhs, lw = _totally_geodesic_bools(calc, calc.rad_fields)
    rad = calc.span_sample_fields(calc.rad_fields, polynomial=False, prefix="rad")
    scr = calc.span_sample_fields(calc.screen_fields, polynomial=False, prefix="scr")
    p = calc.space.params.p

    def cond(k, xi, u):
        lv = calc.comps(k, xi, calc.j_of(u)).screen
        rv = linalg.vscale(p, calc.comps(k, xi, u).screen)
        return lv == rv, {"xi": xi.key, "U": u.key,
                          "nabla*_xi JU": _vstr(lv), "p nabla*_xi U": _vstr(rv)}

    rhs, rw = _quantified(calc, [(xi, u) for xi in rad for u in scr], cond)
    wits = [dict(lw[k], **rw[k]) for k in range(len(lhs))]
    return lhs, rhs, wits, ()


def _thm_4_6(calc):
    lhs, lw = _totally_geodesic_bools(calc, calc.screen_fields)
    scr = calc.span_sample_fields(calc.screen_fields, polynomial=False, prefix="scr")
    p = calc.space.params.p

    def cond(k, u, v):
        lv = calc.comps(k, u, calc.j_of(v)).screen
        rv = linalg.vscale(p, calc.comps(k, u, v).screen)
        return lv == rv, {"U": u.key, "V": v.key,
                          "nabla*_U JV": _vstr(lv), "p nabla*_U V": _vstr(rv)}

    rhs, rw = _quantified(calc, [(u, v) for u in scr for v in scr], cond)
    wits = [dict(lw[k], **rw[k]) for k in range(len(lhs))]
    return lhs, rhs, wits, ()


_CATALOG = {
    "3.1": ("invariant", "radical integrability vs radical shape operators", _thm_3_1),
    "3.2": ("invariant", "screen integrability vs screen fundamental form", _thm_3_2),
    "3.3": ("invariant", "metric induced connection vs radical shape operators", _thm_3_3),
    "3.4": ("invariant", "radical totally geodesic vs transversal form", _thm_3_4),
    "3.5": ("invariant", "screen totally geodesic vs screen fundamental form", _thm_3_5),
    "4.1": ("screen-semi-invariant", "invariant-part integrability vs transversal form", _thm_4_1),
    "4.2": ("screen-semi-invariant", "radical integrability vs screen derivatives", _thm_4_2),
    "4.3": ("screen-semi-invariant", "screen integrability vs screen derivatives", _thm_4_3),
    "4.4": ("screen-semi-invariant", "metric induced connection vs radical shape operator", _thm_4_4),
    "4.5": ("screen-semi-invariant", "radical totally geodesic vs screen derivatives", _thm_4_5),
    "4.6": ("screen-semi-invariant", "screen totally geodesic vs screen derivatives", _thm_4_6),
}

INTEGRABILITY_IDS = ("3.1", "3.2", "4.1", "4.2", "4.3")
METRIC_IDS = ("3.3", "4.4")
FOLIATION_IDS = ("3.4", "3.5", "4.5", "4.6")


def _run_theorem(calc: FrameCalculus, tid: str) -> TheoremReport:
    kind_needed, rule, fn = _CATALOG[tid]
    if calc.kind != kind_needed:
        return _not_applicable(tid, rule, calc.kind)
    lhs, rhs, wits, notes = fn(calc)
    return _assemble(calc, tid, rule, lhs, rhs, wits, notes)


def verify_integrability_theorems(calc: FrameCalculus, ids=INTEGRABILITY_IDS):
    return [_run_theorem(calc, t) for t in ids if t in INTEGRABILITY_IDS]


def verify_metric_connection_theorems(calc: FrameCalculus, ids=METRIC_IDS):
    return [_run_theorem(calc, t) for t in ids if t in METRIC_IDS]


def verify_foliation_theorems(calc: FrameCalculus, ids=FOLIATION_IDS):
    return [_run_theorem(calc, t) for t in ids if t in FOLIATION_IDS]


# -- unconditional decomposition identities -----------------------------------------------


def _identity_report(calc, tid, rule, tuples, check, notes=()):
    per_sample = []
    wits = []
    for k in range(len(calc.points)):
        ok = True
        wit = {}
        for args in tuples:
            holds, w = check(k, *args)
            if not wit or not holds:
                wit = w
            ok = ok and holds
        per_sample.append(ok)
        wits.append(wit)
    lhs = [True] * len(per_sample)
    return _assemble(calc, tid, rule, lhs, per_sample, wits, notes)


def _lemma_3_1(calc: FrameCalculus) -> TheoremReport:
    fields = calc.tangent_sample_fields(polynomial=True)
    base = fields[: len(fields) - 3] or fields
    J = calc.j_vec

    def check(k, u, v):
        c = calc.comps(k, u, v)
        sv = calc.j_of(calc.pbar(v))
        lv = calc.j_of(calc.qbar(v))
        csv = calc.comps(k, u, sv)
        clv = calc.comps(k, u, lv)
        cjv = calc.comps(k, u, calc.j_of(v))
        ok = True
        # tangential screen part: S nabla_U V = nabla*_U SV - A*_LV U
        ok = ok and J(c.screen) == vadd(csv.screen, clv.screen)
        # tangential radical part: L nabla_U V = h*(U, SV) + nabla*t_U LV
        ok = ok and J(c.radical) == vadd(csv.radical, clv.radical)
        # transversal parts
        ok = ok and J(c.ltr) == cjv.ltr
        ok = ok and J(c.coscreen) == cjv.coscreen
        # combined tangential statement
        ok = ok and J(c.tangent()) == vadd(csv.tangent(), clv.tangent())
        return ok, {
            "point": str(calc.points[k]), "U": u.key, "V": v.key,
            "J h_l(U,V)": _vstr(J(c.ltr)), "h_l(U,JV)": _vstr(cjv.ltr),
        }

    return _identity_report(
        calc, "lemma3.1",
        "splitting identities of the invariant case",
        [(u, v) for u in fields for v in base],
        check,
        ("the radical-level derivative is taken along the first argument "
         "in the combined identity",),
    )


def _prop_4_3(calc: FrameCalculus) -> TheoremReport:
    fields = calc.tangent_sample_fields(polynomial=True)
    lf = calc.span_sample_fields(calc.l_fields, polynomial=True, prefix="L")
    J = calc.j_vec

    def check(k, u, v):
        c = calc.comps(k, u, v)
        jv = calc.j_of(v)
        cjv = calc.comps(k, u, jv)
        ok = True
        # J nabla_U V = nabla*_U JV + h*(U, JV) - J h_l(U, V)
        ok = ok and J(c.tangent()) == vsub(cjv.tangent(), J(c.ltr))
        # h^l(U, JV) = 0
        ok = ok and vec_is_zero(cjv.ltr)
        # h^s(U, JV) = J h^s(U, V)
        ok = ok and cjv.coscreen == J(c.coscreen)
        return ok, {
            "point": str(calc.points[k]), "U": u.key, "V": v.key,
            "h_l(U,JV)": _vstr(cjv.ltr), "h_s(U,JV)": _vstr(cjv.coscreen),
        }

    return _identity_report(
        calc, "prop4.3",
        "splitting identities of the screen semi-invariant case",
        [(u, v) for u in fields for v in lf],
        check,
        ("second arguments range over the invariant part L, where the "
         "splitting identities are defined",),
    )


def verify_structure_lemmas(calc: FrameCalculus):
    """Both unconditional identity packages, gated by the structure kind."""
    out = []
    if calc.kind == "invariant":
        out.append(_lemma_3_1(calc))
    else:
        out.append(_not_applicable(
            "lemma3.1", "splitting identities of the invariant case", calc.kind))
    if calc.kind == "screen-semi-invariant":
        out.append(_prop_4_3(calc))
    else:
        out.append(_not_applicable(
            "prop4.3", "splitting identities of the screen semi-invariant case",
            calc.kind))
    return out


ALL_THEOREM_IDS = tuple(_CATALOG) + ("lemma3.1", "prop4.3")


def verify(calc: FrameCalculus, ids) -> list:
    """Dispatch a list of check ids to their verifiers."""
    out = []
    for tid in ids:
        if tid in _CATALOG:
            out.append(_run_theorem(calc, tid))
        elif tid == "lemma3.1":
            out.append(verify_structure_lemmas(calc)[0])
        elif tid == "prop4.3":
            out.append(verify_structure_lemmas(calc)[1])
        else:
            raise WrongStructureKind(f"unknown check id {tid!r}")
    return out

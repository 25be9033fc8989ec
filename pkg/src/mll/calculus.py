"""Polynomial immersions, exact differentiation, and the induced-derivative
objects of a lightlike submanifold.

The decomposition is built once symbolically over the rational-function
field of the chart, which yields differentiable frames for the radical,
screen and transversal bundles.  Evaluating those frames at the sample
points reproduces the pointwise construction, and every projection-type
operator (induced connection, second fundamental forms, shape operators,
screen-level objects) is obtained by resolving an exact ambient derivative
against the evaluated bases.
"""

from __future__ import annotations

from fractions import Fraction

from . import bundles, linalg
from .bundles import BundleDecomposition, Components
from .errors import (
    MllError,
    NoSolution,
    NonGenericSample,
    NotTangent,
)
from .poly import Poly, RatF
from .scalar import MetallicScalar
from .structure import AmbientSpace


# -- basic exact operators on chart/ambient fields ------------------------------


class ImmersionInstance:
    """A polynomial immersion with named tangent frames and sample points."""

    __slots__ = ("space", "chart_dim", "phi", "named_frames", "sample_points")

    def __init__(self, space: AmbientSpace, chart_dim: int, phi,
                 named_frames=None, sample_points=()):
        self.space = space
        self.chart_dim = chart_dim
        self.phi = tuple(phi)
        if len(self.phi) != space.dim:
            raise MllError("immersion has wrong number of components")
        self.named_frames = dict(named_frames or {})
        pts = []
        for pt in sample_points:
            pts.append(tuple(Fraction(x) for x in pt))
        self.sample_points = tuple(pts)
        if not self.sample_points:
            raise MllError("at least one sample point is required")
        jac = jacobian_frame(self)
        for pt in self.sample_points:
            scalars = [MetallicScalar(x, 0, space.params) for x in pt]
            frame = [[c.eval(scalars) for c in z] for z in jac]
            if linalg.rank(frame) != chart_dim:
                raise NonGenericSample(
                    f"jacobian rank drops at sample point {pt}"
                )


def jacobian_frame(inst: ImmersionInstance):
    """Coordinate tangent frames Z_i = d(phi)/d(u_i), exact polynomials."""
    return tuple(
        tuple(c.diff(i) for c in inst.phi) for i in range(inst.chart_dim)
    )


def ambient_derivative(inst: ImmersionInstance, X, Y):
    """Flat ambient derivative: (D_X Y)^k = sum_i X^i dY^k/du_i."""
    m = len(X)
    out = []
    for comp in Y:
        acc = X[0] * comp.diff(0)
        for i in range(1, m):
            acc = acc + X[i] * comp.diff(i)
        out.append(acc)
    return tuple(out)


def lie_bracket(inst: ImmersionInstance, X, Y):
    """[X, Y]^j = sum_i (X^i dY^j/du_i - Y^i dX^j/du_i) in chart coordinates."""
    m = len(X)
    out = []
    for j in range(m):
        acc = X[0] * Y[j].diff(0) - Y[0] * X[j].diff(0)
        for i in range(1, m):
            acc = acc + X[i] * Y[j].diff(i) - Y[i] * X[j].diff(i)
        out.append(acc)
    return tuple(out)


def _eval_entry(x, point):
    if isinstance(x, (RatF, Poly)):
        return x.eval(point)
    return x


def eval_vec(vec, point):
    return tuple(_eval_entry(x, point) for x in vec)


# -- fields ------------------------------------------------------------------------


class Field:
    """A vector field along the submanifold: ambient components, and chart
    coefficients when tangent."""

    __slots__ = ("key", "chart", "amb")

    def __init__(self, key: str, chart, amb):
        self.key = key
        self.chart = tuple(chart) if chart is not None else None
        self.amb = tuple(amb)

    def __repr__(self):
        return f"Field({self.key!r})"


def _lcg_stream(seed: int):
    state = (seed & 0x7FFFFFFF) or 1
    while True:
        state = (1103515245 * state + 12345) % (1 << 31)
        yield state


class FrameCalculus:
    """Symbolic bundle frames plus exact pointwise projection operators."""

    def __init__(self, inst: ImmersionInstance, screen_hint=None,
                 allow_repair: bool = True):
        self.inst = inst
        self.space = inst.space
        m = inst.chart_dim
        dim = self.space.dim
        params = self.space.params

        self.jac_polys = jacobian_frame(inst)
        self.jac_sym = tuple(
            tuple(RatF.from_poly(c) for c in z) for z in self.jac_polys
        )

        hint = None
        self.screen_source = "default"
        if screen_hint is not None and len(screen_hint) > 0:
            hint = []
            for item in screen_hint:
                if isinstance(item, int):
                    hint.append(item)
                else:
                    # chart-coefficient vector -> symbolic ambient vector
                    chart = [
                        RatF.from_poly(c) if isinstance(c, Poly) else c
                        for c in item
                    ]
                    hint.append(self._push_forward(chart))
            self.screen_source = "hint"

        dec = bundles.build_decomposition(self.space, self.jac_sym, screen_hint=hint)
        inv = bundles.invariance_report(self.space, dec)
        self.ssi = None
        if inv.structure_kind == "invariant":
            self.kind = "invariant"
        else:
            ssi = bundles.screen_semi_invariant_report(
                self.space, dec, allow_repair=(hint is None and allow_repair)
            )
            self.ssi = ssi
            if ssi.holds:
                self.kind = "screen-semi-invariant"
                dec = ssi.decomp
                if ssi.repaired:
                    self.screen_source = "repaired"
            else:
                self.kind = "generic"
        self.sdec = dec
        self.invariance = bundles.invariance_report(self.space, dec)
        self.split = self.ssi.split if (self.ssi and self.ssi.holds) else None

        # evaluated decompositions at the sample points
        self.points = inst.sample_points
        self.points_sc = [
            tuple(MetallicScalar(x, 0, params) for x in pt) for pt in self.points
        ]
        self.pdecs = []
        for pt, pts in zip(self.points, self.points_sc):
            try:
                pdec = BundleDecomposition(
                    pt,
                    [eval_vec(v, pts) for v in dec.tangent_frame],
                    [eval_vec(v, pts) for v in dec.rad_basis],
                    [eval_vec(v, pts) for v in dec.screen_basis],
                    [eval_vec(v, pts) for v in dec.coscreen_basis],
                    [eval_vec(v, pts) for v in dec.ltr_basis],
                )
                pdec.validate(self.space)
            except (ZeroDivisionError, MllError) as exc:
                raise NonGenericSample(
                    f"sample point {pt} is not generic for the construction: {exc}"
                ) from exc
            self.pdecs.append(pdec)

        self.classification = bundles.classify(dec)
        self.classification.structure_kind = self.kind

        self.resolvers = [bundles.Resolver(pdec) for pdec in self.pdecs]

        # named bundle fields and memoization tables
        self._fields: dict = {}
        self._dbar_cache: dict = {}
        self._comps_cache: dict = {}
        self._fieldat_cache: dict = {}
        self._pairing_cache: dict = {}
        self._defect_cache: dict = {}
        self._sdefect_cache: dict = {}
        self._span_cache: dict = {}
        self.rad_fields = [
            self._register(Field(f"xi{i + 1}", self.chart_coords(v), v))
            for i, v in enumerate(dec.rad_basis)
        ]
        self.screen_fields = [
            self._register(Field(f"scr{i + 1}", self.chart_coords(v), v))
            for i, v in enumerate(dec.screen_basis)
        ]
        self.ltr_fields = [
            self._register(Field(f"N{i + 1}", None, v))
            for i, v in enumerate(dec.ltr_basis)
        ]
        self.coscreen_fields = [
            self._register(Field(f"W{i + 1}", None, v))
            for i, v in enumerate(dec.coscreen_basis)
        ]
        self.l_fields = []
        if self.split is not None:
            self.l_fields = [
                self._register(Field(f"L{i + 1}", self.chart_coords(v), v))
                for i, v in enumerate(self.split.L.basis)
            ]

    # -- field bookkeeping ---------------------------------------------------------

    def _register(self, field: Field) -> Field:
        existing = self._fields.get(field.key)
        if existing is not None:
            return existing
        self._fields[field.key] = field
        return field

    def _push_forward(self, chart):
        """Ambient symbolic vector of a chart-coefficient field."""
        acc = tuple(c * Fraction(0) for c in self.jac_sym[0])
        for coeff, z in zip(chart, self.jac_sym):
            acc = linalg.vadd(acc, linalg.vscale(coeff, z))
        return acc

    def chart_coords(self, amb):
        """Chart coefficients of a tangent ambient field; NotTangent if none."""
        dim = self.space.dim
        m = self.inst.chart_dim
        cols = [[self.jac_sym[i][k] for i in range(m)] for k in range(dim)]
        try:
            return linalg.solve(cols, list(amb))
        except NoSolution:
            raise NotTangent("ambient field is not tangent along the chart")

    def chart_field(self, key: str, chart) -> Field:
        if key in self._fields:
            return self._fields[key]
        chart = [RatF.from_poly(c) if isinstance(c, Poly) else c for c in chart]
        return self._register(Field(key, chart, self._push_forward(chart)))

    def coordinate_field(self, i: int) -> Field:
        m = self.inst.chart_dim
        params = self.space.params
        chart = [
            RatF.constant(1 if j == i else 0, m, params) for j in range(m)
        ]
        return self.chart_field(f"d/du{i + 1}", chart)

    def j_of(self, field: Field) -> Field:
        key = f"J({field.key})"
        if key in self._fields:
            return self._fields[key]
        amb = self.space.apply(field.amb)
        try:
            chart = self.chart_coords(amb)
        except NotTangent:
            chart = None
        return self._register(Field(key, chart, amb))

    def pbar(self, field: Field) -> Field:
        """Screen-component field of a tangent field."""
        return self._tangent_part(field, screen=True)

    def qbar(self, field: Field) -> Field:
        """Radical-component field of a tangent field."""
        return self._tangent_part(field, screen=False)

    def _tangent_part(self, field: Field, screen: bool) -> Field:
        tag = "P" if screen else "Q"
        key = f"{tag}({field.key})"
        if key in self._fields:
            return self._fields[key]
        if field.chart is None:
            raise NotTangent(f"{field.key} is not tangent")
        basis_fields = self.screen_fields + self.rad_fields
        cols = [
            [bf.chart[i] for bf in basis_fields]
            for i in range(self.inst.chart_dim)
        ]
        coeffs = linalg.solve(cols, list(field.chart))
        ns = len(self.screen_fields)
        chosen = (
            list(zip(coeffs[:ns], self.screen_fields))
            if screen
            else list(zip(coeffs[ns:], self.rad_fields))
        )
        m = self.inst.chart_dim
        params = self.space.params
        chart = [RatF.constant(0, m, params)] * m
        for c, bf in chosen:
            chart = [a + c * b for a, b in zip(chart, bf.chart)]
        return self._register(Field(key, chart, self._push_forward(chart)))

    def combo_fields(self, base, count=3, seed=0xC0FFEE, polynomial=True,
                     prefix="cmb"):
        """Deterministic pseudo-random combinations of base fields."""
        m = self.inst.chart_dim
        params = self.space.params
        stream = _lcg_stream(seed)
        consts = (1, 2, -1, 3, -2)
        out = []
        for j in range(count):
            chart = [RatF.constant(0, m, params)] * m
            keyparts = []
            for bf in base:
                c0 = consts[next(stream) % len(consts)]
                coeff = Poly.constant(c0, m, params)
                if polynomial and next(stream) % 2 == 0:
                    coeff = coeff + Poly.variable(next(stream) % m, m, params)
                coeff = RatF.from_poly(coeff)
                chart = [a + coeff * b for a, b in zip(chart, bf.chart)]
                keyparts.append(bf.key)
            key = f"{prefix}{j + 1}(" + ",".join(keyparts) + ")"
            out.append(self.chart_field(key, chart))
        return out

    def tangent_sample_fields(self, polynomial=True):
        """Coordinate frames, distinct named frames, and deterministic
        combinations."""
        base = [self.coordinate_field(i) for i in range(self.inst.chart_dim)]
        for name, chart in sorted(self.inst.named_frames.items()):
            f = self.chart_field(name, chart)
            if not any(
                all(a == b for a, b in zip(f.chart, g.chart)) for g in base
            ):
                base.append(f)
        return base + self.combo_fields(base, polynomial=polynomial)

    def span_sample_fields(self, span_fields, polynomial, prefix):
        """Spanning fields of a distribution plus deterministic combinations."""
        if not span_fields:
            return []
        return list(span_fields) + self.combo_fields(
            span_fields, polynomial=polynomial, prefix=prefix
        )

    # -- exact derivative machinery ---------------------------------------------------

    def dbar_sym(self, U: Field, Y: Field):
        """Symbolic flat derivative of Y along the tangent direction U."""
        if U.chart is None:
            raise NotTangent(f"cannot differentiate along {U.key}")
        ck = (U.key, Y.key)
        if ck not in self._dbar_cache:
            self._dbar_cache[ck] = ambient_derivative(self.inst, U.chart, Y.amb)
        return self._dbar_cache[ck]

    def dbar_at(self, k: int, U: Field, Y: Field):
        return eval_vec(self.dbar_sym(U, Y), self.points_sc[k])

    def comps(self, k: int, U: Field, Y: Field) -> Components:
        """Resolved components of the ambient derivative at sample k."""
        ck = (k, U.key, Y.key)
        out = self._comps_cache.get(ck)
        if out is None:
            out = self.resolvers[k].resolve(self.dbar_at(k, U, Y))
            self._comps_cache[ck] = out
        return out

    def scalar_derivative(self, U: Field, f: RatF) -> RatF:
        acc = U.chart[0] * f.diff(0)
        for i in range(1, self.inst.chart_dim):
            acc = acc + U.chart[i] * f.diff(i)
        return acc

    def field_at(self, field: Field, k: int):
        ck = (field.key, k)
        out = self._fieldat_cache.get(ck)
        if out is None:
            out = eval_vec(field.amb, self.points_sc[k])
            self._fieldat_cache[ck] = out
        return out

    def pairing_sym(self, X: Field, Y: Field) -> RatF:
        ck = (X.key, Y.key)
        out = self._pairing_cache.get(ck)
        if out is None:
            out = self.space.metric.pairing(X.amb, Y.amb)
            self._pairing_cache[ck] = out
        return out

    def g_at(self, k: int, u, v):
        return self.space.metric.pairing(u, v)

    # -- named operators (all exact, at sample k) ---------------------------------------

    def nabla(self, k, U, V):
        """Induced connection: tangent part of the ambient derivative."""
        return self.comps(k, U, V).tangent()

    def h_l(self, k, U, V):
        return self.comps(k, U, V).ltr

    def h_s(self, k, U, V):
        return self.comps(k, U, V).coscreen

    def nabla_star(self, k, U, Y):
        """Screen part of the induced derivative of Y (Y any field)."""
        return self.comps(k, U, Y).screen

    def h_star(self, k, U, Y):
        """Radical part of the induced derivative of Y."""
        return self.comps(k, U, Y).radical

    def a_star(self, k, xi: Field, U: Field):
        """Radical shape operator: minus the screen part of the induced
        derivative of the radical field xi along U."""
        return linalg.vneg(self.comps(k, U, xi).screen)

    def nabla_star_t(self, k, xi: Field, U: Field):
        return self.comps(k, U, xi).radical

    def weingarten_ltr(self, k, U: Field, i: int):
        """(A_N U, nabla^l_U N, D^s(U, N)) for the i-th transversal field."""
        c = self.comps(k, U, self.ltr_fields[i])
        return linalg.vneg(c.tangent()), c.ltr, c.coscreen

    def weingarten_cos(self, k, U: Field, i: int):
        """(A_W U, D^l(U, W), nabla^s_U W) for the i-th co-screen field."""
        c = self.comps(k, U, self.coscreen_fields[i])
        return linalg.vneg(c.tangent()), c.ltr, c.coscreen

    def metric_defect_at(self, k, U: Field, V: Field, Z: Field):
        """(nabla_U g)(V, Z) = U(g(V,Z)) - g(nabla_U V, Z) - g(V, nabla_U Z)."""
        ck = (k, U.key, V.key, Z.key)
        out = self._defect_cache.get(ck)
        if out is None:
            f = self.pairing_sym(V, Z)
            uf = self.scalar_derivative(U, f).eval(self.points_sc[k])
            t1 = self.g_at(k, self.nabla(k, U, V), self.field_at(Z, k))
            t2 = self.g_at(k, self.field_at(V, k), self.nabla(k, U, Z))
            out = uf - t1 - t2
            self._defect_cache[ck] = out
        return out

    def screen_defect_at(self, k, U: Field, V: Field, Z: Field):
        """(nabla*_U g)(Pbar V, Pbar Z); vanishes identically."""
        ck = (k, U.key, V.key, Z.key)
        out = self._sdefect_cache.get(ck)
        if out is None:
            pv, pz = self.pbar(V), self.pbar(Z)
            f = self.pairing_sym(pv, pz)
            uf = self.scalar_derivative(U, f).eval(self.points_sc[k])
            t1 = self.g_at(k, self.nabla_star(k, U, pv), self.field_at(pz, k))
            t2 = self.g_at(k, self.field_at(pv, k), self.nabla_star(k, U, pz))
            out = uf - t1 - t2
            self._sdefect_cache[ck] = out
        return out

    def j_vec(self, v):
        return self.space.apply(v)

    def in_span_at(self, k, fields, vec) -> bool:
        """Whether vec lies in the span of the fields' values at sample k."""
        ck = (k,) + tuple(f.key for f in fields)
        span = self._span_cache.get(ck)
        if span is None:
            vals = [self.field_at(f, k) for f in fields]
            span = linalg.Subspace.span(vals, self.space.dim)
            self._span_cache[ck] = span
        return span.contains(vec)


# -- Gauss-Weingarten record -------------------------------------------------------------


class GaussWeingartenData:
    """All first-order objects for a pair (U, V) at one sample point.

    Transversal-indexed objects are dictionaries keyed by the basis index.
    """

    __slots__ = (
        "point", "nabla", "h_l", "h_s", "h_l_coeffs", "h_s_coeffs",
        "a_n", "nabla_l", "d_s", "a_w", "d_l", "nabla_s",
        "nabla_star", "h_star", "a_star", "nabla_star_t",
    )

    def __init__(self, **kw):
        for slot in self.__slots__:
            setattr(self, slot, kw[slot])


def gauss_weingarten(calc: FrameCalculus, k: int, U: Field, V: Field) -> GaussWeingartenData:
    """Resolve every first-order object for the pair (U, V) at sample k."""
    pdec = calc.pdecs[k]
    c = calc.comps(k, U, V)
    full = eval_vec(calc.dbar_sym(U, V), calc.points_sc[k])
    if c.total() != full:
        raise AssertionError("component reassembly failed")
    g = calc.space.metric.pairing
    # h^l coefficients along N_i read off by pairing with xi_i, and h^s
    # coefficients by solving in the co-screen Gram
    h_l_coeffs = tuple(g(full, xi) for xi in pdec.rad_basis)
    if pdec.coscreen_basis:
        gram_cos = linalg.gram(calc.space.metric, pdec.coscreen_basis)
        rhs = [g(full, w) for w in pdec.coscreen_basis]
        h_s_coeffs = linalg.solve(gram_cos, rhs)
    else:
        h_s_coeffs = ()
    pv = calc.pbar(V)
    cpv = calc.comps(k, U, pv)
    a_n, nabla_l, d_s = {}, {}, {}
    for i in range(len(calc.ltr_fields)):
        a_n[i], nabla_l[i], d_s[i] = calc.weingarten_ltr(k, U, i)
    a_w, d_l, nabla_s = {}, {}, {}
    for i in range(len(calc.coscreen_fields)):
        a_w[i], d_l[i], nabla_s[i] = calc.weingarten_cos(k, U, i)
    a_star, nabla_star_t = {}, {}
    for i, xi in enumerate(calc.rad_fields):
        a_star[i] = calc.a_star(k, xi, U)
        nabla_star_t[i] = calc.nabla_star_t(k, xi, U)
    return GaussWeingartenData(
        point=calc.points[k],
        nabla=c.tangent(),
        h_l=c.ltr,
        h_s=c.coscreen,
        h_l_coeffs=h_l_coeffs,
        h_s_coeffs=tuple(h_s_coeffs),
        a_n=a_n,
        nabla_l=nabla_l,
        d_s=d_s,
        a_w=a_w,
        d_l=d_l,
        nabla_s=nabla_s,
        nabla_star=cpv.screen,
        h_star=cpv.radical,
        a_star=a_star,
        nabla_star_t=nabla_star_t,
    )


# -- identity suite --------------------------------------------------------------------------


class CheckRow:
    """One verified statement: id, human description, status, witnesses."""

    __slots__ = ("id", "rule", "status", "witnesses")

    def __init__(self, id: str, rule: str, status: str, witnesses: dict):
        self.id = id
        self.rule = rule
        self.status = status
        self.witnesses = witnesses


def _vec_str(v):
    return "(" + ", ".join(str(x) for x in v) + ")"


def _row(rid, rule, failures, sample_witness):
    if failures:
        return CheckRow(rid, rule, "fail", failures[0])
    return CheckRow(rid, rule, "pass", sample_witness or {})


def identity_suite(calc: FrameCalculus) -> list:
    """Exact checks of the metric-connection identities at every sample."""
    fields = calc.tangent_sample_fields(polynomial=True)
    base = fields[: len(fields) - 3] or fields
    rows = []
    nsamples = len(calc.points)
    g = calc.space.metric.pairing

    def run(rid, rule, tuples, check):
        failures = []
        witness = {}
        for args in tuples:
            for k in range(nsamples):
                ok, wit = check(k, *args)
                if not witness:
                    witness = wit
                if not ok:
                    failures.append(wit)
        rows.append(_row(rid, rule, failures, witness))

    # 2.9: g(h^s(U,V), W) + g(V, D^l(U,W)) = g(A_W U, V)
    def chk_29(k, U, V, i):
        hs = calc.h_s(k, U, V)
        aw, dl, _ = calc.weingarten_cos(k, U, i)
        w = calc.field_at(calc.coscreen_fields[i], k)
        v = calc.field_at(V, k)
        lhs = g(hs, w) + g(v, dl)
        rhs = g(aw, v)
        return lhs == rhs, {
            "point": str(calc.points[k]), "U": U.key, "V": V.key,
            "W": calc.coscreen_fields[i].key,
            "lhs": str(lhs), "rhs": str(rhs),
        }

    run(
        "2.9",
        "co-screen duality of the shape operator",
        [(U, V, i) for U in fields for V in base
         for i in range(len(calc.coscreen_fields))],
        chk_29,
    )

    # 2.10: g(D^s(U,N), W) = g(N, A_W U)
    def chk_210(k, U, i, j):
        _, _, ds = calc.weingarten_ltr(k, U, i)
        aw, _, _ = calc.weingarten_cos(k, U, j)
        n = calc.field_at(calc.ltr_fields[i], k)
        w = calc.field_at(calc.coscreen_fields[j], k)
        lhs = g(ds, w)
        rhs = g(n, aw)
        return lhs == rhs, {
            "point": str(calc.points[k]), "U": U.key,
            "N": calc.ltr_fields[i].key, "W": calc.coscreen_fields[j].key,
            "lhs": str(lhs), "rhs": str(rhs),
        }

    run(
        "2.10",
        "transversal/co-screen duality",
        [(U, i, j) for U in fields
         for i in range(len(calc.ltr_fields))
         for j in range(len(calc.coscreen_fields))],
        chk_210,
    )

    # 2.13: g(h^l(U, Pbar V), xi) = g(A*_xi U, Pbar V)
    def chk_213(k, U, V, i):
        pv = calc.pbar(V)
        hl = calc.comps(k, U, pv).ltr
        xi = calc.rad_fields[i]
        lhs = g(hl, calc.field_at(xi, k))
        rhs = g(calc.a_star(k, xi, U), calc.field_at(pv, k))
        return lhs == rhs, {
            "point": str(calc.points[k]), "U": U.key, "V": V.key,
            "xi": xi.key, "lhs": str(lhs), "rhs": str(rhs),
        }

    run(
        "2.13",
        "radical shape operator duality",
        [(U, V, i) for U in fields for V in base
         for i in range(len(calc.rad_fields))],
        chk_213,
    )

    # 2.14: g(h*(U, Pbar V), N) = g(A_N U, Pbar V)
    def chk_214(k, U, V, i):
        pv = calc.pbar(V)
        hstar = calc.comps(k, U, pv).radical
        an, _, _ = calc.weingarten_ltr(k, U, i)
        lhs = g(hstar, calc.field_at(calc.ltr_fields[i], k))
        rhs = g(an, calc.field_at(pv, k))
        return lhs == rhs, {
            "point": str(calc.points[k]), "U": U.key, "V": V.key,
            "N": calc.ltr_fields[i].key, "lhs": str(lhs), "rhs": str(rhs),
        }

    run(
        "2.14",
        "screen fundamental form vs transversal shape operator",
        [(U, V, i) for U in fields for V in base
         for i in range(len(calc.ltr_fields))],
        chk_214,
    )

    # 2.15: g(h^l(U, xi), xi) = 0 and A*_xi xi = 0
    def chk_215(k, U, i):
        xi = calc.rad_fields[i]
        hl = calc.comps(k, U, xi).ltr
        lhs = g(hl, calc.field_at(xi, k))
        astar = calc.a_star(k, xi, xi)
        ok = lhs == 0 and linalg.vec_is_zero(astar)
        return ok, {
            "point": str(calc.points[k]), "U": U.key, "xi": xi.key,
            "g(h_l(U,xi),xi)": str(lhs), "A*_xi xi": _vec_str(astar),
        }

    run(
        "2.15",
        "null second fundamental form on the radical",
        [(U, i) for U in fields for i in range(len(calc.rad_fields))],
        chk_215,
    )

    # 2.16: (nabla_U g)(V, Z) = g(h^l(U,V), Z) + g(h^l(U,Z), V)
    def chk_216(k, U, V, Z):
        lhs = calc.metric_defect_at(k, U, V, Z)
        rhs = g(calc.h_l(k, U, V), calc.field_at(Z, k)) + g(
            calc.h_l(k, U, Z), calc.field_at(V, k)
        )
        return lhs == rhs, {
            "point": str(calc.points[k]), "U": U.key, "V": V.key, "Z": Z.key,
            "lhs": str(lhs), "rhs": str(rhs),
        }

    run(
        "2.16",
        "metric defect of the induced connection",
        [(U, V, Z) for U in fields for V in base for Z in base],
        chk_216,
    )

    # screen-level metric defect must vanish identically
    def chk_star(k, U, V, Z):
        d = calc.screen_defect_at(k, U, V, Z)
        return d == 0, {
            "point": str(calc.points[k]), "U": U.key, "V": V.key, "Z": Z.key,
            "defect": str(d),
        }

    run(
        "screen-metric",
        "screen induced connection is metric",
        [(U, V, Z) for U in fields for V in base for Z in base],
        chk_star,
    )

    return rows


def metric_defect(calc: FrameCalculus) -> list:
    """Defect table: full defect values plus the zero screen-level defect."""
    fields = calc.tangent_sample_fields(polynomial=True)
    base = fields[: len(fields) - 3] or fields
    rows = []
    values = {}
    for U in fields:
        for V in base:
            for Z in base:
                for k in range(len(calc.points)):
                    d = calc.metric_defect_at(k, U, V, Z)
                    if not d.is_zero():
                        values[f"({U.key},{V.key},{Z.key})@{calc.points[k]}"] = str(d)
    rows.append(
        CheckRow(
            "defect-values",
            "nonzero values of the induced-connection metric defect",
            "pass",
            values,
        )
    )
    failures = []
    for U in fields:
        for V in base:
            for Z in base:
                for k in range(len(calc.points)):
                    d = calc.screen_defect_at(k, U, V, Z)
                    if not d.is_zero():
                        failures.append(
                            {"U": U.key, "V": V.key, "Z": Z.key,
                             "point": str(calc.points[k]), "defect": str(d)}
                        )
    rows.append(
        _row(
            "screen-metric",
            "screen induced connection is metric",
            failures,
            {"defect": "0"},
        )
    )
    return rows

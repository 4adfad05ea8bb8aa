"""Hyperbolic semiflow / semicocycle models on the unit disk.

A scenario bundles the conformal representation of the flow (the univalent
map conjugating the flow to a unit-speed translation), a weight function,
and the declared boundary fixed-point data.  Built-in models have closed
forms; inversion falls back to damped Newton continuation seeded from a
precomputed grid.  Everything is immutable after construction and safe to
evaluate concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import expr as ex
from .errors import (
    ConfigError,
    EvaluationError,
    InversionError,
    ModelInconsistencyError,
    OutsideOmegaError,
    PetalExitError,
)

__all__ = [
    "FixedPointDatum",
    "Scenario",
    "parse_scenario",
    "make_builtin",
    "make_parametric",
    "eval_h",
    "eval_h_prime",
    "eval_v",
    "eval_v_prime",
    "eval_h_inverse",
    "flow",
    "cocycle",
    "generator_G",
    "generator_g",
    "alpha_at",
    "beta_at",
    "quasi_random_grid",
    "parse_complex",
    "richardson",
]

DENJOY_WOLFF = "denjoy_wolff"
REPELLING = "repelling"

_LOG_SQRT2P1 = math.log(1.0 + math.sqrt(2.0))
_TRIDENT_SLIT_RE = -0.5 * math.log(2.0)
_ANCHOR_DEPTH = 8.0


@dataclass(frozen=True)
class FixedPointDatum:
    """Boundary fixed point with its flow and cocycle exponents.

    beta_re may be -inf (the weight vanishes faster than any exponential
    along the approach); only the real part feeds the spectral invariants.
    """

    zeta: complex
    alpha: float
    beta_re: float
    beta_im: float = 0.0
    role: str = REPELLING

    def __post_init__(self):
        if self.role not in (DENJOY_WOLFF, REPELLING):
            raise ConfigError(f"unknown fixed point role {self.role!r}")
        if self.role == DENJOY_WOLFF and not self.alpha > 0:
            raise ConfigError("the Denjoy-Wolff point must have alpha > 0")
        if self.role == REPELLING and not self.alpha < 0:
            raise ConfigError("repelling fixed points must have alpha < 0")
        if abs(abs(self.zeta) - 1.0) > 1e-12:
            raise ConfigError("fixed points must lie on the unit circle")


def _validate_fixed_points(fps):
    n_dw = sum(1 for f in fps if f.role == DENJOY_WOLFF)
    if n_dw != 1:
        raise ConfigError(f"exactly one Denjoy-Wolff point required, got {n_dw}")


class Scenario:
    """Immutable model: exponent p, conformal map, weight, fixed points."""

    def __init__(self, p, kind, h=None, v=None, fixed_points=(), weights=(0.0, 0.0, 0.0),
                 closed_inverse=None, in_omega=None, petal_anchors=None, params=None,
                 smoke_test=True):
        if p < 1:
            raise ConfigError(f"p must be >= 1, got {p}")
        _validate_fixed_points(fixed_points) if fixed_points else None
        self.p = float(p)
        self.kind = kind
        self._h = h
        self._v = v
        self._hprime = h.derivative() if h is not None else None
        self._vprime = v.derivative() if v is not None else None
        self.fixed_points = tuple(fixed_points)
        self.weights = tuple(float(x) for x in weights)
        self._closed_inverse = closed_inverse
        self._in_omega = in_omega
        self.params = dict(params or {})
        self._seed_z = None
        self._seed_w = None
        if h is not None and closed_inverse is None:
            self._build_seed_grid()
        self._petal_anchors = dict(petal_anchors) if petal_anchors is not None else None
        if h is not None and smoke_test:
            self._smoke_test()

    # -- plumbing ----------------------------------------------------------

    @property
    def evaluable(self):
        return self._h is not None

    def _require_evaluable(self):
        if not self.evaluable:
            raise EvaluationError("parametric scenarios support only classification")

    def _build_seed_grid(self):
        r = 1.0 - np.geomspace(1.0, 2.0 ** -10, 64)
        r[0] = 1e-3
        theta = 2 * np.pi * np.arange(64) / 64 + 1e-3
        z = (r[:, None] * np.exp(1j * theta)[None, :]).ravel()
        self._seed_z = z
        self._seed_w = self._h(z)

    def _smoke_test(self):
        pts = quasi_random_grid(200, 0.9)
        back = eval_h_inverse(self, self._h(pts))
        err = np.max(np.abs(back - pts))
        if err > 1e-9:
            raise ConfigError(f"round-trip smoke test failed (max error {err:.2e}); "
                              "check branch cuts of the supplied expressions")

    def in_omega(self, w):
        """Membership in the image domain, where known."""
        if self._in_omega is None:
            return np.ones_like(np.asarray(w, dtype=complex), dtype=bool) if isinstance(w, np.ndarray) else True
        return self._in_omega(w)

    def dw_point(self) -> FixedPointDatum:
        return next(f for f in self.fixed_points if f.role == DENJOY_WOLFF)

    def repelling_points(self):
        return [f for f in self.fixed_points if f.role == REPELLING]

    def petal_anchor(self, fp: FixedPointDatum) -> complex:
        """Base point on the backward orbit into the petal attached to fp."""
        if self._petal_anchors is None:
            self._petal_anchors = _compute_petal_anchors(self)
        key = _fp_key(fp.zeta)
        if key not in self._petal_anchors:
            raise EvaluationError(f"no petal anchor available for fixed point {fp.zeta}")
        return self._petal_anchors[key]


def _fp_key(zeta):
    return (round(zeta.real, 9), round(zeta.imag, 9))


def _compute_petal_anchors(scn: Scenario):
    reps = scn.repelling_points()
    if not reps:
        return {}
    anchors = {}
    if scn.kind == "strip_flow":
        midlines = [0.0]
    elif scn.kind == "trident":
        midlines = [math.pi / 4, -math.pi / 4]
    else:
        return {}
    for m in midlines:
        z = eval_h_inverse(scn, complex(-_ANCHOR_DEPTH, m))
        fp = min(reps, key=lambda f: abs(complex(z) - f.zeta))
        anchors[_fp_key(fp.zeta)] = complex(z)
    return anchors


# -- built-in models --------------------------------------------------------

def _weight_exprs(h, d_factor, c, s, d):
    z = ex.var()
    v = None

    def mul(acc, f):
        return f if acc is None else acc * f

    if c != 0.0:
        v = mul(v, ex.apply_fn("exp", h * c))
    if s != 0.0:
        v = mul(v, ex.apply_fn("pow", h.derivative(), -s))
    if d != 0.0:
        if d_factor is None:
            raise ConfigError("weight parameter d is not supported for this model")
        v = mul(v, ex.apply_fn("pow", d_factor(z), d))
    return v if v is not None else ex.const(1.0)


def make_builtin(name, p, a=1.0, c=0.0, s=0.0, d=0.0):
    z = ex.var()
    if name == "strip_flow":
        if a <= 0:
            raise ConfigError("strip_flow parameter a must be positive")
        h = (ex.apply_fn("log", 1 + z) - ex.apply_fn("log", 1 - z)) * (1.0 / a)
        v = _weight_exprs(h, lambda z_: 1 + z_, c, s, d)
        fps = (
            FixedPointDatum(1.0 + 0j, a, c - s * a, role=DENJOY_WOLFF),
            FixedPointDatum(-1.0 + 0j, -a, c + a * (s + d), role=REPELLING),
        )

        def inverse(w):
            e = np.exp(a * np.asarray(w, dtype=complex))
            return (e - 1) / (e + 1)

        half_height = math.pi / (2 * a)

        def inside(w):
            return np.abs(np.imag(w)) < half_height

        return Scenario(p, "strip_flow", h=h, v=v, fixed_points=fps,
                        weights=(c, s, d), closed_inverse=inverse, in_omega=inside,
                        params={"a": a})

    if name == "half_strip":
        u = (1 - z) / (1 + z)
        h = ex.apply_fn("log", u + ex.apply_fn("sqrt", 1 + u * u)) - _LOG_SQRT2P1
        # no repelling point here: the d factor anchors at the regular
        # boundary point z = 1, where it stays bounded and leaves the
        # invariants untouched
        v = _weight_exprs(h, lambda z_: 1 - z_, c, s, d)
        fps = (FixedPointDatum(-1.0 + 0j, 1.0, c - s, role=DENJOY_WOLFF),)

        def inverse(w):
            sh = np.sinh(np.asarray(w, dtype=complex) + _LOG_SQRT2P1)
            return (1 - sh) / (1 + sh)

        def inside(w):
            return (np.abs(np.imag(w)) < math.pi / 2) & (np.real(w) > -_LOG_SQRT2P1)

        return Scenario(p, "half_strip", h=h, v=v, fixed_points=fps,
                        weights=(c, s, d), closed_inverse=inverse, in_omega=inside)

    if name == "trident":
        h = ex.apply_fn("log", 1 + z * z) * 0.5 - ex.apply_fn("log", 1 + z)
        v = _weight_exprs(h, lambda z_: z_ - 1j, c, s, d)
        fps = (
            FixedPointDatum(-1.0 + 0j, 1.0, c - s, role=DENJOY_WOLFF),
            FixedPointDatum(1j, -2.0, c + 2 * (s + d), role=REPELLING),
            FixedPointDatum(-1j, -2.0, c + 2 * s, role=REPELLING),
        )

        def inside(w):
            w = np.asarray(w, dtype=complex)
            on_slit = (np.abs(np.imag(w)) < 1e-13) & (np.real(w) <= _TRIDENT_SLIT_RE)
            return (np.abs(np.imag(w)) < math.pi / 2) & ~on_slit

        return Scenario(p, "trident", h=h, v=v, fixed_points=fps,
                        weights=(c, s, d), in_omega=inside)

    raise ConfigError(f"unknown built-in model {name!r}")


def make_parametric(p, fixed_points):
    _validate_fixed_points(fixed_points)
    return Scenario(p, "parametric", fixed_points=tuple(fixed_points))


def make_expression(p, h_expr, v_expr, fixed_points, petal_anchors=()):
    _validate_fixed_points(fixed_points)
    anchors = {}
    if petal_anchors:
        reps = [f for f in fixed_points if f.role == REPELLING]
        for a in petal_anchors:
            fp = min(reps, key=lambda f: abs(complex(a) - f.zeta))
            anchors[_fp_key(fp.zeta)] = complex(a)
    return Scenario(p, "expression", h=h_expr, v=v_expr,
                    fixed_points=tuple(fixed_points), petal_anchors=anchors or None)


# -- config parsing ---------------------------------------------------------

def parse_complex(text: str) -> complex:
    """Parse 're+im i' complex literals such as '0.3+0.2i', '-1', 'i'."""
    s = text.strip().replace("−", "-").replace(" ", "")
    if not s:
        raise ConfigError("empty complex literal")
    s = s.replace("i", "j")
    if s in ("j", "+j"):
        s = "1j"
    if s == "-j":
        s = "-1j"
    try:
        return complex(s)
    except ValueError as e:
        raise ConfigError(f"malformed complex literal {text!r}") from e


_ROLES = {"dw": DENJOY_WOLFF, "denjoy_wolff": DENJOY_WOLFF,
          "rep": REPELLING, "repelling": REPELLING}


def _parse_fp(text, lineno):
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ConfigError(f"line {lineno}: fp value must be '(zeta, alpha, beta_re, role)'")
    parts = [p.strip() for p in body[1:-1].split(",")]
    if len(parts) != 4:
        raise ConfigError(f"line {lineno}: fp needs 4 fields, got {len(parts)}")
    zeta = parse_complex(parts[0])
    alpha = float(parts[1].replace("−", "-"))
    beta_text = parts[2].replace("−", "-")
    beta_re = float("-inf") if beta_text in ("-inf", "-oo") else float(beta_text)
    role = _ROLES.get(parts[3])
    if role is None:
        raise ConfigError(f"line {lineno}: unknown role {parts[3]!r}")
    return FixedPointDatum(zeta, alpha, beta_re, role=role)


def parse_scenario(config_text: str) -> Scenario:
    """Parse the line-oriented 'key = value' scenario config format."""
    values = {}
    fps = []
    anchors = []
    for lineno, raw in enumerate(config_text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "fp":
            fps.append(_parse_fp(value, lineno))
        elif key == "petal_anchor":
            anchors.append(parse_complex(value))
        elif key in ("p", "model", "a", "c", "s", "d", "h_expr", "v_expr"):
            if key in values:
                raise ConfigError(f"line {lineno}: duplicate key {key!r}")
            values[key] = value
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")

    if "p" not in values:
        raise ConfigError("missing required key 'p'")
    if "model" not in values:
        raise ConfigError("missing required key 'model'")
    try:
        p = float(values["p"].replace("−", "-"))
    except ValueError as e:
        raise ConfigError(f"malformed p value {values['p']!r}") from e
    model = values["model"]

    def num(key, default=0.0):
        if key not in values:
            return default
        try:
            return float(values[key].replace("−", "-"))
        except ValueError as e:
            raise ConfigError(f"malformed {key} value {values[key]!r}") from e

    if model in ("strip_flow", "half_strip", "trident"):
        return make_builtin(model, p, a=num("a", 1.0), c=num("c"), s=num("s"), d=num("d"))
    if model == "parametric":
        if not fps:
            raise ConfigError("parametric model requires at least one fp line")
        return make_parametric(p, fps)
    if model == "expression":
        if "h_expr" not in values:
            raise ConfigError("expression model requires h_expr")
        if not fps:
            raise ConfigError("expression model requires fp lines")
        h = ex.parse_expr(values["h_expr"])
        v = ex.parse_expr(values.get("v_expr", "1"))
        return make_expression(p, h, v, fps, petal_anchors=anchors)
    raise ConfigError(f"unknown model {model!r}")


# -- point evaluation -------------------------------------------------------

def _check_in_disk(z, allow_radius=1.0):
    r = np.abs(np.asarray(z))
    if np.any(r >= allow_radius):
        raise EvaluationError("evaluation requested on or outside the unit disk")


def eval_h(s: Scenario, z):
    s._require_evaluable()
    _check_in_disk(z)
    return s._h(z)


def eval_h_prime(s: Scenario, z):
    s._require_evaluable()
    _check_in_disk(z)
    return s._h.deriv(z)


def eval_v(s: Scenario, z):
    s._require_evaluable()
    _check_in_disk(z)
    return s._v(z)


def eval_v_prime(s: Scenario, z):
    s._require_evaluable()
    _check_in_disk(z)
    return s._v.deriv(z)


def generator_G(s: Scenario, z):
    return 1.0 / eval_h_prime(s, z)


def generator_g(s: Scenario, z):
    s._require_evaluable()
    _check_in_disk(z)
    hj = s._h.jet(z)
    vj = s._v.jet(z)
    return vj.d1 / (vj.f * hj.d1)


# -- inversion and flow -----------------------------------------------------

_NEWTON_BUDGET = 50
_NEWTON_TOL = 1e-13


def _newton_step_batch(s, z, w_target):
    """Damped Newton toward h(z) = w_target, elementwise on arrays.

    The acceptance tolerance is condition-aware: near boundary fixed points
    the map value loses digits to cancellation while the preimage itself
    stays accurate, so the residual floor scales with |h'|.
    """
    z = np.array(z, dtype=complex, copy=True)
    target = np.asarray(w_target, dtype=complex)
    eps = np.finfo(float).eps
    for _ in range(_NEWTON_BUDGET):
        hj = s._h.jet(z)
        resid = hj.f - target
        res = np.abs(resid)
        tol = np.maximum(_NEWTON_TOL * np.maximum(1.0, np.abs(target)),
                         50 * eps * (1.0 + np.abs(hj.d1)))
        if np.all(res < tol):
            return z, True
        step = resid / hj.d1
        factor = np.ones(z.shape)
        cand = z - step
        for _ in range(40):
            bad = np.abs(cand) >= 1.0
            if not np.any(bad):
                break
            factor = np.where(bad, factor / 2, factor)
            cand = z - factor * step
        z = cand
    hj = s._h.jet(z)
    res = np.abs(hj.f - target)
    tol = np.maximum(_NEWTON_TOL * np.maximum(1.0, np.abs(target)),
                     50 * eps * (1.0 + np.abs(hj.d1)))
    return z, bool(np.all(res < tol))


def _continuation_invert(s, w, z0, w0):
    """Follow a straight path in the image domain from w0 to w."""
    w = np.asarray(w, dtype=complex)
    w0 = np.asarray(w0, dtype=complex)
    z = np.array(z0, dtype=complex, copy=True)
    dist = float(np.max(np.abs(w - w0)))
    nsteps = max(1, int(math.ceil(dist / 0.25)))
    for k in range(1, nsteps + 1):
        target = w0 + (w - w0) * (k / nsteps)
        z_prev = np.array(z, copy=True)
        z, ok = _newton_step_batch(s, z, target)
        if not ok:
            # retry the failing leg with a finer subdivision
            sub = w0 + (w - w0) * ((k - 1) / nsteps)
            fine = 8
            for _ in range(3):
                ok = True
                zz = np.array(z_prev, copy=True)
                for m in range(1, fine + 1):
                    tgt = sub + (target - sub) * (m / fine)
                    zz, ok = _newton_step_batch(s, zz, tgt)
                    if not ok:
                        break
                if ok:
                    z = zz
                    break
                fine *= 4
            if not ok:
                res = float(np.max(np.abs(np.asarray(s._h(z)) - target)))
                raise InversionError("Newton inversion failed to converge", residual=res)
    return z


def _trident_waypoints(s, w_from, w_to):
    """Route around the slit: move right first if the leg would cross it."""
    a = complex(w_from)
    b = complex(w_to)
    crosses = (a.imag == 0 and b.imag == 0) or (
        min(a.imag, b.imag) < 0 < max(a.imag, b.imag)
        and min(a.real, b.real) < _TRIDENT_SLIT_RE + 1.0
    )
    if not crosses:
        return [b]
    safe_re = max(a.real, b.real, _TRIDENT_SLIT_RE + 1.0)
    return [complex(safe_re, a.imag), complex(safe_re, b.imag), b]


def eval_h_inverse(s: Scenario, w):
    """Invert the conformal map; Newton continuation when no closed form."""
    s._require_evaluable()
    w_arr = np.asarray(w, dtype=complex)
    scalar = w_arr.ndim == 0
    inside = s.in_omega(w_arr)
    if not np.all(inside):
        raise OutsideOmegaError("target point outside the image domain")
    if s._closed_inverse is not None:
        z = s._closed_inverse(w_arr)
        return complex(z) if scalar else z

    flat = np.atleast_1d(w_arr).ravel()
    out = np.empty(flat.shape, dtype=complex)
    for i, wi in enumerate(flat):
        d2 = np.abs(s._seed_w - wi)
        if s.kind == "trident" and abs(wi.imag) > 1e-13 and wi.real < 0:
            same_side = np.sign(s._seed_w.imag) == np.sign(wi.imag)
            d2 = np.where(same_side, d2, np.inf)
        j = int(np.argmin(d2))
        z = np.array([s._seed_z[j]])
        w_cur = np.array([s._seed_w[j]])
        if s.kind == "trident":
            path = _trident_waypoints(s, complex(w_cur[0]), complex(wi))
        else:
            path = [complex(wi)]
        for wp in path:
            z = _continuation_invert(s, np.array([wp]), z, w_cur)
            w_cur = np.array([wp])
        out[i] = z[0]
    out = out.reshape(np.atleast_1d(w_arr).shape)
    return complex(out.ravel()[0]) if scalar else out.reshape(w_arr.shape)


def flow(s: Scenario, t, z):
    """Time-t image of z under the semiflow; t < 0 allowed inside a petal."""
    s._require_evaluable()
    _check_in_disk(z)
    if t == 0:
        return z
    z_arr = np.asarray(z, dtype=complex)
    scalar = z_arr.ndim == 0
    w0 = np.asarray(s._h(z_arr), dtype=complex)
    w1 = w0 + t
    if t < 0 and not np.all(s.in_omega(w1)):
        raise PetalExitError("backward flow leaves the image domain")
    if s._closed_inverse is not None:
        out = s._closed_inverse(w1)
        return complex(out) if scalar else out
    cur = np.atleast_1d(z_arr).astype(complex)
    base = np.atleast_1d(w0)
    end = base + t
    if t < 0 and not np.all(s.in_omega(end)):
        raise PetalExitError("backward flow leaves the image domain")
    # near the slit tip of the trident h' vanishes (square-root branch
    # point), so lift the continuation path off the real axis for points
    # whose horizontal segment passes close to the tip
    legs = [end]
    if s.kind == "trident":
        tip = _TRIDENT_SLIT_RE
        near = ((np.abs(base.imag) < 0.05)
                & (np.minimum(base.real, end.real) < tip + 0.05)
                & (np.maximum(base.real, end.real) > tip - 0.05))
        if np.any(near):
            lift = 1j * np.where(near, 0.1 * np.sign(base.imag), 0.0)
            legs = [base + lift, end + lift, end]
    prev = base
    for leg in legs:
        # walk each leg in short horizontal/vertical steps inside Omega
        dist = float(np.max(np.abs(leg - prev)))
        nsteps = max(1, int(math.ceil(dist / 0.25)))
        for k in range(1, nsteps + 1):
            target = prev + (leg - prev) * (k / nsteps)
            if t < 0 and not np.all(s.in_omega(target)):
                raise PetalExitError("backward flow leaves the image domain")
            cur = _continuation_invert(s, target, cur,
                                       prev + (leg - prev) * ((k - 1) / nsteps))
        prev = leg
    return complex(cur[0]) if scalar else cur.reshape(z_arr.shape)


def cocycle(s: Scenario, t, z):
    """Weight transported along the flow: v(flow(t, z)) / v(z)."""
    s._require_evaluable()
    zt = flow(s, t, z)
    return s._v(zt) / s._v(z)


# -- boundary exponents -----------------------------------------------------

def richardson(values, ratio=2.0):
    """Limit of a sequence with error expansion in powers of ratio**-k."""
    v = np.asarray(values, dtype=complex)
    for m in range(1, len(v)):
        r = ratio ** m
        v = (r * v[1:] - v[:-1]) / (r - 1)
    return complex(v[0])


_RADII_K = range(4, 15)


def _radial_extrapolate(samples):
    return richardson(samples[-4:])


def alpha_at(s: Scenario, fp: FixedPointDatum, tol=1e-4) -> float:
    """Flow exponent at a declared fixed point, computed two ways."""
    s._require_evaluable()
    zeta = complex(fp.zeta)
    quot = []
    gprime = []
    for k in _RADII_K:
        r = 1.0 - 2.0 ** -k
        z = r * zeta
        phi1 = flow(s, 1.0, z)
        quot.append(-np.log((zeta - phi1) / (zeta - z)))
        hj = s._h.jet(z)
        gprime.append(hj.d2 / hj.d1 ** 2)  # -G'(z) for G = 1/h'
    a_quot = _radial_extrapolate(quot).real
    a_gp = _radial_extrapolate(gprime).real
    if abs(a_quot - a_gp) > tol or abs(a_quot - fp.alpha) > tol:
        raise ModelInconsistencyError(
            f"alpha mismatch at {zeta}: quotient {a_quot:.6g}, "
            f"generator {a_gp:.6g}, declared {fp.alpha:.6g}")
    return a_quot


def beta_at(s: Scenario, fp: FixedPointDatum) -> complex:
    """Cocycle exponent at a fixed point by radial extrapolation of the
    weight generator; returns complex(-inf, 0) for the degenerate case."""
    s._require_evaluable()
    zeta = complex(fp.zeta)
    samples = [generator_g(s, (1.0 - 2.0 ** -k) * zeta) for k in _RADII_K]
    reals = np.array([x.real for x in samples])
    if reals[-1] < -1e3 and np.all(np.diff(reals[-4:]) < 0):
        return complex(float("-inf"), 0.0)
    est_full = _radial_extrapolate(samples)
    est_prev = richardson(samples[-5:-1])
    if abs(est_full - est_prev) > 1e-3 * (1.0 + abs(est_full)):
        raise EvaluationError("no boundary limit for the weight generator "
                              f"at {zeta} (oscillatory samples)")
    return est_full


# -- helpers ----------------------------------------------------------------

def quasi_random_grid(n, radius=0.95):
    """Deterministic low-discrepancy point set in a centered disk."""
    i = np.arange(n)
    r = radius * np.sqrt((i + 0.5) / n)
    golden = (1 + math.sqrt(5)) / 2
    theta = 2 * np.pi * ((i / golden) % 1.0)
    return r * np.exp(1j * theta)

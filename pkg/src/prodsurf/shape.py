"""Hypersurface immersions and their pointwise geometric frames.

A hypersurface is handed to the package as a parametrized immersion with an
analytic 2-jet: ``jet(s) -> (x, dx, ddx)`` where ``s`` has shape ``(..., n)``,
``x`` shape ``(..., d)`` (d = n + 1 ambient chart coordinates), ``dx`` shape
``(..., n, d)`` (rows are the coordinate tangent vectors) and ``ddx`` shape
``(..., n, n, d)`` (coordinate second partials, symmetric in the first two
slots).  Graphs over a base manifold get their jet assembled from the height
function and its derivatives.

``frame_at`` turns the jet into the full pointwise dictionary of the
hypersurface: induced metric, unit normal (with a deterministic orientation
policy), second fundamental form ``h_ij = <sec_ij, N>``, shape operator
``A = g^{-1} h`` (so that ``A = -grad N`` as an endomorphism), principal
curvatures, mean curvature ``H = (eps_N / n) tr A``, and the scalar
curvature from the contracted Gauss equation

    S = Sbar - 2 eps_N Ric_bar(N, N) + 2 eps_N sum_{i<j} k_i k_j

with ``eps_N = <N, N>`` (+1 in Riemannian ambients, -1 for spacelike
hypersurfaces of Lorentzian ones).

The module also hosts the *independent* intrinsic-curvature oracle: Gauss
curvature by the Brioschi formula (n = 2) and the scalar curvature by direct
finite differencing of the induced metric (n = 3).  The oracle never touches
normals or second fundamental forms, so agreement with the frame values is a
genuine two-route check of the Gauss equation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _smallmat
from .ambient import AmbientSpace, AxisSpec, BaseManifold, make_product
from .errors import DegenerateFrame, NotSpacelike

__all__ = [
    "ParamSurface",
    "GraphSurface",
    "GeometryFrame",
    "frame_at",
    "graph_theta",
    "graph_second_form",
    "normalize_params",
    "induced_metric_sampler",
    "intrinsic_curvature_oracle",
]

_DEGENERACY_TOL = 1e-14

ORIENTATION_POLICIES = (
    "adjugate", "adjugate_neg", "future", "theta_nonpositive", "theta_nonnegative",
)


def default_orientation(ambient: AmbientSpace) -> str:
    """Orientation policy used when a surface does not pin one explicitly."""
    if ambient.signature == "lorentzian":
        return "future"
    if ambient.kind == "product":
        return "theta_nonpositive"
    return "adjugate"


@dataclass(eq=False)
class ParamSurface:
    """A parametrized hypersurface with an analytic 2-jet."""

    name: str
    ambient: AmbientSpace
    axes: tuple[AxisSpec, ...]
    jet: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray, np.ndarray]]
    compact: bool = True
    quotient_factor: float = 1.0
    orientation: str = ""

    def __post_init__(self):
        if not self.orientation:
            self.orientation = default_orientation(self.ambient)
        if self.orientation not in ORIENTATION_POLICIES:
            raise ValueError(f"unknown orientation policy {self.orientation!r}")

    @property
    def dimension(self) -> int:
        return len(self.axes)


@dataclass(eq=False)
class GraphSurface:
    """The graph ``t = u(m)`` of a function over the base of a product.

    ``u``, ``du`` and ``d2u`` are array-aware callables returning the height,
    its chart partials ``(..., n)`` and its coordinate second partials
    ``(..., n, n)``.  ``d2u`` holds plain partial derivatives; covariant
    corrections happen downstream.  In a Lorentzian product the graph is
    checked to be spacelike (``|Du|^2 < 1``) wherever frames are computed.
    """

    name: str
    base: BaseManifold
    epsilon: int
    u: Callable[[np.ndarray], np.ndarray]
    du: Callable[[np.ndarray], np.ndarray]
    d2u: Callable[[np.ndarray], np.ndarray]
    orientation: str = ""

    def __post_init__(self):
        self.ambient = make_product(self.base, self.epsilon)
        self.axes = self.base.axes
        self.compact = self.base.compact
        self.quotient_factor = self.base.quotient_factor
        if not self.orientation:
            self.orientation = default_orientation(self.ambient)
        if self.orientation not in ORIENTATION_POLICIES:
            raise ValueError(f"unknown orientation policy {self.orientation!r}")

    @property
    def dimension(self) -> int:
        return len(self.axes)

    def jet(self, s: np.ndarray):
        s = np.asarray(s, dtype=float)
        n = self.base.dim
        batch = s.shape[:-1]
        x = np.concatenate([s, self.u(s)[..., None]], axis=-1)
        dx = np.zeros(batch + (n, n + 1))
        for i in range(n):
            dx[..., i, i] = 1.0
        dx[..., :, n] = self.du(s)
        ddx = np.zeros(batch + (n, n, n + 1))
        ddx[..., :, :, n] = self.d2u(s)
        return x, dx, ddx


@dataclass(eq=False)
class GeometryFrame:
    """Pointwise geometric data of a hypersurface (batched arrays)."""

    params: np.ndarray
    point: np.ndarray
    tangent: np.ndarray            # (..., n, d) coordinate tangent vectors
    metric: np.ndarray             # induced metric g_ij
    metric_inv: np.ndarray
    metric_det: np.ndarray
    normal: np.ndarray             # unit normal, oriented per policy
    normal_sign: int               # eps_N = <N, N>
    second_form: np.ndarray        # h_ij = <sec_ij, N>
    shape_operator: np.ndarray     # A^i_j = g^{ik} h_kj
    principal_curvatures: np.ndarray   # ascending, (..., n)
    mean_curvature: np.ndarray     # H = (eps_N / n) tr A
    pair_sum: np.ndarray           # sum_{i<j} k_i k_j
    scalar_curvature: np.ndarray   # S from the contracted Gauss equation
    ambient_scalar: np.ndarray     # Sbar at the point
    ricci_normal: np.ndarray       # Ric_bar(N, N)
    theta: np.ndarray | None       # <N, T> when Killing data exists
    tau: np.ndarray | None         # tangential part of T in surface coords
    height: np.ndarray | None      # product height coordinate of the point

    @property
    def dimension(self) -> int:
        return self.tangent.shape[-2]

    @property
    def gauss_curvature(self) -> np.ndarray:
        """Intrinsic Gauss curvature K = S / 2 (surfaces only)."""
        if self.dimension != 2:
            raise ValueError("gauss_curvature is defined for n = 2 only")
        return 0.5 * self.scalar_curvature


def _uniform_sign(arr: np.ndarray, what: str) -> int:
    pos = bool(np.all(arr > 0.0))
    neg = bool(np.all(arr < 0.0))
    if pos:
        return +1
    if neg:
        return -1
    raise DegenerateFrame(f"{what} changes sign across the batch")


def frame_at(surface, s: np.ndarray) -> GeometryFrame:
    """Evaluate the full geometric frame of ``surface`` at parameters ``s``.

    ``s`` may carry arbitrary batch dimensions.  Raises ``NotSpacelike`` when
    a Lorentzian-ambient surface fails the spacelike test and
    ``DegenerateFrame`` when the tangent map loses rank or the normal
    direction becomes null.
    """
    ambient = surface.ambient
    s = np.asarray(s, dtype=float)
    n = surface.dimension
    x, tx, txx = surface.jet(s)
    G = ambient.metric_at(x)
    Ginv = ambient.metric_inverse_at(x)
    Gam = ambient.christoffel_at(x)
    detG = ambient.metric_det_at(x)

    g = np.einsum("...ia,...ab,...jb->...ij", tx, G, tx)
    # positive definiteness via leading principal minors
    minors = [g[..., 0, 0]]
    if n >= 2:
        minors.append(_smallmat.det(g[..., :2, :2]))
    if n >= 3:
        minors.append(_smallmat.det(g))
    for m in minors:
        bad = ~(m > _DEGENERACY_TOL)
        if np.any(bad):
            where = np.argwhere(bad)
            idx = tuple(where[0]) if where.size else ()
            val = float(np.min(m))
            if ambient.signature == "lorentzian":
                raise NotSpacelike(
                    f"{surface.name}: induced metric not positive definite "
                    f"(worst minor {val:.3e}, first bad index {idx})")
            raise DegenerateFrame(
                f"{surface.name}: tangent vectors degenerate "
                f"(worst minor {val:.3e}, first bad index {idx})")
    ginv = _smallmat.inv(g)
    detg = _smallmat.det(g)

    # metric-adjugate normal: covector w annihilating the tangents
    w = _smallmat.generalized_cross(tx, np.sqrt(np.abs(detG)))
    Nraw = np.einsum("...ab,...b->...a", Ginv, w)
    nsq = np.einsum("...a,...ab,...b->...", w, Ginv, w)
    if np.any(np.abs(nsq) <= _DEGENERACY_TOL):
        raise DegenerateFrame(f"{surface.name}: null or vanishing normal direction")
    eps_n = _uniform_sign(nsq, f"{surface.name}: <N, N>")
    if eps_n != ambient.epsilon:
        raise NotSpacelike(
            f"{surface.name}: normal has <N, N> = {eps_n}, expected "
            f"{ambient.epsilon} for this ambient")
    N = Nraw / np.sqrt(np.abs(nsq))[..., None]

    killing = ambient.killing
    T = killing.field_at(x) if killing is not None else None

    # orientation policy
    policy = surface.orientation
    if policy == "adjugate":
        flip = np.ones(nsq.shape)
    elif policy == "adjugate_neg":
        flip = -np.ones(nsq.shape)
    elif policy in ("future", "theta_nonpositive", "theta_nonnegative"):
        if T is None:
            raise DegenerateFrame(
                f"{surface.name}: orientation {policy!r} needs Killing data")
        th_raw = np.einsum("...a,...ab,...b->...", N, G, T)
        if policy == "future":
            if np.any(th_raw == 0.0):
                raise DegenerateFrame(
                    f"{surface.name}: normal orthogonal to the time orientation")
            flip = np.where(th_raw < 0.0, 1.0, -1.0)
            flip = float(_uniform_sign(flip, f"{surface.name}: future flip")) \
                * np.ones(nsq.shape)
        elif policy == "theta_nonpositive":
            flip = np.where(th_raw > 0.0, -1.0, 1.0)
        else:
            flip = np.where(th_raw < 0.0, -1.0, 1.0)
    N = N * flip[..., None]

    theta = None
    tau = None
    if T is not None:
        theta = np.einsum("...a,...ab,...b->...", N, G, T)
        t_cov = np.einsum("...a,...ab,...jb->...j", T, G, tx)
        tau = np.einsum("...ij,...j->...i", ginv, t_cov)

    sec = txx + np.einsum("...abc,...ib,...jc->...ija", Gam, tx, tx)
    h = np.einsum("...ija,...ab,...b->...ij", sec, G, N)
    A = np.einsum("...ik,...kj->...ij", ginv, h)
    trA = np.einsum("...ii->...", A)
    trA2 = np.einsum("...ij,...ji->...", A, A)
    e2 = 0.5 * (trA * trA - trA2)
    Hmean = (eps_n / n) * trA

    # principal curvatures from the symmetric pencil (h, g)
    if n == 2:
        # A is conjugate to a symmetric matrix, so its spectrum is real and
        # follows from trace and determinant alone
        trace = A[..., 0, 0] + A[..., 1, 1]
        deter = _smallmat.det(A)
        disc = np.sqrt(np.maximum(trace * trace - 4.0 * deter, 0.0))
        kap = np.stack([0.5 * (trace - disc), 0.5 * (trace + disc)], axis=-1)
    else:
        L = np.linalg.cholesky(g)
        Linv = _smallmat.inv(L)
        sym = np.einsum("...ik,...kl,...jl->...ij", Linv, h, Linv)
        kap = np.linalg.eigvalsh(sym)

    Sbar = ambient.scalar_curvature(x)
    ricNN = ambient.ricci_quadratic(x, N)
    S = Sbar - 2.0 * eps_n * ricNN + 2.0 * eps_n * e2

    height = x[..., -1] if ambient.kind == "product" else None

    return GeometryFrame(
        params=s,
        point=x,
        tangent=tx,
        metric=g,
        metric_inv=ginv,
        metric_det=detg,
        normal=N,
        normal_sign=eps_n,
        second_form=h,
        shape_operator=A,
        principal_curvatures=kap,
        mean_curvature=Hmean,
        pair_sum=e2,
        scalar_curvature=S,
        ambient_scalar=Sbar,
        ricci_normal=ricNN,
        theta=theta,
        tau=tau,
        height=height,
    )


# --------------------------------------------------------------------------
# closed-form graph quantities (used as an independent route in tests)
# --------------------------------------------------------------------------

def _graph_w(graph: GraphSurface, s: np.ndarray) -> np.ndarray:
    """|Du|^2 in the base metric."""
    s = np.asarray(s, dtype=float)
    du = graph.du(s)
    ginv = graph.base.metric_inverse_at(s)
    return np.einsum("...i,...ij,...j->...", du, ginv, du)


def graph_theta(graph: GraphSurface, s: np.ndarray) -> np.ndarray:
    """Normal angle function of a graph: ``theta = -1 / sqrt(1 + eps |Du|^2)``.

    Always strictly negative; in the Lorentzian case ``theta <= -1`` and the
    spacelike condition ``|Du|^2 < 1`` is enforced.
    """
    w = _graph_w(graph, s)
    arg = 1.0 + graph.epsilon * w
    if np.any(arg <= 0.0):
        raise NotSpacelike(
            f"{graph.name}: |Du|^2 reaches {float(np.max(w)):.6f}; "
            "the graph is not spacelike")
    return -1.0 / np.sqrt(arg)


def covariant_hessian(base: BaseManifold, du: np.ndarray, d2u: np.ndarray,
                      s: np.ndarray) -> np.ndarray:
    """Covariant Hessian ``D^2 u`` of a function on the base manifold."""
    Gam = base.christoffel_at(s)
    return d2u - np.einsum("...kij,...k->...ij", Gam, du)


def graph_second_form(graph: GraphSurface, s: np.ndarray) -> np.ndarray:
    """Second fundamental form of a graph in an orthonormal base frame.

    Components are ``h(E_i, E_j) = -D^2 u(E_i, E_j) / sqrt(1 + eps |Du|^2)``
    for a ``g_M``-orthonormal frame ``E_i`` (built from the inverse Cholesky
    factor of the base metric), matching the frame route up to the frame
    change.
    """
    s = np.asarray(s, dtype=float)
    w = _graph_w(graph, s)
    arg = 1.0 + graph.epsilon * w
    if np.any(arg <= 0.0):
        raise NotSpacelike(f"{graph.name}: graph is not spacelike")
    hess = covariant_hessian(graph.base, graph.du(s), graph.d2u(s), s)
    gM = graph.base.metric_at(s)
    L = np.linalg.cholesky(gM)
    E = np.swapaxes(_smallmat.inv(L), -1, -2)      # columns: orthonormal frame
    framed = np.einsum("...ia,...ab,...bj->...ij", np.swapaxes(E, -1, -2), hess, E)
    return -framed / np.sqrt(arg)[..., None, None]


# --------------------------------------------------------------------------
# parameter folding and the intrinsic-curvature oracle
# --------------------------------------------------------------------------

def normalize_params(axes: tuple[AxisSpec, ...], s: np.ndarray
                     ) -> tuple[np.ndarray, np.ndarray]:
    """Fold parameters back into the chart and track direction signs.

    Periodic axes wrap; polar axes reflect through their endpoints, applying
    the partner shifts/reversals recorded on the axis.  The returned ``signs``
    array holds the diagonal Jacobian of the folding map, i.e. the sign each
    coordinate direction picks up; tensor components at the unfolded point
    equal the folded values times one sign per index.  Only single
    reflections are handled (ample for stencil-sized excursions).
    """
    s = np.array(np.asarray(s, dtype=float), copy=True)
    signs = np.ones_like(s)
    for a, ax in enumerate(axes):
        if not ax.polar:
            continue
        for edge, beyond in ((ax.lo, s[..., a] < ax.lo), (ax.hi, s[..., a] > ax.hi)):
            if not np.any(beyond):
                continue
            s[..., a] = np.where(beyond, 2.0 * edge - s[..., a], s[..., a])
            for p in ax.shift:
                s[..., p] = np.where(beyond, s[..., p] + 0.5 * axes[p].period,
                                     s[..., p])
            for r in ax.reverse:
                s[..., r] = np.where(beyond, axes[r].lo + axes[r].hi - s[..., r],
                                     s[..., r])
            flip_vec = np.ones(len(axes))
            flip_vec[list(ax.flip)] = -1.0
            signs = np.where(beyond[..., None], signs * flip_vec, signs)
    for a, ax in enumerate(axes):
        if ax.kind == "periodic":
            s[..., a] = ax.lo + np.mod(s[..., a] - ax.lo, ax.period)
    return s, signs


def induced_metric_sampler(surface) -> Callable[[np.ndarray], np.ndarray]:
    """Induced metric as a function of (possibly out-of-chart) parameters.

    Folding plus sign conjugation make the sampled components smooth across
    poles and periodic seams, which is what lets centered stencils run right
    up to (and beyond) the chart boundary.
    """
    def sample(s: np.ndarray) -> np.ndarray:
        s_in, signs = normalize_params(surface.axes, s)
        x, tx, _ = surface.jet(s_in)
        G = surface.ambient.metric_at(x)
        g = np.einsum("...ia,...ab,...jb->...ij", tx, G, tx)
        return g * signs[..., :, None] * signs[..., None, :]
    return sample


# High-order centered stencils, selectable by accuracy order.  Near chart
# poles 1/sin^2 factors in the inverse metric amplify truncation error by
# powers of the distance to the pole: second-order stencils stall under grid
# refinement, and at a double pole (two polar axes meeting, amplification
# ~ m^8 at resolution m) even fourth order grows like m.  Eighth-order
# stencils keep the pure-axis truncation decaying ~ m^-11, which beats the
# amplification everywhere on the grids used here.
_D1_TABLES = {
    4: ((-2, -1, 1, 2),
        (1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0)),
    8: ((-4, -3, -2, -1, 1, 2, 3, 4),
        (1.0 / 280.0, -4.0 / 105.0, 1.0 / 5.0, -4.0 / 5.0,
         4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0)),
}
_D2_TABLES = {
    4: ((-2, -1, 0, 1, 2),
        (-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0)),
    8: ((-4, -3, -2, -1, 0, 1, 2, 3, 4),
        (-1.0 / 560.0, 8.0 / 315.0, -1.0 / 5.0, 8.0 / 5.0, -205.0 / 72.0,
         8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0)),
}


class _MetricStencil:
    """Caches metric evaluations on an offset lattice around fixed points."""

    def __init__(self, g_at: Callable, s: np.ndarray, h: np.ndarray):
        self.g_at = g_at
        self.s = np.asarray(s, dtype=float)
        self.h = h
        self.n = self.s.shape[-1]
        self._cache: dict[tuple, np.ndarray] = {}

    def g(self, offsets: tuple[tuple[int, int], ...] = ()) -> np.ndarray:
        key = tuple(sorted(offsets))
        if key not in self._cache:
            off = np.zeros(self.n)
            for axis, mult in offsets:
                off[axis] += mult * self.h[axis]
            self._cache[key] = self.g_at(self.s + off)
        return self._cache[key]

    def d1(self, axis: int, order: int = 4) -> np.ndarray:
        acc = 0.0
        for m, w in zip(*_D1_TABLES[order]):
            acc = acc + w * self.g(((axis, m),))
        return acc / self.h[axis]

    def d2(self, axis_a: int, axis_b: int, order: int = 4) -> np.ndarray:
        if axis_a == axis_b:
            acc = 0.0
            for m, w in zip(*_D2_TABLES[order]):
                acc = acc + w * self.g(((axis_a, m),))
            return acc / self.h[axis_a] ** 2
        acc = 0.0
        offs, wts = _D1_TABLES[order]
        for ma, wa in zip(offs, wts):
            for mb, wb in zip(offs, wts):
                acc = acc + wa * wb * self.g(((axis_a, ma), (axis_b, mb)))
        return acc / (self.h[axis_a] * self.h[axis_b])


def _brioschi(g_at: Callable, s: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Gauss curvature of a 2d metric by the Brioschi determinant formula."""
    st = _MetricStencil(g_at, s, h)
    g00 = st.g()
    du, dv = st.d1(0), st.d1(1)
    E, F, Gc = g00[..., 0, 0], g00[..., 0, 1], g00[..., 1, 1]
    E_u, F_u, G_u = du[..., 0, 0], du[..., 0, 1], du[..., 1, 1]
    E_v, F_v, G_v = dv[..., 0, 0], dv[..., 0, 1], dv[..., 1, 1]
    E_vv = st.d2(1, 1)[..., 0, 0]
    G_uu = st.d2(0, 0)[..., 1, 1]
    F_uv = st.d2(0, 1)[..., 0, 1]

    batch = E.shape
    M1 = np.zeros(batch + (3, 3))
    M1[..., 0, 0] = -0.5 * E_vv + F_uv - 0.5 * G_uu
    M1[..., 0, 1] = 0.5 * E_u
    M1[..., 0, 2] = F_u - 0.5 * E_v
    M1[..., 1, 0] = F_v - 0.5 * G_u
    M1[..., 1, 1] = E
    M1[..., 1, 2] = F
    M1[..., 2, 0] = 0.5 * G_v
    M1[..., 2, 1] = F
    M1[..., 2, 2] = Gc
    M2 = np.zeros(batch + (3, 3))
    M2[..., 0, 1] = M2[..., 1, 0] = 0.5 * E_v
    M2[..., 0, 2] = M2[..., 2, 0] = 0.5 * G_u
    M2[..., 1, 1] = E
    M2[..., 1, 2] = M2[..., 2, 1] = F
    M2[..., 2, 2] = Gc
    denom = (E * Gc - F * F) ** 2
    return (_smallmat.det(M1) - _smallmat.det(M2)) / denom


def _fd_scalar_curvature(g_at: Callable, s: np.ndarray, h: np.ndarray
                         ) -> np.ndarray:
    """Scalar curvature of an n-dim metric by direct finite differencing.

    Pure-axis metric derivatives come from eighth-order centered stencils
    (needed where two polar axes meet, see the stencil tables above); mixed
    second derivatives, whose amplified truncation error stays benign, use
    the cheaper fourth-order product stencils.  The Christoffel symbols,
    their derivatives and the contraction ``S = g^{ac} R^b_{abc}`` are then
    assembled in closed form, with the curvature sign convention of
    :mod:`prodsurf.ambient`.
    """
    s = np.asarray(s, dtype=float)
    n = s.shape[-1]
    st = _MetricStencil(g_at, s, h)
    g0 = st.g()
    dg = np.zeros(g0.shape[:-2] + (n, n, n))       # dg[..., a, i, j] = d_a g_ij
    ddg = np.zeros(g0.shape[:-2] + (n, n, n, n))   # ddg[..., a, b, i, j]
    for a in range(n):
        dg[..., a, :, :] = st.d1(a, order=8)
        ddg[..., a, a, :, :] = st.d2(a, a, order=8)
    for a in range(n):
        for b in range(a + 1, n):
            cross = st.d2(a, b)
            ddg[..., a, b, :, :] = cross
            ddg[..., b, a, :, :] = cross

    ginv = _smallmat.inv(g0)
    # Gamma^k_ij and its partials d_a Gamma^k_ij
    Gam = np.zeros_like(dg)
    dginv = -np.einsum("...km,...amn,...nl->...akl", ginv, dg, ginv)
    dGam = np.zeros(g0.shape[:-2] + (n, n, n, n))  # dGam[..., a, k, i, j]
    for i in range(n):
        for j in range(n):
            brk = 0.5 * (dg[..., i, :, j] + dg[..., j, :, i] - dg[..., :, i, j])
            Gam[..., :, i, j] = np.einsum("...kl,...l->...k", ginv, brk)
            dbrk = 0.5 * (ddg[..., :, i, :, j] + ddg[..., :, j, :, i]
                          - ddg[..., :, :, i, j])
            dGam[..., :, :, i, j] = (
                np.einsum("...akl,...l->...ak", dginv, brk)
                + np.einsum("...kl,...al->...ak", ginv, dbrk)
            )
    # R^d_abc = d_b Gam^d_ac - d_a Gam^d_bc + Gam^e_ac Gam^d_be - Gam^e_bc Gam^d_ae
    riem = (np.einsum("...bdac->...dabc", dGam)
            - np.einsum("...adbc->...dabc", dGam)
            + np.einsum("...eac,...dbe->...dabc", Gam, Gam)
            - np.einsum("...ebc,...dae->...dabc", Gam, Gam))
    # S = g^{ac} R^b_{abc}
    return np.einsum("...ac,...babc->...", ginv, riem)


def intrinsic_curvature_oracle(surface, s: np.ndarray,
                               step: float | np.ndarray = 1e-3) -> np.ndarray:
    """Intrinsic curvature from metric samples alone.

    Returns the Gauss curvature for n = 2 (Brioschi formula) and the scalar
    curvature for n = 3.  ``step`` is the finite-difference step, a scalar or
    one value per parameter axis.
    """
    s = np.asarray(s, dtype=float)
    n = surface.dimension
    h = np.broadcast_to(np.asarray(step, dtype=float), (n,)).astype(float)
    g_at = induced_metric_sampler(surface)
    if n == 2:
        return _brioschi(g_at, s, h)
    if n == 3:
        return _fd_scalar_curvature(g_at, s, h)
    raise ValueError(f"oracle supports n = 2 or 3, got {n}")

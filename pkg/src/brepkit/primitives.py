"""Analytic primitive surfaces: plane, cylinder, cone, sphere, torus.

Every primitive follows the (axis x, position p) convention: the plane
stores its unit normal in the axis slot, the sphere has no axis.  The cone
position is the axis midpoint; its apex is the derived point
``p - (h/2) x`` and the lateral surface is the single nappe opening along
+x from the apex (``h`` bounds the face but not the surface).  Tori are
ring tori only (major > minor > 0).

Projection and distance are vectorized over query points.  Queries on a
symmetry locus (cylinder/cone/torus axis, sphere center, torus spine
circle) resolve to a fixed fallback direction so results stay
deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

DEGENERATE_EPS = 1e-12


def unit(v):
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v)
    if n < DEGENERATE_EPS:
        raise ValueError("cannot normalize near-zero vector")
    return v / n


def radial_fallback(axis):
    """Deterministic direction perpendicular to axis: (1,0,0), or (0,1,0)
    when that is parallel to the axis."""
    f = np.array([1.0, 0.0, 0.0])
    r = f - np.dot(f, axis) * axis
    if np.linalg.norm(r) < 1e-6:
        f = np.array([0.0, 1.0, 0.0])
        r = f - np.dot(f, axis) * axis
    return r / np.linalg.norm(r)


def orthonormal_basis(axis):
    """(e1, e2) completing axis to a right-handed frame, deterministic."""
    e1 = radial_fallback(axis)
    e2 = np.cross(axis, e1)
    return e1, np.asarray(e2) / np.linalg.norm(e2)


def _as_points(q):
    q = np.asarray(q, dtype=float)
    single = q.ndim == 1
    return np.atleast_2d(q), single


def _axial_radial(q, axis, origin):
    """Split q - origin into axial coordinate and radial vector/length."""
    w = q - origin
    a = w @ axis
    rho = w - np.outer(a, axis)
    rr = np.linalg.norm(rho, axis=1)
    return w, a, rho, rr


def _safe_dir(v, n, fallback):
    vn = np.empty_like(v)
    good = n > DEGENERATE_EPS
    vn[good] = v[good] / n[good, None]
    if not good.all():
        vn[~good] = fallback
    return vn


def _safe_radial_dir(rho, rr, axis):
    return _safe_dir(rho, rr, radial_fallback(axis))


def _norm_jac(v):
    """d(v/|v|)/dv for a single 3-vector."""
    n = np.linalg.norm(v)
    vn = v / n
    return (np.eye(3) - np.outer(vn, vn)) / n


@dataclass(frozen=True, eq=False)
class Plane:
    axis: np.ndarray  # unit normal
    position: np.ndarray

    kind = "plane"
    n_params = 6

    def __post_init__(self):
        object.__setattr__(self, "axis", unit(self.axis))
        object.__setattr__(self, "position", np.asarray(self.position, dtype=float))

    @property
    def offset(self):
        return float(self.axis @ self.position)

    def project(self, q):
        q, single = _as_points(q)
        s = (q - self.position) @ self.axis
        out = q - np.outer(s, self.axis)
        return out[0] if single else out

    def signed_distance(self, q):
        q, single = _as_points(q)
        s = (q - self.position) @ self.axis
        return float(s[0]) if single else s

    def distance(self, q):
        return np.abs(self.signed_distance(q))

    def normal(self, q):
        q, single = _as_points(q)
        out = np.broadcast_to(self.axis, q.shape).copy()
        return out[0] if single else out

    def param_array(self):
        return np.concatenate([self.axis, self.position])

    @staticmethod
    def from_params(params, template=None):
        return Plane(params[0:3], params[3:6])

    def project_jacobian(self, q):
        q = np.asarray(q, dtype=float)
        x, p = self.axis, self.position
        s = float((q - p) @ x)
        jac = np.zeros((3, 6))
        jac[:, 0:3] = -(np.outer(x, q - p) + s * np.eye(3))
        jac[:, 3:6] = np.outer(x, x)
        return jac

    def sample_surface(self, rng, n, extent=2.0):
        e1, e2 = orthonormal_basis(self.axis)
        uv = rng.uniform(-extent, extent, size=(n, 2))
        return self.position + uv[:, :1] * e1 + uv[:, 1:] * e2


@dataclass(frozen=True, eq=False)
class Sphere:
    position: np.ndarray  # center
    radius: float

    kind = "sphere"
    n_params = 4

    def __post_init__(self):
        object.__setattr__(self, "position", np.asarray(self.position, dtype=float))
        object.__setattr__(self, "radius", float(self.radius))
        if not self.radius > 0:
            raise ValueError("sphere radius must be positive")

    def project(self, q):
        q, single = _as_points(q)
        u = q - self.position
        un = _safe_dir(u, np.linalg.norm(u, axis=1), np.array([1.0, 0.0, 0.0]))
        out = self.position + self.radius * un
        return out[0] if single else out

    def signed_distance(self, q):
        q, single = _as_points(q)
        d = np.linalg.norm(q - self.position, axis=1) - self.radius
        return float(d[0]) if single else d

    def distance(self, q):
        return np.abs(self.signed_distance(q))

    def normal(self, q):
        q, single = _as_points(q)
        u = q - self.position
        un = _safe_dir(u, np.linalg.norm(u, axis=1), np.array([1.0, 0.0, 0.0]))
        return un[0] if single else un

    def param_array(self):
        return np.concatenate([self.position, [self.radius]])

    @staticmethod
    def from_params(params, template=None):
        return Sphere(params[0:3], params[3])

    def project_jacobian(self, q):
        q = np.asarray(q, dtype=float)
        u = q - self.position
        jac = np.zeros((3, 4))
        jac[:, 0:3] = np.eye(3) - self.radius * _norm_jac(u)
        jac[:, 3] = u / np.linalg.norm(u)
        return jac

    def sample_surface(self, rng, n):
        v = rng.normal(size=(n, 3))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        return self.position + self.radius * v


@dataclass(frozen=True, eq=False)
class Cylinder:
    axis: np.ndarray
    position: np.ndarray  # any point on the axis
    radius: float

    kind = "cylinder"
    n_params = 7

    def __post_init__(self):
        object.__setattr__(self, "axis", unit(self.axis))
        object.__setattr__(self, "position", np.asarray(self.position, dtype=float))
        object.__setattr__(self, "radius", float(self.radius))
        if not self.radius > 0:
            raise ValueError("cylinder radius must be positive")

    def project(self, q):
        q, single = _as_points(q)
        w, a, rho, rr = _axial_radial(q, self.axis, self.position)
        rn = _safe_radial_dir(rho, rr, self.axis)
        out = self.position + np.outer(a, self.axis) + self.radius * rn
        return out[0] if single else out

    def signed_distance(self, q):
        q, single = _as_points(q)
        _, _, _, rr = _axial_radial(q, self.axis, self.position)
        d = rr - self.radius
        return float(d[0]) if single else d

    def distance(self, q):
        return np.abs(self.signed_distance(q))

    def normal(self, q):
        q, single = _as_points(q)
        _, _, rho, rr = _axial_radial(q, self.axis, self.position)
        rn = _safe_radial_dir(rho, rr, self.axis)
        return rn[0] if single else rn

    def param_array(self):
        return np.concatenate([self.axis, self.position, [self.radius]])

    @staticmethod
    def from_params(params, template=None):
        return Cylinder(params[0:3], params[3:6], params[6])

    def project_jacobian(self, q):
        q = np.asarray(q, dtype=float)
        x, p, r = self.axis, self.position, self.radius
        w = q - p
        a = float(w @ x)
        rho = w - a * x
        rn = rho / np.linalg.norm(rho)
        P = _norm_jac(rho)
        drho_dx = -(np.outer(x, w) + a * np.eye(3))
        drho_dp = np.outer(x, x) - np.eye(3)
        jac = np.zeros((3, 7))
        jac[:, 0:3] = np.outer(x, w) + a * np.eye(3) + r * P @ drho_dx
        jac[:, 3:6] = np.eye(3) - np.outer(x, x) + r * P @ drho_dp
        jac[:, 6] = rn
        return jac

    def sample_surface(self, rng, n, extent=2.0):
        e1, e2 = orthonormal_basis(self.axis)
        th = rng.uniform(0.0, 2.0 * np.pi, size=n)
        z = rng.uniform(-extent, extent, size=n)
        ring = np.cos(th)[:, None] * e1 + np.sin(th)[:, None] * e2
        return self.position + self.radius * ring + z[:, None] * self.axis


@dataclass(frozen=True, eq=False)
class Cone:
    axis: np.ndarray
    position: np.ndarray  # axis midpoint; apex = position - (height/2) axis
    semi_angle: float  # radians, in (0, pi/2)
    height: float = 0.0

    kind = "cone"
    n_params = 7

    def __post_init__(self):
        object.__setattr__(self, "axis", unit(self.axis))
        object.__setattr__(self, "position", np.asarray(self.position, dtype=float))
        object.__setattr__(self, "semi_angle", float(self.semi_angle))
        object.__setattr__(self, "height", float(self.height))
        if not 0.0 < self.semi_angle < math.pi / 2:
            raise ValueError("cone semi-angle must be in (0, pi/2)")

    @property
    def apex(self):
        return self.position - 0.5 * self.height * self.axis

    def _frame(self, q):
        return _axial_radial(q, self.axis, self.apex)

    def project(self, q):
        q, single = _as_points(q)
        _, a, rho, rr = self._frame(q)
        rn = _safe_radial_dir(rho, rr, self.axis)
        c, s = math.cos(self.semi_angle), math.sin(self.semi_angle)
        t = np.maximum(a * c + rr * s, 0.0)
        out = self.apex + np.outer(t * c, self.axis) + (t * s)[:, None] * rn
        return out[0] if single else out

    def signed_distance(self, q):
        """Perpendicular distance to the nappe; apex distance past the apex.

        Sign: positive outside the cone, negative inside.
        """
        q, single = _as_points(q)
        _, a, _, rr = self._frame(q)
        c, s = math.cos(self.semi_angle), math.sin(self.semi_angle)
        t = a * c + rr * s
        d = rr * c - a * s
        d = np.where(t >= 0.0, d, np.hypot(a, rr))
        return float(d[0]) if single else d

    def distance(self, q):
        return np.abs(self.signed_distance(q))

    def normal(self, q):
        q, single = _as_points(q)
        _, a, rho, rr = self._frame(q)
        rn = _safe_radial_dir(rho, rr, self.axis)
        c, s = math.cos(self.semi_angle), math.sin(self.semi_angle)
        out = c * rn - s * self.axis
        return out[0] if single else out

    def param_array(self):
        return np.concatenate([self.axis, self.position, [self.semi_angle]])

    @staticmethod
    def from_params(params, template=None):
        h = template.height if template is not None else 0.0
        return Cone(params[0:3], params[3:6], params[6], height=h)

    def project_jacobian(self, q):
        q = np.asarray(q, dtype=float)
        x, h = self.axis, self.height
        al = self.semi_angle
        c, s = math.cos(al), math.sin(al)
        A = self.apex
        w = q - A
        a = float(w @ x)
        rho = w - a * x
        rr = np.linalg.norm(rho)
        rn = rho / rr
        t = a * c + rr * s
        jac = np.zeros((3, 7))
        dA_dx = -0.5 * h * np.eye(3)
        if t <= 0.0:
            jac[:, 0:3] = dA_dx
            jac[:, 3:6] = np.eye(3)
            return jac
        P = _norm_jac(rho)
        da_dx = 0.5 * h * x + w
        da_dp = -x
        drho_dx = 0.5 * h * np.eye(3) - np.outer(x, da_dx) - a * np.eye(3)
        drho_dp = -np.eye(3) + np.outer(x, x)
        drr_dx = rn @ drho_dx
        drr_dp = rn @ drho_dp
        dt_dx = c * da_dx + s * drr_dx
        dt_dp = c * da_dp + s * drr_dp
        gen = c * x + s * rn  # generator direction
        jac[:, 0:3] = dA_dx + np.outer(gen, dt_dx) + t * c * np.eye(3) + t * s * P @ drho_dx
        jac[:, 3:6] = np.eye(3) + np.outer(gen, dt_dp) + t * s * P @ drho_dp
        jac[:, 6] = (rr * c - a * s) * gen + t * (-s * x + c * rn)
        return jac

    def sample_surface(self, rng, n, extent=2.0):
        e1, e2 = orthonormal_basis(self.axis)
        th = rng.uniform(0.0, 2.0 * np.pi, size=n)
        t = rng.uniform(0.0, extent, size=n)
        c, s = math.cos(self.semi_angle), math.sin(self.semi_angle)
        ring = np.cos(th)[:, None] * e1 + np.sin(th)[:, None] * e2
        return self.apex + np.outer(t * c, self.axis) + (t * s)[:, None] * ring


@dataclass(frozen=True, eq=False)
class Torus:
    axis: np.ndarray
    position: np.ndarray  # spine-circle center
    major_radius: float
    minor_radius: float

    kind = "torus"
    n_params = 8

    def __post_init__(self):
        object.__setattr__(self, "axis", unit(self.axis))
        object.__setattr__(self, "position", np.asarray(self.position, dtype=float))
        object.__setattr__(self, "major_radius", float(self.major_radius))
        object.__setattr__(self, "minor_radius", float(self.minor_radius))
        if not self.major_radius > self.minor_radius > 0:
            raise ValueError("torus must be a ring torus (major > minor > 0)")

    def _tube_center(self, q):
        _, a, rho, rr = _axial_radial(q, self.axis, self.position)
        rn = _safe_radial_dir(rho, rr, self.axis)
        return self.position + self.major_radius * rn

    def project(self, q):
        q, single = _as_points(q)
        c = self._tube_center(q)
        u = q - c
        # spine-circle queries fall back to the axis direction (on-surface)
        un = _safe_dir(u, np.linalg.norm(u, axis=1), self.axis)
        out = c + self.minor_radius * un
        return out[0] if single else out

    def signed_distance(self, q):
        q, single = _as_points(q)
        _, a, _, rr = _axial_radial(q, self.axis, self.position)
        d = np.hypot(rr - self.major_radius, a) - self.minor_radius
        return float(d[0]) if single else d

    def distance(self, q):
        return np.abs(self.signed_distance(q))

    def normal(self, q):
        q, single = _as_points(q)
        c = self._tube_center(q)
        u = q - c
        un = _safe_dir(u, np.linalg.norm(u, axis=1), self.axis)
        return un[0] if single else un

    def param_array(self):
        return np.concatenate(
            [self.axis, self.position, [self.major_radius, self.minor_radius]]
        )

    @staticmethod
    def from_params(params, template=None):
        return Torus(params[0:3], params[3:6], params[6], params[7])

    def project_jacobian(self, q):
        q = np.asarray(q, dtype=float)
        x, p = self.axis, self.position
        rl, rs = self.major_radius, self.minor_radius
        w = q - p
        a = float(w @ x)
        rho = w - a * x
        rn = rho / np.linalg.norm(rho)
        Pr = _norm_jac(rho)
        c = p + rl * rn
        u = q - c
        un = u / np.linalg.norm(u)
        Pu = _norm_jac(u)
        drho_dx = -(np.outer(x, w) + a * np.eye(3))
        drho_dp = np.outer(x, x) - np.eye(3)
        dc_dx = rl * Pr @ drho_dx
        dc_dp = np.eye(3) + rl * Pr @ drho_dp
        M = np.eye(3) - rs * Pu
        jac = np.zeros((3, 8))
        jac[:, 0:3] = M @ dc_dx
        jac[:, 3:6] = M @ dc_dp
        jac[:, 6] = M @ rn
        jac[:, 7] = un
        return jac

    def sample_surface(self, rng, n):
        e1, e2 = orthonormal_basis(self.axis)
        th = rng.uniform(0.0, 2.0 * np.pi, size=n)
        ph = rng.uniform(0.0, 2.0 * np.pi, size=n)
        rn = np.cos(th)[:, None] * e1 + np.sin(th)[:, None] * e2
        r = self.major_radius + self.minor_radius * np.cos(ph)
        return (
            self.position
            + r[:, None] * rn
            + (self.minor_radius * np.sin(ph))[:, None] * self.axis
        )


Primitive = Plane | Cylinder | Cone | Sphere | Torus

KINDS = {"plane": Plane, "cylinder": Cylinder, "cone": Cone, "sphere": Sphere, "torus": Torus}


def primitive_to_dict(prim) -> dict:
    d = {"kind": prim.kind, "position": [float(v) for v in prim.position]}
    if prim.kind != "sphere":
        d["axis"] = [float(v) for v in prim.axis]
    if prim.kind in ("cylinder", "sphere"):
        d["radius"] = prim.radius
    if prim.kind == "cone":
        d["semi_angle"] = prim.semi_angle
        d["height"] = prim.height
    if prim.kind == "torus":
        d["major_radius"] = prim.major_radius
        d["minor_radius"] = prim.minor_radius
    return d


def primitive_from_dict(d) -> Primitive:
    kind = d["kind"]
    if kind == "plane":
        return Plane(d["axis"], d["position"])
    if kind == "cylinder":
        return Cylinder(d["axis"], d["position"], d["radius"])
    if kind == "cone":
        return Cone(d["axis"], d["position"], d["semi_angle"], d.get("height", 0.0))
    if kind == "sphere":
        return Sphere(d["position"], d["radius"])
    if kind == "torus":
        return Torus(d["axis"], d["position"], d["major_radius"], d["minor_radius"])
    raise ValueError(f"unknown primitive kind {kind!r}")

"""Rotation-group machinery for momentum-helicity frames.

Provides plain 3x3 rotation matrices, the standard rotation carrying the
z-axis into a given momentum direction, Wigner D-matrices for integer spin,
the little-group (Wigner) angle induced on helicity frames, and the unitary
change of basis between spherical and Cartesian labels.

Conventions
-----------
* Active rotations; ``rotation_from_axis_angle(z_hat, a)`` maps x-hat toward
  y-hat for small positive ``a``.
* D-matrix rows and columns are ordered by descending magnetic quantum
  number, m = +j, ..., -j.
* ``wigner_D(1, R)`` conjugated by ``spherical_to_cartesian()`` equals R.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import expm
from scipy.spatial.transform import Rotation as _ScipyRotation

#: Largest spin for which D-matrices are constructed by default.
J_MAX = 10

_ROTATION_TOL = 1e-9
_POLE_TOL = 1e-15


@dataclass(frozen=True)
class Direction:
    """A point on the unit sphere identifying a momentum direction.

    Parameters
    ----------
    theta : float
        Polar angle in [0, pi], radians.
    phi : float
        Azimuthal angle, radians; stored reduced to [0, 2*pi). At the poles
        (theta = 0 or pi) the azimuth is canonicalized to 0.
    """

    theta: float
    phi: float

    def __post_init__(self):
        theta = float(self.theta)
        phi = float(self.phi)
        if -_POLE_TOL <= theta < 0.0:
            theta = 0.0
        if np.pi < theta <= np.pi + _POLE_TOL:
            theta = np.pi
        if not 0.0 <= theta <= np.pi:
            raise ValueError(f"polar angle must lie in [0, pi], got {theta}")
        phi = phi % (2.0 * np.pi)
        if theta in (0.0, np.pi):
            phi = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @classmethod
    def from_vector(cls, v) -> "Direction":
        """Direction of a nonzero 3-vector."""
        v = np.asarray(v, dtype=float)
        norm = np.linalg.norm(v)
        if norm == 0.0:
            raise ValueError("direction of the zero vector is undefined")
        theta = float(np.arccos(np.clip(v[2] / norm, -1.0, 1.0)))
        phi = float(np.arctan2(v[1], v[0]))
        return cls(theta, phi)

    @property
    def unit_vector(self) -> np.ndarray:
        st = np.sin(self.theta)
        return np.array(
            [st * np.cos(self.phi), st * np.sin(self.phi), np.cos(self.theta)]
        )


def rotation_z(angle: float) -> np.ndarray:
    """Rotation by ``angle`` about the z-axis."""
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def rotation_y(angle: float) -> np.ndarray:
    """Rotation by ``angle`` about the y-axis."""
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def rotation_from_axis_angle(axis, angle: float) -> np.ndarray:
    """Proper orthogonal matrix rotating by ``angle`` about ``axis``.

    The axis is normalized internally; a zero axis raises ``ValueError``.
    """
    axis = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(axis)
    if norm == 0.0:
        raise ValueError("rotation axis must have nonzero norm")
    u = axis / norm
    k = np.array([[0.0, -u[2], u[1]], [u[2], 0.0, -u[0]], [-u[1], u[0], 0.0]])
    c, s = np.cos(angle), np.sin(angle)
    return c * np.eye(3) + s * k + (1.0 - c) * np.outer(u, u)


def require_rotation_matrix(R, tol: float = _ROTATION_TOL) -> np.ndarray:
    """Validate that R is a proper orthogonal 3x3 matrix; returns it as float array."""
    R = np.asarray(R, dtype=float)
    if R.shape != (3, 3):
        raise ValueError(f"rotation matrix must be 3x3, got shape {R.shape}")
    if np.abs(R.T @ R - np.eye(3)).max() > tol:
        raise ValueError("matrix is not orthogonal within tolerance")
    if abs(np.linalg.det(R) - 1.0) > tol:
        raise ValueError("matrix determinant differs from +1; not a proper rotation")
    return R


def standard_rotation(direction: Direction) -> np.ndarray:
    """The rotation R_z(phi) R_y(theta) R_z(-phi) carrying z-hat to ``direction``.

    Fixes the helicity frame for every momentum direction. With the canonical
    pole convention (phi = 0) this is the identity at theta = 0 and R_y(pi)
    at theta = pi.
    """
    return (
        rotation_z(direction.phi)
        @ rotation_y(direction.theta)
        @ rotation_z(-direction.phi)
    )


@lru_cache(maxsize=None)
def _generators(j: int):
    """Spin-j angular momentum matrices (Jx, Jy, Jz), basis ordered m = +j..-j."""
    n = 2 * j + 1
    m = np.arange(j, -j - 1, -1, dtype=float)
    jz = np.diag(m).astype(complex)
    jp = np.zeros((n, n))
    for i in range(1, n):
        # raising operator: |j,m> -> sqrt(j(j+1) - m(m+1)) |j,m+1>
        jp[i - 1, i] = np.sqrt(j * (j + 1) - m[i] * (m[i] + 1))
    jm = jp.T
    jx = ((jp + jm) / 2.0).astype(complex)
    jy = (jp - jm) / 2.0j
    return jx, jy, jz


def angular_momentum_generators(j: int):
    """Return (Jx, Jy, Jz) for integer spin j in the descending-m basis."""
    j = _validated_spin(j)
    jx, jy, jz = _generators(j)
    return jx.copy(), jy.copy(), jz.copy()


def _validated_spin(j, j_max: int = J_MAX) -> int:
    if j != int(j) or j < 0:
        raise ValueError(
            f"spin must be a non-negative integer (half-integer spins unsupported), got {j}"
        )
    j = int(j)
    if j > j_max:
        raise ValueError(f"spin j={j} exceeds the supported maximum {j_max}")
    return j


def wigner_D(j: int, R, j_max: int = J_MAX) -> np.ndarray:
    """Wigner D-matrix of the spin-j representation of rotation ``R``.

    Constructed by exponentiating the spin-j generators along the axis-angle
    decomposition of R, which keeps the construction an exact homomorphism to
    rounding accuracy and stays stable for all supported spins.

    Returns
    -------
    numpy.ndarray
        Complex unitary matrix of shape (2j+1, 2j+1), indices ordered
        m = +j, ..., -j.
    """
    j = _validated_spin(j, j_max)
    R = require_rotation_matrix(R)
    if j == 0:
        return np.ones((1, 1), dtype=complex)
    rotvec = _ScipyRotation.from_matrix(R).as_rotvec()
    jx, jy, jz = _generators(j)
    return expm(-1j * (rotvec[0] * jx + rotvec[1] * jy + rotvec[2] * jz))


def small_d_matrix(j: int, beta) -> np.ndarray:
    """Reduced rotation matrix d^(j)(beta) = exp(-i beta Jy), vectorized in beta.

    Returns a real array of shape ``beta.shape + (2j+1, 2j+1)`` with the same
    descending-m index ordering as :func:`wigner_D`.
    """
    j = _validated_spin(j)
    _, jy, _ = _generators(j)
    evals, vecs = np.linalg.eigh(jy)
    beta = np.asarray(beta, dtype=float)
    phases = np.exp(-1j * np.multiply.outer(beta, evals))
    d = np.einsum("ab,...b,cb->...ac", vecs, phases, vecs.conj())
    return d.real


def wigner_angle(R, direction: Direction, tol: float = 1e-12) -> float:
    """Angle of the little-group rotation induced on the helicity frame.

    Composing the inverse standard rotation at the rotated direction with R
    and the standard rotation at ``direction`` yields a rotation that fixes
    the z-axis; the returned angle w, reduced to (-pi, pi], reproduces that
    composition as a rotation about z.

    Raises
    ------
    RuntimeError
        If the composed matrix fails to fix the z-axis within ``tol``.
    """
    R = require_rotation_matrix(R)
    rotated = Direction.from_vector(R @ direction.unit_vector)
    composed = standard_rotation(rotated).T @ R @ standard_rotation(direction)
    z = np.array([0.0, 0.0, 1.0])
    defect = max(
        np.abs(composed @ z - z).max(),
        np.abs(composed.T @ z - z).max(),
    )
    if defect > tol:
        raise RuntimeError(
            f"composed frame rotation does not fix the z-axis (defect {defect:.3e})"
        )
    w = float(np.arctan2(composed[1, 0], composed[0, 0]))
    if w <= -np.pi:
        w += 2.0 * np.pi
    return w


# Unitary <sigma|i>: rows sigma = (+1, 0, -1), columns i = (x, y, z).
_SPH_TO_CART = np.array(
    [
        [-1.0, 1.0j, 0.0],
        [0.0, 0.0, np.sqrt(2.0)],
        [1.0, 1.0j, 0.0],
    ],
    dtype=complex,
) / np.sqrt(2.0)


def spherical_to_cartesian() -> np.ndarray:
    """Unitary matrix mapping Cartesian axis labels to spherical labels.

    Rows are indexed by sigma = (+1, 0, -1) and columns by (x, y, z).
    Conjugating the spin-1 D-matrix by this unitary returns the plain 3x3
    rotation matrix: ``U.conj().T @ wigner_D(1, R) @ U == R``.
    """
    return _SPH_TO_CART.copy()

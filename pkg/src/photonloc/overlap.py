"""Equal-time scalar products and overlap kernels for localized-state families.

Production path
---------------
For every family the equal-time overlap of two label states reduces to

    K_{l1 l2}(r) = (2*pi)^-3 * integral d^3k  w(k) G_{l1 l2}(khat) e^{i k.r},

with r = x1_vec - x2_vec, radial weight w(k) = k^s exp(-a^2 k^2) carrying the
measure left over by the covariant normalization, and G the helicity sum over
the family's spectrum. In the frame aligned with r the angular matrix is
diagonal with entries that are polynomials in cos(theta); projecting them on
Legendre polynomials turns the angular integral into 4*pi i^l j_l(kr) per
order, leaving one-dimensional radial integrals evaluated by Gauss-Legendre
quadrature against the Gaussian regulator. The aligned result is conjugated
back by the representation matrix of the aligning rotation.

Oracle path
-----------
``brute_force_overlap`` and ``brute_force_kernel_matrix`` sum the full
3-D product grid (Gauss-Legendre in cos(theta) x uniform azimuth x
Gauss-Legendre radial) at four times the configured node counts, building
the integrand from momentum amplitudes and D-matrices directly. They share
no reduction step with the production path and back every kernel result in
the tests and the ``--oracle`` CLI path.

All evaluations are pure functions with a fixed summation order, so results
do not depend on how calls are distributed over threads or processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad
from scipy.special import eval_legendre

from .bessel import spherical_jn_sequence
from .polarization import validate_helicities
from .rotations import (
    Direction,
    small_d_matrix,
    spherical_to_cartesian,
    standard_rotation,
    wigner_D,
)
from .states import (
    RADIATION_GAUGE,
    SCALAR,
    LocalizedState,
    StateFamily,
    momentum_amplitude,
)

#: Momentum integrals are truncated at k = cutoff / a; exp(-8.5^2) ~ 5e-32.
RADIAL_CUTOFF = 8.5

RADIAL_RULES = ("gauss-with-gaussian-weight", "adaptive")


@dataclass(frozen=True)
class QuadratureSpec:
    """Node counts and tolerances for the overlap quadratures.

    ``n_theta`` Gauss-Legendre nodes in cos(theta), ``n_phi`` uniform
    azimuthal nodes (used by the product-grid oracle), and ``n_radial`` nodes
    for the radial rule. The oracle multiplies every count by four.
    """

    n_theta: int = 32
    n_phi: int = 32
    radial_rule: str = "gauss-with-gaussian-weight"
    n_radial: int = 64
    abs_tol: float = 1e-10
    rel_tol: float = 1e-6

    def __post_init__(self):
        for name in ("n_theta", "n_phi", "n_radial"):
            if getattr(self, name) < 4:
                raise ValueError(f"{name} must be at least 4")
        if self.radial_rule not in RADIAL_RULES:
            raise ValueError(f"radial rule must be one of {RADIAL_RULES}")
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True, eq=False)
class KernelMatrix:
    """Label-by-label equal-time overlap matrix at a fixed spatial separation."""

    separation: np.ndarray
    entries: np.ndarray
    family: str
    regulator_width: float
    labels: tuple


def gaussian_delta(r: float, a: float) -> float:
    """Gaussian-regulated three-dimensional delta, exp(-r^2/4a^2) / (8 pi^(3/2) a^3)."""
    return np.exp(-r * r / (4.0 * a * a)) / (8.0 * np.pi**1.5 * a**3)


@lru_cache(maxsize=None)
def _leggauss(n: int):
    return np.polynomial.legendre.leggauss(n)


def _radial_integrals(lmax: int, r: float, a: float, s: float,
                      q: QuadratureSpec) -> np.ndarray:
    """I_l = integral_0^inf dk k^(2+s) exp(-a^2 k^2) j_l(k r) for l = 0..lmax."""
    if q.radial_rule == "adaptive":
        upper = RADIAL_CUTOFF / a
        out = np.empty(lmax + 1)
        for l in range(lmax + 1):
            out[l], _ = quad(
                lambda k: k ** (2.0 + s)
                * np.exp(-a * a * k * k)
                * spherical_jn_sequence(l, k * r)[l],
                0.0,
                upper,
                epsabs=q.abs_tol,
                epsrel=q.rel_tol,
                limit=200,
            )
        return out
    t, w = _leggauss(q.n_radial)
    t = (t + 1.0) * (RADIAL_CUTOFF / 2.0)
    w = w * (RADIAL_CUTOFF / 2.0)
    jl = spherical_jn_sequence(lmax, t * (r / a))
    weight = w * t ** (2.0 + s) * np.exp(-t * t)
    return a ** -(3.0 + s) * (jl @ weight)


def _separation(rvec) -> np.ndarray:
    rvec = np.asarray(rvec, dtype=float)
    if rvec.shape != (3,):
        raise ValueError(f"separation must be a 3-vector, got shape {rvec.shape}")
    return rvec


def _aligned_diagonal(j: int, helicities: tuple, r: float, a: float, s: float,
                      q: QuadratureSpec) -> np.ndarray:
    """Diagonal of the kernel in the frame whose z-axis is the separation."""
    mu, w = _leggauss(max(q.n_theta, 2 * j + 1))
    d = small_d_matrix(j, np.arccos(mu))  # (n, 2j+1, 2j+1)
    cols = [j - lam for lam in helicities]
    f = (d[:, :, cols] ** 2).sum(axis=2)  # (n, 2j+1); phi-independent diagonals
    lmax = 2 * j
    radial = _radial_integrals(lmax, r, a, s, q)
    diag = np.zeros(2 * j + 1, dtype=complex)
    for l in range(lmax + 1):
        coeff = (2 * l + 1) / 2.0 * (w * eval_legendre(l, mu)) @ f
        diag += (1j) ** l * coeff * radial[l]
    return diag * (4.0 * np.pi / (2.0 * np.pi) ** 3)


def _spherical_kernel(j: int, helicities: tuple, rvec, a: float, s: float,
                      q: QuadratureSpec) -> np.ndarray:
    """Kernel matrix in the spherical label basis at separation ``rvec``."""
    rvec = np.asarray(rvec, dtype=float)
    rnorm = float(np.linalg.norm(rvec))
    diag = _aligned_diagonal(j, helicities, rnorm, a, s, q)
    if rnorm == 0.0:
        return np.diag(diag)
    D = wigner_D(j, standard_rotation(Direction.from_vector(rvec)))
    return D @ np.diag(diag) @ D.conj().T


def _family_kernel_parameters(family: StateFamily):
    """(helicity set, label basis, radial measure power) for a 3-label family."""
    if family.kind == SCALAR:
        raise ValueError(
            "the scalar family has a single label; use qm_overlap on scalar states"
        )
    s = 1.0 - 2.0 * family.weight_exponent
    return family.helicities, family.label_basis, s


def overlap_kernel_matrix(family: StateFamily, rvec, a: float,
                          q: QuadratureSpec | None = None) -> KernelMatrix:
    """Full label-by-label equal-time overlap matrix at spatial separation rvec.

    Full-helicity families give the regulated delta times the identity;
    photon families lose the longitudinal projector term, which survives as a
    non-local transverse tail.
    """
    if a <= 0:
        raise ValueError(f"regulator width must be positive, got {a}")
    q = q or QuadratureSpec()
    helicities, basis, s = _family_kernel_parameters(family)
    rvec = _separation(rvec)
    entries = _spherical_kernel(1, helicities, rvec, a, s, q)
    if basis == "cartesian":
        u = spherical_to_cartesian()
        entries = u.conj().T @ entries @ u
    return KernelMatrix(rvec.copy(), entries, family.kind, float(a), family.labels)


def transverse_kernel(rvec, a: float, q: QuadratureSpec | None = None) -> np.ndarray:
    """Fourier transform of khat_i khat_j against the regulated measure.

    Real symmetric 3x3 matrix; its trace equals the regulated scalar delta
    and its large-separation limit is -(3 rhat rhat^T - I) / (4 pi r^3).
    """
    if a <= 0:
        raise ValueError(f"regulator width must be positive, got {a}")
    q = q or QuadratureSpec()
    entries = _spherical_kernel(1, (0,), _separation(rvec), a, 0.0, q)
    u = spherical_to_cartesian()
    entries = u.conj().T @ entries @ u
    scale = np.abs(entries).max()
    if scale > 0 and np.abs(entries.imag).max() > 1e-10 * scale:
        raise RuntimeError("transverse kernel acquired a non-negligible imaginary part")
    return entries.real


def general_j_defect(j: int, helicities, rvec, a: float,
                     q: QuadratureSpec | None = None) -> KernelMatrix:
    """Kernel of the completeness defect for a spin-j label set.

    ``helicities`` lists the helicities the particle actually carries; the
    returned matrix is the Fourier transform, against the regulated measure,
    of the helicity sum over the *missing* helicities. It vanishes for the
    full set and is nonzero for every incomplete one.
    """
    if j != int(j) or j < 1:
        raise ValueError(f"spin must be a positive integer, got {j}")
    j = int(j)
    if a <= 0:
        raise ValueError(f"regulator width must be positive, got {a}")
    q = q or QuadratureSpec()
    present = validate_helicities(helicities, j)
    missing = tuple(lam for lam in range(-j, j + 1) if lam not in present)
    rvec = _separation(rvec)
    labels = tuple(range(j, -j - 1, -1))
    if not missing:
        entries = np.zeros((2 * j + 1, 2 * j + 1), dtype=complex)
    else:
        entries = _spherical_kernel(j, missing, rvec, a, 0.0, q)
    return KernelMatrix(rvec.copy(), entries, f"helicity-defect-j{j}", float(a), labels)


def _require_overlap_compatible(s1: LocalizedState, s2: LocalizedState):
    for s in (s1, s2):
        if s.family.frequency_sign != "positive":
            raise ValueError(
                "negative-frequency states are translation test fixtures and do "
                "not enter overlap computations"
            )
    if s1.family.kind != s2.family.kind:
        raise ValueError(
            f"overlap requires matching families, got {s1.family.kind!r} and "
            f"{s2.family.kind!r}"
        )
    if s1.x[0] != s2.x[0]:
        raise ValueError("only equal-time overlaps are supported")
    if s1.regulator_width != s2.regulator_width:
        raise ValueError("states must share the same regulator width")


def qm_overlap(s1: LocalizedState, s2: LocalizedState,
               q: QuadratureSpec | None = None) -> complex:
    """Quantum-mechanical overlap <s1|s2> under the covariant measure.

    The momentum integral carries one power of omega from the covariant
    normalization of the basis vectors; everything else lives in the state
    amplitudes. Reduces to the label-coefficient contraction of the family's
    kernel matrix.
    """
    q = q or QuadratureSpec()
    _require_overlap_compatible(s1, s2)
    rvec = s1.x[1:] - s2.x[1:]
    a = s1.regulator_width
    if s1.family.kind == SCALAR:
        entries = _spherical_kernel(0, (0,), rvec, a, 0.0, q)
    else:
        entries = overlap_kernel_matrix(s1.family, rvec, a, q).entries
    return complex(s1.coefficients.conj() @ entries @ s2.coefficients)


def alt_overlap(s1: LocalizedState, s2: LocalizedState,
                q: QuadratureSpec | None = None) -> complex:
    """Label-summed alternative pairing of two radiation-gauge states.

    Traces over the vector label using the unit normalization of the
    transverse polarization vectors, so the integrand collapses to twice the
    plane-wave Gaussian and the result is twice the regulated delta. The
    states' label coefficients never enter; that loss of label resolution is
    exactly what separates this pairing from :func:`qm_overlap`.
    """
    q = q or QuadratureSpec()
    for s in (s1, s2):
        if s.family.kind != RADIATION_GAUGE:
            raise ValueError(
                "the alternative pairing is defined for radiation-gauge states only"
            )
    _require_overlap_compatible(s1, s2)
    rnorm = float(np.linalg.norm(s1.x[1:] - s2.x[1:]))
    a = s1.regulator_width
    i0 = _radial_integrals(0, rnorm, a, 0.0, q)[0]
    return complex(2.0 * (4.0 * np.pi / (2.0 * np.pi) ** 3) * i0)


# --- brute-force product-grid oracle ---------------------------------------


def _oracle_angular_grid(q: QuadratureSpec):
    nmu, nphi = 4 * q.n_theta, 4 * q.n_phi
    mu, wmu = _leggauss(nmu)
    phi = np.arange(nphi) * (2.0 * np.pi / nphi)
    st = np.sqrt(1.0 - mu**2)
    khat = np.empty((nmu * nphi, 3))
    khat[:, 0] = np.outer(st, np.cos(phi)).ravel()
    khat[:, 1] = np.outer(st, np.sin(phi)).ravel()
    khat[:, 2] = np.outer(mu, np.ones(nphi)).ravel()
    weights = np.outer(wmu, np.full(nphi, 2.0 * np.pi / nphi)).ravel()
    return khat, weights


def _oracle_radial_grid(q: QuadratureSpec, a: float):
    nk = 4 * q.n_radial
    t, w = _leggauss(nk)
    k = (t + 1.0) * (RADIAL_CUTOFF / (2.0 * a))
    wk = w * (RADIAL_CUTOFF / (2.0 * a))
    return k, wk


_ANGULAR_COEFF_CACHE: dict = {}


def _oracle_label_coefficients(basis: str, q: QuadratureSpec):
    """Label coefficients on the oracle angular grid, built from D-matrices.

    Returns (khat, angular weights, A) with A[label, node, helicity] the
    amplitude coefficient for each of the three labels; helicity axis ordered
    (+1, 0, -1). Evaluated node by node through the rotation module,
    independently of the closed forms used by the state amplitudes.
    """
    key = (basis, q.n_theta, q.n_phi)
    if key in _ANGULAR_COEFF_CACHE:
        return _ANGULAR_COEFF_CACHE[key]
    khat, weights = _oracle_angular_grid(q)
    u = spherical_to_cartesian()
    A = np.empty((3, khat.shape[0], 3), dtype=complex)
    for n, vec in enumerate(khat):
        D = wigner_D(1, standard_rotation(Direction.from_vector(vec)))
        inv = D.conj().T  # rows helicity, cols sigma, both descending
        if basis == "spherical":
            A[:, n, :] = inv.T
        else:
            A[:, n, :] = (inv @ u).T
    _ANGULAR_COEFF_CACHE[key] = (khat, weights, A)
    return khat, weights, A


def brute_force_kernel_matrix(family: StateFamily, rvec, a: float,
                              q: QuadratureSpec | None = None) -> KernelMatrix:
    """Oracle kernel matrix by direct 3-D product-grid quadrature."""
    if a <= 0:
        raise ValueError(f"regulator width must be positive, got {a}")
    q = q or QuadratureSpec()
    helicities, basis, s = _family_kernel_parameters(family)
    rvec = _separation(rvec)
    khat, wang, A = _oracle_label_coefficients(basis, q)
    rows = [1 - lam for lam in helicities]
    G = np.einsum("anl,bnl->abn", A[:, :, rows].conj(), A[:, :, rows])
    k, wk = _oracle_radial_grid(q, a)
    wrad = wk * k ** (2.0 + s) * np.exp(-a * a * k * k)
    phase = np.exp(1j * np.outer(k, khat @ rvec))
    entries = np.einsum("k,kn,abn->ab", wrad, phase, G * wang) / (2.0 * np.pi) ** 3
    return KernelMatrix(rvec.copy(), entries, family.kind, float(a), family.labels)


def brute_force_overlap(s1: LocalizedState, s2: LocalizedState,
                        q: QuadratureSpec | None = None) -> complex:
    """Oracle overlap summing momentum amplitudes over the 3-D product grid."""
    q = q or QuadratureSpec()
    _require_overlap_compatible(s1, s2)
    a = s1.regulator_width
    khat, wang, _ = _oracle_label_coefficients("spherical", q)
    k, wk = _oracle_radial_grid(q, a)
    wrad = wk * k**3  # k^2 from the volume element, one k from the measure
    total = 0.0 + 0.0j
    block = max(1, 2_000_000 // khat.shape[0])
    for start in range(0, k.size, block):
        kb = k[start : start + block]
        kvecs = kb[:, None, None] * khat[None, :, :]
        acc = np.zeros((kb.size, khat.shape[0]), dtype=complex)
        for lam in s1.family.helicities:
            amp1 = momentum_amplitude(s1, kvecs, lam)
            amp2 = momentum_amplitude(s2, kvecs, lam)
            acc += amp1.conj() * amp2
        total += wrad[start : start + block] @ (acc @ wang)
    return complex(total)

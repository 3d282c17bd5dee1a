"""Simultaneous complex root finding with certified per-root error radii.

The solver runs an all-roots (Aberth-Ehrlich) iteration in double precision,
then polishes and certifies each root in higher working precision against the
exact integer coefficients.  The certificate is the classical inclusion bound:
every polynomial of degree d has a root within d*|f(z)/f'(z)| of z, so d
pairwise disjoint disks of that radius pin down all d roots, one per disk.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .polynomials import PrimitivePolynomial

_SWEEP_BUDGET = 200
_ANGLE_OFFSET = 2.0 * math.pi * (math.sqrt(5) - 1) / 2  # irrational fraction of a turn


class RootFindingError(RuntimeError):
    """Root iteration failed to certify; retry with a looser tol or report upstream."""


@dataclass(frozen=True)
class CertifiedComplexRoots:
    """All complex roots, each inside a certified disk of the given radius."""

    roots: tuple[complex, ...]
    radii: tuple[float, ...]

    @property
    def degree(self) -> int:
        return len(self.roots)

    def max_radius(self) -> float:
        return max(self.radii)


def complex_roots(f: PrimitivePolynomial, tol: float = 1e-12) -> CertifiedComplexRoots:
    """Find all roots of f with certified radii at most ``tol``.

    Raises :class:`RootFindingError` if certification fails after the
    iteration budget and the precision ladder.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    d = f.degree
    if d == 1:
        a0, a1 = f.coeffs
        try:
            root = -a0 / a1  # correctly rounded even for big ints
        except OverflowError:
            root = math.inf
        if not math.isfinite(root):
            raise RootFindingError("root exceeds double-precision range")
        radius = 4.0 * np.finfo(float).eps * (1.0 + abs(root))
        if radius <= tol:
            return CertifiedComplexRoots((complex(root),), (radius,))
        pair = _certify(f.coeffs, [complex(root)], dps=30, steps=2)
        return _package(pair, tol)
    try:
        approx = _aberth(f.coeffs)
    except OverflowError:  # coefficients beyond float range
        approx = _aberth_mp(f.coeffs, dps=60)
    fast = _certify_double(f.coeffs, approx)
    if fast is not None and _accept(*fast, tol):
        return _package(fast, tol)
    for dps, steps in ((30, 2), (60, 6)):
        centers, radii = _certify(f.coeffs, approx, dps=dps, steps=steps)
        if _accept(centers, radii, tol):
            return _package((centers, radii), tol)
        approx = centers
    approx = _aberth_mp(f.coeffs, dps=120)
    centers, radii = _certify(f.coeffs, approx, dps=120, steps=4)
    if _accept(centers, radii, tol):
        return _package((centers, radii), tol)
    raise RootFindingError(
        f"could not certify roots of {f} to radius {tol:g}; "
        "the input may be ill-conditioned")


def _package(pair, tol) -> CertifiedComplexRoots:
    centers, radii = pair
    order = sorted(range(len(centers)), key=lambda i: (centers[i].real, centers[i].imag))
    return CertifiedComplexRoots(
        roots=tuple(centers[i] for i in order),
        radii=tuple(radii[i] for i in order),
    )


def _accept(centers, radii, tol) -> bool:
    n = len(centers)
    if any(not (r <= tol) for r in radii):
        return False
    for i in range(n):
        for j in range(i + 1, n):
            if abs(centers[i] - centers[j]) <= radii[i] + radii[j]:
                return False
    return True


def _aberth(coeffs: tuple[int, ...]) -> list[complex]:
    d = len(coeffs) - 1
    c = np.array([float(x) for x in coeffs], dtype=float) / float(coeffs[-1])
    radius = 1.0 + float(np.max(np.abs(c[:-1])))  # Cauchy bound
    k = np.arange(d)
    z = radius * np.exp(1j * (2.0 * np.pi * k / d + _ANGLE_OFFSET))
    for _ in range(_SWEEP_BUDGET):
        fz = np.full(d, c[-1], dtype=complex)
        fpz = np.zeros(d, dtype=complex)
        for a in c[-2::-1]:
            fpz = fpz * z + fz
            fz = fz * z + a
        with np.errstate(all="ignore"):
            newton = fz / fpz
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            repulsion = np.sum(1.0 / diff, axis=1)
            step = newton / (1.0 - newton * repulsion)
        bad = ~np.isfinite(step)
        if np.any(bad):
            fallback = np.where(np.isfinite(newton), newton, 1e-3 * radius)
            step = np.where(bad, fallback, step)
        z = z - step
        if np.all(np.abs(step) <= 1e-14 * (1.0 + np.abs(z))):
            break
    return [complex(v) for v in z]


def _aberth_mp(coeffs: tuple[int, ...], dps: int) -> list[complex]:
    d = len(coeffs) - 1
    with mp.workdps(dps):
        radius = 1 + mp.mpf(max(abs(c) for c in coeffs[:-1])) / coeffs[-1]
        z = [radius * mp.expjpi(2 * mp.mpf(k) / d + mp.mpf(_ANGLE_OFFSET) / mp.pi)
             for k in range(d)]
        for _ in range(_SWEEP_BUDGET):
            moved = mp.mpf(0)
            for i in range(d):
                fz, fpz = _eval_pair(coeffs, z[i])
                if fpz == 0:
                    continue
                newton = fz / fpz
                rep = mp.fsum(1 / (z[i] - z[j]) for j in range(d) if j != i)
                denom = 1 - newton * rep
                step = newton if denom == 0 else newton / denom
                z[i] -= step
                moved = max(moved, abs(step))
            if moved < mp.mpf(10) ** (-dps + 5):
                break
        return [complex(v) for v in z]


def _certify_double(coeffs: tuple[int, ...],
                    approx) -> tuple[list[complex], list[float]] | None:
    """Certification in double precision with a rigorous evaluation-error bound.

    Returns None when any coefficient is too large to round exactly to float
    or a derivative is swamped by rounding error; callers then fall back to
    the high-precision path.
    """
    if any(abs(a) > 2 ** 53 for a in coeffs):
        return None
    d = len(coeffs) - 1
    c = np.array([float(a) for a in coeffs])
    z = np.array(approx, dtype=complex)
    az = np.abs(z)
    fz = np.full(d, c[-1], dtype=complex)
    fpz = np.zeros(d, dtype=complex)
    mag = np.full(d, abs(c[-1]))
    magp = np.zeros(d)
    for a in c[-2::-1]:
        fpz = fpz * z + fz
        fz = fz * z + a
        magp = magp * az + mag
        mag = mag * az + abs(a)
    eps = np.finfo(float).eps
    # running-error bound for complex Horner, with headroom over the real case
    err_f = (4.0 * d + 4.0) * eps * mag
    err_fp = (4.0 * d + 4.0) * eps * magp
    denom = np.abs(fpz) - err_fp
    if np.any(denom <= 0.0):
        return None
    radii = d * (np.abs(fz) + err_f) / denom + 4.0 * eps * (1.0 + az)
    return [complex(v) for v in z], [float(r) for r in radii]


def _eval_pair(coeffs, z):
    fz = mp.mpc(coeffs[-1])
    fpz = mp.mpc(0)
    for a in coeffs[-2::-1]:
        fpz = fpz * z + fz
        fz = fz * z + a
    return fz, fpz


def _certify(coeffs: tuple[int, ...], approx, dps: int,
             steps: int) -> tuple[list[complex], list[float]]:
    """Newton-polish each center, then bound the nearest root distance."""
    d = len(coeffs) - 1
    centers: list[complex] = []
    radii: list[float] = []
    with mp.workdps(dps):
        for z0 in approx:
            z = mp.mpc(z0)
            for _ in range(steps):
                fz, fpz = _eval_pair(coeffs, z)
                if fpz == 0:
                    z += mp.mpf(10) ** (-dps // 2)
                    continue
                z -= fz / fpz
            fz, fpz = _eval_pair(coeffs, z)
            if fpz == 0:
                radius = math.inf
            else:
                radius = float(d * abs(fz / fpz)) * (1 + 1e-9)
            zc = complex(z)
            # slack for the mpc -> complex rounding of the center itself
            radius += 4e-16 * (1.0 + abs(zc))
            centers.append(zc)
            radii.append(radius)
    return centers, radii

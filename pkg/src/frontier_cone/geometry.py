"""Orthonormal complements, hyperplane projections and output rotation.

These are the coordinate changes that turn the conical-hull estimation
problem into a convex-hull problem on the hyperplane through the
evaluation point and perpendicular to it.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRay, InvalidAnchor, NotApplicable

ORTHO_TOL = 1e-9


@dataclass(frozen=True)
class Basis:
    """An anchor vector plus an orthonormal basis of its complement.

    ``columns`` is d x (d-1) with orthonormal columns, each orthogonal to
    ``anchor``.
    """

    anchor: np.ndarray
    columns: np.ndarray


@dataclass(frozen=True)
class ProjectedPoint:
    z2: np.ndarray
    yprime: float


@dataclass(frozen=True)
class SectionProjection:
    """Observations mapped onto the hyperplane section through ``x0``.

    ``z2[i]`` are the in-plane coordinates of the point where ray i meets
    the hyperplane perpendicular to ``x0`` through ``x0``; ``yprime[i]`` is
    the output rescaled by the same ray factor.
    """

    z2: np.ndarray       # (n, d-1)
    yprime: np.ndarray   # (n,)
    basis: Basis
    scale: np.ndarray    # (n,) per-ray factor |x0|^2 / (x0' X_i)

    def __len__(self):
        return self.yprime.shape[0]

    def __getitem__(self, i):
        return ProjectedPoint(self.z2[i], float(self.yprime[i]))

    @property
    def x0(self):
        return self.basis.anchor

    @property
    def input_dim(self):
        """Dimension of the pre-projection input space."""
        return self.z2.shape[1] + 1


@dataclass(frozen=True)
class TransformedOutputs:
    u: np.ndarray
    omega: float


@dataclass(frozen=True)
class OutputRotation:
    """Outputs in the rotated frame: components across and along ``y0``."""

    u: np.ndarray      # (n, q-1)
    omega: np.ndarray  # (n,)
    basis: Basis

    def __len__(self):
        return self.omega.shape[0]

    def __getitem__(self, i):
        return TransformedOutputs(self.u[i], float(self.omega[i]))

    def reconstruct(self):
        """Map (u, omega) back to the original output coordinates."""
        y0 = self.basis.anchor
        return self.u @ self.basis.columns.T + np.outer(self.omega, y0 / np.linalg.norm(y0))


def orthonormal_complement(anchor, d=None):
    """Deterministic orthonormal basis of the hyperplane orthogonal to ``anchor``.

    Householder complement of the normalized anchor; each column's sign is
    fixed so its first nonzero entry is positive.  Anchors must be strictly
    positive (rays through the data never leave the positive orthant).
    """
    anchor = np.asarray(anchor, dtype=np.float64)
    if anchor.ndim != 1 or anchor.size == 0:
        raise InvalidAnchor("anchor must be a nonempty vector")
    if d is not None and d != anchor.size:
        raise InvalidAnchor(f"anchor has dimension {anchor.size}, expected {d}")
    if not np.all(np.isfinite(anchor)) or np.any(anchor <= 0.0):
        raise InvalidAnchor("anchor entries must be finite and strictly positive")
    return _complement_unchecked(anchor)


def _complement_unchecked(anchor):
    # Also serves anchors with zero entries, e.g. the padded (x0, 0) of the
    # rotated-output reduction; only nonzero length is required.
    dim = anchor.size
    if dim == 1:
        return Basis(anchor.copy(), np.zeros((1, 0)))

    unit = anchor / np.linalg.norm(anchor)
    mirror = unit.copy()
    mirror[0] -= 1.0  # unit - e1; zero only when anchor is along e1
    norm = np.linalg.norm(mirror)
    if norm < 1e-12:
        columns = np.zeros((dim, dim - 1))
        columns[1:, :] = np.eye(dim - 1)
        return Basis(anchor.copy(), columns)
    mirror /= norm
    # Householder reflector sending e1 to unit; its trailing columns span
    # the complement of the anchor.
    columns = -2.0 * np.outer(mirror, mirror[1:])
    columns[1:, :] += np.eye(dim - 1)

    for j in range(dim - 1):
        lead = np.flatnonzero(np.abs(columns[:, j]) > 1e-12)
        if lead.size and columns[lead[0], j] < 0.0:
            columns[:, j] = -columns[:, j]
    return Basis(anchor.copy(), columns)


def project_to_section(inputs, outputs, x0, basis=None):
    """Project observation rays onto the hyperplane through ``x0``.

    ``inputs`` may carry signed coordinates (the rotated-output reduction
    produces them); only strict positivity of the inner products with
    ``x0`` is required.  ``outputs`` is the single output column.
    """
    inputs = np.asarray(inputs, dtype=np.float64)
    outputs = np.asarray(outputs, dtype=np.float64)
    if basis is None:
        basis = orthonormal_complement(x0)
    x0 = basis.anchor
    dots = inputs @ x0
    bad = np.flatnonzero(dots <= 0.0)
    if bad.size:
        raise DegenerateRay(int(bad[0]))
    scale = (x0 @ x0) / dots
    z2 = (scale[:, None] * inputs) @ basis.columns
    return SectionProjection(z2=z2, yprime=scale * outputs, basis=basis, scale=scale)


def transform_outputs(outputs, y0, basis=None):
    """Rotate multi-dimensional outputs into (across-y0, along-y0) coordinates."""
    outputs = np.asarray(outputs, dtype=np.float64)
    y0 = np.asarray(y0, dtype=np.float64)
    if y0.size < 2:
        raise NotApplicable("output rotation needs q >= 2; the q=1 path is the identity")
    if basis is None:
        basis = orthonormal_complement(y0)
    u = outputs @ basis.columns
    omega = outputs @ y0 / np.linalg.norm(y0)
    return OutputRotation(u=u, omega=omega, basis=basis)

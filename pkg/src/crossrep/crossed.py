"""Crossed-product matrix model, twisted element arithmetic, spectral projections.

The model realizes the crossed product concretely: the algebra embeds as a
block diagonal of its translates and each group element becomes a block
permutation unitary, so every abstract identity can be checked against
ordinary matrix arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import AlgElement, GroupAction
from .errors import ActionMismatch, InvariantViolation
from .linalg import DEFAULT_TOL, Tolerance, orthonormal_span
from .reps import CovariantRep, Rep

__all__ = [
    "CrossedElement",
    "CrossedModel",
    "build_crossed_model",
    "crossed_multiply",
    "crossed_adjoint",
    "monomial",
    "element_to_matrix",
    "spectral_projection",
    "projection_matrix",
    "fixed_point_algebra",
]


class CrossedElement:
    """A finite sum ``sum_g a_g U^g`` stored as one coefficient per element."""

    __slots__ = ("action", "coeffs")

    def __init__(self, action: GroupAction, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) != action.group.order:
            raise InvariantViolation("need one coefficient per group element")
        for c in coeffs:
            if c.parent != action.algebra:
                raise ActionMismatch("coefficient from a different algebra")
        self.action = action
        self.coeffs = coeffs

    @classmethod
    def zero(cls, action: GroupAction) -> "CrossedElement":
        return cls(action, [action.algebra.zero() for _ in range(action.group.order)])

    def __add__(self, other: "CrossedElement") -> "CrossedElement":
        self._check(other)
        return CrossedElement(
            self.action, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __mul__(self, other):
        if isinstance(other, CrossedElement):
            return crossed_multiply(self, other)
        return CrossedElement(self.action, [other * c for c in self.coeffs])

    def adjoint(self) -> "CrossedElement":
        return crossed_adjoint(self)

    def norm(self) -> float:
        return float(np.sqrt(sum(c.norm() ** 2 for c in self.coeffs)))

    def _check(self, other: "CrossedElement"):
        if other.action is not self.action and (
            other.action.group != self.action.group
            or other.action.algebra != self.action.algebra
        ):
            raise ActionMismatch("crossed elements over different actions")


def monomial(action: GroupAction, a: AlgElement, g: int) -> CrossedElement:
    """The single-term element ``a U^g``."""
    x = CrossedElement.zero(action)
    x.coeffs[g] = a
    return x


def crossed_multiply(x: CrossedElement, y: CrossedElement) -> CrossedElement:
    """Twisted convolution: ``(a U^g)(b U^h) = a alpha_g(b) U^{gh}``."""
    x._check(y)
    G = x.action.group
    out = CrossedElement.zero(x.action)
    for g in range(G.order):
        a = x.coeffs[g]
        if a.norm() == 0:
            continue
        for h in range(G.order):
            b = y.coeffs[h]
            if b.norm() == 0:
                continue
            gh = G.mul(g, h)
            out.coeffs[gh] = out.coeffs[gh] + a * x.action.apply(g, b)
    return out


def crossed_adjoint(x: CrossedElement) -> CrossedElement:
    """Twisted involution: ``(a U^g)* = alpha_{g^{-1}}(a*) U^{g^{-1}}``."""
    G = x.action.group
    out = CrossedElement.zero(x.action)
    for g in range(G.order):
        ginv = G.inv(g)
        out.coeffs[ginv] = x.action.apply(ginv, x.coeffs[g].adjoint())
    return out


@dataclass
class CrossedModel:
    """Concrete matrix realization of a crossed product.

    The algebra embeds block-diagonally through its right translates and
    the group acts by block permutations on ``|G|`` copies of the defining
    space; the span of ``psi(a) V_g`` has dimension |G| * dim(A).
    """

    action: GroupAction
    host_dim: int
    psi_images: dict[str, np.ndarray]
    vg: list[np.ndarray]
    span_basis: list[np.ndarray] = field(repr=False)

    @property
    def span_dim(self) -> int:
        return len(self.span_basis)

    def psi(self, x: AlgElement) -> np.ndarray:
        """Embed an algebra element, block i carrying its g_i-translate."""
        G = self.action.group
        D = self.action.algebra.defining_dim
        out = np.zeros((self.host_dim, self.host_dim), dtype=complex)
        for i in range(G.order):
            out[i * D : (i + 1) * D, i * D : (i + 1) * D] = (
                self.action.apply(i, x).to_matrix()
            )
        return out

    def defining_covariant_rep(self) -> CovariantRep:
        return CovariantRep(
            Rep(self.host_dim, self.psi_images), self.action, self.vg
        )


def build_crossed_model(action: GroupAction, tol: Tolerance = DEFAULT_TOL) -> CrossedModel:
    """Construct the block-permutation matrix model of ``A x| G``.

    Group elements are taken in the group's own index order with the
    identity first; ``V_g`` sends copy i to the copy indexed by ``g_i g``.
    """
    G = action.group
    A = action.algebra
    n, D = G.order, A.defining_dim
    host = n * D
    vg = []
    for g in range(n):
        V = np.zeros((host, host), dtype=complex)
        for i in range(n):
            j = G.mul(i, g)
            V[i * D : (i + 1) * D, j * D : (j + 1) * D] = np.eye(D)
        vg.append(V)

    labels = A.basis_labels()
    units = A.basis_elements()
    model = CrossedModel(action, host, {}, vg, [])
    model.psi_images = {l: model.psi(e) for l, e in zip(labels, units)}

    # model invariants: covariance, homomorphism, and faithfulness of the span
    for g in range(n):
        ginv = G.inv(g)
        for l, e in zip(labels, units):
            lhs = vg[g] @ model.psi_images[l] @ vg[ginv]
            rhs = model.psi(action.apply(g, e))
            if np.linalg.norm(lhs - rhs) > 1e3 * tol.abs_eps * host:
                raise InvariantViolation("model covariance V_g psi(a) V_g* failed")
        for h in range(n):
            if np.linalg.norm(vg[g] @ vg[h] - vg[G.mul(g, h)]) > tol.abs_eps * host:
                raise InvariantViolation("model unitaries fail V_g V_h = V_gh")
    spanning = [model.psi_images[l] @ vg[g] for g in range(n) for l in labels]
    model.span_basis = orthonormal_span(spanning, tol)
    if model.span_dim != n * A.linear_dim:
        raise InvariantViolation(
            f"span dimension {model.span_dim} != |G| dim(A) = {n * A.linear_dim}"
        )
    return model


def element_to_matrix(model: CrossedModel, x: CrossedElement) -> np.ndarray:
    """Image of a crossed element under the model, ``sum_g psi(a_g) V_g``."""
    if x.action.group != model.action.group or x.action.algebra != model.action.algebra:
        raise ActionMismatch("element belongs to a different crossed product")
    out = np.zeros((model.host_dim, model.host_dim), dtype=complex)
    for g in range(model.action.group.order):
        if x.coeffs[g].norm() > 0:
            out += model.psi(x.coeffs[g]) @ model.vg[g]
    return out


def spectral_projection(action: GroupAction, chi, x: AlgElement) -> AlgElement:
    """Character-averaged projection onto a spectral subspace.

    ``chi`` is the character of one irrep, indexed by group element; the
    projection is ``(dim/|G|) sum_g conj(chi(g)) alpha_g(x)`` and the
    trivial character yields the group average into the fixed-point algebra.
    """
    chi = np.asarray(chi, dtype=complex)
    G = action.group
    if chi.shape != (G.order,):
        raise InvariantViolation("character must have one value per group element")
    dim = chi[G.identity].real
    out = action.algebra.zero()
    for g in range(G.order):
        out = out + (np.conj(chi[g]) * dim / G.order) * action.apply(g, x)
    return out


def projection_matrix(action: GroupAction, chi) -> np.ndarray:
    """The projection as a d x d matrix on the coefficient space of A."""
    cols = [
        spectral_projection(action, chi, e).coeffs()
        for e in action.algebra.basis_elements()
    ]
    return np.array(cols).T


def fixed_point_algebra(
    action: GroupAction, tol: Tolerance = DEFAULT_TOL
) -> tuple[list[AlgElement], Rep]:
    """Basis of the fixed-point subalgebra and its defining inclusion.

    The basis spans ``{x : alpha_g(x) = x for all g}``, computed as the
    range of the trivial-character projection and re-orthonormalized.  The
    returned representation packages the basis images on the defining
    space so the decomposition engine can enumerate the irreducibles.
    """
    G = action.group
    P = projection_matrix(action, np.ones(G.order))
    # alpha_g preserves the Frobenius inner product, so P is an orthogonal
    # projection and its range is read off the eigenvectors at eigenvalue 1
    evals, evecs = np.linalg.eigh((P + P.conj().T) / 2)
    basis = [
        action.algebra.from_coeffs(evecs[:, j])
        for j in range(len(evals))
        if evals[j] > 0.5
    ]
    gens = {f"fix{i}": b.to_matrix() for i, b in enumerate(basis)}
    return basis, Rep(action.algebra.defining_dim, gens)

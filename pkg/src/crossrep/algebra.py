"""Block matrix C*-algebras, their *-automorphisms, and finite group actions.

An algebra is a direct sum of full complex matrix blocks; elements are
tuples of blocks.  A *-automorphism is stored in permutation + unitary
normal form: it permutes blocks of equal size and conjugates by a unitary
inside each target block.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, InvariantViolation
from .groups import FiniteGroup, Subgroup
from .linalg import DEFAULT_TOL, Tolerance

__all__ = [
    "MatAlg",
    "AlgElement",
    "StarAut",
    "GroupAction",
    "LabelAction",
    "restrict_action",
]


@dataclass(frozen=True)
class MatAlg:
    """Direct sum of full matrix algebras with the given block dimensions."""

    block_dims: tuple[int, ...]

    def __init__(self, block_dims):
        dims = tuple(int(d) for d in block_dims)
        if not dims or any(d < 1 for d in dims):
            raise InvariantViolation("block dimensions must be positive and nonempty")
        object.__setattr__(self, "block_dims", dims)

    @property
    def n_blocks(self) -> int:
        return len(self.block_dims)

    @property
    def defining_dim(self) -> int:
        """Dimension of the defining representation space, sum of n_k."""
        return sum(self.block_dims)

    @property
    def linear_dim(self) -> int:
        """Linear dimension as a vector space, sum of n_k^2."""
        return sum(d * d for d in self.block_dims)

    def zero(self) -> "AlgElement":
        return AlgElement(self, [np.zeros((d, d), dtype=complex) for d in self.block_dims])

    def unit(self) -> "AlgElement":
        return AlgElement(self, [np.eye(d, dtype=complex) for d in self.block_dims])

    def basis_labels(self) -> list[str]:
        """Deterministic labels for the matrix-unit basis."""
        out = []
        for k, d in enumerate(self.block_dims):
            for i in range(d):
                for j in range(d):
                    out.append(f"b{k}_{i}{j}")
        return out

    def basis_elements(self) -> list["AlgElement"]:
        """Matrix units in the same order as :meth:`basis_labels`."""
        out = []
        for k, d in enumerate(self.block_dims):
            for i in range(d):
                for j in range(d):
                    x = self.zero()
                    x.blocks[k][i, j] = 1.0
                    out.append(x)
        return out

    def from_coeffs(self, vec) -> "AlgElement":
        vec = np.asarray(vec, dtype=complex)
        if vec.shape != (self.linear_dim,):
            raise DimensionMismatch("coefficient vector has wrong length")
        blocks, pos = [], 0
        for d in self.block_dims:
            blocks.append(vec[pos : pos + d * d].reshape(d, d))
            pos += d * d
        return AlgElement(self, blocks)

    def random_element(self, rng: np.random.Generator) -> "AlgElement":
        blocks = [
            rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            for d in self.block_dims
        ]
        return AlgElement(self, blocks)


class AlgElement:
    """An element of a :class:`MatAlg`, stored as one matrix per block."""

    __slots__ = ("parent", "blocks")

    def __init__(self, parent: MatAlg, blocks):
        blocks = [np.asarray(b, dtype=complex) for b in blocks]
        if len(blocks) != parent.n_blocks or any(
            b.shape != (d, d) for b, d in zip(blocks, parent.block_dims)
        ):
            raise DimensionMismatch("block shapes do not match the algebra")
        self.parent = parent
        self.blocks = blocks

    def __add__(self, other: "AlgElement") -> "AlgElement":
        self._check(other)
        return AlgElement(self.parent, [a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        self._check(other)
        return AlgElement(self.parent, [a - b for a, b in zip(self.blocks, other.blocks)])

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            self._check(other)
            return AlgElement(
                self.parent, [a @ b for a, b in zip(self.blocks, other.blocks)]
            )
        return AlgElement(self.parent, [other * b for b in self.blocks])

    def __rmul__(self, scalar):
        return AlgElement(self.parent, [scalar * b for b in self.blocks])

    def adjoint(self) -> "AlgElement":
        return AlgElement(self.parent, [b.conj().T for b in self.blocks])

    def coeffs(self) -> np.ndarray:
        """Coefficients over the matrix-unit basis, blocks flattened row-major."""
        return np.concatenate([b.reshape(-1) for b in self.blocks])

    def to_matrix(self) -> np.ndarray:
        """Block-diagonal embedding on the defining representation space."""
        return scipy.linalg.block_diag(*self.blocks).astype(complex)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs()))

    def _check(self, other: "AlgElement"):
        if other.parent != self.parent:
            raise DimensionMismatch("elements of different algebras")

    def __repr__(self):
        return f"AlgElement(dims={self.parent.block_dims})"


class StarAut:
    """A *-automorphism in block-permutation + unitary normal form.

    ``perm`` sends source block j to target block ``perm[j]``;
    ``unitaries[i]`` acts inside target block i.  The action is
    ``alpha(x)_i = U_i x_{perm^{-1}(i)} U_i*``.
    """

    def __init__(self, parent: MatAlg, perm, unitaries, tol: Tolerance = DEFAULT_TOL):
        perm = tuple(int(p) for p in perm)
        if sorted(perm) != list(range(parent.n_blocks)):
            raise InvariantViolation("perm is not a permutation of the blocks")
        for j, i in enumerate(perm):
            if parent.block_dims[j] != parent.block_dims[i]:
                raise InvariantViolation("perm maps blocks of unequal dimension")
        unitaries = [np.asarray(u, dtype=complex) for u in unitaries]
        for i, u in enumerate(unitaries):
            d = parent.block_dims[i]
            if u.shape != (d, d):
                raise DimensionMismatch("unitary shape does not match target block")
            if np.linalg.norm(u.conj().T @ u - np.eye(d)) > tol.abs_eps * max(1, d):
                raise InvariantViolation("block unitary fails the unitarity check")
        self.parent = parent
        self.perm = perm
        self.inv_perm = tuple(np.argsort(perm))
        self.unitaries = unitaries

    @classmethod
    def identity(cls, parent: MatAlg) -> "StarAut":
        return cls(
            parent,
            range(parent.n_blocks),
            [np.eye(d, dtype=complex) for d in parent.block_dims],
        )

    def apply(self, x: AlgElement) -> AlgElement:
        if x.parent != self.parent:
            raise DimensionMismatch("element from a different algebra")
        blocks = [
            self.unitaries[i] @ x.blocks[self.inv_perm[i]] @ self.unitaries[i].conj().T
            for i in range(self.parent.n_blocks)
        ]
        return AlgElement(self.parent, blocks)

    def compose(self, other: "StarAut") -> "StarAut":
        """self after other."""
        perm = tuple(self.perm[other.perm[j]] for j in range(self.parent.n_blocks))
        unitaries = [
            self.unitaries[i] @ other.unitaries[self.inv_perm[i]]
            for i in range(self.parent.n_blocks)
        ]
        return StarAut(self.parent, perm, unitaries)

    def inverse(self) -> "StarAut":
        perm = self.inv_perm
        unitaries = [self.unitaries[self.perm[i]].conj().T for i in range(self.parent.n_blocks)]
        return StarAut(self.parent, perm, unitaries)

    def induced_equal(self, other: "StarAut", tol: Tolerance = DEFAULT_TOL) -> bool:
        """Whether both define the same map on the algebra.

        Compared on matrix units; the stored unitaries may differ by a
        phase per block without changing the map.
        """
        for e in self.parent.basis_elements():
            delta = self.apply(e).coeffs() - other.apply(e).coeffs()
            if np.linalg.norm(delta) > 1e3 * tol.abs_eps:
                return False
        return True

    def is_identity_map(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        return self.induced_equal(StarAut.identity(self.parent), tol)


class GroupAction:
    """A finite group acting on a block algebra by *-automorphisms.

    Validates that the identity acts trivially and that composition of the
    induced maps follows the Cayley table (stored unitaries are only
    determined up to a block phase, so the check is on induced maps).
    """

    def __init__(self, group: FiniteGroup, algebra: MatAlg, auts, tol: Tolerance = DEFAULT_TOL, validate: bool = True):
        auts = list(auts)
        if len(auts) != group.order:
            raise InvariantViolation("need one automorphism per group element")
        for a in auts:
            if a.parent != algebra:
                raise InvariantViolation("automorphism acts on a different algebra")
        self.group = group
        self.algebra = algebra
        self.auts = auts
        if validate:
            self.validate(tol)

    def aut(self, g: int) -> StarAut:
        return self.auts[g]

    def apply(self, g: int, x: AlgElement) -> AlgElement:
        return self.auts[g].apply(x)

    def validate(self, tol: Tolerance = DEFAULT_TOL):
        G = self.group
        basis = self.algebra.basis_elements()
        d = len(basis)
        # row i of images[g] is alpha_g(e_i) in coefficients, so the map
        # alpha_g alpha_h has row matrix images[h] @ images[g]
        images = [np.array([a.apply(e).coeffs() for e in basis]) for a in self.auts]
        bound = 1e3 * tol.abs_eps * d
        if np.linalg.norm(images[G.identity] - np.eye(d)) > bound:
            raise InvariantViolation("identity element does not act trivially")
        for g in range(G.order):
            for h in range(G.order):
                if np.linalg.norm(images[h] @ images[g] - images[G.mul(g, h)]) > bound:
                    raise InvariantViolation(
                        f"action is not a homomorphism at pair ({g},{h})"
                    )


class LabelAction:
    """A group acting by permuting the labels of an abstract generator set.

    Used for algebras given only through generator images (free-group
    style examples): element g sends generator label l to ``maps[g][l]``.
    """

    def __init__(self, group: FiniteGroup, maps):
        maps = [dict(m) for m in maps]
        if len(maps) != group.order:
            raise InvariantViolation("need one label map per group element")
        labels = set(maps[group.identity])
        for g, m in enumerate(maps):
            if set(m) != labels or set(m.values()) != labels:
                raise InvariantViolation("label maps must be bijections on one label set")
        for l, target in maps[group.identity].items():
            if l != target:
                raise InvariantViolation("identity element must fix every label")
        for g in range(group.order):
            for h in range(group.order):
                gh = group.mul(g, h)
                for l in labels:
                    if maps[g][maps[h][l]] != maps[gh][l]:
                        raise InvariantViolation(
                            f"label maps are not a homomorphism at ({g},{h})"
                        )
        self.group = group
        self.maps = maps

    def map_label(self, g: int, label: str) -> str:
        return self.maps[g][label]


def restrict_action(action, subgroup: Subgroup):
    """Reground an action on a subgroup as an action of the subgroup itself.

    Returns ``(restricted_action, members)`` where ``members[i]`` is the
    parent-group index of element i of the regrounded group.
    """
    K, members = subgroup.as_group()
    if isinstance(action, GroupAction):
        return GroupAction(K, action.algebra, [action.auts[m] for m in members], validate=False), members
    if isinstance(action, LabelAction):
        return LabelAction(K, [action.maps[m] for m in members]), members
    raise TypeError(f"unsupported action type {type(action)!r}")

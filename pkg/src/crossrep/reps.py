"""Intertwiners, commutants, equivalence, decomposition, regular representations.

A representation is stored as the matrix images of a labeled generator
set.  Every intertwiner computation first closes the generator set under
adjoints: a one-sided relation against unitary generators does not imply
the adjoint relation for a non-invertible intertwiner.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from .algebra import AlgElement, GroupAction, LabelAction, MatAlg
from .errors import (
    DecompositionFailed,
    DimensionMismatch,
    InvariantViolation,
    LabelMismatch,
    NotIrreducible,
)
from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    as_matrix,
    phase_normalize,
    solve_sylvester_family,
)

__all__ = [
    "Rep",
    "CovariantRep",
    "IrrepDecomposition",
    "Equivalence",
    "defining_rep",
    "rep_from_images",
    "evaluate",
    "rep_compose",
    "direct_sum_reps",
    "intertwiners",
    "commutant_basis",
    "is_irreducible",
    "are_equivalent",
    "decompose",
    "decompositions_match",
    "regular_representation",
    "regular_irreducibility_criterion",
]


class Rep:
    """Matrix images of a *-closed generating set, keyed by label."""

    def __init__(self, dim: int, gens):
        self.dim = int(dim)
        self.gens = {}
        for label, M in gens.items():
            M = as_matrix(M)
            if M.shape != (self.dim, self.dim):
                raise DimensionMismatch(f"generator {label!r} is not {dim}x{dim}")
            self.gens[label] = M

    def star_closed(self) -> list[np.ndarray]:
        """Generator images followed by their adjoints."""
        mats = list(self.gens.values())
        return mats + [M.conj().T for M in mats]

    def conjugate(self, Q) -> "Rep":
        """The representation x -> Q* pi(x) Q for an isometry or unitary Q."""
        Q = as_matrix(Q)
        return Rep(Q.shape[1], {l: Q.conj().T @ M @ Q for l, M in self.gens.items()})

    def __repr__(self):
        return f"Rep(dim={self.dim}, gens={list(self.gens)!r})"


def defining_rep(algebra: MatAlg) -> Rep:
    """The block-diagonal inclusion of the algebra, one generator per matrix unit."""
    gens = {
        label: e.to_matrix()
        for label, e in zip(algebra.basis_labels(), algebra.basis_elements())
    }
    return Rep(algebra.defining_dim, gens)


def rep_from_images(algebra: MatAlg, image_of) -> Rep:
    """Build a basis-labeled representation from a map on algebra elements."""
    images = {
        label: image_of(e)
        for label, e in zip(algebra.basis_labels(), algebra.basis_elements())
    }
    dims = {M.shape[0] for M in images.values()}
    if len(dims) != 1:
        raise DimensionMismatch("images have inconsistent dimensions")
    return Rep(dims.pop(), images)


def evaluate(rep: Rep, algebra: MatAlg, x: AlgElement) -> np.ndarray:
    """Extend a basis-labeled representation linearly to an arbitrary element."""
    out = np.zeros((rep.dim, rep.dim), dtype=complex)
    for label, coeff in zip(algebra.basis_labels(), x.coeffs()):
        if coeff != 0:
            out += coeff * rep.gens[label]
    return out


def rep_compose(rep: Rep, action, g: int) -> Rep:
    """The representation ``x -> rep(alpha_g(x))``.

    For a :class:`GroupAction` the rep must be labeled by the algebra's
    matrix-unit basis; for a :class:`LabelAction` the generator labels are
    permuted.
    """
    if isinstance(action, GroupAction):
        alg = action.algebra
        aut = action.aut(g)
        gens = {
            label: evaluate(rep, alg, aut.apply(e))
            for label, e in zip(alg.basis_labels(), alg.basis_elements())
        }
        return Rep(rep.dim, gens)
    if isinstance(action, LabelAction):
        return Rep(rep.dim, {l: rep.gens[action.map_label(g, l)] for l in rep.gens})
    raise TypeError(f"unsupported action type {type(action)!r}")


def direct_sum_reps(parts: list[Rep]) -> Rep:
    """Block-diagonal direct sum; all parts must share generator labels."""
    labels = list(parts[0].gens)
    for p in parts:
        if list(p.gens) != labels:
            raise LabelMismatch("direct summands must share generator labels")
    dim = sum(p.dim for p in parts)
    gens = {}
    for l in labels:
        M = np.zeros((dim, dim), dtype=complex)
        pos = 0
        for p in parts:
            M[pos : pos + p.dim, pos : pos + p.dim] = p.gens[l]
            pos += p.dim
        gens[l] = M
    return Rep(dim, gens)


def intertwiners(r1: Rep, r2: Rep, tol: Tolerance = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal basis of ``{T : T r1(x) = r2(x) T}`` over the *-closure."""
    if set(r1.gens) != set(r2.gens):
        raise LabelMismatch("representations do not share generator labels")
    labels = sorted(r1.gens)
    pairs = []
    for l in labels:
        A, B = r1.gens[l], r2.gens[l]
        pairs.append((B, A))
        pairs.append((B.conj().T, A.conj().T))
    return solve_sylvester_family(pairs, dims=(r2.dim, r1.dim), tol=tol)


def commutant_basis(r: Rep, tol: Tolerance = DEFAULT_TOL) -> list[np.ndarray]:
    return intertwiners(r, r, tol)


def is_irreducible(r: Rep, tol: Tolerance = DEFAULT_TOL) -> bool:
    return len(commutant_basis(r, tol)) == 1


Equivalence = namedtuple("Equivalence", ["equivalent", "witness"])


def _unitarize(T: np.ndarray) -> np.ndarray:
    lam = np.trace(T.conj().T @ T).real / T.shape[1]
    U = T / np.sqrt(lam)
    return phase_normalize(U)


def _equiv_irreducibles(r1: Rep, r2: Rep, tol: Tolerance) -> Equivalence:
    """Equivalence test assuming both inputs are already known irreducible."""
    if r1.dim != r2.dim:
        return Equivalence(False, None)
    basis = intertwiners(r1, r2, tol)
    if not basis:
        return Equivalence(False, None)
    if len(basis) > 1:
        raise InvariantViolation("intertwiner space of irreducibles has dim > 1")
    return Equivalence(True, _unitarize(basis[0]))


def are_equivalent(r1: Rep, r2: Rep, tol: Tolerance = DEFAULT_TOL) -> Equivalence:
    """Unitary equivalence test for two irreducible representations.

    Returns ``(equivalent, witness)``; the witness W satisfies
    ``W r1(x) W* = r2(x)`` and is normalized so its largest entry is real
    positive.  Raises :class:`NotIrreducible` on reducible input.
    """
    for name, r in (("first", r1), ("second", r2)):
        if not is_irreducible(r, tol):
            raise NotIrreducible(f"{name} representation is reducible")
    return _equiv_irreducibles(r1, r2, tol)


@dataclass
class IrrepDecomposition:
    """Irreducible components with multiplicities and the conjugating unitary.

    ``basis_change`` is a unitary Q with ``Q* pi(x) Q`` block diagonal,
    blocks ordered class by class, each class repeated multiplicity times,
    every copy exactly equal to the class representative.
    """

    components: list[tuple[Rep, int]]
    basis_change: np.ndarray

    @property
    def total_dim(self) -> int:
        return sum(r.dim * m for r, m in self.components)


def _split_once(r: Rep, basis, seed: int, tol: Tolerance):
    """Split the space along eigenvalue clusters of a random self-adjoint
    commutant element; returns a list of isometries or None when the random
    element fails to separate."""
    rng = np.random.default_rng(seed)
    coeff = rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis))
    S = sum(c * B for c, B in zip(coeff, basis))
    H = (S + S.conj().T) / 2
    evals, evecs = np.linalg.eigh(H)
    # cluster along the real line with gap eig_sep
    groups = [[0]]
    for i in range(1, len(evals)):
        if evals[i] - evals[groups[-1][-1]] < tol.eig_sep:
            groups[-1].append(i)
        else:
            groups.append([i])
    if len(groups) < 2:
        return None
    return [evecs[:, g] for g in groups]


def _irreducible_pieces(r: Rep, seed: int, tol: Tolerance):
    """Depth-first refinement into irreducible (rep, isometry) leaves."""
    basis = commutant_basis(r, tol)
    if len(basis) == 1:
        return [(r, np.eye(r.dim, dtype=complex))]
    isometries = None
    for attempt in range(5):
        isometries = _split_once(r, basis, seed + attempt, tol)
        if isometries is not None:
            break
    if isometries is None:
        raise DecompositionFailed(
            "no eigenvalue gap above eig_sep after 5 reseeded retries"
        )
    leaves = []
    for Q in isometries:
        sub = r.conjugate(Q)
        for piece, iso in _irreducible_pieces(sub, seed, tol):
            leaves.append((piece, Q @ iso))
    return leaves


def decompose(r: Rep, seed: int = 0, tol: Tolerance = DEFAULT_TOL) -> IrrepDecomposition:
    """Decompose into irreducibles by random commutant splitting.

    Components are grouped by unitary equivalence and ordered by
    (dimension, first occurrence); the multiset of components is
    independent of the seed, only the basis_change varies.
    """
    leaves = _irreducible_pieces(r, seed, tol)
    classes: list[dict] = []
    for piece, iso in leaves:
        hit = None
        for cls in classes:
            if cls["rep"].dim != piece.dim:
                continue
            eq = _equiv_irreducibles(cls["rep"], piece, tol)
            if eq.equivalent:
                hit = (cls, eq.witness)
                break
        if hit is None:
            classes.append({"rep": piece, "isos": [iso], "first": len(classes)})
        else:
            cls, W = hit
            # W (class rep) W* = piece, so iso @ W carries the class rep exactly
            cls["isos"].append(iso @ W)
    order = sorted(range(len(classes)), key=lambda i: (classes[i]["rep"].dim, classes[i]["first"]))
    components = [(classes[i]["rep"], len(classes[i]["isos"])) for i in order]
    basis_change = np.hstack([np.hstack(classes[i]["isos"]) for i in order])
    return IrrepDecomposition(components, basis_change)


def decompositions_match(
    d1: IrrepDecomposition, d2: IrrepDecomposition, tol: Tolerance = DEFAULT_TOL
) -> bool:
    """Equality of decompositions as multisets of equivalence classes."""
    if d1.total_dim != d2.total_dim:
        return False
    remaining = list(range(len(d2.components)))
    for rep1, m1 in d1.components:
        found = None
        for j in remaining:
            rep2, m2 = d2.components[j]
            if rep2.dim == rep1.dim and m1 == m2 and are_equivalent(rep1, rep2, tol).equivalent:
                found = j
                break
        if found is None:
            return False
        remaining.remove(found)
    return not remaining


class CovariantRep:
    """A representation of an algebra together with implementing unitaries.

    ``unitaries[g]`` is the image of the canonical unitary of group element
    g; they form a homomorphism and conjugate the base representation
    according to the action.
    """

    def __init__(self, base: Rep, action, unitaries):
        self.base = base
        self.action = action
        self.unitaries = [as_matrix(U) for U in unitaries]
        if len(self.unitaries) != action.group.order:
            raise InvariantViolation("need one unitary per group element")
        for U in self.unitaries:
            if U.shape != (base.dim, base.dim):
                raise DimensionMismatch("unitary does not act on the base space")

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def group(self):
        return self.action.group

    def joint_rep(self) -> Rep:
        """Algebra generators and group unitaries as one generating set."""
        gens = dict(self.base.gens)
        for g in range(self.group.order):
            gens[f"U[{self.group.labels[g]}]"] = self.unitaries[g]
        return Rep(self.dim, gens)

    def validate(self, tol: Tolerance = DEFAULT_TOL):
        G = self.group
        scale = max(1.0, self.dim)
        for g in range(G.order):
            for h in range(G.order):
                delta = self.unitaries[g] @ self.unitaries[h] - self.unitaries[G.mul(g, h)]
                if np.linalg.norm(delta) > 1e3 * tol.abs_eps * scale:
                    raise InvariantViolation(f"unitaries fail homomorphism at ({g},{h})")
        for g in range(G.order):
            Ug = self.unitaries[g]
            twisted = rep_compose(self.base, self.action, g)
            for label, M in self.base.gens.items():
                delta = Ug @ M @ Ug.conj().T - twisted.gens[label]
                if np.linalg.norm(delta) > 1e3 * tol.abs_eps * scale:
                    raise InvariantViolation(
                        f"covariance fails at element {g} on generator {label!r}"
                    )

    def is_irreducible(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        return is_irreducible(self.joint_rep(), tol)


def regular_representation(pi: Rep, action) -> CovariantRep:
    """The covariant representation induced from ``pi`` by translation.

    Acts on (group order) copies of the space of ``pi``: the algebra acts
    diagonally through ``pi`` composed with the inverse translates, the
    group by the left regular permutation on the copies.
    """
    G = action.group
    n = G.order
    d = pi.dim
    twists = [rep_compose(pi, action, G.inv(i)) for i in range(n)]
    gens = {}
    for label in pi.gens:
        M = np.zeros((n * d, n * d), dtype=complex)
        for i in range(n):
            M[i * d : (i + 1) * d, i * d : (i + 1) * d] = twists[i].gens[label]
        gens[label] = M
    unitaries = []
    for g in range(n):
        U = np.zeros((n * d, n * d), dtype=complex)
        for j in range(n):
            i = G.mul(g, j)
            U[i * d : (i + 1) * d, j * d : (j + 1) * d] = np.eye(d)
        unitaries.append(U)
    return CovariantRep(Rep(n * d, gens), action, unitaries)


def regular_irreducibility_criterion(pi: Rep, action, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether the induced regular representation is irreducible.

    True exactly when ``pi`` is irreducible and no nontrivial group element
    carries ``pi`` to an equivalent representation.
    """
    if not is_irreducible(pi, tol):
        return False
    G = action.group
    for g in range(G.order):
        if g == G.identity:
            continue
        if are_equivalent(pi, rep_compose(pi, action, g), tol).equivalent:
            return False
    return True

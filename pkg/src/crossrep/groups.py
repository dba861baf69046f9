"""Finite groups given by Cayley tables, subgroups, cosets and character tables."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DecompositionFailed, InvariantViolation
from .linalg import DEFAULT_TOL, Tolerance

__all__ = [
    "FiniteGroup",
    "Subgroup",
    "make_cyclic_group",
    "make_symmetric_group_3",
    "subgroup_closure",
    "right_coset_reps",
    "CharacterTable",
    "character_table",
]


class FiniteGroup:
    """A finite group as an index set {0..n-1} with a Cayley table.

    ``table[i, j]`` is the index of ``g_i * g_j``.  Construction validates
    the Latin-square property, associativity, and the identity/inverse data.
    """

    def __init__(self, table, identity=None, labels=None):
        table = np.asarray(table, dtype=int)
        n = table.shape[0]
        if table.shape != (n, n):
            raise InvariantViolation("Cayley table must be square")
        rng = np.arange(n)
        if not np.all(np.sort(table, axis=1) == rng[None, :]):
            raise InvariantViolation("Cayley table rows are not permutations")
        if not np.all(np.sort(table, axis=0) == rng[:, None]):
            raise InvariantViolation("Cayley table columns are not permutations")
        # associativity: (g_i g_j) g_k == g_i (g_j g_k) for all triples
        if not np.array_equal(table[table, :], table[:, table]):
            raise InvariantViolation("Cayley table is not associative")
        if identity is None:
            hits = [i for i in range(n) if np.all(table[i] == rng)]
            if not hits:
                raise InvariantViolation("no identity element")
            identity = hits[0]
        if not (np.all(table[identity] == rng) and np.all(table[:, identity] == rng)):
            raise InvariantViolation("declared identity is not neutral")
        inverse = np.empty(n, dtype=int)
        for i in range(n):
            js = np.nonzero(table[i] == identity)[0]
            if len(js) != 1 or table[js[0], i] != identity:
                raise InvariantViolation(f"element {i} has no two-sided inverse")
            inverse[i] = js[0]
        self.order = n
        self.table = table
        self.identity = int(identity)
        self.inverse = inverse
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        if len(self.labels) != n:
            raise InvariantViolation("label count does not match group order")

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def inv(self, i: int) -> int:
        return int(self.inverse[i])

    def power(self, i: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(i), -k)
        out = self.identity
        for _ in range(k):
            out = self.mul(out, i)
        return out

    def element_order(self, i: int) -> int:
        k, g = 1, i
        while g != self.identity:
            g = self.mul(g, i)
            k += 1
        return k

    def is_abelian(self) -> bool:
        return np.array_equal(self.table, self.table.T)

    def cyclic_generator(self) -> int | None:
        """An element of full order, or None when the group is not cyclic."""
        for i in range(self.order):
            if self.element_order(i) == self.order:
                return i
        return None

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        """Conjugacy classes ordered by their smallest member."""
        seen = set()
        classes = []
        for i in range(self.order):
            if i in seen:
                continue
            orbit = {self.mul(self.mul(g, i), self.inv(g)) for g in range(self.order)}
            seen |= orbit
            classes.append(tuple(sorted(orbit)))
        classes.sort(key=lambda c: c[0])
        return classes

    def __eq__(self, other):
        return (
            isinstance(other, FiniteGroup)
            and self.order == other.order
            and np.array_equal(self.table, other.table)
        )

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by the sorted index list of its members."""

    parent: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(sorted(self.members))
        object.__setattr__(self, "members", members)
        sset = set(members)
        if self.parent.identity not in sset:
            raise InvariantViolation("subgroup must contain the identity")
        for a in members:
            if self.parent.inv(a) not in sset:
                raise InvariantViolation("subgroup is not closed under inverses")
            for b in members:
                if self.parent.mul(a, b) not in sset:
                    raise InvariantViolation("subgroup is not closed under the table")

    @property
    def order(self) -> int:
        return len(self.members)

    def as_group(self) -> tuple[FiniteGroup, list[int]]:
        """Reground as a standalone group; also returns the member list.

        Members are kept in ascending index order, so a subgroup
        {0, m, 2m, ...} of Z_n regrounds exactly onto Z_{n/m}.
        """
        members = list(self.members)
        pos = {g: i for i, g in enumerate(members)}
        k = len(members)
        table = [[pos[self.parent.mul(members[i], members[j])] for j in range(k)] for i in range(k)]
        labels = [self.parent.labels[g] for g in members]
        return FiniteGroup(table, identity=pos[self.parent.identity], labels=labels), members


def make_cyclic_group(n: int) -> FiniteGroup:
    """Z_n with table (i + j) mod n."""
    if n < 1:
        raise ValueError("group order must be at least 1")
    idx = np.arange(n)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n, identity=0)


def _perm_compose(p, q):
    """(p q)(x) = p(q(x))."""
    return tuple(p[q[x]] for x in range(len(p)))


# permutations of {0,1,2}; eta is the 3-cycle 0->1->2->0, tau swaps 0 and 1
_S3_PERMS = None


def _s3_perms():
    global _S3_PERMS
    if _S3_PERMS is None:
        e = (0, 1, 2)
        eta = (1, 2, 0)
        tau = (1, 0, 2)
        eta2 = _perm_compose(eta, eta)
        _S3_PERMS = [
            e,
            eta,
            eta2,
            tau,
            _perm_compose(eta, tau),
            _perm_compose(eta2, tau),
        ]
    return _S3_PERMS


# fixed element indices of make_symmetric_group_3()
S3_E, S3_ETA, S3_ETA2, S3_TAU, S3_ETA_TAU, S3_ETA2_TAU = range(6)
S3_LABELS = ["e", "eta", "eta^2", "tau", "eta*tau", "eta^2*tau"]


def s3_permutations() -> list[tuple[int, ...]]:
    """The underlying point permutations, indexed like make_symmetric_group_3()."""
    return list(_s3_perms())


def make_symmetric_group_3() -> FiniteGroup:
    """The permutation group on three points, generated by tau and eta.

    Elements are ordered e, eta, eta^2, tau, eta*tau, eta^2*tau; the
    generators satisfy tau^2 = eta^3 = e and tau eta tau = eta^2.
    """
    perms = _s3_perms()
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[_perm_compose(p, q)] for q in perms] for p in perms]
    return FiniteGroup(table, identity=0, labels=S3_LABELS)


def subgroup_closure(G: FiniteGroup, gens) -> Subgroup:
    """Smallest subgroup of G containing ``gens``."""
    gens = list(gens)
    if not gens:
        raise ValueError("generator list must be nonempty")
    members = {G.identity}
    frontier = list(gens)
    while frontier:
        g = frontier.pop()
        if g in members:
            continue
        members.add(g)
        frontier.extend(G.mul(g, h) for h in list(members))
        frontier.extend(G.mul(h, g) for h in list(members))
        frontier.append(G.inv(g))
    # close under products until stable (cheap at order <= 64)
    changed = True
    while changed:
        changed = False
        for a in list(members):
            for b in list(members):
                c = G.mul(a, b)
                if c not in members:
                    members.add(c)
                    changed = True
    return Subgroup(G, tuple(sorted(members)))


def right_coset_reps(H: Subgroup) -> list[int]:
    """Representatives of the right cosets Hg, identity first.

    Each non-identity coset is represented by its smallest element index;
    the representatives tile the parent group.
    """
    G = H.parent
    seen = set()
    reps = []
    for g in range(G.order):
        if g in seen:
            continue
        coset = sorted(G.mul(h, g) for h in H.members)
        seen |= set(coset)
        reps.append(G.identity if G.identity in coset else coset[0])
    reps.sort()
    reps.remove(G.identity)
    return [G.identity] + reps


@dataclass
class CharacterTable:
    """Irreducible characters of a finite group, one row per irrep.

    ``chars[r, c]`` is the value of character r on conjugacy class c;
    ``dims[r]`` is the dimension of irrep r.  Rows are ordered by
    (dimension, lexicographic rounded character vector).
    """

    group: FiniteGroup
    classes: list[tuple[int, ...]]
    chars: np.ndarray
    dims: list[int]
    class_of: np.ndarray = field(init=False)

    def __post_init__(self):
        class_of = np.empty(self.group.order, dtype=int)
        for c, cls in enumerate(self.classes):
            for g in cls:
                class_of[g] = c
        self.class_of = class_of

    @property
    def n_irreps(self) -> int:
        return len(self.dims)

    def value(self, r: int, g: int) -> complex:
        return complex(self.chars[r, self.class_of[g]])

    def char_vector(self, r: int) -> np.ndarray:
        """Character values of irrep r indexed by group element."""
        return self.chars[r, self.class_of]

    def trivial_index(self) -> int:
        for r in range(self.n_irreps):
            if np.allclose(self.chars[r], 1.0, atol=1e-8):
                return r
        raise InvariantViolation("character table has no trivial character")

    def validate(self, tol: float = 1e-8):
        G = self.group
        if sum(d * d for d in self.dims) != G.order:
            raise InvariantViolation("sum of squared dimensions != |G|")
        sizes = np.array([len(c) for c in self.classes])
        # column orthogonality: sum_r chi_r(g) conj(chi_r(h))
        for cg in range(len(self.classes)):
            for ch in range(len(self.classes)):
                s = np.sum(self.chars[:, cg] * np.conj(self.chars[:, ch]))
                want = G.order / sizes[cg] if cg == ch else 0.0
                if abs(s - want) > tol * G.order:
                    raise InvariantViolation("character orthogonality fails")
        dims = np.array(self.dims)
        for c in range(len(self.classes)):
            if self.classes[c][0] == G.identity and len(self.classes[c]) == 1:
                continue
            if abs(np.sum(self.chars[:, c] * dims)) > tol * G.order:
                raise InvariantViolation("off-identity column sum does not vanish")


def _left_regular_rep(G: FiniteGroup):
    from .reps import Rep  # deferred: reps depends on nothing here

    n = G.order
    gens = {}
    for g in range(n):
        M = np.zeros((n, n), dtype=complex)
        for j in range(n):
            M[G.mul(g, j), j] = 1.0
        gens[G.labels[g]] = M
    return Rep(n, gens)


def character_table(
    G: FiniteGroup, seed: int = 0, tol: Tolerance = DEFAULT_TOL
) -> CharacterTable:
    """Character table computed by decomposing the left regular representation.

    Each irrep of the group algebra appears in the regular representation
    with multiplicity equal to its dimension; characters are read off as
    traces of the irreducible components.
    """
    from .reps import decompose

    classes = G.conjugacy_classes()
    last_err = None
    for attempt in range(3):
        try:
            dec = decompose(_left_regular_rep(G), seed + 17 * attempt, tol)
            rows = []
            for irrep, mult in dec.components:
                dim = irrep.dim
                if mult != dim:
                    raise InvariantViolation(
                        f"regular multiplicity {mult} != dimension {dim}"
                    )
                per_element = np.array(
                    [np.trace(irrep.gens[G.labels[g]]) for g in range(G.order)]
                )
                per_class = []
                for cls in classes:
                    vals = per_element[list(cls)]
                    if np.max(np.abs(vals - vals[0])) > 1e-7 * max(1, dim):
                        raise InvariantViolation("character not constant on a class")
                    per_class.append(np.mean(vals))
                rows.append((dim, np.array(per_class)))
            rows.sort(
                key=lambda r: (
                    r[0],
                    tuple(
                        (round(z.real, 8) + 0.0, round(z.imag, 8) + 0.0) for z in r[1]
                    ),
                )
            )
            table = CharacterTable(
                group=G,
                classes=classes,
                chars=np.array([r[1] for r in rows]),
                dims=[r[0] for r in rows],
            )
            table.validate()
            return table
        except (InvariantViolation, DecompositionFailed) as err:  # retry reseeded
            last_err = err
    raise DecompositionFailed(f"character table failed after retries: {last_err}")

"""Exact linear algebra over Q(sigma) and its rational-function extension.

Everything here is generic over the entry type: any value supporting the
field operations (+, -, *, /), comparison with 0, and zero()/one() helpers
works, so the same elimination code runs on scalars and on symbolic
rational-function entries.

Pivoting rule: first row (lowest index) with a nonzero entry in the current
column.  This makes every basis and every particular solution reproducible
across runs and platforms.
"""

from __future__ import annotations

from .errors import DimensionMismatch, NoSolution, NotContained


# -- vectors ------------------------------------------------------------------

def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vneg(u):
    return tuple(-a for a in u)


def vscale(c, u):
    return tuple(c * a for a in u)


def vec_is_zero(u) -> bool:
    return all(a == 0 for a in u)


# -- metric -------------------------------------------------------------------

class Signature:
    """Ordered list of +-1 entries of a diagonal semi-Riemannian metric."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        entries = tuple(int(e) for e in entries)
        if not entries:
            raise ValueError("signature must be nonempty")
        if any(e not in (-1, 1) for e in entries):
            raise ValueError("signature entries must be +1 or -1")
        self.entries = entries

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def index(self) -> int:
        """Number of -1 entries (the index of the metric)."""
        return sum(1 for e in self.entries if e == -1)

    def __eq__(self, other):
        return isinstance(other, Signature) and self.entries == other.entries

    def __repr__(self):
        return f"Signature({list(self.entries)})"


class AmbientMetric:
    """Diagonal metric g(u, v) = sum_k eps_k u_k v_k."""

    __slots__ = ("signature",)

    def __init__(self, signature: Signature):
        self.signature = signature

    @property
    def dim(self) -> int:
        return self.signature.dim

    def pairing(self, u, v):
        if len(u) != self.dim or len(v) != self.dim:
            raise DimensionMismatch(
                f"vectors of length {len(u)}, {len(v)} in dimension {self.dim}"
            )
        eps = self.signature.entries
        acc = u[0] * v[0] * eps[0]
        for k in range(1, self.dim):
            acc = acc + u[k] * v[k] * eps[k]
        return acc

    def __repr__(self):
        return f"AmbientMetric({self.signature!r})"


def gram(metric: AmbientMetric, frame) -> list:
    """Gram matrix G_ij = g(Z_i, Z_j) of a frame; empty frame gives []."""
    frame = list(frame)
    return [[metric.pairing(zi, zj) for zj in frame] for zi in frame]


# -- elimination --------------------------------------------------------------

def rref(matrix):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    m = [list(row) for row in matrix]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    pr = 0
    for pc in range(ncols):
        hit = None
        for i in range(pr, nrows):
            if m[i][pc] != 0:
                hit = i
                break
        if hit is None:
            continue
        if hit != pr:
            m[pr], m[hit] = m[hit], m[pr]
        piv = m[pr][pc]
        inv = piv.one() / piv
        m[pr] = [x * inv if x != 0 else x for x in m[pr]]
        prow = m[pr]
        for i in range(nrows):
            if i != pr and m[i][pc] != 0:
                f = m[i][pc]
                m[i] = [
                    a if b == 0 else a - f * b for a, b in zip(m[i], prow)
                ]
        pivots.append(pc)
        pr += 1
        if pr == nrows:
            break
    return m, pivots


def rank(matrix) -> int:
    if not matrix:
        return 0
    _, pivots = rref(matrix)
    return len(pivots)


def nullspace(matrix):
    """Exact basis of {v : M v = 0}.

    The matrix must have at least one row (callers handle the no-constraints
    case).  Free variables are set to 1 in increasing column order, which
    fixes the basis deterministically.
    """
    if not matrix:
        raise ValueError("nullspace of an empty matrix; supply the columns explicitly")
    red, pivots = rref(matrix)
    ncols = len(matrix[0])
    one = matrix[0][0].one()
    zero_ = matrix[0][0].zero()
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero_] * ncols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(tuple(v))
    return basis


def solve(matrix, rhs):
    """One exact solution of M x = rhs (free variables set to 0).

    Raises NoSolution when the system is inconsistent.
    """
    if not matrix:
        raise ValueError("solve needs at least one row")
    ncols = len(matrix[0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, pivots = rref(aug)
    zero_ = matrix[0][0].zero()
    for r, pc in enumerate(pivots):
        if pc == ncols:
            raise NoSolution("inconsistent linear system")
    x = [zero_] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return tuple(x)


def identity_matrix(n: int, one):
    zero_ = one.zero()
    return [[one if i == j else zero_ for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    return [
        [sum_entries([A[i][k] * B[k][j] for k in range(len(B))]) for j in range(len(B[0]))]
        for i in range(len(A))
    ]


def mat_vec(A, v):
    return tuple(sum_entries([A[i][k] * v[k] for k in range(len(v))]) for i in range(len(A)))


def sum_entries(entries):
    acc = entries[0]
    for e in entries[1:]:
        acc = acc + e
    return acc


def transpose(A):
    return [list(col) for col in zip(*A)]


# -- subspaces ------------------------------------------------------------------

class Subspace:
    """A linear subspace given by an independent spanning set.

    Bases are never normalized (norms can be irrational); comparisons are by
    span only, through subspace_rel.
    """

    __slots__ = ("basis", "ambient_dim")

    def __init__(self, basis, ambient_dim: int):
        basis = tuple(tuple(v) for v in basis)
        for v in basis:
            if len(v) != ambient_dim:
                raise DimensionMismatch(
                    f"vector of length {len(v)} in ambient dimension {ambient_dim}"
                )
        if basis and rank(list(basis)) != len(basis):
            raise ValueError("basis vectors are linearly dependent")
        self.basis = basis
        self.ambient_dim = ambient_dim

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def span(cls, vectors, ambient_dim: int) -> "Subspace":
        """Span of possibly dependent vectors; keeps the first independent
        ones in the order given."""
        picked = []
        for v in vectors:
            v = tuple(v)
            if vec_is_zero(v):
                continue
            if rank(picked + [list(v)]) > len(picked):
                picked.append(list(v))
        return cls(tuple(tuple(v) for v in picked), ambient_dim)

    def contains(self, v) -> bool:
        if vec_is_zero(v):
            return True
        if not self.basis:
            return False
        stacked = [list(b) for b in self.basis]
        return rank(stacked + [list(v)]) == len(self.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


class SubspaceRelation:
    """Outcome of comparing two subspaces: kind plus intersection dimension."""

    __slots__ = ("kind", "meet_dim")

    def __init__(self, kind: str, meet_dim: int):
        self.kind = kind
        self.meet_dim = meet_dim

    def __eq__(self, other):
        if isinstance(other, str):
            return self.kind == other
        return (
            isinstance(other, SubspaceRelation)
            and self.kind == other.kind
            and self.meet_dim == other.meet_dim
        )

    def __repr__(self):
        return f"SubspaceRelation({self.kind!r}, meet_dim={self.meet_dim})"


def subspace_rel(A: Subspace, B: Subspace) -> SubspaceRelation:
    """Exact relation between spans: equal / contains / contained /
    disjoint / intersect(dim)."""
    if A.ambient_dim != B.ambient_dim:
        raise DimensionMismatch("subspaces of different ambient dimensions")
    ra, rb = A.dim, B.dim
    stacked = [list(v) for v in A.basis] + [list(v) for v in B.basis]
    rsum = rank(stacked) if stacked else 0
    meet = ra + rb - rsum
    if rsum == ra == rb:
        return SubspaceRelation("equal", meet)
    if rsum == rb:  # A subset of B
        return SubspaceRelation("contained", meet)
    if rsum == ra:  # B subset of A
        return SubspaceRelation("contains", meet)
    if meet == 0:
        return SubspaceRelation("disjoint", 0)
    return SubspaceRelation("intersect", meet)


def ortho_complement(S: Subspace, metric: AmbientMetric, within: Subspace) -> Subspace:
    """{v in within : g(v, s) = 0 for all s in S}; requires S <= within."""
    relation = subspace_rel(S, within)
    if relation.kind not in ("equal", "contained"):
        raise NotContained("first subspace is not contained in the second")
    if not within.basis:
        return Subspace((), within.ambient_dim)
    if not S.basis:
        return Subspace(within.basis, within.ambient_dim)
    pairing = [[metric.pairing(s, w) for w in within.basis] for s in S.basis]
    coeffs = nullspace(pairing)
    vectors = []
    for c in coeffs:
        acc = vscale(c[0], within.basis[0])
        for j in range(1, len(c)):
            acc = vadd(acc, vscale(c[j], within.basis[j]))
        vectors.append(acc)
    return Subspace(tuple(vectors), within.ambient_dim)


def is_nondegenerate(S: Subspace, metric: AmbientMetric) -> bool:
    """True iff the Gram matrix of a basis has full rank (vacuous for {0})."""
    if not S.basis:
        return True
    return rank(gram(metric, S.basis)) == S.dim


def full_space(ambient_dim: int, one) -> Subspace:
    """The whole ambient space as a Subspace, with the standard basis."""
    zero_ = one.zero()
    basis = tuple(
        tuple(one if i == j else zero_ for j in range(ambient_dim))
        for i in range(ambient_dim)
    )
    return Subspace(basis, ambient_dim)

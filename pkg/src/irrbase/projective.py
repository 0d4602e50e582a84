"""Point sets of projective geometry over GF(q) and the induced permutation actions.

Points are m-dimensional subspaces of GF(q)^d kept as RREF bases (row
vectors; matrices act on the right), or unordered pairs of subspaces of
complementary dimension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Sequence

from .fq import FieldSpec, FqMatrix, Rows, gl_generators, rref_rows, sl_generators, vec_mat
from .permgroup import PermGroup

ENUMERATION_CAP = 100_000


class CapExceeded(ValueError):
    pass


class _Frobenius:
    def __repr__(self):
        return "FROBENIUS"


FROBENIUS = _Frobenius()


def gaussian_binomial(d: int, m: int, q: int) -> int:
    if not 0 <= m <= d:
        raise ValueError(f"m = {m} outside [0, {d}]")
    num = den = 1
    for i in range(m):
        num *= q ** (d - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


@dataclass(frozen=True)
class Subspace:
    field: FieldSpec
    d: int
    basis: Rows

    @classmethod
    def span(cls, field: FieldSpec, vectors: Sequence[Sequence[int]]) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        if not vectors:
            raise ValueError("cannot span an empty set of vectors")
        red, rank = rref_rows(field, vectors)
        return cls(field, len(vectors[0]), red[:rank])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def sort_key(self):
        coeffs = self.field.coeffs
        return tuple(coeffs(x) for row in self.basis for x in row)

    def __contains__(self, v: Sequence[int]) -> bool:
        from .fq import in_row_space

        return in_row_space(self.field, v, self.basis)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(v in self for v in other.basis)

    def meets_trivially(self, other: "Subspace") -> bool:
        return rref_rows(self.field, self.basis + other.basis)[1] == self.dim + other.dim

    def perp(self) -> "Subspace":
        """Orthogonal complement under the standard dot product."""
        f = self.field
        pivots = [next(j for j, x in enumerate(r) if x) for r in self.basis]
        free = [j for j in range(self.d) if j not in pivots]
        vecs = []
        for c in free:
            v = [0] * self.d
            v[c] = 1
            for r, p in zip(self.basis, pivots):
                v[p] = f.neg(r[c])
            vecs.append(tuple(v))
        return Subspace.span(f, vecs)

    def __str__(self):
        return "<" + ", ".join("".join(map(str, r)) for r in self.basis) + ">"


def _rref_to_subspace(field: FieldSpec, d: int, rows: Sequence[Sequence[int]]) -> Subspace:
    red, rank = rref_rows(field, rows)
    return Subspace(field, d, red[:rank])


def enumerate_subspaces(d: int, m: int, field: FieldSpec, cap: int = ENUMERATION_CAP) -> list[Subspace]:
    """All m-subspaces of GF(q)^d, in lexicographic order of their RREF bases."""
    if not 1 <= m <= d - 1:
        raise ValueError(f"need 1 <= m <= d-1, got d={d}, m={m}")
    total = gaussian_binomial(d, m, field.q)
    if total > cap:
        raise CapExceeded(f"{total} subspaces exceed the enumeration cap {cap}")
    out = []
    q = field.q
    for pivots in combinations(range(d), m):
        slots = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, d) if c not in pivots]
        for vals in product(range(q), repeat=len(slots)):
            rows = [[0] * d for _ in range(m)]
            for r, p in enumerate(pivots):
                rows[r][p] = 1
            for (r, c), v in zip(slots, vals):
                rows[r][c] = v
            out.append(Subspace(field, d, tuple(map(tuple, rows))))
    out.sort(key=Subspace.sort_key)
    assert len(out) == total
    return out


def subspace_image(u: Subspace, g) -> Subspace:
    """Image of ``u`` under an invertible matrix (right action) or FROBENIUS."""
    f = u.field
    if g is FROBENIUS:
        fr = f.frob_table
        return _rref_to_subspace(f, u.d, [tuple(fr[x] for x in r) for r in u.basis])
    if g.field != f:
        raise ValueError("field mismatch")
    if g.nrows != u.d or g.ncols != u.d:
        raise ValueError("dimension mismatch")
    if not g.is_invertible():
        raise ValueError("singular matrix")
    return _rref_to_subspace(f, u.d, [vec_mat(f, r, g.rows) for r in u.basis])


def _image_fast(u: Subspace, g) -> Subspace:
    # no invertibility check; generators are validated once
    f = u.field
    if g is FROBENIUS:
        fr = f.frob_table
        rows = [tuple(fr[x] for x in r) for r in u.basis]
    else:
        rows = [vec_mat(f, r, g.rows) for r in u.basis]
    red, rank = rref_rows(f, rows)
    return Subspace(f, u.d, red[:rank])


@dataclass(frozen=True)
class PairPoint:
    small: Subspace
    big: Subspace
    kind: str

    def __str__(self):
        return f"{{{self.small}, {self.big}}}"


@dataclass
class ActionTable:
    points: list
    generators: list[tuple[int, ...]]
    labels: list[str]
    index: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {p: i for i, p in enumerate(self.points)}
        if len(self.index) != len(self.points):
            raise ValueError("duplicate points")

    @property
    def degree(self) -> int:
        return len(self.points)

    def group(self) -> PermGroup:
        return PermGroup(self.degree, self.generators)


def _matrix_generators(kind: str, d: int, field: FieldSpec):
    if kind in ("pgl", "pgammal"):
        mats = gl_generators(d, field)
    elif kind == "psl":
        mats = sl_generators(d, field)
    else:
        raise ValueError(f"unknown action kind {kind!r}")
    gens = [(m, "matrix") for m in mats]
    if kind == "pgammal" and field.f > 1:
        gens.append((FROBENIUS, "frobenius"))
    return gens


def build_action(kind: str, d: int, m: int, field: FieldSpec, cap: int = ENUMERATION_CAP) -> ActionTable:
    """Permutation action of PGL / PGammaL / PSL_d(q) on the m-subspaces."""
    gens = _matrix_generators(kind, d, field)
    points = enumerate_subspaces(d, m, field, cap)
    index = {u: i for i, u in enumerate(points)}
    perms = [tuple(index[_image_fast(u, g)] for u in points) for g, _ in gens]
    return ActionTable(points, perms, [lab for _, lab in gens], index,
                       {"kind": kind, "d": d, "m": m, "q": field.q})


def pair_count(kind: str, d: int, m: int, q: int) -> int:
    if kind == "direct-sum":
        return gaussian_binomial(d, m, q) * q ** (m * (d - m))
    return gaussian_binomial(d, m, q) * gaussian_binomial(d - m, m, q)


def build_pair_action(kind: str, d: int, m: int, field: FieldSpec, *,
                      graph: bool = False, cap: int = ENUMERATION_CAP) -> ActionTable:
    """Action of PGL_d(q) on unordered pairs {U, W}, dim U = m < d/2 = dim W.

    ``kind`` is ``"direct-sum"`` (U + W = V) or ``"contained"`` (U <= W).
    With ``graph=True`` the duality {U, W} -> {W^perp, U^perp} is added.
    """
    if kind not in ("direct-sum", "contained"):
        raise ValueError(f"unknown pair kind {kind!r}")
    if d < 3 or not 1 <= m or 2 * m >= d:
        raise ValueError(f"pair actions need d >= 3 and 1 <= m < d/2, got d={d}, m={m}")
    expected = pair_count(kind, d, m, field.q)
    if expected > cap:
        raise CapExceeded(f"{expected} pairs exceed the enumeration cap {cap}")
    smalls = enumerate_subspaces(d, m, field, cap)
    bigs = enumerate_subspaces(d, d - m, field, cap)
    if kind == "contained":
        points = [PairPoint(u, w, kind) for u in smalls for w in bigs if w.contains_subspace(u)]
    else:
        points = [PairPoint(u, w, kind) for u in smalls for w in bigs if u.meets_trivially(w)]
    if len(points) != expected:
        raise AssertionError(f"pair count {len(points)} != closed form {expected}")
    index = {(p.small, p.big): i for i, p in enumerate(points)}
    perms, labels = [], []
    for g, lab in _matrix_generators("pgl", d, field):
        perms.append(tuple(index[(_image_fast(p.small, g), _image_fast(p.big, g))] for p in points))
        labels.append(lab)
    if graph:
        perms.append(tuple(index[(p.big.perp(), p.small.perp())] for p in points))
        labels.append("duality")
    table = ActionTable(points, perms, labels, {}, {"kind": kind, "d": d, "m": m, "q": field.q})
    table.index = {p: i for i, p in enumerate(points)}
    return table

"""Exact arithmetic in GF(p^f) and dense matrices over it.

Field elements are plain ints in ``range(q)``.  The int ``a`` stands for the
polynomial ``sum(c_i * x**i)`` where ``c_i`` are the base-``p`` digits of
``a`` (least significant first), reduced modulo the field's defining
polynomial.  All arithmetic goes through lookup tables held by the
:class:`FieldSpec`, so several fields can be used side by side.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

MAX_Q = 81
MAX_D = 12

# Conway polynomials, coefficients listed from the constant term upward.
BUILTIN_MODULI = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (2, 2, 1),
    16: (1, 1, 0, 0, 1),
    25: (2, 4, 1),
    27: (1, 2, 0, 1),
    32: (1, 0, 1, 0, 0, 1),
    49: (3, 6, 1),
    64: (1, 1, 0, 1, 1, 0, 1),
    81: (2, 0, 0, 2, 1),
}


class FieldError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, f)`` with ``q == p**f``, or None if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while q % p:
        p += 1
    f = 0
    while q % p == 0:
        q //= p
        f += 1
    return (p, f) if q == 1 else None


# -- polynomials over F_p, lists of coefficients from the constant term ------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _poly_trim(a)
    return a


def _monic_polys(deg: int, p: int) -> Iterable[list[int]]:
    for code in range(p**deg):
        coeffs = []
        for _ in range(deg):
            coeffs.append(code % p)
            code //= p
        yield coeffs + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree at most deg/2."""
    poly = _poly_trim(list(poly))
    deg = len(poly) - 1
    if deg < 1:
        return False
    for k in range(1, deg // 2 + 1):
        for divisor in _monic_polys(k, p):
            if not _poly_mod(poly, divisor, p):
                return False
    return True


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """The finite field GF(p^f) with precomputed operation tables.

    Build instances with :func:`field_make`; equality is by ``(p, f, modulus)``.
    """

    p: int
    f: int
    modulus: tuple[int, ...] | None
    add_table: tuple[tuple[int, ...], ...] = field(repr=False)
    mul_table: tuple[tuple[int, ...], ...] = field(repr=False)
    neg_table: tuple[int, ...] = field(repr=False)
    inv_table: tuple[int, ...] = field(repr=False)
    frob_table: tuple[int, ...] = field(repr=False)
    primitive: int = 0

    @property
    def q(self) -> int:
        return self.p**self.f

    def __eq__(self, other):
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.f, self.modulus) == (other.p, other.f, other.modulus)

    def __hash__(self):
        return hash((self.p, self.f, self.modulus))

    def __repr__(self):
        return f"GF({self.q})"

    zero = 0
    one = 1

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.inv_table[a]

    def frobenius(self, a: int) -> int:
        """The automorphism x -> x^p."""
        return self.frob_table[a]

    def pow(self, a: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = self.mul_table[r][a]
        return r

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        k, x = 1, a
        while x != 1:
            x = self.mul_table[x][a]
            k += 1
        return k

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Coefficient vector of ``a`` (constant term first, length f)."""
        out = []
        for _ in range(self.f):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) != self.f or any(not 0 <= c < self.p for c in coeffs):
            raise FieldError(f"bad coefficient vector {coeffs!r} for {self!r}")
        a = 0
        for c in reversed(coeffs):
            a = a * self.p + c
        return a


def _build_field(p: int, f: int, modulus: tuple[int, ...] | None) -> FieldSpec:
    q = p**f

    def to_vec(a):
        v = []
        for _ in range(f):
            v.append(a % p)
            a //= p
        return v

    def to_int(v):
        a = 0
        for c in reversed(v):
            a = a * p + c
        return a

    vecs = [to_vec(a) for a in range(q)]
    add = tuple(
        tuple(to_int([(x + y) % p for x, y in zip(vecs[a], vecs[b])]) for b in range(q))
        for a in range(q)
    )
    neg = tuple(to_int([(-x) % p for x in vecs[a]]) for a in range(q))

    def polymul(a, b):
        if f == 1:
            return a * b % p
        prod = [0] * (2 * f - 1)
        for i, x in enumerate(vecs[a]):
            if x:
                for j, y in enumerate(vecs[b]):
                    prod[i + j] = (prod[i + j] + x * y) % p
        rem = _poly_mod(prod, modulus, p)
        return to_int(rem + [0] * (f - len(rem)))

    mul = tuple(tuple(polymul(a, b) for b in range(q)) for a in range(q))
    inv = [0] * q
    for a in range(1, q):
        for b in range(1, q):
            if mul[a][b] == 1:
                inv[a] = b
                break
    frob = []
    for a in range(q):
        x = 1
        for _ in range(p):
            x = mul[x][a]
        frob.append(x)
    primitive = 1
    for a in range(1, q):
        k, x = 1, a
        while x != 1:
            x = mul[x][a]
            k += 1
        if k == q - 1:
            primitive = a
            break
    return FieldSpec(p, f, modulus, add, mul, neg, tuple(inv), tuple(frob), primitive)


@lru_cache(maxsize=None)
def _field_cached(p: int, f: int, modulus: tuple[int, ...] | None) -> FieldSpec:
    return _build_field(p, f, modulus)


def field_make(p: int, f: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Return GF(p^f).

    For ``f > 1`` the defining polynomial is taken from :data:`BUILTIN_MODULI`
    unless ``modulus`` (monic, constant term first) is given; either way it is
    checked for irreducibility.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"characteristic {p!r} is not prime")
    if f < 1:
        raise FieldError(f"extension degree must be >= 1, got {f}")
    q = p**f
    if q > MAX_Q:
        raise FieldError(f"q = {q} exceeds the supported maximum {MAX_Q}")
    if f == 1:
        return _field_cached(p, 1, None)
    if modulus is None:
        if q not in BUILTIN_MODULI:
            raise FieldError(f"no built-in modulus for q = {q}; pass one explicitly")
        modulus = BUILTIN_MODULI[q]
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) != f + 1 or modulus[-1] != 1:
        raise FieldError(f"modulus must be monic of degree {f}")
    if not is_irreducible(modulus, p):
        raise FieldError(f"modulus {modulus} is reducible over GF({p})")
    return _field_cached(p, f, modulus)


def field_of_order(q: int) -> FieldSpec:
    pf = prime_power(q)
    if pf is None:
        raise FieldError(f"{q} is not a prime power")
    return field_make(*pf)


# -- matrices ---------------------------------------------------------------

Rows = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class FqMatrix:
    """Dense matrix over a finite field, stored as a tuple of row tuples."""

    field: FieldSpec
    rows: Rows

    def __post_init__(self):
        if not self.rows:
            raise ValueError("matrix must have at least one row")
        width = len(self.rows[0])
        q = self.field.q
        for r in self.rows:
            if len(r) != width:
                raise ValueError("ragged matrix")
            if any(not 0 <= x < q for x in r):
                raise ValueError(f"entry outside GF({q})")

    @classmethod
    def identity(cls, field: FieldSpec, d: int) -> "FqMatrix":
        return cls(field, tuple(tuple(int(i == j) for j in range(d)) for i in range(d)))

    @classmethod
    def elementary(cls, field: FieldSpec, d: int, x: int, y: int, scalar: int = 1) -> "FqMatrix":
        """``I + scalar * E_{x,y}`` with 1-based x, y."""
        rows = [list(r) for r in cls.identity(field, d).rows]
        rows[x - 1][y - 1] = field.add(rows[x - 1][y - 1], scalar)
        return cls(field, tuple(map(tuple, rows)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def __matmul__(self, other: "FqMatrix") -> "FqMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        return FqMatrix(self.field, mat_mul_rows(self.field, self.rows, other.rows))

    def rank(self) -> int:
        return rref_rows(self.field, self.rows)[1]

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def transpose(self) -> "FqMatrix":
        return FqMatrix(self.field, tuple(zip(*self.rows)))

    def inverse(self) -> "FqMatrix":
        d = self.nrows
        if self.ncols != d:
            raise ValueError("only square matrices have inverses")
        aug = tuple(r + tuple(int(i == j) for j in range(d)) for i, r in enumerate(self.rows))
        red, _ = rref_rows(self.field, aug)
        if any(red[i][:d] != tuple(int(i == j) for j in range(d)) for i in range(d)):
            raise ValueError("matrix is singular")
        return FqMatrix(self.field, tuple(r[d:] for r in red))

    def is_rref(self) -> bool:
        return rref_rows(self.field, self.rows)[0] == self.rows


def vec_mat(field: FieldSpec, v: Sequence[int], rows: Rows) -> tuple[int, ...]:
    add, mul = field.add_table, field.mul_table
    out = [0] * len(rows[0])
    for vi, row in zip(v, rows):
        if vi:
            mrow = mul[vi]
            for j, x in enumerate(row):
                if x:
                    out[j] = add[out[j]][mrow[x]]
    return tuple(out)


def mat_mul_rows(field: FieldSpec, a: Rows, b: Rows) -> Rows:
    return tuple(vec_mat(field, r, b) for r in a)


def rref_rows(field: FieldSpec, rows: Sequence[Sequence[int]]) -> tuple[Rows, int]:
    """Reduced row-echelon form by Gauss-Jordan elimination.

    Returns the reduced rows (same shape, zero rows last) and the rank.
    """
    add, mul, neg, inv = field.add_table, field.mul_table, field.neg_table, field.inv_table
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        piv = next((i for i in range(rank, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        if prow[c] != 1:
            s = mul[inv[prow[c]]]
            prow = m[rank] = [s[x] for x in prow]
        for i in range(nrows):
            if i != rank and m[i][c]:
                t = mul[neg[m[i][c]]]
                row = m[i]
                m[i] = [add[x][t[y]] for x, y in zip(row, prow)]
        rank += 1
    return tuple(map(tuple, m)), rank


def mat_rref(matrix: FqMatrix) -> tuple[FqMatrix, int]:
    reduced, rank = rref_rows(matrix.field, matrix.rows)
    return FqMatrix(matrix.field, reduced), rank


def in_row_space(field: FieldSpec, v: Sequence[int], rref_basis: Rows) -> bool:
    """Membership test of ``v`` in the span of RREF rows (no zero rows)."""
    add, mul, neg = field.add_table, field.mul_table, field.neg_table
    w = list(v)
    for row in rref_basis:
        piv = next(j for j, x in enumerate(row) if x)
        c = w[piv]
        if c:
            t = mul[neg[c]]
            w = [add[x][t[y]] for x, y in zip(w, row)]
    return not any(w)


def gl_order(d: int, q: int, projective: bool = False) -> int:
    if prime_power(q) is None:
        raise FieldError(f"{q} is not a prime power")
    if d < 1:
        raise ValueError("d must be >= 1")
    order = 1
    for i in range(d):
        order *= q**d - q**i
    return order // (q - 1) if projective else order


def sl_order(d: int, q: int, projective: bool = False) -> int:
    from math import gcd

    order = gl_order(d, q) // (q - 1)
    return order // gcd(d, q - 1) if projective else order


def _check_dim(d: int):
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    if d > MAX_D:
        raise ValueError(f"d = {d} exceeds the supported maximum {MAX_D}")


def gl_generators(d: int, field: FieldSpec) -> list[FqMatrix]:
    """Generators of GL_d(q): diag(z, 1, ..., 1), the cyclic coordinate shift
    and the transvection I + E_{2,1}; z generates the multiplicative group.

    The diagonal generator is omitted when q = 2 (it is the identity).
    """
    _check_dim(d)
    gens = []
    if field.q > 2:
        rows = [list(r) for r in FqMatrix.identity(field, d).rows]
        rows[0][0] = field.primitive
        gens.append(FqMatrix(field, tuple(map(tuple, rows))))
    shift = tuple(tuple(int(j == (i + 1) % d) for j in range(d)) for i in range(d))
    gens.append(FqMatrix(field, shift))
    gens.append(FqMatrix.elementary(field, d, 2, 1))
    return gens


def sl_generators(d: int, field: FieldSpec) -> list[FqMatrix]:
    """Elementary transvections I + a E_{i,i+1}, I + a E_{i+1,i} with ``a``
    running over the basis 1, z, ..., z^(f-1); these generate SL_d(q)."""
    _check_dim(d)
    scalars = [1]
    for _ in range(field.f - 1):
        scalars.append(field.mul(scalars[-1], field.primitive))
    gens = []
    for i in range(1, d):
        for a in scalars:
            gens.append(FqMatrix.elementary(field, d, i, i + 1, a))
            gens.append(FqMatrix.elementary(field, d, i + 1, i, a))
    return gens

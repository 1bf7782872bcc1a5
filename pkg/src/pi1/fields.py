"""Exact arithmetic in F_{p^n} and Frobenius-semilinear maps.

Elements are canonical coordinate tuples over the prime field (polynomial
basis, low degree first, fully reduced).  All values are immutable and all
operations are pure, so everything here may be shared freely between
threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    FieldMismatch,
    NonPrime,
    ReducibleModulus,
    ShapeMismatch,
    UnsupportedField,
)

Element = tuple[int, ...]

# Conway polynomials (monic, low degree first) for the small extensions the
# builders know about.  Users may override with any irreducible modulus.
BUILTIN_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (5, 4): (2, 4, 4, 0, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
    (7, 4): (3, 4, 5, 0, 1),
}


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m, coefficients mod p."""
    a = [x % p for x in a]
    d = len(m) - 1
    for k in range(len(a) - 1, d - 1, -1):
        c = a[k]
        if c:
            for i in range(d + 1):
                a[k - d + i] = (a[k - d + i] - c * m[i]) % p
    return a[:d]


def _poly_eval(coeffs, x: int, p: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def _monic_polys(p: int, degree: int):
    for tail in itertools.product(range(p), repeat=degree):
        yield list(tail) + [1]


def _is_irreducible(p: int, coeffs: tuple[int, ...]) -> bool:
    """Brute-force irreducibility for degree <= 4; root check only beyond."""
    n = len(coeffs) - 1
    if n == 1:
        return True
    if any(_poly_eval(coeffs, x, p) == 0 for x in range(p)):
        return False
    if n <= 3:
        return True
    if n == 4:
        for q in _monic_polys(p, 2):
            if not any(_poly_mod(list(coeffs), q, p)):
                return False
        return True
    return True  # degree > 4: only the root check is run


@dataclass(frozen=True)
class Field:
    """F_{p^n} with a fixed modulus (None exactly when n == 1)."""

    p: int
    n: int
    modulus: tuple[int, ...] | None

    @property
    def size(self) -> int:
        return self.p**self.n

    @property
    def zero(self) -> Element:
        return (0,) * self.n

    @property
    def one(self) -> Element:
        return (1,) + (0,) * (self.n - 1)

    def scalar(self, c: int) -> Element:
        return (c % self.p,) + (0,) * (self.n - 1)

    def element(self, coords) -> Element:
        if isinstance(coords, int):
            return self.scalar(coords)
        coords = tuple(int(c) % self.p for c in coords)
        if len(coords) != self.n:
            raise ShapeMismatch(f"expected {self.n} coordinates, got {len(coords)}")
        return coords

    def elements(self):
        for tail in itertools.product(range(self.p), repeat=self.n):
            yield tuple(tail)

    def add(self, a: Element, b: Element) -> Element:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a: Element, b: Element) -> Element:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a: Element) -> Element:
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a: Element, b: Element) -> Element:
        p = self.p
        if self.n == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * self.n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        m = self.modulus
        d = self.n
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i in range(d):
                    prod[k - d + i] = (prod[k - d + i] - c * m[i]) % p
        return tuple(prod[:d])

    def pow(self, a: Element, e: int) -> Element:
        if e < 0:
            return self.pow(self.inv(a), -e)
        acc = self.one
        base = a
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    def inv(self, a: Element) -> Element:
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero field element")
        return self.pow(a, self.size - 2)

    def frobenius(self, a: Element, t: int = 1) -> Element:
        """a^(p^t); negative t applies the inverse automorphism."""
        t = t % self.n
        for _ in range(t):
            a = self.pow(a, self.p)
        return a

    def is_zero_vec(self, v) -> bool:
        z = self.zero
        return all(x == z for x in v)


def make_field(p: int, n: int = 1, modulus=None) -> Field:
    """Validated descriptor of F_{p^n}; built-in moduli cover p<=7, n<=4."""
    if not _is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if n < 1:
        raise UnsupportedField(f"extension degree must be >= 1, got {n}")
    if n == 1:
        if modulus is not None:
            raise UnsupportedField("prime fields take no modulus")
        return Field(p, 1, None)
    if modulus is None:
        try:
            modulus = BUILTIN_MODULI[(p, n)]
        except KeyError:
            raise UnsupportedField(f"no built-in modulus for p={p}, n={n}; supply one")
    mod = [int(c) % p for c in modulus]
    if len(_poly_trim(list(mod))) != n + 1:
        raise UnsupportedField(f"modulus must have degree {n}")
    if mod[-1] != 1:  # normalise to monic
        lead_inv = pow(mod[-1], p - 2, p)
        mod = [(c * lead_inv) % p for c in mod]
    mod = tuple(mod)
    if not _is_irreducible(p, mod):
        raise ReducibleModulus(f"modulus {list(mod)} is reducible over F_{p}")
    return Field(p, n, mod)


def frobenius_elem(x: Element, field: Field, t: int) -> Element:
    return field.frobenius(x, t)


def embed(small: Field, big: Field):
    """An embedding F_{p^n} -> F_{p^m} found by root search (n must divide m)."""
    if small.p != big.p or big.n % small.n:
        raise FieldMismatch(f"{small} does not embed into {big}")
    if small.n == 1:
        return lambda a: big.scalar(a[0])
    root = None
    for cand in big.elements():
        acc = big.zero
        for c in reversed(small.modulus):
            acc = big.add(big.mul(acc, cand), big.scalar(c))
        if acc == big.zero:
            root = cand
            break
    if root is None:
        raise UnsupportedField(f"{small} does not embed into {big}")

    def phi(a: Element) -> Element:
        acc = big.zero
        for c in reversed(a):
            acc = big.add(big.mul(acc, root), big.scalar(c))
        return acc

    return phi


Matrix = tuple[tuple[Element, ...], ...]


def as_matrix(field: Field, rows) -> Matrix:
    return tuple(tuple(field.element(e) for e in row) for row in rows)


@dataclass(frozen=True)
class SemilinearMap:
    """v |-> M . v^(p^t), with v^(q) the coordinatewise q-th power.

    Negative twists use the inverse Frobenius automorphism; the maps are
    additive and satisfy f(c v) = c^(p^t) f(v).
    """

    field: Field
    matrix: Matrix  # rows x cols
    twist: int

    @property
    def rows(self) -> int:
        return len(self.matrix)

    @property
    def cols(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def apply(self, v) -> tuple[Element, ...]:
        k = self.field
        if len(v) != self.cols:
            raise ShapeMismatch(f"vector of length {len(v)} for {self.cols} columns")
        tv = [k.frobenius(x, self.twist) for x in v]
        out = []
        for row in self.matrix:
            acc = k.zero
            for a, x in zip(row, tv):
                acc = k.add(acc, k.mul(a, x))
            out.append(acc)
        return tuple(out)


def semilinear_compose(f: SemilinearMap, g: SemilinearMap) -> SemilinearMap:
    """f o g = (M_f . M_g^(p^{t_f}), t_f + t_g)."""
    if f.field != g.field:
        raise FieldMismatch(f"{f.field} vs {g.field}")
    if f.cols != g.rows:
        raise ShapeMismatch(f"{f.cols} columns against {g.rows} rows")
    k = f.field
    tg = tuple(
        tuple(k.frobenius(a, f.twist) for a in row) for row in g.matrix
    )
    prod = []
    for row in f.matrix:
        out_row = []
        for j in range(g.cols):
            acc = k.zero
            for a, grow in zip(row, tg):
                acc = k.add(acc, k.mul(a, grow[j]))
            out_row.append(acc)
        prod.append(tuple(out_row))
    return SemilinearMap(k, tuple(prod), f.twist + g.twist)


def semilinear_power(f: SemilinearMap, i: int) -> SemilinearMap:
    if f.rows != f.cols:
        raise ShapeMismatch("only square maps can be iterated")
    out = identity_map(f.field, f.rows)
    for _ in range(i):
        out = semilinear_compose(out, f)
    return out


def identity_map(field: Field, n: int) -> SemilinearMap:
    rows = tuple(
        tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)
    )
    return SemilinearMap(field, rows, 0)


def semilinear_kernel(f: SemilinearMap):
    """(rank, kernel basis): solve M u = 0, then untwist u coordinatewise."""
    k = f.field
    rk, null = right_kernel(k, [list(r) for r in f.matrix], f.cols)
    basis = [tuple(k.frobenius(x, -f.twist) for x in v) for v in null]
    return rk, basis


# --- generic dense linear algebra over any Field -------------------------
#
# Deterministic "lowest index first" pivoting throughout, so every basis the
# library reports is reproducible.


def rref(field: Field, rows: list[list[Element]]):
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    k = field
    mat = [list(r) for r in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, nrows):
            if mat[i][c] != k.zero:
                sel = i
                break
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        inv = k.inv(mat[r][c])
        mat[r] = [k.mul(inv, x) for x in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c] != k.zero:
                factor = mat[i][c]
                mat[i] = [k.sub(x, k.mul(factor, y)) for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return mat[:r], pivots


def rank(field: Field, rows) -> int:
    reduced, pivots = rref(field, [list(r) for r in rows])
    return len(pivots)


def right_kernel(field: Field, rows, ncols: int):
    """(rank, basis of {v : M v = 0}) via back substitution from the RREF."""
    k = field
    if not rows:
        basis = []
        for j in range(ncols):
            v = [k.zero] * ncols
            v[j] = k.one
            basis.append(tuple(v))
        return 0, basis
    reduced, pivots = rref(field, rows)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for j in free:
        v = [k.zero] * ncols
        v[j] = k.one
        for row, pc in zip(reduced, pivots):
            v[pc] = k.neg(row[j])
        basis.append(tuple(v))
    return len(pivots), basis


def solve_right(field: Field, rows, rhs):
    """One solution of M x = b, or None.  M given as rows, b as a vector."""
    k = field
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(field, aug)
    for row, pc in zip(reduced, pivots):
        if pc == ncols:
            return None
    x = [k.zero] * ncols
    for row, pc in zip(reduced, pivots):
        x[pc] = row[ncols]
    return tuple(x)


def invert_matrix(field: Field, rows):
    """Inverse of a square matrix, or None when singular."""
    k = field
    n = len(rows)
    aug = [list(r) + [k.one if i == j else k.zero for j in range(n)] for i, r in enumerate(rows)]
    reduced, pivots = rref(field, aug)
    if pivots[:n] != list(range(n)):
        return None
    return tuple(tuple(row[n:]) for row in reduced[:n])

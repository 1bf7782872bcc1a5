"""Finite local commutative algebras A = k.1 + m given by structure constants.

An algebra is stored by a basis a_1..a_n of the maximal ideal m and the
constants c[i][j][h] with a_i a_j = sum_h c[i][j][h] a_h.  Locality means
the multiplication operators on m are jointly nilpotent; this is checked,
never assumed.  dim m = 0 (A = k, a reduced point) is legal.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import (
    FieldMismatch,
    InvalidConstants,
    InvalidSpec,
    NotCofinite,
    NotLocal,
    ShapeMismatch,
)
from .fields import Element, Field, SemilinearMap, invert_matrix, rref


@dataclass(frozen=True)
class AlgebraSpec:
    """User-facing description of one connected modulus component."""

    kind: str  # 'truncated_poly' | 'monomial_quotient' | 'table'
    order: int | None = None  # truncated_poly: A = k[t]/(t^order)
    variables: int | None = None  # monomial_quotient: variable count
    ideal: tuple[tuple[int, ...], ...] | None = None  # exponent vectors
    dim: int | None = None  # table: dim m
    constants: tuple[tuple[int, int, int, object], ...] | None = None  # (i, j, h, c), 1-based


@dataclass(frozen=True)
class LocalAlgebra:
    field: Field
    dim_m: int
    labels: tuple[str, ...]
    constants: tuple[tuple[tuple[Element, ...], ...], ...]  # [i][j][h]

    def c(self, i: int, j: int, h: int) -> Element:
        return self.constants[i][j][h]


@dataclass(frozen=True)
class AlgebraElement:
    """scalar * 1 + sum_i mcoords[i] * a_i."""

    scalar: Element
    mcoords: tuple[Element, ...]


@dataclass(frozen=True)
class Diagnostics:
    ok: bool
    kind: str | None = None
    indices: tuple[int, ...] = ()
    detail: str = ""


def one(A: LocalAlgebra) -> AlgebraElement:
    return AlgebraElement(A.field.one, (A.field.zero,) * A.dim_m)


def zero(A: LocalAlgebra) -> AlgebraElement:
    return AlgebraElement(A.field.zero, (A.field.zero,) * A.dim_m)


def basis_element(A: LocalAlgebra, i: int) -> AlgebraElement:
    coords = [A.field.zero] * A.dim_m
    coords[i] = A.field.one
    return AlgebraElement(A.field.zero, tuple(coords))


def from_parts(A: LocalAlgebra, scalar: Element, mcoords) -> AlgebraElement:
    if len(mcoords) != A.dim_m:
        raise ShapeMismatch(f"expected {A.dim_m} m-coordinates")
    return AlgebraElement(A.field.element(scalar), tuple(A.field.element(c) for c in mcoords))


def add(A: LocalAlgebra, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    k = A.field
    return AlgebraElement(
        k.add(x.scalar, y.scalar),
        tuple(k.add(a, b) for a, b in zip(x.mcoords, y.mcoords)),
    )


def scale(A: LocalAlgebra, c: Element, x: AlgebraElement) -> AlgebraElement:
    k = A.field
    return AlgebraElement(k.mul(c, x.scalar), tuple(k.mul(c, a) for a in x.mcoords))


def multiply(A: LocalAlgebra, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Bilinear product with 1 as unit and a_i a_j = sum_h c^h_ij a_h."""
    k = A.field
    n = A.dim_m
    if len(x.mcoords) != n or len(y.mcoords) != n:
        raise FieldMismatch("element does not belong to this algebra")
    s = k.mul(x.scalar, y.scalar)
    out = [k.zero] * n
    for i in range(n):
        xi = x.mcoords[i]
        if xi == k.zero:
            continue
        out[i] = k.add(out[i], k.mul(xi, y.scalar))
        for j in range(n):
            yj = y.mcoords[j]
            if yj == k.zero:
                continue
            coeff = k.mul(xi, yj)
            row = A.constants[i][j]
            for h in range(n):
                if row[h] != k.zero:
                    out[h] = k.add(out[h], k.mul(coeff, row[h]))
    for j in range(n):
        yj = y.mcoords[j]
        if yj != k.zero:
            out[j] = k.add(out[j], k.mul(x.scalar, yj))
    return AlgebraElement(s, tuple(out))


def power(A: LocalAlgebra, x: AlgebraElement, e: int) -> AlgebraElement:
    acc = one(A)
    base = x
    while e:
        if e & 1:
            acc = multiply(A, acc, base)
        base = multiply(A, base, base)
        e >>= 1
    return acc


def frobenius_power(A: LocalAlgebra, i: int) -> SemilinearMap:
    """The map m -> m, a |-> a^(p^i), as a semilinear map of twist i."""
    k = A.field
    n = A.dim_m
    cols = []
    for j in range(n):
        v = basis_element(A, j)
        for _ in range(i):
            v = power(A, v, k.p)
        if v.scalar != k.zero:
            raise NotLocal(f"a_{j + 1}^(p^{i}) has a unit component")
        cols.append(v.mcoords)
    matrix = tuple(tuple(cols[j][h] for j in range(n)) for h in range(n))
    return SemilinearMap(k, matrix, i)


def height(A: LocalAlgebra) -> int:
    """Least h with Fr^h(m) = 0; zero for the reduced point."""
    if A.dim_m == 0:
        return 0
    k = A.field
    h = 0
    vecs = [basis_element(A, j) for j in range(A.dim_m)]
    while any(v.mcoords != zero(A).mcoords or v.scalar != k.zero for v in vecs):
        vecs = [power(A, v, k.p) for v in vecs]
        h += 1
        if h > A.dim_m + 1:
            raise NotLocal("maximal ideal is not nilpotent")
    return h


def validate(A: LocalAlgebra) -> Diagnostics:
    """Exhaustive check of the three invariants, first violation reported.

    Order: commutativity, nilpotency (locality), associativity — a table
    with a non-vanishing multiplication orbit is diagnosed as non-local
    even when it also fails associativity.
    """
    k = A.field
    n = A.dim_m
    for i in range(n):
        for j in range(i + 1, n):
            if A.constants[i][j] != A.constants[j][i]:
                return Diagnostics(False, "commutativity", (i + 1, j + 1))
    # nilpotency: iterate the span of m^k until it vanishes or stabilises
    span = [tuple(k.one if a == b else k.zero for b in range(n)) for a in range(n)]
    for _ in range(n + 1):
        if not span:
            break
        nxt = []
        for i in range(n):
            for v in span:
                w = [k.zero] * n
                for j in range(n):
                    if v[j] != k.zero:
                        for h in range(n):
                            w[h] = k.add(w[h], k.mul(v[j], A.constants[i][j][h]))
                nxt.append(w)
        span = [tuple(r) for r in rref(k, nxt)[0]] if nxt else []
    if span:
        return Diagnostics(False, "nilpotency", (), "m is not nilpotent")
    for i in range(n):
        for j in range(n):
            for l in range(n):
                left = [k.zero] * n
                right = [k.zero] * n
                for h in range(n):
                    cij = A.constants[i][j][h]
                    if cij != k.zero:
                        for g in range(n):
                            left[g] = k.add(left[g], k.mul(cij, A.constants[h][l][g]))
                    cjl = A.constants[j][l][h]
                    if cjl != k.zero:
                        for g in range(n):
                            right[g] = k.add(right[g], k.mul(cjl, A.constants[i][h][g]))
                if left != right:
                    return Diagnostics(False, "associativity", (i + 1, j + 1, l + 1))
    return Diagnostics(True)


def _raise_for(diag: Diagnostics):
    if diag.ok:
        return
    if diag.kind == "nilpotency":
        raise NotLocal(diag.detail or "maximal ideal is not nilpotent")
    raise InvalidConstants(f"{diag.kind} fails at indices {diag.indices}")


def build(spec: AlgebraSpec, field: Field) -> LocalAlgebra:
    """Construct and validate the algebra described by spec over field."""
    if spec.kind == "truncated_poly":
        return _build_truncated(spec, field)
    if spec.kind == "monomial_quotient":
        return _build_monomial(spec, field)
    if spec.kind == "table":
        return _build_table(spec, field)
    raise InvalidSpec(f"unknown algebra kind {spec.kind!r}")


def _build_truncated(spec: AlgebraSpec, field: Field) -> LocalAlgebra:
    if spec.order is None or spec.order < 1:
        raise InvalidSpec("truncated_poly needs order >= 1")
    m = spec.order - 1
    k = field
    constants = tuple(
        tuple(
            tuple(k.one if h == i + j + 1 and h < m else k.zero for h in range(m))
            for j in range(m)
        )
        for i in range(m)
    )
    labels = tuple(f"t^{i + 1}" for i in range(m))
    return LocalAlgebra(field, m, labels, constants)


def _build_monomial(spec: AlgebraSpec, field: Field) -> LocalAlgebra:
    r = spec.variables
    if r is None or r < 1 or not spec.ideal:
        raise InvalidSpec("monomial_quotient needs variables >= 1 and a nonempty ideal")
    gens = [tuple(int(e) for e in g) for g in spec.ideal]
    for g in gens:
        if len(g) != r or any(e < 0 for e in g):
            raise InvalidSpec(f"bad exponent vector {g}")
        if sum(g) == 0:
            raise InvalidSpec("ideal contains 1")
        if sum(g) == 1:
            raise InvalidSpec("ideal contains a variable to the first power")
    bounds = []
    for v in range(r):
        pure = [g[v] for g in gens if all(e == 0 for i, e in enumerate(g) if i != v)]
        if not pure:
            raise NotCofinite(f"variable {v + 1} is not nilpotent modulo the ideal")
        bounds.append(min(pure))

    def divisible(e):
        return any(all(x >= y for x, y in zip(e, g)) for g in gens)

    import itertools

    standard = [
        e
        for e in itertools.product(*(range(b) for b in bounds))
        if sum(e) > 0 and not divisible(e)
    ]
    standard.sort(key=lambda e: (sum(e), e))
    index = {e: i for i, e in enumerate(standard)}
    n = len(standard)
    k = field
    constants = []
    for ei in standard:
        row = []
        for ej in standard:
            prod = tuple(a + b for a, b in zip(ei, ej))
            vec = [k.zero] * n
            if not divisible(prod) and prod in index:
                vec[index[prod]] = k.one
            row.append(tuple(vec))
        constants.append(tuple(row))

    def label(e):
        return "*".join(f"x{v + 1}^{c}" if c > 1 else f"x{v + 1}" for v, c in enumerate(e) if c)

    A = LocalAlgebra(field, n, tuple(label(e) for e in standard), tuple(constants))
    _raise_for(validate(A))
    return A


def _coeff(field: Field, raw) -> Element:
    if isinstance(raw, int):
        return field.scalar(raw)
    return field.element(raw)


def _build_table(spec: AlgebraSpec, field: Field) -> LocalAlgebra:
    n = spec.dim
    if n is None or n < 0:
        raise InvalidSpec("table needs dim >= 0")
    k = field
    cmat = [[[k.zero] * n for _ in range(n)] for _ in range(n)]
    seen = set()
    for entry in spec.constants or ():
        i, j, h, c = entry
        if not (1 <= i <= n and 1 <= j <= n and 1 <= h <= n):
            raise InvalidSpec(f"constant index out of range: {entry}")
        val = _coeff(k, c)
        if (i, j, h) in seen and cmat[i - 1][j - 1][h - 1] != val:
            raise InvalidConstants(f"conflicting entries for c^{h}_{i}{j}")
        seen.add((i, j, h))
        cmat[i - 1][j - 1][h - 1] = val
        if (j, i, h) not in seen:  # mirror unless explicitly contradicted later
            cmat[j - 1][i - 1][h - 1] = val
            seen.add((j, i, h))
    A = LocalAlgebra(
        field,
        n,
        tuple(f"a{i + 1}" for i in range(n)),
        tuple(tuple(tuple(col) for col in row) for row in cmat),
    )
    _raise_for(validate(A))
    return A


def change_basis(A: LocalAlgebra, P) -> LocalAlgebra:
    """Rewrite constants in the basis b_j = sum_i P[i][j] a_i (P invertible)."""
    k = A.field
    n = A.dim_m
    Pinv = invert_matrix(k, [list(r) for r in P])
    if Pinv is None:
        raise InvalidSpec("change of basis matrix is singular")
    new = [[[k.zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            # b_i b_j in the a-basis
            prod = [k.zero] * n
            for a in range(n):
                pai = P[a][i]
                if pai == k.zero:
                    continue
                for b in range(n):
                    pbj = P[b][j]
                    if pbj == k.zero:
                        continue
                    coeff = k.mul(pai, pbj)
                    for h in range(n):
                        ch = A.constants[a][b][h]
                        if ch != k.zero:
                            prod[h] = k.add(prod[h], k.mul(coeff, ch))
            for t in range(n):
                acc = k.zero
                for h in range(n):
                    acc = k.add(acc, k.mul(Pinv[t][h], prod[h]))
                new[i][j][t] = acc
    B = LocalAlgebra(
        A.field,
        n,
        tuple(f"b{i + 1}" for i in range(n)),
        tuple(tuple(tuple(col) for col in row) for row in new),
    )
    _raise_for(validate(B))
    return B

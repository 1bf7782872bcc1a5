"""Finite-dimensional representation calculus for unipotent automorphisms
over a local algebra.

An object is (V, phi) with phi = id (x) 1 + sum_i phi_i (x) a_i, stored by
its m-component matrices alone: the implicit identity part makes the
normalisation at the closed point structural rather than checked.  The
functor to modules over the free algebra on m* sends e_i to phi_i; tensor
products follow the transposed structure constants.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    AlgebraMismatch,
    InternalInconsistency,
    NotInvertible,
    SearchBudgetExceeded,
    ShapeMismatch,
)
from .fields import Element, Field, invert_matrix, right_kernel
from .localalgebra import (
    AlgebraElement,
    LocalAlgebra,
    add as alg_add,
    from_parts,
    multiply,
    one as alg_one,
)

Matrix = tuple[tuple[Element, ...], ...]


# --- matrices over a field; prime fields go through numpy -----------------


def _to_np(field: Field, m: Matrix) -> np.ndarray:
    return np.array([[e[0] for e in row] for row in m], dtype=np.int64)


def _from_np(field: Field, a: np.ndarray) -> Matrix:
    return tuple(tuple((int(x),) for x in row) for row in (a % field.p))


def mat_identity(field: Field, n: int) -> Matrix:
    return tuple(
        tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)
    )


def mat_zero(field: Field, r: int, c: int) -> Matrix:
    return tuple(tuple(field.zero for _ in range(c)) for _ in range(r))


def mat_add(field: Field, a: Matrix, b: Matrix) -> Matrix:
    if field.n == 1:
        return _from_np(field, _to_np(field, a) + _to_np(field, b))
    return tuple(
        tuple(field.add(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_scale(field: Field, c: Element, a: Matrix) -> Matrix:
    if field.n == 1:
        return _from_np(field, c[0] * _to_np(field, a))
    return tuple(tuple(field.mul(c, x) for x in row) for row in a)


def mat_mul(field: Field, a: Matrix, b: Matrix) -> Matrix:
    if field.n == 1:
        return _from_np(field, _to_np(field, a) @ _to_np(field, b))
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = field.zero
            for t in range(inner):
                acc = field.add(acc, field.mul(a[i][t], b[t][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_kron(field: Field, a: Matrix, b: Matrix) -> Matrix:
    if field.n == 1:
        return _from_np(field, np.kron(_to_np(field, a), _to_np(field, b)))
    ra, rb = len(a), len(b)
    ca = len(a[0]) if a else 0
    cb = len(b[0]) if b else 0
    out = []
    for i in range(ra * rb):
        row = []
        for j in range(ca * cb):
            row.append(field.mul(a[i // rb][j // cb], b[i % rb][j % cb]))
        out.append(tuple(row))
    return tuple(out)


# --- objects ---------------------------------------------------------------


@dataclass(frozen=True)
class SAObject:
    """(V, phi) with phi = id (x) 1 + sum phi_i (x) a_i."""

    algebra: LocalAlgebra
    dim: int
    components: tuple[Matrix, ...]


def make_sa_object(A: LocalAlgebra, matrices, dim: int | None = None) -> SAObject:
    mats = []
    if len(matrices) != A.dim_m:
        raise ShapeMismatch(f"need {A.dim_m} component matrices")
    for m in matrices:
        rows = tuple(tuple(A.field.element(e) for e in row) for row in m)
        if dim is None:
            dim = len(rows)
        if len(rows) != dim or any(len(r) != dim for r in rows):
            raise ShapeMismatch("component matrices must be square of equal size")
        mats.append(rows)
    if dim is None:
        raise ShapeMismatch("an object over k itself needs an explicit dimension")
    return SAObject(A, dim, tuple(mats))


def unit_object(A: LocalAlgebra, dim: int = 1) -> SAObject:
    z = mat_zero(A.field, dim, dim)
    return SAObject(A, dim, tuple(z for _ in range(A.dim_m)))


def tensor_sa(X: SAObject, Y: SAObject) -> SAObject:
    """(phi . psi)_h = id (x) psi_h + phi_h (x) id + sum c^h_ij phi_i (x) psi_j."""
    if X.algebra != Y.algebra:
        raise AlgebraMismatch("objects over different algebras")
    A = X.algebra
    k = A.field
    idx = mat_identity(k, X.dim)
    idy = mat_identity(k, Y.dim)
    comps = []
    for h in range(A.dim_m):
        acc = mat_add(
            k,
            mat_kron(k, idx, Y.components[h]),
            mat_kron(k, X.components[h], idy),
        )
        for i in range(A.dim_m):
            for j in range(A.dim_m):
                c = A.constants[i][j][h]
                if c != k.zero:
                    acc = mat_add(
                        k,
                        acc,
                        mat_scale(k, c, mat_kron(k, X.components[i], Y.components[j])),
                    )
        comps.append(acc)
    return SAObject(A, X.dim * Y.dim, tuple(comps))


@dataclass(frozen=True)
class ModuleAction:
    """Module over the free algebra on m*: e_i acts by the i-th component."""

    obj: SAObject

    def act_generator(self, i: int) -> Matrix:
        return self.obj.components[i]

    def act_word(self, word) -> Matrix:
        k = self.obj.algebra.field
        acc = mat_identity(k, self.obj.dim)
        for i in word:
            acc = mat_mul(k, acc, self.obj.components[i])
        return acc

    def act_poly(self, x) -> Matrix:
        k = self.obj.algebra.field
        acc = mat_zero(k, self.obj.dim, self.obj.dim)
        for w, c in x.terms.items():
            acc = mat_add(k, acc, mat_scale(k, c, self.act_word(w)))
        return acc


def omega(X: SAObject) -> ModuleAction:
    return ModuleAction(X)


def are_isomorphic(X: SAObject, Y: SAObject, budget: int = 10_000):
    """An invertible intertwiner f with f phi_i = psi_i f, or None.

    The intertwiner space is solved exactly; an invertible point is then
    located by exhausting the space, guarded by the candidate budget.
    """
    if X.algebra != Y.algebra:
        raise AlgebraMismatch("objects over different algebras")
    if X.dim != Y.dim:
        return None
    A = X.algebra
    k = A.field
    r = X.dim
    # rows: equations over the r*r unknowns f[a][b]
    rows = []
    for i in range(A.dim_m):
        phi = X.components[i]
        psi = Y.components[i]
        for a in range(r):
            for b in range(r):
                row = [k.zero] * (r * r)
                for t in range(r):
                    row[a * r + t] = k.add(row[a * r + t], phi[t][b])
                    row[t * r + b] = k.sub(row[t * r + b], psi[a][t])
                rows.append(row)
    if rows:
        _, basis = right_kernel(k, rows, r * r)
    else:
        basis = [
            tuple(k.one if t == s else k.zero for t in range(r * r))
            for s in range(r * r)
        ]
    if not basis:
        return None
    size = k.size ** len(basis)
    if size > budget:
        raise SearchBudgetExceeded(f"{size} candidates exceed budget {budget}")
    for coeffs in itertools.product(list(k.elements()), repeat=len(basis)):
        vec = [k.zero] * (r * r)
        for c, v in zip(coeffs, basis):
            if c != k.zero:
                for t in range(r * r):
                    vec[t] = k.add(vec[t], k.mul(c, v[t]))
        f = tuple(tuple(vec[a * r + b] for b in range(r)) for a in range(r))
        if invert_matrix(k, [list(rw) for rw in f]) is not None:
            return f
    return None


# --- one-dimensional objects and the unit group ---------------------------


@dataclass(frozen=True)
class UnitGroup:
    """All 1-dimensional objects under tensor product, with its table."""

    algebra: LocalAlgebra
    objects: tuple[SAObject, ...]
    table: dict  # (i, j) -> index of the product
    units: tuple[AlgebraElement, ...]  # the bijection to 1 + m

    @property
    def order(self) -> int:
        return len(self.objects)

    def unit_index(self) -> int:
        zero_comps = unit_object(self.algebra).components
        for i, o in enumerate(self.objects):
            if o.components == zero_comps:
                return i
        raise InternalInconsistency("unit object missing from the group")

    def element_order(self, i: int) -> int:
        e = self.unit_index()
        n, j = 1, i
        while j != e:
            j = self.table[(j, i)]
            n += 1
        return n

    def exponent(self) -> int:
        exp = 1
        for i in range(self.order):
            n = self.element_order(i)
            exp = exp * n // _gcd(exp, n)
        return exp


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def unit_group_dim1(A: LocalAlgebra) -> UnitGroup:
    """The group of 1-dimensional objects; verified against (1 + m, .)."""
    k = A.field
    n = A.dim_m
    if k.size**n > 256:
        raise SearchBudgetExceeded("more than 256 one-dimensional objects")
    coords = list(itertools.product(list(k.elements()), repeat=n))
    objects = [
        SAObject(A, 1, tuple(((c,),) for c in coord)) for coord in coords
    ]
    index = {tuple(o.components) for o in objects}
    pos = {tuple(o.components): i for i, o in enumerate(objects)}
    units = [from_parts(A, k.one, coord) for coord in coords]
    table = {}
    for i, X in enumerate(objects):
        for j, Y in enumerate(objects):
            Z = tensor_sa(X, Y)
            key = tuple(Z.components)
            if key not in index:
                raise InternalInconsistency("tensor left the set of objects")
            table[(i, j)] = pos[key]
            # the evident bijection must be a homomorphism onto (1+m, .)
            prod = multiply(A, units[i], units[j])
            expected = units[table[(i, j)]]
            if prod != expected:
                raise InternalInconsistency("bijection to 1+m is not multiplicative")
    _verify_group(table, len(objects))
    return UnitGroup(A, tuple(objects), table, tuple(units))


def _verify_group(table: dict, n: int):
    # identity, associativity, inverses: exhaustive
    identity = None
    for e in range(n):
        if all(table[(e, i)] == i and table[(i, e)] == i for i in range(n)):
            identity = e
            break
    if identity is None:
        raise InternalInconsistency("no identity in tensor table")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[(table[(a, b)], c)] != table[(a, table[(b, c)])]:
                    raise InternalInconsistency("tensor table is not associative")
    for a in range(n):
        if not any(table[(a, b)] == identity for b in range(n)):
            raise InternalInconsistency("missing inverse in tensor table")


# --- triples over a disjoint union of components ---------------------------


AlgebraMatrix = tuple[tuple[AlgebraElement, ...], ...]


@dataclass(frozen=True)
class TripleObject:
    """(V, W; beta) data over the components of a disconnected modulus."""

    components: tuple[LocalAlgebra, ...]
    v_dim: int
    w_dim: int
    betas: tuple[AlgebraMatrix, ...]  # per component, W -> V over A_j


def make_triple(components, v_dim: int, w_dim: int, betas) -> TripleObject:
    components = tuple(components)
    if len(betas) != len(components):
        raise ShapeMismatch("one beta per component required")
    fixed = []
    for A, beta in zip(components, betas):
        rows = tuple(tuple(e for e in row) for row in beta)
        if len(rows) != v_dim or any(len(r) != w_dim for r in rows):
            raise ShapeMismatch("beta must be a v_dim x w_dim matrix")
        g = scalar_part(A, rows)
        if invert_matrix(A.field, [list(r) for r in g]) is None:
            raise NotInvertible("beta is singular at the closed point")
        fixed.append(rows)
    return TripleObject(components, v_dim, w_dim, tuple(fixed))


def scalar_part(A: LocalAlgebra, beta: AlgebraMatrix) -> Matrix:
    return tuple(tuple(e.scalar for e in row) for row in beta)


def _beta_times_scalar(A: LocalAlgebra, beta: AlgebraMatrix, g: Matrix) -> AlgebraMatrix:
    """beta . (g (x) 1) with g a matrix over k."""
    k = A.field
    r = len(beta)
    c = len(g[0])
    out = []
    for i in range(r):
        row = []
        for j in range(c):
            acc = from_parts(A, k.zero, (k.zero,) * A.dim_m)
            for t in range(len(g)):
                from .localalgebra import scale as alg_scale

                acc = alg_add(A, acc, alg_scale(A, g[t][j], beta[i][t]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def normalize_triple(T: TripleObject):
    """Split a triple into per-component objects plus transition matrices.

    Evaluates each beta at the closed point (scalar part g_j, necessarily
    invertible), returns the objects with data beta_j (g_j (x) 1)^{-1} and
    the transitions g_j g_m^{-1} against the last component as basepoint.
    """
    if T.v_dim != T.w_dim:
        raise ShapeMismatch("triples must first be normalised to V = W")
    k = T.components[0].field if T.components else None
    objects = []
    scalars = []
    for A, beta in zip(T.components, T.betas):
        g = scalar_part(A, beta)
        ginv = invert_matrix(A.field, [list(r) for r in g])
        if ginv is None:
            raise NotInvertible("beta is singular at the closed point")
        normal = _beta_times_scalar(A, beta, ginv)
        comps = []
        for i in range(A.dim_m):
            comps.append(
                tuple(tuple(normal[a][b].mcoords[i] for b in range(T.v_dim)) for a in range(T.v_dim))
            )
        for a in range(T.v_dim):
            for b in range(T.v_dim):
                want = A.field.one if a == b else A.field.zero
                if normal[a][b].scalar != want:
                    raise InternalInconsistency("normalisation lost the identity part")
        objects.append(SAObject(A, T.v_dim, tuple(comps)))
        scalars.append(g)
    transitions = []
    if scalars:
        base = scalars[-1]
        base_inv = invert_matrix(k, [list(r) for r in base])
        for g in scalars[:-1]:
            transitions.append(mat_mul(k, g, base_inv))
    return objects, transitions


def assemble_triple(objects, transitions) -> TripleObject:
    """Inverse of normalize_triple up to the basepoint convention."""
    if not objects:
        raise ShapeMismatch("need at least one object")
    dim = objects[0].dim
    k = objects[0].algebra.field
    scalars = list(transitions) + [mat_identity(k, dim)]
    betas = []
    for X, g in zip(objects, scalars):
        A = X.algebra
        rows = []
        for a in range(dim):
            row = []
            for b in range(dim):
                m = tuple(X.components[i][a][b] for i in range(A.dim_m))
                scalar = k.one if a == b else k.zero
                row.append(from_parts(A, scalar, m))
            rows.append(tuple(row))
        betas.append(_beta_times_scalar(A, tuple(rows), g))
    return make_triple([X.algebra for X in objects], dim, dim, betas)

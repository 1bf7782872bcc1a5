"""The Leibniz Hopf algebra, divided power sequences, the minimal-curve
solver, and noncommutative Witt presentations.

A curve of length l is a sequence c_1..c_l with (c_0 = 1)

    Delta(c_j) = sum_{i=0..j} c_i (x) c_{j-i}.

The defining equation at index j is linear in c_j, so curves are extended
degree by degree by exact linear algebra.  The minimal curve E_1, E_2, ...
additionally satisfies: E_i homogeneous of degree i; for i = p^a the
difference E_i - Z_i is supported on words in letters Z_j with j < i; for
other i, E_i lies in the subalgebra generated by the p-power-indexed terms.
Ties are broken deterministically (lexicographically least coefficient
vector in the graded word order), which makes every fixture reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ExpressionFailure, InternalInconsistency, Unsolvable, ValidationError
from .fields import Field, right_kernel, solve_right
from .hopf import (
    HopfPresentation,
    NcPoly,
    TensorSquare,
    coproduct,
    make_presentation,
    nc_gen,
    nc_one,
    nc_zero,
    reduced_coproduct,
    tensor,
)
from .modp import lex_reduce_mod, nullspace_mod, solve_mod


def leibniz_presentation(m: int, field: Field) -> HopfPresentation:
    """Free algebra on Z_1..Z_m with Delta(Z_h) = sum_{i+j=h} Z_i (x) Z_j."""
    if m < 1:
        raise ValidationError("need at least one generator")
    gens = [(f"Z{i}", i) for i in range(1, m + 1)]
    corrections = [
        [(1, nc_gen(field, i - 1), nc_gen(field, h - i - 1)) for i in range(1, h)]
        for h in range(1, m + 1)
    ]
    return make_presentation(field, gens, corrections)


def antipode_elements(m: int, field: Field) -> list[NcPoly]:
    """S_1..S_m from S_0 = 1 and sum_{i=0..n} S_i Z_{n-i} = 0."""
    out: list[NcPoly] = []
    s = [nc_one(field)]
    for n in range(1, m + 1):
        acc = nc_zero(field)
        for i in range(n):
            acc = acc + s[i] * nc_gen(field, n - i - 1)
        sn = -acc
        s.append(sn)
        out.append(sn)
    return out


@dataclass(frozen=True)
class Curve:
    presentation: HopfPresentation
    elements: tuple[NcPoly, ...]

    def __len__(self):
        return len(self.elements)


def curve_defect(pres: HopfPresentation, elements, j: int) -> TensorSquare:
    """Delta(c_j) - sum_{i=0..j} c_i (x) c_{j-i}; zero iff the identity holds."""
    c = [nc_one(pres.field)] + list(elements)
    d = coproduct(pres, c[j])
    for i in range(j + 1):
        d = d - tensor(c[i], c[j - i])
    return d


def is_curve(pres: HopfPresentation, elements) -> bool:
    return all(curve_defect(pres, elements, j).is_zero for j in range(1, len(elements) + 1))


@dataclass
class AffineSolutions:
    """Solutions c = particular + span(homogeneous) of a curve-extension step."""

    particular: NcPoly
    homogeneous: list[NcPoly]


def extend_curve(pres: HopfPresentation, curve_elements, subspace) -> AffineSolutions | None:
    """Solve the curve identity at index l+1 for c in span(subspace).

    Returns None when the system is inconsistent; an empty solution set is a
    value, not an error.
    """
    k = pres.field
    j = len(curve_elements) + 1
    c = [nc_one(k)] + list(curve_elements)
    target = TensorSquare(k, {})
    for i in range(1, j):
        target = target + tensor(c[i], c[j - i])
    images = [reduced_coproduct(pres, u) for u in subspace]
    keys = sorted(
        {key for img in images for key in img.terms} | set(target.terms),
        key=lambda key: (pres.word_key(key[0]), pres.word_key(key[1])),
    )
    if not keys:  # no constraints: every element of the span is a solution
        return AffineSolutions(
            nc_zero(k), [u for u in subspace if not u.is_zero]
        )
    if k.n == 1:
        a = np.array(
            [[img.terms.get(key, k.zero)[0] for img in images] for key in keys],
            dtype=np.int64,
        )
        b = np.array([target.terms.get(key, k.zero)[0] for key in keys], dtype=np.int64)
        x0 = solve_mod(a, b, k.p)
        if x0 is None:
            return None
        null = nullspace_mod(a, k.p)
        particular = _combine(k, subspace, [int(v) for v in x0])
        homogeneous = [
            h
            for h in (_combine(k, subspace, [int(v) for v in row]) for row in null)
            if not h.is_zero
        ]
        return AffineSolutions(particular, homogeneous)
    rows = [[img.terms.get(key, k.zero) for img in images] for key in keys]
    rhs = [target.terms.get(key, k.zero) for key in keys]
    x0 = solve_right(k, rows, rhs)
    if x0 is None:
        return None
    _, null = right_kernel(k, rows, len(subspace))
    particular = _combine_field(k, subspace, x0)
    homogeneous = [
        h for h in (_combine_field(k, subspace, v) for v in null) if not h.is_zero
    ]
    return AffineSolutions(particular, homogeneous)


def _combine(k: Field, polys, ints):
    out = nc_zero(k)
    for c, p in zip(ints, polys):
        if c:
            out = out + p.scale(k.scalar(c))
    return out


def _combine_field(k: Field, polys, coeffs):
    out = nc_zero(k)
    for c, p in zip(coeffs, polys):
        if c != k.zero:
            out = out + p.scale(c)
    return out


def _fix_coefficient(
    k: Field, sols: AffineSolutions, word, value
) -> AffineSolutions | None:
    """Impose coeff(word) = value on an affine solution set."""
    cur = sols.particular.coeff(word)
    pivot = None
    for h in sols.homogeneous:
        if h.coeff(word) != k.zero:
            pivot = h
            break
    if pivot is None:
        return sols if cur == value else None
    factor = k.mul(k.sub(value, cur), k.inv(pivot.coeff(word)))
    particular = sols.particular + pivot.scale(factor)
    homogeneous = []
    pc = k.inv(pivot.coeff(word))
    for h in sols.homogeneous:
        if h is pivot:
            continue
        c = h.coeff(word)
        if c != k.zero:
            h = h - pivot.scale(k.mul(c, pc))
        if not h.is_zero:
            homogeneous.append(h)
    return AffineSolutions(particular, homogeneous)


def _lex_pick(pres: HopfPresentation, sols: AffineSolutions, maximize: bool) -> NcPoly:
    """Lexicographically extreme solution in word coordinates."""
    k = pres.field
    words = sorted(
        {w for w in sols.particular.terms} | {w for h in sols.homogeneous for w in h.terms},
        key=pres.word_key,
    )
    if not sols.homogeneous or not words:
        return sols.particular
    if k.n == 1:
        x0 = np.array([sols.particular.coeff(w)[0] for w in words], dtype=np.int64)
        basis = np.array(
            [[h.coeff(w)[0] for w in words] for h in sols.homogeneous], dtype=np.int64
        )
        best = lex_reduce_mod(x0, basis, k.p, maximize=maximize)
        return NcPoly(k, {w: (int(v),) for w, v in zip(words, best) if v})
    # generic fallback: reduce the particular vector by an echelonized basis
    rows = [[h.coeff(w) for w in words] for h in sols.homogeneous]
    from .fields import rref

    red, pivots = rref(k, rows)
    vec = [sols.particular.coeff(w) for w in words]
    for row, pc in zip(red, pivots):
        c = vec[pc]
        if c != k.zero:
            vec = [k.sub(x, k.mul(c, y)) for x, y in zip(vec, row)]
    return NcPoly(k, {w: v for w, v in zip(words, vec) if v != k.zero})


def _norm(i: int, p: int) -> int:
    """||i|| = floor(log_p i)."""
    a = 0
    while p ** (a + 1) <= i:
        a += 1
    return a


def _is_p_power(i: int, p: int) -> bool:
    while i % p == 0:
        i //= p
    return i == 1


def _homogeneous_words(pres: HopfPresentation, degree: int, max_letter: int):
    """Words of the given total weight using letters Z_1..Z_{max_letter}."""

    def rec(prefix, remaining):
        if remaining == 0:
            yield prefix
            return
        for i in range(1, min(max_letter, remaining) + 1):
            yield from rec(prefix + (i - 1,), remaining - i)

    yield from rec((), degree)


def _power_products(p: int, degree: int, max_exp: int):
    """Compositions of degree into parts p^a with a <= max_exp, as exponent words."""

    def rec(prefix, remaining):
        if remaining == 0:
            yield prefix
            return
        for a in range(max_exp + 1):
            q = p**a
            if q <= remaining:
                yield from rec(prefix + (a,), remaining - q)

    yield from rec((), degree)


def _product_polys(p: int, elements, degree: int):
    """(exponent word, product E_{p^{a_1}} ... E_{p^{a_r}}) of total degree."""
    max_exp = _norm(degree, p)
    out = []
    for word in sorted(_power_products(p, degree, max_exp)):
        poly = None
        for a in word:
            e = elements[p**a - 1]
            poly = e if poly is None else poly * e
        out.append((word, poly))
    return out


_CURVE_CACHE: dict = {}


def minimal_curve(p: int, N: int, field: Field, tie_break: str = "min") -> Curve:
    """Minimal curve E_1..E_N in the Leibniz algebra on N letters.

    Results are cached per (field, tie_break) and extended on demand; the
    construction is deterministic, so shorter curves are prefixes of longer
    ones.
    """
    if field.p != p:
        raise ValidationError(f"field has characteristic {field.p}, not {p}")
    if N < 1:
        raise ValidationError("N must be >= 1")
    key = (field, tie_break)
    pres = _CURVE_CACHE.setdefault(("pres", field, N), leibniz_presentation(N, field))
    cached = _CURVE_CACHE.get(key, [])
    if len(cached) >= N:
        return Curve(pres, tuple(cached[:N]))
    # element polys reference letters by index only, so a curve computed in a
    # wider presentation restricts verbatim
    elements: list[NcPoly] = list(cached)
    maximize = tie_break == "max"
    for i in range(len(elements) + 1, N + 1):
        if _is_p_power(i, p):
            subspace = [nc_gen(field, i - 1)] + [
                NcPoly(field, {w: field.one})
                for w in _homogeneous_words(pres, i, i - 1)
            ]
        else:
            subspace = [poly for _, poly in _product_polys(p, elements, i)]
        sols = extend_curve(pres, elements, subspace)
        if sols is not None and _is_p_power(i, p):
            sols = _fix_coefficient(field, sols, (i - 1,), field.one)
        if sols is None:
            raise Unsolvable(f"no curve extension at index {i}")
        e = _lex_pick(pres, sols, maximize)
        if _is_p_power(i, p) and e.coeff((i - 1,)) != field.one:
            raise InternalInconsistency(
                f"E_{i} does not have unit coefficient on Z_{i}"
            )
        elements.append(e)
    _CURVE_CACHE[key] = elements
    return Curve(pres, tuple(elements[:N]))


def in_power_subalgebra(p: int, curve: Curve, i: int) -> bool:
    """Membership E_i in k{E_1, E_p, ..., E_{p^||i||}} by exact linear algebra."""
    pres = curve.presentation
    k = pres.field
    target = curve.elements[i - 1]
    prods = [poly for _, poly in _product_polys(p, curve.elements, i)]
    words = sorted(
        {w for q in prods for w in q.terms} | set(target.terms), key=pres.word_key
    )
    rows = [[q.coeff(w) for q in prods] for w in words]
    rhs = [target.coeff(w) for w in words]
    return solve_right(k, rows, rhs) is not None


def letter_bound_ok(p: int, curve: Curve, i: int) -> bool:
    """For i = p^a: E_i - Z_i only uses letters Z_j with j < i."""
    diff = curve.elements[i - 1] - nc_gen(curve.presentation.field, i - 1)
    return all(max(w, default=-1) < i - 1 for w in diff.terms)


def is_homogeneous(pres: HopfPresentation, x: NcPoly, degree: int) -> bool:
    return all(pres.word_weight(w) == degree for w in x.terms)


_NW_CACHE: dict = {}


def nw_presentation(
    length: int, p: int, field: Field, degree_bound: int | None = None
) -> HopfPresentation:
    """Noncommutative Witt presentation on E_1, E_p, ..., E_{p^{length-1}}.

    Corrections come from Delta(E_{p^a}) = sum E_i (x) E_{p^a - i} after
    rewriting every E_i as a polynomial in the lower p-power generators.
    """
    if length < 1:
        raise ValidationError("length must be >= 1")
    if field.p != p:
        raise ValidationError(f"field has characteristic {field.p}, not {p}")
    N = p ** (length - 1)
    if degree_bound is not None and N > degree_bound:
        raise ValidationError(f"p^(length-1) = {N} exceeds degree bound {degree_bound}")
    key = (field, length)
    cached = _NW_CACHE.get(key)
    if cached is not None:
        return cached
    curve = minimal_curve(p, max(N, 1), field)
    exprs: dict[int, NcPoly] = {}

    def expr(i: int) -> NcPoly:
        """E_i as an NcPoly in the generator letters g_0..g_{a}."""
        if i in exprs:
            return exprs[i]
        prods = _product_polys(p, curve.elements, i)
        pres = curve.presentation
        k = field
        target = curve.elements[i - 1]
        words = sorted(
            {w for _, q in prods for w in q.terms} | set(target.terms),
            key=pres.word_key,
        )
        rows = [[q.coeff(w) for _, q in prods] for w in words]
        rhs = [target.coeff(w) for w in words]
        if k.n == 1:
            a = np.array([[c[0] for c in row] for row in rows], dtype=np.int64)
            b = np.array([c[0] for c in rhs], dtype=np.int64)
            x0 = solve_mod(a, b, k.p)
            if x0 is None:
                raise ExpressionFailure(f"E_{i} not in the p-power subalgebra")
            null = nullspace_mod(a, k.p)
            best = lex_reduce_mod(x0, null, k.p) if null.size else x0
            coords = [int(v) for v in best]
        else:
            sol = solve_right(k, rows, rhs)
            if sol is None:
                raise ExpressionFailure(f"E_{i} not in the p-power subalgebra")
            coords = sol
        out: dict = {}
        for (word, _), c in zip(prods, coords):
            if (isinstance(c, int) and c % k.p) or (not isinstance(c, int) and c != k.zero):
                out[word] = k.scalar(c) if isinstance(c, int) else c
        poly = NcPoly(k, out)
        exprs[i] = poly
        return poly

    gens = [(f"E{p**a}", p**a) for a in range(length)]
    corrections = []
    for a in range(length):
        q = p**a
        row = [(1, expr(i), expr(q - i)) for i in range(1, q)]
        corrections.append(row)
    pres = make_presentation(field, gens, corrections)
    _NW_CACHE[key] = pres
    return pres


def nw_generator_images(length: int, p: int, field: Field) -> list[NcPoly]:
    """The curve elements E_{p^a} inside the Leibniz algebra."""
    curve = minimal_curve(p, p ** (length - 1) if length > 1 else 1, field)
    return [curve.elements[p**a - 1] for a in range(length)]


def expand_in_leibniz(length: int, p: int, field: Field, x: NcPoly) -> NcPoly:
    """Substitute g_a -> E_{p^a}: the inclusion into the Leibniz algebra."""
    images = nw_generator_images(length, p, field)
    out = nc_zero(field)
    for w, c in x.terms.items():
        term = nc_one(field)
        for letter in w:
            term = term * images[letter]
        out = out + term.scale(c)
    return out

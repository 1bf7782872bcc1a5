"""Classical Witt vector arithmetic and the abelianized cross-checks.

The addition polynomials S_0, S_1, ... are solved exactly over the
rationals from the ghost-component identities

    w_n(S_0, ..., S_n) = w_n(x) + w_n(y),   w_n = sum_i p^i x_i^(p^(n-i)),

and verified integral; integrality doubles as a correctness oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import IntegralityFailure, ShapeMismatch, ValidationError
from .fields import Element, Field
from .hopf import NcPoly, nc_gen, nc_one, nc_zero, tensor, TensorSquare, abelianize
from .curves import nw_presentation

Monomial = tuple[int, ...]  # exponents of x_0..x_{l-1}, y_0..y_{l-1}


@dataclass(frozen=True)
class IntPoly:
    """Multivariate polynomial with exact (Fraction or int) coefficients."""

    nvars: int
    terms: dict  # Monomial -> coefficient

    def __post_init__(self):
        for m, c in list(self.terms.items()):
            if not c:
                del self.terms[m]

    def __add__(self, other: "IntPoly") -> "IntPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return IntPoly(self.nvars, out)

    def __neg__(self) -> "IntPoly":
        return IntPoly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return IntPoly(self.nvars, out)

    def scale(self, c) -> "IntPoly":
        return IntPoly(self.nvars, {m: x * c for m, x in self.terms.items()})

    def pow(self, e: int) -> "IntPoly":
        acc = IntPoly(self.nvars, {(0,) * self.nvars: 1})
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.terms.values())

    def as_integer(self) -> "IntPoly":
        if not self.is_integral():
            raise IntegralityFailure(f"non-integral coefficients in {self}")
        return IntPoly(self.nvars, {m: int(c) for m, c in self.terms.items()})

    def evaluate(self, field: Field, values: list[Element]) -> Element:
        k = field
        acc = k.zero
        for m, c in self.terms.items():
            term = k.scalar(int(c) % k.p)
            for v, e in zip(values, m):
                if e:
                    term = k.mul(term, k.pow(v, e))
            acc = k.add(acc, term)
        return acc

    def render(self, length: int) -> str:
        """Human-readable form with variables x0..,y0.. in canonical order."""

        def name(v):
            return f"x{v}" if v < length else f"y{v - length}"

        bits = []
        for m in sorted(self.terms, key=lambda m: (sum(m), m)):
            c = int(self.terms[m])
            vars_ = "*".join(
                f"{name(v)}^{e}" if e > 1 else name(v) for v, e in enumerate(m) if e
            )
            if not vars_:
                bits.append(str(c))
            elif c == 1:
                bits.append(vars_)
            elif c == -1:
                bits.append(f"-{vars_}")
            else:
                bits.append(f"{c}*{vars_}")
        if not bits:
            return "0"
        out = bits[0]
        for b in bits[1:]:
            out += f" - {b[1:]}" if b.startswith("-") else f" + {b}"
        return out


def _var(nvars: int, v: int) -> IntPoly:
    m = [0] * nvars
    m[v] = 1
    return IntPoly(nvars, {tuple(m): 1})


def _ghost(p: int, n: int, nvars: int, offset: int) -> IntPoly:
    """w_n = sum_{i<=n} p^i x_{offset+i}^(p^(n-i))."""
    acc = IntPoly(nvars, {})
    for i in range(n + 1):
        acc = acc + _var(nvars, offset + i).pow(p ** (n - i)).scale(p**i)
    return acc


_WITT_CACHE: dict = {}


def witt_addition_polys(p: int, length: int) -> list[IntPoly]:
    """S_0..S_{length-1} over the integers (ghost solve, integrality verified)."""
    if length < 1:
        raise ValidationError("length must be >= 1")
    if not (p in (2, 3, 5) and length <= 4):
        raise ValidationError("supported domain: p in {2,3,5}, length <= 4")
    key = (p, length)
    cached = _WITT_CACHE.get(key)
    if cached is not None:
        return cached
    nvars = 2 * length
    S: list[IntPoly] = []
    for n in range(length):
        rhs = _ghost(p, n, nvars, 0) + _ghost(p, n, nvars, length)
        for i in range(n):
            rhs = rhs - S[i].pow(p ** (n - i)).scale(p**i)
        sn = rhs.scale(Fraction(1, p**n)).as_integer()
        S.append(sn)
    _WITT_CACHE[key] = S
    return S


@dataclass(frozen=True)
class WittVector:
    p: int
    components: tuple[Element, ...]

    def __len__(self):
        return len(self.components)


def witt_vector(p: int, field: Field, components) -> WittVector:
    return WittVector(p, tuple(field.element(c) for c in components))


def witt_zero(p: int, length: int, field: Field) -> WittVector:
    return WittVector(p, (field.zero,) * length)


def witt_add(u: WittVector, v: WittVector, field: Field) -> WittVector:
    """Componentwise evaluation of the addition polynomials mod p."""
    if u.p != v.p or u.p != field.p:
        raise ShapeMismatch("mismatched primes")
    if len(u) != len(v):
        raise ShapeMismatch(f"lengths {len(u)} and {len(v)} differ")
    S = witt_addition_polys(u.p, len(u))
    values = list(u.components) + list(v.components)
    return WittVector(u.p, tuple(S[j].evaluate(field, values) for j in range(len(u))))


def witt_order(x: WittVector, field: Field, cap: int = 10_000) -> int:
    """Additive order of x (exhaustive iteration)."""
    acc = x
    n = 1
    zero = witt_zero(x.p, len(x), field)
    while acc != zero:
        acc = witt_add(acc, x, field)
        n += 1
        if n > cap:
            raise ValidationError("order exceeds cap")
    return n


def frobenius_kernel_dim(p: int, h: int, length: int) -> int:
    """dim of the h-th Frobenius kernel's function ring on length-l Witt
    vectors: monomials x_0^{a_0}..x_{l-1}^{a_{l-1}} with a_i < p^h."""
    if h < 1 or length < 1:
        raise ValidationError("h and length must be >= 1")
    return p ** (h * length)


# --- matching the abelianized noncommutative Witt presentation ------------


@dataclass(frozen=True)
class WittMatch:
    """Substitution x_a -> images[a] identifying the two coproducts."""

    images: tuple[NcPoly, ...]


def _sorted_power(field: Field, gen_index: int, e: int) -> NcPoly:
    return NcPoly(field, {(gen_index,) * e: field.one}) if e else nc_one(field)


def _witt_coproduct_image(
    S: list[IntPoly], j: int, images, ab, field: Field
) -> TensorSquare:
    """S_j(x (x) 1, 1 (x) x) with x_a replaced by images[a], abelianized."""
    length = len(images)
    out = TensorSquare(field, {})
    for m, c in S[j].terms.items():
        left = nc_one(field)
        right = nc_one(field)
        for v, e in enumerate(m):
            if not e:
                continue
            img = images[v % length]
            for _ in range(e):
                if v < length:
                    left = left * img
                else:
                    right = right * img
        piece = tensor(ab.project(left), ab.project(right)).scale(
            field.scalar(int(c) % field.p)
        )
        out = out + piece
    return out


def match_witt_generators(
    length: int, p: int, field: Field, degree_bound: int
) -> WittMatch | None:
    """Search for substitutions making the Witt coproduct match the
    abelianized noncommutative Witt coproduct, degree by degree.

    Candidates are enumerated with undetermined coefficients over the weight
    graded monomials; the first exact match in deterministic order wins.
    """
    if length > 2:
        raise ValidationError("desk scale: length <= 2")
    if degree_bound < p ** (length - 1):
        raise ValidationError("degree bound too small")
    nwp = nw_presentation(length, p, field)
    ab = abelianize(nwp)
    S = witt_addition_polys(p, length)
    k = field
    units = [c for c in k.elements() if c != k.zero]
    if length == 1:
        for c in units:
            images = (nc_gen(k, 0).scale(c),)
            if _check_match(S, images, ab, k):
                return WittMatch(images)
        return None
    # x0 -> c.E1;  x1 -> a.Ep + b.E1^p  (the only weight-p monomials)
    for c in units:
        f0 = nc_gen(k, 0).scale(c)
        for a in units:
            for b in k.elements():
                f1 = nc_gen(k, 1).scale(a) + _sorted_power(k, 0, p).scale(b)
                images = (f0, f1)
                if _check_match(S, images, ab, k):
                    return WittMatch(images)
    return None


def _check_match(S, images, ab, field: Field) -> bool:
    for j, img in enumerate(images):
        lhs = ab.coproduct(img)
        rhs = _witt_coproduct_image(list(S), j, images, ab, field)
        if lhs != rhs:
            return False
    return True

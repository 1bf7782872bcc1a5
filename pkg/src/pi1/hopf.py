"""Sparse noncommutative polynomials and pointed-irreducible-cocommutative
Hopf algebra presentations.

A presentation lists generators with positive filtration weights and, for
each generator g, a correction list (c, u, v) so that

    Delta(g) = g (x) 1 + 1 (x) g + sum c . (u (x) v).

Well-foundedness (corrections only use strictly lower-weight generators)
makes the antipode recursion and subcoalgebra extraction terminate; it is
validated at construction together with the counit law and coassociativity
on generators.  Everything downstream (Verschiebung, abelianization, free
products) runs through the same coproduct code path.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import (
    FieldMismatch,
    IllFounded,
    InternalInconsistency,
    UnknownGenerator,
    ValidationError,
)
from .fields import Element, Field, solve_right

Word = tuple[int, ...]


@dataclass(frozen=True)
class NcPoly:
    """Finite word -> nonzero coefficient map; the empty word is 1."""

    field: Field
    terms: dict

    def __post_init__(self):
        z = self.field.zero
        for w, c in list(self.terms.items()):
            if c == z:
                del self.terms[w]

    def __add__(self, other: "NcPoly") -> "NcPoly":
        k = self.field
        out = dict(self.terms)
        for w, c in other.terms.items():
            _acc(out, w, c, k)
        return NcPoly(k, out)

    def __neg__(self) -> "NcPoly":
        k = self.field
        return NcPoly(k, {w: k.neg(c) for w, c in self.terms.items()})

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        return self + (-other)

    def __mul__(self, other: "NcPoly") -> "NcPoly":
        k = self.field
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                _acc(out, w1 + w2, k.mul(c1, c2), k)
        return NcPoly(k, out)

    def scale(self, c) -> "NcPoly":
        k = self.field
        if isinstance(c, int):
            c = k.scalar(c)
        return NcPoly(k, {w: k.mul(c, x) for w, x in self.terms.items()})

    def coeff(self, w: Word) -> Element:
        return self.terms.get(w, self.field.zero)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "NcPoly(0)"
        bits = [f"{c}:{'.'.join(map(str, w)) or '1'}" for w, c in sorted(self.terms.items())]
        return "NcPoly(" + " + ".join(bits) + ")"


def _acc(d: dict, key, c: Element, k: Field):
    cur = d.get(key)
    if cur is None:
        if c != k.zero:
            d[key] = c
        return
    s = k.add(cur, c)
    if s == k.zero:
        del d[key]
    else:
        d[key] = s


def nc_zero(field: Field) -> NcPoly:
    return NcPoly(field, {})


def nc_one(field: Field) -> NcPoly:
    return NcPoly(field, {(): field.one})


def nc_gen(field: Field, i: int) -> NcPoly:
    return NcPoly(field, {(i,): field.one})


def nc_poly(field: Field, terms: dict) -> NcPoly:
    out: dict = {}
    for w, c in terms.items():
        if isinstance(c, int):
            c = field.scalar(c)
        _acc(out, tuple(w), c, field)
    return NcPoly(field, out)


@dataclass(frozen=True)
class TensorSquare:
    """Element of H (x) H in the word-pair basis."""

    field: Field
    terms: dict  # (word, word) -> coefficient

    def __add__(self, other: "TensorSquare") -> "TensorSquare":
        k = self.field
        out = dict(self.terms)
        for key, c in other.terms.items():
            _acc(out, key, c, k)
        return TensorSquare(k, out)

    def __neg__(self) -> "TensorSquare":
        k = self.field
        return TensorSquare(k, {key: k.neg(c) for key, c in self.terms.items()})

    def __sub__(self, other: "TensorSquare") -> "TensorSquare":
        return self + (-other)

    def __mul__(self, other: "TensorSquare") -> "TensorSquare":
        k = self.field
        out: dict = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                _acc(out, (a1 + a2, b1 + b2), k.mul(c1, c2), k)
        return TensorSquare(k, out)

    def scale(self, c: Element) -> "TensorSquare":
        k = self.field
        return TensorSquare(k, {key: k.mul(c, x) for key, x in self.terms.items()})

    def swap(self) -> "TensorSquare":
        return TensorSquare(self.field, {(b, a): c for (a, b), c in self.terms.items()})

    @property
    def is_zero(self) -> bool:
        return not self.terms


def tensor(x: NcPoly, y: NcPoly) -> TensorSquare:
    k = x.field
    out: dict = {}
    for w1, c1 in x.terms.items():
        for w2, c2 in y.terms.items():
            _acc(out, (w1, w2), k.mul(c1, c2), k)
    return TensorSquare(k, out)


Correction = tuple[Element, NcPoly, NcPoly]


@dataclass(frozen=True, eq=False)
class HopfPresentation:
    field: Field
    names: tuple[str, ...]
    weights: tuple[int, ...]
    corrections: tuple[tuple[Correction, ...], ...]
    _gen_delta: dict = dc_field(default_factory=dict, repr=False)
    _antipode: dict = dc_field(default_factory=dict, repr=False)

    # caches are write-once per key: concurrent calls may duplicate work but
    # never observe an inconsistent value.

    @property
    def ngens(self) -> int:
        return len(self.names)

    def __eq__(self, other):
        return (
            isinstance(other, HopfPresentation)
            and self.field == other.field
            and self.names == other.names
            and self.weights == other.weights
            and self.corrections == other.corrections
        )

    def gen(self, i: int) -> NcPoly:
        return nc_gen(self.field, i)

    def one(self) -> NcPoly:
        return nc_one(self.field)

    def poly(self, terms: dict) -> NcPoly:
        return nc_poly(self.field, terms)

    def word_weight(self, w: Word) -> int:
        return sum(self.weights[i] for i in w)

    def word_key(self, w: Word):
        return (self.word_weight(w), w)

    def format_poly(self, x: NcPoly) -> str:
        if x.is_zero:
            return "0"
        bits = []
        for w in sorted(x.terms, key=self.word_key):
            c = x.terms[w]
            word = ".".join(self.names[i] for i in w) if w else "1"
            if self.field.n == 1:
                cointeger = c[0]
                bits.append(word if cointeger == 1 and w else (f"{cointeger}*{word}" if w else str(cointeger)))
            else:
                bits.append(f"{list(c)}*{word}")
        return " + ".join(bits)


def make_presentation(field: Field, generators, corrections) -> HopfPresentation:
    """Validated presentation.

    generators: list of (name, weight); corrections: per generator, a list of
    (coefficient, u, v) with u, v NcPoly over this presentation's indices.
    """
    names = tuple(n for n, _ in generators)
    weights = tuple(int(w) for _, w in generators)
    if any(w < 1 for w in weights):
        raise ValidationError("generator weights must be positive")
    fixed = []
    for gi, corr in enumerate(corrections):
        row = []
        for c, u, v in corr:
            if isinstance(c, int):
                c = field.scalar(c)
            row.append((c, u, v))
        fixed.append(tuple(row))
    while len(fixed) < len(names):
        fixed.append(())
    pres = HopfPresentation(field, names, weights, tuple(fixed))
    _validate(pres)
    return pres


def _validate(pres: HopfPresentation):
    k = pres.field
    for gi in range(pres.ngens):
        w_g = pres.weights[gi]
        for c, u, v in pres.corrections[gi]:
            for poly in (u, v):
                if poly.coeff(()) != k.zero:
                    raise ValidationError(
                        f"correction of {pres.names[gi]} has a constant term"
                    )
                for word in poly.terms:
                    for letter in word:
                        if letter >= pres.ngens:
                            raise UnknownGenerator(f"index {letter} out of range")
                        if pres.weights[letter] >= w_g:
                            raise IllFounded(
                                f"correction of {pres.names[gi]} (weight {w_g}) uses "
                                f"{pres.names[letter]} (weight {pres.weights[letter]})"
                            )
    for gi in range(pres.ngens):  # coassociativity on every generator
        d = coproduct(pres, pres.gen(gi))
        if _cube_left(pres, d) != _cube_right(pres, d):
            raise ValidationError(f"coproduct of {pres.names[gi]} is not coassociative")


def _delta_gen(pres: HopfPresentation, i: int) -> TensorSquare:
    cached = pres._gen_delta.get(i)
    if cached is not None:
        return cached
    k = pres.field
    out: dict = {((i,), ()): k.one, ((), (i,)): k.one}
    for c, u, v in pres.corrections[i]:
        for wu, cu in u.terms.items():
            for wv, cv in v.terms.items():
                _acc(out, (wu, wv), k.mul(c, k.mul(cu, cv)), k)
    t = TensorSquare(k, out)
    pres._gen_delta[i] = t
    return t


def _delta_word(pres: HopfPresentation, w: Word) -> TensorSquare:
    k = pres.field
    t = TensorSquare(k, {((), ()): k.one})
    for letter in w:
        t = t * _delta_gen(pres, letter)
    return t


def coproduct(pres: HopfPresentation, x: NcPoly) -> TensorSquare:
    """Delta extended multiplicatively from the generator table."""
    k = pres.field
    out = TensorSquare(k, {})
    for w, c in x.terms.items():
        for letter in w:
            if letter >= pres.ngens:
                raise UnknownGenerator(f"index {letter} out of range")
        out = out + _delta_word(pres, w).scale(c)
    return out


def counit(pres: HopfPresentation, x: NcPoly) -> Element:
    return x.coeff(())


def reduced_coproduct(pres: HopfPresentation, x: NcPoly) -> TensorSquare:
    """Delta(x) - x(x)1 - 1(x)x + eps(x) 1(x)1."""
    k = pres.field
    d = coproduct(pres, x)
    d = d - tensor(x, pres.one()) - tensor(pres.one(), x)
    e = counit(pres, x)
    if e != k.zero:
        d = d + TensorSquare(k, {((), ()): e})
    return d


def _antipode_gen(pres: HopfPresentation, i: int) -> NcPoly:
    cached = pres._antipode.get(i)
    if cached is not None:
        return cached
    # S(g) = -g - sum c . S(u) v, recursing into strictly lower weight
    out = -pres.gen(i)
    for c, u, v in pres.corrections[i]:
        out = out - (antipode(pres, u) * v).scale(c)
    pres._antipode[i] = out
    return out


def antipode(pres: HopfPresentation, x: NcPoly) -> NcPoly:
    """Anti-multiplicative extension: S(w1 w2) = S(w2) S(w1)."""
    k = pres.field
    out = nc_zero(k)
    for w, c in x.terms.items():
        term = pres.one()
        for letter in reversed(w):
            term = term * _antipode_gen(pres, letter)
        out = out + term.scale(c)
    return out


def _cube_left(pres, d: TensorSquare) -> dict:
    # (Delta (x) id) applied to d, as a word-triple dict
    k = pres.field
    out: dict = {}
    for (w1, w2), c in d.terms.items():
        for (a, b), e in _delta_word(pres, w1).terms.items():
            _acc(out, (a, b, w2), k.mul(c, e), k)
    return out


def _cube_right(pres, d: TensorSquare) -> dict:
    k = pres.field
    out: dict = {}
    for (w1, w2), c in d.terms.items():
        for (a, b), e in _delta_word(pres, w2).terms.items():
            _acc(out, (w1, a, b), k.mul(c, e), k)
    return out


def _mul_legs(pres, d: TensorSquare, left_antipode: bool | None) -> NcPoly:
    k = pres.field
    out = nc_zero(k)
    for (w1, w2), c in d.terms.items():
        if left_antipode is True:
            x = antipode(pres, NcPoly(k, {w1: k.one})) * NcPoly(k, {w2: k.one})
        elif left_antipode is False:
            x = NcPoly(k, {w1: k.one}) * antipode(pres, NcPoly(k, {w2: k.one}))
        else:
            x = NcPoly(k, {w1 + w2: k.one})
        out = out + x.scale(c)
    return out


def words_up_to_weight(pres: HopfPresentation, bound: int):
    """All words of total generator weight <= bound, deterministic order."""

    def rec(prefix: Word, remaining: int):
        yield prefix
        for i in range(pres.ngens):
            if pres.weights[i] <= remaining:
                yield from rec(prefix + (i,), remaining - pres.weights[i])

    yield from rec((), bound)


@dataclass
class AxiomReport:
    ok: bool
    checked_words: int
    failure_axiom: str | None = None
    witness: Word | None = None

    def __bool__(self):
        return self.ok


def check_axioms(pres: HopfPresentation, degree_bound: int) -> AxiomReport:
    """Verify the Hopf axioms on all words of weight <= degree_bound.

    Checks coassociativity, both counit laws, both antipode identities and
    cocommutativity; stops at the first failure and reports the witness.
    """
    k = pres.field
    count = 0
    for w in words_up_to_weight(pres, degree_bound):
        count += 1
        x = NcPoly(k, {w: k.one})
        d = coproduct(pres, x)
        if d.swap() != d:
            return AxiomReport(False, count, "cocommutativity", w)
        if _cube_left(pres, d) != _cube_right(pres, d):
            return AxiomReport(False, count, "coassociativity", w)
        left_counit = nc_zero(k)
        right_counit = nc_zero(k)
        for (w1, w2), c in d.terms.items():
            if not w1:
                left_counit = left_counit + NcPoly(k, {w2: c})
            if not w2:
                right_counit = right_counit + NcPoly(k, {w1: c})
        if left_counit != x or right_counit != x:
            return AxiomReport(False, count, "counit", w)
        eps = counit(pres, x)
        target = nc_one(k).scale(eps) if eps != k.zero else nc_zero(k)
        if _mul_legs(pres, d, True) != target:
            return AxiomReport(False, count, "antipode-left", w)
        if _mul_legs(pres, d, False) != target:
            return AxiomReport(False, count, "antipode-right", w)
    return AxiomReport(True, count)


# --- finite subcoalgebras and the Verschiebung ----------------------------


class _Span:
    """Sparse row-echelon span of polynomials, pivots in word order."""

    def __init__(self, pres: HopfPresentation):
        self.pres = pres
        self.k = pres.field
        self.rows: list[dict] = []
        self.pivots: list[Word] = []

    def reduce(self, terms: dict) -> dict:
        k = self.k
        rem = dict(terms)
        for row, pivot in zip(self.rows, self.pivots):
            c = rem.get(pivot)
            if c is not None:
                for w, x in row.items():
                    _acc(rem, w, k.neg(k.mul(c, x)), k)
        return rem

    def add(self, terms: dict) -> bool:
        k = self.k
        rem = self.reduce(terms)
        if not rem:
            return False
        pivot = min(rem, key=self.pres.word_key)
        inv = k.inv(rem[pivot])
        row = {w: k.mul(inv, c) for w, c in rem.items()}
        for other, opiv in zip(self.rows, self.pivots):
            c = other.get(pivot)
            if c is not None:
                for w, x in row.items():
                    _acc(other, w, k.neg(k.mul(c, x)), k)
        self.rows.append(row)
        self.pivots.append(pivot)
        return True


def finite_subcoalgebra(pres: HopfPresentation, x: NcPoly):
    """Smallest Delta-closed subspace containing 1 and x.

    Returns (basis, delta) where basis is a list of NcPoly starting with 1
    and delta[i][j][k] are the structure constants of Delta on it.  Closure
    adjoins grouped tensor legs of Delta of every member until stable;
    termination is guaranteed by well-foundedness and the weight grading.
    """
    k = pres.field
    members: list[NcPoly] = []
    span = _Span(pres)

    def adjoin(p: NcPoly) -> bool:
        if span.add(dict(p.terms)):
            members.append(p)
            return True
        return False

    adjoin(pres.one())
    adjoin(x)
    i = 0
    while i < len(members):
        d = coproduct(pres, members[i])
        by_right: dict = {}
        by_left: dict = {}
        for (w1, w2), c in d.terms.items():
            by_right.setdefault(w2, {})[w1] = c
            by_left.setdefault(w1, {})[w2] = c
        for w2 in sorted(by_right, key=pres.word_key):
            adjoin(NcPoly(k, dict(by_right[w2])))
        for w1 in sorted(by_left, key=pres.word_key):
            adjoin(NcPoly(k, dict(by_left[w1])))
        i += 1

    # express Delta of each member over basis (x) basis
    words = sorted({w for m in members for w in m.terms}, key=pres.word_key)
    widx = {w: t for t, w in enumerate(words)}
    cols = [[m.coeff(w) for m in members] for w in words]  # words x members

    def solve_coords(terms: dict):
        rhs = [terms.get(w, k.zero) for w in words]
        if any(w not in widx for w in terms):
            raise InternalInconsistency("leg outside the closed span")
        sol = solve_right(k, cols, rhs)
        if sol is None:
            raise InternalInconsistency("leg not expressible over the basis")
        return sol

    m = len(members)
    delta = [[[k.zero] * m for _ in range(m)] for _ in range(m)]
    for idx, member in enumerate(members):
        d = coproduct(pres, member)
        by_right: dict = {}
        for (w1, w2), c in d.terms.items():
            by_right.setdefault(w2, {})[w1] = c
        partial = [dict() for _ in range(m)]  # row j: word w2 -> coeff
        for w2, left in by_right.items():
            coords = solve_coords(left)
            for j in range(m):
                if coords[j] != k.zero:
                    partial[j][w2] = coords[j]
        for j in range(m):
            if partial[j]:
                coords = solve_coords(partial[j])
                for t in range(m):
                    delta[idx][j][t] = coords[t]
    return members, delta


def verschiebung(pres: HopfPresentation, x: NcPoly) -> NcPoly:
    """Semilinear transpose of the Frobenius of the dual algebra.

    Computes the finite subcoalgebra C of x, forms the p-th convolution
    power on C*, and pulls it back through the duality pairing; the result
    satisfies <Ver(x), lam> = <x, lam^p>^(1/p) on every functional of C.
    """
    k = pres.field
    p = k.p
    members, delta = finite_subcoalgebra(pres, x)
    m = len(members)

    def dual_mul(lam, mu):
        out = [k.zero] * m
        for i in range(m):
            di = delta[i]
            acc = k.zero
            for j in range(m):
                lj = lam[j]
                if lj == k.zero:
                    continue
                row = di[j]
                for t in range(m):
                    if mu[t] != k.zero and row[t] != k.zero:
                        acc = k.add(acc, k.mul(lj, k.mul(mu[t], row[t])))
            out[i] = acc
        return out

    frob = []  # frob[j][i]: coefficient of beta^i in (beta^j)^p
    for j in range(m):
        lam = [k.zero] * m
        lam[j] = k.one
        acc = lam
        for _ in range(p - 1):
            acc = dual_mul(acc, lam)
        frob.append(acc)

    # coordinates of x over the members
    words = sorted({w for mem in members for w in mem.terms}, key=pres.word_key)
    cols = [[mem.coeff(w) for mem in members] for w in words]
    xi = solve_right(k, cols, [x.coeff(w) for w in words])
    if xi is None:
        raise InternalInconsistency("x not in its own subcoalgebra")

    out = nc_zero(k)
    for j in range(m):
        acc = k.zero
        for i in range(m):
            if xi[i] != k.zero and frob[j][i] != k.zero:
                acc = k.add(acc, k.mul(xi[i], frob[j][i]))
        if acc != k.zero:
            out = out + members[j].scale(k.frobenius(acc, -1))
    return out


# --- abelianization and free products -------------------------------------


def sort_word(w: Word) -> Word:
    return tuple(sorted(w))


@dataclass(frozen=True)
class AbelianPresentation:
    """Quotient by commutators; words are kept in sorted canonical form."""

    base: HopfPresentation

    @property
    def field(self) -> Field:
        return self.base.field

    def project(self, x: NcPoly) -> NcPoly:
        k = self.field
        out: dict = {}
        for w, c in x.terms.items():
            _acc(out, sort_word(w), c, k)
        return NcPoly(k, out)

    def coproduct(self, x: NcPoly) -> TensorSquare:
        k = self.field
        out: dict = {}
        for (w1, w2), c in coproduct(self.base, x).terms.items():
            _acc(out, (sort_word(w1), sort_word(w2)), c, k)
        return TensorSquare(k, out)

    def mul(self, x: NcPoly, y: NcPoly) -> NcPoly:
        return self.project(x * y)

    @property
    def corrections(self):
        return tuple(
            tuple((c, self.project(u), self.project(v)) for c, u, v in row)
            for row in self.base.corrections
        )


def abelianize(pres: HopfPresentation) -> AbelianPresentation:
    return AbelianPresentation(pres)


def free_product(p1: HopfPresentation, p2: HopfPresentation) -> HopfPresentation:
    """Coproduct of presentations: disjoint generators, corrections verbatim."""
    if p1.field != p2.field:
        raise FieldMismatch("presentations over different fields")
    names = list(p1.names)
    for name in p2.names:
        while name in names:
            name += "'"
        names.append(name)
    offset = p1.ngens

    def shift(x: NcPoly) -> NcPoly:
        return NcPoly(
            p1.field, {tuple(i + offset for i in w): c for w, c in x.terms.items()}
        )

    corrections = [list(row) for row in p1.corrections]
    for row in p2.corrections:
        corrections.append([(c, shift(u), shift(v)) for c, u, v in row])
    return make_presentation(
        p1.field,
        list(zip(names, p1.weights + p2.weights)),
        corrections,
    )


# --- canonical JSON form ---------------------------------------------------


def _coeff_json(field: Field, c: Element):
    return c[0] if field.n == 1 else list(c)


def _poly_json(pres: HopfPresentation, x: NcPoly):
    return [
        [_coeff_json(pres.field, x.terms[w]), list(w)]
        for w in sorted(x.terms, key=pres.word_key)
    ]


def presentation_to_json(pres: HopfPresentation) -> dict:
    field_obj: dict = {"p": pres.field.p, "n": pres.field.n}
    if pres.field.modulus is not None:
        field_obj["modulus"] = list(pres.field.modulus)
    return {
        "field": field_obj,
        "generators": [
            {"name": n, "weight": w} for n, w in zip(pres.names, pres.weights)
        ],
        "corrections": [
            [
                [_coeff_json(pres.field, c), _poly_json(pres, u), _poly_json(pres, v)]
                for c, u, v in row
            ]
            for row in pres.corrections
        ],
    }

"""Dual coalgebra of a local algebra, the Verschiebung filtration, regular
bases by semilinear Jordan chains, and the decomposition multiset.

Everything is driven by one map: the transpose of Frobenius on m with a
p^-1 twist, acting on m*.  Its kernel filtration K_i determines, by the
closed formula 2 dim K_l - dim K_{l+1} - dim K_{l-1}, how many length-l
factors occur; the Jordan-chain construction recomputes the same multiset
independently and the two must agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalInconsistency
from .fields import Element, SemilinearMap, semilinear_power
from .hopf import HopfPresentation, make_presentation, nc_gen
from .localalgebra import LocalAlgebra, frobenius_power, height


@dataclass(frozen=True)
class DualCoalgebra:
    """A* = k.eta + m* with the transposed-multiplication comultiplication."""

    algebra: LocalAlgebra

    @property
    def dim(self) -> int:
        return self.algebra.dim_m + 1

    def delta_pairing(self, h: int, i: int, j: int) -> Element:
        """<Delta e_h, a_i (x) a_j> with index 0 reserved for eta / 1."""
        A = self.algebra
        k = A.field
        if h == 0:  # eta
            return k.one if (i == 0 and j == 0) else k.zero
        if i == 0 and j == 0:
            return k.zero
        if i == 0:
            return k.one if j == h else k.zero
        if j == 0:
            return k.one if i == h else k.zero
        return A.constants[i - 1][j - 1][h - 1]


def dual_coalgebra(A: LocalAlgebra) -> DualCoalgebra:
    return DualCoalgebra(A)


def ver_dual(A: LocalAlgebra) -> SemilinearMap:
    """Verschiebung on m*: transpose of Fr with a p^-1 twist.

    <Ver(e), a> = <e, a^p>^(1/p), so the matrix is the inverse-Frobenius
    image of the transposed Frobenius matrix (plain transpose over prime
    fields) with twist -1.
    """
    k = A.field
    fr = frobenius_power(A, 1)
    n = A.dim_m
    mat = tuple(
        tuple(k.frobenius(fr.matrix[j][i], -1) for j in range(n)) for i in range(n)
    )
    return SemilinearMap(k, mat, -1)


def filtration_dims(A: LocalAlgebra) -> list[int]:
    """d_i = dim Ker(Ver^i) on m* for i = 0..h+1 (d_h = dim m = d_{h+1})."""
    n = A.dim_m
    h = height(A)
    if n == 0:
        return [0, 0]
    ver = ver_dual(A)
    dims = [0]
    power = ver
    for i in range(1, h + 2):
        from .fields import semilinear_kernel

        rank_i, _ = semilinear_kernel(power)
        dims.append(n - rank_i)
        power = compose_next(power, ver)
    return dims


def compose_next(acc: SemilinearMap, step: SemilinearMap) -> SemilinearMap:
    from .fields import semilinear_compose

    return semilinear_compose(step, acc)


@dataclass(frozen=True)
class RegularBasis:
    """Verschiebung chains (b_0..b_r) with Ver(b_i) = b_{i-1}, Ver(b_0) = 0."""

    chains: tuple[tuple[tuple[Element, ...], ...], ...]

    def lengths(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.chains:
            out[len(c)] = out.get(len(c), 0) + 1
        return out


def regular_basis(A: LocalAlgebra) -> RegularBasis:
    """Jordan-chain basis of m* for the nilpotent semilinear Verschiebung.

    Standard nilpotent chain construction with deterministic pivoting:
    complete each kernel level from below, lowest coordinate first.
    """
    from .fields import rref, semilinear_kernel

    k = A.field
    n = A.dim_m
    if n == 0:
        return RegularBasis(())
    ver = ver_dual(A)
    h = height(A)
    kernels = []  # basis of K_i for i = 0..h
    power = ver
    kernels.append([])
    for i in range(1, h + 1):
        _, basis = semilinear_kernel(power)
        kernels.append(basis)
        power = compose_next(power, ver)

    tops: list[tuple[int, tuple[Element, ...]]] = []  # (level, vector)

    def span_rows(vectors):
        return rref(k, [list(v) for v in vectors])[0] if vectors else []

    for level in range(h, 0, -1):
        fixed = list(kernels[level - 1])
        for lv, top in tops:
            v = top
            for _ in range(lv - level):
                v = ver.apply(v)
            fixed.append(v)
        current = span_rows(fixed)
        for cand in kernels[level]:
            trial = span_rows([tuple(r) for r in current] + [cand])
            if len(trial) > len(current):
                tops.append((level, cand))
                current = trial
    chains = []
    for level, top in sorted(tops, key=lambda t: (-t[0], t[1])):
        chain = [top]
        v = top
        for _ in range(level - 1):
            v = ver.apply(v)
            chain.append(v)
        chain.reverse()
        chains.append(tuple(chain))
    total = [v for c in chains for v in c]
    if len(span_rows(total)) != n:
        raise InternalInconsistency("chains do not form a basis")
    return RegularBasis(tuple(chains))


@dataclass(frozen=True)
class SigmaDecomposition:
    """Multiset {length l -> count N_l >= 1} plus the algebra height."""

    counts: tuple[tuple[int, int], ...]  # sorted (length, count) pairs
    height: int

    def count_map(self) -> dict[int, int]:
        return dict(self.counts)

    def to_json(self) -> dict:
        return {
            "height": self.height,
            "factors": [{"length": l, "count": c} for l, c in self.counts],
        }


def decompose_sigma(A: LocalAlgebra) -> SigmaDecomposition:
    """counts[l] = 2 d_l - d_{l+1} - d_{l-1}, cross-checked against chains."""
    dims = filtration_dims(A)
    h = height(A)
    counts: dict[int, int] = {}
    for l in range(1, h + 1):
        c = 2 * dims[l] - dims[l + 1] - dims[l - 1]
        if c < 0:
            raise InternalInconsistency(f"negative count at length {l}")
        if c:
            counts[l] = c
    chain_counts = regular_basis(A).lengths()
    if chain_counts != counts:
        raise InternalInconsistency(
            f"formula counts {counts} disagree with chain counts {chain_counts}"
        )
    if sum(l * c for l, c in counts.items()) != A.dim_m:
        raise InternalInconsistency("counts do not add up to dim m")
    if h > 0 and counts.get(h, 0) < 1:
        raise InternalInconsistency("no factor of maximal length")
    return SigmaDecomposition(tuple(sorted(counts.items())), h)


def _m_power_columns(A: LocalAlgebra) -> list[list[int]]:
    """For each k >= 1, the coordinates that elements of m^k can touch."""
    from .fields import rref

    k = A.field
    n = A.dim_m
    out = []
    span = [tuple(k.one if a == b else k.zero for b in range(n)) for a in range(n)]
    while span:
        touched = sorted(
            {j for row in span for j in range(n) if row[j] != k.zero}
        )
        out.append(touched)
        nxt = []
        for i in range(n):
            for v in span:
                w = [k.zero] * n
                for j in range(n):
                    if v[j] != k.zero:
                        for t in range(n):
                            w[t] = k.add(w[t], k.mul(v[j], A.constants[i][j][t]))
                nxt.append(w)
        span = [tuple(r) for r in rref(k, nxt)[0]] if nxt else []
    return out


def h_a_presentation(A: LocalAlgebra) -> HopfPresentation:
    """Free algebra on the dual basis of m with transposed-constant
    corrections; weights are the coradical filtration levels."""
    k = A.field
    n = A.dim_m
    powers = _m_power_columns(A)

    def weight(hidx: int) -> int:
        w = 0
        for depth, touched in enumerate(powers, start=1):
            if hidx in touched:
                w = depth
        return w

    gens = [(f"e{h + 1}", weight(h)) for h in range(n)]
    corrections = []
    for h in range(n):
        row = []
        for i in range(n):
            for j in range(n):
                c = A.constants[i][j][h]
                if c != k.zero:
                    row.append((c, nc_gen(k, i), nc_gen(k, j)))
        corrections.append(row)
    return make_presentation(k, gens, corrections)

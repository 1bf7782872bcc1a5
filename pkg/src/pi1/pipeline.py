"""End-to-end pipeline: parse a pinching description, decompose every
modulus component, and assemble the amalgamated-product expression.

Input schema (strict, unknown keys rejected): a JSON object with keys
``p`` (int), optional ``n`` (int, default 1), optional ``modulus``
(coefficient list, low degree first), and ``branches`` — a nonempty array
of nonempty arrays of component objects.  Component kinds:

    {"kind": "point"}
    {"kind": "truncated_poly", "order": m+1}
    {"kind": "monomial_quotient", "vars": r, "ideal": [[e, ...], ...]}
    {"kind": "table", "dim": n, "constants": [[i, j, h, c], ...]}

The result is Zhat^(sum of (m_i - 1)) times the union of the per-component
factor multisets, rendered either as text or as canonical JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .errors import InputError, ParseError, Pi1Error, ValidationError
from .fields import Field, make_field
from .localalgebra import AlgebraSpec, LocalAlgebra, build
from .decomposition import SigmaDecomposition, decompose_sigma, filtration_dims


@dataclass(frozen=True)
class PinchingSpec:
    field: Field
    branches: tuple[tuple[LocalAlgebra, ...], ...]
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class ComponentReport:
    decomposition: SigmaDecomposition
    filtration: tuple[int, ...]


@dataclass(frozen=True)
class Pi1Expression:
    zhat_mult: int
    nw_counts: tuple[tuple[int, int], ...]  # sorted (length, count)
    per_branch: tuple[tuple[ComponentReport, ...], ...]


_COMPONENT_KEYS = {
    "point": {"kind"},
    "truncated_poly": {"kind", "order"},
    "monomial_quotient": {"kind", "vars", "ideal"},
    "table": {"kind", "dim", "constants"},
}


def _component_spec(obj: dict, where: str) -> AlgebraSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValidationError(f"{where}: component must be an object with a kind")
    kind = obj["kind"]
    allowed = _COMPONENT_KEYS.get(kind)
    if allowed is None:
        raise ValidationError(f"{where}: unknown kind {kind!r}")
    extra = set(obj) - allowed
    if extra:
        raise ValidationError(f"{where}: unknown keys {sorted(extra)}")
    if kind == "point":
        return AlgebraSpec("truncated_poly", order=1)
    if kind == "truncated_poly":
        order = obj.get("order")
        if not isinstance(order, int) or order < 1:
            raise ValidationError(f"{where}: order must be a positive integer")
        return AlgebraSpec("truncated_poly", order=order)
    if kind == "monomial_quotient":
        r = obj.get("vars")
        ideal = obj.get("ideal")
        if not isinstance(r, int) or not isinstance(ideal, list):
            raise ValidationError(f"{where}: vars must be int and ideal a list")
        return AlgebraSpec(
            "monomial_quotient",
            variables=r,
            ideal=tuple(tuple(int(e) for e in g) for g in ideal),
        )
    dim = obj.get("dim")
    constants = obj.get("constants", [])
    if not isinstance(dim, int) or not isinstance(constants, list):
        raise ValidationError(f"{where}: dim must be int and constants a list")
    rows = []
    for entry in constants:
        if not isinstance(entry, list) or len(entry) != 4:
            raise ValidationError(f"{where}: constants entries are [i, j, h, c]")
        i, j, h, c = entry
        rows.append((int(i), int(j), int(h), c if isinstance(c, (int, list)) else None))
        if rows[-1][3] is None:
            raise ValidationError(f"{where}: coefficient must be int or list")
    return AlgebraSpec("table", dim=dim, constants=tuple(rows))


def parse_spec(text: str) -> PinchingSpec:
    """Validated pinching description; all component algebras are built."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(data, dict):
        raise ValidationError("top level must be an object")
    extra = set(data) - {"p", "n", "modulus", "branches"}
    if extra:
        raise ValidationError(f"unknown top-level keys {sorted(extra)}")
    if "p" not in data or "branches" not in data:
        raise ValidationError("top level needs keys p and branches")
    try:
        field = make_field(
            data["p"], data.get("n", 1), tuple(data["modulus"]) if "modulus" in data else None
        )
    except InputError as e:
        raise ValidationError(f"field: {e}") from None
    branches_raw = data["branches"]
    if not isinstance(branches_raw, list) or not branches_raw:
        raise ValidationError("branches must be a nonempty array")
    branches = []
    warnings = []
    for bi, branch in enumerate(branches_raw, start=1):
        if not isinstance(branch, list) or not branch:
            raise ValidationError(f"branch {bi} must be a nonempty array")
        comps = []
        for ci, comp in enumerate(branch, start=1):
            where = f"branch {bi}, component {ci}"
            spec = _component_spec(comp, where)
            try:
                comps.append(build(spec, field))
            except InputError as e:
                raise ValidationError(f"{where}: {e}") from None
        if len(comps) == 1 and comps[0].dim_m == 0:
            warnings.append(
                f"branch {bi} is a single reduced point; the pinching is trivial there"
            )
        branches.append(tuple(comps))
    return PinchingSpec(field, tuple(branches), tuple(warnings))


def compute_pi1(spec: PinchingSpec) -> Pi1Expression:
    """Zhat multiplicity sum(m_i - 1) plus the union of component multisets."""
    zhat = 0
    counts: dict[int, int] = {}
    per_branch = []
    for branch in spec.branches:
        zhat += len(branch) - 1
        reports = []
        for A in branch:
            dec = decompose_sigma(A)
            for l, c in dec.counts:
                counts[l] = counts.get(l, 0) + c
            reports.append(ComponentReport(dec, tuple(filtration_dims(A))))
        per_branch.append(tuple(reports))
    return Pi1Expression(zhat, tuple(sorted(counts.items())), tuple(per_branch))


def render(expr: Pi1Expression, format: str = "text") -> str:
    """Stable text or JSON form; factors sorted, Zhat first."""
    if format == "text":
        bits = []
        if expr.zhat_mult == 1:
            bits.append("Zhat")
        elif expr.zhat_mult > 1:
            bits.append(f"Zhat^*{expr.zhat_mult}")
        for l, c in expr.nw_counts:
            bits.append(f"NW({l})" if c == 1 else f"NW({l})^*{c}")
        return " * ".join(bits) if bits else "1"
    if format == "json":
        obj = {
            "pi1": {
                "zhat": expr.zhat_mult,
                "nw": [{"length": l, "count": c} for l, c in expr.nw_counts],
            },
            # branches and components are sorted canonically so the output
            # is byte-identical under input permutation
            "branches": sorted(
                (
                    {
                        "components": sorted(
                            (
                                {
                                    "height": rep.decomposition.height,
                                    "factors": rep.decomposition.to_json()["factors"],
                                    "filtration": list(rep.filtration),
                                }
                                for rep in branch
                            ),
                            key=lambda c: json.dumps(c, sort_keys=True),
                        )
                    }
                    for branch in expr.per_branch
                ),
                key=lambda b: json.dumps(b, sort_keys=True),
            ),
        }
        return json.dumps(obj, indent=2, sort_keys=True) + "\n"
    raise ValidationError(f"unknown format {format!r}")


# --- cross-oracle invariant suite ------------------------------------------


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def self_check() -> list[CheckResult]:
    """Fast cross-oracle suite spanning every module; deterministic."""
    from . import curves, decomposition, hopf, localalgebra, witt
    from .fields import make_field as mf

    results: list[CheckResult] = []

    def run(name, fn):
        try:
            ok, detail = fn()
        except Pi1Error as e:
            ok, detail = False, str(e)
        results.append(CheckResult(name, ok, detail))

    f2 = mf(2)
    f3 = mf(3)

    def hopf_axioms():
        for pres, bound in (
            (curves.leibniz_presentation(4, f2), 4),
            (curves.leibniz_presentation(3, f3), 3),
            (decomposition.h_a_presentation(
                localalgebra.build(AlgebraSpec("truncated_poly", order=4), f2)
            ), 4),
        ):
            rep = hopf.check_axioms(pres, bound)
            if not rep.ok:
                return False, f"{rep.failure_axiom} at {rep.witness}"
        return True, ""

    run("hopf-axioms", hopf_axioms)

    def minimal_curves():
        for p, field, N in ((2, f2, 4), (3, f3, 3)):
            c = curves.minimal_curve(p, N, field)
            if not curves.is_curve(c.presentation, c.elements):
                return False, f"curve identity fails for p={p}"
            for i in range(1, N + 1):
                if not curves.in_power_subalgebra(p, c, i):
                    return False, f"minimality fails at E_{i}, p={p}"
        return True, ""

    run("minimal-curve", minimal_curves)

    def verschiebung_law():
        Z = curves.leibniz_presentation(6, f2)
        for h in range(1, 7):
            v = hopf.verschiebung(Z, Z.gen(h - 1))
            want = Z.poly({(h // 2 - 1,): 1}) if h % 2 == 0 else Z.poly({})
            if v != want:
                return False, f"Ver(Z_{h})"
        return True, ""

    run("verschiebung-oracle", verschiebung_law)

    def heights():
        import math

        for p, field in ((2, f2), (3, f3)):
            for m in range(1, 13):
                A = localalgebra.build(AlgebraSpec("truncated_poly", order=m + 1), field)
                if localalgebra.height(A) != math.ceil(math.log(m + 1, p)):
                    return False, f"height of k[t]/(t^{m + 1}), p={p}"
        return True, ""

    run("height-law", heights)

    def decomposition_oracles():
        for p, field in ((2, f2), (3, f3)):
            for m in range(1, 13):
                A = localalgebra.build(AlgebraSpec("truncated_poly", order=m + 1), field)
                dec = decompose_sigma(A)  # internally cross-checks chains
                got = dec.count_map()
                want = {
                    l: m // p ** (l + 1) + m // p ** (l - 1) - 2 * (m // p**l)
                    for l in range(1, dec.height + 1)
                }
                want = {l: c for l, c in want.items() if c}
                if got != want:
                    return False, f"floor oracle fails at m={m}, p={p}"
        return True, ""

    run("decomposition-formula", decomposition_oracles)

    def witt_suite():
        S = witt.witt_addition_polys(2, 2)
        if S[1].render(2) != "y1 + x1 - x0*y0":
            return False, "S_1 for p=2 corrupted"
        x = witt.witt_vector(2, f2, [1, 0])
        if witt.witt_add(x, x, f2).components != ((0,), (1,)):
            return False, "witt-addition: (1,0)+(1,0) != (0,1)"
        if witt.witt_order(x, f2) != 4:
            return False, "witt-order: (1,0) must have order 4"
        els = [witt.witt_vector(2, f2, [a, b]) for a in (0, 1) for b in (0, 1)]
        for a in els:
            for b in els:
                for c in els:
                    lhs = witt.witt_add(witt.witt_add(a, b, f2), c, f2)
                    rhs = witt.witt_add(a, witt.witt_add(b, c, f2), f2)
                    if lhs != rhs:
                        return False, "witt-associativity"
        for h in range(1, 4):
            for l in range(1, 4):
                if witt.frobenius_kernel_dim(2, h, l) != witt.frobenius_kernel_dim(2, l, h):
                    return False, "witt-kernel-symmetry"
        return True, ""

    run("witt-suite", witt_suite)

    def witt_match():
        m = witt.match_witt_generators(2, 2, f2, 4)
        if m is None:
            return False, "no substitution found for length 2, p=2"
        want = (hopf.nc_gen(f2, 0), hopf.nc_gen(f2, 1))
        if m.images != want:
            return False, "canonical substitution not accepted"
        return True, ""

    run("witt-generator-match", witt_match)

    def pipeline_fixtures():
        cases = [
            ('{"p":2,"branches":[[{"kind":"point"},{"kind":"point"}]]}', "Zhat"),
            ('{"p":2,"branches":[[{"kind":"truncated_poly","order":2}]]}', "NW(1)"),
            ('{"p":2,"branches":[[{"kind":"truncated_poly","order":4}]]}', "NW(1) * NW(2)"),
            (
                '{"p":2,"branches":[[{"kind":"point"},{"kind":"point"}],'
                '[{"kind":"truncated_poly","order":2}]]}',
                "Zhat * NW(1)",
            ),
        ]
        for text, want in cases:
            got = render(compute_pi1(parse_spec(text)))
            if got != want:
                return False, f"{want!r} came out as {got!r}"
        return True, ""

    run("pipeline-fixtures", pipeline_fixtures)

    return results

"""Generating polynomials, identity checks and inequality reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Any, Sequence

from .cells import (BigradedBettiTable, bigraded_betti, build_complex_for,
                    build_wk_complex, build_zk_rel_torus)
from .complex import ManifoldStatus, SimplicialComplex, fmt_set, manifold_status, vertices_of
from .koszul import FundamentalClassError, betti_table, fundamental_class

SPACES = ("zk", "wk", "zk-rel-torus")


# ---------------------------------------------------------------------------
# polynomials in x = t^2

def _trim(c: list[int]) -> list[int]:
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_add(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return out


def one_minus_x_pow(k: int) -> list[int]:
    """Coefficients of (1 - x)^k."""
    return [(-1) ** i * comb(k, i) for i in range(k + 1)]


@dataclass(frozen=True)
class EulerPolynomial:
    """sum_p chi_p t^(2p); ``coeffs[p]`` is chi_p."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Sequence[int]):
        object.__setattr__(self, "coeffs", tuple(_trim(list(coeffs) or [0])))

    def at_one(self) -> int:
        return sum(self.coeffs)

    def __sub__(self, other: EulerPolynomial) -> EulerPolynomial:
        return EulerPolynomial(poly_add(self.coeffs, [-c for c in other.coeffs]))

    def __str__(self) -> str:
        terms = []
        for p, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            if p == 0:
                body = str(mag)
            else:
                power = "t^2" if p == 1 else f"t^{2 * p}"
                body = power if mag == 1 else f"{mag}{power}"
            if not terms:
                terms.append(("-" if c < 0 else "") + body)
            else:
                terms.append(("- " if c < 0 else "+ ") + body)
        return " ".join(terms) or "0"


def euler_poly_direct(space: str, K: SimplicialComplex, max_m: int | None = None) -> EulerPolynomial:
    """chi_p as alternating sums of component dimensions of the cell complex."""
    C = build_complex_for(space, K, max_m)
    coeffs = [0] * (K.m + 1)
    for (r, s), dim in C.dims().items():
        coeffs[s // 2] += (-1) ** (r % 2) * dim
    return EulerPolynomial(coeffs)


def euler_poly_closed(space: str, K: SimplicialComplex) -> EulerPolynomial:
    """Closed forms in terms of the h-vector and Euler number of K."""
    if space not in SPACES:
        raise ValueError(f"unknown space {space!r}")
    m, n = K.m, K.n
    base = poly_mul(one_minus_x_pow(m - n), K.h_vector())
    if space == "zk":
        return EulerPolynomial(base)
    if space == "zk-rel-torus":
        return EulerPolynomial(poly_add(base, [-c for c in one_minus_x_pow(m)]))
    chi = K.euler_number()
    return EulerPolynomial(poly_add(base, [(chi - 1) * c for c in one_minus_x_pow(m)]))


# ---------------------------------------------------------------------------
# verification

@dataclass
class Check:
    check: str
    status: str  # pass | fail | skipped
    lhs: Any = None
    rhs: Any = None
    citation: str = ""

    def as_dict(self) -> dict:
        return {"check": self.check, "status": self.status, "lhs": self.lhs,
                "rhs": self.rhs, "citation": self.citation}


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, lhs, rhs, citation: str = "") -> Check:
        c = Check(name, "pass" if lhs == rhs else "fail", _jsonable(lhs), _jsonable(rhs), citation)
        self.checks.append(c)
        return c

    def skip(self, name: str, reason: str) -> None:
        self.checks.append(Check(name, "skipped", citation=reason))

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.check == name:
                return c
        raise KeyError(name)

    def names(self) -> list[str]:
        return [c.check for c in self.checks]

    def to_json(self) -> list[dict]:
        return [c.as_dict() for c in self.checks]

    def format(self) -> str:
        width = max((len(c.check) for c in self.checks), default=0)
        lines = []
        for c in self.checks:
            line = f"{c.status.upper():7} {c.check.ljust(width)}"
            if c.status == "fail":
                line += f"  lhs={c.lhs} rhs={c.rhs}"
            elif c.status == "skipped":
                line += f"  ({c.citation})"
            lines.append(line)
        return "\n".join(lines)


def _jsonable(x):
    if isinstance(x, EulerPolynomial):
        return list(x.coeffs)
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {(",".join(map(str, k)) if isinstance(k, tuple) else str(k)): _jsonable(v)
                for k, v in x.items()}
    if isinstance(x, list):
        return [_jsonable(v) for v in x]
    return x


def duality_defects(table: BigradedBettiTable, m: int, n: int,
                    other: BigradedBettiTable | None = None) -> dict:
    """Bidegrees where b(r, s) differs from partner b(-(m-n) - r, 2m - s).

    With ``other`` the partner value is read from ``other`` (relative duality).
    """
    other = table if other is None else other
    keys = set(table.values) | {(-(m - n) - r, 2 * m - s) for r, s in other.values}
    out = {}
    for r, s in sorted(keys):
        a, b = table[(r, s)], other[(-(m - n) - r, 2 * m - s)]
        if a != b:
            out[r, s] = (a, b)
    return out


def strip_violations(table: BigradedBettiTable, m: int, n: int) -> dict:
    """Non-zero entries outside the sphere strip, other than b_{-(m-n),2m} = 1."""
    out = {}
    top = (-(m - n), 2 * m)
    for (r, s), v in table.items():
        q, p = -r, s // 2
        if (r, s) == top:
            if v != 1:
                out[r, s] = v
        elif q >= m - n or p - q >= n:
            out[r, s] = v
    if table[top] != 1:
        out[top] = table[top]
    return out


def ds_manifold_sides(h: Sequence[int], chi: int) -> tuple[list[int], list[int]]:
    n = len(h) - 1
    chi_sphere = 1 + (-1) ** ((n - 1) % 2)
    lhs = [h[n - i] - h[i] for i in range(n + 1)]
    rhs = [(-1) ** i * (chi - chi_sphere) * comb(n, i) for i in range(n + 1)]
    return lhs, rhs


def klee_sides(f: Sequence[int]) -> tuple[list[int], list[int]]:
    """f_k versus sum_{j>=k} (-1)^(n-1-j) C(j+1, k+1) f_j."""
    n = len(f)
    rhs = [sum((-1) ** ((n - 1 - j) % 2) * comb(j + 1, k + 1) * f[j] for j in range(k, n))
           for k in range(n)]
    return list(f), rhs


def verify_identities(K: SimplicialComplex, status: ManifoldStatus | None = None, *,
                      sphere: bool = False, manifold: bool = False,
                      orientable: bool = False, jobs: int = 1,
                      max_m: int | None = None) -> VerificationReport:
    """Run every identity whose hypotheses are satisfied or attested.

    ``sphere`` implies ``manifold`` and ``orientable``.  Hypothesis-dependent
    checks run only under attestation; the manifold status is reported as a
    precondition check next to them.
    """
    K.require_proper()
    if status is None:
        status = manifold_status(K, attested=manifold or sphere)
    manifold = manifold or sphere
    orientable = orientable or sphere
    rep = VerificationReport()
    m, n = K.m, K.n
    h, f = K.h_vector(), K.f_vector()

    for space in SPACES:
        rep.add(f"euler-poly-{space}", euler_poly_direct(space, K, max_m),
                euler_poly_closed(space, K), "generating polynomial closed form")
    rep.add("euler-zero", euler_poly_direct("zk", K, max_m).at_one(), 0,
            "chi(Z_K) = 0")

    table = betti_table(K, "cellular", jobs, max_m) if (sphere or manifold) else None

    if sphere:
        rep.add("sphere-precondition", status.is_closed_pseudomanifold and
                status.is_strongly_connected, True, "closed strongly connected pseudomanifold")
        rep.add("ds-sphere", list(h), list(reversed(h)), "h_i = h_{n-i}")
        rep.add("duality", duality_defects(table, m, n), {}, "bigraded Poincare duality")
        rep.add("strip-pattern", strip_violations(table, m, n), {}, "sphere strip pattern")
    else:
        for name in ("ds-sphere", "duality", "strip-pattern"):
            rep.skip(name, "sphere not attested")

    if manifold:
        chi = K.euler_number()
        rep.add("manifold-precondition", status.is_closed_pseudomanifold, True,
                "closed pseudomanifold")
        lhs, rhs = ds_manifold_sides(h, chi)
        rep.add("ds-manifold", lhs, rhs, "h_{n-i} - h_i = (-1)^i (chi(K) - chi(S^{n-1})) C(n,i)")
        rep.add("ds-manifold-hn", lhs,
                [(-1) ** i * (h[n] - 1) * comb(n, i) for i in range(n + 1)],
                "h_{n-i} - h_i = (-1)^i (h_n - 1) C(n,i)")
        rep.add("ds-klee", *klee_sides(f), "f_k = sum_j (-1)^(n-1-j) C(j+1,k+1) f_j")
    else:
        for name in ("ds-manifold", "ds-manifold-hn", "ds-klee"):
            rep.skip(name, "manifold not attested")

    if manifold and orientable:
        rep.add("orientable-precondition", status.is_orientable, True, "orientable")
        rep.add("top-class", table[(-(m - n), 2 * m)], 1, "b_{-(m-n),2m}(Z_K) = 1")
        try:
            fc = fundamental_class(K, max_m)
            rep.add("fundamental-class", list(fc.bidegree), [-(m - n), 2 * m],
                    f"representative {fc.monomial}")
        except FundamentalClassError as exc:
            rep.add("fundamental-class", str(exc), "ok", "fundamental class")
        W = bigraded_betti(build_wk_complex(K, max_m), jobs)
        R = bigraded_betti(build_zk_rel_torus(K, max_m), jobs)
        rep.add("relative-duality", duality_defects(W, m, n, R), {},
                "b_{-q,2p}(W_K) = b_{-(m-n)+q,2(m-p)}(Z_K, T^m)")
    else:
        rep.skip("relative-duality", "orientable manifold not attested")

    # the slack identities assume every vertex of [m] is used
    if (sphere or manifold) and not K.ghost_vertices:
        glb = glb_report(K, table)
        rep.add("glb-h12", glb["h12"]["h_slack"], glb["h12"]["betti_slack"],
                "h_2 - h_1 = C(m-n,2) - b_3(Z_K)")
        rep.add("glb-h23", glb["h23"]["h_slack"], glb["h23"]["betti_slack"],
                "h_3 - h_2 = C(m-n+1,3) - (m-n-1) b_{-1,4} + b_{-2,6} - b_{-1,6}")
    else:
        for name in ("glb-h12", "glb-h23"):
            rep.skip(name, "sphere or manifold not attested" if not (sphere or manifold)
                     else "ghost vertices present")
    return rep


# ---------------------------------------------------------------------------
# inequalities and arrangements

def glb_report(K: SimplicialComplex, table: BigradedBettiTable | None = None) -> dict:
    """The first two GLB inequalities on the h-side and the Betti side.

    Both sides are reported as slacks (h_2 - h_1 against C(m-n,2) - b_3,
    and h_3 - h_2 against the bigraded expression); equal slacks make the
    two formulations equivalent on this K.
    """
    if table is None:
        table = betti_table(K)
    m, n = K.m, K.n
    h = list(K.h_vector()) + [0, 0, 0]
    b3 = table[(-1, 4)]
    h12_h = h[2] - h[1]
    h12_b = comb(m - n, 2) - b3
    h23_h = h[3] - h[2]
    h23_b = comb(m - n + 1, 3) - (m - n - 1) * table[(-1, 4)] + table[(-2, 6)] - table[(-1, 6)]
    return {
        "h": list(K.h_vector()),
        "h12": {"h_side": h[1] <= h[2], "betti_side": b3 <= comb(m - n, 2),
                "h_slack": h12_h, "betti_slack": h12_b, "b3": b3,
                "equivalent": (h[1] <= h[2]) == (b3 <= comb(m - n, 2)),
                "applies": n >= 4},
        "h23": {"h_side": h[2] <= h[3], "betti_side": h23_b >= 0,
                "h_slack": h23_h, "betti_slack": h23_b,
                "equivalent": (h[2] <= h[3]) == (h23_b >= 0),
                "applies": n >= 6},
        "higher": {f"h{i}<=h{i + 1}": h[i] <= h[i + 1] for i in range(3, n // 2)},
    }


def arrangement_descriptor(K: SimplicialComplex, table: BigradedBettiTable | None = None) -> dict:
    """Maximal planes of the coordinate arrangement and the complement's Betti numbers."""
    K.require_proper()
    if table is None:
        table = betti_table(K)
    planes = []
    for s in K.minimal_nonfaces():
        zeros = [f"z{v}" for v in vertices_of(s)]
        planes.append({"nonface": fmt_set(s), "equations": " = ".join(zeros) + " = 0",
                       "complex_dimension": K.m - len(zeros),
                       "complex_codimension": len(zeros)})
    ordinary = table.ordinary()
    return {
        "m": K.m,
        "planes": planes,
        "betti": ordinary,
        "euler": sum((-1) ** k * b for k, b in enumerate(ordinary)),
    }

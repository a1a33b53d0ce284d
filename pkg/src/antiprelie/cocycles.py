"""Deformation (Z^2) machinery: the four Step-1 conditions, their exact
linear part, exhaustive finite-field search, symbolic family membership,
and the automorphism action on deformations.

The four conditions on a candidate second product phi over a fixed base
product are: (i)-(ii) phi is itself anti-pre-Lie, (iii)-(iv) the mixed
compatibility conditions with the base.  (i)-(ii) are quadratic in phi,
(iii)-(iv) are linear, so the solver pairs an exact nullspace stage with
exhaustive enumeration instead of general polynomial solving.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product as iproduct

import numpy as np

from .algebra import (Algebra, AlgebraPair, CheckReport, make_report,
                      anti_pre_lie_residuals, mixed_pair_residuals)
from .errors import (BudgetExceededError, FieldMismatchError,
                     NotInvertibleError, PreconditionError,
                     ShapeMismatchError)
from .linalg import Matrix
from .scalars import GF, Field

DEFAULT_BUDGET = 10 ** 8

_STEP1_NAMES = {"anti_pre_lie_1": "step1_i", "anti_pre_lie_2": "step1_ii",
                "compatible_mixed_1": "step1_iii",
                "compatible_mixed_2": "step1_iv"}


@dataclass(frozen=True)
class Deformation:
    """A fixed base product together with a candidate second product phi."""

    base: Algebra
    phi: Algebra

    def __post_init__(self):
        if self.base.field != self.phi.field:
            raise FieldMismatchError("base and phi over different fields")
        if self.base.dim != self.phi.dim or self.base.basis != self.phi.basis:
            raise ShapeMismatchError("base and phi on different bases")

    def flat(self):
        """Entries of phi in row-major (i, j, k) order."""
        n = self.base.dim
        return tuple(self.phi.sc[i][j][k]
                     for i, j, k in iproduct(range(n), repeat=3))


def check_step1_conditions(d: Deformation) -> CheckReport:
    """All four conditions on all basis triples; exact over any field."""
    failures = []
    for name, idx, vec in anti_pre_lie_residuals(d.phi):
        if any(not x.is_zero() for x in vec):
            failures.append((_STEP1_NAMES[name], idx, vec))
    for name, idx, vec in mixed_pair_residuals(AlgebraPair(d.base, d.phi)):
        if any(not x.is_zero() for x in vec):
            failures.append((_STEP1_NAMES[name], idx, vec))
    return make_report(failures)


def _elementary_tables(field, dim):
    """The n^3 elementary phi tables, in row-major flattening order."""
    out = []
    for i, j, k in iproduct(range(dim), repeat=3):
        out.append(Algebra.from_entries(field, dim,
                                        [(i + 1, j + 1, k + 1, 1)]))
    return out


def _linear_rows(A: Algebra):
    """Coefficient matrix of conditions iii-iv in the n^3 phi unknowns.

    Conditions iii-iv are linear in phi for a fixed base, so column a is
    the residual vector of the a-th elementary table.
    """
    elems = _elementary_tables(A.field, A.dim)
    cols = []
    for E in elems:
        comps = []
        for _, _, vec in mixed_pair_residuals(AlgebraPair(A, E)):
            comps.extend(vec)
        cols.append(comps)
    rows = [[cols[a][r] for a in range(len(cols))]
            for r in range(len(cols[0]))]
    return Matrix(A.field, rows)


def linear_space(A: Algebra):
    """Exact nullspace basis of conditions iii-iv, as a list of phi tables.

    Every Step-1 solution lies in the span of the returned basis.
    """
    if A.field.kind not in ("Q", "GF"):
        raise FieldMismatchError("linear_space needs Q or GF(p) coefficients")
    system = _linear_rows(A)
    n = A.dim
    basis = []
    for vec in system.nullspace():
        sc = [[[vec[(i * n + j) * n + k] for k in range(n)]
               for j in range(n)] for i in range(n)]
        basis.append(Algebra(A.field, n, sc, A.basis))
    return basis


def _quadratic_coefficients(A: Algebra, p: int):
    """Integer tables (L, Q, nq) describing the Step-1 residuals mod p.

    Linear part: residual_c(phi) = sum_a L[c][a] phi_a for iii-iv.
    Quadratic part (i-ii, no linear terms): residual_c(phi) =
    sum_{a<=b} Q[(a,b)][c] phi_a phi_b, built by polarization.
    """
    field = A.field
    n = A.dim
    n3 = n ** 3
    elems = _elementary_tables(field, n)

    def quad_residuals(phi):
        comps = []
        for _, _, vec in anti_pre_lie_residuals(phi):
            comps.extend(int(x.value) for x in vec)
        return np.array(comps, dtype=np.int64)

    def lin_residuals(phi):
        comps = []
        for _, _, vec in mixed_pair_residuals(AlgebraPair(A, phi)):
            comps.extend(int(x.value) for x in vec)
        return np.array(comps, dtype=np.int64)

    L = np.stack([lin_residuals(E) for E in elems]) % p  # (n3, n_lin)
    singles = [quad_residuals(E) for E in elems]
    nq = singles[0].shape[0]
    Q = {}
    for a in range(n3):
        if singles[a].any():
            Q[(a, a)] = singles[a] % p
    for a in range(n3):
        for b in range(a + 1, n3):
            sum_table = Algebra(field, n, [[[
                elems[a].sc[i][j][k] + elems[b].sc[i][j][k]
                for k in range(n)] for j in range(n)] for i in range(n)])
            cross = (quad_residuals(sum_table) - singles[a] - singles[b]) % p
            if cross.any():
                Q[(a, b)] = cross
    return L, Q, nq


def _decode(start, stop, p, n3):
    idx = np.arange(start, stop, dtype=np.int64)
    digits = np.empty((idx.shape[0], n3), dtype=np.int64)
    for a in range(n3):
        digits[:, a] = (idx // (p ** (n3 - 1 - a))) % p
    return digits


def _scan_chunk(args):
    start, stop, p, n3, L, Q, nq = args
    E = _decode(start, stop, p, n3)
    ok = ~((E @ L) % p).any(axis=1)
    S = E[ok]
    if S.shape[0] == 0:
        return S
    acc = np.zeros((S.shape[0], nq), dtype=np.int64)
    for (a, b), coef in Q.items():
        prod = S[:, a] * S[:, b]
        acc += prod[:, None] * coef[None, :]
    good = ~(acc % p).any(axis=1)
    return S[good]


def worker_count(requested=None) -> int:
    """Effective worker count; the APL_WORKERS variable overrides any
    requested value."""
    env = os.environ.get("APL_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    if requested is not None:
        return max(1, int(requested))
    return 1


def brute_force_Z2(A: Algebra, budget: int = DEFAULT_BUDGET,
                   workers=None, chunk: int = 1 << 19):
    """Exhaustively enumerate all phi over GF(p) passing the four Step-1
    conditions, in lexicographic order of the flattened table.

    Every candidate is tested against all four conditions (the linear
    iii-iv residuals first, the quadratic i-ii residuals on survivors);
    the output is therefore closed under the checks by construction.
    """
    if A.field.kind != "GF":
        raise FieldMismatchError("brute force runs over GF(p)")
    p = A.field.p
    n = A.dim
    n3 = n ** 3
    total = p ** n3
    if total > budget:
        raise BudgetExceededError(
            f"{p}^{n3} = {total} exceeds the budget of {budget}")
    L, Q, nq = _quadratic_coefficients(A, p)
    Lm = L  # (n3, n_lin): E @ L gives residuals
    bounds = [(s, min(s + chunk, total)) for s in range(0, total, chunk)]
    jobs = [(s, t, p, n3, Lm, Q, nq) for s, t in bounds]
    nw = worker_count(workers)
    if nw > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=nw) as pool:
            parts = list(pool.map(_scan_chunk, jobs))
    else:
        parts = [_scan_chunk(j) for j in jobs]
    field = A.field
    out = []
    for part in parts:
        for row in part:
            sc = [[[field.scalar(int(row[(i * n + j) * n + k]))
                    for k in range(n)] for j in range(n)] for i in range(n)]
            out.append(Deformation(A, Algebra(field, n, sc, A.basis)))
    return out


def instantiate_family_gf(fam: Algebra, p: int):
    """All GF(p) members of a polynomially parameterized phi family.

    Returns a set of flattened entry tuples (ints mod p).  Parameters run
    over all of GF(p); entries are reduced mod p.
    """
    if fam.field.kind != "poly":
        raise FieldMismatchError("family must have polynomial entries")
    names = fam.field.variables
    n = fam.dim
    members = set()
    for values in iproduct(range(p), repeat=len(names)):
        assign = dict(zip(names, values))
        # unit variables cannot take the value 0
        if any(v in fam.field.units and q == 0 for v, q in assign.items()):
            continue
        flat = []
        ok = True
        for i, j, k in iproduct(range(n), repeat=3):
            val = fam.sc[i][j][k].eval_at(assign)
            if val.value.denominator % p == 0:
                ok = False
                break
            flat.append(int(GF(p).scalar(val.value).value))
        if ok:
            members.add(tuple(flat))
    return members


def verify_family_membership(A: Algebra, fam: Algebra) -> CheckReport:
    """Symbolic Step-1 check of a parameterized family: zero residual
    polynomials in the family parameters (and any base parameters)."""
    avars = A.field.variables if A.field.kind == "poly" else ()
    aunits = A.field.units if A.field.kind == "poly" else frozenset()
    fvars = fam.field.variables if fam.field.kind == "poly" else ()
    funits = fam.field.units if fam.field.kind == "poly" else frozenset()
    if A.field.kind == "GF" or fam.field.kind == "GF":
        if A.field != fam.field:
            raise FieldMismatchError("mixed GF and symbolic coefficients")
        ring = A.field
    else:
        merged = list(avars) + [v for v in fvars if v not in avars]
        ring = Field("poly", variables=merged, units=aunits | funits)
    from .algebra import cast_algebra
    base = cast_algebra(A, ring)
    phi = cast_algebra(fam, ring)
    phi = Algebra(ring, base.dim, phi.sc, base.basis)
    return check_step1_conditions(Deformation(base, phi))


def is_automorphism(theta: Matrix, A: Algebra) -> bool:
    """theta(e_i * e_j) = theta(e_i) * theta(e_j) on all basis pairs."""
    from .algebra import multiply
    if (theta.rows, theta.cols) != (A.dim, A.dim):
        raise ShapeMismatchError("automorphism must be square of dim")
    n = A.dim
    e = [A.basis_vector(i) for i in range(n)]
    cols = [theta.apply(e[j]) for j in range(n)]
    for i in range(n):
        for j in range(n):
            lhs = theta.apply(multiply(A, e[i], e[j]))
            rhs = multiply(A, cols[i], cols[j])
            if any(not (x - y).is_zero() for x, y in zip(lhs, rhs)):
                return False
    return True


def transform_deformation(d: Deformation, theta: Matrix) -> Deformation:
    """Basis change phi'(x, y) = theta^{-1}(phi(theta x, theta y)).

    theta must be invertible and an automorphism of the base product, so
    the Step-1 status of the result matches the input's.
    """
    from .algebra import multiply
    if theta.det().is_zero():
        raise NotInvertibleError("theta is singular")
    if not is_automorphism(theta, d.base):
        raise PreconditionError("theta is not an automorphism of the base")
    inv = theta.inverse()
    n = d.base.dim
    e = [d.base.basis_vector(i) for i in range(n)]
    cols = [theta.apply(e[j]) for j in range(n)]
    sc = []
    for i in range(n):
        plane = []
        for j in range(n):
            plane.append(inv.apply(multiply(d.phi, cols[i], cols[j])))
        sc.append(plane)
    return Deformation(d.base, Algebra(d.phi.field, n, sc, d.base.basis))

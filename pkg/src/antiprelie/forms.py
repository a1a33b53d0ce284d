"""Bilinear forms: commutative 2-cocycles, invariance, and the induced
compatible products.

The Gram array convention is gram[i][j] = B(e_i, e_j).  The pairing form
on A + A* uses the (primal basis, then dual basis) order fixed by the
semidirect product construction.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product as iproduct

from .algebra import (Algebra, AlgebraPair, CheckReport, commutator_pair,
                      make_report, merge_reports, multiply)
from .errors import ParseError, PreconditionError, ShapeMismatchError
from .linalg import Matrix
from .scalars import Field, Scalar, format_scalar


@dataclass(frozen=True)
class BilinearForm:
    gram: Matrix

    def __post_init__(self):
        if self.gram.rows != self.gram.cols:
            raise ShapeMismatchError("Gram array must be square")

    @property
    def dim(self):
        return self.gram.rows

    @property
    def field(self):
        return self.gram.field

    def value(self, x, y) -> Scalar:
        """B(x, y) on coefficient vectors."""
        col = self.gram.apply(y)
        acc = self.field.zero()
        for a, b in zip(x, col):
            if not a.is_zero() and not b.is_zero():
                acc = acc + a * b
        return acc

    @staticmethod
    def from_rows(field: Field, rows) -> BilinearForm:
        return BilinearForm(Matrix.from_rows(field, rows))

    def to_json(self):
        return {"dim": self.dim,
                "gram": [[format_scalar(x) for x in row]
                         for row in self.gram.entries]}

    @staticmethod
    def from_json(obj, field: Field) -> BilinearForm:
        try:
            rows = [[field.parse(str(x)) for x in row] for row in obj["gram"]]
            form = BilinearForm(Matrix(field, rows))
            if form.dim != int(obj.get("dim", form.dim)):
                raise ShapeMismatchError("declared dim disagrees with gram")
            return form
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed form JSON: {exc}") from exc


def load_form_file(path, field: Field) -> BilinearForm:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {path}: {exc}") from exc
    return BilinearForm.from_json(obj, field)


def check_form(B: BilinearForm, kind: str) -> CheckReport:
    """kind 'symmetric': gram equals its transpose; 'nondegenerate':
    exact determinant is nonzero."""
    if kind == "symmetric":
        failures = []
        d = B.gram - B.gram.transpose()
        for i in range(B.dim):
            for j in range(i + 1, B.dim):
                if not d.entries[i][j].is_zero():
                    failures.append(("symmetric", (i, j), [d.entries[i][j]]))
        return make_report(failures)
    if kind == "nondegenerate":
        det = B.gram.det()
        if det.is_zero():
            return make_report([("nondegenerate", (), [det])])
        return make_report([])
    raise ValueError(f"unknown form check {kind!r}")


def check_comm_2cocycle(B: BilinearForm, G: AlgebraPair) -> CheckReport:
    """B([x,y],z) + B([y,z],x) + B([z,x],y) = 0 for each bracket; the
    pencil version is linear in (k1,k2) so per-bracket checking suffices.
    Asymmetry of B is reported as a failure."""
    sym = check_form(B, "symmetric")
    if B.dim != G.dim:
        raise ShapeMismatchError("form and brackets of different dimension")
    n = G.dim
    e = [G.circ.basis_vector(i) for i in range(n)]
    failures = []
    for name, brk in (("cocycle_1", G.circ), ("cocycle_2", G.star)):
        for i, j, k in iproduct(range(n), repeat=3):
            r = B.value(multiply(brk, e[i], e[j]), e[k]) \
                + B.value(multiply(brk, e[j], e[k]), e[i]) \
                + B.value(multiply(brk, e[k], e[i]), e[j])
            if not r.is_zero():
                failures.append((name, (i, j, k), [r]))
    return merge_reports(sym, make_report(failures))


def check_invariant(B: BilinearForm, P: AlgebraPair) -> CheckReport:
    """B(x.y, z) = B(y, [x,z]_1) and B(x*y, z) = B(y, [x,z]_2) on all
    basis triples, with the brackets taken from P's commutators."""
    if B.dim != P.dim:
        raise ShapeMismatchError("form and pair of different dimension")
    G = commutator_pair(P)
    n = P.dim
    e = [P.circ.basis_vector(i) for i in range(n)]
    failures = []
    for name, prod, brk in (("invariant_circ", P.circ, G.circ),
                            ("invariant_star", P.star, G.star)):
        for i, j, k in iproduct(range(n), repeat=3):
            r = B.value(multiply(prod, e[i], e[j]), e[k]) \
                - B.value(e[j], multiply(brk, e[i], e[k]))
            if not r.is_zero():
                failures.append((name, (i, j, k), [r]))
    return make_report(failures)


def induce_from_cocycle(B: BilinearForm, G: AlgebraPair) -> AlgebraPair:
    """Solve B(x.y, z) = B(y, [x,z]_1) and B(x*y, z) = B(y, [x,z]_2) for
    the products, per basis pair, with the fixed Gram array.

    Preconditions (checked): B symmetric and nondegenerate, B a
    commutative 2-cocycle on G, G a compatible Lie pair.
    """
    from .algebra import check_compatible_lie
    if not check_form(B, "symmetric").passed:
        raise PreconditionError("form is not symmetric")
    if not check_form(B, "nondegenerate").passed:
        raise PreconditionError("form is degenerate")
    if not check_comm_2cocycle(B, G).passed:
        raise PreconditionError("form is not a commutative 2-cocycle")
    if not check_compatible_lie(G).passed:
        raise PreconditionError("brackets are not a compatible Lie pair")
    n = G.dim
    f = B.field
    e = [G.circ.basis_vector(i) for i in range(n)]

    def build(brk: Algebra):
        sc = []
        for i in range(n):
            plane = []
            for j in range(n):
                rhs = [B.value(e[j], multiply(brk, e[i], e[k]))
                       for k in range(n)]
                col = B.gram.solve(rhs)
                if col is None:
                    raise PreconditionError("Gram system inconsistent")
                plane.append(col)
            sc.append(plane)
        return Algebra(f, n, sc, G.basis)

    return AlgebraPair(build(G.circ), build(G.star))


def pairing_form(n: int, field: Field) -> BilinearForm:
    """The block-antidiagonal pairing on A + A*:  B(x+a*, y+b*) =
    <x,b*> + <a*,y>, in (primal, then dual) basis order."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    z, one = field.zero(), field.one()
    rows = []
    for i in range(2 * n):
        row = [z] * (2 * n)
        row[(i + n) % (2 * n)] = one
        rows.append(row)
    return BilinearForm(Matrix(field, rows))


def construct_from_vectors(B: BilinearForm, s1, s2) -> AlgebraPair:
    """x.y = B(x,y)s1 - B(x,s1)y  and  x*y = B(x,y)s2 - B(x,s2)y.

    For symmetric B the result is a compatible anti-pre-Lie pair on which
    B is invariant.
    """
    if not check_form(B, "symmetric").passed:
        raise PreconditionError("form is not symmetric")
    n = B.dim
    f = B.field
    s1 = [x if isinstance(x, Scalar) else f.scalar(x) for x in s1]
    s2 = [x if isinstance(x, Scalar) else f.scalar(x) for x in s2]
    if len(s1) != n or len(s2) != n:
        raise ShapeMismatchError("vectors must match the form's dimension")
    e = [[f.one() if t == i else f.zero() for t in range(n)] for i in range(n)]

    def build(s):
        sc = []
        for i in range(n):
            pairing = B.value(e[i], s)
            plane = []
            for j in range(n):
                bij = B.value(e[i], e[j])
                col = [bij * s[k] - (pairing if k == j else f.zero())
                       for k in range(n)]
                plane.append(col)
            sc.append(plane)
        return Algebra(f, n, sc)

    return AlgebraPair(build(s1), build(s2))


def invariant_form_space(P: AlgebraPair):
    """Basis of the space of symmetric invariant bilinear forms on P,
    by exact linear solve in the n(n+1)/2 symmetric Gram unknowns."""
    n = P.dim
    f = P.field
    G = commutator_pair(P)
    e = [P.circ.basis_vector(i) for i in range(n)]
    slots = [(i, j) for i in range(n) for j in range(i, n)]

    def gram_of(vec):
        rows = [[None] * n for _ in range(n)]
        for (i, j), c in zip(slots, vec):
            rows[i][j] = c
            rows[j][i] = c
        return Matrix(f, rows)

    rows = []
    for prod, brk in ((P.circ, G.circ), (P.star, G.star)):
        for i, j, k in iproduct(range(n), repeat=3):
            # B(e_i . e_j, e_k) - B(e_j, [e_i, e_k]) as a linear functional
            # of the symmetric Gram entries
            left = multiply(prod, e[i], e[j])
            right = multiply(brk, e[i], e[k])
            coeffs = []
            for (a, b) in slots:
                c = f.zero()
                # gram[a][b] contributes where {row,col} = {a,b}
                c = c + left[a] * (e[k][b]) + (left[b] * e[k][a]
                                               if a != b else f.zero())
                c = c - e[j][a] * right[b] - (e[j][b] * right[a]
                                              if a != b else f.zero())
                coeffs.append(c)
            rows.append(coeffs)
    system = Matrix(f, rows)
    return [gram_of(vec) for vec in system.nullspace()]

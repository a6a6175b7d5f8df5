"""Pairwise compatibility notions for bilinear products on one space.

For a fixed associative product `dot` and a candidate `star`, the mixed
triple expressions are

    E1 = (a*b).c    E2 = (a.b)*c    E3 = a*(b.c)    E4 = a.(b*c)

and each notion is a set of linear identities between them:

    compatible            E1 + E2 = E3 + E4
    id-matching           E1 = E3,  E2 = E4
    swap-matching         E1 = E4,  E2 = E3
    interchangeable       E1 = E2,  E3 = E4
    totally compatible    E1 = E2,  E2 = E4,  E4 = E3

Checkers evaluate identities on basis triples; solvers return the full
linear space of coefficient tensors satisfying a notion against `dot`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .algebra import (
    AlgebraError,
    NonAssociativeError,
    Product,
    _mul_basis_vec,
    _mul_vec_basis,
    associativity_witness,
    require_associative,
)
from .linalg import (
    FieldMismatchError,
    ShapeMismatchError,
    Subspace,
    kernel_from_rows,
)


class Kind(enum.Enum):
    COMPATIBLE = "compatible"
    ID_MATCHING = "id-matching"
    SWAP_MATCHING = "swap-matching"
    INTERCHANGEABLE = "interchangeable"
    TOTALLY_COMPATIBLE = "totally-compatible"

    @classmethod
    def parse(cls, name):
        for kind in cls:
            if kind.value == name:
                return kind
        raise AlgebraError(f"unknown compatibility kind {name!r}")


# Expression ids.  E1=(a*b).c  E2=(a.b)*c  E3=a*(b.c)  E4=a.(b*c)
E1, E2, E3, E4 = 1, 2, 3, 4

IDENTITIES = {
    Kind.COMPATIBLE: (((E1, E2), (E3, E4)),),
    Kind.ID_MATCHING: (((E1,), (E3,)), ((E2,), (E4,))),
    Kind.SWAP_MATCHING: (((E1,), (E4,)), ((E2,), (E3,))),
    Kind.INTERCHANGEABLE: (((E1,), (E2,)), ((E3,), (E4,))),
    Kind.TOTALLY_COMPATIBLE: (((E1,), (E2,)), ((E2,), (E4,)), ((E4,), (E3,))),
}


class InternalContradictionError(AlgebraError):
    """Two supposedly equivalent evaluation routes disagreed."""


@dataclass(frozen=True)
class Witness:
    identity: int
    triple: tuple
    lhs: tuple
    rhs: tuple


@dataclass(frozen=True)
class CompatReport:
    kind: Kind
    holds: bool
    witness: Witness | None

    def to_json(self, field):
        out = {"kind": self.kind.value, "holds": self.holds}
        if self.witness is None:
            out["witness"] = None
        else:
            out["witness"] = {
                "identity": self.witness.identity,
                "triple": list(self.witness.triple),
                "lhs": [field.to_str(v) for v in self.witness.lhs],
                "rhs": [field.to_str(v) for v in self.witness.rhs],
            }
        return out


def sum_product(p1: Product, p2: Product) -> Product:
    """Coefficient-wise sum of two products on the same space."""
    return p1.add(p2)


def _check_pair(star, dot):
    if not isinstance(star, Product) or not isinstance(dot, Product):
        raise TypeError("expected Products")
    if star.field != dot.field:
        raise FieldMismatchError(f"{star.field} vs {dot.field}")
    if star.dim != dot.dim:
        raise ShapeMismatchError("product dimensions differ")


def _eval_expr(expr, star, dot, i, j, k):
    if expr == E1:
        return _mul_vec_basis(dot, star.table(i, j), k)
    if expr == E2:
        return _mul_vec_basis(star, dot.table(i, j), k)
    if expr == E3:
        return _mul_basis_vec(star, i, dot.table(j, k))
    if expr == E4:
        return _mul_basis_vec(dot, i, star.table(j, k))
    raise AssertionError(expr)


def _eval_side(exprs, star, dot, i, j, k):
    f = star.field
    total = {}
    for expr in exprs:
        for key, v in _eval_expr(expr, star, dot, i, j, k).items():
            nv = f.add(total.get(key, f.zero), v)
            if nv == f.zero:
                total.pop(key, None)
            else:
                total[key] = nv
    return total


def _dense(vec, n, field):
    out = [field.zero] * n
    for k, v in vec.items():
        out[k] = v
    return tuple(out)


def check(kind: Kind, star: Product, dot: Product) -> CompatReport:
    """Evaluate a notion's identities on all basis triples; star may be anything."""
    _check_pair(star, dot)
    require_associative(dot)
    n = dot.dim
    for ident_idx, (lhs_exprs, rhs_exprs) in enumerate(IDENTITIES[kind]):
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    lhs = _eval_side(lhs_exprs, star, dot, i, j, k)
                    rhs = _eval_side(rhs_exprs, star, dot, i, j, k)
                    if lhs != rhs:
                        w = Witness(
                            ident_idx,
                            (i, j, k),
                            _dense(lhs, n, dot.field),
                            _dense(rhs, n, dot.field),
                        )
                        return CompatReport(kind, False, w)
    return CompatReport(kind, True, None)


def check_compatible_dual(star: Product, dot: Product) -> CompatReport:
    """Compatibility decided two ways: identity route and sum-associativity route.

    Both products must be associative; the two routes must agree.
    """
    _check_pair(star, dot)
    require_associative(dot)
    require_associative(star, "candidate product")
    report = check(Kind.COMPATIBLE, star, dot)
    via_sum = associativity_witness(sum_product(star, dot)) is None
    if via_sum != report.holds:
        raise InternalContradictionError(
            f"identity route says {report.holds}, sum-associativity route says {via_sum}"
        )
    return report


@dataclass(frozen=True)
class ProductSpace:
    """All bilinear products satisfying a notion's identities against `base`."""

    base: Product
    kind: Kind
    space: Subspace

    @property
    def dim(self):
        return self.space.dim

    def basis_products(self):
        n = self.base.dim
        return [Product.from_flat(n, self.base.field, list(row)) for row in self.space.basis]

    def contains(self, star: Product):
        _check_pair(star, self.base)
        return self.space.member(star.flatten())

    def to_json(self):
        f = self.base.field
        return {
            "kind": self.kind.value,
            "dimension": self.dim,
            "ambient": self.space.ambient_dim,
            "basis": [
                [[i, j, k, f.to_str(v)] for i, j, k, v in prod.triples()]
                for prod in self.basis_products()
            ],
        }


def _flat(n, i, j, k):
    return (i * n + j) * n + k


def solve_linear(kind: Kind, dot: Product) -> ProductSpace:
    """The full solution space of the notion's identities, as unknown tensor X.

    Row assembly is identity-major, then lexicographic in (i, j, k, l); no
    associativity is imposed on members.
    """
    require_associative(dot)
    f = dot.field
    n = dot.dim
    rows = []

    def add_expr(row_by_l, expr, sign, i, j, k):
        if expr == E1:
            # sum_m X[i][j][m] dot[m][k][l]
            for m in range(n):
                for l, dv in dot.table(m, k).items():
                    _acc(row_by_l, l, _flat(n, i, j, m), dv if sign else f.neg(dv))
        elif expr == E2:
            # sum_m dot[i][j][m] X[m][k][l]
            for m, dv in dot.table(i, j).items():
                val = dv if sign else f.neg(dv)
                for l in range(n):
                    _acc(row_by_l, l, _flat(n, m, k, l), val)
        elif expr == E3:
            # sum_m dot[j][k][m] X[i][m][l]
            for m, dv in dot.table(j, k).items():
                val = dv if sign else f.neg(dv)
                for l in range(n):
                    _acc(row_by_l, l, _flat(n, i, m, l), val)
        elif expr == E4:
            # sum_m X[j][k][m] dot[i][m][l]
            for m in range(n):
                for l, dv in dot.table(i, m).items():
                    _acc(row_by_l, l, _flat(n, j, k, m), dv if sign else f.neg(dv))

    def _acc(row_by_l, l, col, val):
        row = row_by_l.setdefault(l, {})
        nv = f.add(row.get(col, f.zero), val)
        if nv == f.zero:
            row.pop(col, None)
        else:
            row[col] = nv

    for lhs_exprs, rhs_exprs in IDENTITIES[kind]:
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    row_by_l = {}
                    for expr in lhs_exprs:
                        add_expr(row_by_l, expr, True, i, j, k)
                    for expr in rhs_exprs:
                        add_expr(row_by_l, expr, False, i, j, k)
                    for l in sorted(row_by_l):
                        if row_by_l[l]:
                            rows.append(row_by_l[l])
    space = kernel_from_rows(f, n**3, rows)
    return ProductSpace(dot, kind, space)


@dataclass(frozen=True)
class AssociativityCertificate:
    status: str  # "pass" | "fail" | "undecided"
    member: tuple | None  # coordinates in the space basis
    witness: tuple | None  # basis triple where the member fails

    @property
    def all_associative(self):
        return self.status == "pass"


DEFAULT_ENUM_CAP = 2**20


def _cross_defect_witness(p, q, n):
    """First (i,j,k) where (b_i p b_j) q b_k + (b_i q b_j) p b_k differs from
    b_i q (b_j p b_k) + b_i p (b_j q b_k); None when the polarized form is zero."""
    f = p.field
    for i in range(n):
        for j in range(n):
            pw = p.table(i, j)
            qw = q.table(i, j)
            for k in range(n):
                lhs = _mul_vec_basis(q, pw, k)
                for key, v in _mul_vec_basis(p, qw, k).items():
                    nv = f.add(lhs.get(key, f.zero), v)
                    if nv == f.zero:
                        lhs.pop(key, None)
                    else:
                        lhs[key] = nv
                rhs = _mul_basis_vec(q, i, p.table(j, k))
                for key, v in _mul_basis_vec(p, i, q.table(j, k)).items():
                    nv = f.add(rhs.get(key, f.zero), v)
                    if nv == f.zero:
                        rhs.pop(key, None)
                    else:
                        rhs[key] = nv
                if lhs != rhs:
                    return (i, j, k)
    return None


def all_members_associative(ps: ProductSpace, cap=DEFAULT_ENUM_CAP) -> AssociativityCertificate:
    """Decide whether every member of the solution space is associative.

    Char != 2: the associativity defect of a generic member is a quadratic
    form in the coordinates; it vanishes identically iff all diagonal defects
    and all polarized cross terms vanish.  Over F_2 the subspace is
    enumerated exhaustively, up to `cap` members.
    """
    f = ps.base.field
    n = ps.base.dim
    basis = ps.basis_products()
    d = len(basis)
    zero, one = f.zero, f.one
    if f.characteristic == 2:
        if 2**d > cap:
            return AssociativityCertificate("undecided", None, None)
        for mask in range(2**d):
            member = Product.zero(n, f)
            coords = []
            for a in range(d):
                bit = (mask >> a) & 1
                coords.append(one if bit else zero)
                if bit:
                    member = member.add(basis[a])
            w = associativity_witness(member)
            if w is not None:
                return AssociativityCertificate("fail", tuple(coords), w)
        return AssociativityCertificate("pass", None, None)
    for a in range(d):
        w = associativity_witness(basis[a])
        if w is not None:
            coords = tuple(one if x == a else zero for x in range(d))
            return AssociativityCertificate("fail", coords, w)
    for a in range(d):
        for b in range(a + 1, d):
            w = _cross_defect_witness(basis[a], basis[b], n)
            if w is not None:
                coords = tuple(one if x in (a, b) else zero for x in range(d))
                return AssociativityCertificate("fail", coords, w)
    return AssociativityCertificate("pass", None, None)


@dataclass(frozen=True)
class EquivalenceAudit:
    """Truth values of the equivalent formulations of total compatibility."""

    atoms: dict
    conditions: dict
    contradiction: bool

    def to_json(self):
        return {
            "atoms": dict(self.atoms),
            "conditions": dict(self.conditions),
            "contradiction": self.contradiction,
        }


def _atom_holds(lhs_expr, rhs_expr, p1, p2, n):
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if _eval_side(lhs_expr, p1, p2, i, j, k) != _eval_side(rhs_expr, p1, p2, i, j, k):
                    return False
    return True


def remark13_audit(p1: Product, p2: Product) -> EquivalenceAudit:
    """Check that the four (five, char != 2) characterizations agree on a pair.

    Both products must be associative.  The returned audit's contradiction
    flag must never be set; a set flag means the checker itself is broken.
    """
    _check_pair(p1, p2)
    require_associative(p2)
    require_associative(p1, "first product")
    n = p1.dim
    # Expressions of the pair (p1, p2): E1..E4 with star=p1, dot=p2.
    atom_pairs = {
        "eq_13": ((E1,), (E3,)),
        "eq_24": ((E2,), (E4,)),
        "eq_14": ((E1,), (E4,)),
        "eq_23": ((E2,), (E3,)),
        "eq_12": ((E1,), (E2,)),
        "eq_34": ((E3,), (E4,)),
        "compatible": ((E1, E2), (E3, E4)),
    }
    atoms = {
        name: _atom_holds(lhs, rhs, p1, p2, n) for name, (lhs, rhs) in atom_pairs.items()
    }
    id_matching = atoms["eq_13"] and atoms["eq_24"]
    swap_matching = atoms["eq_14"] and atoms["eq_23"]
    interchangeable = atoms["eq_12"] and atoms["eq_34"]
    any_matching_eq = atoms["eq_13"] or atoms["eq_24"] or atoms["eq_14"] or atoms["eq_23"]
    conditions = {
        "totally_compatible": atoms["eq_12"] and atoms["eq_13"] and atoms["eq_14"],
        "interchangeable_plus_matching_eq": interchangeable and any_matching_eq,
        "matching_plus_interchange_eq": (id_matching or swap_matching)
        and (atoms["eq_12"] or atoms["eq_34"]),
        "matching_plus_other_sigma_eq": (id_matching and (atoms["eq_14"] or atoms["eq_23"]))
        or (swap_matching and (atoms["eq_13"] or atoms["eq_24"])),
    }
    if p1.field.characteristic != 2:
        conditions["interchangeable_and_compatible"] = interchangeable and atoms["compatible"]
    values = set(conditions.values())
    return EquivalenceAudit(atoms, conditions, len(values) > 1)

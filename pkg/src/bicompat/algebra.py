"""Finite-dimensional algebras as structure-constant tensors.

A Product is a bilinear map stored sparsely as tables (i, j) -> {k: coeff},
meaning  b_i * b_j = sum_k coeff * b_k.  Products carry no associativity
requirement; an Algebra wraps a distinguished associative product together
with basis labels.  Structural subspaces (center, centroid, annihilator,
centralizer, unit sets) are computed by exact linear solves.
"""

from __future__ import annotations

from .linalg import (
    FieldMismatchError,
    LinalgError,
    Matrix,
    ShapeMismatchError,
    Subspace,
    _rref_rows,
    field_from_json,
    field_to_json,
    kernel_from_rows,
    solve,
)


class AlgebraError(ValueError):
    pass


class NonAssociativeError(AlgebraError):
    """An associative product was required; carries the first bad triple."""

    def __init__(self, witness, message="product is not associative"):
        super().__init__(f"{message} (witness triple {witness})")
        self.witness = witness


class FileFormatError(AlgebraError):
    """Malformed algebra/product/starmap document."""


UNIT_SIDES = ("left", "right", "two-sided")


class Product:
    """A bilinear product on an n-dimensional space, as a sparse rank-3 tensor."""

    __slots__ = ("dim", "field", "tables")

    def __init__(self, dim, field, tables):
        if dim < 1:
            raise AlgebraError("dimension must be at least 1")
        self.dim = dim
        self.field = field
        clean = {}
        for (i, j), col in tables.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise AlgebraError(f"pair index ({i},{j}) out of range")
            out = {}
            for k, v in col.items():
                if not 0 <= k < dim:
                    raise AlgebraError(f"output index {k} out of range")
                v = field.coerce(v)
                if v != field.zero:
                    out[k] = v
            if out:
                clean[(i, j)] = out
        self.tables = clean

    @classmethod
    def from_triples(cls, dim, field, triples):
        tables = {}
        for i, j, k, v in triples:
            col = tables.setdefault((i, j), {})
            v = field.coerce(v)
            col[k] = field.add(col.get(k, field.zero), v)
        return cls(dim, field, tables)

    @classmethod
    def zero(cls, dim, field):
        return cls(dim, field, {})

    @classmethod
    def from_flat(cls, dim, field, vec):
        """Inverse of flatten(): vec has length dim**3, layout (i*dim + j)*dim + k."""
        if len(vec) != dim**3:
            raise ShapeMismatchError("flat coefficient vector has wrong length")
        triples = []
        for idx, v in enumerate(vec):
            v = field.coerce(v)
            if v != field.zero:
                k = idx % dim
                ij = idx // dim
                triples.append((ij // dim, ij % dim, k, v))
        return cls.from_triples(dim, field, triples)

    def table(self, i, j):
        return self.tables.get((i, j), {})

    def coefficient(self, i, j, k):
        return self.table(i, j).get(k, self.field.zero)

    def triples(self):
        out = []
        for (i, j), col in self.tables.items():
            for k, v in col.items():
                out.append((i, j, k, v))
        out.sort(key=lambda t: t[:3])
        return out

    def flatten(self):
        n = self.dim
        vec = [self.field.zero] * n**3
        for (i, j), col in self.tables.items():
            base = (i * n + j) * n
            for k, v in col.items():
                vec[base + k] = v
        return vec

    def add(self, other):
        self._check_peer(other)
        f = self.field
        tables = {ij: dict(col) for ij, col in self.tables.items()}
        for ij, col in other.tables.items():
            mine = tables.setdefault(ij, {})
            for k, v in col.items():
                mine[k] = f.add(mine.get(k, f.zero), v)
        return Product(self.dim, f, tables)

    def scale(self, c):
        f = self.field
        c = f.coerce(c)
        tables = {
            ij: {k: f.mul(c, v) for k, v in col.items()}
            for ij, col in self.tables.items()
        }
        return Product(self.dim, f, tables)

    def neg(self):
        return self.scale(self.field.neg(self.field.one))

    def _check_peer(self, other):
        if not isinstance(other, Product):
            raise TypeError("expected a Product")
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        if other.dim != self.dim:
            raise ShapeMismatchError("product dimensions differ")

    def __eq__(self, other):
        return (
            isinstance(other, Product)
            and other.dim == self.dim
            and other.field == self.field
            and other.tables == self.tables
        )

    def __hash__(self):
        items = tuple(sorted((ij, tuple(sorted(col.items()))) for ij, col in self.tables.items()))
        return hash((self.dim, self.field, items))

    def __repr__(self):
        return f"Product(dim={self.dim}, {self.field}, {len(self.tables)} nonzero pairs)"


def basis_vector(field, n, i):
    v = [field.zero] * n
    v[i] = field.one
    return v


def multiply(p: Product, a, b):
    """Evaluate the bilinear map on coordinate vectors a and b."""
    f = p.field
    n = p.dim
    a = [f.coerce(x) for x in a]
    b = [f.coerce(x) for x in b]
    if len(a) != n or len(b) != n:
        raise ShapeMismatchError("vector length != product dimension")
    out = [f.zero] * n
    for i, av in enumerate(a):
        if av == f.zero:
            continue
        for j, bv in enumerate(b):
            if bv == f.zero:
                continue
            col = p.table(i, j)
            if not col:
                continue
            coef = f.mul(av, bv)
            for k, v in col.items():
                out[k] = f.add(out[k], f.mul(coef, v))
    return out


def _mul_basis_vec(p, i, vec):
    """b_i * v for a coordinate dict vec {j: val}; returns dict {k: val}."""
    f = p.field
    out = {}
    for j, bv in vec.items():
        for k, v in p.table(i, j).items():
            nv = f.add(out.get(k, f.zero), f.mul(bv, v))
            if nv == f.zero:
                out.pop(k, None)
            else:
                out[k] = nv
    return out


def _mul_vec_basis(p, vec, j):
    f = p.field
    out = {}
    for i, av in vec.items():
        for k, v in p.table(i, j).items():
            nv = f.add(out.get(k, f.zero), f.mul(av, v))
            if nv == f.zero:
                out.pop(k, None)
            else:
                out[k] = nv
    return out


def associativity_witness(p: Product):
    """First basis triple (i, j, k) where (b_i b_j) b_k != b_i (b_j b_k), or None."""
    n = p.dim
    for i in range(n):
        for j in range(n):
            left = p.table(i, j)
            for k in range(n):
                lhs = _mul_vec_basis(p, left, k)
                rhs = _mul_basis_vec(p, i, p.table(j, k))
                if lhs != rhs:
                    return (i, j, k)
    return None


def is_associative(p: Product):
    return associativity_witness(p) is None


def require_associative(p: Product, what="base product"):
    w = associativity_witness(p)
    if w is not None:
        raise NonAssociativeError(w, f"{what} is not associative")


def find_units(p: Product, side="two-sided"):
    """Affine set of unit elements for the requested side, or None when empty."""
    if side not in UNIT_SIDES:
        raise AlgebraError(f"side must be one of {UNIT_SIDES}")
    f = p.field
    n = p.dim
    rows = []
    rhs = []
    if side in ("left", "two-sided"):
        # e * b_i = b_i : coefficient of b_l is sum_u e_u c[u][i][l]
        for i in range(n):
            for l in range(n):
                rows.append([p.coefficient(u, i, l) for u in range(n)])
                rhs.append(f.one if l == i else f.zero)
    if side in ("right", "two-sided"):
        for i in range(n):
            for l in range(n):
                rows.append([p.coefficient(i, u, l) for u in range(n)])
                rhs.append(f.one if l == i else f.zero)
    return solve(Matrix(f, rows), rhs)


def is_idempotent_algebra(p: Product):
    """True when the span of all basis products is the whole space."""
    rows = []
    f = p.field
    n = p.dim
    for (i, j), col in p.tables.items():
        row = [f.zero] * n
        for k, v in col.items():
            row[k] = v
        rows.append(row)
    return Subspace(f, n, rows).dim == n


def center(p: Product) -> Subspace:
    """{x : x b_i = b_i x for every basis element}."""
    f = p.field
    n = p.dim
    rows = []
    for i in range(n):
        for l in range(n):
            row = {}
            for u in range(n):
                c = f.sub(p.coefficient(u, i, l), p.coefficient(i, u, l))
                if c != f.zero:
                    row[u] = c
            if row:
                rows.append(row)
    return kernel_from_rows(f, n, rows)


def centralizer(p: Product, x) -> Subspace:
    """{a : a x = x a} for a fixed coordinate vector x."""
    f = p.field
    n = p.dim
    x = [f.coerce(v) for v in x]
    if len(x) != n:
        raise ShapeMismatchError("vector length != product dimension")
    rows = []
    for l in range(n):
        row = {}
        for u in range(n):
            acc = f.zero
            for j, xv in enumerate(x):
                if xv == f.zero:
                    continue
                acc = f.add(acc, f.mul(xv, f.sub(p.coefficient(u, j, l), p.coefficient(j, u, l))))
            if acc != f.zero:
                row[u] = acc
        if row:
            rows.append(row)
    return kernel_from_rows(f, n, rows)


def annihilator(p: Product) -> Subspace:
    """{a : a b_i = b_i a = 0 for every basis element}."""
    f = p.field
    n = p.dim
    rows = []
    for i in range(n):
        for l in range(n):
            left = {u: p.coefficient(u, i, l) for u in range(n) if p.coefficient(u, i, l) != f.zero}
            if left:
                rows.append(left)
            right = {u: p.coefficient(i, u, l) for u in range(n) if p.coefficient(i, u, l) != f.zero}
            if right:
                rows.append(right)
    return kernel_from_rows(f, n, rows)


def centroid(p: Product) -> Subspace:
    """Maps commuting with every multiplication: x phi(y) = phi(x y) = phi(x) y.

    Solutions live in the n^2-dimensional endomorphism coordinate space,
    row-major: slot r*n + c holds the coefficient of b_c in phi(b_r).
    """
    f = p.field
    n = p.dim
    rows = []
    for i in range(n):
        for j in range(n):
            prod_col = p.table(i, j)
            for l in range(n):
                row_a = {}
                row_b = {}
                for m, v in prod_col.items():
                    row_a[m * n + l] = f.add(row_a.get(m * n + l, f.zero), v)
                    row_b[m * n + l] = f.add(row_b.get(m * n + l, f.zero), v)
                # e_i . phi(e_j): subtract c[i][m][l] at slot (j, m)
                for m in range(n):
                    c = p.coefficient(i, m, l)
                    if c != f.zero:
                        key = j * n + m
                        nv = f.sub(row_a.get(key, f.zero), c)
                        if nv == f.zero:
                            row_a.pop(key, None)
                        else:
                            row_a[key] = nv
                # phi(e_i) . e_j: subtract c[m][j][l] at slot (i, m)
                for m in range(n):
                    c = p.coefficient(m, j, l)
                    if c != f.zero:
                        key = i * n + m
                        nv = f.sub(row_b.get(key, f.zero), c)
                        if nv == f.zero:
                            row_b.pop(key, None)
                        else:
                            row_b[key] = nv
                if row_a:
                    rows.append(row_a)
                if row_b:
                    rows.append(row_b)
    return kernel_from_rows(f, n * n, rows)


class Endomorphism:
    """A linear map on coordinates; row r of the matrix is the image of b_r."""

    __slots__ = ("dim", "field", "matrix")

    def __init__(self, field, matrix_rows):
        self.field = field
        self.matrix = tuple(tuple(field.coerce(v) for v in row) for row in matrix_rows)
        self.dim = len(self.matrix)
        if any(len(r) != self.dim for r in self.matrix):
            raise ShapeMismatchError("endomorphism matrix must be square")

    @classmethod
    def identity(cls, field, n):
        return cls(field, Matrix.identity(field, n).rows)

    @classmethod
    def scalar(cls, field, n, c):
        c = field.coerce(c)
        z = field.zero
        return cls(field, [[c if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_flat(cls, field, n, vec):
        if len(vec) != n * n:
            raise ShapeMismatchError("flat endomorphism vector has wrong length")
        return cls(field, [vec[r * n : (r + 1) * n] for r in range(n)])

    def flatten(self):
        return [v for row in self.matrix for v in row]

    def apply(self, v):
        f = self.field
        v = [f.coerce(x) for x in v]
        if len(v) != self.dim:
            raise ShapeMismatchError("vector length != endomorphism dimension")
        out = [f.zero] * self.dim
        for r, coef in enumerate(v):
            if coef == f.zero:
                continue
            for c, m in enumerate(self.matrix[r]):
                if m != f.zero:
                    out[c] = f.add(out[c], f.mul(coef, m))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Endomorphism)
            and other.field == self.field
            and other.matrix == self.matrix
        )

    def __repr__(self):
        return f"Endomorphism(dim={self.dim}, {self.field})"


def apply_endo(phi: Endomorphism, v):
    return phi.apply(v)


class Algebra:
    """An associative structure-constant algebra with labeled basis."""

    __slots__ = ("dim", "field", "labels", "dot")

    def __init__(self, field, labels, dot: Product, *, check=True):
        labels = tuple(labels)
        if len(labels) < 1:
            raise AlgebraError("algebras must have dimension at least 1")
        if len(set(labels)) != len(labels):
            raise AlgebraError("basis labels must be distinct")
        if dot.dim != len(labels):
            raise ShapeMismatchError("label count != product dimension")
        if dot.field != field:
            raise FieldMismatchError(f"{field} vs {dot.field}")
        if check:
            require_associative(dot, "algebra product")
        self.dim = dot.dim
        self.field = field
        self.labels = labels
        self.dot = dot

    def label_of(self, i):
        return self.labels[i]

    def index_of(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise AlgebraError(f"unknown basis label {label!r}") from None

    def describe(self, v):
        """Human-readable combination of basis labels for a coordinate vector."""
        f = self.field
        parts = []
        for i, x in enumerate(v):
            x = f.coerce(x)
            if x == f.zero:
                continue
            if x == f.one:
                parts.append(self.labels[i])
            else:
                parts.append(f"{f.to_str(x)}*{self.labels[i]}")
        return " + ".join(parts) if parts else "0"

    def __eq__(self, other):
        return (
            isinstance(other, Algebra)
            and other.field == self.field
            and other.labels == self.labels
            and other.dot == self.dot
        )

    def __repr__(self):
        return f"Algebra(dim={self.dim}, {self.field})"


def transport_product(p: Product, g: Matrix) -> Product:
    """Base change: the product g^-1(p(g a, g b)); preserves associativity."""
    if g.field != p.field or g.nrows != p.dim or g.ncols != p.dim:
        raise ShapeMismatchError("base change matrix must be square of matching size")
    f = p.field
    n = p.dim
    ginv = matrix_inverse(g)
    triples = []
    for i in range(n):
        gi = list(g.rows[i])
        for j in range(n):
            gj = list(g.rows[j])
            image = multiply(p, gi, gj)
            back = ginv_apply(ginv, image, f)
            for k, v in enumerate(back):
                if v != f.zero:
                    triples.append((i, j, k, v))
    return Product.from_triples(n, f, triples)


def ginv_apply(ginv: Matrix, v, field):
    # row vector times matrix: coordinates transform back through g^-1
    n = ginv.nrows
    out = [field.zero] * n
    for r, coef in enumerate(v):
        if coef == field.zero:
            continue
        for c in range(n):
            m = ginv.entry(r, c)
            if m != field.zero:
                out[c] = field.add(out[c], field.mul(coef, m))
    return out


def matrix_inverse(g: Matrix) -> Matrix:
    if g.nrows != g.ncols:
        raise ShapeMismatchError("only square matrices invert")
    f = g.field
    n = g.nrows
    eye = Matrix.identity(f, n)
    rows = [list(gr) + list(er) for gr, er in zip(g.rows, eye.rows)]
    pivots = _rref_rows(f, rows)
    if pivots != list(range(n)):
        raise LinalgError("matrix is singular")
    return Matrix(f, [row[n:] for row in rows])


# ---------------------------------------------------------------------------
# JSON file formats.  Algebra documents:
#   {"dim": n, "field": "Q" | {"Fp": p}, "labels": [...],
#    "table": [[i, j, k, "coeff"], ...]}
# Product documents use the same layout with the triples under "product"
# (labels optional).  Indices are 0-based; omitted triples mean zero.


def algebra_to_json(alg: Algebra):
    return {
        "dim": alg.dim,
        "field": field_to_json(alg.field),
        "labels": list(alg.labels),
        "table": [[i, j, k, alg.field.to_str(v)] for i, j, k, v in alg.dot.triples()],
    }


def product_to_json(p: Product):
    return {
        "dim": p.dim,
        "field": field_to_json(p.field),
        "product": [[i, j, k, p.field.to_str(v)] for i, j, k, v in p.triples()],
    }


def _parse_triples(dim, field, raw, what):
    if not isinstance(raw, list):
        raise FileFormatError(f"{what} must be a list of [i, j, k, coeff] entries")
    triples = []
    for entry in raw:
        if not (isinstance(entry, list) and len(entry) == 4):
            raise FileFormatError(f"bad {what} entry {entry!r}")
        i, j, k, c = entry
        if not all(isinstance(x, int) for x in (i, j, k)):
            raise FileFormatError(f"non-integer index in {what} entry {entry!r}")
        if not all(0 <= x < dim for x in (i, j, k)):
            raise FileFormatError(f"index out of range in {what} entry {entry!r}")
        if not isinstance(c, str):
            raise FileFormatError(f"coefficient must be a string in {entry!r}")
        try:
            triples.append((i, j, k, field.parse(c)))
        except LinalgError as exc:
            raise FileFormatError(str(exc)) from None
    return triples


def _parse_header(obj, what):
    if not isinstance(obj, dict):
        raise FileFormatError(f"{what} document must be a JSON object")
    dim = obj.get("dim")
    if not isinstance(dim, int) or dim < 1:
        raise FileFormatError(f"{what} document needs a positive integer 'dim'")
    try:
        field = field_from_json(obj.get("field"))
    except LinalgError as exc:
        raise FileFormatError(str(exc)) from None
    return dim, field


def product_from_json(obj) -> Product:
    dim, field = _parse_header(obj, "product")
    if "product" not in obj:
        raise FileFormatError("product document needs a 'product' table")
    return Product.from_triples(dim, field, _parse_triples(dim, field, obj["product"], "product"))


def algebra_from_json(obj, *, check=True) -> Algebra:
    dim, field = _parse_header(obj, "algebra")
    labels = obj.get("labels")
    if labels is None:
        labels = [f"b{i}" for i in range(dim)]
    if not (isinstance(labels, list) and len(labels) == dim and all(isinstance(s, str) for s in labels)):
        raise FileFormatError("'labels' must list one string per basis element")
    if "table" not in obj:
        raise FileFormatError("algebra document needs a 'table'")
    dot = Product.from_triples(dim, field, _parse_triples(dim, field, obj["table"], "table"))
    return Algebra(field, labels, dot, check=check)

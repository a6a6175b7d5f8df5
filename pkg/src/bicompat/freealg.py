"""Noncommutative and commutative polynomial engines for free non-unital algebras.

Words over a finite alphabet of single-letter variables multiply by
concatenation; the non-unital algebra is the span of the nonempty words.
Star maps assign a zero-constant-term polynomial to every ordered pair of
letters; the ones satisfying the compatibility condition extend to bilinear
products on the whole algebra.  All identity checking is truncated only in
which instances are enumerated: every value is computed exactly, no term is
ever dropped, except in `truncated_centroid_dim`, which works in the
quotient by words of degree above the cap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import AlgebraError
from .linalg import QQ, FieldMismatchError, ShapeMismatchError, Subspace, kernel_from_rows


class FreeAlgebraError(AlgebraError):
    pass


class AlphabetMismatchError(FreeAlgebraError):
    pass


class NonzeroConstantTermError(FreeAlgebraError):
    pass


class ConditionNotVerifiedError(FreeAlgebraError):
    pass


class WrongVariableCountError(FreeAlgebraError):
    pass


def _check_alphabet(alphabet):
    alphabet = tuple(alphabet)
    if not alphabet:
        raise FreeAlgebraError("alphabet must be nonempty")
    if any(not (isinstance(a, str) and len(a) == 1) for a in alphabet):
        raise FreeAlgebraError("variables must be single characters")
    if len(set(alphabet)) != len(alphabet):
        raise FreeAlgebraError("variables must be distinct")
    return alphabet


class NCPoly:
    """Noncommutative polynomial: finite map word -> coefficient."""

    __slots__ = ("field", "alphabet", "terms")

    def __init__(self, field, alphabet, terms=None):
        self.field = field
        self.alphabet = _check_alphabet(alphabet)
        letters = set(self.alphabet)
        clean = {}
        for w, v in (terms or {}).items():
            if any(ch not in letters for ch in w):
                raise FreeAlgebraError(f"word {w!r} uses letters outside the alphabet")
            v = field.coerce(v)
            if v != field.zero:
                clean[w] = v
        self.terms = clean

    @classmethod
    def zero(cls, field, alphabet):
        return cls(field, alphabet, {})

    @classmethod
    def word(cls, field, alphabet, w, coeff=1):
        return cls(field, alphabet, {w: coeff})

    @classmethod
    def var(cls, field, alphabet, x):
        return cls.word(field, alphabet, x)

    def _peer(self, other):
        if not isinstance(other, NCPoly):
            raise TypeError("expected an NCPoly")
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        if other.alphabet != self.alphabet:
            raise AlphabetMismatchError(f"{self.alphabet} vs {other.alphabet}")

    def add(self, other):
        self._peer(other)
        f = self.field
        terms = dict(self.terms)
        for w, v in other.terms.items():
            nv = f.add(terms.get(w, f.zero), v)
            if nv == f.zero:
                terms.pop(w, None)
            else:
                terms[w] = nv
        return NCPoly(f, self.alphabet, terms)

    def sub(self, other):
        return self.add(other.scale(other.field.neg(other.field.one)))

    def scale(self, c):
        f = self.field
        c = f.coerce(c)
        if c == f.zero:
            return NCPoly.zero(f, self.alphabet)
        return NCPoly(f, self.alphabet, {w: f.mul(c, v) for w, v in self.terms.items()})

    def mul(self, other):
        self._peer(other)
        f = self.field
        terms = {}
        for w1, v1 in self.terms.items():
            for w2, v2 in other.terms.items():
                w = w1 + w2
                nv = f.add(terms.get(w, f.zero), f.mul(v1, v2))
                if nv == f.zero:
                    terms.pop(w, None)
                else:
                    terms[w] = nv
        return NCPoly(f, self.alphabet, terms)

    def mul_word_left(self, w):
        return NCPoly(self.field, self.alphabet, {w + u: v for u, v in self.terms.items()})

    def mul_word_right(self, w):
        return NCPoly(self.field, self.alphabet, {u + w: v for u, v in self.terms.items()})

    def degree(self):
        """Maximal word length, or None for the zero polynomial."""
        return max(map(len, self.terms)) if self.terms else None

    def constant_term(self):
        return self.terms.get("", self.field.zero)

    def is_aug_zero(self):
        return "" not in self.terms

    def is_zero(self):
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def __eq__(self, other):
        return (
            isinstance(other, NCPoly)
            and other.field == self.field
            and other.alphabet == self.alphabet
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.field, self.alphabet, tuple(self.sorted_terms())))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w, v in self.sorted_terms():
            s = self.field.to_str(v)
            word = w if w else "1"
            bits.append(word if s == "1" else f"{s}*{word}")
        return " + ".join(bits)


def nc_add(p: NCPoly, q: NCPoly) -> NCPoly:
    return p.add(q)


def nc_mul(p: NCPoly, q: NCPoly) -> NCPoly:
    return p.mul(q)


def nc_degree(p: NCPoly):
    return p.degree()


def words_up_to(alphabet, degree, *, start=1):
    """Nonempty words in length-lexicographic order (alphabet order within)."""
    alphabet = _check_alphabet(alphabet)
    out = []
    for n in range(start, degree + 1):
        out.extend("".join(t) for t in itertools.product(alphabet, repeat=n))
    return out


def decompose_right(q: NCPoly):
    """Write q = sum_u u . R_u over first letters u; q needs zero constant term."""
    if not q.is_aug_zero():
        raise NonzeroConstantTermError("decomposition needs zero constant term")
    parts = {u: {} for u in q.alphabet}
    for w, v in q.terms.items():
        parts[w[0]][w[1:]] = v
    return {u: NCPoly(q.field, q.alphabet, t) for u, t in parts.items()}


def decompose_left(q: NCPoly):
    """Write q = sum_v L_v . v over last letters v; q needs zero constant term."""
    if not q.is_aug_zero():
        raise NonzeroConstantTermError("decomposition needs zero constant term")
    parts = {u: {} for u in q.alphabet}
    for w, v in q.terms.items():
        parts[w[-1]][w[:-1]] = v
    return {u: NCPoly(q.field, q.alphabet, t) for u, t in parts.items()}


@dataclass(frozen=True)
class StarWitness:
    triple: tuple
    lhs: NCPoly
    rhs: NCPoly


class StarMap:
    """Assignment (x, y) -> polynomial with zero constant term, for letters x, y."""

    __slots__ = ("field", "alphabet", "table", "_verdict")

    def __init__(self, field, alphabet, table):
        self.field = field
        self.alphabet = _check_alphabet(alphabet)
        fixed = {}
        for x in self.alphabet:
            for y in self.alphabet:
                poly = table.get((x, y))
                if poly is None:
                    poly = NCPoly.zero(field, self.alphabet)
                if not isinstance(poly, NCPoly):
                    raise TypeError("star map entries must be NCPoly")
                if poly.field != field or poly.alphabet != self.alphabet:
                    raise AlphabetMismatchError("star image over wrong field or alphabet")
                if not poly.is_aug_zero():
                    raise NonzeroConstantTermError(f"image of ({x},{y}) has a constant term")
                fixed[(x, y)] = poly
        self.table = fixed
        self._verdict = None

    def image(self, x, y):
        return self.table[(x, y)]

    def max_degree(self):
        degs = [p.degree() for p in self.table.values() if not p.is_zero()]
        return max(degs) if degs else 0

    def condition_witness(self):
        if self._verdict is None:
            self._verdict = (_star_condition(self),)
        return self._verdict[0]

    def __repr__(self):
        return f"StarMap({self.alphabet}, {self.field})"


def _star_condition(sm: StarMap):
    for x in sm.alphabet:
        for y in sm.alphabet:
            left_parts = decompose_left(sm.image(x, y))
            for z in sm.alphabet:
                right_parts = decompose_right(sm.image(y, z))
                lhs = NCPoly.zero(sm.field, sm.alphabet)
                for v, L in left_parts.items():
                    if not L.is_zero():
                        lhs = lhs.add(L.mul(sm.image(v, z)))
                rhs = NCPoly.zero(sm.field, sm.alphabet)
                for u, R in right_parts.items():
                    if not R.is_zero():
                        rhs = rhs.add(sm.image(x, u).mul(R))
                if lhs != rhs:
                    return StarWitness((x, y, z), lhs, rhs)
    return None


def star_condition(sm: StarMap):
    """None when the extension condition holds; otherwise the first witness."""
    return sm.condition_witness()


def _extend_words(sm: StarMap, wa, wb):
    image = sm.image(wa[-1], wb[0])
    if wa[:-1]:
        image = image.mul_word_left(wa[:-1])
    if wb[1:]:
        image = image.mul_word_right(wb[1:])
    return image


def extend_star(sm: StarMap, a: NCPoly, b: NCPoly) -> NCPoly:
    """Bilinear extension a1 . (x star y) . b1 on words a = a1 x, b = y b1."""
    if sm.condition_witness() is not None:
        raise ConditionNotVerifiedError("star map fails the extension condition")
    if a.field != sm.field or a.alphabet != sm.alphabet:
        raise AlphabetMismatchError("left factor over wrong field or alphabet")
    if b.field != sm.field or b.alphabet != sm.alphabet:
        raise AlphabetMismatchError("right factor over wrong field or alphabet")
    if not (a.is_aug_zero() and b.is_aug_zero()):
        raise NonzeroConstantTermError("extension needs zero constant terms")
    f = sm.field
    out = NCPoly.zero(f, sm.alphabet)
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            out = out.add(_extend_words(sm, wa, wb).scale(f.mul(ca, cb)))
    return out


# Identity instances for truncated verification.  With star = extension of sm
# and dot = concatenation:
#   G1 = (a*b).c   G2 = (a.b)*c   G3 = a*(b.c)   G4 = a.(b*c)
_STAR_IDENTITIES = {
    "id-matching": (("G1", "G3"), ("G2", "G4")),
    "swap-matching": (("G1", "G4"), ("G2", "G3")),
    "interchangeable": (("G1", "G2"), ("G3", "G4")),
    "totally-compatible": (("G1", "G2"), ("G2", "G4"), ("G4", "G3")),
}


def _star_exprs(sm, wa, wb, wc):
    starred_ab = _extend_words(sm, wa, wb)
    starred_bc = _extend_words(sm, wb, wc)
    return {
        "G1": starred_ab.mul_word_right(wc),
        "G2": _extend_words(sm, wa + wb, wc),
        "G3": _extend_words(sm, wa, wb + wc),
        "G4": starred_bc.mul_word_left(wa),
    }


@dataclass(frozen=True)
class TruncatedWitness:
    identity: str
    words: tuple


def identity_witness_truncated(sm: StarMap, kind: str, total_degree_cap: int):
    """First violated identity instance over word triples of bounded total degree."""
    if kind not in _STAR_IDENTITIES:
        raise FreeAlgebraError(f"unknown identity family {kind!r}")
    if sm.condition_witness() is not None:
        raise ConditionNotVerifiedError("star map fails the extension condition")
    pairs = _STAR_IDENTITIES[kind]
    cap = total_degree_cap
    for ta in range(1, cap - 1):
        for tb in range(1, cap - ta):
            for tc in range(1, cap - ta - tb + 1):
                for wa in words_up_to(sm.alphabet, ta, start=ta):
                    for wb in words_up_to(sm.alphabet, tb, start=tb):
                        for wc in words_up_to(sm.alphabet, tc, start=tc):
                            exprs = _star_exprs(sm, wa, wb, wc)
                            for lhs, rhs in pairs:
                                if exprs[lhs] != exprs[rhs]:
                                    return TruncatedWitness(f"{lhs}={rhs}", (wa, wb, wc))
    return None


def verify_id_matching_truncated(sm: StarMap, degree: int):
    """Check the matching identities and associativity of the extension.

    Instances run over word triples with deg a + deg b + deg c + (maximal
    star image degree) <= degree; every side is computed exactly.
    """
    cap = degree - sm.max_degree()
    w = identity_witness_truncated(sm, "id-matching", cap)
    if w is not None:
        return w
    # associativity of the extension: (a*b)*c = a*(b*c)
    for ta in range(1, cap - 1):
        for tb in range(1, cap - ta):
            for tc in range(1, cap - ta - tb + 1):
                for wa in words_up_to(sm.alphabet, ta, start=ta):
                    for wb in words_up_to(sm.alphabet, tb, start=tb):
                        for wc in words_up_to(sm.alphabet, tc, start=tc):
                            ab = _extend_words(sm, wa, wb)
                            bc = _extend_words(sm, wb, wc)
                            c_poly = NCPoly.word(sm.field, sm.alphabet, wc)
                            a_poly = NCPoly.word(sm.field, sm.alphabet, wa)
                            lhs = extend_star(sm, ab, c_poly)
                            rhs = extend_star(sm, a_poly, bc)
                            if lhs != rhs:
                                return TruncatedWitness("(a*b)*c=a*(b*c)", (wa, wb, wc))
    return None


def concat_star(field, alphabet, scalar=1) -> StarMap:
    """x star y = scalar * xy; extends to scalar times concatenation."""
    table = {
        (x, y): NCPoly.word(field, alphabet, x + y, scalar)
        for x in alphabet
        for y in alphabet
    }
    return StarMap(field, alphabet, table)


def left_zero_star(field, alphabet) -> StarMap:
    """x star y = x, the left-zero semigroup structure on the letters."""
    table = {(x, y): NCPoly.var(field, alphabet, x) for x in alphabet for y in alphabet}
    return StarMap(field, alphabet, table)


def right_zero_star(field, alphabet) -> StarMap:
    table = {(x, y): NCPoly.var(field, alphabet, y) for x in alphabet for y in alphabet}
    return StarMap(field, alphabet, table)


def mutation_star(field, alphabet, p: NCPoly) -> StarMap:
    """x star y = x . p . y for a fixed polynomial p (constant term allowed)."""
    if p.field != field or p.alphabet != tuple(alphabet):
        raise AlphabetMismatchError("mutation polynomial over wrong field or alphabet")
    table = {}
    for x in alphabet:
        for y in alphabet:
            table[(x, y)] = p.mul_word_left(x).mul_word_right(y)
    return StarMap(field, alphabet, table)


# ---------------------------------------------------------------------------
# Commutative polynomials.


class CPoly:
    """Commutative polynomial: finite map exponent tuple -> coefficient."""

    __slots__ = ("field", "alphabet", "terms")

    def __init__(self, field, alphabet, terms=None):
        self.field = field
        self.alphabet = _check_alphabet(alphabet)
        k = len(self.alphabet)
        clean = {}
        for exps, v in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != k or any(e < 0 for e in exps):
                raise FreeAlgebraError(f"bad exponent tuple {exps!r}")
            v = field.coerce(v)
            if v != field.zero:
                clean[exps] = v
        self.terms = clean

    @classmethod
    def zero(cls, field, alphabet):
        return cls(field, alphabet, {})

    @classmethod
    def one(cls, field, alphabet):
        return cls(field, alphabet, {(0,) * len(tuple(alphabet)): 1})

    @classmethod
    def monomial(cls, field, alphabet, exps, coeff=1):
        return cls(field, alphabet, {tuple(exps): coeff})

    @classmethod
    def var(cls, field, alphabet, x):
        alphabet = tuple(alphabet)
        exps = [0] * len(alphabet)
        exps[alphabet.index(x)] = 1
        return cls.monomial(field, alphabet, exps)

    def _peer(self, other):
        if not isinstance(other, CPoly):
            raise TypeError("expected a CPoly")
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        if other.alphabet != self.alphabet:
            raise AlphabetMismatchError(f"{self.alphabet} vs {other.alphabet}")

    def add(self, other):
        self._peer(other)
        f = self.field
        terms = dict(self.terms)
        for e, v in other.terms.items():
            nv = f.add(terms.get(e, f.zero), v)
            if nv == f.zero:
                terms.pop(e, None)
            else:
                terms[e] = nv
        return CPoly(f, self.alphabet, terms)

    def scale(self, c):
        f = self.field
        c = f.coerce(c)
        if c == f.zero:
            return CPoly.zero(f, self.alphabet)
        return CPoly(f, self.alphabet, {e: f.mul(c, v) for e, v in self.terms.items()})

    def mul(self, other):
        self._peer(other)
        f = self.field
        terms = {}
        for e1, v1 in self.terms.items():
            for e2, v2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                nv = f.add(terms.get(e, f.zero), f.mul(v1, v2))
                if nv == f.zero:
                    terms.pop(e, None)
                else:
                    terms[e] = nv
        return CPoly(f, self.alphabet, terms)

    def degree(self):
        return max((sum(e) for e in self.terms), default=None)

    def constant_term(self):
        return self.terms.get((0,) * len(self.alphabet), self.field.zero)

    def is_aug_zero(self):
        return (0,) * len(self.alphabet) not in self.terms

    def is_zero(self):
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))

    def __eq__(self, other):
        return (
            isinstance(other, CPoly)
            and other.field == self.field
            and other.alphabet == self.alphabet
            and other.terms == self.terms
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, v in self.sorted_terms():
            mono = "*".join(
                f"{x}^{k}" if k > 1 else x for x, k in zip(self.alphabet, e) if k
            )
            s = self.field.to_str(v)
            if not mono:
                bits.append(s)
            elif s == "1":
                bits.append(mono)
            else:
                bits.append(f"{s}*{mono}")
        return " + ".join(bits)


class SingleVarShiftProduct:
    """a * b = (a.b / x^2) . p on K[x]^+, realized as an exponent shift."""

    def __init__(self, p: CPoly):
        if len(p.alphabet) != 1:
            raise WrongVariableCountError("single-variable product needs |X| = 1")
        if not p.is_aug_zero():
            raise NonzeroConstantTermError("p must have zero constant term")
        self.p = p
        self.field = p.field
        self.alphabet = p.alphabet

    def mul(self, a: CPoly, b: CPoly) -> CPoly:
        a._peer(self.p)
        b._peer(self.p)
        if not (a.is_aug_zero() and b.is_aug_zero()):
            raise NonzeroConstantTermError("factors must have zero constant term")
        f = self.field
        out = CPoly.zero(f, self.alphabet)
        for (m,), ca in a.terms.items():
            for (n,), cb in b.terms.items():
                shift = CPoly.monomial(f, self.alphabet, (m + n - 2,), f.mul(ca, cb))
                out = out.add(shift.mul(self.p))
        return out


class MultiplierProduct:
    """a * b = p . a . b, the product determined by multiplication by p."""

    def __init__(self, p: CPoly, *, require_multi=True):
        if require_multi and len(p.alphabet) < 2:
            raise WrongVariableCountError("multiplier product is for |X| >= 2")
        self.p = p
        self.field = p.field
        self.alphabet = p.alphabet

    def mul(self, a: CPoly, b: CPoly) -> CPoly:
        a._peer(self.p)
        b._peer(self.p)
        return self.p.mul(a).mul(b)


def cpoly_single_var_product(p: CPoly) -> SingleVarShiftProduct:
    return SingleVarShiftProduct(p)


def cpoly_multi_var_product(p: CPoly) -> MultiplierProduct:
    return MultiplierProduct(p)


def monomials_up_to(alphabet, degree, *, start=1):
    """Exponent tuples of total degree in [start, degree], degree-major order."""
    alphabet = _check_alphabet(alphabet)
    k = len(alphabet)
    out = []
    for total in range(start, degree + 1):
        for combo in itertools.combinations_with_replacement(range(k), total):
            e = [0] * k
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def cpoly_identity_suite(star, d: int):
    """All pairwise mixed-triple identities on monomial triples of degree <= d.

    Passing means every id-matching, swap-matching, interchangeable and
    totally-compatible identity instance holds.  Returns None or a witness.
    """
    field, alphabet = star.field, star.alphabet
    monos = monomials_up_to(alphabet, d - 2)
    for ea in monos:
        pa = CPoly.monomial(field, alphabet, ea)
        for eb in monos:
            if sum(ea) + sum(eb) >= d:
                continue
            pb = CPoly.monomial(field, alphabet, eb)
            for ec in monos:
                if sum(ea) + sum(eb) + sum(ec) > d:
                    continue
                pc = CPoly.monomial(field, alphabet, ec)
                g1 = star.mul(pa, pb).mul(pc)
                g2 = star.mul(pa.mul(pb), pc)
                g3 = star.mul(pa, pb.mul(pc))
                g4 = pa.mul(star.mul(pb, pc))
                for name, lhs, rhs in (
                    ("G1=G3", g1, g3),
                    ("G2=G4", g2, g4),
                    ("G1=G4", g1, g4),
                    ("G2=G3", g2, g3),
                    ("G1=G2", g1, g2),
                    ("G3=G4", g3, g4),
                ):
                    if lhs != rhs:
                        return TruncatedWitness(name, (ea, eb, ec))
    return None


# ---------------------------------------------------------------------------
# Truncated centroid computation (quotient by degree > cap).


def truncated_centroid_dim(kind: str, alphabet, degree: int, field=QQ) -> int:
    """Dimension of the centroid equations' solution space under truncation.

    Linear maps act on the span of words (or nonconstant monomials) of
    degree <= `degree`; the equations x.phi(y) = phi(x.y) = phi(x).y run
    over pairs with deg x + deg y <= `degree` and are compared in the
    quotient that drops components of degree above the cap.
    """
    if degree < 2:
        raise FreeAlgebraError("degree cap must be at least 2")
    if kind == "nc":
        if len(tuple(alphabet)) < 2:
            raise WrongVariableCountError("noncommutative centroid needs |X| >= 2")
        carrier = words_up_to(alphabet, degree)
        combine = lambda w1, w2: w1 + w2
        deg = len
        strip_prefix = lambda t, w: t[len(w):] if t.startswith(w) and len(t) > len(w) else None
        strip_suffix = lambda t, w: t[: -len(w)] if t.endswith(w) and len(t) > len(w) else None
    elif kind == "commutative":
        carrier = monomials_up_to(alphabet, degree)
        combine = lambda e1, e2: tuple(a + b for a, b in zip(e1, e2))
        deg = sum

        def strip_prefix(t, w):
            diff = tuple(a - b for a, b in zip(t, w))
            if any(x < 0 for x in diff) or not any(diff):
                return None
            return diff

        strip_suffix = strip_prefix
    else:
        raise FreeAlgebraError(f"unknown centroid kind {kind!r}")
    index = {w: i for i, w in enumerate(carrier)}
    size = len(carrier)
    f = field
    rows = []
    for w1 in carrier:
        for w2 in carrier:
            if deg(w1) + deg(w2) > degree:
                continue
            w = combine(w1, w2)
            for t in carrier:
                # phi(w)[t] - (w1 . phi(w2))[t] = 0
                row = {index[w] * size + index[t]: f.one}
                s = strip_prefix(t, w1)
                if s is not None and deg(s) <= degree:
                    col = index[w2] * size + index[s]
                    row[col] = f.sub(row.get(col, f.zero), f.one)
                rows.append({c: v for c, v in row.items() if v != f.zero})
                # phi(w)[t] - (phi(w1) . w2)[t] = 0
                row = {index[w] * size + index[t]: f.one}
                s = strip_suffix(t, w2)
                if s is not None and deg(s) <= degree:
                    col = index[w1] * size + index[s]
                    row[col] = f.sub(row.get(col, f.zero), f.one)
                rows.append({c: v for c, v in row.items() if v != f.zero})
    return kernel_from_rows(f, size * size, rows).dim


def generator_chain_space(alphabet, degree: int, field=QQ) -> Subspace:
    """Solutions of (a*b).c = a.(b*c) on letters, unknowns x*y of degree <= cap.

    These are the chain equalities expressible when only the generator star
    values are unknown; the expected space is spanned by concatenation.
    """
    alphabet = _check_alphabet(alphabet)
    words = words_up_to(alphabet, degree)
    windex = {w: i for i, w in enumerate(words)}
    pairs = [(x, y) for x in alphabet for y in alphabet]
    pindex = {p: i for i, p in enumerate(pairs)}
    nwords = len(words)
    f = field

    def col(pair, w):
        return pindex[pair] * nwords + windex[w]

    rows = []
    # coordinates live on words of degree 2 .. degree + 1
    coords = words_up_to(alphabet, degree + 1, start=2)
    for a in alphabet:
        for b in alphabet:
            for c in alphabet:
                for t in coords:
                    row = {}
                    # (a*b).c contributes S_ab[w] at t = w.c
                    if t.endswith(c) and len(t) > 1 and (t[:-1] in windex):
                        row[col((a, b), t[:-1])] = f.one
                    # a.(b*c) contributes S_bc[w] at t = a.w
                    if t.startswith(a) and len(t) > 1 and (t[1:] in windex):
                        key = col((b, c), t[1:])
                        row[key] = f.sub(row.get(key, f.zero), f.one)
                    row = {k: v for k, v in row.items() if v != f.zero}
                    if row:
                        rows.append(row)
    return kernel_from_rows(f, len(pairs) * nwords, rows)


def concatenation_coords(alphabet, degree: int, field=QQ):
    """Coordinates of the concatenation star in the generator_chain_space layout."""
    alphabet = _check_alphabet(alphabet)
    words = words_up_to(alphabet, degree)
    windex = {w: i for i, w in enumerate(words)}
    pairs = [(x, y) for x in alphabet for y in alphabet]
    vec = [field.zero] * (len(pairs) * len(words))
    for i, (x, y) in enumerate(pairs):
        vec[i * len(words) + windex[x + y]] = field.one
    return vec


# ---------------------------------------------------------------------------
# Serialization.


def ncpoly_to_json(p: NCPoly):
    return [[w, p.field.to_str(v)] for w, v in p.sorted_terms()]


def ncpoly_from_json(field, alphabet, data) -> NCPoly:
    if not isinstance(data, list):
        raise FreeAlgebraError("polynomial document must be a list of [word, coeff]")
    terms = {}
    f = field
    for entry in data:
        if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[0], str)):
            raise FreeAlgebraError(f"bad polynomial entry {entry!r}")
        w, c = entry
        terms[w] = f.add(terms.get(w, f.zero), f.parse(c))
    return NCPoly(field, alphabet, terms)


def starmap_to_json(sm: StarMap):
    from .linalg import field_to_json

    return {
        "field": field_to_json(sm.field),
        "vars": list(sm.alphabet),
        "table": {
            f"{x},{y}": ncpoly_to_json(sm.image(x, y))
            for x in sm.alphabet
            for y in sm.alphabet
            if not sm.image(x, y).is_zero()
        },
    }


def starmap_from_json(obj) -> StarMap:
    from .linalg import LinalgError, field_from_json

    if not isinstance(obj, dict):
        raise FreeAlgebraError("star map document must be a JSON object")
    try:
        field = field_from_json(obj.get("field"))
    except LinalgError as exc:
        raise FreeAlgebraError(str(exc)) from None
    alphabet = obj.get("vars")
    if not (isinstance(alphabet, list) and alphabet):
        raise FreeAlgebraError("star map document needs 'vars'")
    alphabet = _check_alphabet(alphabet)
    table = {}
    raw = obj.get("table", {})
    if not isinstance(raw, dict):
        raise FreeAlgebraError("'table' must be an object keyed by 'x,y'")
    for key, val in raw.items():
        parts = key.split(",")
        if len(parts) != 2 or any(p not in alphabet for p in parts):
            raise FreeAlgebraError(f"bad star map key {key!r}")
        table[(parts[0], parts[1])] = ncpoly_from_json(field, alphabet, val)
    return StarMap(field, alphabet, table)

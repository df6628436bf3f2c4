"""Brute-force ground truth over small general linear groups.

Everything in this module is computed by explicit enumeration over a finite
field with q = p^e elements: matrices are tuples of field-element encodings,
invertibility is Gaussian elimination, centralizers are full scans of the
group, and minimal polynomials come from the first linear dependency among
the powers of a matrix.  Field elements are encoded as integers 0..q-1 (the
base-p digit vector of the residue polynomial); the field modulus is the
lexicographically least monic irreducible of the right degree, so every
enumeration order is reproducible.

Scans over prime fields are vectorised with numpy, which changes nothing
about their exhaustive semantics.  Two budgets protect against accidentally
huge runs: a cap on the group order for enumeration, and a cap on scan steps
for the quadratic tasks (a full centralizer census of GL_3(4) would take
3.3e10 pair checks and is refused by default).

On the lower-bound constant used by the proportion checks: the measured
proportion of cyclic matrices is compared against the exact estimate
(1 - q^-5)/(1 + q^-3) - 1/(q^n (q-1)) and its expanded weakening
1 - q^-3 - q^-5 + q^-6 - q^-n.  The final term enters with a minus sign;
superficially similar forms with +q^-n or -q^n in that position are not
equivalent and are not used here.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from glcensus.census import _check_prime_power, gl_order


class BudgetError(RuntimeError):
    """A task would exceed the configured enumeration or scan budget."""

    def __init__(self, message: str, required: int, allowed: int):
        super().__init__(f"{message} (required {required}, budget {allowed})")
        self.required = required
        self.allowed = allowed


@dataclass(frozen=True)
class Budget:
    """Caps for oracle tasks: group elements enumerated, and scan steps."""

    elements: int = 200_000
    steps: int = 1_000_000_000


DEFAULT_BUDGET = Budget()


def _budget(budget: Budget | None) -> Budget:
    return budget if budget is not None else DEFAULT_BUDGET


# ---------------------------------------------------------------------------
# finite fields
#
# Polynomials over F_p (and over F_q) are ascending coefficient tuples.


def _pf_trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _pf_divmod(a, b, p):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, p - 2, p)
    quo = [0] * max(len(a) - db, 0)
    for i in range(len(a) - db - 1, -1, -1):
        c = a[i + db] * inv_lb % p
        if c:
            quo[i] = c
            for j, bc in enumerate(b):
                a[i + j] = (a[i + j] - c * bc) % p
    return _pf_trim(quo), _pf_trim(a)


def _pf_is_irreducible(f, p) -> bool:
    """Trial division by all monic polynomials of degree <= deg(f)/2."""
    d = len(f) - 1
    if d == 1:
        return True
    for deg in range(1, d // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            g = tail + (1,)
            if not _pf_divmod(f, g, p)[1]:
                return False
    return True


class Fq:
    """The field with q = p^e elements, with dense add/mul/inv tables.

    Elements are integers 0..q-1 encoding base-p digit vectors.  Addition of
    encodings is digit-wise mod p; multiplication reduces modulo the fixed
    irreducible modulus.
    """

    def __init__(self, q: int):
        p, e = _check_prime_power(q)
        self.q = q
        self.p = p
        self.e = e
        self.modulus = self._least_irreducible_modulus()
        self._build_tables()

    def _least_irreducible_modulus(self) -> tuple[int, ...]:
        p, e = self.p, self.e
        if e == 1:
            return (0, 1)
        for enc in range(p**e):
            low = self._decode(enc)
            f = tuple(low) + (0,) * (e - len(low)) + (1,)
            if _pf_is_irreducible(f, p):
                return f
        raise AssertionError("no irreducible modulus found")

    def _decode(self, enc: int) -> list[int]:
        digits = []
        while enc:
            enc, r = divmod(enc, self.p)
            digits.append(r)
        return digits

    def _encode(self, digits) -> int:
        enc = 0
        for d in reversed(list(digits)):
            enc = enc * self.p + d
        return enc

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            da = self._decode(a)
            for b in range(a, q):
                db = self._decode(b)
                s = [0] * max(len(da), len(db))
                for i, c in enumerate(da):
                    s[i] = c
                for i, c in enumerate(db):
                    s[i] = (s[i] + c) % p
                add[a][b] = add[b][a] = self._encode(s)
                prod = [0] * (len(da) + len(db) - 1 or 1)
                for i, ca in enumerate(da):
                    if ca:
                        for j, cb in enumerate(db):
                            prod[i + j] = (prod[i + j] + ca * cb) % p
                _, rem = _pf_divmod(tuple(prod), self.modulus, p)
                mul[a][b] = mul[b][a] = self._encode(rem)
        self.add_table = tuple(tuple(r) for r in add)
        self.mul_table = tuple(tuple(r) for r in mul)
        neg = [0] * q
        inv = [0] * q
        for a in range(q):
            for b in range(q):
                if self.add_table[a][b] == 0:
                    neg[a] = b
                if a and self.mul_table[a][b] == 1:
                    inv[a] = b
        self.neg_table = tuple(neg)
        self.inv_table = tuple(inv)

    # element operations
    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return self.inv_table[a]

    def __eq__(self, other) -> bool:
        return isinstance(other, Fq) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("Fq", self.q))

    def __repr__(self) -> str:
        return f"Fq({self.q})"


@lru_cache(maxsize=None)
def get_field(q: int) -> Fq:
    return Fq(q)


# ---------------------------------------------------------------------------
# polynomials over Fq


def fqpoly_trim(field: Fq, c) -> tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def fqpoly_mul(field: Fq, a, b) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = field.add(out[i + j], field.mul(ca, cb))
    return fqpoly_trim(field, out)


def fqpoly_pow(field: Fq, f, m: int) -> tuple[int, ...]:
    result = (1,)
    for _ in range(m):
        result = fqpoly_mul(field, result, f)
    return result


def fqpoly_divmod(field: Fq, a, b):
    a = list(a)
    db = len(b) - 1
    inv_lb = field.inv(b[-1])
    quo = [0] * max(len(a) - db, 0)
    for i in range(len(a) - db - 1, -1, -1):
        c = field.mul(a[i + db], inv_lb)
        if c:
            quo[i] = c
            for j, bc in enumerate(b):
                a[i + j] = field.sub(a[i + j], field.mul(c, bc))
    return fqpoly_trim(field, quo), fqpoly_trim(field, a)


def fqpoly_is_irreducible(field: Fq, f) -> bool:
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    for deg in range(1, d // 2 + 1):
        for tail in itertools.product(range(field.q), repeat=deg):
            g = tail + (1,)
            if not fqpoly_divmod(field, f, g)[1]:
                return False
    return True


def monic_irreducibles(field: Fq, degree: int) -> list[tuple[int, ...]]:
    out = []
    for tail in itertools.product(range(field.q), repeat=degree):
        f = tail + (1,)
        if fqpoly_is_irreducible(field, f):
            out.append(f)
    return out


def fqpoly_str(f) -> str:
    if not f:
        return "0"
    parts = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            head = "" if c == 1 else f"{c}*"
            parts.append(f"{head}t" if i == 1 else f"{head}t^{i}")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class FqMatrix:
    field: Fq
    rows: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    @staticmethod
    def identity(field: Fq, n: int) -> FqMatrix:
        return FqMatrix(field, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def scalar(field: Fq, n: int, c: int) -> FqMatrix:
        return FqMatrix(field, tuple(tuple(c if i == j else 0 for j in range(n)) for i in range(n)))

    def __matmul__(self, other: FqMatrix) -> FqMatrix:
        F = self.field
        n = self.n
        brows = other.rows
        out = []
        for i in range(n):
            arow = self.rows[i]
            row = []
            for j in range(n):
                acc = 0
                for k in range(n):
                    acc = F.add(acc, F.mul(arow[k], brows[k][j]))
                row.append(acc)
            out.append(tuple(row))
        return FqMatrix(F, tuple(out))

    def __sub__(self, other: FqMatrix) -> FqMatrix:
        F = self.field
        return FqMatrix(F, tuple(
            tuple(F.sub(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)
        ))

    def commutes_with(self, other: FqMatrix) -> bool:
        return (self @ other) == (other @ self)

    def rank(self) -> int:
        F = self.field
        m = [list(r) for r in self.rows]
        n = self.n
        rank = 0
        for col in range(n):
            pivot = next((r for r in range(rank, n) if m[r][col]), None)
            if pivot is None:
                continue
            m[rank], m[pivot] = m[pivot], m[rank]
            inv = F.inv(m[rank][col])
            m[rank] = [F.mul(inv, x) for x in m[rank]]
            for r in range(n):
                if r != rank and m[r][col]:
                    c = m[r][col]
                    m[r] = [F.sub(x, F.mul(c, y)) for x, y in zip(m[r], m[rank])]
            rank += 1
        return rank

    def is_invertible(self) -> bool:
        return self.rank() == self.n

    def inverse(self) -> FqMatrix:
        F = self.field
        n = self.n
        m = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.rows)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if m[r][col]), None)
            if pivot is None:
                raise ZeroDivisionError("matrix is singular")
            m[col], m[pivot] = m[pivot], m[col]
            inv = F.inv(m[col][col])
            m[col] = [F.mul(inv, x) for x in m[col]]
            for r in range(n):
                if r != col and m[r][col]:
                    c = m[r][col]
                    m[r] = [F.sub(x, F.mul(c, y)) for x, y in zip(m[r], m[col])]
        return FqMatrix(F, tuple(tuple(row[n:]) for row in m))

    def encode(self) -> int:
        enc = 0
        for row in self.rows:
            for x in row:
                enc = enc * self.field.q + x
        return enc

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.rows)


def matrix_from_flat(field: Fq, n: int, entries) -> FqMatrix:
    entries = list(entries)
    return FqMatrix(field, tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(n)))


# ---------------------------------------------------------------------------
# minimal and characteristic polynomials


def _vec(M: FqMatrix) -> tuple[int, ...]:
    return tuple(x for row in M.rows for x in row)


def min_poly(M: FqMatrix) -> tuple[int, ...]:
    """Monic minimal polynomial, ascending coefficients, via the first
    linear dependency among I, M, M^2, ... in the n^2-dimensional space."""
    F = M.field
    n = M.n
    basis: list[tuple[int, list[int], list[int]]] = []  # (pivot, vector, combo)
    power = FqMatrix.identity(F, n)
    for k in range(n + 1):
        vec = list(_vec(power))
        combo = [0] * (n + 1)
        combo[k] = 1
        for pivot, bvec, bcombo in basis:
            c = vec[pivot]
            if c:
                vec = [F.sub(x, F.mul(c, y)) for x, y in zip(vec, bvec)]
                combo = [F.sub(x, F.mul(c, y)) for x, y in zip(combo, bcombo)]
        if not any(vec):
            lead_inv = F.inv(combo[k])
            return tuple(F.mul(lead_inv, c) for c in combo[: k + 1])
        pivot = next(i for i, x in enumerate(vec) if x)
        inv = F.inv(vec[pivot])
        vec = [F.mul(inv, x) for x in vec]
        combo = [F.mul(inv, x) for x in combo]
        basis.append((pivot, vec, combo))
        power = power @ M
    raise AssertionError("no dependency among n+1 matrix powers")


def char_poly(M: FqMatrix) -> tuple[int, ...]:
    """Characteristic polynomial det(tI - M), ascending, by the
    division-free principal-minor recursion (Berkowitz)."""
    F = M.field
    n = M.n
    rows = M.rows
    # p holds det(tI - A_r) for the leading r x r block, descending degrees
    p = [1, F.neg(rows[0][0])]
    for r in range(2, n + 1):
        a = rows[r - 1][r - 1]
        row = [rows[r - 1][j] for j in range(r - 1)]
        col = [rows[i][r - 1] for i in range(r - 1)]
        q_vec = [1, F.neg(a)]
        vec = col
        for _ in range(r - 1):
            acc = 0
            for x, y in zip(row, vec):
                acc = F.add(acc, F.mul(x, y))
            q_vec.append(F.neg(acc))
            nxt = []
            for i in range(r - 1):
                s = 0
                for k in range(r - 1):
                    s = F.add(s, F.mul(rows[i][k], vec[k]))
                nxt.append(s)
            vec = nxt
        new_p = [0] * (r + 1)
        for i, qi in enumerate(q_vec):
            if qi and i <= r:
                for j, pj in enumerate(p):
                    if pj and i + j <= r:
                        new_p[i + j] = F.add(new_p[i + j], F.mul(qi, pj))
        p = new_p
    return tuple(reversed(p))


def is_cyclic(M: FqMatrix) -> bool:
    """True when the minimal polynomial has full degree n."""
    return len(min_poly(M)) - 1 == M.n


# ---------------------------------------------------------------------------
# block matrices from the module classification


def jm_block(field: Fq, f: tuple[int, ...], m: int) -> FqMatrix:
    """Block matrix with m companion blocks of the monic polynomial f on the
    diagonal and identity blocks on the superdiagonal; its minimal (and
    characteristic) polynomial is f^m."""
    d = len(f) - 1
    if d < 1 or f[-1] != 1:
        raise ValueError("f must be monic of degree at least 1")
    n = d * m
    rows = [[0] * n for _ in range(n)]
    for b in range(m):
        off = b * d
        for i in range(d - 1):
            rows[off + i][off + i + 1] = 1
        for j in range(d):
            rows[off + d - 1][off + j] = field.neg(f[j])
        if b + 1 < m:
            for i in range(d):
                rows[off + i][off + d + i] = 1
    return FqMatrix(field, tuple(tuple(r) for r in rows))


def regular_unipotent(field: Fq, n: int) -> FqMatrix:
    """The full Jordan block with eigenvalue 1: minimal polynomial (t-1)^n."""
    one_minus_t = (field.neg(1), 1)  # t - 1
    return jm_block(field, one_minus_t, n)


def noncyclic_centralizer_witness() -> FqMatrix:
    """A 4x4 unipotent matrix over F_2 contained in no cyclic-matrix
    centralizer: its own centralizer has order 16 and no cyclic member."""
    return FqMatrix(get_field(2), ((1, 0, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1), (0, 0, 0, 1)))


# ---------------------------------------------------------------------------
# group enumeration and scans


class GLGroup:
    """Fully enumerated GL_n(q) in lexicographic entry order, with caches."""

    def __init__(self, n: int, q: int):
        self.n = n
        self.q = q
        self.field = get_field(q)
        self.order = gl_order(n).eval_int(q)
        mats = []
        for entries in itertools.product(range(q), repeat=n * n):
            M = matrix_from_flat(self.field, n, entries)
            if M.is_invertible():
                mats.append(M)
        if len(mats) != self.order:
            raise AssertionError("enumeration does not match the group order")
        self.mats: tuple[FqMatrix, ...] = tuple(mats)
        self._index = {M.rows: i for i, M in enumerate(mats)}
        self._np: np.ndarray | None = None
        self._cyclic: tuple[bool, ...] | None = None
        self._census: tuple[tuple[int, ...], tuple[tuple[int, ...], ...]] | None = None

    def index_of(self, M: FqMatrix) -> int:
        return self._index[M.rows]

    @property
    def np_mats(self) -> np.ndarray:
        if self._np is None:
            self._np = np.array([[list(r) for r in M.rows] for M in self.mats], dtype=np.int64)
        return self._np

    def center_indices(self) -> tuple[int, ...]:
        out = []
        for c in range(1, self.q):
            out.append(self.index_of(FqMatrix.scalar(self.field, self.n, c)))
        return tuple(sorted(out))

    def cyclic_flags(self) -> tuple[bool, ...]:
        if self._cyclic is None:
            self._cyclic = tuple(is_cyclic(M) for M in self.mats)
        return self._cyclic

    def commuting_indices(self, M: FqMatrix) -> tuple[int, ...]:
        """Indices of every group element commuting with M (full scan)."""
        if self.field.e == 1:
            A = self.np_mats
            B = np.array([list(r) for r in M.rows], dtype=np.int64)
            left = np.matmul(A, B) % self.q
            right = np.matmul(B, A) % self.q
            mask = (left == right).all(axis=(1, 2))
            return tuple(int(i) for i in np.flatnonzero(mask))
        return tuple(i for i, H in enumerate(self.mats) if H.commutes_with(M))

    def cyclic_centralizer_census(self) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
        """(representatives, member sets) of all distinct centralizers of
        cyclic elements, with the partition cross-check enforced.

        Each cyclic element lies in exactly one such centralizer, so scanning
        only uncovered cyclic elements is exhaustive; the cross-check below
        (distinctness plus the counting identity) would expose any violation.
        """
        if self._census is not None:
            return self._census
        flags = self.cyclic_flags()
        covered = [False] * self.order
        reps: list[int] = []
        sets: list[tuple[int, ...]] = []
        for idx, cyc in enumerate(flags):
            if not cyc or covered[idx]:
                continue
            members = self.commuting_indices(self.mats[idx])
            reps.append(idx)
            sets.append(members)
            for j in members:
                if flags[j]:
                    covered[j] = True
        if len(set(sets)) != len(sets):
            raise AssertionError("distinct-centralizer collision: uniqueness violated")
        inside = sum(sum(1 for j in s if flags[j]) for s in sets)
        if inside != sum(flags):
            raise AssertionError("cyclic elements are not partitioned by their centralizers")
        self._census = (tuple(reps), tuple(sets))
        return self._census


@lru_cache(maxsize=None)
def _gl_group_cached(n: int, q: int) -> GLGroup:
    return GLGroup(n, q)


def gl_group(n: int, q: int, budget: Budget | None = None) -> GLGroup:
    budget = _budget(budget)
    order = gl_order(n).eval_int(q)
    if order > budget.elements:
        raise BudgetError(f"|GL_{n}({q})| exceeds the enumeration budget", order, budget.elements)
    return _gl_group_cached(n, q)


def enumerate_gl(n: int, q: int, budget: Budget | None = None) -> tuple[FqMatrix, ...]:
    """All invertible n x n matrices over F_q, lexicographic by entries."""
    return gl_group(n, q, budget).mats


def cyclic_proportion(n: int, q: int, budget: Budget | None = None) -> Fraction:
    """Exact fraction of elements whose characteristic and minimal
    polynomials coincide."""
    group = gl_group(n, q, budget)
    return Fraction(sum(group.cyclic_flags()), group.order)


def wall_bound_terms(n: int, q: int) -> dict[str, Fraction]:
    """The two exact lower bounds the measured proportion must satisfy."""
    qf = Fraction(q)
    main = (1 - qf**-5) / (1 + qf**-3)
    return {
        "estimate_minus_error": main - Fraction(1, q**n * (q - 1)),
        "expanded_lower": 1 - qf**-3 - qf**-5 + qf**-6 - qf**-n,
    }


@dataclass(frozen=True)
class CentralizerSet:
    """A centralizer realised as a sorted tuple of group-element indices."""

    n: int
    q: int
    members: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)


def centralizer(M: FqMatrix, budget: Budget | None = None) -> CentralizerSet:
    """Exact centralizer of M inside its ambient GL_n(q), by full scan."""
    n = M.n
    q = M.field.q
    group = gl_group(n, q, budget)
    return CentralizerSet(n=n, q=q, members=group.commuting_indices(M))


def count_cyclic_centralizers(n: int, q: int,
                              budget: Budget | None = None) -> tuple[int, tuple[int, ...]]:
    """Number of distinct centralizers of cyclic matrices, plus one cyclic
    representative index per centralizer (the least, so output is stable)."""
    budget = _budget(budget)
    group = gl_group(n, q, budget)
    if group.order * group.order > budget.steps:
        raise BudgetError(
            f"centralizer census of GL_{n}({q}) exceeds the scan budget",
            group.order * group.order, budget.steps,
        )
    reps, sets = group.cyclic_centralizer_census()
    return len(sets), reps


def normalizer_of_set(cset: CentralizerSet, budget: Budget | None = None) -> int:
    """Order of {g : g C g^-1 = C}, by scanning the whole group."""
    budget = _budget(budget)
    group = gl_group(cset.n, cset.q, budget)
    if group.order * cset.order > budget.steps:
        raise BudgetError(
            "normalizer scan exceeds the scan budget",
            group.order * cset.order, budget.steps,
        )
    member_rows = [group.mats[i] for i in cset.members]
    if group.field.e == 1:
        A = group.np_mats
        C = np.array([[list(r) for r in M.rows] for M in member_rows], dtype=np.int64)
        q = cset.q
        n = cset.n
        powers = q ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
        target = np.sort(C.reshape(len(member_rows), -1) @ powers)
        inverses = np.array(
            [[list(r) for r in group.mats[i].inverse().rows] for i in range(group.order)],
            dtype=np.int64,
        )
        count = 0
        chunk = 512
        for start in range(0, group.order, chunk):
            G = A[start:start + chunk]
            Gi = inverses[start:start + chunk]
            conj = np.matmul(np.matmul(G[:, None], C[None, :]) % q, Gi[:, None]) % q
            encs = np.sort(conj.reshape(G.shape[0], len(member_rows), -1) @ powers, axis=1)
            count += int((encs == target).all(axis=1).sum())
        return count
    member_set = frozenset(M.rows for M in member_rows)
    count = 0
    for g in group.mats:
        ginv = g.inverse()
        if frozenset((g @ M @ ginv).rows for M in member_rows) == member_set:
            count += 1
    return count

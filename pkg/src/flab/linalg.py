"""Exact linear algebra over the supported coefficient rings.

Fields use Gaussian elimination to reduced row echelon form.  Z uses the
Hermite normal form, Z/m the Howell normal form, and the cyclotomic ring is
handled by restriction of scalars to Z (one lattice coordinate per power of
the root of unity).  All forms are canonical, so subspaces compare by their
stored rows.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .errors import InputError
from .rings import CyclotomicRing, Ring, xgcd

# ---------------------------------------------------------------------------
# field elimination


def rref(ring: Ring, rows: Sequence[Sequence]) -> list[list]:
    """Reduced row echelon form over a field; zero rows dropped."""
    assert ring.is_field
    mat = [[ring.canon(x) for x in row] for row in rows]
    out: list[list] = []
    piv_cols: list[int] = []
    width = len(mat[0]) if mat else 0
    for col in range(width):
        piv = None
        for row in mat:
            if not ring.is_zero(row[col]):
                piv = row
                break
        if piv is None:
            continue
        mat.remove(piv)
        inv = ring.inv(piv[col])
        piv = [ring.mul(inv, x) for x in piv]
        for dst in (mat, out):
            for i, row in enumerate(dst):
                f = row[col]
                if not ring.is_zero(f):
                    dst[i] = [ring.sub(x, ring.mul(f, p)) for x, p in zip(row, piv)]
        out.append(piv)
        piv_cols.append(col)
        mat = [r for r in mat if any(not ring.is_zero(x) for x in r)]
    return out


def rref_with_transform(ring: Ring, rows: Sequence[Sequence]) -> tuple[list[list], list[list], list[int]]:
    """RREF plus transform: returns (R, T, piv_cols) with T @ rows == R.

    Zero rows are kept (trailing) so T stays square.
    """
    assert ring.is_field
    n = len(rows)
    width = len(rows[0]) if rows else 0
    mat = [[ring.canon(x) for x in row] + [ring.one() if j == i else ring.zero() for j in range(n)]
           for i, row in enumerate(rows)]
    out: list[list] = []
    piv_cols: list[int] = []
    for col in range(width):
        piv = None
        for row in mat:
            if not ring.is_zero(row[col]):
                piv = row
                break
        if piv is None:
            continue
        mat.remove(piv)
        inv = ring.inv(piv[col])
        piv = [ring.mul(inv, x) for x in piv]
        for dst in (mat, out):
            for i, row in enumerate(dst):
                f = row[col]
                if not ring.is_zero(f):
                    dst[i] = [ring.sub(x, ring.mul(f, p)) for x, p in zip(row, piv)]
        out.append(piv)
        piv_cols.append(col)
    full = out + mat
    return [r[:width] for r in full], [r[width:] for r in full], piv_cols


def field_solve(ring: Ring, rows: Sequence[Sequence], target: Sequence):
    """Coefficients c with sum(c_i * rows_i) == target, or None."""
    if not rows:
        return None if any(not ring.is_zero(ring.canon(x)) for x in target) else []
    red, trans, piv_cols = rref_with_transform(ring, rows)
    vec = [ring.canon(x) for x in target]
    coeff = [ring.zero()] * len(rows)
    for row, t, col in zip(red, trans, piv_cols):
        f = vec[col]
        if ring.is_zero(f):
            continue
        vec = [ring.sub(x, ring.mul(f, y)) for x, y in zip(vec, row)]
        coeff = [ring.add(c, ring.mul(f, u)) for c, u in zip(coeff, t)]
    if any(not ring.is_zero(x) for x in vec):
        return None
    return coeff


def field_kernel(ring: Ring, mat: Sequence[Sequence], width: int) -> list[list]:
    """Basis of {x : mat @ x == 0} over a field (mat given as rows)."""
    red = rref(ring, mat) if mat else []
    piv_cols = []
    for row in red:
        for j, x in enumerate(row):
            if not ring.is_zero(x):
                piv_cols.append(j)
                break
    free_cols = [j for j in range(width) if j not in piv_cols]
    basis = []
    for fc in free_cols:
        vec = [ring.zero()] * width
        vec[fc] = ring.one()
        for row, pc in zip(red, piv_cols):
            vec[pc] = ring.neg(row[fc])
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# integer lattices (Hermite normal form)


def hnf(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Canonical row Hermite normal form; zero rows dropped."""
    mat = [list(map(int, r)) for r in rows if any(r)]
    width = len(rows[0]) if rows else 0
    out: list[list[int]] = []
    for col in range(width):
        live = [r for r in mat if r[col] != 0]
        if not live:
            continue
        piv = live[0]
        mat.remove(piv)
        for r in live[1:]:
            mat.remove(r)
            a, b = piv[col], r[col]
            g, s, t = xgcd(a, b)
            piv, r = (
                [s * x + t * y for x, y in zip(piv, r)],
                [(a // g) * y - (b // g) * x for x, y in zip(piv, r)],
            )
            if any(r):
                mat.append(r)
        if piv[col] < 0:
            piv = [-x for x in piv]
        for i, row in enumerate(out):
            q = row[col] // piv[col]
            if q:
                out[i] = [x - q * y for x, y in zip(row, piv)]
        out.append(piv)
    return out


def hnf_with_transform(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """(H, U) with U unimodular, U @ rows == H (zero rows of H kept)."""
    n = len(rows)
    width = len(rows[0]) if rows else 0
    aug = [list(map(int, r)) + [1 if j == i else 0 for j in range(n)] for i, r in enumerate(rows)]
    out: list[list[int]] = []
    mat = list(aug)
    for col in range(width):
        live = [r for r in mat if r[col] != 0]
        if not live:
            continue
        piv = live[0]
        mat.remove(piv)
        for r in live[1:]:
            mat.remove(r)
            a, b = piv[col], r[col]
            g, s, t = xgcd(a, b)
            piv, r = (
                [s * x + t * y for x, y in zip(piv, r)],
                [(a // g) * y - (b // g) * x for x, y in zip(piv, r)],
            )
            mat.append(r)
        if piv[col] < 0:
            piv = [-x for x in piv]
        for i, row in enumerate(out):
            q = row[col] // piv[col]
            if q:
                out[i] = [x - q * y for x, y in zip(row, piv)]
        out.append(piv)
    full = out + mat
    return [r[:width] for r in full], [r[width:] for r in full]


def int_right_kernel(mat: Sequence[Sequence[int]], width: int) -> list[list[int]]:
    """Basis of {x in Z^width : mat @ x == 0}."""
    if not mat:
        return [[1 if j == i else 0 for j in range(width)] for i in range(width)]
    transpose = [[mat[r][c] for r in range(len(mat))] for c in range(width)]
    h, u = hnf_with_transform(transpose)
    return [urow for hrow, urow in zip(h, u) if not any(hrow)]


def lattice_contains(h: Sequence[Sequence[int]], vec: Sequence[int]) -> bool:
    """Membership of vec in the row span of an HNF matrix h."""
    v = list(map(int, vec))
    for row in h:
        col = next((j for j, x in enumerate(row) if x), None)
        if col is None:
            continue
        if v[col] % row[col] == 0:
            q = v[col] // row[col]
            if q:
                v = [x - q * y for x, y in zip(v, row)]
    return not any(v)


def int_solve(mat: Sequence[Sequence[int]], target: Sequence[int]):
    """An integer solution x of mat @ x == target, or None."""
    width = len(mat[0]) if mat else 0
    transpose = [[mat[r][c] for r in range(len(mat))] for c in range(width)]
    h, u = hnf_with_transform(transpose)
    v = list(map(int, target))
    coeff = [0] * width
    for hrow, urow in zip(h, u):
        col = next((j for j, x in enumerate(hrow) if x), None)
        if col is None:
            continue
        if v[col] % hrow[col] != 0:
            return None
        q = v[col] // hrow[col]
        if q:
            v = [x - q * y for x, y in zip(v, hrow)]
            coeff = [c + q * y for c, y in zip(coeff, urow)]
    if any(v):
        return None
    return coeff


# ---------------------------------------------------------------------------
# Z/m modules (Howell normal form)


def _unit_scaling(a: int, m: int) -> tuple[int, int]:
    """(g, u) with g = gcd(a, m) and u a unit mod m such that u*a = g mod m."""
    g = math.gcd(a % m, m)
    if g == 0:
        return m, 1
    ap, mp = (a % m) // g, m // g
    v = pow(ap, -1, mp) if mp > 1 else 1
    u = v
    while math.gcd(u, m) != 1:
        u += mp
    return g, u % m


def _mod_echelon(rows: list[list[int]], m: int) -> list[list[int]]:
    mat = [r for r in rows if any(r)]
    width = len(rows[0]) if rows else 0
    out: list[list[int]] = []
    for col in range(width):
        live = [r for r in mat if r[col] != 0]
        if not live:
            continue
        piv = live[0]
        mat.remove(piv)
        for r in live[1:]:
            mat.remove(r)
            a, b = piv[col], r[col]
            g, s, t = xgcd(a, b)
            # the 2x2 transform [[s, t], [-b//g, a//g]] has determinant 1
            piv, r = (
                [(s * x + t * y) % m for x, y in zip(piv, r)],
                [((a // g) * y - (b // g) * x) % m for x, y in zip(piv, r)],
            )
            if any(r):
                mat.append(r)
        out.append(piv)
    return out


def howell(rows: Sequence[Sequence[int]], m: int) -> list[list[int]]:
    """Canonical Howell normal form of the row module over Z/m."""
    cur = _mod_echelon([[int(x) % m for x in r] for r in rows], m)
    width = len(rows[0]) if rows else 0
    for _ in range(width + 2):
        extras = []
        for row in cur:
            col = next(j for j, x in enumerate(row) if x)
            z = m // math.gcd(row[col], m)
            extra = [(z * x) % m for x in row]
            if any(extra):
                extras.append(extra)
        nxt = _mod_echelon(cur + extras, m)
        if nxt == cur:
            break
        cur = nxt
    else:
        raise AssertionError("Howell iteration failed to stabilize")
    # normalize pivots to divisors of m, reduce entries above each pivot
    out = []
    for row in cur:
        col = next(j for j, x in enumerate(row) if x)
        g, u = _unit_scaling(row[col], m)
        out.append([(u * x) % m for x in row])
    for i in range(len(out)):
        for k in range(i + 1, len(out)):
            col = next(j for j, x in enumerate(out[k]) if x)
            q = out[i][col] // out[k][col]
            if q:
                out[i] = [(x - q * y) % m for x, y in zip(out[i], out[k])]
    return out


def howell_contains(h: Sequence[Sequence[int]], vec: Sequence[int], m: int) -> bool:
    """Membership of vec in the row module of a Howell form h over Z/m."""
    v = [int(x) % m for x in vec]
    for row in h:
        col = next(j for j, x in enumerate(row) if x)
        if v[col] % row[col] == 0:
            q = v[col] // row[col]
            if q:
                v = [(x - q * y) % m for x, y in zip(v, row)]
    return not any(v)


# ---------------------------------------------------------------------------
# subspaces / submodules with canonical representation


class Subspace:
    """Canonically stored subspace (field) or submodule (Z, Z/m, Z[w]).

    Internal rows are RREF rows for fields, Howell rows for Z/m, and HNF
    rows in flattened integer coordinates for Z and the cyclotomic ring.
    """

    def __init__(self, ring: Ring, ambient: int, rows: list[list]):
        self.ring = ring
        self.ambient = ambient
        self.rows = tuple(tuple(r) for r in rows)

    # -- construction

    @classmethod
    def span(cls, ring: Ring, ambient: int, vectors: Sequence[Sequence]) -> "Subspace":
        vecs = [[ring.canon(x) for x in v] for v in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise InputError("vector length does not match ambient rank")
        if ring.is_field:
            return cls(ring, ambient, rref(ring, vecs))
        if ring.kind == "Integers":
            return cls(ring, ambient, hnf(vecs))
        if ring.kind == "IntegersMod":
            return cls(ring, ambient, howell(vecs, ring.modulus))
        if ring.kind == "Cyclotomic":
            flat = []
            for v in vecs:
                w = v
                for _ in range(ring.degree):
                    flat.append(_cyc_flatten(ring, w))
                    w = [ring.mul(ring.omega(), x) for x in w]
            return cls(ring, ambient, hnf(flat))
        raise InputError(f"unsupported ring kind {ring.kind}")

    @classmethod
    def zero(cls, ring: Ring, ambient: int) -> "Subspace":
        return cls.span(ring, ambient, [])

    @classmethod
    def full(cls, ring: Ring, ambient: int) -> "Subspace":
        basis = []
        for i in range(ambient):
            v = [ring.zero()] * ambient
            v[i] = ring.one()
            basis.append(v)
        return cls.span(ring, ambient, basis)

    @classmethod
    def from_flat_rows(cls, ring: Ring, ambient: int, flat_rows: Sequence[Sequence[int]]) -> "Subspace":
        if ring.is_field:
            raise InputError("flat rows only apply to non-field rings")
        if ring.kind == "IntegersMod":
            return cls(ring, ambient, howell(flat_rows, ring.modulus))
        return cls(ring, ambient, hnf(flat_rows))

    # -- queries

    def contains(self, vector: Sequence) -> bool:
        vec = [self.ring.canon(x) for x in vector]
        if self.ring.is_field:
            v = list(vec)
            for row in self.rows:
                col = next(j for j, x in enumerate(row) if not self.ring.is_zero(x))
                f = v[col]
                if not self.ring.is_zero(f):
                    v = [self.ring.sub(x, self.ring.mul(f, y)) for x, y in zip(v, row)]
            return all(self.ring.is_zero(x) for x in v)
        if self.ring.kind == "IntegersMod":
            return howell_contains(self.rows, vec, self.ring.modulus)
        return lattice_contains(self.rows, _cyc_flatten(self.ring, vec))

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.gens())

    def gens(self) -> list[list]:
        """Generators as ring vectors."""
        if self.ring.is_field or self.ring.kind == "IntegersMod":
            return [list(r) for r in self.rows]
        return [_cyc_unflatten(self.ring, r, self.ambient) for r in self.rows]

    def sum(self, other: "Subspace") -> "Subspace":
        if self.ring != other.ring or self.ambient != other.ambient:
            raise InputError("subspace mismatch")
        if self.ring.is_field:
            return Subspace.span(self.ring, self.ambient, list(self.rows) + list(other.rows))
        return Subspace.from_flat_rows(self.ring, self.ambient, list(self.rows) + list(other.rows))

    def is_zero(self) -> bool:
        return not self.rows

    def rank(self) -> int:
        """Number of canonical generator rows (field dimension when a field)."""
        return len(self.rows)

    def size(self) -> int | None:
        """Cardinality for finite coefficient rings, else None."""
        if self.ring.kind == "PrimeField":
            return self.ring.modulus ** len(self.rows)
        if self.ring.kind == "IntegersMod":
            m = self.ring.modulus
            total = 1
            for row in self.rows:
                col = next(j for j, x in enumerate(row) if x)
                total *= m // math.gcd(row[col], m)
            return total
        return None

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ring == other.ring
            and self.ambient == other.ambient
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ring, self.ambient, self.rows))

    def __repr__(self):
        return f"Subspace({self.ring!r}, ambient={self.ambient}, rank={self.rank()})"


def _cyc_flatten(ring: Ring, vec: Sequence) -> list[int]:
    out: list[int] = []
    for x in vec:
        out.extend(ring.flatten(ring.canon(x)))
    return out


def _cyc_unflatten(ring: Ring, flat: Sequence[int], ambient: int) -> list:
    d = ring.flat_degree
    return [ring.unflatten(flat[i * d:(i + 1) * d]) for i in range(ambient)]


# ---------------------------------------------------------------------------
# kernels over any supported ring


def kernel(ring: Ring, mat_rows: Sequence[Sequence], width: int) -> Subspace:
    """Right kernel {x : M @ x == 0} of a matrix given by its rows."""
    rows = [[ring.canon(x) for x in r] for r in mat_rows]
    if ring.is_field:
        basis = field_kernel(ring, rows, width)
        return Subspace.span(ring, width, basis)
    if ring.kind == "Integers":
        basis = int_right_kernel(rows, width)
        return Subspace.span(ring, width, basis)
    if ring.kind == "IntegersMod":
        m = ring.modulus
        nrows = len(rows)
        if nrows == 0:
            return Subspace.full(ring, width)
        big = [list(r) + [m if j == i else 0 for j in range(nrows)] for i, r in enumerate(rows)]
        ker = int_right_kernel(big, width + nrows)
        gens = [row[:width] for row in ker]
        return Subspace.span(ring, width, gens)
    if ring.kind == "Cyclotomic":
        big = _cyc_block_matrix(ring, rows, width)
        ker = int_right_kernel(big, width * ring.degree)
        return Subspace.from_flat_rows(ring, width, ker)
    raise InputError(f"unsupported ring kind {ring.kind}")


def _cyc_block_matrix(ring: CyclotomicRing, rows: Sequence[Sequence], width: int) -> list[list[int]]:
    """Flatten a cyclotomic matrix to an integer block matrix."""
    d = ring.degree
    out = []
    for row in rows:
        mulmats = []
        for entry in row:
            cols = []
            w = ring.canon(entry)
            for _ in range(d):
                cols.append(list(w))
                w = ring.mul(w, ring.omega())
            mulmats.append(cols)  # cols[t][s] = coeff s of entry * omega^t
        for s in range(d):
            flat_row = []
            for j in range(width):
                for t in range(d):
                    flat_row.append(mulmats[j][t][s])
            out.append(flat_row)
    return out


def solve_ring_one(ring: CyclotomicRing, a):
    """Solve a * x == 1 in the cyclotomic ring (a must be a unit)."""
    d = ring.degree
    mat = _cyc_block_matrix(ring, [[a]], 1)
    target = list(ring.one())
    sol = int_solve(mat, target)
    if sol is None:
        raise InputError("element is not a unit")
    return ring.unflatten(sol[:d])


def ring_det(ring: Ring, rows: Sequence[Sequence]):
    """Determinant by cofactor expansion; fine for the small ranks used here."""
    n = len(rows)
    if n == 0:
        return ring.one()
    if n == 1:
        return ring.canon(rows[0][0])
    total = ring.zero()
    for j in range(n):
        a = ring.canon(rows[0][j])
        if ring.is_zero(a):
            continue
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = ring.mul(a, ring_det(ring, minor))
        total = ring.add(total, term) if j % 2 == 0 else ring.sub(total, term)
    return total


def ring_adjugate(ring: Ring, rows: Sequence[Sequence]) -> list[list]:
    """Adjugate matrix: adj(M) @ M == det(M) * I."""
    n = len(rows)
    adj = [[ring.zero()] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[rows[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            cof = ring_det(ring, minor)
            adj[j][i] = cof if (i + j) % 2 == 0 else ring.neg(cof)
    return adj


def mat_apply(ring: Ring, mat: Sequence[Sequence], vec: Sequence) -> list:
    out = []
    for row in mat:
        acc = ring.zero()
        for a, x in zip(row, vec):
            acc = ring.add(acc, ring.mul(ring.canon(a), ring.canon(x)))
        out.append(acc)
    return out


def mat_mul(ring: Ring, a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    cols = list(zip(*b))
    return [[_dot(ring, row, col) for col in cols] for row in a]


def _dot(ring: Ring, u, v):
    acc = ring.zero()
    for x, y in zip(u, v):
        acc = ring.add(acc, ring.mul(ring.canon(x), ring.canon(y)))
    return acc


def mat_identity(ring: Ring, n: int) -> list[list]:
    return [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)]


def mat_sub(ring: Ring, a, b) -> list[list]:
    return [[ring.sub(ring.canon(x), ring.canon(y)) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def frac_rational_solve(mat: Sequence[Sequence[int]], target: Sequence[int]):
    """Rational solution of mat @ x == target, or None (mat integer rows)."""
    from .rings import RationalsRing

    q = RationalsRing()
    width = len(mat[0]) if mat else 0
    cols = [[Fraction(mat[r][c]) for r in range(len(mat))] for c in range(width)]
    coeff = field_solve(q, cols, [Fraction(t) for t in target])
    return coeff

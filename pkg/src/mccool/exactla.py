"""Exact sparse linear algebra over Z and Q.

Everything reported by this module is exact.  Two engines cooperate:

  * a fraction-free Bareiss elimination over Z (sparse, Markowitz-style
    pivoting, lazy telescoped rescaling of rows that miss the pivot
    column), used directly for small matrices and as the arbiter;

  * a modular fast path for large matrices: dense Gaussian elimination
    mod 23-bit primes (blocked panels so the trailing update is a BLAS
    matmul; products stay below 2^53, hence exact in float64), optional
    deterministic row compression, CRT + rational reconstruction of
    kernel vectors.  Its output is never trusted as such: every kernel
    vector is re-verified with exact integer arithmetic, independence
    comes from an exact Hermite reduction, and the kernel dimension is
    certified by the sandwich

        rank_p(S) <= rank_Q(M) <= cols - #verified independent vectors.

    Saturation of the kernel lattice is certified through gcds of
    maximal minors, with a p-adic repair loop where needed.

The kernel of an integer matrix is automatically a saturated lattice;
the basis returned here is the (row-style) Hermite normal form of that
lattice, so identical inputs give bit-identical output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "SparseMat",
    "SNFResult",
    "rank",
    "kernel_lattice",
    "smith_normal_form",
    "intersect_columnspaces",
    "solve_columns",
    "hnf_rows",
    "write_matrix_text",
    "read_matrix_text",
]


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if m % a == 0:
            return m == a
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def _primes_below(bound: int, count: int) -> tuple:
    out = []
    m = bound - 1
    while len(out) < count:
        if _is_prime(m):
            out.append(m)
        m -= 2 if m % 2 else 1
    return tuple(out)


# 23-bit primes: panel width 48 keeps 48*p^2 < 2^53, exact in float64
_PRIMES = _primes_below(1 << 23, 96)
_PANEL = 48

_DENSE_CELLS = 8_000_000  # above this, the modular path compresses rows
_BLOCKED_CELLS = 300_000  # above this, elimination uses the blocked engine


class SparseMat:
    """Sparse matrix with exact entries (int, or Fraction for ring Q)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: dict | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimensions")
        self.rows = rows
        self.cols = cols
        clean = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise ValueError(f"entry ({i},{j}) out of range")
            if v:
                clean[(i, j)] = v
        self.entries = clean

    @classmethod
    def identity(cls, n: int) -> "SparseMat":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_dense(cls, data) -> "SparseMat":
        data = [list(r) for r in data]
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, {(i, j): v for i, r in enumerate(data) for j, v in enumerate(r) if v})

    @classmethod
    def from_columns(cls, columns, rows: int) -> "SparseMat":
        """columns: list of iterables of (row_index, value)."""
        entries = {}
        for j, col in enumerate(columns):
            for i, v in col:
                if v:
                    entries[(i, j)] = v
        return cls(rows, len(columns), entries)

    def columns(self) -> list:
        out = [[] for _ in range(self.cols)]
        for (i, j), v in sorted(self.entries.items(), key=lambda t: (t[0][1], t[0][0])):
            out[j].append((i, v))
        return out

    def to_dense(self) -> list:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> "SparseMat":
        return SparseMat(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def nnz(self) -> int:
        return len(self.entries)

    def column_vector(self, j: int) -> list:
        return [self.entries.get((i, j), 0) for i in range(self.rows)]

    def __eq__(self, other):
        return (
            isinstance(other, SparseMat)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"SparseMat({self.rows}x{self.cols}, nnz={len(self.entries)})"


@dataclass(frozen=True)
class SNFResult:
    """Nonzero elementary divisors d1 | d2 | ... of an integer matrix."""

    divisors: tuple

    @property
    def rank(self) -> int:
        return len(self.divisors)


# ---------------------------------------------------------------------------
# text serialization ("rows cols nnz" header, then 1-indexed "i j value")


def write_matrix_text(m: SparseMat) -> str:
    lines = [f"{m.rows} {m.cols} {len(m.entries)}"]
    for (i, j), v in sorted(m.entries.items()):
        lines.append(f"{i + 1} {j + 1} {v}")
    return "\n".join(lines) + "\n"


def read_matrix_text(text: str) -> SparseMat:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    rows, cols, nnz = (int(x) for x in lines[0].split())
    if len(lines) - 1 != nnz:
        raise ValueError("entry count does not match header")
    entries = {}
    for ln in lines[1:]:
        i, j, v = ln.split()
        entries[(int(i) - 1, int(j) - 1)] = int(v)
    return SparseMat(rows, cols, entries)


# ---------------------------------------------------------------------------
# fraction-free sparse Bareiss rank


def _integer_rows(m: SparseMat) -> dict:
    """Row dicts with denominators cleared (rank is unchanged)."""
    rows: dict = {}
    denoms: dict = {}
    for (i, j), v in m.entries.items():
        if isinstance(v, Fraction):
            denoms[i] = math.lcm(denoms.get(i, 1), v.denominator)
    for (i, j), v in m.entries.items():
        d = denoms.get(i, 1)
        iv = int(v * d) if isinstance(v, Fraction) else v * d
        if iv:
            rows.setdefault(i, {})[j] = iv
    return rows


def _rank_bareiss(m: SparseMat) -> int:
    rows = _integer_rows(m)
    colocc: dict = {}
    for r, row in rows.items():
        for c in row:
            colocc.setdefault(c, set()).add(r)
    piv_seq = [1]  # piv_seq[t] = pivot of step t
    stamp = {r: 0 for r in rows}
    rank_ = 0

    def bring(r, target):
        # lazy telescoped rescale: entries of row r are minors at step stamp[r]
        s = stamp[r]
        if s == target:
            return
        num, den = piv_seq[target], piv_seq[s]
        row = rows[r]
        for c in list(row):
            val = row[c] * num
            assert val % den == 0
            row[c] = val // den
        stamp[r] = target

    while rows:
        best = None
        for c, occ in colocc.items():
            cl = len(occ)
            for r in occ:
                score = (len(rows[r]) - 1) * (cl - 1)
                key = (score, r, c)
                if best is None or key < best:
                    best = key
        if best is None:
            break
        _, r0, c0 = best
        t = rank_ + 1
        bring(r0, t - 1)
        piv = rows[r0][c0]
        piv_seq.append(piv)
        prow = rows[r0]
        for r in list(colocc[c0]):
            if r == r0:
                continue
            bring(r, t - 1)
            row = rows[r]
            f = row[c0]
            prev = piv_seq[t - 1]
            for c, pv in prow.items():
                val = piv * row.get(c, 0) - f * pv
                if val:
                    assert val % prev == 0
                    row[c] = val // prev
                    colocc.setdefault(c, set()).add(r)
                elif c in row:
                    del row[c]
                    colocc[c].discard(r)
            for c in [c for c in row if c not in prow]:
                val = row[c] * piv
                assert val % prev == 0
                row[c] = val // prev
            stamp[r] = t
            if not row:
                del rows[r]
                del stamp[r]
        for c in prow:
            colocc[c].discard(r0)
            if not colocc[c]:
                del colocc[c]
        del rows[r0]
        del stamp[r0]
        rank_ += 1
    return rank_


# ---------------------------------------------------------------------------
# dense modular elimination (numpy; exact residues mod p < 2^23)


def _mod_columns(columns, p: int):
    """Columns as (int64 row indices, int64 residues)."""
    out = []
    for col in columns:
        if col:
            idx = np.fromiter((i for i, _ in col), dtype=np.int64, count=len(col))
            val = np.fromiter((v % p for _, v in col), dtype=np.int64, count=len(col))
        else:
            idx = np.zeros(0, dtype=np.int64)
            val = np.zeros(0, dtype=np.int64)
        out.append((idx, val))
    return out


def _dense_mod(columns, nrows: int, p: int) -> np.ndarray:
    a = np.zeros((nrows, len(columns)), dtype=np.int64)
    for j, (idx, val) in enumerate(_mod_columns(columns, p)):
        np.add.at(a[:, j], idx, val)
    return a % p


def _lcg_stream(seed: int):
    state = (seed * 0x9E3779B97F4A7C15 + 0xD1B54A32D192ED03) % (1 << 64)
    while True:
        state = (state * 6364136223846793005 + 1442695040888963407) % (1 << 64)
        yield state >> 16


def _compressed_mod(columns, nrows: int, p: int, s: int, seed: int) -> np.ndarray:
    """Deterministic 2-bucket row compression of the matrix, mod p."""
    gen = _lcg_stream(seed)
    b1 = np.empty(nrows, dtype=np.int64)
    b2 = np.empty(nrows, dtype=np.int64)
    c1 = np.empty(nrows, dtype=np.int64)
    c2 = np.empty(nrows, dtype=np.int64)
    for r in range(nrows):
        x = next(gen)
        b1[r] = x % s
        b2[r] = (x >> 24) % s
        c1[r] = 1 + ((x >> 48) % 9)
        c2[r] = 1 + ((x >> 56) % 9)
    a = np.zeros((s, len(columns)), dtype=np.int64)
    for j, (idx, val) in enumerate(_mod_columns(columns, p)):
        np.add.at(a[:, j], b1[idx], c1[idx] * val)
        np.add.at(a[:, j], b2[idx], c2[idx] * val)
    return a % p


def _rref_mod_small(a: np.ndarray, p: int):
    """In-place reduced row echelon form mod p; returns pivot column list."""
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for j in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, j])[0]
        if len(nz) == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, j]), p - 2, p)
        a[r, j:] = (a[r, j:] * inv) % p
        below = r + 1 + np.nonzero(a[r + 1 :, j])[0]
        if len(below):
            a[below, j:] = (a[below, j:] - np.outer(a[below, j], a[r, j:])) % p
        pivots.append(j)
        r += 1
    for i in range(len(pivots) - 1, -1, -1):
        j = pivots[i]
        above = np.nonzero(a[:i, j])[0]
        if len(above):
            a[above, j:] = (a[above, j:] - np.outer(a[above, j], a[i, j:])) % p
    return pivots


def _forward_elim_blocked(a: np.ndarray, p: int) -> list:
    """Forward elimination mod p on a float64 matrix, blocked by panels.

    Pivot rows end up in rows 0..rank-1 with unscaled pivots; rows below
    each pivot are zeroed.  Trailing updates are single matmuls whose
    accumulated products stay under 2^53, so float64 arithmetic is exact.
    """
    nrows, ncols = a.shape
    pivots: list = []
    r = 0
    j0 = 0
    while j0 < ncols and r < nrows:
        j1 = min(j0 + _PANEL, ncols)
        r0 = r
        mult = np.zeros((nrows - r0, j1 - j0))
        local = 0
        for j in range(j0, j1):
            tgt = r0 + local
            if tgt == nrows:
                break
            col = a[tgt:, j]
            nz = np.nonzero(col)[0]
            if nz.size == 0:
                continue
            pr = tgt + int(nz[0])
            if pr != tgt:
                a[[tgt, pr]] = a[[pr, tgt]]
                mult[[tgt - r0, pr - r0]] = mult[[pr - r0, tgt - r0]]
            inv = float(pow(int(a[tgt, j]), p - 2, p))
            mults = (a[tgt + 1 :, j] * inv) % p
            mult[tgt + 1 - r0 :, local] = mults
            if j + 1 < j1:
                a[tgt + 1 :, j + 1 : j1] = (
                    a[tgt + 1 :, j + 1 : j1] - np.outer(mults, a[tgt, j + 1 : j1])
                ) % p
            a[tgt + 1 :, j] = 0.0
            pivots.append(j)
            local += 1
        if local and j1 < ncols:
            # finish the pivot rows' trailing parts (triangular pass) ...
            for s in range(1, local):
                row = r0 + s
                a[row, j1:] = (a[row, j1:] - mult[s, :s] @ a[r0 : r0 + s, j1:]) % p
            # ... then one matmul for everything below the panel
            if r0 + local < nrows:
                block = a[r0 + local :, j1:]
                block -= mult[local:, :local] @ a[r0 : r0 + local, j1:]
                block %= p
        r = r0 + local
        j0 = j1
    return pivots


def _nullspace_mod(a_int: np.ndarray, p: int):
    """Pivot columns and canonical nullspace basis mod p.

    The basis has one row per free column f: the vector with x_f = 1,
    other free coordinates 0, pivot coordinates solved mod p.
    """
    nrows, ncols = a_int.shape
    if a_int.size <= _BLOCKED_CELLS:
        a = a_int % p
        pivots = _rref_mod_small(a, p)
        pivset = set(pivots)
        free = [j for j in range(ncols) if j not in pivset]
        basis = np.zeros((len(free), ncols), dtype=np.int64)
        for k, f in enumerate(free):
            basis[k, f] = 1
            for i, j in enumerate(pivots):
                basis[k, j] = (-int(a[i, f])) % p
        return pivots, basis
    a = (a_int % p).astype(np.float64)
    pivots = _forward_elim_blocked(a, p)
    rank_ = len(pivots)
    u = np.rint(a[:rank_]).astype(np.int64)
    del a
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    x = np.zeros((ncols, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        x[f, k] = 1
    # back-substitution: row sums stay below ncols * p^2 < 2^63
    for i in range(rank_ - 1, -1, -1):
        j = pivots[i]
        if j + 1 < ncols:
            s = (u[i, j + 1 :] @ x[j + 1 :]) % p
        else:
            s = np.zeros(len(free), dtype=np.int64)
        inv = pow(int(u[i, j]), p - 2, p)
        x[j] = ((p - s) * inv) % p
    return pivots, x.T.copy()


# ---------------------------------------------------------------------------
# CRT and rational reconstruction


def _crt_pair(r1: int, m1: int, r2: int, m2: int):
    inv = pow(m1, -1, m2)
    x = (r1 + m1 * (((r2 - r1) * inv) % m2)) % (m1 * m2)
    return x, m1 * m2


def _rat_reconstruct(a: int, m: int):
    """num/den with num = a*den mod m, |num|, den <= sqrt(m/2); or None."""
    a %= m
    bound = math.isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if math.gcd(r1, abs(s1)) != 1:
        return None
    return (r1, s1) if s1 > 0 else (-r1, -s1)


# ---------------------------------------------------------------------------
# Hermite reduction of a small integer row basis


def _row_submul(r, q, s, start=0):
    if q:
        for c in range(start, len(r)):
            r[c] -= q * s[c]


def hnf_rows(rows: list) -> list:
    """Row-style Hermite normal form of the lattice spanned by the rows.

    Returns the reduced rows (full row rank, pivots positive, entries
    above each pivot reduced into [0, pivot)), sorted by pivot column.
    Zero rows are dropped.

    Growth control: each column is cleared by reducing every row against
    the current minimum in one batch (Euclid converges across the whole
    column), and after a pivot is established all remaining rows are
    size-reduced against every pivot found so far.
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return []
    ncols = len(work[0])
    result = []  # (pivot_col, row)
    for col in range(ncols):
        occ = [r for r in work if r[col]]
        if not occ:
            continue
        while len(occ) > 1:
            occ.sort(key=lambda r: abs(r[col]))
            base = occ[0]
            bval = base[col]
            for r in occ[1:]:
                _row_submul(r, r[col] // bval, base, col)
                if abs(max(r, key=abs)).bit_length() > 100_000:
                    raise RuntimeError("hnf_rows entries exceed the supported range")
            occ = [r for r in occ if r[col]]
        piv_row = occ[0]
        if piv_row[col] < 0:
            for c in range(col, ncols):
                piv_row[c] = -piv_row[c]
        work.remove(piv_row)
        result.append((col, piv_row))
        # keep the remaining rows small relative to all pivots so far
        for r in work:
            for pcol, prow in result:
                q = r[pcol] // prow[pcol]
                _row_submul(r, q, prow, pcol)
        if not work:
            break
    # reduce above-pivot entries in ascending pivot order, so later
    # reductions never disturb columns that are already reduced
    for i in range(len(result)):
        pcol, prow = result[i]
        piv = prow[pcol]
        for k in range(i):
            _row_submul(result[k][1], result[k][1][pcol] // piv, prow, pcol)
    return [tuple(r) for _, r in result]


# ---------------------------------------------------------------------------
# exact verification helpers


def _verify_kernel_vector(columns, nrows: int, vec) -> bool:
    """Exact check that sum_j vec[j] * column_j == 0."""
    acc: dict = {}
    for j, vj in enumerate(vec):
        if not vj:
            continue
        for i, a in columns[j]:
            val = acc.get(i, 0) + vj * a
            if val:
                acc[i] = val
            elif i in acc:
                del acc[i]
    return not acc


def _prime_factors(n: int) -> list:
    """Prime factorization by trial division plus Pollard rho."""
    n = abs(n)
    out = []
    d = 2
    while d * d <= n and d < 100000:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1 if d == 2 else 2
    if n == 1:
        return sorted(set(out))

    def rho(m):
        c = 1
        while True:
            x = y = 2
            g = 1
            while g == 1:
                x = (x * x + c) % m
                y = (y * y + c) % m
                y = (y * y + c) % m
                g = math.gcd(abs(x - y), m)
            if g != m:
                return g
            c += 1

    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_prime(m):
            out.append(m)
            continue
        f = rho(m)
        stack.extend([f, m // f])
    return sorted(set(out))


def _left_nullspace_mod(v: np.ndarray, q: int) -> np.ndarray:
    """Basis rows y (mod q) with y @ V = 0 (mod q); entries in [0, q)."""
    d, ncols = v.shape
    aug = np.zeros((d, ncols + d), dtype=np.int64)
    aug[:, :ncols] = v % q
    aug[:, ncols:] = np.eye(d, dtype=np.int64)
    r = 0
    for j in range(ncols):
        if r == d:
            break
        nz = np.nonzero(aug[r:, j])[0]
        if len(nz) == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            aug[[r, pr]] = aug[[pr, r]]
        inv = pow(int(aug[r, j]), q - 2, q)
        aug[r] = (aug[r] * inv) % q
        below = r + 1 + np.nonzero(aug[r + 1 :, j])[0]
        if len(below):
            aug[below] = (aug[below] - np.outer(aug[below, j], aug[r])) % q
        r += 1
    return aug[r:, ncols:]


class _SaturationTooHard(RuntimeError):
    """Entries or pivots too large for the fast saturation loop."""


def _saturate_rows(v_rows: list, columns, nrows: int) -> list:
    """Certified saturation of an integer row basis of a rational kernel.

    Each input row must lie in the exact kernel of the columns; so does
    every repair (y @ V)/q, an integer vector of the same rational
    kernel.  The product of the Hermite pivots is the pivot-column
    maximal minor, hence a multiple of the product of the elementary
    divisors of V; once V is full rank mod every prime of that product,
    all divisors are 1 and the lattice is saturated.
    """
    v = [list(r) for r in hnf_rows(v_rows)]
    if not v:
        return []
    d = len(v)
    while True:
        pivs = [next(x for x in row if x) for row in v]
        if any(h >= (1 << 62) for h in pivs):
            raise _SaturationTooHard("Hermite pivot exceeds the fast range")
        primes = set()
        for h in pivs:
            if h > 1:
                primes.update(_prime_factors(h))
        if not primes:
            break
        fixed_any = False
        for q in sorted(primes):
            if q >= (1 << 31):  # int64 products q^2 below would overflow
                raise _SaturationTooHard("saturation prime exceeds 31 bits")
            while True:
                vmax = max(max(abs(x) for x in row) for row in v)
                if vmax * q * d >= (1 << 62):  # keep int64 matmuls exact
                    raise _SaturationTooHard("entries exceed int64 range")
                vnp = np.array(v, dtype=np.int64)
                y = _left_nullspace_mod(vnp, q)
                if y.shape[0] == 0:
                    break
                yr = y % q
                piv_pos = _rref_mod_small(yr, q)  # distinct replacement rows
                w = yr @ vnp
                assert (w % q == 0).all()
                w //= q
                for t, pos in enumerate(piv_pos):
                    v[pos] = [int(x) for x in w[t]]
                v = [list(r) for r in hnf_rows(v)]
                if len(v) != d:
                    raise AssertionError("saturation repair lost rank")
                fixed_any = True
        if not fixed_any:
            break
    out = [tuple(r) for r in hnf_rows(v)]
    for row in out:
        if not _verify_kernel_vector(columns, nrows, row):
            raise AssertionError("saturated basis row left the kernel")
    return out


# ---------------------------------------------------------------------------
# the certified kernel


def _kernel_exact(columns, nrows: int) -> list:
    """Integer kernel by unimodular row reduction of [M^T | I].

    Independent of the modular engine; intended for small matrices and
    as a cross-check arbiter.  The surviving identity parts of rows
    whose M^T part was eliminated to zero form the full integer kernel,
    which is saturated by construction.
    """
    ncols = len(columns)
    rows = []
    for j, col in enumerate(columns):
        row = {i: v for i, v in col}
        row[nrows + j] = 1
        rows.append(row)
    active = list(range(ncols))
    for c in range(nrows):
        occ = [r for r in active if rows[r].get(c)]
        if not occ:
            continue
        while len(occ) > 1:
            occ.sort(key=lambda r: (abs(rows[r][c]), r))
            r0, r1 = occ[0], occ[1]
            q = rows[r1][c] // rows[r0][c]
            row0, row1 = rows[r0], rows[r1]
            for k, v in row0.items():
                val = row1.get(k, 0) - q * v
                if val:
                    if val.bit_length() > 2048:
                        raise RuntimeError(
                            "exact kernel entries exceed the supported range"
                        )
                    row1[k] = val
                elif k in row1:
                    del row1[k]
            occ = [r for r in occ if rows[r].get(c)]
        active.remove(occ[0])
    vecs = []
    for r in active:
        assert all(k >= nrows for k in rows[r]), "left part not eliminated"
        vecs.append([rows[r].get(nrows + j, 0) for j in range(ncols)])
    return [list(v) for v in hnf_rows(vecs)]


def _pivot_signature_key(pivots) -> tuple:
    # the true rational pivot sequence has maximal rank and, among equal
    # ranks, the componentwise-smallest (earliest) columns
    return (-len(pivots), tuple(pivots))


def _kernel_lattice_columns(columns, nrows: int) -> list:
    """Certified Hermite basis of the integer kernel lattice of the columns."""
    ncols = len(columns)
    if ncols == 0:
        return []
    if all(len(c) == 0 for c in columns):
        return [tuple(1 if j == k else 0 for j in range(ncols)) for k in range(ncols)]
    compress = nrows * ncols > _DENSE_CELLS and nrows > ncols + 40
    attempts = 4 if compress else 1
    try:
        for attempt in range(attempts):
            result = _kernel_attempt(columns, nrows, compress, attempt)
            if result is not None:
                return result
    except (_SaturationTooHard, RuntimeError):
        pass
    # modular route exhausted (entries beyond the fast range, or the
    # prime pool ran out): fall back to the independent exact reduction
    if ncols <= 600:
        return [tuple(v) for v in _kernel_exact(columns, nrows)]
    raise RuntimeError("modular kernel failed to certify")


def _kernel_attempt(columns, nrows: int, compress: bool, attempt: int):
    ncols = len(columns)
    computed: dict = {}
    cursor = 0

    def compute_next():
        nonlocal cursor
        if cursor >= len(_PRIMES):
            return False
        p = _PRIMES[cursor]
        cursor += 1
        if compress:
            s = min(nrows, ncols + 200)
            a = _compressed_mod(columns, nrows, p, s, seed=1 + attempt)
        else:
            a = _dense_mod(columns, nrows, p)
        computed[p] = _nullspace_mod(a, p)
        return True

    def best_primes():
        if not computed:
            return None, []
        sig = min((_pivot_signature_key(res[0]) for res in computed.values()))
        primes = [p for p in computed if _pivot_signature_key(computed[p][0]) == sig]
        return sig, primes

    target = 2
    while True:
        _, good = best_primes()
        while len(good) < target:
            if not compute_next():
                return None  # prime pool exhausted for this attempt
            _, good = best_primes()
        sel = good[:target]
        cands = _reconstruct_candidates([computed[p] for p in sel], sel)
        if cands is None:
            target += max(1, target // 2)  # more modulus needed
            if target > len(_PRIMES):
                return None
            continue
        if not all(_verify_kernel_vector(columns, nrows, v) for v in cands):
            if compress:
                return None  # compression artifact; retry with a new seed
            target += max(1, target // 2)
            if target > len(_PRIMES):
                return None
            continue
        if any(abs(x).bit_length() > 60 for v in cands for x in v):
            # determinant-sized kernel entries: beyond the fast assembly
            raise _SaturationTooHard("kernel entries exceed the fast range")
        basis = hnf_rows(cands)
        if len(basis) != len(cands):
            target += max(1, target // 2)
            if target > len(_PRIMES):
                return None
            continue
        # sandwich: rank_p = ncols - d with d verified independent integer
        # kernel vectors forces rank_Q = ncols - d exactly
        return list(_saturate_rows(basis, columns, nrows))


def _reconstruct_candidates(per_prime, primes):
    d = per_prime[0][1].shape[0]
    if any(pp[1].shape[0] != d for pp in per_prime[1:]):
        return None
    ncols = per_prime[0][1].shape[1]
    out = []
    for k in range(d):
        vec_fracs = []
        for j in range(ncols):
            x, m = int(per_prime[0][1][k, j]), primes[0]
            for t in range(1, len(primes)):
                x, m = _crt_pair(x, m, int(per_prime[t][1][k, j]), primes[t])
            rec = _rat_reconstruct(x, m)
            if rec is None:
                return None
            vec_fracs.append(rec)
        den = 1
        for _, dd in vec_fracs:
            den = den // math.gcd(den, dd) * dd
        vec = [num * (den // dd) for num, dd in vec_fracs]
        content = 0
        for x in vec:
            content = math.gcd(content, x)
        if content > 1:
            vec = [x // content for x in vec]
        out.append(vec)
    return out


def kernel_lattice(m: SparseMat, method: str = "modular") -> list:
    """Basis of the saturated integer kernel lattice {v : M v = 0}.

    Returns tuples of ints: the Hermite normal form of the kernel
    lattice (deterministic; first nonzero entry of each vector is
    positive).  Fraction entries are cleared row by row first (same
    kernel).  method="exact" runs the independent unimodular-reduction
    route (small matrices; used as a cross-check).
    """
    if any(isinstance(v, Fraction) for v in m.entries.values()):
        rows = _integer_rows(m)
        entries = {(i, j): v for i, row in rows.items() for j, v in row.items()}
        m = SparseMat(m.rows, m.cols, entries)
    if method == "modular":
        return _kernel_lattice_columns(m.columns(), m.rows)
    if method == "exact":
        return [tuple(v) for v in _kernel_exact(m.columns(), m.rows)]
    raise ValueError(f"unknown kernel method {method!r}")


def rank(m: SparseMat, method: str = "auto") -> int:
    """Exact rank over Q.

    method="bareiss" runs fraction-free elimination; method="modular"
    certifies cols - dim ker through the kernel machinery; "auto" picks
    by size.  All methods return the exact rank.
    """
    if method == "auto":
        method = "bareiss" if m.rows * m.cols <= 250_000 else "modular"
    if method == "bareiss":
        return _rank_bareiss(m)
    if method == "modular":
        return m.cols - len(kernel_lattice(m))
    raise ValueError(f"unknown rank method {method!r}")


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(m: SparseMat, max_cols: int = 5000) -> SNFResult:
    """Elementary divisors d1 | d2 | ... (positive, nonzero ones only)."""
    if m.cols > max_cols:
        raise ValueError(
            f"matrix has {m.cols} columns; raise max_cols to run SNF this large"
        )
    rows: dict = {}
    colocc: dict = {}
    for (i, j), v in m.entries.items():
        if isinstance(v, Fraction):
            raise ValueError("smith_normal_form requires integer entries")
        rows.setdefault(i, {})[j] = v
        colocc.setdefault(j, set()).add(i)

    def set_entry(i, j, v):
        row = rows.setdefault(i, {})
        if v:
            row[j] = v
            colocc.setdefault(j, set()).add(i)
        else:
            if j in row:
                del row[j]
            occ = colocc.get(j)
            if occ:
                occ.discard(i)
                if not occ:
                    del colocc[j]
        if not row:
            del rows[i]

    divisors = []
    while rows:
        piv_i = piv_j = None
        piv_v = None
        for i in sorted(rows):
            for j in sorted(rows[i]):
                v = abs(rows[i][j])
                if piv_v is None or v < piv_v or (v == piv_v and (i, j) < (piv_i, piv_j)):
                    piv_i, piv_j, piv_v = i, j, v
        while True:
            p = rows[piv_i][piv_j]
            dirty = False
            for i in sorted(colocc.get(piv_j, ())):
                if i == piv_i:
                    continue
                q = rows[i][piv_j] // p
                if q:
                    for j, v in list(rows[piv_i].items()):
                        set_entry(i, j, rows.get(i, {}).get(j, 0) - q * v)
                if rows.get(i, {}).get(piv_j, 0):
                    piv_i = i  # remainder beat the pivot; swap roles
                    dirty = True
                    break
            if dirty:
                continue
            p = rows[piv_i][piv_j]
            dirty = False
            for j in sorted(rows[piv_i]):
                if j == piv_j:
                    continue
                q = rows[piv_i][j] // p
                if q:
                    for i in sorted(colocc.get(piv_j, ())):
                        set_entry(i, j, rows[i].get(j, 0) - q * rows[i][piv_j])
                if rows[piv_i].get(j, 0):
                    piv_j = j
                    dirty = True
                    break
            if not dirty:
                break
        p = abs(rows[piv_i][piv_j])
        for j in list(rows[piv_i]):
            set_entry(piv_i, j, 0)
        for i in list(colocc.get(piv_j, ())):
            set_entry(i, piv_j, 0)
        divisors.append(p)
    divisors.sort()
    changed = True
    while changed:
        changed = False
        for i in range(len(divisors) - 1):
            a, b = divisors[i], divisors[i + 1]
            if b % a:
                g = math.gcd(a, b)
                divisors[i], divisors[i + 1] = g, a * b // g
                changed = True
        divisors.sort()
    return SNFResult(tuple(divisors))


# ---------------------------------------------------------------------------
# solving and intersections


def solve_columns(a: SparseMat, rhs: list):
    """Exact rational solutions x with A x = b for each b in rhs.

    rhs is a list of column vectors (length a.rows).  Returns a list of
    solution vectors (entries Fraction) or None where inconsistent.
    Free coordinates are set to zero.
    """
    dense = [[Fraction(v) for v in row] for row in a.to_dense()]
    width = a.cols
    tabs = [[Fraction(v) for v in b] for b in rhs]
    if len(dense) == 0:
        return [[Fraction(0)] * width if not any(b) else None for b in tabs]
    pivots = []
    r = 0
    for j in range(width):
        pr = None
        for i in range(r, len(dense)):
            if dense[i][j]:
                pr = i
                break
        if pr is None:
            continue
        dense[r], dense[pr] = dense[pr], dense[r]
        for b in tabs:
            b[r], b[pr] = b[pr], b[r]
        inv = 1 / dense[r][j]
        dense[r] = [v * inv for v in dense[r]]
        for b in tabs:
            b[r] *= inv
        for i in range(len(dense)):
            if i != r and dense[i][j]:
                f = dense[i][j]
                dense[i] = [vi - f * vr for vi, vr in zip(dense[i], dense[r])]
                for b in tabs:
                    b[i] -= f * b[r]
        pivots.append(j)
        r += 1
    out = []
    for b in tabs:
        if any(b[i] for i in range(r, len(dense))):
            out.append(None)
            continue
        x = [Fraction(0)] * width
        for i, j in enumerate(pivots):
            x[j] = b[i]
        out.append(x)
    return out


def intersect_columnspaces(bases: list) -> SparseMat:
    """Basis of the intersection of the rational column spans.

    All matrices must have the same row count.  The result's columns are
    integer vectors spanning the intersection over Q, Hermite-reduced
    for determinism.
    """
    if not bases:
        raise ValueError("need at least one basis")
    nrows = bases[0].rows
    if any(b.rows != nrows for b in bases):
        raise ValueError("row counts differ")
    current = bases[0]
    for other in bases[1:]:
        stacked = SparseMat(
            nrows,
            current.cols + other.cols,
            {
                **{(i, j): v for (i, j), v in current.entries.items()},
                **{(i, j + current.cols): -v for (i, j), v in other.entries.items()},
            },
        )
        ker = kernel_lattice(stacked)
        cur_cols = current.columns()
        vecs = []
        for vec in ker:
            dense = [0] * nrows
            for j in range(current.cols):
                if vec[j]:
                    for i, v in cur_cols[j]:
                        dense[i] += vec[j] * v
            vecs.append(dense)
        reduced = hnf_rows(vecs)
        current = SparseMat(
            nrows,
            len(reduced),
            {(i, j): v for j, row in enumerate(reduced) for i, v in enumerate(row) if v},
        )
    return current

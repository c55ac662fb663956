"""The Johnson morphism tau on basis-conjugating generator symbols.

tau sends the degree-1 class of the generator K_ij to the derivation

    d_ij : X_i -> [X_j, X_i],   X_t -> 0 (t != i)

of L[n] and extends as a Lie morphism.  For n = 3 the kernel lives in
the free Lie subring g on a = K_12, b = K_21, c = K_13; kernel_report
computes, degree by degree, the matrix of tau on the Lyndon basis of g
(rows indexed by pairs (generator slot, Lyndon word of degree k+1)) and
its certified integer kernel lattice.

The degree-6 kernel is generated by the 12-term left-normed element
omega(); every reported kernel basis vector is re-verified by exact
re-evaluation of tau.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from . import exactla
from .derivations import Derivation, der_bracket
from .exactla import SparseMat
from .freelie import (
    Alphabet,
    LieElement,
    abc_alphabet,
    left_normed,
    lie_bracket,
    x_alphabet,
)
from .freelie import _bw
from .words import lyndon_index, lyndon_tuples, standard_factorization

__all__ = [
    "LiePolynomial",
    "McCoolSymbols",
    "KernelReport",
    "BracketMapReport",
    "tau_generator",
    "tau_evaluate",
    "omega",
    "kernel_report",
    "bracket_map_rank",
    "KERNEL_DEGREE_CAP",
]

# elements of the free Lie ring on generator symbols are plain LieElements
LiePolynomial = LieElement

KERNEL_DEGREE_CAP = 9


class McCoolSymbols:
    """The n(n-1) symbols k_ij (i != j), ordered row-major by (i, j)."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("need n >= 2")
        if n > 9:
            raise ValueError("symbol labels support n <= 9")
        self.n = n
        self.pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
        self.alphabet = Alphabet(tuple(f"k{i}{j}" for i, j in self.pairs))

    def symbol(self, i: int, j: int) -> LiePolynomial:
        return LieElement.generator(self.alphabet, f"k{i}{j}")

    def pair_of_letter(self, letter: int) -> tuple:
        return self.pairs[letter]


def tau_generator(n: int, i: int, j: int) -> Derivation:
    """The degree-1 derivation d_ij : X_i -> [X_j, X_i] of L[n]."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError("generator indices out of range")
    if i == j:
        raise IndexError("generator indices must be distinct")
    alphabet = x_alphabet(n)
    images = [LieElement.zero(alphabet, 2) for _ in range(n)]
    images[i - 1] = LieElement(
        alphabet, 2, dict(_bw((j - 1,), (i - 1,))), _trust=True
    )
    return Derivation(alphabet, 1, tuple(images))


# the standard section for n = 3: a = K_12, b = K_21, c = K_13
_ABC_PAIRS = {"a": (1, 2), "b": (2, 1), "c": (1, 3)}


class TauMap:
    """tau on the free Lie ring over a symbol alphabet, memoized per word."""

    def __init__(self, symbol_alphabet: Alphabet, n: int, generator_pairs: dict):
        self.symbol_alphabet = symbol_alphabet
        self.n = n
        self.generators = tuple(
            tau_generator(n, *generator_pairs[lab]) for lab in symbol_alphabet.labels
        )
        self._word_cache: dict = {}

    def of_word(self, word) -> Derivation:
        hit = self._word_cache.get(word)
        if hit is not None:
            return hit
        if len(word) == 1:
            res = self.generators[word[0]]
        else:
            u, v = standard_factorization(word)
            res = der_bracket(self.of_word(u), self.of_word(v))
        self._word_cache[word] = res
        return res

    def evaluate(self, p: LiePolynomial) -> Derivation:
        if p.alphabet != self.symbol_alphabet:
            raise ValueError("symbol alphabet mismatch")
        acc = Derivation.zero(x_alphabet(self.n), p.degree)
        for word, c in sorted(p.coeffs.items()):
            acc = acc + self.of_word(word).scale(c)
        return acc


@functools.lru_cache(maxsize=None)
def _abc_tau_map() -> TauMap:
    return TauMap(abc_alphabet(), 3, _ABC_PAIRS)


@functools.lru_cache(maxsize=None)
def _mccool_tau_map(n: int) -> TauMap:
    sym = McCoolSymbols(n)
    pairs = {f"k{i}{j}": (i, j) for i, j in sym.pairs}
    return TauMap(sym.alphabet, n, pairs)


def tau_map_for(alphabet: Alphabet) -> TauMap:
    """The tau context for a symbol alphabet ({a,b,c} or McCool symbols)."""
    if alphabet == abc_alphabet():
        return _abc_tau_map()
    if all(lab.startswith("k") and len(lab) == 3 for lab in alphabet.labels):
        n = max(int(ch) for lab in alphabet.labels for ch in lab[1:])
        if McCoolSymbols(n).alphabet == alphabet:
            return _mccool_tau_map(n)
    raise ValueError(f"no tau context for alphabet {alphabet!r}")


def tau_evaluate(p: LiePolynomial) -> Derivation:
    """tau(P) for P over {a, b, c} (n = 3) or over McCool symbols."""
    return tau_map_for(p.alphabet).evaluate(p)


# ---------------------------------------------------------------------------
# omega


_OMEGA_TERMS = (
    (+1, "cabbac"),
    (+1, "cacbab"),
    (+1, "cbacab"),
    (+1, "cbacba"),
    (+1, "cbbaac"),
    (+1, "cbcbaa"),
    (-1, "cacabb"),
    (-1, "cacbba"),
    (-1, "cbaacb"),
    (-1, "cbabac"),
    (-1, "cbbaca"),
    (-1, "cbcaba"),
)


@functools.lru_cache(maxsize=None)
def omega() -> LiePolynomial:
    """The degree-6 kernel generator, as a 12-term left-normed sum."""
    alphabet = abc_alphabet()
    gens = {lab: LieElement.generator(alphabet, lab) for lab in "abc"}
    acc = LieElement.zero(alphabet, 6)
    for sign, word in _OMEGA_TERMS:
        acc = acc + left_normed([gens[ch] for ch in word]).scale(sign)
    return acc


# ---------------------------------------------------------------------------
# the kernel of tau on g, degree by degree


class _AbcTauColumns:
    """Images of tau on the Lyndon basis of g = Lie(a, b, c), built bottom-up.

    For each Lyndon word w over {a, b, c} the three generator images of
    tau(b(w)) are kept as dicts {Lyndon word of L[3] : int}.  The
    recursion is der_bracket on the standard factorization, with a memo
    of single-word applications shared across columns.
    """

    def __init__(self):
        tm = _abc_tau_map()
        self._imgs = {
            (t,): tuple(dict(d.coeffs) for d in tm.generators[t].images) for t in range(3)
        }
        self._aw: dict = {}

    def images_of_word(self, word) -> tuple:
        hit = self._imgs.get(word)
        if hit is not None:
            return hit
        u, v = standard_factorization(word)
        iu, iv = self.images_of_word(u), self.images_of_word(v)
        out = []
        for i in range(3):
            acc: dict = {}
            for t, ct in iv[i].items():
                self._add_applied(acc, u, iu, t, ct)
            for t, ct in iu[i].items():
                self._add_applied(acc, v, iv, t, -ct)
            out.append(acc)
        res = tuple(out)
        self._imgs[word] = res
        return res

    def _add_applied(self, acc: dict, dword, dimgs, target, scalar):
        for w, c in self._apply_word(dword, dimgs, target):
            val = acc.get(w, 0) + scalar * c
            if val:
                acc[w] = val
            elif w in acc:
                del acc[w]

    def _apply_word(self, dword, dimgs, target) -> tuple:
        key = (dword, target)
        hit = self._aw.get(key)
        if hit is not None:
            return hit
        if len(target) == 1:
            res = tuple(dimgs[target[0]].items())
        else:
            t1, t2 = standard_factorization(target)
            acc: dict = {}
            for w, c in self._apply_word(dword, dimgs, t1):
                for w2, c2 in _bw(w, t2):
                    val = acc.get(w2, 0) + c * c2
                    if val:
                        acc[w2] = val
                    elif w2 in acc:
                        del acc[w2]
            for w, c in self._apply_word(dword, dimgs, t2):
                for w2, c2 in _bw(t1, w):
                    val = acc.get(w2, 0) + c * c2
                    if val:
                        acc[w2] = val
                    elif w2 in acc:
                        del acc[w2]
            res = tuple(acc.items())
        self._aw[key] = res
        return res

    def matrix_columns(self, k: int):
        """Columns of the degree-k tau matrix, row index i*witt(3,k+1)+word."""
        idx = lyndon_index(3, k + 1)
        wd = len(idx)
        cols = []
        for w in lyndon_tuples(3, k):
            imgs = self.images_of_word(w)
            col = []
            for i in range(3):
                base = i * wd
                for ww, c in imgs[i].items():
                    col.append((base + idx[ww], c))
            col.sort()
            cols.append(col)
        return cols, 3 * wd


@functools.lru_cache(maxsize=None)
def _abc_columns() -> _AbcTauColumns:
    return _AbcTauColumns()


@dataclass(frozen=True)
class KernelReport:
    """Per-degree kernel data of tau restricted to g (n = 3)."""

    n: int
    degree: int
    domain_dim: int
    image_rank: int
    kernel_dim: int
    kernel_basis: tuple
    elementary_divisors: tuple | None = None

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "degree": self.degree,
            "domain_dim": self.domain_dim,
            "image_rank": self.image_rank,
            "kernel_dim": self.kernel_dim,
            "basis": [p.to_json_dict() for p in self.kernel_basis],
            "divisors": list(self.elementary_divisors)
            if self.elementary_divisors is not None
            else None,
        }


def _vector_to_polynomial(vec, domain, alphabet) -> LiePolynomial:
    coeffs = {w: c for w, c in zip(domain, vec) if c}
    degree = len(domain[0]) if domain else 1
    return LieElement(alphabet, degree, coeffs, _trust=True)


def sign_normalize(p: LiePolynomial) -> LiePolynomial:
    """Make the coefficient of the smallest Lyndon word positive."""
    if p.is_zero():
        return p
    lead = p.coeffs[min(p.coeffs)]
    return -p if lead < 0 else p


@functools.lru_cache(maxsize=None)
def kernel_report(k: int, with_divisors: bool = False) -> KernelReport:
    """Kernel of tau_k on g for n = 3, with a certified integer basis.

    with_divisors additionally computes the elementary divisors of the
    tau_k matrix (exact Smith form; intended for k <= 6).
    """
    if not (1 <= k <= KERNEL_DEGREE_CAP):
        raise ValueError(
            f"degree {k} outside the default cap {KERNEL_DEGREE_CAP}; "
            "call the engine directly to go higher"
        )
    engine = _abc_columns()
    cols, nrows = engine.matrix_columns(k)
    domain = lyndon_tuples(3, k)
    basis_vecs = exactla._kernel_lattice_columns(cols, nrows)
    alphabet = abc_alphabet()
    basis = tuple(
        sign_normalize(_vector_to_polynomial(v, domain, alphabet)) for v in basis_vecs
    )
    # certify by re-evaluation: tau of each basis element must vanish
    for p in basis:
        if p.is_zero():
            raise AssertionError("zero vector reported in kernel basis")
        if not _tau_vanishes(engine, p):
            raise AssertionError("kernel basis vector not killed by tau")
    divisors = None
    if with_divisors:
        mat = SparseMat.from_columns(cols, nrows)
        divisors = exactla.smith_normal_form(mat).divisors
    dim = len(basis)
    return KernelReport(
        n=3,
        degree=k,
        domain_dim=len(domain),
        image_rank=len(domain) - dim,
        kernel_dim=dim,
        kernel_basis=basis,
        elementary_divisors=divisors,
    )


def _tau_vanishes(engine: _AbcTauColumns, p: LiePolynomial) -> bool:
    acc = [dict(), dict(), dict()]
    for word, c in p.coeffs.items():
        imgs = engine.images_of_word(word)
        for i in range(3):
            a = acc[i]
            for w, cc in imgs[i].items():
                val = a.get(w, 0) + c * cc
                if val:
                    a[w] = val
                elif w in a:
                    del a[w]
    return all(not a for a in acc)


@dataclass(frozen=True)
class BracketMapReport:
    """Rank data of the bracket map span{[x, v]} from degree k to k+1."""

    degree: int
    rank: int
    source_dim: int
    target_dim: int

    @property
    def injective(self) -> bool:
        return self.rank == self.source_dim

    @property
    def surjective(self) -> bool:
        return self.rank == self.target_dim


def bracket_map_rank(k: int) -> BracketMapReport:
    """Rank of the span of [x, v], x a generator, v in the degree-k kernel."""
    if not (1 <= k <= KERNEL_DEGREE_CAP - 1):
        raise ValueError("need k+1 within the kernel degree cap")
    alphabet = abc_alphabet()
    engine = _abc_columns()
    kappa_k = kernel_report(k)
    kappa_k1 = kernel_report(k + 1)
    idx = lyndon_index(3, k + 1)
    family = []
    for lab in alphabet.labels:
        x = LieElement.generator(alphabet, lab)
        for v in kappa_k.kernel_basis:
            el = lie_bracket(x, v)
            if not _tau_vanishes(engine, el):
                raise AssertionError("bracket of a kernel element left the kernel")
            family.append(el)
    cols = []
    for el in family:
        cols.append(sorted((idx[w], c) for w, c in el.coeffs.items()))
    mat = SparseMat.from_columns(cols, len(idx))
    rank = exactla.rank(mat, method="bareiss" if len(family) <= 100 else "modular")
    return BracketMapReport(
        degree=k,
        rank=rank,
        source_dim=3 * kappa_k.kernel_dim,
        target_dim=kappa_k1.kernel_dim,
    )

"""The graded Lie ring of the rank-3 basis-conjugating group.

It decomposes as a semidirect product h x| g of two free Lie rings: h on
the inner classes C1, C2, C3 and g on a, b, c, with g acting on h
through tau under the identification C_i <-> X_i.  The combined Johnson
map sd_tau is ad on the h part plus tau on the g part; its kernel in
every degree lives in the g summand, which intersection_kappa verifies
independently through the S3 translates of g.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from . import exactla
from .derivations import Derivation, inner_derivation
from .exactla import SparseMat
from .freelie import Alphabet, LieElement, abc_alphabet, lie_bracket, x_alphabet
from .johnson import tau_evaluate
from .symmetry import S3Element
from .words import lyndon_index, lyndon_tuples, standard_factorization, witt_dimension

__all__ = [
    "SDElement",
    "c_alphabet",
    "sd_bracket",
    "sd_rank",
    "sd_tau",
    "sd_s3_action",
    "sd_tau_kernel",
    "intersection_kappa",
    "INTERSECTION_DEGREE_CAP",
]

INTERSECTION_DEGREE_CAP = 7


@functools.lru_cache(maxsize=None)
def c_alphabet() -> Alphabet:
    return Alphabet(("C1", "C2", "C3"))


def _c_to_x(u: LieElement) -> LieElement:
    return LieElement(x_alphabet(3), u.degree, dict(u.coeffs), _trust=True)


def _x_to_c(u: LieElement) -> LieElement:
    return LieElement(c_alphabet(), u.degree, dict(u.coeffs), _trust=True)


@dataclass(frozen=True)
class SDElement:
    """Homogeneous element of h x| g: an inner part and a section part."""

    hpart: LieElement
    gpart: LieElement

    def __post_init__(self):
        if self.hpart.alphabet != c_alphabet():
            raise ValueError("hpart must live over the inner alphabet C1, C2, C3")
        if self.gpart.alphabet != abc_alphabet():
            raise ValueError("gpart must live over the section alphabet a, b, c")
        if self.hpart.degree != self.gpart.degree:
            raise ValueError("both parts must be homogeneous of the same degree")

    @property
    def degree(self) -> int:
        return self.hpart.degree

    @classmethod
    def zero(cls, degree: int) -> "SDElement":
        return cls(LieElement.zero(c_alphabet(), degree), LieElement.zero(abc_alphabet(), degree))

    @classmethod
    def from_h(cls, h: LieElement) -> "SDElement":
        return cls(h, LieElement.zero(abc_alphabet(), h.degree))

    @classmethod
    def from_g(cls, g: LieElement) -> "SDElement":
        return cls(LieElement.zero(c_alphabet(), g.degree), g)

    def is_zero(self) -> bool:
        return self.hpart.is_zero() and self.gpart.is_zero()

    def __add__(self, other: "SDElement") -> "SDElement":
        return SDElement(self.hpart + other.hpart, self.gpart + other.gpart)

    def __sub__(self, other: "SDElement") -> "SDElement":
        return SDElement(self.hpart - other.hpart, self.gpart - other.gpart)

    def __neg__(self) -> "SDElement":
        return SDElement(-self.hpart, -self.gpart)

    def scale(self, s) -> "SDElement":
        return SDElement(self.hpart.scale(s), self.gpart.scale(s))

    def __repr__(self):
        return f"SD(h={self.hpart!r}, g={self.gpart!r})"


def sd_bracket(u: SDElement, v: SDElement) -> SDElement:
    """Bracket of the semidirect product: g acts on h through tau."""
    h = lie_bracket(u.hpart, v.hpart)
    if not u.gpart.is_zero() and not v.hpart.is_zero():
        from .derivations import apply as der_apply

        h = h + _x_to_c(der_apply(tau_evaluate(u.gpart), _c_to_x(v.hpart)))
    if not v.gpart.is_zero() and not u.hpart.is_zero():
        from .derivations import apply as der_apply

        h = h - _x_to_c(der_apply(tau_evaluate(v.gpart), _c_to_x(u.hpart)))
    return SDElement(h, lie_bracket(u.gpart, v.gpart))


def sd_rank(k: int) -> int:
    """Rank of the degree-k part: twice the Witt dimension for 3 letters."""
    if k < 1:
        raise ValueError("degree must be >= 1")
    return 2 * witt_dimension(3, k)


def sd_tau(u: SDElement) -> Derivation:
    """The combined Johnson map: ad on the inner part plus tau on the section."""
    parts = []
    if not u.hpart.is_zero():
        parts.append(inner_derivation(_c_to_x(u.hpart)))
    if not u.gpart.is_zero():
        parts.append(tau_evaluate(u.gpart))
    if not parts:
        return Derivation.zero(x_alphabet(3), u.degree)
    acc = parts[0]
    for d in parts[1:]:
        acc = acc + d
    return acc


# degree-1 action: sigma permutes the C_i; on the section symbols it is
# sigma . k_ij = k_{sigma(i) sigma(j)}, rewritten via k31 = C1 - b,
# k32 = C2 - a, k23 = C3 - c
_PAIR_TO_SD = {
    (1, 2): (None, 0, 1),   # a
    (2, 1): (None, 1, 1),   # b
    (1, 3): (None, 2, 1),   # c
    (3, 1): (0, 1, -1),     # C1 - b
    (3, 2): (1, 0, -1),     # C2 - a
    (2, 3): (2, 2, -1),     # C3 - c
}
_ABC_PAIR = {0: (1, 2), 1: (2, 1), 2: (1, 3)}


def _g_letter_image(sigma: S3Element, letter: int) -> SDElement:
    i, j = _ABC_PAIR[letter]
    c_idx, g_idx, sign = _PAIR_TO_SD[(sigma(i), sigma(j))]
    h = LieElement.zero(c_alphabet(), 1)
    if c_idx is not None:
        h = LieElement(c_alphabet(), 1, {(c_idx,): 1}, _trust=True)
    g = LieElement(abc_alphabet(), 1, {(g_idx,): sign}, _trust=True)
    return SDElement(h, g)


@functools.lru_cache(maxsize=None)
def _act_g_word(sigma: S3Element, word) -> SDElement:
    if len(word) == 1:
        return _g_letter_image(sigma, word[0])
    u, v = standard_factorization(word)
    return sd_bracket(_act_g_word(sigma, u), _act_g_word(sigma, v))


@functools.lru_cache(maxsize=None)
def _act_h_word(sigma: S3Element, word) -> LieElement:
    # h is stable: sigma permutes the inner letters and renormalizes
    if len(word) == 1:
        return LieElement(c_alphabet(), 1, {(sigma(word[0] + 1) - 1,): 1}, _trust=True)
    u, v = standard_factorization(word)
    return lie_bracket(_act_h_word(sigma, u), _act_h_word(sigma, v))


def sd_s3_action(sigma: S3Element, u: SDElement) -> SDElement:
    """The graded Lie-automorphism action of S3 on h x| g."""
    acc = SDElement.zero(u.degree)
    for word, c in u.hpart.coeffs.items():
        acc = acc + SDElement.from_h(_act_h_word(sigma, word).scale(c))
    for word, c in u.gpart.coeffs.items():
        acc = acc + _act_g_word(sigma, word).scale(c)
    return acc


# ---------------------------------------------------------------------------
# kernel of the combined map, and the intersection formula


def _sd_basis(k: int):
    """Basis of the degree-k part: C-words then abc-words."""
    words = lyndon_tuples(3, k)
    return [SDElement.from_h(LieElement(c_alphabet(), k, {w: 1}, _trust=True)) for w in words] + [
        SDElement.from_g(LieElement(abc_alphabet(), k, {w: 1}, _trust=True)) for w in words
    ]


def _sd_coords(u: SDElement, k: int):
    idx = lyndon_index(3, k)
    w = len(idx)
    col = []
    for word, c in u.hpart.coeffs.items():
        col.append((idx[word], c))
    for word, c in u.gpart.coeffs.items():
        col.append((w + idx[word], c))
    return sorted(col)


@functools.lru_cache(maxsize=None)
def sd_tau_kernel(k: int):
    """Kernel of sd_tau in degree k: a list of SDElements (certified basis)."""
    if k < 1:
        raise ValueError("degree must be >= 1")
    idx_cod = lyndon_index(3, k + 1)
    wd = len(idx_cod)
    cols = []
    for b in _sd_basis(k):
        d = sd_tau(b)
        col = []
        for i in range(3):
            for word, c in d.images[i].coeffs.items():
                col.append((i * wd + idx_cod[word], c))
        cols.append(sorted(col))
    vecs = exactla._kernel_lattice_columns(cols, 3 * wd)
    w = witt_dimension(3, k)
    words = lyndon_tuples(3, k)
    out = []
    for v in vecs:
        h = {words[i]: v[i] for i in range(w) if v[i]}
        g = {words[i]: v[w + i] for i in range(w) if v[w + i]}
        out.append(
            SDElement(
                LieElement(c_alphabet(), k, h, _trust=True),
                LieElement(abc_alphabet(), k, g, _trust=True),
            )
        )
    for u in out:
        if not sd_tau(u).is_zero():
            raise AssertionError("sd_tau kernel vector failed re-evaluation")
    return out


def _g_translate_columns(sigma: S3Element, k: int):
    cols = []
    for w in lyndon_tuples(3, k):
        g = LieElement(abc_alphabet(), k, {w: 1}, _trust=True)
        moved = sd_s3_action(sigma, SDElement.from_g(g))
        cols.append(_sd_coords(moved, k))
    return cols


@functools.lru_cache(maxsize=None)
def intersection_kappa(k: int, degree_cap: int = INTERSECTION_DEGREE_CAP) -> int:
    """dim over Q of g ^ c.g ^ c^2.g in degree k, c the 3-cycle.

    Must equal the kernel dimension of tau in that degree.
    """
    if not (1 <= k <= degree_cap):
        raise ValueError(f"degree {k} above the cap {degree_cap}; pass degree_cap to extend")
    from .symmetry import S3_123, S3_132

    w = witt_dimension(3, k)
    nrows = 2 * w
    b_g = SparseMat(nrows, w, {(w + i, i): 1 for i in range(w)})
    b_cg = SparseMat.from_columns(_g_translate_columns(S3_123, k), nrows)
    b_ccg = SparseMat.from_columns(_g_translate_columns(S3_132, k), nrows)
    inter = exactla.intersect_columnspaces([b_g, b_cg, b_ccg])
    return inter.cols

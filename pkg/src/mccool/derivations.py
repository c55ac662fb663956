"""Positive-degree derivations of the free Lie ring.

A degree-k derivation (k >= 1) is stored by its tuple of images of the
degree-1 generators, each a degree-(k+1) LieElement; the Leibniz rule
then determines it everywhere.  apply() evaluates by structural
recursion over standard bracketings, with a per-derivation memo of word
images; apply_via_tensor() is the independent cross-check route through
the tensor ring and is used by the tests as an oracle.
"""

from __future__ import annotations

from .exactla import SparseMat, solve_columns
from .freelie import Alphabet, LieElement, TensorElement, from_tensor, to_tensor
from .freelie import _bw  # structure constants, shared across alphabets
from .words import lyndon_tuples, standard_factorization

__all__ = [
    "Derivation",
    "NotTangential",
    "apply",
    "apply_via_tensor",
    "der_bracket",
    "inner_derivation",
    "tangential_witness",
]


class NotTangential(ValueError):
    """The derivation is not of the form X_i -> [X_i, W_i]."""


class Derivation:
    """Derivation of L[n] raising degree by k >= 1, given on generators."""

    __slots__ = ("alphabet", "degree", "images", "_cache")

    def __init__(self, alphabet: Alphabet, degree: int, images):
        if degree < 1:
            raise ValueError("derivation degree must be >= 1")
        images = tuple(images)
        if len(images) != alphabet.size:
            raise ValueError("need one image per generator")
        for img in images:
            if img.alphabet != alphabet:
                raise ValueError("image alphabet mismatch")
            if img.degree != degree + 1:
                raise ValueError(f"images must be homogeneous of degree {degree + 1}")
        self.alphabet = alphabet
        self.degree = degree
        self.images = images
        self._cache = {}

    @classmethod
    def zero(cls, alphabet: Alphabet, degree: int) -> "Derivation":
        z = LieElement.zero(alphabet, degree + 1)
        return cls(alphabet, degree, (z,) * alphabet.size)

    def is_zero(self) -> bool:
        return all(img.is_zero() for img in self.images)

    def image_of_generator(self, label: str) -> LieElement:
        return self.images[self.alphabet.index(label)]

    def __add__(self, other: "Derivation") -> "Derivation":
        if self.alphabet != other.alphabet or self.degree != other.degree:
            raise ValueError("can only add derivations of equal degree")
        return Derivation(
            self.alphabet, self.degree, tuple(a + b for a, b in zip(self.images, other.images))
        )

    def __sub__(self, other: "Derivation") -> "Derivation":
        return self + (-other)

    def __neg__(self) -> "Derivation":
        return Derivation(self.alphabet, self.degree, tuple(-a for a in self.images))

    def scale(self, scalar) -> "Derivation":
        return Derivation(self.alphabet, self.degree, tuple(a.scale(scalar) for a in self.images))

    __mul__ = scale
    __rmul__ = scale

    def __eq__(self, other):
        return (
            isinstance(other, Derivation)
            and self.alphabet == other.alphabet
            and self.degree == other.degree
            and self.images == other.images
        )

    def __hash__(self):
        return hash((self.alphabet.labels, self.degree, self.images))

    def __repr__(self):
        bits = ", ".join(
            f"{lab} -> {img!r}" for lab, img in zip(self.alphabet.labels, self.images)
        )
        return f"Derivation(deg {self.degree}: {bits})"

    def to_json_dict(self) -> dict:
        return {
            "n": self.alphabet.size,
            "degree": self.degree,
            "images": [img.to_json_dict() for img in self.images],
        }

    # -- evaluation ----------------------------------------------------------

    def _apply_word(self, word) -> tuple:
        """Image of the standard bracketing of a Lyndon word, as items."""
        cache = self._cache
        hit = cache.get(word)
        if hit is not None:
            return hit
        if len(word) == 1:
            res = tuple(self.images[word[0]].coeffs.items())
        else:
            t1, t2 = standard_factorization(word)
            acc: dict = {}
            for w, c in self._apply_word(t1):
                for w2, c2 in _bw(w, t2):
                    val = acc.get(w2, 0) + c * c2
                    if val:
                        acc[w2] = val
                    elif w2 in acc:
                        del acc[w2]
            for w, c in self._apply_word(t2):
                for w2, c2 in _bw(t1, w):
                    val = acc.get(w2, 0) + c * c2
                    if val:
                        acc[w2] = val
                    elif w2 in acc:
                        del acc[w2]
            res = tuple(acc.items())
        cache[word] = res
        return res


def apply(d: Derivation, u: LieElement) -> LieElement:
    """Evaluate the derivation on a homogeneous Lie element (Leibniz)."""
    if u.alphabet != d.alphabet:
        raise ValueError("alphabet mismatch")
    acc: dict = {}
    for word, c in u.coeffs.items():
        for w, cw in d._apply_word(word):
            val = acc.get(w, 0) + c * cw
            if val:
                acc[w] = val
            elif w in acc:
                del acc[w]
    return LieElement(u.alphabet, u.degree + d.degree, acc, _trust=True)


def apply_via_tensor(d: Derivation, u: LieElement) -> LieElement:
    """Cross-check route: extend to the tensor ring, apply position by
    position, convert back.  Agrees with apply() (tested)."""
    t = to_tensor(u)
    img_t = [to_tensor(img).coeffs for img in d.images]
    out: dict = {}
    for word, c in t.coeffs.items():
        for pos, letter in enumerate(word):
            head, tail = word[:pos], word[pos + 1 :]
            for mid, cm in img_t[letter].items():
                key = head + mid + tail
                val = out.get(key, 0) + c * cm
                if val:
                    out[key] = val
                elif key in out:
                    del out[key]
    return from_tensor(TensorElement(u.alphabet, u.degree + d.degree, out, _trust=True))


def der_bracket(d: Derivation, e: Derivation) -> Derivation:
    """Commutator [d, e] = d o e - e o d, a derivation of degree k_d + k_e."""
    if d.alphabet != e.alphabet:
        raise ValueError("alphabet mismatch")
    images = tuple(
        apply(d, ei) - apply(e, di) for di, ei in zip(d.images, e.images)
    )
    return Derivation(d.alphabet, d.degree + e.degree, images)


def inner_derivation(w: LieElement) -> Derivation:
    """ad(W): X -> [W, X]; a derivation of degree deg W."""
    images = tuple(
        LieElement(
            w.alphabet,
            w.degree + 1,
            _bracket_with_generator(w, i),
            _trust=True,
        )
        for i in range(w.alphabet.size)
    )
    return Derivation(w.alphabet, w.degree, images)


def _bracket_with_generator(w: LieElement, i: int) -> dict:
    acc: dict = {}
    gen = (i,)
    for word, c in w.coeffs.items():
        for w2, c2 in _bw(word, gen):
            val = acc.get(w2, 0) + c * c2
            if val:
                acc[w2] = val
            elif w2 in acc:
                del acc[w2]
    return acc


def tangential_witness(d: Derivation) -> list:
    """Witnesses (W_1 .. W_n) with d(X_i) = [X_i, W_i].

    Unique for degree >= 2; for degree 1 the X_i ambiguity in W_i is
    resolved by giving W_i zero coefficient on X_i.  Raises
    NotTangential when no witness exists.
    """
    n = d.alphabet.size
    k = d.degree
    domain = lyndon_tuples(n, k)
    cod_index = {w: r for r, w in enumerate(lyndon_tuples(n, k + 1))}
    witnesses = []
    for i in range(n):
        cols = []
        for w in domain:
            col = []
            for w2, c2 in _bw((i,), w):
                col.append((cod_index[w2], c2))
            cols.append(sorted(col))
        mat = SparseMat.from_columns(cols, len(cod_index))
        rhs = [0] * len(cod_index)
        for w, c in d.images[i].coeffs.items():
            rhs[cod_index[w]] = c
        sol = solve_columns(mat, [rhs])[0]
        if sol is None:
            raise NotTangential(f"generator {d.alphabet.labels[i]} has no witness")
        coeffs = {}
        for w, val in zip(domain, sol):
            if val:
                coeffs[w] = int(val) if val.denominator == 1 else val
        witnesses.append(LieElement(d.alphabet, k, coeffs, _trust=True))
    return witnesses

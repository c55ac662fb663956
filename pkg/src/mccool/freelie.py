"""Free Lie ring on an ordered alphabet, in the Lyndon basis.

Elements of degree k are stored as sparse integer (or Fraction)
combinations of Lyndon words of length k; the word indexing the standard
bracketing b(w) is the basis label.  Two normalization routes for
brackets are provided and must agree:

  * "tensor": expand both sides in the tensor ring via [x,y] -> xy - yx,
    multiply, and convert back with from_tensor.  This is the reference
    route; it relies only on the unitriangularity of Lyndon expansions
    (b(w) = w + lexicographically larger words of the same degree).

  * "table": division-free rewriting of [b(u), b(v)] using the classical
    recursion on the right standard factorization u = u1 u2 of the
    smaller factor:

        [b(u), b(v)] = b(uv)                         if (u, v) is standard
        [b(u), b(v)] = [[b(u1), b(v)], b(u2)]
                       + [b(u1), [b(u2), b(v)]]       otherwise,

    memoized into a structure-constant table shared by every alphabet of
    any size (the recursion only sees the letters actually present).

The table route is the default because repeated brackets hit the memo
table, which the heavy kernel computations in other modules require; the
test suite checks both routes against each other.

Coefficients are exact: Python ints, or fractions.Fraction when a
rational element is constructed.  No floating point is used anywhere.
"""

from __future__ import annotations

import functools
from fractions import Fraction

from .words import (
    Word,
    bracketing_tree,
    is_lyndon,
    lyndon_tuples,
    standard_factorization,
    witt_dimension,
)

__all__ = [
    "Alphabet",
    "LyndonWord",
    "LieElement",
    "TensorElement",
    "NotALieElement",
    "lyndon_words",
    "standard_bracketing",
    "lie_bracket",
    "left_normed",
    "to_tensor",
    "from_tensor",
    "x_alphabet",
    "abc_alphabet",
    "witt_dimension",
    "degree_cap",
    "set_degree_cap",
]


class NotALieElement(ValueError):
    """A tensor element is not the expansion of any Lie element."""


# elements above this degree are refused, keeping per-degree stores
# bounded; raise it explicitly for larger experiments
_DEGREE_CAP = 10


def degree_cap() -> int:
    return _DEGREE_CAP


def set_degree_cap(cap: int) -> None:
    global _DEGREE_CAP
    if cap < 1:
        raise ValueError("degree cap must be >= 1")
    _DEGREE_CAP = cap


def _check_degree(degree: int) -> int:
    if degree < 1:
        raise ValueError("degree must be >= 1")
    if degree > _DEGREE_CAP:
        raise ValueError(
            f"degree {degree} above the cap {_DEGREE_CAP}; call set_degree_cap to raise it"
        )
    return degree


class Alphabet:
    """Ordered alphabet of distinct generator labels.

    The declared order of the labels is the total order used for Lyndon
    words; letter i is the label at position i.
    """

    __slots__ = ("labels", "_index")

    def __init__(self, labels):
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            raise ValueError("alphabet labels must be pairwise distinct")
        if not labels:
            raise ValueError("alphabet must be nonempty")
        self.labels = labels
        self._index = {lab: i for i, lab in enumerate(labels)}

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self._index[label]

    def label(self, i: int) -> str:
        return self.labels[i]

    def word_string(self, word: Word) -> str:
        labs = [self.labels[i] for i in word]
        if all(len(lab) == 1 for lab in self.labels):
            return "".join(labs)
        return ".".join(labs)

    def parse_word(self, text: str) -> Word:
        if all(len(lab) == 1 for lab in self.labels):
            return tuple(self._index[ch] for ch in text)
        return tuple(self._index[part] for part in text.split("."))

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return f"Alphabet({list(self.labels)!r})"


def x_alphabet(n: int) -> Alphabet:
    """The alphabet X1 < X2 < ... < Xn of free-group generator classes."""
    return Alphabet(tuple(f"X{i}" for i in range(1, n + 1)))


def abc_alphabet() -> Alphabet:
    return Alphabet(("a", "b", "c"))


class LyndonWord:
    """A Lyndon word over letter indices, with its standard factorization."""

    __slots__ = ("indices", "_hash")

    def __init__(self, indices):
        indices = tuple(int(i) for i in indices)
        if not is_lyndon(indices):
            raise ValueError(f"{indices!r} is not a Lyndon word")
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "_hash", hash(indices))

    def __setattr__(self, *a):
        raise AttributeError("LyndonWord is immutable")

    @property
    def degree(self) -> int:
        return len(self.indices)

    def factorize(self) -> tuple["LyndonWord", "LyndonWord"]:
        u, v = standard_factorization(self.indices)
        return LyndonWord(u), LyndonWord(v)

    def bracketing(self):
        """Nested-pair bracket tree; leaves are letter indices."""
        return bracketing_tree(self.indices)

    def labels(self, alphabet: Alphabet) -> tuple[str, ...]:
        return tuple(alphabet.labels[i] for i in self.indices)

    def __eq__(self, other):
        return isinstance(other, LyndonWord) and self.indices == other.indices

    def __lt__(self, other):
        return self.indices < other.indices

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"LyndonWord{self.indices!r}"


def lyndon_words(alphabet: Alphabet, k: int) -> list[LyndonWord]:
    """All Lyndon words of degree k over the alphabet, in lex order."""
    if k < 1:
        raise ValueError("degree must be >= 1")
    return [LyndonWord(w) for w in lyndon_tuples(alphabet.size, k)]


def standard_bracketing(w: LyndonWord):
    """Standard bracket tree of a Lyndon word (leaves are letter indices)."""
    if isinstance(w, LyndonWord):
        return w.bracketing()
    return bracketing_tree(tuple(w))


# ---------------------------------------------------------------------------
# tensor expansions of Lyndon bracketings


def _conv(a: dict, b: dict) -> dict:
    out = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            key = wa + wb
            val = out.get(key, 0) + ca * cb
            if val:
                out[key] = val
            elif key in out:
                del out[key]
    return out


@functools.lru_cache(maxsize=None)
def _expand(word: Word) -> dict:
    """Tensor expansion of the standard bracketing of a Lyndon word."""
    if len(word) == 1:
        return {word: 1}
    u, v = standard_factorization(word)
    eu, ev = _expand(u), _expand(v)
    out = _conv(eu, ev)
    for key, val in _conv(ev, eu).items():
        cur = out.get(key, 0) - val
        if cur:
            out[key] = cur
        elif key in out:
            del out[key]
    return out


# ---------------------------------------------------------------------------
# division-free rewriting of brackets of basis elements


@functools.lru_cache(maxsize=None)
def _bw(u: Word, v: Word) -> tuple:
    """[b(u), b(v)] in the Lyndon basis, as a sorted tuple of (word, coeff).

    Valid for arbitrary letter indices; the result only involves the
    letters of u and v, so the table is shared across alphabets.
    """
    if u == v:
        return ()
    if v < u:
        return tuple((w, -c) for w, c in _bw(v, u))
    if len(u) == 1 or standard_factorization(u)[1] >= v:
        return ((u + v, 1),)
    u1, u2 = standard_factorization(u)
    acc: dict = {}
    for w, c in _bw(u1, v):
        for w2, c2 in _bw(w, u2):
            val = acc.get(w2, 0) + c * c2
            if val:
                acc[w2] = val
            elif w2 in acc:
                del acc[w2]
    for w, c in _bw(u2, v):
        for w2, c2 in _bw(u1, w):
            val = acc.get(w2, 0) + c * c2
            if val:
                acc[w2] = val
            elif w2 in acc:
                del acc[w2]
    return tuple(sorted(acc.items()))


# ---------------------------------------------------------------------------
# elements


def _check_coeff(c):
    if isinstance(c, (int, Fraction)) and not isinstance(c, bool):
        return c
    raise TypeError(f"coefficients must be int or Fraction, got {type(c)!r}")


class LieElement:
    """Homogeneous element of the free Lie ring, in Lyndon normal form.

    coeffs maps Lyndon words (tuples of letter indices) of length
    ``degree`` to nonzero coefficients.
    """

    __slots__ = ("alphabet", "degree", "coeffs")

    def __init__(self, alphabet: Alphabet, degree: int, coeffs: dict, *, _trust=False):
        _check_degree(degree)
        if not _trust:
            n = alphabet.size
            clean = {}
            for w, c in coeffs.items():
                w = tuple(w)
                c = _check_coeff(c)
                if len(w) != degree:
                    raise ValueError(f"word {w!r} does not have degree {degree}")
                if any(not (0 <= i < n) for i in w):
                    raise ValueError(f"word {w!r} has letters outside the alphabet")
                if not is_lyndon(w):
                    raise ValueError(f"word {w!r} is not Lyndon")
                if c:
                    clean[w] = c
            coeffs = clean
        self.alphabet = alphabet
        self.degree = degree
        self.coeffs = coeffs

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, alphabet: Alphabet, degree: int) -> "LieElement":
        return cls(alphabet, degree, {}, _trust=True)

    @classmethod
    def generator(cls, alphabet: Alphabet, label: str) -> "LieElement":
        return cls(alphabet, 1, {(alphabet.index(label),): 1}, _trust=True)

    @classmethod
    def basis_element(cls, alphabet: Alphabet, word) -> "LieElement":
        w = word.indices if isinstance(word, LyndonWord) else tuple(word)
        return cls(alphabet, len(w), {w: 1})

    def generators(self):
        """The degree-1 generator elements of this element's alphabet."""
        return [LieElement.generator(self.alphabet, lab) for lab in self.alphabet.labels]

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def terms(self):
        """Sorted list of (LyndonWord, coefficient)."""
        return [(LyndonWord(w), c) for w, c in sorted(self.coeffs.items())]

    def coefficient(self, word) -> int:
        w = word.indices if isinstance(word, LyndonWord) else tuple(word)
        return self.coeffs.get(w, 0)

    def support_letters(self) -> set:
        out = set()
        for w in self.coeffs:
            out.update(w)
        return out

    # -- arithmetic --------------------------------------------------------

    def _compat(self, other: "LieElement"):
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch")
        if self.degree != other.degree:
            raise ValueError("degree mismatch in sum")

    def __add__(self, other: "LieElement") -> "LieElement":
        self._compat(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            val = out.get(w, 0) + c
            if val:
                out[w] = val
            elif w in out:
                del out[w]
        return LieElement(self.alphabet, self.degree, out, _trust=True)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def __neg__(self) -> "LieElement":
        return LieElement(
            self.alphabet, self.degree, {w: -c for w, c in self.coeffs.items()}, _trust=True
        )

    def scale(self, scalar) -> "LieElement":
        scalar = _check_coeff(scalar)
        if not scalar:
            return LieElement.zero(self.alphabet, self.degree)
        return LieElement(
            self.alphabet, self.degree, {w: scalar * c for w, c in self.coeffs.items()}, _trust=True
        )

    __mul__ = scale

    def __rmul__(self, scalar) -> "LieElement":
        return self.scale(scalar)

    def __eq__(self, other):
        return (
            isinstance(other, LieElement)
            and self.alphabet == other.alphabet
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.alphabet.labels, self.degree, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for w, c in sorted(self.coeffs.items()):
            word = self.alphabet.word_string(w)
            if c == 1:
                bits.append(f"+[{word}]")
            elif c == -1:
                bits.append(f"-[{word}]")
            else:
                bits.append(f"{c:+}[{word}]")
        return "".join(bits)

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "alphabet": list(self.alphabet.labels),
            "degree": self.degree,
            "terms": [
                {"word": self.alphabet.word_string(w), "coeff": str(c)}
                for w, c in sorted(self.coeffs.items())
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "LieElement":
        alphabet = Alphabet(tuple(data["alphabet"]))
        coeffs = {}
        for term in data["terms"]:
            word = alphabet.parse_word(term["word"])
            coeff = term["coeff"]
            coeffs[word] = Fraction(coeff) if "/" in str(coeff) else int(coeff)
        return cls(alphabet, int(data["degree"]), coeffs)


class TensorElement:
    """Homogeneous element of the tensor ring (free associative ring)."""

    __slots__ = ("alphabet", "degree", "coeffs")

    def __init__(self, alphabet: Alphabet, degree: int, coeffs: dict, *, _trust=False):
        _check_degree(degree)
        if not _trust:
            n = alphabet.size
            clean = {}
            for w, c in coeffs.items():
                w = tuple(w)
                c = _check_coeff(c)
                if len(w) != degree:
                    raise ValueError(f"word {w!r} does not have degree {degree}")
                if any(not (0 <= i < n) for i in w):
                    raise ValueError(f"word {w!r} has letters outside the alphabet")
                if c:
                    clean[w] = c
            coeffs = clean
        self.alphabet = alphabet
        self.degree = degree
        self.coeffs = coeffs

    @classmethod
    def zero(cls, alphabet: Alphabet, degree: int) -> "TensorElement":
        return cls(alphabet, degree, {}, _trust=True)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, word) -> int:
        if isinstance(word, str):
            word = self.alphabet.parse_word(word)
        return self.coeffs.get(tuple(word), 0)

    def _compat(self, other: "TensorElement"):
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._compat(other)
        if self.degree != other.degree:
            raise ValueError("degree mismatch in sum")
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            val = out.get(w, 0) + c
            if val:
                out[w] = val
            elif w in out:
                del out[w]
        return TensorElement(self.alphabet, self.degree, out, _trust=True)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def __neg__(self) -> "TensorElement":
        return TensorElement(
            self.alphabet, self.degree, {w: -c for w, c in self.coeffs.items()}, _trust=True
        )

    def scale(self, scalar) -> "TensorElement":
        scalar = _check_coeff(scalar)
        if not scalar:
            return TensorElement.zero(self.alphabet, self.degree)
        return TensorElement(
            self.alphabet, self.degree, {w: scalar * c for w, c in self.coeffs.items()}, _trust=True
        )

    __rmul__ = scale

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            self._compat(other)
            return TensorElement(
                self.alphabet, self.degree + other.degree, _conv(self.coeffs, other.coeffs), _trust=True
            )
        return self.scale(other)

    def commutator(self, other: "TensorElement") -> "TensorElement":
        return self * other - other * self

    def __eq__(self, other):
        return (
            isinstance(other, TensorElement)
            and self.alphabet == other.alphabet
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.alphabet.labels, self.degree, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for w, c in sorted(self.coeffs.items()):
            word = self.alphabet.word_string(w)
            bits.append(f"{c:+}({word})" if abs(c) != 1 else (f"+({word})" if c == 1 else f"-({word})"))
        return "".join(bits)

    def to_json_dict(self) -> dict:
        return {
            "alphabet": list(self.alphabet.labels),
            "degree": self.degree,
            "terms": [
                {"word": self.alphabet.word_string(w), "coeff": str(c)}
                for w, c in sorted(self.coeffs.items())
            ],
        }


# ---------------------------------------------------------------------------
# operations


def to_tensor(u: LieElement) -> TensorElement:
    """Expand into the tensor ring via [x, y] -> xy - yx on basis brackets."""
    out: dict = {}
    for word, c in u.coeffs.items():
        for tw, tc in _expand(word).items():
            val = out.get(tw, 0) + c * tc
            if val:
                out[tw] = val
            elif tw in out:
                del out[tw]
    return TensorElement(u.alphabet, u.degree, out, _trust=True)


def from_tensor(t: TensorElement) -> LieElement:
    """Inverse of to_tensor on expansions of Lie elements.

    Greedy unitriangular elimination: the smallest word of the residue
    must be Lyndon and carries the coefficient of its basis bracket.
    Raises NotALieElement when the residue leaves the Lie subspace.
    """
    residue = dict(t.coeffs)
    out: dict = {}
    while residue:
        word = min(residue)
        if not is_lyndon(word):
            raise NotALieElement(f"leading word {word!r} of residue is not Lyndon")
        c = residue[word]
        out[word] = c
        for tw, tc in _expand(word).items():
            val = residue.get(tw, 0) - c * tc
            if val:
                residue[tw] = val
            elif tw in residue:
                del residue[tw]
    return LieElement(t.alphabet, t.degree, out, _trust=True)


def _bracket_table(u: LieElement, v: LieElement) -> LieElement:
    out: dict = {}
    for wu, cu in u.coeffs.items():
        for wv, cv in v.coeffs.items():
            c = cu * cv
            for w, bc in _bw(wu, wv):
                val = out.get(w, 0) + c * bc
                if val:
                    out[w] = val
                elif w in out:
                    del out[w]
    return LieElement(u.alphabet, u.degree + v.degree, out, _trust=True)


def lie_bracket(u: LieElement, v: LieElement, via: str = "table") -> LieElement:
    """Lie bracket [u, v] in Lyndon normal form.

    via="table" uses the memoized rewriting table; via="tensor" expands
    through the tensor ring and converts back.  The two agree (tested).
    """
    if u.alphabet != v.alphabet:
        raise ValueError("alphabet mismatch")
    if via == "table":
        return _bracket_table(u, v)
    if via == "tensor":
        return from_tensor(to_tensor(u).commutator(to_tensor(v)))
    raise ValueError(f"unknown bracket route {via!r}")


def left_normed(gens: list) -> LieElement:
    """Left-normed bracket [g1, g2, ..., gm] = [...[[g1, g2], g3]..., gm]."""
    if not gens:
        raise ValueError("left_normed requires at least one element")
    acc = gens[0]
    for g in gens[1:]:
        acc = lie_bracket(acc, g)
    return acc
